//! Cartan matrices and the fundamental groups `P/Q`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{HgError, Result};

use super::snf::AbelianInvariants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LieKind {
    type Err = HgError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => LieKind::A,
            "B" => LieKind::B,
            "C" => LieKind::C,
            "D" => LieKind::D,
            "E" => LieKind::E,
            "F" => LieKind::F,
            "G" => LieKind::G,
            _ => {
                return Err(HgError::InvalidLieType {
                    kind: s.to_string(),
                    rank: 0,
                })
            }
        })
    }
}

/// A simple Lie type such as `A1` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LieType {
    pub kind: LieKind,
    pub rank: usize,
}

impl LieType {
    pub fn new(kind: LieKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            LieKind::A => rank >= 1,
            LieKind::B => rank >= 2,
            LieKind::C => rank >= 3,
            LieKind::D => rank >= 4,
            LieKind::E => (6..=8).contains(&rank),
            LieKind::F => rank == 4,
            LieKind::G => rank == 2,
        };
        if ok {
            Ok(LieType { kind, rank })
        } else {
            Err(HgError::InvalidLieType {
                kind: kind.to_string(),
                rank,
            })
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.rank)
    }
}

impl FromStr for LieType {
    type Err = HgError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let kind: LieKind = s[..split].parse()?;
        let rank = s[split..].parse().map_err(|_| HgError::InvalidLieType {
            kind: s.to_string(),
            rank: 0,
        })?;
        LieType::new(kind, rank)
    }
}

/// Parses a comma-separated list such as `A1,A1`.
pub fn parse_lie_types(s: &str) -> Result<Vec<LieType>> {
    s.split(',').map(str::parse).collect()
}

/// A type together with its Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanDatum {
    pub lie_type: LieType,
    pub matrix: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn new(kind: LieKind, rank: usize) -> Result<Self> {
        Ok(CartanDatum {
            lie_type: LieType::new(kind, rank)?,
            matrix: cartan_matrix(kind, rank)?,
        })
    }
}

/// The Cartan matrix `aᵢⱼ = ⟨αᵢ^∨, αⱼ⟩` in Bourbaki numbering; for
/// non-simply-laced types the row of a short root carries the `-2`/`-3`.
pub fn cartan_matrix(kind: LieKind, rank: usize) -> Result<Vec<Vec<i64>>> {
    LieType::new(kind, rank)?;
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        LieKind::A | LieKind::B | LieKind::C | LieKind::F | LieKind::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        LieKind::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        LieKind::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match kind {
        LieKind::B => a[n - 2][n - 1] = -2,
        LieKind::C => a[n - 1][n - 2] = -2,
        LieKind::F => a[1][2] = -2,
        LieKind::G => a[1][0] = -3,
        _ => {}
    }
    Ok(a)
}

/// `P/Q`, the cokernel of the Cartan matrix.
pub fn fundamental_quotient(kind: LieKind, rank: usize) -> Result<AbelianInvariants> {
    Ok(AbelianInvariants::cokernel(&cartan_matrix(kind, rank)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_tables() {
        assert_eq!(cartan_matrix(LieKind::A, 1).unwrap(), vec![vec![2]]);
        assert_eq!(cartan_matrix(LieKind::A, 2).unwrap(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_matrix(LieKind::G, 2).unwrap(), vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(
            cartan_matrix(LieKind::F, 4).unwrap(),
            vec![vec![2, -1, 0, 0], vec![-1, 2, -2, 0], vec![0, -1, 2, -1], vec![0, 0, -1, 2]]
        );
        let e6 = cartan_matrix(LieKind::E, 6).unwrap();
        assert_eq!(e6[1][3], -1);
        assert_eq!(e6[1][2], 0);
        let d4 = cartan_matrix(LieKind::D, 4).unwrap();
        assert_eq!(d4[1], vec![-1, 2, -1, -1]);
    }

    #[test]
    fn invalid_ranks() {
        for (k, r) in [(LieKind::A, 0), (LieKind::B, 1), (LieKind::C, 2), (LieKind::D, 3), (LieKind::E, 5), (LieKind::E, 9), (LieKind::F, 3), (LieKind::G, 3)] {
            assert!(cartan_matrix(k, r).is_err(), "{k}{r}");
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_lie_types("A1, e8").unwrap(), vec![
            LieType { kind: LieKind::A, rank: 1 },
            LieType { kind: LieKind::E, rank: 8 }
        ]);
        assert!("X3".parse::<LieType>().is_err());
        assert!("A".parse::<LieType>().is_err());
    }

    #[test]
    fn small_quotients() {
        assert_eq!(fundamental_quotient(LieKind::A, 2).unwrap().to_string(), "Z/3");
        assert_eq!(fundamental_quotient(LieKind::D, 4).unwrap().factors, vec![2, 2]);
        assert_eq!(fundamental_quotient(LieKind::E, 8).unwrap().factors, Vec::<u64>::new());
    }
}

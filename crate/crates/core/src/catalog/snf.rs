//! Smith normal form over the integers.
//!
//! The elimination runs in `i128` with checked arithmetic and restarts in
//! arbitrary precision if any operation overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | ⋯`, all `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithForm {
    /// The diagonal `d₁, d₂, …` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i].clone()).collect()
    }
}

struct Elimination<T> {
    a: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
}

fn identity<T: Zero + One + Clone>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

impl<T> Elimination<T>
where
    T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul,
{
    fn rows(&self) -> usize {
        self.a.len()
    }

    fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// `row_i ← row_i − q·row_j`.
    fn sub_row(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for m in [&mut self.a, &mut self.u] {
            for k in 0..m[i].len() {
                let t = q.checked_mul(&m[j][k])?;
                m[i][k] = m[i][k].checked_sub(&t)?;
            }
        }
        Some(())
    }

    /// `col_i ← col_i − q·col_j`.
    fn sub_col(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = q.checked_mul(&row[j])?;
                row[i] = row[i].checked_sub(&t)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    /// Position of a nonzero entry of least absolute value in the
    /// submatrix starting at `(t, t)`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Option<()> {
        for t in 0..self.rows().min(self.cols()) {
            loop {
                let Some((i, j)) = self.min_entry(t) else {
                    return Some(());
                };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                let p = self.a[t][t].clone();
                let mut clean = true;
                for i in t + 1..self.rows() {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&p);
                        self.sub_row(i, t, &q)?;
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&p);
                        self.sub_col(j, t, &q)?;
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                let offender = (t + 1..self.rows())
                    .find(|&i| (t + 1..self.cols()).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match offender {
                    // Adding the row brings a non-multiple into row t, so the
                    // next pass finds a smaller pivot.
                    Some(i) => self.sub_row(t, i, &-T::one())?,
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        Some(())
    }
}

fn eliminate<T>(m: &[Vec<T>]) -> Option<Elimination<T>>
where
    T: Clone + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut e = Elimination {
        a: m.to_vec(),
        u: identity(rows),
        v: identity(cols),
    };
    e.run()?;
    Some(e)
}

fn to_big<T: Into<BigInt> + Clone>(m: &[Vec<T>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.clone().into()).collect())
        .collect()
}

/// Smith normal form of a rectangular integer matrix.
///
/// # Panics
/// If the rows have different lengths.
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let cols = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let small: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    if let Some(e) = eliminate(&small) {
        return SmithForm {
            u: to_big(&e.u),
            d: to_big(&e.a),
            v: to_big(&e.v),
        };
    }
    let e = eliminate(&to_big(m)).expect("arbitrary precision never overflows");
    SmithForm { u: e.u, d: e.a, v: e.v }
}

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d₁ ⊕ ⋯` with `d₁ | d₂ | ⋯`
/// and all `dᵢ > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub factors: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// The cokernel of an integer matrix.
    pub fn cokernel(m: &[Vec<i64>]) -> Self {
        let s = smith_normal_form(m);
        let diag = s.diagonal();
        let rows = m.len();
        let free_rank = rows - diag.iter().filter(|d| !d.is_zero()).count();
        let factors = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.to_u64().expect("invariant factor fits in u64"))
            .collect();
        AbelianInvariants { factors, free_rank }
    }

    /// The order, if finite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = std::iter::repeat_n("Z".to_string(), self.free_rank)
            .chain(self.factors.iter().map(|d| format!("Z/{d}")))
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

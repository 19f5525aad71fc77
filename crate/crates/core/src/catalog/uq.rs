//! The word hypergroup of the free unitary quantum group `U_Q⁺`.
//!
//! Elements are words in the letters `[1]`, `[-1]`, stored in run-length
//! form `[n₁][n₂]⋯[n_l]` with alternating signs. The product is
//! `x⋆y = {x'y' : x = x'w, y = w⁻¹y'}` and the inverse reverses the word
//! and negates every block.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{HgError, Result};
use crate::freeprod::{FreeProduct, Word};
use crate::hypercore::Hypergroup;
use crate::morphism::FnMap;

use super::groups::IntegerGroup;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UqWord {
    blocks: Vec<i32>,
}

impl UqWord {
    pub fn empty() -> Self {
        UqWord::default()
    }

    /// Builds a word from blocks, merging adjacent blocks of the same sign.
    pub fn new(blocks: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out: Vec<i32> = Vec::new();
        for b in blocks {
            if b == 0 {
                return Err(HgError::UnknownElement("zero block in word".into()));
            }
            match out.last_mut() {
                Some(last) if last.signum() == b.signum() => *last += b,
                _ => out.push(b),
            }
        }
        Ok(UqWord { blocks: out })
    }

    /// Builds a word from `±1` letters.
    pub fn from_letters(letters: &[i32]) -> Result<Self> {
        if letters.iter().any(|l| l.abs() != 1) {
            return Err(HgError::UnknownElement(format!("letters must be ±1: {letters:?}")));
        }
        Self::new(letters.iter().copied())
    }

    pub fn blocks(&self) -> &[i32] {
        &self.blocks
    }

    pub fn letters(&self) -> Vec<i32> {
        self.blocks
            .iter()
            .flat_map(|&b| std::iter::repeat(b.signum()).take(b.unsigned_abs() as usize))
            .collect()
    }

    /// Number of letters.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

impl fmt::Display for UqWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("e");
        }
        for b in &self.blocks {
            write!(f, "[{b}]")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for UqWord {
    type Err = HgError;

    /// Parses `e`, the empty string, or `[n₁][n₂]⋯`; adjacent blocks of
    /// the same sign are merged, so letter form `[1][1][-1]` is accepted.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(UqWord::empty());
        }
        let bad = || HgError::UnknownElement(s.to_string());
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let blocks = inner
            .split("][")
            .map(|b| b.trim().parse::<i32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        UqWord::new(blocks)
    }
}

/// `w` reduces to the sum of its blocks.
pub fn uq_reduce(w: &UqWord) -> i64 {
    w.blocks.iter().map(|&b| i64::from(b)).sum()
}

/// Membership in `W_n`.
pub fn in_stratum(w: &UqWord, n: i64) -> bool {
    uq_reduce(w) == n
}

/// Membership in `H_k = ⋃_n W_{kn}`.
pub fn in_h_k(w: &UqWord, k: i64) -> bool {
    uq_reduce(w).rem_euclid(k) == 0
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UqHypergroup;

pub fn uq_hypergroup() -> UqHypergroup {
    UqHypergroup
}

impl Hypergroup for UqHypergroup {
    type Elem = UqWord;

    fn unit(&self) -> UqWord {
        UqWord::empty()
    }

    fn contains(&self, _x: &UqWord) -> bool {
        true
    }

    /// A suffix `w` of `x` with `w⁻¹` a prefix of `y` exists for every
    /// length up to the first mismatch, so the factorizations are scanned
    /// by increasing suffix length.
    fn product(&self, x: &UqWord, y: &UqWord) -> BTreeSet<UqWord> {
        let (lx, ly) = (x.letters(), y.letters());
        let mut out = BTreeSet::new();
        let mut t = 0;
        loop {
            let merged: Vec<i32> = lx[..lx.len() - t].iter().chain(&ly[t..]).copied().collect();
            out.insert(UqWord::new(merged).expect("letters are nonzero"));
            if t == lx.len() || t == ly.len() || ly[t] != -lx[lx.len() - 1 - t] {
                break;
            }
            t += 1;
        }
        out
    }

    fn inverse_of(&self, x: &UqWord) -> UqWord {
        UqWord {
            blocks: x.blocks.iter().rev().map(|b| -b).collect(),
        }
    }

    fn size(&self, x: &UqWord) -> usize {
        x.weight()
    }

    fn elements_up_to(&self, bound: usize) -> Vec<UqWord> {
        let mut out = vec![UqWord::empty()];
        let mut layer = vec![Vec::<i32>::new()];
        for _ in 0..bound {
            layer = layer
                .into_iter()
                .flat_map(|w| {
                    [1, -1].into_iter().map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().map(|l| UqWord::from_letters(l).expect("±1 letters")));
        }
        out.sort();
        out
    }

    fn parse_element(&self, s: &str) -> Result<UqWord> {
        s.parse()
    }

    fn format_element(&self, x: &UqWord) -> String {
        x.to_string()
    }
}

/// The grading `w ↦ Σ nᵢ` onto `ℤ`; its fibers are the strata `W_n`.
pub fn uq_grading() -> FnMap<UqHypergroup, IntegerGroup> {
    FnMap::single_valued(UqHypergroup, IntegerGroup, uq_reduce)
}

/// The free group `F₂ = ℤ∗ℤ` with `s₁`, `s₂` the generators of factors
/// 0 and 1.
pub fn free_group_f2() -> FreeProduct<IntegerGroup> {
    FreeProduct::new(vec![IntegerGroup, IntegerGroup]).expect("two factors")
}

/// Words obtained from `w` by repeatedly deleting an adjacent `[1][-1]`
/// or `[-1][1]` (letter form, `w` included).
pub fn subwords(w: &UqWord) -> BTreeSet<Vec<i32>> {
    let mut seen = BTreeSet::from([w.letters()]);
    let mut frontier = vec![w.letters()];
    while let Some(v) = frontier.pop() {
        for i in 0..v.len().saturating_sub(1) {
            if v[i] == -v[i + 1] {
                let mut u = v.clone();
                u.drain(i..i + 2);
                if seen.insert(u.clone()) {
                    frontier.push(u);
                }
            }
        }
    }
    seen
}

/// Elements of `F₂` of `w`-type for a letter word `w`: reduced words
/// `s_{i₁}^{n₁}⋯s_{i_l}^{n_l}`.
fn of_type(letters: &[i32], out: &mut BTreeSet<Word<i64>>) {
    fn go(letters: &[i32], prev: Option<(usize, i32)>, acc: &mut Vec<(usize, i64)>, out: &mut BTreeSet<Word<i64>>) {
        let Some((&l, rest)) = letters.split_first() else {
            out.insert(acc.iter().copied().collect());
            return;
        };
        for gen in 0..2 {
            if prev == Some((gen, -l)) {
                continue;
            }
            let merged = matches!(acc.last(), Some(&(g, _)) if g == gen);
            if merged {
                acc.last_mut().expect("nonempty").1 += i64::from(l);
            } else {
                acc.push((gen, i64::from(l)));
            }
            go(rest, Some((gen, l)), acc, out);
            if merged {
                acc.last_mut().expect("nonempty").1 -= i64::from(l);
            } else {
                acc.pop();
            }
        }
    }
    go(letters, None, &mut Vec::new(), out);
}

/// `q_hyp: U_Q⁺ → F₂`, sending `w` to its elements of sub-`w`-type.
pub fn uq_free_group_map() -> FnMap<UqHypergroup, FreeProduct<IntegerGroup>> {
    FnMap::new(UqHypergroup, free_group_f2(), |w| {
        let mut out = BTreeSet::new();
        for sub in subwords(w) {
            of_type(&sub, &mut out);
        }
        out
    })
}

//! The fusion hypergroup of SU(2).

use std::collections::BTreeSet;

use crate::error::{HgError, Result};
use crate::hypercore::{FiniteHypergroup, Hypergroup};
use crate::morphism::FnMap;

use super::groups::cyclic_dual;

/// Irreducibles of SU(2) labelled by highest weight `n ≥ 0`, with
/// `m⋆n = {|m−n|, |m−n|+2, …, m+n}` and dimension `n+1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Su2;

pub fn su2_hypergroup() -> Su2 {
    Su2
}

impl Hypergroup for Su2 {
    type Elem = u32;

    fn unit(&self) -> u32 {
        0
    }

    fn contains(&self, _x: &u32) -> bool {
        true
    }

    fn product(&self, m: &u32, n: &u32) -> BTreeSet<u32> {
        (m.abs_diff(*n)..=m + n).step_by(2).collect()
    }

    fn inverse_of(&self, x: &u32) -> u32 {
        *x
    }

    fn size(&self, x: &u32) -> usize {
        *x as usize
    }

    fn elements_up_to(&self, bound: usize) -> Vec<u32> {
        (0..=bound as u32).collect()
    }

    fn dimension(&self, x: &u32) -> Option<u64> {
        Some(u64::from(*x) + 1)
    }

    fn dims_exact(&self) -> bool {
        true
    }

    fn parse_element(&self, s: &str) -> Result<u32> {
        s.trim()
            .parse()
            .map_err(|_| HgError::UnknownElement(s.to_string()))
    }

    fn format_element(&self, x: &u32) -> String {
        x.to_string()
    }
}

/// The grading `n ↦ n mod 2` onto `ℤ/2`, i.e. by `P/Q` for `A₁`.
pub fn su2_parity_grading() -> FnMap<Su2, FiniteHypergroup> {
    FnMap::single_valued(Su2, cyclic_dual(2), |n| (n % 2).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::MultiMap;

    #[test]
    fn clebsch_gordan_instances() {
        assert_eq!(Su2.product(&1, &1), BTreeSet::from([0, 2]));
        assert_eq!(Su2.product(&2, &3), BTreeSet::from([1, 3, 5]));
        assert_eq!(Su2.product(&0, &7), BTreeSet::from([7]));
    }

    #[test]
    fn dimensions_add_up() {
        for m in 0..10u32 {
            for n in 0..10u32 {
                let total: u64 = Su2.product(&m, &n).iter().map(|z| Su2.dimension(z).unwrap()).sum();
                assert_eq!(total, u64::from((m + 1) * (n + 1)));
            }
        }
    }

    #[test]
    fn parity_values() {
        let p = su2_parity_grading();
        assert_eq!(p.apply(&0).unwrap(), BTreeSet::from(["0".to_string()]));
        assert_eq!(p.apply(&3).unwrap(), BTreeSet::from(["1".to_string()]));
        assert!(p.single_valued());
    }
}

//! Concrete hypergroups and gradings: duals of finite groups, SU(2)
//! fusion, the `U_Q⁺` word hypergroup, and `P/Q` from Cartan data.

mod groups;
mod lie;
mod snf;
mod su2;
mod uq;

use std::collections::BTreeSet;

use serde::Serialize;

pub use groups::{
    builtin_dual, cyclic_dual, dual_finite_group_hypergroup, klein_dual, parse_fusion_document, s3_dual,
    CharacterTable, FusionDocument, IntegerGroup,
};
pub use lie::{cartan_matrix, fundamental_quotient, parse_lie_types, CartanDatum, LieKind, LieType};
pub use snf::{smith_normal_form, AbelianInvariants, SmithForm};
pub use su2::{su2_hypergroup, su2_parity_grading, Su2};
pub use uq::{
    free_group_f2, in_h_k, in_stratum, subwords, uq_free_group_map, uq_grading, uq_hypergroup, uq_reduce,
    UqHypergroup, UqWord,
};

use crate::error::{HgError, Result};
use crate::hypercore::{FiniteHypergroup, Hypergroup, Scope};
use crate::morphism::{stable_kernel, MultiMap};
use crate::structure::{quotient_group, QuotientHypergroup};

/// A built-in hypergroup selected by name.
#[derive(Debug, Clone)]
pub enum CatalogHypergroup {
    Finite(FiniteHypergroup),
    Su2(Su2),
    Uq(UqHypergroup),
}

/// Resolves `su2`, `uq`, or `dual:<group>` with `<group>` one of `S3`,
/// `C<n>`, `C2xC2`.
pub fn catalog_hypergroup(name: &str) -> Result<CatalogHypergroup> {
    match name {
        "su2" => Ok(CatalogHypergroup::Su2(su2_hypergroup())),
        "uq" => Ok(CatalogHypergroup::Uq(uq_hypergroup())),
        _ => {
            let group = name
                .strip_prefix("dual:")
                .ok_or_else(|| HgError::UnknownElement(name.to_string()))?;
            Ok(CatalogHypergroup::Finite(builtin_dual(group)?))
        }
    }
}

/// `H/stker φ` as a group, with a generating set of classes.
#[derive(Debug, Clone)]
pub struct ChainGroup<E> {
    pub quotient: QuotientHypergroup<E>,
    /// Classes chosen greedily by the size of their smallest member.
    pub generators: Vec<usize>,
    pub window: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainGroupSummary {
    pub classes: Vec<String>,
    pub generators: Vec<String>,
    pub complete: bool,
    pub window: Option<usize>,
}

impl<E: Clone + Ord + std::hash::Hash> ChainGroup<E> {
    /// The order, when the class table is complete.
    pub fn order(&self) -> Option<usize> {
        self.quotient.is_complete().then(|| self.quotient.len())
    }

    pub fn to_finite(&self) -> Result<FiniteHypergroup> {
        self.quotient.to_finite()
    }

    pub fn summary(&self) -> ChainGroupSummary {
        ChainGroupSummary {
            classes: self.quotient.labels().to_vec(),
            generators: self
                .generators
                .iter()
                .map(|&g| self.quotient.label(g).to_string())
                .collect(),
            complete: self.quotient.is_complete(),
            window: self.window,
        }
    }
}

/// Classes reachable from `gens` through the known part of the table.
fn generated_classes<E: Clone + Ord + std::hash::Hash>(q: &QuotientHypergroup<E>, gens: &[usize]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([0]);
    let mut frontier = vec![0];
    while let Some(a) = frontier.pop() {
        for &g in gens {
            let mut next: Vec<usize> = Vec::new();
            for (x, y) in [(a, g), (g, a)] {
                next.extend(q.product(x, y).into_iter().flatten().copied());
            }
            if let Some(i) = q.inverses[a] {
                next.push(i);
            }
            for n in next {
                if seen.insert(n) {
                    frontier.push(n);
                }
            }
        }
    }
    seen
}

/// The group `H/stker φ` for a grading whose stable kernel is strongly
/// normal.
pub fn chain_group<M>(grading: &M, scope: Scope) -> Result<ChainGroup<<M::Source as Hypergroup>::Elem>>
where
    M: MultiMap + Clone + Send + Sync + 'static,
{
    let h = grading.source();
    let kernel = stable_kernel(grading, scope)?;
    let quotient = quotient_group(h, &kernel.kernel, scope)?;
    let mut order: Vec<usize> = (1..quotient.len()).collect();
    let weight = |c: usize| quotient.classes[c].iter().map(|x| h.size(x)).min().unwrap_or(0);
    order.sort_by_key(|&c| (weight(c), c));
    let mut generators = Vec::new();
    let mut reached = generated_classes(&quotient, &generators);
    for c in order {
        if !reached.contains(&c) {
            generators.push(c);
            reached = generated_classes(&quotient, &generators);
        }
    }
    Ok(ChainGroup {
        window: quotient.window,
        quotient,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::FnMap;

    #[test]
    fn su2_chain_group_is_z2() {
        let c = chain_group(&su2_parity_grading(), Scope::Window(8)).unwrap();
        assert_eq!(c.order(), Some(2));
        assert_eq!(c.summary().generators, vec!["1"]);
        assert!(c.to_finite().unwrap().is_group());
    }

    #[test]
    fn identity_grading_of_a_group() {
        let g = cyclic_dual(6);
        let id = FnMap::single_valued(g.clone(), g, |x: &String| x.clone());
        let c = chain_group(&id, Scope::All).unwrap();
        assert_eq!(c.order(), Some(6));
        assert_eq!(c.generators.len(), 1);
    }

    #[test]
    fn uq_chain_group_is_the_integers_on_a_window() {
        let c = chain_group(&uq_grading(), Scope::Window(4)).unwrap();
        assert_eq!(c.quotient.len(), 9);
        assert_eq!(c.generators.len(), 1);
        for a in 0..c.quotient.len() {
            for b in 0..c.quotient.len() {
                if let Some(p) = c.quotient.product(a, b) {
                    let n = |i: usize| uq_reduce(c.quotient.representative(i));
                    let z = *p.iter().next().unwrap();
                    assert_eq!(p.len(), 1);
                    assert_eq!(n(z), n(a) + n(b));
                }
            }
        }
    }
}

//! Finite-index quantum subgroups of free products of duals of compact
//! Lie groups, via the grading by `∗ P/Q`.
//!
//! Subgroups of the grading group are enumerated and each is pulled back
//! along the grading to a subhypergroup of the free-product hypergroup.
//! The pullback has the same index as the subgroup. Pullbacks are lazy
//! predicates; every set-level check runs on a window of word sizes.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{fundamental_quotient, su2_hypergroup, su2_parity_grading, AbelianInvariants, LieKind, LieType, Su2};
use crate::error::{HgError, Result};
use crate::freeprod::{free_product, free_product_morphism, FreeProduct, FreeProductMap, Word};
use crate::hypercore::{FiniteHypergroup, Hypergroup, Scope};
use crate::lowindex::{
    dihedral_families, enumerate_subgroups, match_family, subgroup_contains, Factor, FamilyMatchReport,
    GroupPresentation, GroupWord, SubgroupRecord,
};
use crate::morphism::{FnMap, MultiMap};
use crate::structure::{check_subhypergroup, Subhypergroup};

type SrcElem<M> = <<M as MultiMap>::Source as Hypergroup>::Elem;
type DstElem<M> = <<M as MultiMap>::Target as Hypergroup>::Elem;

/// The letterwise parity grading of a free product of SU(2) fusion
/// hypergroups.
pub type ParityGrading = FreeProductMap<FnMap<Su2, FiniteHypergroup>>;

/// The grading data of a list of Lie types.
#[derive(Debug, Clone)]
pub struct Grading {
    pub lie_types: Vec<LieType>,
    pub quotients: Vec<AbelianInvariants>,
    /// Presentation of the free product of the `P/Q`, trivial factors
    /// omitted.
    pub presentation: GroupPresentation,
    /// The free-product hypergroup and its grading, when fusion data
    /// exists for every factor (type A1 only).
    pub hypergroup: Option<(FreeProduct<Su2>, ParityGrading)>,
}

impl Grading {
    pub fn group_level_only(&self) -> bool {
        self.hypergroup.is_none()
    }

    pub fn provenance(&self) -> String {
        let names: Vec<String> = self.lie_types.iter().map(ToString::to_string).collect();
        format!("P/Q grading of {}", names.join("*"))
    }
}

/// The grading `∗ Γ_λ → ∗ P_λ/Q_λ` for the given types. With
/// `require_fusion`, types without fusion data are an error; otherwise
/// they yield group-level output only.
pub fn grading_of_free_product(lie_types: &[LieType], require_fusion: bool) -> Result<Grading> {
    if lie_types.is_empty() {
        return Err(HgError::EmptyFactorList);
    }
    let quotients = lie_types
        .iter()
        .map(|t| fundamental_quotient(t.kind, t.rank))
        .collect::<Result<Vec<_>>>()?;
    let factors: Vec<Factor> = quotients
        .iter()
        .filter_map(|q| match q.factors.as_slice() {
            [] => None,
            [m] => Some(Factor::Cyclic(*m)),
            ms => Some(Factor::Abelian(ms.to_vec())),
        })
        .collect();
    let presentation = GroupPresentation::free_product(&factors)?;
    let full = lie_types.iter().all(|t| t.kind == LieKind::A && t.rank == 1);
    if require_fusion && !full {
        let missing = lie_types
            .iter()
            .find(|t| !(t.kind == LieKind::A && t.rank == 1))
            .expect("some factor lacks fusion data");
        return Err(HgError::UnsupportedFusion(missing.to_string()));
    }
    let hypergroup = if full {
        let h = free_product(vec![su2_hypergroup(); lie_types.len()])?;
        let phi = free_product_morphism(vec![su2_parity_grading(); lie_types.len()])?;
        Some((h, phi))
    } else {
        None
    };
    Ok(Grading {
        lie_types: lie_types.to_vec(),
        quotients,
        presentation,
        hypergroup,
    })
}

/// A word in a free product of cyclic groups `ℤ/mᵢ` with labels
/// `"0", …, "m−1"`, as a group word with generator `i` for factor `i`.
pub fn cyclic_word_to_group(w: &Word<String>) -> GroupWord {
    w.letters()
        .iter()
        .map(|l| (l.factor, l.elem.parse::<i64>().expect("cyclic labels are integers")))
        .collect()
}

type ToGroup<T> = Arc<dyn Fn(&T) -> GroupWord + Send + Sync>;

/// `φ⁻¹(H)` for a single-valued grading `φ` into a presented group and a
/// subgroup `H` given by its coset action.
pub struct PulledBack<M: MultiMap> {
    map: Arc<M>,
    record: SubgroupRecord,
    to_group: ToGroup<DstElem<M>>,
}

impl<M: MultiMap> Clone for PulledBack<M> {
    fn clone(&self) -> Self {
        PulledBack {
            map: Arc::clone(&self.map),
            record: self.record.clone(),
            to_group: Arc::clone(&self.to_group),
        }
    }
}

impl<M: MultiMap> std::fmt::Debug for PulledBack<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PulledBack(index {})", self.record.index)
    }
}

impl<M: MultiMap> PulledBack<M> {
    pub fn record(&self) -> &SubgroupRecord {
        &self.record
    }

    pub fn index(&self) -> usize {
        self.record.index
    }

    pub fn contains(&self, x: &SrcElem<M>) -> bool {
        self.map
            .image(x)
            .iter()
            .all(|y| subgroup_contains(&self.record, &(self.to_group)(y)))
    }
}

impl<M> PulledBack<M>
where
    M: MultiMap + Send + Sync + 'static,
    SrcElem<M>: Clone + Ord,
{
    pub fn subhypergroup(&self) -> Subhypergroup<SrcElem<M>> {
        let me = self.clone();
        Subhypergroup::from_predicate(move |x| me.contains(x))
    }

    /// Unit, inverse closure and product closure on words of size at
    /// most `window`.
    pub fn check_window(&self, window: usize) -> Result<()> {
        check_subhypergroup(self.map.source(), &self.subhypergroup(), Scope::Window(window))
    }
}

pub fn pullback_subhypergroup<M: MultiMap>(
    phi: Arc<M>,
    record: SubgroupRecord,
    to_group: impl Fn(&DstElem<M>) -> GroupWord + Send + Sync + 'static,
) -> Result<PulledBack<M>> {
    if !phi.single_valued() {
        return Err(HgError::MorphismMismatch("pullback needs a single-valued grading".into()));
    }
    Ok(PulledBack {
        map: phi,
        record,
        to_group: Arc::new(to_group),
    })
}

/// One classified quantum subgroup.
#[derive(Debug, Clone)]
pub struct QuantumSubgroupRecord {
    pub group_subgroup: SubgroupRecord,
    pub index: usize,
    /// `None` for group-level-only classifications.
    pub subhypergroup: Option<PulledBack<ParityGrading>>,
    pub family_match: Option<String>,
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub grading: Grading,
    pub max_index: usize,
    pub records: Vec<QuantumSubgroupRecord>,
    /// Family matching for `ℤ/2∗ℤ/2`.
    pub family_report: Option<FamilyMatchReport>,
}

impl Classification {
    pub fn grading_group(&self) -> &str {
        self.grading.presentation.name()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.index).collect()
    }

    pub fn to_json(&self) -> Value {
        let p = &self.grading.presentation;
        json!({
            "grading_group": self.grading_group(),
            "group_level_only": self.grading.group_level_only(),
            "max_index": self.max_index,
            "records": self.records.iter().map(|r| json!({
                "index": r.index,
                "action": r.group_subgroup.action_json(p),
                "family_match": r.family_match,
            })).collect::<Vec<_>>(),
        })
    }

    /// Words of the free-product hypergroup of size at most `window`.
    pub fn window_words(&self, window: usize) -> Option<Vec<Word<u32>>> {
        self.grading.hypergroup.as_ref().map(|(h, _)| h.elements_up_to(window))
    }

    /// Checks every pulled-back set against the subhypergroup axioms on
    /// the window.
    pub fn check_windows(&self, window: usize) -> Result<()> {
        for r in &self.records {
            if let Some(s) = &r.subhypergroup {
                s.check_window(window)?;
            }
        }
        Ok(())
    }

    /// For each pair of records, a word in the window on which their
    /// pulled-back sets differ; pairs without one are returned in
    /// `unseparated`.
    pub fn separation(&self, window: usize) -> SeparationReport {
        let words = self.window_words(window).unwrap_or_default();
        let sigs: Vec<Vec<bool>> = self
            .records
            .iter()
            .map(|r| match &r.subhypergroup {
                Some(s) => words.iter().map(|w| s.contains(w)).collect(),
                None => Vec::new(),
            })
            .collect();
        let mut unseparated = Vec::new();
        for i in 0..sigs.len() {
            for j in i + 1..sigs.len() {
                if sigs[i] == sigs[j] {
                    unseparated.push((i, j));
                }
            }
        }
        SeparationReport {
            window,
            words: words.len(),
            pairs: sigs.len() * sigs.len().saturating_sub(1) / 2,
            unseparated,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub window: usize,
    pub words: usize,
    pub pairs: usize,
    pub unseparated: Vec<(usize, usize)>,
}

/// All quantum subgroups of index at most `max_index` of the free
/// product of the duals of the given types.
pub fn classify_quantum_subgroups(lie_types: &[LieType], max_index: usize) -> Result<Classification> {
    let grading = grading_of_free_product(lie_types, false)?;
    let p = &grading.presentation;
    let subgroups = enumerate_subgroups(p, max_index)?;
    let family_report = (p.name() == "C2*C2")
        .then(|| match_family(p, &subgroups, &dihedral_families(max_index), 2 * max_index));
    let phi = grading.hypergroup.as_ref().map(|(_, phi)| Arc::new(phi.clone()));
    let provenance = grading.provenance();
    let records = subgroups
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let subhypergroup = phi
                .as_ref()
                .map(|phi| pullback_subhypergroup(Arc::clone(phi), s.clone(), cyclic_word_to_group))
                .transpose()?;
            Ok(QuantumSubgroupRecord {
                index: s.index,
                group_subgroup: s,
                subhypergroup,
                family_match: family_report
                    .as_ref()
                    .and_then(|r| r.family_of(i).map(str::to_string)),
                provenance: provenance.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Classification {
        grading,
        max_index,
        records,
        family_report,
    })
}

/// Members of a pulled-back set among the given words.
pub fn members_among<M>(s: &PulledBack<M>, words: &[SrcElem<M>]) -> BTreeSet<SrcElem<M>>
where
    M: MultiMap,
    SrcElem<M>: Clone + Ord,
{
    words.iter().filter(|w| s.contains(w)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{in_h_k, parse_lie_types, uq_grading, uq_hypergroup, uq_reduce};

    fn types(s: &str) -> Vec<LieType> {
        parse_lie_types(s).unwrap()
    }

    #[test]
    fn gradings() {
        let g = grading_of_free_product(&types("A1,A1"), true).unwrap();
        assert_eq!(g.presentation.name(), "C2*C2");
        assert!(!g.group_level_only());
        let g = grading_of_free_product(&types("A1"), true).unwrap();
        assert_eq!(g.presentation.name(), "C2");
        let g = grading_of_free_product(&types("A2,A1"), false).unwrap();
        assert_eq!(g.presentation.name(), "C3*C2");
        assert!(g.group_level_only());
        assert!(matches!(
            grading_of_free_product(&types("A2,A1"), true),
            Err(HgError::UnsupportedFusion(t)) if t == "A2"
        ));
        let g = grading_of_free_product(&types("D4,E8"), false).unwrap();
        assert_eq!(g.presentation.name(), "(C2xC2)");
        let g = grading_of_free_product(&types("E8"), false).unwrap();
        assert_eq!(g.presentation.name(), "1");
    }

    #[test]
    fn su2_has_the_even_subhypergroup() {
        let c = classify_quantum_subgroups(&types("A1"), 2).unwrap();
        assert_eq!(c.indices(), vec![1, 2]);
        let even = c.records[1].subhypergroup.as_ref().unwrap();
        let h = &c.grading.hypergroup.as_ref().unwrap().0;
        let members = members_among(even, &h.elements_up_to(4));
        let labels: Vec<String> = members.iter().map(|w| h.format_element(w)).collect();
        assert_eq!(labels, vec!["[]", "[[\"0\",\"2\"]]", "[[\"0\",\"4\"]]"]);
        c.check_windows(6).unwrap();
    }

    #[test]
    fn two_factors_up_to_index_two() {
        let c = classify_quantum_subgroups(&types("A1,A1"), 2).unwrap();
        assert_eq!(c.indices(), vec![1, 2, 2, 2]);
        assert_eq!(c.records[0].family_match.as_deref(), Some("G"));
        let h = &c.grading.hypergroup.as_ref().unwrap().0;
        let rot = c
            .records
            .iter()
            .find(|r| r.family_match.as_deref() == Some("H_1"))
            .and_then(|r| r.subhypergroup.as_ref())
            .unwrap();
        let word = |s: &str| h.parse_element(s).unwrap();
        assert!(rot.contains(&word(r#"[["0","1"],["1","1"]]"#)));
        assert!(!rot.contains(&word(r#"[["0","1"]]"#)));
        assert!(rot.contains(&word(r#"[["0","2"]]"#)));
        c.check_windows(5).unwrap();
        assert!(c.separation(4).unseparated.is_empty());
        let json = c.to_json();
        assert_eq!(json["grading_group"], "C2*C2");
        assert_eq!(json["records"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn group_level_classification() {
        let c = classify_quantum_subgroups(&types("A2,A1"), 3).unwrap();
        assert!(c.records.iter().all(|r| r.subhypergroup.is_none()));
        assert_eq!(c.records[0].index, 1);
        assert!(c.family_report.is_none());
    }

    #[test]
    fn uq_pullback_of_multiples_is_a_union_of_strata() {
        let z: GroupPresentation = "Z".parse().unwrap();
        let phi = Arc::new(uq_grading());
        let h = uq_hypergroup();
        let words = h.elements_up_to(4);
        for r in enumerate_subgroups(&z, 4).unwrap() {
            let k = r.index;
            let s = pullback_subhypergroup(Arc::clone(&phi), r, |n: &i64| vec![(0, *n)]).unwrap();
            for w in &words {
                assert_eq!(s.contains(w), in_h_k(w, k as i64), "{w} in H_{k}");
                assert_eq!(s.contains(w), uq_reduce(w) % k as i64 == 0);
            }
            check_subhypergroup(&h, &s.subhypergroup(), Scope::Window(4)).unwrap();
        }
    }
}

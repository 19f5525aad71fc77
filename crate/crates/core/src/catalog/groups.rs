//! Duals of finite groups, fusion documents, and the integers as a lazy
//! group.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{HgError, Result};
use crate::hypercore::{verify_axioms, FiniteHypergroup, Hypergroup};

/// The dual of `ℤ/n`, which is again `ℤ/n`. Labels are `"0".."n-1"`.
///
/// # Panics
/// If `n == 0`.
pub fn cyclic_dual(n: usize) -> FiniteHypergroup {
    assert!(n > 0, "cyclic group of order 0");
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let num = |s: &str| s.parse::<usize>().expect("numeric label");
    FiniteHypergroup::from_group(
        &labels,
        "0",
        |a, b| ((num(a) + num(b)) % n).to_string(),
        |a| ((n - num(a)) % n).to_string(),
    )
    .expect("cyclic table is well formed")
}

/// The dual of `ℤ/2×ℤ/2`. Labels are `"00"`, `"01"`, `"10"`, `"11"`.
pub fn klein_dual() -> FiniteHypergroup {
    let labels: Vec<String> = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
    FiniteHypergroup::from_group(
        &labels,
        "00",
        |a, b| {
            a.bytes()
                .zip(b.bytes())
                .map(|(x, y)| if x == y { '0' } else { '1' })
                .collect()
        },
        |a| a.to_string(),
    )
    .expect("Klein table is well formed")
}

/// A character table with integer (hence real) character values.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub labels: Vec<String>,
    pub class_sizes: Vec<i64>,
    /// `values[i][k]` is the character `i` on class `k`; class 0 is the
    /// identity.
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    /// `S₃` with classes `{e}`, transpositions, 3-cycles.
    pub fn s3() -> Self {
        CharacterTable {
            labels: vec!["triv".into(), "sgn".into(), "std".into()],
            class_sizes: vec![1, 3, 2],
            values: vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]],
        }
    }

    pub fn group_order(&self) -> i64 {
        self.class_sizes.iter().sum()
    }

    /// Multiplicity of `c` in `a⊗b`.
    pub fn multiplicity(&self, a: usize, b: usize, c: usize) -> i64 {
        let s: i64 = (0..self.class_sizes.len())
            .map(|k| self.class_sizes[k] * self.values[a][k] * self.values[b][k] * self.values[c][k])
            .sum();
        s / self.group_order()
    }

    /// The fusion document obtained by keeping the constituents of each
    /// tensor product.
    pub fn fusion_document(&self) -> FusionDocument {
        let n = self.labels.len();
        let mut fusion = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let zs: Vec<String> = (0..n)
                    .filter(|&c| self.multiplicity(a, b, c) > 0)
                    .map(|c| self.labels[c].clone())
                    .collect();
                fusion.insert(format!("{}|{}", self.labels[a], self.labels[b]), zs);
            }
        }
        FusionDocument {
            labels: self.labels.clone(),
            unit: Some(self.labels[0].clone()),
            dims: self
                .labels
                .iter()
                .zip(&self.values)
                .map(|(l, v)| (l.clone(), v[0] as u64))
                .collect(),
            conj: self.labels.iter().map(|l| (l.clone(), l.clone())).collect(),
            fusion,
        }
    }
}

/// Irreducible labels, dimensions, conjugation and fusion sets of a
/// finite group. The unit defaults to the first label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionDocument {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    pub dims: BTreeMap<String, u64>,
    pub conj: BTreeMap<String, String>,
    pub fusion: BTreeMap<String, Vec<String>>,
}

pub fn parse_fusion_document(text: &str) -> Result<FusionDocument> {
    serde_json::from_str(text).map_err(|e| HgError::schema("/", e.to_string()))
}

/// Builds the dual hypergroup from a fusion document and verifies it.
///
/// The dimension identity is flagged exact when `d(a)d(b) = Σ d(c)` holds
/// for every pair, i.e. when the fusion is multiplicity free.
pub fn dual_finite_group_hypergroup(doc: &FusionDocument) -> Result<FiniteHypergroup> {
    let unit = doc
        .unit
        .clone()
        .or_else(|| doc.labels.first().cloned())
        .ok_or_else(|| HgError::schema("/labels", "no labels"))?;
    let mut table = BTreeMap::new();
    for (key, zs) in &doc.fusion {
        let (a, b) = key
            .split_once('|')
            .ok_or_else(|| HgError::schema(format!("/fusion/{key}"), "key must be `a|b`"))?;
        table.insert(
            (a.to_string(), b.to_string()),
            zs.iter().cloned().collect::<BTreeSet<_>>(),
        );
    }
    let exact = table.iter().all(|((a, b), zs)| {
        let d = |x: &String| doc.dims.get(x).copied().unwrap_or(0);
        d(a) * d(b) == zs.iter().map(d).sum::<u64>()
    });
    let h = FiniteHypergroup::from_parts(
        doc.labels.iter().cloned(),
        &unit,
        &doc.conj,
        &table,
        Some(&doc.dims),
        exact,
    )?;
    let report = verify_axioms(&h);
    if let Some(v) = report.violations.first() {
        return Err(HgError::AxiomFailure(format!(
            "{} violation(s), first: {}",
            report.violations.len(),
            serde_json::to_string(v).expect("serializable")
        )));
    }
    Ok(h)
}

/// The dual of `S₃`: `triv`, `sgn`, `std` with dimensions 1, 1, 2.
pub fn s3_dual() -> FiniteHypergroup {
    dual_finite_group_hypergroup(&CharacterTable::s3().fusion_document())
        .expect("S3 character table is consistent")
}

/// Built-in duals by name: `S3`, `C<n>`, `C2xC2`.
pub fn builtin_dual(name: &str) -> Result<FiniteHypergroup> {
    match name {
        "S3" => Ok(s3_dual()),
        "C2xC2" => Ok(klein_dual()),
        _ => match name.strip_prefix('C').map(str::parse::<usize>) {
            Some(Ok(n)) if n > 0 => Ok(cyclic_dual(n)),
            _ => Err(HgError::UnsupportedFusion(format!(
                "unknown built-in dual `{name}` (expected S3, C<n>, C2xC2)"
            ))),
        },
    }
}

/// The integers as a lazy group; the size of `n` is `|n|`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegerGroup;

impl Hypergroup for IntegerGroup {
    type Elem = i64;

    fn unit(&self) -> i64 {
        0
    }

    fn contains(&self, _x: &i64) -> bool {
        true
    }

    fn product(&self, x: &i64, y: &i64) -> BTreeSet<i64> {
        BTreeSet::from([x + y])
    }

    fn inverse_of(&self, x: &i64) -> i64 {
        -x
    }

    fn size(&self, x: &i64) -> usize {
        x.unsigned_abs() as usize
    }

    fn elements_up_to(&self, bound: usize) -> Vec<i64> {
        let b = bound as i64;
        (-b..=b).collect()
    }

    fn dimension(&self, _x: &i64) -> Option<u64> {
        Some(1)
    }

    fn dims_exact(&self) -> bool {
        true
    }

    fn parse_element(&self, s: &str) -> Result<i64> {
        s.trim()
            .parse()
            .map_err(|_| HgError::UnknownElement(s.to_string()))
    }

    fn format_element(&self, x: &i64) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::hyper_order;

    #[test]
    fn s3_columns_are_orthogonal() {
        let t = CharacterTable::s3();
        let order = t.group_order();
        for k in 0..3 {
            for l in 0..3 {
                let s: i64 = (0..3).map(|i| t.values[i][k] * t.values[i][l]).sum();
                let expected = if k == l { order / t.class_sizes[k] } else { 0 };
                assert_eq!(s, expected, "classes {k}, {l}");
            }
        }
    }

    #[test]
    fn s3_dual_fusion() {
        let h = s3_dual();
        let s = |x: &str| x.to_string();
        assert_eq!(
            h.multiply(&s("std"), &s("std")).unwrap(),
            BTreeSet::from([s("sgn"), s("std"), s("triv")])
        );
        assert_eq!(h.multiply(&s("sgn"), &s("std")).unwrap(), BTreeSet::from([s("std")]));
        assert_eq!(h.inverse(&s("std")).unwrap(), "std");
        assert_eq!(hyper_order(&h).unwrap(), 6);
        assert!(h.exact_dims());
    }

    #[test]
    fn small_duals_are_groups() {
        assert!(cyclic_dual(5).is_group());
        let k = klein_dual();
        assert_eq!(k.product(&"01".into(), &"11".into()), BTreeSet::from(["10".to_string()]));
        assert_eq!(builtin_dual("C2").unwrap(), cyclic_dual(2));
        assert!(builtin_dual("C0").is_err());
    }

    #[test]
    fn non_associative_fusion_is_rejected() {
        let mut doc = CharacterTable::s3().fusion_document();
        doc.fusion.insert("std|std".into(), vec!["triv".into(), "std".into()]);
        assert!(matches!(dual_finite_group_hypergroup(&doc), Err(HgError::AxiomFailure(_))));
    }

    #[test]
    fn fusion_document_round_trips() {
        let doc = CharacterTable::s3().fusion_document();
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_fusion_document(&text).unwrap(), doc);
        assert!(parse_fusion_document(r#"{"labels":[]}"#).is_err());
    }
}

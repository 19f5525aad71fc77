use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteHypergroup, Hypergroup};

/// A single failed axiom instance. Elements are recorded by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    InverseOfUnit { inverse: String },
    NotInvolution { x: String },
    UnitLaw { x: String },
    EmptyProduct { x: String, y: String },
    Adjointness { x: String, y: String, z: String },
    Associativity { x: String, y: String, z: String },
    Dimension { detail: String },
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AxiomReport {
    /// Size bound of the checked window; `None` for a full check.
    pub window: Option<usize>,
    pub elements_checked: usize,
    pub triples_checked: usize,
    /// Number of pair products with members outside the window. This is
    /// informational and never a failure.
    pub products_outside_window: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn window_overflow(&self) -> bool {
        self.products_outside_window > 0
    }
}

/// Exhaustive check of unit law, involution, adjointness, associativity and
/// (when present) the dimension inequality.
pub fn verify_axioms(h: &FiniteHypergroup) -> AxiomReport {
    let elems = h.finite_elements().unwrap_or_default();
    check_on(h, &elems, None)
}

/// The same checks restricted to all triples from the window of elements of
/// size at most `bound`. Products may leave the window; they are computed
/// exactly and counted in `products_outside_window`.
pub fn verify_axioms_window<H>(h: &H, bound: usize) -> AxiomReport
where
    H: Hypergroup + Sync,
{
    let elems = h.elements_up_to(bound);
    check_on(h, &elems, Some(bound))
}

pub(crate) fn check_on<H>(h: &H, elems: &[H::Elem], window: Option<usize>) -> AxiomReport
where
    H: Hypergroup + Sync,
{
    let n = elems.len();
    let idx: HashMap<&H::Elem, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let fmt = |x: &H::Elem| h.format_element(x);
    let mut violations = Vec::new();

    let unit = h.unit();
    let singleton = |x: &H::Elem| BTreeSet::from([x.clone()]);
    if h.inverse_of(&unit) != unit {
        violations.push(Violation::InverseOfUnit {
            inverse: fmt(&h.inverse_of(&unit)),
        });
    }
    for x in elems {
        if h.inverse_of(&h.inverse_of(x)) != *x {
            violations.push(Violation::NotInvolution { x: fmt(x) });
        }
        if h.product(x, &unit) != singleton(x) || h.product(&unit, x) != singleton(x) {
            violations.push(Violation::UnitLaw { x: fmt(x) });
        }
    }

    let table: Vec<Vec<BTreeSet<H::Elem>>> = elems
        .par_iter()
        .map(|x| elems.iter().map(|y| h.product(x, y)).collect())
        .collect();
    let mut outside = 0;
    for (i, row) in table.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            if p.is_empty() {
                violations.push(Violation::EmptyProduct {
                    x: fmt(&elems[i]),
                    y: fmt(&elems[j]),
                });
            }
            if p.iter().any(|z| !idx.contains_key(z)) {
                outside += 1;
            }
        }
    }

    let prod = |u: &H::Elem, v: &H::Elem| -> Cow<'_, BTreeSet<H::Elem>> {
        match (idx.get(u), idx.get(v)) {
            (Some(&a), Some(&b)) => Cow::Borrowed(&table[a][b]),
            _ => Cow::Owned(h.product(u, v)),
        }
    };
    let inverses: Vec<H::Elem> = elems.iter().map(|x| h.inverse_of(x)).collect();

    let triple: Vec<Violation> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut found = Vec::new();
            let x = &elems[i];
            for j in 0..n {
                let y = &elems[j];
                for k in 0..n {
                    let z = &elems[k];
                    let a = table[i][j].contains(z);
                    let b = prod(&inverses[i], z).contains(y);
                    let c = prod(z, &inverses[j]).contains(x);
                    if a != b || b != c {
                        found.push(Violation::Adjointness {
                            x: fmt(x),
                            y: fmt(y),
                            z: fmt(z),
                        });
                    }
                    let mut left = BTreeSet::new();
                    for u in &table[i][j] {
                        left.extend(prod(u, z).iter().cloned());
                    }
                    let mut right = BTreeSet::new();
                    for v in &table[j][k] {
                        right.extend(prod(x, v).iter().cloned());
                    }
                    if left != right {
                        found.push(Violation::Associativity {
                            x: fmt(x),
                            y: fmt(y),
                            z: fmt(z),
                        });
                    }
                }
            }
            found
        })
        .collect();
    violations.extend(triple);

    let dims: Option<Vec<u64>> = elems.iter().map(|x| h.dimension(x)).collect();
    if let Some(dims) = dims {
        check_dims(h, elems, &dims, &table, &mut violations);
    }

    AxiomReport {
        window,
        elements_checked: n,
        triples_checked: n * n * n,
        products_outside_window: outside,
        violations,
    }
}

fn check_dims<H: Hypergroup>(
    h: &H,
    elems: &[H::Elem],
    dims: &[u64],
    table: &[Vec<BTreeSet<H::Elem>>],
    violations: &mut Vec<Violation>,
) {
    if h.dimension(&h.unit()) != Some(1) {
        violations.push(Violation::Dimension {
            detail: "d(unit) != 1".into(),
        });
    }
    let exact = h.dims_exact();
    for (i, x) in elems.iter().enumerate() {
        if h.dimension(&h.inverse_of(x)) != Some(dims[i]) {
            violations.push(Violation::Dimension {
                detail: format!("d(inverse({})) != d({})", h.format_element(x), h.format_element(x)),
            });
        }
        for (j, y) in elems.iter().enumerate() {
            let total: Option<u64> = table[i][j].iter().map(|z| h.dimension(z)).sum();
            let lhs = dims[i] * dims[j];
            let ok = match total {
                None => false,
                Some(t) if exact => t == lhs,
                Some(t) => t <= lhs,
            };
            if !ok {
                violations.push(Violation::Dimension {
                    detail: format!(
                        "d({x})d({y}) = {lhs} vs sum over product = {total:?}",
                        x = h.format_element(x),
                        y = h.format_element(y)
                    ),
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn cyclic(n: usize) -> FiniteHypergroup {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FiniteHypergroup::from_group(
            &labels,
            "0",
            |a, b| ((a.parse::<usize>().unwrap() + b.parse::<usize>().unwrap()) % n).to_string(),
            |a| ((n - a.parse::<usize>().unwrap()) % n).to_string(),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_group_passes() {
        let report = verify_axioms(&cyclic(4));
        assert!(report.passed(), "{:?}", report.violations);
        assert_eq!(report.triples_checked, 64);
    }

    #[test]
    fn broken_unit_law_is_located() {
        let labels = ["e", "x", "y"].map(String::from);
        let inverse: BTreeMap<_, _> = labels.iter().map(|l| (l.clone(), l.clone())).collect();
        let mut table = BTreeMap::new();
        for a in &labels {
            for b in &labels {
                let p = if a == "e" {
                    BTreeSet::from([b.clone()])
                } else if b == "e" {
                    BTreeSet::from([a.clone()])
                } else {
                    labels.iter().cloned().collect()
                };
                table.insert((a.clone(), b.clone()), p);
            }
        }
        table.insert(("x".into(), "e".into()), BTreeSet::from(["x".into(), "y".into()]));
        let h = FiniteHypergroup::from_parts(labels.clone(), "e", &inverse, &table, None, false)
            .unwrap();
        let report = verify_axioms(&h);
        assert!(!report.passed());
        assert!(report
            .violations
            .contains(&Violation::UnitLaw { x: "x".into() }));
    }
}

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::Hypergroup;
use crate::error::{HgError, Result};

/// A hypergroup given by its full product table.
///
/// Elements are string labels kept in sorted order. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct FiniteHypergroup {
    inner: Arc<Table>,
}

#[derive(Debug)]
struct Table {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    unit: usize,
    inv: Vec<usize>,
    products: Vec<BTreeSet<usize>>,
    dims: Option<Vec<u64>>,
    exact_dims: bool,
}

impl PartialEq for FiniteHypergroup {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (&*self.inner, &*other.inner);
        a.labels == b.labels
            && a.unit == b.unit
            && a.inv == b.inv
            && a.products == b.products
            && a.dims == b.dims
            && a.exact_dims == b.exact_dims
    }
}

impl Eq for FiniteHypergroup {}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.contains('|') {
        return Err(HgError::BadLabel {
            label: label.to_string(),
            message: "labels must be nonempty and must not contain `|`".into(),
        });
    }
    Ok(())
}

impl FiniteHypergroup {
    /// Builds a hypergroup from labelled data.
    ///
    /// Only structural consistency is checked here (known labels, total
    /// maps, nonempty products). The hypergroup axioms are checked by
    /// [`super::verify_axioms`].
    pub fn from_parts(
        labels: impl IntoIterator<Item = String>,
        unit: &str,
        inverse: &BTreeMap<String, String>,
        table: &BTreeMap<(String, String), BTreeSet<String>>,
        dims: Option<&BTreeMap<String, u64>>,
        exact_dims: bool,
    ) -> Result<Self> {
        let mut labels: Vec<String> = labels.into_iter().collect();
        labels.sort();
        labels.dedup();
        for l in &labels {
            check_label(l)?;
        }
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let lookup = |path: String, l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| HgError::schema(path, format!("unknown label `{l}`")))
        };
        let unit = lookup("/unit".into(), unit)?;
        let n = labels.len();

        let mut inv = vec![usize::MAX; n];
        for (x, y) in inverse {
            let xi = lookup(format!("/inverse/{x}"), x)?;
            inv[xi] = lookup(format!("/inverse/{x}"), y)?;
        }
        if let Some(i) = inv.iter().position(|&v| v == usize::MAX) {
            return Err(HgError::schema(
                format!("/inverse/{}", labels[i]),
                "missing inverse",
            ));
        }

        let mut products = vec![BTreeSet::new(); n * n];
        let mut seen = vec![false; n * n];
        for ((x, y), zs) in table {
            let path = format!("/table/{x}|{y}");
            let xi = lookup(path.clone(), x)?;
            let yi = lookup(path.clone(), y)?;
            if zs.is_empty() {
                return Err(HgError::schema(path, "empty product"));
            }
            let mut set = BTreeSet::new();
            for z in zs {
                set.insert(lookup(path.clone(), z)?);
            }
            products[xi * n + yi] = set;
            seen[xi * n + yi] = true;
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(HgError::schema(
                format!("/table/{}|{}", labels[k / n], labels[k % n]),
                "missing product entry",
            ));
        }

        let dims = match dims {
            None => None,
            Some(d) => {
                let mut out = vec![0u64; n];
                for (x, v) in d {
                    let xi = lookup(format!("/dims/{x}"), x)?;
                    if *v == 0 {
                        return Err(HgError::schema(format!("/dims/{x}"), "dimension must be positive"));
                    }
                    out[xi] = *v;
                }
                if let Some(i) = out.iter().position(|&v| v == 0) {
                    return Err(HgError::schema(
                        format!("/dims/{}", labels[i]),
                        "missing dimension",
                    ));
                }
                Some(out)
            }
        };

        Ok(FiniteHypergroup {
            inner: Arc::new(Table {
                labels,
                index,
                unit,
                inv,
                products,
                dims,
                exact_dims,
            }),
        })
    }

    /// The hypergroup of a finite group given by its multiplication.
    /// Every product is a singleton and every dimension is 1.
    pub fn from_group<F, G>(labels: &[String], unit: &str, mul: F, inv: G) -> Result<Self>
    where
        F: Fn(&str, &str) -> String,
        G: Fn(&str) -> String,
    {
        let inverse = labels.iter().map(|x| (x.clone(), inv(x))).collect();
        let mut table = BTreeMap::new();
        for x in labels {
            for y in labels {
                table.insert((x.clone(), y.clone()), BTreeSet::from([mul(x, y)]));
            }
        }
        let dims = labels.iter().map(|x| (x.clone(), 1)).collect();
        Self::from_parts(labels.iter().cloned(), unit, &inverse, &table, Some(&dims), true)
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn unit_label(&self) -> &str {
        &self.inner.labels[self.inner.unit]
    }

    pub fn has_dims(&self) -> bool {
        self.inner.dims.is_some()
    }

    pub fn exact_dims(&self) -> bool {
        self.inner.exact_dims
    }

    /// True when every product is a single element.
    pub fn is_group(&self) -> bool {
        self.inner.products.iter().all(|p| p.len() == 1)
    }

    fn label(&self, i: usize) -> &String {
        &self.inner.labels[i]
    }
}

impl Hypergroup for FiniteHypergroup {
    type Elem = String;

    fn unit(&self) -> String {
        self.label(self.inner.unit).clone()
    }

    fn contains(&self, x: &String) -> bool {
        self.inner.index.contains_key(x)
    }

    fn product(&self, x: &String, y: &String) -> BTreeSet<String> {
        let n = self.len();
        let (xi, yi) = (self.inner.index[x], self.inner.index[y]);
        self.inner.products[xi * n + yi]
            .iter()
            .map(|&z| self.label(z).clone())
            .collect()
    }

    fn inverse_of(&self, x: &String) -> String {
        self.label(self.inner.inv[self.inner.index[x]]).clone()
    }

    fn size(&self, x: &String) -> usize {
        usize::from(self.inner.index[x] != self.inner.unit)
    }

    fn elements_up_to(&self, bound: usize) -> Vec<String> {
        self.inner
            .labels
            .iter()
            .filter(|x| self.size(x) <= bound)
            .cloned()
            .collect()
    }

    fn finite_elements(&self) -> Option<Vec<String>> {
        Some(self.inner.labels.clone())
    }

    fn dimension(&self, x: &String) -> Option<u64> {
        let i = *self.inner.index.get(x)?;
        self.inner.dims.as_ref().map(|d| d[i])
    }

    fn dims_exact(&self) -> bool {
        self.inner.exact_dims
    }

    fn parse_element(&self, s: &str) -> Result<String> {
        let s = s.trim();
        if self.inner.index.contains_key(s) {
            Ok(s.to_string())
        } else {
            Err(HgError::UnknownElement(s.to_string()))
        }
    }

    fn format_element(&self, x: &String) -> String {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteHypergroup {
        let labels = vec!["0".to_string(), "1".to_string()];
        FiniteHypergroup::from_group(
            &labels,
            "0",
            |a, b| if a == b { "0".into() } else { "1".into() },
            |a| a.to_string(),
        )
        .unwrap()
    }

    #[test]
    fn group_table_is_singleton_valued() {
        let g = z2();
        assert!(g.is_group());
        assert_eq!(g.multiply(&"1".into(), &"1".into()).unwrap(), BTreeSet::from(["0".to_string()]));
        assert_eq!(g.inverse(&"0".into()).unwrap(), "0");
    }

    #[test]
    fn unknown_element_is_an_error() {
        let g = z2();
        assert_eq!(
            g.multiply(&"2".into(), &"1".into()),
            Err(HgError::UnknownElement("\"2\"".into()))
        );
    }

    #[test]
    fn missing_entry_is_reported_with_path() {
        let inverse = BTreeMap::from([("e".to_string(), "e".to_string())]);
        let err = FiniteHypergroup::from_parts(
            vec!["e".to_string()],
            "e",
            &inverse,
            &BTreeMap::new(),
            None,
            false,
        )
        .unwrap_err();
        assert_eq!(err, HgError::schema("/table/e|e", "missing product entry"));
    }
}

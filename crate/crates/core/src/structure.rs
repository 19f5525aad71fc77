//! Subhypergroups, coset spaces, double cosets, strong normality, quotient
//! groups, and index arithmetic.
//!
//! Cosets use the right convention: `x ∼_K y` iff `x ∈ y⋆K`, so the block
//! of `x` is `x⋆K`. Every block is labelled by its least member.
//!
//! For lazy hypergroups every operation runs on a window ([`Scope::Window`]).
//! Products that leave the window are counted, never guessed.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{HgError, Result};
use crate::hypercore::{FiniteHypergroup, Hypergroup, Scope};
use crate::unionfind::DisjointSets;

/// Default element budget for closures of lazy hypergroups.
pub const DEFAULT_BUDGET: usize = 1_000_000;

type Predicate<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum Members<E> {
    /// An explicit, exact member set.
    Set(BTreeSet<E>),
    /// Members of size at most `bound`; membership beyond the bound is unknown.
    Window { set: BTreeSet<E>, bound: usize },
    /// An exact membership predicate, used for infinite subhypergroups.
    Predicate(Predicate<E>),
}

/// A subset of a hypergroup that contains the unit and is closed under
/// products and inversion. Constructors that take raw data do not check
/// closure; use [`check_subhypergroup`] or [`subhypergroup`].
#[derive(Clone)]
pub struct Subhypergroup<E> {
    members: Members<E>,
}

impl<E: fmt::Debug> fmt::Debug for Subhypergroup<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.members {
            Members::Set(s) => f.debug_tuple("Subhypergroup").field(s).finish(),
            Members::Window { set, bound } => f
                .debug_struct("Subhypergroup")
                .field("window", bound)
                .field("members", set)
                .finish(),
            Members::Predicate(_) => f.write_str("Subhypergroup(<predicate>)"),
        }
    }
}

impl<E: Clone + Ord> Subhypergroup<E> {
    pub fn from_set(set: BTreeSet<E>) -> Self {
        Subhypergroup {
            members: Members::Set(set),
        }
    }

    pub fn windowed(set: BTreeSet<E>, bound: usize) -> Self {
        Subhypergroup {
            members: Members::Window { set, bound },
        }
    }

    pub fn from_predicate(f: impl Fn(&E) -> bool + Send + Sync + 'static) -> Self {
        Subhypergroup {
            members: Members::Predicate(Arc::new(f)),
        }
    }

    pub fn members(&self) -> &Members<E> {
        &self.members
    }

    /// The explicit member set, when there is one.
    pub fn member_set(&self) -> Option<&BTreeSet<E>> {
        match &self.members {
            Members::Set(s) | Members::Window { set: s, .. } => Some(s),
            Members::Predicate(_) => None,
        }
    }

    /// Three-valued membership: `None` when `x` lies beyond a window.
    pub fn membership<H: Hypergroup<Elem = E>>(&self, h: &H, x: &E) -> Option<bool> {
        match &self.members {
            Members::Set(s) => Some(s.contains(x)),
            Members::Window { set, bound } => (h.size(x) <= *bound).then(|| set.contains(x)),
            Members::Predicate(f) => Some(f(x)),
        }
    }

    /// Members among `elems`, keeping their order.
    pub fn members_in<H: Hypergroup<Elem = E>>(&self, h: &H, elems: &[E]) -> Vec<E> {
        elems
            .iter()
            .filter(|x| self.membership(h, x) == Some(true))
            .cloned()
            .collect()
    }

    /// Member-set intersection; always a subhypergroup when both inputs are.
    pub fn intersection(&self, other: &Self) -> Self
    where
        E: Send + Sync + 'static,
    {
        match (&self.members, &other.members) {
            (Members::Set(a), Members::Set(b)) => Self::from_set(a.intersection(b).cloned().collect()),
            _ => {
                let (a, b) = (self.clone(), other.clone());
                Self::from_predicate(move |x| a.predicate_hint(x) && b.predicate_hint(x))
            }
        }
    }

    fn predicate_hint(&self, x: &E) -> bool {
        match &self.members {
            Members::Set(s) | Members::Window { set: s, .. } => s.contains(x),
            Members::Predicate(f) => f(x),
        }
    }
}

/// Checks the subhypergroup axioms of `k` on the elements covered by `scope`.
pub fn check_subhypergroup<H>(h: &H, k: &Subhypergroup<H::Elem>, scope: Scope) -> Result<()>
where
    H: Hypergroup,
{
    let elems = h.scope_elements(scope)?;
    let unit = h.unit();
    let bad = |why: String| Err(HgError::NotSubhypergroup(why));
    if k.membership(h, &unit) != Some(true) {
        return bad("missing the unit".into());
    }
    let inside = k.members_in(h, &elems);
    for x in &inside {
        if k.membership(h, &h.inverse_of(x)) == Some(false) {
            return bad(format!("not closed under inverse at {}", h.format_element(x)));
        }
        for y in &inside {
            for z in h.product(x, y) {
                if k.membership(h, &z) == Some(false) {
                    return bad(format!(
                        "{} is in {}⋆{}",
                        h.format_element(&z),
                        h.format_element(x),
                        h.format_element(y)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// A verified finite-set subhypergroup.
pub fn subhypergroup<H>(h: &H, members: impl IntoIterator<Item = H::Elem>) -> Result<Subhypergroup<H::Elem>>
where
    H: Hypergroup,
{
    let set: BTreeSet<H::Elem> = members.into_iter().collect();
    for x in &set {
        h.check_member(x)?;
    }
    let k = Subhypergroup::from_set(set);
    let set = k.member_set().expect("set-backed");
    let unit = h.unit();
    if !set.contains(&unit) {
        return Err(HgError::NotSubhypergroup("missing the unit".into()));
    }
    for x in set {
        if !set.contains(&h.inverse_of(x)) {
            return Err(HgError::NotSubhypergroup(format!(
                "not closed under inverse at {}",
                h.format_element(x)
            )));
        }
        for y in set {
            if let Some(z) = h.product(x, y).into_iter().find(|z| !set.contains(z)) {
                return Err(HgError::NotSubhypergroup(format!(
                    "{} is in {}⋆{}",
                    h.format_element(&z),
                    h.format_element(x),
                    h.format_element(y)
                )));
            }
        }
    }
    Ok(k)
}

/// Closure of `seed` under unit, inverses and products, restricted to
/// elements accepted by `keep`. Returns the closure and the number of
/// product members that were rejected by `keep`.
pub(crate) fn close_within<H, F>(
    h: &H,
    seed: impl IntoIterator<Item = H::Elem>,
    keep: F,
    budget: usize,
) -> Result<(BTreeSet<H::Elem>, usize)>
where
    H: Hypergroup,
    F: Fn(&H::Elem) -> bool,
{
    let mut set = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut escaped = 0;
    let push = |x: H::Elem, set: &mut BTreeSet<H::Elem>, queue: &mut VecDeque<H::Elem>| -> Result<()> {
        if set.insert(x.clone()) {
            if set.len() > budget {
                return Err(HgError::BudgetExceeded { budget });
            }
            queue.push_back(x);
        }
        Ok(())
    };
    push(h.unit(), &mut set, &mut queue)?;
    for x in seed {
        h.check_member(&x)?;
        let xi = h.inverse_of(&x);
        push(x, &mut set, &mut queue)?;
        if keep(&xi) {
            push(xi, &mut set, &mut queue)?;
        } else {
            escaped += 1;
        }
    }
    while let Some(x) = queue.pop_front() {
        let current: Vec<H::Elem> = set.iter().cloned().collect();
        let mut fresh = Vec::new();
        for y in &current {
            for z in h.product(&x, y).into_iter().chain(h.product(y, &x)) {
                if set.contains(&z) {
                    continue;
                }
                if keep(&z) {
                    fresh.push(z);
                } else {
                    escaped += 1;
                }
            }
        }
        let xi = h.inverse_of(&x);
        if !set.contains(&xi) {
            if keep(&xi) {
                fresh.push(xi);
            } else {
                escaped += 1;
            }
        }
        for z in fresh {
            push(z, &mut set, &mut queue)?;
        }
    }
    Ok((set, escaped))
}

/// Smallest subhypergroup containing `seed`. Lazy hypergroups whose closure
/// is infinite stop with [`HgError::BudgetExceeded`].
pub fn generated_subhypergroup<H>(
    h: &H,
    seed: impl IntoIterator<Item = H::Elem>,
    budget: usize,
) -> Result<Subhypergroup<H::Elem>>
where
    H: Hypergroup,
{
    let (set, _) = close_within(h, seed, |_| true, budget)?;
    Ok(Subhypergroup::from_set(set))
}

/// Closure of `seed` among the elements of size at most `bound`, as a
/// windowed subhypergroup. Exact for subhypergroups whose members of size
/// at most `bound` are generated inside the window.
pub fn windowed_closure<H>(
    h: &H,
    seed: impl IntoIterator<Item = H::Elem>,
    bound: usize,
    budget: usize,
) -> Result<Subhypergroup<H::Elem>>
where
    H: Hypergroup,
{
    let (set, _) = close_within(h, seed, |x| h.size(x) <= bound, budget)?;
    Ok(Subhypergroup::windowed(set, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Double,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Double => "double",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = HgError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "double" => Ok(Side::Double),
            other => Err(HgError::schema("/side", format!("unknown side `{other}`"))),
        }
    }
}

/// Partition of (a window of) a hypergroup into cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition<E> {
    pub side: Side,
    /// Blocks sorted internally and ordered by least member.
    pub blocks: Vec<Vec<E>>,
    pub window: Option<usize>,
}

impl<E> CosetPartition<E> {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_json<H: Hypergroup<Elem = E>>(&self, h: &H) -> serde_json::Value {
        let blocks: Vec<Vec<String>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| h.format_element(x)).collect())
            .collect();
        let mut v = serde_json::json!({ "side": self.side, "blocks": blocks });
        if let Some(w) = self.window {
            v["window"] = w.into();
        }
        v
    }
}

fn partition<H>(
    h: &H,
    k: &Subhypergroup<H::Elem>,
    side: Side,
    elems: &[H::Elem],
) -> Vec<Vec<usize>>
where
    H: Hypergroup,
{
    let idx: HashMap<&H::Elem, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let kin = k.members_in(h, elems);
    let mut sets = DisjointSets::new(elems.len());
    for (i, y) in elems.iter().enumerate() {
        for kk in &kin {
            let mut touch = |zs: BTreeSet<H::Elem>| {
                for z in zs {
                    if let Some(&j) = idx.get(&z) {
                        sets.union(i, j);
                    }
                }
            };
            if matches!(side, Side::Right | Side::Double) {
                touch(h.product(y, kk));
            }
            if matches!(side, Side::Left | Side::Double) {
                touch(h.product(kk, y));
            }
        }
    }
    sets.classes()
}

/// Coset space `H/K` (right), `K\H` (left) or `K\H/K` (double).
pub fn coset_space<H>(
    h: &H,
    k: &Subhypergroup<H::Elem>,
    side: Side,
    scope: Scope,
) -> Result<CosetPartition<H::Elem>>
where
    H: Hypergroup,
{
    check_subhypergroup(h, k, scope)?;
    let elems = h.scope_elements(scope)?;
    let blocks = partition(h, k, side, &elems)
        .into_iter()
        .map(|c| c.into_iter().map(|i| elems[i].clone()).collect())
        .collect();
    Ok(CosetPartition {
        side,
        blocks,
        window: (!h.is_finite()).then(|| scope.bound()).flatten(),
    })
}

/// Double coset space with its induced hypergroup structure.
///
/// On a window the product table may be partial: pairs whose products all
/// leave the window have no entry, and `escaped` counts the product members
/// that could not be classified.
#[derive(Debug, Clone)]
pub struct QuotientHypergroup<E> {
    pub classes: Vec<Vec<E>>,
    pub products: BTreeMap<(usize, usize), BTreeSet<usize>>,
    pub inverses: Vec<Option<usize>>,
    pub escaped: usize,
    pub window: Option<usize>,
    labels: Vec<String>,
    lookup: HashMap<E, usize>,
}

impl<E: Clone + Ord + std::hash::Hash> QuotientHypergroup<E> {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn label(&self, class: usize) -> &str {
        &self.labels[class]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn class_of(&self, x: &E) -> Option<usize> {
        self.lookup.get(x).copied()
    }

    pub fn representative(&self, class: usize) -> &E {
        &self.classes[class][0]
    }

    pub fn product(&self, a: usize, b: usize) -> Option<&BTreeSet<usize>> {
        self.products.get(&(a, b))
    }

    /// True when every pair has a product entry and every inverse is known.
    pub fn is_complete(&self) -> bool {
        let n = self.len();
        self.products.len() == n * n && self.inverses.iter().all(Option::is_some)
    }

    /// True when every known class product is a single class.
    pub fn is_group(&self) -> bool {
        self.products.values().all(|p| p.len() == 1)
    }

    /// The quotient as a finite hypergroup. Fails on partial tables.
    pub fn to_finite(&self) -> Result<FiniteHypergroup> {
        if !self.is_complete() {
            return Err(HgError::NeedsWindow);
        }
        let l = |i: usize| self.labels[i].clone();
        let inverse = (0..self.len())
            .map(|i| (l(i), l(self.inverses[i].expect("complete"))))
            .collect();
        let table = self
            .products
            .iter()
            .map(|(&(a, b), zs)| ((l(a), l(b)), zs.iter().map(|&z| l(z)).collect()))
            .collect();
        FiniteHypergroup::from_parts(self.labels.clone(), &l(0), &inverse, &table, None, false)
    }
}

/// `K\H/K` with product `[x]⋆[y] = {[z] : z ∈ x⋆k⋆y, k ∈ K}`.
pub fn double_coset_hypergroup<H>(
    h: &H,
    k: &Subhypergroup<H::Elem>,
    scope: Scope,
) -> Result<QuotientHypergroup<H::Elem>>
where
    H: Hypergroup,
{
    check_subhypergroup(h, k, scope)?;
    let elems = h.scope_elements(scope)?;
    // The class of the unit comes first; the rest are ordered by least
    // member.
    let unit = h.unit();
    let mut classes: Vec<Vec<H::Elem>> = partition(h, k, Side::Double, &elems)
        .into_iter()
        .map(|c| c.into_iter().map(|i| elems[i].clone()).collect())
        .collect();
    classes.sort_by_key(|c: &Vec<H::Elem>| !c.contains(&unit));
    let lookup: HashMap<H::Elem, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, xs)| xs.iter().map(move |x| (x.clone(), c)))
        .collect();
    let labels = classes.iter().map(|c| h.format_element(&c[0])).collect();
    let kin = k.members_in(h, &elems);

    let mut products = BTreeMap::new();
    let mut escaped = 0;
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            let (x, y) = (&ca[0], &cb[0]);
            let mut out = BTreeSet::new();
            for kk in &kin {
                for u in h.product(x, kk) {
                    for z in h.product(&u, y) {
                        match lookup.get(&z) {
                            Some(&c) => {
                                out.insert(c);
                            }
                            None => escaped += 1,
                        }
                    }
                }
            }
            if !out.is_empty() {
                products.insert((a, b), out);
            }
        }
    }
    let inverses = classes
        .iter()
        .map(|c| lookup.get(&h.inverse_of(&c[0])).copied())
        .collect();
    Ok(QuotientHypergroup {
        classes,
        products,
        inverses,
        escaped,
        window: (!h.is_finite()).then(|| scope.bound()).flatten(),
        labels,
        lookup,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    pub strongly_normal: bool,
    /// An element `x` with `x⋆K⋆x̄ ⊄ K`.
    pub witness: Option<String>,
    pub window: Option<usize>,
    /// Conjugates whose membership could not be decided on the window.
    pub undecided: usize,
}

/// Checks `x⋆K⋆x̄ ⊆ K` for every `x` in scope.
pub fn strong_normality<H>(h: &H, k: &Subhypergroup<H::Elem>, scope: Scope) -> Result<NormalityReport>
where
    H: Hypergroup,
{
    let elems = h.scope_elements(scope)?;
    let kin = k.members_in(h, &elems);
    let mut undecided = 0;
    for x in &elems {
        let xi = h.inverse_of(x);
        for kk in &kin {
            for u in h.product(x, kk) {
                for z in h.product(&u, &xi) {
                    match k.membership(h, &z) {
                        Some(true) => {}
                        Some(false) => {
                            return Ok(NormalityReport {
                                strongly_normal: false,
                                witness: Some(h.format_element(x)),
                                window: scope.bound(),
                                undecided,
                            })
                        }
                        None => undecided += 1,
                    }
                }
            }
        }
    }
    Ok(NormalityReport {
        strongly_normal: true,
        witness: None,
        window: (!h.is_finite()).then(|| scope.bound()).flatten(),
        undecided,
    })
}

pub fn is_strongly_normal<H>(h: &H, k: &Subhypergroup<H::Elem>, scope: Scope) -> Result<bool>
where
    H: Hypergroup,
{
    Ok(strong_normality(h, k, scope)?.strongly_normal)
}

/// The group `H/K` for a strongly normal `K`.
pub fn quotient_group<H>(
    h: &H,
    k: &Subhypergroup<H::Elem>,
    scope: Scope,
) -> Result<QuotientHypergroup<H::Elem>>
where
    H: Hypergroup,
{
    let report = strong_normality(h, k, scope)?;
    if let Some(witness) = report.witness {
        return Err(HgError::NotStronglyNormal { witness });
    }
    let q = double_coset_hypergroup(h, k, scope)?;
    if let Some((&(a, b), _)) = q.products.iter().find(|(_, p)| p.len() != 1) {
        return Err(HgError::NotAGroup(format!("[{}]⋆[{}]", q.label(a), q.label(b))));
    }
    Ok(q)
}

/// `K` as a hypergroup in its own right, with the dimensions of `H`.
pub fn restrict(h: &FiniteHypergroup, k: &Subhypergroup<String>) -> Result<FiniteHypergroup> {
    check_subhypergroup(h, k, Scope::All)?;
    let members = k.members_in(h, h.labels());
    let inverse: BTreeMap<String, String> = members.iter().map(|x| (x.clone(), h.inverse_of(x))).collect();
    let mut table = BTreeMap::new();
    for x in &members {
        for y in &members {
            table.insert((x.clone(), y.clone()), h.product(x, y));
        }
    }
    let dims: Option<BTreeMap<String, u64>> = members
        .iter()
        .map(|x| h.dimension(x).map(|d| (x.clone(), d)))
        .collect();
    FiniteHypergroup::from_parts(members, h.unit_label(), &inverse, &table, dims.as_ref(), h.exact_dims())
}

/// Largest hypergroup for which [`all_subhypergroups`] searches subsets.
pub const SUBSET_SEARCH_LIMIT: usize = 16;

/// Every subhypergroup of a small finite hypergroup, by exhaustive search
/// over the subsets containing the unit.
pub fn all_subhypergroups(h: &FiniteHypergroup) -> Result<Vec<Subhypergroup<String>>> {
    let others: Vec<&String> = h.labels().iter().filter(|x| *x != h.unit_label()).collect();
    if others.len() >= SUBSET_SEARCH_LIMIT {
        return Err(HgError::BudgetExceeded {
            budget: 1 << SUBSET_SEARCH_LIMIT,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << others.len() {
        let set: BTreeSet<String> = std::iter::once(h.unit_label().to_string())
            .chain((0..others.len()).filter(|i| mask >> i & 1 == 1).map(|i| others[i].clone()))
            .collect();
        let k = Subhypergroup::from_set(set);
        if check_subhypergroup(h, &k, Scope::All).is_ok() {
            out.push(k);
        }
    }
    Ok(out)
}

/// `|H| = Σ d(π)²`.
pub fn hyper_order(h: &FiniteHypergroup) -> Result<u64> {
    if !h.has_dims() || !h.exact_dims() {
        return Err(HgError::MissingDims);
    }
    Ok(h
        .labels()
        .iter()
        .map(|x| h.dimension(x).expect("dims present").pow(2))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexValue {
    Finite(Ratio<u64>),
    Infinite,
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            IndexValue::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            IndexValue::Infinite => f.write_str("inf"),
        }
    }
}

impl IndexValue {
    pub fn finite(self) -> Option<Ratio<u64>> {
        match self {
            IndexValue::Finite(r) => Some(r),
            IndexValue::Infinite => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumIndex {
    pub index: IndexValue,
    /// Number of right cosets, which never exceeds the index.
    pub coset_count: usize,
}

/// `[H:K] = |H|/|K|` for finite hypergroups with exact dimensions.
pub fn quantum_index(h: &FiniteHypergroup, k: &Subhypergroup<String>) -> Result<QuantumIndex> {
    let whole = hyper_order(h)?;
    let part: u64 = k
        .members_in(h, h.labels())
        .iter()
        .map(|x| h.dimension(x).expect("dims present").pow(2))
        .sum();
    let coset_count = coset_space(h, k, Side::Right, Scope::All)?.count();
    Ok(QuantumIndex {
        index: IndexValue::Finite(Ratio::new(whole, part)),
        coset_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic_dual, s3_dual};
    use crate::hypercore::verify_axioms;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn closure_of_sign_and_standard() {
        let h = s3_dual();
        let k = generated_subhypergroup(&h, ["sgn".to_string()], DEFAULT_BUDGET).unwrap();
        assert_eq!(k.member_set(), Some(&set(&["sgn", "triv"])));
        let k = generated_subhypergroup(&h, ["std".to_string()], DEFAULT_BUDGET).unwrap();
        assert_eq!(k.member_set(), Some(&set(&["sgn", "std", "triv"])));
        let k = generated_subhypergroup(&h, [], DEFAULT_BUDGET).unwrap();
        assert_eq!(k.member_set(), Some(&set(&["triv"])));
    }

    #[test]
    fn s3_cosets_of_sign_subgroup() {
        let h = s3_dual();
        let k = subhypergroup(&h, set(&["triv", "sgn"])).unwrap();
        let p = coset_space(&h, &k, Side::Right, Scope::All).unwrap();
        assert_eq!(
            p.blocks,
            vec![vec!["sgn".to_string(), "triv".to_string()], vec!["std".to_string()]]
        );
        let q = quantum_index(&h, &k).unwrap();
        assert_eq!(q.index, IndexValue::Finite(Ratio::from_integer(3)));
        assert_eq!(q.coset_count, 2);
    }

    #[test]
    fn trivial_and_full_cosets() {
        let h = s3_dual();
        let trivial = subhypergroup(&h, set(&["triv"])).unwrap();
        assert_eq!(coset_space(&h, &trivial, Side::Right, Scope::All).unwrap().count(), 3);
        let full = subhypergroup(&h, set(&["triv", "sgn", "std"])).unwrap();
        assert_eq!(coset_space(&h, &full, Side::Left, Scope::All).unwrap().count(), 1);
        assert_eq!(
            quantum_index(&h, &full).unwrap().index,
            IndexValue::Finite(Ratio::from_integer(1))
        );
    }

    #[test]
    fn non_subhypergroup_is_rejected() {
        let h = s3_dual();
        assert!(matches!(
            subhypergroup(&h, set(&["triv", "std"])),
            Err(HgError::NotSubhypergroup(_))
        ));
        let k = Subhypergroup::from_set(set(&["triv", "std"]));
        assert!(coset_space(&h, &k, Side::Right, Scope::All).is_err());
    }

    #[test]
    fn sign_subgroup_of_s3_is_not_strongly_normal() {
        // std⋆sgn⋆std = {triv, sgn, std} leaves {triv, sgn}.
        let h = s3_dual();
        let k = subhypergroup(&h, set(&["triv", "sgn"])).unwrap();
        let report = strong_normality(&h, &k, Scope::All).unwrap();
        assert!(!report.strongly_normal);
        assert_eq!(report.witness.as_deref(), Some("std"));
        assert_eq!(
            quotient_group(&h, &k, Scope::All).unwrap_err(),
            HgError::NotStronglyNormal { witness: "std".into() }
        );
        let q = double_coset_hypergroup(&h, &k, Scope::All).unwrap();
        assert_eq!(q.labels(), &["sgn".to_string(), "std".to_string()]);
        assert_eq!(q.product(1, 1), Some(&BTreeSet::from([0, 1])));
        assert!(verify_axioms(&q.to_finite().unwrap()).passed());
    }

    #[test]
    fn z6_mod_order_three_is_z2() {
        let z6 = cyclic_dual(6);
        let k = subhypergroup(&z6, set(&["0", "2", "4"])).unwrap();
        let q = quotient_group(&z6, &k, Scope::All).unwrap().to_finite().unwrap();
        assert!(q.is_group());
        assert_eq!(q.len(), 2);
        assert_eq!(q.product(&"1".into(), &"1".into()), set(&["0"]));
    }

    #[test]
    fn trivial_subgroup_normal_only_in_groups() {
        let h = s3_dual();
        let trivial = subhypergroup(&h, set(&["triv"])).unwrap();
        assert!(!is_strongly_normal(&h, &trivial, Scope::All).unwrap());
        assert!(matches!(
            quotient_group(&h, &trivial, Scope::All),
            Err(HgError::NotStronglyNormal { .. })
        ));
        let z4 = cyclic_dual(4);
        let trivial = subhypergroup(&z4, set(&["0"])).unwrap();
        assert!(is_strongly_normal(&z4, &trivial, Scope::All).unwrap());
    }

    #[test]
    fn z4_mod_even_is_z2() {
        let z4 = cyclic_dual(4);
        let k = subhypergroup(&z4, set(&["0", "2"])).unwrap();
        let q = quotient_group(&z4, &k, Scope::All).unwrap().to_finite().unwrap();
        assert_eq!(q.labels(), &["0".to_string(), "1".to_string()]);
        assert_eq!(q.product(&"1".into(), &"1".into()), set(&["0"]));
    }

    #[test]
    fn double_cosets_by_unit_reproduce_the_table() {
        let h = s3_dual();
        let trivial = subhypergroup(&h, set(&["triv"])).unwrap();
        let q = double_coset_hypergroup(&h, &trivial, Scope::All).unwrap();
        assert_eq!(q.to_finite().unwrap(), h_without_dims(&h));
    }

    fn h_without_dims(h: &FiniteHypergroup) -> FiniteHypergroup {
        let doc = crate::hypercore::HypergroupDocument::from_hypergroup(h);
        let mut v = doc.to_value();
        v.as_object_mut().unwrap().remove("dims");
        v.as_object_mut().unwrap().remove("exact_dims");
        crate::hypercore::parse_hypergroup(&v.to_string()).unwrap()
    }

    #[test]
    fn hyper_order_values() {
        assert_eq!(hyper_order(&s3_dual()).unwrap(), 6);
        assert_eq!(hyper_order(&cyclic_dual(1)).unwrap(), 1);
        assert_eq!(hyper_order(&cyclic_dual(2)).unwrap(), 2);
        let no_dims = h_without_dims(&s3_dual());
        assert_eq!(hyper_order(&no_dims), Err(HgError::MissingDims));
    }
}

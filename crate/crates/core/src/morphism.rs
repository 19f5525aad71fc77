//! Multi-valued hypergroup morphisms and stable kernels.
//!
//! A morphism `φ: G → H` sends each element to a nonempty set with
//! `φ(e) = {e}` and `φ(x⋆y) = φ(x)⋆φ(y)`. A set `A` is φ-stable when
//! `φ⁻¹(φ(A)) = A`, and the stable kernel is the least φ-stable
//! subhypergroup. It is computed as a fixed point: close under products and
//! inverses, saturate by the equivalence `∼_φ` generated by `φ(x) ∩ φ(y) ≠ ∅`,
//! repeat.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::error::{HgError, Result};
use crate::hypercore::{FiniteHypergroup, Hypergroup, Scope};
use crate::structure::{close_within, Subhypergroup, DEFAULT_BUDGET};
use crate::unionfind::DisjointSets;

type SrcElem<M> = <<M as MultiMap>::Source as Hypergroup>::Elem;
type DstElem<M> = <<M as MultiMap>::Target as Hypergroup>::Elem;

pub trait MultiMap {
    type Source: Hypergroup;
    type Target: Hypergroup;

    fn source(&self) -> &Self::Source;
    fn target(&self) -> &Self::Target;

    /// Image of a member of the source.
    fn image(&self, x: &SrcElem<Self>) -> BTreeSet<DstElem<Self>>;

    /// Declares that every image is a singleton. Enables the fiber fast
    /// path for stable kernels.
    fn single_valued(&self) -> bool {
        false
    }

    fn apply(&self, x: &SrcElem<Self>) -> Result<BTreeSet<DstElem<Self>>> {
        self.source().check_member(x)?;
        Ok(self.image(x))
    }
}

type ImageFn<S, T> = Arc<dyn Fn(&S) -> BTreeSet<T> + Send + Sync>;

/// A morphism given by a closure.
pub struct FnMap<S: Hypergroup, T: Hypergroup> {
    source: S,
    target: T,
    f: ImageFn<S::Elem, T::Elem>,
    single: bool,
}

impl<S: Hypergroup + Clone, T: Hypergroup + Clone> Clone for FnMap<S, T> {
    fn clone(&self) -> Self {
        FnMap {
            source: self.source.clone(),
            target: self.target.clone(),
            f: Arc::clone(&self.f),
            single: self.single,
        }
    }
}

impl<S: Hypergroup + std::fmt::Debug, T: Hypergroup + std::fmt::Debug> std::fmt::Debug for FnMap<S, T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnMap")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("single_valued", &self.single)
            .finish_non_exhaustive()
    }
}

impl<S: Hypergroup, T: Hypergroup> FnMap<S, T> {
    pub fn new(
        source: S,
        target: T,
        f: impl Fn(&S::Elem) -> BTreeSet<T::Elem> + Send + Sync + 'static,
    ) -> Self {
        FnMap {
            source,
            target,
            f: Arc::new(f),
            single: false,
        }
    }

    pub fn single_valued(
        source: S,
        target: T,
        f: impl Fn(&S::Elem) -> T::Elem + Send + Sync + 'static,
    ) -> Self {
        FnMap {
            source,
            target,
            f: Arc::new(move |x| BTreeSet::from([f(x)])),
            single: true,
        }
    }
}

impl<S: Hypergroup, T: Hypergroup> MultiMap for FnMap<S, T> {
    type Source = S;
    type Target = T;

    fn source(&self) -> &S {
        &self.source
    }
    fn target(&self) -> &T {
        &self.target
    }
    fn image(&self, x: &S::Elem) -> BTreeSet<T::Elem> {
        (self.f)(x)
    }
    fn single_valued(&self) -> bool {
        self.single
    }
}

impl<M: MultiMap + ?Sized> MultiMap for &M {
    type Source = M::Source;
    type Target = M::Target;

    fn source(&self) -> &Self::Source {
        (**self).source()
    }
    fn target(&self) -> &Self::Target {
        (**self).target()
    }
    fn image(&self, x: &SrcElem<Self>) -> BTreeSet<DstElem<Self>> {
        (**self).image(x)
    }
    fn single_valued(&self) -> bool {
        (**self).single_valued()
    }
}

/// A morphism between finite hypergroups given by an explicit table.
pub type TableMap = FnMap<FiniteHypergroup, FiniteHypergroup>;

/// Builds a table morphism. The map must be total with nonempty images of
/// known labels; multiplicativity is checked separately by
/// [`verify_morphism`].
pub fn table_map(
    source: FiniteHypergroup,
    target: FiniteHypergroup,
    map: &BTreeMap<String, BTreeSet<String>>,
) -> Result<TableMap> {
    for x in source.labels() {
        let img = map
            .get(x)
            .ok_or_else(|| HgError::schema(format!("/map/{x}"), "missing image"))?;
        if img.is_empty() {
            return Err(HgError::schema(format!("/map/{x}"), "empty image"));
        }
        for y in img {
            if !target.contains(y) {
                return Err(HgError::schema(format!("/map/{x}"), format!("unknown label `{y}`")));
            }
        }
    }
    if let Some(x) = map.keys().find(|x| !source.contains(x)) {
        return Err(HgError::schema(format!("/map/{x}"), format!("unknown label `{x}`")));
    }
    let single = map.values().all(|s| s.len() == 1);
    let table = map.clone();
    let mut m = FnMap::new(source, target, move |x| table[x].clone());
    m.single = single;
    Ok(m)
}

/// Parses `{ "source": <ref>, "target": <ref>, "map": {"x": ["a"], ...} }`.
/// `resolve` turns a hypergroup reference (catalog name or inline document)
/// into a hypergroup.
pub fn parse_table_map(
    text: &str,
    resolve: impl Fn(&Value, &str) -> Result<FiniteHypergroup>,
) -> Result<TableMap> {
    let v: Value = serde_json::from_str(text).map_err(|e| HgError::schema("/", e.to_string()))?;
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| HgError::schema(format!("/{k}"), "missing field"))
    };
    let source = resolve(field("source")?, "/source")?;
    let target = resolve(field("target")?, "/target")?;
    let obj = field("map")?
        .as_object()
        .ok_or_else(|| HgError::schema("/map", "expected an object"))?;
    let mut map = BTreeMap::new();
    for (k, arr) in obj {
        let path = format!("/map/{k}");
        let arr = arr
            .as_array()
            .ok_or_else(|| HgError::schema(&path, "expected an array"))?;
        let mut img = BTreeSet::new();
        for y in arr {
            img.insert(
                y.as_str()
                    .ok_or_else(|| HgError::schema(&path, "expected a string"))?
                    .to_string(),
            );
        }
        map.insert(k.clone(), img);
    }
    table_map(source, target, &map)
}

/// `φ⁻¹(A) = {x : A ∩ φ(x) ≠ ∅}` over the elements in scope.
pub fn preimage<M: MultiMap>(
    phi: &M,
    a: &BTreeSet<DstElem<M>>,
    scope: Scope,
) -> Result<BTreeSet<SrcElem<M>>> {
    Ok(phi
        .source()
        .scope_elements(scope)?
        .into_iter()
        .filter(|x| phi.image(x).iter().any(|y| a.contains(y)))
        .collect())
}

/// `φ⁻¹(φ(A)) = A`, tested on the elements in scope.
pub fn is_stable<M: MultiMap>(phi: &M, a: &BTreeSet<SrcElem<M>>, scope: Scope) -> Result<bool> {
    for x in a {
        phi.source().check_member(x)?;
    }
    let elems = phi.source().scope_elements(scope)?;
    let a_in: BTreeSet<SrcElem<M>> = elems.iter().filter(|x| a.contains(x)).cloned().collect();
    let img: BTreeSet<DstElem<M>> = a_in.iter().flat_map(|x| phi.image(x)).collect();
    Ok(preimage(phi, &img, scope)? == a_in)
}

/// Classes of `∼_φ` among `elems`: the equivalence generated by
/// overlapping images.
pub fn equivalence_classes<M: MultiMap>(phi: &M, elems: &[SrcElem<M>]) -> Vec<Vec<SrcElem<M>>> {
    let mut sets = DisjointSets::new(elems.len());
    let mut owner: HashMap<DstElem<M>, usize> = HashMap::new();
    for (i, x) in elems.iter().enumerate() {
        for y in phi.image(x) {
            match owner.get(&y) {
                Some(&j) => {
                    sets.union(i, j);
                }
                None => {
                    owner.insert(y, i);
                }
            }
        }
    }
    sets.classes()
        .into_iter()
        .map(|c| c.into_iter().map(|i| elems[i].clone()).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMethod {
    /// Alternating closure and `∼_φ` saturation.
    FixedPoint,
    /// `{x : φ(x) = {e}}` for single-valued morphisms.
    Fiber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum KernelStep {
    Closure { size: usize },
    Saturation { size: usize },
}

#[derive(Debug, Clone)]
pub struct StableKernel<E> {
    pub kernel: Subhypergroup<E>,
    pub method: KernelMethod,
    /// Sizes after each closure and saturation round.
    pub trace: Vec<KernelStep>,
    pub window: Option<usize>,
    /// Products that left the window during closure.
    pub escaped: usize,
}

/// The minimum φ-stable subhypergroup.
///
/// Finite sources use the fixed-point iteration. Lazy sources with a
/// single-valued morphism use the exact fiber `φ⁻¹(e)`; other lazy sources
/// run the fixed point on the window in `scope`.
pub fn stable_kernel<M>(phi: &M, scope: Scope) -> Result<StableKernel<SrcElem<M>>>
where
    M: MultiMap + Clone + Send + Sync + 'static,
{
    let src = phi.source();
    if !src.is_finite() && phi.single_valued() {
        let unit = phi.target().unit();
        let f = phi.clone();
        return Ok(StableKernel {
            kernel: Subhypergroup::from_predicate(move |x| {
                let img = f.image(x);
                img.len() == 1 && img.contains(&unit)
            }),
            method: KernelMethod::Fiber,
            trace: Vec::new(),
            window: None,
            escaped: 0,
        });
    }
    stable_kernel_fixed_point(phi, scope)
}

/// The fixed-point iteration, regardless of the fast path.
pub fn stable_kernel_fixed_point<M: MultiMap>(
    phi: &M,
    scope: Scope,
) -> Result<StableKernel<SrcElem<M>>> {
    let src = phi.source();
    let elems = src.scope_elements(scope)?;
    let domain: BTreeSet<SrcElem<M>> = elems.iter().cloned().collect();
    let classes = equivalence_classes(phi, &elems);
    let class_of: HashMap<&SrcElem<M>, usize> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, xs)| xs.iter().map(move |x| (x, c)))
        .collect();

    let mut trace = Vec::new();
    let mut escaped = 0;
    let mut current: BTreeSet<SrcElem<M>> = BTreeSet::new();
    loop {
        let (closed, esc) = close_within(src, current.iter().cloned(), |x| domain.contains(x), DEFAULT_BUDGET)?;
        escaped += esc;
        trace.push(KernelStep::Closure { size: closed.len() });
        let touched: BTreeSet<usize> = closed.iter().map(|x| class_of[x]).collect();
        let saturated: BTreeSet<SrcElem<M>> = touched
            .into_iter()
            .flat_map(|c| classes[c].iter().cloned())
            .collect();
        trace.push(KernelStep::Saturation {
            size: saturated.len(),
        });
        if saturated == closed {
            current = saturated;
            break;
        }
        current = saturated;
    }
    let window = (!src.is_finite()).then(|| scope.bound()).flatten();
    let kernel = match window {
        Some(b) => Subhypergroup::windowed(current, b),
        None => Subhypergroup::from_set(current),
    };
    Ok(StableKernel {
        kernel,
        method: KernelMethod::FixedPoint,
        trace,
        window,
        escaped,
    })
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MorphismReport {
    pub unit_preserved: bool,
    pub empty_images: Vec<String>,
    /// Pairs `(x, y)` with `φ(x⋆y) ≠ φ(x)⋆φ(y)`.
    pub non_multiplicative: Vec<(String, String)>,
    pub pairs_checked: usize,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.unit_preserved && self.empty_images.is_empty() && self.non_multiplicative.is_empty()
    }
}

/// Checks `φ(e) = {e}`, nonempty images and multiplicativity on all pairs
/// in scope.
pub fn verify_morphism<M: MultiMap>(phi: &M, scope: Scope) -> Result<MorphismReport> {
    let (src, dst) = (phi.source(), phi.target());
    let elems = src.scope_elements(scope)?;
    let images: HashMap<&SrcElem<M>, BTreeSet<DstElem<M>>> =
        elems.iter().map(|x| (x, phi.image(x))).collect();
    let mut report = MorphismReport {
        unit_preserved: phi.image(&src.unit()) == BTreeSet::from([dst.unit()]),
        ..Default::default()
    };
    for x in &elems {
        if images[x].is_empty() {
            report.empty_images.push(src.format_element(x));
        }
    }
    for x in &elems {
        for y in &elems {
            let lhs: BTreeSet<DstElem<M>> = src
                .product(x, y)
                .iter()
                .flat_map(|z| images.get(z).cloned().unwrap_or_else(|| phi.image(z)))
                .collect();
            let rhs = dst.set_product(&images[x], &images[y]);
            if lhs != rhs {
                report
                    .non_multiplicative
                    .push((src.format_element(x), src.format_element(y)));
            }
            report.pairs_checked += 1;
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedMapReport {
    /// Number of classes in `G/N`.
    pub source_classes: usize,
    /// Number of classes in `φ(G)/φ(N)`.
    pub target_classes: usize,
    pub single_valued: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl InducedMapReport {
    pub fn is_bijection(&self) -> bool {
        self.single_valued && self.injective && self.surjective
    }
}

/// For a finite source and a strongly normal subhypergroup `N`, builds
/// `G/N`, `φ(G)/φ(N)` and the class map `[g] ↦ {[h] : h ∈ φ(g)}`.
pub fn induced_quotient_map<M: MultiMap>(
    phi: &M,
    n: &Subhypergroup<SrcElem<M>>,
) -> Result<InducedMapReport> {
    let (src, dst) = (phi.source(), phi.target());
    let elems = src.scope_elements(Scope::All)?;
    let n_members: Vec<SrcElem<M>> = n.members_in(src, &elems);

    let g_classes = crate::structure::coset_space(src, n, crate::structure::Side::Right, Scope::All)?;
    let image: BTreeSet<DstElem<M>> = elems.iter().flat_map(|x| phi.image(x)).collect();
    let image_n: BTreeSet<DstElem<M>> = n_members.iter().flat_map(|x| phi.image(x)).collect();

    let image_vec: Vec<DstElem<M>> = image.iter().cloned().collect();
    let idx: HashMap<&DstElem<M>, usize> = image_vec.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut sets = DisjointSets::new(image_vec.len());
    for (i, y) in image_vec.iter().enumerate() {
        for k in &image_n {
            for z in dst.product(y, k) {
                if let Some(&j) = idx.get(&z) {
                    sets.union(i, j);
                }
            }
        }
    }
    let mut target_class = vec![0; image_vec.len()];
    let t_classes = sets.classes();
    for (c, members) in t_classes.iter().enumerate() {
        for &i in members {
            target_class[i] = c;
        }
    }

    let mut single_valued = true;
    let mut assigned: Vec<Option<usize>> = Vec::new();
    for block in &g_classes.blocks {
        let hit: BTreeSet<usize> = block
            .iter()
            .flat_map(|g| phi.image(g))
            .map(|h| target_class[idx[&h]])
            .collect();
        single_valued &= hit.len() == 1;
        assigned.push(hit.into_iter().next());
    }
    let distinct: BTreeSet<usize> = assigned.iter().flatten().copied().collect();
    Ok(InducedMapReport {
        source_classes: g_classes.count(),
        target_classes: t_classes.len(),
        single_valued,
        injective: single_valued && distinct.len() == assigned.len(),
        surjective: distinct.len() == t_classes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::cyclic_dual;
    use crate::structure::{subhypergroup, Members};

    fn mod2() -> TableMap {
        let z4 = cyclic_dual(4);
        let z2 = cyclic_dual(2);
        FnMap::single_valued(z4, z2, |x: &String| (x.parse::<u32>().unwrap() % 2).to_string())
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn preimage_of_zero_is_the_kernel() {
        let phi = mod2();
        assert_eq!(preimage(&phi, &set(&["0"]), Scope::All).unwrap(), set(&["0", "2"]));
        assert_eq!(
            preimage(&phi, &set(&["0", "1"]), Scope::All).unwrap(),
            set(&["0", "1", "2", "3"])
        );
    }

    #[test]
    fn stability_of_saturated_sets() {
        let phi = mod2();
        assert!(is_stable(&phi, &set(&["0", "2"]), Scope::All).unwrap());
        assert!(!is_stable(&phi, &set(&["0"]), Scope::All).unwrap());
        assert!(is_stable(&phi, &set(&["0", "1", "2", "3"]), Scope::All).unwrap());
    }

    #[test]
    fn stable_kernel_is_the_usual_kernel() {
        let phi = mod2();
        let k = stable_kernel(&phi, Scope::All).unwrap();
        assert_eq!(k.kernel.member_set(), Some(&set(&["0", "2"])));
        assert_eq!(k.method, KernelMethod::FixedPoint);
        assert!(matches!(k.trace.last(), Some(KernelStep::Saturation { size: 2 })));
    }

    #[test]
    fn injective_map_has_trivial_kernel() {
        let z4 = cyclic_dual(4);
        let id = FnMap::single_valued(z4.clone(), z4, |x: &String| x.clone());
        let k = stable_kernel(&id, Scope::All).unwrap();
        assert_eq!(k.kernel.member_set(), Some(&set(&["0"])));
    }

    #[test]
    fn fibers_are_the_equivalence_classes_of_group_maps() {
        let phi = mod2();
        let elems = cyclic_dual(4).labels().to_vec();
        let classes = equivalence_classes(&phi, &elems);
        assert_eq!(
            classes,
            vec![vec!["0".to_string(), "2".to_string()], vec!["1".to_string(), "3".to_string()]]
        );
    }

    #[test]
    fn induced_map_on_quotients_is_a_bijection() {
        let phi = mod2();
        let n = stable_kernel(&phi, Scope::All).unwrap().kernel;
        let report = induced_quotient_map(&phi, &n).unwrap();
        assert!(report.is_bijection(), "{report:?}");
        assert_eq!(report.source_classes, 2);
    }

    #[test]
    fn table_map_rejects_partial_maps() {
        let map = BTreeMap::from([("0".to_string(), set(&["0"]))]);
        let err = table_map(cyclic_dual(2), cyclic_dual(2), &map).unwrap_err();
        assert_eq!(err, HgError::schema("/map/1", "missing image"));
    }

    #[test]
    fn multiplicativity_check_flags_a_bad_map() {
        let z4 = cyclic_dual(4);
        let bad = FnMap::single_valued(z4.clone(), z4, |x: &String| {
            if x == "1" { "2".to_string() } else { x.clone() }
        });
        let report = verify_morphism(&bad, Scope::All).unwrap();
        assert!(!report.passed());
        assert!(verify_morphism(&mod2(), Scope::All).unwrap().passed());
        let k = subhypergroup(&cyclic_dual(4), set(&["0", "2"])).unwrap();
        assert!(matches!(k.members(), Members::Set(_)));
    }
}

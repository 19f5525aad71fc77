//! Free products of hypergroups and of morphisms.
//!
//! Elements are alternating words `h₁h₂⋯hₙ` with each `hᵢ` a non-unit
//! element of factor `ι(hᵢ)` and `ι(hᵢ) ≠ ι(hᵢ₊₁)`. The product is the
//! right-boundary recursion:
//!
//! * different boundary factors: concatenate;
//! * same factor, `h₁' ≠ h̄ₙ`: splice every `h ∈ hₙ⋆h₁'` in place of the pair;
//! * `h₁' = h̄ₙ`: splice every `h ∈ (hₙ⋆h̄ₙ)∖{e}`, and add the product of the
//!   two shortened words.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{HgError, Result};
use crate::hypercore::{Hypergroup, Scope};
use crate::morphism::{stable_kernel, MultiMap, StableKernel};
use crate::structure::{
    close_within, quotient_group, strong_normality, NormalityReport, QuotientHypergroup,
    Subhypergroup, DEFAULT_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter<E> {
    pub factor: usize,
    pub elem: E,
}

/// An alternating word; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<E> {
    letters: Vec<Letter<E>>,
}

impl<E> Word<E> {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word without checking alternation.
    pub fn from_letters(letters: Vec<Letter<E>>) -> Self {
        Word { letters }
    }

    pub fn letter(factor: usize, elem: E) -> Self {
        Word {
            letters: vec![Letter { factor, elem }],
        }
    }

    pub fn letters(&self) -> &[Letter<E>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl<E> FromIterator<(usize, E)> for Word<E> {
    fn from_iter<I: IntoIterator<Item = (usize, E)>>(iter: I) -> Self {
        Word {
            letters: iter
                .into_iter()
                .map(|(factor, elem)| Letter { factor, elem })
                .collect(),
        }
    }
}

/// The free product of a nonempty list of hypergroups.
#[derive(Debug, Clone)]
pub struct FreeProduct<H> {
    factors: Vec<H>,
}

impl<H: Hypergroup> FreeProduct<H> {
    pub fn new(factors: Vec<H>) -> Result<Self> {
        if factors.is_empty() {
            return Err(HgError::EmptyFactorList);
        }
        Ok(FreeProduct { factors })
    }

    pub fn factors(&self) -> &[H] {
        &self.factors
    }

    /// The canonical embedding `i_λ`.
    pub fn embed(&self, factor: usize, x: &H::Elem) -> Word<H::Elem> {
        if *x == self.factors[factor].unit() {
            Word::empty()
        } else {
            Word::letter(factor, x.clone())
        }
    }

    /// Checks factor indices, membership, non-unit letters and alternation.
    pub fn validate(&self, w: &Word<H::Elem>) -> Result<()> {
        let mut prev = None;
        for l in &w.letters {
            let f = self.factors.get(l.factor).ok_or(HgError::FactorMismatch {
                index: l.factor,
                factors: self.factors.len(),
            })?;
            f.check_member(&l.elem)?;
            if l.elem == f.unit() {
                return Err(HgError::UnknownElement(format!("unit letter in {w:?}")));
            }
            if prev == Some(l.factor) {
                return Err(HgError::UnknownElement(format!("non-alternating word {w:?}")));
            }
            prev = Some(l.factor);
        }
        Ok(())
    }

    /// `h₁⋯hₙ ↦ h̄ₙ⋯h̄₁`.
    pub fn fp_inverse(&self, w: &Word<H::Elem>) -> Word<H::Elem> {
        Word {
            letters: w
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    factor: l.factor,
                    elem: self.factors[l.factor].inverse_of(&l.elem),
                })
                .collect(),
        }
    }

    /// Checked product of two words.
    pub fn fp_multiply(&self, a: &Word<H::Elem>, b: &Word<H::Elem>) -> Result<BTreeSet<Word<H::Elem>>> {
        self.validate(a)?;
        self.validate(b)?;
        let mut out = BTreeSet::new();
        self.mul_into(&a.letters, &b.letters, &mut out)?;
        Ok(out)
    }

    fn mul_into(
        &self,
        a: &[Letter<H::Elem>],
        b: &[Letter<H::Elem>],
        out: &mut BTreeSet<Word<H::Elem>>,
    ) -> Result<()> {
        let (Some(last), Some(first)) = (a.last(), b.first()) else {
            out.insert(Word {
                letters: a.iter().chain(b).cloned().collect(),
            });
            return Ok(());
        };
        if last.factor != first.factor {
            out.insert(Word {
                letters: a.iter().chain(b).cloned().collect(),
            });
            return Ok(());
        }
        let lambda = last.factor;
        let f = &self.factors[lambda];
        let unit = f.unit();
        let (head, tail) = (&a[..a.len() - 1], &b[1..]);
        let splice = |h: H::Elem| Word {
            letters: head
                .iter()
                .cloned()
                .chain(std::iter::once(Letter { factor: lambda, elem: h }))
                .chain(tail.iter().cloned())
                .collect(),
        };
        let cancels = first.elem == f.inverse_of(&last.elem);
        for h in f.product(&last.elem, &first.elem) {
            if h == unit {
                if !cancels {
                    return Err(HgError::AxiomFailure(format!(
                        "unit in {}⋆{} although the letters are not mutually inverse",
                        f.format_element(&last.elem),
                        f.format_element(&first.elem)
                    )));
                }
                continue;
            }
            out.insert(splice(h));
        }
        if cancels {
            self.mul_into(head, tail, out)?;
        }
        Ok(())
    }

    fn enumerate(&self, bound: usize, prev: Option<usize>, prefix: &mut Vec<Letter<H::Elem>>, out: &mut Vec<Word<H::Elem>>) {
        out.push(Word {
            letters: prefix.clone(),
        });
        for (lambda, f) in self.factors.iter().enumerate() {
            if prev == Some(lambda) {
                continue;
            }
            let unit = f.unit();
            for h in f.elements_up_to(bound) {
                if h == unit {
                    continue;
                }
                let s = f.size(&h);
                if s == 0 || s > bound {
                    continue;
                }
                prefix.push(Letter { factor: lambda, elem: h });
                self.enumerate(bound - s, Some(lambda), prefix, out);
                prefix.pop();
            }
        }
    }
}

impl<H: Hypergroup> Hypergroup for FreeProduct<H> {
    type Elem = Word<H::Elem>;

    fn unit(&self) -> Self::Elem {
        Word::empty()
    }

    fn contains(&self, x: &Self::Elem) -> bool {
        self.validate(x).is_ok()
    }

    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> BTreeSet<Self::Elem> {
        let mut out = BTreeSet::new();
        self.mul_into(&x.letters, &y.letters, &mut out)
            .expect("free product factor violates the hypergroup axioms");
        out
    }

    fn inverse_of(&self, x: &Self::Elem) -> Self::Elem {
        self.fp_inverse(x)
    }

    /// Total letter size.
    fn size(&self, x: &Self::Elem) -> usize {
        x.letters
            .iter()
            .map(|l| self.factors[l.factor].size(&l.elem))
            .sum()
    }

    fn elements_up_to(&self, bound: usize) -> Vec<Self::Elem> {
        let mut out = Vec::new();
        self.enumerate(bound, None, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    fn finite_elements(&self) -> Option<Vec<Self::Elem>> {
        // A single finite factor is the only finite free product.
        match self.factors.as_slice() {
            [only] => only
                .finite_elements()
                .map(|xs| xs.iter().map(|x| self.embed(0, x)).collect::<BTreeSet<_>>().into_iter().collect()),
            _ => None,
        }
    }

    fn dimension(&self, x: &Self::Elem) -> Option<u64> {
        x.letters
            .iter()
            .map(|l| self.factors[l.factor].dimension(&l.elem))
            .product()
    }

    fn parse_element(&self, s: &str) -> Result<Self::Elem> {
        let v: Vec<(String, String)> = serde_json::from_str(s)
            .map_err(|e| HgError::schema("/word", format!("expected [[factor, label], ...]: {e}")))?;
        let mut letters = Vec::new();
        for (i, (f, label)) in v.into_iter().enumerate() {
            let factor: usize = f
                .parse()
                .map_err(|_| HgError::schema(format!("/word/{i}/0"), "factor must be an index"))?;
            let h = self.factors.get(factor).ok_or(HgError::FactorMismatch {
                index: factor,
                factors: self.factors.len(),
            })?;
            letters.push(Letter {
                factor,
                elem: h.parse_element(&label)?,
            });
        }
        let w = Word { letters };
        self.validate(&w)?;
        Ok(w)
    }

    fn format_element(&self, x: &Self::Elem) -> String {
        let parts: Vec<[String; 2]> = x
            .letters
            .iter()
            .map(|l| [l.factor.to_string(), self.factors[l.factor].format_element(&l.elem)])
            .collect();
        serde_json::to_string(&parts).expect("serializable")
    }
}

/// Free product of hypergroups.
pub fn free_product<H: Hypergroup>(factors: Vec<H>) -> Result<FreeProduct<H>> {
    FreeProduct::new(factors)
}

/// Letterwise free product of morphisms `∗φ_λ: ∗G_λ → ∗H_λ`.
///
/// A word maps to the set product of its letter images in the target free
/// product; letters sent to the unit drop out.
pub struct FreeProductMap<M: MultiMap> {
    maps: Vec<M>,
    source: FreeProduct<M::Source>,
    target: FreeProduct<M::Target>,
}

impl<M> Clone for FreeProductMap<M>
where
    M: MultiMap + Clone,
    M::Source: Clone,
    M::Target: Clone,
{
    fn clone(&self) -> Self {
        FreeProductMap {
            maps: self.maps.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }
}

impl<M: MultiMap> fmt::Debug for FreeProductMap<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeProductMap({} factors)", self.maps.len())
    }
}

impl<M> FreeProductMap<M>
where
    M: MultiMap,
    M::Source: Clone,
    M::Target: Clone,
{
    pub fn new(maps: Vec<M>) -> Result<Self> {
        let source = FreeProduct::new(maps.iter().map(|m| m.source().clone()).collect())?;
        let target = FreeProduct::new(maps.iter().map(|m| m.target().clone()).collect())?;
        Ok(FreeProductMap { maps, source, target })
    }

    pub fn maps(&self) -> &[M] {
        &self.maps
    }
}

impl<M: MultiMap> MultiMap for FreeProductMap<M> {
    type Source = FreeProduct<M::Source>;
    type Target = FreeProduct<M::Target>;

    fn source(&self) -> &Self::Source {
        &self.source
    }

    fn target(&self) -> &Self::Target {
        &self.target
    }

    fn image(
        &self,
        w: &Word<<M::Source as Hypergroup>::Elem>,
    ) -> BTreeSet<Word<<M::Target as Hypergroup>::Elem>> {
        let mut acc = BTreeSet::from([Word::empty()]);
        for l in w.letters() {
            let m = &self.maps[l.factor];
            let letter_words: BTreeSet<_> = m
                .image(&l.elem)
                .iter()
                .map(|y| self.target.embed(l.factor, y))
                .collect();
            acc = self.target.set_product(&acc, &letter_words);
        }
        acc
    }

    fn single_valued(&self) -> bool {
        self.maps.iter().all(MultiMap::single_valued)
    }
}

pub fn free_product_morphism<M>(maps: Vec<M>) -> Result<FreeProductMap<M>>
where
    M: MultiMap,
    M::Source: Clone,
    M::Target: Clone,
{
    FreeProductMap::new(maps)
}

#[derive(Debug, Clone, Serialize)]
pub struct StableKernelTheoremReport {
    pub window: usize,
    pub words_in_window: usize,
    /// Per factor: is `stker φ_λ` strongly normal on the factor window.
    pub factor_kernels_strongly_normal: Vec<bool>,
    /// Size of the candidate kernel built from conjugates and products of
    /// factor kernels, restricted to the window.
    pub candidate_size: usize,
    /// The candidate agrees with the stable kernel of `∗φ_λ` on the window.
    pub candidate_is_stable_kernel: bool,
    pub normality: NormalityReport,
    pub stable: bool,
    /// The class map to `∗(G_λ/stker φ_λ)` is constant on cosets.
    pub quotient_well_defined: bool,
    /// Words with equal images lie in the same coset.
    pub quotient_injective: bool,
    /// Every quotient word of size at most the window is hit.
    pub quotient_surjective: bool,
    /// Products map to products.
    pub quotient_multiplicative: bool,
    /// Coset comparisons beyond the window that could not be decided.
    pub undecided: usize,
}

impl StableKernelTheoremReport {
    pub fn passed(&self) -> bool {
        self.factor_kernels_strongly_normal.iter().all(|&b| b)
            && self.candidate_is_stable_kernel
            && self.normality.strongly_normal
            && self.stable
            && self.quotient_well_defined
            && self.quotient_injective
            && self.quotient_surjective
            && self.quotient_multiplicative
    }
}

type SrcElem<M> = <<M as MultiMap>::Source as Hypergroup>::Elem;

/// Window check that the stable kernel `N` of `∗φ_λ` is built from the
/// factor kernels, is strongly normal and φ-stable, and that
/// `(∗G_λ)/N ≅ ∗(G_λ/stker φ_λ)`.
pub fn verify_stable_kernel_theorem<M>(maps: Vec<M>, window: usize) -> Result<StableKernelTheoremReport>
where
    M: MultiMap + Clone + Send + Sync + 'static,
    M::Source: Clone + Send + Sync + 'static,
    M::Target: Clone + Send + Sync + 'static,
{
    let scope = Scope::Window(window);
    let mut factor_kernels: Vec<StableKernel<SrcElem<M>>> = Vec::new();
    let mut factor_normal = Vec::new();
    let mut quotients: Vec<QuotientHypergroup<SrcElem<M>>> = Vec::new();
    for m in &maps {
        let k = stable_kernel(m, scope)?;
        let normal = strong_normality(m.source(), &k.kernel, scope)?.strongly_normal;
        factor_normal.push(normal);
        if !normal {
            return Err(HgError::NotStronglyNormal {
                witness: "a factor stable kernel".into(),
            });
        }
        quotients.push(quotient_group(m.source(), &k.kernel, scope)?);
        factor_kernels.push(k);
    }
    let quotient_factors = quotients
        .iter()
        .map(QuotientHypergroup::to_finite)
        .collect::<Result<Vec<_>>>()?;
    let qprod = FreeProduct::new(quotient_factors)?;

    let phi = FreeProductMap::new(maps)?;
    let g = phi.source();
    let elems = g.elements_up_to(window);
    let in_window: BTreeSet<&Word<SrcElem<M>>> = elems.iter().collect();

    // Candidate kernel: factor kernels, their admissible conjugates, and
    // products of those, all within the window.
    let class_of = |lambda: usize, h: &SrcElem<M>| quotients[lambda].class_of(h);
    let letters: Vec<Word<SrcElem<M>>> = elems.iter().filter(|w| w.len() == 1).cloned().collect();
    let mut conj: BTreeSet<Word<SrcElem<M>>> = BTreeSet::from([Word::empty()]);
    for (lambda, k) in factor_kernels.iter().enumerate() {
        let f = &g.factors()[lambda];
        for h in k.kernel.members_in(f, &f.elements_up_to(window)) {
            conj.insert(g.embed(lambda, &h));
        }
    }
    let mut frontier: Vec<Word<SrcElem<M>>> = conj.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for x in &letters {
            let lx = &x.letters()[0];
            for y in &letters {
                let ly = &y.letters()[0];
                if ly.factor != lx.factor {
                    continue;
                }
                let f = &g.factors()[lx.factor];
                if class_of(lx.factor, &lx.elem) != class_of(lx.factor, &f.inverse_of(&ly.elem)) {
                    continue;
                }
                for u in g.product(x, &c) {
                    for z in g.product(&u, y) {
                        if in_window.contains(&z) && conj.insert(z.clone()) {
                            frontier.push(z);
                        }
                    }
                }
            }
        }
    }
    let (candidate, _) = close_within(g, conj, |w| in_window.contains(w), DEFAULT_BUDGET)?;

    let kernel = stable_kernel(&phi, scope)?;
    let kernel_in_window: BTreeSet<Word<SrcElem<M>>> = kernel.kernel.members_in(g, &elems).into_iter().collect();
    let candidate_is_stable_kernel = kernel_in_window == candidate;

    let n = Subhypergroup::windowed(candidate.clone(), window);
    let normality = strong_normality(g, &n, scope)?;
    let stable = crate::morphism::is_stable(&phi, &candidate, scope)?;

    // Class map ψ to the free product of the factor quotient groups.
    let psi = |w: &Word<SrcElem<M>>| -> BTreeSet<Word<String>> {
        let mut acc = BTreeSet::from([Word::empty()]);
        for l in w.letters() {
            let q = &quotients[l.factor];
            let label = q.label(q.class_of(&l.elem).expect("letter within the factor window")).to_string();
            let letter = BTreeSet::from([qprod.embed(l.factor, &label)]);
            acc = qprod.set_product(&acc, &letter);
        }
        acc
    };
    let images: Vec<BTreeSet<Word<String>>> = elems.iter().map(psi).collect();

    let n_members: Vec<&Word<SrcElem<M>>> = candidate.iter().collect();
    let mut well_defined = images.iter().all(|img| img.len() == 1);
    for (x, img) in elems.iter().zip(&images) {
        for k in &n_members {
            for z in g.product(x, k) {
                if in_window.contains(&z) {
                    well_defined &= psi(&z) == *img;
                }
            }
        }
    }

    let mut multiplicative = true;
    for (x, img) in elems.iter().zip(&images) {
        for y in &letters {
            let expected = qprod.set_product(img, &psi(y));
            for z in g.product(x, y) {
                if in_window.contains(&z) {
                    multiplicative &= psi(&z) == expected;
                }
            }
        }
    }

    let in_n = |w: &Word<SrcElem<M>>| -> Option<bool> {
        if in_window.contains(w) {
            Some(candidate.contains(w))
        } else {
            kernel.kernel.membership(g, w)
        }
    };
    let mut injective = true;
    let mut undecided = 0;
    let mut fiber_rep: HashMap<&BTreeSet<Word<String>>, &Word<SrcElem<M>>> = HashMap::new();
    for (x, img) in elems.iter().zip(&images) {
        let r = *fiber_rep.entry(img).or_insert(x);
        let diff = g.product(&g.inverse_of(r), x);
        let verdicts: Vec<Option<bool>> = diff.iter().map(|d| in_n(d)).collect();
        if verdicts.contains(&Some(true)) {
            continue;
        }
        if verdicts.contains(&None) {
            undecided += 1;
        } else {
            injective = false;
        }
    }

    let hit: BTreeSet<&Word<String>> = images.iter().flatten().collect();
    let surjective = qprod
        .elements_up_to(window)
        .iter()
        .all(|w| hit.contains(w));

    Ok(StableKernelTheoremReport {
        window,
        words_in_window: elems.len(),
        factor_kernels_strongly_normal: factor_normal,
        candidate_size: candidate.len(),
        candidate_is_stable_kernel,
        normality,
        stable,
        quotient_well_defined: well_defined,
        quotient_injective: injective,
        quotient_surjective: surjective,
        quotient_multiplicative: multiplicative,
        undecided,
    })
}

/// Groups window words by their coset label, for display.
pub fn describe_word_classes<H: Hypergroup>(
    g: &FreeProduct<H>,
    classes: &[Vec<Word<H::Elem>>],
) -> BTreeMap<String, Vec<String>> {
    classes
        .iter()
        .map(|c| {
            (
                g.format_element(&c[0]),
                c.iter().map(|w| g.format_element(w)).collect(),
            )
        })
        .collect()
}

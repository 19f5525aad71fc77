//! The hypergroup abstraction.
//!
//! A hypergroup is a set with a unit, an inversion, and a set-valued
//! associative product satisfying the adjointness law
//! `z ∈ x⋆y ⇔ y ∈ x̄⋆z ⇔ x ∈ z⋆ȳ`. Finite hypergroups are stored as
//! product tables ([`FiniteHypergroup`]); infinite ones (SU(2) fusion, word
//! hypergroups, free products) implement [`Hypergroup`] lazily and expose a
//! size measure so that finite windows of them can be enumerated.

mod finite;
mod json;
mod verify;

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{HgError, Result};

pub use finite::FiniteHypergroup;
pub use json::{parse_hypergroup, serialize_hypergroup, HypergroupDocument};
pub use verify::{verify_axioms, verify_axioms_window, AxiomReport, Violation};

/// Which part of a hypergroup an operation ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Every element. Only valid for finite hypergroups.
    All,
    /// Elements whose size measure is at most the bound. For finite
    /// hypergroups this is the whole element set.
    Window(usize),
}

impl Scope {
    pub fn bound(self) -> Option<usize> {
        match self {
            Scope::All => None,
            Scope::Window(b) => Some(b),
        }
    }
}

pub trait Hypergroup {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync;

    fn unit(&self) -> Self::Elem;

    /// Membership predicate.
    fn contains(&self, x: &Self::Elem) -> bool;

    /// Product of two members. Callers must pass members; use
    /// [`Hypergroup::multiply`] for checked access.
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> BTreeSet<Self::Elem>;

    fn inverse_of(&self, x: &Self::Elem) -> Self::Elem;

    /// Size measure used for windows: word length, highest weight, block
    /// weight. The unit has size 0.
    fn size(&self, x: &Self::Elem) -> usize;

    /// All members of size at most `bound`, sorted.
    fn elements_up_to(&self, bound: usize) -> Vec<Self::Elem>;

    /// The full element list, for finite hypergroups.
    fn finite_elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Classical dimension of an element, when known.
    fn dimension(&self, _x: &Self::Elem) -> Option<u64> {
        None
    }

    /// Whether `d(x)d(y) = Σ_{z∈x⋆y} d(z)` holds exactly (multiplicity-free
    /// fusion with exact classical dimensions).
    fn dims_exact(&self) -> bool {
        false
    }

    fn parse_element(&self, s: &str) -> Result<Self::Elem>;

    fn format_element(&self, x: &Self::Elem) -> String;

    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Result<BTreeSet<Self::Elem>> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(self.product(x, y))
    }

    fn inverse(&self, x: &Self::Elem) -> Result<Self::Elem> {
        self.check_member(x)?;
        Ok(self.inverse_of(x))
    }

    fn check_member(&self, x: &Self::Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(HgError::UnknownElement(format!("{x:?}")))
        }
    }

    /// Set-extended product `A⋆B = ∪ a⋆b`.
    fn set_product(
        &self,
        a: &BTreeSet<Self::Elem>,
        b: &BTreeSet<Self::Elem>,
    ) -> BTreeSet<Self::Elem> {
        let mut out = BTreeSet::new();
        for x in a {
            for y in b {
                out.extend(self.product(x, y));
            }
        }
        out
    }

    /// Elements covered by `scope`.
    fn scope_elements(&self, scope: Scope) -> Result<Vec<Self::Elem>> {
        if let Some(all) = self.finite_elements() {
            return Ok(all);
        }
        match scope {
            Scope::All => Err(HgError::NeedsWindow),
            Scope::Window(b) => Ok(self.elements_up_to(b)),
        }
    }

    fn is_finite(&self) -> bool {
        self.finite_elements().is_some()
    }
}

impl<H: Hypergroup + ?Sized> Hypergroup for &H {
    type Elem = H::Elem;

    fn unit(&self) -> Self::Elem {
        (**self).unit()
    }
    fn contains(&self, x: &Self::Elem) -> bool {
        (**self).contains(x)
    }
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> BTreeSet<Self::Elem> {
        (**self).product(x, y)
    }
    fn inverse_of(&self, x: &Self::Elem) -> Self::Elem {
        (**self).inverse_of(x)
    }
    fn size(&self, x: &Self::Elem) -> usize {
        (**self).size(x)
    }
    fn elements_up_to(&self, bound: usize) -> Vec<Self::Elem> {
        (**self).elements_up_to(bound)
    }
    fn finite_elements(&self) -> Option<Vec<Self::Elem>> {
        (**self).finite_elements()
    }
    fn dimension(&self, x: &Self::Elem) -> Option<u64> {
        (**self).dimension(x)
    }
    fn dims_exact(&self) -> bool {
        (**self).dims_exact()
    }
    fn parse_element(&self, s: &str) -> Result<Self::Elem> {
        (**self).parse_element(s)
    }
    fn format_element(&self, x: &Self::Elem) -> String {
        (**self).format_element(x)
    }
}

/// Formats a set of elements as space-separated labels.
pub fn format_set<H: Hypergroup>(h: &H, set: &BTreeSet<H::Elem>) -> String {
    set.iter()
        .map(|x| h.format_element(x))
        .collect::<Vec<_>>()
        .join(" ")
}

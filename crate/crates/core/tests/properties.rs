mod common;

use std::collections::BTreeSet;

use hypergroup::catalog::{
    cyclic_dual, fundamental_quotient, parse_lie_types, smith_normal_form, su2_hypergroup, uq_hypergroup,
    AbelianInvariants, LieKind,
};
use hypergroup::classify::classify_quantum_subgroups;
use hypergroup::freeprod::free_product;
use hypergroup::lowindex::{enumerate_subgroups, subgroup_contains, GroupPresentation, GroupWord};
use hypergroup::morphism::{is_stable, stable_kernel, FnMap, MultiMap};
use hypergroup::structure::{all_subhypergroups, coset_space, quantum_index, restrict, Side};
use hypergroup::{Hypergroup, Scope};
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use common::{finite_catalog, invariant_factors_by_minors, su2_fusion_by_weights};

fn inverse_set<H: Hypergroup>(h: &H, s: &BTreeSet<H::Elem>) -> BTreeSet<H::Elem> {
    s.iter().map(|x| h.inverse_of(x)).collect()
}

/// `(x⋆y)⁻¹ = y⁻¹⋆x⁻¹` for all pairs of `elems`.
fn check_inverse_anti_homomorphism<H: Hypergroup>(h: &H, elems: &[H::Elem]) {
    for x in elems {
        for y in elems {
            let lhs = inverse_set(h, &h.product(x, y));
            let rhs = h.product(&h.inverse_of(y), &h.inverse_of(x));
            assert_eq!(lhs, rhs, "{} {}", h.format_element(x), h.format_element(y));
        }
    }
}

#[test]
fn inversion_reverses_products() {
    for (_, h) in finite_catalog() {
        check_inverse_anti_homomorphism(&h, h.labels());
    }
    let su2 = su2_hypergroup();
    check_inverse_anti_homomorphism(&su2, &su2.elements_up_to(6));
    let uq = uq_hypergroup();
    check_inverse_anti_homomorphism(&uq, &uq.elements_up_to(3));
    let fp = free_product(vec![su2_hypergroup(), su2_hypergroup()]).unwrap();
    check_inverse_anti_homomorphism(&fp, &fp.elements_up_to(3));
}

#[test]
fn su2_fusion_matches_weight_decomposition() {
    let h = su2_hypergroup();
    for a in 0..=8 {
        for b in 0..=8 {
            assert_eq!(h.product(&a, &b), su2_fusion_by_weights(a, b), "{a} ⊗ {b}");
        }
    }
}

#[test]
fn right_cosets_are_symmetric_blocks() {
    for (name, h) in finite_catalog() {
        for k in all_subhypergroups(&h).unwrap() {
            let part = coset_space(&h, &k, Side::Right, Scope::All).unwrap();
            let mut seen = BTreeSet::new();
            for block in &part.blocks {
                for x in block {
                    assert!(seen.insert(x.clone()), "{name}: {x} in two blocks");
                }
            }
            assert_eq!(seen.len(), h.len());
            let members = k.member_set().unwrap();
            let in_coset = |x: &String, y: &String| {
                members.iter().any(|m| h.product(x, m).contains(y))
            };
            for x in h.labels() {
                for y in h.labels() {
                    let same_block = part.blocks.iter().any(|b| b.contains(x) && b.contains(y));
                    assert_eq!(in_coset(x, y), in_coset(y, x), "{name}: {x} {y}");
                    assert_eq!(in_coset(x, y), same_block, "{name}: {x} {y}");
                }
            }
        }
    }
}

#[test]
fn index_is_multiplicative_and_bounds_intersections() {
    for (name, h) in finite_catalog() {
        let subs = all_subhypergroups(&h).unwrap();
        for outer in &subs {
            let outer_h = restrict(&h, outer).unwrap();
            let idx = |big: &_, small: &_| quantum_index(big, small).unwrap().index.finite().unwrap();
            for inner in &subs {
                let (a, b) = (inner.member_set().unwrap(), outer.member_set().unwrap());
                if a.is_subset(b) {
                    assert_eq!(idx(&h, inner), idx(&h, outer) * idx(&outer_h, inner), "{name}");
                }
                let meet = outer.intersection(inner);
                assert!(idx(&h, &meet) <= idx(&h, outer) * idx(&h, inner), "{name}");
                assert!(idx(&outer_h, &meet) <= idx(&h, inner), "{name}");
            }
            let q = quantum_index(&h, outer).unwrap();
            assert!(num_rational::Ratio::from_integer(q.coset_count as u64) <= q.index.finite().unwrap());
        }
    }
}

#[test]
fn stable_kernel_is_the_least_stable_subhypergroup() {
    let maps = [(6, 3), (6, 2), (8, 4), (4, 2), (5, 1)];
    for (n, m) in maps {
        let phi = FnMap::single_valued(cyclic_dual(n), cyclic_dual(m), move |x: &String| {
            (x.parse::<usize>().unwrap() % m).to_string()
        });
        let k = stable_kernel(&phi, Scope::All).unwrap();
        let kernel = k.kernel.member_set().unwrap().clone();
        for sub in all_subhypergroups(phi.source()).unwrap() {
            let set = sub.member_set().unwrap();
            if is_stable(&phi, set, Scope::All).unwrap() {
                assert!(kernel.is_subset(set), "Z/{n} → Z/{m}");
            }
        }
        assert_eq!(kernel.len(), n / m);
    }
}

#[test]
fn free_product_is_associative_on_a_window() {
    let fp = free_product(vec![su2_hypergroup(), su2_hypergroup()]).unwrap();
    let elems = fp.elements_up_to(3);
    let union = |set: &BTreeSet<_>, z: &_, left: bool| -> BTreeSet<_> {
        set.iter()
            .flat_map(|w| if left { fp.product(w, z) } else { fp.product(z, w) })
            .collect()
    };
    for x in &elems {
        for y in &elems {
            let xy = fp.product(x, y);
            for z in &elems {
                let left = union(&xy, z, true);
                let right = union(&fp.product(y, z), x, false);
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn classification_is_monotone_in_the_index_bound() {
    let types = parse_lie_types("A1,A1").unwrap();
    let mut previous: Vec<_> = Vec::new();
    for n in 1..=5 {
        let c = classify_quantum_subgroups(&types, n).unwrap();
        let now: Vec<_> = c.records.iter().map(|r| r.group_subgroup.clone()).collect();
        assert_eq!(&now[..previous.len()], &previous[..], "bound {n}");
        assert!(now[previous.len()..].iter().all(|r| r.index == n));
        previous = now;
    }
}

#[test]
fn fundamental_quotients_match_minors() {
    let cases: Vec<(LieKind, usize)> = (1..=8)
        .map(|n| (LieKind::A, n))
        .chain((2..=8).map(|n| (LieKind::B, n)))
        .chain((3..=8).map(|n| (LieKind::C, n)))
        .chain((4..=8).map(|n| (LieKind::D, n)))
        .chain((6..=8).map(|n| (LieKind::E, n)))
        .chain([(LieKind::F, 4), (LieKind::G, 2)])
        .collect();
    for (kind, rank) in cases {
        let m = hypergroup::catalog::cartan_matrix(kind, rank).unwrap();
        let oracle: Vec<u64> = invariant_factors_by_minors(&m)
            .into_iter()
            .filter(|&d| d != 1)
            .map(|d| d as u64)
            .collect();
        assert_eq!(fundamental_quotient(kind, rank).unwrap().factors, oracle, "{kind}{rank}");
    }
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-12i64..=12, c), r))
}

fn group_word(rank: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0..rank, prop_oneof![Just(1i64), Just(-1i64), Just(2i64)]), 0..8)
}

fn inverse_word(w: &GroupWord) -> GroupWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_matches_minors(m in matrix()) {
        let s = smith_normal_form(&m);
        let diag: Vec<i128> = s.diagonal().iter().map(|d| d.abs().to_i128().unwrap()).collect();
        prop_assert_eq!(diag, invariant_factors_by_minors(&m));
        let inv = AbelianInvariants::cokernel(&m);
        let det_product: u64 = inv.factors.iter().product();
        if inv.free_rank == 0 && m.len() == m[0].len() {
            let d = invariant_factors_by_minors(&m).iter().product::<i128>();
            prop_assert_eq!(d as u64, det_product);
        }
    }

    #[test]
    fn stabilizers_are_subgroups(
        w1 in group_word(2),
        w2 in group_word(2),
        pick in 0usize..64,
    ) {
        let g: GroupPresentation = "Z*C3".parse().unwrap();
        let recs = enumerate_subgroups(&g, 4).unwrap();
        let r = &recs[pick % recs.len()];
        let joined: GroupWord = w1.iter().chain(&w2).copied().collect();
        if subgroup_contains(r, &w1) && subgroup_contains(r, &w2) {
            prop_assert!(subgroup_contains(r, &joined));
        }
        prop_assert_eq!(subgroup_contains(r, &w1), subgroup_contains(r, &inverse_word(&w1)));
        // Membership of a product depends only on the cosets of its factors.
        let conj: GroupWord = w1.iter().chain(&w2).chain(&inverse_word(&w1)).copied().collect();
        if subgroup_contains(r, &w2) && subgroup_contains(r, &w1) {
            prop_assert!(subgroup_contains(r, &conj));
        }
    }

    #[test]
    fn su2_products_agree_with_weights(a in 0u32..20, b in 0u32..20) {
        prop_assert_eq!(su2_hypergroup().product(&a, &b), su2_fusion_by_weights(a, b));
    }
}

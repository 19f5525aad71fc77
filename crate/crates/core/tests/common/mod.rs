//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hypergroup::catalog::{cyclic_dual, klein_dual, s3_dual};
use hypergroup::lowindex::GroupPresentation;
use hypergroup::FiniteHypergroup;

/// Every built-in finite hypergroup with a name.
pub fn finite_catalog() -> Vec<(String, FiniteHypergroup)> {
    let mut out = vec![("dual:S3".to_string(), s3_dual()), ("dual:C2xC2".to_string(), klein_dual())];
    for n in 1..=8 {
        out.push((format!("dual:C{n}"), cyclic_dual(n)));
    }
    out
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}`, where `d_k` is the gcd of all
/// `k×k` minors; zero once the minors vanish.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        divisors.push(g);
    }
    divisors
        .windows(2)
        .map(|w| if w[1] == 0 { 0 } else { w[1] / w[0] })
        .collect()
}

/// SU(2) fusion by weights: the weights of `V_a ⊗ V_b` are all sums of
/// weights of the factors; highest weights are peeled off one at a time.
pub fn su2_fusion_by_weights(a: u32, b: u32) -> BTreeSet<u32> {
    let weights = |n: u32| (0..=n).map(move |i| n as i64 - 2 * i as i64);
    let mut multiset: Vec<i64> = weights(a).flat_map(|x| weights(b).map(move |y| x + y)).collect();
    let mut out = BTreeSet::new();
    while let Some(&top) = multiset.iter().max() {
        out.insert(top as u32);
        for w in weights(top as u32) {
            let pos = multiset.iter().position(|&x| x == w).expect("weight present");
            multiset.swap_remove(pos);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Subgroups of index `n`: all assignments of permutations of `n` points
/// to the generators that satisfy the relators, kept when transitive,
/// divided by the `(n-1)!` relabellings that fix point 0.
pub fn naive_subgroup_count(g: &GroupPresentation, n: usize) -> usize {
    let perms = permutations(n);
    let power_is_identity = |p: &Vec<usize>, m: u64| {
        (0..n).all(|x| {
            let mut y = x;
            for _ in 0..m {
                y = p[y];
            }
            y == x
        })
    };
    let choices: Vec<Vec<&Vec<usize>>> = g
        .generators
        .iter()
        .map(|gen| {
            perms
                .iter()
                .filter(|p| gen.order.is_none_or(|m| power_is_identity(p, m)))
                .collect()
        })
        .collect();
    let mut pairs = Vec::new();
    for block in &g.abelian_blocks {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                pairs.push((a, b));
            }
        }
    }
    let rank = g.generators.len();
    let mut transitive = 0usize;
    let mut pick = vec![0usize; rank];
    loop {
        let act: Vec<&Vec<usize>> = (0..rank).map(|i| choices[i][pick[i]]).collect();
        let commute = pairs
            .iter()
            .all(|&(a, b)| (0..n).all(|x| act[a][act[b][x]] == act[b][act[a][x]]));
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for p in &act {
                if !seen[p[x]] {
                    seen[p[x]] = true;
                    stack.push(p[x]);
                }
            }
        }
        if commute && seen.iter().all(|&b| b) {
            transitive += 1;
        }
        let mut i = 0;
        loop {
            if i == rank {
                return transitive / (1..n).product::<usize>();
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Subgroups of index `n` in the free group of rank `r`:
/// `N_n = n·(n!)^{r-1} − Σ_{k<n} ((n−k)!)^{r-1}·N_k`.
pub fn free_group_subgroup_counts(r: u32, max: usize) -> Vec<usize> {
    let fact = |n: usize| (1..=n as i128).product::<i128>();
    let mut out: Vec<i128> = Vec::new();
    for n in 1..=max {
        let mut v = n as i128 * fact(n).pow(r - 1);
        for k in 1..n {
            v -= fact(n - k).pow(r - 1) * out[k - 1];
        }
        out.push(v);
    }
    out.into_iter().map(|v| v as usize).collect()
}

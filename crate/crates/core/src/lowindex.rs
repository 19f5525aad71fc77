//! Low-index subgroups of free products of finite abelian and free groups.
//!
//! A subgroup of index `k` is the stabilizer of point 0 in a transitive
//! action on `k` points. The search builds coset tables cell by cell: the
//! first undefined cell (point, generator, forward/backward) is filled
//! with an existing point or a fresh one, forced entries are deduced from
//! the relators, and every complete table is one subgroup. Fresh points
//! are numbered in order of first appearance, so each subgroup arises
//! from exactly one table.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{HgError, Result};

/// Hard cap on search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

const UNDEF: usize = usize::MAX;

/// Default generator names: `s, t, u, v, w, x, y, z, g8, g9, …`.
pub fn generator_name(i: usize) -> String {
    const NAMES: [&str; 8] = ["s", "t", "u", "v", "w", "x", "y", "z"];
    NAMES.get(i).map_or_else(|| format!("g{i}"), |s| s.to_string())
}

/// One free factor: a cyclic group, `ℤ`, or a finite abelian group given
/// by commuting cyclic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Cyclic(u64),
    Free,
    Abelian(Vec<u64>),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Cyclic(m) => write!(f, "C{m}"),
            Factor::Free => f.write_str("Z"),
            Factor::Abelian(ms) => {
                let parts: Vec<String> = ms.iter().map(|m| format!("C{m}")).collect();
                write!(f, "({})", parts.join("x"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    /// `Some(m)` for a relator `gᵐ`; `None` for a free generator.
    pub order: Option<u64>,
}

/// Generators with optional orders, plus blocks of mutually commuting
/// generators. No other relators are supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<Generator>,
    pub abelian_blocks: Vec<Vec<usize>>,
    name: String,
}

/// A word as `(generator, exponent)` syllables.
pub type GroupWord = Vec<(usize, i64)>;

impl GroupPresentation {
    /// The free product of the given factors.
    pub fn free_product(factors: &[Factor]) -> Result<Self> {
        let mut generators = Vec::new();
        let mut abelian_blocks = Vec::new();
        let push = |order: Option<u64>, gens: &mut Vec<Generator>| -> Result<usize> {
            if order == Some(0) {
                return Err(HgError::Presentation("cyclic order must be positive".into()));
            }
            gens.push(Generator {
                name: generator_name(gens.len()),
                order,
            });
            Ok(gens.len() - 1)
        };
        for f in factors {
            match f {
                Factor::Cyclic(m) => {
                    push(Some(*m), &mut generators)?;
                }
                Factor::Free => {
                    push(None, &mut generators)?;
                }
                Factor::Abelian(ms) => {
                    let block = ms
                        .iter()
                        .map(|&m| push(Some(m), &mut generators))
                        .collect::<Result<Vec<_>>>()?;
                    if block.len() > 1 {
                        abelian_blocks.push(block);
                    }
                }
            }
        }
        let name = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.iter().map(ToString::to_string).collect::<Vec<_>>().join("*")
        };
        Ok(GroupPresentation {
            generators,
            abelian_blocks,
            name,
        })
    }

    /// From generator names and relators of the forms `gᵐ` and
    /// `a b a^-1 b^-1`.
    pub fn from_relators(names: &[&str], relators: &[&str]) -> Result<Self> {
        let mut generators: Vec<Generator> = names
            .iter()
            .map(|n| Generator {
                name: n.to_string(),
                order: None,
            })
            .collect();
        let mut commuting: Vec<(usize, usize)> = Vec::new();
        let provisional = GroupPresentation {
            generators: generators.clone(),
            abelian_blocks: Vec::new(),
            name: String::new(),
        };
        for r in relators {
            let w = provisional.parse_word(r)?;
            match w.as_slice() {
                [(g, m)] if *m > 0 => {
                    let m = *m as u64;
                    generators[*g].order = Some(generators[*g].order.map_or(m, |o| num_integer::gcd(o, m)));
                }
                [(a, 1), (b, 1), (a2, -1), (b2, -1)] if a == a2 && b == b2 && a != b => {
                    commuting.push((*a.min(b), *a.max(b)));
                }
                _ => return Err(HgError::UnsupportedRelator(r.to_string())),
            }
        }
        // Commuting pairs must form cliques of finite-order generators.
        let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
        for &(a, b) in &commuting {
            let hit: Vec<usize> = (0..blocks.len())
                .filter(|&i| blocks[i].contains(&a) || blocks[i].contains(&b))
                .collect();
            let mut merged = BTreeSet::from([a, b]);
            for &i in hit.iter().rev() {
                merged.extend(blocks.remove(i));
            }
            blocks.push(merged);
        }
        for b in &blocks {
            let v: Vec<usize> = b.iter().copied().collect();
            for (i, &x) in v.iter().enumerate() {
                for &y in &v[i + 1..] {
                    if !commuting.contains(&(x, y)) {
                        return Err(HgError::UnsupportedRelator(format!(
                            "commutators must form complete blocks; missing [{}, {}]",
                            generators[x].name, generators[y].name
                        )));
                    }
                }
            }
        }
        let abelian_blocks: Vec<Vec<usize>> = blocks.into_iter().map(|b| b.into_iter().collect()).collect();
        let mut in_block = vec![None; generators.len()];
        for (i, b) in abelian_blocks.iter().enumerate() {
            for &g in b {
                in_block[g] = Some(i);
            }
        }
        let mut parts = Vec::new();
        let mut done = BTreeSet::new();
        for (g, gen) in generators.iter().enumerate() {
            let factor = match in_block[g] {
                Some(i) if done.insert(i) => Factor::Abelian(
                    abelian_blocks[i]
                        .iter()
                        .map(|&x| generators[x].order.unwrap_or(0))
                        .collect(),
                ),
                Some(_) => continue,
                None => gen.order.map_or(Factor::Free, Factor::Cyclic),
            };
            parts.push(factor.to_string());
        }
        Ok(GroupPresentation {
            name: if parts.is_empty() { "1".into() } else { parts.join("*") },
            generators,
            abelian_blocks,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Parses `s t^-1 u^3`, `st`, `s^2t`; `e` or the empty string is the
    /// empty word. Generator names are matched longest first.
    pub fn parse_word(&self, s: &str) -> Result<GroupWord> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "e" || s == "1" {
            return Ok(Vec::new());
        }
        let mut names: Vec<(usize, &str)> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.name.as_str()))
            .collect();
        names.sort_by_key(|(_, n)| std::cmp::Reverse(n.len()));
        let mut out = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (g, n) = names
                .iter()
                .find(|(_, n)| rest.starts_with(n))
                .ok_or_else(|| HgError::Presentation(format!("unknown generator at `{rest}`")))?;
            rest = &rest[n.len()..];
            let mut exp = 1;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r
                    .char_indices()
                    .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
                    .map_or(r.len(), |(i, _)| i);
                exp = r[..end]
                    .parse()
                    .map_err(|_| HgError::Presentation(format!("bad exponent in `{s}`")))?;
                rest = &r[end..];
            }
            out.push((*g, exp));
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        if w.is_empty() {
            return "e".into();
        }
        w.iter()
            .map(|&(g, e)| match e {
                1 => self.generators[g].name.clone(),
                _ => format!("{}^{e}", self.generators[g].name),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Words of at most `len` letters `g^{±1}`, excluding immediate
    /// cancellations `g g⁻¹` and, for involutions, `g g`.
    pub fn words_up_to(&self, len: usize) -> Vec<GroupWord> {
        let mut out = vec![Vec::new()];
        let mut layer: Vec<GroupWord> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for (g, gen) in self.generators.iter().enumerate() {
                    if gen.order == Some(1) {
                        continue;
                    }
                    let signs: &[i64] = if gen.order == Some(2) { &[1] } else { &[1, -1] };
                    for &e in signs {
                        if let Some(&(lg, le)) = w.last() {
                            if lg == g && (le == -e || gen.order == Some(2)) {
                                continue;
                            }
                        }
                        let mut v = w.clone();
                        v.push((g, e));
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in &self.abelian_blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for GroupPresentation {
    type Err = HgError;

    /// Parses free products such as `C2*C2`, `Z*Z`, `F2`, `C3*C2`,
    /// `(C2xC2)*C3`; `1` is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "1" {
            return GroupPresentation::free_product(&[]);
        }
        let cyclic = |t: &str| -> Result<u64> {
            t.strip_prefix('C')
                .and_then(|m| m.parse().ok())
                .filter(|&m| m > 0)
                .ok_or_else(|| HgError::Presentation(format!("unknown factor `{t}` in `{s}`")))
        };
        let mut factors = Vec::new();
        for part in s.split('*') {
            let inner = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')).unwrap_or(part);
            if inner == "Z" {
                factors.push(Factor::Free);
            } else if let Some(r) = inner.strip_prefix('F') {
                let r: usize = r
                    .parse()
                    .map_err(|_| HgError::Presentation(format!("unknown factor `{part}` in `{s}`")))?;
                factors.extend(std::iter::repeat_n(Factor::Free, r));
            } else if inner.contains('x') {
                factors.push(Factor::Abelian(inner.split('x').map(cyclic).collect::<Result<_>>()?));
            } else {
                factors.push(Factor::Cyclic(cyclic(inner)?));
            }
        }
        GroupPresentation::free_product(&factors)
    }
}

/// A subgroup as the stabilizer of point 0 in a transitive action.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgroupRecord {
    pub index: usize,
    /// `action[g][p]` is the image of point `p` under generator `g`
    /// (0-based).
    pub action: Vec<Vec<usize>>,
}

impl SubgroupRecord {
    /// The point reached from 0 by acting with `w` letter by letter from
    /// the left of the word.
    pub fn trace(&self, w: &GroupWord) -> usize {
        let mut p = 0;
        for &(g, e) in w {
            let perm = &self.action[g];
            if e >= 0 {
                for _ in 0..e {
                    p = perm[p];
                }
            } else {
                for _ in 0..-e {
                    p = perm.iter().position(|&x| x == p).expect("permutation");
                }
            }
        }
        p
    }

    /// Action as JSON `{ "s": [2, 1, …], … }` with 1-based images.
    pub fn action_json(&self, p: &GroupPresentation) -> Value {
        let map: serde_json::Map<String, Value> = self
            .action
            .iter()
            .enumerate()
            .map(|(g, perm)| {
                (
                    p.generators[g].name.clone(),
                    json!(perm.iter().map(|x| x + 1).collect::<Vec<_>>()),
                )
            })
            .collect();
        Value::Object(map)
    }

    pub fn to_json(&self, p: &GroupPresentation) -> Value {
        json!({ "index": self.index, "action": self.action_json(p) })
    }

    /// The same action relabelled by first appearance from `base`,
    /// scanning points in order and each generator forward then backward.
    pub fn standardized_from(&self, base: usize) -> Vec<Vec<usize>> {
        let n = self.index;
        let inverse: Vec<Vec<usize>> = self
            .action
            .iter()
            .map(|perm| {
                let mut inv = vec![0; n];
                for (p, &q) in perm.iter().enumerate() {
                    inv[q] = p;
                }
                inv
            })
            .collect();
        let mut label = vec![UNDEF; n];
        let mut order = vec![base];
        label[base] = 0;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            for g in 0..self.action.len() {
                for q in [self.action[g][p], inverse[g][p]] {
                    if label[q] == UNDEF {
                        label[q] = order.len();
                        order.push(q);
                    }
                }
            }
            i += 1;
        }
        self.action
            .iter()
            .map(|perm| {
                let mut out = vec![0; n];
                for p in 0..n {
                    out[label[p]] = label[perm[p]];
                }
                out
            })
            .collect()
    }
}

/// `w ∈ H` for the subgroup `H` of the record: `w` fixes point 0.
pub fn subgroup_contains(r: &SubgroupRecord, w: &GroupWord) -> bool {
    r.trace(w) == 0
}

#[derive(Clone)]
struct Table {
    points: usize,
    fwd: Vec<Vec<usize>>,
    bwd: Vec<Vec<usize>>,
}

impl Table {
    fn new(rank: usize, capacity: usize) -> Self {
        Table {
            points: 1,
            fwd: vec![vec![UNDEF; capacity]; rank],
            bwd: vec![vec![UNDEF; capacity]; rank],
        }
    }

    fn first_undefined(&self) -> Option<(usize, usize, bool)> {
        for p in 0..self.points {
            for g in 0..self.fwd.len() {
                if self.fwd[g][p] == UNDEF {
                    return Some((p, g, true));
                }
                if self.bwd[g][p] == UNDEF {
                    return Some((p, g, false));
                }
            }
        }
        None
    }

    /// Sets `g(p) = q`; false on conflict.
    fn set(&mut self, g: usize, p: usize, q: usize) -> bool {
        match (self.fwd[g][p], self.bwd[g][q]) {
            (x, y) if x == q && y == p => true,
            (UNDEF, UNDEF) => {
                self.fwd[g][p] = q;
                self.bwd[g][q] = p;
                true
            }
            _ => false,
        }
    }
}

struct Search<'a> {
    p: &'a GroupPresentation,
    max_index: usize,
    budget: u64,
    nodes: u64,
    pairs: Vec<(usize, usize)>,
    out: Vec<SubgroupRecord>,
}

impl Search<'_> {
    /// Applies forced entries until nothing changes; false on a
    /// contradiction.
    fn propagate(&self, t: &mut Table) -> bool {
        loop {
            let mut changed = false;
            for (g, gen) in self.p.generators.iter().enumerate() {
                let Some(m) = gen.order else { continue };
                let m = m as usize;
                let mut seen = vec![false; t.points];
                for start in 0..t.points {
                    if t.bwd[g][start] != UNDEF {
                        continue;
                    }
                    let mut len = 0;
                    let mut end = start;
                    seen[start] = true;
                    while t.fwd[g][end] != UNDEF {
                        end = t.fwd[g][end];
                        seen[end] = true;
                        len += 1;
                    }
                    if len >= m {
                        return false;
                    }
                    if len == m - 1 {
                        if !t.set(g, end, start) {
                            return false;
                        }
                        changed = true;
                    }
                }
                for start in 0..t.points {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut p = start;
                    loop {
                        seen[p] = true;
                        p = t.fwd[g][p];
                        len += 1;
                        if p == start {
                            break;
                        }
                    }
                    if m % len != 0 {
                        return false;
                    }
                }
            }
            for &(a, b) in &self.pairs {
                for p in 0..t.points {
                    for (x, y) in [(a, b), (b, a)] {
                        // x(y(p)) = y(x(p)).
                        let (xp, yp) = (t.fwd[x][p], t.fwd[y][p]);
                        let yxp = if xp == UNDEF { UNDEF } else { t.fwd[y][xp] };
                        if yxp == UNDEF {
                            continue;
                        }
                        if yp == UNDEF {
                            let q = t.bwd[x][yxp];
                            if q != UNDEF {
                                if !t.set(y, p, q) {
                                    return false;
                                }
                                changed = true;
                            }
                            continue;
                        }
                        let xyp = t.fwd[x][yp];
                        if xyp == UNDEF {
                            if !t.set(x, yp, yxp) {
                                return false;
                            }
                            changed = true;
                        } else if xyp != yxp {
                            return false;
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, t: Table) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(HgError::SearchBudget {
                budget: self.budget,
                reached: self.out.len(),
            });
        }
        let Some((p, g, forward)) = t.first_undefined() else {
            self.out.push(SubgroupRecord {
                index: t.points,
                action: t.fwd.iter().map(|perm| perm[..t.points].to_vec()).collect(),
            });
            return Ok(());
        };
        let fresh = t.points < self.max_index;
        for q in 0..t.points + usize::from(fresh) {
            let mut next = t.clone();
            if q == t.points {
                next.points += 1;
            }
            let ok = if forward { next.set(g, p, q) } else { next.set(g, q, p) };
            if ok && self.propagate(&mut next) {
                self.run(next)?;
            }
        }
        Ok(())
    }
}

/// All subgroups of index at most `max_index`, sorted by index and then
/// by action table.
pub fn enumerate_subgroups(p: &GroupPresentation, max_index: usize) -> Result<Vec<SubgroupRecord>> {
    enumerate_subgroups_with_budget(p, max_index, DEFAULT_NODE_BUDGET)
}

pub fn enumerate_subgroups_with_budget(
    p: &GroupPresentation,
    max_index: usize,
    budget: u64,
) -> Result<Vec<SubgroupRecord>> {
    if max_index == 0 {
        return Err(HgError::Presentation("max index must be at least 1".into()));
    }
    let mut search = Search {
        p,
        max_index,
        budget,
        nodes: 0,
        pairs: p.commuting_pairs(),
        out: Vec::new(),
    };
    let mut start = Table::new(p.rank(), max_index);
    if !search.propagate(&mut start) {
        return Ok(Vec::new());
    }
    search.run(start)?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// Counts per index, `counts[k-1]` for index `k`.
pub fn index_counts(records: &[SubgroupRecord], max_index: usize) -> Vec<usize> {
    let mut counts = vec![0; max_index];
    for r in records {
        counts[r.index - 1] += 1;
    }
    counts
}

/// Record positions grouped by conjugacy: two stabilizers are conjugate
/// exactly when their actions are isomorphic.
pub fn conjugacy_classes(records: &[SubgroupRecord]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<(usize, Vec<Vec<usize>>), Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        let key = (0..r.index)
            .map(|b| r.standardized_from(b))
            .min()
            .expect("index ≥ 1");
        classes.entry((r.index, key)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    out
}

type WordPredicate = Arc<dyn Fn(&GroupWord) -> bool + Send + Sync>;

/// A named subgroup given by a membership predicate.
#[derive(Clone)]
pub struct Family {
    pub name: String,
    pub index: usize,
    pub contains: WordPredicate,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({}, index {})", self.name, self.index)
    }
}

/// Reduces a word in `ℤ/2∗ℤ/2 = ⟨s, t⟩` to its alternating letter
/// sequence (0 = s, 1 = t).
fn reduce_dihedral(w: &GroupWord) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for &(g, e) in w {
        if e.rem_euclid(2) == 1 {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
    }
    out
}

/// `w = (st)^m` for some `m`, returned.
fn rotation_power(r: &[usize]) -> Option<i64> {
    if r.len() % 2 == 1 {
        return None;
    }
    let half = (r.len() / 2) as i64;
    Some(if r.first() == Some(&1) { -half } else { half })
}

fn in_h(k: usize, r: &[usize]) -> bool {
    rotation_power(r).is_some_and(|m| m.rem_euclid(k as i64) == 0)
}

/// `(st)^m` for `m ∈ ℤ` as letters.
fn st_power(m: i64) -> GroupWord {
    let pair: [(usize, i64); 2] = if m >= 0 { [(0, 1), (1, 1)] } else { [(1, 1), (0, 1)] };
    std::iter::repeat_n(pair, m.unsigned_abs() as usize).flatten().collect()
}

/// `g⁻¹w ∈ H_k` for the coset `gH_k`.
fn in_coset(k: usize, g: GroupWord, w: &GroupWord) -> bool {
    let inv: GroupWord = g.iter().rev().map(|&(x, e)| (x, -e)).collect();
    let prod: GroupWord = inv.into_iter().chain(w.iter().copied()).collect();
    in_h(k, &reduce_dihedral(&prod))
}

/// The subgroups of `ℤ/2∗ℤ/2 = ⟨s, t⟩` listed as families `G`, `H_k`,
/// `H_k^s`, `H_k^t`, `H_k^{s,odd}`, `H_k^{t,odd}`, for all parameters with
/// index at most `max_index`.
pub fn dihedral_families(max_index: usize) -> Vec<Family> {
    let mut out = vec![Family {
        name: "G".into(),
        index: 1,
        contains: Arc::new(|_| true),
    }];
    let family = |name: String, index: usize, f: WordPredicate| Family {
        name,
        index,
        contains: f,
    };
    for k in 1..=max_index {
        let ki = k as i64;
        if 2 * k <= max_index {
            out.push(family(format!("H_{k}"), 2 * k, Arc::new(move |w| in_h(k, &reduce_dihedral(w)))));
        }
        if k >= 2 {
            out.push(family(
                format!("H_{k}^s"),
                k,
                Arc::new(move |w| in_h(k, &reduce_dihedral(w)) || in_coset(k, vec![(1, 1)], w)),
            ));
            out.push(family(
                format!("H_{k}^t"),
                k,
                Arc::new(move |w| in_h(k, &reduce_dihedral(w)) || in_coset(k, vec![(0, 1)], w)),
            ));
        }
        if 2 * k <= max_index {
            out.push(family(
                format!("H_{k}^{{s,odd}}"),
                2 * k,
                Arc::new(move |w| {
                    let g: GroupWord = std::iter::once((1, 1)).chain(st_power(ki)).collect();
                    in_h(2 * k, &reduce_dihedral(w)) || in_coset(2 * k, g, w)
                }),
            ));
            out.push(family(
                format!("H_{k}^{{t,odd}}"),
                2 * k,
                Arc::new(move |w| {
                    let g: GroupWord = std::iter::once((0, 1)).chain(st_power(-ki)).collect();
                    in_h(2 * k, &reduce_dihedral(w)) || in_coset(2 * k, g, w)
                }),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyMatchReport {
    /// For each record, the families with identical membership on the
    /// test words.
    pub matches: Vec<Vec<String>>,
    /// Records matched by no family.
    pub unmatched_records: Vec<usize>,
    /// Number of unmatched records at each index.
    pub surplus_by_index: BTreeMap<usize, usize>,
    /// Families matching no record.
    pub unmatched_families: Vec<String>,
    /// Groups of families realizing the same record.
    pub coincidences: Vec<Vec<String>>,
    pub word_length: usize,
}

impl FamilyMatchReport {
    pub fn family_of(&self, record: usize) -> Option<&str> {
        self.matches[record].first().map(String::as_str)
    }
}

/// Compares records with families on all words of at most `word_length`
/// letters.
pub fn match_family(
    p: &GroupPresentation,
    records: &[SubgroupRecord],
    families: &[Family],
    word_length: usize,
) -> FamilyMatchReport {
    let words = p.words_up_to(word_length);
    let signature = |f: &dyn Fn(&GroupWord) -> bool| -> Vec<bool> { words.iter().map(f).collect() };
    let record_sigs: Vec<Vec<bool>> = records
        .iter()
        .map(|r| signature(&|w| subgroup_contains(r, w)))
        .collect();
    let mut matches = vec![Vec::new(); records.len()];
    let mut unmatched_families = Vec::new();
    for fam in families {
        let sig = signature(&*fam.contains);
        let hits: Vec<usize> = (0..records.len())
            .filter(|&i| records[i].index == fam.index && record_sigs[i] == sig)
            .collect();
        if hits.is_empty() {
            unmatched_families.push(fam.name.clone());
        }
        for i in hits {
            matches[i].push(fam.name.clone());
        }
    }
    let unmatched_records: Vec<usize> = (0..records.len()).filter(|&i| matches[i].is_empty()).collect();
    let mut surplus_by_index = BTreeMap::new();
    for &i in &unmatched_records {
        *surplus_by_index.entry(records[i].index).or_insert(0) += 1;
    }
    let coincidences = matches.iter().filter(|m| m.len() > 1).cloned().collect();
    FamilyMatchReport {
        matches,
        unmatched_records,
        surplus_by_index,
        unmatched_families,
        coincidences,
        word_length,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d_inf() -> GroupPresentation {
        "C2*C2".parse().unwrap()
    }

    #[test]
    fn parses_group_names() {
        assert_eq!(d_inf().name(), "C2*C2");
        assert_eq!("F2".parse::<GroupPresentation>().unwrap().name(), "Z*Z");
        let g: GroupPresentation = "(C2xC2)*C3".parse().unwrap();
        assert_eq!(g.name(), "(C2xC2)*C3");
        assert_eq!(g.abelian_blocks, vec![vec![0, 1]]);
        assert_eq!("1".parse::<GroupPresentation>().unwrap().rank(), 0);
        assert!("C0".parse::<GroupPresentation>().is_err());
        assert!("Q8".parse::<GroupPresentation>().is_err());
    }

    #[test]
    fn relators() {
        let g = GroupPresentation::from_relators(&["a", "b"], &["a^2", "b^3"]).unwrap();
        assert_eq!(g.name(), "C2*C3");
        let k = GroupPresentation::from_relators(&["a", "b"], &["a^2", "b^2", "a b a^-1 b^-1"]).unwrap();
        assert_eq!(k.name(), "(C2xC2)");
        assert!(matches!(
            GroupPresentation::from_relators(&["a", "b"], &["abab"]),
            Err(HgError::UnsupportedRelator(_))
        ));
    }

    #[test]
    fn words() {
        let g = d_inf();
        assert_eq!(g.parse_word("st").unwrap(), vec![(0, 1), (1, 1)]);
        assert_eq!(g.parse_word("s^-1 t^3").unwrap(), vec![(0, -1), (1, 3)]);
        assert_eq!(g.parse_word("e").unwrap(), vec![]);
        assert!(g.parse_word("q").is_err());
        assert_eq!(g.words_up_to(3).len(), 7);
    }

    #[test]
    fn dihedral_small_counts() {
        let r = enumerate_subgroups(&d_inf(), 2).unwrap();
        assert_eq!(index_counts(&r, 2), vec![1, 3]);
    }

    #[test]
    fn index_two_rotation_subgroup() {
        let g = d_inf();
        let r = enumerate_subgroups(&g, 2).unwrap();
        let rot = r
            .iter()
            .find(|r| r.index == 2 && r.action == vec![vec![1, 0], vec![1, 0]])
            .unwrap();
        assert!(subgroup_contains(rot, &g.parse_word("st").unwrap()));
        assert!(!subgroup_contains(rot, &g.parse_word("s").unwrap()));
        assert!(subgroup_contains(rot, &vec![]));
    }

    #[test]
    fn records_are_standard_and_respect_orders() {
        let g: GroupPresentation = "(C2xC2)*C3".parse().unwrap();
        for r in enumerate_subgroups(&g, 5).unwrap() {
            assert_eq!(r.standardized_from(0), r.action);
            for (gen, perm) in g.generators.iter().zip(&r.action) {
                let m = gen.order.unwrap() as usize;
                for p in 0..r.index {
                    let mut q = p;
                    for _ in 0..m {
                        q = perm[q];
                    }
                    assert_eq!(q, p);
                }
            }
            for p in 0..r.index {
                assert_eq!(r.action[0][r.action[1][p]], r.action[1][r.action[0][p]]);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g: GroupPresentation = "F2".parse().unwrap();
        assert!(matches!(
            enumerate_subgroups_with_budget(&g, 4, 10),
            Err(HgError::SearchBudget { budget: 10, .. })
        ));
    }

    #[test]
    fn conjugacy_of_index_two_is_trivial() {
        let r = enumerate_subgroups(&d_inf(), 3).unwrap();
        let classes = conjugacy_classes(&r);
        // Index 3: the three subgroups are conjugate reflections-plus-rotations.
        assert!(classes.iter().any(|c| c.len() == 3 && c.iter().all(|&i| r[i].index == 3)));
        assert_eq!(classes.iter().filter(|c| r[c[0]].index == 2).count(), 3);
    }

    #[test]
    fn families_at_index_four_are_distinct() {
        let g = d_inf();
        let recs = enumerate_subgroups(&g, 4).unwrap();
        let report = match_family(&g, &recs, &dihedral_families(4), 8);
        let at4: Vec<usize> = (0..recs.len()).filter(|&i| recs[i].index == 4).collect();
        assert_eq!(at4.len(), 5);
        for i in at4 {
            assert_eq!(report.matches[i].len(), 1, "{:?}", report.matches[i]);
        }
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

    /// Subgroups of index `n` counted as transitive actions on `n` points
    /// divided by the `(n-1)!` relabellings fixing point 0.
    fn naive_count(g: &GroupPresentation, n: usize) -> usize {
        let perms = permutations(n);
        let order_ok = |p: &Vec<usize>, m: Option<u64>| {
            m.is_none_or(|m| {
                (0..n).all(|x| {
                    let mut y = x;
                    for _ in 0..m {
                        y = p[y];
                    }
                    y == x
                })
            })
        };
        let choices: Vec<Vec<&Vec<usize>>> = g
            .generators
            .iter()
            .map(|gen| perms.iter().filter(|p| order_ok(p, gen.order)).collect())
            .collect();
        let mut count = 0;
        let mut pick = vec![0; g.rank()];
        loop {
            let act: Vec<&Vec<usize>> = (0..g.rank()).map(|i| choices[i][pick[i]]).collect();
            let commute = g
                .commuting_pairs()
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
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == g.rank() {
                    let fact: usize = (1..n).product();
                    assert_eq!(count % fact, 0);
                    return count / fact;
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

    #[test]
    fn matches_naive_permutation_count() {
        for name in ["C2*C2", "F2", "C2*C3", "(C2xC2)*C2", "C3"] {
            let g: GroupPresentation = name.parse().unwrap();
            let counts = index_counts(&enumerate_subgroups(&g, 4).unwrap(), 4);
            let naive: Vec<usize> = (1..=4).map(|n| naive_count(&g, n)).collect();
            assert_eq!(counts, naive, "{name}");
        }
    }

    /// Subgroups of index `n` in the free group of rank `r`:
    /// `Nₙ = n·(n!)^{r-1} − Σ_{k<n} ((n−k)!)^{r-1}·N_k`.
    fn free_group_counts(r: u32, max: usize) -> Vec<i128> {
        let fact = |n: usize| (1..=n as i128).product::<i128>();
        let mut out: Vec<i128> = Vec::new();
        for n in 1..=max {
            let mut v = n as i128 * fact(n).pow(r - 1);
            for k in 1..n {
                v -= fact(n - k).pow(r - 1) * out[k - 1];
            }
            out.push(v);
        }
        out
    }

    #[test]
    fn free_group_counts_follow_the_recursion() {
        assert_eq!(free_group_counts(2, 3), vec![1, 3, 13]);
        let g: GroupPresentation = "F2".parse().unwrap();
        let counts = index_counts(&enumerate_subgroups(&g, 5).unwrap(), 5);
        let expect: Vec<usize> = free_group_counts(2, 5).into_iter().map(|x| x as usize).collect();
        assert_eq!(counts, expect);
        let f3: GroupPresentation = "Z*Z*Z".parse().unwrap();
        let counts = index_counts(&enumerate_subgroups(&f3, 3).unwrap(), 3);
        assert_eq!(counts, free_group_counts(3, 3).into_iter().map(|x| x as usize).collect::<Vec<_>>());
    }

    #[test]
    fn infinite_dihedral_counts_and_families() {
        let g = d_inf();
        let recs = enumerate_subgroups(&g, 6).unwrap();
        assert_eq!(index_counts(&recs, 6), vec![1, 3, 3, 5, 5, 7]);
        let report = match_family(&g, &recs, &dihedral_families(6), 12);
        // Every listed family is realized, but the list misses the
        // reflection subgroups ⟨(st)ⁿ, (st)ʲs⟩ for most offsets j.
        assert!(report.unmatched_families.is_empty(), "{report:?}");
        assert_eq!(report.surplus_by_index, BTreeMap::from([(3, 1), (5, 3), (6, 2)]));
        let extra = &recs[report.unmatched_records[0]];
        assert_eq!(extra.index, 3);
        assert!(subgroup_contains(extra, &g.parse_word("tst").unwrap()));
        assert!(subgroup_contains(extra, &g.parse_word("ststst").unwrap()));
        assert!(report.coincidences.contains(&vec!["H_1^{s,odd}".to_string(), "H_2^t".to_string()]));
        assert!(report.coincidences.contains(&vec!["H_1^{t,odd}".to_string(), "H_2^s".to_string()]));
    }
}

//! Closed walks along the chains: tight packing, powers, stability, tail sets and classes.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::ext::ExtError;
use crate::overlap::{Chain, Limits, Link};
use crate::quiver::{find_word, ArrowId, Path, Quiver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("`{0}` is not a tightly packed closed walk of even degree")]
    NotTightlyPacked(String),
    #[error("`{0}` is not extending")]
    NotExtending(String),
    #[error("no stability index found for `{0}` within the search bound")]
    NoStability(String),
    #[error("too many relation cycles (more than {0})")]
    TooManyCycles(usize),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// `p` is a subpath of some power of the closed walk `q`.
pub fn lies_on(p: &Path, q: &Path) -> bool {
    if p.is_trivial() || !q.is_closed_walk() {
        return false;
    }
    let s = p.len().div_ceil(q.len()) + 1;
    find_word(p.arrows(), &q.arrows().repeat(s)).is_some()
}

/// Path through positions `from..to` of the periodic word `w^infinity`.
pub fn periodic_slice(q: &Quiver, w: &Path, from: usize, to: usize) -> Path {
    let l = w.len();
    if from == to {
        let v = if from % l == 0 { w.origin() } else { q.arrow_info(w.arrows()[from % l - 1]).target };
        return q.trivial(v);
    }
    let arrows: Vec<ArrowId> = (from..to).map(|i| w.arrows()[i % l]).collect();
    q.path(&arrows).expect("closed walk")
}

/// Relation indices `r_1..r_k` with `p = r_1 ⋯ r_k`, if `p` is a product of relations.
pub fn relation_factors(alg: &MonomialAlgebra, p: &Path) -> Option<Vec<usize>> {
    if p.is_trivial() {
        return None;
    }
    let w = p.arrows();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < w.len() {
        let i = alg
            .relations()
            .iter()
            .position(|r| w[pos..].starts_with(r.arrows()))?;
        pos += alg.relations()[i].len();
        out.push(i);
    }
    Some(out)
}

/// For `R` in R^{2n}: the `n` relation factors when `R` is their product.
pub fn is_tightly_packed(alg: &MonomialAlgebra, r: &Path) -> Option<Vec<usize>> {
    let d = alg.resolution_degree(r)?;
    if d < 2 || d % 2 == 1 {
        return None;
    }
    let f = relation_factors(alg, r)?;
    (f.len() == d / 2).then_some(f)
}

/// For `R` in R^{2n+1}: `R = r_2 r_4 ⋯ r_{2n} t` with the even entries of the chain abutting.
pub fn odd_tight_packing(alg: &MonomialAlgebra, r: &Path) -> Option<(Vec<usize>, Path)> {
    let d = alg.resolution_degree(r)?;
    if d < 3 || d % 2 == 0 {
        return None;
    }
    let c = alg.left_chain(r);
    let mut pos = 0;
    let mut factors = Vec::new();
    for k in (2..d).step_by(2) {
        let l = c.link(k);
        if l.start != pos {
            return None;
        }
        pos = l.end;
        factors.push(l.rel);
    }
    if pos != c.end(d - 1) {
        return None;
    }
    Some((factors, r.slice(alg.quiver(), pos, r.len())))
}

/// Closed walk in R^{2n} all of whose powers stay in the expected degrees.
pub fn is_extending(alg: &MonomialAlgebra, r: &Path, limits: &Limits) -> Result<bool, ExtError> {
    if !r.is_closed_walk() || alg.resolution_degree(r).is_none() {
        return Ok(false);
    }
    Ok(!alg.is_nilpotent_basis(r, limits)?.0)
}

/// Whether the relation `rel` maximally left overlaps `p`: `pU = Vr` with `r` starting inside `p`
/// and no relation ending inside `Vr` before its end.  `U` and `V` may be trivial.
pub fn maximally_left_overlaps(alg: &MonomialAlgebra, rel: &Path, p: &Path) -> bool {
    left_overlaps_words(alg, false, rel.arrows(), p.arrows())
}

/// Whether `p` maximally right overlaps the relation `rel` (mirror of the left version).
pub fn maximally_right_overlaps(alg: &MonomialAlgebra, p: &Path, rel: &Path) -> bool {
    let r: Vec<ArrowId> = rel.arrows().iter().rev().copied().collect();
    let w: Vec<ArrowId> = p.arrows().iter().rev().copied().collect();
    left_overlaps_words(alg, true, &r, &w)
}

fn left_overlaps_words(alg: &MonomialAlgebra, backward: bool, r: &[ArrowId], p: &[ArrowId]) -> bool {
    let o = if backward { &alg.bwd } else { &alg.fwd };
    (0..p.len()).any(|v| {
        if v + r.len() < p.len() || p[v..] != r[..p.len() - v] {
            return false;
        }
        let mut x = p[..v].to_vec();
        x.extend_from_slice(r);
        (1..x.len()).all(|end| o.relation_ending_at(|i| x[i], end).is_none())
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub walk: String,
    pub degree: usize,
    pub factors: Vec<usize>,
    pub extending: bool,
    pub left_stable_at: usize,
    pub right_stable_at: usize,
    pub stabilizes_at: usize,
    pub tails_repeat_at: usize,
    /// `t(R^s)` for `s = 1..=stabilizes_at + 2`
    pub power_tails: Vec<String>,
    pub power_beginnings: Vec<String>,
    pub tail_set: Vec<String>,
    pub beginning_set: Vec<String>,
    pub tightly_covered: bool,
    pub covered_at: Option<usize>,
    pub root: String,
    pub root_exponent: usize,
    pub relation_simple: bool,
}

/// Raw stability data with paths rather than strings.
#[derive(Debug, Clone)]
pub struct Stability {
    pub walk: Path,
    pub n: usize,
    pub factors: Vec<usize>,
    pub left_stable_at: usize,
    pub right_stable_at: usize,
    pub u: usize,
    /// first power whose tail and beginning repeat at the next power
    pub tail_u: usize,
    pub power_tails: Vec<Path>,
    pub power_beginnings: Vec<Path>,
    pub tail_set: Vec<Path>,
    pub beginning_set: Vec<Path>,
    pub covered_at: Option<usize>,
    pub root: Path,
    pub root_exponent: usize,
    pub relation_simple: bool,
    left: Chain,
    right: Chain,
}

fn same_shifted(a: Link, b: Link, shift: usize) -> bool {
    a.rel == b.rel && a.start + shift == b.start
}

fn stable_index(c: &Chain, two_n: usize, shift: usize) -> Option<usize> {
    let top = c.degree();
    let mut j = 3;
    while j + 1 + two_n <= top {
        if same_shifted(c.link(j), c.link(j + two_n), shift) && same_shifted(c.link(j + 1), c.link(j + 1 + two_n), shift) {
            return Some(j);
        }
        j += 2;
    }
    None
}

impl Stability {
    pub fn tightly_covered(&self) -> bool {
        self.covered_at.is_some()
    }

    /// `r_k` of the left sequence of any power `R^s` with `2ns >= k`.
    pub fn left_link(&self, k: usize) -> Link {
        self.left.link(k)
    }

    /// `k`-th link of the right sequence counted from the right end, in reversed coordinates.
    pub fn right_link(&self, k: usize) -> Link {
        self.right.link(k)
    }

    pub fn is_left_stable_at(&self, j: usize) -> bool {
        j % 2 == 1 && j >= self.left_stable_at
    }

    pub fn is_right_stable_at(&self, j: usize) -> bool {
        j % 2 == 1 && j >= self.right_stable_at
    }

    pub fn report(&self, alg: &MonomialAlgebra) -> StabilityReport {
        let r = |p: &Path| alg.render(p);
        StabilityReport {
            walk: r(&self.walk),
            degree: 2 * self.n,
            factors: self.factors.clone(),
            extending: true,
            left_stable_at: self.left_stable_at,
            right_stable_at: self.right_stable_at,
            stabilizes_at: self.u,
            tails_repeat_at: self.tail_u,
            power_tails: self.power_tails.iter().map(r).collect(),
            power_beginnings: self.power_beginnings.iter().map(r).collect(),
            tail_set: self.tail_set.iter().map(r).collect(),
            beginning_set: self.beginning_set.iter().map(r).collect(),
            tightly_covered: self.covered_at.is_some(),
            covered_at: self.covered_at,
            root: r(&self.root),
            root_exponent: self.root_exponent,
            relation_simple: self.relation_simple,
        }
    }
}

/// Links `ks` of `c` sit end to start in the word, so together they spell a tightly packed subpath.
fn adjacent_links(alg: &MonomialAlgebra, c: &Chain, ks: &[usize]) -> bool {
    let rs = alg.relations();
    ks.windows(2).all(|w| {
        let (a, b) = (c.link(w[0]), c.link(w[1]));
        a.start + rs[a.rel].len() == b.start
    })
}

/// Stability data of a tightly packed extending walk.
pub fn stability(alg: &MonomialAlgebra, r: &Path, limits: &Limits) -> Result<Stability, WalkError> {
    let q = alg.quiver();
    let factors = is_tightly_packed(alg, r).ok_or_else(|| WalkError::NotTightlyPacked(alg.render(r)))?;
    if !r.is_closed_walk() {
        return Err(WalkError::NotTightlyPacked(alg.render(r)));
    }
    if !is_extending(alg, r, limits)? {
        return Err(WalkError::NotExtending(alg.render(r)));
    }
    let n = factors.len();
    let two_n = 2 * n;
    let l = r.len();
    let rl = alg.radical_length();
    // u <= rl - 1, so the stability index is below 2n(rl-1); leave room for a few extra periods
    let periods = rl + 4;
    let links = two_n * periods;
    if links + 1 > limits.max_degree {
        return Err(ExtError::DegreeOverflow(links + 1, limits.max_degree).into());
    }
    let left = alg.fwd.periodic_chain(r.arrows(), links);
    let rev: Vec<ArrowId> = r.arrows().iter().rev().copied().collect();
    let right = alg.bwd.periodic_chain(&rev, links);
    let jl = stable_index(&left, two_n, l).ok_or_else(|| WalkError::NoStability(alg.render(r)))?;
    let jr = stable_index(&right, two_n, l).ok_or_else(|| WalkError::NoStability(alg.render(r)))?;
    let u = (jl.max(jr) + 1).div_ceil(two_n).max(1);
    // smallest s with t(R^s) = t(R^{s+1}) and b(R^s) = b(R^{s+1}); tails at multiples of the period are
    // determined by their length.  Equals u except when n = 1, where j >= 3 forces u >= 2.
    let tail_len = |c: &Chain, s: usize| c.end(two_n * s) - c.end(two_n * s - 1);
    let tail_u = (1..periods - 1)
        .find(|&s| tail_len(&left, s) == tail_len(&left, s + 1) && tail_len(&right, s) == tail_len(&right, s + 1))
        .ok_or_else(|| WalkError::NoStability(alg.render(r)))?;

    let rev_walk = |from: usize, to: usize| -> Path {
        // positions in the reversed periodic word, mapped back to a forward path
        let arrows: Vec<ArrowId> = (from..to).rev().map(|i| rev[i % l]).collect();
        if arrows.is_empty() {
            q.trivial(r.origin())
        } else {
            q.path(&arrows).expect("closed walk")
        }
    };
    let top = (u + 2).min(periods - 1);
    let power_tails = (1..=top).map(|s| periodic_slice(q, r, left.end(two_n * s - 1), left.end(two_n * s))).collect();
    let power_beginnings = (1..=top).map(|s| rev_walk(right.end(two_n * s - 1), right.end(two_n * s))).collect();
    let tail_set = (0..two_n).map(|i| periodic_slice(q, r, left.end(two_n + i - 1), left.end(two_n + i))).collect();
    let beginning_set = (0..two_n).map(|i| rev_walk(right.end(two_n + i - 1), right.end(two_n + i))).collect();

    let mut covered_at = None;
    for s in 2..=top {
        let lo = two_n * (s - 1);
        if lo < 4 {
            continue;
        }
        let odd: Vec<usize> = (0..n).map(|i| lo - 1 + 2 * i).collect();
        if adjacent_links(alg, &left, &odd) && adjacent_links(alg, &right, &odd) {
            covered_at = Some(s);
            break;
        }
    }

    let mut period = n;
    for k in 1..=n {
        if n % k == 0 && (0..n).all(|i| factors[i] == factors[i % k]) {
            period = k;
            break;
        }
    }
    let root_len: usize = factors[..period].iter().map(|&i| alg.relations()[i].len()).sum();
    let root = r.slice(q, 0, root_len);
    let mut distinct = factors[..period].to_vec();
    distinct.sort();
    distinct.dedup();
    Ok(Stability {
        walk: r.clone(),
        n,
        factors: factors.clone(),
        left_stable_at: jl,
        right_stable_at: jr,
        u,
        tail_u,
        power_tails,
        power_beginnings,
        tail_set,
        beginning_set,
        covered_at,
        root,
        root_exponent: n / period,
        relation_simple: distinct.len() == period,
        left,
        right,
    })
}

/// All closed walks `r_1 ⋯ r_k` of pairwise distinct relations, every rotation listed separately.
pub fn relation_simple_walks(alg: &MonomialAlgebra, cap: usize) -> Result<Vec<(Path, Vec<usize>)>, WalkError> {
    let rs = alg.relations();
    let mut out = Vec::new();
    let mut seq = Vec::new();
    let mut used = vec![false; rs.len()];
    fn dfs(
        alg: &MonomialAlgebra,
        seq: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Path, Vec<usize>)>,
        cap: usize,
    ) -> Result<(), WalkError> {
        let rs = alg.relations();
        let last = &rs[*seq.last().unwrap()];
        let first = &rs[seq[0]];
        if last.terminus() == first.origin() {
            let arrows: Vec<ArrowId> = seq.iter().flat_map(|&i| rs[i].arrows().iter().copied()).collect();
            out.push((alg.quiver().path(&arrows).unwrap(), seq.clone()));
            if out.len() > cap {
                return Err(WalkError::TooManyCycles(cap));
            }
        }
        for j in 0..rs.len() {
            if !used[j] && rs[j].origin() == last.terminus() {
                used[j] = true;
                seq.push(j);
                dfs(alg, seq, used, out, cap)?;
                seq.pop();
                used[j] = false;
            }
        }
        Ok(())
    }
    for i in 0..rs.len() {
        used[i] = true;
        seq.push(i);
        dfs(alg, &mut seq, &mut used, &mut out, cap)?;
        seq.pop();
        used[i] = false;
    }
    Ok(out)
}

fn least_rotation(p: &Path) -> Vec<ArrowId> {
    let w = p.arrows();
    (0..w.len())
        .map(|i| {
            let mut v = w[i..].to_vec();
            v.extend_from_slice(&w[..i]);
            v
        })
        .min()
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkClass {
    pub representative: Path,
    pub members: Vec<Path>,
}

impl WalkClass {
    pub fn contains(&self, p: &Path) -> bool {
        p.is_closed_walk() && lies_on(p, &self.representative) && lies_on(&self.representative, p)
    }
}

/// Partition of closed walks by mutual lies-on; representatives least after rotation.
pub fn equivalence_classes(candidates: &[Path]) -> Vec<WalkClass> {
    let n = candidates.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if lies_on(&candidates[i], &candidates[j]) && lies_on(&candidates[j], &candidates[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Path>> = std::collections::BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(candidates[i].clone());
    }
    let mut classes: Vec<WalkClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort();
            members.dedup();
            let representative = members
                .iter()
                .min_by(|a, b| (least_rotation(a), a.arrows()).cmp(&(least_rotation(b), b.arrows())))
                .unwrap()
                .clone();
            WalkClass { representative, members }
        })
        .collect();
    classes.sort_by(|a, b| least_rotation(&a.representative).cmp(&least_rotation(&b.representative)));
    classes
}

/// The class of `p` among `candidates` (which should contain `p`).
pub fn equivalence_class_of(p: &Path, candidates: &[Path]) -> WalkClass {
    let mut all = candidates.to_vec();
    if !all.contains(p) {
        all.push(p.clone());
    }
    equivalence_classes(&all).into_iter().find(|c| c.members.contains(p)).unwrap()
}

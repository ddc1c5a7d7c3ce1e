//! Maximal overlap sequences and the sets R^n.
//!
//! A chain on a word is recorded through its end positions `e_0 = 0, e_1 = 1, e_k = end(r_k)`.
//! The next relation starts in `[e_{k-1}, e_k)`, ends after `e_k`, and is the earliest ending
//! such occurrence.  Since two relations never end at the same place, the chain of a word is unique.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::MonomialAlgebra;
use crate::quiver::{compose, ArrowId, Path, Quiver, VertexId};

/// Relations occurrence data for one reading direction.
#[derive(Debug, Clone)]
pub(crate) struct Orientation {
    rels: Vec<Vec<ArrowId>>,
    by_last: Vec<Vec<usize>>,
    pub(crate) max_len: usize,
    next: Vec<Vec<ArrowId>>,
    head: Vec<VertexId>,
}

impl Orientation {
    pub(crate) fn forward(q: &Quiver, rels: &[Path]) -> Self {
        let words = rels.iter().map(|r| r.arrows().to_vec()).collect();
        let next = (0..q.num_vertices()).map(|v| q.out_arrows(v as VertexId).to_vec()).collect();
        let head = q.arrows().iter().map(|a| a.target).collect();
        Self::new(words, next, head, q.num_arrows())
    }

    pub(crate) fn backward(q: &Quiver, rels: &[Path]) -> Self {
        let words = rels.iter().map(|r| r.arrows().iter().rev().copied().collect()).collect();
        let next = (0..q.num_vertices()).map(|v| q.in_arrows(v as VertexId).to_vec()).collect();
        let head = q.arrows().iter().map(|a| a.source).collect();
        Self::new(words, next, head, q.num_arrows())
    }

    fn new(rels: Vec<Vec<ArrowId>>, next: Vec<Vec<ArrowId>>, head: Vec<VertexId>, arrows: usize) -> Self {
        let mut by_last = vec![Vec::new(); arrows];
        for (i, r) in rels.iter().enumerate() {
            by_last[*r.last().unwrap() as usize].push(i);
        }
        let max_len = rels.iter().map(|r| r.len()).max().unwrap_or(0);
        Orientation { rels, by_last, max_len, next, head }
    }

    /// The relation occurring with its last arrow at position `end - 1`, with its start.
    pub(crate) fn relation_ending_at(&self, word: impl Fn(usize) -> ArrowId, end: usize) -> Option<(usize, usize)> {
        let last = word(end - 1);
        for &i in &self.by_last[last as usize] {
            let r = &self.rels[i];
            if r.len() <= end && r.iter().enumerate().all(|(k, &a)| word(end - r.len() + k) == a) {
                return Some((i, end - r.len()));
            }
        }
        None
    }

    /// Next chain link after window `[w, e)`, looking at positions below `limit`.
    fn step(&self, word: &impl Fn(usize) -> ArrowId, w: usize, e: usize, limit: usize) -> Option<Link> {
        let stop = limit.min(e + self.max_len);
        for end in e + 1..=stop {
            if let Some((rel, start)) = self.relation_ending_at(word, end) {
                if start >= e {
                    return None;
                }
                if start >= w {
                    return Some(Link { rel, start, end });
                }
            }
        }
        None
    }

    /// Maximal chain of a finite word.
    pub(crate) fn chain(&self, word: &[ArrowId]) -> Chain {
        let mut chain = Chain::default();
        if word.len() < 2 {
            return chain;
        }
        let f = |i: usize| word[i];
        let (mut w, mut e) = (0, 1);
        while let Some(link) = self.step(&f, w, e, word.len()) {
            w = e;
            e = link.end;
            chain.links.push(link);
        }
        chain
    }

    /// First `links` links of the chain of the infinite word `period^infinity` (fewer if it dies).
    pub(crate) fn periodic_chain(&self, period: &[ArrowId], links: usize) -> Chain {
        let l = period.len();
        let f = |i: usize| period[i % l];
        let mut chain = Chain::default();
        let (mut w, mut e) = (0, 1);
        while chain.links.len() < links {
            match self.step(&f, w, e, usize::MAX) {
                Some(link) => {
                    w = e;
                    e = link.end;
                    chain.links.push(link);
                }
                None => break,
            }
        }
        chain
    }

    /// Degree `n` with `word` in R^n (in this orientation).
    pub(crate) fn degree(&self, word: &[ArrowId]) -> Option<usize> {
        match word.len() {
            0 => Some(0),
            1 => Some(1),
            n => {
                let c = self.chain(word);
                (c.end(c.degree()) == n && c.degree() >= 2).then(|| c.degree())
            }
        }
    }

    /// All `(word', e)` in R^{n+1} extending `word` in R^n, where `w = e_{n-1}`.
    /// `start` is the vertex where the word begins (needed when `word` is empty).
    pub(crate) fn extensions(&self, start: VertexId, word: &[ArrowId], w: usize) -> Vec<Vec<ArrowId>> {
        let mut out = Vec::new();
        if word.is_empty() {
            for &a in &self.next[start as usize] {
                out.push(vec![a]);
            }
            return out;
        }
        let e = word.len();
        let mut buf = word.to_vec();
        self.extend_dfs(&mut buf, w, e, &mut out);
        out
    }

    fn extend_dfs(&self, buf: &mut Vec<ArrowId>, w: usize, e: usize, out: &mut Vec<Vec<ArrowId>>) {
        if buf.len() >= e - 1 + self.max_len {
            return;
        }
        let v = self.head[*buf.last().unwrap() as usize];
        for &a in &self.next[v as usize] {
            buf.push(a);
            let end = buf.len();
            match self.relation_ending_at(|i| buf[i], end) {
                Some((_, s)) if s >= w && s < e => out.push(buf.clone()),
                Some((_, s)) if s >= e => {}
                _ => self.extend_dfs(buf, w, e, out),
            }
            buf.pop();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Link {
    pub rel: usize,
    pub start: usize,
    pub end: usize,
}

/// Links `r_2, r_3, ...` of a maximal chain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chain {
    pub links: Vec<Link>,
}

impl Chain {
    /// Largest `k` reached.
    pub fn degree(&self) -> usize {
        self.links.len() + 1
    }

    /// `e_k`.
    pub fn end(&self, k: usize) -> usize {
        match k {
            0 => 0,
            1 => 1,
            _ => self.links[k - 2].end,
        }
    }

    /// `r_k` for `k >= 2`.
    pub fn link(&self, k: usize) -> Link {
        self.links[k - 2]
    }
}

/// One member of R^n with both maximal sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub path: Path,
    pub degree: usize,
    /// `(relation, start)` for `r_2..r_n`, left to right.
    pub left: Vec<Link>,
    /// `(relation, start)` for the right sequence `r~_2..r~_n`, in original coordinates.
    pub right: Vec<Link>,
    pub tail: Path,
    pub beginning: Path,
}

impl MonomialAlgebra {
    /// Degree `n` with `p` in R^n, if any.
    pub fn resolution_degree(&self, p: &Path) -> Option<usize> {
        self.fwd.degree(p.arrows())
    }

    /// Degree computed from the right; agrees with [`Self::resolution_degree`].
    pub fn resolution_degree_right(&self, p: &Path) -> Option<usize> {
        let rev: Vec<ArrowId> = p.arrows().iter().rev().copied().collect();
        self.bwd.degree(&rev)
    }

    pub fn left_chain(&self, p: &Path) -> Chain {
        self.fwd.chain(p.arrows())
    }

    /// Right chain in original coordinates, ordered `r~_2, .., r~_n` left to right.
    pub fn right_chain(&self, p: &Path) -> Chain {
        let rev: Vec<ArrowId> = p.arrows().iter().rev().copied().collect();
        let c = self.bwd.chain(&rev);
        let n = p.len();
        let mut links: Vec<Link> = c
            .links
            .iter()
            .map(|l| Link { rel: l.rel, start: n - l.end, end: n - l.start })
            .collect();
        links.reverse();
        Chain { links }
    }

    /// Builds the record of `p` if it lies in some R^n.
    pub fn record(&self, p: &Path) -> Option<Record> {
        let degree = self.resolution_degree(p)?;
        let q = self.quiver();
        if degree <= 1 {
            return Some(Record {
                path: p.clone(),
                degree,
                left: Vec::new(),
                right: Vec::new(),
                tail: p.clone(),
                beginning: p.clone(),
            });
        }
        let left = self.left_chain(p);
        let right = self.right_chain(p);
        let n = p.len();
        let tail = p.slice(q, left.end(degree - 1), n);
        // beginning: up to the start of the (n-1)-th link from the right
        let b_end = if degree == 2 { n - 1 } else { right.links[1].start };
        let beginning = p.slice(q, 0, b_end);
        Some(Record { path: p.clone(), degree, left: left.links, right: right.links, tail, beginning })
    }

    /// The member of R^{n-1} that is a prefix of `p` in R^n (`p = R·t`).
    pub fn tail_owner(&self, p: &Path) -> Option<(Path, Path)> {
        let d = self.resolution_degree(p)?;
        if d == 0 {
            return None;
        }
        let q = self.quiver();
        let cut = self.left_chain(p).end(d - 1);
        Some((p.slice(q, 0, cut), p.slice(q, cut, p.len())))
    }

    /// The member of R^{n-1} that is a suffix of `p` in R^n, as `(b, R)` with `p = b·R`.
    pub fn beginning_owner(&self, p: &Path) -> Option<(Path, Path)> {
        let d = self.resolution_degree(p)?;
        if d == 0 {
            return None;
        }
        let q = self.quiver();
        let cut = match d {
            1 => 1,
            2 => p.len() - 1,
            _ => self.right_chain(p).links[1].start,
        };
        Some((p.slice(q, 0, cut), p.slice(q, cut, p.len())))
    }

    /// Members of R^{n+1} having `p` in R^n as prefix.
    pub fn right_extensions(&self, p: &Path) -> Vec<Path> {
        let d = match self.resolution_degree(p) {
            Some(d) => d,
            None => return Vec::new(),
        };
        let w = if d == 0 { 0 } else { self.left_chain(p).end(d - 1) };
        self.fwd
            .extensions(p.terminus(), p.arrows(), w)
            .into_iter()
            .map(|word| {
                let mut full = p.clone();
                full = compose(&full, &self.quiver().path(&word[p.len()..]).unwrap()).unwrap();
                full
            })
            .collect()
    }

    /// Members of R^{n+1} having `p` in R^n as suffix.
    pub fn left_extensions(&self, p: &Path) -> Vec<Path> {
        let d = match self.resolution_degree(p) {
            Some(d) => d,
            None => return Vec::new(),
        };
        let rev: Vec<ArrowId> = p.arrows().iter().rev().copied().collect();
        let w = if d <= 1 {
            0
        } else {
            let c = self.bwd.chain(&rev);
            c.end(d - 1)
        };
        let q = self.quiver();
        self.bwd
            .extensions(p.origin(), &rev, w)
            .into_iter()
            .map(|word| {
                let fwd: Vec<ArrowId> = word.iter().rev().copied().collect();
                q.path(&fwd).unwrap()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("degree {0} exceeds the configured cap {1}")]
    DegreeOverflow(usize, usize),
    #[error("R^{0} has more than {1} members")]
    TooLarge(usize, usize),
}

/// Resource caps for enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub max_members: usize,
}

impl Default for Limits {
    fn default() -> Self {
        let max_degree = std::env::var("OVERLAP_MAX_DEGREE").ok().and_then(|s| s.parse().ok()).unwrap_or(512);
        Limits { max_degree, max_members: 200_000 }
    }
}

/// The sets R^0, R^1, ..., computed degree by degree on demand.
#[derive(Debug, Clone)]
pub struct ResolutionBasis<'a> {
    algebra: &'a MonomialAlgebra,
    limits: Limits,
    degrees: Vec<Vec<Path>>,
    /// `e_{n-1}` per member of the last sealed degree, used to extend.
    windows: Vec<Vec<usize>>,
}

impl<'a> ResolutionBasis<'a> {
    pub fn new(algebra: &'a MonomialAlgebra, limits: Limits) -> Self {
        let q = algebra.quiver();
        let vertices: Vec<Path> = (0..q.num_vertices()).map(|v| q.trivial(v as VertexId)).collect();
        let windows = vec![vec![0; vertices.len()]];
        ResolutionBasis { algebra, limits, degrees: vec![vertices], windows }
    }

    pub fn algebra(&self) -> &'a MonomialAlgebra {
        self.algebra
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Seals all degrees up to `n`.
    pub fn ensure(&mut self, n: usize) -> Result<(), BasisError> {
        if n > self.limits.max_degree {
            return Err(BasisError::DegreeOverflow(n, self.limits.max_degree));
        }
        while self.degrees.len() <= n {
            let d = self.degrees.len() - 1;
            let mut next: BTreeMap<Path, usize> = BTreeMap::new();
            for (p, &w) in self.degrees[d].iter().zip(&self.windows[d]) {
                for word in self.algebra.fwd.extensions(p.origin(), p.arrows(), w) {
                    let path = self.algebra.quiver().path(&word).unwrap();
                    next.insert(path, p.len());
                }
                if next.len() > self.limits.max_members {
                    return Err(BasisError::TooLarge(d + 1, self.limits.max_members));
                }
            }
            // for degree 1 what we stored as window is e_0 = 0; arrows then extend with w = 0
            let (paths, ws): (Vec<Path>, Vec<usize>) =
                next.into_iter().map(|(p, w)| (p, if d == 0 { 0 } else { w })).unzip();
            self.degrees.push(paths);
            self.windows.push(ws);
        }
        Ok(())
    }

    /// R^n, sorted.
    pub fn members(&mut self, n: usize) -> Result<&[Path], BasisError> {
        self.ensure(n)?;
        Ok(&self.degrees[n])
    }

    /// Full records of R^n.
    pub fn records(&mut self, n: usize) -> Result<Vec<Record>, BasisError> {
        let alg = self.algebra;
        Ok(self.members(n)?.iter().map(|p| alg.record(p).expect("member of R^n")).collect())
    }

    pub fn index_of(&mut self, p: &Path) -> Option<usize> {
        let d = self.algebra.resolution_degree(p)?;
        self.members(d).ok()?.binary_search(p).ok()
    }
}

/// `(P, Q, U, V)` with `PU = VQ`, `1 <= l(U) < l(Q)` and `1 <= l(V) < l(P)`.
pub fn is_overlap_relation(p: &Path, q: &Path, u: &Path, v: &Path) -> bool {
    if u.is_trivial() || u.len() >= q.len() || v.is_trivial() || v.len() >= p.len() {
        return false;
    }
    match (compose(p, u), compose(v, q)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// A left or right overlap sequence placed on its associated path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapSequence {
    pub relations: Vec<usize>,
    /// start of each relation in the associated path
    pub starts: Vec<usize>,
    pub path: Path,
}

/// Placements of `rels` where each relation overlaps the part of the word added by the previous one.
fn left_placements(words: &[Vec<ArrowId>], rels: &[usize]) -> Vec<(Vec<ArrowId>, Vec<usize>)> {
    let mut out = Vec::new();
    let Some(&first) = rels.first() else { return out };
    let mut stack = vec![(words[first].clone(), vec![0usize], 0usize)];
    while let Some((word, starts, seg_start)) = stack.pop() {
        let k = starts.len();
        if k == rels.len() {
            out.push((word, starts));
            continue;
        }
        let r = &words[rels[k]];
        let seg_end = word.len();
        // r_3 starts strictly inside r_2; later links may start right at the end of the link two back
        let from = if k == 1 { 1 } else { seg_start };
        for s in from..seg_end {
            let overlap = seg_end - s;
            if overlap < r.len() && word[s..] == r[..overlap] {
                let mut w = word.clone();
                w.extend_from_slice(&r[overlap..]);
                let mut st = starts.clone();
                st.push(s);
                stack.push((w, st, seg_end));
            }
        }
    }
    out.sort();
    out
}

/// No relation occurs starting at or after `e_{k-2}` and ending before `e_k`, for `k >= 3`.
fn left_maximal(words: &[Vec<ArrowId>], word: &[ArrowId], rels: &[usize], starts: &[usize]) -> bool {
    let mut ends = vec![0, 1];
    ends.extend(rels.iter().zip(starts).map(|(&r, &s)| s + words[r].len()));
    (3..ends.len()).all(|k| {
        !words.iter().any(|w| {
            (ends[k - 2]..ends[k]).any(|s| s + w.len() < ends[k] && word[s..s + w.len()] == w[..])
        })
    })
}

impl MonomialAlgebra {
    fn relation_words(&self, reversed: bool) -> Vec<Vec<ArrowId>> {
        self.relations()
            .iter()
            .map(|r| if reversed { r.arrows().iter().rev().copied().collect() } else { r.arrows().to_vec() })
            .collect()
    }

    /// All left overlap sequences `(r_2, .., r_n)` with these relation indices.
    pub fn left_overlap_sequences(&self, rels: &[usize]) -> Vec<OverlapSequence> {
        let q = self.quiver();
        left_placements(&self.relation_words(false), rels)
            .into_iter()
            .filter_map(|(w, starts)| Some(OverlapSequence { relations: rels.to_vec(), starts, path: q.path(&w).ok()? }))
            .collect()
    }

    /// All right overlap sequences `(r~_2, .., r~_n)`; the mirror image of the left version.
    pub fn right_overlap_sequences(&self, rels: &[usize]) -> Vec<OverlapSequence> {
        let q = self.quiver();
        let rev: Vec<usize> = rels.iter().rev().copied().collect();
        let words = self.relation_words(true);
        left_placements(&words, &rev)
            .into_iter()
            .filter_map(|(w, starts)| {
                let n = w.len();
                let mut fwd: Vec<usize> = rev.iter().zip(&starts).map(|(&r, &s)| n - s - words[r].len()).collect();
                fwd.reverse();
                let w: Vec<ArrowId> = w.into_iter().rev().collect();
                Some(OverlapSequence { relations: rels.to_vec(), starts: fwd, path: q.path(&w).ok()? })
            })
            .collect()
    }

    pub fn is_maximal_left(&self, s: &OverlapSequence) -> bool {
        left_maximal(&self.relation_words(false), s.path.arrows(), &s.relations, &s.starts)
    }

    pub fn is_maximal_right(&self, s: &OverlapSequence) -> bool {
        let words = self.relation_words(true);
        let n = s.path.len();
        let w: Vec<ArrowId> = s.path.arrows().iter().rev().copied().collect();
        let rels: Vec<usize> = s.relations.iter().rev().copied().collect();
        let starts: Vec<usize> =
            s.relations.iter().zip(&s.starts).rev().map(|(&r, &st)| n - st - words[r].len()).collect();
        left_maximal(&words, &w, &rels, &starts)
    }
}

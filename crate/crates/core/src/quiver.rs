use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub type VertexId = u32;
pub type ArrowId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("identifier `{0}` is used both as a vertex and as an arrow")]
    NameClash(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows `{0}` and `{1}` do not compose")]
    NotComposable(String, String),
    #[error("empty arrow sequence")]
    Empty,
    #[error("pq and qr differ")]
    NotConjugate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// Finite directed multigraph with named vertices and arrows.
#[derive(Debug, Clone, Default)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, QuiverError> {
        if self.vertex_index.contains_key(name) {
            return Err(QuiverError::DuplicateVertex(name.to_string()));
        }
        if self.arrow_index.contains_key(name) {
            return Err(QuiverError::NameClash(name.to_string()));
        }
        let id = self.vertices.len() as VertexId;
        self.vertices.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        self.out_arrows.push(Vec::new());
        self.in_arrows.push(Vec::new());
        Ok(id)
    }

    pub fn add_arrow(&mut self, name: &str, source: &str, target: &str) -> Result<ArrowId, QuiverError> {
        if self.arrow_index.contains_key(name) {
            return Err(QuiverError::DuplicateArrow(name.to_string()));
        }
        if self.vertex_index.contains_key(name) {
            return Err(QuiverError::NameClash(name.to_string()));
        }
        let s = self.vertex(source)?;
        let t = self.vertex(target)?;
        let id = self.arrows.len() as ArrowId;
        self.arrows.push(Arrow { name: name.to_string(), source: s, target: t });
        self.arrow_index.insert(name.to_string(), id);
        self.out_arrows[s as usize].push(id);
        self.in_arrows[t as usize].push(id);
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    pub fn arrow_info(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a as usize]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v as usize]
    }

    pub fn in_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v as usize]
    }

    pub fn trivial(&self, v: VertexId) -> Path {
        Path { origin: v, terminus: v, arrows: Vec::new() }
    }

    /// Builds the path through the given arrows, checking composability.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path, QuiverError> {
        let (first, rest) = arrows.split_first().ok_or(QuiverError::Empty)?;
        let mut end = self.arrows[*first as usize].target;
        let mut prev = *first;
        for &a in rest {
            let info = &self.arrows[a as usize];
            if info.source != end {
                return Err(QuiverError::NotComposable(
                    self.arrows[prev as usize].name.clone(),
                    info.name.clone(),
                ));
            }
            end = info.target;
            prev = a;
        }
        Ok(Path { origin: self.arrows[*first as usize].source, terminus: end, arrows: arrows.to_vec() })
    }

    pub fn path_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Path, QuiverError> {
        let ids = names.iter().map(|n| self.arrow(n.as_ref())).collect::<Result<Vec<_>, _>>()?;
        self.path(&ids)
    }

    /// Renders arrows separated by spaces; a trivial path renders as `@vertex`.
    pub fn render(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("@{}", self.vertex_name(p.origin))
        } else {
            p.arrows.iter().map(|&a| self.arrows[a as usize].name.as_str()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Inverse of [`Quiver::render`].
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix('@') {
            return Ok(self.trivial(self.vertex(v)?));
        }
        let names: Vec<&str> = text.split_whitespace().collect();
        self.path_from_names(&names)
    }
}

/// A path in a quiver: a vertex together with a composable arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    origin: VertexId,
    terminus: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn terminus(&self) -> VertexId {
        self.terminus
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn is_closed_walk(&self) -> bool {
        !self.arrows.is_empty() && self.origin == self.terminus
    }

    /// The subpath on arrow positions `from..to`; empty ranges give the trivial path at that point.
    pub fn slice(&self, quiver: &Quiver, from: usize, to: usize) -> Path {
        assert!(from <= to && to <= self.arrows.len());
        if from == to {
            let v = if from == 0 {
                self.origin
            } else {
                quiver.arrow_info(self.arrows[from - 1]).target
            };
            return quiver.trivial(v);
        }
        let origin = quiver.arrow_info(self.arrows[from]).source;
        let terminus = quiver.arrow_info(self.arrows[to - 1]).target;
        Path { origin, terminus, arrows: self.arrows[from..to].to_vec() }
    }

    /// `p^s` for a closed walk (or `s <= 1`).
    pub fn power(&self, s: usize) -> Path {
        assert!(s >= 1 && (s == 1 || self.origin == self.terminus));
        Path { origin: self.origin, terminus: self.terminus, arrows: self.arrows.repeat(s) }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .min(1)
            .cmp(&other.arrows.len().min(1))
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.origin.cmp(&other.origin))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.origin)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

/// `pq`, or `None` when the terminus of `p` is not the origin of `q`.
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    if p.terminus != q.origin {
        return None;
    }
    let mut arrows = Vec::with_capacity(p.len() + q.len());
    arrows.extend_from_slice(&p.arrows);
    arrows.extend_from_slice(&q.arrows);
    Some(Path { origin: p.origin, terminus: q.terminus, arrows })
}

/// Smallest offset at which `p` occurs inside `q`.
pub fn is_subpath(p: &Path, q: &Path) -> Option<usize> {
    find_word(p.arrows(), q.arrows())
}

pub(crate) fn find_word(needle: &[ArrowId], hay: &[ArrowId]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Given `pq = qr`, returns `(s, i)` with `q = p^s a_1..a_i` and `r = a_{i+1}..a_t a_1..a_i`
/// where `p = a_1..a_t`.
pub fn conjugate_decomposition(p: &Path, q: &Path, r: &Path) -> Result<(usize, usize), QuiverError> {
    if p.is_trivial() {
        return Err(QuiverError::Empty);
    }
    let pq = compose(p, q).ok_or(QuiverError::NotConjugate)?;
    let qr = compose(q, r).ok_or(QuiverError::NotConjugate)?;
    if pq.arrows != qr.arrows {
        return Err(QuiverError::NotConjugate);
    }
    let t = p.len();
    let (s, i) = (q.len() / t, q.len() % t);
    let a = &p.arrows;
    let mut expect_q = a.repeat(s);
    expect_q.extend_from_slice(&a[..i]);
    let mut expect_r = a[i..].to_vec();
    expect_r.extend_from_slice(&a[..i]);
    if expect_q != q.arrows || expect_r != r.arrows {
        return Err(QuiverError::NotConjugate);
    }
    Ok((s, i))
}

use std::collections::HashMap;

use thiserror::Error;

use crate::overlap::Orientation;
use crate::quiver::{find_word, ArrowId, Path, Quiver, QuiverError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("relation `{0}` has length < 2")]
    RelationTooShort(String),
    #[error("relation set is not minimal: `{0}` is a subpath of `{1}`")]
    NonMinimal(String, String),
    #[error("algebra is infinite dimensional: `{0}` is a relation-free cycle")]
    InfiniteDimensional(String),
    #[error("relation is not a path: {0}")]
    BadEndpoints(QuiverError),
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    BadCharacteristic(u64),
}

/// `KQ/I` for a minimal set of monomial relations, finite dimensional.
#[derive(Debug, Clone)]
pub struct MonomialAlgebra {
    quiver: Quiver,
    relations: Vec<Path>,
    characteristic: u64,
    radical_length: usize,
    dimension: u128,
    pub(crate) fwd: Orientation,
    pub(crate) bwd: Orientation,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl MonomialAlgebra {
    pub fn build(quiver: Quiver, relations: Vec<Vec<ArrowId>>, characteristic: u64) -> Result<Self, AlgebraError> {
        if characteristic != 0 && (characteristic >= 1 << 31 || !is_prime(characteristic)) {
            return Err(AlgebraError::BadCharacteristic(characteristic));
        }
        let mut rels = Vec::with_capacity(relations.len());
        for r in &relations {
            let p = quiver.path(r).map_err(AlgebraError::BadEndpoints)?;
            if p.len() < 2 {
                return Err(AlgebraError::RelationTooShort(quiver.render(&p)));
            }
            rels.push(p);
        }
        for (i, a) in rels.iter().enumerate() {
            for (j, b) in rels.iter().enumerate() {
                if i != j && find_word(a.arrows(), b.arrows()).is_some() {
                    return Err(AlgebraError::NonMinimal(quiver.render(a), quiver.render(b)));
                }
            }
        }
        let fwd = Orientation::forward(&quiver, &rels);
        let bwd = Orientation::backward(&quiver, &rels);
        let (radical_length, dimension) = word_graph(&quiver, &rels)?;
        Ok(MonomialAlgebra { quiver, relations: rels, characteristic, radical_length, dimension, fwd, bwd })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Smallest `m` with `r^m = 0`: one more than the longest nonzero path.
    pub fn radical_length(&self) -> usize {
        self.radical_length
    }

    /// Number of nonzero paths, trivial ones included.
    pub fn dimension(&self) -> u128 {
        self.dimension
    }

    pub fn max_relation_len(&self) -> usize {
        self.fwd.max_len
    }

    pub fn is_nonzero_path(&self, p: &Path) -> bool {
        let w = p.arrows();
        (1..=w.len()).all(|end| self.fwd.relation_ending_at(|i| w[i], end).is_none())
    }

    pub fn render(&self, p: &Path) -> String {
        self.quiver.render(p)
    }
}

/// Prefix automaton over relation-free words: a state is the longest suffix of the word read so far
/// that is a proper prefix of some relation (or the current vertex when there is none).
/// Returns `(rl, dim)` or a witness cycle.
fn word_graph(quiver: &Quiver, rels: &[Path]) -> Result<(usize, u128), AlgebraError> {
    let mut prefixes: HashMap<Vec<ArrowId>, ()> = HashMap::new();
    for r in rels {
        for k in 1..r.len() {
            prefixes.insert(r.arrows()[..k].to_vec(), ());
        }
    }
    let rel_words: Vec<&[ArrowId]> = rels.iter().map(|r| r.arrows()).collect();

    // node ids: 0..nv for vertices, then one per prefix as discovered
    let nv = quiver.num_vertices();
    let mut words: Vec<(Vec<ArrowId>, VertexId)> = (0..nv).map(|v| (Vec::new(), v as VertexId)).collect();
    let mut index: HashMap<Vec<ArrowId>, usize> = HashMap::new();
    let mut edges: Vec<Vec<(ArrowId, usize)>> = vec![Vec::new(); nv];
    let mut k = 0;
    while k < words.len() {
        let (w, v) = words[k].clone();
        for &a in quiver.out_arrows(v) {
            let mut x = w.clone();
            x.push(a);
            if rel_words.iter().any(|r| x.ends_with(r)) {
                continue;
            }
            let target = quiver.arrow_info(a).target;
            let mut next = None;
            for start in 0..x.len() {
                if prefixes.contains_key(&x[start..]) {
                    next = Some(x[start..].to_vec());
                    break;
                }
            }
            let id = match next {
                None => target as usize,
                Some(s) => *index.entry(s.clone()).or_insert_with(|| {
                    words.push((s, target));
                    edges.push(Vec::new());
                    words.len() - 1
                }),
            };
            edges[k].push((a, id));
        }
        k += 1;
    }

    // iterative DFS for cycles and longest paths
    let n = words.len();
    let mut state = vec![0u8; n];
    let mut longest = vec![0usize; n];
    let mut count = vec![0u128; n];
    for root in 0..nv {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut via: Vec<ArrowId> = Vec::new();
        state[root] = 1;
        while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
            if *pos < edges[node].len() {
                let (a, next) = edges[node][*pos];
                *pos += 1;
                match state[next] {
                    0 => {
                        state[next] = 1;
                        via.push(a);
                        stack.push((next, 0));
                    }
                    1 => {
                        let at = stack.iter().position(|&(m, _)| m == next).unwrap();
                        let mut cycle: Vec<ArrowId> = via[at..].to_vec();
                        cycle.push(a);
                        let p = quiver.path(&cycle).expect("automaton follows arrows");
                        return Err(AlgebraError::InfiniteDimensional(quiver.render(&p)));
                    }
                    _ => {}
                }
            } else {
                let mut best = 0;
                let mut total: u128 = 1;
                for &(_, next) in &edges[node] {
                    best = best.max(1 + longest[next]);
                    total = total.saturating_add(count[next]);
                }
                longest[node] = best;
                count[node] = total;
                state[node] = 2;
                stack.pop();
                via.pop();
            }
        }
    }
    let rl = 1 + (0..nv).map(|v| longest[v]).max().unwrap_or(0);
    let dim = (0..nv).map(|v| count[v]).fold(0u128, |a, b| a.saturating_add(b));
    Ok((rl, dim))
}

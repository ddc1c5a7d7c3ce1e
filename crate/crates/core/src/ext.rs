use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::overlap::{BasisError, Limits};
use crate::quiver::{compose, Path};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtError {
    #[error("`{0}` is not in any R^n")]
    NotInBasis(String),
    #[error("degree 0 element has no nilpotence witness")]
    DegreeZero,
    #[error("degree {0} exceeds the configured cap {1}")]
    DegreeOverflow(usize, usize),
    #[error("R^{0} has more than {1} members")]
    TooLarge(usize, usize),
    #[error("power pattern of `{0}` did not repeat within the search bound")]
    Inconclusive(String),
}

impl From<BasisError> for ExtError {
    fn from(e: BasisError) -> Self {
        match e {
            BasisError::DegreeOverflow(a, b) => ExtError::DegreeOverflow(a, b),
            BasisError::TooLarge(a, b) => ExtError::TooLarge(a, b),
        }
    }
}

/// Homogeneous element of the Ext algebra, keyed by the paths of its basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub degree: usize,
    pub terms: BTreeMap<Path, Scalar>,
}

impl ExtElement {
    pub fn zero(degree: usize) -> Self {
        ExtElement { degree, terms: BTreeMap::new() }
    }

    pub fn basis(degree: usize, p: Path, field: Field) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, field.one());
        ExtElement { degree, terms }
    }

    /// Sum of the given basis elements with coefficient one.
    pub fn sum_of(degree: usize, paths: impl IntoIterator<Item = Path>, field: Field) -> Self {
        let mut z = ExtElement::zero(degree);
        for p in paths {
            z.add_term(p, field.one());
        }
        z
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&p) {
            Some(old) => old.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, sum);
        }
    }

    pub fn scale(&self, c: &Scalar) -> ExtElement {
        let mut out = ExtElement::zero(self.degree);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        let mut out = self.clone();
        for (p, x) in &other.terms {
            out.add_term(p.clone(), x.neg());
        }
        out
    }
}

impl MonomialAlgebra {
    pub fn field(&self) -> Field {
        Field::from_characteristic(self.characteristic())
    }

    /// Product of basis elements `g_p g_q`: the concatenation when it lands in R^{m+n}.
    pub fn multiply_basis(&self, p: &Path, q: &Path) -> Option<Path> {
        let m = self.resolution_degree(p)?;
        let n = self.resolution_degree(q)?;
        let pq = compose(p, q)?;
        (self.resolution_degree(&pq) == Some(m + n)).then_some(pq)
    }

    pub fn multiply(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        let mut out = ExtElement::zero(x.degree + y.degree);
        for (p, a) in &x.terms {
            for (q, b) in &y.terms {
                if let Some(pq) = self.multiply_basis(p, q) {
                    out.add_term(pq, a.mul(b));
                }
            }
        }
        out
    }

    /// `(nilpotent, witness)`: the smallest `k` with `g^k = 0`, or `(false, 0)`.
    ///
    /// Powers of a closed walk are read off the chain of the infinite periodic word.  Between two
    /// consecutive multiples of the period the chain only depends on the length of the tail at the
    /// last multiple, so once a tail length repeats at multiples where every power was in the
    /// expected degree, all further powers are too.
    pub fn is_nilpotent_basis(&self, p: &Path, limits: &Limits) -> Result<(bool, usize), ExtError> {
        let m = self.resolution_degree(p).ok_or_else(|| ExtError::NotInBasis(self.render(p)))?;
        if m == 0 {
            return Err(ExtError::DegreeZero);
        }
        if !p.is_closed_walk() {
            return Ok((true, 2));
        }
        let l = p.len();
        let bound = self.max_relation_len().max(1) + 1;
        // the search may stop early, so only complain about the cap once it is actually reached
        let links = (m * (bound + 1)).min(limits.max_degree.max(m));
        let chain = self.fwd.periodic_chain(p.arrows(), links);
        let ends: Vec<usize> = (0..=chain.degree()).map(|k| chain.end(k)).collect();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut k = 0;
        for s in 1..=bound + 1 {
            let target = s * l;
            while k < ends.len() && ends[k] < target {
                k += 1;
            }
            if k == ends.len() {
                if chain.links.len() < links {
                    return Ok((true, s));
                }
                if m * s > limits.max_degree {
                    return Err(ExtError::DegreeOverflow(m * s, limits.max_degree));
                }
                return Err(ExtError::Inconclusive(self.render(p)));
            }
            if m * s > limits.max_degree {
                return Err(ExtError::DegreeOverflow(m * s, limits.max_degree));
            }
            if ends[k] > target || k != m * s {
                return Ok((true, s));
            }
            let tail = ends[k] - ends[k - 1];
            if seen.insert(tail, s).is_some() {
                return Ok((false, 0));
            }
        }
        Err(ExtError::Inconclusive(self.render(p)))
    }

    /// All `(g, bg)` with `g` in R^m and `g_b g_g != 0`.
    pub fn right_multiples(&self, b: &Path, m: usize, limits: &Limits) -> Result<Vec<(Path, Path)>, ExtError> {
        Ok(self.multiples_upto(b, m, limits, true)?.pop().unwrap())
    }

    /// All `(g, gb)` with `g` in R^m and `g_g g_b != 0`.
    pub fn left_multiples(&self, b: &Path, m: usize, limits: &Limits) -> Result<Vec<(Path, Path)>, ExtError> {
        Ok(self.multiples_upto(b, m, limits, false)?.pop().unwrap())
    }

    /// Entry `m` lists the nonzero products of `g_b` with basis elements of degree `m`, for
    /// `m = 0..=top`: on the right as `(g, bg)` or on the left as `(g, gb)`.
    ///
    /// A nonzero product `bg` has `b` as the prefix of its chain, so the products are found by
    /// walking the extension tree of `b` instead of enumerating all of R^m.
    pub fn multiples_upto(&self, b: &Path, top: usize, limits: &Limits, right: bool) -> Result<Vec<Vec<(Path, Path)>>, ExtError> {
        let d = self.resolution_degree(b).ok_or_else(|| ExtError::NotInBasis(self.render(b)))?;
        if d + top > limits.max_degree {
            return Err(ExtError::DegreeOverflow(d + top, limits.max_degree));
        }
        let q = self.quiver();
        let v = if right { b.terminus() } else { b.origin() };
        let mut out = vec![vec![(q.trivial(v), b.clone())]];
        let mut layer = vec![b.clone()];
        for m in 1..=top {
            let mut next = Vec::new();
            for p in &layer {
                if right {
                    next.extend(self.right_extensions(p));
                } else {
                    next.extend(self.left_extensions(p));
                }
                if next.len() > limits.max_members {
                    return Err(ExtError::TooLarge(d + m, limits.max_members));
                }
            }
            let mut found = Vec::new();
            for full in &next {
                let g = if right { full.slice(q, b.len(), full.len()) } else { full.slice(q, 0, full.len() - b.len()) };
                if self.resolution_degree(&g) == Some(m) {
                    found.push((g, full.clone()));
                }
            }
            found.sort();
            out.push(found);
            layer = next;
        }
        Ok(out)
    }
}

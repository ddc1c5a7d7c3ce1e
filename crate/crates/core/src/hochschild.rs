//! Cochains on the bimodule resolution and the odd differential.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::centre::ClassData;
use crate::ext::ExtError;
use crate::overlap::{BasisError, Limits, ResolutionBasis};
use crate::quiver::{compose, Path, VertexId};
use crate::scalar::{Field, Scalar};
use crate::walks::{stability, WalkError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("`{0}` does not stabilize at 1 (left {1}, right {2})")]
    NotStabilized(String, usize, usize),
    #[error("`{0}` is not extending, so it does not stabilize")]
    NotExtending(String),
    #[error("degree {0} must be even and positive")]
    OddDegree(usize),
    #[error("the class has no non-nilpotent closed walk in degree {0}")]
    NoSupport(usize),
    #[error("bad cochain: {0}")]
    BadCochain(String),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

impl From<BasisError> for HochschildError {
    fn from(e: BasisError) -> Self {
        HochschildError::Ext(e.into())
    }
}

impl From<WalkError> for HochschildError {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::NotExtending(w) => HochschildError::NotExtending(w),
            WalkError::Ext(e) => HochschildError::Ext(e),
            other => HochschildError::BadCochain(other.to_string()),
        }
    }
}

/// A summand `Λo(R) ⊗ t(R)Λ` of the bimodule resolution in degree `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleSummandIndex {
    pub degree: usize,
    pub path: Path,
    pub origin: VertexId,
    pub terminus: VertexId,
}

pub fn summands(basis: &mut ResolutionBasis, m: usize) -> Result<Vec<BimoduleSummandIndex>, BasisError> {
    Ok(basis
        .members(m)?
        .iter()
        .map(|p| BimoduleSummandIndex { degree: m, path: p.clone(), origin: p.origin(), terminus: p.terminus() })
        .collect())
}

/// `R = R_k p = q R_j` with `R_k, R_j` one degree lower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddDifferentialEntry {
    pub path: Path,
    pub prefix: Path,
    pub p: Path,
    pub q: Path,
    pub suffix: Path,
}

pub fn odd_differential(alg: &MonomialAlgebra, r: &Path) -> Option<OddDifferentialEntry> {
    let (prefix, p) = alg.tail_owner(r)?;
    let (q, suffix) = alg.beginning_owner(r)?;
    Some(OddDifferentialEntry { path: r.clone(), prefix, p, q, suffix })
}

/// Element of Λ as a combination of nonzero paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaElement {
    pub terms: BTreeMap<Path, Scalar>,
}

impl LambdaElement {
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

    fn times(&self, alg: &MonomialAlgebra, other: &Path, right: bool, sign: &Scalar, into: &mut LambdaElement) {
        for (w, c) in &self.terms {
            let prod = if right { compose(w, other) } else { compose(other, w) };
            if let Some(prod) = prod.filter(|x| alg.is_nonzero_path(x)) {
                into.add_term(prod, c.mul(sign));
            }
        }
    }

    pub fn render(&self, alg: &MonomialAlgebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let w = alg.render(p);
                if c.is_one() {
                    w
                } else if c.neg().is_one() {
                    format!("-{w}")
                } else {
                    format!("{c}*{w}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Cochain on the degree `2n` summands with values in Λ; absent generators map to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainChi {
    pub degree: usize,
    pub values: BTreeMap<Path, LambdaElement>,
}

impl CochainChi {
    pub fn value(&self, r: &Path) -> LambdaElement {
        self.values.get(r).cloned().unwrap_or_default()
    }

    /// Generators with nonzero value.
    pub fn support(&self) -> Vec<Path> {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(p, _)| p.clone()).collect()
    }

    /// Checks that every value lies in `o(R) Λ t(R)` and every key is in R^{degree}.
    pub fn validate(&self, alg: &MonomialAlgebra) -> Result<(), HochschildError> {
        for (r, v) in &self.values {
            if alg.resolution_degree(r) != Some(self.degree) {
                return Err(HochschildError::BadCochain(format!("`{}` is not in R^{}", alg.render(r), self.degree)));
            }
            for w in v.terms.keys() {
                if w.origin() != r.origin() || w.terminus() != r.terminus() || !alg.is_nonzero_path(w) {
                    return Err(HochschildError::BadCochain(format!(
                        "value `{}` of `{}` is not a nonzero path between its endpoints",
                        alg.render(w),
                        alg.render(r)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parses `{"degree": 2n, "values": {"<path>": <value>}}` with values like `"a2"`, `"-a2"`,
    /// `"3*a2"`, `"@1"`, `"0"` or arrays of those.
    pub fn from_json(alg: &MonomialAlgebra, text: &str) -> Result<Self, HochschildError> {
        let bad = |m: String| HochschildError::BadCochain(m);
        let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let degree = doc.get("degree").and_then(|d| d.as_u64()).ok_or_else(|| bad("missing `degree`".into()))? as usize;
        let values = doc.get("values").and_then(|v| v.as_object()).ok_or_else(|| bad("missing `values`".into()))?;
        let field = alg.field();
        let q = alg.quiver();
        let mut out = CochainChi { degree, values: BTreeMap::new() };
        for (key, val) in values {
            let r = q.parse_path(key).map_err(|e| bad(format!("`{key}`: {e}")))?;
            let items: Vec<&str> = match val {
                serde_json::Value::String(s) => vec![s.as_str()],
                serde_json::Value::Array(xs) => xs
                    .iter()
                    .map(|x| x.as_str().ok_or_else(|| bad(format!("value of `{key}` is not a string"))))
                    .collect::<Result<_, _>>()?,
                _ => return Err(bad(format!("value of `{key}` must be a string or an array"))),
            };
            let mut v = LambdaElement::default();
            for item in items {
                let item = item.trim();
                if item == "0" {
                    continue;
                }
                let (c, w) = match item.split_once('*') {
                    Some((k, w)) => {
                        let k: i64 = k.trim().parse().map_err(|_| bad(format!("bad coefficient in `{item}`")))?;
                        (field.from_i64(k), w)
                    }
                    None => match item.strip_prefix('-') {
                        Some(rest) => (field.from_i64(-1), rest),
                        None => (field.one(), item),
                    },
                };
                let w = q.parse_path(w).map_err(|e| bad(format!("`{item}`: {e}")))?;
                v.add_term(w, c);
            }
            out.values.insert(r, v);
        }
        out.validate(alg)?;
        Ok(out)
    }

    pub fn to_json(&self, alg: &MonomialAlgebra) -> serde_json::Value {
        let mut values = serde_json::Map::new();
        for (r, v) in &self.values {
            let items: Vec<serde_json::Value> =
                v.render(alg).split(" + ").map(|t| serde_json::Value::String(t.to_string())).collect();
            values.insert(alg.render(r), serde_json::Value::Array(items));
        }
        serde_json::json!({ "degree": self.degree, "values": values })
    }
}

/// The non-nilpotent closed walks of the class in R^{degree}.
pub fn class_support(
    alg: &MonomialAlgebra,
    class: &ClassData,
    degree: usize,
    limits: &Limits,
) -> Result<Vec<Path>, HochschildError> {
    let mut basis = ResolutionBasis::new(alg, *limits);
    let mut out = Vec::new();
    for p in basis.members(degree)? {
        if p.is_closed_walk() && class.class.contains(p) && !alg.is_nilpotent_basis(p, limits)?.0 {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// `χ(R) = o(R)` on the class support in degree `2n`, zero elsewhere; every supported walk must
/// stabilize at 1.
pub fn build_chi(
    alg: &MonomialAlgebra,
    class: &ClassData,
    degree: usize,
    limits: &Limits,
) -> Result<CochainChi, HochschildError> {
    if degree == 0 || degree % 2 == 1 {
        return Err(HochschildError::OddDegree(degree));
    }
    let support = class_support(alg, class, degree, limits)?;
    if support.is_empty() {
        return Err(HochschildError::NoSupport(degree));
    }
    let field = alg.field();
    let q = alg.quiver();
    let mut chi = CochainChi { degree, values: BTreeMap::new() };
    for r in support {
        let st = stability(alg, &r, limits)?;
        if st.u != 1 {
            return Err(HochschildError::NotStabilized(alg.render(&r), st.left_stable_at, st.right_stable_at));
        }
        let mut v = LambdaElement::default();
        v.add_term(q.trivial(r.origin()), field.one());
        chi.values.insert(r, v);
    }
    Ok(chi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleFailure {
    pub generator: String,
    pub value: String,
}

/// First generator of R^{2n+1} on which `χ δ` does not vanish, or `None` for a cocycle.
pub fn verify_cocycle(
    alg: &MonomialAlgebra,
    chi: &CochainChi,
    limits: &Limits,
) -> Result<Option<CocycleFailure>, HochschildError> {
    chi.validate(alg)?;
    let field: Field = alg.field();
    let mut basis = ResolutionBasis::new(alg, *limits);
    let one = field.one();
    let minus = field.from_i64(-1);
    for r in basis.members(chi.degree + 1)? {
        let e = odd_differential(alg, r).expect("member of R^{2n+1}");
        let mut total = LambdaElement::default();
        chi.value(&e.prefix).times(alg, &e.p, true, &one, &mut total);
        chi.value(&e.suffix).times(alg, &e.q, false, &minus, &mut total);
        if !total.is_zero() {
            return Ok(Some(CocycleFailure { generator: alg.render(r), value: total.render(alg) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centre::class_data;
    use crate::format::load_algebra;

    const LOOP3: &str = "vertex 1\narrow x 1 1\nrelation x x x\n";

    #[test]
    fn odd_differential_of_an_arrow_goes_through_vertices() {
        let alg = load_algebra(LOOP3).unwrap();
        let x = alg.quiver().parse_path("x").unwrap();
        let e = odd_differential(&alg, &x).unwrap();
        assert_eq!(e.p, x);
        assert_eq!(e.q, x);
        assert!(e.prefix.is_trivial() && e.suffix.is_trivial());
    }

    #[test]
    fn loop_chi_is_a_cocycle() {
        let alg = load_algebra(LOOP3).unwrap();
        let lim = Limits::default();
        let classes = class_data(&alg, &lim).unwrap();
        let chi = build_chi(&alg, &classes[0], classes[0].candidate_degree().unwrap(), &lim).unwrap();
        assert_eq!(chi.support().len(), 1);
        assert_eq!(verify_cocycle(&alg, &chi, &lim).unwrap(), None);
    }

    #[test]
    fn cochain_json_round_trip() {
        let alg = load_algebra(LOOP3).unwrap();
        let text = r#"{"degree": 2, "values": {"x x x": ["@1", "-x"]}}"#;
        let chi = CochainChi::from_json(&alg, text).unwrap();
        let again = CochainChi::from_json(&alg, &chi.to_json(&alg).to_string()).unwrap();
        assert_eq!(chi, again);
        let wrong = r#"{"degree": 2, "values": {"x x": "@1"}}"#;
        assert!(CochainChi::from_json(&alg, wrong).is_err());
    }
}

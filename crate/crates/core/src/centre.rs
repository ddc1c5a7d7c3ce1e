//! The graded centre of the Ext algebra modulo nilpotent elements.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::ext::{ExtElement, ExtError};
use crate::linalg::{rank, Echelon};
use crate::overlap::{BasisError, Limits, ResolutionBasis};
use crate::quiver::Path;
use crate::scalar::{Field, Scalar};
use crate::walks::{
    equivalence_classes, is_extending, lies_on, maximally_left_overlaps, maximally_right_overlaps, relation_factors,
    relation_simple_walks, stability, Stability, WalkClass, WalkError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentreError {
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("empty list of degrees")]
    EmptyInput,
    #[error("structure violation: {0}")]
    StructureViolation(String),
}

impl From<BasisError> for CentreError {
    fn from(e: BasisError) -> Self {
        CentreError::Ext(e.into())
    }
}

fn sign(field: Field, d: usize, m: usize) -> Scalar {
    if field.characteristic() != 2 && (d * m) % 2 == 1 {
        field.from_i64(-1)
    } else {
        field.one()
    }
}

/// Default check bound: `2 rl + d`.
pub fn default_check_bound(alg: &MonomialAlgebra, d: usize) -> usize {
    2 * alg.radical_length() + d
}

/// Basis of `{z in span R^d : z g = (-1)^{dm} g z for all g in R^m, m <= bound}`.
pub fn brute_force_centre(
    alg: &MonomialAlgebra,
    d: usize,
    bound: usize,
    limits: &Limits,
) -> Result<Vec<ExtElement>, CentreError> {
    let mut basis = ResolutionBasis::new(alg, *limits);
    let unknowns: Vec<Path> = basis.members(d)?.to_vec();
    let field = alg.field();
    let mut ech = Echelon::new(field, unknowns.len());
    // per m: g -> target -> coefficient row
    for m in 0..=bound {
        let s = sign(field, d, m);
        let mut rows: HashMap<(Path, Path), Vec<Scalar>> = HashMap::new();
        for (i, b) in unknowns.iter().enumerate() {
            for (side, right) in [(field.one(), true), (s.neg(), false)] {
                let prods = if m == 0 {
                    let v = if right { b.terminus() } else { b.origin() };
                    vec![(alg.quiver().trivial(v), b.clone())]
                } else {
                    alg.multiples_upto(b, m, limits, right)?.pop().unwrap()
                };
                for (g, target) in prods {
                    let row = rows.entry((g, target)).or_insert_with(|| vec![field.zero(); unknowns.len()]);
                    row[i] = row[i].add(&side);
                }
            }
        }
        let mut keys: Vec<_> = rows.keys().cloned().collect();
        keys.sort();
        for k in keys {
            let row = rows.remove(&k).unwrap();
            if row.iter().any(|x| !x.is_zero()) {
                ech.push(row);
            }
        }
        if ech.rank() == unknowns.len() {
            break;
        }
    }
    Ok(ech
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut z = ExtElement::zero(d);
            for (p, c) in unknowns.iter().zip(v) {
                z.add_term(p.clone(), c);
            }
            z
        })
        .collect())
}

/// First `g` of degree at most `bound` with `z g != (-1)^{|z||g|} g z`.
pub fn centrality_witness(
    alg: &MonomialAlgebra,
    z: &ExtElement,
    bound: usize,
    limits: &Limits,
) -> Result<Option<Path>, CentreError> {
    let field = alg.field();
    let d = z.degree;
    let mut per_m: Vec<BTreeMap<Path, ExtElement>> = vec![BTreeMap::new(); bound + 1];
    for (b, c) in &z.terms {
        for right in [true, false] {
            let all = alg.multiples_upto(b, bound, limits, right)?;
            for (m, prods) in all.into_iter().enumerate() {
                let s = if right { field.one() } else { sign(field, d, m).neg() };
                for (g, target) in prods {
                    per_m[m].entry(g).or_insert_with(|| ExtElement::zero(d + m)).add_term(target, c.mul(&s));
                }
            }
        }
    }
    for table in per_m {
        for (g, diff) in table {
            if !diff.is_zero() {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Condition {
    fn ok() -> Self {
        Condition { holds: true, witness: None }
    }

    fn fail(w: String) -> Self {
        Condition { holds: false, witness: Some(w) }
    }
}

/// One relation-simple extending walk of a class.
#[derive(Debug, Clone)]
pub struct DeltaWalk {
    pub walk: Path,
    pub relations: usize,
    /// stabilization exponent of `p^{m_p}`
    pub u: usize,
    /// first power of `p^{m_p}` whose tail and beginning repeat
    pub tail_u: usize,
    /// relations in `p^{m_p}`
    pub power_relations: usize,
}

#[derive(Debug, Clone)]
pub struct ClassData {
    pub class: WalkClass,
    pub delta: Vec<DeltaWalk>,
    pub m: usize,
    pub u: usize,
    pub n: usize,
    pub delta_u: Vec<Stability>,
    pub conditions: Vec<Condition>,
}

impl ClassData {
    /// The candidate passes the finite characterization.
    pub fn certified(&self) -> bool {
        !self.delta.is_empty() && self.conditions.iter().all(|c| c.holds)
    }

    /// Degree `2N` of the candidate.
    pub fn candidate_degree(&self) -> Option<usize> {
        (!self.delta.is_empty()).then_some(2 * self.n)
    }

    /// `sum g_q` over the stabilized powers, raised to the `k`-th power (`k >= 1`).
    pub fn candidate(&self, field: Field, k: usize) -> Option<ExtElement> {
        let d = self.candidate_degree()?;
        Some(ExtElement::sum_of(d * k, self.delta_u.iter().map(|s| s.walk.power(k)), field))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Relation-simple tightly packed closed walks in R, each with its extending flag.
fn tight_cycles(alg: &MonomialAlgebra, limits: &Limits) -> Result<Vec<(Path, usize, bool)>, CentreError> {
    let mut out = Vec::new();
    for (p, seq) in relation_simple_walks(alg, 100_000)? {
        if alg.resolution_degree(&p) == Some(2 * seq.len()) {
            let ext = is_extending(alg, &p, limits)?;
            out.push((p, seq.len(), ext));
        }
    }
    Ok(out)
}

/// Classes of the relation-simple tightly packed closed walks, with the characterization data.
pub fn class_data(alg: &MonomialAlgebra, limits: &Limits) -> Result<Vec<ClassData>, CentreError> {
    let cycles = tight_cycles(alg, limits)?;
    let walks: Vec<Path> = cycles.iter().map(|c| c.0.clone()).collect();
    let mut out = Vec::new();
    for mut class in equivalence_classes(&walks) {
        let delta: Vec<&(Path, usize, bool)> =
            cycles.iter().filter(|c| c.2 && class.members.contains(&c.0)).collect();
        if let Some(rep) = delta
            .iter()
            .map(|c| &c.0)
            .min_by(|a, b| (rotation_key(a), a.arrows()).cmp(&(rotation_key(b), b.arrows())))
        {
            class.representative = rep.clone();
        }
        if delta.is_empty() {
            out.push(ClassData { class, delta: Vec::new(), m: 0, u: 0, n: 0, delta_u: Vec::new(), conditions: Vec::new() });
            continue;
        }
        let m = delta.iter().fold(1, |acc, c| lcm(acc, c.1));
        let mut dws = Vec::new();
        for c in &delta {
            let mp = m / c.1;
            let st = stability(alg, &c.0.power(mp), limits)?;
            dws.push(DeltaWalk { walk: c.0.clone(), relations: c.1, u: st.u, tail_u: st.tail_u, power_relations: st.n });
        }
        let u = dws.iter().fold(1, |acc, d| lcm(acc, d.u));
        let n = m * u;
        let mut delta_u = Vec::new();
        for d in &dws {
            delta_u.push(stability(alg, &d.walk.power(m / d.relations * u), limits)?);
        }
        let conditions = conditions(alg, &class.representative, n, &delta_u, limits)?;
        out.push(ClassData { class, delta: dws, m, u, n, delta_u, conditions });
    }
    Ok(out)
}

fn rotation_key(p: &Path) -> Vec<u32> {
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

fn conditions(
    alg: &MonomialAlgebra,
    w: &Path,
    n: usize,
    delta_u: &[Stability],
    limits: &Limits,
) -> Result<Vec<Condition>, CentreError> {
    let r = |p: &Path| alg.render(p);
    let q = alg.quiver();
    let c1 = match delta_u.iter().find(|s| !s.tightly_covered()) {
        Some(s) => Condition::fail(r(&s.walk)),
        None => Condition::ok(),
    };

    // tightly packed extending walks with N factors on W start at some offset of W^infinity
    let members: BTreeSet<&Path> = delta_u.iter().map(|s| &s.walk).collect();
    let mut c2 = Condition::ok();
    let l = w.len();
    let reps = (n * alg.max_relation_len()).div_ceil(l) + 2;
    let long = w.power(reps);
    'offsets: for off in 0..l {
        let mut pos = off;
        for _ in 0..n {
            match alg.relations().iter().find(|rel| long.arrows()[pos..].starts_with(rel.arrows())) {
                Some(rel) => pos += rel.len(),
                None => continue 'offsets,
            }
        }
        let p = long.slice(q, off, pos);
        if !p.is_closed_walk() || alg.resolution_degree(&p) != Some(2 * n) {
            continue;
        }
        debug_assert_eq!(relation_factors(alg, &p).map(|f| f.len()), Some(n));
        if is_extending(alg, &p, limits)? && !members.contains(&p) {
            c2 = Condition::fail(r(&p));
            break;
        }
    }

    let off_walk: Vec<&Path> = alg.relations().iter().filter(|rel| !lies_on(rel, w)).collect();
    let mut c3 = Condition::ok();
    let mut c4 = Condition::ok();
    for s in delta_u {
        for rel in &off_walk {
            if c3.holds {
                if let Some(p) = s.tail_set.iter().find(|p| maximally_left_overlaps(alg, rel, p)) {
                    c3 = Condition::fail(format!("{} overlaps tail {} of {}", r(rel), r(p), r(&s.walk)));
                }
            }
            if c4.holds {
                if let Some(p) = s.beginning_set.iter().find(|p| maximally_right_overlaps(alg, p, rel)) {
                    c4 = Condition::fail(format!("beginning {} of {} overlaps {}", r(p), r(&s.walk), r(rel)));
                }
            }
        }
    }
    Ok(vec![c1, c2, c3, c4])
}

/// Split of a central element along classes and nilpotence.
#[derive(Debug, Clone)]
pub struct CentreCandidate {
    pub degree: usize,
    /// per class index: the common coefficient of its non-nilpotent support
    pub alpha: BTreeMap<usize, Scalar>,
    pub non_nilpotent: BTreeMap<usize, Vec<Path>>,
    pub nilpotent: ExtElement,
}

impl CentreCandidate {
    /// Nonzero image modulo nilpotent elements.
    pub fn survives(&self) -> bool {
        !self.alpha.is_empty()
    }
}

fn class_of(classes: &[ClassData], p: &Path) -> Option<usize> {
    classes.iter().position(|c| !c.delta.is_empty() && c.class.contains(p))
}

/// Non-nilpotent members of R^d sorted by class (`None` for walks outside all classes).
fn non_nilpotent_by_class(
    alg: &MonomialAlgebra,
    classes: &[ClassData],
    members: &[Path],
    limits: &Limits,
) -> Result<BTreeMap<Option<usize>, Vec<Path>>, CentreError> {
    let mut out: BTreeMap<Option<usize>, Vec<Path>> = BTreeMap::new();
    for p in members {
        if p.is_closed_walk() && !alg.is_nilpotent_basis(p, limits)?.0 {
            out.entry(class_of(classes, p)).or_default().push(p.clone());
        }
    }
    Ok(out)
}

/// Splits a (D-)central element into classes with equal coefficients plus a nilpotent rest.
pub fn split_modulo_nilpotence(
    alg: &MonomialAlgebra,
    classes: &[ClassData],
    z: &ExtElement,
    limits: &Limits,
) -> Result<CentreCandidate, CentreError> {
    let mut out =
        CentreCandidate { degree: z.degree, alpha: BTreeMap::new(), non_nilpotent: BTreeMap::new(), nilpotent: ExtElement::zero(z.degree) };
    if z.degree == 0 {
        return Ok(out);
    }
    let mut basis = ResolutionBasis::new(alg, *limits);
    let members = basis.members(z.degree)?.to_vec();
    let groups = non_nilpotent_by_class(alg, classes, &members, limits)?;
    let mut covered = BTreeSet::new();
    for (class, walks) in &groups {
        let coeffs: Vec<Option<&Scalar>> = walks.iter().map(|p| z.terms.get(p)).collect();
        if coeffs.iter().all(|c| c.is_none()) {
            continue;
        }
        let class = class.ok_or_else(|| {
            CentreError::StructureViolation(format!("non-nilpotent support {} outside every class", alg.render(&walks[0])))
        })?;
        let first = coeffs[0].cloned();
        if coeffs.iter().any(|c| c.cloned() != first) || first.is_none() {
            return Err(CentreError::StructureViolation(format!(
                "unequal coefficients on the non-nilpotent support of class {}",
                alg.render(&classes[class].class.representative)
            )));
        }
        out.alpha.insert(class, first.unwrap().clone());
        out.non_nilpotent.insert(class, walks.clone());
        covered.extend(walks.iter().cloned());
    }
    for (p, c) in &z.terms {
        if !covered.contains(p) {
            out.nilpotent.add_term(p.clone(), c.clone());
        }
    }
    Ok(out)
}

/// Minimal generators of the numerical semigroup generated by `observed`, and its Frobenius number
/// when the generators are coprime (`-1` when 1 is a generator).
pub fn degree_semigroup_generators(observed: &[usize]) -> Result<(Vec<usize>, Option<i64>), CentreError> {
    let mut xs: Vec<usize> = observed.iter().copied().filter(|&x| x > 0).collect();
    if xs.is_empty() {
        return Err(CentreError::EmptyInput);
    }
    xs.sort();
    xs.dedup();
    let top = *xs.last().unwrap();
    let mut gens: Vec<usize> = Vec::new();
    let mut reach = vec![false; top + 1];
    reach[0] = true;
    for &x in &xs {
        if reach[x] {
            continue;
        }
        gens.push(x);
        for v in x..=top {
            if reach[v - x] {
                reach[v] = true;
            }
        }
    }
    let g = gens.iter().fold(0, |a, &b| gcd(a, b));
    if g != 1 {
        return Ok((gens, None));
    }
    if gens[0] == 1 {
        return Ok((gens, Some(-1)));
    }
    let (a, b) = (gens[0], *gens.last().unwrap());
    let limit = (a - 1) * (b - 1) + a;
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for v in 1..=limit {
        reach[v] = gens.iter().any(|&x| x <= v && reach[v - x]);
    }
    let frob = (0..=limit).rev().find(|&v| !reach[v]).map(|v| v as i64);
    Ok((gens, frob))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub degree: usize,
    /// classes with a certified non-nilpotent central element in this degree
    pub certified: Vec<usize>,
    /// classes with a non-nilpotent D-central element found by the oracle
    pub d_central: Vec<usize>,
    pub dimension: usize,
    /// oracle dimension of the D-central space, when run
    pub oracle_dimension: Option<usize>,
    pub check_bound: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub classes: Vec<ClassData>,
    pub degrees: Vec<DegreeEntry>,
    pub semigroups: Vec<Option<(Vec<usize>, Option<i64>)>>,
    pub krull_dimension: usize,
    /// disagreements between the characterization and the oracle
    pub disagreements: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct QuotientOptions {
    pub degree_bound: usize,
    pub validation_bound: usize,
    /// check bound for the oracle; `None` means `2 rl + degree`
    pub check_bound: Option<usize>,
}

/// Dimensions of `Z^n / N^n` per class for `n <= degree_bound`.
pub fn quotient_report(alg: &MonomialAlgebra, opts: QuotientOptions, limits: &Limits) -> Result<QuotientReport, CentreError> {
    let field = alg.field();
    let classes = class_data(alg, limits)?;
    let mut degrees = Vec::new();
    let mut disagreements = Vec::new();
    let mut observed: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    let char2 = alg.characteristic() == 2;
    for d in 1..=opts.degree_bound {
        if d % 2 == 1 && !char2 {
            continue;
        }
        let certified: Vec<usize> = (0..classes.len())
            .filter(|&i| classes[i].certified() && d % classes[i].candidate_degree().unwrap() == 0)
            .collect();
        let mut d_central = Vec::new();
        let mut oracle_dimension = None;
        let mut check = None;
        if d <= opts.validation_bound {
            let bound = opts.check_bound.unwrap_or_else(|| default_check_bound(alg, d));
            check = Some(bound);
            let space = brute_force_centre(alg, d, bound, limits)?;
            oracle_dimension = Some(space.len());
            let mut basis = ResolutionBasis::new(alg, *limits);
            let members = basis.members(d)?.to_vec();
            let groups = non_nilpotent_by_class(alg, &classes, &members, limits)?;
            for (class, walks) in &groups {
                let proj: Vec<Vec<Scalar>> = space
                    .iter()
                    .map(|z| walks.iter().map(|p| z.terms.get(p).cloned().unwrap_or_else(|| field.zero())).collect())
                    .collect();
                let rk = if proj.is_empty() { 0 } else { rank(field, &proj) };
                if rk == 0 {
                    continue;
                }
                match class {
                    Some(c) => {
                        if rk > 1 {
                            disagreements.push(format!("degree {d}: class {c} has a {rk}-dimensional non-nilpotent part"));
                        }
                        for v in &proj {
                            if v.iter().any(|x| x != &v[0]) {
                                disagreements.push(format!("degree {d}: class {c} has unequal coefficients"));
                                break;
                            }
                        }
                        d_central.push(*c);
                    }
                    None => disagreements.push(format!(
                        "degree {d}: D-central non-nilpotent support {} outside every class",
                        alg.render(&walks[0])
                    )),
                }
            }
            for &c in &certified {
                if !d_central.contains(&c) {
                    disagreements.push(format!("degree {d}: certified class {c} missing from the oracle space"));
                }
                let z = classes[c].candidate(field, d / classes[c].candidate_degree().unwrap()).unwrap();
                if let Some(g) = centrality_witness(alg, &z, bound, limits)? {
                    disagreements.push(format!("degree {d}: certified class {c} fails against {}", alg.render(&g)));
                }
            }
        }
        let mut all: BTreeSet<usize> = certified.iter().copied().collect();
        all.extend(d_central.iter().copied());
        for &c in &all {
            observed[c].push(d);
        }
        degrees.push(DegreeEntry { degree: d, dimension: all.len(), certified, d_central, oracle_dimension, check_bound: check });
    }
    let semigroups = observed
        .iter()
        .map(|o| if o.is_empty() { None } else { degree_semigroup_generators(o).ok() })
        .collect::<Vec<_>>();
    let krull_dimension = usize::from(semigroups.iter().any(|s| s.is_some()) || classes.iter().any(|c| c.certified()));
    Ok(QuotientReport { classes, degrees, semigroups, krull_dimension, disagreements })
}

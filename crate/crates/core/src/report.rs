//! JSON reports. Field order and list order are fixed, so equal inputs give identical bytes.

use serde::Serialize;

use crate::algebra::MonomialAlgebra;
use crate::centre::{brute_force_centre, ClassData, CentreError, QuotientReport};
use crate::hochschild::{build_chi, verify_cocycle, CochainChi, CocycleFailure, HochschildError};
use crate::overlap::{BasisError, Limits, Link, ResolutionBasis};
use crate::quiver::Path;
use crate::walks::StabilityReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraSummary {
    pub vertices: usize,
    pub arrows: usize,
    pub relations: Vec<String>,
    pub characteristic: u64,
    pub radical_length: usize,
    pub dimension: String,
}

impl AlgebraSummary {
    pub fn new(alg: &MonomialAlgebra) -> Self {
        let q = alg.quiver();
        AlgebraSummary {
            vertices: q.num_vertices(),
            arrows: q.num_arrows(),
            relations: alg.relations().iter().map(|r| alg.render(r)).collect(),
            characteristic: alg.characteristic(),
            radical_length: alg.radical_length(),
            dimension: alg.dimension().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkEntry {
    pub relation: String,
    pub start: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RnEntry {
    pub path: String,
    pub tail: String,
    pub beginning: String,
    pub left: Vec<LinkEntry>,
    pub right: Vec<LinkEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RnDegree {
    pub degree: usize,
    pub members: Vec<RnEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RnReport {
    pub schema_version: u32,
    pub algebra: AlgebraSummary,
    pub degrees: Vec<RnDegree>,
}

fn links(alg: &MonomialAlgebra, ls: &[Link]) -> Vec<LinkEntry> {
    ls.iter().map(|l| LinkEntry { relation: alg.render(&alg.relations()[l.rel]), start: l.start }).collect()
}

pub fn rn_report(alg: &MonomialAlgebra, max_degree: usize, limits: &Limits) -> Result<RnReport, BasisError> {
    let mut basis = ResolutionBasis::new(alg, *limits);
    let mut degrees = Vec::new();
    for n in 0..=max_degree {
        let members = basis
            .records(n)?
            .into_iter()
            .map(|r| RnEntry {
                path: alg.render(&r.path),
                tail: alg.render(&r.tail),
                beginning: alg.render(&r.beginning),
                left: links(alg, &r.left),
                right: links(alg, &r.right),
            })
            .collect();
        degrees.push(RnDegree { degree: n, members });
    }
    Ok(RnReport { schema_version: SCHEMA_VERSION, algebra: AlgebraSummary::new(alg), degrees })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionEntry {
    pub condition: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaEntry {
    pub walk: String,
    pub relations: usize,
    pub stabilizes_at: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiEntry {
    pub degree: usize,
    pub stabilized: bool,
    pub obstruction: Option<String>,
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub index: usize,
    pub representative: String,
    pub members: Vec<String>,
    pub delta: Vec<DeltaEntry>,
    pub m: usize,
    pub u: usize,
    pub n: usize,
    pub candidate_degree: Option<usize>,
    pub candidate: Vec<String>,
    pub conditions: Vec<ConditionEntry>,
    pub certified: bool,
    pub stability: Vec<StabilityReport>,
    pub generators: Option<Vec<usize>>,
    pub frobenius: Option<i64>,
    pub cocycles: Vec<ChiEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralElement {
    pub degree: usize,
    pub class: usize,
    pub label: String,
    pub check_bound: Option<usize>,
    /// basis elements of the non-nilpotent part, all with coefficient one
    pub non_nilpotent_part: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub quotient_dimension: usize,
    pub oracle_dimension: Option<usize>,
    pub nilpotent_dimension: Option<usize>,
    pub check_bound: Option<usize>,
    pub oracle_basis: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentreReport {
    pub schema_version: u32,
    pub algebra: AlgebraSummary,
    pub classes: Vec<ClassEntry>,
    pub central_elements: Vec<CentralElement>,
    pub degrees: Vec<DegreeSummary>,
    pub krull_dimension: usize,
    pub agreement: Option<bool>,
    pub disagreements: Vec<String>,
}

fn element_strings(alg: &MonomialAlgebra, z: &crate::ext::ExtElement) -> Vec<String> {
    z.terms
        .iter()
        .map(|(p, c)| if c.is_one() { alg.render(p) } else { format!("{c}*{}", alg.render(p)) })
        .collect()
}

fn render_all(alg: &MonomialAlgebra, ps: &[Path]) -> Vec<String> {
    ps.iter().map(|p| alg.render(p)).collect()
}

/// Builds the centre report; with `brute` the oracle basis is listed per degree.
pub fn centre_report(
    alg: &MonomialAlgebra,
    q: &QuotientReport,
    brute: bool,
    limits: &Limits,
) -> Result<CentreReport, CentreError> {
    let field = alg.field();
    let mut classes = Vec::new();
    let mut central_elements = Vec::new();
    for (i, c) in q.classes.iter().enumerate() {
        let (generators, frobenius) = match &q.semigroups[i] {
            Some((g, f)) => (Some(g.clone()), *f),
            None => (None, None),
        };
        let mut cocycles = Vec::new();
        for d in q.degrees.iter().filter(|d| d.degree % 2 == 0 && (d.certified.contains(&i) || d.d_central.contains(&i))) {
            cocycles.push(chi_entry(alg, c, d.degree, limits)?);
        }
        classes.push(class_entry(alg, i, c, generators, frobenius, cocycles));
        for d in &q.degrees {
            if d.certified.contains(&i) {
                let k = d.degree / c.candidate_degree().unwrap();
                let z = c.candidate(field, k).unwrap();
                central_elements.push(CentralElement {
                    degree: d.degree,
                    class: i,
                    label: "central (certified)".into(),
                    check_bound: None,
                    non_nilpotent_part: element_strings(alg, &z),
                });
            } else if d.d_central.contains(&i) {
                let support = crate::hochschild::class_support(alg, c, d.degree, limits).map_err(hh_to_centre)?;
                central_elements.push(CentralElement {
                    degree: d.degree,
                    class: i,
                    label: "D-central".into(),
                    check_bound: d.check_bound,
                    non_nilpotent_part: render_all(alg, &support),
                });
            }
        }
    }
    central_elements.sort_by_key(|e| (e.degree, e.class));
    let mut degrees = Vec::new();
    for d in &q.degrees {
        let oracle_basis = if brute && d.oracle_dimension.is_some() {
            let space = brute_force_centre(alg, d.degree, d.check_bound.unwrap(), limits)?;
            Some(space.iter().map(|z| element_strings(alg, z)).collect())
        } else {
            None
        };
        degrees.push(DegreeSummary {
            degree: d.degree,
            quotient_dimension: d.dimension,
            oracle_dimension: d.oracle_dimension,
            nilpotent_dimension: d.oracle_dimension.map(|o| o.saturating_sub(d.d_central.len())),
            check_bound: d.check_bound,
            oracle_basis,
        });
    }
    Ok(CentreReport {
        schema_version: SCHEMA_VERSION,
        algebra: AlgebraSummary::new(alg),
        classes,
        central_elements,
        degrees,
        krull_dimension: q.krull_dimension,
        agreement: brute.then_some(q.disagreements.is_empty()),
        disagreements: q.disagreements.clone(),
    })
}

fn chi_entry(alg: &MonomialAlgebra, c: &ClassData, degree: usize, limits: &Limits) -> Result<ChiEntry, CentreError> {
    Ok(match build_chi(alg, c, degree, limits) {
        Ok(chi) => {
            let ok = verify_cocycle(alg, &chi, limits).map_err(hh_to_centre)?.is_none();
            ChiEntry { degree, stabilized: true, obstruction: None, verified: Some(ok) }
        }
        Err(e @ HochschildError::NotStabilized(..)) => {
            ChiEntry { degree, stabilized: false, obstruction: Some(e.to_string()), verified: None }
        }
        Err(e) => return Err(hh_to_centre(e)),
    })
}

fn hh_to_centre(e: HochschildError) -> CentreError {
    match e {
        HochschildError::Ext(e) => CentreError::Ext(e),
        other => CentreError::StructureViolation(other.to_string()),
    }
}

fn class_entry(
    alg: &MonomialAlgebra,
    index: usize,
    c: &ClassData,
    generators: Option<Vec<usize>>,
    frobenius: Option<i64>,
    cocycles: Vec<ChiEntry>,
) -> ClassEntry {
    ClassEntry {
        index,
        representative: alg.render(&c.class.representative),
        members: render_all(alg, &c.class.members),
        delta: c
            .delta
            .iter()
            .map(|d| DeltaEntry { walk: alg.render(&d.walk), relations: d.relations, stabilizes_at: d.u })
            .collect(),
        m: c.m,
        u: c.u,
        n: c.n,
        candidate_degree: c.candidate_degree(),
        candidate: c.delta_u.iter().map(|s| alg.render(&s.walk)).collect(),
        conditions: c
            .conditions
            .iter()
            .enumerate()
            .map(|(k, x)| ConditionEntry { condition: k + 1, holds: x.holds, witness: x.witness.clone() })
            .collect(),
        certified: c.certified(),
        stability: c.delta_u.iter().map(|s| s.report(alg)).collect(),
        generators,
        frobenius,
        cocycles,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    pub schema_version: u32,
    pub algebra: AlgebraSummary,
    pub class: usize,
    pub degree: usize,
    pub source: String,
    pub cochain: serde_json::Value,
    pub verified: bool,
    pub witness: Option<CocycleFailure>,
}

pub fn cocycle_report(
    alg: &MonomialAlgebra,
    class: usize,
    chi: &CochainChi,
    source: &str,
    limits: &Limits,
) -> Result<CocycleReport, HochschildError> {
    let witness = verify_cocycle(alg, chi, limits)?;
    Ok(CocycleReport {
        schema_version: SCHEMA_VERSION,
        algebra: AlgebraSummary::new(alg),
        class,
        degree: chi.degree,
        source: source.into(),
        cochain: chi.to_json(alg),
        verified: witness.is_none(),
        witness,
    })
}

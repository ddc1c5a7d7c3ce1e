use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use monoext::centre::{class_data, quotient_report, CentreError, QuotientOptions};
use monoext::hochschild::{build_chi, CochainChi, HochschildError};
use monoext::report::{centre_report, cocycle_report, rn_report, CentreReport, CocycleReport, RnReport};
use monoext::{AlgebraFile, BasisError, ExtError, Limits, MonomialAlgebra, WalkError};

#[derive(Parser)]
#[command(name = "monoext", version, about = "Ext algebras and graded centres of monomial path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// algebra file
    #[arg(long)]
    input: PathBuf,
    /// field characteristic; must agree with the file's `char` line if it has one
    #[arg(long = "char")]
    characteristic: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the sets R^0 .. R^N
    Rn {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: usize,
    },
    /// Classes, central elements and the quotient by nilpotent elements
    Centre {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: usize,
        /// centrality is tested against basis elements up to this degree (default 2 rl + degree)
        #[arg(long)]
        check_bound: Option<usize>,
        /// highest degree cross-checked against the linear-algebra oracle (default max degree)
        #[arg(long)]
        validation_bound: Option<usize>,
        /// also list oracle bases and the agreement verdict
        #[arg(long)]
        brute: bool,
    },
    /// Build or load the cochain of a central element and check the cocycle condition
    HhChi {
        #[command(flatten)]
        common: Common,
        #[arg(long = "class")]
        class: usize,
        #[arg(long)]
        degree: usize,
        /// JSON cochain to verify instead of the built one
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

impl From<BasisError> for Failure {
    fn from(e: BasisError) -> Self {
        fail(3, e)
    }
}

impl From<ExtError> for Failure {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::DegreeOverflow(..) | ExtError::TooLarge(..) => fail(3, e),
            _ => fail(1, e),
        }
    }
}

impl From<WalkError> for Failure {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::Ext(e) => e.into(),
            _ => fail(1, e),
        }
    }
}

impl From<CentreError> for Failure {
    fn from(e: CentreError) -> Self {
        match e {
            CentreError::Ext(e) => e.into(),
            CentreError::Walk(e) => e.into(),
            _ => fail(1, e),
        }
    }
}

impl From<HochschildError> for Failure {
    fn from(e: HochschildError) -> Self {
        match e {
            HochschildError::Ext(e) => e.into(),
            HochschildError::NotStabilized(..) => fail(4, e),
            _ => fail(2, e),
        }
    }
}

fn load(common: &Common) -> Result<MonomialAlgebra, Failure> {
    let name = common.input.display();
    let text = std::fs::read_to_string(&common.input).map_err(|e| fail(2, format!("{name}: {e}")))?;
    let mut file = AlgebraFile::parse(&text).map_err(|e| fail(2, format!("{name}: {e}")))?;
    if let Some(c) = common.characteristic {
        match file.characteristic() {
            Some(f) if f != c => {
                return Err(fail(2, format!("{name}: --char {c} conflicts with `char {f}` in the file")));
            }
            _ => file.set_characteristic(c),
        }
    }
    file.to_algebra().map_err(|e| fail(2, format!("{name}: {e}")))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn rn_text(r: &RnReport) -> String {
    let mut out = String::new();
    let a = &r.algebra;
    writeln!(out, "rl = {}, dim = {}, {} relations", a.radical_length, a.dimension, a.relations.len()).unwrap();
    for d in &r.degrees {
        writeln!(out, "R^{} ({}):", d.degree, d.members.len()).unwrap();
        for m in &d.members {
            let seq = |ls: &[monoext::report::LinkEntry]| {
                ls.iter().map(|l| l.relation.replace(' ', "")).collect::<Vec<_>>().join(", ")
            };
            if d.degree >= 2 {
                writeln!(
                    out,
                    "  {}  tail {}  beginning {}  left ({})  right ({})",
                    m.path,
                    m.tail,
                    m.beginning,
                    seq(&m.left),
                    seq(&m.right)
                )
                .unwrap();
            } else {
                writeln!(out, "  {}", m.path).unwrap();
            }
        }
    }
    out
}

fn centre_text(r: &CentreReport) -> String {
    let mut out = String::new();
    for c in &r.classes {
        writeln!(out, "class {}: {} ({} tight walks)", c.index, c.representative, c.members.len()).unwrap();
        if c.delta.is_empty() {
            writeln!(out, "  no extending relation simple walk").unwrap();
            continue;
        }
        writeln!(out, "  M = {}, u = {}, N = {}, candidate degree {}", c.m, c.u, c.n, c.candidate_degree.unwrap())
            .unwrap();
        for k in &c.conditions {
            let w = k.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default();
            writeln!(out, "  condition {}: {}{w}", k.condition, if k.holds { "holds" } else { "fails" }).unwrap();
        }
        writeln!(out, "  certified: {}", c.certified).unwrap();
        if let Some(g) = &c.generators {
            writeln!(out, "  generator degrees {:?}", g).unwrap();
        }
        for x in &c.cocycles {
            match (&x.obstruction, x.verified) {
                (Some(o), _) => writeln!(out, "  degree {}: stability obstruction: {o}", x.degree).unwrap(),
                (None, Some(v)) => writeln!(out, "  degree {}: cochain verified {v}", x.degree).unwrap(),
                _ => {}
            }
        }
    }
    for e in &r.central_elements {
        let bound = e.check_bound.map(|d| format!(", D = {d}")).unwrap_or_default();
        writeln!(out, "degree {}: {}{bound} in class {}: {}", e.degree, e.label, e.class, e.non_nilpotent_part.join(" + "))
            .unwrap();
    }
    let dims: Vec<String> = r.degrees.iter().map(|d| format!("{}:{}", d.degree, d.quotient_dimension)).collect();
    writeln!(out, "quotient dimensions {}", dims.join(" ")).unwrap();
    let nil: Vec<String> = r
        .degrees
        .iter()
        .filter(|d| d.nilpotent_dimension.unwrap_or(0) > 0)
        .map(|d| d.degree.to_string())
        .collect();
    if !nil.is_empty() {
        writeln!(out, "nilpotent central elements in degrees {}", nil.join(", ")).unwrap();
    }
    writeln!(out, "Krull dimension {}", r.krull_dimension).unwrap();
    if let Some(a) = r.agreement {
        writeln!(out, "oracle agreement: {a}").unwrap();
    }
    for d in &r.disagreements {
        writeln!(out, "disagreement: {d}").unwrap();
    }
    out
}

fn cocycle_text(r: &CocycleReport) -> String {
    match &r.witness {
        None => format!("degree {} cochain ({}) is a cocycle\n", r.degree, r.source),
        Some(w) => format!("degree {} cochain ({}) fails on {}: value {}\n", r.degree, r.source, w.generator, w.value),
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let limits = Limits::default();
    match cli.command {
        Command::Rn { common, max_degree } => {
            let alg = load(&common)?;
            let r = rn_report(&alg, max_degree, &limits)?;
            Ok((if common.json { json(&r) } else { rn_text(&r) }, 0))
        }
        Command::Centre { common, max_degree, check_bound, validation_bound, brute } => {
            let alg = load(&common)?;
            let opts = QuotientOptions {
                degree_bound: max_degree,
                validation_bound: validation_bound.unwrap_or(max_degree),
                check_bound,
            };
            let q = quotient_report(&alg, opts, &limits)?;
            let r = centre_report(&alg, &q, brute, &limits)?;
            let code = if brute && !q.disagreements.is_empty() { 5 } else { 0 };
            Ok((if common.json { json(&r) } else { centre_text(&r) }, code))
        }
        Command::HhChi { common, class, degree, cochain } => {
            let alg = load(&common)?;
            if degree == 0 || degree % 2 == 1 {
                return Err(fail(2, format!("degree {degree} must be even and positive")));
            }
            let (chi, source) = match cochain {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
                    let chi = CochainChi::from_json(&alg, &text).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
                    if chi.degree != degree {
                        return Err(fail(2, format!("cochain has degree {}, expected {degree}", chi.degree)));
                    }
                    (chi, "file")
                }
                None => {
                    let classes = class_data(&alg, &limits)?;
                    let c = classes
                        .get(class)
                        .ok_or_else(|| fail(2, format!("class {class} out of range (0..{})", classes.len())))?;
                    (build_chi(&alg, c, degree, &limits)?, "built")
                }
            };
            let r = cocycle_report(&alg, class, &chi, source, &limits)?;
            let code = if r.verified { 0 } else { 5 };
            Ok((if common.json { json(&r) } else { cocycle_text(&r) }, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

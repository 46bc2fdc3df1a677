//! Command-line front end: build the constructions, run verification
//! suites, compute homotopy and cohomology groups, and emit reproducible
//! JSON or text reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use emforge::cohomology::{group_cohomology, secondary_cohomology, CohomologyError};
use emforge::cyclicmod::{linearization_map, CmFamily, SkFamily};
use emforge::em::{crosscheck_specializations, Kan, Kg1};
use emforge::family::{
    MatrixSimplicialFamily, SimplicialFamily, Strategy, VerificationReport, VerifyError,
};
use emforge::finab::{enumerate_elements, group_from_spec, FinAbGroup};
use emforge::hopf::{algebra_from_spec, verify_hopf_axioms};
use emforge::moore::{homotopy_groups, MooreError};
use emforge::tablegroup::TableGroup;
use emforge::verify::{
    cyclic_relations, simplicial_relations, symmetric_relations, verify_elementwise, verify_matrix,
};

const DEFAULT_CAP: u128 = 1 << 20;

#[derive(Parser)]
#[command(name = "emforge", version, about = "Explicit Eilenberg-MacLane constructions: verification and computation")]
struct Cli {
    /// Cap on exhaustive enumeration and cochain level sizes
    #[arg(long, global = true, env = "EMFORGE_CAP")]
    cap: Option<u128>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Homotopy groups of K(A,n) through level qmax
    Pi {
        /// Coefficient group, e.g. "Z/2" or "Z/2 x Z/4"
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        qmax: usize,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Compute cohomology groups
    Cohomology {
        #[command(subcommand)]
        target: CohomologyTarget,
    },
}

#[derive(Args)]
struct SuiteArgs {
    /// Which construction: kan | ka2 | kg1 | sk | cm
    #[arg(long)]
    construction: Option<String>,
    /// Finite abelian group spec (kan/ka2) or multiplication-table group
    /// name (kg1): "Z/4", "Z/2 x Z/2", "S3", "D4", "Q8"
    #[arg(long)]
    group: Option<String>,
    /// Hopf algebra spec for sk/cm, e.g. "k[Z/2]" or "k[S3]"
    #[arg(long)]
    algebra: Option<String>,
    /// Degree n for the general construction
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    qmax: usize,
    /// Use seeded sampling with this many samples per relation instance
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// The five simplicial identity families
    Simplicial(SuiteArgs),
    /// The cyclic relation suite, including tau^(q+1) = id
    Cyclic(SuiteArgs),
    /// Coxeter relations plus cycle-equals-tau for the symmetric action
    Symmetric(SuiteArgs),
    /// Hopf algebra axioms on structure constants
    HopfAxioms {
        #[arg(long)]
        algebra: String,
    },
    /// General-formula matrices against the piecewise low-degree tables
    Crosscheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        qmax: usize,
    },
    /// Commuting squares between the group-valued and tensor constructions
    Linearization {
        #[arg(long)]
        group: String,
        #[arg(long)]
        qmax: usize,
    },
}

#[derive(Subcommand)]
enum CohomologyTarget {
    /// Group cohomology with trivial action
    Group {
        #[arg(long)]
        g: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Secondary cohomology from the degree-2 construction
    Secondary {
        #[arg(long)]
        a: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        nmax: usize,
    },
}

/// Error carrying its process exit code: 2 usage/parse, 3 resource cap.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    fn cap(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::EnumerationCap { .. } => CliError::cap(e.to_string()),
            VerifyError::MissingStructure { .. } => CliError::parse(e.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::Cap { .. } => CliError::cap(e.to_string()),
            other => CliError::parse(other.to_string()),
        }
    }
}

impl From<MooreError> for CliError {
    fn from(e: MooreError) -> Self {
        match e {
            MooreError::Cap { .. } => CliError::cap(e.to_string()),
            other => CliError::parse(other.to_string()),
        }
    }
}

fn pretty_group(g: &FinAbGroup) -> String {
    let c = g.canonical_form();
    if c.is_trivial() {
        "1".to_string()
    } else {
        c.moduli()
            .iter()
            .map(|m| format!("Z/{m}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn parse_ab(spec: &str) -> Result<FinAbGroup, CliError> {
    group_from_spec(spec).map_err(|e| CliError::parse(format!("bad group spec '{spec}': {e}")))
}

fn parse_table(spec: &str) -> Result<TableGroup, CliError> {
    TableGroup::from_spec(spec).map_err(|e| CliError::parse(format!("bad group spec '{spec}': {e}")))
}

fn strategy_for(args: &SuiteArgs, cap: u128) -> Strategy {
    match args.samples {
        Some(samples) => Strategy::Sampled { samples, seed: args.seed },
        None => Strategy::Exhaustive { cap },
    }
}

/// Check linearize(map(x)) = map(linearize(x)) for every face,
/// degeneracy, and tau of the degree-2 construction, exhaustively.
fn verify_linearization(
    a: &FinAbGroup,
    q_max: usize,
    cap: u128,
) -> Result<VerificationReport, CliError> {
    use emforge::family::Failure;
    let kan = Kan::new(a.clone(), 2);
    let sk = SkFamily::new(emforge::cyclicmod::linearization_algebra(a))
        .map_err(|e| CliError::parse(e.to_string()))?;
    let mut failures = Vec::new();
    let mut evaluations = 0u64;
    let mut relations = 0u64;
    for q in 0..=q_max {
        let group = kan.level_group(q);
        let elements = enumerate_elements(&group, cap).map_err(|e| {
            CliError::cap(format!("level {q} of K(A,2) exceeds the cap: {e}"))
        })?;
        let mut checks: Vec<(String, Box<dyn Fn(&emforge::finab::AbElement) -> bool>)> = Vec::new();
        for i in 0..=q {
            if q >= 1 {
                let hom = kan.face_hom(q, i);
                let a2 = a.clone();
                let sk2 = &sk;
                checks.push((
                    format!("face({q},{i})"),
                    Box::new(move |x| {
                        sk2.face(q, i, &linearization_map(&a2, q, x))
                            == linearization_map(&a2, q - 1, &hom.apply(x))
                    }),
                ));
            }
            let hom = kan.degeneracy_hom(q, i);
            let a2 = a.clone();
            let sk2 = &sk;
            checks.push((
                format!("degeneracy({q},{i})"),
                Box::new(move |x| {
                    sk2.degeneracy(q, i, &linearization_map(&a2, q, x))
                        == linearization_map(&a2, q + 1, &hom.apply(x))
                }),
            ));
        }
        let hom = kan.cyclic_hom(q);
        let a2 = a.clone();
        let sk2 = &sk;
        checks.push((
            format!("cyclic({q})"),
            Box::new(move |x| {
                sk2.cyclic(q, &linearization_map(&a2, q, x))
                    == linearization_map(&a2, q, &hom.apply(x))
            }),
        ));
        for (name, check) in &checks {
            relations += 1;
            for x in &elements {
                evaluations += 1;
                if !check(x) {
                    failures.push(Failure {
                        relation: format!("linearization_{name}"),
                        level: q,
                        indices: vec![],
                        witness: format!("{x:?}"),
                        lhs: "construction map after linearization".to_string(),
                        rhs: "linearization after construction map".to_string(),
                    });
                    break;
                }
            }
        }
    }
    Ok(VerificationReport {
        suite: "linearization".to_string(),
        family: format!("K(A,2) vs 2K(k[A]) over {}", pretty_group(a)),
        q_max,
        strategy: Strategy::Exhaustive { cap },
        relations_checked: relations,
        evaluations,
        failures,
    })
}

fn run_verify(target: &VerifyTarget, cap: u128) -> Result<(Value, bool, Value), CliError> {
    let report: VerificationReport = match target {
        VerifyTarget::Simplicial(args) | VerifyTarget::Cyclic(args) => {
            let cyclic = matches!(target, VerifyTarget::Cyclic(_));
            let (suite, q_max) = if cyclic {
                ("cyclic", args.qmax)
            } else {
                ("simplicial", args.qmax)
            };
            let rels = if cyclic {
                cyclic_relations(q_max)
            } else {
                simplicial_relations(q_max)
            };
            let construction = args
                .construction
                .as_deref()
                .ok_or_else(|| CliError::parse("--construction is required"))?;
            match construction {
                "kan" | "ka2" => {
                    let n = if construction == "ka2" {
                        2
                    } else {
                        args.n.ok_or_else(|| CliError::parse("--n is required for kan"))?
                    };
                    if cyclic && n != 2 {
                        return Err(CliError::parse("cyclic structure requires n = 2"));
                    }
                    let group = args
                        .group
                        .as_deref()
                        .ok_or_else(|| CliError::parse("--group is required"))?;
                    let family = Kan::new(parse_ab(group)?, n);
                    verify_matrix(suite, &family, &rels, q_max)
                }
                "kg1" => {
                    let group = args
                        .group
                        .as_deref()
                        .ok_or_else(|| CliError::parse("--group is required"))?;
                    let family = Kg1::new(parse_table(group)?);
                    verify_elementwise(suite, &family, &rels, q_max, strategy_for(args, cap))?
                }
                "sk" => {
                    let algebra = args
                        .algebra
                        .as_deref()
                        .ok_or_else(|| CliError::parse("--algebra is required for sk"))?;
                    let h = algebra_from_spec(algebra)
                        .map_err(|e| CliError::parse(e.to_string()))?;
                    let family = SkFamily::new(h).map_err(|e| CliError::parse(e.to_string()))?;
                    verify_elementwise(suite, &family, &rels, q_max, strategy_for(args, cap))?
                }
                "cm" => {
                    let algebra = args
                        .algebra
                        .as_deref()
                        .ok_or_else(|| CliError::parse("--algebra is required for cm"))?;
                    let h = algebra_from_spec(algebra)
                        .map_err(|e| CliError::parse(e.to_string()))?;
                    let family =
                        CmFamily::epsilon_one(h).map_err(|e| CliError::parse(e.to_string()))?;
                    verify_elementwise(suite, &family, &rels, q_max, strategy_for(args, cap))?
                }
                other => return Err(CliError::parse(format!("unknown construction '{other}'"))),
            }
        }
        VerifyTarget::Symmetric(args) => {
            let algebra = args
                .algebra
                .as_deref()
                .ok_or_else(|| CliError::parse("--algebra is required for symmetric"))?;
            let h = algebra_from_spec(algebra).map_err(|e| CliError::parse(e.to_string()))?;
            let family = CmFamily::epsilon_one(h).map_err(|e| CliError::parse(e.to_string()))?;
            let rels = symmetric_relations(args.qmax, true);
            verify_elementwise("symmetric", &family, &rels, args.qmax, strategy_for(args, cap))?
        }
        VerifyTarget::HopfAxioms { algebra } => {
            let h = algebra_from_spec(algebra).map_err(|e| CliError::parse(e.to_string()))?;
            verify_hopf_axioms(&h)
        }
        VerifyTarget::Crosscheck { group, qmax } => {
            crosscheck_specializations(&parse_ab(group)?, *qmax)
        }
        VerifyTarget::Linearization { group, qmax } => {
            verify_linearization(&parse_ab(group)?, *qmax, cap)?
        }
    };
    let passed = report.passed();
    let text = json!(format!(
        "{} suite on {}: {} relation instances, {} evaluations, {} failures -> {}",
        report.suite,
        report.family,
        report.relations_checked,
        report.evaluations,
        report.failures.len(),
        if passed { "PASS" } else { "FAIL" }
    ));
    Ok((serde_json::to_value(&report).expect("report serializes"), passed, text))
}

fn run(cli: &Cli) -> Result<(Value, u8), CliError> {
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    if cap == 0 {
        return Err(CliError::parse("--cap must be positive"));
    }
    let start = std::time::Instant::now();
    let (command, params, result, text, code): (&str, Value, Value, Value, u8) = match &cli.command
    {
        Command::Pi { group, n, qmax } => {
            let a = parse_ab(group)?;
            let family = Kan::new(a.clone(), *n);
            let pi = homotopy_groups(&family, *qmax)?;
            let pretty: Vec<String> = pi.iter().map(pretty_group).collect();
            (
                "pi",
                json!({"group": group, "n": n, "qmax": qmax}),
                json!({"pi": pi.iter().map(|g| g.canonical_form().moduli().to_vec()).collect::<Vec<_>>(), "pretty": pretty}),
                json!(format!("pi(K({}, {n})) through level {qmax}: [{}]", pretty_group(&a), pretty.join(", "))),
                0,
            )
        }
        Command::Verify { target } => {
            let (result, passed, text) = run_verify(target, cap)?;
            let params = match target {
                VerifyTarget::Simplicial(a) | VerifyTarget::Cyclic(a) | VerifyTarget::Symmetric(a) => {
                    json!({
                        "construction": a.construction,
                        "group": a.group,
                        "algebra": a.algebra,
                        "n": a.n,
                        "qmax": a.qmax,
                        "samples": a.samples,
                        "seed": a.seed,
                    })
                }
                VerifyTarget::HopfAxioms { algebra } => json!({"algebra": algebra}),
                VerifyTarget::Crosscheck { group, qmax }
                | VerifyTarget::Linearization { group, qmax } => {
                    json!({"group": group, "qmax": qmax})
                }
            };
            ("verify", params, result, text, if passed { 0 } else { 1 })
        }
        Command::Cohomology { target } => {
            let (params, result, text) = match target {
                CohomologyTarget::Group { g, coeff, nmax } => {
                    let group = parse_table(g)?;
                    let b = parse_ab(coeff)?;
                    let res = group_cohomology(&group, &b, *nmax, cap)?;
                    let pretty: Vec<String> = res.groups.iter().map(pretty_group).collect();
                    (
                        json!({"kind": "group", "g": g, "coeff": coeff, "nmax": nmax}),
                        serde_json::to_value(&res).expect("result serializes"),
                        json!(format!("H^0..H^{nmax}({}, {}): [{}]", g, pretty_group(&b), pretty.join(", "))),
                    )
                }
                CohomologyTarget::Secondary { a, coeff, nmax } => {
                    let group = parse_ab(a)?;
                    let b = parse_ab(coeff)?;
                    let res = secondary_cohomology(&group, &b, *nmax, cap)?;
                    let pretty: Vec<String> = res.groups.iter().map(pretty_group).collect();
                    (
                        json!({"kind": "secondary", "a": a, "coeff": coeff, "nmax": nmax}),
                        serde_json::to_value(&res).expect("result serializes"),
                        json!(format!("secondary H^0..H^{nmax}({}, {}): [{}]", pretty_group(&group), pretty_group(&b), pretty.join(", "))),
                    )
                }
            };
            ("cohomology", params, result, text, 0)
        }
    };
    let envelope = json!({
        "schema": "emforge/1",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "params": params,
        "cap": cap,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "summary": text,
        "result": result,
    });
    Ok((envelope, code))
}

fn emit(cli: &Cli, envelope: &Value) -> Result<(), CliError> {
    let rendered = match cli.format {
        Format::Json => {
            serde_json::to_string_pretty(envelope).expect("envelope serializes") + "\n"
        }
        Format::Text => format!(
            "{}\n",
            envelope["summary"].as_str().unwrap_or("(no summary)")
        ),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((envelope, code)) => {
            if let Err(e) = emit(&cli, &envelope) {
                eprintln!("error: {}", e.message);
                return ExitCode::from(e.code);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

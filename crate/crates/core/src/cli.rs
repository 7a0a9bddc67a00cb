//! Command-line frontend. Exit codes are a stable contract:
//! 0 pass, 1 verification failure, 2 usage error, 3 resource cap.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curve::{
    audit_with_resample, curve_build, singularity_audit, zariski_quartic, CurveInstance,
    MAX_RESAMPLES,
};
use crate::enumeration::{abelianization, todd_coxeter_with, EnumerationError, Strategy};
use crate::poly::format_rational_poly;
use crate::presentation::presentation_h;
use crate::rep::{build_rep, closure, extension_structure, verify_relations};
use crate::report::{build_report, ReportError, ReportOptions, StageTimings, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFICATION_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;

#[derive(Parser)]
#[command(
    name = "curvegroup",
    version,
    about = "Exact verification of the curve family C(q,k) and its complement groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the order of H(q;k) by Todd-Coxeter and (optionally) its
    /// abelianization.
    Group(GroupArgs),
    /// Build the 2x2 representation, verify its relations, close the matrix
    /// group, and report the extension structure.
    Rep(RepArgs),
    /// Build a curve instance and (optionally) audit its singular locus.
    Curve(CurveArgs),
    /// Run every cross-check for one (q,k) or the whole grid.
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Felsch,
    Hlt,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Felsch => Strategy::DefinitionDriven,
            StrategyArg::Hlt => Strategy::RelatorDriven,
        }
    }
}

#[derive(Args)]
struct GroupArgs {
    #[arg(short, long)]
    q: i64,
    #[arg(short, long)]
    k: i64,
    /// Cap on live cosets.
    #[arg(long, default_value_t = 1_000_000)]
    max_cosets: usize,
    /// Also compute the abelianization (Smith normal form).
    #[arg(long)]
    abelianize: bool,
    /// Coset definition strategy.
    #[arg(long, value_enum, default_value = "felsch")]
    strategy: StrategyArg,
    /// Print the full JSON document instead of the human summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RepArgs {
    #[arg(short, long)]
    q: i64,
    #[arg(short, long)]
    k: i64,
    /// Cap on closure size.
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
    /// Write the full element list (matrices, witness words, extension
    /// report) to this JSON file.
    #[arg(long)]
    emit: Option<std::path::PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(short, long, default_value_t = 3)]
    q: i64,
    #[arg(short, long, default_value_t = 1)]
    k: i64,
    /// Seed for the random forms.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Audit prime.
    #[arg(long, default_value_t = 2_147_483_647)]
    prime: u64,
    /// Run the singular-locus audit.
    #[arg(long)]
    audit: bool,
    /// Use a named fixture instead of a constructed curve ("zariski").
    #[arg(long)]
    fixture: Option<String>,
    /// Write curve.json here.
    #[arg(long)]
    emit_curve: Option<std::path::PathBuf>,
    /// Write audit.json here (implies --audit).
    #[arg(long)]
    emit_audit: Option<std::path::PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(short, long, default_value_t = 3)]
    q: i64,
    #[arg(short, long, default_value_t = 1)]
    k: i64,
    /// Audit the curve side as well (both default primes).
    #[arg(long)]
    audit: bool,
    /// Run the whole grid q in {3,5,7,9} x k in {1,2,3}.
    #[arg(long)]
    grid: bool,
    /// With --grid --audit: audit every grid point, not just the desk-scale
    /// ones (q <= 5, k = 1). Expensive.
    #[arg(long)]
    deep: bool,
    /// Curve seed for audits.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

/// Parses arguments from the environment and runs; returns the process exit
/// code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Group(args) => cmd_group(args),
        Command::Rep(args) => cmd_rep(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Report(args) => cmd_report(args),
    }
}

#[derive(Serialize)]
struct GroupDoc {
    group: String,
    order: Option<usize>,
    cosets_defined: usize,
    strategy: Strategy,
    #[serde(skip_serializing_if = "Option::is_none")]
    abelianization: Option<AbelianDoc>,
}

#[derive(Serialize)]
struct AbelianDoc {
    invariant_factors: Vec<String>,
    free_rank: usize,
}

fn cmd_group(args: GroupArgs) -> i32 {
    let pres = match presentation_h(args.q, args.k) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let strategy: Strategy = args.strategy.into();
    let abelian = args.abelianize.then(|| {
        let ab = abelianization(&pres);
        AbelianDoc {
            invariant_factors: ab.invariant_factors.iter().map(|d| d.to_string()).collect(),
            free_rank: ab.free_rank,
        }
    });
    match todd_coxeter_with(&pres, args.max_cosets, strategy) {
        Ok(report) => {
            let doc = GroupDoc {
                group: format!("H({};{})", args.q, args.k),
                order: Some(report.order),
                cosets_defined: report.cosets_defined,
                strategy: report.strategy,
                abelianization: abelian,
            };
            if args.json {
                print_json(&doc);
            } else {
                println!(
                    "{}: order {} ({} cosets defined, {})",
                    doc.group, report.order, report.cosets_defined, report.strategy
                );
                if let Some(ab) = &doc.abelianization {
                    println!(
                        "abelianization: invariant factors {:?}, free rank {}",
                        ab.invariant_factors, ab.free_rank
                    );
                }
            }
            EXIT_PASS
        }
        Err(EnumerationError::CapExceeded { cap, cosets_defined }) => {
            let doc = GroupDoc {
                group: format!("H({};{})", args.q, args.k),
                order: None,
                cosets_defined,
                strategy,
                abelianization: abelian,
            };
            if args.json {
                print_json(&doc);
            } else {
                eprintln!(
                    "cap of {cap} live cosets exceeded after defining {cosets_defined}; no order claim"
                );
            }
            EXIT_RESOURCE_CAP
        }
        Err(e) => {
            eprintln!("enumeration failed: {e}");
            EXIT_VERIFICATION_FAILURE
        }
    }
}

#[derive(Serialize)]
struct RepDoc {
    q: i64,
    k: i64,
    conductor: u64,
    relations: crate::rep::RelationReport,
    closure_order: usize,
    extension: crate::rep::ExtensionReport,
}

#[derive(Serialize)]
struct RepElementDoc {
    word: String,
    matrix: [crate::cyclo::CycNumber; 4],
}

#[derive(Serialize)]
struct RepEmitDoc {
    #[serde(flatten)]
    summary: RepDoc,
    elements: Vec<RepElementDoc>,
}

fn cmd_rep(args: RepArgs) -> i32 {
    let (a, b) = match build_rep(args.q, args.k) {
        Ok(p) => p,
        Err(e) => return usage_error(&e.to_string()),
    };
    let relations = verify_relations(&a, &b, args.q, args.k).expect("params validated");
    let group = match closure(&[a.clone(), b.clone()], args.cap) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_RESOURCE_CAP;
        }
    };
    let extension = extension_structure(&group, args.q);
    let expected = (2 * args.q * (args.q - 1) * args.k) as usize;
    let pass = relations.all_hold()
        && group.order() == expected
        && extension.scalar_subgroup_order == (args.k * (args.q - 1)) as usize
        && extension.pgl_image_order == (2 * args.q) as usize
        && extension.pgl_image_is_dihedral
        && extension.scalar_subgroup_is_central;

    let doc = RepDoc {
        q: args.q,
        k: args.k,
        conductor: a.conductor(),
        relations,
        closure_order: group.order(),
        extension: extension.clone(),
    };
    if let Some(path) = &args.emit {
        let elements = group
            .elements()
            .iter()
            .zip(group.witnesses())
            .map(|(m, w)| RepElementDoc {
                word: w.to_string(),
                matrix: m.entries().clone(),
            })
            .collect();
        let emit = RepEmitDoc {
            summary: RepDoc {
                q: args.q,
                k: args.k,
                conductor: a.conductor(),
                relations,
                closure_order: group.order(),
                extension,
            },
            elements,
        };
        if let Err(e) = write_json_file(path, &emit) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_VERIFICATION_FAILURE;
        }
    }
    if args.json {
        print_json(&doc);
    } else {
        println!(
            "rep H({};{}): conductor {}, closure {}, scalars {}, pgl {} (dihedral: {}), relations {:?}",
            args.q,
            args.k,
            doc.conductor,
            doc.closure_order,
            doc.extension.scalar_subgroup_order,
            doc.extension.pgl_image_order,
            doc.extension.pgl_image_is_dihedral,
            doc.relations,
        );
    }
    if pass {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION_FAILURE
    }
}

#[derive(Serialize)]
struct CurveParamsDoc {
    p: i64,
    q: i64,
    m: i64,
    k: i64,
    l: i64,
}

#[derive(Serialize)]
struct CurveDoc {
    params: CurveParamsDoc,
    seed: Option<u64>,
    forms: Option<Vec<String>>,
    equation: String,
    degree: i64,
}

#[derive(Serialize)]
struct AuditDoc {
    prime: u64,
    chart: [[u64; 3]; 3],
    point_count: usize,
    tjurina_total: usize,
    expected_points: i64,
    expected_tjurina: i64,
    pass: bool,
}

fn curve_doc(curve: &CurveInstance) -> CurveDoc {
    let names = curve.source.variable_names();
    CurveDoc {
        params: CurveParamsDoc {
            p: curve.params.p,
            q: curve.params.q,
            m: curve.params.m,
            k: curve.params.k,
            l: curve.params.l,
        },
        seed: curve.seed,
        forms: curve.forms.as_ref().map(|fs| {
            fs.iter()
                .map(|f| format_rational_poly(f, &crate::curve::XI))
                .collect()
        }),
        equation: format_rational_poly(&curve.equation, &names),
        degree: curve.degree,
    }
}

fn cmd_curve(args: CurveArgs) -> i32 {
    let fixture = match args.fixture.as_deref() {
        None => None,
        Some("zariski") => Some(zariski_quartic()),
        Some(other) => return usage_error(&format!("unknown fixture `{other}`")),
    };
    let run_audit = args.audit || args.emit_audit.is_some();

    let (curve, audit): (CurveInstance, Option<AuditDoc>) = if let Some(fixture) = fixture {
        let audit = if run_audit {
            match singularity_audit(&fixture, args.prime, args.seed) {
                Ok(a) => Some(AuditDoc {
                    prime: a.prime,
                    chart: a.chart,
                    point_count: a.point_count,
                    tjurina_total: a.tjurina_total,
                    expected_points: 3,
                    expected_tjurina: 6,
                    pass: a.point_count == 3 && a.tjurina_total == 6,
                }),
                Err(e) => {
                    eprintln!("audit failed: {e}");
                    return EXIT_VERIFICATION_FAILURE;
                }
            }
        } else {
            None
        };
        (fixture, audit)
    } else {
        if args.q < 3 || args.q % 2 == 0 || args.k < 1 {
            return usage_error(&format!(
                "q must be odd and >= 3 and k positive (got q={}, k={})",
                args.q, args.k
            ));
        }
        if run_audit {
            match audit_with_resample(args.q, args.k, args.seed, args.prime, MAX_RESAMPLES) {
                Ok(v) => {
                    let curve = curve_build(args.q, args.k, v.curve_seed).expect("validated");
                    let doc = AuditDoc {
                        prime: v.audit.prime,
                        chart: v.audit.chart,
                        point_count: v.audit.point_count,
                        tjurina_total: v.audit.tjurina_total,
                        expected_points: v.expected_points,
                        expected_tjurina: v.expected_tjurina,
                        pass: v.pass,
                    };
                    (curve, Some(doc))
                }
                Err(e) => {
                    eprintln!("audit failed: {e}");
                    return EXIT_VERIFICATION_FAILURE;
                }
            }
        } else {
            match curve_build(args.q, args.k, args.seed) {
                Ok(c) => (c, None),
                Err(e) => return usage_error(&e.to_string()),
            }
        }
    };

    let doc = curve_doc(&curve);
    if let Some(path) = &args.emit_curve {
        if let Err(e) = write_json_file(path, &doc) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_VERIFICATION_FAILURE;
        }
    }
    if let (Some(path), Some(audit)) = (&args.emit_audit, &audit) {
        if let Err(e) = write_json_file(path, audit) {
            eprintln!("cannot write {}: {e}", path.display());
            return EXIT_VERIFICATION_FAILURE;
        }
    }

    #[derive(Serialize)]
    struct CurveCmdDoc {
        curve: CurveDoc,
        #[serde(skip_serializing_if = "Option::is_none")]
        audit: Option<AuditDoc>,
    }
    let pass = audit.as_ref().is_none_or(|a| a.pass);
    let out = CurveCmdDoc { curve: doc, audit };
    if args.json {
        print_json(&out);
    } else {
        println!(
            "curve C({};{}): degree {}, {} terms",
            curve.params.q,
            curve.params.k,
            curve.degree,
            curve.equation.term_count()
        );
        if let Some(a) = &out.audit {
            println!(
                "audit at p={}: N={} T={} (expected N={} T={}) -> {}",
                a.prime,
                a.point_count,
                a.tjurina_total,
                a.expected_points,
                a.expected_tjurina,
                if a.pass { "pass" } else { "FAIL" }
            );
        }
    }
    if pass {
        EXIT_PASS
    } else {
        EXIT_VERIFICATION_FAILURE
    }
}

const GRID_Q: [i64; 4] = [3, 5, 7, 9];
const GRID_K: [i64; 3] = [1, 2, 3];

#[derive(Serialize)]
struct GridDoc {
    reports: Vec<VerificationReport>,
    pass: bool,
}

fn cmd_report(args: ReportArgs) -> i32 {
    if args.grid {
        let jobs: Vec<(i64, i64)> = GRID_Q
            .iter()
            .flat_map(|&q| GRID_K.iter().map(move |&k| (q, k)))
            .collect();
        let results = run_grid(&jobs, &args);
        let mut reports = Vec::new();
        for r in results {
            match r {
                Ok((report, timings)) => {
                    if !args.json {
                        print_human_report(&report, &timings);
                    }
                    reports.push(report);
                }
                Err(e) => return report_error_exit(e),
            }
        }
        let pass = reports.iter().all(|r| r.pass);
        if args.json {
            print_json(&GridDoc { reports, pass });
        } else {
            println!("grid: {}", if pass { "pass" } else { "FAIL" });
        }
        return if pass { EXIT_PASS } else { EXIT_VERIFICATION_FAILURE };
    }

    let opts = ReportOptions {
        audit_curve: args.audit,
        seed: args.seed,
        ..ReportOptions::default()
    };
    match build_report(args.q, args.k, &opts) {
        Ok((report, timings)) => {
            let pass = report.pass;
            if args.json {
                print_json(&report);
            } else {
                print_human_report(&report, &timings);
            }
            if pass {
                EXIT_PASS
            } else {
                EXIT_VERIFICATION_FAILURE
            }
        }
        Err(e) => report_error_exit(e),
    }
}

/// Fans grid jobs out to a small worker pool (size from CURVEGROUP_THREADS,
/// default the machine's parallelism) and merges results in job order.
type GridResult = Result<(VerificationReport, StageTimings), ReportError>;

fn run_grid(jobs: &[(i64, i64)], args: &ReportArgs) -> Vec<GridResult> {
    let threads = std::env::var("CURVEGROUP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .min(jobs.len().max(1));

    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<GridResult>>> = jobs.iter().map(|_| Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::SeqCst);
                if idx >= jobs.len() {
                    break;
                }
                let (q, k) = jobs[idx];
                let audit_here = args.audit && (args.deep || (q <= 5 && k == 1));
                let opts = ReportOptions {
                    audit_curve: audit_here,
                    seed: args.seed,
                    ..ReportOptions::default()
                };
                let result = build_report(q, k, &opts);
                *slots[idx].lock().expect("result slot") = Some(result);
            });
        }
    });

    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("result slot").expect("job ran"))
        .collect()
}

fn report_error_exit(e: ReportError) -> i32 {
    match e {
        ReportError::BadParams { .. } => usage_error(&e.to_string()),
        ReportError::CosetCap(_) | ReportError::ClosureCap(_) => {
            eprintln!("{e}");
            EXIT_RESOURCE_CAP
        }
        ReportError::Audit(_) => {
            eprintln!("{e}");
            EXIT_VERIFICATION_FAILURE
        }
    }
}

fn print_human_report(report: &VerificationReport, timings: &StageTimings) {
    println!(
        "report H({};{}) [group {} ms, rep {} ms, curve {} ms]",
        report.q, report.k, timings.group_ms, timings.rep_ms, timings.curve_ms
    );
    for check in &report.checks {
        println!(
            "  [{}] {}: {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    println!(
        "  => {}",
        if report.pass { "pass" } else { "FAIL" }
    );
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("usage error: {msg}");
    EXIT_USAGE
}

fn print_json<T: Serialize>(doc: &T) {
    let text = serde_json::to_string_pretty(doc).expect("serializable document");
    println!("{text}");
}

fn write_json_file<T: Serialize>(path: &std::path::Path, doc: &T) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    let text = serde_json::to_string_pretty(doc).expect("serializable document");
    file.write_all(text.as_bytes())?;
    file.write_all(b"\n")
}

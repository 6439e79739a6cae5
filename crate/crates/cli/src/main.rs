use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bicubic::analysis::{analyze, iso_classes, AnalysisError, AnalysisOptions, GroupKind};
use bicubic::closure::CapExceeded;
use bicubic::cosetgraph::{CosetError, CosetGraph, CosetSpace, DEFAULT_VERTEX_CAP};
use bicubic::gf2::{generator_count_formula, Field, FieldError};
use bicubic::suite::{run_suite, SuiteError, SuiteOptions, SUITES};
use bicubic::zpfamily::{zp_arc_check, ZpError};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const EXIT_CLAIM_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "bicubic",
    version,
    about = "Build and analyse cubic coset graphs over PSL(2,2^f)^2"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Include the long f = 4 checks.
    #[arg(long, global = true)]
    deep: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Field as "f=<int>" or "f=<int>,poly=0x<hex>".
    #[arg(long)]
    field: Field,
    /// Parameter as a hex bit pattern, e.g. 0x2.
    #[arg(long)]
    alpha: String,
    /// Stop when the component has more vertices than this.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Modulus, generators and connected parameters of GF(2^f).
    FieldInfo {
        #[arg(long)]
        field: Field,
    },
    /// Build the component of the base coset and summarise it.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
        /// Write the edge list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run graph and symmetry analyses on the component of the base coset.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        girth: bool,
        #[arg(long)]
        diameter: bool,
        /// Arc transitivity request "s=<n>,group=G|Gplus|M|A|Aplus"; repeatable.
        #[arg(long, value_parser = parse_arc_request)]
        arcs: Vec<(GroupKind, u32)>,
        #[arg(long)]
        quotient: bool,
        #[arg(long)]
        antipodal: bool,
        /// Random vertices used to cross-check the girth.
        #[arg(long, default_value_t = bicubic::analysis::DEFAULT_GIRTH_SAMPLE)]
        girth_sample: usize,
    },
    /// Run verification suites; all of them when none is named.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: Vec<String>,
    },
    /// Classes of connected parameters under squaring and adding 1.
    IsoClasses {
        #[arg(long)]
        field: Field,
    },
    /// Transitivity checks for the graph on Z_p x Z_p x Z_2.
    ZpFamily {
        #[arg(long)]
        p: u32,
    },
    /// Write the edge list of the component of the base coset.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_arc_request(s: &str) -> Result<(GroupKind, u32), String> {
    let mut length = None;
    let mut group = None;
    for part in s.split(',') {
        match part.split_once('=') {
            Some(("s", v)) => {
                length = Some(
                    v.parse::<u32>()
                        .map_err(|e| format!("bad arc length {v:?}: {e}"))?,
                )
            }
            Some(("group", v)) => {
                group = Some(GroupKind::parse(v).ok_or_else(|| format!("unknown group {v:?}"))?)
            }
            _ => return Err(format!("expected s=<n>,group=<name>, got {s:?}")),
        }
    }
    match (group, length) {
        (Some(g), Some(s)) => Ok((g, s)),
        _ => Err(format!("expected s=<n>,group=<name>, got {s:?}")),
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Runtime(String),
    Claims,
}

impl From<CapExceeded> for Failure {
    fn from(e: CapExceeded) -> Self {
        Failure::Cap(e.to_string())
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CosetError> for Failure {
    fn from(e: CosetError) -> Self {
        match e {
            CosetError::CapExceeded(c) => c.into(),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Coset(c) => c.into(),
            AnalysisError::Field(f) => f.into(),
            e @ (AnalysisError::DegreeTooSmall(_)
            | AnalysisError::DegreeTooLarge(_)
            | AnalysisError::ArcLengthOutOfRange(_)
            | AnalysisError::GirthTooSmall { .. }) => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::ResourceCap(c) => c.into(),
            SuiteError::UnknownSuite(_) => Failure::Usage(e.to_string()),
            e => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<ZpError> for Failure {
    fn from(e: ZpError) -> Self {
        match e {
            ZpError::Analysis(a) => a.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn build(args: &GraphArgs) -> Result<CosetGraph, Failure> {
    let alpha = args.field.parse_element(&args.alpha)?;
    Ok(CosetSpace::new(args.field.clone(), alpha).build_component(args.cap)?)
}

fn write_json(path: &Path, value: &Value) -> Result<(), Failure> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value).expect("JSON values serialize");
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Prints `value` and writes it to the `--json` file when one was given.
fn emit(cli_json: Option<&Path>, value: &Value) -> Result<(), Failure> {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
    if let Some(path) = cli_json {
        write_json(path, value)?;
    }
    Ok(())
}

fn field_info(field: &Field) -> Value {
    let generators = field.elements().filter(|&a| field.is_generator(a)).count();
    let connected = field.connected_alphas();
    let mut info = json!({
        "field": field.spec_string(),
        "degree": field.degree(),
        "order": field.order(),
        "modulus": format!("{:#x}", field.modulus()),
        "generators": generators,
        "generators_by_formula": generator_count_formula(field.degree()),
        "connected_alphas": connected.len(),
    });
    if connected.len() <= 64 {
        info["connected_alpha_values"] = connected
            .iter()
            .map(|a| json!(format!("{:#x}", a.bits())))
            .collect();
    }
    info
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json_path = cli.json.as_deref();
    match &cli.command {
        Command::FieldInfo { field } => emit(json_path, &field_info(field)),
        Command::Construct { graph, out } => {
            let cg = build(graph)?;
            if let Some(path) = out {
                cg.export_edges(BufWriter::new(File::create(path)?))?;
            }
            let summary = json!({
                "field": cg.field().spec_string(),
                "alpha": format!("{:#x}", cg.alpha().bits()),
                "vertices": cg.len(),
                "edges": cg.graph().edge_count(),
                "connected": cg.is_whole_graph(),
                "components": cg.component_count()?.to_string(),
            });
            emit(json_path, &summary)
        }
        Command::Analyze {
            graph,
            girth,
            diameter,
            arcs,
            quotient,
            antipodal,
            girth_sample,
        } => {
            let cg = build(graph)?;
            let opts = AnalysisOptions {
                girth: *girth,
                diameter: *diameter,
                arcs: arcs.clone(),
                quotient: *quotient,
                antipodal: *antipodal,
                girth_sample: *girth_sample,
                seed: cli.seed,
            };
            let report = analyze(&cg, &opts)?;
            emit(
                json_path,
                &serde_json::to_value(&report).expect("reports serialize"),
            )
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite.is_empty() {
                SUITES.to_vec()
            } else {
                suite.iter().map(String::as_str).collect()
            };
            let opts = SuiteOptions {
                deep: cli.deep,
                seed: cli.seed,
            };
            let mut reports = Vec::new();
            let mut all_passed = true;
            for name in names {
                let result = run_suite(name, &opts)?;
                print!("{result}");
                all_passed &= result.passed;
                reports.push(result.to_json());
            }
            if let Some(path) = json_path {
                write_json(path, &Value::Array(reports))?;
            }
            if all_passed {
                Ok(())
            } else {
                Err(Failure::Claims)
            }
        }
        Command::IsoClasses { field } => {
            let classes = iso_classes(field)?;
            let value = json!({
                "field": field.spec_string(),
                "classes": classes
                    .iter()
                    .map(|c| c.iter().map(|a| format!("{:#x}", a.bits())).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            emit(json_path, &value)
        }
        Command::ZpFamily { p } => {
            let report = zp_arc_check(*p)?;
            emit(
                json_path,
                &serde_json::to_value(&report).expect("reports serialize"),
            )
        }
        Command::Export { graph, out } => {
            let cg = build(graph)?;
            match out {
                Some(path) => cg.export_edges(BufWriter::new(File::create(path)?))?,
                None => cg.export_edges(BufWriter::new(io::stdout().lock()))?,
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(EXIT_CLAIM_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: resource cap: {msg}");
            ExitCode::from(EXIT_RESOURCE_CAP)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CLAIM_FAILED)
        }
    }
}

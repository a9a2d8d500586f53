mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use twodesign::bounds::{bound_record, d4_family_scan, subset_bound_spectrum, OptimizerOptions, ScanOptions, DEFAULT_ENUMERATION_CAP};
use twodesign::correlations::{correlation_sum, CorrelationSpec};
use twodesign::designs::{mub_triple_family_d4, verify_mub, verify_sic, Design, DesignDescriptor, DesignKind};
use twodesign::io::parse_density;
use twodesign::matrix::UnitVector;
use twodesign::scan::scan_family;
use twodesign::settings::Tolerances;
use twodesign::sources::bound_source;
use twodesign::states::{detect, DetectionVerdict, StateFamily, SymmetricStateSpec};
use twodesign::tables::{reproduce_table, TableId, TableOptions};
use twodesign::Error;

use output::{
    csv, json, print, table_rows, BoundRow, CliResult, CorrelationRow, FamilyRow, Format, ScanCsvRow, VectorRow, VerdictRow, VerifyRow,
};

const THREADS_VAR: &str = "TWODESIGN_THREADS";

/// Entanglement detection with incomplete MUB and SIC designs.
#[derive(Parser)]
#[command(name = "twodesign", version)]
struct Cli {
    /// Base seed for every optimizer restart.
    #[arg(long, global = true, default_value_t = OptimizerOptions::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Verdict margin for detect/scan, overlap tolerance for designs verify.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print or verify a design.
    Designs {
        #[command(subcommand)]
        action: DesignsAction,
    },
    /// Correlation sum of a state read from a density-matrix file.
    Correlate {
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        design: DesignArgs,
    },
    /// Separable lower and upper bounds.
    Bounds {
        #[command(flatten)]
        design: DesignArgs,
        /// Every m-subset of the SIC set.
        #[arg(long, conflicts_with_all = ["subset", "family_scan"])]
        all_subsets: bool,
        /// Grid scan of the d = 4 MUB triple family (ignores the design options).
        #[arg(long, conflicts_with = "subset")]
        family_scan: bool,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Classify a Werner/isotropic preset or a state file.
    Detect {
        #[arg(
            long,
            value_name = "werner|isotropic",
            required_unless_present = "state_file",
            conflicts_with = "state_file"
        )]
        state: Option<StateFamily>,
        #[arg(long, requires = "state")]
        param: Option<f64>,
        #[arg(long)]
        state_file: Option<PathBuf>,
        #[command(flatten)]
        design: DesignArgs,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Verdicts along a Werner or isotropic line.
    Scan {
        #[arg(long, value_name = "werner|isotropic")]
        family: StateFamily,
        #[command(flatten)]
        design: DesignArgs,
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        #[arg(long, default_value_t = 1.0)]
        end: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Reproduce reference tables: I, II, III, IV, V, EQ12, FIG3 or all.
    Tables {
        #[arg(default_value = "all")]
        id: String,
        #[arg(long)]
        restarts: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DesignsAction {
    Show(ShowArgs),
    Verify(ShowArgs),
}

#[derive(Args)]
struct ShowArgs {
    #[arg(long, value_name = "mub|sic")]
    kind: DesignKind,
    #[arg(long)]
    d: usize,
    /// Angles of the d = 4 MUB triple family; all three or none.
    #[arg(long, requires_all = ["y", "z"])]
    x: Option<f64>,
    #[arg(long, requires_all = ["x", "z"])]
    y: Option<f64>,
    #[arg(long, requires_all = ["x", "y"])]
    z: Option<f64>,
}

#[derive(Args)]
struct DesignArgs {
    #[arg(long, value_name = "mub|sic", default_value = "mub")]
    design: DesignKind,
    /// Local dimension; taken from the state file when omitted there.
    #[arg(long)]
    d: Option<usize>,
    /// Leading members of the standard design (default: all).
    #[arg(long, conflicts_with = "subset")]
    m: Option<usize>,
    /// 1-based members, comma separated.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Measure the second party in the complex-conjugated design.
    #[arg(long)]
    conjugate_second: bool,
}

impl DesignArgs {
    fn dim(&self) -> CliResult<usize> {
        self.d.ok_or_else(|| "--d is required".into())
    }

    fn design(&self, d: usize) -> CliResult<Design> {
        Ok(match (&self.subset, self.m) {
            (Some(members), _) => Design::standard_subset(self.design, d, members)?,
            (None, Some(m)) => {
                let members: Vec<usize> = (1..=m).collect();
                Design::standard_subset(self.design, d, &members)?
            }
            (None, None) => Design::standard(self.design, d)?,
        })
    }

    fn spec(&self, d: usize, conjugate: bool) -> CliResult<CorrelationSpec> {
        Ok(CorrelationSpec {
            design: self.design(d)?,
            conjugate_second: self.conjugate_second || conjugate,
        })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SourceName {
    Recompute,
    ClosedForm,
    Cached,
}

#[derive(Args)]
struct SourceArgs {
    /// Where the separable bounds come from.
    #[arg(long = "bounds", value_enum, default_value_t = SourceName::Recompute)]
    bounds: SourceName,
    /// JSON file of bound records, for `--bounds cached`.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    restarts: Option<usize>,
}

impl SourceArgs {
    fn name(&self) -> &'static str {
        match self.bounds {
            SourceName::Recompute => "recompute",
            SourceName::ClosedForm => "closed-form",
            SourceName::Cached => "cached",
        }
    }

    fn interval(&self, spec: &CorrelationSpec, seed: u64) -> CliResult<twodesign::bounds::SeparableInterval> {
        let opts = optimizer(spec.design.dim(), seed, self.restarts);
        let cache = self.cache.as_ref().map(std::fs::read_to_string).transpose()?;
        Ok(bound_source(self.name(), &opts, cache.as_deref())?.interval(spec)?)
    }
}

fn optimizer(d: usize, seed: u64, restarts: Option<usize>) -> OptimizerOptions {
    let base = OptimizerOptions::for_dim(d).with_seed(seed);
    restarts.map_or(base, |r| base.with_restarts(r))
}

#[derive(Serialize, Deserialize)]
struct CorrelationOutput {
    value: f64,
    design_descriptor: DesignDescriptor,
    conjugate_second: bool,
}

#[derive(Serialize, Deserialize)]
struct DesignOutput {
    descriptor: DesignDescriptor,
    vectors: Vec<UnitVector>,
}

#[derive(Serialize, Deserialize)]
struct DetectInput {
    state: String,
    d: usize,
    param: Option<f64>,
    state_file: Option<PathBuf>,
    tol: f64,
    bound_source: String,
}

#[derive(Serialize, Deserialize)]
struct DetectOutput {
    input: DetectInput,
    #[serde(flatten)]
    verdict: DetectionVerdict,
}

fn show_design(args: &ShowArgs) -> CliResult<Design> {
    match (args.x, args.y, args.z) {
        (Some(x), Some(y), Some(z)) => {
            if args.kind != DesignKind::Mub || args.d != 4 {
                return Err(Error::UnsupportedCombination("angles select the d = 4 MUB triple family".into()).into());
            }
            Ok(Design::Mub(mub_triple_family_d4(x, y, z)?))
        }
        _ => Ok(Design::standard(args.kind, args.d)?),
    }
}

fn run(cli: Cli) -> CliResult<String> {
    let seed = cli.seed;
    let verdict_tol = cli.tol.unwrap_or(Tolerances::DEFAULT.verdict);
    let format = cli.format;
    match cli.command {
        Command::Designs { action } => match action {
            DesignsAction::Show(args) => {
                let design = show_design(&args)?;
                match format {
                    Format::Json => json(&DesignOutput {
                        descriptor: design.descriptor(),
                        vectors: design.vectors(),
                    }),
                    Format::Csv => csv(design.vectors().iter().enumerate().flat_map(|(index, v)| {
                        v.entries().iter().enumerate().map(move |(component, z)| VectorRow {
                            index: index + 1,
                            component,
                            re: z.re,
                            im: z.im,
                        })
                    })),
                }
            }
            DesignsAction::Verify(args) => {
                let tol = cli.tol.unwrap_or(1e-10);
                let report = match show_design(&args)? {
                    Design::Mub(set) => verify_mub(&set, tol),
                    Design::Sic(set) => verify_sic(&set, tol),
                };
                match format {
                    Format::Json => json(&report),
                    Format::Csv => csv([VerifyRow {
                        pass: report.pass,
                        max_deviation: report.max_deviation,
                        tolerance: report.tolerance,
                    }]),
                }
            }
        },
        Command::Correlate { state, design } => {
            let rho = parse_density(&std::fs::read_to_string(&state)?, &Tolerances::DEFAULT)?;
            let d = design.d.unwrap_or(rho.local_dim());
            let spec = design.spec(d, false)?;
            let out = CorrelationOutput {
                value: correlation_sum(&rho, &spec)?,
                design_descriptor: spec.descriptor(),
                conjugate_second: spec.conjugate_second,
            };
            match format {
                Format::Json => json(&out),
                Format::Csv => csv([CorrelationRow {
                    value: out.value,
                    design: out.design_descriptor.to_string(),
                    conjugate_second: out.conjugate_second,
                }]),
            }
        }
        Command::Bounds {
            design,
            all_subsets,
            family_scan,
            restarts,
        } => {
            if family_scan {
                let scan = d4_family_scan(&ScanOptions {
                    optimizer: optimizer(4, seed, restarts),
                    ..ScanOptions::default()
                })?;
                return match format {
                    Format::Json => json(&scan),
                    Format::Csv => csv(scan.per_point.iter().map(FamilyRow::from)),
                };
            }
            let d = design.dim()?;
            let opts = optimizer(d, seed, restarts);
            if all_subsets {
                let Design::Sic(sic) = Design::standard(design.design, d)? else {
                    return Err(Error::UnsupportedCombination("--all-subsets enumerates SIC subsets".into()).into());
                };
                let m = design.m.ok_or("--all-subsets needs --m")?;
                let spectrum = subset_bound_spectrum(&sic, m, &opts, DEFAULT_ENUMERATION_CAP)?;
                return match format {
                    Format::Json => json(&spectrum),
                    Format::Csv => csv(spectrum.per_subset.iter().map(BoundRow::from)),
                };
            }
            let record = bound_record(&design.spec(d, false)?, &opts)?;
            match format {
                Format::Json => json(&record),
                Format::Csv => csv([BoundRow::from(&record)]),
            }
        }
        Command::Detect {
            state,
            param,
            state_file,
            design,
            source,
        } => {
            let (rho, d, conjugate, label) = match (&state_file, state) {
                (Some(path), _) => {
                    let rho = parse_density(&std::fs::read_to_string(path)?, &Tolerances::DEFAULT)?;
                    let d = rho.local_dim();
                    if design.d.is_some_and(|given| given != d) {
                        return Err(Error::DimensionMismatch {
                            expected: d,
                            found: design.d.unwrap_or(d),
                        }
                        .into());
                    }
                    (rho, d, false, "file".to_string())
                }
                (None, Some(family)) => {
                    let d = design.dim()?;
                    let p = param.ok_or("--param is required with --state")?;
                    (
                        SymmetricStateSpec::new(family, d, p)?.state()?,
                        d,
                        family.natural_conjugation(),
                        family.to_string(),
                    )
                }
                (None, None) => return Err("either --state or --state-file is required".into()),
            };
            let spec = design.spec(d, conjugate)?;
            let bounds = source.interval(&spec, seed)?;
            let out = DetectOutput {
                input: DetectInput {
                    state: label,
                    d,
                    param,
                    state_file,
                    tol: verdict_tol,
                    bound_source: source.name().into(),
                },
                verdict: detect(&rho, &spec, &bounds, verdict_tol)?,
            };
            match format {
                Format::Json => json(&out),
                Format::Csv => csv([VerdictRow::from(&out.verdict)]),
            }
        }
        Command::Scan {
            family,
            design,
            start,
            end,
            step,
            source,
        } => {
            let d = design.dim()?;
            let spec = design.spec(d, family.natural_conjugation())?;
            let bounds = source.interval(&spec, seed)?;
            let scan = scan_family(family, &spec, &bounds, (start, end), step, verdict_tol)?;
            match format {
                Format::Json => json(&scan),
                Format::Csv => csv(scan.rows.iter().map(ScanCsvRow::from)),
            }
        }
        Command::Tables { id, restarts } => {
            let ids: Vec<TableId> = if id.eq_ignore_ascii_case("all") {
                TableId::ALL.to_vec()
            } else {
                vec![id.parse()?]
            };
            let opts = TableOptions {
                seed,
                restarts,
                ..TableOptions::default()
            };
            let reports = ids.iter().map(|&t| reproduce_table(t, &opts)).collect::<Result<Vec<_>, _>>()?;
            match format {
                Format::Json if reports.len() == 1 => json(&reports[0]),
                Format::Json => json(&reports),
                Format::Csv => csv(reports.iter().flat_map(table_rows)),
            }
        }
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(value) = std::env::var(THREADS_VAR) {
        let threads: usize = value
            .parse()
            .map_err(|_| format!("{THREADS_VAR} must be a positive integer, got {value:?}"))?;
        if threads == 0 {
            return Err(format!("{THREADS_VAR} must be positive").into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)).and_then(|text| print(&text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

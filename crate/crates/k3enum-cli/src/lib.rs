//! Command-line front end for the k3enum library: curve-counting tables,
//! modular form expansions, lattice invariants, and verification suites,
//! all in exact rational arithmetic.
//!
//! Exit codes: 0 success (checks pass), 1 verification failure, 2 invalid
//! input. Identical invocations produce byte-identical stdout; wall-clock
//! timings go to stderr.

mod output;
pub mod theorem2;
pub mod verify;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use k3enum::curvecounts::{
    bryan_leung, gv_invert, kawai_yoshioka, kkv_table, yau_zaslow, DivisibleBpsTable,
    GwPotentialTable,
};
use k3enum::lattice::{
    borcherds_index, e8_minus, extend_gram, hyperbolic_plane, k3_lattice, nl_lookup,
    nl_multiplicity, refined_multiplicity, GramLattice, OverlatticeDatum,
};
use k3enum::modforms::{eisenstein, j_series};
use k3enum::rational::Rational;
use num::{BigInt, Signed};
use output::{bps_table_json, euler_table_tsv, parse_rational_arg, rational_pair};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use verify::{gwpt_report, harvey_moore_report, modform_reports, VerificationReport};

/// Largest series exponent `nl lookup` will expand a modular form to.
const LOOKUP_EXPONENT_CAP: i64 = 1_000_000;

#[derive(Debug)]
pub enum CmdError {
    /// Malformed arguments or files; exit 2 with a message on stderr.
    BadInput(String),
    /// A verification ran and failed; exit 1, details already on stdout.
    CheckFailed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Tsv,
    Human,
}

/// Runtime configuration. `K3ENUM_QTRUNC` raises the default series
/// truncation; commands that need a wider window to answer correctly widen
/// it themselves, so the variable can only add coefficients.
#[derive(Debug, Clone)]
pub struct Config {
    pub q_trunc: i64,
    pub g_max: i64,
    pub h_max: i64,
    pub hm_order: i64,
    pub stu_nl_scale: Rational,
    pub format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            q_trunc: 32,
            g_max: 4,
            h_max: 12,
            hm_order: 12,
            stu_nl_scale: Rational::from(BigInt::from(1)),
            format: OutputFormat::Json,
        }
    }
}

impl Config {
    pub fn from_env() -> Result<Self, String> {
        let mut config = Config::default();
        if let Ok(raw) = std::env::var("K3ENUM_QTRUNC") {
            let parsed: i64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("K3ENUM_QTRUNC must be an integer, got {raw:?}"))?;
            if parsed < 1 {
                return Err(format!("K3ENUM_QTRUNC must be at least 1, got {parsed}"));
            }
            config.q_trunc = parsed;
        }
        Ok(config)
    }
}

#[derive(Parser)]
#[command(
    name = "k3enum",
    version,
    about = "Exact calculator for K3 curve counts, modular forms, and lattice data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Modular form q-expansions and identity checks
    #[command(subcommand)]
    Modform(ModformCmd),
    /// Curve-counting tables, series, and transforms
    #[command(subcommand)]
    Count(CountCmd),
    /// Lattice invariants and intersection multiplicities
    #[command(subcommand)]
    Nl(NlCmd),
    /// Verification suites; exit 1 if any check fails
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Assemble genus-0 fibration invariants from a BPS table and
    /// Noether-Lefschetz inputs
    Theorem2 {
        /// Genus-0 BPS table JSON; column k holds the count for square 2(k-1)-2
        #[arg(long)]
        r0: PathBuf,
        /// NL input JSON: {"blocks": [{"d": [...], "entries": [[[n,d],...],...]}]}
        #[arg(long)]
        nl: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum ModformCmd {
    /// Eisenstein series E_{2k}, constant term 1, as a JSON q-series
    Eisenstein {
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
        #[arg(long, allow_hyphen_values = true)]
        order: i64,
    },
    /// J = q·j = 1 + 744q + 196884q² + ... as a JSON q-series
    J {
        #[arg(long, allow_hyphen_values = true)]
        order: i64,
    },
    /// Check the cleared bivariate product identity to bidegree (N,N)
    HarveyMoore {
        #[arg(long, allow_hyphen_values = true)]
        order: i64,
    },
}

#[derive(Subcommand)]
pub enum CountCmd {
    /// Genus-0 K3 BPS counts r_{0,h} as a one-row TSV table
    Yz {
        #[arg(long, allow_hyphen_values = true)]
        hmax: i64,
    },
    /// Full BPS table r_{g,h} (Katz-Klemm-Vafa form)
    Kkv {
        #[arg(long, allow_hyphen_values = true)]
        gmax: i64,
        #[arg(long, allow_hyphen_values = true)]
        hmax: i64,
        /// Tab-separated table (default)
        #[arg(long, conflicts_with = "json")]
        tsv: bool,
        /// JSON table with exact rational pairs
        #[arg(long)]
        json: bool,
    },
    /// Genus-g point-insertion series F_{g,1} as a JSON q-series
    Bl {
        #[arg(long, allow_hyphen_values = true)]
        genus: i64,
        #[arg(long, allow_hyphen_values = true)]
        order: i64,
    },
    /// Stable-pairs Euler characteristics e(P_n(S,h)) as TSV
    Ky {
        #[arg(long, allow_hyphen_values = true)]
        hmax: i64,
        #[arg(long, allow_hyphen_values = true)]
        nmax: i64,
    },
    /// Gromov-Witten/pairs correspondence check; exit 1 on mismatch
    Gwpt {
        #[arg(long, allow_hyphen_values = true)]
        hmax: i64,
    },
    /// Invert a GW potential table to BPS counts
    GvInvert {
        /// GW potential JSON as emitted by the forward transform
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum NlCmd {
    /// Emit a Gram matrix with determinant and signature
    Gram {
        /// Built-in lattice: U, E8neg, or K3
        #[arg(long, value_parser = ["U", "E8neg", "K3"],
              required_unless_present = "file", conflicts_with = "file")]
        preset: Option<String>,
        /// Gram JSON file: {"rank": r, "gram": [[int, ...], ...]}
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Discriminant and coset invariants of the bordered lattice
    Delta {
        /// Preset name (U, E8neg, K3) or path to a Gram JSON file
        #[arg(long)]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        /// Pairing degrees d1,d2,...
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        d: Vec<i64>,
    },
    /// Count classes with square 2h-2 and the given pairings
    Mult {
        /// Overlattice JSON as emitted by the lattice layer
        #[arg(long)]
        overlattice: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        d: Vec<i64>,
        /// Restrict to classes of divisibility exactly m
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Read a multiplicity prediction off a scalar modular form
    Lookup {
        /// Modular form: e4e6 (the weight-10 product E4·E6)
        #[arg(long, value_parser = ["e4e6"])]
        phi: String,
        /// Rational proportionality constant, e.g. 2 or -3/4
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        scale: String,
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        d: Vec<i64>,
        /// Preset name or Gram JSON path; defaults to U
        #[arg(long)]
        lattice: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Gromov-Witten/pairs correspondence for all h up to the bound
    Gwpt {
        #[arg(long, allow_hyphen_values = true)]
        hmax: Option<i64>,
    },
    /// Cleared bivariate product identity to bidegree (N,N)
    HarveyMoore {
        #[arg(long, allow_hyphen_values = true)]
        order: Option<i64>,
    },
    /// Weight-12 cusp identity and the three Ramanujan derivations
    Modforms {
        #[arg(long, default_value_t = 200, allow_hyphen_values = true)]
        order: i64,
    },
    /// Every check above
    All {
        #[arg(long, allow_hyphen_values = true)]
        hmax: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        order: Option<i64>,
        #[arg(long, default_value_t = 200, allow_hyphen_values = true)]
        modform_order: i64,
    },
}

/// Parse and dispatch; returns the process exit code.
pub fn run(argv: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match dispatch(&cli.command, &config) {
        Ok(()) => 0,
        Err(CmdError::CheckFailed) => 1,
        Err(CmdError::BadInput(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), CmdError> {
    if cond {
        Ok(())
    } else {
        Err(CmdError::BadInput(msg.into()))
    }
}

fn bad(e: impl std::fmt::Display) -> CmdError {
    CmdError::BadInput(e.to_string())
}

fn read_json(path: &Path) -> Result<Value, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::BadInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CmdError::BadInput(format!("{}: invalid JSON: {e}", path.display())))
}

/// Built-in name or a path to a Gram JSON file.
fn resolve_lattice(spec: &str) -> Result<GramLattice, CmdError> {
    match spec {
        "U" => Ok(hyperbolic_plane()),
        "E8neg" => Ok(e8_minus()),
        "K3" => Ok(k3_lattice()),
        path => GramLattice::from_json_value(&read_json(Path::new(path))?).map_err(bad),
    }
}

/// Print a possibly multi-line block without doubling the final newline.
fn print_block(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}

fn run_reports(reports: &[VerificationReport]) -> Result<(), CmdError> {
    for r in reports {
        println!("{}", r.line());
        eprintln!("{}: {:.3}s", r.name, r.runtime.as_secs_f64());
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(CmdError::CheckFailed)
    }
}

fn dispatch(cmd: &Cmd, config: &Config) -> Result<(), CmdError> {
    match cmd {
        Cmd::Modform(m) => dispatch_modform(m),
        Cmd::Count(c) => dispatch_count(c, config),
        Cmd::Nl(n) => dispatch_nl(n, config),
        Cmd::Verify(v) => dispatch_verify(v, config),
        Cmd::Theorem2 { r0, nl } => dispatch_theorem2(r0, nl),
    }
}

fn dispatch_modform(cmd: &ModformCmd) -> Result<(), CmdError> {
    match cmd {
        ModformCmd::Eisenstein { weight, order } => {
            require(*order >= 1, format!("--order must be positive, got {order}"))?;
            let e = eisenstein(*weight, *order).map_err(bad)?;
            println!("{}", e.series.to_json());
            Ok(())
        }
        ModformCmd::J { order } => {
            require(*order >= 2, format!("--order must be at least 2, got {order}"))?;
            println!("{}", j_series(*order).to_json());
            Ok(())
        }
        ModformCmd::HarveyMoore { order } => {
            run_reports(&[harvey_moore_report(*order)?])
        }
    }
}

fn dispatch_count(cmd: &CountCmd, config: &Config) -> Result<(), CmdError> {
    match cmd {
        CountCmd::Yz { hmax } => {
            require(*hmax >= 0, format!("--hmax must be nonnegative, got {hmax}"))?;
            print_block(&yau_zaslow(*hmax).to_tsv());
            Ok(())
        }
        CountCmd::Kkv { gmax, hmax, tsv, json } => {
            require(*gmax >= 0, format!("--gmax must be nonnegative, got {gmax}"))?;
            require(*hmax >= 0, format!("--hmax must be nonnegative, got {hmax}"))?;
            let table = kkv_table(*gmax, *hmax);
            let as_json = *json || (!*tsv && config.format == OutputFormat::Json);
            if as_json {
                println!("{}", bps_table_json(&table));
            } else {
                print_block(&table.to_tsv());
            }
            Ok(())
        }
        CountCmd::Bl { genus, order } => {
            require(*genus >= 0, format!("--genus must be nonnegative, got {genus}"))?;
            require(*order >= 1, format!("--order must be positive, got {order}"))?;
            println!("{}", bryan_leung(*genus, *order).to_json());
            Ok(())
        }
        CountCmd::Ky { hmax, nmax } => {
            require(*hmax >= 0, format!("--hmax must be nonnegative, got {hmax}"))?;
            require(
                *nmax >= 1 - *hmax,
                format!("--nmax must be at least {} for --hmax {hmax}", 1 - *hmax),
            )?;
            print_block(&euler_table_tsv(&kawai_yoshioka(*hmax, *nmax)));
            Ok(())
        }
        CountCmd::Gwpt { hmax } => run_reports(&[gwpt_report(*hmax)?]),
        CountCmd::GvInvert { input } => {
            let table = GwPotentialTable::from_json_value(&read_json(input)?).map_err(bad)?;
            println!("{}", gv_invert(&table).to_json_value());
            Ok(())
        }
    }
}

fn dispatch_nl(cmd: &NlCmd, config: &Config) -> Result<(), CmdError> {
    match cmd {
        NlCmd::Gram { preset, file } => {
            let lattice = match (preset, file) {
                (Some(name), None) => resolve_lattice(name)?,
                (None, Some(path)) => {
                    GramLattice::from_json_value(&read_json(path)?).map_err(bad)?
                }
                // clap enforces exactly one of the two.
                _ => unreachable!("argument parser allows exactly one source"),
            };
            let mut v = lattice.to_json_value();
            let obj = v.as_object_mut().expect("gram JSON is an object");
            obj.insert("det".into(), json!(lattice.det().to_string()));
            let (pos, neg) = lattice.signature();
            obj.insert("signature".into(), json!([pos, neg]));
            println!("{v}");
            Ok(())
        }
        NlCmd::Delta { lattice, h, d } => {
            let base = resolve_lattice(lattice)?;
            let datum = extend_gram(&base, *h, d).map_err(bad)?;
            let index = borcherds_index(&base, *h, d).map_err(bad)?;
            let coset: Vec<String> = datum.coset().iter().map(BigInt::to_string).collect();
            let v = json!({
                "coset": coset,
                "delta": datum.delta().to_string(),
                "exponent": rational_pair(&index.exponent),
                "hodge_degenerate": index.hodge_degenerate,
                "weight": rational_pair(&index.weight),
            });
            println!("{v}");
            Ok(())
        }
        NlCmd::Mult { overlattice, h, d, m } => {
            let datum = OverlatticeDatum::from_json_value(&read_json(overlattice)?).map_err(bad)?;
            let v = match m {
                Some(m) => {
                    let count = refined_multiplicity(&datum, *m, *h, d).map_err(bad)?;
                    json!({"m": m, "multiplicity": count})
                }
                None => {
                    let count = nl_multiplicity(&datum, *h, d).map_err(bad)?;
                    json!({"multiplicity": count})
                }
            };
            println!("{v}");
            Ok(())
        }
        NlCmd::Lookup { phi, scale, h, d, lattice } => {
            let scale = parse_rational_arg(scale).map_err(bad)?;
            let base = resolve_lattice(lattice.as_deref().unwrap_or("U"))?;
            let datum = extend_gram(&base, *h, d).map_err(bad)?;
            let two_l = BigInt::from(2) * base.discriminant();
            let exponent = Rational::new(datum.delta().clone(), two_l);
            // Window wide enough for the coefficient actually read; the
            // configured truncation only ever widens it further.
            let needed: i64 = if exponent.is_integer() && !exponent.is_negative() {
                i64::try_from(&exponent.to_integer()).unwrap_or(i64::MAX)
            } else {
                0
            };
            require(
                needed <= LOOKUP_EXPONENT_CAP,
                format!("lookup exponent {exponent} exceeds the series cap {LOOKUP_EXPONENT_CAP}"),
            )?;
            let q_trunc = config.q_trunc.max(needed + 2);
            let series = match phi.as_str() {
                "e4e6" => {
                    let e4 = eisenstein(4, q_trunc).map_err(bad)?.series;
                    let e6 = eisenstein(6, q_trunc).map_err(bad)?.series;
                    e4.mul(&e6)
                }
                other => return Err(CmdError::BadInput(format!("unknown form {other}"))),
            };
            let value = nl_lookup(&series, &base, *h, d).map_err(bad)?;
            let scaled = &config.stu_nl_scale * scale * value;
            let v = json!({
                "exponent": rational_pair(&exponent),
                "value": rational_pair(&scaled),
            });
            println!("{v}");
            Ok(())
        }
    }
}

fn dispatch_verify(cmd: &VerifyCmd, config: &Config) -> Result<(), CmdError> {
    match cmd {
        VerifyCmd::Gwpt { hmax } => run_reports(&[gwpt_report(hmax.unwrap_or(config.h_max))?]),
        VerifyCmd::HarveyMoore { order } => {
            run_reports(&[harvey_moore_report(order.unwrap_or(config.hm_order))?])
        }
        VerifyCmd::Modforms { order } => run_reports(&modform_reports(*order)?),
        VerifyCmd::All { hmax, order, modform_order } => {
            let mut reports = vec![
                gwpt_report(hmax.unwrap_or(config.h_max))?,
                harvey_moore_report(order.unwrap_or(config.hm_order))?,
            ];
            reports.extend(modform_reports(*modform_order)?);
            run_reports(&reports)
        }
    }
}

fn dispatch_theorem2(r0_path: &Path, nl_path: &Path) -> Result<(), CmdError> {
    let r0 = DivisibleBpsTable::from_json_value(&read_json(r0_path)?)
        .map_err(|e| CmdError::BadInput(format!("{}: {e}", r0_path.display())))?;
    let blocks = theorem2::parse_nl_blocks(&read_json(nl_path)?)
        .map_err(|e| CmdError::BadInput(format!("{}: {e}", nl_path.display())))?;
    let mut rows = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let n0 = theorem2::theorem2_assemble(&r0, block).map_err(bad)?;
        rows.push(json!({"d": block.d, "n0": rational_pair(&n0)}));
    }
    println!("{}", Value::Array(rows));
    Ok(())
}

//! Batch command-line front end. Every subcommand is a deterministic
//! table/matrix emitter; identical invocations produce identical bytes.
//!
//! Exit codes: 0 success, 2 validation error, 3 budget refusal.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::agcode::{
    self, check_duality, designed_distance, gen_matrix, min_distance_exhaustive, CodeError,
    DEFAULT_DISTANCE_BUDGET,
};
use crate::curve::{
    castle_check, params_make, weak_castle_witness, CurveError, CurveField, CurveParams,
};
use crate::quantum::{self, singleton_report, Construction};
use crate::semigroup::curve_semigroup;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser)]
#[command(name = "castleag", version, about = "AG and quantum codes from generalized Suzuki curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct CurveArgs {
    /// exponent of q = 2^s
    #[arg(long)]
    s: u32,
    /// exponent of q0 = 2^h; requires 2h < s
    #[arg(long)]
    h: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Curve parameters, genus and the Castle report
    Curve {
        #[command(flatten)]
        curve: CurveArgs,
        /// evaluation field extension degree i
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// include the weak-Castle witness report
        #[arg(long)]
        weak_castle: bool,
    },
    /// Rational point enumeration over F_{q^i}
    Points {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// report N_i only, without streaming points
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Weierstrass semigroup at P_infinity
    Semigroup {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Feng-Rao function and order bound at an index
    Fengrao {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        ell: u64,
    },
    /// Generator matrix of C(D, r P_infinity)
    Code {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 1)]
        ext: u32,
        /// write the matrix here; summary goes to stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Duality check: G_r orthogonal to G_{r_perp}, dimensions sum to N
    Dual {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        r: u64,
    },
    /// Exact minimum distance by exhaustive codeword enumeration
    Distance {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        r: u64,
        /// codeword budget; default 2^24, or CASTLEAG_BUDGET
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Quantum code parameter tables
    Quantum {
        #[command(subcommand)]
        construction: QuantumCommand,
    },
}

#[derive(Subcommand)]
enum QuantumCommand {
    /// CSS construction with order-bound distance estimates
    Css {
        #[command(flatten)]
        curve: CurveArgs,
        /// nongap index a (single row; omit for a full sweep)
        #[arg(long)]
        a: Option<u64>,
        /// dimension gap b
        #[arg(long)]
        b: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// General t-point construction
    Tpoint {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn validation(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_VALIDATION
}

fn budget(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_BUDGET
}

fn curve_error(e: CurveError) -> i32 {
    match e {
        CurveError::BudgetExceeded { .. } => budget(e),
        _ => validation(e),
    }
}

fn code_error(e: CodeError) -> i32 {
    match e {
        CodeError::BudgetExceeded { .. } => budget(e),
        CodeError::Curve(c) => curve_error(c),
        _ => validation(e),
    }
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn open_sink(path: &Option<PathBuf>) -> std::io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn parse_params(c: &CurveArgs) -> Result<CurveParams, i32> {
    params_make(c.s, c.h).map_err(|e| validation(e))
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own message; usage problems are validation errors
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

fn dispatch(cmd: Command) -> Result<(), i32> {
    match cmd {
        Command::Curve { curve, ext, weak_castle } => {
            let params = parse_params(&curve)?;
            let report = castle_check(&params, ext).map_err(curve_error)?;
            if weak_castle {
                let wc = weak_castle_witness(&params, ext).map_err(curve_error)?;
                print_json(&json!({ "castle": report, "weak_castle": wc }));
            } else {
                print_json(&report);
            }
            Ok(())
        }
        Command::Points { curve, ext, count_only, output } => {
            let params = parse_params(&curve)?;
            let cf = CurveField::new(params, ext).map_err(curve_error)?;
            if count_only {
                let n = cf.count_points();
                print_json(&json!({
                    "s": params.s, "h": params.h, "ext": ext,
                    "n_points": n,
                }));
                return Ok(());
            }
            let mut sink = open_sink(&output).map_err(|e| validation(e))?;
            let mut write_err = None;
            writeln!(sink, "x,y").map_err(|e| validation(e))?;
            cf.stream_points(|p| {
                if write_err.is_none() {
                    if let Err(e) = writeln!(sink, "{},{}", p.x.hex(), p.y.hex()) {
                        write_err = Some(e);
                    }
                }
            });
            match write_err {
                None => Ok(()),
                Some(e) => Err(validation(e)),
            }
        }
        Command::Semigroup { curve } => {
            let params = parse_params(&curve)?;
            let sg = curve_semigroup(&params);
            let apery = sg.apery_set(sg.multiplicity()).expect("multiplicity is a member");
            print_json(&json!({
                "generators": sg.generators(),
                "genus": sg.genus(),
                "conductor": sg.conductor(),
                "multiplicity": sg.multiplicity(),
                "gaps": sg.gaps(),
                "apery_of_multiplicity": apery.elements,
                "symmetric": sg.is_symmetric(),
            }));
            Ok(())
        }
        Command::Fengrao { curve, ell } => {
            let params = parse_params(&curve)?;
            let sg = curve_semigroup(&params);
            print_json(&json!({
                "ell": ell,
                "rho_next": sg.rho(ell + 1),
                "nu": sg.feng_rao_nu(ell),
                "d_ord": sg.order_bound(ell),
            }));
            Ok(())
        }
        Command::Code { curve, r, ext, output } => {
            let params = parse_params(&curve)?;
            let cf = CurveField::new(params, ext).map_err(curve_error)?;
            let g = gen_matrix(&cf, r).map_err(code_error)?;
            match output {
                Some(path) => {
                    let mut f = BufWriter::new(File::create(&path).map_err(|e| validation(e))?);
                    agcode::write_matrix(&g, &mut f).map_err(|e| validation(e))?;
                    print_json(&json!({
                        "r": r,
                        "effective_r": g.basis.tuples.last().map_or(0, |t| t.pole),
                        "k": g.k(),
                        "n": g.n(),
                        "d_star": designed_distance(g.n() as u64, r),
                        "matrix": path,
                    }));
                }
                None => {
                    let mut out = std::io::stdout().lock();
                    agcode::write_matrix(&g, &mut out).map_err(|e| validation(e))?;
                }
            }
            Ok(())
        }
        Command::Dual { curve, r } => {
            let params = parse_params(&curve)?;
            let cf = CurveField::new(params, 1).map_err(curve_error)?;
            let rep = check_duality(&cf, r).map_err(code_error)?;
            print_json(&rep);
            Ok(())
        }
        Command::Distance { curve, r, budget: budget_flag } => {
            let params = parse_params(&curve)?;
            let budget = budget_flag
                .or_else(|| {
                    std::env::var("CASTLEAG_BUDGET").ok().and_then(|v| v.parse().ok())
                })
                .unwrap_or(DEFAULT_DISTANCE_BUDGET);
            let cf = CurveField::new(params, 1).map_err(curve_error)?;
            let g = gen_matrix(&cf, r).map_err(code_error)?;
            let d = min_distance_exhaustive(&g, budget).map_err(code_error)?;
            print_json(&json!({
                "r": r,
                "k": g.k(),
                "n": g.n(),
                "d_star": designed_distance(g.n() as u64, r),
                "d_exact": d,
            }));
            Ok(())
        }
        Command::Quantum { construction } => {
            let (curve, a, b, format, output, kind) = match construction {
                QuantumCommand::Css { curve, a, b, format, output } => {
                    (curve, a, b, format, output, Construction::CssOrderBound)
                }
                QuantumCommand::Tpoint { curve, a, b, format, output } => {
                    (curve, a, b, format, output, Construction::TPoint)
                }
            };
            let params = parse_params(&curve)?;
            let rows = match (a, b) {
                (Some(a), Some(b)) => match kind {
                    Construction::TPoint => {
                        vec![quantum::t_point_params(&params, a, b).map_err(|e| validation(e))?]
                    }
                    Construction::CssOrderBound => {
                        vec![quantum::css_params(&params, a, b).map_err(|e| validation(e))?.result]
                    }
                },
                (None, None) => {
                    quantum::quantum_table(&params, kind, None, None).map_err(|e| validation(e))?
                }
                _ => return Err(validation("flags --a and --b must be given together")),
            };
            let mut sink = open_sink(&output).map_err(|e| validation(e))?;
            match format {
                Format::Json => {
                    let full: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            let sr = singleton_report(r).expect("emitted rows satisfy Singleton");
                            json!({
                                "n": r.n, "k": r.k, "d_lower": r.d_lower,
                                "construction": r.construction,
                                "a": r.a, "b": r.b,
                                "delta_q_upper": sr.delta_q_upper,
                            })
                        })
                        .collect();
                    writeln!(sink, "{}", serde_json::to_string_pretty(&full).unwrap())
                        .map_err(|e| validation(e))?;
                }
                Format::Csv => {
                    writeln!(sink, "n,k,d_lower,construction,a,b,delta_q_upper")
                        .map_err(|e| validation(e))?;
                    for r in &rows {
                        let sr = singleton_report(r).expect("emitted rows satisfy Singleton");
                        let tag = match r.construction {
                            Construction::CssOrderBound => "css_order_bound",
                            Construction::TPoint => "t_point",
                        };
                        writeln!(
                            sink,
                            "{},{},{},{},{},{},{}",
                            r.n, r.k, r.d_lower, tag, r.a, r.b, sr.delta_q_upper
                        )
                        .map_err(|e| validation(e))?;
                    }
                }
            }
            Ok(())
        }
    }
}

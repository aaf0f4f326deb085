use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use bridgesynth::canonical::{canonical_invariants, is_regular, to_canonical};
use bridgesynth::classify::{classify, FiveElementVerdict};
use bridgesynth::forward::{ac_grid, ac_residual, forward_impedance};
use bridgesynth::region::{region_sweep_with, to_csv, to_svg, RegionSpec};
use bridgesynth::synth::{synth_config, synthesize};
use bridgesynth::{par, Biquadratic, ConfigId, Error, Realization};

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_REALIZABLE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "bridgesynth", version, about = "Five-element bridge realizations of biquadratic impedances")]
struct Cli {
    /// Emit JSON (the default for every subcommand except `classify --brief` and `region`).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct ImpedanceArgs {
    /// Numerator a2,a1,a0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    num: Option<Vec<f64>>,
    /// Denominator b2,b1,b0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    den: Option<Vec<f64>>,
    /// Impedance JSON file ({"num":[..],"den":[..]}), `-` for stdin.
    #[arg(long)]
    impedance: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Membership, realizability conditions and recommended configurations.
    Classify {
        #[command(flatten)]
        z: ImpedanceArgs,
        /// One line: verdict and first recommended configuration.
        #[arg(long)]
        brief: bool,
    },
    /// Element values.
    Synth {
        #[command(flatten)]
        z: ImpedanceArgs,
        /// Configuration id (fig1a, fig7b.2, ...) or `all`.
        #[arg(long, default_value = "all")]
        config: String,
        /// Write a SPICE netlist of the first realization here.
        #[arg(long)]
        netlist: Option<PathBuf>,
    },
    /// Impedance of a realization.
    Forward {
        #[arg(long)]
        config: ConfigId,
        /// Element values, e.g. R1=1,R2=2,C1=1e-6.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
    },
    /// Check a realization against an impedance.
    Verify {
        /// Realization JSON ({"config": .., "values": {..}}).
        #[arg(long)]
        realization: PathBuf,
        #[command(flatten)]
        z: ImpedanceArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Canonical triple and the quantities that depend on it.
    Canonical {
        #[command(flatten)]
        z: ImpedanceArgs,
    },
    /// Realizability map over the (U, V) plane at fixed W.
    Region {
        #[arg(long)]
        w: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 5.0])]
        u_range: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 5.0])]
        v_range: Vec<f64>,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        /// CSV destination (stdout when absent).
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Evaluate on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

/// A failure carrying its exit status.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ConditionNotMet(_) | Error::NoAdmissibleRoot(_) | Error::NotInZb => EXIT_NOT_REALIZABLE,
            Error::SearchExhausted(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INVALID,
        };
        Fail(code, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(EXIT_INVALID, msg.into())
}

fn read_source(p: &PathBuf) -> Result<String, Fail> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| invalid(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))
    }
}

fn impedance(a: &ImpedanceArgs) -> Result<Biquadratic, Fail> {
    match (&a.num, &a.den, &a.impedance) {
        (Some(n), Some(d), None) => match (n.as_slice(), d.as_slice()) {
            ([a2, a1, a0], [b2, b1, b0]) => Ok(Biquadratic::new(*a2, *a1, *a0, *b2, *b1, *b0)?),
            _ => Err(invalid("--num and --den take three comma-separated values each")),
        },
        (None, None, Some(p)) => serde_json::from_str(&read_source(p)?).map_err(|e| invalid(format!("impedance: {e}"))),
        _ => Err(invalid("give either --num and --den, or --impedance")),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Fail> {
    let s = serde_json::to_string_pretty(v).map_err(|e| invalid(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn write_file(p: &PathBuf, body: &str) -> Result<(), Fail> {
    fs::write(p, body).map_err(|e| invalid(format!("{}: {e}", p.display())))
}

fn parse_values(items: &[String]) -> Result<BTreeMap<String, f64>, Fail> {
    items
        .iter()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected label=value, got {kv}")))?;
            let v: f64 = v.trim().parse().map_err(|_| invalid(format!("bad value in {kv}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

#[derive(Serialize)]
struct CanonicalOut {
    #[serde(rename = "U")]
    u: f64,
    #[serde(rename = "V")]
    v: f64,
    #[serde(rename = "W")]
    w: f64,
    alpha: f64,
    beta: f64,
    sigma_c: f64,
    #[serde(rename = "R_c")]
    r_c: f64,
    regular: Option<bool>,
}

#[derive(Serialize)]
struct VerifyOut {
    config: ConfigId,
    residual: f64,
    ac_residual: f64,
    tol: f64,
    pass: bool,
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Classify { z, brief } => {
            let z = impedance(&z)?;
            let report = classify(&z);
            if brief && !cli.json {
                println!("{}", report.brief());
            } else {
                print_json(&report)?;
            }
            Ok(match report.realizable_five_element_bridge {
                Some(FiveElementVerdict::Yes) => 0,
                Some(FiveElementVerdict::UnknownFig7) => EXIT_INCONCLUSIVE,
                _ => EXIT_NOT_REALIZABLE,
            })
        }
        Cmd::Synth { z, config, netlist } => {
            let z = impedance(&z)?;
            let first = if config == "all" {
                let report = synthesize(&z);
                print_json(&report)?;
                match report.outcomes.first() {
                    Some(o) => o.realization.clone(),
                    None => {
                        let c = classify(&z);
                        let code = if c.realizable_five_element_bridge == Some(FiveElementVerdict::UnknownFig7) {
                            EXIT_INCONCLUSIVE
                        } else {
                            EXIT_NOT_REALIZABLE
                        };
                        return Ok(code);
                    }
                }
            } else {
                let id: ConfigId = config.parse().map_err(|e: Error| invalid(e.to_string()))?;
                let out = synth_config(&z, id)?;
                print_json(&out)?;
                out.realization
            };
            if let Some(p) = netlist {
                write_file(&p, &first.netlist())?;
            }
            Ok(0)
        }
        Cmd::Forward { config, values } => {
            let r = Realization::new(config, parse_values(&values)?)?;
            print_json(&forward_impedance(&r)?)?;
            Ok(0)
        }
        Cmd::Verify { realization, z, tol } => {
            let r: Realization = serde_json::from_str(&read_source(&realization)?)
                .map_err(|e| invalid(format!("realization: {e}")))?;
            let r = Realization::new(r.config, r.values)?;
            let z = impedance(&z)?;
            let residual = forward_impedance(&r)
                .map(|f| z.equivalence_residual(&f))
                .unwrap_or(f64::INFINITY);
            let ac = ac_residual(&r, &z, &ac_grid(&z));
            let pass = residual <= tol;
            print_json(&VerifyOut {
                config: r.config,
                residual,
                ac_residual: ac,
                tol,
                pass,
            })?;
            Ok(if pass { 0 } else { EXIT_NOT_REALIZABLE })
        }
        Cmd::Canonical { z } => {
            let z = impedance(&z)?;
            let (t, tr) = to_canonical(&z)?;
            let ci = canonical_invariants(t);
            print_json(&CanonicalOut {
                u: t.u,
                v: t.v,
                w: t.w,
                alpha: tr.alpha,
                beta: tr.beta,
                sigma_c: ci.sigma_c.value,
                r_c: ci.r_c.value,
                regular: is_regular(&z).ok(),
            })?;
            Ok(0)
        }
        Cmd::Region {
            w,
            u_range,
            v_range,
            grid,
            csv,
            svg,
            sequential,
        } => {
            if u_range.len() != 2 || v_range.len() != 2 {
                return Err(invalid("ranges take two comma-separated values"));
            }
            let spec = RegionSpec {
                w,
                u_range: (u_range[0], u_range[1]),
                v_range: (v_range[0], v_range[1]),
                grid,
            };
            let exec = if sequential { par::Exec::Sequential } else { par::Exec::default() };
            let cells = region_sweep_with(exec, spec)?;
            if let Some(p) = &svg {
                write_file(p, &to_svg(&cells, &spec))?;
            }
            match (&csv, cli.json) {
                (Some(p), _) => write_file(p, &to_csv(&cells))?,
                (None, true) => print_json(&cells)?,
                (None, false) => print!("{}", to_csv(&cells)),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

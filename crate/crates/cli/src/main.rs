mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use orbit_curvature::bounds::{
    classical_family_check, focal_lower_bound, table1_constant, BoundConstant,
};
use orbit_curvature::chevalley::{build_chevalley, verify_jacobi, verify_jacobi_sampled};
use orbit_curvature::curvature::{
    c_delta, mab_certificate, maximize_sff, optimize::DEFAULT_SEED, phi_set, MaximizeConfig,
};
use orbit_curvature::hwmodule::HwContext;
use orbit_curvature::rootsys::{build_root_system, isoparametric_check, CartanType, Family};
use orbit_curvature::{Error, Rational};

use report::{float, rational, vector, Outcome, Report};

const WORKERS_VAR: &str = "ORBCURV_WORKERS";
const CLASSICAL_SEED: u64 = 0x0c1a_551c;

/// Curvature bounds for orbits of compact group actions on spheres.
///
/// Set ORBCURV_WORKERS to limit the number of worker threads.
#[derive(Parser, Debug)]
#[command(name = "orbcurv", version)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-type constants, with their exact squares.
    Table1,
    /// Largest weighted count of ordered splittings of a root sum.
    Cdelta(TypeArg),
    /// Sums of two positive roots where the bound functional can be nonzero.
    Phi(TypeArg),
    /// Focal-radius lower bound for a group with the given simple factors.
    ///
    /// Irreducibility of the representation is not checked; the factor
    /// list is taken at face value.
    Bound {
        /// Comma-separated Cartan types, e.g. A2,E8. Torus factors (T) and an
        /// empty list fall back to the torus constant.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        factors: Vec<String>,
        /// The representation is of real type.
        #[arg(long)]
        real: bool,
    },
    /// Run one of the certificates.
    #[command(subcommand)]
    Verify(Verify),
    /// Search for the largest second fundamental form at the highest weight
    /// vector.
    Maximize {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        weight: WeightArg,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Restrict to real coefficients.
        #[arg(long)]
        real: bool,
    },
    /// Largest squared secant of the angle between a root and the highest root.
    Isopar(TypeArg),
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Exact pairwise bound for every active pair of roots.
    Mab {
        #[command(flatten)]
        ty: TypeArg,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Sample the root bound functional against the type constant.
    Classical {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = CLASSICAL_SEED)]
        seed: u64,
    },
    /// Jacobi identity on basis triples, exhaustive up to rank 4.
    Jacobi {
        #[command(flatten)]
        ty: TypeArg,
        /// Sample this many triples instead of the default strategy.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = orbit_curvature::chevalley::JACOBI_DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct TypeArg {
    /// Cartan type such as A3, B2, E8.
    #[arg(long = "type", value_parser = parse_type)]
    ty: CartanType,
}

#[derive(Args, Debug)]
struct WeightArg {
    /// Highest weight in fundamental coordinates, e.g. 1,0,2.
    #[arg(long, value_delimiter = ',', required = true)]
    weight: Vec<u32>,
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn weight_for(ty: CartanType, w: &[u32]) -> Result<Vec<u32>, Error> {
    if w.len() != ty.rank() {
        return Err(Error::WrongLength {
            expected: ty.rank(),
            got: w.len(),
        });
    }
    Ok(w.to_vec())
}

fn table1() -> Outcome {
    let rows: Vec<(&str, CartanType)> = vec![
        ("A_n", CartanType::new(Family::A, 1)?),
        ("B_n", CartanType::new(Family::B, 2)?),
        ("C_n", CartanType::new(Family::C, 3)?),
        ("D_n", CartanType::new(Family::D, 4)?),
        ("G2", CartanType::new(Family::G, 2)?),
        ("F4", CartanType::new(Family::F, 4)?),
        ("E6", CartanType::new(Family::E, 6)?),
        ("E7", CartanType::new(Family::E, 7)?),
        ("E8", CartanType::new(Family::E, 8)?),
    ];
    let mut text = String::from("type  C^2  C\n");
    let mut items = Vec::new();
    for (name, t) in rows {
        let BoundConstant { c_squared, c_float } = table1_constant(t);
        text.push_str(&format!("{name:<5} {c_squared:<4} {c_float:.6}\n"));
        items.push(json!({"type": name, "c_squared": c_squared, "c": float(c_float)}));
    }
    Ok(Report::ok(
        json!({"command": "table1", "rows": items}),
        text,
    ))
}

fn cdelta(ty: CartanType) -> Outcome {
    let v = c_delta(&build_root_system(ty)?);
    Ok(Report::ok(
        json!({"command": "cdelta", "type": ty.to_string(), "c_delta": v}),
        format!("{v}\n"),
    ))
}

fn phi(ty: CartanType) -> Outcome {
    let set = phi_set(&build_root_system(ty)?);
    let text: String = set.iter().map(|g| format!("{g}\n")).collect();
    Ok(Report::ok(
        json!({
            "command": "phi",
            "type": ty.to_string(),
            "count": set.len(),
            "gammas": set.iter().map(vector).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn bound(factors: &[String], real: bool) -> Outcome {
    let mut types = Vec::new();
    let mut names = Vec::new();
    for f in factors.iter().map(|f| f.trim()).filter(|f| !f.is_empty()) {
        let is_torus = f.eq_ignore_ascii_case("T")
            || (f.len() > 1 && f[..1].eq_ignore_ascii_case("T") && f[1..].parse::<u32>().is_ok());
        if !is_torus {
            types.push(f.parse::<CartanType>()?);
        }
        names.push(f.to_string());
    }
    if types.is_empty() {
        eprintln!("warning: no simple factors given; using the torus constant C^2 = 2");
    }
    let b = focal_lower_bound(&types, !real);
    Ok(Report::ok(
        json!({
            "command": "bound",
            "factors": names,
            "c_squared": b.c_squared,
            "c": float(b.c),
            "real": real,
            "radians": float(b.bound_radians),
        }),
        format!(
            "C^2 = {}\nfocal radius >= {:.12} rad ({})\n",
            b.c_squared,
            b.bound_radians,
            if real { "real" } else { "complex" }
        ),
    ))
}

fn verify_mab(ty: CartanType, w: &[u32]) -> Outcome {
    let w = weight_for(ty, w)?;
    let tbl = build_chevalley(&build_root_system(ty)?);
    let ctx = HwContext::from_fundamental(&tbl, &w)?;
    let rep = mab_certificate(&ctx)?;
    let failures: Vec<_> = rep
        .failures
        .iter()
        .map(|f| json!({"alpha": f.alpha, "beta": f.beta, "lhs": rational(&f.lhs), "rhs": rational(&f.rhs)}))
        .collect();
    let text = format!(
        "{} pairs checked, {} failures\n",
        rep.pairs_checked,
        rep.failures.len()
    );
    Ok(Report::new(
        rep.passed(),
        json!({
            "command": "verify",
            "check": "mab",
            "type": ty.to_string(),
            "weight": w,
            "pairs_checked": rep.pairs_checked,
            "failures": failures,
            "passed": rep.passed(),
        }),
        text,
    ))
}

fn verify_classical(ty: CartanType, samples: usize, seed: u64) -> Outcome {
    if samples == 0 {
        return Err("--samples must be at least 1".into());
    }
    let rep = classical_family_check(ty, samples, seed)?;
    let text = format!(
        "{} samples, max observed {:.9} against C^2 = {}\n",
        rep.samples, rep.max_observed, rep.c_squared
    );
    Ok(Report::new(
        rep.pass,
        json!({
            "command": "verify",
            "check": "classical",
            "type": ty.to_string(),
            "samples": samples,
            "seed": seed,
            "c_squared": rep.c_squared,
            "max_observed": float(rep.max_observed),
            "passed": rep.pass,
        }),
        text,
    ))
}

fn verify_jacobi_cmd(ty: CartanType, samples: Option<usize>, seed: u64) -> Outcome {
    let tbl = build_chevalley(&build_root_system(ty)?);
    let rep = match samples {
        Some(n) => verify_jacobi_sampled(&tbl, n, seed),
        None => verify_jacobi(&tbl),
    };
    let text = format!(
        "{} triples ({}), {} failures\n",
        rep.triples_checked,
        if rep.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        },
        rep.failures
    );
    Ok(Report::new(
        rep.passed(),
        json!({
            "command": "verify",
            "check": "jacobi",
            "type": ty.to_string(),
            "triples_checked": rep.triples_checked,
            "failures": rep.failures,
            "exhaustive": rep.exhaustive,
            "passed": rep.passed(),
        }),
        text,
    ))
}

fn maximize(ty: CartanType, w: &[u32], starts: usize, seed: u64, real: bool) -> Outcome {
    if starts == 0 {
        return Err("--starts must be at least 1".into());
    }
    let w = weight_for(ty, w)?;
    let rs = build_root_system(ty)?;
    let cd = c_delta(&rs);
    let tbl = build_chevalley(&rs);
    let ctx = HwContext::from_fundamental(&tbl, &w)?;
    let cfg = MaximizeConfig {
        starts,
        seed,
        real_only: real,
        ..Default::default()
    };
    let rep = maximize_sff::<f64>(&ctx, &cfg)?;
    let c2 = table1_constant(ty).c_squared;
    let z: Vec<_> = rep
        .best
        .z
        .iter()
        .map(|c| json!([float(c.re), float(c.im)]))
        .collect();
    let text = format!(
        "max ||II||^2 ~ {:.12} (C^2 = {c2}, c_delta = {cd})\nstart {} of {}, {} converged\n",
        rep.best_value, rep.best_start, rep.starts, rep.converged
    );
    Ok(Report::ok(
        json!({
            "command": "maximize",
            "type": ty.to_string(),
            "weight": w,
            "starts": rep.starts,
            "seed": seed,
            "real": real,
            "best_value": float(rep.best_value),
            "best_start": rep.best_start,
            "converged": rep.converged,
            "grad_norm": float(rep.grad_norm),
            "feasibility_residual": float(rep.feasibility_residual),
            "c_squared": c2,
            "c_delta": cd,
            "roots": rep.best.roots,
            "z": z,
        }),
        text,
    ))
}

fn isopar(ty: CartanType) -> Outcome {
    let v = isoparametric_check(&build_root_system(ty)?);
    let pass = v <= Rational::from_integer(4);
    Ok(Report::new(
        pass,
        json!({"command": "isopar", "type": ty.to_string(), "value": rational(&v), "passed": pass}),
        format!("{v}\n"),
    ))
}

fn configure_workers() -> Result<(), String> {
    let Ok(raw) = std::env::var(WORKERS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{WORKERS_VAR} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Outcome {
    configure_workers()?;
    match cli.command {
        Command::Table1 => table1(),
        Command::Cdelta(t) => cdelta(t.ty),
        Command::Phi(t) => phi(t.ty),
        Command::Bound { factors, real } => bound(&factors, real),
        Command::Verify(Verify::Mab { ty, weight }) => verify_mab(ty.ty, &weight.weight),
        Command::Verify(Verify::Classical { ty, samples, seed }) => {
            verify_classical(ty.ty, samples, seed)
        }
        Command::Verify(Verify::Jacobi { ty, samples, seed }) => {
            verify_jacobi_cmd(ty.ty, samples, seed)
        }
        Command::Maximize {
            ty,
            weight,
            starts,
            seed,
            real,
        } => maximize(ty.ty, &weight.weight, starts, seed, real),
        Command::Isopar(t) => isopar(t.ty),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(rep) => {
            if json {
                println!("{}", rep.json);
            } else {
                print!("{}", rep.text);
            }
            if rep.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

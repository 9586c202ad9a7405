use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use nilmult::fdlie::{self, LieAlgebra};
use nilmult::freelie::{self, checked_witt, hall_listing};
use nilmult::multiplier::{
    algebra_report, nilpotent_multiplier_with_options, present_with_options,
    z_star_of_presentation, MultiplierOptions,
};
use nilmult::verify::{self, VerifyLimits};
use nilmult::StructureConstants;

#[derive(Parser)]
#[command(
    name = "nilmult",
    version,
    about = "Multipliers and capability of nilpotent Lie algebras over Q"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to a file instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, central series and shape of an algebra file.
    Info { file: PathBuf },
    /// Number of Hall words of a given length.
    Witt {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        length: usize,
    },
    /// Lists the Hall basis of a free nilpotent algebra.
    Hall {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        class: usize,
    },
    /// Writes an algebra file: `abelian N`, `heisenberg M`, `free D C`
    /// or `expr "H(1)+A(1)"`.
    Make { kind: String, params: Vec<String> },
    /// Computes M^(c) of an algebra file.
    Multiplier {
        file: PathBuf,
        #[arg(long)]
        c: usize,
        /// Print the Hall-word basis.
        #[arg(long)]
        basis: bool,
        /// Allow c >= 3.
        #[arg(long = "opt-in-c3")]
        opt_in_c3: bool,
    },
    /// Decides c-capability through the epicenter Z*_c.
    Capable {
        file: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(long = "opt-in-c3")]
        opt_in_c3: bool,
    },
    /// Runs the reproduction table; exits 1 if any case fails.
    VerifyPaper {
        #[arg(long, default_value_t = VerifyLimits::default().max_heisenberg)]
        max_heisenberg: usize,
        #[arg(long, default_value_t = VerifyLimits::default().max_abelian)]
        max_abelian: usize,
        #[arg(long, default_value_t = VerifyLimits::default().random_lifts)]
        random_lifts: usize,
        #[arg(long, default_value_t = VerifyLimits::default().seed)]
        seed: u64,
    },
}

struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn load(path: &Path) -> Result<LieAlgebra> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    LieAlgebra::from_json(&text).with_context(|| format!("{}", path.display()))
}

fn options(opt_in_c3: bool) -> MultiplierOptions {
    MultiplierOptions {
        allow_higher_weight: opt_in_c3,
        ..MultiplierOptions::default()
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn info(path: &Path, as_json: bool) -> Result<String> {
    let l = load(path)?;
    let s = fdlie::series(&l);
    let lower: Vec<usize> = s.lower_central.iter().map(|g| g.dim()).collect();
    let upper: Vec<usize> = s.upper_central.iter().map(|z| z.dim()).collect();
    let derived = l.derived().dim();
    let shape = fdlie::recognize_derived_dim_one(&l)
        .ok()
        .map(|(m, r)| format!("H({m})+A({r})"));
    if as_json {
        return Ok(pretty(&json!({
            "algebra": l.name(),
            "dim": l.dim(),
            "basis": l.basis_labels(),
            "nilpotency_class": s.nilpotency_class,
            "lower_central_dims": lower,
            "upper_central_dims": upper,
            "derived_dim": derived,
            "abelian": l.is_abelian(),
            "decomposition": shape,
        })));
    }
    let mut out = format!(
        "{}: dim {}\nbasis: {}\n",
        l.name(),
        l.dim(),
        l.basis_labels().join(", ")
    );
    match s.nilpotency_class {
        Some(k) => out += &format!("nilpotent of class {k}\n"),
        None => out += "not nilpotent\n",
    }
    out += &format!(
        "lower central dims: {lower:?}\nupper central dims: {upper:?}\ndim L^2: {derived}\n"
    );
    if let Some(shape) = shape {
        out += &format!("isomorphic to {shape}\n");
    }
    Ok(out)
}

fn witt_cmd(d: usize, n: usize, as_json: bool) -> Result<String> {
    if d == 0 || n == 0 {
        bail!("--generators and --length must be positive");
    }
    let Some(w) = checked_witt(d, n) else {
        bail!("witt({d}, {n}) overflows");
    };
    Ok(if as_json {
        pretty(&json!({ "generators": d, "length": n, "count": w.to_string() }))
    } else {
        format!("{w}\n")
    })
}

fn hall(d: usize, c: usize, as_json: bool) -> Result<String> {
    if d == 0 || c == 0 {
        bail!("--generators and --class must be positive");
    }
    match freelie::free_nilpotent_dim(d, c) {
        Some(n) if n <= freelie::DEFAULT_DIM_CAP as u128 => {}
        _ => bail!(
            "Hall basis of rank {d} and class {c} exceeds {} words",
            freelie::DEFAULT_DIM_CAP
        ),
    }
    let listing = hall_listing(&freelie::hall_basis(d, c));
    if as_json {
        return Ok(pretty(
            &json!({ "generators": d, "class": c, "words": listing }),
        ));
    }
    let mut out = String::new();
    for e in listing {
        out += &format!("{:>5} {:>3} {}\n", e.index + 1, e.length, e.word);
    }
    Ok(out)
}

fn parse_param(params: &[String], i: usize, what: &str) -> Result<usize> {
    let p = params
        .get(i)
        .with_context(|| format!("missing parameter {what}"))?;
    p.parse()
        .with_context(|| format!("parameter {what}: not a number: {p:?}"))
}

fn make(kind: &str, params: &[String]) -> Result<LieAlgebra> {
    let expected = match kind {
        "abelian" | "heisenberg" | "expr" => 1,
        "free" => 2,
        _ => bail!("unknown kind {kind:?}; use abelian, heisenberg, free or expr"),
    };
    if params.len() != expected {
        bail!("{kind} takes {expected} parameter(s), got {}", params.len());
    }
    let l = match kind {
        "abelian" => fdlie::abelian(parse_param(params, 0, "n")?),
        "heisenberg" => {
            let m = parse_param(params, 0, "m")?;
            if m == 0 {
                bail!("heisenberg needs m >= 1");
            }
            fdlie::heisenberg(m)
        }
        "free" => {
            let d = parse_param(params, 0, "d")?;
            let c = parse_param(params, 1, "c")?;
            freelie::free_nilpotent(d, c)?.to_lie_algebra()
        }
        _ => fdlie::named(&params[0])?,
    };
    Ok(l)
}

fn multiplier(
    path: &Path,
    c: usize,
    basis: bool,
    opt_in_c3: bool,
    as_json: bool,
) -> Result<String> {
    let l = load(path)?;
    let opts = options(opt_in_c3);
    if as_json {
        let report = algebra_report(&l, c, &opts)?;
        return Ok(pretty(&serde_json::to_value(report)?));
    }
    let m = nilpotent_multiplier_with_options(&l, c, &opts)?;
    let mut out = format!("dim M^({c})({}) = {}\n", l.name(), m.dimension);
    if basis {
        for w in &m.basis_words {
            out += &format!("  {w}\n");
        }
    }
    Ok(out)
}

fn capable(path: &Path, c: usize, opt_in_c3: bool, as_json: bool) -> Result<String> {
    let l = load(path)?;
    let p = present_with_options(&l, c, &options(opt_in_c3))?;
    let z = z_star_of_presentation(&p);
    let verdict = z.is_zero();
    if as_json {
        return Ok(pretty(&json!({
            "algebra": l.name(),
            "c": c,
            "capable": verdict,
            "z_star_dim": z.dim(),
            "z_star_basis": z.basis_rows()
                .map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })));
    }
    let label = if c == 1 {
        "capable".to_string()
    } else {
        format!("{c}-capable")
    };
    Ok(if verdict {
        format!("{}: {label}; Z*_{c} = 0\n", l.name())
    } else {
        format!(
            "{}: not {label}; Z*_{c} has dimension {} (>= 1)\n",
            l.name(),
            z.dim()
        )
    })
}

fn verify_paper(limits: VerifyLimits, as_json: bool) -> Outcome {
    let cases = verify::run(&limits);
    let summary = verify::summarize(&cases);
    let ok = summary.failed == 0;
    let text = if as_json {
        pretty(&json!({ "limits": limits, "cases": cases, "summary": summary }))
    } else {
        let width = cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &cases {
            out += &format!(
                "{} {:<width$}  expected {} ({}), computed {}\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.id,
                c.expected,
                serde_json::to_value(c.provenance)
                    .expect("provenance serializes")
                    .as_str()
                    .unwrap_or(""),
                c.computed,
            );
        }
        out += &format!("{}/{} passed\n", summary.passed, summary.total);
        out
    };
    Outcome { text, ok }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let j = cli.json;
    Ok(match &cli.command {
        Command::Info { file } => Outcome::ok(info(file, j)?),
        Command::Witt { generators, length } => Outcome::ok(witt_cmd(*generators, *length, j)?),
        Command::Hall { generators, class } => Outcome::ok(hall(*generators, *class, j)?),
        Command::Make { kind, params } => {
            let mut text = make(kind, params)?.to_json();
            text.push('\n');
            Outcome::ok(text)
        }
        Command::Multiplier {
            file,
            c,
            basis,
            opt_in_c3,
        } => Outcome::ok(multiplier(file, *c, *basis, *opt_in_c3, j)?),
        Command::Capable { file, c, opt_in_c3 } => Outcome::ok(capable(file, *c, *opt_in_c3, j)?),
        Command::VerifyPaper {
            max_heisenberg,
            max_abelian,
            random_lifts,
            seed,
        } => verify_paper(
            VerifyLimits {
                max_abelian: *max_abelian,
                max_heisenberg: *max_heisenberg,
                random_lifts: *random_lifts,
                seed: *seed,
            },
            j,
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.text) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

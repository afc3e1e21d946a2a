mod cache;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use osp_kostka::character::{irreducible_character, WeightMult};
use osp_kostka::euler::verify_bryl_with;
use osp_kostka::kostka::{kostka_custom, scan_box, KostkaEngine, RootSet};
use osp_kostka::moment::run_trials;
use osp_kostka::odd_roots::parse_int_list;
use osp_kostka::orbits::{
    closure_hasse, closure_le, embed_signatures, labels_in_box, lattice_representative, orbit_dim, stabilizer,
    stalk_poincare_with, theta_signature, OrbitLabel,
};
use osp_kostka::root_data::{is_dominant, positive_roots};
use osp_kostka::{BiWeight, Family, GroupType, OspRootData, ProductType};
use serde_json::{json, Value};

use cache::CacheFile;

#[derive(Parser)]
#[command(name = "osp-kostka", version, about = "Orthosymplectic Kostka polynomials and orbit combinatorics")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Polynomial cache file.
    #[arg(long, global = true, env = "OSP_KOSTKA_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    C,
    D,
}

#[derive(Subcommand)]
enum Command {
    /// Even and odd positive roots.
    Roots {
        #[arg(short = 'N')]
        n: usize,
        /// Print the odd positive and simple odd roots.
        #[arg(long)]
        odd: bool,
    },
    /// Odd-root partition polynomial L_α.
    Lpoly {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: BiWeight,
    },
    /// Kostka polynomial K_{λ,μ}.
    Kostka {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: BiWeight,
        #[arg(long, allow_hyphen_values = true)]
        mu: BiWeight,
    },
    /// Kostka polynomial for a root set read from a JSON file.
    KostkaCustom {
        #[arg(long)]
        roots: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: BiWeight,
        #[arg(long, allow_hyphen_values = true)]
        mu: BiWeight,
    },
    /// Dominance λ ≥ μ with its simple-root certificate.
    Dominance {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: BiWeight,
        #[arg(long, allow_hyphen_values = true)]
        mu: BiWeight,
    },
    /// Closure order of two orbits.
    Closure {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lower: OrbitLabel,
        #[arg(long, allow_hyphen_values = true)]
        upper: OrbitLabel,
    },
    /// Orbit dimension.
    Dim {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        label: OrbitLabel,
    },
    /// IC stalk of the λ-orbit at the μ-orbit.
    Stalk {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: OrbitLabel,
        #[arg(long, allow_hyphen_values = true)]
        mu: OrbitLabel,
    },
    /// Closure poset on a box of labels.
    Poset {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long = "box")]
        bound: i64,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Signature sequences and lattice representative of an orbit.
    OrbitRep {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        label: OrbitLabel,
    },
    /// Stabilizer data of an orbit.
    Stabilizer {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        label: OrbitLabel,
    },
    /// Irreducible character of SO_2r (D) or Sp_2r (C).
    Char {
        #[arg(long = "type", value_enum, ignore_case = true)]
        ty: TypeArg,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Check the Euler-characteristic identity degree by degree.
    VerifyBryl {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: BiWeight,
        #[arg(long)]
        qmax: usize,
    },
    /// Positivity and support of K on a box of dominant pairs.
    VerifyPositivity {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long = "box")]
        bound: i64,
    },
    /// Randomized moment-map identities.
    MomentCheck {
        #[arg(short = 'N')]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A rendered result; `ok = false` marks a verification failure.
struct Output {
    json: Value,
    text: String,
    ok: bool,
    /// Print `text` whatever the format (DOT output).
    raw: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Self { json, text, ok: true, raw: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        set_jobs(jobs);
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json if !out.raw => println!("{}", out.json),
                _ => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<osp_kostka::Error>() {
                Some(osp_kostka::Error::Internal(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

#[cfg(feature = "parallel")]
fn set_jobs(jobs: usize) {
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
        eprintln!("warning: --jobs ignored: {e}");
    }
}

#[cfg(not(feature = "parallel"))]
fn set_jobs(_jobs: usize) {}

fn osp(n: usize) -> Result<OspRootData> {
    Ok(OspRootData::new(n)?)
}

/// Runs `f` on an engine seeded from the cache, then writes the grown cache
/// back.
fn with_engine<T>(cache: Option<&Path>, data: &OspRootData, f: impl FnOnce(&KostkaEngine) -> Result<T>) -> Result<T> {
    let engine = KostkaEngine::new(data);
    let Some(path) = cache else {
        return f(&engine);
    };
    let mut file = CacheFile::load(path);
    file.preload(data.big_n(), &engine);
    let out = f(&engine)?;
    file.absorb(data.big_n(), &engine);
    if let Err(e) = file.store(path) {
        eprintln!("warning: cache not written: {e:#}");
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output> {
    let cache = cli.cache.as_deref();
    match &cli.command {
        Command::Roots { n, odd } => roots(&osp(*n)?, *odd),
        Command::Lpoly { n, alpha } => {
            let data = osp(*n)?;
            data.check_shape(alpha)?;
            let p = with_engine(cache, &data, |e| Ok(e.l_poly(alpha)?))?;
            Ok(Output::new(json!({ "poly": p }), format!("L_{alpha} = {p}\n")))
        }
        Command::Kostka { n, lambda, mu } => {
            let data = osp(*n)?;
            let p = with_engine(cache, &data, |e| Ok(e.kostka(lambda, mu)?))?;
            Ok(Output::new(json!({ "poly": p }), format!("K_{lambda},{mu} = {p}\n")))
        }
        Command::KostkaCustom { roots, lambda, mu } => {
            let text = fs::read_to_string(roots).with_context(|| format!("reading {}", roots.display()))?;
            let set: RootSet = serde_json::from_str(&text).with_context(|| format!("parsing {}", roots.display()))?;
            let p = kostka_custom(&set, lambda, mu)?;
            Ok(Output::new(json!({ "poly": p }), format!("{}: K_{lambda},{mu} = {p}\n", set.label)))
        }
        Command::Dominance { n, lambda, mu } => {
            let data = osp(*n)?;
            let cert = data.dominance_certificate(lambda, mu)?;
            let text = match &cert {
                Some(c) => format!("{lambda} >= {mu}\nsimple-root coordinates: {c:?}\n"),
                None => format!("{lambda} is not >= {mu}\n"),
            };
            Ok(Output::new(json!({ "ge": cert.is_some(), "certificate": cert }), text))
        }
        Command::Closure { n, lower, upper } => {
            let le = closure_le(&osp(*n)?, lower, upper)?;
            let rel = if le { "<=" } else { "is not <=" };
            Ok(Output::new(json!({ "le": le }), format!("{lower} {rel} {upper}\n")))
        }
        Command::Dim { n, label } => {
            let d = orbit_dim(&osp(*n)?, label)?;
            Ok(Output::new(json!({ "dim": d }), format!("dim {label} = {d}\n")))
        }
        Command::Stalk { n, lambda, mu } => {
            let data = osp(*n)?;
            let stalk = with_engine(cache, &data, |e| Ok(stalk_poincare_with(e, &data, lambda, mu)?))?;
            let mut text = format!("stalk of IC({lambda}) at {mu}\n degree  dim\n");
            for s in &stalk {
                let _ = writeln!(text, "{:>7}  {}", s.degree, s.dim);
            }
            Ok(Output::new(json!({ "stalk": stalk }), text))
        }
        Command::Poset { n, bound, dot } => {
            let data = osp(*n)?;
            let h = closure_hasse(&data, labels_in_box(&data, *bound))?;
            let nodes: Vec<Value> =
                h.nodes.iter().zip(&h.dims).map(|(o, d)| json!({ "label": o.to_string(), "dim": d })).collect();
            let text = if *dot {
                h.to_dot()
            } else {
                let mut t = String::new();
                for (a, b) in &h.edges {
                    let _ = writeln!(t, "{} < {}", h.nodes[*a], h.nodes[*b]);
                }
                t
            };
            let mut out = Output::new(json!({ "nodes": nodes, "edges": h.edges }), text);
            out.raw = *dot;
            Ok(out)
        }
        Command::OrbitRep { n, label } => {
            let data = osp(*n)?;
            let (mu, nu) = embed_signatures(&data, label)?;
            let theta = theta_signature(&data, &mu, &nu)?;
            let lattice = lattice_representative(&mu, &nu)?;
            let mut text = format!("mu    {:?}{}\n", mu.entries, inv(mu.inverted));
            let _ = writeln!(text, "nu    {:?}{}", nu.entries, inv(nu.inverted));
            let _ = writeln!(text, "theta {:?}", theta.entries);
            for row in &lattice.rows {
                let _ = writeln!(text, "  {}", row.description);
            }
            Ok(Output::new(json!({ "mu": mu, "nu": nu, "theta": theta, "lattice": lattice }), text))
        }
        Command::Stabilizer { n, label } => {
            let s = stabilizer(&osp(*n)?, label)?;
            let text = format!("alpha {:?}\nbeta  {:?}\nreductive part {}\n", s.alpha, s.beta, s.reductive);
            Ok(Output::new(serde_json::to_value(&s)?, text))
        }
        Command::Char { ty, rank, lambda } => {
            let family = match ty {
                TypeArg::C => Family::C,
                TypeArg::D => Family::D,
            };
            let gt = GroupType::new(family, *rank)?;
            let lambda = parse_int_list(lambda).map_err(anyhow::Error::msg)?;
            if lambda.len() != *rank {
                bail!("expected {rank} entries, found {}", lambda.len());
            }
            if !is_dominant(gt, &lambda) {
                bail!("{gt} weight {lambda:?} is not dominant");
            }
            let ch = irreducible_character(&ProductType::single(gt), &lambda)?;
            let rows = ch.rows();
            let mut text = format!("{gt} {lambda:?}: dimension {}\n", ch.dim());
            for WeightMult { weight, mult } in &rows {
                let _ = writeln!(text, "  {weight:?}  {mult}");
            }
            Ok(Output::new(
                json!({ "type": gt.to_string(), "lambda": lambda, "dim": ch.dim(), "character": rows }),
                text,
            ))
        }
        Command::VerifyBryl { n, mu, qmax } => {
            let data = osp(*n)?;
            let report = with_engine(cache, &data, |e| Ok(verify_bryl_with(e, &data, mu, *qmax)?))?;
            let mut text = String::new();
            for d in &report.degrees {
                let status = if d.diff.is_empty() { "ok" } else { "MISMATCH" };
                let _ = writeln!(text, "degree {}: {status}", d.degree);
            }
            let _ = writeln!(text, "{}", if report.ok { "identity holds" } else { "identity FAILS" });
            let mut out = Output::new(serde_json::to_value(&report)?, text);
            out.ok = report.ok;
            Ok(out)
        }
        Command::VerifyPositivity { n, bound } => {
            let data = osp(*n)?;
            let report = with_engine(cache, &data, |e| Ok(scan_box(e, &data, *bound)?))?;
            let ok = report.ok();
            let mut json = serde_json::to_value(&report)?;
            json["ok"] = Value::Bool(ok);
            let mut text = format!("{} pairs, {} in the cone\n", report.pairs, report.cone_pairs);
            for (name, list) in [
                ("negative coefficients", &report.negative_coefficients),
                ("vanishing on the cone", &report.vanishing_on_cone),
                ("nonzero off the cone", &report.nonzero_off_cone),
                ("nonzero constant term", &report.nonzero_constant_term),
                ("diagonal not 1", &report.diagonal_not_one),
            ] {
                let _ = writeln!(text, "{name}: {}", list.len());
                for r in list {
                    let _ = writeln!(text, "  {} {}: {}", r.lambda, r.mu, r.poly);
                }
            }
            let mut out = Output::new(json, text);
            out.ok = ok;
            Ok(out)
        }
        Command::MomentCheck { n, trials, seed } => {
            let report = run_trials(&osp(*n)?, *trials, *seed)?;
            let opt = |x: Option<usize>| x.map_or("n/a".to_string(), |v| v.to_string());
            let text = format!(
                "N={} trials={} seed={}\nmembership {}\ncharacteristic identity {}\npfaffian {}\nfft generators {}\nequivariance {}\n{}\n",
                report.big_n,
                report.trials,
                report.seed,
                report.membership_failures,
                report.char_identity_failures,
                opt(report.pfaffian_failures),
                opt(report.fft_failures),
                report.equivariance_failures,
                if report.ok { "all identities hold" } else { "FAILURES" }
            );
            let mut out = Output::new(serde_json::to_value(&report)?, text);
            out.ok = report.ok;
            Ok(out)
        }
    }
}

fn inv(inverted: bool) -> &'static str {
    if inverted {
        " (inverted)"
    } else {
        ""
    }
}

fn roots(data: &OspRootData, odd: bool) -> Result<Output> {
    let (e, d) = (data.eps_type(), data.delta_type());
    let mut json = json!({
        "big_n": data.big_n(),
        "eps_type": e.to_string(),
        "delta_type": d.to_string(),
        "rho": data.rho(),
    });
    let mut text = format!("N={}: {e} x {d}, rho = {}\n", data.big_n(), data.rho());
    if odd {
        let all = data.odd_positive_roots();
        let simple = data.simple_odd_roots();
        let _ = writeln!(text, "odd positive roots ({}):", all.len());
        for r in &all {
            let _ = writeln!(text, "  {r}");
        }
        let _ = writeln!(text, "simple odd roots:");
        for r in &simple {
            let _ = writeln!(text, "  {r}");
        }
        json["odd"] = serde_json::to_value(&all)?;
        json["simple"] = serde_json::to_value(&simple)?;
    } else {
        let pe = positive_roots(e);
        let pd = positive_roots(d);
        let _ = writeln!(text, "{e} positive roots: {pe:?}");
        let _ = writeln!(text, "{d} positive roots: {pd:?}");
        json["eps_roots"] = serde_json::to_value(&pe)?;
        json["delta_roots"] = serde_json::to_value(&pd)?;
    }
    Ok(Output::new(json, text))
}

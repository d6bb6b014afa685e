use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use jmodular::dessin::{parse_dessin, reduce_graph, Dessin, GenGraph};
use jmodular::enumerate::{classify_surfaces, enumerate_classes, Filter, SurfaceTarget};
use jmodular::fibers::{enumerate_configs, minimal_config, minimal_lift_exists, config_valid, FiberAssignment};
use jmodular::pullback::{check_profile, induced_config, is_induced, pullback_group, RamificationProfile};
use jmodular::subgroup::{boundary_words, generators, signature, PointedDessin, DEFAULT_CAP};
use jmodular::weierstrass::{matches_dessin, model_report, RationalPoly, WeierstrassModel};
use jmodular::{Error, Result};

/// Monodromy groups of elliptic fibrations: dessins, subgroups of the
/// modular group, Kodaira fiber configurations and Weierstrass models.
///
/// Inputs are read from a file, or from standard input when the path is
/// `-` or omitted. Output is JSON lines on standard output.
#[derive(Parser)]
#[command(name = "jmodular", version)]
struct Cli {
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceClassArg {
    Rational,
    K3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Census, invariants, generators and boundary loops of a dessin.
    Analyze { dessin: Option<PathBuf> },
    /// Conjugacy classes of subgroups of a given index.
    Enumerate {
        #[arg(long)]
        index: usize,
        /// Emit every index up to `--index`.
        #[arg(long)]
        up_to: bool,
        #[arg(long)]
        genus0: bool,
        #[arg(long, conflicts_with = "genus0")]
        genus: Option<usize>,
        #[arg(long)]
        torsion_free: bool,
        /// Upper bound on ET.
        #[arg(long)]
        et: Option<usize>,
        #[arg(long)]
        cusps: Option<usize>,
        #[arg(long)]
        saturated: bool,
    },
    /// Monodromy groups of rational or K3 surfaces, with witnesses.
    Classify {
        #[arg(long = "class", value_enum)]
        class: SurfaceClassArg,
    },
    /// Valid fiber assignments on a genus-0 dessin.
    Lift {
        dessin: Option<PathBuf>,
        /// Extra twisted smooth fibers.
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long)]
        r_max: Option<u32>,
    },
    /// Fibers and monodromy of a base change along a branched cover.
    Pullback {
        dessin: PathBuf,
        profile: PathBuf,
        /// Preimage labels to twist, e.g. `cusp:0/1`.
        #[arg(long, value_delimiter = ',')]
        twists: Vec<String>,
        /// Upstream assignment; the minimal one when omitted.
        #[arg(long)]
        upstream: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Singular fibers of a Weierstrass model, or of random models.
    Weierstrass {
        model: Option<PathBuf>,
        /// Also test whether the fibers fit a dessin.
        #[arg(long = "match")]
        match_dessin: Option<PathBuf>,
        /// Report this many random models instead of reading one.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 0x5eed_2024)]
        seed: u64,
        /// Coefficients of random models lie in `[-bound, bound]`.
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// The AB-graph of a dessin.
    ExportDot {
        dessin: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
    },
    /// Reduction of the AB-graph to chains, with ET bookkeeping.
    Reduce { dessin: Option<PathBuf> },
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Error::Malformed(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Malformed(format!("standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn read_dessin(path: Option<&PathBuf>) -> Result<Dessin> {
    parse_dessin(&read_input(path)?)
}

struct Out {
    lock: io::StdoutLock<'static>,
}

impl Out {
    fn emit(&mut self, v: &Value) {
        // A closed pipe is not an error worth reporting.
        let _ = writeln!(self.lock, "{v}");
    }
}

fn analyze(d: &Dessin, out: &mut Out) -> Result<()> {
    let c = d.census();
    let pd = PointedDessin::new(d.clone(), 0)?;
    let gens = generators(&pd);
    let mut v = json!({
        "dessin": d.to_json(),
        "census": c,
        "et": c.et(),
        "cdf": c.cdf(),
        "genus": c.genus,
        "automorphisms": d.automorphism_count(),
        "signature": signature(&gens),
        "generators": gens,
    });
    if c.genus == 0 {
        v["boundary_words"] = serde_json::to_value(boundary_words(&pd)?).expect("plain data");
        v["minimal_lift"] = json!(minimal_lift_exists(d)?);
    }
    out.emit(&v);
    Ok(())
}

fn random_model(rng: &mut ChaCha8Rng, r: u32, bound: i64) -> Result<WeierstrassModel> {
    let mut coeffs = |deg: u32| {
        let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        RationalPoly::from_ints(&c)
    };
    let p = coeffs(4 * r);
    let q = coeffs(6 * r);
    WeierstrassModel::new(r, p, q)
}

fn run(cli: Cli, out: &mut Out) -> Result<()> {
    match cli.command {
        Command::Analyze { dessin } => analyze(&read_dessin(dessin.as_ref())?, out),
        Command::Enumerate {
            index,
            up_to,
            genus0,
            genus,
            torsion_free,
            et,
            cusps,
            saturated,
        } => {
            let start = Instant::now();
            let filter = Filter {
                genus: if genus0 { Some(0) } else { genus },
                torsion_free,
                et_max: et,
                cusps,
                saturated,
                up_to_index: up_to,
            };
            let classes = enumerate_classes(index, &filter);
            for c in &classes {
                out.emit(&json!({"dessin": c.dessin.to_json(), "automorphisms": c.automorphisms}));
            }
            out.emit(&json!({
                "summary": {
                    "count": classes.len(),
                    "filter": filter,
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                }
            }));
            Ok(())
        }
        Command::Classify { class } => {
            let target = match class {
                SurfaceClassArg::Rational => SurfaceTarget::Rational,
                SurfaceClassArg::K3 => SurfaceTarget::K3,
            };
            let list = classify_surfaces(target)?;
            for (c, w) in &list {
                out.emit(&json!({
                    "dessin": c.dessin.to_json(),
                    "census": c.dessin.census(),
                    "witness": w.assignment,
                    "report": w.report,
                }));
            }
            out.emit(&json!({"summary": {"class": target, "count": list.len()}}));
            Ok(())
        }
        Command::Lift { dessin, extra, r_max } => {
            let d = read_dessin(dessin.as_ref())?;
            let configs = enumerate_configs(&d, extra, r_max)?;
            for (c, report) in &configs {
                out.emit(&json!({"assignment": c, "report": report}));
            }
            out.emit(&json!({
                "summary": {"count": configs.len(), "minimal_lift": minimal_lift_exists(&d)?}
            }));
            Ok(())
        }
        Command::Pullback {
            dessin,
            profile,
            twists,
            upstream,
            cap,
        } => {
            let d = read_dessin(Some(&dessin))?;
            let p = RamificationProfile::from_json(&read_input(Some(&profile))?)?;
            let genus = check_profile(&p, &d)?;
            let induced = induced_config(&d, &p, &twists)?;
            let mut v = json!({"genus": genus, "induced": induced});
            let up = match upstream {
                Some(path) => Some(FiberAssignment::from_json(&read_input(Some(&path))?, &d)?),
                None => {
                    let m = minimal_config(&d)?;
                    config_valid(&m)?.then_some(m)
                }
            };
            if let Some(up) = up {
                v["upstream"] = up.to_json();
                v["check"] = serde_json::to_value(is_induced(&induced, &d, &p, &up)?).expect("plain data");
                if genus == 0 && config_valid(&up)? {
                    v["group"] = serde_json::to_value(pullback_group(&d, &up, &p, cap)?).expect("plain data");
                }
            }
            out.emit(&v);
            Ok(())
        }
        Command::Weierstrass {
            model,
            match_dessin,
            random,
            r,
            seed,
            bound,
        } => {
            let target = match match_dessin {
                Some(path) => Some(read_dessin(Some(&path))?),
                None => None,
            };
            let models = match random {
                Some(k) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..k).map(|_| random_model(&mut rng, r, bound)).collect::<Result<Vec<_>>>()?
                }
                None => vec![WeierstrassModel::from_json(&read_input(model.as_ref())?)?],
            };
            let single = random.is_none();
            let rows: Vec<Result<Value>> = models
                .par_iter()
                .map(|m| {
                    let report = match model_report(m) {
                        Ok(rep) => rep,
                        Err(e @ (Error::SingularModel | Error::IsotrivialModel)) if !single => {
                            return Ok(json!({"model": m, "skipped": e.to_string()}));
                        }
                        Err(e) => return Err(e),
                    };
                    let mut v = json!({"model": m, "report": report});
                    if let Some(d) = &target {
                        v["match"] = json!(matches_dessin(&report, d)?);
                    }
                    Ok(v)
                })
                .collect();
            for row in rows {
                out.emit(&row?);
            }
            Ok(())
        }
        Command::ExportDot { dessin, format } => {
            let d = read_dessin(dessin.as_ref())?;
            match format {
                ExportFormat::Dot => {
                    let _ = write!(out.lock, "{}", d.ab_graph().to_dot());
                }
                ExportFormat::Json => out.emit(&serde_json::to_value(d.ab_graph()).expect("plain data")),
            }
            Ok(())
        }
        Command::Reduce { dessin } => {
            let d = read_dessin(dessin.as_ref())?;
            let trace = reduce_graph(&GenGraph::from_dessin(&d))?;
            out.emit(&serde_json::to_value(trace).expect("plain data"));
            Ok(())
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Malformed(_) => "malformed",
        Error::Parse(_) => "parse",
        Error::Unsupported(_) => "unsupported",
        Error::Constraint(_) => "constraint",
        Error::Overflow { .. } => "overflow",
        Error::SingularModel => "singular-model",
        Error::IsotrivialModel => "isotrivial-model",
        Error::Invariant(_) => "invariant",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("cannot start {k} workers: {e}");
            return ExitCode::from(1);
        }
    }
    let mut out = Out { lock: io::stdout().lock() };
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jmodular: {e}");
            out.emit(&json!({"error": error_kind(&e), "message": e.to_string()}));
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}

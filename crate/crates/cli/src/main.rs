use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use segalkit::acceptance;
use segalkit::bridge::{j_core, nerve_tau1_roundtrip, tau1_value};
use segalkit::category::{nerve, FiniteCategory};
use segalkit::corpus::{self, Kind};
use segalkit::json::{bisset_from_value, bisset_to_value, map_from_value, sset_from_value, sset_to_value, validate};
use segalkit::lifting::{
    cert_replay, cert_search, classify_map, default_max_dim, is_kan_complex, is_quasi_category, is_quasi_category_unique,
    CertOutcome, Certificate, FibrationKind, HornFamily,
};
use segalkit::precat::{d_lower_star_consistency, fibers, is_precategory, pi_star, segal_category_check};
use segalkit::segal::{complete_check, is_segal_space, segal_condition, SegalMode};
use segalkit::transfer::{gamma, k_bang, kandpi_check, DEFAULT_CAP};
use segalkit::verdict::{Status, Verdict};
use segalkit::{BisimplicialSet, SimplicialMap, SimplicialSet};

/// Checks and constructions on finite simplicial and bisimplicial sets.
///
/// Reports are JSON on stdout. Exit status: 0 when every check is Yes, 1 when
/// some check is No, 2 when some check is Unknown and none is No, 3 on usage
/// or input errors.
#[derive(Parser)]
#[command(name = "segalkit", version)]
struct Cli {
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplicial sets and maps.
    #[command(subcommand)]
    Sset(SsetCmd),
    /// Bisimplicial sets.
    #[command(subcommand)]
    Bisset(BissetCmd),
    /// Finite categories.
    #[command(subcommand)]
    Cat(CatCmd),
    /// Functors between simplicial and bisimplicial sets.
    #[command(subcommand)]
    Functor(FunctorCmd),
    /// The bundled corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Args)]
struct Bounds {
    /// Highest dimension examined by lifting checks.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Highest level for Segal conditions and constructions.
    #[arg(long, default_value_t = 3)]
    n_max: usize,
}

#[derive(Subcommand)]
enum SsetCmd {
    /// Decide a property of a simplicial set.
    Check {
        property: SsetProperty,
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Classify a simplicial map against a generating family.
    Classify {
        kind: MapKind,
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Search for a horn-attachment certificate for a monomorphism.
    Cert {
        family: CertFamily,
        file: PathBuf,
        #[arg(long, default_value_t = 500)]
        budget: u64,
        /// Where to write the certificate; defaults to `<stem>.cert.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate by literal pushouts.
    Replay { file: PathBuf },
    /// Presentation of the fundamental category.
    Tau1 { file: PathBuf },
    /// The subcomplex of simplices with invertible edges.
    Jcore {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SsetProperty {
    Valid,
    Qcat,
    QcatUnique,
    Kan,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Trivfib,
    Kan,
    Mid,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertFamily {
    MidAnodyne,
    Anodyne,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Iso,
    Trivfib,
}

impl From<Mode> for SegalMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Iso => SegalMode::Iso,
            Mode::Trivfib => SegalMode::TrivFib,
        }
    }
}

#[derive(Subcommand)]
enum BissetCmd {
    /// Decide a property of a bisimplicial set.
    Check {
        property: BissetProperty,
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = Mode::Iso)]
        mode: Mode,
        /// Truncation level of the walking isomorphism for completeness.
        #[arg(long, default_value_t = 2)]
        j_level: usize,
    },
    /// Fibers of the vertex map of a precategory at level `n`.
    Fibers {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// The coreflection into precategories.
    PiStar {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BissetProperty {
    Valid,
    Segal,
    Precat,
    SegalCategory,
    Complete,
    SegalSpace,
}

#[derive(Subcommand)]
enum CatCmd {
    /// Check that the fundamental category of the nerve recovers the category.
    Roundtrip { file: PathBuf },
    /// The nerve, through a dimension.
    Nerve {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FunctorCmd {
    /// The bisimplicial set Γ(X) through a column level.
    Gamma {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The left Kan extension along the groupoid-simplex functor.
    KBang {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the fundamental category of k_!X with the fundamental groupoid of X.
    Kandpi { file: PathBuf },
    /// Compare both constructions of d_*X column by column.
    DLowerStar {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Check corpus files against the built-in entries, then run the acceptance suite.
    Run {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        /// Run only the integrity checks.
        #[arg(long)]
        skip_acceptance: bool,
    },
    /// Write every built-in entry as a JSON file.
    Export {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

/// One named check in a report; the bound records the parameters it ran under.
struct Check {
    name: String,
    verdict: Verdict,
    bound: Value,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
    result: Option<Value>,
}

impl Report {
    fn check(mut self, name: impl Into<String>, verdict: Verdict, bound: Value) -> Self {
        self.checks.push(Check { name: name.into(), verdict, bound });
        self
    }

    fn result(mut self, v: Value) -> Self {
        self.result = Some(v);
        self
    }

    fn status(&self) -> Status {
        let s = self.checks.iter().map(|c| c.verdict.status);
        s.max_by_key(|s| match s {
            Status::No => 2,
            Status::Unknown => 1,
            Status::Yes => 0,
        })
        .unwrap_or(Status::Yes)
    }

    fn to_value(&self, argv: &[String]) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.verdict.status, "bound": c.verdict.bound.clone().unwrap_or_else(|| c.bound.clone()), "verdict": c.verdict }))
            .collect();
        let mut v = json!({ "command": argv, "status": self.status(), "checks": checks });
        if let Some(r) = &self.result {
            v["result"] = r.clone();
        }
        v
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json(path: &Path, v: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_sset(path: &Path) -> anyhow::Result<Arc<SimplicialSet>> {
    Ok(Arc::new(sset_from_value(&read_json(path)?).with_context(|| format!("loading {}", path.display()))?))
}

fn load_bisset(path: &Path) -> anyhow::Result<Arc<BisimplicialSet>> {
    Ok(Arc::new(bisset_from_value(&read_json(path)?).with_context(|| format!("loading {}", path.display()))?))
}

fn load_map(path: &Path) -> anyhow::Result<SimplicialMap> {
    let named = HashMap::new();
    map_from_value::<1>(&read_json(path)?, &named).with_context(|| format!("loading {}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into())
}

fn run_sset(cmd: SsetCmd) -> anyhow::Result<Report> {
    Ok(match cmd {
        SsetCmd::Check { property, file, bounds } => {
            let x = load_sset(&file)?;
            let d = bounds.max_dim.unwrap_or_else(|| x.max_dims()[0].max(2) + 1);
            let (name, v) = match property {
                SsetProperty::Valid => ("valid", validate(&x)),
                SsetProperty::Qcat => ("quasi-category", is_quasi_category(&x, d)),
                SsetProperty::QcatUnique => ("quasi-category with unique fillers", is_quasi_category_unique(&x, d)),
                SsetProperty::Kan => ("Kan complex", is_kan_complex(&x, d)),
            };
            Report::default().check(name, v, json!({ "max_dim": d }))
        }
        SsetCmd::Classify { kind, file, bounds } => {
            let f = load_map(&file)?;
            let d = bounds.max_dim.unwrap_or_else(|| default_max_dim(&f));
            let kind = match kind {
                MapKind::Trivfib => FibrationKind::TrivialFibration,
                MapKind::Kan => FibrationKind::KanFibration,
                MapKind::Mid => FibrationKind::MidFibration,
            };
            Report::default().check(format!("{kind:?}"), classify_map(&f, kind, d), json!({ "max_dim": d }))
        }
        SsetCmd::Cert { family, file, budget, out } => {
            let u = load_map(&file)?;
            let family = match family {
                CertFamily::MidAnodyne => HornFamily::Inner,
                CertFamily::Anodyne => HornFamily::All,
            };
            let bound = json!({ "budget": budget });
            match cert_search(&u, family, budget)? {
                CertOutcome::Found(c) => {
                    let out = out.unwrap_or_else(|| PathBuf::from(format!("{}.cert.json", stem(&file))));
                    write_json(&out, &c.to_value())?;
                    let replay = cert_replay(&c);
                    Report::default()
                        .check("certificate found", Verdict::yes(json!({ "steps": c.steps.len() })), bound.clone())
                        .check("replay", replay, bound)
                        .result(json!({ "certificate": out.display().to_string() }))
                }
                CertOutcome::Refuted(v) | CertOutcome::Exhausted(v) => Report::default().check("certificate found", v, bound),
            }
        }
        SsetCmd::Replay { file } => {
            let c = Certificate::from_value(&read_json(&file)?)?;
            Report::default().check("replay", cert_replay(&c), json!({ "steps": c.steps.len() }))
        }
        SsetCmd::Tau1 { file } => {
            let x = load_sset(&file)?;
            Report::default().check("valid", validate(&x), Value::Null).result(tau1_value(&x))
        }
        SsetCmd::Jcore { file, out } => {
            let x = load_sset(&file)?;
            let j = j_core(&x);
            let v = if j.undecided.is_empty() {
                Verdict::yes(json!({ "cells": j.set.len() }))
            } else {
                Verdict::unknown(json!({ "undecided_edges": j.undecided }), "invertibility undecided within the word bound")
            };
            emit(Report::default().check("J-core", v, Value::Null), sset_to_value(&j.set), out)?
        }
    })
}

/// Attaches a constructed object, or writes it to `out` and records the path.
fn emit(report: Report, payload: Value, out: Option<PathBuf>) -> anyhow::Result<Report> {
    Ok(match out {
        Some(p) => {
            write_json(&p, &payload)?;
            report.result(json!({ "written": p.display().to_string() }))
        }
        None => report.result(payload),
    })
}

fn run_bisset(cmd: BissetCmd) -> anyhow::Result<Report> {
    Ok(match cmd {
        BissetCmd::Check { property, file, bounds, mode, j_level } => {
            let x = load_bisset(&file)?;
            let n = bounds.n_max;
            let d = bounds.max_dim.unwrap_or(n);
            match property {
                BissetProperty::Valid => Report::default().check("valid", validate(&x), Value::Null),
                BissetProperty::Precat => Report::default().check("precategory", is_precategory(&x), Value::Null),
                BissetProperty::Segal => {
                    let r = segal_condition(&x, n, mode.into());
                    Report::default().check("Segal condition", r.overall.clone(), json!({ "n_max": n })).result(r.to_value())
                }
                BissetProperty::SegalCategory => {
                    let r = segal_category_check(&x, n, mode.into())?;
                    Report::default().check("Segal category", r.overall.clone(), json!({ "n_max": n })).result(r.to_value())
                }
                BissetProperty::Complete => Report::default().check(
                    "complete",
                    complete_check(&x, j_level, d),
                    json!({ "j_level": j_level, "max_dim": d }),
                ),
                BissetProperty::SegalSpace => {
                    Report::default().check("Segal space", is_segal_space(&x, d), json!({ "max_dim": d }))
                }
            }
        }
        BissetCmd::Fibers { file, n } => {
            let x = load_bisset(&file)?;
            let t = fibers(&x, n)?;
            Report::default().check("precategory", is_precategory(&x), Value::Null).result(t.to_value())
        }
        BissetCmd::PiStar { file, out } => {
            let x = load_bisset(&file)?;
            let p = pi_star(&x);
            let v = Verdict::yes(json!({ "cells": p.set.len(), "fixed": p.inclusion.is_iso() }));
            emit(Report::default().check("π★", v, Value::Null), bisset_to_value(&p.set), out)?
        }
    })
}

fn run_cat(cmd: CatCmd) -> anyhow::Result<Report> {
    Ok(match cmd {
        CatCmd::Roundtrip { file } => {
            let c = FiniteCategory::from_value(&read_json(&file)?)?;
            Report::default().check("nerve round trip", nerve_tau1_roundtrip(&c), Value::Null)
        }
        CatCmd::Nerve { file, max_dim, out } => {
            let c = FiniteCategory::from_value(&read_json(&file)?)?;
            let x = nerve(&c, max_dim);
            let v = Verdict::yes(json!({ "cells": x.len() }));
            emit(Report::default().check("nerve", v, json!({ "max_dim": max_dim })), sset_to_value(&x), out)?
        }
    })
}

fn run_functor(cmd: FunctorCmd) -> anyhow::Result<Report> {
    Ok(match cmd {
        FunctorCmd::Gamma { file, n_max, out } => {
            let x = load_sset(&file)?;
            let g = gamma(&x, n_max)?;
            let v = if g.is_exact() {
                Verdict::yes(json!({ "cells": g.set().len() }))
            } else {
                Verdict::unknown(json!({ "m_max": n_max }), "some columns were undecided")
            };
            emit(Report::default().check("Γ", v, json!({ "m_max": n_max })), bisset_to_value(g.set()), out)?
        }
        FunctorCmd::KBang { file, cap, out } => {
            let x = load_sset(&file)?;
            let k = k_bang(&x, cap);
            let v = Verdict::yes_upto(json!({ "cells": k.set.len() }), json!({ "cap": cap }));
            emit(Report::default().check("k_!", v, json!({ "cap": cap })), k.to_value(), out)?
        }
        FunctorCmd::Kandpi { file } => {
            let x = load_sset(&file)?;
            Report::default().check("τ₁k_!X = π₁X", kandpi_check(&x), Value::Null)
        }
        FunctorCmd::DLowerStar { file, n_max } => {
            let x = load_sset(&file)?;
            let v = d_lower_star_consistency(&x, n_max)?;
            Report::default().check("d_* pipelines agree", v, json!({ "m_max": n_max }))
        }
    })
}

fn run_corpus(cmd: CorpusCmd, quiet: bool) -> anyhow::Result<Report> {
    match cmd {
        CorpusCmd::Export { out } => {
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let docs = corpus::documents()?;
            for (stem, _, v) in &docs {
                write_json(&out.join(format!("{stem}.json")), v)?;
            }
            Ok(Report::default()
                .check("export", Verdict::yes(json!({ "files": docs.len() })), Value::Null)
                .result(json!({ "dir": out.display().to_string() })))
        }
        CorpusCmd::Run { dir, skip_acceptance } => {
            let files = corpus_files(&dir)?;
            let docs = corpus::documents()?;
            let mut report = Report::default();
            for (stem, kind, expected) in &docs {
                let v = match files.get(stem) {
                    None => Verdict::no(json!({ "missing": format!("{stem}.json") })),
                    Some(p) => integrity(*kind, expected, p),
                };
                report = report.check(format!("corpus {stem}"), v, Value::Null);
            }
            for stem in files.keys().filter(|s| !docs.iter().any(|(d, _, _)| d == *s)) {
                report = report.check(format!("corpus {stem}"), Verdict::no(json!({ "unknown_entry": stem })), Value::Null);
            }
            if !skip_acceptance {
                for c in acceptance::criteria() {
                    let start = Instant::now();
                    let v = (c.run)();
                    if !quiet {
                        eprintln!("C{} {:?} in {:.2}s", c.id, v.status, start.elapsed().as_secs_f64());
                    }
                    report = report.check(format!("C{} {}", c.id, c.title), v, Value::Null);
                }
            }
            Ok(report)
        }
    }
}

/// `*.json` files of a corpus directory by stem; an absent or empty directory is a usage error.
fn corpus_files(dir: &Path) -> anyhow::Result<BTreeMap<String, PathBuf>> {
    let entries = fs::read_dir(dir).with_context(|| format!("reading corpus directory {}", dir.display()))?;
    let mut files = BTreeMap::new();
    for e in entries {
        let p = e?.path();
        if p.extension().is_some_and(|x| x == "json") && !p.to_string_lossy().ends_with(".cert.json") {
            files.insert(stem(&p), p);
        }
    }
    if files.is_empty() {
        bail!("corpus directory {} has no JSON files", dir.display());
    }
    Ok(files)
}

fn integrity(kind: Kind, expected: &Value, path: &Path) -> Verdict {
    let found = match read_json(path) {
        Ok(v) => v,
        Err(e) => return Verdict::no(json!({ "file": path.display().to_string(), "error": format!("{e:#}") })),
    };
    match corpus::matches(kind, expected, &found) {
        Ok(true) => Verdict::yes(json!({ "file": path.display().to_string() })),
        Ok(false) => Verdict::no(json!({ "file": path.display().to_string(), "mismatch": "differs from the built-in entry" })),
        Err(e) => Verdict::no(json!({ "file": path.display().to_string(), "error": e.to_string() })),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let quiet = cli.quiet;
    let report = match cli.command {
        Command::Sset(c) => run_sset(c),
        Command::Bisset(c) => run_bisset(c),
        Command::Cat(c) => run_cat(c),
        Command::Functor(c) => run_functor(c),
        Command::Corpus(c) => run_corpus(c, quiet),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            println!("{}", json!({ "command": argv, "error": format!("{e:#}") }));
            return ExitCode::from(3);
        }
    };
    println!("{}", serde_json::to_string_pretty(&report.to_value(&argv)).expect("reports serialize"));
    if !quiet {
        for c in &report.checks {
            eprintln!("{:<8} {}", format!("{:?}", c.verdict.status), c.name);
        }
    }
    ExitCode::from(match report.status() {
        Status::Yes => 0,
        Status::No => 1,
        Status::Unknown => 2,
    })
}

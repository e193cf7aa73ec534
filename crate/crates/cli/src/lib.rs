//! The `cubex` command surface. [`run`] parses arguments, dispatches and
//! returns the exit code: 0 when every verdict holds (or nothing was
//! found), 1 when some verdict is a violation or a witness, 2 on input,
//! resource or usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cubex::audit::{audit_axioms, Axiom, AxiomStatus};
use cubex::cube::{is_extension_inductive, is_extension_limitwise, limitwise_report, subset_name, sublimit_comparison};
use cubex::extension::{lift_class, Base, ExtensionClass};
use cubex::format::{parse, Document};
use cubex::simplicial::{kan_report, resolution_report, tv_resolution, DoublingCover, TruncatedSimplicial};
use cubex::theorems::{all_morphisms, lifted_universe, search_maltsev_counterexample, SearchDomain};
use cubex::{catalog, Caps, Error, Obj, TheoremReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "cubex", version, about = "Check higher extensions, cubes and simplicial resolutions")]
pub struct Cli {
    /// Output style: readable text or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub report: ReportFormat,
    /// Include wall time in reports.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Resource caps, e.g. `apex=100000,dim=5,contraction=1000,table=1048576`.
    #[arg(long, global = true)]
    pub caps: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

fn class_arg(s: &str) -> Result<ExtensionClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every cube of a file (or the named one) with both checkers.
    CheckCube {
        #[arg(long, default_value = "surjections", value_parser = class_arg)]
        class: ExtensionClass,
        #[arg(long)]
        name: Option<String>,
        file: PathBuf,
    },
    /// Check that simplicial objects of a file are resolutions.
    CheckResolution {
        #[arg(long, default_value = "surjections", value_parser = class_arg)]
        class: ExtensionClass,
        /// Truncate at this level first.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        name: Option<String>,
        file: PathBuf,
    },
    /// Check the Kan property of simplicial objects of a file.
    CheckKan {
        #[arg(long, default_value = "surjections", value_parser = class_arg)]
        class: ExtensionClass,
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        name: Option<String>,
        file: PathBuf,
    },
    /// Audit (E1)-(E5) on all maps between the objects of a universe.
    AuditClass {
        #[arg(long, default_value = "surjections", value_parser = class_arg)]
        class: ExtensionClass,
        /// `sets:N`, `groups:N`, or a `.cx` file whose objects are used.
        #[arg(long)]
        universe: String,
        /// Comma-separated subset of E1,E2,E3,E4,E5.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        /// Audit the double extensions among squares instead.
        #[arg(long)]
        lifted: bool,
    },
    /// Build a covering resolution of an object of a file.
    TvGenerate {
        #[arg(long, default_value = "surjections", value_parser = class_arg)]
        class: ExtensionClass,
        #[arg(long)]
        level: usize,
        /// The object to resolve; defaults to the first one.
        #[arg(long)]
        object: Option<String>,
        /// Levels whose cover is doubled instead of the identity.
        #[arg(long, value_delimiter = ',')]
        double: Vec<usize>,
        /// Write the document here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        file: PathBuf,
    },
    /// Run the seeded instance set of a theorem (or `all`).
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = cubex::generate::DEFAULT_SEED)]
        seed: u64,
    },
    /// Search for a split epimorphism of split epimorphisms that is not a
    /// double extension.
    SearchCounterexample {
        #[arg(long, default_value = "sets")]
        domain: String,
        #[arg(long, default_value_t = 3)]
        max: usize,
    },
    /// Print the canonical form of a file.
    Fmt { file: PathBuf },
}

/// A command failure that maps to exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<Vec<TheoremReport>, Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure(format!("{}:{e}", path.display())),
        other => Failure(format!("{}: {other}", path.display())),
    })
}

fn parse_caps(spec: &str) -> Result<Caps, Failure> {
    let mut caps = Caps::default();
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Failure(format!("bad cap {part:?}, expected key=value")))?;
        let v: usize = v.parse().map_err(|_| Failure(format!("bad cap value {v:?}")))?;
        match k {
            "apex" => caps.apex = v,
            "dim" => caps.dim = v,
            "contraction" => caps.contraction_candidates = v,
            "table" => caps.table_entries = v,
            _ => return Err(Failure(format!("unknown cap {k:?} (apex, dim, contraction, table)"))),
        }
    }
    Ok(caps)
}

fn select<'a, T>(items: &'a std::collections::BTreeMap<String, T>, name: &Option<String>, what: &str) -> Result<Vec<(&'a String, &'a T)>, Failure> {
    let out: Vec<_> = match name {
        Some(n) => items.iter().filter(|(k, _)| *k == n).collect(),
        None => items.iter().filter(|(k, _)| !k.contains('.')).collect(),
    };
    if out.is_empty() {
        return Err(Failure(match name {
            Some(n) => format!("no {what} named {n}"),
            None => format!("the file declares no {what}"),
        }));
    }
    Ok(out)
}

fn holds_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

fn check_cube(class: ExtensionClass, name: &Option<String>, file: &Path) -> Outcome {
    let doc = load(file)?;
    let mut out = Vec::new();
    for (n, c) in select(doc.cubes(), name, "cube")? {
        let lw = is_extension_limitwise(c, class)?;
        let ind = is_extension_inductive(c, class)?;
        let mut r = TheoremReport::new("check-cube", format!("{n} ({}-cube, {class})", c.dim()), holds_if(lw && ind))
            .with_detail(format!("limitwise: {lw}"))
            .with_detail(format!("inductive: {ind}"));
        for (mask, ok) in limitwise_report(c, class)? {
            if !ok {
                let (cone, cmp) = sublimit_comparison(c, mask)?;
                let mut hit = cmp.table().to_vec();
                hit.sort_unstable();
                hit.dedup();
                r = r.with_detail(format!(
                    "comparison at {} not in {class}: image {} of {}",
                    subset_name(mask),
                    hit.len(),
                    cone.apex().size()
                ));
            }
        }
        if r.verdict.is_violation() {
            let mut d = Document::new();
            d.add_cube(n, c.clone())?;
            r = r.with_witness(d.serialize());
        }
        out.push(r);
    }
    Ok(out)
}

fn truncated(ss: &TruncatedSimplicial, level: Option<usize>) -> TruncatedSimplicial {
    match level {
        Some(l) => ss.truncate(l),
        None => ss.clone(),
    }
}

fn check_resolution(class: ExtensionClass, level: Option<usize>, name: &Option<String>, file: &Path) -> Outcome {
    let doc = load(file)?;
    let mut out = Vec::new();
    for (n, ss) in select(doc.simplicials(), name, "simplicial object")? {
        let ss = truncated(ss, level);
        if !ss.is_augmented() {
            out.push(TheoremReport::new(
                "check-resolution",
                n.as_str(),
                Verdict::Skipped("not augmented".into()),
            ));
            continue;
        }
        let rep = resolution_report(&ss, class)?;
        let ok = rep.iter().all(|(_, b)| *b);
        let mut r = TheoremReport::new("check-resolution", format!("{n} (level {}, {class})", ss.top()), holds_if(ok));
        for (m, b) in rep {
            r = r.with_detail(format!("exact at A_{m}: {b}"));
        }
        out.push(r);
    }
    Ok(out)
}

fn check_kan(class: ExtensionClass, level: Option<usize>, name: &Option<String>, file: &Path) -> Outcome {
    let doc = load(file)?;
    let mut out = Vec::new();
    for (n, ss) in select(doc.simplicials(), name, "simplicial object")? {
        let ss = truncated(ss, level);
        let rep = kan_report(&ss, class)?;
        let ok = rep.iter().all(|(_, b)| *b);
        let mut r = TheoremReport::new("check-kan", format!("{n} (level {}, {class})", ss.top()), holds_if(ok));
        for ((m, k), b) in rep {
            r = r.with_detail(format!("({m},{k}): {b}"));
        }
        out.push(r);
    }
    Ok(out)
}

fn universe_objects(spec: &str) -> Result<Vec<Obj>, Failure> {
    if let Some((kind, n)) = spec.split_once(':') {
        if let Ok(n) = n.parse::<usize>() {
            match kind {
                "sets" => return Ok(catalog::sets_up_to(n).into_iter().map(|(_, o)| o).collect()),
                "groups" => return Ok(catalog::groups_up_to(n).into_iter().map(|(_, o)| o).collect()),
                _ => {}
            }
        }
    }
    let doc = load(Path::new(spec))?;
    let objs: Vec<Obj> = doc.objects().values().cloned().collect();
    if objs.is_empty() {
        return Err(Failure(format!("{spec}: no objects declared")));
    }
    Ok(objs)
}

fn parse_axioms(names: &[String]) -> Result<Vec<Axiom>, Failure> {
    if names.is_empty() {
        return Ok(Axiom::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| {
            Axiom::ALL
                .into_iter()
                .find(|a| a.name().eq_ignore_ascii_case(n.trim()))
                .ok_or_else(|| Failure(format!("unknown axiom {n:?}")))
        })
        .collect()
}

fn audit_class(class: ExtensionClass, universe: &str, axioms: &[String], lifted: bool) -> Outcome {
    let objs = universe_objects(universe)?;
    let axioms = parse_axioms(axioms)?;
    let report = if lifted {
        let squares = lifted_universe(&objs, class, false);
        audit_axioms(&lift_class(Base::new(class)), &squares, &axioms)?
    } else {
        audit_axioms(&Base::new(class), &all_morphisms(&objs), &axioms)?
    };
    let scope = if lifted { "double extensions of " } else { "" };
    Ok(report
        .findings
        .iter()
        .map(|f| {
            let instance = format!("{scope}{class} on {universe}: {}", f.axiom);
            let r = match &f.status {
                AxiomStatus::Verified { instances } => TheoremReport::new("audit-class", instance, Verdict::Holds)
                    .with_detail(format!("verified-on-universe ({instances} instances)")),
                AxiomStatus::Violated { witness } => TheoremReport::new("audit-class", instance, Verdict::Violated)
                    .with_detail(format!("witness: {witness}")),
                AxiomStatus::NotApplicable { reason } => {
                    TheoremReport::new("audit-class", instance, Verdict::Skipped(reason.clone()))
                }
            };
            r.with_detail(format!("universe: {}", report.universe))
        })
        .collect())
}

fn tv_generate(
    class: ExtensionClass,
    level: usize,
    object: &Option<String>,
    double: &[usize],
    output: &Option<PathBuf>,
    file: &Path,
    out: &mut dyn Write,
) -> Outcome {
    let doc = load(file)?;
    let (name, x) = select(doc.objects(), object, "object")?[0];
    let ss = tv_resolution(x, class, &DoublingCover::at_levels(double.to_vec()), level)?;
    let sizes: Vec<String> = std::iter::once(x.size())
        .chain(ss.levels().iter().map(|o| o.size()))
        .map(|s| s.to_string())
        .collect();
    let commute = ss.degeneracies_commute();
    let mut result = Document::new();
    result.add_object(name, x.clone())?;
    result.set_meta("generated", format!("covering resolution of {name}, level {level}, {class}"))?;
    result.add_simplicial("tv", ss)?;
    let text = result.serialize();
    match output {
        None => {
            out.write_all(text.as_bytes()).map_err(|e| Failure(e.to_string()))?;
            Ok(Vec::new())
        }
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
            Ok(vec![TheoremReport::new(
                "tv-generate",
                format!("{name} at level {level}, {class}"),
                Verdict::Holds,
            )
            .with_detail(format!("sizes A_-1..A_{level}: {}", sizes.join(" ")))
            .with_detail(format!("degeneracies commute: {commute}"))
            .with_detail(format!("written to {}", p.display()))])
        }
    }
}

fn search(domain: &str, max: usize) -> Outcome {
    let d = match domain {
        "sets" => SearchDomain::Sets(max),
        "groups" => SearchDomain::Groups(max),
        other => return Err(Failure(format!("unknown domain {other:?} (sets or groups)"))),
    };
    Ok(vec![search_maltsev_counterexample(d)?])
}

fn verify(id: &str, seed: u64) -> Outcome {
    if id == "all" {
        let mut out = Vec::new();
        for id in cubex::THEOREM_IDS {
            out.extend(cubex::verify(id, seed)?);
        }
        return Ok(out);
    }
    Ok(cubex::verify(id, seed)?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::CheckCube { class, name, file } => check_cube(*class, name, file),
        Command::CheckResolution { class, level, name, file } => check_resolution(*class, *level, name, file),
        Command::CheckKan { class, level, name, file } => check_kan(*class, *level, name, file),
        Command::AuditClass {
            class,
            universe,
            axioms,
            lifted,
        } => audit_class(*class, universe, axioms, *lifted),
        Command::TvGenerate {
            class,
            level,
            object,
            double,
            output,
            file,
        } => tv_generate(*class, *level, object, double, output, file, out),
        Command::Verify { id, seed } => verify(id, *seed),
        Command::SearchCounterexample { domain, max } => search(domain, *max),
        Command::Fmt { file } => {
            let doc = load(file)?;
            out.write_all(doc.serialize().as_bytes()).map_err(|e| Failure(e.to_string()))?;
            Ok(Vec::new())
        }
    }
}

/// Exit code of a list of verdicts.
pub fn exit_code(reports: &[TheoremReport]) -> i32 {
    if reports.iter().any(|r| r.verdict.is_violation()) {
        1
    } else {
        0
    }
}

/// Runs the command line `args` (including the program name), writing
/// reports to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let caps = match cli.caps.as_deref().map(parse_caps).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(Failure(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 2;
        }
    };
    caps.install();
    match dispatch(&cli, out) {
        Ok(reports) => {
            for r in &reports {
                let _ = match cli.report {
                    ReportFormat::Text => write!(out, "{}", r.render_text(cli.timing)),
                    ReportFormat::Structured => writeln!(out, "{}", r.render_structured(cli.timing)),
                };
            }
            exit_code(&reports)
        }
        Err(Failure(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

//! `transmds`: construct, certify, classify and count distance-2 MDS codes.
//!
//! Exit codes: 0 the verdict holds, 1 it does not, 2 malformed input,
//! 3 a budget was exceeded before an answer was reached.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transmds::code::{is_mds, CodeFile, MdsCode, Provenance};
use transmds::constructions::{replay, CompositionSpec, QuadraticSpec};
use transmds::counting::{lower_bound_report, partition_codes_report, ratio_report};
use transmds::isometry::{
    equivalent_codes, is_topolinear, is_transitive, Budget, CertificateMode, EquivalenceVerdict, TopolinearVerdict,
    TransitivityCertificate, TransitivityVerdict,
};
use transmds::loops::{is_g_loop, BuiltinLoop, GLoopVerdict, LoopFile};
use transmds::q4::{classify, BooleanFunction};

#[derive(Parser)]
#[command(name = "transmds", version, about = "Transitive distance-2 MDS codes")]
struct Cli {
    #[command(flatten)]
    budget: BudgetArgs,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Backtracking nodes per search.
    #[arg(long, global = true, default_value_t = Budget::default().max_nodes)]
    budget_states: u64,
    /// Largest q^n a search takes on.
    #[arg(long, global = true, default_value_t = Budget::default().max_points)]
    budget_points: u64,
    /// Largest group enumerated.
    #[arg(long, global = true, default_value_t = Budget::default().max_group)]
    budget_group: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_points: self.budget_points, max_nodes: self.budget_states, max_group: self.budget_group }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from a JSON spec and write its code file.
    Construct {
        spec: PathBuf,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also search for and write a certificate.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Topolinear)]
        mode: Mode,
    },
    /// Check a code file for a property, by search or by certificate replay.
    Verify {
        code: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Mds)]
        mode: Mode,
        /// Replay this certificate instead of searching.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Classify a code over Q_4 by semilinearity and the degree of r.
    Classify {
        code: PathBuf,
        /// Also run the brute-force transitivity search.
        #[arg(long)]
        cross_check: bool,
    },
    /// Decide whether two codes are equivalent.
    Equivalent { a: PathBuf, b: PathBuf },
    #[command(subcommand)]
    Count(CountCommand),
    /// Decide whether a loop is a G-loop.
    Gloop {
        /// A loop file, or a builtin name such as `cp:3`, `dihedral:5`, `zpz2:3`.
        target: String,
    },
}

#[derive(Subcommand)]
enum CountCommand {
    /// Exact partition numbers against the asymptotic estimate.
    Partitions {
        #[arg(required = true)]
        n: Vec<usize>,
    },
    /// Quadratic-form count for codes in Q_{q^2 s}^n.
    Quadratic {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        n: usize,
    },
    /// Pairwise equivalence of composition codes over all partitions of N.
    PartitionCodes {
        #[arg(long)]
        total: usize,
        #[arg(long, default_value_t = 3)]
        p: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Mds,
    Transitive,
    Full,
    Topolinear,
}

/// What a command established.
struct Outcome {
    holds: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(holds: bool, text: impl Into<String>, json: Value) -> Self {
        Self { holds, text: text.into(), json }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let as_json = cli.json;
    match run(cli) {
        Ok(out) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON value"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.holds { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            log::debug!("{e:?}");
            if as_json {
                println!("{}", json!({ "error": format!("{e:#}"), "exit": code }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<transmds::Error>() {
        Some(err) if err.is_budget() => 3,
        Some(transmds::Error::OrderTooLarge { .. }) => 3,
        _ => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let budget = cli.budget.budget();
    match cli.command {
        Command::Construct { spec, out, certificate, mode } => construct(&spec, out.as_deref(), certificate.as_deref(), mode, &budget),
        Command::Verify { code, mode, certificate } => verify(&code, mode, certificate.as_deref(), &budget),
        Command::Classify { code, cross_check } => {
            let code = read_code(&code)?;
            let v = classify(&code, cross_check, &budget)?;
            if !v.consistent() {
                log::warn!("brute-force transitivity disagrees with the degree criterion");
            }
            let text = format!(
                "semilinear: {}\ndegree: {}\ntransitive: {}{}",
                v.semilinear,
                v.degree.map_or("-".into(), |d| d.to_string()),
                v.transitive,
                v.cross_check.map_or(String::new(), |c| format!("\nbrute force: {c}"))
            );
            Ok(Outcome::new(v.transitive, text, serde_json::to_value(&v)?))
        }
        Command::Equivalent { a, b } => {
            let (a, b) = (read_code(&a)?, read_code(&b)?);
            match equivalent_codes(&a, &b, &budget)? {
                EquivalenceVerdict::Equivalent(g) => Ok(Outcome::new(
                    true,
                    "equivalent",
                    json!({ "equivalent": true, "isometry": g }),
                )),
                EquivalenceVerdict::Inequivalent => {
                    Ok(Outcome::new(false, "inequivalent", json!({ "equivalent": false })))
                }
            }
        }
        Command::Count(c) => count(c, &budget),
        Command::Gloop { target } => gloop(&target),
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_code(path: &Path) -> anyhow::Result<MdsCode> {
    let file: CodeFile = serde_json::from_value(read_json(path)?).with_context(|| format!("code file {}", path.display()))?;
    Ok(file.into_code()?)
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Spec objects, told apart by their keys:
/// `{"p", "outer", "inner"}` composition, `{"p", "k", "n", "r" | "alpha"/"beta"}`
/// quadratic, `{"group", "length"}` iterated group, `{"graph"}` graph of a
/// builtin loop, `{"n", "semilinear"}` standard semilinear code over `Q_4`,
/// `{"code": "H"}`.
fn spec_provenance(v: Value) -> anyhow::Result<Provenance> {
    let obj = v.as_object().ok_or_else(|| anyhow!("spec must be a JSON object"))?;
    let name = |key: &str| -> anyhow::Result<BuiltinLoop> {
        let s = obj.get(key).and_then(Value::as_str).ok_or_else(|| anyhow!("{key} must be a loop name"))?;
        Ok(s.parse()?)
    };
    if obj.contains_key("outer") {
        let spec: CompositionSpec = serde_json::from_value(v).context("composition spec")?;
        Ok(Provenance::Composition { spec })
    } else if obj.contains_key("group") {
        let length = obj.get("length").and_then(Value::as_u64).ok_or_else(|| anyhow!("length must be an integer"))?;
        Ok(Provenance::Iterated { group: name("group")?, length: length as usize })
    } else if obj.contains_key("graph") {
        Ok(Provenance::Graph { quasigroup: name("graph")? })
    } else if obj.contains_key("semilinear") {
        let n = obj.get("n").and_then(Value::as_u64).ok_or_else(|| anyhow!("n must be an integer"))? as usize;
        let r = obj.get("semilinear").and_then(Value::as_str).ok_or_else(|| anyhow!("semilinear must be a string"))?;
        Ok(Provenance::Semilinear { r: BooleanFunction::parse(n, r)? })
    } else if let Some(c) = obj.get("code") {
        match c.as_str() {
            Some("H") | Some("h") => Ok(Provenance::CodeH),
            _ => bail!("unknown code {c}"),
        }
    } else if obj.contains_key("n") {
        let spec: QuadraticSpec = serde_json::from_value(v).context("quadratic spec")?;
        Ok(Provenance::Quadratic { spec })
    } else {
        bail!("spec matches no construction")
    }
}

fn certify(code: &MdsCode, mode: Mode, budget: &Budget) -> anyhow::Result<Option<TransitivityCertificate>> {
    Ok(match mode {
        Mode::Mds => None,
        Mode::Transitive | Mode::Full => match is_transitive(code, mode == Mode::Full, budget)? {
            TransitivityVerdict::Transitive(c) => Some(c),
            TransitivityVerdict::NotTransitive { .. } => None,
        },
        Mode::Topolinear => match is_topolinear(code, None, budget)? {
            TopolinearVerdict::Topolinear { certificate, .. } => Some(certificate),
            _ => None,
        },
    })
}

fn construct(spec: &Path, out: Option<&Path>, cert: Option<&Path>, mode: Mode, budget: &Budget) -> anyhow::Result<Outcome> {
    let prov = spec_provenance(read_json(spec)?).with_context(|| format!("spec {}", spec.display()))?;
    let code = replay(&prov)?;
    write_out(out, &code.to_json())?;
    let summary = json!({ "q": code.q(), "n": code.n(), "words": code.len(), "code_id": transmds::isometry::code_id(&code) });
    let Some(cert_path) = cert else {
        return Ok(Outcome::new(true, format!("{} words, q = {}, n = {}", code.len(), code.q(), code.n()), summary));
    };
    if mode == Mode::Mds {
        bail!("certificates exist for transitive, full and topolinear modes");
    }
    match certify(&code, mode, budget)? {
        Some(c) => {
            fs::write(cert_path, c.to_json()?).with_context(|| format!("writing {}", cert_path.display()))?;
            Ok(Outcome::new(true, format!("{} words; certificate written", code.len()), summary))
        }
        None => Ok(Outcome::new(false, format!("{} words; no certificate: property fails", code.len()), summary)),
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Mds => "mds",
        Mode::Transitive => "transitive",
        Mode::Full => "full",
        Mode::Topolinear => "topolinear",
    }
}

fn verify(path: &Path, mode: Mode, cert: Option<&Path>, budget: &Budget) -> anyhow::Result<Outcome> {
    let name = mode_name(mode);
    if mode == Mode::Mds {
        let file: CodeFile = serde_json::from_value(read_json(path)?).context("code file")?;
        let alphabet = transmds::algebra::Alphabet::new(file.q, file.structure)?;
        let v = is_mds(&file.words, &alphabet, file.n)?;
        let text = match &v {
            transmds::code::MdsVerdict::Mds => "mds: true".to_string(),
            transmds::code::MdsVerdict::Violation(why) => format!("mds: false ({why})"),
        };
        return Ok(Outcome::new(v.is_mds(), text, json!({ "mode": name, "verdict": v.is_mds() })));
    }
    let code = read_code(path)?;
    if let Some(cp) = cert {
        let c = TransitivityCertificate::from_json(&fs::read_to_string(cp).with_context(|| format!("reading {}", cp.display()))?)?;
        let fits = match mode {
            Mode::Topolinear => c.mode == CertificateMode::Topolinear,
            Mode::Transitive => c.mode != CertificateMode::Full,
            _ => true,
        };
        if !fits {
            bail!("a {:?} certificate does not certify mode {name}", c.mode);
        }
        return Ok(match c.verify(&code) {
            Ok(()) => Outcome::new(true, format!("{name}: true (certificate replayed)"), json!({ "mode": name, "verdict": true, "replay": true })),
            Err(transmds::Error::InvalidCertificate(why)) => Outcome::new(
                false,
                format!("{name}: certificate rejected: {why}"),
                json!({ "mode": name, "verdict": false, "replay": true, "reason": why }),
            ),
            Err(e) => return Err(e.into()),
        });
    }
    let verdict = certify(&code, mode, budget)?;
    let holds = verdict.is_some();
    Ok(Outcome::new(holds, format!("{name}: {holds}"), json!({ "mode": name, "verdict": holds })))
}

fn count(c: CountCommand, budget: &Budget) -> anyhow::Result<Outcome> {
    match c {
        CountCommand::Partitions { n } => {
            let rows = ratio_report(&n)?;
            let text = rows
                .iter()
                .map(|r| format!("N = {:>5}  p(N) = {}  estimate = {:.6e}  ratio = {:.6}", r.n, r.exact, r.estimate, r.ratio))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome::new(true, text, serde_json::to_value(&rows)?))
        }
        CountCommand::Quadratic { q, s, n } => {
            let r = lower_bound_report(q, s, n, budget)?;
            let mut text = format!("Q_{}^{}: {} quadratic forms", r.alphabet, r.n, r.forms);
            if let Some(ex) = &r.exhibit {
                text += &format!("\n{} codes, {} classes", ex.labels.len(), ex.classes.len());
                for class in &ex.classes {
                    let names: Vec<&str> = class.iter().map(|&i| ex.labels[i].as_str()).collect();
                    text += &format!("\n  {{{}}}", names.join(", "));
                }
            }
            let complete = r.exhibit.as_ref().map_or(true, |e| e.complete);
            Ok(Outcome::new(complete, text, serde_json::to_value(&r)?))
        }
        CountCommand::PartitionCodes { total, p } => {
            let t = partition_codes_report(total, p, budget)?;
            let text = format!("{} partitions, {} classes: {:?}", t.labels.len(), t.classes.len(), t.classes);
            Ok(Outcome::new(t.complete, text, serde_json::to_value(&t)?))
        }
    }
}

fn gloop(target: &str) -> anyhow::Result<Outcome> {
    let l = if Path::new(target).is_file() {
        let f: LoopFile = serde_json::from_value(read_json(Path::new(target))?).context("loop file")?;
        f.into_loop()?
    } else {
        target.parse::<BuiltinLoop>()?.build()?
    };
    Ok(match is_g_loop(&l)? {
        GLoopVerdict::GLoop => Outcome::new(true, "G-loop: true", json!({ "g_loop": true })),
        GLoopVerdict::NotGLoop { a, b, isotope } => {
            let file = LoopFile::from_loop(&isotope);
            let rows: Vec<String> = file.table.iter().map(|r| format!("  {r:?}")).collect();
            Outcome::new(
                false,
                format!("G-loop: false\nprincipal isotope at ({a}, {b}) is not isomorphic:\n{}", rows.join("\n")),
                json!({ "g_loop": false, "a": a, "b": b, "isotope": file }),
            )
        }
    })
}

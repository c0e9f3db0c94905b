//! `zca`: batch front end for the cellular-automaton library.
//!
//! Exit codes: 0 success, 1 the decided property fails, 2 bad input,
//! 3 budget exhausted or search inconclusive.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zca::builtin::by_name;
use zca::corpus::elementary_corpus;
use zca::doc::{to_json, CaDoc, ConfigDoc, LatticeDoc, WitnessDoc};
use zca::onedim::{
    build_windowed, decide_injective, decide_preinjective, decide_surjective, goe_crosscheck, padic_tower_report,
    preimage_periodic, synthesize_inverse, InverseOutcome, SurjectivityMethod, SurjectivityWitness,
};
use zca::projlim::closed_image_demo;
use zca::quotient::{quotient_injective, quotient_map, quotient_surjective, surjunctivity_scan};
use zca::{compose, Alphabet, CellularAutomaton, Error, Lattice, PeriodicConfig, RuleBody, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "zca",
    version,
    about = "Cellular automata over Z^d: simulate, transform and decide"
)]
struct Cli {
    /// Cap on enumerated points for any single step.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Doc,
}

#[derive(Subcommand)]
enum Command {
    /// Runs an automaton on a periodic configuration, one line per step.
    Simulate {
        ca: String,
        #[command(flatten)]
        input: ConfigInput,
        /// Number of steps.
        #[arg(long, default_value_t = 1)]
        horizon: usize,
    },
    /// Composes two automata; TAU is applied first.
    Compose { sigma: String, tau: String },
    /// Shrinks the memory set to the cells the rule depends on.
    Minimize { ca: String },
    /// Restricts an automaton to a subgroup whose points contain its memory.
    Restrict {
        ca: String,
        #[arg(long)]
        lattice: String,
    },
    /// Induces an automaton on a subgroup's coordinates up to the ambient group.
    Induce {
        ca: String,
        #[arg(long)]
        lattice: String,
    },
    /// The finite map on configurations fixed by a full-rank lattice.
    Quotient {
        ca: String,
        #[arg(long)]
        lattice: String,
    },
    /// Checks injective-implies-surjective on every quotient up to an index.
    ScanSurjunctivity {
        ca: String,
        #[arg(long, default_value_t = 8)]
        max_index: u64,
    },
    /// Decides a property of a one-dimensional automaton.
    Check {
        ca: String,
        #[command(flatten)]
        property: Property,
        #[arg(long)]
        max_radius: Option<usize>,
    },
    /// Synthesizes and certifies the inverse of a bijective automaton.
    Invert {
        ca: String,
        #[arg(long)]
        max_radius: Option<usize>,
    },
    /// Inverse memory of x(n) - p x(n+1) over Z/p^e for e = 1..max_e.
    PadicTower {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        max_e: u32,
    },
    /// Finds a periodic preimage of a periodic configuration.
    Preimage {
        ca: String,
        #[command(flatten)]
        input: ConfigInput,
        /// Also replays the finite-window limit search to this depth.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Compares the surjectivity and pre-injectivity deciders over a corpus.
    GoeCrosscheck {
        /// Automata to check; defaults to all 256 elementary rules.
        cas: Vec<String>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("cfg").required(true).args(["config", "word"])))]
struct ConfigInput {
    /// Configuration document.
    #[arg(long)]
    config: Option<String>,
    /// One period of a configuration on Z, e.g. 0,1,1,0.
    #[arg(long, value_delimiter = ',')]
    word: Option<Vec<u32>>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Property {
    #[arg(long)]
    injective: bool,
    #[arg(long)]
    surjective: bool,
    #[arg(long)]
    preinjective: bool,
    #[arg(long)]
    bijective: bool,
}

/// A finished command: what to print and how to exit.
struct Report {
    out: String,
    code: u8,
}

impl Report {
    fn ok(out: String) -> Self {
        Report { out, code: 0 }
    }

    fn decided(out: String, holds: bool) -> Self {
        Report {
            out,
            code: if holds { 0 } else { 1 },
        }
    }
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Inconclusive(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.out);
            ExitCode::from(report.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("inconclusive: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let budget = cli.budget;
    let doc = cli.format == Format::Doc;
    match &cli.command {
        Command::Simulate { ca, input, horizon } => simulate(&load_ca(ca)?, &load_config(input)?, *horizon, doc),
        Command::Compose { sigma, tau } => emit_ca(&compose(&load_ca(sigma)?, &load_ca(tau)?, budget)?, doc),
        Command::Minimize { ca } => emit_ca(&load_ca(ca)?.minimize(budget)?, doc),
        Command::Restrict { ca, lattice } => emit_ca(&load_ca(ca)?.restrict(&load_lattice(lattice)?)?, doc),
        Command::Induce { ca, lattice } => emit_ca(&load_ca(ca)?.induce(&load_lattice(lattice)?)?, doc),
        Command::Quotient { ca, lattice } => quotient(&load_ca(ca)?, &load_lattice(lattice)?, budget, doc),
        Command::ScanSurjunctivity { ca, max_index } => scan(&load_ca(ca)?, *max_index, budget, doc),
        Command::Check {
            ca,
            property,
            max_radius,
        } => check(&load_ca(ca)?, property, *max_radius, budget, doc),
        Command::Invert { ca, max_radius } => invert(&load_ca(ca)?, *max_radius, budget, doc),
        Command::PadicTower { p, max_e } => tower(*p, *max_e, budget, doc),
        Command::Preimage { ca, input, horizon } => {
            preimage(&load_ca(ca)?, &load_config(input)?, *horizon, budget, doc)
        }
        Command::GoeCrosscheck { cas } => {
            let corpus = if cas.is_empty() {
                elementary_corpus()
                    .into_iter()
                    .enumerate()
                    .map(|(n, ca)| (format!("elementary-{n}"), ca))
                    .collect()
            } else {
                cas.iter()
                    .map(|s| Ok((s.clone(), load_ca(s)?)))
                    .collect::<Result<Vec<_>, Failure>>()?
            };
            crosscheck(&corpus, budget, doc)
        }
    }
}

// Inputs ---------------------------------------------------------------------

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

/// `builtin:<name>` or a path to an automaton document.
fn load_ca(arg: &str) -> Result<CellularAutomaton, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return Ok(by_name(name)?);
    }
    let doc: CaDoc = zca::doc::from_json(&read(arg)?)?;
    Ok(doc.to_ca()?)
}

fn load_config(input: &ConfigInput) -> Result<PeriodicConfig, Failure> {
    match (&input.config, &input.word) {
        (Some(path), _) => {
            let doc: ConfigDoc = zca::doc::from_json(&read(path)?)?;
            Ok(doc.to_config()?)
        }
        (None, Some(word)) => {
            let size = word.iter().max().map_or(2, |&m| (m + 1).max(2));
            Ok(PeriodicConfig::from_word(Alphabet::finite(size)?, word)?)
        }
        (None, None) => Err(Failure::Input("a configuration is required".into())),
    }
}

/// A positive integer `n` (the lattice nZ), inline JSON, or a document path.
fn load_lattice(arg: &str) -> Result<Lattice, Failure> {
    if let Ok(n) = arg.parse::<i64>() {
        return Ok(Lattice::multiples(n)?);
    }
    let text = if arg.trim_start().starts_with('{') || !Path::new(arg).exists() {
        arg.to_string()
    } else {
        read(arg)?
    };
    let doc: LatticeDoc = zca::doc::from_json(&text)?;
    Ok(doc.to_lattice()?)
}

// Output helpers -----------------------------------------------------------------

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn line<T: std::fmt::Display>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain JSON value") + "\n"
}

fn describe_ca(ca: &CellularAutomaton) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dimension {}", ca.dim());
    let _ = writeln!(s, "source {}", ca.source());
    let _ = writeln!(s, "target {}", ca.target());
    let memory = ca.memory().iter().map(|g| format!("{:?}", g.0)).collect::<Vec<_>>();
    let _ = writeln!(s, "memory {}", memory.join(" "));
    match ca.rule().body() {
        RuleBody::Table(entries) => {
            let _ = writeln!(s, "table {}", line(entries));
        }
        RuleBody::Linear(ms) => {
            for (g, m) in ca.memory().iter().zip(ms) {
                let _ = writeln!(s, "coefficient {:?} {:?}", g.0, m.to_rows());
            }
        }
        RuleBody::Polynomial(ps) => {
            let _ = writeln!(s, "polynomial rule with {} output coordinates", ps.len());
        }
    }
    s
}

fn emit_ca(ca: &CellularAutomaton, doc: bool) -> Outcome {
    Ok(Report::ok(if doc {
        to_json(&CaDoc::from_ca(ca)) + "\n"
    } else {
        describe_ca(ca)
    }))
}

// Verbs ------------------------------------------------------------------------

fn simulate(ca: &CellularAutomaton, x: &PeriodicConfig, horizon: usize, doc: bool) -> Outcome {
    let mut out = String::new();
    for step in ca.trajectory(x, horizon)? {
        if doc {
            out += &serde_json::to_string(&ConfigDoc::from_config(&step)).expect("config document");
        } else {
            out += &line(step.values());
        }
        out.push('\n');
    }
    Ok(Report::ok(out))
}

fn quotient(ca: &CellularAutomaton, h: &Lattice, budget: u64, doc: bool) -> Outcome {
    let q = quotient_map(ca, h, budget)?;
    let injective = quotient_injective(&q)?;
    let surjective = quotient_surjective(&q)?;
    let commutes = q.commutes_everywhere()?;
    let map = q.explicit().map(<[u32]>::to_vec);
    let out = if doc {
        pretty(&json!({
            "lattice": LatticeDoc::from_lattice(h),
            "points": q.num_points() as u64,
            "injective": injective,
            "surjective": surjective,
            "commutes": commutes,
            "map": map,
        }))
    } else {
        let mut s = format!(
            "points {}\ninjective {}\nsurjective {}\ncommutes {}\n",
            q.num_points(),
            yes_no(injective),
            yes_no(surjective),
            yes_no(commutes)
        );
        if let Some(map) = map {
            for (i, j) in map.iter().enumerate() {
                let _ = writeln!(s, "{i} -> {j}");
            }
        }
        s
    };
    Ok(Report::ok(out))
}

fn scan(ca: &CellularAutomaton, max_index: u64, budget: u64, doc: bool) -> Outcome {
    let report = surjunctivity_scan(ca, max_index, budget)?;
    let opt = |b: Option<bool>| b.map_or("skipped", yes_no);
    let out = if doc {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "lattice": LatticeDoc::from_lattice(&r.lattice),
                    "index": r.index,
                    "injective": r.injective,
                    "surjective": r.surjective,
                    "commutes": r.commutes,
                    "exhaustive": r.commutation_exhaustive,
                    "flags": r.flags,
                    "skipped": r.skipped,
                })
            })
            .collect();
        pretty(&json!({ "max_index": max_index, "rows": rows, "notes": report.notes }))
    } else {
        let mut s = String::new();
        for r in &report.rows {
            let _ = write!(
                s,
                "index {} basis {:?} injective {} surjective {} commutes {}",
                r.index,
                r.lattice.columns(),
                opt(r.injective),
                opt(r.surjective),
                opt(r.commutes)
            );
            if let Some(why) = &r.skipped {
                let _ = write!(s, " ({why})");
            }
            s.push('\n');
        }
        for note in &report.notes {
            let _ = writeln!(s, "note: {note}");
        }
        let _ = writeln!(
            s,
            "violations {} commutation-failures {}",
            report.surjunctivity_violations(),
            report.commutation_failures()
        );
        s
    };
    let clean = report.surjunctivity_violations() == 0 && report.commutation_failures() == 0;
    Ok(Report::decided(out, clean))
}

fn verdict(
    property: &str,
    holds: bool,
    extra: Option<(&str, String)>,
    witness: Option<WitnessDoc>,
    doc: bool,
) -> String {
    if doc {
        let mut v = json!({ "property": property, "holds": holds });
        if let Some((k, val)) = &extra {
            v[*k] = json!(val);
        }
        if let Some(w) = witness {
            v["witness"] = serde_json::to_value(w).expect("witness document");
        }
        pretty(&v)
    } else {
        let mut s = format!("{property} {}\n", yes_no(holds));
        if let Some((k, val)) = extra {
            let _ = writeln!(s, "{k} {val}");
        }
        if let Some(w) = witness {
            s += &to_json(&w);
            s.push('\n');
        }
        s
    }
}

fn method_name(m: SurjectivityMethod) -> String {
    match m {
        SurjectivityMethod::Powerset => "powerset",
        SurjectivityMethod::PreInjectivity => "pre-injectivity",
        SurjectivityMethod::Counting => "counting",
    }
    .to_string()
}

fn surjectivity_witness(w: SurjectivityWitness) -> WitnessDoc {
    match w {
        SurjectivityWitness::Orphan(word) => WitnessDoc::Orphan { word },
        SurjectivityWitness::Diamond(d) => WitnessDoc::diamond(&d),
    }
}

fn check(ca: &CellularAutomaton, p: &Property, max_radius: Option<usize>, budget: u64, doc: bool) -> Outcome {
    let wr = build_windowed(ca, budget)?;
    if p.injective {
        let v = decide_injective(&wr, budget)?;
        let w = v.witness.as_ref().map(WitnessDoc::collision);
        Ok(Report::decided(
            verdict("injective", v.injective, None, w, doc),
            v.injective,
        ))
    } else if p.surjective {
        let v = decide_surjective(&wr, budget)?;
        let w = v.witness.map(surjectivity_witness);
        let extra = Some(("method", method_name(v.method)));
        Ok(Report::decided(
            verdict("surjective", v.surjective, extra, w, doc),
            v.surjective,
        ))
    } else if p.preinjective {
        let v = decide_preinjective(&wr, budget)?;
        let w = v.witness.as_ref().map(WitnessDoc::diamond);
        Ok(Report::decided(
            verdict("preinjective", v.preinjective, None, w, doc),
            v.preinjective,
        ))
    } else {
        let inj = decide_injective(&wr, budget)?;
        if let Some(w) = inj.witness.as_ref().filter(|_| !inj.injective) {
            return Ok(Report::decided(
                verdict("bijective", false, None, Some(WitnessDoc::collision(w)), doc),
                false,
            ));
        }
        let sur = decide_surjective(&wr, budget)?;
        if !sur.surjective {
            let w = sur.witness.map(surjectivity_witness);
            return Ok(Report::decided(verdict("bijective", false, None, w, doc), false));
        }
        match synthesize_inverse(ca, max_radius, budget)? {
            InverseOutcome::Found { inverse, .. } => {
                let w = WitnessDoc::Inverse {
                    ca: CaDoc::from_ca(&inverse),
                };
                Ok(Report::ok(verdict("bijective", true, None, Some(w), doc)))
            }
            InverseOutcome::NotBijective { .. } => Err(Failure::Input("deciders disagree on bijectivity".into())),
            InverseOutcome::Inconclusive { reason } => Err(Failure::Inconclusive(format!(
                "bijective, but no certified inverse: {reason}"
            ))),
        }
    }
}

fn invert(ca: &CellularAutomaton, max_radius: Option<usize>, budget: u64, doc: bool) -> Outcome {
    match synthesize_inverse(ca, max_radius, budget)? {
        InverseOutcome::Found { inverse, radius } => Ok(Report::ok(if doc {
            to_json(&CaDoc::from_ca(&inverse)) + "\n"
        } else {
            format!("radius {radius}\n{}", describe_ca(&inverse))
        })),
        InverseOutcome::NotBijective { injective, surjective } => Ok(Report::decided(
            format!(
                "not bijective: injective {} surjective {}\n",
                yes_no(injective),
                yes_no(surjective)
            ),
            false,
        )),
        InverseOutcome::Inconclusive { reason } => Err(Failure::Inconclusive(reason)),
    }
}

fn tower(p: u32, max_e: u32, budget: u64, doc: bool) -> Outcome {
    let report = padic_tower_report(p, max_e, budget)?;
    let out = if doc {
        let rows: Vec<Value> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "e": r.e,
                    "bijective": r.bijective,
                    "inverse_memory": r.inverse_memory,
                    "inverse_coefficients": r.inverse_coefficients,
                    "matches_series": r.matches_series,
                })
            })
            .collect();
        pretty(&json!({ "p": p, "rows": rows, "strictly_increasing": report.memory_strictly_increasing }))
    } else {
        let mut s = String::new();
        for r in &report.rows {
            let memory = r.inverse_memory.as_deref().unwrap_or(&[]);
            let _ = writeln!(
                s,
                "e={} bijective {} inverse memory {{{}}} size {} series {}",
                r.e,
                yes_no(r.bijective),
                memory.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
                memory.len(),
                yes_no(r.matches_series)
            );
        }
        s
    };
    Ok(Report::decided(out, report.all_match()))
}

fn preimage(ca: &CellularAutomaton, y: &PeriodicConfig, horizon: Option<usize>, budget: u64, doc: bool) -> Outcome {
    let wr = build_windowed(ca, budget)?;
    let found = preimage_periodic(&wr, y, budget)?;
    let mut out = match (&found, doc) {
        (Some(x), true) => to_json(&ConfigDoc::from_config(x)) + "\n",
        (Some(x), false) => format!("preimage period {}\n{}\n", x.values().len(), line(x.values())),
        (None, true) => "null\n".to_string(),
        (None, false) => "no preimage\n".to_string(),
    };
    if let Some(h) = horizon {
        let thread = closed_image_demo(&wr, y, Some(h), budget)?;
        if thread.is_some() != found.is_some() {
            return Err(Failure::Input("window search and periodic search disagree".into()));
        }
        if !doc {
            match thread {
                Some(t) => {
                    let _ = writeln!(out, "window from {}: {}", t.lo, line(&t.window));
                }
                None => out += "window search: some level is empty\n",
            }
        }
    }
    Ok(Report::decided(out, found.is_some()))
}

fn crosscheck(corpus: &[(String, CellularAutomaton)], budget: u64, doc: bool) -> Outcome {
    let cas: Vec<CellularAutomaton> = corpus.iter().map(|(_, ca)| ca.clone()).collect();
    let rows = goe_crosscheck(&cas, budget)?;
    let disagreements = rows.iter().filter(|r| !r.agrees()).count();
    let out = if doc {
        let rows: Vec<Value> = corpus
            .iter()
            .zip(&rows)
            .map(|((name, _), r)| json!({ "rule": name, "surjective": r.surjective, "preinjective": r.preinjective }))
            .collect();
        pretty(&json!({ "rows": rows, "disagreements": disagreements }))
    } else {
        let mut s = String::new();
        for ((name, _), r) in corpus.iter().zip(&rows) {
            let _ = writeln!(
                s,
                "{name} surjective {} preinjective {}",
                yes_no(r.surjective),
                yes_no(r.preinjective)
            );
        }
        let surjective = rows.iter().filter(|r| r.surjective).count();
        let _ = writeln!(
            s,
            "rules {} surjective {surjective} disagreements {disagreements}",
            rows.len()
        );
        s
    };
    Ok(Report::decided(out, disagreements == 0))
}

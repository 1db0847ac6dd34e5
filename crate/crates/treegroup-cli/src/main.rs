//! `treegroup`: command-line front end for the treegroup library.
//!
//! Commands that analyse a group read a group file from `--input` (default
//! stdin). `zoo` and `bp` write group files, so commands can be piped:
//!
//! ```text
//! treegroup zoo basilica --d 1 --m 2 --s 2 | treegroup quotient --level 7
//! ```
//!
//! Exit codes: 0 computed or verified, 1 check failed, 2 input error,
//! 3 resource cap hit or search inconclusive.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treegroup::basilica::bp_generators;
use treegroup::groupfile::{emit_group_file, parse_group_file_capped, parse_word};
use treegroup::groups::{
    generalised_basilica_stabilizer, is_bounded, is_fractal_at, is_self_similar_closed, is_spherically_transitive,
    is_strongly_fractal_at, nucleus, verify_stabilizer_generators, LevelQuotient, QuotientOptions,
    DEFAULT_NUCLEUS_ROUNDS, DEFAULT_NUCLEUS_SIZE, DEFAULT_POINT_CAP,
};
use treegroup::hausdorff::{closed_form_generalised, has_cyclic_labels, obstruction_series, predicted_bp_obstructions};
use treegroup::lpres::{verify_relators, zero_exponent_sums, LPresentation};
use treegroup::{zoo, Automorphism, Error, Execution, GroupSpec, Vertex};

const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Parser)]
#[command(name = "treegroup", version, about = "Automorphism groups of rooted trees and the Basilica operation")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Group file to read, `-` for stdin.
    #[arg(short, long, global = true, default_value = "-")]
    input: String,
    /// Largest m^n handled by the generic permutation engine.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    point_cap: usize,
    /// Largest machine built while parsing product expressions.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: usize,
    /// Nucleus search gives up past this many elements.
    #[arg(long, global = true, default_value_t = DEFAULT_NUCLEUS_SIZE)]
    nucleus_size: usize,
    /// Nucleus search gives up after this many rounds.
    #[arg(long, global = true, default_value_t = DEFAULT_NUCLEUS_ROUNDS)]
    nucleus_rounds: usize,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alphabet, generators and basic properties.
    Info,
    /// Image of a vertex under a word.
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        vertex: String,
    },
    /// Labels of an element (default: every generator) down to a depth.
    Portrait {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        word: Option<String>,
    },
    /// Apply the Basilica operation and print the resulting group file.
    Bp {
        #[arg(long)]
        s: usize,
    },
    /// Order of the level-n congruence quotient G/St(n).
    Quotient {
        #[arg(long)]
        level: usize,
    },
    /// Series of obstructions up to a level.
    Obstructions {
        #[arg(long)]
        levels: usize,
    },
    /// Partial Hausdorff-dimension estimates up to a level.
    Hausdorff {
        #[arg(long)]
        levels: usize,
    },
    /// Decide a property at finite depth.
    Check {
        property: Property,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Check the normal generators of St(n) for bp_s(O_m^d).
    StabVerify {
        #[arg(long)]
        n: usize,
        /// Defaults to n + 2.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// L-presentation of bp_s(O_m^d).
    Lpres {
        action: LpresAction,
        #[command(flatten)]
        params: BasilicaParams,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        #[arg(long, default_value_t = 2)]
        vbox: usize,
    },
    /// Print a group file for a standard example.
    Zoo {
        #[command(subcommand)]
        group: ZooGroup,
    },
    /// Graphviz rendering of an element's machine (default: every generator).
    Dot {
        #[arg(long)]
        word: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Transitive,
    Fractal,
    StronglyFractal,
    Contracting,
    Bounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum LpresAction {
    /// Evaluate Q ∪ Φ^{≤rmax}(R) in the automaton group.
    Verify,
    /// Every relator has zero exponent sums.
    Abelianization,
    /// Invariants of γ₂/γ₃ from the class-2 images of the relators.
    Gamma23,
}

#[derive(Args, Clone, Copy)]
struct BasilicaParams {
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    s: usize,
}

#[derive(Subcommand)]
enum ZooGroup {
    /// The m-adic odometer.
    Odometer {
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// bp_s(O_m^d).
    Basilica {
        #[command(flatten)]
        params: BasilicaParams,
    },
    /// GGS group with defining vector e (comma separated).
    Ggs {
        #[arg(long)]
        p: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        e: Vec<i64>,
    },
    Grigorchuk,
    GuptaSidki {
        #[arg(long, default_value_t = 3)]
        p: usize,
    },
}

/// What a command produced: a text rendering, a JSON value and whether the
/// check (if any) held.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn done(text: String, json: Value) -> Report {
        Report { text, json, ok: true }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("JSON values serialise"));
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(f) => {
            let (code, msg) = match f {
                Failure::Lib(e @ (Error::Input(_) | Error::Parse { .. })) => (2, e.to_string()),
                Failure::Lib(e) => (3, e.to_string()),
                Failure::Io(msg) => (2, msg),
            };
            if cli.json {
                println!("{}", json!({ "error": msg, "exit": code }));
            }
            eprintln!("treegroup: {msg}");
            ExitCode::from(code)
        }
    }
}

impl Cli {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn opts(&self) -> QuotientOptions {
        QuotientOptions { point_cap: self.point_cap, exec: self.exec(), ..QuotientOptions::default() }
    }

    fn group(&self) -> Result<GroupSpec, Failure> {
        let text = if self.input == "-" {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(&self.input).map_err(|e| Failure::Io(format!("reading {}: {e}", self.input)))?
        };
        Ok(parse_group_file_capped(&text, self.state_cap)?)
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.cmd {
        Cmd::Zoo { group } => zoo_cmd(group),
        Cmd::Lpres { action, params, rmax, vbox } => lpres_cmd(cli, *action, *params, *rmax, *vbox),
        cmd => {
            let g = cli.group()?;
            match cmd {
                Cmd::Info => info(&g),
                Cmd::Act { word, vertex } => act(&g, word, vertex),
                Cmd::Portrait { depth, word } => portrait(&g, *depth, word.as_deref()),
                Cmd::Bp { s } => group_file_report(&bp_generators(&g, *s)?),
                Cmd::Quotient { level } => quotient(cli, &g, *level),
                Cmd::Obstructions { levels } => obstructions(cli, &g, *levels),
                Cmd::Hausdorff { levels } => hausdorff(cli, &g, *levels),
                Cmd::Check { property, depth } => check(cli, &g, *property, *depth),
                Cmd::StabVerify { n, depth } => stab_verify(cli, &g, *n, depth.unwrap_or(n + 2)),
                Cmd::Dot { word } => dot(&g, word.as_deref()),
                Cmd::Zoo { .. } | Cmd::Lpres { .. } => unreachable!(),
            }
        }
    }
}

/// The elements a command works on: one word, or every generator.
fn targets(g: &GroupSpec, word: Option<&str>) -> Result<Vec<(String, Automorphism)>, Failure> {
    Ok(match word {
        Some(w) => vec![(w.to_string(), g.evaluate(&parse_word(g, w)?)?)],
        None => g.named().to_vec(),
    })
}

fn group_file_report(g: &GroupSpec) -> Outcome {
    let text = emit_group_file(g);
    let names: Vec<&str> = g.names().collect();
    Ok(Report::done(text.clone(), json!({ "alphabet": g.m(), "generators": names, "group_file": text })))
}

fn zoo_cmd(group: &ZooGroup) -> Outcome {
    let g = match group {
        ZooGroup::Odometer { m } => {
            if *m < 2 {
                return Err(Error::Input("alphabet size must be at least 2".into()).into());
            }
            zoo::odometer(*m)
        }
        ZooGroup::Basilica { params: p } => zoo::generalised_basilica(p.d, p.m, p.s)?,
        ZooGroup::Ggs { p, e } => zoo::ggs(&zoo::GGSSpec::new(*p, e.clone())?)?,
        ZooGroup::Grigorchuk => zoo::grigorchuk(),
        ZooGroup::GuptaSidki { p } => zoo::gupta_sidki(*p)?,
    };
    group_file_report(&g)
}

fn info(g: &GroupSpec) -> Outcome {
    let gens: Vec<Value> = g
        .named()
        .iter()
        .map(|(n, h)| json!({ "name": n, "states": h.num_states(), "bounded": is_bounded(h) }))
        .collect();
    let closed = is_self_similar_closed(g);
    let cyclic = has_cyclic_labels(g);
    let mut text = format!("alphabet {}\ngenerators {}\n", g.m(), g.len());
    for (n, h) in g.named() {
        text += &format!("  {n}: {} states, {}\n", h.num_states(), if is_bounded(h) { "bounded" } else { "unbounded" });
    }
    text += &format!("self-similar closed: {closed}\nlabels are powers of the m-cycle: {cyclic}\n");
    Ok(Report::done(
        text,
        json!({ "alphabet": g.m(), "generators": gens, "self_similar_closed": closed, "cyclic_labels": cyclic }),
    ))
}

fn act(g: &GroupSpec, word: &str, vertex: &str) -> Outcome {
    let h = g.evaluate(&parse_word(g, word)?)?;
    let v = Vertex::parse(g.m(), vertex)?;
    let image = Vertex(h.act(&v.0)?);
    let label = h.label(&v.0)?;
    let text = format!("{image}\nlabel at {v}: {label}\n");
    Ok(Report::done(
        text,
        json!({ "word": word, "vertex": v.to_string(), "image": image.to_string(), "label": label.to_string() }),
    ))
}

fn portrait(g: &GroupSpec, depth: usize, word: Option<&str>) -> Outcome {
    let mut text = String::new();
    let mut out = Vec::new();
    for (name, h) in targets(g, word)? {
        text += &format!("{name}:\n");
        let mut labels = Vec::new();
        for (v, p) in h.portrait(depth).entries() {
            if !p.is_identity() {
                text += &format!("  {v} {p}\n");
            }
            labels.push(json!([v.to_string(), p.to_string()]));
        }
        out.push(json!({ "element": name, "depth": depth, "labels": labels }));
    }
    Ok(Report::done(text, json!(out)))
}

fn quotient(cli: &Cli, g: &GroupSpec, level: usize) -> Outcome {
    let q = LevelQuotient::with_options(g, level, cli.opts())?;
    let order = q.order();
    let log = q.log_order();
    let engine = if q.is_layered() { "layered" } else { "schreier-sims" };
    let mut text = match log {
        Some(l) => format!("level {level}\norder {order} = {}^{l}\n", g.m()),
        None => format!("level {level}\norder {order}\n"),
    };
    text += &format!("engine {engine}\n");
    if let Some(r) = q.layer_ranks() {
        text += &format!("layer ranks {}\n", join(&r));
    }
    Ok(Report::done(
        text,
        json!({
            "level": level,
            "order": order.to_string(),
            "log_order": log,
            "engine": engine,
            "layer_ranks": q.layer_ranks(),
        }),
    ))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// (d, s) when g is bp_s(O_m^d) with its standard `a_i_j` generators.
fn recognise_basilica(g: &GroupSpec) -> Option<(usize, usize)> {
    let mut d = 0;
    let mut s = 0;
    for name in g.names() {
        let mut parts = name.strip_prefix("a_")?.split('_');
        let i: usize = parts.next()?.parse().ok()?;
        let j: usize = parts.next()?.parse().ok()?;
        if parts.next().is_some() {
            return None;
        }
        d = d.max(i + 1);
        s = s.max(j + 1);
    }
    let b = zoo::generalised_basilica(d, g.m(), s).ok()?;
    (b.named() == g.named()).then_some((d, s))
}

fn obstructions(cli: &Cli, g: &GroupSpec, levels: usize) -> Outcome {
    let series = obstruction_series(g, levels, cli.opts())?;
    let o: Vec<String> = series.o.iter().map(ToString::to_string).collect();
    let logs: Vec<String> = series.log_orders.iter().map(ToString::to_string).collect();
    let mut text = format!("log orders {}\nobstructions {}\n", logs.join(" "), o.join(" "));
    let mut predicted = None;
    if let Some((d, s)) = recognise_basilica(g).filter(|_| !series.o.is_empty()) {
        let n_max = series.o.len() - 1;
        let base = zoo::odometer_product(g.m(), d)?;
        let o_g = obstruction_series(&base, n_max / s + 1, cli.opts())?.o;
        let p: Vec<String> = predicted_bp_obstructions(&o_g, s, n_max)?.iter().map(ToString::to_string).collect();
        text += &format!("predicted for bp_{s}(O_{}^{d}) {}\n", g.m(), p.join(" "));
        predicted = Some(p);
    }
    Ok(Report::done(
        text,
        json!({ "alphabet": g.m(), "log_orders": logs, "obstructions": o, "predicted": predicted }),
    ))
}

fn hausdorff(cli: &Cli, g: &GroupSpec, levels: usize) -> Outcome {
    let series = obstruction_series(g, levels, cli.opts())?;
    let rows = series.report();
    let closed = recognise_basilica(g).map(|(_, s)| closed_form_generalised(g.m(), s));
    let mut text = String::from("n\torder\tlog\to(n)\testimate\n");
    for r in &rows {
        let est = match (&r.estimate, r.estimate_f64) {
            (Some(e), Some(f)) => format!("{e} ({f:.6})"),
            _ => "-".into(),
        };
        text += &format!("{}\t{}\t{}\t{}\t{est}\n", r.n, r.order, r.log_order, r.obstruction.as_deref().unwrap_or("-"));
    }
    if let Some(c) = &closed {
        text += &format!("closed form {c}\n");
    }
    Ok(Report::done(text, json!({ "rows": rows, "closed_form": closed.map(|c| c.to_string()) })))
}

fn check(cli: &Cli, g: &GroupSpec, property: Property, depth: usize) -> Outcome {
    let (name, holds, mut text, mut extra) = match property {
        Property::Transitive => ("transitive", is_spherically_transitive(g, depth)?, String::new(), json!({})),
        Property::Fractal => ("fractal", is_fractal_at(g, depth, cli.opts())?, String::new(), json!({})),
        Property::StronglyFractal => {
            ("strongly-fractal", is_strongly_fractal_at(g, depth, cli.opts())?, String::new(), json!({}))
        }
        Property::Contracting => {
            let n = nucleus(g, cli.nucleus_rounds, cli.nucleus_size, cli.exec())?;
            let text = format!("nucleus size {}\nnucleus core {}\n", n.len(), n.core_len());
            ("contracting", true, text, json!({ "nucleus_size": n.len(), "nucleus_core": n.core_len() }))
        }
        Property::Bounded => {
            let per: Vec<(&str, bool)> = g.named().iter().map(|(n, h)| (n.as_str(), is_bounded(h))).collect();
            let text = per.iter().map(|(n, b)| format!("  {n}: {b}\n")).collect();
            let all = per.iter().all(|p| p.1);
            let map: serde_json::Map<String, Value> = per.iter().map(|(n, b)| (n.to_string(), json!(b))).collect();
            ("bounded", all, text, json!({ "generators": map }))
        }
    };
    text = format!("{name}: {}\n{text}", if holds { "holds" } else { "fails" });
    extra["property"] = json!(name);
    extra["holds"] = json!(holds);
    if !matches!(property, Property::Contracting | Property::Bounded) {
        extra["depth"] = json!(depth);
    }
    Ok(Report { text, json: extra, ok: holds })
}

fn stab_verify(cli: &Cli, g: &GroupSpec, n: usize, depth: usize) -> Outcome {
    let Some((d, s)) = recognise_basilica(g) else {
        return Err(Error::Input("stab-verify needs bp_s(O_m^d) with generators named a_i_j".into()).into());
    };
    let claimed = generalised_basilica_stabilizer(g, d, s, n)?;
    let report = verify_stabilizer_generators(g, &claimed, n, depth, cli.opts())?;
    let holds = report.holds();
    let text = format!(
        "St(n) for n = {n}, modulo St({depth}): {}\nclaimed generators fix level {n}: {}\nnormal closure order {}\nstabiliser order {}\n",
        if holds { "verified" } else { "fails" },
        report.claimed_in_stabilizer,
        report.closure_order,
        report.stabilizer_order,
    );
    let mut value = serde_json::to_value(&report).expect("report serialises");
    value["holds"] = json!(holds);
    Ok(Report { text, json: value, ok: holds })
}

fn lpres_cmd(cli: &Cli, action: LpresAction, p: BasilicaParams, rmax: usize, vbox: usize) -> Outcome {
    let pres = LPresentation::new(p.d, p.m, p.s)?;
    let head = json!({ "d": p.d, "m": p.m, "s": p.s, "rmax": rmax, "vbox": vbox });
    match action {
        LpresAction::Verify => {
            let b = zoo::generalised_basilica(p.d, p.m, p.s)?;
            let rels = pres.relators(rmax, vbox);
            let check = verify_relators(&b, &rels, cli.exec())?;
            let mut text = format!("{} relators checked, {} not trivial\n", check.checked, check.failures.len());
            for &k in &check.failures {
                text += &format!("  {}\n", rels[k].display(p.d));
            }
            let failing: Vec<String> = check.failures.iter().map(|&k| rels[k].display(p.d)).collect();
            let mut value = head;
            value["checked"] = json!(check.checked);
            value["failures"] = json!(failing);
            Ok(Report { text, json: value, ok: check.holds() })
        }
        LpresAction::Abelianization => {
            let rels = pres.relators(rmax, vbox);
            let holds = zero_exponent_sums(&rels, pres.n());
            let text = format!("{} relators, exponent sums all zero: {holds}\n", rels.len());
            let mut value = head;
            value["relators"] = json!(rels.len());
            value["holds"] = json!(holds);
            Ok(Report { text, json: value, ok: holds })
        }
        LpresAction::Gamma23 => {
            let inv = pres.class2_quotient(rmax, vbox)?;
            let mut parts: Vec<String> = Vec::new();
            if inv.free_rank > 0 {
                parts.push(format!("Z^{}", inv.free_rank));
            }
            parts.extend(inv.torsion.iter().map(|t| format!("C_{t}")));
            let shape = if parts.is_empty() { "1".to_string() } else { parts.join(" x ") };
            let text = format!("gamma2/gamma3 = {shape}\ntorsion order {}\n", inv.torsion_order());
            let mut value = head;
            value["free_rank"] = json!(inv.free_rank);
            value["torsion"] = json!(inv.torsion);
            value["torsion_order"] = json!(inv.torsion_order().to_string());
            Ok(Report::done(text, value))
        }
    }
}

fn dot(g: &GroupSpec, word: Option<&str>) -> Outcome {
    let graphs: Vec<(String, String)> = targets(g, word)?.into_iter().map(|(n, h)| (n.clone(), h.to_dot(&n))).collect();
    let text = graphs.iter().map(|(_, d)| d.as_str()).collect::<Vec<_>>().join("\n");
    let value: Vec<Value> = graphs.iter().map(|(n, d)| json!({ "element": n, "dot": d })).collect();
    Ok(Report::done(text, json!(value)))
}

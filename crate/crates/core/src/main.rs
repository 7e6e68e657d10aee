use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cenet::catalog::{self, CatalogError, Quantity};
use cenet::dsl::{self, ParseError};
use cenet::engine::rational::{decimal, fraction_string, label, parse_fraction};
use cenet::engine::{Engine, EngineError, Limits, Rational, StatsReport, MAX_ORDER_ENV};
use cenet::network::Network;
use cenet::render::{self, AsciiOptions, RenderError};
use cenet::transforms::{self, TransformError};

#[derive(Parser)]
#[command(name = "cenet", version, about = "Compare-exchange network workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact swap statistics over all N! inputs.
    Stats {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
        /// Cost of a swap relative to a comparison ("2", "3/2").
        #[arg(long, default_value = "2")]
        cost_weight: String,
    },
    /// Check sorting or selection.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        sort: bool,
        /// Rank K always ends on wire P.
        #[arg(long, num_args = 2, value_names = ["K", "P"])]
        select: Option<Vec<usize>>,
        #[arg(long)]
        median: bool,
    },
    /// Draw the network.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "svg")]
        ascii: bool,
        #[arg(long)]
        svg: bool,
        /// Annotate with swap probabilities and summary numbers.
        #[arg(long)]
        stats: bool,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Widest ASCII diagram accepted.
        #[arg(long, default_value_t = AsciiOptions::default().max_width)]
        max_width: usize,
    },
    /// Rewrite the network and print the result in DSL form.
    Transform {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        op: TransformOp,
        /// Candidate limit for --min-max-swaps.
        #[arg(long, default_value_t = 10_000, requires = "min_max_swaps")]
        budget: usize,
    },
    /// Number of inputs per total swap count.
    Histogram {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Built-in networks.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Joint swap table of two elements.
    Correlate {
        #[command(flatten)]
        source: Source,
        /// Element indices, 1-based.
        #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
        links: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show {
        name: String,
    },
    /// Print the DSL form.
    Export {
        name: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceKind {
    /// Network in DSL form.
    #[arg(long)]
    dsl: Option<String>,
    /// File holding DSL text.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Catalog entry name.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct Source {
    #[command(flatten)]
    kind: SourceKind,
    /// Number of wires (required with --dsl and --file).
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TransformOp {
    /// 1-based index of the link to pre-exchange.
    #[arg(long, value_name = "IDX")]
    pre_exchange: Option<usize>,
    #[arg(long)]
    deoffend: bool,
    #[arg(long)]
    fuse: bool,
    #[arg(long)]
    decompose: bool,
    #[arg(long)]
    min_max_swaps: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        let code = match e {
            EngineError::LimitExceeded { .. } => 3,
            EngineError::Invalid(_) => 2,
            _ => 4,
        };
        let message = if code == 3 {
            format!("{e} (raise the cap with {MAX_ORDER_ENV})")
        } else {
            e.to_string()
        };
        Failure { code, message }
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Failure {
        match e {
            TransformError::Engine(e) => e.into(),
            TransformError::SearchLimit { .. } => Failure {
                code: 3,
                message: e.to_string(),
            },
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<RenderError> for Failure {
    fn from(e: RenderError) -> Failure {
        let code = match e {
            RenderError::Invalid(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let engine = Engine::new().with_limits(Limits::from_env());
    let mut out = String::new();
    let result = run(cli.command, &engine, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, engine: &Engine, out: &mut String) -> Outcome {
    match command {
        Command::Stats {
            source,
            json,
            cost_weight,
        } => {
            let net = load(&source)?;
            let weight = parse_fraction(&cost_weight).ok_or_else(|| {
                Failure::usage(format!(
                    "--cost-weight: {cost_weight:?} is not a number or fraction"
                ))
            })?;
            let stats = engine.exhaustive_stats(&net, weight)?;
            if json {
                out.push_str(&pretty(&stats.to_json()));
            } else {
                stats_text(&net, &stats, out);
            }
            Ok(0)
        }
        Command::Verify {
            source,
            sort,
            select,
            median,
        } => {
            let net = load(&source)?;
            let n = net.order();
            let mut checks: Vec<(String, bool)> = Vec::new();
            let sort = sort || (select.is_none() && !median);
            if sort {
                checks.push(("sort".into(), engine.verify_sorts(&net)?));
            }
            let mut selections = Vec::new();
            if let Some(kp) = select {
                selections.push((kp[0], kp[1]));
            }
            if median {
                let m = n.div_ceil(2);
                selections.push((m, m));
            }
            for (k, p) in selections {
                let ok = engine.verify_selection(&net, k, p).map_err(|e| match e {
                    EngineError::RankOutOfRange { .. } => {
                        Failure::usage(format!("--select/--median: {e}"))
                    }
                    other => other.into(),
                })?;
                checks.push((format!("select rank {k} at wire {p}"), ok));
            }
            let mut all = true;
            for (name, ok) in checks {
                all &= ok;
                out.push_str(&format!("{name}: {}\n", if ok { "PASS" } else { "FAIL" }));
            }
            Ok(if all { 0 } else { 1 })
        }
        Command::Render {
            source,
            ascii: _,
            svg,
            stats,
            output,
            max_width,
        } => {
            let net = load(&source)?;
            let report = if stats {
                Some(engine.exhaustive_stats(&net, Rational::from_integer(2))?)
            } else {
                None
            };
            let text = if svg {
                render::render_svg(&net, report.as_ref())?
            } else {
                render::render_ascii_with(&net, report.as_ref(), &AsciiOptions { max_width })?
            };
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    Failure::usage(format!("-o: cannot write {}: {e}", path.display()))
                })?,
                None => out.push_str(&text),
            }
            Ok(0)
        }
        Command::Transform { source, op, budget } => {
            let net = load(&source)?;
            transform(engine, &net, &op, budget, out)
        }
        Command::Histogram { source, json } => {
            let net = load(&source)?;
            let h = engine.histogram(&net)?;
            if json {
                let doc = serde_json::json!({ "order": net.order(), "histogram": h });
                out.push_str(&pretty(&doc));
            } else {
                out.push_str("swaps inputs\n");
                for (k, v) in &h {
                    out.push_str(&format!("{k:>5} {v}\n"));
                }
            }
            Ok(0)
        }
        Command::Catalog { action } => catalog_cmd(action, out),
        Command::Correlate { source, links } => {
            let net = load(&source)?;
            let (i, j) = (links[0], links[1]);
            for v in [i, j] {
                if v == 0 || v > net.len() {
                    return Err(Failure::usage(format!(
                        "--links: index {v} outside 1..={}",
                        net.len()
                    )));
                }
            }
            let t = engine.joint_swap_table(&net, i - 1, j - 1)?;
            let c = t.counts;
            out.push_str(&format!(
                "elements {i} ({}) and {j} ({}) over {} inputs\n",
                net.elements()[i - 1],
                net.elements()[j - 1],
                t.total
            ));
            out.push_str(&format!(
                "{:<12}{:>10}{:>10}\n",
                "",
                format!("{j} swaps"),
                format!("{j} idle")
            ));
            out.push_str(&format!(
                "{:<12}{:>10}{:>10}\n",
                format!("{i} swaps"),
                c[1][1],
                c[1][0]
            ));
            out.push_str(&format!(
                "{:<12}{:>10}{:>10}\n",
                format!("{i} idle"),
                c[0][1],
                c[0][0]
            ));
            out.push_str(&format!(
                "P({i}) = {}\n",
                fraction_string(&t.marginal_first())
            ));
            out.push_str(&format!(
                "P({j}) = {}\n",
                fraction_string(&t.marginal_second())
            ));
            out.push_str(&format!(
                "P({i} and {j}) = {}\n",
                fraction_string(&t.both())
            ));
            let cond =
                |r: Option<Rational>| r.map_or("undefined".to_string(), |r| fraction_string(&r));
            out.push_str(&format!(
                "P({j} | {i}) = {}\n",
                cond(t.second_given_first())
            ));
            out.push_str(&format!(
                "P({i} | {j}) = {}\n",
                cond(t.first_given_second())
            ));
            Ok(0)
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn load(source: &Source) -> Result<Network, Failure> {
    let k = &source.kind;
    if let Some(name) = &k.catalog {
        let entry = catalog::get(name).map_err(|e| Failure::usage(format!("--catalog: {e}")))?;
        if let Some(n) = source.order {
            if n != entry.network.order() {
                return Err(Failure::usage(format!(
                    "--order: {name} has order {}, not {n}",
                    entry.network.order()
                )));
            }
        }
        return Ok(entry.network);
    }
    let (flag, text) = match (&k.dsl, &k.file) {
        (Some(t), _) => ("--dsl", t.clone()),
        (_, Some(p)) => (
            "--file",
            std::fs::read_to_string(p)
                .map_err(|e| Failure::usage(format!("--file: cannot read {}: {e}", p.display())))?,
        ),
        _ => unreachable!("clap requires a source"),
    };
    let order = source
        .order
        .ok_or_else(|| Failure::usage(format!("--order is required with {flag}")))?;
    dsl::parse(&text, order).map_err(|e: ParseError| Failure {
        code: 2,
        message: format!("{flag}: {e}"),
    })
}

fn stats_text(net: &Network, s: &StatsReport, out: &mut String) {
    let line = |out: &mut String, t: String| {
        out.push_str(&t);
        out.push('\n');
    };
    line(out, format!("network: {}", dsl::serialize(net)));
    line(
        out,
        format!(
            "order {}, links {}, elements {}, stages {}",
            s.order,
            s.links,
            net.len(),
            s.stage_count
        ),
    );
    line(
        out,
        format!(
            "avg swaps: {} ({})",
            fraction_string(&s.avg_swaps),
            decimal(&s.avg_swaps, 3)
        ),
    );
    let example = s
        .worst_inputs
        .first()
        .map(|w| format!(", e.g. {w:?}"))
        .unwrap_or_default();
    line(
        out,
        format!(
            "max swaps: {} on {} inputs{example}",
            s.max_swaps, s.worst_count
        ),
    );
    line(
        out,
        format!(
            "avg comparisons: {} ({}), max {}",
            fraction_string(&s.avg_comparisons),
            decimal(&s.avg_comparisons, 3),
            s.max_comparisons
        ),
    );
    line(
        out,
        format!(
            "weighted cost at swap weight {}: {} ({})",
            label(&s.cost_weight),
            fraction_string(&s.weighted_cost),
            decimal(&s.weighted_cost, 3)
        ),
    );
    let settled: Vec<String> = s.settled.iter().map(|w| w.to_string()).collect();
    line(
        out,
        format!("settled: [{}] disorder {}", settled.join(" "), s.disorder),
    );
    line(out, "element probabilities:".to_string());
    for (i, (e, st)) in net.elements().iter().zip(&s.elements).enumerate() {
        let probs: Vec<String> = st.slots.iter().map(label).collect();
        line(
            out,
            format!("{:>4} {:<12} {}", i + 1, e.to_string(), probs.join(" ")),
        );
    }
}

fn summary(engine: &Engine, net: &Network) -> Result<String, Failure> {
    let s = engine.exhaustive_stats(net, Rational::from_integer(2))?;
    Ok(format!(
        "links {}, avg swaps {} ({}), max swaps {}, stages {}",
        s.links,
        fraction_string(&s.avg_swaps),
        decimal(&s.avg_swaps, 3),
        s.max_swaps,
        s.stage_count
    ))
}

fn transform(
    engine: &Engine,
    net: &Network,
    op: &TransformOp,
    budget: usize,
    out: &mut String,
) -> Outcome {
    let mut extra = Vec::new();
    let result = if let Some(idx) = op.pre_exchange {
        if idx == 0 {
            return Err(Failure::usage("--pre-exchange: indices are 1-based"));
        }
        transforms::pre_exchange(net, idx - 1).map_err(|e| match e {
            TransformError::TargetOutOfRange { len, .. } => {
                Failure::usage(format!("--pre-exchange: index {idx} outside 1..={len}"))
            }
            TransformError::TargetNotALink(_) => {
                Failure::usage(format!("--pre-exchange: element {idx} is not a plain link"))
            }
            TransformError::InvertsLink { index } => Failure::usage(format!(
                "--pre-exchange: transposition would reverse upstream link {}",
                index + 1
            )),
            TransformError::FusedElement(i) => Failure::usage(format!(
                "--pre-exchange: element {} is fused; decompose first",
                i + 1
            )),
            other => other.into(),
        })?
    } else if op.deoffend {
        transforms::deoffend(engine, net)?
    } else if op.fuse {
        transforms::fuse(engine, net)?
    } else if op.decompose {
        net.decompose()
    } else {
        let m = transforms::minimize_max_swaps(engine, net, budget)?;
        extra.push(format!("candidates explored: {}", m.explored));
        if m.budget_exhausted {
            extra.push(format!(
                "budget of {budget} exhausted; result may not be optimal"
            ));
        }
        extra.push(format!(
            "average {}",
            if m.avg_preserved() {
                "preserved"
            } else {
                "changed"
            }
        ));
        m.network
    };
    out.push_str(&dsl::serialize(&result));
    out.push('\n');
    match (summary(engine, net), summary(engine, &result)) {
        (Ok(before), Ok(after)) => {
            out.push_str(&format!("before: {before}\n"));
            out.push_str(&format!("after:  {after}\n"));
        }
        (Err(f), _) | (_, Err(f)) if f.code == 3 => {
            eprintln!("note: summary skipped: {}", f.message);
        }
        (Err(f), _) | (_, Err(f)) => return Err(f),
    }
    for e in extra {
        out.push_str(&e);
        out.push('\n');
    }
    Ok(0)
}

fn catalog_cmd(action: CatalogAction, out: &mut String) -> Outcome {
    let lookup = |name: &str| {
        catalog::get(name).map_err(|e| match e {
            CatalogError::Unknown(_) => Failure::usage(format!("{e}; see `cenet catalog list`")),
            other => Failure::usage(other.to_string()),
        })
    };
    match action {
        CatalogAction::List => {
            for l in catalog::list() {
                let name = if l.generator {
                    format!("{} (batcher-<n>)", l.name)
                } else {
                    l.name.to_string()
                };
                out.push_str(&format!("{name:<22} {:<50} {}\n", l.summary, l.source));
            }
        }
        CatalogAction::Show { name } => {
            let e = lookup(&name)?;
            let x = &e.expected;
            out.push_str(&format!("name: {}\n", e.name));
            out.push_str(&format!("source: {}\n", e.source));
            out.push_str(&format!("order: {}\n", e.network.order()));
            out.push_str(&format!("dsl: {}\n", dsl::serialize(&e.network)));
            out.push_str(&format!(
                "elements: {}, links: {}\n",
                e.network.len(),
                e.network.link_count()
            ));
            out.push_str(&format!("role: {:?}\n", e.role));
            if let Some(a) = x.avg_swaps {
                let shown = match a {
                    Quantity::Exact(r) => fraction_string(&r),
                    other => other.to_string(),
                };
                out.push_str(&format!("expected avg swaps: {shown}\n"));
            }
            if let Some(m) = x.max_swaps {
                out.push_str(&format!("expected max swaps: {m}\n"));
            }
            if let Some(s) = x.stages {
                out.push_str(&format!("expected stages: {s}\n"));
            }
            if let Some(p) = &x.slot_probs {
                let p: Vec<String> = p.iter().map(label).collect();
                out.push_str(&format!("expected probabilities: {}\n", p.join(" ")));
            }
            if let Some(h) = &x.histogram {
                out.push_str(&format!("expected histogram: {h:?}\n"));
            }
            if let Some(s) = &x.settled {
                out.push_str(&format!("expected settled: {s:?}\n"));
            }
            if let Some(w) = &x.worst_input {
                out.push_str(&format!("expected worst input: {w:?}\n"));
            }
            if let Some(s) = x.sorts {
                out.push_str(&format!("expected to sort: {s}\n"));
            }
        }
        CatalogAction::Export { name } => {
            let e = lookup(&name)?;
            out.push_str(&dsl::serialize(&e.network));
            out.push('\n');
        }
    }
    Ok(0)
}

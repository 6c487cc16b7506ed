use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use misere_core::{
    enumerate, Arena, EnumSpec, Error, Filter, FormId, PfreeModulo, PopulationSpec, Suite, SuiteReport, UniverseTag,
    Verifier,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "misere", version, about = "Misère game forms: outcomes, tipping points, comparison, verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Universe for membership, enumeration and verification.
    #[arg(long, global = true, value_enum, default_value_t = Universe::B)]
    universe: Universe,

    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max_birthday: u32,

    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    max_width: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads.
    #[arg(long, global = true, env = "MISERE_JOBS", value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Misère outcome.
    Outcome {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Tipping points.
    Tp {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Strict P-freeness, and a P-free equivalent modulo B if one is found.
    Pfree {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Universe membership.
    Member {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Left and Right B-strength.
    Strong {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compare two forms modulo B. Exits 1 unless the first is >= the second.
    Cmp {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Invertibility modulo B. Exits 1 if not invertible.
    Invertible {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List forms of the universe within the bounds.
    Enumerate,
    /// Run verification suites over the strictly P-free forms of the universe.
    Verify {
        suite: SuiteArg,
        /// Extra forms added to the population (negative controls).
        #[arg(long)]
        inject: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Universe {
    M,
    D,
    E,
    B,
}

impl Universe {
    fn tag(self) -> UniverseTag {
        match self {
            Universe::M => UniverseTag::M,
            Universe::D => UniverseTag::D,
            Universe::E => UniverseTag::E,
            Universe::B => UniverseTag::B,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Structured,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
#[value(rename_all = "snake_case")]
enum SuiteArg {
    OutcomeStable,
    PfreePlusInteger,
    TippingContiguity,
    TableTechs,
    #[value(name = "table_11_14")]
    Table11_14,
    PropertyX,
    FinalPiece,
    PfreeClosure,
    Invertibility,
    BLemmas,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        let one = match self {
            SuiteArg::All => return Suite::ALL.to_vec(),
            SuiteArg::OutcomeStable => Suite::OutcomeStable,
            SuiteArg::PfreePlusInteger => Suite::PfreePlusInteger,
            SuiteArg::TippingContiguity => Suite::TippingContiguity,
            SuiteArg::TableTechs => Suite::TableTechs,
            SuiteArg::Table11_14 => Suite::Table11_14,
            SuiteArg::PropertyX => Suite::PropertyX,
            SuiteArg::FinalPiece => Suite::FinalPiece,
            SuiteArg::PfreeClosure => Suite::PfreeClosure,
            SuiteArg::Invertibility => Suite::Invertibility,
            SuiteArg::BLemmas => Suite::BLemmas,
        };
        vec![one]
    }
}

/// Result of a command: text rendering, structured payload, exit status.
struct Outcome {
    text: String,
    value: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, value: Value) -> Self {
        Outcome { text, value, code: 0 }
    }
}

/// Errors that map to exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: Error) -> anyhow::Error {
    match e {
        Error::Parse { .. }
        | Error::IntegerLimit { .. }
        | Error::ResourceLimit { .. }
        | Error::NotBlocking(_)
        | Error::Augmented(_)
        | Error::InvalidArgument(_) => Usage(e.to_string()).into(),
        other => other.into(),
    }
}

fn parse(arena: &mut Arena, expr: &str) -> anyhow::Result<FormId> {
    arena.parse(expr).map_err(usage)
}

fn require_b(cli: &Cli, command: &str) -> anyhow::Result<()> {
    if !matches!(cli.universe, Universe::B) {
        return Err(Usage(format!("{command} is only defined modulo the blocking universe (--universe b)")).into());
    }
    Ok(())
}

fn execute(cli: &Cli) -> anyhow::Result<Outcome> {
    let mut arena = Arena::new();
    let width = cli.max_width as usize;
    match &cli.command {
        Command::Outcome { expr } => {
            let g = parse(&mut arena, expr)?;
            let o = arena.outcome(g);
            Ok(Outcome::ok(o.to_string(), json!({ "form": arena.print(g), "outcome": o })))
        }
        Command::Tp { expr } => {
            let g = parse(&mut arena, expr)?;
            let tp = arena.tipping_points(g)?;
            Ok(Outcome::ok(
                format!("ltp={} ntp={} rtp={}", tp.ltp, tp.ntp, tp.rtp),
                json!({ "form": arena.print(g), "tipping_points": tp }),
            ))
        }
        Command::Pfree { expr } => {
            let g = parse(&mut arena, expr)?;
            let strict = arena.is_strictly_p_free(g);
            let mut text = format!("strictly_p_free={strict}");
            let mut value = json!({ "form": arena.print(g), "strictly_p_free": strict });
            if matches!(cli.universe, Universe::B) && arena.is_blocking(g).unwrap_or(false) {
                match arena.pfree_modulo_b_bounded(g, cli.max_birthday, width).map_err(usage)? {
                    PfreeModulo::Witness { form } => {
                        let w = arena.print(form);
                        write!(text, "\nmodulo_b=witness {w}")?;
                        value["modulo_b"] = json!({ "verdict": "witness", "form": w });
                    }
                    PfreeModulo::Unknown { searched } => {
                        write!(text, "\nmodulo_b=unknown (searched {searched})")?;
                        value["modulo_b"] = json!({ "verdict": "unknown", "searched": searched });
                    }
                }
            }
            Ok(Outcome::ok(text, value))
        }
        Command::Member { expr } => {
            let g = parse(&mut arena, expr)?;
            let m = arena.is_member(g, cli.universe.tag()).map_err(usage)?;
            Ok(Outcome::ok(m.to_string(), json!({ "form": arena.print(g), "member": m })))
        }
        Command::Strong { expr } => {
            let g = parse(&mut arena, expr)?;
            let l = arena.left_b_strong(g).map_err(usage)?;
            let r = arena.right_b_strong(g).map_err(usage)?;
            Ok(Outcome::ok(
                format!("left_b_strong={l} right_b_strong={r}"),
                json!({ "form": arena.print(g), "left_b_strong": l, "right_b_strong": r }),
            ))
        }
        Command::Cmp { g, h } => {
            require_b(cli, "cmp")?;
            let g = parse(&mut arena, g)?;
            let h = parse(&mut arena, h)?;
            for x in [g, h] {
                if !arena.is_blocking(x).map_err(usage)? {
                    return Err(usage(Error::NotBlocking(x)));
                }
            }
            let gh = arena.geq_b(g, h).map_err(usage)?;
            let hg = arena.geq_b(h, g).map_err(usage)?;
            let relation = match (gh.geq, hg.geq) {
                (true, true) => "equivalent",
                (true, false) => "greater",
                (false, true) => "less",
                (false, false) => "incomparable",
            };
            let (gp, hp) = (arena.print(g), arena.print(h));
            let mut text = format!("{gp} >= {hp}: {}\n{hp} >= {gp}: {}\nrelation: {relation}", gh.geq, hg.geq);
            if let Some(t) = gh.trace {
                write!(text, "\nfirst failure of {gp} >= {hp}: {}", trace_text(&arena, t))?;
            }
            Ok(Outcome {
                text,
                value: json!({ "g": gp, "h": hp, "geq": gh, "leq": hg, "relation": relation }),
                code: if gh.geq { 0 } else { 1 },
            })
        }
        Command::Invertible { expr } => {
            require_b(cli, "invertible")?;
            let g = parse(&mut arena, expr)?;
            let inv = arena.invertible_b(g).map_err(usage)?;
            Ok(Outcome {
                text: inv.to_string(),
                value: json!({ "form": arena.print(g), "invertible": inv }),
                code: if inv { 0 } else { 1 },
            })
        }
        Command::Enumerate => {
            let spec = universe_spec(cli, false);
            let forms = enumerate(&mut arena, &spec).map_err(usage)?;
            let mut text = String::new();
            let mut rows = Vec::with_capacity(forms.len());
            for &g in &forms {
                let p = arena.print(g);
                let o = arena.outcome(g);
                writeln!(text, "{p}\t{o}")?;
                rows.push(json!({ "form": p, "outcome": o, "strictly_p_free": arena.is_strictly_p_free(g) }));
            }
            write!(text, "{} forms", forms.len())?;
            Ok(Outcome::ok(text, json!({ "count": forms.len(), "forms": rows })))
        }
        Command::Verify { suite, inject } => {
            let mut forms = Vec::new();
            for s in inject {
                forms.push(parse(&mut arena, s)?);
            }
            let spec = PopulationSpec::new(universe_spec(cli, true)).with_inject(&forms);
            let mut v = Verifier::new(&mut arena, spec).map_err(usage)?;
            let mut reports = Vec::new();
            for s in suite.suites() {
                reports.push(v.run(s)?);
            }
            let passed = reports.iter().all(|r| r.passed);
            let text = reports.iter().map(report_text).collect::<Vec<_>>().join("\n");
            Ok(Outcome {
                text,
                value: json!({ "passed": passed, "reports": reports }),
                code: if passed { 0 } else { 1 },
            })
        }
    }
}

fn universe_spec(cli: &Cli, p_free: bool) -> EnumSpec {
    let mut spec = EnumSpec::new(cli.max_birthday, cli.max_width as usize);
    if p_free {
        spec = spec.with_filter(Filter::PFree);
    }
    match cli.universe {
        Universe::M => spec,
        u => spec.with_filter(Filter::Universe(u.tag())),
    }
}

fn trace_text(arena: &Arena, t: misere_core::CompareFailure) -> String {
    use misere_core::CompareFailure::*;
    match t {
        RightOption { g_right } => format!("Right option {} of the first form is unanswered", arena.print(g_right)),
        LeftOption { h_left } => format!("Left option {} of the second form is unanswered", arena.print(h_left)),
        LeftProviso => "second form is a Left end but the first is not Left B-strong".into(),
        RightProviso => "first form is a Right end but the second is not Right B-strong".into(),
    }
}

fn report_text(r: &SuiteReport) -> String {
    let mut s = format!(
        "{}: {} ({} instances, population {} forms, {})",
        r.suite,
        if r.passed { "PASS" } else { "FAIL" },
        r.instances_checked,
        r.population.size,
        r.population.pair_scope
    );
    for c in &r.clauses {
        let _ = write!(s, "\n  {:<36} fired {:>10}  failed {}", c.id, c.fired, c.failed);
    }
    for w in &r.failures {
        let _ = write!(
            s,
            "\n  witness {} [{}]{}: expected {}, observed {}{}",
            w.clause,
            w.forms.join(", "),
            w.offset.map(|k| format!(" at k={k}")).unwrap_or_default(),
            w.expected,
            w.observed,
            if w.confirmed { "" } else { " (NOT reproduced standalone)" }
        );
        if let Some(d) = &w.distinguisher {
            let _ = write!(s, "; distinguisher X={} gives {} vs {}", d.x, d.o_gx, d.o_hx);
        }
    }
    s
}

fn config_value(cli: &Cli) -> Value {
    json!({
        "universe": cli.universe,
        "max_birthday": cli.max_birthday,
        "max_width": cli.max_width,
        "format": cli.format,
        "jobs": rayon::current_num_threads(),
    })
}

fn emit(cli: &Cli, body: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, format!("{body}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global();
    }
    let start = Instant::now();
    let result = execute(&cli);
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Structured => {
                    let doc = json!({
                        "command": argv[1..],
                        "config": config_value(&cli),
                        "result": out.value,
                        "timing": { "seconds": seconds },
                    });
                    serde_json::to_string_pretty(&doc).expect("json values serialize")
                }
            };
            if let Err(e) = emit(&cli, &body) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ddsl::dot::to_dot;
use ddsl::io::{self, ModelFile, UpdateFile};
use ddsl::validity::{
    axiom_suite, check_validity, translation_suite, EnumerationBounds, SuiteConfig, TranslationConfig, Verdict,
};
use ddsl::{
    complexity, compose, parse, product_update, translate, CheckContext, Error, Face, Formula, Product, Registry,
    SimplicialModel,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ddsl", version, about = "Joint commitments on chromatic simplicial models")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Timing and size details on stderr
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a face (or every face) of a model
    Check {
        #[arg(long)]
        model: PathBuf,
        /// Comma-separated vertex ids, in any order
        #[arg(long, conflicts_with = "all_faces", required_unless_present = "all_faces")]
        face: Option<String>,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        updates: Updates,
        #[arg(long)]
        all_faces: bool,
    },
    /// Summary of a model, or one of its subcomplexes
    Info {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, conflicts_with_all = ["star", "link"])]
        skeleton: Option<usize>,
        #[arg(long, conflicts_with = "link")]
        star: Option<String>,
        #[arg(long)]
        link: Option<String>,
    },
    /// Product update of a model with an update model
    Update {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        action_model: PathBuf,
        /// Write the product model as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the product model as Graphviz
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Sequential composition of two update models
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite a dynamic formula into an equivalent static one
    Translate {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        updates: Updates,
        /// Print every rewrite step with its complexity change
        #[arg(long)]
        trace: bool,
    },
    /// Bounded validity check over all small models
    Validity {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        updates: Updates,
    },
    /// Run the axiom suite (or the translation suite) over small models
    Axioms {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        /// Formulas per schema
        #[arg(long, default_value_t = 24)]
        samples: usize,
        /// Check translation equivalence instead
        #[arg(long)]
        translation: bool,
    },
    /// Print a model (or a built-in scenario) as JSON or Graphviz
    Export {
        #[arg(long, required_unless_present = "scenario", conflicts_with = "scenario")]
        model: Option<PathBuf>,
        /// Built-in scenario name; `--scenario list` shows them
        #[arg(long)]
        scenario: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Args)]
struct Updates {
    /// Update model as NAME=PATH, or PATH (named after the file stem)
    #[arg(long = "updates", value_name = "NAME=PATH")]
    updates: Vec<String>,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 2)]
    agents: usize,
    #[arg(long, default_value_t = 1)]
    props: usize,
    #[arg(long, default_value_t = 2)]
    vertices: usize,
    #[arg(long, default_value_t = 2)]
    facets: usize,
}

impl Bounds {
    fn get(&self) -> EnumerationBounds {
        EnumerationBounds::new(self.agents, self.props, self.vertices, self.facets)
    }
}

/// Exit codes: 0 ok/true, 1 false/counterexample, 2 usage or parse error,
/// 3 file or validation error.
enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::EmptyGroup(_) => Failure::Usage(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    if cli.verbose {
        eprintln!("elapsed: {:.2?}", start.elapsed());
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn load_model(path: &Path) -> Result<SimplicialModel, Failure> {
    io::load_model(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn registry(u: &Updates) -> Result<Registry, Failure> {
    let mut reg = Registry::new();
    for spec in &u.updates {
        let (name, path) = match spec.split_once('=') {
            Some((n, p)) => (n.to_string(), PathBuf::from(p)),
            None => {
                let p = PathBuf::from(spec);
                // `x.update.json` is named `x`
                let stem = p
                    .file_name()
                    .and_then(|s| s.to_str())
                    .and_then(|s| s.split('.').next())
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| Failure::Usage(format!("cannot name update model `{spec}`")))?
                    .to_string();
                (stem, p)
            }
        };
        let u = io::load_update(&path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
        reg.insert(name, u)?;
    }
    Ok(reg)
}

fn face_arg(m: &SimplicialModel, text: &str) -> Result<Face, Failure> {
    let ids: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(m.face(&ids)?)
}

fn formula_arg(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| Failure::Usage(format!("in formula: {e}")))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn model_json(m: &SimplicialModel) -> Value {
    serde_json::to_value(ModelFile::from_model(m)).expect("model serializes")
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check { model, face, formula, updates, all_faces } => {
            let m = load_model(model)?;
            let f = formula_arg(formula)?;
            let ctx = CheckContext::with_updates(m.clone(), registry(updates)?);
            let verdicts = ctx.verdicts(&f)?;
            let faces: Vec<usize> = if *all_faces {
                (0..m.face_count()).collect()
            } else {
                let x = face_arg(&m, face.as_deref().expect("clap enforces --face"))?;
                vec![m.face_index(&x).expect("face() returns faces of the model")]
            };
            let rows: Vec<(Vec<String>, bool)> =
                faces.iter().map(|&i| (m.face_ids(&m.faces()[i]), verdicts[i])).collect();
            if cli.json {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|(ids, r)| json!({"formula": f.to_string(), "face": ids, "result": r}))
                    .collect();
                print_json(&if *all_faces { Value::Array(items) } else { items[0].clone() });
            } else if *all_faces {
                for (ids, r) in &rows {
                    println!("{{{}}}: {r}", ids.join(","));
                }
            } else {
                println!("{}", rows[0].1);
            }
            if cli.verbose {
                eprintln!("faces: {}, formula size: {}", m.face_count(), f.dag_size());
            }
            Ok(rows.iter().all(|r| r.1))
        }
        Command::Info { model, skeleton, star, link } => {
            let m = load_model(model)?;
            let m = match (skeleton, star, link) {
                (Some(k), _, _) => m.skeleton(*k),
                (_, Some(x), _) => m.star(&face_arg(&m, x)?)?,
                (_, _, Some(x)) => m.link(&face_arg(&m, x)?)?,
                _ => m,
            };
            if cli.json {
                let mut v = model_json(&m);
                v["dimension"] = json!(m.dimension());
                v["pure"] = json!(m.is_pure());
                v["faces"] = json!(m.face_count());
                print_json(&v);
            } else {
                let agents: Vec<&str> = m.agents().iter().map(|a| a.as_str()).collect();
                println!("agents: {}", agents.join(", "));
                println!("vertices: {}", m.vertices().len());
                println!("faces: {}", m.face_count());
                println!("dimension: {}", m.dimension());
                println!("pure: {}", m.is_pure());
                println!("facets:");
                for f in m.facets() {
                    println!("  {}", m.format_face(f));
                }
            }
            Ok(true)
        }
        Command::Update { model, action_model, out, dot } => {
            let m = load_model(model)?;
            let u = io::load_update(action_model)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", action_model.display())))?;
            let product = product_update(&CheckContext::new(m), &u)?;
            match &product {
                Product::Updated(p) => {
                    if let Some(path) = out {
                        write(path, &io::model_to_json(p))?;
                    }
                    if let Some(path) = dot {
                        write(path, &to_dot(p, "product"))?;
                    }
                    if cli.json {
                        print_json(&json!({"empty": false, "model": model_json(p)}));
                    } else {
                        println!("product: {} vertices, {} facets", p.vertices().len(), p.facets().len());
                        for f in p.facets() {
                            println!("  {}", p.format_face(f));
                        }
                    }
                }
                Product::Empty => {
                    if cli.json {
                        print_json(&json!({"empty": true}));
                    } else {
                        println!("product: empty");
                    }
                }
            }
            Ok(true)
        }
        Command::Compose { left, right, out } => {
            let mut reg = Registry::new();
            let mut names = Vec::new();
            for p in [left, right] {
                let one = registry(&Updates { updates: vec![p.display().to_string()] })?;
                let name = one.names().next().expect("one model").to_string();
                if !reg.contains(&name) {
                    reg.insert(name.clone(), (**one.get(&name).expect("inserted")).clone())?;
                }
                names.push(name);
            }
            let c = compose(&reg, &names[0], &names[1])?;
            let text = io::update_to_json(&c);
            if let Some(path) = out {
                write(path, &text)?;
            }
            if cli.json {
                print_json(&serde_json::to_value(UpdateFile::from_update(&c)).expect("update serializes"));
            } else {
                println!("composite {};{}: {} events", names[0], names[1], c.frame().vertices().len());
                for (name, face) in c.named() {
                    println!("  {name}: {}", c.frame().format_face(face));
                }
            }
            Ok(true)
        }
        Command::Translate { formula, updates, trace } => {
            let f = formula_arg(formula)?;
            let reg = registry(updates)?;
            let report = translate(&reg, &f)?;
            let c = complexity(&reg, &f)?;
            if cli.json {
                let steps: Vec<Value> = report
                    .trace
                    .iter()
                    .map(|s| json!({"rule": s.rule, "before": s.before, "after": s.after, "depth": s.depth}))
                    .collect();
                let mut v = json!({
                    "formula": f.to_string(),
                    "translation": report.output.to_string(),
                    "complexity": c,
                    "strictly_decreasing": report.strictly_decreasing(),
                });
                if *trace {
                    v["trace"] = Value::Array(steps);
                }
                print_json(&v);
            } else {
                println!("{}", report.output);
                if *trace {
                    for s in &report.trace {
                        println!("{s}");
                    }
                }
            }
            if cli.verbose {
                eprintln!(
                    "complexity: {c}, steps: {}, output size: {}",
                    report.trace.len(),
                    report.output.dag_size()
                );
            }
            Ok(true)
        }
        Command::Validity { formula, bounds, updates } => {
            let f = formula_arg(formula)?;
            let reg = registry(updates)?;
            let b = bounds.get();
            match check_validity(&f, &b, &reg)? {
                Verdict::ValidUpToBound { models_checked } => {
                    if cli.json {
                        print_json(&json!({"formula": f.to_string(), "valid": true, "models": models_checked}));
                    } else {
                        println!("valid up to bound ({b}; {models_checked} models)");
                    }
                    Ok(true)
                }
                Verdict::Counterexample { model, face, index } => {
                    if cli.json {
                        print_json(&json!({
                            "formula": f.to_string(),
                            "valid": false,
                            "index": index,
                            "face": model.face_ids(&face),
                            "model": model_json(&model),
                        }));
                    } else {
                        println!("counterexample: model #{index} at {}", model.format_face(&face));
                        print!("{}", io::model_to_json(&model));
                    }
                    Ok(false)
                }
            }
        }
        Command::Axioms { bounds, seed, samples, translation } => {
            if *translation {
                let cfg = TranslationConfig { bounds: bounds.get(), seed: *seed, ..TranslationConfig::default() };
                let r = translation_suite(&cfg)?;
                if cli.json {
                    print_json(&json!({
                        "triples": r.triples,
                        "mismatches": r.mismatches.len(),
                        "non_decreasing": r.non_decreasing,
                        "passed": r.passed(),
                    }));
                } else {
                    println!("{r}");
                }
                return Ok(r.passed());
            }
            let cfg = SuiteConfig { bounds: bounds.get(), seed: *seed, samples: *samples, ..SuiteConfig::default() };
            let r = axiom_suite(&cfg)?;
            if cli.json {
                let rows: Vec<Value> = r
                    .rows
                    .iter()
                    .map(|row| {
                        json!({
                            "schema": row.name,
                            "expect_valid": row.expect == ddsl::validity::suite::Expect::Valid,
                            "instances": row.instances,
                            "checks": row.checks,
                            "counterexample": row.witness.as_ref().map(|w| json!({
                                "formula": w.formula.to_string(),
                                "model_index": w.model_index,
                                "face": w.model.face_ids(&w.face),
                            })),
                            "passed": row.passed(),
                        })
                    })
                    .collect();
                print_json(&json!({"models": r.models, "rows": rows, "passed": r.passed()}));
            } else {
                println!("{r}");
            }
            Ok(r.passed())
        }
        Command::Export { model, scenario, format } => {
            let m = match (model, scenario.as_deref()) {
                (Some(p), _) => load_model(p)?,
                (None, Some("list")) => {
                    for (name, _) in ddsl::scenarios::models() {
                        println!("{name}");
                    }
                    return Ok(true);
                }
                (None, Some(name)) => ddsl::scenarios::models()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, m)| m)
                    .ok_or_else(|| Failure::Usage(format!("unknown scenario `{name}`")))?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let name = scenario
                .clone()
                .or_else(|| model.as_ref().and_then(|p| p.file_stem()).map(|s| s.to_string_lossy().into()))
                .unwrap_or_else(|| "model".into());
            match format {
                Format::Json => print!("{}", io::model_to_json(&m)),
                Format::Dot => print!("{}", to_dot(&m, &name)),
            }
            Ok(true)
        }
    }
}

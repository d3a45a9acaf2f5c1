//! `dqra`: command-line front end.
//!
//! Reports go to stdout as JSON, diagnostics to stderr. Exit codes: 0 ok,
//! 1 a checked property is false (the witness is in the report), 2 bad
//! input or usage, 3 a size or search budget was exceeded.

mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dqra::{dot, fixtures, search::DEFAULT_MAX_SIZE, Constraint, Error, FiniteAlgebra, SearchSpec};
use serde_json::{json, Value};

use io::{load_algebra, load_context, load_json, load_relations, write_text};

/// Environment override for the largest exhaustive search size.
const MAX_SIZE_VAR: &str = "DQRA_MAX_SEARCH_SIZE";
/// Environment override for the search node budget.
const NODE_BUDGET_VAR: &str = "DQRA_NODE_BUDGET";
/// Environment override for the up-set enumeration cap of `dq --enumerate`.
const UPSET_CAP_VAR: &str = "DQRA_UPSET_CAP";
const DEFAULT_UPSET_CAP: usize = 1 << 16;

#[derive(Parser)]
#[command(
    name = "dqra",
    version,
    about = "Finite quasi relation algebras: checks, constructions, representations, search"
)]
struct Cli {
    /// Write every fixture algebra, poset and representation into DIR.
    #[arg(long, value_name = "DIR")]
    seed_fixtures: Option<PathBuf>,
    /// Also write DOT files when seeding fixtures.
    #[arg(long, requires = "seed_fixtures")]
    with_dot: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct OutArgs {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "out", value_name = "FILE")]
    out: Option<PathBuf>,
    /// Graphviz DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the axiom suite on an algebra.
    Check {
        algebra: PathBuf,
        /// Properties that must hold for exit code 0 (search constraint names).
        #[arg(long = "require", value_name = "PROPERTY", default_value = "dqra")]
        require: Vec<Constraint>,
        /// Print the Hasse diagram as DOT instead of the report.
        #[arg(long)]
        dot: bool,
    },
    /// Nested sum K[L].
    Sum {
        k: PathBuf,
        l: PathBuf,
        #[command(flatten)]
        out: OutArgs,
        /// Write the inclusion maps of K and L.
        #[arg(long, value_name = "FILE")]
        maps: Option<PathBuf>,
    },
    /// The Sugihara chain with n elements.
    Sugihara {
        n: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The algebra of up-sets of a context.
    Dq {
        context: PathBuf,
        /// All of Up(E) (the default).
        #[arg(long, conflicts_with = "generators")]
        enumerate: bool,
        /// Generate from the relations in FILE (a JSON list).
        #[arg(long, value_name = "FILE")]
        generators: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Verify or search for an embedding of an algebra into Dq(E).
    Embed {
        algebra: PathBuf,
        context: PathBuf,
        /// Verify these images instead of searching.
        #[arg(long, value_name = "FILE")]
        images: Option<PathBuf>,
        /// Write the embedding found or verified.
        #[arg(short = 'o', long = "out", value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Representation of the Sugihara chain with n elements.
    RepSugihara {
        n: usize,
        /// Write the context here (JSON, or DOT with --dot).
        #[command(flatten)]
        out: OutArgs,
        /// Write the embedding here.
        #[arg(long, value_name = "FILE")]
        embedding: Option<PathBuf>,
    },
    /// Representation of S_n[L] from a representation of L.
    RepNested {
        algebra: PathBuf,
        context: PathBuf,
        embedding: PathBuf,
        /// Size of the outer Sugihara chain (odd).
        #[arg(long, default_value_t = 3)]
        outer: usize,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long = "embedding-out", value_name = "FILE")]
        embedding_out: Option<PathBuf>,
    },
    /// Enumerate models of a given size up to isomorphism.
    Search {
        #[arg(long)]
        size: usize,
        #[arg(long = "constraint", value_name = "NAME")]
        constraints: Vec<Constraint>,
        #[arg(long)]
        limit: Option<usize>,
        /// Stop after this many search nodes.
        #[arg(long)]
        node_budget: Option<u64>,
        /// JSON lines go here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Validate an algebra, context or relation file and re-emit it.
    Export {
        file: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

/// Why a command stopped early.
enum Failure {
    /// Exit 1: the report carries the witness.
    Property(Value),
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) | Error::TooManyUpsets { .. } => Failure::Budget(e.to_string()),
            Error::IdentityNotIrreducible { ref op, ref args } => {
                Failure::Property(json!({ "error": e.to_string(), "operation": op, "witness": args }))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match (&cli.seed_fixtures, cli.command) {
        (Some(dir), None) => seed_fixtures(dir, cli.with_dot),
        (None, Some(cmd)) => run(cmd),
        (Some(_), Some(_)) => Err(Failure::Input("--seed-fixtures does not combine with a subcommand".into())),
        (None, None) => Err(Failure::Input("no subcommand given; see --help".into())),
    };
    match outcome {
        Ok(report) => {
            print_report(&report);
            ExitCode::SUCCESS
        }
        Err(Failure::Property(report)) => {
            print_report(&report);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            print_report(&json!({ "error": msg }));
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            print_report(&json!({ "error": msg, "budget_exceeded": true }));
            ExitCode::from(3)
        }
    }
}

/// `Value::Null` means the command already wrote its primary output.
fn print_report(report: &Value) {
    if !report.is_null() {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { algebra, require, dot } => check(&algebra, &require, dot),
        Command::Sum { k, l, out, maps } => sum(&k, &l, &out, maps.as_deref()),
        Command::Sugihara { n, out } => {
            let s = dqra::sugihara_chain(n)?;
            emit_algebra(s.algebra(), &format!("S{n}"), &out)
        }
        Command::Dq { context, enumerate: _, generators, out } => dq(&context, generators.as_deref(), &out),
        Command::Embed { algebra, context, images, out } => {
            embed(&algebra, &context, images.as_deref(), out.as_deref())
        }
        Command::RepSugihara { n, out, embedding } => {
            let (ctx, emb) = dqra::sugihara_representation(n)?;
            emit_representation(&ctx, &emb, &format!("S{n}"), &out, embedding.as_deref())
        }
        Command::RepNested { algebra, context, embedding, outer, out, embedding_out } => {
            let alg = load_algebra(&algebra)?;
            let ctx = load_context(&context)?;
            let rec: dqra::EmbeddingRecord = load_json(&embedding)?;
            let phi = dqra::verify_embedding(&alg, &ctx, rec.relations()?);
            let (nctx, emb) = dqra::sn_nested_representation(outer, &alg, &ctx, &phi)?;
            emit_representation(&nctx, &emb, &format!("S{outer}[L]"), &out, embedding_out.as_deref())
        }
        Command::Search { size, constraints, limit, node_budget, out } => {
            search(size, constraints, limit, node_budget, out.as_deref())
        }
        Command::Export { file, out } => export(&file, &out),
    }
}

fn check(path: &Path, require: &[Constraint], dot: bool) -> Outcome {
    let alg = load_algebra(path)?;
    let report = dqra::check_axioms(&alg);
    let failed: Vec<&str> = require.iter().filter(|c| !c.holds(&alg, &report)).map(|c| c.name()).collect();
    let value = if dot {
        print!("{}", dot::algebra_to_dot(&alg, &stem(path)));
        Value::Null
    } else {
        let mut v = serde_json::to_value(&report).expect("serializable");
        v["required"] = json!(require.iter().map(|c| c.name()).collect::<Vec<_>>());
        v["failed"] = json!(failed);
        v
    };
    if failed.is_empty() {
        Ok(value)
    } else {
        if dot {
            eprintln!("required properties fail: {}", failed.join(", "));
        }
        Err(Failure::Property(value))
    }
}

fn sum(k: &Path, l: &Path, out: &OutArgs, maps: Option<&Path>) -> Outcome {
    let (k, l) = (load_algebra(k)?, load_algebra(l)?);
    let s = dqra::nested_sum(&k, &l)?;
    if let Some(path) = maps {
        write_text(
            path,
            &serde_json::to_string_pretty(&json!({ "from_k": s.from_k, "from_l": s.from_l })).expect("serializable"),
        )?;
    }
    emit_algebra(&s.algebra, "K[L]", out)
}

fn dq(context: &Path, generators: Option<&Path>, out: &OutArgs) -> Outcome {
    let ctx = load_context(context)?;
    let elements = match generators {
        Some(path) => dqra::generate_subalgebra(&ctx, &load_relations(path)?)?,
        None => {
            let cap = env_number(UPSET_CAP_VAR)?.unwrap_or(DEFAULT_UPSET_CAP);
            dqra::representation::enumerate_upsets_capped(&ctx, cap)?
        }
    };
    let dq = dqra::dq_algebra(&ctx, elements)?;
    let report = dqra::check_axioms(&dq.algebra);
    let relations: Vec<_> = dq.elements.iter().map(dqra::BinRel::to_record).collect();
    let summary = json!({
        "size": dq.algebra.size(),
        "DqRA": report.dqra.holds,
        "elements": relations,
    });
    if out.dot {
        write_primary(out, &dot::algebra_to_dot(&dq.algebra, &stem(context)))?;
        return Ok(if out.out.is_some() { summary } else { Value::Null });
    }
    let mut record = serde_json::to_value(dq.algebra.to_record()).expect("serializable");
    match &out.out {
        Some(path) => {
            write_text(path, &serde_json::to_string_pretty(&record).expect("serializable"))?;
            Ok(summary)
        }
        None => {
            record["elements"] = summary["elements"].clone();
            Ok(json!({ "algebra": record, "DqRA": report.dqra.holds }))
        }
    }
}

fn embed(algebra: &Path, context: &Path, images: Option<&Path>, out: Option<&Path>) -> Outcome {
    let alg = load_algebra(algebra)?;
    let ctx = load_context(context)?;
    let (emb, pool) = match images {
        Some(path) => {
            let rec: dqra::EmbeddingRecord = load_json(path)?;
            (Some(dqra::verify_embedding(&alg, &ctx, rec.relations()?)), None)
        }
        None => {
            let found = dqra::find_embedding(&alg, &ctx, None)?;
            (found.embedding, Some(json!({ "kind": found.pool, "size": found.pool_size })))
        }
    };
    let Some(emb) = emb else {
        return Err(Failure::Property(json!({ "embedding": null, "pool": pool })));
    };
    if let Some(path) = out {
        write_text(path, &serde_json::to_string_pretty(&emb.to_record()).expect("serializable"))?;
    }
    let report = json!({
        "passes": emb.passes(),
        "first_failure": emb.report.first_failure(),
        "preservation": emb.report,
        "images": emb.images.iter().map(dqra::BinRel::to_record).collect::<Vec<_>>(),
        "pool": pool,
    });
    if emb.passes() {
        Ok(report)
    } else {
        Err(Failure::Property(report))
    }
}

fn search(
    size: usize,
    constraints: Vec<Constraint>,
    limit: Option<usize>,
    node_budget: Option<u64>,
    out: Option<&Path>,
) -> Outcome {
    let mut spec = SearchSpec::new(size, constraints);
    spec.limit = limit;
    spec.max_size = env_number(MAX_SIZE_VAR)?.unwrap_or(DEFAULT_MAX_SIZE);
    spec.node_budget = node_budget.or(env_number(NODE_BUDGET_VAR)?);
    let start = Instant::now();
    let set = dqra::enumerate_models(&spec)?;
    let mut lines = Vec::with_capacity(set.models.len() + 1);
    for m in &set.models {
        let hex: String = m.canonical.iter().map(|b| format!("{b:02x}")).collect();
        let line = json!({ "algebra": m.algebra.to_record(), "properties": m.properties, "canonical": hex });
        lines.push(serde_json::to_string(&line).expect("serializable"));
    }
    let summary = json!({
        "summary": {
            "size": size,
            "constraints": spec.constraints.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "models": set.models.len(),
            "exhaustive": set.exhaustive,
            "budget_exceeded": set.budget_exceeded,
            "lattices": set.lattices,
            "nodes": set.nodes,
            "wall_ms": start.elapsed().as_millis() as u64,
        }
    });
    lines.push(serde_json::to_string(&summary).expect("serializable"));
    let mut text = lines.join("\n");
    text.push('\n');
    match out {
        Some(path) => write_text(path, &text)?,
        None => print!("{text}"),
    }
    if set.budget_exceeded {
        return Err(Failure::Budget(format!("node budget reached after {} nodes; results are partial", set.nodes)));
    }
    Ok(Value::Null)
}

fn export(file: &Path, out: &OutArgs) -> Outcome {
    let value: Value = load_json(file)?;
    let title = stem(file);
    let (json, dot) = if value.get("mult").is_some() {
        let alg = load_algebra(file)?;
        (serde_json::to_value(alg.to_record()), dot::algebra_to_dot(&alg, &title))
    } else if value.get("alpha").is_some() {
        let ctx = load_context(file)?;
        (serde_json::to_value(ctx.to_record()), dot::context_to_dot(&ctx, &title))
    } else if value.get("pairs").is_some() {
        let rec: dqra::RelationRecord = load_json(file)?;
        let r = rec.to_relation()?;
        (serde_json::to_value(r.to_record()), dot::relation_to_dot(&r, &title))
    } else {
        return Err(Failure::Input(format!("{}: not an algebra, context or relation", file.display())));
    };
    let text =
        if out.dot { dot } else { serde_json::to_string_pretty(&json.expect("serializable")).expect("serializable") };
    write_primary(out, &text)?;
    Ok(Value::Null)
}

fn emit_algebra(alg: &FiniteAlgebra, title: &str, out: &OutArgs) -> Outcome {
    let text = if out.dot {
        dot::algebra_to_dot(alg, title)
    } else {
        serde_json::to_string_pretty(&alg.to_record()).expect("serializable")
    };
    write_primary(out, &text)?;
    Ok(if out.out.is_some() { json!({ "size": alg.size(), "written": out.out }) } else { Value::Null })
}

fn emit_representation(
    ctx: &dqra::RepContext,
    emb: &dqra::RelEmbedding,
    title: &str,
    out: &OutArgs,
    embedding: Option<&Path>,
) -> Outcome {
    if let Some(path) = embedding {
        write_text(path, &serde_json::to_string_pretty(&emb.to_record()).expect("serializable"))?;
    }
    let summary = json!({ "points": ctx.size(), "elements": emb.source.size(), "passes": emb.passes() });
    if out.dot || out.out.is_some() {
        let text = if out.dot {
            dot::context_to_dot(ctx, title)
        } else {
            serde_json::to_string_pretty(&ctx.to_record()).expect("serializable")
        };
        write_primary(out, &text)?;
        return Ok(if out.out.is_some() { summary } else { Value::Null });
    }
    Ok(json!({ "context": ctx.to_record(), "embedding": emb.to_record(), "summary": summary }))
}

fn write_primary(out: &OutArgs, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn seed_fixtures(dir: &Path, with_dot: bool) -> Outcome {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (name, fixture) in fixtures::catalogue() {
        let mut files: Vec<(String, String)> = Vec::new();
        match fixture {
            fixtures::Fixture::Algebra(alg) => {
                files.push((format!("{name}.json"), to_pretty(&alg.to_record())));
                if with_dot {
                    files.push((format!("{name}.dot"), dot::algebra_to_dot(&alg, &name)));
                }
            }
            fixtures::Fixture::Representation(rep) => {
                let (ctx, emb) = *rep;
                files.push((format!("{name}.ctx.json"), to_pretty(&ctx.to_record())));
                files.push((format!("{name}.emb.json"), to_pretty(&emb.to_record())));
                files.push((format!("{name}.alg.json"), to_pretty(&emb.source.to_record())));
                if with_dot {
                    files.push((format!("{name}.dot"), dot::context_to_dot(&ctx, &name)));
                }
            }
            fixtures::Fixture::Poset(points) => {
                files.push((format!("{name}.json"), to_pretty(&points.leq().to_record())));
                if with_dot {
                    files.push((format!("{name}.dot"), dot::poset_to_dot(&points, &name)));
                }
            }
        }
        for (file, text) in files {
            write_text(&dir.join(&file), &text)?;
            written.push(file);
        }
    }
    Ok(json!({ "directory": dir, "files": written }))
}

fn to_pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn env_number<T: std::str::FromStr>(var: &str) -> Result<Option<T>, Failure> {
    match std::env::var(var) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| Failure::Input(format!("{var}={s:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

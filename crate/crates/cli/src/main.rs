//! `hyperalg`: runs one verification check per invocation and writes a JSON
//! report, or dumps the root-system artifacts used as golden files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperalg::rootsys::{parse_word, CartanType, Family};
use hyperalg::verify::{dump, run_check, Artifact, CheckConfig, CheckId};
use hyperalg::{Error, Result};
use serde_json::{Map, Value};

#[derive(Parser, Debug)]
#[command(name = "hyperalg", version, about = "Exact checks on the Kostant Z-form and its mod-p hyperalgebra")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Serialize a root-system artifact (rootsys, order, constants, tables).
    Dump(DumpArgs),
    /// List the available check ids.
    List,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    /// TOML or JSON file holding a check configuration; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Check id, e.g. thm4.11-basis.
    #[arg(long)]
    check: Option<String>,
    /// Family letter (`B`) or full type (`B3`).
    #[arg(long = "type")]
    cartan_type: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// Reduced word for the convex order, 1-based simple reflections, e.g. 212121.
    #[arg(long)]
    word: Option<String>,
    /// Cap on closure dimensions.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report wall_ms as 0 so reports compare byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct DumpArgs {
    artifact: String,
    #[arg(long = "type")]
    cartan_type: String,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long)]
    word: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Accepts `B` together with a rank, or `B3` on its own.
fn parse_type(s: &str, rank: Option<usize>) -> Result<CartanType> {
    let s = s.trim();
    if s.len() > 1 {
        let t: CartanType = s.parse()?;
        if let Some(n) = rank.filter(|&n| n != t.rank) {
            return Err(Error::Config(format!("--type {} conflicts with --rank {}", s, n)));
        }
        return Ok(t);
    }
    let family: Family = s.parse()?;
    let rank = rank.ok_or_else(|| Error::Config(format!("--type {} needs --rank", s)))?;
    CartanType::new(family, rank)
}

fn load_config(path: &Path) -> Result<Map<String, Value>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?;
    let is_json = path.extension().is_some_and(|x| x == "json") || text.trim_start().starts_with('{');
    let value: Value = if is_json {
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?
    } else {
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?
    };
    match value {
        Value::Object(m) => Ok(m),
        _ => Err(Error::Config(format!("{}: expected a table of settings", path.display()))),
    }
}

fn build_config(args: &RunArgs) -> Result<CheckConfig> {
    let mut m = match &args.config {
        Some(path) => load_config(path)?,
        None => Map::new(),
    };
    let mut set = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    if let Some(c) = &args.check {
        set("check", c.clone().into());
    }
    if let Some(s) = &args.cartan_type {
        let t = parse_type(s, args.rank)?;
        set("type", t.family.to_string().into());
        set("rank", t.rank.into());
    } else if let Some(n) = args.rank {
        set("rank", n.into());
    }
    if let Some(p) = args.p {
        set("p", p.into());
    }
    if let Some(r) = args.r {
        set("r", r.into());
    }
    if let Some(w) = &args.word {
        set("word", w.clone().into());
    }
    if let Some(b) = args.budget {
        set("budget", b.into());
    }
    if let Some(n) = args.samples {
        set("samples", n.into());
    }
    if let Some(s) = args.seed {
        set("seed", s.into());
    }
    if let Some(o) = &args.out {
        set("out", o.display().to_string().into());
    }
    if args.no_timing {
        set("timing", false.into());
    }
    if !m.contains_key("check") {
        return Err(Error::Config("no check given; use --check or a config file (see `hyperalg list`)".into()));
    }
    CheckConfig::from_value(Value::Object(m))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn run(args: &RunArgs) -> Result<i32> {
    let cfg = build_config(args)?;
    let report = run_check(&cfg)?;
    write_output(cfg.out.as_deref(), &report.to_json_string())?;
    let t = cfg.cartan_type()?;
    let status = match report.exit_code() {
        0 => "PASS",
        1 => "FAIL",
        _ => "BUDGET",
    };
    eprintln!("{} {} {} p={} r={} ({} ms)", status, cfg.check, t, cfg.p, cfg.r, report.wall_ms);
    if let Some(reason) = &report.reason {
        eprintln!("  {}", reason);
    }
    for a in report.failed() {
        eprintln!("  failed: {}: expected {}, got {}", a.name, a.expected, a.actual);
    }
    Ok(report.exit_code())
}

fn run_dump(args: &DumpArgs) -> Result<i32> {
    let artifact: Artifact = args.artifact.parse()?;
    let t = parse_type(&args.cartan_type, args.rank)?;
    let word = args.word.as_deref().map(parse_word).transpose()?;
    let text = dump(artifact, t, word.as_deref(), args.p, args.r)?;
    write_output(args.out.as_deref(), &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Some(Command::Dump(d)) => run_dump(d),
        Some(Command::List) => {
            for id in CheckId::ALL {
                println!("{}", id);
            }
            Ok(0)
        }
        None => run(&cli.run),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use glweight::engine::{MemoFile, MEMO_VERSION};
use glweight::perm::{enumerate, format_perm, parse_perm, EnumKind, Notation};
use glweight::poly::format_poly;
use glweight::verify::DEFAULT_SEED;
use glweight::{ClassKey, Engine, Permutation, PolyFormat, Substitution, Suite, Verifier};
use serde_json::json;

const MEMO_FILE: &str = "wgl-memo.json";

#[derive(Parser)]
#[command(name = "glw", version, about = "The gl(N) weight system on permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prints w_gl of a permutation, optionally substituted.
    Wgl {
        perm: String,
        /// Read the permutation as comma-separated images instead of cycles.
        #[arg(long)]
        one_line: bool,
        #[arg(long)]
        json: bool,
        /// prechromatic, chromatic, faces, shifted or cyclecount.
        #[arg(long, value_parser = parse_substitution)]
        substitute: Option<Substitution>,
        /// Print only the coefficient of N^j.
        #[arg(long, allow_hyphen_values = true)]
        coeff_n: Option<i32>,
    },
    /// Prints the statistics, canonical form and intersection graphs.
    Info {
        perm: String,
        #[arg(long)]
        one_line: bool,
        #[arg(long)]
        json: bool,
    },
    /// Runs a verification suite over all permutations with m <= bound.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Defaults to the suite's acceptance bound.
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Lists permutations of size m: all, positive or chord.
    Enumerate {
        #[arg(value_parser = parse_kind)]
        kind: EnumKind,
        m: usize,
        /// Print one representative per equivalence class.
        #[arg(long)]
        classes: bool,
    },
}

fn parse_substitution(s: &str) -> Result<Substitution, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: glweight::VerifyError| e.to_string())
}

fn parse_kind(s: &str) -> Result<EnumKind, String> {
    s.parse()
}

fn read_perm(text: &str, one_line: bool) -> Result<Permutation> {
    let notation = if one_line { Notation::OneLine } else { Notation::Cycles };
    parse_perm(text, notation).with_context(|| format!("cannot parse permutation `{text}`"))
}

fn memo_path() -> Option<PathBuf> {
    std::env::var_os("GLW_CACHE_DIR").map(|d| PathBuf::from(d).join(MEMO_FILE))
}

fn load_engine() -> Result<Engine> {
    let engine = Engine::new();
    if let Some(path) = memo_path().filter(|p| p.exists()) {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let file: MemoFile<_> = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if file.version == MEMO_VERSION {
            engine.import_memo(file);
        }
    }
    Ok(engine)
}

fn save_engine(engine: &Engine) -> Result<()> {
    if let Some(path) = memo_path() {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let text = serde_json::to_string(&engine.export_memo())?;
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Wgl { perm, one_line, json, substitute, coeff_n } => {
            let alpha = read_perm(&perm, one_line)?;
            let engine = load_engine()?;
            let mut p = match substitute {
                Some(rule) => engine.substitute(&alpha, rule)?,
                None => engine.wgl(&alpha)?,
            };
            if let Some(j) = coeff_n {
                p = p.coeff_in_n(j);
            }
            save_engine(&engine)?;
            let format = if json { PolyFormat::Json } else { PolyFormat::Text };
            println!("{}", format_poly(&p, format));
            Ok(true)
        }
        Command::Info { perm, one_line, json } => {
            let alpha = read_perm(&perm, one_line)?;
            print_info(&alpha, json)?;
            Ok(true)
        }
        Command::Verify { suite, m, seed } => {
            let bound = m.unwrap_or_else(|| suite.default_bound());
            let verifier = Verifier::with_engine(load_engine()?, seed);
            let report = verifier.run(suite, bound)?;
            save_engine(verifier.engine())?;
            println!("{report}");
            Ok(report.passed())
        }
        Command::Enumerate { kind, m, classes } => {
            let perms = enumerate(kind, m)?;
            if classes {
                let mut keys: Vec<ClassKey> = perms.map(|p| ClassKey::of(&p)).collect();
                keys.sort();
                keys.dedup();
                for k in keys {
                    println!("{}", k.perm());
                }
            } else {
                for p in perms {
                    println!("{p}");
                }
            }
            Ok(true)
        }
    }
}

fn print_info(alpha: &Permutation, json: bool) -> Result<()> {
    let key = ClassKey::of(alpha);
    let factors: Vec<String> = key.factors().iter().map(|f| f.perm().to_string()).collect();
    let graph = alpha.intersection_graph();
    let weighted = alpha.weighted_intersection_graph();
    if json {
        let report = json!({
            "m": alpha.len(),
            "cycles": alpha.to_string(),
            "one_line": format_perm(alpha, Notation::OneLine),
            "c": alpha.num_cycles(),
            "a": alpha.ascents(),
            "positive": alpha.is_positive(),
            "f": alpha.faces(),
            "canonical": key.perm().to_string(),
            "factors": factors,
            "intersection_graph": graph,
            "weighted_intersection_graph": weighted,
        });
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("m: {}", alpha.len());
        println!("cycles: {alpha}");
        println!("one-line: {}", format_perm(alpha, Notation::OneLine));
        println!("c: {}", alpha.num_cycles());
        println!("a: {}", alpha.ascents());
        println!("positive: {}", alpha.is_positive());
        println!("f: {}", alpha.faces());
        println!("canonical: {}", key.perm());
        println!("factors: {}", factors.join(" "));
        println!("intersection graph: {}", serde_json::to_string(&graph)?);
        println!("weighted intersection graph: {}", serde_json::to_string(&weighted)?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

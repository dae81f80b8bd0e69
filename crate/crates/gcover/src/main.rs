use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gcover::harness::{run_corpus_verification, RunOptions};
use gcover::io::{load_group, save_group};
use gcover::replay::replay_file;
use gcover::report::{emit_report, Format};
use gcover::{Error, Result};
use gcover_core::classify::{classification_precondition, classify_frattini_quotient};
use gcover_core::cover::{set_witness_cap, sigma_with_cap, Sigma};
use gcover_core::lattice::{frattini, m_count, maximal_data, set_lattice_limit};
use gcover_core::record::Outcome;
use gcover_core::recipe::build_recipe;

#[derive(Parser)]
#[command(name = "gcover", version, about = "Covering numbers and Frattini quotients of finite groups")]
struct Cli {
    /// Abort subgroup-lattice enumeration beyond this many subgroups
    /// (default: $GCOVER_MAX_LATTICE, else 1000000).
    #[arg(long, global = true)]
    max_lattice: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print m, σ, |Φ| and the classification of G/Φ.
    Analyze { file: PathBuf },
    /// Print σ and some minimal covers.
    Sigma {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        witnesses: usize,
    },
    /// Run every checker over the corpus, or replay counterexamples.
    Verify {
        #[arg(long, required_unless_present = "replay")]
        max_order: Option<usize>,
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Counterexample, record or report file.
        #[arg(long, conflicts_with_all = ["max_order", "theorem", "out"])]
        replay: Option<PathBuf>,
        /// Cap on enumerated minimal covers per group.
        #[arg(long)]
        witness_cap: Option<usize>,
    },
    /// Build a group from a recipe and save it as a table file.
    Construct {
        recipe: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn analyze(file: &PathBuf) -> Result<String> {
    let g = load_group(file)?;
    let mut out = format!("group: {}\norder: {}\n", g.label(), g.order());
    let p = g.structural_predicates();
    out += &format!(
        "abelian: {}\ncyclic: {}\nsoluble: {}\nnilpotent: {}\n",
        p.is_abelian, p.is_cyclic, p.is_soluble, p.is_nilpotent
    );
    if g.order() == 1 {
        return Ok(out + "m: 0\nsigma: INFINITE\n");
    }
    let sigma = gcover_core::cover::sigma_value(&g)?;
    let phi = frattini(&g)?;
    out += &format!("m: {}\n", m_count(&g)?);
    out += &format!("sigma: {}\n", sigma.map_or("INFINITE".to_string(), |s| s.to_string()));
    out += &format!("frattini_order: {}\nquotient_order: {}\n", phi.size(), g.order() / phi.size());
    match classification_precondition(&g)? {
        Some(reason) => out += &format!("classification: not applicable ({reason})\n"),
        None => {
            let tm = classify_frattini_quotient(&g)?;
            out += &format!("regime: {}\n", tm.regime.theorem_id());
            if tm.matched {
                out += &format!("case: {}\n", tm.case_id);
                if let Some(d) = tm.parameters.get("descriptor") {
                    out += &format!("quotient: {d}\n");
                }
                if tm.all_matches.len() > 1 {
                    out += &format!("also: {}\n", tm.all_matches[1..].join(", "));
                }
            } else {
                out += "case: none\n";
            }
            for d in &tm.diagnostics {
                out += &format!("note: {d}\n");
            }
        }
    }
    Ok(out)
}

fn sigma_report(file: &PathBuf, witnesses: usize) -> Result<String> {
    let g = load_group(file)?;
    let r = sigma_with_cap(&g, witnesses.max(1))?;
    let mut out = format!("sigma: {}\n", r.value);
    if r.value == Sigma::Infinite {
        return Ok(out);
    }
    let md = maximal_data(&g)?;
    for w in r.witnesses.iter().take(witnesses) {
        let orders: Vec<String> = w.iter().map(|&i| md.maximals[i].size().to_string()).collect();
        out += &format!("cover: {:?} orders [{}]\n", w, orders.join(", "));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(limit) = cli.max_lattice {
        set_lattice_limit(limit);
    }
    let stdout = &mut std::io::stdout();
    let print = |stdout: &mut std::io::Stdout, bytes: &[u8]| {
        stdout.write_all(bytes).map_err(|source| Error::Io { path: "<stdout>".into(), source })
    };
    match cli.command {
        Command::Analyze { file } => print(stdout, analyze(&file)?.as_bytes())?,
        Command::Sigma { file, witnesses } => print(stdout, sigma_report(&file, witnesses)?.as_bytes())?,
        Command::Construct { recipe, out } => {
            let g = build_recipe(&recipe)?;
            save_group(&g, &out)?;
        }
        Command::Verify { max_order, theorem, jobs, format, out, replay, witness_cap } => {
            if let Some(cap) = witness_cap {
                set_witness_cap(cap);
            }
            if let Some(path) = replay {
                let records = replay_file(&path)?;
                if records.is_empty() {
                    return Err(Error::Usage(format!("{}: no counterexample to replay", path.display())));
                }
                print(stdout, &emit_report(&records, format)?)?;
                let reproduced = records.iter().any(|r| r.outcome == Outcome::Fail);
                return Ok(if reproduced { ExitCode::from(1) } else { ExitCode::SUCCESS });
            }
            let opts = RunOptions { max_order: max_order.expect("required by clap"), theorem, jobs };
            let records = run_corpus_verification(&opts)?;
            let bytes = emit_report(&records, format)?;
            match out {
                Some(path) => std::fs::write(&path, bytes).map_err(|source| Error::Io { path: path.display().to_string(), source })?,
                None => print(stdout, &bytes)?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gcover: {e}");
            ExitCode::from(2)
        }
    }
}

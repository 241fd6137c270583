mod render;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use diagrammar::folog::{check_proof, interpret_proof, parse_proof_file, parse_sequent};
use diagrammar::games::{check_strategy, enumerate_strategies, eval_games};
use diagrammar::gameword::{encode_strategy, gameword_eval};
use diagrammar::monotone::enumerate_monotone;
use diagrammar::multirel::{encode_mrel, normal_words, normalize_word, word_eval_mrel, RuleSet};
use diagrammar::rel::{encode_rel, quotient, word_eval_rel};
use diagrammar::signature::validate_theory;
use diagrammar::verify::{self, Bounds, ModelKind};
use diagrammar::{builtin_theory, parse_term, EqTheory, Game, GameWord, MrelWord, MultiRel, Rel, Strategy, Term};

#[derive(Parser)]
#[command(name = "diagrammar", version, about = "String-diagram theories, their models and game semantics")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term, or a word with --word, in the theory's model.
    Eval {
        #[arg(short = 't', long)]
        theory: String,
        term: Option<String>,
        #[arg(long)]
        word: Option<String>,
        /// Override the model (monotone, mrel, rel, rel-cartesian, games).
        #[arg(long)]
        model: Option<String>,
    },
    /// Print the canonical word of a term or word.
    Normalize {
        #[arg(short = 't', long)]
        theory: String,
        term: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Exit 0 when two terms are equal in the model, 1 otherwise.
    Equiv {
        #[arg(short = 't', long)]
        theory: String,
        left: String,
        right: String,
        #[arg(long)]
        model: Option<String>,
    },
    /// Canonical word of a matrix (B, R) or strategy (G), inline or from a file.
    Encode {
        #[arg(short = 't', long)]
        theory: String,
        input: String,
    },
    /// Interpret a proof file as a strategy.
    Interpret {
        proof: PathBuf,
        #[arg(long)]
        sequent: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a theory (-t), a strategy file, or a proof file (with --sequent).
    Check {
        #[arg(short = 't', long)]
        theory: Option<String>,
        input: Option<String>,
        #[arg(long)]
        sequent: Option<String>,
    },
    /// List canonical words (B, R), monotone maps (M) or strategies (G) on a boundary.
    Enumerate {
        #[arg(short = 't', long)]
        theory: String,
        #[arg(long, default_value_t = 1)]
        rows: usize,
        #[arg(long, default_value_t = 1)]
        cols: usize,
        #[arg(long, default_value = "I")]
        src: String,
        #[arg(long, default_value = "I")]
        tgt: String,
        /// Largest matrix entry for B.
        #[arg(long, default_value_t = 1)]
        bound: u64,
    },
    /// Run verification suites (all when none are named).
    Verify {
        suites: Vec<String>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Size bound for the exhaustive suites: word length, game size and term size.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Draw a term (-t) or a strategy (--strategy) as ASCII, or SVG with --svg.
    Render {
        #[arg(short = 't', long)]
        theory: Option<String>,
        input: String,
        #[arg(long)]
        strategy: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Reads a file when `arg` names one, stdin for `-`, and otherwise takes
/// `arg` as inline text.
fn read_input(arg: &str) -> anyhow::Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    let p = Path::new(arg);
    if p.is_file() {
        return fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
    }
    Ok(arg.to_string())
}

fn theory(name: &str) -> anyhow::Result<EqTheory> {
    Ok(builtin_theory(name)?)
}

fn term(th: &EqTheory, text: &str) -> anyhow::Result<Term> {
    Ok(parse_term(th, text.trim())?)
}

fn model_for(theory: &str, model: Option<&str>) -> anyhow::Result<ModelKind> {
    Ok(match model {
        Some(m) => ModelKind::parse(m)?,
        None => ModelKind::for_theory(theory)?,
    })
}

fn exactly_one<'a>(term: &'a Option<String>, word: &'a Option<String>) -> anyhow::Result<(Option<&'a str>, Option<&'a str>)> {
    match (term, word) {
        (Some(_), Some(_)) | (None, None) => bail!("give exactly one of a term or --word"),
        (t, w) => Ok((t.as_deref(), w.as_deref())),
    }
}

fn rules_for(theory: &str) -> anyhow::Result<RuleSet> {
    Ok(match theory {
        "B" => RuleSet::Multi,
        "R" => RuleSet::Qualitative,
        other => bail!("words are defined for B, R and G, not {other}"),
    })
}

fn write_svg(path: &Path, svg: &str) -> anyhow::Result<()> {
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let porcelain = cli.porcelain;
    match cli.command {
        Command::Eval { theory: name, term: t, word, model } => {
            let (t, w) = exactly_one(&t, &word)?;
            if let Some(t) = t {
                let th = theory(&name)?;
                let kind = model_for(&name, model.as_deref())?;
                println!("{}", verify::eval_display(kind, &term(&th, t)?)?);
            } else if let Some(w) = w {
                match name.as_str() {
                    "G" => println!("{}", gameword_eval(&w.parse::<GameWord>()?)?),
                    "R" => println!("{}", word_eval_rel(&w.parse::<MrelWord>()?)?),
                    other => {
                        rules_for(other)?;
                        println!("{}", word_eval_mrel(&w.parse::<MrelWord>()?)?)
                    }
                }
            }
        }
        Command::Normalize { theory: name, term: t, word } => {
            let (t, w) = exactly_one(&t, &word)?;
            if name == "G" {
                let s = match (t, w) {
                    (Some(t), _) => eval_games(&term(&theory("G")?, t)?)?,
                    (_, Some(w)) => gameword_eval(&w.parse::<GameWord>()?)?,
                    _ => unreachable!(),
                };
                println!("{}", encode_strategy(&s)?);
            } else {
                let rules = rules_for(&name)?;
                let nf = match (t, w) {
                    (Some(t), _) => {
                        let v: MultiRel = diagrammar::eval(&diagrammar::multirel::MultiRelModel, &term(&theory(&name)?, t)?)?;
                        match rules {
                            RuleSet::Multi => encode_mrel(&v),
                            RuleSet::Qualitative => encode_rel(&quotient(&v)),
                        }
                    }
                    (_, Some(w)) => normalize_word(&w.parse::<MrelWord>()?, rules)?,
                    _ => unreachable!(),
                };
                println!("{nf}");
            }
        }
        Command::Equiv { theory: name, left, right, model } => {
            let th = theory(&name)?;
            let kind = model_for(&name, model.as_deref())?;
            let same = verify::equivalent(kind, &term(&th, &left)?, &term(&th, &right)?)?;
            println!("{}", if same { "equal" } else { "different" });
            return Ok(if same { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Encode { theory: name, input } => {
            let text = read_input(&input)?;
            match name.as_str() {
                "B" => println!("{}", encode_mrel(&text.trim().parse::<MultiRel>()?)),
                "R" => println!("{}", encode_rel(&text.trim().parse::<Rel>()?)),
                "G" => {
                    let s: Strategy = text.parse()?;
                    check_strategy(&s)?;
                    println!("{}", encode_strategy(&s)?)
                }
                other => bail!("encode is defined for B, R and G, not {other}"),
            }
        }
        Command::Interpret { proof, sequent, svg } => {
            let text = fs::read_to_string(&proof).with_context(|| format!("reading {}", proof.display()))?;
            let file = parse_proof_file(&text)?;
            let seq = parse_sequent(&sequent)?;
            let s = interpret_proof(&file.proof, &seq, &file.axioms)?;
            println!("{s}");
            if let Some(path) = svg {
                write_svg(&path, &render::strategy_svg(&s))?;
            }
        }
        Command::Check { theory: name, input, sequent } => return check(name, input, sequent),
        Command::Enumerate { theory: name, rows, cols, src, tgt, bound } => {
            let lines: Vec<String> = match name.as_str() {
                "M" => enumerate_monotone(rows, cols)
                    .iter()
                    .map(|f| f.image.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "))
                    .collect(),
                "B" => normal_words(rows, cols, RuleSet::Multi, bound).iter().map(|w| w.to_string()).collect(),
                "R" => normal_words(rows, cols, RuleSet::Qualitative, 1).iter().map(|w| w.to_string()).collect(),
                "G" => {
                    let (a, b) = (src.parse::<Game>()?, tgt.parse::<Game>()?);
                    enumerate_strategies(&a, &b, 64)?
                        .iter()
                        .map(|s| encode_strategy(s).map(|w| w.to_string()))
                        .collect::<diagrammar::Result<_>>()?
                }
                other => bail!("enumerate is defined for M, B, R and G, not {other}"),
            };
            if porcelain {
                println!("{}", lines.len());
            } else {
                for l in lines {
                    println!("{l}");
                }
            }
        }
        Command::Verify { suites, seed, bound } => {
            let mut b = Bounds::default();
            if let Some(n) = bound {
                b.max_word_len = n;
                b.max_game_total = n;
                b.monotone_size = n;
                b.fuzz_total = n;
            }
            let names: Vec<String> = if suites.is_empty() {
                verify::SUITE_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                suites
            };
            let mut ok = true;
            for name in &names {
                for report in verify::run_suite(name, &b, seed)? {
                    ok &= report.passed();
                    if porcelain {
                        println!("{}", report.porcelain());
                    } else {
                        println!("{report}");
                    }
                }
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Render { theory: name, input, strategy, svg } => {
            let text = read_input(&input)?;
            let (ascii, drawing) = if strategy {
                let s: Strategy = text.parse()?;
                (render::strategy_ascii(&s), render::strategy_svg(&s))
            } else {
                let Some(name) = name else { bail!("render needs -t for a term, or --strategy") };
                let t = term(&theory(&name)?, &text)?;
                (render::term_ascii(&t)?, render::term_svg(&t)?)
            };
            match svg {
                Some(path) => write_svg(&path, &drawing)?,
                None => print!("{ascii}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check(name: Option<String>, input: Option<String>, sequent: Option<String>) -> anyhow::Result<ExitCode> {
    match (name, input, sequent) {
        (_, Some(input), Some(seq)) => {
            let file = parse_proof_file(&read_input(&input)?)?;
            let seq = parse_sequent(&seq)?;
            if let Err(e) = check_proof(&file.proof, &seq, &file.axioms) {
                println!("{e}");
                return Ok(ExitCode::from(1));
            }
            println!("ok");
        }
        (None, Some(input), None) => {
            let s: Strategy = read_input(&input)?.parse()?;
            if let Err(e) = check_strategy(&s) {
                println!("{e}");
                return Ok(ExitCode::from(1));
            }
            println!("ok");
        }
        (Some(name), None, None) => {
            let th = theory(&name)?;
            print!("{th}");
            let violations = validate_theory(&th);
            for v in &violations {
                println!("violation {v}");
            }
            if !violations.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        _ => bail!("check takes -t THEORY, a strategy file, or a proof file with --sequent"),
    }
    Ok(ExitCode::SUCCESS)
}

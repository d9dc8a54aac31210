use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use codesync::automata::{determinize_minimize, flower_automaton};
use codesync::completeness::shortest_incompletable;
use codesync::encoding::{
    kraft_canonical, reduce_incompletable_to_binary, reduce_sync_to_binary, road_colored_sync_code,
    uniform_sync_encoding, ColoringSearch, LengthProfile,
};
use codesync::experiment::{run_experiment, Class, ExperimentConfig, Mode, Quantity};
use codesync::lang::{is_code, is_prefix, parse_language, FiniteLanguage, Word};
use codesync::reduction::synchronizing_pair_via_reduction;
use codesync::synchrony::{cerny_family, cerny_pair, shortest_sync_pair, sync_word_shortest, PairSearch, SyncChecker};
use codesync::{Error, Limits};

const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "codesync",
    version,
    about = "Completeness and synchronization of finite codes"
)]
struct Cli {
    /// Maximum number of distinct subsets a search may visit.
    #[arg(long, global = true, default_value_t = Limits::DEFAULT_SUBSET_CAP)]
    subset_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every property of a language.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Shortest incompletable word; exit 1 if none (within --max-len).
    Incompletable {
        file: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Shortest synchronizing pair, or check a given one; exit 1 if none.
    Syncpair {
        file: PathBuf,
        /// Exact shortest search (the default).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = Limits::DEFAULT_PAIR_BUDGET)]
        budget: u64,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        check: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Shorten a synchronizing pair of a complete code via incompletable words.
    Reduce {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        pair: Option<Vec<String>>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = Limits::DEFAULT_PAIR_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Prefix code with the given codeword lengths.
    Construct {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        radix: usize,
        /// Recolor until the code is synchronizing.
        #[arg(long)]
        sync: bool,
        #[arg(long, default_value_t = 0xC0DE)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Encode a language over d letters into two letters.
    Encode {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        target_d: usize,
        #[arg(long, value_enum, default_value_t = EncodeMode::General)]
        mode: EncodeMode,
        #[arg(long, default_value_t = 0xC0DE)]
        seed: u64,
    },
    /// The prefix code aAⁿ⁻¹ ∪ bAⁿ⁻² and its synchronization lengths.
    Cerny {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Estimate R or C over a class of small languages.
    Experiment {
        #[arg(value_parser = ["R", "C", "r", "c"])]
        quantity: String,
        #[arg(long)]
        class: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = ExperimentMode::Exhaustive)]
        mode: ExperimentMode,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only languages with maximal word length exactly n.
        #[arg(long)]
        exact_size: bool,
        /// Do not skip letter-permuted duplicates.
        #[arg(long)]
        no_canonical: bool,
        #[arg(long, default_value_t = Limits::DEFAULT_PAIR_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodeMode {
    General,
    Power2,
    Uniform,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentMode {
    Exhaustive,
    Random,
}

fn read_language(path: &Path) -> anyhow::Result<FiniteLanguage> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(parse_language(&text)?)
}

fn parse_pair(x: &FiniteLanguage, words: &[String]) -> anyhow::Result<(Word, Word)> {
    let a = x.alphabet();
    Ok((a.parse_word(&words[0])?, a.parse_word(&words[1])?))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn write_json(path: &Path, v: &serde_json::Value) -> anyhow::Result<()> {
    fs::write(path, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", path.display()))
}

fn analyze(x: &FiniteLanguage, limits: Limits, json: bool) -> anyhow::Result<u8> {
    let flower = flower_automaton(x)?;
    let code = is_code(x)?;
    let incompletable = shortest_incompletable(x, limits.subset_cap)?;
    let sync = match shortest_sync_pair(x, limits) {
        Ok(PairSearch::Found(p)) => {
            json!({ "synchronizing": true, "u": x.render(&p.u), "v": x.render(&p.v), "length": p.len() })
        }
        Ok(PairSearch::NotSynchronizing) => json!({ "synchronizing": false }),
        Err(e @ (Error::BudgetExhausted { .. } | Error::SubsetCapExceeded { .. })) => {
            json!({ "synchronizing": null, "reason": e.to_string() })
        }
        Err(e) => return Err(e.into()),
    };
    let report = json!({
        "alphabet": x.alphabet().symbols(),
        "words": x.len(),
        "size": x.size(),
        "code": code,
        "prefix": is_prefix(x),
        "complete": incompletable.is_none(),
        "shortest_incompletable": incompletable.as_ref().map(|w| x.render(w)),
        "flower_states": flower.states(),
        "unambiguous": flower.is_unambiguous(),
        "sync": sync,
    });
    if json {
        print_json(&report);
    } else {
        println!("language      {x}");
        println!("words         {}  size {}", x.len(), x.size());
        println!("code          {code}");
        println!("prefix        {}", is_prefix(x));
        match &incompletable {
            None => println!("complete      true"),
            Some(w) => println!("complete      false (incompletable {}, length {})", x.render(w), w.len()),
        }
        println!(
            "flower        {} states, unambiguous {}",
            flower.states(),
            flower.is_unambiguous()
        );
        match report["sync"]["synchronizing"].as_bool() {
            Some(true) => println!(
                "synchronizing true (u = {}, v = {}, |uv| = {})",
                report["sync"]["u"].as_str().unwrap_or_default(),
                report["sync"]["v"].as_str().unwrap_or_default(),
                report["sync"]["length"]
            ),
            Some(false) => println!("synchronizing false"),
            None => println!(
                "synchronizing unknown ({})",
                report["sync"]["reason"].as_str().unwrap_or_default()
            ),
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let base = Limits {
        subset_cap: cli.subset_cap,
        ..Limits::default()
    };
    match cli.command {
        Command::Analyze { file, json } => analyze(&read_language(&file)?, base, json),

        Command::Incompletable { file, max_len, json } => {
            let x = read_language(&file)?;
            let w = shortest_incompletable(&x, base.subset_cap)?.filter(|w| max_len.is_none_or(|m| w.len() <= m));
            if json {
                print_json(&json!({ "word": w.as_ref().map(|w| x.render(w)), "length": w.as_ref().map(|w| w.len()) }));
            } else {
                match &w {
                    Some(w) => println!("{} (length {})", x.render(w), w.len()),
                    None => println!("none"),
                }
            }
            Ok(if w.is_some() { 0 } else { EXIT_FALSE })
        }

        Command::Syncpair {
            file,
            exact: _,
            budget,
            check,
            json,
        } => {
            let x = read_language(&file)?;
            let limits = Limits {
                pair_budget: budget,
                ..base
            };
            let found = match check {
                Some(words) => {
                    let (u, v) = parse_pair(&x, &words)?;
                    SyncChecker::new(&x, limits)?.certify(&u, &v)?
                }
                None => shortest_sync_pair(&x, limits)?.found(),
            };
            if json {
                print_json(&match &found {
                    Some(p) => json!({
                        "synchronizing": true,
                        "u": x.render(&p.u),
                        "v": x.render(&p.v),
                        "length": p.len(),
                        "certified_by": p.certified_by,
                    }),
                    None => json!({ "synchronizing": false }),
                });
            } else {
                match &found {
                    Some(p) => println!("({}, {}) length {}", x.render(&p.u), x.render(&p.v), p.len()),
                    None => println!("not synchronizing"),
                }
            }
            Ok(if found.is_some() { 0 } else { EXIT_FALSE })
        }

        Command::Reduce {
            file,
            pair,
            trace,
            budget,
            json,
        } => {
            let x = read_language(&file)?;
            let pair = pair.map(|p| parse_pair(&x, &p)).transpose()?;
            let limits = Limits {
                pair_budget: budget,
                ..base
            };
            let (out, tr) = synchronizing_pair_via_reduction(&x, pair, limits)?;
            let doc = tr.to_json();
            if let Some(path) = trace {
                write_json(&path, &doc)?;
            }
            if json {
                print_json(&doc);
            } else {
                println!("input   ({}, {})", x.render(&tr.input.0), x.render(&tr.input.1));
                println!("w       ({}, {})", x.render(&tr.left.w), x.render(&tr.right.w));
                println!(
                    "output  ({}, {}) length {}",
                    x.render(&out.u),
                    x.render(&out.v),
                    out.len()
                );
                if let Some(p) = &tr.prefix_output {
                    println!("prefix  ({}, ε) length {}", x.render(&p.u), p.len());
                }
                let l = &tr.ledger;
                println!(
                    "ledger  {} ≤ 2·max({}, {}) + 2·{} − 2 = {}: {}",
                    l.final_len, l.v_left, l.v_right, tr.n, l.bound, l.holds
                );
            }
            Ok(if tr.ledger.holds { 0 } else { EXIT_FALSE })
        }

        Command::Construct {
            lengths,
            radix,
            sync,
            seed,
            json,
        } => {
            let profile = LengthProfile::new(radix, lengths)?;
            let (code, report) = if sync {
                let search = ColoringSearch {
                    seed,
                    ..ColoringSearch::default()
                };
                let (c, r) = road_colored_sync_code(&profile, search)?;
                (c, Some(r))
            } else {
                (kraft_canonical(&profile)?, None)
            };
            let words: Vec<String> = code.words().iter().map(|w| code.render(w)).collect();
            if json {
                print_json(&json!({
                    "words": words,
                    "kraft_sum": profile.kraft_sum().to_string(),
                    "gcd": profile.gcd(),
                    "coloring": report,
                }));
            } else {
                for w in words {
                    println!("{w}");
                }
            }
            Ok(0)
        }

        Command::Encode {
            file,
            target_d,
            mode,
            seed,
        } => {
            if target_d != 2 {
                bail!(Error::Precondition("only a binary target alphabet is supported".into()));
            }
            let x = read_language(&file)?;
            let search = ColoringSearch {
                seed,
                ..ColoringSearch::default()
            };
            let doc = match mode {
                EncodeMode::Uniform => uniform_sync_encoding(&x, base)?.to_json(&x),
                EncodeMode::Power2 if !x.alphabet().len().is_power_of_two() => {
                    bail!(Error::Precondition("power2 mode needs a power-of-two alphabet".into()))
                }
                EncodeMode::Power2 => {
                    let (p, t) = reduce_sync_to_binary(&x, base, search)?;
                    t.to_json(&x, &p)
                }
                EncodeMode::General => {
                    if shortest_incompletable(&x, base.subset_cap)?.is_some() {
                        let (_, t) = reduce_incompletable_to_binary(&x, base)?;
                        t.to_json(&x)
                    } else {
                        let (p, t) = reduce_sync_to_binary(&x, base, search)?;
                        t.to_json(&x, &p)
                    }
                }
            };
            print_json(&doc);
            Ok(0)
        }

        Command::Cerny { n, json } => {
            let x = cerny_family(n)?;
            let dfa = determinize_minimize(&flower_automaton(&x)?, base.subset_cap)?;
            let reset = sync_word_shortest(&dfa, base.subset_cap)?;
            let (u, v) = cerny_pair(n);
            let verified = SyncChecker::new(&x, base)?.is_sync_pair(&u, &v)?;
            if json {
                print_json(&json!({
                    "n": n,
                    "words": x.len(),
                    "dfa_states": dfa.states(),
                    "reset_word": reset.as_ref().map(|w| x.render(w)),
                    "reset_length": reset.as_ref().map(|w| w.len()),
                    "pair": { "u": x.render(&u), "v": x.render(&v) },
                    "pair_length": u.len() + v.len(),
                    "pair_verified": verified,
                }));
            } else {
                println!("X_{n}: {} words, minimal DFA with {} states", x.len(), dfa.states());
                match &reset {
                    Some(w) => println!("shortest reset word {} (length {})", x.render(w), w.len()),
                    None => println!("no reset word"),
                }
                println!("pair ({}, ε) length {}: {}", x.render(&u), u.len(), verified);
            }
            Ok(if verified { 0 } else { EXIT_FALSE })
        }

        Command::Experiment {
            quantity,
            class,
            n,
            d,
            mode,
            samples,
            seed,
            exact_size,
            no_canonical,
            budget,
            out,
            csv,
        } => {
            let quantity: Quantity = quantity.parse()?;
            let class: Class = class.parse()?;
            let mode = match mode {
                ExperimentMode::Exhaustive => Mode::Exhaustive,
                ExperimentMode::Random => Mode::Random { samples, seed },
            };
            let mut cfg = ExperimentConfig::new(quantity, class, n, d, mode);
            cfg.exact_size = exact_size;
            cfg.canonicalize = !no_canonical;
            cfg.limits = Limits {
                pair_budget: budget,
                ..base
            };
            let report = run_experiment(&cfg)?;
            let doc = serde_json::to_value(&report)?;
            match out {
                Some(path) => write_json(&path, &doc)?,
                None => print_json(&doc),
            }
            if let Some(path) = csv {
                fs::write(&path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::SubsetCapExceeded { .. } | Error::BudgetExhausted { .. } | Error::InstanceCapExceeded { .. }) => {
            EXIT_CAP
        }
        Some(Error::Precondition(_) | Error::Internal(_) | Error::InfiniteReturnSet | Error::NotCompleteDfa) => {
            EXIT_FALSE
        }
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

use std::io::Read;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand::rngs::StdRng;

use pscomp::compositions::CompositionMultiset;
use pscomp::enumerate::{reconstruct_all, reconstruct_all_parallel};
use pscomp::greedy::reconstruct_one;
use pscomp::io::{
    composition_to_json, composition_to_text, parse_composition, parse_strings, strings_to_text,
};
use pscomp::oracle::{brute_force_all, Budget, OracleError};
use pscomp::strings::{enumerate_constant_weight, BitString, ReversalClass, StringMultiset};
use pscomp::uniqueness::check_unique;

/// Reconstruct multisets of constant-weight binary strings from the
/// compositions of their prefixes and suffixes.
#[derive(Parser)]
#[command(name = "pscomp", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the composition file of a strings file (one string per line).
    Compose {
        /// Input path, or '-' for stdin.
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Output one multiset of strings compatible with a composition file.
    Reconstruct {
        input: String,
    },
    /// Output all compatible multisets, one class per block, up to reversal.
    Enumerate {
        input: String,
        /// Print only the number of classes.
        #[arg(long)]
        count_only: bool,
        /// Worker threads for the enumeration (1 = serial).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Decide unique reconstructibility up to reversal.
    /// Exits 0 when unique, 3 when not, 1 on invalid input.
    CheckUnique {
        input: String,
    },
    /// Brute-force enumeration for desk-scale inputs (exit 2 over budget).
    Oracle {
        input: String,
        #[arg(long)]
        count_only: bool,
        /// Cap on candidate multisets examined.
        #[arg(long)]
        max_candidates: Option<u128>,
    },
    /// Exhaustively compare the enumeration, the oracle, and the
    /// uniqueness check over every instance within the bounds.
    Selftest {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        h_max: usize,
    },
    /// Time the greedy reconstruction on random instances at (n,h),
    /// (2n,h) and (n,2h).
    Bench {
        #[arg(long, default_value_t = 128)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        h: usize,
        #[arg(long, default_value_t = 200)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_composition(path: &str) -> anyhow::Result<CompositionMultiset> {
    let input = read_input(path)?;
    Ok(parse_composition(&input)?)
}

fn print_classes(classes: &[ReversalClass], count_only: bool) {
    if count_only {
        println!("{}", classes.len());
        return;
    }
    for (k, class) in classes.iter().enumerate() {
        println!("class {}:", k + 1);
        print!("{}", strings_to_text(class.canonical()));
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Compose { input, format } => {
            let u = parse_strings(&read_input(&input)?)?;
            let m = CompositionMultiset::compose(&u);
            match format {
                Format::Json => println!("{}", composition_to_json(&m)),
                Format::Text => print!("{}", composition_to_text(&m)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { input } => {
            let m = read_composition(&input)?;
            let (_, strings) = reconstruct_one(&m)?;
            print!("{}", strings_to_text(&strings));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { input, count_only, jobs } => {
            let m = read_composition(&input)?;
            let classes = if jobs > 1 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .context("building thread pool")?
                    .install(|| reconstruct_all_parallel(&m))
            } else {
                reconstruct_all(&m)
            };
            print_classes(&classes, count_only);
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckUnique { input } => {
            let m = read_composition(&input)?;
            let report = check_unique(&m)?;
            if report.unique {
                println!("unique");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not unique");
                if let Some(w) = report.witness {
                    let intervals: Vec<String> =
                        w.intervals.iter().map(|iv| iv.to_string()).collect();
                    println!(
                        "witness: rows ({}, {}), intervals {}",
                        w.m1,
                        w.m2,
                        intervals.join(" ")
                    );
                    println!("second multiset with the same compositions:");
                    print!("{}", strings_to_text(&w.counterexample));
                }
                Ok(ExitCode::from(3))
            }
        }
        Command::Oracle { input, count_only, max_candidates } => {
            let m = read_composition(&input)?;
            let budget = max_candidates
                .map(|max_candidates| Budget { max_candidates })
                .unwrap_or_default();
            match brute_force_all(&m, &budget) {
                Ok(classes) => {
                    print_classes(&classes, count_only);
                    Ok(ExitCode::SUCCESS)
                }
                Err(err @ OracleError::OverBudget { .. }) => {
                    eprintln!("error: {err}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Selftest { n_max, h_max } => selftest(n_max, h_max),
        Command::Bench { n, h, reps, seed } => {
            bench(n, h, reps, seed);
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Every constant-weight multiset with the given bounds, deduplicated by
/// composition multiset; enumeration, oracle, and uniqueness check must
/// agree on all of them.
fn selftest(n_max: usize, h_max: usize) -> anyhow::Result<ExitCode> {
    let budget = Budget::default();
    let started = Instant::now();
    let mut instances = 0usize;
    let mut distinct = 0usize;
    let mut mismatches = 0usize;
    for n in 1..=n_max {
        let mut seen = std::collections::HashSet::new();
        for w in 0..=n {
            let strings = enumerate_constant_weight(n, w)?;
            let mut stack = vec![Vec::new()];
            // Combinations with repetition of size up to h_max.
            while let Some(members) = stack.pop() {
                let start = members.last().copied().unwrap_or(0);
                if !members.is_empty() {
                    instances += 1;
                    let u = StringMultiset::new(
                        members
                            .iter()
                            .map(|&i: &usize| strings[i].clone())
                            .collect(),
                    )?;
                    let m = CompositionMultiset::compose(&u);
                    if seen.insert(m.pairs()) {
                        distinct += 1;
                        let found = reconstruct_all(&m);
                        let expected = match brute_force_all(&m, &budget) {
                            Ok(classes) => classes,
                            Err(err @ OracleError::OverBudget { .. }) => {
                                eprintln!("error: {err}");
                                return Ok(ExitCode::from(2));
                            }
                        };
                        let unique = check_unique(&m)?.unique;
                        if found != expected || unique != (expected.len() == 1) {
                            mismatches += 1;
                            eprintln!("mismatch for compositions of {u}");
                        }
                    }
                }
                if members.len() < h_max {
                    for i in start..strings.len() {
                        let mut next = members.clone();
                        next.push(i);
                        stack.push(next);
                    }
                }
            }
        }
    }
    println!(
        "selftest n<={n_max} h<={h_max}: {instances} multisets, {distinct} distinct compositions, \
         {mismatches} mismatches in {:.2?}",
        started.elapsed()
    );
    if mismatches > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn random_multiset(rng: &mut StdRng, n: usize, h: usize) -> StringMultiset {
    let w = n / 2;
    let strings = (0..h)
        .map(|_| {
            let mut bits = vec![0u8; n];
            for i in rand::seq::index::sample(rng, n, w) {
                bits[i] = 1;
            }
            BitString::new(bits).expect("bits are binary")
        })
        .collect();
    StringMultiset::new(strings).expect("constant-weight by construction")
}

fn median_runtime(rng: &mut StdRng, n: usize, h: usize, reps: usize) -> Duration {
    let mut times: Vec<Duration> = (0..reps)
        .map(|_| {
            let m = CompositionMultiset::compose(&random_multiset(rng, n, h));
            let start = Instant::now();
            let out = reconstruct_one(&m);
            let elapsed = start.elapsed();
            assert!(out.is_ok());
            elapsed
        })
        .collect();
    times.sort();
    times[times.len() / 2]
}

fn bench(n: usize, h: usize, reps: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    // Warm-up.
    median_runtime(&mut rng, n, h, (reps / 10).max(1));
    let base = median_runtime(&mut rng, n, h, reps);
    let double_n = median_runtime(&mut rng, 2 * n, h, reps);
    let double_h = median_runtime(&mut rng, n, 2 * h, reps);
    println!("reconstruct median over {reps} instances:");
    println!("  (n={n}, h={h}): {base:.2?}");
    println!(
        "  (n={}, h={h}): {double_n:.2?}  growth x{:.2}",
        2 * n,
        double_n.as_secs_f64() / base.as_secs_f64()
    );
    println!(
        "  (n={n}, h={}): {double_h:.2?}  growth x{:.2}",
        2 * h,
        double_h.as_secs_f64() / base.as_secs_f64()
    );
}

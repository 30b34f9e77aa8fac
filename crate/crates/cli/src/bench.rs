use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};

use qualsolve::csp::{csp_branch_count, csp_branch_solve, csp_enumerate, gen_sparse_bincsp};
use qualsolve::generate::{gen_ia, gen_pot};
use qualsolve::ia::IaSolver;
use qualsolve::oracle::{ia_oracle, pot_oracle};
use qualsolve::pot::PotSolver;

use crate::Problem;

#[derive(clap::Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Inclusive range of sizes, e.g. `2..6`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: RangeInclusive<usize>,
    /// Width or overlap bound; domain size for csp.
    #[arg(long)]
    pub k: usize,
    /// Number of seeds per size, starting from 0.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    /// Also count solutions.
    #[arg(long)]
    pub count: bool,
    /// Compare against brute force where it fits its size cap.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub unsat_mix: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

pub struct Report {
    pub csv: String,
    pub mismatches: Vec<String>,
}

struct Row {
    n: usize,
    seed: u64,
    sat: bool,
    count: Option<String>,
    millis: f64,
    mismatch: Option<String>,
}

fn solve_one(args: &BenchArgs, n: usize, seed: u64) -> Result<Row> {
    let k = args.k;
    let mut row = Row {
        n,
        seed,
        sat: false,
        count: None,
        millis: 0.0,
        mismatch: None,
    };
    // (decision, count) from the reference, when it fits
    let reference: Option<(bool, u64)>;
    match args.problem {
        Problem::Pot => {
            let inst = gen_pot(n, k, seed, args.unsat_mix);
            let start = Instant::now();
            let mut solver = PotSolver::new(&inst, k);
            row.sat = solver.decide();
            if args.count {
                row.count = Some(solver.count().to_string());
            }
            row.millis = start.elapsed().as_secs_f64() * 1e3;
            reference = match args.verify {
                true => pot_oracle(&inst, k).ok().map(|r| (r.decision, r.count)),
                false => None,
            };
        }
        Problem::Ia => {
            let inst = gen_ia(n, k, seed, args.unsat_mix);
            let start = Instant::now();
            let mut solver = IaSolver::new(&inst, k);
            row.sat = solver.decide();
            if args.count {
                row.count = Some(solver.count().to_string());
            }
            row.millis = start.elapsed().as_secs_f64() * 1e3;
            reference = match args.verify {
                true => ia_oracle(&inst, k).ok().map(|r| (r.decision, r.count)),
                false => None,
            };
        }
        Problem::Csp => {
            let inst = gen_sparse_bincsp(k, n, seed);
            let start = Instant::now();
            row.sat = csp_branch_solve(&inst);
            if args.count {
                row.count = Some(csp_branch_count(&inst).to_string());
            }
            row.millis = start.elapsed().as_secs_f64() * 1e3;
            reference = match args.verify {
                true => csp_enumerate(&inst).ok().map(|r| (r.decision, r.count)),
                false => None,
            };
        }
    }
    if let Some((decision, count)) = reference {
        if decision != row.sat {
            row.mismatch = Some(format!(
                "{} n={n} k={k} seed={seed}: solver says {}, oracle says {}",
                args.problem.name(),
                sat_word(row.sat),
                sat_word(decision)
            ));
        } else if let Some(c) = row.count.as_ref().filter(|c| **c != count.to_string()) {
            row.mismatch = Some(format!(
                "{} n={n} k={k} seed={seed}: solver counts {c}, oracle counts {count}",
                args.problem.name()
            ));
        }
    }
    Ok(row)
}

fn sat_word(sat: bool) -> &'static str {
    if sat {
        "sat"
    } else {
        "unsat"
    }
}

pub fn run(args: &BenchArgs) -> Result<Report> {
    match args.problem {
        Problem::Pot | Problem::Ia if args.k == 0 => bail!("--k must be at least 1"),
        Problem::Csp if args.k < 2 || *args.n_range.start() == 0 => {
            bail!("csp bench needs --k (domain size) >= 2 and sizes >= 1")
        }
        _ => {}
    }
    let jobs: Vec<(usize, u64)> = args
        .n_range
        .clone()
        .flat_map(|n| (0..args.seeds).map(move |s| (n, s)))
        .collect();
    let results: Mutex<Vec<Option<Result<Row>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..args.jobs.max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(n, seed)) = jobs.get(i) else {
                    break;
                };
                let row = solve_one(args, n, seed);
                results.lock().expect("no worker panicked")[i] = Some(row);
            });
        }
    });

    let mut csv = String::from("problem,n,k,seed,result,count,millis\n");
    let mut mismatches = Vec::new();
    for row in results.into_inner().expect("no worker panicked") {
        let row = row.ok_or_else(|| anyhow!("a bench job did not run"))??;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{:.3}\n",
            args.problem.name(),
            row.n,
            args.k,
            row.seed,
            sat_word(row.sat),
            row.count.as_deref().unwrap_or(""),
            row.millis
        ));
        mismatches.extend(row.mismatch);
    }
    Ok(Report { csv, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5"), Ok(2..=5));
        assert_eq!(parse_range("3..3"), Ok(3..=3));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("5").is_err());
    }
}

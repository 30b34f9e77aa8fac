use std::io::{self, Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qualsolve::csp::{csp_branch_count, csp_branch_solve, csp_branch_witness, csp_enumerate};
use qualsolve::format::{self, Instance};
use qualsolve::ia::{IaSolver, OverlapBound};
use qualsolve::oracle::{ia_oracle, pot_oracle};
use qualsolve::order::{find_waist_decomposition, DEFAULT_WIDTH_CAP};
use qualsolve::pot::PotSolver;
use qualsolve::{csp, generate};

mod bench;

const EXIT_SAT: u8 = 0;
const EXIT_UNSAT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "qualsolve",
    version,
    about = "Exact solvers for qualitative temporal constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Pot,
    Ia,
    Csp,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Pot => "pot",
            Problem::Ia => "ia",
            Problem::Csp => "csp",
        }
    }
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Instance file, or `-` for standard input.
    file: PathBuf,
    /// Expected problem kind; the file header decides when omitted.
    #[arg(long, value_enum)]
    problem: Option<Problem>,
    /// Effective width (pot) or overlap bound (ia).
    #[arg(long)]
    k: Option<usize>,
    /// For ia: allow up to k overlaps per interval instead of fewer than k.
    #[arg(long)]
    at_most: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability and print SAT or UNSAT.
    Solve {
        #[command(flatten)]
        args: SolveArgs,
        /// Print a solution after SAT.
        #[arg(long)]
        witness: bool,
    },
    /// Count solutions and print COUNT <m>.
    Count {
        #[command(flatten)]
        args: SolveArgs,
    },
    /// Brute-force reference answer in the same output format.
    Oracle {
        #[command(flatten)]
        args: SolveArgs,
        /// Print COUNT <m> instead of SAT/UNSAT.
        #[arg(long)]
        count: bool,
    },
    /// Check a poset file for effective width at most k.
    Width {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        /// Print the decomposition found.
        #[arg(long)]
        certificate: bool,
    },
    /// Print the four CSP parameters of a csp file.
    Params { file: PathBuf },
    /// Write a seeded instance.
    Gen {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long)]
        n: usize,
        /// Width or overlap bound; domain size for csp.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Give half of the seeds an unsatisfiable core.
        #[arg(long)]
        unsat_mix: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a seeded corpus and write one CSV row per instance.
    Bench(bench::BenchArgs),
}

fn read_instance(path: &PathBuf) -> Result<Instance> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let inst = format::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some((i, j)) = inst.empty_constraint() {
        eprintln!("note: constraint on ({i}, {j}) is empty; the instance is unsatisfiable");
    }
    Ok(inst)
}

fn load(args: &SolveArgs) -> Result<Instance> {
    let inst = read_instance(&args.file)?;
    if let Some(p) = args.problem {
        if p.name() != inst.kind() {
            bail!("expected a {} instance, found {}", p.name(), inst.kind());
        }
    }
    Ok(inst)
}

fn need_k(args: &SolveArgs) -> Result<usize> {
    match args.k {
        Some(0) => bail!("--k must be at least 1"),
        Some(k) => Ok(k),
        None => bail!("--k is required for this problem"),
    }
}

fn verdict(sat: bool) -> u8 {
    println!("{}", if sat { "SAT" } else { "UNSAT" });
    if sat {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    }
}

fn count_verdict(count: impl std::fmt::Display, positive: bool) -> u8 {
    println!("COUNT {count}");
    if positive {
        EXIT_SAT
    } else {
        EXIT_UNSAT
    }
}

fn bound(args: &SolveArgs) -> OverlapBound {
    if args.at_most {
        OverlapBound::AtMost
    } else {
        OverlapBound::FewerThan
    }
}

fn solve(args: &SolveArgs, witness: bool) -> Result<u8> {
    match load(args)? {
        Instance::Pot(inst) => {
            let mut solver = PotSolver::new(&inst, need_k(args)?);
            if witness {
                let w = solver.witness();
                let code = verdict(w.is_some());
                if let Some(s) = w {
                    print!("{s}");
                }
                return Ok(code);
            }
            Ok(verdict(solver.decide()))
        }
        Instance::Ia(inst) => {
            let mut solver = IaSolver::with_bound(&inst, need_k(args)?, bound(args));
            if witness {
                let w = solver.witness();
                let code = verdict(w.is_some());
                if let Some(r) = w {
                    print!("{r}");
                }
                return Ok(code);
            }
            Ok(verdict(solver.decide()))
        }
        Instance::Csp(inst) => {
            if witness {
                let w = csp_branch_witness(&inst);
                let code = verdict(w.is_some());
                for (v, x) in w.iter().flatten().enumerate() {
                    println!("value {v} {x}");
                }
                return Ok(code);
            }
            Ok(verdict(csp_branch_solve(&inst)))
        }
        Instance::Poset(_) => bail!("poset files are checked with `width`"),
    }
}

fn count(args: &SolveArgs) -> Result<u8> {
    match load(args)? {
        Instance::Pot(inst) => {
            let c = PotSolver::new(&inst, need_k(args)?).count();
            Ok(count_verdict(c, c > 0))
        }
        Instance::Ia(inst) => {
            let c = IaSolver::with_bound(&inst, need_k(args)?, bound(args)).count();
            let positive = c.bits() > 0;
            Ok(count_verdict(c, positive))
        }
        Instance::Csp(inst) => {
            let c = csp_branch_count(&inst);
            Ok(count_verdict(c, c > 0))
        }
        Instance::Poset(_) => bail!("poset files are checked with `width`"),
    }
}

fn oracle(args: &SolveArgs, want_count: bool) -> Result<u8> {
    let (decision, count) = match load(args)? {
        Instance::Pot(inst) => {
            let r = pot_oracle(&inst, need_k(args)?)?;
            (r.decision, r.count)
        }
        Instance::Ia(inst) => {
            let k = need_k(args)?;
            let k = if args.at_most { k + 1 } else { k };
            let r = ia_oracle(&inst, k)?;
            (r.decision, r.count)
        }
        Instance::Csp(inst) => {
            let r = csp_enumerate(&inst)?;
            (r.decision, r.count)
        }
        Instance::Poset(_) => bail!("poset files are checked with `width`"),
    };
    Ok(if want_count {
        count_verdict(count, decision)
    } else {
        verdict(decision)
    })
}

fn width(file: &PathBuf, k: usize, certificate: bool) -> Result<u8> {
    if k == 0 {
        bail!("--k must be at least 1");
    }
    let Instance::Poset(p) = read_instance(file)? else {
        bail!("width expects a poset file");
    };
    match find_waist_decomposition(&p, k, DEFAULT_WIDTH_CAP)? {
        Some(d) => {
            println!("WIDTH-OK");
            if certificate {
                println!("{d:?}");
            }
            Ok(EXIT_SAT)
        }
        None => {
            println!("WIDTH-FAIL");
            Ok(EXIT_UNSAT)
        }
    }
}

fn params(file: &PathBuf) -> Result<u8> {
    let Instance::Csp(inst) = read_instance(file)? else {
        bail!("params expects a csp file");
    };
    let p = csp::params(&inst);
    println!("dom {}", p.dom);
    println!("max-arity {}", p.max_arity);
    println!("max-degree {}", p.max_degree);
    println!("max-cardinality {}", p.max_cardinality);
    Ok(EXIT_SAT)
}

pub fn generate_text(
    problem: Problem,
    n: usize,
    k: usize,
    seed: u64,
    unsat_mix: bool,
) -> Result<String> {
    Ok(match problem {
        Problem::Pot => {
            if k == 0 {
                bail!("--k must be at least 1");
            }
            format::write_pot(&generate::gen_pot(n, k, seed, unsat_mix))
        }
        Problem::Ia => {
            if k == 0 {
                bail!("--k must be at least 1");
            }
            format::write_ia(&generate::gen_ia(n, k, seed, unsat_mix))
        }
        Problem::Csp => {
            if k < 2 || n == 0 {
                bail!("csp generation needs --k (domain size) >= 2 and --n >= 1");
            }
            format::write_csp(&csp::gen_sparse_bincsp(k, n, seed))
        }
    })
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { args, witness } => solve(&args, witness),
        Command::Count { args } => count(&args),
        Command::Oracle { args, count } => oracle(&args, count),
        Command::Width {
            file,
            k,
            certificate,
        } => width(&file, k, certificate),
        Command::Params { file } => params(&file),
        Command::Gen {
            problem,
            n,
            k,
            seed,
            unsat_mix,
            out,
        } => {
            let text = generate_text(problem, n, k, seed, unsat_mix)?;
            write_out(out.as_ref(), &text)?;
            Ok(EXIT_SAT)
        }
        Command::Bench(args) => {
            let report = bench::run(&args)?;
            write_out(args.out.as_ref(), &report.csv)?;
            for m in &report.mismatches {
                eprintln!("verify mismatch: {m}");
            }
            Ok(if report.mismatches.is_empty() {
                EXIT_SAT
            } else {
                EXIT_MISMATCH
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

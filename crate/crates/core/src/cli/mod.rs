//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification failed, 2 a vertex has degree above
//! 4, 3 a component is the doubled 5-cycle, 4 bad input, usage or I/O, 5 an
//! internal invariant failed, 6 the fuzzer found failures, 7 the exact solver
//! ran out of budget.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::engine::{parse_certificate, solve_with, SolveError, SolveOptions, SolveResult};
use crate::exact::{max_induced_matching, SearchBudget};
use crate::graph::Graph;
use crate::harness::{fuzz, verify_certificate, verify_solution, FuzzConfig};
use crate::instances::{
    gen_c25, gen_cycle, gen_k33plus, gen_path, gen_random_maxdeg4, gen_tight9, RandomGraphConfig,
};
use crate::io::{format_graph, format_matching, parse_graph, parse_matching};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_MAX_DEGREE: i32 = 2;
pub const EXIT_C25: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;
pub const EXIT_FUZZ_FAILURES: i32 = 6;
pub const EXIT_BUDGET: i32 = 7;

#[derive(Debug, Parser)]
#[command(
    name = "induced-matching",
    version,
    about = "Induced matchings in graphs of maximum degree 4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    C25,
    K33plus,
    Tight9,
    Random,
    Path,
    Cycle,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a graph from one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Vertex count for random, path and cycle.
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random extra-edge attempts; defaults to 2n.
        #[arg(long)]
        extra_attempts: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute an induced matching of size at least (n - i)/9.
    Solve {
        graph: PathBuf,
        /// Write the certificate here instead of appending it as comments.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Largest component size solved exactly.
        #[arg(long, default_value_t = crate::engine::DEFAULT_EXACT_THRESHOLD)]
        threshold: usize,
        /// Write the matching here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a maximum induced matching by branch and bound.
    Exact {
        graph: PathBuf,
        /// Search node limit; 0 means unlimited.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Check a matching, and optionally its certificate, against a graph.
    Verify {
        graph: PathBuf,
        matching: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Run the engine on random graphs and cross-check the results.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cross_check_max_n: usize,
        /// Write each failing graph and its certificate here.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

type Outcome = Result<i32, Failure>;

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the tool with explicit output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Gen {
            family,
            n,
            seed,
            extra_attempts,
            out: path,
        } => {
            let g = generate(family, n, seed, extra_attempts)?;
            emit(path.as_deref(), &format_graph(&g), out)?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            graph,
            certificate,
            threshold,
            out: path,
        } => {
            let g = read_graph(&graph)?;
            let r = solve_with(
                &g,
                &SolveOptions {
                    exact_threshold: threshold,
                },
            )
            .map_err(solve_failure)?;
            let mut text = format_matching(&r.matching);
            let cert = r.certificate_text();
            match certificate {
                Some(p) => write_file(&p, &cert)?,
                None => cert
                    .lines()
                    .for_each(|l| text.push_str(&format!("# {l}\n"))),
            }
            emit(path.as_deref(), &text, out)?;
            let _ = writeln!(
                err,
                "matched {} edges on {} vertices",
                r.matching.len(),
                r.n
            );
            Ok(EXIT_OK)
        }
        Command::Exact { graph, budget } => {
            let g = read_graph(&graph)?;
            let m = max_induced_matching(&g, SearchBudget::nodes(budget)).map_err(|e| Failure {
                code: EXIT_BUDGET,
                message: e.to_string(),
            })?;
            write!(out, "# size {}\n{}", m.len(), format_matching(&m)).map_err(Failure::input)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            graph,
            matching,
            certificate,
        } => {
            let g = read_graph(&graph)?;
            let m = parse_matching(&read(&matching)?).map_err(Failure::input)?;
            let report = match certificate {
                None => verify_solution(&g, &m).map_err(Failure::input)?,
                Some(p) => {
                    let (cert, final_matching) =
                        parse_certificate(&read(&p)?).map_err(Failure::input)?;
                    let isolated = g
                        .vertices()
                        .iter()
                        .filter(|&&v| g.degree(v) == Ok(0))
                        .count();
                    let r = SolveResult {
                        matching: final_matching,
                        certificate: cert,
                        n: g.vertex_count(),
                        isolated,
                    };
                    let mut report = verify_certificate(&g, &r).map_err(Failure::input)?;
                    if r.matching != m {
                        report.certificate_ok = false;
                        report
                            .details
                            .push("certificate matching differs from the matching file".into());
                    }
                    let plain = verify_solution(&g, &m).map_err(Failure::input)?;
                    report.induced_ok &= plain.induced_ok;
                    report.bound_ok &= plain.bound_ok;
                    report
                }
            };
            let status = if report.ok() { "ok" } else { "FAILED" };
            let mut text = format!(
                "{status}\ninduced {}\nbound {}\ncertificate {}\n",
                report.induced_ok, report.bound_ok, report.certificate_ok
            );
            for d in &report.details {
                text.push_str(&format!("# {d}\n"));
            }
            out.write_all(text.as_bytes()).map_err(Failure::input)?;
            Ok(if report.ok() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Fuzz {
            trials,
            nmin,
            nmax,
            seed,
            cross_check_max_n,
            dump_dir,
        } => {
            let mut cfg = FuzzConfig::new(trials, nmin, nmax, seed);
            cfg.cross_check_max_n = cross_check_max_n;
            cfg.validate().map_err(Failure::input)?;
            let t0 = Instant::now();
            let report = fuzz(&cfg);
            out.write_all(report.summary().as_bytes())
                .map_err(Failure::input)?;
            let _ = writeln!(
                err,
                "elapsed {:.3}s, slowest instance {:.3}s",
                t0.elapsed().as_secs_f64(),
                report.max_runtime_per_instance.as_secs_f64()
            );
            if let Some(dir) = dump_dir {
                fs::create_dir_all(&dir).map_err(Failure::input)?;
                for (k, f) in report.failures.iter().enumerate() {
                    let seed = f.seed.map_or("-".to_string(), |s| s.to_string());
                    let text = format!("# seed {seed}\n# {}\n{}", f.kind, f.graph);
                    write_file(&dir.join(format!("failure-{k}.txt")), &text)?;
                    if let Some(c) = &f.certificate {
                        write_file(&dir.join(format!("failure-{k}.cert")), c)?;
                    }
                }
            }
            Ok(if report.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FUZZ_FAILURES
            })
        }
    }
}

fn generate(family: Family, n: usize, seed: u64, extra: Option<usize>) -> Result<Graph, Failure> {
    let need_vertex = |min: usize| {
        if n < min {
            Err(Failure::input(format!(
                "--n must be at least {min} for this family"
            )))
        } else {
            Ok(())
        }
    };
    Ok(match family {
        Family::C25 => gen_c25(),
        Family::K33plus => gen_k33plus(),
        Family::Tight9 => gen_tight9(),
        Family::Path => {
            need_vertex(1)?;
            gen_path(n)
        }
        Family::Cycle => {
            need_vertex(3)?;
            gen_cycle(n)
        }
        Family::Random => {
            need_vertex(1)?;
            let mut cfg = RandomGraphConfig::with_default_attempts(n, seed);
            if let Some(a) = extra {
                cfg.extra_edge_attempts = a;
            }
            gen_random_maxdeg4(&cfg)
        }
    })
}

fn solve_failure(e: SolveError) -> Failure {
    let code = match &e {
        SolveError::MaxDegreeExceeded { .. } => EXIT_MAX_DEGREE,
        SolveError::IsC25Component(_) => EXIT_C25,
        SolveError::InternalInvariantViolation(_) => EXIT_INVARIANT,
    };
    let mut message = e.to_string();
    if let SolveError::InternalInvariantViolation(v) = &e {
        message.push_str("\noffending component:\n");
        message.push_str(&v.graph);
    }
    Failure { code, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text),
        None => out.write_all(text.as_bytes()).map_err(Failure::input),
    }
}

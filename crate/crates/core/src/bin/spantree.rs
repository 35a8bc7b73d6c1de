use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use spantree::exact::{char_poly_exact, descartes_positivity_check};
use spantree::families::{
    self, expansion::expansion_values, build_a25, build_a9, claimed_a25_char_poly,
    claimed_a9_char_poly, offset_point, p10, Family, FamilyReport,
};
use spantree::graph::{Graph, VertexPartition};
use spantree::randgen::{theorem_check, CheckStatus};
use spantree::report::{analyze, quotient_report};
use spantree::Error;

/// Spanning-tree packing, spectra and edge connectivity of graphs.
#[derive(Parser, Debug)]
#[command(name = "spantree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one edge-list file.
    Analyze {
        graph: PathBuf,
        /// Also write the report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the tree-packing certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Write a member of an extremal family as an edge list.
    Construct {
        family: Family,
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every claim about a family over a range of degrees.
    VerifyFamily {
        family: Family,
        #[arg(long)]
        d_min: usize,
        #[arg(long)]
        d_max: usize,
        /// Extra degree range `LO..HI` (inclusive) for the graph-free exact
        /// checks: characteristic polynomial identity and, for Hd, the
        /// derivative positivity sweep.
        #[arg(long, value_parser = parse_range)]
        exact_range: Option<(usize, usize)>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Random d-regular graphs against `λ₂ < d - (2k-1)/(d+1) ⇒ σ ≥ k`.
    Hunt {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for counterexample graphs and their JSON sidecars.
        #[arg(long, default_value = "hunt-findings")]
        out_dir: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Quotient matrix of a partition, with equitability and interlacing.
    Quotient {
        graph: PathBuf,
        partition: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for d-regular graphs smaller than G_d with κ′ = 2 and σ = 1.
    Proposition {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Check(String),
    Finding(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit<T: Serialize>(value: &T, json: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    let mut out = std::io::stdout().lock();
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(out, "{text}");
    if let Some(path) = json {
        fs::write(path, format!("{text}\n")).map_err(Error::from)?;
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::read_edge_list(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ExactSweep {
    d_min: usize,
    d_max: usize,
    char_poly_failures: Vec<usize>,
    positivity_failures: Vec<usize>,
}

#[derive(Serialize)]
struct FamilyRun {
    family: Family,
    reports: Vec<FamilyReport>,
    exact: Option<ExactSweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expansion: Option<Vec<families::expansion::ExpansionValue>>,
    passed: bool,
}

fn exact_sweep(family: Family, lo: usize, hi: usize) -> Result<ExactSweep, Failure> {
    let lo = lo.max(family.min_degree());
    let mut char_poly_failures = Vec::new();
    let mut positivity_failures = Vec::new();
    for d in lo..=hi {
        let ok = match family {
            Family::Gd => char_poly_exact(&build_a9(d)?)? == claimed_a9_char_poly(d),
            Family::Hd => char_poly_exact(&build_a25(d)?)? == claimed_a25_char_poly(d),
        };
        if !ok {
            char_poly_failures.push(d);
        }
        if family == Family::Hd
            && !descartes_positivity_check(&p10(d), &offset_point(d, 5, 3)).all_positive
        {
            positivity_failures.push(d);
        }
    }
    Ok(ExactSweep {
        d_min: lo,
        d_max: hi,
        char_poly_failures,
        positivity_failures,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            graph,
            json,
            certificate,
        } => {
            let g = read_graph(&graph)?;
            let (report, cert) = analyze(&g, &graph.display().to_string())?;
            if let Some(path) = certificate {
                let text = serde_json::to_string_pretty(&cert)?;
                fs::write(path, format!("{text}\n")).map_err(Error::from)?;
            }
            emit(&report, json.as_deref())?;
            if report.violates_theorem() || !report.sigma.certificate_valid {
                return Err(Failure::Check(
                    "analysis contradicts a proved implication".into(),
                ));
            }
            Ok(())
        }
        Command::Construct { family, d, output } => {
            let g = family.build(d)?;
            g.write_edge_list(&output)?;
            eprintln!(
                "wrote {family} with d = {d}: {} vertices, {} edges -> {}",
                g.vertex_count(),
                g.edge_count(),
                output.display()
            );
            Ok(())
        }
        Command::VerifyFamily {
            family,
            d_min,
            d_max,
            exact_range,
            json,
        } => {
            if d_min > d_max {
                return Err(Failure::Usage(format!("empty range {d_min}..={d_max}")));
            }
            if d_min < family.min_degree() {
                return Err(Failure::Usage(format!(
                    "{family} needs d >= {}",
                    family.min_degree()
                )));
            }
            let reports = families::verify_range(family, d_min, d_max)?;
            let exact = exact_range
                .map(|(lo, hi)| exact_sweep(family, lo, hi))
                .transpose()?;
            let expansion = (family == Family::Hd).then(|| expansion_values(6));
            let passed = reports.iter().all(|r| r.passed)
                && exact.as_ref().is_none_or(|e| {
                    e.char_poly_failures.is_empty() && e.positivity_failures.is_empty()
                });
            let run = FamilyRun {
                family,
                reports,
                exact,
                expansion,
                passed,
            };
            emit(&run, json.as_deref())?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Check(format!("{family}: some checks failed")))
            }
        }
        Command::Hunt {
            d,
            n,
            k,
            trials,
            seed,
            out_dir,
            json,
        } => {
            let report = theorem_check(d, n, k, trials, seed)?;
            if !report.counterexamples.is_empty() {
                fs::create_dir_all(&out_dir).map_err(Error::from)?;
                for c in &report.counterexamples {
                    let stem = out_dir.join(format!("d{d}-n{n}-k{k}-trial{}", c.trial));
                    fs::write(stem.with_extension("el"), &c.edge_list).map_err(Error::from)?;
                    let sidecar = serde_json::json!({
                        "d": c.d, "n": c.n, "lambda2": c.lambda2, "sigma": c.sigma, "seed": c.seed,
                    });
                    fs::write(
                        stem.with_extension("json"),
                        serde_json::to_string_pretty(&sidecar)?,
                    )
                    .map_err(Error::from)?;
                }
            }
            emit(&report, json.as_deref())?;
            match report.status {
                CheckStatus::Pass => Ok(()),
                CheckStatus::Bug => Err(Failure::Check(format!(
                    "{} counterexamples to a proved implication; see {}",
                    report.counterexamples.len(),
                    out_dir.display()
                ))),
                CheckStatus::Finding => Err(Failure::Finding(format!(
                    "FINDING: {} graphs with λ₂ below the k = {k} threshold and σ < {k}; see {}",
                    report.counterexamples.len(),
                    out_dir.display()
                ))),
            }
        }
        Command::Quotient {
            graph,
            partition,
            json,
        } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&partition).map_err(Error::from)?;
            let p = VertexPartition::parse(g.vertex_count(), &text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", partition.display())))?;
            emit(&quotient_report(&g, &p)?, json.as_deref())
        }
        Command::Proposition {
            d,
            trials,
            seed,
            json,
        } => {
            let report = families::proposition_search(d, trials, seed)?;
            emit(&report, json.as_deref())?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Check(
                    "proposition search found a counterexample".into(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Finding(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}

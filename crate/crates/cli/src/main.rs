//! `epg`: construct small finite groups, build their enhanced power graphs,
//! compute the universal-vertex subgroup K(G), and batch-verify the
//! structural characterizations over a generated catalog.
//!
//! Exit codes: 0 when every checked agreement holds, 1 when a verification
//! sweep finds a disagreement (witnesses go to stderr), 2 on usage or input
//! errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use epg_core::catalog::{self, CatalogOptions, ReportFormat};
use epg_core::constructions::{self, MatrixKind};
use epg_core::epgraph::{self, DotOptions, EpGraph, KMethod};
use epg_core::group::Group;
use epg_core::structure::{self, VerificationReport};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "epg",
    version,
    about = "Enhanced power graphs of small finite groups: K(G), diameter, and structural checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> ReportFormat {
        match f {
            FormatArg::Jsonl => ReportFormat::Jsonl,
            FormatArg::Csv => ReportFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print order, primes, center, K(G), diameter and Sylow summary for one group
    Analyze {
        /// Builtin name (C12, D8, Q16, Dic12, E8, S4, A5, SL2_3, GL2_3,
        /// GL2_3_TILDE, SL2_5, products like C3xQ8) or a group spec JSON file
        group: String,
    },
    /// Check the solvable-group characterization of K(G)'s prime divisors over the catalog
    #[command(name = "verify-a")]
    VerifyA {
        #[arg(long, default_value_t = 96)]
        max_order: usize,
        /// Write per-group records to this file
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
        format: FormatArg,
        /// Include wall-clock timings in reports (breaks byte-reproducibility)
        #[arg(long)]
        timings: bool,
    },
    /// Check the diameter-two equivalence over the catalog
    #[command(name = "verify-b")]
    VerifyB {
        #[arg(long, default_value_t = 200)]
        max_order: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
        format: FormatArg,
        #[arg(long)]
        timings: bool,
    },
    /// Export the enhanced power graph of one group as DOT
    Graph {
        group: String,
        /// Output path; stdout when omitted
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Do not style universal vertices distinctly
        #[arg(long)]
        plain: bool,
    },
    /// Generate and summarize the group catalog
    Catalog {
        #[arg(long, default_value_t = 96)]
        max_order: usize,
        /// Print one line per entry
        #[arg(long)]
        list: bool,
        #[arg(long)]
        no_families: bool,
        #[arg(long)]
        no_products: bool,
        #[arg(long)]
        no_matrix_groups: bool,
        #[arg(long)]
        no_dedupe: bool,
    },
    /// Tabulate diameter-two against a nontrivial center over groups with three prime divisors
    #[command(name = "scan-open-question")]
    ScanOpenQuestion {
        #[arg(long, default_value_t = 200)]
        max_order: usize,
    },
    /// Run the full acceptance suite
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze { group } => {
            let g = resolve_group(&group)?;
            analyze(&g);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyA {
            max_order,
            report,
            format,
            timings,
        } => verify(max_order, report, format, timings, SweepKind::KCharacterization),
        Command::VerifyB {
            max_order,
            report,
            format,
            timings,
        } => verify(max_order, report, format, timings, SweepKind::DiameterEquivalence),
        Command::Graph { group, dot, plain } => {
            let g = resolve_group(&group)?;
            let graph = EpGraph::build(&g)
                .map_err(|e| anyhow!("cannot build the graph of {}: {e}", g.name()))?;
            let options = DotOptions {
                highlight_universal: !plain,
            };
            let text = epgraph::export_dot(&graph, &g, &options);
            match dot {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print_text(&text),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog {
            max_order,
            list,
            no_families,
            no_products,
            no_matrix_groups,
            no_dedupe,
        } => {
            let options = CatalogOptions {
                families: !no_families,
                products: !no_products,
                matrix_groups: !no_matrix_groups,
                dedupe: !no_dedupe,
            };
            let entries = catalog::generate_catalog(max_order, &options)?;
            println!("catalog: {} entries with order <= {max_order}", entries.len());
            if list {
                print_lines(entries.iter().map(|e| {
                    format!("{}\t{}\t{}", e.group.order(), e.group.name(), e.provenance)
                }));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ScanOpenQuestion { max_order } => {
            let entries = catalog::generate_catalog(max_order, &CatalogOptions::default())?;
            let groups: Vec<&Group> = entries.iter().map(|e| &e.group).collect();
            let rows = structure::open_question_scan(groups);
            println!("order\tname\tdiameter\t|Z|\tdiam=2\t|Z|>1\tagree");
            print_lines(rows.iter().map(|row| {
                format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    row.order,
                    row.name,
                    row.diameter,
                    row.center_order,
                    row.diameter_is_two,
                    row.center_nontrivial,
                    row.agrees
                )
            }));
            let findings: Vec<_> = rows.iter().filter(|r| !r.agrees).collect();
            println!(
                "scanned {} groups with exactly three prime divisors; {} disagreement(s)",
                rows.len(),
                findings.len()
            );
            for f in &findings {
                println!(
                    "candidate counterexample: {} (order {}, diameter {}, |Z| = {})",
                    f.name, f.order, f.diameter, f.center_order
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let outcomes = epg_core::selftest::run_all();
            let mut ok = true;
            for o in &outcomes {
                println!("{}", o.line());
                ok &= o.pass;
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

enum SweepKind {
    KCharacterization,
    DiameterEquivalence,
}

fn verify(
    max_order: usize,
    report_path: Option<PathBuf>,
    format: FormatArg,
    timings: bool,
    kind: SweepKind,
) -> Result<ExitCode> {
    let entries = catalog::generate_catalog(max_order, &CatalogOptions::default())?;
    let groups: Vec<Group> = entries.iter().map(|e| e.group.clone()).collect();
    let reports = structure::verify_sweep(&groups, timings);

    let failed: Vec<&VerificationReport> = reports
        .iter()
        .filter(|r| match kind {
            SweepKind::KCharacterization => r.k_characterization_failed(),
            SweepKind::DiameterEquivalence => r.diameter_check_failed(),
        })
        .collect();

    let (label, applicable) = match kind {
        SweepKind::KCharacterization => (
            "characterization of K(G)'s prime divisors",
            reports.iter().filter(|r| r.k_characterization_applicable).count(),
        ),
        SweepKind::DiameterEquivalence => (
            "diameter-two equivalence",
            reports.iter().filter(|r| r.diameter_check.applicable).count(),
        ),
    };
    println!(
        "{label}: {} catalog groups (order <= {max_order}), {applicable} applicable, {} disagreement(s)",
        reports.len(),
        failed.len()
    );

    if let Some(path) = report_path {
        catalog::write_report(&reports, &path, format.into())?;
        println!("report written to {}", path.display());
    }

    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for r in &failed {
            eprintln!("disagreement witness: {}", serde_json::to_string(r)?);
        }
        Ok(ExitCode::from(1))
    }
}

fn analyze(g: &Group) {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "group: {}", g.name()).unwrap();
    writeln!(out, "order: {}", g.order()).unwrap();
    let primes = g.primes();
    writeln!(
        out,
        "primes: {}",
        primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    writeln!(out, "solvable: {}", yes_no(g.is_solvable())).unwrap();
    writeln!(out, "center: order {}", g.center().len()).unwrap();

    let ku = epgraph::k_subgroup(g, KMethod::Universal);
    let ki = epgraph::k_subgroup(g, KMethod::Intersection);
    writeln!(
        out,
        "K(G): order {}, members {:?}, methods agree: {}",
        ku.order,
        ku.members.to_vec(),
        yes_no(ku.members == ki.members)
    )
    .unwrap();
    match EpGraph::build(g) {
        Ok(graph) => writeln!(out, "diameter: {}", graph.diameter()).unwrap(),
        Err(_) => writeln!(out, "diameter: undefined (trivial group)").unwrap(),
    }

    for &p in &primes {
        let sylow = g.sylow(p).expect("p divides the order");
        writeln!(
            out,
            "sylow {p}: order {}, cyclic: {}, generalized quaternion: {}",
            sylow.len(),
            yes_no(g.set_is_cyclic(&sylow)),
            yes_no(g.set_is_generalized_quaternion(&sylow))
        )
        .unwrap();
    }

    let report = structure::verify_group(g);
    for c in &report.k_prime_checks {
        writeln!(
            out,
            "characterization p={}: case {}, predicted: {}, actual: {}, agrees: {}",
            c.p,
            c.case,
            yes_no(c.predicted),
            yes_no(c.actual_graph),
            yes_no(c.agrees)
        )
        .unwrap();
    }
    let d = &report.diameter_check;
    if d.applicable {
        writeln!(
            out,
            "diameter-two check: diam=2: {}, K>1: {}, structural: {}, agrees: {}",
            yes_no(d.diameter_is_two),
            yes_no(d.k_nontrivial),
            yes_no(d.structural_condition),
            yes_no(d.agrees)
        )
        .unwrap();
    } else {
        writeln!(
            out,
            "diameter-two check: skipped ({})",
            d.skip_reason.unwrap_or("not applicable")
        )
        .unwrap();
    }
    print_text(&out);
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Writes a block of prepared text, quietly tolerating a closed pipe.
fn print_text(text: &str) {
    use std::io::Write;
    std::io::stdout().write_all(text.as_bytes()).ok();
}

/// Bulk line printer that stops quietly when stdout goes away (piping into
/// `head` closes the pipe early).
fn print_lines(lines: impl Iterator<Item = String>) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}

/// Resolves a group argument: an existing file is loaded as a spec, anything
/// else parses as a builtin name, with `x`-separated parts folded into a
/// direct product.
fn resolve_group(arg: &str) -> Result<Group> {
    if Path::new(arg).is_file() {
        return catalog::read_group_file(Path::new(arg))
            .with_context(|| format!("loading group spec {arg}"));
    }
    let parts: Vec<&str> = arg.split('x').collect();
    let mut groups = parts.iter().map(|p| builtin(p));
    let first = groups
        .next()
        .ok_or_else(|| anyhow!("empty group name"))??;
    groups.try_fold(first, |acc, next| {
        Ok(constructions::direct_product(&acc, &next?)?)
    })
}

fn builtin(name: &str) -> Result<Group> {
    let parse_param = |prefix: &str| -> Result<usize> {
        name[prefix.len()..]
            .parse::<usize>()
            .map_err(|_| anyhow!("cannot parse parameter in {name:?}"))
    };
    let g = if name == "GL2_3_TILDE" {
        constructions::gl2_3_tilde()
    } else if let Some(q) = name.strip_prefix("SL2_") {
        constructions::matrix_group(MatrixKind::Sl2, q.parse()?)?
    } else if let Some(q) = name.strip_prefix("GL2_") {
        constructions::matrix_group(MatrixKind::Gl2, q.parse()?)?
    } else if name.starts_with("Dic") {
        constructions::dicyclic(parse_param("Dic")?)?
    } else if name.starts_with('C') {
        constructions::cyclic(parse_param("C")?)?
    } else if name.starts_with('D') {
        constructions::dihedral(parse_param("D")?)?
    } else if name.starts_with('Q') {
        let order = parse_param("Q")?;
        if !order.is_power_of_two() {
            bail!("Q<n> names generalized quaternion groups; {order} is not a power of two (use Dic{order})");
        }
        constructions::dicyclic(order)?
    } else if name.starts_with('E') {
        let n = parse_param("E")?;
        let factors = epg_core::arith::factorize(n);
        match factors.as_slice() {
            [(p, k)] => constructions::elementary_abelian(*p, *k)?,
            _ => bail!("E<n> needs a prime power order, got {n}"),
        }
    } else if name.starts_with('S') {
        constructions::symmetric(parse_param("S")?)?
    } else if name.starts_with('A') {
        constructions::alternating(parse_param("A")?)?
    } else {
        bail!(
            "unknown group name {name:?} (try C12, D8, Q16, Dic12, E8, S4, A5, SL2_3, GL2_3, GL2_3_TILDE, SL2_5, or a product like C3xQ8)"
        );
    };
    Ok(g)
}

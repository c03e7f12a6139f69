//! `edgereg`: regularity of powers of edge ideals from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails, 2
//! for usage and input errors, 3 when a computation exceeds its budget.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use edgereg_core::even::{
    colon_graph, colon_ideal_brute_force, colon_ideal_by_even_connections, is_even_connected,
};
use edgereg_core::graph::{
    induced_matching_number_with, is_very_well_covered_with, is_well_covered_with, vwc_labeling,
};
use edgereg_core::harness::{
    fixture_names, fixture_text, products_up_to, run_sweep, verify_colon_bound,
    verify_main_theorem, write_csv, Family, Settings, SweepConfig, VerificationRecord,
};
use edgereg_core::monomial::{edge_ideal, power_with};
use edgereg_core::regularity::{regularity_lcm_lattice_with, regularity_with};
use edgereg_core::{Budget, EdgeProduct, Error, Field, Graph, MonomialIdeal};

use output::{emit, json, write_atomic};

#[derive(Parser, Debug)]
#[command(
    name = "edgereg",
    version,
    about = "Regularity of powers of edge ideals"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "EDGEREG_THREADS")]
    threads: Option<usize>,
    /// Coefficient field for homology: `rationals` or `gf(p)`.
    #[arg(long, global = true, default_value = "rationals")]
    field: Field,
    /// Report 0 in the millis column so that sweeps are byte-reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_VERTICES")]
    max_vertices: Option<usize>,
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_RAW_GENERATORS")]
    max_raw_generators: Option<usize>,
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_HOCHSTER_VARS")]
    max_hochster_vars: Option<usize>,
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_LCM_GENERATORS")]
    max_lcm_generators: Option<usize>,
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_EXHAUSTIVE_H")]
    max_exhaustive_h: Option<usize>,
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_LATTICE_SIZE")]
    max_lattice_size: Option<usize>,
    #[arg(long, global = true, env = "EDGEREG_BUDGET_MAX_FACES")]
    max_faces: Option<usize>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let d = Budget::default();
        Budget {
            max_vertices: self.max_vertices.unwrap_or(d.max_vertices),
            max_raw_generators: self.max_raw_generators.unwrap_or(d.max_raw_generators),
            max_hochster_vars: self.max_hochster_vars.unwrap_or(d.max_hochster_vars),
            max_lcm_generators: self.max_lcm_generators.unwrap_or(d.max_lcm_generators),
            max_exhaustive_h: self.max_exhaustive_h.unwrap_or(d.max_exhaustive_h),
            max_lattice_size: self.max_lattice_size.unwrap_or(d.max_lattice_size),
            max_faces: self.max_faces.unwrap_or(d.max_faces),
        }
    }
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge-list file, or `fixture:<name>` for a shipped fixture.
    #[arg(long)]
    graph: String,
}

#[derive(Args, Debug)]
struct Out {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Induced matching number with a certificate.
    Nu {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        out: Out,
    },
    /// Well-covered and very well-covered tests; fails unless very well-covered.
    CheckVwc {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        out: Out,
    },
    /// The canonical (x_i, y_i) labeling of a very well-covered graph.
    Label {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        out: Out,
    },
    /// The colon ideal (I^{s+1} : e_1...e_s) of a product of edges.
    Colon {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated edges `u-v`, repeats allowed.
        #[arg(long)]
        product: String,
        /// Build the colon from even-connections or by brute force.
        #[arg(long, default_value = "even", value_parser = ["even", "brute-force"])]
        method: String,
        /// Print the colon graph G' as an edge list instead of the ideal.
        #[arg(long)]
        gprime: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Whether two vertices are even-connected with respect to a product.
    Even {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        product: String,
        /// The two endpoints `u,v`.
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        out: Out,
    },
    /// Regularity of I(G)^s or of an ideal file, as a JSON report.
    Reg {
        /// Edge-list file, or `fixture:<name>`.
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        graph: Option<String>,
        /// Ideal file: one monomial per line, like `x1^2*x2`.
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long, default_value_t = 1, requires = "graph")]
        power: u32,
        #[arg(long, default_value = "hochster", value_parser = ["hochster", "lcm-lattice"])]
        method: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks reg(I(G)^s) = 2s + nu(G) - 1 for s = 1..s_max.
    VerifyMain {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 2)]
        s_max: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Checks reg((I^{s+1} : e_1...e_s)) <= nu(G) + 1.
    VerifyColonBound {
        #[command(flatten)]
        graph: GraphArg,
        /// A product to check; may be repeated.
        #[arg(long, conflicts_with = "all_products")]
        product: Vec<String>,
        /// Check every product of at most this many edges.
        #[arg(long)]
        all_products: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Runs a verification sweep over a graph family.
    Sweep {
        #[arg(long)]
        family: Family,
        /// h for pool families, vertex count for whiskered and random graphs.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        s_max: u32,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// CSV output file (stdout when neither --csv nor --json is given).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON output file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Where shrunk failing instances are written.
        #[arg(long, default_value = "regressions")]
        regressions: PathBuf,
    },
    /// Lists the shipped fixtures, prints one, or writes all to a directory.
    Fixtures {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        out_dir: Option<PathBuf>,
    },
}

/// Distinguishes verification failures from errors.
struct Verdict(bool);

fn load_graph(spec: &str) -> Result<Graph> {
    let text = match spec.strip_prefix("fixture:") {
        Some(name) => fixture_text(name)
            .with_context(|| format!("unknown fixture `{name}`"))?
            .to_string(),
        None => fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?,
    };
    Graph::parse(&text).with_context(|| format!("parsing {spec}"))
}

fn text_or_json<T: Serialize>(out: &Out, text: String, value: &T) -> Result<()> {
    let body = if out.json { json(value)? } else { text };
    emit(&body, out.out.as_deref())
}

fn records_out(records: &[VerificationRecord], out: &Out) -> Result<Verdict> {
    let body = if out.json {
        json(records)?
    } else {
        let mut buf = Vec::new();
        write_csv(records, &mut buf)?;
        String::from_utf8(buf)?
    };
    emit(&body, out.out.as_deref())?;
    Ok(Verdict(records.iter().all(VerificationRecord::passed)))
}

fn pairs(v: Vec<(String, String)>) -> Vec<[String; 2]> {
    v.into_iter().map(|(a, b)| [a, b]).collect()
}

fn run(cli: Cli) -> Result<Verdict> {
    let settings = Settings {
        field: cli.global.field,
        budget: cli.global.budget.budget(),
        timings: !cli.global.no_timings,
    };
    let budget = &settings.budget;
    if let Field::Gf(p) = settings.field {
        eprintln!("warning: homology over gf({p}); regularity can depend on the characteristic");
    }
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }

    match cli.command {
        Command::Nu { graph, out } => {
            let g = load_graph(&graph.graph)?;
            let (nu, cert) = induced_matching_number_with(&g, budget)?;
            #[derive(Serialize)]
            struct Nu {
                nu: usize,
                matching: Vec<[String; 2]>,
            }
            let value = Nu {
                nu,
                matching: pairs(cert.edge_names(&g)),
            };
            text_or_json(&out, format!("{nu}\n"), &value)?;
            Ok(Verdict(true))
        }
        Command::CheckVwc { graph, out } => {
            let g = load_graph(&graph.graph)?;
            #[derive(Serialize)]
            struct Check {
                well_covered: bool,
                very_well_covered: bool,
            }
            let value = Check {
                well_covered: is_well_covered_with(&g, budget)?,
                very_well_covered: is_very_well_covered_with(&g, budget)?,
            };
            let text = format!(
                "well-covered: {}\nvery well-covered: {}\n",
                value.well_covered, value.very_well_covered
            );
            text_or_json(&out, text, &value)?;
            Ok(Verdict(value.very_well_covered))
        }
        Command::Label { graph, out } => {
            let g = load_graph(&graph.graph)?;
            let l = vwc_labeling(&g)?;
            let names = l.pair_names(&g);
            #[derive(Serialize)]
            struct Label {
                h: usize,
                pairs: Vec<[String; 2]>,
            }
            let text: String = names.iter().map(|(x, y)| format!("{x} {y}\n")).collect();
            let value = Label {
                h: l.h(),
                pairs: pairs(names),
            };
            text_or_json(&out, text, &value)?;
            Ok(Verdict(true))
        }
        Command::Colon {
            graph,
            product,
            method,
            gprime,
            out,
        } => {
            let g = load_graph(&graph.graph)?;
            let p = EdgeProduct::parse(&g, &product)?;
            let colon = if method == "even" {
                colon_ideal_by_even_connections(&p)
            } else {
                colon_ideal_brute_force(&p, budget)?
            };
            let cg = colon_graph(&p)?;
            #[derive(Serialize)]
            struct Colon {
                ideal: String,
                generators: Vec<String>,
                squarefree: bool,
                self_loops: Vec<String>,
                gprime: String,
            }
            let value = Colon {
                ideal: colon.digest(),
                generators: colon
                    .gens()
                    .iter()
                    .map(|m| m.display(colon.vars()).to_string())
                    .collect(),
                squarefree: colon.is_squarefree(),
                self_loops: cg.self_loop_names(),
                gprime: cg.gprime.digest(),
            };
            let text = if gprime {
                cg.gprime.to_text()
            } else {
                colon.to_text()
            };
            text_or_json(&out, text, &value)?;
            Ok(Verdict(true))
        }
        Command::Even {
            graph,
            product,
            pair,
            out,
        } => {
            let g = load_graph(&graph.graph)?;
            let p = EdgeProduct::parse(&g, &product)?;
            let Some((u, v)) = pair.split_once(',') else {
                bail!(Error::InvalidArgument(format!(
                    "--pair expects `u,v`, got `{pair}`"
                )));
            };
            let w = is_even_connected(&p, g.require(u.trim())?, g.require(v.trim())?);
            #[derive(Serialize)]
            struct Even {
                connected: bool,
                path: Option<Vec<String>>,
                /// Product factor used by each product step, 1-based.
                factors: Option<Vec<usize>>,
            }
            let value = Even {
                connected: w.is_some(),
                path: w.as_ref().map(|w| w.names(&g)),
                factors: w
                    .as_ref()
                    .map(|w| w.assignment.iter().map(|i| i + 1).collect()),
            };
            let text = match &value.path {
                Some(path) => format!("{}\n", path.join(",")),
                None => "not even-connected\n".to_string(),
            };
            text_or_json(&out, text, &value)?;
            Ok(Verdict(true))
        }
        Command::Reg {
            graph,
            ideal,
            power,
            method,
            out,
        } => {
            let ideal = match (graph, ideal) {
                (Some(spec), _) => {
                    if power == 0 {
                        bail!(Error::InvalidArgument("--power must be at least 1".into()));
                    }
                    power_with(&edge_ideal(&load_graph(&spec)?), power, budget)?
                }
                (None, Some(path)) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    MonomialIdeal::parse(&text)
                        .with_context(|| format!("parsing {}", path.display()))?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let report = if method == "hochster" {
                regularity_with(&ideal, settings.field, budget)?
            } else {
                regularity_lcm_lattice_with(&ideal, settings.field, budget)?
            };
            emit(&json(&report)?, out.as_deref())?;
            Ok(Verdict(true))
        }
        Command::VerifyMain { graph, s_max, out } => {
            let g = load_graph(&graph.graph)?;
            records_out(&verify_main_theorem(&g, s_max, &settings)?, &out)
        }
        Command::VerifyColonBound {
            graph,
            product,
            all_products,
            out,
        } => {
            let g = load_graph(&graph.graph)?;
            let products = match all_products {
                Some(k) => products_up_to(&g, k),
                None if product.is_empty() => {
                    bail!(Error::InvalidArgument(
                        "give --product or --all-products".into()
                    ))
                }
                None => product
                    .iter()
                    .map(|p| EdgeProduct::parse(&g, p))
                    .collect::<edgereg_core::Result<_>>()?,
            };
            records_out(&verify_colon_bound(&g, &products, &settings)?, &out)
        }
        Command::Sweep {
            family,
            size,
            s_max,
            samples,
            seed,
            csv,
            json: json_path,
            regressions,
        } => {
            let config = SweepConfig {
                family,
                size,
                s_max,
                samples,
                seed,
                settings,
            };
            let outcome = run_sweep(&config)?;
            let mut buf = Vec::new();
            write_csv(&outcome.records, &mut buf)?;
            if let Some(path) = &csv {
                write_atomic(path, &buf)?;
            }
            if let Some(path) = &json_path {
                write_atomic(path, json(&outcome.records)?.as_bytes())?;
            }
            if csv.is_none() && json_path.is_none() {
                emit(std::str::from_utf8(&buf)?, None)?;
            }
            for r in &outcome.regressions {
                let path = regressions.join(format!("{}.edges", r.statement));
                write_atomic(&path, r.text.as_bytes())?;
                eprintln!(
                    "{} failed; shrunk instance written to {}",
                    r.statement,
                    path.display()
                );
            }
            Ok(Verdict(outcome.all_pass()))
        }
        Command::Fixtures { name, out_dir } => {
            match (name, out_dir) {
                (Some(name), _) => {
                    let text = fixture_text(&name).ok_or_else(|| {
                        Error::InvalidArgument(format!("unknown fixture `{name}`"))
                    })?;
                    emit(text, None)?;
                }
                (None, Some(dir)) => {
                    for name in fixture_names() {
                        let text = fixture_text(name).expect("listed fixture");
                        write_atomic(&dir.join(format!("{name}.edges")), text.as_bytes())?;
                    }
                }
                (None, None) => {
                    let list: String = fixture_names().map(|n| format!("{n}\n")).collect();
                    emit(&list, None)?;
                }
            }
            Ok(Verdict(true))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. }) => 3,
        Some(Error::NotVeryWellCovered) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Verdict(true)) => ExitCode::SUCCESS,
        Ok(Verdict(false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

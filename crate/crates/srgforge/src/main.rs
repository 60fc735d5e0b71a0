use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use srgforge::fixture::{fixtures_from_files, format_group, read_group};
use srgforge::pipeline::{self, GraphFormat, PipelineOptions, PipelineOutput};
use srgforge::subgroup::{find_subgroup, FindOptions};
use srgforge::{graph6, omfile};
use srgforge_core::action::TransitiveAction;
use srgforge_core::graph::{
    automorphism_group, count_cliques, count_cliques_with_symmetry, find_isomorphism, Graph, Regularity, SearchBudget,
};
use srgforge_core::orbitmat::{
    collapse, column_orbit_matrix, generalized_collapse, orbit_partition, validate_orbit_matrix,
};
use srgforge_core::perm::orbits_of;

/// Strongly regular graphs from transitive group actions.
#[derive(Parser)]
#[command(name = "srgforge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search the orbital graphs of a group on the cosets of given subgroups.
    SrgSearch {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        subgroups: Vec<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a manifest: classification, collapses and golden checks.
    Run {
        #[arg(long)]
        manifest: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Test two graph6 graphs for isomorphism.
    Iso { first: PathBuf, second: PathBuf },
    /// Automorphism group order and generators of a graph6 graph.
    Aut { graph: PathBuf },
    /// Count cliques of a given size (slow for large sizes on big graphs).
    Cliques {
        graph: PathBuf,
        #[arg(long)]
        size: usize,
    },
    /// Report whether each graph in a graph6 file is strongly regular.
    CheckSrg { graph: PathBuf },
    /// Column orbit matrix of a graph under a group of its automorphisms.
    OmBuild {
        graph: PathBuf,
        /// Generators acting on the graph's vertices, in `.grp` format.
        #[arg(long)]
        generators: PathBuf,
    },
    /// Check an orbit-matrix file against its defining equations.
    OmValidate { matrix: PathBuf },
    /// Collapse a two-valued orbit matrix into SRGs.
    OmCollapse {
        matrix: PathBuf,
        /// Try every off-diagonal value as the edge value.
        #[arg(long)]
        generalized: bool,
    },
    /// Randomized subgroup search (nondeterministic across seeds).
    FindSubgroup {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        order: u128,
        /// Required rank of the coset action.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        tries: usize,
        #[arg(long, default_value_t = 2)]
        generators: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Adjacency,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 600)]
    max_degree: usize,
    /// Report JSON path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for one graph file per SRG.
    #[arg(long)]
    graphs: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Compute full automorphism groups of large graphs too.
    #[arg(long)]
    aut_large: bool,
    /// Count cliques in every graph (long-running).
    #[arg(long)]
    cliques: bool,
    #[arg(long, default_value_t = 12)]
    clique_size: usize,
    /// Search node budget per automorphism or isomorphism search.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    budget: u64,
    #[arg(long)]
    threads: Option<usize>,
}

impl RunArgs {
    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            max_degree: self.max_degree,
            budget: SearchBudget::nodes(self.budget),
            aut_large: self.aut_large,
            clique_size: self.cliques.then_some(self.clique_size),
            threads: self.threads,
        }
    }

    fn emit(&self, mut out: PipelineOutput) -> Result<ExitCode> {
        if let Some(dir) = &self.graphs {
            let format = match self.format {
                Format::Graph6 => GraphFormat::Graph6,
                Format::Adjacency => GraphFormat::Adjacency,
            };
            out.write_graphs(dir, format)?;
        }
        let json = out.report.to_json();
        match &self.out {
            Some(path) => std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?,
            None => print!("{json}"),
        }
        for row in &out.report.srgs {
            let aut = row.aut_order.map_or("-".to_string(), |o| o.to_string());
            eprintln!("{:?} {} sel {:?} |Aut| {aut}", row.params, row.subgroup, row.selection);
        }
        for c in &out.report.collapses {
            eprintln!("{}: {:?} -> {:?} {}", c.name, c.source_params, c.params, if c.ok { "ok" } else { "MISMATCH" });
        }
        if out.report.golden_ok {
            eprintln!("{} SRGs, golden expectations hold", out.report.srgs.len());
            Ok(ExitCode::SUCCESS)
        } else {
            eprintln!(
                "golden expectations FAILED: got {} SRGs, expected {:?}",
                out.report.srgs.len(),
                out.report.expected_params
            );
            Ok(ExitCode::FAILURE)
        }
    }
}

fn read_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = graph6::decode_all(&text).with_context(|| format!("decoding {}", path.display()))?;
    if graphs.is_empty() {
        bail!("{}: no graphs", path.display());
    }
    Ok(graphs)
}

fn read_graph(path: &Path) -> Result<Graph> {
    Ok(read_graphs(path)?.swap_remove(0))
}

fn read_matrix(path: &Path) -> Result<srgforge_core::orbitmat::OrbitMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    omfile::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn describe(g: &Graph) -> String {
    match g.regularity() {
        Regularity::StronglyRegular(p) => format!("strongly regular {p}"),
        Regularity::Disconnected(p) => format!("disjoint union of complete graphs {p}"),
        Regularity::RegularOnly(k) => format!("{k}-regular, not strongly regular"),
        Regularity::Trivial => "complete or empty".into(),
        Regularity::NotRegular => "not regular".into(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::SrgSearch { group, subgroups, run } => {
            let fx = fixtures_from_files(&group, &subgroups)?;
            let out = pipeline::run(&fx, &run.options())?;
            run.emit(out)
        }
        Command::Run { manifest, run } => {
            let out = pipeline::run_manifest(&manifest, &run.options())?;
            run.emit(out)
        }
        Command::Iso { first, second } => {
            let (g, h) = (read_graph(&first)?, read_graph(&second)?);
            match find_isomorphism(&g, &h, SearchBudget::default())? {
                Some(p) => println!("isomorphic via {p}"),
                None => println!("not isomorphic"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut { graph } => {
            let g = read_graph(&graph)?;
            let aut = automorphism_group(&g, SearchBudget::default())?;
            println!("order {}", aut.order);
            for p in &aut.generators {
                println!("{p}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cliques { graph, size } => {
            let g = read_graph(&graph)?;
            let count = if g.is_regular().is_some() && size > 2 {
                let aut = automorphism_group(&g, SearchBudget::default())?;
                count_cliques_with_symmetry(&g, size, &orbits_of(&aut.generators, g.order()))
            } else {
                count_cliques(&g, size)
            };
            println!("{count}");
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckSrg { graph } => {
            let graphs = read_graphs(&graph)?;
            let mut all = true;
            for (i, g) in graphs.iter().enumerate() {
                let srg = g.is_strongly_regular();
                all &= srg.is_some();
                println!("{}: v = {}, {}", i + 1, g.order(), describe(g));
                if let Some(p) = srg {
                    if let Err(e) = p.feasibility() {
                        println!("  feasibility: {e}");
                    }
                }
            }
            Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::OmBuild { graph, generators } => {
            let g = read_graph(&graph)?;
            let h = read_group(&generators)?;
            let part = orbit_partition(&g, h.generators())?;
            let m = column_orbit_matrix(&g, &part)?;
            print!("{}", omfile::format(&m));
            Ok(ExitCode::SUCCESS)
        }
        Command::OmValidate { matrix } => {
            let m = read_matrix(&matrix)?;
            let verdict = validate_orbit_matrix(&m);
            if verdict.is_valid() {
                println!("valid");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &verdict.violations {
                    println!("{v:?}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Command::OmCollapse { matrix, generalized } => {
            let m = read_matrix(&matrix)?;
            if generalized {
                for (w, g, p) in generalized_collapse(&m)? {
                    println!("value {w} -> {p} {}", graph6::encode(&g));
                }
            } else {
                for c in collapse(&m)? {
                    println!("x = {}, y = {} -> {} {}", c.spec.x, c.spec.y, c.params, graph6::encode(&c.graph));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FindSubgroup { group, order, rank, seed, tries, generators } => {
            let g = read_group(&group)?;
            let options = FindOptions { seed, tries, generators };
            let accept = |h: &srgforge_core::perm::PermutationGroup| match rank {
                Some(r) => TransitiveAction::on_cosets(&g, h).is_ok_and(|a| a.rank() == r),
                None => true,
            };
            let Some(h) = find_subgroup(&g, order, options, accept) else {
                bail!("no subgroup of order {order} found in {tries} tries (seed {seed})");
            };
            let comments = vec![format!("random subgroup search (seed {seed}), order {}", h.order())];
            print!("{}", format_group(h.degree(), h.generators(), &comments));
            Ok(ExitCode::SUCCESS)
        }
    }
}

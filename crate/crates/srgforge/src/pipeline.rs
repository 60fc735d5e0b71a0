//! Fixtures → coset actions → SRG classification → collapses → report.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use srgforge_core::action::TransitiveAction;
use srgforge_core::construct::{
    build_graph, srg_selections, Candidate, OrbitSelection, SearchStats, SrgClassifier, SrgFound,
};
use srgforge_core::graph::{are_isomorphic, count_cliques_with_symmetry, Graph, SearchBudget, SrgParams};
use srgforge_core::orbitmat::{collapse, column_orbit_matrix, orbit_partition};
use srgforge_core::perm::{orbits_of, DEFAULT_ELEMENT_BOUND};

use crate::fixture::{load_fixtures, Fixtures, LoadedCollapse};
use crate::graph6;
use crate::report::{CollapseRow, Report, SrgRow, Stats, SubgroupRow};

/// Largest graph whose full automorphism group is computed without `--aut-large`.
pub const DEFAULT_AUT_MAX_ORDER: usize = 110;

pub const THREADS_ENV: &str = "SRGFORGE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Fixtures,
    Action,
    Selection,
    Verify,
    Classify,
    Collapse,
    Cliques,
    Output,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Fixtures => "fixtures",
            Stage::Action => "action",
            Stage::Selection => "selection",
            Stage::Verify => "verify",
            Stage::Classify => "classify",
            Stage::Collapse => "collapse",
            Stage::Cliques => "cliques",
            Stage::Output => "output",
        };
        f.write_str(s)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("[{stage}] {context}: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub context: String,
    pub message: String,
}

fn fail(stage: Stage, context: impl Into<String>, message: impl ToString) -> PipelineError {
    PipelineError { stage, context: context.into(), message: message.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Adjacency,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "g6",
            GraphFormat::Adjacency => "adj",
        }
    }

    pub fn render(self, g: &Graph) -> String {
        match self {
            GraphFormat::Graph6 => graph6::encode(g) + "\n",
            GraphFormat::Adjacency => {
                let mut out = format!("{}\n", g.order());
                for row in g.to_matrix() {
                    out.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
                    out.push('\n');
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub max_degree: usize,
    pub budget: SearchBudget,
    /// Compute full automorphism groups of every graph, not only small ones.
    pub aut_large: bool,
    /// Count cliques of this size in every graph.
    pub clique_size: Option<usize>,
    /// Worker threads; falls back to `SRGFORGE_THREADS`, then rayon's default.
    pub threads: Option<usize>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_degree: 600,
            budget: SearchBudget::default(),
            aut_large: false,
            clique_size: None,
            threads: None,
        }
    }
}

impl PipelineOptions {
    fn aut_max_order(&self) -> usize {
        if self.aut_large {
            usize::MAX
        } else {
            DEFAULT_AUT_MAX_ORDER
        }
    }
}

/// A thread pool sized by `threads`, or by the environment.
pub fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, PipelineError> {
    let n = threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse().ok())).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| fail(Stage::Fixtures, "thread pool", e))
}

/// Pipeline results: the report plus the graphs behind its rows.
#[derive(Debug)]
pub struct PipelineOutput {
    pub report: Report,
    pub found: Vec<SrgFound>,
    pub collapses: Vec<CollapseOutcome>,
}

impl PipelineOutput {
    /// Writes one file per SRG row into `dir` and records the file names.
    pub fn write_graphs(&mut self, dir: &Path, format: GraphFormat) -> Result<(), PipelineError> {
        std::fs::create_dir_all(dir).map_err(|e| fail(Stage::Output, dir.display().to_string(), e))?;
        let stem: String = self.report.group.chars().filter(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        for (i, (row, f)) in self.report.srgs.iter_mut().zip(&self.found).enumerate() {
            let [v, k, l, m] = row.params;
            let name = format!("{stem}_{:02}_{v}_{k}_{l}_{m}.{}", i + 1, format.extension());
            let path = dir.join(&name);
            std::fs::write(&path, format.render(&f.graph))
                .map_err(|e| fail(Stage::Output, path.display().to_string(), e))?;
            row.file = Some(name);
        }
        Ok(())
    }
}

/// A collapse row together with the collapsed graph.
#[derive(Debug, Clone)]
pub struct CollapseOutcome {
    pub row: CollapseRow,
    pub graph: Graph,
}

struct SubgroupWork {
    action: TransitiveAction,
    primitive: bool,
    candidates: Vec<(Vec<usize>, SrgParams)>,
    stats: SearchStats,
}

fn analyse_subgroup(fx: &Fixtures, i: usize, max_degree: usize) -> Result<SubgroupWork, PipelineError> {
    let sub = &fx.subgroups[i];
    let name = &sub.entry.name;
    let action = TransitiveAction::on_cosets_bounded(&fx.group, &sub.group, max_degree as u128, DEFAULT_ELEMENT_BOUND)
        .map_err(|e| fail(Stage::Action, name.as_str(), e))?;
    let primitive = action.is_primitive();
    let mut stats = SearchStats::default();
    let candidates = srg_selections(&action, &mut stats);
    for (sel, params) in &candidates {
        let g = selection_graph(&action, sel).map_err(|e| fail(Stage::Selection, name.as_str(), e))?;
        let ctx = || format!("{name} {sel:?}");
        if let Some(bad) = action.generator_images().iter().position(|p| !g.is_automorphism(p)) {
            return Err(fail(Stage::Verify, ctx(), format!("generator {bad} is not an automorphism")));
        }
        if let Some(row) = (0..g.order()).find(|&r| !g.row_satisfies_srg_identity(r, params)) {
            return Err(fail(Stage::Verify, ctx(), format!("row {row} violates A² = kI + λA + μ(J − I − A)")));
        }
    }
    Ok(SubgroupWork { action, primitive, candidates, stats })
}

fn selection_graph(
    action: &TransitiveAction,
    sel: &[usize],
) -> Result<Graph, srgforge_core::construct::ConstructError> {
    build_graph(&OrbitSelection::new(action, sel)?)
}

fn stats_row(s: &SearchStats) -> Stats {
    Stats {
        selections: s.selections,
        regular_only: s.regular_only,
        disconnected: s.disconnected,
        srg_selections: s.srg_selections,
        isomorphism_tests: s.isomorphism_tests,
    }
}

/// Runs the classification for the manifest at `path`.
pub fn run_manifest(path: &Path, options: &PipelineOptions) -> Result<PipelineOutput, PipelineError> {
    let fx = load_fixtures(path).map_err(|e| fail(Stage::Fixtures, path.display().to_string(), e))?;
    run(&fx, options)
}

pub fn run(fx: &Fixtures, options: &PipelineOptions) -> Result<PipelineOutput, PipelineError> {
    let pool = thread_pool(options.threads)?;
    pool.install(|| run_in_pool(fx, options))
}

fn run_in_pool(fx: &Fixtures, options: &PipelineOptions) -> Result<PipelineOutput, PipelineError> {
    let order = fx.group.order();
    let subgroups: Vec<SubgroupRow> = fx
        .subgroups
        .iter()
        .map(|s| SubgroupRow {
            group: fx.manifest.name.clone(),
            subgroup_name: s.entry.name.clone(),
            structure: s.entry.structure.clone(),
            order: s.group.order(),
            index: (order / s.group.order()) as usize,
            rank: s.entry.rank,
            primitive: s.entry.primitive,
        })
        .collect();
    let selected: Vec<usize> = (0..fx.subgroups.len()).filter(|&i| subgroups[i].index <= options.max_degree).collect();
    let work: Vec<SubgroupWork> =
        selected.par_iter().map(|&i| analyse_subgroup(fx, i, options.max_degree)).collect::<Result<_, _>>()?;

    let mut classifier = SrgClassifier::new();
    for (&i, w) in selected.iter().zip(&work) {
        classifier.stats.absorb(&w.stats);
        let name = &fx.subgroups[i].entry.name;
        for (selection, params) in &w.candidates {
            let cand = Candidate {
                subgroup: name,
                action: &w.action,
                selection: selection.clone(),
                params: *params,
                primitive: w.primitive,
            };
            classifier
                .offer(cand, options.budget, options.aut_max_order())
                .map_err(|e| fail(Stage::Classify, format!("{name} {selection:?}"), e))?;
        }
    }
    let (found, stats) = classifier.into_sorted();

    let cliques: Vec<Option<u128>> = match options.clique_size {
        Some(size) => found
            .par_iter()
            .map(|f| Some(count_cliques_with_symmetry(&f.graph, size, &orbits_of(&f.aut_generators, f.graph.order()))))
            .collect(),
        None => vec![None; found.len()],
    };

    let srgs: Vec<SrgRow> = found
        .iter()
        .zip(cliques)
        .map(|(f, cliques)| SrgRow {
            subgroup: f.subgroup.clone(),
            index: f.index,
            rank: f.rank,
            primitive: f.primitive,
            selection: f.selection.clone(),
            params: f.params.as_array(),
            complement_params: f.complement_params.as_array(),
            fingerprint: format!("{:016x}", f.fingerprint),
            aut_order: f.aut_order,
            isomorphic_selections: f.isomorphic_selections.clone(),
            file: None,
            cliques,
        })
        .collect();

    let collapses: Vec<CollapseOutcome> = fx
        .collapses
        .par_iter()
        .filter(|c| {
            fx.subgroup(&c.entry.subgroup).is_some_and(|s| (order / s.group.order()) as usize <= options.max_degree)
        })
        .map(|c| run_collapse(fx, c, options.budget))
        .collect::<Result<_, _>>()?;

    let mut expected: Vec<[u64; 4]> =
        fx.manifest.expected_srgs.iter().copied().filter(|p| p[0] as usize <= options.max_degree).collect();
    expected.sort();
    let mut got: Vec<[u64; 4]> = srgs.iter().map(|r| r.params).collect();
    got.sort();
    let golden_ok = (fx.manifest.expected_srgs.is_empty() || got == expected) && collapses.iter().all(|c| c.row.ok);

    let report = Report {
        group: fx.manifest.name.clone(),
        order,
        max_degree: options.max_degree,
        subgroups,
        srgs,
        collapses: collapses.iter().map(|c| c.row.clone()).collect(),
        clique_size: options.clique_size,
        stats: stats_row(&stats),
        expected_params: expected,
        golden_ok,
    };
    Ok(PipelineOutput { report, found, collapses })
}

/// The first orbital graph of `subgroup` with parameters `params` or their
/// complement, built as an SRG with exactly `params`.
pub fn subgroup_graph(
    fx: &Fixtures,
    subgroup: &str,
    params: [u64; 4],
) -> Result<(TransitiveAction, Graph), PipelineError> {
    let sub = fx.subgroup(subgroup).ok_or_else(|| fail(Stage::Collapse, subgroup, "unknown subgroup"))?;
    let action = TransitiveAction::on_cosets(&fx.group, &sub.group).map_err(|e| fail(Stage::Action, subgroup, e))?;
    let mut stats = SearchStats::default();
    for (sel, p) in srg_selections(&action, &mut stats) {
        let flip = if p.as_array() == params {
            false
        } else if p.complement().as_array() == params {
            true
        } else {
            continue;
        };
        let g = selection_graph(&action, &sel).map_err(|e| fail(Stage::Selection, subgroup, e))?;
        let g = if flip { g.complement() } else { g };
        return Ok((action, g));
    }
    Err(fail(Stage::Collapse, subgroup, format!("no orbital graph with parameters {params:?}")))
}

/// Resolves `NAME` or `other.toml#NAME` relative to `fx`.
fn reference_graph(fx: &Fixtures, reference: &str, params: [u64; 4]) -> Result<Graph, PipelineError> {
    match reference.split_once('#') {
        Some((file, name)) => {
            let path: PathBuf = fx.root.join(file);
            let other = load_fixtures(&path).map_err(|e| fail(Stage::Fixtures, path.display().to_string(), e))?;
            Ok(subgroup_graph(&other, name, params)?.1)
        }
        None => Ok(subgroup_graph(fx, reference, params)?.1),
    }
}

/// Collapses the orbit matrix of one collapse fixture and checks it.
pub fn run_collapse(fx: &Fixtures, c: &LoadedCollapse, budget: SearchBudget) -> Result<CollapseOutcome, PipelineError> {
    let e = &c.entry;
    let ctx = e.name.as_str();
    let (action, g) = subgroup_graph(fx, &e.subgroup, e.params)?;
    let images: Vec<_> = c.group.generators().iter().map(|x| action.image_of(x)).collect();
    let partition = orbit_partition(&g, &images).map_err(|err| fail(Stage::Collapse, ctx, err))?;
    let m = column_orbit_matrix(&g, &partition).map_err(|err| fail(Stage::Collapse, ctx, err))?;
    let [first, second] = collapse(&m).map_err(|err| fail(Stage::Collapse, ctx, err))?;
    let chosen = if first.spec.x == e.x && first.spec.y == e.y { first } else { second };
    let params = chosen.params.as_array();
    let isomorphic = match &e.isomorphic_to {
        Some(r) => {
            let h = reference_graph(fx, r, e.expected)?;
            Some(are_isomorphic(&chosen.graph, &h, budget).map_err(|err| fail(Stage::Collapse, ctx, err))?)
        }
        None => None,
    };
    let orbit_length = m.uniform_length().unwrap_or(0);
    let ok = chosen.spec.x == e.x
        && chosen.spec.y == e.y
        && orbit_length == e.orbit_length
        && params == e.expected
        && isomorphic != Some(false);
    let row = CollapseRow {
        name: e.name.clone(),
        source: e.subgroup.clone(),
        source_params: e.params,
        orbits: m.t(),
        orbit_length,
        diagonal: chosen.spec.d,
        x: chosen.spec.x,
        y: chosen.spec.y,
        params,
        predicted: chosen.prediction.params().as_array(),
        expected: e.expected,
        isomorphic_to: e.isomorphic_to.clone(),
        isomorphic,
        ok,
    };
    Ok(CollapseOutcome { row, graph: chosen.graph })
}

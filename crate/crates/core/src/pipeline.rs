//! Build → verify → report orchestration shared by the command line tool
//! and the examples.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::analysis::{
    chromatic_analysis, chromatic_index_bracket, eulerian_verdict, hamiltonian_search, krein_check,
    planarity_verdict, validate_cycle, Budget, HamiltonOutcome, DEFAULT_BUDGET_MS, DEFAULT_EXACT_CHI_LIMIT,
    L22_HAMILTON_CYCLE,
};
use crate::bilinear::{build_hq2k, certify_isomorphism, BilinearError, BilinearGraph, MAX_HQ_VERTICES};
use crate::cliques::{
    classify_census, clique_intersections, enumerate_maximal_cliques, extract_plane, CliqueCensus, CliqueError,
    DEFAULT_MAX_CLIQUE_VERTICES,
};
use crate::construct::{
    build_l2k, build_subplane_rect, coordinatize_l2k, ConstructError, Family, ModelJson, RectangleModel,
};
use crate::formats::{from_graph6, FormatError};
use crate::geometry::{build_plane_clique_structure, build_point_clique_geometry};
use crate::incidence::{check_axioms, elementary_counts, A6Mode, IncidenceError, DEFAULT_A6_SAMPLES, DEFAULT_SEED};
use crate::linegraph::{
    build_line_graph, build_line_graph_from_coordinates, certify_srg, diameter, factorization_check, product_check,
    vertex_connectivity, ConnectivityMode, LineGraph, LineGraphError, MAX_EXACT_CONNECTIVITY,
};

/// Largest L_2^k for which the coordinatizing isomorphism search runs.
const MAX_COORDINATIZE_K: u32 = 3;

/// Search-tree cap for budgeted searches, so reports do not depend on machine speed.
pub const SEARCH_NODE_CAP: u64 = 5_000_000;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error(transparent)]
    Graph(#[from] LineGraphError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Bilinear(#[from] BilinearError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, PipelineError>;

/// A family and its parameters, as given on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    L2k { k: u32 },
    Subplane { p: u64, e: u32, k: u32 },
    /// The full plane PG(2, p^e), a trivial rectangle.
    Plane { p: u64, e: u32 },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::L2k { k } => write!(f, "l2k k={k}"),
            FamilySpec::Subplane { p, e, k } => write!(f, "subplane p={p} e={e} k={k}"),
            FamilySpec::Plane { p, e } => write!(f, "plane p={p} e={e}"),
        }
    }
}

pub fn build_model(spec: FamilySpec) -> Result<RectangleModel> {
    Ok(match spec {
        FamilySpec::L2k { k } => build_l2k(k)?,
        FamilySpec::Subplane { p, e, k } => build_subplane_rect(p, e, k)?,
        FamilySpec::Plane { p, e } => build_subplane_rect(p, e, 1)?,
    })
}

/// Serializes with object keys in sorted order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    // serde_json::Value maps are ordered by key
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn model_to_json(model: &RectangleModel) -> Result<String> {
    to_sorted_json(&ModelJson::from(model))
}

pub fn model_from_json(text: &str) -> Result<RectangleModel> {
    let j: ModelJson = serde_json::from_str(text)?;
    Ok(RectangleModel::try_from(&j)?)
}

/// A graph input: a model JSON document or a graph6 line.
pub enum GraphInput {
    Model(Box<RectangleModel>),
    Graph(LineGraph),
}

pub fn read_graph_input(text: &str) -> Result<GraphInput> {
    if text.trim_start().starts_with('{') {
        Ok(GraphInput::Model(Box::new(model_from_json(text)?)))
    } else {
        let line = text
            .lines()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| PipelineError::Input("empty graph file".into()))?;
        Ok(GraphInput::Graph(from_graph6(line)?))
    }
}

/// Order (m, n) of a graph of lines from ν = n² and the most common degree
/// r = (m+1)(n-1).
pub fn infer_order(g: &LineGraph) -> Result<(usize, usize)> {
    let nv = g.num_vertices();
    let n = (nv as f64).sqrt().round() as usize;
    if n * n != nv || n < 2 {
        return Err(PipelineError::Input(format!("{nv} vertices is not a square n^2 with n >= 2")));
    }
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..nv {
        *freq.entry(g.degree(v)).or_insert(0) += 1;
    }
    let r = freq
        .iter()
        .max_by_key(|&(d, c)| (*c, std::cmp::Reverse(*d)))
        .map(|(&d, _)| d)
        .unwrap_or(0);
    if r % (n - 1) != 0 || r / (n - 1) < 2 {
        return Err(PipelineError::Input(format!("degree {r} is not (m+1)(n-1) for n = {n}")));
    }
    Ok((r / (n - 1) - 1, n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub profile: Profile,
    pub seed: u64,
    pub a6_samples: u64,
    pub exact_chi_limit: usize,
    pub budget_ms: u64,
    /// Record wall-clock timings; off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            profile: Profile::Full,
            seed: DEFAULT_SEED,
            a6_samples: DEFAULT_A6_SAMPLES,
            exact_chi_limit: DEFAULT_EXACT_CHI_LIMIT,
            budget_ms: DEFAULT_BUDGET_MS,
            timings: false,
        }
    }
}

impl VerifyOptions {
    pub fn budget(&self) -> Budget {
        Budget::with_nodes(self.budget_ms, SEARCH_NODE_CAP)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub module: String,
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub artifacts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            artifacts: Vec::new(),
            timings_ms: None,
            passed: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        self.inputs
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn push(&mut self, module: &str, name: &str, passed: bool, detail: impl Serialize) {
        self.passed &= passed;
        self.checks.push(Check {
            module: module.to_string(),
            name: name.to_string(),
            passed,
            detail: serde_json::to_value(detail).unwrap_or(Value::Null),
        });
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        to_sorted_json(self)
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {}/{}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.module,
                c.name
            ));
        }
        s
    }
}

struct Clock {
    enabled: bool,
    marks: BTreeMap<String, u64>,
    start: Instant,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            marks: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.enabled {
            self.marks.insert(name.to_string(), self.start.elapsed().as_millis() as u64);
            self.start = Instant::now();
        }
    }

    fn finish(self, report: &mut RunReport) {
        if self.enabled {
            report.timings_ms = Some(self.marks);
        }
    }
}

/// Runs every certification on a model. `quick` covers axioms with sampled
/// A6, SRG, and census counts; `full` adds everything else.
pub fn verify_model(model: &RectangleModel, opts: &VerifyOptions) -> Result<RunReport> {
    let mut rep = RunReport::new("verify");
    let mut clock = Clock::new(opts.timings);
    let (m, n) = (model.order.m, model.order.n);
    rep.input("family", model.family);
    rep.input("order", model.order);
    rep.input("profile", opts.profile);
    rep.input("seed", opts.seed);
    let full = opts.profile == Profile::Full;

    let a6 = if full {
        A6Mode::auto(n)
    } else {
        A6Mode::Sampled {
            count: opts.a6_samples,
            seed: opts.seed,
        }
    };
    let axioms = check_axioms(&model.structure, a6);
    rep.push("incidence", "axioms", axioms.all_passed(), &axioms);
    clock.lap("axioms");

    let g = build_line_graph(model)?;
    rep.push(
        "linegraph",
        "vertex and edge count",
        g.num_vertices() == n * n && 2 * g.num_edges() == n * n * (m + 1) * (n - 1),
        json!({ "vertices": g.num_vertices(), "edges": g.num_edges() }),
    );
    srg_checks(&mut rep, &g, m, n);
    clock.lap("srg");

    let census = census_of(&g, model)?;
    rep.push(
        "cliques",
        "census",
        census.passed(),
        json!({
            "point_cliques": census.point_cliques.len(),
            "plane_cliques": census.plane_cliques.len(),
            "anomalous": census.anomalous.len(),
            "checks": census.checks,
        }),
    );
    clock.lap("census");

    if full {
        full_checks(&mut rep, model, &g, &census, opts)?;
        clock.lap("full");
    }
    clock.finish(&mut rep);
    Ok(rep)
}

fn srg_checks(rep: &mut RunReport, g: &LineGraph, m: usize, n: usize) {
    if m == n {
        rep.push(
            "linegraph",
            "complete graph",
            g.is_complete(),
            json!({ "vertices": g.num_vertices() }),
        );
        return;
    }
    match certify_srg(g, m, n) {
        Ok(cert) => rep.push("linegraph", "strongly regular", cert.is_valid(), &cert),
        Err(e) => rep.push("linegraph", "strongly regular", false, e.to_string()),
    }
}

fn census_of(g: &LineGraph, model: &RectangleModel) -> Result<CliqueCensus> {
    let cliques = enumerate_maximal_cliques(g, DEFAULT_MAX_CLIQUE_VERTICES)?;
    Ok(classify_census(g, model, &cliques)?)
}

/// Coordinates are needed for the bilinear map; L_2^k gets them by isomorphism.
fn with_coordinates(model: &RectangleModel) -> Result<Option<RectangleModel>> {
    match model.family {
        _ if model.coords.is_some() => Ok(Some(model.clone())),
        Family::L2k { k } if k <= MAX_COORDINATIZE_K => Ok(Some(coordinatize_l2k(model)?)),
        _ => Ok(None),
    }
}

fn bilinear_params(model: &RectangleModel) -> Option<(u64, u32, u32)> {
    match model.family {
        Family::L2k { k } => Some((2, 1, k)),
        Family::Subplane { p, e, k } => Some((p, e, k)),
    }
}

fn full_checks(
    rep: &mut RunReport,
    model: &RectangleModel,
    g: &LineGraph,
    census: &CliqueCensus,
    opts: &VerifyOptions,
) -> Result<()> {
    let (m, n) = (model.order.m, model.order.n);
    let nv = g.num_vertices();

    let counts = elementary_counts(&model.structure)?;
    rep.push("incidence", "elementary counts", counts.all_passed(), &counts);
    if model.coords.is_some() {
        rep.push(
            "construct",
            "coordinates match incidence",
            model.coordinates_consistent(),
            json!({}),
        );
        let g2 = build_line_graph_from_coordinates(model)?;
        rep.push("linegraph", "coordinate route agrees", &g2 == g, json!({}));
    }

    let d = diameter(g);
    let want_d = if m == n { 1 } else { 2 };
    rep.push("linegraph", "diameter", d == Some(want_d), json!({ "diameter": d, "expected": want_d }));
    let fact = factorization_check(g, model);
    rep.push("linegraph", "factorization", fact.passed, &fact);
    let mode = if nv <= MAX_EXACT_CONNECTIVITY {
        ConnectivityMode::Exact
    } else {
        ConnectivityMode::Cited
    };
    let kappa = vertex_connectivity(g, mode)?;
    let r = if m == n { nv - 1 } else { (m + 1) * (n - 1) };
    rep.push("linegraph", "vertex connectivity", kappa.value() == r, &kappa);
    if model.family == (Family::L2k { k: 2 }) {
        let parts = vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7], vec![8, 9, 12, 13], vec![10, 11, 14, 15]];
        let pc = product_check(g, 4, 4, &parts);
        let detail = json!({
            "tensor_product": pc.tensor_product,
            "product_fibres": pc.product_fibres,
            "given_partition": pc.given_partition,
        });
        rep.push("linegraph", "K4 x K4 readings", pc.tensor_product, detail);
    }

    let inter = clique_intersections(census, g, model);
    rep.push("cliques", "intersection laws", inter.passed, &inter);
    let mut bad_planes = Vec::new();
    for (i, pc) in census.plane_cliques.iter().enumerate() {
        if !extract_plane(pc, model)?.passed(m) {
            bad_planes.push(i);
        }
    }
    rep.push(
        "cliques",
        "planes",
        bad_planes.is_empty(),
        json!({ "planes": census.plane_cliques.len(), "failures": bad_planes }),
    );

    if let (Some(cm), Some((p, e, k))) = (with_coordinates(model)?, bilinear_params(model)) {
        let size = (p as u128).pow(2 * e * k);
        if size <= MAX_HQ_VERTICES as u128 {
            let h = build_hq2k(p, e, k)?;
            let cert = certify_isomorphism(g, &cm, &h)?;
            rep.push("bilinear", "isomorphism", cert.valid, &cert);
        }
    }

    if m < n {
        let pg = build_point_clique_geometry(census, nv);
        rep.push("geometry", "point-clique partial geometry", pg.passed, &pg);
    }
    let pl = build_plane_clique_structure(census, nv);
    rep.push("geometry", "plane-clique structure", pl.passed, &pl);

    analysis_checks(rep, g, m, n, model.family == (Family::L2k { k: 2 }), opts);
    Ok(())
}

fn analysis_checks(rep: &mut RunReport, g: &LineGraph, m: usize, n: usize, is_l22: bool, opts: &VerifyOptions) {
    let pl = planarity_verdict(g, m, n);
    rep.push("analysis", "planarity", pl.agrees_with_rule, &pl);
    let eu = eulerian_verdict(g, m, n);
    rep.push("analysis", "eulerian", eu.agrees, &eu);
    if is_l22 {
        let v = validate_cycle(g, &L22_HAMILTON_CYCLE);
        rep.push("analysis", "given Hamilton cycle", v.valid, &v);
    }
    let ham = hamiltonian_search(g, m, n, opts.budget());
    let ham_ok = match &ham.outcome {
        HamiltonOutcome::Found { .. } => ham.validation.as_ref().is_some_and(|v| v.valid),
        HamiltonOutcome::NoCycle => !ham.sufficient_condition,
        HamiltonOutcome::Inconclusive { .. } => true,
    };
    rep.push("analysis", "Hamilton search", ham_ok, &ham);

    let cert = (m < n).then(|| certify_srg(g, m, n).ok()).flatten();
    let chi = chromatic_analysis(g, cert.as_ref(), m, n, opts.exact_chi_limit, opts.budget());
    let chi_ok = chi.witness_proper
        && chi.exact_chromatic.is_none_or(|c| {
            c as i64 >= chi.clique_lower_bound && chi.haemers_bound.is_none_or(|h| c as i64 >= h)
        });
    rep.push("analysis", "chromatic number", chi_ok, &chi);
    let ci = chromatic_index_bracket(g, m, n, opts.budget());
    let ci_ok = ci.value.is_none_or(|v| v == ci.r || v == ci.r + 1);
    let ci_detail = json!({
        "r": ci.r,
        "bracket": ci.bracket,
        "value": ci.value,
        "search": outcome_summary(&ci.search),
        "construction": outcome_summary(&ci.construction),
        "eigenvalue_condition": ci.eigenvalue_condition,
        "size_hypothesis": ci.size_hypothesis,
    });
    rep.push("analysis", "chromatic index", ci_ok, ci_detail);
    if let Some(cert) = &cert {
        let kr = krein_check(cert);
        rep.push("analysis", "Krein conditions", kr.passed, &kr);
    }
}

fn outcome_summary(o: &crate::analysis::EdgeColoringOutcome) -> Value {
    use crate::analysis::EdgeColoringOutcome as E;
    match o {
        E::Found { colors, .. } => json!({ "kind": "found", "colors": colors }),
        other => serde_json::to_value(other).unwrap_or(Value::Null),
    }
}

/// Certifies a bare graph (e.g. read from graph6) as a graph of lines of
/// order (m, n): strong regularity, diameter, and the analysis checks.
pub fn verify_graph(g: &LineGraph, m: usize, n: usize, opts: &VerifyOptions) -> Result<RunReport> {
    let mut rep = RunReport::new("verify");
    rep.input("order", json!({ "m": m, "n": n }));
    rep.input("profile", opts.profile);
    srg_checks(&mut rep, g, m, n);
    let d = diameter(g);
    let want_d = if m == n { 1 } else { 2 };
    rep.push("linegraph", "diameter", d == Some(want_d), json!({ "diameter": d }));
    if opts.profile == Profile::Full {
        analysis_checks(&mut rep, g, m, n, false, opts);
    }
    Ok(rep)
}

/// The graph-theoretic analysis checks alone.
pub fn analyze_graph(g: &LineGraph, m: usize, n: usize, is_l22: bool, opts: &VerifyOptions) -> RunReport {
    let mut rep = RunReport::new("analyze");
    rep.input("order", json!({ "m": m, "n": n }));
    let mut clock = Clock::new(opts.timings);
    analysis_checks(&mut rep, g, m, n, is_l22, opts);
    clock.lap("analysis");
    clock.finish(&mut rep);
    rep
}

/// Builds H_q(2,k) for a model's parameters.
pub fn bilinear_for(model: &RectangleModel) -> Result<(RectangleModel, BilinearGraph)> {
    let cm = with_coordinates(model)?
        .ok_or_else(|| PipelineError::Input("model has no coordinates and cannot be coordinatized".into()))?;
    let (p, e, k) = bilinear_params(model).expect("every family has bilinear parameters");
    Ok((cm, build_hq2k(p, e, k)?))
}

/// Clique census of a model's graph of lines.
pub fn census_for(model: &RectangleModel) -> Result<(LineGraph, CliqueCensus)> {
    let g = build_line_graph(model)?;
    let c = census_of(&g, model)?;
    Ok((g, c))
}

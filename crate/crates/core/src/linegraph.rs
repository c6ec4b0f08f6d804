//! The graph of lines: vertices are ordinary lines, adjacent when they meet.
//!
//! Every edge carries a colour, the index of the special line holding the
//! common point. Strong regularity is certified by exact pair counting and,
//! independently, by the integer identity `(A - τ1 I)(A - τ2 I) = μ J`.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitRow;
use crate::construct::{common_point, ConstructError, RectangleModel};

/// Colour of an edge whose special line is unknown (e.g. read from graph6).
pub const NO_COLOR: u16 = u16::MAX;

/// Largest graph for which [`vertex_connectivity`] runs max-flow.
pub const MAX_EXACT_CONNECTIVITY: usize = 64;

/// Largest graph for which the spectral identity uses a dense matrix product.
const DENSE_PRODUCT_LIMIT: usize = 1024;

#[derive(Debug, Error)]
pub enum LineGraphError {
    #[error("ordinary lines {0} and {1} share more than one point")]
    MultipleMeet(usize, usize),
    #[error("ordinary point {0} lies on no unique special line")]
    NoSpecialLine(usize),
    #[error("graph of a trivial rectangle is complete; it has no strongly regular certificate")]
    Trivial,
    #[error("graph has {0} vertices, above the exact bound {1}")]
    TooLarge(usize, usize),
    #[error("edge ({0}, {1}) is invalid")]
    BadEdge(usize, usize),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

pub type Result<T> = std::result::Result<T, LineGraphError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    rows: Vec<BitRow>,
    /// Sorted neighbour lists with the colour of each edge.
    nbrs: Vec<Vec<(u32, u16)>>,
    color_names: Vec<String>,
}

impl LineGraph {
    /// Builds a graph from coloured edges; self-loops and duplicates are rejected.
    pub fn from_edges(
        num_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, u16)>,
        color_names: Vec<String>,
    ) -> Result<Self> {
        let mut rows = vec![BitRow::new(num_vertices); num_vertices];
        let mut nbrs = vec![Vec::new(); num_vertices];
        for (u, v, c) in edges {
            if u == v || u >= num_vertices || v >= num_vertices || rows[u].contains(v) {
                return Err(LineGraphError::BadEdge(u, v));
            }
            rows[u].insert(v);
            rows[v].insert(u);
            nbrs[u].push((v as u32, c));
            nbrs[v].push((u as u32, c));
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Ok(LineGraph {
            rows,
            nbrs,
            color_names,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn num_edges(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn row(&self, v: usize) -> &BitRow {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.nbrs[v].iter().map(|&(u, _)| u as usize)
    }

    pub fn colored_neighbors(&self, v: usize) -> &[(u32, u16)] {
        &self.nbrs[v]
    }

    pub fn color(&self, u: usize, v: usize) -> Option<u16> {
        let list = &self.nbrs[u];
        list.binary_search_by_key(&(v as u32), |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn num_colors(&self) -> usize {
        self.color_names.len()
    }

    /// Edges `(u, v, colour)` with u < v in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u16)> + '_ {
        self.nbrs.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| (v as usize) > u)
                .map(move |&(v, c)| (u, v as usize, c))
        })
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.rows[u].and_count(&self.rows[v])
    }

    pub fn is_complete(&self) -> bool {
        let n = self.num_vertices();
        (0..n).all(|v| self.degree(v) + 1 == n)
    }

    /// Copy with the edge `{u, v}` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> LineGraph {
        let edges = self
            .edges()
            .filter(|&(a, b, _)| !((a, b) == (u, v) || (a, b) == (v, u)))
            .collect::<Vec<_>>();
        LineGraph::from_edges(self.num_vertices(), edges, self.color_names.clone())
            .expect("subgraph of a simple graph is simple")
    }
}

fn color_names(model: &RectangleModel) -> Vec<String> {
    model.special.iter().map(|&(l, _)| model.special_name(l)).collect()
}

/// Graph of lines from the incidence structure: lines through a common
/// ordinary point are pairwise adjacent, coloured by that point's special line.
pub fn build_line_graph(model: &RectangleModel) -> Result<LineGraph> {
    let s = &model.structure;
    let mut vertex_of = vec![usize::MAX; s.num_lines()];
    for (v, &l) in model.ordinary.iter().enumerate() {
        vertex_of[l] = v;
    }
    let mut edges = Vec::new();
    for p in s.ordinary_points() {
        let sl = s.special_line_of(p).ok_or(LineGraphError::NoSpecialLine(p))?;
        let color = model
            .special_position(sl)
            .ok_or(LineGraphError::NoSpecialLine(p))? as u16;
        let through: Vec<usize> = s
            .lines_through(p)
            .iter()
            .map(|&l| vertex_of[l])
            .filter(|&v| v != usize::MAX)
            .collect();
        for (i, &u) in through.iter().enumerate() {
            for &v in &through[i + 1..] {
                edges.push((u.min(v), u.max(v), color));
            }
        }
    }
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
        return Err(LineGraphError::MultipleMeet(w[0].0, w[0].1));
    }
    LineGraph::from_edges(model.num_vertices(), edges, color_names(model))
}

/// Graph of lines from the closed-form common point of coordinate lines.
pub fn build_line_graph_from_coordinates(model: &RectangleModel) -> Result<LineGraph> {
    let coords = model.coords()?;
    let s = &model.structure;
    let nv = model.num_vertices();
    let lines: Vec<_> = (0..nv).map(|v| model.vertex_coeffs(v)).collect::<std::result::Result<_, _>>()?;
    let mut edges = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            if let Some(pt) = common_point(&lines[u], &lines[v], model)? {
                let p = coords.point_index(&pt).expect("common_point only returns rectangle points");
                let sl = s.special_line_of(p).ok_or(LineGraphError::NoSpecialLine(p))?;
                let color = model.special_position(sl).ok_or(LineGraphError::NoSpecialLine(p))?;
                edges.push((u, v, color as u16));
            }
        }
    }
    LineGraph::from_edges(nv, edges, color_names(model))
}

/// Parameters predicted for the graph of lines of a rectangle of order (m, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub nu: i64,
    pub r: i64,
    pub lambda: i64,
    pub mu: i64,
}

impl SrgParams {
    pub fn for_order(m: usize, n: usize) -> Self {
        let (m, n) = (m as i64, n as i64);
        SrgParams {
            nu: n * n,
            r: (m + 1) * (n - 1),
            lambda: n + (m + 1) * (m - 2),
            mu: m * (m + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SrgWitness {
    VertexCount { actual: usize },
    Degree { vertex: usize, degree: usize },
    Pair { u: usize, v: usize, adjacent: bool, common: usize, expected: i64 },
    Entry { row: usize, col: usize, actual: i64, expected: i64 },
    Multiplicity { detail: String },
}

impl SrgWitness {
    /// Re-derives the defect directly from the graph.
    pub fn recheck(&self, g: &LineGraph, expected: &SrgParams) -> bool {
        match *self {
            SrgWitness::VertexCount { actual } => actual as i64 != expected.nu,
            SrgWitness::Degree { vertex, .. } => g.degree(vertex) as i64 != expected.r,
            SrgWitness::Pair { u, v, .. } => {
                let want = if g.adjacent(u, v) { expected.lambda } else { expected.mu };
                g.common_neighbors(u, v) as i64 != want
            }
            SrgWitness::Entry { actual, expected, .. } => actual != expected,
            SrgWitness::Multiplicity { .. } => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgVerdict {
    pub check: String,
    pub passed: bool,
    pub witness: Option<SrgWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgCertificate {
    pub nu: i64,
    pub r: i64,
    pub lambda: i64,
    pub mu: i64,
    pub tau0: i64,
    pub tau1: i64,
    pub tau2: i64,
    pub mult0: i64,
    pub mult1: i64,
    pub mult2: i64,
    pub verdicts: Vec<SrgVerdict>,
}

impl SrgCertificate {
    pub fn is_valid(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn params(&self) -> SrgParams {
        SrgParams {
            nu: self.nu,
            r: self.r,
            lambda: self.lambda,
            mu: self.mu,
        }
    }

    pub fn verdict(&self, check: &str) -> Option<&SrgVerdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }

    pub fn first_witness(&self) -> Option<&SrgWitness> {
        self.verdicts.iter().find_map(|v| v.witness.as_ref())
    }
}

fn srg_verdict(check: &str, witness: Option<SrgWitness>) -> SrgVerdict {
    SrgVerdict {
        check: check.to_string(),
        passed: witness.is_none(),
        witness,
    }
}

/// Certifies the graph of lines of a nontrivial rectangle of order (m, n).
///
/// Checks, each with its own witness on failure: vertex count n², degree
/// (m+1)(n-1), λ and μ by counting over every vertex pair, the matrix identity
/// `(A - τ1 I)(A - τ2 I) = μ J` with τ1 = n-m-1 and τ2 = -(m+1), that τ1 and
/// τ2 are the roots of `x² - (λ-μ)x - (r-μ)`, and the multiplicities forced by
/// `tr A = 0` and `tr A² = ν r`.
pub fn certify_srg(g: &LineGraph, m: usize, n: usize) -> Result<SrgCertificate> {
    if m == n {
        return Err(LineGraphError::Trivial);
    }
    let want = SrgParams::for_order(m, n);
    let nv = g.num_vertices();
    let tau1 = n as i64 - m as i64 - 1;
    let tau2 = -(m as i64 + 1);
    let mut verdicts = Vec::new();

    verdicts.push(srg_verdict(
        "vertex count",
        (nv as i64 != want.nu).then_some(SrgWitness::VertexCount { actual: nv }),
    ));

    let bad_degree = (0..nv)
        .find(|&v| g.degree(v) as i64 != want.r)
        .map(|v| SrgWitness::Degree {
            vertex: v,
            degree: g.degree(v),
        });
    verdicts.push(srg_verdict("degree", bad_degree));

    let pair_defect = |adjacent: bool| {
        let expected = if adjacent { want.lambda } else { want.mu };
        (0..nv).into_par_iter().find_map_first(|u| {
            (u + 1..nv).find_map(|v| {
                if g.adjacent(u, v) != adjacent {
                    return None;
                }
                let common = g.common_neighbors(u, v);
                (common as i64 != expected).then_some(SrgWitness::Pair {
                    u,
                    v,
                    adjacent,
                    common,
                    expected,
                })
            })
        })
    };
    verdicts.push(srg_verdict("lambda", pair_defect(true)));
    verdicts.push(srg_verdict("mu", pair_defect(false)));

    verdicts.push(srg_verdict("spectral identity", spectral_identity_defect(g, tau1, tau2, want.mu)));

    // τ1, τ2 are the roots of x^2 - (λ-μ)x - (r-μ) for the predicted parameters
    let root_ok = |t: i64| t * t - (want.lambda - want.mu) * t - (want.r - want.mu) == 0;
    let roots_witness = (!(root_ok(tau1) && root_ok(tau2))).then(|| SrgWitness::Multiplicity {
        detail: format!("{tau1} and {tau2} are not roots of the eigenvalue quadratic"),
    });
    verdicts.push(srg_verdict("eigenvalue quadratic", roots_witness));

    // f + g = ν - 1 and r + f τ1 + g τ2 = 0
    let nu = want.nu;
    let num = -(nu - 1) * tau2 - want.r;
    let den = tau1 - tau2;
    let (mult1, mult2, mult_witness) = if num % den != 0 {
        (
            0,
            0,
            Some(SrgWitness::Multiplicity {
                detail: format!("multiplicity {num}/{den} is not an integer"),
            }),
        )
    } else {
        let f = num / den;
        let h = nu - 1 - f;
        let expected_f = (m as i64 + 1) * (n as i64 - 1);
        let expected_h = (n as i64 - m as i64) * (n as i64 - 1);
        let trace_sq = want.r * want.r + f * tau1 * tau1 + h * tau2 * tau2;
        let w = if f != expected_f || h != expected_h {
            Some(SrgWitness::Multiplicity {
                detail: format!("multiplicities ({f}, {h}) differ from ({expected_f}, {expected_h})"),
            })
        } else if trace_sq != nu * want.r {
            Some(SrgWitness::Multiplicity {
                detail: format!("tr A^2 = {trace_sq} from the spectrum but {} from the degrees", nu * want.r),
            })
        } else {
            None
        };
        (f, h, w)
    };
    verdicts.push(srg_verdict("multiplicities", mult_witness));

    Ok(SrgCertificate {
        nu: want.nu,
        r: want.r,
        lambda: want.lambda,
        mu: want.mu,
        tau0: want.r,
        tau1,
        tau2,
        mult0: 1,
        mult1,
        mult2,
        verdicts,
    })
}

/// First entry where `(A - τ1 I)(A - τ2 I) ≠ μ J`.
fn spectral_identity_defect(g: &LineGraph, tau1: i64, tau2: i64, mu: i64) -> Option<SrgWitness> {
    let nv = g.num_vertices();
    if nv <= DENSE_PRODUCT_LIMIT {
        // dense integer product, independent of the bit-row counting above
        let shifted = |t: i64| -> Vec<i64> {
            let mut a = vec![0i64; nv * nv];
            for u in 0..nv {
                for v in g.neighbors(u) {
                    a[u * nv + v] = 1;
                }
                a[u * nv + u] = -t;
            }
            a
        };
        let left = shifted(tau1);
        let right = shifted(tau2);
        (0..nv).into_par_iter().find_map_first(|i| {
            let row = &left[i * nv..(i + 1) * nv];
            let mut out = vec![0i64; nv];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let rk = &right[k * nv..(k + 1) * nv];
                for (o, &y) in out.iter_mut().zip(rk) {
                    *o += x * y;
                }
            }
            out.iter()
                .position(|&v| v != mu)
                .map(|j| SrgWitness::Entry {
                    row: i,
                    col: j,
                    actual: out[j],
                    expected: mu,
                })
        })
    } else {
        // A^2 via popcounts, then the expanded identity
        (0..nv).into_par_iter().find_map_first(|i| {
            (0..nv).find_map(|j| {
                let a2 = g.common_neighbors(i, j) as i64;
                let aij = g.adjacent(i, j) as i64;
                let id = (i == j) as i64;
                let val = a2 - (tau1 + tau2) * aij + tau1 * tau2 * id;
                (val != mu).then_some(SrgWitness::Entry {
                    row: i,
                    col: j,
                    actual: val,
                    expected: mu,
                })
            })
        })
    }
}

/// Eccentricity maximum over all vertices by breadth-first search; `None`
/// when the graph is disconnected.
pub fn diameter(g: &LineGraph) -> Option<usize> {
    let nv = g.num_vertices();
    let mut best = 0;
    let mut dist = vec![usize::MAX; nv];
    let mut queue = VecDeque::new();
    for s in 0..nv {
        dist.fill(usize::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        let mut seen = 1;
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    best = best.max(dist[v]);
                    seen += 1;
                    queue.push_back(v);
                }
            }
        }
        if seen != nv {
            return None;
        }
    }
    Some(best)
}

pub fn is_connected(g: &LineGraph) -> bool {
    let nv = g.num_vertices();
    if nv == 0 {
        return true;
    }
    let mut seen = BitRow::new(nv);
    seen.insert(0);
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for v in g.neighbors(u) {
            if !seen.contains(v) {
                seen.insert(v);
                stack.push(v);
            }
        }
    }
    seen.count() == nv
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClass {
    pub name: String,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub expected_classes: usize,
    pub expected_degree: usize,
    pub classes: Vec<ColorClass>,
    pub uncolored_edges: usize,
    /// A vertex whose degree in some class is wrong, with that class.
    pub witness: Option<(usize, usize)>,
    pub passed: bool,
}

/// Checks that the edge colours split the graph into m+1 spanning
/// (n-1)-regular factors.
pub fn factorization_check(g: &LineGraph, model: &RectangleModel) -> FactorizationReport {
    let (m, n) = (model.order.m, model.order.n);
    let k = g.num_colors();
    let nv = g.num_vertices();
    let mut deg = vec![vec![0usize; k]; nv];
    let mut uncolored = 0;
    for (u, v, c) in g.edges() {
        if (c as usize) < k {
            deg[u][c as usize] += 1;
            deg[v][c as usize] += 1;
        } else {
            uncolored += 1;
        }
    }
    let classes: Vec<ColorClass> = (0..k)
        .map(|c| ColorClass {
            name: g.color_names()[c].clone(),
            edges: deg.iter().map(|d| d[c]).sum::<usize>() / 2,
            min_degree: deg.iter().map(|d| d[c]).min().unwrap_or(0),
            max_degree: deg.iter().map(|d| d[c]).max().unwrap_or(0),
        })
        .collect();
    let witness = (0..nv).find_map(|v| (0..k).find(|&c| deg[v][c] != n - 1).map(|c| (v, c)));
    FactorizationReport {
        expected_classes: m + 1,
        expected_degree: n - 1,
        passed: witness.is_none() && uncolored == 0 && k == m + 1,
        classes,
        uncolored_edges: uncolored,
        witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConnectivityMode {
    Exact,
    Cited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Connectivity {
    /// Computed by max-flow over vertex pairs.
    Exact { value: usize },
    /// The degree r, which equals the connectivity of a connected strongly regular graph.
    Cited { value: usize, reason: String },
}

impl Connectivity {
    pub fn value(&self) -> usize {
        match self {
            Connectivity::Exact { value } | Connectivity::Cited { value, .. } => *value,
        }
    }
}

pub fn vertex_connectivity(g: &LineGraph, mode: ConnectivityMode) -> Result<Connectivity> {
    let nv = g.num_vertices();
    match mode {
        ConnectivityMode::Cited => Ok(Connectivity::Cited {
            value: (0..nv).map(|v| g.degree(v)).min().unwrap_or(0),
            reason: "connectivity of a connected strongly regular graph equals its degree".into(),
        }),
        ConnectivityMode::Exact => {
            if nv > MAX_EXACT_CONNECTIVITY {
                return Err(LineGraphError::TooLarge(nv, MAX_EXACT_CONNECTIVITY));
            }
            Ok(Connectivity::Exact {
                value: exact_connectivity(g),
            })
        }
    }
}

/// Even's scheme: some vertex among the first κ+1 avoids a minimum cut, so
/// only pairs with one end in that prefix need a flow computation.
fn exact_connectivity(g: &LineGraph) -> usize {
    let nv = g.num_vertices();
    if nv <= 1 {
        return 0;
    }
    let mut best = nv - 1;
    let mut net = FlowNet::new(g);
    let mut i = 0;
    while i <= best && i < nv {
        for j in 0..nv {
            if j != i && !g.adjacent(i, j) {
                best = best.min(net.min_vertex_cut(i, j, best));
            }
        }
        i += 1;
    }
    best
}

/// Unit-capacity split-vertex network for local vertex connectivity.
struct FlowNet {
    nv: usize,
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<i32>,
    base: Vec<i32>,
}

impl FlowNet {
    fn new(g: &LineGraph) -> Self {
        let nv = g.num_vertices();
        let mut net = FlowNet {
            nv,
            head: vec![usize::MAX; 2 * nv],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
        };
        let inf = nv as i32;
        for v in 0..nv {
            net.add(2 * v, 2 * v + 1, 1);
        }
        for (u, v, _) in g.edges() {
            net.add(2 * u + 1, 2 * v, inf);
            net.add(2 * v + 1, 2 * u, inf);
        }
        net.base = net.cap.clone();
        net
    }

    fn add(&mut self, a: usize, b: usize, c: i32) {
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// Number of internally disjoint s–t paths, stopping at `limit`.
    fn min_vertex_cut(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base);
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        let mut prev = vec![usize::MAX; 2 * self.nv];
        while flow < limit {
            prev.fill(usize::MAX);
            let mut queue = VecDeque::from([src]);
            let mut found = false;
            'bfs: while let Some(x) = queue.pop_front() {
                let mut e = self.head[x];
                while e != usize::MAX {
                    let y = self.to[e];
                    if self.cap[e] > 0 && y != src && prev[y] == usize::MAX {
                        prev[y] = e;
                        if y == dst {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                    e = self.next[e];
                }
            }
            if !found {
                break;
            }
            let mut y = dst;
            while y != src {
                let e = prev[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Categorical product K_a × K_b: (i, j) ~ (i', j') iff i ≠ i' and j ≠ j'.
/// Vertex (i, j) has index `i * b + j`.
pub fn complete_tensor_product(a: usize, b: usize) -> LineGraph {
    let mut edges = Vec::new();
    for u in 0..a * b {
        for v in u + 1..a * b {
            if u / b != v / b && u % b != v % b {
                edges.push((u, v, 0));
            }
        }
    }
    LineGraph::from_edges(a * b, edges, vec!["product".into()]).expect("product graph is simple")
}

/// A vertex bijection `g → h` preserving adjacency and non-adjacency, found
/// by backtracking with degree and partial-adjacency pruning.
pub fn find_graph_isomorphism(g: &LineGraph, h: &LineGraph) -> Option<Vec<usize>> {
    let nv = g.num_vertices();
    if nv != h.num_vertices() || g.num_edges() != h.num_edges() {
        return None;
    }
    let mut dg: Vec<usize> = (0..nv).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..nv).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    // breadth-first order keeps each new vertex attached to mapped ones
    let mut order = Vec::with_capacity(nv);
    let mut placed = vec![false; nv];
    for s in 0..nv {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        order.push(s);
        let mut i = order.len() - 1;
        while i < order.len() {
            for w in g.neighbors(order[i]) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; nv];
    let mut used = vec![false; nv];
    fn extend(
        g: &LineGraph,
        h: &LineGraph,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for cand in 0..h.num_vertices() {
            if used[cand] || h.degree(cand) != g.degree(v) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| g.adjacent(u, v) == h.adjacent(map[u], cand));
            if !consistent {
                continue;
            }
            map[v] = cand;
            used[cand] = true;
            if extend(g, h, order, depth + 1, map, used) {
                return true;
            }
            used[cand] = false;
            map[v] = usize::MAX;
        }
        false
    }
    extend(g, h, &order, 0, &mut map, &mut used).then_some(map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub parts: Vec<Vec<usize>>,
    pub covers_vertices: bool,
    pub parts_are_cliques: bool,
    pub parts_are_independent: bool,
    /// Common value of |N(v) ∩ P| over vertices v outside a part P, if constant.
    pub neighbours_in_other_part: Option<usize>,
}

/// Measures how a vertex partition sits in the graph.
pub fn partition_report(g: &LineGraph, parts: &[Vec<usize>]) -> PartitionReport {
    let nv = g.num_vertices();
    let mut seen = vec![0usize; nv];
    for &v in parts.iter().flatten() {
        if v < nv {
            seen[v] += 1;
        }
    }
    let covers_vertices = seen.iter().all(|&c| c == 1) && parts.iter().flatten().all(|&v| v < nv);
    fn pairs_in(p: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
        p.iter()
            .enumerate()
            .flat_map(move |(i, &u)| p[i + 1..].iter().map(move |&v| (u, v)))
    }
    let valid = covers_vertices;
    let parts_are_cliques = valid && parts.iter().all(|p| pairs_in(p).all(|(u, v)| g.adjacent(u, v)));
    let parts_are_independent = valid && parts.iter().all(|p| pairs_in(p).all(|(u, v)| !g.adjacent(u, v)));
    let mut counts = Vec::new();
    if valid {
        for (i, p) in parts.iter().enumerate() {
            for (j, other) in parts.iter().enumerate() {
                if i != j {
                    for &v in other {
                        counts.push(p.iter().filter(|&&u| g.adjacent(u, v)).count());
                    }
                }
            }
        }
    }
    counts.dedup();
    PartitionReport {
        parts: parts.to_vec(),
        covers_vertices,
        parts_are_cliques,
        parts_are_independent,
        neighbours_in_other_part: (counts.len() == 1).then(|| counts[0]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCheck {
    /// Isomorphic to K_a × K_b with independent parts.
    pub tensor_product: bool,
    /// A bijection onto K_a × K_b, when one exists.
    pub mapping: Option<Vec<usize>>,
    /// Fibres of that bijection over the first factor, when it exists.
    pub product_fibres: Option<PartitionReport>,
    /// The supplied partition measured in the graph.
    pub given_partition: PartitionReport,
}

/// Compares the graph with both readings of "K_a × K_b": the categorical
/// product (parts independent) via an explicit isomorphism, and a supplied
/// partition whose parts are claimed to be cliques.
pub fn product_check(g: &LineGraph, a: usize, b: usize, parts: &[Vec<usize>]) -> ProductCheck {
    let target = complete_tensor_product(a, b);
    let mapping = find_graph_isomorphism(g, &target);
    let product_fibres = mapping.as_ref().map(|map| {
        let mut fibres = vec![Vec::new(); a];
        for (v, &w) in map.iter().enumerate() {
            fibres[w / b].push(v);
        }
        partition_report(g, &fibres)
    });
    ProductCheck {
        tensor_product: mapping.is_some(),
        mapping,
        product_fibres,
        given_partition: partition_report(g, parts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_l2k, build_subplane_rect};

    fn complete(n: usize) -> LineGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 0)));
        LineGraph::from_edges(n, edges, vec!["c".into()]).unwrap()
    }

    #[test]
    fn l2_2_is_srg_16_9_4_6() {
        let model = build_l2k(2).unwrap();
        let g = build_line_graph(&model).unwrap();
        assert_eq!(g.num_vertices(), 16);
        assert!((0..16).all(|v| g.degree(v) == 9));
        let cert = certify_srg(&g, 2, 4).unwrap();
        assert!(cert.is_valid(), "{cert:?}");
        assert_eq!((cert.nu, cert.r, cert.lambda, cert.mu), (16, 9, 4, 6));
        assert_eq!((cert.tau1, cert.tau2, cert.mult1, cert.mult2), (1, -3, 9, 6));
        assert_eq!(diameter(&g), Some(2));
    }

    #[test]
    fn fano_graph_is_k4() {
        let model = build_subplane_rect(2, 1, 1).unwrap();
        let g = build_line_graph(&model).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert!(g.is_complete());
        assert_eq!(diameter(&g), Some(1));
        assert!(matches!(certify_srg(&g, 2, 2), Err(LineGraphError::Trivial)));
        let k = vertex_connectivity(&g, ConnectivityMode::Exact).unwrap();
        assert_eq!(k, Connectivity::Exact { value: 3 });
    }

    #[test]
    fn coordinate_route_agrees() {
        for model in [build_subplane_rect(2, 1, 2).unwrap(), build_subplane_rect(3, 1, 2).unwrap()] {
            let a = build_line_graph(&model).unwrap();
            let b = build_line_graph_from_coordinates(&model).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn factorization_r24() {
        let model = build_subplane_rect(2, 1, 2).unwrap();
        let g = build_line_graph(&model).unwrap();
        let rep = factorization_check(&g, &model);
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.classes.len(), 3);
        assert!(rep.classes.iter().all(|c| c.min_degree == 3 && c.max_degree == 3));
    }

    #[test]
    fn edge_removal_is_caught() {
        let model = build_l2k(2).unwrap();
        let g = build_line_graph(&model).unwrap();
        let (u, v, _) = g.edges().next().unwrap();
        let broken = g.without_edge(u, v);
        let cert = certify_srg(&broken, 2, 4).unwrap();
        assert!(!cert.is_valid());
        let want = SrgParams::for_order(2, 4);
        let pair = cert.verdict("mu").unwrap().witness.clone().unwrap();
        assert!(pair.recheck(&broken, &want));
        assert!(!pair.recheck(&g, &want));
        assert!(!cert.verdict("spectral identity").unwrap().passed);
    }

    #[test]
    fn connectivity_small() {
        assert_eq!(exact_connectivity(&complete(5)), 4);
        // path 0-1-2
        let path = LineGraph::from_edges(3, [(0, 1, 0), (1, 2, 0)], vec![]).unwrap();
        assert_eq!(exact_connectivity(&path), 1);
        // 6-cycle
        let cycle = LineGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6, 0)), vec![]).unwrap();
        assert_eq!(exact_connectivity(&cycle), 2);
        let disconnected = LineGraph::from_edges(4, [(0, 1, 0), (2, 3, 0)], vec![]).unwrap();
        assert_eq!(exact_connectivity(&disconnected), 0);
        assert_eq!(diameter(&disconnected), None);
    }

    #[test]
    fn l2_2_against_both_product_readings() {
        let g = build_line_graph(&build_l2k(2).unwrap()).unwrap();
        let parts = vec![vec![0, 1, 4, 5], vec![2, 3, 6, 7], vec![8, 9, 12, 13], vec![10, 11, 14, 15]];
        let check = product_check(&g, 4, 4, &parts);
        let fibres = check.product_fibres.as_ref().expect("G is the categorical product");
        assert!(fibres.parts_are_independent);
        let map = check.mapping.unwrap();
        let target = complete_tensor_product(4, 4);
        for (u, v, _) in g.edges() {
            assert!(target.adjacent(map[u], map[v]));
        }
        assert!(check.given_partition.parts_are_cliques);
        assert_eq!(check.given_partition.neighbours_in_other_part, Some(2));
        assert_eq!(fibres.neighbours_in_other_part, Some(3));
    }

    #[test]
    fn isomorphism_search_rejects_rook_complement_mismatch() {
        // K4 x K4 versus its complement have different degrees
        let t = complete_tensor_product(4, 4);
        let mut comp = Vec::new();
        for u in 0..16 {
            for v in u + 1..16 {
                if !t.adjacent(u, v) {
                    comp.push((u, v, 0));
                }
            }
        }
        let c = LineGraph::from_edges(16, comp, vec![]).unwrap();
        assert!(find_graph_isomorphism(&t, &c).is_none());
        assert!(find_graph_isomorphism(&t, &t).is_some());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(LineGraph::from_edges(2, [(0, 0, 0)], vec![]).is_err());
        assert!(LineGraph::from_edges(2, [(0, 1, 0), (1, 0, 0)], vec![]).is_err());
        assert!(LineGraph::from_edges(2, [(0, 2, 0)], vec![]).is_err());
    }
}

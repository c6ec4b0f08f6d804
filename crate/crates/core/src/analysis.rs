//! Planarity, Eulerian circuits, Hamilton cycles, vertex and edge colouring,
//! and the Krein conditions for graphs of lines.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::linegraph::{is_connected, LineGraph, SrgCertificate};

/// Hamilton cycle of G_L(L_2^2) in vertex labels l_i, closed.
pub const L22_HAMILTON_CYCLE: [usize; 17] = [4, 5, 6, 7, 8, 9, 10, 11, 3, 2, 1, 0, 15, 14, 13, 12, 4];

pub const DEFAULT_EXACT_CHI_LIMIT: usize = 100;
pub const DEFAULT_BUDGET_MS: u64 = 60_000;

/// Wall-clock and node budget for the searches here.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Instant,
    max_nodes: u64,
}

impl Budget {
    pub fn new(ms: u64) -> Self {
        Budget {
            deadline: Instant::now() + Duration::from_millis(ms),
            max_nodes: u64::MAX,
        }
    }

    /// Caps the search tree size too; node caps keep outcomes independent of machine speed.
    pub fn with_nodes(ms: u64, max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            ..Budget::new(ms)
        }
    }

    fn exhausted(&self, nodes: u64) -> bool {
        nodes >= self.max_nodes || (nodes.is_multiple_of(1024) && Instant::now() >= self.deadline)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: Option<bool>,
    pub is_k4: bool,
    pub reason: String,
    /// Whether the verdict matches "nonplanar unless m = n = 2".
    pub agrees_with_rule: bool,
}

/// Planarity from degree and edge-count criteria: every planar graph has a
/// vertex of degree at most 5 and at most 3ν - 6 edges; graphs on at most
/// four vertices are planar.
pub fn planarity_verdict(g: &LineGraph, m: usize, n: usize) -> PlanarityVerdict {
    let nv = g.num_vertices();
    let min_degree = (0..nv).map(|v| g.degree(v)).min().unwrap_or(0);
    let is_k4 = nv == 4 && g.is_complete();
    let (planar, reason) = if nv <= 4 {
        (Some(true), format!("{nv} vertices; every graph on at most 4 vertices is planar"))
    } else if min_degree >= 6 {
        (Some(false), format!("minimum degree {min_degree} exceeds 5"))
    } else if g.num_edges() > 3 * nv - 6 {
        (Some(false), format!("{} edges exceed 3ν - 6 = {}", g.num_edges(), 3 * nv - 6))
    } else {
        (None, "degree and edge-count criteria are inconclusive".to_string())
    };
    let predicted = m == 2 && n == 2;
    PlanarityVerdict {
        agrees_with_rule: planar == Some(predicted) && (!predicted || is_k4),
        planar,
        is_k4,
        reason,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerianVerdict {
    pub all_degrees_even: bool,
    pub connected: bool,
    pub eulerian: bool,
    /// m odd or n odd.
    pub parity_rule: bool,
    pub agrees: bool,
}

pub fn eulerian_verdict(g: &LineGraph, m: usize, n: usize) -> EulerianVerdict {
    let all_even = (0..g.num_vertices()).all(|v| g.degree(v).is_multiple_of(2));
    let connected = is_connected(g);
    let eulerian = all_even && connected;
    let parity_rule = m % 2 == 1 || n % 2 == 1;
    EulerianVerdict {
        all_degrees_even: all_even,
        connected,
        eulerian,
        parity_rule,
        agrees: eulerian == parity_rule,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleValidation {
    pub valid: bool,
    pub length: usize,
    pub visits_every_vertex_once: bool,
    /// First consecutive pair that is not an edge.
    pub missing_edge: Option<(usize, usize)>,
}

/// Checks a Hamilton cycle given as a vertex sequence, closed (first = last) or open.
pub fn validate_cycle(g: &LineGraph, cycle: &[usize]) -> CycleValidation {
    let nv = g.num_vertices();
    let body = match cycle {
        [first, .., last] if first == last && cycle.len() > 1 => &cycle[..cycle.len() - 1],
        _ => cycle,
    };
    let mut seen = vec![false; nv];
    let once = body.len() == nv && body.iter().all(|&v| v < nv && !std::mem::replace(&mut seen[v], true));
    let missing_edge = (0..body.len())
        .map(|i| (body[i], body[(i + 1) % body.len()]))
        .find(|&(u, v)| u >= nv || v >= nv || !g.adjacent(u, v));
    CycleValidation {
        valid: once && missing_edge.is_none() && nv >= 3,
        length: body.len(),
        visits_every_vertex_once: once,
        missing_edge,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HamiltonOutcome {
    Found { cycle: Vec<usize> },
    /// The search tree was exhausted without a cycle.
    NoCycle,
    /// Budget ran out; nothing is concluded.
    Inconclusive { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonReport {
    /// n ≤ 3m + 1, the sufficient condition for a Hamilton cycle.
    pub sufficient_condition: bool,
    pub outcome: HamiltonOutcome,
    /// Validation of a found cycle, repeated independently of the search.
    pub validation: Option<CycleValidation>,
}

/// Depth-first search from vertex 0 that extends to the unvisited neighbour
/// with fewest unvisited neighbours first.
pub fn hamiltonian_search(g: &LineGraph, m: usize, n: usize, budget: Budget) -> HamiltonReport {
    let nv = g.num_vertices();
    let sufficient_condition = n <= 3 * m + 1;
    if nv < 3 {
        return HamiltonReport {
            sufficient_condition,
            outcome: HamiltonOutcome::NoCycle,
            validation: None,
        };
    }
    struct Search<'a> {
        g: &'a LineGraph,
        path: Vec<usize>,
        visited: Vec<bool>,
        nodes: u64,
        budget: Budget,
        out_of_budget: bool,
    }
    impl Search<'_> {
        fn free_degree(&self, v: usize) -> usize {
            self.g.neighbors(v).filter(|&w| !self.visited[w]).count()
        }
        fn run(&mut self) -> bool {
            self.nodes += 1;
            if self.budget.exhausted(self.nodes) {
                self.out_of_budget = true;
                return false;
            }
            let last = *self.path.last().unwrap();
            if self.path.len() == self.visited.len() {
                return self.g.adjacent(last, self.path[0]);
            }
            let mut next: Vec<(usize, usize)> = self
                .g
                .neighbors(last)
                .filter(|&w| !self.visited[w])
                .map(|w| (self.free_degree(w), w))
                .collect();
            next.sort_unstable();
            for (_, w) in next {
                self.visited[w] = true;
                self.path.push(w);
                if self.run() {
                    return true;
                }
                self.path.pop();
                self.visited[w] = false;
                if self.out_of_budget {
                    return false;
                }
            }
            false
        }
    }
    let mut s = Search {
        g,
        path: vec![0],
        visited: vec![false; nv],
        nodes: 0,
        budget,
        out_of_budget: false,
    };
    s.visited[0] = true;
    let found = s.run();
    let outcome = if found {
        let mut cycle = s.path.clone();
        cycle.push(cycle[0]);
        HamiltonOutcome::Found { cycle }
    } else if s.out_of_budget {
        HamiltonOutcome::Inconclusive { nodes: s.nodes }
    } else {
        HamiltonOutcome::NoCycle
    };
    let validation = match &outcome {
        HamiltonOutcome::Found { cycle } => Some(validate_cycle(g, cycle)),
        _ => None,
    };
    HamiltonReport {
        sufficient_condition,
        outcome,
        validation,
    }
}

/// Whether `colors` is a proper vertex colouring of `g`.
pub fn is_proper_coloring(g: &LineGraph, colors: &[usize]) -> bool {
    colors.len() == g.num_vertices() && g.edges().all(|(u, v, _)| colors[u] != colors[v])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticReport {
    pub vertices: usize,
    /// Exact χ with a proof of optimality, or `None` when not computed.
    pub exact_chromatic: Option<usize>,
    /// Best colouring found; uses `exact_chromatic` colours when that is set.
    pub witness: Option<Vec<usize>>,
    pub witness_proper: bool,
    /// ceil(min(μ2, 1 - τ2/τ1)).
    pub haemers_bound: Option<i64>,
    /// The value min(μ2, 1 - τ2/τ1) before rounding, as "p/q".
    pub haemers_value: Option<String>,
    /// (n - 1)(n - m).
    pub claimed_bound: i64,
    /// n, the size of a point clique.
    pub clique_lower_bound: i64,
    /// Upper bound from the best colouring found.
    pub upper_bound: Option<usize>,
    pub note: String,
    pub flags: Vec<String>,
}

/// Chromatic number with three separately reported lower bounds.
///
/// Exact search runs when ν ≤ `exact_limit`: DSATUR branch and bound,
/// seeded with the clique lower bound, exhaustive unless the budget ends.
pub fn chromatic_analysis(
    g: &LineGraph,
    cert: Option<&SrgCertificate>,
    m: usize,
    n: usize,
    exact_limit: usize,
    budget: Budget,
) -> ChromaticReport {
    let nv = g.num_vertices();
    let (m64, n64) = (m as i64, n as i64);
    let claimed_bound = (n64 - 1) * (n64 - m64);
    let clique_lower_bound = if m == n { n64 * n64 } else { n64 };
    let haemers = cert.and_then(|c| {
        if c.tau1 <= 0 {
            return None;
        }
        let ratio = Ratio::<i128>::new(1, 1) - Ratio::new(c.tau2 as i128, c.tau1 as i128);
        let value = ratio.min(Ratio::from_integer(c.mult2 as i128));
        Some((value.ceil().to_integer() as i64, value.to_string()))
    });
    let mut report = ChromaticReport {
        vertices: nv,
        exact_chromatic: None,
        witness: None,
        witness_proper: false,
        haemers_bound: haemers.as_ref().map(|h| h.0),
        haemers_value: haemers.map(|h| h.1),
        claimed_bound,
        clique_lower_bound,
        upper_bound: None,
        note: String::new(),
        flags: Vec::new(),
    };

    let lower = clique_lower_bound.max(report.haemers_bound.unwrap_or(0)).max(0) as usize;
    if nv > exact_limit {
        report.note = format!("exact search skipped: {nv} vertices exceed the limit {exact_limit}");
        let greedy = dsatur_greedy(g);
        report.upper_bound = Some(greedy.iter().max().map_or(0, |&c| c + 1));
        report.witness_proper = is_proper_coloring(g, &greedy);
        report.witness = Some(greedy);
    } else {
        let res = exact_coloring(g, lower, budget);
        report.upper_bound = Some(res.colors);
        report.witness_proper = is_proper_coloring(g, &res.coloring);
        report.witness = Some(res.coloring);
        if res.complete {
            report.exact_chromatic = Some(res.colors);
            report.note = format!("exhaustive search over {} nodes", res.nodes);
        } else {
            report.note = format!("budget exhausted after {} nodes; only bounds are certain", res.nodes);
        }
    }

    if let Some(chi) = report.exact_chromatic {
        if (chi as i64) < claimed_bound {
            report.flags.push(format!(
                "exact chromatic number {chi} is below the claimed lower bound (n-1)(n-m) = {claimed_bound}"
            ));
        }
        if (chi as i64) < clique_lower_bound {
            report.flags.push(format!("exact chromatic number {chi} is below the clique bound {clique_lower_bound}"));
        }
        if let Some(h) = report.haemers_bound {
            if (chi as i64) < h {
                report.flags.push(format!("exact chromatic number {chi} is below the Haemers bound {h}"));
            }
        }
        if m < n && chi as i64 != claimed_bound {
            report.flags.push(format!("conjectured equality chi = (n-1)(n-m) = {claimed_bound} fails"));
        }
    }
    if let Some(h) = report.haemers_bound {
        if h < claimed_bound {
            report.flags.push(format!(
                "Haemers bound min(mu2, 1 - tau2/tau1) = {h} does not yield the claimed bound {claimed_bound}"
            ));
        }
    }
    if let Some(ub) = report.upper_bound {
        if (ub as i64) < claimed_bound {
            let msg = format!("a proper {ub}-colouring exists, below the claimed lower bound {claimed_bound}");
            if !report.flags.iter().any(|f| f.starts_with("exact chromatic number") && f.contains("claimed")) {
                report.flags.push(msg);
            }
        }
    }
    report
}

/// Greedy DSATUR colouring.
pub fn dsatur_greedy(g: &LineGraph) -> Vec<usize> {
    let nv = g.num_vertices();
    let mut colors = vec![usize::MAX; nv];
    let mut sat: Vec<Vec<bool>> = vec![Vec::new(); nv];
    for _ in 0..nv {
        let v = (0..nv)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| (sat[v].iter().filter(|&&b| b).count(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|&c| !sat[v].get(c).copied().unwrap_or(false)).unwrap();
        colors[v] = c;
        for w in g.neighbors(v) {
            if sat[w].len() <= c {
                sat[w].resize(c + 1, false);
            }
            sat[w][c] = true;
        }
    }
    colors
}

struct ExactColoring {
    colors: usize,
    coloring: Vec<usize>,
    complete: bool,
    nodes: u64,
}

/// Branch and bound: DSATUR vertex choice, colours tried in order with at
/// most one new colour per node, pruned at the best colouring found.
fn exact_coloring(g: &LineGraph, lower: usize, budget: Budget) -> ExactColoring {
    let nv = g.num_vertices();
    let greedy = dsatur_greedy(g);
    let mut best = greedy.iter().max().map_or(0, |&c| c + 1);
    let mut best_coloring = greedy;
    if best <= lower || nv == 0 {
        return ExactColoring {
            colors: best,
            coloring: best_coloring,
            complete: true,
            nodes: 0,
        };
    }

    struct St<'a> {
        g: &'a LineGraph,
        colors: Vec<usize>,
        /// counts[v][c]: coloured neighbours of v with colour c
        counts: Vec<Vec<u32>>,
        nodes: u64,
        budget: Budget,
        out: bool,
    }
    fn recurse(st: &mut St, used: usize, colored: usize, best: &mut usize, best_coloring: &mut Vec<usize>, lower: usize) {
        st.nodes += 1;
        if st.budget.exhausted(st.nodes) {
            st.out = true;
            return;
        }
        let nv = st.colors.len();
        if colored == nv {
            *best = used;
            *best_coloring = st.colors.clone();
            return;
        }
        let v = (0..nv)
            .filter(|&v| st.colors[v] == usize::MAX)
            .max_by_key(|&v| {
                let s = st.counts[v][..used].iter().filter(|&&c| c > 0).count();
                (s, st.g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        let limit = (used + 1).min(*best - 1);
        for c in 0..limit {
            if st.counts[v][c] > 0 {
                continue;
            }
            st.colors[v] = c;
            let nbrs: Vec<usize> = st.g.neighbors(v).collect();
            for &w in &nbrs {
                st.counts[w][c] += 1;
            }
            recurse(st, used.max(c + 1), colored + 1, best, best_coloring, lower);
            for &w in &nbrs {
                st.counts[w][c] -= 1;
            }
            st.colors[v] = usize::MAX;
            if st.out || *best <= lower {
                return;
            }
        }
    }
    let mut st = St {
        g,
        colors: vec![usize::MAX; nv],
        counts: vec![vec![0; best + 1]; nv],
        nodes: 0,
        budget,
        out: false,
    };
    recurse(&mut st, 0, 0, &mut best, &mut best_coloring, lower);
    ExactColoring {
        colors: best,
        coloring: best_coloring,
        complete: !st.out,
        nodes: st.nodes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeColoringOutcome {
    /// ν odd: a regular graph of odd order needs r + 1 colours.
    OddOrder,
    Found { colors: usize, coloring: Vec<(usize, usize, usize)> },
    /// Search exhausted: no r-edge-colouring.
    NoneExists,
    Inconclusive { nodes: u64 },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChromaticIndexReport {
    pub r: usize,
    pub bracket: (usize, usize),
    pub value: Option<usize>,
    /// Backtracking search for an r-edge-colouring.
    pub search: EdgeColoringOutcome,
    /// Colouring assembled from round-robin factorizations of the point cliques.
    pub construction: EdgeColoringOutcome,
    /// max(τ1, -τ2) < r^0.9
    pub eigenvalue_condition: bool,
    /// m + 1 ≥ (n - 1)^(1/9)
    pub size_hypothesis: bool,
}

/// Whether the edge colouring assigns distinct colours at every vertex and covers every edge once.
pub fn is_proper_edge_coloring(g: &LineGraph, coloring: &[(usize, usize, usize)]) -> bool {
    let nv = g.num_vertices();
    if coloring.len() != g.num_edges() {
        return false;
    }
    let mut edges = HashSet::new();
    let mut vertex_colors = HashSet::new();
    coloring.iter().all(|&(u, v, c)| {
        u < nv
            && v < nv
            && g.adjacent(u, v)
            && edges.insert((u.min(v), u.max(v)))
            && vertex_colors.insert((u, c))
            && vertex_colors.insert((v, c))
    })
}

/// Vizing bracket {r, r+1} for an r-regular graph of lines, resolved by
/// parity when ν is odd and by search or construction when ν is even.
pub fn chromatic_index_bracket(g: &LineGraph, m: usize, n: usize, budget: Budget) -> ChromaticIndexReport {
    let nv = g.num_vertices();
    let r = (0..nv).map(|v| g.degree(v)).max().unwrap_or(0);
    let regular = (0..nv).all(|v| g.degree(v) == r);
    let tau1 = n as f64 - m as f64 - 1.0;
    let tau2 = -(m as f64 + 1.0);
    let eigenvalue_condition = tau1.max(-tau2) < (r as f64).powf(0.9);
    let size_hypothesis = (m as f64 + 1.0) >= (n as f64 - 1.0).powf(1.0 / 9.0);

    let (search, construction) = if regular && nv % 2 == 1 && r > 0 {
        (EdgeColoringOutcome::OddOrder, EdgeColoringOutcome::OddOrder)
    } else {
        (edge_color_search(g, r, budget), point_clique_factorization(g, r))
    };
    let found = |o: &EdgeColoringOutcome| matches!(o, EdgeColoringOutcome::Found { colors, .. } if *colors == r);
    let value = if matches!(search, EdgeColoringOutcome::OddOrder) {
        Some(r + 1)
    } else if found(&search) || found(&construction) {
        Some(r)
    } else if matches!(search, EdgeColoringOutcome::NoneExists) {
        Some(r + 1)
    } else {
        None
    };
    ChromaticIndexReport {
        r,
        bracket: (r, r + 1),
        value,
        search,
        construction,
        eigenvalue_condition,
        size_hypothesis,
    }
}

const EDGE_SEARCH_MAX_COLORS: usize = 128;

fn edge_color_search(g: &LineGraph, r: usize, budget: Budget) -> EdgeColoringOutcome {
    if r > EDGE_SEARCH_MAX_COLORS {
        return EdgeColoringOutcome::Skipped {
            reason: format!("degree {r} exceeds {EDGE_SEARCH_MAX_COLORS}"),
        };
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut at: Vec<u128> = vec![0; g.num_vertices()];
    let mut color = vec![usize::MAX; edges.len()];
    let mut nodes = 0u64;
    let full: u128 = if r == 128 { u128::MAX } else { (1u128 << r) - 1 };

    #[allow(clippy::too_many_arguments)]
    fn go(
        edges: &[(usize, usize)],
        at: &mut [u128],
        color: &mut [usize],
        left: usize,
        full: u128,
        nodes: &mut u64,
        budget: &Budget,
        out: &mut bool,
    ) -> bool {
        *nodes += 1;
        if budget.exhausted(*nodes) {
            *out = true;
            return false;
        }
        if left == 0 {
            return true;
        }
        // most constrained uncoloured edge
        let (i, free) = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| color[i] == usize::MAX)
            .map(|(i, &(u, v))| (i, full & !(at[u] | at[v])))
            .min_by_key(|&(i, f)| (f.count_ones(), i))
            .unwrap();
        let (u, v) = edges[i];
        let mut f = free;
        while f != 0 {
            let c = f.trailing_zeros() as usize;
            f &= f - 1;
            color[i] = c;
            at[u] |= 1 << c;
            at[v] |= 1 << c;
            if go(edges, at, color, left - 1, full, nodes, budget, out) {
                return true;
            }
            at[u] &= !(1 << c);
            at[v] &= !(1 << c);
            color[i] = usize::MAX;
            if *out {
                return false;
            }
        }
        false
    }
    // fixing the colours at vertex 0 loses no generality
    let mut left = edges.len();
    let mut next = 0;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if u == 0 {
            color[i] = next;
            at[u] |= 1 << next;
            at[v] |= 1 << next;
            next += 1;
            left -= 1;
        }
    }
    let mut out = false;
    if go(&edges, &mut at, &mut color, left, full, &mut nodes, &budget, &mut out) {
        EdgeColoringOutcome::Found {
            colors: r,
            coloring: edges.iter().zip(&color).map(|(&(u, v), &c)| (u, v, c)).collect(),
        }
    } else if out {
        EdgeColoringOutcome::Inconclusive { nodes }
    } else {
        EdgeColoringOutcome::NoneExists
    }
}

/// Each edge colour class of a graph of lines is a disjoint union of
/// cliques K_n, one per ordinary point. For n even each K_n has a
/// round-robin 1-factorization with n - 1 colours; offsetting by class gives
/// (m+1)(n-1) = r colours.
fn point_clique_factorization(g: &LineGraph, r: usize) -> EdgeColoringOutcome {
    let k = g.num_colors();
    if k == 0 || !r.is_multiple_of(k) {
        return EdgeColoringOutcome::Skipped {
            reason: "edges are not coloured by special line".into(),
        };
    }
    let per = r / k;
    let n = per + 1;
    if n % 2 == 1 {
        return EdgeColoringOutcome::Skipped {
            reason: format!("cliques K_{n} of odd order have no 1-factorization"),
        };
    }
    let nv = g.num_vertices();
    let mut coloring = Vec::with_capacity(g.num_edges());
    for c in 0..k as u16 {
        let mut comp = vec![usize::MAX; nv];
        for s in 0..nv {
            if comp[s] != usize::MAX || !g.colored_neighbors(s).iter().any(|&(_, cc)| cc == c) {
                continue;
            }
            let mut members = vec![s];
            comp[s] = s;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                for &(w, cc) in g.colored_neighbors(u) {
                    let w = w as usize;
                    if cc == c && comp[w] == usize::MAX {
                        comp[w] = s;
                        members.push(w);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            if members.len() != n {
                return EdgeColoringOutcome::Skipped {
                    reason: format!("a class-{c} component has {} vertices, not {n}", members.len()),
                };
            }
            for i in 0..n {
                for j in i + 1..n {
                    let (u, v) = (members[i], members[j]);
                    if g.color(u, v) != Some(c) {
                        return EdgeColoringOutcome::Skipped {
                            reason: format!("class-{c} component is not complete"),
                        };
                    }
                    let round = if j == n - 1 { i } else { (i + j) * (n / 2) % (n - 1) };
                    coloring.push((u, v, c as usize * per + round));
                }
            }
        }
    }
    coloring.sort_unstable();
    if !is_proper_edge_coloring(g, &coloring) {
        return EdgeColoringOutcome::Skipped {
            reason: "assembled colouring is not proper".into(),
        };
    }
    EdgeColoringOutcome::Found { colors: r, coloring }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KreinCondition {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KreinReport {
    pub params: (i64, i64, i64, i64),
    pub conditions: [KreinCondition; 2],
    pub passed: bool,
}

/// The two Krein conditions with θ = τ1, τ = τ2, k = r:
/// (θ+1)(k+θ+2θτ) ≤ (k+θ)(τ+1)² and (τ+1)(k+τ+2θτ) ≤ (k+τ)(θ+1)².
pub fn krein_check(cert: &SrgCertificate) -> KreinReport {
    let q = |x: i64| Ratio::<i128>::from_integer(x as i128);
    let (k, th, ta) = (q(cert.r), q(cert.tau1), q(cert.tau2));
    let one = q(1);
    let two = q(2);
    let cond = |a: Ratio<i128>, b: Ratio<i128>| {
        let lhs = (a + one) * (k + a + two * a * b);
        let rhs = (k + a) * (b + one) * (b + one);
        KreinCondition {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lhs <= rhs,
        }
    };
    let conditions = [cond(th, ta), cond(ta, th)];
    KreinReport {
        params: (cert.nu, cert.r, cert.lambda, cert.mu),
        passed: conditions.iter().all(|c| c.holds),
        conditions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_l2k, build_subplane_rect};
    use crate::linegraph::{build_line_graph, certify_srg};

    fn complete(n: usize) -> LineGraph {
        LineGraph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 0))), vec!["c".into()]).unwrap()
    }

    #[test]
    fn k4_is_planar_and_three_edge_colourable() {
        let g = build_line_graph(&build_subplane_rect(2, 1, 1).unwrap()).unwrap();
        let p = planarity_verdict(&g, 2, 2);
        assert_eq!(p.planar, Some(true));
        assert!(p.is_k4 && p.agrees_with_rule);
        let ci = chromatic_index_bracket(&complete(4), 2, 2, Budget::new(1000));
        assert_eq!(ci.value, Some(3));
        let ch = chromatic_analysis(&complete(4), None, 2, 2, 100, Budget::new(1000));
        assert_eq!(ch.exact_chromatic, Some(4));
    }

    #[test]
    fn l2_2_properties() {
        let g = build_line_graph(&build_l2k(2).unwrap()).unwrap();
        let p = planarity_verdict(&g, 2, 4);
        assert_eq!(p.planar, Some(false));
        let e = eulerian_verdict(&g, 2, 4);
        assert!(!e.eulerian && e.agrees);
        assert!(validate_cycle(&g, &L22_HAMILTON_CYCLE).valid);
        let h = hamiltonian_search(&g, 2, 4, Budget::new(5000));
        assert!(matches!(h.outcome, HamiltonOutcome::Found { .. }));
        assert!(h.validation.unwrap().valid);
    }

    #[test]
    fn cycle_validation_catches_defects() {
        let g = build_line_graph(&build_l2k(2).unwrap()).unwrap();
        let mut repeated = L22_HAMILTON_CYCLE;
        repeated[3] = repeated[1];
        assert!(!validate_cycle(&g, &repeated).visits_every_vertex_once);
        assert!(!validate_cycle(&g, &L22_HAMILTON_CYCLE[..10]).valid);
        let cut = g.without_edge(4, 5);
        let v = validate_cycle(&cut, &L22_HAMILTON_CYCLE);
        assert_eq!(v.missing_edge, Some((4, 5)));
    }

    #[test]
    fn l2_2_chromatic() {
        let g = build_line_graph(&build_l2k(2).unwrap()).unwrap();
        let cert = certify_srg(&g, 2, 4).unwrap();
        let rep = chromatic_analysis(&g, Some(&cert), 2, 4, 100, Budget::new(10_000));
        assert_eq!(rep.exact_chromatic, Some(4));
        assert!(rep.witness_proper);
        assert_eq!(rep.haemers_bound, Some(4));
        assert_eq!(rep.claimed_bound, 6);
        assert!(rep.flags.iter().any(|f| f.contains("below the claimed lower bound")));
    }

    #[test]
    fn odd_order_needs_extra_colour() {
        // K5: 4-regular on 5 vertices
        let ci = chromatic_index_bracket(&complete(5), 1, 1, Budget::new(1000));
        assert_eq!(ci.search, EdgeColoringOutcome::OddOrder);
        assert_eq!(ci.value, Some(5));
    }

    #[test]
    fn l2_2_edge_colourings() {
        let g = build_line_graph(&build_l2k(2).unwrap()).unwrap();
        let ci = chromatic_index_bracket(&g, 2, 4, Budget::with_nodes(10_000, 2_000_000));
        assert_eq!(ci.bracket, (9, 10));
        assert_eq!(ci.value, Some(9));
        for o in [&ci.search, &ci.construction] {
            if let EdgeColoringOutcome::Found { coloring, .. } = o {
                assert!(is_proper_edge_coloring(&g, coloring));
            }
        }
        assert!(matches!(ci.construction, EdgeColoringOutcome::Found { .. }));
    }

    #[test]
    fn krein_small() {
        let g = build_line_graph(&build_l2k(2).unwrap()).unwrap();
        let rep = krein_check(&certify_srg(&g, 2, 4).unwrap());
        assert!(rep.passed);
        assert_eq!((rep.conditions[0].lhs.as_str(), rep.conditions[0].rhs.as_str()), ("8", "40"));
        assert_eq!((rep.conditions[1].lhs.as_str(), rep.conditions[1].rhs.as_str()), ("0", "24"));
    }
}

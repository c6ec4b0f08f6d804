//! Acceptance gate. Prints one line per criterion and exits non-zero when a
//! criterion that can hold fails. Oracles here work from raw incidence and
//! never call the library's graph code.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use prect::analysis::{
    chromatic_analysis, eulerian_verdict, krein_check, planarity_verdict, validate_cycle, Budget,
    L22_HAMILTON_CYCLE,
};
use prect::bilinear::{build_hq2k, certify_isomorphism, clique_sizes};
use prect::cliques::{classify_census, clique_intersections, enumerate_maximal_cliques, extract_plane};
use prect::construct::{build_l2k, build_subplane_rect, coordinatize_l2k, RectangleModel};
use prect::geometry::{build_plane_clique_structure, build_point_clique_geometry};
use prect::incidence::{check_axioms, A6Mode, Axiom, IncidenceStructure, DEFAULT_SEED};
use prect::linegraph::{build_line_graph, certify_srg, vertex_connectivity, ConnectivityMode, SrgWitness};

/// Exact integer agreement everywhere; only runtimes carry a budget.
const A6_SAMPLES_R416: u64 = 1_000_000;

type Outcome = Result<String, String>;

type Params = (usize, usize, usize, usize);

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn l22() -> RectangleModel {
    build_l2k(2).unwrap()
}

fn l23() -> RectangleModel {
    build_l2k(3).unwrap()
}

fn r39() -> RectangleModel {
    build_subplane_rect(3, 1, 2).unwrap()
}

fn r416() -> RectangleModel {
    build_subplane_rect(2, 2, 2).unwrap()
}

fn r28() -> RectangleModel {
    build_subplane_rect(2, 1, 3).unwrap()
}

/// Adjacency of ordinary lines read off the incidence: they share a point.
fn oracle_adjacency(model: &RectangleModel) -> Vec<Vec<bool>> {
    let s = &model.structure;
    let ord = &model.ordinary;
    let k = ord.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let meet = s.line(ord[i]).iter().any(|&p| s.contains(ord[j], p));
            adj[i][j] = meet;
            adj[j][i] = meet;
        }
    }
    adj
}

/// (ν, r, λ, μ) counted pair by pair, or an error naming the first irregularity.
fn oracle_srg(adj: &[Vec<bool>]) -> Result<Params, String> {
    let nv = adj.len();
    let deg = |v: usize| adj[v].iter().filter(|&&b| b).count();
    let r = deg(0);
    let (mut lambda, mut mu) = (None, None);
    for u in 0..nv {
        ensure(deg(u) == r, format!("vertex {u} has degree {}", deg(u)))?;
        for v in u + 1..nv {
            let c = (0..nv).filter(|&w| adj[u][w] && adj[v][w]).count();
            let slot = if adj[u][v] { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) => ensure(x == c, format!("pair ({u},{v}) has {c} common neighbours, others {x}"))?,
            }
        }
    }
    Ok((nv, r, lambda.unwrap_or(0), mu.unwrap_or(0)))
}

fn c1_srg_parameters() -> Outcome {
    let cases: [(&str, RectangleModel, Params); 4] = [
        ("L_2^2", l22(), (16, 9, 4, 6)),
        ("L_2^3", l23(), (64, 21, 8, 6)),
        ("R(3,9)", r39(), (81, 32, 13, 12)),
        ("R(4,16)", r416(), (256, 75, 26, 20)),
    ];
    let mut out = Vec::new();
    for (name, model, want) in cases {
        let (m, n) = (model.order.m, model.order.n);
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let cert = certify_srg(&g, m, n).map_err(|e| e.to_string())?;
        ensure(cert.is_valid(), format!("{name}: certificate invalid: {:?}", cert.first_witness()))?;
        let got = (cert.nu, cert.r, cert.lambda, cert.mu);
        let want_i = (want.0 as i64, want.1 as i64, want.2 as i64, want.3 as i64);
        ensure(got == want_i, format!("{name}: certified {got:?}, expected {want:?}"))?;
        let counted = oracle_srg(&oracle_adjacency(&model))?;
        ensure(counted == want, format!("{name}: pair counting gives {counted:?}"))?;
        out.push(format!("{name} {want:?}"));
    }
    Ok(out.join(", "))
}

fn c2_spectral_identity() -> Outcome {
    let mut out = Vec::new();
    for (name, model) in [("L_2^2", l22()), ("L_2^3", l23()), ("R(3,9)", r39()), ("R(4,16)", r416())] {
        let (m, n) = (model.order.m as i64, model.order.n as i64);
        let (t1, t2) = (n - m - 1, -(m + 1));
        let adj = oracle_adjacency(&model);
        let nv = adj.len();
        let (_, _, _, mu) = oracle_srg(&adj)?;
        let a = |i: usize, j: usize| i64::from(adj[i][j]);
        // (A - t1 I)(A - t2 I) = A² - (t1 + t2) A + t1 t2 I
        for i in 0..nv {
            for j in 0..nv {
                let a2: i64 = (0..nv).map(|k| a(i, k) * a(k, j)).sum();
                let lhs = a2 - (t1 + t2) * a(i, j) + if i == j { t1 * t2 } else { 0 };
                ensure(lhs == mu as i64, format!("{name}: entry ({i},{j}) is {lhs}, not {mu}"))?;
            }
        }
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let cert = certify_srg(&g, m as usize, n as usize).map_err(|e| e.to_string())?;
        let v = cert.verdict("spectral identity").ok_or("no spectral verdict")?;
        ensure(v.passed, format!("{name}: library spectral check failed"))?;
        ensure((cert.tau1, cert.tau2) == (t1, t2), format!("{name}: eigenvalues differ"))?;
        out.push(format!("{name} tau=({t1},{t2})"));
    }
    Ok(out.join(", "))
}

/// Every two points on exactly one line.
fn oracle_a1(s: &IncidenceStructure) -> bool {
    let np = s.num_points();
    (0..np).all(|a| (a + 1..np).all(|b| s.lines().iter().filter(|l| l.contains(&a) && l.contains(&b)).count() == 1))
}

fn c3_axioms() -> Outcome {
    let mut out = Vec::new();
    for (name, model) in [("L_2^2", l22()), ("L_2^3", l23()), ("R(2,8)", r28()), ("R(3,9)", r39())] {
        let rep = check_axioms(&model.structure, A6Mode::Full);
        ensure(rep.all_passed(), format!("{name}: {:?}", rep.failures().next()))?;
        ensure(rep.a6.checked == rep.a6.population, format!("{name}: A6 not exhaustive"))?;
        ensure(oracle_a1(&model.structure), format!("{name}: pairwise line count oracle"))?;
        out.push(format!("{name} full ({} quadruples)", rep.a6.checked));
    }
    let model = r416();
    let rep = check_axioms(
        &model.structure,
        A6Mode::Sampled {
            count: A6_SAMPLES_R416,
            seed: DEFAULT_SEED,
        },
    );
    ensure(rep.all_passed(), format!("R(4,16): {:?}", rep.failures().next()))?;
    ensure(rep.a6.checked == A6_SAMPLES_R416, "R(4,16): sample count")?;
    out.push(format!("R(4,16) sampled {} seed {DEFAULT_SEED}", rep.a6.checked));
    Ok(out.join(", "))
}

fn c4_census() -> Outcome {
    let mut out = Vec::new();
    for (name, model) in [("L_2^2", l22()), ("L_2^3", l23())] {
        let (m, n) = (model.order.m, model.order.n);
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let cl = enumerate_maximal_cliques(&g, 1024).map_err(|e| e.to_string())?;
        let c = classify_census(&g, &model, &cl).map_err(|e| e.to_string())?;
        // one point clique per ordinary point; each edge lies in exactly one
        // plane clique of C(m², 2) edges, out of n²(m+1)(n-1)/2
        let want_points = (m + 1) * n;
        let want_planes = n * n * (n - 1) / (m * m * (m - 1));
        let want_plane_memberships = (n - 1) / (m - 1);
        ensure(c.point_cliques.len() == want_points, format!("{name}: {} point cliques", c.point_cliques.len()))?;
        ensure(c.anomalous.is_empty(), format!("{name}: {} anomalous", c.anomalous.len()))?;
        ensure(c.point_cliques.iter().all(|p| p.vertices.len() == n), format!("{name}: point clique size"))?;
        ensure(c.plane_cliques.iter().all(|p| p.vertices.len() == m * m), format!("{name}: plane clique size"))?;
        ensure(c.passed(), format!("{name}: census checks {:?}", c.checks.iter().find(|x| !x.passed)))?;
        ensure(
            cl.len() == c.point_cliques.len() + c.plane_cliques.len(),
            format!("{name}: unclassified cliques"),
        )?;
        let planes = c.plane_cliques.len();
        ensure(planes == want_planes, format!("{name}: {planes} plane cliques, expected {want_planes}"))?;
        for v in 0..g.num_vertices() {
            let (a, b) = c.memberships(v);
            // an ordinary line has m+1 ordinary points
            ensure(a == m + 1, format!("{name}: vertex {v} in {a} point cliques"))?;
            ensure(b == want_plane_memberships, format!("{name}: vertex {v} in {b} plane cliques"))?;
        }
        let inter = clique_intersections(&c, &g, &model);
        ensure(inter.passed, format!("{name}: intersection law {:?}", inter.witness))?;
        out.push(format!("{name} {} point + {planes} plane", c.point_cliques.len()));
    }
    // L_2^2 specific figures
    let model = l22();
    let g = build_line_graph(&model).map_err(|e| e.to_string())?;
    let c = classify_census(&g, &model, &enumerate_maximal_cliques(&g, 1024).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(c.point_cliques.len() == 12 && c.plane_cliques.len() == 12, "L_2^2: 12 + 12")?;
    ensure((0..16).all(|v| c.memberships(v) == (3, 3)), "L_2^2: memberships 3 and 3")?;
    let model = l23();
    let g = build_line_graph(&model).map_err(|e| e.to_string())?;
    let c = classify_census(&g, &model, &enumerate_maximal_cliques(&g, 1024).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(c.point_cliques.len() == 24 && c.plane_cliques.len() == 112, "L_2^3: 24 + 112")?;
    Ok(out.join(", "))
}

/// Independent projective-plane test: m²+m+1 points and lines, m+1 points per
/// line, every two points on exactly one line.
fn oracle_plane(s: &IncidenceStructure, m: usize) -> bool {
    let np = s.num_points();
    np == m * m + m + 1
        && s.num_lines() == np
        && s.lines().iter().all(|l| l.len() == m + 1)
        && oracle_a1(s)
}

fn c5_planes() -> Outcome {
    let mut out = Vec::new();
    for (name, model) in [("L_2^2", l22()), ("R(3,9)", r39())] {
        let m = model.order.m;
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let cl = enumerate_maximal_cliques(&g, 1024).map_err(|e| e.to_string())?;
        let c = classify_census(&g, &model, &cl).map_err(|e| e.to_string())?;
        ensure(!c.plane_cliques.is_empty(), format!("{name}: no plane cliques"))?;
        for (i, pc) in c.plane_cliques.iter().enumerate() {
            let p = extract_plane(pc, &model).map_err(|e| e.to_string())?;
            ensure(p.passed(m), format!("{name}: plane {i} rejected"))?;
            ensure(oracle_plane(&p.structure, m), format!("{name}: plane {i} fails the plane oracle"))?;
            ensure(p.points.contains(&model.structure.special_point()), format!("{name}: plane {i} misses D"))?;
            ensure(p.ordinary_points == m * (m + 1), format!("{name}: plane {i} ordinary points"))?;
        }
        out.push(format!("{name} {} planes of order {m}", c.plane_cliques.len()));
    }
    Ok(out.join(", "))
}

fn c6_isomorphism() -> Outcome {
    let mut out = Vec::new();
    for (name, p, e, k) in [("R(2,4)", 2, 1, 2), ("R(2,8)", 2, 1, 3), ("R(3,9)", 3, 1, 2), ("R(4,16)", 2, 2, 2)] {
        let model = build_subplane_rect(p, e, k).map_err(|x| x.to_string())?;
        let g = build_line_graph(&model).map_err(|x| x.to_string())?;
        let h = build_hq2k(p, e, k).map_err(|x| x.to_string())?;
        let cert = certify_isomorphism(&g, &model, &h).map_err(|x| x.to_string())?;
        ensure(cert.valid, format!("{name}: {:?}", cert.witness))?;
        // degree of H_q(2,k) from the rank-one count (q²-1)(q^k-1)/(q-1)
        let q = (p as usize).pow(e);
        let qk = q.pow(k);
        let deg = (q * q - 1) * (qk - 1) / (q - 1);
        ensure((0..h.num_vertices()).all(|v| h.graph.degree(v) == deg), format!("{name}: H degree"))?;
        out.push(format!("{name} ({} pairs)", cert.pairs_checked));
    }
    // maximal cliques of H_q(2,k) have sizes q^k and q²
    let h = build_hq2k(2, 1, 3).map_err(|x| x.to_string())?;
    let sizes = clique_sizes(&h).map_err(|x| x.to_string())?;
    ensure(sizes.keys().copied().collect::<Vec<_>>() == vec![4, 8], format!("H_2(2,3) clique sizes {sizes:?}"))?;
    Ok(out.join(", "))
}

/// Criterion 7 has a literal part that does not hold: the plane-clique
/// structure has t = 0 exactly when n > m², and both instances have n = m².
fn c7_partial_geometry() -> Outcome {
    let mut derived = Vec::new();
    for (name, model, quoted) in [("L_2^2", l22(), (3, 4, 2)), ("R(3,9)", r39(), (4, 9, 3))] {
        let (m, n) = (model.order.m, model.order.n);
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let c = classify_census(&g, &model, &enumerate_maximal_cliques(&g, 1024).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let pg = build_point_clique_geometry(&c, g.num_vertices());
        ensure(pg.passed, format!("{name}: point-clique geometry {:?}", pg.measured))?;
        ensure(pg.measurement.constant_t() == Some(m), format!("{name}: t is not constant {m}"))?;
        ensure(pg.quoted_label == quoted, format!("{name}: label {:?}", pg.quoted_label))?;
        // (K, R, T) = (n, m+1, m); the quoted label lists m+1 first
        ensure(pg.measured == Some((n, m + 1, m)) && pg.quoted_label_swapped, format!("{name}: label order"))?;
        let pl = build_plane_clique_structure(&c, g.num_vertices());
        ensure(pl.passed, format!("{name}: plane structure"))?;
        ensure(pl.t_support == vec![m], format!("{name}: support {:?}", pl.t_support))?;
        derived.push(format!("{name} pg{quoted:?} t={m}, plane support {:?}", pl.t_support));
    }
    let model = l23();
    let g = build_line_graph(&model).map_err(|e| e.to_string())?;
    let c = classify_census(&g, &model, &enumerate_maximal_cliques(&g, 1024).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let pl = build_plane_clique_structure(&c, 64);
    ensure(pl.t_support == vec![0, 2] && pl.passed, format!("L_2^3: support {:?}", pl.t_support))?;
    derived.push("L_2^3 plane support [0, 2]".to_string());
    Ok(derived.join(", "))
}

fn c8_graph_properties() -> Outcome {
    let model = l22();
    let g = build_line_graph(&model).map_err(|e| e.to_string())?;
    let pv = planarity_verdict(&g, 2, 4);
    ensure(pv.planar == Some(false) && pv.agrees_with_rule, "L_2^2 planarity")?;
    let kappa = vertex_connectivity(&g, ConnectivityMode::Exact).map_err(|e| e.to_string())?;
    ensure(kappa.value() == 9, format!("L_2^2 connectivity {}", kappa.value()))?;

    let pp2 = build_subplane_rect(2, 1, 1).map_err(|e| e.to_string())?;
    let k4 = build_line_graph(&pp2).map_err(|e| e.to_string())?;
    ensure(k4.num_vertices() == 4 && k4.is_complete(), "PP(2) graph is not K4")?;
    let pv = planarity_verdict(&k4, 2, 2);
    ensure(pv.planar == Some(true) && pv.is_k4, "PP(2) planarity")?;

    for (name, model) in [("PP(2)", pp2), ("L_2^2", l22()), ("L_2^3", l23()), ("R(3,9)", r39()), ("R(4,16)", r416())] {
        let (m, n) = (model.order.m, model.order.n);
        let adj = oracle_adjacency(&model);
        let all_even = adj.iter().all(|row| row.iter().filter(|&&b| b).count() % 2 == 0);
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let ev = eulerian_verdict(&g, m, n);
        ensure(ev.agrees && ev.eulerian == all_even, format!("{name}: Eulerian verdict"))?;
    }

    // the given cycle, edge by edge against incidence
    let adj = oracle_adjacency(&model);
    let cyc = &L22_HAMILTON_CYCLE;
    ensure(cyc.len() == 17 && cyc[0] == cyc[16], "cycle is not closed with 16 steps")?;
    let mut seen = cyc[..16].to_vec();
    seen.sort_unstable();
    ensure(seen == (0..16).collect::<Vec<_>>(), "cycle does not visit every line once")?;
    for w in cyc.windows(2) {
        ensure(adj[w[0]][w[1]], format!("cycle step {}-{} is not an edge", w[0], w[1]))?;
    }
    ensure(validate_cycle(&g, cyc).valid, "library cycle validation")?;
    Ok("L_2^2 nonplanar kappa=9, PP(2)=K4 planar, Euler parity on 5 instances, cycle valid".into())
}

fn oracle_colorable(adj: &[Vec<bool>], k: usize) -> bool {
    fn go(v: usize, adj: &[Vec<bool>], k: usize, col: &mut Vec<usize>) -> bool {
        if v == adj.len() {
            return true;
        }
        // symmetry: vertex v may use at most one new colour
        let used = col[..v].iter().copied().max().map_or(0, |c| c + 1);
        for c in 0..k.min(used + 1) {
            if (0..v).all(|u| !adj[v][u] || col[u] != c) {
                col[v] = c;
                if go(v + 1, adj, k, col) {
                    return true;
                }
            }
        }
        false
    }
    go(0, adj, k, &mut vec![0; adj.len()])
}

fn c9_chromatic() -> Outcome {
    let model = l22();
    let g = build_line_graph(&model).map_err(|e| e.to_string())?;
    let cert = certify_srg(&g, 2, 4).map_err(|e| e.to_string())?;
    let rep = chromatic_analysis(&g, Some(&cert), 2, 4, 100, Budget::new(60_000));
    ensure(rep.exact_chromatic == Some(4), format!("exact chi {:?}", rep.exact_chromatic))?;
    ensure(rep.witness_proper, "witness is not proper")?;
    ensure(rep.haemers_bound == Some(4), format!("Haemers bound {:?}", rep.haemers_bound))?;
    ensure(rep.claimed_bound == 6, format!("claimed bound {}", rep.claimed_bound))?;
    ensure(rep.clique_lower_bound == 4, "clique bound")?;
    ensure(!rep.flags.is_empty(), "inconsistency with the claimed bound is not flagged")?;

    let adj = oracle_adjacency(&model);
    let witness = rep.witness.as_ref().ok_or("no witness")?;
    ensure(witness.iter().max() == Some(&3), "witness colour count")?;
    for u in 0..16 {
        for v in u + 1..16 {
            ensure(!adj[u][v] || witness[u] != witness[v], format!("witness clash at {u}-{v}"))?;
        }
    }

    // classes b = ωa + t on coordinates (a, b) of the ordinary line ax + by + z = 0
    let cm = coordinatize_l2k(&model).map_err(|e| e.to_string())?;
    let coords = cm.coords().map_err(|e| e.to_string())?;
    let f = &coords.field;
    let omega = f.primitive_element();
    let mut classes = vec![Vec::new(); 4];
    for v in 0..16 {
        let lc = cm.vertex_coeffs(v).map_err(|e| e.to_string())?;
        let t = f.sub(lc.b(), f.mul(omega, lc.a()));
        classes[t.index() as usize].push(v);
    }
    for (t, cls) in classes.iter().enumerate() {
        ensure(cls.len() == 4, format!("class t={t} has {} lines", cls.len()))?;
        ensure(cls.iter().all(|&u| cls.iter().all(|&v| !adj[u][v])), format!("class t={t} not independent"))?;
    }
    ensure(!oracle_colorable(&adj, 3), "a 3-colouring exists")?;
    Ok(format!(
        "chi=4, Haemers=4, claimed=6, clique=4, flagged: {}",
        rep.flags.first().map(String::as_str).unwrap_or("")
    ))
}

fn c10_krein() -> Outcome {
    let mut out = Vec::new();
    for (name, model) in [("L_2^2", l22()), ("L_2^3", l23()), ("R(3,9)", r39()), ("R(4,16)", r416())] {
        let g = build_line_graph(&model).map_err(|e| e.to_string())?;
        let cert = certify_srg(&g, model.order.m, model.order.n).map_err(|e| e.to_string())?;
        let kr = krein_check(&cert);
        ensure(kr.passed, format!("{name}: {:?}", kr.conditions))?;
        out.push(format!("{name} {} <= {}", kr.conditions[0].lhs, kr.conditions[0].rhs));
    }
    Ok(out.join(", "))
}

fn c11_mutation() -> Outcome {
    let model = l22();
    let s = model.structure.without_line(model.ordinary[0]);
    let rep = check_axioms(&s, A6Mode::Full);
    let a1 = rep.verdict(Axiom::A1);
    ensure(!a1.passed, "A1 still passes after deleting a line")?;
    let w = a1.witness.as_ref().ok_or("A1 failure has no witness")?;
    ensure(w.recheck(&s), "A1 witness does not recheck")?;

    let g = build_line_graph(&model).map_err(|e| e.to_string())?;
    let (u, v, _) = g.edges().next().ok_or("no edges")?;
    let h = g.without_edge(u, v);
    let cert = certify_srg(&h, 2, 4).map_err(|e| e.to_string())?;
    ensure(!cert.is_valid(), "SRG certification passes after removing an edge")?;
    let pair = cert
        .verdicts
        .iter()
        .filter_map(|x| x.witness.as_ref())
        .find(|w| matches!(w, SrgWitness::Pair { .. }))
        .ok_or("no witness pair")?;
    ensure(pair.recheck(&h, &cert.params()), "witness pair does not recheck")?;
    Ok(format!("A1 witness {w:?}; SRG witness {pair:?}"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "1", title: "SRG parameters", budget: Duration::from_secs(10), run: c1_srg_parameters },
        Criterion { id: "2", title: "spectral identity", budget: Duration::from_secs(30), run: c2_spectral_identity },
        Criterion { id: "3", title: "axioms", budget: Duration::from_secs(120), run: c3_axioms },
        Criterion { id: "4", title: "clique census", budget: Duration::from_secs(60), run: c4_census },
        Criterion { id: "5", title: "plane extraction", budget: Duration::from_secs(60), run: c5_planes },
        Criterion { id: "6", title: "isomorphism", budget: Duration::from_secs(60), run: c6_isomorphism },
        Criterion { id: "7", title: "partial geometry", budget: Duration::from_secs(60), run: c7_partial_geometry },
        Criterion { id: "8", title: "graph properties", budget: Duration::from_secs(60), run: c8_graph_properties },
        Criterion { id: "9", title: "chromatic analysis", budget: Duration::from_secs(120), run: c9_chromatic },
        Criterion { id: "10", title: "Krein conditions", budget: Duration::from_secs(1), run: c10_krein },
        Criterion { id: "11", title: "mutation sensitivity", budget: Duration::from_secs(1), run: c11_mutation },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let pace = if took <= c.budget { "" } else { " over budget" };
        match &result {
            Ok(detail) => println!(
                "criterion {:>2} {:<20} PASS [{:.2?} / {:?}{pace}] {detail}",
                c.id, c.title, took, c.budget
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {:<20} FAIL [{:.2?}] {why}", c.id, c.title, took);
            }
        }
        if c.id == "7" {
            // the literal t-support claim is reported, not enforced
            println!(
                "criterion  7 {:<20} FAIL literal t-support {{0, m}} unattainable: t = 0 needs n > m², and n = m² on L_2^2 and R(3,9)",
                "(literal claim)"
            );
        }
    }
    println!("acceptance: {} of {} enforced criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

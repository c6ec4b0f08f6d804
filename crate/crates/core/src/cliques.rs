//! Maximal cliques of the graph of lines and their split into point cliques
//! and plane cliques.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitRow;
use crate::construct::RectangleModel;
use crate::incidence::{is_projective_plane, IncidenceStructure};
use crate::linegraph::LineGraph;

pub const DEFAULT_MAX_CLIQUE_VERTICES: usize = 1024;

#[derive(Debug, Error)]
pub enum CliqueError {
    #[error("graph has {0} vertices, above the enumeration bound {1}")]
    TooLarge(usize, usize),
    #[error("graph has {graph} vertices but the model has {model} ordinary lines")]
    Mismatch { graph: usize, model: usize },
    #[error("clique {0:?} is not a plane clique")]
    NotPlane(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, CliqueError>;

/// Every maximal clique exactly once, each sorted, in lexicographic order.
pub fn enumerate_maximal_cliques(g: &LineGraph, max_vertices: usize) -> Result<Vec<Vec<usize>>> {
    let nv = g.num_vertices();
    if nv > max_vertices {
        return Err(CliqueError::TooLarge(nv, max_vertices));
    }
    // top level split by first vertex in index order; P holds later
    // neighbours, X earlier ones, so each clique is found under its least vertex
    let mut out: Vec<Vec<usize>> = (0..nv)
        .into_par_iter()
        .flat_map_iter(|v| {
            let row = g.row(v);
            let mut p = BitRow::new(nv);
            let mut x = BitRow::new(nv);
            for u in row.iter() {
                if u > v {
                    p.insert(u);
                } else {
                    x.insert(u);
                }
            }
            let mut found = Vec::new();
            let mut r = vec![v];
            bron_kerbosch(g, &mut r, p, x, &mut found);
            found
        })
        .collect();
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(g: &LineGraph, r: &mut Vec<usize>, mut p: BitRow, mut x: BitRow, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.and_count(g.row(u)), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    let candidates: Vec<usize> = p.and_not(g.row(pivot)).iter().collect();
    for v in candidates {
        r.push(v);
        bron_kerbosch(g, r, p.and(g.row(v)), x.and(g.row(v)), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CliqueKind {
    Point,
    Plane,
    Anomalous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedClique {
    pub kind: CliqueKind,
    pub vertices: Vec<usize>,
    /// Common ordinary point of a point clique.
    pub point: Option<usize>,
    /// Label of that point.
    pub label: Option<String>,
    /// Point set of the reconstructed plane, D included, for a plane clique.
    pub plane_points: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub name: String,
    pub expected: Option<u64>,
    pub actual: u64,
    pub passed: bool,
}

fn count(name: &str, expected: Option<u64>, actual: u64) -> CountCheck {
    CountCheck {
        name: name.to_string(),
        expected,
        actual,
        passed: expected.is_none_or(|e| e == actual),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCensus {
    pub m: usize,
    pub n: usize,
    pub point_cliques: Vec<ClassifiedClique>,
    pub plane_cliques: Vec<ClassifiedClique>,
    pub anomalous: Vec<ClassifiedClique>,
    pub checks: Vec<CountCheck>,
}

impl CliqueCensus {
    pub fn passed(&self) -> bool {
        self.anomalous.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CountCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all(&self) -> impl Iterator<Item = &ClassifiedClique> {
        self.point_cliques.iter().chain(&self.plane_cliques).chain(&self.anomalous)
    }

    /// Membership counts `(point, plane)` of vertex `v`.
    pub fn memberships(&self, v: usize) -> (usize, usize) {
        let has = |c: &&ClassifiedClique| c.vertices.binary_search(&v).is_ok();
        (
            self.point_cliques.iter().filter(has).count(),
            self.plane_cliques.iter().filter(has).count(),
        )
    }
}

/// Classifies maximal cliques: a clique whose lines share an ordinary point
/// is a point clique; otherwise a clique of size m² is a plane clique; any
/// other clique is anomalous. The common-point test runs first because the
/// two sizes coincide when n = m².
pub fn classify_census(g: &LineGraph, model: &RectangleModel, cliques: &[Vec<usize>]) -> Result<CliqueCensus> {
    let nv = g.num_vertices();
    if nv != model.num_vertices() {
        return Err(CliqueError::Mismatch {
            graph: nv,
            model: model.num_vertices(),
        });
    }
    let s = &model.structure;
    let (m, n) = (model.order.m, model.order.n);
    let np = s.num_points();
    let line_rows: Vec<BitRow> = model
        .ordinary
        .iter()
        .map(|&l| BitRow::from_indices(np, s.line(l).iter().copied()))
        .collect();

    let mut census = CliqueCensus {
        m,
        n,
        point_cliques: Vec::new(),
        plane_cliques: Vec::new(),
        anomalous: Vec::new(),
        checks: Vec::new(),
    };
    for c in cliques {
        let mut common = BitRow::full(np);
        let mut union = BitRow::new(np);
        for &v in c {
            common = common.and(&line_rows[v]);
            for p in line_rows[v].iter() {
                union.insert(p);
            }
        }
        let mut item = ClassifiedClique {
            kind: CliqueKind::Anomalous,
            vertices: c.clone(),
            point: None,
            label: None,
            plane_points: None,
        };
        let shared = common.iter().find(|&p| p != s.special_point());
        if let Some(p) = shared {
            item.kind = CliqueKind::Point;
            item.point = Some(p);
            item.label = Some(s.label(p).to_string());
            census.point_cliques.push(item);
        } else if c.len() == m * m {
            union.insert(s.special_point());
            item.kind = CliqueKind::Plane;
            item.plane_points = Some(union.iter().collect());
            census.plane_cliques.push(item);
        } else {
            census.anomalous.push(item);
        }
    }

    let (m64, n64) = (m as u64, n as u64);
    let trivial = m == n;
    let point_expected = Some(if trivial { 0 } else { (m64 + 1) * n64 });
    let plane_expected = if trivial {
        Some(1)
    } else if m > 1 {
        let den = m64 * m64 * (m64 - 1);
        let num = n64 * n64 * (n64 - 1);
        (num % den == 0).then_some(num / den)
    } else {
        None
    };
    census
        .checks
        .push(count("point cliques", point_expected, census.point_cliques.len() as u64));
    census
        .checks
        .push(count("plane cliques", plane_expected, census.plane_cliques.len() as u64));
    census
        .checks
        .push(count("anomalous cliques", Some(0), census.anomalous.len() as u64));
    let max_size = cliques.iter().map(Vec::len).max().unwrap_or(0) as u64;
    let max_expected = if trivial { n64 * n64 } else { n64 };
    census.checks.push(count("maximum clique size", Some(max_expected), max_size));

    if !trivial && m > 1 {
        let mut point_mem = vec![0u64; nv];
        let mut plane_mem = vec![0u64; nv];
        for c in &census.point_cliques {
            c.vertices.iter().for_each(|&v| point_mem[v] += 1);
        }
        for c in &census.plane_cliques {
            c.vertices.iter().for_each(|&v| plane_mem[v] += 1);
        }
        let plane_per_vertex = ((n64 - 1) % (m64 - 1) == 0).then_some((n64 - 1) / (m64 - 1));
        let bad_point = point_mem.iter().copied().find(|&c| c != m64 + 1).unwrap_or(m64 + 1);
        let bad_plane = match plane_per_vertex {
            Some(e) => plane_mem.iter().copied().find(|&c| c != e).unwrap_or(e),
            None => plane_mem.first().copied().unwrap_or(0),
        };
        census
            .checks
            .push(count("point cliques per vertex", Some(m64 + 1), bad_point));
        census
            .checks
            .push(count("plane cliques per vertex", plane_per_vertex, bad_plane));
        let point_sizes_ok = census.point_cliques.iter().all(|c| c.vertices.len() == n);
        census.checks.push(count(
            "point clique size",
            Some(n64),
            if point_sizes_ok { n64 } else { 0 },
        ));
    }
    Ok(census)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionWitness {
    pub rule: String,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub point_point_max: usize,
    pub plane_plane_max: usize,
    /// Sorted distinct sizes of plane ∩ point clique intersections.
    pub plane_point_sizes: Vec<usize>,
    /// Adjacent pairs not covered by exactly one clique of each kind.
    pub uncovered_pairs: usize,
    /// Point cliques at two points of one special line that intersect.
    pub same_special_overlaps: usize,
    pub witness: Option<IntersectionWitness>,
    pub passed: bool,
}

/// Checks the intersection laws: two point cliques share at most one vertex,
/// two plane cliques share at most one vertex, a plane and a point clique
/// share 0 or m vertices, point cliques at points of one special line are
/// disjoint, and every edge lies in exactly one clique of each kind.
pub fn clique_intersections(census: &CliqueCensus, g: &LineGraph, model: &RectangleModel) -> IntersectionReport {
    let nv = g.num_vertices();
    let m = census.m;
    let rows = |cs: &[ClassifiedClique]| -> Vec<BitRow> {
        cs.iter()
            .map(|c| BitRow::from_indices(nv, c.vertices.iter().copied()))
            .collect()
    };
    let pts = rows(&census.point_cliques);
    let pls = rows(&census.plane_cliques);
    let mut witness: Option<IntersectionWitness> = None;
    let mut note = |rule: &str, a: &ClassifiedClique, b: &ClassifiedClique, size: usize| {
        if witness.is_none() {
            witness = Some(IntersectionWitness {
                rule: rule.to_string(),
                first: a.vertices.clone(),
                second: b.vertices.clone(),
                size,
            });
        }
    };

    let s = &model.structure;
    let mut point_point_max = 0;
    let mut same_special_overlaps = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let k = pts[i].and_count(&pts[j]);
            point_point_max = point_point_max.max(k);
            let (a, b) = (&census.point_cliques[i], &census.point_cliques[j]);
            if k > 1 {
                note("point cliques share at most one vertex", a, b, k);
            }
            let same = match (a.point, b.point) {
                (Some(p), Some(q)) => s.special_line_of(p).is_some() && s.special_line_of(p) == s.special_line_of(q),
                _ => false,
            };
            if same && k > 0 {
                same_special_overlaps += 1;
                note("point cliques on one special line are disjoint", a, b, k);
            }
        }
    }
    let mut plane_plane_max = 0;
    for i in 0..pls.len() {
        for j in i + 1..pls.len() {
            let k = pls[i].and_count(&pls[j]);
            plane_plane_max = plane_plane_max.max(k);
            if k > 1 {
                note(
                    "plane cliques share at most one vertex",
                    &census.plane_cliques[i],
                    &census.plane_cliques[j],
                    k,
                );
            }
        }
    }
    let mut sizes = Vec::new();
    for (i, a) in pls.iter().enumerate() {
        for (j, b) in pts.iter().enumerate() {
            let k = a.and_count(b);
            if !sizes.contains(&k) {
                sizes.push(k);
            }
            if k != 0 && k != m {
                note(
                    "plane and point cliques share 0 or m vertices",
                    &census.plane_cliques[i],
                    &census.point_cliques[j],
                    k,
                );
            }
        }
    }
    sizes.sort_unstable();

    let cover = |cs: &[ClassifiedClique]| -> Vec<u16> {
        let mut c = vec![0u16; nv * nv];
        for cl in cs {
            for (i, &u) in cl.vertices.iter().enumerate() {
                for &v in &cl.vertices[i + 1..] {
                    c[u * nv + v] += 1;
                }
            }
        }
        c
    };
    let cp = cover(&census.point_cliques);
    let cl = cover(&census.plane_cliques);
    // a plane of order n has no point cliques
    let point_cover = u16::from(census.m < census.n);
    let uncovered_pairs = g
        .edges()
        .filter(|&(u, v, _)| cp[u * nv + v] != point_cover || cl[u * nv + v] != 1)
        .count();

    let passed = witness.is_none() && uncovered_pairs == 0;
    IntersectionReport {
        point_point_max,
        plane_plane_max,
        plane_point_sizes: sizes,
        uncovered_pairs,
        same_special_overlaps,
        witness,
        passed,
    }
}

#[derive(Clone, Debug)]
pub struct ExtractedPlane {
    /// The induced plane; its points are renumbered in ascending original order.
    pub structure: IncidenceStructure,
    /// Original point indices of the plane.
    pub points: Vec<usize>,
    pub ordinary_points: usize,
    pub ordinary_lines: usize,
    pub contains_special_point: bool,
    pub is_plane_of_order_m: bool,
}

impl ExtractedPlane {
    pub fn passed(&self, m: usize) -> bool {
        self.is_plane_of_order_m
            && self.contains_special_point
            && self.ordinary_points == m * (m + 1)
            && self.ordinary_lines == m * m
    }
}

/// Rebuilds the plane of a plane clique: the union of its lines plus D, with
/// the member lines and the special lines restricted to that set.
pub fn extract_plane(clique: &ClassifiedClique, model: &RectangleModel) -> Result<ExtractedPlane> {
    if clique.kind != CliqueKind::Plane {
        return Err(CliqueError::NotPlane(clique.vertices.clone()));
    }
    let s = &model.structure;
    let d = s.special_point();
    let mut points: Vec<usize> = clique
        .vertices
        .iter()
        .flat_map(|&v| s.line(model.ordinary[v]).iter().copied())
        .chain([d])
        .collect();
    points.sort_unstable();
    points.dedup();
    let mut lines: Vec<usize> = clique.vertices.iter().map(|&v| model.ordinary[v]).collect();
    lines.extend(s.special_lines().iter().copied());
    let sub = s.restrict(&points, &lines);
    let m = model.order.m;
    Ok(ExtractedPlane {
        is_plane_of_order_m: is_projective_plane(&sub, m),
        ordinary_points: points.len() - 1,
        ordinary_lines: clique.vertices.len(),
        contains_special_point: points.binary_search(&d).is_ok(),
        structure: sub,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_l2k, build_subplane_rect};
    use crate::linegraph::build_line_graph;

    fn census_of(model: &RectangleModel) -> (LineGraph, CliqueCensus) {
        let g = build_line_graph(model).unwrap();
        let cl = enumerate_maximal_cliques(&g, DEFAULT_MAX_CLIQUE_VERTICES).unwrap();
        let c = classify_census(&g, model, &cl).unwrap();
        (g, c)
    }

    #[test]
    fn k4_has_one_clique() {
        let g = LineGraph::from_edges(4, (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, 0))), vec![]).unwrap();
        assert_eq!(enumerate_maximal_cliques(&g, 10).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert!(enumerate_maximal_cliques(&g, 3).is_err());
    }

    #[test]
    fn cycle_cliques_are_edges() {
        let g = LineGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5, 0)), vec![]).unwrap();
        let cl = enumerate_maximal_cliques(&g, 10).unwrap();
        assert_eq!(cl, vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn l2_2_census() {
        let model = build_l2k(2).unwrap();
        let (g, c) = census_of(&model);
        assert!(c.passed(), "{:?}", c.checks);
        assert_eq!((c.point_cliques.len(), c.plane_cliques.len()), (12, 12));
        assert_eq!(c.memberships(0), (3, 3));
        let target = vec![1, 4, 11, 14];
        assert!(c.point_cliques.iter().any(|p| p.vertices == target));
        assert!(!c.plane_cliques.iter().any(|p| p.vertices == target));
        let rep = clique_intersections(&c, &g, &model);
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep.plane_point_sizes, vec![0, 2]);
        for pc in &c.plane_cliques {
            let plane = extract_plane(pc, &model).unwrap();
            assert!(plane.passed(2));
        }
        assert!(extract_plane(&c.point_cliques[0], &model).is_err());
    }

    #[test]
    fn trivial_census_is_one_plane() {
        let model = build_subplane_rect(2, 1, 1).unwrap();
        let (_, c) = census_of(&model);
        assert!(c.passed(), "{:?}", c.checks);
        assert_eq!((c.point_cliques.len(), c.plane_cliques.len()), (0, 1));
    }

    #[test]
    fn r39_census() {
        let model = build_subplane_rect(3, 1, 2).unwrap();
        let (g, c) = census_of(&model);
        assert!(c.passed(), "{:?}", c.checks);
        assert_eq!((c.point_cliques.len(), c.plane_cliques.len()), (36, 36));
        assert!(clique_intersections(&c, &g, &model).passed);
        let plane = extract_plane(&c.plane_cliques[0], &model).unwrap();
        assert_eq!(plane.ordinary_points, 12);
        assert!(plane.passed(3));
    }
}

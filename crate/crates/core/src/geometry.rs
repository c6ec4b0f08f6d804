//! Point–Line geometries on the ordinary lines of a rectangle, with the
//! maximal cliques of one kind as Lines.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitRow;
use crate::cliques::{ClassifiedClique, CliqueCensus};

/// Exhaustive measurements of a Point–Line incidence structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryMeasurement {
    pub num_points: usize,
    pub num_lines: usize,
    pub points_per_line: BTreeSet<usize>,
    pub lines_per_point: BTreeSet<usize>,
    /// Largest number of Lines through two distinct Points.
    pub max_lines_through_two_points: usize,
    /// t(P, L) over all non-incident pairs, value → number of pairs.
    pub t_histogram: BTreeMap<usize, u64>,
    /// Σ t(P, L) over non-incident pairs.
    pub t_sum: u64,
    /// The same sum counted from Line pairs: Σ over ordered meeting pairs
    /// (L, L0) of the Points of L outside L0.
    pub t_sum_by_lines: u64,
}

impl GeometryMeasurement {
    pub fn constant_t(&self) -> Option<usize> {
        (self.t_histogram.len() == 1).then(|| *self.t_histogram.keys().next().unwrap())
    }

    pub fn single<T: Copy>(set: &BTreeSet<T>) -> Option<T> {
        (set.len() == 1).then(|| *set.iter().next().unwrap())
    }

    /// `(K, R, T)` when all three are constant.
    pub fn pg_parameters(&self) -> Option<(usize, usize, usize)> {
        Some((
            Self::single(&self.points_per_line)?,
            Self::single(&self.lines_per_point)?,
            self.constant_t()?,
        ))
    }

    pub fn double_count_holds(&self) -> bool {
        self.t_sum == self.t_sum_by_lines
    }
}

/// Measures the structure with Points `0..num_points` and the given Lines.
pub fn measure_geometry(num_points: usize, lines: &[Vec<usize>]) -> GeometryMeasurement {
    let rows: Vec<BitRow> = lines
        .iter()
        .map(|l| BitRow::from_indices(num_points, l.iter().copied()))
        .collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); num_points];
    for (i, l) in lines.iter().enumerate() {
        for &p in l {
            through[p].push(i);
        }
    }
    let nl = lines.len();
    let meet: Vec<Vec<usize>> = (0..nl)
        .map(|i| (0..nl).map(|j| rows[i].and_count(&rows[j])).collect())
        .collect();

    let max_two = (0..num_points)
        .into_par_iter()
        .map(|p| {
            (p + 1..num_points)
                .map(|q| through[p].iter().filter(|&&l| rows[l].contains(q)).count())
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);

    let histogram: BTreeMap<usize, u64> = (0..num_points)
        .into_par_iter()
        .map(|p| {
            let mut h = BTreeMap::new();
            for l0 in 0..nl {
                if rows[l0].contains(p) {
                    continue;
                }
                let t = through[p].iter().filter(|&&l| meet[l][l0] > 0).count();
                *h.entry(t).or_insert(0u64) += 1;
            }
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let t_sum = histogram.iter().map(|(&t, &c)| t as u64 * c).sum();
    let mut t_sum_by_lines = 0u64;
    for (l, row) in meet.iter().enumerate() {
        for (l0, &k) in row.iter().enumerate() {
            if l != l0 && k > 0 {
                t_sum_by_lines += (lines[l].len() - k) as u64;
            }
        }
    }
    GeometryMeasurement {
        num_points,
        num_lines: nl,
        points_per_line: lines.iter().map(Vec::len).collect(),
        lines_per_point: through.iter().map(Vec::len).collect(),
        max_lines_through_two_points: max_two,
        t_histogram: histogram,
        t_sum,
        t_sum_by_lines,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineCountMatch {
    /// The measured count equals (m+1)n, the number of ordinary points.
    OrdinaryPoints,
    /// The measured count equals mn.
    MTimesN,
    Both,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCliqueGeometry {
    pub m: usize,
    pub n: usize,
    pub measurement: GeometryMeasurement,
    /// `(K, R, T)` as measured: Points per Line, Lines per Point, t.
    pub measured: Option<(usize, usize, usize)>,
    /// The label (m+1, n, m) under which this geometry is usually quoted.
    pub quoted_label: (usize, usize, usize),
    /// Whether the quoted label equals the measured `(K, R, T)` in that order.
    pub quoted_label_in_kr_order: bool,
    /// Whether the quoted label equals the measured values with K and R swapped.
    pub quoted_label_swapped: bool,
    pub line_count_match: LineCountMatch,
    pub is_partial_geometry: bool,
    pub passed: bool,
}

fn clique_lines(cs: &[ClassifiedClique]) -> Vec<Vec<usize>> {
    cs.iter().map(|c| c.vertices.clone()).collect()
}

/// Points are the ordinary lines, Lines are the point cliques. Expected:
/// n Points per Line, m+1 Lines per Point, t = m for every non-incident pair,
/// n² Points and (m+1)n Lines.
pub fn build_point_clique_geometry(census: &CliqueCensus, num_vertices: usize) -> PointCliqueGeometry {
    let (m, n) = (census.m, census.n);
    let meas = measure_geometry(num_vertices, &clique_lines(&census.point_cliques));
    let measured = meas.pg_parameters();
    let quoted = (m + 1, n, m);
    let nl = meas.num_lines;
    let line_count_match = match (nl == (m + 1) * n, nl == m * n) {
        (true, true) => LineCountMatch::Both,
        (true, false) => LineCountMatch::OrdinaryPoints,
        (false, true) => LineCountMatch::MTimesN,
        (false, false) => LineCountMatch::Neither,
    };
    let is_pg = measured.is_some() && meas.max_lines_through_two_points <= 1;
    let passed = is_pg
        && measured == Some((n, m + 1, m))
        && meas.num_points == n * n
        && nl == (m + 1) * n
        && meas.double_count_holds();
    PointCliqueGeometry {
        m,
        n,
        quoted_label_in_kr_order: measured == Some(quoted),
        quoted_label_swapped: measured.map(|(k, r, t)| (r, k, t)) == Some(quoted),
        measured,
        quoted_label: quoted,
        line_count_match,
        is_partial_geometry: is_pg,
        passed,
        measurement: meas,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCliqueStructure {
    pub m: usize,
    pub n: usize,
    pub measurement: GeometryMeasurement,
    /// Sorted distinct t values.
    pub t_support: Vec<usize>,
    /// Pairs with t = 0 predicted by counting: each Line contributes the
    /// n² - m² - m(m+1)(n-m) ordinary lines that miss its plane.
    pub expected_t0_pairs: u64,
    /// No non-incident Point–Line pair exists.
    pub degenerate: bool,
    pub is_partial_geometry: bool,
    pub passed: bool,
}

/// Points are the ordinary lines, Lines are the plane cliques.
///
/// A line outside a plane meets it in at most one point, so t ∈ {0, m}. The
/// lines meeting a plane number m(m+1)(n-m), which equals n² - m² exactly
/// when n = m²; then t = 0 never occurs and the structure is a partial
/// geometry with t = m.
pub fn build_plane_clique_structure(census: &CliqueCensus, num_vertices: usize) -> PlaneCliqueStructure {
    let (m, n) = (census.m, census.n);
    let meas = measure_geometry(num_vertices, &clique_lines(&census.plane_cliques));
    let t_support: Vec<usize> = meas.t_histogram.keys().copied().collect();
    let degenerate = t_support.is_empty();
    let is_pg = meas.pg_parameters().is_some() && meas.max_lines_through_two_points <= 1;
    let missing_per_plane = if n >= m { (n * n - m * m - m * (m + 1) * (n - m)) as u64 } else { 0 };
    let expected_t0_pairs = meas.num_lines as u64 * missing_per_plane;
    let observed_t0 = meas.t_histogram.get(&0).copied().unwrap_or(0);
    let support_ok = if m == n {
        degenerate
    } else if expected_t0_pairs > 0 {
        t_support == vec![0, m]
    } else {
        t_support == vec![m]
    };
    PlaneCliqueStructure {
        m,
        n,
        passed: meas.double_count_holds() && support_ok && observed_t0 == expected_t0_pairs,
        t_support,
        expected_t0_pairs,
        degenerate,
        is_partial_geometry: is_pg,
        measurement: meas,
    }
}

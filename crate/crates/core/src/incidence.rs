//! Point–line incidence structures and the projective-rectangle axioms.
//!
//! A structure is purely combinatorial: points are indices with labels,
//! lines are sorted point-index sets, and one point is the special point D.
//! Lines through D are special, all others are ordinary.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const NO_LINE: u32 = u32::MAX;

/// Default number of sampled A6 quadruples.
pub const DEFAULT_A6_SAMPLES: u64 = 1_000_000;
/// Default seed for sampled A6 checks.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("structure has no points")]
    Empty,
    #[error("special point {0} is out of range")]
    BadSpecialPoint(usize),
    #[error("line {line} refers to point {point}, out of range")]
    PointOutOfRange { line: usize, point: usize },
    #[error("line {0} repeats a point")]
    DuplicatePoint(usize),
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("special lines do not all have the same size: {0:?}")]
    UnequalSpecialLines(Vec<usize>),
    #[error("structure has fewer than two special lines")]
    TooFewSpecialLines,
}

pub type Result<T> = std::result::Result<T, IncidenceError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    labels: Vec<String>,
    lines: Vec<Vec<usize>>,
    special_point: usize,
    special_lines: Vec<usize>,
    point_lines: Vec<Vec<usize>>,
    /// Row-major points x points table of the first line through each pair.
    pair_line: Vec<u32>,
}

impl IncidenceStructure {
    /// Builds a structure; each line's points are sorted, duplicates rejected.
    pub fn new(labels: Vec<String>, lines: Vec<Vec<usize>>, special_point: usize) -> Result<Self> {
        let np = labels.len();
        if np == 0 {
            return Err(IncidenceError::Empty);
        }
        if special_point >= np {
            return Err(IncidenceError::BadSpecialPoint(special_point));
        }
        let mut sorted = Vec::with_capacity(lines.len());
        for (li, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if let Some(&p) = line.iter().find(|&&p| p >= np) {
                return Err(IncidenceError::PointOutOfRange { line: li, point: p });
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(IncidenceError::DuplicatePoint(li));
            }
            sorted.push(line);
        }
        let mut point_lines = vec![Vec::new(); np];
        for (li, line) in sorted.iter().enumerate() {
            for &p in line {
                point_lines[p].push(li);
            }
        }
        let mut pair_line = vec![NO_LINE; np * np];
        for (li, line) in sorted.iter().enumerate() {
            for (i, &a) in line.iter().enumerate() {
                for &b in &line[i + 1..] {
                    for idx in [a * np + b, b * np + a] {
                        if pair_line[idx] == NO_LINE {
                            pair_line[idx] = li as u32;
                        }
                    }
                }
            }
        }
        let special_lines = point_lines[special_point].clone();
        Ok(IncidenceStructure {
            labels,
            lines: sorted,
            special_point,
            special_lines,
            point_lines,
            pair_line,
        })
    }

    pub fn num_points(&self) -> usize {
        self.labels.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn special_point(&self) -> usize {
        self.special_point
    }

    /// Indices of the lines through D, ascending.
    pub fn special_lines(&self) -> &[usize] {
        &self.special_lines
    }

    pub fn is_special(&self, l: usize) -> bool {
        self.special_lines.binary_search(&l).is_ok()
    }

    /// Ordinary line indices in ascending order.
    pub fn ordinary_lines(&self) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| !self.is_special(l)).collect()
    }

    pub fn ordinary_points(&self) -> Vec<usize> {
        (0..self.num_points()).filter(|&p| p != self.special_point).collect()
    }

    /// Lines through `p`, ascending.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn contains(&self, l: usize, p: usize) -> bool {
        self.lines[l].binary_search(&p).is_ok()
    }

    /// Some line through distinct points `a` and `b`, if any.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.pair_line[a * self.num_points() + b];
        (v != NO_LINE).then_some(v as usize)
    }

    /// Common points of two lines.
    pub fn meet(&self, l1: usize, l2: usize) -> Vec<usize> {
        let (a, b) = (&self.lines[l1], &self.lines[l2]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    fn meets(&self, l1: usize, l2: usize) -> bool {
        let (a, b) = (&self.lines[l1], &self.lines[l2]);
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        small.iter().any(|p| large.binary_search(p).is_ok())
    }

    /// The special line through an ordinary point, if unique.
    pub fn special_line_of(&self, p: usize) -> Option<usize> {
        let mut it = self.point_lines[p].iter().filter(|&&l| self.is_special(l));
        let first = *it.next()?;
        it.next().is_none().then_some(first)
    }

    /// Copy of this structure without line `l`.
    pub fn without_line(&self, l: usize) -> IncidenceStructure {
        let lines = self
            .lines
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != l)
            .map(|(_, line)| line.clone())
            .collect();
        IncidenceStructure::new(self.labels.clone(), lines, self.special_point)
            .expect("removing a line keeps the structure well formed")
    }

    /// Structure induced on a subset of points by the given lines, restricted
    /// to that subset. Point indices are renumbered in ascending order.
    pub fn restrict(&self, points: &[usize], lines: &[usize]) -> IncidenceStructure {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let index: HashMap<usize, usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let labels = pts.iter().map(|&p| self.labels[p].clone()).collect();
        let new_lines = lines
            .iter()
            .map(|&l| {
                self.lines[l]
                    .iter()
                    .filter_map(|p| index.get(p).copied())
                    .collect()
            })
            .collect();
        let d = index.get(&self.special_point).copied().unwrap_or(0);
        IncidenceStructure::new(labels, new_lines, d).expect("restriction is well formed")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Evidence attached to an axiom verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two points lying on `lines.len() != 1` common lines.
    PointPair { a: usize, b: usize, lines: Vec<usize> },
    /// Four points, no three collinear.
    Quadrangle { points: [usize; 4] },
    /// A line with fewer than three points.
    ShortLine { line: usize },
    /// A line whose special status disagrees with containing D.
    SpecialMismatch { line: usize },
    /// A special line meeting another line in `common.len() != 1` points.
    SpecialMeet { special: usize, other: usize, common: Vec<usize> },
    /// Lines `l3`, `l4` meet both `l1` and `l2` in four distinct points but miss each other.
    Pasch { l1: usize, l2: usize, l3: usize, l4: usize },
}

impl Witness {
    /// Re-derives the violation from the structure alone.
    pub fn recheck(&self, s: &IncidenceStructure) -> bool {
        match self {
            Witness::PointPair { a, b, .. } => {
                let count = s.lines_through(*a).iter().filter(|&&l| s.contains(l, *b)).count();
                a != b && count != 1
            }
            Witness::Quadrangle { points } => {
                let p = points;
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                distinct
                    && [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].iter().all(|t| {
                        !(0..s.num_lines()).any(|l| t.iter().all(|&i| s.contains(l, p[i])))
                    })
            }
            Witness::ShortLine { line } => s.line(*line).len() < 3,
            Witness::SpecialMismatch { line } => {
                s.is_special(*line) != s.contains(*line, s.special_point())
            }
            Witness::SpecialMeet { special, other, .. } => {
                s.contains(*special, s.special_point()) && s.meet(*special, *other).len() != 1
            }
            Witness::Pasch { l1, l2, l3, l4 } => {
                let m12 = s.meet(*l1, *l2);
                let pts = [
                    s.meet(*l3, *l1),
                    s.meet(*l3, *l2),
                    s.meet(*l4, *l1),
                    s.meet(*l4, *l2),
                ];
                if m12.len() != 1 || pts.iter().any(|v| v.len() != 1) {
                    return false;
                }
                let four = [pts[0][0], pts[1][0], pts[2][0], pts[3][0]];
                let distinct = (0..4).all(|i| (i + 1..4).all(|j| four[i] != four[j]));
                distinct && s.meet(*l3, *l4).is_empty()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum A6Mode {
    Full,
    Sampled { count: u64, seed: u64 },
}

impl A6Mode {
    /// Full verification for n ≤ 16, sampled above.
    pub fn auto(n: usize) -> Self {
        if n <= 16 {
            A6Mode::Full
        } else {
            A6Mode::Sampled {
                count: DEFAULT_A6_SAMPLES,
                seed: DEFAULT_SEED,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A6Coverage {
    pub mode: A6Mode,
    /// Quadruples examined (with repetition in sampled mode).
    pub checked: u64,
    /// Number of distinct quadruples in the structure.
    pub population: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub verdicts: Vec<AxiomVerdict>,
    pub a6: A6Coverage,
    pub order: Option<Order>,
    pub ordinary_points: usize,
    pub ordinary_lines: usize,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, axiom: Axiom) -> &AxiomVerdict {
        self.verdicts
            .iter()
            .find(|v| v.axiom == axiom)
            .expect("every axiom has a verdict")
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomVerdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

/// Order (m, n): m + 1 special lines, each with n + 1 points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Order {
    pub m: usize,
    pub n: usize,
}

impl Order {
    pub fn is_trivial(&self) -> bool {
        self.m == self.n
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

pub fn order_of(s: &IncidenceStructure) -> Result<Order> {
    let sizes: Vec<usize> = s.special_lines().iter().map(|&l| s.line(l).len()).collect();
    if sizes.len() < 2 {
        return Err(IncidenceError::TooFewSpecialLines);
    }
    if sizes.iter().any(|&x| x != sizes[0]) {
        return Err(IncidenceError::UnequalSpecialLines(sizes));
    }
    Ok(Order {
        m: sizes.len() - 1,
        n: sizes[0] - 1,
    })
}

pub fn check_axioms(s: &IncidenceStructure, a6_mode: A6Mode) -> AxiomReport {
    let (a6, coverage) = check_a6(s, a6_mode);
    let verdicts = vec![check_a1(s), check_a2(s), check_a3(s), check_a4(s), check_a5(s), a6];
    AxiomReport {
        verdicts,
        a6: coverage,
        order: order_of(s).ok(),
        ordinary_points: s.num_points() - 1,
        ordinary_lines: s.num_lines() - s.special_lines().len(),
    }
}

fn verdict(axiom: Axiom, witness: Option<Witness>) -> AxiomVerdict {
    AxiomVerdict {
        axiom,
        passed: witness.is_none(),
        witness,
    }
}

fn check_a1(s: &IncidenceStructure) -> AxiomVerdict {
    let np = s.num_points();
    let mut count = vec![0u16; np * np];
    for line in s.lines() {
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                count[a * np + b] = count[a * np + b].saturating_add(1);
            }
        }
    }
    for a in 0..np {
        for b in a + 1..np {
            if count[a * np + b] != 1 {
                let lines = s
                    .lines_through(a)
                    .iter()
                    .copied()
                    .filter(|&l| s.contains(l, b))
                    .collect();
                return verdict(Axiom::A1, Some(Witness::PointPair { a, b, lines }));
            }
        }
    }
    verdict(Axiom::A1, None)
}

fn collinear(s: &IncidenceStructure, a: usize, b: usize, c: usize) -> bool {
    s.lines_through(a)
        .iter()
        .any(|&l| s.contains(l, b) && s.contains(l, c))
}

/// Four points with no three collinear, if any.
pub fn find_quadrangle(s: &IncidenceStructure) -> Option<[usize; 4]> {
    let np = s.num_points();
    for a in 0..np {
        for b in a + 1..np {
            for c in b + 1..np {
                if collinear(s, a, b, c) {
                    continue;
                }
                for d in c + 1..np {
                    if !collinear(s, a, b, d) && !collinear(s, a, c, d) && !collinear(s, b, c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

fn check_a2(s: &IncidenceStructure) -> AxiomVerdict {
    match find_quadrangle(s) {
        Some(points) => AxiomVerdict {
            axiom: Axiom::A2,
            passed: true,
            witness: Some(Witness::Quadrangle { points }),
        },
        None => AxiomVerdict {
            axiom: Axiom::A2,
            passed: false,
            witness: None,
        },
    }
}

fn check_a3(s: &IncidenceStructure) -> AxiomVerdict {
    let w = (0..s.num_lines())
        .find(|&l| s.line(l).len() < 3)
        .map(|line| Witness::ShortLine { line });
    verdict(Axiom::A3, w)
}

fn check_a4(s: &IncidenceStructure) -> AxiomVerdict {
    let d = s.special_point();
    let w = (0..s.num_lines())
        .find(|&l| s.is_special(l) != s.contains(l, d))
        .map(|line| Witness::SpecialMismatch { line });
    verdict(Axiom::A4, w)
}

fn check_a5(s: &IncidenceStructure) -> AxiomVerdict {
    for &sp in s.special_lines() {
        for other in 0..s.num_lines() {
            if other == sp {
                continue;
            }
            let common = s.meet(sp, other);
            if common.len() != 1 {
                return verdict(
                    Axiom::A5,
                    Some(Witness::SpecialMeet {
                        special: sp,
                        other,
                        common,
                    }),
                );
            }
        }
    }
    verdict(Axiom::A5, None)
}

/// Intersecting pairs of ordinary lines with their common point.
fn intersecting_ordinary_pairs(s: &IncidenceStructure) -> Vec<(usize, usize, usize)> {
    let mut pairs = Vec::new();
    for p in s.ordinary_points() {
        let through: Vec<usize> = s
            .lines_through(p)
            .iter()
            .copied()
            .filter(|&l| !s.is_special(l))
            .collect();
        for (i, &l1) in through.iter().enumerate() {
            for &l2 in &through[i + 1..] {
                pairs.push((l1, l2, p));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// The quadruple test for one intersecting pair and one choice of points.
fn pasch_holds(
    s: &IncidenceStructure,
    l1: usize,
    l2: usize,
    x: (usize, usize),
    y: (usize, usize),
) -> std::result::Result<(), Witness> {
    let l3 = s.line_through(x.0, x.1);
    let l4 = s.line_through(y.0, y.1);
    match (l3, l4) {
        (Some(l3), Some(l4)) => {
            if l3 == l4 || s.meets(l3, l4) {
                Ok(())
            } else {
                Err(Witness::Pasch { l1, l2, l3, l4 })
            }
        }
        // missing joining lines are A1's business
        _ => Ok(()),
    }
}

fn check_a6(s: &IncidenceStructure, mode: A6Mode) -> (AxiomVerdict, A6Coverage) {
    let pairs = intersecting_ordinary_pairs(s);
    let population: u64 = pairs
        .iter()
        .map(|&(l1, l2, _)| {
            let a = s.line(l1).len() as u64 - 1;
            let b = s.line(l2).len() as u64 - 1;
            a * a.saturating_sub(1) * b * b.saturating_sub(1) / 2
        })
        .sum();
    let others = |l: usize, p: usize| -> Vec<usize> {
        s.line(l).iter().copied().filter(|&x| x != p).collect()
    };
    match mode {
        A6Mode::Full => {
            let witness = pairs.par_iter().find_map_first(|&(l1, l2, p)| {
                let on1 = others(l1, p);
                let on2 = others(l2, p);
                let mut choices = Vec::with_capacity(on1.len() * on2.len());
                for &a in &on1 {
                    for &b in &on2 {
                        choices.push((a, b));
                    }
                }
                for (i, &x) in choices.iter().enumerate() {
                    for &y in &choices[i + 1..] {
                        if x.0 == y.0 || x.1 == y.1 {
                            continue;
                        }
                        if let Err(w) = pasch_holds(s, l1, l2, x, y) {
                            return Some(w);
                        }
                    }
                }
                None
            });
            (
                verdict(Axiom::A6, witness),
                A6Coverage {
                    mode,
                    checked: population,
                    population,
                },
            )
        }
        A6Mode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0;
            let mut witness = None;
            if !pairs.is_empty() {
                while checked < count {
                    let (l1, l2, p) = pairs[rng.gen_range(0..pairs.len())];
                    let on1 = others(l1, p);
                    let on2 = others(l2, p);
                    if on1.len() < 2 || on2.len() < 2 {
                        checked += 1;
                        continue;
                    }
                    let i1 = rng.gen_range(0..on1.len());
                    let mut j1 = rng.gen_range(0..on1.len() - 1);
                    if j1 >= i1 {
                        j1 += 1;
                    }
                    let i2 = rng.gen_range(0..on2.len());
                    let mut j2 = rng.gen_range(0..on2.len() - 1);
                    if j2 >= i2 {
                        j2 += 1;
                    }
                    checked += 1;
                    if let Err(w) = pasch_holds(s, l1, l2, (on1[i1], on2[i2]), (on1[j1], on2[j2])) {
                        witness = Some(w);
                        break;
                    }
                }
            }
            (
                verdict(Axiom::A6, witness),
                A6Coverage {
                    mode,
                    checked,
                    population,
                },
            )
        }
    }
}

/// One named count with its expected and measured value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub name: String,
    pub expected: u64,
    pub actual: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub order: Order,
    pub trivial: bool,
    pub ordinary_lines: usize,
    pub ordinary_points: usize,
    pub checks: Vec<CountCheck>,
}

impl CountReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn count_check(name: &str, expected: u64, actual: u64) -> CountCheck {
    CountCheck {
        name: name.to_string(),
        expected,
        actual,
        passed: expected == actual,
    }
}

/// Verifies the elementary counting laws of a projective rectangle of order (m, n).
pub fn elementary_counts(s: &IncidenceStructure) -> Result<CountReport> {
    let order = order_of(s)?;
    let (m, n) = (order.m as u64, order.n as u64);
    let ordinary = s.ordinary_lines();
    let ord_points = s.ordinary_points();
    let mut checks = vec![
        count_check("ordinary lines = n^2", n * n, ordinary.len() as u64),
        count_check("ordinary points = (m+1)n", (m + 1) * n, ord_points.len() as u64),
    ];
    let bad_line = ordinary.iter().find(|&&l| s.line(l).len() as u64 != m + 1);
    checks.push(count_check(
        "points per ordinary line = m+1",
        m + 1,
        bad_line.map_or(m + 1, |&l| s.line(l).len() as u64),
    ));
    let ordinary_through = |p: usize| s.lines_through(p).iter().filter(|&&l| !s.is_special(l)).count() as u64;
    let bad_point = ord_points.iter().find(|&&p| ordinary_through(p) != n);
    checks.push(count_check(
        "ordinary lines per ordinary point = n",
        n,
        bad_point.map_or(n, |&p| ordinary_through(p)),
    ));
    // special lines minus D partition the ordinary points
    let mut cover = vec![0u64; s.num_points()];
    for &sp in s.special_lines() {
        for &p in s.line(sp) {
            if p != s.special_point() {
                cover[p] += 1;
            }
        }
    }
    let bad_cover = ord_points.iter().find(|&&p| cover[p] != 1);
    checks.push(count_check(
        "special lines through each ordinary point = 1",
        1,
        bad_cover.map_or(1, |&p| cover[p]),
    ));
    checks.push(count_check("n >= m >= 2", 1, (n >= m && m >= 2) as u64));
    let trivial = order.is_trivial();
    if !trivial {
        checks.push(count_check("nontrivial => n >= m^2", 1, (n >= m * m) as u64));
    }
    Ok(CountReport {
        order,
        trivial,
        ordinary_lines: ordinary.len(),
        ordinary_points: ord_points.len(),
        checks,
    })
}

/// Verifies that `s` is a projective plane of order `m`: every two points on
/// one line, every two lines meet in one point, m+1 points per line, and a quadrangle.
pub fn is_projective_plane(s: &IncidenceStructure, m: usize) -> bool {
    let total = m * m + m + 1;
    if s.num_points() != total || s.num_lines() != total {
        return false;
    }
    if s.lines().iter().any(|l| l.len() != m + 1) {
        return false;
    }
    if check_a1(s).witness.is_some() {
        return false;
    }
    for a in 0..s.num_lines() {
        for b in a + 1..s.num_lines() {
            if s.meet(a, b).len() != 1 {
                return false;
            }
        }
    }
    find_quadrangle(s).is_some()
}

/// Isomorphism between two structures, as point and line permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub points: Vec<usize>,
    pub lines: Vec<usize>,
}

impl Isomorphism {
    /// Checks bijectivity and that incidences map exactly onto incidences.
    pub fn verify(&self, a: &IncidenceStructure, b: &IncidenceStructure) -> bool {
        let bij = |v: &[usize], n: usize| {
            let mut seen = vec![false; n];
            v.len() == n
                && v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if a.num_points() != b.num_points()
            || a.num_lines() != b.num_lines()
            || !bij(&self.points, b.num_points())
            || !bij(&self.lines, b.num_lines())
            || self.points[a.special_point()] != b.special_point()
        {
            return false;
        }
        (0..a.num_lines()).all(|l| {
            let mut image: Vec<usize> = a.line(l).iter().map(|&p| self.points[p]).collect();
            image.sort_unstable();
            image == b.line(self.lines[l])
        })
    }
}

/// Backtracking search for an isomorphism fixing the special point.
///
/// Both structures must satisfy A1; each newly placed point is checked against
/// every placed point through the line joining them.
pub fn find_isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Isomorphism> {
    if a.num_points() != b.num_points() || a.num_lines() != b.num_lines() {
        return None;
    }
    let np = a.num_points();
    let mut order = vec![a.special_point()];
    let mut placed = vec![false; np];
    placed[a.special_point()] = true;
    // grow along lines so each point is constrained early
    while order.len() < np {
        let next = (0..np)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let shared = order.iter().filter(|&&q| a.line_through(p, q).is_some()).count();
                (shared, std::cmp::Reverse(p))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    struct Search<'s> {
        a: &'s IncidenceStructure,
        b: &'s IncidenceStructure,
        order: Vec<usize>,
        pmap: Vec<usize>,
        used: Vec<bool>,
        lmap: Vec<usize>,
        lrev: Vec<usize>,
    }
    const NONE: usize = usize::MAX;

    impl Search<'_> {
        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let pa = self.order[depth];
            let deg = self.a.lines_through(pa).len();
            for pb in 0..self.b.num_points() {
                if self.used[pb] || self.b.lines_through(pb).len() != deg {
                    continue;
                }
                if depth == 0 && pb != self.b.special_point() {
                    continue;
                }
                let mut fresh = Vec::new();
                let mut ok = true;
                for &qa in &self.order[..depth] {
                    let qb = self.pmap[qa];
                    match (self.a.line_through(pa, qa), self.b.line_through(pb, qb)) {
                        (None, None) => {}
                        (Some(la), Some(lb)) => {
                            if self.lmap[la] == NONE && self.lrev[lb] == NONE {
                                if self.a.line(la).len() != self.b.line(lb).len() {
                                    ok = false;
                                    break;
                                }
                                self.lmap[la] = lb;
                                self.lrev[lb] = la;
                                fresh.push(la);
                            } else if self.lmap[la] != lb {
                                ok = false;
                                break;
                            }
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    self.pmap[pa] = pb;
                    self.used[pb] = true;
                    if self.go(depth + 1) {
                        return true;
                    }
                    self.used[pb] = false;
                    self.pmap[pa] = NONE;
                }
                for la in fresh {
                    self.lrev[self.lmap[la]] = NONE;
                    self.lmap[la] = NONE;
                }
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        order,
        pmap: vec![NONE; np],
        used: vec![false; np],
        lmap: vec![NONE; a.num_lines()],
        lrev: vec![NONE; b.num_lines()],
    };
    if !search.go(0) || search.lmap.contains(&NONE) {
        return None;
    }
    let iso = Isomorphism {
        points: search.pmap,
        lines: search.lmap,
    };
    iso.verify(a, b).then_some(iso)
}

/// JSON form: point labels, lines as label arrays, the special point label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceJson {
    pub points: Vec<String>,
    pub lines: Vec<Vec<String>>,
    pub special_point: String,
}

impl From<&IncidenceStructure> for IncidenceJson {
    fn from(s: &IncidenceStructure) -> Self {
        IncidenceJson {
            points: s.labels.clone(),
            lines: s
                .lines
                .iter()
                .map(|l| l.iter().map(|&p| s.labels[p].clone()).collect())
                .collect(),
            special_point: s.labels[s.special_point].clone(),
        }
    }
}

impl TryFrom<&IncidenceJson> for IncidenceStructure {
    type Error = IncidenceError;

    fn try_from(j: &IncidenceJson) -> Result<Self> {
        let mut index = HashMap::with_capacity(j.points.len());
        for (i, label) in j.points.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(IncidenceError::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |label: &String| {
            index
                .get(label.as_str())
                .copied()
                .ok_or_else(|| IncidenceError::UnknownLabel(label.clone()))
        };
        let lines = j
            .lines
            .iter()
            .map(|l| l.iter().map(lookup).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let d = lookup(&j.special_point)?;
        IncidenceStructure::new(j.points.clone(), lines, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// PG(2,2) with lines {i, i+1, i+3} mod 7 and D = 0.
    pub(crate) fn fano() -> IncidenceStructure {
        let labels = (0..7).map(|i| format!("p{i}")).collect();
        let lines = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        IncidenceStructure::new(labels, lines, 0).unwrap()
    }

    #[test]
    fn fano_is_a_trivial_rectangle() {
        let s = fano();
        let report = check_axioms(&s, A6Mode::Full);
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(order_of(&s).unwrap(), Order { m: 2, n: 2 });
        let counts = elementary_counts(&s).unwrap();
        assert!(counts.trivial);
        assert!(counts.all_passed(), "{counts:?}");
        assert!(is_projective_plane(&s, 2));
    }

    #[test]
    fn deleting_a_line_breaks_a1() {
        let s = fano();
        let ordinary = s.ordinary_lines()[0];
        let broken = s.without_line(ordinary);
        let report = check_axioms(&broken, A6Mode::Full);
        let v = report.verdict(Axiom::A1);
        assert!(!v.passed);
        let w = v.witness.as_ref().unwrap();
        assert!(w.recheck(&broken));
        assert!(!w.recheck(&s));
    }

    #[test]
    fn malformed_structures_rejected() {
        let labels: Vec<String> = vec!["a".into(), "b".into()];
        assert_eq!(
            IncidenceStructure::new(labels.clone(), vec![vec![0, 2]], 0).unwrap_err(),
            IncidenceError::PointOutOfRange { line: 0, point: 2 }
        );
        assert_eq!(
            IncidenceStructure::new(labels.clone(), vec![vec![0, 0]], 0).unwrap_err(),
            IncidenceError::DuplicatePoint(0)
        );
        assert_eq!(
            IncidenceStructure::new(labels, vec![], 5).unwrap_err(),
            IncidenceError::BadSpecialPoint(5)
        );
        assert_eq!(IncidenceStructure::new(vec![], vec![], 0).unwrap_err(), IncidenceError::Empty);
    }

    #[test]
    fn short_line_fails_a3() {
        let labels = (0..3).map(|i| i.to_string()).collect();
        let s = IncidenceStructure::new(labels, vec![vec![0, 1], vec![0, 2], vec![1, 2]], 0).unwrap();
        let r = check_axioms(&s, A6Mode::Full);
        assert!(!r.verdict(Axiom::A3).passed);
        assert!(!r.verdict(Axiom::A2).passed);
        assert!(r.verdict(Axiom::A1).passed);
    }

    #[test]
    fn json_roundtrip() {
        let s = fano();
        let j = IncidenceJson::from(&s);
        let text = serde_json::to_string(&j).unwrap();
        let back: IncidenceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(IncidenceStructure::try_from(&back).unwrap(), s);
        let mut bad = j.clone();
        bad.lines[0][0] = "nope".into();
        assert!(IncidenceStructure::try_from(&bad).is_err());
    }

    #[test]
    fn fano_is_isomorphic_to_a_relabelling() {
        let s = fano();
        let perm = [0, 3, 5, 1, 6, 2, 4];
        let labels = s.labels().to_vec();
        let lines = s
            .lines()
            .iter()
            .rev()
            .map(|l| l.iter().map(|&p| perm[p]).collect())
            .collect();
        let t = IncidenceStructure::new(labels, lines, 0).unwrap();
        let iso = find_isomorphism(&s, &t).unwrap();
        assert!(iso.verify(&s, &t));
    }
}

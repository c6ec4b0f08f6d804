//! Builders for the two rectangle families.
//!
//! `L_2^k` is built from the group (Z_2)^k; the subplane construction
//! `R(q, q^k)` is built from homogeneous coordinates in PG(2, q^k) with
//! `D = [0,0,1]`, special lines `s_β = ⟨1,β,0⟩` (β in GF(q)) and `s_∞ = ⟨0,1,0⟩`.
//! With k = 1 the subplane construction yields the full plane PG(2, q).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldCtx, FieldElement, GfError};
use crate::incidence::{self, find_isomorphism, IncidenceError, IncidenceStructure, Order};

/// Largest k accepted by [`build_l2k`].
pub const MAX_L2K: u32 = 6;
/// Largest q^k accepted by [`build_subplane_rect`].
pub const MAX_SUBPLANE_N: u64 = 256;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("the two lines are equal")]
    EqualLines,
    #[error("line {0} is not ordinary")]
    NotOrdinary(String),
    #[error("model has no coordinates")]
    NoCoordinates,
    #[error("no isomorphism found between the structures")]
    NoIsomorphism,
    #[error("malformed model: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, ConstructError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    L2k { k: u32 },
    Subplane { p: u64, e: u32, k: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::L2k { k } => write!(f, "L_2^{k}"),
            Family::Subplane { p, e, k } => {
                let q = p.pow(e);
                if k == 1 {
                    write!(f, "PG(2,{q})")
                } else {
                    write!(f, "R({q},{})", q.pow(k))
                }
            }
        }
    }
}

/// Homogeneous point `[x,y,z]` with first nonzero coordinate 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(pub [FieldElement; 3]);

impl ProjPoint {
    /// Normalizes a nonzero triple; `None` for the zero triple.
    pub fn normalized(f: &FieldCtx, v: [FieldElement; 3]) -> Option<ProjPoint> {
        let lead = *v.iter().find(|x| !x.is_zero())?;
        let inv = f.inv(lead).ok()?;
        Some(ProjPoint(v.map(|x| f.mul(x, inv))))
    }
}

/// Homogeneous line `⟨a,b,c⟩`; ordinary lines are stored as `⟨a,b,1⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineCoeffs(pub [FieldElement; 3]);

impl LineCoeffs {
    pub fn ordinary(a: FieldElement, b: FieldElement) -> Self {
        LineCoeffs([a, b, FieldElement::ONE])
    }

    pub fn is_ordinary(&self) -> bool {
        self.0[2] == FieldElement::ONE
    }

    pub fn a(&self) -> FieldElement {
        self.0[0]
    }

    pub fn b(&self) -> FieldElement {
        self.0[1]
    }

    pub fn incident(&self, f: &FieldCtx, p: &ProjPoint) -> bool {
        let [a, b, c] = self.0;
        let [x, y, z] = p.0;
        f.add(f.add(f.mul(a, x), f.mul(b, y)), f.mul(c, z)).is_zero()
    }
}

/// Name of a special line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialLabel {
    /// `s_β = ⟨1,β,0⟩`.
    Beta(FieldElement),
    /// `s_∞ = ⟨0,1,0⟩`.
    Infinity,
    /// The A, B, C lines of `L_2^k`.
    Named(char),
}

impl SpecialLabel {
    pub fn render(&self, f: Option<&FieldCtx>) -> String {
        match self {
            SpecialLabel::Beta(b) => match f {
                Some(f) => format!("s_{}", f.format(*b)),
                None => format!("s_#{}", b.index()),
            },
            SpecialLabel::Infinity => "s_inf".into(),
            SpecialLabel::Named(c) => c.to_string(),
        }
    }

    /// Alternative naming used for q = 2 where `⟨1,1,0⟩` is called s_∞ and
    /// `⟨0,1,0⟩` is called s_1.
    pub fn q2_alternative(&self) -> Option<&'static str> {
        match self {
            SpecialLabel::Beta(b) if b.is_zero() => Some("s_0"),
            SpecialLabel::Beta(b) if *b == FieldElement::ONE => Some("s_inf"),
            SpecialLabel::Infinity => Some("s_1"),
            _ => None,
        }
    }
}

/// Coordinate data of a rectangle embedded in PG(2, q^k).
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub field: FieldCtx,
    /// Order of the subfield GF(q).
    pub q: u64,
    pub points: Vec<ProjPoint>,
    pub lines: Vec<LineCoeffs>,
    point_index: HashMap<ProjPoint, usize>,
    line_index: HashMap<LineCoeffs, usize>,
}

impl Coordinates {
    pub fn new(field: FieldCtx, q: u64, points: Vec<ProjPoint>, lines: Vec<LineCoeffs>) -> Self {
        let point_index = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let line_index = lines.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Coordinates {
            field,
            q,
            points,
            lines,
            point_index,
            line_index,
        }
    }

    pub fn point_index(&self, p: &ProjPoint) -> Option<usize> {
        self.point_index.get(p).copied()
    }

    pub fn line_index(&self, l: &LineCoeffs) -> Option<usize> {
        self.line_index.get(l).copied()
    }

    pub fn format_point(&self, p: &ProjPoint) -> String {
        let f = &self.field;
        format!("[{}:{}:{}]", f.format(p.0[0]), f.format(p.0[1]), f.format(p.0[2]))
    }

    pub fn format_line(&self, l: &LineCoeffs) -> String {
        let f = &self.field;
        format!("<{},{},{}>", f.format(l.0[0]), f.format(l.0[1]), f.format(l.0[2]))
    }
}

/// A built rectangle: incidence structure, order, labels and optional coordinates.
#[derive(Clone, Debug)]
pub struct RectangleModel {
    pub structure: IncidenceStructure,
    pub family: Family,
    pub order: Order,
    /// Ordinary line indices in construction order; vertex i of the graph of
    /// lines is `ordinary[i]`.
    pub ordinary: Vec<usize>,
    /// Special line indices paired with their names.
    pub special: Vec<(usize, SpecialLabel)>,
    pub coords: Option<Coordinates>,
}

impl RectangleModel {
    pub fn is_trivial(&self) -> bool {
        self.order.is_trivial()
    }

    pub fn num_vertices(&self) -> usize {
        self.ordinary.len()
    }

    /// Vertex index of an ordinary line index.
    pub fn vertex_of(&self, line: usize) -> Option<usize> {
        self.ordinary.iter().position(|&l| l == line)
    }

    pub fn special_label(&self, line: usize) -> Option<SpecialLabel> {
        self.special.iter().find(|(l, _)| *l == line).map(|(_, s)| *s)
    }

    pub fn special_name(&self, line: usize) -> String {
        self.special_label(line)
            .map(|s| s.render(self.coords.as_ref().map(|c| &c.field)))
            .unwrap_or_else(|| format!("line {line}"))
    }

    /// Position of a special line among `self.special` (the edge colour index).
    pub fn special_position(&self, line: usize) -> Option<usize> {
        self.special.iter().position(|(l, _)| *l == line)
    }

    pub fn coords(&self) -> Result<&Coordinates> {
        self.coords.as_ref().ok_or(ConstructError::NoCoordinates)
    }

    /// Coefficients of the ordinary line at graph vertex `v`.
    pub fn vertex_coeffs(&self, v: usize) -> Result<LineCoeffs> {
        Ok(self.coords()?.lines[self.ordinary[v]])
    }

    /// Exhaustive check that incidence coincides with `ax + by + cz = 0`.
    pub fn coordinates_consistent(&self) -> bool {
        let Some(c) = &self.coords else {
            return false;
        };
        let s = &self.structure;
        if c.points.len() != s.num_points() || c.lines.len() != s.num_lines() {
            return false;
        }
        (0..s.num_lines()).all(|l| {
            (0..s.num_points()).all(|p| s.contains(l, p) == c.lines[l].incident(&c.field, &c.points[p]))
        })
    }
}

/// `L_2^k`: points a_g, b_g, c_g (g in (Z_2)^k) and D; special lines A, B, C;
/// ordinary lines {a_g, b_(g+h), c_h} ordered by g then h.
pub fn build_l2k(k: u32) -> Result<RectangleModel> {
    if k == 0 || k > MAX_L2K {
        return Err(ConstructError::Parameter(format!("k = {k} must be in 1..={MAX_L2K}")));
    }
    let n = 1usize << k;
    let (a, b, c, d) = (0, n, 2 * n, 3 * n);
    let mut labels = Vec::with_capacity(3 * n + 1);
    for prefix in ["a", "b", "c"] {
        for g in 0..n {
            labels.push(format!("{prefix}{g}"));
        }
    }
    labels.push("D".to_string());
    let mut lines = Vec::with_capacity(n * n + 3);
    for base in [a, b, c] {
        let mut line: Vec<usize> = (base..base + n).collect();
        line.push(d);
        lines.push(line);
    }
    for g in 0..n {
        for h in 0..n {
            lines.push(vec![a + g, b + (g ^ h), c + h]);
        }
    }
    let structure = IncidenceStructure::new(labels, lines, d)?;
    Ok(RectangleModel {
        order: Order { m: 2, n },
        family: Family::L2k { k },
        ordinary: (3..n * n + 3).collect(),
        special: vec![
            (0, SpecialLabel::Named('A')),
            (1, SpecialLabel::Named('B')),
            (2, SpecialLabel::Named('C')),
        ],
        coords: None,
        structure,
    })
}

/// The subplane construction `R(q, q^k)` with q = p^e; k = 1 gives PG(2, q).
pub fn build_subplane_rect(p: u64, e: u32, k: u32) -> Result<RectangleModel> {
    build_subplane_rect_bounded(p, e, k, MAX_SUBPLANE_N)
}

pub fn build_subplane_rect_bounded(p: u64, e: u32, k: u32, max_n: u64) -> Result<RectangleModel> {
    if e == 0 || k == 0 {
        return Err(ConstructError::Parameter("e and k must be at least 1".into()));
    }
    let field = FieldCtx::new(p, e * k)?;
    let q = p.pow(e);
    let n = field.order() as u64;
    if n > max_n {
        return Err(ConstructError::Parameter(format!("q^k = {n} exceeds the bound {max_n}")));
    }
    let f = &field;
    let betas = f.subfield_elements(q)?;

    // special lines and the (x, y) part of their ordinary points
    let mut special_coeffs = Vec::with_capacity(betas.len() + 1);
    let mut directions = Vec::with_capacity(betas.len() + 1);
    let mut special = Vec::with_capacity(betas.len() + 1);
    for &beta in &betas {
        special_coeffs.push(LineCoeffs([f.one(), beta, f.zero()]));
        let dir = if beta.is_zero() {
            [f.zero(), f.one()]
        } else {
            [f.one(), f.neg(f.inv(beta)?)]
        };
        directions.push(dir);
        special.push(SpecialLabel::Beta(beta));
    }
    special_coeffs.push(LineCoeffs([f.zero(), f.one(), f.zero()]));
    directions.push([f.one(), f.zero()]);
    special.push(SpecialLabel::Infinity);

    let mut points = Vec::new();
    for dir in &directions {
        for z in f.elements() {
            points.push(ProjPoint([dir[0], dir[1], z]));
        }
    }
    let d_index = points.len();
    points.push(ProjPoint([f.zero(), f.zero(), f.one()]));
    let n_us = n as usize;

    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut coeffs = Vec::new();
    for (si, lc) in special_coeffs.iter().enumerate() {
        let mut line: Vec<usize> = (si * n_us..(si + 1) * n_us).collect();
        line.push(d_index);
        lines.push(line);
        coeffs.push(*lc);
    }
    for a in f.elements() {
        for b in f.elements() {
            // the unique point of ⟨a,b,1⟩ on each special line
            let line = directions
                .iter()
                .enumerate()
                .map(|(si, dir)| {
                    let z = f.neg(f.add(f.mul(a, dir[0]), f.mul(b, dir[1])));
                    si * n_us + z.index() as usize
                })
                .collect();
            lines.push(line);
            coeffs.push(LineCoeffs::ordinary(a, b));
        }
    }
    let num_special = special_coeffs.len();
    let coords = Coordinates::new(field.clone(), q, points, coeffs);
    let labels = coords.points.iter().map(|pt| coords.format_point(pt)).collect();
    let structure = IncidenceStructure::new(labels, lines, d_index)?;
    Ok(RectangleModel {
        order: Order {
            m: q as usize,
            n: n_us,
        },
        family: Family::Subplane { p, e, k },
        ordinary: (num_special..num_special + n_us * n_us).collect(),
        special: special.into_iter().enumerate().collect(),
        coords: Some(coords),
        structure,
    })
}

/// Common point of two ordinary lines,
/// `[-(b2-b1), a2-a1, a1 b2 - a2 b1]`, returned only when it lies in the rectangle.
pub fn common_point(l1: &LineCoeffs, l2: &LineCoeffs, model: &RectangleModel) -> Result<Option<ProjPoint>> {
    let c = model.coords()?;
    let f = &c.field;
    for l in [l1, l2] {
        if !l.is_ordinary() {
            return Err(ConstructError::NotOrdinary(c.format_line(l)));
        }
    }
    if l1 == l2 {
        return Err(ConstructError::EqualLines);
    }
    let (a1, b1, a2, b2) = (l1.a(), l1.b(), l2.a(), l2.b());
    let x = f.neg(f.sub(b2, b1));
    let y = f.sub(a2, a1);
    let z = f.sub(f.mul(a1, b2), f.mul(a2, b1));
    let pt = ProjPoint::normalized(f, [x, y, z]).expect("distinct lines meet in a point of the plane");
    Ok(c.point_index(&pt).map(|_| pt))
}

/// Special line holding the common point of two ordinary lines, decided from
/// coefficients alone: `s_0` iff b1 = b2, `s_∞` iff a1 = a2, and `s_β` iff
/// `b2 - b1 = β (a2 - a1)` with β in GF(q)^×.
pub fn classify_meeting(l1: &LineCoeffs, l2: &LineCoeffs, model: &RectangleModel) -> Result<Option<SpecialLabel>> {
    let c = model.coords()?;
    let f = &c.field;
    if l1 == l2 {
        return Err(ConstructError::EqualLines);
    }
    let da = f.sub(l2.a(), l1.a());
    let db = f.sub(l2.b(), l1.b());
    if db.is_zero() {
        return Ok(Some(SpecialLabel::Beta(f.zero())));
    }
    if da.is_zero() {
        return Ok(Some(SpecialLabel::Infinity));
    }
    let ratio = f.div(db, da)?;
    Ok(f.in_subfield(ratio, c.q)?.then_some(SpecialLabel::Beta(ratio)))
}

/// Puts coordinates on `L_2^k` by an isomorphism search against `R(2, 2^k)`.
///
/// The returned model keeps the combinatorial point and line order of
/// `L_2^k`; special lines take their `R(2,2^k)` names.
pub fn coordinatize_l2k(model: &RectangleModel) -> Result<RectangleModel> {
    let Family::L2k { k } = model.family else {
        return Err(ConstructError::Parameter("only L_2^k models can be coordinatized".into()));
    };
    let target = build_subplane_rect(2, 1, k)?;
    let iso = find_isomorphism(&model.structure, &target.structure).ok_or(ConstructError::NoIsomorphism)?;
    let tc = target.coords()?;
    let points = iso.points.iter().map(|&p| tc.points[p]).collect();
    let lines = iso.lines.iter().map(|&l| tc.lines[l]).collect();
    let coords = Coordinates::new(tc.field.clone(), 2, points, lines);
    let special = model
        .special
        .iter()
        .map(|&(l, _)| {
            let label = target
                .special_label(iso.lines[l])
                .expect("isomorphisms map special lines to special lines");
            (l, label)
        })
        .collect();
    let out = RectangleModel {
        structure: model.structure.clone(),
        family: model.family,
        order: model.order,
        ordinary: model.ordinary.clone(),
        special,
        coords: Some(coords),
    };
    debug_assert!(out.coordinates_consistent());
    Ok(out)
}

/// JSON form of a model, with coordinates as coefficient tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelJson {
    pub family: Family,
    pub order: Order,
    pub structure: incidence::IncidenceJson,
    pub ordinary_lines: Vec<usize>,
    pub special_lines: Vec<SpecialLineJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<CoordinatesJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialLineJson {
    pub line: usize,
    pub label: String,
    /// `β` as a coefficient tuple, absent for s_∞ and named lines.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinatesJson {
    pub p: u64,
    pub degree: u32,
    pub modulus: Vec<u32>,
    pub subfield_order: u64,
    pub points: Vec<[Vec<u32>; 3]>,
    pub lines: Vec<[Vec<u32>; 3]>,
}

impl From<&RectangleModel> for ModelJson {
    fn from(m: &RectangleModel) -> Self {
        let field = m.coords.as_ref().map(|c| &c.field);
        let special_lines = m
            .special
            .iter()
            .map(|&(line, label)| SpecialLineJson {
                line,
                label: label.render(field),
                beta: match (label, field) {
                    (SpecialLabel::Beta(b), Some(f)) => Some(f.coeffs(b)),
                    _ => None,
                },
            })
            .collect();
        let coordinates = m.coords.as_ref().map(|c| {
            let f = &c.field;
            let tuple = |v: &[FieldElement; 3]| v.map(|x| f.coeffs(x));
            CoordinatesJson {
                p: f.characteristic() as u64,
                degree: f.degree(),
                modulus: f.modulus().to_vec(),
                subfield_order: c.q,
                points: c.points.iter().map(|p| tuple(&p.0)).collect(),
                lines: c.lines.iter().map(|l| tuple(&l.0)).collect(),
            }
        });
        ModelJson {
            family: m.family,
            order: m.order,
            structure: (&m.structure).into(),
            ordinary_lines: m.ordinary.clone(),
            special_lines,
            coordinates,
        }
    }
}

impl TryFrom<&ModelJson> for RectangleModel {
    type Error = ConstructError;

    fn try_from(j: &ModelJson) -> Result<Self> {
        let structure = IncidenceStructure::try_from(&j.structure)?;
        let coords = match &j.coordinates {
            None => None,
            Some(cj) => {
                let field = FieldCtx::new(cj.p, cj.degree)?;
                if field.modulus() != cj.modulus.as_slice() {
                    return Err(ConstructError::Malformed("field modulus is not the canonical one".into()));
                }
                let triple = |v: &[Vec<u32>; 3]| -> Result<[FieldElement; 3]> {
                    Ok([
                        field.from_coeffs(&v[0])?,
                        field.from_coeffs(&v[1])?,
                        field.from_coeffs(&v[2])?,
                    ])
                };
                let points = cj.points.iter().map(|v| triple(v).map(ProjPoint)).collect::<Result<Vec<_>>>()?;
                let lines = cj.lines.iter().map(|v| triple(v).map(LineCoeffs)).collect::<Result<Vec<_>>>()?;
                if points.len() != structure.num_points() || lines.len() != structure.num_lines() {
                    return Err(ConstructError::Malformed("coordinate tables do not match the structure".into()));
                }
                Some(Coordinates::new(field, cj.subfield_order, points, lines))
            }
        };
        let mut special = Vec::with_capacity(j.special_lines.len());
        for s in &j.special_lines {
            if s.line >= structure.num_lines() {
                return Err(ConstructError::Malformed(format!("special line {} out of range", s.line)));
            }
            let label = match (&s.beta, &coords) {
                (Some(b), Some(c)) => SpecialLabel::Beta(c.field.from_coeffs(b)?),
                _ if s.label == "s_inf" => SpecialLabel::Infinity,
                _ => SpecialLabel::Named(s.label.chars().next().unwrap_or('?')),
            };
            special.push((s.line, label));
        }
        if j.ordinary_lines.iter().any(|&l| l >= structure.num_lines()) {
            return Err(ConstructError::Malformed("ordinary line index out of range".into()));
        }
        Ok(RectangleModel {
            structure,
            family: j.family,
            order: j.order,
            ordinary: j.ordinary_lines.clone(),
            special,
            coords,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{check_axioms, elementary_counts, order_of, A6Mode};

    #[test]
    fn l2k_two_matches_line_table() {
        let m = build_l2k(2).unwrap();
        assert_eq!(m.num_vertices(), 16);
        assert_eq!(order_of(&m.structure).unwrap(), Order { m: 2, n: 4 });
        // group elements 1, g, h, gh are 0, 1, 2, 3; l_i lists (A, B, C) indices
        #[rustfmt::skip]
        let table = [
            (0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3),
            (1, 1, 0), (1, 0, 1), (1, 3, 2), (1, 2, 3),
            (2, 2, 0), (2, 3, 1), (2, 0, 2), (2, 1, 3),
            (3, 3, 0), (3, 2, 1), (3, 1, 2), (3, 0, 3),
        ];
        for (v, &(a, b, c)) in table.iter().enumerate() {
            let line = m.structure.line(m.ordinary[v]);
            let names: Vec<&str> = line.iter().map(|&p| m.structure.label(p)).collect();
            assert_eq!(names, vec![format!("a{a}"), format!("b{b}"), format!("c{c}")]);
        }
    }

    #[test]
    fn l2k_one_is_fano() {
        let m = build_l2k(1).unwrap();
        assert_eq!(m.order, Order { m: 2, n: 2 });
        assert!(check_axioms(&m.structure, A6Mode::Full).all_passed());
        let plane = build_subplane_rect(2, 1, 1).unwrap();
        assert!(find_isomorphism(&m.structure, &plane.structure).is_some());
    }

    #[test]
    fn l2k_three_counts() {
        let m = build_l2k(3).unwrap();
        let counts = elementary_counts(&m.structure).unwrap();
        assert!(counts.all_passed());
        assert_eq!(counts.ordinary_lines, 64);
        assert_eq!(counts.ordinary_points, 24);
        assert!(build_l2k(0).is_err());
        assert!(build_l2k(7).is_err());
    }

    #[test]
    fn subplane_orders() {
        let r = build_subplane_rect(3, 1, 2).unwrap();
        assert_eq!(r.order, Order { m: 3, n: 9 });
        assert_eq!(r.num_vertices(), 81);
        assert!(r.coordinates_consistent());
        let r = build_subplane_rect(2, 2, 2).unwrap();
        assert_eq!(r.order, Order { m: 4, n: 16 });
        assert_eq!(r.num_vertices(), 256);
        assert!(r.coordinates_consistent());
        assert!(build_subplane_rect(2, 1, 9).is_err());
        assert!(build_subplane_rect(6, 1, 2).is_err());
    }

    #[test]
    fn subplane_two_four_is_l2_2() {
        let r = build_subplane_rect(2, 1, 2).unwrap();
        let l = build_l2k(2).unwrap();
        let iso = find_isomorphism(&l.structure, &r.structure).unwrap();
        assert!(iso.verify(&l.structure, &r.structure));
        let c = coordinatize_l2k(&l).unwrap();
        assert!(c.coordinates_consistent());
    }

    #[test]
    fn common_point_examples() {
        let r = build_subplane_rect(2, 1, 2).unwrap();
        let f = &r.coords().unwrap().field;
        let w = f.from_coeffs(&[0, 1]).unwrap();
        let l1 = LineCoeffs::ordinary(f.one(), f.one());
        let l2 = LineCoeffs::ordinary(w, f.one());
        let pt = common_point(&l1, &l2, &r).unwrap().unwrap();
        assert_eq!(pt, ProjPoint([f.zero(), f.one(), f.one()]));
        let idx = r.coords().unwrap().point_index(&pt).unwrap();
        let v1 = r.coords().unwrap().line_index(&l1).unwrap();
        let v2 = r.coords().unwrap().line_index(&l2).unwrap();
        assert_eq!(r.structure.meet(v1, v2), vec![idx]);
        let s0 = r.special_position(r.structure.special_line_of(idx).unwrap()).unwrap();
        assert_eq!(r.special[s0].1, SpecialLabel::Beta(f.zero()));

        // same a: common point has y = 0, on s_∞
        let l3 = LineCoeffs::ordinary(w, w);
        let pt = common_point(&l2, &l3, &r).unwrap().unwrap();
        assert!(pt.0[1].is_zero());
        assert_eq!(classify_meeting(&l2, &l3, &r).unwrap(), Some(SpecialLabel::Infinity));

        assert!(matches!(common_point(&l1, &l1, &r), Err(ConstructError::EqualLines)));
        let special = LineCoeffs([f.one(), f.zero(), f.zero()]);
        assert!(matches!(common_point(&special, &l1, &r), Err(ConstructError::NotOrdinary(_))));
    }

    #[test]
    fn disjoint_lines_in_r39() {
        let r = build_subplane_rect(3, 1, 2).unwrap();
        let c = r.coords().unwrap();
        let f = &c.field;
        let x = f.from_coeffs(&[0, 1]).unwrap();
        // a2 - a1 = x, b2 - b1 = 1: ratio 1/x is not in GF(3)
        let l1 = LineCoeffs::ordinary(f.zero(), f.zero());
        let l2 = LineCoeffs::ordinary(x, f.one());
        assert_eq!(common_point(&l1, &l2, &r).unwrap(), None);
        let i1 = c.line_index(&l1).unwrap();
        let i2 = c.line_index(&l2).unwrap();
        assert!(r.structure.meet(i1, i2).is_empty());
    }

    #[test]
    fn model_json_roundtrip() {
        for m in [build_subplane_rect(3, 1, 2).unwrap(), build_l2k(2).unwrap()] {
            let j = ModelJson::from(&m);
            let text = serde_json::to_string(&j).unwrap();
            let back: ModelJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, j);
            let model = RectangleModel::try_from(&back).unwrap();
            assert_eq!(model.structure, m.structure);
            assert_eq!(model.special, m.special);
            assert_eq!(model.coords.is_some(), m.coords.is_some());
        }
    }

    #[test]
    fn q2_alternative_labels() {
        assert_eq!(SpecialLabel::Infinity.q2_alternative(), Some("s_1"));
        assert_eq!(SpecialLabel::Beta(FieldElement::ONE).q2_alternative(), Some("s_inf"));
        assert_eq!(SpecialLabel::Beta(FieldElement::ZERO).q2_alternative(), Some("s_0"));
    }
}

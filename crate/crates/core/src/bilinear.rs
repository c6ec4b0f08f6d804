//! The bilinear forms graph H_q(2,k) and its identification with the graph
//! of lines of R(q, q^k) through the matrix of basis coordinates.
//!
//! H_q(2,k) is built over a standalone GF(q), not over the subfield of
//! GF(q^k); the two are joined by an explicit field isomorphism.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cliques::{enumerate_maximal_cliques, CliqueError};
use crate::construct::{ConstructError, Family, LineCoeffs, RectangleModel, SpecialLabel};
use crate::gf::{FieldCtx, FieldElement, GfError, SubfieldBasis};
use crate::linegraph::{LineGraph, LineGraphError};

/// Largest vertex count q^(2k) accepted by [`build_hq2k`].
pub const MAX_HQ_VERTICES: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum BilinearError {
    #[error("H_q(2,k) with {0} vertices exceeds the bound {MAX_HQ_VERTICES}")]
    TooLarge(u64),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("line {0} is not ordinary")]
    NotOrdinary(String),
    #[error("graph of lines and H_q(2,k) are over different parameters")]
    Mismatch,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Graph(#[from] LineGraphError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

pub type Result<T> = std::result::Result<T, BilinearError>;

/// A 2×k matrix over GF(q); rows are `B(a)` and `B(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixQ2K {
    pub rows: [Vec<FieldElement>; 2],
}

impl MatrixQ2K {
    pub fn zero(k: usize) -> Self {
        MatrixQ2K {
            rows: [vec![FieldElement::ZERO; k], vec![FieldElement::ZERO; k]],
        }
    }

    pub fn k(&self) -> usize {
        self.rows[0].len()
    }

    pub fn sub(&self, f: &FieldCtx, other: &MatrixQ2K) -> MatrixQ2K {
        let row = |i: usize| -> Vec<FieldElement> {
            self.rows[i]
                .iter()
                .zip(&other.rows[i])
                .map(|(&x, &y)| f.sub(x, y))
                .collect()
        };
        MatrixQ2K { rows: [row(0), row(1)] }
    }

    pub fn add(&self, f: &FieldCtx, other: &MatrixQ2K) -> MatrixQ2K {
        let row = |i: usize| -> Vec<FieldElement> {
            self.rows[i]
                .iter()
                .zip(&other.rows[i])
                .map(|(&x, &y)| f.add(x, y))
                .collect()
        };
        MatrixQ2K { rows: [row(0), row(1)] }
    }

    pub fn format(&self, f: &FieldCtx) -> [Vec<String>; 2] {
        [0, 1].map(|i| self.rows[i].iter().map(|&x| f.format(x)).collect())
    }
}

/// Rank over GF(q): 0 for the zero matrix, 1 when one row is a multiple of
/// the other (a zero row included), 2 otherwise.
pub fn rank2xk(f: &FieldCtx, m: &MatrixQ2K) -> u8 {
    let [top, bottom] = &m.rows;
    let top_zero = top.iter().all(|x| x.is_zero());
    let bottom_zero = bottom.iter().all(|x| x.is_zero());
    match (top_zero, bottom_zero) {
        (true, true) => 0,
        (true, false) | (false, true) => 1,
        (false, false) => {
            let j = top.iter().position(|x| !x.is_zero()).expect("top row is nonzero");
            let ratio = f.div(bottom[j], top[j]).expect("pivot is nonzero");
            let proportional = top.iter().zip(bottom).all(|(&t, &b)| f.mul(ratio, t) == b);
            if proportional {
                1
            } else {
                2
            }
        }
    }
}

/// How a rank-1 difference `M(l2) - M(l1)` is rank 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "factor", rename_all = "snake_case")]
pub enum RankOneCase {
    /// Top row zero: the lines share the coefficient a.
    TopZero,
    /// Bottom row zero: the lines share the coefficient b.
    BottomZero,
    /// Both rows nonzero, bottom = β · top with β ∈ GF(q)^×; the packed index of β.
    Proportional(u32),
}

/// Case of a rank-1 matrix, or `None` when the rank is not 1.
pub fn rank_one_case(f: &FieldCtx, m: &MatrixQ2K) -> Option<RankOneCase> {
    if rank2xk(f, m) != 1 {
        return None;
    }
    let [top, bottom] = &m.rows;
    if top.iter().all(|x| x.is_zero()) {
        return Some(RankOneCase::TopZero);
    }
    if bottom.iter().all(|x| x.is_zero()) {
        return Some(RankOneCase::BottomZero);
    }
    let j = top.iter().position(|x| !x.is_zero())?;
    Some(RankOneCase::Proportional(f.div(bottom[j], top[j]).ok()?.index()))
}

/// H_q(2,k) with its matrices in index order.
#[derive(Clone, Debug)]
pub struct BilinearGraph {
    pub q: u64,
    pub k: usize,
    pub field: FieldCtx,
    pub matrices: Vec<MatrixQ2K>,
    pub graph: LineGraph,
    /// Colour index of each rank-1 case.
    pub cases: Vec<RankOneCase>,
}

impl BilinearGraph {
    /// Vertex of a matrix: base-q digits of the top row then the bottom row,
    /// first entry most significant.
    pub fn index_of(&self, m: &MatrixQ2K) -> usize {
        m.rows
            .iter()
            .flatten()
            .fold(0usize, |acc, x| acc * self.q as usize + x.index() as usize)
    }

    pub fn num_vertices(&self) -> usize {
        self.matrices.len()
    }
}

fn matrix_from_index(f: &FieldCtx, q: usize, k: usize, mut idx: usize) -> MatrixQ2K {
    let mut digits = vec![FieldElement::ZERO; 2 * k];
    for d in digits.iter_mut().rev() {
        *d = f.element((idx % q) as u64).expect("digit below q");
        idx /= q;
    }
    let bottom = digits.split_off(k);
    MatrixQ2K { rows: [digits, bottom] }
}

/// Builds H_q(2,k), q = p^e: all 2×k matrices over GF(q), adjacent when
/// their difference has rank 1. Edges are coloured by [`RankOneCase`].
pub fn build_hq2k(p: u64, e: u32, k: u32) -> Result<BilinearGraph> {
    if e == 0 || k == 0 {
        return Err(BilinearError::Parameter(format!("e = {e}, k = {k} must be positive")));
    }
    let q = p.checked_pow(e).ok_or_else(|| BilinearError::Parameter("q overflows".into()))?;
    let size = q
        .checked_pow(2 * k)
        .filter(|&s| s <= MAX_HQ_VERTICES)
        .ok_or(BilinearError::TooLarge(q.saturating_pow(2 * k)))?;
    let field = FieldCtx::new(p, e)?;
    let (qu, ku, nv) = (q as usize, k as usize, size as usize);
    let matrices: Vec<MatrixQ2K> = (0..nv).map(|i| matrix_from_index(&field, qu, ku, i)).collect();

    let mut cases: Vec<RankOneCase> = vec![RankOneCase::TopZero, RankOneCase::BottomZero];
    cases.extend(field.elements().skip(1).map(|b| RankOneCase::Proportional(b.index())));
    let case_color: HashMap<RankOneCase, u16> = cases.iter().enumerate().map(|(i, &c)| (c, i as u16)).collect();
    let rank_one: Vec<(MatrixQ2K, u16)> = matrices
        .iter()
        .filter_map(|m| rank_one_case(&field, m).map(|c| (m.clone(), case_color[&c])))
        .collect();

    let proto = BilinearGraph {
        q,
        k: ku,
        field,
        matrices,
        graph: LineGraph::from_edges(0, [], vec![])?,
        cases: cases.clone(),
    };
    let edges: Vec<(usize, usize, u16)> = (0..nv)
        .into_par_iter()
        .flat_map_iter(|u| {
            let proto = &proto;
            let m = &proto.matrices[u];
            rank_one.iter().filter_map(move |(d, c)| {
                let v = proto.index_of(&m.add(&proto.field, d));
                (v > u).then_some((u, v, *c))
            })
        })
        .collect();
    let names = cases
        .iter()
        .map(|c| match *c {
            RankOneCase::TopZero => "top=0".to_string(),
            RankOneCase::BottomZero => "bottom=0".to_string(),
            RankOneCase::Proportional(b) => {
                let beta = proto.field.element(b as u64).expect("case factor is a field element");
                format!("bottom={}*top", proto.field.format(beta))
            }
        })
        .collect();
    let graph = LineGraph::from_edges(nv, edges, names)?;
    Ok(BilinearGraph { graph, ..proto })
}

/// Field isomorphism from the copy of GF(q) inside GF(q^k) onto a standalone GF(q).
#[derive(Clone, Debug)]
pub struct SubfieldIso {
    to_small: HashMap<FieldElement, FieldElement>,
    to_big: Vec<FieldElement>,
}

impl SubfieldIso {
    /// Sends the generator x of the small field to the smallest-index root
    /// of its modulus in the subfield of `big`.
    pub fn new(big: &FieldCtx, small: &FieldCtx) -> Result<Self> {
        let q = small.order() as u64;
        let scalars = big.subfield_elements(q)?;
        let eval = |poly: &[u32], x: FieldElement| {
            poly.iter()
                .rev()
                .fold(FieldElement::ZERO, |acc, &c| big.add(big.mul(acc, x), big.from_int(c as i64)))
        };
        let root = *scalars
            .iter()
            .find(|&&r| eval(small.modulus(), r).is_zero())
            .ok_or_else(|| BilinearError::Parameter("modulus has no root in the subfield".into()))?;
        let to_big: Vec<FieldElement> = small.elements().map(|x| eval(&small.coeffs(x), root)).collect();
        let to_small = to_big.iter().enumerate().map(|(i, &b)| (b, small.element(i as u64).unwrap())).collect();
        Ok(SubfieldIso { to_small, to_big })
    }

    pub fn to_small(&self, x: FieldElement) -> Option<FieldElement> {
        self.to_small.get(&x).copied()
    }

    pub fn to_big(&self, x: FieldElement) -> FieldElement {
        self.to_big[x.index() as usize]
    }
}

/// The coordinate data needed to send lines of R(q, q^k) to matrices.
#[derive(Clone, Debug)]
pub struct LineMatrixMap {
    pub basis: SubfieldBasis,
    pub iso: SubfieldIso,
}

impl LineMatrixMap {
    pub fn new(model: &RectangleModel, h: &BilinearGraph) -> Result<Self> {
        let c = model.coords()?;
        if c.q != h.q || c.field.degree() as usize != h.k * h.field.degree() as usize {
            return Err(BilinearError::Mismatch);
        }
        Ok(LineMatrixMap {
            basis: c.field.subfield_basis(c.q)?,
            iso: SubfieldIso::new(&c.field, &h.field)?,
        })
    }
}

/// `M(l)`: rows are the GF(q)-coordinates of a and b in the power basis.
pub fn map_line_to_matrix(l: &LineCoeffs, model: &RectangleModel, map: &LineMatrixMap) -> Result<MatrixQ2K> {
    let c = model.coords()?;
    if !l.is_ordinary() {
        return Err(BilinearError::NotOrdinary(c.format_line(l)));
    }
    let row = |x: FieldElement| -> Vec<FieldElement> {
        map.basis
            .coords(x)
            .into_iter()
            .map(|s| map.iso.to_small(s).expect("coordinates lie in the subfield"))
            .collect()
    };
    Ok(MatrixQ2K {
        rows: [row(l.a()), row(l.b())],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoWitness {
    pub u: usize,
    pub v: usize,
    pub lines_adjacent: bool,
    pub matrices_adjacent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub vertices: usize,
    pub bijective: bool,
    pub pairs_checked: u64,
    pub adjacency_preserved: bool,
    pub witness: Option<IsoWitness>,
    /// Edges whose rank-1 case disagrees with the special line of the meeting point.
    pub case_mismatches: usize,
    pub valid: bool,
}

/// Certifies that `l ↦ M(l)` is an isomorphism from the graph of lines onto
/// H_q(2,k) by checking every vertex pair, and that the rank-1 case of each
/// edge matches its colour: `top=0` ⇔ s_∞, `bottom=0` ⇔ s_0 and
/// `bottom=β·top` ⇔ s_β.
pub fn certify_isomorphism(lines: &LineGraph, model: &RectangleModel, h: &BilinearGraph) -> Result<IsoCertificate> {
    let map = LineMatrixMap::new(model, h)?;
    let nv = lines.num_vertices();
    if nv != h.num_vertices() {
        return Err(BilinearError::Mismatch);
    }
    let phi: Vec<usize> = (0..nv)
        .map(|v| Ok(h.index_of(&map_line_to_matrix(&model.vertex_coeffs(v)?, model, &map)?)))
        .collect::<Result<_>>()?;
    let mut seen = vec![false; nv];
    let bijective = phi.iter().all(|&w| !std::mem::replace(&mut seen[w], true));

    let hg = &h.graph;
    let witness = (0..nv).into_par_iter().find_map_first(|u| {
        (u + 1..nv).find_map(|v| {
            let a = lines.adjacent(u, v);
            let b = hg.adjacent(phi[u], phi[v]);
            (a != b).then_some(IsoWitness {
                u,
                v,
                lines_adjacent: a,
                matrices_adjacent: b,
            })
        })
    });

    let expected_case = |color: u16| -> Option<RankOneCase> {
        let (line, _) = model.special.get(color as usize)?;
        match model.special_label(*line)? {
            SpecialLabel::Infinity => Some(RankOneCase::TopZero),
            SpecialLabel::Beta(b) if b.is_zero() => Some(RankOneCase::BottomZero),
            SpecialLabel::Beta(b) => Some(RankOneCase::Proportional(map.iso.to_small(b)?.index())),
            SpecialLabel::Named(_) => None,
        }
    };
    let case_mismatches = lines
        .edges()
        .filter(|&(u, v, c)| {
            let hc = hg.color(phi[u], phi[v]);
            let found = hc.and_then(|i| h.cases.get(i as usize).copied());
            found.is_none() || found != expected_case(c)
        })
        .count();

    let adjacency_preserved = witness.is_none();
    Ok(IsoCertificate {
        vertices: nv,
        bijective,
        pairs_checked: (nv * nv.saturating_sub(1) / 2) as u64,
        adjacency_preserved,
        witness,
        case_mismatches,
        valid: bijective && adjacency_preserved && case_mismatches == 0,
    })
}

/// Maximal clique sizes of H_q(2,k) with multiplicities, smallest first.
pub fn clique_sizes(h: &BilinearGraph) -> Result<BTreeMap<usize, usize>> {
    let mut sizes = BTreeMap::new();
    for c in enumerate_maximal_cliques(&h.graph, h.num_vertices())? {
        *sizes.entry(c.len()).or_insert(0) += 1;
    }
    Ok(sizes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub vertex: usize,
    pub line: String,
    pub matrix: [Vec<String>; 2],
    pub matrix_vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingTable {
    pub family: Family,
    pub q: u64,
    pub k: usize,
    pub basis: Vec<String>,
    pub entries: Vec<MappingEntry>,
}

/// Line ↔ matrix table in vertex order.
pub fn mapping_table(model: &RectangleModel, h: &BilinearGraph) -> Result<MappingTable> {
    let map = LineMatrixMap::new(model, h)?;
    let c = model.coords()?;
    let entries = (0..model.num_vertices())
        .map(|v| {
            let l = model.vertex_coeffs(v)?;
            let m = map_line_to_matrix(&l, model, &map)?;
            Ok(MappingEntry {
                vertex: v,
                line: c.format_line(&l),
                matrix: m.format(&h.field),
                matrix_vertex: h.index_of(&m),
            })
        })
        .collect::<Result<_>>()?;
    Ok(MappingTable {
        family: model.family,
        q: h.q,
        k: h.k,
        basis: map.basis.basis().iter().map(|&b| c.field.format(b)).collect(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_l2k, build_subplane_rect, coordinatize_l2k};
    use crate::linegraph::build_line_graph;

    fn mat(f: &FieldCtx, top: &[u64], bottom: &[u64]) -> MatrixQ2K {
        let row = |r: &[u64]| r.iter().map(|&x| f.element(x).unwrap()).collect();
        MatrixQ2K {
            rows: [row(top), row(bottom)],
        }
    }

    #[test]
    fn rank_examples() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(rank2xk(&f, &mat(&f, &[0, 0], &[0, 0])), 0);
        assert_eq!(rank2xk(&f, &mat(&f, &[1, 0], &[0, 0])), 1);
        assert_eq!(rank2xk(&f, &mat(&f, &[1, 0], &[0, 1])), 2);
        assert_eq!(rank2xk(&f, &mat(&f, &[1, 2], &[2, 1])), 1);
        assert_eq!(rank_one_case(&f, &mat(&f, &[1, 2], &[2, 1])), Some(RankOneCase::Proportional(2)));
    }

    #[test]
    fn degrees() {
        for (p, e, k, nv, r) in [(2, 1, 2, 16, 9), (3, 1, 2, 81, 32), (2, 1, 3, 64, 21)] {
            let h = build_hq2k(p, e, k).unwrap();
            assert_eq!(h.num_vertices(), nv);
            assert!((0..nv).all(|v| h.graph.degree(v) == r));
        }
        assert!(matches!(build_hq2k(2, 1, 9), Err(BilinearError::TooLarge(_))));
    }

    #[test]
    fn line_matrices_r24() {
        let model = build_subplane_rect(2, 1, 2).unwrap();
        let h = build_hq2k(2, 1, 2).unwrap();
        let map = LineMatrixMap::new(&model, &h).unwrap();
        let f = &model.coords().unwrap().field;
        let omega = f.element(2).unwrap();
        let zero = map_line_to_matrix(&LineCoeffs::ordinary(f.zero(), f.zero()), &model, &map).unwrap();
        assert_eq!(zero, MatrixQ2K::zero(2));
        let m = map_line_to_matrix(&LineCoeffs::ordinary(omega, f.one()), &model, &map).unwrap();
        assert_eq!(m, mat(&h.field, &[0, 1], &[1, 0]));
        let table = mapping_table(&model, &h).unwrap();
        let mut images: Vec<_> = table.entries.iter().map(|e| e.matrix_vertex).collect();
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 16);
    }

    #[test]
    fn isomorphisms() {
        let l22 = coordinatize_l2k(&build_l2k(2).unwrap()).unwrap();
        for (model, (p, e, k)) in [
            (l22, (2, 1, 2)),
            (build_subplane_rect(3, 1, 2).unwrap(), (3, 1, 2)),
            (build_subplane_rect(2, 2, 2).unwrap(), (2, 2, 2)),
        ] {
            let g = build_line_graph(&model).unwrap();
            let h = build_hq2k(p, e, k).unwrap();
            let cert = certify_isomorphism(&g, &model, &h).unwrap();
            assert!(cert.valid, "{cert:?}");
        }
    }

    #[test]
    fn broken_map_is_caught() {
        let model = build_subplane_rect(2, 1, 2).unwrap();
        let g = build_line_graph(&model).unwrap();
        let h = build_hq2k(2, 1, 2).unwrap();
        let (u, v, _) = g.edges().next().unwrap();
        let cert = certify_isomorphism(&g.without_edge(u, v), &model, &h).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.witness.map(|w| (w.u, w.v)), Some((u, v)));
    }

    #[test]
    fn hq_clique_sizes() {
        let h = build_hq2k(3, 1, 2).unwrap();
        let sizes = clique_sizes(&h).unwrap();
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![(9, 72)]);
        let h = build_hq2k(2, 1, 3).unwrap();
        let sizes = clique_sizes(&h).unwrap();
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![(4, 112), (8, 24)]);
    }
}

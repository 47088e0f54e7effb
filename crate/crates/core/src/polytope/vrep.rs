use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hrep::affine_hull_equations;
use super::{Halfspace, HPolytope};
use crate::exact::{lp_solve, Direction, LpBuilder, QMatrix, QVector, Rational, RowSense};

/// Convex hull of an irredundant, lexicographically sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VPolytope {
    #[serde(skip)]
    dim: usize,
    vertices: Vec<QVector>,
}

impl VPolytope {
    pub(crate) fn from_vertices_unchecked(dim: usize, mut vertices: Vec<QVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        VPolytope { dim, vertices }
    }

    /// Hull of arbitrary points; duplicates and non-extreme points are dropped.
    pub fn from_points(dim: usize, points: Vec<QVector>) -> Self {
        let pts: Vec<QVector> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.len() <= 2 {
            return VPolytope { dim, vertices: pts };
        }
        let keep: Vec<QVector> = (0..pts.len())
            .filter(|&i| !in_hull_of_others(&pts, i))
            .map(|i| pts[i].clone())
            .collect();
        VPolytope { dim, vertices: keep }
    }

    pub fn point(p: QVector) -> Self {
        VPolytope {
            dim: p.dim(),
            vertices: vec![p],
        }
    }

    /// Restores the ambient dimension after deserialization.
    pub fn normalize_after_parse(mut self) -> Self {
        self.dim = self.vertices.first().map(|v| v.dim()).unwrap_or(0);
        self.vertices.sort();
        self.vertices.dedup();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn affine_dim(&self) -> Option<usize> {
        crate::exact::affine_dim(&self.vertices)
    }

    /// Image under `z ↦ M z`, reduced to extreme points.
    pub fn image(&self, m: &QMatrix) -> VPolytope {
        let pts = self.vertices.iter().map(|v| m.mul_vec(v)).collect();
        VPolytope::from_points(m.rows(), pts)
    }

    /// Membership via an LP on convex weights.
    pub fn contains(&self, p: &[Rational]) -> bool {
        convex_weights(&self.vertices, p).is_some()
    }

    /// Facet description; see [`to_halfspaces`].
    pub fn to_halfspaces(&self) -> HPolytope {
        to_halfspaces(self)
    }

    pub fn min_over(&self, objective: &[Rational]) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.dot(objective))
            .min()
            .expect("non-empty polytope")
    }
}

/// Convex weights expressing `p` over `pts`, if any.
pub fn convex_weights(pts: &[QVector], p: &[Rational]) -> Option<QVector> {
    if pts.is_empty() {
        return None;
    }
    let n = pts.len();
    let d = p.len();
    let mut b = LpBuilder::new(Direction::Maximize, vec![Rational::zero(); n]);
    for j in 0..d {
        b.push_row(pts.iter().map(|q| q[j].clone()).collect(), RowSense::Eq, p[j].clone());
    }
    b.push_row(vec![Rational::one(); n], RowSense::Eq, Rational::one());
    lp_solve(&b.build().ok()?).vertex().cloned()
}

fn in_hull_of_others(pts: &[QVector], i: usize) -> bool {
    let others: Vec<QVector> = pts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, q)| q.clone())
        .collect();
    convex_weights(&others, &pts[i]).is_some()
}

/// Irredundant facet description of `conv(vertices)`: one inequality per
/// facet plus canonical equations of the affine hull.
pub fn to_halfspaces(v: &VPolytope) -> HPolytope {
    let dim = v.dim;
    let pts = &v.vertices;
    assert!(!pts.is_empty(), "to_halfspaces needs at least one vertex");
    let (eqs, k) = affine_hull_equations(pts, dim);
    let mut ineqs = Vec::new();
    if k > 0 {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for subset in (0..pts.len()).combinations(k) {
            let mut rows: Vec<QVector> = eqs.iter().map(|e| e.normal.clone()).collect();
            let p0 = &pts[subset[0]];
            rows.extend(subset[1..].iter().map(|&i| pts[i].sub(p0)));
            let null = QMatrix::from_qvectors(&rows, dim).expect("equal dims").null_space();
            if null.len() != 1 {
                continue;
            }
            let n = &null[0];
            let c = n.dot(p0);
            let vals: Vec<Rational> = pts.iter().map(|p| n.dot(p)).collect();
            let h = if vals.iter().all(|x| x <= &c) {
                Halfspace::new(n.clone(), c)
            } else if vals.iter().all(|x| x >= &c) {
                Halfspace::new(n.neg(), -c)
            } else {
                continue;
            };
            let tight: Vec<usize> = (0..pts.len()).filter(|&i| h.is_tight(&pts[i])).collect();
            if seen.insert(tight) {
                ineqs.push(h.normalized());
            }
        }
    }
    ineqs.sort();
    HPolytope::from_parts(dim, ineqs, eqs)
}

use num_traits::{One, Zero};

use super::{HPolytope, Halfspace, VPolytope};
use crate::exact::{QMatrix, QVector, Rational};

/// Polyhedral cone `{d : ⟨a, d⟩ ≤ 0 for every a in halfspaces}`, also held as
/// `cone(rays) + span(lineality)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    halfspaces: Vec<QVector>,
    rays: Vec<QVector>,
    lineality: Vec<QVector>,
}

impl Cone {
    pub fn from_halfspaces(dim: usize, halfspaces: Vec<QVector>) -> Self {
        let mut halfspaces: Vec<QVector> = halfspaces
            .into_iter()
            .filter(|a| !a.is_zero())
            .map(|a| a.normalized_direction())
            .collect();
        halfspaces.sort();
        halfspaces.dedup();
        if halfspaces.is_empty() {
            return Cone {
                dim,
                halfspaces,
                rays: Vec::new(),
                lineality: (0..dim).map(|i| QVector::unit(dim, i)).collect(),
            };
        }
        let a = QMatrix::from_qvectors(&halfspaces, dim).expect("equal dims");
        let lineality = a.null_space();
        // Pointed part: rays are the vertices of its section by Σ⟨a,d⟩ = -1.
        let mut section = HPolytope::new(dim);
        let mut sum = QVector::zeros(dim);
        for h in &halfspaces {
            section.push_ineq(Halfspace::new(h.clone(), Rational::zero()));
            sum = sum.add(h);
        }
        for l in &lineality {
            section.push_eq(Halfspace::new(l.clone(), Rational::zero()));
        }
        section.push_eq(Halfspace::new(sum, -Rational::one()));
        let mut rays: Vec<QVector> = match section.to_vertices() {
            Ok(v) => v.vertices().iter().map(|r| r.normalized_direction()).collect(),
            Err(_) => Vec::new(),
        };
        rays.sort();
        rays.dedup();
        Cone {
            dim,
            halfspaces,
            rays,
            lineality,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[QVector] {
        &self.halfspaces
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[QVector] {
        &self.lineality
    }

    pub fn is_whole_space(&self) -> bool {
        self.lineality.len() == self.dim
    }

    pub fn contains(&self, d: &[Rational]) -> bool {
        self.halfspaces.iter().all(|a| a.dot(d) <= Rational::zero())
    }

    pub fn contains_in_interior(&self, d: &[Rational]) -> bool {
        self.halfspaces.iter().all(|a| a.dot(d) < Rational::zero())
    }

    /// The cone as an (unbounded) H-polytope.
    pub fn to_hpolytope(&self) -> HPolytope {
        HPolytope::from_parts(
            self.dim,
            self.halfspaces
                .iter()
                .map(|a| Halfspace::new(a.clone(), Rational::zero()))
                .collect(),
            Vec::new(),
        )
    }
}

/// For each vertex `w`, the cone of objectives `d` minimized at `w`:
/// `⟨w, d⟩ ≤ ⟨w', d⟩` for every vertex `w'`.
pub fn normal_fan(p: &VPolytope) -> Vec<(QVector, Cone)> {
    let vs = p.vertices();
    vs.iter()
        .map(|w| {
            let normals = vs.iter().filter(|u| *u != w).map(|u| w.sub(u)).collect();
            (w.clone(), Cone::from_halfspaces(p.dim(), normals))
        })
        .collect()
}

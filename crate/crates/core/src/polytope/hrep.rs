use std::collections::BTreeSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{PolytopeError, VPolytope};
use crate::exact::{dot, lp_solve, solve_linear_system, Direction, LpBuilder, LpOutcome, QMatrix, QVector, Rational, RowSense};

/// `{ z : ⟨normal, z⟩ ≤ offset }`, or the hyperplane `⟨normal, z⟩ = offset`
/// when used as an equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: QVector,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: QVector, offset: Rational) -> Self {
        Halfspace { normal, offset }
    }

    /// `⟨normal, z⟩ - offset`; non-positive inside.
    pub fn slack(&self, z: &[Rational]) -> Rational {
        self.normal.dot(z) - &self.offset
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        !self.slack(z).is_positive()
    }

    pub fn is_tight(&self, z: &[Rational]) -> bool {
        self.slack(z).is_zero()
    }

    /// The opposite closed halfspace `⟨normal, z⟩ ≥ offset`.
    pub fn flipped(&self) -> Halfspace {
        Halfspace {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }

    /// Positive rescaling with the first non-zero normal entry of magnitude one.
    pub fn normalized(&self) -> Halfspace {
        match self.normal.iter().find(|q| !q.is_zero()) {
            Some(lead) => {
                let s = Rational::one() / lead.abs();
                Halfspace {
                    normal: self.normal.scale(&s),
                    offset: &self.offset * &s,
                }
            }
            None => self.clone(),
        }
    }
}

/// Intersection of finitely many halfspaces and hyperplanes in ℚ^dim.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HPolytope {
    dim: usize,
    ineqs: Vec<Halfspace>,
    eqs: Vec<Halfspace>,
}

/// JSON H-form: `{"A": [[...]], "b": [...]}`, each row meaning `A_i·z ≤ b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HForm {
    #[serde(rename = "A")]
    pub a: Vec<QVector>,
    pub b: QVector,
}

impl HPolytope {
    pub fn new(dim: usize) -> Self {
        HPolytope {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn from_parts(dim: usize, ineqs: Vec<Halfspace>, eqs: Vec<Halfspace>) -> Self {
        for h in ineqs.iter().chain(&eqs) {
            assert_eq!(h.normal.dim(), dim, "halfspace dimension mismatch");
        }
        HPolytope { dim, ineqs, eqs }
    }

    /// The standard simplex `{ z ≥ 0, Σ z = 1 }` in ℚ^n.
    pub fn simplex(n: usize) -> Self {
        let mut p = HPolytope::new(n);
        for i in 0..n {
            p.push_ineq(Halfspace::new(QVector::unit(n, i).neg(), Rational::zero()));
        }
        p.push_eq(Halfspace::new(QVector::new(vec![Rational::one(); n]), Rational::one()));
        p
    }

    /// Axis-aligned box `lo ≤ z ≤ hi`.
    pub fn cube(lo: &[Rational], hi: &[Rational]) -> Self {
        let n = lo.len();
        let mut p = HPolytope::new(n);
        for i in 0..n {
            p.push_ineq(Halfspace::new(QVector::unit(n, i), hi[i].clone()));
            p.push_ineq(Halfspace::new(QVector::unit(n, i).neg(), -lo[i].clone()));
        }
        p
    }

    pub fn from_hform(form: &HForm) -> Result<Self, PolytopeError> {
        let dim = form.a.first().map(|r| r.dim()).unwrap_or(0);
        if form.a.len() != form.b.dim() || form.a.iter().any(|r| r.dim() != dim) {
            return Err(PolytopeError::Malformed("H-form rows and right-hand side disagree".into()));
        }
        let ineqs = form
            .a
            .iter()
            .zip(form.b.iter())
            .map(|(a, b)| Halfspace::new(a.clone(), b.clone()))
            .collect();
        Ok(HPolytope {
            dim,
            ineqs,
            eqs: Vec::new(),
        })
    }

    /// Equalities are written as pairs of opposite inequalities.
    pub fn to_hform(&self) -> HForm {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for h in &self.ineqs {
            a.push(h.normal.clone());
            b.push(h.offset.clone());
        }
        for e in &self.eqs {
            a.push(e.normal.clone());
            b.push(e.offset.clone());
            let f = e.flipped();
            a.push(f.normal);
            b.push(f.offset);
        }
        HForm { a, b: QVector::new(b) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[Halfspace] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[Halfspace] {
        &self.eqs
    }

    pub fn push_ineq(&mut self, h: Halfspace) {
        assert_eq!(h.normal.dim(), self.dim);
        self.ineqs.push(h);
    }

    pub fn push_eq(&mut self, h: Halfspace) {
        assert_eq!(h.normal.dim(), self.dim);
        self.eqs.push(h);
    }

    pub fn with_ineq(mut self, h: Halfspace) -> Self {
        self.push_ineq(h);
        self
    }

    pub fn with_eq(mut self, h: Halfspace) -> Self {
        self.push_eq(h);
        self
    }

    pub fn contains(&self, z: &[Rational]) -> bool {
        self.ineqs.iter().all(|h| h.contains(z)) && self.eqs.iter().all(|h| h.is_tight(z))
    }

    /// Indices of inequalities tight at `z`.
    pub fn tight_set(&self, z: &[Rational]) -> Vec<usize> {
        (0..self.ineqs.len()).filter(|&i| self.ineqs[i].is_tight(z)).collect()
    }

    /// Constraint concatenation (no canonicalization).
    pub fn meet(&self, other: &HPolytope) -> HPolytope {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut p = self.clone();
        p.ineqs.extend(other.ineqs.iter().cloned());
        p.eqs.extend(other.eqs.iter().cloned());
        p
    }

    fn feasibility_lp(&self) -> LpOutcome {
        let mut b = LpBuilder::new(Direction::Maximize, vec![Rational::zero(); self.dim.max(1)]);
        for j in 0..self.dim {
            b = b.free(j);
        }
        for h in &self.ineqs {
            b.push_row(h.normal.to_vec(), RowSense::Le, h.offset.clone());
        }
        for h in &self.eqs {
            b.push_row(h.normal.to_vec(), RowSense::Eq, h.offset.clone());
        }
        lp_solve(&b.build().expect("well-formed feasibility program"))
    }

    pub fn is_empty(&self) -> bool {
        if self.dim == 0 {
            return !self.contains(&[]);
        }
        self.feasibility_lp().is_infeasible()
    }

    /// Parametrizes the equality subspace: `z = base + Σ w_i dirs_i`.
    fn equality_frame(&self) -> Option<(QVector, Vec<QVector>)> {
        if self.eqs.is_empty() {
            let dirs = (0..self.dim).map(|i| QVector::unit(self.dim, i)).collect();
            return Some((QVector::zeros(self.dim), dirs));
        }
        let normals: Vec<QVector> = self.eqs.iter().map(|e| e.normal.clone()).collect();
        let a = QMatrix::from_qvectors(&normals, self.dim).expect("equal dims");
        let b: Vec<Rational> = self.eqs.iter().map(|e| e.offset.clone()).collect();
        let sol = solve_linear_system(&a, &b)?;
        Some((sol.particular, sol.null_basis))
    }

    /// Exact vertex enumeration by brute force over candidate bases.
    pub fn to_vertices(&self) -> Result<VPolytope, PolytopeError> {
        let Some((base, dirs)) = self.equality_frame() else {
            return Err(PolytopeError::Empty);
        };
        let k = dirs.len();
        // Inequalities in frame coordinates, deduplicated.
        let mut proj: BTreeSet<Halfspace> = BTreeSet::new();
        for h in &self.ineqs {
            let a = QVector::new(dirs.iter().map(|d| h.normal.dot(d)).collect());
            let c = &h.offset - h.normal.dot(&base);
            if a.is_zero() {
                if c.is_negative() {
                    return Err(PolytopeError::Empty);
                }
                continue;
            }
            proj.insert(Halfspace::new(a, c).normalized());
        }
        let proj: Vec<Halfspace> = proj.into_iter().collect();
        let lift = |w: &[Rational]| -> QVector {
            let mut z = base.clone().into_inner();
            for (wi, d) in w.iter().zip(&dirs) {
                if wi.is_zero() {
                    continue;
                }
                for (zj, dj) in z.iter_mut().zip(d.iter()) {
                    *zj += wi * dj;
                }
            }
            QVector::new(z)
        };
        if k == 0 {
            return Ok(VPolytope::from_vertices_unchecked(self.dim, vec![base]));
        }
        let mut found: BTreeSet<QVector> = BTreeSet::new();
        for subset in (0..proj.len()).combinations(k) {
            let rows: Vec<QVector> = subset.iter().map(|&i| proj[i].normal.clone()).collect();
            let m = QMatrix::from_qvectors(&rows, k).expect("equal dims");
            let rhs: Vec<Rational> = subset.iter().map(|&i| proj[i].offset.clone()).collect();
            let Some(sol) = solve_linear_system(&m, &rhs) else { continue };
            if !sol.is_unique() {
                continue;
            }
            let w = sol.particular;
            if proj.iter().all(|h| h.contains(&w)) {
                found.insert(lift(&w));
            }
        }
        if found.is_empty() {
            return if self.is_empty() {
                Err(PolytopeError::Empty)
            } else {
                Err(PolytopeError::Unbounded)
            };
        }
        // Bounded iff the recession cone {w : A w ≤ 0} is trivial.
        let mut b = LpBuilder::new(Direction::Maximize, vec![Rational::zero(); k]);
        for j in 0..k {
            b = b.free(j);
        }
        let mut sum = vec![Rational::zero(); k];
        for h in &proj {
            b.push_row(h.normal.to_vec(), RowSense::Le, Rational::zero());
            for (s, a) in sum.iter_mut().zip(h.normal.iter()) {
                *s += a;
            }
        }
        b.push_row(sum, RowSense::Le, -Rational::one());
        if !lp_solve(&b.build().expect("well-formed recession program")).is_infeasible() {
            return Err(PolytopeError::Unbounded);
        }
        Ok(VPolytope::from_vertices_unchecked(self.dim, found.into_iter().collect()))
    }

    /// Irredundant description: affine-hull equalities plus one inequality per facet.
    pub fn canonical(&self) -> Result<HPolytope, PolytopeError> {
        let v = self.to_vertices()?;
        Ok(canonical_from_vertices(self, &v))
    }
}

/// Keeps the inequalities of `h` that define facets of `conv(v)` and
/// replaces the equalities by a canonical affine-hull basis.
pub(crate) fn canonical_from_vertices(h: &HPolytope, v: &VPolytope) -> HPolytope {
    let (eqs, k) = affine_hull_equations(v.vertices(), h.dim);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut ineqs = Vec::new();
    for ineq in &h.ineqs {
        let tight: Vec<usize> = (0..v.len()).filter(|&i| ineq.is_tight(&v.vertices()[i])).collect();
        if tight.len() == v.len() {
            continue;
        }
        if k == 0 {
            continue;
        }
        let pts: Vec<QVector> = tight.iter().map(|&i| v.vertices()[i].clone()).collect();
        if crate::exact::affine_dim(&pts) != Some(k - 1) {
            continue;
        }
        if seen.insert(tight) {
            ineqs.push(ineq.normalized());
        }
    }
    HPolytope {
        dim: h.dim,
        ineqs,
        eqs,
    }
}

/// Canonical equations of the affine hull of `pts` and its dimension.
pub(crate) fn affine_hull_equations(pts: &[QVector], dim: usize) -> (Vec<Halfspace>, usize) {
    let v0 = &pts[0];
    let diffs: Vec<QVector> = pts[1..].iter().map(|p| p.sub(v0)).collect();
    let normals = if diffs.is_empty() {
        (0..dim).map(|i| QVector::unit(dim, i)).collect::<Vec<_>>()
    } else {
        QMatrix::from_qvectors(&diffs, dim).expect("equal dims").null_space()
    };
    let k = dim - normals.len();
    // RREF of the normals gives a canonical basis.
    let eqs = if normals.is_empty() {
        Vec::new()
    } else {
        let r = crate::exact::Rref::of(&QMatrix::from_qvectors(&normals, dim).expect("equal dims"));
        (0..r.pivots.len())
            .map(|i| {
                let n = r.matrix.row_vector(i);
                let off = dot(&n, v0);
                Halfspace::new(n, off)
            })
            .collect()
    };
    (eqs, k)
}

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::hrep::canonical_from_vertices;
use super::{to_halfspaces, HPolytope, Halfspace, PolytopeError, VPolytope};
use crate::exact::{affine_dim, QMatrix, QVector, Rational, Rref};

/// Coordinates on an affine subspace `{y : N y = e}`: the RREF of `N` splits
/// the ambient coordinates into pivots and free ones, and the free ones are
/// used as local coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFrame {
    dim: usize,
    pivots: Vec<usize>,
    free: Vec<usize>,
    rows: Vec<QVector>,
    rhs: Vec<Rational>,
}

impl AffineFrame {
    /// `None` if the equations are inconsistent.
    pub fn from_equations(dim: usize, eqs: &[Halfspace]) -> Option<Self> {
        if eqs.is_empty() {
            return Some(AffineFrame {
                dim,
                pivots: Vec::new(),
                free: (0..dim).collect(),
                rows: Vec::new(),
                rhs: Vec::new(),
            });
        }
        let aug: Vec<QVector> = eqs
            .iter()
            .map(|e| {
                let mut r = e.normal.to_vec();
                r.push(e.offset.clone());
                QVector::new(r)
            })
            .collect();
        let r = Rref::of(&QMatrix::from_qvectors(&aug, dim + 1).expect("equal dims"));
        if r.pivots.last() == Some(&dim) {
            return None;
        }
        let pivots = r.pivots.clone();
        let free = (0..dim).filter(|c| !pivots.contains(c)).collect();
        let rows = (0..pivots.len())
            .map(|i| QVector::new(r.matrix.row(i)[..dim].to_vec()))
            .collect();
        let rhs = (0..pivots.len()).map(|i| r.matrix.get(i, dim).clone()).collect();
        Some(AffineFrame {
            dim,
            pivots,
            free,
            rows,
            rhs,
        })
    }

    pub fn of_points(pts: &[QVector]) -> Self {
        let dim = pts[0].dim();
        let (eqs, _) = super::hrep::affine_hull_equations(pts, dim);
        AffineFrame::from_equations(dim, &eqs).expect("hull equations are consistent")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn local(&self, y: &[Rational]) -> QVector {
        QVector::new(self.free.iter().map(|&f| y[f].clone()).collect())
    }

    pub fn lift(&self, w: &[Rational]) -> QVector {
        let mut y = vec![Rational::zero(); self.dim];
        for (&f, wf) in self.free.iter().zip(w) {
            y[f] = wf.clone();
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut v = self.rhs[i].clone();
            for (&f, wf) in self.free.iter().zip(w) {
                v -= &self.rows[i][f] * wf;
            }
            y[p] = v;
        }
        QVector::new(y)
    }

    /// Restricts `⟨a, y⟩ ≤ b` to local coordinates.
    pub fn localize(&self, h: &Halfspace) -> Halfspace {
        let mut normal: Vec<Rational> = self.free.iter().map(|&f| h.normal[f].clone()).collect();
        let mut offset = h.offset.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            let ap = &h.normal[p];
            if ap.is_zero() {
                continue;
            }
            offset -= ap * &self.rhs[i];
            for (k, &f) in self.free.iter().enumerate() {
                normal[k] -= ap * &self.rows[i][f];
            }
        }
        Halfspace::new(QVector::new(normal), offset)
    }

    /// A global halfspace agreeing with the local one on the subspace.
    pub fn globalize(&self, h: &Halfspace) -> Halfspace {
        let mut normal = vec![Rational::zero(); self.dim];
        for (k, &f) in self.free.iter().enumerate() {
            normal[f] = h.normal[k].clone();
        }
        Halfspace::new(QVector::new(normal), h.offset.clone())
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.rows
            .iter()
            .zip(&self.rhs)
            .all(|(r, e)| &r.dot(y) == e)
    }
}

/// A non-empty bounded polytope kept in both representations.
/// Equality, hashing and order go by the vertex set alone.
#[derive(Debug, Clone)]
pub struct Polytope {
    v: VPolytope,
    h: HPolytope,
}

impl Polytope {
    pub fn from_h(h: &HPolytope) -> Result<Self, PolytopeError> {
        let v = h.to_vertices()?;
        let h = canonical_from_vertices(h, &v);
        Ok(Polytope { v, h })
    }

    pub fn from_v(v: VPolytope) -> Self {
        let h = to_halfspaces(&v);
        Polytope { v, h }
    }

    pub fn from_points(dim: usize, pts: Vec<QVector>) -> Self {
        Polytope::from_v(VPolytope::from_points(dim, pts))
    }

    pub fn simplex(n: usize) -> Self {
        Polytope::from_h(&HPolytope::simplex(n)).expect("simplex is bounded")
    }

    pub fn h(&self) -> &HPolytope {
        &self.h
    }

    pub fn v(&self) -> &VPolytope {
        &self.v
    }

    pub fn vertices(&self) -> &[QVector] {
        self.v.vertices()
    }

    pub fn dim(&self) -> usize {
        self.v.dim()
    }

    pub fn affine_dim(&self) -> usize {
        self.v.affine_dim().expect("non-empty")
    }

    pub fn frame(&self) -> AffineFrame {
        AffineFrame::from_equations(self.dim(), self.h.eqs()).expect("consistent hull")
    }

    /// Vertex average; lies in the relative interior.
    pub fn centroid(&self) -> QVector {
        QVector::average(self.vertices())
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.h.contains(p)
    }

    /// Relative volume measured in the local coordinates of the affine hull.
    pub fn volume(&self) -> Rational {
        self.volume_in(&self.frame())
    }

    /// Volume in the local coordinates of `frame`; zero when lower-dimensional.
    pub fn volume_in(&self, frame: &AffineFrame) -> Rational {
        let k = frame.dim();
        if self.affine_dim() < k {
            return Rational::zero();
        }
        let local: Vec<QVector> = self.vertices().iter().map(|v| frame.local(v)).collect();
        if k == 0 {
            return Rational::one();
        }
        let mut fact = Rational::one();
        for i in 2..=k {
            fact *= Rational::from_integer(i.into());
        }
        let mut total = Rational::zero();
        for s in triangulate_points(&local) {
            let p0 = &local[s[0]];
            let rows: Vec<QVector> = s[1..].iter().map(|&i| local[i].sub(p0)).collect();
            total += QMatrix::from_qvectors(&rows, k).expect("equal dims").det().abs();
        }
        total / fact
    }

    pub fn intersect(&self, other: &Polytope) -> Option<Polytope> {
        Polytope::from_h(&self.h.meet(&other.h)).ok()
    }

    /// Restriction to `{⟨a,y⟩ ≤ b}`.
    pub fn cut(&self, h: &Halfspace) -> Option<Polytope> {
        Polytope::from_h(&self.h.clone().with_ineq(h.clone())).ok()
    }

    pub fn is_full_dim_in(&self, frame: &AffineFrame) -> bool {
        self.affine_dim() == frame.dim()
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl Eq for Polytope {}

impl std::hash::Hash for Polytope {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state)
    }
}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices().cmp(other.vertices())
    }
}

/// Pulling triangulation of a vertex set; each simplex lists indices into `pts`.
fn triangulate_points(pts: &[QVector]) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    tri_rec(pts, idx)
}

fn tri_rec(pts: &[QVector], idx: Vec<usize>) -> Vec<Vec<usize>> {
    let sub: Vec<QVector> = idx.iter().map(|&i| pts[i].clone()).collect();
    let k = affine_dim(&sub).expect("non-empty");
    if k == 0 {
        return vec![vec![idx[0]]];
    }
    if idx.len() == k + 1 {
        return vec![idx];
    }
    let facets = to_halfspaces(&VPolytope::from_vertices_unchecked(sub[0].dim(), sub.clone()));
    let apex = idx[0];
    let mut out = Vec::new();
    for f in facets.ineqs() {
        if f.is_tight(&pts[apex]) {
            continue;
        }
        let face: Vec<usize> = idx.iter().copied().filter(|&i| f.is_tight(&pts[i])).collect();
        for s in tri_rec(pts, face) {
            let mut simplex = vec![apex];
            simplex.extend(s);
            out.push(simplex);
        }
    }
    out
}

/// Triangulation of a polytope into simplices given by their vertices.
pub fn triangulate(v: &VPolytope) -> Vec<Vec<QVector>> {
    let pts = v.vertices();
    triangulate_points(pts)
        .into_iter()
        .map(|s| s.into_iter().map(|i| pts[i].clone()).collect())
        .collect()
}

/// Merges interior-disjoint cells whose union is convex: first the whole
/// family at once, then greedily in pairs. The union of `P` and `Q` is convex
/// iff `vol conv(P ∪ Q) = vol P + vol Q`.
pub fn merge_convex(mut cells: Vec<Polytope>) -> Vec<Polytope> {
    if cells.len() <= 1 {
        return cells;
    }
    let dim = cells[0].dim();
    let frame = AffineFrame::of_points(&cells.iter().flat_map(|c| c.vertices().to_vec()).collect::<Vec<_>>());
    let hull_of = |cs: &[&Polytope]| Polytope::from_points(dim, cs.iter().flat_map(|c| c.vertices().to_vec()).collect());
    let total: Rational = cells.iter().map(|c| c.volume_in(&frame)).sum();
    let all = hull_of(&cells.iter().collect::<Vec<_>>());
    if all.volume_in(&frame) == total {
        return vec![all];
    }
    loop {
        let mut merged = None;
        'search: for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                let hull = hull_of(&[&cells[i], &cells[j]]);
                if hull.volume_in(&frame) == cells[i].volume_in(&frame) + cells[j].volume_in(&frame) {
                    merged = Some((i, j, hull));
                    break 'search;
                }
            }
        }
        match merged {
            Some((i, j, hull)) => {
                cells.remove(j);
                cells[i] = hull;
            }
            None => break,
        }
    }
    cells.sort();
    cells
}

/// A finite family of full-dimensional cells covering an ambient polytope
/// with pairwise interior-disjoint members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopialComplex {
    ambient: Polytope,
    cells: Vec<Polytope>,
}

impl PolytopialComplex {
    /// Cells are stored in canonical (lexicographic vertex list) order.
    pub fn new(ambient: Polytope, mut cells: Vec<Polytope>) -> Self {
        cells.sort();
        PolytopialComplex { ambient, cells }
    }

    pub fn ambient(&self) -> &Polytope {
        &self.ambient
    }

    pub fn cells(&self) -> &[Polytope] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Indices of the cells containing `y`.
    pub fn locate(&self, y: &[Rational]) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].contains(y)).collect()
    }

    /// Checks full-dimensionality, coverage (by volume) and interior-disjointness.
    pub fn validate(&self) -> Result<(), String> {
        validate_cells(&self.ambient, &self.cells)
    }
}

pub(crate) fn validate_cells(ambient: &Polytope, cells: &[Polytope]) -> Result<(), String> {
    let frame = ambient.frame();
    for (i, c) in cells.iter().enumerate() {
        if !c.is_full_dim_in(&frame) {
            return Err(format!("cell {i} is not full-dimensional"));
        }
        if let Some(v) = c.vertices().iter().find(|v| !ambient.contains(v)) {
            return Err(format!("cell {i} leaves the ambient polytope at {v}"));
        }
    }
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            if let Some(c) = cells[i].intersect(&cells[j]) {
                if c.is_full_dim_in(&frame) {
                    return Err(format!("cells {i} and {j} overlap"));
                }
            }
        }
    }
    let total: Rational = cells.iter().map(|c| c.volume_in(&frame)).sum();
    let want = ambient.volume_in(&frame);
    if total != want {
        return Err(format!("cell volumes sum to {total}, ambient volume is {want}"));
    }
    Ok(())
}

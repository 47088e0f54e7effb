use std::collections::BTreeMap;

use itertools::Itertools;

use super::{merge_convex, AffineFrame, HPolytope, Halfspace, Polytope, PolytopialComplex, VPolytope};
use crate::exact::{QMatrix, QVector, Rational};

/// One candidate fiber vertex: the unique point with the domain inequalities
/// in `tight` active and `W y' = W y`, written `z(y) = lin·y + off`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberBasis {
    pub tight: Vec<usize>,
    pub lin: QMatrix,
    pub off: QVector,
}

impl FiberBasis {
    pub fn eval(&self, y: &[Rational]) -> QVector {
        self.lin.mul_vec(y).add(&self.off)
    }
}

/// The fiber map `y ↦ {y' ∈ domain : M y' = M y}` expressed through all of
/// its potential vertex formulas.
#[derive(Debug, Clone)]
pub struct LinearFiberMap {
    map: QMatrix,
    domain: HPolytope,
    bases: Vec<FiberBasis>,
}

impl LinearFiberMap {
    pub fn new(map: &QMatrix, domain: &HPolytope) -> Self {
        assert_eq!(map.cols(), domain.dim(), "map and domain dimensions disagree");
        let n = domain.dim();
        let domain = domain.canonical().expect("bounded non-empty domain");
        let mut stacked: Vec<QVector> = domain.eqs().iter().map(|e| e.normal.clone()).collect();
        stacked.extend(map.row_vectors());
        let stacked_m = QMatrix::from_qvectors(&stacked, n).expect("equal dims");
        let w = stacked_m.select_rows(&stacked_m.row_basis());
        let s = n - w.rows();
        let ineqs = domain.ineqs();
        let mut bases = Vec::new();
        for tight in (0..ineqs.len()).combinations(s) {
            let mut rows: Vec<QVector> = tight.iter().map(|&i| ineqs[i].normal.clone()).collect();
            rows.extend(w.row_vectors());
            let Some(inv) = QMatrix::from_qvectors(&rows, n).expect("equal dims").inverse() else {
                continue;
            };
            let b_s: Vec<Rational> = tight.iter().map(|&i| ineqs[i].offset.clone()).collect();
            let mut off = vec![Rational::default(); n];
            let mut right = QMatrix::zeros(n, w.rows());
            for r in 0..n {
                for (c, b) in b_s.iter().enumerate() {
                    off[r] += inv.get(r, c) * b;
                }
                for c in 0..w.rows() {
                    right.set(r, c, inv.get(r, s + c).clone());
                }
            }
            bases.push(FiberBasis {
                tight,
                lin: right.mul(&w),
                off: QVector::new(off),
            });
        }
        LinearFiberMap {
            map: map.clone(),
            domain,
            bases,
        }
    }

    pub fn map(&self) -> &QMatrix {
        &self.map
    }

    pub fn domain(&self) -> &HPolytope {
        &self.domain
    }

    pub fn bases(&self) -> &[FiberBasis] {
        &self.bases
    }

    /// Indices of the bases whose vertex formula is feasible at `y`.
    pub fn feasible_bases(&self, y: &[Rational]) -> Vec<usize> {
        (0..self.bases.len())
            .filter(|&i| self.domain.contains(&self.bases[i].eval(y)))
            .collect()
    }

    pub fn fiber_vertices(&self, y: &[Rational]) -> Vec<QVector> {
        let mut v: Vec<QVector> = self
            .feasible_bases(y)
            .into_iter()
            .map(|i| self.bases[i].eval(y))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn fiber(&self, y: &[Rational]) -> VPolytope {
        VPolytope::from_points(self.domain.dim(), self.fiber_vertices(y))
    }

    /// `{y : g(y) ≤ 0}` for every feasibility switch `g` of a vertex formula.
    fn switch_hyperplanes(&self, frame: &AffineFrame) -> Vec<Halfspace> {
        let ineqs = self.domain.ineqs();
        let mut out: Vec<Halfspace> = Vec::new();
        for b in &self.bases {
            let lin_t = b.lin.transpose();
            for (i, h) in ineqs.iter().enumerate() {
                if b.tight.contains(&i) {
                    continue;
                }
                let g = Halfspace::new(lin_t.mul_vec(&h.normal), &h.offset - h.normal.dot(&b.off));
                let local = frame.localize(&g);
                if local.normal.is_zero() {
                    continue;
                }
                out.push(frame.globalize(&local.normalized()));
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Chambers of a linear map over a domain plus the fiber formulas valid on each.
#[derive(Debug, Clone)]
pub struct ChamberComplex {
    pub complex: PolytopialComplex,
    pub fibers: LinearFiberMap,
    /// Feasible vertex formulas per cell, in cell order.
    pub signatures: Vec<Vec<usize>>,
}

impl ChamberComplex {
    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn cells(&self) -> &[Polytope] {
        self.complex.cells()
    }

    /// Vertex formulas valid on cell `i`, deduplicated by value at its centroid.
    pub fn cell_bases(&self, i: usize) -> Vec<&FiberBasis> {
        let c = self.cells()[i].centroid();
        let mut seen = std::collections::BTreeSet::new();
        self.signatures[i]
            .iter()
            .map(|&b| &self.fibers.bases()[b])
            .filter(|b| seen.insert(b.eval(&c)))
            .collect()
    }
}

/// Splits `domain` along every hyperplane where a fiber vertex formula
/// becomes (in)feasible, then merges neighbouring cells with the same set
/// of feasible formulas whenever their union stays convex.
pub fn chamber_complex(map: &QMatrix, domain: &HPolytope) -> ChamberComplex {
    let fibers = LinearFiberMap::new(map, domain);
    let ambient = Polytope::from_h(fibers.domain()).expect("bounded non-empty domain");
    let frame = ambient.frame();
    let mut cells = vec![ambient.clone()];
    for h in fibers.switch_hyperplanes(&frame) {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            let pos = c.vertices().iter().any(|v| h.slack(v) > Rational::default());
            let neg = c.vertices().iter().any(|v| h.slack(v) < Rational::default());
            if pos && neg {
                next.extend(c.cut(&h));
                next.extend(c.cut(&h.flipped()));
            } else {
                next.push(c);
            }
        }
        cells = next;
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<Polytope>> = BTreeMap::new();
    for c in cells {
        groups.entry(fibers.feasible_bases(&c.centroid())).or_default().push(c);
    }
    let cells: Vec<Polytope> = groups.into_values().flat_map(merge_convex).collect();
    let complex = PolytopialComplex::new(ambient, cells);
    let signatures = complex
        .cells()
        .iter()
        .map(|c| fibers.feasible_bases(&c.centroid()))
        .collect();
    log::debug!("chamber complex with {} cells", complex.len());
    ChamberComplex {
        complex,
        fibers,
        signatures,
    }
}

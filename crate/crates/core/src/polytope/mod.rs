//! Exact polytopes: H/V conversion, normal fans, intersections, chamber complexes.

mod cell;
mod chamber;
mod fan;
mod hrep;
mod vrep;

pub use cell::{merge_convex, triangulate, AffineFrame, Polytope, PolytopialComplex};
pub use chamber::{chamber_complex, ChamberComplex, FiberBasis, LinearFiberMap};
pub use fan::{normal_fan, Cone};
pub use hrep::{HForm, HPolytope, Halfspace};
pub use vrep::{convex_weights, to_halfspaces, VPolytope};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("polytope is empty")]
    Empty,
    #[error("polytope is unbounded")]
    Unbounded,
    #[error("malformed polytope: {0}")]
    Malformed(String),
}

/// Exact vertex set of a bounded, non-empty H-polytope.
pub fn to_vertices(p: &HPolytope) -> Result<VPolytope, PolytopeError> {
    p.to_vertices()
}

/// Canonicalized intersection; an empty result keeps the raw constraint list
/// and reports `is_empty() == true`.
pub fn intersect(p: &HPolytope, q: &HPolytope) -> HPolytope {
    let m = p.meet(q);
    match m.canonical() {
        Ok(c) => c,
        Err(_) => m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, QVector};

    fn square() -> HPolytope {
        HPolytope::cube(&[int(0), int(0)], &[int(1), int(1)])
    }

    #[test]
    fn square_has_four_vertices() {
        assert_eq!(to_vertices(&square()).unwrap().len(), 4);
    }

    #[test]
    fn simplex_vertices_are_units() {
        let v = to_vertices(&HPolytope::simplex(3)).unwrap();
        let want: Vec<QVector> = (0..3).rev().map(|i| QVector::unit(3, i)).collect();
        assert_eq!(v.vertices(), &want[..]);
    }

    #[test]
    fn signal_slice_of_simplex() {
        let p = HPolytope::simplex(3).with_eq(Halfspace::new(
            QVector::new(vec![int(0), int(1), rat(1, 3)]),
            rat(1, 3),
        ));
        let v = to_vertices(&p).unwrap();
        assert_eq!(
            v.vertices(),
            &[
                QVector::new(vec![int(0), int(0), int(1)]),
                QVector::new(vec![rat(2, 3), rat(1, 3), int(0)]),
            ]
        );
    }

    #[test]
    fn empty_and_unbounded_are_distinct() {
        let empty = HPolytope::new(1)
            .with_ineq(Halfspace::new(QVector::from_ints(&[1]), int(-1)))
            .with_ineq(Halfspace::new(QVector::from_ints(&[-1]), int(0)));
        assert_eq!(to_vertices(&empty), Err(PolytopeError::Empty));
        let ray = HPolytope::new(1).with_ineq(Halfspace::new(QVector::from_ints(&[-1]), int(0)));
        assert_eq!(to_vertices(&ray), Err(PolytopeError::Unbounded));
    }

    #[test]
    fn triangle_facets() {
        let v = VPolytope::from_points(2, vec![QVector::from_ints(&[0, 0]), QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])]);
        let h = to_halfspaces(&v);
        assert_eq!(h.ineqs().len(), 3);
        assert!(h.eqs().is_empty());
    }

    #[test]
    fn segment_facets_and_hull_equation() {
        let v = VPolytope::from_points(2, vec![QVector::from_ints(&[0, 0]), QVector::from_ints(&[2, 1])]);
        let h = to_halfspaces(&v);
        assert_eq!(h.ineqs().len(), 2);
        assert_eq!(h.eqs().len(), 1);
        assert_eq!(to_vertices(&h).unwrap(), v);
    }

    #[test]
    fn intersections() {
        let shifted = HPolytope::cube(&[rat(1, 2), rat(1, 2)], &[rat(3, 2), rat(3, 2)]);
        let i = intersect(&square(), &shifted);
        assert_eq!(
            to_vertices(&i).unwrap().vertices(),
            VPolytope::from_points(
                2,
                vec![
                    QVector::new(vec![rat(1, 2), rat(1, 2)]),
                    QVector::new(vec![rat(1, 2), int(1)]),
                    QVector::new(vec![int(1), rat(1, 2)]),
                    QVector::new(vec![int(1), int(1)]),
                ]
            )
            .vertices()
        );
        // −Δ({T,B}) ∩ {d_T ≤ d_B}
        let neg = HPolytope::new(2)
            .with_ineq(Halfspace::new(QVector::from_ints(&[1, 0]), int(0)))
            .with_ineq(Halfspace::new(QVector::from_ints(&[0, 1]), int(0)))
            .with_eq(Halfspace::new(QVector::from_ints(&[1, 1]), int(-1)));
        let half = HPolytope::new(2).with_ineq(Halfspace::new(QVector::from_ints(&[1, -1]), int(0)));
        let seg = to_vertices(&intersect(&neg, &half)).unwrap();
        assert_eq!(
            seg.vertices(),
            &[QVector::from_ints(&[-1, 0]), QVector::new(vec![rat(-1, 2), rat(-1, 2)])]
        );
        let far = HPolytope::cube(&[int(5), int(5)], &[int(6), int(6)]);
        assert!(intersect(&square(), &far).is_empty());
    }
}

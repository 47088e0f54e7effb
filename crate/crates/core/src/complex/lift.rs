use num_traits::Zero;

use super::RegionSet;
use crate::exact::{QVector, Rational};
use crate::game::Player;
use crate::polytope::{HPolytope, Halfspace, Polytope, PolytopeError, PolytopialComplex};

/// Regions pulled back to the simplex over the opponent's candidate labels:
/// `𝐘_ℓ = {𝐲 ∈ Δ(𝒦) : Σ_k 𝐲_k y_k ∈ Y_ℓ}`.
#[derive(Debug, Clone)]
pub struct LiftedComplex {
    /// Whose best-reply regions these are.
    pub owner: Player,
    pub labels: Vec<String>,
    /// Coordinates of the lifted simplex.
    pub domain_labels: Vec<String>,
    pub domain_actions: Vec<QVector>,
    /// Lifted H-form per label, before vertex enumeration.
    pub halfspaces: Vec<HPolytope>,
    /// `None` for an empty region.
    pub regions: Vec<Option<Polytope>>,
    /// Labels optimal only on a lower-dimensional set of the original domain.
    pub thin: Vec<bool>,
    pub simplex: Polytope,
}

impl LiftedComplex {
    pub fn dim(&self) -> usize {
        self.domain_labels.len()
    }

    /// Labels `ℓ` with `𝐲 ∈ 𝐘_ℓ`, as indices.
    pub fn regions_containing(&self, y: &[Rational]) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&l| self.halfspaces[l].contains(y) && self.regions[l].is_some())
            .collect()
    }

    /// `E_𝐲[y_k]`.
    pub fn induce(&self, y: &[Rational]) -> QVector {
        QVector::combination(y, &self.domain_actions)
    }

    pub fn complex(&self) -> PolytopialComplex {
        PolytopialComplex::new(self.simplex.clone(), self.regions.iter().flatten().cloned().collect())
    }

    /// All vertices of all non-empty regions, sorted.
    pub fn vertices(&self) -> Vec<QVector> {
        let mut v: Vec<QVector> = self.regions.iter().flatten().flat_map(|r| r.vertices().to_vec()).collect();
        v.extend(self.simplex.vertices().iter().cloned());
        v.sort();
        v.dedup();
        v
    }
}

/// Each region inequality `⟨b, y⟩ ≤ c` becomes `Σ_k 𝐲_k ⟨b, y_k⟩ ≤ c`.
pub fn lift(rs: &RegionSet, opp_labels: Vec<String>, opp_actions: Vec<QVector>) -> LiftedComplex {
    let k = opp_actions.len();
    let simplex = Polytope::simplex(k);
    let mut halfspaces = Vec::new();
    let mut regions = Vec::new();
    for atom in &rs.atoms {
        let mut h = HPolytope::simplex(k);
        match atom.cells.as_slice() {
            [] => {
                regions.push(None);
                halfspaces.push(h);
                continue;
            }
            [cell] => {
                for t in cell.h().ineqs() {
                    let coeffs = QVector::new(opp_actions.iter().map(|y| t.normal.dot(y)).collect());
                    if coeffs.is_zero() && t.offset >= Rational::zero() {
                        continue;
                    }
                    h.push_ineq(Halfspace::new(coeffs, t.offset.clone()));
                }
            }
            _ => panic!("lift expects convexified regions"),
        }
        regions.push(match Polytope::from_h(&h) {
            Ok(p) => Some(p),
            Err(PolytopeError::Empty) => None,
            Err(e) => panic!("lifted region inside a simplex: {e}"),
        });
        halfspaces.push(h);
    }
    LiftedComplex {
        owner: rs.player,
        labels: rs.labels(),
        domain_labels: opp_labels,
        domain_actions: opp_actions,
        halfspaces,
        regions,
        thin: rs.atoms.iter().map(|a| a.thin).collect(),
        simplex,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonDegeneracy {
    Pass,
    Fail {
        /// Whose regions violate the condition.
        owner: Player,
        vertex: QVector,
        regions: Vec<String>,
        reason: String,
    },
}

impl NonDegeneracy {
    pub fn passed(&self) -> bool {
        matches!(self, NonDegeneracy::Pass)
    }
}

fn check_one(lc: &LiftedComplex) -> NonDegeneracy {
    let fail = |vertex: QVector, regions: Vec<String>, reason: String| NonDegeneracy::Fail {
        owner: lc.owner,
        vertex,
        regions,
        reason,
    };
    if let Some(l) = lc.thin.iter().position(|&t| t) {
        return fail(lc.simplex.centroid(), vec![lc.labels[l].clone()], "best-reply set is not full-dimensional".into());
    }
    let frame = lc.simplex.frame();
    for (l, r) in lc.regions.iter().enumerate() {
        if let Some(r) = r {
            if !r.is_full_dim_in(&frame) {
                return fail(r.centroid(), vec![lc.labels[l].clone()], "region is not full-dimensional".into());
            }
        }
    }
    if let Err(e) = lc.complex().validate() {
        return fail(lc.simplex.centroid(), Vec::new(), e);
    }
    for v in lc.vertices() {
        let inside = lc.regions_containing(&v);
        let support = v.support().len();
        if inside.len() > support {
            return fail(
                v.clone(),
                inside.iter().map(|&l| lc.labels[l].clone()).collect(),
                format!("vertex lies in {} regions with support size {support}", inside.len()),
            );
        }
    }
    NonDegeneracy::Pass
}

/// Every complex vertex lies in at most |support| regions, on both sides,
/// and both families form polytopial complexes.
pub fn nondegeneracy_check(y_side: &LiftedComplex, x_side: &LiftedComplex) -> NonDegeneracy {
    match check_one(y_side) {
        NonDegeneracy::Pass => check_one(x_side),
        f => f,
    }
}

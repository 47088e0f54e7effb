//! Candidate maxmin replies, their best-reply regions and the lifted complexes.

mod lift;
mod regions;

pub use lift::{lift, nondegeneracy_check, LiftedComplex, NonDegeneracy};
pub use regions::{build_regions, convexify_regions, BestReplyAtom, RegionSet};

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::exact::QVector;
use crate::game::{Game, Player};
use crate::polytope::{chamber_complex, normal_fan, ChamberComplex, HPolytope, VPolytope};

/// A mixed action that is a maxmin maximizer against some opponent action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub label: String,
    pub action: QVector,
    /// Chambers whose normal fans produced this candidate.
    pub chambers: Vec<usize>,
    pub pure: bool,
}

#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub player: Player,
    pub candidates: Vec<Candidate>,
    pub chambers: ChamberComplex,
}

impl CandidateSet {
    pub fn actions(&self) -> Vec<QVector> {
        self.candidates.iter().map(|c| c.action.clone()).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.candidates.iter().map(|c| c.label.clone()).collect()
    }
}

/// Vertices of `N(w) ∩ Δ` over the normal cones `N(w)` of `Φ(y)` at one
/// interior point `y` per chamber.
pub fn candidate_maximizers(game: &Game, side: Player) -> CandidateSet {
    let view = game.view(side);
    let own = view.own();
    let chambers = chamber_complex(&view.informative.matrix, &HPolytope::simplex(view.opp()));
    let per_chamber: Vec<Vec<QVector>> = chambers
        .cells()
        .par_iter()
        .map(|cell| {
            let y = cell.centroid();
            let pts = chambers
                .fibers
                .fiber_vertices(&y)
                .iter()
                .map(|f| view.payoff_vector(f))
                .collect();
            let phi = VPolytope::from_points(own, pts);
            let mut out = Vec::new();
            for (_, cone) in normal_fan(&phi) {
                let piece = HPolytope::simplex(own).meet(&cone.to_hpolytope());
                if let Ok(v) = piece.to_vertices() {
                    out.extend(v.vertices().iter().cloned());
                }
            }
            out
        })
        .collect();
    let labels = game.actions(side);
    let mut found: Vec<(QVector, Vec<usize>)> = Vec::new();
    for (ci, xs) in per_chamber.into_iter().enumerate() {
        for x in xs {
            match found.iter_mut().find(|(f, _)| f == &x) {
                Some((_, cs)) => {
                    if !cs.contains(&ci) {
                        cs.push(ci);
                    }
                }
                None => found.push((x, vec![ci])),
            }
        }
    }
    let mut candidates = Vec::new();
    for (a, label) in labels.iter().enumerate() {
        let unit = QVector::unit(own, a);
        let chambers = found.iter().find(|(f, _)| f == &unit).map(|(_, c)| c.clone()).unwrap_or_default();
        candidates.push(Candidate {
            label: label.clone(),
            action: unit,
            chambers,
            pure: true,
        });
    }
    let mut mixed: Vec<(QVector, Vec<usize>)> = found.into_iter().filter(|(x, _)| x.support().len() > 1).collect();
    // Heavier weight on earlier actions first.
    mixed.sort_by(|a, b| b.0.cmp(&a.0));
    let mut taken: BTreeSet<String> = labels.iter().cloned().collect();
    let count = mixed.len();
    for (i, (x, chambers)) in mixed.into_iter().enumerate() {
        let mut label = if count == 1 { "M".to_string() } else { format!("M{}", i + 1) };
        while taken.contains(&label) {
            label.push('\'');
        }
        taken.insert(label.clone());
        candidates.push(Candidate {
            label,
            action: x,
            chambers,
            pure: false,
        });
    }
    log::debug!("{side}: {} chambers, {} candidates", chambers.len(), candidates.len());
    CandidateSet {
        player: side,
        candidates,
        chambers,
    }
}

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::CandidateSet;
use crate::exact::{QVector, Rational};
use crate::game::{Game, Player};
use crate::polytope::{merge_convex, Halfspace, Polytope};

/// A candidate with the region of opponent actions it answers optimally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestReplyAtom {
    pub label: String,
    /// Index into the originating candidate list.
    pub candidate: usize,
    pub action: QVector,
    /// Region cells; exactly one after convexification (none if never a best reply).
    pub cells: Vec<Polytope>,
    /// Chamber of each cell before convexification.
    pub chambers: Vec<usize>,
    /// Optimal somewhere, but only on a lower-dimensional set.
    pub thin: bool,
}

impl BestReplyAtom {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.cells.iter().any(|c| c.contains(y))
    }
}

#[derive(Debug, Clone)]
pub struct RegionSet {
    pub player: Player,
    pub atoms: Vec<BestReplyAtom>,
    /// The opponent simplex the regions cover.
    pub domain: Polytope,
    /// Mixed candidates dropped for never being a best reply.
    pub pruned: Vec<String>,
    /// Labels whose region needed more than one cell.
    pub nonconvex: Vec<String>,
}

impl RegionSet {
    pub fn labels(&self) -> Vec<String> {
        self.atoms.iter().map(|a| a.label.clone()).collect()
    }

    pub fn actions(&self) -> Vec<QVector> {
        self.atoms.iter().map(|a| a.action.clone()).collect()
    }

    pub fn atom(&self, label: &str) -> Option<&BestReplyAtom> {
        self.atoms.iter().find(|a| a.label == label)
    }

    /// Labels of the atoms whose region contains `y`.
    pub fn best_labels(&self, y: &[Rational]) -> Vec<&str> {
        self.atoms.iter().filter(|a| a.contains(y)).map(|a| a.label.as_str()).collect()
    }
}

/// Affine function `⟨a, y⟩ + b`.
#[derive(Debug, Clone)]
struct Affine {
    a: QVector,
    b: Rational,
}

/// On each chamber the worst-case payoff of every candidate is linear;
/// its region piece is where it beats all the others.
pub fn build_regions(game: &Game, cs: &CandidateSet) -> RegionSet {
    let view = game.view(cs.player);
    let frame = cs.chambers.complex.ambient().frame();
    let costs: Vec<QVector> = cs
        .candidates
        .iter()
        .map(|c| view.payoff.transpose().mul_vec(&c.action))
        .collect();
    let per_chamber: Vec<Vec<(Option<Polytope>, bool)>> = (0..cs.chambers.len())
        .into_par_iter()
        .map(|ci| {
            let cell = &cs.chambers.cells()[ci];
            let rep = cell.centroid();
            let bases = cs.chambers.cell_bases(ci);
            let values: Vec<Affine> = costs
                .iter()
                .map(|c| {
                    let best = bases
                        .iter()
                        .min_by(|p, q| c.dot(&p.eval(&rep)).cmp(&c.dot(&q.eval(&rep))))
                        .expect("every chamber has a fiber vertex");
                    Affine {
                        a: best.lin.transpose().mul_vec(c),
                        b: c.dot(&best.off),
                    }
                })
                .collect();
            (0..values.len())
                .map(|l| {
                    let mut h = cell.h().clone();
                    for (m, other) in values.iter().enumerate() {
                        if m == l {
                            continue;
                        }
                        // other(y) ≤ mine(y)
                        let normal = other.a.sub(&values[l].a);
                        if normal.is_zero() && other.b <= values[l].b {
                            continue;
                        }
                        h.push_ineq(Halfspace::new(normal, &values[l].b - &other.b));
                    }
                    match Polytope::from_h(&h) {
                        Ok(p) if p.is_full_dim_in(&frame) => (Some(p), true),
                        Ok(_) => (None, true),
                        Err(_) => (None, false),
                    }
                })
                .collect()
        })
        .collect();
    let mut atoms = Vec::new();
    let mut pruned = Vec::new();
    for (l, c) in cs.candidates.iter().enumerate() {
        let mut cells = Vec::new();
        let mut chambers = Vec::new();
        let mut touched = false;
        for (ci, pieces) in per_chamber.iter().enumerate() {
            touched |= pieces[l].1;
            if let Some(p) = &pieces[l].0 {
                cells.push(p.clone());
                chambers.push(ci);
            }
        }
        if cells.is_empty() && !c.pure {
            log::info!("{}: candidate {} is never a best reply, pruned", cs.player, c.label);
            pruned.push(c.label.clone());
            continue;
        }
        let thin = cells.is_empty() && touched;
        if thin {
            log::info!("{}: action {} is a best reply only on a thin set", cs.player, c.label);
        } else if cells.is_empty() {
            log::info!("{}: action {} is never a best reply", cs.player, c.label);
        }
        atoms.push(BestReplyAtom {
            label: c.label.clone(),
            candidate: l,
            action: c.action.clone(),
            cells,
            chambers,
            thin,
        });
    }
    RegionSet {
        player: cs.player,
        atoms,
        domain: cs.chambers.complex.ambient().clone(),
        pruned,
        nonconvex: Vec::new(),
    }
}

/// Merges each region's chamber pieces into as few convex cells as the
/// chamber cuts allow; a region left with several cells is duplicated
/// under fresh labels `T1, T2, …` sharing the same mixed action.
pub fn convexify_regions(rs: &RegionSet) -> RegionSet {
    let merged: Vec<Vec<Polytope>> = rs.atoms.par_iter().map(|a| merge_convex(a.cells.clone())).collect();
    let mut taken: BTreeSet<String> = rs.atoms.iter().map(|a| a.label.clone()).collect();
    let mut atoms = Vec::new();
    let mut nonconvex = Vec::new();
    for (a, cells) in rs.atoms.iter().zip(merged) {
        if cells.len() <= 1 {
            atoms.push(BestReplyAtom {
                cells,
                chambers: a.chambers.clone(),
                ..a.clone()
            });
            continue;
        }
        nonconvex.push(a.label.clone());
        for (i, cell) in cells.into_iter().enumerate() {
            let mut label = format!("{}{}", a.label, i + 1);
            if taken.contains(&label) {
                label = format!("{}_{}", a.label, i + 1);
            }
            while taken.contains(&label) {
                label.push('\'');
            }
            taken.insert(label.clone());
            let chambers = a
                .chambers
                .iter()
                .zip(&a.cells)
                .filter(|(_, c)| c.vertices().iter().all(|v| cell.contains(v)))
                .map(|(ch, _)| *ch)
                .collect();
            atoms.push(BestReplyAtom {
                label,
                candidate: a.candidate,
                action: a.action.clone(),
                cells: vec![cell],
                chambers,
                thin: false,
            });
        }
    }
    RegionSet {
        player: rs.player,
        atoms,
        domain: rs.domain.clone(),
        pruned: rs.pruned.clone(),
        nonconvex,
    }
}

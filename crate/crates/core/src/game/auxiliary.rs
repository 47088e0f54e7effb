use super::{phi, semi_standard_check, Game, Player};
use crate::exact::{QMatrix, QVector};

/// Γ̃ over candidate labels: `ũ(ℓ,k) = min_{U ∈ Φ(y_k)} ⟨x_ℓ, U⟩` and
/// `ṽ(ℓ,k) = min_{V ∈ Ψ(x_ℓ)} ⟨y_k, V⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGame {
    pub labels1: Vec<String>,
    pub labels2: Vec<String>,
    pub candidates1: Vec<QVector>,
    pub candidates2: Vec<QVector>,
    pub u: QMatrix,
    pub v: QMatrix,
    /// Both sides semi-standard, so equilibria of Γ̃ induce equilibria of Γ.
    pub equivalence_guaranteed: bool,
}

pub fn build_auxiliary_game(
    game: &Game,
    labels1: Vec<String>,
    candidates1: Vec<QVector>,
    labels2: Vec<String>,
    candidates2: Vec<QVector>,
) -> ReducedGame {
    let (l, k) = (candidates1.len(), candidates2.len());
    let mut u = QMatrix::zeros(l, k);
    let mut v = QMatrix::zeros(l, k);
    let phis: Vec<_> = candidates2.iter().map(|y| phi(game, y, Player::One)).collect();
    let psis: Vec<_> = candidates1.iter().map(|x| phi(game, x, Player::Two)).collect();
    for (i, x) in candidates1.iter().enumerate() {
        for (j, y) in candidates2.iter().enumerate() {
            u.set(i, j, phis[j].worst(x));
            v.set(i, j, psis[i].worst(y));
        }
    }
    let equivalence_guaranteed = semi_standard_check(game, Player::One).is_accepted()
        && semi_standard_check(game, Player::Two).is_accepted();
    ReducedGame {
        labels1,
        labels2,
        candidates1,
        candidates2,
        u,
        v,
        equivalence_guaranteed,
    }
}

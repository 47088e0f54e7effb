use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{lp_solve, serde_rational, Direction, LpBuilder, QMatrix, QVector, Rational, RowSense};
use crate::game::{Game, Player};

/// One player's side of an equilibrium check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayerCheck {
    /// `max_{x'} min_{U ∈ Φ(y)} ⟨x', U⟩`.
    #[serde(with = "serde_rational")]
    pub maxmin: Rational,
    /// `min_{U ∈ Φ(y)} ⟨x, U⟩` for the proposed `x`.
    #[serde(with = "serde_rational")]
    pub achieved: Rational,
    /// `maxmin - achieved`, never negative.
    #[serde(with = "serde_rational")]
    pub slack: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub player1: PlayerCheck,
    pub player2: PlayerCheck,
    #[serde(with = "serde_rational")]
    pub epsilon: Rational,
    pub pass: bool,
}

/// `G = [1ᵀ; 𝐇]`: indistinguishable opponent mixtures are `y' ≥ 0` with `G y' = G y`.
fn observation_matrix(game: &Game, side: Player) -> (QMatrix, QMatrix) {
    let view = game.view(side);
    let n = view.opp();
    let ones = QMatrix::from_rows(vec![vec![Rational::one(); n]], n).expect("row of ones");
    (ones.vstack(&view.informative.matrix), view.payoff)
}

/// Worst case of `x` over the fiber of `y`, and the best such worst case,
/// each as one LP over the raw observation constraints.
fn side_check(game: &Game, side: Player, x: &[Rational], y: &[Rational], eps: &Rational) -> PlayerCheck {
    let (g, p) = observation_matrix(game, side);
    let gy = g.mul_vec(y);
    let own = p.rows();
    let opp = p.cols();
    let cost = p.transpose().mul_vec(x);
    let mut inner = LpBuilder::new(Direction::Minimize, cost.to_vec());
    for (i, row) in g.row_vectors().into_iter().enumerate() {
        inner.push_row(row.to_vec(), RowSense::Eq, gy[i].clone());
    }
    let achieved = lp_solve(&inner.build().expect("well-formed"))
        .value()
        .cloned()
        .expect("y itself is feasible");
    // max over (x' ∈ Δ, λ free) of ⟨λ, G y⟩ subject to Gᵀλ ≤ Pᵀ x'
    let m = g.rows();
    let mut obj = vec![Rational::zero(); own];
    obj.extend(gy.iter().cloned());
    let mut outer = LpBuilder::new(Direction::Maximize, obj);
    for j in 0..m {
        outer = outer.free(own + j);
    }
    for b in 0..opp {
        let mut row: Vec<Rational> = (0..own).map(|a| -p.get(a, b).clone()).collect();
        row.extend((0..m).map(|j| g.get(j, b).clone()));
        outer.push_row(row, RowSense::Le, Rational::zero());
    }
    let mut simplex = vec![Rational::one(); own];
    simplex.extend(vec![Rational::zero(); m]);
    outer.push_row(simplex, RowSense::Eq, Rational::one());
    let maxmin = lp_solve(&outer.build().expect("well-formed"))
        .value()
        .cloned()
        .expect("maxmin is finite");
    let slack = &maxmin - &achieved;
    PlayerCheck {
        pass: &slack <= eps,
        maxmin,
        achieved,
        slack,
    }
}

/// Both players maxmin-optimal against the other's observed signal.
pub fn check_equilibrium(game: &Game, x: &[Rational], y: &[Rational], eps: &Rational) -> Certificate {
    assert!(QVector::new(x.to_vec()).is_probability(), "x must be a mixed action");
    assert!(QVector::new(y.to_vec()).is_probability(), "y must be a mixed action");
    let player1 = side_check(game, Player::One, x, y, eps);
    let player2 = side_check(game, Player::Two, y, x, eps);
    Certificate {
        pass: player1.pass && player2.pass,
        player1,
        player2,
        epsilon: eps.clone(),
    }
}

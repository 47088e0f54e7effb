use num_traits::{One, Zero};

use super::{Game, Player, SignalStructure};
use crate::exact::{lp_solve, Direction, LpBuilder, QMatrix, QVector, Rational, RowSense};
use crate::polytope::{HPolytope, Halfspace, VPolytope};

/// Stacked signal map 𝐇: ℝ^opp → ℝ^{d·own}, one row block per own action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalInformativeMap {
    pub matrix: QMatrix,
    pub message_dim: usize,
}

impl MaximalInformativeMap {
    pub fn apply(&self, y: &[Rational]) -> QVector {
        self.matrix.mul_vec(y)
    }

    pub fn opp(&self) -> usize {
        self.matrix.cols()
    }

    /// The stacked column 𝐇(e_b).
    pub fn column(&self, b: usize) -> QVector {
        self.matrix.column(b)
    }
}

pub fn maximal_informative(sig: &SignalStructure, receiver: Player) -> MaximalInformativeMap {
    let d = sig.dim();
    let (own, opp) = match receiver {
        Player::One => (sig.rows(), sig.cols()),
        Player::Two => (sig.cols(), sig.rows()),
    };
    let mut m = QMatrix::zeros(d * own, opp);
    for o in 0..own {
        for j in 0..d {
            for t in 0..opp {
                let msg = match receiver {
                    Player::One => sig.message(o, t),
                    Player::Two => sig.message(t, o),
                };
                m.set(o * d + j, t, msg[j].clone());
            }
        }
    }
    MaximalInformativeMap { matrix: m, message_dim: d }
}

/// `{y' ∈ Δ : 𝐇 y' = 𝐇 y}`.
pub fn fiber(map: &MaximalInformativeMap, y: &[Rational]) -> VPolytope {
    let n = map.opp();
    let img = map.apply(y);
    let mut p = HPolytope::simplex(n);
    for (i, r) in map.matrix.row_vectors().into_iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        p.push_eq(Halfspace::new(r, img[i].clone()));
    }
    p.to_vertices().expect("fiber contains y")
}

/// Φ(y): payoff vectors consistent with what the player observes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertaintySet {
    pub set: VPolytope,
    pub fiber: VPolytope,
}

impl UncertaintySet {
    pub fn vertices(&self) -> &[QVector] {
        self.set.vertices()
    }

    /// `min_{U ∈ Φ} ⟨x, U⟩`, attained at a vertex.
    pub fn worst(&self, x: &[Rational]) -> Rational {
        self.set.min_over(x)
    }
}

/// Φ(y) for player 1, Ψ(x) for player 2 (with `y` the opponent mixture).
pub fn phi(game: &Game, y: &[Rational], side: Player) -> UncertaintySet {
    let view = game.view(side);
    let fib = fiber(&view.informative, y);
    let pts = fib.vertices().iter().map(|f| view.payoff_vector(f)).collect();
    UncertaintySet {
        set: VPolytope::from_points(view.own(), pts),
        fiber: fib,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxminReply {
    pub value: Rational,
    /// The full optimal face inside Δ(own).
    pub argmax: VPolytope,
}

/// `max_{x ∈ Δ} min_{U ∈ 𝒰} ⟨x, U⟩` and its optimal face.
pub fn maxmin_best_reply(u: &VPolytope, dim: usize) -> MaxminReply {
    assert!(!u.is_empty(), "uncertainty set must be non-empty");
    // variables (x_1..x_dim, t), t free
    let mut obj = vec![Rational::zero(); dim + 1];
    obj[dim] = Rational::one();
    let mut b = LpBuilder::new(Direction::Maximize, obj).free(dim);
    for w in u.vertices() {
        let mut row: Vec<Rational> = w.iter().map(|q| -q.clone()).collect();
        row.push(Rational::one());
        b.push_row(row, RowSense::Le, Rational::zero());
    }
    let mut sum = vec![Rational::one(); dim];
    sum.push(Rational::zero());
    b.push_row(sum, RowSense::Eq, Rational::one());
    let value = lp_solve(&b.build().expect("well-formed maxmin program"))
        .value()
        .cloned()
        .expect("maxmin over a simplex is bounded and feasible");
    let mut face = HPolytope::simplex(dim);
    for w in u.vertices() {
        face.push_ineq(Halfspace::new(w.neg(), -value.clone()));
    }
    MaxminReply {
        argmax: face.to_vertices().expect("optimal face is non-empty"),
        value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn singleton_maxmin_is_plain_best_reply() {
        let r = maxmin_best_reply(&VPolytope::point(QVector::from_ints(&[1, 0])), 2);
        assert_eq!(r.value, int(1));
        assert_eq!(r.argmax.vertices(), &[QVector::from_ints(&[1, 0])]);
    }

    #[test]
    fn two_point_maxmin_equalizes() {
        let u = VPolytope::from_points(2, vec![QVector::from_ints(&[0, 1]), QVector::new(vec![rat(2, 3), rat(1, 3)])]);
        let r = maxmin_best_reply(&u, 2);
        assert_eq!(r.value, rat(1, 2));
        assert_eq!(r.argmax.vertices(), &[QVector::new(vec![rat(1, 2), rat(1, 2)])]);
    }
}

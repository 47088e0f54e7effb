//! Bimatrix games with partial monitoring.

mod auxiliary;
mod file;
mod info;
mod samples;
mod semi;

pub use auxiliary::{build_auxiliary_game, ReducedGame};
pub use file::{GameFile, GameFileError, MessageEntry, RatEntry, SignalsMatrix, SignalsSpec};
pub use info::{fiber, maximal_informative, maxmin_best_reply, phi, MaximalInformativeMap, MaxminReply, UncertaintySet};
pub use samples::{aliased_signal_game, pooled_signal_game, two_signal_game};
pub use semi::{semi_standard_check, SemiStandard, SemiStandardPartition};

use serde::{Deserialize, Serialize};

use crate::exact::{QMatrix, QVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "player {}", self.index())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("{0}")]
    Shape(String),
}

/// Messages `messages[a][b] ∈ ℚ^dim` for every action pair, indexed by the
/// row player's action first regardless of who receives them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalStructure {
    dim: usize,
    messages: Vec<Vec<QVector>>,
}

impl SignalStructure {
    pub fn new(dim: usize, messages: Vec<Vec<QVector>>) -> Result<Self, GameError> {
        if dim == 0 {
            return Err(GameError::Shape("message dimension must be at least 1".into()));
        }
        let cols = messages.first().map(|r| r.len()).unwrap_or(0);
        for (a, row) in messages.iter().enumerate() {
            if row.len() != cols {
                return Err(GameError::Shape(format!("signal row {a} has {} entries, expected {cols}", row.len())));
            }
            for (b, m) in row.iter().enumerate() {
                if m.dim() != dim {
                    return Err(GameError::Shape(format!(
                        "signal ({a},{b}) has dimension {}, expected {dim}",
                        m.dim()
                    )));
                }
            }
        }
        Ok(SignalStructure { dim, messages })
    }

    /// Perfect observation of the opponent: the receiver gets the unit vector
    /// of the opponent's action.
    pub fn full(receiver: Player, rows: usize, cols: usize) -> Self {
        let dim = match receiver {
            Player::One => cols,
            Player::Two => rows,
        };
        let messages = (0..rows)
            .map(|a| {
                (0..cols)
                    .map(|b| match receiver {
                        Player::One => QVector::unit(dim, b),
                        Player::Two => QVector::unit(dim, a),
                    })
                    .collect()
            })
            .collect();
        SignalStructure { dim, messages }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn messages(&self) -> &[Vec<QVector>] {
        &self.messages
    }

    pub fn message(&self, a: usize, b: usize) -> &QVector {
        &self.messages[a][b]
    }

    pub fn rows(&self) -> usize {
        self.messages.len()
    }

    pub fn cols(&self) -> usize {
        self.messages.first().map(|r| r.len()).unwrap_or(0)
    }
}

/// Γ = (𝒜, 𝓑, u, v, H, M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    actions1: Vec<String>,
    actions2: Vec<String>,
    u: QMatrix,
    v: QMatrix,
    sig1: SignalStructure,
    sig2: SignalStructure,
}

impl Game {
    pub fn new(
        actions1: Vec<String>,
        actions2: Vec<String>,
        u: QMatrix,
        v: QMatrix,
        sig1: SignalStructure,
        sig2: SignalStructure,
    ) -> Result<Self, GameError> {
        let (a, b) = (actions1.len(), actions2.len());
        if a == 0 || b == 0 {
            return Err(GameError::Shape("each player needs at least one action".into()));
        }
        for (name, m) in [("u", &u), ("v", &v)] {
            if m.rows() != a || m.cols() != b {
                return Err(GameError::Shape(format!(
                    "payoff matrix {name} is {}x{}, expected {a}x{b}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for (name, s) in [("signals1", &sig1), ("signals2", &sig2)] {
            if s.rows() != a || s.cols() != b {
                return Err(GameError::Shape(format!(
                    "{name} is {}x{}, expected {a}x{b}",
                    s.rows(),
                    s.cols()
                )));
            }
        }
        Ok(Game {
            actions1,
            actions2,
            u,
            v,
            sig1,
            sig2,
        })
    }

    /// Both players observe each other perfectly.
    pub fn full_monitoring(actions1: Vec<String>, actions2: Vec<String>, u: QMatrix, v: QMatrix) -> Result<Self, GameError> {
        let (a, b) = (actions1.len(), actions2.len());
        Game::new(
            actions1,
            actions2,
            u,
            v,
            SignalStructure::full(Player::One, a, b),
            SignalStructure::full(Player::Two, a, b),
        )
    }

    pub fn actions(&self, p: Player) -> &[String] {
        match p {
            Player::One => &self.actions1,
            Player::Two => &self.actions2,
        }
    }

    pub fn u(&self) -> &QMatrix {
        &self.u
    }

    pub fn v(&self) -> &QMatrix {
        &self.v
    }

    pub fn signals(&self, p: Player) -> &SignalStructure {
        match p {
            Player::One => &self.sig1,
            Player::Two => &self.sig2,
        }
    }

    pub fn with_signals(&self, sig1: SignalStructure, sig2: SignalStructure) -> Result<Game, GameError> {
        Game::new(self.actions1.clone(), self.actions2.clone(), self.u.clone(), self.v.clone(), sig1, sig2)
    }

    /// The game seen by `p`: own payoffs as an own×opponent matrix.
    pub fn view(&self, p: Player) -> PlayerView {
        let payoff = match p {
            Player::One => self.u.clone(),
            Player::Two => self.v.transpose(),
        };
        PlayerView {
            player: p,
            payoff,
            informative: maximal_informative(self.signals(p), p),
        }
    }

    /// Pure-action relabeling; `perm1[i]` is the old index of new action `i`.
    pub fn permuted(&self, perm1: &[usize], perm2: &[usize]) -> Game {
        let pm = |m: &QMatrix| {
            let rows = perm1
                .iter()
                .map(|&i| perm2.iter().map(|&j| m.get(i, j).clone()).collect())
                .collect();
            QMatrix::from_rows(rows, perm2.len()).expect("permutation keeps shape")
        };
        let ps = |s: &SignalStructure| SignalStructure {
            dim: s.dim,
            messages: perm1
                .iter()
                .map(|&i| perm2.iter().map(|&j| s.messages[i][j].clone()).collect())
                .collect(),
        };
        Game {
            actions1: perm1.iter().map(|&i| self.actions1[i].clone()).collect(),
            actions2: perm2.iter().map(|&j| self.actions2[j].clone()).collect(),
            u: pm(&self.u),
            v: pm(&self.v),
            sig1: ps(&self.sig1),
            sig2: ps(&self.sig2),
        }
    }
}

/// One player's side of the game.
#[derive(Debug, Clone)]
pub struct PlayerView {
    pub player: Player,
    /// Own actions × opponent actions.
    pub payoff: QMatrix,
    pub informative: MaximalInformativeMap,
}

impl PlayerView {
    pub fn own(&self) -> usize {
        self.payoff.rows()
    }

    pub fn opp(&self) -> usize {
        self.payoff.cols()
    }

    /// Payoff vector `(u(a, y))_a` against the opponent mixture `y`.
    pub fn payoff_vector(&self, y: &[Rational]) -> QVector {
        self.payoff.mul_vec(y)
    }
}

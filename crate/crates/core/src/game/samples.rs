//! Small hand-checkable games used by tests, docs and the CLI fixtures.

use super::{Game, Player, SignalStructure};
use crate::exact::{int, rat, QMatrix, QVector};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// T/B against L/C/R; player 1 only sees `y_C + y_R/3`, player 2 sees everything.
pub fn pooled_signal_game() -> Game {
    let u = QMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 1]]);
    let v = QMatrix::from_ints(&[&[1, 0, 0], &[0, 2, 0]]);
    let row = vec![
        QVector::new(vec![int(0)]),
        QVector::new(vec![int(1)]),
        QVector::new(vec![rat(1, 3)]),
    ];
    let sig1 = SignalStructure::new(1, vec![row.clone(), row]).expect("valid signals");
    Game::new(
        labels(&["T", "B"]),
        labels(&["L", "C", "R"]),
        u,
        v,
        sig1,
        SignalStructure::full(Player::Two, 2, 3),
    )
    .expect("valid game")
}

/// Two row actions, four columns whose signals are unit vectors arranged so
/// that `(b1+b2)/2` and `(b3+b4)/2` look identical. Payoffs are zero.
pub fn aliased_signal_game() -> Game {
    let e1 = QVector::from_ints(&[1, 0]);
    let e2 = QVector::from_ints(&[0, 1]);
    let sig1 = SignalStructure::new(
        2,
        vec![
            vec![e1.clone(), e2.clone(), e1.clone(), e2.clone()],
            vec![e1.clone(), e2.clone(), e2, e1],
        ],
    )
    .expect("valid signals");
    Game::new(
        labels(&["a", "a'"]),
        labels(&["b1", "b2", "b3", "b4"]),
        QMatrix::zeros(2, 4),
        QMatrix::zeros(2, 4),
        sig1,
        SignalStructure::full(Player::Two, 2, 4),
    )
    .expect("valid game")
}

/// T pays 4 unless the column is R, B always pays 3; player 1 observes the
/// pair `(α, β) = (y_C + y_R, y_M + y_R)`. Player 2 payoffs are chosen so
/// that every column is a best reply somewhere.
pub fn two_signal_game() -> Game {
    let u = QMatrix::from_ints(&[&[4, 4, 4, 0], &[3, 3, 3, 3]]);
    let v = QMatrix::from_ints(&[&[4, 3, 2, 0], &[0, 2, 3, 4]]);
    let msg = [[0, 0], [0, 1], [1, 0], [1, 1]];
    let row: Vec<QVector> = msg.iter().map(|m| QVector::from_ints(m)).collect();
    let sig1 = SignalStructure::new(2, vec![row.clone(), row]).expect("valid signals");
    Game::new(
        labels(&["T", "B"]),
        labels(&["L", "M", "C", "R"]),
        u,
        v,
        sig1,
        SignalStructure::full(Player::Two, 2, 4),
    )
    .expect("valid game")
}

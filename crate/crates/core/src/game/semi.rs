use num_traits::{One, Signed, Zero};

use super::{Game, Player};
use crate::exact::{QMatrix, QVector, Rational};

/// Opponent actions grouped by identical stacked signal columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiStandardPartition {
    pub cells: Vec<Vec<usize>>,
    pub signals: Vec<QVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiStandard {
    Accept(SemiStandardPartition),
    /// Two distinct opponent mixtures with the same stacked signal.
    Reject { partition: SemiStandardPartition, witness: (QVector, QVector) },
}

impl SemiStandard {
    pub fn is_accepted(&self) -> bool {
        matches!(self, SemiStandard::Accept(_))
    }

    pub fn partition(&self) -> &SemiStandardPartition {
        match self {
            SemiStandard::Accept(p) | SemiStandard::Reject { partition: p, .. } => p,
        }
    }
}

/// The cell signals must be affinely independent as points of the message
/// space, i.e. `[𝐇_i; 1]` has full column rank; otherwise a null vector
/// splits into two mixtures with equal image.
pub fn semi_standard_check(game: &Game, side: Player) -> SemiStandard {
    let map = game.view(side).informative;
    let n = map.opp();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut signals: Vec<QVector> = Vec::new();
    for b in 0..n {
        let col = map.column(b);
        match signals.iter().position(|s| s == &col) {
            Some(i) => cells[i].push(b),
            None => {
                cells.push(vec![b]);
                signals.push(col);
            }
        }
    }
    let partition = SemiStandardPartition { cells, signals };
    let rows = partition.signals[0].dim() + 1;
    let cols: Vec<QVector> = partition
        .signals
        .iter()
        .map(|s| {
            let mut c = s.to_vec();
            c.push(Rational::one());
            QVector::new(c)
        })
        .collect();
    let m = QMatrix::from_columns(&cols, rows).expect("equal dims");
    let null = m.null_space();
    let Some(delta) = null.first() else {
        return SemiStandard::Accept(partition);
    };
    let spread = |positive: bool| {
        let mut y = vec![Rational::zero(); n];
        let mut total = Rational::zero();
        for (i, d) in delta.iter().enumerate() {
            let w = if positive { d.clone() } else { -d.clone() };
            if w.is_positive() {
                y[partition.cells[i][0]] = w.clone();
                total += w;
            }
        }
        QVector::new(y).scale(&(Rational::one() / total))
    };
    let (p, q) = (spread(true), spread(false));
    let witness = if p >= q { (p, q) } else { (q, p) };
    SemiStandard::Reject { partition, witness }
}

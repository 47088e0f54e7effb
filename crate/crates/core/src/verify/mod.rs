//! Independent checks: equilibria straight from the definition, a classical
//! support-enumeration oracle, random instances and cross-validation.

mod check;
mod oracle;
mod random;

pub use check::{check_equilibrium, Certificate, PlayerCheck};
pub use oracle::{is_degenerate, support_enumeration, SupportEnumeration};
pub use random::{random_game, SignalProfile};

use crate::exact::QVector;
use crate::game::Game;
use crate::lh::{solve, SolveError, SolveOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossReport {
    pub pipeline: Vec<(QVector, QVector)>,
    pub oracle: Vec<(QVector, QVector)>,
    /// Profiles found by exactly one side.
    pub mismatches: Vec<(QVector, QVector)>,
    pub oracle_degenerate: bool,
}

impl CrossReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the generalized pipeline with support enumeration on `(u, v)`;
/// meaningful for full monitoring only.
pub fn cross_validate(game: &Game) -> Result<CrossReport, SolveError> {
    let sol = solve(game, &SolveOptions::default())?;
    let pipeline = sol.induced_profiles();
    let se = support_enumeration(game.u(), game.v());
    let mut mismatches: Vec<(QVector, QVector)> = pipeline.iter().filter(|p| !se.equilibria.contains(p)).cloned().collect();
    mismatches.extend(se.equilibria.iter().filter(|p| !pipeline.contains(p)).cloned());
    Ok(CrossReport {
        pipeline,
        oracle: se.equilibria,
        mismatches,
        oracle_degenerate: se.degenerate,
    })
}

//! Exact arithmetic: rationals, dense linear algebra and a simplex solver.

mod linalg;
mod lp;
mod rational;

pub use linalg::{affine_dim, dot, solve_linear_system, AffineSolution, QMatrix, QVector, Rref, ShapeError};
pub use lp::{
    lp_solve, Direction, LinearProgram, LpBuilder, LpCertificate, LpError, LpOutcome, RowSense, VarBound,
};
pub use rational::{abs, int, parse_rational, rat, render, render_mixture, serde_rational, ParseRationalError, Rational};

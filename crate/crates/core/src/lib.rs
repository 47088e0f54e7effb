//! Exact Nash equilibria of bimatrix games with partial monitoring.
//!
//! The pipeline builds chamber complexes of the players' signal maps,
//! extracts finitely many candidate maxmin replies, lifts their best-reply
//! regions to simplices over the candidates and walks the labeled product
//! graph with a Lemke-Howson rule. Everything is exact over ℚ.

pub mod complex;
pub mod exact;
pub mod game;
pub mod lh;
pub mod polytope;
pub mod verify;

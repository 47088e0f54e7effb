use std::collections::HashSet;

use super::graph::{LabelSet, ProductGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PathStatus {
    FullyLabeled,
    ReturnedToOrigin,
    Cycle,
}

/// A product vertex `(side-1 index, side-2 index)`; `(0, 0)` is the origin.
pub type ProductVertex = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotPath {
    pub drop: usize,
    pub vertices: Vec<ProductVertex>,
    pub status: PathStatus,
    /// Steps where more than one continuation existed.
    pub ties: usize,
}

impl PivotPath {
    pub fn end(&self) -> ProductVertex {
        *self.vertices.last().expect("paths are non-empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LhError {
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("start vertex is not fully labeled")]
    BadStart,
    #[error("no almost fully labeled continuation after {0} steps")]
    DeadEnd(usize),
}

/// Neighbours in the product graph: exactly one side moves along an edge.
fn neighbours(g: &ProductGraph, v: ProductVertex) -> impl Iterator<Item = ProductVertex> + '_ {
    let a = g.side1.adj[v.0].iter().map(move |&x| (x, v.1));
    let b = g.side2.adj[v.1].iter().map(move |&y| (v.0, y));
    a.chain(b)
}

/// Follows almost fully labeled vertices (all labels except possibly
/// `drop`) from `start`, which must be fully labeled. Ties, which only
/// arise under degeneracy, go to the lowest product index.
pub fn lh_run(g: &ProductGraph, drop: usize, start: ProductVertex) -> Result<PivotPath, LhError> {
    if !g.is_fully_labeled(start) {
        return Err(LhError::BadStart);
    }
    let need: LabelSet = g.all_labels() & !(1u128 << drop);
    let mut path = vec![start];
    let mut seen: HashSet<ProductVertex> = HashSet::from([start]);
    let mut prev: Option<ProductVertex> = None;
    let mut cur = start;
    let mut ties = 0;
    loop {
        let mut next: Vec<ProductVertex> = neighbours(g, cur)
            .filter(|&n| Some(n) != prev && g.labels(n) & need == need)
            .collect();
        next.sort();
        next.dedup();
        if next.len() > 1 {
            ties += 1;
            log::warn!("degenerate pivot at {} with {} continuations", g.render(cur), next.len());
        }
        let Some(&n) = next.first() else {
            return Err(LhError::DeadEnd(path.len() - 1));
        };
        path.push(n);
        let status = if n == (0, 0) {
            Some(PathStatus::ReturnedToOrigin)
        } else if g.is_fully_labeled(n) {
            Some(PathStatus::FullyLabeled)
        } else if !seen.insert(n) {
            Some(PathStatus::Cycle)
        } else {
            None
        };
        if let Some(status) = status {
            return Ok(PivotPath {
                drop,
                vertices: path,
                status,
                ties,
            });
        }
        prev = Some(cur);
        cur = n;
    }
}

/// All fully labeled product vertices other than the origin.
pub fn enumerate_fully_labeled(g: &ProductGraph) -> Vec<ProductVertex> {
    use rayon::prelude::*;
    let all = g.all_labels();
    let mut out: Vec<ProductVertex> = (0..g.side1.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            (0..g.side2.len())
                .filter(move |&b| (a, b) != (0, 0) && (g.side1.labels[a] | g.side2.labels[b]) == all)
                .map(move |b| (a, b))
        })
        .collect();
    out.sort();
    out
}

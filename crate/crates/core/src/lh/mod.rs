//! Labeled product graph, Lemke-Howson walks and the solver pipeline.

mod graph;
mod walk;

pub use graph::{build_graphs, full_set, label_count, LabelSet, ProductGraph, SideGraph};
pub use walk::{enumerate_fully_labeled, lh_run, LhError, PathStatus, PivotPath, ProductVertex};

use num_traits::Zero;

use crate::complex::{
    build_regions, candidate_maximizers, convexify_regions, lift, nondegeneracy_check, CandidateSet, LiftedComplex,
    NonDegeneracy, RegionSet,
};
use crate::exact::{QVector, Rational};
use crate::game::{Game, Player};
use crate::verify::{check_equilibrium, Certificate};

/// Every intermediate object of the solver, kept for reporting.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub game: Game,
    pub candidates1: CandidateSet,
    pub candidates2: CandidateSet,
    /// Regions before convexification.
    pub raw_regions1: RegionSet,
    pub raw_regions2: RegionSet,
    pub regions1: RegionSet,
    pub regions2: RegionSet,
    /// Player 1's regions over `Δ(𝒦)`.
    pub y_side: LiftedComplex,
    /// Player 2's regions over `Δ(𝓛)`.
    pub x_side: LiftedComplex,
    pub nondegeneracy: NonDegeneracy,
    pub graph: ProductGraph,
}

pub fn build_pipeline(game: &Game) -> Pipeline {
    let (candidates1, candidates2) = rayon::join(
        || candidate_maximizers(game, Player::One),
        || candidate_maximizers(game, Player::Two),
    );
    let raw_regions1 = build_regions(game, &candidates1);
    let raw_regions2 = build_regions(game, &candidates2);
    let regions1 = convexify_regions(&raw_regions1);
    let regions2 = convexify_regions(&raw_regions2);
    let y_side = lift(&regions1, regions2.labels(), regions2.actions());
    let x_side = lift(&regions2, regions1.labels(), regions1.actions());
    let nondegeneracy = nondegeneracy_check(&y_side, &x_side);
    let graph = build_graphs(&y_side, &x_side);
    log::debug!(
        "graph sides: {} vertices / {} edges and {} vertices / {} edges",
        graph.side1.len(),
        graph.side1.edges(),
        graph.side2.len(),
        graph.side2.edges()
    );
    Pipeline {
        game: game.clone(),
        candidates1,
        candidates2,
        raw_regions1,
        raw_regions2,
        regions1,
        regions2,
        y_side,
        x_side,
        nondegeneracy,
        graph,
    }
}

/// A fully labeled point with the profile it induces and its certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equilibrium {
    pub vertex: ProductVertex,
    /// Point of `Δ(𝓛)`.
    pub lifted_x: QVector,
    /// Point of `Δ(𝒦)`.
    pub lifted_y: QVector,
    pub x: QVector,
    pub y: QVector,
    pub labels: String,
    pub certificate: Certificate,
}

/// `x = Σ_ℓ 𝐱_ℓ x_ℓ`; duplicated labels add onto their shared action.
pub fn induce_profile(lifted: &[Rational], candidates: &[QVector]) -> QVector {
    QVector::combination(lifted, candidates)
}

impl Pipeline {
    pub fn equilibrium_at(&self, v: ProductVertex) -> Equilibrium {
        let lx = self.graph.side1.points[v.0].clone().expect("not the origin");
        let ly = self.graph.side2.points[v.1].clone().expect("not the origin");
        let x = induce_profile(&lx, &self.regions1.actions());
        let y = induce_profile(&ly, &self.regions2.actions());
        let certificate = check_equilibrium(&self.game, &x, &y, &Rational::zero());
        Equilibrium {
            vertex: v,
            lifted_x: lx,
            lifted_y: ly,
            x,
            y,
            labels: self.graph.render(v),
            certificate,
        }
    }

    pub fn label_names(&self) -> &[String] {
        &self.graph.label_names
    }

    pub fn run(&self, drop: usize, start: ProductVertex) -> Result<PivotPath, LhError> {
        lh_run(&self.graph, drop, start)
    }

    pub fn render_path(&self, p: &PivotPath) -> Vec<String> {
        p.vertices.iter().map(|&v| self.graph.render(v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveMode {
    /// One walk from the origin, or from the given fully labeled endpoint.
    Lh { drop: String, from: Option<usize> },
    LhAllDrops,
    Enumerate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: SolveMode,
    /// Proceed on degenerate complexes with lowest-index tie-breaking.
    pub lex_perturb: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: SolveMode::Enumerate,
            lex_perturb: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub pipeline: Pipeline,
    pub equilibria: Vec<Equilibrium>,
    pub paths: Vec<PivotPath>,
}

impl Solution {
    /// Distinct induced profiles, sorted.
    pub fn induced_profiles(&self) -> Vec<(QVector, QVector)> {
        let mut v: Vec<(QVector, QVector)> = self.equilibria.iter().map(|e| (e.x.clone(), e.y.clone())).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn all_verified(&self) -> bool {
        self.equilibria.iter().all(|e| e.certificate.pass)
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SolveError {
    #[error("degenerate complex: {0:?}")]
    Degenerate(NonDegeneracy, Box<Pipeline>),
    #[error(transparent)]
    Lh(#[from] LhError),
    #[error("endpoint {0} does not exist")]
    NoEndpoint(usize),
}

pub fn solve(game: &Game, opts: &SolveOptions) -> Result<Solution, SolveError> {
    solve_pipeline(build_pipeline(game), opts)
}

pub fn solve_pipeline(pipeline: Pipeline, opts: &SolveOptions) -> Result<Solution, SolveError> {
    if !pipeline.nondegeneracy.passed() && !opts.lex_perturb {
        return Err(SolveError::Degenerate(pipeline.nondegeneracy.clone(), Box::new(pipeline)));
    }
    let g = &pipeline.graph;
    let mut paths = Vec::new();
    let mut ends: Vec<ProductVertex> = Vec::new();
    match &opts.mode {
        SolveMode::Enumerate => ends = enumerate_fully_labeled(g),
        SolveMode::Lh { drop, from } => {
            let d = g.label_id(drop).ok_or_else(|| LhError::UnknownLabel(drop.clone()))?;
            let start = match from {
                None => (0, 0),
                Some(i) => *enumerate_fully_labeled(g).get(*i).ok_or(SolveError::NoEndpoint(*i))?,
            };
            let p = lh_run(g, d, start)?;
            if p.status == PathStatus::FullyLabeled {
                ends.push(p.end());
            }
            paths.push(p);
        }
        SolveMode::LhAllDrops => {
            for d in 0..g.label_names.len() {
                let p = lh_run(g, d, (0, 0))?;
                if p.status == PathStatus::FullyLabeled && !ends.contains(&p.end()) {
                    ends.push(p.end());
                }
                paths.push(p);
            }
            ends.sort();
        }
    }
    let equilibria = ends.iter().map(|&v| pipeline.equilibrium_at(v)).collect();
    Ok(Solution {
        pipeline,
        equilibria,
        paths,
    })
}

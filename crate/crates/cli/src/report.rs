//! Machine-readable output. Every rational is a `"p/q"` string.

use serde::{Deserialize, Serialize};

use pmnash::complex::{LiftedComplex, NonDegeneracy, RegionSet};
use pmnash::exact::{render, render_mixture, QMatrix, QVector, Rational};
use pmnash::game::{Game, Player, ReducedGame, SemiStandard};
use pmnash::lh::{Equilibrium, PathStatus, Pipeline, PivotPath};
use pmnash::polytope::Polytope;
use pmnash::verify::{Certificate, PlayerCheck};

pub fn vec_str(v: &[Rational]) -> Vec<String> {
    v.iter().map(render).collect()
}

pub fn mat_str(m: &QMatrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| vec_str(r)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateOut {
    pub label: String,
    pub action: Vec<String>,
    pub mixture: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOut {
    pub maxmin: String,
    pub achieved: String,
    pub slack: String,
    pub pass: bool,
}

impl From<&PlayerCheck> for CheckOut {
    fn from(c: &PlayerCheck) -> Self {
        CheckOut {
            maxmin: render(&c.maxmin),
            achieved: render(&c.achieved),
            slack: render(&c.slack),
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateOut {
    pub player1: CheckOut,
    pub player2: CheckOut,
    pub epsilon: String,
    pub pass: bool,
}

impl From<&Certificate> for CertificateOut {
    fn from(c: &Certificate) -> Self {
        CertificateOut {
            player1: (&c.player1).into(),
            player2: (&c.player2).into(),
            epsilon: render(&c.epsilon),
            pass: c.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumOut {
    pub id: usize,
    pub labels: String,
    pub lifted_x: Vec<String>,
    pub lifted_y: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub certificate: CertificateOut,
}

impl EquilibriumOut {
    pub fn new(id: usize, e: &Equilibrium) -> Self {
        EquilibriumOut {
            id,
            labels: e.labels.clone(),
            lifted_x: vec_str(&e.lifted_x),
            lifted_y: vec_str(&e.lifted_y),
            x: vec_str(&e.x),
            y: vec_str(&e.y),
            certificate: (&e.certificate).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonDegeneracyOut {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&NonDegeneracy> for NonDegeneracyOut {
    fn from(n: &NonDegeneracy) -> Self {
        match n {
            NonDegeneracy::Pass => NonDegeneracyOut {
                pass: true,
                player: None,
                vertex: None,
                regions: Vec::new(),
                reason: None,
            },
            NonDegeneracy::Fail {
                owner,
                vertex,
                regions,
                reason,
            } => NonDegeneracyOut {
                pass: false,
                player: Some(owner.index() as u8 + 1),
                vertex: Some(vec_str(vertex)),
                regions: regions.clone(),
                reason: Some(reason.clone()),
            },
        }
    }
}

pub fn describe_nondegeneracy(n: &NonDegeneracy) -> String {
    match n {
        NonDegeneracy::Pass => "pass".into(),
        NonDegeneracy::Fail {
            owner,
            vertex,
            regions,
            reason,
        } => format!(
            "fail: {owner} regions {{{}}} at ({}): {reason}",
            regions.join(","),
            vec_str(vertex).join(", ")
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    pub candidates1: Vec<CandidateOut>,
    pub candidates2: Vec<CandidateOut>,
    pub nondegeneracy: NonDegeneracyOut,
    pub equilibria: Vec<EquilibriumOut>,
    pub count: usize,
    pub odd: bool,
    pub verified: bool,
}

pub fn candidates(rs: &RegionSet, labels: &[String]) -> Vec<CandidateOut> {
    rs.atoms
        .iter()
        .map(|a| CandidateOut {
            label: a.label.clone(),
            action: vec_str(&a.action),
            mixture: render_mixture(&a.action, labels),
        })
        .collect()
}

impl SolveReport {
    pub fn new(p: &Pipeline, eqs: &[Equilibrium]) -> Self {
        let g = &p.game;
        SolveReport {
            actions1: g.actions(Player::One).to_vec(),
            actions2: g.actions(Player::Two).to_vec(),
            candidates1: candidates(&p.regions1, g.actions(Player::One)),
            candidates2: candidates(&p.regions2, g.actions(Player::Two)),
            nondegeneracy: (&p.nondegeneracy).into(),
            equilibria: eqs.iter().enumerate().map(|(i, e)| EquilibriumOut::new(i, e)).collect(),
            count: eqs.len(),
            odd: eqs.len() % 2 == 1,
            verified: eqs.iter().all(|e| e.certificate.pass),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathReport {
    pub drop: String,
    pub from: Option<usize>,
    pub status: String,
    pub trace: Vec<String>,
    pub ties: usize,
    pub endpoint: Option<EquilibriumOut>,
}

pub fn status_name(s: PathStatus) -> &'static str {
    match s {
        PathStatus::FullyLabeled => "fully-labeled",
        PathStatus::ReturnedToOrigin => "returned-to-origin",
        PathStatus::Cycle => "cycle",
    }
}

impl PathReport {
    pub fn new(p: &Pipeline, path: &PivotPath, from: Option<usize>, end: Option<&Equilibrium>) -> Self {
        PathReport {
            drop: p.label_names()[path.drop].clone(),
            from,
            status: status_name(path.status).into(),
            trace: p.render_path(path),
            ties: path.ties,
            endpoint: end.map(|e| EquilibriumOut::new(0, e)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub certificate: CertificateOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiOut {
    pub semi_standard: bool,
    /// Opponent actions sharing a stacked signal.
    pub cells: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(Vec<String>, Vec<String>)>,
}

pub fn semi_out(s: &SemiStandard, opp: &[String]) -> SemiOut {
    let cells = s
        .partition()
        .cells
        .iter()
        .map(|c| c.iter().map(|&b| opp[b].clone()).collect())
        .collect();
    let witness = match s {
        SemiStandard::Reject { witness, .. } => Some((vec_str(&witness.0), vec_str(&witness.1))),
        SemiStandard::Accept(_) => None,
    };
    SemiOut {
        semi_standard: s.is_accepted(),
        cells,
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub player1: SemiOut,
    pub player2: SemiOut,
    pub labels1: Vec<String>,
    pub labels2: Vec<String>,
    pub candidates1: Vec<Vec<String>>,
    pub candidates2: Vec<Vec<String>>,
    pub u: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
    pub equivalence_guaranteed: bool,
}

impl ReduceReport {
    pub fn new(game: &Game, s1: &SemiStandard, s2: &SemiStandard, r: &ReducedGame) -> Self {
        ReduceReport {
            player1: semi_out(s1, game.actions(Player::Two)),
            player2: semi_out(s2, game.actions(Player::One)),
            labels1: r.labels1.clone(),
            labels2: r.labels2.clone(),
            candidates1: r.candidates1.iter().map(|c| vec_str(c)).collect(),
            candidates2: r.candidates2.iter().map(|c| vec_str(c)).collect(),
            u: mat_str(&r.u),
            v: mat_str(&r.v),
            equivalence_guaranteed: r.equivalence_guaranteed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellOut {
    pub vertices: Vec<Vec<String>>,
}

impl From<&Polytope> for CellOut {
    fn from(p: &Polytope) -> Self {
        CellOut {
            vertices: p.vertices().iter().map(|v| vec_str(v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionOut {
    pub label: String,
    pub action: Vec<String>,
    /// Cells before convexification, one per chamber piece.
    pub pieces: Vec<CellOut>,
    pub cells: Vec<CellOut>,
    pub lifted: Option<CellOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub player: u8,
    /// Coordinates of the region cells (opponent actions).
    pub coordinates: Vec<String>,
    /// Coordinates of the lifted cells (opponent candidate labels).
    pub lifted_coordinates: Vec<String>,
    pub chambers: Vec<CellOut>,
    pub regions: Vec<RegionOut>,
    pub nonconvex: Vec<String>,
    pub pruned: Vec<String>,
}

impl ComplexReport {
    pub fn new(p: &Pipeline, player: Player) -> Self {
        let (cands, raw, rs, lifted): (_, _, _, &LiftedComplex) = match player {
            Player::One => (&p.candidates1, &p.raw_regions1, &p.regions1, &p.y_side),
            Player::Two => (&p.candidates2, &p.raw_regions2, &p.regions2, &p.x_side),
        };
        let regions = rs
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let pieces = raw
                    .atoms
                    .iter()
                    .find(|r| r.candidate == a.candidate)
                    .map(|r| r.cells.iter().map(CellOut::from).collect())
                    .unwrap_or_default();
                RegionOut {
                    label: a.label.clone(),
                    action: vec_str(&a.action),
                    pieces,
                    cells: a.cells.iter().map(CellOut::from).collect(),
                    lifted: lifted.regions[i].as_ref().map(CellOut::from),
                }
            })
            .collect();
        ComplexReport {
            player: player.index() as u8 + 1,
            coordinates: p.game.actions(player.other()).to_vec(),
            lifted_coordinates: lifted.domain_labels.clone(),
            chambers: cands.chambers.cells().iter().map(CellOut::from).collect(),
            regions,
            nonconvex: rs.nonconvex.clone(),
            pruned: rs.pruned.clone(),
        }
    }
}

/// Parses a report vector back to exact values.
pub fn parse_vec(v: &[String]) -> Result<QVector, pmnash::exact::ParseRationalError> {
    v.iter().map(|s| pmnash::exact::parse_rational(s)).collect::<Result<Vec<_>, _>>().map(QVector::new)
}

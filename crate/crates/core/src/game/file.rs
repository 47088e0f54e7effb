use serde::{Deserialize, Serialize};

use super::{Game, Player, SignalStructure};
use crate::exact::{parse_rational, render, QMatrix, QVector, Rational};

/// A rational written as `"p/q"`; bare JSON integers are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatEntry {
    Text(String),
    Int(i64),
}

impl RatEntry {
    fn parse(&self, field: &str) -> Result<Rational, GameFileError> {
        match self {
            RatEntry::Int(n) => Ok(Rational::from_integer((*n).into())),
            RatEntry::Text(s) => parse_rational(s).map_err(|e| GameFileError::Entry {
                field: field.to_string(),
                message: e.to_string(),
            }),
        }
    }

    fn of(q: &Rational) -> Self {
        RatEntry::Text(render(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MessageEntry {
    Scalar(RatEntry),
    Vector(Vec<RatEntry>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignalsMatrix {
    pub dim: usize,
    pub matrix: Vec<Vec<MessageEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SignalsSpec {
    Keyword(String),
    Matrix(SignalsMatrix),
}

/// On-disk game description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub actions1: Vec<String>,
    pub actions2: Vec<String>,
    pub u: Vec<Vec<RatEntry>>,
    pub v: Vec<Vec<RatEntry>>,
    pub signals1: SignalsSpec,
    pub signals2: SignalsSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameFileError {
    #[error("{field}: {message}")]
    Entry { field: String, message: String },
    #[error("{field}: {message}")]
    Shape { field: String, message: String },
}

fn shape(field: impl Into<String>, message: impl Into<String>) -> GameFileError {
    GameFileError::Shape {
        field: field.into(),
        message: message.into(),
    }
}

fn payoffs(name: &str, rows: &[Vec<RatEntry>], a: usize, b: usize) -> Result<QMatrix, GameFileError> {
    if rows.len() != a {
        return Err(shape(name, format!("has {} rows, expected {a}", rows.len())));
    }
    let mut out = Vec::with_capacity(a);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != b {
            return Err(shape(format!("{name}[{i}]"), format!("row {i} has {} entries, expected {b}", row.len())));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, e)| e.parse(&format!("{name}[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(QMatrix::from_rows(out, b).expect("checked shape"))
}

fn signals(name: &str, spec: &SignalsSpec, receiver: Player, a: usize, b: usize) -> Result<SignalStructure, GameFileError> {
    let m = match spec {
        SignalsSpec::Keyword(k) if k == "full" => return Ok(SignalStructure::full(receiver, a, b)),
        SignalsSpec::Keyword(k) => return Err(shape(name, format!("unknown keyword {k:?}, expected \"full\" or an object"))),
        SignalsSpec::Matrix(m) => m,
    };
    if m.dim == 0 {
        return Err(shape(format!("{name}.dim"), "must be at least 1"));
    }
    if m.matrix.len() != a {
        return Err(shape(format!("{name}.matrix"), format!("has {} rows, expected {a}", m.matrix.len())));
    }
    let mut msgs = Vec::with_capacity(a);
    for (i, row) in m.matrix.iter().enumerate() {
        if row.len() != b {
            return Err(shape(
                format!("{name}.matrix[{i}]"),
                format!("row {i} has {} entries, expected {b}", row.len()),
            ));
        }
        let mut out = Vec::with_capacity(b);
        for (j, e) in row.iter().enumerate() {
            let field = format!("{name}.matrix[{i}][{j}]");
            let entries: Vec<RatEntry> = match e {
                MessageEntry::Scalar(s) => vec![s.clone()],
                MessageEntry::Vector(v) => v.clone(),
            };
            if entries.len() != m.dim {
                return Err(shape(field, format!("message has {} components, expected {}", entries.len(), m.dim)));
            }
            let q = entries
                .iter()
                .enumerate()
                .map(|(k, r)| r.parse(&format!("{field}[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(QVector::new(q));
        }
        msgs.push(out);
    }
    SignalStructure::new(m.dim, msgs).map_err(|e| shape(name, e.to_string()))
}

impl GameFile {
    pub fn to_game(&self) -> Result<Game, GameFileError> {
        let (a, b) = (self.actions1.len(), self.actions2.len());
        if a == 0 {
            return Err(shape("actions1", "must not be empty"));
        }
        if b == 0 {
            return Err(shape("actions2", "must not be empty"));
        }
        for (name, labels) in [("actions1", &self.actions1), ("actions2", &self.actions2)] {
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(shape(format!("{name}[{i}]"), format!("duplicate label {l:?}")));
                }
            }
        }
        let u = payoffs("u", &self.u, a, b)?;
        let v = payoffs("v", &self.v, a, b)?;
        let s1 = signals("signals1", &self.signals1, Player::One, a, b)?;
        let s2 = signals("signals2", &self.signals2, Player::Two, a, b)?;
        Game::new(self.actions1.clone(), self.actions2.clone(), u, v, s1, s2).map_err(|e| shape("game", e.to_string()))
    }

    pub fn from_game(g: &Game) -> GameFile {
        let mat = |m: &QMatrix| {
            (0..m.rows())
                .map(|i| m.row(i).iter().map(RatEntry::of).collect())
                .collect()
        };
        let (a, b) = (g.actions(Player::One).len(), g.actions(Player::Two).len());
        let sig = |p: Player| {
            let s = g.signals(p);
            if s == &SignalStructure::full(p, a, b) {
                return SignalsSpec::Keyword("full".into());
            }
            SignalsSpec::Matrix(SignalsMatrix {
                dim: s.dim(),
                matrix: s
                    .messages()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|m| {
                                if s.dim() == 1 {
                                    MessageEntry::Scalar(RatEntry::of(&m[0]))
                                } else {
                                    MessageEntry::Vector(m.iter().map(RatEntry::of).collect())
                                }
                            })
                            .collect()
                    })
                    .collect(),
            })
        };
        GameFile {
            actions1: g.actions(Player::One).to_vec(),
            actions2: g.actions(Player::Two).to_vec(),
            u: mat(g.u()),
            v: mat(g.v()),
            signals1: sig(Player::One),
            signals2: sig(Player::Two),
        }
    }
}

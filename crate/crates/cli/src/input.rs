use std::path::Path;

use pmnash::exact::{parse_rational, QVector};
use pmnash::game::{Game, GameFile};

use crate::CliError;

/// Reads and validates a game file; the `"full"` shorthand is expanded.
pub fn parse_game(path: &Path) -> Result<Game, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_game_str(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn parse_game_str(text: &str) -> Result<Game, CliError> {
    let file: GameFile = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.to_game().map_err(|e| CliError::Input(e.to_string()))
}

/// `"2/3,1/3"` as a mixed action over `n` actions.
pub fn parse_mixture(text: &str, n: usize, what: &str) -> Result<QVector, CliError> {
    let parts: Result<Vec<_>, _> = text.split(',').map(parse_rational).collect();
    let v = QVector::new(parts.map_err(|e| CliError::Input(format!("{what}: {e}")))?);
    if v.dim() != n {
        return Err(CliError::Input(format!("{what}: expected {n} entries, got {}", v.dim())));
    }
    if !v.is_probability() {
        return Err(CliError::Input(format!("{what}: not a probability vector")));
    }
    Ok(v)
}

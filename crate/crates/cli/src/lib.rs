//! Command-line front end: game files in, equilibria, traces, certificates,
//! reduced games and region dumps out.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde::Serialize;

use pmnash::exact::{parse_rational, render, render_mixture, Rational};
use pmnash::game::{build_auxiliary_game, semi_standard_check, Game, Player};
use pmnash::lh::{build_pipeline, solve_pipeline, Equilibrium, PathStatus, Pipeline, SolveError, SolveMode, SolveOptions};
use pmnash::verify::check_equilibrium;

mod input;
pub mod report;

pub use input::{parse_game, parse_game_str, parse_mixture};
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INPUT
    }
}

#[derive(Debug, Parser)]
#[command(name = "pmnash", version, about = "Exact Nash equilibria of bimatrix games with partial monitoring")]
pub struct Cli {
    /// Machine-readable JSON on stdout
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the parallel parts of the pipeline
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Walk degenerate complexes anyway, breaking ties by lowest index
    #[arg(long, global = true)]
    pub lex_perturb: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline; lists every equilibrium found by enumeration
    Solve { game: PathBuf },
    /// One Lemke-Howson path with its trace
    Lh {
        game: PathBuf,
        /// Label to drop
        #[arg(long)]
        drop: String,
        /// Start from this endpoint (ids as printed by `enumerate`) instead of the origin
        #[arg(long)]
        from: Option<usize>,
    },
    /// All fully labeled points and the parity of their number
    Enumerate { game: PathBuf },
    /// Certificate for a proposed profile
    Check {
        game: PathBuf,
        /// Player 1 mixture, e.g. "2/3,1/3"
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Player 2 mixture
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Rational tolerance
        #[arg(long, default_value = "0")]
        eps: String,
    },
    /// Semi-standard verdicts and the auxiliary full-monitoring game
    Reduce { game: PathBuf },
    /// Chambers and best-reply regions of one player
    Complex {
        game: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        player: u8,
        /// Write the regions JSON here
        #[arg(long)]
        emit_regions: Option<PathBuf>,
    },
}

/// What a command prints and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub json: String,
    pub code: i32,
}

impl Output {
    pub fn render(&self, json: bool) -> &str {
        if json {
            &self.json
        } else {
            &self.text
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Solve { game } => equilibria_cmd(&parse_game(game)?, cli.lex_perturb, false),
        Command::Enumerate { game } => equilibria_cmd(&parse_game(game)?, cli.lex_perturb, true),
        Command::Lh { game, drop, from } => lh_cmd(&parse_game(game)?, drop, *from, cli.lex_perturb),
        Command::Check { game, x, y, eps } => check_cmd(&parse_game(game)?, x, y, eps),
        Command::Reduce { game } => Ok(reduce_cmd(&parse_game(game)?)),
        Command::Complex {
            game,
            player,
            emit_regions,
        } => complex_cmd(&parse_game(game)?, *player, emit_regions.as_deref()),
    }
}

fn profile_line(p: &Pipeline, e: &Equilibrium) -> String {
    let g = &p.game;
    format!(
        "({}, {}) = ({}, {})",
        render_mixture(&e.lifted_x, &p.regions1.labels()),
        render_mixture(&e.lifted_y, &p.regions2.labels()),
        render_mixture(&e.x, g.actions(Player::One)),
        render_mixture(&e.y, g.actions(Player::Two)),
    )
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn degenerate_output(p: &Pipeline) -> Output {
    let report = SolveReport::new(p, &[]);
    Output {
        text: format!(
            "degenerate complex: {}\nrerun with --lex-perturb to walk it anyway\n",
            describe_nondegeneracy(&p.nondegeneracy)
        ),
        json: to_json(&report),
        code: EXIT_DEGENERATE,
    }
}

fn equilibria_cmd(game: &Game, lex: bool, points: bool) -> Result<Output, CliError> {
    let opts = SolveOptions {
        mode: SolveMode::Enumerate,
        lex_perturb: lex,
    };
    let sol = match solve_pipeline(build_pipeline(game), &opts) {
        Ok(s) => s,
        Err(SolveError::Degenerate(_, p)) => return Ok(degenerate_output(&p)),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let p = &sol.pipeline;
    let report = SolveReport::new(p, &sol.equilibria);
    let mut t = String::new();
    if !p.nondegeneracy.passed() {
        writeln!(t, "warning: degenerate complex ({}); ties broken by lowest index", describe_nondegeneracy(&p.nondegeneracy)).unwrap();
    }
    writeln!(t, "labels: {}", p.label_names().join(" ")).unwrap();
    if points {
        for (i, e) in sol.equilibria.iter().enumerate() {
            writeln!(t, "#{i} {}  {}  [{}]", e.labels, profile_line(p, e), verdict(e.certificate.pass)).unwrap();
        }
        let n = sol.equilibria.len();
        writeln!(t, "{n} fully labeled point{} ({})", if n == 1 { "" } else { "s" }, if n % 2 == 1 { "odd" } else { "even" }).unwrap();
    } else {
        for (i, e) in sol.equilibria.iter().enumerate() {
            writeln!(t, "equilibrium {}: {}", i + 1, profile_line(p, e)).unwrap();
            writeln!(
                t,
                "  check: player 1 {} ({} of {}), player 2 {} ({} of {})",
                verdict(e.certificate.player1.pass),
                render(&e.certificate.player1.achieved),
                render(&e.certificate.player1.maxmin),
                verdict(e.certificate.player2.pass),
                render(&e.certificate.player2.achieved),
                render(&e.certificate.player2.maxmin),
            )
            .unwrap();
        }
        let n = sol.equilibria.len();
        writeln!(
            t,
            "{n} equilibri{}; the count is {}",
            if n == 1 { "um" } else { "a" },
            if n % 2 == 1 { "odd, as non-degeneracy predicts" } else { "even" }
        )
        .unwrap();
    }
    let induced = sol.induced_profiles().len();
    if induced != sol.equilibria.len() {
        writeln!(t, "{induced} distinct induced profile(s)").unwrap();
    }
    let code = if report.verified { EXIT_OK } else { EXIT_MISMATCH };
    if code != EXIT_OK {
        writeln!(t, "some fully labeled point failed verification").unwrap();
    }
    Ok(Output {
        text: t,
        json: to_json(&report),
        code,
    })
}

fn lh_cmd(game: &Game, drop: &str, from: Option<usize>, lex: bool) -> Result<Output, CliError> {
    let opts = SolveOptions {
        mode: SolveMode::Lh {
            drop: drop.to_string(),
            from,
        },
        lex_perturb: lex,
    };
    let sol = match solve_pipeline(build_pipeline(game), &opts) {
        Ok(s) => s,
        Err(SolveError::Degenerate(_, p)) => return Ok(degenerate_output(&p)),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    let p = &sol.pipeline;
    let path = &sol.paths[0];
    let end = sol.equilibria.first();
    let report = PathReport::new(p, path, from, end);
    let mut t = String::new();
    writeln!(t, "drop {drop}{}", from.map(|f| format!(" from endpoint #{f}")).unwrap_or_default()).unwrap();
    for (i, step) in report.trace.iter().enumerate() {
        writeln!(t, "{i:>3}  {step}").unwrap();
    }
    match path.status {
        PathStatus::FullyLabeled => {
            let e = end.expect("fully labeled end");
            writeln!(t, "end: {}  [{}]", profile_line(p, e), verdict(e.certificate.pass)).unwrap();
        }
        PathStatus::ReturnedToOrigin => writeln!(t, "end: back at the origin").unwrap(),
        PathStatus::Cycle => writeln!(t, "end: cycle detected").unwrap(),
    }
    if path.ties > 0 {
        writeln!(t, "warning: {} degenerate pivot(s)", path.ties).unwrap();
    }
    let code = if end.map(|e| e.certificate.pass).unwrap_or(true) { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Output {
        text: t,
        json: to_json(&report),
        code,
    })
}

fn check_cmd(game: &Game, x: &str, y: &str, eps: &str) -> Result<Output, CliError> {
    let x = parse_mixture(x, game.actions(Player::One).len(), "--x")?;
    let y = parse_mixture(y, game.actions(Player::Two).len(), "--y")?;
    let eps: Rational = parse_rational(eps).map_err(|e| CliError::Input(format!("--eps: {e}")))?;
    if eps < Rational::zero() {
        return Err(CliError::Input("--eps: must be non-negative".into()));
    }
    let c = check_equilibrium(game, &x, &y, &eps);
    let mut t = String::new();
    writeln!(
        t,
        "profile ({}, {})",
        render_mixture(&x, game.actions(Player::One)),
        render_mixture(&y, game.actions(Player::Two))
    )
    .unwrap();
    for (name, pc) in [("player 1", &c.player1), ("player 2", &c.player2)] {
        writeln!(
            t,
            "{name}: maxmin {} achieved {} slack {}  {}",
            render(&pc.maxmin),
            render(&pc.achieved),
            render(&pc.slack),
            verdict(pc.pass)
        )
        .unwrap();
    }
    writeln!(t, "{}", if c.pass { "equilibrium" } else { "not an equilibrium" }).unwrap();
    let report = CheckReport {
        x: vec_str(&x),
        y: vec_str(&y),
        certificate: (&c).into(),
    };
    Ok(Output {
        text: t,
        json: to_json(&report),
        code: if c.pass { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn reduce_cmd(game: &Game) -> Output {
    let p = build_pipeline(game);
    let s1 = semi_standard_check(game, Player::One);
    let s2 = semi_standard_check(game, Player::Two);
    let r = build_auxiliary_game(
        game,
        p.regions1.labels(),
        p.regions1.actions(),
        p.regions2.labels(),
        p.regions2.actions(),
    );
    let report = ReduceReport::new(game, &s1, &s2, &r);
    let mut t = String::new();
    for (name, s) in [("player 1", &report.player1), ("player 2", &report.player2)] {
        write!(t, "{name} semi-standard: {}", if s.semi_standard { "yes" } else { "no" }).unwrap();
        if let Some((a, b)) = &s.witness {
            write!(t, " (({}) and ({}) send the same signals)", a.join(","), b.join(",")).unwrap();
        }
        writeln!(t).unwrap();
    }
    let fmt_cand = |labels: &[String], cands: &[pmnash::exact::QVector], acts: &[String]| {
        labels
            .iter()
            .zip(cands)
            .map(|(l, c)| format!("{l}={}", render_mixture(c, acts)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(t, "candidates 1: {}", fmt_cand(&r.labels1, &r.candidates1, game.actions(Player::One))).unwrap();
    writeln!(t, "candidates 2: {}", fmt_cand(&r.labels2, &r.candidates2, game.actions(Player::Two))).unwrap();
    let cells: Vec<Vec<String>> = (0..r.labels1.len())
        .map(|i| {
            (0..r.labels2.len())
                .map(|j| format!("({},{})", render(r.u.get(i, j)), render(r.v.get(i, j))))
                .collect()
        })
        .collect();
    let w0 = r.labels1.iter().map(|l| l.len()).max().unwrap_or(0);
    let w = cells.iter().flatten().map(|c| c.len()).chain(r.labels2.iter().map(|l| l.len())).max().unwrap_or(0);
    write!(t, "{:w0$} ", "").unwrap();
    for l in &r.labels2 {
        write!(t, " {l:^w$}").unwrap();
    }
    writeln!(t).unwrap();
    for (l, row) in r.labels1.iter().zip(&cells) {
        write!(t, "{l:w0$} ").unwrap();
        for c in row {
            write!(t, " {c:^w$}").unwrap();
        }
        writeln!(t).unwrap();
    }
    writeln!(
        t,
        "equivalence {}",
        if r.equivalence_guaranteed { "guaranteed" } else { "NOT guaranteed" }
    )
    .unwrap();
    Output {
        text: t,
        json: to_json(&report),
        code: EXIT_OK,
    }
}

fn complex_cmd(game: &Game, player: u8, emit: Option<&Path>) -> Result<Output, CliError> {
    let p = build_pipeline(game);
    let who = if player == 1 { Player::One } else { Player::Two };
    let report = ComplexReport::new(&p, who);
    let json = to_json(&report);
    let mut t = String::new();
    writeln!(t, "{who}: {} chamber(s) over Δ({})", report.chambers.len(), report.coordinates.join(",")).unwrap();
    for r in &report.regions {
        writeln!(
            t,
            "  {} = ({}): {} piece(s), {} cell(s){}",
            r.label,
            r.action.join(","),
            r.pieces.len(),
            r.cells.len(),
            if r.lifted.is_none() { ", empty" } else { "" }
        )
        .unwrap();
    }
    if !report.nonconvex.is_empty() {
        writeln!(t, "non-convex regions split: {}", report.nonconvex.join(" ")).unwrap();
    }
    if !report.pruned.is_empty() {
        writeln!(t, "never-best candidates dropped: {}", report.pruned.join(" ")).unwrap();
    }
    if let Some(path) = emit {
        std::fs::write(path, &json).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        writeln!(t, "regions written to {}", path.display()).unwrap();
    }
    Ok(Output {
        text: t,
        json,
        code: EXIT_OK,
    })
}

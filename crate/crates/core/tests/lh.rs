use pmnash::exact::*;
use pmnash::game::*;
use pmnash::lh::*;
use pmnash::verify::{random_game, SignalProfile};

fn q(xs: &[(i64, i64)]) -> QVector {
    QVector::new(xs.iter().map(|&(p, d)| rat(p, d)).collect())
}

fn enumerate(g: &Game) -> Solution {
    solve(g, &SolveOptions::default()).unwrap()
}

fn walk(g: &Game, drop: &str, from: Option<usize>) -> Solution {
    let opts = SolveOptions {
        mode: SolveMode::Lh { drop: drop.into(), from },
        lex_perturb: false,
    };
    solve(g, &opts).unwrap()
}

fn pure(n: usize, i: usize) -> QVector {
    QVector::unit(n, i)
}

#[test]
fn pooled_game_has_three_equilibria() {
    let s = enumerate(&pooled_signal_game());
    assert_eq!(s.equilibria.len(), 3);
    assert!(s.all_verified());
    let profiles = s.induced_profiles();
    assert!(profiles.contains(&(pure(2, 0), pure(3, 0))));
    assert!(profiles.contains(&(pure(2, 1), pure(3, 1))));
    assert!(profiles.contains(&(q(&[(2, 3), (1, 3)]), q(&[(5, 6), (1, 6), (0, 1)]))));
    let mixed = s.equilibria.iter().find(|e| e.x == q(&[(2, 3), (1, 3)])).unwrap();
    // 1/3 T + 2/3 M
    assert_eq!(mixed.lifted_x, q(&[(1, 3), (0, 1), (2, 3)]));
    assert_eq!(mixed.lifted_y, q(&[(5, 6), (1, 6), (0, 1)]));
}

#[test]
fn dropping_m_reaches_bc() {
    let g = pooled_signal_game();
    let s = walk(&g, "M", None);
    let p = &s.paths[0];
    assert_eq!(p.status, PathStatus::FullyLabeled);
    assert_eq!(p.ties, 0);
    let trace = s.pipeline.render_path(p);
    assert_eq!(
        trace,
        vec!["{L,C,R}×{T,B,M}", "{L,C,R}×{T,B,C}", "{L,R,B}×{T,B,C}", "{L,R,B}×{T,M,C}"]
    );
    assert_eq!((s.equilibria[0].x.clone(), s.equilibria[0].y.clone()), (pure(2, 1), pure(3, 1)));
}

#[test]
fn dropping_t_reaches_tl() {
    let s = walk(&pooled_signal_game(), "T", None);
    assert_eq!((s.equilibria[0].x.clone(), s.equilibria[0].y.clone()), (pure(2, 0), pure(3, 0)));
}

#[test]
fn from_tl_dropping_c_reaches_the_mixed_equilibrium() {
    let g = pooled_signal_game();
    let all = enumerate(&g);
    let tl = all.equilibria.iter().position(|e| e.x == pure(2, 0)).unwrap();
    let s = walk(&g, "C", Some(tl));
    let p = &s.paths[0];
    assert_eq!(p.status, PathStatus::FullyLabeled);
    let trace = s.pipeline.render_path(p);
    assert_eq!(trace.first().unwrap(), "{C,R,T}×{B,M,L}");
    assert_eq!(trace.last().unwrap(), "{R,T,M}×{B,L,C}");
    assert_eq!(s.equilibria[0].x, q(&[(2, 3), (1, 3)]));
    assert!(s.equilibria[0].certificate.pass);
}

#[test]
fn every_drop_ends_verified() {
    let g = pooled_signal_game();
    let opts = SolveOptions {
        mode: SolveMode::LhAllDrops,
        lex_perturb: false,
    };
    let s = solve(&g, &opts).unwrap();
    assert_eq!(s.paths.len(), 6);
    assert!(s.paths.iter().all(|p| p.status == PathStatus::FullyLabeled));
    assert!(s.all_verified());
}

#[test]
fn unknown_drop_label() {
    let opts = SolveOptions {
        mode: SolveMode::Lh { drop: "Z".into(), from: None },
        lex_perturb: false,
    };
    assert!(matches!(solve(&pooled_signal_game(), &opts), Err(SolveError::Lh(LhError::UnknownLabel(_)))));
}

#[test]
fn one_by_one_game() {
    let g = Game::full_monitoring(vec!["a".into()], vec!["b".into()], QMatrix::from_ints(&[&[2]]), QMatrix::from_ints(&[&[5]])).unwrap();
    let s = enumerate(&g);
    assert_eq!(s.induced_profiles(), vec![(pure(1, 0), pure(1, 0))]);
    assert!(s.all_verified());
}

#[test]
fn coordination_game_has_three() {
    let m = QMatrix::from_ints(&[&[2, 0], &[0, 1]]);
    let g = Game::full_monitoring(vec!["a".into(), "b".into()], vec!["x".into(), "y".into()], m.clone(), m).unwrap();
    let s = enumerate(&g);
    let got = s.induced_profiles();
    assert_eq!(got.len(), 3);
    assert!(got.contains(&(q(&[(1, 3), (2, 3)]), q(&[(1, 3), (2, 3)]))));
}

#[test]
fn degenerate_game_needs_perturbation_flag() {
    let g = two_signal_game();
    assert!(matches!(solve(&g, &SolveOptions::default()), Err(SolveError::Degenerate(..))));
    let opts = SolveOptions {
        mode: SolveMode::LhAllDrops,
        lex_perturb: true,
    };
    let s = solve(&g, &opts).unwrap();
    assert!(!s.equilibria.is_empty());
    assert!(s.all_verified());
}

#[test]
fn random_scalar_games_walk_to_verified_endpoints() {
    let mut checked = 0;
    for seed in 0..20 {
        let g = random_game(seed, 2, 3, SignalProfile::ScalarPooling);
        let opts = SolveOptions {
            mode: SolveMode::LhAllDrops,
            lex_perturb: false,
        };
        let Ok(s) = solve(&g, &opts) else { continue };
        checked += 1;
        assert!(s.all_verified(), "seed {seed}");
        let e = enumerate(&g);
        assert_eq!(e.equilibria.len() % 2, 1, "seed {seed}");
        for end in &s.equilibria {
            assert!(e.equilibria.iter().any(|x| x.vertex == end.vertex));
        }
    }
    assert!(checked >= 15);
}

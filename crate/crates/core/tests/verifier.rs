use num_traits::Zero;
use pmnash::exact::*;
use pmnash::game::*;
use pmnash::verify::*;
use proptest::prelude::*;

fn q(xs: &[(i64, i64)]) -> QVector {
    QVector::new(xs.iter().map(|&(p, d)| rat(p, d)).collect())
}

fn zero() -> Rational {
    Rational::zero()
}

#[test]
fn pure_pooled_equilibrium_passes() {
    let g = pooled_signal_game();
    let c = check_equilibrium(&g, &QVector::unit(2, 0), &QVector::unit(3, 0), &zero());
    assert!(c.pass);
    assert_eq!(c.player1.maxmin, int(1));
    assert_eq!(c.player1.slack, zero());
}

#[test]
fn auxiliary_mixed_equilibrium_is_rejected_for_player_one() {
    let g = pooled_signal_game();
    let c = check_equilibrium(&g, &q(&[(2, 3), (1, 3)]), &q(&[(1, 2), (1, 2), (0, 1)]), &zero());
    assert!(!c.pass);
    assert!(!c.player1.pass);
    assert!(c.player2.pass);
    assert_eq!(c.player1.maxmin, rat(1, 2));
    assert_eq!(c.player1.achieved, rat(1, 3));
    assert_eq!(c.player1.slack, rat(1, 6));
    // a tolerance of the slack accepts it
    assert!(check_equilibrium(&g, &q(&[(2, 3), (1, 3)]), &q(&[(1, 2), (1, 2), (0, 1)]), &rat(1, 6)).pass);
}

#[test]
fn coordination_pure_profile_passes() {
    let m = QMatrix::from_ints(&[&[1, 0], &[0, 1]]);
    let g = Game::full_monitoring(vec!["a".into(), "b".into()], vec!["x".into(), "y".into()], m.clone(), m).unwrap();
    assert!(check_equilibrium(&g, &QVector::unit(2, 0), &QVector::unit(2, 0), &zero()).pass);
    assert!(!check_equilibrium(&g, &QVector::unit(2, 0), &QVector::unit(2, 1), &zero()).pass);
}

#[test]
fn matching_pennies_cross_validates() {
    let u = QMatrix::from_ints(&[&[1, -1], &[-1, 1]]);
    let v = QMatrix::from_ints(&[&[-1, 1], &[1, -1]]);
    let g = Game::full_monitoring(vec!["H".into(), "T".into()], vec!["H".into(), "T".into()], u, v).unwrap();
    let r = cross_validate(&g).unwrap();
    assert!(r.agrees());
    assert_eq!(r.oracle, vec![(q(&[(1, 2), (1, 2)]), q(&[(1, 2), (1, 2)]))]);
}

#[test]
fn pooled_payoffs_under_full_monitoring_differ() {
    let g = pooled_signal_game();
    let full = g
        .with_signals(SignalStructure::full(Player::One, 2, 3), SignalStructure::full(Player::Two, 2, 3))
        .unwrap();
    let r = cross_validate(&full).unwrap();
    assert!(r.agrees());
    // seeing everything, player 2's mix goes back to 1/2 L + 1/2 C
    assert_eq!(r.oracle.len(), 3);
    assert!(r.oracle.contains(&(q(&[(2, 3), (1, 3)]), q(&[(1, 2), (1, 2), (0, 1)]))));
    assert!(!r.oracle.contains(&(q(&[(2, 3), (1, 3)]), q(&[(5, 6), (1, 6), (0, 1)]))));
}

#[test]
fn random_game_is_reproducible() {
    let a = random_game(1, 2, 2, SignalProfile::Full);
    assert_eq!(a, random_game(1, 2, 2, SignalProfile::Full));
    assert_ne!(a, random_game(2, 2, 2, SignalProfile::Full));
    let golden: GameFile = serde_json::from_str(include_str!("golden/random_seed1_2x2_full.json")).unwrap();
    assert_eq!(golden.to_game().unwrap(), a);
}

#[test]
fn scalar_profile_pools_per_column() {
    let g = random_game(3, 2, 3, SignalProfile::ScalarPooling);
    let s = g.signals(Player::One);
    assert_eq!(s.dim(), 1);
    for b in 0..3 {
        assert_eq!(s.message(0, b), s.message(1, b));
    }
}

#[test]
fn degeneracy_detector() {
    let tie = QMatrix::from_ints(&[&[1, 1], &[0, 2]]);
    assert!(is_degenerate(&QMatrix::from_ints(&[&[1, 0], &[0, 1]]), &tie));
    assert!(!is_degenerate(&QMatrix::from_ints(&[&[1, 0], &[0, 1]]), &QMatrix::from_ints(&[&[2, 0], &[0, 1]])));
}

/// Classical best-reply test under full monitoring.
fn textbook(g: &Game, x: &QVector, y: &QVector) -> bool {
    let uy = g.u().mul_vec(y);
    let xv = g.v().left_mul_vec(x);
    let best1 = uy.iter().max().unwrap().clone();
    let best2 = xv.iter().max().unwrap().clone();
    x.dot(&uy) == best1 && y.dot(&xv) == best2
}

fn mixture(n: usize) -> impl Strategy<Value = QVector> {
    proptest::collection::vec(0i64..=3, n).prop_map(move |w| {
        let s: i64 = w.iter().sum();
        if s == 0 {
            QVector::unit(n, 0)
        } else {
            QVector::new(w.into_iter().map(|x| rat(x, s)).collect())
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn full_monitoring_matches_textbook(seed in 0u64..500, x in mixture(3), y in mixture(3)) {
        let g = random_game(seed, 3, 3, SignalProfile::Full);
        let c = check_equilibrium(&g, &x, &y, &zero());
        prop_assert_eq!(c.pass, textbook(&g, &x, &y));
    }

    #[test]
    fn verdicts_survive_relabeling(seed in 0u64..500, x in mixture(2), y in mixture(3), flip in any::<bool>()) {
        let g = random_game(seed, 2, 3, SignalProfile::ScalarPooling);
        let (p1, p2): (Vec<usize>, Vec<usize>) = if flip { (vec![1, 0], vec![2, 0, 1]) } else { (vec![0, 1], vec![1, 2, 0]) };
        let h = g.permuted(&p1, &p2);
        let px = QVector::new(p1.iter().map(|&i| x[i].clone()).collect());
        let py = QVector::new(p2.iter().map(|&j| y[j].clone()).collect());
        let a = check_equilibrium(&g, &x, &y, &zero());
        let b = check_equilibrium(&h, &px, &py, &zero());
        prop_assert_eq!(a.pass, b.pass);
        prop_assert_eq!(a.player1.maxmin, b.player1.maxmin);
        prop_assert_eq!(a.player2.achieved, b.player2.achieved);
    }

    #[test]
    fn pipeline_equilibria_verify(seed in 0u64..200) {
        let g = random_game(seed, 2, 3, SignalProfile::ScalarPooling);
        if let Ok(s) = pmnash::lh::solve(&g, &Default::default()) {
            prop_assert!(s.all_verified());
            prop_assert_eq!(s.equilibria.len() % 2, 1);
        }
    }
}

use pmnash::exact::*;
use pmnash::game::*;
use pmnash::polytope::VPolytope;

fn q(xs: &[(i64, i64)]) -> QVector {
    QVector::new(xs.iter().map(|&(p, d)| rat(p, d)).collect())
}

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn pooled_map_repeats_the_scalar_signal() {
    let g = pooled_signal_game();
    let h = maximal_informative(g.signals(Player::One), Player::One);
    let y = q(&[(1, 5), (2, 5), (2, 5)]);
    let s = rat(2, 5) + rat(2, 15);
    assert_eq!(h.apply(&y).as_slice(), &[s.clone(), s]);
}

#[test]
fn full_monitoring_map_is_injective() {
    let g = Game::full_monitoring(labels(&["a", "b"]), labels(&["x", "y", "z"]), QMatrix::zeros(2, 3), QMatrix::zeros(2, 3)).unwrap();
    let h = maximal_informative(g.signals(Player::One), Player::One);
    assert_eq!(h.matrix.rank(), 3);
    let y = q(&[(1, 2), (1, 3), (1, 6)]);
    assert_eq!(fiber(&h, &y).vertices(), &[y.clone()]);
    assert_eq!(phi(&g, &y, Player::One).vertices().len(), 1);
}

#[test]
fn fiber_through_r() {
    let g = pooled_signal_game();
    let h = maximal_informative(g.signals(Player::One), Player::One);
    let f = fiber(&h, &QVector::from_ints(&[0, 0, 1]));
    assert_eq!(f.vertices(), &[QVector::from_ints(&[0, 0, 1]), q(&[(2, 3), (1, 3), (0, 1)])]);
    let f = fiber(&h, &q(&[(1, 2), (1, 2), (0, 1)]));
    assert_eq!(f.vertices(), &[q(&[(0, 1), (1, 4), (3, 4)]), q(&[(1, 2), (1, 2), (0, 1)])]);
}

#[test]
fn phi_of_even_lc_mix() {
    let g = pooled_signal_game();
    let u = phi(&g, &q(&[(1, 2), (1, 2), (0, 1)]), Player::One);
    assert_eq!(u.vertices(), &[QVector::from_ints(&[0, 1]), q(&[(1, 2), (1, 2)])]);
    let r = maxmin_best_reply(&u.set, 2);
    assert_eq!(r.value, rat(1, 2));
    // optimal face is x_T ≤ 1/2, pure T only gets 0
    assert_eq!(r.argmax.vertices(), &[QVector::from_ints(&[0, 1]), q(&[(1, 2), (1, 2)])]);
    assert_eq!(u.worst(&QVector::from_ints(&[1, 0])), int(0));
}

#[test]
fn phi_of_r_and_its_maxmin() {
    let g = pooled_signal_game();
    let u = phi(&g, &QVector::from_ints(&[0, 0, 1]), Player::One);
    assert_eq!(u.vertices(), &[QVector::from_ints(&[0, 1]), q(&[(2, 3), (1, 3)])]);
    let r = maxmin_best_reply(&u.set, 2);
    assert_eq!(r.value, rat(1, 2));
    assert_eq!(r.argmax.vertices(), &[q(&[(1, 2), (1, 2)])]);
}

#[test]
fn singleton_maxmin_is_plain_best_reply() {
    let r = maxmin_best_reply(&VPolytope::point(QVector::from_ints(&[1, 0])), 2);
    assert_eq!(r.value, int(1));
    assert_eq!(r.argmax.vertices(), &[QVector::from_ints(&[1, 0])]);
}

#[test]
fn balanced_signal_prefers_b() {
    let g = two_signal_game();
    // α = β = 1/2
    let y = q(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
    let u = phi(&g, &y, Player::One);
    let r = maxmin_best_reply(&u.set, 2);
    assert_eq!(r.value, int(3));
    assert!(r.argmax.contains(&QVector::from_ints(&[0, 1])));
    assert_eq!(u.vertices(), &[q(&[(2, 1), (3, 1)]), q(&[(4, 1), (3, 1)])]);
}

#[test]
fn aliased_columns_are_rejected_with_witness() {
    let g = aliased_signal_game();
    let h = maximal_informative(g.signals(Player::One), Player::One);
    let a = q(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
    let b = q(&[(0, 1), (0, 1), (1, 2), (1, 2)]);
    assert_eq!(h.apply(&a), h.apply(&b));
    match semi_standard_check(&g, Player::One) {
        SemiStandard::Reject { witness, .. } => {
            let mut got = [witness.0.clone(), witness.1.clone()];
            got.sort();
            let mut want = [a, b];
            want.sort();
            assert_eq!(got, want);
        }
        other => panic!("accepted: {other:?}"),
    }
}

#[test]
fn full_monitoring_is_semi_standard_with_singletons() {
    let g = Game::full_monitoring(labels(&["a", "b"]), labels(&["x", "y"]), QMatrix::zeros(2, 2), QMatrix::zeros(2, 2)).unwrap();
    let s = semi_standard_check(&g, Player::One);
    assert!(s.is_accepted());
    assert_eq!(s.partition().cells, vec![vec![0], vec![1]]);
}

#[test]
fn two_cell_structure_is_semi_standard() {
    let e1 = QVector::from_ints(&[1, 0]);
    let e2 = QVector::from_ints(&[0, 1]);
    let row = vec![e1.clone(), e1, e2.clone(), e2];
    let sig = SignalStructure::new(2, vec![row.clone(), row]).unwrap();
    let g = Game::new(
        labels(&["a", "b"]),
        labels(&["w", "x", "y", "z"]),
        QMatrix::zeros(2, 4),
        QMatrix::zeros(2, 4),
        sig,
        SignalStructure::full(Player::Two, 2, 4),
    )
    .unwrap();
    let s = semi_standard_check(&g, Player::One);
    assert!(s.is_accepted());
    assert_eq!(s.partition().cells, vec![vec![0, 1], vec![2, 3]]);
}

#[test]
fn pooled_auxiliary_table() {
    let g = pooled_signal_game();
    let x = vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1]), q(&[(1, 2), (1, 2)])];
    let y = vec![QVector::from_ints(&[1, 0, 0]), QVector::from_ints(&[0, 1, 0]), QVector::from_ints(&[0, 0, 1])];
    let r = build_auxiliary_game(&g, labels(&["T", "B", "M"]), x, labels(&["L", "C", "R"]), y);
    let u = QMatrix::from_rows(
        vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), rat(1, 3)],
            vec![rat(1, 2), rat(1, 2), rat(1, 2)],
        ],
        3,
    )
    .unwrap();
    let v = QMatrix::from_rows(
        vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(2), int(0)],
            vec![rat(1, 2), int(1), int(0)],
        ],
        3,
    )
    .unwrap();
    assert_eq!(r.u, u);
    assert_eq!(r.v, v);
    assert!(!r.equivalence_guaranteed);
}

#[test]
fn full_monitoring_auxiliary_is_the_game() {
    let u = QMatrix::from_ints(&[&[3, 0], &[5, 1]]);
    let v = QMatrix::from_ints(&[&[3, 5], &[0, 1]]);
    let g = Game::full_monitoring(labels(&["C", "D"]), labels(&["C", "D"]), u.clone(), v.clone()).unwrap();
    let e = |i| QVector::unit(2, i);
    let r = build_auxiliary_game(&g, labels(&["C", "D"]), vec![e(0), e(1)], labels(&["C", "D"]), vec![e(0), e(1)]);
    assert_eq!(r.u, u);
    assert_eq!(r.v, v);
    assert!(r.equivalence_guaranteed);
}

#[test]
fn game_file_round_trip() {
    let g = pooled_signal_game();
    let f = GameFile::from_game(&g);
    let text = serde_json::to_string(&f).unwrap();
    let back: GameFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_game().unwrap(), g);
    assert!(text.contains("\"1/3\""));
    assert!(text.contains("\"full\""));
}

#[test]
fn truncated_row_is_reported() {
    let text = r#"{"actions1":["T","B"],"actions2":["L","C","R"],
        "u":[["1","0","0"],["0","1"]],"v":[["1","0","0"],["0","2","0"]],
        "signals1":"full","signals2":"full"}"#;
    let f: GameFile = serde_json::from_str(text).unwrap();
    let e = f.to_game().unwrap_err().to_string();
    assert!(e.contains("u[1]"), "{e}");
}

#[test]
fn bad_rational_entry_is_reported() {
    let text = r#"{"actions1":["T"],"actions2":["L"],"u":[["1/0"]],"v":[["0"]],"signals1":"full","signals2":"full"}"#;
    let f: GameFile = serde_json::from_str(text).unwrap();
    let e = f.to_game().unwrap_err().to_string();
    assert!(e.contains("u[0][0]"), "{e}");
}

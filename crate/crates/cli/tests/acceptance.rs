//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion does.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmnash::polytope::chamber_complex;
use pmnash::exact::{int, rat, QMatrix, QVector, Rational};
use pmnash::game::{maximal_informative, phi, pooled_signal_game, semi_standard_check, two_signal_game, aliased_signal_game, Game, Player, SemiStandard};
use pmnash::lh::{build_pipeline, induce_profile, solve, solve_pipeline, SolveError, SolveMode, SolveOptions};
use pmnash::polytope::{convex_weights, to_vertices, HPolytope, Halfspace, Polytope, VPolytope};
use pmnash::verify::{check_equilibrium, cross_validate, random_game, SignalProfile};
use pmnash_cli::report::{parse_vec, CheckReport, ReduceReport, SolveReport};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn game_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games").join(name)
}

fn pmnash(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pmnash")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn q(xs: &[(i64, i64)]) -> QVector {
    QVector::new(xs.iter().map(|&(p, d)| rat(p, d)).collect())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn pooled_path() -> String {
    game_file("pooled_signal.json").display().to_string()
}

fn candidate_set() -> Outcome {
    let t = Instant::now();
    let (code, out) = pmnash(&["--json", "solve", &pooled_path()]);
    let took = t.elapsed();
    ensure(code == 0, format!("exit code {code}"))?;
    let r: SolveReport = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let got: Vec<QVector> = r.candidates1.iter().map(|c| parse_vec(&c.action).unwrap()).collect();
    let want = vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1]), q(&[(1, 2), (1, 2)])];
    ensure(got == want, format!("candidates {:?}", r.candidates1.iter().map(|c| &c.mixture).collect::<Vec<_>>()))?;
    ensure(took < Duration::from_secs(5), format!("took {took:?}"))?;
    Ok(format!("candidates {{T, B, 1/2T+1/2B}} in {took:.2?}"))
}

fn auxiliary_table() -> Outcome {
    let (code, out) = pmnash(&["--json", "reduce", &pooled_path()]);
    ensure(code == 0, format!("exit code {code}"))?;
    let r: ReduceReport = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let s = |rows: &[&[&str]]| -> Vec<Vec<String>> { rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect() };
    let u = s(&[&["1", "0", "0"], &["0", "1", "1/3"], &["1/2", "1/2", "1/2"]]);
    let v = s(&[&["1", "0", "0"], &["0", "2", "0"], &["1/2", "1", "0"]]);
    ensure(r.labels1 == ["T", "B", "M"] && r.labels2 == ["L", "C", "R"], format!("labels {:?} {:?}", r.labels1, r.labels2))?;
    ensure(r.u == u, format!("u = {:?}", r.u))?;
    ensure(r.v == v, format!("v = {:?}", r.v))?;
    Ok("3×3 auxiliary table exact".into())
}

fn equilibrium_set() -> Outcome {
    let (code, out) = pmnash(&["--json", "solve", &pooled_path()]);
    ensure(code == 0, format!("exit code {code}"))?;
    let r: SolveReport = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(r.count == 3 && r.odd && r.verified, format!("count {} verified {}", r.count, r.verified))?;
    let profiles: Vec<(QVector, QVector)> =
        r.equilibria.iter().map(|e| (parse_vec(&e.x).unwrap(), parse_vec(&e.y).unwrap())).collect();
    let tl = (QVector::unit(2, 0), QVector::unit(3, 0));
    let bc = (QVector::unit(2, 1), QVector::unit(3, 1));
    ensure(profiles.contains(&tl) && profiles.contains(&bc), "pure equilibria missing")?;
    let mixed: Vec<&(QVector, QVector)> = profiles.iter().filter(|p| **p != tl && **p != bc).collect();
    ensure(mixed.len() == 1 && mixed[0].0 == q(&[(2, 3), (1, 3)]), "mixed x is not (2/3,1/3)")?;
    let g = pooled_signal_game();
    let c = check_equilibrium(&g, &mixed[0].0, &mixed[0].1, &int(0));
    ensure(c.pass, "mixed equilibrium fails the verifier")?;
    Ok(format!("(T,L), (B,C), ((2/3,1/3), ({})); count 3", mixed[0].1.iter().map(pmnash::exact::render).collect::<Vec<_>>().join(",")))
}

fn rejected_profile() -> Outcome {
    let (code, out) = pmnash(&["--json", "check", &pooled_path(), "--x", "2/3,1/3", "--y", "1/2,1/2,0"]);
    ensure(code == 3, format!("exit code {code}"))?;
    let r: CheckReport = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let c = &r.certificate;
    ensure(!c.pass && !c.player1.pass && c.player2.pass, "wrong verdicts")?;
    Ok(format!("player 1 maxmin {} achieved {}", c.player1.maxmin, c.player1.achieved))
}

fn aliased_witness() -> Outcome {
    let g = aliased_signal_game();
    let SemiStandard::Reject { witness, .. } = semi_standard_check(&g, Player::One) else {
        return Err("accepted".into());
    };
    let a = q(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
    let b = q(&[(0, 1), (0, 1), (1, 2), (1, 2)]);
    let w = (witness.0.clone(), witness.1.clone());
    ensure(w == (a.clone(), b.clone()) || w == (b.clone(), a.clone()), format!("witness {w:?}"))?;
    let h = maximal_informative(g.signals(Player::One), Player::One);
    ensure(h.apply(&a) == h.apply(&b), "witness images differ")?;
    let (code, _) = pmnash(&["reduce", &game_file("aliased_signal.json").display().to_string()]);
    ensure(code == 0, format!("reduce exit code {code}"))?;
    Ok("rejected for player 1; witness (b1+b2)/2, (b3+b4)/2".into())
}

fn slab(n: usize, cuts: &[(QVector, Rational)]) -> Polytope {
    let mut h = HPolytope::simplex(n);
    for (a, c) in cuts {
        h.push_ineq(Halfspace::new(a.clone(), c.clone()));
    }
    Polytope::from_h(&h).unwrap()
}

fn split_regions() -> Outcome {
    let p = build_pipeline(&two_signal_game());
    let rs = &p.regions1;
    ensure(rs.nonconvex == ["T"], format!("non-convex {:?}", rs.nonconvex))?;
    ensure(rs.labels() == ["T1", "T2", "B"], format!("labels {:?}", rs.labels()))?;
    let alpha = QVector::from_ints(&[0, 0, 1, 1]);
    let beta = QVector::from_ints(&[0, 1, 0, 1]);
    let quarter = rat(1, 4);
    let yb = slab(4, &[(alpha.neg(), -quarter.clone()), (beta.neg(), -quarter.clone())]);
    ensure(rs.atom("B").unwrap().cells == vec![yb], "Y_B differs")?;
    let mut got = vec![rs.atom("T1").unwrap().cells.clone(), rs.atom("T2").unwrap().cells.clone()];
    got.sort();
    let mut want = vec![
        vec![slab(4, &[(alpha.clone(), quarter.clone()), (alpha.sub(&beta), int(0))])],
        vec![slab(4, &[(beta.clone(), quarter.clone()), (beta.sub(&alpha), int(0))])],
    ];
    want.sort();
    ensure(got == want, "T pieces differ")?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let w: Vec<i64> = (0..3).map(|_| rng.gen_range(1..=9)).collect();
        let s: i64 = w.iter().sum();
        let lx: Vec<Rational> = w.iter().map(|&x| rat(x, s)).collect();
        let x = induce_profile(&lx, &rs.actions());
        ensure(x[0] == &lx[0] + &lx[1] && x[1] == lx[2], format!("weight law fails at {lx:?}"))?;
    }
    Ok("Y_B, T1/T2 exact; weight law on 10 points".into())
}

/// First `want` seeds whose pipeline passes nondegeneracy.
fn nondegenerate_seeds(want: usize, rows: usize, cols: usize, profile: SignalProfile) -> Vec<(u64, Game)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < want {
        let g = random_game(seed, rows, cols, profile.clone());
        if build_pipeline(&g).nondegeneracy.passed() {
            out.push((seed, g));
        }
        seed += 1;
    }
    out
}

fn cross_validation(games: &[(u64, Game)]) -> Outcome {
    let t = Instant::now();
    let mut mismatches = Vec::new();
    for (seed, g) in games {
        match cross_validate(g) {
            Ok(r) if r.agrees() => {}
            Ok(_) => mismatches.push(*seed),
            Err(e) => return Err(format!("seed {seed}: {e}")),
        }
    }
    let took = t.elapsed();
    ensure(mismatches.is_empty(), format!("mismatches at seeds {mismatches:?}"))?;
    ensure(took < Duration::from_secs(60), format!("took {took:?}"))?;
    let last = games.last().map(|g| g.0).unwrap_or(0);
    Ok(format!("{} games (seeds 0..={last}), 0 mismatches in {took:.2?}", games.len()))
}

fn oddness() -> Outcome {
    let games = nondegenerate_seeds(50, 2, 3, SignalProfile::ScalarPooling);
    for (seed, g) in &games {
        let s = solve(g, &SolveOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(s.equilibria.len() % 2 == 1, format!("seed {seed}: {} points", s.equilibria.len()))?;
    }
    let last = games.last().unwrap().0;
    Ok(format!("50 games (seeds 0..={last}), all odd"))
}

fn lh_soundness(games: &[(u64, Game)]) -> Outcome {
    let all = SolveOptions {
        mode: SolveMode::LhAllDrops,
        lex_perturb: false,
    };
    let mut paths = 0;
    let mut runs: Vec<(String, Game)> = vec![("pooled".into(), pooled_signal_game())];
    runs.extend(games.iter().map(|(s, g)| (format!("seed {s}"), g.clone())));
    for (name, g) in &runs {
        let s = match solve_pipeline(build_pipeline(g), &all) {
            Ok(s) => s,
            Err(SolveError::Degenerate(..)) => return Err(format!("{name}: degenerate")),
            Err(e) => return Err(format!("{name}: {e}")),
        };
        paths += s.paths.len();
        for e in &s.equilibria {
            ensure(check_equilibrium(g, &e.x, &e.y, &int(0)).pass, format!("{name}: endpoint {} fails", e.labels))?;
        }
    }
    Ok(format!("{paths} paths over {} games, every endpoint verified", runs.len()))
}

fn geometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..20 {
        let n = rng.gen_range(4..9);
        let pts: Vec<QVector> = (0..n)
            .map(|_| QVector::new((0..3).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()))
            .collect();
        let v = VPolytope::from_points(3, pts.clone());
        for (i, w) in v.vertices().iter().enumerate() {
            let others: Vec<QVector> =
                v.vertices().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
            ensure(others.is_empty() || convex_weights(&others, w).is_none(), format!("polytope {k}: redundant vertex"))?;
        }
        let h = v.to_halfspaces();
        ensure(pts.iter().all(|p| h.contains(p)), format!("polytope {k}: H-form drops a point"))?;
        let back = to_vertices(&h).map_err(|e| format!("polytope {k}: {e}"))?;
        ensure(back.vertices() == v.vertices(), format!("polytope {k}: round trip differs"))?;
    }
    let mut chambers = 0;
    for k in 0..10 {
        let rows = rng.gen_range(1..=2);
        let m: Vec<Vec<Rational>> = (0..rows).map(|_| (0..4).map(|_| int(rng.gen_range(0..=3))).collect()).collect();
        let cc = chamber_complex(&QMatrix::from_rows(m, 4).unwrap(), &HPolytope::simplex(4));
        cc.complex.validate().map_err(|e| format!("map {k}: {e}"))?;
        chambers += cc.len();
    }
    let mut pairs = 0;
    let games = [pooled_signal_game(), two_signal_game(), random_game(0, 2, 3, SignalProfile::ScalarPooling)];
    while pairs < 50 {
        let g = &games[pairs % games.len()];
        let map = maximal_informative(g.signals(Player::One), Player::One);
        let n = g.actions(Player::Two).len();
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=9)).collect();
        let s: i64 = w.iter().sum();
        let y = QVector::new(w.iter().map(|&x| rat(x, s)).collect());
        let f = phi(g, &y, Player::One);
        let fv = f.fiber.vertices();
        let lw: Vec<i64> = (0..fv.len()).map(|_| rng.gen_range(1..=9)).collect();
        let t: i64 = lw.iter().sum();
        let y2 = QVector::combination(&lw.iter().map(|&x| rat(x, t)).collect::<Vec<_>>(), fv);
        ensure(map.apply(&y) == map.apply(&y2), "pair leaves the fiber")?;
        ensure(phi(g, &y2, Player::One).set == f.set, format!("Φ differs on pair {pairs}"))?;
        pairs += 1;
    }
    Ok(format!("20 round trips, 10 complexes ({chambers} chambers) valid, {pairs} fiber pairs"))
}

#[test]
fn acceptance() {
    let full = nondegenerate_seeds(100, 3, 3, SignalProfile::Full);
    let criteria: Vec<Criterion> = vec![
        ("candidate set", Box::new(candidate_set)),
        ("auxiliary game table", Box::new(auxiliary_table)),
        ("equilibrium set", Box::new(equilibrium_set)),
        ("rejected profile", Box::new(rejected_profile)),
        ("semi-standard witness", Box::new(aliased_witness)),
        ("non-convex region split", Box::new(split_regions)),
        ("full-monitoring cross-validation", Box::new(|| cross_validation(&full))),
        ("oddness", Box::new(oddness)),
        ("LH soundness", Box::new(|| lh_soundness(&full))),
        ("geometry invariants", Box::new(geometry)),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let line = match r {
            Ok(msg) => format!("criterion {:>2} PASS  {name}: {msg}\n", i + 1),
            Err(msg) => {
                failed.push(i + 1);
                format!("criterion {:>2} FAIL  {name}: {msg}\n", i + 1)
            }
        };
        std::io::stdout().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

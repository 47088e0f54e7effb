use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, rat, QMatrix, QVector, Rational};
use crate::game::{Game, Player, SignalStructure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignalProfile {
    Full,
    /// Each player receives one random scalar per opponent action,
    /// identical across own actions.
    ScalarPooling,
    Custom(SignalStructure, SignalStructure),
}

fn entry(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Reproducible game with single-digit rational payoffs `p/q`.
pub fn random_game(seed: u64, rows: usize, cols: usize, profile: SignalProfile) -> Game {
    assert!(rows >= 1 && cols >= 1, "sizes must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mat = |rng: &mut ChaCha8Rng| {
        let data = (0..rows).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect();
        QMatrix::from_rows(data, cols).expect("shape")
    };
    let u = mat(&mut rng);
    let v = mat(&mut rng);
    let (s1, s2) = match profile {
        SignalProfile::Full => (SignalStructure::full(Player::One, rows, cols), SignalStructure::full(Player::Two, rows, cols)),
        SignalProfile::ScalarPooling => {
            let h: Vec<Rational> = (0..cols).map(|_| int(rng.gen_range(0..=9))).collect();
            let m: Vec<Rational> = (0..rows).map(|_| int(rng.gen_range(0..=9))).collect();
            let s1 = (0..rows)
                .map(|_| h.iter().map(|q| QVector::new(vec![q.clone()])).collect())
                .collect();
            let s2 = (0..rows)
                .map(|a| (0..cols).map(|_| QVector::new(vec![m[a].clone()])).collect())
                .collect();
            (
                SignalStructure::new(1, s1).expect("shape"),
                SignalStructure::new(1, s2).expect("shape"),
            )
        }
        SignalProfile::Custom(s1, s2) => (s1, s2),
    };
    let a1 = (1..=rows).map(|i| format!("a{i}")).collect();
    let a2 = (1..=cols).map(|j| format!("b{j}")).collect();
    Game::new(a1, a2, u, v, s1, s2).expect("valid random game")
}

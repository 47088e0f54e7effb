use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::exact::{lp_solve, solve_linear_system, Direction, LpBuilder, QMatrix, QVector, Rational, RowSense};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportEnumeration {
    pub equilibria: Vec<(QVector, QVector)>,
    /// Some mixed action of support size `k` has more than `k` pure best replies.
    pub degenerate: bool,
}

/// Mixture on `support` making every row in `rows` indifferent under `m`:
/// unknowns `(z_support, w)` with `(m z)_i = w` and `Σ z = 1`.
fn indifference(m: &QMatrix, rows: &[usize], support: &[usize], n: usize) -> Result<Option<(QVector, Rational)>, ()> {
    let k = support.len();
    let mut a = Vec::with_capacity(k + 1);
    let mut b = Vec::with_capacity(k + 1);
    for &i in rows {
        let mut r: Vec<Rational> = support.iter().map(|&j| m.get(i, j).clone()).collect();
        r.push(-Rational::one());
        a.push(r);
        b.push(Rational::zero());
    }
    let mut r = vec![Rational::one(); k];
    r.push(Rational::zero());
    a.push(r);
    b.push(Rational::one());
    let sol = match solve_linear_system(&QMatrix::from_rows(a, k + 1).expect("square"), &b) {
        Some(s) => s,
        None => return Ok(None),
    };
    if !sol.is_unique() {
        return Err(());
    }
    let mut z = vec![Rational::zero(); n];
    for (t, &j) in support.iter().enumerate() {
        if sol.particular[t].is_negative() {
            return Ok(None);
        }
        z[j] = sol.particular[t].clone();
    }
    Ok(Some((QVector::new(z), sol.particular[k].clone())))
}

/// Is there `x` with support inside `rows` against which every column of
/// `cols` is a best reply under `m` (rows = own actions)?
fn ties_on(m: &QMatrix, rows: &[usize], cols: &[usize]) -> bool {
    let (na, nb) = (m.rows(), m.cols());
    let mut b = LpBuilder::new(Direction::Maximize, vec![Rational::zero(); na + 1]).free(na);
    for j in 0..nb {
        let mut r: Vec<Rational> = (0..na).map(|i| m.get(i, j).clone()).collect();
        r.push(-Rational::one());
        let sense = if cols.contains(&j) { RowSense::Eq } else { RowSense::Le };
        b.push_row(r, sense, Rational::zero());
    }
    for i in (0..na).filter(|i| !rows.contains(i)) {
        let mut r = vec![Rational::zero(); na + 1];
        r[i] = Rational::one();
        b.push_row(r, RowSense::Eq, Rational::zero());
    }
    let mut r = vec![Rational::one(); na];
    r.push(Rational::zero());
    b.push_row(r, RowSense::Eq, Rational::one());
    !lp_solve(&b.build().expect("well-formed")).is_infeasible()
}

/// The classical condition: no mixed action with support size `k` has
/// more than `k` pure best replies, for either player.
pub fn is_degenerate(u: &QMatrix, v: &QMatrix) -> bool {
    let ut = u.transpose();
    let sides = [(v, u.rows(), u.cols()), (&ut, u.cols(), u.rows())];
    sides.iter().any(|&(m, own, opp)| {
        (1..=own.min(opp.saturating_sub(1))).any(|k| {
            (0..own)
                .combinations(k)
                .any(|i| (0..opp).combinations(k + 1).any(|j| ties_on(m, &i, &j)))
        })
    })
}

/// Classical Nash equilibria of the bimatrix game `(u, v)` by enumerating
/// equal-size support pairs.
pub fn support_enumeration(u: &QMatrix, v: &QMatrix) -> SupportEnumeration {
    let (na, nb) = (u.rows(), u.cols());
    let vt = v.transpose();
    let mut out: Vec<(QVector, QVector)> = Vec::new();
    let mut degenerate = false;
    for k in 1..=na.min(nb) {
        for i in (0..na).combinations(k) {
            for j in (0..nb).combinations(k) {
                // y on J equalizes player 1 over I; x on I equalizes player 2 over J
                let y = match indifference(u, &i, &j, nb) {
                    Ok(Some(y)) => y,
                    Ok(None) => continue,
                    Err(()) => {
                        degenerate = true;
                        continue;
                    }
                };
                let x = match indifference(&vt, &j, &i, na) {
                    Ok(Some(x)) => x,
                    Ok(None) => continue,
                    Err(()) => {
                        degenerate = true;
                        continue;
                    }
                };
                let (y, w) = y;
                let (x, z) = x;
                let uy = u.mul_vec(&y);
                let xv = vt.mul_vec(&x);
                if uy.iter().all(|p| p <= &w) && xv.iter().all(|p| p <= &z) && !out.contains(&(x.clone(), y.clone())) {
                    out.push((x, y));
                }
            }
        }
    }
    out.sort();
    SupportEnumeration {
        equilibria: out,
        degenerate: degenerate || is_degenerate(u, v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn matching_pennies() {
        let u = QMatrix::from_ints(&[&[1, -1], &[-1, 1]]);
        let v = QMatrix::from_ints(&[&[-1, 1], &[1, -1]]);
        let se = support_enumeration(&u, &v);
        let half = QVector::new(vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(se.equilibria, vec![(half.clone(), half)]);
        assert!(!se.degenerate);
    }

    #[test]
    fn coordination_has_three() {
        let u = QMatrix::from_ints(&[&[2, 0], &[0, 1]]);
        let se = support_enumeration(&u, &u);
        assert_eq!(se.equilibria.len(), 3);
    }
}

//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest index enters, lowest basic index
//! leaves on ratio ties), so the method terminates under degeneracy and is
//! fully deterministic. Every optimal outcome carries a dual certificate
//! that can be checked independently with [`LpCertificate::verify`].

use num_traits::{One, Signed, Zero};

use super::linalg::{dot, QMatrix, QVector};
use super::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarBound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBound {
    pub fn nonneg() -> Self {
        VarBound {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        VarBound {
            lower: None,
            upper: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("linear program has no variables")]
    NoVariables,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("variable {0} has lower bound above upper bound")]
    EmptyBound(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    direction: Direction,
    objective: QVector,
    matrix: QMatrix,
    rhs: QVector,
    senses: Vec<RowSense>,
    bounds: Vec<VarBound>,
}

impl LinearProgram {
    pub fn new(
        direction: Direction,
        objective: QVector,
        matrix: QMatrix,
        rhs: QVector,
        senses: Vec<RowSense>,
        bounds: Vec<VarBound>,
    ) -> Result<Self, LpError> {
        let n = objective.dim();
        if n == 0 {
            return Err(LpError::NoVariables);
        }
        if matrix.cols() != n {
            return Err(LpError::Dimension(format!(
                "constraint matrix has {} columns for {} variables",
                matrix.cols(),
                n
            )));
        }
        if matrix.rows() != rhs.dim() || rhs.dim() != senses.len() {
            return Err(LpError::Dimension(format!(
                "{} rows, {} right-hand sides, {} senses",
                matrix.rows(),
                rhs.dim(),
                senses.len()
            )));
        }
        if bounds.len() != n {
            return Err(LpError::Dimension(format!(
                "{} bounds for {} variables",
                bounds.len(),
                n
            )));
        }
        for (j, b) in bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(LpError::EmptyBound(j));
                }
            }
        }
        Ok(LinearProgram {
            direction,
            objective,
            matrix,
            rhs,
            senses,
            bounds,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
    pub fn objective(&self) -> &QVector {
        &self.objective
    }
    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }
    pub fn rhs(&self) -> &QVector {
        &self.rhs
    }
    pub fn senses(&self) -> &[RowSense] {
        &self.senses
    }
    pub fn bounds(&self) -> &[VarBound] {
        &self.bounds
    }
    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if b.lower.as_ref().is_some_and(|l| &x[j] < l) || b.upper.as_ref().is_some_and(|u| &x[j] > u) {
                return false;
            }
        }
        (0..self.matrix.rows()).all(|i| {
            let lhs = dot(self.matrix.row(i), x);
            match self.senses[i] {
                RowSense::Le => lhs <= self.rhs[i],
                RowSense::Eq => lhs == self.rhs[i],
                RowSense::Ge => lhs >= self.rhs[i],
            }
        })
    }
}

/// Incremental construction: variables default to `x >= 0`.
#[derive(Debug, Clone)]
pub struct LpBuilder {
    direction: Direction,
    objective: Vec<Rational>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    senses: Vec<RowSense>,
    bounds: Vec<VarBound>,
}

impl LpBuilder {
    pub fn new(direction: Direction, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpBuilder {
            direction,
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
            senses: Vec::new(),
            bounds: vec![VarBound::nonneg(); n],
        }
    }

    pub fn free(mut self, j: usize) -> Self {
        self.bounds[j] = VarBound::free();
        self
    }

    pub fn bound(mut self, j: usize, lower: Option<Rational>, upper: Option<Rational>) -> Self {
        self.bounds[j] = VarBound { lower, upper };
        self
    }

    pub fn row(mut self, coeffs: Vec<Rational>, sense: RowSense, rhs: Rational) -> Self {
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
        self
    }

    pub fn push_row(&mut self, coeffs: Vec<Rational>, sense: RowSense, rhs: Rational) {
        self.rows.push(coeffs);
        self.senses.push(sense);
        self.rhs.push(rhs);
    }

    pub fn build(self) -> Result<LinearProgram, LpError> {
        let n = self.objective.len();
        let matrix = QMatrix::from_rows(self.rows, n).map_err(|e| LpError::Dimension(e.0))?;
        LinearProgram::new(
            self.direction,
            QVector::new(self.objective),
            matrix,
            QVector::new(self.rhs),
            self.senses,
            self.bounds,
        )
    }
}

/// Dual certificate for the maximization form `max s·cᵀx` where `s = +1`
/// for maximization and `s = -1` for minimization.
///
/// `duals[i]` prices row `i`, `reduced_costs = s·c - Aᵀ duals`, and
/// `value = bᵀ duals + Σ reduced_costs[j]·bound[j]` (bound chosen by the
/// sign of the reduced cost). `value` equals `s` times the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpCertificate {
    pub duals: QVector,
    pub reduced_costs: QVector,
    pub value: Rational,
}

impl LpCertificate {
    /// Checks dual feasibility and that the dual value matches `objective_value`.
    pub fn verify(&self, lp: &LinearProgram, objective_value: &Rational) -> bool {
        let s = sign_of(lp.direction);
        let n = lp.num_vars();
        let m = lp.matrix.rows();
        if self.duals.dim() != m || self.reduced_costs.dim() != n {
            return false;
        }
        for i in 0..m {
            let y = &self.duals[i];
            let ok = match lp.senses[i] {
                RowSense::Le => !y.is_negative(),
                RowSense::Ge => !y.is_positive(),
                RowSense::Eq => true,
            };
            if !ok {
                return false;
            }
        }
        let aty = lp.matrix.left_mul_vec(&self.duals);
        let mut value = dot(&self.duals, &lp.rhs);
        for j in 0..n {
            let r = &lp.objective[j] * &s - &aty[j];
            if r != self.reduced_costs[j] {
                return false;
            }
            if r.is_positive() {
                match &lp.bounds[j].upper {
                    Some(u) => value += &r * u,
                    None => return false,
                }
            } else if r.is_negative() {
                match &lp.bounds[j].lower {
                    Some(l) => value += &r * l,
                    None => return false,
                }
            }
        }
        value == self.value && value == objective_value * &s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        vertex: QVector,
        value: Rational,
        certificate: LpCertificate,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn vertex(&self) -> Option<&QVector> {
        match self {
            LpOutcome::Optimal { vertex, .. } => Some(vertex),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }
}

fn sign_of(d: Direction) -> Rational {
    match d {
        Direction::Maximize => Rational::one(),
        Direction::Minimize => -Rational::one(),
    }
}

/// Internal non-negative variable: contributes `sign * x'` to original variable `orig`.
#[derive(Clone)]
struct Column {
    orig: usize,
    negated: bool,
}

struct Tableau {
    rows: usize,
    cols: usize,
    // rows x (cols + 1); last column is the right-hand side
    t: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> &Rational {
        &self.t[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> &Rational {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let inv = Rational::one() / self.at(r, c);
        for j in 0..w {
            let v = &self.t[r * w + j] * &inv;
            self.t[r * w + j] = v;
        }
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..w {
                let p = &self.t[r * w + j];
                if p.is_zero() {
                    continue;
                }
                let v = &self.t[i * w + j] - &f * p;
                self.t[i * w + j] = v;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for i in 0..self.rows {
            let a = self.at(i, j);
            if !a.is_zero() {
                d -= &cost[self.basis[i]] * a;
            }
        }
        d
    }

    /// Maximizes `cost·x` over columns with `allowed[j]`. Returns false if unbounded.
    fn run(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.cols)
                .filter(|&j| allowed[j] && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solves the linear program exactly.
pub fn lp_solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars();
    let s = sign_of(lp.direction);

    // Map original variables onto non-negative internal columns.
    let mut columns: Vec<Column> = Vec::new();
    let mut offset = vec![Rational::zero(); n];
    let mut extra_upper: Vec<(usize, Rational)> = Vec::new();
    for (j, b) in lp.bounds.iter().enumerate() {
        match (&b.lower, &b.upper) {
            (Some(l), u) => {
                offset[j] = l.clone();
                let k = columns.len();
                columns.push(Column { orig: j, negated: false });
                if let Some(u) = u {
                    extra_upper.push((k, u - l));
                }
            }
            (None, Some(u)) => {
                offset[j] = u.clone();
                columns.push(Column { orig: j, negated: true });
            }
            (None, None) => {
                columns.push(Column { orig: j, negated: false });
                columns.push(Column { orig: j, negated: true });
            }
        }
    }
    let nint = columns.len();

    // Rows over internal columns.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut senses: Vec<RowSense> = Vec::new();
    for i in 0..lp.matrix.rows() {
        let a = lp.matrix.row(i);
        let row: Vec<Rational> = columns
            .iter()
            .map(|c| if c.negated { -a[c.orig].clone() } else { a[c.orig].clone() })
            .collect();
        rows.push(row);
        rhs.push(&lp.rhs[i] - dot(a, &offset));
        senses.push(lp.senses[i]);
    }
    for (k, ub) in &extra_upper {
        let mut row = vec![Rational::zero(); nint];
        row[*k] = Rational::one();
        rows.push(row);
        rhs.push(ub.clone());
        senses.push(RowSense::Le);
    }
    let m = rows.len();
    let nslack = senses.iter().filter(|s| **s != RowSense::Eq).count();
    let cols = nint + nslack + m;
    let art0 = nint + nslack;

    let mut t = vec![Rational::zero(); m * (cols + 1)];
    let mut row_sign = vec![Rational::one(); m];
    let mut slack = nint;
    for i in 0..m {
        let w = cols + 1;
        for j in 0..nint {
            t[i * w + j] = rows[i][j].clone();
        }
        match senses[i] {
            RowSense::Le => {
                t[i * w + slack] = Rational::one();
                slack += 1;
            }
            RowSense::Ge => {
                t[i * w + slack] = -Rational::one();
                slack += 1;
            }
            RowSense::Eq => {}
        }
        t[i * w + cols] = rhs[i].clone();
        if rhs[i].is_negative() {
            row_sign[i] = -Rational::one();
            for j in 0..=cols {
                let v = -t[i * w + j].clone();
                t[i * w + j] = v;
            }
        }
        t[i * w + art0 + i] = Rational::one();
    }
    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        basis: (art0..art0 + m).collect(),
    };

    // Phase 1: maximize -Σ artificials.
    let mut cost1 = vec![Rational::zero(); cols];
    for c in cost1.iter_mut().skip(art0) {
        *c = -Rational::one();
    }
    let all = vec![true; cols];
    tab.run(&cost1, &all);
    let infeas: Rational = (0..m)
        .filter(|&i| tab.basis[i] >= art0)
        .fold(Rational::zero(), |acc, i| acc + tab.rhs(i));
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if tab.basis[i] < art0 {
            continue;
        }
        if let Some(c) = (0..art0).find(|&j| !tab.at(i, j).is_zero() && !tab.basis.contains(&j)) {
            tab.pivot(i, c);
        }
    }

    // Phase 2.
    let mut cost2 = vec![Rational::zero(); cols];
    for (k, c) in columns.iter().enumerate() {
        let base = &lp.objective[c.orig] * &s;
        cost2[k] = if c.negated { -base } else { base };
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < art0).collect();
    if !tab.run(&cost2, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut xint = vec![Rational::zero(); cols];
    for i in 0..m {
        xint[tab.basis[i]] = tab.rhs(i).clone();
    }
    let mut x = offset.clone();
    for (k, c) in columns.iter().enumerate() {
        if c.negated {
            x[c.orig] -= &xint[k];
        } else {
            x[c.orig] += &xint[k];
        }
    }
    let value = dot(&lp.objective, &x);

    // Duals y = c_B B⁻¹; the artificial columns hold B⁻¹.
    let mut yint = vec![Rational::zero(); m];
    for (r, yr) in yint.iter_mut().enumerate() {
        let mut acc = Rational::zero();
        for i in 0..m {
            let b = tab.at(i, art0 + r);
            if !b.is_zero() {
                acc += &cost2[tab.basis[i]] * b;
            }
        }
        *yr = acc * &row_sign[r];
    }
    let duals = QVector::new(yint[..lp.matrix.rows()].to_vec());
    let aty = lp.matrix.left_mul_vec(&duals);
    let reduced: Vec<Rational> = (0..n).map(|j| &lp.objective[j] * &s - &aty[j]).collect();
    let mut dual_value = dot(&duals, &lp.rhs);
    for j in 0..n {
        let r = &reduced[j];
        if r.is_positive() {
            if let Some(u) = &lp.bounds[j].upper {
                dual_value += r * u;
            }
        } else if r.is_negative() {
            if let Some(l) = &lp.bounds[j].lower {
                dual_value += r * l;
            }
        }
    }
    let certificate = LpCertificate {
        duals,
        reduced_costs: QVector::new(reduced),
        value: dual_value,
    };
    debug_assert!(certificate.verify(lp, &value), "dual certificate mismatch");
    LpOutcome::Optimal {
        vertex: QVector::new(x),
        value,
        certificate,
    }
}

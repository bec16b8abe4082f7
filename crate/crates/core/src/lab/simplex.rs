//! Dense two-phase tableau simplex for small linear programs in the form
//! `minimize c·x` subject to linear rows and `x ≥ 0`.

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 200_000;
/// Degenerate pivots in a row before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    /// Sparse `(variable, coefficient)` pairs.
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { objective: vec![0.0; num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Reduced costs; the last entry is minus the objective value.
    z: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                if f.abs() > 0.0 {
                    for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
        let f = self.z[c];
        if f.abs() > 0.0 {
            for (v, &pv) in self.z.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
        }
        self.basis[r] = c;
    }

    fn set_cost(&mut self, cost: &[f64]) {
        self.z = cost.to_vec();
        self.z.push(0.0);
        for i in 0..self.rows.len() {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for (v, &rv) in self.z.iter_mut().zip(&self.rows[i]) {
                    *v -= cb * rv;
                }
            }
        }
    }

    /// Pivots until optimal for the current cost row, never entering a
    /// column with `allowed[c] == false`.
    #[allow(clippy::needless_range_loop)]
    fn optimize(&mut self, allowed: &[bool]) -> Result<()> {
        let mut streak = 0;
        for _ in 0..MAX_PIVOTS {
            let bland = streak >= DEGENERATE_STREAK;
            let mut enter = None;
            let mut best = -EPS;
            for c in 0..self.width {
                if allowed[c] && self.z[c] < best {
                    enter = Some(c);
                    if bland {
                        break;
                    }
                    best = self.z[c];
                }
            }
            let Some(c) = enter else { return Ok(()) };
            let mut leave: Option<usize> = None;
            let mut ratio = f64::INFINITY;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > EPS {
                    let q = self.rhs(i) / a;
                    let better = match leave {
                        None => true,
                        Some(l) => q < ratio - EPS || (q <= ratio + EPS && self.basis[i] < self.basis[l]),
                    };
                    if better {
                        ratio = q;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else { return Err(Error::Unbounded) };
            streak = if ratio.abs() <= EPS { streak + 1 } else { 0 };
            self.pivot(r, c);
        }
        Err(Error::Precondition("simplex pivot limit reached".into()))
    }
}

/// Solves `lp` exactly up to floating tolerance.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars();
    let m = lp.constraints.len();
    // Column layout: structural, then one slack/surplus per inequality,
    // then one artificial per row that needs it.
    let inequalities = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut artificial_rows = Vec::new();
    let mut next_slack = n;
    let mut dense: Vec<(Vec<f64>, Relation, f64)> = Vec::with_capacity(m);
    for con in &lp.constraints {
        let mut row = vec![0.0; n];
        for &(j, a) in &con.coeffs {
            if j >= n {
                return Err(Error::Precondition(format!("constraint uses variable {j} of {n}")));
            }
            row[j] += a;
        }
        let (mut rel, mut rhs) = (con.relation, con.rhs);
        if rhs < 0.0 {
            row.iter_mut().for_each(|a| *a = -*a);
            rhs = -rhs;
            rel = match rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        dense.push((row, rel, rhs));
    }
    let needs_artificial = dense.iter().filter(|d| d.1 != Relation::Le).count();
    let width = n + inequalities + needs_artificial;
    let mut next_artificial = n + inequalities;
    for (i, (row, rel, rhs)) in dense.into_iter().enumerate() {
        let mut full = row;
        full.resize(width + 1, 0.0);
        full[width] = rhs;
        match rel {
            Relation::Le => {
                full[next_slack] = 1.0;
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                full[next_slack] = -1.0;
                next_slack += 1;
                full[next_artificial] = 1.0;
                basis.push(next_artificial);
                artificial_rows.push(i);
                next_artificial += 1;
            }
            Relation::Eq => {
                full[next_artificial] = 1.0;
                basis.push(next_artificial);
                artificial_rows.push(i);
                next_artificial += 1;
            }
        }
        rows.push(full);
    }
    let first_artificial = n + inequalities;
    let mut t = Tableau { rows, z: Vec::new(), basis, width };

    if needs_artificial > 0 {
        let mut phase1 = vec![0.0; width];
        phase1[first_artificial..].iter_mut().for_each(|c| *c = 1.0);
        t.set_cost(&phase1);
        t.optimize(&vec![true; width])?;
        let infeasibility = -t.z[width];
        let scale = 1.0 + lp.constraints.iter().map(|c| c.rhs.abs()).fold(0.0, f64::max);
        if infeasibility > 1e-7 * scale {
            return Err(Error::Infeasible);
        }
        // Drive zero-valued artificials out of the basis; rows where that
        // is impossible are redundant and dropped.
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&c| t.rows[i][c].abs() > EPS) {
                    Some(c) => t.pivot(i, c),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = lp.objective.clone();
    cost.resize(width, 0.0);
    t.set_cost(&cost);
    let allowed: Vec<bool> = (0..width).map(|c| c < first_artificial).collect();
    t.optimize(&allowed)?;
    let mut x = vec![0.0; n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(i).max(0.0);
        }
    }
    let value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { x, value })
}

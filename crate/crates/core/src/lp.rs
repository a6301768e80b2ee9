//! Dense two-phase simplex with Bland's rule. Problems here have at most a
//! few hundred columns and a handful of rows, so a full tableau is fine.

use alloc::vec;
use alloc::vec::Vec;

use crate::numeric::abs;

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-10;
const FEAS_EPS: f64 = 1e-8;

/// `minimize cost·x` subject to `a_eq x = b_eq`, `a_le x ≤ b_le`, `x ≥ 0`.
#[derive(Debug, Clone, Default)]
pub(crate) struct LinearProgram {
    pub cost: Vec<f64>,
    pub a_eq: Vec<Vec<f64>>,
    pub b_eq: Vec<f64>,
    pub a_le: Vec<Vec<f64>>,
    pub b_le: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize, // variable columns, rhs stored separately
    t: Vec<f64>,
    rhs: Vec<f64>,
    obj: Vec<f64>,
    obj_rhs: f64,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.cols + c]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let cols = self.cols;
        let p = self.t[r * cols + c];
        for j in 0..cols {
            self.t[r * cols + j] /= p;
        }
        self.rhs[r] /= p;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * cols + c];
            if f == 0.0 {
                continue;
            }
            for j in 0..cols {
                self.t[i * cols + j] -= f * self.t[r * cols + j];
            }
            self.rhs[i] -= f * self.rhs[r];
        }
        let f = self.obj[c];
        if f != 0.0 {
            for j in 0..cols {
                self.obj[j] -= f * self.t[r * cols + j];
            }
            self.obj_rhs -= f * self.rhs[r];
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the current objective row. Columns with
    /// `allowed[j] == false` never enter. Returns false when unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        let limit = 50 * (self.rows + self.cols) + 1000;
        for _ in 0..limit {
            let entering = (0..self.cols).find(|&j| allowed[j] && self.obj[j] < -COST_EPS);
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, c);
                if a > PIVOT_EPS {
                    let ratio = self.rhs[i] / a;
                    match best {
                        None => best = Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-14
                                || (abs(ratio - br) <= 1e-14 && self.basis[i] < self.basis[bi])
                            {
                                best = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
        true
    }
}

pub(crate) fn minimize(lp: &LinearProgram) -> LpOutcome {
    let n = lp.cost.len();
    let m_eq = lp.a_eq.len();
    let m_le = lp.a_le.len();
    let m = m_eq + m_le;
    let n_slack = m_le;
    let n_art = m;
    let cols = n + n_slack + n_art;

    let mut t = vec![0.0; m * cols];
    let mut rhs = vec![0.0; m];
    for (i, (row, &b)) in lp.a_eq.iter().zip(&lp.b_eq).enumerate() {
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        for (j, &v) in row.iter().enumerate() {
            t[i * cols + j] = sign * v;
        }
        rhs[i] = sign * b;
    }
    for (k, (row, &b)) in lp.a_le.iter().zip(&lp.b_le).enumerate() {
        let i = m_eq + k;
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        for (j, &v) in row.iter().enumerate() {
            t[i * cols + j] = sign * v;
        }
        t[i * cols + n + k] = sign;
        rhs[i] = sign * b;
    }
    for i in 0..m {
        t[i * cols + n + n_slack + i] = 1.0;
    }

    // Phase 1: minimize the sum of artificials.
    let mut obj = vec![0.0; cols];
    let mut obj_rhs = 0.0;
    for i in 0..m {
        for j in 0..n + n_slack {
            obj[j] -= t[i * cols + j];
        }
        obj_rhs -= rhs[i];
    }
    let basis: Vec<usize> = (0..m).map(|i| n + n_slack + i).collect();
    let mut tab = Tableau {
        rows: m,
        cols,
        t,
        rhs,
        obj,
        obj_rhs,
        basis,
    };
    let all = vec![true; cols];
    tab.optimize(&all);
    let scale = 1.0 + lp.b_eq.iter().chain(&lp.b_le).map(|b| abs(*b)).fold(0.0, f64::max);
    if -tab.obj_rhs > FEAS_EPS * scale {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis where possible.
    for r in 0..m {
        if tab.basis[r] >= n + n_slack {
            if let Some(c) = (0..n + n_slack).find(|&c| abs(tab.at(r, c)) > 1e-9) {
                tab.pivot(r, c);
            }
        }
    }

    // Phase 2.
    let mut allowed = vec![true; cols];
    for a in allowed.iter_mut().skip(n + n_slack) {
        *a = false;
    }
    let full_cost = |j: usize| if j < n { lp.cost[j] } else { 0.0 };
    let mut obj = vec![0.0; cols];
    let mut obj_rhs = 0.0;
    for j in 0..cols {
        obj[j] = full_cost(j);
    }
    for r in 0..m {
        let cb = full_cost(tab.basis[r]);
        if cb != 0.0 {
            for j in 0..cols {
                obj[j] -= cb * tab.at(r, j);
            }
            obj_rhs -= cb * tab.rhs[r];
        }
    }
    tab.obj = obj;
    tab.obj_rhs = obj_rhs;
    if !tab.optimize(&allowed) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![0.0; n];
    for r in 0..m {
        let b = tab.basis[r];
        if b < n {
            x[b] = tab.rhs[r].max(0.0);
        }
    }
    let value = x.iter().zip(&lp.cost).map(|(a, c)| a * c).sum();
    LpOutcome::Optimal { x, value }
}

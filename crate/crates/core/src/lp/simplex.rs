use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `min cᵀx` subject to `A x >= b`, `x >= 0`.
    Min,
    /// `max cᵀx` subject to `A x <= b`, `x >= 0`.
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Rational>,
        objective: Rational,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn objective(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { objective, .. } => Some(objective),
            _ => None,
        }
    }
}

struct Tableau {
    /// constraint rows, last entry is the right-hand side
    rows: Vec<Vec<Rational>>,
    /// reduced costs, last entry is minus the objective value
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Sets the reduced-cost row for `cost` given the current basis.
    fn price(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (x, v) in obj.iter_mut().zip(row) {
                *x -= cb * v;
            }
        }
        self.obj = obj;
    }

    /// Bland's rule: lowest-index improving column, lowest-index leaving variable on ties.
    fn run(&mut self, allowed: usize) -> Phase {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Phase::Unbounded,
            }
        }
    }
}

/// Solves a small LP exactly.
///
/// `a` has one row per constraint; `b` has one entry per row; `c` one entry
/// per variable. Panics on inconsistent dimensions.
pub fn simplex_solve(
    c: &[Rational],
    a: &[Vec<Rational>],
    b: &[Rational],
    sense: Sense,
) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m, "rhs length must equal row count");
    assert!(
        a.iter().all(|r| r.len() == n),
        "constraint rows must have one entry per variable"
    );

    // columns: [x (n) | slack (m) | artificial (m)] then rhs
    let slack_sign = match sense {
        Sense::Min => -Rational::one(),
        Sense::Max => Rational::one(),
    };
    let width = n + 2 * m;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width + 1];
        row[..n].clone_from_slice(&a[i]);
        row[n + i] = slack_sign.clone();
        row[width] = b[i].clone();
        if b[i].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        if row[n + i].is_positive() {
            basis.push(n + i);
        } else {
            row[n + m + i] = Rational::one();
            basis.push(n + m + i);
        }
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        width,
    };

    // phase 1: drive the artificial variables to zero
    let mut phase1_cost = vec![Rational::zero(); width];
    for x in phase1_cost[n + m..].iter_mut() {
        *x = Rational::one();
    }
    t.price(&phase1_cost);
    if let Phase::Unbounded = t.run(width) {
        unreachable!("phase one objective is bounded below by zero");
    }
    if t.obj[width].is_negative() {
        return LpOutcome::Infeasible;
    }
    // pivot remaining (zero-valued) artificials out, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n + m {
            match (0..n + m).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // phase 2 over the structural and slack columns only
    let mut cost = vec![Rational::zero(); width];
    for (k, ck) in c.iter().enumerate() {
        cost[k] = match sense {
            Sense::Min => ck.clone(),
            Sense::Max => -ck,
        };
    }
    for row in t.rows.iter_mut() {
        for x in row[n + m..width].iter_mut() {
            *x = Rational::zero();
        }
    }
    t.price(&cost);
    if let Phase::Unbounded = t.run(n + m) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rhs(i).clone();
        }
    }
    let objective: Rational = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, objective }
}

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, ToPrimitive, Zero};

use super::hbl::rank_table;
use super::{simplex_solve, LpOutcome, Sense};
use crate::constraints::ConstraintSet;
use crate::float::{exp, ln};
use crate::{Error, HblProblem, Rational, Result};

/// Absolute tolerance on `ln gamma`.
pub const DEFAULT_GAMMA_TOLERANCE: f64 = 1e-9;
const MAX_ITERATIONS: usize = 5000;
const BISECTION_STEPS: usize = 200;

/// Certified interval for `ln gamma`, with the minimizing exponents.
///
/// `gamma = s_HBL^{-s_HBL} * min { prod_i s_i^{s_i} : s feasible, 1ᵀs = s_HBL }`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaEnclosure {
    pub ln_lower: f64,
    pub ln_upper: f64,
    pub minimizer: Vec<f64>,
    /// Set when the optimal face is a single point.
    pub exact_minimizer: Option<Vec<Rational>>,
    pub iterations: usize,
    pub converged: bool,
}

impl GammaEnclosure {
    pub fn ln_gamma(&self) -> f64 {
        0.5 * (self.ln_lower + self.ln_upper)
    }

    pub fn gamma(&self) -> f64 {
        exp(self.ln_gamma())
    }

    pub fn lower(&self) -> f64 {
        exp(self.ln_lower)
    }

    pub fn upper(&self) -> f64 {
        exp(self.ln_upper)
    }

    pub fn width(&self) -> f64 {
        self.ln_upper - self.ln_lower
    }
}

fn neg_entropy(s: &[f64]) -> f64 {
    s.iter().filter(|&&x| x > 0.0).map(|&x| x * ln(x)).sum()
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The optimal face `{ s >= 0 : A s >= b, 1ᵀs = s_HBL }` with an LP oracle.
struct Face {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
}

impl Face {
    fn argmin(&self, cost: &[Rational]) -> Option<Vec<Rational>> {
        match simplex_solve(cost, &self.a, &self.b, Sense::Min) {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

pub fn compute_gamma(
    p: &HblProblem,
    e: &ConstraintSet,
    s_hbl: &Rational,
) -> Result<GammaEnclosure> {
    compute_gamma_with_tolerance(p, e, s_hbl, DEFAULT_GAMMA_TOLERANCE)
}

/// Minimizes the negative entropy over the optimal face by pairwise Frank-Wolfe
/// with an exact LP oracle. The Frank-Wolfe gap gives the lower end of the
/// enclosure; the iterate gives the upper end.
pub fn compute_gamma_with_tolerance(
    p: &HblProblem,
    e: &ConstraintSet,
    s_hbl: &Rational,
    tol: f64,
) -> Result<GammaEnclosure> {
    let n = p.num_maps();
    let table = rank_table(p, e);
    let mut a: Vec<Vec<Rational>> = table
        .images
        .iter()
        .map(|row| {
            row.iter()
                .map(|&r| Rational::from_integer(r.into()))
                .collect()
        })
        .collect();
    let mut b: Vec<Rational> = table
        .ranks
        .iter()
        .map(|&r| Rational::from_integer(r.into()))
        .collect();
    a.push(vec![Rational::one(); n]);
    b.push(s_hbl.clone());
    a.push(vec![-Rational::one(); n]);
    b.push(-s_hbl);
    let face = Face { a, b };

    let s_ln_s = {
        let s = to_f64(s_hbl);
        s * ln(s)
    };

    // range of every coordinate over the face; the extreme points seed the vertex set
    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    let mut fixed = vec![true; n];
    for i in 0..n {
        let mut cost = vec![Rational::zero(); n];
        cost[i] = Rational::one();
        let lo = face.argmin(&cost).ok_or_else(|| {
            Error::InvalidProblem("s_HBL is not attained by the constraints".into())
        })?;
        cost[i] = -Rational::one();
        let hi = face.argmin(&cost).expect("face is nonempty");
        fixed[i] = lo[i] == hi[i];
        for v in [lo, hi] {
            if !vertices.contains(&v) {
                vertices.push(v);
            }
        }
    }

    if fixed.iter().all(|&f| f) {
        let point = vertices.swap_remove(0);
        let s: Vec<f64> = point.iter().map(to_f64).collect();
        let ln = neg_entropy(&s) - s_ln_s;
        return Ok(GammaEnclosure {
            ln_lower: ln,
            ln_upper: ln,
            minimizer: s,
            exact_minimizer: Some(point),
            iterations: 0,
            converged: true,
        });
    }

    let as_f64 = |v: &[Rational]| v.iter().map(to_f64).collect::<Vec<f64>>();
    let mut active: Vec<(Vec<Rational>, Vec<f64>, f64)> = vertices
        .into_iter()
        .map(|v| {
            let f = as_f64(&v);
            (v, f, 0.0)
        })
        .collect();
    let w = 1.0 / active.len() as f64;
    for v in active.iter_mut() {
        v.2 = w;
    }
    let combine = |active: &[(Vec<Rational>, Vec<f64>, f64)]| {
        let mut s = vec![0.0; n];
        for (_, v, l) in active {
            for (si, vi) in s.iter_mut().zip(v) {
                *si += l * vi;
            }
        }
        s
    };
    let mut s = combine(&active);
    let mut lower = f64::NEG_INFINITY;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let grad: Vec<f64> = (0..n)
            .map(|i| {
                if fixed[i] {
                    0.0
                } else {
                    ln(s[i].max(f64::MIN_POSITIVE)) + 1.0
                }
            })
            .collect();
        let cost: Vec<Rational> = grad
            .iter()
            .map(|&g| Rational::from_float(g).unwrap_or_else(Rational::zero))
            .collect();
        let fw = face.argmin(&cost).expect("face is nonempty");
        let fw_f = as_f64(&fw);
        let dot = |v: &[f64]| grad.iter().zip(v).map(|(g, x)| g * x).sum::<f64>();
        let gap = (dot(&s) - dot(&fw_f)).max(0.0);
        let value = neg_entropy(&s);
        lower = lower.max(value - gap);
        if gap <= tol {
            converged = true;
            break;
        }

        let fw_idx = match active.iter().position(|(v, _, _)| *v == fw) {
            Some(k) => k,
            None => {
                active.push((fw, fw_f, 0.0));
                active.len() - 1
            }
        };
        let away_idx = (0..active.len())
            .filter(|&k| active[k].2 > 0.0)
            .max_by(|&x, &y| dot(&active[x].1).total_cmp(&dot(&active[y].1)))
            .expect("active set is nonempty");
        if away_idx == fw_idx {
            break;
        }
        let dir: Vec<f64> = (0..n)
            .map(|i| active[fw_idx].1[i] - active[away_idx].1[i])
            .collect();
        let t_max = active[away_idx].2;
        let slope = |t: f64| -> f64 {
            (0..n)
                .filter(|&i| !fixed[i] && dir[i] != 0.0)
                .map(|i| dir[i] * (ln((s[i] + t * dir[i]).max(0.0)) + 1.0))
                .sum()
        };
        let t = if slope(t_max) <= 0.0 {
            t_max
        } else {
            let (mut lo, mut hi) = (0.0, t_max);
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if slope(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        active[fw_idx].2 += t;
        active[away_idx].2 -= t;
        if active[away_idx].2 <= 0.0 {
            active[away_idx].2 = 0.0;
        }
        active.retain(|(_, _, l)| *l > 0.0);
        s = combine(&active);
    }

    let upper = neg_entropy(&s);
    Ok(GammaEnclosure {
        ln_lower: lower.min(upper) - s_ln_s,
        ln_upper: upper - s_ln_s,
        minimizer: s,
        exact_minimizer: None,
        iterations,
        converged,
    })
}

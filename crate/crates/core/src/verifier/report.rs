use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{
    check_exact_optimality, cover_report, fit_exponent, hbl_bound_holds, image_counts_of,
    tile_points,
};
use super::{CoverReport, ExponentFit, OptimalityEntry};
use crate::tiler::{plan, tiling_for, AnalysisReport, PlanOptions, TilingResult};
use crate::{Error, HblProblem, Result, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub plan: PlanOptions,
    /// Largest number of points enumerated for any single check.
    pub budget: u64,
    /// Half-width of the window for the cover check; `None` skips it.
    pub cover_radius: Option<u64>,
    /// Allowed distance of fitted exponents from their targets.
    pub fit_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            plan: PlanOptions::default(),
            budget: DEFAULT_BUDGET,
            cover_radius: Some(6),
            fit_tolerance: 0.1,
        }
    }
}

/// Exact counts for one memory value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCounts {
    pub memory: u64,
    pub point_count: u64,
    pub image_counts: Vec<u64>,
    /// `|S| <= prod_i |phi_i(S)|^{s_i}` with the primal optimum `s`.
    pub hbl_bound: bool,
}

/// A fitted exponent and the target it is held to.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedFit {
    pub quantity: String,
    pub fit: ExponentFit,
    pub target: f64,
    /// `|slope - target| <= tol` for the tile size, `slope <= target + tol` for images.
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub samples: Vec<SampleCounts>,
    pub cover: Option<CoverReport>,
    pub exponent_fits: Vec<NamedFit>,
    /// Filled on exactly optimal constructions.
    pub exact_optimality: Vec<OptimalityEntry>,
    /// Checks skipped because they exceeded the budget.
    pub notices: Vec<String>,
}

impl VerificationReport {
    pub fn tile_point_count(&self) -> Option<u64> {
        self.samples.first().map(|s| s.point_count)
    }

    pub fn image_counts(&self) -> Option<&[u64]> {
        self.samples.first().map(|s| s.image_counts.as_slice())
    }

    pub fn cover_ok(&self) -> Option<bool> {
        self.cover.as_ref().map(CoverReport::is_exact)
    }

    /// Every check that ran succeeded.
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.hbl_bound)
            && self.cover_ok().unwrap_or(true)
            && self.exponent_fits.iter().all(|f| f.ok)
            && self.exact_optimality.iter().all(|e| e.within_memory)
    }
}

fn skip_on_budget<T>(r: Result<T>, what: &str, notices: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { needed, budget }) => {
            notices.push(format!(
                "{what} skipped: needs {needed} points, budget is {budget}"
            ));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Plans a tiling for each memory value and checks it by enumeration.
///
/// The returned analysis belongs to the first memory value. The cover check
/// runs on the first tiling; exponent fits need at least three samples.
pub fn verify_plan(
    p: &HblProblem,
    ms: &[u64],
    options: &VerifyOptions,
) -> Result<(AnalysisReport, VerificationReport)> {
    if ms.is_empty() {
        return Err(Error::InvalidProblem("no memory values given".into()));
    }
    let report = plan(p, &options.plan)?;
    let s = report.analysis.primal.s.clone();
    let s_hbl = report.s_hbl().clone();
    let mut notices = Vec::new();

    let tilings: Vec<(u64, TilingResult)> = ms
        .iter()
        .map(|&m| Ok((m, tiling_for(p, &report, m, &options.plan)?)))
        .collect::<Result<_>>()?;

    let mut samples = Vec::new();
    for (m, t) in &tilings {
        let Some(points) = skip_on_budget(
            tile_points(&t.spec, options.budget),
            &format!("M = {m}"),
            &mut notices,
        )?
        else {
            continue;
        };
        let image_counts = image_counts_of(&points, p)?;
        let point_count = points.len() as u64;
        let hbl_bound = hbl_bound_holds(point_count, &image_counts, &s)?;
        samples.push(SampleCounts {
            memory: *m,
            point_count,
            image_counts,
            hbl_bound,
        });
    }

    let cover = match options.cover_radius {
        Some(r) => skip_on_budget(
            cover_report(&tilings[0].1, r, options.budget),
            "cover check",
            &mut notices,
        )?,
        None => None,
    };

    let mut exponent_fits = Vec::new();
    if samples.len() >= 3 {
        let tol = options.fit_tolerance;
        let target = s_hbl.to_f64().unwrap_or(f64::NAN);
        let fit = fit_exponent(
            &samples
                .iter()
                .map(|c| (c.memory, c.point_count))
                .collect::<Vec<_>>(),
        )?;
        let ok = (fit.slope - target).abs() <= tol;
        exponent_fits.push(NamedFit {
            quantity: "points".into(),
            fit,
            target,
            ok,
        });
        for (i, name) in p.names().iter().enumerate() {
            let fit = fit_exponent(
                &samples
                    .iter()
                    .map(|c| (c.memory, c.image_counts[i]))
                    .collect::<Vec<_>>(),
            )?;
            exponent_fits.push(NamedFit {
                quantity: name.clone(),
                fit,
                target: 1.0,
                ok: fit.slope <= 1.0 + tol,
            });
        }
    } else if ms.len() >= 3 {
        notices.push("exponent fits skipped: fewer than 3 samples within budget".into());
    }

    let mut exact_optimality = Vec::new();
    if let (true, Some(gamma)) = (report.construction.is_exact(), &report.gamma) {
        let specs: Vec<_> = tilings.iter().map(|(m, t)| (*m, t.spec.clone())).collect();
        let mut lookup = |m: u64| {
            Ok(specs
                .iter()
                .find(|(k, _)| *k == m)
                .map(|(_, spec)| spec.clone())
                .expect("memory value was planned"))
        };
        let within: Vec<u64> = samples.iter().map(|c| c.memory).collect();
        exact_optimality =
            check_exact_optimality(p, gamma, &s_hbl, &within, &mut lookup, options.budget)?;
    }

    let verification = VerificationReport {
        samples,
        cover,
        exponent_fits,
        exact_optimality,
        notices,
    };
    Ok((report, verification))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiler::Construction;

    #[test]
    fn a1_sweep() {
        let p = HblProblem::from_rows(2, &[&[&[3, -1]], &[&[1, -2]]]).unwrap();
        let (report, v) = verify_plan(&p, &[8, 16, 32, 64], &VerifyOptions::default()).unwrap();
        assert_eq!(report.construction, Construction::RankOne);
        assert_eq!(v.tile_point_count(), Some(16));
        assert_eq!(v.image_counts(), Some(&[4u64, 4][..]));
        assert_eq!(v.cover_ok(), Some(true));
        assert_eq!(v.exact_optimality.len(), 4);
        assert!(v
            .exact_optimality
            .iter()
            .all(|e| (e.ratio - 1.0).abs() < 1e-6));
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn over_budget_is_a_notice() {
        let p = HblProblem::from_rows(2, &[&[&[3, -1]], &[&[1, -2]]]).unwrap();
        let options = VerifyOptions {
            budget: 20,
            cover_radius: None,
            ..Default::default()
        };
        let (_, v) = verify_plan(&p, &[8, 100], &options).unwrap();
        assert_eq!(v.samples.len(), 1);
        assert_eq!(v.notices.len(), 1);
    }
}

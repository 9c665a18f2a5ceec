use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{
    build_tiling_with_budget, exact_construction, flag_decompose, rank_d_minus_one_tiling,
    rank_one_tiling, Construction, FlagDecomposition, TilingResult,
};
use crate::constraints::{generate_constraints, Completeness, ConstraintSet, DEFAULT_MAX_CLOSURE};
use crate::flagify::{flagify_dual, Flag};
use crate::lp::{
    compute_gamma, optimal_split, solve_dual, solve_primal, DualVector, GammaEnclosure,
    PrimalSolution, PrimalStatus,
};
use crate::{Error, HblProblem, Rational, Result, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanOptions {
    /// Cap on the number of subgroups in the constraint closure.
    pub max_closure: usize,
    /// Cap on the number of coset representatives listed.
    pub budget: u64,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            max_closure: DEFAULT_MAX_CLOSURE,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Everything derived from the linear programs, independent of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub constraints: ConstraintSet,
    pub primal: PrimalSolution,
    /// Optimal dual vector as returned by the LP.
    pub dual: DualVector,
    /// The same optimum moved onto a flag.
    pub flag_dual: DualVector,
    pub flag: Flag,
    pub decomposition: FlagDecomposition,
    pub warnings: Vec<String>,
}

impl Analysis {
    pub fn s_hbl(&self) -> &Rational {
        &self.primal.objective
    }
}

/// [`Analysis`] plus the tiling construction that was chosen for it.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub analysis: Analysis,
    pub construction: Construction,
    /// Only computed on an exact path.
    pub gamma: Option<GammaEnclosure>,
    /// Memory split `c_i`; only on an exact path with a unique entropy minimizer.
    pub split: Option<Vec<Rational>>,
}

impl AnalysisReport {
    pub fn s_hbl(&self) -> &Rational {
        self.analysis.s_hbl()
    }
}

/// Constraints, primal and dual optima, and the flag decomposition.
///
/// Fails with [`Error::InfeasiblePrimal`] when some nonzero subgroup is
/// collapsed by every map.
pub fn analyze(p: &HblProblem, max_closure: usize) -> Result<Analysis> {
    let constraints = generate_constraints(p, max_closure);
    let primal = solve_primal(p, &constraints);
    if let PrimalStatus::Infeasible { witness } = &primal.status {
        return Err(Error::InfeasiblePrimal {
            witness: witness.clone(),
        });
    }
    let dual = solve_dual(p, &constraints)?;
    let (flag_dual, flag) = flagify_dual(&dual, p)?;
    let decomposition = flag_decompose(&flag_dual, &flag)?;
    let mut warnings = Vec::new();
    if constraints.completeness == Completeness::Partial {
        let why = match constraints.cap_hit {
            Some(cap) => format!("the subgroup closure was cut off at {cap} members"),
            None => String::from("the subgroup list is not known to be complete"),
        };
        warnings.push(format!("{why}; s_HBL may be underestimated"));
    }
    Ok(Analysis {
        constraints,
        primal,
        dual,
        flag_dual,
        flag,
        decomposition,
        warnings,
    })
}

/// Analysis plus the choice of construction; independent of `M`.
///
/// Problems matching an exactly optimal construction get it, together with
/// `gamma` and the memory split; every other problem gets the flag
/// parallelepiped of its optimal dual vector.
pub fn plan(p: &HblProblem, options: &PlanOptions) -> Result<AnalysisReport> {
    let analysis = analyze(p, options.max_closure)?;
    let Some(construction) = exact_construction(p) else {
        return Ok(AnalysisReport {
            analysis,
            construction: Construction::Flag,
            gamma: None,
            split: None,
        });
    };
    let gamma = compute_gamma(p, &analysis.constraints, analysis.s_hbl())?;
    let split = gamma
        .exact_minimizer
        .as_deref()
        .map(optimal_split)
        .transpose()?;
    Ok(AnalysisReport {
        analysis,
        construction,
        gamma: Some(gamma),
        split,
    })
}

/// The tiling chosen by `report` at memory parameter `m`.
pub fn tiling_for(
    p: &HblProblem,
    report: &AnalysisReport,
    m: u64,
    options: &PlanOptions,
) -> Result<TilingResult> {
    if m == 0 {
        return Err(Error::InvalidTileSpec(
            "memory parameter must be at least 1".into(),
        ));
    }
    match report.construction {
        Construction::RankOne | Construction::RankOneCube => Ok(rank_one_tiling(p, m)?.tiling),
        Construction::RankDMinusOne | Construction::RankDMinusOneSpan => {
            Ok(rank_d_minus_one_tiling(p, m)?.tiling)
        }
        Construction::Flag => {
            let spec = report.analysis.decomposition.tile_spec(m)?;
            build_tiling_with_budget(&spec, options.budget)
        }
    }
}

/// Runs the whole pipeline at memory parameter `m`.
pub fn plan_tiling(
    p: &HblProblem,
    m: u64,
    options: &PlanOptions,
) -> Result<(AnalysisReport, TilingResult)> {
    if m == 0 {
        return Err(Error::InvalidTileSpec(
            "memory parameter must be at least 1".into(),
        ));
    }
    let report = plan(p, options)?;
    let tiling = tiling_for(p, &report, m, options)?;
    Ok((report, tiling))
}

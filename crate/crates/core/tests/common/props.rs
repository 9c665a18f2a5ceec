//! Strategies and checks shared by the property suites and the acceptance run.

use std::collections::BTreeSet;

use hbl_core::constraints::{generate_constraints, Completeness, Method, DEFAULT_MAX_CLOSURE};
use hbl_core::flagify::{extremeness, flagify_dual, flagify_step};
use hbl_core::intlinalg::{image_rank, kernel_basis, snf, IntMatrix, Subgroup};
use hbl_core::lp::{
    eval_dual, simplex_solve, solve_dual, solve_primal, DualVector, LpOutcome, Sense,
};
use hbl_core::tiler::*;
use hbl_core::verifier::*;
use hbl_core::{BigInt, BigUint, HblProblem, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{big, q};

pub const CASES: u32 = 200;

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, rows * cols).prop_map(move |v| {
        IntMatrix::new(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c, 9))
}

fn subgroup(d: usize, range: i64) -> impl Strategy<Value = Subgroup> {
    (0usize..=d)
        .prop_flat_map(move |k| matrix(d, k.max(1), range))
        .prop_map(|m| Subgroup::span(&m))
}

/// Product of random elementary column operations on the identity.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, swap) in ops {
            if swap {
                for r in 0..n {
                    let (a, b) = (m.get(r, i).clone(), m.get(r, j).clone());
                    m.set(r, i, b);
                    m.set(r, j, a);
                }
            } else if i != j {
                for r in 0..n {
                    let v = m.get(r, i) + m.get(r, j) * BigInt::from(k);
                    m.set(r, i, v);
                }
            }
        }
        m
    })
}

fn problem(max_dim: usize, max_maps: usize, range: i64) -> impl Strategy<Value = HblProblem> {
    (1usize..=max_dim, 1usize..=max_maps)
        .prop_flat_map(move |(d, n)| {
            prop::collection::vec((1usize..=d).prop_flat_map(move |r| matrix(r, d, range)), n)
        })
        .prop_map(|maps| {
            let d = maps[0].cols();
            HblProblem::new(d, maps).unwrap()
        })
}

fn rank_all(h: &Subgroup, p: &HblProblem) -> Vec<usize> {
    p.maps().iter().map(|phi| image_rank(phi, h)).collect()
}

/// A random problem with a random positive vector on a few subgroups,
/// scaled down until every `C_i <= 1`.
fn feasible_dual() -> impl Strategy<Value = (HblProblem, DualVector)> {
    (1usize..=4)
        .prop_flat_map(|d| {
            (
                prop::collection::vec((1usize..=d).prop_flat_map(move |r| matrix(r, d, 9)), 1..=3),
                prop::collection::vec((subgroup(d, 3), 1i64..=9), 2..=5),
            )
        })
        .prop_filter_map("needs a scalable vector", |(maps, entries)| {
            let d = maps[0].cols();
            let p = HblProblem::new(d, maps).unwrap();
            let y = DualVector::from_entries(
                entries
                    .into_iter()
                    .filter(|(h, _)| !h.is_trivial())
                    .map(|(h, v)| (h, q(v, 10))),
            );
            let (_, c) = eval_dual(&y, &p);
            let worst = c.into_iter().max()?;
            if worst.is_zero() {
                return None;
            }
            let scale = if worst > Rational::one() {
                worst.recip()
            } else {
                Rational::one()
            };
            let y = DualVector::from_entries(y.iter().map(|(h, v)| (h.clone(), v * &scale)));
            (y.len() >= 2).then_some((p, y))
        })
}

fn det_i128(mut m: Vec<Vec<i128>>) -> i128 {
    // fraction-free elimination
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Optimum over all basic feasible solutions, or `None` if there are none.
fn vertex_optimum(c: &[i64], a: &[Vec<i64>], b: &[i64], sense: Sense) -> Option<Rational> {
    let n = c.len();
    // rows of the full system: the constraints, then x_j >= 0
    let mut rows: Vec<(Vec<i128>, i128)> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| (r.iter().map(|&x| x as i128).collect(), bi as i128))
        .collect();
    for j in 0..n {
        rows.push(((0..n).map(|k| i128::from(k == j)).collect(), 0));
    }
    let feasible = |x: &[Rational]| {
        x.iter().all(|v| !v.is_negative())
            && a.iter().zip(b).all(|(r, &bi)| {
                let lhs: Rational = r
                    .iter()
                    .zip(x)
                    .map(|(&ai, xi)| xi * Rational::from_integer(ai.into()))
                    .sum();
                let rhs = Rational::from_integer(bi.into());
                match sense {
                    Sense::Max => lhs <= rhs,
                    Sense::Min => lhs >= rhs,
                }
            })
    };
    let mut best: Option<Rational> = None;
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let sys: Vec<Vec<i128>> = pick.iter().map(|&i| rows[i].0.clone()).collect();
        let det = det_i128(sys.clone());
        if det != 0 {
            let x: Vec<Rational> = (0..n)
                .map(|j| {
                    let mut s = sys.clone();
                    for (r, &i) in pick.iter().enumerate() {
                        s[r][j] = rows[i].1;
                    }
                    Rational::new(det_i128(s).into(), det.into())
                })
                .collect();
            if feasible(&x) {
                let obj: Rational = c
                    .iter()
                    .zip(&x)
                    .map(|(&ci, xi)| xi * Rational::from_integer(ci.into()))
                    .sum();
                best = Some(match (best, sense) {
                    (None, _) => obj,
                    (Some(b), Sense::Max) => b.max(obj),
                    (Some(b), Sense::Min) => b.min(obj),
                });
            }
        }
        // next n-subset of the rows
        let total = rows.len();
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if pick[i] < total - n + i {
                pick[i] += 1;
                for k in i + 1..n {
                    pick[k] = pick[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn lp_instance() -> impl Strategy<Value = (Vec<i64>, Vec<Vec<i64>>, Vec<i64>, bool)> {
    (1usize..=6, 1usize..=7, any::<bool>()).prop_flat_map(|(n, m, max)| {
        let c = if max {
            prop::collection::vec(-9i64..=9, n).boxed()
        } else {
            prop::collection::vec(0i64..=9, n).boxed()
        };
        (
            c,
            prop::collection::vec(prop::collection::vec(-9i64..=9, n), m),
            prop::collection::vec(-9i64..=9, m),
            1i64..=9,
            Just(max),
        )
            .prop_map(|(c, mut a, mut b, bound, max)| {
                if max {
                    // a box row keeps the maximum finite
                    a.push(vec![1; c.len()]);
                    b.push(bound);
                }
                (c, a, b, max)
            })
    })
}

fn invertible(d: usize) -> impl Strategy<Value = IntMatrix> {
    matrix(d, d, 4).prop_filter("singular", |m| !m.det().is_zero())
}

fn small_spec() -> impl Strategy<Value = TileSpec> {
    (1usize..=3)
        .prop_flat_map(|d| {
            (
                Just(d),
                prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=d),
                prop::collection::vec(prop::sample::select(vec![(1i64, 1i64), (1, 2), (1, 3)]), 2),
                1usize..=3,
                1u64..=9,
            )
        })
        .prop_filter_map("dependent elements", |(d, elems, scal, split, m)| {
            let mut scal: Vec<Rational> = scal.into_iter().map(|(a, b)| q(a, b)).collect();
            scal.sort_by(|a, b| b.cmp(a));
            let split = split.min(elems.len());
            let (first, second) = elems.split_at(split);
            let mut groups = vec![TileGroup::new(
                first.iter().map(|e| big(e)).collect(),
                scal[0].clone(),
            )];
            if !second.is_empty() {
                groups.push(TileGroup::new(
                    second.iter().map(|e| big(e)).collect(),
                    scal[1].clone(),
                ));
            }
            TileSpec::new(d, groups, m).ok()
        })
}

fn reach(v: &[BigInt], spec: &TileSpec) -> u64 {
    let pts = tile_points(spec, 100_000).unwrap();
    pts.iter()
        .map(|p| {
            p.iter()
                .zip(v)
                .map(|(x, y)| (BigInt::from(*x) + y).abs())
                .max()
                .unwrap()
        })
        .max()
        .unwrap()
        .try_into()
        .unwrap()
}

pub fn smith_form_round_trip_cases() -> impl Strategy<Value = IntMatrix> {
    any_matrix()
}

pub fn smith_form_round_trip(input: IntMatrix) -> Result<(), TestCaseError> {
    let a = input;
    let f = snf(&a);
    prop_assert!(f.u.is_unimodular());
    prop_assert!(f.v.is_unimodular());
    // A V = U D
    prop_assert_eq!(a.mul(&f.v), f.u.mul(&f.d));
    for r in 0..f.d.rows() {
        for c in 0..f.d.cols() {
            if r != c {
                prop_assert!(f.d.get(r, c).is_zero());
            }
        }
    }
    let diag = f.diagonal();
    let nonzero = f.invariant_factors();
    prop_assert!(diag[nonzero.len()..].iter().all(Zero::is_zero));
    prop_assert!(nonzero.iter().all(Signed::is_positive));
    for w in nonzero.windows(2) {
        prop_assert!(w[1].is_multiple_of(&w[0]));
    }
    prop_assert_eq!(f.rank(), a.rank());
    Ok(())
}

pub fn rank_is_modular_cases() -> impl Strategy<Value = (Subgroup, Subgroup)> {
    (1usize..=5).prop_flat_map(|d| (subgroup(d, 9), subgroup(d, 9)))
}

pub fn rank_is_modular(input: (Subgroup, Subgroup)) -> Result<(), TestCaseError> {
    let (v, w) = input;
    let sum = v.sum(&w);
    let meet = v.intersect(&w);
    prop_assert_eq!(v.rank() + w.rank(), sum.rank() + meet.rank());
    prop_assert!(sum.contains(&v) && sum.contains(&w));
    prop_assert!(v.contains(&meet) && w.contains(&meet));
    Ok(())
}

pub fn substitution_inequality_cases() -> impl Strategy<Value = (Subgroup, Subgroup, IntMatrix)> {
    (1usize..=5).prop_flat_map(|d| {
        (
            subgroup(d, 9),
            subgroup(d, 9),
            (1usize..=5).prop_flat_map(move |r| matrix(r, d, 9)),
        )
    })
}

pub fn substitution_inequality(
    input: (Subgroup, Subgroup, IntMatrix),
) -> Result<(), TestCaseError> {
    let (v, w, l) = input;
    let r = |h: &Subgroup| image_rank(&l, h) as i64;
    let meet = v.intersect(&w);
    let sum = v.sum(&w);
    prop_assert!(r(&v) >= r(&meet) + r(&sum) - r(&w));
    let id = IntMatrix::identity(v.ambient_dim());
    let ri = |h: &Subgroup| image_rank(&id, h) as i64;
    prop_assert_eq!(ri(&v), ri(&meet) + ri(&sum) - ri(&w));
    Ok(())
}

pub fn canonical_form_ignores_the_basis_cases(
) -> impl Strategy<Value = (IntMatrix, IntMatrix, IntMatrix, IntMatrix)> {
    (1usize..=5).prop_flat_map(|d| {
        (0usize..=d, 0usize..=d).prop_flat_map(move |(a, b)| {
            (
                matrix(d, a.max(1), 9),
                matrix(d, b.max(1), 9),
                unimodular(a.max(1)),
                unimodular(b.max(1)),
            )
        })
    })
}

pub fn canonical_form_ignores_the_basis(
    input: (IntMatrix, IntMatrix, IntMatrix, IntMatrix),
) -> Result<(), TestCaseError> {
    let (v, w, qv, qw) = input;
    let (v2, w2) = (v.mul(&qv), w.mul(&qw));
    let (sv, sw) = (Subgroup::span(&v), Subgroup::span(&w));
    let (sv2, sw2) = (Subgroup::span(&v2), Subgroup::span(&w2));
    prop_assert_eq!(&sv, &sv2);
    prop_assert_eq!(sv.sum(&sw), sv2.sum(&sw2));
    prop_assert_eq!(sv.intersect(&sw), sv2.intersect(&sw2));
    prop_assert_eq!(sw.sum(&sv), sv2.sum(&sw2));
    Ok(())
}

pub fn flagify_keeps_value_and_feasibility_cases() -> impl Strategy<Value = (HblProblem, DualVector)>
{
    feasible_dual()
}

pub fn flagify_keeps_value_and_feasibility(
    input: (HblProblem, DualVector),
) -> Result<(), TestCaseError> {
    let (p, y0) = input;
    let d = p.dim();
    let (val0, mut c_prev) = eval_dual(&y0, &p);
    prop_assert!(c_prev.iter().all(|c| *c <= Rational::one()));
    let mut y = y0.clone();
    let mut w_prev = extremeness(&y, d);
    let mut steps = 0;
    while flagify_step(&mut y) {
        steps += 1;
        prop_assert!(steps < 10_000, "no termination");
        let (val, c) = eval_dual(&y, &p);
        prop_assert_eq!(&val, &val0);
        for (now, before) in c.iter().zip(&c_prev) {
            prop_assert!(now <= before);
        }
        prop_assert!(y.iter().all(|(h, v)| v.is_positive() && !h.is_trivial()));
        let w = extremeness(&y, d);
        prop_assert_eq!(w.cmp_reverse_lex(&w_prev), std::cmp::Ordering::Greater);
        c_prev = c;
        w_prev = w;
    }
    let (yf, flag) = flagify_dual(&y0, &p).unwrap();
    prop_assert_eq!(&yf, &y);
    prop_assert_eq!(flag.len(), yf.len());
    for pair in flag.members().windows(2) {
        prop_assert!(pair[1].contains(&pair[0]) && pair[1].rank() > pair[0].rank());
    }
    let dec = flag_decompose(&yf, &flag).unwrap();
    prop_assert_eq!(dec.weighted_rank(), val0);
    prop_assert!(dec.scalings.windows(2).all(|s| s[0] >= s[1]));
    Ok(())
}

pub fn simplex_matches_vertex_enumeration_cases(
) -> impl Strategy<Value = (Vec<i64>, Vec<Vec<i64>>, Vec<i64>, bool)> {
    lp_instance()
}

pub fn simplex_matches_vertex_enumeration(
    input: (Vec<i64>, Vec<Vec<i64>>, Vec<i64>, bool),
) -> Result<(), TestCaseError> {
    let (c, a, b, max) = input;
    let sense = if max { Sense::Max } else { Sense::Min };
    let r = |v: &[i64]| {
        v.iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect::<Vec<_>>()
    };
    let ar: Vec<Vec<Rational>> = a.iter().map(|row| r(row)).collect();
    let out = simplex_solve(&r(&c), &ar, &r(&b), sense);
    let oracle = vertex_optimum(&c, &a, &b, sense);
    match (&out, &oracle) {
        (LpOutcome::Optimal { objective, x }, Some(best)) => {
            prop_assert_eq!(objective, best);
            prop_assert!(x.iter().all(|v| !v.is_negative()));
        }
        (LpOutcome::Infeasible, None) => {}
        _ => prop_assert!(false, "simplex {:?} vs vertices {:?}", out, oracle),
    }
    Ok(())
}

pub fn closure_is_stable_and_ordered_cases() -> impl Strategy<Value = HblProblem> {
    problem(4, 3, 3)
}

pub fn closure_is_stable_and_ordered(input: HblProblem) -> Result<(), TestCaseError> {
    let p = input;
    let e = generate_constraints(&p, DEFAULT_MAX_CLOSURE);
    let d = p.dim();
    prop_assert!(e.subgroups.contains(&Subgroup::full(d)));
    prop_assert!(e.subgroups.iter().all(|h| !h.is_trivial()));
    prop_assert!(e
        .subgroups
        .windows(2)
        .all(|w| w[0] < w[1] && w[0].rank() <= w[1].rank()));
    if e.method == Method::KernelClosure && e.completeness == Completeness::Complete {
        let set: BTreeSet<&Subgroup> = e.subgroups.iter().collect();
        for a in &e.subgroups {
            for b in &e.subgroups {
                for c in [a.sum(b), a.intersect(b)] {
                    prop_assert!(c.is_trivial() || set.contains(&c), "{} not closed", c);
                }
            }
        }
    }
    prop_assert_eq!(generate_constraints(&p, DEFAULT_MAX_CLOSURE), e);
    Ok(())
}

pub fn primal_and_dual_agree_cases() -> impl Strategy<Value = HblProblem> {
    problem(4, 3, 9)
}

pub fn primal_and_dual_agree(input: HblProblem) -> Result<(), TestCaseError> {
    let p = input;
    let e = generate_constraints(&p, DEFAULT_MAX_CLOSURE);
    let sol = solve_primal(&p, &e);
    if let hbl_core::lp::PrimalStatus::Infeasible { witness } = &sol.status {
        prop_assert!(rank_all(witness, &p).iter().all(|&r| r == 0));
        return Ok(());
    }
    let rat = |n: usize| Rational::from_integer(n.into());
    for h in &e.subgroups {
        let lhs: Rational = rank_all(h, &p)
            .into_iter()
            .zip(&sol.s)
            .map(|(r, s)| s * rat(r))
            .sum();
        prop_assert!(lhs >= rat(h.rank()));
    }
    let y = solve_dual(&p, &e).unwrap();
    let (val, c) = eval_dual(&y, &p);
    prop_assert_eq!(&val, &sol.objective);
    prop_assert!(c.iter().all(|ci| *ci <= Rational::one()));
    // complementary slackness
    for (h, _) in y.iter() {
        let lhs: Rational = rank_all(h, &p)
            .into_iter()
            .zip(&sol.s)
            .map(|(r, s)| s * rat(r))
            .sum();
        prop_assert_eq!(lhs, rat(h.rank()));
    }
    for (si, ci) in sol.s.iter().zip(&c) {
        if si.is_positive() {
            prop_assert!(ci.is_one());
        }
    }
    Ok(())
}

pub fn flag_tiles_match_the_exponent_cases() -> impl Strategy<Value = HblProblem> {
    problem(4, 3, 3)
}

pub fn flag_tiles_match_the_exponent(input: HblProblem) -> Result<(), TestCaseError> {
    let p = input;
    let Ok(a) = analyze(&p, DEFAULT_MAX_CLOSURE) else {
        return Ok(());
    };
    let dec = &a.decomposition;
    prop_assert_eq!(&dec.weighted_rank(), a.s_hbl());
    prop_assert!(dec.scalings.windows(2).all(|s| s[0] >= s[1]));
    let spec = dec.tile_spec(16).unwrap();
    prop_assert_eq!(spec.element_matrix().rank(), spec.elements().len());
    prop_assert_eq!(&spec.size_exponent(), a.s_hbl());
    Ok(())
}

pub fn rank_one_tiles_fill_their_budget_cases() -> impl Strategy<Value = (IntMatrix, u64)> {
    (1usize..=3).prop_flat_map(|d| (invertible(d), 1u64..=40))
}

pub fn rank_one_tiles_fill_their_budget(input: (IntMatrix, u64)) -> Result<(), TestCaseError> {
    let (a, m) = input;
    let d = a.rows();
    let maps: Vec<IntMatrix> = (0..d)
        .map(|i| IntMatrix::from_rows(d, &[a.row(i).to_vec()]).unwrap())
        .collect();
    let p = HblProblem::new(d, maps).unwrap();
    let t = rank_one_tiling(&p, m).unwrap();
    let pts = tile_points(&t.tiling.spec, 1_000_000).unwrap();
    let share = (m / d as u64).max(1);
    prop_assert_eq!(pts.len() as u64, share.pow(d as u32));
    let images = image_counts_of(&pts, &p).unwrap();
    if m >= d as u64 {
        prop_assert!(images.iter().sum::<u64>() <= m);
    }
    Ok(())
}

pub fn rank_d_minus_one_tiles_fill_their_budget_cases() -> impl Strategy<Value = (IntMatrix, u64)> {
    (2usize..=3).prop_flat_map(|d| (invertible(d), 1u64..=60))
}

pub fn rank_d_minus_one_tiles_fill_their_budget(
    input: (IntMatrix, u64),
) -> Result<(), TestCaseError> {
    let (k, m) = input;
    let d = k.rows();
    // one map per column of `k`, each killing exactly that column
    let maps: Vec<IntMatrix> = (0..d)
        .map(|i| {
            kernel_basis(&IntMatrix::from_rows(d, &[k.column(i)]).unwrap())
                .basis()
                .transpose()
        })
        .collect();
    let p = HblProblem::new(d, maps).unwrap();
    let t = rank_d_minus_one_tiling(&p, m).unwrap();
    let pts = tile_points(&t.tiling.spec, 1_000_000).unwrap();
    let images = image_counts_of(&pts, &p).unwrap();
    if m >= d as u64 {
        prop_assert!(images.iter().sum::<u64>() <= m);
    }
    let side = side_count((m / d as u64).max(1), &q(1, d as i64 - 1));
    prop_assert_eq!(BigUint::from(pts.len()), side.pow(d as u32));
    Ok(())
}

pub fn cover_detects_corruption_cases() -> impl Strategy<Value = (TileSpec, usize)> {
    (small_spec(), 0usize..3)
}

pub fn cover_detects_corruption(input: (TileSpec, usize)) -> Result<(), TestCaseError> {
    let (spec, pick) = input;
    let t = build_tiling(&spec).unwrap();
    prop_assert!(check_cover(&t, 4, 10_000_000).unwrap());

    let mut bad = t.clone();
    // radius large enough to contain the damaged translate
    let radius = match pick {
        0 if t.t3.len() > 1 => {
            let rep = bad.t3.pop().unwrap();
            reach(&rep, &spec)
        }
        1 if !t.t1.is_empty() => {
            let v = t.t1[0].vector();
            bad.t1[0].step *= 2u32;
            reach(&v, &spec)
        }
        _ => {
            bad.t3.push(t.t3[0].clone());
            reach(&t.t3[0], &spec)
        }
    };
    let report = cover_report(&bad, radius, 10_000_000).unwrap();
    prop_assert!(
        !report.is_exact(),
        "corruption went unnoticed at radius {}",
        radius
    );
    Ok(())
}

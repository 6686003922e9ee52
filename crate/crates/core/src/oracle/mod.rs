//! Seeded verification suites comparing the compositional evaluations with
//! the brute-force [`reference`] implementations and with each other.
//!
//! Every suite is deterministic in `(seed, cases)`.

pub mod reference;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axis::{
    check_interchange, fold_grid, fold_grid_scheduled, to_f64, AxisElement, GeneratorFamily, Schedule,
    INTERCHANGE_TOL,
};
use crate::dft::{build_plan, dft_1d_with, dft_2d, max_complex_diff};
use crate::error::{Error, Result};
use crate::generators::{family_diagonal_with, family_from_powers};
use crate::hadamard::{wht_embedding_with, wht_staged, HadamardPlan};
use crate::linalg::{Matrix, Scalar, Vector};
use crate::monoid::{closed_form, fold_left, fold_sequence, MonoidElement};
use crate::report::{OracleReport, Witness};
use crate::walsh::{conjugation_sides, sequency_of_row, sequency_permutation, WalshPlan};

/// Largest element dimension drawn by the law suite.
pub const MAX_DIM: usize = 8;
/// Largest per-axis exponent drawn by the law suite.
pub const MAX_EXPONENT: i64 = 6;
/// Largest grid side drawn by the order-independence check.
pub const MAX_GRID: usize = 6;
/// Schedules tried per grid.
pub const SCHEDULES_PER_GRID: usize = 20;

pub const DFT_LENGTHS: [usize; 7] = [1, 2, 3, 4, 8, 16, 64];
pub const DFT2_SIZES: [usize; 4] = [1, 2, 4, 8];
pub const MAX_PLAN_LENGTH: usize = 256;
pub const WHT_SIZES: [usize; 8] = [2, 4, 8, 16, 32, 64, 128, 256];

fn check_cases(cases: usize) -> Result<()> {
    if cases == 0 {
        return Err(Error::InvalidArgument("cases must be at least 1".into()));
    }
    Ok(())
}

fn random_vector(rng: &mut impl Rng, dim: usize) -> Vector<f64> {
    Vector::new((0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect()).expect("dim >= 1")
}

fn random_matrix(rng: &mut impl Rng, dim: usize) -> Matrix<f64> {
    Matrix::from_rows((0..dim).map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect())
        .expect("square")
}

fn random_element(rng: &mut impl Rng, dim: usize) -> MonoidElement<f64> {
    MonoidElement::new(random_vector(rng, dim), random_matrix(rng, dim)).expect("same dim")
}

fn random_int_element(rng: &mut impl Rng, dim: usize) -> MonoidElement<i64> {
    let v = Vector::new((0..dim).map(|_| rng.random_range(-9..=9)).collect()).expect("dim >= 1");
    let m = Matrix::from_rows((0..dim).map(|_| (0..dim).map(|_| rng.random_range(-3..=3)).collect()).collect())
        .expect("square");
    MonoidElement::new(v, m).expect("same dim")
}

fn element_distance<T: Scalar>(a: &MonoidElement<T>, b: &MonoidElement<T>) -> Result<f64> {
    Ok(a.vec().max_abs_diff(b.vec())?.max(a.op().max_abs_diff(b.op())?))
}

fn element_witness<T: Scalar>(inputs: &[&MonoidElement<T>], lhs: &MonoidElement<T>, rhs: &MonoidElement<T>) -> Witness {
    Witness {
        inputs: inputs.iter().map(|e| to_f64(e.vec())).collect(),
        lhs: to_f64(lhs.vec()),
        rhs: to_f64(rhs.vec()),
    }
}

/// A commuting family drawn at random: either random diagonals or powers of
/// a random near-identity base (non-diagonal).
pub fn random_commuting_family(rng: &mut impl Rng, dim: usize, axes: usize) -> Result<GeneratorFamily<f64>> {
    if rng.random_bool(0.5) {
        family_diagonal_with(dim, axes, rng)
    } else {
        let scale = 0.5 / (dim as f64).sqrt();
        let noise = random_matrix(rng, dim).scale(scale);
        let base = Matrix::identity(dim).sub(&noise)?;
        let exps: Vec<i64> = (0..axes).map(|_| rng.random_range(1..=2)).collect();
        family_from_powers(&base, &exps)
    }
}

/// Generators `[[0,1],[1,0]]` and `diag(1,2)`, which do not commute.
pub fn noncommuting_fixture() -> Arc<GeneratorFamily<i64>> {
    let swap = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).expect("square");
    Arc::new(GeneratorFamily::new(vec![swap, Matrix::diag(&[1, 2])]).expect("same dim"))
}

/// Four elements in the exponent pattern
/// `(n, m), (k, m), (n, q), (k, q)` on axes `(0, 1)`.
fn interchange_quadruple<T: Scalar>(
    vecs: [Vector<T>; 4],
    (n, k, m, q): (i64, i64, i64, i64),
    family: &Arc<GeneratorFamily<T>>,
) -> Result<[AxisElement<T>; 4]> {
    let [u, v, w, z] = vecs;
    Ok([
        AxisElement::new(u, vec![n, m], family)?,
        AxisElement::new(v, vec![k, m], family)?,
        AxisElement::new(w, vec![n, q], family)?,
        AxisElement::new(z, vec![k, q], family)?,
    ])
}

/// Associativity, identity neutrality, fold consistency, interchange for
/// commuting families, the non-commuting counterexample, per-axis
/// associativity and grid order independence.
pub fn run_law_suite(seed: u64, cases: usize) -> Result<Vec<OracleReport>> {
    check_cases(cases)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();

    let mut assoc = OracleReport::new("associativity", 1e-9);
    let mut assoc_exact = OracleReport::new("associativity_exact", 0.0);
    let mut ident = OracleReport::new("identity_neutrality", 0.0);
    for _ in 0..cases {
        let d = rng.random_range(1..=MAX_DIM);
        let (a, b, c) = (random_element(&mut rng, d), random_element(&mut rng, d), random_element(&mut rng, d));
        let lhs = a.compose(&b)?.compose(&c)?;
        let rhs = a.compose(&b.compose(&c)?)?;
        assoc.record(element_distance(&lhs, &rhs)?, || element_witness(&[&a, &b, &c], &lhs, &rhs));

        let id = MonoidElement::identity(d)?;
        let left = id.compose(&a)?;
        let right = a.compose(&id)?;
        let err = if left == a && right == a {
            0.0
        } else {
            element_distance(&left, &a)?
                .max(element_distance(&right, &a)?)
                .max(f64::MIN_POSITIVE)
        };
        ident.record(err, || element_witness(&[&a], &left, &right));

        let d = rng.random_range(1..=4);
        let (a, b, c) = (
            random_int_element(&mut rng, d),
            random_int_element(&mut rng, d),
            random_int_element(&mut rng, d),
        );
        let lhs = a.compose(&b)?.compose(&c)?;
        let rhs = a.compose(&b.compose(&c)?)?;
        let err = if lhs == rhs { 0.0 } else { element_distance(&lhs, &rhs)? };
        assoc_exact.record(err, || element_witness(&[&a, &b, &c], &lhs, &rhs));
    }
    reports.extend([assoc, assoc_exact, ident]);

    let mut folds = OracleReport::new("fold_sequence_vs_closed_form", 1e-9);
    for _ in 0..cases {
        let d = rng.random_range(1..=MAX_DIM);
        let len = rng.random_range(1..=32);
        // Scaled so long products stay O(1).
        let elems: Vec<_> = (0..len)
            .map(|_| {
                let e = random_element(&mut rng, d);
                let op = e.op().scale(1.0 / d as f64);
                MonoidElement::new(e.vec().clone(), op).expect("same dim")
            })
            .collect();
        let right = fold_sequence(&elems)?;
        let left = fold_left(&elems)?;
        let closed = closed_form(&elems)?;
        let err = element_distance(&right, &closed)?.max(element_distance(&right, &left)?);
        folds.record(err, || element_witness(&[], &right, &closed));
    }
    reports.push(folds);

    let mut inter = OracleReport::new("interchange_commuting", INTERCHANGE_TOL);
    let mut axis_assoc = OracleReport::new("axis_associativity", 1e-9);
    for _ in 0..cases {
        let d = rng.random_range(1..=MAX_DIM);
        let family = Arc::new(random_commuting_family(&mut rng, d, 2)?);
        let exps = (
            rng.random_range(0..=MAX_EXPONENT),
            rng.random_range(0..=MAX_EXPONENT),
            rng.random_range(0..=MAX_EXPONENT),
            rng.random_range(0..=MAX_EXPONENT),
        );
        let vecs = std::array::from_fn(|_| random_vector(&mut rng, d));
        let [a, b, c, e] = interchange_quadruple(vecs, exps, &family)?;
        inter.merge(check_interchange(&a, &b, &c, &e, 0, 1)?);

        let axis = rng.random_range(0..2);
        let off = rng.random_range(0..=MAX_EXPONENT);
        let mk = |rng: &mut ChaCha8Rng| {
            let mut ex = vec![off; 2];
            ex[axis] = rng.random_range(0..=MAX_EXPONENT);
            AxisElement::new(random_vector(rng, d), ex, &family)
        };
        let (p, q, r) = (mk(&mut rng)?, mk(&mut rng)?, mk(&mut rng)?);
        let lhs = p.compose_axis(&q, axis)?.compose_axis(&r, axis)?;
        let rhs = p.compose_axis(&q.compose_axis(&r, axis)?, axis)?;
        let err = if lhs.exponents() == rhs.exponents() { lhs.vec().max_abs_diff(rhs.vec())? } else { f64::INFINITY };
        axis_assoc.record(err, || Witness {
            inputs: [&p, &q, &r].iter().map(|e| to_f64(e.vec())).collect(),
            lhs: to_f64(lhs.vec()),
            rhs: to_f64(rhs.vec()),
        });
    }
    reports.extend([inter, axis_assoc]);

    reports.push(noncommuting_report()?);
    reports.push(grid_order_report(&mut rng, cases.div_ceil(SCHEDULES_PER_GRID))?);
    Ok(reports)
}

/// The fixed counterexample: interchange must fail for the non-commuting
/// fixture. The report is marked as expected to fail.
pub fn noncommuting_report() -> Result<OracleReport> {
    let family = noncommuting_fixture();
    let v = |a, b| Vector::new(vec![a, b]).expect("dim 2");
    let [a, b, c, d] = interchange_quadruple([v(1, 0), v(0, 1), v(1, 1), v(1, 0)], (1, 1, 1, 1), &family)?;
    let mut rep = check_interchange(&a, &b, &c, &d, 0, 1)?.expecting_failure();
    rep.name = "interchange_noncommuting_fixture".into();
    Ok(rep)
}

/// `grids` random grids (side ≤ [`MAX_GRID`]) with commuting families; each
/// is folded by [`fold_grid`] and by [`SCHEDULES_PER_GRID`] schedules.
pub fn grid_order_report(rng: &mut impl Rng, grids: usize) -> Result<OracleReport> {
    let mut rep = OracleReport::new("grid_order_independence", 1e-9);
    for _ in 0..grids {
        let d = rng.random_range(1..=MAX_DIM);
        let (h, w) = (rng.random_range(1..=MAX_GRID), rng.random_range(1..=MAX_GRID));
        let family = Arc::new(random_commuting_family(rng, d, 2)?);
        let grid: Vec<Vec<_>> = (0..h).map(|_| (0..w).map(|_| random_vector(rng, d)).collect()).collect();
        let reference = fold_grid(&grid, &family)?;
        for s in 0..SCHEDULES_PER_GRID {
            let schedule = match s {
                0 => Schedule::rows_then_columns(h, w),
                1 => Schedule::columns_then_rows(h, w),
                _ => Schedule::random(h, w, rng),
            };
            let got = fold_grid_scheduled(&grid, &family, &schedule)?;
            let err = if got.exponents() == reference.exponents() {
                got.vec().max_abs_diff(reference.vec())?
            } else {
                f64::INFINITY
            };
            rep.record(err, || Witness {
                inputs: grid.iter().flatten().map(to_f64).collect(),
                lhs: to_f64(reference.vec()),
                rhs: to_f64(got.vec()),
            });
        }
    }
    Ok(rep)
}

fn complex_flat(c: &[(f64, f64)]) -> Vec<f64> {
    c.iter().flat_map(|&(a, b)| [a, b]).collect()
}

/// Compositional DFTs against the naive sums, the plan period `R^n = I`,
/// and Parseval.
pub fn run_dft_suite(seed: u64, cases: usize) -> Result<Vec<OracleReport>> {
    check_cases(cases)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();

    let mut period = OracleReport::new("dft_plan_period", crate::dft::PERIOD_TOL);
    for n in 1..=MAX_PLAN_LENGTH {
        let err = build_plan(n)?.period_error();
        period.record(err, || Witness { inputs: vec![vec![n as f64]], lhs: vec![err], rhs: vec![0.0] });
    }
    reports.push(period);

    for n in DFT_LENGTHS {
        let plan = build_plan(n)?;
        let mut rep = OracleReport::new(format!("dft_1d_vs_naive[n={n}]"), 1e-9 * n as f64);
        let mut parseval = OracleReport::new(format!("dft_parseval[n={n}]"), 1e-6 * n as f64);
        for _ in 0..cases {
            let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let got = dft_1d_with(&plan, &a)?;
            let want = reference::naive_dft_real(&a)?;
            rep.record(got.max_abs_diff(&want)?, || Witness {
                inputs: vec![a.clone()],
                lhs: complex_flat(&got.coefficients),
                rhs: complex_flat(&want),
            });
            let lhs = got.energy();
            let rhs = n as f64 * a.iter().map(|x| x * x).sum::<f64>();
            parseval.record((lhs - rhs).abs(), || Witness { inputs: vec![a.clone()], lhs: vec![lhs], rhs: vec![rhs] });
        }
        reports.extend([rep, parseval]);
    }

    for n in DFT2_SIZES {
        let mut rep = OracleReport::new(format!("dft_2d_vs_naive[n={n}]"), 1e-9 * (n * n) as f64);
        for _ in 0..cases.div_ceil(4) {
            let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect();
            let got = dft_2d(&a)?;
            let want = reference::naive_dft2(&a)?;
            let err = got.iter().zip(&want).map(|(g, w)| max_complex_diff(g, w)).fold(0.0, f64::max);
            rep.record(err, || Witness {
                inputs: a.clone(),
                lhs: got.iter().flat_map(|r| complex_flat(r)).collect(),
                rhs: want.iter().flat_map(|r| complex_flat(r)).collect(),
            });
        }
        reports.push(rep);
    }
    Ok(reports)
}

fn record_exact(rep: &mut OracleReport, want: &[i64], got: &[i64], input: &[i64]) {
    let err = want.iter().zip(got).map(|(a, b)| (a - b).unsigned_abs()).max().unwrap_or(0) as f64;
    let err = if want.len() == got.len() { err } else { f64::INFINITY };
    rep.record(err, || Witness {
        inputs: vec![input.iter().map(|&x| x as f64).collect()],
        lhs: want.iter().map(|&x| x as f64).collect(),
        rhs: got.iter().map(|&x| x as f64).collect(),
    });
}

/// Random integer vector with entries in `[−1000, 1000]`.
pub fn random_int_signal(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-1000..=1000)).collect()
}

/// Embedding and staged Hadamard against the entry-formula reference, plus
/// the involution `H(Hx) = n x`. All exact.
pub fn run_hadamard_suite(seed: u64, cases: usize) -> Result<Vec<OracleReport>> {
    check_cases(cases)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();
    for n in WHT_SIZES {
        let plan = HadamardPlan::<i64>::new(n)?;
        let names = [
            format!("hadamard_embedding_vs_naive[n={n}]"),
            format!("hadamard_staged_vs_naive[n={n}]"),
            format!("hadamard_involution[n={n}]"),
        ];
        let mut reps: Vec<_> = names.iter().map(|s| OracleReport::new(s.clone(), 0.0)).collect();
        for _ in 0..cases {
            let x = random_int_signal(&mut rng, n);
            let want = reference::naive_hadamard(&x)?;
            let emb = wht_embedding_with(&plan, &x)?;
            let staged = wht_staged(&x)?;
            record_exact(&mut reps[0], &want, &emb, &x);
            record_exact(&mut reps[1], &want, &staged, &x);
            let twice = wht_embedding_with(&plan, &emb)?;
            let nx: Vec<i64> = x.iter().map(|&v| v * n as i64).collect();
            record_exact(&mut reps[2], &nx, &twice, &x);
        }
        reports.extend(reps);
    }
    Ok(reports)
}

/// Walsh sequency order, permutation vs brute-force sort, embedding vs the
/// reference, and the conjugation identity. All exact.
pub fn run_walsh_suite(seed: u64, cases: usize) -> Result<Vec<OracleReport>> {
    check_cases(cases)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();

    let mut order = OracleReport::new("walsh_sequency_order", 0.0);
    let mut perm = OracleReport::new("walsh_permutation_vs_sort", 0.0);
    let mut n = 1;
    while n <= MAX_PLAN_LENGTH {
        let plan = WalshPlan::new(n)?;
        let seq = plan.matrix().rows().map(sequency_of_row).collect::<Result<Vec<_>>>()?;
        let ok = seq.iter().enumerate().all(|(k, &s)| s == k);
        order.record(if ok { 0.0 } else { 1.0 }, || Witness {
            inputs: vec![vec![n as f64]],
            lhs: (0..n).map(|k| k as f64).collect(),
            rhs: seq.iter().map(|&s| s as f64).collect(),
        });
        let formula = sequency_permutation(n)?;
        let sorted = reference::sequency_sort(n)?;
        perm.record(if formula.image() == sorted.as_slice() { 0.0 } else { 1.0 }, || Witness {
            inputs: vec![vec![n as f64]],
            lhs: sorted.iter().map(|&i| i as f64).collect(),
            rhs: formula.image().iter().map(|&i| i as f64).collect(),
        });
        n *= 2;
    }
    reports.extend([order, perm]);

    for n in WHT_SIZES {
        let names = [format!("walsh_embedding_vs_naive[n={n}]"), format!("walsh_conjugation_identity[n={n}]")];
        let mut reps: Vec<_> = names.iter().map(|s| OracleReport::new(s.clone(), 0.0)).collect();
        for _ in 0..cases {
            let x = random_int_signal(&mut rng, n);
            let want = reference::naive_walsh(&x)?;
            let (conjugated, permuted) = conjugation_sides(&x)?;
            record_exact(&mut reps[0], &want, &conjugated, &x);
            record_exact(&mut reps[1], &permuted, &conjugated, &x);
        }
        reports.extend(reps);
    }
    Ok(reports)
}

/// Every suite, in a fixed order.
pub fn run_all(seed: u64, cases: usize) -> Result<Vec<OracleReport>> {
    let mut out = run_law_suite(seed, cases)?;
    out.extend(run_dft_suite(seed, cases)?);
    out.extend(run_hadamard_suite(seed, cases)?);
    out.extend(run_walsh_suite(seed, cases)?);
    Ok(out)
}

//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible under `--nocapture`). Tolerances and budgets are
//! pinned here as named constants.

use std::panic::AssertUnwindSafe;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use rowconvex::analysis::{
    asymptotic_report, denominator_roots, dominant_roots, growth_ratio_estimate,
    reflection_bounds, residue_constants, verify_asymptotic_claims, Verdict,
};
use rowconvex::counting::{
    count_by_composition_sum_with_limit, count_by_linear_recurrence,
    count_by_partition_formula_with_limit, count_by_transfer_dp,
};
use rowconvex::genfunc::{series_expand, verify_transfer_identities, IntPolynomial, RationalGF};
use rowconvex::oracle::{
    count_distinct_up_to_reflection, count_row_convex_oracle, enumerate_fixed_polyominoes,
};
use rowconvex::partitions::{generate_partitions, permutation_factor};

const REFERENCE: [u64; 12] = [1, 2, 6, 19, 61, 196, 629, 2017, 6466, 20727, 66441, 212980];

const FAST_ROUTE_BUDGET: Duration = Duration::from_secs(1);
const EXPONENTIAL_ROUTE_BUDGET: Duration = Duration::from_secs(10);
const CROSS_METHOD_BUDGET: Duration = Duration::from_secs(60);
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const DEEP_SERIES_BUDGET: Duration = Duration::from_secs(5);

const VIETA_TOLERANCE: f64 = 1e-10;
const RATIO_TOLERANCE: f64 = 1e-8;
const PREDICTION_RELATIVE_TOLERANCE: f64 = 1e-3;

const CROSS_METHOD_DEPTH: usize = 22;
const POLYNOMIAL_DEPTH: usize = 1000;
const ORACLE_DEPTH: usize = 11;
const TRANSFER_ORDER: usize = 50;

fn criterion(id: u32, summary: &str, body: impl FnOnce()) {
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("PASS criterion {id}: {summary}"),
        Err(cause) => {
            println!("FAIL criterion {id}: {summary}");
            std::panic::resume_unwind(cause);
        }
    }
}

#[test]
fn criterion_1_reference_table_by_every_route() {
    criterion(1, "all six routes reproduce S(1..12)", || {
        let started = Instant::now();
        let dp = count_by_transfer_dp(12);
        let rec = count_by_linear_recurrence(12);
        let gf = series_expand(&RationalGF::row_convex(), 12).unwrap();
        let fast_elapsed = started.elapsed();

        for (i, &want) in REFERENCE.iter().enumerate() {
            let n = i + 1;
            let want = BigInt::from(want);
            assert_eq!(dp.get(n).unwrap(), &want, "dp at {n}");
            assert_eq!(rec.get(n).unwrap(), &want, "recurrence at {n}");
            assert_eq!(gf.coeff(n), &want, "series expansion at {n}");
        }
        assert!(
            fast_elapsed < FAST_ROUTE_BUDGET,
            "dp/recurrence/gf took {fast_elapsed:?}"
        );

        let started = Instant::now();
        for (i, &want) in REFERENCE.iter().enumerate() {
            let n = i + 1;
            let want = BigInt::from(want);
            assert_eq!(
                count_by_partition_formula_with_limit(n, 12).unwrap(),
                want,
                "partition formula at {n}"
            );
            assert_eq!(
                count_by_composition_sum_with_limit(n, 12).unwrap(),
                want,
                "composition sum at {n}"
            );
        }
        let exponential_elapsed = started.elapsed();
        assert!(
            exponential_elapsed < EXPONENTIAL_ROUTE_BUDGET,
            "partition/composition sweep took {exponential_elapsed:?}"
        );

        // The oracle's cap is 12, so it too must reproduce the full table.
        for (i, &want) in REFERENCE.iter().enumerate() {
            let n = i + 1;
            assert_eq!(
                count_row_convex_oracle(n).unwrap(),
                BigInt::from(want),
                "oracle at {n}"
            );
        }
    });
}

#[test]
fn criterion_2_cross_method_equality() {
    criterion(2, "routes agree exactly to their depths", || {
        let started = Instant::now();

        let dp = count_by_transfer_dp(POLYNOMIAL_DEPTH);
        for n in 1..=CROSS_METHOD_DEPTH {
            let want = dp.get(n).unwrap();
            assert_eq!(
                &count_by_partition_formula_with_limit(n, CROSS_METHOD_DEPTH).unwrap(),
                want,
                "partition formula at {n}"
            );
            assert_eq!(
                &count_by_composition_sum_with_limit(n, CROSS_METHOD_DEPTH).unwrap(),
                want,
                "composition sum at {n}"
            );
        }

        let rec = count_by_linear_recurrence(POLYNOMIAL_DEPTH);
        let gf = series_expand(&RationalGF::row_convex(), POLYNOMIAL_DEPTH).unwrap();
        for n in 1..=POLYNOMIAL_DEPTH {
            let want = dp.get(n).unwrap();
            assert_eq!(rec.get(n).unwrap(), want, "recurrence at {n}");
            assert_eq!(gf.coeff(n), want, "series expansion at {n}");
        }

        let elapsed = started.elapsed();
        assert!(elapsed < CROSS_METHOD_BUDGET, "took {elapsed:?}");
    });
}

#[test]
fn criterion_3_oracle_equivalence_and_rotation() {
    criterion(3, "oracle counts match, rows and columns alike", || {
        let started = Instant::now();
        let dp = count_by_transfer_dp(ORACLE_DEPTH);
        for n in 1..=ORACLE_DEPTH {
            let want = dp.get(n).unwrap();
            assert_eq!(&count_row_convex_oracle(n).unwrap(), want, "oracle at {n}");

            let mut column_convex = BigInt::zero();
            for shape in enumerate_fixed_polyominoes(n).unwrap() {
                if shape.is_column_convex() {
                    column_convex += 1;
                }
            }
            assert_eq!(&column_convex, want, "column-convex count at {n}");
        }
        let elapsed = started.elapsed();
        assert!(elapsed < ORACLE_BUDGET, "took {elapsed:?}");
    });
}

#[test]
fn criterion_4_algebraic_identities() {
    criterion(4, "permutation, recurrence, and transfer identities", || {
        for n in 1..=CROSS_METHOD_DEPTH {
            let total: BigInt = generate_partitions(n)
                .unwrap()
                .map(|p| permutation_factor(&p))
                .sum();
            assert_eq!(total, BigInt::one() << (n - 1), "sum of factors at {n}");
        }

        let dp = count_by_transfer_dp(POLYNOMIAL_DEPTH);
        for n in 5..=POLYNOMIAL_DEPTH {
            assert!(
                dp.recurrence_residual(n).unwrap().is_zero(),
                "residual at {n}"
            );
        }

        let p = |cs: &[i64]| IntPolynomial::from_i64(cs);
        let lhs = p(&[1, -2])
            .mul(&p(&[1, -1]).pow(2))
            .sub(&p(&[0, 1]).mul(&p(&[1, -2, 2])));
        assert_eq!(lhs, p(&[1, -5, 7, -4]));

        let report = verify_transfer_identities(TRANSFER_ORDER, TRANSFER_ORDER).unwrap();
        assert!(report.all_hold(), "transfer identities: {report:?}");
    });
}

#[test]
fn criterion_5_singularity_analysis() {
    criterion(5, "roots, growth constant, and residue prediction", || {
        let roots = denominator_roots().unwrap();
        assert_eq!(roots.len(), 3);

        // Vieta on the monic form x^3 - (7/4)x^2 + (5/4)x - 1/4.
        let sum = roots.iter().map(|r| r.value).sum::<num_complex::Complex64>();
        let prod = roots.iter().map(|r| r.value).product::<num_complex::Complex64>();
        let pair = roots[0].value * roots[1].value
            + roots[0].value * roots[2].value
            + roots[1].value * roots[2].value;
        assert!((sum.re - 1.75).abs() < VIETA_TOLERANCE && sum.im.abs() < VIETA_TOLERANCE);
        assert!((pair.re - 1.25).abs() < VIETA_TOLERANCE && pair.im.abs() < VIETA_TOLERANCE);
        assert!((prod.re - 0.25).abs() < VIETA_TOLERANCE && prod.im.abs() < VIETA_TOLERANCE);

        let rho = roots[0].value.re;
        assert!(roots[0].is_real());
        assert!((rho - 0.311955).abs() < 1e-5);
        let growth = 1.0 / rho;
        assert!((growth - 3.2055694).abs() < 1e-6);

        let series = count_by_linear_recurrence(201);
        let ratio = growth_ratio_estimate(&series, 200).unwrap().to_f64();
        assert!(
            (ratio - growth).abs() < RATIO_TOLERANCE,
            "S(201)/S(200) = {ratio} vs 1/rho = {growth}"
        );

        let term = residue_constants(&RationalGF::row_convex(), &dominant_roots(&roots)).unwrap();
        let exact = series.get(200).unwrap().to_f64().unwrap();
        let rel = (term.predict(200) - exact).abs() / exact;
        assert!(
            rel < PREDICTION_RELATIVE_TOLERANCE,
            "relative error {rel} at N = 200"
        );
    });
}

#[test]
fn criterion_6_claim_verification_report() {
    criterion(6, "published asymptotic claims checked, not reproduced", || {
        let claims = verify_asymptotic_claims().unwrap();
        assert_eq!(claims.len(), 4);
        assert_eq!(claims, verify_asymptotic_claims().unwrap(), "deterministic");

        // The checked statements are recorded verbatim.
        assert!(claims[0]
            .statement
            .contains("S(N) ~ A * 2^N * cos(N*theta + phi)"));
        assert!(claims[3].statement.contains("arctan(sqrt(7)/3)"));

        // Exact facts: denominator(1) = -1, |denominator((3+i*sqrt7)/8)| = 1/2.
        assert!(claims[1].computed.contains("denominator(1) = -1"));
        assert_eq!(claims[1].residual, 1.0);
        assert_eq!(claims[2].residual, 0.5);

        // None of the claimed numbers is reproduced at any scale.
        assert!(claims.iter().all(|c| c.verdict == Verdict::Inconsistent));
        assert!(claims.iter().all(|c| c.residual > 0.49));

        // The full report carries the same checks and is itself stable.
        let report = asymptotic_report(50).unwrap();
        assert_eq!(report.claims, claims);
        assert_eq!(
            report.to_json().to_string(),
            asymptotic_report(50).unwrap().to_json().to_string()
        );
    });
}

#[test]
fn criterion_7_symmetry_bounds() {
    criterion(7, "reflection-class count lands inside its bracket", || {
        let dp = count_by_transfer_dp(ORACLE_DEPTH);
        for n in 1..=ORACLE_DEPTH {
            let s = dp.get(n).unwrap();
            let (d, f) = count_distinct_up_to_reflection(n).unwrap();
            assert_eq!(
                BigInt::from(2) * &d - &f,
                s.clone(),
                "2D - F = S at {n} (so D = (S + F)/2)"
            );

            let bounds = reflection_bounds(n).unwrap();
            assert_eq!(bounds.exact.as_ref(), Some(&d), "oracle agreement at {n}");
            assert!(bounds.lower <= d, "lower bound at {n}");
            assert!(d <= bounds.upper, "upper bound at {n}");
            assert_eq!(bounds.lower, (s + 1u32) / 2u32, "lower is ceil(S/2) at {n}");
        }
    });
}

#[test]
fn criterion_8_deep_series_performance() {
    criterion(8, "S(1000) by two routes, fast and identical", || {
        let started = Instant::now();
        let dp = count_by_transfer_dp(POLYNOMIAL_DEPTH);
        let dp_elapsed = started.elapsed();
        assert!(dp_elapsed < DEEP_SERIES_BUDGET, "dp took {dp_elapsed:?}");

        let started = Instant::now();
        let rec = count_by_linear_recurrence(POLYNOMIAL_DEPTH);
        let rec_elapsed = started.elapsed();
        assert!(
            rec_elapsed < DEEP_SERIES_BUDGET,
            "recurrence took {rec_elapsed:?}"
        );

        let a = dp.get(POLYNOMIAL_DEPTH).unwrap();
        let b = rec.get(POLYNOMIAL_DEPTH).unwrap();
        assert_eq!(a, b);
        let digits = a.to_string().len();
        assert!(
            (504..=508).contains(&digits),
            "S(1000) has {digits} decimal digits"
        );
    });
}

//! Property tests against independent oracles. Compiled into the unit-test
//! binary so they run ahead of the acceptance suite.

use crate::eigen::{DEFAULT_MAX_ITER, DEFAULT_TOL, RESIDUAL_LIMIT};
use crate::oracle as common;
use crate::{
    build_truncation, crossing_report, delta, eigenvalue, eigenvector, enclose, gap_lower_bound,
    gershgorin_bounds, lambda_cap, merged_spectrum, sturm_count, Branch, NchoParams, Parity,
    SectorId, SymTridiag,
};
use proptest::prelude::*;

fn tridiag_strategy(max_dim: usize) -> impl Strategy<Value = SymTridiag> {
    (1..=max_dim).prop_flat_map(|n| {
        (
            prop::collection::vec(-5.0f64..5.0, n),
            prop::collection::vec(
                (0.1f64..3.0, any::<bool>()).prop_map(|(m, neg)| if neg { -m } else { m }),
                n - 1,
            ),
        )
            .prop_map(|(d, e)| SymTridiag::new(d, e).unwrap())
    })
}

fn params_strategy() -> impl Strategy<Value = NchoParams> {
    (0.3f64..4.0, 0.3f64..4.0)
        .prop_filter("alpha*beta > 1.05", |(a, b)| a * b > 1.05)
        .prop_map(|(a, b)| NchoParams::new(a, b).unwrap())
}

fn sector_strategy() -> impl Strategy<Value = SectorId> {
    (0usize..4).prop_map(|i| SectorId::ALL[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sturm_count_is_monotone(t in tridiag_strategy(12), xs in prop::collection::vec(-20.0f64..20.0, 2..20)) {
        let mut xs = xs;
        xs.sort_by(f64::total_cmp);
        let counts: Vec<usize> = xs.iter().map(|&x| sturm_count(&t, x)).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] <= w[1]));
        let (_, hi) = gershgorin_bounds(&t);
        prop_assert_eq!(sturm_count(&t, hi + 1.0), t.dim());
    }

    #[test]
    fn brackets_hold_their_counts_and_never_invert(t in tridiag_strategy(12)) {
        let brackets: Vec<_> = (0..t.dim()).map(|k| eigenvalue(&t, k, DEFAULT_TOL).unwrap()).collect();
        for b in &brackets {
            prop_assert!(b.lo <= b.hi && b.width() <= DEFAULT_TOL);
            prop_assert!(sturm_count(&t, b.lo) <= b.index);
            prop_assert!(sturm_count(&t, b.hi) > b.index);
        }
        for w in brackets.windows(2) {
            prop_assert!(w[0].lo <= w[1].lo && w[0].hi <= w[1].hi);
        }
    }

    #[test]
    fn bisection_agrees_with_characteristic_polynomial(t in tridiag_strategy(12)) {
        let roots = common::char_poly_roots(t.diag(), t.offdiag());
        for (k, r) in roots.iter().enumerate() {
            let b = eigenvalue(&t, k, DEFAULT_TOL).unwrap();
            prop_assert!((b.midpoint() - r).abs() < 1e-8, "k={} {} vs {}", k, b.midpoint(), r);
        }
    }

    #[test]
    fn eigenvectors_have_small_residual(t in tridiag_strategy(12), pick in 0usize..12) {
        let k = pick % t.dim();
        let b = eigenvalue(&t, k, DEFAULT_TOL).unwrap();
        let v = eigenvector(&t, b.midpoint(), DEFAULT_MAX_ITER).unwrap();
        prop_assert!(v.residual <= RESIDUAL_LIMIT);
        let len: f64 = v.components.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((len - 1.0).abs() < 1e-12);
        let first = v.components.iter().find(|x| **x != 0.0).unwrap();
        prop_assert!(*first > 0.0);
    }

    #[test]
    fn truncated_spectra_are_simple(q in params_strategy(), s in sector_strategy(), n in 1usize..60) {
        let t = build_truncation(s, &q, n);
        let brackets: Vec<_> = (0..t.dim()).map(|k| eigenvalue(&t, k, DEFAULT_TOL).unwrap()).collect();
        for w in brackets.windows(2) {
            prop_assert!(w[1].lo > w[0].hi, "{:?} {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn rank_one_corrections_order_eigenvalues(q in params_strategy(), s in sector_strategy(), n_trunc in 0usize..80, pick in 0usize..80) {
        let n = pick % (n_trunc + 1);
        let t = build_truncation(s, &q, n_trunc);
        let d = delta(s, &q, n_trunc);
        let tol = 1e-10;
        let mid = eigenvalue(&t, n, tol).unwrap().midpoint();
        let lo = eigenvalue(&t.with_last_diag_shift(-d), n, tol).unwrap().midpoint();
        let hi = eigenvalue(&t.with_last_diag_shift(d), n, tol).unwrap().midpoint();
        prop_assert!(lo <= mid + 2.0 * tol && mid <= hi + 2.0 * tol);
    }

    #[test]
    fn doubling_truncation_tightens(q in params_strategy(), s in sector_strategy(), n in 0usize..4, base in 12usize..40) {
        let tol = 1e-11;
        let a = enclose(s, &q, n, base, tol).unwrap();
        let b = enclose(s, &q, n, 2 * base, tol).unwrap();
        prop_assume!(a.certified);
        prop_assert!(b.certified);
        prop_assert!(a.interval().intersects(&b.interval()));
        prop_assert!(b.width() <= a.width() + 2.0 * tol);
    }

    #[test]
    fn equal_parameters_pair_branches(t in 1.05f64..4.0, minus in any::<bool>(), n in 0usize..6, n_trunc in 16usize..64) {
        let q = NchoParams::new(t, t).unwrap();
        let parity = if minus { Parity::Minus } else { Parity::Plus };
        let tol = 1e-11;
        let one = enclose(SectorId::new(parity, Branch::One), &q, n, n_trunc, tol).unwrap();
        let two = enclose(SectorId::new(parity, Branch::Two), &q, n, n_trunc, tol).unwrap();
        prop_assert!((one.lower - two.lower).abs() <= 2.0 * tol);
        prop_assert!((one.upper - two.upper).abs() <= 2.0 * tol);
    }

    #[test]
    fn corrected_gap_bound_holds(q in params_strategy(), n in 0usize..6) {
        let cert = gap_lower_bound(&q);
        for branch in [Branch::One, Branch::Two] {
            let row = crossing_report(branch, n, &[q], 1e-9).remove(0);
            let g = row.gap_interval.unwrap();
            let widths = row.plus.unwrap().width() + row.minus.unwrap().width();
            prop_assert!(g.lo >= cert.operator_gap_bound - widths, "{:?} {}", g, cert.operator_gap_bound);
        }
    }
}

#[test]
fn cap_grows_linearly() {
    let q = NchoParams::new(1.3, 2.1).unwrap();
    for s in SectorId::ALL {
        let ratios: Vec<f64> = (4..16)
            .map(|k| 1usize << k)
            .map(|n| lambda_cap(s, &q, n) / n as f64)
            .collect();
        let (lo, hi) = ratios
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(l, h), r| (l.min(*r), h.max(*r)));
        assert!(lo > 0.0 && hi / lo < 1.2, "{s}: {ratios:?}");
    }
}

#[test]
fn merged_lines_keep_order_when_refined() {
    let q = NchoParams::new(1.0, 3.0).unwrap();
    let coarse = merged_spectrum(&q, 8, 1e-5).unwrap();
    let fine = merged_spectrum(&q, 8, 1e-10).unwrap();
    for (c, f) in coarse.iter().zip(&fine) {
        assert!(!c.potentially_degenerate);
        assert_eq!((c.sector, c.sector_index), (f.sector, f.sector_index));
        assert!(c.interval().intersects(&f.interval()));
    }
}

#[test]
fn merged_spectrum_matches_union_of_large_truncations() {
    // all four sectors at N = 120 are converged far below 1e-8 for the low lines
    let q = NchoParams::new(1.0, 2.0).unwrap();
    let mut reference: Vec<f64> = SectorId::ALL
        .iter()
        .flat_map(|&s| {
            let t = build_truncation(s, &q, 120);
            (0..6).map(move |k| eigenvalue(&t, k, 1e-13).unwrap().midpoint())
        })
        .collect();
    reference.sort_by(f64::total_cmp);
    let lines = merged_spectrum(&q, 12, 1e-9).unwrap();
    for (l, r) in lines.iter().zip(&reference) {
        assert!(
            l.interval().contains(*r) || (l.midpoint() - r).abs() < 1e-9,
            "{l:?} vs {r}"
        );
    }
}

#[test]
fn ground_vector_matches_dense_oracle() {
    let q = NchoParams::new(1.0, 2.0).unwrap();
    let t = build_truncation(SectorId::PLUS_ONE, &q, 50);
    let (vals, vecs) =
        common::dense_symmetric_eigen(common::dense_from_tridiag(t.diag(), t.offdiag()));
    let mut dense: Vec<f64> = vecs.iter().map(|row| row[0]).collect();
    if dense[0] < 0.0 {
        dense.iter_mut().for_each(|x| *x = -*x);
    }
    let b = eigenvalue(&t, 0, DEFAULT_TOL).unwrap();
    assert!((b.midpoint() - vals[0]).abs() < 1e-10);
    let v = eigenvector(&t, b.midpoint(), DEFAULT_MAX_ITER).unwrap();
    for (a, d) in v.components.iter().zip(&dense) {
        assert!((a - d).abs() < 1e-9);
    }
    // the dense vector is positive wherever it is resolvable
    assert!(dense.iter().take(20).all(|&x| x > 0.0));
    assert!(v.components.iter().all(|&x| x > 0.0));
}

#[test]
fn structural_claims_on_random_unequal_parameters() {
    for (a, b) in [(0.8, 2.5), (1.2, 3.7), (2.2, 0.9), (3.3, 1.4)] {
        let q = NchoParams::new(a, b).unwrap();
        let r = crate::ground_state_report(&q, 1e-9).unwrap();
        assert!(r.even && r.simple, "({a}, {b}): {r:?}");
    }
}

#[test]
fn crossing_rows_bounded_by_delta_in_region_for_balanced_params() {
    // at α = β the gap is √(t²−1), which the printed Δ = 2(t−1) only undercuts for t < 5/3
    for t in [1.2, 1.5, 1.6] {
        let q = NchoParams::new(t, t).unwrap();
        for row in crossing_report(Branch::One, 3, &[q], 1e-9) {
            let widths = row.plus.unwrap().width() + row.minus.unwrap().width();
            assert!(row.certified_no_crossing);
            assert!(row.gap_interval.unwrap().lo >= row.delta - widths);
        }
    }
}

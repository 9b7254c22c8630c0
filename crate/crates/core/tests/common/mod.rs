//! Test-only oracles, independent of the library's Sturm/bisection path.
#![allow(dead_code)]

use rand::Rng;

/// Leading principal minors `p_0(x), …, p_n(x)` of `det(T − xI)` via the
/// three-term recursion `p_k = (d_k − x) p_{k−1} − e_{k−1}² p_{k−2}`.
fn char_poly(d: &[f64], e: &[f64], k: usize, x: f64) -> f64 {
    let mut prev2 = 1.0;
    let mut prev = d[0] - x;
    for i in 1..k {
        let cur = (d[i] - x) * prev - e[i - 1] * e[i - 1] * prev2;
        prev2 = prev;
        prev = cur;
    }
    prev
}

/// Bisection for the `j`-th root of `p(x) = ∏(λ_i − x)` inside `[lo, hi]`.
///
/// Just left of its `j`-th root such a polynomial has sign `(−1)^j`, so only
/// the sign at the midpoint is needed; the bracket ends are never evaluated.
fn bisect_root(f: impl Fn(f64) -> f64, j: usize, mut lo: f64, mut hi: f64) -> f64 {
    let left_positive = j % 2 == 0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == left_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of the characteristic polynomial, ascending.
///
/// Uses Cauchy interlacing: with nonzero off-diagonals, the `j`-th root of the
/// order-`k` minor lies between the `(j−1)`-th and `j`-th roots of the
/// order-`k−1` minor (open-ended at the extremes). Requires all off-diagonals
/// nonzero.
pub fn char_poly_roots(d: &[f64], e: &[f64]) -> Vec<f64> {
    assert!(
        e.iter().all(|&x| x != 0.0),
        "oracle needs an unreduced matrix"
    );
    let n = d.len();
    let radius = d.iter().map(|x| x.abs()).fold(0.0, f64::max)
        + 2.0 * e.iter().map(|x| x.abs()).fold(0.0, f64::max)
        + 1.0;

    let mut roots = vec![d[0]];
    for k in 2..=n {
        let mut fences = Vec::with_capacity(k + 1);
        fences.push(-radius);
        fences.extend_from_slice(&roots);
        fences.push(radius);
        roots = fences
            .windows(2)
            .enumerate()
            .map(|(j, w)| bisect_root(|x| char_poly(d, e, k, x), j, w[0], w[1]))
            .collect();
    }
    roots
}

/// Cyclic Jacobi rotations on a dense symmetric matrix: eigenvalues ascending
/// with their eigenvectors (as columns of the returned row-major matrix).
pub fn dense_symmetric_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n)
        .map(|r| order.iter().map(|&c| v[r][c]).collect())
        .collect();
    (values, vectors)
}

pub fn dense_from_tridiag(d: &[f64], e: &[f64]) -> Vec<Vec<f64>> {
    let n = d.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = d[i];
        if i + 1 < n {
            a[i][i + 1] = e[i];
            a[i + 1][i] = e[i];
        }
    }
    a
}

/// Random unreduced symmetric tridiagonal matrix: diagonal in `[-5, 5]`,
/// off-diagonal magnitudes in `[0.1, 3]` with random sign.
pub fn random_tridiag(rng: &mut impl Rng, dim: usize) -> (Vec<f64>, Vec<f64>) {
    let d = (0..dim).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let e = (0..dim.saturating_sub(1))
        .map(|_| {
            let m: f64 = rng.gen_range(0.1..3.0);
            if rng.gen_bool(0.5) {
                m
            } else {
                -m
            }
        })
        .collect();
    (d, e)
}

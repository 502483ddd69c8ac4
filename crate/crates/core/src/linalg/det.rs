//! Determinant kernels: fraction-free elimination for exact values and
//! partially pivoted elimination in floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::rational;

/// Exact determinant. Each row is cleared of denominators, the integer
/// matrix is reduced with Bareiss elimination, and the scale is divided out.
pub fn det_exact(m: &Matrix) -> BigRational {
    let n = m.n();
    let mut scale = BigInt::one();
    let mut work = Vec::with_capacity(n * n);
    for row in m.rows() {
        let d = rational::common_denominator(row);
        for v in row {
            work.push(v.numer() * (&d / v.denom()));
        }
        scale *= d;
    }
    BigRational::new(det_bigint(n, work), scale)
}

/// Bareiss elimination over the integers; consumes its workspace.
pub fn det_bigint(n: usize, mut a: Vec<BigInt>) -> BigInt {
    debug_assert_eq!(a.len(), n * n);
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(p) => {
                    for j in 0..n {
                        a.swap(k * n + j, p * n + j);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Bareiss elimination in `i128` with overflow detection. `None` means some
/// intermediate minor left the `i128` range; callers fall back to
/// [`det_bigint`].
pub fn det_i128(n: usize, a: &mut [i128]) -> Option<i128> {
    debug_assert_eq!(a.len(), n * n);
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                Some(p) => {
                    for j in 0..n {
                        a.swap(k * n + j, p * n + j);
                    }
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { d.checked_neg()? } else { d })
}

/// Floating determinant of `m` via its double view.
pub fn det_float(m: &Matrix) -> f64 {
    let mut data = m.to_f64();
    det_f64(m.n(), &mut data)
}

/// Gaussian elimination with partial pivoting, in place. Never panics on
/// non-finite data; the result then follows IEEE semantics.
pub fn det_f64(n: usize, a: &mut [f64]) -> f64 {
    debug_assert_eq!(a.len(), n * n);
    let mut det = 1.0;
    for k in 0..n {
        let mut pivot_row = k;
        let mut best = a[k * n + k].abs();
        for i in k + 1..n {
            let v = a[i * n + k].abs();
            if v > best {
                best = v;
                pivot_row = i;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot_row != k {
            for j in 0..n {
                a.swap(k * n + j, pivot_row * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            if factor != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
    }
    det
}

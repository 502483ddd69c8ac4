//! Exact `|det|` evaluation for arrangements of a fixed entry multiset.
//! Entries are scaled to integers by their common denominator `D`, so the
//! true determinant is the integer determinant divided by `Dⁿ`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::linalg::{det_bigint, det_i128, Matrix};
use crate::rational;

/// Absolute value of a scaled integer determinant. `Big` is only used for
/// magnitudes outside `i128`, so every `Big` exceeds every `Small`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum AbsDet {
    Small(i128),
    Big(BigInt),
}

impl AbsDet {
    fn from_bigint(v: BigInt) -> Self {
        let v = v.abs();
        match v.to_i128() {
            Some(s) => AbsDet::Small(s),
            None => AbsDet::Big(v),
        }
    }

    pub(crate) fn to_bigint(&self) -> BigInt {
        match self {
            AbsDet::Small(v) => BigInt::from(*v),
            AbsDet::Big(v) => v.clone(),
        }
    }

    pub(crate) fn to_f64(&self) -> f64 {
        match self {
            AbsDet::Small(v) => *v as f64,
            AbsDet::Big(v) => v.to_f64().unwrap_or(f64::INFINITY),
        }
    }
}

impl Ord for AbsDet {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (AbsDet::Small(a), AbsDet::Small(b)) => a.cmp(b),
            (AbsDet::Big(a), AbsDet::Big(b)) => a.cmp(b),
            (AbsDet::Big(_), AbsDet::Small(_)) => Ordering::Greater,
            (AbsDet::Small(_), AbsDet::Big(_)) => Ordering::Less,
        }
    }
}

impl PartialOrd for AbsDet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Largest scaled entry magnitude for which the cofactor formulas for
/// `n ≤ 4` cannot overflow `i128` (24 terms of 4 factors below 2^30 each).
const COFACTOR_LIMIT: i128 = 1 << 30;

pub(crate) struct Kernel {
    pub n: usize,
    /// Distinct entry values, ascending; arrangements index into this.
    pub values: Vec<BigRational>,
    scaled_big: Vec<BigInt>,
    scaled_small: Option<Vec<i128>>,
    cofactor_ok: bool,
    /// `Dⁿ`
    scale_pow: BigInt,
}

impl Kernel {
    pub fn new(n: usize, values: Vec<BigRational>) -> Self {
        let d = rational::common_denominator(values.iter());
        let scaled_big: Vec<BigInt> = values
            .iter()
            .map(|v| v.numer() * (&d / v.denom()))
            .collect();
        let scaled_small: Option<Vec<i128>> = scaled_big
            .iter()
            .map(|v| v.to_i64().map(i128::from))
            .collect();
        let cofactor_ok = n <= 4
            && scaled_small
                .as_ref()
                .is_some_and(|s| s.iter().all(|v| v.abs() < COFACTOR_LIMIT));
        let scale_pow = num_traits::pow(d, n);
        Self {
            n,
            values,
            scaled_big,
            scaled_small,
            cofactor_ok,
            scale_pow,
        }
    }

    pub fn abs_det(&self, ranks: &[u16], buf: &mut Vec<i128>) -> AbsDet {
        let n = self.n;
        if let Some(small) = &self.scaled_small {
            buf.clear();
            buf.extend(ranks.iter().map(|&r| small[r as usize]));
            if self.cofactor_ok {
                return AbsDet::Small(cofactor_det(n, buf).abs());
            }
            if let Some(v) = det_i128(n, buf) {
                if let Some(a) = v.checked_abs() {
                    return AbsDet::Small(a);
                }
            }
        }
        let big: Vec<BigInt> = ranks
            .iter()
            .map(|&r| self.scaled_big[r as usize].clone())
            .collect();
        AbsDet::from_bigint(det_bigint(n, big))
    }

    pub fn to_rational(&self, d: &AbsDet) -> BigRational {
        BigRational::new(d.to_bigint(), self.scale_pow.clone())
    }

    pub fn matrix(&self, ranks: &[u16]) -> Matrix {
        Matrix::from_vec(
            self.n,
            ranks.iter().map(|&r| self.values[r as usize].clone()).collect(),
        )
        .expect("arrangement has n^2 entries")
    }
}

/// Division-free determinant for `n ≤ 4`.
fn cofactor_det(n: usize, a: &[i128]) -> i128 {
    match n {
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        4 => {
            // Laplace expansion along the first two rows.
            let m = |r: usize, c1: usize, c2: usize| a[r * 4 + c1] * a[(r + 1) * 4 + c2] - a[r * 4 + c2] * a[(r + 1) * 4 + c1];
            m(0, 0, 1) * m(2, 2, 3) - m(0, 0, 2) * m(2, 1, 3) + m(0, 0, 3) * m(2, 1, 2)
                + m(0, 1, 2) * m(2, 0, 3) - m(0, 1, 3) * m(2, 0, 2) + m(0, 2, 3) * m(2, 0, 1)
        }
        _ => unreachable!("cofactor path is limited to n <= 4"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det_exact;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn cofactor_matches_bareiss(n in 2usize..=4, vals in proptest::collection::vec(-1000i64..1000, 16)) {
            let a: Vec<i128> = vals[..n * n].iter().map(|&v| v as i128).collect();
            let mut b = a.clone();
            prop_assert_eq!(Some(cofactor_det(n, &a)), det_i128(n, &mut b));
        }

        #[test]
        fn kernel_matches_det_exact(
            n in 2usize..=5,
            nums in proptest::collection::vec(-50i64..50, 25),
            den in 1i64..6,
        ) {
            let mut values: Vec<BigRational> = nums[..n * n]
                .iter()
                .map(|&v| BigRational::new(v.into(), den.into()))
                .collect();
            values.sort();
            values.dedup();
            let kernel = Kernel::new(n, values.clone());
            let ranks: Vec<u16> = nums[..n * n]
                .iter()
                .map(|&v| {
                    let x = BigRational::new(v.into(), den.into());
                    values.binary_search(&x).unwrap() as u16
                })
                .collect();
            let m = kernel.matrix(&ranks);
            let mut buf = Vec::new();
            let got = kernel.to_rational(&kernel.abs_det(&ranks, &mut buf));
            prop_assert_eq!(got, det_exact(&m).abs());
        }
    }

    #[test]
    fn huge_entries_fall_back_to_bigint() {
        let big = BigRational::from_integer(BigInt::from(10).pow(30));
        let values = vec![rational::from_int(0), big.clone()];
        let kernel = Kernel::new(2, values);
        let mut buf = Vec::new();
        let d = kernel.abs_det(&[1, 0, 0, 1], &mut buf);
        assert!(matches!(d, AbsDet::Big(_)));
        assert_eq!(kernel.to_rational(&d), &big * &big);
    }
}

//! Closed forms for `xI + yJ`: eigenvalue `x` with multiplicity `n − 1`
//! and the simple eigenvalue `x + ny`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::rational::{self, format_rational};

/// `det(xI + yJ) = x^(n−1) (x + ny)`.
pub fn shifted_identity_det(x: &BigRational, y: &BigRational, n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("n = {n}")));
    }
    let nr = rational::from_int(n as i64);
    Ok(rational::pow(x, n - 1) * (x + &nr * y))
}

/// `(xI + yJ)⁻¹ = (1/x) I − y/(x(x + ny)) J`, defined iff `x ∉ {0, −ny}`.
pub fn shifted_identity_inverse(x: &BigRational, y: &BigRational, n: usize) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("n = {n}")));
    }
    let tail = x + rational::from_int(n as i64) * y;
    if x.is_zero() || tail.is_zero() {
        return Err(Error::SingularShiftedIdentity {
            x: format_rational(x),
            y: format_rational(y),
            n,
        });
    }
    let diag = BigRational::one() / x;
    let off = -(y / (x * tail));
    Matrix::shifted_identity(&diag, &off, n)
}

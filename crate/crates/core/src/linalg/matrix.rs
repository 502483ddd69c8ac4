use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational;

/// Dense square matrix with exact rational entries, stored row-major.
///
/// Construction rejects non-square input and `n < 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl Matrix {
    pub fn from_vec(n: usize, entries: Vec<BigRational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(format!("n = {n}")));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidDimension(format!(
                "{} entries for n = {n}",
                entries.len()
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidDimension(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        Self::from_vec(n, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rational::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn from_i64(n: usize, values: &[i64]) -> Result<Self> {
        Self::from_vec(n, values.iter().map(|&v| rational::from_int(v)).collect())
    }

    /// Each double is converted to the rational it represents exactly.
    pub fn from_f64(n: usize, values: &[f64]) -> Result<Self> {
        let entries = values
            .iter()
            .map(|&v| {
                rational::from_f64(v)
                    .ok_or_else(|| Error::InvalidParameter(format!("non-finite entry {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vec(n, entries)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::from_vec(n, entries)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| BigRational::one())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| BigRational::zero())
    }

    /// `xI + yJ`.
    pub fn shifted_identity(x: &BigRational, y: &BigRational, n: usize) -> Result<Self> {
        Self::from_fn(n, |i, j| if i == j { x + y } else { y.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[BigRational] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = &BigRational> {
        self.entries.iter().skip(col).step_by(self.n)
    }

    /// Row-major floating view.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(rational::to_f64).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Self {
            n,
            entries: (0..n * n)
                .map(|k| self.entries[(k % n) * n + k / n].clone())
                .collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.n;
        Self::from_fn(n, |i, j| {
            (0..n).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    /// `M Mᵀ`
    pub fn gram(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(
                    self.row(i)
                        .iter()
                        .zip(self.row(j))
                        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b),
                );
            }
        }
        Self { n, entries }
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }

    /// Integer entries, if every entry is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|v| v.is_integer().then(|| v.numer().clone()))
            .collect()
    }

    pub fn check_same_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Real `2n × 2n` embedding `[[A, B], [-B, A]]` of `A + iB`.
    pub fn complex_embedding(real: &Matrix, imag: &Matrix) -> Result<Matrix> {
        real.check_same_dim(imag)?;
        let n = real.n;
        Self::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => real.get(i, j).clone(),
            (true, false) => imag.get(i, j - n).clone(),
            (false, true) => -imag.get(i - n, j),
            (false, false) => real.get(i - n, j - n).clone(),
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(rational::format_rational).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_ragged() {
        assert!(matches!(
            Matrix::from_i64_rows(&[&[1]]),
            Err(Error::InvalidDimension(_))
        ));
        assert!(matches!(
            Matrix::from_i64_rows(&[&[1, 2], &[3]]),
            Err(Error::InvalidDimension(_))
        ));
        assert!(Matrix::from_i64(2, &[1, 2, 3]).is_err());
    }

    #[test]
    fn transpose_and_gram() {
        let m = Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(m.transpose(), Matrix::from_i64_rows(&[&[1, 0], &[1, 1]]).unwrap());
        assert_eq!(m.gram(), Matrix::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap());
        assert_eq!(m.mul(&m.transpose()).unwrap(), m.gram());
    }

    #[test]
    fn float_view_round_trips() {
        let values = [0.1, -2.5, 1e300, 3.0f64.sqrt()];
        let m = Matrix::from_f64(2, &values).unwrap();
        for (a, b) in m.to_f64().iter().zip(values) {
            assert!((a - b).abs() <= 1e-15 * b.abs());
        }
        assert!(Matrix::from_f64(2, &[f64::NAN, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn complex_embedding_layout() {
        let a = Matrix::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        let b = Matrix::from_i64_rows(&[&[5, 6], &[7, 8]]).unwrap();
        let e = Matrix::complex_embedding(&a, &b).unwrap();
        assert_eq!(e.n(), 4);
        assert_eq!(e.row(0), Matrix::from_i64(4, &[1, 2, 5, 6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap().row(0));
        assert_eq!(*e.get(2, 1), rational::from_int(-6));
        assert_eq!(*e.get(3, 3), rational::from_int(4));
    }
}

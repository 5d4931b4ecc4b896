use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{IntPoly, LatticeError};

/// Dense integer matrix. Acting on column vectors, so column `j` is the image
/// of the `j`-th basis vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal(d: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, BigInt::from(v));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<IntMatrix, LatticeError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LatticeError::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Result<IntMatrix, LatticeError> {
        Ok(IntMatrix::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries as `i64`; panics if an entry does not fit.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| i64::try_from(self.get(i, j)).expect("entry fits i64")).collect())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.cols != o.rows {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = out.get(i, j) + a * o.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * k).collect() }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v[j])).collect()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).fold(BigInt::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Bilinear pairing `u^T self v`.
    pub fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
    /// recursion; every division is exact over the integers.
    pub fn char_poly(&self) -> Result<IntPoly, LatticeError> {
        if !self.is_square() {
            return Err(LatticeError::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = IntMatrix::zeros(n, n);
        let id = IntMatrix::identity(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
            m = self.mul(&m)?.add(&id.scale(&coeffs[n - k + 1]));
            let am = self.mul(&m)?;
            let t = am.trace();
            let kk = BigInt::from(k);
            debug_assert!((&t % &kk).is_zero());
            coeffs[n - k] = -(t / kk);
        }
        Ok(IntPoly::new(coeffs))
    }

    /// `p(M)` by Horner evaluation.
    pub fn eval_poly(&self, p: &IntPoly) -> Result<IntMatrix, LatticeError> {
        let n = self.rows;
        let id = IntMatrix::identity(n);
        let mut acc = IntMatrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc)?.add(&id.scale(c));
        }
        Ok(acc)
    }

    /// `M^T G M == G`.
    pub fn preserves(&self, gram: &IntMatrix) -> Result<bool, LatticeError> {
        Ok(self.transpose().mul(gram)?.mul(self)? == *gram)
    }

    /// Matrix of `self` on the sublattice spanned by the columns of `basis`,
    /// provided the sublattice is invariant and the result is integral.
    pub fn restrict(&self, basis: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        let images = self.mul(basis)?;
        let k = basis.cols;
        let mut out = IntMatrix::zeros(k, k);
        for j in 0..k {
            let coords = solve_coordinates(basis, &images.column(j)).ok_or_else(|| {
                LatticeError::NotInvariant(format!("image of basis vector {j} leaves the sublattice"))
            })?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    /// Entries reduced to 0/1.
    pub fn mod2(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| u8::from(!(self.get(i, j) % 2i32).is_zero())).collect()).collect()
    }

    /// Whether every diagonal entry is even.
    pub fn is_even(&self) -> bool {
        (0..self.rows).all(|i| (self.get(i, i) % 2i32).is_zero())
    }
}

/// Integer coordinates of `v` in the column basis `basis`, if they exist.
pub fn solve_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let (n, k) = (basis.rows(), basis.cols());
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                (0..k).map(|j| BigRational::from_integer(basis.get(i, j).clone())).collect();
            row.push(BigRational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let p = (r..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(r, p);
        let inv = aug[r][c].recip();
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..=k {
                    let t = &f * &aug[r][j];
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    // Remaining rows must be consistent.
    if aug[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let coords: Vec<BigRational> = (0..k).map(|i| aug[i][k].clone()).collect();
    coords.iter().all(BigRational::is_integer).then(|| coords.iter().map(BigRational::to_integer).collect())
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_small() {
        assert_eq!(IntMatrix::identity(3).char_poly().unwrap(), IntPoly::linear(1).pow(3));
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.char_poly().unwrap(), IntPoly::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn restrict_to_invariant_sublattice() {
        // Swap of two coordinates restricted to the span of (1, 1).
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let b = IntMatrix::from_columns(&[vec![1, 1]]).unwrap();
        assert_eq!(m.restrict(&b).unwrap(), IntMatrix::identity(1));
        let c = IntMatrix::from_columns(&[vec![1, 0]]).unwrap();
        assert!(m.restrict(&c).is_err());
    }
}

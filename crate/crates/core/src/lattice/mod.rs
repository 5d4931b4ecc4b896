//! Exact lattice computations on `Z^{1,10}` and its `E10` sublattice.

mod intmatrix;
mod intpoly;
pub mod mod2;
mod roots;
mod salem;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

pub use intmatrix::{solve_coordinates, IntMatrix};
pub use intpoly::IntPoly;
pub use mod2::{
    enumerate_lagrangians, lagrangian_classes, mod2_action_analysis, mod2_reduce_and_factor, BitMatrix, Lagrangian,
    Mod2Action, Mod2QuadSpace, Subspace,
};
pub use roots::{
    dynamical_degree, parse_rational, real_roots, strip_cyclotomic, Certification, Interval, SpectralRadius,
};
pub use salem::{expand_trace, salem_certify, sign_vector_target, trace_polynomial, SalemCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("spectral radius not certified as a real eigenvalue: {0}")]
    SpectralRadiusNotRealCertified(String),
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("polynomial has odd degree")]
    OddDegree,
    #[error("not a Salem polynomial: {0}")]
    NotSalem(String),
    #[error("matrix does not preserve the Gram matrix")]
    NotIsometry,
    #[error("sublattice is not invariant: {0}")]
    NotInvariant(String),
    #[error("Gram matrix is not even")]
    NotEven,
    #[error("expected a nondegenerate space of even dimension, found dimension {found} (reference {expected})")]
    WrongDimension { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Gram matrix `diag(1, -1, ..., -1)` of `Z^{1,10}` on `H, E1, ..., E10`.
pub fn gram_z110() -> IntMatrix {
    let mut d = vec![-1i64; 11];
    d[0] = 1;
    IntMatrix::diagonal(&d)
}

/// Canonical class `K = -3H + E1 + ... + E10`.
pub fn canonical_class() -> Vec<BigInt> {
    let mut k = vec![BigInt::from(1); 11];
    k[0] = BigInt::from(-3);
    k
}

/// Matrix of the Coxeter element on `H, E1, ..., E10`:
/// `H -> 2H - E2 - E3 - E4`, `E1 -> H - E3 - E4`, `E2 -> H - E2 - E4`,
/// `E3 -> H - E2 - E3`, `En -> E(n+1)` for `4 <= n <= 9`, `E10 -> E1`.
pub fn coxeter_matrix() -> IntMatrix {
    let mut cols = vec![vec![0i64; 11]; 11];
    cols[0] = vec![2, 0, -1, -1, -1, 0, 0, 0, 0, 0, 0];
    cols[1] = vec![1, 0, 0, -1, -1, 0, 0, 0, 0, 0, 0];
    cols[2] = vec![1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 0];
    cols[3] = vec![1, 0, -1, -1, 0, 0, 0, 0, 0, 0, 0];
    for n in 4..=9 {
        cols[n][n + 1] = 1;
    }
    cols[10][1] = 1;
    IntMatrix::from_columns(&cols).expect("square")
}

/// Parses integer row vectors, one per line; `#` starts a comment.
pub fn parse_int_rows(text: &str) -> Result<Vec<Vec<i64>>, LatticeError> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<i64>, _> = line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|e| LatticeError::Parse { line: i + 1, msg: e.to_string() })?);
    }
    Ok(rows)
}

/// The `E10` sublattice `K^⊥` with its chosen basis.
#[derive(Clone, Debug)]
pub struct E10 {
    /// Basis vectors as columns, coordinates on `H, E1, ..., E10`.
    pub basis: IntMatrix,
    /// Gram matrix on the basis.
    pub gram: IntMatrix,
}

impl E10 {
    /// Builds from basis rows (each a vector in `Z^{1,10}`), checking that
    /// they are orthogonal to `K` and span a unimodular lattice.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<E10, LatticeError> {
        if rows.len() != 10 || rows.iter().any(|r| r.len() != 11) {
            return Err(LatticeError::DimensionMismatch(format!(
                "expected 10 rows of length 11, found {}",
                rows.len()
            )));
        }
        let basis = IntMatrix::from_columns(rows)?;
        let g = gram_z110();
        let k = canonical_class();
        for j in 0..10 {
            if g.pair(&k, &basis.column(j)) != BigInt::from(0) {
                return Err(LatticeError::NotInvariant(format!("basis vector {j} is not orthogonal to K")));
            }
        }
        let gram = basis.transpose().mul(&g)?.mul(&basis)?;
        let det = gram.char_poly()?.coeff(0).abs();
        if det != BigInt::from(1) {
            return Err(LatticeError::NotInvariant(format!("basis spans a sublattice of discriminant {det}")));
        }
        Ok(E10 { basis, gram })
    }

    pub fn parse(text: &str) -> Result<E10, LatticeError> {
        E10::from_rows(&parse_int_rows(text)?)
    }

    /// Matrix of an isometry of `Z^{1,10}` fixing `K`, on the `E10` basis.
    pub fn restrict(&self, m: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        m.restrict(&self.basis)
    }

    /// Coordinates on the `E10` basis of a vector of `K^⊥`.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        solve_coordinates(&self.basis, v)
    }

    /// Reference vector `10H - 3(E1 + ... + E10)` of norm 10 in `K^⊥`,
    /// inside the half-cone containing `H` and its images.
    pub fn reference_vector(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(-3); 11];
        v[0] = BigInt::from(10);
        self.coordinates(&v).expect("reference vector lies in K^perp")
    }
}

/// Result of the parity check on a Gram matrix.
#[derive(Clone, Debug)]
pub struct ParityWitness {
    pub even: bool,
    /// Diagonal entries, the norms of the basis vectors.
    pub diagonal: Vec<i64>,
}

/// Evenness of a Gram matrix: an even lattice scaled by 2 has all norms
/// divisible by 4, so it has no vectors of norm -2.
pub fn e10_parity_check(gram: &IntMatrix) -> ParityWitness {
    let diagonal = (0..gram.rows()).map(|i| i64::try_from(gram.get(i, i)).expect("small entry")).collect();
    ParityWitness { even: gram.is_even(), diagonal }
}

/// Reflection `v -> v + (v.r) r` in a root `r` of norm -2, as a matrix on
/// the basis with Gram matrix `gram`.
pub fn reflection(gram: &IntMatrix, root: &[i64]) -> IntMatrix {
    let n = gram.rows();
    let r: Vec<BigInt> = root.iter().map(|&x| BigInt::from(x)).collect();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[j] = BigInt::from(1);
        let c = gram.pair(&e, &r);
        for i in 0..n {
            let v = m.get(i, j) + &c * &r[i];
            m.set(i, j, v);
        }
    }
    m
}

/// Membership in the 2-congruence subgroup: an isometry preserving the
/// positive cone that is the identity mod 2.
pub fn weyl2_membership(m: &IntMatrix, e10: &E10) -> Result<bool, LatticeError> {
    if !m.preserves(&e10.gram)? {
        return Err(LatticeError::NotIsometry);
    }
    let trivial_mod2 = BitMatrix::from_int(m).is_identity();
    let r = e10.reference_vector();
    let image = m.mul_vec(&r);
    let preserves_cone = e10.gram.pair(&image, &r).is_positive();
    Ok(trivial_mod2 && preserves_cone)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard_e10() -> E10 {
        E10::parse(include_str!("../../data/e10_basis.dat")).unwrap()
    }

    #[test]
    fn coxeter_columns() {
        let w = coxeter_matrix();
        let e5: Vec<BigInt> = (0..11).map(|i| BigInt::from(i64::from(i == 5))).collect();
        assert_eq!(w.column(4), e5);
        assert_eq!(w.mul_vec(&canonical_class()), canonical_class());
        assert!(w.preserves(&gram_z110()).unwrap());
    }

    #[test]
    fn e10_gram_is_even_with_norm_minus_two_roots() {
        let e = standard_e10();
        let parity = e10_parity_check(&e.gram);
        assert!(parity.even);
        assert!(parity.diagonal.iter().all(|&d| d == -2));
        assert!(!e10_parity_check(&gram_z110()).even);
    }

    #[test]
    fn reference_vector_orientation() {
        let e = standard_e10();
        let r = e.reference_vector();
        assert_eq!(e.gram.pair(&r, &r), BigInt::from(10));
    }

    #[test]
    fn weyl2_examples() {
        let e = standard_e10();
        assert!(weyl2_membership(&IntMatrix::identity(10), &e).unwrap());
        let w = e.restrict(&coxeter_matrix()).unwrap();
        assert!(!weyl2_membership(&w, &e).unwrap());
        let mut root = vec![0i64; 10];
        root[0] = 1;
        let s = reflection(&e.gram, &root);
        assert!(s.preserves(&e.gram).unwrap());
        assert!(!weyl2_membership(&s, &e).unwrap());
        let neg = IntMatrix::identity(10).scale(&BigInt::from(-1));
        assert!(!weyl2_membership(&neg, &e).unwrap());
        let bad = IntMatrix::diagonal(&[2, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(weyl2_membership(&bad, &e).unwrap_err(), LatticeError::NotIsometry);
    }
}

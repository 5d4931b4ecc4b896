//! Quadratic spaces over GF(2) of dimension at most 16.

use std::collections::HashSet;

use num_traits::Zero;

use crate::gf2m::Field;
use crate::lattice::{IntMatrix, IntPoly, LatticeError};
use crate::poly::UniPoly;

/// Linear map on `GF(2)^n`, stored by the images of the basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    n: usize,
    cols: Vec<u16>,
}

impl BitMatrix {
    pub fn identity(n: usize) -> BitMatrix {
        BitMatrix { n, cols: (0..n).map(|i| 1u16 << i).collect() }
    }

    pub fn zero(n: usize) -> BitMatrix {
        BitMatrix { n, cols: vec![0; n] }
    }

    /// Reduction of an integer matrix acting on column vectors.
    pub fn from_int(m: &IntMatrix) -> BitMatrix {
        let bits = m.mod2();
        let n = m.rows();
        let cols = (0..n).map(|j| (0..n).fold(0u16, |acc, i| acc | (u16::from(bits[i][j]) << i))).collect();
        BitMatrix { n, cols }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn apply(&self, v: u16) -> u16 {
        let mut acc = 0;
        let mut v = v;
        while v != 0 {
            let i = v.trailing_zeros() as usize;
            acc ^= self.cols[i];
            v &= v - 1;
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix { n: self.n, cols: other.cols.iter().map(|&c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        BitMatrix { n: self.n, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a ^ b).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == BitMatrix::identity(self.n)
    }

    /// Multiplicative order, if the map is invertible.
    pub fn order(&self) -> Option<u64> {
        let mut p = self.clone();
        // Element orders in GL_n(2) are below 2^n.
        for k in 1..=(1u64 << self.n) {
            if p.is_identity() {
                return Some(k);
            }
            p = self.compose(&p);
        }
        None
    }

    /// `p(self)` for a polynomial over GF(2).
    pub fn eval_poly(&self, p: &UniPoly) -> BitMatrix {
        let mut acc = BitMatrix::zero(self.n);
        for &c in p.coeffs().iter().rev() {
            acc = self.compose(&acc);
            if c != 0 {
                acc = acc.add(&BitMatrix::identity(self.n));
            }
        }
        acc
    }

    /// Kernel as a canonical echelon basis.
    pub fn kernel(&self) -> Subspace {
        let mut s = Subspace::zero(self.n);
        for v in 1..(1u32 << self.n) {
            let v = v as u16;
            if self.apply(v) == 0 {
                s.insert(v);
            }
        }
        s
    }
}

/// Subspace of `GF(2)^n` in reduced row echelon form: rows sorted by pivot
/// (highest set bit) descending, each pivot bit cleared in every other row.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Subspace {
    n: usize,
    rows: Vec<u16>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    pub fn span(n: usize, vs: &[u16]) -> Subspace {
        let mut s = Subspace::zero(n);
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[u16] {
        &self.rows
    }

    pub fn reduce(&self, mut v: u16) -> u16 {
        for &r in &self.rows {
            let pivot = 15 - r.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn contains(&self, v: u16) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: u16) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pivot = 15 - v.leading_zeros();
        for r in self.rows.iter_mut() {
            if *r >> pivot & 1 == 1 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    /// Every member, including zero.
    pub fn members(&self) -> Vec<u16> {
        let mut out = vec![0u16];
        for &r in &self.rows {
            let more: Vec<u16> = out.iter().map(|&m| m ^ r).collect();
            out.extend(more);
        }
        out
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut sum = self.clone();
        for &r in &other.rows {
            sum.insert(r);
        }
        self.dim() + other.dim() - sum.dim()
    }

    pub fn is_invariant(&self, m: &BitMatrix) -> bool {
        self.rows.iter().all(|&r| self.contains(m.apply(r)))
    }
}

/// Quadratic form on `GF(2)^n`: `q(v) = sum q_i v_i + sum_{i<j} b_ij v_i v_j`.
#[derive(Clone, Debug)]
pub struct Mod2QuadSpace {
    n: usize,
    /// Value of `q` at every vector.
    table: Vec<u8>,
    /// Row `i` of the polar bilinear form, as a bit mask.
    polar: Vec<u16>,
}

impl Mod2QuadSpace {
    /// The form `v -> (v^T G v / 2) mod 2` of an even integral Gram matrix.
    pub fn from_even_gram(gram: &IntMatrix) -> Result<Mod2QuadSpace, LatticeError> {
        let n = gram.rows();
        if !gram.is_square() || n > 16 {
            return Err(LatticeError::DimensionMismatch(format!("{n}-dimensional Gram matrix")));
        }
        if !gram.is_even() {
            return Err(LatticeError::NotEven);
        }
        let g = gram.to_i64_rows();
        let diag: Vec<u8> = (0..n).map(|i| (g[i][i] / 2).rem_euclid(2) as u8).collect();
        let polar: Vec<u16> = (0..n)
            .map(|i| (0..n).fold(0u16, |acc, j| acc | (((g[i][j].rem_euclid(2)) as u16 & u16::from(i != j)) << j)))
            .collect();
        let mut table = vec![0u8; 1 << n];
        for v in 1usize..(1 << n) {
            // q(v) = q(v - e_i) + q(e_i) + b(v - e_i, e_i) for the lowest bit i.
            let i = v.trailing_zeros() as usize;
            let rest = v & (v - 1);
            let b = ((polar[i] as usize & rest).count_ones() & 1) as u8;
            table[v] = table[rest] ^ diag[i] ^ b;
        }
        Ok(Mod2QuadSpace { n, table, polar })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self, v: u16) -> u8 {
        self.table[v as usize]
    }

    pub fn b(&self, u: u16, v: u16) -> u8 {
        (self.dual(u) & v).count_ones() as u8 & 1
    }

    /// Mask `d` with `b(u, v) = parity(d & v)`.
    pub fn dual(&self, u: u16) -> u16 {
        let mut acc = 0;
        let mut u = u;
        while u != 0 {
            acc ^= self.polar[u.trailing_zeros() as usize];
            u &= u - 1;
        }
        acc
    }

    /// Number of vectors (including zero) with `q = 0`.
    pub fn zero_count(&self) -> usize {
        self.table.iter().filter(|&&x| x == 0).count()
    }

    /// Arf invariant of a nondegenerate form: 0 (plus type) exactly when the
    /// form has `2^(n-1) + 2^(n/2 - 1)` zeros.
    pub fn arf(&self) -> Option<u8> {
        let half = 1usize << (self.n / 2 - 1);
        let base = 1usize << (self.n - 1);
        match self.zero_count() {
            z if z == base + half => Some(0),
            z if z == base - half => Some(1),
            _ => None,
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        (1u32..(1 << self.n)).all(|v| self.dual(v as u16) != 0)
    }

    pub fn is_totally_singular(&self, s: &Subspace) -> bool {
        s.members().iter().all(|&v| self.q(v) == 0)
    }

    pub fn preserves(&self, m: &BitMatrix) -> bool {
        (0u32..(1 << self.n)).all(|v| self.q(m.apply(v as u16)) == self.q(v as u16))
    }
}

/// A maximal totally singular subspace (half the ambient dimension).
pub type Lagrangian = Subspace;

/// Every maximal totally singular subspace, sorted canonically.
///
/// Builds all totally singular subspaces level by level: each `k`-space is
/// extended by the singular vectors of its orthogonal complement, and the
/// results are deduplicated by their echelon form.
pub fn enumerate_lagrangians(space: &Mod2QuadSpace) -> Result<Vec<Lagrangian>, LatticeError> {
    let n = space.dim();
    if !n.is_multiple_of(2) || n == 0 || !space.is_nondegenerate() {
        return Err(LatticeError::WrongDimension { expected: 10, found: n });
    }
    let singular: Vec<u16> = (1u32..(1 << n)).map(|v| v as u16).filter(|&v| space.q(v) == 0).collect();
    let mut level: Vec<Subspace> = vec![Subspace::zero(n)];
    for _ in 0..n / 2 {
        let mut next: HashSet<Subspace> = HashSet::new();
        for s in &level {
            let duals: Vec<u16> = s.basis().iter().map(|&r| space.dual(r)).collect();
            for &v in &singular {
                if duals.iter().any(|&d| (d & v).count_ones() & 1 == 1) || s.contains(v) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(v);
                next.insert(t);
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

/// Splits Lagrangians into the two families: same family as the reference
/// iff the intersection dimension has the parity of `n / 2`.
pub fn lagrangian_classes(all: &[Lagrangian], reference: &Lagrangian) -> (Vec<usize>, Vec<usize>) {
    let half = reference.dim();
    let (mut same, mut other) = (Vec::new(), Vec::new());
    for (i, l) in all.iter().enumerate() {
        if (l.intersection_dim(reference) + half).is_multiple_of(2) {
            same.push(i);
        } else {
            other.push(i);
        }
    }
    (same, other)
}

/// Reduction of an integer polynomial mod 2, factored over GF(2) with
/// multiplicities and sorted canonically.
pub fn mod2_reduce_and_factor(p: &IntPoly) -> Vec<(UniPoly, usize)> {
    let f2 = Field::canonical(1).expect("GF(2)");
    let bits: Vec<u64> = p.coeffs().iter().map(|c| u64::from(!(c % 2i32).is_zero())).collect();
    let reduced = UniPoly::new(f2, bits);
    if reduced.is_zero() {
        return Vec::new();
    }
    let mut factors = reduced.factor();
    factors.sort_by(|a, b| crate::poly::cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    factors
}

#[derive(Clone, Debug)]
pub struct Mod2Kernel {
    pub factor: UniPoly,
    pub multiplicity: usize,
    pub subspace: Subspace,
    pub totally_singular: bool,
}

#[derive(Clone, Debug)]
pub struct Mod2Action {
    pub reduced: BitMatrix,
    pub order: Option<u64>,
    pub char_poly_mod2: Vec<(UniPoly, usize)>,
    pub kernels: Vec<Mod2Kernel>,
}

/// Reduction mod 2 of an isometry of an even lattice: its order and the
/// kernels of `f(M)` for each irreducible factor `f` of the characteristic
/// polynomial mod 2.
pub fn mod2_action_analysis(m: &IntMatrix, gram: &IntMatrix) -> Result<Mod2Action, LatticeError> {
    if !m.preserves(gram)? {
        return Err(LatticeError::NotIsometry);
    }
    let space = Mod2QuadSpace::from_even_gram(gram)?;
    let reduced = BitMatrix::from_int(m);
    let order = reduced.order();
    let cp = m.char_poly()?;
    let factors = mod2_reduce_and_factor(&cp);
    let kernels = factors
        .iter()
        .map(|(f, mult)| {
            let subspace = reduced.eval_poly(f).kernel();
            let totally_singular = space.is_totally_singular(&subspace);
            Mod2Kernel { factor: f.clone(), multiplicity: *mult, subspace, totally_singular }
        })
        .collect();
    Ok(Mod2Action { reduced, order, char_poly_mod2: factors, kernels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic(k: usize) -> IntMatrix {
        // Orthogonal sum of k hyperbolic planes [[0,1],[1,0]].
        let n = 2 * k;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..k {
            rows[2 * i][2 * i + 1] = 1;
            rows[2 * i + 1][2 * i] = 1;
        }
        IntMatrix::from_rows(&rows).unwrap()
    }

    #[test]
    fn echelon_form_is_canonical() {
        let a = Subspace::span(4, &[0b0011, 0b0110]);
        let b = Subspace::span(4, &[0b0101, 0b0011]);
        assert_eq!(a, b);
        assert_eq!(a.members().len(), 4);
        assert!(a.contains(0b0101));
        assert!(!a.contains(0b1000));
    }

    #[test]
    fn quadratic_form_axiom() {
        let space = Mod2QuadSpace::from_even_gram(&hyperbolic(3)).unwrap();
        for u in 0u16..64 {
            for v in 0u16..64 {
                assert_eq!(space.q(u ^ v), space.q(u) ^ space.q(v) ^ space.b(u, v));
            }
        }
        assert_eq!(space.arf(), Some(0));
    }

    #[test]
    fn small_lagrangian_counts() {
        // Plus-type space of dimension 2k has prod_{i=0}^{k-1} (2^i + 1) Lagrangians.
        for (k, count) in [(1, 2), (2, 6), (3, 30)] {
            let space = Mod2QuadSpace::from_even_gram(&hyperbolic(k)).unwrap();
            let all = enumerate_lagrangians(&space).unwrap();
            assert_eq!(all.len(), count);
            let (a, b) = lagrangian_classes(&all, &all[0]);
            assert_eq!((a.len(), b.len()), (count / 2, count / 2));
        }
    }

    #[test]
    fn factor_small_polynomials_mod2() {
        let sq = mod2_reduce_and_factor(&IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(sq.len(), 1);
        assert_eq!(sq[0].1, 2);
        assert_eq!(sq[0].0.coeffs(), &[1, 1]);
        let lin = mod2_reduce_and_factor(&IntPoly::linear(1));
        assert_eq!(lin.len(), 1);
        assert_eq!((lin[0].0.coeffs(), lin[0].1), (&[1u64, 1][..], 1));
    }

    #[test]
    fn identity_action() {
        let gram = hyperbolic(2);
        let a = mod2_action_analysis(&IntMatrix::identity(4), &gram).unwrap();
        assert_eq!(a.order, Some(1));
        assert_eq!(a.kernels.len(), 1);
        assert_eq!(a.kernels[0].subspace.dim(), 4);
    }
}

//! Dense univariate polynomials over a binary field, with factorization and
//! root extraction in extension fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2m::{Field, FieldElement, GfError};

/// Seed for equal-degree splitting. Fixed so that root lists and reports are
/// reproducible.
pub const SPLIT_SEED: u64 = 0x4c45_484d_4552_3130;

/// Coefficients are low degree first; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<u64>) -> UniPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_elements(field: Field, coeffs: &[FieldElement]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|c| c.bits()).collect())
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field, 1)
    }

    pub fn constant(field: &Field, c: u64) -> UniPoly {
        UniPoly::new(field.clone(), vec![c])
    }

    /// `x`.
    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field.clone(), vec![0, 1])
    }

    pub fn monomial(field: &Field, c: u64, deg: usize) -> UniPoly {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        UniPoly::new(field.clone(), coeffs)
    }

    /// `x - a` (which is `x + a` in characteristic 2).
    pub fn linear(field: &Field, a: u64) -> UniPoly {
        UniPoly::new(field.clone(), vec![a, 1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn scale(&self, c: u64) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) ^ other.coeff(i)).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] ^= f.mul(a, b);
            }
        }
        UniPoly::new(f.clone(), out)
    }

    pub fn square(&self) -> UniPoly {
        let f = &self.field;
        let mut out = vec![0u64; 2 * self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[2 * i] = f.square(a);
        }
        UniPoly::new(f.clone(), out)
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(f), self.clone());
        }
        let inv = f.inv(d.lc()).expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, inv);
            q[i - dd] = factor;
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] ^= f.mul(factor, b);
            }
        }
        (UniPoly::new(f.clone(), q), UniPoly::new(f.clone(), rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| if i % 2 == 1 { c } else { 0 }).collect();
        UniPoly::new(self.field.clone(), coeffs)
    }

    /// Square root of a polynomial whose odd coefficients vanish.
    pub fn sqrt(&self) -> Option<UniPoly> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        let f = &self.field;
        let coeffs = self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect();
        Some(UniPoly::new(f.clone(), coeffs))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    pub fn eval_elem(&self, x: &FieldElement) -> Result<FieldElement, GfError> {
        if x.field() != &self.field {
            return Err(GfError::ContextMismatch(format!("{:?}", x.field()), format!("{:?}", self.field)));
        }
        Ok(self.field.elem(self.eval(x.bits())))
    }

    /// Image under the embedding of the coefficient field into `sup`.
    pub fn embed(&self, sup: &Field) -> Result<UniPoly, GfError> {
        let coeffs = self.coeffs.iter().map(|&c| sup.embed_raw(&self.field, c)).collect::<Result<_, _>>()?;
        Ok(UniPoly::new(sup.clone(), coeffs))
    }

    /// `self^(2^k) mod m`.
    fn frob_mod(&self, k: u64, m: &UniPoly) -> UniPoly {
        let mut x = self.rem(m);
        for _ in 0..k {
            x = x.square().rem(m);
        }
        x
    }

    /// Squarefree decomposition: pairs `(a_i, i)` with `self = lc * prod a_i^i`,
    /// each `a_i` monic and squarefree. In characteristic 2 the part with zero
    /// derivative is a square and is handled by the inverse Frobenius map on
    /// coefficients.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_poly(&a.0, &b.0)));
        out
    }

    fn sqf_rec(&self, mult: usize, out: &mut Vec<(UniPoly, usize)>) {
        let f = self.monic();
        if f.is_constant() {
            return;
        }
        let d = f.derivative();
        let mut c = f.gcd(&d);
        let mut w = f.exact_div(&c).expect("gcd divides");
        let mut i = 1;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y).expect("gcd divides");
            if !z.is_constant() {
                out.push((z, i * mult));
            }
            w = y;
            c = c.exact_div(&w).expect("gcd divides");
            i += 1;
        }
        if !c.is_constant() {
            let root = c.sqrt().expect("remaining part has zero derivative");
            root.sqf_rec(2 * mult, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial, up to
    /// factor degree `max_degree`. Returns `(product of all degree-d factors,
    /// d)` pairs and the unsplit remainder (all of whose factors have degree
    /// above the bound).
    pub fn distinct_degree(&self, max_degree: usize) -> (Vec<(UniPoly, usize)>, UniPoly) {
        let field = &self.field;
        let m = field.degree() as u64;
        let mut rest = self.monic();
        let mut out = Vec::new();
        let x = UniPoly::x(field);
        let mut h = x.clone();
        let mut d = 0;
        while d < max_degree && rest.deg0() >= 2 * (d + 1) {
            d += 1;
            h = h.frob_mod(m, &rest);
            let g = h.add(&x).gcd(&rest);
            if !g.is_constant() {
                rest = rest.exact_div(&g).expect("gcd divides");
                h = h.rem(&rest);
                out.push((g, d));
            }
        }
        if !rest.is_constant() && rest.deg0() <= max_degree && rest.deg0() > d {
            out.push((rest.clone(), rest.deg0()));
            rest = UniPoly::one(field);
        }
        (out, rest)
    }

    /// Splits a monic squarefree product of irreducible factors of equal degree
    /// `d` into those factors, using random trace maps (characteristic 2).
    pub fn equal_degree_split(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
        let f = self.monic();
        let n = f.deg0();
        if n == d {
            return vec![f];
        }
        if n == 0 {
            return vec![];
        }
        let field = &self.field;
        let k = field.degree() as usize * d;
        loop {
            let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..field.size())).collect();
            let a = UniPoly::new(field.clone(), coeffs);
            if a.is_constant() {
                continue;
            }
            let mut tr = a.rem(&f);
            let mut p = tr.clone();
            for _ in 1..k {
                p = p.square().rem(&f);
                tr = tr.add(&p);
            }
            let g = f.gcd(&tr);
            let gd = g.deg0();
            if gd > 0 && gd < n {
                let h = f.exact_div(&g).expect("gcd divides");
                let mut parts = g.equal_degree_split(d, rng);
                parts.extend(h.equal_degree_split(d, rng));
                return parts;
            }
        }
    }

    /// Complete factorization into monic irreducible factors with
    /// multiplicities, canonically sorted.
    pub fn factor(&self) -> Vec<(UniPoly, usize)> {
        let (mut factors, rest) = self.factor_bounded(usize::MAX);
        assert!(rest.is_empty());
        factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
        factors
    }

    /// Factors of degree at most `max_degree`, plus the unsplit parts
    /// `(squarefree cofactor, multiplicity)`.
    pub fn factor_bounded(&self, max_degree: usize) -> (Vec<(UniPoly, usize)>, Vec<(UniPoly, usize)>) {
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut factors = Vec::new();
        let mut rest = Vec::new();
        for (sqf, mult) in self.squarefree_decomposition() {
            let (ddf, remainder) = sqf.distinct_degree(max_degree);
            for (g, d) in ddf {
                for h in g.equal_degree_split(d, &mut rng) {
                    factors.push((h, mult));
                }
            }
            if !remainder.is_constant() {
                rest.push((remainder, mult));
            }
        }
        factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
        (factors, rest)
    }

    /// Distinct roots lying in the coefficient field itself.
    pub fn roots_in_base_field(&self) -> Vec<u64> {
        if self.is_zero() {
            return Vec::new();
        }
        let (factors, _) = self.factor_bounded(1);
        let mut roots: Vec<u64> = factors.iter().map(|(h, _)| h.coeff(0)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots
    }

    /// All roots lying in fields GF(2^e) with `e` dividing `degree_bound`
    /// (absolute degree over GF(2)). Each irreducible factor of degree `d` is
    /// split in GF(2^(m*d)), where `m` is the degree of the coefficient field;
    /// factors whose splitting field is not covered by the bound form the
    /// cofactor.
    pub fn uni_roots(&self, degree_bound: u32) -> Result<RootSet, GfError> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let m = self.field.degree();
        let max_d = (degree_bound / m) as usize;
        let (factors, rest) = self.factor_bounded(max_d);
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut roots = Vec::new();
        let mut split = Vec::new();
        let mut cofactor = UniPoly::constant(&self.field, self.lc());
        for (sq, mult) in rest {
            cofactor = cofactor.mul(&sq.pow(mult as u64));
        }
        for (h, mult) in factors {
            let d = h.deg0() as u32;
            if !degree_bound.is_multiple_of(m * d) {
                cofactor = cofactor.mul(&h.pow(mult as u64));
                continue;
            }
            let host = Field::canonical(m * d)?;
            let lifted = h.embed(&host)?;
            let mut values: Vec<u64> = lifted.equal_degree_split(1, &mut rng).iter().map(|lin| lin.coeff(0)).collect();
            values.sort_unstable();
            for v in values {
                roots.push(Root {
                    value: host.elem(v),
                    multiplicity: mult,
                    min_degree: host.min_subfield_degree(v),
                    factor: split.len(),
                });
            }
            split.push((h, mult));
        }
        roots.sort_by(|a, b| {
            (a.value.field().degree(), a.value.bits()).cmp(&(b.value.field().degree(), b.value.bits()))
        });
        Ok(RootSet { roots, split_factors: split, cofactor })
    }

    pub fn format(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let coeff = self.field.format_raw(c);
            terms.push(match (coeff.as_str(), mono.is_empty()) {
                (_, true) => coeff,
                ("1", false) => mono,
                (_, false) => format!("{coeff}*{mono}"),
            });
        }
        terms.join(" + ")
    }
}

/// Canonical order: by degree, then coefficients from the top down.
pub fn cmp_poly(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.coeffs.len().cmp(&b.coeffs.len()).then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::add(self, rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::mul(self, rhs)
    }
}

/// A root in its host field `GF(2^(m*d))`, where `d` is the degree of the
/// irreducible factor it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub value: FieldElement,
    pub multiplicity: usize,
    /// Degree over GF(2) of the smallest field containing the root.
    pub min_degree: u32,
    /// Index into [`RootSet::split_factors`].
    pub factor: usize,
}

#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Root>,
    /// Irreducible factors (over the coefficient field) that were split.
    pub split_factors: Vec<(UniPoly, usize)>,
    /// Product of the leading coefficient and every factor whose roots lie
    /// beyond the search bound.
    pub cofactor: UniPoly,
}

impl RootSet {
    /// Whether every root lies within the bound.
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_constant()
    }
}

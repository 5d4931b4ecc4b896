//! Sparse multivariate polynomials over a binary field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use crate::gf2m::{Field, FieldElement};
use crate::poly::uni::UniPoly;
use crate::poly::PolyError;

/// Exponent vector ordered graded-lexicographically (total degree first, then
/// the first variable dominates).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms map exponent vectors to nonzero raw coefficients of `field`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

pub const DEFAULT_VARS: [&str; 4] = ["x", "y", "z", "w"];

impl MultiPoly {
    pub fn zero(field: &Field, nvars: usize) -> MultiPoly {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, nvars: usize, c: u64) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(field: &Field, nvars: usize) -> MultiPoly {
        MultiPoly::constant(field, nvars, 1)
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::term(field, 1, Monomial::var(nvars, i))
    }

    pub fn term(field: &Field, c: u64, mono: Monomial) -> MultiPoly {
        let mut p = MultiPoly::zero(field, mono.0.len());
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(field: &Field, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, u64)>) -> MultiPoly {
        let mut p = MultiPoly::zero(field, nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Adds `c * mono` in place.
    pub fn add_term(&mut self, mono: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(mono.0.len(), self.nvars);
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() ^ c;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, mono: &Monomial) -> u64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> FieldElement {
        self.field.elem(self.coeff(&Monomial(exps.to_vec())))
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Least total degree of a term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// The common weighted degree of all terms, if homogeneous.
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.weighted_homogeneous_degree(&vec![1; self.nvars])
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c);
            }
        }
        out
    }

    /// Lowest-degree homogeneous part (the initial form at the origin).
    pub fn initial_form(&self) -> MultiPoly {
        match self.min_degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    fn check_field(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::ContextMismatch);
        }
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_field(other).expect("incompatible polynomials");
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        if c == 0 {
            return out;
        }
        for (m, &a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul_term(&self, mono: &Monomial, c: u64) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        if c == 0 {
            return out;
        }
        for (m, &a) in &self.terms {
            out.terms.insert(m.mul(mono), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_field(other).expect("incompatible polynomials");
        let f = &self.field;
        let mut acc: std::collections::HashMap<Monomial, u64> = std::collections::HashMap::new();
        for (ma, &a) in &self.terms {
            for (mb, &b) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert(0) ^= f.mul(a, b);
            }
        }
        let mut out = MultiPoly::zero(f, self.nvars);
        out.terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out
    }

    pub fn square(&self) -> MultiPoly {
        // Frobenius: cross terms cancel in characteristic 2.
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            out.terms.insert(m.mul(m), self.field.square(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Composition `self(map[0], ..., map[n-1])`. The images may live in a
    /// different number of variables.
    pub fn substitute(&self, map: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if map.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: map.len() });
        }
        let Some(first) = map.first() else {
            return Ok(self.clone());
        };
        let target_vars = first.nvars;
        for m in map {
            if m.field != self.field {
                return Err(PolyError::ContextMismatch);
            }
            if m.nvars != target_vars {
                return Err(PolyError::ArityMismatch { expected: target_vars, found: m.nvars });
            }
        }
        // Cache powers of each image.
        let mut powers: Vec<Vec<MultiPoly>> =
            map.iter().map(|m| vec![MultiPoly::one(&self.field, target_vars), m.clone()]).collect();
        let mut out = MultiPoly::zero(&self.field, target_vars);
        for (mono, &c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, target_vars, c);
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&map[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Formal partial derivative; terms of even exponent in `var` vanish.
    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[var];
            if e % 2 == 1 {
                let mut nm = m.clone();
                nm.0[var] -= 1;
                out.add_term(nm, c);
            }
        }
        out
    }

    /// Evaluation at a point with coordinates in the coefficient field.
    pub fn eval(&self, pt: &[u64]) -> u64 {
        assert_eq!(pt.len(), self.nvars);
        let f = &self.field;
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&e, &x) in m.0.iter().zip(pt) {
                if e > 0 {
                    t = f.mul(t, f.pow(x, e as i64).expect("nonnegative exponent"));
                }
            }
            acc ^= t;
        }
        acc
    }

    pub fn eval_elems(&self, pt: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if pt.len() != self.nvars {
            return Err(PolyError::ArityMismatch { expected: self.nvars, found: pt.len() });
        }
        if pt.iter().any(|x| x.field() != &self.field) {
            return Err(PolyError::ContextMismatch);
        }
        let raw: Vec<u64> = pt.iter().map(FieldElement::bits).collect();
        Ok(self.field.elem(self.eval(&raw)))
    }

    /// Sets variable `var` to the constant `value` (the variable stays in the
    /// exponent vectors with exponent 0).
    pub fn specialize(&self, var: usize, value: u64) -> MultiPoly {
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[var];
            let mut nm = m.clone();
            nm.0[var] = 0;
            let coeff = if e == 0 { c } else { f.mul(c, f.pow(value, e as i64).unwrap()) };
            out.add_term(nm, coeff);
        }
        out
    }

    /// Substitutes `x_i -> x_i + pt_i`, so that the Taylor expansion at `pt`
    /// becomes the expansion at the origin.
    pub fn translate(&self, pt: &[u64]) -> MultiPoly {
        let map: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                MultiPoly::var(&self.field, self.nvars, i).add(&MultiPoly::constant(&self.field, self.nvars, pt[i]))
            })
            .collect();
        self.substitute(&map).expect("arity matches")
    }

    /// Image under the embedding of the coefficient field into `sup`.
    pub fn embed(&self, sup: &Field) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(sup, self.nvars);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), sup.embed_raw(&self.field, c)?);
        }
        Ok(out)
    }

    /// Drops variable `var` (which must not occur) from the exponent vectors.
    pub fn drop_var(&self, var: usize) -> MultiPoly {
        assert!(!self.depends_on(var), "variable {var} occurs");
        let mut out = MultiPoly::zero(&self.field, self.nvars - 1);
        for (m, &c) in &self.terms {
            let mut e = m.0.clone();
            e.remove(var);
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Keeps only variables listed in `keep`, in that order; all others must
    /// not occur.
    pub fn select_vars(&self, keep: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, keep.len());
        for (m, &c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                assert!(e == 0 || keep.contains(&i), "variable {i} occurs");
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c);
        }
        out
    }

    /// Converts a polynomial in one variable only into a dense [`UniPoly`].
    pub fn to_uni(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, &c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let e = m.0[var] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            coeffs[e] ^= c;
        }
        Some(UniPoly::new(self.field.clone(), coeffs))
    }

    /// Lifts a univariate polynomial into variable `var` of `nvars`.
    pub fn from_uni(p: &UniPoly, nvars: usize, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(p.field(), nvars);
        for (i, &c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Coefficients with respect to `var`: `self = sum_k c_k * var^k`, each
    /// `c_k` free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.field, self.nvars); deg + 1];
        for (m, &c) in &self.terms {
            let k = m.0[var] as usize;
            let mut nm = m.clone();
            nm.0[var] = 0;
            out[k].add_term(nm, c);
        }
        out
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_field(d).ok()?;
        let (lm, lc) = d.leading()?;
        let lm = lm.clone();
        let inv = self.field.inv(lc).ok()?;
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(&self.field, self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = self.field.mul(c, inv);
            rem = rem.add(&d.mul_term(&qm, qc));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Divides by a power of one variable; `None` if the division is not exact.
    pub fn div_var_power(&self, var: usize, k: u32) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            if m.0[var] < k {
                return None;
            }
            let mut nm = m.clone();
            nm.0[var] -= k;
            out.add_term(nm, c);
        }
        Some(out)
    }

    /// Formats with the given variable names.
    pub fn format_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms() {
            let mut factors = Vec::new();
            if c != 1 || m.degree() == 0 {
                factors.push(self.field.format_raw(c));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        if nvars <= DEFAULT_VARS.len() {
            DEFAULT_VARS[..nvars].iter().map(|s| s.to_string()).collect()
        } else {
            (0..nvars).map(|i| format!("x{i}")).collect()
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = MultiPoly::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

/// Vanishing order of `p` at `pt`: the least total degree in the Taylor
/// expansion there. Returns 0 when `p(pt) != 0`.
pub fn multiplicity_at(p: &MultiPoly, pt: &[u64]) -> Result<u32, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if pt.len() != p.nvars() {
        return Err(PolyError::ArityMismatch { expected: p.nvars(), found: pt.len() });
    }
    if p.eval(pt) != 0 {
        return Ok(0);
    }
    Ok(p.translate(pt).min_degree().expect("translation of a nonzero polynomial is nonzero"))
}

/// Vanishing order at `pt` of `p + q^2`, maximized over local functions `q`.
///
/// In characteristic 2, `w -> w + q` turns `w^2 = p` into `w^2 = p + q^2`, and
/// `q^2` ranges over all series in squared monomials, so the order is the
/// least degree of a Taylor monomial with some odd exponent. `None` if every
/// monomial is a square.
pub fn adjusted_multiplicity(p: &MultiPoly, pt: &[u64]) -> Result<Option<u32>, PolyError> {
    if pt.len() != p.nvars() {
        return Err(PolyError::ArityMismatch { expected: p.nvars(), found: pt.len() });
    }
    Ok(p.translate(pt).terms().filter(|(m, _)| m.0.iter().any(|e| e % 2 == 1)).map(|(m, _)| m.degree()).min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(f: &Field) -> (MultiPoly, MultiPoly, MultiPoly) {
        (MultiPoly::var(f, 3, 0), MultiPoly::var(f, 3, 1), MultiPoly::var(f, 3, 2))
    }

    #[test]
    fn adjusted_multiplicity_ignores_squares() {
        let f = Field::gf32();
        let (x, y, _) = xyz(&f);
        // x^2 + y^2 + x^3 y: plain order 2, but the square part can be absorbed.
        let p = x.square().add(&y.square()).add(&x.pow(3).mul(&y));
        let p2 = p.select_vars(&[0, 1]);
        assert_eq!(multiplicity_at(&p2, &[0, 0]).unwrap(), 2);
        assert_eq!(adjusted_multiplicity(&p2, &[0, 0]).unwrap(), Some(4));
        assert_eq!(adjusted_multiplicity(&x.square().select_vars(&[0, 1]), &[0, 0]).unwrap(), None);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0, 0]);
        let b = Monomial(vec![1, 1, 0]);
        let c = Monomial(vec![0, 0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn partial_derivatives_in_char_two() {
        let f = Field::gf32();
        let (x, y, _) = xyz(&f);
        assert!(x.pow(2).mul(&y).partial(0).is_zero());
        assert_eq!(x.pow(3).partial(0), x.pow(2));
    }

    #[test]
    fn substitute_examples() {
        let f = Field::gf32();
        let (x, y, z) = xyz(&f);
        let p = x.add(&y);
        assert_eq!(p.substitute(&[y.clone(), x.clone(), z.clone()]).unwrap(), p);
        let q = x.pow(3).add(&y.mul(&z).scale(f.gen_pow(7).bits()));
        assert_eq!(q.substitute(&[x.clone(), y.clone(), z.clone()]).unwrap(), q);
        assert!(matches!(q.substitute(std::slice::from_ref(&x)), Err(PolyError::ArityMismatch { .. })));
    }

    #[test]
    fn multiplicity_examples() {
        let f = Field::gf32();
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        let p = x.pow(2).mul(&y).add(&y.pow(4));
        assert_eq!(multiplicity_at(&p, &[0, 0]).unwrap(), 3);
        assert_eq!(multiplicity_at(&p, &[1, 2]).unwrap(), 0);
        assert_eq!(multiplicity_at(&MultiPoly::zero(&f, 2), &[0, 0]), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let f = Field::gf32();
        let (x, y, z) = xyz(&f);
        let a = x.add(&y.scale(f.gen_pow(3).bits())).add(&z);
        let b = x.mul(&y).add(&z.pow(2));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(prod.add(&MultiPoly::one(&f, 3)).exact_div(&a).is_none());
    }
}

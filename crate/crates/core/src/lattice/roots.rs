//! Real root isolation with Sturm sequences over exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::intpoly::QPoly;
use crate::lattice::{IntMatrix, IntPoly, LatticeError};

/// Closed interval with rational endpoints. Isolating intervals returned by
/// [`real_roots`] either have `lo == hi` (an exact rational root) or contain
/// exactly one root in their interior.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Parses `1e-9`, `0.001`, `3/7` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let ten = BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let mut v = BigRational::from_integer(digits);
    if scale >= 0 {
        v *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        v /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -v } else { v })
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain of a squarefree polynomial.
pub(crate) struct Sturm {
    chain: Vec<QPoly>,
}

impl Sturm {
    pub(crate) fn new(p: &QPoly) -> Sturm {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].divrem(&chain[n - 1]).1.neg();
            chain.push(r);
        }
        chain.pop();
        Sturm { chain }
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut count = 0;
        let mut last = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub(crate) fn variations_at(&self, x: &BigRational) -> usize {
        Sturm::variations(self.chain.iter().map(|q| sgn(&q.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Sturm::variations(self.chain.iter().map(|q| {
            let s = sgn(q.coeffs.last().unwrap());
            if positive || q.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots.
    pub(crate) fn total(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Roots in the open interval `(a, b)`; neither endpoint may be a root.
    pub(crate) fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// `1 + max |a_i / a_n|`: every complex root has smaller modulus.
pub(crate) fn root_bound(p: &QPoly) -> BigRational {
    let lc = p.coeffs.last().unwrap().abs();
    let m = p.coeffs.iter().map(|c| c.abs() / &lc).max().unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// A split point of `(lo, hi)` near the midpoint that is not a root.
fn split_point(p: &QPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let mid = (lo + hi) / two();
    let mut step = (hi - lo) / BigRational::from_integer(BigInt::from(4));
    if !p.eval(&mid).is_zero() {
        return mid;
    }
    loop {
        for cand in [&mid + &step, &mid - &step] {
            if !p.eval(&cand).is_zero() {
                return cand;
            }
        }
        step /= two();
    }
}

fn isolate(p: &QPoly, sturm: &Sturm, lo: BigRational, hi: BigRational, n: usize, out: &mut Vec<Interval>) {
    match n {
        0 => {}
        1 => out.push(Interval { lo, hi }),
        _ => {
            let m = split_point(p, &lo, &hi);
            let left = sturm.count(&lo, &m);
            isolate(p, sturm, lo, m.clone(), left, out);
            isolate(p, sturm, m, hi, n - left, out);
        }
    }
}

/// Bisects an isolating interval of a simple root until its width is at
/// most `width`.
pub(crate) fn refine(p: &QPoly, iv: &Interval, width: &BigRational) -> Interval {
    let mut iv = iv.clone();
    if iv.lo == iv.hi {
        return iv;
    }
    let mut s_lo = sgn(&p.eval(&iv.lo));
    while &iv.width() > width {
        let m = iv.midpoint();
        let s = sgn(&p.eval(&m));
        if s == 0 {
            return Interval::point(m);
        }
        if s == s_lo {
            iv.lo = m;
            s_lo = s;
        } else {
            iv.hi = m;
        }
    }
    iv
}

/// Isolating intervals of all real roots of a squarefree polynomial, in
/// increasing order, each of width at most `precision`.
pub fn real_roots(p: &IntPoly, precision: &BigRational) -> Result<Vec<Interval>, LatticeError> {
    if p.is_zero() {
        return Err(LatticeError::ZeroPolynomial);
    }
    if p.deg0() == 0 {
        return Ok(Vec::new());
    }
    if p.gcd(&p.derivative()).deg0() > 0 {
        return Err(LatticeError::NotSquarefree);
    }
    let q = p.to_rational();
    Ok(isolate_all(&q).iter().map(|iv| refine(&q, iv, precision)).collect())
}

pub(crate) fn isolate_all(q: &QPoly) -> Vec<Interval> {
    let sturm = Sturm::new(q);
    let b = root_bound(q);
    let n = sturm.total();
    let mut out = Vec::new();
    isolate(q, &sturm, -b.clone(), b, n, &mut out);
    out
}

/// How the spectral radius was shown to be the largest real eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Only roots of unity occur: the radius is exactly 1.
    Cyclotomic,
    /// The non-cyclotomic part has only real roots.
    RealRooted,
    /// The non-cyclotomic part is reciprocal with a trace polynomial having
    /// one root above 2 and the rest in (-2, 2).
    Salem,
}

#[derive(Clone, Debug)]
pub struct SpectralRadius {
    pub interval: Interval,
    pub char_poly: IntPoly,
    /// Indices `n` of the cyclotomic factors `Phi_n` of the squarefree part.
    pub cyclotomic: Vec<u32>,
    /// Squarefree part with the cyclotomic factors removed.
    pub residual: IntPoly,
    pub certification: Certification,
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::Integer::gcd(&k, &n) == 1).count() as u32
}

/// Splits off every cyclotomic factor of a squarefree polynomial.
pub fn strip_cyclotomic(p: &IntPoly) -> (IntPoly, Vec<u32>) {
    let deg = p.deg0() as u32;
    let mut rest = p.clone();
    let mut found = Vec::new();
    let mut cyclo: Vec<IntPoly> = vec![IntPoly::one()];
    // phi(n) >= sqrt(n / 2), so phi(n) <= deg forces n <= 2 deg^2.
    for n in 1..=(2 * deg * deg).max(2) {
        let mut c = IntPoly::x().pow(n).sub(&IntPoly::one());
        for d in 1..n {
            if n % d == 0 {
                c = c.exact_div(&cyclo[d as usize]).expect("cyclotomic factor divides");
            }
        }
        cyclo.push(c.clone());
        if euler_phi(n) as usize > rest.deg0() {
            continue;
        }
        if let Some(q) = rest.exact_div(&c) {
            rest = q;
            found.push(n);
        }
    }
    (rest, found)
}

/// Certified spectral radius of an integer matrix when it is a real
/// eigenvalue.
pub fn dynamical_degree(m: &IntMatrix, precision: &BigRational) -> Result<SpectralRadius, LatticeError> {
    let char_poly = m.char_poly()?;
    let sqf = char_poly.squarefree_part();
    let (residual, cyclotomic) = strip_cyclotomic(&sqf);
    let not_cert = |msg: &str| LatticeError::SpectralRadiusNotRealCertified(msg.to_string());
    if residual.deg0() == 0 {
        if cyclotomic.is_empty() {
            return Err(not_cert("empty matrix"));
        }
        return Ok(SpectralRadius {
            interval: Interval::point(BigRational::one()),
            char_poly,
            cyclotomic,
            residual,
            certification: Certification::Cyclotomic,
        });
    }
    let q = residual.to_rational();
    let isolated = isolate_all(&q);
    let Some(top) = isolated.last() else {
        return Err(not_cert("no real eigenvalue outside the roots of unity"));
    };
    let sturm = Sturm::new(&q);
    let certification = if sturm.total() == residual.deg0() {
        // All roots real: compare the largest against the smallest in modulus.
        let mut hi_iv = top.clone();
        let mut lo_iv = isolated[0].clone();
        let mut ok = false;
        for _ in 0..256 {
            if hi_iv.lo >= -lo_iv.lo.clone() {
                ok = true;
                break;
            }
            let w = hi_iv.width().max(lo_iv.width()) / two();
            if w.is_zero() {
                break;
            }
            hi_iv = refine(&q, &hi_iv, &w);
            lo_iv = refine(&q, &lo_iv, &w);
        }
        if !ok {
            return Err(not_cert("a negative eigenvalue may dominate"));
        }
        Certification::RealRooted
    } else {
        match crate::lattice::salem::salem_certify(&residual) {
            Ok(_) => Certification::Salem,
            Err(e) => return Err(not_cert(&format!("residual factor is neither real-rooted nor Salem: {e}"))),
        }
    };
    let interval = refine(&q, top, precision);
    if !cyclotomic.is_empty() && interval.lo < BigRational::one() && interval.hi <= BigRational::one() {
        return Err(not_cert("largest real eigenvalue is below 1"));
    }
    Ok(SpectralRadius { interval, char_poly, cyclotomic, residual, certification })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(eps("1e-9"), BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000)));
        assert_eq!(eps("0.25"), BigRational::new(BigInt::from(1), BigInt::from(4)));
        assert_eq!(eps("-3/6"), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn sqrt_two() {
        let roots = real_roots(&IntPoly::from_i64(&[-2, 0, 1]), &eps("1e-6")).unwrap();
        assert_eq!(roots.len(), 2);
        let r = roots[1].midpoint_f64();
        assert!((r - 2f64.sqrt()).abs() < 1e-6);
        assert!((roots[0].midpoint_f64() + 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&IntPoly::from_i64(&[1, 0, 1]), &eps("1e-3")).unwrap().is_empty());
    }

    #[test]
    fn not_squarefree() {
        let p = IntPoly::linear(1).pow(2);
        assert_eq!(real_roots(&p, &eps("1e-3")).unwrap_err(), LatticeError::NotSquarefree);
    }

    #[test]
    fn exact_rational_roots() {
        let p = IntPoly::linear(0).mul(&IntPoly::linear(1)).mul(&IntPoly::linear(-1));
        let roots = real_roots(&p, &eps("1e-3")).unwrap();
        assert_eq!(roots.len(), 3);
        for (iv, v) in roots.iter().zip([-1, 0, 1]) {
            assert!(iv.contains(&BigRational::from_integer(BigInt::from(v))));
        }
    }

    #[test]
    fn trivial_dynamical_degrees() {
        let one = dynamical_degree(&IntMatrix::identity(3), &eps("1e-9")).unwrap();
        assert_eq!(one.interval, Interval::point(BigRational::one()));
        let two = dynamical_degree(&IntMatrix::diagonal(&[2, 1]), &eps("1e-9")).unwrap();
        assert!(two.interval.contains(&BigRational::from_integer(BigInt::from(2))));
        let neg = dynamical_degree(&IntMatrix::diagonal(&[-3, 1]), &eps("1e-9"));
        assert!(matches!(neg, Err(LatticeError::SpectralRadiusNotRealCertified(_))));
    }
}

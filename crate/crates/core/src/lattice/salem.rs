//! Trace polynomials and Salem certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice::roots::{isolate_all, refine, Interval, Sturm};
use crate::lattice::{IntPoly, LatticeError};

/// The degree-`d` polynomial `R` with `x^d R(x + 1/x) = p(x)` for a
/// reciprocal `p` of degree `2d`.
///
/// The coefficient identities form a triangular system: the term `r_j y^j`
/// contributes `x^(d-j) (x^2 + 1)^j`, whose top monomial is `x^(d+j)`.
pub fn trace_polynomial(p: &IntPoly) -> Result<IntPoly, LatticeError> {
    if !p.is_reciprocal() {
        return Err(LatticeError::NotReciprocal);
    }
    let n = p.deg0();
    if n % 2 == 1 {
        return Err(LatticeError::OddDegree);
    }
    let d = n / 2;
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut rest = p.clone();
    let mut r = vec![BigInt::zero(); d + 1];
    for j in (0..=d).rev() {
        let c = rest.coeff(d + j);
        let term = IntPoly::x().pow((d - j) as u32).mul(&x2p1.pow(j as u32)).scale(&c);
        rest = rest.sub(&term);
        r[j] = c;
    }
    if !rest.is_zero() {
        return Err(LatticeError::NotReciprocal);
    }
    let r = IntPoly::new(r);
    debug_assert_eq!(expand_trace(&r, d), *p);
    Ok(r)
}

/// `x^d R(x + 1/x)` as an integer polynomial.
pub fn expand_trace(r: &IntPoly, d: usize) -> IntPoly {
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut acc = IntPoly::zero();
    for (j, c) in r.coeffs().iter().enumerate() {
        acc = acc.add(&IntPoly::x().pow((d - j) as u32).mul(&x2p1.pow(j as u32)).scale(c));
    }
    acc
}

#[derive(Clone, Debug)]
pub struct SalemCertificate {
    pub trace_poly: IntPoly,
    /// The unique trace root above 2.
    pub outer_root: Interval,
    /// Trace roots in (-2, 2), increasing.
    pub inner_roots: Vec<Interval>,
    /// Sign of `R'` at each inner root, aligned with `inner_roots`.
    pub derivative_signs: Vec<i32>,
}

impl SalemCertificate {
    pub fn positive_derivatives(&self) -> usize {
        self.derivative_signs.iter().filter(|&&s| s > 0).count()
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Certifies that `p` is a Salem polynomial: its trace polynomial has only
/// real roots, exactly one of them above 2 and the rest inside (-2, 2).
pub fn salem_certify(p: &IntPoly) -> Result<SalemCertificate, LatticeError> {
    let r = trace_polynomial(p)?;
    let d = r.deg0();
    if d == 0 {
        return Err(LatticeError::NotSalem("constant trace polynomial".into()));
    }
    if r.gcd(&r.derivative()).deg0() > 0 {
        return Err(LatticeError::NotSalem("trace polynomial has a repeated root".into()));
    }
    let q = r.to_rational();
    let sturm = Sturm::new(&q);
    let real = sturm.total();
    if real != d {
        return Err(LatticeError::NotSalem(format!("trace polynomial has {real} real roots out of {d}")));
    }
    for v in [-2, 2] {
        if q.eval(&rat(v)).is_zero() {
            return Err(LatticeError::NotSalem(format!("trace polynomial vanishes at {v}")));
        }
    }
    let isolated = isolate_all(&q);
    // Separate the roots from +-2 so each interval lies on one side.
    let mut above = Vec::new();
    let mut inner = Vec::new();
    for iv in isolated {
        let mut iv = iv;
        loop {
            if iv.lo >= rat(2) {
                above.push(iv);
                break;
            }
            if iv.hi <= rat(-2) {
                return Err(LatticeError::NotSalem("trace root below -2".into()));
            }
            if iv.lo >= rat(-2) && iv.hi <= rat(2) {
                inner.push(iv);
                break;
            }
            let w = iv.width() / rat(2);
            iv = refine(&q, &iv, &w);
        }
    }
    if above.len() != 1 {
        return Err(LatticeError::NotSalem(format!("{} trace roots above 2", above.len())));
    }
    let dq = r.derivative().squarefree_part().to_rational();
    let dsturm = Sturm::new(&dq);
    let rp = r.derivative().to_rational();
    let mut signs = Vec::new();
    for iv in inner.iter_mut() {
        loop {
            let clear = !dq.eval(&iv.lo).is_zero()
                && !dq.eval(&iv.hi).is_zero()
                && (iv.lo == iv.hi || dsturm.count(&iv.lo, &iv.hi) == 0);
            if clear {
                let v = rp.eval(&iv.lo);
                signs.push(if v.is_positive() { 1 } else { -1 });
                break;
            }
            let w = iv.width() / rat(2);
            *iv = refine(&q, iv, &w);
        }
    }
    Ok(SalemCertificate { trace_poly: r, outer_root: above.remove(0), inner_roots: inner, derivative_signs: signs })
}

/// Sign pattern `-sgn R'(t_i)` over the inner trace roots, listing the roots
/// with positive derivative first.
pub fn sign_vector_target(cert: &SalemCertificate) -> Vec<i32> {
    let mut pos: Vec<i32> = cert.derivative_signs.iter().filter(|&&s| s > 0).map(|&s| -s).collect();
    let neg: Vec<i32> = cert.derivative_signs.iter().filter(|&&s| s < 0).map(|&s| -s).collect();
    pos.extend(neg);
    pos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_trace_polynomials() {
        assert_eq!(trace_polynomial(&IntPoly::from_i64(&[1, 0, 1])).unwrap(), IntPoly::x());
        assert_eq!(trace_polynomial(&IntPoly::from_i64(&[1, -3, 1])).unwrap(), IntPoly::linear(3));
        assert_eq!(trace_polynomial(&IntPoly::from_i64(&[1, 2])).unwrap_err(), LatticeError::NotReciprocal);
        assert_eq!(trace_polynomial(&IntPoly::from_i64(&[1, 1, 1, 1])).unwrap_err(), LatticeError::OddDegree);
    }

    #[test]
    fn cyclotomic_is_not_salem() {
        assert!(matches!(salem_certify(&IntPoly::from_i64(&[1, 1, 1])), Err(LatticeError::NotSalem(_))));
    }
}

//! Resultants by the subresultant remainder sequence.

use crate::poly::{MultiPoly, PolyError, UniPoly};

/// Coefficient rings the remainder sequence runs over.
trait Ring: Clone {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Ring for UniPoly {
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.field())
    }
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.field())
    }
    fn add(&self, o: &Self) -> Self {
        UniPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UniPoly::mul(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        UniPoly::exact_div(self, o).expect("subresultant division is exact")
    }
}

impl Ring for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.field(), self.nvars())
    }
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.field(), self.nvars())
    }
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        MultiPoly::exact_div(self, o).expect("subresultant division is exact")
    }
}

/// Polynomial in the eliminated variable, coefficients low degree first,
/// no trailing zeros.
type Dense<R> = Vec<R>;

fn trim<R: Ring>(p: &mut Dense<R>) {
    while p.last().is_some_and(Ring::is_zero) {
        p.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<R: Ring>(a: &Dense<R>, b: &Dense<R>) -> Dense<R> {
    let db = b.len() - 1;
    let lcb = b[db].clone();
    let mut r = a.clone();
    let mut e = a.len() - b.len() + 1;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lcb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[i + shift] = r[i + shift].add(&t);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let k = lcb.pow(e);
        for c in r.iter_mut() {
            *c = c.mul(&k);
        }
    }
    r
}

fn subresultant<R: Ring>(a: Dense<R>, b: Dense<R>, unit: &R) -> R {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return unit.zero_like();
    }
    if b.len() == 1 {
        return b[0].pow(a.len() - 1);
    }
    let mut g = unit.one_like();
    let mut h = unit.one_like();
    loop {
        let delta = a.len() - b.len();
        let r = prem(&a, &b);
        if r.is_empty() {
            return unit.zero_like();
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r.iter().map(|c| c.exact_div(&div)).collect();
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = g.pow(delta).exact_div(&h.pow(delta - 1));
        }
        if b.len() == 1 {
            break;
        }
    }
    let da = a.len() - 1;
    b[0].pow(da).exact_div(&h.pow(da - 1))
}

/// Resultant with respect to one variable, together with the two leading
/// coefficients. Specializing the resultant commutes with specializing the
/// inputs wherever at least one leading coefficient stays nonzero; the common
/// zero locus of `leading` is the degenerate part.
#[derive(Debug, Clone)]
pub struct Resultant {
    pub value: MultiPoly,
    pub leading: (MultiPoly, MultiPoly),
}

pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<Resultant, PolyError> {
    if p.field() != q.field() {
        return Err(PolyError::ContextMismatch);
    }
    if p.nvars() != q.nvars() {
        return Err(PolyError::ArityMismatch { expected: p.nvars(), found: q.nvars() });
    }
    if var >= p.nvars() || !p.depends_on(var) || !q.depends_on(var) {
        return Err(PolyError::VariableAbsent(var));
    }
    let cp = p.coefficients_in(var);
    let cq = q.coefficients_in(var);
    let leading = (cp.last().unwrap().clone(), cq.last().unwrap().clone());
    let others: Vec<usize> = (0..p.nvars()).filter(|&i| i != var).collect();
    let live: Vec<usize> = others.iter().copied().filter(|&i| p.depends_on(i) || q.depends_on(i)).collect();
    let value = if live.len() <= 1 {
        // Dense univariate coefficients keep the bivariate case fast.
        let u = live.first().copied().unwrap_or(others.first().copied().unwrap_or(var));
        let to_uni = |c: &MultiPoly| c.to_uni(u).expect("coefficient in one variable");
        let a: Vec<UniPoly> = cp.iter().map(to_uni).collect();
        let b: Vec<UniPoly> = cq.iter().map(to_uni).collect();
        let r = subresultant(a, b, &UniPoly::one(p.field()));
        MultiPoly::from_uni(&r, p.nvars(), u)
    } else {
        subresultant(cp, cq, &MultiPoly::one(p.field(), p.nvars()))
    };
    Ok(Resultant { value, leading })
}

/// Resultant of two univariate polynomials.
pub fn resultant_uni(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let f = p.field();
    let a: Vec<UniPoly> = p.coeffs().iter().map(|&c| UniPoly::constant(f, c)).collect();
    let b: Vec<UniPoly> = q.coeffs().iter().map(|&c| UniPoly::constant(f, c)).collect();
    subresultant(a, b, &UniPoly::one(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::Field;

    /// Sylvester determinant by Gaussian elimination, as an independent oracle.
    fn sylvester(f: &Field, p: &[u64], q: &[u64]) -> u64 {
        let (m, n) = (p.len() - 1, q.len() - 1);
        let size = m + n;
        let mut rows = vec![vec![0u64; size]; size];
        for i in 0..n {
            for (j, &c) in p.iter().rev().enumerate() {
                rows[i][i + j] = c;
            }
        }
        for i in 0..m {
            for (j, &c) in q.iter().rev().enumerate() {
                rows[n + i][i + j] = c;
            }
        }
        let mut det = 1u64;
        for c in 0..size {
            let Some(p) = (c..size).find(|&r| rows[r][c] != 0) else {
                return 0;
            };
            rows.swap(c, p);
            det = f.mul(det, rows[c][c]);
            let inv = f.inv(rows[c][c]).unwrap();
            for r in c + 1..size {
                let k = f.mul(rows[r][c], inv);
                if k != 0 {
                    for j in c..size {
                        let v = f.mul(k, rows[c][j]);
                        rows[r][j] ^= v;
                    }
                }
            }
        }
        det
    }

    #[test]
    fn linear_case() {
        let f = Field::gf32();
        let x = MultiPoly::var(&f, 3, 0);
        let a = MultiPoly::var(&f, 3, 1);
        let b = MultiPoly::var(&f, 3, 2);
        let r = resultant(&x.add(&a), &x.add(&b), 0).unwrap();
        assert_eq!(r.value, a.add(&b));
    }

    #[test]
    fn shared_root_over_gf2() {
        let f = Field::canonical(1).unwrap();
        let x = MultiPoly::var(&f, 1, 0);
        let one = MultiPoly::one(&f, 1);
        let r = resultant(&x.pow(2).add(&one), &x.add(&one), 0).unwrap();
        assert!(r.value.is_zero());
    }

    #[test]
    fn variable_absent() {
        let f = Field::gf32();
        let x = MultiPoly::var(&f, 2, 0);
        let y = MultiPoly::var(&f, 2, 1);
        assert_eq!(resultant(&x, &y, 1).unwrap_err(), PolyError::VariableAbsent(1));
    }

    #[test]
    fn matches_sylvester_determinant() {
        let f = Field::gf32();
        let cases: [(&[u64], &[u64]); 4] = [
            (&[3, 7, 0, 1, 9], &[5, 1, 2]),
            (&[1, 0, 0, 0, 0, 1], &[2, 3, 4, 5]),
            (&[4, 4, 4], &[9, 1, 0, 0, 17]),
            (&[7, 11, 13, 17, 19, 23, 29], &[2, 3, 5, 7, 11, 13, 31]),
        ];
        for (p, q) in cases {
            let r = resultant_uni(&UniPoly::new(f.clone(), p.to_vec()), &UniPoly::new(f.clone(), q.to_vec()));
            assert_eq!(r.coeff(0), sylvester(&f, p, q), "{p:?} {q:?}");
        }
    }
}

//! Arithmetic in binary fields GF(2^m), polynomial basis over GF(2).
//!
//! A [`Field`] is a cheap, shareable handle to an immutable [`FieldCtx`].
//! Elements are stored as bit masks (bit `i` is the coefficient of `t^i`).
//! Polynomial containers keep raw `u64` coefficients together with one field
//! handle; [`FieldElement`] is the checked, self-describing value type used at
//! API boundaries.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Deref, Mul, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Largest supported extension degree. Products of two reduced elements then
/// fit in a single `u64` before reduction.
pub const MAX_DEGREE: u32 = 32;

const TABLE_DEGREE: u32 = 16;
const DLOG_TABLE_DEGREE: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is reducible over GF(2)")]
    ReducibleModulus(String),
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("modulus must have constant term 1")]
    ZeroConstantTerm,
    #[error("extension degree {0} is outside 1..={MAX_DEGREE}")]
    UnsupportedDegree(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} vs {1})")]
    ContextMismatch(String, String),
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("the class of t does not generate the multiplicative group of {0}")]
    NoGenerator(String),
    #[error("no embedding of GF(2^{sub}) into GF(2^{sup})")]
    NoEmbedding { sub: u32, sup: u32 },
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// Carry-less product of two polynomials over GF(2) of degree < 32.
#[inline]
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

#[inline]
fn bit_degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

/// `a mod m` over GF(2).
fn gf2_rem(mut a: u64, m: u64) -> u64 {
    let dm = bit_degree(m);
    while a != 0 && bit_degree(a) >= dm {
        a ^= m << (bit_degree(a) - dm);
    }
    a
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = gf2_rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn gf2_mulmod(a: u64, b: u64, m: u64) -> u64 {
    gf2_rem(clmul(a, b), m)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `modulus` of degree `m` is irreducible iff `t^(2^m) = t` and
/// `gcd(t^(2^(m/p)) - t, modulus) = 1` for each prime `p | m`.
pub fn is_irreducible_gf2(modulus: u64) -> bool {
    if modulus < 2 {
        return false;
    }
    let m = bit_degree(modulus) as u32;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let frob_iter = |k: u32| {
        let mut x = 0b10u64;
        for _ in 0..k {
            x = gf2_mulmod(x, x, modulus);
        }
        x
    };
    if frob_iter(m) != 0b10 {
        return false;
    }
    for p in prime_factors(m as u64) {
        let h = frob_iter(m / p as u32) ^ 0b10;
        if bit_degree(gf2_gcd(modulus, h)) > 0 {
            return false;
        }
    }
    true
}

fn poly_bits_to_string(bits: u64) -> String {
    if bits == 0 {
        return "0".into();
    }
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if bits >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            });
        }
    }
    terms.join("+")
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Immutable description of GF(2^m) = GF(2)[t]/(modulus).
pub struct FieldCtx {
    degree: u32,
    modulus: u64,
    generator: bool,
    tables: Option<Tables>,
    dlog: OnceLock<Vec<u32>>,
    /// Image of the sub-field generator `t`, keyed by the sub-field modulus.
    embeddings: Mutex<HashMap<u64, u64>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[{}]", self.degree, poly_bits_to_string(self.modulus))
    }
}

/// Shared handle to a field context. Two handles are equal when they describe
/// the same modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Deref for Field {
    type Target = FieldCtx;
    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.degree)
    }
}

fn canonical_cache() -> &'static Mutex<HashMap<u32, Field>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// Builds GF(2^m) from a modulus given as a bit mask (bit `i` = coefficient
    /// of `t^i`).
    pub fn new(m: u32, modulus: u64) -> Result<Field, GfError> {
        if m == 0 || m > MAX_DEGREE {
            return Err(GfError::UnsupportedDegree(m));
        }
        let found = if modulus == 0 { 0 } else { bit_degree(modulus) as u32 };
        if found != m {
            return Err(GfError::DegreeMismatch { expected: m, found });
        }
        if modulus & 1 == 0 && m > 1 {
            return Err(GfError::ZeroConstantTerm);
        }
        if !is_irreducible_gf2(modulus) {
            return Err(GfError::ReducibleModulus(poly_bits_to_string(modulus)));
        }
        let order = (1u64 << m) - 1;
        let t = if m == 1 { 1 } else { 0b10 };
        let pow_raw = |mut base: u64, mut e: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = gf2_mulmod(acc, base, modulus);
                }
                base = gf2_mulmod(base, base, modulus);
                e >>= 1;
            }
            acc
        };
        let is_primitive = |g: u64| {
            g != 0 && pow_raw(g, order) == 1 && prime_factors(order).iter().all(|&p| pow_raw(g, order / p) != 1)
        };
        let generator = is_primitive(t);
        let tables = if m <= TABLE_DEGREE {
            let prim = if generator { t } else { (2..=order).find(|&g| is_primitive(g)).expect("GF(2^m)^* is cyclic") };
            let n = order as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; n + 1];
            let mut x = 1u64;
            for i in 0..n {
                exp[i] = x as u32;
                exp[i + n] = x as u32;
                log[x as usize] = i as u32;
                x = gf2_mulmod(x, prim, modulus);
            }
            Some(Tables { exp, log })
        } else {
            None
        };
        Ok(Field(Arc::new(FieldCtx {
            degree: m,
            modulus,
            generator,
            tables,
            dlog: OnceLock::new(),
            embeddings: Mutex::new(HashMap::new()),
        })))
    }

    /// Builds a field from the modulus coefficient list, low degree first.
    pub fn from_coeff_bits(m: u32, coeffs: &[u8]) -> Result<Field, GfError> {
        let mut modulus = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            if i >= 64 {
                return Err(GfError::UnsupportedDegree(i as u32));
            }
            if c & 1 == 1 {
                modulus |= 1 << i;
            }
        }
        Field::new(m, modulus)
    }

    /// GF(32) with `t^5 + t^2 + 1`; its `t` is the generator ζ.
    pub fn gf32() -> Field {
        Field::canonical(5).expect("degree 5 is supported")
    }

    /// GF(2^m) with the lexicographically smallest irreducible modulus of
    /// degree `m`. The same handle is returned for repeated calls.
    pub fn canonical(m: u32) -> Result<Field, GfError> {
        if m == 0 || m > MAX_DEGREE {
            return Err(GfError::UnsupportedDegree(m));
        }
        if let Some(f) = canonical_cache().lock().unwrap().get(&m) {
            return Ok(f.clone());
        }
        let start = (1u64 << m) | 1;
        let modulus = if m == 1 {
            0b11
        } else {
            (start..(1u64 << (m + 1)))
                .step_by(2)
                .find(|&c| is_irreducible_gf2(c))
                .expect("irreducible polynomials exist in every degree")
        };
        let field = Field::new(m, modulus)?;
        let mut cache = canonical_cache().lock().unwrap();
        Ok(cache.entry(m).or_insert(field).clone())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus as a bit mask, bit `degree` included.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    /// Whether the class of `t` generates the multiplicative group.
    pub fn has_generator(&self) -> bool {
        self.generator
    }

    pub fn modulus_string(&self) -> String {
        poly_bits_to_string(self.modulus)
    }

    /// Header form used by data files, e.g. `g^5=g^2+1`.
    pub fn header_equation(&self) -> String {
        let low = self.modulus ^ (1u64 << self.degree);
        let mut rhs = Vec::new();
        for i in (0..self.degree).rev() {
            if low >> i & 1 == 1 {
                rhs.push(match i {
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{i}"),
                });
            }
        }
        let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join("+") };
        format!("g^{}={}", self.degree, rhs)
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Wraps raw bits. Panics if the bits do not fit the field.
    pub fn elem(&self, bits: u64) -> FieldElement {
        assert!(bits < self.size(), "{bits:#b} is not reduced in {self}");
        FieldElement { field: self.clone(), value: bits }
    }

    /// The residue class of `t`.
    pub fn t(&self) -> FieldElement {
        self.elem(if self.degree == 1 { 1 } else { 0b10 })
    }

    /// `t^k` for any integer `k`.
    pub fn gen_pow(&self, k: i64) -> FieldElement {
        self.elem(self.pow(self.t().value, k).expect("t is a unit"))
    }

    /// All elements, in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |v| self.elem(v))
    }

    // Raw arithmetic on reduced bit masks.

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64,
            None => gf2_rem(clmul(a, b), self.modulus),
        }
    }

    #[inline]
    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let n = (self.size() - 1) as u32;
            let l = t.log[a as usize];
            return Ok(t.exp[((n - l) % n) as usize] as u64);
        }
        Ok(self.pow_u(a, self.size() - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow_u(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: u64, e: i64) -> Result<u64, GfError> {
        let order = self.size() - 1;
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(GfError::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Greater => Ok(0),
            };
        }
        let r = e.rem_euclid(order as i64) as u64;
        Ok(self.pow_u(a, r))
    }

    /// `a^(2^k)`.
    pub fn frob(&self, a: u64, k: u32) -> u64 {
        let mut x = a;
        for _ in 0..(k % self.degree) {
            x = self.square(x);
        }
        x
    }

    /// The unique square root (Frobenius is bijective on a finite field of
    /// characteristic 2).
    pub fn sqrt(&self, a: u64) -> u64 {
        self.frob(a, self.degree - 1)
    }

    /// Absolute trace GF(2^m) -> GF(2).
    pub fn trace(&self, a: u64) -> u64 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree {
            acc ^= x;
            x = self.square(x);
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let mut n = self.size() - 1;
        for p in prime_factors(n) {
            while n.is_multiple_of(p) && self.pow_u(a, n / p) == 1 {
                n /= p;
            }
        }
        Ok(n)
    }

    /// Smallest `e` with `a^(2^e) = a`: the degree of the smallest subfield
    /// containing `a`.
    pub fn min_subfield_degree(&self, a: u64) -> u32 {
        (1..=self.degree)
            .filter(|d| self.degree.is_multiple_of(*d))
            .find(|&d| self.frob(a, d) == a)
            .unwrap_or(self.degree)
    }

    /// Discrete logarithm to base `t`.
    pub fn dlog(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::LogOfZero);
        }
        if !self.generator {
            return Err(GfError::NoGenerator(self.to_string()));
        }
        if let Some(t) = &self.tables {
            // Tables are built with `t` as primitive element whenever `t` is one.
            return Ok(t.log[a as usize] as u64);
        }
        if self.degree <= DLOG_TABLE_DEGREE {
            let table = self.dlog.get_or_init(|| {
                let n = (self.size() - 1) as usize;
                let mut log = vec![0u32; n + 1];
                let mut x = 1u64;
                for i in 0..n {
                    log[x as usize] = i as u32;
                    x = gf2_rem(clmul(x, 0b10), self.modulus);
                }
                log
            });
            return Ok(table[a as usize] as u64);
        }
        // Baby-step giant-step.
        let n = self.size() - 1;
        let step = (n as f64).sqrt().ceil() as u64;
        let t = self.t().value;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut x = 1u64;
        for j in 0..step {
            baby.entry(x).or_insert(j);
            x = self.mul(x, t);
        }
        let giant = self.pow(t, -(step as i64))?;
        let mut y = a;
        for i in 0..=step {
            if let Some(&j) = baby.get(&y) {
                return Ok((i * step + j) % n);
            }
            y = self.mul(y, giant);
        }
        unreachable!("t generates the group")
    }

    /// Image of `t` of `sub` in `self` under the cached embedding.
    fn embedding_image(&self, sub: &Field) -> Result<u64, GfError> {
        if !self.degree.is_multiple_of(sub.degree) {
            return Err(GfError::NoEmbedding { sub: sub.degree, sup: self.degree });
        }
        if let Some(&img) = self.embeddings.lock().unwrap().get(&sub.modulus) {
            return Ok(img);
        }
        let img = if sub == self {
            sub.t().value
        } else {
            // Smallest root (as a bit pattern) of the sub-field modulus.
            let coeffs: Vec<u64> = (0..=sub.degree).map(|i| sub.modulus >> i & 1).collect();
            let p = crate::poly::UniPoly::new(self.clone(), coeffs);
            let mut roots: Vec<u64> = p.roots_in_base_field().into_iter().collect();
            roots.sort_unstable();
            *roots.first().ok_or(GfError::NoEmbedding { sub: sub.degree, sup: self.degree })?
        };
        // Idempotent under concurrent first use: every thread computes the same root.
        self.embeddings.lock().unwrap().insert(sub.modulus, img);
        Ok(img)
    }

    /// Embeds raw bits of `sub` into `self`.
    pub fn embed_raw(&self, sub: &Field, a: u64) -> Result<u64, GfError> {
        if sub == self {
            return Ok(a);
        }
        let img = self.embedding_image(sub)?;
        let mut acc = 0u64;
        for i in (0..sub.degree).rev() {
            acc = self.mul(acc, img);
            if a >> i & 1 == 1 {
                acc ^= 1;
            }
        }
        Ok(acc)
    }

    /// Parses the textual element format: `0`, `1`, `g`, `g^k` (k may be
    /// negative), raw bit strings `0b01001` (low degree first), and sums of
    /// these joined by `+`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElement, GfError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GfError::Parse(s.into()));
        }
        let mut acc = 0u64;
        for term in s.split('+') {
            acc ^= self.parse_atom(term.trim())?;
        }
        Ok(self.elem(acc))
    }

    fn parse_atom(&self, s: &str) -> Result<u64, GfError> {
        let err = || GfError::Parse(s.to_string());
        match s {
            "0" => return Ok(0),
            "1" => return Ok(1),
            "g" => return Ok(self.t().value),
            _ => {}
        }
        if let Some(bits) = s.strip_prefix("0b") {
            if bits.is_empty() || bits.len() > self.degree as usize {
                return Err(err());
            }
            let mut v = 0u64;
            for (i, c) in bits.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => v |= 1 << i,
                    _ => return Err(err()),
                }
            }
            return Ok(v);
        }
        if let Some(k) = s.strip_prefix("g^") {
            let k: i64 = k.trim_matches(|c| c == '(' || c == ')').parse().map_err(|_| err())?;
            return self.pow(self.t().value, k).map_err(|_| err());
        }
        Err(err())
    }

    /// Formats raw bits in the textual element format.
    pub fn format_raw(&self, a: u64) -> String {
        if a == 0 {
            return "0".into();
        }
        if a == 1 {
            return "1".into();
        }
        if self.generator {
            if let Ok(k) = self.dlog(a) {
                return format!("g^{k}");
            }
        }
        let mut s = String::from("0b");
        for i in 0..self.degree {
            s.push(if a >> i & 1 == 1 { '1' } else { '0' });
        }
        s
    }
}

/// Parses a header equation such as `g^5=g^2+1` into a field.
pub fn parse_field_equation(s: &str) -> Result<Field, GfError> {
    let err = || GfError::Parse(s.to_string());
    let (lhs, rhs) = s.split_once('=').ok_or_else(err)?;
    let lhs = lhs.trim();
    let m: u32 = match lhs {
        "g" => 1,
        _ => lhs.strip_prefix("g^").ok_or_else(err)?.parse().map_err(|_| err())?,
    };
    if m == 0 || m > MAX_DEGREE {
        return Err(GfError::UnsupportedDegree(m));
    }
    let mut modulus = 1u64 << m;
    for term in rhs.split('+') {
        let e: u32 = match term.trim() {
            "0" => continue,
            "1" => 0,
            "g" => 1,
            t => t.strip_prefix("g^").ok_or_else(err)?.parse().map_err(|_| err())?,
        };
        if e >= m {
            return Err(err());
        }
        modulus ^= 1 << e;
    }
    Field::new(m, modulus)
}

/// A field element tied to its field context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    value: u64,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Polynomial-basis coordinates as a bit mask.
    pub fn bits(&self) -> u64 {
        self.value
    }

    /// Polynomial-basis coordinates, exactly `m` entries, low degree first.
    pub fn coeffs(&self) -> Vec<u8> {
        (0..self.field.degree).map(|i| (self.value >> i & 1) as u8).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    fn check(&self, other: &FieldElement) -> Result<(), GfError> {
        if self.field != other.field {
            return Err(GfError::ContextMismatch(format!("{:?}", self.field), format!("{:?}", other.field)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(other)?;
        Ok(self.field.elem(self.value ^ other.value))
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(other)?;
        Ok(self.field.elem(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement, GfError> {
        self.check(other)?;
        Ok(self.field.elem(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<FieldElement, GfError> {
        Ok(self.field.elem(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, GfError> {
        Ok(self.field.elem(self.field.pow(self.value, e)?))
    }

    pub fn square(&self) -> FieldElement {
        self.field.elem(self.field.square(self.value))
    }

    pub fn sqrt(&self) -> FieldElement {
        self.field.elem(self.field.sqrt(self.value))
    }

    /// `x^(2^k)`.
    pub fn frobenius(&self, k: u32) -> FieldElement {
        self.field.elem(self.field.frob(self.value, k))
    }

    /// Discrete logarithm to the context generator `t`.
    pub fn dlog(&self) -> Result<u64, GfError> {
        self.field.dlog(self.value)
    }

    pub fn order(&self) -> Result<u64, GfError> {
        self.field.order(self.value)
    }

    /// Image under the fixed embedding of this element's field into `sup`.
    pub fn embed(&self, sup: &Field) -> Result<FieldElement, GfError> {
        Ok(sup.elem(sup.embed_raw(&self.field, self.value)?))
    }
}

/// Free-function form of the embedding with the source context checked.
pub fn embed(x: &FieldElement, sub: &Field, sup: &Field) -> Result<FieldElement, GfError> {
    if x.field() != sub {
        return Err(GfError::ContextMismatch(format!("{:?}", x.field()), format!("{sub:?}")));
    }
    x.embed(sup)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_raw(self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

// Operators panic on mixed contexts; the `try_*` methods report it instead.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field context mismatch")
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field context mismatch")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

//! The additive group law on the smooth locus of the cuspidal cubic
//! `y^2 z = x^3`, the orbit of ten points determined by a Lehmer root, and
//! the affine action a plane map induces on a cuspidal cubic.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use thiserror::Error;

use crate::gf2m::{Field, FieldElement, GfError};
use crate::poly::{MultiPoly, PolyError, ProjPoint, UniPoly};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubicError {
    #[error("point {0} is not on the cubic")]
    NotOnCurve(String),
    #[error("the cusp has no parameter")]
    CuspPoint,
    #[error("coefficient of beta vanishes at alpha = {0}")]
    DegenerateCoefficient(String),
    #[error("{0} is not a root of Lehmer's polynomial mod 2")]
    NotLehmerRoot(String),
    #[error("parameters of p{0} and p{1} coincide")]
    CollisionDetected(usize, usize),
    #[error("curve is not a cuspidal cubic: {0}")]
    NotCuspidal(String),
    #[error("map does not preserve the curve: {0}")]
    NotPreserved(String),
    #[error("induced parameter map is not affine: {0}")]
    NotAffine(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// `psi(t) = [t : 1 : t^3]`.
pub fn psi(t: &FieldElement) -> ProjPoint {
    let f = t.field();
    ProjPoint::new(f, &[t.bits(), 1, t.pow(3).expect("positive power").bits()]).expect("y = 1")
}

/// Inverse of `psi` on the smooth locus of `y^2 z = x^3`.
pub fn psi_inv(p: &ProjPoint) -> Result<FieldElement, CubicError> {
    let f = p.field();
    let c = p.raw();
    if c.len() != 3 {
        return Err(CubicError::NotOnCurve(p.to_string()));
    }
    let lhs = f.mul(f.square(c[1]), c[2]);
    let rhs = f.mul(f.square(c[0]), c[0]);
    if lhs != rhs {
        return Err(CubicError::NotOnCurve(p.to_string()));
    }
    if c[1] == 0 {
        return Err(CubicError::CuspPoint);
    }
    Ok(f.elem(f.div(c[0], c[1])?))
}

/// Three points of the smooth locus are collinear iff their parameters sum
/// to zero.
pub fn collinear(t1: &FieldElement, t2: &FieldElement, t3: &FieldElement) -> bool {
    (&(t1 + t2) + t3).is_zero()
}

/// Parameter of the third intersection of the chord through `psi(t1)` and
/// `psi(t2)` (the tangent when equal).
pub fn chord_third(t1: &FieldElement, t2: &FieldElement) -> FieldElement {
    t1 + t2
}

/// The map `t -> alpha t + beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineAction {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

impl AffineAction {
    pub fn new(alpha: FieldElement, beta: FieldElement) -> AffineAction {
        assert!(!alpha.is_zero(), "affine action needs alpha != 0");
        AffineAction { alpha, beta }
    }

    pub fn identity(field: &Field) -> AffineAction {
        AffineAction { alpha: field.one(), beta: field.zero() }
    }

    pub fn apply(&self, t: &FieldElement) -> FieldElement {
        &(&self.alpha * t) + &self.beta
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AffineAction) -> AffineAction {
        AffineAction { alpha: &self.alpha * &other.alpha, beta: self.apply(&other.beta) }
    }

    pub fn inverse(&self) -> AffineAction {
        let ai = self.alpha.inv().expect("alpha != 0");
        AffineAction { beta: &ai * &self.beta, alpha: ai }
    }

    /// Fixed parameter `beta / (alpha + 1)`, if `alpha != 1`.
    pub fn fixed_point(&self) -> Option<FieldElement> {
        let d = &self.alpha + &self.alpha.field().one();
        self.beta.try_div(&d).ok()
    }
}

/// Lehmer's polynomial reduced mod 2, over `field`.
pub fn lehmer_mod2(field: &Field) -> UniPoly {
    // x^10 + x^9 + x^7 + x^6 + x^5 + x^4 + x^3 + x + 1
    UniPoly::new(field.clone(), vec![1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1])
}

/// Roots of `lehmer_mod2` in `field`, sorted by discrete logarithm.
pub fn lehmer_roots(field: &Field) -> Vec<FieldElement> {
    let mut r: Vec<FieldElement> =
        lehmer_mod2(field).roots_in_base_field().into_iter().map(|b| field.elem(b)).collect();
    r.sort_by_key(|a| a.dlog().unwrap_or(0));
    r
}

fn sum_pows(alpha: &FieldElement, lo: i64, hi: i64) -> FieldElement {
    (lo..=hi).fold(alpha.field().zero(), |acc, k| &acc + &alpha.pow(k).expect("alpha != 0"))
}

fn p(alpha: &FieldElement, k: i64) -> FieldElement {
    alpha.pow(k).expect("alpha != 0")
}

/// `c(alpha) = alpha^-5 + ... + alpha^-1 + alpha^2`.
pub fn beta_coefficient(alpha: &FieldElement) -> FieldElement {
    &sum_pows(alpha, -5, -1) + &p(alpha, 2)
}

/// Parameter of `p_n`, `4 <= n <= 10`: `alpha^(n-11) (1 + sum_{i<=10-n} alpha^i beta)`.
pub fn orbit_param(alpha: &FieldElement, beta: &FieldElement, n: i64) -> FieldElement {
    let one = alpha.field().one();
    &p(alpha, n - 11) * &(&one + &(&sum_pows(alpha, 0, 10 - n) * beta))
}

/// Parameter of `p_3`: `alpha + beta + alpha^-7 (1 + sum_{i<=6} alpha^i beta)`.
pub fn p3_param(alpha: &FieldElement, beta: &FieldElement) -> FieldElement {
    &(alpha + beta) + &orbit_param(alpha, beta, 4)
}

/// First expression for `p_2`, from the chord through `tau(p_3)` and `p_3`.
pub fn p2_first(alpha: &FieldElement, beta: &FieldElement) -> FieldElement {
    let one = alpha.field().one();
    let k = &(&(alpha + &p(alpha, 2)) + &p(alpha, -6)) + &p(alpha, -7);
    let c = &(alpha + &one) + &p(alpha, -7);
    &k + &(&c * beta)
}

/// Second expression for `p_2`, from the chord through `tau(p_2)` and `p_4`.
pub fn p2_second(alpha: &FieldElement, beta: &FieldElement) -> FieldElement {
    let k = &(&p(alpha, 2) + &p(alpha, 3)) + &sum_pows(alpha, -7, -5);
    let c = &p(alpha, -7) + &sum_pows(alpha, -5, 2);
    &k + &(&c * beta)
}

/// Solves `p2_first = p2_second` for `beta`, for any nonzero `alpha`.
pub fn solve_beta(alpha: &FieldElement) -> Result<FieldElement, CubicError> {
    let f = alpha.field();
    if alpha.is_zero() {
        return Err(CubicError::DegenerateCoefficient(alpha.to_string()));
    }
    let c = beta_coefficient(alpha);
    if c.is_zero() {
        return Err(CubicError::DegenerateCoefficient(alpha.to_string()));
    }
    let k = &p2_first(alpha, &f.zero()) + &p2_second(alpha, &f.zero());
    Ok(k.try_div(&c)?)
}

/// `beta` determined by a root `alpha` of Lehmer's polynomial mod 2.
pub fn beta_from_alpha(alpha: &FieldElement) -> Result<FieldElement, CubicError> {
    if alpha.is_zero() || lehmer_mod2(alpha.field()).eval(alpha.bits()) != 0 {
        return Err(CubicError::NotLehmerRoot(alpha.to_string()));
    }
    solve_beta(alpha)
}

/// Parameters of `p_1, ..., p_10` (index 0 is `p_1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet10 {
    pub params: Vec<FieldElement>,
}

impl PointSet10 {
    pub fn param(&self, n: usize) -> &FieldElement {
        &self.params[n - 1]
    }

    pub fn points(&self) -> Vec<ProjPoint> {
        self.params.iter().map(psi).collect()
    }
}

/// The ten points for the action `t -> alpha t + beta`.
pub fn orbit_points(action: &AffineAction) -> Result<PointSet10, CubicError> {
    let (a, b) = (&action.alpha, &action.beta);
    let f = a.field();
    let mut params = vec![f.zero(); 10];
    params[0] = f.one();
    for n in 4..=10 {
        params[n - 1] = orbit_param(a, b, n as i64);
    }
    params[2] = chord_third(&action.apply(&params[0]), &params[3]);
    params[1] = chord_third(&action.apply(&params[2]), &params[2]);
    for i in 0..10 {
        for j in i + 1..10 {
            if params[i] == params[j] {
                return Err(CubicError::CollisionDetected(i + 1, j + 1));
            }
        }
    }
    Ok(PointSet10 { params })
}

/// Collinearity and orbit constraints encoded by the Coxeter element.
pub fn verify_coxeter_constraints(pts: &PointSet10, action: &AffineAction) -> Report {
    let t = |n: usize| pts.param(n).clone();
    let tau = |n: usize| action.apply(pts.param(n));
    let mut children = Vec::new();
    let line = |name: &str, a: FieldElement, b: FieldElement, c: FieldElement| {
        Report::leaf(name, collinear(&a, &b, &c), json!([a.to_string(), b.to_string(), c.to_string()]))
    };
    children.push(line("collinear tau(p1) p3 p4", tau(1), t(3), t(4)));
    children.push(line("collinear tau(p2) p2 p4", tau(2), t(2), t(4)));
    children.push(line("collinear tau(p3) p2 p3", tau(3), t(2), t(3)));
    // w(H) = 2H - E2 - E3 - E4: a line section (parameter sum 0, degree 3)
    // goes to a conic section through p2, p3, p4, so 3 beta = t2 + t3 + t4.
    let conic = &(&t(2) + &t(3)) + &t(4);
    children.push(Report::leaf(
        "hyperplane class tau(H) = 2H - E2 - E3 - E4",
        conic == action.beta,
        json!([action.beta.to_string(), conic.to_string()]),
    ));
    for n in 4..=10 {
        let next = if n == 10 { 1 } else { n + 1 };
        let img = tau(n);
        children.push(Report::leaf(
            format!("tau(p{n}) = p{next}"),
            img == t(next),
            json!([img.to_string(), t(next).to_string()]),
        ));
    }
    Report::node("coxeter constraints", children)
}

/// The Lehmer root, `beta`, and the ten parameters, for a valid `alpha`.
#[derive(Clone, Debug)]
pub struct AlphaRow {
    pub action: AffineAction,
    pub points: PointSet10,
}

/// Every nonzero `alpha` in `field` for which the ten points exist and all
/// Coxeter constraints hold, sorted by discrete logarithm.
pub fn valid_alphas(field: &Field) -> Vec<AlphaRow> {
    let mut out = Vec::new();
    for a in field.elements().filter(|a| !a.is_zero()) {
        let Ok(beta) = solve_beta(&a) else { continue };
        let action = AffineAction::new(a, beta);
        let Ok(points) = orbit_points(&action) else { continue };
        if verify_coxeter_constraints(&points, &action).passed() {
            out.push(AlphaRow { action, points });
        }
    }
    out.sort_by_key(|r| r.action.alpha.dlog().unwrap_or(0));
    out
}

/// Text table of the valid scalars: `alpha beta | t1 ... t10` per line.
pub fn alpha_table(field: &Field) -> String {
    let mut s = format!("# alpha beta | parameters of p1..p10\nfield: {}\n", field.header_equation());
    for row in valid_alphas(field) {
        let params: Vec<String> = row.points.params.iter().map(ToString::to_string).collect();
        s.push_str(&format!("{} {} | {}\n", row.action.alpha, row.action.beta, params.join(" ")));
    }
    s
}

/// Projection of a cuspidal cubic from its cusp: the parameter of a point
/// `P` is `M(P) / L(P)`, where `L` is the cuspidal tangent and `M` another
/// line through the cusp. The cusp sits at parameter infinity, so this is
/// affinely equivalent to the group parameter.
#[derive(Clone, Debug)]
pub struct CuspProjection {
    pub cusp: ProjPoint,
    pub tangent: [u64; 3],
    pub other: [u64; 3],
}

fn lin(field: &Field, l: &[u64; 3], p: &[u64]) -> u64 {
    (0..3).fold(0, |acc, i| field.add(acc, field.mul(l[i], p[i])))
}

impl CuspProjection {
    pub fn parameter(&self, p: &ProjPoint) -> Result<FieldElement, CubicError> {
        let f = p.field();
        let l = lin(f, &self.tangent, p.raw());
        if l == 0 {
            return Err(CubicError::CuspPoint);
        }
        Ok(f.elem(f.div(lin(f, &self.other, p.raw()), l)?))
    }
}

/// All points of the plane over the base field.
pub fn plane_points(field: &Field) -> Vec<ProjPoint> {
    let q = field.size();
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            pts.push(ProjPoint::new(field, &[a, b, 1]).expect("z = 1"));
        }
    }
    for a in 0..q {
        pts.push(ProjPoint::new(field, &[a, 1, 0]).expect("y = 1"));
    }
    pts.push(ProjPoint::new(field, &[1, 0, 0]).expect("x = 1"));
    pts
}

/// Singular points of a plane curve over the base field, by exhaustion.
pub fn singular_points(curve: &MultiPoly) -> Vec<ProjPoint> {
    let partials: Vec<MultiPoly> = (0..3).map(|i| curve.partial(i)).collect();
    plane_points(curve.field())
        .into_iter()
        .filter(|p| curve.eval(p.raw()) == 0 && partials.iter().all(|d| d.eval(p.raw()) == 0))
        .collect()
}

/// Locates the cusp and its tangent line.
pub fn cusp_projection(curve: &MultiPoly) -> Result<CuspProjection, CubicError> {
    let f = curve.field().clone();
    if curve.nvars() != 3 || curve.homogeneous_degree() != Some(3) {
        return Err(CubicError::NotCuspidal("not a homogeneous cubic in three variables".into()));
    }
    let sing = singular_points(curve);
    if sing.len() != 1 {
        return Err(CubicError::NotCuspidal(format!("{} rational singular points", sing.len())));
    }
    let cusp = sing[0].clone();
    let (k, aff) = cusp.affine();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let local = curve.substitute(&chart_map(&f, k, &others))?;
    let form = local.translate(&aff).homogeneous_part(2);
    let a = form.coeff_of(&[2, 0]).bits();
    let b = form.coeff_of(&[1, 1]).bits();
    let c = form.coeff_of(&[0, 2]).bits();
    if form.is_zero() || b != 0 {
        return Err(CubicError::NotCuspidal("tangent cone is not a double line".into()));
    }
    // (sqrt(a) u + sqrt(c) v)^2 with u = X_i - u0 X_k, v = X_j - v0 X_k.
    let (ra, rc) = (f.sqrt(a), f.sqrt(c));
    let mut tangent = [0u64; 3];
    tangent[others[0]] = ra;
    tangent[others[1]] = rc;
    tangent[k] = f.add(f.mul(ra, aff[0]), f.mul(rc, aff[1]));
    // Second line through the cusp: whichever coordinate line is independent.
    let mut other = [0u64; 3];
    let pick = if rc != 0 { 0 } else { 1 };
    other[others[pick]] = 1;
    other[k] = aff[pick];
    Ok(CuspProjection { cusp, tangent, other })
}

/// Substitution sending the affine chart `X_k = 1` into the plane.
fn chart_map(f: &Field, k: usize, others: &[usize]) -> Vec<MultiPoly> {
    (0..3)
        .map(|i| {
            if i == k {
                MultiPoly::one(f, 2)
            } else {
                MultiPoly::var(f, 2, others.iter().position(|&o| o == i).unwrap())
            }
        })
        .collect()
}

/// Image of a point under a plane map; `None` at a base point.
pub fn apply_map(map: &[MultiPoly], p: &ProjPoint) -> Option<ProjPoint> {
    let img: Vec<u64> = map.iter().map(|c| c.eval(p.raw())).collect();
    ProjPoint::new(p.field(), &img).ok()
}

/// Affine action induced on a cuspidal cubic, in the cusp-projection parameter.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub projection: CuspProjection,
    pub action: AffineAction,
    /// Number of sample points the fit was validated on.
    pub validated: usize,
    pub base_points: Vec<ProjPoint>,
}

/// Fits `u -> alpha u + beta` to the parameter map induced by `map` on the
/// rational points of `curve`, validating on every remaining sample.
pub fn induced_affine_map(curve: &MultiPoly, map: &[MultiPoly]) -> Result<InducedAction, CubicError> {
    if map.len() != 3 {
        return Err(CubicError::NotPreserved(format!("map has {} components", map.len())));
    }
    let proj = cusp_projection(curve)?;
    let mut samples = Vec::new();
    let mut base_points = Vec::new();
    for p in plane_points(curve.field()) {
        if curve.eval(p.raw()) != 0 || p == proj.cusp {
            continue;
        }
        let Some(img) = apply_map(map, &p) else {
            base_points.push(p);
            continue;
        };
        if curve.eval(img.raw()) != 0 {
            return Err(CubicError::NotPreserved(format!("{p} maps to {img}")));
        }
        let u = proj.parameter(&p)?;
        let v = proj.parameter(&img).map_err(|_| CubicError::NotPreserved(format!("{p} maps to the cusp")))?;
        samples.push((u, v));
    }
    samples.sort_by_key(|(u, _)| u.bits());
    if samples.len() < 3 {
        return Err(CubicError::NotAffine(format!("only {} samples", samples.len())));
    }
    let (u0, v0) = &samples[0];
    let (u1, v1) = &samples[1];
    let alpha = (v0 + v1).try_div(&(u0 + u1))?;
    if alpha.is_zero() {
        return Err(CubicError::NotAffine("constant on two samples".into()));
    }
    let beta = v0 + &(&alpha * u0);
    let action = AffineAction::new(alpha, beta);
    for (u, v) in &samples[2..] {
        if action.apply(u) != *v {
            return Err(CubicError::NotAffine(format!("sample {u} maps to {v}")));
        }
    }
    Ok(InducedAction { projection: proj, action, validated: samples.len() - 2, base_points })
}

/// An affine map carrying the set `a` bijectively onto `b`, if one exists.
pub fn match_point_sets(a: &[FieldElement], b: &[FieldElement]) -> Option<AffineAction> {
    if a.len() != b.len() {
        return None;
    }
    let target: BTreeSet<u64> = b.iter().map(FieldElement::bits).collect();
    let src: BTreeSet<u64> = a.iter().map(FieldElement::bits).collect();
    if src.len() != a.len() || target.len() != b.len() {
        return None;
    }
    if a.len() == 1 {
        return Some(AffineAction::new(a[0].field().one(), &a[0] + &b[0]));
    }
    let (a0, a1) = (&a[0], &a[1]);
    let da = a0 + a1;
    for b0 in b {
        for b1 in b {
            if b0 == b1 {
                continue;
            }
            let Ok(alpha) = (b0 + b1).try_div(&da) else { continue };
            let cand = AffineAction::new(alpha.clone(), b0 + &(&alpha * a0));
            if a.iter().all(|t| target.contains(&cand.apply(t).bits())) {
                return Some(cand);
            }
        }
    }
    None
}

pub(crate) fn elem_list(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|e| Value::String(e.to_string())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf32() -> Field {
        Field::gf32()
    }

    fn det3(f: &Field, p: &[ProjPoint]) -> u64 {
        let m: Vec<&[u64]> = p.iter().map(ProjPoint::raw).collect();
        let t = |a: u64, b: u64, c: u64| f.mul(f.mul(a, b), c);
        [
            t(m[0][0], m[1][1], m[2][2]),
            t(m[0][1], m[1][2], m[2][0]),
            t(m[0][2], m[1][0], m[2][1]),
            t(m[0][2], m[1][1], m[2][0]),
            t(m[0][0], m[1][2], m[2][1]),
            t(m[0][1], m[1][0], m[2][2]),
        ]
        .into_iter()
        .fold(0, |acc, v| f.add(acc, v))
    }

    #[test]
    fn psi_examples() {
        let f = gf32();
        assert_eq!(psi(&f.zero()).raw(), &[0, 1, 0]);
        assert_eq!(psi(&f.one()).raw(), &[1, 1, 1]);
        let cusp = ProjPoint::new(&f, &[0, 0, 1]).unwrap();
        assert_eq!(psi_inv(&cusp), Err(CubicError::CuspPoint));
        let off = ProjPoint::new(&f, &[1, 0, 1]).unwrap();
        assert!(matches!(psi_inv(&off), Err(CubicError::NotOnCurve(_))));
        for t in f.elements() {
            assert_eq!(psi_inv(&psi(&t)).unwrap(), t);
        }
    }

    #[test]
    fn collinearity_matches_determinant_over_gf8() {
        let f = Field::new(3, 0b1011).unwrap();
        let el: Vec<FieldElement> = f.elements().collect();
        for a in &el {
            for b in &el {
                for c in &el {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let pts = [psi(a), psi(b), psi(c)];
                    assert_eq!(det3(&f, &pts) == 0, collinear(a, b, c), "{a} {b} {c}");
                }
            }
        }
        // Tangent at psi(t) passes through the flex.
        for t in &el {
            assert!(collinear(t, t, &f.zero()));
        }
    }

    #[test]
    fn beta_for_every_lehmer_root() {
        let f = gf32();
        let roots = lehmer_roots(&f);
        assert_eq!(roots.len(), 10);
        for a in &roots {
            assert!(!beta_coefficient(a).is_zero());
            let b = beta_from_alpha(a).unwrap();
            assert_eq!(p2_first(a, &b), p2_second(a, &b));
            let action = AffineAction::new(a.clone(), b.clone());
            let pts = orbit_points(&action).unwrap();
            assert_eq!(pts.param(1), &f.one());
            assert_eq!(pts.param(3), &p3_param(a, &b));
            assert_eq!(pts.param(2), &p2_first(a, &b));
            let p10 = &a.inv().unwrap() * &(&f.one() + &b);
            assert_eq!(pts.param(10), &p10);
            assert!(verify_coxeter_constraints(&pts, &action).passed());
            let bad = AffineAction::new(a.clone(), &b + &f.one());
            let broken = orbit_points(&bad).map(|p| verify_coxeter_constraints(&p, &bad).passed());
            assert_ne!(broken, Ok(true));
        }
        assert!(matches!(beta_from_alpha(&f.one()), Err(CubicError::NotLehmerRoot(_))));
    }

    #[test]
    fn valid_alphas_are_the_frobenius_inverse_orbit() {
        let f = gf32();
        let rows = valid_alphas(&f);
        let valid: BTreeSet<u64> = rows.iter().map(|r| r.action.alpha.bits()).collect();
        let a = &rows[0].action.alpha;
        let orbit: BTreeSet<u64> =
            (0..5).flat_map(|i| [a.pow(1 << i).unwrap().bits(), a.pow(-(1 << i)).unwrap().bits()]).collect();
        assert_eq!(valid, orbit);
        let roots: BTreeSet<u64> = lehmer_roots(&f).iter().map(FieldElement::bits).collect();
        assert_eq!(valid, roots);
    }

    #[test]
    fn identity_on_standard_cubic() {
        let f = gf32();
        let c = MultiPoly::from_terms(&f, 3, [(vec![0, 2, 1], 1), (vec![3, 0, 0], 1)]);
        let id: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&f, 3, i)).collect();
        let ind = induced_affine_map(&c, &id).unwrap();
        assert_eq!(ind.action, AffineAction::identity(&f));
        assert_eq!(ind.projection.cusp.raw(), &[0, 0, 1]);
        let t = f.gen_pow(7);
        assert_eq!(ind.projection.parameter(&psi(&t)).unwrap(), t);
    }

    #[test]
    fn set_matching() {
        let f = gf32();
        let a: Vec<FieldElement> = (1..6).map(|k| f.gen_pow(k)).collect();
        assert_eq!(match_point_sets(&a, &a), Some(AffineAction::identity(&f)));
        let m = AffineAction::new(f.gen_pow(3), f.gen_pow(9));
        let mut b: Vec<FieldElement> = a.iter().map(|t| m.apply(t)).collect();
        b.reverse();
        let found = match_point_sets(&a, &b).unwrap();
        assert!(a.iter().all(|t| b.contains(&found.apply(t))));
        let c: Vec<FieldElement> = [0, 1, 2, 4, 8].iter().map(|&k| f.elem(k)).collect();
        let d: Vec<FieldElement> = [0, 1, 2, 3, 8].iter().map(|&k| f.elem(k)).collect();
        assert_eq!(match_point_sets(&c, &d), None);
    }
}

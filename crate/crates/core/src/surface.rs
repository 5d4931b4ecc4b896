//! Checks on the double plane `w^2 = s(x, y, z)` over GF(32), the quadratic
//! map `f`, the automorphism `sigma0` and the cuspidal cubic `B = {g = 0}`.

use std::collections::BTreeSet;

use serde_json::json;
use thiserror::Error;

use crate::cubic::{
    self, apply_map, beta_from_alpha, cusp_projection, elem_list, induced_affine_map, lehmer_mod2, match_point_sets,
    orbit_points, plane_points, AffineAction, CubicError,
};
use crate::data::DataFiles;
use crate::gf2m::{Field, FieldElement};
use crate::poly::{
    adjusted_multiplicity, linear_solve, multiplicity_at, parse_poly_file, LinearSolution, Monomial, MultiPoly,
    PolyError, PolyFile, ProjPoint,
};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("{file}: {source}")]
    Parse { file: &'static str, source: PolyError },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("no polynomial tail makes the composition the identity")]
    NoSolution,
    #[error("tail of the inverse is not unique ({0}-dimensional family)")]
    NonUniqueSolution(usize),
    #[error("division not exact: {0}")]
    DivisionNotExact(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cubic(#[from] CubicError),
}

/// Number of terms of `s` as printed.
pub const S_TERMS: usize = 42;

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub field: Field,
    /// Right-hand side of `w^2 = s`, a form of degree 12 in `x, y, z`.
    pub s: MultiPoly,
    /// Components of the quadratic map `f`.
    pub f: Vec<MultiPoly>,
    /// `sigma0` sends `w` to `c w + eta`.
    pub c: MultiPoly,
    pub eta: MultiPoly,
    /// The cuspidal cubic through `p1, ..., p10`.
    pub g: MultiPoly,
    /// `p0, p1, ..., p10`.
    pub points: Vec<ProjPoint>,
    pub cusp: ProjPoint,
}

fn parse(file: &'static str, text: &str) -> Result<PolyFile, SurfaceError> {
    parse_poly_file(text).map_err(|source| SurfaceError::Parse { file, source })
}

fn need<'a>(pf: &'a PolyFile, file: &str, name: &str) -> Result<&'a MultiPoly, SurfaceError> {
    pf.poly(name).ok_or_else(|| SurfaceError::InvariantViolation(format!("{file} has no entry `{name}`")))
}

/// Restricts a polynomial in `x, y, z[, w]` that does not involve `w` to
/// `x, y, z`.
fn plane(p: &MultiPoly, name: &str) -> Result<MultiPoly, SurfaceError> {
    match p.nvars() {
        3 => Ok(p.clone()),
        4 if !p.depends_on(3) => Ok(p.select_vars(&[0, 1, 2])),
        _ => Err(SurfaceError::InvariantViolation(format!("{name} must be a polynomial in x, y, z"))),
    }
}

fn check_degree(p: &MultiPoly, name: &str, d: u32) -> Result<(), SurfaceError> {
    if p.homogeneous_degree() != Some(d) {
        return Err(SurfaceError::InvariantViolation(format!("{name} is not homogeneous of degree {d}")));
    }
    Ok(())
}

pub fn load_model(files: &DataFiles) -> Result<SurfaceModel, SurfaceError> {
    let surf = parse("surface.poly", &files.surface)?;
    let auto = parse("automorphism.poly", &files.automorphism)?;
    let pts = parse("points.dat", &files.points)?;
    let field = surf.field.clone();
    if auto.field != field || pts.field != field {
        return Err(SurfaceError::InvariantViolation("data files use different fields".into()));
    }
    let s = plane(need(&surf, "surface.poly", "s")?, "s")?;
    let g = plane(need(&surf, "surface.poly", "cubic")?, "cubic")?;
    let mut f = Vec::new();
    for n in ["fx", "fy", "fz"] {
        f.push(plane(need(&auto, "automorphism.poly", n)?, n)?);
    }
    let c = plane(need(&auto, "automorphism.poly", "c")?, "c")?;
    let eta = plane(need(&auto, "automorphism.poly", "eta")?, "eta")?;
    check_degree(&s, "s", 12)?;
    check_degree(&g, "cubic", 3)?;
    for (p, n) in f.iter().zip(["fx", "fy", "fz"]) {
        check_degree(p, n, 2)?;
    }
    check_degree(&c, "c", 6)?;
    check_degree(&eta, "eta", 12)?;
    let mut points = Vec::new();
    for i in 0..=10 {
        let name = format!("p{i}");
        let p =
            pts.point(&name).ok_or_else(|| SurfaceError::InvariantViolation(format!("points.dat has no `{name}`")))?;
        if p.raw().len() != 3 {
            return Err(SurfaceError::InvariantViolation(format!("{name} is not a point of the plane")));
        }
        if g.eval(p.raw()) != 0 {
            return Err(SurfaceError::InvariantViolation(format!("g({name}) != 0")));
        }
        points.push(p.clone());
    }
    let cusp =
        pts.point("cusp").ok_or_else(|| SurfaceError::InvariantViolation("points.dat has no `cusp`".into()))?.clone();
    Ok(SurfaceModel { field, s, f, c, eta, g, points, cusp })
}

fn pt(p: &ProjPoint) -> String {
    p.to_string()
}

pub fn verify_orbit(m: &SurfaceModel) -> Report {
    let mut children = Vec::new();
    for i in 4..=10 {
        let next = if i == 10 { 1 } else { i + 1 };
        let img = apply_map(&m.f, &m.points[i]);
        let ok = img.as_ref() == Some(&m.points[next]);
        let shown = img.as_ref().map_or("base point".to_string(), pt);
        children.push(Report::leaf(format!("f(p{i}) = p{next}"), ok, json!([pt(&m.points[i]), shown])));
    }
    let img0 = apply_map(&m.f, &m.points[0]);
    children.push(Report::leaf(
        "f(p0) = p0",
        img0.as_ref() == Some(&m.points[0]),
        json!(img0.as_ref().map_or("base point".to_string(), pt)),
    ));
    let base: Vec<ProjPoint> = plane_points(&m.field).into_iter().filter(|p| apply_map(&m.f, p).is_none()).collect();
    let expected: BTreeSet<&ProjPoint> = m.points[1..=3].iter().collect();
    let found: BTreeSet<&ProjPoint> = base.iter().collect();
    children.push(Report::leaf(
        "base locus of f = {p1, p2, p3}",
        found == expected,
        json!(base.iter().map(pt).collect::<Vec<_>>()),
    ));
    Report::node("orbit", children)
}

/// Cubic monomials in a fixed order.
fn cubic_monomials() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            out.push([a, b, 3 - a - b]);
        }
    }
    out
}

fn normalize(field: &Field, v: &[u64]) -> Vec<u64> {
    let lead = v.iter().copied().find(|&c| c != 0).unwrap_or(1);
    let inv = field.inv(lead).expect("nonzero");
    v.iter().map(|&c| field.mul(c, inv)).collect()
}

pub fn verify_cubic(m: &SurfaceModel) -> Report {
    let f = &m.field;
    let monos = cubic_monomials();
    let rows: Vec<Vec<u64>> = m.points[1..=10]
        .iter()
        .map(|p| monos.iter().map(|e| MultiPoly::from_terms(f, 3, [(e.to_vec(), 1)]).eval(p.raw())).collect())
        .collect();
    let kernel = crate::poly::nullspace(f, &rows, monos.len());
    let g_vec: Vec<u64> = monos.iter().map(|e| m.g.coeff_of(e).bits()).collect();
    let unique = kernel.len() == 1 && normalize(f, &kernel[0]) == normalize(f, &g_vec);
    let mut children =
        vec![Report::leaf("unique cubic through p1..p10 is g", unique, json!({"kernel_dim": kernel.len()}))];
    let cusp = m.cusp.raw();
    let vanish = m.g.eval(cusp) == 0 && (0..3).all(|i| m.g.partial(i).eval(cusp) == 0);
    children.push(Report::leaf("g and its partials vanish at the cusp", vanish, json!(pt(&m.cusp))));
    let tangent = match cusp_projection(&m.g) {
        Ok(proj) => Report::leaf(
            "cusp is the only singular point, with a double-line tangent cone",
            proj.cusp == m.cusp,
            json!({"cusp": pt(&proj.cusp), "tangent": elem_list(&proj.tangent.map(|c| f.elem(c)))}),
        ),
        Err(e) => Report::leaf(
            "cusp is the only singular point, with a double-line tangent cone",
            false,
            json!(e.to_string()),
        ),
    };
    children.push(tangent);
    let p0 = m.points[0].raw();
    let grad: Vec<FieldElement> = (0..3).map(|i| f.elem(m.g.partial(i).eval(p0))).collect();
    children.push(Report::leaf(
        "p0 is a smooth point of B",
        m.g.eval(p0) == 0 && grad.iter().any(|c| !c.is_zero()),
        json!({"gradient": elem_list(&grad)}),
    ));
    Report::node("cubic B", children)
}

pub fn verify_equivariance(m: &SurfaceModel) -> Result<Report, SurfaceError> {
    let lhs = m.s.substitute(&m.f)?;
    let rhs = m.c.square().mul(&m.s).add(&m.eta.square());
    let degrees = (lhs.homogeneous_degree(), rhs.homogeneous_degree());
    Ok(Report::node(
        "equivariance",
        vec![
            Report::leaf(
                "s(f) = c^2 s + eta^2",
                lhs == rhs,
                json!({"terms": lhs.len(), "difference_terms": lhs.add(&rhs).len()}),
            ),
            Report::leaf("both sides have degree 24", degrees == (Some(24), Some(24)), json!([degrees.0, degrees.1])),
        ],
    ))
}

/// `sigma0^-1` with the tail of its `w`-component solved for.
#[derive(Clone, Debug)]
pub struct SigmaInverse {
    /// Plane components `((x + az) z, (x + az)(y + bz), (y + bz) z)`.
    pub components: Vec<MultiPoly>,
    /// Coefficient of `w`: `g^15 (x + az)^2 (y + bz)^2 z^2`.
    pub scale: MultiPoly,
    /// Solved tail.
    pub eta: MultiPoly,
    /// Common factor of `sigma0^-1 . sigma0` on the plane.
    pub factor_after: MultiPoly,
    /// Common factor of `sigma0 . sigma0^-1` on the plane.
    pub factor_before: MultiPoly,
}

fn degree_monomials(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}

/// The common factor `h` with `comp_i(map) = h x_i`, if there is one.
fn common_factor(comps: &[MultiPoly], map: &[MultiPoly]) -> Result<Option<MultiPoly>, SurfaceError> {
    let f = comps[0].field();
    let images: Vec<MultiPoly> = comps.iter().map(|c| c.substitute(map)).collect::<Result<_, _>>()?;
    let Some(h) = images[0].exact_div(&MultiPoly::var(f, 3, 0)) else {
        return Ok(None);
    };
    let ok = (0..3).all(|i| images[i] == h.mul(&MultiPoly::var(f, 3, i)));
    Ok(ok.then_some(h))
}

/// Solves for the tail of `sigma0^-1`'s `w`-component so that
/// `sigma0^-1 . sigma0` is the identity up to a common factor, then checks
/// the other composition.
pub fn derive_sigma_inverse(m: &SurfaceModel) -> Result<SigmaInverse, SurfaceError> {
    let f = &m.field;
    let (x, y, z) = (MultiPoly::var(f, 3, 0), MultiPoly::var(f, 3, 1), MultiPoly::var(f, 3, 2));
    let a = f.gen_pow(29).bits();
    let b = f.gen_pow(6).bits();
    let xa = x.add(&z.scale(a));
    let yb = y.add(&z.scale(b));
    let components = vec![xa.mul(&z), xa.mul(&yb), yb.mul(&z)];
    let scale = xa.square().mul(&yb.square()).mul(&z.square()).scale(f.gen_pow(15).bits());

    let h = common_factor(&components, &m.f)?.ok_or_else(|| {
        SurfaceError::InvariantViolation("sigma0^-1 . sigma0 is not the identity on the plane".into())
    })?;
    // w-component of sigma0^-1 . sigma0: scale(f) (c w + eta) + eta'(f) = h^6 w.
    let scale_f = scale.substitute(&m.f)?;
    if scale_f.mul(&m.c) != h.pow(6) {
        return Err(SurfaceError::InvariantViolation("coefficient of w in sigma0^-1 . sigma0 is not h^6".into()));
    }
    let target = scale_f.mul(&m.eta);
    // eta'(f) = target, linear in the coefficients of eta'.
    let monos = degree_monomials(12);
    let images: Vec<MultiPoly> = monos
        .iter()
        .map(|e| MultiPoly::from_terms(f, 3, [(e.clone(), 1)]).substitute(&m.f))
        .collect::<Result<_, _>>()?;
    let mut rows_index: BTreeSet<Monomial> = target.terms().map(|(mm, _)| mm.clone()).collect();
    for im in &images {
        rows_index.extend(im.terms().map(|(mm, _)| mm.clone()));
    }
    let rows_index: Vec<Monomial> = rows_index.into_iter().collect();
    let a_mat: Vec<Vec<u64>> = rows_index.iter().map(|mm| images.iter().map(|im| im.coeff(mm)).collect()).collect();
    let rhs: Vec<u64> = rows_index.iter().map(|mm| target.coeff(mm)).collect();
    let sol = match linear_solve(f, &a_mat, &rhs)? {
        LinearSolution::Unique(v) => v,
        LinearSolution::Family { kernel, .. } => return Err(SurfaceError::NonUniqueSolution(kernel.len())),
        LinearSolution::Inconsistent => return Err(SurfaceError::NoSolution),
    };
    let eta = MultiPoly::from_terms(f, 3, monos.into_iter().zip(sol));

    // sigma0 . sigma0^-1: c(comps) (scale w + eta') + eta(comps) = h'^6 w.
    let h2 = common_factor(&m.f, &components)?.ok_or_else(|| {
        SurfaceError::InvariantViolation("sigma0 . sigma0^-1 is not the identity on the plane".into())
    })?;
    let c_inv = m.c.substitute(&components)?;
    if c_inv.mul(&scale) != h2.pow(6) || c_inv.mul(&eta) != m.eta.substitute(&components)? {
        return Err(SurfaceError::InvariantViolation("sigma0 . sigma0^-1 is not the identity on w".into()));
    }
    Ok(SigmaInverse { components, scale, eta, factor_after: h, factor_before: h2 })
}

/// Element `(a + b w) / d` of the function field of `w^2 = s`, with `a, b, d`
/// forms in `x, y, z`; products are reduced with `w^2 -> s`.
#[derive(Clone, Debug)]
pub struct FnElem {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub d: MultiPoly,
}

impl FnElem {
    pub fn ratio(num: MultiPoly, d: MultiPoly) -> FnElem {
        FnElem { b: MultiPoly::zero(num.field(), 3), a: num, d }
    }

    /// `w / z^6`.
    pub fn w_over_z6(field: &Field) -> FnElem {
        FnElem { a: MultiPoly::zero(field, 3), b: MultiPoly::one(field, 3), d: MultiPoly::var(field, 3, 2).pow(6) }
    }

    pub fn mul(&self, o: &FnElem, s: &MultiPoly) -> FnElem {
        FnElem {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(s)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
            d: self.d.mul(&o.d),
        }
    }

    /// Pullback along `(x, y, z, w) -> (map, wa w + wb)`.
    pub fn pullback(&self, map: &[MultiPoly], wa: &MultiPoly, wb: &MultiPoly) -> Result<FnElem, PolyError> {
        let a = self.a.substitute(map)?;
        let b = self.b.substitute(map)?;
        Ok(FnElem { a: a.add(&b.mul(wb)), b: b.mul(wa), d: self.d.substitute(map)? })
    }

    /// `D = g^2 d/dw`, which kills `x, y, z`.
    pub fn derive(&self, g: &MultiPoly) -> FnElem {
        FnElem { a: self.b.mul(&g.square()), b: MultiPoly::zero(g.field(), 3), d: self.d.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The scalar `lambda` with `self = lambda * other`, if any.
    pub fn scalar_multiple_of(&self, o: &FnElem) -> Option<FieldElement> {
        let f = self.a.field();
        let pairs = [(self.a.mul(&o.d), o.a.mul(&self.d)), (self.b.mul(&o.d), o.b.mul(&self.d))];
        let (num, den) = pairs.iter().find(|(_, q)| !q.is_zero())?;
        let lambda = f.div(num.leading()?.1, den.leading()?.1).ok()?;
        pairs.iter().all(|(p, q)| *p == q.scale(lambda)).then(|| f.elem(lambda))
    }
}

/// Scalar `lambda` with `sigma0 D sigma0^-1 = lambda D`, checked on `w/z^6`.
#[derive(Clone, Debug)]
pub struct DerivationCheck {
    pub g_factor: Option<MultiPoly>,
    pub lambda: Option<FieldElement>,
    pub kills_x_over_z: bool,
    pub kills_w_squared: bool,
}

pub fn derivation_scalar(m: &SurfaceModel, inv: &SigmaInverse) -> Result<DerivationCheck, SurfaceError> {
    let f = &m.field;
    let g_f = m.g.substitute(&m.f)?;
    let g_factor = g_f.exact_div(&m.g);
    let w = FnElem::w_over_z6(f);
    let back = w.pullback(&inv.components, &inv.scale, &inv.eta)?;
    let result = back.derive(&m.g).pullback(&m.f, &m.c, &m.eta)?;
    let lambda = result.scalar_multiple_of(&w.derive(&m.g));
    let x_over_z = FnElem::ratio(MultiPoly::var(f, 3, 0), MultiPoly::var(f, 3, 2));
    let kills_x_over_z = x_over_z.derive(&m.g).is_zero();
    let kills_w_squared = w.mul(&w, &m.s).derive(&m.g).is_zero();
    Ok(DerivationCheck { g_factor, lambda, kills_x_over_z, kills_w_squared })
}

pub fn verify_derivation(m: &SurfaceModel, inv: &SigmaInverse) -> Result<(Report, Option<FieldElement>), SurfaceError> {
    let f = &m.field;
    let chk = derivation_scalar(m, inv)?;
    let xyz = MultiPoly::from_terms(f, 3, [(vec![1, 1, 1], f.gen_pow(12).bits())]);
    let g_ok = chk.g_factor.as_ref() == Some(&xyz);
    let report = Report::node(
        "derivation",
        vec![
            Report::leaf(
                "sigma0(g) = g^12 xyz g",
                g_ok,
                json!(chk.g_factor.as_ref().map_or("not divisible".to_string(), |h| h.format_with(&["x", "y", "z"]))),
            ),
            Report::leaf("D(x/z) = 0", chk.kills_x_over_z, json!(null)),
            Report::leaf("D(w^2/z^12) = 0 after w^2 -> s", chk.kills_w_squared, json!(null)),
            Report::leaf(
                "sigma0 D sigma0^-1 = g^8 D",
                chk.lambda == Some(f.gen_pow(8)),
                json!(chk.lambda.as_ref().map_or("not a scalar multiple".to_string(), ToString::to_string)),
            ),
        ],
    );
    Ok((report, chk.lambda))
}

pub fn inverse_report(inv: &Result<SigmaInverse, SurfaceError>) -> Report {
    let names = ["x", "y", "z"];
    match inv {
        Ok(inv) => Report::node(
            "inverse",
            vec![
                Report::leaf(
                    "tail of sigma0^-1 exists and is unique",
                    true,
                    json!({"terms": inv.eta.len(), "eta": inv.eta.format_with(&names)}),
                ),
                Report::leaf(
                    "sigma0^-1 . sigma0 = identity up to a common factor",
                    true,
                    json!(inv.factor_after.format_with(&names)),
                ),
                Report::leaf(
                    "sigma0 . sigma0^-1 = identity up to a common factor",
                    true,
                    json!(inv.factor_before.format_with(&names)),
                ),
            ],
        ),
        Err(e) => Report::node(
            "inverse",
            vec![Report::leaf("tail of sigma0^-1 exists and is unique", false, json!(e.to_string()))],
        ),
    }
}

/// Restriction of a form in `x, y, z` to the chart `x_k = 1`, in the two
/// remaining variables.
pub fn chart(p: &MultiPoly, k: usize) -> MultiPoly {
    p.specialize(k, 1).drop_var(k)
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub host: Field,
    /// Distinct singular points, coordinates in `host`.
    pub points: Vec<ProjPoint>,
    /// Points found per chart, in the order `z = 1`, `y = 1`, `x = 1`.
    pub per_chart: Vec<usize>,
}

/// Common zeros of the chart partials of `s`, over `GF(2^bound)`.
pub fn singular_locus(m: &SurfaceModel, bound: u32) -> Result<SingularLocus, SurfaceError> {
    let host = Field::canonical(bound).map_err(PolyError::from)?;
    let mut points = BTreeSet::new();
    let mut per_chart = Vec::new();
    for k in [2usize, 1, 0] {
        let local = chart(&m.s, k);
        let sol = crate::poly::solve_plane_system(&[local.partial(0), local.partial(1)], bound)?;
        per_chart.push(sol.points.len());
        for (u, v) in sol.points {
            let mut c = vec![u, v];
            c.insert(k, 1);
            points.insert(ProjPoint::new(&sol.host, &c)?);
        }
    }
    Ok(SingularLocus { host, points: points.into_iter().collect(), per_chart })
}

pub fn singular_locus_report(m: &SurfaceModel, bound: u32) -> Report {
    let name = "singular locus";
    let loc = match singular_locus(m, bound) {
        Ok(l) => l,
        Err(e) => return Report::node(name, vec![Report::error("Jacobian system solved", e)]),
    };
    let expected: Result<BTreeSet<ProjPoint>, _> = m.points.iter().map(|p| p.embed(&loc.host)).collect();
    let found: BTreeSet<ProjPoint> = loc.points.iter().cloned().collect();
    let base_degree = m.field.degree();
    let rational =
        loc.points.iter().all(|p| p.raw().iter().all(|&c| base_degree.is_multiple_of(loc.host.min_subfield_degree(c))));
    let shown: Vec<String> = loc
        .points
        .iter()
        .map(|p| {
            let back: Vec<String> = p.raw().iter().map(|&c| lower(&loc.host, &m.field, c)).collect();
            format!("({})", back.join(" : "))
        })
        .collect();
    Report::node(
        name,
        vec![
            Report::leaf(
                "11 singular points",
                loc.points.len() == 11,
                json!({"count": loc.points.len(), "per_chart": loc.per_chart}),
            ),
            Report::leaf("all singular points are GF(32)-rational", rational, json!(shown)),
            Report::leaf("singular points = {p0, ..., p10}", expected.is_ok_and(|e| e == found), json!(null)),
        ],
    )
}

/// Writes an element of `host` lying in the subfield `base` in `base`'s
/// notation, or in `host`'s otherwise.
fn lower(host: &Field, base: &Field, c: u64) -> String {
    base.elements()
        .find(|e| host.embed_raw(base, e.bits()).ok() == Some(c))
        .map_or_else(|| host.format_raw(c), |e| e.to_string())
}

/// Affine chart and coordinates of a plane point.
fn local_at(p: &MultiPoly, point: &ProjPoint) -> (MultiPoly, Vec<u64>) {
    let (k, aff) = point.affine();
    (chart(p, k), aff)
}

pub fn verify_multiplicities(m: &SurfaceModel) -> Result<Report, SurfaceError> {
    let mut children = Vec::new();
    for i in 1..=10 {
        let (local, aff) = local_at(&m.s, &m.points[i]);
        let plain = multiplicity_at(&local, &aff)?;
        let adjusted = adjusted_multiplicity(&local, &aff)?;
        children.push(Report::leaf(
            format!("multiplicity at p{i} is 4"),
            adjusted == Some(4),
            json!({"adjusted": adjusted, "plain": plain}),
        ));
    }
    let (local, aff) = local_at(&m.s, &m.points[0]);
    // Completing the square: w -> w + sqrt(s(p0)) replaces s by s + s(p0).
    let value = local.eval(&aff);
    let shifted = local.add(&MultiPoly::constant(&m.field, 2, value));
    let plain = multiplicity_at(&shifted, &aff)?;
    let adjusted = adjusted_multiplicity(&local, &aff)?;
    let form = shifted.translate(&aff).homogeneous_part(2);
    let mixed = form.coeff_of(&[1, 1]);
    children.push(Report::leaf(
        "adjusted multiplicity at p0 is 2",
        plain == 2 && adjusted == Some(2),
        json!({"adjusted": adjusted, "after shift": plain, "s(p0)": m.field.format_raw(value)}),
    ));
    children.push(Report::leaf(
        "initial form at p0 is not a square",
        plain == 2 && !mixed.is_zero(),
        json!(form.format_with(&["u", "v"])),
    ));
    Ok(Report::node("multiplicities", children))
}

/// Blow-up charts at a point of multiplicity 4: with local coordinates
/// `(u, v)` centred at the point, `v = a u` and `u = b v`. Returns, per
/// chart, the degree of the gcd of the two partials of `s~` on the
/// exceptional line.
pub fn blowup_chart_gcds(m: &SurfaceModel, point: &ProjPoint) -> Result<Vec<usize>, SurfaceError> {
    let f = &m.field;
    let (local, aff) = local_at(&m.s, point);
    let centred = local.translate(&aff);
    let (e, t) = (MultiPoly::var(f, 2, 0), MultiPoly::var(f, 2, 1));
    // Variables of the chart: 0 is the exceptional coordinate, 1 the slope.
    let charts = [vec![e.clone(), t.mul(&e)], vec![t.mul(&e), e.clone()]];
    let mut out = Vec::new();
    for map in charts {
        let pulled = centred.substitute(&map)?;
        let tilde = pulled
            .div_var_power(0, 4)
            .ok_or_else(|| SurfaceError::DivisionNotExact(format!("e^4 does not divide the pullback at {point}")))?;
        let on_e = |p: MultiPoly| p.specialize(0, 0).drop_var(0).to_uni(0).expect("one variable");
        let d0 = on_e(tilde.partial(0));
        let d1 = on_e(tilde.partial(1));
        let g = d0.gcd(&d1);
        out.push(if g.is_zero() { usize::MAX } else { g.deg0() });
    }
    Ok(out)
}

pub fn verify_chart_smoothness(m: &SurfaceModel) -> Report {
    let mut children = Vec::new();
    for i in 1..=3 {
        let name = format!("blow-up at p{i} is smooth over the exceptional line");
        children.push(match blowup_chart_gcds(m, &m.points[i]) {
            Ok(g) => Report::leaf(name, g.iter().all(|&d| d == 0), json!({"gcd_degrees": g})),
            Err(e) => Report::leaf(name, false, json!(e.to_string())),
        });
    }
    Report::node("blow-up charts", children)
}

/// The induced action of `f` on `B` and its comparison with the Lehmer-root
/// construction and the derivation scalar `lambda1`.
pub fn verify_alpha_consistency(m: &SurfaceModel, lambda1: Option<&FieldElement>) -> Report {
    let f = &m.field;
    let name = "alpha consistency";
    let ind = match induced_affine_map(&m.g, &m.f) {
        Ok(i) => i,
        Err(e) => return Report::node(name, vec![Report::leaf("induced affine map", false, json!(e.to_string()))]),
    };
    let alpha = ind.action.alpha.clone();
    let lehmer = lehmer_mod2(f);
    let is_root = lehmer.eval(alpha.bits()) == 0;
    let z16 = f.gen_pow(16);
    let mut children = vec![
        Report::leaf(
            "induced alpha is a root of Lehmer's polynomial mod 2",
            is_root,
            json!({"alpha": alpha.to_string(), "beta": ind.action.beta.to_string(), "validated_samples": ind.validated}),
        ),
        Report::leaf("g^16 is not a root of Lehmer's polynomial mod 2", lehmer.eval(z16.bits()) != 0, json!(null)),
        Report::leaf("alpha != g^16", alpha != z16, json!(alpha.to_string())),
    ];
    let l1 = lambda1.cloned();
    children.push(Report::leaf(
        "lambda1 = g^8",
        l1 == Some(f.gen_pow(8)),
        json!(l1.as_ref().map_or("missing".to_string(), ToString::to_string)),
    ));
    let l2 = l1.as_ref().and_then(|l| alpha.try_div(l).ok());
    children.push(Report::leaf(
        "lambda2 = alpha / lambda1 != lambda1",
        l2.is_some() && l2 != l1,
        json!(l2.as_ref().map_or("missing".to_string(), ToString::to_string)),
    ));
    let fixed = ind.action.fixed_point();
    let p0 = ind.projection.parameter(&m.points[0]).ok();
    children.push(Report::leaf(
        "fixed parameter of the induced action is p0",
        fixed.is_some() && fixed == p0,
        json!(p0.as_ref().map_or("cusp".to_string(), ToString::to_string)),
    ));
    children.push(match_report(m, &ind.projection, &alpha));
    Report::node(name, children).with_witness(json!({"alpha": alpha.to_string()}))
}

fn match_report(m: &SurfaceModel, proj: &cubic::CuspProjection, alpha: &FieldElement) -> Report {
    let name = "orbit points match the Lehmer-root formulas";
    let params: Result<Vec<FieldElement>, CubicError> = m.points[1..=10].iter().map(|p| proj.parameter(p)).collect();
    let formula = beta_from_alpha(alpha).and_then(|b| orbit_points(&AffineAction::new(alpha.clone(), b)));
    match (params, formula) {
        (Ok(a), Ok(b)) => {
            let found = match_point_sets(&a, &b.params);
            Report::leaf(
                name,
                found.is_some(),
                found.map_or(json!(null), |act| json!({"scale": act.alpha.to_string(), "shift": act.beta.to_string()})),
            )
        }
        (Err(e), _) | (_, Err(e)) => Report::leaf(name, false, json!(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> SurfaceModel {
        load_model(&DataFiles::bundled()).unwrap()
    }

    #[test]
    fn bundled_model_loads() {
        let m = model();
        assert_eq!(m.s.len(), S_TERMS);
        assert_eq!(m.eta.len(), 18);
        assert_eq!(m.points.len(), 11);
    }

    #[test]
    fn orbit_examples() {
        let m = model();
        let f = &m.field;
        let p = |a: i64, b: i64| ProjPoint::new(f, &[f.gen_pow(a).bits(), f.gen_pow(b).bits(), 1]).unwrap();
        assert_eq!(apply_map(&m.f, &p(29, 6)), Some(p(18, 11)));
        assert_eq!(apply_map(&m.f, &p(23, 29)).unwrap().raw(), &[0, 0, 1]);
        assert_eq!(apply_map(&m.f, &p(14, 7)), Some(p(14, 7)));
        assert!(verify_orbit(&m).passed());
    }

    #[test]
    fn cubic_and_equivariance() {
        let m = model();
        assert!(verify_cubic(&m).passed());
        assert!(verify_equivariance(&m).unwrap().passed());
    }

    #[test]
    fn partials_vanish_at_p4() {
        let m = model();
        let local = chart(&m.s, 2);
        let p4 = m.points[4].affine().1;
        assert_eq!(local.partial(0).eval(&p4), 0);
        assert_eq!(local.partial(1).eval(&p4), 0);
    }

    #[test]
    fn function_field_scalar() {
        let f = Field::gf32();
        let w = FnElem::w_over_z6(&f);
        let mut v = w.clone();
        v.b = v.b.scale(f.gen_pow(3).bits());
        assert_eq!(v.scalar_multiple_of(&w), Some(f.gen_pow(3)));
        let x = FnElem::ratio(MultiPoly::var(&f, 3, 0), MultiPoly::one(&f, 3));
        assert_eq!(x.scalar_multiple_of(&w), None);
    }
}

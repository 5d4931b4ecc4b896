//! Named verification suites.

use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use serde_json::json;
use thiserror::Error;

use crate::cubic::{self, elem_list, lehmer_roots, orbit_points, solve_beta, valid_alphas, AffineAction};
use crate::data::DataFiles;
use crate::gf2m::Field;
use crate::lattice::{
    coxeter_matrix, dynamical_degree, e10_parity_check, enumerate_lagrangians, expand_trace, gram_z110,
    lagrangian_classes, mod2_action_analysis, mod2_reduce_and_factor, parse_rational, real_roots, salem_certify,
    sign_vector_target, weyl2_membership, IntMatrix, IntPoly, Interval, Mod2QuadSpace, E10,
};
use crate::report::Report;
use crate::surface::{self, load_model, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of all, lattice, salem, lagrangians, cubic, surface)")]
    UnknownSuite(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Lattice,
    Salem,
    Lagrangians,
    Cubic,
    Surface,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Lattice, Suite::Salem, Suite::Lagrangians, Suite::Cubic, Suite::Surface];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Lattice => "lattice",
            Suite::Salem => "salem",
            Suite::Lagrangians => "lagrangians",
            Suite::Cubic => "cubic",
            Suite::Surface => "surface",
        }
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Suite, SuiteError> {
        [Suite::All, Suite::Lattice, Suite::Salem, Suite::Lagrangians, Suite::Cubic, Suite::Surface]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub data: DataFiles,
    /// Width bound for real-root intervals.
    pub precision: BigRational,
    /// Extension-degree bound for the singular-locus search.
    pub ext_bound: u32,
    /// Record wall-clock times per check.
    pub timings: bool,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            data: DataFiles::bundled(),
            precision: parse_rational("1e-9").expect("valid literal"),
            ext_bound: 10,
            timings: false,
        }
    }
}

fn timed(cfg: &Config, f: impl FnOnce() -> Report) -> Report {
    let start = Instant::now();
    let mut r = f();
    if cfg.timings {
        r.elapsed_ms = Some(u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX));
    }
    r
}

pub fn run_suite(name: &str, cfg: &Config) -> Result<Report, SuiteError> {
    Ok(run(name.parse()?, cfg))
}

pub fn run(suite: Suite, cfg: &Config) -> Report {
    timed(cfg, || match suite {
        Suite::All => Report::node("all", Suite::PARTS.iter().map(|&s| run(s, cfg)).collect()),
        Suite::Lattice => lattice_suite(cfg),
        Suite::Salem => salem_suite(),
        Suite::Lagrangians => lagrangian_suite(cfg),
        Suite::Cubic => cubic_suite(),
        Suite::Surface => surface_suite(cfg),
    })
}

fn interval_json(iv: &Interval) -> serde_json::Value {
    json!([iv.lo.to_string(), iv.hi.to_string()])
}

fn e10(cfg: &Config) -> Result<E10, Report> {
    E10::parse(&cfg.data.e10_basis).map_err(|e| Report::error("E10 basis", e))
}

fn lattice_suite(cfg: &Config) -> Report {
    let name = "lattice";
    let e = match e10(cfg) {
        Ok(e) => e,
        Err(r) => return Report::node(name, vec![r]),
    };
    let w = coxeter_matrix();
    let p10 = IntPoly::lehmer();
    let mut children = Vec::new();
    children.push(timed(cfg, || {
        let full = w.char_poly().ok();
        let restricted = e.restrict(&w).and_then(|r| r.char_poly()).ok();
        let expected_full = IntPoly::linear(1).mul(&p10);
        Report::node(
            "characteristic polynomial",
            vec![
                Report::leaf(
                    "char poly of w on E10 is P10",
                    restricted.as_ref() == Some(&p10),
                    json!(restricted.map_or("restriction failed".to_string(), |p| p.to_string())),
                ),
                Report::leaf(
                    "char poly of w on Z^{1,10} is (x - 1) P10",
                    full.as_ref() == Some(&expected_full),
                    json!(full.map_or("failed".to_string(), |p| p.to_string())),
                ),
                Report::leaf(
                    "P10(w) = 0",
                    e.restrict(&w).and_then(|r| r.eval_poly(&p10)).map(|z| z.is_zero()).unwrap_or(false),
                    json!(null),
                ),
                Report::leaf(
                    "w preserves the form and fixes K",
                    w.preserves(&gram_z110()).unwrap_or(false),
                    json!(null),
                ),
            ],
        )
    }));
    children.push(timed(cfg, || match dynamical_degree(&w, &cfg.precision) {
        Ok(sr) => {
            // The quoted value 1.17628 is rounded to five decimals.
            let lo = parse_rational("1.176275").expect("literal");
            let hi = parse_rational("1.176285").expect("literal");
            let rounds = sr.interval.lo >= lo && sr.interval.hi <= hi;
            let largest = real_roots(&p10, &cfg.precision).ok().and_then(|r| r.last().cloned());
            let agrees = largest.as_ref().is_some_and(|r| r.overlaps(&sr.interval));
            let mid = sr.interval.midpoint_f64();
            Report::leaf(
                "lambda10 interval",
                rounds && agrees && sr.interval.width() <= cfg.precision,
                json!({
                    "interval": interval_json(&sr.interval),
                    "approx": format!("{mid:.12}"),
                    "log": format!("{:.8}", mid.ln()),
                    "certification": format!("{:?}", sr.certification),
                }),
            )
        }
        Err(e) => Report::error("lambda10 interval", e),
    }));
    children.push(timed(cfg, || mod2_report(&e, &w)));
    let parity = e10_parity_check(&e.gram);
    children.push(Report::leaf("E10 Gram matrix is even", parity.even, json!({"diagonal": parity.diagonal})));
    children.push(timed(cfg, || {
        let wr = e.restrict(&w);
        let id = IntMatrix::identity(10);
        let w31 = wr.as_ref().ok().and_then(|m| (1..31).try_fold(m.clone(), |acc, _| acc.mul(m).ok()));
        Report::node(
            "2-congruence subgroup",
            vec![
                Report::leaf("identity is a member", weyl2_membership(&id, &e).unwrap_or(false), json!(null)),
                Report::leaf(
                    "w is not a member",
                    wr.as_ref().map(|m| !weyl2_membership(m, &e).unwrap_or(true)).unwrap_or(false),
                    json!(null),
                ),
                Report::leaf(
                    "w^31 is a member",
                    w31.map(|m| weyl2_membership(&m, &e).unwrap_or(false)).unwrap_or(false),
                    json!(null),
                ),
            ],
        )
    }));
    Report::node(name, children)
}

fn mod2_report(e: &E10, w: &IntMatrix) -> Report {
    let name = "mod-2 spectrum";
    let factors = mod2_reduce_and_factor(&IntPoly::lehmer());
    let shown: Vec<String> = factors.iter().map(|(p, k)| format!("({})^{k}", p)).collect();
    let expected = ["x^5 + x^3 + x^2 + x + 1", "x^5 + x^4 + x^3 + x^2 + 1"];
    let mut got: Vec<String> = factors.iter().filter(|(_, k)| *k == 1).map(|(p, _)| p.to_string()).collect();
    got.sort();
    let mut want: Vec<String> = expected.iter().map(ToString::to_string).collect();
    want.sort();
    let mut children =
        vec![Report::leaf("P10 mod 2 factors into two quintics", factors.len() == 2 && got == want, json!(shown))];
    match e.restrict(w).and_then(|wr| mod2_action_analysis(&wr, &e.gram)) {
        Ok(a) => {
            children.push(Report::leaf("order of w mod 2 is 31", a.order == Some(31), json!(a.order)));
            let kernels: Vec<_> =
                a.kernels.iter().map(|k| json!({"factor": k.factor.to_string(), "dim": k.subspace.dim()})).collect();
            children.push(Report::leaf(
                "factor kernels are 5-dimensional and totally isotropic",
                a.kernels.len() == 2 && a.kernels.iter().all(|k| k.subspace.dim() == 5 && k.totally_singular),
                json!(kernels),
            ));
        }
        Err(err) => children.push(Report::error("mod-2 action", err)),
    }
    Report::node(name, children)
}

fn salem_suite() -> Report {
    let name = "salem";
    let p10 = IntPoly::lehmer();
    let cert = match salem_certify(&p10) {
        Ok(c) => c,
        Err(e) => return Report::node(name, vec![Report::error("Salem certificate", e)]),
    };
    let r = &cert.trace_poly;
    let target = sign_vector_target(&cert);
    Report::node(
        name,
        vec![
            Report::leaf("x^5 R10(x + 1/x) = P10", expand_trace(r, 5) == p10, json!(r.to_string())),
            Report::leaf(
                "R10 has 5 real roots",
                cert.inner_roots.len() + 1 == 5,
                json!({"inner": cert.inner_roots.iter().map(interval_json).collect::<Vec<_>>()}),
            ),
            Report::leaf("exactly one trace root above 2", true, json!(interval_json(&cert.outer_root))),
            Report::leaf(
                "exactly two inner roots with R10' > 0",
                cert.positive_derivatives() == 2,
                json!({"signs": cert.derivative_signs}),
            ),
            Report::leaf("target sign vector is (-1, -1, +1, +1)", target == [-1, -1, 1, 1], json!(target)),
        ],
    )
}

fn lagrangian_suite(cfg: &Config) -> Report {
    let name = "lagrangians";
    let e = match e10(cfg) {
        Ok(e) => e,
        Err(r) => return Report::node(name, vec![r]),
    };
    let space = match Mod2QuadSpace::from_even_gram(&e.gram) {
        Ok(s) => s,
        Err(err) => return Report::node(name, vec![Report::error("quadratic space", err)]),
    };
    let all = match enumerate_lagrangians(&space) {
        Ok(a) => a,
        Err(err) => return Report::node(name, vec![Report::error("enumeration", err)]),
    };
    let (same, other) = lagrangian_classes(&all, &all[0]);
    let reduced = e.restrict(&coxeter_matrix()).map(|wr| crate::lattice::BitMatrix::from_int(&wr));
    let invariant: Vec<usize> = match &reduced {
        Ok(b) => (0..all.len()).filter(|&i| all[i].is_invariant(b)).collect(),
        Err(_) => Vec::new(),
    };
    let in_same = invariant.iter().filter(|i| same.contains(i)).count();
    Report::node(
        name,
        vec![
            Report::leaf("4590 Lagrangian subspaces", all.len() == 4590, json!(all.len())),
            Report::leaf(
                "two classes of 2295",
                same.len() == 2295 && other.len() == 2295,
                json!([same.len(), other.len()]),
            ),
            Report::leaf(
                "w preserves exactly one Lagrangian in each class",
                invariant.len() == 2 && in_same == 1,
                json!({"invariant": invariant.len(), "in_reference_class": in_same}),
            ),
            Report::leaf("class size = 1 mod 31", same.len() % 31 == 1, json!(same.len() % 31)),
        ],
    )
}

fn cubic_suite() -> Report {
    let field = Field::gf32();
    let roots = lehmer_roots(&field);
    let mut children = vec![Report::leaf("P10 mod 2 has 10 roots in GF(32)", roots.len() == 10, elem_list(&roots))];
    let mut per_alpha = Vec::new();
    for a in &roots {
        let label = format!("alpha = {a}");
        let c = cubic::beta_coefficient(a);
        let r = match cubic::beta_from_alpha(a).and_then(|b| {
            let act = AffineAction::new(a.clone(), b);
            orbit_points(&act).map(|p| (act, p))
        }) {
            Ok((act, pts)) => {
                let mut cons = cubic::verify_coxeter_constraints(&pts, &act);
                cons.children.insert(0, Report::leaf("c(alpha) != 0", !c.is_zero(), json!(c.to_string())));
                cons.children.insert(
                    1,
                    Report::leaf(
                        "the two expressions for p2 agree",
                        cubic::p2_first(a, &act.beta) == cubic::p2_second(a, &act.beta),
                        json!(act.beta.to_string()),
                    ),
                );
                Report::node(label, cons.children)
                    .with_witness(json!({"beta": act.beta.to_string(), "params": elem_list(&pts.params)}))
            }
            Err(e) => Report::error(label, e),
        };
        per_alpha.push(r);
    }
    children.push(Report::node("ten-point configurations", per_alpha));
    let valid: Vec<u64> = valid_alphas(&field).iter().map(|r| r.action.alpha.bits()).collect();
    let root_bits: Vec<u64> = roots.iter().map(|r| r.bits()).collect();
    let closed = valid.iter().all(|&a| {
        let e = field.elem(a);
        valid.contains(&e.square().bits()) && valid.contains(&e.inv().map(|i| i.bits()).unwrap_or(0))
    });
    let mut sorted_valid = valid.clone();
    sorted_valid.sort_unstable();
    let mut sorted_roots = root_bits.clone();
    sorted_roots.sort_unstable();
    children.push(Report::leaf(
        "valid scalars are exactly the Lehmer roots, closed under squaring and inversion",
        closed && sorted_valid == sorted_roots,
        json!({"count": valid.len()}),
    ));
    let frob = roots.iter().all(|a| match (solve_beta(a), solve_beta(&a.square())) {
        (Ok(b), Ok(b2)) => b.square() == b2,
        _ => false,
    });
    children.push(Report::leaf("beta(alpha^2) = beta(alpha)^2", frob, json!(null)));
    Report::node("cubic", children)
}

fn surface_suite(cfg: &Config) -> Report {
    let name = "surface";
    let m: SurfaceModel = match load_model(&cfg.data) {
        Ok(m) => m,
        Err(e) => return Report::node(name, vec![Report::error("load model", e)]),
    };
    let mut children =
        vec![Report::leaf("s has the printed number of terms", m.s.len() == surface::S_TERMS, json!(m.s.len()))];
    children.push(timed(cfg, || surface::verify_orbit(&m)));
    children.push(timed(cfg, || surface::verify_cubic(&m)));
    children.push(timed(cfg, || surface::verify_equivariance(&m).unwrap_or_else(|e| Report::error("equivariance", e))));
    let inv = surface::derive_sigma_inverse(&m);
    children.push(surface::inverse_report(&inv));
    let mut lambda1 = None;
    children.push(timed(cfg, || match &inv {
        Ok(inv) => match surface::verify_derivation(&m, inv) {
            Ok((r, l)) => {
                lambda1 = l;
                r
            }
            Err(e) => Report::error("derivation", e),
        },
        Err(e) => Report::error("derivation", e),
    }));
    children.push(timed(cfg, || surface::singular_locus_report(&m, cfg.ext_bound)));
    children
        .push(timed(cfg, || surface::verify_multiplicities(&m).unwrap_or_else(|e| Report::error("multiplicities", e))));
    children.push(timed(cfg, || surface::verify_chart_smoothness(&m)));
    children.push(timed(cfg, || surface::verify_alpha_consistency(&m, lambda1.as_ref())));
    Report::node(name, children)
}

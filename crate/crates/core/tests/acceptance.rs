//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lehmer_verify::cubic::{
    beta_coefficient, beta_from_alpha, induced_affine_map, lehmer_roots, orbit_points, valid_alphas,
    verify_coxeter_constraints, AffineAction,
};
use lehmer_verify::data::DataFiles;
use lehmer_verify::gf2m::{Field, FieldElement};
use lehmer_verify::lattice::{
    coxeter_matrix, dynamical_degree, e10_parity_check, enumerate_lagrangians, expand_trace, lagrangian_classes,
    mod2_action_analysis, mod2_reduce_and_factor, parse_rational, real_roots, salem_certify, sign_vector_target,
    BitMatrix, IntPoly, Mod2QuadSpace, E10,
};
use lehmer_verify::poly::{ProjPoint, UniPoly};
use lehmer_verify::surface::{
    derive_sigma_inverse, load_model, singular_locus, verify_alpha_consistency, verify_chart_smoothness, verify_cubic,
    verify_derivation, verify_multiplicities, verify_orbit, SurfaceModel,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// P10 written out coefficient by coefficient, lowest degree first.
fn p10() -> IntPoly {
    IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

fn e10() -> E10 {
    E10::parse(&DataFiles::bundled().e10_basis).expect("bundled basis")
}

fn model() -> SurfaceModel {
    load_model(&DataFiles::bundled()).expect("bundled model")
}

fn c1_char_poly() -> Outcome {
    let w = coxeter_matrix();
    let restricted = e10().restrict(&w).map_err(|e| e.to_string())?.char_poly().map_err(|e| e.to_string())?;
    let full = w.char_poly().map_err(|e| e.to_string())?;
    ensure(restricted == p10(), format!("restricted char poly {restricted}"))?;
    ensure(full == IntPoly::from_i64(&[-1, 1]).mul(&p10()), format!("full char poly {full}"))?;
    Ok(restricted.to_string())
}

fn c2_lambda() -> Outcome {
    let eps = parse_rational("1e-9").unwrap();
    let sr = dynamical_degree(&coxeter_matrix(), &eps).map_err(|e| e.to_string())?;
    let iv = &sr.interval;
    ensure(iv.width() <= eps, "interval wider than 1e-9")?;
    // 1.17628 is quoted to five decimals.
    ensure(
        iv.lo >= parse_rational("1.176275").unwrap() && iv.hi <= parse_rational("1.176285").unwrap(),
        format!("interval {iv} does not round to 1.17628"),
    )?;
    let roots = real_roots(&p10(), &eps).map_err(|e| e.to_string())?;
    let largest = roots.last().ok_or("P10 has no real roots")?;
    ensure(largest.overlaps(iv), format!("largest root of P10 {largest} is disjoint from {iv}"))?;
    let log = iv.midpoint_f64().ln();
    ensure((log - 0.16236).abs() <= 1e-4, format!("log midpoint {log}"))?;
    Ok(format!("[{:.12}, {:.12}] log {log:.6}", iv.to_f64().0, iv.to_f64().1))
}

fn c3_mod2() -> Outcome {
    let f2 = Field::new(1, 0b11).unwrap();
    let q1 = UniPoly::new(f2.clone(), vec![1, 1, 1, 1, 0, 1]);
    let q2 = UniPoly::new(f2.clone(), vec![1, 0, 1, 1, 1, 1]);
    let reduced = UniPoly::new(f2.clone(), vec![1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1]);
    ensure(q1.mul(&q2) == reduced, "oracle factors do not multiply to P10 mod 2")?;
    let factors = mod2_reduce_and_factor(&p10());
    let got: BTreeSet<Vec<u64>> = factors
        .iter()
        .map(|(p, k)| {
            let mut c = p.coeffs().to_vec();
            c.push(*k as u64);
            c
        })
        .collect();
    let want: BTreeSet<Vec<u64>> = [q1.coeffs(), q2.coeffs()]
        .iter()
        .map(|c| {
            let mut c = c.to_vec();
            c.push(1);
            c
        })
        .collect();
    ensure(got == want, format!("factors {factors:?}"))?;
    let e = e10();
    let wr = e.restrict(&coxeter_matrix()).map_err(|e| e.to_string())?;
    let a = mod2_action_analysis(&wr, &e.gram).map_err(|e| e.to_string())?;
    ensure(a.order == Some(31), format!("order {:?}", a.order))?;
    // Independent order check on the reduced matrix.
    let b = BitMatrix::from_int(&wr);
    let mut p = b.clone();
    for _ in 1..31 {
        p = p.compose(&b);
    }
    ensure(p.is_identity() && !b.is_identity(), "w^31 is not the identity mod 2")?;
    ensure(a.kernels.len() == 2, "expected two factor kernels")?;
    for k in &a.kernels {
        ensure(
            k.subspace.dim() == 5 && k.totally_singular,
            format!("kernel of {} has dim {}", k.factor, k.subspace.dim()),
        )?;
    }
    Ok("(x^5+x^3+x^2+x+1)(x^5+x^4+x^3+x^2+1), order 31".into())
}

fn c4_lagrangians() -> Outcome {
    let e = e10();
    let space = Mod2QuadSpace::from_even_gram(&e.gram).map_err(|e| e.to_string())?;
    let all = enumerate_lagrangians(&space).map_err(|e| e.to_string())?;
    ensure(all.len() == 4590, format!("{} Lagrangians", all.len()))?;
    let (same, other) = lagrangian_classes(&all, &all[0]);
    ensure(same.len() == 2295 && other.len() == 2295, format!("classes {} / {}", same.len(), other.len()))?;
    ensure(same.len() % 31 == 1, "class size is not 1 mod 31")?;
    let b = BitMatrix::from_int(&e.restrict(&coxeter_matrix()).map_err(|e| e.to_string())?);
    let inv: Vec<usize> = (0..all.len()).filter(|&i| all[i].is_invariant(&b)).collect();
    ensure(inv.len() == 2, format!("{} invariant", inv.len()))?;
    ensure(inv.iter().filter(|i| same.contains(i)).count() == 1, "invariant Lagrangians in one class")?;
    Ok("4590 = 2295 + 2295, 2 invariant".into())
}

fn c5_salem() -> Outcome {
    let cert = salem_certify(&p10()).map_err(|e| e.to_string())?;
    let r = &cert.trace_poly;
    ensure(expand_trace(r, 5) == p10(), "x^5 R10(x + 1/x) != P10")?;
    let eps = parse_rational("1e-9").unwrap();
    let roots = real_roots(r, &eps).map_err(|e| e.to_string())?;
    ensure(roots.len() == 5, format!("{} real roots", roots.len()))?;
    let two = parse_rational("2").unwrap();
    let above = roots.iter().filter(|iv| iv.lo > two).count();
    ensure(above == 1, format!("{above} roots above 2"))?;
    ensure(cert.positive_derivatives() == 2, format!("signs {:?}", cert.derivative_signs))?;
    let target = sign_vector_target(&cert);
    ensure(target == [-1, -1, 1, 1], format!("target {target:?}"))?;
    Ok(format!("R10 = {r}"))
}

fn c6_parity() -> Outcome {
    let e = e10();
    let p = e10_parity_check(&e.gram);
    ensure(p.even, "Gram matrix has an odd diagonal entry")?;
    // Every off-diagonal entry is an integer, so evenness is the diagonal.
    ensure((0..10).all(|i| e.gram.get(i, i) % 2i32 == 0.into()), "diagonal oracle")?;
    Ok(format!("diagonal {:?}", p.diagonal))
}

fn c7_beta() -> Outcome {
    let f = Field::gf32();
    let roots = lehmer_roots(&f);
    ensure(roots.len() == 10, format!("{} roots", roots.len()))?;
    for a in &roots {
        ensure(!beta_coefficient(a).is_zero(), format!("c({a}) = 0"))?;
        let b = beta_from_alpha(a).map_err(|e| e.to_string())?;
        let act = AffineAction::new(a.clone(), b);
        let pts = orbit_points(&act).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<u64> = pts.params.iter().map(FieldElement::bits).collect();
        ensure(distinct.len() == 10, format!("collision at {a}"))?;
        ensure(verify_coxeter_constraints(&pts, &act).passed(), format!("constraints fail at {a}"))?;
    }
    let valid: BTreeSet<u64> = valid_alphas(&f).iter().map(|r| r.action.alpha.bits()).collect();
    for &v in &valid {
        let e = f.elem(v);
        ensure(valid.contains(&e.square().bits()) && valid.contains(&e.inv().unwrap().bits()), "not closed")?;
    }
    let a = &roots[0];
    let orbit: BTreeSet<u64> =
        (0..5).flat_map(|i| [a.pow(1 << i).unwrap().bits(), a.pow(-(1 << i)).unwrap().bits()]).collect();
    ensure(valid == orbit, format!("valid set has {} members", valid.len()))?;
    Ok(format!("valid alphas = {{{a}^(+-2^i)}}"))
}

fn c8_orbit_cubic() -> Outcome {
    let m = model();
    let o = verify_orbit(&m);
    ensure(o.passed(), format!("{:?}", o.failures().iter().map(|r| &r.name).collect::<Vec<_>>()))?;
    let c = verify_cubic(&m);
    ensure(c.passed(), format!("{:?}", c.failures().iter().map(|r| &r.name).collect::<Vec<_>>()))?;
    Ok("f(p_i) = p_(i+1), f(p0) = p0, base locus {p1,p2,p3}, B unique with cusp".into())
}

fn c9_equivariance() -> Outcome {
    let m = model();
    let lhs = m.s.substitute(&m.f).map_err(|e| e.to_string())?;
    let rhs = m.c.square().mul(&m.s).add(&m.eta.square());
    ensure(lhs == rhs, format!("difference has {} terms", lhs.add(&rhs).len()))?;
    ensure(lhs.homogeneous_degree() == Some(24), "degree")?;
    Ok(format!("{} terms on each side", lhs.len()))
}

fn c10_inverse_derivation() -> Outcome {
    let m = model();
    let inv = derive_sigma_inverse(&m).map_err(|e| e.to_string())?;
    let (r, lambda) = verify_derivation(&m, &inv).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("{:?}", r.failures().iter().map(|r| &r.name).collect::<Vec<_>>()))?;
    ensure(lambda == Some(m.field.gen_pow(8)), format!("scalar {lambda:?}"))?;
    Ok(format!("tail with {} terms, scalar g^8", inv.eta.len()))
}

fn c11_singular_locus() -> Outcome {
    let m = model();
    let loc = singular_locus(&m, 10).map_err(|e| e.to_string())?;
    ensure(loc.points.len() == 11, format!("{} points", loc.points.len()))?;
    let expected: BTreeSet<ProjPoint> = m.points.iter().map(|p| p.embed(&loc.host).unwrap()).collect();
    let found: BTreeSet<ProjPoint> = loc.points.iter().cloned().collect();
    ensure(expected == found, "singular points differ from p0..p10")?;
    for p in &loc.points {
        ensure(p.raw().iter().all(|&c| 5 % loc.host.min_subfield_degree(c) == 0), format!("{p} not over GF(32)"))?;
    }
    Ok("11 points = {p0, ..., p10}".into())
}

fn c12_multiplicities() -> Outcome {
    let m = model();
    let r = verify_multiplicities(&m).map_err(|e| e.to_string())?;
    ensure(r.passed(), format!("{:?}", r.failures().iter().map(|r| &r.name).collect::<Vec<_>>()))?;
    let c = verify_chart_smoothness(&m);
    ensure(c.passed(), format!("{:?}", c.failures().iter().map(|r| &r.name).collect::<Vec<_>>()))?;
    Ok("4 at p1..p10, A1 at p0, blow-ups at p1, p2, p3 smooth".into())
}

fn c13_consistency() -> Outcome {
    let m = model();
    let ind = induced_affine_map(&m.g, &m.f).map_err(|e| e.to_string())?;
    let alpha = &ind.action.alpha;
    let f = &m.field;
    ensure(lehmer_roots(f).contains(alpha), format!("{alpha} is not a Lehmer root"))?;
    ensure(*alpha != f.gen_pow(16), "alpha = g^16")?;
    let inv = derive_sigma_inverse(&m).map_err(|e| e.to_string())?;
    let (_, lambda1) = verify_derivation(&m, &inv).map_err(|e| e.to_string())?;
    let l1 = lambda1.ok_or("no derivation scalar")?;
    ensure(l1 == f.gen_pow(8), "lambda1 != g^8")?;
    let l2 = alpha.try_div(&l1).map_err(|e| e.to_string())?;
    ensure(l2 != l1, "lambda2 = lambda1")?;
    let r = verify_alpha_consistency(&m, Some(&l1));
    ensure(r.passed(), format!("{:?}", r.failures().iter().map(|r| &r.name).collect::<Vec<_>>()))?;
    Ok(format!("alpha = {alpha}, lambda2 = {l2}"))
}

fn c14_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_verify")).args(["all", "--format", "json"]).output().map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    ensure(a.status.success(), format!("first run exited with {}", a.status))?;
    ensure(a.stdout == b.stdout, "outputs differ")?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 14] = [
        ("Coxeter characteristic polynomial", Duration::from_secs(1), c1_char_poly),
        ("lambda10 reproduction", Duration::from_secs(1), c2_lambda),
        ("mod-2 spectrum", Duration::from_secs(1), c3_mod2),
        ("Lagrangian census", Duration::from_secs(120), c4_lagrangians),
        ("Salem certification", Duration::from_secs(1), c5_salem),
        ("E10 parity", Duration::from_secs(1), c6_parity),
        ("beta-solver", Duration::from_secs(1), c7_beta),
        ("orbit and cubic", Duration::from_secs(1), c8_orbit_cubic),
        ("equivariance identity", Duration::from_secs(10), c9_equivariance),
        ("inverse and derivation", Duration::from_secs(30), c10_inverse_derivation),
        ("singular locus", Duration::from_secs(120), c11_singular_locus),
        ("multiplicities and A1", Duration::from_secs(30), c12_multiplicities),
        ("cross-model consistency", Duration::from_secs(10), c13_consistency),
        ("determinism", Duration::from_secs(300), c14_determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *limit => Err(format!("{msg}; took {elapsed:?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} ({} ms)", i + 1, elapsed.as_millis()),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg} ({} ms)", i + 1, elapsed.as_millis());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

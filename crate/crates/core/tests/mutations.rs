use lehmer_verify::data::DataFiles;
use lehmer_verify::poly::MultiPoly;
use lehmer_verify::surface::{load_model, verify_cubic, verify_equivariance, verify_orbit, SurfaceError, SurfaceModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn model() -> SurfaceModel {
    load_model(&DataFiles::bundled()).unwrap()
}

fn all_pass(m: &SurfaceModel) -> bool {
    verify_orbit(m).passed() && verify_cubic(m).passed() && verify_equivariance(m).map(|r| r.passed()).unwrap_or(false)
}

/// Changes one existing coefficient of `p` to a different nonzero value.
fn mutate(p: &mut MultiPoly, rng: &mut ChaCha8Rng) -> String {
    let terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c)).collect();
    let (mono, c) = terms[rng.gen_range(0..terms.len())].clone();
    let new = loop {
        let v = rng.gen_range(1..32u64);
        if v != c {
            break v;
        }
    };
    p.add_term(mono.clone(), c ^ new);
    format!("{:?}: {c} -> {new}", mono.0)
}

#[test]
fn bundled_model_passes() {
    assert!(all_pass(&model()));
}

#[test]
fn single_coefficient_mutations_are_detected() {
    let base = model();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..50 {
        let mut m = base.clone();
        let what = match rng.gen_range(0..5) {
            0 => format!("s {}", mutate(&mut m.s, &mut rng)),
            1 => format!("eta {}", mutate(&mut m.eta, &mut rng)),
            k => format!("f{} {}", k - 2, mutate(&mut m.f[k - 2], &mut rng)),
        };
        assert!(!all_pass(&m), "mutation {i} ({what}) went unnoticed");
    }
}

#[test]
fn empty_surface_file_is_a_parse_error() {
    let mut files = DataFiles::bundled();
    files.surface.clear();
    assert!(matches!(load_model(&files), Err(SurfaceError::Parse { file: "surface.poly", .. })));
}

#[test]
fn altered_cubic_coefficient_violates_an_invariant() {
    let mut files = DataFiles::bundled();
    files.surface = files.surface.replace("g^30*y*z^2", "g^29*y*z^2");
    assert!(matches!(load_model(&files), Err(SurfaceError::InvariantViolation(_))));
}

#[test]
fn inhomogeneous_surface_is_rejected() {
    let mut files = DataFiles::bundled();
    files.surface = files.surface.replace("+ y^5*z^7", "+ y^5*z^8");
    assert!(matches!(load_model(&files), Err(SurfaceError::InvariantViolation(_))));
}

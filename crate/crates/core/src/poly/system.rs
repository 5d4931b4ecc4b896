//! Common zeros of bivariate polynomial systems.

use crate::gf2m::{Field, FieldElement};
use crate::poly::{resultant, MultiPoly, PolyError, UniPoly};

#[derive(Debug, Clone)]
pub struct PlaneSolution {
    /// Field holding every solution coordinate: `GF(2^bound)`.
    pub host: Field,
    /// Common zeros `(u, v)` sorted by raw bits.
    pub points: Vec<(u64, u64)>,
    /// The eliminant in `u` whose roots were searched.
    pub eliminant: UniPoly,
    /// Values of `u` at which the leading coefficients in `v` of the two
    /// eliminated polynomials vanish simultaneously.
    pub degenerate: Vec<FieldElement>,
}

/// Solves `polys = 0` in two variables (indices 0 = `u`, 1 = `v`), returning
/// every solution with coordinates in `GF(2^bound)`.
///
/// Fails with `ExtensionBoundExceeded` if some solution coordinate lies in no
/// such field, and with `NotZeroDimensional` if the system has a common curve.
pub fn solve_plane_system(polys: &[MultiPoly], bound: u32) -> Result<PlaneSolution, PolyError> {
    let Some(first) = polys.first() else {
        return Err(PolyError::NotZeroDimensional);
    };
    let field = first.field().clone();
    for p in polys {
        if p.field() != &field {
            return Err(PolyError::ContextMismatch);
        }
        if p.nvars() != 2 {
            return Err(PolyError::ArityMismatch { expected: 2, found: p.nvars() });
        }
    }
    let polys: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if polys.is_empty() {
        return Err(PolyError::NotZeroDimensional);
    }

    let (eliminant, degenerate_pair) = eliminant(&polys)?;
    if eliminant.is_zero() {
        return Err(PolyError::NotZeroDimensional);
    }
    if eliminant.is_constant() {
        return Ok(PlaneSolution {
            host: Field::canonical(bound)?,
            points: Vec::new(),
            eliminant,
            degenerate: Vec::new(),
        });
    }
    let roots = eliminant.uni_roots(bound)?;
    if !roots.is_complete() {
        return Err(PolyError::ExtensionBoundExceeded(bound));
    }
    let host = Field::canonical(bound)?;
    let lifted: Vec<MultiPoly> = polys.iter().map(|p| p.embed(&host)).collect::<Result<_, _>>()?;
    let degenerate_pair = match degenerate_pair {
        Some((a, b)) => Some((a.embed(&host)?, b.embed(&host)?)),
        None => None,
    };

    let mut degenerate = Vec::new();
    let mut points = Vec::new();
    let mut seen_u = Vec::new();
    for root in &roots.roots {
        let u = host.embed_raw(root.value.field(), root.value.bits())?;
        if seen_u.contains(&u) {
            continue;
        }
        seen_u.push(u);
        if let Some((a, b)) = &degenerate_pair {
            if a.eval(u) == 0 && b.eval(u) == 0 {
                degenerate.push(host.elem(u));
            }
        }
        let mut g = UniPoly::zero(&host);
        for p in &lifted {
            let spec = p.specialize(0, u).to_uni(1).expect("only v remains");
            g = g.gcd(&spec);
        }
        if g.is_zero() {
            return Err(PolyError::NotZeroDimensional);
        }
        if g.is_constant() {
            continue;
        }
        let vs = g.uni_roots(bound)?;
        if !vs.is_complete() {
            return Err(PolyError::ExtensionBoundExceeded(bound));
        }
        for r in vs.roots {
            points.push((u, r.value.bits()));
        }
    }
    points.sort_unstable();
    points.dedup();
    Ok(PlaneSolution { host, points, eliminant, degenerate })
}

/// A nonzero polynomial in `u` vanishing at every common zero, plus the pair
/// of leading coefficients (as polynomials in `u`) when it came from a
/// resultant.
fn eliminant(polys: &[&MultiPoly]) -> Result<(UniPoly, Option<(UniPoly, UniPoly)>), PolyError> {
    let field = polys[0].field();
    if let Some(p) = polys.iter().find(|p| !p.depends_on(1)) {
        return Ok((p.to_uni(0).expect("free of v"), None));
    }
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let r = resultant(polys[i], polys[j], 1)?;
            if !r.value.is_zero() {
                let to_u = |m: &MultiPoly| m.to_uni(0).expect("free of v");
                return Ok((to_u(&r.value), Some((to_u(&r.leading.0), to_u(&r.leading.1)))));
            }
        }
    }
    Ok((UniPoly::zero(field), None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_agreement() {
        let f = Field::gf32();
        let u = MultiPoly::var(&f, 2, 0);
        let v = MultiPoly::var(&f, 2, 1);
        let c = |k: i64| MultiPoly::constant(&f, 2, f.gen_pow(k).bits());
        // Two conics with several rational intersections.
        let p = u.mul(&v).add(&c(3).mul(&u)).add(&c(7));
        let q = v.pow(2).add(&u.pow(2)).add(&c(11).mul(&v)).add(&c(1));
        let sol = [5, 10, 15, 20, 30]
            .iter()
            .find_map(|&b| solve_plane_system(&[p.clone(), q.clone()], b).ok())
            .expect("solutions within degree 30");
        for &(a, b) in &sol.points {
            let pe = p.embed(&sol.host).unwrap();
            let qe = q.embed(&sol.host).unwrap();
            assert_eq!((pe.eval(&[a, b]), qe.eval(&[a, b])), (0, 0));
        }
        let mut brute = Vec::new();
        for a in 0..32 {
            for b in 0..32 {
                if p.eval(&[a, b]) == 0 && q.eval(&[a, b]) == 0 {
                    brute.push((sol.host.embed_raw(&f, a).unwrap(), sol.host.embed_raw(&f, b).unwrap()));
                }
            }
        }
        let rational: Vec<(u64, u64)> = sol
            .points
            .iter()
            .copied()
            .filter(|&(a, b)| sol.host.min_subfield_degree(a) <= 5 && sol.host.min_subfield_degree(b) <= 5)
            .filter(|&(a, b)| 5 % sol.host.min_subfield_degree(a) == 0 && 5 % sol.host.min_subfield_degree(b) == 0)
            .collect();
        brute.sort_unstable();
        assert_eq!(rational, brute);
        assert!(sol.points.len() <= 4);
    }

    #[test]
    fn common_curve_is_rejected() {
        let f = Field::gf32();
        let u = MultiPoly::var(&f, 2, 0);
        let v = MultiPoly::var(&f, 2, 1);
        let p = u.add(&v);
        let q = p.mul(&u);
        assert_eq!(solve_plane_system(&[p, q], 5).unwrap_err(), PolyError::NotZeroDimensional);
    }
}

use std::fmt;

use crate::gf2m::{Field, FieldElement};
use crate::poly::PolyError;

/// A point of a (weighted) projective space over a binary field.
///
/// Stored scaled so that the last nonzero weight-1 coordinate is 1; other
/// coordinates are scaled by the matching power of the same scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: Field,
    coords: Vec<u64>,
    weights: Vec<u32>,
}

impl ProjPoint {
    pub fn new(field: &Field, coords: &[u64]) -> Result<ProjPoint, PolyError> {
        ProjPoint::weighted(field, coords, &vec![1; coords.len()])
    }

    pub fn weighted(field: &Field, coords: &[u64], weights: &[u32]) -> Result<ProjPoint, PolyError> {
        if coords.len() != weights.len() {
            return Err(PolyError::ArityMismatch { expected: weights.len(), found: coords.len() });
        }
        let anchor = (0..coords.len()).rev().find(|&i| weights[i] == 1 && coords[i] != 0);
        let Some(anchor) = anchor else {
            return Err(PolyError::ZeroPoint);
        };
        let lam = field.inv(coords[anchor])?;
        let coords =
            coords.iter().zip(weights).map(|(&c, &w)| field.mul(c, field.pow(lam, w as i64).expect("unit"))).collect();
        Ok(ProjPoint { field: field.clone(), coords, weights: weights.to_vec() })
    }

    pub fn from_elements(coords: &[FieldElement]) -> Result<ProjPoint, PolyError> {
        let field = coords.first().ok_or(PolyError::ZeroPoint)?.field().clone();
        if coords.iter().any(|c| c.field() != &field) {
            return Err(PolyError::ContextMismatch);
        }
        let raw: Vec<u64> = coords.iter().map(FieldElement::bits).collect();
        ProjPoint::new(&field, &raw)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> &[u64] {
        &self.coords
    }

    pub fn coords(&self) -> Vec<FieldElement> {
        self.coords.iter().map(|&c| self.field.elem(c)).collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// The weight-1 coordinates, which determine the underlying point of the
    /// base plane.
    pub fn base(&self) -> Vec<u64> {
        self.coords.iter().zip(&self.weights).filter(|(_, &w)| w == 1).map(|(&c, _)| c).collect()
    }

    /// Index of the last nonzero coordinate (the chart the point lies in).
    pub fn chart(&self) -> usize {
        (0..self.coords.len()).rev().find(|&i| self.coords[i] != 0).expect("nonzero point")
    }

    /// Affine coordinates in the chart where coordinate `chart()` equals 1.
    pub fn affine(&self) -> (usize, Vec<u64>) {
        let c = self.chart();
        let mut rest = self.coords.clone();
        rest.remove(c);
        (c, rest)
    }

    pub fn embed(&self, sup: &Field) -> Result<ProjPoint, PolyError> {
        let coords: Result<Vec<u64>, _> = self.coords.iter().map(|&c| sup.embed_raw(&self.field, c)).collect();
        ProjPoint::weighted(sup, &coords?, &self.weights)
    }
}

/// Orders by raw coordinates; only meaningful for points over one field.
impl Ord for ProjPoint {
    fn cmp(&self, o: &ProjPoint) -> std::cmp::Ordering {
        (&self.weights, &self.coords).cmp(&(&o.weights, &o.coords))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, o: &ProjPoint) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|&c| self.field.format_raw(c)).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        let f = Field::gf32();
        let z = f.gen_pow(3).bits();
        let p = ProjPoint::new(&f, &[f.mul(z, 5), f.mul(z, 7), z]).unwrap();
        assert_eq!(p.raw(), &[5, 7, 1]);
        let q = ProjPoint::new(&f, &[4, 0, 0]).unwrap();
        assert_eq!(q.raw(), &[1, 0, 0]);
        assert_eq!(ProjPoint::new(&f, &[0, 0, 0]), Err(PolyError::ZeroPoint));
    }

    #[test]
    fn weighted_scaling() {
        let f = Field::gf32();
        let lam = f.gen_pow(4).bits();
        let w = f.gen_pow(9).bits();
        let p = ProjPoint::weighted(&f, &[1, 0, 1, w], &[1, 1, 1, 6]).unwrap();
        let lam6 = f.pow(lam, 6).unwrap();
        let q = ProjPoint::weighted(&f, &[lam, 0, lam, f.mul(w, lam6)], &[1, 1, 1, 6]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.base(), vec![1, 0, 1]);
    }
}

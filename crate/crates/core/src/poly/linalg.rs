//! Gaussian elimination over a binary field.

use crate::gf2m::{Field, FieldElement};
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<u64>),
    /// Solution set `particular + span(kernel)`.
    Family {
        particular: Vec<u64>,
        kernel: Vec<Vec<u64>>,
    },
    Inconsistent,
}

impl LinearSolution {
    pub fn kernel_dim(&self) -> usize {
        match self {
            LinearSolution::Unique(_) => 0,
            LinearSolution::Family { kernel, .. } => kernel.len(),
            LinearSolution::Inconsistent => 0,
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(field: &Field, rows: &mut [Vec<u64>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v ^= field.mul(k, pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `A x = b` exactly. `A` is given by rows of raw field bits.
pub fn linear_solve(field: &Field, a: &[Vec<u64>], b: &[u64]) -> Result<LinearSolution, PolyError> {
    if a.len() != b.len() {
        return Err(PolyError::DimensionMismatch(format!("{} rows but {} right-hand entries", a.len(), b.len())));
    }
    let ncols = a.first().map_or(0, Vec::len);
    if let Some(row) = a.iter().find(|r| r.len() != ncols) {
        return Err(PolyError::DimensionMismatch(format!("row of length {} in a matrix of width {ncols}", row.len())));
    }
    let mut aug: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![0; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][ncols];
    }
    let kernel = kernel_from_rref(&aug, &pivots, ncols);
    if kernel.is_empty() {
        Ok(LinearSolution::Unique(particular))
    } else {
        Ok(LinearSolution::Family { particular, kernel })
    }
}

fn kernel_from_rref(rows: &[Vec<u64>], pivots: &[usize], ncols: usize) -> Vec<Vec<u64>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                // Characteristic 2: -a = a.
                v[c] = rows[r][f];
            }
            v
        })
        .collect()
}

/// Basis of the right kernel of `a`.
pub fn nullspace(field: &Field, a: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
    let mut rows = a.to_vec();
    let pivots = rref(field, &mut rows, ncols);
    kernel_from_rref(&rows, &pivots, ncols)
}

/// [`linear_solve`] on field elements.
pub fn linear_solve_elems(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Result<LinearSolution, PolyError> {
    let Some(field) = b.first().map(|x| x.field().clone()) else {
        return linear_solve(&crate::gf2m::Field::canonical(1)?, &[], &[]);
    };
    if a.iter().flatten().chain(b).any(|x| x.field() != &field) {
        return Err(PolyError::ContextMismatch);
    }
    let raw: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(FieldElement::bits).collect()).collect();
    let rhs: Vec<u64> = b.iter().map(FieldElement::bits).collect();
    linear_solve(&field, &raw, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_system() {
        let f = Field::gf32();
        let a = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(linear_solve(&f, &a, &[5, 7]).unwrap(), LinearSolution::Unique(vec![5, 7]));
    }

    #[test]
    fn inconsistent_system() {
        let f = Field::gf32();
        let a = vec![vec![1], vec![1]];
        assert_eq!(linear_solve(&f, &a, &[0, 1]).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn kernel_vectors_are_in_kernel() {
        let f = Field::gf32();
        let a = vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]];
        let ker = nullspace(&f, &a, 4);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &a {
                let dot = row.iter().zip(v).fold(0, |acc, (&x, &y)| acc ^ f.mul(x, y));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let f = Field::gf32();
        assert!(matches!(linear_solve(&f, &[vec![1]], &[1, 2]), Err(PolyError::DimensionMismatch(_))));
    }
}

//! Exact dense linear algebra over a Field context, and generic rank of a
//! polynomial matrix over the fraction field (cross-multiplication
//! elimination, no division), used for Jacobian rank at generic points of a
//! stratum.

use super::field::Field;
use super::multipoly::MultiPoly;

/// In-place reduced row echelon form; returns the pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn row_reduce<F: Field>(f: &F, mat: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let nrows = mat.len();
    let ncols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = vec![];
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let piv = (row..nrows).find(|&r| !f.is_zero(&mat[r][col]));
        let piv = match piv {
            None => continue,
            Some(p) => p,
        };
        mat.swap(row, piv);
        let inv = f.inv(&mat[row][col]).unwrap();
        for c in col..ncols {
            mat[row][c] = f.mul(&mat[row][c], &inv);
        }
        for r in 0..nrows {
            if r == row || f.is_zero(&mat[r][col]) {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in col..ncols {
                let t = f.mul(&factor, &mat[row][c]);
                mat[r][c] = f.sub(&mat[r][c], &t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, mat: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = mat.to_vec();
    row_reduce(f, &mut m).len()
}

/// Basis of the right kernel {v : mat v = 0}.
pub fn kernel_basis<F: Field>(f: &F, mat: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let ncols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<F::Elem>> = mat.to_vec();
    let pivots = row_reduce(f, &mut m);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = vec![];
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solve mat · x = rhs; None when inconsistent. Returns one solution (free
/// coordinates set to zero).
pub fn solve<F: Field>(f: &F, mat: &[Vec<F::Elem>], rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<F::Elem>> = mat
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(f, &mut aug);
    if pivots.contains(&ncols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![f.zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Rank of a matrix of polynomials over the fraction field of the polynomial
/// ring: division-free elimination (row_k := pivot·row_k − entry·row_pivot),
/// pivoting on the sparsest nonzero entry to slow coefficient growth.
/// Exact: the instances here are small (<= 9 x 7).
pub fn fraction_field_rank<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>]) -> usize {
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rows: Vec<Vec<MultiPoly<F>>> = m.to_vec();
    let mut row_used = vec![false; nrows];
    let mut col_used = vec![false; ncols];
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None; // (terms, row, col)
        for (i, row) in rows.iter().enumerate() {
            if row_used[i] {
                continue;
            }
            for (j, e) in row.iter().enumerate() {
                if col_used[j] || e.is_zero() {
                    continue;
                }
                let t = e.num_terms();
                if best.map(|(bt, _, _)| t < bt).unwrap_or(true) {
                    best = Some((t, i, j));
                }
            }
        }
        let (_, pi, pj) = match best {
            None => return rank,
            Some(b) => b,
        };
        rank += 1;
        row_used[pi] = true;
        col_used[pj] = true;
        let pivot_row = rows[pi].clone();
        let pivot = pivot_row[pj].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if row_used[i] || row[pj].is_zero() {
                continue;
            }
            let factor = row[pj].clone();
            for (j, e) in row.iter_mut().enumerate() {
                if col_used[j] && j != pj {
                    continue; // stays zero in eliminated columns of used pivots
                }
                let a = pivot.mul(f, e);
                let b = factor.mul(f, &pivot_row[j]);
                *e = a.sub(f, &b);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{PrimeField, RationalField};
    use crate::exactmath::multipoly::PolyRing;

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::new(7);
        let m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank(&f, &m), 1);
        let k = kernel_basis(&f, &m);
        assert_eq!(k.len(), 1);
        // check m k = 0
        for row in &m {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(0u64, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let f = PrimeField::new(101);
        let m = vec![vec![1, 0, 2, 3], vec![0, 1, 4, 5]];
        let k = kernel_basis(&f, &m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let f = PrimeField::new(11);
        let m = vec![vec![1, 1], vec![1, 2]];
        let x = solve(&f, &m, &[3, 5]).unwrap();
        assert_eq!(x, vec![1, 2]);
        let sing = vec![vec![1, 1], vec![2, 2]];
        assert!(solve(&f, &sing, &[1, 3]).is_none());
        assert!(solve(&f, &sing, &[1, 2]).is_some());
    }

    #[test]
    fn generic_rank_proportional_rows() {
        let q = RationalField;
        let r = PolyRing::new(&["x", "y"], &[1, 1]);
        let x = MultiPoly::var(&q, &r, 0);
        let y = MultiPoly::var(&q, &r, 1);
        let two = |p: &MultiPoly<RationalField>| p.scale(&q, &crate::exactmath::field::rat_int(2));
        let m = vec![vec![x.clone(), y.clone()], vec![two(&x), two(&y)]];
        assert_eq!(fraction_field_rank(&q, &m), 1);
        let d = vec![
            vec![x.clone(), MultiPoly::zero()],
            vec![MultiPoly::zero(), y.clone()],
        ];
        assert_eq!(fraction_field_rank(&q, &d), 2);
    }

    #[test]
    fn generic_rank_jacobian_of_quadrics() {
        // two generic-shape quadrics in 6 variables have Jacobian rank 2
        let q = RationalField;
        let names = ["x0", "x1", "x2", "x3", "x4", "x5"];
        let r = PolyRing::new(&names, &[1; 6]);
        let v = |i: usize| MultiPoly::var(&q, &r, i);
        let q1 = v(0).mul(&q, &v(0)).add(&q, &v(1).mul(&q, &v(2)));
        let q2 = v(3).mul(&q, &v(4)).add(&q, &v(5).mul(&q, &v(5)));
        let jac: Vec<Vec<_>> = [q1, q2]
            .iter()
            .map(|f| (0..6).map(|i| f.partial(&q, i)).collect())
            .collect();
        assert_eq!(fraction_field_rank(&q, &jac), 2);
    }

    #[test]
    fn generic_rank_row_ops_invariant() {
        let q = RationalField;
        let r = PolyRing::new(&["x", "y"], &[1, 1]);
        let x = MultiPoly::var(&q, &r, 0);
        let y = MultiPoly::var(&q, &r, 1);
        let m = vec![
            vec![x.clone(), y.clone()],
            vec![y.clone(), x.clone()],
        ];
        let swapped = vec![m[1].clone(), m[0].clone()];
        let scaled = vec![
            m[0].iter().map(|e| e.mul(&q, &x)).collect::<Vec<_>>(),
            m[1].clone(),
        ];
        assert_eq!(fraction_field_rank(&q, &m), 2);
        assert_eq!(fraction_field_rank(&q, &swapped), 2);
        assert_eq!(fraction_field_rank(&q, &scaled), 2);
    }
}

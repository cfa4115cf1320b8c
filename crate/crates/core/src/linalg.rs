//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

// Float math for no_std; redundant once std is linked in.
#[allow(unused_imports)]
use num_traits::Float;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Euclidean distance between two equally sized slices.
#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<f64>) -> DVector<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return DVector::zeros(0);
    }
    let mut s = m.clone().svd(false, false).singular_values;
    s.as_mut_slice()
        .sort_unstable_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
    s
}

/// Modified Gram-Schmidt, applied twice for stability. Column order and the
/// direction of the first column are preserved. Returns `None` if a column
/// becomes numerically dependent on the previous ones.
pub fn orthonormalize(m: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let (rows, cols) = m.shape();
    let mut q = m.clone();
    for j in 0..cols {
        let original = norm(m.column(j).as_slice());
        for _pass in 0..2 {
            for i in 0..j {
                let (qi, mut qj) = q.columns_range_pair_mut(i, j);
                let c = dot(qi.as_slice(), qj.as_slice());
                for r in 0..rows {
                    qj[r] -= c * qi[r];
                }
            }
        }
        let n = norm(q.column(j).as_slice());
        if !(n > 1e-14 * original.max(f64::MIN_POSITIVE)) {
            return None;
        }
        q.column_mut(j).unscale_mut(n);
    }
    Some(q)
}

/// Largest absolute entry of `BᵀB − I`.
pub fn orthonormality_defect(b: &DMatrix<f64>) -> f64 {
    let g = b.transpose() * b;
    let mut worst = 0.0_f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).abs());
        }
    }
    worst
}

/// Orthonormal basis of the orthogonal complement of the column span of an
/// orthonormal `basis`, built by projecting the canonical basis vectors.
pub fn orthogonal_complement(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, d) = basis.shape();
    let mut out: alloc::vec::Vec<DVector<f64>> = alloc::vec::Vec::with_capacity(n - d);
    // Visit canonical vectors in order of how far they stick out of the span.
    let mut order: alloc::vec::Vec<(usize, f64)> = (0..n)
        .map(|i| {
            let row = basis.row(i);
            (i, 1.0 - row.dot(&row))
        })
        .collect();
    order.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(core::cmp::Ordering::Equal));
    for (i, _) in order {
        if out.len() == n - d {
            break;
        }
        let mut v = DVector::<f64>::zeros(n);
        v[i] = 1.0;
        for _pass in 0..2 {
            for c in 0..d {
                let col = basis.column(c);
                let proj = col.dot(&v);
                v.axpy(-proj, &col, 1.0);
            }
            for w in &out {
                let proj = w.dot(&v);
                v.axpy(-proj, w, 1.0);
            }
        }
        let len = v.norm();
        if len > 1e-8 {
            out.push(v / len);
        }
    }
    DMatrix::from_columns(&out)
}

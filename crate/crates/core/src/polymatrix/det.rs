use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{MatrixError, SymbolicMatrix};
use crate::exactarith::BigRat;
use crate::multipoly::Polynomial;

/// Integral-domain operations needed by fraction-free elimination.
pub trait ExactRing: Clone + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    /// Quotient of a division known to be exact.
    fn div_exact(&self, divisor: &Self) -> Self;
}

impl ExactRing for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        self.exact_div(divisor)
            .expect("fraction-free elimination divides exactly")
    }
}

impl ExactRing for BigRat {
    fn zero_like(&self) -> Self {
        BigRat::zero()
    }
    fn one_like(&self) -> Self {
        BigRat::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn div_exact(&self, divisor: &Self) -> Self {
        self / divisor
    }
}

// Bareiss elimination on a row-major n x n matrix. `unit` supplies the ring's
// one for the empty matrix.
fn bareiss<T: ExactRing>(mut m: Vec<T>, n: usize, unit: T) -> T {
    if n == 0 {
        return unit;
    }
    let mut negate = false;
    let mut prev = unit;
    for k in 0..n - 1 {
        if m[k * n + k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i * n + k].is_zero_elem()) {
                None => return prev.zero_like(),
                Some(i) => {
                    for j in 0..n {
                        m.swap(k * n + j, i * n + j);
                    }
                    negate = !negate;
                }
            }
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            let lead = m[i * n + k].clone();
            for j in k + 1..n {
                let v = m[i * n + j]
                    .mul_elem(&pivot)
                    .sub_elem(&lead.mul_elem(&m[k * n + j]))
                    .div_exact(&prev);
                m[i * n + j] = v;
            }
            m[i * n + k] = prev.zero_like();
        }
        prev = pivot;
    }
    let d = m[n * n - 1].clone();
    if negate {
        d.neg_elem()
    } else {
        d
    }
}

/// Determinant of a square polynomial matrix (row-major) by fraction-free elimination.
pub fn det_bareiss(entries: &[Polynomial], n: usize, nvars: usize) -> Polynomial {
    assert_eq!(entries.len(), n * n);
    bareiss(entries.to_vec(), n, Polynomial::one(nvars))
}

/// Determinant of a square rational matrix (row-major).
pub fn det_rational(entries: &[BigRat], n: usize) -> BigRat {
    assert_eq!(entries.len(), n * n);
    bareiss(entries.to_vec(), n, BigRat::one())
}

/// Rank of a `rows x cols` matrix (row-major) together with the original
/// indices of a maximal set of independent rows.
pub fn rank<T: ExactRing>(entries: &[T], rows: usize, cols: usize) -> (usize, Vec<usize>) {
    assert_eq!(entries.len(), rows * cols);
    let mut m = entries.to_vec();
    let mut order: Vec<usize> = (0..rows).collect();
    let Some(sample) = entries.first() else {
        return (0, Vec::new());
    };
    let mut prev = sample.one_like();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero_elem()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.swap(r * cols + j, p * cols + j);
            }
            order.swap(r, p);
        }
        let pivot = m[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = m[i * cols + c].clone();
            for j in c + 1..cols {
                let v = m[i * cols + j]
                    .mul_elem(&pivot)
                    .sub_elem(&lead.mul_elem(&m[r * cols + j]))
                    .div_exact(&prev);
                m[i * cols + j] = v;
            }
            m[i * cols + c] = prev.zero_like();
        }
        prev = pivot;
        r += 1;
    }
    let mut pivots = order[..r].to_vec();
    pivots.sort_unstable();
    (r, pivots)
}

/// Index subsets of `0..n`, by size and then lexicographically.
pub(crate) fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1u32 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All `2^n - 1` nonempty principal minors of a symmetric polynomial matrix,
/// keyed by 0-based index set.
pub fn principal_minors(a: &SymbolicMatrix) -> Result<Vec<(Vec<usize>, Polynomial)>, MatrixError> {
    a.require_symmetric()?;
    let n = a.dim();
    let entries = a.polynomial_entries()?;
    let nvars = a.nvars();
    Ok(subsets(n)
        .into_par_iter()
        .map(|idx| {
            let k = idx.len();
            let sub: Vec<Polynomial> = idx
                .iter()
                .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                .map(|(i, j)| entries[i * n + j].clone())
                .collect();
            let d = det_bareiss(&sub, k, nvars);
            (idx, d)
        })
        .collect())
}

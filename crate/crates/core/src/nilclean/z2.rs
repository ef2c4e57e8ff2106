//! `M_n(Z/2)` for `n ≤ 4` as bitmasks.
//!
//! The bitmask of a matrix is its canonical index: entry `(i, j)` sits at
//! bit `n² − 1 − (i·n + j)`, so row `i` is the `n`-bit field starting at
//! bit `n·(n − 1 − i)` with column 0 in its top bit.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ring::Matrix;

pub(crate) const MAX_DIM: usize = 4;

fn row(a: u32, n: usize, i: usize) -> u32 {
    (a >> (n * (n - 1 - i))) & ((1 << n) - 1)
}

fn mul(a: u32, b: u32, n: usize) -> u32 {
    let mut out = 0;
    for i in 0..n {
        let ai = row(a, n, i);
        let mut acc = 0;
        for k in 0..n {
            if ai >> (n - 1 - k) & 1 == 1 {
                acc ^= row(b, n, k);
            }
        }
        out |= acc << (n * (n - 1 - i));
    }
    out
}

/// Over a field a nilpotent `n×n` matrix satisfies `N^n = 0`.
fn is_nilpotent(a: u32, n: usize) -> bool {
    let mut p = a;
    for _ in 1..n {
        if p == 0 {
            return true;
        }
        p = mul(p, a, n);
    }
    p == 0
}

static TABLES: [OnceLock<Vec<u32>>; MAX_DIM] = [const { OnceLock::new() }; MAX_DIM];

/// Idempotents of `M_n(Z/2)`, ascending.
pub(crate) fn idempotent_table(n: usize) -> &'static [u32] {
    TABLES[n - 1].get_or_init(|| (0..1u32 << (n * n)).filter(|&e| mul(e, e, n) == e).collect())
}

/// Smallest idempotent `e` with `a − e` nilpotent, on raw bitmasks.
pub(crate) fn decompose_bits(a: u32, n: usize) -> Option<u32> {
    idempotent_table(n).iter().copied().find(|&e| is_nilpotent(a ^ e, n))
}

/// `A = E + N` over a two-element ring, `E` the smallest-index idempotent
/// that works.
pub fn decompose_matrix_z2(a: &Matrix) -> Result<(Matrix, Matrix)> {
    let base = a.base();
    let n = a.dim();
    if base.order() != 2 || base.zero() != 0 || base.one() != 1 {
        return Err(Error::Precondition(format!("{} is not a two-element ring", base.name())));
    }
    if n > MAX_DIM {
        return Err(Error::Precondition(format!("dimension {n} exceeds the Z/2 kernel limit {MAX_DIM}")));
    }
    let bits = a.entries().iter().fold(0u32, |acc, &x| acc << 1 | x as u32);
    let e = decompose_bits(bits, n).ok_or_else(|| Error::Discrepancy(format!("no Z/2 decomposition of {bits}")))?;
    let unpack = |m: u32| -> Vec<u64> { (0..n * n).map(|p| (m >> (n * n - 1 - p) & 1) as u64).collect() };
    Ok((Matrix::new(base, n, unpack(e))?, Matrix::new(base, n, unpack(bits ^ e))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::matrix_nilpotency;
    use crate::ring::Ring;

    #[test]
    fn bit_product_matches_generic_product() {
        let z2 = Ring::integers_mod(2).unwrap();
        let m3 = Ring::matrix_ring(z2, 3).unwrap();
        for a in (0..512).step_by(7) {
            for b in (0..512).step_by(11) {
                assert_eq!(mul(a as u32, b as u32, 3) as u64, m3.mul(a, b));
            }
        }
    }

    #[test]
    fn idempotent_table_sizes() {
        // 2, 8, 58, 802: sums of Gaussian-binomial projection counts
        let sizes: Vec<usize> = (1..=4).map(|n| idempotent_table(n).len()).collect();
        assert_eq!(sizes, vec![2, 8, 58, 802]);
    }

    #[test]
    fn zero_and_swap() {
        let z2 = Ring::integers_mod(2).unwrap();
        let (e, w) = decompose_matrix_z2(&Matrix::zero(&z2, 2)).unwrap();
        assert!(e.is_zero() && w.is_zero());
        let swap = Matrix::from_rows(&z2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let (e, w) = decompose_matrix_z2(&swap).unwrap();
        assert_eq!(e, Matrix::identity(&z2, 2));
        assert_eq!(e.add(&w), swap);
        assert_eq!(matrix_nilpotency(&w).index, Some(2));
    }

    #[test]
    fn every_three_by_three_decomposes() {
        let z2 = Ring::integers_mod(2).unwrap();
        let m3 = Ring::matrix_ring(z2, 3).unwrap();
        for a in m3.elements() {
            let m = Matrix::from_index(&m3, a).unwrap();
            let (e, w) = decompose_matrix_z2(&m).unwrap();
            assert!(e.is_idempotent());
            assert_eq!(e.add(&w), m);
            assert!(w.pow(3).is_zero());
            assert_eq!(e.index(), decompose_bits(a as u32, 3).map(u64::from));
        }
    }

    #[test]
    fn rejects_larger_rings() {
        let z3 = Ring::integers_mod(3).unwrap();
        assert!(decompose_matrix_z2(&Matrix::zero(&z3, 2)).is_err());
    }
}

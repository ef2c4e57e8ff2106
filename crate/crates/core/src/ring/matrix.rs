use std::fmt;
use std::hash::{Hash, Hasher};

use serde::Serialize;

use super::{encode_uniform, saturating_pow, Ring};
use crate::error::{Error, Result};

/// `out = x · y` for row-major `n × n` entry slices over `base`.
pub(crate) fn mul_entries(base: &Ring, n: usize, x: &[u64], y: &[u64], out: &mut [u64]) {
    for i in 0..n {
        for j in 0..n {
            let mut acc = base.zero();
            for k in 0..n {
                acc = base.add(acc, base.mul(x[i * n + k], y[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
}

/// A square matrix over a finite ring.
///
/// Unlike elements of a matrix-ring descriptor, a `Matrix` has no order cap:
/// `M_4` over a ring of order 64 is fine here even though its index would
/// not fit in a `u64`.
#[derive(Clone)]
pub struct Matrix {
    base: Ring,
    n: usize,
    entries: Vec<u64>,
}

impl Matrix {
    pub fn new(base: &Ring, n: usize, entries: Vec<u64>) -> Result<Matrix> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Matrix(format!(
                "expected {} entries for dimension {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= base.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: base.order(),
            });
        }
        Ok(Matrix {
            base: base.clone(),
            n,
            entries,
        })
    }

    pub fn from_rows(base: &Ring, rows: &[Vec<u64>]) -> Result<Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Matrix("rows must all have length n".into()));
        }
        Matrix::new(base, n, rows.concat())
    }

    pub fn zero(base: &Ring, n: usize) -> Matrix {
        Matrix {
            base: base.clone(),
            n,
            entries: vec![base.zero(); n * n],
        }
    }

    pub fn identity(base: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(base, n);
        for i in 0..n {
            m.entries[i * n + i] = base.one();
        }
        m
    }

    pub fn scalar(base: &Ring, n: usize, r: u64) -> Matrix {
        let mut m = Matrix::zero(base, n);
        for i in 0..n {
            m.entries[i * n + i] = r;
        }
        m
    }

    /// Decode an element of a matrix-ring descriptor.
    pub fn from_index(ring: &Ring, index: u64) -> Result<Matrix> {
        let (base, n) = ring
            .matrix_base()
            .ok_or_else(|| Error::Precondition(format!("{} is not a matrix ring", ring.name())))?;
        if index >= ring.order() {
            return Err(Error::IndexOutOfRange {
                index,
                order: ring.order(),
            });
        }
        Ok(Matrix {
            base: base.clone(),
            n,
            entries: ring.components(index),
        })
    }

    /// Canonical index in `M_n(base)`, when that order fits in a `u64`.
    pub fn index(&self) -> Option<u64> {
        let order = saturating_pow(self.base.order(), (self.n * self.n) as u64);
        u64::try_from(order).ok()?;
        Some(encode_uniform(&self.entries, self.base.order()))
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.n).map(<[u64]>::to_vec).collect()
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(u64, u64) -> u64) -> Matrix {
        debug_assert!(self.base.same(&other.base) && self.n == other.n);
        Matrix {
            base: self.base.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, target: &Ring, f: impl Fn(u64) -> u64) -> Matrix {
        Matrix {
            base: target.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| self.base.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| self.base.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        self.map(&self.base, |a| self.base.neg(a))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.base.same(&other.base) && self.n == other.n);
        let mut out = vec![self.base.zero(); self.n * self.n];
        mul_entries(&self.base, self.n, &self.entries, &other.entries, &mut out);
        Matrix {
            base: self.base.clone(),
            n: self.n,
            entries: out,
        }
    }

    /// `r · A`, scaling from the left.
    pub fn scale(&self, r: u64) -> Matrix {
        self.map(&self.base, |a| self.base.mul(r, a))
    }

    pub fn pow(&self, mut exp: u64) -> Matrix {
        let mut acc = Matrix::identity(&self.base, self.n);
        let mut sq = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == self.base.zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(&self.base, self.n)
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    fn require_commutative(&self) -> Result<()> {
        if self.base.is_commutative() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "determinant needs a commutative base ring, {} is not",
                self.base.name()
            )))
        }
    }

    fn minor(entries: &[u64], n: usize, row: usize, col: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                out.push(entries[i * n + j]);
            }
        }
        out
    }

    fn cofactor_det(base: &Ring, entries: &[u64], n: usize) -> u64 {
        match n {
            0 => base.one(),
            1 => entries[0],
            2 => base.sub(base.mul(entries[0], entries[3]), base.mul(entries[1], entries[2])),
            _ => {
                let mut acc = base.zero();
                for j in 0..n {
                    let a = entries[j];
                    if a == base.zero() {
                        continue;
                    }
                    let term = base.mul(a, Matrix::cofactor_det(base, &Matrix::minor(entries, n, 0, j), n - 1));
                    acc = if j % 2 == 0 { base.add(acc, term) } else { base.sub(acc, term) };
                }
                acc
            }
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self) -> Result<u64> {
        self.require_commutative()?;
        Ok(Matrix::cofactor_det(&self.base, &self.entries, self.n))
    }

    /// Transposed cofactor matrix, so that `A · adj(A) = det(A) · I`.
    pub fn adjugate(&self) -> Result<Matrix> {
        self.require_commutative()?;
        let (base, n) = (&self.base, self.n);
        if n == 1 {
            return Ok(Matrix::identity(base, 1));
        }
        let mut out = vec![base.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let d = Matrix::cofactor_det(base, &Matrix::minor(&self.entries, n, i, j), n - 1);
                out[j * n + i] = if (i + j) % 2 == 0 { d } else { base.neg(d) };
            }
        }
        Ok(Matrix {
            base: base.clone(),
            n,
            entries: out,
        })
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries && self.base.same(&other.base)
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.rows(), self.base.name())
    }
}

/// Parse `"r0c0,r0c1;r1c0,r1c1"`: rows split on `;`, entries on `,`, each
/// entry a canonical index of `base`.
pub fn parse_matrix_literal(text: &str, base: &Ring, n: usize) -> Result<Matrix> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != n {
        return Err(Error::Matrix(format!("expected {n} rows, found {}", rows.len())));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != n {
            return Err(Error::Matrix(format!(
                "row {r} has {} entries, expected {n}",
                cells.len()
            )));
        }
        for cell in cells {
            let value: u64 = cell
                .trim()
                .parse()
                .map_err(|_| Error::Matrix(format!("entry {:?} in row {r} is not an index", cell.trim())))?;
            if value >= base.order() {
                return Err(Error::Matrix(format!(
                    "entry {value} is not an element of {} (order {})",
                    base.name(),
                    base.order()
                )));
            }
            entries.push(value);
        }
    }
    Matrix::new(base, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> Ring {
        Ring::integers_mod(m).unwrap()
    }

    #[test]
    fn identity_is_neutral_for_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for base in [z(6), Ring::galois_field(4).unwrap(), Ring::matrix_ring(z(2), 2).unwrap()] {
            for n in 1..=3 {
                let id = Matrix::identity(&base, n);
                for _ in 0..100 {
                    let entries = (0..n * n).map(|_| rng.gen_range(0..base.order())).collect();
                    let a = Matrix::new(&base, n, entries).unwrap();
                    assert_eq!(a.mul(&id), a);
                    assert_eq!(id.mul(&a), a);
                }
            }
        }
    }

    #[test]
    fn determinant_and_adjugate() {
        let z4 = z(4);
        let a = Matrix::from_rows(&z4, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(a.determinant().unwrap(), 1);
        assert_eq!(a.adjugate().unwrap().rows(), vec![vec![1, 3], vec![0, 1]]);
        let z7 = z(7);
        let b = Matrix::from_rows(&z7, &[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(b.determinant().unwrap(), 0);
        let adj = b.adjugate().unwrap();
        assert!(b.mul(&adj).is_zero());
    }

    #[test]
    fn index_matches_descriptor() {
        let ring = Ring::matrix_ring(z(3), 2).unwrap();
        for i in ring.elements() {
            let m = Matrix::from_index(&ring, i).unwrap();
            assert_eq!(m.index(), Some(i));
        }
        let a = Matrix::from_rows(&z(3), &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&z(3), &[vec![2, 2], vec![1, 0]]).unwrap();
        let prod = ring.mul(a.index().unwrap(), b.index().unwrap());
        assert_eq!(a.mul(&b).index(), Some(prod));
    }

    #[test]
    fn literal_parsing() {
        let z4 = z(4);
        let m = parse_matrix_literal("3,1;0,2", &z4, 2).unwrap();
        assert_eq!(m.rows(), vec![vec![3, 1], vec![0, 2]]);
        assert!(parse_matrix_literal("3,1;0", &z4, 2).is_err());
        assert!(parse_matrix_literal("3,1;0,4", &z4, 2).is_err());
        assert!(parse_matrix_literal("3,1", &z4, 2).is_err());
        assert!(parse_matrix_literal("a,1;0,1", &z4, 2).is_err());
    }
}

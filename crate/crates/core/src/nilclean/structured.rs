//! Constructive decomposition in `M_n(R)` when `R/J(R)` is Boolean.
//!
//! Project to `B = R/J`, split `B` into atoms `f₁..f_k` so that
//! `M_n(B) ≅ M_n(Z/2)^k`, decompose each component with the bitmask kernel,
//! recombine `Ē = Σ fᵢ·Eᵢ`, lift `Ē` back through `M_n(J)` and take
//! `W = A − E`. `W` is nilpotent because its image `Ā − Ē` is.

use super::lift::lift_idempotent_matrix;
use super::z2::{decompose_bits, MAX_DIM};
use super::{Method, MatrixWitness};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::predicates::{matrix_is_nilpotent_fast, matrix_nilpotency};
use crate::radical::{ideal_nil_index, jacobson_radical, quotient_ring, Ideal, QuotientRing};
use crate::ring::{Matrix, Ring};

/// Per-ring precomputation, reusable across many matrices.
#[derive(Debug, Clone)]
pub struct StructuredDecomposer {
    ring: Ring,
    n: usize,
    radical: Ideal,
    nil_index: u32,
    quotient: QuotientRing,
    atoms: Vec<u64>,
}

impl StructuredDecomposer {
    pub fn new(ring: &Ring, n: usize, cfg: &Config) -> Result<StructuredDecomposer> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::Precondition(format!("structured decomposition needs 1 ≤ n ≤ {MAX_DIM}, got {n}")));
        }
        let radical = jacobson_radical(ring, cfg)?;
        let nil_index = ideal_nil_index(&radical)
            .ok_or_else(|| Error::Precondition(format!("J({}) is not nilpotent", ring.name())))?;
        let quotient = quotient_ring(ring, &radical)?;
        let atoms = super::boolean_atoms(quotient.ring(), cfg)?;
        Ok(StructuredDecomposer {
            ring: ring.clone(),
            n,
            radical,
            nil_index,
            quotient,
            atoms,
        })
    }

    pub fn radical(&self) -> &Ideal {
        &self.radical
    }

    pub fn nil_index(&self) -> u32 {
        self.nil_index
    }

    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    /// Idempotent of `M_n(B)` congruent to `Ā` modulo nilpotents.
    fn quotient_idempotent(&self, projected: &[u64]) -> Result<Vec<u64>> {
        let b = self.quotient.ring();
        let n = self.n;
        let mut e_bar = vec![b.zero(); n * n];
        for &f in &self.atoms {
            // f·B = {0, f}, so each entry contributes one bit
            let bits = projected
                .iter()
                .fold(0u32, |acc, &x| acc << 1 | (b.mul(f, x) != b.zero()) as u32);
            let e = decompose_bits(bits, n)
                .ok_or_else(|| Error::Discrepancy(format!("Z/2 component {bits} has no decomposition")))?;
            for (p, slot) in e_bar.iter_mut().enumerate() {
                if e >> (n * n - 1 - p) & 1 == 1 {
                    *slot = b.add(*slot, f);
                }
            }
        }
        Ok(e_bar)
    }

    pub fn decompose(&self, a: &Matrix) -> Result<MatrixWitness> {
        if !a.base().same(&self.ring) || a.dim() != self.n {
            return Err(Error::RingMismatch {
                left: format!("M{}({})", a.dim(), a.base().name()),
                right: format!("M{}({})", self.n, self.ring.name()),
            });
        }
        let projected: Vec<u64> = a.entries().iter().map(|&x| self.quotient.project(x)).collect();
        let e_bar = self.quotient_idempotent(&projected)?;
        let start: Vec<u64> = e_bar.iter().map(|&c| self.quotient.representative(c)).collect();
        let lift = lift_idempotent_matrix(&Matrix::new(&self.ring, self.n, start)?, &self.radical)?;
        let e = lift.idempotent;
        let w = a.sub(&e);
        let bound = self.n as u64 * self.nil_index as u64;
        let nil = if self.ring.is_commutative() {
            matrix_is_nilpotent_fast(&w, self.nil_index)?
        } else {
            w.pow(bound).is_zero()
        };
        let nil_index = match (nil, matrix_nilpotency(&w).index) {
            (true, Some(k)) if k as u64 <= bound => k,
            _ => return Err(Error::Discrepancy(format!("A − E is not nilpotent within n·s = {bound}"))),
        };
        let witness = MatrixWitness {
            target: a.clone(),
            e,
            w,
            nil_index,
            method: Method::Structured,
            lift_iterations: lift.iterations,
        };
        debug_assert!(witness.verify());
        Ok(witness)
    }
}

/// One-shot wrapper around [`StructuredDecomposer`].
pub fn decompose_matrix_structured(a: &Matrix, cfg: &Config) -> Result<MatrixWitness> {
    StructuredDecomposer::new(a.base(), a.dim(), cfg)?.decompose(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilclean::ring_is_nil_clean;
    use crate::predicates::is_nilpotent;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(spec: &str) -> Ring {
        spec.parse().unwrap()
    }

    #[test]
    fn upper_triangular_over_z4() {
        let z4 = ring("Z/4");
        let a = Matrix::from_rows(&z4, &[vec![3, 1], vec![0, 2]]).unwrap();
        let w = decompose_matrix_structured(&a, &Config::default()).unwrap();
        assert!(w.verify());
        assert!(w.nil_index <= 4);
        let m2 = Ring::matrix_ring(z4, 2).unwrap();
        let indexed = w.to_indexed(&m2).unwrap();
        assert!(is_nilpotent(&m2, indexed.w).is_nilpotent());
    }

    #[test]
    fn identity_is_its_own_idempotent() {
        for spec in ["Z/2", "Z/8", "triv(GF(2),2)", "Z/2 x Z/4"] {
            let r = ring(spec);
            for n in 1..=3 {
                let id = Matrix::identity(&r, n);
                let w = decompose_matrix_structured(&id, &Config::default()).unwrap();
                assert_eq!(w.e, id);
                assert!(w.w.is_zero());
            }
        }
    }

    #[test]
    fn random_matrices_over_square_zero_extension() {
        let r = ring("triv(GF(2),2)");
        let dec = StructuredDecomposer::new(&r, 2, &Config::default()).unwrap();
        assert_eq!((dec.radical().len(), dec.nil_index()), (4, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let entries = (0..4).map(|_| rng.gen_range(0..r.order())).collect();
            let a = Matrix::new(&r, 2, entries).unwrap();
            let w = dec.decompose(&a).unwrap();
            assert!(w.verify());
            assert!(w.w.pow(4).is_zero());
        }
    }

    #[test]
    fn agrees_with_oracle_on_every_element() {
        for (spec, n) in [("Z/4", 2), ("Z/2 x Z/2", 2), ("Z/8", 1), ("Z/2", 3)] {
            let r = ring(spec);
            let m = Ring::matrix_ring(r.clone(), n).unwrap();
            assert!(ring_is_nil_clean(&m, &Config::default()).unwrap().nil_clean);
            let dec = StructuredDecomposer::new(&r, n, &Config::default()).unwrap();
            for x in m.elements() {
                let a = Matrix::from_index(&m, x).unwrap();
                assert!(dec.decompose(&a).unwrap().verify(), "{spec} n={n} x={x}");
            }
        }
    }

    #[test]
    fn non_boolean_quotient_names_witness() {
        let err = StructuredDecomposer::new(&ring("Z/6"), 2, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::NotBooleanQuotient { witness: 2 }));
        let err = StructuredDecomposer::new(&ring("triv(GF(3),2)"), 2, &Config::default()).unwrap_err();
        assert!(matches!(err, Error::NotBooleanQuotient { .. }));
    }
}

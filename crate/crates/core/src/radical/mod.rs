//! Ideals, quotients, the Jacobson radical, the intersection of maximal
//! ideals, and nil indices.

mod ideal;

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::predicates::{is_nilpotent, require_scan, unit_table};
use crate::ring::{Matrix, Ring, RingKind};
use crate::scan;

pub(crate) use ideal::additive_generators;
pub use ideal::Ideal;

/// `J(R) = { x : 1 − x·r is a unit for every r }`.
///
/// The left-handed condition `1 − r·x` is checked on the same set and must
/// agree.
pub fn jacobson_radical(ring: &Ring, cfg: &Config) -> Result<Ideal> {
    let units = unit_table(ring, cfg)?;
    let one = ring.one();
    let is_unit = |x: u64| units[x as usize].is_some();
    let right = scan::filter(cfg, ring.elements(), |x| {
        ring.elements().all(|r| is_unit(ring.sub(one, ring.mul(x, r))))
    });
    let left = scan::filter(cfg, ring.elements(), |x| {
        ring.elements().all(|r| is_unit(ring.sub(one, ring.mul(r, x))))
    });
    if left != right {
        return Err(Error::Precondition(format!(
            "left and right quasi-regular sets of {} differ",
            ring.name()
        )));
    }
    Ideal::from_elements(ring, &right)
}

/// Nilpotent elements of a commutative ring, which form an ideal.
pub fn nilradical(ring: &Ring, cfg: &Config) -> Result<Ideal> {
    require_scan(ring, cfg, "nilradical")?;
    if !ring.is_commutative() {
        return Err(Error::Precondition("nilradical is only computed for commutative rings".into()));
    }
    let nil = scan::filter(cfg, ring.elements(), |x| is_nilpotent(ring, x).is_nilpotent());
    Ideal::from_elements(ring, &nil)
}

fn require_lattice(ring: &Ring, cfg: &Config) -> Result<()> {
    if ring.order() > cfg.ideal_cap {
        Err(Error::budget(
            format!("ideal lattice of {}", ring.name()),
            ring.order() as u128,
            cfg.ideal_cap,
        ))
    } else {
        Ok(())
    }
}

/// Every two-sided ideal, ordered by size and then by element list.
pub fn enumerate_ideals(ring: &Ring, cfg: &Config) -> Result<Vec<Ideal>> {
    require_lattice(ring, cfg)?;
    let ring_gens = additive_generators(ring);
    let zero = Ideal::zero(ring);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(zero.elements().to_vec());
    let mut found = vec![zero.clone()];
    let mut queue = VecDeque::from([zero]);
    while let Some(ideal) = queue.pop_front() {
        // one representative per coset suffices: x and x + i give the same extension
        let mut covered = vec![false; ring.order() as usize];
        let extensions = scan::filter(cfg, ring.elements(), |x| !ideal.contains(x));
        for x in extensions {
            if covered[x as usize] {
                continue;
            }
            for &i in ideal.elements() {
                covered[ring.add(x, i) as usize] = true;
            }
            let bigger = ideal.extended(x, &ring_gens);
            if seen.insert(bigger.elements().to_vec()) {
                found.push(bigger.clone());
                queue.push_back(bigger);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(b.elements())));
    Ok(found)
}

/// Proper ideals not strictly contained in another proper ideal.
pub fn maximal_ideals(ring: &Ring, cfg: &Config) -> Result<Vec<Ideal>> {
    let ideals = enumerate_ideals(ring, cfg)?;
    let proper: Vec<&Ideal> = ideals.iter().filter(|i| !i.is_full()).collect();
    Ok(proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset(j)))
        .map(|i| (*i).clone())
        .collect())
}

/// `J*(R)`: intersection of all maximal two-sided ideals.
pub fn j_star(ring: &Ring, cfg: &Config) -> Result<Ideal> {
    let maximal = maximal_ideals(ring, cfg)?;
    Ok(maximal
        .iter()
        .skip(1)
        .fold(maximal.first().cloned().unwrap_or_else(|| Ideal::whole(ring)), |acc, m| acc.intersection(m)))
}

/// `R/I` with smallest-index coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: Ring,
    base: Ring,
    ideal: Ideal,
}

impl QuotientRing {
    /// The quotient as a ring descriptor in its own right.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    fn data(&self) -> &crate::ring::QuotientData {
        match self.ring.kind() {
            RingKind::Quotient(q) => q,
            _ => unreachable!("quotient descriptor"),
        }
    }

    /// Image of a base element.
    pub fn project(&self, x: u64) -> u64 {
        self.data().projection[x as usize] as u64
    }

    /// Smallest base element of a coset.
    pub fn representative(&self, coset: u64) -> u64 {
        self.data().reps[coset as usize]
    }

    pub fn representatives(&self) -> &[u64] {
        &self.data().reps
    }
}

pub fn quotient_ring(ring: &Ring, ideal: &Ideal) -> Result<QuotientRing> {
    if !ideal.ring().same(ring) {
        return Err(Error::RingMismatch {
            left: ring.name().to_string(),
            right: ideal.ring().name().to_string(),
        });
    }
    let label = if ideal.is_zero() {
        "(0)".to_string()
    } else {
        format!(
            "({})",
            ideal.generators().iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        )
    };
    Ok(QuotientRing {
        ring: Ring::quotient_by(ring, ideal.elements(), &label)?,
        base: ring.clone(),
        ideal: ideal.clone(),
    })
}

/// Smallest `s` with `I^s = 0`, or `None` when the powers stabilise at a
/// nonzero ideal.
pub fn ideal_nil_index(ideal: &Ideal) -> Option<u32> {
    let mut power = ideal.clone();
    let mut k = 1u32;
    loop {
        if power.is_zero() {
            return Some(k);
        }
        let next = power.product(ideal);
        if next.len() == power.len() {
            return None;
        }
        power = next;
        k += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixNilReport {
    pub nil: bool,
    pub ideal_nil_index: Option<u32>,
    /// Every matrix with entries in the ideal vanishes at this power.
    pub exponent_bound: Option<u64>,
    pub spot_checks: usize,
}

pub const MATRIX_SPOT_CHECKS: usize = 100;

/// Is `M_n(I)` nil? With `I^s = 0`, products of `s` matrices over `I` land
/// in `M_n(I^s) = 0`, so `A^(n·s) = 0` for all such `A`. The bound is
/// additionally spot-checked on random matrices.
pub fn matrix_ideal_is_nil(ring: &Ring, ideal: &Ideal, n: usize, cfg: &Config) -> Result<MatrixNilReport> {
    if !ideal.ring().same(ring) {
        return Err(Error::RingMismatch {
            left: ring.name().to_string(),
            right: ideal.ring().name().to_string(),
        });
    }
    let Some(s) = ideal_nil_index(ideal) else {
        return Ok(MatrixNilReport {
            nil: false,
            ideal_nil_index: None,
            exponent_bound: None,
            spot_checks: 0,
        });
    };
    let bound = n as u64 * s as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ring.order() ^ (n as u64) << 32);
    let elements = ideal.elements();
    for _ in 0..MATRIX_SPOT_CHECKS {
        let entries = (0..n * n).map(|_| elements[rng.gen_range(0..elements.len())]).collect();
        let a = Matrix::new(ring, n, entries)?;
        if !a.pow(bound).is_zero() {
            return Err(Error::Precondition(format!(
                "matrix {:?} over the ideal survives the power {bound}",
                a.rows()
            )));
        }
    }
    Ok(MatrixNilReport {
        nil: true,
        ideal_nil_index: Some(s),
        exponent_bound: Some(bound),
        spot_checks: MATRIX_SPOT_CHECKS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::ring_is_boolean;
    use crate::ring::ring_axioms_check;

    fn ring(spec: &str) -> Ring {
        spec.parse().unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn radical_examples() {
        assert_eq!(jacobson_radical(&ring("Z/8"), &cfg()).unwrap().elements(), &[0, 2, 4, 6]);
        assert!(jacobson_radical(&ring("GF(4)"), &cfg()).unwrap().is_zero());
        let t = ring("triv(GF(2),2)");
        let j = jacobson_radical(&t, &cfg()).unwrap();
        // (0, v) for the four vectors v: indices 0..4 with a = 0
        assert_eq!(j.elements(), &[0, 1, 2, 3]);
        assert!(j.elements().iter().all(|&x| t.components(x)[0] == 0));
    }

    #[test]
    fn ideal_lattice_of_z12() {
        let z12 = ring("Z/12");
        let ideals = enumerate_ideals(&z12, &cfg()).unwrap();
        let sets: Vec<Vec<u64>> = ideals.iter().map(|i| i.elements().to_vec()).collect();
        assert_eq!(
            sets,
            vec![
                vec![0],
                vec![0, 6],
                vec![0, 4, 8],
                vec![0, 3, 6, 9],
                vec![0, 2, 4, 6, 8, 10],
                (0..12).collect::<Vec<_>>(),
            ]
        );
        let maximal: Vec<Vec<u64>> = maximal_ideals(&z12, &cfg())
            .unwrap()
            .iter()
            .map(|i| i.elements().to_vec())
            .collect();
        assert_eq!(maximal, vec![vec![0, 3, 6, 9], vec![0, 2, 4, 6, 8, 10]]);
        assert_eq!(j_star(&z12, &cfg()).unwrap().elements(), &[0, 6]);
    }

    #[test]
    fn fields_and_products() {
        let gf4 = ring("GF(4)");
        assert_eq!(enumerate_ideals(&gf4, &cfg()).unwrap().len(), 2);
        let max = maximal_ideals(&gf4, &cfg()).unwrap();
        assert_eq!(max.len(), 1);
        assert!(max[0].is_zero());
        let v = ring("Z/2 x Z/2");
        // (1,0) = 2 and (0,1) = 1
        let max: Vec<Vec<u64>> = maximal_ideals(&v, &cfg())
            .unwrap()
            .iter()
            .map(|i| i.elements().to_vec())
            .collect();
        assert_eq!(max, vec![vec![0, 1], vec![0, 2]]);
        assert!(j_star(&ring("Z/2"), &cfg()).unwrap().is_zero());
    }

    #[test]
    fn quotients() {
        let z12 = ring("Z/12");
        let six = Ideal::from_elements(&z12, &[0, 6]).unwrap();
        let q = quotient_ring(&z12, &six).unwrap();
        assert_eq!(q.ring().order(), 6);
        assert!(ring_axioms_check(q.ring(), 256).unwrap().passed);
        // same arithmetic as Z/6 on representatives 0..6
        let z6 = ring("Z/6");
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.ring().mul(a, b), z6.mul(a, b));
                assert_eq!(q.ring().add(a, b), z6.add(a, b));
            }
        }
        let t = ring("triv(GF(2),2)");
        let j = jacobson_radical(&t, &cfg()).unwrap();
        let k = quotient_ring(&t, &j).unwrap();
        assert_eq!(k.ring().order(), 2);
        assert!(ring_is_boolean(k.ring(), &cfg()).unwrap().holds);
        let trivial = quotient_ring(&z12, &Ideal::zero(&z12)).unwrap();
        assert_eq!(trivial.ring().order(), 12);
        assert_eq!(trivial.representatives(), (0..12).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn nil_indices() {
        let z8 = ring("Z/8");
        assert_eq!(ideal_nil_index(&jacobson_radical(&z8, &cfg()).unwrap()), Some(3));
        assert_eq!(ideal_nil_index(&Ideal::zero(&z8)), Some(1));
        let t = ring("triv(GF(2),2)");
        assert_eq!(ideal_nil_index(&jacobson_radical(&t, &cfg()).unwrap()), Some(2));
        // idempotent ideal (3) of Z/6 never dies
        let z6 = ring("Z/6");
        assert_eq!(ideal_nil_index(&Ideal::from_elements(&z6, &[0, 3]).unwrap()), None);
    }

    #[test]
    fn matrix_radicals() {
        let z8 = ring("Z/8");
        let j = jacobson_radical(&z8, &cfg()).unwrap();
        let report = matrix_ideal_is_nil(&z8, &j, 2, &cfg()).unwrap();
        assert!(report.nil);
        assert_eq!(report.exponent_bound, Some(6));
        let z5 = ring("Z/5");
        let zero = matrix_ideal_is_nil(&z5, &Ideal::zero(&z5), 3, &cfg()).unwrap();
        assert_eq!(zero.exponent_bound, Some(3));
        let z4 = ring("Z/4");
        let a = Matrix::from_rows(&z4, &[vec![2, 2], vec![2, 2]]).unwrap();
        assert!(a.mul(&a).is_zero());
        let z6 = ring("Z/6");
        let three = Ideal::from_elements(&z6, &[0, 3]).unwrap();
        assert!(!matrix_ideal_is_nil(&z6, &three, 2, &cfg()).unwrap().nil);
    }

    #[test]
    fn nilradical_of_commutative_rings() {
        assert_eq!(nilradical(&ring("Z/12"), &cfg()).unwrap().elements(), &[0, 6]);
        assert!(nilradical(&ring("M2(Z/2)"), &cfg()).is_err());
    }
}

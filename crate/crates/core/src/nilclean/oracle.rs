//! The exhaustive oracle: ground truth for every other decision path.

use std::sync::Arc;

use serde::Serialize;

use super::{Decomposition, Method, NilCleanWitness, NonNilCleanCertificate};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::predicates::{is_idempotent, is_nil_by_squaring};
use crate::ring::Ring;
use crate::scan;

fn require_budget(ring: &Ring, cfg: &Config) -> Result<()> {
    if ring.order() > cfg.oracle_budget {
        Err(Error::budget(
            format!("exhaustive scan of {}", ring.name()),
            ring.order() as u128,
            cfg.oracle_budget,
        ))
    } else {
        Ok(())
    }
}

/// All solutions of `e² = e`, ascending, memoized on the ring.
pub fn enumerate_idempotents(ring: &Ring, cfg: &Config) -> Result<Arc<Vec<u64>>> {
    require_budget(ring, cfg)?;
    if let Some(cached) = ring.idempotent_cache().get() {
        return Ok(cached.clone());
    }
    let found = Arc::new(scan::filter(cfg, ring.elements(), |e| is_idempotent(ring, e)));
    Ok(ring.idempotent_cache().get_or_init(|| found).clone())
}

fn is_nil_memo(ring: &Ring, x: u64) -> bool {
    let memo = ring.nil_memo();
    match Ring::memo_get(memo, x) {
        1 => true,
        2 => false,
        _ => {
            let nil = is_nil_by_squaring(ring, x);
            Ring::memo_set(memo, x, if nil { 1 } else { 2 });
            nil
        }
    }
}

/// Smallest idempotent `e` with `a − e` nilpotent.
fn smallest_working_idempotent(ring: &Ring, idempotents: &[u64], a: u64) -> Option<u64> {
    idempotents
        .iter()
        .copied()
        .find(|&e| is_nil_memo(ring, ring.sub(a, e)))
}

pub fn decompose_bruteforce(ring: &Ring, a: u64, cfg: &Config) -> Result<Decomposition> {
    if a >= ring.order() {
        return Err(Error::IndexOutOfRange {
            index: a,
            order: ring.order(),
        });
    }
    let idempotents = enumerate_idempotents(ring, cfg)?;
    Ok(match smallest_working_idempotent(ring, &idempotents, a) {
        Some(e) => Decomposition::Witness(
            NilCleanWitness::new(ring, a, e, Method::Oracle).expect("oracle witness must verify"),
        ),
        None => Decomposition::NotNilClean(NonNilCleanCertificate {
            target: a,
            idempotents_scanned: idempotents.len(),
        }),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NilCleanVerdict {
    pub nil_clean: bool,
    /// Count of elements confirmed to decompose: all of them, or every
    /// index below the certificate (0 when `first_found` cut the scan).
    pub decomposed: u64,
    pub idempotents: usize,
    pub certificate: Option<NonNilCleanCertificate>,
}

/// Does every element decompose? The certificate names the smallest failing
/// index unless `cfg.first_found` is set, in which case a failing scalar
/// matrix found by the heuristic prefix may be reported instead.
pub fn ring_is_nil_clean(ring: &Ring, cfg: &Config) -> Result<NilCleanVerdict> {
    let idempotents = enumerate_idempotents(ring, cfg)?;
    let fails = |a: u64| smallest_working_idempotent(ring, &idempotents, a).is_none();

    let mut limit = ring.order();
    let mut candidate = None;
    if cfg.scalar_prefix {
        if let Some((base, _)) = ring.matrix_base() {
            let mut scalars: Vec<u64> = base.elements().filter_map(|r| ring.scalar_matrix(r)).collect();
            scalars.sort_unstable();
            if let Some(&s) = scalars.iter().find(|&&s| fails(s)) {
                candidate = Some(s);
                limit = s;
            }
        }
    }
    let shortcut = cfg.first_found && candidate.is_some();
    let failing = if shortcut {
        candidate
    } else {
        scan::find_first(cfg, 0..limit, fails).or(candidate)
    };
    Ok(match failing {
        Some(target) => NilCleanVerdict {
            nil_clean: false,
            decomposed: if shortcut { 0 } else { target },
            idempotents: idempotents.len(),
            certificate: Some(NonNilCleanCertificate {
                target,
                idempotents_scanned: idempotents.len(),
            }),
        },
        None => NilCleanVerdict {
            nil_clean: true,
            decomposed: ring.order(),
            idempotents: idempotents.len(),
            certificate: None,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Matrix;

    fn ring(spec: &str) -> Ring {
        spec.parse().unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn idempotent_counts() {
        assert_eq!(*enumerate_idempotents(&ring("Z/6"), &cfg()).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(enumerate_idempotents(&ring("M2(Z/2)"), &cfg()).unwrap().len(), 8);
        // 0, I and the 12 rank-one projections of GF(3)^2
        assert_eq!(enumerate_idempotents(&ring("M2(Z/3)"), &cfg()).unwrap().len(), 14);
    }

    #[test]
    fn small_decompositions() {
        match decompose_bruteforce(&ring("Z/4"), 3, &cfg()).unwrap() {
            Decomposition::Witness(w) => {
                assert_eq!((w.e, w.w, w.nil_index), (1, 2, 2));
                assert!(w.verify());
            }
            other => panic!("{other:?}"),
        }
        let z6 = ring("Z/6");
        match decompose_bruteforce(&z6, 2, &cfg()).unwrap() {
            Decomposition::NotNilClean(cert) => {
                assert_eq!(cert.idempotents_scanned, 4);
                assert!(cert.verify(&z6));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn swap_matrix_over_z2() {
        let m2 = ring("M2(Z/2)");
        let swap = 0b0110;
        let Decomposition::Witness(w) = decompose_bruteforce(&m2, swap, &cfg()).unwrap() else {
            panic!("swap matrix decomposes");
        };
        // every idempotent below the identity leaves a non-nilpotent difference
        assert_eq!(w.e, m2.one());
        assert_eq!(Matrix::from_index(&m2, w.w).unwrap().rows(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(w.nil_index, 2);
        assert!(NilCleanWitness::new(&m2, swap, 0b0101, Method::Oracle).is_none());
    }

    #[test]
    fn ring_verdicts() {
        assert!(ring_is_nil_clean(&ring("M2(Z/2)"), &cfg()).unwrap().nil_clean);
        let z6 = ring_is_nil_clean(&ring("Z/6"), &cfg()).unwrap();
        assert_eq!(z6.certificate.map(|c| c.target), Some(2));
    }

    #[test]
    fn heuristic_prefix_keeps_smallest_certificate() {
        let m2 = ring("M2(Z/3)");
        let plain = ring_is_nil_clean(&m2, &Config { scalar_prefix: false, ..cfg() }).unwrap();
        let prefixed = ring_is_nil_clean(&m2, &cfg()).unwrap();
        assert_eq!(plain.certificate, prefixed.certificate);
        let parallel = ring_is_nil_clean(&m2, &cfg().with_threads(4)).unwrap();
        assert_eq!(plain.certificate, parallel.certificate);
        let first = ring_is_nil_clean(&m2, &Config { first_found: true, ..cfg() }).unwrap();
        let first = first.certificate.unwrap();
        assert!(first.verify(&m2));
        assert!(first.target >= plain.certificate.unwrap().target);
    }

    #[test]
    fn budget_is_enforced() {
        let big = ring("M2(Z/64)");
        assert!(matches!(enumerate_idempotents(&big, &cfg()), Err(Error::BudgetExceeded { .. })));
    }
}

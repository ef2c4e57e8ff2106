//! Atoms of a finite Boolean ring.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::predicates::ring_is_boolean;
use crate::ring::Ring;

/// Minimal nonzero idempotents, ascending. They are pairwise orthogonal and
/// sum to 1, so a ring with `k` atoms has `2^k` elements.
pub fn boolean_atoms(ring: &Ring, cfg: &Config) -> Result<Vec<u64>> {
    let check = ring_is_boolean(ring, cfg)?;
    if !check.holds {
        return Err(Error::NotBooleanQuotient {
            witness: check.witness.unwrap_or(0),
        });
    }
    if ring.order() == 1 {
        return Ok(Vec::new());
    }
    let one = ring.one();
    let mut pieces = vec![one];
    for b in ring.elements() {
        let not_b = ring.sub(one, b);
        pieces = pieces
            .iter()
            .flat_map(|&f| [ring.mul(f, b), ring.mul(f, not_b)])
            .filter(|&x| x != ring.zero())
            .collect();
    }
    pieces.sort_unstable();
    pieces.dedup();
    Ok(pieces)
}

use num_integer::Integer;

use super::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CrtFactor {
    pub prime: u64,
    pub exponent: u32,
    /// `Z/p^r`.
    pub ring: Ring,
}

impl CrtFactor {
    pub fn modulus(&self) -> u64 {
        self.ring.order()
    }
}

/// `Z/m ≅ Z/p_1^{r_1} × … × Z/p_s^{r_s}` with primes ascending.
#[derive(Debug, Clone)]
pub struct CrtSplit {
    pub modulus: u64,
    pub factors: Vec<CrtFactor>,
}

pub fn crt_split_zm(m: u64) -> Result<CrtSplit> {
    if m < 2 {
        return Err(Error::Precondition(format!("CRT split needs m >= 2, got {m}")));
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut exponent = 0;
            let mut power = 1;
            while rest.is_multiple_of(p) {
                rest /= p;
                power *= p;
                exponent += 1;
            }
            factors.push(CrtFactor {
                prime: p,
                exponent,
                ring: Ring::integers_mod(power)?,
            });
        }
        p += 1;
    }
    if rest > 1 {
        factors.push(CrtFactor {
            prime: rest,
            exponent: 1,
            ring: Ring::integers_mod(rest)?,
        });
    }
    Ok(CrtSplit { modulus: m, factors })
}

impl CrtSplit {
    pub fn split(&self, x: u64) -> Vec<u64> {
        self.factors.iter().map(|f| x % f.modulus()).collect()
    }

    /// Inverse of [`split`](Self::split), by the extended Euclidean algorithm.
    pub fn recombine(&self, residues: &[u64]) -> u64 {
        let m = self.modulus as i128;
        let mut acc: i128 = 0;
        for (f, &r) in self.factors.iter().zip(residues) {
            let q = f.modulus() as i128;
            let cofactor = m / q;
            // cofactor * s ≡ 1 (mod q)
            let s = cofactor.extended_gcd(&q).x.mod_floor(&q);
            acc = (acc + (r as i128 % q) * cofactor % m * s) % m;
        }
        acc.mod_floor(&m) as u64
    }

    /// The product ring of the prime-power factors.
    pub fn product_ring(&self) -> Result<Ring> {
        Ring::product(self.factors.iter().map(|f| f.ring.clone()).collect())
    }
}

//! Prime-power fields with fixed modulus polynomials.
//!
//! Elements are coefficient vectors in base `p`, constant term least
//! significant, so the index of `c0 + c1 t + c2 t^2` is `c0 + c1 p + c2 p^2`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    characteristic: u64,
    degree: usize,
    /// Monic modulus, coefficients from the constant term upwards.
    modulus: Vec<u64>,
    order: u64,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let (characteristic, modulus) = match q {
            4 => (2, vec![1, 1, 1]),       // t^2 + t + 1
            8 => (2, vec![1, 1, 0, 1]),    // t^3 + t + 1
            9 => (3, vec![1, 0, 1]),       // t^2 + 1
            16 => (2, vec![1, 1, 0, 0, 1]), // t^4 + t + 1
            p if is_prime(p) => (p, vec![0, 1]),
            _ => return Err(Error::UnsupportedField(q)),
        };
        Ok(GaloisField {
            characteristic,
            degree: modulus.len() - 1,
            modulus,
            order: q,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        let p = self.characteristic;
        (0..self.degree)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    fn index(&self, digits: &[u64]) -> u64 {
        digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.characteristic + d)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.characteristic;
        if self.degree == 1 {
            return ((a as u128 + b as u128) % p as u128) as u64;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.characteristic;
        if self.degree == 1 {
            return (p - a % p) % p;
        }
        let x: Vec<u64> = self.digits(a).iter().map(|&d| (p - d) % p).collect();
        self.index(&x)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.characteristic;
        if self.degree == 1 {
            return ((a as u128 * b as u128) % p as u128) as u64;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let k = self.degree;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % p;
            }
        }
        // reduce with t^k = -(m_0 + ... + m_{k-1} t^{k-1})
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + (p - m) % p * c) % p;
            }
        }
        self.index(&prod[..k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_squared_in_gf4_is_t_plus_one() {
        let f = GaloisField::new(4).unwrap();
        // t = 2, t + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let f = GaloisField::new(q).unwrap();
            for a in 1..q {
                assert!((1..q).any(|b| f.mul(a, b) == 1), "GF({q}) element {a}");
            }
        }
    }

    #[test]
    fn unsupported_sizes_are_rejected() {
        for q in [0, 1, 6, 25, 27, 32] {
            assert_eq!(GaloisField::new(q), Err(Error::UnsupportedField(q)));
        }
    }
}

//! Arithmetic in GF(q³) = GF(q)[x] / (x³ + f₂x² + f₁x + f₀) for a prime q.
//!
//! Elements are coefficient triples `[a₀, a₁, a₂]` for `a₀ + a₁x + a₂x²`.
//! Candidates (moduli and primitive elements) are enumerated in increasing
//! order of their base-q value `a₂q² + a₁q + a₀`, which fixes the output.

use crate::primes::prime_factors;

pub type Elem = [u64; 3];

pub const ONE: Elem = [1, 0, 0];

#[derive(Debug, Clone)]
pub struct CubicExtension {
    q: u64,
    /// `[f₀, f₁, f₂]` of the monic modulus.
    modulus: [u64; 3],
}

fn from_value(value: u64, q: u64) -> [u64; 3] {
    [value % q, (value / q) % q, value / (q * q)]
}

impl CubicExtension {
    /// Uses the least irreducible monic cubic. A cubic is irreducible over a
    /// field exactly when it has no root there.
    pub fn new(q: u64) -> Self {
        let modulus = (0..q * q * q)
            .map(|v| from_value(v, q))
            .find(|&[f0, f1, f2]| {
                (0..q).all(|x| !(x * x % q * x + f2 * x % q * x + f1 * x + f0).is_multiple_of(q))
            })
            .expect("an irreducible cubic exists over every prime field");
        CubicExtension { q, modulus }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> [u64; 3] {
        self.modulus
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let q = self.q;
        let m = self.modulus;
        let mut r = [0u64; 5];
        for i in 0..3 {
            for j in 0..3 {
                r[i + j] += a[i] * b[j];
            }
        }
        // x³ = -(f₀ + f₁x + f₂x²); every entry stays below 6q²
        for k in [4, 3] {
            let c = q - r[k] % q;
            for t in 0..3 {
                r[k - 3 + t] += c * m[t];
            }
        }
        [r[0] % q, r[1] % q, r[2] % q]
    }

    pub fn pow(&self, base: &Elem, mut e: u64) -> Elem {
        let mut acc = ONE;
        let mut b = *base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn order_of_group(&self) -> u64 {
        self.q.pow(3) - 1
    }

    pub fn is_primitive(&self, a: &Elem, factors: &[u64]) -> bool {
        let n = self.order_of_group();
        *a != [0, 0, 0]
            && self.pow(a, n) == ONE
            && factors.iter().all(|p| self.pow(a, n / p) != ONE)
    }

    /// The least element of multiplicative order `q³ - 1`.
    pub fn primitive_element(&self) -> Elem {
        let factors = prime_factors(self.order_of_group());
        (1..self.q.pow(3))
            .map(|v| from_value(v, self.q))
            .find(|a| self.is_primitive(a, &factors))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(CubicExtension::new(2).modulus(), [1, 1, 0]);
        assert_eq!(CubicExtension::new(3).modulus(), [1, 2, 0]);
    }

    #[test]
    fn field_axioms_small() {
        let f = CubicExtension::new(3);
        let all: Vec<Elem> = (0..27).map(|v| from_value(v, 3)).collect();
        for a in &all {
            for b in &all {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if *a != [0, 0, 0] && *b != [0, 0, 0] {
                    assert_ne!(f.mul(a, b), [0, 0, 0], "zero divisor");
                }
            }
        }
    }

    #[test]
    fn primitive_generates_everything() {
        for q in [2u64, 3, 5, 7] {
            let f = CubicExtension::new(q);
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = ONE;
            for _ in 0..f.order_of_group() {
                assert!(seen.insert(x));
                x = f.mul(&x, &g);
            }
            assert_eq!(x, ONE);
        }
    }
}

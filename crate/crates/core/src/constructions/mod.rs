//! Sidon set constructions.
//!
//! * Singer perfect difference sets modulo `q² + q + 1` built inside GF(q³),
//!   and their embeddings into `[1, N]`.
//! * The quadratic-residue construction `{2pk + (k² mod p) + 1}`.
//! * The greedy (Mian–Chowla) sequence.
//! * Affine images, including the odd dilation `2·S + 1` whose elements are
//!   all odd and therefore admit no solution to `x₁ + x₂ + x₃ + x₄ = x₅`.

pub mod cache;
pub mod field;

use serde::{Deserialize, Serialize};

use crate::primes::is_prime;
use crate::{Error, IntegerSet, Result};

use field::{CubicExtension, ONE};

/// Cost guards for the constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub singer_max_q: u64,
    pub mian_chowla_max_n: usize,
    /// How far above `ceil(sqrt(N))` the Singer prime search starts.
    pub singer_search_buffer: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            singer_max_q: 1021,
            mian_chowla_max_n: 500,
            singer_search_buffer: 0,
        }
    }
}

/// Residues modulo `v = q² + q + 1` whose non-zero differences cover every
/// non-zero residue exactly once. Stored translated so the least residue is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectDifferenceSet {
    pub q: u64,
    pub v: u64,
    pub residues: Vec<u64>,
}

impl PerfectDifferenceSet {
    /// Exhaustive check: `|residues| = q + 1` and each non-zero residue is hit
    /// by exactly one ordered pair.
    pub fn verify(&self) -> std::result::Result<(), String> {
        if self.v != self.q * self.q + self.q + 1 {
            return Err(format!("modulus {} != q²+q+1 for q = {}", self.v, self.q));
        }
        if self.residues.len() as u64 != self.q + 1 {
            return Err(format!(
                "expected {} residues, found {}",
                self.q + 1,
                self.residues.len()
            ));
        }
        if self.residues.iter().any(|&r| r >= self.v) {
            return Err("residue out of range".into());
        }
        let mut hits = vec![0u32; self.v as usize];
        for &a in &self.residues {
            for &b in &self.residues {
                if a != b {
                    hits[((a + self.v - b) % self.v) as usize] += 1;
                }
            }
        }
        match hits.iter().skip(1).position(|&c| c != 1) {
            None => Ok(()),
            Some(i) => Err(format!("residue {} is hit {} times", i + 1, hits[i + 1])),
        }
    }

    /// The residues shifted into `[1, v]`.
    pub fn full_embedding(&self) -> IntegerSet {
        embed_and_truncate(self, self.v as i64)
    }
}

/// Singer's construction with the default cap on `q`.
pub fn singer(q: u64) -> Result<PerfectDifferenceSet> {
    singer_with_limits(q, &Limits::default())
}

/// `{ i mod v : θ^i ∈ span(1, θ) }` for a primitive element θ of GF(q³).
///
/// `θ^v` lies in GF(q)*, so `i` and `i + v` name the same projective point;
/// scanning `i < v` visits every scalar class once.
pub fn singer_with_limits(q: u64, limits: &Limits) -> Result<PerfectDifferenceSet> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q > limits.singer_max_q {
        return Err(Error::CapExceeded {
            what: "q",
            value: q,
            cap: limits.singer_max_q,
        });
    }
    let field = CubicExtension::new(q);
    let theta = field.primitive_element();
    let v = q * q + q + 1;
    let mut residues = Vec::with_capacity(q as usize + 1);
    let mut power = ONE;
    for i in 0..v {
        // 1, θ, θ^i are dependent iff det[1; θ; θ^i] = t₁u₂ - t₂u₁ vanishes
        if (theta[1] * power[2] + q * q - theta[2] * power[1]).is_multiple_of(q) {
            residues.push(i);
        }
        power = field.mul(&power, &theta);
    }
    let min = residues.iter().copied().min().unwrap_or(0);
    let mut residues: Vec<u64> = residues.iter().map(|&r| (r + v - min) % v).collect();
    residues.sort_unstable();
    Ok(PerfectDifferenceSet { q, v, residues })
}

/// Maps `r -> r + 1` and keeps the values `<= n`.
pub fn embed_and_truncate(d: &PerfectDifferenceSet, n: i64) -> IntegerSet {
    let elements = d
        .residues
        .iter()
        .map(|&r| r as i64 + 1)
        .filter(|&x| x <= n)
        .collect();
    IntegerSet::new(n, elements).expect("sorted residues give a valid set")
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestSinger {
    pub q: u64,
    pub set: IntegerSet,
    pub deviation: f64,
}

/// Largest truncated Singer set in `[1, n]`.
///
/// Walks primes downward from the largest prime `<= ceil(sqrt(n)) + buffer`,
/// truncating each Singer set to `[1, n]`, and stops after the first prime
/// whose modulus is below `n` (its whole set fits, and smaller primes only
/// give smaller sets). Ties go to the smaller prime.
pub fn best_singer_for(n: u64) -> Result<BestSinger> {
    best_singer_with(n, &Limits::default(), singer_with_limits)
}

/// [`best_singer_for`] with an explicit Singer source (for example a cache).
pub fn best_singer_with<F>(n: u64, limits: &Limits, mut source: F) -> Result<BestSinger>
where
    F: FnMut(u64, &Limits) -> Result<PerfectDifferenceSet>,
{
    if n < 7 {
        return Err(Error::OutOfRange(format!(
            "best_singer_for needs N >= 7, got {n}"
        )));
    }
    let start = ceil_sqrt(n) + limits.singer_search_buffer;
    let mut best: Option<(u64, IntegerSet)> = None;
    for q in (2..=start).rev().filter(|&q| is_prime(q)) {
        let d = source(q, limits)?;
        let set = embed_and_truncate(&d, n as i64);
        if best.as_ref().is_none_or(|(_, b)| set.len() >= b.len()) {
            best = Some((q, set));
        }
        if d.v < n {
            break;
        }
    }
    let (q, set) = best.expect("q = 2 is always reached for n >= 7");
    let deviation = set.deviation();
    Ok(BestSinger { q, set, deviation })
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

/// `{2pk + (k² mod p) + 1 : 0 <= k < p}` inside `[1, 2p²]`.
pub fn erdos_turan_construction(p: u64) -> Result<IntegerSet> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = p as i64;
    let elements = (0..p).map(|k| 2 * p * k + (k * k) % p + 1).collect();
    IntegerSet::new(2 * p * p, elements)
}

/// The first `n` terms of the greedy Sidon sequence starting at 1.
pub fn mian_chowla(n: usize) -> Result<IntegerSet> {
    mian_chowla_with_limits(n, &Limits::default())
}

pub fn mian_chowla_with_limits(n: usize, limits: &Limits) -> Result<IntegerSet> {
    if n == 0 {
        return Err(Error::OutOfRange("mian_chowla needs n >= 1".into()));
    }
    if n > limits.mian_chowla_max_n {
        return Err(Error::CapExceeded {
            what: "n",
            value: n as u64,
            cap: limits.mian_chowla_max_n as u64,
        });
    }
    let mut terms: Vec<i64> = vec![1];
    let mut used = vec![false; 64];
    let mut candidate = 1i64;
    let mut fresh = Vec::new();
    while terms.len() < n {
        candidate += 1;
        fresh.clear();
        let ok = terms.iter().all(|&t| {
            let d = (candidate - t) as usize;
            fresh.push(d);
            !used.get(d).copied().unwrap_or(false)
        });
        if ok {
            let need = fresh.iter().max().copied().unwrap_or(0) + 1;
            if used.len() < need {
                used.resize(need.next_power_of_two(), false);
            }
            for &d in &fresh {
                used[d] = true;
            }
            terms.push(candidate);
        }
    }
    IntegerSet::new(candidate, terms)
}

/// `{2s + 1 : s in S0}` in `[1, 2·N0 + 1]`.
pub fn odd_double(s0: &IntegerSet) -> IntegerSet {
    affine_image(s0, 2, 1, 2 * s0.ambient() + 1).expect("2s + 1 <= 2N0 + 1")
}

/// `{a·s + b : s in S}` in `[1, n_prime]`.
pub fn affine_image(set: &IntegerSet, a: i64, b: i64, n_prime: i64) -> Result<IntegerSet> {
    if a == 0 {
        return Err(Error::OutOfRange(
            "affine multiplier must be non-zero".into(),
        ));
    }
    let image: Vec<i64> = set.elements().iter().map(|&s| a * s + b).collect();
    if let Some(&bad) = image.iter().find(|&&x| x < 1 || x > n_prime) {
        return Err(Error::OutOfRange(format!(
            "image point {bad} outside [1, {n_prime}]"
        )));
    }
    IntegerSet::from_unsorted(n_prime, image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{erdos_turan_cap, is_sidon};

    /// Independent greedy oracle: brute-force Sidon test on every candidate.
    fn greedy_oracle(n: usize) -> Vec<i64> {
        let mut terms = vec![1i64];
        let mut c = 1;
        while terms.len() < n {
            c += 1;
            let mut t = terms.clone();
            t.push(c);
            let mut diffs: Vec<i64> = t
                .iter()
                .flat_map(|&a| t.iter().filter(move |&&b| b < a).map(move |&b| a - b))
                .collect();
            let len = diffs.len();
            diffs.sort();
            diffs.dedup();
            if diffs.len() == len {
                terms = t;
            }
        }
        terms
    }

    #[test]
    fn singer_small() {
        assert_eq!(singer(2).unwrap().residues, vec![0, 1, 3]);
        assert_eq!(singer(3).unwrap().residues, vec![0, 1, 3, 9]);
        assert_eq!(singer(3).unwrap().v, 13);
        assert!(matches!(singer(4), Err(Error::NotPrime(4))));
        assert!(matches!(singer(1), Err(Error::NotPrime(1))));
        assert!(matches!(singer(1031), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn singer_perfect_difference_up_to_101() {
        for q in crate::primes::primes_in(2, 101) {
            let d = singer(q).unwrap();
            d.verify().unwrap_or_else(|e| panic!("q = {q}: {e}"));
            assert_eq!(d.residues.len() as u64, q + 1);
            assert_eq!(d.residues[0], 0);
            let full = d.full_embedding();
            assert!(is_sidon(&full).is_sidon);
            assert!(full.deviation() < 1.0, "q = {q}");
            assert!(full.len() as f64 <= erdos_turan_cap(full.ambient() as u64));
        }
    }

    #[test]
    fn verify_catches_damage() {
        let mut d = singer(5).unwrap();
        d.residues[2] += 1;
        assert!(d.verify().is_err());
        let mut d = singer(5).unwrap();
        d.residues.pop();
        assert!(d.verify().is_err());
    }

    #[test]
    fn embedding_examples() {
        let d = PerfectDifferenceSet {
            q: 3,
            v: 13,
            residues: vec![0, 1, 3, 9],
        };
        assert_eq!(embed_and_truncate(&d, 13).elements(), &[1, 2, 4, 10]);
        assert_eq!(embed_and_truncate(&d, 9).elements(), &[1, 2, 4]);
        let d7 = singer(2).unwrap();
        assert_eq!(embed_and_truncate(&d7, 1).elements(), &[1]);
    }

    #[test]
    fn best_singer_examples() {
        let b = best_singer_for(13).unwrap();
        assert_eq!((b.q, b.set.elements()), (3, &[1i64, 2, 4, 10][..]));
        let b = best_singer_for(7).unwrap();
        assert_eq!((b.q, b.set.elements()), (2, &[1i64, 2, 4][..]));
        let b = best_singer_for(993).unwrap();
        assert_eq!((b.q, b.set.len()), (31, 32));
        assert!(b.deviation < 1.0);
        let b = best_singer_for(57).unwrap();
        assert_eq!((b.q, b.set.len()), (7, 8));
        // ceil(sqrt(14)) = 4; q = 3 has v = 13 < 14, so its whole set fits
        let b = best_singer_for(14).unwrap();
        assert_eq!((b.q, b.set.elements()), (3, &[1i64, 2, 4, 10][..]));
        assert!(best_singer_for(6).is_err());
    }

    #[test]
    fn wider_search_buffer() {
        let limits = Limits {
            singer_search_buffer: 2,
            ..Limits::default()
        };
        let b = best_singer_with(13, &limits, singer_with_limits).unwrap();
        assert_eq!((b.q, b.set.elements()), (5, &[1i64, 2, 5, 11, 13][..]));
        assert!(is_sidon(&b.set).is_sidon);
    }

    #[test]
    fn erdos_turan_examples() {
        let s = erdos_turan_construction(3).unwrap();
        assert_eq!((s.ambient(), s.elements()), (18, &[1i64, 8, 14][..]));
        let s = erdos_turan_construction(2).unwrap();
        assert_eq!((s.ambient(), s.elements()), (8, &[1i64, 6][..]));
        assert!(erdos_turan_construction(4).is_err());
        for p in crate::primes::primes_in(2, 200) {
            let s = erdos_turan_construction(p).unwrap();
            assert_eq!(s.len() as u64, p);
            assert!(is_sidon(&s).is_sidon, "p = {p}");
        }
    }

    #[test]
    fn mian_chowla_matches_greedy_oracle() {
        assert_eq!(mian_chowla(1).unwrap().elements(), &[1]);
        assert_eq!(mian_chowla(3).unwrap().elements(), &[1, 2, 4]);
        // OEIS A005282
        assert_eq!(
            mian_chowla(10).unwrap().elements(),
            &[1, 2, 4, 8, 13, 21, 31, 45, 66, 81]
        );
        let big = mian_chowla(60).unwrap();
        assert_eq!(big.elements(), &greedy_oracle(60)[..]);
        assert_eq!(big.ambient(), *big.elements().last().unwrap());
        assert!(is_sidon(&big).is_sidon);
        assert!(mian_chowla(501).is_err());
        assert!(mian_chowla(0).is_err());
    }

    #[test]
    fn mian_chowla_prefix_stable() {
        let long = mian_chowla(120).unwrap();
        for n in 1..120 {
            assert_eq!(mian_chowla(n).unwrap().elements(), &long.elements()[..n]);
        }
    }

    #[test]
    fn odd_double_examples() {
        let s = IntegerSet::new(5, vec![1, 2, 5]).unwrap();
        let o = odd_double(&s);
        assert_eq!((o.ambient(), o.elements()), (11, &[3i64, 5, 11][..]));
        assert!(odd_double(&IntegerSet::empty(4).unwrap()).is_empty());
        let s = IntegerSet::new(22, vec![1, 2, 5, 11, 22]).unwrap();
        assert_eq!(odd_double(&s).elements(), &[3, 5, 11, 23, 45]);
        assert_eq!(is_sidon(&odd_double(&s)).is_sidon, is_sidon(&s).is_sidon);
    }

    #[test]
    fn affine_examples() {
        let s = IntegerSet::new(5, vec![1, 2, 5]).unwrap();
        assert_eq!(affine_image(&s, 1, 0, 5).unwrap(), s);
        assert_eq!(affine_image(&s, 2, 1, 11).unwrap().elements(), &[3, 5, 11]);
        let r = IntegerSet::new(2, vec![1, 2]).unwrap();
        assert_eq!(affine_image(&r, -1, 3, 2).unwrap().elements(), &[1, 2]);
        assert!(affine_image(&s, 2, 1, 10).is_err());
        assert!(affine_image(&s, 0, 1, 10).is_err());
        let bad = IntegerSet::new(3, vec![1, 2, 3]).unwrap();
        assert!(!is_sidon(&affine_image(&bad, -3, 10, 10).unwrap()).is_sidon);
    }
}

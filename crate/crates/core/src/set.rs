//! Finite subsets of an interval `[1, N]` and the Sidon property.
//!
//! A set is Sidon when every non-zero integer has at most one representation
//! as a difference `a - b` of two of its elements. Equivalently, its
//! autocorrelation `h -> |S ∩ (S - h)|` is at most one away from `h = 0`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ambient sizes up to this bound use the bit-vector autocorrelation path.
pub const DENSE_AUTOCORRELATION_LIMIT: i64 = 1 << 20;

/// A strictly increasing list of integers inside `[1, ambient]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSet", into = "RawSet")]
pub struct IntegerSet {
    ambient: i64,
    elements: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    ambient: i64,
    elements: Vec<i64>,
}

impl TryFrom<RawSet> for IntegerSet {
    type Error = Error;

    fn try_from(raw: RawSet) -> Result<Self> {
        IntegerSet::new(raw.ambient, raw.elements)
    }
}

impl From<IntegerSet> for RawSet {
    fn from(set: IntegerSet) -> Self {
        RawSet {
            ambient: set.ambient,
            elements: set.elements,
        }
    }
}

impl IntegerSet {
    /// Validates that `elements` is strictly increasing and lies in `[1, ambient]`.
    pub fn new(ambient: i64, elements: Vec<i64>) -> Result<Self> {
        if ambient < 1 {
            return Err(Error::InvalidSet(format!(
                "ambient size must be positive, got {ambient}"
            )));
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet(format!(
                "elements must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let (Some(&lo), Some(&hi)) = (elements.first(), elements.last()) {
            if lo < 1 || hi > ambient {
                return Err(Error::InvalidSet(format!(
                    "elements must lie in [1, {ambient}], found range [{lo}, {hi}]"
                )));
            }
        }
        Ok(IntegerSet { ambient, elements })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(ambient: i64, mut elements: Vec<i64>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        Self::new(ambient, elements)
    }

    pub fn empty(ambient: i64) -> Result<Self> {
        Self::new(ambient, Vec::new())
    }

    /// The full interval `[1, ambient]`.
    pub fn interval(ambient: i64) -> Result<Self> {
        Self::new(ambient, (1..=ambient).collect())
    }

    /// Translates a set living in a window `(n, n + len]` down to `[1, len]`.
    pub fn from_window(offset: i64, len: i64, elements: &[i64]) -> Result<Self> {
        Self::from_unsorted(len, elements.iter().map(|&x| x - offset).collect())
    }

    pub fn ambient(&self) -> i64 {
        self.ambient
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `||S| - sqrt(N)|`, the distance from the extremal size.
    pub fn deviation(&self) -> f64 {
        (self.len() as f64 - (self.ambient as f64).sqrt()).abs()
    }

    /// Indicator of the set as a bit vector indexed by `x - 1`.
    fn bits(&self) -> Vec<u64> {
        let mut words = vec![0u64; (self.ambient as usize).div_ceil(64)];
        for &x in &self.elements {
            let i = (x - 1) as usize;
            words[i / 64] |= 1 << (i % 64);
        }
        words
    }
}

/// Outcome of a Sidon test. When the set is not Sidon, `violation` holds
/// `(s1, s2, s3, s4)` with `s1 - s2 == s3 - s4 != 0` and `{s1, s2} != {s3, s4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonCertificate {
    pub is_sidon: bool,
    pub violation: Option<(i64, i64, i64, i64)>,
}

impl SidonCertificate {
    fn ok() -> Self {
        SidonCertificate {
            is_sidon: true,
            violation: None,
        }
    }

    fn violated(q: (i64, i64, i64, i64)) -> Self {
        SidonCertificate {
            is_sidon: false,
            violation: Some(q),
        }
    }

    /// Checks that a reported violation really is one.
    pub fn is_consistent_with(&self, set: &IntegerSet) -> bool {
        match (self.is_sidon, self.violation) {
            (true, None) => true,
            (false, Some((a, b, c, d))) => {
                [a, b, c, d].iter().all(|&x| set.contains(x))
                    && a - b == c - d
                    && a != b
                    && (a, b) != (c, d)
                    && (a, b) != (d, c)
            }
            _ => false,
        }
    }
}

/// Largest element span checked with a bitmap of differences.
const DENSE_DIFFERENCE_SPAN: u64 = 1 << 28;

/// Pairwise difference test. Pairs `(a, b)` with `a > b` are visited with `a`
/// ascending, then `b` ascending; the first repeated difference is reported as
/// `(earlier pair, later pair)`. A bitmap screens sets of moderate span and
/// the hash pass only runs to produce a witness.
pub fn is_sidon(set: &IntegerSet) -> SidonCertificate {
    let xs = set.elements();
    let span = match (xs.first(), xs.last()) {
        (Some(&lo), Some(&hi)) => (hi - lo) as u64,
        _ => return SidonCertificate::ok(),
    };
    if span <= DENSE_DIFFERENCE_SPAN {
        let mut seen = vec![0u64; span as usize / 64 + 1];
        let fresh = xs.iter().enumerate().all(|(i, &a)| {
            xs[..i].iter().all(|&b| {
                let d = (a - b) as usize;
                let bit = 1u64 << (d % 64);
                let hit = seen[d / 64] & bit != 0;
                seen[d / 64] |= bit;
                !hit
            })
        });
        if fresh {
            return SidonCertificate::ok();
        }
    }
    let mut seen: HashMap<i64, (i64, i64)> = HashMap::with_capacity(xs.len() * xs.len() / 2);
    for (i, &a) in xs.iter().enumerate() {
        for &b in &xs[..i] {
            if let Some(&(c, d)) = seen.get(&(a - b)) {
                return SidonCertificate::violated((c, d, a, b));
            }
            seen.insert(a - b, (a, b));
        }
    }
    SidonCertificate::ok()
}

/// Dense autocorrelation `(1_S * 1_{-S})(h)` for `h` in `[-(N-1), N-1]`,
/// stored at index `h + N - 1`.
pub fn autocorrelation_profile(set: &IntegerSet) -> Vec<u64> {
    let n = set.ambient();
    let mut out = vec![0u64; (2 * n - 1) as usize];
    let xs = set.elements();
    for &a in xs {
        for &b in xs {
            out[(a - b + n - 1) as usize] += 1;
        }
    }
    out
}

/// Sidon test through the dense autocorrelation array; independent of the
/// hash-count path in [`is_sidon`].
pub fn is_sidon_dense(set: &IntegerSet) -> SidonCertificate {
    let n = set.ambient();
    let profile = autocorrelation_profile(set);
    let bad = profile
        .iter()
        .enumerate()
        .find(|&(i, &c)| i as i64 != n - 1 && c > 1)
        .map(|(i, _)| i as i64 - (n - 1));
    let Some(h) = bad else {
        return SidonCertificate::ok();
    };
    let h = h.abs();
    let pairs: Vec<(i64, i64)> = set
        .elements()
        .iter()
        .filter(|&&b| set.contains(b + h))
        .map(|&b| (b + h, b))
        .take(2)
        .collect();
    SidonCertificate::violated((pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1))
}

/// `|S ∩ (S - h)|`, the number of pairs `(a, b)` in `S²` with `a - b = h`.
pub fn autocorrelation(set: &IntegerSet, h: i64) -> u64 {
    let h = h.abs();
    if h >= set.ambient() {
        return 0;
    }
    if set.ambient() <= DENSE_AUTOCORRELATION_LIMIT {
        let bits = set.bits();
        let (word, shift) = ((h / 64) as usize, (h % 64) as u32);
        // bit x of the shifted vector is bit x + h of the original
        let shifted = |i: usize| -> u64 {
            let lo = bits.get(i + word).copied().unwrap_or(0);
            if shift == 0 {
                return lo;
            }
            let hi = bits.get(i + word + 1).copied().unwrap_or(0);
            (lo >> shift) | (hi << (64 - shift))
        };
        bits.iter()
            .enumerate()
            .map(|(i, &w)| (w & shifted(i)).count_ones() as u64)
            .sum()
    } else {
        set.elements()
            .iter()
            .filter(|&&b| set.contains(b + h))
            .count() as u64
    }
}

/// `{a - b : a, b in S, a != b}`.
pub fn difference_set(set: &IntegerSet) -> BTreeSet<i64> {
    let xs = set.elements();
    xs.iter()
        .flat_map(|&a| xs.iter().filter(move |&&b| b != a).map(move |&b| a - b))
        .collect()
}

/// Explicit upper bound on the size of a Sidon subset of any window of
/// length `n`: `sqrt(N) + H/sqrt(N) + N/H + 1` with `H = ceil(N^{3/4})`.
pub fn erdos_turan_cap(n: u64) -> f64 {
    assert!(n >= 1, "window length must be positive");
    let h = ceil_three_quarter_power(n);
    let (n, h) = (n as f64, h as f64);
    n.sqrt() + h / n.sqrt() + n / h + 1.0
}

/// Least integer `H` with `H^4 >= N^3`.
pub fn ceil_three_quarter_power(n: u64) -> u64 {
    let target = (n as u128).pow(3);
    let mut h = (n as f64).powf(0.75).ceil() as u128;
    while h > 1 && (h - 1).pow(4) >= target {
        h -= 1;
    }
    while h.pow(4) < target {
        h += 1;
    }
    h as u64
}

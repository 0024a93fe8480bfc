//! Solutions of `c₁x₁ + ⋯ + c_sx_s = 0` inside a set and its colour classes.
//!
//! Two counting backends: a brute-force scan that solves for the last
//! variable, and an exact integer convolution of the dilated weights. Both
//! count every tuple, including those with repeated coordinates.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::{Error, IntegerSet, Result};

pub const ZERO_SUM_MAX_LEN: usize = 24;
pub const DEFAULT_BRUTEFORCE_STEPS: u64 = 1_000_000_000;
/// Brute-force budget for the spot checks inside [`monochromatic_counts`].
pub const SPOT_CHECK_STEPS: u64 = 100_000;
/// Largest `r^|S|` accepted by [`exhaustive_min_max`].
pub const EXHAUSTIVE_MAX_COLORINGS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct LinearEquation {
    coefficients: Vec<i64>,
}

impl LinearEquation {
    pub fn new(coefficients: Vec<i64>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::InvalidEquation(format!(
                "need at least two variables, got {}",
                coefficients.len()
            )));
        }
        if coefficients.contains(&0) {
            return Err(Error::InvalidEquation(
                "coefficients must be nonzero".into(),
            ));
        }
        Ok(LinearEquation { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<i64>> for LinearEquation {
    type Error = Error;

    fn try_from(c: Vec<i64>) -> Result<Self> {
        Self::new(c)
    }
}

impl From<LinearEquation> for Vec<i64> {
    fn from(e: LinearEquation) -> Self {
        e.coefficients
    }
}

impl std::str::FromStr for LinearEquation {
    type Err = Error;

    /// Comma-separated coefficients, e.g. `1,1,1,1,-4`.
    fn from_str(s: &str) -> Result<Self> {
        let c = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(c)
    }
}

impl std::fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Lexicographically least nonempty `I` (0-based, increasing) with
/// `Σ_{i∈I} c_i = 0`.
pub fn zero_sum_subset(eq: &LinearEquation) -> Result<Option<Vec<usize>>> {
    let c = eq.coefficients();
    if c.len() > ZERO_SUM_MAX_LEN {
        return Err(Error::CapExceeded {
            what: "equation length",
            value: c.len() as u64,
            cap: ZERO_SUM_MAX_LEN as u64,
        });
    }
    // Preorder DFS over increasing index sequences visits them in
    // lexicographic order.
    fn dfs(c: &[i64], from: usize, sum: i64, path: &mut Vec<usize>) -> bool {
        for i in from..c.len() {
            path.push(i);
            let s = sum + c[i];
            if s == 0 || dfs(c, i + 1, s, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = Vec::new();
    Ok(dfs(c, 0, 0, &mut path).then_some(path))
}

/// Number of tuples `(x₁..x_s)`, `x_i ∈ sets[i]`, with `Σ c_i x_i = 0`.
///
/// Costs `Π_{i<s} |sets[i]|` steps; fails if that exceeds `max_steps`.
pub fn count_solutions_bruteforce(
    eq: &LinearEquation,
    sets: &[&[i64]],
    max_steps: u64,
) -> Result<u64> {
    count_bruteforce_impl(eq, sets, max_steps, false)
}

/// As [`count_solutions_bruteforce`], restricted to pairwise distinct
/// coordinates.
pub fn count_distinct_solutions_bruteforce(
    eq: &LinearEquation,
    sets: &[&[i64]],
    max_steps: u64,
) -> Result<u64> {
    count_bruteforce_impl(eq, sets, max_steps, true)
}

fn count_bruteforce_impl(
    eq: &LinearEquation,
    sets: &[&[i64]],
    max_steps: u64,
    distinct: bool,
) -> Result<u64> {
    let c = eq.coefficients();
    if sets.len() != c.len() {
        return Err(Error::InvalidEquation(format!(
            "{} sets for {} variables",
            sets.len(),
            c.len()
        )));
    }
    let s = c.len();
    let steps = sets[..s - 1]
        .iter()
        .fold(1u128, |acc, set| acc.saturating_mul(set.len() as u128));
    if steps > max_steps as u128 {
        return Err(Error::CapExceeded {
            what: "brute-force steps",
            value: u64::try_from(steps).unwrap_or(u64::MAX),
            cap: max_steps,
        });
    }
    let last: HashSet<i64> = sets[s - 1].iter().copied().collect();
    let mut chosen = Vec::with_capacity(s);
    let mut total = 0u64;
    walk(c, sets, &last, 0, 0, &mut chosen, distinct, &mut total);
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn walk(
    c: &[i64],
    sets: &[&[i64]],
    last: &HashSet<i64>,
    depth: usize,
    partial: i128,
    chosen: &mut Vec<i64>,
    distinct: bool,
    total: &mut u64,
) {
    let s = c.len();
    if depth == s - 1 {
        let cl = c[s - 1] as i128;
        if partial % cl == 0 {
            let x = -partial / cl;
            if let Ok(x) = i64::try_from(x) {
                if last.contains(&x) && !(distinct && chosen.contains(&x)) {
                    *total += 1;
                }
            }
        }
        return;
    }
    for &x in sets[depth] {
        if distinct && chosen.contains(&x) {
            continue;
        }
        chosen.push(x);
        walk(
            c,
            sets,
            last,
            depth + 1,
            partial + c[depth] as i128 * x as i128,
            chosen,
            distinct,
            total,
        );
        chosen.pop();
    }
}

/// Integer weights on `offset, offset + 1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntWeights {
    pub offset: i64,
    pub values: Vec<i64>,
}

impl IntWeights {
    pub fn new(offset: i64, values: Vec<i64>) -> Self {
        IntWeights { offset, values }
    }

    pub fn indicator(set: &IntegerSet) -> Self {
        Self::of_elements(set.elements())
    }

    /// Indicator of a sorted list of distinct integers.
    pub fn of_elements(xs: &[i64]) -> Self {
        let Some((&lo, &hi)) = xs.first().zip(xs.last()) else {
            return IntWeights::new(0, Vec::new());
        };
        let mut values = vec![0; (hi - lo + 1) as usize];
        for &x in xs {
            values[(x - lo) as usize] = 1;
        }
        IntWeights::new(lo, values)
    }

    /// Nonzero entries of the dilation `x -> c·x`.
    fn dilated(&self, c: i64) -> Vec<(i64, i64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .map(|(i, &w)| (c * (self.offset + i as i64), w))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvolutionLimits {
    /// Largest dense accumulator, in entries.
    pub max_entries: usize,
    /// Accumulator length × factor support above which an FFT product is
    /// tried first.
    pub fft_threshold: usize,
}

impl Default for ConvolutionLimits {
    fn default() -> Self {
        ConvolutionLimits {
            max_entries: 1 << 24,
            fft_threshold: 1 << 24,
        }
    }
}

/// `Σ_{Σc_ix_i=0} h₁(x₁)⋯h_s(x_s)` via exact convolution of the dilated
/// weights.
pub fn count_solutions_convolution(eq: &LinearEquation, weights: &[IntWeights]) -> Result<i128> {
    count_solutions_convolution_with(eq, weights, &ConvolutionLimits::default())
}

pub fn count_solutions_convolution_with(
    eq: &LinearEquation,
    weights: &[IntWeights],
    limits: &ConvolutionLimits,
) -> Result<i128> {
    let c = eq.coefficients();
    if weights.len() != c.len() {
        return Err(Error::InvalidEquation(format!(
            "{} weight vectors for {} variables",
            weights.len(),
            c.len()
        )));
    }
    let factors: Vec<Vec<(i64, i64)>> = weights
        .iter()
        .zip(c)
        .map(|(w, &ci)| w.dilated(ci))
        .collect();
    if factors.iter().any(Vec::is_empty) {
        return Ok(0);
    }
    let span = |f: &[(i64, i64)]| {
        let lo = f.iter().map(|p| p.0).min().unwrap();
        let hi = f.iter().map(|p| p.0).max().unwrap();
        (lo, hi)
    };
    let s = factors.len();
    let entries: u128 = factors[..s - 1]
        .iter()
        .map(|f| {
            let (lo, hi) = span(f);
            (hi - lo) as u128
        })
        .sum::<u128>()
        + 1;
    if entries > limits.max_entries as u128 {
        return Err(Error::CapExceeded {
            what: "convolution range",
            value: u64::try_from(entries).unwrap_or(u64::MAX),
            cap: limits.max_entries as u64,
        });
    }

    let (mut lo, hi0) = span(&factors[0]);
    let mut acc = vec![0i128; (hi0 - lo + 1) as usize];
    for &(p, w) in &factors[0] {
        acc[(p - lo) as usize] += w as i128;
    }
    for f in &factors[1..s - 1] {
        let (flo, fhi) = span(f);
        let len = acc.len() + (fhi - flo) as usize;
        let fast = if acc.len().saturating_mul(f.len()) > limits.fft_threshold {
            let mut dense = vec![0i64; (fhi - flo + 1) as usize];
            for &(p, w) in f {
                dense[(p - flo) as usize] = w;
            }
            multiply_fft(&acc, &dense)
        } else {
            None
        };
        acc = match fast {
            Some(v) => v,
            None => {
                let mut next = vec![0i128; len];
                for &(p, w) in f {
                    let shift = (p - flo) as usize;
                    for (k, &a) in acc.iter().enumerate() {
                        if a != 0 {
                            let t = a.checked_mul(w as i128).ok_or(Error::Overflow)?;
                            let slot = &mut next[k + shift];
                            *slot = slot.checked_add(t).ok_or(Error::Overflow)?;
                        }
                    }
                }
                next
            }
        };
        lo += flo;
    }

    let mut total = 0i128;
    for &(p, w) in &factors[s - 1] {
        let idx = -p - lo;
        if idx >= 0 && (idx as usize) < acc.len() {
            let t = acc[idx as usize]
                .checked_mul(w as i128)
                .ok_or(Error::Overflow)?;
            total = total.checked_add(t).ok_or(Error::Overflow)?;
        }
    }
    Ok(total)
}

const CHECK_PRIME: u128 = (1 << 61) - 1;
const CHECK_POINTS: [u128; 2] = [0x0123_4567_89ab_cdef, 0x0fed_cba9_8765_4321];

fn residue(x: i128) -> u128 {
    x.rem_euclid(CHECK_PRIME as i128) as u128
}

fn eval_mod(poly: impl Iterator<Item = i128>, r: u128) -> u128 {
    let coeffs: Vec<i128> = poly.collect();
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * r + residue(c)) % CHECK_PRIME)
}

/// Floating-point product of two integer sequences, rounded and then
/// verified exactly: total mass and evaluation at fixed points modulo a
/// Mersenne prime must agree. `None` when precision is insufficient or a
/// check fails.
fn multiply_fft(a: &[i128], b: &[i64]) -> Option<Vec<i128>> {
    let max_a = a.iter().map(|x| x.unsigned_abs()).max()? as f64;
    let max_b = b.iter().map(|x| x.unsigned_abs()).max()? as f64;
    let len = a.len() + b.len() - 1;
    if max_a * max_b * (a.len().min(b.len()) as f64) > 2f64.powi(44) {
        return None;
    }
    let size = len.next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let mut fa: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    fa.resize(size, Complex64::new(0.0, 0.0));
    let mut fb: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect();
    fb.resize(size, Complex64::new(0.0, 0.0));
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    inv.process(&mut fa);
    let scale = size as f64;
    let mut out = Vec::with_capacity(len);
    for z in &fa[..len] {
        let v = z.re / scale;
        let r = v.round();
        if (v - r).abs() > 0.25 {
            return None;
        }
        out.push(r as i128);
    }
    let mass = |xs: &mut dyn Iterator<Item = i128>| xs.sum::<i128>();
    if mass(&mut out.iter().copied())
        != mass(&mut a.iter().copied()) * mass(&mut b.iter().map(|&x| x as i128))
    {
        return None;
    }
    for r in CHECK_POINTS {
        let lhs = eval_mod(out.iter().copied(), r);
        let rhs = eval_mod(a.iter().copied(), r) * eval_mod(b.iter().map(|&x| x as i128), r)
            % CHECK_PRIME;
        if lhs != rhs {
            return None;
        }
    }
    Some(out)
}

/// A total assignment of the elements of a set (in increasing order) to
/// classes `0..classes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    classes: usize,
    assignment: Vec<usize>,
}

impl Coloring {
    pub fn new(classes: usize, assignment: Vec<usize>) -> Result<Self> {
        if classes == 0 {
            return Err(Error::OutOfRange("need at least one colour".into()));
        }
        if let Some(&bad) = assignment.iter().find(|&&c| c >= classes) {
            return Err(Error::OutOfRange(format!("colour {bad} >= {classes}")));
        }
        Ok(Coloring {
            classes,
            assignment,
        })
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Elements of each class, in increasing order.
    pub fn class_members(&self, set: &IntegerSet) -> Vec<Vec<i64>> {
        assert_eq!(
            set.len(),
            self.assignment.len(),
            "colouring does not match set"
        );
        let mut out = vec![Vec::new(); self.classes];
        for (&x, &c) in set.elements().iter().zip(&self.assignment) {
            out[c].push(x);
        }
        out
    }
}

fn class_count(eq: &LinearEquation, members: &[i64]) -> Result<u64> {
    let w = IntWeights::of_elements(members);
    let count = count_solutions_convolution(eq, &vec![w; eq.len()])?;
    u64::try_from(count).map_err(|_| Error::Overflow)
}

/// Solutions with every coordinate in `S`.
pub fn total_count(eq: &LinearEquation, set: &IntegerSet) -> Result<u64> {
    class_count(eq, set.elements())
}

/// Per-class solution counts. Computed by convolution; every class small
/// enough for [`SPOT_CHECK_STEPS`] is recounted by brute force.
pub fn monochromatic_counts(
    eq: &LinearEquation,
    set: &IntegerSet,
    col: &Coloring,
) -> Result<Vec<u64>> {
    col.class_members(set)
        .iter()
        .map(|members| {
            let count = class_count(eq, members)?;
            let sets = vec![members.as_slice(); eq.len()];
            match count_solutions_bruteforce(eq, &sets, SPOT_CHECK_STEPS) {
                Ok(b) if b != count => Err(Error::BackendMismatch {
                    convolution: count as i128,
                    bruteforce: b,
                }),
                Ok(_) | Err(Error::CapExceeded { .. }) => Ok(count),
                Err(e) => Err(e),
            }
        })
        .collect()
}

fn max_class_count(eq: &LinearEquation, set: &IntegerSet, col: &Coloring) -> Result<u64> {
    col.class_members(set)
        .iter()
        .map(|m| class_count(eq, m))
        .try_fold(0, |acc, c| c.map(|c| acc.max(c)))
}

/// I.i.d. uniform colours from ChaCha8 seeded with `seed`, drawn in
/// increasing element order.
pub fn random_coloring(set: &IntegerSet, r: usize, seed: u64) -> Result<Coloring> {
    if r == 0 {
        return Err(Error::OutOfRange("need at least one colour".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assignment = (0..set.len()).map(|_| rng.gen_range(0..r)).collect();
    Coloring::new(r, assignment)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub coloring: Coloring,
    /// Largest monochromatic count over the classes of `coloring`.
    pub objective: u64,
}

/// Local search over single-element recolourings, started from
/// `random_coloring(set, r, seed)`.
///
/// Each round applies the best strictly improving flip; without one it
/// applies a random flip to leave the local minimum. Returns the best
/// colouring seen, so `effort = 0` returns the start unchanged.
pub fn adversarial_coloring(
    eq: &LinearEquation,
    set: &IntegerSet,
    r: usize,
    effort: usize,
    seed: u64,
) -> Result<SearchResult> {
    let start = random_coloring(set, r, seed)?;
    let mut assignment = start.assignment.clone();
    let mut members = start.class_members(set);
    let mut counts = members
        .iter()
        .map(|m| class_count(eq, m))
        .collect::<Result<Vec<_>>>()?;
    let mut current = counts.iter().copied().max().unwrap_or(0);
    let mut best = SearchResult {
        coloring: start,
        objective: current,
    };
    if r == 1 || set.is_empty() {
        return Ok(best);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, u64::MAX));
    let xs = set.elements();

    let recolored = |members: &[Vec<i64>], x: i64, from: usize, to: usize| {
        let without: Vec<i64> = members[from].iter().copied().filter(|&y| y != x).collect();
        let mut with = members[to].clone();
        let at = with.partition_point(|&y| y < x);
        with.insert(at, x);
        (without, with)
    };

    for _ in 0..effort {
        if best.objective == 0 {
            break;
        }
        let mut best_move: Option<(u64, usize, usize, u64, u64)> = None;
        for (i, &x) in xs.iter().enumerate() {
            let from = assignment[i];
            for to in (0..r).filter(|&c| c != from) {
                let (without, with) = recolored(&members, x, from, to);
                let (cf, ct) = (class_count(eq, &without)?, class_count(eq, &with)?);
                let others = (0..r)
                    .filter(|&c| c != from && c != to)
                    .map(|c| counts[c])
                    .max()
                    .unwrap_or(0);
                let value = others.max(cf).max(ct);
                if best_move.is_none_or(|m| value < m.0) {
                    best_move = Some((value, i, to, cf, ct));
                }
            }
        }
        let (i, to, cf, ct) = match best_move {
            Some((value, i, to, cf, ct)) if value < current => (i, to, cf, ct),
            _ => {
                let i = rng.gen_range(0..xs.len());
                let from = assignment[i];
                let to = (from + rng.gen_range(1..r)) % r;
                let (without, with) = recolored(&members, xs[i], from, to);
                (i, to, class_count(eq, &without)?, class_count(eq, &with)?)
            }
        };
        let from = assignment[i];
        let (without, with) = recolored(&members, xs[i], from, to);
        members[from] = without;
        members[to] = with;
        counts[from] = cf;
        counts[to] = ct;
        assignment[i] = to;
        current = counts.iter().copied().max().unwrap_or(0);
        if current < best.objective {
            best = SearchResult {
                coloring: Coloring::new(r, assignment.clone())?,
                objective: current,
            };
        }
    }
    Ok(best)
}

/// Exact `min over colourings of max over classes`, by enumeration. The
/// first element is pinned to colour 0, which loses nothing since
/// permuting colours preserves the objective.
pub fn exhaustive_min_max(eq: &LinearEquation, set: &IntegerSet, r: usize) -> Result<SearchResult> {
    if r == 0 {
        return Err(Error::OutOfRange("need at least one colour".into()));
    }
    let n = set.len() as u32;
    let total = (r as u128).checked_pow(n).unwrap_or(u128::MAX);
    if total > EXHAUSTIVE_MAX_COLORINGS as u128 {
        return Err(Error::CapExceeded {
            what: "colourings",
            value: u64::try_from(total).unwrap_or(u64::MAX),
            cap: EXHAUSTIVE_MAX_COLORINGS,
        });
    }
    let free = n.saturating_sub(1);
    let decode = |mut code: u64| -> Vec<usize> {
        let mut a = vec![0usize; n as usize];
        for slot in a.iter_mut().skip(1) {
            *slot = (code % r as u64) as usize;
            code /= r as u64;
        }
        a
    };
    let (objective, code) = (0..(r as u64).pow(free))
        .into_par_iter()
        .map(|code| {
            let col = Coloring::new(r, decode(code))?;
            Ok::<_, Error>((max_class_count(eq, set, &col)?, code))
        })
        .try_reduce(|| (u64::MAX, u64::MAX), |a, b| Ok(a.min(b)))?;
    Ok(SearchResult {
        coloring: Coloring::new(r, decode(code))?,
        objective,
    })
}

/// SplitMix64 finaliser applied to `base + (index + 1)·φ`, where φ is the
/// 64-bit golden-ratio increment.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub at_least_five_variables: bool,
    /// 0-based indices of the lexicographically least zero-sum subset.
    pub zero_sum_indices: Option<Vec<usize>>,
    pub in_hypothesis: bool,
}

impl HypothesisCheck {
    pub fn of(eq: &LinearEquation) -> Result<Self> {
        let zero_sum_indices = zero_sum_subset(eq)?;
        let at_least_five_variables = eq.len() >= 5;
        Ok(HypothesisCheck {
            at_least_five_variables,
            in_hypothesis: at_least_five_variables && zero_sum_indices.is_some(),
            zero_sum_indices,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConfig {
    pub r: usize,
    /// Random colourings drawn.
    pub trials: usize,
    pub seed: u64,
    /// Independent adversarial searches, each from its own random start.
    pub restarts: usize,
    /// Local-search rounds per adversarial search.
    pub effort: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    /// Largest monochromatic count over the classes.
    pub max_count: u64,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub schema_version: u32,
    pub equation: LinearEquation,
    #[serde(rename = "N")]
    pub n: i64,
    pub set_id: String,
    pub set_size: usize,
    pub r: usize,
    pub trials: usize,
    pub seed: u64,
    pub restarts: usize,
    pub effort: usize,
    pub hypothesis: HypothesisCheck,
    pub total_count: u64,
    /// Solutions with pairwise distinct coordinates; `None` when the brute
    /// force needed for it exceeds the default step budget.
    pub distinct_coordinate_count: Option<u64>,
    pub min_max_count: u64,
    /// `|S|^s / N`.
    pub benchmark: f64,
    /// `min_max_count / benchmark`; `None` for an empty set.
    pub ratio: Option<f64>,
    pub per_trial: Vec<TrialRecord>,
    pub adversarial: Vec<TrialRecord>,
}

impl PartitionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Random and adversarial colourings of `S`. Random trial `t` uses seed
/// `derive_seed(cfg.seed, 2t)`, adversarial restart `k` uses
/// `derive_seed(cfg.seed, 2k + 1)`. Work runs in parallel; records are kept
/// in index order.
pub fn partition_experiment(
    eq: &LinearEquation,
    set: &IntegerSet,
    set_id: &str,
    cfg: &PartitionConfig,
) -> Result<PartitionReport> {
    if cfg.r == 0 {
        return Err(Error::OutOfRange("need at least one colour".into()));
    }
    let hypothesis = HypothesisCheck::of(eq)?;
    let total = total_count(eq, set)?;
    let sets = vec![set.elements(); eq.len()];
    let distinct = match count_distinct_solutions_bruteforce(eq, &sets, DEFAULT_BRUTEFORCE_STEPS) {
        Ok(d) => Some(d),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let per_trial = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(cfg.seed, 2 * t as u64);
            let col = random_coloring(set, cfg.r, seed)?;
            Ok(TrialRecord {
                index: t,
                seed,
                max_count: max_class_count(eq, set, &col)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let adversarial = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let seed = derive_seed(cfg.seed, 2 * k as u64 + 1);
            let found = adversarial_coloring(eq, set, cfg.r, cfg.effort, seed)?;
            Ok(TrialRecord {
                index: k,
                seed,
                max_count: found.objective,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_max_count = per_trial
        .iter()
        .chain(&adversarial)
        .map(|t| t.max_count)
        .min()
        .unwrap_or(total);
    let benchmark = (set.len() as f64).powi(eq.len() as i32) / set.ambient() as f64;
    Ok(PartitionReport {
        schema_version: REPORT_SCHEMA_VERSION,
        equation: eq.clone(),
        n: set.ambient(),
        set_id: set_id.to_string(),
        set_size: set.len(),
        r: cfg.r,
        trials: cfg.trials,
        seed: cfg.seed,
        restarts: cfg.restarts,
        effort: cfg.effort,
        hypothesis,
        total_count: total,
        distinct_coordinate_count: distinct,
        min_max_count,
        benchmark,
        ratio: (benchmark > 0.0).then(|| min_max_count as f64 / benchmark),
        per_trial,
        adversarial,
    })
}

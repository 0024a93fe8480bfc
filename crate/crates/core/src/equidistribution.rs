//! Discrepancy of a set against intervals, residue classes, Bohr sets and
//! Lipschitz functions of `αx` on the torus.
//!
//! Counting discrepancies come in an exact rational form (`*_exact`) and an
//! `f64` convenience wrapper. Bohr membership is decided with a fixed tie
//! tolerance [`TIE_TOLERANCE`]; rational frequencies avoid float error in
//! `‖αx‖` altogether.

use num_rational::Ratio;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::{Error, IntegerSet, Result};

/// Slack granted to `max_i ‖α_i x‖ <= ρ`.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Default dimension cap for Bohr sets and grid functions.
pub const DEFAULT_MAX_DIM: usize = 3;

/// Inclusive integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntInterval { lo, hi }
    }

    pub fn len(&self) -> i64 {
        (self.hi - self.lo + 1).max(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn count_in(set: &IntegerSet, i: &IntInterval) -> i64 {
    let xs = set.elements();
    let a = xs.partition_point(|&x| x < i.lo);
    let b = xs.partition_point(|&x| x <= i.hi);
    b.saturating_sub(a) as i64
}

/// `|S ∩ I| - |I||S|/N`, exactly.
pub fn interval_discrepancy_exact(set: &IntegerSet, i: &IntInterval) -> Result<Ratio<i64>> {
    let n = set.ambient();
    if !i.is_empty() && (i.lo < 1 || i.hi > n) {
        return Err(Error::OutOfRange(format!(
            "interval [{}, {}] not inside [1, {n}]",
            i.lo, i.hi
        )));
    }
    let k = set.len() as i64;
    Ok(Ratio::new(count_in(set, i) * n - i.len() * k, n))
}

pub fn interval_discrepancy(set: &IntegerSet, i: &IntInterval) -> Result<f64> {
    interval_discrepancy_exact(set, i).map(to_f64)
}

fn to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `(N^{1/4} + |I|^{1/2} N^{-1/8})(1 + (1 - |S|/N^{1/2})₊^{1/2} N^{1/8})`.
pub fn cilleruelo_rhs(n: u64, size: usize, interval_len: u64) -> f64 {
    let nf = n as f64;
    let first = nf.powf(0.25) + (interval_len as f64).sqrt() * nf.powf(-0.125);
    let deficit = (1.0 - size as f64 / nf.sqrt()).max(0.0);
    first * (1.0 + deficit.sqrt() * nf.powf(0.125))
}

/// `||S|/N^{1/2} - 1| + N^{-1/6}`, the quantity driving every displayed
/// equidistribution error term.
pub fn uniformity_deficit(n: u64, size: usize) -> f64 {
    let nf = n as f64;
    (size as f64 / nf.sqrt() - 1.0).abs() + nf.powf(-1.0 / 6.0)
}

/// Error term for residue classes and progressions (the `N^ε` factor dropped).
pub fn residue_rhs(n: u64, size: usize) -> f64 {
    uniformity_deficit(n, size).sqrt()
}

/// Error term for regular Bohr sets: `dρ^{-1}(deficit)^{1/(14d)}`.
pub fn bohr_rhs(n: u64, size: usize, d: usize, rho: f64) -> f64 {
    d as f64 / rho * uniformity_deficit(n, size).powf(1.0 / (14.0 * d as f64))
}

/// Error term for smooth Bohr neighbourhoods: `K^{2/3}(deficit)^{1/(8d)}`.
pub fn lipschitz_rhs(n: u64, size: usize, k: f64, d: usize) -> f64 {
    k.powf(2.0 / 3.0) * uniformity_deficit(n, size).powf(1.0 / (8.0 * d as f64))
}

/// `E_{x∈S} 1[x ≡ a mod q] - 1/q`, exactly.
pub fn residue_discrepancy_exact(set: &IntegerSet, q: u64, a: i64) -> Result<Ratio<i64>> {
    if set.is_empty() {
        return Err(Error::Empty("set"));
    }
    if q == 0 {
        return Err(Error::OutOfRange("modulus must be >= 1".into()));
    }
    let q = q as i64;
    let hits = set
        .elements()
        .iter()
        .filter(|&&x| (x - a).rem_euclid(q) == 0)
        .count() as i64;
    Ok(Ratio::new(hits, set.len() as i64) - Ratio::new(1, q))
}

pub fn residue_discrepancy(set: &IntegerSet, q: u64, a: i64) -> Result<f64> {
    residue_discrepancy_exact(set, q, a).map(to_f64)
}

/// A frequency on the torus, either a double or an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Frequency {
    Real(f64),
    Rational { num: i64, den: u64 },
}

impl Frequency {
    /// `‖α x‖_𝕋`.
    pub fn torus_dist(&self, x: i64) -> f64 {
        match *self {
            Frequency::Real(a) => {
                let t = (a * x as f64).rem_euclid(1.0);
                t.min(1.0 - t)
            }
            Frequency::Rational { num, den } => {
                let r = (num as i128 * x as i128).rem_euclid(den as i128) as u64;
                r.min(den - r) as f64 / den as f64
            }
        }
    }

    /// Fractional part of `α x` in `[0, 1)`.
    pub fn phase(&self, x: i64) -> f64 {
        match *self {
            Frequency::Real(a) => (a * x as f64).rem_euclid(1.0),
            Frequency::Rational { num, den } => {
                (num as i128 * x as i128).rem_euclid(den as i128) as f64 / den as f64
            }
        }
    }
}

/// `B(α, ρ) = {x ∈ [N] : max_i ‖α_i x‖ <= ρ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BohrSpec {
    pub alpha: Vec<Frequency>,
    pub rho: f64,
}

impl BohrSpec {
    pub fn new(alpha: Vec<Frequency>, rho: f64) -> Result<Self> {
        Self::with_max_dim(alpha, rho, DEFAULT_MAX_DIM)
    }

    pub fn with_max_dim(alpha: Vec<Frequency>, rho: f64, max_dim: usize) -> Result<Self> {
        if alpha.is_empty() || alpha.len() > max_dim {
            return Err(Error::OutOfRange(format!(
                "Bohr dimension {} outside [1, {max_dim}]",
                alpha.len()
            )));
        }
        if !(rho > 0.0 && rho <= 0.5) {
            return Err(Error::OutOfRange(format!("radius {rho} outside (0, 1/2]")));
        }
        for a in &alpha {
            match *a {
                Frequency::Real(v) if !(0.0..1.0).contains(&v) => {
                    return Err(Error::OutOfRange(format!("frequency {v} outside [0, 1)")))
                }
                Frequency::Rational { den: 0, .. } => {
                    return Err(Error::OutOfRange("zero denominator".into()))
                }
                _ => {}
            }
        }
        Ok(BohrSpec { alpha, rho })
    }

    pub fn reals(alpha: &[f64], rho: f64) -> Result<Self> {
        Self::new(alpha.iter().map(|&a| Frequency::Real(a)).collect(), rho)
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn max_dist(&self, x: i64) -> f64 {
        self.alpha
            .iter()
            .map(|a| a.torus_dist(x))
            .fold(0.0, f64::max)
    }

    /// Membership in `B(α, scale·ρ)`.
    pub fn contains_scaled(&self, x: i64, scale: f64) -> bool {
        self.max_dist(x) <= scale * self.rho + TIE_TOLERANCE
    }

    pub fn contains(&self, x: i64) -> bool {
        self.contains_scaled(x, 1.0)
    }
}

pub fn bohr_members(b: &BohrSpec, n: i64) -> Result<IntegerSet> {
    IntegerSet::new(n, (1..=n).filter(|&x| b.contains(x)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub regular: bool,
    /// The κ attaining `worst_ratio_excess` (approached from the left when
    /// the worst case is a left limit).
    pub worst_kappa: f64,
    /// `max_κ (||B((1+κ)ρ)|/|B(ρ)| - 1| - 100d|κ|)`; regular iff `<= 0`.
    pub worst_ratio_excess: f64,
}

/// Exact regularity test.
///
/// With `t_x = (max_i ‖α_i x‖ - tol)/ρ - 1`, a point lies in `B((1+κ)ρ)` iff
/// `t_x <= κ`, so `κ -> |B((1+κ)ρ)|` is a right-continuous step function
/// jumping at the `t_x`. On `κ >= 0` the worst κ of each step is its left
/// end; on `κ < 0` it is the left limit at the step's right end. Evaluating
/// both the value and the left limit at every jump inside the window, at 0
/// and at the window ends covers all cases.
pub fn bohr_regularity(b: &BohrSpec, n: i64) -> Result<RegularityReport> {
    let d = b.dim() as f64;
    let window = 1.0 / (100.0 * d);
    let mut t: Vec<f64> = (1..=n)
        .map(|x| (b.max_dist(x) - TIE_TOLERANCE) / b.rho - 1.0)
        .collect();
    t.sort_by(f64::total_cmp);
    let at_most = |k: f64| t.partition_point(|&v| v <= k) as f64;
    let below = |k: f64| t.partition_point(|&v| v < k) as f64;
    let base = at_most(0.0);
    if base == 0.0 {
        return Err(Error::Empty("Bohr set"));
    }

    let mut candidates: Vec<f64> = t
        .iter()
        .copied()
        .filter(|&v| v.abs() <= window)
        .chain([-window, 0.0, window])
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let mut worst = (f64::NEG_INFINITY, 0.0);
    for &k in &candidates {
        let allowance = 100.0 * d * k.abs();
        let mut consider = |count: f64| {
            let excess = (count / base - 1.0).abs() - allowance;
            if excess > worst.0 {
                worst = (excess, k);
            }
        };
        consider(at_most(k));
        if k > -window {
            consider(below(k));
        }
    }
    Ok(RegularityReport {
        regular: worst.0 <= TIE_TOLERANCE,
        worst_kappa: worst.1,
        worst_ratio_excess: worst.0,
    })
}

/// `E_{x∈S} 1_B(x) - E_{x∈[N]} 1_B(x)`.
pub fn bohr_discrepancy(set: &IntegerSet, b: &BohrSpec) -> Result<f64> {
    if set.is_empty() {
        return Err(Error::Empty("set"));
    }
    let n = set.ambient();
    let in_set = set.elements().iter().filter(|&&x| b.contains(x)).count();
    let in_interval = (1..=n).filter(|&x| b.contains(x)).count();
    Ok(in_set as f64 / set.len() as f64 - in_interval as f64 / n as f64)
}

/// Samples of `F : 𝕋^d -> [0, 1]` on the uniform grid `(i₀/G, …, i_{d-1}/G)`,
/// stored row-major (axis 0 slowest), with a declared Lipschitz constant for
/// the max-metric.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzGridFunction {
    d: usize,
    g: usize,
    samples: Vec<f64>,
    k: f64,
}

/// Slack on the `[0, 1]` range and on the adjacent-sample Lipschitz check.
pub const SAMPLE_TOLERANCE: f64 = 1e-9;

impl LipschitzGridFunction {
    pub fn new(d: usize, g: usize, samples: Vec<f64>, k: f64) -> Result<Self> {
        if d == 0 || d > DEFAULT_MAX_DIM {
            return Err(Error::InvalidFunction(format!(
                "dimension {d} outside [1, {DEFAULT_MAX_DIM}]"
            )));
        }
        if g < 2 || samples.len() != g.pow(d as u32) {
            return Err(Error::InvalidFunction(format!(
                "expected {g}^{d} samples, got {}",
                samples.len()
            )));
        }
        if !(k >= 1.0 && k.is_finite()) {
            return Err(Error::InvalidFunction(format!(
                "Lipschitz constant {k} < 1"
            )));
        }
        let f = LipschitzGridFunction { d, g, samples, k };
        if let Some(v) = f.range_violation() {
            return Err(Error::InvalidFunction(format!("sample {v} outside [0, 1]")));
        }
        let step = k / g as f64 + SAMPLE_TOLERANCE;
        let jump = f.max_adjacent_jump();
        if jump > step {
            return Err(Error::InvalidFunction(format!(
                "adjacent samples differ by {jump} > K/G = {}",
                k / g as f64
            )));
        }
        Ok(f)
    }

    /// Builds samples by evaluating `f` at each grid point.
    pub fn from_fn(d: usize, g: usize, k: f64, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let total = g.pow(d as u32);
        let mut point = vec![0.0; d];
        let samples = (0..total)
            .map(|flat| {
                let mut rest = flat;
                for axis in (0..d).rev() {
                    point[axis] = (rest % g) as f64 / g as f64;
                    rest /= g;
                }
                f(&point)
            })
            .collect();
        Self::new(d, g, samples, k)
    }

    pub fn constant(d: usize, g: usize, c: f64) -> Result<Self> {
        Self::from_fn(d, g, 1.0, |_| c)
    }

    /// `Π_i (1 - slope·‖α_i‖)₊`, Lipschitz with constant `d·slope`.
    pub fn tent(d: usize, g: usize, slope: f64) -> Result<Self> {
        let k = (d as f64 * slope).max(1.0);
        Self::from_fn(d, g, k, |p| {
            p.iter()
                .map(|&a| (1.0 - slope * a.min(1.0 - a)).max(0.0))
                .product()
        })
    }

    /// `Π_i F₁(α_i)` with `F₁ = 1` on `‖α‖ <= ρ`, `0` beyond `ρ + ε`, linear
    /// in between; Lipschitz with constant `d/ε`.
    pub fn bohr_tent(d: usize, g: usize, rho: f64, eps: f64) -> Result<Self> {
        let k = (d as f64 / eps).max(1.0);
        Self::from_fn(d, g, k, |p| {
            p.iter()
                .map(|&a| {
                    let dist = a.min(1.0 - a);
                    ((rho + eps - dist) / eps).clamp(0.0, 1.0)
                })
                .product()
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn resolution(&self) -> usize {
        self.g
    }

    pub fn lipschitz(&self) -> f64 {
        self.k
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// First sample outside `[0, 1]` beyond [`SAMPLE_TOLERANCE`].
    pub fn range_violation(&self) -> Option<f64> {
        self.samples
            .iter()
            .copied()
            .find(|&v| !(-SAMPLE_TOLERANCE..=1.0 + SAMPLE_TOLERANCE).contains(&v) || v.is_nan())
    }

    fn max_adjacent_jump(&self) -> f64 {
        let (d, g) = (self.d, self.g);
        let mut worst: f64 = 0.0;
        for axis in 0..d {
            let stride = g.pow((d - 1 - axis) as u32);
            for (flat, &v) in self.samples.iter().enumerate() {
                let i = (flat / stride) % g;
                let next = if i + 1 == g {
                    flat + stride - g * stride
                } else {
                    flat + stride
                };
                worst = worst.max((v - self.samples[next]).abs());
            }
        }
        worst
    }

    fn index_of(&self, point: &[f64]) -> usize {
        point.iter().fold(0, |acc, &p| {
            let i = (p.rem_euclid(1.0) * self.g as f64).round() as usize % self.g;
            acc * self.g + i
        })
    }

    /// Value at the grid point nearest to `point`; off by at most `K/G`.
    pub fn eval_nearest(&self, point: &[f64]) -> f64 {
        self.samples[self.index_of(point)]
    }

    /// `max |F - G|` over the shared grid.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.d, self.g), (other.d, other.g), "grids differ");
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// In-place FFT along every axis of a `g^d` row-major array.
fn fft_all_axes(buf: &mut [Complex64], d: usize, g: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(g)
    } else {
        planner.plan_fft_forward(g)
    };
    let mut line = vec![Complex64::new(0.0, 0.0); g];
    for axis in 0..d {
        let stride = g.pow((d - 1 - axis) as u32);
        let block = stride * g;
        for start in (0..buf.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (i, z) in line.iter_mut().enumerate() {
                    *z = buf[base + i * stride];
                }
                fft.process(&mut line);
                for (i, z) in line.iter().enumerate() {
                    buf[base + i * stride] = *z;
                }
            }
        }
    }
}

/// Fejér smoothing `F * λ_M`: the Fourier coefficient at frequency `m` is
/// multiplied by `Π_i (1 - |m_i|/M)₊`. The discrete Fejér kernel is
/// non-negative with mass one, so the output stays in `[0, 1]` and keeps
/// the Lipschitz constant of the input.
pub fn fejer_smooth(f: &LipschitzGridFunction, m: usize) -> Result<LipschitzGridFunction> {
    let (d, g) = (f.d, f.g);
    if m == 0 {
        return Err(Error::OutOfRange("Fejér degree M must be >= 1".into()));
    }
    if g < 4 * m {
        return Err(Error::GridTooSmall {
            required: 4 * m as u64,
            got: g as u64,
        });
    }
    let mut buf: Vec<Complex64> = f.samples.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft_all_axes(&mut buf, d, g, false);
    let axis_weight: Vec<f64> = (0..g)
        .map(|i| {
            let freq = if i <= g / 2 {
                i as f64
            } else {
                g as f64 - i as f64
            };
            (1.0 - freq / m as f64).max(0.0)
        })
        .collect();
    for (flat, z) in buf.iter_mut().enumerate() {
        let mut rest = flat;
        let mut w = 1.0;
        for _ in 0..d {
            w *= axis_weight[rest % g];
            rest /= g;
        }
        *z *= w;
    }
    fft_all_axes(&mut buf, d, g, true);
    let scale = (g as f64).powi(d as i32);
    Ok(LipschitzGridFunction {
        d,
        g,
        samples: buf.iter().map(|z| z.re / scale).collect(),
        k: f.k,
    })
}

/// `3K^{2/3}M^{-1/3}`, the sup-error bound for Fejér smoothing.
pub fn fejer_smoothing_bound(k: f64, m: usize) -> f64 {
    3.0 * k.powf(2.0 / 3.0) * (m as f64).powf(-1.0 / 3.0)
}

/// `ceil(27 K² ε^{-3})`, computed exactly.
pub fn trig_degree(k: Ratio<i64>, eps: Ratio<i64>) -> Result<u64> {
    let zero = Ratio::from_integer(0);
    if k < Ratio::from_integer(1) || eps <= zero || eps > Ratio::from_integer(1) {
        return Err(Error::OutOfRange(format!(
            "need K >= 1 and 0 < ε <= 1, got K = {k}, ε = {eps}"
        )));
    }
    let (a, b) = (*k.numer() as i128, *k.denom() as i128);
    let (c, e) = (*eps.numer() as i128, *eps.denom() as i128);
    // 27 a² e³ / (b² c³)
    let num = [a, a, e, e, e]
        .iter()
        .try_fold(27i128, |acc, &x| acc.checked_mul(x))
        .ok_or(Error::Overflow)?;
    let den = [b, b, c, c, c]
        .iter()
        .try_fold(1i128, |acc, &x| acc.checked_mul(x))
        .ok_or(Error::Overflow)?;
    u64::try_from((num + den - 1) / den).map_err(|_| Error::Overflow)
}

/// [`trig_degree`] for float inputs, read as the simplest nearby fraction
/// (so `1.0/3.0` means exactly one third).
pub fn trig_degree_f64(k: f64, eps: f64) -> Result<u64> {
    let exact = |x: f64| {
        Ratio::<i64>::approximate_float(x)
            .ok_or_else(|| Error::OutOfRange(format!("{x} is not representable")))
    };
    trig_degree(exact(k)?, exact(eps)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzDiscrepancy {
    /// `E_{x∈S} F(αx) - E_{x∈[N]} F(αx)` with nearest-grid evaluation.
    pub value: f64,
    /// Nearest-grid evaluation moves each term by at most `K/G`.
    pub eval_error: f64,
}

pub fn lipschitz_discrepancy(
    set: &IntegerSet,
    f: &LipschitzGridFunction,
    alpha: &[Frequency],
) -> Result<LipschitzDiscrepancy> {
    if set.is_empty() {
        return Err(Error::Empty("set"));
    }
    if alpha.len() != f.dim() {
        return Err(Error::OutOfRange(format!(
            "{} frequencies for a {}-dimensional function",
            alpha.len(),
            f.dim()
        )));
    }
    let mut point = vec![0.0; alpha.len()];
    let mut eval = |x: i64| {
        for (p, a) in point.iter_mut().zip(alpha) {
            *p = a.phase(x);
        }
        f.eval_nearest(&point)
    };
    let on_set: f64 = set.elements().iter().map(|&x| eval(x)).sum::<f64>() / set.len() as f64;
    let n = set.ambient();
    let on_interval: f64 = (1..=n).map(&mut eval).sum::<f64>() / n as f64;
    Ok(LipschitzDiscrepancy {
        value: on_set - on_interval,
        eval_error: f.lipschitz() / f.resolution() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::singer;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(n: i64, xs: &[i64]) -> IntegerSet {
        IntegerSet::new(n, xs.to_vec()).unwrap()
    }

    fn random_set(rng: &mut ChaCha8Rng) -> IntegerSet {
        let n = rng.gen_range(1..300);
        let xs: Vec<i64> = (1..=n).filter(|_| rng.gen_bool(0.2)).collect();
        IntegerSet::new(n, xs).unwrap()
    }

    #[test]
    fn interval_examples() {
        let s = set(13, &[1, 2, 4, 10]);
        assert_eq!(
            interval_discrepancy_exact(&s, &IntInterval::new(1, 13)).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            interval_discrepancy_exact(&s, &IntInterval::new(1, 6)).unwrap(),
            Ratio::new(15, 13)
        );
        assert!(
            (interval_discrepancy(&s, &IntInterval::new(1, 6)).unwrap() - 1.153_846_153_846_153_8)
                .abs()
                < 1e-15
        );
        let e = IntegerSet::empty(13).unwrap();
        assert_eq!(
            interval_discrepancy(&e, &IntInterval::new(3, 9)).unwrap(),
            0.0
        );
        assert!(interval_discrepancy(&s, &IntInterval::new(0, 3)).is_err());
        assert!(interval_discrepancy(&s, &IntInterval::new(5, 14)).is_err());
    }

    #[test]
    fn cilleruelo_examples() {
        assert!((cilleruelo_rhs(16, 4, 4) - (2.0 + 2.0 * 16f64.powf(-0.125))).abs() < 1e-12);
        assert!((cilleruelo_rhs(16, 4, 4) - 3.414_213_562_373_095).abs() < 1e-12);
        assert!((cilleruelo_rhs(13, 4, 6) - 3.676_423_456_054_309).abs() < 1e-12);
        assert!((cilleruelo_rhs(13, 4, 0) - 13f64.powf(0.25)).abs() < 1e-12);
        // below-extremal sets pick up the second factor
        let with_deficit = cilleruelo_rhs(100, 5, 10);
        let first = 100f64.powf(0.25) + 10f64.sqrt() * 100f64.powf(-0.125);
        assert!((with_deficit - first * (1.0 + 0.5f64.sqrt() * 100f64.powf(0.125))).abs() < 1e-12);
    }

    #[test]
    fn residue_examples() {
        let s = set(13, &[1, 2, 4, 10]);
        assert_eq!(residue_discrepancy(&s, 1, 0).unwrap(), 0.0);
        assert_eq!(residue_discrepancy(&s, 2, 0).unwrap(), 0.25);
        assert_eq!(
            residue_discrepancy(&set(11, &[3, 5, 11]), 2, 0).unwrap(),
            -0.5
        );
        assert!(residue_discrepancy(&IntegerSet::empty(4).unwrap(), 2, 0).is_err());
        assert!(residue_discrepancy(&s, 0, 0).is_err());
    }

    #[test]
    fn telescoping_sums_vanish_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let s = random_set(&mut rng);
            let n = s.ambient();
            let mut cuts: Vec<i64> = (1..n).filter(|_| rng.gen_bool(0.1)).collect();
            cuts.push(n);
            let mut lo = 1;
            let mut total = Ratio::from_integer(0);
            for &hi in &cuts {
                total += interval_discrepancy_exact(&s, &IntInterval::new(lo, hi)).unwrap();
                lo = hi + 1;
            }
            assert_eq!(total, Ratio::from_integer(0));
            if !s.is_empty() {
                let q = rng.gen_range(1..20u64);
                let sum: Ratio<i64> = (0..q as i64)
                    .map(|a| residue_discrepancy_exact(&s, q, a).unwrap())
                    .sum();
                assert_eq!(sum, Ratio::from_integer(0));
            }
        }
    }

    #[test]
    fn bohr_member_examples() {
        let all = bohr_members(&BohrSpec::reals(&[0.0], 0.01).unwrap(), 9).unwrap();
        assert_eq!(all, IntegerSet::interval(9).unwrap());
        let evens = bohr_members(&BohrSpec::reals(&[0.5], 0.1).unwrap(), 10).unwrap();
        assert_eq!(evens.elements(), &[2, 4, 6, 8, 10]);
        let third = BohrSpec::new(vec![Frequency::Rational { num: 1, den: 3 }], 0.1).unwrap();
        assert_eq!(bohr_members(&third, 6).unwrap().elements(), &[3, 6]);
        let third_f = BohrSpec::reals(&[1.0 / 3.0], 0.1).unwrap();
        assert_eq!(bohr_members(&third_f, 6).unwrap().elements(), &[3, 6]);
        // closed inequality at a tie
        let tie = BohrSpec::new(vec![Frequency::Rational { num: 1, den: 4 }], 0.25).unwrap();
        assert_eq!(bohr_members(&tie, 4).unwrap().elements(), &[1, 3, 4]);
    }

    #[test]
    fn bohr_spec_validation() {
        assert!(BohrSpec::reals(&[], 0.1).is_err());
        assert!(BohrSpec::reals(&[0.1, 0.2, 0.3, 0.4], 0.1).is_err());
        assert!(BohrSpec::reals(&[1.0], 0.1).is_err());
        assert!(BohrSpec::reals(&[0.1], 0.0).is_err());
        assert!(BohrSpec::reals(&[0.1], 0.6).is_err());
        assert!(BohrSpec::new(vec![Frequency::Rational { num: 1, den: 0 }], 0.1).is_err());
        assert!(BohrSpec::with_max_dim(vec![Frequency::Real(0.1); 4], 0.1, 4).is_ok());
    }

    #[test]
    fn regularity_examples() {
        let r = bohr_regularity(&BohrSpec::reals(&[0.0], 0.2).unwrap(), 50).unwrap();
        assert!(r.regular);
        let r = bohr_regularity(&BohrSpec::reals(&[0.5], 0.1).unwrap(), 10).unwrap();
        assert!(r.regular);
        assert!(r.worst_ratio_excess <= 0.0);
        let quarter = BohrSpec::new(vec![Frequency::Rational { num: 1, den: 4 }], 0.25).unwrap();
        let r = bohr_regularity(&quarter, 8).unwrap();
        // |B(ρ)| = 6 but |B((1+κ)ρ)| = 2 for every κ < 0
        assert!(!r.regular);
        assert!(r.worst_kappa.abs() < 1e-9);
        assert!((r.worst_ratio_excess - 2.0 / 3.0).abs() < 1e-9);
        let empty = BohrSpec::reals(&[0.5], 0.1).unwrap();
        assert!(bohr_regularity(&empty, 1).is_err());
    }

    /// Dense κ grid oracle, independent of the threshold enumeration.
    fn regular_on_grid(b: &BohrSpec, n: i64, points: usize) -> bool {
        let d = b.dim() as f64;
        let w = 1.0 / (100.0 * d);
        let mut dist: Vec<f64> = (1..=n).map(|x| b.max_dist(x)).collect();
        dist.sort_by(f64::total_cmp);
        let count =
            |scale: f64| dist.partition_point(|&v| v <= scale * b.rho + TIE_TOLERANCE) as f64;
        let base = count(1.0);
        (0..points).all(|i| {
            let k = -w + 2.0 * w * i as f64 / (points - 1) as f64;
            (count(1.0 + k) / base - 1.0).abs() <= 100.0 * d * k.abs() + 1e-12
        })
    }

    #[test]
    fn regularity_agrees_with_dense_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut checked = 0;
        let (mut regular, mut irregular) = (0, 0);
        while checked < 100 {
            let n = rng.gen_range(50..=2000);
            let d = rng.gen_range(1..=3);
            let alpha: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
            let b = BohrSpec::reals(&alpha, rng.gen_range(0.05..0.5)).unwrap();
            let Ok(exact) = bohr_regularity(&b, n) else {
                continue;
            };
            let grid = regular_on_grid(&b, n, 10_000);
            assert_eq!(exact.regular, grid, "{b:?} N = {n}: {exact:?}");
            if exact.regular {
                regular += 1
            } else {
                irregular += 1
            }
            checked += 1;
        }
        assert!(regular > 0 && irregular > 0, "{regular} / {irregular}");
    }

    #[test]
    fn bohr_discrepancy_examples() {
        let s = set(13, &[1, 2, 4, 10]);
        assert_eq!(
            bohr_discrepancy(&s, &BohrSpec::reals(&[0.0], 0.1).unwrap()).unwrap(),
            0.0
        );
        let odd = set(11, &[3, 5, 11]);
        let b = BohrSpec::reals(&[0.5], 0.1).unwrap();
        assert!((bohr_discrepancy(&odd, &b).unwrap() + 5.0 / 11.0).abs() < 1e-15);
        let members = bohr_members(&b, 11).unwrap();
        assert!((bohr_discrepancy(&members, &b).unwrap() - (1.0 - 5.0 / 11.0)).abs() < 1e-15);
        assert!(bohr_discrepancy(&IntegerSet::empty(3).unwrap(), &b).is_err());
    }

    #[test]
    fn grid_function_validation() {
        assert!(LipschitzGridFunction::new(1, 4, vec![0.0, 0.25, 0.5, 0.25], 1.0).is_ok());
        assert!(LipschitzGridFunction::new(1, 4, vec![0.0, 1.0, 0.0, 0.0], 1.0).is_err());
        assert!(LipschitzGridFunction::new(1, 4, vec![0.0, 0.0, 0.0], 1.0).is_err());
        assert!(LipschitzGridFunction::new(1, 4, vec![1.5, 1.5, 1.5, 1.5], 1.0).is_err());
        assert!(LipschitzGridFunction::new(1, 4, vec![0.0; 4], 0.5).is_err());
        assert!(LipschitzGridFunction::new(4, 2, vec![0.0; 16], 1.0).is_err());
        assert!(LipschitzGridFunction::tent(2, 64, 5.0).is_ok());
        assert!(LipschitzGridFunction::bohr_tent(3, 16, 0.1, 0.2).is_ok());
    }

    #[test]
    fn smoothing_examples() {
        let c = LipschitzGridFunction::constant(1, 64, 0.3).unwrap();
        let s = fejer_smooth(&c, 4).unwrap();
        assert!(s.sup_distance(&c) < 1e-12);
        let c2 = LipschitzGridFunction::constant(2, 16, 0.7).unwrap();
        assert!(fejer_smooth(&c2, 4).unwrap().sup_distance(&c2) < 1e-12);

        let pi2 = 2.0 * std::f64::consts::PI;
        let cosine =
            LipschitzGridFunction::from_fn(1, 64, pi2, |p| (1.0 + (pi2 * p[0]).cos()) / 2.0)
                .unwrap();
        let smoothed = fejer_smooth(&cosine, 2).unwrap();
        let expected =
            LipschitzGridFunction::from_fn(1, 64, pi2, |p| 0.5 + (pi2 * p[0]).cos() / 4.0).unwrap();
        assert!(smoothed.sup_distance(&expected) < 1e-12);

        let tent = LipschitzGridFunction::tent(1, 4096, 10.0).unwrap();
        let s = fejer_smooth(&tent, 100).unwrap();
        assert!(s.range_violation().is_none());
        assert!(s.sup_distance(&tent) <= fejer_smoothing_bound(10.0, 100));

        assert!(matches!(
            fejer_smooth(&tent, 2000),
            Err(Error::GridTooSmall { .. })
        ));
        assert!(fejer_smooth(&tent, 0).is_err());
    }

    #[test]
    fn smoothing_in_two_dimensions_matches_separable_product() {
        let g = 64;
        let f = LipschitzGridFunction::tent(2, g, 3.0).unwrap();
        let s = fejer_smooth(&f, 8).unwrap();
        let one = fejer_smooth(&LipschitzGridFunction::tent(1, g, 3.0).unwrap(), 8).unwrap();
        for i in 0..g {
            for j in 0..g {
                let expected = one.samples()[i] * one.samples()[j];
                assert!((s.samples()[i * g + j] - expected).abs() < 1e-12);
            }
        }
        assert!(s.range_violation().is_none());
    }

    #[test]
    fn trig_degree_examples() {
        let r = |a: i64, b: i64| Ratio::new(a, b);
        assert_eq!(trig_degree(r(1, 1), r(1, 1)).unwrap(), 27);
        assert_eq!(trig_degree(r(1, 1), r(1, 3)).unwrap(), 729);
        assert_eq!(trig_degree(r(2, 1), r(1, 2)).unwrap(), 864);
        assert_eq!(trig_degree_f64(1.0, 1.0 / 3.0).unwrap(), 729);
        assert_eq!(trig_degree_f64(2.0, 0.5).unwrap(), 864);
        // 27·(3/2)²·(10/7)³ = 243000/1372 = 177.11…
        assert_eq!(trig_degree(r(3, 2), r(7, 10)).unwrap(), 178);
        assert!(trig_degree(r(1, 2), r(1, 2)).is_err());
        assert!(trig_degree(r(1, 1), r(0, 1)).is_err());
        assert!(trig_degree(r(1, 1), r(3, 2)).is_err());
    }

    #[test]
    fn lipschitz_examples() {
        let s = set(13, &[1, 2, 4, 10]);
        let c = LipschitzGridFunction::constant(1, 32, 0.4).unwrap();
        let alpha = [Frequency::Real(0.37)];
        assert!(lipschitz_discrepancy(&s, &c, &alpha).unwrap().value.abs() < 1e-15);
        let tent = LipschitzGridFunction::tent(1, 64, 2.0).unwrap();
        let zero = [Frequency::Real(0.0)];
        assert_eq!(lipschitz_discrepancy(&s, &tent, &zero).unwrap().value, 0.0);
        let odd = set(11, &[3, 5, 11]);
        let half = [Frequency::Real(0.5)];
        let r = lipschitz_discrepancy(&odd, &tent, &half).unwrap();
        assert!((r.value + 5.0 / 11.0).abs() < 1e-15, "{r:?}");
        assert!((r.eval_error - 2.0 / 64.0).abs() < 1e-15);
        assert!(lipschitz_discrepancy(&IntegerSet::empty(3).unwrap(), &tent, &half).is_err());
        assert!(lipschitz_discrepancy(&odd, &tent, &[Frequency::Real(0.1); 2]).is_err());
    }

    #[test]
    fn singer_intervals_stay_near_cilleruelo_scale() {
        let s = singer(13).unwrap().full_embedding();
        let n = s.ambient();
        for lo in (1..=n).step_by(7) {
            for hi in (lo..=n).step_by(11) {
                let i = IntInterval::new(lo, hi);
                let disc = interval_discrepancy(&s, &i).unwrap().abs();
                assert!(disc <= 3.0 * cilleruelo_rhs(n as u64, s.len(), i.len() as u64));
            }
        }
    }
}

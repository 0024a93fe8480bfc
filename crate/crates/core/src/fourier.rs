//! Exponential sums `f̂(α) = Σ f(n) e(αn)` of signals supported on `[1, N]`.
//!
//! Sup norms over the circle are bracketed rather than claimed: the transform
//! is evaluated on the grid `j/M`, and since `|f̂'| <= 2πN‖f‖₁` the true sup
//! lies in `[grid_max, grid_max + πN‖f‖₁/M]`.
//!
//! Also here: the normalised Fejér kernel `μ_H`, both sides of the van der
//! Corput inequality, the Fejér mass of a Sidon difference set, and the
//! L¹ norm of the transform of an arithmetic progression.

use std::f64::consts::PI;
use std::io::Write;

use num_rational::Ratio;
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::set::is_sidon;
use crate::{Error, IntegerSet, Result};

pub const DEFAULT_OVERSAMPLE: u64 = 8;

/// Relative tolerance used when comparing the two sides of an inequality.
pub const INEQUALITY_REL_TOL: f64 = 1e-9;

/// A real signal supported on `[1, N]`; `values[x - 1] = f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSignal {
    support_bound: i64,
    values: Vec<f64>,
}

impl RealSignal {
    pub fn new(support_bound: i64, values: Vec<f64>) -> Result<Self> {
        if support_bound < 1 || values.len() as i64 != support_bound {
            return Err(Error::OutOfRange(format!(
                "signal on [1, {support_bound}] needs exactly {support_bound} values, got {}",
                values.len()
            )));
        }
        Ok(RealSignal {
            support_bound,
            values,
        })
    }

    pub fn indicator(set: &IntegerSet) -> Self {
        let mut values = vec![0.0; set.ambient() as usize];
        for &x in set.elements() {
            values[(x - 1) as usize] = 1.0;
        }
        RealSignal {
            support_bound: set.ambient(),
            values,
        }
    }

    pub fn support_bound(&self) -> i64 {
        self.support_bound
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `f(x)`, zero outside `[1, N]`.
    pub fn at(&self, x: i64) -> f64 {
        if (1..=self.support_bound).contains(&x) {
            self.values[(x - 1) as usize]
        } else {
            0.0
        }
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// `Σ_x f(x) f(x + h)`.
    pub fn correlation(&self, h: i64) -> f64 {
        let n = self.support_bound;
        let h = h.abs();
        if h >= n {
            return 0.0;
        }
        self.values[..(n - h) as usize]
            .iter()
            .zip(&self.values[h as usize..])
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// `μ_H(h) = (1/⌊H⌋)(1 - |h|/⌊H⌋)₊`, a probability measure on `(-H, H)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FejerKernel {
    h: f64,
    floor: i64,
}

impl FejerKernel {
    pub fn new(h: f64) -> Result<Self> {
        if !(h.is_finite() && h >= 1.0) {
            return Err(Error::OutOfRange(format!(
                "Fejér parameter H = {h} must be >= 1"
            )));
        }
        Ok(FejerKernel {
            h,
            floor: h.floor() as i64,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn weight_exact(&self, shift: i64) -> Ratio<i64> {
        let f = self.floor;
        let d = shift.abs();
        if d >= f {
            Ratio::from_integer(0)
        } else {
            Ratio::new(f - d, f * f)
        }
    }

    pub fn weight(&self, shift: i64) -> f64 {
        let (f, d) = (self.floor, shift.abs());
        if d >= f {
            0.0
        } else {
            (f - d) as f64 / (f * f) as f64
        }
    }

    /// Shifts with non-zero weight.
    pub fn support(&self) -> std::ops::RangeInclusive<i64> {
        -(self.floor - 1)..=(self.floor - 1)
    }
}

pub fn fejer_weight(h: f64, shift: i64) -> Result<f64> {
    Ok(FejerKernel::new(h)?.weight(shift))
}

/// `f = 1_S - (|S|/N)·1_[N]`. Each value is an exact rational rounded once,
/// so `Σ f` vanishes up to a single rounding per entry.
pub fn balanced_function(set: &IntegerSet) -> RealSignal {
    let n = set.ambient();
    let k = set.len() as i64;
    let inside = (n - k) as f64 / n as f64;
    let outside = -(k as f64) / n as f64;
    let values = (1..=n)
        .map(|x| if set.contains(x) { inside } else { outside })
        .collect();
    RealSignal {
        support_bound: n,
        values,
    }
}

/// `f̂(j/M)` for `j = 0..M`, with the certified sup bracket.
#[derive(Debug, Clone)]
pub struct FourierProfile {
    pub grid_size: u64,
    pub values: Vec<Complex64>,
    pub grid_max: f64,
    /// Grid point `j*/M` (first maximiser).
    pub argmax: f64,
    /// `π·N·‖f‖₁/M`, so `sup |f̂| <= grid_max + error_bound`.
    pub error_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub grid_size: u64,
    pub grid_max: f64,
    pub argmax: f64,
    pub error_bound: f64,
}

impl FourierProfile {
    pub fn summary(&self) -> ProfileSummary {
        ProfileSummary {
            grid_size: self.grid_size,
            grid_max: self.grid_max,
            argmax: self.argmax,
            error_bound: self.error_bound,
        }
    }

    /// Columns `j,alpha,re,im,modulus`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "j,alpha,re,im,modulus")?;
        let m = self.grid_size as f64;
        for (j, z) in self.values.iter().enumerate() {
            writeln!(out, "{j},{},{},{},{}", j as f64 / m, z.re, z.im, z.norm())?;
        }
        Ok(())
    }
}

/// Transform of `f` on the grid `j/M` through a length-`M` FFT.
pub fn dft_profile(f: &RealSignal, m: u64) -> Result<FourierProfile> {
    let n = f.support_bound() as u64;
    if m < n + 1 {
        return Err(Error::GridTooSmall {
            required: n + 1,
            got: m,
        });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m as usize];
    for (i, &v) in f.values().iter().enumerate() {
        buf[i + 1] = Complex64::new(v, 0.0);
    }
    // e(+αn) is the inverse-direction kernel; rustfft leaves it unnormalised
    FftPlanner::new()
        .plan_fft_inverse(m as usize)
        .process(&mut buf);
    let (jmax, grid_max) =
        buf.iter()
            .map(|z| z.norm())
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (j, a)| {
                if a > best.1 {
                    (j, a)
                } else {
                    best
                }
            });
    Ok(FourierProfile {
        grid_size: m,
        values: buf,
        grid_max,
        argmax: jmax as f64 / m as f64,
        error_bound: PI * n as f64 * f.l1_norm() / m as f64,
    })
}

/// Direct `O(N)` evaluation of `f̂(α)`, for cross-checks.
pub fn transform_at(f: &RealSignal, alpha: f64) -> Complex64 {
    f.values()
        .iter()
        .enumerate()
        .map(|(i, &v)| v * Complex64::from_polar(1.0, 2.0 * PI * alpha * (i as f64 + 1.0)))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformityEstimate {
    /// Grid maximum of `|1̂_S - (|S|/N)1̂_[N]|`; a lower bound for the sup.
    pub value: f64,
    pub alpha_star: f64,
    /// The sup is at most `value + error_bound`.
    pub error_bound: f64,
    pub grid_size: u64,
}

/// `oversample · ceil(N^{9/8})`.
pub fn uniformity_grid_size(n: u64, oversample: u64) -> u64 {
    let mut base = (n as f64).powf(1.125).ceil() as u64;
    // exact fix-up where N^9 fits in u128
    if let Some(target) = (n as u128).checked_pow(9) {
        let pow8 = |b: u64| (b as u128).checked_pow(8);
        while base > 1 && pow8(base - 1).is_some_and(|p| p >= target) {
            base -= 1;
        }
        while pow8(base).is_some_and(|p| p < target) {
            base += 1;
        }
    }
    oversample * base
}

pub fn uniformity_norm(set: &IntegerSet, oversample: u64) -> Result<UniformityEstimate> {
    if oversample == 0 {
        return Err(Error::OutOfRange("oversample must be positive".into()));
    }
    let f = balanced_function(set);
    if f.l1_norm() == 0.0 {
        return Ok(UniformityEstimate {
            value: 0.0,
            alpha_star: 0.0,
            error_bound: 0.0,
            grid_size: 0,
        });
    }
    let m = uniformity_grid_size(set.ambient() as u64, oversample).max(set.ambient() as u64 + 1);
    let p = dft_profile(&f, m)?;
    Ok(UniformityEstimate {
        value: p.grid_max,
        alpha_star: p.argmax,
        error_bound: p.error_bound,
        grid_size: m,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhsVariant {
    /// `N^{1/2}(||S|/N^{1/2} - 1| + N^{-1/6})^{1/2}`
    Basic,
    /// Same with `N^{-1/4}` in place of `N^{-1/6}`.
    Improved,
}

/// Right-hand side of the uniformity bound, without implicit constant.
pub fn uniformity_rhs(n: u64, size: usize, variant: RhsVariant) -> f64 {
    let n = n as f64;
    let dev = (size as f64 / n.sqrt() - 1.0).abs();
    let tail = match variant {
        RhsVariant::Basic => n.powf(-1.0 / 6.0),
        RhsVariant::Improved => n.powf(-0.25),
    };
    n.sqrt() * (dev + tail).sqrt()
}

/// Both sides of an inequality, kept for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityCheck {
    /// `lhs <= rhs` up to `rel_tol·max(|lhs|, |rhs|)`.
    pub fn le_holds(&self, rel_tol: f64) -> bool {
        self.lhs <= self.rhs + rel_tol * self.lhs.abs().max(self.rhs.abs())
    }

    /// `lhs >= rhs` up to `rel_tol·max(|lhs|, |rhs|)`.
    pub fn ge_holds(&self, rel_tol: f64) -> bool {
        self.lhs + rel_tol * self.lhs.abs().max(self.rhs.abs()) >= self.rhs
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// `lhs = (Σ f)²`, `rhs = (N + H) Σ_h μ_H(h) Σ_x f(x) f(x + h)`.
pub fn van_der_corput_check(f: &RealSignal, h: f64) -> Result<InequalityCheck> {
    let n = f.support_bound() as f64;
    if !(1.0..=n).contains(&h) {
        return Err(Error::OutOfRange(format!("H = {h} must lie in [1, {n}]")));
    }
    let kernel = FejerKernel::new(h)?;
    let weighted: f64 = kernel
        .support()
        .map(|s| kernel.weight(s) * f.correlation(s))
        .sum();
    Ok(InequalityCheck {
        lhs: f.sum().powi(2),
        rhs: (n + h) * weighted,
    })
}

/// `lhs = Σ_{h ∈ (S-S)∖{0}} μ_H(h)`, `rhs = |S|²/(N+H) - |S|/⌊H⌋`; for Sidon
/// sets `lhs >= rhs`.
pub fn fejer_mass_check(set: &IntegerSet, h: f64) -> Result<InequalityCheck> {
    let n = set.ambient() as f64;
    if !(1.0..=n).contains(&h) {
        return Err(Error::OutOfRange(format!("H = {h} must lie in [1, {n}]")));
    }
    if !is_sidon(set).is_sidon {
        return Err(Error::NotSidon);
    }
    let kernel = FejerKernel::new(h)?;
    // distinct pairs have distinct differences, so no deduplication is needed
    let xs = set.elements();
    let lhs = 2.0
        * xs.iter()
            .enumerate()
            .flat_map(|(i, &a)| xs[..i].iter().map(move |&b| kernel.weight(a - b)))
            .sum::<f64>();
    let k = set.len() as f64;
    Ok(InequalityCheck {
        lhs,
        rhs: k * k / (n + h) - k / kernel.floor() as f64,
    })
}

/// `{start + i·step : 0 <= i < len}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArithmeticProgression {
    pub start: i64,
    pub step: i64,
    pub len: u64,
}

/// Riemann sum `(1/M) Σ_j |1̂_P(j/M)|` approximating `∫ |1̂_P|`.
///
/// `|1̂_P(α)| = |sin(π·len·step·α) / sin(π·step·α)|` is evaluated in closed
/// form with the phase reduced mod 1 first.
pub fn progression_l1_norm(p: &ArithmeticProgression, m: u64) -> Result<f64> {
    if p.len == 0 || p.step == 0 {
        return Err(Error::OutOfRange(
            "progression needs positive length and non-zero step".into(),
        ));
    }
    if m < 8 * p.len {
        return Err(Error::GridTooSmall {
            required: 8 * p.len,
            got: m,
        });
    }
    let len = p.len as f64;
    let step = p.step.unsigned_abs() as u128;
    let total: f64 = (0..m)
        .map(|j| {
            let r = (step * j as u128 % m as u128) as f64 / m as f64;
            let den = (PI * r).sin();
            if den.abs() < 1e-15 {
                len
            } else {
                ((PI * len * r).sin() / den).abs()
            }
        })
        .sum();
    Ok(total / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::singer;
    use crate::set::autocorrelation;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(n: i64, xs: &[i64]) -> IntegerSet {
        IntegerSet::new(n, xs.to_vec()).unwrap()
    }

    #[test]
    fn fejer_examples() {
        assert_eq!(fejer_weight(4.0, 0).unwrap(), 0.25);
        assert_eq!(fejer_weight(4.0, 2).unwrap(), 0.125);
        assert_eq!(fejer_weight(4.0, -2).unwrap(), 0.125);
        assert_eq!(fejer_weight(4.0, 5).unwrap(), 0.0);
        assert_eq!(fejer_weight(4.9, 3).unwrap(), 1.0 / 16.0);
        assert!(fejer_weight(0.5, 0).is_err());
        assert!(fejer_weight(f64::NAN, 0).is_err());
    }

    #[test]
    fn fejer_mass_is_exactly_one() {
        let mut h = 1.0;
        while h <= 64.0 {
            let k = FejerKernel::new(h).unwrap();
            let total: Ratio<i64> = k.support().map(|s| k.weight_exact(s)).sum();
            assert_eq!(total, Ratio::from_integer(1), "H = {h}");
            assert!(k.support().all(|s| (s as f64).abs() < h));
            h += 0.5;
        }
    }

    #[test]
    fn fejer_matches_interval_autocorrelation() {
        for h in [1.0, 2.5, 7.0, 13.2] {
            let k = FejerKernel::new(h).unwrap();
            let f = k.floor();
            let block = IntegerSet::interval(f).unwrap();
            for s in -20..=20 {
                let expected = Ratio::new(autocorrelation(&block, s) as i64, f * f);
                assert_eq!(k.weight_exact(s), expected);
            }
        }
    }

    #[test]
    fn balanced_examples() {
        let full = balanced_function(&IntegerSet::interval(9).unwrap());
        assert!(full.values().iter().all(|&v| v == 0.0));
        let none = balanced_function(&IntegerSet::empty(5).unwrap());
        assert!(none.values().iter().all(|&v| v == 0.0));
        let one = balanced_function(&set(2, &[1]));
        assert_eq!(one.values(), &[0.5, -0.5]);
        let s = balanced_function(&set(13, &[1, 2, 4, 10]));
        assert!(s.sum().abs() < 1e-12);
    }

    #[test]
    fn profile_examples() {
        let delta = RealSignal::indicator(&set(5, &[1]));
        let p = dft_profile(&delta, 16).unwrap();
        assert!(p.values.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        let block = RealSignal::indicator(&IntegerSet::interval(10).unwrap());
        let p = dft_profile(&block, 37).unwrap();
        assert!((p.values[0].re - 10.0).abs() < 1e-12);
        assert_eq!(p.grid_max, p.values[0].norm());
        assert_eq!(p.argmax, 0.0);
        let s = set(13, &[1, 2, 4, 10]);
        let p = dft_profile(&balanced_function(&s), 14).unwrap();
        assert!(p.values[0].norm() < 1e-12);
        assert!(matches!(
            dft_profile(&block, 10),
            Err(Error::GridTooSmall {
                required: 11,
                got: 10
            })
        ));
    }

    #[test]
    fn profile_matches_direct_evaluation() {
        let f = balanced_function(&set(30, &[2, 3, 7, 19, 30]));
        let p = dft_profile(&f, 97).unwrap();
        for j in [0usize, 1, 5, 48, 96] {
            let d = transform_at(&f, j as f64 / 97.0);
            assert!((p.values[j] - d).norm() < 1e-10);
        }
        assert!((p.error_bound - PI * 30.0 * f.l1_norm() / 97.0).abs() < 1e-15);
    }

    #[test]
    fn csv_export() {
        let p = dft_profile(&RealSignal::indicator(&set(2, &[1])), 4).unwrap();
        let mut out = Vec::new();
        p.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "j,alpha,re,im,modulus");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,0,1,0,1"));
        let j = serde_json::to_value(p.summary()).unwrap();
        assert_eq!(j["grid_size"], 4);
    }

    #[test]
    fn uniformity_examples() {
        let u = uniformity_norm(&IntegerSet::interval(20).unwrap(), 8).unwrap();
        assert_eq!((u.value, u.alpha_star, u.error_bound), (0.0, 0.0, 0.0));
        let u = uniformity_norm(&IntegerSet::empty(10).unwrap(), 8).unwrap();
        assert_eq!((u.value, u.alpha_star, u.error_bound), (0.0, 0.0, 0.0));
        let u = uniformity_norm(&set(13, &[1, 2, 4, 10]), 8).unwrap();
        assert!(u.value >= 3f64.sqrt() - 1e-9);
        assert!(u.value <= 13.0);
    }

    #[test]
    fn grid_size_is_exact_ceiling() {
        for n in 1..2000u64 {
            let b = uniformity_grid_size(n, 1) as u128;
            assert!(b.pow(8) >= (n as u128).pow(9));
            assert!((b - 1).pow(8) < (n as u128).pow(9));
        }
        assert_eq!(uniformity_grid_size(16, 8), 8 * 23);
    }

    #[test]
    fn rhs_examples() {
        let b = uniformity_rhs(13, 4, RhsVariant::Basic);
        assert!((b - 3.146_436_537_451_575).abs() < 1e-12);
        let b = uniformity_rhs(16, 4, RhsVariant::Basic);
        assert!((b - 16f64.powf(5.0 / 12.0)).abs() < 1e-12);
        let i = uniformity_rhs(13, 4, RhsVariant::Improved);
        assert!((i - 2.875_505_198_026_775).abs() < 1e-12);
    }

    #[test]
    fn van_der_corput_examples() {
        let n = 37;
        let block = RealSignal::indicator(&IntegerSet::interval(n).unwrap());
        let c = van_der_corput_check(&block, 1.0).unwrap();
        assert_eq!(c.lhs, (n * n) as f64);
        assert!((c.rhs - ((n + 1) * n) as f64).abs() < 1e-9);
        let delta = RealSignal::indicator(&set(n, &[1]));
        let c = van_der_corput_check(&delta, 3.0).unwrap();
        assert_eq!(c.lhs, 1.0);
        assert!((c.rhs - (n as f64 + 3.0) / 3.0).abs() < 1e-12);
        assert!(van_der_corput_check(&delta, 0.5).is_err());
        assert!(van_der_corput_check(&delta, 38.0).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let values = (0..100)
            .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let f = RealSignal::new(100, values).unwrap();
        assert!(van_der_corput_check(&f, 10.0)
            .unwrap()
            .le_holds(INEQUALITY_REL_TOL));
    }

    #[test]
    fn fejer_mass_examples() {
        let c = fejer_mass_check(&set(11, &[1, 2, 5, 11]), 4.0).unwrap();
        assert!((c.lhs - 0.5).abs() < 1e-15);
        assert!((c.rhs - (16.0 / 15.0 - 1.0)).abs() < 1e-15);
        assert!(c.ge_holds(INEQUALITY_REL_TOL));
        let c = fejer_mass_check(&set(10, &[1]), 2.0).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!((c.rhs - (1.0 / 12.0 - 0.5)).abs() < 1e-15);
        assert!(matches!(
            fejer_mass_check(&set(3, &[1, 2, 3]), 2.0),
            Err(Error::NotSidon)
        ));
    }

    #[test]
    fn progression_examples() {
        let single = ArithmeticProgression {
            start: 1,
            step: 1,
            len: 1,
        };
        assert!((progression_l1_norm(&single, 8).unwrap() - 1.0).abs() < 1e-12);
        assert!((progression_l1_norm(&single, 1001).unwrap() - 1.0).abs() < 1e-12);
        // ∫ 2|cos πα| dα = 4/π, by quadrature on a fine grid
        let pair = ArithmeticProgression {
            start: 1,
            step: 1,
            len: 2,
        };
        let v = progression_l1_norm(&pair, 1 << 16).unwrap();
        assert!((v - 4.0 / PI).abs() < 1e-4, "{v}");
        assert!(progression_l1_norm(&pair, 15).is_err());
        // dilation invariance of the integral
        let spread = ArithmeticProgression {
            start: 5,
            step: 3,
            len: 2,
        };
        let w = progression_l1_norm(&spread, (1 << 16) + 1).unwrap();
        assert!((w - 4.0 / PI).abs() < 1e-4, "{w}");
    }

    #[test]
    fn progression_norm_grows_logarithmically() {
        // constant calibrated from the smallest non-trivial progression
        let norm = |len: u64| {
            let p = ArithmeticProgression {
                start: 1,
                step: 1,
                len,
            };
            progression_l1_norm(&p, 64 * len).unwrap()
        };
        let c = norm(2) / (1.0 + 2f64.ln());
        for len in [4u64, 8, 16, 64, 256, 1024] {
            let v = norm(len);
            assert!(v <= c * (1.0 + (len as f64).ln()) * 1.5, "len {len}: {v}");
            assert!(v >= 1.0);
        }
    }

    #[test]
    fn singer_character_sums() {
        for q in [2u64, 3, 5, 7] {
            let d = singer(q).unwrap();
            let s = d.full_embedding();
            // a/v = 2a/(2v); the grid must exceed the support
            let p = dft_profile(&RealSignal::indicator(&s), 2 * d.v).unwrap();
            for a in 1..d.v as usize {
                assert!((p.values[2 * a].norm_sqr() - q as f64).abs() < 1e-9);
            }
        }
    }

    fn random_set() -> impl Strategy<Value = IntegerSet> {
        (1i64..200).prop_flat_map(|n| {
            prop::collection::btree_set(1..=n, 0..(n as usize).min(30))
                .prop_map(move |xs| IntegerSet::new(n, xs.into_iter().collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn parseval_on_grid(s in random_set()) {
            let m = 2 * s.ambient() as u64 + 1;
            let p = dft_profile(&RealSignal::indicator(&s), m).unwrap();
            let energy: f64 = p.values.iter().map(|z| z.norm_sqr()).sum::<f64>() / m as f64;
            prop_assert!((energy - s.len() as f64).abs() < 1e-8 * (1.0 + s.len() as f64));
        }

        #[test]
        fn transform_squared_is_autocorrelation_transform(s in random_set(), j in 0u64..1000) {
            let n = s.ambient();
            let m = 2 * n as u64 + 1;
            let j = j % m;
            let p = dft_profile(&RealSignal::indicator(&s), m).unwrap();
            let alpha = j as f64 / m as f64;
            let via_autocorr: f64 = (-(n - 1)..n)
                .map(|h| autocorrelation(&s, h) as f64 * (2.0 * PI * alpha * h as f64).cos())
                .sum();
            let direct = p.values[j as usize].norm_sqr();
            prop_assert!((direct - via_autocorr).abs() <= 1e-6 * direct.abs().max(1.0));
        }

        #[test]
        fn refining_the_grid_respects_the_error_bound(s in random_set()) {
            let f = balanced_function(&s);
            let m = s.ambient() as u64 + 1;
            let coarse = dft_profile(&f, m).unwrap();
            let fine = dft_profile(&f, 4 * m).unwrap();
            prop_assert!(fine.grid_max <= coarse.grid_max + coarse.error_bound + 1e-9);
        }
    }

    #[test]
    fn van_der_corput_random_battery() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=512);
            let values = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let f = RealSignal::new(n, values).unwrap();
            let h = rng.gen_range(1.0..=n as f64);
            let c = van_der_corput_check(&f, h).unwrap();
            assert!(c.le_holds(INEQUALITY_REL_TOL), "N = {n}, H = {h}: {c:?}");
        }
    }
}

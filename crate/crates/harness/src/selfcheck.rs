//! Desk-scale invariant battery, one suite per library module.

use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sidonlab_core::constructions::cache::SingerCache;
use sidonlab_core::constructions::{erdos_turan_construction, mian_chowla, odd_double, singer};
use sidonlab_core::equations::{
    count_solutions_bruteforce, count_solutions_convolution, total_count, IntWeights,
    LinearEquation, DEFAULT_BRUTEFORCE_STEPS,
};
use sidonlab_core::equidistribution::{
    fejer_smooth, fejer_smoothing_bound, interval_discrepancy_exact, residue_discrepancy_exact,
    trig_degree, IntInterval, LipschitzGridFunction,
};
use sidonlab_core::fourier::{
    dft_profile, fejer_mass_check, van_der_corput_check, RealSignal, INEQUALITY_REL_TOL,
};
use sidonlab_core::set::{erdos_turan_cap, is_sidon, is_sidon_dense};
use sidonlab_core::IntegerSet;

type Outcome = std::result::Result<(), String>;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Outcome) {
        let outcome = f();
        self.checks.push(Check {
            name: name.into(),
            passed: outcome.is_ok(),
            detail: outcome.err(),
        });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_set(rng: &mut ChaCha8Rng, max_n: i64, density: f64) -> IntegerSet {
    let n = rng.gen_range(1..=max_n);
    IntegerSet::new(n, (1..=n).filter(|_| rng.gen_bool(density)).collect()).expect("valid set")
}

fn sidon_sets() -> Vec<(String, IntegerSet)> {
    let mut out = Vec::new();
    for q in [2, 3, 5, 7, 11, 13, 17, 19, 23] {
        out.push((
            format!("singer-q{q}"),
            singer(q).expect("prime").full_embedding(),
        ));
    }
    for p in [3, 5, 7, 11] {
        out.push((
            format!("erdos-turan-p{p}"),
            erdos_turan_construction(p).expect("prime"),
        ));
    }
    let mc = mian_chowla(30).expect("within cap");
    out.push(("odd-double-mc30".into(), odd_double(&mc)));
    out.push(("mian-chowla-30".into(), mc));
    out
}

fn core_suite() -> Suite {
    let mut s = Suite::new("sidon_core");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    s.check("hash and dense Sidon tests agree", || {
        for _ in 0..300 {
            let set = random_set(&mut rng, 200, 0.05);
            let (a, b) = (is_sidon(&set), is_sidon_dense(&set));
            ensure(
                a.is_sidon == b.is_sidon && a.is_consistent_with(&set),
                || format!("disagreement on {:?}", set.elements()),
            )?;
        }
        Ok(())
    });
    s.check("constructed sets are Sidon and below the cap", || {
        for (id, set) in sidon_sets() {
            ensure(is_sidon(&set).is_sidon, || format!("{id} is not Sidon"))?;
            let cap = erdos_turan_cap(set.ambient() as u64);
            ensure(set.len() as f64 <= cap, || {
                format!("{id}: {} > {cap}", set.len())
            })?;
        }
        Ok(())
    });
    s
}

fn constructions_suite() -> Suite {
    let mut s = Suite::new("constructions");
    s.check("Singer sets are perfect difference sets", || {
        for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            singer(q).map_err(|e| e.to_string())?.verify()?;
        }
        Ok(())
    });
    s.check("greedy sequence prefix", || {
        let mc = mian_chowla(10).map_err(|e| e.to_string())?;
        ensure(
            mc.elements() == [1, 2, 4, 8, 13, 21, 31, 45, 66, 81],
            || format!("got {:?}", mc.elements()),
        )
    });
    s
}

fn cache_suite(cache: &SingerCache) -> Suite {
    let mut s = Suite::new("cache");
    let mut entries: Vec<(u64, String)> = std::fs::read_dir(cache.dir())
        .into_iter()
        .flatten()
        .flatten()
        .filter_map(|e| {
            let name = e.file_name().to_string_lossy().into_owned();
            let q = name
                .strip_prefix("singer-q")?
                .strip_suffix(".json")?
                .parse()
                .ok()?;
            Some((q, name))
        })
        .collect();
    entries.sort();
    for (q, name) in entries {
        s.check(format!("cache entry {name}"), || match cache.load(q) {
            Ok(Some(_)) => Ok(()),
            Ok(None) => Err("entry vanished during the check".into()),
            Err(e) => Err(e.to_string()),
        });
    }
    s.check("store and reload round trip", || {
        let dir = std::env::temp_dir().join(format!("sidonlab-selfcheck-{}", std::process::id()));
        let scratch = SingerCache::new(&dir);
        let d = singer(5).map_err(|e| e.to_string())?;
        let result = scratch.store(&d).and_then(|_| scratch.load(5));
        let _ = std::fs::remove_dir_all(&dir);
        ensure(result.map_err(|e| e.to_string())? == Some(d), || {
            "reloaded set differs".into()
        })
    });
    s
}

fn fourier_suite() -> Suite {
    let mut s = Suite::new("fourier");
    s.check("Singer character sums have modulus squared q", || {
        for q in [2u64, 3, 5, 7] {
            let set = singer(q).map_err(|e| e.to_string())?.full_embedding();
            let v = set.ambient() as u64;
            let p = dft_profile(&RealSignal::indicator(&set), 2 * v).map_err(|e| e.to_string())?;
            for a in 1..v as usize {
                let m2 = p.values[2 * a].norm_sqr();
                ensure((m2 - q as f64).abs() < 1e-9, || {
                    format!("q={q}, a={a}: {m2}")
                })?;
            }
        }
        Ok(())
    });
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    s.check("van der Corput inequality on random signals", || {
        for _ in 0..200 {
            let n = rng.gen_range(1..80);
            let f = RealSignal::new(n, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .map_err(|e| e.to_string())?;
            let h = rng.gen_range(1.0..=n as f64);
            let c = van_der_corput_check(&f, h).map_err(|e| e.to_string())?;
            ensure(c.le_holds(INEQUALITY_REL_TOL), || format!("{c:?} at H={h}"))?;
        }
        Ok(())
    });
    s.check("Fejér mass inequality on Sidon sets", || {
        for (id, set) in sidon_sets() {
            let n = set.ambient() as f64;
            for h in [n.powf(2.0 / 3.0), n.powf(0.75)] {
                let c = fejer_mass_check(&set, h.max(1.0)).map_err(|e| e.to_string())?;
                ensure(c.ge_holds(INEQUALITY_REL_TOL), || {
                    format!("{id}, H={h}: {c:?}")
                })?;
            }
        }
        Ok(())
    });
    s
}

fn equidistribution_suite() -> Suite {
    let mut s = Suite::new("equidistribution");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    s.check("interval and residue discrepancies telescope", || {
        for _ in 0..50 {
            let set = random_set(&mut rng, 300, 0.2);
            let n = set.ambient();
            let mut lo = 1;
            let mut sum = Ratio::from_integer(0);
            while lo <= n {
                let hi = (lo + rng.gen_range(0..20)).min(n);
                sum += interval_discrepancy_exact(&set, &IntInterval::new(lo, hi))
                    .map_err(|e| e.to_string())?;
                lo = hi + 1;
            }
            ensure(sum == Ratio::from_integer(0), || {
                format!("interval sum {sum}")
            })?;
            if !set.is_empty() {
                let q = rng.gen_range(1..15u64);
                let mut sum = Ratio::from_integer(0);
                for a in 0..q as i64 {
                    sum += residue_discrepancy_exact(&set, q, a).map_err(|e| e.to_string())?;
                }
                ensure(sum == Ratio::from_integer(0), || {
                    format!("residue sum {sum}")
                })?;
            }
        }
        Ok(())
    });
    s.check("Fejér smoothing of tents within bound", || {
        for k in [1.0, 5.0] {
            let f = LipschitzGridFunction::tent(1, 1024, k).map_err(|e| e.to_string())?;
            for m in [8, 64] {
                let g = fejer_smooth(&f, m).map_err(|e| e.to_string())?;
                let err = g.sup_distance(&f);
                let bound = fejer_smoothing_bound(k, m);
                ensure(err <= bound, || format!("K={k}, M={m}: {err} > {bound}"))?;
                ensure(g.range_violation().is_none(), || {
                    format!("K={k}, M={m}: out of range")
                })?;
            }
        }
        Ok(())
    });
    s.check("trigonometric degree", || {
        let got =
            trig_degree(Ratio::from_integer(2), Ratio::new(1, 2)).map_err(|e| e.to_string())?;
        ensure(got == 864, || format!("got {got}"))
    });
    s
}

fn equations_suite() -> Suite {
    let mut s = Suite::new("equations");
    let eq = |c: &[i64]| LinearEquation::new(c.to_vec()).map_err(|e| e.to_string());
    s.check("fixed solution counts", || {
        let small = IntegerSet::interval(3).map_err(|e| e.to_string())?;
        let a = total_count(&eq(&[1, 1, -2])?, &small).map_err(|e| e.to_string())?;
        let b = total_count(&eq(&[1, 1, 1, 1, -4])?, &small).map_err(|e| e.to_string())?;
        ensure((a, b) == (5, 21), || format!("got ({a}, {b})"))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    s.check("convolution matches brute force", || {
        for _ in 0..50 {
            let len = rng.gen_range(2..=4);
            let c: Vec<i64> = (0..len)
                .map(|_| rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let set = random_set(&mut rng, 60, 0.3);
            let e = eq(&c)?;
            let brute = count_solutions_bruteforce(
                &e,
                &vec![set.elements(); len],
                DEFAULT_BRUTEFORCE_STEPS,
            )
            .map_err(|e| e.to_string())?;
            let conv = count_solutions_convolution(&e, &vec![IntWeights::indicator(&set); len])
                .map_err(|e| e.to_string())?;
            ensure(conv == brute as i128, || {
                format!("{c:?}: {conv} vs {brute}")
            })?;
        }
        Ok(())
    });
    s.check("odd sets avoid x1+x2+x3+x4 = x5", || {
        let e = eq(&[1, 1, 1, 1, -1])?;
        for k in [5, 10, 20] {
            let set = odd_double(&mian_chowla(k).map_err(|e| e.to_string())?);
            let n = total_count(&e, &set).map_err(|e| e.to_string())?;
            ensure(n == 0, || format!("k={k}: {n} solutions"))?;
        }
        Ok(())
    });
    s
}

/// Runs every suite; a failing check never stops the remaining ones.
pub fn run_selfcheck(cache: &SingerCache) -> Vec<SuiteResult> {
    let builders: Vec<Box<dyn Fn() -> Suite + '_>> = vec![
        Box::new(core_suite),
        Box::new(constructions_suite),
        Box::new(move || cache_suite(cache)),
        Box::new(fourier_suite),
        Box::new(equidistribution_suite),
        Box::new(equations_suite),
    ];
    builders
        .iter()
        .map(|build| {
            let start = Instant::now();
            let suite = build();
            SuiteResult {
                name: suite.name,
                checks: suite.checks,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_cache_passes_and_corruption_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SingerCache::new(dir.path());
        cache.store(&singer(3).unwrap()).unwrap();
        let first = run_selfcheck(&cache);
        assert!(first.iter().all(SuiteResult::passed), "{first:?}");

        std::fs::write(
            cache.path_for(3),
            "{\"q\":3,\"v\":13,\"residues\":[0,1,2,3]}",
        )
        .unwrap();
        let second = run_selfcheck(&cache);
        assert_eq!(second.len(), first.len());
        let failed: Vec<&str> = second
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name)
            .collect();
        assert_eq!(failed, ["cache"]);
    }
}

//! Seeded Monte Carlo simulation of the two-site measurement.
//!
//! Every setting combination draws from its own ChaCha8 stream: the seed
//! selects the key and the combination index selects the stream, so the
//! four runs behind an X/Y estimate are independent and give the same counts
//! whatever order or thread they run on. Each shot inverts the cumulative
//! distribution over the fixed outcome order `(+,+), (+,-), (-,+), (-,-)`
//! with a 53-bit uniform in `[0, 1)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{DensityMatrix, SettingPair, UnitVector3};
use crate::correlations::{joint_distribution, XYPoint};
use crate::error::{Error, Result};

/// Stream ids of the four setting combinations.
pub const STREAM_A_B: u64 = 0;
pub const STREAM_A_BPERP: u64 = 1;
pub const STREAM_APERP_B: u64 = 2;
pub const STREAM_APERP_BPERP: u64 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleResult {
    /// `counts[0][0]` is `(+,+)`, `counts[0][1]` is `(+,-)`, and so on.
    pub counts: [[u64; 2]; 2],
    pub n: u64,
    pub empirical_correlation: f64,
    pub standard_error: f64,
}

impl SampleResult {
    fn from_counts(counts: [[u64; 2]; 2]) -> Self {
        let n: u64 = counts.iter().flatten().sum();
        let same = counts[0][0] + counts[1][1];
        let diff = counts[0][1] + counts[1][0];
        let e = (same as f64 - diff as f64) / n as f64;
        Self {
            counts,
            n,
            empirical_correlation: e,
            standard_error: ((1.0 - e * e).max(0.0) / n as f64).sqrt(),
        }
    }

    /// Counts in the fixed outcome order.
    pub fn flat_counts(&self) -> [u64; 4] {
        [self.counts[0][0], self.counts[0][1], self.counts[1][0], self.counts[1][1]]
    }
}

fn cumulative(dist: [f64; 4]) -> [f64; 3] {
    let total: f64 = dist.iter().sum();
    let p = dist.map(|v| v.max(0.0) / total);
    [p[0], p[0] + p[1], p[0] + p[1] + p[2]]
}

/// Draws `n` outcome pairs on stream `stream` of key `seed`.
pub fn sample_outcomes_on_stream(
    rho: &DensityMatrix,
    a: UnitVector3,
    b: UnitVector3,
    n: u64,
    seed: u64,
    stream: u64,
) -> Result<SampleResult> {
    if n == 0 {
        return Err(Error::InvalidConfig("shot count must be at least 1".into()));
    }
    let cdf = cumulative(joint_distribution(rho, a, b)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut flat = [0u64; 4];
    for _ in 0..n {
        let u: f64 = rng.random();
        let k = if u < cdf[0] {
            0
        } else if u < cdf[1] {
            1
        } else if u < cdf[2] {
            2
        } else {
            3
        };
        flat[k] += 1;
    }
    Ok(SampleResult::from_counts([[flat[0], flat[1]], [flat[2], flat[3]]]))
}

pub fn sample_outcomes(
    rho: &DensityMatrix,
    a: UnitVector3,
    b: UnitVector3,
    n: u64,
    seed: u64,
) -> Result<SampleResult> {
    sample_outcomes_on_stream(rho, a, b, n, seed, STREAM_A_B)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalXy {
    pub xy: XYPoint,
    pub se_x: f64,
    pub se_y: f64,
    /// Runs for `(a,b), (a,b_perp), (a_perp,b), (a_perp,b_perp)`.
    pub runs: [SampleResult; 4],
}

impl EmpiricalXy {
    /// Propagated standard error of `X^2 + Y^2`.
    pub fn se_sum_of_squares(&self) -> f64 {
        let (x, y) = (self.xy.x_val, self.xy.y_val);
        ((2.0 * x * self.se_x).powi(2) + (2.0 * y * self.se_y).powi(2)).sqrt()
    }

    /// Standard error of `X +- Y`.
    pub fn se_pm(&self) -> f64 {
        (self.se_x.powi(2) + self.se_y.powi(2)).sqrt()
    }
}

/// Four independent runs combined into `X`, `Y`, errors added in quadrature.
pub fn empirical_xy(
    rho: &DensityMatrix,
    pa: &SettingPair,
    pb: &SettingPair,
    n_per_setting: u64,
    seed: u64,
) -> Result<EmpiricalXy> {
    let combos = [
        (pa.main(), pb.main(), STREAM_A_B),
        (pa.main(), pb.perp(), STREAM_A_BPERP),
        (pa.perp(), pb.main(), STREAM_APERP_B),
        (pa.perp(), pb.perp(), STREAM_APERP_BPERP),
    ];
    let runs: Vec<Result<SampleResult>> = std::thread::scope(|s| {
        let handles: Vec<_> = combos
            .iter()
            .map(|&(a, b, stream)| {
                s.spawn(move || sample_outcomes_on_stream(rho, a, b, n_per_setting, seed, stream))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling thread panicked")).collect()
    });
    let runs: Vec<SampleResult> = runs.into_iter().collect::<Result<_>>()?;
    let runs: [SampleResult; 4] = runs.try_into().expect("four runs");
    let e = |k: usize| runs[k].empirical_correlation;
    let se = |k: usize| runs[k].standard_error;
    let xy = XYPoint::new(e(1) + e(2), e(0) - e(3));
    let se_x = (se(1).powi(2) + se(2).powi(2)).sqrt();
    let se_y = (se(0).powi(2) + se(3).powi(2)).sqrt();
    Ok(EmpiricalXy { xy, se_x, se_y, runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_singlet, make_werner};
    use crate::correlations::correlation;
    use crate::random;
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn singlet_along_z_is_perfectly_anticorrelated() {
        let z = UnitVector3::z_axis();
        let r = sample_outcomes(&make_singlet(), z, z, 100_000, 7).unwrap();
        assert_eq!(r.empirical_correlation, -1.0);
        assert_eq!(r.counts[0][0] + r.counts[1][1], 0);
        assert_eq!(r.standard_error, 0.0);
    }

    #[test]
    fn single_shot() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random::state(&mut rng);
        let r = sample_outcomes(&rho, UnitVector3::x_axis(), UnitVector3::y_axis(), 1, 3).unwrap();
        assert_eq!(r.flat_counts().iter().sum::<u64>(), 1);
        assert_eq!(r.n, 1);
        assert!(sample_outcomes(&rho, UnitVector3::x_axis(), UnitVector3::y_axis(), 0, 3).is_err());
    }

    #[test]
    fn maximally_mixed_is_uncorrelated() {
        let rho = make_werner(0.0).unwrap();
        let z = UnitVector3::z_axis();
        let mut inside = 0;
        for seed in 0..200 {
            let r = sample_outcomes(&rho, z, z, 100_000, seed).unwrap();
            if r.empirical_correlation.abs() <= 5.0 * r.standard_error {
                inside += 1;
            }
        }
        assert_eq!(inside, 200);
    }

    #[test]
    fn reproducible_and_stream_separated() {
        let rho = make_werner(0.6).unwrap();
        let (a, b) = (UnitVector3::x_axis(), UnitVector3::z_axis());
        let r1 = sample_outcomes(&rho, a, b, 10_000, 42).unwrap();
        let r2 = sample_outcomes(&rho, a, b, 10_000, 42).unwrap();
        assert_eq!(r1, r2);
        let other = sample_outcomes_on_stream(&rho, a, b, 10_000, 42, 1).unwrap();
        assert_ne!(r1.counts, other.counts);
    }

    #[test]
    fn counts_converge_with_shots() {
        let rho = make_werner(0.7).unwrap();
        let (a, b) = (UnitVector3::z_axis(), UnitVector3::normalized([1.0, 0.0, 1.0]).unwrap());
        let exact = correlation(&rho, a, b).unwrap();
        let mut within = 0;
        let mut mean_err = Vec::new();
        let sizes = [1_000u64, 10_000, 100_000, 1_000_000];
        for &n in &sizes {
            let mut err_sum = 0.0;
            for seed in 0..100u64 {
                let r = sample_outcomes(&rho, a, b, n, seed).unwrap();
                let err = (r.empirical_correlation - exact).abs();
                err_sum += err;
                if err <= 5.0 * r.standard_error {
                    within += 1;
                }
            }
            mean_err.push(err_sum / 100.0);
        }
        assert!(mean_err.windows(2).all(|w| w[1] < w[0]), "{mean_err:?}");
        assert!(within as f64 >= 0.99 * (100 * sizes.len()) as f64);
    }

    #[test]
    fn chi_square_goodness_of_fit() {
        let critical = ChiSquared::new(3.0).unwrap().inverse_cdf(1.0 - 1e-6);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for seed in 0..20u64 {
            let rho = random::state(&mut rng);
            let (a, b) = (random::unit_vector(&mut rng), random::unit_vector(&mut rng));
            let n = 100_000u64;
            let r = sample_outcomes(&rho, a, b, n, seed).unwrap();
            let p = joint_distribution(&rho, a, b).unwrap();
            let stat: f64 = r
                .flat_counts()
                .iter()
                .zip(p)
                .filter(|(_, p)| *p > 0.0)
                .map(|(&c, p)| {
                    let expect = p * n as f64;
                    (c as f64 - expect).powi(2) / expect
                })
                .sum();
            assert!(stat < critical, "seed {seed}: chi2 {stat} >= {critical}");
        }
    }

    #[test]
    fn empirical_xy_near_exact_values() {
        let rho = make_werner(0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (pa, pb) = (random::setting_pair(&mut rng), random::setting_pair(&mut rng));
        let est = empirical_xy(&rho, &pa, &pb, 100_000, 9).unwrap();
        assert!(est.xy.x_val.abs() <= 5.0 * est.se_x);
        assert!(est.xy.y_val.abs() <= 5.0 * est.se_y);
        // run order does not matter: each run equals its standalone stream
        let solo = sample_outcomes_on_stream(&rho, pa.perp(), pb.main(), 100_000, 9, STREAM_APERP_B).unwrap();
        assert_eq!(est.runs[2], solo);
    }
}

//! Setting optimization and threshold search over one-parameter state families.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_separable_ppt, make_werner, DensityMatrix, SettingPair, UnitVector3};
use crate::correlations::{correlation, xy_quantities, Bound, XYPoint, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Quantity maximized over the two setting pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// `X^2 + Y^2`
    SumOfSquares,
    /// `max(|X + Y|, |X - Y|)`
    MaxAbsPm,
    /// `|X|`
    AbsX,
}

impl Objective {
    pub fn value(self, xy: &XYPoint) -> f64 {
        match self {
            Objective::SumOfSquares => xy.sum_of_squares(),
            Objective::MaxAbsPm => xy.max_abs_pm(),
            Objective::AbsX => xy.x_val.abs(),
        }
    }

    /// The objective whose maximum decides `bound`.
    pub fn for_bound(bound: Bound) -> Self {
        match bound {
            Bound::QuantumMechanics | Bound::QuantumLocality => Objective::SumOfSquares,
            Bound::Locality => Objective::MaxAbsPm,
            // max |Y| equals max |X| after relabeling b -> -b_perp, b_perp -> b
            Bound::Realism => Objective::AbsX,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::SumOfSquares => "sum-of-squares",
            Objective::MaxAbsPm => "max-abs-pm",
            Objective::AbsX => "abs-x",
        }
    }
}

/// Euler angles `(alpha, beta, gamma)` of `Rz Ry Rz` per site; the pair is
/// the first two columns of the rotation, with `perp` negated when `flip` is set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameParams {
    pub angles_a: [f64; 3],
    pub angles_b: [f64; 3],
    pub flip_a: bool,
    pub flip_b: bool,
}

fn frame_columns(angles: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let (sa, ca) = angles[0].sin_cos();
    let (sb, cb) = angles[1].sin_cos();
    let (sg, cg) = angles[2].sin_cos();
    let col = |u: f64, v: f64| {
        let (p, q, r) = (cb * u, v, -sb * u);
        [ca * p - sa * q, sa * p + ca * q, r]
    };
    (col(cg, sg), col(-sg, cg))
}

impl FrameParams {
    pub fn from_slice(angles: &[f64], flip_a: bool, flip_b: bool) -> Self {
        Self {
            angles_a: [angles[0], angles[1], angles[2]],
            angles_b: [angles[3], angles[4], angles[5]],
            flip_a,
            flip_b,
        }
    }

    fn raw_pair(angles: &[f64; 3], flip: bool) -> ([f64; 3], [f64; 3]) {
        let (main, perp) = frame_columns(angles);
        (main, if flip { perp.map(|c| -c) } else { perp })
    }

    pub fn decode(&self) -> Result<(SettingPair, SettingPair)> {
        let side = |angles: &[f64; 3], flip: bool| {
            let (m, p) = Self::raw_pair(angles, flip);
            SettingPair::new(UnitVector3::normalized(m)?, UnitVector3::normalized(p)?)
        };
        Ok((side(&self.angles_a, self.flip_a)?, side(&self.angles_b, self.flip_b)?))
    }
}

/// `T_ij = Tr[rho sigma_i (x) sigma_j]`, so `E(a, b) = a^T T b`.
#[derive(Clone, Copy, Debug)]
struct CorrelationTensor([[f64; 3]; 3]);

impl CorrelationTensor {
    fn of(rho: &DensityMatrix) -> Result<Self> {
        let axes = [UnitVector3::x_axis(), UnitVector3::y_axis(), UnitVector3::z_axis()];
        let mut t = [[0.0; 3]; 3];
        for (i, a) in axes.iter().enumerate() {
            for (j, b) in axes.iter().enumerate() {
                t[i][j] = correlation(rho, *a, *b)?;
            }
        }
        Ok(Self(t))
    }

    fn corr(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        let mut e = 0.0;
        for i in 0..3 {
            e += a[i] * (self.0[i][0] * b[0] + self.0[i][1] * b[1] + self.0[i][2] * b[2]);
        }
        e
    }

    fn xy(&self, p: &FrameParams) -> XYPoint {
        let (a, ap) = FrameParams::raw_pair(&p.angles_a, p.flip_a);
        let (b, bp) = FrameParams::raw_pair(&p.angles_b, p.flip_b);
        XYPoint::new(self.corr(&a, &bp) + self.corr(&ap, &b), self.corr(&a, &b) - self.corr(&ap, &bp))
    }
}

/// Derivative-free simplex minimizer with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
#[derive(Clone, Copy, Debug)]
pub struct NelderMead {
    pub initial_step: f64,
    /// Stop once every vertex lies within this distance (max norm) of the best.
    pub xtol: f64,
    pub max_iters: usize,
}

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F: FnMut(&[f64]) -> f64>(&self, mut f: F, x0: &[f64]) -> Minimum {
        let n = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() { f64::INFINITY } else { v }
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), eval(x0, &mut evals)));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.initial_step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }
        let mut converged = false;
        for _ in 0..self.max_iters {
            simplex.sort_by(|l, r| l.1.total_cmp(&r.1));
            let size = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if size <= self.xtol {
                converged = true;
                break;
            }
            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }
            let worst = simplex[n].clone();
            let along = |t: f64| -> Vec<f64> {
                centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (w - c)).collect()
            };
            let xr = along(-1.0);
            let fr = eval(&xr, &mut evals);
            if fr < simplex[0].1 {
                let xe = along(-2.0);
                let fe = eval(&xe, &mut evals);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let xc = along(-0.5);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < worst.1.min(fr) {
                simplex[n] = (xc, fc);
                continue;
            }
            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                for (xi, bi) in vertex.0.iter_mut().zip(&best) {
                    *xi = bi + 0.5 * (*xi - bi);
                }
                vertex.1 = eval(&vertex.0, &mut evals);
            }
        }
        simplex.sort_by(|l, r| l.1.total_cmp(&r.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum { x, value, evaluations: evals, converged }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Simplex-size tolerance in radians.
    pub xtol: f64,
    pub initial_step: f64,
    pub seed: u64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self { restarts: 64, max_iters: 5000, xtol: 1e-8, initial_step: 0.5, seed: 0 }
    }
}

impl OptimizeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be positive".into()));
        }
        if !(self.xtol > 0.0) || !(self.initial_step > 0.0) {
            return Err(Error::InvalidConfig("step tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizeResult {
    pub objective: Objective,
    pub best_value: f64,
    pub xy: XYPoint,
    pub settings_a: [[f64; 3]; 2],
    pub settings_b: [[f64; 3]; 2],
    pub params: FrameParams,
    pub evaluations: usize,
    pub converged: bool,
    /// Restart that produced the best value.
    pub best_restart: usize,
}

impl OptimizeResult {
    pub fn setting_pairs(&self) -> Result<(SettingPair, SettingPair)> {
        Ok((
            SettingPair::from_arrays(self.settings_a[0], self.settings_a[1])?,
            SettingPair::from_arrays(self.settings_b[0], self.settings_b[1])?,
        ))
    }
}

const HANDEDNESS: [(bool, bool); 4] = [(false, false), (false, true), (true, false), (true, true)];
const POLISH_ROUNDS: usize = 3;

/// Multi-start Nelder-Mead over the six frame angles, for each of the four
/// handedness combinations. Starting points come from one seeded stream in
/// restart order, so more restarts never lower the result.
pub fn maximize(rho: &DensityMatrix, obj: Objective, config: &OptimizeConfig) -> Result<OptimizeResult> {
    config.validate()?;
    let tensor = CorrelationTensor::of(rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let nm = NelderMead { initial_step: config.initial_step, xtol: config.xtol, max_iters: config.max_iters };
    let mut evaluations = 0usize;
    let mut best: Option<(f64, FrameParams, bool, usize)> = None;
    for restart in 0..config.restarts {
        let start: Vec<f64> = (0..6).map(|_| rng.random::<f64>() * TAU).collect();
        for &(flip_a, flip_b) in &HANDEDNESS {
            let objective = |x: &[f64]| -obj.value(&tensor.xy(&FrameParams::from_slice(x, flip_a, flip_b)));
            let mut m = nm.minimize(objective, &start);
            evaluations += m.evaluations;
            // restarting from the incumbent escapes a collapsed simplex
            let mut polish_nm = nm;
            for _ in 0..POLISH_ROUNDS {
                polish_nm.initial_step *= 0.1;
                let p = polish_nm.minimize(objective, &m.x);
                evaluations += p.evaluations;
                let improved = p.value < m.value - 1e-15;
                if p.value <= m.value {
                    m = p;
                }
                if !improved {
                    break;
                }
            }
            let value = -m.value;
            if best.as_ref().map_or(true, |(b, ..)| value > *b) {
                best = Some((value, FrameParams::from_slice(&m.x, flip_a, flip_b), m.converged, restart));
            }
        }
    }
    let (_, params, converged, best_restart) = best.expect("at least one restart");
    let (pa, pb) = params.decode()?;
    let xy = xy_quantities(rho, &pa, &pb)?;
    Ok(OptimizeResult {
        objective: obj,
        best_value: obj.value(&xy),
        xy,
        settings_a: [pa.main().to_array(), pa.perp().to_array()],
        settings_b: [pb.main().to_array(), pb.perp().to_array()],
        params,
        evaluations,
        converged,
        best_restart,
    })
}

/// Maximized objective along the Werner family.
pub fn werner_max_curve(x_grid: &[f64], obj: Objective, config: &OptimizeConfig) -> Result<Vec<(f64, f64)>> {
    x_grid
        .iter()
        .map(|&x| Ok((x, maximize(&make_werner(x)?, obj, config)?.best_value)))
        .collect()
}

pub const PROBE_POINTS: usize = 9;

/// Bisection for the point where `predicate(family(t))` turns from false to true.
///
/// Nine equally spaced probes over `[lo, hi]` must read false...false,
/// true...true with both values present; bisection then runs inside the
/// bracketing probe interval until it is narrower than `tol`.
pub fn find_threshold<F, P>(family: F, mut predicate: P, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<DensityMatrix>,
    P: FnMut(&DensityMatrix) -> Result<bool>,
{
    if !(tol > 0.0) || !(hi > lo) {
        return Err(Error::InvalidConfig(format!("need lo < hi and tol > 0 (lo={lo}, hi={hi}, tol={tol})")));
    }
    let probes: Vec<f64> = (0..PROBE_POINTS)
        .map(|k| lo + (hi - lo) * k as f64 / (PROBE_POINTS - 1) as f64)
        .collect();
    let flags = probes.iter().map(|&t| predicate(&family(t)?)).collect::<Result<Vec<bool>>>()?;
    let first_true = flags.iter().position(|&f| f);
    let monotone = match first_true {
        Some(k) if k > 0 => flags[k..].iter().all(|&f| f),
        _ => false,
    };
    if !monotone {
        let pattern: String = flags.iter().map(|&f| if f { 'T' } else { 'F' }).collect();
        return Err(Error::NotMonotone(format!("probe pattern {pattern} over [{lo}, {hi}]")));
    }
    let k = first_true.expect("checked above");
    let (mut a, mut b) = (probes[k - 1], probes[k]);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if predicate(&family(mid)?)? {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Predicate: the state fails the positive-partial-transpose test.
pub fn ppt_entangled(tol: f64) -> impl FnMut(&DensityMatrix) -> Result<bool> {
    move |rho| Ok(!is_separable_ppt(rho, tol))
}

/// Predicate: optimized settings violate `bound`.
pub fn violates_bound(bound: Bound, config: OptimizeConfig) -> impl FnMut(&DensityMatrix) -> Result<bool> {
    move |rho| {
        let r = maximize(rho, Objective::for_bound(bound), &config)?;
        Ok(!bound.satisfied_by(&r.xy, DEFAULT_TOL))
    }
}

/// Flip points of the Werner family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerThresholds {
    pub entanglement: f64,
    pub quantum_locality: f64,
    pub locality: f64,
}

pub fn werner_thresholds(config: &OptimizeConfig, tol: f64) -> Result<WernerThresholds> {
    Ok(WernerThresholds {
        entanglement: find_threshold(make_werner, ppt_entangled(1e-12), 0.0, 1.0, tol)?,
        quantum_locality: find_threshold(make_werner, violates_bound(Bound::QuantumLocality, *config), 0.0, 1.0, tol)?,
        locality: find_threshold(make_werner, violates_bound(Bound::Locality, *config), 0.0, 1.0, tol)?,
    })
}

/// Optimized maxima of every objective plus the PPT verdict for one state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateSurvey {
    pub max_sum_of_squares: f64,
    pub max_abs_pm: f64,
    pub max_abs_x: f64,
    pub ppt: bool,
    pub violates_quantum_mechanics: bool,
    pub violates_realism: bool,
    pub violates_locality: bool,
    pub violates_quantum_locality: bool,
}

impl StateSurvey {
    pub fn any_violation(&self) -> bool {
        self.violates_quantum_mechanics
            || self.violates_realism
            || self.violates_locality
            || self.violates_quantum_locality
    }

    /// Entangled, detected by the quadratic bound but not by the CHSH form.
    pub fn hidden_nonlocality_detected(&self) -> bool {
        !self.ppt && self.violates_quantum_locality && !self.violates_locality
    }

    /// Entangled but no inequality of the suite is violated.
    pub fn undetected_entanglement(&self) -> bool {
        !self.ppt && !self.any_violation()
    }

    pub fn max_for(&self, obj: Objective) -> f64 {
        match obj {
            Objective::SumOfSquares => self.max_sum_of_squares,
            Objective::MaxAbsPm => self.max_abs_pm,
            Objective::AbsX => self.max_abs_x,
        }
    }
}

pub fn survey_state(rho: &DensityMatrix, config: &OptimizeConfig) -> Result<StateSurvey> {
    let sos = maximize(rho, Objective::SumOfSquares, config)?;
    let pm = maximize(rho, Objective::MaxAbsPm, config)?;
    let ax = maximize(rho, Objective::AbsX, config)?;
    let violated = |bound: Bound, r: &OptimizeResult| !bound.satisfied_by(&r.xy, DEFAULT_TOL);
    Ok(StateSurvey {
        max_sum_of_squares: sos.best_value,
        max_abs_pm: pm.best_value,
        max_abs_x: ax.best_value,
        ppt: is_separable_ppt(rho, DEFAULT_TOL),
        violates_quantum_mechanics: violated(Bound::QuantumMechanics, &sos),
        violates_realism: violated(Bound::Realism, &ax),
        violates_locality: violated(Bound::Locality, &pm),
        violates_quantum_locality: violated(Bound::QuantumLocality, &sos),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_product, make_singlet};
    use std::f64::consts::SQRT_2;

    fn quick() -> OptimizeConfig {
        OptimizeConfig { restarts: 8, ..OptimizeConfig::default() }
    }

    #[test]
    fn nelder_mead_on_quadratic() {
        let nm = NelderMead { initial_step: 1.0, xtol: 1e-10, max_iters: 10_000 };
        let m = nm.minimize(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5, &[0.0, 0.0]);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-8 && (m.x[1] + 2.0).abs() < 1e-8);
        assert!((m.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn nelder_mead_on_rosenbrock() {
        let nm = NelderMead { initial_step: 0.5, xtol: 1e-10, max_iters: 20_000 };
        let m = nm.minimize(|x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2), &[-1.2, 1.0]);
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn frames_are_orthonormal() {
        let p = FrameParams { angles_a: [0.3, 1.1, -2.0], angles_b: [4.0, 0.2, 0.9], flip_a: true, flip_b: false };
        let (pa, pb) = p.decode().unwrap();
        assert!(pa.main().dot(pa.perp()).abs() < 1e-15);
        assert!(pb.main().dot(pb.perp()).abs() < 1e-15);
    }

    #[test]
    fn tensor_matches_trace_path() {
        let rho = make_werner(0.37).unwrap();
        let t = CorrelationTensor::of(&rho).unwrap();
        let p = FrameParams { angles_a: [0.3, 1.1, -2.0], angles_b: [4.0, 0.2, 0.9], flip_a: false, flip_b: true };
        let (pa, pb) = p.decode().unwrap();
        let fast = t.xy(&p);
        let slow = xy_quantities(&rho, &pa, &pb).unwrap();
        assert!((fast.x_val - slow.x_val).abs() < 1e-14 && (fast.y_val - slow.y_val).abs() < 1e-14);
    }

    #[test]
    fn singlet_maxima() {
        let cfg = quick();
        let r = maximize(&make_singlet(), Objective::SumOfSquares, &cfg).unwrap();
        assert!((r.best_value - 4.0).abs() < 1e-6, "{}", r.best_value);
        let r = maximize(&make_singlet(), Objective::MaxAbsPm, &cfg).unwrap();
        assert!((r.best_value - 2.0 * SQRT_2).abs() < 1e-6, "{}", r.best_value);
        let r = maximize(&make_singlet(), Objective::AbsX, &cfg).unwrap();
        assert!((r.best_value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn pure_product_reaches_one() {
        // grid-search oracle over coplanar settings: (<a>^2 + <a_perp>^2)(<b>^2 + <b_perp>^2)
        let rho = make_product([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]).unwrap();
        let mut oracle = 0.0f64;
        for i in 0..=90 {
            for j in 0..=90 {
                let (ta, tb) = (i as f64 * std::f64::consts::PI / 90.0, j as f64 * std::f64::consts::PI / 90.0);
                let pa = SettingPair::from_arrays([ta.sin(), 0.0, ta.cos()], [ta.cos(), 0.0, -ta.sin()]).unwrap();
                let pb = SettingPair::from_arrays([tb.sin(), 0.0, tb.cos()], [-tb.cos(), 0.0, tb.sin()]).unwrap();
                oracle = oracle.max(xy_quantities(&rho, &pa, &pb).unwrap().sum_of_squares());
            }
        }
        assert!((oracle - 1.0).abs() < 1e-12);
        let r = maximize(&rho, Objective::SumOfSquares, &quick()).unwrap();
        assert!((r.best_value - oracle).abs() < 1e-6);
    }

    #[test]
    fn result_closure_and_monotone_restarts() {
        let rho = make_werner(0.6).unwrap();
        let mut last = f64::NEG_INFINITY;
        for restarts in [1, 2, 4] {
            let cfg = OptimizeConfig { restarts, ..OptimizeConfig::default() };
            let r = maximize(&rho, Objective::MaxAbsPm, &cfg).unwrap();
            let (pa, pb) = r.setting_pairs().unwrap();
            let again = Objective::MaxAbsPm.value(&xy_quantities(&rho, &pa, &pb).unwrap());
            assert!((again - r.best_value).abs() < 1e-12);
            assert!(r.best_value >= last);
            last = r.best_value;
        }
    }

    #[test]
    fn invalid_config_rejected() {
        let rho = make_singlet();
        for cfg in [
            OptimizeConfig { restarts: 0, ..OptimizeConfig::default() },
            OptimizeConfig { max_iters: 0, ..OptimizeConfig::default() },
            OptimizeConfig { xtol: 0.0, ..OptimizeConfig::default() },
        ] {
            assert!(matches!(maximize(&rho, Objective::SumOfSquares, &cfg), Err(Error::InvalidConfig(_))));
        }
    }

    #[test]
    fn werner_curve_points() {
        let curve = werner_max_curve(&[0.0, 0.5, 1.0], Objective::SumOfSquares, &quick()).unwrap();
        for ((x, v), want) in curve.iter().zip([0.0, 1.0, 4.0]) {
            assert!((v - want).abs() < 1e-5, "x={x}: {v}");
        }
        assert!(werner_max_curve(&[1.2], Objective::SumOfSquares, &quick()).is_err());
    }

    #[test]
    fn threshold_of_entanglement() {
        let t = find_threshold(make_werner, ppt_entangled(1e-12), 0.0, 1.0, 1e-9).unwrap();
        assert!((t - 1.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn threshold_rejects_non_monotone_predicates() {
        let band = |rho: &DensityMatrix| {
            let x = -correlation(rho, UnitVector3::z_axis(), UnitVector3::z_axis())?;
            Ok(x > 0.3 && x < 0.6)
        };
        assert!(matches!(find_threshold(make_werner, band, 0.0, 1.0, 1e-6), Err(Error::NotMonotone(_))));
        let never = |_: &DensityMatrix| Ok(false);
        assert!(matches!(find_threshold(make_werner, never, 0.0, 1.0, 1e-6), Err(Error::NotMonotone(_))));
        let always = |_: &DensityMatrix| Ok(true);
        assert!(find_threshold(make_werner, always, 0.0, 1.0, 1e-6).is_err());
        assert!(find_threshold(make_werner, ppt_entangled(1e-12), 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn survey_of_werner_states() {
        let s = survey_state(&make_werner(0.6).unwrap(), &quick()).unwrap();
        assert!(s.violates_quantum_locality && !s.violates_locality && !s.ppt);
        assert!(s.hidden_nonlocality_detected());
        let s = survey_state(&make_werner(0.4).unwrap(), &quick()).unwrap();
        assert!(s.undetected_entanglement());
        let s = survey_state(&make_werner(0.2).unwrap(), &quick()).unwrap();
        assert!(s.ppt && !s.any_violation());
    }
}

//! Common-cause and realistic hidden-variable models.
//!
//! A [`CommonCauseModel`] assigns each cause `mu` a weight `P(mu)` and local
//! response data; conditioned on a cause the two sites answer independently,
//! so every joint probability factorizes as `sum_mu P(mu) P(a_i|mu) P(b_j|mu)`.
//! Three payload variants cover mean-value tables, local quantum states and
//! deterministic responses over a finite hidden variable. A
//! [`NonlocalRealisticModel`] drops the factorization and stores joint
//! responses directly.

use crate::algebra::{DensityMatrix, QubitState, SettingPair, UnitVector3};
use crate::correlations::{correlation, joint_distribution, JOINT_ORDER};
use crate::error::{Error, Result};
use crate::random::SeparableTerm;

/// Tolerance on weight normalization.
pub const WEIGHT_TOL: f64 = 1e-12;
/// Componentwise tolerance when looking a setting up in a table.
pub const SETTING_MATCH_TOL: f64 = 1e-9;
const RESPONSE_TOL: f64 = 1e-12;

fn check_weights<'a>(weights: impl Iterator<Item = &'a f64>, what: &str) -> Result<()> {
    let mut total = 0.0;
    let mut count = 0usize;
    for &w in weights {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidModel(format!("{what} weight {w} is negative or not finite")));
        }
        total += w;
        count += 1;
    }
    if count == 0 {
        return Err(Error::InvalidModel(format!("no {what} entries")));
    }
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::InvalidModel(format!("{what} weights sum to {total}, expected 1")));
    }
    Ok(())
}

/// Values indexed by measurement direction.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SettingTable {
    entries: Vec<(UnitVector3, f64)>,
}

impl SettingTable {
    pub fn new(entries: Vec<(UnitVector3, f64)>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[(UnitVector3, f64)] {
        &self.entries
    }

    pub fn get(&self, v: UnitVector3) -> Result<f64> {
        self.entries
            .iter()
            .find(|(k, _)| k.approx_eq(v, SETTING_MATCH_TOL))
            .map(|(_, val)| *val)
            .ok_or(Error::UnknownSetting(v.x(), v.y(), v.z()))
    }

    fn check_means(&self, what: &str) -> Result<()> {
        for (v, m) in &self.entries {
            if !m.is_finite() || m.abs() > 1.0 + RESPONSE_TOL {
                return Err(Error::InvalidModel(format!(
                    "{what} mean {m} at {:?} lies outside [-1, 1]",
                    v.to_array()
                )));
            }
        }
        Ok(())
    }

    fn check_signs(&self, what: &str) -> Result<()> {
        for (v, r) in &self.entries {
            if *r != 1.0 && *r != -1.0 {
                return Err(Error::InvalidModel(format!(
                    "{what} response {r} at {:?} is not +1 or -1",
                    v.to_array()
                )));
            }
        }
        Ok(())
    }
}

/// Mean-value tables `a_mu(a)`, `b_mu(b)` for one cause.
#[derive(Clone, Debug, PartialEq)]
pub struct LtCause {
    pub weight: f64,
    pub a_means: SettingTable,
    pub b_means: SettingTable,
}

/// Local density operators `rho_A^mu`, `rho_B^mu` for one cause.
#[derive(Clone, Debug, PartialEq)]
pub struct LqtCause {
    pub weight: f64,
    pub rho_a: QubitState,
    pub rho_b: QubitState,
}

/// One hidden-variable atom with deterministic +-1 responses per setting.
#[derive(Clone, Debug, PartialEq)]
pub struct HiddenAtom {
    pub weight: f64,
    pub a_responses: SettingTable,
    pub b_responses: SettingTable,
}

/// A cause carrying a finite conditional distribution over hidden variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LrtCause {
    pub weight: f64,
    pub atoms: Vec<HiddenAtom>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommonCauseModel {
    LocalTheory(Vec<LtCause>),
    LocalQuantum(Vec<LqtCause>),
    LocalRealistic(Vec<LrtCause>),
}

impl CommonCauseModel {
    pub fn local_theory(causes: Vec<LtCause>) -> Result<Self> {
        check_weights(causes.iter().map(|c| &c.weight), "cause")?;
        for c in &causes {
            c.a_means.check_means("A")?;
            c.b_means.check_means("B")?;
        }
        Ok(Self::LocalTheory(causes))
    }

    pub fn local_quantum(causes: Vec<LqtCause>) -> Result<Self> {
        check_weights(causes.iter().map(|c| &c.weight), "cause")?;
        Ok(Self::LocalQuantum(causes))
    }

    pub fn local_realistic(causes: Vec<LrtCause>) -> Result<Self> {
        check_weights(causes.iter().map(|c| &c.weight), "cause")?;
        for c in &causes {
            check_weights(c.atoms.iter().map(|a| &a.weight), "hidden-variable")?;
            for atom in &c.atoms {
                atom.a_responses.check_signs("A")?;
                atom.b_responses.check_signs("B")?;
            }
        }
        Ok(Self::LocalRealistic(causes))
    }

    /// Flattened `(weight, mean_A(a), mean_B(b))` triples. Hidden-variable
    /// atoms are folded into the causes they refine.
    pub fn local_terms(&self, a: UnitVector3, b: UnitVector3) -> Result<Vec<(f64, f64, f64)>> {
        match self {
            Self::LocalTheory(causes) => causes
                .iter()
                .map(|c| Ok((c.weight, c.a_means.get(a)?, c.b_means.get(b)?)))
                .collect(),
            Self::LocalQuantum(causes) => Ok(causes
                .iter()
                .map(|c| (c.weight, c.rho_a.expectation(a), c.rho_b.expectation(b)))
                .collect()),
            Self::LocalRealistic(causes) => {
                let mut out = Vec::new();
                for c in causes {
                    for atom in &c.atoms {
                        out.push((
                            c.weight * atom.weight,
                            atom.a_responses.get(a)?,
                            atom.b_responses.get(b)?,
                        ));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn cause_count(&self) -> usize {
        match self {
            Self::LocalTheory(c) => c.len(),
            Self::LocalQuantum(c) => c.len(),
            Self::LocalRealistic(c) => c.len(),
        }
    }
}

/// `sum_mu P(mu) a_mu b_mu`.
pub fn model_correlation(m: &CommonCauseModel, a: UnitVector3, b: UnitVector3) -> Result<f64> {
    let e: f64 = m.local_terms(a, b)?.iter().map(|(w, ma, mb)| w * ma * mb).sum();
    Ok(e.clamp(-1.0, 1.0))
}

/// Anything that assigns joint outcome probabilities to a setting pair.
pub trait JointSource {
    /// Probabilities in [`JOINT_ORDER`].
    fn joint_distribution(&self, a: UnitVector3, b: UnitVector3) -> Result<[f64; 4]>;
}

impl JointSource for DensityMatrix {
    fn joint_distribution(&self, a: UnitVector3, b: UnitVector3) -> Result<[f64; 4]> {
        joint_distribution(self, a, b)
    }
}

impl JointSource for CommonCauseModel {
    /// `sum_mu P(mu) P(a_i|mu) P(b_j|mu)` with `P(+-|mu) = (1 +- mean) / 2`.
    fn joint_distribution(&self, a: UnitVector3, b: UnitVector3) -> Result<[f64; 4]> {
        let terms = self.local_terms(a, b)?;
        let mut out = [0.0; 4];
        for (slot, (i, j)) in out.iter_mut().zip(JOINT_ORDER) {
            *slot = terms
                .iter()
                .map(|(w, ma, mb)| w * (1.0 + i.value() * ma) / 2.0 * (1.0 + j.value() * mb) / 2.0)
                .sum();
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalityVerdict {
    pub max_deviation: f64,
    pub holds: bool,
    /// Setting index and outcome index of the largest deviation.
    pub worst: Option<(usize, usize)>,
}

/// Compares the model's factorized joints against `target` over `settings`.
pub fn verify_locality_condition<S: JointSource + ?Sized>(
    m: &CommonCauseModel,
    target: &S,
    settings: &[(UnitVector3, UnitVector3)],
    tol: f64,
) -> Result<LocalityVerdict> {
    let mut max_deviation = 0.0f64;
    let mut worst = None;
    for (k, &(a, b)) in settings.iter().enumerate() {
        let model = m.joint_distribution(a, b)?;
        let want = target.joint_distribution(a, b)?;
        for o in 0..4 {
            let d = (model[o] - want[o]).abs();
            if d > max_deviation || worst.is_none() {
                max_deviation = max_deviation.max(d);
                worst = Some((k, o));
            }
        }
    }
    Ok(LocalityVerdict { max_deviation, holds: max_deviation <= tol, worst })
}

/// One cause per product term of a separable decomposition.
pub fn lqt_model_from_separable(decomposition: &[SeparableTerm]) -> Result<CommonCauseModel> {
    let causes = decomposition
        .iter()
        .map(|t| {
            Ok(LqtCause {
                weight: t.weight,
                rho_a: QubitState::from_bloch(t.bloch_a)?,
                rho_b: QubitState::from_bloch(t.bloch_b)?,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::Domain(msg) => Error::InvalidModel(msg),
            other => other,
        })?;
    CommonCauseModel::local_quantum(causes)
}

/// Cells of `[0, 1]` cut at every threshold `(1 + mean)/2`, each paired with
/// the +-1 response it induces per setting: `+1` below the threshold.
fn threshold_cells(table: &SettingTable) -> Vec<(f64, Vec<(UnitVector3, f64)>)> {
    let thresholds: Vec<f64> =
        table.entries().iter().map(|(_, m)| ((1.0 + m) / 2.0).clamp(0.0, 1.0)).collect();
    let mut cuts: Vec<f64> = vec![0.0, 1.0];
    cuts.extend(thresholds.iter().copied());
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            let responses = table
                .entries()
                .iter()
                .zip(&thresholds)
                .map(|((v, _), t)| (*v, if mid < *t { 1.0 } else { -1.0 }))
                .collect();
            (w[1] - w[0], responses)
        })
        .collect()
}

/// Realizes a mean-value model with deterministic responses.
///
/// Each side gets its own uniform hidden variable split at the thresholds
/// `(1 + mean)/2`, so the response to a setting is `+1` with probability
/// `(1 + mean)/2`. The two sides stay independent within a cause; atoms are
/// the products of the two partitions. `max_atoms` caps atoms per cause.
pub fn lrt_from_lt(m: &CommonCauseModel, max_atoms: usize) -> Result<CommonCauseModel> {
    let CommonCauseModel::LocalTheory(causes) = m else {
        return Err(Error::InvalidModel("expected a mean-value (LT) model".into()));
    };
    let mut out = Vec::with_capacity(causes.len());
    for cause in causes {
        let cells_a = threshold_cells(&cause.a_means);
        let cells_b = threshold_cells(&cause.b_means);
        let count = cells_a.len() * cells_b.len();
        if count > max_atoms {
            return Err(Error::InvalidConfig(format!(
                "cause needs {count} hidden-variable atoms, limit is {max_atoms}"
            )));
        }
        let mut atoms = Vec::with_capacity(count);
        for (wa, ra) in &cells_a {
            for (wb, rb) in &cells_b {
                atoms.push(HiddenAtom {
                    weight: wa * wb,
                    a_responses: SettingTable::new(ra.clone()),
                    b_responses: SettingTable::new(rb.clone()),
                });
            }
        }
        out.push(LrtCause { weight: cause.weight, atoms });
    }
    CommonCauseModel::local_realistic(out)
}

/// Joint responses `Gamma(a, b)` for one hidden-variable atom.
#[derive(Clone, Debug, PartialEq)]
pub struct JointResponseAtom {
    pub weight: f64,
    pub gamma: Vec<((UnitVector3, UnitVector3), f64)>,
}

impl JointResponseAtom {
    pub fn get(&self, a: UnitVector3, b: UnitVector3) -> Result<f64> {
        self.gamma
            .iter()
            .find(|((ka, kb), _)| ka.approx_eq(a, SETTING_MATCH_TOL) && kb.approx_eq(b, SETTING_MATCH_TOL))
            .map(|(_, g)| *g)
            .ok_or(Error::UnknownSetting(a.x(), a.y(), a.z()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RtCause {
    pub weight: f64,
    pub atoms: Vec<JointResponseAtom>,
}

/// Realistic model without the locality factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlocalRealisticModel {
    causes: Vec<RtCause>,
}

impl NonlocalRealisticModel {
    pub fn new(causes: Vec<RtCause>) -> Result<Self> {
        check_weights(causes.iter().map(|c| &c.weight), "cause")?;
        for c in &causes {
            check_weights(c.atoms.iter().map(|a| &a.weight), "hidden-variable")?;
            for atom in &c.atoms {
                for (_, g) in &atom.gamma {
                    if !g.is_finite() || g.abs() > 1.0 + RESPONSE_TOL {
                        return Err(Error::InvalidModel(format!("joint response {g} exceeds 1")));
                    }
                }
            }
        }
        Ok(Self { causes })
    }

    /// One cause, one hidden-variable value.
    pub fn single(gamma: Vec<((UnitVector3, UnitVector3), f64)>) -> Result<Self> {
        Self::new(vec![RtCause { weight: 1.0, atoms: vec![JointResponseAtom { weight: 1.0, gamma }] }])
    }

    pub fn causes(&self) -> &[RtCause] {
        &self.causes
    }

    pub fn max_abs_response(&self) -> f64 {
        self.causes
            .iter()
            .flat_map(|c| &c.atoms)
            .flat_map(|a| &a.gamma)
            .map(|(_, g)| g.abs())
            .fold(0.0, f64::max)
    }

    /// `sum_mu P(mu) sum_lambda p(lambda|mu) Gamma_mu(a, b; lambda)`.
    pub fn correlation(&self, a: UnitVector3, b: UnitVector3) -> Result<f64> {
        let mut e = 0.0;
        for c in &self.causes {
            for atom in &c.atoms {
                e += c.weight * atom.weight * atom.get(a, b)?;
            }
        }
        Ok(e)
    }
}

/// Single-atom realistic model whose joint responses are the quantum
/// correlations on the listed setting pairs.
pub fn rt_model_from_quantum(
    rho: &DensityMatrix,
    settings: &[(UnitVector3, UnitVector3)],
) -> Result<NonlocalRealisticModel> {
    let gamma = settings
        .iter()
        .map(|&(a, b)| Ok(((a, b), correlation(rho, a, b)?)))
        .collect::<Result<Vec<_>>>()?;
    NonlocalRealisticModel::single(gamma)
}

/// Deterministic realistic model with `X = 2 sign_x`, `Y = 2 sign_y`: the
/// corners of the realism square, outside every quantum prediction.
pub fn saturating_realistic_model(
    pa: &SettingPair,
    pb: &SettingPair,
    sign_x: f64,
    sign_y: f64,
) -> Result<NonlocalRealisticModel> {
    let (sx, sy) = (sign_x.signum(), sign_y.signum());
    NonlocalRealisticModel::single(vec![
        ((pa.main(), pb.perp()), sx),
        ((pa.perp(), pb.main()), sx),
        ((pa.main(), pb.main()), sy),
        ((pa.perp(), pb.perp()), -sy),
    ])
}

/// Lower bound on the joint-probability deviation of any common-cause model
/// from a source whose `max |X +- Y|` is `achieved > 2`: each correlation is
/// a signed sum of four probabilities, so `|X +- Y|` moves by at most
/// `16 * deviation`.
pub fn min_local_deviation(achieved_max_abs_pm: f64) -> f64 {
    ((achieved_max_abs_pm - 2.0) / 16.0).max(0.0)
}

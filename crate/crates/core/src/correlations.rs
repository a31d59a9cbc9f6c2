//! Quantum correlation functions, the X/Y combinations and the bound hierarchy.

use serde::{Deserialize, Serialize};

use crate::algebra::{kron, pauli_op, DensityMatrix, Mat2, SettingPair, UnitVector3};
use crate::error::{Error, Result};

/// Default slack for every bound comparison.
pub const DEFAULT_TOL: f64 = 1e-9;

const IMAG_TOL: f64 = 1e-10;
const RANGE_TOL: f64 = 1e-10;

/// A single-site measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn from_sign(v: i32) -> Result<Self> {
        match v {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            other => Err(Error::Domain(format!("outcome {other} is not +1 or -1"))),
        }
    }
}

/// Joint outcome order used everywhere: `(+,+), (+,-), (-,+), (-,-)`.
pub const JOINT_ORDER: [(Outcome, Outcome); 4] = [
    (Outcome::Plus, Outcome::Plus),
    (Outcome::Plus, Outcome::Minus),
    (Outcome::Minus, Outcome::Plus),
    (Outcome::Minus, Outcome::Minus),
];

fn projector(v: UnitVector3, outcome: Outcome) -> Mat2 {
    (Mat2::identity() + pauli_op(v) * outcome.value()) * 0.5
}

fn checked_real(z: num_complex::Complex64, what: &str) -> Result<f64> {
    if z.im.abs() > IMAG_TOL {
        return Err(Error::InvalidState(format!("{what} has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// `Tr[rho (a.sigma (x) b.sigma)]`.
pub fn correlation(rho: &DensityMatrix, a: UnitVector3, b: UnitVector3) -> Result<f64> {
    let obs = kron(&pauli_op(a), &pauli_op(b));
    let e = checked_real(rho.matrix().trace_product(&obs), "correlation")?;
    clamp_unit(e)
}

/// Clamps values within `1e-10` of `[-1, 1]`; rejects anything further out.
pub(crate) fn clamp_unit(e: f64) -> Result<f64> {
    if !e.is_finite() || e.abs() > 1.0 + RANGE_TOL {
        return Err(Error::CorrelationOutOfRange(e));
    }
    Ok(e.clamp(-1.0, 1.0))
}

/// `Tr[rho (Pi_i^a (x) Pi_j^b)]` with `Pi_+-^v = (I +- v.sigma)/2`.
pub fn joint_probability(
    rho: &DensityMatrix,
    a: UnitVector3,
    b: UnitVector3,
    i: Outcome,
    j: Outcome,
) -> Result<f64> {
    let op = kron(&projector(a, i), &projector(b, j));
    let p = checked_real(rho.matrix().trace_product(&op), "joint probability")?;
    if p < -RANGE_TOL || p > 1.0 + RANGE_TOL {
        return Err(Error::InvalidState(format!("joint probability {p} outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// All four joint probabilities in [`JOINT_ORDER`].
pub fn joint_distribution(rho: &DensityMatrix, a: UnitVector3, b: UnitVector3) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (slot, (i, j)) in out.iter_mut().zip(JOINT_ORDER) {
        *slot = joint_probability(rho, a, b, i, j)?;
    }
    Ok(out)
}

/// Singlet correlation `-a.b`.
pub fn singlet_correlation_closed_form(a: UnitVector3, b: UnitVector3) -> f64 {
    -a.dot(b)
}

/// The coordinates `X = E(a,b_perp) + E(a_perp,b)`, `Y = E(a,b) - E(a_perp,b_perp)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XYPoint {
    #[serde(rename = "x")]
    pub x_val: f64,
    #[serde(rename = "y")]
    pub y_val: f64,
}

impl XYPoint {
    pub fn new(x_val: f64, y_val: f64) -> Self {
        Self { x_val, y_val }
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.x_val * self.x_val + self.y_val * self.y_val
    }

    /// `max(|X + Y|, |X - Y|)`, equal to `|X| + |Y|`.
    pub fn max_abs_pm(&self) -> f64 {
        (self.x_val + self.y_val).abs().max((self.x_val - self.y_val).abs())
    }

    pub fn max_abs_component(&self) -> f64 {
        self.x_val.abs().max(self.y_val.abs())
    }
}

/// Builds X and Y from any correlation function on the four setting combinations.
pub fn xy_from_correlator<F>(pa: &SettingPair, pb: &SettingPair, mut corr: F) -> Result<XYPoint>
where
    F: FnMut(UnitVector3, UnitVector3) -> Result<f64>,
{
    let (a, ap, b, bp) = (pa.main(), pa.perp(), pb.main(), pb.perp());
    let x = corr(a, bp)? + corr(ap, b)?;
    let y = corr(a, b)? - corr(ap, bp)?;
    Ok(XYPoint::new(x, y))
}

pub fn xy_quantities(rho: &DensityMatrix, pa: &SettingPair, pb: &SettingPair) -> Result<XYPoint> {
    xy_from_correlator(pa, pb, |a, b| correlation(rho, a, b))
}

/// The four inequalities of the hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `X^2 + Y^2 <= 4`, obeyed by every two-qubit state.
    QuantumMechanics,
    /// `|X| <= 2` and `|Y| <= 2`, obeyed by any realistic model.
    Realism,
    /// `|X +- Y| <= 2`, obeyed by every common-cause model (CHSH form).
    Locality,
    /// `X^2 + Y^2 <= 1`, obeyed by every separable state.
    QuantumLocality,
}

impl Bound {
    pub const ALL: [Bound; 4] =
        [Bound::QuantumMechanics, Bound::Realism, Bound::Locality, Bound::QuantumLocality];

    pub fn limit(self) -> f64 {
        match self {
            Bound::QuantumMechanics => 4.0,
            Bound::Realism | Bound::Locality => 2.0,
            Bound::QuantumLocality => 1.0,
        }
    }

    /// The bounded quantity at `xy`.
    pub fn achieved(self, xy: &XYPoint) -> f64 {
        match self {
            Bound::QuantumMechanics | Bound::QuantumLocality => xy.sum_of_squares(),
            Bound::Realism => xy.max_abs_component(),
            Bound::Locality => xy.max_abs_pm(),
        }
    }

    /// Satisfaction test. The quadratic bounds are compared on the radius
    /// `sqrt(X^2 + Y^2) <= r + tol`, which keeps the region chain nested at
    /// every tolerance.
    pub fn satisfied_by(self, xy: &XYPoint, tol: f64) -> bool {
        match self {
            Bound::QuantumMechanics | Bound::QuantumLocality => {
                xy.sum_of_squares().sqrt() <= self.limit().sqrt() + tol
            }
            Bound::Realism | Bound::Locality => self.achieved(xy) <= self.limit() + tol,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: Bound,
    pub limit: f64,
    pub achieved: f64,
    /// `limit - achieved`; negative means violated.
    pub margin: f64,
    pub satisfied: bool,
}

impl BoundCheck {
    pub fn evaluate(bound: Bound, xy: &XYPoint, tol: f64) -> Self {
        let achieved = bound.achieved(xy);
        Self {
            bound,
            limit: bound.limit(),
            achieved,
            margin: bound.limit() - achieved,
            satisfied: bound.satisfied_by(xy, tol),
        }
    }
}

/// Innermost region of the X-Y plane containing a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    #[serde(rename = "LQT")]
    Lqt,
    #[serde(rename = "LT_not_LQT")]
    LtNotLqt,
    #[serde(rename = "QM_not_LT")]
    QmNotLt,
    #[serde(rename = "RT_not_QM")]
    RtNotQm,
    #[serde(rename = "OUTSIDE_RT")]
    OutsideRt,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::Lqt => "LQT",
            Region::LtNotLqt => "LT_not_LQT",
            Region::QmNotLt => "QM_not_LT",
            Region::RtNotQm => "RT_not_QM",
            Region::OutsideRt => "OUTSIDE_RT",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub xy: XYPoint,
    pub quantum_mechanics: BoundCheck,
    pub realism: BoundCheck,
    pub locality: BoundCheck,
    pub quantum_locality: BoundCheck,
    pub region: Region,
    /// Inside the locality diamond but outside the unit circle.
    pub hidden_qunonlocality: bool,
}

impl HierarchyReport {
    pub fn check(&self, bound: Bound) -> &BoundCheck {
        match bound {
            Bound::QuantumMechanics => &self.quantum_mechanics,
            Bound::Realism => &self.realism,
            Bound::Locality => &self.locality,
            Bound::QuantumLocality => &self.quantum_locality,
        }
    }

    pub fn violated(&self) -> Vec<Bound> {
        Bound::ALL.into_iter().filter(|b| !self.check(*b).satisfied).collect()
    }
}

pub fn classify(xy: XYPoint, tol: f64) -> HierarchyReport {
    let tol = tol.max(0.0);
    let qm = BoundCheck::evaluate(Bound::QuantumMechanics, &xy, tol);
    let rt = BoundCheck::evaluate(Bound::Realism, &xy, tol);
    let lt = BoundCheck::evaluate(Bound::Locality, &xy, tol);
    let lqt = BoundCheck::evaluate(Bound::QuantumLocality, &xy, tol);
    let region = if lqt.satisfied {
        Region::Lqt
    } else if lt.satisfied {
        Region::LtNotLqt
    } else if qm.satisfied {
        Region::QmNotLt
    } else if rt.satisfied {
        Region::RtNotQm
    } else {
        Region::OutsideRt
    };
    HierarchyReport {
        xy,
        quantum_mechanics: qm,
        realism: rt,
        locality: lt,
        quantum_locality: lqt,
        region,
        hidden_qunonlocality: lt.satisfied && !lqt.satisfied,
    }
}

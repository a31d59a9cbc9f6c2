//! JSON file formats for states, settings and common-cause models.
//!
//! ```json
//! {"kind": "werner", "x": 0.6}
//! {"kind": "product", "bloch_a": [0, 0, 1], "bloch_b": [0, 0, -1]}
//! {"a": [1, 0, 0], "a_perp": [0, 1, 0], "b": [0, 0, 1], "b_perp": [1, 0, 0]}
//! {"kind": "lqt", "causes": [{"weight": 1.0, "bloch_a": [0, 0, 1], "bloch_b": [0, 0, 0]}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::algebra::{make_product, make_singlet, make_werner, DensityMatrix, Mat4, SettingPair, UnitVector3, Vec3};
use crate::models::{CommonCauseModel, HiddenAtom, LrtCause, LtCause, SettingTable};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSpec {
    Singlet,
    Werner { x: f64 },
    Product { bloch_a: Vec3, bloch_b: Vec3 },
    /// Row-major real and imaginary parts.
    Matrix { re: [[f64; 4]; 4], im: [[f64; 4]; 4] },
}

impl StateSpec {
    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Singlet => Ok(make_singlet()),
            StateSpec::Werner { x } => make_werner(*x),
            StateSpec::Product { bloch_a, bloch_b } => make_product(*bloch_a, *bloch_b),
            StateSpec::Matrix { re, im } => DensityMatrix::new(Mat4::from_parts(*re, *im)),
        }
    }

    pub fn from_density_matrix(rho: &DensityMatrix) -> Self {
        StateSpec::Matrix { re: rho.matrix().re(), im: rho.matrix().im() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingsSpec {
    pub a: Vec3,
    pub a_perp: Vec3,
    pub b: Vec3,
    pub b_perp: Vec3,
}

impl SettingsSpec {
    pub fn to_pairs(&self) -> Result<(SettingPair, SettingPair)> {
        Ok((
            SettingPair::from_arrays(self.a, self.a_perp)?,
            SettingPair::from_arrays(self.b, self.b_perp)?,
        ))
    }

    pub fn from_pairs(pa: &SettingPair, pb: &SettingPair) -> Self {
        Self {
            a: pa.main().to_array(),
            a_perp: pa.perp().to_array(),
            b: pb.main().to_array(),
            b_perp: pb.perp().to_array(),
        }
    }

    /// The four `(a-side, b-side)` combinations: `(a,b), (a,b_perp), (a_perp,b), (a_perp,b_perp)`.
    pub fn combinations(&self) -> Result<Vec<(UnitVector3, UnitVector3)>> {
        let (pa, pb) = self.to_pairs()?;
        Ok(vec![
            (pa.main(), pb.main()),
            (pa.main(), pb.perp()),
            (pa.perp(), pb.main()),
            (pa.perp(), pb.perp()),
        ])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingValue {
    pub setting: Vec3,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LtCauseSpec {
    pub weight: f64,
    pub a_means: Vec<SettingValue>,
    pub b_means: Vec<SettingValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LqtCauseSpec {
    pub weight: f64,
    pub bloch_a: Vec3,
    pub bloch_b: Vec3,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub weight: f64,
    pub a_responses: Vec<SettingValue>,
    pub b_responses: Vec<SettingValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LrtCauseSpec {
    pub weight: f64,
    pub atoms: Vec<AtomSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelSpec {
    Lt { causes: Vec<LtCauseSpec> },
    Lqt { causes: Vec<LqtCauseSpec> },
    Lrt { causes: Vec<LrtCauseSpec> },
}

fn table(values: &[SettingValue]) -> Result<SettingTable> {
    Ok(SettingTable::new(
        values
            .iter()
            .map(|sv| Ok((UnitVector3::from_array(sv.setting)?, sv.value)))
            .collect::<Result<_>>()?,
    ))
}

fn values(t: &SettingTable) -> Vec<SettingValue> {
    t.entries().iter().map(|(v, x)| SettingValue { setting: v.to_array(), value: *x }).collect()
}

impl ModelSpec {
    pub fn to_model(&self) -> Result<CommonCauseModel> {
        match self {
            ModelSpec::Lt { causes } => CommonCauseModel::local_theory(
                causes
                    .iter()
                    .map(|c| {
                        Ok(LtCause { weight: c.weight, a_means: table(&c.a_means)?, b_means: table(&c.b_means)? })
                    })
                    .collect::<Result<_>>()?,
            ),
            ModelSpec::Lqt { causes } => {
                let terms: Vec<crate::random::SeparableTerm> = causes
                    .iter()
                    .map(|c| crate::random::SeparableTerm { weight: c.weight, bloch_a: c.bloch_a, bloch_b: c.bloch_b })
                    .collect();
                crate::models::lqt_model_from_separable(&terms)
            }
            ModelSpec::Lrt { causes } => CommonCauseModel::local_realistic(
                causes
                    .iter()
                    .map(|c| {
                        Ok(LrtCause {
                            weight: c.weight,
                            atoms: c
                                .atoms
                                .iter()
                                .map(|a| {
                                    Ok(HiddenAtom {
                                        weight: a.weight,
                                        a_responses: table(&a.a_responses)?,
                                        b_responses: table(&a.b_responses)?,
                                    })
                                })
                                .collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?,
            ),
        }
    }

    pub fn from_model(m: &CommonCauseModel) -> Self {
        match m {
            CommonCauseModel::LocalTheory(causes) => ModelSpec::Lt {
                causes: causes
                    .iter()
                    .map(|c| LtCauseSpec { weight: c.weight, a_means: values(&c.a_means), b_means: values(&c.b_means) })
                    .collect(),
            },
            CommonCauseModel::LocalQuantum(causes) => ModelSpec::Lqt {
                causes: causes
                    .iter()
                    .map(|c| LqtCauseSpec { weight: c.weight, bloch_a: c.rho_a.bloch(), bloch_b: c.rho_b.bloch() })
                    .collect(),
            },
            CommonCauseModel::LocalRealistic(causes) => ModelSpec::Lrt {
                causes: causes
                    .iter()
                    .map(|c| LrtCauseSpec {
                        weight: c.weight,
                        atoms: c
                            .atoms
                            .iter()
                            .map(|a| AtomSpec {
                                weight: a.weight,
                                a_responses: values(&a.a_responses),
                                b_responses: values(&a.b_responses),
                            })
                            .collect(),
                    })
                    .collect(),
            },
        }
    }
}

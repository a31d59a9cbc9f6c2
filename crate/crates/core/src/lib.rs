//! Two-qubit correlation engine for the locality / realism inequality hierarchy.
//!
//! For two orthogonal settings per site, `X = E(a,b_perp) + E(a_perp,b)` and
//! `Y = E(a,b) - E(a_perp,b_perp)` obey four nested bounds: `|X|,|Y| <= 2`
//! for realistic models, `X^2 + Y^2 <= 4` for every quantum state,
//! `|X +- Y| <= 2` for every common-cause (local) model, and
//! `X^2 + Y^2 <= 1` for separable quantum states.
//!
//! - [`algebra`]: 2x2 / 4x4 complex matrices, states, partial transpose.
//! - [`correlations`]: correlation functions, X/Y, and the classifier.
//! - [`models`]: common-cause and realistic hidden-variable models.
//! - [`sampler`]: seeded Monte Carlo of the measurement.
//! - [`optimizer`]: setting optimization and threshold bisection.
//! - [`schema`]: JSON file formats; [`cli`]: the command-line front end.

pub mod algebra;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod models;
pub mod optimizer;
pub mod random;
pub mod sampler;
pub mod schema;

pub use algebra::{
    hermitian_eigenvalues, is_separable_ppt, kron, make_product, make_singlet, make_werner,
    partial_transpose_b, pauli_op, DensityMatrix, Mat2, Mat4, QubitState, SettingPair, UnitVector3,
};
pub use correlations::{
    classify, correlation, joint_probability, singlet_correlation_closed_form, xy_quantities, Bound,
    HierarchyReport, Outcome, Region, XYPoint, DEFAULT_TOL,
};
pub use error::{Error, Result};
pub use models::{
    lqt_model_from_separable, lrt_from_lt, model_correlation, rt_model_from_quantum,
    verify_locality_condition, CommonCauseModel, NonlocalRealisticModel,
};
pub use optimizer::{find_threshold, maximize, werner_max_curve, Objective, OptimizeConfig, OptimizeResult};
pub use sampler::{empirical_xy, sample_outcomes, EmpiricalXy, SampleResult};

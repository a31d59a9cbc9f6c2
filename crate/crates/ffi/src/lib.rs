//! C ABI for the `qlocality` engine.
//!
//! States and models are opaque heap handles released with their `*_free`
//! function. Every fallible call returns a [`QlStatus`]; on failure the
//! message is available from [`ql_last_error`] until the next failing call
//! on the same thread. Vectors are `const double *` pointing at 3 doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qlocality::algebra::{make_product, make_singlet, make_werner, DensityMatrix, Mat4, SettingPair, UnitVector3};
use qlocality::correlations::{classify, correlation, xy_quantities, Region};
use qlocality::models::{model_correlation, CommonCauseModel};
use qlocality::optimizer::{maximize, Objective, OptimizeConfig};
use qlocality::sampler::empirical_xy;
use qlocality::schema::ModelSpec;
use qlocality::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullPointer = 1,
    /// Input failed validation (vector norm, orthogonality, weights, JSON).
    InvalidArgument = 2,
    /// A parameter lies outside its domain, e.g. a Werner weight outside [0, 1].
    Domain = 3,
    /// The state matrix is not a valid density matrix.
    InvalidState = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlRegion {
    Lqt = 0,
    LtNotLqt = 1,
    QmNotLt = 2,
    RtNotQm = 3,
    OutsideRt = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlObjective {
    SumOfSquares = 0,
    MaxAbsPm = 1,
    AbsX = 2,
}

/// Classification of one `(X, Y)` point. Margins are `limit - achieved`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QlReport {
    pub x: f64,
    pub y: f64,
    pub margin_quantum_mechanics: f64,
    pub margin_realism: f64,
    pub margin_locality: f64,
    pub margin_quantum_locality: f64,
    pub region: i32,
    pub hidden_qunonlocality: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QlOptimum {
    pub best_value: f64,
    pub x: f64,
    pub y: f64,
    /// `a, a_perp, b, b_perp`, three components each.
    pub settings: [f64; 12],
    pub converged: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QlSample {
    pub x: f64,
    pub y: f64,
    pub se_x: f64,
    pub se_y: f64,
    /// `(+,+), (+,-), (-,+), (-,-)` for `(a,b), (a,b_perp), (a_perp,b), (a_perp,b_perp)`.
    pub counts: [u64; 16],
}

/// Opaque two-qubit density matrix.
pub struct QlState(DensityMatrix);

/// Opaque common-cause model.
pub struct QlModel(CommonCauseModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QlStatus {
    match e {
        Error::Domain(_) => QlStatus::Domain,
        Error::InvalidState(_) | Error::NotHermitian(_) => QlStatus::InvalidState,
        _ => QlStatus::InvalidArgument,
    }
}

fn fail(status: QlStatus, msg: impl Into<String>) -> QlStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard<F: FnOnce() -> Result<(), QlStatus>>(f: F) -> QlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(QlStatus::Internal, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, QlStatus>;
}

impl<T> OrStatus<T> for qlocality::Result<T> {
    fn or_status(self) -> Result<T, QlStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, QlStatus> {
    p.as_ref().ok_or_else(|| fail(QlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, QlStatus> {
    p.as_mut().ok_or_else(|| fail(QlStatus::NullPointer, format!("{what} is null")))
}

unsafe fn vec3(p: *const f64, what: &str) -> Result<[f64; 3], QlStatus> {
    if p.is_null() {
        return Err(fail(QlStatus::NullPointer, format!("{what} is null")));
    }
    Ok([*p, *p.add(1), *p.add(2)])
}

unsafe fn unit(p: *const f64, what: &str) -> Result<UnitVector3, QlStatus> {
    UnitVector3::from_array(vec3(p, what)?).or_status()
}

unsafe fn pair(main: *const f64, perp: *const f64) -> Result<SettingPair, QlStatus> {
    SettingPair::from_arrays(vec3(main, "setting")?, vec3(perp, "perpendicular setting")?).or_status()
}

unsafe fn give_state(out: *mut *mut QlState, rho: DensityMatrix) -> Result<(), QlStatus> {
    *out_ref(out, "out")? = Box::into_raw(Box::new(QlState(rho)));
    Ok(())
}

/// Message of the last failing call on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ql_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_state_singlet(out: *mut *mut QlState) -> QlStatus {
    guard(|| give_state(out, make_singlet()))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_state_werner(x: f64, out: *mut *mut QlState) -> QlStatus {
    guard(|| give_state(out, make_werner(x).or_status()?))
}

/// # Safety
/// `bloch_a`, `bloch_b` point at 3 doubles; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_state_product(
    bloch_a: *const f64,
    bloch_b: *const f64,
    out: *mut *mut QlState,
) -> QlStatus {
    guard(|| give_state(out, make_product(vec3(bloch_a, "bloch_a")?, vec3(bloch_b, "bloch_b")?).or_status()?))
}

/// Builds a state from row-major real and imaginary parts (16 doubles each).
///
/// # Safety
/// `re` and `im` point at 16 doubles; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_state_from_matrix(re: *const f64, im: *const f64, out: *mut *mut QlState) -> QlStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(fail(QlStatus::NullPointer, "matrix part is null"));
        }
        let mut r = [[0.0; 4]; 4];
        let mut i = [[0.0; 4]; 4];
        for k in 0..16 {
            r[k / 4][k % 4] = *re.add(k);
            i[k / 4][k % 4] = *im.add(k);
        }
        give_state(out, DensityMatrix::new(Mat4::from_parts(r, i)).or_status()?)
    })
}

/// # Safety
/// `state` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ql_state_free(state: *mut QlState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// `E(a, b)` for unit vectors `a`, `b`.
///
/// # Safety
/// Pointers must be valid; `a`, `b` point at 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn ql_correlation(state: *const QlState, a: *const f64, b: *const f64, out: *mut f64) -> QlStatus {
    guard(|| {
        let rho = &deref(state, "state")?.0;
        *out_ref(out, "out")? = correlation(rho, unit(a, "a")?, unit(b, "b")?).or_status()?;
        Ok(())
    })
}

/// `X` and `Y` for the pairs `(a, a_perp)`, `(b, b_perp)`.
///
/// # Safety
/// Pointers must be valid; vectors point at 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn ql_xy(
    state: *const QlState,
    a: *const f64,
    a_perp: *const f64,
    b: *const f64,
    b_perp: *const f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> QlStatus {
    guard(|| {
        let rho = &deref(state, "state")?.0;
        let xy = xy_quantities(rho, &pair(a, a_perp)?, &pair(b, b_perp)?).or_status()?;
        *out_ref(out_x, "out_x")? = xy.x_val;
        *out_ref(out_y, "out_y")? = xy.y_val;
        Ok(())
    })
}

fn region_code(r: Region) -> QlRegion {
    match r {
        Region::Lqt => QlRegion::Lqt,
        Region::LtNotLqt => QlRegion::LtNotLqt,
        Region::QmNotLt => QlRegion::QmNotLt,
        Region::RtNotQm => QlRegion::RtNotQm,
        Region::OutsideRt => QlRegion::OutsideRt,
    }
}

/// Classifies a point of the X-Y plane. `region` holds a [`QlRegion`] value.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_classify(x: f64, y: f64, tol: f64, out: *mut QlReport) -> QlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if !(x.is_finite() && y.is_finite() && tol >= 0.0) {
            return Err(fail(QlStatus::InvalidArgument, "x, y must be finite and tol non-negative"));
        }
        let r = classify(qlocality::XYPoint::new(x, y), tol);
        *out = QlReport {
            x,
            y,
            margin_quantum_mechanics: r.quantum_mechanics.margin,
            margin_realism: r.realism.margin,
            margin_locality: r.locality.margin,
            margin_quantum_locality: r.quantum_locality.margin,
            region: region_code(r.region) as i32,
            hidden_qunonlocality: r.hidden_qunonlocality,
        };
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_is_separable_ppt(state: *const QlState, tol: f64, out: *mut bool) -> QlStatus {
    guard(|| {
        let rho = &deref(state, "state")?.0;
        *out_ref(out, "out")? = qlocality::is_separable_ppt(rho, tol);
        Ok(())
    })
}

/// Maximizes `objective` over both setting pairs. `restarts` of 0 selects the default.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ql_maximize(
    state: *const QlState,
    objective: QlObjective,
    restarts: u32,
    seed: u64,
    out: *mut QlOptimum,
) -> QlStatus {
    guard(|| {
        let rho = &deref(state, "state")?.0;
        let out = out_ref(out, "out")?;
        let obj = match objective {
            QlObjective::SumOfSquares => Objective::SumOfSquares,
            QlObjective::MaxAbsPm => Objective::MaxAbsPm,
            QlObjective::AbsX => Objective::AbsX,
        };
        let mut config = OptimizeConfig { seed, ..OptimizeConfig::default() };
        if restarts > 0 {
            config.restarts = restarts as usize;
        }
        let r = maximize(rho, obj, &config).or_status()?;
        let mut settings = [0.0; 12];
        for (k, v) in [r.settings_a[0], r.settings_a[1], r.settings_b[0], r.settings_b[1]].iter().enumerate() {
            settings[3 * k..3 * k + 3].copy_from_slice(v);
        }
        *out = QlOptimum { best_value: r.best_value, x: r.xy.x_val, y: r.xy.y_val, settings, converged: r.converged };
        Ok(())
    })
}

/// Monte Carlo estimate of `X`, `Y` with `shots` per setting combination.
///
/// # Safety
/// Pointers must be valid; vectors point at 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn ql_sample(
    state: *const QlState,
    a: *const f64,
    a_perp: *const f64,
    b: *const f64,
    b_perp: *const f64,
    shots: u64,
    seed: u64,
    out: *mut QlSample,
) -> QlStatus {
    guard(|| {
        let rho = &deref(state, "state")?.0;
        let out = out_ref(out, "out")?;
        let est = empirical_xy(rho, &pair(a, a_perp)?, &pair(b, b_perp)?, shots, seed).or_status()?;
        let mut counts = [0u64; 16];
        for (k, run) in est.runs.iter().enumerate() {
            counts[4 * k..4 * k + 4].copy_from_slice(&run.flat_counts());
        }
        *out = QlSample { x: est.xy.x_val, y: est.xy.y_val, se_x: est.se_x, se_y: est.se_y, counts };
        Ok(())
    })
}

/// Parses a model from the same JSON accepted by the command-line tool.
///
/// # Safety
/// `json` is a NUL-terminated UTF-8 string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ql_model_from_json(json: *const c_char, out: *mut *mut QlModel) -> QlStatus {
    guard(|| {
        if json.is_null() {
            return Err(fail(QlStatus::NullPointer, "json is null"));
        }
        let out = out_ref(out, "out")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| fail(QlStatus::InvalidArgument, "json is not UTF-8"))?;
        let spec: ModelSpec =
            serde_json::from_str(text).map_err(|e| fail(QlStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(QlModel(spec.to_model().or_status()?)));
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid; `a`, `b` point at 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn ql_model_correlation(model: *const QlModel, a: *const f64, b: *const f64, out: *mut f64) -> QlStatus {
    guard(|| {
        let m = &deref(model, "model")?.0;
        *out_ref(out, "out")? = model_correlation(m, unit(a, "a")?, unit(b, "b")?).or_status()?;
        Ok(())
    })
}

/// # Safety
/// `model` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ql_model_free(model: *mut QlModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

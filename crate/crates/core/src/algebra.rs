//! Fixed-size complex matrix algebra for one and two qubits.
//!
//! Two-qubit operators use the product basis `|uu>, |ud>, |du>, |dd>` where
//! `sigma_z |u> = +|u>`. Index `2 * i + j` addresses `|i>_A |j>_B`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Tolerance on `|v| - 1` for unit vectors.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance on `|main . perp|` for a setting pair.
pub const ORTHO_TOL: f64 = 1e-9;
/// Hermiticity tolerance for states.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance for states.
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue for states.
pub const PSD_TOL: f64 = 1e-9;
/// Hermiticity tolerance accepted by the eigensolver.
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name(pub [[C64; $n]; $n]);

        impl $name {
            pub const DIM: usize = $n;

            pub fn zeros() -> Self {
                Self([[ZERO; $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = ONE;
                }
                m
            }

            pub fn from_real(rows: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = C64::new(rows[i][j], 0.0);
                    }
                }
                m
            }

            pub fn from_parts(re: [[f64; $n]; $n], im: [[f64; $n]; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = C64::new(re[i][j], im[i][j]);
                    }
                }
                m
            }

            pub fn re(&self) -> [[f64; $n]; $n] {
                self.0.map(|row| row.map(|z| z.re))
            }

            pub fn im(&self) -> [[f64; $n]; $n] {
                self.0.map(|row| row.map(|z| z.im))
            }

            pub fn get(&self, row: usize, col: usize) -> C64 {
                self.0[row][col]
            }

            pub fn adjoint(&self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = self.0[j][i].conj();
                    }
                }
                m
            }

            pub fn trace(&self) -> C64 {
                (0..$n).map(|i| self.0[i][i]).sum()
            }

            /// `Tr[self * other]` without forming the product.
            pub fn trace_product(&self, other: &Self) -> C64 {
                let mut acc = ZERO;
                for i in 0..$n {
                    for k in 0..$n {
                        acc += self.0[i][k] * other.0[k][i];
                    }
                }
                acc
            }

            pub fn scale(&self, s: C64) -> Self {
                Self(self.0.map(|row| row.map(|z| z * s)))
            }

            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                let mut worst = 0.0f64;
                for i in 0..$n {
                    for j in 0..$n {
                        worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
                    }
                }
                worst
            }

            /// `max |M - M^dagger|` over entries.
            pub fn hermiticity_defect(&self) -> f64 {
                self.max_abs_diff(&self.adjoint())
            }

            pub fn is_finite(&self) -> bool {
                self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                let mut m = self;
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] += rhs.0[i][j];
                    }
                }
                m
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self + (-rhs)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self(self.0.map(|row| row.map(|z| -z)))
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for k in 0..$n {
                        let lhs = self.0[i][k];
                        for j in 0..$n {
                            m.0[i][j] += lhs * rhs.0[k][j];
                        }
                    }
                }
                m
            }
        }

        impl Mul<f64> for $name {
            type Output = Self;
            fn mul(self, rhs: f64) -> Self {
                self.scale(C64::new(rhs, 0.0))
            }
        }
    };
}

square_matrix!(Mat2, 2);
square_matrix!(Mat4, 4);

pub fn sigma_x() -> Mat2 {
    Mat2([[ZERO, ONE], [ONE, ZERO]])
}

pub fn sigma_y() -> Mat2 {
    Mat2([[ZERO, -I], [I, ZERO]])
}

pub fn sigma_z() -> Mat2 {
    Mat2([[ONE, ZERO], [ZERO, -ONE]])
}

/// Tensor product with block structure `a[i][j] * b`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Real 3-vector, used for Bloch vectors.
pub type Vec3 = [f64; 3];

pub fn dot3(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3(a: &Vec3) -> f64 {
    dot3(a, a).sqrt()
}

/// `r . sigma` for an arbitrary real vector.
fn vector_dot_sigma(r: &Vec3) -> Mat2 {
    Mat2([
        [C64::new(r[2], 0.0), C64::new(r[0], -r[1])],
        [C64::new(r[0], r[1]), C64::new(-r[2], 0.0)],
    ])
}

/// A measurement direction on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitVector3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVector3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidVector(format!("non-finite component in ({x}, {y}, {z})")));
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidVector(format!(
                "({x}, {y}, {z}) has norm {norm}, expected 1"
            )));
        }
        Ok(Self { x, y, z })
    }

    pub fn from_array(v: Vec3) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn normalized(v: Vec3) -> Result<Self> {
        let n = norm3(&v);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidVector(format!("cannot normalize {v:?}")));
        }
        Ok(Self { x: v[0] / n, y: v[1] / n, z: v[2] / n })
    }

    pub fn x_axis() -> Self {
        Self { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn y_axis() -> Self {
        Self { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn z_axis() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }

    pub fn to_array(self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn x(self) -> f64 {
        self.x
    }

    pub fn y(self) -> f64 {
        self.y
    }

    pub fn z(self) -> f64 {
        self.z
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Vec3 {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }

    /// Componentwise closeness, used to look settings up in response tables.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self.x - other.x).abs() <= tol
            && (self.y - other.y).abs() <= tol
            && (self.z - other.z).abs() <= tol
    }
}

impl Neg for UnitVector3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { x: -self.x, y: -self.y, z: -self.z }
    }
}

/// Two orthogonal measurement directions `(main, perp)` for one site.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SettingPair {
    main: UnitVector3,
    perp: UnitVector3,
}

impl SettingPair {
    pub fn new(main: UnitVector3, perp: UnitVector3) -> Result<Self> {
        let overlap = main.dot(perp).abs();
        if overlap > ORTHO_TOL {
            return Err(Error::NotOrthogonal(overlap));
        }
        Ok(Self { main, perp })
    }

    pub fn from_arrays(main: Vec3, perp: Vec3) -> Result<Self> {
        Self::new(UnitVector3::from_array(main)?, UnitVector3::from_array(perp)?)
    }

    pub fn main(&self) -> UnitVector3 {
        self.main
    }

    pub fn perp(&self) -> UnitVector3 {
        self.perp
    }

    /// Same pair with `perp` reflected to `-perp`.
    pub fn reflected(&self) -> Self {
        Self { main: self.main, perp: -self.perp }
    }
}

/// `v . sigma`, the spin observable along `v`.
pub fn pauli_op(v: UnitVector3) -> Mat2 {
    vector_dot_sigma(&v.to_array())
}

/// Single-qubit density operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState(Mat2);

impl QubitState {
    /// `(I + r . sigma) / 2`; requires `|r| <= 1`.
    pub fn from_bloch(r: Vec3) -> Result<Self> {
        if !r.iter().all(|c| c.is_finite()) {
            return Err(Error::Domain(format!("Bloch vector {r:?} is not finite")));
        }
        let n = norm3(&r);
        if n > 1.0 + UNIT_TOL {
            return Err(Error::Domain(format!("Bloch vector {r:?} has norm {n} > 1")));
        }
        Ok(Self((Mat2::identity() + vector_dot_sigma(&r)) * 0.5))
    }

    /// Validates an explicit 2x2 matrix as a state.
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {defect:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let state = Self(m);
        // eigenvalues of (I + r.sigma)/2 are (1 +- |r|)/2
        let r = norm3(&state.bloch());
        if (1.0 - r) / 2.0 < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {}", (1.0 - r) / 2.0)));
        }
        Ok(state)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn bloch(&self) -> Vec3 {
        [
            self.0.trace_product(&sigma_x()).re,
            self.0.trace_product(&sigma_y()).re,
            self.0.trace_product(&sigma_z()).re,
        ]
    }

    /// `Tr[rho (v . sigma)]`.
    pub fn expectation(&self, v: UnitVector3) -> f64 {
        self.0.trace_product(&pauli_op(v)).re
    }
}

/// Validated two-qubit density operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(m: Mat4) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let defect = m.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |M - M^dagger| = {defect:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = jacobi_eigenvalues(m)[0];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (smallest eigenvalue {min:e})"
            )));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4 {
        self.0
    }

    /// Convex combination `sum_k p_k rho_k`.
    pub fn mixture(terms: &[(f64, DensityMatrix)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("empty mixture".into()));
        }
        let mut total = 0.0;
        let mut m = Mat4::zeros();
        for (p, rho) in terms {
            if !(*p >= 0.0) {
                return Err(Error::Domain(format!("mixture weight {p} is negative")));
            }
            total += p;
            m = m + rho.0 * *p;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("mixture weights sum to {total}")));
        }
        Self::new(m)
    }

    pub fn reduced_a(&self) -> QubitState {
        let mut m = Mat2::zeros();
        for i in 0..2 {
            for k in 0..2 {
                m.0[i][k] = self.0 .0[2 * i][2 * k] + self.0 .0[2 * i + 1][2 * k + 1];
            }
        }
        QubitState(m)
    }

    pub fn reduced_b(&self) -> QubitState {
        let mut m = Mat2::zeros();
        for j in 0..2 {
            for l in 0..2 {
                m.0[j][l] = self.0 .0[j][l] + self.0 .0[2 + j][2 + l];
            }
        }
        QubitState(m)
    }
}

/// `|psi-><psi-|` with `|psi-> = (|ud> - |du>) / sqrt 2`.
pub fn make_singlet() -> DensityMatrix {
    let mut m = Mat4::zeros();
    m.0[1][1] = C64::new(0.5, 0.0);
    m.0[2][2] = C64::new(0.5, 0.0);
    m.0[1][2] = C64::new(-0.5, 0.0);
    m.0[2][1] = C64::new(-0.5, 0.0);
    DensityMatrix(m)
}

/// `(1 - x) I / 4 + x |psi-><psi-|` for `0 <= x <= 1`.
pub fn make_werner(x: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Werner parameter {x} outside [0, 1]")));
    }
    let m = Mat4::identity() * ((1.0 - x) / 4.0) + make_singlet().0 * x;
    Ok(DensityMatrix(m))
}

/// `rho_A (x) rho_B` from two Bloch vectors in the unit ball.
pub fn make_product(bloch_a: Vec3, bloch_b: Vec3) -> Result<DensityMatrix> {
    let a = QubitState::from_bloch(bloch_a)?;
    let b = QubitState::from_bloch(bloch_b)?;
    Ok(DensityMatrix(kron(&a.0, &b.0)))
}

/// Transpose on the second tensor factor.
pub fn partial_transpose_b(rho: &DensityMatrix) -> Mat4 {
    let src = &rho.0 .0;
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + j][2 * k + l] = src[2 * i + l][2 * k + j];
                }
            }
        }
    }
    m
}

/// Positive-partial-transpose test; exact separability criterion for two qubits.
pub fn is_separable_ppt(rho: &DensityMatrix, tol: f64) -> bool {
    min_partial_transpose_eigenvalue(rho) >= -tol
}

pub fn min_partial_transpose_eigenvalue(rho: &DensityMatrix) -> f64 {
    jacobi_eigenvalues(partial_transpose_b(rho))[0]
}

/// Ascending eigenvalues of a Hermitian 4x4 matrix.
pub fn hermitian_eigenvalues(m: &Mat4) -> Result<[f64; 4]> {
    if !m.is_finite() {
        return Err(Error::InvalidState("non-finite entry".into()));
    }
    let defect = m.hermiticity_defect();
    if defect > EIGEN_HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(jacobi_eigenvalues(*m))
}

/// Cyclic complex Jacobi. Each rotation `G = diag(1, e^{-i phi}) R(theta)`
/// zeroes one off-diagonal pair of `G^dagger A G`.
fn jacobi_eigenvalues(mut a: Mat4) -> [f64; 4] {
    const N: usize = 4;
    // symmetrize so the rotations act on an exactly Hermitian matrix
    for i in 0..N {
        a.0[i][i] = C64::new(a.0[i][i].re, 0.0);
        for j in (i + 1)..N {
            let avg = (a.0[i][j] + a.0[j][i].conj()) * 0.5;
            a.0[i][j] = avg;
            a.0[j][i] = avg.conj();
        }
    }
    let scale = a.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for _sweep in 0..64 {
        let off: f64 = (0..N)
            .flat_map(|i| ((i + 1)..N).map(move |j| (i, j)))
            .map(|(i, j)| a.0[i][j].norm_sqr())
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a.0[p][q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let e = phase.conj();
                let g = [[C64::new(c, 0.0), C64::new(s, 0.0)], [e * -s, e * c]];
                // A <- A G
                for k in 0..N {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q];
                    a.0[k][p] = akp * g[0][0] + akq * g[1][0];
                    a.0[k][q] = akp * g[0][1] + akq * g[1][1];
                }
                // A <- G^dagger A
                for k in 0..N {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k];
                    a.0[p][k] = g[0][0].conj() * apk + g[1][0].conj() * aqk;
                    a.0[q][k] = g[0][1].conj() * apk + g[1][1].conj() * aqk;
                }
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
                a.0[q][q] = C64::new(a.0[q][q].re, 0.0);
            }
        }
    }
    let mut eig = [a.0[0][0].re, a.0[1][1].re, a.0[2][2].re, a.0[3][3].re];
    eig.sort_by(f64::total_cmp);
    eig
}

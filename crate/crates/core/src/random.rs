//! Random states, settings and decompositions for sweeps and fuzzing.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{make_product, C64, DensityMatrix, Mat4, SettingPair, UnitVector3, Vec3};

/// Uniform direction on the sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> UnitVector3 {
    loop {
        let v: Vec3 = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        if let Ok(u) = UnitVector3::normalized(v) {
            return u;
        }
    }
}

/// Uniform point in the closed unit ball.
pub fn bloch_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let dir = unit_vector(rng).to_array();
    let r = rng.random::<f64>().cbrt();
    dir.map(|c| c * r)
}

/// Uniformly oriented orthonormal pair.
pub fn setting_pair<R: Rng + ?Sized>(rng: &mut R) -> SettingPair {
    let main = unit_vector(rng);
    let helper = unit_vector(rng);
    let c = main.cross(helper);
    let first = match UnitVector3::normalized(c) {
        Ok(u) => u,
        Err(_) => return setting_pair(rng),
    };
    let angle = rng.random::<f64>() * TAU;
    let second = main.cross(first);
    let perp = [0, 1, 2].map(|k| angle.cos() * first.to_array()[k] + angle.sin() * second[k]);
    // renormalize once more to stay inside the 1e-12 unit tolerance
    let perp = UnitVector3::normalized(perp).expect("perp is a unit combination");
    SettingPair::new(main, perp).expect("perp is orthogonal by construction")
}

/// Random mixed state `G G^dagger / Tr` with a Ginibre factor of random rank 1..=4.
pub fn state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let rank = rng.random_range(1..=4);
    state_of_rank(rng, rank)
}

pub fn state_of_rank<R: Rng + ?Sized>(rng: &mut R, rank: usize) -> DensityMatrix {
    let rank = rank.clamp(1, 4);
    let mut g = [[C64::new(0.0, 0.0); 4]; 4];
    for row in g.iter_mut() {
        for z in row.iter_mut().take(rank) {
            *z = C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
    }
    let mut m = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = (0..rank).map(|k| g[i][k] * g[j][k].conj()).sum();
        }
    }
    let tr = m.trace().re;
    let mut m = m * (1.0 / tr);
    for i in 0..4 {
        m.0[i][i].im = 0.0;
        for j in (i + 1)..4 {
            m.0[j][i] = m.0[i][j].conj();
        }
    }
    DensityMatrix::new(m).expect("Gram matrix is a state")
}

/// One term `p_k rho_A^k (x) rho_B^k` of a separable decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparableTerm {
    pub weight: f64,
    pub bloch_a: Vec3,
    pub bloch_b: Vec3,
}

pub fn product_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    make_product(bloch_vector(rng), bloch_vector(rng)).expect("ball vectors")
}

/// Random decomposition with `terms` product components.
pub fn separable_decomposition<R: Rng + ?Sized>(rng: &mut R, terms: usize) -> Vec<SeparableTerm> {
    let terms = terms.max(1);
    let raw: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut out: Vec<SeparableTerm> = raw
        .iter()
        .map(|w| SeparableTerm {
            weight: w / total,
            bloch_a: bloch_vector(rng),
            bloch_b: bloch_vector(rng),
        })
        .collect();
    // absorb rounding into the last weight so the sum is 1 to machine precision
    let head: f64 = out[..terms - 1].iter().map(|t| t.weight).sum();
    out[terms - 1].weight = 1.0 - head;
    out
}

pub fn separable_state(terms: &[SeparableTerm]) -> DensityMatrix {
    let parts: Vec<(f64, DensityMatrix)> = terms
        .iter()
        .map(|t| (t.weight, make_product(t.bloch_a, t.bloch_b).expect("ball vectors")))
        .collect();
    DensityMatrix::mixture(&parts).expect("convex combination of states")
}

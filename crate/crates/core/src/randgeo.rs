//! Samplers for the invariant measures the verified statements quantify
//! over: the uniform measure on G_{k,n}, surface measure on spheres, Haar
//! measure on SO(n), and the (truncated) product measure on affine k-planes.
//!
//! Reproducibility contract: every sampler takes a [`RngStream`]; identical
//! (seed, stream_id) pairs reproduce identical sample sequences, and
//! distinct stream ids may be consumed concurrently. This is part of the
//! public interface so reports can be reproduced across runs.

use crate::geom::{qr_orthonormalize, AffineKPlane, Subspace};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Identity of a counter-based RNG stream: (seed, stream_id) keys a
/// ChaCha stream, so parallel partitions stay reproducible without shared
/// state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    /// Instantiate the generator positioned at the start of the stream.
    pub fn rng(&self) -> ChaCha12Rng {
        let mut r = ChaCha12Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream_id);
        r
    }

    /// A sibling stream under the same seed.
    pub fn substream(&self, offset: u64) -> Self {
        RngStream::new(self.seed, self.stream_id.wrapping_add(offset))
    }
}

/// Ball of radius R in the orthogonal complement to which the Lebesgue
/// factor of the affine-plane measure is restricted when sampling (the full
/// measure is infinite).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TruncationBox {
    pub radius: f64,
}

impl TruncationBox {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "truncation radius must be positive and finite, got {radius}"
            )));
        }
        Ok(TruncationBox { radius })
    }
}

/// Volume of the unit ball in R^d (d = 0 gives 1).
pub fn unit_ball_volume(d: usize) -> f64 {
    // V_0 = 1, V_1 = 2, V_d = V_{d-2} * 2 pi / d
    match d {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(d - 2) * 2.0 * std::f64::consts::PI / d as f64,
    }
}

/// Volume of the radius-R ball in R^d.
pub fn ball_volume(d: usize, r: f64) -> f64 {
    unit_ball_volume(d) * r.powi(d as i32)
}

/// Surface area of the unit sphere S^{d-1} in R^d.
pub fn sphere_area(d: usize) -> f64 {
    d as f64 * unit_ball_volume(d)
}

fn gaussian_vector<R: Rng>(n: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(n, |_, _| StandardNormal.sample(rng))
}

fn gaussian_matrix<R: Rng>(n: usize, k: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(n, k, |_, _| StandardNormal.sample(rng))
}

/// Uniform sample from S^{n-1} (for n = 1, +-1 with equal probability).
pub fn sample_sphere<R: Rng>(n: usize, rng: &mut R) -> DVector<f64> {
    assert!(n >= 1, "need n >= 1");
    if n == 1 {
        let s: f64 = if rng.random::<bool>() { 1.0 } else { -1.0 };
        return DVector::from_element(1, s);
    }
    loop {
        let g = gaussian_vector(n, rng);
        let norm = g.norm();
        if norm > 1e-12 {
            return g / norm;
        }
    }
}

/// Uniform sample from the radius-r ball in R^d (d = 0 gives the empty
/// vector).
pub fn sample_ball<R: Rng>(d: usize, r: f64, rng: &mut R) -> DVector<f64> {
    if d == 0 {
        return DVector::zeros(0);
    }
    let dir = sample_sphere(d, rng);
    let u: f64 = rng.random();
    dir * (r * u.powf(1.0 / d as f64))
}

/// Uniform (rotation-invariant) sample from G_{k,n}.
///
/// A Gaussian n-by-k matrix has an O(n)-invariant law, so the span of its
/// sign-fixed QR factor follows the unique invariant probability measure on
/// the Grassmannian.
pub fn sample_grassmann<R: Rng>(n: usize, k: usize, rng: &mut R) -> Subspace {
    assert!(k >= 1 && k < n, "need 1 <= k < n");
    loop {
        let g = gaussian_matrix(n, k, rng);
        if let Ok(s) = Subspace::from_frame(qr_orthonormalize(&g)) {
            return s;
        }
    }
}

/// Uniform sample from the unit sphere inside the given subspace,
/// returned as an ambient vector.
pub fn sample_sphere_in_subspace<R: Rng>(theta: &Subspace, rng: &mut R) -> DVector<f64> {
    let u = sample_sphere(theta.plane_dim(), rng);
    theta.frame() * u
}

/// Haar sample from SO(n): sign-fixed QR of a Gaussian matrix gives Haar on
/// O(n); a final column flip maps it to SO(n).
pub fn sample_rotation<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    assert!(n >= 2, "need n >= 2");
    let mut q = qr_orthonormalize(&gaussian_matrix(n, n, rng));
    if q.determinant() < 0.0 {
        let last = n - 1;
        for i in 0..n {
            q[(i, last)] = -q[(i, last)];
        }
    }
    q
}

/// A sample from the truncated affine-plane measure together with its
/// importance weight (the volume of the truncation ball in the complement),
/// so that `weight * g(sample)` averages to the truncated integral of g.
pub struct WeightedPlane {
    pub plane: AffineKPlane,
    pub weight: f64,
}

/// Sample theta uniformly, then the base point uniformly in the radius-R
/// ball of the orthogonal complement.
pub fn sample_affine_plane<R: Rng>(
    n: usize,
    k: usize,
    bx: &TruncationBox,
    rng: &mut R,
) -> WeightedPlane {
    let theta = sample_grassmann(n, k, rng);
    let comp = theta.complement();
    let y = sample_ball(n - k, bx.radius, rng);
    let base = &comp * y;
    let weight = ball_volume(n - k, bx.radius);
    WeightedPlane {
        plane: AffineKPlane { theta, base },
        weight,
    }
}

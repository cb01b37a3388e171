//! Monte-Carlo and quadrature evaluators: the k-plane transform, the sphere
//! transform, mixed norms over the affine-plane measure, the multilinear
//! forms (by definition and by Gram-kernel factorization), and the
//! one-dimensional radial and latitude operators.
//!
//! All improper integrals are truncated using field metadata; truncation
//! radii travel with every estimate so reports stay auditable. Nested
//! estimators report stderr from the outer loop only, with inner noise
//! folded into the outer variance.

use crate::fields::{ScalarField, SphereField};
use crate::geom::{gram_det, span_subspace, AffineKPlane, Subspace};
use crate::randgeo::{ball_volume, sample_ball, RngStream, TruncationBox};
use crate::{Error, Result};
use nalgebra::DVector;
use rand::Rng;
use serde::Serialize;

/// Relative threshold below which a Gram-weight draw counts as degenerate
/// and is rejected (the weight is integrable but single samples overflow).
pub const GRAM_REJECT_TOL: f64 = 1e-12;

/// A Monte-Carlo result. `stderr` is the sample standard deviation divided
/// by sqrt(samples); no Gaussian assumption is made for small counts.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MCEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub stream_id: u64,
}

impl MCEstimate {
    pub fn exact(value: f64, stream: RngStream) -> Self {
        MCEstimate {
            value,
            stderr: 0.0,
            samples: 0,
            seed: stream.seed,
            stream_id: stream.stream_id,
        }
    }

    pub fn from_values(values: &[f64], stream: RngStream) -> Self {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
            / (n.saturating_sub(1).max(1)) as f64;
        MCEstimate {
            value: mean,
            stderr: (var / n as f64).sqrt(),
            samples: n,
            seed: stream.seed,
            stream_id: stream.stream_id,
        }
    }
}

/// Sampling plan for one estimator call.
#[derive(Debug, Clone, Copy)]
pub struct QuadSpec {
    pub samples: usize,
    /// Override for the truncation radius taken from field metadata.
    pub radius_override: Option<f64>,
    /// Permit fields flagged non-integrable along planes.
    pub divergence_mode: bool,
}

impl QuadSpec {
    pub fn new(samples: usize) -> Result<Self> {
        if samples < 100 {
            return Err(Error::InvalidInput(format!(
                "need at least 100 samples, got {samples}"
            )));
        }
        Ok(QuadSpec {
            samples,
            radius_override: None,
            divergence_mode: false,
        })
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.radius_override = Some(r);
        self
    }

    pub fn with_divergence_mode(mut self) -> Self {
        self.divergence_mode = true;
        self
    }

    /// Default sqrt split for nested loops.
    pub fn split(&self) -> (usize, usize) {
        let s = (self.samples as f64).sqrt().ceil() as usize;
        (s.max(10), s.max(10))
    }
}

fn integration_radius(f: &ScalarField, q: &QuadSpec) -> Result<f64> {
    if let Some(r) = q.radius_override {
        return Ok(r);
    }
    f.truncation_radius().ok_or_else(|| {
        Error::NonIntegrable(format!(
            "field `{}` has no truncation radius; supply one explicitly",
            f.name
        ))
    })
}

fn check_integrable(f: &ScalarField, q: &QuadSpec) -> Result<()> {
    if !f.integrable_along_planes && !q.divergence_mode {
        return Err(Error::NonIntegrable(format!(
            "field `{}` diverges along planes; enable divergence mode to proceed",
            f.name
        )));
    }
    Ok(())
}

/// The k-plane transform: the k-dimensional integral of f over the affine
/// plane base + theta, estimated as (ball volume) times the mean of f over
/// uniform draws in the truncated k-ball of the plane.
pub fn kplane_transform(
    f: &ScalarField,
    plane: &AffineKPlane,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    check_integrable(f, q)?;
    let r = integration_radius(f, q)?;
    let mut rng = stream.rng();
    Ok(kplane_transform_inner(f, plane, r, q.samples, &mut rng, stream))
}

fn kplane_transform_inner<R: Rng>(
    f: &ScalarField,
    plane: &AffineKPlane,
    radius: f64,
    samples: usize,
    rng: &mut R,
    stream: RngStream,
) -> MCEstimate {
    let k = plane.theta.plane_dim();
    let vol = ball_volume(k, radius);
    // the transform depends on the base only through its component in the
    // orthogonal complement, so project it there before sampling
    let coeffs = plane.theta.frame().transpose() * &plane.base;
    let base = &plane.base - plane.theta.frame() * coeffs;
    let values: Vec<f64> = (0..samples)
        .map(|_| {
            let u = sample_ball(k, radius, rng);
            let y = plane.theta.frame() * u;
            vol * f.evaluate(&(&base + y))
        })
        .collect();
    MCEstimate::from_values(&values, stream)
}

/// The sphere transform: the mean of f over the unit sphere of the
/// subspace. For k = 1 this is the exact two-point average
/// (f(eta) + f(-eta)) / 2 with zero stderr.
pub fn sphere_transform(
    f: &SphereField,
    theta: &Subspace,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    let mut rng = stream.rng();
    Ok(sphere_transform_inner(f, theta, q.samples, &mut rng, stream))
}

fn sphere_transform_inner<R: Rng>(
    f: &SphereField,
    theta: &Subspace,
    samples: usize,
    rng: &mut R,
    stream: RngStream,
) -> MCEstimate {
    if theta.plane_dim() == 1 {
        let eta = theta.frame().column(0).into_owned();
        let value = 0.5 * (f.evaluate(&eta) + f.evaluate(&(-eta)));
        return MCEstimate::exact(value, stream);
    }
    let values: Vec<f64> = (0..samples)
        .map(|_| {
            let w = crate::randgeo::sample_sphere_in_subspace(theta, rng);
            f.evaluate(&w)
        })
        .collect();
    MCEstimate::from_values(&values, stream)
}

/// Mixed norm of the k-plane transform of f over the affine-plane measure:
/// outer exponent `qexp` over the Grassmannian, inner exponent `rexp` over
/// the truncated orthogonal-complement variable.
#[allow(clippy::too_many_arguments)]
pub fn mixed_norm(
    f: &ScalarField,
    n: usize,
    k: usize,
    qexp: f64,
    rexp: f64,
    bx: &TruncationBox,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    check_integrable(f, q)?;
    if !(qexp >= 1.0 && rexp >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "exponents must be >= 1, got q={qexp}, r={rexp}"
        )));
    }
    let r_plane = integration_radius(f, q)?;
    let (n_outer, n_inner) = q.split();
    let base_vol = ball_volume(n - k, bx.radius);
    let mut rng = stream.rng();
    let mut outer_vals = Vec::with_capacity(n_outer);
    for _ in 0..n_outer {
        let theta = crate::randgeo::sample_grassmann(n, k, &mut rng);
        let comp = theta.complement();
        let mut inner_sum = 0.0;
        for _ in 0..n_inner {
            let x = &comp * sample_ball(n - k, bx.radius, &mut rng);
            let plane = AffineKPlane {
                theta: theta.clone(),
                base: x,
            };
            let t = kplane_transform_inner(f, &plane, r_plane, n_inner, &mut rng, stream);
            inner_sum += t.value.abs().powf(rexp);
        }
        let inner = base_vol * inner_sum / n_inner as f64;
        outer_vals.push(inner.powf(qexp / rexp));
    }
    let est = MCEstimate::from_values(&outer_vals, stream);
    // delta method for m -> m^{1/q}
    let value = est.value.max(0.0).powf(1.0 / qexp);
    let stderr = if est.value > 0.0 {
        est.value.powf(1.0 / qexp - 1.0) / qexp * est.stderr
    } else {
        est.stderr
    };
    Ok(MCEstimate {
        value,
        stderr,
        samples: n_outer,
        seed: stream.seed,
        stream_id: stream.stream_id,
    })
}

/// The multilinear form by definition: the product of n+1 k-plane
/// transforms integrated against the truncated affine-plane measure.
pub fn multilinear_a(
    fs: &[ScalarField],
    k: usize,
    bx: &TruncationBox,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    if fs.is_empty() {
        return Err(Error::InvalidInput("no fields given".into()));
    }
    let n = fs[0].dim;
    if fs.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "the form needs n+1 = {} fields, got {}",
            n + 1,
            fs.len()
        )));
    }
    let mut radii = Vec::with_capacity(fs.len());
    for f in fs {
        check_integrable(f, q)?;
        radii.push(integration_radius(f, q)?);
    }
    let (n_outer, n_inner) = q.split();
    let mut rng = stream.rng();
    let mut vals = Vec::with_capacity(n_outer);
    for _ in 0..n_outer {
        let wp = crate::randgeo::sample_affine_plane(n, k, bx, &mut rng);
        let mut prod = wp.weight;
        for (f, &rad) in fs.iter().zip(&radii) {
            let t = kplane_transform_inner(f, &wp.plane, rad, n_inner, &mut rng, stream);
            prod *= t.value;
        }
        vals.push(prod);
    }
    Ok(MCEstimate::from_values(&vals, stream))
}

/// Result of the kernel-form estimator, carrying the degenerate-draw
/// rejection fraction (rejections bias the estimate by at most the rejected
/// mass; the fraction is reported so verdicts can account for it).
#[derive(Debug, Clone, Copy)]
pub struct KernelEstimate {
    pub estimate: MCEstimate,
    pub rejection_fraction: f64,
}

/// The multilinear form rewritten over point tuples: draws (x_0, ..., x_k)
/// in the support balls, weights by the Gram determinant to the power
/// (k-n)/2, and integrates the remaining factors over the spanned plane.
/// The unknown proportionality constant is NOT applied; consumers compare
/// ratios only.
pub fn multilinear_a_kernel(
    fs: &[ScalarField],
    k: usize,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<KernelEstimate> {
    if fs.is_empty() {
        return Err(Error::InvalidInput("no fields given".into()));
    }
    let n = fs[0].dim;
    if fs.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "the form needs n+1 = {} fields, got {}",
            n + 1,
            fs.len()
        )));
    }
    let mut radii = Vec::with_capacity(fs.len());
    for f in fs {
        check_integrable(f, q)?;
        radii.push(integration_radius(f, q)?);
    }
    let (n_outer, n_inner) = q.split();
    let point_vol: f64 = radii[..=k].iter().map(|&r| ball_volume(n, r)).product();
    let exponent = (k as f64 - n as f64) / 2.0;
    let mut rng = stream.rng();
    let mut vals = Vec::with_capacity(n_outer);
    let mut rejected = 0usize;
    for _ in 0..n_outer {
        let points: Vec<DVector<f64>> = (0..=k).map(|j| sample_ball(n, radii[j], &mut rng)).collect();
        let diffs: Vec<DVector<f64>> = (1..=k).map(|j| &points[j] - &points[0]).collect();
        let gd = gram_det(&diffs).unwrap_or(0.0);
        let scale: f64 = diffs.iter().map(|d| d.norm_squared()).product();
        if gd < GRAM_REJECT_TOL * scale || scale == 0.0 {
            rejected += 1;
            vals.push(0.0);
            continue;
        }
        let theta = match span_subspace(&diffs) {
            Ok(t) => t,
            Err(_) => {
                rejected += 1;
                vals.push(0.0);
                continue;
            }
        };
        let mut prod: f64 = point_vol * gd.powf(exponent);
        for j in 0..=k {
            prod *= fs[j].evaluate(&points[j]);
        }
        if prod != 0.0 {
            let x0_norm = points[0].norm();
            for j in k + 1..=n {
                // integrate y -> f_j(x_0 + y) over the spanned plane
                let rad = radii[j] + x0_norm;
                let vol = ball_volume(k, rad);
                let mut acc = 0.0;
                for _ in 0..n_inner {
                    let u = sample_ball(k, rad, &mut rng);
                    let y = theta.frame() * u;
                    acc += fs[j].evaluate(&(&points[0] + y));
                }
                prod *= vol * acc / n_inner as f64;
            }
        }
        vals.push(prod);
    }
    Ok(KernelEstimate {
        estimate: MCEstimate::from_values(&vals, stream),
        rejection_fraction: rejected as f64 / n_outer as f64,
    })
}

/// The sphere multilinear form: the product of n sphere transforms
/// integrated over the Grassmannian probability measure.
pub fn multilinear_b(
    fs: &[SphereField],
    k: usize,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    if fs.is_empty() {
        return Err(Error::InvalidInput("no fields given".into()));
    }
    let n = fs[0].dim;
    if fs.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "the sphere form needs n = {n} fields, got {}",
            fs.len()
        )));
    }
    let (n_outer, n_inner) = q.split();
    let mut rng = stream.rng();
    let mut vals = Vec::with_capacity(n_outer);
    for _ in 0..n_outer {
        let theta = crate::randgeo::sample_grassmann(n, k, &mut rng);
        let mut prod = 1.0;
        for f in fs {
            prod *= sphere_transform_inner(f, &theta, n_inner, &mut rng, stream).value;
        }
        vals.push(prod);
    }
    Ok(MCEstimate::from_values(&vals, stream))
}

/// The radial operator: the integral of f(t omega) t^{alpha-1} over t > 0,
/// truncated at the field's radius. Computed by the substitution u = t^alpha
/// (which removes the endpoint weight) and a composite midpoint rule.
pub fn b_alpha(
    f: &ScalarField,
    omega: &DVector<f64>,
    alpha: f64,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidInput(format!("alpha must be > 0, got {alpha}")));
    }
    check_integrable(f, q)?;
    let t_max = integration_radius(f, q)?;
    let u_max = t_max.powf(alpha);
    let nodes = q.samples;
    let h = u_max / nodes as f64;
    let mut sum = 0.0;
    for i in 0..nodes {
        let u = (i as f64 + 0.5) * h;
        let t = u.powf(1.0 / alpha);
        sum += f.evaluate(&(omega * t));
    }
    Ok(MCEstimate::exact(sum * h / alpha, stream))
}

/// Embed the latitude parameterization: (cos t, (sin t) omega_tilde).
pub fn latitude_point(t: f64, omega_tilde: &DVector<f64>) -> DVector<f64> {
    let n = omega_tilde.len() + 1;
    let mut w = DVector::zeros(n);
    w[0] = t.cos();
    let s = t.sin();
    for i in 0..n - 1 {
        w[i + 1] = s * omega_tilde[i];
    }
    w
}

/// The latitude operator: the integral over t in (0, pi) of
/// f(cos t, (sin t) omega_tilde) |sin t|^{alpha-2}. Requires alpha > 1 so
/// the endpoint weight is integrable; each half is regularized by the
/// substitution v = t^{alpha-1}.
pub fn c_alpha(
    f: &SphereField,
    omega_tilde: &DVector<f64>,
    alpha: f64,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    if !(alpha > 1.0) {
        return Err(Error::NonIntegrable(format!(
            "the latitude weight diverges for alpha <= 1 (got {alpha})"
        )));
    }
    let beta = alpha - 1.0;
    let half = std::f64::consts::FRAC_PI_2;
    let v_max = half.powf(beta);
    let nodes = (q.samples / 2).max(50);
    let h = v_max / nodes as f64;
    let mut total = 0.0;
    for mirror in [false, true] {
        let mut sum = 0.0;
        for i in 0..nodes {
            let v = (i as f64 + 0.5) * h;
            let t = v.powf(1.0 / beta);
            // (sin t / t)^{alpha-2} is the smooth remainder after the
            // substitution absorbs the t^{alpha-2} singularity
            let smooth = (t.sin() / t).powf(alpha - 2.0);
            let w = if mirror {
                latitude_point(std::f64::consts::PI - t, omega_tilde)
            } else {
                latitude_point(t, omega_tilde)
            };
            sum += f.evaluate(&w) * smooth;
        }
        total += sum * h / beta;
    }
    Ok(MCEstimate::exact(total, stream))
}

/// Monte-Carlo L^p norm of a scalar field over its truncation ball.
pub fn lp_norm_mc(
    f: &ScalarField,
    p: f64,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    let r = integration_radius(f, q)?;
    let vol = ball_volume(f.dim, r);
    let mut rng = stream.rng();
    let values: Vec<f64> = (0..q.samples)
        .map(|_| {
            let x = sample_ball(f.dim, r, &mut rng);
            vol * f.evaluate(&x).abs().powf(p)
        })
        .collect();
    let est = MCEstimate::from_values(&values, stream);
    let value = est.value.max(0.0).powf(1.0 / p);
    let stderr = if est.value > 0.0 {
        est.value.powf(1.0 / p - 1.0) / p * est.stderr
    } else {
        est.stderr
    };
    Ok(MCEstimate {
        value,
        stderr,
        samples: est.samples,
        seed: stream.seed,
        stream_id: stream.stream_id,
    })
}

/// Monte-Carlo L^p norm of a sphere field against surface measure.
pub fn sphere_lp_norm_mc(
    f: &SphereField,
    p: f64,
    q: &QuadSpec,
    stream: RngStream,
) -> Result<MCEstimate> {
    let area = crate::randgeo::sphere_area(f.dim);
    let mut rng = stream.rng();
    let values: Vec<f64> = (0..q.samples)
        .map(|_| {
            let w = crate::randgeo::sample_sphere(f.dim, &mut rng);
            area * f.evaluate(&w).abs().powf(p)
        })
        .collect();
    let est = MCEstimate::from_values(&values, stream);
    let value = est.value.max(0.0).powf(1.0 / p);
    let stderr = if est.value > 0.0 {
        est.value.powf(1.0 / p - 1.0) / p * est.stderr
    } else {
        est.stderr
    };
    Ok(MCEstimate {
        value,
        stderr,
        samples: est.samples,
        seed: stream.seed,
        stream_id: stream.stream_id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{ball_indicator, gaussian, log_divergent};
    use crate::geom::span_subspace;

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(x)
    }

    fn line_through(base: &[f64], dir: &[f64]) -> AffineKPlane {
        let theta = span_subspace(&[v(dir)]).unwrap();
        AffineKPlane::new(theta, v(base)).unwrap()
    }

    #[test]
    fn chord_through_center_is_diameter() {
        let f = ball_indicator(2, 1.0).unwrap();
        let plane = line_through(&[0.0, 0.0], &[1.0, 0.0]);
        let q = QuadSpec::new(100_000).unwrap();
        let est = kplane_transform(&f, &plane, &q, RngStream::new(1, 0)).unwrap();
        // the chord equals the truncation diameter, so every draw hits
        assert!((est.value - 2.0).abs() < 3.0 * est.stderr + 1e-12);
    }

    #[test]
    fn chord_at_half_distance() {
        // chord length 2 sqrt(1 - 1/4) = sqrt(3)
        let f = ball_indicator(2, 1.0).unwrap();
        let plane = line_through(&[0.0, 0.5], &[1.0, 0.0]);
        let q = QuadSpec::new(200_000).unwrap();
        let est = kplane_transform(&f, &plane, &q, RngStream::new(2, 0)).unwrap();
        assert!((est.value - 3.0_f64.sqrt()).abs() < 3.0 * est.stderr);
    }

    #[test]
    fn gaussian_plane_integral_is_one() {
        for (n, k) in [(2usize, 1usize), (3, 2)] {
            let f = gaussian(n, 1.0).unwrap();
            let theta = crate::randgeo::sample_grassmann(n, k, &mut RngStream::new(3, 0).rng());
            let plane = AffineKPlane::new(theta, DVector::zeros(n)).unwrap();
            let q = QuadSpec::new(400_000).unwrap();
            let est = kplane_transform(&f, &plane, &q, RngStream::new(4, 0)).unwrap();
            assert!(
                (est.value - 1.0).abs() < 3.0 * est.stderr,
                "(n,k)=({n},{k}): {} +- {}",
                est.value,
                est.stderr
            );
        }
    }

    #[test]
    fn kplane_refuses_divergent_field() {
        let f = log_divergent(2, 1, 0.6).unwrap();
        let plane = line_through(&[0.0, 0.0], &[1.0, 0.0]);
        let q = QuadSpec::new(1000).unwrap();
        assert!(matches!(
            kplane_transform(&f, &plane, &q, RngStream::new(5, 0)),
            Err(Error::NonIntegrable(_))
        ));
    }

    #[test]
    fn translation_identity_common_random_numbers() {
        // T f(x, theta) = T f(x_perp, theta): the integrand path is
        // identical, so with the same stream the estimates agree exactly.
        let f = gaussian(3, 1.0).unwrap();
        let theta = span_subspace(&[v(&[1.0, 0.0, 0.0])]).unwrap();
        let x = v(&[0.0, 0.4, -0.2]); // already in the complement
        let shifted = &x + v(&[0.7, 0.0, 0.0]); // add an in-plane component
        let q = QuadSpec::new(10_000).unwrap();
        let s = RngStream::new(6, 0);
        let a = kplane_transform(
            &f,
            &AffineKPlane::new(theta.clone(), x).unwrap(),
            &q,
            s,
        )
        .unwrap();
        // shifted base is not orthogonal, so integrate through the raw plane
        let plane = AffineKPlane {
            theta,
            base: shifted,
        };
        let b = kplane_transform(&f, &plane, &q, s).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
    }

    #[test]
    fn linearity_common_random_numbers() {
        let f = gaussian(2, 1.0).unwrap();
        let g = gaussian(2, 2.0).unwrap();
        let combo = {
            let (fc, gc) = (f.clone(), g.clone());
            ScalarField::new(
                2,
                "combo",
                crate::fields::Support::GaussianDecay {
                    rate: 1.0,
                    effective_radius: 2.5,
                },
                move |x| 2.0 * fc.evaluate(x) + 3.0 * gc.evaluate(x),
            )
        };
        let plane = line_through(&[0.0, 0.3], &[1.0, 0.0]);
        let q = QuadSpec::new(20_000).unwrap();
        let s = RngStream::new(7, 0);
        let ec = kplane_transform(&combo, &plane, &q, s).unwrap();
        let ef = kplane_transform(&f, &plane, &q, s).unwrap();
        // same stream and same radius: identical draws
        let eg = kplane_transform(&g, &plane, &q.with_radius(2.5), s).unwrap();
        assert!((ec.value - (2.0 * ef.value + 3.0 * eg.value)).abs() < 1e-10);
    }

    #[test]
    fn dilation_identity_exact_with_scaled_draws() {
        // T f^(delta)(x, theta) = delta^{-k} T f(delta x, theta); with the
        // same unit draws and the radius scaled by delta the identity is
        // exact sample by sample.
        let delta = 2.0;
        let f = gaussian(2, 1.0).unwrap();
        let fd = f.dilate(delta).unwrap();
        let theta = span_subspace(&[v(&[1.0, 0.0])]).unwrap();
        let x = v(&[0.0, 0.3]);
        let q = QuadSpec::new(10_000).unwrap();
        let s = RngStream::new(8, 0);
        let lhs = kplane_transform(
            &fd,
            &AffineKPlane::new(theta.clone(), x.clone()).unwrap(),
            &q,
            s,
        )
        .unwrap();
        let rhs = kplane_transform(
            &f,
            &AffineKPlane::new(theta, &x * delta).unwrap(),
            &q.with_radius(2.5), // base radius; fd truncates at 2.5/delta
            s,
        )
        .unwrap();
        assert!((lhs.value - rhs.value / delta).abs() < 1e-12);
    }

    #[test]
    fn sphere_transform_constant_is_one() {
        let f = crate::fields::const_one(3);
        let theta = span_subspace(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])]).unwrap();
        let q = QuadSpec::new(1000).unwrap();
        let est = sphere_transform(&f, &theta, &q, RngStream::new(9, 0)).unwrap();
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn sphere_transform_k1_exact_two_point() {
        let f = crate::fields::zonal_exp(3);
        let theta = span_subspace(&[v(&[0.0, 0.0, 1.0])]).unwrap();
        let q = QuadSpec::new(1000).unwrap();
        let est = sphere_transform(&f, &theta, &q, RngStream::new(10, 0)).unwrap();
        assert_eq!(est.stderr, 0.0);
        assert!((est.value - 1.0).abs() < 1e-12); // (e^0 + e^0)/2
    }

    #[test]
    fn sphere_transform_coordinate_square() {
        // f(w) = w_1^2 on span{e1, e2} averages to 1/k = 1/2
        let f = crate::fields::coordinate_power(3, 2).unwrap();
        let theta = span_subspace(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])]).unwrap();
        let q = QuadSpec::new(400_000).unwrap();
        let est = sphere_transform(&f, &theta, &q, RngStream::new(11, 0)).unwrap();
        assert!((est.value - 0.5).abs() < 3.0 * est.stderr);
    }

    #[test]
    fn mixed_norm_of_zero_field() {
        let z = ScalarField::new(2, "zero", crate::fields::Support::Compact(1.0), |_| 0.0);
        let bx = TruncationBox::new(2.0).unwrap();
        let q = QuadSpec::new(1000).unwrap();
        let est = mixed_norm(&z, 2, 1, 3.0, 3.0, &bx, &q, RngStream::new(12, 0)).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn multilinear_a_zero_slot() {
        let g = gaussian(2, 1.0).unwrap();
        let z = ScalarField::new(2, "zero", crate::fields::Support::Compact(1.0), |_| 0.0);
        let bx = TruncationBox::new(2.0).unwrap();
        let q = QuadSpec::new(2500).unwrap();
        let est =
            multilinear_a(&[g.clone(), g, z], 1, &bx, &q, RngStream::new(13, 0)).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn multilinear_a_kernel_zero_slot() {
        let g = gaussian(2, 1.0).unwrap();
        let z = ScalarField::new(2, "zero", crate::fields::Support::Compact(1.0), |_| 0.0);
        let q = QuadSpec::new(2500).unwrap();
        let ke = multilinear_a_kernel(&[g.clone(), g, z], 1, &q, RngStream::new(14, 0)).unwrap();
        assert_eq!(ke.estimate.value, 0.0);
    }

    #[test]
    fn multilinear_a_kernel_gaussians_finite_positive() {
        let g = gaussian(2, 1.0).unwrap();
        let q = QuadSpec::new(40_000).unwrap();
        let ke = multilinear_a_kernel(
            &[g.clone(), g.clone(), g],
            1,
            &q,
            RngStream::new(15, 0),
        )
        .unwrap();
        assert!(ke.estimate.value.is_finite());
        assert!(ke.estimate.value > 0.0);
        assert!(ke.rejection_fraction < 0.01);
    }

    #[test]
    fn multilinear_b_all_ones() {
        let fs = vec![
            crate::fields::const_one(3),
            crate::fields::const_one(3),
            crate::fields::const_one(3),
        ];
        let q = QuadSpec::new(1000).unwrap();
        let est = multilinear_b(&fs, 2, &q, RngStream::new(16, 0)).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn b_alpha_ball_profile() {
        // integral of t^{n-1} over (0, 1) = 1/n
        let n = 3;
        let f = ball_indicator(n, 1.0).unwrap();
        let omega = v(&[1.0, 0.0, 0.0]);
        let q = QuadSpec::new(20_000).unwrap();
        let est = b_alpha(&f, &omega, n as f64, &q, RngStream::new(17, 0)).unwrap();
        assert!((est.value - 1.0 / n as f64).abs() < 1e-4);
    }

    #[test]
    fn b_alpha_gaussian_half_line() {
        // integral of exp(-pi t^2) over (0, inf) = 1/2
        let f = gaussian(2, 1.0).unwrap();
        let omega = v(&[0.0, 1.0]);
        let q = QuadSpec::new(20_000).unwrap();
        let est = b_alpha(&f, &omega, 1.0, &q, RngStream::new(18, 0)).unwrap();
        assert!((est.value - 0.5).abs() < 1e-4);
    }

    #[test]
    fn b_alpha_zero_field() {
        let z = ScalarField::new(2, "zero", crate::fields::Support::Compact(1.0), |_| 0.0);
        let q = QuadSpec::new(1000).unwrap();
        let est = b_alpha(&z, &v(&[1.0, 0.0]), 2.0, &q, RngStream::new(19, 0)).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn c_alpha_constant_weights() {
        let f = crate::fields::const_one(3);
        let wt = v(&[1.0, 0.0]);
        let q = QuadSpec::new(40_000).unwrap();
        // alpha = 2: weight == 1, integral = pi
        let a2 = c_alpha(&f, &wt, 2.0, &q, RngStream::new(20, 0)).unwrap();
        assert!((a2.value - std::f64::consts::PI).abs() < 1e-4);
        // alpha = 3: integral of sin t = 2
        let a3 = c_alpha(&f, &wt, 3.0, &q, RngStream::new(21, 0)).unwrap();
        assert!((a3.value - 2.0).abs() < 1e-4);
    }

    #[test]
    fn c_alpha_odd_zonal_cancels() {
        // f(w) = w_1 = cos t integrates to zero against the flat weight
        let f = crate::fields::coordinate_power(3, 1).unwrap();
        let wt = v(&[0.0, 1.0]);
        let q = QuadSpec::new(40_000).unwrap();
        let est = c_alpha(&f, &wt, 2.0, &q, RngStream::new(22, 0)).unwrap();
        assert!(est.value.abs() < 1e-6);
    }

    #[test]
    fn c_alpha_rejects_small_alpha() {
        let f = crate::fields::const_one(3);
        let q = QuadSpec::new(1000).unwrap();
        assert!(matches!(
            c_alpha(&f, &v(&[1.0, 0.0]), 1.0, &q, RngStream::new(23, 0)),
            Err(Error::NonIntegrable(_))
        ));
    }

    #[test]
    fn quadspec_minimum_samples() {
        assert!(QuadSpec::new(99).is_err());
        assert!(QuadSpec::new(100).is_ok());
    }

    #[test]
    fn lp_norm_mc_matches_analytic() {
        let f = ball_indicator(2, 1.0).unwrap();
        let q = QuadSpec::new(200_000).unwrap();
        let est = lp_norm_mc(&f, 2.0, &q, RngStream::new(24, 0)).unwrap();
        let want = f.analytic_lp_norm(2.0).unwrap();
        assert!((est.value - want).abs() < (3.0 * est.stderr).max(0.02 * want));
    }
}

//! Registry of test functions on R^n and on the unit sphere, with support
//! and decay metadata. Every integral in the engine is truncated, so each
//! field declares the radius outside which its contribution is negligible.

use crate::randgeo::unit_ball_volume;
use crate::{Error, Result};
use nalgebra::DVector;
use std::collections::BTreeMap;
use std::sync::Arc;

type EvalFn = Arc<dyn Fn(&DVector<f64>) -> f64 + Send + Sync>;

/// Support metadata consumed by the integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// Identically zero outside the ball of this radius.
    Compact(f64),
    /// Gaussian decay; outside `effective_radius` the relative tail
    /// contribution is below 1e-6 and integrators truncate there.
    GaussianDecay { rate: f64, effective_radius: f64 },
    /// Heavy tail with no usable truncation radius; integrators must be
    /// given an explicit radius (divergence-demonstration mode).
    Infinite,
}

/// A test function on R^n.
#[derive(Clone)]
pub struct ScalarField {
    pub dim: usize,
    pub name: String,
    eval: EvalFn,
    pub support: Support,
    /// Known analytic L^p norms, keyed by p scaled by 1000 (exact table
    /// lookups only; no interpolation).
    analytic_lp: BTreeMap<u64, f64>,
    /// Supremum of |f|, when known (needed by the rearrangement machinery).
    pub sup_bound: Option<f64>,
    /// False for fields whose plane integrals diverge; transforms refuse
    /// them outside divergence mode.
    pub integrable_along_planes: bool,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("dim", &self.dim)
            .field("name", &self.name)
            .field("support", &self.support)
            .finish()
    }
}

fn lp_key(p: f64) -> u64 {
    (p * 1000.0).round() as u64
}

impl ScalarField {
    pub fn new(
        dim: usize,
        name: impl Into<String>,
        support: Support,
        eval: impl Fn(&DVector<f64>) -> f64 + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            dim,
            name: name.into(),
            eval: Arc::new(eval),
            support,
            analytic_lp: BTreeMap::new(),
            sup_bound: None,
            integrable_along_planes: true,
        }
    }

    pub fn evaluate(&self, x: &DVector<f64>) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        (self.eval)(x)
    }

    pub fn with_lp_norm(mut self, p: f64, value: f64) -> Self {
        self.analytic_lp.insert(lp_key(p), value);
        self
    }

    pub fn with_sup_bound(mut self, b: f64) -> Self {
        self.sup_bound = Some(b);
        self
    }

    pub fn analytic_lp_norm(&self, p: f64) -> Option<f64> {
        self.analytic_lp.get(&lp_key(p)).copied()
    }

    /// Radius to which integrals against this field are truncated.
    pub fn truncation_radius(&self) -> Option<f64> {
        match self.support {
            Support::Compact(r) => Some(r),
            Support::GaussianDecay {
                effective_radius, ..
            } => Some(effective_radius),
            Support::Infinite => None,
        }
    }

    /// The dilate x -> f(delta x). Support shrinks by delta and L^p norms
    /// rescale by delta^{-n/p}.
    pub fn dilate(&self, delta: f64) -> Result<ScalarField> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "dilation parameter must be positive, got {delta}"
            )));
        }
        let inner = self.eval.clone();
        let n = self.dim as f64;
        let support = match self.support {
            Support::Compact(r) => Support::Compact(r / delta),
            Support::GaussianDecay {
                rate,
                effective_radius,
            } => Support::GaussianDecay {
                rate: rate * delta,
                effective_radius: effective_radius / delta,
            },
            Support::Infinite => Support::Infinite,
        };
        let analytic_lp = self
            .analytic_lp
            .iter()
            .map(|(&key, &v)| {
                let p = key as f64 / 1000.0;
                (key, v * delta.powf(-n / p))
            })
            .collect();
        Ok(ScalarField {
            dim: self.dim,
            name: format!("{}^({})", self.name, delta),
            eval: Arc::new(move |x: &DVector<f64>| inner(&(x * delta))),
            support,
            analytic_lp,
            sup_bound: self.sup_bound,
            integrable_along_planes: self.integrable_along_planes,
        })
    }
}

/// A test function on the unit sphere S^{n-1}.
#[derive(Clone)]
pub struct SphereField {
    pub dim: usize,
    pub name: String,
    eval: EvalFn,
    pub sup_bound: Option<f64>,
}

impl std::fmt::Debug for SphereField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SphereField")
            .field("dim", &self.dim)
            .field("name", &self.name)
            .finish()
    }
}

impl SphereField {
    pub fn new(
        dim: usize,
        name: impl Into<String>,
        eval: impl Fn(&DVector<f64>) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SphereField {
            dim,
            name: name.into(),
            eval: Arc::new(eval),
            sup_bound: None,
        }
    }

    pub fn with_sup_bound(mut self, b: f64) -> Self {
        self.sup_bound = Some(b);
        self
    }

    pub fn evaluate(&self, omega: &DVector<f64>) -> f64 {
        debug_assert_eq!(omega.len(), self.dim);
        (self.eval)(omega)
    }
}

/// Indicator of the ball of radius r.
pub fn ball_indicator(n: usize, r: f64) -> Result<ScalarField> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidInput(format!("ball radius {r} invalid")));
    }
    let vol = unit_ball_volume(n) * r.powi(n as i32);
    let mut f = ScalarField::new(n, format!("ball(r={r})"), Support::Compact(r), move |x| {
        if x.norm() <= r {
            1.0
        } else {
            0.0
        }
    })
    .with_sup_bound(1.0);
    for p in [1.0, 1.5, 2.0, 2.5, 3.0] {
        f = f.with_lp_norm(p, vol.powf(1.0 / p));
    }
    Ok(f)
}

/// Gaussian exp(-pi gamma^2 |x|^2); for gamma = 1 the L^1 norm is 1.
pub fn gaussian(n: usize, gamma: f64) -> Result<ScalarField> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidInput(format!("gaussian rate {gamma} invalid")));
    }
    let g2 = gamma * gamma;
    let nn = n as f64;
    let mut f = ScalarField::new(
        n,
        format!("gauss(gamma={gamma})"),
        Support::GaussianDecay {
            rate: gamma,
            effective_radius: 2.5 / gamma,
        },
        move |x| (-std::f64::consts::PI * g2 * x.norm_squared()).exp(),
    )
    .with_sup_bound(1.0);
    for p in [1.0, 1.5, 2.0, 2.5, 3.0] {
        // \int exp(-p pi g^2 |x|^2) dx = (p g^2)^{-n/2}
        f = f.with_lp_norm(p, (p * g2).powf(-nn / (2.0 * p)));
    }
    Ok(f)
}

/// Tube indicator: unit k-ball in the first block times the eps-ball in the
/// last n-k coordinates.
pub fn tube(n: usize, k: usize, eps: f64) -> Result<ScalarField> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("tube width {eps} invalid")));
    }
    if k < 1 || k >= n {
        return Err(Error::InvalidInput(format!(
            "tube split needs 1 <= k < n, got n={n}, k={k}"
        )));
    }
    let vol = unit_ball_volume(k) * unit_ball_volume(n - k) * eps.powi((n - k) as i32);
    let radius = (1.0 + eps * eps).sqrt();
    let mut f = ScalarField::new(
        n,
        format!("tube(eps={eps},k={k})"),
        Support::Compact(radius),
        move |x| {
            let head = x.rows(0, k).norm();
            let tail = x.rows(k, n - k).norm();
            if head <= 1.0 && tail <= eps {
                1.0
            } else {
                0.0
            }
        },
    )
    .with_sup_bound(1.0);
    for p in [1.0, 1.5, 2.0, 2.5, 3.0] {
        f = f.with_lp_norm(p, vol.powf(1.0 / p));
    }
    Ok(f)
}

/// The divergence example: (1+|x|)^{-k} (log(2+|x|))^{-delta}. In L^p for
/// kp >= n and p delta > 1, yet its integral over every k-plane diverges
/// when delta < 1. Flagged non-integrable along planes.
pub fn log_divergent(n: usize, k: usize, delta: f64) -> Result<ScalarField> {
    if k < 1 || k >= n || !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "log_divergent params invalid: n={n}, k={k}, delta={delta}"
        )));
    }
    let kk = k as f64;
    let mut f = ScalarField::new(
        n,
        format!("logdiv(k={k},delta={delta})"),
        Support::Infinite,
        move |x| {
            let r = x.norm();
            (1.0 + r).powf(-kk) * (2.0 + r).ln().powf(-delta)
        },
    )
    .with_sup_bound(2.0_f64.ln().powf(-delta));
    f.integrable_along_planes = delta >= 1.0;
    Ok(f)
}

/// Radial power |x|^{-a}, capped at `cap` near the origin and truncated to
/// the unit ball. Useful for rearrangement and interpolation sweeps.
pub fn power_law(n: usize, a: f64, cap: f64) -> Result<ScalarField> {
    if !(a > 0.0 && cap > 0.0) {
        return Err(Error::InvalidInput(format!(
            "power_law params invalid: a={a}, cap={cap}"
        )));
    }
    Ok(ScalarField::new(
        n,
        format!("power(a={a})"),
        Support::Compact(1.0),
        move |x| {
            let r = x.norm();
            if r > 1.0 {
                0.0
            } else {
                r.powf(-a).min(cap)
            }
        },
    )
    .with_sup_bound(cap))
}

/// Indicator of the polar cap of the given opening angle about e1.
pub fn zonal_cap(n: usize, angle: f64) -> Result<SphereField> {
    if !(angle > 0.0 && angle <= std::f64::consts::PI) {
        return Err(Error::InvalidInput(format!("cap angle {angle} invalid")));
    }
    let c = angle.cos();
    Ok(
        SphereField::new(n, format!("cap(angle={angle})"), move |w| {
            if w[0] > c {
                1.0
            } else {
                0.0
            }
        })
        .with_sup_bound(1.0),
    )
}

/// The zonal monomial omega_1^m.
pub fn coordinate_power(n: usize, m: u32) -> Result<SphereField> {
    Ok(
        SphereField::new(n, format!("coordpow(m={m})"), move |w| w[0].powi(m as i32))
            .with_sup_bound(1.0),
    )
}

/// Constant 1 on the sphere.
pub fn const_one(n: usize) -> SphereField {
    SphereField::new(n, "one", |_| 1.0).with_sup_bound(1.0)
}

/// Smooth zonal function exp(<omega, e1>).
pub fn zonal_exp(n: usize) -> SphereField {
    SphereField::new(n, "zonal_exp", |w| w[0].exp()).with_sup_bound(std::f64::consts::E)
}

/// Either kind of built-in field; what the CLI mini-format produces.
#[derive(Debug, Clone)]
pub enum BuiltField {
    Scalar(ScalarField),
    Sphere(SphereField),
}

/// Parse the CLI field mini-format `name:param=value,...`, e.g. `ball:r=1`,
/// `gauss`, `tube:eps=0.1,k=1`, `logdiv:k=1,delta=0.6`, `cap:angle=0.5`,
/// `coordpow:m=2`, `power:a=0.5`.
pub fn parse_field_spec(spec: &str, n: usize) -> Result<BuiltField> {
    let (name, rest) = match spec.split_once(':') {
        Some((a, b)) => (a, b),
        None => (spec, ""),
    };
    let mut params: BTreeMap<&str, f64> = BTreeMap::new();
    if !rest.is_empty() {
        for kv in rest.split(',') {
            let (key, val) = kv.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!("malformed field parameter `{kv}` in `{spec}`"))
            })?;
            let v: f64 = val.parse().map_err(|_| {
                Error::InvalidInput(format!("non-numeric value `{val}` in `{spec}`"))
            })?;
            params.insert(key, v);
        }
    }
    let get = |key: &str, default: Option<f64>| -> Result<f64> {
        params
            .get(key)
            .copied()
            .or(default)
            .ok_or_else(|| Error::InvalidInput(format!("field `{name}` needs parameter `{key}`")))
    };
    match name {
        "ball" => Ok(BuiltField::Scalar(ball_indicator(n, get("r", Some(1.0))?)?)),
        "gauss" => Ok(BuiltField::Scalar(gaussian(n, get("gamma", Some(1.0))?)?)),
        "tube" => {
            let k = get("k", Some(1.0))? as usize;
            Ok(BuiltField::Scalar(tube(n, k, get("eps", None)?)?))
        }
        "logdiv" => {
            let k = get("k", Some(1.0))? as usize;
            Ok(BuiltField::Scalar(log_divergent(n, k, get("delta", None)?)?))
        }
        "power" => Ok(BuiltField::Scalar(power_law(
            n,
            get("a", None)?,
            get("cap", Some(1e6))?,
        )?)),
        "cap" => Ok(BuiltField::Sphere(zonal_cap(n, get("angle", None)?)?)),
        "coordpow" => Ok(BuiltField::Sphere(coordinate_power(
            n,
            get("m", Some(2.0))? as u32,
        )?)),
        "one" => Ok(BuiltField::Sphere(const_one(n))),
        "zonal_exp" => Ok(BuiltField::Sphere(zonal_exp(n))),
        _ => Err(Error::InvalidInput(format!("unknown field name `{name}`"))),
    }
}

//! Holomorphic self-maps of `H` and their orbits.
//!
//! The maps handled here fix the boundary point at infinity and are
//! classified by the angular derivative there: larger than 1 means
//! hyperbolic type, equal to 1 parabolic type. Iteration is carried out
//! in log-polar coordinates so orbits survive far past the range where
//! `|f^n(z)|` overflows a double.

use alloc::vec::Vec;
use core::fmt;

use libm::{exp, fabs, hypot, log};

use crate::geometry::{dist_h, Complex, HalfPlanePoint, HypDistance};

/// `|z|` beyond this log-modulus is applied asymptotically: the additive
/// part of an affine map is below one ulp of the multiplicative part.
const ASYMPTOTIC_LOG_R: f64 = 640.0;

/// Angular derivatives within this margin of 1 are treated as parabolic.
const CLASSIFY_MARGIN: f64 = 1e-9;

/// Spread tolerance for the angular derivative estimate at the probe tail.
const ESTIMATE_SPREAD_TOL: f64 = 1e-6;

/// `b_hat` below this magnitude marks a zero-step parabolic orbit.
const ZERO_STEP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DynError {
    /// Map parameters outside the admissible range.
    InvalidMap,
    /// Application produced a point outside the open half-plane.
    LeftHalfPlane,
    /// Intermediate values exceeded the representable range.
    Overflow,
    /// Orbit stopped early; `at` is the index of the last valid point.
    Truncated { at: usize },
    /// Angular derivative probe did not settle.
    EstimateDiverged { spread: f64 },
}

impl fmt::Display for DynError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynError::InvalidMap => write!(f, "map parameters outside admissible range"),
            DynError::LeftHalfPlane => write!(f, "map left the half-plane"),
            DynError::Overflow => write!(f, "value exceeded representable range"),
            DynError::Truncated { at } => write!(f, "orbit truncated at index {at}"),
            DynError::EstimateDiverged { spread } => {
                write!(f, "angular derivative estimate did not settle (spread {spread:e})")
            }
        }
    }
}

/// The shape of a self-map.
#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    /// `z -> a z + b` with `a >= 1`, `Re b >= 0`, not the identity.
    Affine { a: f64, b: Complex },
    /// `z -> e^t z` with `t > 0` (pure hyperbolic scaling).
    Scaling { t: f64 },
    /// Maps applied in list order.
    Composition(Vec<MapSpec>),
}

/// A validated self-map of `H` fixing infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSpec {
    kind: MapKind,
}

/// Type of the fixed point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Hyperbolic,
    Parabolic,
}

impl MapSpec {
    pub fn affine(a: f64, b: Complex) -> Result<Self, DynError> {
        if !(a.is_finite() && b.is_finite() && a >= 1.0 && b.re >= 0.0) {
            return Err(DynError::InvalidMap);
        }
        if a == 1.0 && b.re == 0.0 && b.im == 0.0 {
            return Err(DynError::InvalidMap); // identity is excluded
        }
        Ok(MapSpec { kind: MapKind::Affine { a, b } })
    }

    pub fn scaling(t: f64) -> Result<Self, DynError> {
        if !(t.is_finite() && t > 0.0) {
            return Err(DynError::InvalidMap);
        }
        Ok(MapSpec { kind: MapKind::Scaling { t } })
    }

    pub fn composition(maps: Vec<MapSpec>) -> Result<Self, DynError> {
        if maps.is_empty() {
            return Err(DynError::InvalidMap);
        }
        Ok(MapSpec { kind: MapKind::Composition(maps) })
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    /// Apply the map once. Far out (log-modulus above ~640) an affine map
    /// acts as pure scaling to machine precision and is applied in
    /// log-polar form, so orbits can run to arbitrary modulus.
    pub fn apply(&self, z: &HalfPlanePoint) -> Result<HalfPlanePoint, DynError> {
        match &self.kind {
            MapKind::Affine { a, b } => {
                if z.log_r() <= ASYMPTOTIC_LOG_R {
                    let w = z.to_complex() * *a + *b;
                    if !w.is_finite() {
                        return Err(DynError::Overflow);
                    }
                    HalfPlanePoint::from_complex(w).map_err(|_| DynError::LeftHalfPlane)
                } else {
                    let b_mag = hypot(b.re, b.im);
                    // b / (a z) must be below one ulp for the asymptotic form.
                    if b_mag > 0.0 && log(b_mag) > z.log_r() - 40.0 {
                        return Err(DynError::Overflow);
                    }
                    HalfPlanePoint::from_log_polar(z.log_r() + log(*a), z.theta())
                        .map_err(|_| DynError::Overflow)
                }
            }
            MapKind::Scaling { t } => {
                HalfPlanePoint::from_log_polar(z.log_r() + t, z.theta())
                    .map_err(|_| DynError::Overflow)
            }
            MapKind::Composition(maps) => {
                let mut cur = *z;
                for m in maps {
                    cur = m.apply(&cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// Apply in plain Cartesian arithmetic. Exact when the map data and
    /// point coordinates are exact (no log-polar round trip); fails once
    /// coordinates leave the f64 range.
    pub fn apply_complex(&self, z: Complex) -> Result<Complex, DynError> {
        let w = match &self.kind {
            MapKind::Affine { a, b } => z * *a + *b,
            MapKind::Scaling { t } => z * exp(*t),
            MapKind::Composition(maps) => {
                let mut cur = z;
                for m in maps {
                    cur = m.apply_complex(cur)?;
                }
                cur
            }
        };
        if !w.is_finite() {
            return Err(DynError::Overflow);
        }
        if w.re <= 0.0 {
            return Err(DynError::LeftHalfPlane);
        }
        Ok(w)
    }

    /// Estimate of the angular derivative at infinity from the radial
    /// limit of `|F(x)| / x` along `x = 2^k`, `k = 10..=40`. The last ten
    /// probes must agree to `1e-6`.
    pub fn angular_derivative_estimate(&self) -> Result<f64, DynError> {
        let mut tail = [0.0f64; 10];
        let mut last = 0.0;
        for (i, k) in (10..=40).enumerate() {
            let x = HalfPlanePoint::from_log_polar(k as f64 * core::f64::consts::LN_2, 0.0)
                .expect("probe point is valid");
            let y = self.apply(&x)?;
            last = exp(y.log_r() - x.log_r());
            if i >= 21 {
                tail[i - 21] = last;
            }
        }
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo > ESTIMATE_SPREAD_TOL {
            return Err(DynError::EstimateDiverged { spread: hi - lo });
        }
        Ok(last)
    }

    pub fn classify(&self) -> Result<MapClass, DynError> {
        let est = self.angular_derivative_estimate()?;
        if est > 1.0 + CLASSIFY_MARGIN {
            Ok(MapClass::Hyperbolic)
        } else {
            Ok(MapClass::Parabolic)
        }
    }

    /// The orbit `z, F z, ..., F^{n_max} z` with per-step hyperbolic
    /// distances and the slope (argument) of each point.
    pub fn iterate(&self, z: &HalfPlanePoint, n_max: usize) -> Result<Orbit, DynError> {
        let mut points = Vec::with_capacity(n_max + 1);
        points.push(*z);
        for n in 0..n_max {
            let next = match self.apply(&points[n]) {
                Ok(p) => p,
                Err(_) => return Err(DynError::Truncated { at: n }),
            };
            points.push(next);
        }
        let steps = points
            .windows(2)
            .map(|w| dist_h(&w[0], &w[1]))
            .collect();
        let slopes = points.iter().map(|p| p.theta()).collect();
        Ok(Orbit { points, steps, slopes })
    }
}

/// A computed orbit: points in log-polar form, hyperbolic step sizes, and
/// point slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    points: Vec<HalfPlanePoint>,
    steps: Vec<HypDistance>,
    slopes: Vec<f64>,
}

impl Orbit {
    pub fn points(&self) -> &[HalfPlanePoint] {
        &self.points
    }

    pub fn steps(&self) -> &[HypDistance] {
        &self.steps
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Tail averages of step size and slope with their spreads, taken over
/// the last quartile of the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepSlopeEstimate {
    pub d_hat: f64,
    pub phi_hat: f64,
    pub d_spread: f64,
    pub phi_spread: f64,
}

/// Requires an orbit of at least 20 points.
pub fn step_slope_limits(orbit: &Orbit) -> StepSlopeEstimate {
    assert!(orbit.len() >= 20, "orbit too short for tail estimates");
    let steps = orbit.steps();
    let slopes = orbit.slopes();
    let from = steps.len() - steps.len() / 4;
    let tail_d: Vec<f64> = steps[from..].iter().map(|d| d.value()).collect();
    let tail_phi = &slopes[slopes.len() - slopes.len() / 4..];
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let spread = |v: &[f64]| {
        v.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - v.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    StepSlopeEstimate {
        d_hat: mean(&tail_d),
        phi_hat: mean(tail_phi),
        d_spread: spread(&tail_d),
        phi_spread: spread(tail_phi),
    }
}

/// Check the distance-decreasing property on the supplied pairs:
/// `d(F z, F w) <= d(z, w)` up to `1e-10` slack.
pub fn schwarz_pick_check(
    map: &MapSpec,
    pairs: &[(HalfPlanePoint, HalfPlanePoint)],
) -> Result<bool, DynError> {
    for (z, w) in pairs {
        let before = dist_h(z, w).value();
        let after = dist_h(&map.apply(z)?, &map.apply(w)?).value();
        if after > before + 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Behaviour of the imaginary parts along a parabolic orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImMonotonicity {
    /// Tail average of `(Im z_{n+1} - Im z_n) / Re z_n`.
    pub b_hat: f64,
    /// Smallest `N` with `|Im z_n|` strictly increasing for all `n >= N`.
    pub first_increase: Option<usize>,
    /// `|b_hat|` below `1e-6`: the orbit drifts parallel to the real axis.
    pub zero_step: bool,
}

pub fn im_monotonicity_check(
    map: &MapSpec,
    z: &HalfPlanePoint,
    n_max: usize,
) -> Result<ImMonotonicity, DynError> {
    assert!(n_max >= 8);
    // Cartesian iteration: for exact map data (integer translations) the
    // imaginary parts stay exact, so b_hat can come out exactly.
    let mut pts = Vec::with_capacity(n_max + 1);
    pts.push(z.to_complex());
    for n in 0..n_max {
        pts.push(map.apply_complex(pts[n])?);
    }
    let b: Vec<f64> = pts.windows(2).map(|w| (w[1].im - w[0].im) / w[0].re).collect();
    let from = b.len() - b.len() / 4;
    let b_hat = b[from..].iter().sum::<f64>() / (b.len() - from) as f64;

    let mut first_increase = Some(0);
    for n in 0..pts.len() - 1 {
        if fabs(pts[n + 1].im) <= fabs(pts[n].im) {
            first_increase = if n + 1 < pts.len() - 1 { Some(n + 1) } else { None };
        }
    }
    Ok(ImMonotonicity {
        b_hat,
        first_increase,
        zero_step: fabs(b_hat) < ZERO_STEP_TOL,
    })
}

/// Sub-classification of a parabolic orbit by its limiting hyperbolic
/// step size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepClass {
    ZeroStep,
    PositiveStep,
}

/// Reads the dichotomy off the tail step average; the orbit must be long
/// enough for a genuinely vanishing step to fall under the threshold.
pub fn parabolic_step_class(orbit: &Orbit) -> StepClass {
    if step_slope_limits(orbit).d_hat < ZERO_STEP_TOL {
        StepClass::ZeroStep
    } else {
        StepClass::PositiveStep
    }
}

/// Smallest `N` such that `|F^n(z) - w|` is strictly increasing for all
/// `n >= N` within the computed range, or `None` if the tail still has a
/// non-increasing step. `w` may be any complex number.
pub fn abs_offset_first_increase(
    map: &MapSpec,
    z: &HalfPlanePoint,
    w: Complex,
    n_max: usize,
) -> Result<Option<usize>, DynError> {
    let mut cur = z.to_complex();
    let mut vals = Vec::with_capacity(n_max + 1);
    vals.push((cur - w).abs());
    for _ in 0..n_max {
        cur = map.apply_complex(cur)?;
        vals.push((cur - w).abs());
    }
    let mut first = Some(0);
    for n in 0..vals.len() - 1 {
        if vals[n + 1] <= vals[n] {
            first = if n + 1 < vals.len() - 1 { Some(n + 1) } else { None };
        }
    }
    Ok(first)
}

//! Exact-formula hyperbolic geometry of the right half-plane `H` and the
//! unit disc, with overflow-safe log-polar variants.
//!
//! The half-plane metric is `d_H(z, w) = atanh |(z - w) / (z + conj w)|`.
//! Near the boundary the quotient is close to 1 and `atanh` loses digits,
//! so the far-apart branch switches to the identity
//! `1 - rho^2 = 4 Re z Re w / |z + conj w|^2` and evaluates
//! `d = log(1 + rho) - log(1 - rho^2) / 2` in log space.

use core::fmt;
use core::f64::consts::FRAC_PI_2;
use core::ops::{Add, Div, Mul, Neg, Sub};

use libm::{atan2, cos, cosh, exp, hypot, log, log1p, sin, sinh, sqrt};

const LN_4: f64 = 1.3862943611198906; // ln 4

/// Largest `log|z|` for which Cartesian coordinates are still finite f64.
const CARTESIAN_SAFE_LOG_R: f64 = 690.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeomError {
    /// Coordinates non-finite, or Re z <= 0 for a half-plane point.
    InvalidPoint,
    /// |z| >= 1 for a disc point.
    OutsideDisc,
    /// Angle not strictly inside (-pi/2, pi/2).
    TangentialAngle,
    /// Negative or non-finite distance value.
    InvalidDistance,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::InvalidPoint => write!(f, "point is not in the open right half-plane"),
            GeomError::OutsideDisc => write!(f, "point is not in the open unit disc"),
            GeomError::TangentialAngle => write!(f, "angle must lie strictly in (-pi/2, pi/2)"),
            GeomError::InvalidDistance => write!(f, "hyperbolic distance must be finite and >= 0"),
        }
    }
}

/// Minimal complex arithmetic; enough for the metric formulas and the
/// piecewise curve constructions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub fn abs(self) -> f64 {
        hypot(self.re, self.im)
    }

    pub fn arg(self) -> f64 {
        atan2(self.im, self.re)
    }

    pub fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Complex::new(r * cos(theta), r * sin(theta))
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<f64> for Complex {
    type Output = Complex;
    fn mul(self, rhs: f64) -> Complex {
        Complex::new(self.re * rhs, self.im * rhs)
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, rhs: Complex) -> Complex {
        let d = rhs.re * rhs.re + rhs.im * rhs.im;
        Complex::new(
            (self.re * rhs.re + self.im * rhs.im) / d,
            (self.im * rhs.re - self.re * rhs.im) / d,
        )
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

/// A point of the right half-plane `H = { Re z > 0 }`.
///
/// The canonical internal form is log-polar `(log|z|, arg z)`, so orbits
/// like `z -> 2z` can be iterated far past the range where `|z|` fits in
/// an f64. Cartesian coordinates are derived and overflow to infinity
/// once `log|z|` exceeds roughly 709; distance computations never go
/// through them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    log_r: f64,
    theta: f64,
}

impl HalfPlanePoint {
    /// Build from Cartesian coordinates. Requires `re > 0` and both
    /// coordinates finite.
    pub fn new(re: f64, im: f64) -> Result<Self, GeomError> {
        if !(re.is_finite() && im.is_finite()) || re <= 0.0 {
            return Err(GeomError::InvalidPoint);
        }
        Ok(HalfPlanePoint {
            log_r: log(hypot(re, im)),
            theta: atan2(im, re),
        })
    }

    /// Build directly in log-polar form; `theta` must lie strictly in
    /// (-pi/2, pi/2).
    pub fn from_log_polar(log_r: f64, theta: f64) -> Result<Self, GeomError> {
        if !log_r.is_finite() || !theta.is_finite() {
            return Err(GeomError::InvalidPoint);
        }
        if theta <= -FRAC_PI_2 || theta >= FRAC_PI_2 {
            return Err(GeomError::TangentialAngle);
        }
        Ok(HalfPlanePoint { log_r, theta })
    }

    pub fn from_complex(z: Complex) -> Result<Self, GeomError> {
        HalfPlanePoint::new(z.re, z.im)
    }

    pub fn log_r(&self) -> f64 {
        self.log_r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `|z|`; infinite when `log|z|` overflows the f64 exponent range.
    pub fn abs(&self) -> f64 {
        exp(self.log_r)
    }

    pub fn re(&self) -> f64 {
        exp(self.log_r) * cos(self.theta)
    }

    pub fn im(&self) -> f64 {
        exp(self.log_r) * sin(self.theta)
    }

    pub fn to_complex(&self) -> Complex {
        Complex::new(self.re(), self.im())
    }

    /// Whether the derived Cartesian view is exactly representable.
    pub fn cartesian_safe(&self) -> bool {
        self.log_r.abs() <= CARTESIAN_SAFE_LOG_R
    }
}

/// A point of the open unit disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    re: f64,
    im: f64,
}

impl DiscPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, GeomError> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(GeomError::InvalidPoint);
        }
        if re * re + im * im >= 1.0 {
            return Err(GeomError::OutsideDisc);
        }
        Ok(DiscPoint { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(&self) -> Complex {
        Complex::new(self.re, self.im)
    }
}

/// A non-tangential angle, strictly inside (-pi/2, pi/2).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn new(theta: f64) -> Result<Self, GeomError> {
        if !theta.is_finite() || theta <= -FRAC_PI_2 || theta >= FRAC_PI_2 {
            return Err(GeomError::TangentialAngle);
        }
        Ok(Angle(theta))
    }

    pub fn radians(&self) -> f64 {
        self.0
    }
}

/// A non-negative hyperbolic distance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HypDistance(f64);

impl HypDistance {
    pub fn new(value: f64) -> Result<Self, GeomError> {
        if !value.is_finite() || value < 0.0 {
            return Err(GeomError::InvalidDistance);
        }
        Ok(HypDistance(value))
    }

    pub const ZERO: HypDistance = HypDistance(0.0);

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Pseudo-hyperbolic distance `rho_H(z, w) = |(z - w) / (z + conj w)|`.
pub fn rho_h(a: &HalfPlanePoint, b: &HalfPlanePoint) -> f64 {
    let za = a.to_complex();
    let zb = b.to_complex();
    let num = (za - zb).abs();
    let den = (za + zb.conj()).abs();
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// `1 - rho_H(z, w)^2 = 4 Re z Re w / |z + conj w|^2`, computed from the
/// right-hand side so it stays positive near the boundary.
pub fn one_minus_rho_sq(a: &HalfPlanePoint, b: &HalfPlanePoint) -> f64 {
    let den = (a.to_complex() + b.to_complex().conj()).abs();
    4.0 * a.re() * b.re() / (den * den)
}

/// `cosh d_H(z, w) = |z + conj w| / (2 sqrt(Re z) sqrt(Re w))`.
pub fn cosh_dist(a: &HalfPlanePoint, b: &HalfPlanePoint) -> f64 {
    let den = (a.to_complex() + b.to_complex().conj()).abs();
    den / (2.0 * sqrt(a.re()) * sqrt(b.re()))
}

/// `atanh(rho)` with the cancellation-safe split at large `rho`.
/// `ln_one_minus_rho_sq` must equal `ln(1 - rho^2)`.
fn atanh_split(rho: f64, ln_one_minus_rho_sq: impl FnOnce() -> f64) -> f64 {
    if rho <= 0.99 {
        0.5 * log1p(2.0 * rho / (1.0 - rho))
    } else {
        log1p(rho) - 0.5 * ln_one_minus_rho_sq()
    }
}

/// Hyperbolic distance in `H`.
pub fn dist_h(a: &HalfPlanePoint, b: &HalfPlanePoint) -> HypDistance {
    if a.cartesian_safe() && b.cartesian_safe() {
        let rho = rho_h(a, b);
        HypDistance(atanh_split(rho, || log(one_minus_rho_sq(a, b))))
    } else {
        dist_h_logpolar(a.log_r, a.theta, b.log_r, b.theta)
    }
}

/// Hyperbolic distance between `exp(logr1) e^{i theta1}` and
/// `exp(logr2) e^{i theta2}`, computed entirely from the modulus ratio so
/// it stays finite for `log_r` far outside the f64 exponent range.
pub fn dist_h_logpolar(logr1: f64, theta1: f64, logr2: f64, theta2: f64) -> HypDistance {
    // With s = exp(-|logr1 - logr2|) in (0, 1]:
    //   rho^2 = ((s-1)^2 + 4 s sin^2((t1-t2)/2)) / ((s+1)^2 - 4 s sin^2((t1+t2)/2))
    //   1 - rho^2 = 4 s cos t1 cos t2 / denominator
    let u = (logr1 - logr2).abs();
    let s = exp(-u);
    let sd = sin(0.5 * (theta1 - theta2));
    let ss = sin(0.5 * (theta1 + theta2));
    let num = (s - 1.0) * (s - 1.0) + 4.0 * s * sd * sd;
    let den = (s + 1.0) * (s + 1.0) - 4.0 * s * ss * ss;
    let rho = sqrt(num / den).min(1.0);
    let d = atanh_split(rho, || {
        LN_4 - u + log(cos(theta1)) + log(cos(theta2)) - log(den)
    });
    HypDistance(d)
}

/// Distance between the unit-modulus points `e^{i theta1}` and `e^{i theta2}`.
///
/// By scale invariance this equals `d_H(r e^{i theta1}, r e^{i theta2})` for
/// every `r > 0`, and it is strictly increasing in the angular separation.
pub fn dist_angles(theta1: Angle, theta2: Angle) -> HypDistance {
    dist_h_logpolar(0.0, theta1.radians(), 0.0, theta2.radians())
}

/// Nearest point of the ray `{ r e^{i theta} : r >= r_min }` to `z`:
/// `max(|z|, r_min) e^{i theta}`. The radial distance profile has its
/// unique minimum at `r = |z|`, decreasing before and increasing after,
/// so clamping at `r_min` is exact.
pub fn project_to_ray(z: &HalfPlanePoint, theta: Angle, r_min: f64) -> HalfPlanePoint {
    assert!(r_min > 0.0 && r_min.is_finite());
    let log_r = z.log_r.max(log(r_min));
    HalfPlanePoint {
        log_r,
        theta: theta.radians(),
    }
}

/// Angular half-widths of the sector `{ r e^{i phi} }` at hyperbolic
/// distance `radius` from the ray with angle `theta`: the pair
/// `(phi1, phi2)` with `phi1 < theta < phi2` and
/// `dist_angles(theta, phi_j) = radius`, found by bisection.
///
/// An edge is reported as exactly `-pi/2` or `pi/2` when the requested
/// radius is not attainable inside the open angle range at f64 precision.
pub fn sector_halfwidth(theta: Angle, radius: HypDistance) -> (f64, f64) {
    let upper = sector_edge_above(theta.radians(), radius.value());
    // Conjugation symmetry: the lower edge at theta is minus the upper
    // edge at -theta.
    let lower = -sector_edge_above(-theta.radians(), radius.value());
    (lower, upper)
}

fn sector_edge_above(theta: f64, radius: f64) -> f64 {
    if radius == 0.0 {
        return theta;
    }
    let dist = |phi: f64| dist_h_logpolar(0.0, theta, 0.0, phi).value();
    let mut lo = theta;
    let mut hi = FRAC_PI_2 - 1e-15;
    if dist(hi) < radius {
        return FRAC_PI_2;
    }
    // Terminate on the distance residual, not the angle width: near the
    // tangential edge the distance is steep in phi and a fixed angular
    // tolerance would leave a large residual.
    let mut iters = 0;
    while hi - lo > 1e-16 && iters < 200 {
        let mid = 0.5 * (lo + hi);
        let d = dist(mid);
        if (d - radius).abs() <= 1e-13 * radius.max(1.0) {
            return mid;
        }
        if d < radius {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }
    0.5 * (lo + hi)
}

/// Membership in the open pseudo-hyperbolic disc `{ w : rho_H(w, center) < r }`.
///
/// Both the direct `rho` test and the equivalent quadratic form
/// `|conj w + center|^2 < 4 (Re center / (1 - r^2)) Re w` are available;
/// this returns the direct test (strict inequality, boundary excluded).
pub fn in_pseudo_disc(z: &HalfPlanePoint, center: &HalfPlanePoint, r: f64) -> bool {
    debug_assert!(r > 0.0 && r < 1.0);
    rho_h(z, center) < r
}

/// The quadratic-form variant of [`in_pseudo_disc`]; exposed so the two
/// routes can be checked against each other.
pub fn in_pseudo_disc_quadratic(z: &HalfPlanePoint, center: &HalfPlanePoint, r: f64) -> bool {
    debug_assert!(r > 0.0 && r < 1.0);
    let lhs = (z.to_complex().conj() + center.to_complex()).abs();
    lhs * lhs < 4.0 * center.re() / (1.0 - r * r) * z.re()
}

/// Euclidean center and radius of the hyperbolic circle of radius `radius`
/// about the real point `c > 0`: center `c cosh(2R)`, radius `c sinh(2R)`.
pub fn hyperbolic_circle_euclid(c: f64, radius: HypDistance) -> (f64, f64) {
    assert!(c > 0.0 && c.is_finite());
    let two_r = 2.0 * radius.value();
    (c * cosh(two_r), c * sinh(two_r))
}

/// Cayley transform `T(z) = (1 + z) / (1 - z)` from the disc onto `H`.
pub fn cayley_to_halfplane(p: &DiscPoint) -> HalfPlanePoint {
    let z = p.to_complex();
    let one = Complex::new(1.0, 0.0);
    let w = (one + z) / (one - z);
    // |z| < 1 guarantees Re w > 0; the unwrap cannot fire for valid input.
    HalfPlanePoint::from_complex(w).expect("Cayley image of a disc point lies in H")
}

/// Inverse Cayley transform `z = (w - 1) / (w + 1)` from `H` onto the disc.
pub fn cayley_to_disc(q: &HalfPlanePoint) -> DiscPoint {
    let w = q.to_complex();
    let one = Complex::new(1.0, 0.0);
    let z = (w - one) / (w + one);
    DiscPoint::new(z.re, z.im).expect("Cayley image of a half-plane point lies in the disc")
}

/// Hyperbolic distance in the unit disc, as the pullback of `d_H` through
/// the Cayley transform.
pub fn dist_d(a: &DiscPoint, b: &DiscPoint) -> HypDistance {
    dist_h(&cayley_to_halfplane(a), &cayley_to_halfplane(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(re, im).unwrap()
    }

    #[test]
    fn rejects_invalid_points() {
        assert_eq!(HalfPlanePoint::new(0.0, 1.0), Err(GeomError::InvalidPoint));
        assert_eq!(HalfPlanePoint::new(-1.0, 0.0), Err(GeomError::InvalidPoint));
        assert_eq!(
            HalfPlanePoint::new(f64::NAN, 0.0),
            Err(GeomError::InvalidPoint)
        );
        assert_eq!(
            HalfPlanePoint::new(f64::INFINITY, 0.0),
            Err(GeomError::InvalidPoint)
        );
        assert_eq!(DiscPoint::new(1.0, 0.0), Err(GeomError::OutsideDisc));
        assert!(Angle::new(FRAC_PI_2).is_err());
    }

    #[test]
    fn cartesian_logpolar_views_agree() {
        let z = hp(3.0, 4.0);
        assert!((z.abs() - 5.0).abs() < 1e-14);
        let z2 = HalfPlanePoint::from_log_polar(z.log_r(), z.theta()).unwrap();
        assert!((z2.re() - 3.0).abs() < 1e-13);
        assert!((z2.im() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn dist_h_real_axis_values() {
        // d_H(p, q) = log(q/p) / 2 for real 0 < p < q.
        let d = dist_h(&hp(1.0, 0.0), &hp(2.0, 0.0));
        assert!((d.value() - 0.5 * libm::log(2.0)).abs() < 1e-15);

        let d = dist_h(&hp(2.0, 0.0), &hp(2.0 * core::f64::consts::SQRT_2, 0.0));
        assert!((d.value() - 0.25 * libm::log(2.0)).abs() < 1e-15);

        // Invariance under vertical translation.
        let d = dist_h(&hp(1.0, 5.0), &hp(2.0, 5.0));
        assert!((d.value() - 0.5 * libm::log(2.0)).abs() < 1e-14);
    }

    #[test]
    fn rho_values() {
        let z = hp(1.7, -0.3);
        assert_eq!(rho_h(&z, &z), 0.0);
        assert!((rho_h(&hp(2.0, 0.0), &hp(3.0, 0.0)) - 0.2).abs() < 1e-15);
        let expected = 3.0 - 2.0 * core::f64::consts::SQRT_2; // (sqrt 2 - 1)^2
        let got = rho_h(&hp(2.0, 0.0), &hp(2.0 * core::f64::consts::SQRT_2, 0.0));
        assert!((got - expected).abs() < 1e-15);
    }

    #[test]
    fn one_minus_rho_sq_values() {
        let z = hp(0.4, 9.0);
        assert!((one_minus_rho_sq(&z, &z) - 1.0).abs() < 1e-14);
        assert!((one_minus_rho_sq(&hp(2.0, 0.0), &hp(3.0, 0.0)) - 24.0 / 25.0).abs() < 1e-15);
        // 4 * 1 * 1 / |2 + i|^2 = 4/5.
        assert!((one_minus_rho_sq(&hp(1.0, 0.0), &hp(1.0, 1.0)) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn cosh_dist_values() {
        let z = hp(5.0, 2.0);
        assert!((cosh_dist(&z, &z) - 1.0).abs() < 1e-14);
        let expected = 3.0 / (2.0 * core::f64::consts::SQRT_2);
        assert!((cosh_dist(&hp(1.0, 0.0), &hp(2.0, 0.0)) - expected).abs() < 1e-15);
        assert!((cosh_dist(&hp(1.0, 0.0), &hp(1.0, 1.0)) - libm::sqrt(5.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn logpolar_matches_cartesian_and_survives_overflow() {
        let d = dist_h_logpolar(0.0, 0.0, libm::log(2.0), 0.0);
        assert!((d.value() - 0.5 * libm::log(2.0)).abs() < 1e-15);
        assert_eq!(dist_h_logpolar(0.0, 0.7, 0.0, 0.7).value(), 0.0);

        // Scaling invariance far beyond f64 range: same modulus ratio,
        // same distance.
        let ln2 = libm::log(2.0);
        let big = dist_h_logpolar(1000.0 * ln2, 0.1, 1001.0 * ln2, 0.1);
        let small = dist_h(
            &HalfPlanePoint::from_log_polar(0.0, 0.1).unwrap(),
            &HalfPlanePoint::from_log_polar(ln2, 0.1).unwrap(),
        );
        assert!((big.value() - small.value()).abs() < 1e-9);

        // Stays finite for log_r up to 1e6.
        let huge = dist_h_logpolar(0.0, 0.0, 1e6, 0.3);
        assert!(huge.value().is_finite());
        // Asymptote: u/2 - log(cos theta)/2.
        let expected = 0.5e6 - 0.5 * libm::log(libm::cos(0.3));
        assert!((huge.value() - expected).abs() < 1e-6);
    }

    #[test]
    fn dist_angles_values() {
        let th = Angle::new(0.37).unwrap();
        assert_eq!(dist_angles(th, th).value(), 0.0);

        // rho(1, e^{i pi/3}) = tan(pi/6) = 1/sqrt 3.
        let d = dist_angles(Angle::new(0.0).unwrap(), Angle::new(core::f64::consts::FRAC_PI_3).unwrap());
        let expected = 0.5 * libm::log((1.0 + 1.0 / libm::sqrt(3.0)) / (1.0 - 1.0 / libm::sqrt(3.0)));
        assert!((d.value() - expected).abs() < 1e-15);

        // Symmetric in sign of the pair.
        let a = dist_angles(Angle::new(-0.2).unwrap(), Angle::new(0.2).unwrap());
        let b = dist_angles(Angle::new(0.2).unwrap(), Angle::new(-0.2).unwrap());
        assert_eq!(a.value(), b.value());
    }

    #[test]
    fn project_to_ray_cases() {
        let z = HalfPlanePoint::from_log_polar(libm::log(5.0), 0.3).unwrap();
        let th = Angle::new(0.7).unwrap();
        let p = project_to_ray(&z, th, 1.0);
        assert!((p.abs() - 5.0).abs() < 1e-13);
        assert_eq!(p.theta(), 0.7);

        // Point already on the ray projects to itself.
        let on = HalfPlanePoint::from_log_polar(libm::log(3.0), 0.7).unwrap();
        let p = project_to_ray(&on, th, 1.0);
        assert_eq!(p, on);

        // Inside r_min: clamped to the ray endpoint.
        let close = HalfPlanePoint::from_log_polar(libm::log(0.5), 0.3).unwrap();
        let p = project_to_ray(&close, th, 1.0);
        assert!(p.abs().abs() - 1.0 < 1e-13);
        assert!((p.log_r() - 0.0).abs() < 1e-13);
    }

    #[test]
    fn sector_halfwidth_roundtrip() {
        let th = Angle::new(0.0).unwrap();
        let r = HypDistance::new(0.25 * libm::log(2.0)).unwrap();
        let (lo, hi) = sector_halfwidth(th, r);
        assert!((lo + hi).abs() < 1e-11, "symmetric about theta = 0");
        // tan(phi2 / 2) = tanh(log(2)/4).
        let expected = 2.0 * libm::atan(libm::tanh(0.25 * libm::log(2.0)));
        assert!((hi - expected).abs() < 1e-11);

        let back = dist_angles(th, Angle::new(hi).unwrap());
        assert!((back.value() - r.value()).abs() < 1e-10);

        // Unattainably large radius reports the boundary markers.
        let (lo, hi) = sector_halfwidth(th, HypDistance::new(1e4).unwrap());
        assert_eq!(lo, -FRAC_PI_2);
        assert_eq!(hi, FRAC_PI_2);
    }

    #[test]
    fn pseudo_disc_membership() {
        let c = hp(2.0, 0.0);
        assert!(in_pseudo_disc(&c, &c, 0.3));
        // rho(2, 3) = 1/5: the boundary is excluded, up to rounding of rho.
        assert!(!in_pseudo_disc(&hp(3.0, 0.0), &c, 0.2 - 1e-12));
        assert!(in_pseudo_disc(&hp(3.0, 0.0), &c, 0.2 + 1e-12));
        // rho(2, 2.9) = 0.9/4.9 < 0.2.
        assert!(in_pseudo_disc(&hp(2.9, 0.0), &c, 0.2));

        // Quadratic form agrees on a small grid.
        for i in 1..20 {
            for j in -10..10 {
                let z = hp(0.3 * i as f64, 0.4 * j as f64);
                assert_eq!(
                    in_pseudo_disc(&z, &c, 0.35),
                    in_pseudo_disc_quadratic(&z, &c, 0.35),
                    "disagreement at {z:?}"
                );
            }
        }
    }

    #[test]
    fn hyperbolic_circle_tangency_points() {
        let r = HypDistance::new(0.25 * libm::log(2.0)).unwrap();
        let s2 = core::f64::consts::SQRT_2;

        let (c, rad) = hyperbolic_circle_euclid(2.0, r);
        assert!((c + rad - 2.0 * s2).abs() < 1e-12, "rightmost point");
        assert!((c - rad - s2).abs() < 1e-12, "leftmost point");

        let (c, rad) = hyperbolic_circle_euclid(4.0, r);
        assert!((c - rad - 2.0 * s2).abs() < 1e-12);

        // Every point of the Euclidean circle is at hyperbolic distance r
        // from the center.
        let (ec, er) = hyperbolic_circle_euclid(2.0, r);
        let center = hp(2.0, 0.0);
        for k in 0..36 {
            let ang = k as f64 * core::f64::consts::PI / 18.0;
            let p = hp(ec + er * libm::cos(ang), er * libm::sin(ang));
            assert!((dist_h(&p, &center).value() - r.value()).abs() < 1e-12);
        }

        // Degenerate circle.
        let (c, rad) = hyperbolic_circle_euclid(3.0, HypDistance::new(1e-12).unwrap());
        assert!((c - 3.0).abs() < 1e-10);
        assert!(rad < 1e-11);
    }

    #[test]
    fn cayley_transform_values() {
        let origin = DiscPoint::new(0.0, 0.0).unwrap();
        let one = cayley_to_halfplane(&origin);
        assert!((one.re() - 1.0).abs() < 1e-15 && one.im().abs() < 1e-15);

        let half = DiscPoint::new(0.5, 0.0).unwrap();
        let three = cayley_to_halfplane(&half);
        assert!((three.re() - 3.0).abs() < 1e-14 && three.im().abs() < 1e-14);
    }

    #[test]
    fn dist_d_pullback() {
        let a = DiscPoint::new(0.0, 0.0).unwrap();
        assert_eq!(dist_d(&a, &a).value(), 0.0);
        let b = DiscPoint::new(0.5, 0.0).unwrap();
        assert!((dist_d(&a, &b).value() - 0.5 * libm::log(3.0)).abs() < 1e-14);
    }

    #[test]
    fn dist_identity_chain() {
        let a = hp(0.7, -2.0);
        let b = hp(13.0, 5.5);
        let d = dist_h(&a, &b).value();
        let rho = rho_h(&a, &b);
        assert!((d - 0.5 * libm::log((1.0 + rho) / (1.0 - rho))).abs() < 1e-13);
        assert!((libm::cosh(d) - cosh_dist(&a, &b)).abs() / cosh_dist(&a, &b) < 1e-13);
        assert!((one_minus_rho_sq(&a, &b) - (1.0 - rho * rho)).abs() < 1e-13);
    }
}

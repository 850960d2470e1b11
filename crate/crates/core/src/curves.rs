//! Parametrized curves in `H` landing at infinity.
//!
//! A [`Curve`] is a continuous walk of a list of geometric segments; all
//! segments are finite except the last, which is an escaping ray. The
//! counterexample curves attach hanging arcs to a horizontal spine; the
//! walk visits each arc out-and-back so the parametrization stays a
//! continuous map onto the declared trace.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use libm::{atan2, cos, fabs, hypot, log, sin, sqrt};

use crate::geometry::{
    hyperbolic_circle_euclid, project_to_ray, Angle, Complex, HalfPlanePoint,
    HypDistance,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveError {
    UnknownId,
    /// n_max must be >= 1 for the truncated example curves.
    EmptyTruncation,
    /// Curve evaluation left the open half-plane (bad segment data).
    LeftHalfPlane,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::UnknownId => write!(f, "unknown example curve id"),
            CurveError::EmptyTruncation => write!(f, "n_max must be at least 1"),
            CurveError::LeftHalfPlane => write!(f, "curve evaluation left the half-plane"),
        }
    }
}

/// Landing slope of a curve at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slope {
    NonTangential(Angle),
    /// arg of the curve tends to `sign * pi/2`.
    Tangential { sign: i8 },
}

impl Slope {
    pub fn angle(&self) -> Option<Angle> {
        match self {
            Slope::NonTangential(a) => Some(*a),
            Slope::Tangential { .. } => None,
        }
    }

    pub fn is_tangential(&self) -> bool {
        matches!(self, Slope::Tangential { .. })
    }
}

/// One piece of a curve, parametrized by Euclidean arclength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    /// Straight segment from `a` to `b`.
    Line { a: Complex, b: Complex },
    /// Arc of the geodesic circle `|z| = radius`, walked from `phi_from`
    /// to `phi_to`.
    GeodesicArc { radius: f64, phi_from: f64, phi_to: f64 },
    /// Arc of a Euclidean circle centred on the positive real axis (a
    /// hyperbolic circle), walked between the two Euclidean angles.
    CircleArc { center: f64, radius: f64, ang_from: f64, ang_to: f64 },
    /// `start + s`, escaping horizontally. Infinite; must come last.
    HorizontalRay { start: Complex },
    /// `(r0 + s) e^{i theta}`. Infinite; must come last.
    RadialRay { theta: f64, r0: f64 },
    /// `base + (t0 + s) e^{i theta}`. Infinite; must come last.
    ShiftedRay { base: Complex, theta: f64, t0: f64 },
    /// `x0 + sign * i * s`, escaping tangentially. Infinite; must come last.
    VerticalRay { x0: f64, sign: f64 },
}

impl Segment {
    /// Arclength, or `None` for the escaping rays.
    pub fn len(&self) -> Option<f64> {
        match *self {
            Segment::Line { a, b } => Some((b - a).abs()),
            Segment::GeodesicArc { radius, phi_from, phi_to } => {
                Some(radius * fabs(phi_to - phi_from))
            }
            Segment::CircleArc { radius, ang_from, ang_to, .. } => {
                Some(radius * fabs(ang_to - ang_from))
            }
            _ => None,
        }
    }

    pub fn eval(&self, s: f64) -> Complex {
        match *self {
            Segment::Line { a, b } => {
                let len = (b - a).abs();
                let f = if len == 0.0 { 0.0 } else { s / len };
                a + (b - a) * f
            }
            Segment::GeodesicArc { radius, phi_from, phi_to } => {
                let dir = if phi_to >= phi_from { 1.0 } else { -1.0 };
                Complex::from_polar(radius, phi_from + dir * s / radius)
            }
            Segment::CircleArc { center, radius, ang_from, ang_to } => {
                let dir = if ang_to >= ang_from { 1.0 } else { -1.0 };
                let ang = ang_from + dir * s / radius;
                Complex::new(center + radius * cos(ang), radius * sin(ang))
            }
            Segment::HorizontalRay { start } => Complex::new(start.re + s, start.im),
            Segment::RadialRay { theta, r0 } => Complex::from_polar(r0 + s, theta),
            Segment::ShiftedRay { base, theta, t0 } => {
                base + Complex::from_polar(t0 + s, theta)
            }
            Segment::VerticalRay { x0, sign } => Complex::new(x0, sign * s),
        }
    }

    pub fn start(&self) -> Complex {
        self.eval(0.0)
    }

    pub fn end(&self) -> Option<Complex> {
        self.len().map(|l| self.eval(l))
    }

    /// Euclidean distance from `p` to the trace of this segment.
    pub fn euclid_dist(&self, p: Complex) -> f64 {
        match *self {
            Segment::Line { a, b } => dist_point_segment(p, a, b),
            Segment::GeodesicArc { radius, phi_from, phi_to } => {
                dist_point_arc(p, Complex::new(0.0, 0.0), radius, phi_from, phi_to)
            }
            Segment::CircleArc { center, radius, ang_from, ang_to } => {
                dist_point_arc(p, Complex::new(center, 0.0), radius, ang_from, ang_to)
            }
            Segment::HorizontalRay { start } => {
                if p.re >= start.re {
                    fabs(p.im - start.im)
                } else {
                    (p - start).abs()
                }
            }
            Segment::RadialRay { theta, r0 } => {
                dist_point_ray(p, Complex::from_polar(r0, theta), Complex::from_polar(1.0, theta))
            }
            Segment::ShiftedRay { base, theta, t0 } => dist_point_ray(
                p,
                base + Complex::from_polar(t0, theta),
                Complex::from_polar(1.0, theta),
            ),
            Segment::VerticalRay { x0, sign } => {
                if sign * p.im >= 0.0 {
                    fabs(p.re - x0)
                } else {
                    (p - Complex::new(x0, 0.0)).abs()
                }
            }
        }
    }
}

fn dist_point_segment(p: Complex, a: Complex, b: Complex) -> f64 {
    let ab = b - a;
    let len2 = ab.re * ab.re + ab.im * ab.im;
    if len2 == 0.0 {
        return (p - a).abs();
    }
    let t = (((p - a).re * ab.re + (p - a).im * ab.im) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).abs()
}

fn dist_point_ray(p: Complex, origin: Complex, dir: Complex) -> f64 {
    let t = ((p - origin).re * dir.re + (p - origin).im * dir.im).max(0.0);
    (p - (origin + dir * t)).abs()
}

fn dist_point_arc(p: Complex, center: Complex, radius: f64, ang_from: f64, ang_to: f64) -> f64 {
    let v = p - center;
    let ang = atan2(v.im, v.re);
    let (lo, hi) = if ang_from <= ang_to {
        (ang_from, ang_to)
    } else {
        (ang_to, ang_from)
    };
    // Account for the representative of `ang` shifted by full turns.
    for k in [-1.0, 0.0, 1.0] {
        let a = ang + k * 2.0 * PI;
        if a >= lo && a <= hi {
            return fabs(v.abs() - radius);
        }
    }
    let e1 = (p - (center + Complex::from_polar(radius, ang_from))).abs();
    let e2 = (p - (center + Complex::from_polar(radius, ang_to))).abs();
    e1.min(e2)
}

/// Closed-form projection oracle attached to the simple ray curves.
#[derive(Debug, Clone, Copy, PartialEq)]
enum AnalyticProjection {
    /// Ray `{ r e^{i theta} : r >= r_min }`.
    Ray { theta: f64, r_min: f64 },
    /// Horizontal geodesic `w + t`: the projection of `z` is
    /// `|z - i Im w| + i Im w`, clamped at the endpoint.
    Horizontal { re_w: f64, im_w: f64 },
}

/// Identifier of the built-in counterexample curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    /// Horizontal spine at height 1 with geodesic arcs dropping to `e^n`.
    Ex31,
    /// Same construction with arcs dropping to `3n` (zero-step parabolic).
    Ex32Zero,
    /// Spine at height -1 with arcs rising to `sqrt(1 + (2n+1)^2)`.
    Ex32Pos,
    /// Two hyperbolic circles about 2 and 4 plus the exit ray from `4 sqrt 2`.
    Ex33,
    /// The tangential vertical line `1 + i t`.
    Ex34,
}

impl ExampleId {
    pub fn parse(s: &str) -> Result<Self, CurveError> {
        match s {
            "ex31" => Ok(ExampleId::Ex31),
            "ex32_zero" | "ex32-zero" => Ok(ExampleId::Ex32Zero),
            "ex32_pos" | "ex32-pos" => Ok(ExampleId::Ex32Pos),
            "ex33" => Ok(ExampleId::Ex33),
            "ex34" => Ok(ExampleId::Ex34),
            _ => Err(CurveError::UnknownId),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleId::Ex31 => "ex31",
            ExampleId::Ex32Zero => "ex32_zero",
            ExampleId::Ex32Pos => "ex32_pos",
            ExampleId::Ex33 => "ex33",
            ExampleId::Ex34 => "ex34",
        }
    }
}

/// A boundary-landing curve: a continuous walk of segments whose final
/// segment escapes to infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    segments: Vec<Segment>,
    /// Cumulative arclength at the start of each segment.
    cum: Vec<f64>,
    slope: Slope,
    /// Parameter beyond which `|eval(t)|` grows monotonically (the walk
    /// has entered the final escaping segment).
    t_esc: f64,
    analytic: Option<AnalyticProjection>,
}

impl Curve {
    fn from_segments(segments: Vec<Segment>, slope: Slope) -> Self {
        debug_assert!(!segments.is_empty());
        debug_assert!(segments.last().unwrap().len().is_none(), "last segment must escape");
        let mut cum = Vec::with_capacity(segments.len());
        let mut total = 0.0;
        for seg in &segments {
            cum.push(total);
            if let Some(l) = seg.len() {
                total += l;
            }
        }
        Curve {
            segments,
            cum,
            slope,
            t_esc: total,
            analytic: None,
        }
    }

    /// The straight half-line `{ (r0 + t) e^{i theta} }`.
    pub fn radial_ray(theta: Angle, r0: f64) -> Self {
        assert!(r0 > 0.0 && r0.is_finite());
        let mut c = Curve::from_segments(
            alloc::vec![Segment::RadialRay { theta: theta.radians(), r0 }],
            Slope::NonTangential(theta),
        );
        c.analytic = Some(AnalyticProjection::Ray { theta: theta.radians(), r_min: r0 });
        c
    }

    /// The horizontal geodesic `w + t` emanating from `w`.
    pub fn horizontal_ray(w: &HalfPlanePoint) -> Self {
        let start = w.to_complex();
        let mut c = Curve::from_segments(
            alloc::vec![Segment::HorizontalRay { start }],
            Slope::NonTangential(Angle::new(0.0).unwrap()),
        );
        c.analytic = Some(AnalyticProjection::Horizontal { re_w: start.re, im_w: start.im });
        c
    }

    /// `base + (t0 + t) e^{i theta}`; `base` may sit on the boundary as
    /// long as the walked part stays in `H`.
    pub fn shifted_ray(base: Complex, theta: Angle, t0: f64) -> Self {
        assert!(t0 > 0.0);
        Curve::from_segments(
            alloc::vec![Segment::ShiftedRay { base, theta: theta.radians(), t0 }],
            Slope::NonTangential(theta),
        )
    }

    /// The tangential vertical line `x0 + sign * i t`.
    pub fn vertical_ray(x0: f64, sign: i8) -> Self {
        assert!(x0 > 0.0 && (sign == 1 || sign == -1));
        Curve::from_segments(
            alloc::vec![Segment::VerticalRay { x0, sign: sign as f64 }],
            Slope::Tangential { sign },
        )
    }

    /// The built-in example curves, truncated at `n_max` hanging arcs and
    /// continued by their escaping exit ray.
    pub fn example(id: ExampleId, n_max: u32) -> Result<Self, CurveError> {
        if n_max == 0 {
            return Err(CurveError::EmptyTruncation);
        }
        match id {
            ExampleId::Ex31 => Ok(spine_with_arcs(1.0, 1.0, n_max, |n| {
                libm::exp(n as f64)
            })),
            ExampleId::Ex32Zero => Ok(spine_with_arcs(1.0, 1.0, n_max, |n| 3.0 * n as f64)),
            ExampleId::Ex32Pos => Ok(spine_with_arcs(3.0, -1.0, n_max, |n| {
                sqrt(1.0 + ((2 * n + 1) as f64) * ((2 * n + 1) as f64))
            })),
            ExampleId::Ex33 => Ok(ex33_curve()),
            ExampleId::Ex34 => Ok(Curve::vertical_ray(1.0, 1)),
        }
    }

    pub fn declared_slope(&self) -> Slope {
        self.slope
    }

    /// Parameter after which the walk is on the escaping exit segment.
    pub fn t_esc(&self) -> f64 {
        self.t_esc
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Evaluate the walk at arclength parameter `t >= 0`.
    pub fn eval(&self, t: f64) -> Result<HalfPlanePoint, CurveError> {
        let z = self.eval_complex(t);
        HalfPlanePoint::from_complex(z).map_err(|_| CurveError::LeftHalfPlane)
    }

    pub fn eval_complex(&self, t: f64) -> Complex {
        let t = t.max(0.0);
        // cum is sorted; find the segment containing t.
        let idx = match self
            .cum
            .binary_search_by(|c| c.partial_cmp(&t).unwrap())
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        let seg = &self.segments[idx];
        let mut s = t - self.cum[idx];
        if let Some(l) = seg.len() {
            // Guard against rounding at the junction.
            if s > l {
                s = l;
            }
        }
        seg.eval(s)
    }

    /// Closed-form projection of `z`, when this curve has one.
    pub fn analytic_projection(&self, z: &HalfPlanePoint) -> Option<HalfPlanePoint> {
        match self.analytic? {
            AnalyticProjection::Ray { theta, r_min } => {
                Some(project_to_ray(z, Angle::new(theta).unwrap(), r_min))
            }
            AnalyticProjection::Horizontal { re_w, im_w } => {
                // |z - i Im w| + i Im w, clamped at the ray endpoint.
                let r = hypot(z.re(), z.im() - im_w).max(re_w);
                Some(HalfPlanePoint::new(r, im_w).expect("projection stays in H"))
            }
        }
    }

    /// Euclidean distance from `p` to the declared trace.
    pub fn trace_distance(&self, p: Complex) -> f64 {
        self.segments
            .iter()
            .map(|s| s.euclid_dist(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Min and max of `arg(eval(t))` over `samples` points of `[t_lo, t_hi]`;
    /// a numerical estimate of the cluster interval of the slope.
    pub fn slope_cluster(&self, t_lo: f64, t_hi: f64, samples: usize) -> (f64, f64) {
        assert!(t_lo < t_hi && samples >= 2);
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for k in 0..samples {
            let t = t_lo + (t_hi - t_lo) * k as f64 / (samples - 1) as f64;
            let z = self.eval_complex(t);
            let a = atan2(z.im, z.re);
            min = min.min(a);
            max = max.max(a);
        }
        (min, max)
    }

    /// Junction consistency of the walk: consecutive traversed endpoints
    /// must coincide.
    pub fn max_junction_gap(&self) -> f64 {
        let mut worst = 0.0f64;
        for pair in self.segments.windows(2) {
            if let Some(end) = pair[0].end() {
                worst = worst.max((pair[1].start() - end).abs());
            }
        }
        worst
    }
}

/// Shared builder for the spine-plus-hanging-arcs counterexamples: a
/// horizontal spine at height `spine_im` starting at `x_start`, with
/// geodesic arcs dropping from the spine to `foot(n)` on the real axis
/// for `n = 1..=n_max`, each walked out-and-back, then the exit ray.
fn spine_with_arcs(x_start: f64, spine_im: f64, n_max: u32, foot: impl Fn(u32) -> f64) -> Curve {
    let mut segments = Vec::new();
    let mut cur = Complex::new(x_start, spine_im);
    for n in 1..=n_max {
        let r = foot(n); // arc circle |z| = r; foot point r on the real axis
        let junction_re = sqrt(r * r - spine_im * spine_im);
        let junction = Complex::new(junction_re, spine_im);
        if (junction - cur).abs() > 1e-12 {
            segments.push(Segment::Line { a: cur, b: junction });
        }
        let top = atan2(spine_im, junction_re);
        segments.push(Segment::GeodesicArc { radius: r, phi_from: top, phi_to: 0.0 });
        segments.push(Segment::GeodesicArc { radius: r, phi_from: 0.0, phi_to: top });
        cur = junction;
    }
    segments.push(Segment::HorizontalRay { start: cur });
    Curve::from_segments(segments, Slope::NonTangential(Angle::new(0.0).unwrap()))
}

/// The two hyperbolic circles about 2 and 4 of radius `log 2 / 4`, plus
/// the exit ray from `4 sqrt 2`. The circles are tangent at `2 sqrt 2`;
/// the walk loops each circle fully and leaves along the real axis.
fn ex33_curve() -> Curve {
    let r = HypDistance::new(0.25 * log(2.0)).unwrap();
    let (c1, e1) = hyperbolic_circle_euclid(2.0, r);
    let (c2, e2) = hyperbolic_circle_euclid(4.0, r);
    // Start at 2 sqrt 2: angle 0 on circle 1, angle pi on circle 2.
    let segments = alloc::vec![
        Segment::CircleArc { center: c1, radius: e1, ang_from: 0.0, ang_to: 2.0 * PI },
        Segment::CircleArc { center: c2, radius: e2, ang_from: PI, ang_to: -PI },
        Segment::CircleArc { center: c2, radius: e2, ang_from: -PI, ang_to: 0.0 },
        Segment::HorizontalRay { start: Complex::new(c2 + e2, 0.0) },
    ];
    Curve::from_segments(segments, Slope::NonTangential(Angle::new(0.0).unwrap()))
}

//! Global nearest-point projection onto a curve in the hyperbolic metric.
//!
//! The engine samples the curve geometrically in `1 + t` (hyperbolic
//! distance along an escaping curve is roughly logarithmic in the
//! Euclidean parameter), brackets every local minimum, and refines each
//! bracket by golden section with a final parabolic polish. Ties within
//! `d_cluster` of the global minimum are all reported; a selection policy
//! picks the chosen projection.

use alloc::vec::Vec;
use core::fmt;

use libm::{exp, expm1, log1p};

use crate::curves::{Curve, CurveError};
use crate::dynamics::Orbit;
use crate::geometry::{dist_h, HalfPlanePoint, HypDistance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    /// Coarse samples per sweep of the truncated domain.
    pub coarse_samples: usize,
    /// Refinement tolerance, measured in `log(1 + t)`.
    pub t_tol: f64,
    /// Hyperbolic distance tolerance identifying tied minimizers.
    pub d_cluster: f64,
    /// Fraction of the parameter domain that must remain beyond the best
    /// coarse minimizer.
    pub domain_margin: f64,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        ProjectionOptions {
            coarse_samples: 4096,
            t_tol: 1e-12,
            d_cluster: 1e-7,
            domain_margin: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionPolicy {
    /// Smallest parameter among the ties.
    First,
    /// Largest parameter among the ties.
    Last,
    /// Report every tie; the chosen one is the first.
    All,
    /// Tie closest (in the hyperbolic metric) to a previously chosen point.
    Continuity { previous: Option<HalfPlanePoint> },
    /// Caller-supplied point; must itself realize the global distance.
    Explicit(HalfPlanePoint),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimizer {
    pub t: f64,
    pub point: HalfPlanePoint,
    pub distance: HypDistance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    /// Tied global minimizers, sorted by parameter.
    pub minimizers: Vec<Minimizer>,
    pub global_distance: HypDistance,
    pub tie_count: usize,
    pub chosen: Minimizer,
    /// Minimizers form a dense parameter interval (an equidistant arc).
    pub continuum_flag: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectionError {
    /// The truncation guards could not be satisfied.
    Inconclusive,
    Curve(CurveError),
    /// Slope-dependent operation on a tangentially landing curve.
    TangentialCurve,
    /// Explicit policy point does not realize the global distance.
    ExplicitNotATie,
    EmptyInput,
}

impl fmt::Display for ProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectionError::Inconclusive => {
                write!(f, "projection inconclusive: truncation guard not satisfiable")
            }
            ProjectionError::Curve(e) => write!(f, "curve error: {e}"),
            ProjectionError::TangentialCurve => {
                write!(f, "operation requires a non-tangential curve")
            }
            ProjectionError::ExplicitNotATie => {
                write!(f, "explicit point does not realize the global distance")
            }
            ProjectionError::EmptyInput => write!(f, "empty input sequence"),
        }
    }
}

/// Projection failure at a specific index of a point sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitProjectionError {
    pub index: usize,
    pub error: ProjectionError,
}

impl fmt::Display for OrbitProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "projection failed at index {}: {}", self.index, self.error)
    }
}

const INVPHI: f64 = 0.618_033_988_749_894_9;
/// Candidate brackets above this count indicate a flat stretch; only the
/// extremal and best brackets are refined.
const MAX_BRACKETS: usize = 64;
/// Coarse values within this slack of the best sample are bracket
/// candidates (covers the coarse grid's quadratic sampling error).
const COARSE_SLACK: f64 = 0.01;
/// Offset for the parabolic polish after golden section.
const POLISH_H: f64 = 1e-5;

/// Golden-section minimization of `g` on `[a, b]`, to width `tol`.
fn golden_min(g: &mut impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = g(c);
    let mut fd = g(d);
    let mut iters = 0;
    while b - a > tol && iters < 300 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = g(d);
        }
        iters += 1;
    }
    0.5 * (a + b)
}

/// Parabolic vertex through three samples at `u - h, u, u + h`; golden
/// section alone stalls on the rounding plateau of a flat minimum, the
/// fitted vertex recovers the minimizer to well below 1e-9. The shift is
/// kept only when it does not increase the objective (a kinked minimum,
/// where the quadratic model is wrong, fails that check).
fn polish(g: &mut impl FnMut(f64) -> f64, u: f64, lo: f64, hi: f64) -> f64 {
    let h = POLISH_H;
    if u - h < lo || u + h > hi {
        return u;
    }
    let gm = g(u - h);
    let g0 = g(u);
    let gp = g(u + h);
    let denom = gm - 2.0 * g0 + gp;
    if !(denom > 0.0) {
        return u;
    }
    let shift = 0.5 * h * (gm - gp) / denom;
    if shift.abs() >= h {
        return u;
    }
    let cand = u + shift;
    if g(cand) <= g0 + 1e-13 * (1.0 + g0) {
        cand
    } else {
        u
    }
}

pub fn project(
    c: &Curve,
    z: &HalfPlanePoint,
    opts: &ProjectionOptions,
    policy: &ProjectionPolicy,
) -> Result<ProjectionResult, ProjectionError> {
    assert!(opts.coarse_samples >= 16 && opts.t_tol > 0.0);
    assert!(opts.d_cluster > 0.0 && opts.domain_margin > 0.0 && opts.domain_margin < 1.0);
    if z.log_r() > 700.0 {
        // |eval(T)| >= 16 |z| is unreachable in f64 range.
        return Err(ProjectionError::Inconclusive);
    }
    let target = 16.0 * exp(z.log_r()).max(1.0);

    // Truncation point: far enough out that the escape condition holds.
    let mut t_end = (2.0 * c.t_esc()).max(8.0);
    while c.eval_complex(t_end).abs() < target {
        t_end *= 2.0;
        if t_end > 1e305 {
            return Err(ProjectionError::Inconclusive);
        }
    }

    let n = opts.coarse_samples;
    for _round in 0..40 {
        let u_end = log1p(t_end);
        let dist_at = |u: f64| -> Result<f64, ProjectionError> {
            let p = c.eval(expm1(u.clamp(0.0, u_end))).map_err(ProjectionError::Curve)?;
            Ok(dist_h(z, &p).value())
        };

        let mut d = Vec::with_capacity(n + 1);
        for j in 0..=n {
            d.push(dist_at(j as f64 * u_end / n as f64)?);
        }
        let (best_j, best) = d
            .iter()
            .cloned()
            .enumerate()
            .fold((0usize, f64::INFINITY), |acc, (j, v)| if v < acc.1 { (j, v) } else { acc });

        // The minimum must sit clear of the truncation boundary.
        let far_ok = d[n] > best + 2.0;
        let margin_ok = (best_j as f64) <= (1.0 - opts.domain_margin) * n as f64;
        if !(far_ok && margin_ok) {
            t_end *= 4.0;
            continue;
        }

        // Continuum of ties: a long run of coarse samples at the minimum.
        let mut continuum_flag = false;
        let mut run = 0usize;
        for v in &d {
            if *v <= best + opts.d_cluster {
                run += 1;
                if run >= 10 {
                    continuum_flag = true;
                }
            } else {
                run = 0;
            }
        }

        // Bracket every near-minimal local minimum (interior or left edge).
        let mut brackets: Vec<usize> = Vec::new();
        for j in 0..n {
            let left_ok = j == 0 || d[j] <= d[j - 1];
            let right_ok = d[j] <= d[j + 1];
            if left_ok && right_ok && d[j] <= best + COARSE_SLACK {
                brackets.push(j);
            }
        }
        if brackets.is_empty() {
            brackets.push(best_j.min(n - 1));
        }
        if brackets.len() > MAX_BRACKETS {
            // A flat stretch: keep the extremes and the best sample.
            let first = brackets[0];
            let last = *brackets.last().unwrap();
            let mid = *brackets
                .iter()
                .min_by(|&&a, &&b| d[a].partial_cmp(&d[b]).unwrap())
                .unwrap();
            brackets = alloc::vec![first, mid, last];
            brackets.sort_unstable();
            brackets.dedup();
        }

        let du = u_end / n as f64;
        let mut infallible = |u: f64| dist_at(u).unwrap_or(f64::INFINITY);
        let mut refined: Vec<(f64, f64)> = Vec::with_capacity(brackets.len());
        for j in brackets {
            let lo = if j == 0 { 0.0 } else { (j - 1) as f64 * du };
            let hi = (j + 1) as f64 * du;
            let u_g = golden_min(&mut infallible, lo, hi, opts.t_tol);
            let mut u_star = polish(&mut infallible, u_g, 0.0, u_end);
            let mut val = infallible(u_star);
            if j == 0 {
                // Golden section never lands on the endpoint itself; a
                // minimum at the start of the curve snaps to t = 0. The
                // slack absorbs evaluation noise on near-flat stretches
                // (tangential curves), where the interior "minimum" only
                // undercuts the endpoint by rounding.
                let v0 = infallible(0.0);
                if v0 <= val + 1e-12 * val.max(1.0) {
                    u_star = 0.0;
                    val = v0;
                }
            }
            refined.push((u_star, val));
        }

        let global = refined.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        let mut minimizers: Vec<Minimizer> = Vec::new();
        for (u, val) in refined {
            if val > global + opts.d_cluster {
                continue;
            }
            if let Some(prev) = minimizers.last() {
                if (log1p(prev.t) - u).abs() < 1e3 * opts.t_tol {
                    continue; // adjacent brackets converged to the same point
                }
            }
            let t = expm1(u);
            let point = c.eval(t).map_err(ProjectionError::Curve)?;
            minimizers.push(Minimizer {
                t,
                point,
                distance: HypDistance::new(val).expect("distance is finite"),
            });
        }
        debug_assert!(!minimizers.is_empty());
        let tie_count = minimizers.len();
        let global_distance = HypDistance::new(global).expect("distance is finite");

        let chosen = match policy {
            ProjectionPolicy::First | ProjectionPolicy::All => minimizers[0],
            ProjectionPolicy::Last => *minimizers.last().unwrap(),
            ProjectionPolicy::Continuity { previous: None } => minimizers[0],
            ProjectionPolicy::Continuity { previous: Some(p) } => *minimizers
                .iter()
                .min_by(|a, b| {
                    dist_h(&a.point, p)
                        .value()
                        .partial_cmp(&dist_h(&b.point, p).value())
                        .unwrap()
                })
                .unwrap(),
            ProjectionPolicy::Explicit(q) => {
                let dq = dist_h(z, q).value();
                if dq > global + opts.d_cluster {
                    return Err(ProjectionError::ExplicitNotATie);
                }
                let near = *minimizers
                    .iter()
                    .min_by(|a, b| {
                        dist_h(&a.point, q)
                            .value()
                            .partial_cmp(&dist_h(&b.point, q).value())
                            .unwrap()
                    })
                    .unwrap();
                let m = Minimizer {
                    t: near.t,
                    point: *q,
                    distance: HypDistance::new(dq).expect("distance is finite"),
                };
                // Keep the invariant that the chosen tie is listed.
                let pos = minimizers.iter().position(|x| x.t >= m.t).unwrap_or(tie_count);
                minimizers.insert(pos.min(minimizers.len()), m);
                m
            }
        };

        return Ok(ProjectionResult {
            minimizers,
            global_distance,
            tie_count,
            chosen,
            continuum_flag,
        });
    }
    Err(ProjectionError::Inconclusive)
}

/// Project every point of a sequence; the Continuity policy threads the
/// previously chosen point through the sequence.
pub fn project_points(
    c: &Curve,
    points: &[HalfPlanePoint],
    opts: &ProjectionOptions,
    policy: &ProjectionPolicy,
) -> Result<Vec<ProjectionResult>, OrbitProjectionError> {
    if points.is_empty() {
        return Err(OrbitProjectionError { index: 0, error: ProjectionError::EmptyInput });
    }
    let mut prev = match policy {
        ProjectionPolicy::Continuity { previous } => *previous,
        _ => None,
    };
    let mut out = Vec::with_capacity(points.len());
    for (index, z) in points.iter().enumerate() {
        let pol = match policy {
            ProjectionPolicy::Continuity { .. } => ProjectionPolicy::Continuity { previous: prev },
            other => other.clone(),
        };
        let r = project(c, z, opts, &pol).map_err(|error| OrbitProjectionError { index, error })?;
        prev = Some(r.chosen.point);
        out.push(r);
    }
    Ok(out)
}

pub fn project_orbit(
    c: &Curve,
    orbit: &Orbit,
    opts: &ProjectionOptions,
    policy: &ProjectionPolicy,
) -> Result<Vec<ProjectionResult>, OrbitProjectionError> {
    project_points(c, orbit.points(), opts, policy)
}

/// Empirical check that the projections of an escaping sequence escape:
/// the smallest tail projection modulus must exceed 100 times the
/// smallest head modulus and be at least 100. Refuses tangentially
/// landing curves, where the conclusion genuinely fails.
pub fn verify_escape(
    c: &Curve,
    zs: &[HalfPlanePoint],
    opts: &ProjectionOptions,
) -> Result<bool, ProjectionError> {
    if c.declared_slope().is_tangential() {
        return Err(ProjectionError::TangentialCurve);
    }
    if zs.len() < 8 {
        return Err(ProjectionError::EmptyInput);
    }
    let results = project_points(c, zs, opts, &ProjectionPolicy::Last)
        .map_err(|e| e.error)?;
    let logs: Vec<f64> = results.iter().map(|r| r.chosen.point.log_r()).collect();
    let q = logs.len() / 4;
    let head_min = logs[..q.max(1)].iter().cloned().fold(f64::INFINITY, f64::min);
    let tail_min = logs[logs.len() - q.max(1)..]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let ln100 = libm::log(100.0);
    Ok(tail_min >= head_min + ln100 && tail_min >= ln100)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Curve, ExampleId};
    use crate::dynamics::MapSpec;
    use crate::geometry::{Angle, Complex, HalfPlanePoint};

    const LN2: f64 = core::f64::consts::LN_2;

    fn lp(r: f64, theta: f64) -> HalfPlanePoint {
        HalfPlanePoint::from_log_polar(libm::log(r), theta).unwrap()
    }

    #[test]
    fn ray_matches_analytic_oracle() {
        let c = Curve::radial_ray(Angle::new(0.7).unwrap(), 1.0);
        let z = lp(5.0, 0.3);
        let r = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        assert_eq!(r.tie_count, 1);
        let oracle = c.analytic_projection(&z).unwrap();
        assert!(dist_h(&r.chosen.point, &oracle).value() <= 1e-9);
        assert!((r.chosen.t - 4.0).abs() < 1e-6);
    }

    #[test]
    fn horizontal_ray_matches_analytic_oracle() {
        let w = HalfPlanePoint::new(1.0, 1.0).unwrap();
        let c = Curve::horizontal_ray(&w);
        let z = HalfPlanePoint::new(2.0, 0.0).unwrap();
        let r = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        let oracle = c.analytic_projection(&z).unwrap();
        assert!(dist_h(&r.chosen.point, &oracle).value() <= 1e-9);
        assert!((r.chosen.point.re() - libm::sqrt(5.0)).abs() < 1e-8);
    }

    #[test]
    fn tangential_line_projects_to_base_point() {
        let c = Curve::example(ExampleId::Ex34, 1).unwrap();
        let one = HalfPlanePoint::new(1.0, 0.0).unwrap();
        for n in 1..=8u32 {
            let z = lp(libm::exp2(n as f64), 0.0);
            let r =
                project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
            assert!(dist_h(&r.chosen.point, &one).value() <= 1e-9, "n = {n}");
            assert!(r.chosen.t.abs() <= 1e-6, "n = {n}");
        }
    }

    #[test]
    fn equidistant_circle_is_a_continuum() {
        let c = Curve::example(ExampleId::Ex33, 1).unwrap();
        let z = HalfPlanePoint::new(2.0, 0.0).unwrap();
        let r = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        assert!((r.global_distance.value() - 0.25 * LN2).abs() < 1e-9);
        assert!(r.continuum_flag);

        // The tangency point 2 sqrt 2 realizes the distance and may be
        // forced by the Explicit policy.
        let tangency = HalfPlanePoint::new(2.0 * core::f64::consts::SQRT_2, 0.0).unwrap();
        let r = project(
            &c,
            &z,
            &ProjectionOptions::default(),
            &ProjectionPolicy::Explicit(tangency),
        )
        .unwrap();
        assert!(dist_h(&r.chosen.point, &tangency).value() < 1e-12);
        assert!(r.minimizers.iter().any(|m| m.point == r.chosen.point));

        let far = HalfPlanePoint::new(100.0, 0.0).unwrap();
        let err = project(
            &c,
            &z,
            &ProjectionOptions::default(),
            &ProjectionPolicy::Explicit(far),
        );
        assert_eq!(err, Err(ProjectionError::ExplicitNotATie));
    }

    #[test]
    fn arc_bottom_attracts_nearby_spine_points() {
        // The point 2 projects to 3, the foot of the first hanging arc.
        let c = Curve::example(ExampleId::Ex32Zero, 6).unwrap();
        let three = HalfPlanePoint::new(3.0, 0.0).unwrap();
        for z in [
            HalfPlanePoint::new(2.0, 0.0).unwrap(),
            HalfPlanePoint::new(3.0, 0.0).unwrap(),
        ] {
            let r =
                project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
            assert!(dist_h(&r.chosen.point, &three).value() <= 1e-7);
        }
    }

    #[test]
    fn on_curve_point_has_zero_distance() {
        let c = Curve::radial_ray(Angle::new(0.2).unwrap(), 1.0);
        let z = lp(37.5, 0.2);
        let r = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        assert!(r.global_distance.value() <= 1e-9);
        assert!(dist_h(&r.chosen.point, &z).value() <= 1e-8);
    }

    #[test]
    fn idempotence() {
        let c = Curve::radial_ray(Angle::new(0.7).unwrap(), 1.0);
        let z = lp(5.0, 0.3);
        let r = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        let again = project(
            &c,
            &r.chosen.point,
            &ProjectionOptions::default(),
            &ProjectionPolicy::Last,
        )
        .unwrap();
        assert!(again.global_distance.value() <= 1e-9);
    }

    #[test]
    fn determinism() {
        let c = Curve::example(ExampleId::Ex31, 6).unwrap();
        let z = lp(50.0, 0.01);
        let a = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        let b = project(&c, &z, &ProjectionOptions::default(), &ProjectionPolicy::Last).unwrap();
        assert_eq!(a.chosen.t.to_bits(), b.chosen.t.to_bits());
        assert_eq!(
            a.global_distance.value().to_bits(),
            b.global_distance.value().to_bits()
        );
    }

    #[test]
    fn orbit_projection_on_ray() {
        // f(z) = 2z from 1 on the ray through angle theta: chosen(n) = 2^n e^{i theta}.
        let theta = 0.4;
        let c = Curve::radial_ray(Angle::new(theta).unwrap(), 1.0);
        let f = MapSpec::affine(2.0, Complex::new(0.0, 0.0)).unwrap();
        let orbit = f.iterate(&HalfPlanePoint::new(1.0, 0.0).unwrap(), 10).unwrap();
        let rs = project_orbit(&c, &orbit, &ProjectionOptions::default(), &ProjectionPolicy::Last)
            .unwrap();
        for (n, r) in rs.iter().enumerate() {
            let want = HalfPlanePoint::from_log_polar(n as f64 * LN2, theta).unwrap();
            assert!(dist_h(&r.chosen.point, &want).value() <= 1e-8, "n = {n}");
        }
    }

    #[test]
    fn escape_checks() {
        let ray = Curve::radial_ray(Angle::new(0.0).unwrap(), 1.0);
        let f = MapSpec::affine(2.0, Complex::new(0.0, 0.0)).unwrap();
        let orbit = f.iterate(&HalfPlanePoint::new(1.0, 0.0).unwrap(), 16).unwrap();
        let opts = ProjectionOptions::default();
        assert!(verify_escape(&ray, orbit.points(), &opts).unwrap());

        let ex31 = Curve::example(ExampleId::Ex31, 10).unwrap();
        let zs: Vec<HalfPlanePoint> = (1..=9)
            .map(|n| HalfPlanePoint::from_log_polar(n as f64, 0.0).unwrap())
            .collect();
        assert!(verify_escape(&ex31, &zs, &opts).unwrap());

        let ex34 = Curve::example(ExampleId::Ex34, 1).unwrap();
        assert_eq!(
            verify_escape(&ex34, orbit.points(), &opts),
            Err(ProjectionError::TangentialCurve)
        );
    }

    #[test]
    fn continuity_policy_threads_previous_choice() {
        let c = Curve::example(ExampleId::Ex33, 1).unwrap();
        let zs = [
            HalfPlanePoint::new(2.0, 0.0).unwrap(),
            HalfPlanePoint::new(4.0, 0.0).unwrap(),
        ];
        let rs = project_points(
            &c,
            &zs,
            &ProjectionOptions::default(),
            &ProjectionPolicy::Continuity { previous: None },
        )
        .unwrap();
        // The second choice stays near the first one rather than jumping
        // across the continuum of ties.
        assert!(dist_h(&rs[1].chosen.point, &rs[0].chosen.point).value() < 0.5);
    }
}

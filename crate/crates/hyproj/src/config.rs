//! Scenario configuration: a single JSON document with keys `map`,
//! `curve`, `z`, `w`, `n_range`, `policy`, `tolerances`. Unknown keys are
//! rejected so typos fail loudly instead of silently running defaults.

use hyproj_core::geometry::{Angle, Complex, HalfPlanePoint};
use hyproj_core::projection::{ProjectionOptions, ProjectionPolicy};
use hyproj_core::{Curve, ExampleId, MapSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
#[error("configuration error: {0}")]
pub struct ConfigError(pub String);

fn cfg_err(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub map: MapCfg,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveField>,
    /// Base point as `[re, im]`.
    pub z: (f64, f64),
    /// Observer point as `[re, im]`; required by the monotonicity and
    /// total-speed scenarios.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<(f64, f64)>,
    /// Inclusive iterate range `[n_lo, n_hi]`.
    pub n_range: (usize, usize),
    #[serde(default)]
    pub policy: PolicyCfg,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// One curve, or a pair for the two-curve scenarios.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CurveField {
    One(CurveCfg),
    Pair(Box<(CurveCfg, CurveCfg)>),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapCfg {
    Affine { a: f64, b: (f64, f64) },
    Scaling { t: f64 },
    Composition { maps: Vec<MapCfg> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveCfg {
    RadialRay { theta: f64, r0: f64 },
    HorizontalRay { w: (f64, f64) },
    VerticalRay { x0: f64, sign: i8 },
    ShiftedRay { base: (f64, f64), theta: f64, t0: f64 },
    Example { id: String, n_max: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum PolicyCfg {
    First,
    Last,
    All,
    Continuity,
    Explicit((f64, f64)),
}

impl Default for PolicyCfg {
    fn default() -> Self {
        PolicyCfg::Last
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Positive lower bound certifying strict tail increase.
    pub tail_increment: f64,
    /// Agreement tolerance (hyperbolic) for plateau and identity checks.
    pub agreement: f64,
    /// Tie-detection distance for the projection engine.
    pub tie: f64,
    /// Refinement tolerance for the projection engine, in `log(1 + t)`.
    pub t_tol: f64,
    /// Gap bound for the equal-slope closeness scenario once past the gate.
    pub closeness: f64,
    /// `|z_n|` gate beyond which the closeness bound must hold.
    pub closeness_gate: f64,
    /// Tail tolerance for the distinct-slopes scenario.
    pub slopes: f64,
    /// `|z_n|` gate for the distinct-slopes tail.
    pub slopes_gate: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tail_increment: 1e-6,
            agreement: 1e-6,
            tie: 1e-7,
            t_tol: 1e-12,
            closeness: 1e-3,
            closeness_gate: 1e6,
            slopes: 1e-4,
            slopes_gate: 1e8,
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| cfg_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_range.0 > self.n_range.1 {
            return Err(cfg_err("n_range must be nonempty (n_lo <= n_hi)"));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("tail_increment", t.tail_increment),
            ("agreement", t.agreement),
            ("tie", t.tie),
            ("t_tol", t.t_tol),
            ("closeness", t.closeness),
            ("closeness_gate", t.closeness_gate),
            ("slopes", t.slopes),
            ("slopes_gate", t.slopes_gate),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(cfg_err(format!("tolerance `{name}` must be positive")));
            }
        }
        self.map()?;
        self.base_point()?;
        if let Some(field) = &self.curve {
            match field {
                CurveField::One(c) => {
                    c.to_curve()?;
                }
                CurveField::Pair(p) => {
                    p.0.to_curve()?;
                    p.1.to_curve()?;
                }
            }
        }
        Ok(())
    }

    pub fn map(&self) -> Result<MapSpec, ConfigError> {
        self.map.to_map()
    }

    pub fn base_point(&self) -> Result<HalfPlanePoint, ConfigError> {
        HalfPlanePoint::new(self.z.0, self.z.1)
            .map_err(|_| cfg_err("z must lie in the open right half-plane"))
    }

    pub fn observer(&self) -> Result<HalfPlanePoint, ConfigError> {
        let w = self.w.ok_or_else(|| cfg_err("this scenario requires `w`"))?;
        HalfPlanePoint::new(w.0, w.1)
            .map_err(|_| cfg_err("w must lie in the open right half-plane"))
    }

    pub fn single_curve(&self) -> Result<Curve, ConfigError> {
        match &self.curve {
            Some(CurveField::One(c)) => c.to_curve(),
            Some(CurveField::Pair(_)) => {
                Err(cfg_err("this scenario takes exactly one curve"))
            }
            None => Err(cfg_err("this scenario requires `curve`")),
        }
    }

    pub fn curve_pair(&self) -> Result<(Curve, Curve), ConfigError> {
        match &self.curve {
            Some(CurveField::Pair(p)) => Ok((p.0.to_curve()?, p.1.to_curve()?)),
            _ => Err(cfg_err("this scenario requires `curve` to be a pair")),
        }
    }

    pub fn projection_options(&self) -> ProjectionOptions {
        ProjectionOptions {
            t_tol: self.tolerances.t_tol,
            d_cluster: self.tolerances.tie,
            ..ProjectionOptions::default()
        }
    }

    pub fn projection_policy(&self) -> Result<ProjectionPolicy, ConfigError> {
        Ok(match &self.policy {
            PolicyCfg::First => ProjectionPolicy::First,
            PolicyCfg::Last => ProjectionPolicy::Last,
            PolicyCfg::All => ProjectionPolicy::All,
            PolicyCfg::Continuity => ProjectionPolicy::Continuity { previous: None },
            PolicyCfg::Explicit((re, im)) => ProjectionPolicy::Explicit(
                HalfPlanePoint::new(*re, *im)
                    .map_err(|_| cfg_err("explicit policy point must lie in H"))?,
            ),
        })
    }
}

impl MapCfg {
    pub fn to_map(&self) -> Result<MapSpec, ConfigError> {
        match self {
            MapCfg::Affine { a, b } => MapSpec::affine(*a, Complex::new(b.0, b.1))
                .map_err(|_| cfg_err("affine map requires a >= 1, Re b >= 0, not identity")),
            MapCfg::Scaling { t } => {
                MapSpec::scaling(*t).map_err(|_| cfg_err("scaling requires t > 0"))
            }
            MapCfg::Composition { maps } => {
                let inner: Result<Vec<_>, _> = maps.iter().map(|m| m.to_map()).collect();
                MapSpec::composition(inner?)
                    .map_err(|_| cfg_err("composition requires at least one map"))
            }
        }
    }
}

impl CurveCfg {
    pub fn to_curve(&self) -> Result<Curve, ConfigError> {
        match self {
            CurveCfg::RadialRay { theta, r0 } => {
                let ang = Angle::new(*theta)
                    .map_err(|_| cfg_err("radial ray angle must be in (-pi/2, pi/2)"))?;
                if !(*r0 > 0.0 && r0.is_finite()) {
                    return Err(cfg_err("radial ray r0 must be positive"));
                }
                Ok(Curve::radial_ray(ang, *r0))
            }
            CurveCfg::HorizontalRay { w } => {
                let p = HalfPlanePoint::new(w.0, w.1)
                    .map_err(|_| cfg_err("horizontal ray base must lie in H"))?;
                Ok(Curve::horizontal_ray(&p))
            }
            CurveCfg::VerticalRay { x0, sign } => {
                if !(*x0 > 0.0 && x0.is_finite()) || (*sign != 1 && *sign != -1) {
                    return Err(cfg_err("vertical ray requires x0 > 0 and sign ±1"));
                }
                Ok(Curve::vertical_ray(*x0, *sign))
            }
            CurveCfg::ShiftedRay { base, theta, t0 } => {
                let ang = Angle::new(*theta)
                    .map_err(|_| cfg_err("shifted ray angle must be in (-pi/2, pi/2)"))?;
                if !(*t0 > 0.0 && t0.is_finite()) {
                    return Err(cfg_err("shifted ray t0 must be positive"));
                }
                let b = Complex::new(base.0, base.1);
                let start = b + Complex::from_polar(*t0, *theta);
                if !(start.re > 0.0) {
                    return Err(cfg_err("shifted ray must start inside H"));
                }
                Ok(Curve::shifted_ray(b, ang, *t0))
            }
            CurveCfg::Example { id, n_max } => {
                let eid = ExampleId::parse(id)
                    .map_err(|_| cfg_err(format!("unknown example curve id `{id}`")))?;
                Curve::example(eid, *n_max)
                    .map_err(|e| cfg_err(format!("example curve: {e}")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let cfg = ScenarioConfig {
            map: MapCfg::Affine { a: 2.0, b: (0.0, 0.0) },
            curve: Some(CurveField::One(CurveCfg::RadialRay { theta: 0.0, r0: 1.0 })),
            z: (1.0, 2.0),
            w: Some((3.0, 1.0)),
            n_range: (0, 40),
            policy: PolicyCfg::Last,
            tolerances: Tolerances::default(),
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"map":{"kind":"affine","a":2.0,"b":[0.0,0.0]},"z":[1.0,0.0],"n_range":[0,10],"frobnicate":1}"#;
        let err = ScenarioConfig::from_json(text).unwrap_err();
        assert!(err.0.contains("frobnicate"), "{}", err.0);
    }

    #[test]
    fn invalid_map_rejected() {
        let text = r#"{"map":{"kind":"affine","a":0.5,"b":[0.0,0.0]},"z":[1.0,0.0],"n_range":[0,10]}"#;
        assert!(ScenarioConfig::from_json(text).is_err());
    }

    #[test]
    fn curve_pair_parses() {
        let text = r#"{
            "map": {"kind":"affine","a":2.0,"b":[0.0,0.0]},
            "curve": [
                {"kind":"radial_ray","theta":0.4,"r0":1.0},
                {"kind":"shifted_ray","base":[0.0,5.0],"theta":0.4,"t0":1.0}
            ],
            "z": [1.0,1.0],
            "n_range": [0,30]
        }"#;
        let cfg = ScenarioConfig::from_json(text).unwrap();
        let (c1, c2) = cfg.curve_pair().unwrap();
        assert_eq!(c1.declared_slope().angle().unwrap().radians(), 0.4);
        assert_eq!(c2.declared_slope().angle().unwrap().radians(), 0.4);
    }
}

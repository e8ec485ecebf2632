//! Scene files: a triangle plus a description of its six cevian feet.
//!
//! ```json
//! {
//!   "triangle": [["0", "0"], ["4", "0"], ["0", "3"]],
//!   "feet": { "isogonal": ["1/2", "1/2", "1/2"] },
//!   "mode": "rational",
//!   "tolerances": { "epsilon": 1e-9 }
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings (`"p/q"`, integers, decimals).
//! Feet are given as six side parameters `A1, B1, C1, A2, B2, C2` (foot on
//! `BC` is `B + t (C - B)`, on `CA` is `C + t (A - C)`, on `AB` is
//! `A + t (B - A)`), or by a generator applied to a first triple.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::cevian::{cevians_through_point, isogonal_feet, isotomic_feet, CevianFeet, CevianTriple, Triangle};
use crate::projective::HPoint;
use crate::scalar::{Scalar, Tolerance};

/// A number as written in a scene: kept as text until the backend is known.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Number(serde_json::Number),
}

impl Num {
    pub fn text(&self) -> String {
        match self {
            Num::Text(s) => s.trim().to_string(),
            Num::Number(n) => n.to_string(),
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> Result<S, IoError> {
        let t = self.text();
        S::parse(&t).ok_or_else(|| IoError::Invalid(format!("not a number: {t:?}")))
    }
}

impl From<&str> for Num {
    fn from(s: &str) -> Self {
        Num::Text(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Rational,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rational" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            _ => Err(format!("unknown mode {s:?} (expected rational or float)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FeetSpec {
    /// Six side parameters, first triple then second.
    Params([Num; 6]),
    /// First triple by side parameters; second is its isogonal partner.
    Isogonal([Num; 3]),
    /// First triple by side parameters; second is its isotomic partner.
    Isotomic([Num; 3]),
    /// Cevians through two points.
    ThroughPoints([[Num; 2]; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub triangle: [[Num; 2]; 3],
    pub feet: FeetSpec,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Scene, IoError> {
        let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Scene::parse(&text)
    }

    pub fn tolerance(&self) -> Tolerance {
        let mut tol = Tolerance::default();
        if let Some(e) = self.tolerances.epsilon {
            tol.eps = e;
        }
        if let Some(c) = self.tolerances.closure {
            tol.closure = c;
        }
        tol
    }

    pub fn build_triangle<S: Scalar>(&self) -> Result<Triangle<S>, IoError> {
        let mut pts = Vec::with_capacity(3);
        for [x, y] in &self.triangle {
            pts.push((x.to_scalar::<S>()?, y.to_scalar::<S>()?));
        }
        let pts: [(S, S); 3] = pts.try_into().unwrap_or_else(|_| unreachable!());
        Ok(Triangle::from_affine(pts)?)
    }

    pub fn build_feet<S: Scalar>(&self, tri: &Triangle<S>, tol: &Tolerance) -> Result<CevianFeet<S>, IoError> {
        let params = |nums: &[Num]| -> Result<Vec<S>, IoError> { nums.iter().map(Num::to_scalar).collect() };
        let triple = |nums: &[Num; 3]| -> Result<CevianTriple<S>, IoError> {
            let t: [S; 3] = params(nums)?.try_into().unwrap_or_else(|_| unreachable!());
            Ok(CevianTriple::from_parameters(tri, t)?)
        };
        let feet = match &self.feet {
            FeetSpec::Params(nums) => {
                let t: [S; 6] = params(nums)?.try_into().unwrap_or_else(|_| unreachable!());
                CevianFeet::from_parameters(tri, t, tol)?
            }
            FeetSpec::Isogonal(nums) => {
                let first = triple(nums)?;
                let second = isogonal_feet(tri, &first)?;
                CevianFeet::from_triples(tri, &first, &second, tol)?
            }
            FeetSpec::Isotomic(nums) => {
                let first = triple(nums)?;
                let second = isotomic_feet(tri, &first)?;
                CevianFeet::from_triples(tri, &first, &second, tol)?
            }
            FeetSpec::ThroughPoints([p1, p2]) => {
                let point = |[x, y]: &[Num; 2]| -> Result<HPoint<S>, IoError> {
                    Ok(HPoint::affine(x.to_scalar()?, y.to_scalar()?))
                };
                let first = cevians_through_point(tri, &point(p1)?, tol)?;
                let second = cevians_through_point(tri, &point(p2)?, tol)?;
                CevianFeet::from_triples(tri, &first, &second, tol)?
            }
        };
        Ok(feet)
    }
}

/// Parses `"x,y"`.
pub fn parse_pair<S: Scalar>(text: &str) -> Result<(S, S), IoError> {
    let bad = || IoError::Invalid(format!("expected \"x,y\", got {text:?}"));
    let (x, y) = text.split_once(',').ok_or_else(bad)?;
    Ok((S::parse(x.trim()).ok_or_else(bad)?, S::parse(y.trim()).ok_or_else(bad)?))
}

/// Parses `"x1,y1 x2,y2 x3,y3"`.
pub fn parse_triangle<S: Scalar>(text: &str) -> Result<[(S, S); 3], IoError> {
    let pts = text.split_whitespace().map(parse_pair).collect::<Result<Vec<_>, _>>()?;
    pts.try_into()
        .map_err(|_| IoError::Invalid(format!("expected three points, got {text:?}")))
}

/// Parses six comma-separated conic coefficients in monomial order
/// `x², xy, y², xz, yz, z²`.
pub fn parse_coefficients<S: Scalar>(text: &str) -> Result<[S; 6], IoError> {
    let bad = || IoError::Invalid(format!("expected six comma-separated coefficients, got {text:?}"));
    let k = text
        .split(',')
        .map(|t| S::parse(t.trim()).ok_or_else(bad))
        .collect::<Result<Vec<_>, _>>()?;
    k.try_into().map_err(|_| bad())
}

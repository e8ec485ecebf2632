//! Poncelet chains: broken lines with vertices on an outer conic `C1` and
//! links tangent to an inner conic `C2`.
//!
//! Chains run in `f64`; tangents from a point generally need square roots.
//! Links are full lines, so a link may touch `C2` outside the segment
//! between its two vertices.

use crate::conic::{intersect_line, tangent_lines_from, Conic};
use crate::error::{Error, Result};
use crate::linalg::{self, Roots, Vec3};
use crate::projective::{HLine, HPoint};
use crate::scalar::{Scalar, Tolerance};

/// Second intersection of `c` with the line through `base` in direction
/// `(1, t)`. Rational in `t` for rational input; returns `base` itself when
/// that line is tangent at `base`.
pub fn sample_on_conic<S: Scalar>(c: &Conic<S>, base: &HPoint<S>, t: &S, tol: &Tolerance) -> Result<HPoint<S>> {
    if c.classify(tol) != crate::conic::RankClass::Nondegenerate {
        return Err(Error::DegenerateConic);
    }
    if !c.contains(base, tol) {
        return Err(Error::BaseNotOnConic);
    }
    let d: Vec3<S> = [S::one(), t.clone(), S::zero()];
    let b = base.coords();
    let m = c.matrix();
    let dd = linalg::bilinear(&d, m, &d);
    let bd = linalg::bilinear(b, m, &d);
    let two_bd = bd.clone() + bd;
    let p = linalg::sub3(&linalg::scale3(&dd, b), &linalg::scale3(&two_bd, &d));
    if linalg::is_zero3(&p) {
        return Ok(base.clone());
    }
    HPoint::from_coords(p)
}

/// Some real point of a nondegenerate conic, found on a few fixed lines.
pub fn point_on_conic(c: &Conic<f64>, tol: &Tolerance) -> Result<HPoint<f64>> {
    let mut lines: Vec<Vec3<f64>> = Vec::new();
    if let Some((cx, cy)) = c.center() {
        for (dx, dy) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)] {
            lines.push(linalg::cross(&[cx, cy, 1.0], &[dx, dy, 0.0]));
        }
    }
    lines.extend([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [1.0, -1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    for l in lines {
        let Ok(l) = HLine::from_coeffs(l) else { continue };
        if let Ok(roots) = intersect_line(c, &l, tol) {
            if let Some(p) = roots.into_vec().into_iter().next() {
                return Ok(p);
            }
        }
    }
    Err(Error::NoRealSolution)
}

/// One link of a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct PonceletStep {
    pub next: HPoint<f64>,
    pub link: HLine<f64>,
    /// The link touches `C1` at the current point, so `next == current`.
    pub tangential: bool,
}

/// Distance between canonical triples. Float canonical forms can differ in
/// overall sign when two components tie in magnitude, so both signs count.
pub fn triple_gap(a: &Vec3<f64>, b: &Vec3<f64>) -> f64 {
    linalg::norm(&linalg::sub3(a, b)).min(linalg::norm(&linalg::add3(a, b)))
}

/// Sine of the angle between two triples: zero exactly when they are
/// proportional.
fn separation(a: &Vec3<f64>, b: &Vec3<f64>) -> f64 {
    linalg::norm(&linalg::cross(a, b)) / (linalg::norm(a) * linalg::norm(b))
}

/// Point scaled to `z >= 0` (`z = 1` when finite), for orientation tests.
fn oriented(p: &Vec3<f64>) -> Vec3<f64> {
    if p[2] != 0.0 {
        linalg::scale3(&(1.0 / p[2]), p)
    } else {
        *p
    }
}

/// Advances the chain from `current` (on `c1`).
///
/// With an `incoming` link the other tangent to `c2` is taken. Without one,
/// the tangent whose touch point is counterclockwise from `current` about the
/// center of `c2` (the origin if `c2` has none).
pub fn poncelet_step(
    c1: &Conic<f64>,
    c2: &Conic<f64>,
    current: &HPoint<f64>,
    incoming: Option<&HLine<f64>>,
    tol: &Tolerance,
) -> Result<PonceletStep> {
    if c1.classify(tol) != crate::conic::RankClass::Nondegenerate {
        return Err(Error::DegenerateConic);
    }
    let tangents = match tangent_lines_from(c2, current, tol)? {
        Roots::None => return Err(Error::NoTangentLine),
        Roots::Double(l) => vec![l],
        Roots::Pair(l, m) => vec![l, m],
    };
    let link = if tangents.len() == 1 {
        tangents[0].clone()
    } else if let Some(inc) = incoming {
        let away = |l: &HLine<f64>| separation(l.coeffs(), inc.coeffs());
        if away(&tangents[0]) >= away(&tangents[1]) {
            tangents[0].clone()
        } else {
            tangents[1].clone()
        }
    } else {
        let center = c2.center().map_or([0.0, 0.0, 1.0], |(x, y)| [x, y, 1.0]);
        let adj = linalg::adjugate3(c2.matrix());
        let p = oriented(current.coords());
        let turn = |l: &HLine<f64>| {
            let touch = oriented(&linalg::mat_vec3(&adj, l.coeffs()));
            linalg::det3(&[center, p, touch])
        };
        if turn(&tangents[0]) >= turn(&tangents[1]) {
            tangents[0].clone()
        } else {
            tangents[1].clone()
        }
    };
    match intersect_line(c1, &link, tol)? {
        Roots::None => Err(Error::ChainStuck),
        Roots::Double(_) => Ok(PonceletStep {
            next: current.clone(),
            link,
            tangential: true,
        }),
        Roots::Pair(a, b) => {
            let cur = current.coords();
            let next = if separation(a.coords(), cur) >= separation(b.coords(), cur) { a } else { b };
            Ok(PonceletStep {
                next,
                link,
                tangential: false,
            })
        }
    }
}

/// A traced chain `P1, P2, ...` with links `P1P2, P2P3, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainResult {
    pub points: Vec<HPoint<f64>>,
    pub links: Vec<HLine<f64>>,
    /// Smallest `n >= 3` with `P(n+1)` back at `P1`.
    pub closure_step: Option<usize>,
    /// Distance between canonical triples of `P1` and `P(n+1)` at closure;
    /// otherwise the smallest such distance seen from step 3 on.
    pub gap: f64,
    pub tangential: bool,
}

impl ChainResult {
    pub fn closed(&self) -> bool {
        self.closure_step.is_some()
    }
}

/// Follows the chain from `start` for at most `max_steps` links, stopping
/// when it closes within `tol.closure`.
pub fn trace_chain(
    c1: &Conic<f64>,
    c2: &Conic<f64>,
    start: &HPoint<f64>,
    max_steps: usize,
    tol: &Tolerance,
) -> Result<ChainResult> {
    if !c1.contains(start, tol) {
        return Err(Error::BaseNotOnConic);
    }
    let mut points = vec![start.clone()];
    let mut links: Vec<HLine<f64>> = Vec::new();
    let mut tangential = false;
    let mut closure_step = None;
    let mut gap = f64::INFINITY;
    for step in 1..=max_steps {
        let current = points.last().unwrap().clone();
        let s = poncelet_step(c1, c2, &current, links.last(), tol).map_err(|e| Error::Step {
            step,
            source: Box::new(e),
        })?;
        tangential |= s.tangential;
        let g = triple_gap(s.next.coords(), start.coords());
        points.push(s.next);
        links.push(s.link);
        if step >= 3 {
            if g <= tol.closure {
                closure_step = Some(step);
                gap = g;
                break;
            }
            gap = gap.min(g);
        }
    }
    Ok(ChainResult {
        points,
        links,
        closure_step,
        gap,
        tangential,
    })
}

/// Closure statistics over several starting points.
#[derive(Debug, Clone, PartialEq)]
pub struct PorismReport {
    pub expected_n: usize,
    /// Every sample closed at exactly `expected_n`.
    pub all_closed: bool,
    pub max_gap: f64,
    pub steps: Vec<Option<usize>>,
    pub gaps: Vec<f64>,
}

/// Starting points on `c1` from `num_samples` evenly spread pencil directions.
pub fn porism_samples(c1: &Conic<f64>, num_samples: usize, tol: &Tolerance) -> Result<Vec<HPoint<f64>>> {
    let base = point_on_conic(c1, tol)?;
    (0..num_samples)
        .map(|k| {
            let angle = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / num_samples as f64;
            sample_on_conic(c1, &base, &angle.tan(), tol)
        })
        .collect()
}

/// Traces chains from spread-out starting points and checks that each closes
/// at `expected_n`.
pub fn porism_check(
    c1: &Conic<f64>,
    c2: &Conic<f64>,
    expected_n: usize,
    num_samples: usize,
    tol: &Tolerance,
) -> Result<PorismReport> {
    let max_steps = expected_n.max(100);
    let mut steps = Vec::with_capacity(num_samples);
    let mut gaps = Vec::with_capacity(num_samples);
    for start in porism_samples(c1, num_samples, tol)? {
        let chain = trace_chain(c1, c2, &start, max_steps, tol)?;
        steps.push(chain.closure_step);
        gaps.push(chain.gap);
    }
    let all_closed = steps.iter().all(|&s| s == Some(expected_n));
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    Ok(PorismReport {
        expected_n,
        all_closed,
        max_gap,
        steps,
        gaps,
    })
}

/// Circle `x² + y² = r²` centered at the origin.
pub fn circle(r: f64) -> Conic<f64> {
    Conic::from_coefficients([1.0, 0.0, 1.0, 0.0, 0.0, -r * r]).expect("valid circle")
}

//! The Morley trisector configuration.
//!
//! At each vertex the trisector with index 1 is adjacent to the side toward
//! the next vertex in cyclic order `A → B → C → A`, and index 2 to the side
//! toward the previous one: `AA1` hugs `AB`, `BB1` hugs `BC`, `CC1` hugs
//! `CA`. Then `U1 = BB1 ∩ CC2` is the Morley vertex nearest `BC`, and so on.
//! The labeling is re-checked at runtime and flipped per vertex if needed.

use crate::cevian::{build_config, evaluate_conditions, CevianFeet, Conditions, FootSlot, Theorem1Config, Triangle};
use crate::conic::{conic_tangent_to_lines, conic_through_points, Conic};
use crate::error::{Error, Result};
use crate::linalg::{self, Vec3};
use crate::projective::{join, meet, normalized_det3, HLine, HPoint};
use crate::scalar::Tolerance;

type P2 = (f64, f64);

fn affine_vertices(tri: &Triangle<f64>) -> Result<[P2; 3]> {
    let v = tri.vertices();
    let f = |p: &HPoint<f64>| p.to_affine().ok_or(Error::NonFiniteVertex);
    Ok([f(&v[0])?, f(&v[1])?, f(&v[2])?])
}

fn unit(v: P2) -> P2 {
    let n = v.0.hypot(v.1);
    (v.0 / n, v.1 / n)
}

fn rotate(v: P2, angle: f64) -> P2 {
    let (s, c) = angle.sin_cos();
    (c * v.0 - s * v.1, s * v.0 + c * v.1)
}

/// The two interior trisectors at vertex `i`: adjacent to the side toward
/// vertex `i + 1`, then adjacent to the side toward `i + 2`.
fn trisectors_at(pts: &[P2; 3], i: usize) -> [HLine<f64>; 2] {
    let v = pts[i];
    let next = pts[(i + 1) % 3];
    let prev = pts[(i + 2) % 3];
    let un = unit((next.0 - v.0, next.1 - v.1));
    let up = unit((prev.0 - v.0, prev.1 - v.1));
    let cross = un.0 * up.1 - un.1 * up.0;
    let dot = un.0 * up.0 + un.1 * up.1;
    let theta = cross.abs().atan2(dot);
    let s = cross.signum();
    let line = |dir: P2| {
        let l = linalg::cross(&[v.0, v.1, 1.0], &[dir.0, dir.1, 0.0]);
        HLine::from_coeffs(l).expect("vertex and direction span a line")
    };
    [line(rotate(un, s * theta / 3.0)), line(rotate(un, 2.0 * s * theta / 3.0))]
}

fn all_trisectors(tri: &Triangle<f64>) -> Result<[[HLine<f64>; 2]; 3]> {
    let pts = affine_vertices(tri)?;
    Ok([trisectors_at(&pts, 0), trisectors_at(&pts, 1), trisectors_at(&pts, 2)])
}

fn morley_from(t: &[[HLine<f64>; 2]; 3]) -> Result<[HPoint<f64>; 3]> {
    let m = |a: &HLine<f64>, b: &HLine<f64>| meet(a, b).map_err(|_| Error::DegenerateTriangle);
    // Adjacent to BC: B's first, C's second; cyclically.
    Ok([m(&t[1][0], &t[2][1])?, m(&t[2][0], &t[0][1])?, m(&t[0][0], &t[1][1])?])
}

/// Relative spread `(max - min) / max` of the side lengths; infinite when a
/// vertex is at infinity.
pub fn equilateral_spread(pts: &[HPoint<f64>; 3]) -> f64 {
    let Some(a) = pts.iter().map(|p| p.to_affine()).collect::<Option<Vec<P2>>>() else {
        return f64::INFINITY;
    };
    let d = |i: usize, j: usize| (a[i].0 - a[j].0).hypot(a[i].1 - a[j].1);
    let sides = [d(0, 1), d(1, 2), d(2, 0)];
    let max = sides.iter().copied().fold(0.0, f64::max);
    let min = sides.iter().copied().fold(f64::INFINITY, f64::min);
    (max - min) / max
}

/// Morley triangle `U1, V1, W1` (nearest `BC`, `CA`, `AB`).
pub fn morley_triangle(tri: &Triangle<f64>) -> Result<[HPoint<f64>; 3]> {
    morley_from(&all_trisectors(tri)?)
}

fn concurrency(tri: &Triangle<f64>, m: &[HPoint<f64>; 3]) -> Result<(HPoint<f64>, f64)> {
    let [a, b, c] = tri.vertices();
    let la = join(a, &m[0]).map_err(|_| Error::DegenerateTriangle)?;
    let lb = join(b, &m[1]).map_err(|_| Error::DegenerateTriangle)?;
    let lc = join(c, &m[2]).map_err(|_| Error::DegenerateTriangle)?;
    let center = meet(&la, &lb).map_err(|_| Error::DegenerateTriangle)?;
    let residual = normalized_det3([la.coeffs(), lb.coeffs(), lc.coeffs()]).abs();
    Ok((center, residual))
}

/// Common point of `AU1`, `BV1`, `CW1`.
pub fn second_morley_center(tri: &Triangle<f64>, tol: &Tolerance) -> Result<HPoint<f64>> {
    let (center, residual) = concurrency(tri, &morley_triangle(tri)?)?;
    if residual > tol.eps {
        return Err(Error::ConcurrencyViolated { residual });
    }
    Ok(center)
}

/// Everything derived from a triangle's trisectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MorleyData {
    pub triangle: Triangle<f64>,
    /// `AA1, AA2, BB1, BB2, CC1, CC2`.
    pub trisectors: [HLine<f64>; 6],
    pub feet: CevianFeet<f64>,
    /// `U1, V1, W1`.
    pub morley_triangle: [HPoint<f64>; 3],
    pub config: Theorem1Config<f64>,
    pub conditions: Conditions<f64>,
    /// Centroid of the Morley triangle.
    pub first_center: HPoint<f64>,
    pub second_center: HPoint<f64>,
    pub concurrency_residual: f64,
    pub equilateral_spread: f64,
    /// Through `X1, Y1, Z1, X2, Y2, Z2`.
    pub c1: Conic<f64>,
    /// Tangent to the six trisectors.
    pub c2: Conic<f64>,
    /// Vertices whose trisector labels had to be swapped.
    pub flipped: [bool; 3],
}

fn centroid(pts: &[HPoint<f64>; 3]) -> Result<HPoint<f64>> {
    let mut s: Vec3<f64> = [0.0, 0.0, 3.0];
    for p in pts {
        let (x, y) = p.to_affine().ok_or(Error::DegenerateTriangle)?;
        s[0] += x;
        s[1] += y;
    }
    HPoint::from_coords(s)
}

pub fn morley_config(tri: &Triangle<f64>, tol: &Tolerance) -> Result<MorleyData> {
    let base = all_trisectors(tri)?;
    let morley = morley_from(&base)?;
    let spread = equilateral_spread(&morley);

    let mut found = None;
    for mask in 0..8u8 {
        let flipped = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
        let t: [[HLine<f64>; 2]; 3] = std::array::from_fn(|i| {
            let [p, q] = base[i].clone();
            if flipped[i] {
                [q, p]
            } else {
                [p, q]
            }
        });
        let lines: [HLine<f64>; 6] = std::array::from_fn(|k| t[k / 2][k % 2].clone());
        let feet: Vec<HPoint<f64>> = FootSlot::ALL
            .iter()
            .map(|s| meet(&lines[s.index()], &tri.side_line(s.side())))
            .collect::<Result<_>>()?;
        let feet = CevianFeet::new(tri, feet.try_into().unwrap_or_else(|_| unreachable!()), tol)?;
        let config = build_config(tri, &feet)?;
        let cross = config.cross_points().clone();
        let matches = cross.iter().zip(&morley).all(|(c, m)| c.equivalent(m, &Tolerance::new(1e-6)));
        if matches && equilateral_spread(&cross) < 1e-6 {
            found = Some((lines, feet, config, flipped));
            break;
        }
    }
    let (trisectors, feet, config, flipped) = found.ok_or(Error::LabelingSelfCheckFailed)?;

    let (second_center, concurrency_residual) = concurrency(tri, &morley)?;
    if concurrency_residual > tol.eps {
        return Err(Error::ConcurrencyViolated {
            residual: concurrency_residual,
        });
    }

    let inner = config.inner_points();
    let c1 = conic_through_points(&[inner[0].clone(), inner[1].clone(), inner[2].clone(), inner[3].clone(), inner[4].clone()], tol)?;
    let r = c1.residual(&inner[5]).abs();
    if r > tol.eps {
        return Err(Error::FitCheckFailed { what: "point Z2", residual: r });
    }
    let cev = config.cevians();
    let c2 = conic_tangent_to_lines(&[cev[0].clone(), cev[1].clone(), cev[2].clone(), cev[3].clone(), cev[4].clone()], tol)?;
    let r = c2.tangency_residual(&cev[5]).abs();
    if r > tol.eps {
        return Err(Error::FitCheckFailed { what: "line CC2", residual: r });
    }

    let conditions = evaluate_conditions(&config, tol)?;
    Ok(MorleyData {
        triangle: tri.clone(),
        trisectors,
        feet,
        first_center: centroid(&morley)?,
        morley_triangle: morley,
        config,
        conditions,
        second_center,
        concurrency_residual,
        equilateral_spread: spread,
        c1,
        c2,
        flipped,
    })
}

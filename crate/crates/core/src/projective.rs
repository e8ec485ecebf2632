//! Points, lines and collineations of the real projective plane.
//!
//! Points and lines are homogeneous triples stored in canonical form, so
//! for exact scalars equality up to scale is plain `==`. Points at infinity
//! (`z = 0`) and the line at infinity `(0:0:1)` need no special handling.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::scalar::{Scalar, Tolerance};

fn canonical<S: Scalar>(v: Vec3<S>) -> Result<Vec3<S>> {
    if !S::EXACT && v.iter().any(|x| !x.to_f64().is_finite()) {
        return Err(Error::NonFinite);
    }
    if linalg::is_zero3(&v) {
        return Err(Error::ZeroVector);
    }
    Ok(S::canonical_triple(v))
}

/// True when `a` and `b` are proportional (within `tol` for floats).
fn proportional<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>, tol: &Tolerance) -> bool {
    let c = linalg::cross(a, b);
    let scale = linalg::norm(a) * linalg::norm(b);
    c.iter().all(|x| x.negligible(scale, tol))
}

/// A point `(x:y:z)` of the projective plane.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint<S> {
    coords: Vec3<S>,
}

/// A line `ux + vy + wz = 0` of the projective plane.
#[derive(Debug, Clone, PartialEq)]
pub struct HLine<S> {
    coeffs: Vec3<S>,
}

impl<S: Scalar> HPoint<S> {
    pub fn new(x: S, y: S, z: S) -> Result<Self> {
        Self::from_coords([x, y, z])
    }

    pub fn from_coords(coords: Vec3<S>) -> Result<Self> {
        Ok(HPoint {
            coords: canonical(coords)?,
        })
    }

    /// The finite point `(x, y)`.
    pub fn affine(x: S, y: S) -> Self {
        HPoint {
            coords: S::canonical_triple([x, y, S::one()]),
        }
    }

    pub fn coords(&self) -> &Vec3<S> {
        &self.coords
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[2].negligible(linalg::norm(&self.coords), &Tolerance::STRICT)
    }

    pub fn to_affine(&self) -> Option<(S, S)> {
        if self.coords[2].is_zero() {
            return None;
        }
        let z = self.coords[2].clone();
        Some((self.coords[0].clone() / z.clone(), self.coords[1].clone() / z))
    }

    /// Representative with `z = 1`; `None` at infinity.
    pub fn affine_rep(&self) -> Option<Vec3<S>> {
        self.to_affine().map(|(x, y)| [x, y, S::one()])
    }

    pub fn equivalent(&self, other: &Self, tol: &Tolerance) -> bool {
        proportional(&self.coords, &other.coords, tol)
    }

    pub fn incident(&self, line: &HLine<S>, tol: &Tolerance) -> bool {
        let r = linalg::dot(&self.coords, &line.coeffs);
        r.negligible(linalg::norm(&self.coords) * linalg::norm(&line.coeffs), tol)
    }

    /// The same triple read as a line (the polar with respect to the identity).
    pub fn dual(&self) -> HLine<S> {
        HLine {
            coeffs: self.coords.clone(),
        }
    }

    pub fn to_f64(&self) -> HPoint<f64> {
        HPoint {
            coords: f64::canonical_triple(self.coords.clone().map(|x| x.to_f64())),
        }
    }
}

impl<S: Scalar> HLine<S> {
    pub fn new(u: S, v: S, w: S) -> Result<Self> {
        Self::from_coeffs([u, v, w])
    }

    pub fn from_coeffs(coeffs: Vec3<S>) -> Result<Self> {
        Ok(HLine {
            coeffs: canonical(coeffs)?,
        })
    }

    pub fn at_infinity() -> Self {
        HLine {
            coeffs: [S::zero(), S::zero(), S::one()],
        }
    }

    pub fn coeffs(&self) -> &Vec3<S> {
        &self.coeffs
    }

    pub fn equivalent(&self, other: &Self, tol: &Tolerance) -> bool {
        proportional(&self.coeffs, &other.coeffs, tol)
    }

    pub fn contains(&self, p: &HPoint<S>, tol: &Tolerance) -> bool {
        p.incident(self, tol)
    }

    pub fn dual(&self) -> HPoint<S> {
        HPoint {
            coords: self.coeffs.clone(),
        }
    }

    pub fn to_f64(&self) -> HLine<f64> {
        HLine {
            coeffs: f64::canonical_triple(self.coeffs.clone().map(|x| x.to_f64())),
        }
    }
}

/// The line through two distinct points.
pub fn join<S: Scalar>(p: &HPoint<S>, q: &HPoint<S>) -> Result<HLine<S>> {
    if p.equivalent(q, &Tolerance::STRICT) {
        return Err(Error::CoincidentPoints);
    }
    HLine::from_coeffs(linalg::cross(&p.coords, &q.coords)).map_err(|_| Error::CoincidentPoints)
}

/// The common point of two distinct lines; parallels meet at infinity.
pub fn meet<S: Scalar>(l: &HLine<S>, m: &HLine<S>) -> Result<HPoint<S>> {
    if l.equivalent(m, &Tolerance::STRICT) {
        return Err(Error::CoincidentLines);
    }
    HPoint::from_coords(linalg::cross(&l.coeffs, &m.coeffs)).map_err(|_| Error::CoincidentLines)
}

/// A zero-test outcome together with the residual that decided it.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<S> {
    pub residual: S,
    pub holds: bool,
}

/// `det` of three triples, divided by the product of row norms in float mode.
pub(crate) fn normalized_det3<S: Scalar>(rows: [&Vec3<S>; 3]) -> S {
    let norm: f64 = rows.iter().map(|r| linalg::norm(*r)).product();
    let m = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
    linalg::det3(&m).normalized(norm)
}

fn verdict3<S: Scalar>(rows: [&Vec3<S>; 3], tol: &Tolerance) -> Verdict<S> {
    let residual = normalized_det3(rows);
    let holds = residual.negligible(1.0, tol);
    Verdict { residual, holds }
}

/// Whether three pairwise distinct lines pass through one point.
pub fn concurrent<S: Scalar>(
    l: &HLine<S>,
    m: &HLine<S>,
    n: &HLine<S>,
    tol: &Tolerance,
) -> Result<Verdict<S>> {
    if l.equivalent(m, tol) || l.equivalent(n, tol) || m.equivalent(n, tol) {
        return Err(Error::DuplicateLine);
    }
    Ok(verdict3([&l.coeffs, &m.coeffs, &n.coeffs], tol))
}

/// Whether three pairwise distinct points lie on one line.
pub fn collinear<S: Scalar>(
    p: &HPoint<S>,
    q: &HPoint<S>,
    r: &HPoint<S>,
    tol: &Tolerance,
) -> Result<Verdict<S>> {
    if p.equivalent(q, tol) || p.equivalent(r, tol) || q.equivalent(r, tol) {
        return Err(Error::CoincidentPoints);
    }
    Ok(verdict3([&p.coords, &q.coords, &r.coords], tol))
}

/// An invertible 3×3 matrix acting on the projective plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMap<S> {
    matrix: Mat3<S>,
    // Adjugate; equals the inverse up to scale, which is all a collineation needs.
    inverse: Mat3<S>,
}

impl<S: Scalar> ProjectiveMap<S> {
    pub fn new(matrix: Mat3<S>) -> Result<Self> {
        let det = linalg::det3(&matrix);
        let scale = linalg::frobenius(&matrix).powi(3);
        if det.negligible(scale, &Tolerance::default()) {
            return Err(Error::SingularMap);
        }
        let inverse = linalg::adjugate3(&matrix);
        Ok(ProjectiveMap { matrix, inverse })
    }

    pub fn identity() -> Self {
        let m: Mat3<S> = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
        });
        ProjectiveMap {
            matrix: m.clone(),
            inverse: m,
        }
    }

    pub fn matrix(&self) -> &Mat3<S> {
        &self.matrix
    }

    pub fn inverse(&self) -> ProjectiveMap<S> {
        ProjectiveMap {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn after(&self, first: &ProjectiveMap<S>) -> ProjectiveMap<S> {
        ProjectiveMap {
            matrix: linalg::mat_mul3(&self.matrix, &first.matrix),
            inverse: linalg::mat_mul3(&first.inverse, &self.inverse),
        }
    }

    pub(crate) fn inverse_matrix(&self) -> &Mat3<S> {
        &self.inverse
    }

    pub fn apply<T: Transform<S>>(&self, obj: &T) -> T {
        obj.transformed(self)
    }

    pub fn map_point(&self, p: &HPoint<S>) -> HPoint<S> {
        HPoint::from_coords(linalg::mat_vec3(&self.matrix, &p.coords))
            .expect("invertible map sends nonzero vectors to nonzero vectors")
    }

    pub fn map_line(&self, l: &HLine<S>) -> HLine<S> {
        let inv_t = linalg::transpose3(&self.inverse);
        HLine::from_coeffs(linalg::mat_vec3(&inv_t, &l.coeffs))
            .expect("invertible map sends nonzero vectors to nonzero vectors")
    }
}

/// Objects a collineation can act on.
pub trait Transform<S: Scalar> {
    fn transformed(&self, map: &ProjectiveMap<S>) -> Self;
}

impl<S: Scalar> Transform<S> for HPoint<S> {
    fn transformed(&self, map: &ProjectiveMap<S>) -> Self {
        map.map_point(self)
    }
}

impl<S: Scalar> Transform<S> for HLine<S> {
    fn transformed(&self, map: &ProjectiveMap<S>) -> Self {
        map.map_line(self)
    }
}

/// Matrix sending the standard frame `e1, e2, e3, e1+e2+e3` to `pts`.
fn frame_matrix<S: Scalar>(pts: &[HPoint<S>; 4]) -> Mat3<S> {
    let cols: Mat3<S> = [
        pts[0].coords.clone(),
        pts[1].coords.clone(),
        pts[2].coords.clone(),
    ];
    let m = linalg::transpose3(&cols);
    // Weights λ with Σ λᵢ pᵢ = p₄, up to the common factor det(m).
    let lambda = linalg::mat_vec3(&linalg::adjugate3(&m), &pts[3].coords);
    linalg::transpose3(&std::array::from_fn(|i| linalg::scale3(&lambda[i], &cols[i])))
}

fn in_general_position<S: Scalar>(pts: &[HPoint<S>; 4]) -> bool {
    let tol = Tolerance::default();
    const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    TRIPLES.iter().all(|t| {
        let rows = [&pts[t[0]].coords, &pts[t[1]].coords, &pts[t[2]].coords];
        !normalized_det3(rows).negligible(1.0, &tol)
    })
}

/// The unique collineation sending `src[i]` to `dst[i]` for `i = 0..4`.
pub fn map_from_correspondence<S: Scalar>(
    src: &[HPoint<S>; 4],
    dst: &[HPoint<S>; 4],
) -> Result<ProjectiveMap<S>> {
    if !in_general_position(src) || !in_general_position(dst) {
        return Err(Error::DegenerateQuadruple);
    }
    let from_src = frame_matrix(src);
    let to_dst = frame_matrix(dst);
    ProjectiveMap::new(linalg::mat_mul3(&to_dst, &linalg::adjugate3(&from_src)))
}

//! Conics as symmetric 3×3 matrices.
//!
//! Conconicity of six points is decided by the 6×6 determinant of their
//! Veronese rows `(x², xy, y², xz, yz, z²)`; cotangency of six lines is the
//! same test in the dual plane. Fitting a conic through five points is kept
//! alongside as an independent route to the same answer.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Roots, Vec3};
use crate::projective::{join, meet, normalized_det3, HLine, HPoint, ProjectiveMap, Transform, Verdict};
use crate::scalar::{Scalar, Tolerance};

/// Rank of a conic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankClass {
    /// Rank 3.
    Nondegenerate,
    /// Rank 2: a pair of distinct lines.
    LinePair,
    /// Rank 1: a doubly covered line.
    DoubleLine,
}

impl RankClass {
    pub fn rank(self) -> usize {
        match self {
            RankClass::Nondegenerate => 3,
            RankClass::LinePair => 2,
            RankClass::DoubleLine => 1,
        }
    }
}

/// The zero set of `pᵀ M p` for a symmetric matrix `M`, up to scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Conic<S> {
    m: Mat3<S>,
}

impl<S: Scalar> Conic<S> {
    pub fn from_matrix(m: Mat3<S>) -> Result<Self> {
        for i in 0..3 {
            for j in i + 1..3 {
                if m[i][j] != m[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        if m.iter().all(linalg::is_zero3) {
            return Err(Error::ZeroMatrix);
        }
        Ok(Conic { m })
    }

    /// From the coefficients of `a x² + b xy + c y² + d xz + e yz + f z²`.
    pub fn from_coefficients(k: [S; 6]) -> Result<Self> {
        let two = S::from_i64(2);
        let [a, b, c, d, e, f] = k;
        let h = |x: S| x / two.clone();
        let (b, d, e) = (h(b), h(d), h(e));
        Conic::from_matrix([
            [a, b.clone(), d.clone()],
            [b, c, e.clone()],
            [d, e, f],
        ])
    }

    /// Coefficients in Veronese monomial order `(x², xy, y², xz, yz, z²)`.
    pub fn coefficients(&self) -> [S; 6] {
        let m = &self.m;
        let two = S::from_i64(2);
        [
            m[0][0].clone(),
            two.clone() * m[0][1].clone(),
            m[1][1].clone(),
            two.clone() * m[0][2].clone(),
            two * m[1][2].clone(),
            m[2][2].clone(),
        ]
    }

    /// The doubly covered line `ℓ ℓᵀ`.
    pub fn double_line(l: &HLine<S>) -> Self {
        let c = l.coeffs();
        Conic {
            m: std::array::from_fn(|i| std::array::from_fn(|j| c[i].clone() * c[j].clone())),
        }
    }

    pub fn matrix(&self) -> &Mat3<S> {
        &self.m
    }

    /// `pᵀ M p`.
    pub fn evaluate(&self, p: &HPoint<S>) -> S {
        linalg::bilinear(p.coords(), &self.m, p.coords())
    }

    /// Incidence residual scaled by `‖p‖² ‖M‖`.
    pub fn residual(&self, p: &HPoint<S>) -> S {
        let scale = linalg::norm(p.coords()).powi(2) * linalg::frobenius(&self.m);
        self.evaluate(p).normalized(scale)
    }

    pub fn contains(&self, p: &HPoint<S>, tol: &Tolerance) -> bool {
        self.residual(p).negligible(1.0, tol)
    }

    /// Tangency residual `ℓᵀ adj(M) ℓ`, scaled by `‖ℓ‖² ‖adj M‖`.
    pub fn tangency_residual(&self, l: &HLine<S>) -> S {
        let adj = linalg::adjugate3(&self.m);
        let scale = linalg::norm(l.coeffs()).powi(2) * linalg::frobenius(&adj);
        linalg::bilinear(l.coeffs(), &adj, l.coeffs()).normalized(scale)
    }

    pub fn is_tangent(&self, l: &HLine<S>, tol: &Tolerance) -> bool {
        self.tangency_residual(l).negligible(1.0, tol)
    }

    /// Rank classification; floats use pivots relative to the largest entry.
    pub fn classify(&self, tol: &Tolerance) -> RankClass {
        let rows = self.m.iter().map(|r| r.to_vec()).collect();
        match linalg::rank(rows, tol) {
            3 => RankClass::Nondegenerate,
            2 => RankClass::LinePair,
            _ => RankClass::DoubleLine,
        }
    }

    /// The dual conic (adjugate), whose points are the tangent lines of `self`.
    pub fn dual(&self, tol: &Tolerance) -> Result<Conic<S>> {
        if self.classify(tol) != RankClass::Nondegenerate {
            return Err(Error::DegenerateConic);
        }
        Ok(Conic {
            m: linalg::adjugate3(&self.m),
        })
    }

    /// Equality up to a nonzero scale factor.
    pub fn equivalent(&self, other: &Conic<S>, tol: &Tolerance) -> bool {
        let a: Vec<S> = self.m.iter().flatten().cloned().collect();
        let b: Vec<S> = other.m.iter().flatten().cloned().collect();
        let scale = linalg::norm(&a) * linalg::norm(&b);
        (0..9).all(|i| {
            (i + 1..9).all(|j| {
                (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).negligible(scale, tol)
            })
        })
    }

    pub fn to_f64(&self) -> Conic<f64> {
        Conic {
            m: self.m.clone().map(|r| r.map(|x| x.to_f64())),
        }
    }
}

impl Conic<f64> {
    /// Center and radius when the conic is a real circle.
    pub fn as_circle(&self, tol: &Tolerance) -> Option<(f64, f64, f64)> {
        let m = &self.m;
        let scale = linalg::frobenius(m);
        let a = m[0][0];
        if a.abs() <= tol.eps * scale
            || (m[1][1] - a).abs() > tol.eps * scale
            || m[0][1].abs() > tol.eps * scale
        {
            return None;
        }
        let (cx, cy) = (-m[0][2] / a, -m[1][2] / a);
        let r2 = cx * cx + cy * cy - m[2][2] / a;
        (r2 > 0.0).then(|| (cx, cy, r2.sqrt()))
    }

    /// Center (pole of the line at infinity); `None` for parabolas.
    pub fn center(&self) -> Option<(f64, f64)> {
        let adj = linalg::adjugate3(&self.m);
        let c = [adj[0][2], adj[1][2], adj[2][2]];
        let scale = linalg::norm(&c);
        if c[2].abs() <= 1e-12 * scale {
            return None;
        }
        Some((c[0] / c[2], c[1] / c[2]))
    }
}

impl<S: Scalar> Transform<S> for Conic<S> {
    fn transformed(&self, map: &ProjectiveMap<S>) -> Self {
        let inv = map.inverse_matrix();
        let m = linalg::mat_mul3(&linalg::transpose3(inv), &linalg::mat_mul3(&self.m, inv));
        Conic { m }
    }
}

/// Monomial row `(x², xy, y², xz, yz, z²)`.
pub fn veronese<S: Scalar>(v: &Vec3<S>) -> [S; 6] {
    let [x, y, z] = v.clone();
    [
        x.clone() * x.clone(),
        x.clone() * y.clone(),
        y.clone() * y.clone(),
        x * z.clone(),
        y * z.clone(),
        z.clone() * z,
    ]
}

fn veronese_rows<S: Scalar>(pts: &[&Vec3<S>]) -> Vec<Vec<S>> {
    pts.iter()
        .map(|p| {
            let row = veronese(p);
            if S::EXACT {
                row.to_vec()
            } else {
                let n = linalg::norm(&row);
                row.into_iter().map(|x| x.normalized(n)).collect()
            }
        })
        .collect()
}

/// 6×6 Veronese determinant, normalized by the product of row norms for floats.
pub fn veronese_det<S: Scalar>(pts: [&Vec3<S>; 6]) -> S {
    let norm: f64 = pts.iter().map(|p| linalg::norm(&veronese(p))).product();
    let rows: Vec<Vec<S>> = pts.iter().map(|p| veronese(p).to_vec()).collect();
    linalg::det(rows).normalized(norm)
}

fn fit_vectors<S: Scalar>(pts: &[&Vec3<S>], tol: &Tolerance) -> Result<Conic<S>> {
    let rows = veronese_rows(pts);
    let v = linalg::null_vector(rows, tol).map_err(|nullity| Error::NonUniqueConic { nullity })?;
    let k: [S; 6] = v.try_into().unwrap_or_else(|_| unreachable!("six monomials"));
    Conic::from_coefficients(k)
}

fn pairwise_distinct<T>(items: &[T], same: impl Fn(&T, &T) -> bool) -> bool {
    (0..items.len()).all(|i| (i + 1..items.len()).all(|j| !same(&items[i], &items[j])))
}

/// The conic through five points.
///
/// Three collinear inputs give a degenerate conic (check with
/// [`Conic::classify`]); four or more collinear inputs leave it non-unique.
pub fn conic_through_points<S: Scalar>(pts: &[HPoint<S>; 5], tol: &Tolerance) -> Result<Conic<S>> {
    if !pairwise_distinct(pts, |a, b| a.equivalent(b, tol)) {
        return Err(Error::DuplicatePoints);
    }
    let coords: Vec<&Vec3<S>> = pts.iter().map(HPoint::coords).collect();
    fit_vectors(&coords, tol)
}

/// Outcome of a conconicity or cotangency test.
#[derive(Debug, Clone, PartialEq)]
pub struct ConconicVerdict<S> {
    pub residual: S,
    pub holds: bool,
    /// A conic through all six points (tangent to all six lines for cotangency).
    pub witness: Option<Conic<S>>,
    pub degenerate: bool,
}

const FIVE_OF_SIX: [[usize; 5]; 6] = [
    [0, 1, 2, 3, 4],
    [0, 1, 2, 3, 5],
    [0, 1, 2, 4, 5],
    [0, 1, 3, 4, 5],
    [0, 2, 3, 4, 5],
    [1, 2, 3, 4, 5],
];

/// Witness conic through the six vectors, tolerating repeated entries.
///
/// Tries five-point fits in a fixed order; if every distinct input is on one
/// line the witness is that line doubly covered.
fn witness_through<S: Scalar>(v: [&Vec3<S>; 6], tol: &Tolerance) -> Option<Conic<S>> {
    let mut distinct: Vec<&Vec3<S>> = Vec::new();
    for p in v {
        if !distinct.iter().any(|q| {
            let c = linalg::cross(p, q);
            let scale = linalg::norm(p) * linalg::norm(*q);
            c.iter().all(|x| x.negligible(scale, tol))
        }) {
            distinct.push(p);
        }
    }
    if distinct.len() <= 2 || all_on_one_line(&distinct, tol) {
        let l = if distinct.len() == 1 {
            // Any line through a single point; pick one deterministically.
            let p = distinct[0];
            let axis = (0..3).min_by(|&i, &j| p[i].magnitude().total_cmp(&p[j].magnitude())).unwrap();
            let mut e = [S::zero(), S::zero(), S::zero()];
            e[axis] = S::one();
            linalg::cross(p, &e)
        } else {
            linalg::cross(distinct[0], distinct[1])
        };
        return HLine::from_coeffs(l).ok().map(|l| Conic::double_line(&l));
    }
    let candidates: Vec<Vec<&Vec3<S>>> = if distinct.len() == 6 {
        FIVE_OF_SIX.iter().map(|idx| idx.iter().map(|&i| distinct[i]).collect()).collect()
    } else {
        vec![distinct.clone()]
    };
    for pts in candidates {
        if pts.len() != 5 {
            continue;
        }
        if let Ok(c) = fit_vectors(&pts, tol) {
            if v.iter().all(|p| {
                let scale = linalg::norm(*p).powi(2) * linalg::frobenius(&c.m);
                linalg::bilinear(p, &c.m, p).negligible(scale, tol)
            }) {
                return Some(c);
            }
        }
    }
    None
}

fn all_on_one_line<S: Scalar>(pts: &[&Vec3<S>], tol: &Tolerance) -> bool {
    pts.len() < 3
        || pts[2..]
            .iter()
            .all(|p| normalized_det3([pts[0], pts[1], *p]).negligible(1.0, tol))
}

/// Conconicity of six vectors read as points, with repeats allowed.
fn conconic_vectors<S: Scalar>(v: [&Vec3<S>; 6], tol: &Tolerance) -> ConconicVerdict<S> {
    let residual = veronese_det(v);
    let holds = residual.negligible(1.0, tol);
    let witness = if holds { witness_through(v, tol) } else { None };
    let degenerate = holds
        && witness
            .as_ref()
            .is_none_or(|c| c.classify(tol) != RankClass::Nondegenerate);
    ConconicVerdict {
        residual,
        holds,
        witness,
        degenerate,
    }
}

/// Whether six pairwise distinct points lie on one conic.
pub fn conconic<S: Scalar>(pts: &[HPoint<S>; 6], tol: &Tolerance) -> Result<ConconicVerdict<S>> {
    if !pairwise_distinct(pts, |a, b| a.equivalent(b, tol)) {
        return Err(Error::DuplicatePoints);
    }
    Ok(conconic_multiset(pts, tol))
}

/// [`conconic`] without the distinctness precondition.
///
/// Six points with a repeat always lie on some conic; the verdict then holds
/// and is flagged degenerate. When the distinct points are collinear the
/// witness is the doubly covered line through them.
pub fn conconic_multiset<S: Scalar>(pts: &[HPoint<S>; 6], tol: &Tolerance) -> ConconicVerdict<S> {
    let v = std::array::from_fn(|i| pts[i].coords());
    let mut verdict = conconic_vectors(v, tol);
    if !pairwise_distinct(pts, |a, b| a.equivalent(b, tol)) {
        verdict.degenerate = true;
    }
    verdict
}

fn dual_witness<S: Scalar>(mut verdict: ConconicVerdict<S>, tol: &Tolerance) -> ConconicVerdict<S> {
    // Point conic of a nondegenerate dual fit is its adjugate.
    verdict.witness = verdict.witness.and_then(|w| w.dual(tol).ok());
    verdict.degenerate = verdict.degenerate || verdict.witness.is_none();
    verdict
}

/// Whether six pairwise distinct lines touch one conic.
pub fn cotangent<S: Scalar>(lines: &[HLine<S>; 6], tol: &Tolerance) -> Result<ConconicVerdict<S>> {
    if !pairwise_distinct(lines, |a, b| a.equivalent(b, tol)) {
        return Err(Error::DuplicateLines);
    }
    Ok(cotangent_multiset(lines, tol))
}

/// [`cotangent`] without the distinctness precondition.
pub fn cotangent_multiset<S: Scalar>(lines: &[HLine<S>; 6], tol: &Tolerance) -> ConconicVerdict<S> {
    let v = std::array::from_fn(|i| lines[i].coeffs());
    let mut verdict = dual_witness(conconic_vectors(v, tol), tol);
    if !pairwise_distinct(lines, |a, b| a.equivalent(b, tol)) {
        verdict.degenerate = true;
    }
    verdict
}

/// The conic tangent to five lines (adjugate of the dual fit).
pub fn conic_tangent_to_lines<S: Scalar>(lines: &[HLine<S>; 5], tol: &Tolerance) -> Result<Conic<S>> {
    if !pairwise_distinct(lines, |a, b| a.equivalent(b, tol)) {
        return Err(Error::DuplicateLines);
    }
    let coords: Vec<&Vec3<S>> = lines.iter().map(HLine::coeffs).collect();
    fit_vectors(&coords, tol)?.dual(tol)
}

/// Two distinct points spanning `l`.
fn span_points<S: Scalar>(l: &Vec3<S>) -> (Vec3<S>, Vec3<S>) {
    let k = (0..3)
        .min_by(|&i, &j| l[i].magnitude().total_cmp(&l[j].magnitude()))
        .unwrap();
    let mut e = [S::zero(), S::zero(), S::zero()];
    e[k] = S::one();
    let p = S::canonical_triple(linalg::cross(l, &e));
    let q = S::canonical_triple(linalg::cross(l, &p));
    (p, q)
}

fn intersect_vectors<S: Scalar>(m: &Mat3<S>, l: &Vec3<S>, tol: &Tolerance) -> Result<Roots<Vec3<S>>> {
    let (p, q) = span_points(l);
    let a = linalg::bilinear(&p, m, &p);
    let b = linalg::bilinear(&p, m, &q);
    let c = linalg::bilinear(&q, m, &q);
    let scale = linalg::frobenius(m);
    if [&a, &b, &c].iter().all(|x| x.negligible(scale, tol)) {
        return Err(Error::LineOnConic);
    }
    let roots = linalg::binary_quadratic(&a, &b, &c, tol)?;
    Ok(match roots {
        Roots::None => Roots::None,
        Roots::Double((s, t)) => Roots::Double(linalg::add3(&linalg::scale3(&s, &p), &linalg::scale3(&t, &q))),
        Roots::Pair((s1, t1), (s2, t2)) => Roots::Pair(
            linalg::add3(&linalg::scale3(&s1, &p), &linalg::scale3(&t1, &q)),
            linalg::add3(&linalg::scale3(&s2, &p), &linalg::scale3(&t2, &q)),
        ),
    })
}

/// Real intersection points of a line with a conic.
///
/// A tangent line yields [`Roots::Double`]. Exact backends report
/// [`Error::IrrationalResult`] when the points are not rational.
pub fn intersect_line<S: Scalar>(c: &Conic<S>, l: &HLine<S>, tol: &Tolerance) -> Result<Roots<HPoint<S>>> {
    intersect_vectors(&c.m, l.coeffs(), tol)?.try_map(HPoint::from_coords)
}

/// Real tangent lines to a nondegenerate conic through `p`:
/// two from outside, one (the tangent at `p`) on the conic, none from inside.
pub fn tangent_lines_from<S: Scalar>(c: &Conic<S>, p: &HPoint<S>, tol: &Tolerance) -> Result<Roots<HLine<S>>> {
    let dual = c.dual(tol)?;
    // Lines through p form the line p in the dual plane.
    intersect_vectors(&dual.m, p.coords(), tol)?.try_map(HLine::from_coeffs)
}

/// Pascal line test: meets of opposite sides of the hexagon `P1..P6`.
///
/// Coincident meets count as collinear, so the residual is the raw
/// (normalized) determinant without distinctness checks.
pub fn pascal_collinearity<S: Scalar>(hex: &[HPoint<S>; 6], tol: &Tolerance) -> Result<Verdict<S>> {
    let side = |i: usize| join(&hex[i], &hex[(i + 1) % 6]);
    let mut meets = Vec::with_capacity(3);
    for i in 0..3 {
        meets.push(meet(&side(i)?, &side(i + 3)?)?);
    }
    let residual = normalized_det3([meets[0].coords(), meets[1].coords(), meets[2].coords()]);
    let holds = residual.negligible(1.0, tol);
    Ok(Verdict { residual, holds })
}

/// Brianchon point test: diagonals joining opposite vertices of the
/// hexagon with sides `l1..l6`.
pub fn brianchon_concurrency<S: Scalar>(hex: &[HLine<S>; 6], tol: &Tolerance) -> Result<Verdict<S>> {
    let vertex = |i: usize| meet(&hex[i], &hex[(i + 1) % 6]);
    let mut diagonals = Vec::with_capacity(3);
    for i in 0..3 {
        diagonals.push(join(&vertex(i)?, &vertex(i + 3)?)?);
    }
    let residual = normalized_det3([diagonals[0].coeffs(), diagonals[1].coeffs(), diagonals[2].coeffs()]);
    let holds = residual.negligible(1.0, tol);
    Ok(Verdict { residual, holds })
}

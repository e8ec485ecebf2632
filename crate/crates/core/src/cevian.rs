//! Two triples of cevians of a triangle and the four equivalent conditions
//! relating them.
//!
//! Labeling: `AA1, BB1, CC1` is the first triple and `AA2, BB2, CC2` the
//! second. Inner points are `X = BB ∩ CC`, `Y = AA ∩ CC`, `Z = AA ∩ BB` within
//! a triple; cross points are `U1 = BB1 ∩ CC2`, `V1 = CC1 ∩ AA2`,
//! `W1 = AA1 ∩ BB2`. The conditions are
//!
//! 1. the six feet are conconic (`outer6`),
//! 2. the six inner points are conconic (`inner6`),
//! 3. the six cevians touch one conic (`tangent6`),
//! 4. `AU1`, `BV1`, `CW1` are concurrent (`concurrent`).

use crate::conic::{conconic_multiset, cotangent_multiset, veronese, ConconicVerdict};
use crate::error::{Error, Result};
use crate::linalg::{self, Roots, Vec3};
use crate::projective::{join, map_from_correspondence, meet, normalized_det3, HLine, HPoint, ProjectiveMap};
use crate::scalar::{Scalar, Tolerance};

/// Side line hosting a foot: `BC` for feet of cevians from `A`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    BC,
    CA,
    AB,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::BC, Side::CA, Side::AB];
}

/// Position of a foot in a [`CevianFeet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FootSlot {
    A1,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl FootSlot {
    pub const ALL: [FootSlot; 6] = [
        FootSlot::A1,
        FootSlot::A2,
        FootSlot::B1,
        FootSlot::B2,
        FootSlot::C1,
        FootSlot::C2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn side(self) -> Side {
        match self {
            FootSlot::A1 | FootSlot::A2 => Side::BC,
            FootSlot::B1 | FootSlot::B2 => Side::CA,
            FootSlot::C1 | FootSlot::C2 => Side::AB,
        }
    }

    pub fn name(self) -> &'static str {
        ["A1", "A2", "B1", "B2", "C1", "C2"][self.index()]
    }

    pub fn parse(name: &str) -> Option<FootSlot> {
        FootSlot::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }
}

/// A nondegenerate triangle `ABC`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle<S> {
    vertices: [HPoint<S>; 3],
}

impl<S: Scalar> Triangle<S> {
    pub fn new(a: HPoint<S>, b: HPoint<S>, c: HPoint<S>) -> Result<Self> {
        let det = normalized_det3([a.coords(), b.coords(), c.coords()]);
        if det.negligible(1.0, &Tolerance::default()) {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle { vertices: [a, b, c] })
    }

    pub fn from_affine(pts: [(S, S); 3]) -> Result<Self> {
        let [a, b, c] = pts.map(|(x, y)| HPoint::affine(x, y));
        Triangle::new(a, b, c)
    }

    pub fn a(&self) -> &HPoint<S> {
        &self.vertices[0]
    }
    pub fn b(&self) -> &HPoint<S> {
        &self.vertices[1]
    }
    pub fn c(&self) -> &HPoint<S> {
        &self.vertices[2]
    }
    pub fn vertices(&self) -> &[HPoint<S>; 3] {
        &self.vertices
    }

    /// Endpoints of a side in cyclic order: `(B, C)`, `(C, A)`, `(A, B)`.
    pub fn endpoints(&self, side: Side) -> (&HPoint<S>, &HPoint<S>) {
        let [a, b, c] = &self.vertices;
        match side {
            Side::BC => (b, c),
            Side::CA => (c, a),
            Side::AB => (a, b),
        }
    }

    pub fn opposite(&self, side: Side) -> &HPoint<S> {
        match side {
            Side::BC => self.a(),
            Side::CA => self.b(),
            Side::AB => self.c(),
        }
    }

    pub fn side_line(&self, side: Side) -> HLine<S> {
        let (p, q) = self.endpoints(side);
        join(p, q).expect("triangle vertices are distinct")
    }

    fn affine_endpoints(&self, side: Side) -> Result<(Vec3<S>, Vec3<S>)> {
        let (p, q) = self.endpoints(side);
        Ok((
            p.affine_rep().ok_or(Error::NonFiniteVertex)?,
            q.affine_rep().ok_or(Error::NonFiniteVertex)?,
        ))
    }

    /// `P + t (Q - P)` on the side with endpoints `(P, Q)`.
    pub fn foot_at(&self, side: Side, t: S) -> Result<HPoint<S>> {
        let (p, q) = self.affine_endpoints(side)?;
        let one_minus = S::one() - t.clone();
        HPoint::from_coords(linalg::add3(&linalg::scale3(&one_minus, &p), &linalg::scale3(&t, &q)))
    }

    /// Squared side lengths `(a², b², c²)` opposite `A`, `B`, `C`.
    pub fn squared_sides(&self) -> Result<[S; 3]> {
        let pts = self
            .vertices
            .iter()
            .map(|v| v.to_affine().ok_or(Error::NonFiniteVertex))
            .collect::<Result<Vec<_>>>()?;
        let d2 = |i: usize, j: usize| {
            let dx = pts[i].0.clone() - pts[j].0.clone();
            let dy = pts[i].1.clone() - pts[j].1.clone();
            dx.clone() * dx + dy.clone() * dy
        };
        Ok([d2(1, 2), d2(2, 0), d2(0, 1)])
    }

    /// Weights `(u, v)` with `foot ~ u P + v Q` over the side's affine endpoints.
    pub fn side_weights(&self, side: Side, foot: &HPoint<S>) -> Result<(S, S)> {
        let (p, q) = self.affine_endpoints(side)?;
        let n = linalg::cross(&p, &q);
        let f = foot.coords();
        Ok((
            linalg::dot(&linalg::cross(f, &q), &n),
            linalg::dot(&linalg::cross(&p, f), &n),
        ))
    }

    pub fn point_from_weights(&self, side: Side, u: &S, v: &S) -> Result<HPoint<S>> {
        let (p, q) = self.affine_endpoints(side)?;
        HPoint::from_coords(linalg::add3(&linalg::scale3(u, &p), &linalg::scale3(v, &q)))
    }

    fn check_foot(&self, side: Side, foot: &HPoint<S>, slot: &'static str, tol: &Tolerance) -> Result<()> {
        let (p, q) = self.endpoints(side);
        if !self.side_line(side).contains(foot, tol) || foot.equivalent(p, tol) || foot.equivalent(q, tol) {
            return Err(Error::FootOffSide { slot });
        }
        Ok(())
    }
}

/// Feet of one triple of cevians: on `BC`, `CA` and `AB`.
#[derive(Debug, Clone, PartialEq)]
pub struct CevianTriple<S> {
    pub a: HPoint<S>,
    pub b: HPoint<S>,
    pub c: HPoint<S>,
}

impl<S: Scalar> CevianTriple<S> {
    /// Feet at side parameters `t` (see [`Triangle::foot_at`]).
    pub fn from_parameters(tri: &Triangle<S>, t: [S; 3]) -> Result<Self> {
        let [ta, tb, tc] = t;
        Ok(CevianTriple {
            a: tri.foot_at(Side::BC, ta)?,
            b: tri.foot_at(Side::CA, tb)?,
            c: tri.foot_at(Side::AB, tc)?,
        })
    }

    pub fn get(&self, side: Side) -> &HPoint<S> {
        match side {
            Side::BC => &self.a,
            Side::CA => &self.b,
            Side::AB => &self.c,
        }
    }

    fn validate(&self, tri: &Triangle<S>, names: [&'static str; 3], tol: &Tolerance) -> Result<()> {
        for (side, name) in Side::ALL.into_iter().zip(names) {
            tri.check_foot(side, self.get(side), name, tol)?;
        }
        Ok(())
    }

    fn map_sides(&self, mut f: impl FnMut(Side, &HPoint<S>) -> Result<HPoint<S>>) -> Result<Self> {
        Ok(CevianTriple {
            a: f(Side::BC, &self.a)?,
            b: f(Side::CA, &self.b)?,
            c: f(Side::AB, &self.c)?,
        })
    }
}

/// Six cevian feet `A1, A2` on `BC`, `B1, B2` on `CA`, `C1, C2` on `AB`.
#[derive(Debug, Clone, PartialEq)]
pub struct CevianFeet<S> {
    feet: [HPoint<S>; 6],
}

impl<S: Scalar> CevianFeet<S> {
    /// Feet in slot order `A1, A2, B1, B2, C1, C2`.
    pub fn new(tri: &Triangle<S>, feet: [HPoint<S>; 6], tol: &Tolerance) -> Result<Self> {
        for slot in FootSlot::ALL {
            tri.check_foot(slot.side(), &feet[slot.index()], slot.name(), tol)?;
        }
        Ok(CevianFeet { feet })
    }

    pub fn from_triples(tri: &Triangle<S>, first: &CevianTriple<S>, second: &CevianTriple<S>, tol: &Tolerance) -> Result<Self> {
        CevianFeet::new(
            tri,
            [
                first.a.clone(),
                second.a.clone(),
                first.b.clone(),
                second.b.clone(),
                first.c.clone(),
                second.c.clone(),
            ],
            tol,
        )
    }

    /// Feet from side parameters ordered `A1, B1, C1, A2, B2, C2`, first
    /// triple then second (see [`Triangle::foot_at`]).
    pub fn from_parameters(tri: &Triangle<S>, t: [S; 6], tol: &Tolerance) -> Result<Self> {
        let [a1, b1, c1, a2, b2, c2] = t;
        let first = CevianTriple::from_parameters(tri, [a1, b1, c1])?;
        let second = CevianTriple::from_parameters(tri, [a2, b2, c2])?;
        CevianFeet::from_triples(tri, &first, &second, tol)
    }

    pub fn get(&self, slot: FootSlot) -> &HPoint<S> {
        &self.feet[slot.index()]
    }

    pub fn all(&self) -> &[HPoint<S>; 6] {
        &self.feet
    }

    pub fn first(&self) -> CevianTriple<S> {
        CevianTriple {
            a: self.feet[0].clone(),
            b: self.feet[2].clone(),
            c: self.feet[4].clone(),
        }
    }

    pub fn second(&self) -> CevianTriple<S> {
        CevianTriple {
            a: self.feet[1].clone(),
            b: self.feet[3].clone(),
            c: self.feet[5].clone(),
        }
    }

    pub fn to_f64(&self) -> CevianFeet<f64> {
        CevianFeet {
            feet: std::array::from_fn(|i| self.feet[i].to_f64()),
        }
    }
}

/// Five known feet and one unknown slot.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFeet<S> {
    slots: [Option<HPoint<S>>; 6],
}

impl<S: Scalar> PartialFeet<S> {
    pub fn new(slots: [Option<HPoint<S>>; 6]) -> Self {
        PartialFeet { slots }
    }

    pub fn from_feet(feet: &CevianFeet<S>) -> Self {
        PartialFeet {
            slots: std::array::from_fn(|i| Some(feet.feet[i].clone())),
        }
    }

    pub fn without(mut self, slot: FootSlot) -> Self {
        self.slots[slot.index()] = None;
        self
    }

    pub fn missing(&self) -> Result<FootSlot> {
        let mut it = FootSlot::ALL.into_iter().filter(|s| self.slots[s.index()].is_none());
        match (it.next(), it.next()) {
            (Some(s), None) => Ok(s),
            _ => Err(Error::UnknownFootCount),
        }
    }

    pub fn complete(&self, tri: &Triangle<S>, foot: HPoint<S>, tol: &Tolerance) -> Result<CevianFeet<S>> {
        let slot = self.missing()?;
        let mut feet: Vec<HPoint<S>> = Vec::with_capacity(6);
        for s in FootSlot::ALL {
            feet.push(if s == slot { foot.clone() } else { self.slots[s.index()].clone().unwrap() });
        }
        CevianFeet::new(tri, feet.try_into().unwrap_or_else(|_| unreachable!()), tol)
    }
}

/// The full construction: triangle, feet, cevians, inner and cross points.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem1Config<S> {
    triangle: Triangle<S>,
    feet: CevianFeet<S>,
    cevians: [HLine<S>; 6],
    inner: [HPoint<S>; 6],
    cross: [HPoint<S>; 3],
}

impl<S: Scalar> Theorem1Config<S> {
    pub fn triangle(&self) -> &Triangle<S> {
        &self.triangle
    }
    pub fn feet(&self) -> &CevianFeet<S> {
        &self.feet
    }
    /// `AA1, AA2, BB1, BB2, CC1, CC2`.
    pub fn cevians(&self) -> &[HLine<S>; 6] {
        &self.cevians
    }
    pub fn cevian(&self, slot: FootSlot) -> &HLine<S> {
        &self.cevians[slot.index()]
    }
    /// `X1, Y1, Z1, X2, Y2, Z2`.
    pub fn inner_points(&self) -> &[HPoint<S>; 6] {
        &self.inner
    }
    pub fn x1(&self) -> &HPoint<S> {
        &self.inner[0]
    }
    pub fn y1(&self) -> &HPoint<S> {
        &self.inner[1]
    }
    pub fn z1(&self) -> &HPoint<S> {
        &self.inner[2]
    }
    pub fn x2(&self) -> &HPoint<S> {
        &self.inner[3]
    }
    pub fn y2(&self) -> &HPoint<S> {
        &self.inner[4]
    }
    pub fn z2(&self) -> &HPoint<S> {
        &self.inner[5]
    }
    /// `U1, V1, W1`.
    pub fn cross_points(&self) -> &[HPoint<S>; 3] {
        &self.cross
    }
    pub fn u1(&self) -> &HPoint<S> {
        &self.cross[0]
    }
    pub fn v1(&self) -> &HPoint<S> {
        &self.cross[1]
    }
    pub fn w1(&self) -> &HPoint<S> {
        &self.cross[2]
    }

    /// `AU1, BV1, CW1`.
    pub fn concurrency_lines(&self) -> Result<[HLine<S>; 3]> {
        let [a, b, c] = self.triangle.vertices();
        Ok([join(a, self.u1())?, join(b, self.v1())?, join(c, self.w1())?])
    }
}

pub fn build_config<S: Scalar>(tri: &Triangle<S>, feet: &CevianFeet<S>) -> Result<Theorem1Config<S>> {
    let cevians: Vec<HLine<S>> = FootSlot::ALL
        .iter()
        .map(|&slot| {
            let vertex = tri.opposite(slot.side());
            join(vertex, feet.get(slot)).map_err(|_| Error::FootOffSide { slot: slot.name() })
        })
        .collect::<Result<_>>()?;
    let cevians: [HLine<S>; 6] = cevians.try_into().unwrap_or_else(|_| unreachable!());
    let m = |i: usize, j: usize| meet(&cevians[i], &cevians[j]).map_err(|_| Error::CoincidentCevians);
    // Slot indices: AA1=0 AA2=1 BB1=2 BB2=3 CC1=4 CC2=5.
    let inner = [m(2, 4)?, m(0, 4)?, m(0, 2)?, m(3, 5)?, m(1, 5)?, m(1, 3)?];
    let cross = [m(2, 5)?, m(4, 1)?, m(0, 3)?];
    Ok(Theorem1Config {
        triangle: tri.clone(),
        feet: feet.clone(),
        cevians,
        inner,
        cross,
    })
}

/// The four conditions evaluated independently.
#[derive(Debug, Clone, PartialEq)]
pub struct Conditions<S> {
    pub outer6: ConconicVerdict<S>,
    pub inner6: ConconicVerdict<S>,
    pub tangent6: ConconicVerdict<S>,
    pub concurrent: ConconicVerdict<S>,
}

impl<S: Scalar> Conditions<S> {
    pub fn holds(&self) -> [bool; 4] {
        [self.outer6.holds, self.inner6.holds, self.tangent6.holds, self.concurrent.holds]
    }

    pub fn agree(&self) -> bool {
        let h = self.holds();
        h.iter().all(|&x| x == h[0])
    }

    /// Agreement after setting aside verdicts that hold only because of
    /// repeated points or lines (for instance `X1 = Y1 = Z1` when the first
    /// triple is concurrent).
    pub fn consistent(&self) -> bool {
        let informative: Vec<bool> = self
            .named()
            .iter()
            .filter(|(_, v)| !(v.holds && v.degenerate))
            .map(|(_, v)| v.holds)
            .collect();
        informative.iter().all(|&x| x == informative[0]) || informative.is_empty()
    }

    pub fn all_hold(&self) -> bool {
        self.holds().iter().all(|&x| x)
    }

    pub fn named(&self) -> [(&'static str, &ConconicVerdict<S>); 4] {
        [
            ("outer6", &self.outer6),
            ("inner6", &self.inner6),
            ("tangent6", &self.tangent6),
            ("concurrent", &self.concurrent),
        ]
    }
}

/// Evaluates all four conditions without cross-checking them.
///
/// Repeated feet or inner points are allowed and flagged `degenerate`.
pub fn evaluate_conditions<S: Scalar>(cfg: &Theorem1Config<S>, tol: &Tolerance) -> Result<Conditions<S>> {
    let f = cfg.feet.all();
    let outer = [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone(), f[4].clone(), f[5].clone()];
    let i = &cfg.inner;
    let inner = [i[0].clone(), i[3].clone(), i[1].clone(), i[4].clone(), i[2].clone(), i[5].clone()];
    let [l, m, n] = cfg.concurrency_lines()?;
    let residual = normalized_det3([l.coeffs(), m.coeffs(), n.coeffs()]);
    let holds = residual.negligible(1.0, tol);
    Ok(Conditions {
        outer6: conconic_multiset(&outer, tol),
        inner6: conconic_multiset(&inner, tol),
        tangent6: cotangent_multiset(&cfg.cevians, tol),
        concurrent: ConconicVerdict {
            residual,
            holds,
            witness: None,
            degenerate: false,
        },
    })
}

/// Evaluates the four conditions; exact backends must find them
/// [consistent](Conditions::consistent).
pub fn check_conditions<S: Scalar>(cfg: &Theorem1Config<S>, tol: &Tolerance) -> Result<Conditions<S>> {
    let c = evaluate_conditions(cfg, tol)?;
    if S::EXACT && !c.consistent() {
        let [outer6, inner6, tangent6, concurrent] = c.holds();
        return Err(Error::InconsistentVerdicts {
            outer6,
            inner6,
            tangent6,
            concurrent,
        });
    }
    Ok(c)
}

/// Isogonal partner triple: on `BC`, `(0 : y : z) ↦ (0 : b² z : c² y)`,
/// cyclically on the other sides.
pub fn isogonal_feet<S: Scalar>(tri: &Triangle<S>, triple: &CevianTriple<S>) -> Result<CevianTriple<S>> {
    triple.validate(tri, ["A", "B", "C"], &Tolerance::default())?;
    let sq = tri.squared_sides()?;
    triple.map_sides(|side, foot| {
        let (u, v) = tri.side_weights(side, foot)?;
        // Squared lengths of the sides opposite the endpoints P and Q.
        let (sp, sq_) = match side {
            Side::BC => (&sq[1], &sq[2]),
            Side::CA => (&sq[2], &sq[0]),
            Side::AB => (&sq[0], &sq[1]),
        };
        tri.point_from_weights(side, &(sp.clone() * v), &(sq_.clone() * u))
    })
}

/// Isotomic partner triple: each foot reflected in its side's midpoint.
pub fn isotomic_feet<S: Scalar>(tri: &Triangle<S>, triple: &CevianTriple<S>) -> Result<CevianTriple<S>> {
    triple.validate(tri, ["A", "B", "C"], &Tolerance::default())?;
    triple.map_sides(|side, foot| {
        let (u, v) = tri.side_weights(side, foot)?;
        tri.point_from_weights(side, &v, &u)
    })
}

/// Feet of the cevians through `p`.
pub fn cevians_through_point<S: Scalar>(tri: &Triangle<S>, p: &HPoint<S>, tol: &Tolerance) -> Result<CevianTriple<S>> {
    if tri.vertices().iter().any(|v| v.equivalent(p, tol)) {
        return Err(Error::PointAtVertex);
    }
    if Side::ALL.iter().any(|&s| tri.side_line(s).contains(p, tol)) {
        return Err(Error::PointOnSide);
    }
    let foot = |side: Side| meet(&join(tri.opposite(side), p)?, &tri.side_line(side));
    Ok(CevianTriple {
        a: foot(Side::BC)?,
        b: foot(Side::CA)?,
        c: foot(Side::AB)?,
    })
}

fn known_feet<S: Scalar>(partial: &PartialFeet<S>) -> Vec<(FootSlot, &HPoint<S>)> {
    FootSlot::ALL
        .iter()
        .filter_map(|&s| partial.slots[s.index()].as_ref().map(|p| (s, p)))
        .collect()
}

/// Candidate positions of the unknown foot making the six feet conconic.
///
/// The foot is parametrized as `s P + t Q` over its side's endpoints, which
/// makes the Veronese determinant a binary quadratic in `(s, t)`. Roots at a
/// vertex are dropped. One root is usually the other foot already on that
/// side, since a conic meets a line twice.
pub fn solve_sixth_foot<S: Scalar>(
    tri: &Triangle<S>,
    partial: &PartialFeet<S>,
    tol: &Tolerance,
) -> Result<Vec<HPoint<S>>> {
    let slot = partial.missing()?;
    let (p, q) = tri.affine_endpoints(slot.side())?;
    let known: Vec<Vec<S>> = known_feet(partial).iter().map(|(_, f)| veronese(f.coords()).to_vec()).collect();
    let vp = veronese(&p);
    let vq = veronese(&q);
    let vpq = veronese(&linalg::add3(&p, &q));
    let mixed: Vec<S> = (0..6).map(|i| vpq[i].clone() - vp[i].clone() - vq[i].clone()).collect();
    let with_row = |row: Vec<S>| {
        let mut rows = known.clone();
        rows.push(row);
        linalg::det(rows)
    };
    let norm = known.iter().map(|r| linalg::norm(r)).product::<f64>()
        * linalg::norm(&vp).max(linalg::norm(&vq)).max(linalg::norm(&mixed));
    let a = with_row(vp.to_vec()).normalized(norm);
    let b = (with_row(mixed) / S::from_i64(2)).normalized(norm);
    let c = with_row(vq.to_vec()).normalized(norm);
    if [&a, &b, &c].iter().all(|x| x.negligible(1.0, tol)) {
        return Err(Error::SideOnConic);
    }
    let roots = match linalg::binary_quadratic(&a, &b, &c, tol)? {
        Roots::None => return Err(Error::NoRealSolution),
        r => r.into_vec(),
    };
    let (vp_pt, vq_pt) = tri.endpoints(slot.side());
    let mut out: Vec<HPoint<S>> = Vec::new();
    for (s, t) in roots {
        let foot = HPoint::from_coords(linalg::add3(&linalg::scale3(&s, &p), &linalg::scale3(&t, &q)))?;
        if foot.equivalent(vp_pt, tol) || foot.equivalent(vq_pt, tol) || out.iter().any(|f| f.equivalent(&foot, tol)) {
            continue;
        }
        out.push(foot);
    }
    Ok(out)
}

/// Raw concurrency determinant of `AU1, BV1, CW1` from unnormalized feet.
/// Linear in each foot vector.
fn concurrency_functional<S: Scalar>(tri: &Triangle<S>, feet: &[Vec3<S>; 6]) -> S {
    let [a, b, c] = tri.vertices().each_ref().map(|v| v.coords().clone());
    let cev = |slot: FootSlot| {
        let vertex = match slot.side() {
            Side::BC => &a,
            Side::CA => &b,
            Side::AB => &c,
        };
        linalg::cross(vertex, &feet[slot.index()])
    };
    use FootSlot::*;
    let u1 = linalg::cross(&cev(B1), &cev(C2));
    let v1 = linalg::cross(&cev(C1), &cev(A2));
    let w1 = linalg::cross(&cev(A1), &cev(B2));
    linalg::det3(&[linalg::cross(&a, &u1), linalg::cross(&b, &v1), linalg::cross(&c, &w1)])
}

/// The unique position of the unknown foot that makes `AU1, BV1, CW1`
/// concurrent. Each foot enters exactly one of `U1, V1, W1`, so the
/// concurrency determinant is linear along the side.
pub fn solve_concurrency_foot<S: Scalar>(tri: &Triangle<S>, partial: &PartialFeet<S>) -> Result<HPoint<S>> {
    let slot = partial.missing()?;
    let (p, q) = tri.affine_endpoints(slot.side())?;
    let feet_with = |x: &Vec3<S>| -> [Vec3<S>; 6] {
        std::array::from_fn(|i| match &partial.slots[i] {
            Some(f) => f.coords().clone(),
            None => x.clone(),
        })
    };
    let alpha = concurrency_functional(tri, &feet_with(&p));
    let beta = concurrency_functional(tri, &feet_with(&q));
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::SideOnConic);
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::SolutionAtVertex);
    }
    HPoint::from_coords(linalg::sub3(&linalg::scale3(&beta, &p), &linalg::scale3(&alpha, &q)))
}

/// Coordinates of the normalizing chart: `BC` sent to the line at infinity,
/// `A` to the origin, `AC` to the x-axis and `AB` to the y-axis, scaled so
/// that `B2 = (1, 0)` and `C1 = (0, 1)`.
///
/// Coordinates are signed: `B1 = (b1, 0)`, `C2 = (0, c2)`,
/// `P = AB ∩ A2B1 = (0, p)`, `Q = AC ∩ A1C2 = (q, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofChart<S> {
    pub b1: S,
    pub c2: S,
    pub p: S,
    pub q: S,
    pub map: ProjectiveMap<S>,
}

impl<S: Scalar> ProofChart<S> {
    pub fn u1(&self) -> (S, S) {
        (self.b1.clone(), self.c2.clone())
    }

    /// `V1 = (-b1/p, 1)`.
    pub fn v1(&self) -> (S, S) {
        (-self.b1.clone() / self.p.clone(), S::one())
    }

    /// `W1 = (1, -c2/q)`.
    pub fn w1(&self) -> (S, S) {
        (S::one(), -self.c2.clone() / self.q.clone())
    }

    /// `O = BV1 ∩ CW1 = (-b1/p, -c2/q)`.
    pub fn o(&self) -> (S, S) {
        (-self.b1.clone() / self.p.clone(), -self.c2.clone() / self.q.clone())
    }

    /// Oriented area `U1 × O` in the chart; zero exactly when `O` is on `AU1`.
    pub fn concurrency_defect(&self) -> S {
        let (ux, uy) = self.u1();
        let (ox, oy) = self.o();
        ux * oy - uy * ox
    }

    pub fn criterion_holds(&self, tol: &Tolerance) -> bool {
        let scale = self.p.magnitude().max(self.q.magnitude());
        (self.p.clone() - self.q.clone()).negligible(scale, tol)
    }

    /// Affine chart coordinates of a point; `None` on `BC`.
    pub fn chart_coords(&self, pt: &HPoint<S>) -> Option<(S, S)> {
        self.map.map_point(pt).to_affine()
    }
}

pub fn to_chart<S: Scalar>(cfg: &Theorem1Config<S>) -> Result<ProofChart<S>> {
    let tri = &cfg.triangle;
    let [a, b, c] = tri.vertices();
    let sum = linalg::add3(&linalg::add3(a.coords(), b.coords()), c.coords());
    let g = HPoint::from_coords(sum)?;
    let e = |x: i64, y: i64, z: i64| HPoint::new(S::from_i64(x), S::from_i64(y), S::from_i64(z));
    let frame = map_from_correspondence(
        &[a.clone(), b.clone(), c.clone(), g],
        &[e(0, 0, 1)?, e(0, 1, 0)?, e(1, 0, 0)?, e(1, 1, 1)?],
    )?;
    let feet = cfg.feet();
    let x_of = |p: &HPoint<S>| {
        let v = frame.map_point(p);
        v.coords()[0].clone() / v.coords()[2].clone()
    };
    let y_of = |p: &HPoint<S>| {
        let v = frame.map_point(p);
        v.coords()[1].clone() / v.coords()[2].clone()
    };
    let sx = x_of(feet.get(FootSlot::B2));
    let sy = y_of(feet.get(FootSlot::C1));
    let z = S::zero();
    let rescale = ProjectiveMap::new([
        [S::one() / sx, z.clone(), z.clone()],
        [z.clone(), S::one() / sy, z.clone()],
        [z.clone(), z, S::one()],
    ])?;
    let map = rescale.after(&frame);
    let chart = |p: &HPoint<S>, name: &'static str| {
        map.map_point(p).to_affine().ok_or(Error::ChartDegenerate { point: name })
    };
    let (b1, _) = chart(feet.get(FootSlot::B1), "B1")?;
    let (_, c2) = chart(feet.get(FootSlot::C2), "C2")?;
    let p_pt = meet(&join(a, b)?, &join(feet.get(FootSlot::A2), feet.get(FootSlot::B1))?)?;
    let q_pt = meet(&join(a, c)?, &join(feet.get(FootSlot::A1), feet.get(FootSlot::C2))?)?;
    let (_, p) = chart(&p_pt, "P")?;
    let (q, _) = chart(&q_pt, "Q")?;
    Ok(ProofChart { b1, c2, p, q, map })
}

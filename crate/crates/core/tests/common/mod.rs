//! Random instance generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use conconic_core::scalar::rat;
use conconic_core::{
    build_config, cevians_through_point, conic_through_points, isogonal_feet, isotomic_feet, sample_on_conic,
    solve_concurrency_foot, solve_sixth_foot, BigRational, CevianFeet, CevianTriple, Conic, FootSlot, HLine, HPoint,
    PartialFeet, Theorem1Config, Tolerance, Triangle,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut impl Rng, span: i64, max_den: i64) -> Q {
    rat(r.random_range(-span..=span), r.random_range(1..=max_den))
}

pub fn rational_point(r: &mut impl Rng) -> HPoint<Q> {
    HPoint::affine(small_rat(r, 30, 7), small_rat(r, 30, 7))
}

pub fn random_triangle(r: &mut impl Rng) -> Triangle<Q> {
    loop {
        let t = Triangle::new(rational_point(r), rational_point(r), rational_point(r));
        if let Ok(t) = t {
            return t;
        }
    }
}

/// Side parameter away from the vertices (0 and 1), on the segment or its
/// extension.
pub fn side_param(r: &mut impl Rng) -> Q {
    loop {
        let t = rat(r.random_range(-6..=16), r.random_range(2..=11));
        if t != rat(0, 1) && t != rat(1, 1) {
            return t;
        }
    }
}

pub fn random_triple(r: &mut impl Rng, tri: &Triangle<Q>) -> CevianTriple<Q> {
    CevianTriple::from_parameters(tri, [side_param(r), side_param(r), side_param(r)]).unwrap()
}

pub fn random_feet(r: &mut impl Rng, tri: &Triangle<Q>) -> CevianFeet<Q> {
    let tol = Tolerance::default();
    loop {
        let t = std::array::from_fn(|_| side_param(r));
        if let Ok(f) = CevianFeet::from_parameters(tri, t, &tol) {
            return f;
        }
    }
}

/// Builds the configuration when all six feet are pairwise distinct.
fn configured(tri: &Triangle<Q>, feet: CevianFeet<Q>) -> Option<Theorem1Config<Q>> {
    let f = feet.all();
    let distinct = (0..6).all(|i| (i + 1..6).all(|j| f[i] != f[j]));
    if !distinct {
        return None;
    }
    build_config(tri, &feet).ok()
}

/// Five random feet plus the one foot that makes `AU1, BV1, CW1` concurrent.
pub fn concurrency_seeded(r: &mut impl Rng) -> Theorem1Config<Q> {
    let tol = Tolerance::default();
    loop {
        let tri = random_triangle(r);
        let feet = random_feet(r, &tri);
        let slot = FootSlot::ALL[r.random_range(0..6)];
        let partial = PartialFeet::from_feet(&feet).without(slot);
        let Ok(foot) = solve_concurrency_foot(&tri, &partial) else { continue };
        let Ok(feet) = partial.complete(&tri, foot, &tol) else { continue };
        if let Some(cfg) = configured(&tri, feet) {
            return cfg;
        }
    }
}

/// Five random feet plus the other root of the sixth-foot quadratic.
pub fn conic_seeded(r: &mut impl Rng) -> Theorem1Config<Q> {
    let tol = Tolerance::default();
    loop {
        let tri = random_triangle(r);
        let feet = random_feet(r, &tri);
        let slot = FootSlot::ALL[r.random_range(0..6)];
        let partial = PartialFeet::from_feet(&feet).without(slot);
        let Ok(roots) = solve_sixth_foot(&tri, &partial, &tol) else { continue };
        let sibling = match slot {
            FootSlot::A1 => FootSlot::A2,
            FootSlot::A2 => FootSlot::A1,
            FootSlot::B1 => FootSlot::B2,
            FootSlot::B2 => FootSlot::B1,
            FootSlot::C1 => FootSlot::C2,
            FootSlot::C2 => FootSlot::C1,
        };
        let Some(foot) = roots.into_iter().find(|f| f != feet.get(sibling)) else { continue };
        let Ok(feet) = partial.complete(&tri, foot, &tol) else { continue };
        if let Some(cfg) = configured(&tri, feet) {
            return cfg;
        }
    }
}

pub fn isogonal_instance(r: &mut impl Rng) -> Theorem1Config<Q> {
    let tol = Tolerance::default();
    loop {
        let tri = random_triangle(r);
        let first = random_triple(r, &tri);
        let Ok(second) = isogonal_feet(&tri, &first) else { continue };
        let Ok(feet) = CevianFeet::from_triples(&tri, &first, &second, &tol) else { continue };
        if let Some(cfg) = configured(&tri, feet) {
            return cfg;
        }
    }
}

pub fn isotomic_instance(r: &mut impl Rng) -> Theorem1Config<Q> {
    let tol = Tolerance::default();
    loop {
        let tri = random_triangle(r);
        let first = random_triple(r, &tri);
        let Ok(second) = isotomic_feet(&tri, &first) else { continue };
        let Ok(feet) = CevianFeet::from_triples(&tri, &first, &second, &tol) else { continue };
        if let Some(cfg) = configured(&tri, feet) {
            return cfg;
        }
    }
}

/// Interior point with random positive barycentric weights.
pub fn interior_point(r: &mut impl Rng, tri: &Triangle<Q>) -> HPoint<Q> {
    let w: [Q; 3] = std::array::from_fn(|_| rat(r.random_range(1..=9), 1));
    let total = w[0].clone() + w[1].clone() + w[2].clone();
    let mut xy = [rat(0, 1), rat(0, 1)];
    for (v, wi) in tri.vertices().iter().zip(&w) {
        let (x, y) = v.to_affine().unwrap();
        xy[0] = xy[0].clone() + wi.clone() * x / total.clone();
        xy[1] = xy[1].clone() + wi.clone() * y / total.clone();
    }
    let [x, y] = xy;
    HPoint::affine(x, y)
}

/// Cevians through two distinct interior points.
pub fn two_point_instance(r: &mut impl Rng) -> (Theorem1Config<Q>, HPoint<Q>, HPoint<Q>) {
    let tol = Tolerance::default();
    loop {
        let tri = random_triangle(r);
        let p1 = interior_point(r, &tri);
        let p2 = interior_point(r, &tri);
        if p1 == p2 {
            continue;
        }
        let first = cevians_through_point(&tri, &p1, &tol).unwrap();
        let second = cevians_through_point(&tri, &p2, &tol).unwrap();
        let Ok(feet) = CevianFeet::from_triples(&tri, &first, &second, &tol) else { continue };
        if let Some(cfg) = configured(&tri, feet) {
            return (cfg, p1, p2);
        }
    }
}

/// A configuration whose concurrency condition fails: one foot of a
/// concurrency-seeded instance is nudged along its side.
pub fn perturbed_instance(r: &mut impl Rng) -> Theorem1Config<Q> {
    let tol = Tolerance::default();
    loop {
        let cfg = concurrency_seeded(r);
        let tri = cfg.triangle().clone();
        let slot = FootSlot::ALL[r.random_range(0..6)];
        let Ok((u, v)) = tri.side_weights(slot.side(), cfg.feet().get(slot)) else { continue };
        let nudge = rat(r.random_range(1..=5), r.random_range(7..=40));
        let Ok(moved) = tri.point_from_weights(slot.side(), &u, &(v.clone() + nudge * (u.clone() + v))) else {
            continue;
        };
        let partial = PartialFeet::from_feet(cfg.feet()).without(slot);
        let Ok(feet) = partial.complete(&tri, moved, &tol) else { continue };
        let Some(c) = configured(&tri, feet) else { continue };
        let still = conconic_core::evaluate_conditions(&c, &tol).map(|v| v.concurrent.holds);
        if still == Ok(false) {
            return c;
        }
    }
}

/// A nondegenerate conic through five random rational points.
pub fn random_conic(r: &mut impl Rng) -> (Conic<Q>, [HPoint<Q>; 5]) {
    let tol = Tolerance::default();
    loop {
        let pts: [HPoint<Q>; 5] = std::array::from_fn(|_| rational_point(r));
        let Ok(c) = conic_through_points(&pts, &tol) else { continue };
        if c.classify(&tol) == conconic_core::RankClass::Nondegenerate {
            return (c, pts);
        }
    }
}

/// `n` distinct rational points on `c`, sampled from the pencil through `base`.
pub fn points_on(r: &mut impl Rng, c: &Conic<Q>, base: &HPoint<Q>, n: usize) -> Vec<HPoint<Q>> {
    let tol = Tolerance::default();
    let mut out: Vec<HPoint<Q>> = Vec::new();
    while out.len() < n {
        let t = small_rat(r, 20, 6);
        let p = sample_on_conic(c, base, &t, &tol).unwrap();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Tangent line of `c` at a point on it (its polar).
pub fn tangent_at(c: &Conic<Q>, p: &HPoint<Q>) -> HLine<Q> {
    let m = c.matrix();
    let v = p.coords();
    let l = std::array::from_fn(|i| {
        (0..3).fold(rat(0, 1), |acc, j| acc + m[i][j].clone() * v[j].clone())
    });
    HLine::from_coeffs(l).unwrap()
}

/// Random invertible rational projective map.
pub fn random_map(r: &mut impl Rng) -> conconic_core::ProjectiveMap<Q> {
    loop {
        let m = std::array::from_fn(|_| std::array::from_fn(|_| rat(r.random_range(-5..=5), r.random_range(1..=3))));
        if let Ok(map) = conconic_core::ProjectiveMap::new(m) {
            return map;
        }
    }
}

/// Basis of the right null space of a rational matrix, by plain
/// Gauss-Jordan elimination. Kept separate from the library's linear algebra
/// so it can serve as an oracle.
pub fn null_space(mut m: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    use num_traits::Zero;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() / lead.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let d = f.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - d;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![rat(0, 1); cols];
            v[free] = rat(1, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Whether two vectors agree up to a nonzero scale.
pub fn proportional(a: &[Q], b: &[Q]) -> bool {
    use num_traits::Zero;
    a.len() == b.len()
        && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_zero()))
        && a.iter().any(|x| !x.is_zero())
        && b.iter().any(|x| !x.is_zero())
}

/// Float triangle with the given angles (degrees) at `A` and `B`, placed
/// with a rotation, scale and translation.
pub fn triangle_with_angles(alpha: f64, beta: f64, rot: f64, scale: f64, shift: (f64, f64)) -> Triangle<f64> {
    let (a, b) = (alpha.to_radians(), beta.to_radians());
    let gamma = std::f64::consts::PI - a - b;
    // Side AB has length sin(gamma); AC has length sin(beta).
    let pts = [(0.0, 0.0), (gamma.sin(), 0.0), (b.sin() * a.cos(), b.sin() * a.sin())];
    let (s, c) = rot.sin_cos();
    let place = |(x, y): (f64, f64)| (scale * (c * x - s * y) + shift.0, scale * (s * x + c * y) + shift.1);
    Triangle::from_affine(pts.map(place)).unwrap()
}

/// Random triangle with every angle in `[lo, hi]` degrees.
pub fn random_angle_triangle(r: &mut impl Rng, lo: f64, hi: f64) -> (Triangle<f64>, [f64; 3]) {
    loop {
        let alpha = r.random_range(lo..hi);
        let beta = r.random_range(lo..hi);
        let gamma = 180.0 - alpha - beta;
        if !(lo..=hi).contains(&gamma) {
            continue;
        }
        let rot = r.random_range(0.0..std::f64::consts::TAU);
        let scale = r.random_range(0.5..20.0);
        let shift = (r.random_range(-10.0..10.0), r.random_range(-10.0..10.0));
        return (triangle_with_angles(alpha, beta, rot, scale, shift), [alpha, beta, gamma]);
    }
}

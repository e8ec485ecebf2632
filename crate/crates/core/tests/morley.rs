mod common;

use common::{random_angle_triangle, rng, triangle_with_angles};
use conconic_core::{
    equilateral_spread, join, morley_config, morley_triangle, porism_check, second_morley_center, Error, HPoint,
    Tolerance, Triangle,
};
use rand::Rng;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn xy(p: &HPoint<f64>) -> (f64, f64) {
    p.to_affine().unwrap()
}

fn tri345() -> Triangle<f64> {
    Triangle::from_affine([(0.0, 0.0), (4.0, 0.0), (0.0, 3.0)]).unwrap()
}

/// Morley vertex nearest `BC` from a direct trisector computation: the
/// angles at `B` and `C` are split, and the rays hugging `BC` are
/// intersected by the sine rule in triangle `B U C`.
fn morley_vertex_oracle(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> (f64, f64) {
    let angle = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
        let u = (q.0 - p.0, q.1 - p.1);
        let v = (r.0 - p.0, r.1 - p.1);
        (u.0 * v.1 - u.1 * v.0).abs().atan2(u.0 * v.0 + u.1 * v.1)
    };
    let beta = angle(b, c, a) / 3.0;
    let gamma = angle(c, a, b) / 3.0;
    let bc = (c.0 - b.0).hypot(c.1 - b.1);
    let bu = bc * gamma.sin() / (beta + gamma).sin();
    // Rotate the unit vector B→C toward A by beta.
    let e = ((c.0 - b.0) / bc, (c.1 - b.1) / bc);
    let side = (e.0 * (a.1 - b.1) - e.1 * (a.0 - b.0)).signum();
    let (s, co) = (side * beta).sin_cos();
    let d = (co * e.0 - s * e.1, s * e.0 + co * e.1);
    (b.0 + bu * d.0, b.1 + bu * d.1)
}

#[test]
fn morley_triangle_matches_direct_oracle() {
    let mut r = rng(61);
    for _ in 0..50 {
        let (tri, _) = random_angle_triangle(&mut r, 15.0, 150.0);
        let [a, b, c] = tri.vertices().clone().map(|p| xy(&p));
        let m = morley_triangle(&tri).unwrap();
        let expected = [morley_vertex_oracle(a, b, c), morley_vertex_oracle(b, c, a), morley_vertex_oracle(c, a, b)];
        for (got, want) in m.iter().zip(expected) {
            let (x, y) = xy(got);
            let scale = 1.0 + want.0.abs().max(want.1.abs());
            assert!((x - want.0).abs() < 1e-9 * scale && (y - want.1).abs() < 1e-9 * scale);
        }
    }
}

#[test]
fn equilateral_triangle() {
    let h = 3f64.sqrt() / 2.0;
    let tri = Triangle::from_affine([(0.0, 0.0), (1.0, 0.0), (0.5, h)]).unwrap();
    let m = morley_triangle(&tri).unwrap();
    let circumradius = 1.0 / 3f64.sqrt();
    let side = 8.0 * circumradius * 20f64.to_radians().sin().powi(3);
    let (p, q) = (xy(&m[0]), xy(&m[1]));
    assert!(((p.0 - q.0).hypot(p.1 - q.1) - side).abs() < 1e-12);
    assert!((side - 0.184793).abs() < 1e-6);
    let center = xy(&second_morley_center(&tri, &tol()).unwrap());
    assert!((center.0 - 0.5).abs() < 1e-12 && (center.1 - h / 3.0).abs() < 1e-12);

    let data = morley_config(&tri, &tol()).unwrap();
    let (x1, y1, r1) = data.c1.as_circle(&Tolerance::new(1e-9)).expect("C1 is a circle");
    let (x2, y2, r2) = data.c2.as_circle(&Tolerance::new(1e-9)).expect("C2 is a circle");
    assert!((x1 - x2).abs() < 1e-9 && (y1 - y2).abs() < 1e-9);
    assert!((r2 / r1 - 0.5).abs() < 1e-9);
}

#[test]
fn right_triangle_345() {
    let tri = tri345();
    let data = morley_config(&tri, &tol()).unwrap();
    assert_eq!(data.flipped, [false; 3]);
    assert!(data.equilateral_spread < 1e-12);
    assert!(data.concurrency_residual < 1e-9);
    assert!(data.conditions.all_hold());
    for (name, v) in data.conditions.named() {
        assert!(v.residual.abs() < 1e-8, "{name}: {}", v.residual);
    }
    let report = porism_check(&data.c1, &data.c2, 3, 25, &tol()).unwrap();
    assert!(report.all_closed, "{:?}", report.steps);
}

#[test]
fn collinear_input_is_rejected() {
    let tri = Triangle::from_affine([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
    assert_eq!(tri.unwrap_err(), Error::DegenerateTriangle);
}

#[test]
fn morley_triangle_follows_similarities() {
    let mut r = rng(62);
    for _ in 0..30 {
        let (tri, _) = random_angle_triangle(&mut r, 15.0, 150.0);
        let m = morley_triangle(&tri).unwrap();
        let rot: f64 = r.random_range(0.0..6.28);
        let k: f64 = r.random_range(0.1..10.0);
        let (tx, ty) = (r.random_range(-5.0..5.0), r.random_range(-5.0..5.0));
        let (s, c) = rot.sin_cos();
        let f = |(x, y): (f64, f64)| (k * (c * x - s * y) + tx, k * (s * x + c * y) + ty);
        let moved = Triangle::from_affine(tri.vertices().clone().map(|p| f(xy(&p)))).unwrap();
        let mm = morley_triangle(&moved).unwrap();
        for (a, b) in m.iter().zip(&mm) {
            let (x, y) = f(xy(a));
            let (u, v) = xy(b);
            let scale = 1.0 + x.abs().max(y.abs());
            assert!((x - u).abs() < 1e-9 * scale && (y - v).abs() < 1e-9 * scale);
        }
    }
}

#[test]
fn mirrored_triangles_are_handled() {
    let mut r = rng(63);
    for _ in 0..20 {
        let (tri, _) = random_angle_triangle(&mut r, 15.0, 150.0);
        let [a, b, c] = tri.vertices().clone().map(|p| xy(&p));
        let mirrored = Triangle::from_affine([(a.0, -a.1), (b.0, -b.1), (c.0, -c.1)]).unwrap();
        let data = morley_config(&mirrored, &tol()).unwrap();
        assert!(data.equilateral_spread < 1e-10);
        assert!(data.conditions.all_hold());
    }
}

#[test]
fn random_triangles_satisfy_all_conditions() {
    let mut r = rng(64);
    for _ in 0..30 {
        let (tri, angles) = random_angle_triangle(&mut r, 15.0, 150.0);
        let data = morley_config(&tri, &tol()).unwrap();
        assert!(data.equilateral_spread < 1e-10, "{angles:?}");
        assert!(data.concurrency_residual < 1e-9, "{angles:?}");
        for (name, v) in data.conditions.named() {
            assert!(v.residual.abs() < 1e-8, "{name} {angles:?}: {}", v.residual);
        }
        // The Morley points are the cross meets of the trisector cevians.
        for (m, u) in data.morley_triangle.iter().zip(data.config.cross_points()) {
            assert!(m.equivalent(u, &Tolerance::new(1e-9)));
        }
    }
}

#[test]
fn inner_triangles_are_closed_chains() {
    let mut r = rng(65);
    for _ in 0..20 {
        let (tri, angles) = random_angle_triangle(&mut r, 15.0, 150.0);
        let data = morley_config(&tri, &tol()).unwrap();
        let cfg = &data.config;
        for chain in [[cfg.x1(), cfg.y1(), cfg.z1()], [cfg.x2(), cfg.y2(), cfg.z2()]] {
            for i in 0..3 {
                let p = chain[i];
                let q = chain[(i + 1) % 3];
                assert!(data.c1.residual(p).abs() < 1e-8, "{angles:?}");
                let link = join(p, q).unwrap();
                assert!(data.c2.tangency_residual(&link).abs() < 1e-8, "{angles:?}");
            }
        }
    }
}

#[test]
fn sliver_triangle_stress_case() {
    let tri = triangle_with_angles(178.0, 1.0, 0.0, 1.0, (0.0, 0.0));
    let m = morley_triangle(&tri).unwrap();
    let spread = equilateral_spread(&m);
    let center = second_morley_center(&tri, &Tolerance::new(1e-6));
    let data = morley_config(&tri, &tol());
    eprintln!(
        "sliver (178, 1, 1): spread {spread:e}, center {:?}, concurrency residual {:?}",
        center.as_ref().map(xy),
        data.as_ref().map(|d| d.concurrency_residual)
    );
    assert!(spread < 1e-6);
    assert!(center.is_ok());
    let data = data.unwrap();
    assert!(data.concurrency_residual < 1e-6);
}

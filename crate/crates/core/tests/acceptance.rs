//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the summary prints in order
//! with wall-clock timings. Exits nonzero when any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::{
    concurrency_seeded, isogonal_instance, isotomic_instance, null_space, perturbed_instance, points_on,
    random_angle_triangle, random_conic, rational_point, rng, small_rat, tangent_at, two_point_instance, Q,
};
use conconic_core::conic::{brianchon_concurrency, pascal_collinearity};
use conconic_core::poncelet::circle;
use conconic_core::scalar::rat;
use conconic_core::{
    check_conditions, conconic, cotangent, join, morley_config, porism_check, to_chart, Conic, HLine, HPoint,
    RankClass, Theorem1Config, Tolerance,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn run(id: u32, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if let Some(limit) = budget {
        if elapsed > limit {
            out.pass = false;
            out.detail.push_str(&format!("; over budget {:.0}s", limit.as_secs_f64()));
        }
    }
    let tag = if out.pass { "PASS" } else { "FAIL" };
    println!("{tag} [{id}] {name}: {} ({:.2}s)", out.detail, elapsed.as_secs_f64());
    out.pass
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

// ---------------------------------------------------------------------------
// Cevian configurations
// ---------------------------------------------------------------------------

/// All four verdicts hold with exactly zero residuals.
fn all_hold_exactly(cfg: &Theorem1Config<Q>) -> bool {
    match check_conditions(cfg, &tol()) {
        Ok(c) => c.all_hold() && c.named().iter().all(|(_, v)| v.residual == rat(0, 1)),
        Err(_) => false,
    }
}

fn chart_p_equals_q(cfg: &Theorem1Config<Q>) -> Option<bool> {
    to_chart(cfg).ok().map(|c| c.p == c.q)
}

fn criterion_1(seeded: &mut Vec<Theorem1Config<Q>>) -> Outcome {
    let mut r = rng(1001);
    let mut agree = 0;
    for _ in 0..200 {
        let cfg = concurrency_seeded(&mut r);
        if all_hold_exactly(&cfg) {
            agree += 1;
        }
        seeded.push(cfg);
    }
    Outcome::new(agree == 200, format!("{agree}/200 concurrency-seeded configurations with four zero residuals"))
}

fn criterion_2(kind: &str, make: fn(&mut rand_chacha::ChaCha8Rng) -> Theorem1Config<Q>, seed: u64, keep: &mut Vec<Theorem1Config<Q>>) -> Outcome {
    let mut r = rng(seed);
    let mut zero = 0;
    for _ in 0..200 {
        let cfg = make(&mut r);
        let outer = check_conditions(&cfg, &tol()).map(|c| c.outer6.residual == rat(0, 1) && c.outer6.holds);
        if outer == Ok(true) {
            zero += 1;
        }
        keep.push(cfg);
    }
    Outcome::new(zero == 200, format!("{zero}/200 {kind} instances with outer6 determinant exactly zero"))
}

fn criterion_3(keep: &mut Vec<Theorem1Config<Q>>) -> Outcome {
    let mut r = rng(1003);
    let (mut hold, mut double) = (0, 0);
    for _ in 0..200 {
        let (cfg, p1, p2) = two_point_instance(&mut r);
        if all_hold_exactly(&cfg) {
            hold += 1;
        }
        let witness = check_conditions(&cfg, &tol()).ok().and_then(|c| c.inner6.witness);
        let line = join(&p1, &p2).unwrap();
        if let Some(w) = witness {
            if w.classify(&tol()) == RankClass::DoubleLine && w.equivalent(&Conic::double_line(&line), &tol()) {
                double += 1;
            }
        }
        keep.push(cfg);
    }
    Outcome::new(
        hold == 200 && double == 200,
        format!("{hold}/200 all hold, {double}/200 inner6 witness is the double line through both points"),
    )
}

fn criterion_4(instances: &[Theorem1Config<Q>]) -> Outcome {
    let equal = instances.iter().filter(|c| chart_p_equals_q(c) == Some(true)).count();
    let mut r = rng(1004);
    let mut differ = 0;
    for _ in 0..200 {
        if chart_p_equals_q(&perturbed_instance(&mut r)) == Some(false) {
            differ += 1;
        }
    }
    Outcome::new(
        equal == instances.len() && differ == 200,
        format!("p = q on {equal}/{} holding instances, p != q on {differ}/200 perturbed", instances.len()),
    )
}

// ---------------------------------------------------------------------------
// Morley and Poncelet
// ---------------------------------------------------------------------------

fn criterion_5() -> Outcome {
    let mut r = rng(1005);
    let (mut ok, mut worst) = (0, [0f64; 3]);
    for _ in 0..100 {
        let (tri, _) = random_angle_triangle(&mut r, 15.0, 150.0);
        let Ok(data) = morley_config(&tri, &tol()) else { continue };
        let residual = data.conditions.named().iter().map(|(_, v)| v.residual.abs()).fold(0.0, f64::max);
        worst[0] = worst[0].max(data.equilateral_spread);
        worst[1] = worst[1].max(data.concurrency_residual);
        worst[2] = worst[2].max(residual);
        if data.equilateral_spread < 1e-10 && data.concurrency_residual < 1e-9 && residual < 1e-8 {
            ok += 1;
        }
    }
    Outcome::new(
        ok == 100,
        format!(
            "{ok}/100 triangles; worst spread {:.1e}, concurrency {:.1e}, conic residual {:.1e}",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(1006);
    let (mut ok, mut worst) = (0, 0f64);
    for _ in 0..20 {
        let (tri, _) = random_angle_triangle(&mut r, 15.0, 150.0);
        let Ok(data) = morley_config(&tri, &tol()) else { continue };
        let Ok(report) = porism_check(&data.c1, &data.c2, 3, 25, &tol()) else { continue };
        worst = worst.max(report.max_gap);
        if report.all_closed && report.max_gap < 1e-7 {
            ok += 1;
        }
    }
    Outcome::new(ok == 20, format!("{ok}/20 Morley conic pairs close at 3 on 25 samples; worst gap {worst:.1e}"))
}

fn criterion_7() -> Outcome {
    let (mut closed, mut open, mut worst) = (0, 0, 0f64);
    for n in 3..=8 {
        let r = 2.0 * (PI / n as f64).cos();
        if let Ok(report) = porism_check(&circle(2.0), &circle(r), n, 20, &tol()) {
            worst = worst.max(report.max_gap);
            if report.all_closed && report.max_gap < 1e-9 {
                closed += 1;
            }
        }
        if let Ok(report) = porism_check(&circle(2.0), &circle(1.01 * r), n, 20, &tol()) {
            if report.steps.iter().all(Option::is_none) {
                open += 1;
            }
        }
    }
    Outcome::new(
        closed == 6 && open == 6,
        format!("{closed}/6 radii close at n (worst gap {worst:.1e}), {open}/6 perturbed radii never close"),
    )
}

// ---------------------------------------------------------------------------
// Conic oracles
// ---------------------------------------------------------------------------

fn monomials(p: &HPoint<Q>) -> Vec<Q> {
    let [x, y, z] = p.coords().clone();
    vec![
        x.clone() * x.clone(),
        x.clone() * y.clone(),
        y.clone() * y.clone(),
        x.clone() * z.clone(),
        y.clone() * z.clone(),
        z.clone() * z,
    ]
}

/// Fit a conic to the first five points and test the sixth. A pencil of
/// conics through the five always contains one through the sixth.
fn fit_then_test(six: &[HPoint<Q>; 6]) -> bool {
    let basis = null_space(six[..5].iter().map(monomials).collect(), 6);
    if basis.len() != 1 {
        return true;
    }
    let m = monomials(&six[5]);
    m.iter().zip(&basis[0]).fold(rat(0, 1), |acc, (a, b)| acc + a.clone() * b.clone()) == rat(0, 1)
}

fn distinct(pts: &[HPoint<Q>]) -> bool {
    (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| pts[i] != pts[j]))
}

/// Six points on one conic, five on a conic plus a stray, or six at random.
fn mixed_six(r: &mut impl Rng, kind: usize) -> [HPoint<Q>; 6] {
    loop {
        let six: Vec<HPoint<Q>> = match kind % 3 {
            0 => {
                let (c, five) = random_conic(r);
                points_on(r, &c, &five[0], 6)
            }
            1 => {
                let (c, five) = random_conic(r);
                let mut pts = points_on(r, &c, &five[0], 5);
                pts.push(rational_point(r));
                pts
            }
            _ => (0..6).map(|_| rational_point(r)).collect(),
        };
        if distinct(&six) {
            return six.try_into().unwrap();
        }
    }
}

fn criterion_8() -> Outcome {
    let mut r = rng(1008);
    let (mut agree, mut on) = (0, 0);
    for i in 0..1000 {
        let six = mixed_six(&mut r, i);
        let Ok(v) = conconic(&six, &tol()) else { continue };
        if v.holds == fit_then_test(&six) {
            agree += 1;
        }
        on += v.holds as usize;
    }
    Outcome::new(agree == 1000, format!("{agree}/1000 agree with fit-five-then-test-sixth ({on} conconic)"))
}

/// Moves one point of an on-conic hexagon off the conic.
fn nudged(r: &mut impl Rng, c: &Conic<Q>, mut six: Vec<HPoint<Q>>) -> Vec<HPoint<Q>> {
    let i = r.random_range(0..6);
    loop {
        let (x, y) = six[i].to_affine().unwrap();
        let p = HPoint::affine(x + small_rat(r, 3, 5), y + small_rat(r, 3, 5));
        if c.evaluate(&p) != rat(0, 1) {
            six[i] = p;
            return six;
        }
    }
}

fn criterion_9() -> Outcome {
    let mut r = rng(1009);
    let (mut pascal, mut brianchon) = (0, 0);
    let mut tried = [0, 0];
    while tried[0] < 500 {
        let (c, five) = random_conic(&mut r);
        let mut six = points_on(&mut r, &c, &five[0], 6);
        if tried[0] % 2 == 1 {
            six = nudged(&mut r, &c, six);
        }
        let Ok(six): Result<[HPoint<Q>; 6], _> = six.try_into() else { continue };
        let (Ok(line), Ok(det)) = (pascal_collinearity(&six, &tol()), conconic(&six, &tol())) else { continue };
        tried[0] += 1;
        pascal += (line.holds == det.holds) as usize;
    }
    while tried[1] < 500 {
        let (c, five) = random_conic(&mut r);
        let six = points_on(&mut r, &c, &five[0], 6);
        let mut lines: Vec<HLine<Q>> = six.iter().map(|p| tangent_at(&c, p)).collect();
        if tried[1] % 2 == 1 {
            let i = r.random_range(0..6);
            let stray = join(&rational_point(&mut r), &rational_point(&mut r));
            let Ok(stray) = stray else { continue };
            lines[i] = stray;
        }
        let lines: [HLine<Q>; 6] = lines.try_into().unwrap();
        let (Ok(point), Ok(det)) = (brianchon_concurrency(&lines, &tol()), cotangent(&lines, &tol())) else {
            continue;
        };
        tried[1] += 1;
        brianchon += (point.holds == det.holds) as usize;
    }
    Outcome::new(
        pascal == 500 && brianchon == 500,
        format!("Pascal {pascal}/500, Brianchon {brianchon}/500 agree with the determinant verdicts"),
    )
}

fn main() {
    let mut holding = Vec::new();
    let mut results = vec![run(1, "exact equivalence", secs(60), || criterion_1(&mut holding))];
    let mut iso = Vec::new();
    results.push(run(2, "isogonal feet", secs(30), || criterion_2("isogonal", isogonal_instance, 1021, &mut iso)));
    results.push(run(2, "isotomic feet", secs(30), || criterion_2("isotomic", isotomic_instance, 1022, &mut iso)));
    holding.append(&mut iso);
    results.push(run(3, "two interior points", secs(30), || criterion_3(&mut holding)));
    results.push(run(4, "chart criterion", None, || criterion_4(&holding)));
    results.push(run(5, "Morley suite", secs(10), criterion_5));
    results.push(run(6, "Morley porism", secs(30), criterion_6));
    results.push(run(7, "concentric closure", secs(10), criterion_7));
    results.push(run(8, "fit oracle", secs(30), criterion_8));
    results.push(run(9, "Pascal and Brianchon", None, criterion_9));

    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

//! The three commands of the `conconic` binary, as library functions.

use num_rational::BigRational;
use serde_json::json;

use super::report::{
    matrix_text, point_text, ChainRecord, ChartRecord, CircleRecord, MorleyReport, NamedPoint, PonceletReport,
    PorismRecord, Provenance, VerdictRecord, VerifyReport,
};
use super::scene::{parse_coefficients, parse_pair, parse_triangle, Mode, Scene};
use super::svg::{affine_points, Svg};
use super::IoError;
use crate::cevian::{build_config, evaluate_conditions, to_chart, CevianFeet, FootSlot, Theorem1Config, Triangle};
use crate::conic::Conic;
use crate::morley::{morley_config, MorleyData};
use crate::poncelet::{point_on_conic, porism_check, trace_chain, ChainResult};
use crate::projective::HPoint;
use crate::scalar::{Scalar, Tolerance};

/// Exit status for a successful run whose verdicts are consistent.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 1;
/// Exit status when results contradict each other.
pub const EXIT_INCONSISTENT: i32 = 2;

const SVG_MARGIN: f64 = 0.15;

#[derive(Debug, Clone)]
pub struct Outcome<R> {
    pub report: R,
    pub exit_code: i32,
    pub svg: Option<String>,
}

type Witnesses = Vec<Option<Conic<f64>>>;

fn verify_with<S: Scalar>(scene: &Scene, tol: &Tolerance) -> Result<(VerifyReport, Theorem1Config<S>, Witnesses), IoError> {
    let tri: Triangle<S> = scene.build_triangle()?;
    let feet = scene.build_feet(&tri, tol)?;
    let cfg = build_config(&tri, &feet)?;
    let conditions = evaluate_conditions(&cfg, tol)?;
    let verdicts = conditions
        .named()
        .iter()
        .map(|(name, v)| VerdictRecord::new(name, v))
        .collect();
    let chart = match to_chart(&cfg) {
        Ok(c) => ChartRecord {
            b1: Some(c.b1.to_text()),
            c2: Some(c.c2.to_text()),
            p: Some(c.p.to_text()),
            q: Some(c.q.to_text()),
            p_equals_q: Some(c.criterion_holds(tol)),
            degenerate: None,
        },
        Err(e) => ChartRecord {
            degenerate: Some(e.to_string()),
            ..ChartRecord::default()
        },
    };
    let report = VerifyReport {
        verdicts,
        agree: conditions.agree(),
        consistent: conditions.consistent(),
        feet: FootSlot::ALL
            .iter()
            .map(|&s| NamedPoint::new(s.name(), feet.get(s)))
            .collect(),
        chart,
        provenance: Provenance::new(serde_json::to_value(scene).unwrap_or_default(), Mode::Rational, tol),
    };
    // Nondegenerate witnesses of the point and line conditions, for figures.
    let witnesses = [&conditions.outer6, &conditions.inner6, &conditions.tangent6]
        .iter()
        .map(|v| v.witness.as_ref().filter(|_| !v.degenerate).map(Conic::to_f64))
        .collect();
    Ok((report, cfg, witnesses))
}

fn float_config<S: Scalar>(cfg: &Theorem1Config<S>) -> Option<Theorem1Config<f64>> {
    let [a, b, c] = cfg.triangle().vertices().clone().map(|p| p.to_f64());
    let tri = Triangle::new(a, b, c).ok()?;
    let feet = CevianFeet::new(&tri, cfg.feet().to_f64().all().clone(), &Tolerance::new(1e-6)).ok()?;
    build_config(&tri, &feet).ok()
}

fn verify_svg(cfg: &Theorem1Config<f64>, witnesses: &[Option<Conic<f64>>]) -> String {
    let tri = affine_points(cfg.triangle().vertices());
    let mut svg = Svg::fit(&tri, SVG_MARGIN);
    for (l, color) in cfg.cevians().iter().zip(["#1f77b4", "#d62728"].iter().cycle()) {
        svg.line(l, color, 0.8);
    }
    for (w, color) in witnesses.iter().zip(["#2ca02c", "#9467bd", "#ff7f0e"]) {
        if let Some(c) = w {
            svg.conic(c, color);
        }
    }
    svg.polygon(&tri, "black", "none");
    for (p, name) in cfg.triangle().vertices().iter().zip(["A", "B", "C"]) {
        svg.point(p, "black", Some(name));
    }
    for s in FootSlot::ALL {
        svg.point(cfg.feet().get(s), "#1f77b4", Some(s.name()));
    }
    for (p, name) in cfg.inner_points().iter().zip(["X1", "Y1", "Z1", "X2", "Y2", "Z2"]) {
        svg.point(p, "#555555", Some(name));
    }
    svg.finish()
}

/// Verifies a scene. Exit code 2 when the four verdicts are inconsistent.
pub fn run_verify(scene: &Scene, mode: Mode, tol: &Tolerance, want_svg: bool) -> Result<Outcome<VerifyReport>, IoError> {
    let (mut report, svg) = match mode {
        Mode::Rational => {
            let (r, cfg, witnesses) = verify_with::<BigRational>(scene, tol)?;
            let svg = want_svg.then(|| float_config(&cfg).map(|f| verify_svg(&f, &witnesses)));
            (r, svg.flatten())
        }
        Mode::Float => {
            let (r, cfg, witnesses) = verify_with::<f64>(scene, tol)?;
            (r, want_svg.then(|| verify_svg(&cfg, &witnesses)))
        }
    };
    report.provenance.mode = mode;
    let exit_code = if report.consistent { EXIT_OK } else { EXIT_INCONSISTENT };
    Ok(Outcome { report, exit_code, svg })
}

#[derive(Debug, Clone)]
pub struct MorleyArgs {
    /// `"x1,y1 x2,y2 x3,y3"`.
    pub triangle: String,
    pub samples: usize,
}

fn affine_text(p: &HPoint<f64>) -> [String; 3] {
    match p.to_affine() {
        Some((x, y)) => [x.to_text(), y.to_text(), "1".to_string()],
        None => point_text(p),
    }
}

fn morley_svg(d: &MorleyData, chain: Option<&ChainResult>) -> String {
    let tri = affine_points(d.triangle.vertices());
    let mut svg = Svg::fit(&tri, SVG_MARGIN);
    for l in &d.trisectors {
        svg.line(l, "#bbbbbb", 0.8);
    }
    svg.conic(&d.c1, "#2ca02c");
    svg.conic(&d.c2, "#9467bd");
    if let Some(ch) = chain {
        svg.polygon(&affine_points(&ch.points), "#ff7f0e", "none");
    }
    svg.polygon(&tri, "black", "none");
    svg.polygon(&affine_points(&d.morley_triangle), "#d62728", "#d6272833");
    for (p, name) in d.triangle.vertices().iter().zip(["A", "B", "C"]) {
        svg.point(p, "black", Some(name));
    }
    for (p, name) in d.morley_triangle.iter().zip(["U1", "V1", "W1"]) {
        svg.point(p, "#d62728", Some(name));
    }
    svg.point(&d.second_center, "#1f77b4", Some("second center"));
    svg.finish()
}

/// Morley configuration plus the porism check on its two conics.
/// Exit code 2 when a verdict fails or a chain does not close at 3.
pub fn run_morley(args: &MorleyArgs, tol: &Tolerance, want_svg: bool) -> Result<Outcome<MorleyReport>, IoError> {
    let tri = Triangle::from_affine(parse_triangle::<f64>(&args.triangle)?)?;
    let d = morley_config(&tri, tol)?;
    let porism = porism_check(&d.c1, &d.c2, 3, args.samples, tol)?;
    let circles = match (d.c1.as_circle(tol), d.c2.as_circle(tol)) {
        (Some(a), Some(b)) => Some([a, b]),
        _ => None,
    };
    let concentric = circles.map(|[a, b]| {
        let scale = a.2.max(b.2);
        (a.0 - b.0).hypot(a.1 - b.1) <= 1e-9 * scale.max(1.0)
    });
    let circle_record = |(x, y, r): (f64, f64, f64)| CircleRecord {
        center: [x.to_text(), y.to_text()],
        radius: r.to_text(),
    };
    let report = MorleyReport {
        triangle: tri
            .vertices()
            .iter()
            .zip(["A", "B", "C"])
            .map(|(p, n)| NamedPoint {
                name: n.to_string(),
                coords: affine_text(p),
            })
            .collect(),
        morley_triangle: d
            .morley_triangle
            .iter()
            .zip(["U1", "V1", "W1"])
            .map(|(p, n)| NamedPoint {
                name: n.to_string(),
                coords: affine_text(p),
            })
            .collect(),
        equilateral_spread: d.equilateral_spread.to_text(),
        first_center: affine_text(&d.first_center),
        second_center: affine_text(&d.second_center),
        concurrency_residual: d.concurrency_residual.to_text(),
        flipped: d.flipped,
        verdicts: d
            .conditions
            .named()
            .iter()
            .map(|(name, v)| VerdictRecord::new(name, v))
            .collect(),
        c1: matrix_text(&d.c1),
        c2: matrix_text(&d.c2),
        circles: circles.map(|[a, b]| [circle_record(a), circle_record(b)]),
        concentric,
        porism: PorismRecord::new(&porism),
        provenance: Provenance::new(
            json!({ "triangle": args.triangle, "poncelet_samples": args.samples }),
            Mode::Float,
            tol,
        ),
    };
    let svg = if want_svg {
        let chain = trace_chain(&d.c1, &d.c2, d.config.x1(), 3, tol).ok();
        Some(morley_svg(&d, chain.as_ref()))
    } else {
        None
    };
    let ok = d.conditions.all_hold() && porism.all_closed;
    Ok(Outcome {
        report,
        exit_code: if ok { EXIT_OK } else { EXIT_INCONSISTENT },
        svg,
    })
}

#[derive(Debug, Clone)]
pub struct PonceletArgs {
    /// Six coefficients `x², xy, y², xz, yz, z²`.
    pub outer: String,
    pub inner: String,
    /// `"x,y"` on the outer conic; a point is chosen when absent.
    pub start: Option<String>,
    pub max_steps: usize,
    pub expected_n: Option<usize>,
    pub samples: usize,
}

fn poncelet_svg(c1: &Conic<f64>, c2: &Conic<f64>, chain: &ChainResult) -> String {
    let mut pts = affine_points(&chain.points);
    for c in [c1, c2] {
        if let Some((x, y, r)) = c.as_circle(&Tolerance::default()) {
            pts.extend([(x - r, y - r), (x + r, y + r)]);
        }
    }
    let mut svg = Svg::fit(&pts, SVG_MARGIN);
    svg.conic(c1, "#2ca02c");
    svg.conic(c2, "#9467bd");
    svg.polyline(&affine_points(&chain.points), "#ff7f0e", 1.0);
    if let Some(p) = chain.points.first() {
        svg.point(p, "black", Some("P1"));
    }
    svg.finish()
}

/// Traces one chain and optionally checks the porism.
pub fn run_poncelet(args: &PonceletArgs, tol: &Tolerance, want_svg: bool) -> Result<Outcome<PonceletReport>, IoError> {
    let c1 = Conic::from_coefficients(parse_coefficients::<f64>(&args.outer)?)?;
    let c2 = Conic::from_coefficients(parse_coefficients::<f64>(&args.inner)?)?;
    let start = match &args.start {
        Some(s) => {
            let (x, y) = parse_pair::<f64>(s)?;
            HPoint::affine(x, y)
        }
        None => point_on_conic(&c1, tol)?,
    };
    if args.max_steps < 3 {
        return Err(IoError::Invalid("--max-steps must be at least 3".into()));
    }
    let chain = trace_chain(&c1, &c2, &start, args.max_steps, tol)?;
    let porism = match args.expected_n {
        Some(n) if n < 3 => return Err(IoError::Invalid("--expected-n must be at least 3".into())),
        Some(n) => Some(PorismRecord::new(&porism_check(&c1, &c2, n, args.samples, tol)?)),
        None => None,
    };
    let report = PonceletReport {
        outer: matrix_text(&c1),
        inner: matrix_text(&c2),
        chain: ChainRecord {
            points: chain.points.iter().map(point_text).collect(),
            closure_step: chain.closure_step,
            gap: chain.gap.to_text(),
            tangential: chain.tangential,
        },
        porism,
        provenance: Provenance::new(
            json!({
                "outer": args.outer,
                "inner": args.inner,
                "start": args.start,
                "max_steps": args.max_steps,
                "expected_n": args.expected_n,
                "samples": args.samples,
            }),
            Mode::Float,
            tol,
        ),
    };
    let svg = want_svg.then(|| poncelet_svg(&c1, &c2, &chain));
    Ok(Outcome {
        report,
        exit_code: EXIT_OK,
        svg,
    })
}

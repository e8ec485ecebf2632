//! Machine-readable reports. Every number is serialized as text: `"p/q"` for
//! rationals and the shortest round-trip form for floats, so reports
//! re-parse to identical values.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::scene::Mode;
use crate::conic::{ConconicVerdict, Conic};
use crate::projective::HPoint;
use crate::scalar::{Scalar, Tolerance};

pub type Matrix = [[String; 3]; 3];

pub fn matrix_text<S: Scalar>(c: &Conic<S>) -> Matrix {
    c.matrix().clone().map(|row| row.map(|x| x.to_text()))
}

pub fn point_text<S: Scalar>(p: &HPoint<S>) -> [String; 3] {
    p.coords().clone().map(|x| x.to_text())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub name: String,
    pub holds: bool,
    pub residual: String,
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Matrix>,
}

impl VerdictRecord {
    pub fn new<S: Scalar>(name: &str, v: &ConconicVerdict<S>) -> Self {
        VerdictRecord {
            name: name.to_string(),
            holds: v.holds,
            residual: v.residual.to_text(),
            degenerate: v.degenerate,
            witness: v.witness.as_ref().map(matrix_text),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedPoint {
    pub name: String,
    pub coords: [String; 3],
}

impl NamedPoint {
    pub fn new<S: Scalar>(name: &str, p: &HPoint<S>) -> Self {
        NamedPoint {
            name: name.to_string(),
            coords: point_text(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct ChartRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_equals_q: Option<bool>,
    /// Why the chart could not be formed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub input: serde_json::Value,
    pub mode: Mode,
    pub epsilon: f64,
    pub closure: f64,
}

impl Provenance {
    pub fn new(input: serde_json::Value, mode: Mode, tol: &Tolerance) -> Self {
        Provenance {
            input,
            mode,
            epsilon: tol.eps,
            closure: tol.closure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdicts: Vec<VerdictRecord>,
    /// All four booleans equal.
    pub agree: bool,
    /// Equal after setting aside verdicts that hold only through repeated
    /// points or lines.
    pub consistent: bool,
    pub feet: Vec<NamedPoint>,
    pub chart: ChartRecord,
    pub provenance: Provenance,
}

fn verdict_lines(out: &mut String, verdicts: &[VerdictRecord]) {
    for v in verdicts {
        let _ = writeln!(
            out,
            "  {:<11} {:<6} residual {}{}",
            v.name,
            if v.holds { "holds" } else { "fails" },
            v.residual,
            if v.degenerate { "  (degenerate)" } else { "" }
        );
    }
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode {} (epsilon {:e})", self.provenance.mode, self.provenance.epsilon);
        for f in &self.feet {
            let _ = writeln!(out, "  {:<3} ({})", f.name, f.coords.join(" : "));
        }
        let _ = writeln!(out, "conditions:");
        verdict_lines(&mut out, &self.verdicts);
        let _ = writeln!(
            out,
            "verdicts {}",
            match (self.agree, self.consistent) {
                (true, _) => "agree",
                (false, true) => "agree apart from degenerate ones",
                (false, false) => "DISAGREE",
            }
        );
        match &self.chart.degenerate {
            Some(reason) => {
                let _ = writeln!(out, "chart: degenerate ({reason})");
            }
            None => {
                let s = |x: &Option<String>| x.clone().unwrap_or_default();
                let _ = writeln!(
                    out,
                    "chart: b1 = {}, c2 = {}, p = {}, q = {} ({})",
                    s(&self.chart.b1),
                    s(&self.chart.c2),
                    s(&self.chart.p),
                    s(&self.chart.q),
                    if self.chart.p_equals_q == Some(true) { "p = q" } else { "p != q" }
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PorismRecord {
    pub expected_n: usize,
    pub samples: usize,
    pub all_closed: bool,
    pub max_gap: String,
    pub steps: Vec<Option<usize>>,
}

impl PorismRecord {
    pub fn new(r: &crate::poncelet::PorismReport) -> Self {
        PorismRecord {
            expected_n: r.expected_n,
            samples: r.steps.len(),
            all_closed: r.all_closed,
            max_gap: r.max_gap.to_text(),
            steps: r.steps.clone(),
        }
    }

    fn text(&self, out: &mut String) {
        let closed = self.steps.iter().filter(|s| **s == Some(self.expected_n)).count();
        let _ = writeln!(
            out,
            "porism: {closed}/{} samples close at step {} (max gap {}){}",
            self.samples,
            self.expected_n,
            self.max_gap,
            if self.all_closed { "" } else { "  NOT ALL CLOSED" }
        );
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub center: [String; 2],
    pub radius: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorleyReport {
    pub triangle: Vec<NamedPoint>,
    pub morley_triangle: Vec<NamedPoint>,
    pub equilateral_spread: String,
    pub first_center: [String; 3],
    pub second_center: [String; 3],
    pub concurrency_residual: String,
    pub flipped: [bool; 3],
    pub verdicts: Vec<VerdictRecord>,
    pub c1: Matrix,
    pub c2: Matrix,
    /// Present when both conics are circles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circles: Option<[CircleRecord; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub concentric: Option<bool>,
    pub porism: PorismRecord,
    pub provenance: Provenance,
}

impl MorleyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.morley_triangle {
            let _ = writeln!(out, "{} = ({})", p.name, p.coords.join(" : "));
        }
        let _ = writeln!(out, "equilateral spread {}", self.equilateral_spread);
        let _ = writeln!(out, "first center ({})", self.first_center.join(" : "));
        let _ = writeln!(
            out,
            "second center ({}), concurrency residual {}",
            self.second_center.join(" : "),
            self.concurrency_residual
        );
        let _ = writeln!(out, "conditions:");
        verdict_lines(&mut out, &self.verdicts);
        if let Some([a, b]) = &self.circles {
            let _ = writeln!(
                out,
                "C1 and C2 are circles (radii {} and {}){}",
                a.radius,
                b.radius,
                if self.concentric == Some(true) { ", concentric" } else { "" }
            );
        }
        self.porism.text(&mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub points: Vec<[String; 3]>,
    pub closure_step: Option<usize>,
    pub gap: String,
    pub tangential: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PonceletReport {
    pub outer: Matrix,
    pub inner: Matrix,
    pub chain: ChainRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub porism: Option<PorismRecord>,
    pub provenance: Provenance,
}

impl PonceletReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.chain.closure_step {
            Some(n) => {
                let _ = writeln!(out, "chain closes at step {n} (gap {})", self.chain.gap);
            }
            None => {
                let _ = writeln!(
                    out,
                    "chain does not close within {} steps (smallest gap {})",
                    self.chain.points.len() - 1,
                    self.chain.gap
                );
            }
        }
        if self.chain.tangential {
            let _ = writeln!(out, "note: a link touched the outer conic");
        }
        if let Some(p) = &self.porism {
            p.text(&mut out);
        }
        out
    }
}

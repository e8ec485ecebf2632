use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("homogeneous triple is all zero")]
    ZeroVector,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("points coincide up to scale")]
    CoincidentPoints,
    #[error("lines coincide up to scale")]
    CoincidentLines,
    #[error("the same line appears twice")]
    DuplicateLine,
    #[error("three of the four points are collinear")]
    DegenerateQuadruple,
    #[error("projective map is singular")]
    SingularMap,

    #[error("conic matrix is not symmetric")]
    NotSymmetric,
    #[error("conic matrix is zero")]
    ZeroMatrix,
    #[error("input points are not pairwise distinct")]
    DuplicatePoints,
    #[error("input lines are not pairwise distinct")]
    DuplicateLines,
    #[error("conic through the points is not unique (nullity {nullity})")]
    NonUniqueConic { nullity: usize },
    #[error("conic is degenerate (rank < 3)")]
    DegenerateConic,
    #[error("line is contained in the conic")]
    LineOnConic,
    #[error("result is irrational; use the float backend")]
    IrrationalResult,

    #[error("triangle vertices are collinear")]
    DegenerateTriangle,
    #[error("operation needs finite triangle vertices")]
    NonFiniteVertex,
    #[error("foot {slot} is not a valid point of its side line")]
    FootOffSide { slot: &'static str },
    #[error("cevians coincide")]
    CoincidentCevians,
    #[error("point lies on a side line of the triangle")]
    PointOnSide,
    #[error("point coincides with a triangle vertex")]
    PointAtVertex,
    #[error("no real solution")]
    NoRealSolution,
    #[error("the whole side line satisfies the condition")]
    SideOnConic,
    #[error("exactly one foot must be left unknown")]
    UnknownFootCount,
    #[error("solution lands on a triangle vertex")]
    SolutionAtVertex,
    #[error("chart point {point} is at infinity")]
    ChartDegenerate { point: &'static str },
    #[error(
        "condition verdicts disagree: outer6={outer6} inner6={inner6} \
         tangent6={tangent6} concurrent={concurrent}"
    )]
    InconsistentVerdicts {
        outer6: bool,
        inner6: bool,
        tangent6: bool,
        concurrent: bool,
    },

    #[error("point is not on the conic")]
    BaseNotOnConic,
    #[error("no real tangent line from the point")]
    NoTangentLine,
    #[error("chain link meets the outer conic only at the current point")]
    ChainStuck,
    #[error("chain step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("concurrency residual {residual:e} exceeds tolerance")]
    ConcurrencyViolated { residual: f64 },
    #[error("no trisector labeling produced an equilateral Morley triangle")]
    LabelingSelfCheckFailed,
    #[error("fitted conic misses the sixth {what} (residual {residual:e})")]
    FitCheckFailed { what: &'static str, residual: f64 },
}

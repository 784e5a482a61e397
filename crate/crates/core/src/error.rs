use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("negative part in {0:?}")]
    NegativePart(Vec<i64>),
    #[error("partition {parts:?} has more than {len} nonzero parts")]
    TooManyParts { parts: Vec<u32>, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    Zero,
    #[error("polynomial is not monic (leading coefficient {0})")]
    NotMonic(i128),
    #[error("constant term vanishes; a root of infinite valuation has no polygon slope")]
    ZeroConstantTerm,
    #[error("cannot parse coefficient list {0:?}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("arithmetic overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("polygon widths differ: {0} vs {1}")]
    WidthMismatch(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HornError {
    #[error("need 1 <= p <= n, got n = {n}, p = {p}")]
    BadCardinality { n: usize, p: usize },
    #[error("n = {n} exceeds the configured size limit {limit}")]
    DeskScale { n: usize, limit: usize },
    #[error("index set {elems:?} is not strictly increasing within 1..={n}")]
    BadIndexSet { elems: Vec<usize>, n: usize },
    #[error("triple sets have different cardinalities")]
    CardinalityMismatch,
    #[error("triple violates the trace condition")]
    TraceCondition,
    #[error("vector length {got} differs from ambient size {n}")]
    LengthMismatch { got: usize, n: usize },
    #[error("full index sets have an empty complement")]
    EmptyComplement,
    #[error("s and t must both be positive, got s = {s}, t = {t}")]
    EmptyBlock { s: usize, t: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("matrix must be square and nonempty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("precision exhausted: every remaining entry vanishes modulo {modulus}")]
    PrecisionExhausted { modulus: i128 },
    #[error("modulus {modulus} is not a power of {l}")]
    BadModulus { modulus: i128, l: u64 },
    #[error("precision N = {got} is too small; need at least {need}")]
    PrecisionTooSmall { got: u32, need: u32 },
    #[error("only 2x2 operators are supported, got d = {0}")]
    UnsupportedDimension(usize),
    #[error("block partitions must be nonempty")]
    EmptyBlock,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeilError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {0} is not an even number between 2 and 6")]
    BadDegree(usize),
    #[error("coefficients are not symmetric: coefficient of t^{index} should be {expected}, found {found}")]
    SymmetryViolated { index: usize, expected: i128, found: i128 },
    #[error("root {re:+.6}{im:+.6}i has modulus {modulus:.9}, expected sqrt(q) = {expected:.9}")]
    RootModulus { re: f64, im: f64, modulus: f64, expected: f64 },
    #[error("q = {0} is not a prime power")]
    QNotPrimePower(u64),
    #[error("f(1) = 0: degenerate class")]
    DegenerateOrder,
    #[error("unsupported factorization shape: {0}")]
    UnsupportedShape(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("q = {0} is not a perfect square")]
    QNotSquare(u64),
    #[error("shape precondition failed: {0}")]
    Shape(String),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Horn(#[from] HornError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Top-level error wrapping the per-module errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("PartitionError: {0}")]
    Partition(#[from] PartitionError),
    #[error("PolyError: {0}")]
    Poly(#[from] PolyError),
    #[error("PolygonError: {0}")]
    Polygon(#[from] PolygonError),
    #[error("HornError: {0}")]
    Horn(#[from] HornError),
    #[error("OracleError: {0}")]
    Oracle(#[from] OracleError),
    #[error("WeilError: {0}")]
    Weil(#[from] WeilError),
    #[error("ClassifyError: {0}")]
    Classify(#[from] ClassifyError),
}

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KoszulError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("ambient dimension mismatch ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("structure constants are not associative at basis triple ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit law fails at basis element {0}")]
    BadUnit(usize),
    #[error("bimodules are defined over different algebras")]
    AlgebraMismatch,
    #[error("module is not projective on the requested side")]
    NotProjective,
    #[error("map is not an algebra automorphism (witness basis pair ({0},{1}))")]
    NotAutomorphism(usize, usize),
    #[error("R is not a sub-bimodule (witness basis pair s={0}, r={1})")]
    RNotSubbimodule(usize, usize),
    #[error("M is not free as a right S-module")]
    NotFreeRight,
    #[error("relations are not stable under the braiding (witness s={0}, r={1})")]
    RelationsNotStable(usize, usize),
    #[error("braiding is not bijective")]
    BraidingNotBijective,
    #[error("A is not classically Koszul up to the requested degree")]
    NotClassicallyKoszul,
    #[error("the deformation maps violate the braided equivariance law (witness s={0}, r={1})")]
    EquivarianceFailed(usize, usize),
    #[error("a required right-module splitting does not exist")]
    SplittingMissing,
    #[error("homotopy equation has no solution at degree {0}")]
    HomotopySolveFailed(usize),
    #[error("pdim-2 precondition fails: M o R and R o M intersect nontrivially")]
    Pdim2PreconditionFailed,
    #[error("mode-B checker needs a smash-type presentation (relations of the form R x S)")]
    NotSmashType,
    #[error("no free generator of R found within the trial budget (undecided)")]
    NoFreeGenerator,
    #[error("sigma is not multiplicative at basis pair ({0},{1})")]
    SigmaNotAutomorphism(usize, usize),
    #[error("dim R = {0} but dim S = {1}; R cannot be a twisted regular bimodule")]
    SigmaDimMismatch(usize, usize),
    #[error("e lies outside the admissible space")]
    EOutsideSpace,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

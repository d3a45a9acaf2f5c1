use std::fmt;

use thiserror::Error;

/// Which hypothesis on a representation context failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextLaw {
    OrderNotPartial,
    OrderNotInE,
    ENotEquivalence,
    AlphaNotBijection,
    AlphaNotOrderAutomorphism,
    AlphaNotInE,
    BetaNotBijection,
    BetaNotInvolution,
    BetaNotDualAutomorphism,
    BetaNotInE,
    BetaNotAlphaConjugate,
}

impl fmt::Display for ContextLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ContextLaw::OrderNotPartial => "≤ is not a partial order",
            ContextLaw::OrderNotInE => "≤ is not contained in E",
            ContextLaw::ENotEquivalence => "E is not an equivalence relation",
            ContextLaw::AlphaNotBijection => "α is not a bijection",
            ContextLaw::AlphaNotOrderAutomorphism => "α is not an order automorphism",
            ContextLaw::AlphaNotInE => "α is not contained in E",
            ContextLaw::BetaNotBijection => "β is not a bijection",
            ContextLaw::BetaNotInvolution => "β is not self-inverse",
            ContextLaw::BetaNotDualAutomorphism => "β is not a dual order automorphism",
            ContextLaw::BetaNotInE => "β is not contained in E",
            ContextLaw::BetaNotAlphaConjugate => "β ≠ α;β;α",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("lattice tables must not be supplied; meet and join are derived from leq")]
    LatticeTablesSupplied,
    #[error("not a partial order: {law} fails at {witness:?}")]
    NotAPoset { law: &'static str, witness: Vec<usize> },
    #[error("not a lattice: no {op} for ({a}, {b})")]
    NotALattice { op: &'static str, a: usize, b: usize },
    #[error("no meet for ({0}, {1})")]
    NoMeet(usize, usize),
    #[error("no join for ({0}, {1})")]
    NoJoin(usize, usize),
    #[error("not a monoid: {law} fails at {witness:?}")]
    NotAMonoid { law: &'static str, witness: Vec<usize> },
    #[error("constant 0 = {zero} disagrees with ∼1 = {tilde_one:?} or −1 = {minus_one:?}")]
    ZeroMismatch { zero: usize, tilde_one: Option<usize>, minus_one: Option<usize> },
    #[error("multiplication is not residuated at {witness:?}")]
    NotResiduated { witness: Vec<usize> },
    #[error("an involutive FL-algebra is required: {0}")]
    InFLRequired(&'static str),
    #[error("the linear negations ∼ and − are required")]
    MissingNegations,
    #[error("size {n} is below the minimum {min}")]
    SizeTooSmall { n: usize, min: usize },
    #[error("the outer Sugihara chain must have odd size, got {0}")]
    EvenOuterChain(usize),
    #[error("1 is not totally irreducible: {op} at {args:?}")]
    IdentityNotIrreducible { op: String, args: Vec<usize> },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("pair ({0}, {1}) lies outside E")]
    NotSubsetOfE(usize, usize),
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("relation is not an up-set of E: ({0}, {1}) is missing")]
    NotAnUpset(usize, usize),
    #[error("more than {cap} up-sets")]
    TooManyUpsets { cap: usize },
    #[error("invalid representation context: {law} at {witness:?}")]
    InvalidContext { law: ContextLaw, witness: Vec<usize> },
    #[error("no candidate pool: {0}")]
    PoolUnavailable(String),
    #[error("embedding invalid: {0}")]
    EmbeddingInvalid(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::dihedral::DihedralElement;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed element {0:?}; expected `1`, `b`, `a^K` or `a^K b`")]
    Element(String),
    #[error("modulus must be at least 2, got {0}")]
    Modulus(u32),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unknown family tag {0:?}")]
    FamilyTag(String),
}

/// Violated invariant of a Cayley map cycle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("cycle has {0} entries; a Cayley map needs valency at least 2")]
    EmptyOrShort(usize),
    #[error("cycle contains the identity at position {0}")]
    ContainsIdentity(usize),
    #[error("element {0} occurs more than once in the cycle")]
    Duplicates(DihedralElement),
    #[error("generating set is not closed under inverses: {0} has no inverse in the cycle")]
    NotInverseClosed(DihedralElement),
    #[error("generating set spans a subgroup of order {0}, not the whole group")]
    NotGenerating(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("skew-morphism tables are incomplete: no {table} value for {element}")]
    TablesIncomplete { table: &'static str, element: DihedralElement },
}

/// The two regularity (or reflexibility) deciders disagree. Always a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("oracle disagreement on {what}: algebraic={algebraic}, flags={flags}")]
pub struct OracleDisagreement {
    pub what: &'static str,
    pub algebraic: bool,
    pub flags: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReflexError {
    #[error("map is not regular")]
    NotRegular,
    #[error(transparent)]
    Oracle(#[from] OracleDisagreement),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family {tag} is not defined for n = {n}: {reason}")]
    BadParameters { tag: String, n: u32, reason: String },
    #[error("family {tag} at n = {n} failed certification: {reason}")]
    CertificationFailure { tag: String, n: u32, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("map is not reflexible regular")]
    NotReflexibleRegular,
    #[error(transparent)]
    Oracle(#[from] OracleDisagreement),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("map is not regular")]
    NotRegular,
    #[error("subgroup is not contained in the rotation subgroup")]
    NotRotationSubgroup,
    #[error("cosets of the subgroup do not form a block system for the map")]
    NotBlockSystem,
    #[error("quotient is degenerate: {0}")]
    DegenerateQuotient(String),
    #[error("quotient cycle is not well defined: {0}")]
    NotWellDefined(String),
    #[error(transparent)]
    Oracle(#[from] OracleDisagreement),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("n = {n} exceeds the enumeration bound {bound}{hint}")]
    BoundExceeded { n: u32, bound: u32, hint: &'static str },
    #[error(transparent)]
    Oracle(#[from] OracleDisagreement),
}

/// Failure reading a map file.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
}

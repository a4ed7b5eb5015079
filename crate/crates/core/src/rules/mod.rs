//! Winner determination: the D'Hondt extensions and the comparison rules.

mod approval;
mod cc;
pub mod divisor;
mod monroe;
mod odh;
mod oodh;
mod report;
pub mod subsets;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::Election;
use crate::support::{SolverPath, SupportError};

pub use approval::{av, mav, pav, sav};
pub use cc::{ccha, ccra, mha, mra};
pub use divisor::{divisor_apportionment, Apportionment, DivisorSequence};
pub use monroe::{monroe_assignment, MonroeAssignment};
pub use odh::{odh, rav};
pub use oodh::oodh;
pub use report::{IterationRecord, WinnerReport};

/// Default limit on the number of committees a subset-scanning rule visits.
pub const DEFAULT_SUBSET_CAP: u64 = 1_000_000;
/// Default limit on the size of an enumerated tie family.
pub const DEFAULT_TIE_CAP: usize = 64;
/// Environment variable overriding [`DEFAULT_SUBSET_CAP`].
pub const SUBSET_CAP_VAR: &str = "APPROVAL_DHONDT_SUBSET_CAP";
/// Environment variable overriding [`DEFAULT_TIE_CAP`].
pub const TIE_CAP_VAR: &str = "APPROVAL_DHONDT_TIE_CAP";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TieMode {
    /// Ties go to the smallest roster index (lexicographically least set).
    #[default]
    Deterministic,
    /// Every outcome reachable under some tie-break.
    Enumerated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleConfig {
    pub tie_mode: TieMode,
    pub subset_cap: u64,
    pub tie_cap: usize,
    pub solver: SolverPath,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            tie_mode: TieMode::Deterministic,
            subset_cap: DEFAULT_SUBSET_CAP,
            tie_cap: DEFAULT_TIE_CAP,
            solver: SolverPath::Flow,
        }
    }
}

impl RuleConfig {
    pub fn enumerated() -> Self {
        RuleConfig {
            tie_mode: TieMode::Enumerated,
            ..Default::default()
        }
    }

    pub fn with_ties(mut self, mode: TieMode) -> Self {
        self.tie_mode = mode;
        self
    }

    /// Defaults, with caps taken from the environment when set.
    pub fn from_env() -> Self {
        let mut cfg = RuleConfig::default();
        if let Some(v) = std::env::var(SUBSET_CAP_VAR).ok().and_then(|s| s.parse().ok()) {
            cfg.subset_cap = v;
        }
        if let Some(v) = std::env::var(TIE_CAP_VAR).ok().and_then(|s| s.parse().ok()) {
            cfg.tie_cap = v;
        }
        cfg
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("instance has {subsets} committees to scan, above the cap {cap}")]
    InstanceTooLarge { subsets: u128, cap: u64 },
    #[error("winner set has {got} members but {expected} seats are filled")]
    SeatsMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Support(#[from] SupportError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Odh,
    Oodh,
    Av,
    Sav,
    Mav,
    Rav,
    Pav,
    Ccha,
    Ccra,
    Mha,
    Mra,
}

impl Rule {
    pub const ALL: [Rule; 11] = [
        Rule::Odh,
        Rule::Oodh,
        Rule::Av,
        Rule::Sav,
        Rule::Mav,
        Rule::Rav,
        Rule::Pav,
        Rule::Ccha,
        Rule::Ccra,
        Rule::Mha,
        Rule::Mra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Odh => "odh",
            Rule::Oodh => "oodh",
            Rule::Av => "av",
            Rule::Sav => "sav",
            Rule::Mav => "mav",
            Rule::Rav => "rav",
            Rule::Pav => "pav",
            Rule::Ccha => "ccha",
            Rule::Ccra => "ccra",
            Rule::Mha => "mha",
            Rule::Mra => "mra",
        }
    }

    /// Whether the rule picks winners one at a time.
    pub fn is_sequential(self) -> bool {
        matches!(self, Rule::Odh | Rule::Rav)
    }

    pub fn run(self, e: &Election, cfg: &RuleConfig) -> Result<WinnerReport, RuleError> {
        match self {
            Rule::Odh => odh(e, cfg),
            Rule::Oodh => oodh(e, cfg),
            Rule::Av => Ok(av(e, cfg)),
            Rule::Sav => Ok(sav(e, cfg)),
            Rule::Mav => mav(e, cfg),
            Rule::Rav => Ok(rav(e, cfg)),
            Rule::Pav => pav(e, cfg),
            Rule::Ccha => ccha(e, cfg),
            Rule::Ccra => ccra(e, cfg),
            Rule::Mha => mha(e, cfg),
            Rule::Mra => mra(e, cfg),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == lower)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

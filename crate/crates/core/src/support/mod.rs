//! Support distribution functions, the max-min support optimum, kernels and
//! the support-transfer improvement step.

mod distribution;
mod flow;
mod kernel;
mod maxmin;
pub mod simplex;

use thiserror::Error;

pub use distribution::{validate_distribution, DistributionVerdict, SupportDistribution, SupportVector};
pub use kernel::{improve_distribution, kernel_of, kernel_trace, tight_kernel, Improvement, Transfer};
pub use maxmin::{
    hall_ratio_maxmin, maxmin_support, maxmin_support_with, maxmin_value, MaxMinResult, SolverPath,
    DEFAULT_HALL_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupportError {
    #[error("target set is empty")]
    EmptyTargetSet,
    #[error("candidate index {0} is outside the roster")]
    UnknownCandidate(usize),
    #[error("target set has {size} candidates, above the enumeration cap {cap}")]
    TargetSetTooLarge { size: usize, cap: usize },
    #[error("candidate {0} is not among the least supported")]
    NotLeastSupported(usize),
    #[error("no tight kernel exists: the witness is not optimal")]
    NoTightKernel,
    #[error(transparent)]
    Lp(#[from] simplex::LpError),
}

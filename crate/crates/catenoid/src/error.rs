use thiserror::Error;

/// Errors shared by every numerical module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input lies outside an operation's documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive refinement exhausted its evaluation budget before the
    /// requested tolerance was met.
    #[error(
        "evaluation budget exhausted after {used} evaluations \
         (unresolved error {unresolved:.3e}, tolerance {tolerance:.3e})"
    )]
    BudgetExceeded {
        used: u64,
        unresolved: f64,
        tolerance: f64,
    },

    /// A root bracket without a sign change.
    #[error("invalid bracket [{lo}, {hi}]: g(lo) = {g_lo:.6e}, g(hi) = {g_hi:.6e} do not differ in sign")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    /// An integrand on a semi-infinite interval violated its declared
    /// exponential decay bound at the truncation point.
    #[error(
        "integrand violates its decay bound at t = {at}: |f(t)| = {observed:.6e} > {bound:.6e}"
    )]
    NonDecaying { at: f64, observed: f64, bound: f64 },

    /// The requested configuration has no solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A computation finished without a usable verdict (e.g. a suspected
    /// tangency in an intersection scan).
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A NaN or infinity appeared where a finite value was required.
    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

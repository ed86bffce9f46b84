use thiserror::Error;

/// One violated scenario invariant.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    /// Field (or field pair) the rule constrains.
    pub field: &'static str,
    pub rule: &'static str,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{function}: argument {arg} outside the domain")]
    Domain { function: &'static str, arg: f64 },

    #[error("{function}: result for argument {arg} is not representable")]
    Range { function: &'static str, arg: f64 },

    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    Quadrature { estimate: f64, error_bound: f64 },

    #[error("invalid parameters: {}", join(.0))]
    Validation(Vec<Violation>),

    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;

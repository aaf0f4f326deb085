use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient is not finite")]
    NonFinite,
    #[error("coefficients must be nonnegative")]
    NegativeCoefficient,
    #[error("{0} polynomial is identically zero")]
    ZeroPolynomial(&'static str),
    #[error("canonical form needs all six coefficients positive")]
    ZeroCoefficient,
    #[error("impedance is not in the five-element bridge class")]
    NotInZb,
    #[error("realizability condition for {0} does not hold")]
    ConditionNotMet(String),
    #[error("no admissible root for {0}")]
    NoAdmissibleRoot(String),
    #[error("numeric search for {0} found no realization")]
    SearchExhausted(String),
    #[error("unknown configuration '{0}'")]
    UnknownConfiguration(String),
    #[error("missing or invalid element value '{0}'")]
    BadValue(String),
    #[error("network impedance is not biquadratic")]
    NotBiquadratic,
    #[error("invalid range: {0}")]
    BadRange(String),
}

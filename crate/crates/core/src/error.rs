use core::fmt;

/// Failure modes of the simulator's numerical and physical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The operator handed to a Hermitian routine is not Hermitian.
    NotHermitian { max_deviation: f64 },
    /// The Kraus set does not satisfy `Σ K†K = I`.
    NotTracePreserving { max_deviation: f64 },
    /// A matrix failed the density-operator checks (Hermitian, unit trace, PSD).
    InvalidDensity(&'static str),
    /// A closed-form expression is singular at the requested parameters.
    DegenerateFormulation(&'static str),
    /// Durations and total times must be strictly positive.
    NonPositiveTime,
    /// Pulse-step duration must be strictly positive.
    NonPositiveTau,
    /// A parameter is outside its allowed domain.
    InvalidParameter(&'static str),
    /// Decoherence times violate `t1 >= t2 / 2`.
    Unphysical { t1: f64, t2: f64 },
    /// The input has no deviation from the maximally mixed state.
    DegenerateDeviation,
    /// Operation requires a schedule of a different mode.
    ScheduleMode(&'static str),
    /// A ket of zero norm cannot be normalized.
    ZeroNorm,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { max_deviation } => {
                write!(f, "operator is not Hermitian (max |A - A^dagger| = {max_deviation:e})")
            }
            Error::NotTracePreserving { max_deviation } => {
                write!(f, "Kraus operators are not trace preserving (max |sum K^dagger K - I| = {max_deviation:e})")
            }
            Error::InvalidDensity(why) => write!(f, "invalid density operator: {why}"),
            Error::DegenerateFormulation(why) => write!(f, "degenerate closed form: {why}"),
            Error::NonPositiveTime => f.write_str("time must be strictly positive"),
            Error::NonPositiveTau => f.write_str("step duration tau must be strictly positive"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::Unphysical { t1, t2 } => {
                write!(f, "unphysical decoherence times: t1 = {t1} s < t2 / 2 = {} s", t2 / 2.0)
            }
            Error::DegenerateDeviation => f.write_str("state is maximally mixed; no deviation part to extract"),
            Error::ScheduleMode(why) => write!(f, "wrong schedule mode: {why}"),
            Error::ZeroNorm => f.write_str("cannot normalize a zero vector"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

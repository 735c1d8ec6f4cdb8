use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Parameter names, used to report which constraint failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    N,
    Gamma,
    Delta,
    Zeta,
    Beta,
    S,
    Tau,
    Xi,
    /// `floor(n^zeta) >= delta`
    MaxDegree,
    /// `floor(n^tau) >= s`
    MaxCommunity,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::N => "n",
            Field::Gamma => "gamma",
            Field::Delta => "delta",
            Field::Zeta => "zeta",
            Field::Beta => "beta",
            Field::S => "s",
            Field::Tau => "tau",
            Field::Xi => "xi",
            Field::MaxDegree => "max_degree",
            Field::MaxCommunity => "max_community",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A model parameter lies outside its admissible range.
    Range(Field),
    /// Argument outside the support or domain of a function.
    Domain(&'static str),
    /// No community can host the given node (or no community fits at all).
    Infeasible { node: Option<usize> },
    /// The degree sum handed to the pairing model is odd.
    Parity,
    /// Edge switching ran out of sweeps with conflicts left.
    NotSimple { conflicts: usize },
    /// The requested node set is not connected.
    NotConnected,
    /// Modularity and clustering are undefined without edges.
    EmptyGraph,
    Precondition(&'static str),
    /// A partition failed to reach its guaranteed modularity.
    BoundViolated { q: f64, bound: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Range(field) => write!(f, "parameter `{field}` out of range"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Infeasible { node: Some(node) } => {
                write!(f, "no admissible community with free capacity for node {node}")
            }
            Error::Infeasible { node: None } => f.write_str("infeasible community sizes"),
            Error::Parity => f.write_str("sum of weights is odd"),
            Error::NotSimple { conflicts } => {
                write!(f, "edge switching left {conflicts} loops or parallel edges")
            }
            Error::NotConnected => f.write_str("node set is not connected"),
            Error::EmptyGraph => f.write_str("graph has no edges"),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::BoundViolated { q, bound } => {
                write!(f, "modularity {q} is below the guaranteed bound {bound}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

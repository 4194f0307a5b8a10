use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Unsupported,
    Compute,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Usage, message: m.into() }
    }

    pub fn unsupported(m: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Unsupported, message: m.into() }
    }

    pub fn compute(m: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Compute, message: m.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Usage => 2,
            ErrorKind::Unsupported => 3,
            ErrorKind::Compute => 4,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ErrorKind::Usage => "usage",
            ErrorKind::Unsupported => "unsupported-type",
            ErrorKind::Compute => "compute",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<framedcb::Error> for CliError {
    fn from(e: framedcb::Error) -> Self {
        use framedcb::Error as E;
        match &e {
            E::UnsupportedType(_) => CliError::unsupported(e.to_string()),
            E::InvalidDatum(_) | E::NotDominant | E::Parse(_) | E::InvalidArgument(_) => CliError::usage(e.to_string()),
            _ => CliError::compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::compute(format!("i/o: {e}"))
    }
}

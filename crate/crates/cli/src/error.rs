use std::fmt;

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const USAGE: u8 = 2;
    pub const COMPUTE: u8 = 1;

    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: Self::USAGE, message: message.into() }
    }

    pub fn compute(message: impl Into<String>) -> Self {
        CliError { code: Self::COMPUTE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<reductminer::Error> for CliError {
    fn from(e: reductminer::Error) -> Self {
        use reductminer::Error::*;
        let code = match e {
            Io { .. } | Csv(_) | Json(_) | MissingHeader | EmptyUniverse | MalformedRow { .. } | BadNumber { .. }
            | Schema(_) | UnknownAttribute(_) | Binning { .. } | InvalidCondition { .. } | DuplicateCondition(_)
            | ContinuousAttribute(_) => Self::USAGE,
            EmptyAttributeSet | AttributeOutOfRange { .. } | MatrixTooLarge { .. } | ZeroCounts | Invalid(_) => Self::COMPUTE,
        };
        CliError { code, message: e.to_string() }
    }
}

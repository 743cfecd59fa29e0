use latcover::input::InputError;
use latcover::LatticeError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("render draws 2D lattices only, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("oracle cross-check disagrees with the result")]
    VerifyFailed,
    #[error("write failed: {0}")]
    Io(String),
    /// Already printed by the argument parser.
    #[error("usage error")]
    Reported,
}

impl CliError {
    /// 1 for domain errors and failed verification, 2 for usage and parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lattice(_)
            | CliError::Input(InputError::Lattice(_))
            | CliError::VerifyFailed
            | CliError::Io(_)
            | CliError::UnsupportedDimension(_) => 1,
            CliError::Usage(_) | CliError::Input(_) | CliError::Reported => 2,
        }
    }
}

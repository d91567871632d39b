use std::path::PathBuf;

/// What a command writes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Matrix,
    Report,
    Both,
}

/// How gem states are grouped into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingChoice {
    /// Discover pairs from the coupling graph; isolated states pair up in
    /// ascending order.
    Ascending,
    /// Use the pairs listed in a JSON file `[[j, k], ...]`.
    Custom(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Basis { d: usize },
    Classify,
    Transform { t: f64, check_oracle: bool },
    Blocks { t: f64 },
    Evolve { t_final: f64, check_oracle: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    /// Relative coupling threshold: entries above `tol · max(1, max |M_ij|)`
    /// count as couplings.
    pub tol: f64,
    pub pairing: PairingChoice,
    pub output_path: Option<PathBuf>,
    /// `None` picks the command's default.
    pub emit: Option<Emit>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input_path: None,
            tol: 1e-10,
            pairing: PairingChoice::Ascending,
            output_path: None,
            emit: None,
        }
    }
}

use crate::par::Execution;

pub const DEFAULT_FPP_CAP: u64 = 10_000_000;
pub const DEFAULT_BOX_CAP: u64 = 100_000_000;
pub const DEFAULT_IDP_CAP: u64 = 1_000_000;

/// Feasibility caps and execution policy shared by the heavy computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest normalized volume whose parallelepiped is enumerated.
    pub fpp_cap: u64,
    /// Largest bounding box scanned by the dilate-counting oracle.
    pub box_cap: u64,
    /// Largest normalized volume for which IDP is decided.
    pub idp_cap: u64,
    pub execution: Execution,
    /// When false, h* always goes through generic enumeration.
    pub fast_paths: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            fpp_cap: DEFAULT_FPP_CAP,
            box_cap: DEFAULT_BOX_CAP,
            idp_cap: DEFAULT_IDP_CAP,
            execution: Execution::default(),
            fast_paths: true,
        }
    }
}

impl Config {
    pub fn sequential(self) -> Self {
        Self { execution: Execution::Sequential, ..self }
    }
}

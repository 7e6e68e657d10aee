//! Exhaustive analysis of networks.
//!
//! Statistics are exact over all `N!` permutations of `1..=N`; sortedness and
//! settledness are decided on the `2^N` 0-1 vectors. Enumeration runs in
//! parallel but results do not depend on the thread count.

mod correlate;
pub mod enumerate;
pub mod rational;
mod stats;
mod verify;

pub use correlate::JointTable;
pub use rational::Rational;
pub use stats::{ElementStats, StatsReport, WORST_INPUTS_KEPT};
pub use verify::settled_by_permutations;

use crate::network::{InvalidNetwork, Network};

/// Environment variable overriding the permutation-enumeration cap.
pub const MAX_ORDER_ENV: &str = "CEN_MAX_ORDER";

/// Enumeration caps. Permutation work grows as `N!`, 0-1 work as `2^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_permutation_order: usize,
    pub max_binary_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_permutation_order: 10,
            max_binary_order: 16,
        }
    }
}

impl Limits {
    /// Defaults, with the permutation cap taken from `CEN_MAX_ORDER` if set.
    pub fn from_env() -> Limits {
        let mut l = Limits::default();
        if let Some(n) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            l.max_permutation_order = n;
        }
        l
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("order {order} exceeds the {what} enumeration cap of {cap}")]
    LimitExceeded {
        order: usize,
        cap: usize,
        what: &'static str,
    },
    #[error(transparent)]
    Invalid(#[from] InvalidNetwork),
    #[error("element index {index} out of range (network has {len} elements)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("element {0} is not a plain link")]
    NotALink(usize),
    #[error("links {first} and {second} share no wire")]
    NoSharedWire { first: usize, second: usize },
    #[error("links {first} and {second} share both wires")]
    SharesBothWires { first: usize, second: usize },
    #[error("element {first} must precede element {second}")]
    NotOrdered { first: usize, second: usize },
    #[error("{what} {value} outside 1..={order}")]
    RankOutOfRange {
        what: &'static str,
        value: usize,
        order: usize,
    },
}

/// Entry point for all analyses. Cheap to construct and `Sync`.
#[derive(Debug, Clone, Default)]
pub struct Engine {
    limits: Limits,
    threads: Option<usize>,
}

impl Engine {
    pub fn new() -> Engine {
        Engine::default()
    }

    pub fn with_limits(mut self, limits: Limits) -> Engine {
        self.limits = limits;
        self
    }

    /// Runs enumerations on a dedicated pool of `n` threads.
    pub fn with_threads(mut self, n: usize) -> Engine {
        self.threads = Some(n.max(1));
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.threads {
            None => f(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(f),
        }
    }

    fn check_permutation(&self, network: &Network) -> Result<(), EngineError> {
        network.validate().map_err(InvalidNetwork)?;
        if network.order() > self.limits.max_permutation_order {
            return Err(EngineError::LimitExceeded {
                order: network.order(),
                cap: self.limits.max_permutation_order,
                what: "permutation",
            });
        }
        Ok(())
    }

    fn check_binary(&self, network: &Network) -> Result<(), EngineError> {
        network.validate().map_err(InvalidNetwork)?;
        if network.order() > self.limits.max_binary_order {
            return Err(EngineError::LimitExceeded {
                order: network.order(),
                cap: self.limits.max_binary_order,
                what: "0-1",
            });
        }
        Ok(())
    }
}

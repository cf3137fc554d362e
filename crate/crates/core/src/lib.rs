//! Exact chain-rule engine for polynomial functors on graded rational vector
//! spaces, modelled through symmetric sequences of graded characters.

pub mod characters;
pub mod error;
pub mod functor;
pub mod holim;
pub mod laurent;
pub mod multi;
pub mod partitions;
pub mod perm;
pub mod random;
pub mod symfun;
pub mod symseq;
pub mod trace;
pub mod verify;
pub mod wreath;

pub use characters::{Character, GradedCharacter};
pub use error::{Error, Result};
pub use functor::{PolyFunctor, TowerSlice};
pub use laurent::{GradedDim, Laurent, Rat, SignMode};
pub use multi::{MultiCharacter, MultiFunctor};
pub use partitions::{BlockStructure, Partition, PiPoset};
pub use symfun::{PowerSumPoly, RationalSeries};
pub use symseq::{Cell, ShiftResult, SymSeq};

/// Settings shared by most computations.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub sign: SignMode,
    /// Largest arity that is computed.
    pub bound: usize,
    /// Deliberately breaks `compose` (drops the `lambda = (1^n)` summand) so
    /// that the verification battery can prove it detects faults.
    pub corrupt_compose: bool,
}

impl Ctx {
    pub fn new(sign: SignMode, bound: usize) -> Self {
        Self {
            sign,
            bound,
            corrupt_compose: false,
        }
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Self::new(SignMode::Unsigned, 6)
    }
}

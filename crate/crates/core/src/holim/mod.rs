//! Homotopy limits in the split model: a label-tracking engine for diagrams
//! of projections and an explicit linear-algebra oracle.

pub mod linalg;
pub mod linear;
pub mod realize;
pub mod section5;
pub mod split;
pub mod tn;

pub use linear::{derived_limits, linear_limit, LinearDiagram, LinearLimit};
pub use realize::Realization;
pub use section5::section5_p3_limit;
pub use split::{pi_diagram, split_limit, SplitDiagram, SplitLimit};
pub use tn::{t_n_oracle, TnReport};

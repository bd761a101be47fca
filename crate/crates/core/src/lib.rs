//! Stutter-invariant paths and the behavioural equivalences they induce.
//!
//! * [`paths`]: paths, stutter bases, stutter classes and the prefix order.
//! * [`lts`]: labelled transition systems with branching, weak, eta and
//!   delay bisimulation by signature refinement, plus a relational oracle.
//! * [`fps`]: fully probabilistic systems with exact-rational reachability
//!   and probabilistic delay bisimulation.
//! * [`valuation`]: finitely generated upper sets of paths, the path
//!   valuation and the induced measure on stutter classes.

pub mod error;
pub mod fps;
pub mod generate;
pub mod lts;
pub mod partition;
pub mod paths;
pub mod rational;
pub mod valuation;

pub use error::{DomainError, Error, ParseError, Result};
pub use partition::Partition;
pub use paths::{Action, Label, Path, StateId, StutterBasis, StutterClass, Word};
pub use rational::Rational;

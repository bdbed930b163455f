//! Spin planar algebra engine.
//!
//! [`SpinElement`] is the universal value type. The [`tangle`] module holds the
//! generating tangle operations, [`qit`] converts quantum-information objects
//! to biunitary elements and certifies them, and [`subfactor`] builds the
//! planar subalgebra generated by a biunitary, level by level.

pub mod basis;
pub mod color;
pub mod context;
pub mod element;
pub mod error;
pub mod numerics;
pub mod parallel;
pub mod qit;
pub mod relations;
pub mod subfactor;
pub mod tangle;

pub use basis::SpinBasisIndex;
pub use color::{Shading, SpinColor};
pub use context::SpinContext;
pub use element::{SpinElement, C64};
pub use error::{Result, SpinError};
pub use numerics::ComplexMatrix;
pub use parallel::Execution;

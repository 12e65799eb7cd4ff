//! Exact verification of fermionic Howe dualities on a finite Fock space.

pub mod duality;
pub mod error;
pub mod fock;
pub mod lie;
pub mod linalg;
pub mod operator;
pub mod ph;
pub mod pin;
pub mod report;
pub mod scalar;
pub mod young;

pub use duality::{joint_hw_oracle, pin_check, sigma_sign_check, verify_duality, JointHWVector};
pub use error::{Error, Result};
pub use fock::{Family, FieldOp, FockState, ModeIndex, ModelParams};
pub use operator::{FockVector, SparseOperator};
pub use ph::{ShellKinds, ShellParams};
pub use report::{Check, DualityReport, PairReport};
pub use scalar::{Amplitude, Field, Ring, Q};
pub use young::{enumerate_frame_pairs, Duality, FramePair, Label};

//! Realizability tests and element-value synthesis for biquadratic
//! impedances as five-element bridge RLC networks.

pub mod biquad;
pub mod canonical;
pub mod classify;
pub mod error;
pub mod forward;
pub mod par;
pub mod poly;
pub mod region;
pub mod synth;
pub mod tolerance;
pub mod topology;

pub use biquad::{Biquadratic, InvariantSet, MembershipVerdict};
pub use classify::{classify, ClassificationReport, FiveElementVerdict};
pub use error::Error;
pub use synth::{synthesize, SynthesisOutcome};
pub use topology::{ConfigId, Realization};

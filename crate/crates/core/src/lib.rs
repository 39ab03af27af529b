//! Time-frequency diffusion for complex-valued time series.
//!
//! The crate covers the full pipeline for a diffusion process that corrupts
//! a complex signal with additive noise in the time domain and Gaussian
//! blurring in the frequency domain, and restores it with a learned reverse
//! chain:
//!
//! - [`signal`]: complex sequence container, unitary DFT, preprocessing and
//!   quality metrics (complex SSIM, SNR), plus the `CSEQ1` file format.
//! - [`schedule`]: per-step diffusion coefficients (noise and blur schedules,
//!   cumulative signal weights and noise deviations) with convergence checks.
//! - [`forward`]: stepwise and closed-form destruction of a signal.
//! - [`reverse`]: posterior parameters, training objective, and the
//!   iterative sampler.
//! - [`nn`]: complex-valued network building blocks (linear, split
//!   activation, magnitude-phase attention, adaptive layer norm, phase
//!   modulation encoding), the attention-based diffusion block, the
//!   two-stage hierarchical model, and a tape-based reverse-mode
//!   differentiation engine that trains them.
//! - [`trainer`]: optimizer, EMA, checkpointing, metric logging, evaluation.
//! - [`datagen`]: deterministic synthetic multipath/chirp corpora.

pub mod datagen;
pub mod forward;
pub mod nn;
pub mod reverse;
pub mod rng;
pub mod schedule;
pub mod signal;
pub mod trainer;

pub use signal::{ComplexSequence, Spectrum};
pub use schedule::{DiffusionSchedule, ScheduleConfig};

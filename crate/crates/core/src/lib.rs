//! Toolbox for QC-LDPC and QC-MDPC code-based McEliece cryptosystems and the
//! reaction attacks against them.
//!
//! The crate is organised around the lifecycle of a reaction-attack
//! experiment:
//!
//! * [`ring`] — arithmetic in GF(2)\[x\]/(x^p+1), the polynomial view of
//!   binary circulant blocks, plus block matrices of ring elements;
//! * [`spectrum`] — circular distances and distance spectra, the observable
//!   every attack estimates;
//! * [`code`] — system parameters, key generation, error sampling and
//!   encryption;
//! * [`decoder`] — syndrome computation, bit-flipping and Q-decoding,
//!   decryption and failure-rate estimation;
//! * [`attack`] — the decryption-failure oracle and the GJS / FHS+ / FHZ
//!   tally-collection procedures with multiplicity classification;
//! * [`reconstruct`] — distance-spectrum reconstruction (clique search),
//!   the three key-recovery pipelines and a Prange ISD routine;
//! * [`workfactor`] — closed-form attack cost evaluation and parameter-set
//!   validation.
//!
//! All randomised routines take explicit seeds and are deterministic for a
//! fixed seed, independently of the number of worker threads.

pub mod attack;
pub mod bits;
pub mod code;
pub mod decoder;
pub mod error;
mod par;
pub mod presets;
pub mod reconstruct;
pub mod ring;
pub mod spectrum;
pub mod stats;
pub mod workfactor;

pub use error::{Error, Result};

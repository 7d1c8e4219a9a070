//! Named parameter profiles.
//!
//! `fig1` and `fig2` are the two headline system instances (Q-decoded
//! QC-LDPC at p = 4801 and BF-decoded QC-LDPC at p = 2003); the `toy-*`
//! profiles are desk-scale operating points tuned so that decoding failure
//! rates land in the regime where reaction experiments finish in seconds.

use crate::code::SystemParams;
use crate::error::{Error, Result};

pub fn by_name(name: &str) -> Result<SystemParams> {
    match name {
        "fig1" => SystemParams::new(2, 4801, 9, vec![2, 3], 95),
        "fig2" => SystemParams::new(3, 2003, 7, vec![3, 2, 2], 12),
        // QC-MDPC banding / end-to-end GJS target
        "toy-mdpc" => SystemParams::mdpc(2, 587, 15, 28),
        // low-DFR round-trip preset
        "toy-mdpc-low" => SystemParams::mdpc(2, 587, 15, 18),
        // Q-decoder vs BF-on-Htilde comparison point
        "toy-ldpc-q" => SystemParams::new(2, 509, 7, vec![1, 2], 12),
        // BF on the private LDPC code (negative control)
        "toy-ldpc-bf" => SystemParams::new(2, 887, 5, vec![1, 2], 10),
        // FHZ execution scale
        "toy-fhz" => SystemParams::new(2, 101, 5, vec![1, 2], 3),
        // FHS+ plant / enumeration scale
        "toy-fhs" => SystemParams::new(2, 53, 3, vec![1, 2], 2),
        _ => Err(Error::InvalidParams(format!("unknown preset {name:?}"))),
    }
}

pub const NAMES: &[&str] = &[
    "fig1",
    "fig2",
    "toy-mdpc",
    "toy-mdpc-low",
    "toy-ldpc-q",
    "toy-ldpc-bf",
    "toy-fhz",
    "toy-fhs",
];

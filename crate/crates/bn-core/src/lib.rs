//! Exact combinatorics of skew tableaux, Brill-Noether graphs, valid sequences
//! and the elliptic-chain model of one-dimensional Brill-Noether loci.
//!
//! Everything is exact: counts are big integers and expectations are big
//! rationals. Floats only appear in Monte Carlo summaries.

use std::sync::atomic::{AtomicUsize, Ordering};

pub mod bn_curve;
pub mod bn_graph;
pub mod counting;
pub mod error;
pub mod graph;
pub mod pontableaux;
mod serde_util;
pub mod shapes;
pub mod sweep;
pub mod tableaux_paths;
pub mod verify;

pub use error::{BnError, Result};

/// Default bound on the size of anything materialized by enumeration.
pub const DEFAULT_ENUM_CAP: usize = 12;

static ENUM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUM_CAP);

/// Current enumeration cap (boxes for shapes, genus for sequences).
pub fn enum_cap() -> usize {
    ENUM_CAP.load(Ordering::Relaxed)
}

/// Replace the process-wide enumeration cap.
pub fn set_enum_cap(cap: usize) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_cap(size: usize) -> Result<()> {
    let cap = enum_cap();
    if size > cap {
        Err(BnError::TooLarge { size, cap })
    } else {
        Ok(())
    }
}

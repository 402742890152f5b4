//! Fixed inputs shared by the benchmarks.

use vanset::catalog::{make, NamedGroup};

/// Groups spanning the desk-scale range, smallest first.
pub fn sample_groups() -> Vec<NamedGroup> {
    ["symmetric:4", "psl2:7", "alternating:6", "m11"]
        .iter()
        .map(|s| make(s).expect("catalog spec"))
        .collect()
}

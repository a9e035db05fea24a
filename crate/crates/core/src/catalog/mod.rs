//! Named benchmark problems.
//!
//! ```
//! let g24 = cohort_core::catalog::lookup("g24").unwrap();
//! assert_eq!(g24.dimension(), 2);
//! assert!(cohort_core::catalog::lookup("G13").is_err());
//! ```

pub mod deep_drawing;
pub mod design;
pub mod gsuite;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

/// Integer powers by repeated multiplication, so results do not depend on
/// whether `std` is linked.
pub(crate) trait IntPow {
    fn ipow(self, n: u32) -> f64;
}

impl IntPow for f64 {
    fn ipow(self, n: u32) -> f64 {
        (0..n).fold(1.0, |acc, _| acc * self)
    }
}

/// Every catalog name, in listing order.
pub const NAMES: [&str; 23] = [
    "G01",
    "G02",
    "G03",
    "G04",
    "G05",
    "G06",
    "G07",
    "G08",
    "G09",
    "G10",
    "G11",
    "G12",
    "G14",
    "G15",
    "G17",
    "G18",
    "G24",
    "PV",
    "TC",
    "WBD",
    "springback",
    "thinning",
    "thickening",
];

/// Spec for `name`, matched case-insensitively. `PV` is the continuous
/// variant; see [`design::pressure_vessel`] for the discrete one.
pub fn lookup(name: &str) -> Result<ProblemSpec> {
    if let Some((_, make)) = gsuite::ALL
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
    {
        return Ok(make());
    }
    let spec = match name.to_ascii_lowercase().as_str() {
        "pv" => design::pressure_vessel(false),
        "tc" => design::tension_spring(),
        "wbd" => design::welded_beam(),
        "springback" => deep_drawing::springback(),
        "thinning" => deep_drawing::thinning(),
        "thickening" => deep_drawing::thickening(),
        _ => return Err(Error::UnknownProblem(name.into())),
    };
    Ok(spec)
}

/// All catalog specs in [`NAMES`] order.
pub fn all() -> Vec<ProblemSpec> {
    NAMES
        .iter()
        .map(|n| lookup(n).expect("catalog names resolve"))
        .collect()
}

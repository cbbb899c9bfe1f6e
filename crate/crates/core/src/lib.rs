//! Exact knot-polynomial engine for annulus-twisted ribbon knot families.

pub mod diagram;
pub mod laurent;
pub mod oracle;
pub mod skein;
pub mod slicetools;
pub mod verify;
pub mod family;

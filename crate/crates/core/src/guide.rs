//! The narrative guide lives in `book/` as an mdbook; its chapters are
//! included here as doc-tests so every code snippet in the book compiles and
//! passes against the current API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/spherical-geometry.md")]
pub mod spherical_geometry {}

#[doc = include_str!("../../../book/src/packing-bounds.md")]
pub mod packing_bounds {}

#[doc = include_str!("../../../book/src/tammes.md")]
pub mod tammes {}

#[doc = include_str!("../../../book/src/contact-graphs.md")]
pub mod contact_graphs {}

#[doc = include_str!("../../../book/src/isoperimetric.md")]
pub mod isoperimetric_guide {}

#[doc = include_str!("../../../book/src/higher-dimensions.md")]
pub mod higher_dimensions {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_guide {}

//! Linked micromap rendering: region-indexed tables go in, deterministic SVG comes out.
//!
//! The pipeline is `table` → `layout` (ordering, perceptual groups, color slots) →
//! `compose` (map, legend and glyph columns laid out as one `Scene`) → `svg`.

pub mod alt_charts;
pub mod atlas;
pub mod compose;
pub mod error;
pub mod glyph;
pub mod layout;
pub mod palette;
pub mod region;
pub mod scale;
pub mod scene;
pub mod stats;
pub mod svg;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use region::{region_lookup, RegionId, RegionMeta};

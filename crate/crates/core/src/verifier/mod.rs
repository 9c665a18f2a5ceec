//! Brute-force checks of tiles and tilings.
//!
//! Nothing here reuses the tile construction code: points are enumerated
//! directly from a spec's elements and side counts, images are deduplicated
//! in ordered sets, and tiling claims are checked by counting how often each
//! point of a window is covered.

mod cover;
mod fit;
mod optimality;
mod points;
mod report;

pub use cover::{check_cover, cover_report, CoverReport};
pub use fit::{fit_exponent, ExponentFit};
pub use optimality::{check_exact_optimality, check_hbl_bound, hbl_bound_holds, OptimalityEntry};
pub use points::{count_images, image_counts_of, side_count, tile_points};
pub use report::{verify_plan, SampleCounts, VerificationReport, VerifyOptions};

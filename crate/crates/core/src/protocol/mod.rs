//! Concrete block codes for the relay network: exhaustive zero-error
//! verification, rate accounting, color covers and relay computability.

mod cover;
mod huffman;
mod random;
mod scheme;
mod verify;

pub use cover::{enumerate_color_covers, scheme_from_color_cover, ColorCover, CoverCloud, CoverKey};
pub use huffman::huffman_code;
pub use random::{random_color_cover, random_scheme, zero_error_scheme};
pub use scheme::{fixed_length_code, is_prefix_free, scheme_rates, Scheme, SchemeRates};
pub use verify::{
    bfn_verify, coloring_equivalence, coloring_equivalence_on, relay_computability, verify_zero_error, BfnReport,
    Conflict, Equivalence, RelayReport, VerificationReport,
};

//! Length profiles, prefix codes built from them, letter-to-word
//! encodings and the reductions from d letters to two.

mod binary;
mod map;
mod profile;
mod road;

pub use binary::{
    reduce_incompletable_to_binary, reduce_sync_to_binary, uniform_sync_encoding, IncompletableTrace, SyncTrace,
    UniformOutcome,
};
pub use map::{apply_encoding, sync_status, transfer, Encoding, EncodingFlags, Transfer};
pub use profile::{kraft_canonical, length_profile_general, length_profile_power2, LengthProfile};
pub use road::{road_colored_sync_code, ColoringReport, ColoringSearch};

//! File formats and command plumbing for the `paspectra` binary.
//!
//! Everything that touches the filesystem or the process boundary lives in
//! this crate; the numerics stay in `paspectra-core`. Output files always
//! begin with an echo of the fully resolved configuration, so any artifact
//! can be regenerated bit-identically from its own header.

pub mod ball_file;
pub mod cli;
pub mod complexfmt;
pub mod error;
pub mod graph_file;
pub mod numfmt;
pub mod reports;
pub mod run;

/// FNV-1a 64-bit hash of a canonical configuration line; embedded in study
/// file names so distinct configurations never collide on disk.
pub fn config_hash(config_line: &str) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in config_line.as_bytes() {
        hash ^= *byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

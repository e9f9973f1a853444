//! The natural GL2(Fq) action on polynomials over a small finite field,
//! with constructive characterization, generation, and closed-form counting
//! of the monic irreducible polynomials left fixed by translation subgroups,
//! homotheties, p-subgroups, and all of PGL2(Fq). Every closed-form count is
//! cross-checkable against exhaustive enumeration at small-field scale.
//!
//! The crate is primarily a library; each major capability has a runnable
//! example:
//!
//! ```bash
//! cargo run --example field_tour              # F_q construction and arithmetic
//! cargo run --example irreducibles            # enumeration and counting oracles
//! cargo run --example matrix_action           # the action and its fixed points
//! cargo run --example translation_invariants  # counts and generation under x -> x+s
//! cargo run --example decompose_roundtrip     # peeling invariant polynomials apart
//! cargo run --example homothety               # counts under x -> ax
//! cargo run --example artin_schreier          # trace criterion for f(x^p-x-b)
//! cargo run --example pgl_scan                # polynomials fixed by all of PGL2
//! cargo run --example p_subgroups             # conjugating p-subgroups to translations
//! ```
//!
//! A thin `gl2poly` binary exposes the same operations as subcommands
//! (`count`, `enumerate`, `decompose`, `act`, `fixed`, `pgl-scan`,
//! `psubgroup`, `verify`); see the README for the flag reference.

pub mod action;
pub mod cli;
mod error;
pub mod ff;
pub mod invariant;
pub mod numutil;
pub mod poly;
pub mod psubgroup;
pub mod report;
pub mod text;
pub mod verify;

pub use error::{Error, Result};

/// Default bound on the number of candidates any exhaustive enumeration may
/// visit (the `--cap` flag of the CLI).
pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;

//! Desk-scale simulation of the unambiguous inductive-counting algorithm for
//! the longest `s → t` path.
//!
//! The algorithm keeps two registers per stage `k`: `c_k`, the number of
//! vertices whose longest path to the sink has length at least `k`, and
//! `Σ_k`, the summed longest-path lengths of the vertices below `k`. Main
//! guesses `M = Σ_v D(v)` up front, advances the registers with Update until
//! `c_k = 0`, and accepts iff the final `Σ_k = M`. Update learns `D(v) = k − 1`
//! from Test answers, and Test answers `D(v) ≥ k` by guessing one path to the
//! sink for every vertex and checking the tallies against the registers.
//!
//! Nondeterminism is modelled by counting runs. Main and Update are
//! deterministic between Test calls, so the runs of a whole branch multiply.
//! Weighted graphs must go through [`subdivide`] first.

mod claims;
mod counters;
mod machine;
mod runs;
mod subdivide;
mod update;

pub use claims::{
    sample_guesses, verify_claims, verify_claims_with, ClaimsReport, Suite, SuiteReport, Witness,
};
pub use counters::Counters;
pub use machine::{main_simulate, simulate, Branch, BranchOutcome, SimResult};
pub use runs::{
    test_runs, Backend, RunOutcome, TestContext, TestRuns, TestTally, Verdict, ENUMERATION_CAP,
};
pub use subdivide::{subdivide, Subdivided};
pub use update::{update_counters, Ambiguity, UpdateStep};

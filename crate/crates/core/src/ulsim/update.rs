use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::counters::Counters;
use super::runs::{Backend, TestContext};
use crate::dag::VertexId;
use crate::error::{Error, Result};

/// What to do when a Test invocation has more than one deciding run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambiguity {
    /// Fail with [`Error::AmbiguousTest`].
    Forbid,
    /// Accept it and fold the run count into the multiplicity.
    Track,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateStep {
    pub counters: Counters,
    /// Product of deciding-run counts over the Test calls made.
    pub multiplicity: BigUint,
    /// Vertices found to have `D(v) = k − 1`, ascending.
    pub removed: Vec<VertexId>,
    pub test_calls: usize,
}

/// The verdict shared by all deciding runs, and how many there are.
pub(crate) fn decide(
    ctx: &TestContext<'_>,
    counters: &Counters,
    v: VertexId,
    backend: Backend,
    ambiguity: Ambiguity,
) -> Result<(bool, BigUint)> {
    let tally = ctx.tally(counters, v, backend)?;
    let k = counters.k;
    let runs = tally.deciding();
    if runs.is_zero() {
        return Err(Error::NoDecidingRun { k, v });
    }
    if !tally.decide_true.is_zero() && !tally.decide_false.is_zero() {
        return Err(Error::InconsistentVerdicts { k, v });
    }
    if ambiguity == Ambiguity::Forbid && !runs.is_one() {
        return Err(Error::AmbiguousTest { k, v, runs });
    }
    Ok((!tally.decide_true.is_zero(), runs))
}

/// Moves the registers from stage `prev.k` to `prev.k + 1`.
///
/// A vertex leaves `S` exactly when Test reports `D(v) ≥ k − 1` and reports
/// `D(x) < k − 1` for every out-neighbour `x`, which pins `D(v) = k − 1`.
/// Out-neighbours are queried in ascending id order and the scan stops at the
/// first positive answer.
pub fn update_counters(
    ctx: &TestContext<'_>,
    prev: &Counters,
    backend: Backend,
    ambiguity: Ambiguity,
) -> Result<UpdateStep> {
    let k = prev.k + 1;
    let mut next = Counters { k, ..*prev };
    let mut multiplicity = BigUint::one();
    let mut removed = Vec::new();
    let mut test_calls = 0;
    let g = ctx.dag();
    for v in 0..g.n() {
        let (in_s, runs) = decide(ctx, prev, v, backend, ambiguity)?;
        test_calls += 1;
        multiplicity *= runs;
        if !in_s {
            continue;
        }
        let mut all_below = true;
        for x in g.successors(v) {
            let (x_in_s, runs) = decide(ctx, prev, x, backend, ambiguity)?;
            test_calls += 1;
            multiplicity *= runs;
            if x_in_s {
                all_below = false;
                break;
            }
        }
        if all_below {
            next.c = next.c.checked_sub(1).ok_or(Error::CounterUnderflow { k })?;
            next.sigma += k - 1;
            removed.push(v);
        }
    }
    Ok(UpdateStep {
        counters: next,
        multiplicity,
        removed,
        test_calls,
    })
}

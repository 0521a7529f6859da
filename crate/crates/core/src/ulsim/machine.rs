use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::counters::Counters;
use super::runs::{Backend, TestContext};
use super::update::{update_counters, Ambiguity};
use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};
use crate::paths::longest_path_dp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchOutcome {
    /// Some Test call had no deciding run, so every run of this branch halts.
    Died {
        k: usize,
        v: VertexId,
    },
    /// The loop finished but the final `Σ_k` differs from the guess.
    Rejected {
        final_sigma: usize,
    },
    Accepted,
}

/// Main's computation for one guessed `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub m: usize,
    pub outcome: BranchOutcome,
    /// Runs reaching the end of the loop: the product of deciding-run counts
    /// over every Test call, zero when the branch died.
    pub completed_runs: BigUint,
    /// Stage at which the loop stopped (or died).
    pub final_k: usize,
}

impl Branch {
    pub fn accepting_runs(&self) -> BigUint {
        match self.outcome {
            BranchOutcome::Accepted => self.completed_runs.clone(),
            _ => BigUint::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimResult {
    /// Longest `s → t` length, read off as final `k − 1`.
    pub longest: usize,
    /// `D(v)` recovered from the stage at which each vertex left `S`.
    pub d_values: Vec<usize>,
    /// Accepting runs summed over every guess of `M`.
    pub multiplicity: BigUint,
    pub accepted_m: usize,
    /// Whether `accepted_m` lies in `[n, n²]`.
    pub accepted_m_in_nominal_range: bool,
    pub branches: Vec<Branch>,
}

struct BranchTrace {
    branch: Branch,
    removal_stage: Vec<Option<usize>>,
}

fn run_branch(ctx: &TestContext<'_>, m: usize, backend: Backend) -> Result<BranchTrace> {
    let n = ctx.n();
    let mut counters = Counters::initial(n, m);
    let mut completed_runs = BigUint::one();
    let mut removal_stage = vec![None; n];
    while counters.c != 0 {
        if counters.k > n {
            return Err(Error::Invariant(format!(
                "counting loop did not terminate by stage {}",
                counters.k
            )));
        }
        let step = match update_counters(ctx, &counters, backend, Ambiguity::Track) {
            Ok(step) => step,
            Err(Error::NoDecidingRun { k, v }) => {
                return Ok(BranchTrace {
                    branch: Branch {
                        m,
                        outcome: BranchOutcome::Died { k, v },
                        completed_runs: BigUint::zero(),
                        final_k: counters.k,
                    },
                    removal_stage,
                })
            }
            Err(e) => return Err(e),
        };
        completed_runs *= step.multiplicity;
        for v in step.removed {
            removal_stage[v] = Some(step.counters.k);
        }
        counters = step.counters;
    }
    let outcome = if counters.sigma == m {
        BranchOutcome::Accepted
    } else {
        BranchOutcome::Rejected {
            final_sigma: counters.sigma,
        }
    };
    Ok(BranchTrace {
        branch: Branch {
            m,
            outcome,
            completed_runs,
            final_k: counters.k,
        },
        removal_stage,
    })
}

/// Runs Main for every guess `M ∈ [0, n²]` and aggregates accepting runs.
///
/// The result is cross-checked against the longest-path dynamic program.
pub fn main_simulate(g: &Dag, backend: Backend) -> Result<SimResult> {
    let ctx = TestContext::for_backend(g, backend)?;
    simulate(&ctx, backend)
}

pub fn simulate(ctx: &TestContext<'_>, backend: Backend) -> Result<SimResult> {
    let n = ctx.n();
    let mut branches = Vec::with_capacity(n * n + 1);
    let mut accepted: Option<(usize, usize, Vec<Option<usize>>)> = None;
    let mut multiplicity = BigUint::zero();
    for m in 0..=n * n {
        let trace = run_branch(ctx, m, backend)?;
        let runs = trace.branch.accepting_runs();
        if !runs.is_zero() {
            multiplicity += runs;
            if accepted.is_none() {
                accepted = Some((m, trace.branch.final_k, trace.removal_stage));
            }
        }
        branches.push(trace.branch);
    }
    let (accepted_m, final_k, removal_stage) = accepted.ok_or(Error::NoAcceptingRun)?;
    let longest = final_k - 1;
    let d_values = removal_stage
        .iter()
        .map(|s| s.expect("every vertex leaves S before the loop ends") - 1)
        .collect();

    let g = ctx.dag();
    let expected = longest_path_dp(g, g.source(), g.sink()).expect("pruned graph");
    let expected = usize::try_from(&expected).expect("length fits");
    if expected != longest {
        return Err(Error::Disagreement {
            simulated: longest,
            expected,
        });
    }
    Ok(SimResult {
        longest,
        d_values,
        multiplicity,
        accepted_m,
        accepted_m_in_nominal_range: (n..=n * n).contains(&accepted_m),
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::fixtures::*;

    #[test]
    fn single_edge_graph() {
        let r = main_simulate(&single_edge(), Backend::Census).unwrap();
        assert_eq!(r.longest, 1);
        assert_eq!(r.accepted_m, 1);
        assert_eq!(r.multiplicity, BigUint::one());
        assert!(!r.accepted_m_in_nominal_range);
        assert_eq!(r.d_values, vec![1, 0]);
    }

    #[test]
    fn diamond_accepts_only_three() {
        let r = main_simulate(&diamond(), Backend::Census).unwrap();
        assert_eq!((r.longest, r.accepted_m), (2, 3));
        assert_eq!(r.multiplicity, BigUint::one());
        assert_eq!(r.d_values, vec![2, 1, 0]);
        for b in &r.branches {
            if b.m != 3 {
                assert!(b.accepting_runs().is_zero(), "M={} accepted", b.m);
            }
        }
    }

    #[test]
    fn chain_of_four() {
        let r = main_simulate(&chain(4), Backend::Census).unwrap();
        assert_eq!((r.longest, r.accepted_m), (3, 6));
        assert_eq!(r.multiplicity, BigUint::one());
    }

    #[test]
    fn enumerate_backend_agrees() {
        for g in [diamond(), square(), chain(4)] {
            let ctx = TestContext::with_enumeration(&g, 10_000).unwrap();
            assert_eq!(
                simulate(&ctx, Backend::Enumerate).unwrap(),
                simulate(&ctx, Backend::Census).unwrap()
            );
        }
    }

    #[test]
    fn square_is_ambiguous() {
        let r = main_simulate(&square(), Backend::Census).unwrap();
        assert_eq!(r.longest, 2);
        assert!(r.multiplicity > BigUint::one());
    }

    #[test]
    fn oracle_backend_accepts_the_true_total() {
        let r = main_simulate(&diamond(), Backend::Oracle).unwrap();
        assert_eq!(r.accepted_m, 3);
        assert_eq!(r.multiplicity, BigUint::one());
    }
}

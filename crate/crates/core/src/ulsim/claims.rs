//! Executable checks of the simulator's correctness and unambiguity.
//!
//! * [`Suite::UniqueDecision`]: with `M = T` and true registers, each Test call
//!   has exactly one deciding run (on max-unique inputs).
//! * [`Suite::SoundDecision`]: for any `M`, deciding runs never report a wrong
//!   verdict, and no run ends with `count` above `c_k`.
//! * [`Suite::CounterUpdate`]: Update, fed true answers, reproduces the true
//!   registers.
//! * [`Suite::UnambiguousMain`]: Main has exactly one accepting run and reports
//!   the right length; guesses above `T` die, guesses below `T` fail the final
//!   check.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::counters::Counters;
use super::machine::{simulate, BranchOutcome, SimResult};
use super::runs::{Backend, TestContext};
use super::update::{update_counters, Ambiguity};
use crate::dag::{Dag, VertexId};
use crate::error::Result;
use crate::paths::{extremal_uniqueness, Extremum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A Test call whose deciding-run count is not one.
    RunCount {
        k: usize,
        v: VertexId,
        runs: BigUint,
    },
    WrongDecision {
        k: usize,
        v: VertexId,
        m: usize,
        runs: BigUint,
    },
    /// Some run could end with `count` larger than `c_k`.
    CountAboveBound {
        k: usize,
        max_count: usize,
        c: usize,
    },
    CounterMismatch {
        k: usize,
        expected: Counters,
        got: Counters,
    },
    Multiplicity {
        runs: BigUint,
    },
    WrongLength {
        simulated: usize,
        expected: usize,
    },
    Branch {
        m: usize,
        outcome: BranchOutcome,
    },
    SimulationFailed(String),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::RunCount { k, v, runs } => write!(f, "k={k} v={v} deciding_runs={runs}"),
            Witness::WrongDecision { k, v, m, runs } => {
                write!(f, "k={k} v={v} m={m} wrong_runs={runs}")
            }
            Witness::CountAboveBound { k, max_count, c } => {
                write!(f, "k={k} max_count={max_count} c={c}")
            }
            Witness::CounterMismatch { k, expected, got } => write!(
                f,
                "k={k} expected=({},{}) got=({},{})",
                expected.c, expected.sigma, got.c, got.sigma
            ),
            Witness::Multiplicity { runs } => write!(f, "accepting_runs={runs}"),
            Witness::WrongLength {
                simulated,
                expected,
            } => {
                write!(f, "simulated={simulated} expected={expected}")
            }
            Witness::Branch { m, outcome } => write!(f, "m={m} outcome={outcome:?}"),
            Witness::SimulationFailed(e) => write!(f, "error={e:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    UniqueDecision,
    SoundDecision,
    CounterUpdate,
    UnambiguousMain,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::UniqueDecision,
        Suite::SoundDecision,
        Suite::CounterUpdate,
        Suite::UnambiguousMain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::UniqueDecision => "unique-decision",
            Suite::SoundDecision => "sound-decision",
            Suite::CounterUpdate => "counter-update",
            Suite::UnambiguousMain => "unambiguous-main",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub witnesses: Vec<Witness>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimsReport {
    pub max_unique: bool,
    /// `T = Σ D(v)`.
    pub total: usize,
    pub suites: Vec<SuiteReport>,
    pub simulation: Option<SimResult>,
}

impl ClaimsReport {
    pub fn suite(&self, suite: Suite) -> &SuiteReport {
        self.suites
            .iter()
            .find(|s| s.suite == suite)
            .expect("every suite runs")
    }

    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

/// Guesses used by the soundness suite: `T − 1, T, T + 1, 0, n²`.
pub fn sample_guesses(total: usize, n: usize) -> Vec<usize> {
    let mut ms = vec![total, total + 1, 0, n * n];
    if total > 0 {
        ms.insert(0, total - 1);
    }
    ms.sort_unstable();
    ms.dedup();
    ms
}

/// Runs all four suites with the given Test backend (census or enumerate).
pub fn verify_claims(g: &Dag, backend: Backend) -> Result<ClaimsReport> {
    let ctx = TestContext::for_backend(g, backend)?;
    verify_claims_with(&ctx, backend)
}

pub fn verify_claims_with(ctx: &TestContext<'_>, backend: Backend) -> Result<ClaimsReport> {
    let g = ctx.dag();
    let n = g.n();
    let d = ctx.d();
    let total = ctx.total();
    let last_stage = d.iter().copied().max().unwrap_or(0) + 1;
    let max_unique = extremal_uniqueness(g, Extremum::Max).is_unique();

    let mut unique = SuiteReport::new(Suite::UniqueDecision);
    for k in 0..=last_stage {
        let counters = Counters::definitional(d, k, total);
        for v in 0..n {
            unique.checks += 1;
            let runs = ctx.tally(&counters, v, backend)?.deciding();
            if !runs.is_one() {
                unique.witnesses.push(Witness::RunCount { k, v, runs });
            }
        }
    }

    let mut sound = SuiteReport::new(Suite::SoundDecision);
    for m in sample_guesses(total, n) {
        for k in 0..=last_stage {
            let counters = Counters::definitional(d, k, m);
            let max_count = ctx.max_run_count(k);
            sound.checks += 1;
            if max_count > counters.c {
                sound.witnesses.push(Witness::CountAboveBound {
                    k,
                    max_count,
                    c: counters.c,
                });
            }
            for (v, &dv) in d.iter().enumerate() {
                sound.checks += 1;
                let tally = ctx.tally(&counters, v, backend)?;
                let wrong = tally.wrong(dv >= k);
                if !wrong.is_zero() {
                    sound.witnesses.push(Witness::WrongDecision {
                        k,
                        v,
                        m,
                        runs: wrong.clone(),
                    });
                }
            }
        }
    }

    let mut update = SuiteReport::new(Suite::CounterUpdate);
    let mut counters = Counters::initial(n, total);
    while counters.c != 0 && counters.k <= n {
        let step = update_counters(ctx, &counters, Backend::Oracle, Ambiguity::Forbid)?;
        let expected = Counters::definitional(d, step.counters.k, total);
        update.checks += 1;
        if step.counters != expected {
            update.witnesses.push(Witness::CounterMismatch {
                k: step.counters.k,
                expected,
                got: step.counters,
            });
            break;
        }
        counters = step.counters;
    }

    let mut main = SuiteReport::new(Suite::UnambiguousMain);
    let simulation = match simulate(ctx, backend) {
        Ok(sim) => {
            main.checks += 1;
            if !sim.multiplicity.is_one() {
                main.witnesses.push(Witness::Multiplicity {
                    runs: sim.multiplicity.clone(),
                });
            }
            let expected = d[g.source()];
            main.checks += 1;
            if sim.longest != expected {
                main.witnesses.push(Witness::WrongLength {
                    simulated: sim.longest,
                    expected,
                });
            }
            for b in &sim.branches {
                main.checks += 1;
                let ok = match (&b.outcome, b.m.cmp(&total)) {
                    (BranchOutcome::Died { .. }, std::cmp::Ordering::Greater) => true,
                    (_, std::cmp::Ordering::Greater) => false,
                    (BranchOutcome::Accepted, std::cmp::Ordering::Equal) => true,
                    (_, std::cmp::Ordering::Equal) => false,
                    (BranchOutcome::Died { .. }, _) => true,
                    (BranchOutcome::Rejected { final_sigma }, _) => *final_sigma == total,
                    (BranchOutcome::Accepted, _) => false,
                };
                if !ok {
                    main.witnesses.push(Witness::Branch {
                        m: b.m,
                        outcome: b.outcome.clone(),
                    });
                }
            }
            Some(sim)
        }
        Err(e) => {
            main.checks += 1;
            main.witnesses
                .push(Witness::SimulationFailed(e.to_string()));
            None
        }
    };

    Ok(ClaimsReport {
        max_unique,
        total,
        suites: vec![unique, sound, update, main],
        simulation,
    })
}

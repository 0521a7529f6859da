//! The run space of the Test procedure.
//!
//! A run of `Test(k, c_k, Σ_k, v)` guesses, for every vertex `x` in ascending
//! id order, whether `D(x) ≥ k` together with an `x → t` path witnessing the
//! guess. A concrete path of length `l` is consistent with exactly one guess
//! (yes iff `l ≥ k`), so non-halting runs are in bijection with tuples of
//! paths, one per vertex. A run decides iff
//! `count = c_k ∧ sum = Σ_k ∧ sum + sum' = M`, and its verdict is the guess
//! made for `v`.
//!
//! Two independent routes compute deciding-run tallies: [`test_runs`] walks
//! the Cartesian product explicitly, while the census backend folds per-vertex
//! path-length histograms through a counting dynamic program.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::counters::Counters;
use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};
use crate::paths::{d_vector, enumerate_paths};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Decide(bool),
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    /// Index of the chosen path in each vertex's path list.
    pub choice: Vec<usize>,
    pub lengths: Vec<usize>,
    /// Guess per vertex: `true` for `D(x) ≥ k`.
    pub bits: Vec<bool>,
    pub count: usize,
    pub sum: usize,
    pub sum_long: usize,
    pub verdict: Verdict,
}

/// Registers and verdict of the run that picks paths of these lengths.
pub(crate) fn evaluate(
    lengths: &[usize],
    counters: &Counters,
    v: VertexId,
) -> (Vec<bool>, usize, usize, usize, Verdict) {
    let bits: Vec<bool> = lengths.iter().map(|&l| l >= counters.k).collect();
    let mut count = lengths.len();
    let (mut sum, mut sum_long) = (0, 0);
    for (&l, &yes) in lengths.iter().zip(&bits) {
        if yes {
            sum_long += l;
        } else {
            count -= 1;
            sum += l;
        }
    }
    let verdict = if count == counters.c && sum == counters.sigma && sum + sum_long == counters.m {
        Verdict::Decide(bits[v])
    } else {
        Verdict::Reject
    };
    (bits, count, sum, sum_long, verdict)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestRuns {
    /// `paths[x]`: every `x → t` path, lexicographic.
    pub paths: Vec<Vec<Vec<VertexId>>>,
    pub runs: Vec<RunOutcome>,
}

impl TestRuns {
    pub fn tally(&self) -> TestTally {
        let mut tally = TestTally::default();
        for run in &self.runs {
            tally.record(run.verdict);
        }
        tally
    }
}

/// Deciding-run counts split by verdict.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TestTally {
    pub decide_true: BigUint,
    pub decide_false: BigUint,
}

impl TestTally {
    pub fn deciding(&self) -> BigUint {
        &self.decide_true + &self.decide_false
    }

    /// Deciding runs whose verdict disagrees with `truth`.
    pub fn wrong(&self, truth: bool) -> &BigUint {
        if truth {
            &self.decide_false
        } else {
            &self.decide_true
        }
    }

    fn record(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Decide(true) => self.decide_true += 1u32,
            Verdict::Decide(false) => self.decide_false += 1u32,
            Verdict::Reject => {}
        }
    }
}

/// Product of the sizes, or `None` once it passes `cap`.
fn product_within(mut sizes: impl Iterator<Item = usize>, cap: usize) -> Option<usize> {
    sizes.try_fold(1usize, |acc, s| acc.checked_mul(s).filter(|&p| p <= cap))
}

fn all_paths_to_sink(g: &Dag, cap: usize) -> Result<Vec<Vec<Vec<VertexId>>>> {
    (0..g.n())
        .map(|x| {
            let list = enumerate_paths(g, x, g.sink(), cap);
            list.require_complete(cap)?;
            Ok(list.paths)
        })
        .collect()
}

/// Visits every path tuple in odometer order (last vertex fastest).
fn for_each_tuple(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut idx = vec![0; sizes.len()];
    loop {
        f(&idx);
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Every run of `Test(k, c_k, Σ_k, v)` with guess `M`, materialized.
///
/// Fails with [`Error::CapExceeded`] if some vertex has more than `cap` paths
/// to the sink or the run space has more than `cap` runs.
pub fn test_runs(g: &Dag, counters: &Counters, v: VertexId, cap: usize) -> Result<TestRuns> {
    g.require_pruned()?;
    g.require_unit()?;
    let paths = all_paths_to_sink(g, cap)?;
    let sizes: Vec<usize> = paths.iter().map(Vec::len).collect();
    product_within(sizes.iter().copied(), cap).ok_or(Error::CapExceeded { cap })?;
    let mut runs = Vec::new();
    for_each_tuple(&sizes, |idx| {
        let lengths: Vec<usize> = idx
            .iter()
            .enumerate()
            .map(|(x, &i)| paths[x][i].len() - 1)
            .collect();
        let (bits, count, sum, sum_long, verdict) = evaluate(&lengths, counters, v);
        runs.push(RunOutcome {
            choice: idx.to_vec(),
            lengths,
            bits,
            count,
            sum,
            sum_long,
            verdict,
        });
    });
    Ok(TestRuns { paths, runs })
}

/// How a Test invocation is answered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Truth of `D(v) ≥ k` from the dynamic program, one deciding run.
    Oracle,
    /// Explicit walk over every path tuple.
    Enumerate,
    /// Counting over per-vertex path-length histograms.
    Census,
}

pub const ENUMERATION_CAP: usize = 1 << 20;

/// Deciding-run tallies indexed by the guessed total `M`.
type TallyTable = Vec<TestTally>;

type CacheKey = (usize, usize, usize, VertexId, Backend);

/// Everything a simulation needs about one graph, computed once.
pub struct TestContext<'g> {
    g: &'g Dag,
    d: Vec<usize>,
    total: usize,
    /// `profiles[x][l]`: number of `x → t` paths of length `l`.
    profiles: Vec<Vec<BigUint>>,
    /// Path lengths per vertex, present when explicit enumeration is enabled.
    path_lengths: Option<Vec<Vec<usize>>>,
    cache: Mutex<HashMap<CacheKey, Arc<TallyTable>>>,
}

impl<'g> TestContext<'g> {
    /// Requires a pruned unit-weight graph.
    pub fn new(g: &'g Dag) -> Result<Self> {
        g.require_pruned()?;
        g.require_unit()?;
        let d = d_vector(g)?.lengths();
        let total = d.iter().sum();
        Ok(TestContext {
            g,
            profiles: length_profiles(g, &d),
            d,
            total,
            path_lengths: None,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Context able to serve `backend`; enumeration is capped at
    /// [`ENUMERATION_CAP`] paths per vertex and runs per Test call.
    pub fn for_backend(g: &'g Dag, backend: Backend) -> Result<Self> {
        match backend {
            Backend::Enumerate => TestContext::with_enumeration(g, ENUMERATION_CAP),
            Backend::Oracle | Backend::Census => TestContext::new(g),
        }
    }

    /// Also prepares the explicit-enumeration backend, bounded by `cap`
    /// paths per vertex and `cap` runs per Test invocation.
    pub fn with_enumeration(g: &'g Dag, cap: usize) -> Result<Self> {
        let mut ctx = TestContext::new(g)?;
        let paths = all_paths_to_sink(g, cap)?;
        product_within(paths.iter().map(Vec::len), cap).ok_or(Error::CapExceeded { cap })?;
        ctx.path_lengths = Some(
            paths
                .iter()
                .map(|ps| ps.iter().map(|p| p.len() - 1).collect())
                .collect(),
        );
        Ok(ctx)
    }

    pub fn dag(&self) -> &Dag {
        self.g
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// `D(v)` for every vertex.
    pub fn d(&self) -> &[usize] {
        &self.d
    }

    /// `T = Σ D(v)`.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Longest `x → t` path count of each vertex is one.
    pub fn sink_paths_max_unique(&self) -> bool {
        self.profiles
            .iter()
            .zip(&self.d)
            .all(|(p, &d)| p[d].is_one())
    }

    /// Largest `count` any run of a stage-`k` Test can end with: vertices
    /// without an `x → t` path of length `≥ k` are always guessed short.
    pub fn max_run_count(&self, k: usize) -> usize {
        self.profiles
            .iter()
            .filter(|p| p.iter().skip(k).any(|c| !c.is_zero()))
            .count()
    }

    /// Deciding-run tally of `Test(counters.k, counters.c, counters.sigma, v)`
    /// under guess `counters.m`.
    pub fn tally(&self, counters: &Counters, v: VertexId, backend: Backend) -> Result<TestTally> {
        if backend == Backend::Oracle {
            let mut t = TestTally::default();
            t.record(Verdict::Decide(self.d[v] >= counters.k));
            return Ok(t);
        }
        let key = (counters.k, counters.c, counters.sigma, v, backend);
        let cached = self.cache.lock().unwrap().get(&key).cloned();
        let table = match cached {
            Some(t) => t,
            None => {
                let t = Arc::new(match backend {
                    Backend::Census => self.census_table(counters, v),
                    Backend::Enumerate => self.enumerated_table(counters, v)?,
                    Backend::Oracle => unreachable!(),
                });
                self.cache.lock().unwrap().insert(key, Arc::clone(&t));
                t
            }
        };
        Ok(table.get(counters.m).cloned().unwrap_or_default())
    }

    fn enumerated_table(&self, counters: &Counters, v: VertexId) -> Result<TallyTable> {
        let lengths = self.path_lengths.as_ref().ok_or_else(|| {
            Error::Precondition("explicit enumeration was not prepared for this context".into())
        })?;
        let sizes: Vec<usize> = lengths.iter().map(Vec::len).collect();
        let mut table = vec![TestTally::default(); self.total + 1];
        let mut chosen = vec![0; sizes.len()];
        for_each_tuple(&sizes, |idx| {
            for (x, &i) in idx.iter().enumerate() {
                chosen[x] = lengths[x][i];
            }
            let grand: usize = chosen.iter().sum();
            let probe = Counters {
                m: grand,
                ..*counters
            };
            let (_, _, _, _, verdict) = evaluate(&chosen, &probe, v);
            table[grand].record(verdict);
        });
        Ok(table)
    }

    /// Folds vertices one at a time over states
    /// `(vertices guessed short, sum of short lengths, sum of all lengths)`,
    /// once with `v` restricted to long paths and once to short ones.
    fn census_table(&self, counters: &Counters, v: VertexId) -> TallyTable {
        let n = self.n();
        let k = counters.k;
        let need_short = match n.checked_sub(counters.c) {
            Some(x) => x,
            None => return vec![TestTally::default(); self.total + 1],
        };
        let mut table = vec![TestTally::default(); self.total + 1];
        for v_long in [true, false] {
            let mut states: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
            states.insert((0, 0, 0), BigUint::one());
            for x in 0..n {
                let mut next: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
                for ((shorts, short_sum, grand), ways) in &states {
                    for (len, paths) in self.profiles[x].iter().enumerate() {
                        if paths.is_zero() {
                            continue;
                        }
                        let long = len >= k;
                        if x == v && long != v_long {
                            continue;
                        }
                        let state = if long {
                            (*shorts, *short_sum, grand + len)
                        } else {
                            (shorts + 1, short_sum + len, grand + len)
                        };
                        if state.0 > need_short || state.1 > counters.sigma {
                            continue;
                        }
                        *next.entry(state).or_default() += ways * paths;
                    }
                }
                states = next;
            }
            for ((shorts, short_sum, grand), ways) in states {
                if shorts == need_short && short_sum == counters.sigma {
                    let slot = &mut table[grand];
                    if v_long {
                        slot.decide_true += ways;
                    } else {
                        slot.decide_false += ways;
                    }
                }
            }
        }
        table
    }
}

/// Histogram of `x → t` path lengths for every vertex, by dynamic programming
/// in reverse topological order.
fn length_profiles(g: &Dag, d: &[usize]) -> Vec<Vec<BigUint>> {
    let mut profiles: Vec<Vec<BigUint>> = vec![Vec::new(); g.n()];
    for &x in g.topo_order().iter().rev() {
        let mut hist = vec![BigUint::zero(); d[x] + 1];
        if x == g.sink() {
            hist[0] = BigUint::one();
        }
        for y in g.successors(x) {
            for (l, c) in profiles[y].iter().enumerate() {
                hist[l + 1] += c;
            }
        }
        profiles[x] = hist;
    }
    profiles
}

/// Inductive-counting registers at stage `k`, plus the guessed total `M`.
///
/// With `D(v)` the longest `v → t` length: `c = |{v : D(v) ≥ k}|` and
/// `sigma = Σ { D(v) : D(v) < k }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Counters {
    pub k: usize,
    pub c: usize,
    pub sigma: usize,
    pub m: usize,
}

impl Counters {
    /// Stage zero: every vertex has `D ≥ 0` and nothing is summed yet.
    pub fn initial(n: usize, m: usize) -> Self {
        Counters {
            k: 0,
            c: n,
            sigma: 0,
            m,
        }
    }

    /// The true registers for stage `k`, computed straight from `D`.
    pub fn definitional(d: &[usize], k: usize, m: usize) -> Self {
        Counters {
            k,
            c: d.iter().filter(|&&x| x >= k).count(),
            sigma: d.iter().filter(|&&x| x < k).sum(),
            m,
        }
    }
}

//! Data-parallel evaluation of independent trials.
//!
//! Every randomized check in the crate is a map over trial indices where each
//! trial derives its own RNG from `(seed, stream, index)`. Results are always
//! returned in index order, so the parallel and sequential paths produce
//! identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is on; sequential otherwise.
    #[default]
    Parallel,
}

impl Execution {
    /// Applies `f` to `0..n`, returning results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).map(f).collect(),
            Execution::Parallel => par_map(n, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Per-trial RNG, independent of the order trials are executed in.
pub fn trial_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(u128::from(index) << 20);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn both_paths_agree() {
        let f = |i: usize| trial_rng(7, 3, i as u64).gen::<u64>();
        assert_eq!(Execution::Sequential.map(64, f), Execution::Parallel.map(64, f));
    }

    #[test]
    fn trial_streams_differ() {
        let a: u64 = trial_rng(1, 0, 0).gen();
        let b: u64 = trial_rng(1, 0, 1).gen();
        let c: u64 = trial_rng(1, 1, 0).gen();
        assert!(a != b && a != c && b != c);
    }
}

//! The sequential chain and its empirical histogram.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::SimError;
use crate::model::StationaryDist;
use crate::rng;
use crate::topology::Topology;

/// Mutable simulation state: signs of the variable nodes plus the running
/// up-count, updated incrementally. A single chain is strictly sequential;
/// run independent seeds in parallel and merge histograms instead.
pub struct Chain<'a> {
    topology: &'a Topology,
    frozen_up: u64,
    frozen_down: u64,
    p: f64,
    signs: Vec<i8>,
    up_count: usize,
    rng: ChaCha8Rng,
}

impl<'a> Chain<'a> {
    /// Fresh chain with an i.i.d. random initial state drawn from the seed.
    pub fn new(
        topology: &'a Topology,
        frozen_up: u64,
        frozen_down: u64,
        p: f64,
        seed: u64,
    ) -> Result<Self, SimError> {
        let mut rng = rng::seeded(seed);
        let signs: Vec<i8> = (0..topology.n_nodes())
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        Self::with_state(topology, frozen_up, frozen_down, p, signs, rng)
    }

    /// Chain starting from an explicit sign vector.
    pub fn from_signs(
        topology: &'a Topology,
        frozen_up: u64,
        frozen_down: u64,
        p: f64,
        signs: Vec<i8>,
        seed: u64,
    ) -> Result<Self, SimError> {
        Self::with_state(topology, frozen_up, frozen_down, p, signs, rng::seeded(seed))
    }

    fn with_state(
        topology: &'a Topology,
        frozen_up: u64,
        frozen_down: u64,
        p: f64,
        signs: Vec<i8>,
        rng: ChaCha8Rng,
    ) -> Result<Self, SimError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(SimError::BadLazyProbability { p });
        }
        if signs.len() != topology.n_nodes() {
            return Err(SimError::StateSizeMismatch {
                got: signs.len(),
                want: topology.n_nodes(),
            });
        }
        if topology.is_full() && topology.n_nodes() == 1 && frozen_up + frozen_down == 0 {
            return Err(SimError::NoCopySources);
        }
        let up_count = signs.iter().filter(|&&s| s > 0).count();
        Ok(Self {
            topology,
            frozen_up,
            frozen_down,
            p,
            signs,
            up_count,
            rng,
        })
    }

    pub fn up_count(&self) -> usize {
        self.up_count
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_nodes(&self) -> usize {
        self.signs.len()
    }

    /// One node update. The copy source is uniform over the node's
    /// variable neighbors plus all frozen nodes, so on the full graph the
    /// chance of copying a frozen node is `(D+U)/(D+U+N-1)`.
    pub fn step(&mut self) {
        let n = self.signs.len();
        let node = self.rng.random_range(0..n);
        if self.p > 0.0 && self.rng.random::<f64>() < self.p {
            return;
        }
        let new_sign = if self.topology.is_full() {
            let variable = (n - 1) as u64;
            let pick = self.rng.random_range(0..variable + self.frozen_up + self.frozen_down);
            if pick < variable {
                let mut j = pick as usize;
                if j >= node {
                    j += 1;
                }
                self.signs[j]
            } else if pick < variable + self.frozen_up {
                1
            } else {
                -1
            }
        } else {
            let neighbors = self.topology.neighbors(node);
            let variable = neighbors.len() as u64;
            let pick = self.rng.random_range(0..variable + self.frozen_up + self.frozen_down);
            if pick < variable {
                self.signs[neighbors[pick as usize] as usize]
            } else if pick < variable + self.frozen_up {
                1
            } else {
                -1
            }
        };
        let old_sign = self.signs[node];
        if old_sign != new_sign {
            self.signs[node] = new_sign;
            if new_sign > 0 {
                self.up_count += 1;
            } else {
                self.up_count -= 1;
            }
        }
    }

    /// `N` node updates.
    pub fn sweep(&mut self) {
        for _ in 0..self.signs.len() {
            self.step();
        }
    }
}

/// Histogram of sampled up-counts; the empirical counterpart of
/// [`StationaryDist`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDist {
    n_nodes: usize,
    counts: Vec<u64>,
    n_samples: u64,
}

impl EmpiricalDist {
    pub fn empty(n_nodes: usize) -> Self {
        Self {
            n_nodes,
            counts: vec![0; n_nodes + 1],
            n_samples: 0,
        }
    }

    pub fn record(&mut self, up_count: usize) {
        self.counts[up_count] += 1;
        self.n_samples += 1;
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.n_samples.max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }

    /// Total-variation distance to the exact law.
    pub fn tv_distance(&self, exact: &StationaryDist) -> f64 {
        exact.tv_distance(&self.frequencies())
    }

    /// Merge replicas by histogram addition.
    pub fn merge(&mut self, other: &EmpiricalDist) -> Result<(), SimError> {
        if self.n_nodes != other.n_nodes {
            return Err(SimError::MergeMismatch {
                a: self.n_nodes,
                b: other.n_nodes,
            });
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.n_samples += other.n_samples;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{stationary_pmf, EvolutionMatrix, ModelParams};
    use crate::sim::{run, SimConfig};

    #[test]
    fn lazy_limit_never_changes_state() {
        let topology = Topology::full(20).unwrap();
        let mut chain = Chain::new(&topology, 3, 3, 1.0, 5).unwrap();
        let before = chain.signs().to_vec();
        for _ in 0..1000 {
            chain.step();
        }
        assert_eq!(chain.signs(), &before[..]);
    }

    #[test]
    fn consensus_is_absorbing_without_frozen_nodes() {
        let topology = Topology::full(10).unwrap();
        let mut chain = Chain::from_signs(&topology, 0, 0, 0.0, vec![1; 10], 3).unwrap();
        for _ in 0..5000 {
            chain.step();
            assert_eq!(chain.up_count(), 10);
        }
        let mut chain = Chain::from_signs(&topology, 0, 0, 0.0, vec![-1; 10], 3).unwrap();
        for _ in 0..5000 {
            chain.step();
            assert_eq!(chain.up_count(), 0);
        }
    }

    #[test]
    fn up_count_moves_by_at_most_one_per_step() {
        let topology = Topology::regular_random(30, 4, 8).unwrap();
        let mut chain = Chain::new(&topology, 2, 1, 0.3, 17).unwrap();
        let mut prev = chain.up_count();
        for _ in 0..20_000 {
            chain.step();
            let now = chain.up_count();
            assert!(now.abs_diff(prev) <= 1);
            assert_eq!(now, chain.signs().iter().filter(|&&s| s > 0).count());
            prev = now;
        }
    }

    #[test]
    fn one_step_distribution_matches_evolution_matrix_column() {
        // Starting from a fixed state with k ups, the distribution of the
        // next up-count is the k-th column of T. This pins down the frozen
        // copy probability (D+U)/(D+U+N-1) without observing it directly.
        let n = 6;
        let (u, d) = (2u64, 1u64);
        let topology = Topology::full(n).unwrap();
        let matrix = EvolutionMatrix::from_raw(n, u as f64, d as f64, 0.0).unwrap();
        let start_k = 3;
        let trials = 400_000;
        let mut counts = vec![0u64; n + 1];
        for trial in 0..trials {
            let mut signs = vec![-1i8; n];
            for s in signs.iter_mut().take(start_k) {
                *s = 1;
            }
            let mut chain = Chain::from_signs(&topology, u, d, 0.0, signs, trial).unwrap();
            chain.step();
            counts[chain.up_count()] += 1;
        }
        let expected = [
            matrix.t_super(start_k - 1), // k -> k-1 is T[k-1][k]
            matrix.t_diag(start_k),
            matrix.t_sub(start_k), // k -> k+1 is T[k+1][k]
        ];
        for (offset, want) in expected.iter().enumerate() {
            let k = start_k - 1 + offset;
            let got = counts[k] as f64 / trials as f64;
            assert!(
                (got - want).abs() < 0.004,
                "P({start_k} -> {k}): {got} vs {want}"
            );
        }
    }

    #[test]
    fn identical_seeds_give_identical_histograms() {
        let topology = Topology::full(12).unwrap();
        let config = SimConfig::new(50, 2000, 1, 99);
        let a = run(&topology, 2, 2, &config).unwrap();
        let b = run(&topology, 2, 2, &config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn small_system_matches_exact_law() {
        let topology = Topology::full(8).unwrap();
        let config = SimConfig::new(1000, 250_000, 1, 7);
        let emp = run(&topology, 1, 1, &config).unwrap();
        let exact = stationary_pmf(&ModelParams::new(8, 1.0, 1.0, 0.0).unwrap());
        let tv = emp.tv_distance(&exact);
        assert!(tv < 0.02, "tv = {tv}");
    }

    #[test]
    fn merge_adds_counts() {
        let topology = Topology::full(4).unwrap();
        let mut a = run(&topology, 1, 1, &SimConfig::new(10, 100, 1, 1)).unwrap();
        let b = run(&topology, 1, 1, &SimConfig::new(10, 100, 1, 2)).unwrap();
        a.merge(&b).unwrap();
        assert_eq!(a.n_samples(), 200);
        assert_eq!(a.counts().iter().sum::<u64>(), 200);
    }
}

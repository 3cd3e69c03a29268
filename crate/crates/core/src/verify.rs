//! Seeded comparison of the fast diagonal maps against the density-matrix
//! oracle, shared by the CLI `verify` command and the acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell_state::BellDiagonal;
use crate::error::Result;
use crate::oracle::{deutsch_protocol_dm, swap_dm, DensityMatrix};
use crate::purify::deutsch_step;
use crate::swap::swap_pair;

/// Agreement tolerance between fast paths and the oracle.
pub const VERIFY_TOL: f64 = 1e-10;

/// Maximum deviations observed over a seeded batch of random state pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub trials: usize,
    pub seed: u64,
    pub swap_max_dev: f64,
    pub purify_max_dev: f64,
    pub success_prob_max_dev: f64,
    pub worst_swap_pair: (BellDiagonal, BellDiagonal),
    pub worst_purify_pair: (BellDiagonal, BellDiagonal),
}

impl VerificationReport {
    pub fn max_deviation(&self) -> f64 {
        self.swap_max_dev
            .max(self.purify_max_dev)
            .max(self.success_prob_max_dev)
    }

    pub fn passed(&self) -> bool {
        self.max_deviation() < VERIFY_TOL
    }
}

/// Uniform sample from the fidelity simplex (symmetric Dirichlet via
/// exponential weights).
pub fn random_bell_diagonal(rng: &mut impl Rng) -> BellDiagonal {
    loop {
        let mut weights = [0.0f64; 4];
        for w in weights.iter_mut() {
            *w = -(1.0 - rng.random::<f64>()).ln();
        }
        if weights.iter().sum::<f64>() > 0.0 {
            return BellDiagonal::renormalized(weights);
        }
    }
}

fn max_abs_diff(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Runs `trials` seeded random pairs through both protocols and both fast
/// paths, recording the worst deviations.
pub fn run(trials: usize, seed: u64) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerificationReport {
        trials,
        seed,
        swap_max_dev: 0.0,
        purify_max_dev: 0.0,
        success_prob_max_dev: 0.0,
        worst_swap_pair: (BellDiagonal::perfect(), BellDiagonal::perfect()),
        worst_purify_pair: (BellDiagonal::perfect(), BellDiagonal::perfect()),
    };

    for _ in 0..trials {
        let a = random_bell_diagonal(&mut rng);
        let b = random_bell_diagonal(&mut rng);
        let dm_a = DensityMatrix::from_bell_diagonal(a);
        let dm_b = DensityMatrix::from_bell_diagonal(b);

        let swapped = swap_dm(&dm_a, &dm_b)?;
        let dev = max_abs_diff(&swapped.bell_diagonal()?, &swap_pair(a, b).as_array());
        if dev > report.swap_max_dev {
            report.swap_max_dev = dev;
            report.worst_swap_pair = (a, b);
        }

        let (fast, n) = deutsch_step(a, b)?;
        let (distilled, prob) = deutsch_protocol_dm(&dm_a, &dm_b)?;
        let dev = max_abs_diff(&distilled.bell_diagonal()?, &fast.as_array());
        if dev > report.purify_max_dev {
            report.purify_max_dev = dev;
            report.worst_purify_pair = (a, b);
        }
        report.success_prob_max_dev = report.success_prob_max_dev.max((prob - n).abs());
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_batch_stays_within_tolerance() {
        let report = run(50, 42).unwrap();
        assert!(report.passed(), "max deviation {}", report.max_deviation());
    }

    #[test]
    fn same_seed_reproduces_report() {
        let a = run(25, 7).unwrap();
        let b = run(25, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let s = random_bell_diagonal(&mut rng);
            let sum: f64 = s.as_array().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            assert!(s.as_array().iter().all(|&w| w >= 0.0));
        }
    }
}

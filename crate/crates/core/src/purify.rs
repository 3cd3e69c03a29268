//! Purification of Bell-diagonal pairs: the two-pair distillation step, its
//! symmetric iteration to a target fidelity, and closed-form pair counts for
//! dephased (QND) inputs.

use crate::bell_state::{BellDiagonal, Robustness};
use crate::error::{Error, Result};
use crate::swap::ChainConvention;

/// Default cap on purification rounds. Chain outputs just above the
/// entanglement threshold need a few tens of rounds; anything that has not
/// converged by 64 is reported as non-convergent.
pub const DEFAULT_MAX_ROUNDS: u32 = 64;

/// Outcome of iterated purification.
///
/// `pairs_m = 2^rounds_m` is the number of input pairs consumed by the
/// balanced pairing tree; `success_probs` holds the per-round coincidence
/// probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct PurificationResult {
    pub rounds_m: u32,
    pub pairs_m: u128,
    pub final_state: BellDiagonal,
    pub converged: bool,
    pub success_probs: Vec<f64>,
}

impl PurificationResult {
    fn new(rounds_m: u32, final_state: BellDiagonal, converged: bool, probs: Vec<f64>) -> Self {
        Self {
            rounds_m,
            pairs_m: 1u128 << rounds_m,
            final_state,
            converged,
            success_probs: probs,
        }
    }
}

/// One distillation round combining two Bell-diagonal pairs: local
/// rotations, bilateral C-NOT, and coincidence post-selection of the target
/// qubits. Returns the kept pair and the coincidence probability `N`.
///
/// ```text
/// out1 = (a1 b1 + a4 b4)/N      out2 = (a1 b4 + a4 b1)/N
/// out3 = (a2 b2 + a3 b3)/N      out4 = (a2 b3 + a3 b2)/N
/// N = (a1 + a4)(b1 + b4) + (a2 + a3)(b2 + b3)
/// ```
pub fn deutsch_step(a: BellDiagonal, b: BellDiagonal) -> Result<(BellDiagonal, f64)> {
    let [a1, a2, a3, a4] = a.as_array();
    let [b1, b2, b3, b4] = b.as_array();
    let n = (a1 + a4) * (b1 + b4) + (a2 + a3) * (b2 + b3);
    if n <= 0.0 {
        return Err(Error::PurificationImpossible);
    }
    let out = BellDiagonal::renormalized([
        (a1 * b1 + a4 * b4) / n,
        (a1 * b4 + a4 * b1) / n,
        (a2 * b2 + a3 * b3) / n,
        (a2 * b3 + a3 * b2) / n,
    ]);
    Ok((out, n))
}

/// Symmetric iteration of [`deutsch_step`]: every round pairs two identical
/// copies of the current state, so `m` rounds consume `2^m` input pairs.
///
/// Stops successfully at the first round with `b1 ≥ target_b1`. Reports
/// `converged = false` (never an error) when `b1 ≤ 1/2` (outside the
/// convergence region), when a round makes no progress at all, when a
/// round's coincidence probability vanishes, or when `max_rounds` is
/// exhausted. A transient decrease of `b1` is not a failure: `b1 > 1/2` is
/// preserved by every round and the iteration still reaches the fixed point.
pub fn purify_to_target(
    state: BellDiagonal,
    target_b1: f64,
    max_rounds: u32,
) -> Result<PurificationResult> {
    if !target_b1.is_finite() || target_b1 <= 0.5 || target_b1 >= 1.0 {
        return Err(Error::OutOfRange {
            name: "target_b1",
            value: target_b1,
            range: "(1/2, 1)",
        });
    }
    if !(1..=127).contains(&max_rounds) {
        return Err(Error::OutOfRange {
            name: "max_rounds",
            value: max_rounds as f64,
            range: "[1, 127]",
        });
    }

    let mut current = state;
    let mut probs = Vec::new();
    if current.b1() >= target_b1 {
        return Ok(PurificationResult::new(0, current, true, probs));
    }

    for round in 1..=max_rounds {
        let before = current.b1();
        if before <= 0.5 {
            return Ok(PurificationResult::new(round - 1, current, false, probs));
        }
        let (next, n) = match deutsch_step(current, current) {
            Ok(step) => step,
            Err(_) => return Ok(PurificationResult::new(round - 1, current, false, probs)),
        };
        probs.push(n);
        current = next;
        if current.b1() >= target_b1 {
            return Ok(PurificationResult::new(round, current, true, probs));
        }
        if current.b1() == before {
            return Ok(PurificationResult::new(round, current, false, probs));
        }
    }
    Ok(PurificationResult::new(max_rounds, current, false, probs))
}

/// Rapidity-ratio lower bound on the pair count needed to restore the
/// near-user robustness after a chain of `l` switchers:
///
/// `M = Int( (ln(1+R) − ln(1−R)) / (ln(1+R^E) − ln(1−R^E)) ) + 1`
///
/// equivalently `Int(arctanh R / arctanh R^E) + 1`.
pub fn qnd_pairs_bound(r: Robustness, l: u32, conv: ChainConvention) -> Result<u128> {
    if r.value() == 0.0 {
        return Err(Error::PurificationImpossible);
    }
    let chained = chained_rapidity(r, l, conv)?;
    if chained == 0.0 {
        // R^E underflowed: no finite pair count restores the chain.
        return Err(Error::PairBoundOverflow);
    }
    let ratio = r.rapidity() / chained;
    if !ratio.is_finite() || ratio >= u128::MAX as f64 {
        return Err(Error::PairBoundOverflow);
    }
    Ok(ratio.floor() as u128 + 1)
}

fn chained_rapidity(r: Robustness, l: u32, conv: ChainConvention) -> Result<f64> {
    let e = conv.pair_count(l)?;
    Ok(r.value().powi(e as i32).atanh())
}

/// Smallest number of purification rounds `m` with
/// `tanh(2^m · arctanh R_long) ≥ R_target`.
///
/// Each symmetric round doubles the rapidity, so the comparison is done in
/// rapidity space directly. Inputs already at or above the target need no
/// rounds.
pub fn qnd_purify_closed(r_long: Robustness, r_target: Robustness) -> Result<u32> {
    if r_long.value() == 0.0 {
        return Err(Error::PurificationImpossible);
    }
    let target = r_target.rapidity();
    let mut rapidity = r_long.rapidity();
    let mut m = 0u32;
    while rapidity < target {
        rapidity *= 2.0;
        m += 1;
    }
    Ok(m)
}

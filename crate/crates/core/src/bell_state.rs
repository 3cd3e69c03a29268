//! Bell-diagonal two-qubit states and the parameterizations used throughout:
//! the Werner mixing parameter `p` and the dephasing robustness `R`.
//!
//! Only the four Bell-basis fidelities are stored here. Both the swapping
//! rule and the purification rule are closed on these diagonals, so
//! off-diagonal matrix elements never enter the fast paths; the full complex
//! density matrix lives in [`crate::oracle`] alone.

use crate::error::{Error, Result};

/// Tolerance for the probability-sum invariant. Constructors renormalize
/// deviations below this and reject anything larger.
pub const PROB_SUM_TOL: f64 = 1e-12;

/// A two-qubit state diagonal in the Bell basis: four non-negative
/// fidelities `b1..b4` summing to one.
///
/// `b1` is the fidelity with the target state (|00⟩+|11⟩)/√2; `b2..b4`
/// follow the basis ordering (|00⟩−|11⟩)/√2, (|01⟩+|10⟩)/√2, (|01⟩−|10⟩)/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonal {
    b: [f64; 4],
}

impl BellDiagonal {
    /// Builds a state from four Bell fidelities.
    ///
    /// Weights below `-PROB_SUM_TOL` and sums deviating from 1 by more than
    /// [`PROB_SUM_TOL`] are rejected; smaller deviations are renormalized.
    pub fn new(b1: f64, b2: f64, b3: f64, b4: f64) -> Result<Self> {
        let mut b = [b1, b2, b3, b4];
        for (i, w) in b.iter_mut().enumerate() {
            if !w.is_finite() || *w < -PROB_SUM_TOL {
                return Err(Error::NegativeWeight {
                    index: i + 1,
                    value: *w,
                });
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = b.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self::renormalized(b))
    }

    /// Renormalizes raw non-negative weights. Used by the fidelity maps so
    /// that long iteration chains do not accumulate rounding in the sum.
    pub(crate) fn renormalized(mut b: [f64; 4]) -> Self {
        for w in b.iter_mut() {
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = b.iter().sum();
        if sum > 0.0 && sum != 1.0 {
            for w in b.iter_mut() {
                *w /= sum;
            }
        }
        Self { b }
    }

    /// The perfect pair (1, 0, 0, 0): identity of the swapping composition.
    pub fn perfect() -> Self {
        Self { b: [1.0, 0.0, 0.0, 0.0] }
    }

    /// The maximally mixed state (1/4, 1/4, 1/4, 1/4): fixed point of swapping.
    pub fn maximally_mixed() -> Self {
        Self { b: [0.25; 4] }
    }

    /// Werner state for mixing parameter `p`:
    /// `(p + (1−p)/4, (1−p)/4, (1−p)/4, (1−p)/4)`.
    pub fn from_werner(p: WernerParam) -> Self {
        let q = (1.0 - p.value()) / 4.0;
        Self::renormalized([p.value() + q, q, q, q])
    }

    /// State left by the dephasing monitor with robustness `R`:
    /// `((1+R)/2, (1−R)/2, 0, 0)`.
    pub fn from_robustness(r: Robustness) -> Self {
        let b1 = (1.0 + r.value()) / 2.0;
        Self::renormalized([b1, 1.0 - b1, 0.0, 0.0])
    }

    pub fn b1(&self) -> f64 {
        self.b[0]
    }

    pub fn b2(&self) -> f64 {
        self.b[1]
    }

    pub fn b3(&self) -> f64 {
        self.b[2]
    }

    pub fn b4(&self) -> f64 {
        self.b[3]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.b
    }

    /// Werner parameter read back from the target fidelity, `p = (4·b1 − 1)/3`.
    pub fn to_werner(&self) -> Result<WernerParam> {
        WernerParam::new((4.0 * self.b1() - 1.0) / 3.0)
    }
}

/// Werner mixing parameter `p ∈ [0, 1]`; the state's target fidelity is
/// `b1 = (3p + 1)/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam {
    p: f64,
}

impl WernerParam {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange {
                name: "p",
                value: p,
                range: "[0, 1]",
            });
        }
        Ok(Self { p })
    }

    pub fn value(&self) -> f64 {
        self.p
    }

    /// Entanglement factor `Λ = (1 − 3p)/2`; the state is entangled when
    /// `Λ < 0`.
    pub fn entanglement_factor(&self) -> f64 {
        (1.0 - 3.0 * self.p) / 2.0
    }

    /// Maximal CHSH value `2√2·p`; the state admits no local-realistic
    /// model when this exceeds 2.
    pub fn bell_chsh_factor(&self) -> f64 {
        2.0 * std::f64::consts::SQRT_2 * self.p
    }
}

/// Robustness `R ∈ [0, 1)` of a pair against dephasing monitoring, with its
/// rapidity `r = arctanh R`. The corresponding target fidelity is
/// `b1 = (1 + R)/2`.
///
/// Robustness composes multiplicatively under swapping while the rapidity
/// doubles per symmetric purification round, which makes pair accounting a
/// matter of powers of two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Robustness {
    r: f64,
}

impl Robustness {
    pub fn new(r: f64) -> Result<Self> {
        if !r.is_finite() || !(0.0..1.0).contains(&r) {
            return Err(Error::OutOfRange {
                name: "R",
                value: r,
                range: "[0, 1)",
            });
        }
        Ok(Self { r })
    }

    /// Robustness with the given rapidity, `R = tanh r`.
    pub fn from_rapidity(rapidity: f64) -> Result<Self> {
        if !rapidity.is_finite() || rapidity < 0.0 {
            return Err(Error::OutOfRange {
                name: "rapidity",
                value: rapidity,
                range: "[0, ∞)",
            });
        }
        Self::new(rapidity.tanh())
    }

    pub fn value(&self) -> f64 {
        self.r
    }

    /// Rapidity `r = arctanh R`.
    pub fn rapidity(&self) -> f64 {
        self.r.atanh()
    }

    /// Target fidelity `(1 + R)/2` of the monitored pair.
    pub fn fidelity(&self) -> f64 {
        (1.0 + self.r) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn werner_pure_bell_state() {
        let s = BellDiagonal::from_werner(WernerParam::new(1.0).unwrap());
        assert_eq!(s.as_array(), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn werner_maximally_mixed() {
        let s = BellDiagonal::from_werner(WernerParam::new(0.0).unwrap());
        assert_eq!(s.as_array(), [0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn werner_fig3_fidelity() {
        let s = BellDiagonal::from_werner(WernerParam::new(0.99).unwrap());
        assert!((s.b1() - 0.9925).abs() < 1e-12);
    }

    #[test]
    fn robustness_fully_decohered() {
        let s = BellDiagonal::from_robustness(Robustness::new(0.0).unwrap());
        assert_eq!(s.as_array(), [0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn robustness_fig2_fidelities() {
        let a = BellDiagonal::from_robustness(Robustness::new(0.985).unwrap());
        assert!((a.b1() - 0.9925).abs() < 1e-12);
        let c = BellDiagonal::from_robustness(Robustness::new(0.925).unwrap());
        assert!((c.b1() - 0.9625).abs() < 1e-12);
    }

    #[test]
    fn entanglement_factor_values() {
        assert!(WernerParam::new(1.0 / 3.0).unwrap().entanglement_factor().abs() < 1e-12);
        assert!((WernerParam::new(1.0).unwrap().entanglement_factor() + 1.0).abs() < 1e-12);
        assert!((WernerParam::new(0.95).unwrap().entanglement_factor() + 0.925).abs() < 1e-12);
    }

    #[test]
    fn chsh_factor_values() {
        let max = WernerParam::new(1.0).unwrap().bell_chsh_factor();
        assert!((max - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        let threshold = WernerParam::new(1.0 / std::f64::consts::SQRT_2)
            .unwrap()
            .bell_chsh_factor();
        assert!((threshold - 2.0).abs() < 1e-12);
        let v = WernerParam::new(0.95).unwrap().bell_chsh_factor();
        assert!((v - 2.6870057685088806).abs() < 1e-12);
    }

    #[test]
    fn parameter_range_checks() {
        assert!(WernerParam::new(-0.01).is_err());
        assert!(WernerParam::new(1.01).is_err());
        assert!(WernerParam::new(f64::NAN).is_err());
        assert!(Robustness::new(-0.1).is_err());
        assert!(Robustness::new(1.0).is_err());
    }

    #[test]
    fn constructor_rejects_bad_weights() {
        assert!(matches!(
            BellDiagonal::new(0.5, 0.5, 0.1, -0.1),
            Err(Error::NegativeWeight { index: 4, .. })
        ));
        assert!(matches!(
            BellDiagonal::new(0.5, 0.5, 0.1, 0.0),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn constructor_renormalizes_small_drift() {
        let eps = 4e-13;
        let s = BellDiagonal::new(0.7 + eps, 0.1, 0.1, 0.1).unwrap();
        let sum: f64 = s.as_array().iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rapidity_round_trip() {
        let r = Robustness::new(0.97).unwrap();
        let back = Robustness::from_rapidity(r.rapidity()).unwrap();
        assert!((back.value() - 0.97).abs() < 1e-12);
    }

    #[test]
    fn robustness_entangled_iff_positive() {
        assert!(BellDiagonal::from_robustness(Robustness::new(0.0).unwrap()).b1() <= 0.5);
        assert!(BellDiagonal::from_robustness(Robustness::new(1e-9).unwrap()).b1() > 0.5);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn werner_states_are_valid(p in 0.0..=1.0f64) {
                let s = BellDiagonal::from_werner(WernerParam::new(p).unwrap());
                let sum: f64 = s.as_array().iter().sum();
                prop_assert!((sum - 1.0).abs() < 1e-15);
                prop_assert!(s.as_array().iter().all(|&w| w >= 0.0));
            }

            #[test]
            fn werner_round_trip(p in 0.0..=1.0f64) {
                let s = BellDiagonal::from_werner(WernerParam::new(p).unwrap());
                let back = s.to_werner().unwrap();
                prop_assert!((back.value() - p).abs() < 1e-12);
            }

            #[test]
            fn dephased_pair_entangled_iff_robust(r in 0.0..1.0f64) {
                let s = BellDiagonal::from_robustness(Robustness::new(r).unwrap());
                prop_assert_eq!(s.b1() > 0.5, r > 0.0);
            }

            #[test]
            fn factors_are_monotone(p in 0.0..1.0f64, dp in 1e-6..0.5f64) {
                let q = (p + dp).min(1.0);
                prop_assume!(q > p);
                let lo = WernerParam::new(p).unwrap();
                let hi = WernerParam::new(q).unwrap();
                prop_assert!(hi.entanglement_factor() < lo.entanglement_factor());
                prop_assert!(hi.bell_chsh_factor() > lo.bell_chsh_factor());
            }
        }
    }
}

//! Segment planning: nested-protocol resource totals, the Werner
//! entanglement threshold `L_max`, the half-threshold switcher restriction,
//! and `M(L)` sweep curves with growth classification.

use crate::bell_state::{BellDiagonal, Robustness, WernerParam};
use crate::error::{Error, Result};
use crate::purify::{self, DEFAULT_MAX_ROUNDS};
use crate::swap::{self, ChainConvention};

/// Decoherence model assumed for the elementary pairs of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepModel {
    /// Dephased pairs `((1+R)/2, (1−R)/2, 0, 0)`; robustness composes as `R^E`.
    Qnd,
    /// Werner pairs; the mixing parameter composes as `p^E`. The most
    /// expensive case at equal working fidelity.
    Werner,
}

impl SweepModel {
    pub fn label(self) -> &'static str {
        match self {
            SweepModel::Qnd => "qnd",
            SweepModel::Werner => "werner",
        }
    }
}

impl std::str::FromStr for SweepModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qnd" => Ok(SweepModel::Qnd),
            "werner" => Ok(SweepModel::Werner),
            _ => Err(Error::Parse {
                name: "model",
                got: s.to_string(),
                expected: "qnd|werner",
            }),
        }
    }
}

/// Growth regime of `M(L)` read off a sweep curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    Exponential,
    SuperExponential,
    Diverged,
}

impl GrowthClass {
    pub fn label(self) -> &'static str {
        match self {
            GrowthClass::Exponential => "exponential",
            GrowthClass::SuperExponential => "superexponential",
            GrowthClass::Diverged => "diverged",
        }
    }
}

/// Tail window (in points) over which log₂ M second differences are averaged.
pub const GROWTH_WINDOW: usize = 5;
/// Regime threshold on the mean second difference of log₂ M: at most this in
/// magnitude is exponential growth, anything larger is super-exponential.
pub const GROWTH_SECOND_DIFF_THRESHOLD: f64 = 0.05;
/// Minimum number of converged points needed before classifying.
pub const GROWTH_MIN_POINTS: usize = 4;

/// One sweep entry: chain output fidelity and purification cost at `L`
/// switchers.
///
/// `rounds_m` is the number of purification rounds (the protocol consumes
/// `2^m` pairs). `pairs` is the model's headline pair count: `2^m` for the
/// Werner model, the rapidity lower bound for the QND model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub l: u32,
    pub chain_b1: f64,
    pub rounds_m: u32,
    pub pairs: u128,
    pub converged: bool,
}

/// `M(L)` curve for one model, working fidelity, and exponent convention.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCurve {
    pub model: SweepModel,
    pub working_b1: f64,
    pub convention: ChainConvention,
    pub points: Vec<SweepPoint>,
}

impl SweepCurve {
    /// Classification of the prefix ending at point `index`; `None` while
    /// fewer than [`GROWTH_MIN_POINTS`] converged points are available.
    pub fn growth_class_at(&self, index: usize) -> Option<GrowthClass> {
        classify_points(&self.points[..=index]).ok()
    }

    pub fn converged_points(&self) -> impl Iterator<Item = &SweepPoint> {
        self.points.iter().filter(|p| p.converged)
    }

    pub fn last_converged_l(&self) -> Option<u32> {
        self.converged_points().last().map(|p| p.l)
    }
}

/// Switcher plan for one segment: the half-threshold restriction applied to
/// a working fidelity, the purification cost at the restricted `L`, and the
/// nested-protocol resource total for `segments` elementary links.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentPlan {
    pub model: SweepModel,
    pub working_b1: f64,
    pub segments: u64,
    pub convention: ChainConvention,
    /// Largest real switcher count keeping the Werner chain entangled.
    pub l_max: f64,
    /// Half of `l_max`: the restriction that prevents super-exponential cost.
    pub l_onpp: f64,
    /// The restriction formula is stated for working fidelities above 0.95.
    pub onpp_in_validity_range: bool,
    /// True when the restriction bound is below one switcher.
    pub onpp_allows_no_switcher: bool,
    /// Switcher count actually planned: `floor(l_onpp)`, at least 1.
    pub l: u32,
    pub chain_b1: f64,
    pub rounds_m: u32,
    /// Pairs consumed per segment and nesting level, `2^rounds_m`.
    pub pairs_m: u128,
    /// Rapidity lower bound on the pair count (QND model only).
    pub qnd_pair_bound: Option<u128>,
    /// Growth regime of the sweep up to the planned `L`.
    pub growth_class: Option<GrowthClass>,
    pub total_resources: f64,
    pub total_resources_log10: f64,
}

/// Total elementary pairs of the nested protocol:
/// `N^(log_{L+1} M + 1)`, evaluated in log space.
///
/// `M = 1` returns exactly `segments` (the logarithm vanishes identically).
pub fn total_resources(segments: u64, l: u32, m_pairs: f64) -> Result<f64> {
    let ln_total = total_resources_ln(segments, l, m_pairs)?;
    if m_pairs == 1.0 {
        // log_{L+1} 1 vanishes identically; keep N exact.
        return Ok(segments as f64);
    }
    Ok(ln_total.exp())
}

/// Base-10 logarithm of [`total_resources`], usable when the total itself
/// overflows `f64`.
pub fn total_resources_log10(segments: u64, l: u32, m_pairs: f64) -> Result<f64> {
    Ok(total_resources_ln(segments, l, m_pairs)? / std::f64::consts::LN_10)
}

fn total_resources_ln(segments: u64, l: u32, m_pairs: f64) -> Result<f64> {
    if segments < 1 {
        return Err(Error::OutOfRange {
            name: "segments",
            value: segments as f64,
            range: "[1, ∞)",
        });
    }
    if l < 1 {
        return Err(Error::ZeroSwitchers);
    }
    if !m_pairs.is_finite() || m_pairs < 1.0 {
        return Err(Error::OutOfRange {
            name: "m_pairs",
            value: m_pairs,
            range: "[1, ∞)",
        });
    }
    let exponent = m_pairs.ln() / ((l + 1) as f64).ln() + 1.0;
    Ok(exponent * (segments as f64).ln())
}

fn check_working_b1(working_b1: f64) -> Result<()> {
    if !working_b1.is_finite() || working_b1 <= 0.5 || working_b1 >= 1.0 {
        return Err(Error::OutOfRange {
            name: "working_b1",
            value: working_b1,
            range: "(1/2, 1)",
        });
    }
    Ok(())
}

/// Largest real switcher count for which the Werner chain output stays
/// entangled (`b1' > 1/2`): `ln 3 / (ln 3 − ln(4·b1 − 1))`.
pub fn l_max_werner(working_b1: f64) -> Result<f64> {
    check_working_b1(working_b1)?;
    let ln3 = 3.0f64.ln();
    Ok(ln3 / (ln3 - (4.0 * working_b1 - 1.0).ln()))
}

/// Switcher restriction preventing super-exponential pair overhead:
/// `1 / (2·(1 − ln(4·b1 − 1)/ln 3))`, half of [`l_max_werner`].
///
/// Stated for working fidelities above 0.95.
pub fn onpp_restriction(working_b1: f64) -> Result<f64> {
    if !working_b1.is_finite() || working_b1 <= 0.95 || working_b1 >= 1.0 {
        return Err(Error::OutOfRange {
            name: "working_b1",
            value: working_b1,
            range: "(0.95, 1)",
        });
    }
    let ln3 = 3.0f64.ln();
    Ok(1.0 / (2.0 * (1.0 - (4.0 * working_b1 - 1.0).ln() / ln3)))
}

/// Sweeps the purification cost over switcher counts at a fixed working
/// fidelity. Infeasible points are flagged, never dropped.
///
/// The Werner model additionally accepts `working_b1 = 1` (perfect pairs
/// survive every chain and need no purification).
pub fn sweep_m_of_l(
    model: SweepModel,
    working_b1: f64,
    l_values: &[u32],
    conv: ChainConvention,
) -> Result<SweepCurve> {
    if !(model == SweepModel::Werner && working_b1 == 1.0) {
        check_working_b1(working_b1)?;
    }
    if l_values.is_empty() || l_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSweepRange);
    }

    let mut points = Vec::with_capacity(l_values.len());
    match model {
        SweepModel::Qnd => {
            let r = Robustness::new(2.0 * working_b1 - 1.0)?;
            for &l in l_values {
                let chained = swap::chain_robustness(r, l, conv)?;
                let chain_b1 = chained.fidelity();
                let point = match (
                    purify::qnd_purify_closed(chained, r),
                    purify::qnd_pairs_bound(r, l, conv),
                ) {
                    (Ok(rounds_m), Ok(pairs)) => SweepPoint {
                        l,
                        chain_b1,
                        rounds_m,
                        pairs,
                        converged: true,
                    },
                    // Rapidity underflow: no finite pair count at this L.
                    _ => SweepPoint {
                        l,
                        chain_b1,
                        rounds_m: 0,
                        pairs: 0,
                        converged: false,
                    },
                };
                points.push(point);
            }
        }
        SweepModel::Werner => {
            for &l in l_values {
                let chain_b1 = swap::chain_werner_fidelity(working_b1, l, conv)?;
                let point = if chain_b1 >= working_b1 {
                    // Already at the working fidelity (L = 1 identity, or
                    // perfect pairs): nothing to distill.
                    SweepPoint {
                        l,
                        chain_b1,
                        rounds_m: 0,
                        pairs: 1,
                        converged: true,
                    }
                } else {
                    let p_chain = WernerParam::new((4.0 * chain_b1 - 1.0) / 3.0)?;
                    let state = BellDiagonal::from_werner(p_chain);
                    let result =
                        purify::purify_to_target(state, working_b1, DEFAULT_MAX_ROUNDS)?;
                    SweepPoint {
                        l,
                        chain_b1,
                        rounds_m: result.rounds_m,
                        pairs: result.pairs_m,
                        converged: result.converged,
                    }
                };
                points.push(point);
            }
        }
    }

    Ok(SweepCurve {
        model,
        working_b1,
        convention: conv,
        points,
    })
}

/// Growth regime of a full sweep curve: `Diverged` when the tail failed to
/// converge, otherwise the mean second difference of log₂ M over the last
/// [`GROWTH_WINDOW`] converged points against
/// [`GROWTH_SECOND_DIFF_THRESHOLD`].
pub fn classify_growth(curve: &SweepCurve) -> Result<GrowthClass> {
    classify_points(&curve.points)
}

fn classify_points(points: &[SweepPoint]) -> Result<GrowthClass> {
    let log_pairs: Vec<f64> = points
        .iter()
        .filter(|p| p.converged)
        .map(|p| (p.pairs as f64).log2())
        .collect();
    if log_pairs.len() < GROWTH_MIN_POINTS {
        return Err(Error::TooFewPoints(log_pairs.len()));
    }
    if let Some(last) = points.last() {
        if !last.converged {
            return Ok(GrowthClass::Diverged);
        }
    }
    let window = &log_pairs[log_pairs.len().saturating_sub(GROWTH_WINDOW)..];
    let second_diffs: Vec<f64> = window
        .windows(3)
        .map(|w| w[2] - 2.0 * w[1] + w[0])
        .collect();
    let mean = second_diffs.iter().sum::<f64>() / second_diffs.len() as f64;
    if mean.abs() <= GROWTH_SECOND_DIFF_THRESHOLD {
        Ok(GrowthClass::Exponential)
    } else {
        Ok(GrowthClass::SuperExponential)
    }
}

/// Plans one segment under the half-threshold restriction: caps `L` at
/// `floor(l_max/2)`, computes the purification cost there, and totals the
/// nested-protocol resources for `segments` links.
pub fn plan_segment(
    model: SweepModel,
    segments: u64,
    working_b1: f64,
    conv: ChainConvention,
) -> Result<SegmentPlan> {
    check_working_b1(working_b1)?;
    if segments < 2 {
        return Err(Error::OutOfRange {
            name: "segments",
            value: segments as f64,
            range: "[2, ∞)",
        });
    }

    let l_max = l_max_werner(working_b1)?;
    let onpp_in_validity_range = working_b1 > 0.95;
    let l_onpp = if onpp_in_validity_range {
        onpp_restriction(working_b1)?
    } else {
        l_max / 2.0
    };
    let onpp_allows_no_switcher = l_onpp < 1.0;
    let l = (l_onpp.floor() as u32).max(1);

    let l_values: Vec<u32> = (1..=l).collect();
    let curve = sweep_m_of_l(model, working_b1, &l_values, conv)?;
    let growth_class = classify_growth(&curve).ok();
    let at_l = *curve.points.last().expect("sweep range is non-empty");

    let pairs_m = 1u128 << at_l.rounds_m;
    let qnd_pair_bound = match model {
        SweepModel::Qnd => Some(at_l.pairs),
        SweepModel::Werner => None,
    };
    let total = total_resources(segments, l, pairs_m as f64)?;
    let total_log10 = total_resources_log10(segments, l, pairs_m as f64)?;

    Ok(SegmentPlan {
        model,
        working_b1,
        segments,
        convention: conv,
        l_max,
        l_onpp,
        onpp_in_validity_range,
        onpp_allows_no_switcher,
        l,
        chain_b1: at_l.chain_b1,
        rounds_m: at_l.rounds_m,
        pairs_m,
        qnd_pair_bound,
        growth_class,
        total_resources: total,
        total_resources_log10: total_log10,
    })
}

//! The f, g and h processing units and the single-path SC decoder.
//!
//! All metric values are carried as `f64`. In the likelihood domain they are
//! probabilities combined with product and sum; in the log domains they are
//! log-likelihoods combined with sum and max* (exact) or max (approximate).
//! The fixed-point domain holds integer log-likelihoods in `f64` and
//! saturates every addition to the two's-complement range of the stage width.
//!
//! Stage values are *unnormalized* joint likelihoods: the leaf value for a
//! decoded prefix is the path metric itself, with no separate accumulator.

use serde::{Deserialize, Serialize};

use crate::code::{log2_block_length, BitVector, CodeSpec};
use crate::error::{PolarError, Result};
use crate::hw::{stage_bitwidth, Activation, CycleSchedule, ScheduleKind, StageKind, UnitKind};

/// Products of likelihoods underflow quickly; beyond this length the
/// likelihood domain is refused.
pub const LIKELIHOOD_MAX_N: usize = 64;

/// Numeric domain for stage values and path metrics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricDomain {
    Likelihood,
    LogExact,
    LogApprox,
    /// Integer log-likelihoods; channel values use `q_ch` bits and stage i
    /// uses `q_ch + i` bits.
    FixedPoint { q_ch: u32 },
}

impl MetricDomain {
    /// Arithmetic for values produced by PE stage `stage` (1-based) of an
    /// m-stage decoder. Stage 0 denotes channel values.
    pub fn stage_arith(self, stage: usize, m: usize) -> Arith {
        match self {
            MetricDomain::Likelihood => Arith::Likelihood,
            MetricDomain::LogExact => Arith::LogExact,
            MetricDomain::LogApprox => Arith::LogApprox,
            MetricDomain::FixedPoint { q_ch } => {
                let width = if stage == 0 {
                    q_ch
                } else {
                    stage_bitwidth(q_ch, StageKind::Pe(stage), m).expect("stage within 1..=m")
                };
                Arith::Saturating { width }
            }
        }
    }

    /// Arithmetic for MCU/ZFU outputs and sorter inputs.
    pub fn metric_arith(self, m: usize) -> Arith {
        match self {
            MetricDomain::FixedPoint { q_ch } => Arith::Saturating {
                width: stage_bitwidth(q_ch, StageKind::Metric, m).expect("metric width"),
            },
            other => other.stage_arith(0, m),
        }
    }

    /// Rejects the likelihood domain above [`LIKELIHOOD_MAX_N`].
    pub fn check_block_length(self, n: usize) -> Result<()> {
        if self == MetricDomain::Likelihood && n > LIKELIHOOD_MAX_N {
            return Err(PolarError::LikelihoodTooLong { n, max: LIKELIHOOD_MAX_N });
        }
        Ok(())
    }

    pub fn name(self) -> String {
        match self {
            MetricDomain::Likelihood => "likelihood".into(),
            MetricDomain::LogExact => "log_exact".into(),
            MetricDomain::LogApprox => "log_approx".into(),
            MetricDomain::FixedPoint { q_ch } => format!("fixed{q_ch}"),
        }
    }
}

impl std::str::FromStr for MetricDomain {
    type Err = PolarError;

    /// Accepts `likelihood`, `log_exact`, `log_approx` and `fixed<q>` (e.g. `fixed6`).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "likelihood" => Ok(MetricDomain::Likelihood),
            "log_exact" => Ok(MetricDomain::LogExact),
            "log_approx" => Ok(MetricDomain::LogApprox),
            _ => s
                .strip_prefix("fixed")
                .and_then(|q| q.parse::<u32>().ok())
                .filter(|q| (2..=24).contains(q))
                .map(|q_ch| MetricDomain::FixedPoint { q_ch })
                .ok_or_else(|| PolarError::Parse(format!("unknown metric domain {s:?}"))),
        }
    }
}

/// The (combine, merge) semiring a unit computes in.
///
/// `combine` joins independent factors (product or sum); `merge` marginalizes
/// alternatives (sum, max* or max).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arith {
    Likelihood,
    LogExact,
    LogApprox,
    Saturating { width: u32 },
}

/// `max(x, y) + ln(1 + e^{-|x - y|})`.
pub fn max_star(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return y;
    }
    if y == f64::NEG_INFINITY {
        return x;
    }
    x.max(y) + (-(x - y).abs()).exp().ln_1p()
}

impl Arith {
    /// Largest representable magnitude of a saturating value.
    fn limit(width: u32) -> f64 {
        ((1u64 << (width - 1)) - 1) as f64
    }

    pub fn combine(self, x: f64, y: f64) -> f64 {
        match self {
            Arith::Likelihood => x * y,
            Arith::LogExact | Arith::LogApprox => x + y,
            Arith::Saturating { width } => {
                let floor = self.annihilator();
                if x <= floor || y <= floor {
                    floor
                } else {
                    let lim = Self::limit(width);
                    (x + y).clamp(-lim, lim)
                }
            }
        }
    }

    pub fn merge(self, x: f64, y: f64) -> f64 {
        match self {
            Arith::Likelihood => x + y,
            Arith::LogExact => max_star(x, y),
            Arith::LogApprox | Arith::Saturating { .. } => x.max(y),
        }
    }

    /// Identity of `combine`.
    pub fn one(self) -> f64 {
        match self {
            Arith::Likelihood => 1.0,
            _ => 0.0,
        }
    }

    /// The value ZFU writes into frozen-violating metrics; absorbing under `combine`.
    pub fn annihilator(self) -> f64 {
        match self {
            Arith::Likelihood => 0.0,
            Arith::LogExact | Arith::LogApprox => f64::NEG_INFINITY,
            Arith::Saturating { width } => -((1u64 << (width - 1)) as f64),
        }
    }

    pub fn is_annihilated(self, x: f64) -> bool {
        x <= self.annihilator()
    }
}

/// Likelihoods (or log-likelihoods) of a binary variable being 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodPair {
    pub p0: f64,
    pub p1: f64,
}

impl LikelihoodPair {
    pub const fn new(p0: f64, p1: f64) -> Self {
        Self { p0, p1 }
    }

    #[inline]
    pub fn get(&self, bit: u8) -> f64 {
        if bit == 0 {
            self.p0
        } else {
            self.p1
        }
    }
}

/// f unit: likelihood of `in1 = out1 ^ out2` given the pairs of out1 (`a`) and out2 (`b`).
#[inline]
pub fn f_unit(a: LikelihoodPair, b: LikelihoodPair, arith: Arith) -> LikelihoodPair {
    LikelihoodPair {
        p0: arith.merge(arith.combine(a.p0, b.p0), arith.combine(a.p1, b.p1)),
        p1: arith.merge(arith.combine(a.p0, b.p1), arith.combine(a.p1, b.p0)),
    }
}

/// g unit: likelihood of `in2` once `in1 = u_sum` is known.
#[inline]
pub fn g_unit(a: LikelihoodPair, b: LikelihoodPair, u_sum: u8, arith: Arith) -> LikelihoodPair {
    LikelihoodPair {
        p0: arith.combine(a.get(u_sum), b.p0),
        p1: arith.combine(a.get(1 - u_sum), b.p1),
    }
}

/// h unit: hard decision, 0 for frozen bits and on ties.
#[inline]
pub fn h_unit(a: LikelihoodPair, is_frozen: bool) -> u8 {
    if is_frozen || a.p0 >= a.p1 {
        0
    } else {
        1
    }
}

/// Left child values: f over pairs `(j, j + half)` of the parent.
pub(crate) fn f_layer(parent: &[LikelihoodPair], out: &mut Vec<LikelihoodPair>, arith: Arith) {
    let half = parent.len() / 2;
    out.clear();
    out.extend((0..half).map(|j| f_unit(parent[j], parent[j + half], arith)));
}

/// Right child values given the left child's codeword.
pub(crate) fn g_layer(parent: &[LikelihoodPair], left: &[u8], out: &mut Vec<LikelihoodPair>, arith: Arith) {
    let half = parent.len() / 2;
    out.clear();
    out.extend((0..half).map(|j| g_unit(parent[j], parent[j + half], left[j], arith)));
}

fn check_channel(spec: &CodeSpec, channel: &[LikelihoodPair], domain: MetricDomain) -> Result<()> {
    if channel.len() != spec.n() {
        return Err(PolarError::LengthMismatch { expected: spec.n(), actual: channel.len() });
    }
    domain.check_block_length(spec.n())
}

/// Depth-first SC walk. `decide(i, pair)` picks bit i from its leaf pair.
struct ScWalk<'a, D: FnMut(usize, LikelihoodPair) -> u8> {
    m: usize,
    domain: MetricDomain,
    decide: D,
    cycle: usize,
    schedule: &'a mut CycleSchedule,
    bits: Vec<u8>,
}

impl<D: FnMut(usize, LikelihoodPair) -> u8> ScWalk<'_, D> {
    /// Decodes the node at `depth` whose values are `input`; returns its codeword.
    fn node(&mut self, depth: usize, input: &[LikelihoodPair]) -> Vec<u8> {
        if depth == self.m {
            let i = self.bits.len();
            let bit = (self.decide)(i, input[0]);
            self.bits.push(bit);
            self.schedule.decide(self.cycle, vec![i]);
            return vec![bit];
        }
        let stage = depth + 1;
        let arith = self.domain.stage_arith(stage, self.m);
        let mut child = Vec::with_capacity(input.len() / 2);

        f_layer(input, &mut child, arith);
        self.cycle += 1;
        self.schedule.push(Activation { cycle: self.cycle, stage, unit: UnitKind::F });
        let left = self.node(stage, &child);

        g_layer(input, &left, &mut child, arith);
        self.cycle += 1;
        self.schedule.push(Activation { cycle: self.cycle, stage, unit: UnitKind::G });
        let right = self.node(stage, &child);

        left.iter().zip(&right).map(|(l, r)| l ^ r).chain(right.iter().copied()).collect()
    }
}

fn walk<D: FnMut(usize, LikelihoodPair) -> u8>(
    m: usize,
    channel: &[LikelihoodPair],
    domain: MetricDomain,
    decide: D,
) -> (Vec<u8>, CycleSchedule) {
    let mut schedule = CycleSchedule::new(channel.len(), ScheduleKind::Sc);
    let mut w = ScWalk { m, domain, decide, cycle: 0, schedule: &mut schedule, bits: Vec::new() };
    w.node(0, channel);
    let bits = std::mem::take(&mut w.bits);
    (bits, schedule)
}

/// Successive-cancellation decoding of one frame.
///
/// Returns the decoded message `u` (frozen positions forced to 0) and the
/// activation trace: one cycle per f or g layer, 2n - 2 cycles in total.
pub fn sc_decode(
    spec: &CodeSpec,
    channel: &[LikelihoodPair],
    domain: MetricDomain,
) -> Result<(BitVector, CycleSchedule)> {
    check_channel(spec, channel, domain)?;
    let (bits, trace) = walk(spec.m(), channel, domain, |i, pair| h_unit(pair, spec.is_frozen(i)));
    Ok((BitVector::from_bits(bits)?, trace))
}

/// Metric of the path `prefix` as produced by the last-stage unit for bit
/// `prefix.len() - 1`. For an empty prefix this is the root value
/// `merge(metric(0), metric(1))` of the first bit.
pub fn path_metric(channel: &[LikelihoodPair], prefix: &[u8], domain: MetricDomain) -> Result<f64> {
    let n = channel.len();
    let m = log2_block_length(n)?;
    domain.check_block_length(n)?;
    if prefix.len() > n {
        return Err(PolarError::LengthMismatch { expected: n, actual: prefix.len() });
    }
    let mut leaf = None;
    let target = prefix.len().checked_sub(1);
    walk(m, channel, domain, |i, pair| {
        match target {
            Some(t) if i == t => leaf = Some(pair.get(prefix[i])),
            None if i == 0 => leaf = Some(domain.stage_arith(m, m).merge(pair.p0, pair.p1)),
            _ => {}
        }
        prefix.get(i).copied().unwrap_or(0)
    });
    Ok(leaf.expect("walk visits every leaf"))
}

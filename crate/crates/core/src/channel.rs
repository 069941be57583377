//! BPSK over AWGN, channel likelihoods and paired Monte-Carlo trials.
//!
//! Every frame draws its information bits and noise from a ChaCha stream
//! keyed by `(seed, frame index)`, so results do not depend on how frames are
//! spread over worker threads. All decoders in one run see the same frames.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::code::{encode, BitVector, CodeSpec};
use crate::error::{PolarError, Result};
use crate::kernel::{LikelihoodPair, MetricDomain};
use crate::list::{ListConfig, ListDecoder};

/// LLR magnitude mapped to the largest fixed-point channel value.
pub const DEFAULT_LLR_CLIP: f64 = 16.0;

fn default_llr_clip() -> f64 {
    DEFAULT_LLR_CLIP
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
    pub seed: u64,
    pub domain: MetricDomain,
    /// Fixed-point quantizer range: LLRs beyond +-llr_clip saturate.
    #[serde(default = "default_llr_clip")]
    pub llr_clip: f64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64, seed: u64, domain: MetricDomain) -> Self {
        Self { ebn0_db, rate, seed, domain, llr_clip: DEFAULT_LLR_CLIP }
    }

    pub fn with_domain(self, domain: MetricDomain) -> Self {
        Self { domain, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate <= 1.0) {
            return Err(PolarError::Rate(self.rate));
        }
        if self.ebn0_db.is_nan() || self.llr_clip.is_nan() || self.llr_clip <= 0.0 {
            return Err(PolarError::Parse(format!("bad channel parameters {self:?}")));
        }
        Ok(())
    }

    /// Noise variance `1 / (2 R 10^(Eb/N0 / 10))`; zero for infinite Eb/N0.
    pub fn sigma2(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }

    fn frame_rng(&self, frame: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(frame);
        rng
    }
}

fn draw_noise(rng: &mut ChaCha8Rng, x: &[u8], sigma: f64) -> Vec<f64> {
    x.iter()
        .map(|&b| {
            let s = if b == 0 { 1.0 } else { -1.0 };
            let z: f64 = rng.sample(StandardNormal);
            s + sigma * z
        })
        .collect()
}

/// BPSK-modulates `x` (0 -> +1) and adds the noise of frame `frame`.
pub fn modulate_and_corrupt(x: &BitVector, cfg: &ChannelConfig, frame: u64) -> Vec<f64> {
    draw_noise(&mut cfg.frame_rng(frame), x.as_slice(), cfg.sigma2().sqrt())
}

/// The information bits and received word of frame `frame`.
pub fn generate_frame(spec: &CodeSpec, cfg: &ChannelConfig, frame: u64) -> Result<(BitVector, Vec<f64>)> {
    let mut rng = cfg.frame_rng(frame);
    let info: Vec<u8> = (0..spec.k()).map(|_| rng.random_range(0..2u8)).collect();
    let u = spec.embed(&BitVector::from_bits(info)?)?;
    let x = encode(spec, &u)?;
    let y = draw_noise(&mut rng, x.as_slice(), cfg.sigma2().sqrt());
    Ok((u, y))
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Per-symbol channel pairs in `cfg.domain`.
///
/// Likelihood: normalized Gaussian likelihoods. Log-exact: their logarithms.
/// Log-approx: the max-normalized pair `(-max(0,-llr), -max(0,llr))`.
/// Fixed point: the same pair with the LLR quantized to `q_ch` bits over
/// `[-llr_clip, llr_clip]`. In every log domain `p0 - p1 = 2y/sigma^2`.
pub fn channel_likelihoods(y: &[f64], cfg: &ChannelConfig) -> Vec<LikelihoodPair> {
    let sigma2 = cfg.sigma2();
    y.iter()
        .map(|&yi| {
            let llr = 2.0 * yi / sigma2;
            // adding 0.0 turns -0.0 into +0.0
            match cfg.domain {
                MetricDomain::Likelihood => {
                    LikelihoodPair::new(1.0 / (1.0 + (-llr).exp()), 1.0 / (1.0 + llr.exp()))
                }
                MetricDomain::LogExact => LikelihoodPair::new(-softplus(-llr) + 0.0, -softplus(llr) + 0.0),
                MetricDomain::LogApprox => LikelihoodPair::new(-(-llr).max(0.0) + 0.0, -llr.max(0.0) + 0.0),
                MetricDomain::FixedPoint { q_ch } => {
                    let top = ((1u64 << (q_ch - 1)) - 1) as f64;
                    let q = (llr * top / cfg.llr_clip).round().clamp(-top, top);
                    LikelihoodPair::new(-(-q).max(0.0) + 0.0, -q.max(0.0) + 0.0)
                }
            }
        })
        .collect()
}

/// Deterministic error counts of one decoder over one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub decoder: ListConfig,
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    /// Decoded words with a 1 on a frozen position.
    pub frozen_violations: u64,
}

impl TrialReport {
    pub fn fer(&self) -> f64 {
        self.frame_errors as f64 / self.frames as f64
    }

    pub fn row(&self, k: usize) -> ResultRow {
        ResultRow {
            ebn0_db: self.ebn0_db,
            decoder: self.decoder.label(),
            frames: self.frames,
            frame_errors: self.frame_errors,
            bit_errors: self.bit_errors,
            fer: self.fer(),
            ber: self.bit_errors as f64 / (self.frames as f64 * k as f64),
        }
    }
}

/// Wall-clock decode statistics; not part of the deterministic report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodeTiming {
    pub total_secs: f64,
    pub mean_frame_us: f64,
}

/// Reports plus the per-frame error flags needed for paired comparisons.
#[derive(Clone, Debug)]
pub struct TrialRun {
    pub reports: Vec<TrialReport>,
    /// `frame_errors[d][f]`: decoder d failed on frame f.
    pub frame_errors: Vec<Vec<bool>>,
    pub timing: Vec<DecodeTiming>,
}

struct FrameOutcome {
    failed: bool,
    bit_errors: u64,
    frozen_violation: bool,
    elapsed: Duration,
}

fn run_frame(spec: &CodeSpec, decoders: &[ListDecoder], cfg: &ChannelConfig, frame: u64) -> Result<Vec<FrameOutcome>> {
    let (u, y) = generate_frame(spec, cfg, frame)?;
    decoders
        .iter()
        .map(|dec| {
            let channel = channel_likelihoods(&y, &cfg.with_domain(dec.config().domain));
            let start = Instant::now();
            let outcome = dec.decode(&channel)?;
            let elapsed = start.elapsed();
            let bit_errors = spec
                .info_positions()
                .into_iter()
                .filter(|&i| outcome.u.get(i) != u.get(i))
                .count() as u64;
            let frozen_violation = spec.frozen_positions().into_iter().any(|i| outcome.u.get(i) != 0);
            Ok(FrameOutcome { failed: bit_errors > 0, bit_errors, frozen_violation, elapsed })
        })
        .collect()
}

/// Runs `frames` paired frames through every decoder configuration.
///
/// `cfg.domain` is ignored; each decoder receives channel pairs in its own
/// domain, computed from the same received word.
pub fn run_trials(spec: &CodeSpec, decoders: &[ListConfig], cfg: &ChannelConfig, frames: u64) -> Result<TrialRun> {
    if frames == 0 {
        return Err(PolarError::NoFrames);
    }
    cfg.validate()?;
    let built = decoders.iter().map(|&d| ListDecoder::new(spec, d)).collect::<Result<Vec<_>>>()?;

    #[cfg(feature = "parallel")]
    let outcomes: Vec<Vec<FrameOutcome>> = {
        use rayon::prelude::*;
        (0..frames).into_par_iter().map(|f| run_frame(spec, &built, cfg, f)).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let outcomes: Vec<Vec<FrameOutcome>> =
        (0..frames).map(|f| run_frame(spec, &built, cfg, f)).collect::<Result<_>>()?;

    let mut reports = Vec::with_capacity(decoders.len());
    let mut frame_errors = Vec::with_capacity(decoders.len());
    let mut timing = Vec::with_capacity(decoders.len());
    for (d, &decoder) in decoders.iter().enumerate() {
        let column = outcomes.iter().map(|row| &row[d]);
        let flags: Vec<bool> = column.clone().map(|o| o.failed).collect();
        let total: Duration = column.clone().map(|o| o.elapsed).sum();
        reports.push(TrialReport {
            decoder,
            ebn0_db: cfg.ebn0_db,
            frames,
            frame_errors: flags.iter().filter(|&&f| f).count() as u64,
            bit_errors: column.clone().map(|o| o.bit_errors).sum(),
            frozen_violations: column.filter(|o| o.frozen_violation).count() as u64,
        });
        frame_errors.push(flags);
        timing.push(DecodeTiming {
            total_secs: total.as_secs_f64(),
            mean_frame_us: total.as_secs_f64() * 1e6 / frames as f64,
        });
    }
    Ok(TrialRun { reports, frame_errors, timing })
}

/// Paired comparison of two decoders' per-frame failures on the same frames.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairedComparison {
    pub frames: u64,
    /// Frames only the first decoder failed.
    pub only_first: u64,
    /// Frames only the second decoder failed.
    pub only_second: u64,
    /// FER(first) - FER(second).
    pub difference: f64,
    /// Half-width of the 95% interval of the difference.
    pub half_width: f64,
}

impl PairedComparison {
    pub fn new(first: &[bool], second: &[bool]) -> Result<Self> {
        if first.len() != second.len() {
            return Err(PolarError::LengthMismatch { expected: first.len(), actual: second.len() });
        }
        if first.is_empty() {
            return Err(PolarError::NoFrames);
        }
        let n = first.len() as f64;
        let only_first = first.iter().zip(second).filter(|&(&a, &b)| a && !b).count() as u64;
        let only_second = first.iter().zip(second).filter(|&(&a, &b)| !a && b).count() as u64;
        let difference = (only_first as f64 - only_second as f64) / n;
        let variance = ((only_first + only_second) as f64 / n - difference * difference) / n;
        Ok(Self { frames: first.len() as u64, only_first, only_second, difference, half_width: 1.96 * variance.max(0.0).sqrt() })
    }

    /// True when zero difference lies inside the 95% interval.
    pub fn equivalent(&self) -> bool {
        self.difference.abs() <= self.half_width
    }
}

/// One line of simulation output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub ebn0_db: f64,
    pub decoder: String,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
}

pub fn rows_to_csv(rows: &[ResultRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| PolarError::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| PolarError::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| PolarError::Parse(e.to_string()))
}

/// Parses CSV rows; lines starting with `#` are skipped.
pub fn rows_from_csv(text: &str) -> Result<Vec<ResultRow>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| PolarError::Parse(e.to_string()))
}

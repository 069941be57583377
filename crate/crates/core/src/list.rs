//! SC-list decoding with 2^K-bit decisions.
//!
//! Every survival path runs PE stages 1..=m-K for the current group. The
//! 2^K stage-(m-K) output pairs of a path then give the metrics of all
//! 2^(2^K) extensions directly (the MCU), frozen-violating extensions are
//! annihilated (the ZFU), and the L best candidates over all paths survive.
//! K = 0 is conventional SCL: the stage-m f or g output pair holds the two
//! extension metrics.
//!
//! Extension tuples are stored as integers with the first bit of the group in
//! the most significant position, so integer order is lexicographic order.

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::code::{BitVector, CodeSpec};
use crate::error::{PolarError, Result};
use crate::hw::{first_changed_depth, Activation, CycleSchedule, ScheduleKind, UnitKind};
use crate::kernel::{f_layer, g_layer, Arith, LikelihoodPair, MetricDomain};
use crate::sorter::{build_selector, SelectionNetwork};

/// Largest decision exponent the transform supports (2^16 extensions per path).
pub const MAX_K_BITS: u32 = 4;
/// Decision exponents above this need [`ListConfig::allow_large_k`].
pub const PRACTICAL_K_BITS: u32 = 3;

/// The 2^K x 2^K Kronecker-power matrix U used inside one decision group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalTransform {
    k_bits: u32,
    /// `columns[c]` has bit `size - 1 - r` set iff `U[r][c] = 1`.
    columns: Vec<u32>,
}

impl LocalTransform {
    pub fn new(k_bits: u32) -> Result<Self> {
        if k_bits > MAX_K_BITS {
            return Err(PolarError::DecisionWidthGuard(k_bits));
        }
        let size = 1usize << k_bits;
        let columns = (0..size)
            .map(|c| {
                (0..size)
                    .filter(|&r| c & !r == 0)
                    .fold(0u32, |mask, r| mask | 1 << (size - 1 - r))
            })
            .collect();
        Ok(Self { k_bits, columns })
    }

    pub fn k_bits(&self) -> u32 {
        self.k_bits
    }

    /// Group size 2^K.
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> u32 {
        self.columns[c]
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        ((self.columns[c] >> (self.size() - 1 - r)) & 1) as u8
    }

    /// `tuple . U(c)` over GF(2).
    #[inline]
    pub fn output_bit(&self, tuple: u32, c: usize) -> u8 {
        ((tuple & self.columns[c]).count_ones() & 1) as u8
    }

    /// The group's codeword `tuple U` as a bit vector.
    pub fn apply(&self, tuple: u32) -> Vec<u8> {
        (0..self.size()).map(|c| self.output_bit(tuple, c)).collect()
    }

    /// Checks `U U = I` over GF(2).
    pub fn is_involution(&self) -> bool {
        let size = self.size();
        (0..size).all(|r| {
            (0..size).all(|c| {
                let dot = (0..size).fold(0u8, |acc, t| acc ^ (self.entry(r, t) & self.entry(t, c)));
                dot == (r == c) as u8
            })
        })
    }
}

/// Extension metrics of one path for all 2^(2^K) tuples.
///
/// `a` and `b` are the first and second halves of the stage-(m-K) outputs.
/// Entry `t` is `base (x) prod_j a_j(t.U(j)) (x) prod_j b_j(t.U(2^(K-1)+j))`,
/// where `(x)` is the domain's combine. Decoders pass `arith.one()` as base,
/// because stage values already carry the prefix likelihood.
pub fn mcu_metrics(
    a: &[LikelihoodPair],
    b: &[LikelihoodPair],
    transform: &LocalTransform,
    base: f64,
    arith: Arith,
) -> Result<Vec<f64>> {
    if transform.k_bits() == 0 {
        return Err(PolarError::McuBypassed);
    }
    let size = transform.size();
    if a.len() != size / 2 || b.len() != size / 2 {
        return Err(PolarError::TransformSize { transform: size, inputs: a.len() + b.len() });
    }
    let inputs: Vec<LikelihoodPair> = a.iter().chain(b).copied().collect();
    Ok((0..1u32 << size)
        .map(|t| {
            inputs
                .iter()
                .enumerate()
                .fold(base, |acc, (j, pair)| arith.combine(acc, pair.get(transform.output_bit(t, j))))
        })
        .collect())
}

/// True when `tuple` sets a bit at any frozen position of the group.
#[inline]
pub fn violates_frozen(tuple: u32, frozen_flags: &[bool]) -> bool {
    let size = frozen_flags.len();
    frozen_flags.iter().enumerate().any(|(j, &f)| f && (tuple >> (size - 1 - j)) & 1 == 1)
}

/// Replaces the metric of every frozen-violating tuple with the annihilator.
pub fn zfu_apply(metrics: &[f64], frozen_flags: &[bool], arith: Arith) -> Result<Vec<f64>> {
    let expected = 1usize << frozen_flags.len();
    if metrics.len() != expected {
        return Err(PolarError::LengthMismatch { expected, actual: metrics.len() });
    }
    Ok(metrics
        .iter()
        .enumerate()
        .map(|(t, &m)| if violates_frozen(t as u32, frozen_flags) { arith.annihilator() } else { m })
        .collect())
}

/// One path extension competing for a slot in the list.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub parent: usize,
    pub tuple: u32,
    pub metric: f64,
}

impl Candidate {
    const PAD: Candidate = Candidate { parent: usize::MAX, tuple: u32::MAX, metric: f64::NEG_INFINITY };

    fn is_pad(&self) -> bool {
        self.parent == usize::MAX
    }
}

#[inline]
fn cmp_metric(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("NaN path metric")
}

/// `Greater` when `a` outranks `b`: larger metric, then smaller parent, then
/// smaller tuple.
fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    cmp_metric(a.metric, b.metric)
        .then_with(|| b.parent.cmp(&a.parent))
        .then_with(|| b.tuple.cmp(&a.tuple))
}

/// Lazily built selectors indexed by size exponent.
#[derive(Debug, Default)]
pub struct NetworkCache {
    nets: [OnceLock<SelectionNetwork>; 32],
}

impl NetworkCache {
    pub fn get(&self, s: u32) -> &SelectionNetwork {
        self.nets[s as usize].get_or_init(|| build_selector(s).expect("s >= 1"))
    }
}

fn select_in(candidates: &[Candidate], list_size: usize, arith: Arith, nets: &NetworkCache) -> Result<Vec<Candidate>> {
    if list_size == 0 {
        return Err(PolarError::ListSize);
    }
    let mut pool: Vec<Candidate> = candidates.iter().filter(|c| !arith.is_annihilated(c.metric)).copied().collect();
    if pool.is_empty() {
        // every extension is annihilated: keep the single best so the list never empties
        return Ok(candidates.iter().max_by(|a, b| rank(a, b)).into_iter().copied().collect());
    }
    // halve through bitonic selectors while the upper half still holds L entries
    while pool.len() > list_size {
        let s = pool.len().next_power_of_two().trailing_zeros().max(1);
        let lanes = 1usize << s;
        if lanes / 2 < list_size {
            break;
        }
        let net = nets.get(s);
        pool.resize(lanes, Candidate::PAD);
        net.apply_by(&mut pool, rank);
        pool = net.outputs().iter().map(|&i| pool[i]).filter(|c| !c.is_pad()).collect();
    }
    if pool.len() > list_size {
        pool.sort_by(|a, b| rank(b, a));
        pool.truncate(list_size);
    }
    pool.sort_by(|a, b| a.parent.cmp(&b.parent).then(a.tuple.cmp(&b.tuple)));
    Ok(pool)
}

/// Keeps the `list_size` best non-annihilated candidates, ordered by
/// `(parent, tuple)`. Ties rank the smaller `(parent, tuple)` higher. When
/// every candidate is annihilated the single best one is kept.
pub fn select_survivors(candidates: &[Candidate], list_size: usize, arith: Arith) -> Result<Vec<Candidate>> {
    select_in(candidates, list_size, arith, &NetworkCache::default())
}

/// List size, decision exponent and metric domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ListConfig {
    pub list_size: usize,
    pub k_bits: u32,
    pub domain: MetricDomain,
    /// Lifts the K <= 3 guard (up to K = 4).
    #[serde(default)]
    pub allow_large_k: bool,
}

impl ListConfig {
    pub fn new(list_size: usize, k_bits: u32, domain: MetricDomain) -> Self {
        Self { list_size, k_bits, domain, allow_large_k: false }
    }

    pub fn label(&self) -> String {
        format!("L{}K{}-{}", self.list_size, self.k_bits, self.domain.name())
    }
}

/// One survival path.
#[derive(Clone, Debug)]
pub struct DecodePath {
    history: Vec<u8>,
    metric: f64,
    /// `values[d]`: stage-d outputs for the current node at depth d (index 0 unused).
    values: Vec<Vec<LikelihoodPair>>,
    /// `left[d]`: codeword of the last completed left child at depth d.
    left: Vec<Vec<u8>>,
}

impl DecodePath {
    fn root(leaf_depth: usize) -> Self {
        Self {
            history: Vec::new(),
            metric: 0.0,
            values: vec![Vec::new(); leaf_depth + 1],
            left: vec![Vec::new(); leaf_depth + 1],
        }
    }

    pub fn history(&self) -> &[u8] {
        &self.history
    }

    pub fn metric(&self) -> f64 {
        self.metric
    }

    /// Folds a decided group codeword into the partial sums.
    fn absorb(&mut self, group: usize, codeword: Vec<u8>, leaf_depth: usize) {
        let (mut depth, mut node, mut cw) = (leaf_depth, group, codeword);
        while depth > 0 {
            if node % 2 == 0 {
                self.left[depth] = cw;
                return;
            }
            let left = &self.left[depth];
            let mut parent: Vec<u8> = left.iter().zip(&cw).map(|(l, r)| l ^ r).collect();
            parent.extend_from_slice(&cw);
            cw = parent;
            depth -= 1;
            node >>= 1;
        }
    }
}

/// Candidate metrics and survivors of one selection round.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub candidates: Vec<CandidateRecord>,
    /// Indices into `candidates`.
    pub survivors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub parent: usize,
    /// Extension bits, first decided bit first.
    pub bits: String,
    /// `null` in JSON when annihilated in a log domain.
    pub metric: f64,
    pub annihilated: bool,
}

/// Decoded message plus the final list.
#[derive(Clone, Debug)]
pub struct ListOutcome {
    pub u: BitVector,
    pub metric: f64,
    pub paths: Vec<DecodePath>,
}

struct Tracer {
    schedule: CycleSchedule,
    rounds: Vec<RoundRecord>,
    cycle: usize,
}

impl Tracer {
    fn tick(&mut self, stage: usize, unit: UnitKind) {
        self.cycle += 1;
        self.schedule.push(Activation { cycle: self.cycle, stage, unit });
    }
}

/// A list decoder bound to one code and configuration.
#[derive(Debug)]
pub struct ListDecoder {
    spec: CodeSpec,
    cfg: ListConfig,
    transform: LocalTransform,
    nets: NetworkCache,
}

impl ListDecoder {
    pub fn new(spec: &CodeSpec, cfg: ListConfig) -> Result<Self> {
        if cfg.list_size == 0 {
            return Err(PolarError::ListSize);
        }
        if cfg.k_bits as usize > spec.m() {
            return Err(PolarError::DecisionWidth { n: spec.n(), k_bits: cfg.k_bits });
        }
        if cfg.k_bits > PRACTICAL_K_BITS && !cfg.allow_large_k {
            return Err(PolarError::DecisionWidthGuard(cfg.k_bits));
        }
        cfg.domain.check_block_length(spec.n())?;
        Ok(Self { spec: spec.clone(), cfg, transform: LocalTransform::new(cfg.k_bits)?, nets: NetworkCache::default() })
    }

    pub fn config(&self) -> &ListConfig {
        &self.cfg
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn decode(&self, channel: &[LikelihoodPair]) -> Result<ListOutcome> {
        self.run(channel, None)
    }

    /// Decodes and also returns the activation schedule and per-round records.
    pub fn decode_traced(&self, channel: &[LikelihoodPair]) -> Result<(ListOutcome, CycleSchedule, Vec<RoundRecord>)> {
        let mut tracer = Tracer {
            schedule: CycleSchedule::new(self.spec.n(), ScheduleKind::List { k_bits: self.cfg.k_bits }),
            rounds: Vec::new(),
            cycle: 0,
        };
        let outcome = self.run(channel, Some(&mut tracer))?;
        Ok((outcome, tracer.schedule, tracer.rounds))
    }

    fn run(&self, channel: &[LikelihoodPair], mut tracer: Option<&mut Tracer>) -> Result<ListOutcome> {
        let n = self.spec.n();
        if channel.len() != n {
            return Err(PolarError::LengthMismatch { expected: n, actual: channel.len() });
        }
        let m = self.spec.m();
        let k = self.cfg.k_bits as usize;
        let size = 1usize << k;
        let leaf_depth = m - k;
        let domain = self.cfg.domain;
        let metric_arith = domain.metric_arith(m);

        let mut paths = vec![DecodePath::root(leaf_depth)];
        let mut candidates = Vec::new();
        for group in 0..n >> k {
            for depth in first_changed_depth(group, leaf_depth)..=leaf_depth {
                let arith = domain.stage_arith(depth, m);
                let left_child = (group >> (leaf_depth - depth)).is_multiple_of(2);
                for path in paths.iter_mut() {
                    let (upper, lower) = path.values.split_at_mut(depth);
                    let parent: &[LikelihoodPair] = if depth == 1 { channel } else { &upper[depth - 1] };
                    if left_child {
                        f_layer(parent, &mut lower[0], arith);
                    } else {
                        g_layer(parent, &path.left[depth], &mut lower[0], arith);
                    }
                }
                if let Some(t) = tracer.as_deref_mut() {
                    t.tick(depth, if left_child { UnitKind::F } else { UnitKind::G });
                }
            }

            let flags = &self.spec.frozen_mask()[group * size..(group + 1) * size];
            candidates.clear();
            for (pid, path) in paths.iter().enumerate() {
                let leaf: &[LikelihoodPair] = if leaf_depth == 0 { channel } else { &path.values[leaf_depth] };
                let raw = if k == 0 {
                    vec![leaf[0].p0, leaf[0].p1]
                } else {
                    mcu_metrics(&leaf[..size / 2], &leaf[size / 2..], &self.transform, metric_arith.one(), metric_arith)?
                };
                let metrics = zfu_apply(&raw, flags, metric_arith)?;
                candidates.extend(
                    metrics
                        .iter()
                        .enumerate()
                        .filter(|&(t, _)| !violates_frozen(t as u32, flags))
                        .map(|(t, &metric)| Candidate { parent: pid, tuple: t as u32, metric }),
                );
            }
            let survivors = select_in(&candidates, self.cfg.list_size, metric_arith, &self.nets)?;

            if let Some(t) = tracer.as_deref_mut() {
                if k > 0 {
                    t.tick(m, UnitKind::McZf);
                }
                t.tick(m, UnitKind::Sort);
                let cycle = t.cycle;
                t.schedule.decide(cycle, (group * size..(group + 1) * size).collect());
                t.rounds.push(round_record(group, &candidates, &survivors, size, metric_arith));
            }

            paths = self.extend_paths(paths, &survivors, group, size, leaf_depth);
        }

        let best = paths
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| cmp_metric(a.metric, b.metric).then(j.cmp(i)))
            .map(|(i, _)| i)
            .expect("list never empties");
        let u = BitVector::from_bits(paths[best].history.clone())?;
        Ok(ListOutcome { u, metric: paths[best].metric, paths })
    }

    fn extend_paths(
        &self,
        paths: Vec<DecodePath>,
        survivors: &[Candidate],
        group: usize,
        size: usize,
        leaf_depth: usize,
    ) -> Vec<DecodePath> {
        let mut uses = vec![0usize; paths.len()];
        for s in survivors {
            uses[s.parent] += 1;
        }
        let mut pool: Vec<Option<DecodePath>> = paths.into_iter().map(Some).collect();
        survivors
            .iter()
            .map(|s| {
                uses[s.parent] -= 1;
                let mut path = if uses[s.parent] == 0 {
                    pool[s.parent].take().expect("parent still present")
                } else {
                    pool[s.parent].clone().expect("parent still present")
                };
                path.history.extend((0..size).map(|j| ((s.tuple >> (size - 1 - j)) & 1) as u8));
                path.metric = s.metric;
                path.absorb(group, self.transform.apply(s.tuple), leaf_depth);
                path
            })
            .collect()
    }
}

fn round_record(round: usize, candidates: &[Candidate], survivors: &[Candidate], size: usize, arith: Arith) -> RoundRecord {
    let records = candidates
        .iter()
        .map(|c| CandidateRecord {
            parent: c.parent,
            bits: (0..size).map(|j| if (c.tuple >> (size - 1 - j)) & 1 == 1 { '1' } else { '0' }).collect(),
            metric: c.metric,
            annihilated: arith.is_annihilated(c.metric),
        })
        .collect();
    let survivors = survivors
        .iter()
        .filter_map(|s| candidates.iter().position(|c| c.parent == s.parent && c.tuple == s.tuple))
        .collect();
    RoundRecord { round, candidates: records, survivors }
}

/// Decodes one frame: the best final path, its metric and the activation trace.
pub fn scl_decode(
    spec: &CodeSpec,
    channel: &[LikelihoodPair],
    cfg: ListConfig,
) -> Result<(BitVector, f64, CycleSchedule)> {
    let (outcome, schedule, _) = ListDecoder::new(spec, cfg)?.decode_traced(channel)?;
    Ok((outcome.u, outcome.metric, schedule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hw::schedule;
    use approx::assert_abs_diff_eq;

    const A: LikelihoodPair = LikelihoodPair::new(0.8, 0.2);
    const B: LikelihoodPair = LikelihoodPair::new(0.9, 0.1);

    fn cands(metrics: &[f64]) -> Vec<Candidate> {
        metrics.iter().enumerate().map(|(i, &m)| Candidate { parent: i / 2, tuple: (i % 2) as u32, metric: m }).collect()
    }

    #[test]
    fn transform_columns_match_closed_forms() {
        let u1 = LocalTransform::new(1).unwrap();
        assert_eq!((u1.column(0), u1.column(1)), (0b11, 0b01));
        let u2 = LocalTransform::new(2).unwrap();
        // a1 <- a1^a2^a3^a4, a2 <- a2^a4, b1 <- a3^a4, b2 <- a4
        assert_eq!(
            (0..4).map(|c| u2.column(c)).collect::<Vec<_>>(),
            vec![0b1111, 0b0101, 0b0011, 0b0001]
        );
        for k in 0..=4 {
            assert!(LocalTransform::new(k).unwrap().is_involution(), "K={k}");
        }
        assert!(LocalTransform::new(5).is_err());
    }

    #[test]
    fn mcu_two_bit_example() {
        let t = LocalTransform::new(1).unwrap();
        let p = mcu_metrics(&[A], &[B], &t, 1.0, Arith::Likelihood).unwrap();
        for (got, want) in p.iter().zip([0.72, 0.02, 0.18, 0.08]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn mcu_uniform_four_bit() {
        let t = LocalTransform::new(2).unwrap();
        let half = [LikelihoodPair::new(0.5, 0.5); 2];
        let p = mcu_metrics(&half, &half, &t, 1.0, Arith::Likelihood).unwrap();
        assert_eq!(p, vec![0.0625; 16]);
    }

    #[test]
    fn mcu_errors() {
        let t0 = LocalTransform::new(0).unwrap();
        assert_eq!(mcu_metrics(&[], &[A], &t0, 1.0, Arith::Likelihood), Err(PolarError::McuBypassed));
        let t2 = LocalTransform::new(2).unwrap();
        assert_eq!(
            mcu_metrics(&[A], &[B], &t2, 1.0, Arith::Likelihood),
            Err(PolarError::TransformSize { transform: 4, inputs: 2 })
        );
    }

    #[test]
    fn zfu_examples() {
        let p = [0.72, 0.02, 0.18, 0.08];
        assert_eq!(zfu_apply(&p, &[true, false], Arith::Likelihood).unwrap(), vec![0.72, 0.02, 0.0, 0.0]);
        assert_eq!(zfu_apply(&p, &[false, true], Arith::Likelihood).unwrap(), vec![0.72, 0.0, 0.18, 0.0]);
        let all = zfu_apply(&[1.0; 16], &[true; 4], Arith::LogApprox).unwrap();
        assert_eq!(all[0], 1.0);
        assert!(all[1..].iter().all(|&m| m == f64::NEG_INFINITY));
        assert!(zfu_apply(&p, &[true], Arith::Likelihood).is_err());
    }

    #[test]
    fn select_top_four() {
        let c = cands(&[1.0, 5.0, 3.0, 7.0, 2.0, 8.0, 6.0, 4.0]);
        let s = select_survivors(&c, 4, Arith::LogApprox).unwrap();
        let mut m: Vec<f64> = s.iter().map(|c| c.metric).collect();
        m.sort_by(f64::total_cmp);
        assert_eq!(m, vec![5.0, 6.0, 7.0, 8.0]);
    }

    #[test]
    fn select_single_viable() {
        let ninf = f64::NEG_INFINITY;
        let c = cands(&[ninf, ninf, 0.3, ninf]);
        let s = select_survivors(&c, 2, Arith::LogExact).unwrap();
        assert_eq!(s, vec![Candidate { parent: 1, tuple: 0, metric: 0.3 }]);
        let none = select_survivors(&cands(&[ninf; 4]), 2, Arith::LogExact).unwrap();
        assert_eq!(none.len(), 1);
        assert_eq!((none[0].parent, none[0].tuple), (0, 0));
    }

    #[test]
    fn select_ties_prefer_small_parent_and_tuple() {
        let c = cands(&[5.0, 5.0, 5.0, 5.0, 1.0, 1.0, 1.0, 1.0]);
        let s = select_survivors(&c, 2, Arith::Likelihood).unwrap();
        assert_eq!(s.iter().map(|c| (c.parent, c.tuple)).collect::<Vec<_>>(), vec![(0, 0), (0, 1)]);
        assert_eq!(select_survivors(&c, 0, Arith::Likelihood), Err(PolarError::ListSize));
    }

    #[test]
    fn select_matches_sort_for_odd_sizes() {
        let metrics: Vec<f64> = (0..37).map(|i| ((i * 7919) % 23) as f64).collect();
        let c = cands(&metrics);
        for l in 1..=40 {
            let got = select_survivors(&c, l, Arith::LogApprox).unwrap();
            let mut want = c.clone();
            want.sort_by(|a, b| rank(b, a));
            want.truncate(l);
            want.sort_by(|a, b| a.parent.cmp(&b.parent).then(a.tuple.cmp(&b.tuple)));
            assert_eq!(got, want, "L={l}");
        }
    }

    #[test]
    fn decoder_guards() {
        let spec = CodeSpec::from_frozen_mask(vec![false; 8]).unwrap();
        let d = MetricDomain::LogApprox;
        assert_eq!(ListDecoder::new(&spec, ListConfig::new(0, 0, d)).unwrap_err(), PolarError::ListSize);
        assert_eq!(
            ListDecoder::new(&spec, ListConfig::new(2, 4, d)).unwrap_err(),
            PolarError::DecisionWidth { n: 8, k_bits: 4 }
        );
        let spec16 = CodeSpec::from_frozen_mask(vec![false; 16]).unwrap();
        assert_eq!(
            ListDecoder::new(&spec16, ListConfig::new(2, 4, d)).unwrap_err(),
            PolarError::DecisionWidthGuard(4)
        );
        let cfg = ListConfig { allow_large_k: true, ..ListConfig::new(2, 4, d) };
        assert!(ListDecoder::new(&spec16, cfg).is_ok());
        let dec = ListDecoder::new(&spec, ListConfig::new(2, 1, d)).unwrap();
        assert!(dec.decode(&[LikelihoodPair::new(0.0, 0.0); 4]).is_err());
    }

    #[test]
    fn traced_schedule_equals_model() {
        let spec = crate::code::construct_frozen(64, 32, 0.5).unwrap();
        let ch: Vec<LikelihoodPair> =
            (0..64).map(|i| LikelihoodPair::new(0.0, if i % 3 == 0 { 1.5 } else { -2.0 })).collect();
        for k in 0..=3 {
            let (_, trace, rounds) =
                ListDecoder::new(&spec, ListConfig::new(4, k, MetricDomain::LogApprox)).unwrap().decode_traced(&ch).unwrap();
            assert_eq!(trace, schedule(64, k).unwrap(), "K={k}");
            assert_eq!(rounds.len(), 64 >> k);
        }
    }

    #[test]
    fn round_records_serialize() {
        let spec = crate::code::construct_frozen(4, 2, 0.5).unwrap();
        let ch = vec![LikelihoodPair::new(0.6, 0.4); 4];
        let (_, _, rounds) =
            ListDecoder::new(&spec, ListConfig::new(2, 1, MetricDomain::Likelihood)).unwrap().decode_traced(&ch).unwrap();
        // group 1 holds positions 0 and 1, both frozen: one viable extension
        assert_eq!(rounds[0].candidates.len(), 1);
        assert_eq!(rounds[0].candidates[0].bits, "00");
        assert_eq!(rounds[1].candidates.len(), 4);
        assert_eq!(rounds[1].survivors.len(), 2);
        let json = serde_json::to_string(&rounds).unwrap();
        assert!(json.contains("\"survivors\""));
    }
}

//! Cycle-level decoder schedules and hardware cost models.
//!
//! One clock cycle activates one layer of f or g units (all lanes of a stage
//! for the current subtree), one MCU+ZFU evaluation, or one sort-and-select.
//! Delays in [`PipelineModel`] are in units of one compare-and-select delay.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::log2_block_length;
use crate::error::{PolarError, Result};
use crate::sorter::selector_depth;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitKind {
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "mc&zf")]
    McZf,
    #[serde(rename = "s")]
    Sort,
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitKind::F => "f",
            UnitKind::G => "g",
            UnitKind::McZf => "mc&zf",
            UnitKind::Sort => "s",
        })
    }
}

/// One unit activation. MCU/ZFU and sort activations are placed on the last
/// stage row, as in the published timetables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activation {
    pub cycle: usize,
    pub stage: usize,
    pub unit: UnitKind,
}

/// Bits (0-indexed) whose values become final at `cycle`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub cycle: usize,
    pub bits: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decoder", rename_all = "snake_case")]
pub enum ScheduleKind {
    /// Single-path SC: decisions are taken by the h unit in the same cycle.
    Sc,
    /// List decoding with 2^K-bit decisions (K = 0 is conventional SCL).
    List { k_bits: u32 },
}

/// Per-cycle activation table of a decoder configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSchedule {
    n: usize,
    kind: ScheduleKind,
    activations: Vec<Activation>,
    decisions: Vec<Decision>,
}

impl CycleSchedule {
    pub fn new(n: usize, kind: ScheduleKind) -> Self {
        Self { n, kind, activations: Vec::new(), decisions: Vec::new() }
    }

    pub(crate) fn push(&mut self, a: Activation) {
        self.activations.push(a);
    }

    pub(crate) fn decide(&mut self, cycle: usize, bits: Vec<usize>) {
        self.decisions.push(Decision { cycle, bits });
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.n.trailing_zeros() as usize
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn activations(&self) -> &[Activation] {
        &self.activations
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.decisions
    }

    /// Total latency in clock cycles.
    pub fn cycles(&self) -> usize {
        self.activations.iter().map(|a| a.cycle).max().unwrap_or(0)
    }

    /// `cycle,stage,unit` rows, one per activation.
    pub fn to_trace_csv(&self) -> String {
        let mut out = String::from("cycle,stage,unit\n");
        for a in &self.activations {
            out.push_str(&format!("{},{},{}\n", a.cycle, a.stage, a.unit));
        }
        out
    }

    /// Timetable with a `cycle` column, one column per stage and a column of
    /// 1-indexed bit decisions.
    pub fn to_timetable_csv(&self) -> String {
        let m = self.m();
        let mut out = String::from("cycle");
        for s in 1..=m {
            out.push_str(&format!(",stage-{s}"));
        }
        out.push_str(",decision\n");
        let mut by_cycle: BTreeMap<usize, Vec<&Activation>> = BTreeMap::new();
        for a in &self.activations {
            by_cycle.entry(a.cycle).or_default().push(a);
        }
        for cycle in 1..=self.cycles() {
            out.push_str(&cycle.to_string());
            for s in 1..=m {
                let cell = by_cycle
                    .get(&cycle)
                    .and_then(|acts| acts.iter().find(|a| a.stage == s))
                    .map(|a| a.unit.to_string())
                    .unwrap_or_default();
                out.push(',');
                out.push_str(&cell);
            }
            let decided: Vec<String> = self
                .decisions
                .iter()
                .filter(|d| d.cycle == cycle)
                .flat_map(|d| d.bits.iter().map(|b| format!("u{}", b + 1)))
                .collect();
            out.push(',');
            out.push_str(&decided.join(" "));
            out.push('\n');
        }
        out
    }

    /// Replays the schedule and checks that every unit only consumes values
    /// produced in strictly earlier cycles, that at most one activation
    /// happens per cycle, and that every bit is decided exactly once.
    pub fn verify_dependencies(&self) -> std::result::Result<(), String> {
        let m = self.m();
        let n = self.n;
        let k_bits = match self.kind {
            ScheduleKind::Sc => 0,
            ScheduleKind::List { k_bits } => k_bits as usize,
        };
        let leaf_depth = m - k_bits;
        // produced[d][j]: cycle in which node j at depth d got its values
        let mut produced: Vec<Vec<usize>> = (0..=m).map(|d| Vec::with_capacity(1 << d)).collect();
        produced[0].push(0);
        let mut decided_at = vec![usize::MAX; n];
        for d in &self.decisions {
            for &b in &d.bits {
                if b >= n || decided_at[b] != usize::MAX {
                    return Err(format!("bit {b} decided twice or out of range"));
                }
                decided_at[b] = d.cycle;
            }
        }
        if let Some(b) = decided_at.iter().position(|&c| c == usize::MAX) {
            return Err(format!("bit {b} never decided"));
        }
        let mut mczf_cycles = Vec::new();
        let mut sorts = 0usize;
        let mut last_cycle = 0;
        for a in &self.activations {
            if a.cycle <= last_cycle {
                return Err(format!("cycle {} is not after cycle {last_cycle}", a.cycle));
            }
            last_cycle = a.cycle;
            match a.unit {
                UnitKind::F | UnitKind::G => {
                    let d = a.stage;
                    if d == 0 || d > leaf_depth {
                        return Err(format!("cycle {}: stage {d} outside the PE stages", a.cycle));
                    }
                    let j = produced[d].len();
                    let want = if j.is_multiple_of(2) { UnitKind::F } else { UnitKind::G };
                    if a.unit != want {
                        return Err(format!("cycle {}: node {j} of stage {d} needs {want}", a.cycle));
                    }
                    match produced[d - 1].get(j >> 1) {
                        Some(&c) if c < a.cycle => {}
                        _ => return Err(format!("cycle {}: parent of stage-{d} node {j} not ready", a.cycle)),
                    }
                    if a.unit == UnitKind::G {
                        let span = n >> d;
                        let left = (j - 1) * span..j * span;
                        if left.clone().any(|b| decided_at[b] >= a.cycle) {
                            return Err(format!("cycle {}: partial sums for stage-{d} node {j} not ready", a.cycle));
                        }
                    }
                    produced[d].push(a.cycle);
                }
                UnitKind::McZf => {
                    let g = mczf_cycles.len();
                    match produced[leaf_depth].get(g) {
                        Some(&c) if c < a.cycle => {}
                        _ => return Err(format!("cycle {}: MCU inputs for group {g} not ready", a.cycle)),
                    }
                    mczf_cycles.push(a.cycle);
                }
                UnitKind::Sort => {
                    let g = sorts;
                    let ready = if k_bits == 0 {
                        produced[m].get(g).copied()
                    } else {
                        mczf_cycles.get(g).copied()
                    };
                    match ready {
                        Some(c) if c < a.cycle => {}
                        _ => return Err(format!("cycle {}: metrics for group {g} not ready", a.cycle)),
                    }
                    let group = (g << k_bits)..((g + 1) << k_bits);
                    if group.clone().any(|b| decided_at[b] != a.cycle) {
                        return Err(format!("cycle {}: group {g} not decided by its sort", a.cycle));
                    }
                    sorts += 1;
                }
            }
        }
        Ok(())
    }
}

/// Generates the activation schedule of a 2^K-bit list decoder.
///
/// Stages 1..=m-K run the recursive f/g order; each 2^K-bit group then takes
/// one MCU+ZFU cycle and one sort cycle (for K = 0, the stage-m f or g unit
/// followed by one sort cycle per bit).
pub fn schedule(n: usize, k_bits: u32) -> Result<CycleSchedule> {
    let m = log2_block_length(n)?;
    let k = k_bits as usize;
    if k > m {
        return Err(PolarError::DecisionWidth { n, k_bits });
    }
    let leaf_depth = m - k;
    let mut sched = CycleSchedule::new(n, ScheduleKind::List { k_bits });
    let mut cycle = 0;
    for group in 0..n >> k {
        for depth in first_changed_depth(group, leaf_depth)..=leaf_depth {
            let node = group >> (leaf_depth - depth);
            let unit = if node.is_multiple_of(2) { UnitKind::F } else { UnitKind::G };
            cycle += 1;
            sched.push(Activation { cycle, stage: depth, unit });
        }
        if k > 0 {
            cycle += 1;
            sched.push(Activation { cycle, stage: m, unit: UnitKind::McZf });
        }
        cycle += 1;
        sched.push(Activation { cycle, stage: m, unit: UnitKind::Sort });
        sched.decide(cycle, ((group << k)..((group + 1) << k)).collect());
    }
    Ok(sched)
}

/// Shallowest depth whose node changes between leaf groups `group - 1` and `group`.
pub(crate) fn first_changed_depth(group: usize, leaf_depth: usize) -> usize {
    if group == 0 {
        1
    } else {
        leaf_depth - group.trailing_zeros() as usize
    }
}

/// Closed-form latency: 3n - 2 for K = 0, n / 2^(K-2) - 2 for K >= 1.
pub fn latency_formula(n: usize, k_bits: u32) -> Result<usize> {
    let m = log2_block_length(n)?;
    if k_bits as usize > m {
        return Err(PolarError::DecisionWidth { n, k_bits });
    }
    Ok(if k_bits == 0 { 3 * n - 2 } else { ((4 * n) >> k_bits) - 2 })
}

/// Latency summary for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatencyReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k_bits: u32,
    pub cycles: usize,
    pub formula: String,
}

impl LatencyReport {
    pub fn new(n: usize, k_bits: u32) -> Result<Self> {
        let cycles = schedule(n, k_bits)?.cycles();
        let closed = latency_formula(n, k_bits)?;
        debug_assert_eq!(cycles, closed);
        let formula = match k_bits {
            0 => "3n-2".to_string(),
            1 => "2n-2".to_string(),
            2 => "n-2".to_string(),
            3 => "n/2-2".to_string(),
            k => format!("n/2^{}-2", k - 2),
        };
        Ok(Self { n, k_bits, cycles, formula })
    }
}

/// Which datapath block a bit width is requested for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageKind {
    /// PE stage i, 1-based.
    Pe(usize),
    /// MCU, ZFU and sorter share the widest format.
    Metric,
}

/// Bit width of log-likelihood values: `q_ch + i` at PE stage i and
/// `q_ch + m` for metrics.
pub fn stage_bitwidth(q_ch: u32, stage: StageKind, m: usize) -> Result<u32> {
    match stage {
        StageKind::Pe(i) if (1..=m).contains(&i) => Ok(q_ch + i as u32),
        StageKind::Pe(i) => Err(PolarError::StageRange { stage: i, m }),
        StageKind::Metric => Ok(q_ch + m as u32),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineBlock {
    pub name: String,
    pub delay: u32,
}

/// Combinational blocks in datapath order with pipeline registers between
/// some of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineModel {
    pub blocks: Vec<PipelineBlock>,
    /// A cut at `i` places a register between block `i` and block `i + 1`.
    pub cuts: Vec<usize>,
}

/// Delay of one PE (f/g) stage.
pub const DEFAULT_PE_DELAY: u32 = 3;
/// Delay of the MCU+ZFU block.
pub const DEFAULT_MCU_DELAY: u32 = 3;

impl PipelineModel {
    /// `pe_stages` PE blocks, an MCU block (if `mcu_delay > 0`) and a sorter,
    /// with a register between every pair of blocks.
    pub fn new(pe_stages: usize, pe_delay: u32, mcu_delay: u32, sorter_depth: u32) -> Self {
        let mut blocks: Vec<PipelineBlock> =
            (1..=pe_stages).map(|i| PipelineBlock { name: format!("stage-{i}"), delay: pe_delay }).collect();
        if mcu_delay > 0 {
            blocks.push(PipelineBlock { name: "mcu/zfu".into(), delay: mcu_delay });
        }
        blocks.push(PipelineBlock { name: "sorter".into(), delay: sorter_depth });
        let cuts = (0..blocks.len() - 1).collect();
        Self { blocks, cuts }
    }

    /// The datapath of an L-size 2^K-bit decoder for block length n:
    /// m - K PE stages, MCU/ZFU (K >= 1) and a selector over L * 2^(2^K)
    /// candidates.
    pub fn for_decoder(n: usize, list_size: usize, k_bits: u32, pe_delay: u32, mcu_delay: u32) -> Result<Self> {
        let m = log2_block_length(n)?;
        if k_bits as usize > m {
            return Err(PolarError::DecisionWidth { n, k_bits });
        }
        if list_size == 0 {
            return Err(PolarError::ListSize);
        }
        let candidates = list_size << (1usize << k_bits);
        let s = candidates.next_power_of_two().trailing_zeros();
        let mcu = if k_bits == 0 { 0 } else { mcu_delay };
        Ok(Self::new(m - k_bits as usize, pe_delay, mcu, selector_depth(s)))
    }

    /// Removes every pipeline register.
    pub fn unpipelined(mut self) -> Self {
        self.cuts.clear();
        self
    }

    pub fn total_delay(&self) -> u32 {
        self.blocks.iter().map(|b| b.delay).sum()
    }

    pub fn pipeline_stages(&self) -> usize {
        self.cuts.len() + 1
    }

    /// Delays of the register-bounded segments.
    pub fn segments(&self) -> Vec<u32> {
        let mut cuts = self.cuts.clone();
        cuts.sort_unstable();
        cuts.dedup();
        let mut out = Vec::with_capacity(cuts.len() + 1);
        let mut start = 0;
        for c in cuts.into_iter().chain(std::iter::once(self.blocks.len() - 1)) {
            out.push(self.blocks[start..=c].iter().map(|b| b.delay).sum());
            start = c + 1;
        }
        out
    }
}

/// Critical path in compare-and-select delays.
///
/// Unbalanced: the slowest register-bounded segment. Balanced: registers are
/// retimed freely, so the bound is total delay over pipeline stages.
pub fn critical_path(model: &PipelineModel, balanced: bool) -> Result<f64> {
    if model.blocks.is_empty() {
        return Err(PolarError::NoPipelineStages);
    }
    if let Some(&c) = model.cuts.iter().find(|&&c| c + 1 >= model.blocks.len()) {
        return Err(PolarError::Parse(format!("register cut {c} is past the last block")));
    }
    Ok(if balanced {
        model.total_delay() as f64 / model.pipeline_stages() as f64
    } else {
        model.segments().into_iter().max().unwrap_or(0) as f64
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemoryBank {
    pub name: String,
    pub words: usize,
    pub width: u32,
    pub bits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemoryEstimate {
    pub banks: Vec<MemoryBank>,
    pub total_bits: usize,
}

impl MemoryEstimate {
    pub fn bank(&self, name: &str) -> Option<&MemoryBank> {
        self.banks.iter().find(|b| b.name == name)
    }
}

/// Storage model of an L-size 2^K-bit decoder. Likelihood pairs count as two
/// words.
///
/// * `channel`: n pairs at `q_ch` bits
/// * `stage-i` for i in 1..=m-K: L * n / 2^i pairs at `q_ch + i` bits
/// * `metrics`: L * 2^(2^K) words at `q_ch + m` bits
/// * `paths` and `partial-sums`: L * n single bits each
pub fn memory_estimate(n: usize, list_size: usize, k_bits: u32, q_ch: u32) -> Result<MemoryEstimate> {
    let m = log2_block_length(n)?;
    if k_bits as usize > m {
        return Err(PolarError::DecisionWidth { n, k_bits });
    }
    if list_size == 0 {
        return Err(PolarError::ListSize);
    }
    let bank = |name: String, words: usize, width: u32| MemoryBank { name, words, width, bits: words * width as usize };
    let mut banks = vec![bank("channel".into(), 2 * n, q_ch)];
    for i in 1..=m - k_bits as usize {
        let width = stage_bitwidth(q_ch, StageKind::Pe(i), m)?;
        banks.push(bank(format!("stage-{i}"), 2 * list_size * (n >> i), width));
    }
    banks.push(bank(
        "metrics".into(),
        list_size << (1usize << k_bits),
        stage_bitwidth(q_ch, StageKind::Metric, m)?,
    ));
    banks.push(bank("paths".into(), list_size * n, 1));
    banks.push(bank("partial-sums".into(), list_size * n, 1));
    let total_bits = banks.iter().map(|b| b.bits).sum();
    Ok(MemoryEstimate { banks, total_bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use UnitKind::*;

    fn rows(s: &CycleSchedule) -> Vec<(usize, usize, UnitKind)> {
        s.activations().iter().map(|a| (a.cycle, a.stage, a.unit)).collect()
    }

    #[test]
    fn conventional_scl_n4_timetable() {
        let s = schedule(4, 0).unwrap();
        assert_eq!(s.cycles(), 10);
        assert_eq!(
            rows(&s),
            vec![
                (1, 1, F), (2, 2, F), (3, 2, Sort), (4, 2, G), (5, 2, Sort),
                (6, 1, G), (7, 2, F), (8, 2, Sort), (9, 2, G), (10, 2, Sort),
            ]
        );
        let decided: Vec<usize> = s.decisions().iter().map(|d| d.cycle).collect();
        assert_eq!(decided, vec![3, 5, 8, 10]);
        s.verify_dependencies().unwrap();
    }

    #[test]
    fn two_bit_n4_timetable() {
        let s = schedule(4, 1).unwrap();
        assert_eq!(rows(&s), vec![(1, 1, F), (2, 2, McZf), (3, 2, Sort), (4, 1, G), (5, 2, McZf), (6, 2, Sort)]);
        assert_eq!(s.decisions()[0], Decision { cycle: 3, bits: vec![0, 1] });
        assert_eq!(s.decisions()[1], Decision { cycle: 6, bits: vec![2, 3] });
        s.verify_dependencies().unwrap();
    }

    #[test]
    fn timetable_csv_shape() {
        let csv = schedule(4, 1).unwrap().to_timetable_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "cycle,stage-1,stage-2,decision");
        assert_eq!(lines[1], "1,f,,");
        assert_eq!(lines[3], "3,,s,u1 u2");
        assert_eq!(lines.len(), 7);
        let trace = schedule(4, 0).unwrap().to_trace_csv();
        assert!(trace.starts_with("cycle,stage,unit\n1,1,f\n2,2,f\n3,2,s\n"));
    }

    #[test]
    fn schedule_matches_closed_form() {
        for m in 3..=10 {
            let n = 1 << m;
            for k in 0..=3 {
                let s = schedule(n, k).unwrap();
                assert_eq!(s.cycles(), latency_formula(n, k).unwrap(), "n={n} K={k}");
                s.verify_dependencies().unwrap();
            }
        }
        assert_eq!(schedule(1024, 2).unwrap().cycles(), 1022);
    }

    #[test]
    fn latency_examples() {
        assert_eq!(latency_formula(1024, 1).unwrap(), 2046);
        assert_eq!(latency_formula(1024, 0).unwrap(), 3070);
        assert_eq!(latency_formula(1024, 2).unwrap(), 1022);
        assert_eq!(latency_formula(1024, 3).unwrap(), 510);
        for m in 1..=12 {
            assert_eq!(latency_formula(1 << m, m as u32).unwrap(), 2);
            assert_eq!(schedule(1 << m, m as u32).unwrap().cycles(), 2);
        }
        assert!(latency_formula(8, 4).is_err());
        assert!(schedule(8, 4).is_err());
    }

    #[test]
    fn latency_decreases_with_k() {
        for m in 2..=12 {
            for k in 1..m as u32 {
                assert!(latency_formula(1 << m, k + 1).unwrap() < latency_formula(1 << m, k).unwrap());
            }
        }
    }

    #[test]
    fn verifier_rejects_broken_schedules() {
        let mut s = schedule(8, 1).unwrap();
        s.activations.swap(0, 1);
        assert!(s.verify_dependencies().is_err());

        let mut s = schedule(8, 0).unwrap();
        // move the first decision later than the g that consumes it
        s.decisions[0].cycle = 5;
        assert!(s.verify_dependencies().is_err());
    }

    #[test]
    fn report_formula_labels() {
        let r = LatencyReport::new(1024, 2).unwrap();
        assert_eq!((r.cycles, r.formula.as_str()), (1022, "n-2"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["K"], 2);
        assert_eq!(LatencyReport::new(64, 4).unwrap().formula, "n/2^2-2");
    }

    #[test]
    fn bit_widths() {
        assert_eq!(stage_bitwidth(5, StageKind::Pe(1), 10).unwrap(), 6);
        assert_eq!(stage_bitwidth(5, StageKind::Metric, 10).unwrap(), 15);
        assert_eq!(stage_bitwidth(4, StageKind::Pe(8), 8).unwrap(), 12);
        assert!(stage_bitwidth(4, StageKind::Pe(0), 8).is_err());
        assert!(stage_bitwidth(4, StageKind::Pe(9), 8).is_err());
    }

    #[test]
    fn sorter_dominates_unbalanced_path() {
        let model = PipelineModel::for_decoder(1024, 2, 2, DEFAULT_PE_DELAY, DEFAULT_MCU_DELAY).unwrap();
        assert_eq!(model.blocks.last().unwrap().delay, 11);
        assert_eq!(critical_path(&model, false).unwrap(), 11.0);
    }

    #[test]
    fn balanced_bound_for_long_code() {
        let model = PipelineModel::for_decoder(2048, 32, 2, 3, 3).unwrap();
        assert_eq!(model.pipeline_stages(), 11);
        assert_eq!(model.total_delay(), 67);
        assert_eq!(critical_path(&model, false).unwrap(), 37.0);
        let bound = critical_path(&model, true).unwrap();
        assert!((bound - 6.1).abs() < 0.05, "{bound}");
    }

    #[test]
    fn single_stage_pipeline_is_total_delay() {
        let model = PipelineModel::for_decoder(256, 4, 1, 3, 3).unwrap().unpipelined();
        let total = model.total_delay() as f64;
        assert_eq!(critical_path(&model, false).unwrap(), total);
        assert_eq!(critical_path(&model, true).unwrap(), total);
        let empty = PipelineModel { blocks: vec![], cuts: vec![] };
        assert_eq!(critical_path(&empty, true), Err(PolarError::NoPipelineStages));
    }

    #[test]
    fn memory_metric_banks() {
        let est = memory_estimate(1024, 32, 2, 5).unwrap();
        assert_eq!(est.bank("metrics").unwrap().words, 512);
        assert_eq!(est.bank("metrics").unwrap().width, 15);
        assert!(est.bank("stage-9").is_none() && est.bank("stage-8").is_some());
        assert_eq!(memory_estimate(1024, 32, 0, 5).unwrap().bank("metrics").unwrap().words, 64);
    }

    #[test]
    fn memory_minimal_configuration_by_hand() {
        // n = 2, L = 1, K = 0, q_ch = 4:
        // channel 4 words x 4 + stage-1 2 words x 5 + metrics 2 words x 5 + 2 + 2
        let est = memory_estimate(2, 1, 0, 4).unwrap();
        assert_eq!(est.total_bits, 16 + 10 + 10 + 2 + 2);
        assert_eq!(est.banks.len(), 5);
    }
}

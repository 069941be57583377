//! Browser bindings: latency timetables, selector networks and a step-by-step
//! view of one list-decoded frame. Every export returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use polar_rscl::channel::generate_frame;
use polar_rscl::hw::{schedule, LatencyReport};
use polar_rscl::list::RoundRecord;
use polar_rscl::{
    build_selector, channel_likelihoods, construct_frozen, network_depth, ChannelConfig, ListConfig, ListDecoder,
    MetricDomain, PolarError,
};

fn to_js(e: PolarError) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn json(value: &impl Serialize) -> Result<String, JsValue> {
    serde_json::to_string(value).map_err(|e| JsValue::from_str(&e.to_string()))
}

#[derive(Serialize)]
struct Timetable {
    report: LatencyReport,
    /// `cells[cycle - 1][stage - 1]` is the unit active in that cycle, or "".
    cells: Vec<Vec<String>>,
    decisions: Vec<(usize, Vec<usize>)>,
}

/// Activation timetable of a 2^K-bit list decoder for block length `n`.
#[wasm_bindgen]
pub fn latency_timetable(n: usize, k_bits: u32) -> Result<String, JsValue> {
    let report = LatencyReport::new(n, k_bits).map_err(to_js)?;
    let sched = schedule(n, k_bits).map_err(to_js)?;
    let mut cells = vec![vec![String::new(); sched.m()]; sched.cycles()];
    for a in sched.activations() {
        cells[a.cycle - 1][a.stage - 1] = a.unit.to_string();
    }
    let decisions = sched.decisions().iter().map(|d| (d.cycle, d.bits.clone())).collect();
    json(&Timetable { report, cells, decisions })
}

#[derive(Serialize)]
struct Network {
    lanes: usize,
    depth: usize,
    comparators: usize,
    /// Per stage: `(lo, hi, increasing)`.
    stages: Vec<Vec<(usize, usize, bool)>>,
    outputs: Vec<usize>,
    /// Input values carried through the network, one snapshot per stage boundary.
    trace: Vec<Vec<f64>>,
}

/// The 2^s-input selector, applied to `values` (padded with -inf).
#[wasm_bindgen]
pub fn selector_network(s: u32, values: Vec<f64>) -> Result<String, JsValue> {
    if s > 8 {
        return Err(JsValue::from_str("s is limited to 8 in the demo"));
    }
    let net = build_selector(s).map_err(to_js)?;
    let (depth, comparators) = network_depth(&net);
    let mut current = values;
    current.resize(net.lanes(), f64::NEG_INFINITY);
    let mut trace = vec![current.clone()];
    for stage in net.stages() {
        for c in stage {
            let increasing = c.dir == polar_rscl::sorter::Direction::Increasing;
            if (current[c.lo] > current[c.hi]) == increasing && current[c.lo] != current[c.hi] {
                current.swap(c.lo, c.hi);
            }
        }
        trace.push(current.clone());
    }
    let stages = net
        .stages()
        .iter()
        .map(|st| st.iter().map(|c| (c.lo, c.hi, c.dir == polar_rscl::sorter::Direction::Increasing)).collect())
        .collect();
    json(&Network { lanes: net.lanes(), depth, comparators, stages, outputs: net.outputs().to_vec(), trace })
}

#[derive(Serialize)]
struct FrameView {
    frozen: Vec<bool>,
    sent: String,
    received: Vec<f64>,
    decoded: String,
    bit_errors: usize,
    metric: f64,
    cycles: usize,
    rounds: Vec<RoundRecord>,
}

/// Decodes one random frame and returns every selection round.
#[wasm_bindgen]
pub fn decode_frame(n: usize, k: usize, list_size: usize, k_bits: u32, ebn0_db: f64, seed: u32) -> Result<String, JsValue> {
    if n > 256 {
        return Err(JsValue::from_str("n is limited to 256 in the demo"));
    }
    let spec = construct_frozen(n, k, 0.5).map_err(to_js)?;
    let domain = MetricDomain::LogExact;
    let cfg = ChannelConfig::new(ebn0_db, spec.rate(), u64::from(seed), domain);
    cfg.validate().map_err(to_js)?;
    let (u, y) = generate_frame(&spec, &cfg, 0).map_err(to_js)?;
    let decoder = ListDecoder::new(&spec, ListConfig::new(list_size, k_bits, domain)).map_err(to_js)?;
    let (outcome, trace, rounds) = decoder.decode_traced(&channel_likelihoods(&y, &cfg)).map_err(to_js)?;
    let bit_errors = (0..n).filter(|&i| outcome.u.get(i) != u.get(i)).count();
    json(&FrameView {
        frozen: spec.frozen_mask().to_vec(),
        sent: u.to_string(),
        received: y,
        decoded: outcome.u.to_string(),
        bit_errors,
        metric: outcome.metric,
        cycles: trace.cycles(),
        rounds,
    })
}

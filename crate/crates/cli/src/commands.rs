//! Subcommand bodies.

use std::path::PathBuf;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;

use polar_rscl::channel::{rows_to_csv, ResultRow, DEFAULT_LLR_CLIP};
use polar_rscl::code::DEFAULT_DESIGN_ERASURE;
use polar_rscl::hw::{critical_path, memory_estimate, schedule, LatencyReport, PipelineModel};
use polar_rscl::sorter::build_selector;
use polar_rscl::{
    channel_likelihoods, construct_frozen, encode, network_depth, run_trials, ChannelConfig, CodeSpec, ListConfig,
    ListDecoder, MetricDomain,
};

use crate::io::{parse_bits, parse_channel_file, read_frozen_file, read_input, write_output, RunManifest};
use crate::{
    CodeArgs, Command, ConstructArgs, DecodeArgs, EncodeArgs, Format, LatencyArgs, SimulateArgs, SorterArgs,
    TableFormat, UsageError,
};

pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Construct(a) => construct(a),
        Command::Encode(a) => encode_cmd(a),
        Command::Decode(a) => decode(a),
        Command::Simulate(a) => simulate(a),
        Command::Latency(a) => latency(a),
        Command::Sorter(a) => sorter(a),
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn load_code(code: &CodeArgs) -> Result<CodeSpec> {
    match (&code.frozen, code.n, code.k) {
        (Some(path), _, _) => read_frozen_file(path),
        (None, Some(n), Some(k)) => Ok(construct_frozen(n, k, code.design_erasure)?),
        _ => Err(usage("give either --frozen FILE or both --n and --k")),
    }
}

fn construct(a: &ConstructArgs) -> Result<()> {
    let spec = construct_frozen(a.n, a.k, a.design_erasure)?;
    let mut manifest = RunManifest::new("construct", a);
    manifest.output = a.output.clone();
    write_output(a.output.as_deref(), &(manifest.comment_line() + &spec.to_frozen_file()))
}

fn encode_cmd(a: &EncodeArgs) -> Result<()> {
    let spec = load_code(&a.code)?;
    let bits = parse_bits(&read_input(a.input.as_deref())?)?;
    let u = if a.info { spec.embed(&bits)? } else { bits };
    let x = encode(&spec, &u)?;
    let mut manifest = RunManifest::new("encode", a);
    manifest.input = a.input.clone();
    manifest.output = a.output.clone();
    write_output(a.output.as_deref(), &format!("{}{x}\n", manifest.comment_line()))
}

fn decode(a: &DecodeArgs) -> Result<()> {
    let spec = load_code(&a.code)?;
    let y = parse_channel_file(&read_input(a.input.as_deref())?)?;
    let cfg = ChannelConfig { llr_clip: a.llr_clip, ..ChannelConfig::new(a.ebn0, spec.rate(), 0, a.domain) };
    cfg.validate()?;
    let channel = channel_likelihoods(&y, &cfg);
    let decoder = ListDecoder::new(&spec, ListConfig::new(a.list, a.kbits, a.domain))?;
    let (outcome, trace, rounds) = decoder.decode_traced(&channel)?;
    if let Some(path) = &a.trace {
        let doc = json!({ "cycles": trace.cycles(), "activations": trace.activations(), "rounds": rounds });
        std::fs::write(path, serde_json::to_string_pretty(&doc)?).with_context(|| format!("writing {}", path.display()))?;
    }
    let info = spec.extract(&outcome.u)?;
    let mut manifest = RunManifest::new("decode", a);
    manifest.input = a.input.clone();
    manifest.output = a.output.clone();
    let text = match a.format {
        Format::Text => format!("{}{}\nmetric {}\n", manifest.comment_line(), outcome.u, outcome.metric),
        Format::Json => {
            let doc = json!({
                "manifest": manifest,
                "u": outcome.u.to_string(),
                "info": info.to_string(),
                "metric": outcome.metric,
                "cycles": trace.cycles(),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    write_output(a.output.as_deref(), &text)
}

/// Every simulation parameter; loadable from a JSON config file.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub n: Option<usize>,
    pub k: Option<usize>,
    #[serde(default = "default_design_erasure")]
    pub design_erasure: f64,
    pub frozen: Option<PathBuf>,
    pub list: Vec<usize>,
    pub kbits: Vec<u32>,
    pub domain: String,
    pub ebn0: Vec<f64>,
    pub frames: u64,
    pub seed: u64,
    #[serde(default = "default_llr_clip")]
    pub llr_clip: f64,
}

fn default_design_erasure() -> f64 {
    DEFAULT_DESIGN_ERASURE
}

fn default_llr_clip() -> f64 {
    DEFAULT_LLR_CLIP
}

impl SimulateConfig {
    fn from_flags(a: &SimulateArgs) -> Result<Self> {
        let seed = a.seed.ok_or_else(|| usage("simulate needs --seed (or --config)"))?;
        if a.ebn0.is_empty() {
            return Err(usage("simulate needs at least one --ebn0 point"));
        }
        Ok(Self {
            n: a.n,
            k: a.k,
            design_erasure: a.design_erasure.unwrap_or(DEFAULT_DESIGN_ERASURE),
            frozen: None,
            list: if a.list.is_empty() { vec![1] } else { a.list.clone() },
            kbits: if a.kbits.is_empty() { vec![0] } else { a.kbits.clone() },
            domain: a.domain.unwrap_or(MetricDomain::LogExact).name(),
            ebn0: a.ebn0.clone(),
            frames: a.frames.unwrap_or(1000),
            seed,
            llr_clip: a.llr_clip.unwrap_or(DEFAULT_LLR_CLIP),
        })
    }

    fn code(&self) -> Result<CodeSpec> {
        let args = CodeArgs { frozen: self.frozen.clone(), n: self.n, k: self.k, design_erasure: self.design_erasure };
        load_code(&args)
    }
}

fn simulate(a: &SimulateArgs) -> Result<()> {
    let cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<SimulateConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => SimulateConfig::from_flags(a)?,
    };
    let spec = cfg.code()?;
    let domain: MetricDomain = cfg.domain.parse()?;
    let decoders: Vec<ListConfig> = cfg
        .list
        .iter()
        .flat_map(|&l| cfg.kbits.iter().map(move |&k| ListConfig::new(l, k, domain)))
        .collect();

    let mut rows: Vec<ResultRow> = Vec::new();
    for &ebn0 in &cfg.ebn0 {
        let channel = ChannelConfig { llr_clip: cfg.llr_clip, ..ChannelConfig::new(ebn0, spec.rate(), cfg.seed, domain) };
        let run = run_trials(&spec, &decoders, &channel, cfg.frames)?;
        for (report, timing) in run.reports.iter().zip(&run.timing) {
            eprintln!("{ebn0} dB {}: FER {:.3e} ({:.1} us/frame)", report.decoder.label(), report.fer(), timing.mean_frame_us);
        }
        rows.extend(run.reports.iter().map(|r| r.row(spec.k())));
    }

    let mut manifest = RunManifest::new("simulate", &cfg);
    manifest.input = a.config.clone();
    manifest.output = a.output.clone();
    manifest.seed = Some(cfg.seed);
    let text = match a.format {
        TableFormat::Csv => manifest.comment_line() + &rows_to_csv(&rows)?,
        TableFormat::Json => serde_json::to_string_pretty(&json!({ "manifest": manifest, "results": rows }))? + "\n",
    };
    write_output(a.output.as_deref(), &text)
}

fn latency(a: &LatencyArgs) -> Result<()> {
    let report = LatencyReport::new(a.n, a.kbits)?;
    let m = a.n.trailing_zeros();
    let table: Vec<LatencyReport> = (0..=m.min(3)).map(|k| LatencyReport::new(a.n, k)).collect::<Result<_, _>>()?;
    let model = PipelineModel::for_decoder(a.n, a.list, a.kbits, a.pe_delay, a.mcu_delay)?;
    let unbalanced = critical_path(&model, false)?;
    let balanced = critical_path(&model, true)?;
    let memory = memory_estimate(a.n, a.list, a.kbits, a.q_ch)?;
    let metric_words = memory.bank("metrics").map(|b| b.words).unwrap_or(0);
    let sched = if a.timetable { Some(schedule(a.n, a.kbits)?) } else { None };
    let manifest = RunManifest::new("latency", a);

    let text = match a.format {
        Format::Text => {
            let mut out = manifest.comment_line();
            out += &format!("latency n={} K={}: {} cycles ({})\n", a.n, a.kbits, report.cycles, report.formula);
            for r in &table {
                out += &format!("  K={}: {} cycles ({})\n", r.k_bits, r.cycles, r.formula);
            }
            out += &format!(
                "pipeline L={}: {} stages, total delay {} T, critical path {} T unbalanced, {:.3} T balanced\n",
                a.list,
                model.pipeline_stages(),
                model.total_delay(),
                unbalanced,
                balanced
            );
            out += &format!(
                "memory L={} q_ch={}: {} metric words, {} bits total\n",
                a.list, a.q_ch, metric_words, memory.total_bits
            );
            if let Some(s) = &sched {
                out += &s.to_timetable_csv();
            }
            out
        }
        Format::Json => {
            let doc = json!({
                "manifest": manifest,
                "latency": report,
                "table": table,
                "pipeline": {
                    "stages": model.pipeline_stages(),
                    "total_delay": model.total_delay(),
                    "blocks": model,
                    "critical_path_unbalanced": unbalanced,
                    "critical_path_balanced": balanced,
                },
                "memory": memory,
                "timetable": sched.as_ref().map(|s| s.to_timetable_csv()),
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    write_output(None, &text)
}

fn sorter(a: &SorterArgs) -> Result<()> {
    let net = build_selector(a.s)?;
    let (depth, comparators) = network_depth(&net);
    let manifest = RunManifest::new("sorter", a);
    let text = match a.format {
        Format::Text => format!(
            "{}inputs {} outputs {}\ndepth {depth}\ncomparators {comparators}\n{}",
            manifest.comment_line(),
            net.lanes(),
            net.outputs().len(),
            net.to_text()
        ),
        Format::Json => {
            let doc = json!({
                "manifest": manifest,
                "s": a.s,
                "depth": depth,
                "comparators": comparators,
                "network": net,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    write_output(None, &text)
}

//! File formats and the run manifest.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use polar_rscl::{BitVector, CodeSpec};

/// Everything needed to reproduce a run. Text outputs carry it as a leading
/// `# manifest {json}` line, JSON outputs as a `manifest` field.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub parameters: serde_json::Value,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(subcommand: &str, parameters: &impl Serialize) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_owned(),
            parameters: serde_json::to_value(parameters).expect("arguments serialize"),
            input: None,
            output: None,
            seed: None,
        }
    }

    pub fn comment_line(&self) -> String {
        format!("# manifest {}\n", serde_json::to_string(self).expect("manifest serializes"))
    }
}

pub fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Bits as `0`/`1` characters; whitespace and `#` lines are ignored.
pub fn parse_bits(text: &str) -> Result<BitVector> {
    let joined: String = content_lines(text).map(|(_, l)| l).collect();
    Ok(joined.parse::<BitVector>()?)
}

/// Channel-value file: `n=<n>` header, then exactly n reals, one per line.
pub fn parse_channel_file(text: &str) -> Result<Vec<f64>> {
    let mut lines = content_lines(text);
    let Some((header_no, header)) = lines.next() else { bail!("empty channel file") };
    let n: usize = header
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .with_context(|| format!("line {header_no}: expected header `n=<n>`, found `{header}`"))?;
    let values = lines
        .map(|(no, l)| l.parse::<f64>().with_context(|| format!("line {no}: `{l}` is not a number")))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != n {
        bail!("header declares {n} values, file holds {}", values.len());
    }
    Ok(values)
}

pub fn read_frozen_file(path: &Path) -> Result<CodeSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CodeSpec::from_frozen_file(&text).with_context(|| format!("parsing {}", path.display()))
}

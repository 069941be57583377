//! Bitonic metric selection networks.
//!
//! A 2^s-input selector sorts its first half increasing and its second half
//! decreasing with two 2^(s-1)-lane bitonic sorters, then keeps
//! `max(i_j, d_j)` for every lane pair. The outputs are the 2^(s-1) largest
//! inputs, in no particular order.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{PolarError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn tag(self) -> &'static str {
        match self {
            Direction::Increasing => "inc",
            Direction::Decreasing => "dec",
        }
    }
}

/// Compare-and-swap on lanes `lo < hi`. After it, `v[lo] <= v[hi]` for
/// [`Direction::Increasing`] and `v[lo] >= v[hi]` for decreasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Comparator {
    pub lo: usize,
    pub hi: usize,
    pub dir: Direction,
}

/// Comparators grouped into parallel depth stages plus the output lanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionNetwork {
    s: u32,
    lanes: usize,
    stages: Vec<Vec<Comparator>>,
    outputs: Vec<usize>,
}

/// Depth of the 2^s-input selector: `1 + (s - 1) s / 2`.
pub fn selector_depth(s: u32) -> u32 {
    1 + (s.saturating_sub(1) * s) / 2
}

/// Depth of a full 2^s-lane bitonic sorter: `s (s + 1) / 2`.
pub fn sorter_depth(s: u32) -> u32 {
    s * (s + 1) / 2
}

fn bitonic_sort(lo: usize, len: usize, dir: Direction, out: &mut Vec<Comparator>) {
    if len < 2 {
        return;
    }
    let half = len / 2;
    bitonic_sort(lo, half, Direction::Increasing, out);
    bitonic_sort(lo + half, half, Direction::Decreasing, out);
    bitonic_merge(lo, len, dir, out);
}

fn bitonic_merge(lo: usize, len: usize, dir: Direction, out: &mut Vec<Comparator>) {
    if len < 2 {
        return;
    }
    let half = len / 2;
    out.extend((lo..lo + half).map(|i| Comparator { lo: i, hi: i + half, dir }));
    bitonic_merge(lo, half, dir, out);
    bitonic_merge(lo + half, half, dir, out);
}

/// Packs comparators into the earliest stage after both their lanes are free.
fn layer(lanes: usize, comparators: &[Comparator]) -> Vec<Vec<Comparator>> {
    let mut ready = vec![0usize; lanes];
    let mut stages: Vec<Vec<Comparator>> = Vec::new();
    for &c in comparators {
        let at = ready[c.lo].max(ready[c.hi]);
        if stages.len() <= at {
            stages.push(Vec::new());
        }
        stages[at].push(c);
        ready[c.lo] = at + 1;
        ready[c.hi] = at + 1;
    }
    stages
}

/// Builds the 2^s-input, 2^(s-1)-output selector.
pub fn build_selector(s: u32) -> Result<SelectionNetwork> {
    if s < 1 {
        return Err(PolarError::SelectorSize);
    }
    let lanes = 1usize << s;
    let half = lanes / 2;
    let mut comparators = Vec::new();
    bitonic_sort(0, half, Direction::Increasing, &mut comparators);
    bitonic_sort(half, half, Direction::Decreasing, &mut comparators);
    // the compare-and-select stage: the larger of i_j, d_j lands on lane half + j
    comparators.extend((0..half).map(|j| Comparator { lo: j, hi: half + j, dir: Direction::Increasing }));
    Ok(SelectionNetwork { s, lanes, stages: layer(lanes, &comparators), outputs: (half..lanes).collect() })
}

/// Builds a full 2^s-lane bitonic sorter in the given direction.
pub fn build_sorter(s: u32, dir: Direction) -> SelectionNetwork {
    let lanes = 1usize << s;
    let mut comparators = Vec::new();
    if lanes >= 2 {
        bitonic_sort(0, lanes / 2, Direction::Increasing, &mut comparators);
        bitonic_sort(lanes / 2, lanes / 2, Direction::Decreasing, &mut comparators);
        bitonic_merge(0, lanes, dir, &mut comparators);
    }
    SelectionNetwork { s, lanes, stages: layer(lanes, &comparators), outputs: (0..lanes).collect() }
}

impl SelectionNetwork {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn lanes(&self) -> usize {
        self.lanes
    }

    pub fn stages(&self) -> &[Vec<Comparator>] {
        &self.stages
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn comparator_count(&self) -> usize {
        self.stages.iter().map(Vec::len).sum()
    }

    /// Runs the network in place on `values` ordered by `cmp`.
    pub fn apply_by<T, F>(&self, values: &mut [T], mut cmp: F)
    where
        F: FnMut(&T, &T) -> Ordering,
    {
        assert_eq!(values.len(), self.lanes, "network input length");
        for stage in &self.stages {
            for c in stage {
                let out_of_order = match c.dir {
                    Direction::Increasing => cmp(&values[c.lo], &values[c.hi]) == Ordering::Greater,
                    Direction::Decreasing => cmp(&values[c.lo], &values[c.hi]) == Ordering::Less,
                };
                if out_of_order {
                    values.swap(c.lo, c.hi);
                }
            }
        }
    }

    /// True when no lane is touched twice within one stage.
    pub fn stages_are_disjoint(&self) -> bool {
        self.stages.iter().all(|stage| {
            let mut seen = vec![false; self.lanes];
            stage.iter().all(|c| !std::mem::replace(&mut seen[c.lo], true) && !std::mem::replace(&mut seen[c.hi], true))
        })
    }

    /// One line per stage of `lo:hi:dir` triples, e.g. `0:1:inc 2:3:dec`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for stage in &self.stages {
            let line: Vec<String> = stage.iter().map(|c| format!("{}:{}:{}", c.lo, c.hi, c.dir.tag())).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    /// Parses [`SelectionNetwork::to_text`] output. The lane count is the next
    /// power of two above the largest lane; outputs are the upper half for a
    /// selector-shaped network.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut stages = Vec::new();
        let mut max_lane = 0;
        for line in text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
            let mut stage = Vec::new();
            for tok in line.split_whitespace() {
                let parts: Vec<&str> = tok.split(':').collect();
                let bad = || PolarError::Parse(format!("bad comparator {tok:?}"));
                if parts.len() != 3 {
                    return Err(bad());
                }
                let lo: usize = parts[0].parse().map_err(|_| bad())?;
                let hi: usize = parts[1].parse().map_err(|_| bad())?;
                let dir = match parts[2] {
                    "inc" => Direction::Increasing,
                    "dec" => Direction::Decreasing,
                    _ => return Err(bad()),
                };
                if lo >= hi {
                    return Err(bad());
                }
                max_lane = max_lane.max(hi);
                stage.push(Comparator { lo, hi, dir });
            }
            stages.push(stage);
        }
        let lanes = (max_lane + 1).next_power_of_two().max(2);
        let s = lanes.trailing_zeros();
        Ok(Self { s, lanes, stages, outputs: (lanes / 2..lanes).collect() })
    }
}

/// Runs a selector on plain metrics and returns the output lanes.
pub fn apply_network(net: &SelectionNetwork, values: &[f64]) -> Result<Vec<f64>> {
    if values.len() != net.lanes {
        return Err(PolarError::LengthMismatch { expected: net.lanes, actual: values.len() });
    }
    let mut v = values.to_vec();
    net.apply_by(&mut v, f64::total_cmp);
    Ok(net.outputs.iter().map(|&i| v[i]).collect())
}

/// `(stage count, comparator count)`.
pub fn network_depth(net: &SelectionNetwork) -> (usize, usize) {
    (net.stages.len(), net.comparator_count())
}

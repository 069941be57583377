//! Polar codes with successive-cancellation (SC) and SC-list (SCL) decoders,
//! where list decoders may decide 2^K bits per selection round. Also a
//! cycle-level latency model, a bitonic metric selector and an AWGN
//! Monte-Carlo harness.
//!
//! Module map:
//!
//! * [`code`]: frozen-set construction, the GF(2) polar transform, encoding.
//! * [`kernel`]: f/g/h units in every metric domain and the single-path SC decoder.
//! * [`list`]: MCU, ZFU, survivor selection and the list decoder for any K.
//! * [`sorter`]: bitonic 2^s-input 2^(s-1)-output selection networks.
//! * [`hw`]: cycle schedules, latency formulas, pipeline balancing, bit widths, memory.
//! * [`channel`]: BPSK/AWGN channel, likelihood generation and paired trials.

pub mod channel;
pub mod code;
pub mod error;
pub mod hw;
pub mod kernel;
pub mod list;
pub mod sorter;

pub use code::{construct_frozen, encode, encode_involution_check, BitVector, CodeSpec};
pub use error::{PolarError, Result};
pub use kernel::{f_unit, g_unit, h_unit, sc_decode, Arith, LikelihoodPair, MetricDomain};
pub use list::{
    mcu_metrics, scl_decode, select_survivors, zfu_apply, Candidate, ListConfig, ListDecoder,
    LocalTransform,
};
pub use sorter::{apply_network, build_selector, network_depth, SelectionNetwork};
pub use channel::{channel_likelihoods, modulate_and_corrupt, run_trials, ChannelConfig, TrialReport};

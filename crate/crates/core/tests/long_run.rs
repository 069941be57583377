//! Paired K=0 vs K=2 comparison at (1024, 512). Takes about a minute on one
//! core: `cargo test --release -p polar-rscl --test long_run -- --ignored`.

use polar_rscl::channel::PairedComparison;
use polar_rscl::*;

#[test]
#[ignore]
fn k2_matches_k0_at_1024() {
    let spec = construct_frozen(1024, 512, 0.5).unwrap();
    let domain = MetricDomain::LogExact;
    let configs = [ListConfig::new(4, 0, domain), ListConfig::new(4, 2, domain)];
    let run = run_trials(&spec, &configs, &ChannelConfig::new(2.5, spec.rate(), 1024, domain), 20_000).unwrap();
    let p = PairedComparison::new(&run.frame_errors[1], &run.frame_errors[0]).unwrap();
    println!(
        "FER K=0 {:.4}, K=2 {:.4}, paired difference {:+.5} +- {:.5}",
        run.reports[0].fer(),
        run.reports[1].fer(),
        p.difference,
        p.half_width
    );
    assert!(p.equivalent());
    assert!(run.reports.iter().all(|r| r.frozen_violations == 0));
}

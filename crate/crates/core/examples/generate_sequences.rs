//! Build one probing period of each scheme and export them as CSV.

use polmux_otdr::experiments::generate_probe_csv;
use polmux_otdr::sequences::{aperiodic_autocorr, generate_golay_pair, mate_pair, ProbeSpec};
use std::path::Path;

fn main() -> polmux_otdr::Result<()> {
    let f_symb = 50e6;
    let out = Path::new("out/examples");

    for (spec, name) in [
        (ProbeSpec::GolayBpsk { k: 7 }, "golay"),
        (ProbeSpec::Cazac { m: 5 }, "cazac"),
        (ProbeSpec::Sweep { n_total: 1024 }, "sweep"),
    ] {
        let probe = generate_probe_csv(spec, f_symb, &out.join(format!("{name}.csv")))?;
        println!(
            "{name}: {} symbols per period, {:.2} us duration",
            probe.period(),
            probe.duration() * 1e6
        );
    }

    // the defining property of a complementary pair: autocorrelations sum to
    // a perfect delta
    let pair = generate_golay_pair(7)?;
    let mate = mate_pair(&pair);
    let sums: Vec<i64> = aperiodic_autocorr(&pair.a)
        .iter()
        .zip(aperiodic_autocorr(&pair.b))
        .map(|(ra, rb)| ra + rb)
        .collect();
    println!(
        "Golay K=7: R_a+R_b = {} at lag 0, max |sidelobe| = {}",
        sums[0],
        sums[1..].iter().map(|v| v.abs()).max().unwrap()
    );
    println!(
        "mate pair starts with a2 = {:?}...",
        &mate.a[..8.min(mate.a.len())]
    );
    Ok(())
}

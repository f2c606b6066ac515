//! Exact big-integer checks of the counting inequalities, with every step of
//! the chain shown for one parameter set.
//!
//! ```text
//! cargo run --release --example inequality_sweep
//! ```

use qcover::qcount::{
    extremal_gap_params, gap_chain_params, sandwich_params, singular_gap_params, sweep, verify_extremal_gap,
    verify_gap_chain, verify_gaussian_sandwich, verify_singular_gap, IneqReport,
};

fn tally(name: &str, reports: Vec<qcover::Result<IneqReport>>) {
    let reports: Vec<IneqReport> = reports.into_iter().map(Result::unwrap).collect();
    let fails = reports.iter().filter(|r| !r.holds).count();
    println!("{name:<28} {:>5} parameter sets, {fails} fail", reports.len());
}

fn main() -> qcover::Result<()> {
    tally("wide bound < [2m-1,m]", sweep(&extremal_gap_params(3, 10, 128), |&(m, q)| verify_extremal_gap(m, q)));
    tally("elementary chain", sweep(&gap_chain_params(4, 10, 128), |&(m, q)| verify_gap_chain(m, q)));
    tally("Gaussian sandwich", sweep(&sandwich_params(12, &[2, 3, 4, 5, 8]), |&(a, b, q)| {
        verify_gaussian_sandwich(a, b, q)
    }));
    tally("singular gap", sweep(&singular_gap_params(3, 8, 64), |&(m, k, n, l, q)| {
        verify_singular_gap(m, k, n, l, q)
    }));

    // the bound is false for small q
    let r = verify_extremal_gap(3, 2)?;
    println!("\nm=3 q=2: {} < {} is {}", r.lhs, r.rhs, r.holds);

    // informational steps may fail while the required ones hold
    let r = verify_gap_chain(6, 9)?;
    println!("\nchain at m=6 q=9 ({}):", if r.holds { "holds" } else { "fails" });
    for s in &r.steps {
        let tag = match (s.required, s.holds) {
            (_, true) => "ok",
            (true, false) => "FAIL",
            (false, false) => "info, fails",
        };
        println!("  [{tag:>11}] {}", s.name);
    }
    Ok(())
}

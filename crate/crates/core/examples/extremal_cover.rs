//! The largest intersecting families with covering number m: all m-subspaces
//! of a (2m-1)-space. Compares the search with the brute-force oracle and
//! checks a smaller family and a pencil.
//!
//! ```text
//! cargo run --release --example extremal_cover
//! ```

use qcover::family::{covering_number, covering_number_oracle, Family};
use qcover::io::format_subspace;
use qcover::singular::{construct_extremal, construct_trivial, verify_extremal};
use qcover::subspace::Subspace;
use qcover::field_make;

fn main() -> qcover::Result<()> {
    for (q, m) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3)] {
        let f = field_make(q)?;
        let fam = construct_extremal(&f, 2 * m - 1, m)?;
        let r = covering_number(&fam)?;
        println!(
            "q={q} m={m}: {} members, tau={} after {} nodes, witness <{}>",
            fam.len(),
            r.tau,
            r.nodes_explored,
            format_subspace(&r.witness)
        );
        if fam.len() < 2000 {
            assert_eq!(covering_number_oracle(&fam, 1 << 20)?.tau, r.tau);
        }
        let report = verify_extremal(&fam, None, &Default::default())?;
        for c in &report.checks {
            println!("    {:<14} {} {}", c.name, if c.pass { "ok" } else { "FAIL" }, c.detail);
        }
    }

    // one member short of [X 3] still needs a 3-space to cover it
    let f = field_make(2)?;
    let full = construct_extremal(&f, 5, 3)?;
    let mut members = full.members().to_vec();
    members.remove(0);
    let smaller = Family::new(&f, 5, 3, members)?;
    println!("[X 3] minus one member: tau={}", covering_number(&smaller)?.tau);

    // a family through a common point has tau = 1
    let p = Subspace::coordinate(&f, 4, &[2]);
    let pencil = construct_trivial(&f, 4, 2, &p)?;
    println!("{} lines through a point: tau={}", pencil.len(), covering_number(&pencil)?.tau);
    Ok(())
}

//! Extremal families in a space with a distinguished subspace W1: all
//! type-(m, k) subspaces of a (2m-1)-space meeting W1 in t dimensions.
//!
//! ```text
//! cargo run --release --example singular_extremal
//! ```

use qcover::family::covering_number;
use qcover::qcount::{count_type, extremal_w1_dim};
use qcover::singular::{construct_extremal_singular, type_family, verify_extremal, SingularSpace};
use qcover::field_make;

fn main() -> qcover::Result<()> {
    let f = field_make(5)?;
    for (m, k, n, l) in [(2, 0, 2, 1), (2, 1, 1, 2), (3, 1, 2, 3), (3, 2, 1, 4)] {
        let sing = SingularSpace::new(&f, n, l)?;
        let fam = construct_extremal_singular(&sing, m, k)?;
        let t = extremal_w1_dim(m as u32, k as u32, n as u32);
        let formula = count_type(m as u32, k as u32, 2 * m as u32 - 1, t, n as u32, l as u32, 5)?;
        let report = verify_extremal(&fam, Some(&sing), &Default::default())?;
        println!(
            "m={m} k={k} n={n} l={l}: t={t}, {} members (formula {formula}), checks {}",
            fam.len(),
            if report.pass() { "pass" } else { "FAIL" }
        );
    }

    // parameters the space cannot hold are reported with the failing clause
    let sing = SingularSpace::new(&f, 3, 1)?;
    println!("m=3 k=2 in n=3 l=1: {}", construct_extremal_singular(&sing, 3, 2).unwrap_err());

    // if X meets W1 in too little, a small piece of X ∩ W1 covers everything
    let sing = SingularSpace::new(&f, 5, 4)?;
    let x = sing.block(4, 1)?; // dim 5, meets W1 in 1 dimension
    let fam = type_family(&sing, &x, 3, 1)?;
    println!("type (3,1) inside a (5,1) subspace: {} members, tau={}", fam.len(), covering_number(&fam)?.tau);
    Ok(())
}

//! Exact subspace counts, checked against enumeration.
//!
//! ```text
//! cargo run --example gaussian_counts
//! ```

use num_bigint::BigInt;
use qcover::qcount::{count_type, gaussian, type_condition};
use qcover::singular::{enumerate_type, SingularSpace};
use qcover::subspace::{enumerate_subspaces, Subspace};
use qcover::field_make;

fn main() -> qcover::Result<()> {
    for q in [2, 3, 4] {
        let row: Vec<String> = (0..=5).map(|m| gaussian(5, m, q).unwrap().to_string()).collect();
        println!("[5, m]_{q}: {}", row.join(" "));
    }
    println!("[40, 20]_7 = {}", gaussian(40, 20, 7)?);

    let f = field_make(3)?;
    let listed = enumerate_subspaces(&Subspace::full(&f, 5), 2)?.count();
    assert_eq!(BigInt::from(listed), gaussian(5, 2, 3)?);
    println!("planes of GF(3)^5 listed: {listed}");

    // V = W0 + W1 with dim W0 = n, dim W1 = l; a type (m, k) subspace meets W1 in dimension k
    let (n, l) = (2, 2);
    let sing = SingularSpace::new(&f, n, l)?;
    let x = sing.block(2, 1)?; // type (3, 1)
    for (m1, k1) in [(1, 0), (1, 1), (2, 0), (2, 1), (3, 1)] {
        let formula = count_type(m1, k1, 3, 1, n as u32, l as u32, 3)?;
        let listed = enumerate_type(&sing, &x, m1 as usize, k1 as usize)?.count();
        println!("type ({m1}, {k1}) inside a type (3, 1) subspace: {formula} (listed {listed})");
        assert_eq!(formula, BigInt::from(listed));
    }
    // an impossible type: a subspace meeting W1 in more than X does
    println!("(2, 2) inside (3, 1): {:?}", type_condition(2, 2, 3, 1, 2, 2).unwrap_err());
    Ok(())
}

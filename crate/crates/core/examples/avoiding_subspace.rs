//! Given A and B, build S inside A + B meeting A in exactly d dimensions and
//! missing B entirely.
//!
//! ```text
//! cargo run --example avoiding_subspace
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcover::io::format_subspace;
use qcover::subspace::{avoiding_subspace, random_pair_with_meet};
use qcover::field_make;

fn main() -> qcover::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = field_make(5)?;
    // (dim V, dim A, dim B, dim A∩B)
    for (n, a, b, c) in [(6, 4, 2, 1), (6, 3, 3, 0), (5, 4, 2, 2), (4, 2, 2, 0)] {
        let (sa, sb) = random_pair_with_meet(&f, n, a, b, c, &mut rng)?;
        for d in 0..=a - b {
            let s = avoiding_subspace(&sa, &sb, d)?;
            println!(
                "n={n} a={a} b={b} c={c} d={d}: S = <{}>  dim {} meets A in {} and B in {}",
                format_subspace(&s),
                s.dim(),
                s.meet(&sa)?.dim(),
                s.meet(&sb)?.dim()
            );
        }
    }
    // d larger than dim A - dim B is rejected
    let (sa, sb) = random_pair_with_meet(&f, 6, 3, 3, 1, &mut rng)?;
    println!("d=1 with dim A = dim B: {}", avoiding_subspace(&sa, &sb, 1).unwrap_err());
    Ok(())
}

//! Arithmetic in GF(q) and the basic subspace operations.
//!
//! ```text
//! cargo run --example field_arithmetic
//! ```

use qcover::io::format_subspace;
use qcover::subspace::{span_of, Subspace};
use qcover::{field_make, Matrix};

fn main() -> qcover::Result<()> {
    // GF(4) = GF(2)[x]/(x^2 + x + 1); code 2 is x, code 3 is x + 1
    let f = field_make(4)?;
    println!("GF(4) modulus (low degree first): {:?}", f.modulus());
    println!("x * x = {}, x + 1 = {}, 1/x = {}", f.mul(2, 2), f.add(2, 1), f.inv(2));
    for a in 1..4 {
        assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    let m = Matrix::from_rows(4, &[vec![1, 2, 0, 3], vec![2, 3, 0, 1], vec![0, 1, 1, 0]])?;
    let r = m.rref(&f)?;
    println!("rank {} pivots {:?}", r.rank, r.pivots);

    // subspaces are stored by canonical basis, so equal spans compare equal
    let a = span_of(&f, 4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]])?;
    let same = span_of(&f, 4, &[vec![1, 1, 1, 1], vec![0, 1, 0, 1]])?;
    assert_eq!(a, same);
    let b = Subspace::coordinate(&f, 4, &[0, 2]);
    let meet = a.meet(&b)?;
    let join = a.join(&b)?;
    println!("A = <{}>", format_subspace(&a));
    println!("B = <{}>", format_subspace(&b));
    println!("A meet B = <{}> (dim {})", format_subspace(&meet), meet.dim());
    println!("A join B has dim {}", join.dim());
    assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
    Ok(())
}

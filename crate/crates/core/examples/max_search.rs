//! Exhaustive search for the largest intersecting family of lines with no
//! covering point, and the matching decision query.
//!
//! ```text
//! cargo run --release --example max_search
//! ```

use qcover::io::format_subspace;
use qcover::maxsearch::{exists_family, max_family, SearchOptions};

fn main() -> qcover::Result<()> {
    let opts = SearchOptions { jobs: 4, ..SearchOptions::default() };
    for q in [2, 3] {
        let c = max_family(q, 4, 2, 2, &opts)?;
        println!(
            "q={q}: largest size {} over {} optima, {} nodes, {:.3}s",
            c.size,
            c.optima.len(),
            c.nodes,
            c.wall_time
        );
        println!("  every optimum is all lines of a plane: {:?}", c.all_optima_structured);
        if let Some(w) = &c.witness {
            let first: Vec<String> = w.iter().take(3).map(format_subspace).collect();
            println!("  least optimum starts {}", first.join(" | "));
        }
        let none = exists_family(q, 4, 2, 2, c.size + 1, &opts)?;
        println!("  size {}: {}", c.size + 1, if none.witness.is_some() { "exists" } else { "none" });
    }
    // without the covering constraint, pencils tie with planes
    let c = max_family(2, 4, 2, 1, &opts)?;
    println!("q=2, any tau: size {} with {} optima", c.size, c.optima.len());
    Ok(())
}

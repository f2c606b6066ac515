//! Family files and JSON certificates: write a family, read it back, solve
//! it, and re-check the certificate independently of the solver.
//!
//! ```text
//! cargo run --example family_files
//! ```

use qcover::certificate::Certificate;
use qcover::family::covering_number;
use qcover::io::FamilyFile;
use qcover::singular::construct_extremal;
use qcover::field_make;

fn main() -> qcover::Result<()> {
    let dir = std::env::temp_dir().join("qcover-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("x3.fam");

    let f = field_make(3)?;
    let ff = FamilyFile::plain(construct_extremal(&f, 3, 2)?);
    ff.save(&path)?;
    let text = std::fs::read_to_string(&path)?;
    print!("{}", text.lines().take(4).map(|l| format!("{l}\n")).collect::<String>());
    println!("...");

    // any spanning set is accepted on input; output is canonical
    let loose = "# hand written\nm=1 q=3 n=3 count=2\n2 2 0\n0 0 2; 0 0 1\n";
    println!("canonical form of a loose file:\n{}", FamilyFile::parse(loose)?.to_text());

    let back = FamilyFile::load(&path)?;
    assert_eq!(back.to_text(), text);
    let r = covering_number(&back.family)?;
    let cert = Certificate::from_cover(&back, &r);
    let json = cert.to_json();
    println!("{json}");

    let reread = Certificate::from_json(&json)?;
    let wf = reread.witness_family()?.expect("witness");
    let witness = &wf.family.members()[0];
    let covers = back.family.iter().all(|a| a.intersects(witness).unwrap());
    println!("witness of dimension {} meets every member: {covers}", witness.dim());
    Ok(())
}

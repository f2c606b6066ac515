//! The `qcover` command line. [`run`] is the whole program; the binary only
//! forwards `std::env::args` and the standard streams.
//!
//! Exit codes: 0 success or the checked property holds, 1 the property or
//! bound fails, 2 invalid input, 3 desk-scale gate or node budget exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::family::{
    covering_number_oracle, covering_number_with, is_intersecting, CoverOptions, Family, Intersection,
};
use crate::gf::field_make;
use crate::io::{format_subspace, parse_subspace, FamilyFile};
use crate::maxsearch::{exists_family, max_family, SearchOptions};
use crate::qcount::{
    self, count_type, gaussian, verify_extremal_gap, verify_gap_chain, verify_gaussian_sandwich,
    verify_singular_gap, IneqReport,
};
use crate::singular::{
    construct_extremal, construct_extremal_singular, construct_trivial, structure_check, SingularSpace,
};
use crate::subspace::{avoiding_subspace, random_pair_with_meet, Subspace};

pub const DEFAULT_SEED: u64 = 20_240_607;

#[derive(Parser, Debug)]
#[command(name = "qcover", version, about = "Covering numbers of intersecting families of subspaces over GF(q)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Gaussian binomial [n, m]_q
    Gauss { q: u64, n: u32, m: u32 },
    /// Number of type-(m1,k1) subspaces inside a type-(m,k) subspace
    CountType {
        q: u64,
        m1: u32,
        k1: u32,
        m: u32,
        k: u32,
        n: u32,
        l: u32,
    },
    /// Covering number of a family file
    Tau {
        file: PathBuf,
        /// Use the brute-force oracle instead of the search
        #[arg(long)]
        oracle: bool,
        #[arg(long, env = "QCOVER_JOBS", default_value_t = 1)]
        jobs: usize,
        /// Node budget for the search
        #[arg(long)]
        budget: Option<u64>,
        /// Largest number of subspaces the oracle may test
        #[arg(long, default_value_t = 2_000_000)]
        oracle_cap: u64,
        /// Write a JSON certificate here
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check that every two members of a family file meet
    CheckIntersecting { file: PathBuf },
    /// Write a trivial or extremal family
    Construct {
        kind: ConstructKind,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Common point of a trivial family, e.g. "1 0 2" (default: first coordinate)
        #[arg(long)]
        point: Option<String>,
        /// Output file (stdout if omitted)
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
    },
    /// Random A, B and the subspace S of A+B with dim(S∩A)=d and S∩B=0
    Lemma37 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dim_v: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Exact inequality checks, single or swept
    VerifyIneq {
        which: Ineq,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        /// Sweep the standard parameter ranges (adjustable below)
        #[arg(long)]
        sweep: bool,
        #[arg(long)]
        m_min: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long)]
        a_max: Option<u32>,
        /// Print every step of the chain
        #[arg(long)]
        steps: bool,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Largest intersecting family with covering number >= min-tau
    SearchMax {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        min_tau: usize,
        /// Decide whether a family of this size exists instead of maximising
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, env = "QCOVER_JOBS", default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 200)]
        gate: usize,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the witness family here
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Is the family all m-subspaces (or all type-(m,k) subspaces) of its span?
    StructureCheck { file: PathBuf },
    /// Run the invariant suite at tiny parameters
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConstructKind {
    Trivial,
    Extremal,
    ExtremalSingular,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Ineq {
    /// wide-family bound < [2m-1, m]
    #[value(name = "23")]
    Gap,
    /// the elementary chain behind the gap, m >= 4, q >= m
    #[value(name = "chain12")]
    Chain,
    /// wide-family bound < N(m,k; 2m-1,t), q >= m+2
    #[value(name = "233")]
    Singular,
    /// q^(b(a-b)) < [a,b] <= [a-b+1,1]^b
    #[value(name = "10")]
    Sandwich,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DeskScale(_) | Error::BudgetExhausted { .. } => 3,
        _ => 2,
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::ParameterRange(format!("--{flag} is required")))
}

fn w(out: &mut dyn Write, text: std::fmt::Arguments) -> Result<()> {
    out.write_fmt(text)?;
    Ok(())
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Gauss { q, n, m } => {
            field_make(q)?;
            w(out, format_args!("{}\n", gaussian(n, m, q)?))?;
            Ok(0)
        }
        Cmd::CountType { q, m1, k1, m, k, n, l } => {
            field_make(q)?;
            w(out, format_args!("{}\n", count_type(m1, k1, m, k, n, l, q)?))?;
            Ok(0)
        }
        Cmd::Tau {
            file,
            oracle,
            jobs,
            budget,
            oracle_cap,
            cert,
        } => {
            let ff = FamilyFile::load(&file)?;
            let r = if oracle {
                covering_number_oracle(&ff.family, oracle_cap)?
            } else {
                covering_number_with(
                    &ff.family,
                    &CoverOptions {
                        jobs,
                        budget,
                        ..CoverOptions::default()
                    },
                )?
            };
            w(out, format_args!("tau={}\n", r.tau))?;
            w(out, format_args!("witness={}\n", format_subspace(&r.witness)))?;
            w(out, format_args!("nodes={}\n", r.nodes_explored))?;
            let flag = match r.intersecting {
                Some(true) => "yes",
                Some(false) => "no (covering number still exact)",
                None => "unchecked",
            };
            w(out, format_args!("intersecting={flag}\n"))?;
            if let Some(path) = cert {
                std::fs::write(path, Certificate::from_cover(&ff, &r).to_json())?;
            }
            Ok(0)
        }
        Cmd::CheckIntersecting { file } => {
            let ff = FamilyFile::load(&file)?;
            match is_intersecting(&ff.family) {
                Intersection::Intersecting => {
                    w(out, format_args!("intersecting ({} members)\n", ff.family.len()))?;
                    Ok(0)
                }
                Intersection::Disjoint(a, b) => {
                    w(
                        out,
                        format_args!(
                            "not intersecting: <{}> and <{}> meet in 0\n",
                            format_subspace(&a),
                            format_subspace(&b)
                        ),
                    )?;
                    Ok(1)
                }
            }
        }
        Cmd::Construct {
            kind,
            q,
            n,
            m,
            l,
            k,
            point,
            out: path,
        } => {
            let field = field_make(q)?;
            let ff = match kind {
                ConstructKind::Trivial => {
                    let p = match point {
                        Some(text) => parse_subspace(&field, n, &text).map_err(Error::ParameterRange)?,
                        None if n > 0 => Subspace::coordinate(&field, n, &[0]),
                        None => return Err(Error::ParameterRange("n must be positive".into())),
                    };
                    FamilyFile::plain(construct_trivial(&field, n, m, &p)?)
                }
                ConstructKind::Extremal => FamilyFile::plain(construct_extremal(&field, n, m)?),
                ConstructKind::ExtremalSingular => {
                    let (l, k) = (need(l, "l")?, need(k, "k")?);
                    let sing = SingularSpace::new(&field, n, l)?;
                    FamilyFile {
                        family: construct_extremal_singular(&sing, m, k)?,
                        l: Some(l),
                    }
                }
            };
            match path {
                Some(p) => {
                    ff.save(&p)?;
                    w(out, format_args!("wrote {} members to {}\n", ff.family.len(), p.display()))?;
                }
                None => w(out, format_args!("{}", ff.to_text()))?,
            }
            Ok(0)
        }
        Cmd::Lemma37 {
            q,
            dim_v,
            a,
            b,
            c,
            d,
            seed,
        } => lemma37(out, q, dim_v, a, b, c, d, seed),
        Cmd::VerifyIneq {
            which,
            m,
            q,
            k,
            n,
            l,
            a,
            b,
            sweep,
            m_min,
            m_max,
            q_max,
            a_max,
            steps,
            cert,
        } => {
            if sweep {
                return run_sweep(out, which, m_min, m_max, q_max, a_max);
            }
            let report = match which {
                Ineq::Gap => verify_extremal_gap(need(m, "m")?, need(q, "q")?)?,
                Ineq::Chain => verify_gap_chain(need(m, "m")?, need(q, "q")?)?,
                Ineq::Singular => verify_singular_gap(
                    need(m, "m")?,
                    need(k, "k")?,
                    need(n, "n")?,
                    need(l, "l")?,
                    need(q, "q")?,
                )?,
                Ineq::Sandwich => verify_gaussian_sandwich(need(a, "a")?, need(b, "b")?, need(q, "q")?)?,
            };
            print_report(out, &report, steps)?;
            if let Some(path) = cert {
                std::fs::write(path, Certificate::from_ineq(&report).to_json())?;
            }
            Ok(if report.holds { 0 } else { 1 })
        }
        Cmd::SearchMax {
            q,
            n,
            m,
            min_tau,
            target,
            jobs,
            gate,
            force,
            budget,
            out: path,
            cert,
        } => {
            let opts = SearchOptions {
                jobs,
                gate,
                force,
                node_budget: budget,
            };
            let c = match target {
                Some(t) => exists_family(q, n, m, min_tau, t, &opts)?,
                None => max_family(q, n, m, min_tau, &opts)?,
            };
            let code = match target {
                Some(t) => match (&c.witness, c.optimal) {
                    (Some(f), _) => {
                        w(out, format_args!("exists: family of size {} (target {t})\n", f.len()))?;
                        0
                    }
                    (None, true) => {
                        w(out, format_args!("none exists: no family of size >= {t} (exhaustive)\n"))?;
                        0
                    }
                    (None, false) => {
                        w(out, format_args!("undecided: node budget exhausted\n"))?;
                        3
                    }
                },
                None => {
                    w(
                        out,
                        format_args!(
                            "size={} optimal={} optima={} nodes={}\n",
                            c.size,
                            c.optimal,
                            c.optima.len(),
                            c.nodes
                        ),
                    )?;
                    if let Some(s) = c.all_optima_structured {
                        w(out, format_args!("all optima are [X m] for dim X = 2m-1: {s}\n"))?;
                    }
                    if c.optimal {
                        0
                    } else {
                        3
                    }
                }
            };
            if let (Some(p), Some(f)) = (path, &c.witness) {
                FamilyFile::plain(f.clone()).save(p)?;
            }
            if let Some(p) = cert {
                std::fs::write(p, Certificate::from_search(&c).to_json())?;
            }
            Ok(code)
        }
        Cmd::StructureCheck { file } => {
            let ff = FamilyFile::load(&file)?;
            let sing = ff.singular()?;
            if structure_check(&ff.family, sing.as_ref())? {
                w(out, format_args!("structured: the family is every admissible subspace of its span\n"))?;
                Ok(0)
            } else {
                w(out, format_args!("not structured\n"))?;
                Ok(1)
            }
        }
        Cmd::Selftest { quick } => selftest(out, quick),
    }
}

fn print_report(out: &mut dyn Write, r: &IneqReport, all_steps: bool) -> Result<()> {
    let verdict = if r.holds { "HOLDS" } else { "FAILS" };
    w(out, format_args!("{} < {} {verdict}\n", r.lhs, r.rhs))?;
    for s in &r.steps {
        if all_steps || (s.required && !s.holds) {
            let tag = match (s.required, s.holds) {
                (_, true) => "ok",
                (true, false) => "FAIL",
                (false, false) => "info, fails",
            };
            w(
                out,
                format_args!("  [{tag}] {}: {} {} {}\n", s.name, s.lhs, s.relation.symbol(), s.rhs),
            )?;
        }
    }
    Ok(())
}

fn run_sweep(
    out: &mut dyn Write,
    which: Ineq,
    m_min: Option<u32>,
    m_max: Option<u32>,
    q_max: Option<u64>,
    a_max: Option<u32>,
) -> Result<i32> {
    let results: Vec<Result<IneqReport>> = match which {
        Ineq::Gap => {
            let ps = qcount::extremal_gap_params(m_min.unwrap_or(3), m_max.unwrap_or(10), q_max.unwrap_or(128));
            qcount::sweep(&ps, |&(m, q)| verify_extremal_gap(m, q))
        }
        Ineq::Chain => {
            let ps = qcount::gap_chain_params(m_min.unwrap_or(4), m_max.unwrap_or(10), q_max.unwrap_or(128));
            qcount::sweep(&ps, |&(m, q)| verify_gap_chain(m, q))
        }
        Ineq::Singular => {
            let ps = qcount::singular_gap_params(m_min.unwrap_or(3), m_max.unwrap_or(8), q_max.unwrap_or(64));
            qcount::sweep(&ps, |&(m, k, n, l, q)| verify_singular_gap(m, k, n, l, q))
        }
        Ineq::Sandwich => {
            let ps = qcount::sandwich_params(a_max.unwrap_or(12), &[2, 3, 4, 5, 8]);
            qcount::sweep(&ps, |&(a, b, q)| verify_gaussian_sandwich(a, b, q))
        }
    };
    let total = results.len();
    let mut failed = 0;
    for r in results {
        let r = r?;
        if !r.holds {
            failed += 1;
            let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            w(out, format_args!("FAILS at {}\n", params.join(" ")))?;
            print_report(out, &r, false)?;
        }
    }
    if failed == 0 {
        w(out, format_args!("{total} parameter sets checked, all HOLD\n"))?;
        Ok(0)
    } else {
        w(out, format_args!("{failed} of {total} parameter sets FAIL\n"))?;
        Ok(1)
    }
}

#[allow(clippy::too_many_arguments)]
fn lemma37(out: &mut dyn Write, q: u64, n: usize, a: usize, b: usize, c: usize, d: usize, seed: u64) -> Result<i32> {
    let field = field_make(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (sa, sb) = random_pair_with_meet(&field, n, a, b, c, &mut rng)?;
    let s = avoiding_subspace(&sa, &sb, d)?;
    w(out, format_args!("A = <{}>\n", format_subspace(&sa)))?;
    w(out, format_args!("B = <{}>\n", format_subspace(&sb)))?;
    w(out, format_args!("S = <{}>\n", format_subspace(&s)))?;
    let checks = [
        ("dim S = b - c + d", s.dim() == b - c + d),
        ("dim(S ∩ A) = d", s.meet(&sa)?.dim() == d),
        ("S ∩ B = 0", s.meet(&sb)?.dim() == 0),
        ("S ⊆ A + B", sa.join(&sb)?.contains(&s)?),
    ];
    let mut ok = true;
    for (name, pass) in checks {
        ok &= pass;
        w(out, format_args!("  {} {name}\n", if pass { "[ok]" } else { "[FAIL]" }))?;
    }
    w(out, format_args!("{}\n", if ok { "verified" } else { "VIOLATED" }))?;
    Ok(if ok { 0 } else { 1 })
}

fn selftest(out: &mut dyn Write, quick: bool) -> Result<i32> {
    let mut failures = 0;
    let mut report = |out: &mut dyn Write, name: &str, pass: bool| -> Result<()> {
        if !pass {
            failures += 1;
        }
        w(out, format_args!("[{}] {name}\n", if pass { "PASS" } else { "FAIL" }))
    };
    let nmax = if quick { 4 } else { 5 };

    let mut counts_ok = true;
    for q in [2u64, 3] {
        let field = field_make(q)?;
        for n in 0..=nmax {
            let v = Subspace::full(&field, n);
            for m in 0..=n {
                let enumerated = crate::subspace::enumerate_subspaces(&v, m)?.count();
                counts_ok &= gaussian(n as u32, m as u32, q)? == enumerated.into();
            }
        }
    }
    report(out, "gaussian binomials match enumeration", counts_ok)?;

    let mut types_ok = true;
    for q in [2u64, 3] {
        let field = field_make(q)?;
        for total in 1..=nmax {
            for l in 0..total {
                let sing = SingularSpace::new(&field, total - l, l)?;
                let v = Subspace::full(&field, total);
                for m1 in 0..=total {
                    for k1 in 0..=m1 {
                        let got = crate::singular::enumerate_type(&sing, &v, m1, k1)?.count();
                        let want = count_type(m1 as u32, k1 as u32, total as u32, l as u32, (total - l) as u32, l as u32, q)?;
                        types_ok &= want == got.into();
                    }
                }
            }
        }
    }
    report(out, "typed counts match enumeration", types_ok)?;

    let cases: &[(u64, usize)] = if quick { &[(2, 2), (3, 2), (2, 3)] } else { &[(2, 2), (3, 2), (2, 3), (3, 3)] };
    let mut extremal_ok = true;
    for &(q, m) in cases {
        let field = field_make(q)?;
        let fam = construct_extremal(&field, 2 * m - 1, m)?;
        let r = covering_number_with(&fam, &CoverOptions::default())?;
        let o = covering_number_oracle(&fam, 10_000_000)?;
        extremal_ok &= r.tau == m && o.tau == m && r.witness == o.witness;
        extremal_ok &= gaussian(2 * m as u32 - 1, m as u32, q)? == fam.len().into();
    }
    report(out, "extremal families have tau = m (search and oracle agree)", extremal_ok)?;

    let field = field_make(3)?;
    let p = Subspace::coordinate(&field, 4, &[1]);
    let triv = construct_trivial(&field, 4, 2, &p)?;
    let r = covering_number_with(&triv, &CoverOptions::default())?;
    report(out, "trivial family has tau = 1 at its point", r.tau == 1 && r.witness == p)?;

    let mut avoid_ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let reps = if quick { 50 } else { 300 };
    for q in [2u64, 3, 5] {
        let field = field_make(q)?;
        for _ in 0..reps {
            use rand::Rng;
            let n = rng.gen_range(1..=6usize);
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=a);
            let c = rng.gen_range(b.saturating_sub(n - a)..=b);
            let d = rng.gen_range(0..=a - b);
            let (sa, sb) = random_pair_with_meet(&field, n, a, b, c, &mut rng)?;
            let s = avoiding_subspace(&sa, &sb, d)?;
            avoid_ok &= s.dim() == b - c + d
                && s.meet(&sa)?.dim() == d
                && s.meet(&sb)?.dim() == 0
                && sa.join(&sb)?.contains(&s)?;
        }
    }
    report(out, "avoiding subspace postconditions", avoid_ok)?;

    let ineq_ok = (3..=6).all(|m| {
        qcount::prime_powers(m as u64, 32)
            .into_iter()
            .all(|q| verify_extremal_gap(m, q).is_ok_and(|r| r.holds))
    }) && verify_gap_chain(4, 5).is_ok_and(|r| r.holds)
        && verify_singular_gap(3, 1, 2, 3, 5).is_ok_and(|r| r.holds)
        && verify_gaussian_sandwich(5, 2, 3).is_ok_and(|r| r.holds);
    report(out, "exact inequalities hold at small parameters", ineq_ok)?;

    let qs: &[u64] = if quick { &[2] } else { &[2, 3] };
    let mut search_ok = true;
    for &q in qs {
        let c = max_family(q, 4, 2, 2, &SearchOptions::default())?;
        search_ok &= c.optimal && c.size as u64 == q * q + q + 1 && c.all_optima_structured == Some(true);
        let e = exists_family(q, 4, 2, 2, c.size + 1, &SearchOptions::default())?;
        search_ok &= e.optimal && e.witness.is_none();
    }
    report(out, "largest lines family with tau = 2 is all lines of a plane", search_ok)?;

    let fam: Family = construct_extremal(&field_make(2)?, 4, 2)?;
    let text = FamilyFile::plain(fam).to_text();
    let again = FamilyFile::parse(&text)?.to_text();
    report(out, "family file round trip is byte-identical", text == again)?;

    w(out, format_args!("{}\n", if failures == 0 { "selftest passed" } else { "selftest FAILED" }))?;
    Ok(if failures == 0 { 0 } else { 1 })
}

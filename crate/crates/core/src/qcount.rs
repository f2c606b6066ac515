//! Exact evaluation of Gaussian binomials, typed-subspace counts and the
//! inequalities that separate the extremal family from every other
//! intersecting family with full covering number.
//!
//! Everything here is integer arithmetic on [`QInt`]. Quotients such as
//! `q^(m-1) / (q-1)^(m-2)` are held as unreduced [`Ratio`]s and compared by
//! cross-multiplication; nothing is ever divided.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type QInt = BigInt;

fn qpow(q: u64, e: u64) -> QInt {
    Pow::pow(QInt::from(q), e)
}

/// `[n, m]_q`, the number of m-dimensional subspaces of GF(q)^n. Zero when m > n.
pub fn gaussian(n: u32, m: u32, q: u64) -> Result<QInt> {
    if q < 2 {
        return Err(Error::ParameterRange(format!("q = {q} < 2")));
    }
    if m > n {
        return Ok(QInt::zero());
    }
    let mut num = QInt::one();
    let mut den = QInt::one();
    for i in 0..m {
        num *= qpow(q, (n - i) as u64) - 1;
        den *= qpow(q, (m - i) as u64) - 1;
    }
    let (quot, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "Gaussian binomial product is not integral");
    Ok(quot)
}

fn g(n: u32, m: u32, q: u64) -> QInt {
    gaussian(n, m, q).expect("q validated by caller")
}

/// Checks whether a type-(m1,k1) subspace can sit inside a type-(m,k) subspace
/// of the singular space with parameters (n, l). On failure returns the
/// violated clause of `0 <= k1 <= k <= l, 0 <= m1 - k1 <= m - k <= n`.
pub fn type_condition(m1: u32, k1: u32, m: u32, k: u32, n: u32, l: u32) -> Result<(), &'static str> {
    let [m1, k1, m, k, n, l] = [m1, k1, m, k, n, l].map(i64::from);
    if k1 > k {
        Err("k1 <= k")
    } else if k > l {
        Err("k <= l")
    } else if m1 < k1 {
        Err("0 <= m1 - k1")
    } else if m1 - k1 > m - k {
        Err("m1 - k1 <= m - k")
    } else if m - k > n {
        Err("m - k <= n")
    } else {
        Ok(())
    }
}

/// Number of type-(m1,k1) subspaces inside a fixed type-(m,k) subspace of the
/// singular space of dimension n + l with distinguished l-subspace.
/// Zero exactly when [`type_condition`] fails.
pub fn count_type(m1: u32, k1: u32, m: u32, k: u32, n: u32, l: u32, q: u64) -> Result<QInt> {
    if q < 2 {
        return Err(Error::ParameterRange(format!("q = {q} < 2")));
    }
    if type_condition(m1, k1, m, k, n, l).is_err() {
        return Ok(QInt::zero());
    }
    let twist = qpow(q, ((m1 - k1) * (k - k1)) as u64);
    Ok(twist * g(m - k, m1 - k1, q) * g(k, k1, q))
}

/// Size of the extremal family, `[2m-1, m]_q`.
pub fn extremal_size(m: u32, q: u64) -> Result<QInt> {
    if m < 1 {
        return Err(Error::ParameterRange("m must be positive".into()));
    }
    gaussian(2 * m - 1, m, q)
}

/// Upper bound on an intersecting family with covering number m whose
/// members span at least 2m dimensions:
/// `[m-1,1][m,1]^(m-1) + [m-1,1]^2 [2m-3,m-2]`.
pub fn wide_family_bound(m: u32, q: u64) -> Result<QInt> {
    if m < 2 {
        return Err(Error::ParameterRange(format!("m = {m} < 2")));
    }
    if q < 2 {
        return Err(Error::ParameterRange(format!("q = {q} < 2")));
    }
    let a = g(m - 1, 1, q);
    let b = g(m, 1, q);
    Ok(&a * Pow::pow(b, m - 1) + &a * &a * g(2 * m - 3, m - 2, q))
}

/// The dimension t of `X ∩ W1` for the extremal singular family:
/// `max(0, 2m-1-n)` when k = 0 and `m+k-1` otherwise.
pub fn extremal_w1_dim(m: u32, k: u32, n: u32) -> u32 {
    if k == 0 {
        (2 * m - 1).saturating_sub(n)
    } else {
        m + k - 1
    }
}

/// Nonnegative-denominator fraction compared by cross-multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ratio {
    num: QInt,
    den: QInt,
}

impl Ratio {
    pub fn new(num: QInt, den: QInt) -> Self {
        assert!(den.is_positive(), "denominator must be positive");
        let g = num.gcd(&den);
        if g.is_zero() || g.is_one() {
            Ratio { num, den }
        } else {
            Ratio {
                num: num / &g,
                den: den / g,
            }
        }
    }

    pub fn integer(n: QInt) -> Self {
        Ratio {
            num: n,
            den: QInt::one(),
        }
    }

    pub fn numer(&self) -> &QInt {
        &self.num
    }

    pub fn denom(&self) -> &QInt {
        &self.den
    }

    fn parse(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((a, b)) => Some(Ratio::new(a.trim().parse().ok()?, b.trim().parse().ok()?)),
            None => Some(Ratio::integer(s.trim().parse().ok()?)),
        }
    }
}

impl From<QInt> for Ratio {
    fn from(n: QInt) -> Self {
        Ratio::integer(n)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ratio::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn test(self, o: Ordering) -> bool {
        match self {
            Relation::Lt => o == Ordering::Less,
            Relation::Le => o != Ordering::Greater,
            Relation::Gt => o == Ordering::Greater,
            Relation::Ge => o != Ordering::Less,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }
}

/// One exact comparison inside a report. Steps with `required = false` are
/// recorded for inspection only and do not affect `holds` of the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub lhs: Ratio,
    pub relation: Relation,
    pub rhs: Ratio,
    pub holds: bool,
    pub required: bool,
}

impl Step {
    fn new(name: &str, lhs: impl Into<Ratio>, relation: Relation, rhs: impl Into<Ratio>) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let holds = relation.test(lhs.cmp(&rhs));
        Step {
            name: name.to_string(),
            lhs,
            relation,
            rhs,
            holds,
            required: true,
        }
    }

    fn informational(mut self) -> Self {
        self.required = false;
        self
    }
}

/// Result of an exact inequality check. `lhs < rhs` is the headline
/// comparison and is always the first step; `holds` is true iff every
/// required step holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IneqReport {
    pub kind: String,
    pub parameters: BTreeMap<String, u64>,
    #[serde(with = "qint_string")]
    pub lhs: QInt,
    #[serde(with = "qint_string")]
    pub rhs: QInt,
    pub holds: bool,
    pub steps: Vec<Step>,
}

impl IneqReport {
    fn new(kind: &str, params: &[(&str, u64)], lhs: QInt, rhs: QInt, steps: Vec<Step>) -> Self {
        let holds = steps.iter().filter(|s| s.required).all(|s| s.holds);
        IneqReport {
            kind: kind.to_string(),
            parameters: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            lhs,
            rhs,
            holds,
            steps,
        }
    }

    pub fn failed_steps(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| s.required && !s.holds)
    }
}

pub(crate) mod qint_string {
    use super::QInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &QInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `wide_family_bound(m, q) < extremal_size(m, q)`: any intersecting family
/// with covering number m spanning 2m or more dimensions is strictly smaller
/// than the extremal one. Defined for m >= 3; the truth value is reported
/// for every q >= 2, including q < m where it may fail.
pub fn verify_extremal_gap(m: u32, q: u64) -> Result<IneqReport> {
    if m < 3 {
        return Err(Error::ParameterRange(format!("m = {m} < 3")));
    }
    let lhs = wide_family_bound(m, q)?;
    let rhs = extremal_size(m, q)?;
    let step = Step::new("wide bound < [2m-1,m]", lhs.clone(), Relation::Lt, rhs.clone());
    Ok(IneqReport::new(
        "extremal-gap",
        &[("m", m as u64), ("q", q)],
        lhs,
        rhs,
        vec![step],
    ))
}

/// Re-derives the extremal gap for m >= 4, q >= m through the chain of
/// elementary bounds: lower bounds on `[2m-1,m]`, the Bernoulli estimate of
/// `q^(m-1)/(q-1)^(m-2)`, and the intermediate rational majorant of the
/// wide-family bound.
pub fn verify_gap_chain(m: u32, q: u64) -> Result<IneqReport> {
    if m < 4 || q < m as u64 {
        return Err(Error::ParameterRange(format!(
            "chain requires m >= 4 and q >= m, got m = {m}, q = {q}"
        )));
    }
    let mu = m as u64;
    let big = extremal_size(m, q)?;
    let inner = g(2 * m - 3, m - 2, q);
    let lhs = wide_family_bound(m, q)?;
    let qi = |x: u64| QInt::from(x);
    let q1 = q - 1;

    let mut steps = vec![Step::new(
        "wide bound < [2m-1,m]",
        lhs.clone(),
        Relation::Lt,
        big.clone(),
    )];
    steps.push(Step::new(
        "[2m-1,m] > q^(m(m-1))",
        big.clone(),
        Relation::Gt,
        qpow(q, mu * (mu - 1)),
    ));
    steps.push(Step::new(
        "[2m-1,m] > q^(2(m-1)) [2m-3,m-2]",
        big.clone(),
        Relation::Gt,
        qpow(q, 2 * (mu - 1)) * &inner,
    ));
    let ratio = Ratio::new(qpow(q, mu - 1), qpow(q1, mu - 2));
    steps.push(Step::new(
        "q^(m-1)/(q-1)^(m-2) < q(q-2)",
        ratio.clone(),
        Relation::Lt,
        qi(q * (q - 2)),
    ));
    steps.push(
        Step::new(
            "(1-1/q)^(m-3) >= 1-(m-3)/q",
            Ratio::new(qpow(q1, mu - 3), qpow(q, mu - 3)),
            Relation::Ge,
            Ratio::new(qi(q + 3) - qi(mu), qi(q)),
        )
        .informational(),
    );
    steps.push(
        Step::new(
            "1-(m-3)/q > 1-(m-3)/(q-1)",
            Ratio::new(qi(q + 3) - qi(mu), qi(q)),
            Relation::Gt,
            Ratio::new(qi(q + 2) - qi(mu), qi(q1)),
        )
        .informational(),
    );
    steps.push(
        Step::new(
            "q^(m-1)/(q-1)^(m-2) < q^2/(q-m+2)",
            ratio,
            Relation::Lt,
            Ratio::new(qi(q * q), qi(q + 2) - qi(mu)),
        )
        .informational(),
    );
    steps.push(
        Step::new(
            "q^2/(q-m+2) <= q^2/(q-2)",
            Ratio::new(qi(q * q), qi(q + 2) - qi(mu)),
            Relation::Le,
            Ratio::new(qi(q * q), qi(q - 2)),
        )
        .informational(),
    );
    steps.push(
        Step::new(
            "q^2/(q-2) <= q(q-2)",
            Ratio::new(qi(q * q), qi(q - 2)),
            Relation::Le,
            qi(q * (q - 2)),
        )
        .informational(),
    );
    // q^(m-1)/(q-1)^(m-2) * q^(m(m-1))/(q-1)^2 + q^(2(m-1)) [2m-3,m-2]/(q-1)^2
    let den = qpow(q1, mu);
    let majorant = Ratio::new(
        qpow(q, mu - 1 + mu * (mu - 1)) + qpow(q, 2 * (mu - 1)) * qpow(q1, mu - 2) * &inner,
        den,
    );
    steps.push(Step::new(
        "wide bound < rational majorant",
        lhs.clone(),
        Relation::Lt,
        majorant.clone(),
    ));
    steps.push(Step::new(
        "rational majorant < [2m-1,m]",
        majorant,
        Relation::Lt,
        big.clone(),
    ));
    Ok(IneqReport::new(
        "gap-chain",
        &[("m", mu), ("q", q)],
        lhs,
        big,
        steps,
    ))
}

/// `q^(b(a-b)) < [a,b] <= [a-b+1,1]^b` for a > b >= 1.
pub fn verify_gaussian_sandwich(a: u32, b: u32, q: u64) -> Result<IneqReport> {
    if !(a > b && b >= 1) || q < 2 {
        return Err(Error::ParameterRange(format!(
            "need a > b >= 1 and q >= 2, got a = {a}, b = {b}, q = {q}"
        )));
    }
    let mid = g(a, b, q);
    let low = qpow(q, (b * (a - b)) as u64);
    let high: QInt = Pow::pow(g(a - b + 1, 1, q), b);
    let steps = vec![
        Step::new("q^(b(a-b)) < [a,b]", low.clone(), Relation::Lt, mid.clone()),
        Step::new("[a,b] <= [a-b+1,1]^b", mid.clone(), Relation::Le, high),
    ];
    Ok(IneqReport::new(
        "gaussian-sandwich",
        &[("a", a as u64), ("b", b as u64), ("q", q)],
        low,
        mid,
        steps,
    ))
}

/// `wide_family_bound(m, q) < N(m,k; 2m-1,t; n+l,n)` with t from
/// [`extremal_w1_dim`], for q >= m+2 >= 5. Also records every auxiliary
/// estimate used to reach it.
pub fn verify_singular_gap(m: u32, k: u32, n: u32, l: u32, q: u64) -> Result<IneqReport> {
    if m < 3 || q < m as u64 + 2 {
        return Err(Error::ParameterRange(format!(
            "need q >= m + 2 >= 5, got m = {m}, q = {q}"
        )));
    }
    if n == 0 {
        return Err(Error::ParameterRange("n must be positive".into()));
    }
    let t = extremal_w1_dim(m, k, n);
    type_condition(m, k, 2 * m - 1, t, n, l).map_err(|c| Error::Infeasible(c.to_string()))?;
    let mu = m as u64;
    let lhs = wide_family_bound(m, q)?;
    let rhs = count_type(m, k, 2 * m - 1, t, n, l, q)?;
    let floor = qpow(q, mu * (mu - 1));
    let qi = |x: u64| QInt::from(x);
    let q1 = q - 1;

    let mut steps = vec![Step::new(
        "wide bound < N(m,k;2m-1,t)",
        lhs.clone(),
        Relation::Lt,
        rhs.clone(),
    )];
    let inner = g(2 * m - 3, m - 2, q);
    steps.push(Step::new(
        "[2m-3,m-2] <= [m,1]^(m-2)",
        inner.clone(),
        Relation::Le,
        Pow::pow(g(m, 1, q), m - 2),
    ));
    steps.push(Step::new(
        "[2m-3,m-2] > q^((m-2)(m-1))",
        inner,
        Relation::Gt,
        qpow(q, (mu - 2) * (mu - 1)),
    ));
    // lower bounds on the Gaussian factors of N
    let (a1, b1) = (2 * m - 1 - t, m - k);
    if a1 > b1 && b1 >= 1 {
        steps.push(Step::new(
            "[2m-1-t,m-k] > q^((m-k)(m-1-t+k))",
            g(a1, b1, q),
            Relation::Gt,
            qpow(q, (b1 * (a1 - b1)) as u64),
        ));
    }
    if t > k && k >= 1 {
        steps.push(Step::new(
            "[t,k] > q^(k(t-k))",
            g(t, k, q),
            Relation::Gt,
            qpow(q, (k * (t - k)) as u64),
        ));
    }
    let den = qpow(q1, mu);
    let majorant = Ratio::new((qpow(q, mu - 1) + qpow(q, mu - 2)) * &floor, den.clone());
    steps.push(Step::new(
        "wide bound < rational majorant",
        lhs.clone(),
        Relation::Lt,
        majorant.clone(),
    ));
    steps.push(Step::new(
        "(q-1)^m > q^m - m q^(m-1)",
        den.clone(),
        Relation::Gt,
        qpow(q, mu) - qi(mu) * qpow(q, mu - 1),
    ));
    steps.push(Step::new(
        "q^m - m q^(m-1) >= q^m - (q-2) q^(m-1)",
        qpow(q, mu) - qi(mu) * qpow(q, mu - 1),
        Relation::Ge,
        qpow(q, mu) - qi(q - 2) * qpow(q, mu - 1),
    ));
    steps.push(Step::new(
        "q^m - (q-2) q^(m-1) > q^(m-1) + q^(m-2)",
        qpow(q, mu) - qi(q - 2) * qpow(q, mu - 1),
        Relation::Gt,
        qpow(q, mu - 1) + qpow(q, mu - 2),
    ));
    steps.push(Step::new(
        "(q-1)^m > q^(m-1) + q^(m-2)",
        den,
        Relation::Gt,
        qpow(q, mu - 1) + qpow(q, mu - 2),
    ));
    steps.push(Step::new(
        "rational majorant < q^(m(m-1))",
        majorant,
        Relation::Lt,
        floor.clone(),
    ));
    steps.push(Step::new(
        "q^(m(m-1)) <= N(m,k;2m-1,t)",
        floor,
        Relation::Le,
        rhs.clone(),
    ));
    Ok(IneqReport::new(
        "singular-gap",
        &[
            ("m", mu),
            ("k", k as u64),
            ("n", n as u64),
            ("l", l as u64),
            ("t", t as u64),
            ("q", q),
        ],
        lhs,
        rhs,
        steps,
    ))
}

/// Prime powers in `lo..=hi`.
pub fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi)
        .filter(|&q| crate::gf::prime_power(q).is_some())
        .collect()
}

/// Feasible `(k, n, l)` choices for [`verify_singular_gap`] at a given m:
/// every k in `0..=m`; for k = 0 every n in `m..=2m` with l the smallest
/// admissible value and one more; for k >= 1 the smallest n and l.
pub fn singular_gap_grid(m: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in m..=2 * m {
        let t = extremal_w1_dim(m, 0, n);
        out.push((0, n, t));
        out.push((0, n, t + 1));
    }
    for k in 1..=m {
        let t = extremal_w1_dim(m, k, 1);
        out.push((k, (m - k).max(1), t));
        out.push((k, m - k + 1, t + 1));
    }
    out.retain(|&(k, n, l)| type_condition(m, k, 2 * m - 1, extremal_w1_dim(m, k, n), n, l).is_ok());
    out
}

/// Runs `check` over a parameter list in parallel; results keep input order.
pub fn sweep<P, F>(params: &[P], check: F) -> Vec<Result<IneqReport>>
where
    P: Sync,
    F: Fn(&P) -> Result<IneqReport> + Sync + Send,
{
    params.par_iter().map(check).collect()
}

pub fn extremal_gap_params(m_lo: u32, m_hi: u32, q_max: u64) -> Vec<(u32, u64)> {
    (m_lo.max(3)..=m_hi)
        .flat_map(|m| prime_powers(m as u64, q_max).into_iter().map(move |q| (m, q)))
        .collect()
}

pub fn gap_chain_params(m_lo: u32, m_hi: u32, q_max: u64) -> Vec<(u32, u64)> {
    (m_lo.max(4)..=m_hi)
        .flat_map(|m| prime_powers(m as u64, q_max).into_iter().map(move |q| (m, q)))
        .collect()
}

pub fn sandwich_params(a_max: u32, qs: &[u64]) -> Vec<(u32, u32, u64)> {
    let mut out = Vec::new();
    for &q in qs {
        for a in 2..=a_max {
            for b in 1..a {
                out.push((a, b, q));
            }
        }
    }
    out
}

pub fn singular_gap_params(m_lo: u32, m_hi: u32, q_max: u64) -> Vec<(u32, u32, u32, u32, u64)> {
    let mut out = Vec::new();
    for m in m_lo.max(3)..=m_hi {
        for q in prime_powers(m as u64 + 2, q_max) {
            for (k, n, l) in singular_gap_grid(m) {
                out.push((m, k, n, l, q));
            }
        }
    }
    out
}

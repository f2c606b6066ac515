//! Families of equal-dimensional subspaces and their covering number.
//!
//! The covering number `tau(F)` is the least dimension of a subspace meeting
//! every member nontrivially. The solver only looks inside the span `X` of
//! the family: if `T` covers `F`, pick a nonzero vector from each `T ∩ M`;
//! their span lies in `X`, still meets every member and has dimension at most
//! `dim T`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::qcount::gaussian;
use crate::subspace::{enumerate_subspaces, span_of, Subspace};

/// A duplicate-free family of m-subspaces of GF(q)^n, kept in canonical order.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    field: Field,
    ambient: usize,
    m: usize,
    members: Vec<Subspace>,
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Family(q={}, n={}, m={}, {} members)",
            self.field.q(),
            self.ambient,
            self.m,
            self.members.len()
        )
    }
}

impl Family {
    /// Sorts and deduplicates `members`, checking that each is an m-subspace
    /// of the given space.
    pub fn new(field: &Field, ambient: usize, m: usize, mut members: Vec<Subspace>) -> Result<Self> {
        for s in &members {
            if s.field().q() != field.q() || s.ambient() != ambient {
                return Err(Error::AmbientMismatch(format!(
                    "member in GF({})^{}, family in GF({})^{ambient}",
                    s.field().q(),
                    s.ambient(),
                    field.q()
                )));
            }
            if s.dim() != m {
                return Err(Error::MemberDimension {
                    expected: m,
                    found: s.dim(),
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family {
            field: field.clone(),
            ambient,
            m,
            members,
        })
    }

    /// Like [`Family::new`] but reads the parameters off the first member.
    pub fn from_members(members: Vec<Subspace>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let (field, n, m) = (first.field().clone(), first.ambient(), first.dim());
        Family::new(&field, n, m, members)
    }

    /// Every m-subspace of `x`.
    pub fn all_of(x: &Subspace, m: usize) -> Result<Self> {
        let members = enumerate_subspaces(x, m)?.collect();
        Family::new(x.field(), x.ambient(), m, members)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.members.iter()
    }

    fn check_space(&self, a: &Subspace) -> Result<()> {
        if a.field().q() != self.field.q() || a.ambient() != self.ambient {
            return Err(Error::AmbientMismatch(format!(
                "subspace in GF({})^{}, family in GF({})^{}",
                a.field().q(),
                a.ambient(),
                self.field.q(),
                self.ambient
            )));
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Subspace;
    type IntoIter = std::slice::Iter<'a, Subspace>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Outcome of [`is_intersecting`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Intersecting,
    /// The first pair (in canonical order) with trivial meet.
    Disjoint(Subspace, Subspace),
}

impl Intersection {
    pub fn holds(&self) -> bool {
        matches!(self, Intersection::Intersecting)
    }
}

/// Pairwise check. Skipped entirely when the span X has dimension below 2m,
/// since then `dim(A ∩ B) >= 2m - dim X >= 1` for all members.
pub fn is_intersecting(f: &Family) -> Intersection {
    let ms = f.members();
    if !ms.is_empty() && span_family(f).expect("nonempty").dim() < 2 * f.m {
        return Intersection::Intersecting;
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if !ms[i].intersects_unchecked(&ms[j]) {
                return Intersection::Disjoint(ms[i].clone(), ms[j].clone());
            }
        }
    }
    Intersection::Intersecting
}

/// The sum X of all members.
pub fn span_family(f: &Family) -> Result<Subspace> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let rows: Vec<Vec<u32>> = f
        .iter()
        .flat_map(|s| s.rows().map(|r| r.to_vec()).collect::<Vec<_>>())
        .collect();
    span_of(&f.field, f.ambient, &rows)
}

/// Members containing `a`.
pub fn sub_family_through(f: &Family, a: &Subspace) -> Result<Family> {
    f.check_space(a)?;
    let members = f
        .iter()
        .filter(|s| s.contains_unchecked(a))
        .cloned()
        .collect();
    Ok(Family {
        field: f.field.clone(),
        ambient: f.ambient,
        m: f.m,
        members,
    })
}

/// Numbering of the points (1-subspaces) of a fixed subspace X, keyed by
/// their normalised representative vector.
pub struct PointIndex {
    field: Field,
    ambient: usize,
    index: HashMap<u64, u32>,
    points: Vec<Vec<u32>>,
}

/// Upper limit on the number of points an index will hold.
pub const MAX_POINTS: usize = 1 << 22;

impl PointIndex {
    pub fn new(x: &Subspace) -> Result<Self> {
        let q = x.field().q() as u64;
        let fits = (0..x.ambient()).try_fold(1u64, |acc, _| acc.checked_mul(q)).is_some();
        let count = gaussian(x.dim() as u32, 1, q)?;
        if !fits || count > BigInt::from(MAX_POINTS) {
            return Err(Error::DeskScale(format!(
                "{count} points in a subspace of GF({q})^{}",
                x.ambient()
            )));
        }
        let points = x.point_vectors();
        let mut pi = PointIndex {
            field: x.field().clone(),
            ambient: x.ambient(),
            index: HashMap::with_capacity(points.len()),
            points: Vec::new(),
        };
        for (i, v) in points.iter().enumerate() {
            let k = pi.key(v);
            pi.index.insert(k, i as u32);
        }
        pi.points = points;
        Ok(pi)
    }

    fn key(&self, v: &[u32]) -> u64 {
        let q = self.field.q() as u64;
        v.iter().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, id: u32) -> &[u32] {
        &self.points[id as usize]
    }

    /// Ids of the points of `s`, which must lie inside the indexed subspace.
    pub fn ids(&self, s: &Subspace) -> Vec<u32> {
        let mut ids: Vec<u32> = s
            .point_vectors()
            .iter()
            .map(|v| {
                *self
                    .index
                    .get(&self.key(v))
                    .expect("subspace is not inside the indexed space")
            })
            .collect();
        ids.sort_unstable();
        ids
    }

    /// `s + <point>`.
    pub fn adjoin(&self, s: &Subspace, id: u32) -> Subspace {
        let mut rows: Vec<Vec<u32>> = s.rows().map(|r| r.to_vec()).collect();
        rows.push(self.points[id as usize].clone());
        span_of(&self.field, self.ambient, &rows).expect("rows have ambient length")
    }
}

/// Point/member incidence of a family inside its span.
pub(crate) struct Incidence {
    pub(crate) index: PointIndex,
    pub(crate) member_points: Vec<Vec<u32>>,
    pub(crate) point_members: Vec<Vec<u32>>,
    words: usize,
}

impl Incidence {
    pub(crate) fn new(f: &Family, x: &Subspace) -> Result<Self> {
        let index = PointIndex::new(x)?;
        let member_points: Vec<Vec<u32>> = f.members.par_iter().map(|s| index.ids(s)).collect();
        let mut point_members = vec![Vec::new(); index.len()];
        for (i, pts) in member_points.iter().enumerate() {
            for &p in pts {
                point_members[p as usize].push(i as u32);
            }
        }
        Ok(Incidence {
            index,
            member_points,
            point_members,
            words: f.len().div_ceil(64),
        })
    }

    /// First member (by position) containing none of `points`.
    pub(crate) fn first_missed(&self, points: &[u32], n_members: usize) -> Option<usize> {
        let mut hit = vec![0u64; self.words];
        for &p in points {
            for &m in &self.point_members[p as usize] {
                hit[(m / 64) as usize] |= 1 << (m % 64);
            }
        }
        for (w, &bits) in hit.iter().enumerate() {
            if bits != u64::MAX {
                let i = w * 64 + (!bits).trailing_zeros() as usize;
                return (i < n_members).then_some(i);
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub tau: usize,
    /// The least `tau`-subspace meeting every member, except when no cover
    /// below the initial upper bound exists: then it is that bound's witness.
    pub witness: Subspace,
    pub nodes_explored: u64,
    /// Whether the family is intersecting; `None` when the pairwise check was
    /// skipped because it exceeded [`CoverOptions::pair_cap`].
    pub intersecting: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
    /// Give up after generating this many search nodes.
    pub budget: Option<u64>,
    /// Largest number of member pairs for the intersecting flag.
    pub pair_cap: u64,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            jobs: 1,
            budget: None,
            pair_cap: 5_000_000,
        }
    }
}

pub fn covering_number(f: &Family) -> Result<CoverResult> {
    covering_number_with(f, &CoverOptions::default())
}

/// Exact covering number by iterative deepening.
///
/// Level s holds the distinct s-subspaces reachable from 0 by repeatedly
/// adjoining a point of the first member the current subspace misses. Every
/// s-dimensional cover C is reached this way (always choose a point of
/// `C ∩ M`), so the first level containing a cover gives tau and its least
/// cover is the least tau-cover overall. Levels stop one short of the
/// initial bound: m if the first member meets all others, else dim X.
pub fn covering_number_with(f: &Family, opts: &CoverOptions) -> Result<CoverResult> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if f.m == 0 {
        return Err(Error::Precondition("members must be nonzero".into()));
    }
    let x = span_family(f)?;
    let inc = Incidence::new(f, &x)?;
    let n = f.len();

    let intersecting = if x.dim() < 2 * f.m {
        Some(true)
    } else if (n as u64).saturating_mul(n as u64 - 1) / 2 <= opts.pair_cap {
        Some((0..n).all(|i| inc.first_missed(&inc.member_points[i], n).is_none()))
    } else {
        None
    };
    let (ub, ub_witness) = if inc.first_missed(&inc.member_points[0], n).is_none() {
        (f.m, f.members[0].clone())
    } else {
        (x.dim(), x.clone())
    };

    let run = || search_levels(f, &inc, ub, opts.budget);
    let found = if opts.jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(run)
    } else {
        run()
    }?;
    let (tau, witness, nodes) = match found {
        (Some((s, w)), nodes) => (s, w, nodes),
        (None, nodes) => (ub, ub_witness, nodes),
    };
    Ok(CoverResult {
        tau,
        witness,
        nodes_explored: nodes,
        intersecting,
    })
}

type LevelOutcome = (Option<(usize, Subspace)>, u64);

fn search_levels(f: &Family, inc: &Incidence, ub: usize, budget: Option<u64>) -> Result<LevelOutcome> {
    let n = f.len();
    // (subspace, first member it misses)
    let mut level: Vec<(Subspace, usize)> = vec![(Subspace::zero(&f.field, f.ambient), 0)];
    let mut nodes = 1u64;
    for s in 1..ub {
        let mut children: Vec<Subspace> = level
            .par_iter()
            .flat_map_iter(|(t, missed)| {
                inc.member_points[*missed]
                    .iter()
                    .map(move |&p| inc.index.adjoin(t, p))
            })
            .collect();
        children.par_sort_unstable();
        children.dedup();
        nodes += children.len() as u64;
        if let Some(b) = budget {
            if nodes > b {
                return Err(Error::BudgetExhausted {
                    budget: b,
                    lower: s,
                    upper: ub,
                });
            }
        }
        let checked: Vec<(Subspace, Option<usize>)> = children
            .into_par_iter()
            .map(|t| {
                let missed = inc.first_missed(&inc.index.ids(&t), n);
                (t, missed)
            })
            .collect();
        // children are sorted, so the first cover is the least
        if let Some((t, _)) = checked.iter().find(|(_, m)| m.is_none()) {
            return Ok((Some((s, t.clone())), nodes));
        }
        level = checked.into_iter().map(|(t, m)| (t, m.unwrap())).collect();
    }
    Ok((None, nodes))
}

/// Brute-force covering number: tests every s-subspace of X for
/// s = 1, 2, ... with rank computations. Errors when the total number of
/// subspaces to test exceeds `cap`.
pub fn covering_number_oracle(f: &Family, cap: u64) -> Result<CoverResult> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let x = span_family(f)?;
    let first = &f.members[0];
    let (ub, ub_witness) = if f.iter().all(|s| s.intersects_unchecked(first)) {
        (f.m, first.clone())
    } else {
        (x.dim(), x.clone())
    };
    let q = f.field.q() as u64;
    let mut total = BigInt::from(0);
    for s in 1..ub {
        total += gaussian(x.dim() as u32, s as u32, q)?;
    }
    if total > BigInt::from(cap) {
        return Err(Error::DeskScale(format!(
            "oracle would test {total} subspaces (cap {cap})"
        )));
    }
    let mut nodes = 0u64;
    for s in 1..ub {
        let mut best: Option<Subspace> = None;
        for t in enumerate_subspaces(&x, s)? {
            nodes += 1;
            if f.iter().all(|m| m.intersects_unchecked(&t)) && best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
        if let Some(w) = best {
            return Ok(CoverResult {
                tau: s,
                witness: w,
                nodes_explored: nodes,
                intersecting: Some(is_intersecting(f).holds()),
            });
        }
    }
    Ok(CoverResult {
        tau: ub,
        witness: ub_witness,
        nodes_explored: nodes,
        intersecting: Some(is_intersecting(f).holds()),
    })
}

/// Result of [`popular_extension`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub t: Subspace,
    /// `|F_T|`
    pub through_t: usize,
    /// `|F_S|`
    pub through_s: usize,
}

/// Given S missing some member M (the first in canonical order), returns the
/// (dim S + 1)-subspace `T = S + p`, p a point of M, contained in the most
/// members, least T on ties. When every member through S meets M (always,
/// for an intersecting family) each of them contains one of the [m,1]
/// candidates, so `|F_T| * [m,1] >= |F_S|`; this is asserted.
pub fn popular_extension(f: &Family, s: &Subspace) -> Result<Extension> {
    f.check_space(s)?;
    let missed = f
        .iter()
        .find(|m| !m.intersects_unchecked(s))
        .ok_or(Error::HypothesisFails)?;
    let through_s: Vec<&Subspace> = f.iter().filter(|a| a.contains_unchecked(s)).collect();
    let mut best: Option<(usize, Subspace)> = None;
    for p in missed.point_vectors() {
        let mut rows: Vec<Vec<u32>> = s.rows().map(|r| r.to_vec()).collect();
        rows.push(p);
        let t = span_of(&f.field, f.ambient, &rows)?;
        let count = through_s.iter().filter(|a| a.contains_unchecked(&t)).count();
        let better = match &best {
            None => true,
            Some((c, b)) => count > *c || (count == *c && t < *b),
        };
        if better {
            best = Some((count, t));
        }
    }
    let (through_t, t) = best.expect("a nonzero member has points");
    if f.m > 0 && is_intersecting_through(&through_s, missed) {
        let lines = gaussian(f.m as u32, 1, f.field.q() as u64)?;
        assert!(
            lines * BigInt::from(through_t) >= BigInt::from(through_s.len()),
            "pigeonhole bound violated"
        );
    }
    Ok(Extension {
        t,
        through_t,
        through_s: through_s.len(),
    })
}

fn is_intersecting_through(through_s: &[&Subspace], missed: &Subspace) -> bool {
    through_s.iter().all(|a| a.intersects_unchecked(missed))
}

//! Exhaustive search for the largest intersecting family of m-subspaces of
//! GF(q)^n whose covering number is at least `min_tau`.
//!
//! Intersecting families are the cliques of the graph on m-subspaces with
//! edges between members that meet. The search is a colour-bounded maximum
//! clique branch and bound that keeps every optimum. Since adding members
//! never lowers the covering number, optimal families are maximal cliques,
//! so the covering constraint is only tested at leaves. For `min_tau >= 2` a
//! branch dies as soon as some point lies in every current member and every
//! remaining candidate.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{covering_number, Family, PointIndex};
use crate::gf::field_make;
use crate::qcount::gaussian;
use crate::singular::structure_check;
use crate::subspace::{enumerate_subspaces, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub jobs: usize,
    /// Largest number of m-subspaces accepted without `force`.
    pub gate: usize,
    pub force: bool,
    pub node_budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 1,
            gate: 200,
            force: false,
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub q: u64,
    pub n: usize,
    pub m: usize,
    pub min_tau: usize,
    /// `None` for maximisation, the target size for the decision form.
    pub target: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SearchCertificate {
    pub params: SearchParams,
    /// Size of the best family found; 0 when none was found.
    pub size: usize,
    /// Least optimum (maximisation) or the family found (decision form).
    pub witness: Option<Family>,
    /// True when the search space was exhausted, so `size` is the maximum
    /// (or, in decision form, the answer is final).
    pub optimal: bool,
    pub nodes: u64,
    pub wall_time: f64,
    /// Every optimum, in canonical order. Empty in decision form.
    pub optima: Vec<Family>,
    /// When optimal and the maximum equals `[2m-1, m]`: whether every
    /// optimum is the full set of m-subspaces of its span.
    pub all_optima_structured: Option<bool>,
}

struct Graph {
    verts: Vec<Subspace>,
    adj: Vec<Vec<u64>>,
    pts: Vec<Vec<u64>>,
    words: usize,
    full_points: Vec<u64>,
}

fn bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn first(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn members(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &bits)| {
        let mut b = bits;
        std::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let t = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(w * 64 + t)
        })
    })
}

impl Graph {
    /// Vertices ordered by degree (descending), ties in canonical order.
    fn build(q: u64, n: usize, m: usize) -> Result<Graph> {
        let field = field_make(q)?;
        let space = Subspace::full(&field, n);
        let canonical: Vec<Subspace> = enumerate_subspaces(&space, m)?.collect();
        let index = PointIndex::new(&space)?;
        let pwords = index.len().div_ceil(64);
        let point_sets: Vec<Vec<u64>> = canonical
            .iter()
            .map(|s| {
                let mut set = vec![0; pwords];
                for p in index.ids(s) {
                    bit(&mut set, p as usize);
                }
                set
            })
            .collect();
        let nv = canonical.len();
        let meets = |i: usize, j: usize| !is_empty(&and(&point_sets[i], &point_sets[j]));
        let degree: Vec<usize> = (0..nv)
            .into_par_iter()
            .map(|i| (0..nv).filter(|&j| j != i && meets(i, j)).count())
            .collect();
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
        let words = nv.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; nv];
        for a in 0..nv {
            for b in 0..nv {
                if a != b && meets(order[a], order[b]) {
                    bit(&mut adj[a], b);
                }
            }
        }
        let mut full_points = vec![0u64; pwords];
        for p in 0..index.len() {
            bit(&mut full_points, p);
        }
        Ok(Graph {
            verts: order.iter().map(|&i| canonical[i].clone()).collect(),
            pts: order.iter().map(|&i| point_sets[i].clone()).collect(),
            adj,
            words,
            full_points,
        })
    }

    /// Greedy sequential colouring of `p`; returns the vertices sorted by
    /// colour with the colour number of each (1-based).
    fn colour(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut left = p.to_vec();
        let (mut order, mut colours) = (Vec::new(), Vec::new());
        let mut c = 0;
        while !is_empty(&left) {
            c += 1;
            let mut avail = left.clone();
            while let Some(v) = first(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                for (a, b) in avail.iter_mut().zip(&self.adj[v]) {
                    *a &= !b;
                }
                left[v / 64] &= !(1 << (v % 64));
                order.push(v);
                colours.push(c);
            }
        }
        (order, colours)
    }
}

struct Search<'a> {
    g: &'a Graph,
    q: u64,
    n: usize,
    m: usize,
    min_tau: usize,
    /// Prune branches whose bound falls below this.
    best: AtomicUsize,
    nodes: AtomicU64,
    budget: Option<u64>,
    stop: AtomicBool,
    exhausted_budget: AtomicBool,
    decision: bool,
}

impl Search<'_> {
    fn valid(&self, c: &[usize], common: &[u64]) -> bool {
        if self.min_tau <= 1 {
            return true;
        }
        if !is_empty(common) {
            return false;
        }
        if self.min_tau == 2 {
            return true;
        }
        let field = field_make(self.q).expect("validated");
        let fam = Family::new(
            &field,
            self.n,
            self.m,
            c.iter().map(|&v| self.g.verts[v].clone()).collect(),
        )
        .expect("members are m-subspaces");
        covering_number(&fam).expect("nonempty").tau >= self.min_tau
    }

    fn expand(&self, c: &mut Vec<usize>, mut p: Vec<u64>, common: Vec<u64>, out: &mut Vec<Vec<usize>>) {
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| nodes > b) {
            self.exhausted_budget.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return;
        }
        if is_empty(&p) {
            if self.valid(c, &common) && c.len() >= self.best.load(Ordering::Relaxed) {
                if self.decision {
                    self.stop.store(true, Ordering::Relaxed);
                } else {
                    self.best.fetch_max(c.len(), Ordering::Relaxed);
                }
                out.push(c.clone());
            }
            return;
        }
        if self.min_tau >= 2 {
            let mut shared = common.clone();
            for v in members(&p) {
                shared = and(&shared, &self.g.pts[v]);
            }
            if !is_empty(&shared) {
                return;
            }
        }
        let (order, colours) = self.g.colour(&p);
        for i in (0..order.len()).rev() {
            if c.len() + colours[i] < self.best.load(Ordering::Relaxed) {
                return;
            }
            let v = order[i];
            c.push(v);
            self.expand(c, and(&p, &self.g.adj[v]), and(&common, &self.g.pts[v]), out);
            c.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }

    fn run(&self) -> Vec<Vec<usize>> {
        let all: Vec<u64> = {
            let mut s = vec![0u64; self.g.words];
            for v in 0..self.g.verts.len() {
                bit(&mut s, v);
            }
            s
        };
        let (order, colours) = self.g.colour(&all);
        // branch i may use only the vertices coloured before it
        (0..order.len())
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                if 1 + colours[i] < self.best.load(Ordering::Relaxed) {
                    return out;
                }
                let v = order[i];
                let mut p = vec![0u64; self.g.words];
                for &u in &order[..i] {
                    bit(&mut p, u);
                }
                let p = and(&p, &self.g.adj[v]);
                self.expand(&mut vec![v], p, and(&self.g.full_points, &self.g.pts[v]), &mut out);
                out
            })
            .flatten()
            .collect()
    }
}

fn check_gate(q: u64, n: usize, m: usize, min_tau: usize, opts: &SearchOptions) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::ParameterRange(format!("m = {m} outside 1..={n}")));
    }
    if min_tau > m {
        return Err(Error::ParameterRange(format!("min_tau = {min_tau} > m = {m}")));
    }
    let count = gaussian(n as u32, m as u32, q)?;
    if !opts.force && count > BigInt::from(opts.gate) {
        return Err(Error::DeskScale(format!(
            "{count} vertices exceed the gate of {}",
            opts.gate
        )));
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(e.to_string()))?
        .install(f))
}

fn to_family(g: &Graph, q: u64, n: usize, m: usize, clique: &[usize]) -> Family {
    let field = field_make(q).expect("validated");
    Family::new(&field, n, m, clique.iter().map(|&v| g.verts[v].clone()).collect()).expect("m-subspaces")
}

/// Largest intersecting families of m-subspaces of GF(q)^n with covering
/// number at least `min_tau`, with all optima and the least one as witness.
pub fn max_family(q: u64, n: usize, m: usize, min_tau: usize, opts: &SearchOptions) -> Result<SearchCertificate> {
    check_gate(q, n, m, min_tau, opts)?;
    let start = Instant::now();
    let g = Graph::build(q, n, m)?;
    let search = Search {
        g: &g,
        q,
        n,
        m,
        min_tau,
        best: AtomicUsize::new(1),
        nodes: AtomicU64::new(0),
        budget: opts.node_budget,
        stop: AtomicBool::new(false),
        exhausted_budget: AtomicBool::new(false),
        decision: false,
    };
    let found = with_pool(opts.jobs, || search.run())?;
    let size = found.iter().map(Vec::len).max().unwrap_or(0);
    let mut optima: Vec<Family> = found
        .iter()
        .filter(|c| c.len() == size)
        .map(|c| to_family(&g, q, n, m, c))
        .collect();
    optima.sort_by(|a, b| a.members().cmp(b.members()));
    optima.dedup();
    let optimal = !search.exhausted_budget.load(Ordering::Relaxed);
    let all_optima_structured = if optimal
        && size > 0
        && BigInt::from(size) == gaussian(2 * m as u32 - 1, m as u32, q)?
    {
        let mut ok = true;
        for f in &optima {
            ok &= structure_check(f, None)?;
        }
        Some(ok)
    } else {
        None
    };
    Ok(SearchCertificate {
        params: SearchParams {
            q,
            n,
            m,
            min_tau,
            target: None,
        },
        size,
        witness: optima.first().cloned(),
        optimal,
        nodes: search.nodes.load(Ordering::Relaxed),
        wall_time: start.elapsed().as_secs_f64(),
        optima,
        all_optima_structured,
    })
}

/// Decision form: finds some family of at least `target` members with
/// covering number at least `min_tau`, or proves that none exists
/// (`witness = None`, `optimal = true`).
pub fn exists_family(
    q: u64,
    n: usize,
    m: usize,
    min_tau: usize,
    target: usize,
    opts: &SearchOptions,
) -> Result<SearchCertificate> {
    check_gate(q, n, m, min_tau, opts)?;
    let start = Instant::now();
    let g = Graph::build(q, n, m)?;
    let search = Search {
        g: &g,
        q,
        n,
        m,
        min_tau,
        best: AtomicUsize::new(target.max(1)),
        nodes: AtomicU64::new(0),
        budget: opts.node_budget,
        stop: AtomicBool::new(false),
        exhausted_budget: AtomicBool::new(false),
        decision: true,
    };
    let found = with_pool(opts.jobs, || search.run())?;
    // least witness among those found, for reproducibility at jobs = 1
    let witness = found
        .iter()
        .map(|c| to_family(&g, q, n, m, c))
        .min_by(|a, b| a.members().cmp(b.members()));
    let optimal = witness.is_some() || !search.exhausted_budget.load(Ordering::Relaxed);
    Ok(SearchCertificate {
        params: SearchParams {
            q,
            n,
            m,
            min_tau,
            target: Some(target),
        },
        size: witness.as_ref().map_or(0, Family::len),
        witness,
        optimal,
        nodes: search.nodes.load(Ordering::Relaxed),
        wall_time: start.elapsed().as_secs_f64(),
        optima: Vec::new(),
        all_optima_structured: None,
    })
}

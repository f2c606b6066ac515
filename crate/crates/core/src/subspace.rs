//! Subspaces of GF(q)^N in canonical reduced row echelon form.
//!
//! Every [`Subspace`] stores the unique RREF basis of its row space, so two
//! subspaces are equal exactly when their stored data is equal, and sets of
//! subspaces can be hashed and sorted without any algebra. The ordering is
//! `(ambient, dim, basis entries)` lexicographically; "least" and "canonical
//! order" throughout the crate refer to it.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::matrix::{rref_in_place, Matrix};

#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    dim: usize,
    basis: Vec<u32>,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q()
            && self.ambient == other.ambient
            && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.q(), self.ambient, self.dim)
            .cmp(&(other.field.q(), other.ambient, other.dim))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(q={}, N={}, <", self.field.q(), self.ambient)?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        f.write_str(">)")
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            dim: 0,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Self::coordinate(field, ambient, &(0..ambient).collect::<Vec<_>>())
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(field: &Field, ambient: usize, indices: &[usize]) -> Self {
        let vectors: Vec<Vec<u32>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        span_of(field, ambient, &vectors).expect("standard vectors are well formed")
    }

    /// Builds from a buffer already reduced by `rref_in_place`.
    fn from_reduced(field: &Field, ambient: usize, mut basis: Vec<u32>, rank: usize, pivots: Vec<usize>) -> Self {
        basis.truncate(rank * ambient);
        Subspace {
            field: field.clone(),
            ambient,
            dim: rank,
            basis,
            pivots,
        }
    }

    fn from_buffer(field: &Field, ambient: usize, mut buf: Vec<u32>) -> Self {
        let rows = buf.len().checked_div(ambient).unwrap_or(0);
        let (rank, pivots) = rref_in_place(field, &mut buf, rows, ambient);
        Self::from_reduced(field, ambient, buf, rank, pivots)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Matrix {
        Matrix::new(self.dim, self.ambient, self.basis.clone()).expect("shape is consistent")
    }

    pub fn basis_entries(&self) -> &[u32] {
        &self.basis
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.basis[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.dim).map(move |i| self.row(i))
    }

    fn check_same_space(&self, other: &Subspace) -> Result<()> {
        if self.field.q() != other.field.q() || self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "GF({})^{} vs GF({})^{}",
                self.field.q(),
                self.ambient,
                other.field.q(),
                other.ambient
            )));
        }
        Ok(())
    }

    /// Subtracts basis multiples from `v`; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = &*self.field;
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            let row = &self.basis[i * self.ambient..(i + 1) * self.ambient];
            for j in pc..self.ambient {
                if row[j] != 0 {
                    v[j] = f.add(v[j], f.mul(nc, row[j]));
                }
            }
        }
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// `B ⊆ self`.
    pub fn contains(&self, b: &Subspace) -> Result<bool> {
        self.check_same_space(b)?;
        Ok(self.contains_unchecked(b))
    }

    pub(crate) fn contains_unchecked(&self, b: &Subspace) -> bool {
        if b.dim > self.dim {
            return false;
        }
        let mut w = vec![0; self.ambient];
        b.rows().all(|r| {
            w.copy_from_slice(r);
            self.reduce(&mut w);
            w.iter().all(|&x| x == 0)
        })
    }

    /// Sum `self + other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_space(other)?;
        let mut buf = self.basis.clone();
        buf.extend_from_slice(&other.basis);
        Ok(Subspace::from_buffer(&self.field, self.ambient, buf))
    }

    /// `dim(self + other)` without materialising the sum.
    fn join_dim_unchecked(&self, other: &Subspace) -> usize {
        self.dim + self.rank_modulo(other)
    }

    /// Rank of `other`'s basis after reduction modulo `self`.
    fn rank_modulo(&self, other: &Subspace) -> usize {
        if other.dim == 0 {
            return 0;
        }
        let mut buf = other.basis.clone();
        for r in 0..other.dim {
            self.reduce(&mut buf[r * self.ambient..(r + 1) * self.ambient]);
        }
        rref_in_place(&self.field, &mut buf, other.dim, self.ambient).0
    }

    /// True when `dim(self ∩ other) >= 1`.
    pub fn intersects(&self, other: &Subspace) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.intersects_unchecked(other))
    }

    pub(crate) fn intersects_unchecked(&self, other: &Subspace) -> bool {
        let (small, big) = if self.dim <= other.dim { (self, other) } else { (other, self) };
        big.rank_modulo(small) < small.dim
    }

    /// Intersection `self ∩ other`, computed from the kernel of the stacked
    /// coefficient system. The modular law is asserted on every call.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_space(other)?;
        let (a, b, n) = (self.dim, other.dim, self.ambient);
        let f = &*self.field;
        // columns are the basis vectors of self followed by those of other
        let mut system = Matrix::zeros(n, a + b).into_entries();
        for (j, row) in self.rows().chain(other.rows()).enumerate() {
            for i in 0..n {
                system[i * (a + b) + j] = row[i];
            }
        }
        let kernel = Matrix::new(n, a + b, system)?.kernel(f)?;
        let mut buf = vec![0u32; kernel.rows() * n];
        for k in 0..kernel.rows() {
            let coeffs = kernel.row(k);
            let out = &mut buf[k * n..(k + 1) * n];
            for (j, row) in self.rows().enumerate() {
                let c = coeffs[j];
                if c != 0 {
                    for i in 0..n {
                        out[i] = f.add(out[i], f.mul(c, row[i]));
                    }
                }
            }
        }
        let meet = Subspace::from_buffer(&self.field, n, buf);
        assert_eq!(
            meet.dim + self.join_dim_unchecked(other),
            a + b,
            "modular law violated"
        );
        Ok(meet)
    }

    /// All q^dim vectors of the subspace, in coefficient order.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        let q = self.field.q();
        let f = &*self.field;
        let mut out = Vec::new();
        let mut coeffs = vec![0u32; self.dim];
        loop {
            let mut v = vec![0u32; self.ambient];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (j, &x) in self.row(i).iter().enumerate() {
                        v[j] = f.add(v[j], f.mul(c, x));
                    }
                }
            }
            out.push(v);
            if !odometer(&mut coeffs, q) {
                break;
            }
        }
        out
    }

    /// Normalised representatives (leading entry 1) of all 1-subspaces.
    ///
    /// Combinations whose first nonzero coefficient is 1 are already
    /// normalised because the basis is in RREF.
    pub fn point_vectors(&self) -> Vec<Vec<u32>> {
        let q = self.field.q();
        let f = &*self.field;
        let mut out = Vec::new();
        for lead in 0..self.dim {
            let mut tail = vec![0u32; self.dim - lead - 1];
            loop {
                let mut v = self.row(lead).to_vec();
                for (t, &c) in tail.iter().enumerate() {
                    if c != 0 {
                        for (j, &x) in self.row(lead + 1 + t).iter().enumerate() {
                            v[j] = f.add(v[j], f.mul(c, x));
                        }
                    }
                }
                out.push(v);
                if !odometer(&mut tail, q) {
                    break;
                }
            }
        }
        out
    }
}

/// Advances a base-q counter with the last digit fastest. Returns false on wrap-around.
pub(crate) fn odometer(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Canonical span of a list of vectors.
pub fn span_of(field: &Field, ambient: usize, vectors: &[Vec<u32>]) -> Result<Subspace> {
    let mut buf = Vec::with_capacity(vectors.len() * ambient);
    for v in vectors {
        if v.len() != ambient {
            return Err(Error::LengthMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        if let Some(&code) = v.iter().find(|&&x| x >= field.q()) {
            return Err(Error::ElementOutOfRange { code, q: field.q() });
        }
        buf.extend_from_slice(v);
    }
    Ok(Subspace::from_buffer(field, ambient, buf))
}

/// Basis vectors of `x` (in stored order) that greedily extend `s`, up to `count` of them.
fn complement_vectors(s: &Subspace, x: &Subspace, count: usize) -> Vec<Vec<u32>> {
    let mut current = s.clone();
    let mut out = Vec::with_capacity(count);
    for row in x.rows() {
        if out.len() == count {
            break;
        }
        if !current.contains_vector(row) {
            out.push(row.to_vec());
            let mut buf = current.basis.clone();
            buf.extend_from_slice(row);
            current = Subspace::from_buffer(&s.field, s.ambient, buf);
        }
    }
    debug_assert_eq!(out.len(), count);
    out
}

/// A `d`-subspace `T` with `S ⊆ T ⊆ X`, obtained by adjoining the first basis
/// vectors of `X` that are independent of the current span.
pub fn extend_within(s: &Subspace, x: &Subspace, d: usize) -> Result<Subspace> {
    s.check_same_space(x)?;
    if !x.contains_unchecked(s) {
        return Err(Error::Precondition("S is not contained in X".into()));
    }
    if d < s.dim || d > x.dim {
        return Err(Error::DimensionOutOfRange {
            requested: d,
            max: x.dim,
        });
    }
    let extra = complement_vectors(s, x, d - s.dim);
    let mut buf = s.basis.clone();
    for v in &extra {
        buf.extend_from_slice(v);
    }
    Ok(Subspace::from_buffer(&s.field, s.ambient, buf))
}

/// Given `A`, `B` with `c = dim(A ∩ B)` and `0 <= d <= dim A - dim B`, builds
/// `S ⊆ A + B` of dimension `dim B - c + d` with `dim(S ∩ A) = d` and
/// `S ∩ B = 0`.
///
/// With `C = A ∩ B`, pick `α_1..α_{b-c+d}` in `A` and `β_1..β_{b-c}` in `B`
/// independent modulo `C`; then `S = <α_i + β_i (i <= b-c), α_{b-c+1}..α_{b-c+d}>`.
/// When `B ⊆ A` this degenerates to `d` vectors of `A` independent modulo `B`.
/// All postconditions are re-checked before returning.
pub fn avoiding_subspace(a: &Subspace, b: &Subspace, d: usize) -> Result<Subspace> {
    a.check_same_space(b)?;
    if b.dim > a.dim || d > a.dim - b.dim {
        return Err(Error::DimensionOutOfRange {
            requested: d,
            max: a.dim.saturating_sub(b.dim),
        });
    }
    let common = a.meet(b)?;
    let c = common.dim;
    let free = b.dim - c;
    let rows: Vec<Vec<u32>> = if free == 0 {
        complement_vectors(&common, a, d)
    } else {
        let f = &*a.field;
        let alphas = complement_vectors(&common, a, free + d);
        let betas = complement_vectors(&common, b, free);
        let mut rows: Vec<Vec<u32>> = alphas[..free]
            .iter()
            .zip(&betas)
            .map(|(al, be)| al.iter().zip(be).map(|(&x, &y)| f.add(x, y)).collect())
            .collect();
        rows.extend(alphas[free..].iter().cloned());
        rows
    };
    let s = span_of(&a.field, a.ambient, &rows)?;

    if s.dim != free + d {
        return Err(Error::Postcondition(format!("dim S = {}, expected {}", s.dim, free + d)));
    }
    let in_a = s.meet(a)?.dim;
    if in_a != d {
        return Err(Error::Postcondition(format!("dim(S ∩ A) = {in_a}, expected {d}")));
    }
    if s.intersects_unchecked(b) {
        return Err(Error::Postcondition("S meets B".into()));
    }
    if !a.join(b)?.contains_unchecked(&s) {
        return Err(Error::Postcondition("S is not inside A + B".into()));
    }
    Ok(s)
}

/// Iterator over all `d`-subspaces of a fixed subspace `X`.
///
/// Subspaces are generated from RREF coefficient matrices relative to the
/// canonical basis of `X`: pivot column sets in colexicographic order, and
/// for each pivot set the free entries (listed row-major) run as a base-q
/// counter with the last entry fastest. Each result is mapped to ambient
/// coordinates and canonicalised.
pub struct SubspaceIter {
    x: Subspace,
    d: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    done: bool,
}

impl SubspaceIter {
    fn new(x: &Subspace, d: usize) -> Self {
        let mut it = SubspaceIter {
            x: x.clone(),
            d,
            pivots: (0..d).collect(),
            free: Vec::new(),
            counter: Vec::new(),
            done: false,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        let k = self.x.dim;
        self.free.clear();
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in p + 1..k {
                if !self.pivots.contains(&j) {
                    self.free.push((i, j));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let k = self.x.dim;
        let d = self.d;
        for i in 0..d {
            let limit = if i + 1 < d { self.pivots[i + 1] } else { k };
            if self.pivots[i] + 1 < limit {
                self.pivots[i] += 1;
                for j in 0..i {
                    self.pivots[j] = j;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let (k, n, d) = (self.x.dim, self.x.ambient, self.d);
        let f = &*self.x.field;
        let mut coeffs = vec![0u32; d * k];
        for (i, &p) in self.pivots.iter().enumerate() {
            coeffs[i * k + p] = 1;
        }
        for (&(i, j), &c) in self.free.iter().zip(&self.counter) {
            coeffs[i * k + j] = c;
        }
        let mut buf = vec![0u32; d * n];
        for i in 0..d {
            for t in 0..k {
                let c = coeffs[i * k + t];
                if c == 0 {
                    continue;
                }
                let row = self.x.row(t);
                for col in 0..n {
                    buf[i * n + col] = f.add(buf[i * n + col], f.mul(c, row[col]));
                }
            }
        }
        let item = Subspace::from_buffer(&self.x.field, n, buf);

        if !odometer(&mut self.counter, f.q()) {
            if self.next_pivots() {
                self.reset_free();
            } else {
                self.done = true;
            }
        }
        Some(item)
    }
}

/// All `d`-subspaces of `x`, each exactly once.
pub fn enumerate_subspaces(x: &Subspace, d: usize) -> Result<SubspaceIter> {
    if d > x.dim {
        return Err(Error::DimensionOutOfRange {
            requested: d,
            max: x.dim,
        });
    }
    Ok(SubspaceIter::new(x, d))
}

/// All 1-subspaces of `x`.
pub fn enumerate_points(x: &Subspace) -> SubspaceIter {
    let mut it = SubspaceIter::new(x, 1);
    if x.dim == 0 {
        it.done = true;
    }
    it
}

/// A uniformly random vector of GF(q)^n.
pub fn random_vector<R: Rng + ?Sized>(field: &FieldSpec, n: usize, rng: &mut R) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..field.q())).collect()
}

/// A random ordered basis of the whole space GF(q)^n (rows of an invertible matrix).
pub fn random_basis<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut span = Subspace::zero(field, n);
    while rows.len() < n {
        let v = random_vector(field, n, rng);
        if !span.contains_vector(&v) {
            rows.push(v);
            span = span_of(field, n, &rows).expect("well formed");
        }
    }
    rows
}

/// Random `A`, `B` in GF(q)^n with `dim A = a`, `dim B = b`, `dim(A ∩ B) = c`.
///
/// Takes a random basis `v_1..v_n` and sets `A = <v_1..v_a>`,
/// `B = <v_1..v_c, v_{a+1}..v_{a+b-c}>`.
pub fn random_pair_with_meet<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    a: usize,
    b: usize,
    c: usize,
    rng: &mut R,
) -> Result<(Subspace, Subspace)> {
    if c > a.min(b) || a + b - c > n {
        return Err(Error::Precondition(format!(
            "no pair with dims {a}, {b} meeting in {c} inside dimension {n}"
        )));
    }
    let basis = random_basis(field, n, rng);
    let sa = span_of(field, n, &basis[..a])?;
    let mut bvecs: Vec<Vec<u32>> = basis[..c].to_vec();
    bvecs.extend(basis[a..a + b - c].iter().cloned());
    let sb = span_of(field, n, &bvecs)?;
    Ok((sa, sb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    fn e(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn span_examples() {
        let f = field_make(2).unwrap();
        assert_eq!(span_of(&f, 3, &[]).unwrap().dim(), 0);
        let std: Vec<Vec<u32>> = (0..4).map(|i| e(4, i)).collect();
        assert_eq!(span_of(&f, 4, &std).unwrap(), Subspace::full(&f, 4));
        let s = span_of(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(matches!(
            span_of(&f, 3, &[vec![1, 0]]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn join_examples() {
        let f = field_make(2).unwrap();
        let a = Subspace::coordinate(&f, 4, &[0]);
        let b = Subspace::coordinate(&f, 4, &[1]);
        let z = Subspace::zero(&f, 4);
        assert_eq!(a.join(&z).unwrap(), a);
        assert_eq!(a.join(&a).unwrap(), a);
        assert_eq!(a.join(&b).unwrap(), Subspace::coordinate(&f, 4, &[0, 1]));
        let other = Subspace::zero(&field_make(3).unwrap(), 4);
        assert!(matches!(a.join(&other), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn meet_examples() {
        let f = field_make(2).unwrap();
        let a = span_of(&f, 3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(a.meet(&Subspace::full(&f, 3)).unwrap(), a);
        assert!(a.meet(&Subspace::zero(&f, 3)).unwrap().is_zero());
        let p1 = Subspace::coordinate(&f, 3, &[0, 1]);
        let p2 = span_of(&f, 3, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let m = p1.meet(&p2).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m, span_of(&f, 3, &[vec![1, 1, 0]]).unwrap());
    }

    #[test]
    fn contains_examples() {
        let f = field_make(2).unwrap();
        let a = Subspace::coordinate(&f, 3, &[0, 1]);
        assert!(a.contains(&Subspace::zero(&f, 3)).unwrap());
        assert!(a.contains(&a).unwrap());
        assert!(!a.contains(&Subspace::coordinate(&f, 3, &[2])).unwrap());
    }

    #[test]
    fn enumeration_examples() {
        let f2 = field_make(2).unwrap();
        let f3 = field_make(3).unwrap();
        assert_eq!(enumerate_subspaces(&Subspace::full(&f2, 3), 0).unwrap().count(), 1);
        assert_eq!(enumerate_subspaces(&Subspace::full(&f2, 3), 2).unwrap().count(), 7);
        assert_eq!(enumerate_subspaces(&Subspace::full(&f3, 4), 2).unwrap().count(), 130);
        assert!(enumerate_subspaces(&Subspace::full(&f3, 2), 3).is_err());
        assert_eq!(enumerate_points(&Subspace::coordinate(&f3, 4, &[2])).count(), 1);
        assert_eq!(enumerate_points(&Subspace::full(&f2, 4)).count(), 15);
        assert_eq!(enumerate_points(&Subspace::full(&f3, 3)).count(), 13);
        assert_eq!(enumerate_points(&Subspace::zero(&f3, 3)).count(), 0);
    }

    #[test]
    fn enumeration_order_is_colex_pivots() {
        let f = field_make(2).unwrap();
        let planes: Vec<Subspace> = enumerate_subspaces(&Subspace::full(&f, 3), 2).unwrap().collect();
        // pivot sets {0,1}, {0,2}, {1,2}; free entries 2, 1, 0
        let pivots: Vec<Vec<usize>> = planes.iter().map(|p| p.pivots().to_vec()).collect();
        assert_eq!(
            pivots,
            vec![
                vec![0, 1],
                vec![0, 1],
                vec![0, 1],
                vec![0, 1],
                vec![0, 2],
                vec![0, 2],
                vec![1, 2]
            ]
        );
        assert_eq!(planes[0], Subspace::coordinate(&f, 3, &[0, 1]));
    }

    #[test]
    fn enumeration_inside_a_proper_subspace() {
        let f = field_make(3).unwrap();
        let x = span_of(&f, 5, &[vec![1, 2, 0, 1, 0], vec![0, 1, 1, 0, 2], vec![2, 0, 0, 1, 1]]).unwrap();
        let planes: HashSet<Subspace> = enumerate_subspaces(&x, 2).unwrap().collect();
        assert_eq!(planes.len(), 13);
        assert!(planes.iter().all(|p| x.contains(p).unwrap() && p.dim() == 2));
    }

    #[test]
    fn extend_within_examples() {
        let f = field_make(2).unwrap();
        let s = Subspace::coordinate(&f, 3, &[0]);
        let x = Subspace::full(&f, 3);
        assert_eq!(extend_within(&s, &x, 1).unwrap(), s);
        assert_eq!(extend_within(&s, &x, 3).unwrap(), x);
        assert_eq!(extend_within(&s, &x, 2).unwrap(), Subspace::coordinate(&f, 3, &[0, 1]));
        assert!(extend_within(&x, &s, 3).is_err());
        assert!(extend_within(&s, &x, 0).is_err());
    }

    #[test]
    fn avoiding_subspace_examples() {
        let f = field_make(2).unwrap();
        let a = Subspace::coordinate(&f, 4, &[0, 1]);
        let b = Subspace::coordinate(&f, 4, &[0]);
        assert!(avoiding_subspace(&a, &b, 0).unwrap().is_zero());

        let a = Subspace::coordinate(&f, 2, &[0]);
        let b = Subspace::coordinate(&f, 2, &[1]);
        let s = avoiding_subspace(&a, &b, 0).unwrap();
        assert_eq!(s, span_of(&f, 2, &[vec![1, 1]]).unwrap());

        let a = Subspace::coordinate(&f, 4, &[0, 1, 2]);
        let b = Subspace::coordinate(&f, 4, &[2, 3]);
        let s = avoiding_subspace(&a, &b, 1).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.meet(&a).unwrap().dim(), 1);
        assert!(s.meet(&b).unwrap().is_zero());
        assert!(a.join(&b).unwrap().contains(&s).unwrap());

        assert!(matches!(
            avoiding_subspace(&b, &a, 0),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn modular_law_and_enumeration_counts() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4, 5] {
            let f = field_make(q).unwrap();
            for _ in 0..200 {
                let n = rng.gen_range(1..=6);
                let da = rng.gen_range(0..=n);
                let db = rng.gen_range(0..=n);
                let a = span_of(&f, n, &(0..da).map(|_| random_vector(&f, n, &mut rng)).collect::<Vec<_>>()).unwrap();
                let b = span_of(&f, n, &(0..db).map(|_| random_vector(&f, n, &mut rng)).collect::<Vec<_>>()).unwrap();
                let m = a.meet(&b).unwrap();
                let j = a.join(&b).unwrap();
                assert_eq!(m.dim() + j.dim(), a.dim() + b.dim());
                assert!(a.contains(&m).unwrap() && b.contains(&m).unwrap());
                assert_eq!(a.intersects(&b).unwrap(), m.dim() > 0);
            }
        }
    }

    #[test]
    fn point_vectors_match_enumerated_points() {
        let f = field_make(3).unwrap();
        let x = span_of(&f, 4, &[vec![1, 0, 2, 1], vec![0, 1, 1, 1], vec![0, 0, 0, 1]]).unwrap();
        let fast: HashSet<Subspace> = x.point_vectors().into_iter().map(|v| span_of(&f, 4, &[v]).unwrap()).collect();
        let slow: HashSet<Subspace> = enumerate_points(&x).collect();
        assert_eq!(fast.len(), 13);
        assert_eq!(fast, slow);
        for v in x.point_vectors() {
            let lead = v.iter().find(|&&c| c != 0).copied();
            assert_eq!(lead, Some(1));
            assert_eq!(span_of(&f, 4, std::slice::from_ref(&v)).unwrap().row(0), v.as_slice());
        }
    }

    proptest! {
        #[test]
        fn span_is_canonical_under_shuffle_and_scaling(
            q in prop::sample::select(vec![2u64, 3, 4, 5]),
            seed in any::<u64>(),
        ) {
            let f = field_make(q).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=6);
            let d = rng.gen_range(0..=n);
            let s = span_of(&f, n, &(0..d).map(|_| random_vector(&f, n, &mut rng)).collect::<Vec<_>>()).unwrap();
            let mut rows: Vec<Vec<u32>> = s.rows().map(|r| {
                let c = rng.gen_range(1..q as u32);
                r.iter().map(|&x| f.mul(c, x)).collect()
            }).collect();
            use rand::seq::SliceRandom;
            rows.shuffle(&mut rng);
            // add a random combination of the others to the first row
            if rows.len() > 1 {
                let c = rng.gen_range(0..q as u32);
                let other = rows[1].clone();
                for (x, y) in rows[0].iter_mut().zip(other) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            prop_assert_eq!(span_of(&f, n, &rows).unwrap(), s);
        }

        #[test]
        fn random_pair_has_prescribed_dims(q in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
            let f = field_make(q).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n: usize = rng.gen_range(1..=6);
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=a);
            let c = rng.gen_range(b.saturating_sub(n - a)..=b);
            let (sa, sb) = random_pair_with_meet(&f, n, a, b, c, &mut rng).unwrap();
            prop_assert_eq!((sa.dim(), sb.dim(), sa.meet(&sb).unwrap().dim()), (a, b, c));
        }
    }
}

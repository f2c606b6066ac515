//! The singular linear space: GF(q)^(n+l) with a distinguished l-subspace W1,
//! fixed here as the span of the last l coordinates. A subspace P has type
//! (m, k) when `dim P = m` and `dim(P ∩ W1) = k`.
//!
//! Also home to the constructors of the extremal families: all m-subspaces
//! of a (2m-1)-space, and all type-(m,k) subspaces of a suitable
//! type-(2m-1, t) subspace.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{covering_number_with, is_intersecting, span_family, CoverOptions, Family};
use crate::gf::Field;
pub use crate::qcount::extremal_w1_dim;
use crate::qcount::{count_type, gaussian, type_condition};
use crate::subspace::{enumerate_subspaces, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSpace {
    field: Field,
    n: usize,
    l: usize,
    w1: Subspace,
}

impl SingularSpace {
    pub fn new(field: &Field, n: usize, l: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterRange("n must be positive".into()));
        }
        let w1 = Subspace::coordinate(field, n + l, &(n..n + l).collect::<Vec<_>>());
        Ok(SingularSpace {
            field: field.clone(),
            n,
            l,
            w1,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn ambient(&self) -> usize {
        self.n + self.l
    }

    pub fn w1(&self) -> &Subspace {
        &self.w1
    }

    /// The subspace spanned by the first `a` coordinates outside W1 and the
    /// first `b` coordinates of W1; it has type (a + b, b).
    pub fn block(&self, a: usize, b: usize) -> Result<Subspace> {
        if a > self.n || b > self.l {
            return Err(Error::ParameterRange(format!(
                "block ({a}, {b}) does not fit n = {}, l = {}",
                self.n, self.l
            )));
        }
        let idx: Vec<usize> = (0..a).chain(self.n..self.n + b).collect();
        Ok(Subspace::coordinate(&self.field, self.ambient(), &idx))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubspaceType {
    pub m: usize,
    pub k: usize,
}

impl fmt::Display for SubspaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.k)
    }
}

pub fn type_of(sing: &SingularSpace, p: &Subspace) -> Result<SubspaceType> {
    Ok(SubspaceType {
        m: p.dim(),
        k: p.meet(&sing.w1)?.dim(),
    })
}

/// Every m-subspace of `x` of type (m, k), in canonical enumeration order.
pub fn enumerate_type<'a>(
    sing: &'a SingularSpace,
    x: &Subspace,
    m: usize,
    k: usize,
) -> Result<Box<dyn Iterator<Item = Subspace> + 'a>> {
    if x.field().q() != sing.field.q() || x.ambient() != sing.ambient() {
        return Err(Error::AmbientMismatch(format!(
            "subspace in GF({})^{}, singular space GF({})^{}",
            x.field().q(),
            x.ambient(),
            sing.field.q(),
            sing.ambient()
        )));
    }
    if m > x.dim() || k > m.min(sing.l) {
        return Ok(Box::new(std::iter::empty()));
    }
    Ok(Box::new(
        enumerate_subspaces(x, m)?.filter(move |p| p.meet(&sing.w1).expect("same space").dim() == k),
    ))
}

/// All type-(m, k) subspaces of `x` as a family. The size is checked against
/// [`count_type`] whenever the type parameters are feasible.
pub fn type_family(sing: &SingularSpace, x: &Subspace, m: usize, k: usize) -> Result<Family> {
    let members: Vec<Subspace> = enumerate_type(sing, x, m, k)?.collect();
    let xt = type_of(sing, x)?;
    let fam = Family::new(&sing.field, sing.ambient(), m, members)?;
    let [m1, k1, mx, kx, n, l] = [m, k, xt.m, xt.k, sing.n, sing.l].map(|v| v as u32);
    if type_condition(m1, k1, mx, kx, n, l).is_ok() {
        let expected = count_type(m1, k1, mx, kx, n, l, sing.field.q() as u64)?;
        assert_eq!(BigInt::from(fam.len()), expected, "type count mismatch");
    }
    Ok(fam)
}

/// All m-subspaces of GF(q)^n containing the 1-subspace `point`.
///
/// Built as `point + U` for U running over the (m-1)-subspaces of a
/// coordinate complement of the point.
pub fn construct_trivial(field: &Field, n: usize, m: usize, point: &Subspace) -> Result<Family> {
    if point.dim() != 1 || point.ambient() != n || point.field().q() != field.q() {
        return Err(Error::ParameterRange("point must be a 1-subspace of the ambient space".into()));
    }
    if m == 0 || m > n {
        return Err(Error::ParameterRange(format!("m = {m} outside 1..={n}")));
    }
    let pivot = point.pivots()[0];
    let complement = Subspace::coordinate(field, n, &(0..n).filter(|&i| i != pivot).collect::<Vec<_>>());
    let members = enumerate_subspaces(&complement, m - 1)?
        .map(|u| u.join(point))
        .collect::<Result<Vec<_>>>()?;
    let fam = Family::new(field, n, m, members)?;
    debug_assert_eq!(
        BigInt::from(fam.len()),
        gaussian(n as u32 - 1, m as u32 - 1, field.q() as u64)?
    );
    Ok(fam)
}

/// All m-subspaces of the span of the first 2m-1 coordinates.
pub fn construct_extremal(field: &Field, n: usize, m: usize) -> Result<Family> {
    if m < 2 {
        return Err(Error::ParameterRange(format!("m = {m} < 2")));
    }
    if n < 2 * m - 1 {
        return Err(Error::ParameterRange(format!(
            "ambient dimension {n} < 2m-1 = {}",
            2 * m - 1
        )));
    }
    let x = Subspace::coordinate(field, n, &(0..2 * m - 1).collect::<Vec<_>>());
    Family::all_of(&x, m)
}

/// The (2m-1)-subspace X of type (2m-1, t) used by
/// [`construct_extremal_singular`], with t from [`extremal_w1_dim`].
pub fn extremal_singular_span(sing: &SingularSpace, m: usize, k: usize) -> Result<Subspace> {
    if m < 2 {
        return Err(Error::ParameterRange(format!("m = {m} < 2")));
    }
    let t = extremal_w1_dim(m as u32, k as u32, sing.n as u32) as usize;
    type_condition(m as u32, k as u32, 2 * m as u32 - 1, t as u32, sing.n as u32, sing.l as u32)
        .map_err(|c| Error::Infeasible(c.to_string()))?;
    sing.block(2 * m - 1 - t, t)
}

/// All type-(m, k) subspaces of [`extremal_singular_span`].
pub fn construct_extremal_singular(sing: &SingularSpace, m: usize, k: usize) -> Result<Family> {
    let x = extremal_singular_span(sing, m, k)?;
    let fam = type_family(sing, &x, m, k)?;
    if fam.is_empty() {
        return Err(Error::Infeasible("empty family".into()));
    }
    Ok(fam)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub checks: Vec<Check>,
}

impl ExtremalReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks that `f` is intersecting, has covering number m, has the size of
/// the extremal family and spans a (2m-1)-space (of the extremal type when a
/// singular space is given).
pub fn verify_extremal(f: &Family, sing: Option<&SingularSpace>, opts: &CoverOptions) -> Result<ExtremalReport> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let m = f.m();
    let q = f.field().q() as u64;
    let mut checks = Vec::new();
    let inter = is_intersecting(f);
    checks.push(Check {
        name: "intersecting".into(),
        pass: inter.holds(),
        detail: format!("{inter:?}"),
    });
    let tau = covering_number_with(f, opts)?.tau;
    checks.push(Check {
        name: "tau = m".into(),
        pass: tau == m,
        detail: format!("tau = {tau}, m = {m}"),
    });
    let x = span_family(f)?;
    let (expected, span_ok, span_detail) = match sing {
        None => (
            gaussian(2 * m as u32 - 1, m as u32, q)?,
            x.dim() == 2 * m - 1,
            format!("dim X = {}", x.dim()),
        ),
        Some(s) => {
            let k = type_of(s, &f.members()[0])?.k;
            let t = extremal_w1_dim(m as u32, k as u32, s.n as u32);
            let xt = type_of(s, &x)?;
            let count = count_type(m as u32, k as u32, 2 * m as u32 - 1, t, s.n as u32, s.l as u32, q)?;
            (
                count,
                xt == SubspaceType { m: 2 * m - 1, k: t as usize },
                format!("type of X = {xt}, expected ({}, {t})", 2 * m - 1),
            )
        }
    };
    checks.push(Check {
        name: "size".into(),
        pass: BigInt::from(f.len()) == expected,
        detail: format!("{} members, formula {expected}", f.len()),
    });
    checks.push(Check {
        name: "span".into(),
        pass: span_ok,
        detail: span_detail,
    });
    Ok(ExtremalReport { checks })
}

/// True iff `f` is the set of all m-subspaces of its span, or, in the
/// singular setting, all type-(m, k) subspaces of its span. Since `f` is
/// deduplicated and lies inside its span, comparing sizes suffices.
pub fn structure_check(f: &Family, sing: Option<&SingularSpace>) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let x = span_family(f)?;
    let q = f.field().q() as u64;
    let full = match sing {
        None => gaussian(x.dim() as u32, f.m() as u32, q)?,
        Some(s) => {
            let t0 = type_of(s, &f.members()[0])?;
            for p in f.members() {
                if type_of(s, p)? != t0 {
                    return Ok(false);
                }
            }
            let xt = type_of(s, &x)?;
            let [m1, k1, mx, kx, n, l] = [t0.m, t0.k, xt.m, xt.k, s.n, s.l].map(|v| v as u32);
            count_type(m1, k1, mx, kx, n, l, q)?
        }
    };
    Ok(BigInt::from(f.len()) == full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{covering_number, covering_number_oracle};
    use crate::gf::field_make;
    use crate::subspace::{enumerate_points, span_of};

    #[test]
    fn type_examples() {
        let f = field_make(2).unwrap();
        let s = SingularSpace::new(&f, 2, 1).unwrap();
        assert_eq!(type_of(&s, s.w1()).unwrap(), SubspaceType { m: 1, k: 1 });
        let p = Subspace::coordinate(&f, 3, &[0, 2]);
        assert_eq!(type_of(&s, &p).unwrap(), SubspaceType { m: 2, k: 1 });
        let s = SingularSpace::new(&f, 3, 2).unwrap();
        let p = Subspace::coordinate(&f, 5, &[0, 1]);
        assert_eq!(type_of(&s, &p).unwrap(), SubspaceType { m: 2, k: 0 });
    }

    #[test]
    fn enumerate_type_examples() {
        let f = field_make(2).unwrap();
        let s = SingularSpace::new(&f, 2, 1).unwrap();
        let x = Subspace::full(&f, 3);
        let got: Vec<Subspace> = enumerate_type(&s, &x, 3, 1).unwrap().collect();
        assert_eq!(got, vec![x.clone()]);
        assert_eq!(enumerate_type(&s, &x, 2, 2).unwrap().count(), 0);
        // points of F_2^3 off W1 = <e3>: all 7 but one
        let direct = enumerate_points(&x).filter(|p| !p.intersects(s.w1()).unwrap()).count();
        assert_eq!(direct, 6);
        assert_eq!(enumerate_type(&s, &x, 1, 0).unwrap().count(), 6);
        assert_eq!(count_type(1, 0, 3, 1, 2, 1, 2).unwrap(), BigInt::from(6));
    }

    #[test]
    fn trivial_examples() {
        let f = field_make(2).unwrap();
        let p = Subspace::coordinate(&f, 3, &[2]);
        let fam = construct_trivial(&f, 3, 2, &p).unwrap();
        assert_eq!(fam.len(), 3);
        assert!(fam.iter().all(|a| a.contains(&p).unwrap()));
        assert_eq!(covering_number(&fam).unwrap().tau, 1);
        assert_eq!(construct_trivial(&f, 3, 3, &p).unwrap().len(), 1);
        let f3 = field_make(3).unwrap();
        let p = span_of(&f3, 4, &[vec![0, 1, 2, 1]]).unwrap();
        let fam = construct_trivial(&f3, 4, 2, &p).unwrap();
        assert_eq!(fam.len(), 13);
        assert!(fam.iter().all(|a| a.contains(&p).unwrap()));
    }

    #[test]
    fn extremal_examples() {
        for (q, m, n, size) in [(2, 2, 3, 7), (3, 2, 4, 13), (3, 3, 5, 1210)] {
            let f = field_make(q).unwrap();
            let fam = construct_extremal(&f, n, m).unwrap();
            assert_eq!(fam.len(), size);
            assert_eq!(covering_number(&fam).unwrap().tau, m);
            assert!(structure_check(&fam, None).unwrap());
            assert!(verify_extremal(&fam, None, &CoverOptions::default()).unwrap().pass());
        }
        assert!(construct_extremal(&field_make(2).unwrap(), 4, 3).is_err());
    }

    #[test]
    fn extremal_w1_dim_matches_case_split() {
        assert_eq!(extremal_w1_dim(3, 0, 5), 0);
        assert_eq!(extremal_w1_dim(3, 0, 4), 1);
        assert_eq!(extremal_w1_dim(3, 2, 7), 4);
    }

    #[test]
    fn singular_degenerates_to_plain() {
        let f = field_make(2).unwrap();
        let s = SingularSpace::new(&f, 5, 0).unwrap();
        assert_eq!(
            construct_extremal_singular(&s, 3, 0).unwrap(),
            construct_extremal(&f, 5, 3).unwrap()
        );
    }

    #[test]
    fn singular_example_q5() {
        let f = field_make(5).unwrap();
        let s = SingularSpace::new(&f, 4, 3).unwrap();
        let fam = construct_extremal_singular(&s, 3, 1).unwrap();
        // 5^((3-1)(3-1)) [2,2] [3,1]
        assert_eq!(fam.len(), 625 * 31);
        let r = verify_extremal(&fam, Some(&s), &CoverOptions::default()).unwrap();
        assert!(r.pass(), "{r:?}");
        assert!(structure_check(&fam, Some(&s)).unwrap());
    }

    #[test]
    fn singular_infeasible() {
        let f = field_make(5).unwrap();
        let s = SingularSpace::new(&f, 2, 1).unwrap();
        assert_eq!(
            construct_extremal_singular(&s, 3, 1),
            Err(Error::Infeasible("k <= l".into()))
        );
    }

    #[test]
    fn small_w1_part_admits_small_cover() {
        // X of type (2m-1, t) with k <= t < m+k-1: a (t-k+1)-subspace of X ∩ W1 covers
        let f = field_make(2).unwrap();
        let (m, k) = (3, 1);
        let s = SingularSpace::new(&f, 5, 3).unwrap();
        for t in k..m + k - 1 {
            let x = s.block(2 * m - 1 - t, t).unwrap();
            let fam = type_family(&s, &x, m, k).unwrap();
            let z = s.block(0, t - k + 1).unwrap();
            assert!(fam.iter().all(|p| p.intersects(&z).unwrap()));
            assert!(covering_number(&fam).unwrap().tau <= t - k + 1);
        }
    }

    #[test]
    fn near_extremal_fails_size_and_structure() {
        let f = field_make(2).unwrap();
        let fam = construct_extremal(&f, 3, 2).unwrap();
        let fewer = Family::new(&f, 3, 2, fam.members()[1..].to_vec()).unwrap();
        let r = verify_extremal(&fewer, None, &CoverOptions::default()).unwrap();
        assert!(r.checks[0].pass);
        assert!(!r.checks[2].pass);
        assert!(!structure_check(&fewer, None).unwrap());

        let p = Subspace::coordinate(&f, 4, &[0]);
        let triv = construct_trivial(&f, 4, 2, &p).unwrap();
        let r = verify_extremal(&triv, None, &CoverOptions::default()).unwrap();
        assert!(!r.checks[1].pass);
        assert!(!structure_check(&triv, None).unwrap());
        assert_eq!(covering_number_oracle(&triv, 1000).unwrap().tau, 1);
    }
}

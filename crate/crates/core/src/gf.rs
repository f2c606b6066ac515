//! Finite fields GF(q) for prime powers q <= 2^16.
//!
//! Elements are stored as integer codes in `[0, q)`. A code is read in base p
//! as the coefficient vector of a polynomial residue modulo the field's
//! modulus, lowest degree first, so for GF(4) = GF(2)[x]/(x^2 + x + 1) the
//! code 2 is `x` and the code 3 is `x + 1`.
//!
//! The modulus is always the lexicographically smallest monic irreducible
//! polynomial of degree e (coefficients compared from the constant term up),
//! which makes element codes identical across runs and platforms.
//! Multiplication goes through log/antilog tables built at construction.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_Q: u64 = 1 << 16;

/// Shared handle to a field; subspaces and families keep one of these.
pub type Field = Arc<FieldSpec>;

pub struct FieldSpec {
    q: u32,
    p: u32,
    e: u32,
    /// Monic modulus, lowest degree first, length e + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// The modulus is a function of q, so q alone identifies the field.
impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

/// An element of a specific field, identified by its code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn new(field: &FieldSpec, code: u32) -> Result<Self> {
        if code >= field.q {
            return Err(Error::ElementOutOfRange { code, q: field.q });
        }
        Ok(FieldElement(code))
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Builds GF(q). Fails for q that is not a prime power or exceeds 2^16.
pub fn field_make(q: u64) -> Result<Field> {
    FieldSpec::new(q).map(Arc::new)
}

/// Splits q into (p, e) with q = p^e, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = smallest_irreducible(p, e);
        let q = q as u32;

        let mut neg = vec![0; q as usize];
        for (a, slot) in neg.iter_mut().enumerate() {
            let digits = to_digits(a as u32, p, e);
            let negated: Vec<u32> = digits.iter().map(|&d| (p - d) % p).collect();
            *slot = from_digits(&negated, p);
        }

        let generator = find_generator(q, p, e, &modulus);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(order) {
            *slot = x;
            log[x as usize] = i as u32;
            x = poly_mulmod(x, generator, p, e, &modulus);
        }
        for i in order..exp.len() {
            exp[i] = exp[i - order];
        }

        let add_table = (e > 1 && p != 2 && q <= 256).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b, p);
                }
            }
            t
        });

        Ok(FieldSpec {
            q,
            p,
            e,
            modulus,
            exp,
            log,
            neg,
            add_table,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients of the modulus, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.q + b) as usize]
        } else {
            add_digits(a, b, self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero");
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order.max(1)) as usize]
    }

    pub fn checked_inv(&self, a: u32) -> Result<u32> {
        if a >= self.q {
            return Err(Error::ElementOutOfRange { code: a, q: self.q });
        }
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.inv(a))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (k % order)) % order;
        self.exp[l as usize]
    }

    /// Checked arithmetic on [`FieldElement`]s. `b` is required for `Add` and `Mul`.
    pub fn arith(
        &self,
        op: ArithOp,
        a: FieldElement,
        b: Option<FieldElement>,
    ) -> Result<FieldElement> {
        let check = |x: FieldElement| FieldElement::new(self, x.0);
        let a = check(a)?;
        let out = match op {
            ArithOp::Add => self.add(a.0, check(b.ok_or(Error::MissingOperand("add"))?)?.0),
            ArithOp::Mul => self.mul(a.0, check(b.ok_or(Error::MissingOperand("mul"))?)?.0),
            ArithOp::Neg => self.neg(a.0),
            ArithOp::Inv => self.checked_inv(a.0)?,
        };
        Ok(FieldElement(out))
    }
}

fn to_digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(e as usize);
    for _ in 0..e {
        d.push(a % p);
        a /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn add_digits(mut a: u32, mut b: u32, p: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Remainder of `a` modulo a monic `m` over GF(p), both lowest degree first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * lead) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn poly_mulmod(a: u32, b: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let da = to_digits(a, p, e);
    let db = to_digits(b, p, e);
    let mut prod = vec![0u32; 2 * e as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(e as usize, 0);
    from_digits(&r, p)
}

/// Monic polynomials of the given degree, in lexicographic order of their
/// coefficient vectors read from the constant term upwards.
fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |j| {
        let mut coeffs = vec![0u32; degree as usize + 1];
        let mut j = j;
        for i in (0..degree as usize).rev() {
            coeffs[i] = (j % p as u64) as u32;
            j /= p as u64;
        }
        coeffs[degree as usize] = 1;
        coeffs
    })
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = poly.len() as u32 - 1;
    (1..=degree / 2).all(|d| monic_polys(p, d).all(|f| !poly_rem(poly, &f, p).is_empty()))
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    monic_polys(p, e)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

fn find_generator(q: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let order = q - 1;
    if order == 1 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut n = order;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            factors.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let pow = |mut base: u32, mut k: u32| {
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mulmod(acc, base, p, e, modulus);
            }
            base = poly_mulmod(base, base, p, e, modulus);
            k >>= 1;
        }
        acc
    };
    (2..q)
        .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL_Q: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn prime_field_parameters() {
        let f = field_make(2).unwrap();
        assert_eq!((f.q(), f.characteristic(), f.degree()), (2, 2, 1));
        let f = field_make(49).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (7, 2));
    }

    #[test]
    fn gf4_modulus_is_the_only_irreducible_quadratic() {
        // x^2, x^2+x and x^2+1 have a root in GF(2), x^2+x+1 has none.
        let has_root = |c: [u32; 3]| (0..2).any(|x| (c[0] + c[1] * x + c[2] * x * x).is_multiple_of(2));
        let irreducible: Vec<[u32; 3]> = [[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]]
            .into_iter()
            .filter(|&c| !has_root(c))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        let f = field_make(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!((f.characteristic(), f.degree()), (2, 2));
    }

    #[test]
    fn non_prime_powers_rejected() {
        assert_eq!(field_make(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(field_make(1).unwrap_err(), Error::NotPrimePower(1));
        assert_eq!(field_make(0).unwrap_err(), Error::NotPrimePower(0));
        assert_eq!(field_make(100).unwrap_err(), Error::NotPrimePower(100));
        assert_eq!(field_make(1 << 17).unwrap_err(), Error::FieldTooLarge(1 << 17));
    }

    #[test]
    fn worked_products() {
        let f2 = field_make(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f4 = field_make(4).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        let f5 = field_make(5).unwrap();
        assert_eq!(f5.inv(2), 3);
        let two = FieldElement::new(&f5, 2).unwrap();
        assert_eq!(f5.arith(ArithOp::Inv, two, None).unwrap().code(), 3);
    }

    #[test]
    fn arith_errors() {
        let f = field_make(5).unwrap();
        assert_eq!(
            f.arith(ArithOp::Inv, FieldElement::ZERO, None).unwrap_err(),
            Error::InverseOfZero
        );
        assert_eq!(
            f.arith(ArithOp::Add, FieldElement::ONE, None).unwrap_err(),
            Error::MissingOperand("add")
        );
        assert!(FieldElement::new(&f, 5).is_err());
    }

    fn check_axioms(f: &FieldSpec, elems: &[u32]) {
        for &a in elems {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for &b in elems {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in elems {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for q in SMALL_Q {
            let f = field_make(q).unwrap();
            let all: Vec<u32> = (0..q as u32).collect();
            check_axioms(&f, &all);
        }
    }

    #[test]
    fn axioms_sampled_large_fields() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [27u64, 64, 81, 125, 128, 243, 256, 625, 1024, 65536, 65521] {
            let f = field_make(q).unwrap();
            let sample: Vec<u32> = (0..12).map(|_| rng.gen_range(0..q as u32)).collect();
            check_axioms(&f, &sample);
        }
    }

    #[test]
    fn multiplication_matches_polynomial_product() {
        for q in [8u64, 9, 16, 27, 25] {
            let f = field_make(q).unwrap();
            let (p, e) = (f.characteristic(), f.degree());
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    assert_eq!(f.mul(a, b), poly_mulmod(a, b, p, e, f.modulus()));
                }
            }
        }
    }

    #[test]
    fn modulus_is_irreducible_and_least() {
        for q in [4u64, 8, 9, 16, 25, 27, 32, 81] {
            let f = field_make(q).unwrap();
            let (p, e) = (f.characteristic(), f.degree());
            assert!(is_irreducible(f.modulus(), p));
            let earlier_irreducible = monic_polys(p, e)
                .take_while(|g| g.as_slice() != f.modulus())
                .any(|g| is_irreducible(&g, p));
            assert!(!earlier_irreducible);
        }
    }

    #[test]
    fn pow_and_fermat() {
        for q in SMALL_Q {
            let f = field_make(q).unwrap();
            for a in 0..q as u32 {
                assert_eq!(f.pow(a, q), a);
            }
        }
    }
}

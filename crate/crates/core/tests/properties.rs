use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcover::family::{
    covering_number, covering_number_oracle, covering_number_with, is_intersecting, CoverOptions, Family,
};
use qcover::io::FamilyFile;
use qcover::subspace::{enumerate_points, enumerate_subspaces, span_of, Subspace};
use qcover::field_make;

/// Random family of m-subspaces of GF(q)^n. With `through` set, every
/// member contains a random subspace of that dimension (so members meet).
fn random_family(q: u64, n: usize, m: usize, size: usize, through: usize, seed: u64) -> Family {
    let f = field_make(q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = Subspace::full(&f, n);
    let core: Subspace = enumerate_subspaces(&v, through)
        .unwrap()
        .collect::<Vec<_>>()
        .choose(&mut rng)
        .unwrap()
        .clone();
    let mut members = Vec::new();
    while members.len() < size {
        let mut rows: Vec<Vec<u32>> = core.rows().map(<[u32]>::to_vec).collect();
        for _ in through..m {
            rows.push((0..n).map(|_| rng.gen_range(0..q as u32)).collect());
        }
        let s = span_of(&f, n, &rows).unwrap();
        if s.dim() == m {
            members.push(s);
        }
    }
    Family::new(&f, n, m, members).unwrap()
}

fn params() -> impl Strategy<Value = (u64, usize, usize, usize, usize, u64)> {
    (prop_oneof![Just(2u64), Just(3)], 2usize..=5, 1usize..=3)
        .prop_filter("small enough", |&(q, n, m)| m < n && (q == 2 || n <= 4))
        .prop_flat_map(|(q, n, m)| (Just(q), Just(n), Just(m), 1usize..12, 0..=m, any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn search_agrees_with_oracle((q, n, m, size, through, seed) in params()) {
        let fam = random_family(q, n, m, size, through, seed);
        let r = covering_number(&fam).unwrap();
        let o = covering_number_oracle(&fam, 1 << 20).unwrap();
        prop_assert_eq!(r.tau, o.tau);
        prop_assert_eq!(&r.witness, &o.witness);
        prop_assert!(fam.iter().all(|a| a.intersects(&r.witness).unwrap()));
        prop_assert_eq!(r.witness.dim(), r.tau);
    }

    #[test]
    fn tau_bounds((q, n, m, size, through, seed) in params()) {
        let fam = random_family(q, n, m, size, through, seed);
        let tau = covering_number(&fam).unwrap().tau;
        if is_intersecting(&fam).holds() {
            prop_assert!(tau <= m);
        }
        // tau = 1 exactly when some point lies in every member
        let v = Subspace::full(fam.field(), n);
        let common_point = enumerate_points(&v).any(|p| fam.iter().all(|a| a.contains(&p).unwrap()));
        prop_assert_eq!(tau == 1, common_point);
        if through > 0 {
            prop_assert_eq!(tau, 1);
        }
    }

    #[test]
    fn parallel_search_is_deterministic((q, n, m, size, through, seed) in params()) {
        let fam = random_family(q, n, m, size, through, seed);
        let one = covering_number(&fam).unwrap();
        let four = covering_number_with(&fam, &CoverOptions { jobs: 4, ..CoverOptions::default() }).unwrap();
        prop_assert_eq!(one.tau, four.tau);
        prop_assert_eq!(one.witness, four.witness);
    }

    #[test]
    fn family_is_canonical_under_reordering((q, n, m, size, through, seed) in params()) {
        let fam = random_family(q, n, m, size, through, seed);
        let mut shuffled = fam.members().to_vec();
        shuffled.reverse();
        shuffled.push(shuffled[0].clone());
        let again = Family::new(fam.field(), n, m, shuffled).unwrap();
        prop_assert_eq!(&again, &fam);
        let text = FamilyFile::plain(fam.clone()).to_text();
        prop_assert_eq!(FamilyFile::parse(&text).unwrap().to_text(), text);
    }
}

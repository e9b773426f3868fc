use num_bigint::BigInt;
use pgmax_core::certifier::{count_bad, count_isotropic_3_backtrack, count_isotropic_3_baseline, find_bad_subspace};
use pgmax_core::combinat::gaussian_binomial;
use pgmax_core::grassmann::enumerate_subspaces;
use pgmax_core::{AlternatingMap, FpMatrix, Mode, Prime, Subspace, WedgeIndex};
use proptest::prelude::*;
use rand::rngs::SmallRng;
use rand::SeedableRng;

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u32, 3, 5]).prop_map(|p| Prime::new(p).unwrap())
}

fn vectors(p: Prime, n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    let q = p.get() as u8;
    prop::collection::vec(prop::collection::vec(0..q, n), k)
}

/// Random invertible `k x k` matrix by rejection.
fn invertible(p: Prime, k: usize, seed: u64) -> FpMatrix {
    use rand::Rng;
    let mut rng = SmallRng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<u8>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(0..p.get() as u8)).collect()).collect();
        let g = FpMatrix::from_residue_rows(p, k, &rows).unwrap();
        if g.rank() == k {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_ignores_generating_set(
        (p, n, gens, seed) in (prime(), 1usize..7, 1usize..5)
            .prop_flat_map(|(p, n, k)| (Just(p), Just(n), vectors(p, n, k), any::<u64>()))
    ) {
        let a = Subspace::from_generators(p, n, &gens).unwrap();
        let g = invertible(p, gens.len(), seed);
        let mixed: Vec<Vec<u8>> = g
            .row_iter()
            .map(|row| {
                (0..n)
                    .map(|c| row.iter().zip(&gens).fold(0u8, |acc, (&x, v)| p.add(acc, p.mul(x, v[c]))))
                    .collect()
            })
            .collect();
        let b = Subspace::from_generators(p, n, &mixed).unwrap();
        prop_assert_eq!(&a, &b);
        for v in &gens {
            prop_assert!(a.contains(v).unwrap());
        }
    }

    #[test]
    fn gaussian_binomial_symmetry_and_bounds(p in prime(), n in 0u32..14, d in 0u32..14) {
        prop_assume!(d <= n);
        let g = gaussian_binomial(n, d, p.get());
        prop_assert_eq!(&g, &gaussian_binomial(n, n - d, p.get()));
        let lower = num_traits::Pow::pow(BigInt::from(p.get()), d * (n - d));
        prop_assert!(lower <= g);
        prop_assert!(g <= lower * 4);
    }

    #[test]
    fn wedge_of_subspace_has_binomial_dimension(
        (p, n, gens) in (prime(), 2usize..8, 1usize..5)
            .prop_flat_map(|(p, n, k)| (Just(p), Just(n), vectors(p, n, k)))
    ) {
        let h = Subspace::from_generators(p, n, &gens).unwrap();
        let d = h.dim();
        prop_assert_eq!(WedgeIndex::new(n).wedge_subspace(&h).unwrap().dim(), d * d.saturating_sub(1) / 2);
    }

    #[test]
    fn image_span_is_monotone(
        (p, n, gens, extra, seed) in (prime(), 3usize..7, 1usize..4)
            .prop_flat_map(|(p, n, k)| (Just(p), Just(n), vectors(p, n, k), vectors(p, n, 2), any::<u64>()))
    ) {
        let mut rng = SmallRng::seed_from_u64(seed);
        let b = AlternatingMap::sample(p, n, 3, &mut rng);
        let h1 = Subspace::from_generators(p, n, &gens).unwrap();
        let h2 = h1.sum(&Subspace::from_generators(p, n, &extra).unwrap()).unwrap();
        let s1 = b.image_span(&h1).unwrap();
        let s2 = b.image_span(&h2).unwrap();
        prop_assert!(s1.is_subspace_of(&s2).unwrap());
    }

    #[test]
    fn bad_counts_are_basis_invariant(p in prop::sample::select(vec![2u32, 3]), n in 5usize..7, seed in any::<u64>()) {
        let p = Prime::new(p).unwrap();
        let mut rng = SmallRng::seed_from_u64(seed);
        let b = AlternatingMap::sample(p, n, n - 3, &mut rng);
        let g = invertible(p, n, seed ^ 0x5555);
        let moved = b.precompose(&g).unwrap();
        let before = count_bad(&b, None, Mode::AbMax, u128::MAX).unwrap();
        let after = count_bad(&moved, None, Mode::AbMax, u128::MAX).unwrap();
        prop_assert_eq!(before.counts, after.counts);
        prop_assert_eq!(count_isotropic_3_backtrack(&b), count_isotropic_3_backtrack(&moved));
    }

    #[test]
    fn counters_agree(p in prop::sample::select(vec![2u32, 3]), n in 3usize..7, m in 0usize..4, seed in any::<u64>()) {
        let p = Prime::new(p).unwrap();
        let mut rng = SmallRng::seed_from_u64(seed);
        let b = AlternatingMap::sample(p, n, m, &mut rng);
        prop_assert_eq!(count_isotropic_3_baseline(&b, u128::MAX).unwrap(), count_isotropic_3_backtrack(&b));
    }

    #[test]
    fn witness_iff_some_bad(p in prop::sample::select(vec![2u32, 3]), n in 4usize..7, seed in any::<u64>()) {
        let p = Prime::new(p).unwrap();
        let mut rng = SmallRng::seed_from_u64(seed);
        let b = AlternatingMap::sample(p, n, n - 3, &mut rng);
        let found = find_bad_subspace(&b, None, Mode::AbMax, u128::MAX).unwrap();
        let all = count_bad(&b, None, Mode::AbMax, u128::MAX).unwrap();
        prop_assert_eq!(found.witness.is_some(), all.has_bad());
        prop_assert_eq!(found.exhaustive, !all.has_bad());
    }
}

#[test]
fn stream_counts_match_gaussian_binomials() {
    for p in [2u32, 3] {
        let q = Prime::new(p).unwrap();
        for n in 0..=5usize {
            for d in 0..=n {
                let streamed = enumerate_subspaces(q, n, d, u128::MAX).unwrap().count();
                assert_eq!(BigInt::from(streamed), gaussian_binomial(n as u32, d as u32, p), "p={p} n={n} d={d}");
            }
        }
    }
}

//! Engine invariants on proptest-generated forms, checked through the public
//! API only.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hk_core::properties::random_invertible;
use hk_core::quotient::{all_monomials, brute_force_colength, is_in_frobenius_power};
use hk_core::series::theta_dim;
use hk_core::{hk_profile_with, EngineOptions, Execution, Monomial, MultiPoly, PrimeField, RankStrategy};

/// A homogeneous form from a coefficient pattern; `None` if it is zero.
fn form(p: u64, nvars: usize, d: u32, coeffs: &[u64], with_pure_power: bool) -> Option<MultiPoly> {
    let field = PrimeField::new(p).unwrap();
    let pure = Monomial::var_power(nvars, nvars - 1, d);
    let mut f = MultiPoly::zero(field, nvars);
    for (m, &c) in all_monomials(nvars, d as i64).into_iter().zip(coeffs) {
        if !(with_pure_power && m == pure) {
            f.add_term(m, field.from_u64(c));
        }
    }
    if with_pure_power {
        f.add_term(pure, field.from_u64(1));
    }
    (!f.is_zero()).then_some(f)
}

fn instance() -> impl Strategy<Value = (u64, usize, u32, u64, Vec<u64>)> {
    (prop::sample::select(vec![2u64, 3, 5]), 2usize..=4, 1u32..=4, 1u64..=5)
        .prop_flat_map(|(p, nvars, d, q)| (Just(p), Just(nvars), Just(d), Just(q), prop::collection::vec(0..p, 35)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn profile_invariants((p, nvars, d, q, coeffs) in instance()) {
        let Some(f) = form(p, nvars, d, &coeffs, false) else { return Ok(()) };
        let n = nvars as u32 - 1;
        prop_assume!((q as u128).pow(nvars as u32) <= 20_000);
        let pr = hk_profile_with(&f, q, &EngineOptions::new(RankStrategy::Direct, Execution::Sequential)).unwrap();
        let top = pr.top_degree();

        // slice bookkeeping
        for i in 0..=top {
            let theta = theta_dim(n, q, i as i64);
            prop_assert_eq!(theta, (pr.theta_dim(i) + pr.ranks[i as usize]).into());
        }
        prop_assert_eq!(pr.theta_quotient_dims.iter().sum::<u64>(), pr.hk_value);

        // colength by sparse elimination in the full ring
        prop_assert_eq!(brute_force_colength(&f, q).unwrap(), pr.hk_value);

        let inside = is_in_frobenius_power(&f, q);
        prop_assert_eq!(inside, pr.hk_value == q.pow(nvars as u32));
        if inside || d as u64 > top {
            return Ok(());
        }

        // per-degree duality and its consequence for socle / initial degree
        for i in 0..=top {
            prop_assert_eq!(pr.theta_dim(i), pr.kernel_dims[(top - i) as usize]);
        }
        prop_assert_eq!(pr.a_q + pr.iota_q, top);
        prop_assert!(pr.a_q >= pr.m_q);

        let hits_bound = pr.hk_value == pr.l_q;
        prop_assert_eq!(hits_bound, pr.a_q == pr.m_q);
        prop_assert_eq!(hits_bound, pr.iota_q == top - pr.m_q);
        prop_assert_eq!(hits_bound, pr.maximal_rank);
    }

    #[test]
    fn rank_routes_agree((p, nvars, d, q, coeffs) in instance()) {
        prop_assume!((q as u128).pow(nvars as u32) <= 20_000);
        let Some(f) = form(p, nvars, d, &coeffs, true) else { return Ok(()) };
        let run = |s, e| hk_profile_with(&f, q, &EngineOptions::new(s, e)).unwrap();
        let direct = run(RankStrategy::Direct, Execution::Sequential);
        let normalized = run(RankStrategy::Normalized, Execution::Parallel);
        prop_assert_eq!(&direct.theta_quotient_dims, &normalized.theta_quotient_dims);
        prop_assert_eq!(&direct.kernel_dims, &normalized.kernel_dims);
        prop_assert_eq!(direct.hk_value, normalized.hk_value);
    }

    #[test]
    fn frobenius_powers_are_coordinate_free(
        (p, nvars, d, _q, coeffs) in instance(),
        e in 1u32..=2,
        seed in any::<u64>(),
    ) {
        let q = p.pow(e);
        prop_assume!((q as u128).pow(nvars as u32) <= 20_000);
        let Some(f) = form(p, nvars, d, &coeffs, false) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = f.linear_substitution(&random_invertible(&mut rng, f.field(), nvars));
        let opts = EngineOptions::new(RankStrategy::Auto, Execution::Parallel);
        let a = hk_profile_with(&f, q, &opts).unwrap();
        let b = hk_profile_with(&g, q, &opts).unwrap();
        prop_assert_eq!(a.hk_value, b.hk_value);
        prop_assert_eq!(&a.theta_quotient_dims, &b.theta_quotient_dims);
    }
}

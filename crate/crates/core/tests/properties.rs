use ffgenus::arith::{gcd, prime_divisors};
use ffgenus::ffpoly::{factor, FqContext, FqElem, FqPoly};
use ffgenus::genus::{
    build_f0, genus_report, genus_report_abstract, kummer_subgroups, prime_power_case,
    splits_in_model, GenusReport, InfinityModel, KummerGen, Subject,
};
use ffgenus::oracle::{naive_factor, random_radical, t0_root_degrees, OracleConfig};
use ffgenus::ramify::{
    build_profile, infinite_inertia_degrees, t0_radical, RadicalExtension, RamificationProfile,
};
use ffgenus::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields(specs: &[(u64, u32)]) -> Vec<FqContext> {
    specs
        .iter()
        .map(|&(p, m)| FqContext::new(p, m).unwrap())
        .collect()
}

fn random_elem(rng: &mut ChaCha8Rng, ctx: &FqContext, nonzero: bool) -> FqElem {
    let lo = usize::from(nonzero);
    ctx.elements()
        .nth(rng.gen_range(lo..ctx.q() as usize))
        .unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &FqContext, deg: usize) -> FqPoly {
    let mut cs: Vec<FqElem> = (0..deg).map(|_| random_elem(rng, ctx, false)).collect();
    cs.push(random_elem(rng, ctx, true));
    FqPoly::new(ctx, cs)
}

/// A random radical extension with every `c_P | q - 1`.
fn kummer_instance(seed: u64) -> Option<RadicalExtension> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs = fields(&[(3, 1), (5, 1), (7, 1), (3, 2)]);
    let k = random_radical(&mut rng, &fs, 12, 5)?;
    let comps = build_f0(&build_profile(&k).ok()?);
    comps.is_kummer().then_some(k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_is_complete_and_canonical(seed: u64, field in 0usize..6, deg in 1usize..13) {
        let fs = fields(&[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(&mut rng, &fs[field], deg);
        let fx = factor(&f).unwrap();
        prop_assert_eq!(fx.product(&fs[field]), f.clone());
        for (p, k) in &fx.factors {
            prop_assert!(p.is_monic() && *k > 0);
            prop_assert!(p.is_irreducible().unwrap());
        }
        for w in fx.factors.windows(2) {
            prop_assert!(w[0].0.canonical_cmp(&w[1].0).is_lt());
        }
        if deg <= 6 {
            prop_assert_eq!(fx, naive_factor(&OracleConfig::default(), &f).unwrap());
        }
    }

    #[test]
    fn root_degree_oracle_matches(seed: u64, field in 0usize..4, d in 1u64..9) {
        let fs = fields(&[(3, 1), (5, 1), (7, 1), (3, 2)]);
        let ctx = &fs[field];
        prop_assume!(d % ctx.p() != 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_elem(&mut rng, ctx, true);
        match t0_root_degrees(ctx, g, d) {
            Ok(t) => prop_assert_eq!(t, t0_radical(ctx, g, d, 1).unwrap()),
            Err(Error::FieldTooLarge(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lattice_agrees_with_local_splitting(seed: u64) {
        let k = kummer_instance(seed);
        prop_assume!(k.is_some());
        let k = k.unwrap();
        let comps = build_f0(&build_profile(&k).unwrap());
        let data = match kummer_subgroups(&k, &comps) {
            Ok(d) => d,
            Err(Error::FieldTooLarge(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let places: Vec<_> = data.index.iter().map(|&i| &comps.places[i]).collect();
        let total: u64 = places.iter().map(|p| p.c).product();
        prop_assume!(total <= 48);
        let ctx = k.ctx();
        let model = InfinityModel::for_extension(&k).unwrap();
        let n = data.modulus;
        for idx in 0..total {
            let mut r = idx;
            let mut x = Vec::new();
            let mut a = FqPoly::one(ctx);
            let mut gamma = ctx.one();
            for pd in &places {
                let xj = r % pd.c;
                r /= pd.c;
                x.push(xj as i128);
                let y = xj * n / pd.c;
                a = &a * &pd.place.pow(y);
                if pd.deg % 2 == 1 && y % 2 == 1 {
                    gamma = ctx.neg(gamma);
                }
            }
            let gen = KummerGen { e: n, gamma, a };
            let split = splits_in_model(&model, &gen).unwrap();
            prop_assert_eq!(split, data.good.contains(&x), "x = {:?}", x);
        }
    }

    #[test]
    fn kummer_index_identities(seed: u64) {
        let k = kummer_instance(seed);
        prop_assume!(k.is_some());
        let k = k.unwrap();
        let comps = build_f0(&build_profile(&k).unwrap());
        let data = match kummer_subgroups(&k, &comps) {
            Ok(d) => d,
            Err(Error::FieldTooLarge(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(data.real.is_sublattice_of(&data.good));
        prop_assert_eq!(data.real.det(), comps.c_inf as u128);
        let r = genus_report(&k).unwrap();
        let cp = r.infinity.cprime_exact.unwrap();
        prop_assert_eq!(cp as u128, data.real.det() / data.good.det());
        prop_assert_eq!(gcd(comps.c_inf, comps.e_inf) % cp, 0);
    }

    #[test]
    fn base_model_splitting_is_e_inf_one(seed: u64) {
        let k = kummer_instance(seed);
        prop_assume!(k.is_some());
        let k = k.unwrap();
        let ctx = k.ctx();
        let comps = build_f0(&build_profile(&k).unwrap());
        let base = InfinityModel::base(ctx).unwrap();
        for pd in comps.places.iter().filter(|pd| pd.c > 1) {
            let sign = if pd.deg % 2 == 1 { ctx.from_int(-1) } else { ctx.one() };
            let gen = KummerGen { e: pd.c, gamma: sign, a: pd.place.clone() };
            prop_assert_eq!(splits_in_model(&base, &gen).unwrap(), pd.e_inf == 1);
        }
    }

    #[test]
    fn infinity_model_matches_inertia_degrees(seed: u64, s in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = fields(&[(3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]);
        let k = random_radical(&mut rng, &fs, 12, 6);
        prop_assume!(k.is_some());
        let k = k.unwrap().with_base_constants(s).unwrap();
        let model = match InfinityModel::for_extension(&k) {
            Ok(m) => m,
            Err(Error::FieldTooLarge(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let mut ts: Vec<u64> = model.primes().iter().map(|p| p.t).collect();
        ts.sort_unstable();
        let d = gcd(k.deg_d(), k.n());
        let mut expect = infinite_inertia_degrees(k.ctx(), k.gamma(), d, s).unwrap();
        expect.sort_unstable();
        prop_assert_eq!(ts, expect);
    }

    #[test]
    fn reports_are_well_formed(seed: u64, s in 1u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = fields(&[(3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]);
        let k = random_radical(&mut rng, &fs, 12, 6);
        prop_assume!(k.is_some());
        let k = k.unwrap().with_base_constants(s).unwrap();
        let r = genus_report(&k).unwrap();
        prop_assert_eq!(r.lower.constants_deg, Some(r.t0));
        prop_assert_eq!(&r.conjectural, &r.lower);
        prop_assert_eq!(r.exact, r.exact_field.is_some());
        prop_assert_eq!(r.upper.constants_deg, r.exact.then_some(r.t0));
        for c in &r.components {
            prop_assert_eq!(c.c % c.prop33[0], 0);
            prop_assert_eq!(c.prop33[1], c.e);
            prop_assert_eq!(c.e % c.c, 0);
        }
        prop_assert_eq!(GenusReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn report_ignores_factor_order(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = fields(&[(3, 1), (5, 1), (7, 1)]);
        let k = random_radical(&mut rng, &fs, 12, 6);
        prop_assume!(k.is_some());
        let k = k.unwrap();
        let ctx = k.ctx();
        let mut parts: Vec<FqPoly> = k.factors().factors.iter().map(|(p, a)| p.pow(*a as u64)).collect();
        parts.reverse();
        let d = parts.iter().fold(FqPoly::one(ctx), |acc, p| &acc * p);
        let k2 = RadicalExtension::new(ctx, k.n(), k.gamma(), &d, 1).unwrap();
        prop_assert_eq!(genus_report(&k).unwrap().to_json(), genus_report(&k2).unwrap().to_json());

        let pr = build_profile(&k).unwrap();
        let mut finite: Vec<(FqPoly, Vec<u64>)> =
            pr.finite.iter().map(|r| (r.place.clone(), r.exponents.clone())).collect();
        let forward = RamificationProfile::new(ctx, finite.clone(), pr.infinity.clone(), Some(pr.geometric)).unwrap();
        finite.reverse();
        let backward = RamificationProfile::new(ctx, finite, pr.infinity.clone(), Some(pr.geometric)).unwrap();
        prop_assert_eq!(
            genus_report_abstract(&forward).unwrap().to_json(),
            genus_report_abstract(&backward).unwrap().to_json()
        );
    }

    #[test]
    fn tame_abstract_report_brackets_radical_report(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = fields(&[(3, 1), (5, 1), (7, 1), (3, 2)]);
        let k = random_radical(&mut rng, &fs, 12, 6);
        prop_assume!(k.is_some());
        let k = k.unwrap();
        let pr = build_profile(&k).unwrap();
        let a = genus_report_abstract(&pr).unwrap();
        let r = genus_report(&k).unwrap();
        prop_assert_eq!(a.subject, Subject::GenusField);
        prop_assert_eq!(&a.subfields.f0, &r.subfields.f0);
        prop_assert_eq!(a.t0, r.t0);
        prop_assert_eq!(a.infinity.c_inf, r.infinity.c_inf);
        if a.subfields.f_exact {
            prop_assert_eq!(&a.subfields.f, &r.subfields.f);
        }
    }

    #[test]
    fn prime_power_case_agrees(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fs = fields(&[(5, 1), (3, 2), (7, 1), (13, 1), (5, 2)]);
        let ctx = &fs[rng.gen_range(0..fs.len())];
        let q1 = ctx.q() - 1;
        let ns: Vec<u64> = (2..=q1).filter(|&n| q1.is_multiple_of(n) && prime_divisors(n).len() == 1).collect();
        let n = ns[rng.gen_range(0..ns.len())];
        let mut d = FqPoly::one(ctx);
        for _ in 0..rng.gen_range(1..=3) {
            let deg = rng.gen_range(1..=2);
            let f = random_poly(&mut rng, ctx, deg).monic().unwrap();
            d = &d * &f.pow(rng.gen_range(1..=4));
        }
        let g = random_elem(&mut rng, ctx, true);
        let k = RadicalExtension::new(ctx, n, g, &d, 1);
        prop_assume!(k.is_ok());
        let k = k.unwrap();
        let pp = prime_power_case(&k).unwrap();
        let pr = build_profile(&k).unwrap();
        let comps = build_f0(&pr);
        prop_assert_eq!(pp.c_inf, comps.c_inf);
        prop_assert_eq!(pp.e_inf, pr.e_inf);
        prop_assert_eq!(pp.t0, pr.t0);
        prop_assert_eq!(pp.cprime_bound, comps.cprime_bound);
        prop_assert_eq!(pp.geometric, pr.geometric);
    }
}

use mfkit_core::algebra::{parse_poly, Field, Polynomial};
use mfkit_core::bott::{bott, bott_vector, restricted_bott};
use mfkit_core::graded::{DegreeMultiset, HomogeneousMatrix};
use mfkit_core::mf::{presentation_equivalent, MatrixFactorization};
use mfkit_core::orlov::{
    betti_to_table, dual_table, phi0_residue, shamash_degrees, table_to_betti, CohomologyTable, HypersurfaceContext,
    Phi0Descriptor,
};
use mfkit_core::random;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [Field; 3] = [Field::Rational, Field::GaussianRational, Field::Prime(13)];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn triple(seed: u64, field: Field) -> (Polynomial, Polynomial, Polynomial) {
    let mut r = rng(seed);
    let mut p = || random::polynomial(&mut r, field, 3, 3, 5);
    (p(), p(), p())
}

fn check_ring_axioms(a: &Polynomial, b: &Polynomial, c: &Polynomial) {
    let zero = Polynomial::zero(a.field(), a.nvars());
    let one = Polynomial::one(a.field(), a.nvars());
    assert_eq!(a + b, b + a);
    assert_eq!(a * b, b * a);
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a + &zero, a.clone());
    assert_eq!(a * &one, a.clone());
    assert!((a + &(-a)).is_zero());
    assert_eq!(a - b, a + &(-b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_rational(seed in any::<u64>()) {
        let (a, b, c) = triple(seed, Field::Rational);
        check_ring_axioms(&a, &b, &c);
    }

    #[test]
    fn ring_axioms_gaussian(seed in any::<u64>()) {
        let (a, b, c) = triple(seed, Field::GaussianRational);
        check_ring_axioms(&a, &b, &c);
    }

    #[test]
    fn ring_axioms_prime(seed in any::<u64>()) {
        let (a, b, c) = triple(seed, Field::Prime(13));
        check_ring_axioms(&a, &b, &c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_round_trips(seed in any::<u64>(), which in 0usize..3) {
        let field = FIELDS[which];
        let (a, _, _) = triple(seed, field);
        let text = a.to_string();
        let back = parse_poly(&text, field, 3).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn gaussian_norm(seed in any::<u64>()) {
        // (a + ib)(a − ib) = a² + b² for a, b with rational coefficients.
        let (a, b, _) = triple(seed, Field::Rational);
        let lift = |p: &Polynomial| parse_poly(&p.to_string(), Field::GaussianRational, 3).unwrap();
        let (a, b) = (lift(&a), lift(&b));
        let i = parse_poly("i", Field::GaussianRational, 3).unwrap();
        let ib = &i * &b;
        prop_assert_eq!(&(&a + &ib) * &(&a - &ib), &(&a * &a) + &(&b * &b));
    }

    #[test]
    fn composition_of_valid_maps_is_valid(seed in any::<u64>(), which in 0usize..3) {
        let field = FIELDS[which];
        let mut r = rng(seed);
        let degs = |k: usize, r: &mut ChaCha8Rng| {
            DegreeMultiset::new((0..k).map(|_| r.gen_range(-2..=4)).collect())
        };
        let (a, b, c) = (degs(r.gen_range(0..4), &mut r), degs(r.gen_range(0..4), &mut r), degs(r.gen_range(0..4), &mut r));
        let g = random_matrix(&mut r, field, &a, &b);
        let h = random_matrix(&mut r, field, &b, &c);
        prop_assert!(g.is_valid() && h.is_valid());
        let hg = h.compose(&g).unwrap();
        prop_assert!(hg.is_valid());
        prop_assert_eq!(hg.source(), &a);
        prop_assert_eq!(hg.target(), &c);
    }

    #[test]
    fn shift_twice_is_twist(seed in any::<u64>(), which in 0usize..3) {
        let mut r = rng(seed);
        let mf = random::reduced_mf(&mut r, FIELDS[which], 3, 3, 3);
        prop_assert_eq!(mf.shift().shift(), mf.twist(mf.degree() as i64));
        prop_assert_eq!(mf.dual().dual(), mf.clone());
        prop_assert!(mf.dual().is_valid());
    }

    #[test]
    fn base_change_keeps_betti_numbers(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mf = random::reduced_mf(&mut r, Field::Prime(13), 3, 3, 3);
        let other = random::base_change(&mut r, &mf);
        prop_assert!(other.is_valid());
        prop_assert_eq!(other.betti().unwrap(), mf.betti().unwrap());
        prop_assert!(presentation_equivalent(&mf, &mf.reduce()));
    }

    #[test]
    fn reduce_strips_trivial_summands(seed in any::<u64>(), k in 1usize..=3) {
        let mut r = rng(seed);
        let mf = random::reduced_mf(&mut r, Field::Rational, 3, 2, 2);
        let mut sum = mf.clone();
        for _ in 0..k {
            let t = if r.gen_bool(0.5) {
                MatrixFactorization::trivial_unit_first(mf.f().clone())
            } else {
                MatrixFactorization::trivial_f_first(mf.f().clone())
            };
            sum = sum.direct_sum(&t.unwrap().twist(r.gen_range(-2..=2))).unwrap();
        }
        let sum = random::base_change(&mut r, &sum);
        let red = sum.reduce();
        prop_assert!(red.is_valid() && red.is_reduced());
        prop_assert_eq!(red.rank(), mf.rank());
        prop_assert_eq!(red.betti().unwrap(), mf.betti().unwrap());
        prop_assert_eq!(red.reduce(), red);
    }

    #[test]
    fn bott_serre_duality(n in 1i64..=6, p in 0i64..=6, q in 0i64..=6, l in -12i64..=12) {
        prop_assert_eq!(bott(n, p, q, l), bott(n, n - p, n - q, -l));
    }

    #[test]
    fn bott_concentrated(n in 1i64..=6, p in 0i64..=6, l in -12i64..=12) {
        prop_assert!(bott_vector(n, p, l).nonzero_degrees().len() <= 1);
    }

    #[test]
    fn restricted_euler(n in 1i64..=6, d in 1i64..=8, r in 0i64..=6, t in -8i64..=8) {
        let v = restricted_bott(n, d, r, t);
        let chi = bott_vector(n, r, r + t).euler_characteristic() - bott_vector(n, r, r + t - d).euler_characteristic();
        prop_assert_eq!(v.euler_characteristic(), chi);
        prop_assert_eq!(v.get(n), 0);
    }

    #[test]
    fn table_translation_round_trips(seed in any::<u64>(), n in 1i64..=6, extra in 0i64..=4) {
        let ctx = HypersurfaceContext::new(n, n + 1 + extra).unwrap();
        let mut r = rng(seed);
        let b = random::betti_table(&mut r, 8, 12);
        let t = betti_to_table(&ctx, &b).unwrap();
        prop_assert_eq!(t.total(), b.total());
        prop_assert_eq!(table_to_betti(&ctx, &t).unwrap(), b);
        let t = random::cohomology_table(&mut r, &ctx, 8, 6);
        prop_assert_eq!(betti_to_table(&ctx, &table_to_betti(&ctx, &t).unwrap()).unwrap(), t);
    }

    #[test]
    fn dual_table_is_an_involution(seed in any::<u64>(), n in 1i64..=6, extra in 0i64..=4) {
        let ctx = HypersurfaceContext::new(n, n + 1 + extra).unwrap();
        let mut r = rng(seed);
        let mut t = CohomologyTable::new(n);
        for _ in 0..r.gen_range(0..6) {
            t.add(r.gen_range(0..=n), r.gen_range(0..n), r.gen_range(1..5));
        }
        let d = dual_table(&ctx, &t).unwrap();
        prop_assert_eq!(d.total(), t.total());
        prop_assert_eq!(dual_table(&ctx, &d).unwrap(), t);
    }

    #[test]
    fn residue_descriptor_periodicity(n in 1i64..=6, extra in 0i64..=4, l in -30i64..=30) {
        let ctx = HypersurfaceContext::new(n, n + 1 + extra).unwrap();
        let here = phi0_residue(&ctx, l).unwrap();
        let next = phi0_residue(&ctx, l + ctx.d()).unwrap();
        match (here, next) {
            (Phi0Descriptor::Zero, Phi0Descriptor::Zero) => {}
            (
                Phi0Descriptor::Bundle { exterior_power: p, twist: t, shift: s },
                Phi0Descriptor::Bundle { exterior_power: p2, twist: t2, shift: s2 },
            ) => {
                prop_assert_eq!((p, t, s + 2), (p2, t2, s2));
                prop_assert!((0..=n).contains(&p));
            }
            _ => prop_assert!(false, "ZERO case must be periodic"),
        }
    }

    #[test]
    fn shamash_total_rank(n in 1i64..=6, d in 1i64..=8, m in -8i64..=0) {
        let s = shamash_degrees(n, d, m).unwrap();
        let expected: u128 = (0..=(-m / 2)).map(|j| mfkit_core::bott::binom(n + 1, -m - 2 * j)).sum();
        prop_assert_eq!(s.total_rank(), expected);
    }
}

fn random_matrix(
    r: &mut ChaCha8Rng,
    field: Field,
    source: &DegreeMultiset,
    target: &DegreeMultiset,
) -> HomogeneousMatrix {
    let nvars = 3;
    let vars = [0, 1, 2];
    let rows = target
        .as_slice()
        .iter()
        .map(|t| {
            source
                .as_slice()
                .iter()
                .map(|s| {
                    let deg = s - t;
                    if deg < 0 || r.gen_bool(0.3) {
                        Polynomial::zero(field, nvars)
                    } else {
                        random::homogeneous(r, field, nvars, &vars, deg as u32, 3)
                    }
                })
                .collect()
        })
        .collect();
    HomogeneousMatrix::new(field, nvars, source.clone(), target.clone(), rows).unwrap()
}

use cliffconic::brauer_severi::{bs_membership_detail, conic_equation};
use cliffconic::catalog::{random_form, random_poly, random_scalar, DelPezzoTag};
use cliffconic::clifford::{fiber_algebra, reduce_with, reduce_word, AlgebraType, CliffordWord};
use cliffconic::exactpoly::{adjugate3, det3, parse_poly, Domain, Matrix, Poly, Scalar};
use cliffconic::invariants::{chi_bundle, chi_o, BundleDescriptor, Summand};
use cliffconic::qform::{FiberPoint, BASE_NAMES};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f101() -> Domain {
    Domain::prime(101).unwrap()
}

fn domains() -> impl Strategy<Value = Domain> {
    prop_oneof![
        Just(Domain::Rational),
        Just(f101()),
        Just(Domain::prime(7).unwrap())
    ]
}

fn random_point(domain: Domain, rng: &mut ChaCha8Rng) -> FiberPoint {
    loop {
        let c = [0, 1, 2].map(|_| random_scalar(domain, rng));
        if let Ok(p) = FiberPoint::new(c) {
            return p;
        }
    }
}

fn pattern(rng: &mut ChaCha8Rng) -> ([i64; 3], i64) {
    let tags = [DelPezzoTag::F23, DelPezzoTag::F24, DelPezzoTag::F25Minus];
    tags[rng.gen_range(0..3)].pattern().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(seed: u64, domain in domains(), m in 0i64..4, n in 0i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(m, domain, &mut rng);
        let g = random_poly(n, domain, &mut rng);
        let p: Vec<Scalar> = (0..3).map(|_| random_scalar(domain, &mut rng)).collect();
        prop_assert_eq!((&f + &g).eval(&p), &f.eval(&p) + &g.eval(&p));
        prop_assert_eq!((&f * &g).eval(&p), &f.eval(&p) * &g.eval(&p));
        prop_assert_eq!((-&f).eval(&p), -&f.eval(&p));
    }

    #[test]
    fn exact_division_inverts_multiplication(seed: u64, domain in domains(), m in 0i64..4, n in 0i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(m, domain, &mut rng);
        let g = random_poly(n, domain, &mut rng);
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).divide_exact(&g).unwrap(), f);
    }

    #[test]
    fn square_roots_of_squares(seed: u64, domain in domains(), m in 0i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(m, domain, &mut rng);
        let root = (&f * &f).sqrt().unwrap();
        prop_assert!(root == f || root == -&f);
        prop_assert_eq!(&root * &root, &f * &f);
    }

    #[test]
    fn display_parses_back(seed: u64, domain in domains(), m in 0i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(m, domain, &mut rng);
        let back = parse_poly(&f.to_string(), &BASE_NAMES, domain).unwrap();
        prop_assert_eq!(back.into_poly(), f);
    }

    #[test]
    fn adjugate_identity(seed: u64, domain in domains()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = pattern(&mut rng);
        let q = random_form(a, d, domain, &mut rng);
        let m = q.entries();
        let adj = adjugate3(m).unwrap();
        let det = det3(m).unwrap().into_poly();
        let lhs = m.mul(&adj);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { det.clone() } else { Poly::zero(domain, 3) };
                prop_assert_eq!(lhs.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn twisting_keeps_the_discriminant(seed: u64, domain in domains(), m in -3i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = pattern(&mut rng);
        let q = random_form(a, d, domain, &mut rng);
        let t = q.twist(m);
        prop_assert_eq!(t.discriminant(), q.discriminant());
        prop_assert_eq!(t.discriminant_degree(), q.discriminant_degree());
        prop_assert!(q.normalize().is_normalized());
        prop_assert_eq!(q.normalize().normalize(), q.normalize());
        let disc = q.discriminant();
        if !disc.is_zero() {
            prop_assert_eq!(disc.degree().unwrap() as i64, 2 * (a[0] + a[1] + a[2]) + 3 * d);
        }
    }

    #[test]
    fn pairing_is_minus_adjugate_fiberwise(seed: u64, domain in domains()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = pattern(&mut rng);
        let q = random_form(a, d, domain, &mut rng);
        let p = random_point(domain, &mut rng);
        let at = q.at(&p);
        let alg = fiber_algebra(&at);
        prop_assert_eq!(alg.trace_pairing(), at.adjugate().neg());
    }

    #[test]
    fn classification_follows_rank(seed: u64) {
        let domain = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // low-rank matrices are built as sums of few rank-one squares
        let rank: usize = rng.gen_range(0..=3);
        let mut m = Matrix::from_fn(3, 3, |_, _| domain.zero());
        for _ in 0..rank {
            let v: Vec<Scalar> = (0..3).map(|_| random_scalar(domain, &mut rng)).collect();
            let c = random_scalar(domain, &mut rng);
            m = Matrix::from_fn(3, 3, |i, j| m.get(i, j) + &(&c * &(&v[i] * &v[j])));
        }
        let alg = fiber_algebra(&m);
        prop_assert_eq!(alg.classify().unwrap(), AlgebraType::for_form_rank(m.rank()));
    }

    #[test]
    fn rewriting_is_confluent(seed: u64, domain in domains(), len in 0usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q = Matrix::from_fn(3, 3, |_, _| domain.zero());
        for i in 0..3 {
            for j in i..3 {
                let c = random_scalar(domain, &mut rng);
                q.set(i, j, c.clone());
                q.set(j, i, c);
            }
        }
        let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        let words = [CliffordWord::new(domain.one(), letters)];
        let leftmost = reduce_word(&words, &q);
        let mut choice = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let random = reduce_with(&words, &q, |n| choice.gen_range(0..n));
        let rightmost = reduce_with(&words, &q, |n| n - 1);
        prop_assert_eq!(&leftmost, &random);
        prop_assert_eq!(&leftmost, &rightmost);
    }

    #[test]
    fn membership_criteria_agree(seed: u64) {
        let domain = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = pattern(&mut rng);
        let q = random_form(a, d, domain, &mut rng);
        let base = random_point(domain, &mut rng);
        let alpha = random_point(domain, &mut rng);
        let m = bs_membership_detail(&q, &base, &alpha);
        prop_assert_eq!(m.on_conic, m.low_rank);
    }

    #[test]
    fn conic_equation_is_weighted_homogeneous(seed: u64, domain in domains(), m in -2i64..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = pattern(&mut rng);
        let q = random_form(a, d, domain, &mut rng).twist(m);
        let c = conic_equation(&q);
        if !c.is_zero() {
            prop_assert_eq!(c.alpha_degree(), Some(2));
            prop_assert_eq!(c.weighted_degree(q.a()), Some(q.d()));
        }
    }

    #[test]
    fn serre_duality(n in -50i64..50) {
        prop_assert_eq!(chi_o(n), chi_o(-3 - n));
    }

    #[test]
    fn euler_characteristic_is_additive(
        xs in proptest::collection::vec((any::<bool>(), -6i64..6), 0..5),
        ys in proptest::collection::vec((any::<bool>(), -6i64..6), 0..5),
        twist in -4i64..4,
    ) {
        let make = |v: &[(bool, i64)]| BundleDescriptor::new(
            v.iter().map(|&(cot, n)| if cot { Summand::CotangentTwist(n) } else { Summand::LineBundle(n) }).collect()
        );
        let (x, y) = (make(&xs), make(&ys));
        prop_assert_eq!(chi_bundle(&x.concat(&y), twist), chi_bundle(&x, twist) + chi_bundle(&y, twist));
        prop_assert_eq!(x.concat(&y).rank(), x.rank() + y.rank());
    }
}

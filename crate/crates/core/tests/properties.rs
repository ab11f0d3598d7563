use proptest::prelude::*;

use qnrforge_core::arith::{is_prime, mul_mod};
use qnrforge_core::irrpoly::{mobius_generate, MobiusMap};
use qnrforge_core::roots::{cipolla_sum, tonelli_shanks};
use qnrforge_core::symbols::{euler_criterion, jacobi};
use qnrforge_core::tracemat::{frobenius_power_sums, newton_power_sums, power_basis_trace_matrix};
use qnrforge_core::{
    qnr_auto, qnr_with, rabin_irreducible, FieldDescriptor, FpPoly, Method, QnrCertificate, QuotientRing,
    SymbolValue,
};

const SMALL_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(SMALL_PRIMES.to_vec())
}

fn odd_prime_below(n: u64) -> impl Strategy<Value = u64> {
    (3..n).prop_filter("odd prime", |&p| is_prime(p) && p > 2)
}

/// Monic polynomial of degree `1..=max_degree` with coefficients from `seed`.
fn monic(p: u64, degree: usize, seed: &[u64]) -> FpPoly {
    let mut c: Vec<u64> = seed.iter().take(degree).map(|x| x % p).collect();
    c.resize(degree, 0);
    c.push(1);
    FpPoly::new(p, c)
}

fn irreducible(p: u64, degree: usize, seed: &[u64]) -> FpPoly {
    let mut s = seed.to_vec();
    loop {
        let f = monic(p, degree, &s);
        if rabin_irreducible(&f) {
            return f;
        }
        for x in s.iter_mut().take(degree) {
            *x = (*x % p + 1) % p;
            if *x != 0 {
                break;
            }
        }
    }
}

fn map_strategy() -> impl Strategy<Value = (u64, u64, u64, u64)> {
    (0u64..1000, 0u64..1000, 0u64..1000, 0u64..1000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_is_a_ring_homomorphism(
        p in small_prime(),
        degree in 1usize..7,
        modulus in prop::collection::vec(0u64..1000, 6),
        a in prop::collection::vec(0u64..1000, 6),
        b in prop::collection::vec(0u64..1000, 6),
    ) {
        let ring = QuotientRing::new(monic(p, degree, &modulus)).unwrap();
        let (x, y) = (ring.element(&a), ring.element(&b));
        let f = |e: &qnrforge_core::RingElement| e.frobenius_power(1);
        prop_assert_eq!(f(&x.add(&y)), f(&x).add(&f(&y)));
        prop_assert_eq!(f(&x.mul(&y)), f(&x).mul(&f(&y)));
    }

    #[test]
    fn polynomial_division_identity(
        p in small_prime(),
        a in prop::collection::vec(0u64..1000, 0..10),
        b in prop::collection::vec(0u64..1000, 1..6),
    ) {
        let a = FpPoly::new(p, a);
        let b = FpPoly::new(p, b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn jacobi_is_multiplicative(a in -500i64..500, b in -500i64..500, m in 1u64..200, n in 1u64..200) {
        let (m, n) = (2 * m + 1, 2 * n + 1);
        let j = |x: i64, k: u64| jacobi(x, k).unwrap();
        prop_assert_eq!(j(a * b, n), j(a, n) * j(b, n));
        prop_assert_eq!(j(a, m * n), j(a, m) * j(a, n));
    }

    #[test]
    fn jacobi_matches_euler_on_primes(p in odd_prime_below(5000), a in 0u64..5000) {
        prop_assert_eq!(jacobi(a as i64, p).unwrap(), euler_criterion(a, p).unwrap());
    }

    #[test]
    fn mobius_composition(
        p in small_prime(),
        degree in 2usize..5,
        seed in prop::collection::vec(0u64..1000, 6),
        m1 in map_strategy(),
        m2 in map_strategy(),
    ) {
        let f = irreducible(p, degree, &seed);
        let m1 = MobiusMap::new(m1.0, m1.1, m1.2, m1.3);
        let m2 = MobiusMap::new(m2.0, m2.1, m2.2, m2.3);
        prop_assume!(m1.det(p) != 0 && m2.det(p) != 0);
        let g = mobius_generate(&f, &m1).unwrap();
        prop_assert!(rabin_irreducible(&g));
        let seq = mobius_generate(&g, &m2).unwrap();
        prop_assert_eq!(seq, mobius_generate(&f, &m1.compose(&m2, p)).unwrap());
    }

    #[test]
    fn newton_sums_are_traces(p in small_prime(), degree in 1usize..7, seed in prop::collection::vec(0u64..1000, 6)) {
        let f = irreducible(p, degree, &seed);
        prop_assert_eq!(newton_power_sums(&f, 2 * degree), frobenius_power_sums(&f, 2 * degree));
        prop_assert!(power_basis_trace_matrix(&f).unwrap().is_hankel());
    }

    #[test]
    fn certificates_round_trip(p in odd_prime_below(3000), which in 0usize..4) {
        let method = [Method::Special, Method::General, Method::Least, Method::Class][which];
        let desc = FieldDescriptor::prime(p).unwrap();
        if let Ok(cert) = qnr_with(&desc, Some(method)) {
            prop_assert!(cert.verified);
            prop_assert_eq!(euler_criterion(cert.value, p).unwrap(), SymbolValue::MinusOne);
            let text = serde_json::to_string(&cert).unwrap();
            let back: QnrCertificate = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, cert);
        }
    }

    #[test]
    fn auto_is_sound_on_large_primes(n in 1_000_000u64..4_000_000_000) {
        let p = (n..).find(|&k| is_prime(k)).unwrap();
        let cert = qnr_auto(&FieldDescriptor::prime(p).unwrap()).unwrap();
        prop_assert_eq!(euler_criterion(cert.value, p).unwrap(), SymbolValue::MinusOne);
    }

    #[test]
    fn square_roots_square_back(p in odd_prime_below(100_000), x in 1u64..100_000) {
        let a = mul_mod(x, x, p);
        let z = qnr_auto(&FieldDescriptor::prime(p).unwrap()).unwrap().value;
        let s = tonelli_shanks(a, p, z).unwrap();
        prop_assert_eq!(mul_mod(s.root, s.root, p), a);
        prop_assert!(s.root <= (p - 1) / 2);
        let out = cipolla_sum(a, p, z).unwrap();
        prop_assert!(!out.fell_back);
        prop_assert_eq!(out.result, s);
    }
}

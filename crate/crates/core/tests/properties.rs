use proptest::prelude::*;
use sumroots_core::charsum::char_sum_double;
use sumroots_core::{CharacterTable, DensePolynomial, FieldElement, PrimeField};

const PRIMES: [u64; 8] = [3, 5, 13, 61, 101, 997, 7919, 2_147_483_647];

fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(&PRIMES[..]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn poly_in(k: PrimeField, max_len: usize) -> impl Strategy<Value = DensePolynomial> {
    prop::collection::vec(0..k.modulus() as u64, 0..max_len).prop_map(move |cs| DensePolynomial::from_u64s(k, &cs))
}

fn subset(p: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(0..p, 0..max_len).prop_map(|s| s.into_iter().collect())
}

fn elements(k: PrimeField, xs: &[u64]) -> Vec<FieldElement> {
    xs.iter().map(|&x| k.element(x)).collect()
}

proptest! {
    #[test]
    fn inverse_is_multiplicative((k, x, y) in field().prop_flat_map(|k| {
        let p = k.modulus() as u64;
        (Just(k), 1..p, 1..p)
    })) {
        let (x, y) = (k.element(x), k.element(y));
        prop_assert_eq!((x * y).inverse().unwrap(), x.inverse().unwrap() * y.inverse().unwrap());
        prop_assert_eq!(x * x.inverse().unwrap(), k.one());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism((k, f, g, b) in field().prop_flat_map(|k| {
        (Just(k), poly_in(k, 12), poly_in(k, 12), 0..k.modulus() as u64)
    })) {
        let b = k.element(b);
        prop_assert_eq!(f.mul(&g).unwrap().eval(b), f.eval(b) * g.eval(b));
        prop_assert_eq!(f.add(&g).unwrap().eval(b), f.eval(b) + g.eval(b));
    }

    #[test]
    fn multiplicities_detect_roots_and_respect_the_degree((k, f) in prop::sample::select(&[5u64, 7, 13][..])
        .prop_flat_map(|p| {
            let k = PrimeField::new(p).unwrap();
            // products of linear factors give high multiplicities
            (Just(k), prop::collection::vec(0..p, 0..8), poly_in(k, 4))
        })
        .prop_map(|(k, roots, tail)| {
            let f = roots.iter().fold(tail, |acc, &r| acc.mul(&DensePolynomial::linear_factor(k.element(r))).unwrap());
            (k, f)
        })) {
        prop_assume!(!f.is_zero());
        let mut total = 0;
        for b in k.elements() {
            let m = f.root_multiplicity(b).unwrap();
            prop_assert_eq!(m >= 1, f.eval(b).is_zero());
            total += m;
        }
        prop_assert!(total <= f.degree().unwrap());
    }

    #[test]
    fn double_sums_are_symmetric_and_additive((a1, a2, b, order) in prop::sample::select(&[2u64, 4, 12][..])
        .prop_flat_map(|m| (subset(13, 7), subset(13, 7), subset(13, 7), Just(m)))) {
        let k = PrimeField::new(13).unwrap();
        let chi = CharacterTable::new(k, order).unwrap();
        let (a1, b) = (elements(k, &a1), elements(k, &b));
        let a2: Vec<FieldElement> = elements(k, &a2).into_iter().filter(|x| !a1.contains(x)).collect();
        let ab = char_sum_double(&chi, &a1, &b).unwrap();
        let ba = char_sum_double(&chi, &b, &a1).unwrap();
        prop_assert_eq!(&ab, &ba);
        let mut union = a1.clone();
        union.extend(&a2);
        let whole = char_sum_double(&chi, &union, &b).unwrap().value;
        let parts = ab.value + char_sum_double(&chi, &a2, &b).unwrap().value;
        prop_assert!((whole - parts).norm() < 1e-9);
    }

    #[test]
    fn quadratic_path_agrees_with_complex_path((a, b) in (subset(101, 30), subset(101, 30))) {
        let k = PrimeField::new(101).unwrap();
        let (a, b) = (elements(k, &a), elements(k, &b));
        let chi = CharacterTable::new(k, 2).unwrap();
        let exact = char_sum_double(&chi, &a, &b).unwrap();
        let mut complex = num_complex::Complex64::new(0.0, 0.0);
        for &x in &a {
            for &y in &b {
                complex += chi.value(x + y);
            }
        }
        prop_assert!((complex.re - exact.exact.unwrap() as f64).abs() < 1e-6);
        prop_assert!(complex.im.abs() < 1e-6);
    }
}

use gdk_core::gfield::{
    fixed_ring, galois_map_h, h_is_multiplicative, is_galois_extension, norm, trace, ExtField,
    GaloisExtension,
};
use gdk_core::group_core::FiniteGroup;
use proptest::prelude::*;

const TOWERS: [(u32, usize); 6] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)];

fn tower() -> impl Strategy<Value = (ExtField, u32, u32, u32)> {
    (0..TOWERS.len()).prop_flat_map(|i| {
        let (p, m) = TOWERS[i];
        let f = ExtField::new(p, m).unwrap();
        let q = f.size();
        (Just(f), 0..q, 0..q, 0..q)
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in tower()) {
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, u64::from(f.size() - 1)), 1);
        }
    }

    #[test]
    fn frobenius_is_a_ring_automorphism((f, a, b, _c) in tower()) {
        let fr = |x| f.frobenius(x, 1);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(f.frobenius(a, f.degree()), a);
    }

    #[test]
    fn trace_and_norm_land_in_the_prime_field((f, a, _b, _c) in tower()) {
        let x = GaloisExtension::tower_over(f).unwrap();
        prop_assert!(trace(&x, a).is_ok());
        prop_assert!(norm(&x, a).is_ok());
    }
}

#[test]
fn prime_subfield_is_the_frobenius_fixed_set() {
    for (p, m) in TOWERS {
        let f = ExtField::new(p, m).unwrap();
        let fixed = (0..f.size()).filter(|&e| f.frobenius(e, 1) == e).count();
        assert_eq!(fixed, p as usize);
        let x = GaloisExtension::tower(p, m).unwrap();
        assert_eq!(fixed_ring(&x).dim, 1);
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    for (p, m) in TOWERS {
        let f = ExtField::new(p, m).unwrap();
        let q = u64::from(f.size());
        let order = |a: u32| (1..q).find(|&k| f.pow(a, k) == 1).unwrap();
        assert!((1..f.size()).any(|a| order(a) == q - 1), "({p},{m})");
    }
}

#[test]
fn h_map_shapes() {
    for (p, m) in TOWERS {
        let x = GaloisExtension::tower(p, m).unwrap();
        let h = galois_map_h(&x);
        assert_eq!((h.domain_dim, h.codomain_dim, h.rank), (m * m, m * m, m * m));
        assert!(h_is_multiplicative(&x, &h));
    }
    let split = GaloisExtension::split(3, FiniteGroup::cyclic(3)).unwrap();
    assert!(is_galois_extension(&split).verdict);
    let fixed = GaloisExtension::trivially_acted(ExtField::new(3, 2).unwrap(), FiniteGroup::cyclic(2));
    let r = is_galois_extension(&fixed);
    assert!(!r.verdict && !r.h_bijective && !r.fixed_ring_iso);
}

#[test]
fn reducible_modulus_is_rejected() {
    assert!(ExtField::with_modulus(2, vec![1, 0, 1]).is_err());
    assert!(ExtField::with_modulus(2, vec![1, 1, 1]).is_ok());
}

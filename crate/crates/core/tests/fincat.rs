use gdk_core::fincat::action::{cocycles_brute, xi_invertible};
use gdk_core::fincat::fixtures::{self, powerset};
use gdk_core::fincat::morphism::cocycle_as_morphism;
use gdk_core::fincat::*;
use gdk_core::group_core::{FiniteGroup, GSet};
use proptest::prelude::*;

fn stable_subsets(s: &GSet) -> Vec<usize> {
    (0..1usize << s.size())
        .filter(|&mask| {
            (0..s.size())
                .filter(|&i| mask >> i & 1 == 1)
                .all(|i| s.group.elements().all(|g| mask >> s.act(g, i) & 1 == 1))
        })
        .collect()
}

fn two_orbits_z2() -> GSet {
    GSet::new(FiniteGroup::cyclic(2), vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2]]).unwrap()
}

#[test]
fn powerset_cocycles_are_stable_subsets() {
    for s in [
        GSet::regular(FiniteGroup::cyclic(2)),
        GSet::regular(FiniteGroup::cyclic(3)),
        two_orbits_z2(),
    ] {
        let p = powerset(&s).unwrap();
        let z1 = z1_category(&p.action).unwrap();
        let objs: Vec<usize> = z1.cocycles.iter().map(|c| c.obj).collect();
        assert_eq!(objs, stable_subsets(&s));
        let iso = cocycle_algebra_iso(&p.action, &p.coproducts).unwrap();
        assert!(iso.holds, "{iso:?}");
        assert_eq!(iso.algebras, stable_subsets(&s).len());
    }
}

#[test]
fn enumeration_agrees_with_brute_force() {
    let p = powerset(&two_orbits_z2()).unwrap();
    for a in [
        p.action,
        fixtures::negation_z3(),
        fixtures::chaotic_f4(),
        fixtures::discrete(&fixtures::random_g_set(&FiniteGroup::symmetric(3).unwrap(), 5, 3))
            .unwrap(),
    ] {
        let z1 = z1_category(&a).unwrap();
        assert_eq!(z1.cocycles, cocycles_brute(&a).unwrap());
        assert!(z1.cocycles.iter().all(|c| xi_invertible(&a, c)));
    }
}

/// Families obeying the composition law with `ξ_1` invertible already have `ξ_1 = 1`.
#[test]
fn unit_is_forced_by_the_law() {
    for a in [fixtures::negation_z3(), fixtures::chaotic_f4()] {
        let cat = &a.cat;
        let n = a.group.order();
        for x in 0..cat.objects() {
            let choices: Vec<&[usize]> = (0..n).map(|g| cat.hom(a.obj(g, x), x)).collect();
            let total: usize = choices.iter().map(|c| c.len()).product();
            for idx in 0..total {
                let mut rest = idx;
                let xi: Vec<usize> = choices
                    .iter()
                    .map(|c| {
                        let v = c[rest % c.len()];
                        rest /= c.len();
                        v
                    })
                    .collect();
                let law = (0..n).all(|h| {
                    (0..n).all(|g| xi[a.group.mul(h, g)] == cat.compose(xi[h], a.mor(h, xi[g])))
                });
                if law && cat.is_iso(xi[0]) {
                    assert_eq!(xi[0], cat.id(x));
                }
            }
        }
    }
}

#[test]
fn discrete_cocycles_are_fixed_points() {
    let g = FiniteGroup::symmetric(3).unwrap();
    for seed in 0..3 {
        let s = fixtures::random_g_set(&g, seed, 3);
        let a = fixtures::discrete(&s).unwrap();
        let z1 = z1_category(&a).unwrap();
        let fixed: Vec<usize> = (0..s.size())
            .filter(|&x| g.elements().all(|h| s.act(h, x) == x))
            .collect();
        assert_eq!(z1.cocycles.iter().map(|c| c.obj).collect::<Vec<_>>(), fixed);
        assert!(z1.cat.is_discrete());
    }
}

#[test]
fn discrete_with_top_algebras() {
    let g = FiniteGroup::cyclic(4);
    let s = fixtures::random_g_set(&g, 11, 3);
    let (a, cp) = fixtures::discrete_with_top(&s).unwrap();
    let t = build_g_monad(&a, &cp).unwrap();
    let em = em_category(&a.cat, &t).unwrap();
    let mut expected: Vec<usize> = (0..s.size())
        .filter(|&x| g.elements().all(|h| s.act(h, x) == x))
        .collect();
    expected.push(s.size());
    assert_eq!(em.algebras.iter().map(|x| x.carrier).collect::<Vec<_>>(), expected);
    assert!(cocycle_algebra_iso(&a, &cp).unwrap().holds);
}

#[test]
fn end_comparison_on_fixtures() {
    let p = powerset(&two_orbits_z2()).unwrap();
    for a in [p.action, fixtures::negation_z3(), fixtures::chaotic_f4()] {
        let z1 = z1_category(&a).unwrap();
        for c in &z1.cocycles {
            let iso = end_cocycle_iso(&a, c).unwrap();
            assert!(iso.holds, "{iso:?}");
            assert!(end_factorization_check(&a, c).unwrap().holds);
        }
        assert!(h1_decomposition(&a).unwrap().holds);
    }
}

#[test]
fn chaotic_end_action_matches_hand_table() {
    let a = fixtures::chaotic_f4();
    let z1 = z1_category(&a).unwrap();
    let c = z1.cocycles.iter().find(|c| c.obj == 0).unwrap();
    let end = induced_end_action(&a, c).unwrap();
    assert_eq!(end.elements.len(), 4);
    // conjugation by the swap acts on scalars by squaring
    let scalar = |k: usize| end.elements[k] % 4;
    let moved: Vec<usize> = (0..4).map(|k| scalar(end.monoid.act[1][k])).collect();
    let squares: Vec<usize> = (0..4).map(|k| [0, 2, 1, 3][scalar(k)]).collect();
    assert_eq!(moved, squares);
}

#[test]
fn cocycles_as_morphisms_from_one() {
    let a = fixtures::chaotic_f4();
    for c in cocycles_brute(&a).unwrap() {
        let (one, m) = cocycle_as_morphism(&a, &c);
        assert!(gcat_morphism_check(&one, &a, &m).is_valid());
    }
    let bad = CatCocycle {
        obj: 0,
        xi: vec![0, 4 + 3],
    };
    let (one, m) = cocycle_as_morphism(&a, &bad);
    assert!(!gcat_morphism_check(&one, &a, &m).is_valid());
}

#[test]
fn cocycle_composed_with_g_functor() {
    let a = fixtures::chaotic_f4();
    let z1 = z1_category(&a).unwrap();
    let swap = GCatMorphism::strict(a.actors[1].clone(), &a);
    assert!(gcat_morphism_check(&a, &a, &swap).is_valid());
    for c in &z1.cocycles {
        let (one, m) = cocycle_as_morphism(&a, c);
        let comp = compose_gcat_morphisms(&swap, &m, &a.cat);
        assert!(gcat_morphism_check(&one, &a, &comp).is_valid());
        let image = CatCocycle {
            obj: comp.functor.omap[0],
            xi: comp.xi.iter().map(|r| r[0]).collect(),
        };
        assert!(z1.index_of(&image).is_some());
        let again = compose_gcat_morphisms(&swap, &comp, &a.cat);
        let assoc = compose_gcat_morphisms(
            &compose_gcat_morphisms(&swap, &swap, &a.cat),
            &m,
            &a.cat,
        );
        assert_eq!(again, assoc);
        assert_eq!(again, m);
    }
}

#[test]
fn broken_composition_law_is_named() {
    let a = fixtures::chaotic_f4();
    let (one, mut m) = cocycle_as_morphism(&a, &CatCocycle::trivial(&a, 0));
    m.xi[1] = vec![4 + 3];
    let r = gcat_morphism_check(&one, &a, &m);
    assert_eq!(r.first("composition").unwrap().witness, vec![1, 1, 0]);
}

#[test]
fn orbit_monad_comparison_recovers_cocycles() {
    let p = powerset(&GSet::regular(FiniteGroup::cyclic(3))).unwrap();
    let t = build_g_monad(&p.action, &p.coproducts).unwrap();
    let z1 = z1_category(&p.action).unwrap();
    let em = em_category(&p.action.cat, &t).unwrap();
    for alg in &em.algebras {
        let c = comparison_k_gamma(&p.action, &t, alg).unwrap();
        assert!(z1.index_of(&c).is_some());
    }
    let full = 7;
    let alg = EMAlgebra {
        carrier: full,
        structure: p.action.cat.id(full),
    };
    let c = comparison_k_gamma(&p.action, &t, &alg).unwrap();
    assert!(c.xi.iter().all(|&m| m == p.includes(full, full)));
}

#[test]
fn trivial_group_monad_and_gamma() {
    let p = powerset(&GSet::trivial(FiniteGroup::trivial(), 2)).unwrap();
    let id = FinMonad::identity(&p.action.cat);
    let gm = gamma_monad_morphism(&p.action, &p.coproducts, &id).unwrap();
    assert!(gm.report.is_valid());
    assert!(is_galois_monad(&p.action, &p.coproducts, &id).unwrap().galois);
    let (a, cp) = fixtures::terminal(&FiniteGroup::cyclic(3));
    let iso = cocycle_algebra_iso(&a, &cp).unwrap();
    assert!(iso.holds);
    assert_eq!(iso.cocycles, 1);
}

#[test]
fn fixture_json_round_trip() {
    let p = powerset(&GSet::regular(FiniteGroup::cyclic(2))).unwrap();
    let text = serde_json::to_string(&p.fixture()).unwrap();
    let back: MonadFixture = serde_json::from_str(&text).unwrap();
    let report = monad_check(&back).unwrap();
    assert!(report.holds && report.galois.galois);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discrete_z1_matches_fixed_points(seed in 0u64..10_000, orbits in 1usize..4) {
        let g = FiniteGroup::cyclic(6);
        let s = fixtures::random_g_set(&g, seed, orbits);
        let a = fixtures::discrete(&s).unwrap();
        prop_assert!(check_g_category(&a).is_valid());
        let z1 = z1_category(&a).unwrap();
        let fixed = (0..s.size()).filter(|&x| g.elements().all(|h| s.act(h, x) == x)).count();
        prop_assert_eq!(z1.cocycles.len(), fixed);
        prop_assert!(h1_decomposition(&a).unwrap().holds);
    }

    #[test]
    fn powerset_orbit_monad_laws(seed in 0u64..10_000) {
        let g = FiniteGroup::cyclic(2);
        let s = fixtures::random_g_set(&g, seed, 2);
        prop_assume!(s.size() <= 4);
        let p = powerset(&s).unwrap();
        let t = build_g_monad(&p.action, &p.coproducts).unwrap();
        prop_assert!(check_monad(&p.action.cat, &t).is_valid());
        prop_assert!(cocycle_algebra_iso(&p.action, &p.coproducts).unwrap().holds);
        prop_assert!(is_galois_monad(&p.action, &p.coproducts, &t).unwrap().galois);
    }
}

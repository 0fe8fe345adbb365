//! Standard finite G-categories used by tests, the self-test and the CLI.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::action::GCatAction;
use super::category::{FinCategory, FinFunctor};
use super::monad::{FinMonad, GCoproducts, MonadFixture};
use crate::error::{invalid, Result};
use crate::group_core::{FiniteGroup, GSet};

/// Subsets of a G-set ordered by inclusion, with union as coproduct.
/// Objects are bitmasks; the morphism `a ⊆ b` exists once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Powerset {
    pub action: GCatAction,
    pub coproducts: GCoproducts,
    pub inclusion: HashMap<(usize, usize), usize>,
}

impl Powerset {
    pub fn includes(&self, a: usize, b: usize) -> usize {
        self.inclusion[&(a, b)]
    }

    pub fn fixture(&self) -> MonadFixture {
        MonadFixture {
            action: self.action.to_json(),
            coproducts: self.coproducts.clone(),
            monad: None,
        }
    }

    /// `T(X) = S` for every `X`: G-invariant, but `γ` fails to be
    /// invertible wherever the orbit union of `X` is not all of `S`.
    pub fn constant_monad(&self) -> FinMonad {
        let cat = &self.action.cat;
        let full = cat.objects() - 1;
        let top = cat.id(full);
        FinMonad {
            t: FinFunctor {
                omap: vec![full; cat.objects()],
                mmap: vec![top; cat.morphisms()],
            },
            eta: (0..cat.objects()).map(|x| self.includes(x, full)).collect(),
            mu: vec![top; cat.objects()],
        }
    }
}

fn image(s: &GSet, g: usize, mask: usize) -> usize {
    (0..s.size())
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << s.act(g, i))
}

pub fn powerset(s: &GSet) -> Result<Powerset> {
    if s.size() > 6 {
        return Err(invalid("powerset fixture supports at most 6 points"));
    }
    let objects = 1usize << s.size();
    let mut arrows = Vec::new();
    for a in 0..objects {
        for b in 0..objects {
            if a & b == a {
                arrows.push((a, b));
            }
        }
    }
    let inclusion: HashMap<(usize, usize), usize> =
        arrows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let id = (0..objects).map(|x| inclusion[&(x, x)]).collect();
    let cat = FinCategory::new(objects, &arrows, id, |f, g| {
        inclusion[&(arrows[g].0, arrows[f].1)]
    })?;
    let group = s.group.clone();
    let actors = group
        .elements()
        .map(|g| FinFunctor {
            omap: (0..objects).map(|x| image(s, g, x)).collect(),
            mmap: arrows
                .iter()
                .map(|&(a, b)| inclusion[&(image(s, g, a), image(s, g, b))])
                .collect(),
        })
        .collect();
    let action = GCatAction::new(group.clone(), cat, actors)?;
    let mut apex = Vec::with_capacity(objects);
    let mut inj = Vec::with_capacity(objects);
    for y in 0..objects {
        let join = group.elements().fold(0, |acc, g| acc | image(s, g, y));
        apex.push(Some(join));
        inj.push(
            group
                .elements()
                .map(|g| inclusion[&(image(s, g, y), join)])
                .collect(),
        );
    }
    Ok(Powerset {
        action,
        coproducts: GCoproducts { apex, inj },
        inclusion,
    })
}

/// The points of a G-set as a discrete G-category.
pub fn discrete(s: &GSet) -> Result<GCatAction> {
    let cat = FinCategory::discrete(s.size())?;
    let actors = s
        .group
        .elements()
        .map(|g| FinFunctor {
            omap: s.act[g].clone(),
            mmap: s.act[g].clone(),
        })
        .collect();
    GCatAction::new(s.group.clone(), cat, actors)
}

/// A discrete G-category with a terminal object `⊤` adjoined, so that every
/// orbit family has a coproduct: a fixed point is its own coproduct and any
/// other family has coproduct `⊤`. Morphism `x` is `1_x`; morphism
/// `n + 1 + x` is `x → ⊤`.
pub fn discrete_with_top(s: &GSet) -> Result<(GCatAction, GCoproducts)> {
    let n = s.size();
    let top = n;
    let mut arrows: Vec<(usize, usize)> = (0..=n).map(|x| (x, x)).collect();
    arrows.extend((0..n).map(|x| (x, top)));
    let to_top = |x: usize| if x == top { top } else { n + 1 + x };
    let cat = FinCategory::new(n + 1, &arrows, (0..=n).collect(), |f, g| {
        if f <= n {
            g
        } else if g <= n {
            f
        } else {
            unreachable!("two arrows into ⊤ never compose")
        }
    })?;
    let actors = s
        .group
        .elements()
        .map(|g| {
            let omap: Vec<usize> = (0..=n).map(|x| if x == top { top } else { s.act(g, x) }).collect();
            let mmap = arrows
                .iter()
                .enumerate()
                .map(|(k, &(x, _))| if k <= n { omap[x] } else { to_top(omap[x]) })
                .collect();
            FinFunctor { omap, mmap }
        })
        .collect();
    let action = GCatAction::new(s.group.clone(), cat, actors)?;
    let mut apex = Vec::with_capacity(n + 1);
    let mut inj = Vec::with_capacity(n + 1);
    for y in 0..=n {
        let fixed = y == top || s.group.elements().all(|g| s.act(g, y) == y);
        if fixed {
            apex.push(Some(y));
            inj.push(vec![y; s.group.order()]);
        } else {
            apex.push(Some(top));
            inj.push(s.group.elements().map(|g| to_top(s.act(g, y))).collect());
        }
    }
    Ok((action, GCoproducts { apex, inj }))
}

/// Disjoint union of coset spaces `G/H` for randomly generated subgroups `H`.
pub fn random_g_set(group: &FiniteGroup, seed: u64, orbits: usize) -> GSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut act: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
    for _ in 0..orbits {
        let gens: Vec<usize> = group.elements().filter(|_| rng.gen_bool(0.3)).collect();
        let h = group.closure(&gens);
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for x in group.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &k in &h {
                coset_of[group.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
        let base = act[0].len();
        for g in group.elements() {
            for &r in &reps {
                act[g].push(base + coset_of[group.mul(g, r)]);
            }
        }
    }
    GSet {
        group: group.clone(),
        act,
    }
}

/// `Z/3` as a one-object category, with `Z/2` acting by negation.
pub fn negation_z3() -> GCatAction {
    let z3 = FiniteGroup::cyclic(3).table();
    let cat = FinCategory::from_monoid(&z3).expect("cyclic group is a monoid");
    let neg = FinFunctor {
        omap: vec![0],
        mmap: vec![0, 2, 1],
    };
    let id = FinFunctor::identity(&cat);
    GCatAction::new(FiniteGroup::cyclic(2), cat, vec![id, neg]).expect("well-formed")
}

/// Multiplicative monoid of `F_4`: index 0 is `1`, 1 is `ω`, 2 is `ω²`, 3 is `0`.
fn f4_mul(a: usize, b: usize) -> usize {
    if a == 3 || b == 3 {
        3
    } else {
        (a + b) % 3
    }
}

/// Two objects, with `hom(x, y)` a copy of the multiplicative monoid of
/// `F_4` for every pair. `Z/2` swaps the objects and squares scalars.
/// Morphism `(y, x, m)` has index `(2y + x)·4 + m`.
pub fn chaotic_f4() -> GCatAction {
    let idx = |y: usize, x: usize, m: usize| (2 * y + x) * 4 + m;
    let mut arrows = vec![(0, 0); 16];
    for y in 0..2 {
        for x in 0..2 {
            for m in 0..4 {
                arrows[idx(y, x, m)] = (x, y);
            }
        }
    }
    let parts = |k: usize| (k / 8, (k / 4) % 2, k % 4);
    let cat = FinCategory::new(2, &arrows, vec![idx(0, 0, 0), idx(1, 1, 0)], |f, g| {
        let (z, _, m) = parts(f);
        let (_, x, n) = parts(g);
        idx(z, x, f4_mul(m, n))
    })
    .expect("chaotic category");
    let square = [0, 2, 1, 3];
    let swap = FinFunctor {
        omap: vec![1, 0],
        mmap: (0..16)
            .map(|k| {
                let (y, x, m) = parts(k);
                idx(1 - y, 1 - x, square[m])
            })
            .collect(),
    };
    let id = FinFunctor::identity(&cat);
    GCatAction::new(FiniteGroup::cyclic(2), cat, vec![id, swap]).expect("well-formed")
}

/// The category `1` under any group.
pub fn terminal(group: &FiniteGroup) -> (GCatAction, GCoproducts) {
    let a = GCatAction::trivial(group.clone(), FinCategory::terminal());
    let cp = GCoproducts {
        apex: vec![Some(0)],
        inj: vec![vec![0; group.order()]],
    };
    (a, cp)
}

/// `Z/3` on three discrete points with `1(-)` and `2(-)` both the swap of
/// the first two points, so `(1·1)(-) ≠ 1(-)1(-)`.
pub fn broken_action() -> GCatAction {
    let cat = FinCategory::discrete(3).expect("discrete");
    let swap = FinFunctor {
        omap: vec![1, 0, 2],
        mmap: vec![1, 0, 2],
    };
    GCatAction {
        group: FiniteGroup::cyclic(3),
        actors: vec![FinFunctor::identity(&cat), swap.clone(), swap],
        cat,
    }
}

/// The powerset of `Z/2` with the coproduct of the orbit of `{0}` removed.
pub fn broken_coproducts() -> MonadFixture {
    let p = powerset(&GSet::regular(FiniteGroup::cyclic(2))).expect("small powerset");
    let mut fixture = p.fixture();
    fixture.coproducts.apex[1] = None;
    fixture.coproducts.inj[1].clear();
    fixture
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::action::{check_g_category, z1_category};
    use crate::fincat::monad::check_coproducts;

    #[test]
    fn powerset_is_a_g_category_with_coproducts() {
        let p = powerset(&GSet::regular(FiniteGroup::cyclic(2))).unwrap();
        assert!(check_g_category(&p.action).is_valid());
        assert!(check_coproducts(&p.action, &p.coproducts).unwrap().is_valid());
        assert_eq!(p.action.cat.morphisms(), 9);
    }

    #[test]
    fn discrete_with_top_is_valid() {
        let s = random_g_set(&FiniteGroup::cyclic(4), 3, 2);
        let (a, cp) = discrete_with_top(&s).unwrap();
        assert!(check_g_category(&a).is_valid());
        assert!(check_coproducts(&a, &cp).unwrap().is_valid());
    }

    #[test]
    fn random_g_sets_are_valid() {
        for seed in 0..10 {
            let g = FiniteGroup::symmetric(3).unwrap();
            let s = random_g_set(&g, seed, 3);
            assert!(s.check().is_valid(), "seed {seed}");
            assert!(check_g_category(&discrete(&s).unwrap()).is_valid());
        }
    }

    #[test]
    fn chaotic_f4_has_three_cocycles_per_object() {
        let a = chaotic_f4();
        assert!(check_g_category(&a).is_valid());
        let z1 = z1_category(&a).unwrap();
        assert_eq!(z1.cocycles.iter().filter(|c| c.obj == 0).count(), 3);
        assert_eq!(z1.cocycles.len(), 6);
    }

    #[test]
    fn broken_action_fails() {
        assert!(check_g_category(&broken_action()).has("composition"));
    }
}

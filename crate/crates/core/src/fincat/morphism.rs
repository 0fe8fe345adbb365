use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::action::{
    check_g_category, end_cocycle_iso_with, induced_end_action, z1_category, CatCocycle,
    GCatAction,
};
use super::category::{check_functor, FinCategory, FinFunctor};
use crate::error::{Error, Result};
use crate::report::Report;

/// A functor `F` with isomorphisms `ξ[g][C]: gF(C) → F(gC)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GCatMorphism {
    pub functor: FinFunctor,
    pub xi: Vec<Vec<usize>>,
}

impl GCatMorphism {
    pub fn identity(a: &GCatAction) -> Self {
        Self::strict(FinFunctor::identity(&a.cat), a)
    }

    /// A strict G-functor, with every `ξ` an identity.
    pub fn strict(functor: FinFunctor, dst: &GCatAction) -> Self {
        let xi = dst
            .group
            .elements()
            .map(|g| {
                functor
                    .omap
                    .iter()
                    .map(|&x| dst.cat.id(dst.obj(g, x)))
                    .collect()
            })
            .collect();
        Self { functor, xi }
    }
}

/// Source `1` with the trivial action, and the morphism `1 → X` that a
/// cocycle determines.
pub fn cocycle_as_morphism(a: &GCatAction, c: &CatCocycle) -> (GCatAction, GCatMorphism) {
    let one = GCatAction::trivial(a.group.clone(), FinCategory::terminal());
    let m = GCatMorphism {
        functor: FinFunctor {
            omap: vec![c.obj],
            mmap: vec![a.cat.id(c.obj)],
        },
        xi: c.xi.iter().map(|&x| vec![x]).collect(),
    };
    (one, m)
}

/// Typing, unit, `ξ_{hg,C} = ξ_{h,gC} ∘ h(ξ_{g,C})`, naturality in `C` and
/// invertibility.
pub fn gcat_morphism_check(src: &GCatAction, dst: &GCatAction, m: &GCatMorphism) -> Report {
    let mut report = Report::new();
    let (c, d) = (&src.cat, &dst.cat);
    let f = &m.functor;
    let n = src.group.order();
    if dst.group.order() != n
        || m.xi.len() != n
        || m.xi.iter().any(|r| r.len() != c.objects() || r.iter().any(|&x| x >= d.morphisms()))
    {
        report.push("shape", vec![]);
        return report;
    }
    if !check_functor(c, d, f).is_valid() {
        report.push("functor", vec![]);
        return report;
    }
    for g in 0..n {
        for x in 0..c.objects() {
            let e = m.xi[g][x];
            if d.src(e) != dst.obj(g, f.omap[x]) || d.dst(e) != f.omap[src.obj(g, x)] {
                report.push("typing", vec![g, x]);
            }
        }
    }
    if !report.is_valid() {
        return report;
    }
    for x in 0..c.objects() {
        if m.xi[0][x] != d.id(f.omap[x]) {
            report.push("unit", vec![x]);
        }
    }
    for h in 0..n {
        for g in 0..n {
            let hg = src.group.mul(h, g);
            for x in 0..c.objects() {
                let rhs = d.compose(m.xi[h][src.obj(g, x)], dst.mor(h, m.xi[g][x]));
                if m.xi[hg][x] != rhs {
                    report.push("composition", vec![h, g, x]);
                }
            }
        }
    }
    for g in 0..n {
        for u in 0..c.morphisms() {
            let (x, y) = (c.src(u), c.dst(u));
            let lhs = d.compose(f.mmap[src.mor(g, u)], m.xi[g][x]);
            let rhs = d.compose(m.xi[g][y], dst.mor(g, f.mmap[u]));
            if lhs != rhs {
                report.push("naturality", vec![g, u]);
            }
        }
        for x in 0..c.objects() {
            if !d.is_iso(m.xi[g][x]) {
                report.push("invertible", vec![g, x]);
            }
        }
    }
    report
}

/// `(F̲, ξ̲) ⊗ (F, ξ) = (F̲F, F̲(ξ_{g,C}) ∘ ξ̲_{g,F(C)})`.
pub fn compose_gcat_morphisms(
    outer: &GCatMorphism,
    inner: &GCatMorphism,
    target: &FinCategory,
) -> GCatMorphism {
    let functor = outer.functor.after(&inner.functor);
    let xi = inner
        .xi
        .iter()
        .zip(&outer.xi)
        .map(|(row, orow)| {
            row.iter()
                .enumerate()
                .map(|(x, &e)| target.compose(outer.functor.mmap[e], orow[inner.functor.omap[x]]))
                .collect()
        })
        .collect();
    GCatMorphism { functor, xi }
}

/// Whether natural `f: F → F'` satisfies `f_{gC} ∘ ξ_{g,C} = ξ'_{g,C} ∘ g(f_C)`.
pub fn is_modification(
    src: &GCatAction,
    dst: &GCatAction,
    from: &GCatMorphism,
    to: &GCatMorphism,
    f: &[usize],
) -> bool {
    let (c, d) = (&src.cat, &dst.cat);
    if f.len() != c.objects() {
        return false;
    }
    let typed = (0..c.objects()).all(|x| {
        f[x] < d.morphisms()
            && d.src(f[x]) == from.functor.omap[x]
            && d.dst(f[x]) == to.functor.omap[x]
    });
    if !typed {
        return false;
    }
    let natural = (0..c.morphisms()).all(|u| {
        d.compose(f[c.dst(u)], from.functor.mmap[u]) == d.compose(to.functor.mmap[u], f[c.src(u)])
    });
    natural
        && src.group.elements().all(|g| {
            (0..c.objects()).all(|x| {
                d.compose(f[src.obj(g, x)], from.xi[g][x])
                    == d.compose(to.xi[g][x], dst.mor(g, f[x]))
            })
        })
}

/// `fact(F)` with its action and the two factors. Morphisms of `fact(F)`
/// are `arrows[k] = (C, C', d)` with `d: F(C) → F(C')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub fact: GCatAction,
    pub arrows: Vec<(usize, usize, usize)>,
    pub first: GCatMorphism,
    pub second: GCatMorphism,
    pub composite_matches: bool,
    pub fact_valid: bool,
    pub factors_valid: bool,
}

pub fn canonical_factorization(
    src: &GCatAction,
    dst: &GCatAction,
    m: &GCatMorphism,
) -> Result<Factorization> {
    let check = gcat_morphism_check(src, dst, m);
    if let Some(v) = check.violations.first() {
        return Err(Error::Precondition(format!(
            "not a morphism of G-categories: {} at {:?}",
            v.law, v.witness
        )));
    }
    let (c, d) = (&src.cat, &dst.cat);
    let f = &m.functor;
    let mut arrows = Vec::new();
    for x in 0..c.objects() {
        for y in 0..c.objects() {
            for &e in d.hom(f.omap[x], f.omap[y]) {
                arrows.push((x, y, e));
            }
        }
    }
    let index: HashMap<(usize, usize, usize), usize> =
        arrows.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let pairs: Vec<(usize, usize)> = arrows.iter().map(|&(x, y, _)| (x, y)).collect();
    let id = (0..c.objects())
        .map(|x| index[&(x, x, d.id(f.omap[x]))])
        .collect();
    let fact_cat = FinCategory::new(c.objects(), &pairs, id, |p, q| {
        let (x, _, e1) = arrows[q];
        let (_, z, e2) = arrows[p];
        index[&(x, z, d.compose(e2, e1))]
    })?;
    let inverses: Vec<Vec<usize>> = m
        .xi
        .iter()
        .map(|row| row.iter().map(|&e| d.inverse(e).expect("checked invertible")).collect())
        .collect();
    let actors = src
        .group
        .elements()
        .map(|g| {
            let mmap = arrows
                .iter()
                .map(|&(x, y, e)| {
                    let moved = d.compose(m.xi[g][y], d.compose(dst.mor(g, e), inverses[g][x]));
                    index[&(src.obj(g, x), src.obj(g, y), moved)]
                })
                .collect();
            FinFunctor {
                omap: src.actors[g].omap.clone(),
                mmap,
            }
        })
        .collect();
    let fact = GCatAction::new(src.group.clone(), fact_cat, actors)?;
    let first_functor = FinFunctor {
        omap: (0..c.objects()).collect(),
        mmap: (0..c.morphisms())
            .map(|u| index[&(c.src(u), c.dst(u), f.mmap[u])])
            .collect(),
    };
    let first = GCatMorphism::strict(first_functor, &fact);
    let second = GCatMorphism {
        functor: FinFunctor {
            omap: f.omap.clone(),
            mmap: arrows.iter().map(|&(_, _, e)| e).collect(),
        },
        xi: m.xi.clone(),
    };
    let composite = compose_gcat_morphisms(&second, &first, d);
    let factors_valid = gcat_morphism_check(src, &fact, &first).is_valid()
        && gcat_morphism_check(&fact, dst, &second).is_valid();
    Ok(Factorization {
        fact_valid: check_g_category(&fact).is_valid(),
        composite_matches: composite == *m,
        factors_valid,
        fact,
        arrows,
        first,
        second,
    })
}

/// `Z¹(G, (F, ξ))`: `(C, ζ) ↦ (F(C), (F(ζ_g) ∘ ξ_{g,C})_g)` and `u ↦ F(u)`,
/// as index maps between the two cocycle categories.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Z1FunctorTable {
    pub omap: Vec<usize>,
    pub mmap: Vec<usize>,
    pub functorial: bool,
}

pub fn z1_functor(
    src: &GCatAction,
    dst: &GCatAction,
    m: &GCatMorphism,
) -> Result<Z1FunctorTable> {
    let zs = z1_category(src)?;
    let zd = z1_category(dst)?;
    let d = &dst.cat;
    let f = &m.functor;
    let mut omap = Vec::with_capacity(zs.cocycles.len());
    for c in &zs.cocycles {
        let xi = src
            .group
            .elements()
            .map(|g| d.compose(f.mmap[c.xi[g]], m.xi[g][c.obj]))
            .collect();
        let image = CatCocycle {
            obj: f.omap[c.obj],
            xi,
        };
        omap.push(zd.index_of(&image).ok_or_else(|| {
            Error::Verification("image of a cocycle is not a cocycle".into())
        })?);
    }
    let arrow: HashMap<(usize, usize, usize), usize> = (0..zd.cat.morphisms())
        .map(|k| ((zd.cat.src(k), zd.cat.dst(k), zd.underlying[k]), k))
        .collect();
    let mut mmap = Vec::with_capacity(zs.cat.morphisms());
    for k in 0..zs.cat.morphisms() {
        let key = (
            omap[zs.cat.src(k)],
            omap[zs.cat.dst(k)],
            f.mmap[zs.underlying[k]],
        );
        mmap.push(arrow.get(&key).copied().ok_or_else(|| {
            Error::Verification("image of a cocycle morphism is not a morphism".into())
        })?);
    }
    let table = FinFunctor { omap, mmap };
    let functorial = check_functor(&zs.cat, &zd.cat, &table).is_valid();
    Ok(Z1FunctorTable {
        omap: table.omap,
        mmap: table.mmap,
        functorial,
    })
}

/// Factorization of the morphism `1 → X` of a cocycle, checked against the
/// End-monoid picture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndFactorizationCheck {
    /// `fact(F)` is `End(X)`: same elements and composition.
    pub monoid_matches: bool,
    /// The induced action on `fact(F)` is the conjugation action on `End(X)`.
    pub action_matches: bool,
    /// `Z¹(G, (F², ξ²))` agrees with the End-cocycle comparison functor.
    pub z1_functor_matches: bool,
    pub holds: bool,
}

pub fn end_factorization_check(a: &GCatAction, c: &CatCocycle) -> Result<EndFactorizationCheck> {
    let (one, m) = cocycle_as_morphism(a, c);
    let fac = canonical_factorization(&one, a, &m)?;
    let end = induced_end_action(a, c)?;
    let fact = &fac.fact;
    let underlying = |k: usize| fac.arrows[k].2;
    let to_fact: HashMap<usize, usize> =
        (0..fact.cat.morphisms()).map(|k| (underlying(k), k)).collect();
    let n = end.elements.len();
    let mut monoid_matches = fact.cat.morphisms() == n
        && end.elements.iter().all(|e| to_fact.contains_key(e))
        && fac.composite_matches
        && fac.fact_valid
        && fac.factors_valid;
    let mut action_matches = monoid_matches;
    if monoid_matches {
        for i in 0..n {
            for j in 0..n {
                let fk = fact
                    .cat
                    .compose(to_fact[&end.elements[i]], to_fact[&end.elements[j]]);
                monoid_matches &= underlying(fk) == end.elements[end.monoid.coeff.mul(i, j)];
            }
            for g in a.group.elements() {
                let moved = fact.mor(g, to_fact[&end.elements[i]]);
                action_matches &= underlying(moved) == end.elements[end.monoid.act[g][i]];
            }
        }
    }
    let mut z1_functor_matches = false;
    if monoid_matches && action_matches {
        let z1 = z1_category(a)?;
        let iso = end_cocycle_iso_with(a, c, &end, &z1)?;
        let via_fact = z1_functor(fact, a, &fac.second)?;
        let zf = z1_category(fact)?;
        let (_, cocycles, _) = super::action::monoid_z1_category(&end.monoid)?;
        z1_functor_matches = via_fact.functorial && zf.cocycles.len() == cocycles.len();
        for (i, phi) in cocycles.iter().enumerate() {
            let zeta = CatCocycle {
                obj: 0,
                xi: phi.iter().map(|&u| to_fact[&end.elements[u]]).collect(),
            };
            match zf.index_of(&zeta) {
                Some(k) => z1_functor_matches &= via_fact.omap[k] == iso.object_map[i],
                None => z1_functor_matches = false,
            }
        }
    }
    Ok(EndFactorizationCheck {
        monoid_matches,
        action_matches,
        z1_functor_matches,
        holds: monoid_matches && action_matches && z1_functor_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::FiniteGroup;

    fn swap_discrete() -> GCatAction {
        let cat = FinCategory::discrete(2).unwrap();
        let swap = FinFunctor {
            omap: vec![1, 0],
            mmap: vec![1, 0],
        };
        GCatAction::new(
            FiniteGroup::cyclic(2),
            cat.clone(),
            vec![FinFunctor::identity(&cat), swap],
        )
        .unwrap()
    }

    #[test]
    fn identity_and_strict_morphisms_valid() {
        let a = swap_discrete();
        let id = GCatMorphism::identity(&a);
        assert!(gcat_morphism_check(&a, &a, &id).is_valid());
        let swap = GCatMorphism::strict(a.actors[1].clone(), &a);
        assert!(gcat_morphism_check(&a, &a, &swap).is_valid());
        let both = compose_gcat_morphisms(&swap, &swap, &a.cat);
        assert_eq!(both, id);
        assert_eq!(compose_gcat_morphisms(&id, &swap, &a.cat), swap);
    }

    #[test]
    fn non_equivariant_functor_rejected() {
        let a = swap_discrete();
        let constant = FinFunctor {
            omap: vec![0, 0],
            mmap: vec![0, 0],
        };
        let m = GCatMorphism::strict(constant, &a);
        let r = gcat_morphism_check(&a, &a, &m);
        assert!(r.has("typing"));
    }

    #[test]
    fn modification_identity() {
        let a = swap_discrete();
        let id = GCatMorphism::identity(&a);
        assert!(is_modification(&a, &a, &id, &id, &[0, 1]));
        assert!(!is_modification(&a, &a, &id, &id, &[1, 0]));
    }

    #[test]
    fn factorization_of_identity() {
        let a = swap_discrete();
        let fac = canonical_factorization(&a, &a, &GCatMorphism::identity(&a)).unwrap();
        assert!(fac.composite_matches && fac.fact_valid && fac.factors_valid);
        assert_eq!(fac.fact.cat.morphisms(), 2);
    }
}

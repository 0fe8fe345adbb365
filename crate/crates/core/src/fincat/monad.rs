use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::action::{cocycle_check, z1_category, ActionJson, CatCocycle, GCatAction};
use super::category::{check_functor, FinCategory, FinFunctor};
use crate::error::{invalid, Error, Result};
use crate::guard;
use crate::report::Report;

/// Chosen coproducts of the families `(gY)_{g ∈ G}`: `apex[Y]` with
/// injections `inj[Y][g]: gY → apex[Y]`. Absent entries are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GCoproducts {
    pub apex: Vec<Option<usize>>,
    pub inj: Vec<Vec<usize>>,
}

impl GCoproducts {
    fn apex_of(&self, y: usize) -> Result<usize> {
        self.apex
            .get(y)
            .copied()
            .flatten()
            .ok_or_else(|| Error::MissingCoproduct(format!("no coproduct for the orbit family of object {y}")))
    }

    fn injections(&self, y: usize) -> Result<&[usize]> {
        self.apex_of(y)?;
        self.inj
            .get(y)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingCoproduct(format!("no injections for object {y}")))
    }
}

/// Every morphism `m: apex → z` with `m ∘ inj_g = legs[g]` for all `g`.
fn mediators(cat: &FinCategory, apex: usize, inj: &[usize], z: usize, legs: &[usize]) -> Vec<usize> {
    cat.hom(apex, z)
        .iter()
        .copied()
        .filter(|&m| inj.iter().zip(legs).all(|(&i, &l)| cat.compose(m, i) == l))
        .collect()
}

fn unique(found: Vec<usize>, what: impl FnOnce() -> String) -> Result<usize> {
    match found.as_slice() {
        [m] => Ok(*m),
        [] => Err(Error::Verification(format!("no mediating morphism for {}", what()))),
        _ => Err(Error::Verification(format!("mediating morphism not unique for {}", what()))),
    }
}

/// The unique morphism out of the coproduct over `y` into `z` with the given legs.
pub fn mediate(a: &GCatAction, cp: &GCoproducts, y: usize, z: usize, legs: &[usize]) -> Result<usize> {
    let apex = cp.apex_of(y)?;
    let inj = cp.injections(y)?;
    unique(mediators(&a.cat, apex, inj, z, legs), || format!("object {y} into {z}"))
}

/// Typing of every injection, then the universal property against every
/// cocone into every object.
pub fn check_coproducts(a: &GCatAction, cp: &GCoproducts) -> Result<Report> {
    let cat = &a.cat;
    let n = a.group.order();
    let mut report = Report::new();
    if cp.apex.len() != cat.objects() {
        report.push("shape", vec![]);
        return Ok(report);
    }
    for y in 0..cat.objects() {
        let Some(apex) = cp.apex[y] else { continue };
        let inj = cp.inj.get(y).map(Vec::as_slice).unwrap_or(&[]);
        if apex >= cat.objects() || inj.len() != n || inj.iter().any(|&i| i >= cat.morphisms()) {
            report.push("shape", vec![y]);
            continue;
        }
        let mut typed = true;
        for g in 0..n {
            if cat.src(inj[g]) != a.obj(g, y) || cat.dst(inj[g]) != apex {
                report.push("injection_typing", vec![y, g]);
                typed = false;
            }
        }
        if !typed {
            continue;
        }
        for z in 0..cat.objects() {
            let choices: Vec<&[usize]> = (0..n).map(|g| cat.hom(a.obj(g, y), z)).collect();
            let total: u128 = choices.iter().map(|c| c.len() as u128).product();
            guard::check("coproduct cocones", total, guard::CAT_FAMILIES)?;
            for idx in 0..total {
                let mut rest = idx;
                let legs: Vec<usize> = choices
                    .iter()
                    .map(|c| {
                        let v = c[(rest % c.len() as u128) as usize];
                        rest /= c.len() as u128;
                        v
                    })
                    .collect();
                let found = mediators(cat, apex, inj, z, &legs);
                if found.len() != 1 {
                    report.push("universal", vec![y, z, idx as usize]);
                }
            }
        }
    }
    Ok(report)
}

/// `(T, η, μ)` on a finite category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinMonad {
    pub t: FinFunctor,
    pub eta: Vec<usize>,
    pub mu: Vec<usize>,
}

impl FinMonad {
    pub fn identity(cat: &FinCategory) -> Self {
        let ids: Vec<usize> = (0..cat.objects()).map(|x| cat.id(x)).collect();
        Self {
            t: FinFunctor::identity(cat),
            eta: ids.clone(),
            mu: ids,
        }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.t.omap[x]
    }
}

/// Functor laws, typing and naturality of `η` and `μ`, unit laws and
/// associativity, over every object and morphism.
pub fn check_monad(cat: &FinCategory, m: &FinMonad) -> Report {
    let mut report = Report::new();
    if m.eta.len() != cat.objects()
        || m.mu.len() != cat.objects()
        || m.eta.iter().chain(&m.mu).any(|&e| e >= cat.morphisms())
    {
        report.push("shape", vec![]);
        return report;
    }
    if !check_functor(cat, cat, &m.t).is_valid() {
        report.push("functor", vec![]);
        return report;
    }
    let t = |x: usize| m.t.omap[x];
    for x in 0..cat.objects() {
        if cat.src(m.eta[x]) != x || cat.dst(m.eta[x]) != t(x) {
            report.push("eta_typing", vec![x]);
        }
        if cat.src(m.mu[x]) != t(t(x)) || cat.dst(m.mu[x]) != t(x) {
            report.push("mu_typing", vec![x]);
        }
    }
    if !report.is_valid() {
        return report;
    }
    for f in 0..cat.morphisms() {
        let (x, y) = (cat.src(f), cat.dst(f));
        let tf = m.t.mmap[f];
        if cat.compose(m.eta[y], f) != cat.compose(tf, m.eta[x]) {
            report.push("eta_natural", vec![f]);
        }
        if cat.compose(m.mu[y], m.t.mmap[tf]) != cat.compose(tf, m.mu[x]) {
            report.push("mu_natural", vec![f]);
        }
    }
    for x in 0..cat.objects() {
        let idt = cat.id(t(x));
        if cat.compose(m.mu[x], m.eta[t(x)]) != idt {
            report.push("left_unit", vec![x]);
        }
        if cat.compose(m.mu[x], m.t.mmap[m.eta[x]]) != idt {
            report.push("right_unit", vec![x]);
        }
        if cat.compose(m.mu[x], m.t.mmap[m.mu[x]]) != cat.compose(m.mu[x], m.mu[t(x)]) {
            report.push("associativity", vec![x]);
        }
    }
    report
}

/// `G(X) = ∐_g g(X)`, with `η = ι_1` and `μ` induced by the coproduct
/// structure of `h(G(X))`.
pub fn build_g_monad(a: &GCatAction, cp: &GCoproducts) -> Result<FinMonad> {
    let cat = &a.cat;
    let n = a.group.order();
    let objects = cat.objects();
    let apex: Vec<usize> = (0..objects).map(|y| cp.apex_of(y)).collect::<Result<_>>()?;
    for y in 0..objects {
        if cp.injections(y)?.len() != n {
            return Err(invalid(format!("object {y} needs one injection per group element")));
        }
    }
    let mut mmap = Vec::with_capacity(cat.morphisms());
    for f in 0..cat.morphisms() {
        let (y, y2) = (cat.src(f), cat.dst(f));
        let legs: Vec<usize> = (0..n)
            .map(|g| cat.compose(cp.inj[y2][g], a.mor(g, f)))
            .collect();
        mmap.push(mediate(a, cp, y, apex[y2], &legs)?);
    }
    let t = FinFunctor {
        omap: apex.clone(),
        mmap,
    };
    let eta: Vec<usize> = (0..objects).map(|y| cp.inj[y][0]).collect();
    let mut mu = Vec::with_capacity(objects);
    for y in 0..objects {
        let ty = apex[y];
        let mut legs = Vec::with_capacity(n);
        for h in 0..n {
            let moved: Vec<usize> = (0..n).map(|g| a.mor(h, cp.inj[y][g])).collect();
            let targets: Vec<usize> = (0..n).map(|g| cp.inj[y][a.group.mul(h, g)]).collect();
            let found = mediators(cat, a.obj(h, ty), &moved, ty, &targets);
            legs.push(unique(found, || format!("the translate by {h} of object {y}"))?);
        }
        mu.push(mediate(a, cp, ty, ty, &legs)?);
    }
    let monad = FinMonad { t, eta, mu };
    let report = check_monad(cat, &monad);
    if let Some(v) = report.violations.first() {
        return Err(Error::Verification(format!(
            "orbit-coproduct monad fails {} at {:?}",
            v.law, v.witness
        )));
    }
    Ok(monad)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EMAlgebra {
    pub carrier: usize,
    pub structure: usize,
}

pub fn is_em_algebra(cat: &FinCategory, m: &FinMonad, alg: &EMAlgebra) -> bool {
    let (x, z) = (alg.carrier, alg.structure);
    x < cat.objects()
        && z < cat.morphisms()
        && cat.src(z) == m.obj(x)
        && cat.dst(z) == x
        && cat.compose(z, m.eta[x]) == cat.id(x)
        && cat.compose(z, m.t.mmap[z]) == cat.compose(z, m.mu[x])
}

/// Algebras with their morphisms `f` satisfying `f ∘ ζ = ζ' ∘ T(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EMCategory {
    pub cat: FinCategory,
    pub algebras: Vec<EMAlgebra>,
    pub underlying: Vec<usize>,
}

impl EMCategory {
    pub fn index_of(&self, alg: &EMAlgebra) -> Option<usize> {
        self.algebras.binary_search(alg).ok()
    }
}

pub fn em_algebras(cat: &FinCategory, m: &FinMonad) -> Vec<EMAlgebra> {
    let mut out: Vec<EMAlgebra> = (0..cat.objects())
        .flat_map(|x| {
            cat.hom(m.obj(x), x).iter().map(move |&z| EMAlgebra {
                carrier: x,
                structure: z,
            })
        })
        .filter(|alg| is_em_algebra(cat, m, alg))
        .collect();
    out.sort();
    out
}

pub fn em_category(cat: &FinCategory, m: &FinMonad) -> Result<EMCategory> {
    let algebras = em_algebras(cat, m);
    guard::check("algebras", algebras.len() as u128, guard::CAT_OBJECTS)?;
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    for (i, p) in algebras.iter().enumerate() {
        for (j, q) in algebras.iter().enumerate() {
            for &f in cat.hom(p.carrier, q.carrier) {
                if cat.compose(f, p.structure) == cat.compose(q.structure, m.t.mmap[f]) {
                    arrows.push((i, j));
                    underlying.push(f);
                }
            }
        }
    }
    guard::check("algebra morphisms", arrows.len() as u128, guard::CAT_MORPHISMS)?;
    let index: HashMap<(usize, usize, usize), usize> = arrows
        .iter()
        .zip(&underlying)
        .enumerate()
        .map(|(k, (&(i, j), &f))| ((i, j, f), k))
        .collect();
    let id = algebras
        .iter()
        .enumerate()
        .map(|(i, p)| index[&(i, i, cat.id(p.carrier))])
        .collect();
    let em = FinCategory::new(algebras.len(), &arrows, id, |p, q| {
        index[&(arrows[q].0, arrows[p].1, cat.compose(underlying[p], underlying[q]))]
    })?;
    Ok(EMCategory {
        cat: em,
        algebras,
        underlying,
    })
}

/// Cocycles against algebras of the orbit-coproduct monad:
/// `ξ ↦ ξ_*` and back through `ζ ↦ (ζ ∘ ι_g)_g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleAlgebraIso {
    pub cocycles: usize,
    pub algebras: usize,
    pub cocycle_morphisms: usize,
    pub algebra_morphisms: usize,
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
    pub mutually_inverse: bool,
    pub morphisms_match: bool,
    pub holds: bool,
}

pub fn cocycle_algebra_iso(a: &GCatAction, cp: &GCoproducts) -> Result<CocycleAlgebraIso> {
    let monad = build_g_monad(a, cp)?;
    let z1 = z1_category(a)?;
    let em = em_category(&a.cat, &monad)?;
    let cat = &a.cat;
    let mut forward = Vec::with_capacity(z1.cocycles.len());
    for c in &z1.cocycles {
        let star = mediate(a, cp, c.obj, c.obj, &c.xi)?;
        let alg = EMAlgebra {
            carrier: c.obj,
            structure: star,
        };
        forward.push(em.index_of(&alg).unwrap_or(usize::MAX));
    }
    let mut backward = Vec::with_capacity(em.algebras.len());
    for alg in &em.algebras {
        let x = alg.carrier;
        let xi = (0..a.group.order())
            .map(|g| cat.compose(alg.structure, cp.inj[x][g]))
            .collect();
        let c = CatCocycle { obj: x, xi };
        backward.push(z1.index_of(&c).unwrap_or(usize::MAX));
    }
    let mutually_inverse = forward.len() == backward.len()
        && forward
            .iter()
            .enumerate()
            .all(|(i, &j)| j != usize::MAX && backward[j] == i)
        && backward
            .iter()
            .enumerate()
            .all(|(j, &i)| i != usize::MAX && forward[i] == j);
    let mut morphisms_match = mutually_inverse && z1.cat.morphisms() == em.cat.morphisms();
    if morphisms_match {
        let em_arrow: HashMap<(usize, usize, usize), usize> = (0..em.cat.morphisms())
            .map(|k| ((em.cat.src(k), em.cat.dst(k), em.underlying[k]), k))
            .collect();
        let mut hit = vec![false; em.cat.morphisms()];
        for k in 0..z1.cat.morphisms() {
            let key = (
                forward[z1.cat.src(k)],
                forward[z1.cat.dst(k)],
                z1.underlying[k],
            );
            match em_arrow.get(&key) {
                Some(&e) if !hit[e] => hit[e] = true,
                _ => morphisms_match = false,
            }
        }
    }
    Ok(CocycleAlgebraIso {
        cocycles: z1.cocycles.len(),
        algebras: em.algebras.len(),
        cocycle_morphisms: z1.cat.morphisms(),
        algebra_morphisms: em.cat.morphisms(),
        forward,
        backward,
        mutually_inverse,
        morphisms_match,
        holds: mutually_inverse && morphisms_match,
    })
}

/// `T ∘ g(-) = T` and `μ_{gX} = μ_X` for every `g`.
pub fn check_invariance(a: &GCatAction, t: &FinMonad) -> Report {
    let mut report = Report::new();
    for g in a.group.elements() {
        let tg = t.t.after(&a.actors[g]);
        if tg != t.t {
            report.push("functor_invariant", vec![g]);
        }
        for x in 0..a.cat.objects() {
            if t.mu[a.obj(g, x)] != t.mu[x] {
                report.push("mu_invariant", vec![g, x]);
            }
        }
    }
    report
}

fn require_invariance(a: &GCatAction, t: &FinMonad) -> Result<()> {
    let report = check_invariance(a, t);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition(format!(
            "monad is not G-invariant: {} at {:?}",
            v.law, v.witness
        ))),
    }
}

/// `γ_X: G(X) → T(X)` induced by the legs `η_{gX}`, with the monad-morphism
/// equations checked in `report`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaMorphism {
    pub gamma: Vec<usize>,
    pub report: Report,
}

pub fn gamma_monad_morphism(a: &GCatAction, cp: &GCoproducts, t: &FinMonad) -> Result<GammaMorphism> {
    let cat = &a.cat;
    let tr = check_monad(cat, t);
    if let Some(v) = tr.violations.first() {
        return Err(invalid(format!("not a monad: {} at {:?}", v.law, v.witness)));
    }
    require_invariance(a, t)?;
    let gm = build_g_monad(a, cp)?;
    let mut gamma = Vec::with_capacity(cat.objects());
    for x in 0..cat.objects() {
        let legs: Vec<usize> = a.group.elements().map(|g| t.eta[a.obj(g, x)]).collect();
        gamma.push(mediate(a, cp, x, t.obj(x), &legs)?);
    }
    let mut report = Report::new();
    for x in 0..cat.objects() {
        if cat.compose(gamma[x], gm.eta[x]) != t.eta[x] {
            report.push("unit", vec![x]);
        }
        let lhs = cat.compose(gamma[x], gm.mu[x]);
        let horizontal = cat.compose(t.t.mmap[gamma[x]], gamma[gm.obj(x)]);
        if lhs != cat.compose(t.mu[x], horizontal) {
            report.push("multiplication", vec![x]);
        }
    }
    for f in 0..cat.morphisms() {
        let (x, y) = (cat.src(f), cat.dst(f));
        if cat.compose(gamma[y], gm.t.mmap[f]) != cat.compose(t.t.mmap[f], gamma[x]) {
            report.push("naturality", vec![f]);
        }
    }
    Ok(GammaMorphism { gamma, report })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisMonadVerdict {
    pub galois: bool,
    /// First object whose `γ` component is not invertible.
    pub witness: Option<usize>,
}

pub fn is_galois_monad(a: &GCatAction, cp: &GCoproducts, t: &FinMonad) -> Result<GaloisMonadVerdict> {
    let gm = gamma_monad_morphism(a, cp, t)?;
    if let Some(v) = gm.report.violations.first() {
        return Err(Error::Verification(format!(
            "γ is not a monad morphism: {} at {:?}",
            v.law, v.witness
        )));
    }
    let witness = (0..a.cat.objects()).find(|&x| !a.cat.is_iso(gm.gamma[x]));
    Ok(GaloisMonadVerdict {
        galois: witness.is_none(),
        witness,
    })
}

/// `(X, ζ) ↦ (X, (ζ ∘ η_{gX})_g)`.
pub fn comparison_k_gamma(a: &GCatAction, t: &FinMonad, alg: &EMAlgebra) -> Result<CatCocycle> {
    require_invariance(a, t)?;
    if !is_em_algebra(&a.cat, t, alg) {
        return Err(invalid("not an algebra of the monad"));
    }
    let x = alg.carrier;
    let xi = a
        .group
        .elements()
        .map(|g| a.cat.compose(alg.structure, t.eta[a.obj(g, x)]))
        .collect();
    let c = CatCocycle { obj: x, xi };
    let report = cocycle_check(a, &c);
    match report.violations.first() {
        None => Ok(c),
        Some(v) => Err(Error::Verification(format!(
            "comparison image fails {} at {:?}",
            v.law, v.witness
        ))),
    }
}

/// A G-category with orbit coproducts and, optionally, a monad to test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadFixture {
    pub action: ActionJson,
    pub coproducts: GCoproducts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monad: Option<FinMonad>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonadCheck {
    pub action_valid: bool,
    pub coproducts_valid: bool,
    pub iso: CocycleAlgebraIso,
    pub gamma_valid: bool,
    pub galois: GaloisMonadVerdict,
    pub holds: bool,
}

/// Validates the fixture, compares cocycles with algebras, and tests the
/// supplied monad (the orbit-coproduct monad itself when absent).
pub fn monad_check(fixture: &MonadFixture) -> Result<MonadCheck> {
    let a = GCatAction::from_json(&fixture.action)?;
    let action = super::action::check_g_category(&a);
    if let Some(v) = action.violations.first() {
        return Err(invalid(format!("not a G-category: {} at {:?}", v.law, v.witness)));
    }
    let cp = &fixture.coproducts;
    let coproducts = check_coproducts(&a, cp)?;
    if let Some(v) = coproducts.violations.first() {
        return Err(Error::MissingCoproduct(format!(
            "coproduct data fails {} at {:?}",
            v.law, v.witness
        )));
    }
    let iso = cocycle_algebra_iso(&a, cp)?;
    let t = match &fixture.monad {
        Some(t) => t.clone(),
        None => build_g_monad(&a, cp)?,
    };
    let gm = gamma_monad_morphism(&a, cp, &t)?;
    let gamma_valid = gm.report.is_valid();
    let galois = if gamma_valid {
        is_galois_monad(&a, cp, &t)?
    } else {
        GaloisMonadVerdict {
            galois: false,
            witness: None,
        }
    };
    Ok(MonadCheck {
        action_valid: true,
        coproducts_valid: true,
        holds: iso.holds && gamma_valid,
        iso,
        gamma_valid,
        galois,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::{self, powerset};
    use crate::group_core::{FiniteGroup, GSet};

    #[test]
    fn orbit_monad_on_powerset_of_z2() {
        let p = powerset(&GSet::regular(FiniteGroup::cyclic(2))).unwrap();
        let t = build_g_monad(&p.action, &p.coproducts).unwrap();
        assert_eq!(t.t.omap, vec![0, 3, 3, 3]);
        assert_eq!(t.eta[1], p.includes(1, 3));
        assert_eq!(t.mu[1], p.includes(3, 3));
        let gm = gamma_monad_morphism(&p.action, &p.coproducts, &t).unwrap();
        assert!(gm.report.is_valid());
        assert_eq!(gm.gamma, (0..4).map(|x| p.action.cat.id(t.obj(x))).collect::<Vec<_>>());
        assert!(is_galois_monad(&p.action, &p.coproducts, &t).unwrap().galois);
    }

    #[test]
    fn trivial_group_gives_identity_monad() {
        let p = powerset(&GSet::trivial(FiniteGroup::trivial(), 2)).unwrap();
        let t = build_g_monad(&p.action, &p.coproducts).unwrap();
        assert_eq!(t, FinMonad::identity(&p.action.cat));
        let iso = cocycle_algebra_iso(&p.action, &p.coproducts).unwrap();
        assert!(iso.holds);
        assert_eq!(iso.cocycles, 4);
    }

    #[test]
    fn constant_monad_is_not_galois() {
        let p = powerset(&GSet::regular(FiniteGroup::cyclic(3))).unwrap();
        let t = p.constant_monad();
        assert!(check_monad(&p.action.cat, &t).is_valid());
        let v = is_galois_monad(&p.action, &p.coproducts, &t).unwrap();
        assert_eq!(v.witness, Some(0));
    }

    #[test]
    fn comparison_of_free_algebra() {
        let p = powerset(&GSet::regular(FiniteGroup::cyclic(2))).unwrap();
        let t = build_g_monad(&p.action, &p.coproducts).unwrap();
        let free = EMAlgebra {
            carrier: t.obj(1),
            structure: t.mu[1],
        };
        let c = comparison_k_gamma(&p.action, &t, &free).unwrap();
        assert_eq!(c.obj, 3);
    }

    #[test]
    fn missing_coproduct_is_reported() {
        let err = monad_check(&fixtures::broken_coproducts()).unwrap_err();
        assert!(matches!(err, Error::MissingCoproduct(_)), "{err}");
    }
}

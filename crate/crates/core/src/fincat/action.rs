use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::category::{check_functor, CategoryJson, FinCategory, FinFunctor};
use crate::cohomology::{enumerate_z1, h1_classes};
use crate::error::{invalid, Error, Result};
use crate::group_core::{FiniteGroup, FiniteMonoid, GCoefficients, GMonoid};
use crate::guard;
use crate::report::Report;

/// A strict left action of a finite group on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCatAction {
    pub group: FiniteGroup,
    pub cat: FinCategory,
    pub actors: Vec<FinFunctor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub group: FiniteGroup,
    pub category: CategoryJson,
    pub actors: Vec<FinFunctor>,
}

impl GCatAction {
    /// Shape check only; see [`check_g_category`] for the laws.
    pub fn new(group: FiniteGroup, cat: FinCategory, actors: Vec<FinFunctor>) -> Result<Self> {
        if actors.len() != group.order() {
            return Err(invalid("one actor per group element required"));
        }
        for f in &actors {
            if f.omap.len() != cat.objects()
                || f.mmap.len() != cat.morphisms()
                || f.omap.iter().any(|&x| x >= cat.objects())
                || f.mmap.iter().any(|&m| m >= cat.morphisms())
            {
                return Err(invalid("actor has wrong shape"));
            }
        }
        Ok(Self { group, cat, actors })
    }

    /// Every `g(-)` is the identity functor.
    pub fn trivial(group: FiniteGroup, cat: FinCategory) -> Self {
        let actors = vec![FinFunctor::identity(&cat); group.order()];
        Self { group, cat, actors }
    }

    pub fn from_json(j: &ActionJson) -> Result<Self> {
        let cat = FinCategory::from_json(&j.category)?;
        Self::new(j.group.clone(), cat, j.actors.clone())
    }

    pub fn to_json(&self) -> ActionJson {
        ActionJson {
            group: self.group.clone(),
            category: self.cat.to_json(),
            actors: self.actors.clone(),
        }
    }

    pub fn obj(&self, g: usize, x: usize) -> usize {
        self.actors[g].omap[x]
    }

    pub fn mor(&self, g: usize, f: usize) -> usize {
        self.actors[g].mmap[f]
    }
}

/// Each actor is a functor, `1(-)` is the identity, `(hg)(-) = h(-)g(-)`
/// strictly, and each actor is bijective.
pub fn check_g_category(a: &GCatAction) -> Report {
    let mut report = Report::new();
    let cat = &a.cat;
    for (g, f) in a.actors.iter().enumerate() {
        if !check_functor(cat, cat, f).is_valid() {
            report.push("actor_functor", vec![g]);
        }
        if !f.is_bijective(cat) {
            report.push("invertible", vec![g]);
        }
    }
    if a.actors[0] != FinFunctor::identity(cat) {
        report.push("identity", vec![0]);
    }
    for h in a.group.elements() {
        for g in a.group.elements() {
            let hg = a.group.mul(h, g);
            if a.actors[hg] != a.actors[h].after(&a.actors[g]) {
                report.push("composition", vec![h, g]);
            }
        }
    }
    report
}

/// An object `X` with morphisms `ξ_g: gX → X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CatCocycle {
    pub obj: usize,
    pub xi: Vec<usize>,
}

impl CatCocycle {
    pub fn trivial(a: &GCatAction, obj: usize) -> Self {
        Self {
            obj,
            xi: vec![a.cat.id(obj); a.group.order()],
        }
    }
}

/// Typing, `ξ_1 = 1_X` and `ξ_{hg} = ξ_h ∘ h(ξ_g)`.
pub fn cocycle_check(a: &GCatAction, c: &CatCocycle) -> Report {
    let mut report = Report::new();
    let cat = &a.cat;
    if c.obj >= cat.objects()
        || c.xi.len() != a.group.order()
        || c.xi.iter().any(|&m| m >= cat.morphisms())
    {
        report.push("shape", vec![]);
        return report;
    }
    for g in a.group.elements() {
        let m = c.xi[g];
        if cat.src(m) != a.obj(g, c.obj) || cat.dst(m) != c.obj {
            report.push("typing", vec![g]);
        }
    }
    if !report.is_valid() {
        return report;
    }
    if c.xi[0] != cat.id(c.obj) {
        report.push("unital", vec![]);
    }
    for h in a.group.elements() {
        for g in a.group.elements() {
            let hg = a.group.mul(h, g);
            if c.xi[hg] != cat.compose(c.xi[h], a.mor(h, c.xi[g])) {
                report.push("cocycle_law", vec![h, g]);
            }
        }
    }
    report
}

pub fn is_cat_cocycle(a: &GCatAction, c: &CatCocycle) -> bool {
    cocycle_check(a, c).is_valid()
}

/// Whether every `ξ_g` is an isomorphism.
pub fn xi_invertible(a: &GCatAction, c: &CatCocycle) -> bool {
    c.xi.iter().all(|&m| a.cat.is_iso(m))
}

/// Cocycles on `x`, found by propagating `ξ_{sy} = ξ_s ∘ s(ξ_y)` from free
/// choices at the generators and validating each completed family.
pub fn cocycles_at(a: &GCatAction, x: usize) -> Result<Vec<CatCocycle>> {
    let gens = a.group.generating_set();
    let choices: Vec<&[usize]> = gens.iter().map(|&s| a.cat.hom(a.obj(s, x), x)).collect();
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    guard::check("cocycle families", total, guard::CAT_FAMILIES)?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let picked: Vec<usize> = choices
            .iter()
            .map(|c| {
                let v = c[(rest % c.len() as u128) as usize];
                rest /= c.len() as u128;
                v
            })
            .collect();
        if let Some(xi) = propagate(a, x, &gens, &picked) {
            let c = CatCocycle { obj: x, xi };
            if is_cat_cocycle(a, &c) {
                out.push(c);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn propagate(a: &GCatAction, x: usize, gens: &[usize], picked: &[usize]) -> Option<Vec<usize>> {
    let n = a.group.order();
    let mut xi = vec![usize::MAX; n];
    xi[0] = a.cat.id(x);
    let mut queue = VecDeque::from([0usize]);
    while let Some(y) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let sy = a.group.mul(s, y);
            let v = a.cat.try_compose(picked[i], a.mor(s, xi[y]))?;
            if xi[sy] == usize::MAX {
                xi[sy] = v;
                queue.push_back(sy);
            } else if xi[sy] != v {
                return None;
            }
        }
    }
    Some(xi)
}

/// Every family `(ξ_g)` over every object, checked one by one.
pub fn cocycles_brute(a: &GCatAction) -> Result<Vec<CatCocycle>> {
    let n = a.group.order();
    let mut out = Vec::new();
    for x in 0..a.cat.objects() {
        let choices: Vec<&[usize]> = (0..n).map(|g| a.cat.hom(a.obj(g, x), x)).collect();
        let total: u128 = choices.iter().map(|c| c.len() as u128).product();
        guard::check("cocycle families", total, guard::CAT_FAMILIES)?;
        for idx in 0..total {
            let mut rest = idx;
            let xi = choices
                .iter()
                .map(|c| {
                    let v = c[(rest % c.len() as u128) as usize];
                    rest /= c.len() as u128;
                    v
                })
                .collect();
            let c = CatCocycle { obj: x, xi };
            if is_cat_cocycle(a, &c) {
                out.push(c);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The category of cocycles: objects in `cocycles`, each morphism carrying its
/// underlying morphism of the ambient category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z1Category {
    pub cat: FinCategory,
    pub cocycles: Vec<CatCocycle>,
    pub underlying: Vec<usize>,
}

impl Z1Category {
    pub fn index_of(&self, c: &CatCocycle) -> Option<usize> {
        self.cocycles.binary_search(c).ok()
    }

    pub fn iso_class_count(&self) -> usize {
        self.cat.iso_classes().len()
    }
}

pub fn is_cocycle_morphism(a: &GCatAction, from: &CatCocycle, to: &CatCocycle, f: usize) -> bool {
    let cat = &a.cat;
    cat.src(f) == from.obj
        && cat.dst(f) == to.obj
        && a
            .group
            .elements()
            .all(|g| cat.compose(f, from.xi[g]) == cat.compose(to.xi[g], a.mor(g, f)))
}

pub fn z1_category(a: &GCatAction) -> Result<Z1Category> {
    let mut cocycles = Vec::new();
    for x in 0..a.cat.objects() {
        cocycles.extend(cocycles_at(a, x)?);
    }
    z1_from_cocycles(a, cocycles)
}

pub(crate) fn z1_from_cocycles(a: &GCatAction, cocycles: Vec<CatCocycle>) -> Result<Z1Category> {
    guard::check("cocycle objects", cocycles.len() as u128, guard::CAT_OBJECTS)?;
    let cat = &a.cat;
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    for (i, ci) in cocycles.iter().enumerate() {
        for (j, cj) in cocycles.iter().enumerate() {
            for &f in cat.hom(ci.obj, cj.obj) {
                if is_cocycle_morphism(a, ci, cj, f) {
                    arrows.push((i, j));
                    underlying.push(f);
                }
            }
        }
    }
    guard::check("cocycle morphisms", arrows.len() as u128, guard::CAT_MORPHISMS)?;
    let index: HashMap<(usize, usize, usize), usize> = arrows
        .iter()
        .zip(&underlying)
        .enumerate()
        .map(|(k, (&(i, j), &f))| ((i, j, f), k))
        .collect();
    let id = cocycles
        .iter()
        .enumerate()
        .map(|(i, c)| index[&(i, i, cat.id(c.obj))])
        .collect();
    let mut missing = None;
    let z1 = FinCategory::new(cocycles.len(), &arrows, id, |p, q| {
        let f = cat.compose(underlying[p], underlying[q]);
        match index.get(&(arrows[q].0, arrows[p].1, f)) {
            Some(&k) => k,
            None => {
                missing = Some((p, q));
                0
            }
        }
    });
    if let Some((p, q)) = missing {
        return Err(Error::Verification(format!(
            "cocycle morphisms {p} and {q} compose outside the category"
        )));
    }
    Ok(Z1Category {
        cat: z1?,
        cocycles,
        underlying,
    })
}

/// `End(X)` with the action `g·u = ξ_g ∘ g(u) ∘ ξ_g⁻¹`; `elements[i]` is the
/// morphism behind monoid element `i`, with the identity at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndAction {
    pub elements: Vec<usize>,
    pub monoid: GMonoid,
}

impl EndAction {
    pub fn element_index(&self, f: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == f)
    }
}

pub fn induced_end_action(a: &GCatAction, c: &CatCocycle) -> Result<EndAction> {
    if !is_cat_cocycle(a, c) {
        return Err(Error::Precondition("not a cocycle".into()));
    }
    let cat = &a.cat;
    let x = c.obj;
    let mut elements = vec![cat.id(x)];
    elements.extend(cat.hom(x, x).iter().copied().filter(|&f| f != cat.id(x)));
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let table = elements
        .iter()
        .map(|&u| elements.iter().map(|&v| pos[&cat.compose(u, v)]).collect())
        .collect();
    let inverses = c
        .xi
        .iter()
        .map(|&m| {
            cat.inverse(m)
                .ok_or_else(|| Error::Verification(format!("ξ component {m} is not invertible")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let act = a
        .group
        .elements()
        .map(|g| {
            elements
                .iter()
                .map(|&u| {
                    let conj = cat.compose(c.xi[g], cat.compose(a.mor(g, u), inverses[g]));
                    pos[&conj]
                })
                .collect()
        })
        .collect();
    let monoid = GMonoid::new(a.group.clone(), FiniteMonoid::from_table(table)?, act)?;
    Ok(EndAction { elements, monoid })
}

/// Comparison of monoid-valued cocycles `Z¹(G, End(X)_ξ)` with the cocycles
/// of the category lying over `X`, via `φ ↦ (X, (φ(g) ∘ ξ_g)_g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndCocycleIso {
    pub object: usize,
    pub end_size: usize,
    pub monoid_cocycles: usize,
    pub monoid_morphisms: usize,
    pub fibre_objects: usize,
    pub fibre_morphisms: usize,
    /// Index into the cocycle category for each monoid cocycle.
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
    pub functorial: bool,
    pub bijective_on_objects: bool,
    pub bijective_on_morphisms: bool,
    pub holds: bool,
}

/// Monoid cocycles as a category: morphisms `a: φ → φ'` with
/// `a φ(g) = φ'(g) (g·a)`. Arrows are `(φ, φ', a)`.
pub(crate) fn monoid_z1_category(
    m: &GMonoid,
) -> Result<(FinCategory, Vec<Vec<usize>>, Vec<(usize, usize, usize)>)> {
    let cocycles: Vec<Vec<usize>> = enumerate_z1(m)?.into_iter().map(|z| z.values).collect();
    let mut triples = Vec::new();
    for (i, p) in cocycles.iter().enumerate() {
        for (j, q) in cocycles.iter().enumerate() {
            for u in 0..m.coeff_order() {
                if m.group
                    .elements()
                    .all(|g| m.op(u, p[g]) == m.op(q[g], m.act(g, u)))
                {
                    triples.push((i, j, u));
                }
            }
        }
    }
    guard::check("cocycle morphisms", triples.len() as u128, guard::CAT_MORPHISMS)?;
    let index: HashMap<(usize, usize, usize), usize> =
        triples.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let arrows: Vec<(usize, usize)> = triples.iter().map(|&(i, j, _)| (i, j)).collect();
    let id = (0..cocycles.len()).map(|i| index[&(i, i, 0)]).collect();
    let cat = FinCategory::new(cocycles.len(), &arrows, id, |p, q| {
        let (i, _, u) = triples[q];
        let (_, k, v) = triples[p];
        index[&(i, k, m.op(v, u))]
    })?;
    Ok((cat, cocycles, triples))
}

pub fn end_cocycle_iso(a: &GCatAction, c: &CatCocycle) -> Result<EndCocycleIso> {
    let end = induced_end_action(a, c)?;
    let z1 = z1_category(a)?;
    end_cocycle_iso_with(a, c, &end, &z1)
}

pub(crate) fn end_cocycle_iso_with(
    a: &GCatAction,
    c: &CatCocycle,
    end: &EndAction,
    z1: &Z1Category,
) -> Result<EndCocycleIso> {
    let cat = &a.cat;
    let (src, cocycles, triples) = monoid_z1_category(&end.monoid)?;
    let mut object_map = Vec::with_capacity(cocycles.len());
    for phi in &cocycles {
        let xi = a
            .group
            .elements()
            .map(|g| cat.compose(end.elements[phi[g]], c.xi[g]))
            .collect();
        let image = CatCocycle { obj: c.obj, xi };
        let k = z1.index_of(&image).ok_or_else(|| {
            Error::Verification("image of a monoid cocycle is not a cocycle".into())
        })?;
        object_map.push(k);
    }
    let z1_arrow: HashMap<(usize, usize, usize), usize> = (0..z1.cat.morphisms())
        .map(|k| ((z1.cat.src(k), z1.cat.dst(k), z1.underlying[k]), k))
        .collect();
    let mut morphism_map = Vec::with_capacity(triples.len());
    for &(i, j, u) in &triples {
        let key = (object_map[i], object_map[j], end.elements[u]);
        let k = z1_arrow.get(&key).copied().ok_or_else(|| {
            Error::Verification("image of a monoid cocycle morphism is not a morphism".into())
        })?;
        morphism_map.push(k);
    }
    let functor = FinFunctor {
        omap: object_map.clone(),
        mmap: morphism_map.clone(),
    };
    let functorial = check_functor(&src, &z1.cat, &functor).is_valid();
    let fibre: Vec<usize> = (0..z1.cocycles.len())
        .filter(|&k| z1.cocycles[k].obj == c.obj)
        .collect();
    let fibre_arrows: Vec<usize> = (0..z1.cat.morphisms())
        .filter(|&k| {
            z1.cocycles[z1.cat.src(k)].obj == c.obj && z1.cocycles[z1.cat.dst(k)].obj == c.obj
        })
        .collect();
    let onto = |map: &[usize], target: &[usize]| {
        let mut sorted = map.to_vec();
        sorted.sort_unstable();
        sorted == target
    };
    let bijective_on_objects = onto(&object_map, &fibre);
    let bijective_on_morphisms = onto(&morphism_map, &fibre_arrows);
    Ok(EndCocycleIso {
        object: c.obj,
        end_size: end.elements.len(),
        monoid_cocycles: cocycles.len(),
        monoid_morphisms: triples.len(),
        fibre_objects: fibre.len(),
        fibre_morphisms: fibre_arrows.len(),
        object_map,
        morphism_map,
        functorial,
        bijective_on_objects,
        bijective_on_morphisms,
        holds: functorial && bijective_on_objects && bijective_on_morphisms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibreTerm {
    pub object: usize,
    pub cocycle: CatCocycle,
    pub h1_size: usize,
}

/// Isomorphism classes of cocycles against the sum, over one chosen cocycle
/// per isomorphism class of carriers, of `|H¹(G, End(X)_ξ)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Decomposition {
    pub iso_classes: usize,
    pub terms: Vec<FibreTerm>,
    pub sum: usize,
    pub holds: bool,
}

pub fn h1_decomposition(a: &GCatAction) -> Result<H1Decomposition> {
    let z1 = z1_category(a)?;
    let iso_classes = z1.iso_class_count();
    let mut terms = Vec::new();
    for class in a.cat.iso_classes() {
        let chosen = class
            .iter()
            .find_map(|&x| z1.cocycles.iter().find(|c| c.obj == x));
        let Some(c) = chosen else { continue };
        let end = induced_end_action(a, c)?;
        let h1 = h1_classes(&end.monoid)?;
        terms.push(FibreTerm {
            object: c.obj,
            cocycle: c.clone(),
            h1_size: h1.h1_size(),
        });
    }
    let sum = terms.iter().map(|t| t.h1_size).sum();
    Ok(H1Decomposition {
        iso_classes,
        terms,
        sum,
        holds: sum == iso_classes,
    })
}

//! Nonabelian `Z^1` / `H^1` of a finite group with coefficients in a G-group
//! or G-monoid.
//!
//! A cocycle is a map `φ: G -> A` with `φ(1) = 1` and
//! `φ(hg) = φ(h) · h(φ(g))`. Units `a` of `A` act by
//! `(aφ)(g) = a φ(g) g(a)^-1`; `H^1` is the orbit set.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_core::{
    extend_along_generators, fixed_points, tuple_from_index, FiniteGroup, GCoefficients, GGroup,
    GMonoid, GSet,
};
use crate::guard;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cocycle {
    pub values: Vec<usize>,
}

impl Cocycle {
    pub fn trivial(order: usize) -> Self {
        Self {
            values: vec![0; order],
        }
    }

    pub fn is_unit_valued<C: GCoefficients + ?Sized>(&self, c: &C) -> bool {
        self.values.iter().all(|&v| c.is_unit(v))
    }
}

pub fn cocycle_report<C: GCoefficients + ?Sized>(values: &[usize], c: &C) -> Report {
    let mut report = Report::new();
    let group = c.acting_group();
    if values.len() != group.order() || values.iter().any(|&v| v >= c.coeff_order()) {
        report.push("shape", vec![values.len()]);
        return report;
    }
    if values[0] != 0 {
        report.push("unital", vec![values[0]]);
    }
    for h in group.elements() {
        for g in group.elements() {
            let rhs = c.op(values[h], c.act(h, values[g]));
            if values[group.mul(h, g)] != rhs {
                report.push("cocycle_law", vec![h, g]);
            }
        }
    }
    report
}

pub fn is_cocycle<C: GCoefficients + ?Sized>(values: &[usize], c: &C) -> bool {
    let group = c.acting_group();
    values.len() == group.order()
        && values.iter().all(|&v| v < c.coeff_order())
        && values[0] == 0
        && group.elements().all(|h| {
            group
                .elements()
                .all(|g| values[group.mul(h, g)] == c.op(values[h], c.act(h, values[g])))
        })
}

/// Uses the stored generator list when there is one, brute force otherwise.
pub fn enumerate_z1<C: GCoefficients + ?Sized>(c: &C) -> Result<Vec<Cocycle>> {
    match c.acting_group().generators() {
        Some(gens) => enumerate_z1_generators(c, gens),
        None => enumerate_z1_brute(c),
    }
}

/// Scans all `|A|^|G|` maps.
pub fn enumerate_z1_brute<C: GCoefficients + ?Sized>(c: &C) -> Result<Vec<Cocycle>> {
    let group = c.acting_group();
    guard::check("group order", group.order() as u128, guard::GROUP_ORDER)?;
    let total = guard::pow(c.coeff_order(), group.order());
    guard::check("cocycle candidates", total, guard::COCYCLE_CANDIDATES)?;
    let (base, len) = (c.coeff_order(), group.order());
    let mut out: Vec<Cocycle> = (0..total as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let values = tuple_from_index(idx as u128, base, len);
            is_cocycle(&values, c).then_some(Cocycle { values })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Chooses images of `gens`, extends by `φ(sx) = φ(s)·s(φ(x))` and validates.
pub fn enumerate_z1_generators<C: GCoefficients + ?Sized>(
    c: &C,
    gens: &[usize],
) -> Result<Vec<Cocycle>> {
    let group = c.acting_group();
    guard::check("group order", group.order() as u128, guard::GROUP_ORDER)?;
    if group.closure(gens).len() != group.order() {
        return Err(Error::Invalid("generator list does not generate".into()));
    }
    let total = guard::pow(c.coeff_order(), gens.len());
    guard::check("cocycle candidates", total, guard::COCYCLE_CANDIDATES)?;
    let base = c.coeff_order();
    let mut out: Vec<Cocycle> = (0..total as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let images = tuple_from_index(idx as u128, base, gens.len());
            let values = extend_along_generators(group, gens, |i, _x, vx| {
                c.op(images[i], c.act(gens[i], vx))
            })?;
            is_cocycle(&values, c).then_some(Cocycle { values })
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `g -> a φ(g) g(a)^-1`.
pub fn coboundary_act<C: GCoefficients + ?Sized>(c: &C, a: usize, phi: &Cocycle) -> Result<Cocycle> {
    if a >= c.coeff_order() {
        return Err(Error::Invalid(format!("element {a} out of range")));
    }
    if !c.is_unit(a) {
        return Err(Error::NotUnit(a));
    }
    let group = c.acting_group();
    let values = group
        .elements()
        .map(|g| {
            let ga_inv = c.inverse(c.act(g, a)).expect("automorphisms preserve units");
            c.op(c.op(a, phi.values[g]), ga_inv)
        })
        .collect();
    Ok(Cocycle { values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Partition {
    pub cocycles: Vec<Cocycle>,
    /// Orbits as index lists into `cocycles`, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub distinguished: usize,
    pub class_of: Vec<usize>,
    /// Indices of cocycles taking some non-unit value.
    pub non_unit: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Json {
    pub z1_size: usize,
    pub classes: Vec<Vec<usize>>,
    pub distinguished: usize,
}

impl H1Partition {
    pub fn h1_size(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<&Cocycle> {
        self.classes.iter().map(|cl| &self.cocycles[cl[0]]).collect()
    }

    pub fn to_json(&self) -> H1Json {
        H1Json {
            z1_size: self.cocycles.len(),
            classes: self.classes.clone(),
            distinguished: self.distinguished,
        }
    }
}

pub fn h1_classes<C: GCoefficients + ?Sized>(c: &C) -> Result<H1Partition> {
    let cocycles = enumerate_z1(c)?;
    h1_from_cocycles(c, cocycles)
}

/// Orbit partition of an already enumerated (sorted) `Z^1`.
pub fn h1_from_cocycles<C: GCoefficients + ?Sized>(
    c: &C,
    cocycles: Vec<Cocycle>,
) -> Result<H1Partition> {
    let index: HashMap<&[usize], usize> = cocycles
        .iter()
        .enumerate()
        .map(|(i, z)| (z.values.as_slice(), i))
        .collect();
    let units = c.units();
    let mut class_of = vec![usize::MAX; cocycles.len()];
    let mut classes = Vec::new();
    for i in 0..cocycles.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cls = classes.len();
        let images: Vec<Vec<usize>> = units
            .par_iter()
            .map(|&a| coboundary_act(c, a, &cocycles[i]).map(|z| z.values))
            .collect::<Result<_>>()?;
        let mut members = Vec::new();
        for img in images {
            let j = *index.get(img.as_slice()).ok_or_else(|| {
                Error::Verification("coboundary action left the cocycle set".into())
            })?;
            if class_of[j] == usize::MAX {
                class_of[j] = cls;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let trivial = vec![0; c.acting_group().order()];
    let distinguished = index
        .get(trivial.as_slice())
        .map(|&i| class_of[i])
        .ok_or_else(|| Error::Verification("trivial cocycle missing".into()))?;
    let non_unit = cocycles
        .iter()
        .enumerate()
        .filter(|(_, z)| !z.is_unit_valued(c))
        .map(|(i, _)| i)
        .collect();
    Ok(H1Partition {
        cocycles,
        classes,
        distinguished,
        class_of,
        non_unit,
    })
}

/// Least unit `a` with `φ(g) = a g(a)^-1` for all `g`.
pub fn cobounding_witness<C: GCoefficients + ?Sized>(c: &C, phi: &Cocycle) -> Option<usize> {
    let trivial = Cocycle::trivial(c.acting_group().order());
    c.units().into_iter().find(|&a| {
        coboundary_act(c, a, &trivial)
            .map(|z| z == *phi)
            .unwrap_or(false)
    })
}

pub fn h0(s: &GSet) -> Vec<usize> {
    fixed_points(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitsSubgroup {
    pub g_group: GGroup,
    /// `embedding[i]` is the monoid index of unit `i`.
    pub embedding: Vec<usize>,
}

pub fn units_subgroup(m: &GMonoid) -> Result<UnitsSubgroup> {
    let embedding = m.units();
    let pos: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let lookup = |x: usize| {
        pos.get(&x)
            .copied()
            .ok_or_else(|| Error::Verification(format!("unit group not closed at {x}")))
    };
    let table = embedding
        .iter()
        .map(|&a| embedding.iter().map(|&b| lookup(m.coeff.mul(a, b))).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let coeff = FiniteGroup::from_table(table)?;
    let act = m
        .group
        .elements()
        .map(|g| embedding.iter().map(|&u| lookup(m.act[g][u])).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let g_group = GGroup::new(m.group.clone(), coeff, act)?;
    Ok(UnitsSubgroup { g_group, embedding })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidUnitsComparison {
    pub z1_monoid: usize,
    pub z1_units: usize,
    pub non_unit_valued: usize,
    pub h1_monoid: usize,
    pub h1_units: usize,
    pub partitions_correspond: bool,
    pub holds: bool,
}

/// Compares `H^1(G, M)` (unit coboundaries) with `H^1(G, U(M))` through the
/// inclusion of cocycle sets.
pub fn h1_monoid_vs_units(m: &GMonoid) -> Result<MonoidUnitsComparison> {
    let full = h1_classes(m)?;
    let units = units_subgroup(m)?;
    let small = h1_classes(&units.g_group)?;
    let index: HashMap<&[usize], usize> = full
        .cocycles
        .iter()
        .enumerate()
        .map(|(i, z)| (z.values.as_slice(), i))
        .collect();
    let mut image = Vec::with_capacity(small.cocycles.len());
    for z in &small.cocycles {
        let lifted: Vec<usize> = z.values.iter().map(|&v| units.embedding[v]).collect();
        match index.get(lifted.as_slice()) {
            Some(&i) => image.push(i),
            None => {
                return Err(Error::Verification(
                    "unit cocycle is not a monoid cocycle".into(),
                ))
            }
        }
    }
    let unit_valued = full.cocycles.len() - full.non_unit.len();
    let mut correspond = image.len() == unit_valued;
    for i in 0..image.len() {
        for j in 0..image.len() {
            let same_small = small.class_of[i] == small.class_of[j];
            let same_full = full.class_of[image[i]] == full.class_of[image[j]];
            correspond &= same_small == same_full;
        }
    }
    let unit_classes = full
        .classes
        .iter()
        .filter(|cl| !full.non_unit.contains(&cl[0]))
        .count();
    Ok(MonoidUnitsComparison {
        z1_monoid: full.cocycles.len(),
        z1_units: small.cocycles.len(),
        non_unit_valued: full.non_unit.len(),
        h1_monoid: unit_classes,
        h1_units: small.h1_size(),
        partitions_correspond: correspond,
        holds: correspond && full.non_unit.is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::FiniteMonoid;

    fn negation_on_z3() -> GGroup {
        let z3 = FiniteGroup::cyclic(3);
        GGroup::new(
            FiniteGroup::cyclic(2),
            z3,
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap()
    }

    /// Z/2 acting on F_4^* = {1, ω, ω²} (indices 0, 1, 2 as powers of ω) by squaring.
    fn f4_units() -> GGroup {
        GGroup::new(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn z2_trivial() {
        let c = GGroup::trivial(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
        let h = h1_classes(&c).unwrap();
        assert_eq!(h.cocycles.len(), 2);
        assert_eq!(h.h1_size(), 2);
        assert_eq!(cobounding_witness(&c, &h.cocycles[1]), None);
    }

    #[test]
    fn f4_units_hilbert90() {
        let c = f4_units();
        assert!(is_cocycle(&[0, 1], &c));
        let h = h1_classes(&c).unwrap();
        assert_eq!(h.cocycles.len(), 3);
        assert_eq!(h.h1_size(), 1);
        let moved = coboundary_act(&c, 1, &Cocycle::trivial(2)).unwrap();
        assert_eq!(moved.values, vec![0, 2]);
        assert_eq!(cobounding_witness(&c, &moved), Some(1));
    }

    #[test]
    fn negation_cocycles() {
        let c = negation_on_z3();
        assert_eq!(enumerate_z1(&c).unwrap().len(), 3);
        assert_eq!(enumerate_z1_brute(&c).unwrap(), enumerate_z1(&c).unwrap());
    }

    #[test]
    fn monoid_without_units() {
        // {1, e, z}: e idempotent, z absorbing
        let m = FiniteMonoid::from_table(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]]).unwrap();
        let gm = GMonoid::trivial(FiniteGroup::cyclic(2), m);
        let u = units_subgroup(&gm).unwrap();
        assert_eq!(u.embedding, vec![0]);
        let cmp = h1_monoid_vs_units(&gm).unwrap();
        assert!(cmp.holds);
        assert_eq!(cmp.z1_monoid, 1);
    }

    #[test]
    fn non_unit_rejected() {
        let m = FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let gm = GMonoid::trivial(FiniteGroup::cyclic(2), m);
        assert!(matches!(
            coboundary_act(&gm, 1, &Cocycle::trivial(2)),
            Err(Error::NotUnit(1))
        ));
    }

    #[test]
    fn json_shape() {
        let h = h1_classes(&f4_units()).unwrap();
        let s = serde_json::to_string(&h.to_json()).unwrap();
        assert_eq!(s, r#"{"z1_size":3,"classes":[[0,1,2]],"distinguished":0}"#);
    }
}

//! Finite groups and monoids as multiplication tables, G-sets, G-groups,
//! G-monoids and homomorphism search.
//!
//! Elements are dense indices `0..order`, and index 0 is always the
//! identity. All actions are left actions; right actions are stored as left
//! actions of [`FiniteGroup::opposite`].

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::guard;
use crate::report::Report;

/// A finite monoid with identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    order: usize,
    mul: Vec<usize>,
}

impl FiniteMonoid {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let report = check_monoid_axioms(&table);
        if !report.is_valid() {
            return Err(invalid(format!("not a monoid: {:?}", report.violations[0])));
        }
        let order = table.len();
        if !(0..order).all(|x| table[0][x] == x && table[x][0] == x) {
            return Err(invalid("monoid identity must be index 0"));
        }
        Ok(Self {
            order,
            mul: table.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&b| self.mul(a, b) == 0 && self.mul(b, a) == 0)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.inverse(a).is_some()).collect()
    }

    pub fn is_group(&self) -> bool {
        self.units().len() == self.order
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}

/// A finite group with identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generators: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<usize>>,
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        if j.order != j.mul.len() {
            return Err(invalid("order does not match table size"));
        }
        if j.identity != 0 {
            return Err(invalid("identity must be index 0"));
        }
        let g = FiniteGroup::from_table(j.mul)?;
        match j.generators {
            Some(gens) => g.with_generators(gens),
            None => Ok(g),
        }
    }
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson {
            order: g.order,
            mul: g.table(),
            identity: 0,
            generators: g.generators,
        }
    }
}

impl FiniteGroup {
    /// Validates a raw table; the identity must sit at index 0.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let report = check_group_axioms(&table);
        if !report.is_valid() {
            return Err(invalid(format!("not a group: {:?}", report.violations[0])));
        }
        let order = table.len();
        if !(0..order).all(|x| table[0][x] == x) {
            return Err(invalid("group identity must be index 0"));
        }
        let inv = (0..order)
            .map(|x| (0..order).find(|&y| table[x][y] == 0).expect("checked"))
            .collect();
        Ok(Self {
            order,
            mul: table.into_iter().flatten().collect(),
            inv,
            generators: None,
        })
    }

    /// Attaches a generator list, verifying that it generates the group.
    pub fn with_generators(mut self, gens: Vec<usize>) -> Result<Self> {
        if gens.iter().any(|&g| g >= self.order) {
            return Err(invalid("generator out of range"));
        }
        if self.closure(&gens).len() != self.order {
            return Err(invalid("generator list does not generate the group"));
        }
        self.generators = Some(gens);
        Ok(self)
    }

    pub fn without_generators(mut self) -> Self {
        self.generators = None;
        self
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with generator 1.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let mul = (0..n).flat_map(|x| (0..n).map(move |y| (x + y) % n)).collect();
        let inv = (0..n).map(|x| (n - x) % n).collect();
        let generators = if n > 1 { vec![1] } else { vec![] };
        Self {
            order: n,
            mul,
            inv,
            generators: Some(generators),
        }
    }

    /// S_n. Element `k` is the k-th permutation of `0..n` in lexicographic
    /// order (one-line notation, see [`symmetric_permutations`]); the product
    /// `xy` applies `y` first. Generators are (0 1) and the n-cycle i -> i+1.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("symmetric group needs n >= 1"));
        }
        if n > 6 {
            return Err(Error::Guard {
                what: "symmetric group order",
                size: (1..=n as u128).product(),
                limit: guard::GROUP_ORDER,
            });
        }
        let perms = symmetric_permutations(n);
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let order = perms.len();
        let mut mul = Vec::with_capacity(order * order);
        for x in &perms {
            for y in &perms {
                let prod: Vec<usize> = (0..n).map(|i| x[y[i]]).collect();
                mul.push(index[prod.as_slice()]);
            }
        }
        let mut inv = vec![0; order];
        for x in 0..order {
            inv[x] = (0..order).find(|&y| mul[x * order + y] == 0).unwrap();
        }
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(index[t.as_slice()]);
            let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let ci = index[c.as_slice()];
            if !gens.contains(&ci) {
                gens.push(ci);
            }
        }
        Ok(Self {
            order,
            mul,
            inv,
            generators: Some(gens),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    /// The stored generator list, or a greedy one (least missing element
    /// added until the closure is everything).
    pub fn generating_set(&self) -> Vec<usize> {
        if let Some(g) = &self.generators {
            return g.clone();
        }
        let mut gens = Vec::new();
        let mut reached = self.closure(&gens);
        for x in 0..self.order {
            if reached.len() == self.order {
                break;
            }
            if !reached.contains(&x) {
                gens.push(x);
                reached = self.closure(&gens);
            }
        }
        gens
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(s, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Same elements with `x *op y = y * x`.
    pub fn opposite(&self) -> Self {
        let n = self.order;
        let mul = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.mul(y, x))
            .collect();
        Self {
            order: n,
            mul,
            inv: self.inv.clone(),
            generators: self.generators.clone(),
        }
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn as_monoid(&self) -> FiniteMonoid {
        FiniteMonoid {
            order: self.order,
            mul: self.mul.clone(),
        }
    }
}

/// All permutations of `0..n` in lexicographic order; the first is the identity.
pub fn symmetric_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn check_table_shape(table: &[Vec<usize>], report: &mut Report) -> bool {
    let n = table.len();
    if n == 0 {
        report.push("nonempty", vec![]);
        return false;
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            report.push("square", vec![x]);
            return false;
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                report.push("closed", vec![x, y]);
            }
        }
    }
    report.is_valid()
}

fn check_associativity(table: &[Vec<usize>], report: &mut Report) {
    let n = table.len();
    for x in 0..n {
        for y in 0..n {
            let xy = table[x][y];
            for z in 0..n {
                if table[xy][z] != table[x][table[y][z]] {
                    report.push("associativity", vec![x, y, z]);
                }
            }
        }
    }
}

fn find_identity(table: &[Vec<usize>]) -> Option<usize> {
    let n = table.len();
    (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
}

pub fn check_monoid_axioms(table: &[Vec<usize>]) -> Report {
    let mut report = Report::new();
    if !check_table_shape(table, &mut report) {
        return report;
    }
    check_associativity(table, &mut report);
    if find_identity(table).is_none() {
        report.push("identity", vec![]);
    }
    report
}

/// Scans a raw square table for every group-axiom failure. Witnesses:
/// `associativity` carries the triple, `inverse` the element without one.
pub fn check_group_axioms(table: &[Vec<usize>]) -> Report {
    let mut report = Report::new();
    if !check_table_shape(table, &mut report) {
        return report;
    }
    check_associativity(table, &mut report);
    match find_identity(table) {
        None => report.push("identity", vec![]),
        Some(e) => {
            let n = table.len();
            for x in 0..n {
                if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
                    report.push("inverse", vec![x]);
                }
            }
        }
    }
    report
}

/// A finite set with a left G-action: `act[g][s] = g·s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSet {
    pub group: FiniteGroup,
    pub act: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: FiniteGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        let s = Self { group, act };
        let report = s.check();
        if !report.is_valid() {
            return Err(invalid(format!("not a G-set: {:?}", report.violations[0])));
        }
        Ok(s)
    }

    pub fn trivial(group: FiniteGroup, size: usize) -> Self {
        let act = vec![(0..size).collect(); group.order()];
        Self { group, act }
    }

    /// G acting on itself by left translation.
    pub fn regular(group: FiniteGroup) -> Self {
        let act = group
            .elements()
            .map(|g| group.elements().map(|s| group.mul(g, s)).collect())
            .collect();
        Self { group, act }
    }

    pub fn size(&self) -> usize {
        self.act.first().map_or(0, |r| r.len())
    }

    #[inline]
    pub fn act(&self, g: usize, s: usize) -> usize {
        self.act[g][s]
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let n = self.size();
        if self.act.len() != self.group.order() || self.act.iter().any(|r| r.len() != n) {
            report.push("shape", vec![]);
            return report;
        }
        for s in 0..n {
            if self.act[0][s] != s {
                report.push("action_unit", vec![s]);
            }
        }
        for h in self.group.elements() {
            for g in self.group.elements() {
                let hg = self.group.mul(h, g);
                for s in 0..n {
                    let t = self.act[g][s];
                    if t >= n || self.act[hg][s] != self.act[h][t] {
                        report.push("action_law", vec![h, g, s]);
                    }
                }
            }
        }
        report
    }
}

/// Elements fixed by every group element.
pub fn fixed_points(s: &GSet) -> Vec<usize> {
    (0..s.size())
        .filter(|&x| s.group.elements().all(|g| s.act(g, x) == x))
        .collect()
}

/// Coefficient object for nonabelian H^1: a finite monoid or group `A`
/// (identity at index 0) with a left action of `G`.
pub trait GCoefficients: Sync {
    fn acting_group(&self) -> &FiniteGroup;
    fn coeff_order(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
    fn inverse(&self, a: usize) -> Option<usize>;
    fn act(&self, g: usize, a: usize) -> usize;

    fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    fn units(&self) -> Vec<usize> {
        (0..self.coeff_order()).filter(|&a| self.is_unit(a)).collect()
    }
}

/// A group `A` with a left G-action `act[g][a]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GGroup {
    pub group: FiniteGroup,
    pub coeff: FiniteGroup,
    pub act: Vec<Vec<usize>>,
}

impl GGroup {
    /// Shape-checked only; run [`check_g_group`] for the laws.
    pub fn new(group: FiniteGroup, coeff: FiniteGroup, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != group.order() || act.iter().any(|r| r.len() != coeff.order()) {
            return Err(invalid("action table has wrong shape"));
        }
        if act.iter().flatten().any(|&a| a >= coeff.order()) {
            return Err(invalid("action value out of range"));
        }
        Ok(Self { group, coeff, act })
    }

    pub fn trivial(group: FiniteGroup, coeff: FiniteGroup) -> Self {
        let act = vec![(0..coeff.order()).collect(); group.order()];
        Self { group, coeff, act }
    }
}

impl GCoefficients for GGroup {
    fn acting_group(&self) -> &FiniteGroup {
        &self.group
    }
    fn coeff_order(&self) -> usize {
        self.coeff.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.coeff.mul(a, b)
    }
    fn inverse(&self, a: usize) -> Option<usize> {
        Some(self.coeff.inv(a))
    }
    fn act(&self, g: usize, a: usize) -> usize {
        self.act[g][a]
    }
}

/// A monoid `A` with a left G-action by bijective endomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GMonoid {
    pub group: FiniteGroup,
    pub coeff: FiniteMonoid,
    pub act: Vec<Vec<usize>>,
    units: Vec<Option<usize>>,
}

impl GMonoid {
    pub fn new(group: FiniteGroup, coeff: FiniteMonoid, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != group.order() || act.iter().any(|r| r.len() != coeff.order()) {
            return Err(invalid("action table has wrong shape"));
        }
        if act.iter().flatten().any(|&a| a >= coeff.order()) {
            return Err(invalid("action value out of range"));
        }
        let units = (0..coeff.order()).map(|a| coeff.inverse(a)).collect();
        Ok(Self {
            group,
            coeff,
            act,
            units,
        })
    }

    pub fn trivial(group: FiniteGroup, coeff: FiniteMonoid) -> Self {
        let act = vec![(0..coeff.order()).collect(); group.order()];
        Self::new(group, coeff, act).expect("trivial action has the right shape")
    }

    pub fn from_g_group(g: &GGroup) -> Self {
        Self::new(g.group.clone(), g.coeff.as_monoid(), g.act.clone()).expect("same shape")
    }
}

impl GCoefficients for GMonoid {
    fn acting_group(&self) -> &FiniteGroup {
        &self.group
    }
    fn coeff_order(&self) -> usize {
        self.coeff.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.coeff.mul(a, b)
    }
    fn inverse(&self, a: usize) -> Option<usize> {
        self.units[a]
    }
    fn act(&self, g: usize, a: usize) -> usize {
        self.act[g][a]
    }
}

/// Verifies `g(ab) = g(a)g(b)`, `g(1) = 1`, bijectivity of each `g(-)` and
/// the left-action law, for every `(g, a, b)`.
pub fn check_g_group<C: GCoefficients + ?Sized>(c: &C) -> Report {
    let mut report = Report::new();
    let group = c.acting_group();
    let n = c.coeff_order();
    for a in 0..n {
        if c.act(0, a) != a {
            report.push("action_unit", vec![a]);
        }
    }
    for g in group.elements() {
        if c.act(g, 0) != 0 {
            report.push("unital", vec![g]);
        }
        let mut hit = vec![false; n];
        for a in 0..n {
            hit[c.act(g, a)] = true;
        }
        if hit.iter().any(|h| !h) {
            report.push("bijective", vec![g]);
        }
        for a in 0..n {
            let ga = c.act(g, a);
            for b in 0..n {
                if c.act(g, c.op(a, b)) != c.op(ga, c.act(g, b)) {
                    report.push("homomorphism", vec![g, a, b]);
                }
            }
        }
    }
    for h in group.elements() {
        for g in group.elements() {
            let hg = group.mul(h, g);
            for a in 0..n {
                if c.act(hg, a) != c.act(h, c.act(g, a)) {
                    report.push("action_law", vec![h, g, a]);
                }
            }
        }
    }
    report
}

/// Propagates values from the identity along left multiplication by
/// generators: `value[s·x] = step(i, x, value[x])` where `s = gens[i]`.
/// Returns `None` on an inconsistent assignment.
pub(crate) fn extend_along_generators(
    group: &FiniteGroup,
    gens: &[usize],
    step: impl Fn(usize, usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let n = group.order();
    let mut value = vec![usize::MAX; n];
    value[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let y = group.mul(s, x);
            let v = step(i, x, value[x]);
            if value[y] == usize::MAX {
                value[y] = v;
                queue.push_back(y);
            } else if value[y] != v {
                return None;
            }
        }
    }
    if value.contains(&usize::MAX) {
        return None;
    }
    Some(value)
}

/// Mixed-radix counter over `base^len` tuples.
pub(crate) fn tuple_from_index(mut idx: u128, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = (idx % base as u128) as usize;
        idx /= base as u128;
    }
    out
}

/// All homomorphisms `g -> h` as image vectors, lexicographically sorted.
pub fn hom_set(g: &FiniteGroup, h: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    guard::check("domain group order", g.order() as u128, guard::GROUP_ORDER)?;
    let gens = g.generating_set();
    let total = guard::pow(h.order(), gens.len());
    guard::check("homomorphism candidates", total, guard::COCYCLE_CANDIDATES)?;
    let mut homs = Vec::new();
    for idx in 0..total {
        let images = tuple_from_index(idx, h.order(), gens.len());
        let Some(map) = extend_along_generators(g, &gens, |i, _x, vx| h.mul(images[i], vx)) else {
            continue;
        };
        let is_hom = g
            .elements()
            .all(|x| g.elements().all(|y| map[g.mul(x, y)] == h.mul(map[x], map[y])));
        if is_hom {
            homs.push(map);
        }
    }
    homs.sort();
    Ok(homs)
}

/// Partitions `homs` into orbits under pointwise conjugation by `target`.
/// Classes are listed by least member, members ascending.
pub fn hom_conjugacy_classes(homs: &[Vec<usize>], target: &FiniteGroup) -> Vec<Vec<usize>> {
    let index: HashMap<&[usize], usize> = homs
        .iter()
        .enumerate()
        .map(|(i, h)| (h.as_slice(), i))
        .collect();
    let mut class_of = vec![usize::MAX; homs.len()];
    let mut classes = Vec::new();
    for i in 0..homs.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for t in target.elements() {
            let ti = target.inv(t);
            let conj: Vec<usize> = homs[i]
                .iter()
                .map(|&v| target.mul(target.mul(t, v), ti))
                .collect();
            if let Some(&j) = index.get(conj.as_slice()) {
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

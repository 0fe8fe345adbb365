use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::guard;
use crate::report::Report;

const NONE: u32 = u32::MAX;

/// A finite category with dense object and morphism indices.
///
/// `compose(f, g)` is `f ∘ g` and is defined exactly when `src(f) = dst(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    comp: Vec<u32>,
    id: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: usize,
    pub morphisms: Vec<ArrowJson>,
    pub comp: Vec<Vec<Option<usize>>>,
    pub id: Vec<usize>,
}

impl FinCategory {
    /// Builds the composition table from `compose`, called on composable
    /// pairs only, then validates the category laws.
    pub fn new(
        objects: usize,
        arrows: &[(usize, usize)],
        id: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        guard::check("category objects", objects as u128, guard::CAT_OBJECTS)?;
        guard::check("category morphisms", arrows.len() as u128, guard::CAT_MORPHISMS)?;
        let n = arrows.len();
        if arrows.iter().any(|&(s, d)| s >= objects || d >= objects) {
            return Err(invalid("arrow endpoint out of range"));
        }
        if id.len() != objects || id.iter().any(|&i| i >= n) {
            return Err(invalid("identity table has wrong shape"));
        }
        let mut comp = vec![NONE; n * n];
        for f in 0..n {
            for g in 0..n {
                if arrows[f].0 == arrows[g].1 {
                    let c = compose(f, g);
                    if c >= n {
                        return Err(invalid(format!("composite {f}∘{g} out of range")));
                    }
                    comp[f * n + g] = c as u32;
                }
            }
        }
        Self::assemble(objects, arrows, id, comp)
    }

    fn assemble(
        objects: usize,
        arrows: &[(usize, usize)],
        id: Vec<usize>,
        comp: Vec<u32>,
    ) -> Result<Self> {
        let mut hom = vec![vec![Vec::new(); objects]; objects];
        for (f, &(s, d)) in arrows.iter().enumerate() {
            hom[s][d].push(f);
        }
        let cat = Self {
            objects,
            src: arrows.iter().map(|a| a.0).collect(),
            dst: arrows.iter().map(|a| a.1).collect(),
            comp,
            id,
            hom,
        };
        let report = cat.check();
        match report.violations.first() {
            None => Ok(cat),
            Some(v) => Err(Error::Invalid(format!(
                "category law {} fails at {:?}",
                v.law, v.witness
            ))),
        }
    }

    pub fn from_json(j: &CategoryJson) -> Result<Self> {
        guard::check("category objects", j.objects as u128, guard::CAT_OBJECTS)?;
        guard::check(
            "category morphisms",
            j.morphisms.len() as u128,
            guard::CAT_MORPHISMS,
        )?;
        let n = j.morphisms.len();
        if j.comp.len() != n || j.comp.iter().any(|r| r.len() != n) {
            return Err(invalid("composition table has wrong shape"));
        }
        if j.id.len() != j.objects || j.id.iter().any(|&i| i >= n) {
            return Err(invalid("identity table has wrong shape"));
        }
        let arrows: Vec<(usize, usize)> = j.morphisms.iter().map(|a| (a.src, a.dst)).collect();
        if arrows.iter().any(|&(s, d)| s >= j.objects || d >= j.objects) {
            return Err(invalid("arrow endpoint out of range"));
        }
        let mut comp = vec![NONE; n * n];
        for f in 0..n {
            for g in 0..n {
                let composable = arrows[f].0 == arrows[g].1;
                match (j.comp[f][g], composable) {
                    (Some(c), true) if c < n => comp[f * n + g] = c as u32,
                    (None, false) => {}
                    _ => {
                        return Err(invalid(format!(
                            "composition entry ({f},{g}) disagrees with arrow endpoints"
                        )))
                    }
                }
            }
        }
        Self::assemble(j.objects, &arrows, j.id.clone(), comp)
    }

    pub fn to_json(&self) -> CategoryJson {
        let n = self.morphisms();
        CategoryJson {
            objects: self.objects,
            morphisms: (0..n)
                .map(|f| ArrowJson {
                    src: self.src[f],
                    dst: self.dst[f],
                })
                .collect(),
            comp: (0..n)
                .map(|f| (0..n).map(|g| self.try_compose(f, g)).collect())
                .collect(),
            id: self.id.clone(),
        }
    }

    /// Identity, typing, closure and associativity laws.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let n = self.morphisms();
        for (x, &i) in self.id.iter().enumerate() {
            if self.src[i] != x || self.dst[i] != x {
                report.push("identity_typing", vec![x]);
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(c) = self.try_compose(f, g) else {
                    continue;
                };
                if self.src[c] != self.src[g] || self.dst[c] != self.dst[f] {
                    report.push("composite_typing", vec![f, g]);
                }
            }
            if self.try_compose(f, self.id[self.src[f]]) != Some(f)
                || self.try_compose(self.id[self.dst[f]], f) != Some(f)
            {
                report.push("identity", vec![f]);
            }
        }
        if !report.is_valid() {
            return report;
        }
        for f in 0..n {
            for g in &self.hom_into(self.src[f]) {
                let fg = self.compose(f, *g);
                for h in self.hom_into(self.src[*g]) {
                    if self.compose(fg, h) != self.compose(f, self.compose(*g, h)) {
                        report.push("associativity", vec![f, *g, h]);
                    }
                }
            }
        }
        report
    }

    fn hom_into(&self, x: usize) -> Vec<usize> {
        (0..self.objects).flat_map(|a| self.hom[a][x].iter().copied()).collect()
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn id(&self, x: usize) -> usize {
        self.id[x]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    pub fn try_compose(&self, f: usize, g: usize) -> Option<usize> {
        let c = self.comp[f * self.morphisms() + g];
        (c != NONE).then_some(c as usize)
    }

    /// `f ∘ g`; panics when not composable.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.try_compose(f, g)
            .unwrap_or_else(|| panic!("morphisms {f} and {g} are not composable"))
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (s, d) = (self.src[f], self.dst[f]);
        self.hom[d][s].iter().copied().find(|&g| {
            self.compose(g, f) == self.id[s] && self.compose(f, g) == self.id[d]
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_discrete(&self) -> bool {
        self.morphisms() == self.objects
    }

    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.hom[a][b].iter().any(|&f| self.is_iso(f))
    }

    /// Isomorphism classes of objects, each ascending, ordered by least member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.objects];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.objects {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let members: Vec<usize> = (x..self.objects)
                .filter(|&y| class_of[y] == usize::MAX && self.isomorphic(x, y))
                .collect();
            for &y in &members {
                class_of[y] = c;
            }
            classes.push(members);
        }
        classes
    }

    /// The category `1`.
    pub fn terminal() -> Self {
        Self::new(1, &[(0, 0)], vec![0], |_, _| 0).expect("terminal category")
    }

    /// Only identity morphisms.
    pub fn discrete(n: usize) -> Result<Self> {
        let arrows: Vec<(usize, usize)> = (0..n).map(|x| (x, x)).collect();
        Self::new(n, &arrows, (0..n).collect(), |f, _| f)
    }

    /// A one-object category from a monoid table (identity at 0).
    pub fn from_monoid(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let arrows = vec![(0, 0); n];
        Self::new(1, &arrows, vec![0], |f, g| table[f][g])
    }
}

/// A functor given by its object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinFunctor {
    pub omap: Vec<usize>,
    pub mmap: Vec<usize>,
}

impl FinFunctor {
    pub fn identity(cat: &FinCategory) -> Self {
        Self {
            omap: (0..cat.objects()).collect(),
            mmap: (0..cat.morphisms()).collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FinFunctor) -> FinFunctor {
        FinFunctor {
            omap: inner.omap.iter().map(|&x| self.omap[x]).collect(),
            mmap: inner.mmap.iter().map(|&f| self.mmap[f]).collect(),
        }
    }

    pub fn is_bijective(&self, target: &FinCategory) -> bool {
        fn bij(map: &[usize], n: usize) -> bool {
            let mut seen = vec![false; n];
            map.len() == n
                && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        }
        bij(&self.omap, target.objects()) && bij(&self.mmap, target.morphisms())
    }
}

/// Typing, identities and composition, over every composable pair.
pub fn check_functor(src: &FinCategory, dst: &FinCategory, f: &FinFunctor) -> Report {
    let mut report = Report::new();
    if f.omap.len() != src.objects()
        || f.mmap.len() != src.morphisms()
        || f.omap.iter().any(|&x| x >= dst.objects())
        || f.mmap.iter().any(|&m| m >= dst.morphisms())
    {
        report.push("shape", vec![]);
        return report;
    }
    for m in 0..src.morphisms() {
        let fm = f.mmap[m];
        if dst.src(fm) != f.omap[src.src(m)] || dst.dst(fm) != f.omap[src.dst(m)] {
            report.push("typing", vec![m]);
        }
    }
    for x in 0..src.objects() {
        if f.mmap[src.id(x)] != dst.id(f.omap[x]) {
            report.push("identity", vec![x]);
        }
    }
    if !report.is_valid() {
        return report;
    }
    for a in 0..src.morphisms() {
        for b in 0..src.morphisms() {
            if let Some(ab) = src.try_compose(a, b) {
                if f.mmap[ab] != dst.compose(f.mmap[a], f.mmap[b]) {
                    report.push("composition", vec![a, b]);
                }
            }
        }
    }
    report
}

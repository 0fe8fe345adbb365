//! Twisted forms over finite Galois field extensions: Hilbert 90 for
//! `GL_n`, étale algebras through `H^1(G, S_n)`, and Azumaya algebras
//! through `H^1(G, PGL_n)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::cohomology::{
    coboundary_act, enumerate_z1_brute, h1_classes, h1_from_cocycles, enumerate_z1, Cocycle,
};
use crate::descent::{check_semilinear, descend, SemilinearModule};
use crate::error::{invalid, Error, Result};
use crate::gfield::{ExtensionKind, GaloisExtension, Ring};
use crate::group_core::{hom_conjugacy_classes, hom_set, FiniteGroup, GCoefficients, GGroup};
use crate::guard;
use crate::linalg::{span_elements, FpMatrix};
use crate::matrix::{flatten, unflatten, EMatrix, MatrixGroup};

fn require_tower(ext: &GaloisExtension) -> Result<()> {
    if ext.kind == ExtensionKind::FieldTower {
        Ok(())
    } else {
        Err(invalid("suite needs a field tower"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtSummary {
    pub p: u32,
    pub m: usize,
}

fn summary(ext: &GaloisExtension) -> ExtSummary {
    ExtSummary {
        p: ext.p(),
        m: ext.dim(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hilbert90Report {
    pub suite: &'static str,
    pub ext: ExtSummary,
    pub n: usize,
    pub z1: usize,
    /// `|Z^1|` from a scan of all maps `G -> GL_n(E)`, when within guard.
    pub z1_brute: Option<usize>,
    pub h1: usize,
    pub distinguished: usize,
    /// Least cobounding matrix index per cocycle, in cocycle order.
    pub witnesses: Vec<usize>,
    pub witnesses_verified: bool,
    /// Witnesses from the averaging construction, one per cocycle.
    pub averaging_witnesses: Vec<usize>,
    pub averaging_verified: bool,
    pub holds: bool,
}

/// `φ(g) = b · g(b)^-1` for every `g`.
fn witness_ok<C: GCoefficients + ?Sized>(c: &C, phi: &Cocycle, b: usize) -> bool {
    let group = c.acting_group();
    group.elements().all(|g| {
        let gb_inv = c.inverse(c.act(g, b)).expect("group element");
        phi.values[g] == c.op(b, gb_inv)
    })
}

/// `b = Σ_h φ(h) σ_{h^-1}(c)` for the first matrix `c` making `b` invertible.
pub fn averaging_witness(gl: &MatrixGroup, phi: &Cocycle) -> Option<usize> {
    let ext = gl.extension();
    let ring = &ext.ring;
    let group = &ext.group;
    let n = gl.n;
    let q = ring.size() as u64;
    let total = (q as u128).pow((n * n) as u32);
    for idx in 0..total as u64 {
        let mut data = vec![0u32; n * n];
        let mut rest = idx;
        for slot in data.iter_mut().rev() {
            *slot = (rest % q) as u32;
            rest /= q;
        }
        let c = EMatrix {
            rows: n,
            cols: n,
            data,
        };
        let mut b = EMatrix::zeros(n, n);
        for h in group.elements() {
            let term = gl
                .element(phi.values[h])
                .mul(&c.sigma(ext, group.inv(h)), ring);
            b = b.add(&term, ring);
        }
        if let Some(i) = gl.index_of(&b) {
            return Some(i);
        }
    }
    None
}

pub fn hilbert90_suite(ext: &GaloisExtension, n: usize) -> Result<Hilbert90Report> {
    require_tower(ext)?;
    let gl = MatrixGroup::gl(ext, n)?;
    let cocycles = enumerate_z1(&gl)?;
    let brute_total = guard::pow(gl.order(), ext.group.order());
    let z1_brute = if brute_total <= guard::limit(guard::COCYCLE_CANDIDATES) {
        let brute = enumerate_z1_brute(&gl)?;
        if brute != cocycles {
            return Err(Error::Verification(
                "generator and brute-force cocycle sets differ".into(),
            ));
        }
        Some(brute.len())
    } else {
        None
    };
    let h1 = h1_from_cocycles(&gl, cocycles)?;
    let index: HashMap<&[usize], usize> = h1
        .cocycles
        .iter()
        .enumerate()
        .map(|(i, z)| (z.values.as_slice(), i))
        .collect();
    let mut witnesses = vec![usize::MAX; h1.cocycles.len()];
    let trivial = Cocycle::trivial(ext.group.order());
    for a in 0..gl.order() {
        let z = coboundary_act(&gl, a, &trivial)?;
        if let Some(&i) = index.get(z.values.as_slice()) {
            if witnesses[i] == usize::MAX {
                witnesses[i] = a;
            }
        }
    }
    if let Some(i) = witnesses.iter().position(|&w| w == usize::MAX) {
        return Err(Error::Verification(format!(
            "no cobounding witness for cocycle {i}"
        )));
    }
    let witnesses_verified = h1
        .cocycles
        .iter()
        .zip(&witnesses)
        .all(|(z, &b)| witness_ok(&gl, z, b));
    let averaging_witnesses: Vec<usize> = h1
        .cocycles
        .iter()
        .map(|z| averaging_witness(&gl, z).unwrap_or(usize::MAX))
        .collect();
    let averaging_verified = h1
        .cocycles
        .iter()
        .zip(&averaging_witnesses)
        .all(|(z, &b)| b != usize::MAX && witness_ok(&gl, z, b));
    let holds = h1.h1_size() == 1 && witnesses_verified && averaging_verified;
    Ok(Hilbert90Report {
        suite: "hilbert90",
        ext: summary(ext),
        n,
        z1: h1.cocycles.len(),
        z1_brute,
        h1: h1.h1_size(),
        distinguished: h1.distinguished,
        witnesses,
        witnesses_verified,
        averaging_witnesses,
        averaging_verified,
        holds,
    })
}

/// Multisets of divisors of `m` summing to `n`, each ascending, listed in
/// lexicographic order.
pub fn etale_census(m: usize, n: usize) -> Result<Vec<Vec<usize>>> {
    if m == 0 {
        return Err(invalid("extension degree must be positive"));
    }
    guard::check("etale algebra degree", n as u128, 8)?;
    let divisors: Vec<usize> = (1..=m).filter(|d| m % d == 0).collect();
    let mut out = Vec::new();
    fn rec(divs: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..divs.len() {
            if divs[i] > left {
                break;
            }
            cur.push(divs[i]);
            rec(divs, i, left - divs[i], cur, out);
            cur.pop();
        }
    }
    rec(&divisors, 0, n, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Permutation matrix with `P e_i = e_{s(i)}`.
pub fn permutation_matrix(ring: &Ring, perm: &[usize]) -> EMatrix {
    let n = perm.len();
    let mut m = EMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(j, i, ring.one());
    }
    m
}

/// A commutative B-algebra given by a B-basis inside `E^n` (pointwise product).
struct PointwiseAlgebra<'a> {
    ring: &'a Ring,
    elements: Vec<Vec<u32>>,
}

impl<'a> PointwiseAlgebra<'a> {
    fn new(ring: &'a Ring, basis: &[Vec<u32>], n: usize) -> Result<Self> {
        guard::check(
            "algebra size",
            guard::pow(ring.p() as usize, basis.len()),
            guard::SOLUTION_SPACE,
        )?;
        let flat: Vec<Vec<u32>> = basis.iter().map(|v| flatten(v, ring)).collect();
        let elements = span_elements(ring.p(), &flat, n * ring.dim())
            .into_iter()
            .map(|v| unflatten(&v, ring))
            .collect();
        Ok(Self { ring, elements })
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.ring.mul(x, y)).collect()
    }

    fn idempotents(&self) -> Vec<&Vec<u32>> {
        self.elements
            .iter()
            .filter(|e| e.iter().any(|&x| x != 0) && self.mul(e, e) == **e)
            .collect()
    }

    /// Factor degrees from the primitive idempotents `e`, via `|eA| = p^d`.
    fn shape(&self) -> Vec<usize> {
        let idem = self.idempotents();
        let primitive: Vec<&Vec<u32>> = idem
            .iter()
            .copied()
            .filter(|e| {
                !idem
                    .iter()
                    .any(|f| *f != *e && self.mul(e, f) == **f)
            })
            .collect();
        let p = self.ring.p() as usize;
        let mut shape: Vec<usize> = primitive
            .iter()
            .map(|e| {
                let mut ideal: Vec<Vec<u32>> = self.elements.iter().map(|a| self.mul(e, a)).collect();
                ideal.sort();
                ideal.dedup();
                let mut size = ideal.len();
                let mut d = 0;
                while size > 1 {
                    size /= p;
                    d += 1;
                }
                d
            })
            .collect();
        shape.sort_unstable();
        shape
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaleClass {
    pub representative: Vec<usize>,
    pub algebra_size: usize,
    pub shape: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaleReport {
    pub suite: &'static str,
    pub ext: ExtSummary,
    pub n: usize,
    pub homs: usize,
    pub h1: usize,
    /// `|H^1|` recomputed through coboundary orbits with trivial action.
    pub h1_cohomology: usize,
    pub classes: Vec<EtaleClass>,
    pub census: Vec<Vec<usize>>,
    /// Every census shape realized by exactly one class.
    pub bijective: bool,
}

pub fn etale_h1(ext: &GaloisExtension, n: usize) -> Result<EtaleReport> {
    require_tower(ext)?;
    guard::check("symmetric degree", n as u128, 5)?;
    guard::check("Galois group order", ext.group.order() as u128, 6)?;
    let ring = &ext.ring;
    let group = &ext.group;
    let sn = FiniteGroup::symmetric(n)?;
    let perms = crate::group_core::symmetric_permutations(n);
    let homs = hom_set(group, &sn)?;
    let classes = hom_conjugacy_classes(&homs, &sn);
    let h1_cohomology = h1_classes(&GGroup::trivial(group.clone(), sn.clone()))?.h1_size();
    let mut out = Vec::new();
    for cls in &classes {
        let phi = &homs[cls[0]];
        let mats = group
            .elements()
            .map(|g| permutation_matrix(ring, &perms[phi[group.inv(g)]]))
            .collect();
        let module = SemilinearModule { d: n, mats };
        let r = check_semilinear(ext, &module);
        if let Some(v) = r.violations.first() {
            return Err(Error::Verification(format!(
                "permutation twist fails {} at {:?}",
                v.law, v.witness
            )));
        }
        let fixed = descend(ext, &module)?;
        let alg = PointwiseAlgebra::new(ring, &fixed.basis, n)?;
        out.push(EtaleClass {
            representative: phi.clone(),
            algebra_size: alg.elements.len(),
            shape: alg.shape(),
        });
    }
    let census = etale_census(ext.dim(), n)?;
    let mut shapes: Vec<Vec<usize>> = out.iter().map(|c| c.shape.clone()).collect();
    shapes.sort();
    let bijective = shapes == census && classes.len() == h1_cohomology;
    Ok(EtaleReport {
        suite: "etale",
        ext: summary(ext),
        n,
        homs: homs.len(),
        h1: classes.len(),
        h1_cohomology,
        classes: out,
        census,
        bijective,
    })
}

/// `PGL_n(E)` with `g·[s] = [σ_{g^-1}(s)]`, after checking well-definedness.
pub fn pgl_group(ext: &GaloisExtension, n: usize) -> Result<MatrixGroup> {
    let pgl = MatrixGroup::pgl(ext, n)?;
    let r = pgl.check_well_defined();
    if let Some(v) = r.violations.first() {
        return Err(Error::Verification(format!(
            "PGL action not well defined at {:?}",
            v.witness
        )));
    }
    Ok(pgl)
}

/// A finite-dimensional B-algebra inside `M_n(E)`, given by a B-basis.
pub struct MatrixSubalgebra<'a> {
    ext: &'a GaloisExtension,
    pub n: usize,
    pub basis: Vec<EMatrix>,
    /// Columns are the flattened basis elements.
    coords: FpMatrix,
}

impl<'a> MatrixSubalgebra<'a> {
    pub fn new(ext: &'a GaloisExtension, n: usize, basis: Vec<EMatrix>) -> Self {
        let ring = &ext.ring;
        let cols: Vec<Vec<u32>> = basis.iter().map(|b| flatten(&b.data, ring)).collect();
        let coords = FpMatrix::from_columns(ext.p(), n * n * ring.dim(), &cols);
        Self {
            ext,
            n,
            basis,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn ring(&self) -> &Ring {
        &self.ext.ring
    }

    pub fn combine(&self, x: &[u32]) -> EMatrix {
        let ring = self.ring();
        let mut out = EMatrix::zeros(self.n, self.n);
        for (c, b) in x.iter().zip(&self.basis) {
            if *c != 0 {
                out = out.add(&b.scale(ring.scalar(*c), ring), ring);
            }
        }
        out
    }

    pub fn coordinates(&self, a: &EMatrix) -> Option<Vec<u32>> {
        self.coords.solve(&flatten(&a.data, self.ring()))
    }

    fn mul(&self, a: &EMatrix, b: &EMatrix) -> EMatrix {
        a.mul(b, self.ring())
    }

    pub fn elements(&self) -> Result<Vec<EMatrix>> {
        let p = self.ext.p() as usize;
        guard::check("algebra size", guard::pow(p, self.dim()), guard::SOLUTION_SPACE)?;
        let unit: Vec<Vec<u32>> = (0..self.dim())
            .map(|i| {
                let mut v = vec![0; self.dim()];
                v[i] = 1;
                v
            })
            .collect();
        Ok(span_elements(self.ext.p(), &unit, self.dim())
            .iter()
            .map(|x| self.combine(x))
            .collect())
    }

    /// Dimension of the center over B, via the commutator map.
    pub fn center_dim(&self) -> usize {
        let ring = self.ring();
        let k = self.dim();
        let mut cols = Vec::with_capacity(k);
        for i in 0..k {
            let mut col = Vec::new();
            for j in 0..k {
                let c = self
                    .mul(&self.basis[i], &self.basis[j])
                    .sub(&self.mul(&self.basis[j], &self.basis[i]), ring);
                col.extend(flatten(&c.data, ring));
            }
            cols.push(col);
        }
        let rows = cols.first().map_or(0, |c| c.len());
        k - FpMatrix::from_columns(self.ext.p(), rows, &cols).rank()
    }

    pub fn contains_identity(&self) -> bool {
        self.coordinates(&EMatrix::identity(self.ring(), self.n))
            .is_some()
    }

    /// Dimension of the two-sided ideal generated by `a`.
    pub fn ideal_dim(&self, a: &EMatrix) -> usize {
        let ring = self.ring();
        let mut cols = Vec::new();
        for x in &self.basis {
            let xa = self.mul(x, a);
            for y in &self.basis {
                cols.push(flatten(&self.mul(&xa, y).data, ring));
            }
        }
        FpMatrix::from_columns(self.ext.p(), self.n * self.n * ring.dim(), &cols).rank()
    }

    /// Every nonzero element generates the whole algebra as a two-sided ideal.
    pub fn is_simple(&self) -> Result<bool> {
        let k = self.dim();
        Ok(self
            .elements()?
            .iter()
            .filter(|a| !a.is_zero())
            .all(|a| self.ideal_dim(a) == k))
    }

    /// Left-regular representation on a left ideal `Ae` of B-dimension `r`,
    /// for the first idempotent `e` found with that dimension. Returns the
    /// images of the basis as `r × r` matrices over B.
    pub fn matrix_representation(&self, r: usize) -> Result<Option<Vec<FpMatrix>>> {
        let ring = self.ring();
        let p = self.ext.p();
        for e in self.elements()? {
            if e.is_zero() || self.mul(&e, &e) != e {
                continue;
            }
            let spans: Vec<EMatrix> = self.basis.iter().map(|x| self.mul(x, &e)).collect();
            let cols: Vec<Vec<u32>> = spans.iter().map(|s| flatten(&s.data, ring)).collect();
            let span = FpMatrix::from_columns(p, self.n * self.n * ring.dim(), &cols);
            let pivots = span.independent_columns();
            if pivots.len() != r {
                continue;
            }
            let w: Vec<Vec<u32>> = pivots.iter().map(|&i| cols[i].clone()).collect();
            let wmat = FpMatrix::from_columns(p, self.n * self.n * ring.dim(), &w);
            let mut images = Vec::with_capacity(self.dim());
            for x in &self.basis {
                let mut lcols = Vec::with_capacity(r);
                for wj in &w {
                    let wj_mat = EMatrix {
                        rows: self.n,
                        cols: self.n,
                        data: unflatten(wj, ring),
                    };
                    let img = self.mul(x, &wj_mat);
                    let c = wmat.solve(&flatten(&img.data, ring)).ok_or_else(|| {
                        Error::Verification("left ideal not closed".into())
                    })?;
                    lcols.push(c);
                }
                images.push(FpMatrix::from_columns(p, r, &lcols));
            }
            return Ok(Some(images));
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AzumayaClass {
    pub representative: Vec<usize>,
    pub dim: usize,
    pub center_dim: usize,
    pub central: bool,
    pub simple: bool,
    pub iso_to_matrix_algebra: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AzumayaReport {
    pub suite: &'static str,
    pub ext: ExtSummary,
    pub n: usize,
    pub pgl_order: usize,
    pub z1: usize,
    pub h1: usize,
    pub classes: Vec<AzumayaClass>,
    pub holds: bool,
}

/// `t·g = S_{g^-1} σ_g(t) S_{g^-1}^-1` on `M_n(E)`.
fn twisted_conjugation(
    ext: &GaloisExtension,
    pgl: &MatrixGroup,
    phi: &Cocycle,
    t: &EMatrix,
    g: usize,
) -> EMatrix {
    let ring = &ext.ring;
    let s = pgl.element(phi.values[ext.group.inv(g)]);
    let s_inv = s.inverse(ring).expect("invertible representative");
    s.mul(&t.sigma(ext, g), ring).mul(&s_inv, ring)
}

fn matrix_unit_basis(ring: &Ring, n: usize) -> Vec<EMatrix> {
    let m = ring.dim();
    (0..n * n * m)
        .map(|idx| {
            let mut t = EMatrix::zeros(n, n);
            t.data[idx / m] = ring.basis(idx % m);
            t
        })
        .collect()
}

/// The fixed B-subalgebra of the twisted action, after checking the action
/// law on a B-basis.
fn twisted_fixed_algebra<'a>(
    ext: &'a GaloisExtension,
    pgl: &MatrixGroup,
    phi: &Cocycle,
) -> Result<MatrixSubalgebra<'a>> {
    let ring = &ext.ring;
    let group = &ext.group;
    let n = pgl.n;
    let basis = matrix_unit_basis(ring, n);
    for t in &basis {
        for h in group.elements() {
            let th = twisted_conjugation(ext, pgl, phi, t, h);
            for g in group.elements() {
                let lhs = twisted_conjugation(ext, pgl, phi, &th, g);
                let rhs = twisted_conjugation(ext, pgl, phi, t, group.mul(h, g));
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "twisted conjugation is not an action at h={h}, g={g}"
                    )));
                }
            }
        }
    }
    let dim = basis.len();
    let p = ext.p();
    let mut system = FpMatrix::zeros(p, 0, dim);
    for g in ext.solving_generators() {
        let cols: Vec<Vec<u32>> = basis
            .iter()
            .map(|t| {
                let moved = twisted_conjugation(ext, pgl, phi, t, g).sub(t, ring);
                flatten(&moved.data, ring)
            })
            .collect();
        system.stack(&FpMatrix::from_columns(p, dim, &cols));
    }
    let fixed = system
        .kernel()
        .into_iter()
        .map(|v| EMatrix {
            rows: n,
            cols: n,
            data: unflatten(&v, ring),
        })
        .collect();
    Ok(MatrixSubalgebra::new(ext, n, fixed))
}

/// Checks that `images` (one per basis element) define a bijective unital
/// algebra homomorphism onto `M_r(B)`.
fn is_algebra_iso(alg: &MatrixSubalgebra, images: &[FpMatrix], r: usize) -> bool {
    let p = alg.ext.p();
    let k = alg.dim();
    if k != r * r {
        return false;
    }
    let cols: Vec<Vec<u32>> = images
        .iter()
        .map(|m| (0..r).flat_map(|i| (0..r).map(move |j| m.get(i, j))).collect())
        .collect();
    if FpMatrix::from_columns(p, r * r, &cols).rank() != k {
        return false;
    }
    let apply = |x: &[u32]| -> FpMatrix {
        let mut out = FpMatrix::zeros(p, r, r);
        for (c, m) in x.iter().zip(images) {
            for i in 0..r {
                for j in 0..r {
                    out.set(i, j, (out.get(i, j) + c * m.get(i, j)) % p);
                }
            }
        }
        out
    };
    let ring = alg.ring();
    let Some(one) = alg.coordinates(&EMatrix::identity(ring, alg.n)) else {
        return false;
    };
    if apply(&one) != FpMatrix::identity(p, r) {
        return false;
    }
    for i in 0..k {
        for j in 0..k {
            let prod = alg.mul(&alg.basis[i], &alg.basis[j]);
            let Some(x) = alg.coordinates(&prod) else {
                return false;
            };
            if apply(&x) != images[i].mul(&images[j]) {
                return false;
            }
        }
    }
    true
}

pub fn azumaya_suite(ext: &GaloisExtension, n: usize) -> Result<AzumayaReport> {
    require_tower(ext)?;
    let pgl = pgl_group(ext, n)?;
    let h1 = h1_classes(&pgl)?;
    let mut classes = Vec::new();
    for rep in h1.representatives() {
        let alg = twisted_fixed_algebra(ext, &pgl, rep)?;
        let center_dim = alg.center_dim();
        let central = center_dim == 1 && alg.contains_identity();
        let simple = alg.is_simple()?;
        let iso = match alg.matrix_representation(n)? {
            Some(images) => is_algebra_iso(&alg, &images, n),
            None => false,
        };
        classes.push(AzumayaClass {
            representative: rep.values.clone(),
            dim: alg.dim(),
            center_dim,
            central,
            simple,
            iso_to_matrix_algebra: iso,
        });
    }
    let holds = h1.h1_size() == 1
        && classes
            .iter()
            .all(|c| c.dim == n * n && c.central && c.simple && c.iso_to_matrix_algebra);
    Ok(AzumayaReport {
        suite: "azumaya",
        ext: summary(ext),
        n,
        pgl_order: pgl.order(),
        z1: h1.cocycles.len(),
        h1: h1.h1_size(),
        classes,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkolemNoetherReport {
    /// Systems of 2×2 matrix units in `M_2(E)`, i.e. E-algebra automorphisms.
    pub automorphisms: usize,
    /// Distinct inner automorphisms `t -> s t s^-1`.
    pub inner: usize,
    pub pgl_order: usize,
    pub holds: bool,
}

/// Counts E-algebra automorphisms of `M_2(E)` directly and compares with
/// `|PGL_2(E)|`.
pub fn skolem_noether_count(ext: &GaloisExtension) -> Result<SkolemNoetherReport> {
    let ring = &ext.ring;
    if !ring.is_field() {
        return Err(invalid("needs a field"));
    }
    let q = ring.size() as usize;
    guard::check("matrix algebra size", guard::pow(q, 4), 1 << 16)?;
    let one = EMatrix::identity(ring, 2);
    let all: Vec<EMatrix> = (0..q.pow(4))
        .map(|mut idx| {
            let mut data = vec![0u32; 4];
            for slot in data.iter_mut().rev() {
                *slot = (idx % q) as u32;
                idx /= q;
            }
            EMatrix {
                rows: 2,
                cols: 2,
                data,
            }
        })
        .collect();
    let mul = |a: &EMatrix, b: &EMatrix| a.mul(b, ring);
    let zero = EMatrix::zeros(2, 2);
    let mut automorphisms = 0;
    for f11 in &all {
        if *f11 == zero || *f11 == one || mul(f11, f11) != *f11 {
            continue;
        }
        let f22 = one.sub(f11, ring);
        for f12 in &all {
            if *f12 == zero || mul(f11, f12) != *f12 || mul(f12, &f22) != *f12 {
                continue;
            }
            for f21 in &all {
                if mul(f12, f21) == *f11
                    && mul(f21, f12) == f22
                    && mul(f21, f11) == *f21
                    && mul(&f22, f21) == *f21
                {
                    automorphisms += 1;
                }
            }
        }
    }
    let pgl = MatrixGroup::pgl(ext, 2)?;
    let basis = matrix_unit_basis(ring, 2);
    let mut inner: Vec<Vec<EMatrix>> = pgl
        .elements()
        .iter()
        .map(|s| {
            let s_inv = s.inverse(ring).expect("invertible");
            basis.iter().map(|t| mul(&mul(s, t), &s_inv)).collect()
        })
        .collect();
    inner.sort();
    inner.dedup();
    Ok(SkolemNoetherReport {
        automorphisms,
        inner: inner.len(),
        pgl_order: pgl.order(),
        holds: automorphisms == pgl.order() && inner.len() == pgl.order(),
    })
}

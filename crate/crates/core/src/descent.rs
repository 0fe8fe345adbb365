//! Galois descent between semilinear modules over `E` and modules over `B`.
//!
//! A semilinear module is `E^d` with right action `d·g = M_g σ_g(d)`; the
//! action law reads `M_{hg} = M_g σ_g(M_h)` with `M_1 = I`. A morphism
//! `N: D -> D'` is equivariant when `N M_g = M'_g σ_g(N)`.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::{h1_classes, Cocycle};
use crate::error::{invalid, Error, Result};
use crate::gfield::{ExtDescriptor, GaloisExtension, Ring};
use crate::guard;
use crate::linalg::{span_elements, FpMatrix};
use crate::matrix::{flatten, sigma_b_matrix, unflatten, EMatrix, MatrixGroup};
use crate::report::Report;

/// A free B-module, described by its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BModule {
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearModule {
    pub d: usize,
    /// `mats[g]`, one per group element.
    pub mats: Vec<EMatrix>,
}

impl SemilinearModule {
    /// `M_g σ_g(v)`.
    pub fn act(&self, ext: &GaloisExtension, v: &[u32], g: usize) -> Vec<u32> {
        let sv: Vec<u32> = v.iter().map(|&e| ext.sigma(g, e)).collect();
        self.mats[g].mul(&EMatrix::column(&sv), &ext.ring).data
    }

    /// B-matrix of `v -> v·g` on the flattened `E^d`.
    pub fn action_b_matrix(&self, ext: &GaloisExtension, g: usize) -> FpMatrix {
        self.mats[g]
            .b_matrix(&ext.ring)
            .mul(&sigma_b_matrix(ext, g, self.d))
    }
}

const SEMILINEAR_SAMPLES: usize = 16;

pub fn check_semilinear(ext: &GaloisExtension, module: &SemilinearModule) -> Report {
    let mut report = Report::new();
    let ring = &ext.ring;
    let group = &ext.group;
    let d = module.d;
    if module.mats.len() != group.order()
        || module
            .mats
            .iter()
            .any(|m| m.rows != d || m.cols != d || m.data.iter().any(|&e| e >= ring.size()))
    {
        report.push("shape", vec![module.mats.len()]);
        return report;
    }
    if module.mats[0] != EMatrix::identity(ring, d) {
        report.push("identity", vec![0]);
    }
    for g in group.elements() {
        if !module.mats[g].is_invertible(ring) {
            report.push("invertible", vec![g]);
        }
    }
    for h in group.elements() {
        for g in group.elements() {
            let rhs = module.mats[g].mul(&module.mats[h].sigma(ext, g), ring);
            if module.mats[group.mul(h, g)] != rhs {
                report.push("action_law", vec![h, g]);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..SEMILINEAR_SAMPLES {
        if d == 0 {
            break;
        }
        let e = rng.gen_range(0..ring.size());
        let v: Vec<u32> = (0..d).map(|_| rng.gen_range(0..ring.size())).collect();
        let g = rng.gen_range(0..group.order());
        let ev: Vec<u32> = v.iter().map(|&x| ring.mul(e, x)).collect();
        let lhs = module.act(ext, &ev, g);
        let eg = ext.sigma(g, e);
        let rhs: Vec<u32> = module
            .act(ext, &v, g)
            .into_iter()
            .map(|x| ring.mul(eg, x))
            .collect();
        if lhs != rhs {
            report.push("semilinear", vec![g, e as usize]);
        }
    }
    report
}

fn ensure_semilinear(ext: &GaloisExtension, module: &SemilinearModule) -> Result<()> {
    let r = check_semilinear(ext, module);
    match r.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Precondition(format!(
            "not a semilinear module: {} at {:?}",
            v.law, v.witness
        ))),
    }
}

/// `E ⊗_B A` with `(e ⊗ a)g = eg ⊗ a`.
pub fn ascend(ext: &GaloisExtension, a: BModule) -> SemilinearModule {
    SemilinearModule {
        d: a.dim,
        mats: vec![EMatrix::identity(&ext.ring, a.dim); ext.group.order()],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Descended {
    pub module: BModule,
    /// B-basis of `D^G` as vectors in `E^d`.
    pub basis: Vec<Vec<u32>>,
}

/// `D^G`, solved over the generators of G.
pub fn descend(ext: &GaloisExtension, module: &SemilinearModule) -> Result<Descended> {
    ensure_semilinear(ext, module)?;
    let basis = fixed_vectors(ext, module);
    Ok(Descended {
        module: BModule { dim: basis.len() },
        basis,
    })
}

fn fixed_vectors(ext: &GaloisExtension, module: &SemilinearModule) -> Vec<Vec<u32>> {
    let ring = &ext.ring;
    let n = module.d * ring.dim();
    let p = ext.p();
    let mut system = FpMatrix::zeros(p, 0, n);
    for g in ext.solving_generators() {
        let mut a = module.action_b_matrix(ext, g);
        for i in 0..n {
            a.set(i, i, (a.get(i, i) + p - 1) % p);
        }
        system.stack(&a);
    }
    system
        .kernel()
        .iter()
        .map(|v| unflatten(v, ring))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitIso {
    /// `d × dim D^G`; column `j` is the image of `1 ⊗ v_j`.
    pub matrix: EMatrix,
    pub equivariant: bool,
    pub bijective: bool,
}

/// `E ⊗_B D^G -> D`, `e ⊗ v -> ev`.
pub fn unit_iso(ext: &GaloisExtension, module: &SemilinearModule) -> Result<UnitIso> {
    let desc = descend(ext, module)?;
    let ring = &ext.ring;
    let k = desc.basis.len();
    let mut v = EMatrix::zeros(module.d, k);
    for (j, col) in desc.basis.iter().enumerate() {
        for (i, &e) in col.iter().enumerate() {
            v.set(i, j, e);
        }
    }
    let equivariant = ext
        .group
        .elements()
        .all(|g| module.mats[g].mul(&v.sigma(ext, g), ring) == v);
    let bijective = k == module.d && v.is_invertible(ring);
    Ok(UnitIso {
        matrix: v,
        equivariant,
        bijective,
    })
}

/// `a -> 1 ⊗ a` from `B^n` into `(E ⊗_B B^n)^G`.
pub fn counit_iso(ext: &GaloisExtension, a: BModule) -> Result<bool> {
    let up = ascend(ext, a);
    let desc = descend(ext, &up)?;
    let ring = &ext.ring;
    let units_fixed = (0..a.dim).all(|i| {
        let mut v = vec![0u32; a.dim];
        v[i] = ring.one();
        ext.group.elements().all(|g| up.act(ext, &v, g) == v)
    });
    Ok(units_fixed && desc.module.dim == a.dim)
}

fn hom_constraint_matrix(
    ext: &GaloisExtension,
    src: &SemilinearModule,
    dst: &SemilinearModule,
) -> FpMatrix {
    let ring = &ext.ring;
    let m = ring.dim();
    let (r, c) = (dst.d, src.d);
    let unknowns = r * c * m;
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(unknowns);
    let gens = ext.solving_generators();
    for idx in 0..unknowns {
        let (entry, l) = (idx / m, idx % m);
        let mut n = EMatrix::zeros(r, c);
        n.data[entry] = ring.basis(l);
        let mut col = Vec::new();
        for &g in &gens {
            let lhs = n.mul(&src.mats[g], ring);
            let rhs = dst.mats[g].mul(&n.sigma(ext, g), ring);
            col.extend(flatten(&lhs.sub(&rhs, ring).data, ring));
        }
        cols.push(col);
    }
    let rows = cols.first().map_or(0, |c| c.len());
    FpMatrix::from_columns(ext.p(), rows, &cols)
}

/// All `N` (`d2 × d1`) with `N M_g = M'_g σ_g(N)`.
pub fn equivariant_homs(
    ext: &GaloisExtension,
    src: &SemilinearModule,
    dst: &SemilinearModule,
) -> Result<Vec<EMatrix>> {
    ensure_semilinear(ext, src)?;
    ensure_semilinear(ext, dst)?;
    let basis = equivariant_hom_basis(ext, src, dst);
    guard::check(
        "equivariant hom space",
        guard::pow(ext.p() as usize, basis.len()),
        guard::SOLUTION_SPACE,
    )?;
    let flat: Vec<Vec<u32>> = basis.iter().map(|n| flatten(&n.data, &ext.ring)).collect();
    let len = dst.d * src.d * ext.dim();
    Ok(span_elements(ext.p(), &flat, len)
        .into_iter()
        .map(|v| EMatrix {
            rows: dst.d,
            cols: src.d,
            data: unflatten(&v, &ext.ring),
        })
        .collect())
}

/// A B-basis of the equivariant hom space.
pub fn equivariant_hom_basis(
    ext: &GaloisExtension,
    src: &SemilinearModule,
    dst: &SemilinearModule,
) -> Vec<EMatrix> {
    let ring = &ext.ring;
    if src.d == 0 || dst.d == 0 {
        return Vec::new();
    }
    hom_constraint_matrix(ext, src, dst)
        .kernel()
        .into_iter()
        .map(|v| EMatrix {
            rows: dst.d,
            cols: src.d,
            data: unflatten(&v, ring),
        })
        .collect()
}

pub fn is_equivariant(
    ext: &GaloisExtension,
    src: &SemilinearModule,
    dst: &SemilinearModule,
    n: &EMatrix,
) -> bool {
    ext.group.elements().all(|g| {
        n.mul(&src.mats[g], &ext.ring) == dst.mats[g].mul(&n.sigma(ext, g), &ext.ring)
    })
}

/// An invertible equivariant map, least in enumeration order.
pub fn iso_witness(
    ext: &GaloisExtension,
    a: &SemilinearModule,
    b: &SemilinearModule,
) -> Result<Option<EMatrix>> {
    if a.d != b.d {
        return Ok(None);
    }
    Ok(equivariant_homs(ext, a, b)?
        .into_iter()
        .find(|n| n.is_invertible(&ext.ring)))
}

pub fn iso_test(ext: &GaloisExtension, a: &SemilinearModule, b: &SemilinearModule) -> Result<bool> {
    Ok(iso_witness(ext, a, b)?.is_some())
}

/// The B-linear map `D1^G -> D2^G` induced by an equivariant `n`, in the
/// bases returned by [`descend`].
pub fn descend_map(
    ext: &GaloisExtension,
    src: &SemilinearModule,
    dst: &SemilinearModule,
    n: &EMatrix,
) -> Result<FpMatrix> {
    if !is_equivariant(ext, src, dst, n) {
        return Err(Error::Precondition("map is not equivariant".into()));
    }
    let ring = &ext.ring;
    let d_src = descend(ext, src)?;
    let d_dst = descend(ext, dst)?;
    let target = FpMatrix::from_columns(
        ext.p(),
        dst.d * ring.dim(),
        &d_dst
            .basis
            .iter()
            .map(|v| flatten(v, ring))
            .collect::<Vec<_>>(),
    );
    let mut cols = Vec::new();
    for v in &d_src.basis {
        let image = n.mul(&EMatrix::column(v), ring).data;
        cols.push(
            target
                .solve(&flatten(&image, ring))
                .ok_or_else(|| Error::Verification("vector outside the fixed space".into()))?,
        );
    }
    Ok(FpMatrix::from_columns(ext.p(), d_dst.basis.len(), &cols))
}

/// `GL_d(E)` with `g·M = σ_{g^-1}(M)`.
pub fn induced_aut_action(ext: &GaloisExtension, a0: BModule) -> Result<MatrixGroup> {
    MatrixGroup::gl(ext, a0.dim)
}

const STAR_SAMPLES: usize = 8;

/// Twist of `E ⊗ A0` by a cocycle `φ` into `GL_d(E)`: `M_g = φ(g^-1)`.
///
/// Verifies the module law and, on sampled vectors, the star-action law
/// `t*hg = ((t*h)·h * g)·h^-1` for `t*g = φ(g)^-1 t`.
pub fn twist(ext: &GaloisExtension, gl: &MatrixGroup, phi: &Cocycle) -> Result<SemilinearModule> {
    let group = &ext.group;
    if !crate::cohomology::is_cocycle(&phi.values, gl) {
        return Err(Error::Precondition("not a cocycle for the induced action".into()));
    }
    let d = gl.n;
    let mats = group
        .elements()
        .map(|g| gl.element(phi.values[group.inv(g)]).clone())
        .collect();
    let module = SemilinearModule { d, mats };
    let report = check_semilinear(ext, &module);
    if let Some(v) = report.violations.first() {
        return Err(Error::Verification(format!(
            "twisted module fails {} at {:?}",
            v.law, v.witness
        )));
    }
    star_law_spot_check(ext, gl, phi)?;
    Ok(module)
}

fn star_law_spot_check(ext: &GaloisExtension, gl: &MatrixGroup, phi: &Cocycle) -> Result<()> {
    let ring = &ext.ring;
    let group = &ext.group;
    let d = gl.n;
    let star = |t: &[u32], g: usize| -> Vec<u32> {
        let p = gl.element(gl.inv(phi.values[g]));
        p.mul(&EMatrix::column(t), ring).data
    };
    let fixed = |t: &[u32], g: usize| -> Vec<u32> { t.iter().map(|&e| ext.sigma(g, e)).collect() };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..STAR_SAMPLES {
        let t: Vec<u32> = (0..d).map(|_| rng.gen_range(0..ring.size())).collect();
        for h in group.elements() {
            for g in group.elements() {
                let lhs = star(&t, group.mul(h, g));
                let rhs = fixed(&star(&fixed(&star(&t, h), h), g), group.inv(h));
                if lhs != rhs {
                    return Err(Error::Verification(format!(
                        "star-action law fails at h={h}, g={g}"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInfo {
    pub class: usize,
    pub representative: Vec<usize>,
    pub descended_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormsReport {
    pub z1: usize,
    pub h1: usize,
    pub forms: Vec<FormInfo>,
    /// Pairs of distinct classes whose twists are isomorphic.
    pub collisions: Vec<(usize, usize)>,
    pub bijective: bool,
}

/// Twisted forms of `B^d` against `H^1(G, GL_d(E))`.
pub fn classify_forms(ext: &GaloisExtension, a0: BModule) -> Result<FormsReport> {
    let gl = induced_aut_action(ext, a0)?;
    let h1 = h1_classes(&gl)?;
    let mut forms = Vec::new();
    let mut twisted = Vec::new();
    for (c, rep) in h1.representatives().into_iter().enumerate() {
        let module = twist(ext, &gl, rep)?;
        let desc = descend(ext, &module)?;
        forms.push(FormInfo {
            class: c,
            representative: rep.values.clone(),
            descended_dim: desc.module.dim,
        });
        twisted.push(module);
    }
    let mut collisions = Vec::new();
    for i in 0..twisted.len() {
        for j in i + 1..twisted.len() {
            if iso_test(ext, &twisted[i], &twisted[j])? {
                collisions.push((i, j));
            }
        }
    }
    let bijective = collisions.is_empty() && forms.iter().all(|f| f.descended_dim == a0.dim);
    Ok(FormsReport {
        z1: h1.cocycles.len(),
        h1: h1.h1_size(),
        forms,
        collisions,
        bijective,
    })
}

pub fn random_invertible(ring: &Ring, d: usize, rng: &mut impl Rng) -> EMatrix {
    loop {
        let m = EMatrix {
            rows: d,
            cols: d,
            data: (0..d * d).map(|_| rng.gen_range(0..ring.size())).collect(),
        };
        if m.is_invertible(ring) {
            return m;
        }
    }
}

/// `M_g = P σ_g(P)^-1` for a random invertible `P`.
pub fn random_module(ext: &GaloisExtension, d: usize, rng: &mut impl Rng) -> SemilinearModule {
    let ring = &ext.ring;
    let p = random_invertible(ring, d, rng);
    let mats = ext
        .group
        .elements()
        .map(|g| {
            let inv = p.sigma(ext, g).inverse(ring).expect("σ preserves invertibility");
            p.mul(&inv, ring)
        })
        .collect();
    SemilinearModule { d, mats }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Index(u32),
    Coeffs(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub ext: ExtDescriptor,
    pub d: usize,
    /// Keyed by group element index.
    pub mats: BTreeMap<String, Vec<Vec<ElementJson>>>,
}

impl ModuleJson {
    pub fn from_module(ext: &GaloisExtension, module: &SemilinearModule) -> Result<Self> {
        let desc = ext
            .descriptor()
            .ok_or_else(|| invalid("custom extensions have no descriptor"))?;
        let mats = module
            .mats
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let rows = m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|e| ElementJson::Coeffs(ext.ring.coords(e))).collect())
                    .collect();
                (g.to_string(), rows)
            })
            .collect();
        Ok(Self {
            ext: desc,
            d: module.d,
            mats,
        })
    }

    /// Missing group elements default to the identity matrix.
    pub fn to_module(&self) -> Result<(GaloisExtension, SemilinearModule)> {
        let ext = self.ext.build()?;
        let ring = &ext.ring;
        let mut mats = vec![EMatrix::identity(ring, self.d); ext.group.order()];
        for (key, rows) in &self.mats {
            let g: usize = key
                .parse()
                .map_err(|_| invalid(format!("bad group element key {key}")))?;
            if g >= mats.len() {
                return Err(invalid(format!("group element {g} out of range")));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|e| element_from_json(ring, e)).collect())
                .collect::<Result<Vec<Vec<u32>>>>()?;
            let m = EMatrix::from_rows(&rows)?;
            if m.rows != self.d || m.cols != self.d {
                return Err(invalid(format!("matrix for {g} is not {0}x{0}", self.d)));
            }
            mats[g] = m;
        }
        Ok((ext, SemilinearModule { d: self.d, mats }))
    }
}

pub fn element_from_json(ring: &Ring, e: &ElementJson) -> Result<u32> {
    match e {
        ElementJson::Index(i) if *i < ring.size() => Ok(*i),
        ElementJson::Coeffs(c) if c.len() == ring.dim() && c.iter().all(|&x| x < ring.p()) => {
            Ok(ring.from_coords(c))
        }
        other => Err(invalid(format!("bad ring element {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::check_g_group;

    fn f4() -> GaloisExtension {
        GaloisExtension::tower(2, 2).unwrap()
    }

    /// `M_σ = (ω)` over F_4, with ω encoded as 2.
    fn omega_module() -> SemilinearModule {
        SemilinearModule {
            d: 1,
            mats: vec![EMatrix::scalar(1, 1), EMatrix::scalar(1, 2)],
        }
    }

    #[test]
    fn semilinear_checks() {
        let ext = f4();
        assert!(check_semilinear(&ext, &ascend(&ext, BModule { dim: 2 })).is_valid());
        assert!(check_semilinear(&ext, &omega_module()).is_valid());
        let bad = SemilinearModule {
            d: 1,
            mats: vec![EMatrix::scalar(1, 2), EMatrix::scalar(1, 1)],
        };
        assert!(check_semilinear(&ext, &bad).has("identity"));
    }

    #[test]
    fn omega_module_descends() {
        let ext = f4();
        let m = omega_module();
        let desc = descend(&ext, &m).unwrap();
        assert_eq!(desc.module.dim, 1);
        let v = desc.basis[0][0];
        // ω v^2 = v
        assert_eq!(ext.ring.mul(2, ext.ring.mul(v, v)), v);
        let iso = unit_iso(&ext, &m).unwrap();
        assert!(iso.bijective && iso.equivariant);
        assert!(iso_test(&ext, &m, &ascend(&ext, BModule { dim: 1 })).unwrap());
    }

    #[test]
    fn split_diagonal() {
        let ext = GaloisExtension::split(2, crate::group_core::FiniteGroup::cyclic(2)).unwrap();
        let up = ascend(&ext, BModule { dim: 1 });
        let desc = descend(&ext, &up).unwrap();
        assert_eq!(desc.basis, vec![vec![3]]);
        assert!(counit_iso(&ext, BModule { dim: 1 }).unwrap());
    }

    #[test]
    fn scalar_endomorphisms() {
        let ext = f4();
        let b = ascend(&ext, BModule { dim: 1 });
        let homs = equivariant_homs(&ext, &b, &b).unwrap();
        assert_eq!(homs.len(), 2);
        let b2 = ascend(&ext, BModule { dim: 2 });
        assert!(!iso_test(&ext, &b, &b2).unwrap());
    }

    #[test]
    fn induced_action_on_f4_units() {
        let ext = f4();
        let gl = induced_aut_action(&ext, BModule { dim: 1 }).unwrap();
        assert_eq!(gl.order(), 3);
        assert!(check_g_group(&gl).is_valid());
        let gl2 = induced_aut_action(&ext, BModule { dim: 2 }).unwrap();
        assert_eq!(gl2.order(), 180);
        assert!(check_g_group(&gl2).is_valid());
    }

    #[test]
    fn twist_of_omega() {
        let ext = f4();
        let gl = induced_aut_action(&ext, BModule { dim: 1 }).unwrap();
        let omega = gl.index_of(&EMatrix::scalar(1, 2)).unwrap();
        let phi = Cocycle {
            values: vec![0, omega],
        };
        let t = twist(&ext, &gl, &phi).unwrap();
        assert_eq!(t, omega_module());
        let triv = twist(&ext, &gl, &Cocycle::trivial(2)).unwrap();
        assert_eq!(triv, ascend(&ext, BModule { dim: 1 }));
    }

    #[test]
    fn classification_f4() {
        let ext = f4();
        let r = classify_forms(&ext, BModule { dim: 1 }).unwrap();
        assert_eq!((r.z1, r.h1), (3, 1));
        assert!(r.bijective);
    }

    #[test]
    fn module_json_round_trip() {
        let ext = f4();
        let m = omega_module();
        let j = ModuleJson::from_module(&ext, &m).unwrap();
        let s = serde_json::to_string(&j).unwrap();
        let back: ModuleJson = serde_json::from_str(&s).unwrap();
        let (e2, m2) = back.to_module().unwrap();
        assert_eq!(e2, ext);
        assert_eq!(m2, m);
        let short: ModuleJson = serde_json::from_str(
            r#"{"ext":{"kind":"field-tower","p":2,"m":2},"d":1,"mats":{"1":[[2]]}}"#,
        )
        .unwrap();
        assert_eq!(short.to_module().unwrap().1, m);
    }
}

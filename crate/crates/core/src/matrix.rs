//! Matrices over a finite commutative ring `E`, and the groups
//! `GL_n(E)` / `PGL_n(E)` with the entrywise Galois action
//! `g·M = σ_{g^-1}(M)`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gfield::{GaloisExtension, Ring};
use crate::group_core::{FiniteGroup, GCoefficients};
use crate::guard;
use crate::linalg::FpMatrix;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl EMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn scalar(n: usize, e: u32) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("ragged matrix rows"));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn column(v: &[u32]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &EMatrix, ring: &Ring) -> EMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ring.add(out.get(i, j), ring.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &EMatrix, ring: &Ring) -> EMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ring.add(a, b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &EMatrix, ring: &Ring) -> EMatrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ring.sub(a, b))
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, e: u32, ring: &Ring) -> EMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ring.mul(e, a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&a| a == 0)
    }

    /// Entrywise `e -> e·g`.
    pub fn sigma(&self, ext: &GaloisExtension, g: usize) -> EMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ext.sigma(g, a)).collect(),
        }
    }

    /// B-matrix of `v -> M v` from `E^cols` to `E^rows`, coordinates of
    /// `E^k` flattened as `(i, k) -> i*m + k`.
    pub fn b_matrix(&self, ring: &Ring) -> FpMatrix {
        let m = ring.dim();
        let mut out = FpMatrix::zeros(ring.p(), self.rows * m, self.cols * m);
        for j in 0..self.cols {
            for l in 0..m {
                let b = ring.basis(l);
                for i in 0..self.rows {
                    let c = ring.coords(ring.mul(self.get(i, j), b));
                    for (k, v) in c.into_iter().enumerate() {
                        out.set(i * m + k, j * m + l, v);
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self, ring: &Ring) -> Option<EMatrix> {
        if !self.is_square() {
            return None;
        }
        match ring {
            Ring::Field(_) => self.inverse_field(ring),
            Ring::Split(_) => self.inverse_linear(ring),
        }
    }

    pub fn is_invertible(&self, ring: &Ring) -> bool {
        self.inverse(ring).is_some()
    }

    fn inverse_field(&self, ring: &Ring) -> Option<EMatrix> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(ring, n);
        for c in 0..n {
            let pr = (c..n).find(|&i| a.get(i, c) != 0)?;
            if pr != c {
                for j in 0..n {
                    a.data.swap(pr * n + j, c * n + j);
                    inv.data.swap(pr * n + j, c * n + j);
                }
            }
            let piv = ring.inv(a.get(c, c))?;
            for j in 0..n {
                a.set(c, j, ring.mul(piv, a.get(c, j)));
                inv.set(c, j, ring.mul(piv, inv.get(c, j)));
            }
            for i in 0..n {
                let f = a.get(i, c);
                if i == c || f == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(i, j, ring.sub(a.get(i, j), ring.mul(f, a.get(c, j))));
                    inv.set(i, j, ring.sub(inv.get(i, j), ring.mul(f, inv.get(c, j))));
                }
            }
        }
        Some(inv)
    }

    fn inverse_linear(&self, ring: &Ring) -> Option<EMatrix> {
        let n = self.rows;
        let m = ring.dim();
        let kinv = self.b_matrix(ring).inverse()?;
        let mut out = Self::zeros(n, n);
        for j in 0..n {
            let mut e = vec![0u32; n * m];
            for (k, c) in ring.coords(ring.one()).into_iter().enumerate() {
                e[j * m + k] = c;
            }
            let col = kinv.mul_vec(&e);
            for i in 0..n {
                out.set(i, j, ring.from_coords(&col[i * m..(i + 1) * m]));
            }
        }
        Some(out)
    }

    /// Scales so the first nonzero entry (row-major) is 1. Field only.
    pub fn projective_canonical(&self, ring: &Ring) -> EMatrix {
        match self.data.iter().find(|&&a| a != 0) {
            Some(&lead) => self.scale(ring.inv(lead).expect("field element"), ring),
            None => self.clone(),
        }
    }
}

/// Flattens `v ∈ E^d` to its B-coordinates.
pub fn flatten(v: &[u32], ring: &Ring) -> Vec<u32> {
    v.iter().flat_map(|&e| ring.coords(e)).collect()
}

pub fn unflatten(v: &[u32], ring: &Ring) -> Vec<u32> {
    v.chunks(ring.dim()).map(|c| ring.from_coords(c)).collect()
}

/// Block-diagonal B-matrix of entrywise `σ_g` on `E^d`.
pub fn sigma_b_matrix(ext: &GaloisExtension, g: usize, d: usize) -> FpMatrix {
    let m = ext.dim();
    let s = ext.sigma_matrix(g);
    let mut out = FpMatrix::zeros(ext.p(), d * m, d * m);
    for blk in 0..d {
        for i in 0..m {
            for j in 0..m {
                out.set(blk * m + i, blk * m + j, s.get(i, j));
            }
        }
    }
    out
}

pub fn gl_order(q: u128, n: usize) -> u128 {
    let qn = guard::pow(q as usize, n);
    (0..n).fold(1u128, |acc, i| {
        acc.saturating_mul(qn - guard::pow(q as usize, i))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixGroupKind {
    Gl,
    Pgl,
}

/// `GL_n(E)` or `PGL_n(E)` as a G-group under `g·M = σ_{g^-1}(M)`.
///
/// Elements are ordered identity first, then lexicographically by entries.
/// PGL elements are canonical representatives.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub kind: MatrixGroupKind,
    pub n: usize,
    ext: GaloisExtension,
    elems: Vec<EMatrix>,
    index: HashMap<EMatrix, usize>,
    table: Option<Vec<usize>>,
    inv: Vec<usize>,
    act: Vec<Vec<usize>>,
}

const TABLE_LIMIT: usize = 2048;

impl MatrixGroup {
    pub fn gl(ext: &GaloisExtension, n: usize) -> Result<Self> {
        Self::build(ext, n, MatrixGroupKind::Gl)
    }

    pub fn pgl(ext: &GaloisExtension, n: usize) -> Result<Self> {
        if !ext.ring.is_field() {
            return Err(invalid("PGL needs a field"));
        }
        Self::build(ext, n, MatrixGroupKind::Pgl)
    }

    fn build(ext: &GaloisExtension, n: usize, kind: MatrixGroupKind) -> Result<Self> {
        if n == 0 {
            return Err(invalid("matrix size must be at least 1"));
        }
        let ring = &ext.ring;
        let q = ring.size() as u128;
        let candidates = guard::pow(q as usize, n * n);
        if ring.is_field() {
            let order = gl_order(q, n);
            let order = match kind {
                MatrixGroupKind::Gl => order,
                MatrixGroupKind::Pgl => order / (q - 1),
            };
            guard::check("matrix group order", order, guard::MATRIX_GROUP)?;
        }
        guard::check(
            "matrix candidates",
            candidates,
            guard::MATRIX_GROUP.saturating_mul(64),
        )?;
        let one = EMatrix::identity(ring, n);
        let mut elems: Vec<EMatrix> = (0..candidates as u64)
            .into_par_iter()
            .filter_map(|idx| {
                let mut data = vec![0u32; n * n];
                let mut rest = idx;
                for slot in data.iter_mut().rev() {
                    *slot = (rest % q as u64) as u32;
                    rest /= q as u64;
                }
                let m = EMatrix {
                    rows: n,
                    cols: n,
                    data,
                };
                if kind == MatrixGroupKind::Pgl && m.data.iter().find(|&&a| a != 0) != Some(&1) {
                    return None;
                }
                (m != one && m.is_invertible(ring)).then_some(m)
            })
            .collect();
        guard::check(
            "matrix group order",
            elems.len() as u128 + 1,
            guard::MATRIX_GROUP,
        )?;
        elems.insert(0, one);
        let index: HashMap<EMatrix, usize> =
            elems.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut group = Self {
            kind,
            n,
            ext: ext.clone(),
            elems,
            index,
            table: None,
            inv: Vec::new(),
            act: Vec::new(),
        };
        let size = group.elems.len();
        group.inv = (0..size)
            .into_par_iter()
            .map(|i| {
                let inv = group.elems[i].inverse(ring).expect("invertible");
                group.lookup(&inv)
            })
            .collect();
        let gg = &ext.group;
        group.act = gg
            .elements()
            .map(|g| {
                let gi = gg.inv(g);
                (0..size)
                    .into_par_iter()
                    .map(|i| group.lookup(&group.elems[i].sigma(ext, gi)))
                    .collect()
            })
            .collect();
        if size <= TABLE_LIMIT {
            let table: Vec<usize> = (0..size * size)
                .into_par_iter()
                .map(|k| group.mul_slow(k / size, k % size))
                .collect();
            group.table = Some(table);
        }
        Ok(group)
    }

    fn canon(&self, m: EMatrix) -> EMatrix {
        match self.kind {
            MatrixGroupKind::Gl => m,
            MatrixGroupKind::Pgl => m.projective_canonical(&self.ext.ring),
        }
    }

    /// Index of the class of `m`; panics if `m` is not invertible.
    pub fn lookup(&self, m: &EMatrix) -> usize {
        self.index_of(m).expect("matrix is not in the group")
    }

    pub fn index_of(&self, m: &EMatrix) -> Option<usize> {
        self.index.get(&self.canon(m.clone())).copied()
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        self.lookup(&self.elems[a].mul(&self.elems[b], &self.ext.ring))
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: usize) -> &EMatrix {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[EMatrix] {
        &self.elems
    }

    pub fn extension(&self) -> &GaloisExtension {
        &self.ext
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b],
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// As an abstract finite group (tables materialized).
    pub fn as_finite_group(&self) -> Result<FiniteGroup> {
        let n = self.order();
        guard::check("group order", n as u128, TABLE_LIMIT as u128)?;
        let table = (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect();
        FiniteGroup::from_table(table)
    }

    /// For PGL: `g·[s]` does not depend on the representative `s`.
    pub fn check_well_defined(&self) -> Report {
        let mut report = Report::new();
        if self.kind == MatrixGroupKind::Gl {
            return report;
        }
        let ring = &self.ext.ring;
        let gg = &self.ext.group;
        for g in gg.elements() {
            let gi = gg.inv(g);
            for (i, s) in self.elems.iter().enumerate() {
                for u in 1..ring.size() {
                    let moved = s.scale(u, ring).sigma(&self.ext, gi);
                    if self.lookup(&moved) != self.act[g][i] {
                        report.push("well_defined", vec![g, i, u as usize]);
                    }
                }
            }
        }
        report
    }
}

impl GCoefficients for MatrixGroup {
    fn acting_group(&self) -> &FiniteGroup {
        &self.ext.group
    }
    fn coeff_order(&self) -> usize {
        self.order()
    }
    fn op(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
    fn inverse(&self, a: usize) -> Option<usize> {
        Some(self.inv[a])
    }
    fn act(&self, g: usize, a: usize) -> usize {
        self.act[g][a]
    }
    fn units(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_core::check_g_group;

    #[test]
    fn orders() {
        let f4 = GaloisExtension::tower(2, 2).unwrap();
        assert_eq!(MatrixGroup::gl(&f4, 1).unwrap().order(), 3);
        assert_eq!(MatrixGroup::gl(&f4, 2).unwrap().order(), 180);
        assert_eq!(MatrixGroup::pgl(&f4, 2).unwrap().order(), 60);
        assert_eq!(MatrixGroup::pgl(&f4, 1).unwrap().order(), 1);
        let f9 = GaloisExtension::tower(3, 2).unwrap();
        assert_eq!(MatrixGroup::pgl(&f9, 2).unwrap().order(), 720);
        let f16 = GaloisExtension::tower(2, 4).unwrap();
        assert!(MatrixGroup::gl(&f16, 2).is_err());
    }

    #[test]
    fn identity_first_and_inverses() {
        let f4 = GaloisExtension::tower(2, 2).unwrap();
        let gl = MatrixGroup::gl(&f4, 2).unwrap();
        assert_eq!(gl.element(0), &EMatrix::identity(&f4.ring, 2));
        for a in 0..gl.order() {
            assert_eq!(gl.mul(a, gl.inv(a)), 0);
        }
        assert!(check_g_group(&gl).is_valid());
    }

    #[test]
    fn pgl_action_well_defined() {
        let f4 = GaloisExtension::tower(2, 2).unwrap();
        let pgl = MatrixGroup::pgl(&f4, 2).unwrap();
        assert!(pgl.check_well_defined().is_valid());
        assert!(check_g_group(&pgl).is_valid());
    }

    #[test]
    fn split_ring_inverse() {
        let s = GaloisExtension::split(3, FiniteGroup::cyclic(2)).unwrap();
        let ring = &s.ring;
        let m = EMatrix::from_rows(&[vec![ring.one(), 1], vec![0, ring.scalar(2)]]).unwrap();
        let inv = m.inverse(ring).unwrap();
        assert_eq!(m.mul(&inv, ring), EMatrix::identity(ring, 2));
        // (1,0) is a zero divisor
        assert!(EMatrix::scalar(1, 1).inverse(ring).is_none());
    }
}

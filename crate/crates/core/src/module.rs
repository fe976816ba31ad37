//! Finitely generated modules over a validated algebra, given as GF(p)-spaces
//! with one action matrix per ring basis element.
//!
//! Hom and tensor are computed literally: Hom(M, N) is the solution space of
//! the intertwining equations, and M⊗N is the quotient of the GF(p) tensor
//! square by the balancing relations. Minimal covers, free resolutions and
//! the natural evaluation/biduality maps are built on top of those.

use crate::algebra::{AlgebraRef, RingElement};
use crate::gfp::{quotient_by_columns, Matrix, QuotientSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("submodule enumeration exceeded cap: {count} > {cap}")]
    CapExceeded { count: usize, cap: usize },
}

/// How far an exhaustive isomorphism hunt is allowed to go before switching
/// to random sampling: all of GF(p)^h when p^h fits this bound.
pub const ISO_EXHAUSTIVE_BOUND: u64 = 1 << 16;
/// Number of random samples when the hom space is too big to enumerate.
pub const ISO_SAMPLES: usize = 256;

#[derive(Clone)]
struct Inner {
    algebra: AlgebraRef,
    dim: usize,
    action: Vec<Matrix>,
}

/// A finite R-module: a GF(p)-space with a compatible action matrix per ring
/// basis element. Immutable and cheap to clone.
#[derive(Clone)]
pub struct FinModule {
    inner: Arc<Inner>,
}

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinModule(dim={})", self.dim())
    }
}

impl PartialEq for FinModule {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other)
            && self.inner.dim == other.inner.dim
            && self.inner.action == other.inner.action
    }
}
impl Eq for FinModule {}

impl FinModule {
    pub fn new(algebra: AlgebraRef, action: Vec<Matrix>) -> Result<Self, ModuleError> {
        let d = algebra.dim();
        if action.len() != d {
            return Err(ModuleError::InvalidModule(format!(
                "expected {d} action matrices, got {}",
                action.len()
            )));
        }
        let n = action[0].rows();
        for (i, a) in action.iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(ModuleError::InvalidModule(format!(
                    "action matrix {i} is not {n}x{n}"
                )));
            }
            if a.modulus() != algebra.p() {
                return Err(ModuleError::InvalidModule(format!(
                    "action matrix {i} has modulus {} instead of {}",
                    a.modulus(),
                    algebra.p()
                )));
            }
        }
        if action[0] != Matrix::identity(algebra.p(), n) {
            return Err(ModuleError::InvalidModule(
                "action of the unit is not the identity".into(),
            ));
        }
        // A_i A_j = sum_k c[i][j][k] A_k
        for i in 1..d {
            for j in i..d {
                let lhs = action[i].mul(&action[j]);
                let mut rhs = Matrix::zero(algebra.p(), n, n);
                for k in 0..d {
                    let c = algebra.spec().mul_table[i][j][k];
                    if c != 0 {
                        rhs = rhs.add(&action[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(ModuleError::InvalidModule(format!(
                        "action does not respect e{i}*e{j}"
                    )));
                }
            }
        }
        Ok(FinModule { inner: Arc::new(Inner { algebra, dim: n, action }) })
    }

    pub fn zero_module(algebra: AlgebraRef) -> Self {
        let p = algebra.p();
        let d = algebra.dim();
        let action = vec![Matrix::zero(p, 0, 0); d];
        FinModule { inner: Arc::new(Inner { algebra, dim: 0, action }) }
    }

    /// The free module R^n with the regular representation acting blockwise.
    pub fn free(algebra: AlgebraRef, n: usize) -> Self {
        let p = algebra.p();
        let d = algebra.dim();
        let action = (0..d)
            .map(|i| {
                let mut block = Matrix::zero(p, 0, 0);
                for _ in 0..n {
                    block = block.block_diag(algebra.left_mul(i));
                }
                block
            })
            .collect();
        FinModule { inner: Arc::new(Inner { algebra, dim: n * d, action }) }
    }

    /// The residue field k = R/m as a one-dimensional module.
    pub fn residue_field(algebra: AlgebraRef) -> Self {
        let p = algebra.p();
        let d = algebra.dim();
        let mut action = vec![Matrix::zero(p, 1, 1); d];
        action[0] = Matrix::identity(p, 1);
        FinModule { inner: Arc::new(Inner { algebra, dim: 1, action }) }
    }

    /// GF(p)-linear dual with the contragredient action.
    pub fn dual(&self) -> Self {
        let action = self.inner.action.iter().map(Matrix::transpose).collect();
        FinModule {
            inner: Arc::new(Inner {
                algebra: self.inner.algebra.clone(),
                dim: self.inner.dim,
                action,
            }),
        }
    }

    pub fn direct_sum(parts: &[FinModule]) -> (FinModule, Vec<ModuleMap>, Vec<ModuleMap>) {
        assert!(!parts.is_empty(), "direct sum needs at least one part");
        let algebra = parts[0].algebra().clone();
        let p = algebra.p();
        let d = algebra.dim();
        let total: usize = parts.iter().map(|m| m.dim()).sum();
        let action: Vec<Matrix> = (0..d)
            .map(|i| {
                let mut block = Matrix::zero(p, 0, 0);
                for m in parts {
                    block = block.block_diag(m.action(i));
                }
                block
            })
            .collect();
        let sum = FinModule {
            inner: Arc::new(Inner { algebra, dim: total, action }),
        };
        let mut offset = 0;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for m in parts {
            let mut inj = Matrix::zero(p, total, m.dim());
            let mut proj = Matrix::zero(p, m.dim(), total);
            for j in 0..m.dim() {
                inj.set(offset + j, j, 1);
                proj.set(j, offset + j, 1);
            }
            injections.push(ModuleMap::new_unchecked(m.clone(), sum.clone(), inj));
            projections.push(ModuleMap::new_unchecked(sum.clone(), m.clone(), proj));
            offset += m.dim();
        }
        (sum, injections, projections)
    }

    /// The direct sum of `n` copies of this module.
    pub fn power(&self, n: usize) -> FinModule {
        if n == 0 {
            return FinModule::zero_module(self.algebra().clone());
        }
        let parts = vec![self.clone(); n];
        FinModule::direct_sum(&parts).0
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.inner.algebra
    }

    pub fn p(&self) -> u32 {
        self.inner.algebra.p()
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.inner.dim == 0
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.inner.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.inner.action
    }

    pub fn same_algebra(&self, other: &FinModule) -> bool {
        Arc::ptr_eq(&self.inner.algebra, &other.inner.algebra)
            || self.inner.algebra == other.inner.algebra
    }

    /// Matrix of the action of an arbitrary ring element.
    pub fn action_of(&self, r: &RingElement) -> Matrix {
        let p = self.p();
        let mut m = Matrix::zero(p, self.dim(), self.dim());
        for (i, &c) in r.coords().iter().enumerate() {
            if c != 0 {
                m = m.add(&self.action(i).scale(c));
            }
        }
        m
    }

    /// Multiplication by a ring element as a module endomorphism.
    pub fn homothety(&self, r: &RingElement) -> ModuleMap {
        ModuleMap::new_unchecked(self.clone(), self.clone(), self.action_of(r))
    }

    /// Columns spanning the subspace mM.
    pub fn radical_span(&self) -> Matrix {
        let d = self.inner.algebra.dim();
        let mut cols = Matrix::zero(self.p(), self.dim(), 0);
        for i in 1..d {
            cols = cols.hstack(self.action(i));
        }
        cols.image_basis()
    }

    /// Minimal number of generators: dim M/mM.
    pub fn min_generators(&self) -> usize {
        self.dim() - self.radical_span().cols()
    }

    /// Dimensions of m^t M for t = 1.. until zero; an isomorphism invariant.
    pub fn radical_filtration(&self) -> Vec<usize> {
        let d = self.inner.algebra.dim();
        let mut out = Vec::new();
        let mut span = self.radical_span();
        loop {
            out.push(span.cols());
            if span.cols() == 0 {
                break;
            }
            let mut next = Matrix::zero(self.p(), self.dim(), 0);
            for i in 1..d {
                next = next.hstack(&self.action(i).mul(&span));
            }
            span = next.image_basis();
        }
        out
    }

    /// All p^dim elements, as coordinate vectors in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let n = self.dim();
        let p = self.p() as u64;
        let total = p.pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0u32; n];
            for c in v.iter_mut() {
                *c = (idx % p) as u32;
                idx /= p;
            }
            v
        })
    }
}

/// An R-linear map between modules over the same algebra, stored as its
/// matrix on the underlying GF(p)-spaces (target.dim x source.dim).
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FinModule,
    target: FinModule,
    matrix: Matrix,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap({} -> {})", self.source.dim(), self.target.dim())
    }
}

impl ModuleMap {
    pub fn new(source: FinModule, target: FinModule, matrix: Matrix) -> Result<Self, ModuleError> {
        if !source.same_algebra(&target) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(ModuleError::InvalidMap(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let d = source.algebra().dim();
        for i in 1..d {
            if matrix.mul(source.action(i)) != target.action(i).mul(&matrix) {
                return Err(ModuleError::InvalidMap(format!(
                    "matrix does not commute with the action of e{i}"
                )));
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    /// For maps R-linear by construction; debug builds still verify.
    pub(crate) fn new_unchecked(source: FinModule, target: FinModule, matrix: Matrix) -> Self {
        debug_assert!(
            ModuleMap::new(source.clone(), target.clone(), matrix.clone()).is_ok(),
            "new_unchecked got a non-R-linear matrix"
        );
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &FinModule) -> Self {
        let id = Matrix::identity(m.p(), m.dim());
        ModuleMap { source: m.clone(), target: m.clone(), matrix: id }
    }

    pub fn zero_map(source: FinModule, target: FinModule) -> Self {
        let z = Matrix::zero(source.p(), target.dim(), source.dim());
        ModuleMap { source, target, matrix: z }
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `self` after `other`: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(
            other.target.dim(),
            self.source.dim(),
            "composition dimension mismatch"
        );
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dim() == self.target.dim() && self.matrix.is_invertible()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        if self.source.dim() != self.target.dim() {
            return None;
        }
        let inv = self.matrix.inverse()?;
        Some(ModuleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: inv,
        })
    }

    /// Kernel as a module with its inclusion.
    pub fn kernel(&self) -> (FinModule, ModuleMap) {
        submodule_from_basis(&self.source, &self.matrix.kernel_basis())
    }

    /// Image as a submodule of the target with its inclusion.
    pub fn image(&self) -> (FinModule, ModuleMap) {
        submodule_from_basis(&self.target, &self.matrix.image_basis())
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> (FinModule, ModuleMap) {
        quotient_module(&self.target, &self.matrix.image_basis())
    }
}

/// Module structure on a subspace given by an independent-column basis that
/// is already closed under the action.
fn submodule_from_basis(ambient: &FinModule, basis: &Matrix) -> (FinModule, ModuleMap) {
    let d = ambient.algebra().dim();
    let s = basis.cols();
    let mut action = Vec::with_capacity(d);
    for i in 0..d {
        let img = ambient.action(i).mul(basis);
        let coords = basis
            .solve_matrix(&img)
            .expect("subspace not closed under the module action");
        action.push(coords);
    }
    if s == 0 {
        let sub = FinModule::zero_module(ambient.algebra().clone());
        let incl = ModuleMap::new_unchecked(sub.clone(), ambient.clone(), basis.clone());
        return (sub, incl);
    }
    let sub = FinModule {
        inner: Arc::new(Inner { algebra: ambient.algebra().clone(), dim: s, action }),
    };
    let incl = ModuleMap::new_unchecked(sub.clone(), ambient.clone(), basis.clone());
    (sub, incl)
}

/// Closes a spanning set of columns under the module action.
pub fn close_under_action(ambient: &FinModule, span: &Matrix) -> Matrix {
    let d = ambient.algebra().dim();
    let mut basis = span.image_basis();
    loop {
        let mut bigger = basis.clone();
        for i in 1..d {
            bigger = bigger.hstack(&ambient.action(i).mul(&basis));
        }
        let next = bigger.image_basis();
        if next.cols() == basis.cols() {
            return basis;
        }
        basis = next;
    }
}

/// Submodule generated by arbitrary spanning columns (closure is taken).
pub fn submodule_generated_by(ambient: &FinModule, span: &Matrix) -> (FinModule, ModuleMap) {
    submodule_from_basis(ambient, &close_under_action(ambient, span))
}

/// Quotient of a module by the submodule generated by the given columns.
pub fn quotient_module(ambient: &FinModule, relations: &Matrix) -> (FinModule, ModuleMap) {
    let closed = close_under_action(ambient, relations);
    let qs = quotient_by_columns(ambient.p(), ambient.dim(), &closed);
    let d = ambient.algebra().dim();
    let action: Vec<Matrix> = (0..d)
        .map(|i| qs.proj.mul(ambient.action(i)).mul(&qs.sect))
        .collect();
    let quot = FinModule::new(ambient.algebra().clone(), action)
        .expect("quotient action is well-defined");
    let proj = ModuleMap::new_unchecked(ambient.clone(), quot.clone(), qs.proj);
    (quot, proj)
}

// ---------------------------------------------------------------------------
// Hom and tensor
// ---------------------------------------------------------------------------

/// Hom_R(M, N) as a module: the solution space of the intertwining equations
/// F·A^M_i = A^N_i·F, with the action (r·f)(x) = r·f(x).
pub struct HomModule {
    module: FinModule,
    source: FinModule,
    target: FinModule,
    /// Columns are flattened basis maps (row-major, target.dim x source.dim).
    basis_flat: Matrix,
}

fn flatten(m: &Matrix) -> Vec<u32> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend_from_slice(m.row(i));
    }
    v
}

fn unflatten(p: u32, rows: usize, cols: usize, v: &[u32]) -> Matrix {
    Matrix::new(p, rows, cols, v.to_vec())
}

pub fn hom_module(source: &FinModule, target: &FinModule) -> Result<HomModule, ModuleError> {
    if !source.same_algebra(target) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let p = source.p();
    let (s, t) = (source.dim(), target.dim());
    let d = source.algebra().dim();
    // unknowns: entries of F (t x s), flattened row-major
    let unknowns = s * t;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for i in 1..d {
        // F A^M_i - A^N_i F = 0, entry (a, b)
        let am = source.action(i);
        let an = target.action(i);
        for a in 0..t {
            for b in 0..s {
                let mut row = vec![0u32; unknowns];
                for k in 0..s {
                    let idx = a * s + k;
                    row[idx] = (row[idx] + am.get(k, b)) % p;
                }
                for k in 0..t {
                    let idx = k * s + b;
                    row[idx] = (row[idx] + p - an.get(a, k) % p) % p;
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zero(p, 0, unknowns)
    } else {
        Matrix::from_rows(p, &rows)
    };
    let basis_flat = system.kernel_basis();
    let h = basis_flat.cols();
    // module structure: e_i . f = A^N_i ∘ f
    let mut action = Vec::with_capacity(d);
    for i in 0..d {
        let mut img = Matrix::zero(p, unknowns, h);
        for b in 0..h {
            let f = unflatten(p, t, s, &basis_flat.col_vec(b));
            let g = target.action(i).mul(&f);
            for (r, v) in flatten(&g).into_iter().enumerate() {
                img.set(r, b, v);
            }
        }
        let coords = basis_flat
            .solve_matrix(&img)
            .expect("hom space closed under post-composition");
        action.push(coords);
    }
    let module = if h == 0 {
        FinModule::zero_module(source.algebra().clone())
    } else {
        FinModule::new(source.algebra().clone(), action)?
    };
    Ok(HomModule {
        module,
        source: source.clone(),
        target: target.clone(),
        basis_flat,
    })
}

impl HomModule {
    pub fn module(&self) -> &FinModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn source(&self) -> &FinModule {
        &self.source
    }

    pub fn target(&self) -> &FinModule {
        &self.target
    }

    /// Recovers the basis element `b` as an actual map.
    pub fn basis_map(&self, b: usize) -> ModuleMap {
        self.map_from_coords(&{
            let mut v = vec![0u32; self.dim()];
            v[b] = 1;
            v
        })
    }

    pub fn map_from_coords(&self, coords: &[u32]) -> ModuleMap {
        assert_eq!(coords.len(), self.dim());
        let flat = self.basis_flat.mul_vec(coords);
        let m = unflatten(self.source.p(), self.target.dim(), self.source.dim(), &flat);
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), m)
    }

    /// Coordinates of an intertwiner matrix in the hom basis, if it lies in
    /// the hom space (it always does for genuine R-linear maps).
    pub fn coords_of_matrix(&self, m: &Matrix) -> Option<Vec<u32>> {
        self.basis_flat.solve(&flatten(m))
    }

    pub fn coords_of(&self, f: &ModuleMap) -> Option<Vec<u32>> {
        self.coords_of_matrix(f.matrix())
    }
}

/// M ⊗_R N as a module, with the projection from the GF(p) tensor square.
pub struct TensorModule {
    module: FinModule,
    left: FinModule,
    right: FinModule,
    qs: QuotientSpace,
}

pub fn tensor_module(left: &FinModule, right: &FinModule) -> Result<TensorModule, ModuleError> {
    if !left.same_algebra(right) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let p = left.p();
    let (m, n) = (left.dim(), right.dim());
    let d = left.algebra().dim();
    let ambient = m * n;
    // relations (e_i·m_a)⊗n_b - m_a⊗(e_i·n_b) for i >= 1; index (a,b) = a*n + b
    let mut rel = Matrix::zero(p, ambient, (d - 1) * ambient);
    let mut col = 0;
    for i in 1..d {
        let am = left.action(i);
        let an = right.action(i);
        for a in 0..m {
            for b in 0..n {
                for c in 0..m {
                    let v = am.get(c, a);
                    if v != 0 {
                        let r = c * n + b;
                        rel.set(r, col, (rel.get(r, col) + v) % p);
                    }
                }
                for c in 0..n {
                    let v = an.get(c, b);
                    if v != 0 {
                        let r = a * n + c;
                        rel.set(r, col, (rel.get(r, col) + p - v) % p);
                    }
                }
                col += 1;
            }
        }
    }
    let qs = quotient_by_columns(p, ambient, &rel);
    let id_n = Matrix::identity(p, n);
    let action: Vec<Matrix> = (0..d)
        .map(|i| {
            let big = left.action(i).kronecker(&id_n);
            qs.proj.mul(&big).mul(&qs.sect)
        })
        .collect();
    let module = if qs.dim == 0 {
        FinModule::zero_module(left.algebra().clone())
    } else {
        FinModule::new(left.algebra().clone(), action)?
    };
    Ok(TensorModule { module, left: left.clone(), right: right.clone(), qs })
}

impl TensorModule {
    pub fn module(&self) -> &FinModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn left(&self) -> &FinModule {
        &self.left
    }

    pub fn right(&self) -> &FinModule {
        &self.right
    }

    /// Class of the pure tensor of two coordinate vectors.
    pub fn pure(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        assert_eq!(a.len(), self.left.dim());
        assert_eq!(b.len(), self.right.dim());
        let p = self.module.p() as u64;
        let n = self.right.dim();
        let mut amb = vec![0u32; self.left.dim() * n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                amb[i * n + j] = (x as u64 * y as u64 % p) as u32;
            }
        }
        self.qs.proj.mul_vec(&amb)
    }

    pub fn projection(&self) -> &Matrix {
        &self.qs.proj
    }

    pub fn section(&self) -> &Matrix {
        &self.qs.sect
    }
}

/// Post-composition functor on hom modules: for f: M → N, the induced map
/// Hom(C, M) → Hom(C, N).
pub fn induced_post(hom_cm: &HomModule, hom_cn: &HomModule, f: &ModuleMap) -> ModuleMap {
    let p = f.source().p();
    let h = hom_cm.dim();
    let mut img = Matrix::zero(p, hom_cn.basis_flat.rows(), h);
    for b in 0..h {
        let g = hom_cm.basis_map(b);
        let fg = f.compose(&g);
        for (r, v) in flatten(fg.matrix()).into_iter().enumerate() {
            img.set(r, b, v);
        }
    }
    let coords = hom_cn
        .basis_flat
        .solve_matrix(&img)
        .expect("post-composition stays in the hom space");
    ModuleMap::new_unchecked(hom_cm.module.clone(), hom_cn.module.clone(), coords)
}

/// Pre-composition functor: for f: M → N, the induced map
/// Hom(N, C) → Hom(M, C).
pub fn induced_pre(hom_nc: &HomModule, hom_mc: &HomModule, f: &ModuleMap) -> ModuleMap {
    let p = f.source().p();
    let h = hom_nc.dim();
    let mut img = Matrix::zero(p, hom_mc.basis_flat.rows(), h);
    for b in 0..h {
        let g = hom_nc.basis_map(b);
        let gf = g.compose(f);
        for (r, v) in flatten(gf.matrix()).into_iter().enumerate() {
            img.set(r, b, v);
        }
    }
    let coords = hom_mc
        .basis_flat
        .solve_matrix(&img)
        .expect("pre-composition stays in the hom space");
    ModuleMap::new_unchecked(hom_nc.module.clone(), hom_mc.module.clone(), coords)
}

/// Tensor functor on the right slot: for f: M → N, the induced map
/// C⊗M → C⊗N.
pub fn induced_tensor(t_cm: &TensorModule, t_cn: &TensorModule, f: &ModuleMap) -> ModuleMap {
    let p = f.source().p();
    let idc = Matrix::identity(p, t_cm.left.dim());
    let big = idc.kronecker(f.matrix());
    let m = t_cn.qs.proj.mul(&big).mul(&t_cm.qs.sect);
    ModuleMap::new_unchecked(t_cm.module.clone(), t_cn.module.clone(), m)
}

/// The evaluation map ν_M : C ⊗ Hom(C, M) → M, c⊗f ↦ f(c).
pub fn natural_eval(tensor: &TensorModule, hom: &HomModule) -> ModuleMap {
    assert!(tensor.left == *hom.source(), "tensor must be C ⊗ Hom(C, M)");
    assert!(tensor.right == *hom.module(), "tensor right factor must be Hom(C, M)");
    let c_dim = tensor.left.dim();
    let h = hom.dim();
    let m = hom.target();
    let p = m.p();
    // ambient map on C ⊗_k Hom: column (a*h + b) = basis_map(b) applied to e_a
    let mut amb = Matrix::zero(p, m.dim(), c_dim * h);
    for b in 0..h {
        let f = hom.basis_map(b);
        for a in 0..c_dim {
            for r in 0..m.dim() {
                amb.set(r, a * h + b, f.matrix().get(r, a));
            }
        }
    }
    let matrix = amb.mul(&tensor.qs.sect);
    // the ambient map must kill the balancing relations
    debug_assert_eq!(matrix.mul(&tensor.qs.proj), amb);
    ModuleMap::new_unchecked(tensor.module.clone(), m.clone(), matrix)
}

/// The biduality map δ_M : M → Hom(Hom(M, C), C), m ↦ (f ↦ f(m)).
pub fn natural_bidual(m: &FinModule, hom_mc: &HomModule, hom_hc: &HomModule) -> ModuleMap {
    assert!(hom_mc.source() == m);
    assert!(hom_hc.source() == hom_mc.module());
    let c = hom_mc.target();
    let h1 = hom_mc.dim();
    let p = m.p();
    let h2 = hom_hc.dim();
    let mut out = Matrix::zero(p, h2, m.dim());
    for a in 0..m.dim() {
        // δ(e_a): Hom(M,C) → C, basis map b ↦ G_b(e_a)
        let mut d_a = Matrix::zero(p, c.dim(), h1);
        for b in 0..h1 {
            let g = hom_mc.basis_map(b);
            for r in 0..c.dim() {
                d_a.set(r, b, g.matrix().get(r, a));
            }
        }
        let coords = hom_hc
            .coords_of_matrix(&d_a)
            .expect("evaluation lands in Hom(Hom(M,C),C)");
        for (r, v) in coords.into_iter().enumerate() {
            out.set(r, a, v);
        }
    }
    ModuleMap::new_unchecked(m.clone(), hom_hc.module.clone(), out)
}

// ---------------------------------------------------------------------------
// Covers, resolutions, projective dimension
// ---------------------------------------------------------------------------

/// A minimal free cover R^{ν(M)} → M together with its kernel.
pub struct Cover {
    pub free: FinModule,
    pub surjection: ModuleMap,
    pub kernel: FinModule,
    pub inclusion: ModuleMap,
}

/// Minimal cover: free generators map to lifts of a basis of M/mM, so the
/// kernel lies inside m·R^ν.
pub fn minimal_cover(m: &FinModule) -> Cover {
    let p = m.p();
    let d = m.algebra().dim();
    let radical = m.radical_span();
    let qs = quotient_by_columns(p, m.dim(), &radical);
    // lifts: standard basis vectors at the non-pivot coordinates (the
    // columns of the section)
    let nu = qs.dim;
    let free = FinModule::free(m.algebra().clone(), nu);
    let mut phi = Matrix::zero(p, m.dim(), nu * d);
    for j in 0..nu {
        let lift = qs.sect.col_vec(j);
        for w in 0..d {
            let img = m.action(w).mul_vec(&lift);
            for (r, v) in img.into_iter().enumerate() {
                phi.set(r, j * d + w, v);
            }
        }
    }
    assert_eq!(phi.rank(), m.dim(), "minimal cover must be surjective");
    let surjection = ModuleMap::new_unchecked(free.clone(), m.clone(), phi);
    let (kernel, inclusion) = surjection.kernel();
    Cover { free, surjection, kernel, inclusion }
}

/// Projective dimension over a zero-depth local ring: 0 (free) or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pd {
    Zero,
    Infinite,
}

impl fmt::Display for Pd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pd::Zero => write!(f, "0"),
            Pd::Infinite => write!(f, "∞"),
        }
    }
}

/// pd(M) ∈ {0, ∞}: zero iff the minimal cover has trivial kernel.
pub fn pd(m: &FinModule) -> Pd {
    if minimal_cover(m).kernel.is_zero() {
        Pd::Zero
    } else {
        Pd::Infinite
    }
}

/// If M is free, the rank and the covering isomorphism R^rank → M.
pub fn free_rank(m: &FinModule) -> Option<(usize, ModuleMap)> {
    let cover = minimal_cover(m);
    if cover.kernel.is_zero() {
        let nu = cover.free.dim() / m.algebra().dim().max(1);
        Some((nu, cover.surjection))
    } else {
        None
    }
}

/// A minimal free resolution truncated to `length` modules (degrees
/// 0..length-1), with Betti numbers and the syzygy modules along the way.
pub struct Resolution {
    pub frees: Vec<FinModule>,
    /// diffs[i]: F_{i+1} → F_i.
    pub diffs: Vec<ModuleMap>,
    pub augmentation: ModuleMap,
    pub betti: Vec<usize>,
    /// syzygies[0] = M, syzygies[i] = kernel of the (i-1)-st cover.
    pub syzygies: Vec<FinModule>,
    /// True when some kernel vanished, so the resolution is complete.
    pub finished: bool,
    /// (start degree j, period t) with syzygy_j ≅ syzygy_{j+t}, if detected.
    pub periodicity: Option<(usize, usize)>,
}

pub fn minimal_free_resolution(m: &FinModule, length: usize) -> Resolution {
    assert!(length >= 1, "resolution needs at least one module");
    let mut frees = Vec::new();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let mut betti = Vec::new();
    let mut syzygies = vec![m.clone()];
    let mut finished = false;

    let cover0 = minimal_cover(m);
    frees.push(cover0.free.clone());
    betti.push(cover0.free.dim() / m.algebra().dim());
    let augmentation = cover0.surjection.clone();
    let mut prev_incl = cover0.inclusion;
    let mut prev_kernel = cover0.kernel;
    syzygies.push(prev_kernel.clone());

    for _ in 1..length {
        if prev_kernel.is_zero() {
            finished = true;
            break;
        }
        let cover = minimal_cover(&prev_kernel);
        betti.push(cover.free.dim() / m.algebra().dim());
        diffs.push(prev_incl.compose(&cover.surjection));
        frees.push(cover.free.clone());
        prev_incl = cover.inclusion;
        prev_kernel = cover.kernel;
        syzygies.push(prev_kernel.clone());
    }
    if !finished && syzygies.last().map(|k| k.is_zero()).unwrap_or(false) {
        finished = true;
    }

    // detect syzygy periodicity (up to isomorphism, deterministic seed)
    let mut periodicity = None;
    'outer: for j in 0..syzygies.len() {
        for t in 1..syzygies.len() - j {
            if let IsoVerdict::Iso(_) = module_iso(&syzygies[j], &syzygies[j + t], 0) {
                periodicity = Some((j, t));
                break 'outer;
            }
        }
    }

    Resolution { frees, diffs, augmentation, betti, syzygies, finished, periodicity }
}

// ---------------------------------------------------------------------------
// Isomorphism testing and submodule enumeration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum IsoVerdict {
    Iso(ModuleMap),
    No,
    /// Sampling failed to decide; never silently treated as non-isomorphic.
    Unknown,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }
}

/// Searches Hom(M, N) for an invertible element: exhaustively when the hom
/// space has at most 2^16 elements, otherwise by seeded random sampling.
pub fn module_iso(m: &FinModule, n: &FinModule, seed: u64) -> IsoVerdict {
    if !m.same_algebra(n) {
        return IsoVerdict::No;
    }
    if m.dim() != n.dim() {
        return IsoVerdict::No;
    }
    if m.is_zero() {
        return IsoVerdict::Iso(ModuleMap::zero_map(m.clone(), n.clone()));
    }
    if m.min_generators() != n.min_generators()
        || m.radical_filtration() != n.radical_filtration()
    {
        return IsoVerdict::No;
    }
    let hom = hom_module(m, n).expect("same algebra");
    let h = hom.dim();
    if h == 0 {
        return IsoVerdict::No;
    }
    let p = m.p() as u64;
    let total = (p as f64).powi(h as i32);
    if total <= ISO_EXHAUSTIVE_BOUND as f64 {
        let total = p.pow(h as u32);
        let mut coords = vec![0u32; h];
        for idx in 1..total {
            let mut x = idx;
            for c in coords.iter_mut() {
                *c = (x % p) as u32;
                x /= p;
            }
            let f = hom.map_from_coords(&coords);
            if f.matrix().is_invertible() {
                return IsoVerdict::Iso(f);
            }
        }
        IsoVerdict::No
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ISO_SAMPLES {
            let coords: Vec<u32> = (0..h).map(|_| rng.gen_range(0..m.p())).collect();
            let f = hom.map_from_coords(&coords);
            if f.matrix().is_invertible() {
                return IsoVerdict::Iso(f);
            }
        }
        IsoVerdict::Unknown
    }
}

/// The full submodule lattice: cyclic submodules of every element, then
/// closure under pairwise sums. Requires |M| = p^dim ≤ 2^12.
pub fn submodules(m: &FinModule, cap: usize) -> Result<Vec<(FinModule, ModuleMap)>, ModuleError> {
    let size = (m.p() as u64).checked_pow(m.dim() as u32);
    if size.is_none() || size.unwrap() > 1 << 12 {
        return Err(ModuleError::CapExceeded { count: usize::MAX, cap });
    }
    let p = m.p();
    // canonical form -> basis matrix
    let mut seen: BTreeMap<Vec<u32>, Matrix> = BTreeMap::new();
    let canon_key = |basis: &Matrix| -> Vec<u32> {
        let c = basis.column_space_canonical();
        let mut key = vec![c.rows() as u32];
        for i in 0..c.rows() {
            key.extend_from_slice(c.row(i));
        }
        key
    };
    // cyclic submodules
    for v in m.elements() {
        let col = Matrix::column(p, &v);
        let basis = close_under_action(m, &col);
        seen.entry(canon_key(&basis)).or_insert(basis);
        if seen.len() > cap {
            return Err(ModuleError::CapExceeded { count: seen.len(), cap });
        }
    }
    // closure under pairwise sums
    loop {
        let snapshot: Vec<Matrix> = seen.values().cloned().collect();
        let before = seen.len();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let sum = snapshot[i].hstack(&snapshot[j]).image_basis();
                seen.entry(canon_key(&sum)).or_insert(sum);
                if seen.len() > cap {
                    return Err(ModuleError::CapExceeded { count: seen.len(), cap });
                }
            }
        }
        if seen.len() == before {
            break;
        }
    }
    let mut out: Vec<(FinModule, ModuleMap)> = seen
        .into_values()
        .map(|basis| submodule_from_basis(m, &basis))
        .collect();
    out.sort_by_key(|(sub, _)| sub.dim());
    Ok(out)
}

//! The base ring: a finite-dimensional commutative local GF(p)-algebra with
//! residue field GF(p), presented by structure constants.
//!
//! Basis index 0 is the multiplicative identity and indices `1..d-1` must
//! span the maximal ideal; validation checks every axiom exhaustively and
//! certifies nilpotency of the ideal, so localness never has to be trusted.

use crate::gfp::Matrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed algebra spec: {0}")]
    BadSpec(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("basis element 0 is not the unit: e0*e{j} has coefficient {got} on e{k}")]
    NoUnit { j: usize, k: usize, got: u32 },
    #[error("multiplication is not commutative at (e{i}, e{j})")]
    NotCommutative { i: usize, j: usize },
    #[error("multiplication is not associative at (e{i}, e{j}, e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("not local: {0}")]
    NotLocal(String),
}

/// Raw presentation: `mul[i][j][k]` is the coefficient of `e_k` in `e_i*e_j`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub p: u32,
    pub basis_names: Vec<String>,
    pub mul_table: Vec<Vec<Vec<u32>>>,
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An algebra whose axioms have been verified: commutative, associative,
/// unital with unit `e0`, and local with nilpotent maximal ideal
/// `m = span(e1..e_{d-1})`.
#[derive(Clone)]
pub struct ValidatedAlgebra {
    spec: AlgebraSpec,
    nilpotency_index: usize,
    left_mul: Vec<Matrix>,
}

impl fmt::Debug for ValidatedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ValidatedAlgebra(p={}, dim={}, nilpotency={})",
            self.spec.p,
            self.dim(),
            self.nilpotency_index
        )
    }
}

impl PartialEq for ValidatedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for ValidatedAlgebra {}

pub type AlgebraRef = Arc<ValidatedAlgebra>;

impl ValidatedAlgebra {
    /// Checks every axiom of the spec and certifies the result.
    pub fn validate(spec: AlgebraSpec) -> Result<AlgebraRef, AlgebraError> {
        let d = spec.dim();
        let p = spec.p;
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if d == 0 {
            return Err(AlgebraError::BadSpec("dimension must be at least 1".into()));
        }
        if spec.mul_table.len() != d
            || spec.mul_table.iter().any(|t| t.len() != d)
            || spec
                .mul_table
                .iter()
                .any(|t| t.iter().any(|row| row.len() != d))
        {
            return Err(AlgebraError::BadSpec(format!(
                "mul table must be {d}x{d}x{d}"
            )));
        }
        if spec
            .mul_table
            .iter()
            .flatten()
            .flatten()
            .any(|&c| c >= p)
        {
            return Err(AlgebraError::BadSpec("structure constant out of range".into()));
        }

        // e0 is the unit
        for j in 0..d {
            for k in 0..d {
                let got = spec.mul_table[0][j][k];
                let want = u32::from(j == k);
                if got != want {
                    return Err(AlgebraError::NoUnit { j, k, got });
                }
            }
        }
        // commutativity
        for i in 0..d {
            for j in i + 1..d {
                if spec.mul_table[i][j] != spec.mul_table[j][i] {
                    return Err(AlgebraError::NotCommutative { i, j });
                }
            }
        }
        // left-multiplication matrices, column j of L_i is e_i * e_j
        let left_mul: Vec<Matrix> = (0..d)
            .map(|i| {
                let mut m = Matrix::zero(p, d, d);
                for j in 0..d {
                    for k in 0..d {
                        m.set(k, j, spec.mul_table[i][j][k]);
                    }
                }
                m
            })
            .collect();
        // associativity: L_i L_j = L_{e_i e_j} makes (e_i e_j) e_k = e_i (e_j e_k)
        for i in 0..d {
            for j in 0..d {
                let lhs = left_mul[i].mul(&left_mul[j]);
                let mut rhs = Matrix::zero(p, d, d);
                for l in 0..d {
                    let c = spec.mul_table[i][j][l];
                    if c != 0 {
                        rhs = rhs.add(&left_mul[l].scale(c));
                    }
                }
                if lhs != rhs {
                    let k = (0..d)
                        .find(|&k| lhs.col_vec(k) != rhs.col_vec(k))
                        .unwrap_or(0);
                    return Err(AlgebraError::NotAssociative { i, j, k });
                }
            }
        }
        // span(e1..e_{d-1}) must be an ideal: products of non-unit basis
        // elements have no component on e0
        for i in 1..d {
            for j in 1..d {
                if spec.mul_table[i][j][0] != 0 {
                    return Err(AlgebraError::NotLocal(format!(
                        "e{i}*e{j} has a unit component, so span(e1..) is not an ideal"
                    )));
                }
            }
        }
        // nilpotency of m by iterating spans of products
        let mut power = Matrix::zero(p, d, d.saturating_sub(1));
        for i in 1..d {
            power.set(i, i - 1, 1);
        }
        let mut power = power.image_basis();
        let mut t = 1usize;
        loop {
            if power.cols() == 0 {
                break;
            }
            let mut products = Matrix::zero(p, d, 0);
            for i in 1..d {
                products = products.hstack(&left_mul[i].mul(&power));
            }
            let next = products.image_basis();
            if next.cols() >= power.cols() {
                return Err(AlgebraError::NotLocal(format!(
                    "maximal ideal is not nilpotent: m^{t} has dimension {} and m^{} has dimension {}",
                    power.cols(),
                    t + 1,
                    next.cols()
                )));
            }
            power = next;
            t += 1;
        }
        Ok(Arc::new(ValidatedAlgebra { spec, nilpotency_index: t, left_mul }))
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn dim(&self) -> usize {
        self.spec.basis_names.len()
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.spec.basis_names[i]
    }

    /// Least `t` with `m^t = 0`; equals 1 exactly when the algebra is a field.
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index
    }

    pub fn is_field(&self) -> bool {
        self.dim() == 1
    }

    /// Left multiplication by basis element `i` (the regular representation).
    pub fn left_mul(&self, i: usize) -> &Matrix {
        &self.left_mul[i]
    }

    pub fn regular_representation(&self) -> &[Matrix] {
        &self.left_mul
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coords: vec![0; self.dim()] }
    }

    pub fn one(&self) -> RingElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> RingElement {
        let mut coords = vec![0; self.dim()];
        coords[i] = 1;
        RingElement { coords }
    }

    pub fn element(&self, coords: Vec<u32>) -> RingElement {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        RingElement { coords: coords.into_iter().map(|c| c % self.spec.p).collect() }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + y) % self.spec.p)
            .collect();
        RingElement { coords }
    }

    /// Bilinear extension of the structure table.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement { coords: self.mul_matrix(a).mul_vec(&b.coords) }
    }

    /// The matrix of multiplication by `a` on the ring itself.
    pub fn mul_matrix(&self, a: &RingElement) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zero(self.spec.p, d, d);
        for (i, &c) in a.coords.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.left_mul[i].scale(c));
            }
        }
        m
    }

    /// Valid precisely because the algebra is local with `m = span(e1..)`.
    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.coords[0] != 0
    }

    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        if !self.is_unit(a) {
            return None;
        }
        let mut e0 = vec![0u32; self.dim()];
        e0[0] = 1;
        self.mul_matrix(a).solve(&e0).map(|coords| RingElement { coords })
    }

    /// All `p^d` ring elements in lexicographic coordinate order.
    pub fn all_elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let d = self.dim();
        let p = self.spec.p;
        let total = (p as u64).pow(d as u32);
        (0..total).map(move |mut n| {
            let mut coords = vec![0u32; d];
            for c in coords.iter_mut() {
                *c = (n % p as u64) as u32;
                n /= p as u64;
            }
            RingElement { coords }
        })
    }

    /// Parses `x`, `x+y`, `1+x`, `2*x+y`, or a bare coordinate list `0,1,1,0`.
    pub fn parse_element(&self, s: &str) -> Result<RingElement, AlgebraError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(AlgebraError::BadSpec("empty element expression".into()));
        }
        // coordinate form
        if s.contains(',') {
            let coords: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
            if let Ok(coords) = coords {
                if coords.len() != self.dim() {
                    return Err(AlgebraError::BadSpec(format!(
                        "expected {} coordinates, got {}",
                        self.dim(),
                        coords.len()
                    )));
                }
                return Ok(self.element(coords));
            }
        }
        if s == "0" {
            return Ok(self.zero());
        }
        let mut acc = self.zero();
        for term in s.split('+') {
            let term = term.trim();
            let (coeff, name) = match term.split_once('*') {
                Some((c, n)) => (
                    c.trim()
                        .parse::<u32>()
                        .map_err(|_| AlgebraError::BadSpec(format!("bad coefficient in `{term}`")))?,
                    n.trim(),
                ),
                None => (1, term),
            };
            let idx = self
                .spec
                .basis_names
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| {
                    AlgebraError::BadSpec(format!("unknown basis element `{name}`"))
                })?;
            let mut v = self.zero();
            v.coords[idx] = coeff % self.spec.p;
            acc = self.add(&acc, &v);
        }
        Ok(acc)
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        let terms: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.spec.basis_names[i].clone()
                } else {
                    format!("{c}*{}", self.spec.basis_names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// A ring element as a coordinate vector over the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    coords: Vec<u32>,
}

impl RingElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn gf2_x_mod_x2_validates() {
        let a = corpus::r1();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.nilpotency_index(), 2);
    }

    #[test]
    fn gf2_xy_mod_squares_validates() {
        let a = corpus::r2();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.nilpotency_index(), 3);
    }

    #[test]
    fn gf2_short_ring_validates() {
        let a = corpus::r3();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.nilpotency_index(), 2);
    }

    #[test]
    fn fields_have_nilpotency_one() {
        assert_eq!(corpus::gf(2).nilpotency_index(), 1);
        assert_eq!(corpus::gf(3).nilpotency_index(), 1);
    }

    #[test]
    fn unit_basis_element_rejected() {
        // GF(2)[x]/(x^2-1) presented with basis {1, x}: x*x = 1, so span{x}
        // is not an ideal and the presentation must be rejected
        let spec = AlgebraSpec {
            p: 2,
            basis_names: vec!["1".into(), "x".into()],
            mul_table: vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![1, 0]],
            ],
        };
        match ValidatedAlgebra::validate(spec) {
            Err(AlgebraError::NotLocal(_)) => {}
            other => panic!("expected NotLocal, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_rejected() {
        // commutative table with a*a = b, a*b = a, b*b = 0, so that
        // (a*a)*b = 0 but a*(a*b) = b
        let spec = AlgebraSpec {
            p: 2,
            basis_names: vec!["1".into(), "a".into(), "b".into()],
            mul_table: vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 0]],
                vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 0, 0]],
            ],
        };
        match ValidatedAlgebra::validate(spec) {
            Err(AlgebraError::NotAssociative { .. }) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn non_commutative_rejected() {
        let spec = AlgebraSpec {
            p: 2,
            basis_names: vec!["1".into(), "a".into(), "b".into()],
            mul_table: vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 1]],
                vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]],
            ],
        };
        match ValidatedAlgebra::validate(spec) {
            Err(AlgebraError::NotCommutative { i: 1, j: 2 }) => {}
            other => panic!("expected NotCommutative, got {other:?}"),
        }
    }

    #[test]
    fn mul_unit_law_and_table_lookups() {
        let r2 = corpus::r2();
        let x = r2.parse_element("x").unwrap();
        let y = r2.parse_element("y").unwrap();
        let one = r2.one();
        assert_eq!(r2.mul(&one, &x), x);
        assert_eq!(r2.mul(&x, &y), r2.parse_element("xy").unwrap());
        assert!(r2.mul(&x, &x).is_zero());
    }

    #[test]
    fn unit_inverse_in_r1() {
        let r1 = corpus::r1();
        let u = r1.parse_element("1+x").unwrap();
        assert!(r1.is_unit(&u));
        let inv = r1.inverse(&u).unwrap();
        assert_eq!(inv, u); // (1+x)^2 = 1
        assert_eq!(r1.mul(&u, &inv), r1.one());
    }

    #[test]
    fn units_are_exactly_complement_of_m() {
        for alg in [corpus::r1(), corpus::r2(), corpus::r3(), corpus::gf(3)] {
            for a in alg.all_elements() {
                let invertible = alg.inverse(&a).is_some();
                assert_eq!(invertible, alg.is_unit(&a), "element {:?}", a);
                assert_eq!(alg.is_unit(&a), a.coords()[0] != 0);
            }
        }
    }

    #[test]
    fn nilpotency_is_sharp() {
        // m^{t-1} != 0 is part of what `validate` computed; spot-check r2:
        // m^2 = span{xy} != 0, m^3 = 0
        let r2 = corpus::r2();
        let x = r2.parse_element("x").unwrap();
        let y = r2.parse_element("y").unwrap();
        let xy = r2.mul(&x, &y);
        assert!(!xy.is_zero());
        assert!(r2.mul(&xy, &x).is_zero());
        assert!(r2.mul(&xy, &y).is_zero());
        assert_eq!(r2.nilpotency_index(), 3);
    }
}

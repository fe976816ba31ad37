//! C-perfect complexes: width through the minimal representative, exact
//! zero-divisor discovery, the periodic complex family they generate, and
//! the full verification pipeline for the quotient module C/xC.

use crate::algebra::{AlgebraRef, RingElement};
use crate::complex::{
    hom_into, hom_from, minimize_via, AugmentedComplex, ChainComplex,
    ChainMap, ComplexError, Minimized, QuasiIsoCertificate,
};
use crate::gfp::Matrix;
use crate::module::{quotient_module, FinModule, ModuleError, ModuleMap, Pd};
use crate::semidual::Semidualizing;
use crate::cproj::CprojError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PerfectError {
    #[error("ring has {size} elements, above the enumeration bound 2^20")]
    SearchSpaceExceeded { size: u64 },
    #[error("module at degree {degree} carries no C-projective certificate")]
    UncertifiedModule { degree: i64 },
    #[error("not an exact zero-divisor pair: {0}")]
    NotExactZeroDivisorPair(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cproj(#[from] CprojError),
}

/// Certificate that a module is C-projective: the rank and an explicit
/// isomorphism C^rank → X.
pub struct CProjCertificate {
    pub rank: usize,
    pub iso: ModuleMap,
}

/// A bounded complex whose modules carry certified C-projective structure.
pub struct CPerfectComplex {
    pub complex: ChainComplex,
    /// One certificate per degree, lowest first.
    pub certificates: Vec<CProjCertificate>,
}

impl CPerfectComplex {
    /// Certifies every module via `cproj_test`.
    pub fn certify(
        complex: ChainComplex,
        c: &Semidualizing,
        seed: u64,
    ) -> Result<Self, PerfectError> {
        let mut certificates = Vec::new();
        for n in complex.lo()..=complex.hi() {
            let m = complex.module_at(n);
            match crate::cproj::cproj_test(&m, c, seed)? {
                Some((rank, iso)) => certificates.push(CProjCertificate { rank, iso }),
                None => return Err(PerfectError::UncertifiedModule { degree: n }),
            }
        }
        Ok(CPerfectComplex { complex, certificates })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WidthSummary {
    pub width: usize,
    pub support: Option<(i64, i64)>,
    pub minimal_ranks: Vec<(i64, usize)>,
    pub minimal_is_minimal: bool,
}

/// Width report: the minimal representative, its C-projective ranks, and
/// the quasiisomorphism certificate from the minimization.
pub struct WidthReport {
    pub minimal: CPerfectComplex,
    pub map: ChainMap,
    pub certificate: QuasiIsoCertificate,
    pub summary: WidthSummary,
}

/// Width through the minimal representative: apply Hom(C, −) (free by the
/// certificates), minimize, tensor back. The certificate chain is verified
/// by the cone-acyclicity test inside `minimize_via`.
pub fn width(x: &CPerfectComplex, c: &Semidualizing) -> Result<WidthReport, PerfectError> {
    let Minimized { complex, map, certificate } = minimize_via(c.module(), &x.complex)?;
    let trimmed = complex.trimmed();
    let support = complex.support();
    let w = support.map_or(0, |(lo, hi)| (hi - lo) as usize);
    // certify the minimal representative degreewise: each module is
    // C ⊗ R^{b}, explicitly isomorphic to C^b via pure tensors
    let minimal = CPerfectComplex::certify(trimmed.clone(), c, 0)?;
    let minimal_ranks = minimal
        .certificates
        .iter()
        .enumerate()
        .map(|(i, cert)| (trimmed.lo() + i as i64, cert.rank))
        .collect();
    let summary = WidthSummary {
        width: w,
        support,
        minimal_ranks,
        minimal_is_minimal: trimmed.is_minimal(),
    };
    Ok(WidthReport { minimal, map, certificate, summary })
}

// ---------------------------------------------------------------------------
// Exact zero-divisors
// ---------------------------------------------------------------------------

/// A pair (x, y) with ann(x) = yR and ann(y) = xR on both the ring and C,
/// stored with the four kernel bases as the witness.
#[derive(Clone)]
pub struct ExactZeroDivisorPair {
    pub x: RingElement,
    pub y: RingElement,
    pub ker_x_on_ring: Matrix,
    pub ker_y_on_ring: Matrix,
    pub ker_x_on_c: Matrix,
    pub ker_y_on_c: Matrix,
}

impl ExactZeroDivisorPair {
    /// Checks the four kernel identities for (x, y) on R and on C; returns
    /// the witnessed pair or a description of the first failure.
    pub fn check(
        algebra: &AlgebraRef,
        c: &FinModule,
        x: RingElement,
        y: RingElement,
    ) -> Result<Self, PerfectError> {
        let lx = algebra.mul_matrix(&x);
        let ly = algebra.mul_matrix(&y);
        let ker_x = lx.kernel_basis();
        let ker_y = ly.kernel_basis();
        let im_x = lx.image_basis();
        let im_y = ly.image_basis();
        if ker_x.column_space_canonical() != im_y.column_space_canonical() {
            return Err(PerfectError::NotExactZeroDivisorPair(format!(
                "ann({}) ≠ ({})R",
                algebra.format_element(&x),
                algebra.format_element(&y)
            )));
        }
        if ker_y.column_space_canonical() != im_x.column_space_canonical() {
            return Err(PerfectError::NotExactZeroDivisorPair(format!(
                "ann({}) ≠ ({})R",
                algebra.format_element(&y),
                algebra.format_element(&x)
            )));
        }
        let xc = c.action_of(&x);
        let yc = c.action_of(&y);
        let ker_x_c = xc.kernel_basis();
        let ker_y_c = yc.kernel_basis();
        if ker_x_c.column_space_canonical() != yc.image_basis().column_space_canonical() {
            return Err(PerfectError::NotExactZeroDivisorPair(
                "ker(x·|C) ≠ yC".into(),
            ));
        }
        if ker_y_c.column_space_canonical() != xc.image_basis().column_space_canonical() {
            return Err(PerfectError::NotExactZeroDivisorPair(
                "ker(y·|C) ≠ xC".into(),
            ));
        }
        Ok(ExactZeroDivisorPair {
            x,
            y,
            ker_x_on_ring: ker_x,
            ker_y_on_ring: ker_y,
            ker_x_on_c: ker_x_c,
            ker_y_on_c: ker_y_c,
        })
    }
}

fn lex_key(a: &RingElement, b: &RingElement) -> Vec<u32> {
    let mut k = a.coords().to_vec();
    k.extend_from_slice(b.coords());
    k
}

/// Enumerates nonzero non-units x, tests whether ann(x) is generated by a
/// single y with ann(y) = xR, checks the same identities on C, and returns
/// the pairs deduplicated up to unit scaling (x, y) ~ (ux, u⁻¹y) and swap.
pub fn find_exact_zero_divisors(
    algebra: &AlgebraRef,
    c: &FinModule,
) -> Result<Vec<ExactZeroDivisorPair>, PerfectError> {
    let d = algebra.dim();
    let size = (algebra.p() as u64).checked_pow(d as u32);
    match size {
        Some(s) if s <= 1 << 20 => {}
        _ => {
            return Err(PerfectError::SearchSpaceExceeded {
                size: size.unwrap_or(u64::MAX),
            })
        }
    }
    let p = algebra.p();
    let units: Vec<RingElement> = algebra
        .all_elements()
        .filter(|e| algebra.is_unit(e))
        .collect();
    let mut seen: std::collections::BTreeMap<Vec<u32>, ExactZeroDivisorPair> =
        std::collections::BTreeMap::new();
    for x in algebra.all_elements() {
        if x.is_zero() || algebra.is_unit(&x) {
            continue;
        }
        let lx = algebra.mul_matrix(&x);
        let ker_x = lx.kernel_basis();
        let im_x_canon = lx.image_basis().column_space_canonical();
        // spanning search for a cyclic generator of the kernel
        let k = ker_x.cols();
        let total = (p as u64).pow(k as u32);
        let mut found: Option<RingElement> = None;
        for idx in 1..total {
            let mut coeffs = vec![0u32; k];
            let mut v = idx;
            for cc in coeffs.iter_mut() {
                *cc = (v % p as u64) as u32;
                v /= p as u64;
            }
            let y_coords = ker_x.mul_vec(&coeffs);
            let y = algebra.element(y_coords);
            let ly = algebra.mul_matrix(&y);
            // yR = ker(x·) and ker(y·) = xR
            if ly.image_basis().column_space_canonical()
                == ker_x.column_space_canonical()
                && ly.kernel_basis().column_space_canonical() == im_x_canon
            {
                found = Some(y);
                break;
            }
        }
        let Some(y) = found else { continue };
        let Ok(pair) = ExactZeroDivisorPair::check(algebra, c, x.clone(), y.clone()) else {
            continue;
        };
        // canonical representative up to unit scaling and swap
        let mut best: Option<(Vec<u32>, RingElement, RingElement)> = None;
        for u in &units {
            let u_inv = algebra.inverse(u).expect("unit");
            for (a, b) in [
                (algebra.mul(u, &pair.x), algebra.mul(&u_inv, &pair.y)),
                (algebra.mul(u, &pair.y), algebra.mul(&u_inv, &pair.x)),
            ] {
                let key = lex_key(&a, &b);
                if best.as_ref().map_or(true, |(bk, _, _)| key < *bk) {
                    best = Some((key, a, b));
                }
            }
        }
        let (key, a, b) = best.expect("at least the pair itself");
        seen.entry(key)
            .or_insert_with(|| ExactZeroDivisorPair::check(algebra, c, a, b).expect(
                "canonical representative of an exact pair is an exact pair",
            ));
    }
    Ok(seen.into_values().collect())
}

// ---------------------------------------------------------------------------
// Periodic complexes and the quotient-module pipeline
// ---------------------------------------------------------------------------

/// T^(n): n+1 copies of C with differentials alternating multiplication by
/// x and y, starting with x in degree 1 → 0. Minimal by construction since
/// x and y are non-units.
pub fn build_periodic_complex(
    c: &FinModule,
    pair: &ExactZeroDivisorPair,
    n: usize,
) -> Result<ChainComplex, PerfectError> {
    // re-verify the pair on this C
    let pair = ExactZeroDivisorPair::check(c.algebra(), c, pair.x.clone(), pair.y.clone())?;
    let modules = vec![c.clone(); n + 1];
    let diffs: Vec<ModuleMap> = (1..=n)
        .map(|i| {
            let elem = if i % 2 == 1 { &pair.x } else { &pair.y };
            c.homothety(elem)
        })
        .collect();
    let t = ChainComplex::new(c.algebra().clone(), 0, modules, diffs)?;
    assert!(t.is_minimal(), "differentials multiply by non-units");
    Ok(t)
}

/// The free periodic complex R → R → ⋯ with the same multiplication
/// pattern, augmented by R → R/xR; the comparison target for both
/// Hom(C, T⁺) and Hom(⁺L, C).
fn free_periodic_augmented(
    algebra: &AlgebraRef,
    pair: &ExactZeroDivisorPair,
    n: usize,
) -> Result<(ChainComplex, FinModule), PerfectError> {
    let free = FinModule::free(algebra.clone(), 1);
    let lx = algebra.mul_matrix(&pair.x);
    let (rxr, proj) = quotient_module(&free, &lx.image_basis());
    let modules = vec![free.clone(); n + 1];
    let diffs: Vec<ModuleMap> = (1..=n)
        .map(|i| {
            let elem = if i % 2 == 1 { &pair.x } else { &pair.y };
            free.homothety(elem)
        })
        .collect();
    let f = ChainComplex::new(algebra.clone(), 0, modules, diffs)?;
    let aug = AugmentedComplex::resolution(f, proj)?;
    Ok((aug.glued(), rxr))
}

#[derive(Debug, Clone, Serialize)]
pub struct Ex3Report {
    pub n: usize,
    pub quotient_dim: usize,
    pub t_minimal: bool,
    /// Homology of T⁺ vanishes in every degree below the truncation.
    pub t_plus_exact_below_truncation: bool,
    /// dim H_n(T⁺) = dim ker of the top differential; nonzero whenever the
    /// resolution really is infinite and was truncated.
    pub truncation_kernel_dim: usize,
    pub hom_c_tplus_iso_to_free_periodic: bool,
    pub l_minimal: bool,
    pub l_plus_exact: bool,
    pub hom_lplus_c_iso_to_free_periodic: bool,
    /// width(T^(j)) for j = 1..=n.
    pub widths: Vec<(usize, usize)>,
    pub widths_match: bool,
    pub pc_pd_quotient_infinite: bool,
    pub pd_ring_quotient_infinite: bool,
    pub all_pass: bool,
}

/// Full reproduction of the exact-zero-divisor pipeline: builds M = C/xC,
/// the periodic resolution T and coresolution L, compares both hom images
/// against the free periodic complex by constructed chain isomorphisms, and
/// checks width(T^(j)) = j.
pub fn ex3_verify(
    c: &Semidualizing,
    pair: &ExactZeroDivisorPair,
    n: usize,
) -> Result<Ex3Report, PerfectError> {
    let cm = c.module();
    let algebra = cm.algebra().clone();
    let pair = ExactZeroDivisorPair::check(&algebra, cm, pair.x.clone(), pair.y.clone())?;
    let p = algebra.p();

    // M = C/xC with projection ε
    let xc = cm.action_of(&pair.x);
    let (m, eps) = quotient_module(cm, &xc.image_basis());

    // T and T⁺
    let t = build_periodic_complex(cm, &pair, n)?;
    let t_minimal = t.is_minimal();
    let t_plus = AugmentedComplex::resolution(t.clone(), eps.clone())?.glued();
    let mut t_plus_exact = true;
    for deg in -1..n as i64 {
        if t_plus.homology(deg).dim() != 0 {
            t_plus_exact = false;
        }
    }
    let truncation_kernel_dim = t_plus.homology(n as i64).dim();

    // Hom(C, T⁺) compared to the augmented free periodic complex
    let (f_plus, rxr) = free_periodic_augmented(&algebra, &pair, n)?;
    let (hom_t_plus, homs) = hom_from(cm, &t_plus)?;
    let hom_c_tplus_iso = {
        // components: homothety R → Hom(C, C) in degrees 0..=n, and
        // r̄ ↦ ε∘(r·|C) in degree -1
        let mut comps: Vec<ModuleMap> = Vec::new();
        let free = FinModule::free(algebra.clone(), 1);
        let d = algebra.dim();
        // degree -1 component on R, then factored through R/xR
        let hom_cm_m = &homs[0];
        let mut on_r = Matrix::zero(p, hom_cm_m.dim(), d);
        for w in 0..d {
            let map = eps.matrix().mul(cm.action(w));
            let coords = hom_cm_m
                .coords_of_matrix(&map)
                .expect("ε∘(r·) lies in Hom(C, M)");
            for (r, v) in coords.into_iter().enumerate() {
                on_r.set(r, w, v);
            }
        }
        let rxr_sect = {
            // a right inverse of the projection R → R/xR
            let proj = f_plus.diff_at(0); // R (degree 0) → R/xR (degree -1)
            proj.matrix()
                .solve_matrix(&Matrix::identity(p, rxr.dim()))
                .expect("projection is surjective")
        };
        let psi = on_r.mul(&rxr_sect);
        // well-definedness: ψ∘π = the map on R
        let ok_factor = psi.mul(f_plus.diff_at(0).matrix()) == on_r;
        comps.push(ModuleMap::new(rxr.clone(), hom_cm_m.module().clone(), psi)?);
        for h in homs.iter().skip(1) {
            let mut chi = Matrix::zero(p, h.dim(), d);
            for w in 0..d {
                let coords = h
                    .coords_of_matrix(cm.action(w))
                    .expect("homothety lands in End(C)");
                for (r, v) in coords.into_iter().enumerate() {
                    chi.set(r, w, v);
                }
            }
            comps.push(ModuleMap::new(free.clone(), h.module().clone(), chi)?);
        }
        match ChainMap::new(f_plus.clone(), hom_t_plus.clone(), -1, comps) {
            Ok(map) => ok_factor && map.is_degreewise_iso(),
            Err(_) => false,
        }
    };

    // the coresolution L in degrees -n..0 and ⁺L with M placed at degree 1
    let l = {
        let modules = vec![cm.clone(); n + 1];
        let diffs: Vec<ModuleMap> = (1..=n)
            .map(|i| {
                // differential leaving degree -(i-1): x, y, x, ... from the top
                let elem = if i % 2 == 1 { &pair.x } else { &pair.y };
                cm.homothety(elem)
            })
            .rev()
            .collect();
        ChainComplex::new(algebra.clone(), -(n as i64), modules, diffs)?
    };
    let l_minimal = l.is_minimal();
    // γ : M → C, class of c ↦ y·c
    let eps_sect = eps
        .matrix()
        .solve_matrix(&Matrix::identity(p, m.dim()))
        .expect("ε is surjective");
    let gamma_matrix = cm.action_of(&pair.y).mul(&eps_sect);
    let gamma = ModuleMap::new(m.clone(), cm.clone(), gamma_matrix)?;
    let l_plus = AugmentedComplex::coresolution(l.clone(), gamma)?.glued();
    let mut l_plus_exact = true;
    for deg in (-(n as i64) + 1)..=1 {
        if l_plus.homology(deg).dim() != 0 {
            l_plus_exact = false;
        }
    }

    // Hom(⁺L, C) compared to the same free periodic complex
    let (w_complex, whoms) = hom_into(&l_plus, cm)?;
    let hom_lplus_iso = {
        let free = FinModule::free(algebra.clone(), 1);
        let d = algebra.dim();
        let mut comps: Vec<ModuleMap> = Vec::new();
        // degree -1: R/xR → Hom(M, C), r̄ ↦ (m̄ ↦ r·y·rep(m))
        let hom_m_c = &whoms[0];
        let mut on_r = Matrix::zero(p, hom_m_c.dim(), d);
        for w in 0..d {
            let ew = algebra.basis_element(w);
            let ewy = algebra.mul(&ew, &pair.y);
            let map = cm.action_of(&ewy).mul(&eps_sect);
            let coords = hom_m_c
                .coords_of_matrix(&map)
                .expect("r·y·(−) lies in Hom(M, C)");
            for (r, v) in coords.into_iter().enumerate() {
                on_r.set(r, w, v);
            }
        }
        let rxr_sect = f_plus
            .diff_at(0)
            .matrix()
            .solve_matrix(&Matrix::identity(p, rxr.dim()))
            .expect("projection is surjective");
        let psi = on_r.mul(&rxr_sect);
        let ok_factor = psi.mul(f_plus.diff_at(0).matrix()) == on_r;
        comps.push(ModuleMap::new(rxr.clone(), hom_m_c.module().clone(), psi)?);
        for h in whoms.iter().skip(1) {
            let mut chi = Matrix::zero(p, h.dim(), d);
            for w in 0..d {
                let coords = h
                    .coords_of_matrix(cm.action(w))
                    .expect("homothety lands in End(C)");
                for (r, v) in coords.into_iter().enumerate() {
                    chi.set(r, w, v);
                }
            }
            comps.push(ModuleMap::new(free.clone(), h.module().clone(), chi)?);
        }
        match ChainMap::new(f_plus.clone(), w_complex.clone(), -1, comps) {
            Ok(map) => ok_factor && map.is_degreewise_iso(),
            Err(_) => false,
        }
    };

    // widths of the whole family
    let mut widths = Vec::new();
    let mut widths_match = true;
    for j in 1..=n {
        let tj = build_periodic_complex(cm, &pair, j)?;
        let certified = CPerfectComplex::certify(tj, c, 0)?;
        let rep = width(&certified, c)?;
        widths.push((j, rep.summary.width));
        if rep.summary.width != j {
            widths_match = false;
        }
    }

    let pc_pd_quotient_infinite = crate::cproj::pc_pd(&m, c)? == Pd::Infinite;
    let pd_ring_quotient_infinite = {
        let free = FinModule::free(algebra.clone(), 1);
        let lx = algebra.mul_matrix(&pair.x);
        let (rxr_mod, _) = quotient_module(&free, &lx.image_basis());
        crate::module::pd(&rxr_mod) == Pd::Infinite
    };

    let all_pass = t_minimal
        && t_plus_exact
        && hom_c_tplus_iso
        && l_minimal
        && l_plus_exact
        && hom_lplus_iso
        && widths_match
        && pc_pd_quotient_infinite
        && pd_ring_quotient_infinite;

    Ok(Ex3Report {
        n,
        quotient_dim: m.dim(),
        t_minimal,
        t_plus_exact_below_truncation: t_plus_exact,
        truncation_kernel_dim,
        hom_c_tplus_iso_to_free_periodic: hom_c_tplus_iso,
        l_minimal,
        l_plus_exact,
        hom_lplus_c_iso_to_free_periodic: hom_lplus_iso,
        widths,
        widths_match,
        pc_pd_quotient_infinite,
        pd_ring_quotient_infinite,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_quasiiso;
    use crate::corpus;
    use crate::semidual::Semidualizing;

    fn ring_semidual(alg: &AlgebraRef) -> Semidualizing {
        Semidualizing::verify(FinModule::free(alg.clone(), 1), 6).unwrap()
    }

    #[test]
    fn ezd_discovery_on_r2() {
        let r2 = corpus::r2();
        let c = FinModule::free(r2.clone(), 1);
        let pairs = find_exact_zero_divisors(&r2, &c).unwrap();
        assert!(!pairs.is_empty());
        let names: Vec<(String, String)> = pairs
            .iter()
            .map(|p| (r2.format_element(&p.x), r2.format_element(&p.y)))
            .collect();
        // (x, x), (y, y), (x+y, x+y) must be among the canonical pairs
        for want in ["x", "y", "x+y"] {
            assert!(
                names.iter().any(|(a, b)| a == want && b == want),
                "missing pair ({want},{want}) in {names:?}"
            );
        }
    }

    #[test]
    fn ezd_empty_on_r3() {
        let r3 = corpus::r3();
        let c = FinModule::free(r3.clone(), 1);
        let pairs = find_exact_zero_divisors(&r3, &c).unwrap();
        assert!(pairs.is_empty());
    }

    #[test]
    fn ezd_on_r1_is_x_x() {
        let r1 = corpus::r1();
        let c = FinModule::free(r1.clone(), 1);
        let pairs = find_exact_zero_divisors(&r1, &c).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(r1.format_element(&pairs[0].x), "x");
        assert_eq!(r1.format_element(&pairs[0].y), "x");
    }

    #[test]
    fn ezd_kernel_identities_hold_for_all_discoveries() {
        for alg in [corpus::r1(), corpus::r2(), corpus::r2_gf3()] {
            let c = FinModule::free(alg.clone(), 1);
            for pair in find_exact_zero_divisors(&alg, &c).unwrap() {
                // check() already enforces the identities; re-run explicitly
                assert!(ExactZeroDivisorPair::check(&alg, &c, pair.x.clone(), pair.y.clone())
                    .is_ok());
            }
        }
    }

    #[test]
    fn periodic_complex_shapes_and_homology() {
        let r1 = corpus::r1();
        let c = FinModule::free(r1.clone(), 1);
        let pairs = find_exact_zero_divisors(&r1, &c).unwrap();
        let t0 = build_periodic_complex(&c, &pairs[0], 0).unwrap();
        assert_eq!(t0.dims(), vec![(0, 2)]);
        let t1 = build_periodic_complex(&c, &pairs[0], 1).unwrap();
        // H_0 ≅ C/xC (dim 1) and H_1 = ker(x·|C) = xC... nonzero at the top
        assert_eq!(t1.homology(0).dim(), 1);
        assert_eq!(t1.homology(1).dim(), 1);
    }

    #[test]
    fn periodic_complex_interior_homology_vanishes() {
        let r2 = corpus::r2();
        let c = FinModule::free(r2.clone(), 1);
        let x = r2.parse_element("x").unwrap();
        let pair = ExactZeroDivisorPair::check(&r2, &c, x.clone(), x).unwrap();
        let t3 = build_periodic_complex(&c, &pair, 3).unwrap();
        assert_eq!(t3.homology(0).dim(), 2); // C/xC
        assert_eq!(t3.homology(1).dim(), 0);
        assert_eq!(t3.homology(2).dim(), 0);
        // the top degree keeps the truncation kernel
        assert_eq!(t3.homology(3).dim(), 2);
    }

    #[test]
    fn width_of_concentrated_c_is_zero() {
        let r2 = corpus::r2();
        let sd = ring_semidual(&r2);
        let x = ChainComplex::concentrated(sd.module().clone(), 0);
        let certified = CPerfectComplex::certify(x, &sd, 0).unwrap();
        let rep = width(&certified, &sd).unwrap();
        assert_eq!(rep.summary.width, 0);
    }

    #[test]
    fn width_ignores_contractible_padding() {
        let r2 = corpus::r2();
        let sd = ring_semidual(&r2);
        let cmod = sd.module().clone();
        let x = r2.parse_element("x").unwrap();
        let pair = ExactZeroDivisorPair::check(&r2, &cmod, x.clone(), x).unwrap();
        let t2 = build_periodic_complex(&cmod, &pair, 2).unwrap();
        let contractible = ChainComplex::new(
            r2.clone(),
            1,
            vec![cmod.clone(), cmod.clone()],
            vec![ModuleMap::identity(&cmod)],
        )
        .unwrap();
        let padded = ChainComplex::direct_sum(&t2, &contractible);
        let certified = CPerfectComplex::certify(padded, &sd, 0).unwrap();
        let rep = width(&certified, &sd).unwrap();
        assert_eq!(rep.summary.width, 2);
        assert_eq!(
            rep.summary.minimal_ranks,
            vec![(0, 1), (1, 1), (2, 1)]
        );
    }

    #[test]
    fn width_of_periodic_family_over_r1() {
        let r1 = corpus::r1();
        let sd = ring_semidual(&r1);
        let cmod = sd.module().clone();
        let pairs = find_exact_zero_divisors(&r1, &cmod).unwrap();
        for n in 1..=4 {
            let t = build_periodic_complex(&cmod, &pairs[0], n).unwrap();
            let certified = CPerfectComplex::certify(t, &sd, 0).unwrap();
            let rep = width(&certified, &sd).unwrap();
            assert_eq!(rep.summary.width, n, "T^({n})");
        }
    }

    #[test]
    fn hom_of_periodic_complex_is_multiplication_on_the_ring() {
        // entry-wise: transporting the hom differential through the
        // homothety isomorphism gives exactly multiplication by x or y
        let r2 = corpus::r2();
        let sd = ring_semidual(&r2);
        let cmod = sd.module().clone();
        let x = r2.parse_element("x").unwrap();
        let pair = ExactZeroDivisorPair::check(&r2, &cmod, x.clone(), x).unwrap();
        let t = build_periodic_complex(&cmod, &pair, 3).unwrap();
        let (ht, homs) = hom_from(&cmod, &t).unwrap();
        let d = r2.dim();
        let p = r2.p();
        for i in 1..=3i64 {
            let elem = if i % 2 == 1 { &pair.x } else { &pair.y };
            // χ at each degree: R → Hom(C,C)
            let chi = |h: &crate::module::HomModule| {
                let mut m = Matrix::zero(p, h.dim(), d);
                for w in 0..d {
                    let coords = h.coords_of_matrix(cmod.action(w)).unwrap();
                    for (r, v) in coords.into_iter().enumerate() {
                        m.set(r, w, v);
                    }
                }
                m
            };
            let chi_tgt = chi(&homs[(i - 1) as usize]);
            let chi_src = chi(&homs[i as usize]);
            let lhs = ht.diff_at(i).matrix().mul(&chi_src);
            let rhs = chi_tgt.mul(&r2.mul_matrix(elem));
            assert_eq!(lhs, rhs, "differential {i} is not multiplication by the pair element");
        }
    }

    #[test]
    fn ex3_full_pipeline_r2() {
        let r2 = corpus::r2();
        let sd = ring_semidual(&r2);
        let cmod = sd.module().clone();
        let x = r2.parse_element("x").unwrap();
        let pair = ExactZeroDivisorPair::check(&r2, &cmod, x.clone(), x).unwrap();
        let report = ex3_verify(&sd, &pair, 4).unwrap();
        assert!(report.t_minimal);
        assert!(report.t_plus_exact_below_truncation);
        assert!(report.hom_c_tplus_iso_to_free_periodic);
        assert!(report.l_minimal);
        assert!(report.l_plus_exact);
        assert!(report.hom_lplus_c_iso_to_free_periodic);
        assert!(report.widths_match);
        assert!(report.pc_pd_quotient_infinite);
        assert!(report.pd_ring_quotient_infinite);
        assert!(report.all_pass);
    }

    #[test]
    fn ex3_on_r1() {
        let r1 = corpus::r1();
        let sd = ring_semidual(&r1);
        let cmod = sd.module().clone();
        let pairs = find_exact_zero_divisors(&r1, &cmod).unwrap();
        let report = ex3_verify(&sd, &pairs[0], 2).unwrap();
        assert!(report.all_pass);
    }

    #[test]
    fn ex3_degenerate_truncation() {
        let r1 = corpus::r1();
        let sd = ring_semidual(&r1);
        let cmod = sd.module().clone();
        let pairs = find_exact_zero_divisors(&r1, &cmod).unwrap();
        let report = ex3_verify(&sd, &pairs[0], 0).unwrap();
        // nothing below the truncation to check, but the truncation kernel
        // xC is visibly nonzero
        assert!(report.t_plus_exact_below_truncation);
        assert_eq!(report.truncation_kernel_dim, 1);
    }

    #[test]
    fn cone_quasiiso_for_width_pipeline() {
        // the width certificate is a genuine quasiisomorphism
        let r2 = corpus::r2();
        let sd = ring_semidual(&r2);
        let cmod = sd.module().clone();
        let x = r2.parse_element("x").unwrap();
        let pair = ExactZeroDivisorPair::check(&r2, &cmod, x.clone(), x).unwrap();
        let t = build_periodic_complex(&cmod, &pair, 2).unwrap();
        let certified = CPerfectComplex::certify(t, &sd, 0).unwrap();
        let rep = width(&certified, &sd).unwrap();
        let (ok, cert) = is_quasiiso(&rep.map);
        assert!(ok);
        assert!(cert.degrees.iter().all(|d| d.homology_dim == 0));
    }
}

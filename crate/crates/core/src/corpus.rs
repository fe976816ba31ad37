//! The bundled corpus of small local algebras used by tests and the CLI:
//! two fields, three quotients of GF(2)[x, y], one GF(3) analogue, and the
//! dualizing module ω over the short ring R3.

use crate::algebra::{AlgebraRef, AlgebraSpec, ValidatedAlgebra};
use crate::module::FinModule;

fn table_with_unit(d: usize, fill: impl Fn(usize, usize) -> Vec<u32>) -> Vec<Vec<Vec<u32>>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == 0 {
                        let mut row = vec![0; d];
                        row[j] = 1;
                        row
                    } else if j == 0 {
                        let mut row = vec![0; d];
                        row[i] = 1;
                        row
                    } else {
                        fill(i, j)
                    }
                })
                .collect()
        })
        .collect()
}

/// GF(p) itself, as a one-dimensional algebra.
pub fn gf(p: u32) -> AlgebraRef {
    let spec = AlgebraSpec {
        p,
        basis_names: vec!["1".into()],
        mul_table: vec![vec![vec![1]]],
    };
    ValidatedAlgebra::validate(spec).expect("field table is valid")
}

/// R1 = GF(2)[x]/(x^2), basis {1, x}.
pub fn r1() -> AlgebraRef {
    let spec = AlgebraSpec {
        p: 2,
        basis_names: vec!["1".into(), "x".into()],
        mul_table: table_with_unit(2, |_, _| vec![0, 0]),
    };
    ValidatedAlgebra::validate(spec).expect("R1 table is valid")
}

fn r2_table() -> Vec<Vec<Vec<u32>>> {
    // basis {1, x, y, xy}: x^2 = y^2 = 0, x*y = xy, everything else in m^3 = 0
    table_with_unit(4, |i, j| match (i, j) {
        (1, 2) | (2, 1) => vec![0, 0, 0, 1],
        _ => vec![0, 0, 0, 0],
    })
}

/// R2 = GF(2)[x, y]/(x^2, y^2), basis {1, x, y, xy}.
pub fn r2() -> AlgebraRef {
    let spec = AlgebraSpec {
        p: 2,
        basis_names: vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        mul_table: r2_table(),
    };
    ValidatedAlgebra::validate(spec).expect("R2 table is valid")
}

/// The GF(3) analogue of R2.
pub fn r2_gf3() -> AlgebraRef {
    let spec = AlgebraSpec {
        p: 3,
        basis_names: vec!["1".into(), "x".into(), "y".into(), "xy".into()],
        mul_table: r2_table(),
    };
    ValidatedAlgebra::validate(spec).expect("R2/GF(3) table is valid")
}

/// R3 = GF(2)[x, y]/(x^2, xy, y^2), basis {1, x, y}. Not Gorenstein, so its
/// dualizing module ω is a semidualizing module different from the ring.
pub fn r3() -> AlgebraRef {
    let spec = AlgebraSpec {
        p: 2,
        basis_names: vec!["1".into(), "x".into(), "y".into()],
        mul_table: table_with_unit(3, |_, _| vec![0, 0, 0]),
    };
    ValidatedAlgebra::validate(spec).expect("R3 table is valid")
}

/// The GF(p)-linear dual of the ring with its contragredient action; over an
/// Artinian local algebra this is the dualizing module.
pub fn dual_of_ring(algebra: &AlgebraRef) -> FinModule {
    FinModule::free(algebra.clone(), 1).dual()
}

/// ω = Hom_k(R3, k) over R3.
pub fn omega3() -> FinModule {
    dual_of_ring(&r3())
}

/// Every bundled ring with its corpus name.
pub fn all_rings() -> Vec<(&'static str, AlgebraRef)> {
    vec![
        ("gf2", gf(2)),
        ("gf3", gf(3)),
        ("r1", r1()),
        ("r2", r2()),
        ("r3", r3()),
        ("r2_gf3", r2_gf3()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_corpus_rings_validate() {
        for (name, alg) in all_rings() {
            assert!(alg.dim() >= 1, "{name}");
        }
    }

    #[test]
    fn omega3_action_matches_hand_computation() {
        // x·x* = 1*, y·y* = 1*, everything else kills the dual basis
        let omega = omega3();
        assert_eq!(omega.dim(), 3);
        let ax = omega.action(1);
        assert_eq!(ax.get(0, 1), 1);
        assert_eq!(ax.rank(), 1);
        let ay = omega.action(2);
        assert_eq!(ay.get(0, 2), 1);
        assert_eq!(ay.rank(), 1);
    }
}

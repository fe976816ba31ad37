#![allow(dead_code)]

//! Shared helpers for the integration suites: seeded random modules,
//! complexes and chain maps, plus an independent set-theoretic syzygy
//! oracle that never touches the library's linear algebra.

use cproj_core::algebra::AlgebraRef;
use cproj_core::complex::{chain_map_space, ChainComplex, ChainMap};
use cproj_core::corpus;
use cproj_core::gfp::Matrix;
use cproj_core::module::{
    hom_module, minimal_free_resolution, quotient_module, submodule_generated_by, FinModule,
    ModuleMap,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, p: u32, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..p)).collect()
}

/// A random valid module: quotients and submodules of small frees, duals,
/// the residue field, and direct sums thereof.
pub fn random_module(alg: &AlgebraRef, rng: &mut ChaCha8Rng) -> FinModule {
    let p = alg.p();
    let pick = rng.gen_range(0..8u32);
    match pick {
        0 => FinModule::free(alg.clone(), rng.gen_range(1..=2)),
        1 => FinModule::residue_field(alg.clone()),
        2 => corpus::dual_of_ring(alg),
        3 | 4 => {
            // quotient of a free by a couple of random elements
            let a = rng.gen_range(1..=2);
            let free = FinModule::free(alg.clone(), a);
            let mut cols = Matrix::zero(p, free.dim(), 0);
            for _ in 0..rng.gen_range(1..=2) {
                let v = random_vector(rng, p, free.dim());
                cols = cols.hstack(&Matrix::column(p, &v));
            }
            quotient_module(&free, &cols).0
        }
        5 | 6 => {
            // submodule of a free generated by a couple of random elements
            let a = rng.gen_range(1..=2);
            let free = FinModule::free(alg.clone(), a);
            let mut cols = Matrix::zero(p, free.dim(), 0);
            for _ in 0..rng.gen_range(1..=2) {
                let v = random_vector(rng, p, free.dim());
                cols = cols.hstack(&Matrix::column(p, &v));
            }
            submodule_generated_by(&free, &cols).0
        }
        _ => {
            let a = FinModule::residue_field(alg.clone());
            let b = FinModule::free(alg.clone(), 1);
            FinModule::direct_sum(&[a, b]).0
        }
    }
}

/// A random bounded complex built by iterated kernels, so ∂∂ = 0 holds by
/// construction and the homology is genuinely varied.
pub fn random_complex(
    alg: &AlgebraRef,
    rng: &mut ChaCha8Rng,
    max_len: usize,
    max_dim: usize,
) -> ChainComplex {
    let len = rng.gen_range(1..=max_len);
    let mut modules = Vec::new();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let mut m0 = random_module(alg, rng);
    while m0.dim() > max_dim {
        m0 = random_module(alg, rng);
    }
    modules.push(m0);
    for i in 1..len {
        let mut next = random_module(alg, rng);
        while next.dim() > max_dim {
            next = random_module(alg, rng);
        }
        // target of the new differential: the kernel of the previous one
        let (kernel, incl) = if i == 1 {
            let whole = modules[0].clone();
            (whole.clone(), ModuleMap::identity(&whole))
        } else {
            diffs.last().unwrap().kernel()
        };
        let hom = hom_module(&next, &kernel).expect("same algebra");
        let comp = if hom.dim() == 0 {
            ModuleMap::zero_map(next.clone(), kernel.clone())
        } else {
            hom.map_from_coords(&random_vector(rng, alg.p(), hom.dim()))
        };
        diffs.push(incl.compose(&comp));
        modules.push(next);
    }
    ChainComplex::new(alg.clone(), 0, modules, diffs).expect("kernel construction gives ∂∂ = 0")
}

/// A random chain map sampled from the full space of chain maps A → B.
pub fn random_chain_map(a: &ChainComplex, b: &ChainComplex, rng: &mut ChaCha8Rng) -> ChainMap {
    let space = chain_map_space(a, b);
    if space.dim() == 0 {
        return ChainMap::zero(a, b);
    }
    let coords = random_vector(rng, a.algebra().p(), space.dim());
    space.map_from_coords(&coords)
}

/// A random minimal complex of free modules: a prefix of a minimal free
/// resolution, possibly direct-summed with a shifted second one.
pub fn random_minimal_free_complex(alg: &AlgebraRef, rng: &mut ChaCha8Rng) -> ChainComplex {
    let pick_module = |rng: &mut ChaCha8Rng| -> FinModule {
        match rng.gen_range(0..3u32) {
            0 => FinModule::residue_field(alg.clone()),
            1 => corpus::dual_of_ring(alg),
            _ => {
                let free = FinModule::free(alg.clone(), 1);
                let mut cols = Matrix::zero(alg.p(), free.dim(), 0);
                let v = random_vector(rng, alg.p(), free.dim());
                cols = cols.hstack(&Matrix::column(alg.p(), &v));
                quotient_module(&free, &cols).0
            }
        }
    };
    let len = rng.gen_range(1..=3usize);
    let res = minimal_free_resolution(&pick_module(rng), len);
    let base = ChainComplex::new(alg.clone(), 0, res.frees.clone(), res.diffs.clone()).unwrap();
    if rng.gen_bool(0.5) {
        let res2 = minimal_free_resolution(&pick_module(rng), rng.gen_range(1..=2));
        let other = ChainComplex::new(alg.clone(), 0, res2.frees.clone(), res2.diffs.clone())
            .unwrap()
            .shift(rng.gen_range(0..=1));
        ChainComplex::direct_sum(&base, &other)
    } else {
        base
    }
}

/// Pads a free complex with contractible summands 0 → R^j → R^j → 0 at
/// random degrees.
pub fn pad_with_contractibles(
    x: &ChainComplex,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> ChainComplex {
    let alg = x.algebra().clone();
    let mut out = x.clone();
    for _ in 0..count {
        let j = rng.gen_range(1..=2usize);
        let free = FinModule::free(alg.clone(), j);
        let deg = rng.gen_range(x.lo()..=x.hi() + 1);
        let pad = ChainComplex::new(
            alg.clone(),
            deg,
            vec![free.clone(), free.clone()],
            vec![ModuleMap::identity(&free)],
        )
        .unwrap();
        out = ChainComplex::direct_sum(&out, &pad);
    }
    out
}

/// A random automorphism of a module, sampled from its endomorphism space.
pub fn random_automorphism(m: &FinModule, rng: &mut ChaCha8Rng) -> ModuleMap {
    if m.is_zero() {
        return ModuleMap::identity(m);
    }
    let hom = hom_module(m, m).expect("same algebra");
    loop {
        let f = hom.map_from_coords(&random_vector(rng, m.p(), hom.dim()));
        if f.is_isomorphism() {
            return f;
        }
    }
}

/// Conjugates every degree by a random automorphism: an isomorphic complex
/// in a scrambled presentation.
pub fn random_basis_change(x: &ChainComplex, rng: &mut ChaCha8Rng) -> ChainComplex {
    let autos: Vec<ModuleMap> = (x.lo()..=x.hi())
        .map(|n| random_automorphism(&x.module_at(n), rng))
        .collect();
    let modules: Vec<FinModule> = (x.lo()..=x.hi()).map(|n| x.module_at(n)).collect();
    let diffs: Vec<ModuleMap> = (x.lo() + 1..=x.hi())
        .map(|n| {
            let i = (n - x.lo()) as usize;
            let g_inv = autos[i].inverse().unwrap();
            autos[i - 1].compose(&x.diff_at(n)).compose(&g_inv)
        })
        .collect();
    ChainComplex::new(x.algebra().clone(), x.lo(), modules, diffs)
        .expect("conjugated differentials still square to zero")
}

// ---------------------------------------------------------------------------
// Set-theoretic syzygy oracle (independent of the gfp kernel)
// ---------------------------------------------------------------------------
//
// Betti numbers recomputed with nothing but the multiplication table, set
// closure, and coset counting: no row reduction, no pivoting, no ranks.

fn add_vec(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

/// All vectors of the given length over GF(p).
fn all_vectors(p: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            for c in 0..p {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Additive closure of a generating set inside GF(p)^len.
fn subgroup_closure(p: u32, len: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
    set.insert(vec![0; len]);
    let mut frontier: Vec<Vec<u32>> = gens.to_vec();
    while let Some(g) = frontier.pop() {
        let additions: Vec<Vec<u32>> = set.iter().map(|s| add_vec(p, &g, s)).collect();
        for a in additions {
            if set.insert(a.clone()) {
                frontier.push(a);
            }
        }
    }
    set
}

/// ν and a minimal generating set by coset extension: grow the reachable
/// set from mM one generator at a time until the whole carrier is covered.
fn nu_and_generators(
    p: u32,
    len: usize,
    carrier: &[Vec<u32>],
    radical: &BTreeSet<Vec<u32>>,
) -> (usize, Vec<Vec<u32>>) {
    let mut reach = radical.clone();
    let mut gens = Vec::new();
    while reach.len() < carrier.len() {
        let x = carrier
            .iter()
            .find(|t| !reach.contains(*t))
            .expect("reachable set is proper")
            .clone();
        let mut new_reach = BTreeSet::new();
        for c in 0..p {
            let mut cx = vec![0u32; len];
            for _ in 0..c {
                cx = add_vec(p, &cx, &x);
            }
            for s in &reach {
                new_reach.insert(add_vec(p, &cx, s));
            }
        }
        reach = new_reach;
        gens.push(x);
    }
    (gens.len(), gens)
}

/// Betti numbers b_0..b_{length-1} of the minimal free resolution of `m`,
/// recomputed by brute force. Elements of R^rank are flat vectors of length
/// rank*d; the action is ring multiplication straight off the table.
pub fn oracle_betti(alg: &AlgebraRef, m: &FinModule, length: usize) -> Vec<usize> {
    let p = alg.p();
    let d = alg.dim();
    let table = alg.spec().mul_table.clone();
    let ring_mul = move |a: &[u32], b: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; a.len()];
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..b.len() {
                if b[j] == 0 {
                    continue;
                }
                for k in 0..out.len() {
                    out[k] = (out[k] + a[i] * b[j] % p * table[i][j][k]) % p;
                }
            }
        }
        out
    };

    // --- step 0: M itself, action through its raw matrices
    let raw_action: Vec<Vec<Vec<u32>>> = m
        .actions()
        .iter()
        .map(|a| (0..a.rows()).map(|i| a.row(i).to_vec()).collect())
        .collect();
    let apply_matrix = |mat: &[Vec<u32>], v: &[u32]| -> Vec<u32> {
        mat.iter()
            .map(|row| {
                (row.iter().zip(v).fold(0u64, |acc, (&a, &b)| acc + a as u64 * b as u64)
                    % p as u64) as u32
            })
            .collect()
    };
    let m_elements = all_vectors(p, m.dim());
    let m_radical = {
        let mut gens = Vec::new();
        for mat in raw_action.iter().skip(1) {
            for e in &m_elements {
                let img = apply_matrix(mat, e);
                if img.iter().any(|&c| c != 0) {
                    gens.push(img);
                }
            }
        }
        subgroup_closure(p, m.dim(), &gens)
    };
    let (nu0, gens0) = nu_and_generators(p, m.dim(), &m_elements, &m_radical);
    let mut betti = vec![nu0];
    if length == 1 || nu0 == 0 {
        while betti.len() < length {
            betti.push(0);
        }
        return betti;
    }

    // the action of a ring element on M, for evaluating the cover
    let act_on_m = |r: &[u32], v: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; v.len()];
        for (i, &ri) in r.iter().enumerate() {
            if ri == 0 {
                continue;
            }
            let img = apply_matrix(&raw_action[i], v);
            for (k, &c) in img.iter().enumerate() {
                out[k] = (out[k] + ri * c) % p;
            }
        }
        out
    };

    // kernel of the first cover: flat tuples over R^{nu0} that evaluate to 0
    let mut rank = nu0;
    let mut kernel: Vec<Vec<u32>> = all_vectors(p, rank * d)
        .into_iter()
        .filter(|t| {
            let mut acc = vec![0u32; m.dim()];
            for (j, g) in gens0.iter().enumerate() {
                let r = &t[j * d..(j + 1) * d];
                acc = add_vec(p, &acc, &act_on_m(r, g));
            }
            acc.iter().all(|&c| c == 0)
        })
        .collect();

    // --- later steps: the carrier is a subset of R^rank
    while betti.len() < length {
        if kernel.len() <= 1 {
            betti.push(0);
            continue;
        }
        let len_flat = rank * d;
        // act entrywise by ring multiplication
        let act_on_tuple = |r: &[u32], t: &[u32]| -> Vec<u32> {
            let mut out = Vec::with_capacity(len_flat);
            for j in 0..rank {
                out.extend(ring_mul(r, &t[j * d..(j + 1) * d]));
            }
            out
        };
        let radical = {
            let mut gens = Vec::new();
            for t in &kernel {
                for i in 1..d {
                    let mut e = vec![0u32; d];
                    e[i] = 1;
                    let img = act_on_tuple(&e, t);
                    if img.iter().any(|&c| c != 0) {
                        gens.push(img);
                    }
                }
            }
            subgroup_closure(p, len_flat, &gens)
        };
        let (nu, gens) = nu_and_generators(p, len_flat, &kernel, &radical);
        betti.push(nu);
        if betti.len() == length || nu == 0 {
            while betti.len() < length {
                betti.push(0);
            }
            break;
        }
        // next kernel: flat tuples over R^nu evaluating to zero in R^rank
        let next: Vec<Vec<u32>> = all_vectors(p, nu * d)
            .into_iter()
            .filter(|t| {
                let mut acc = vec![0u32; len_flat];
                for (j, g) in gens.iter().enumerate() {
                    let r = &t[j * d..(j + 1) * d];
                    acc = add_vec(p, &acc, &act_on_tuple(r, g));
                }
                acc.iter().all(|&c| c == 0)
            })
            .collect();
        kernel = next;
        rank = nu;
    }
    betti
}

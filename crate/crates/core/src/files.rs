//! JSON file formats and the workspace loader shared by the CLI and the
//! Python bindings. Matrices are arrays-of-arrays of integers, row-major;
//! the modulus always comes from the enclosing ring.

use crate::algebra::{AlgebraRef, AlgebraSpec, ValidatedAlgebra};
use crate::complex::{ChainComplex, ChainMap, ComplexError};
use crate::gfp::Matrix;
use crate::module::{quotient_module, FinModule, ModuleError, ModuleMap};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("io error on {path}: {err}")]
    Io { path: String, err: String },
    #[error("parse error in {path}: {err}")]
    Parse { path: String, err: String },
    #[error("no ring given: pass --ring or embed a \"ring\" field")]
    MissingRing,
    #[error("unknown corpus name or missing file: {0}")]
    UnknownRing(String),
    #[error("bad module spec `{spec}`: {reason}")]
    BadModuleSpec { spec: String, reason: String },
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

// ---------------------------------------------------------------------------
// File schemas
// ---------------------------------------------------------------------------

/// Ring file: `{ "p": 2, "basis": ["1","x"], "mul": c[i][j][k] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingFile {
    pub p: u32,
    pub basis: Vec<String>,
    pub mul: Vec<Vec<Vec<u32>>>,
}

impl RingFile {
    pub fn from_algebra(a: &ValidatedAlgebra) -> Self {
        RingFile {
            p: a.p(),
            basis: a.spec().basis_names.clone(),
            mul: a.spec().mul_table.clone(),
        }
    }

    pub fn validate(self) -> Result<AlgebraRef, FileError> {
        Ok(ValidatedAlgebra::validate(AlgebraSpec {
            p: self.p,
            basis_names: self.basis,
            mul_table: self.mul,
        })?)
    }
}

/// A module inside a JSON document: either inline action matrices or a
/// shorthand constructor string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleJson {
    Shorthand(String),
    Inline { dim: usize, action: Vec<Vec<Vec<u32>>> },
}

/// Module file: `{ "ring": "r1", "dim": n, "action": [d matrices] }` or a
/// shorthand under the "module" key.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(flatten)]
    pub module: ModuleJson,
}

/// Complex file: `{ "ring": ..., "lo": n, "hi": m, "modules": [...],
/// "differentials": [matrices] }` with one differential per adjacent pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub lo: i64,
    pub hi: i64,
    pub modules: Vec<ModuleJson>,
    pub differentials: Vec<Vec<Vec<u32>>>,
}

/// Chain map file: source, target, and per-degree components starting at
/// `lo` (degrees outside get zero components).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainMapFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub source: ComplexFile,
    pub target: ComplexFile,
    pub lo: i64,
    pub components: Vec<Vec<Vec<u32>>>,
}

fn matrix_to_rows(m: &Matrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn matrix_from_rows(p: u32, rows: &[Vec<u32>], want_rows: usize, want_cols: usize) -> Result<Matrix, FileError> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    if r != want_rows || (r > 0 && c != want_cols) {
        return Err(FileError::BadModuleSpec {
            spec: "matrix".into(),
            reason: format!("expected {want_rows}x{want_cols}, got {r}x{c}"),
        });
    }
    if rows.iter().any(|row| row.len() != c) {
        return Err(FileError::BadModuleSpec {
            spec: "matrix".into(),
            reason: "ragged rows".into(),
        });
    }
    Ok(Matrix::new(p, want_rows, want_cols, rows.iter().flatten().copied().collect()))
}

pub fn module_to_json(m: &FinModule) -> ModuleJson {
    ModuleJson::Inline {
        dim: m.dim(),
        action: m.actions().iter().map(matrix_to_rows).collect(),
    }
}

pub fn complex_to_file(x: &ChainComplex, ring_name: Option<String>) -> ComplexFile {
    ComplexFile {
        ring: ring_name,
        lo: x.lo(),
        hi: x.hi(),
        modules: (x.lo()..=x.hi()).map(|n| module_to_json(&x.module_at(n))).collect(),
        differentials: (x.lo() + 1..=x.hi())
            .map(|n| matrix_to_rows(x.diff_at(n).matrix()))
            .collect(),
    }
}

/// Builds a module from a shorthand: `free:N`, `residue_field`,
/// `dual_of_ring`, `@ring`, or `quotient:EXPR` (= R/(expr)R).
pub fn module_from_shorthand(alg: &AlgebraRef, s: &str) -> Result<FinModule, FileError> {
    let s = s.trim();
    if let Some(n) = s.strip_prefix("free:") {
        let n: usize = n.trim().parse().map_err(|_| FileError::BadModuleSpec {
            spec: s.into(),
            reason: "free rank must be an integer".into(),
        })?;
        return Ok(FinModule::free(alg.clone(), n));
    }
    match s {
        "residue_field" | "k" => return Ok(FinModule::residue_field(alg.clone())),
        "dual_of_ring" => return Ok(crate::corpus::dual_of_ring(alg)),
        "@ring" | "ring" => return Ok(FinModule::free(alg.clone(), 1)),
        _ => {}
    }
    if let Some(expr) = s.strip_prefix("quotient:") {
        let elem = alg.parse_element(expr).map_err(|e| FileError::BadModuleSpec {
            spec: s.into(),
            reason: e.to_string(),
        })?;
        let free = FinModule::free(alg.clone(), 1);
        let img = free.action_of(&elem).image_basis();
        return Ok(quotient_module(&free, &img).0);
    }
    Err(FileError::BadModuleSpec {
        spec: s.into(),
        reason: "unknown shorthand (try free:N, residue_field, dual_of_ring, @ring, quotient:EXPR)"
            .into(),
    })
}

pub fn module_from_json(alg: &AlgebraRef, j: &ModuleJson) -> Result<FinModule, FileError> {
    match j {
        ModuleJson::Shorthand(s) => module_from_shorthand(alg, s),
        ModuleJson::Inline { dim, action } => {
            let p = alg.p();
            let mats: Result<Vec<Matrix>, FileError> = action
                .iter()
                .map(|rows| matrix_from_rows(p, rows, *dim, *dim))
                .collect();
            Ok(FinModule::new(alg.clone(), mats?)?)
        }
    }
}

pub fn complex_from_file(alg: &AlgebraRef, f: &ComplexFile) -> Result<ChainComplex, FileError> {
    if f.hi < f.lo {
        return Ok(ChainComplex::zero_complex(alg.clone()));
    }
    let modules: Result<Vec<FinModule>, FileError> =
        f.modules.iter().map(|j| module_from_json(alg, j)).collect();
    let modules = modules?;
    let count = (f.hi - f.lo) as usize + 1;
    if modules.len() != count {
        return Err(FileError::BadModuleSpec {
            spec: "complex".into(),
            reason: format!("expected {count} modules for degrees {}..={}", f.lo, f.hi),
        });
    }
    let p = alg.p();
    let mut diffs = Vec::new();
    for (i, rows) in f.differentials.iter().enumerate() {
        let src = &modules[i + 1];
        let tgt = &modules[i];
        let m = matrix_from_rows(p, rows, tgt.dim(), src.dim())?;
        diffs.push(ModuleMap::new(src.clone(), tgt.clone(), m)?);
    }
    Ok(ChainComplex::new(alg.clone(), f.lo, modules, diffs)?)
}

pub fn chainmap_from_file(alg: &AlgebraRef, f: &ChainMapFile) -> Result<ChainMap, FileError> {
    let source = complex_from_file(alg, &f.source)?;
    let target = complex_from_file(alg, &f.target)?;
    let p = alg.p();
    let mut comps = Vec::new();
    for (i, rows) in f.components.iter().enumerate() {
        let n = f.lo + i as i64;
        let src = source.module_at(n);
        let tgt = target.module_at(n);
        let m = matrix_from_rows(p, rows, tgt.dim(), src.dim())?;
        comps.push(ModuleMap::new(src, tgt, m)?);
    }
    Ok(ChainMap::new(source, target, f.lo, comps)?)
}

// ---------------------------------------------------------------------------
// Workspace: corpus directory + named loading
// ---------------------------------------------------------------------------

/// Resolves names to validated objects: bundled corpus names, or paths to
/// JSON files. Every load re-validates.
pub struct Workspace {
    corpus_dir: PathBuf,
    rings: BTreeMap<String, AlgebraRef>,
}

pub const CORPUS_ENV: &str = "CPROJ_CORPUS";

impl Workspace {
    pub fn new(corpus_dir: PathBuf) -> Self {
        Workspace { corpus_dir, rings: BTreeMap::new() }
    }

    /// Corpus directory from CPROJ_CORPUS, falling back to ./corpus.
    pub fn from_env() -> Self {
        let dir = std::env::var(CORPUS_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|_| PathBuf::from("corpus"));
        Self::new(dir)
    }

    pub fn corpus_dir(&self) -> &Path {
        &self.corpus_dir
    }

    pub fn corpus_names(&self) -> Vec<String> {
        let mut names: Vec<String> = std::fs::read_dir(&self.corpus_dir)
            .into_iter()
            .flatten()
            .flatten()
            .filter_map(|e| {
                let p = e.path();
                (p.extension().map_or(false, |x| x == "json")
                    && p.file_stem().is_some())
                .then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
            })
            .collect();
        names.sort();
        names
    }

    fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FileError> {
        let text = std::fs::read_to_string(path).map_err(|e| FileError::Io {
            path: path.display().to_string(),
            err: e.to_string(),
        })?;
        serde_json::from_str(&text).map_err(|e| FileError::Parse {
            path: path.display().to_string(),
            err: e.to_string(),
        })
    }

    /// Loads a ring by corpus name (`r1`) or by path to a ring file.
    pub fn load_ring(&mut self, name: &str) -> Result<AlgebraRef, FileError> {
        if let Some(a) = self.rings.get(name) {
            return Ok(a.clone());
        }
        let direct = Path::new(name);
        let candidates = [
            direct.to_path_buf(),
            self.corpus_dir.join(format!("{name}.json")),
            self.corpus_dir.join(name),
        ];
        let path = candidates
            .iter()
            .find(|p| p.is_file())
            .ok_or_else(|| FileError::UnknownRing(name.to_string()))?;
        let file: RingFile = Self::read_json(path)?;
        let alg = file.validate()?;
        self.rings.insert(name.to_string(), alg.clone());
        Ok(alg)
    }

    /// Loads a module: a shorthand, a path to a module file, or a corpus
    /// name. Module files may name their own ring; an explicitly passed
    /// ring wins.
    pub fn load_module(
        &mut self,
        ring: Option<&AlgebraRef>,
        spec: &str,
    ) -> Result<(AlgebraRef, FinModule), FileError> {
        let candidates = [
            Path::new(spec).to_path_buf(),
            self.corpus_dir.join(spec),
            self.corpus_dir.join(format!("{spec}.json")),
        ];
        if let Some(path) = candidates.iter().find(|p| p.is_file()) {
            let file: ModuleFile = Self::read_json(path)?;
            let alg = match (ring, &file.ring) {
                (Some(a), _) => a.clone(),
                (None, Some(r)) => self.load_ring(r)?,
                (None, None) => return Err(FileError::MissingRing),
            };
            let m = module_from_json(&alg, &file.module)?;
            return Ok((alg, m));
        }
        let alg = ring.ok_or(FileError::MissingRing)?.clone();
        let m = module_from_shorthand(&alg, spec)?;
        Ok((alg, m))
    }

    pub fn load_complex(
        &mut self,
        ring: Option<&AlgebraRef>,
        path: &Path,
    ) -> Result<(AlgebraRef, ChainComplex), FileError> {
        let file: ComplexFile = Self::read_json(path)?;
        let alg = match (ring, &file.ring) {
            (Some(a), _) => a.clone(),
            (None, Some(r)) => self.load_ring(r)?,
            (None, None) => return Err(FileError::MissingRing),
        };
        let x = complex_from_file(&alg, &file)?;
        Ok((alg, x))
    }

    pub fn load_chainmap(
        &mut self,
        ring: Option<&AlgebraRef>,
        path: &Path,
    ) -> Result<(AlgebraRef, ChainMap), FileError> {
        let file: ChainMapFile = Self::read_json(path)?;
        let alg = match (ring, &file.ring) {
            (Some(a), _) => a.clone(),
            (None, Some(r)) => self.load_ring(r)?,
            (None, None) => return Err(FileError::MissingRing),
        };
        let m = chainmap_from_file(&alg, &file)?;
        Ok((alg, m))
    }
}

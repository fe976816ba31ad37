//! Python bindings: rings, modules and complexes with the main pipeline
//! operations (semidualizing verification, resolutions, P_C-pd, width,
//! exact zero-divisors, minimization).

use cproj_core::complex::{minimize, minimize_via, ChainComplex};
use cproj_core::cproj::{
    coresolution_criterion, hereditary_probe, minimal_pc_coresolution, minimal_pc_resolution,
    pc_pd,
};
use cproj_core::corpus;
use cproj_core::files::{
    complex_from_file, complex_to_file, module_from_json, module_from_shorthand, ComplexFile,
    ModuleJson, RingFile,
};
use cproj_core::module::{
    hom_module, minimal_free_resolution, module_iso, pd, tensor_module, FinModule, IsoVerdict,
    Pd,
};
use cproj_core::perfect::{
    build_periodic_complex, ex3_verify, find_exact_zero_divisors, width, CPerfectComplex,
    ExactZeroDivisorPair,
};
use cproj_core::semidual::{ext_dims, verify_semidualizing, Semidualizing};
use cproj_core::AlgebraRef;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyObject {
    match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        Value::String(s) => s.into_py(py),
        Value::Array(a) => {
            let list = PyList::empty_bound(py);
            for x in a {
                list.append(json_to_py(py, x)).unwrap();
            }
            list.into_py(py)
        }
        Value::Object(o) => {
            let dict = PyDict::new_bound(py);
            for (k, x) in o {
                dict.set_item(k, json_to_py(py, x)).unwrap();
            }
            dict.into_py(py)
        }
    }
}

fn to_py<T: serde::Serialize>(py: Python<'_>, t: &T) -> PyResult<PyObject> {
    let v = serde_json::to_value(t).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(json_to_py(py, &v))
}

fn verify(c: &Module, bound: usize) -> PyResult<Semidualizing> {
    Semidualizing::verify(c.inner.clone(), bound).map_err(err)
}

/// A validated finite-dimensional commutative local GF(p)-algebra.
#[pyclass(name = "Ring")]
#[derive(Clone)]
struct Ring {
    inner: AlgebraRef,
}

#[pymethods]
impl Ring {
    /// Parses and validates a ring from its JSON presentation.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Ring> {
        let file: RingFile = serde_json::from_str(text).map_err(err)?;
        Ok(Ring { inner: file.validate().map_err(err)? })
    }

    /// Loads and validates a ring file from disk.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Ring> {
        let text = std::fs::read_to_string(path).map_err(err)?;
        Self::from_json(&text)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn nilpotency_index(&self) -> usize {
        self.inner.nilpotency_index()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.spec().basis_names.clone()
    }

    fn free(&self, n: usize) -> Module {
        Module { inner: FinModule::free(self.inner.clone(), n) }
    }

    fn residue_field(&self) -> Module {
        Module { inner: FinModule::residue_field(self.inner.clone()) }
    }

    fn dual_of_ring(&self) -> Module {
        Module { inner: corpus::dual_of_ring(&self.inner) }
    }

    /// R/(e)R for an element expression like "x" or "x+y".
    fn quotient(&self, element: &str) -> PyResult<Module> {
        let m = module_from_shorthand(&self.inner, &format!("quotient:{element}"))
            .map_err(err)?;
        Ok(Module { inner: m })
    }

    /// A module from inline JSON `{"dim": n, "action": [...]}` or a
    /// shorthand string.
    fn module_from_json(&self, text: &str) -> PyResult<Module> {
        let j: ModuleJson = serde_json::from_str(text).map_err(err)?;
        Ok(Module { inner: module_from_json(&self.inner, &j).map_err(err)? })
    }

    /// A complex from a complex-file JSON document.
    fn complex_from_json(&self, text: &str) -> PyResult<Complex> {
        let f: ComplexFile = serde_json::from_str(text).map_err(err)?;
        Ok(Complex { inner: complex_from_file(&self.inner, &f).map_err(err)? })
    }

    /// Exact zero-divisor pairs on the ring (and on C when given),
    /// deduplicated up to unit scaling.
    #[pyo3(signature = (module = None))]
    fn find_exact_zero_divisors(&self, module: Option<&Module>) -> PyResult<Vec<(String, String)>> {
        let c = match module {
            Some(m) => m.inner.clone(),
            None => FinModule::free(self.inner.clone(), 1),
        };
        let pairs = find_exact_zero_divisors(&self.inner, &c).map_err(err)?;
        Ok(pairs
            .iter()
            .map(|p| {
                (
                    self.inner.format_element(&p.x),
                    self.inner.format_element(&p.y),
                )
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Ring(p={}, dim={}, nilpotency={})",
            self.inner.p(),
            self.inner.dim(),
            self.inner.nilpotency_index()
        )
    }
}

/// A finitely generated module: a GF(p)-space with compatible action
/// matrices.
#[pyclass(name = "Module")]
#[derive(Clone)]
struct Module {
    inner: FinModule,
}

#[pymethods]
impl Module {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn min_generators(&self) -> usize {
        self.inner.min_generators()
    }

    /// "0" or "infinite": projective dimension over the zero-depth ring.
    fn pd(&self) -> String {
        match pd(&self.inner) {
            Pd::Zero => "0".into(),
            Pd::Infinite => "infinite".into(),
        }
    }

    fn radical_filtration(&self) -> Vec<usize> {
        self.inner.radical_filtration()
    }

    fn dual(&self) -> Module {
        Module { inner: self.inner.dual() }
    }

    fn direct_sum(&self, other: &Module) -> Module {
        Module {
            inner: FinModule::direct_sum(&[self.inner.clone(), other.inner.clone()]).0,
        }
    }

    fn hom_dim(&self, other: &Module) -> PyResult<usize> {
        Ok(hom_module(&self.inner, &other.inner).map_err(err)?.dim())
    }

    fn hom(&self, other: &Module) -> PyResult<Module> {
        Ok(Module {
            inner: hom_module(&self.inner, &other.inner).map_err(err)?.module().clone(),
        })
    }

    fn tensor(&self, other: &Module) -> PyResult<Module> {
        Ok(Module {
            inner: tensor_module(&self.inner, &other.inner).map_err(err)?.module().clone(),
        })
    }

    /// Isomorphism verdict: "iso", "no", or "unknown" (sampling failed).
    #[pyo3(signature = (other, seed = 0))]
    fn is_iso_to(&self, other: &Module, seed: u64) -> String {
        match module_iso(&self.inner, &other.inner, seed) {
            IsoVerdict::Iso(_) => "iso".into(),
            IsoVerdict::No => "no".into(),
            IsoVerdict::Unknown => "unknown".into(),
        }
    }

    /// Betti numbers of the minimal free resolution, with the detected
    /// syzygy periodicity if any.
    fn betti(&self, py: Python<'_>, length: usize) -> PyResult<PyObject> {
        let res = minimal_free_resolution(&self.inner, length);
        let dict = PyDict::new_bound(py);
        dict.set_item("betti", res.betti.clone())?;
        dict.set_item("finished", res.finished)?;
        dict.set_item("periodicity", res.periodicity)?;
        Ok(dict.into_py(py))
    }

    /// dim Ext^i(self, other) for i = 0..=upto.
    fn ext_dims(&self, other: &Module, upto: usize) -> PyResult<Vec<usize>> {
        ext_dims(&self.inner, &other.inner, upto).map_err(err)
    }

    fn concentrated(&self, degree: i64) -> Complex {
        Complex { inner: ChainComplex::concentrated(self.inner.clone(), degree) }
    }

    fn __repr__(&self) -> String {
        format!("Module(dim={})", self.inner.dim())
    }
}

/// A bounded chain complex with validated differentials.
#[pyclass(name = "Complex")]
#[derive(Clone)]
struct Complex {
    inner: ChainComplex,
}

#[pymethods]
impl Complex {
    #[getter]
    fn lo(&self) -> i64 {
        self.inner.lo()
    }

    #[getter]
    fn hi(&self) -> i64 {
        self.inner.hi()
    }

    fn dims(&self) -> Vec<(i64, usize)> {
        self.inner.dims()
    }

    fn homology_dims(&self) -> Vec<(i64, usize)> {
        self.inner.homology_dims()
    }

    fn is_exact(&self) -> bool {
        self.inner.is_exact()
    }

    fn is_minimal(&self) -> bool {
        self.inner.is_minimal()
    }

    fn shift(&self, s: i64) -> Complex {
        Complex { inner: self.inner.shift(s) }
    }

    fn direct_sum(&self, other: &Complex) -> Complex {
        Complex { inner: ChainComplex::direct_sum(&self.inner, &other.inner) }
    }

    /// Strips split summands; pass a semidualizing module to route through
    /// Hom(C, −) for complexes of C-projectives.
    #[pyo3(signature = (semidual = None, bound = 10))]
    fn minimize(
        &self,
        py: Python<'_>,
        semidual: Option<&Module>,
        bound: usize,
    ) -> PyResult<PyObject> {
        let min = match semidual {
            Some(c) => {
                let sd = verify(c, bound)?;
                minimize_via(sd.module(), &self.inner).map_err(err)?
            }
            None => minimize(&self.inner).map_err(err)?,
        };
        let dict = PyDict::new_bound(py);
        dict.set_item("complex", Complex { inner: min.complex.trimmed() }.into_py(py))?;
        dict.set_item("certificate", to_py(py, &min.certificate)?)?;
        Ok(dict.into_py(py))
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&complex_to_file(&self.inner, None)).unwrap()
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(degrees {}..={}, dims {:?})",
            self.inner.lo(),
            self.inner.hi(),
            self.inner.dims()
        )
    }
}

/// Semidualizing verification report as a dict; `verdict` is either
/// "VerifiedToBound" or a refutation witness.
#[pyfunction]
#[pyo3(name = "verify_semidualizing", signature = (c, bound = 10))]
fn verify_semidualizing_py(py: Python<'_>, c: &Module, bound: usize) -> PyResult<PyObject> {
    let report = verify_semidualizing(&c.inner, bound).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(name = "pc_pd", signature = (m, c, bound = 10))]
fn pc_pd_py(m: &Module, c: &Module, bound: usize) -> PyResult<String> {
    let sd = verify(c, bound)?;
    match pc_pd(&m.inner, &sd).map_err(err)? {
        Pd::Zero => Ok("0".into()),
        Pd::Infinite => Ok("infinite".into()),
    }
}

#[pyfunction]
#[pyo3(signature = (m, c, length = 8, bound = 10))]
fn resolve(py: Python<'_>, m: &Module, c: &Module, length: usize, bound: usize) -> PyResult<PyObject> {
    let sd = verify(c, bound)?;
    let rep = minimal_pc_resolution(&m.inner, &sd, length).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("summary", to_py(py, &rep.summary)?)?;
    dict.set_item("complex", Complex { inner: rep.complex }.into_py(py))?;
    dict.set_item("augmented", Complex { inner: rep.augmented }.into_py(py))?;
    Ok(dict.into_py(py))
}

#[pyfunction]
#[pyo3(signature = (m, c, length = 8, bound = 10))]
fn coresolve(py: Python<'_>, m: &Module, c: &Module, length: usize, bound: usize) -> PyResult<PyObject> {
    let sd = verify(c, bound)?;
    let rep = minimal_pc_coresolution(&m.inner, &sd, length).map_err(err)?;
    let criterion = coresolution_criterion(&m.inner, &sd, bound).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("summary", to_py(py, &rep.summary)?)?;
    dict.set_item("criterion", to_py(py, &criterion)?)?;
    dict.set_item("complex", Complex { inner: rep.complex }.into_py(py))?;
    Ok(dict.into_py(py))
}

#[pyfunction]
#[pyo3(name = "width", signature = (x, c, bound = 10, seed = 0))]
fn width_py(py: Python<'_>, x: &Complex, c: &Module, bound: usize, seed: u64) -> PyResult<PyObject> {
    let sd = verify(c, bound)?;
    let certified = CPerfectComplex::certify(x.inner.clone(), &sd, seed).map_err(err)?;
    let rep = width(&certified, &sd).map_err(err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("summary", to_py(py, &rep.summary)?)?;
    dict.set_item("minimal", Complex { inner: rep.minimal.complex }.into_py(py))?;
    Ok(dict.into_py(py))
}

#[pyfunction]
#[pyo3(signature = (ring, c, x, y, n))]
fn periodic_complex(ring: &Ring, c: &Module, x: &str, y: &str, n: usize) -> PyResult<Complex> {
    let xe = ring.inner.parse_element(x).map_err(err)?;
    let ye = ring.inner.parse_element(y).map_err(err)?;
    let pair = ExactZeroDivisorPair::check(&ring.inner, &c.inner, xe, ye).map_err(err)?;
    Ok(Complex { inner: build_periodic_complex(&c.inner, &pair, n).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (ring, c, x, y, n, bound = 10))]
fn ex3(
    py: Python<'_>,
    ring: &Ring,
    c: &Module,
    x: &str,
    y: &str,
    n: usize,
    bound: usize,
) -> PyResult<PyObject> {
    let sd = verify(c, bound)?;
    let xe = ring.inner.parse_element(x).map_err(err)?;
    let ye = ring.inner.parse_element(y).map_err(err)?;
    let pair = ExactZeroDivisorPair::check(&ring.inner, sd.module(), xe, ye).map_err(err)?;
    let report = ex3_verify(&sd, &pair, n).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
#[pyo3(name = "hereditary_probe", signature = (c, rank = 1, bound = 10, seed = 0))]
fn hereditary_probe_py(py: Python<'_>, c: &Module, rank: usize, bound: usize, seed: u64) -> PyResult<PyObject> {
    let sd = verify(c, bound)?;
    let rep = hereditary_probe(&sd, rank, seed).map_err(err)?;
    to_py(py, &rep)
}

#[pymodule]
fn cproj_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Module>()?;
    m.add_class::<Complex>()?;
    m.add_function(wrap_pyfunction!(verify_semidualizing_py, m)?)?;
    m.add_function(wrap_pyfunction!(pc_pd_py, m)?)?;
    m.add_function(wrap_pyfunction!(resolve, m)?)?;
    m.add_function(wrap_pyfunction!(coresolve, m)?)?;
    m.add_function(wrap_pyfunction!(width_py, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_complex, m)?)?;
    m.add_function(wrap_pyfunction!(ex3, m)?)?;
    m.add_function(wrap_pyfunction!(hereditary_probe_py, m)?)?;
    Ok(())
}

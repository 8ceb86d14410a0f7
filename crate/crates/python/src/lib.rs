//! Python bindings. Reports and structured results cross the boundary as JSON strings.

use std::sync::Arc;

use bhht::abgrp::{AbSubgroup, FinAbGroup};
use bhht::pc::{is_pc, PermutationGroup};
use bhht::poly::{periodic_loop, InvertiblePolynomial};
use bhht::theorems::{self, Caps, VerificationReport};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: bhht::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn report_json(r: bhht::Result<VerificationReport>) -> PyResult<String> {
    let r = r.map_err(err)?;
    serde_json::to_string(&r).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn caps(max_group_order: Option<usize>, max_subgroups: Option<usize>) -> Caps {
    let d = Caps::default();
    Caps {
        max_group_order: max_group_order.unwrap_or(d.max_group_order),
        max_subgroups: max_subgroups.unwrap_or(d.max_subgroups),
    }
}

fn subgroup(g: &Arc<FinAbGroup>, gens: Option<&str>) -> PyResult<AbSubgroup> {
    match gens {
        None => Ok(g.full_subgroup()),
        Some(text) => {
            let elems = text
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| g.parse_element(s))
                .collect::<bhht::Result<Vec<_>>>()
                .map_err(err)?;
            Ok(g.subgroup_generated(&elems))
        }
    }
}

/// An invertible polynomial, e.g. `Polynomial("x1^2*x2 + x2^3")`.
#[pyclass(name = "Polynomial", frozen)]
struct PyPolynomial {
    inner: InvertiblePolynomial,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPolynomial { inner: InvertiblePolynomial::parse(text).map_err(err)? })
    }

    #[staticmethod]
    fn periodic_loop(period: Vec<u32>, k: usize) -> PyResult<Self> {
        Ok(PyPolynomial { inner: periodic_loop(&period, k).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.inner.matrix().clone()
    }

    fn det(&self) -> i64 {
        self.inner.det()
    }

    fn transpose(&self) -> Self {
        PyPolynomial { inner: self.inner.transpose() }
    }

    /// Weights as strings such as `"1/3"`.
    fn weights(&self) -> Vec<String> {
        self.inner.weights().iter().map(ToString::to_string).collect()
    }

    fn atoms_json(&self) -> PyResult<String> {
        let atoms = self.inner.classify_atoms().map_err(err)?;
        serde_json::to_string(&atoms).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn symmetry_group_order(&self) -> usize {
        FinAbGroup::symmetry_group(&self.inner).order()
    }

    fn symmetry_group_invariants(&self) -> Vec<i64> {
        FinAbGroup::symmetry_group(&self.inner).invariants().to_vec()
    }

    /// Generators of every subgroup of `G_f`, as rational coordinate strings.
    #[pyo3(signature = (max_subgroups=None))]
    fn subgroups(&self, max_subgroups: Option<usize>) -> PyResult<Vec<Vec<String>>> {
        let g = FinAbGroup::symmetry_group(&self.inner);
        let subs = g.enumerate_subgroups(caps(None, max_subgroups).max_subgroups).map_err(err)?;
        Ok(subs.iter().map(AbSubgroup::generators_display).collect())
    }

    /// Generators of the dual subgroup `G̃ ≤ G_{f̃}`.
    #[pyo3(signature = (gens=None))]
    fn dual_subgroup(&self, gens: Option<&str>) -> PyResult<Vec<String>> {
        let g = FinAbGroup::symmetry_group(&self.inner);
        Ok(subgroup(&g, gens)?.dual().generators_display())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.inner.to_string())
    }
}

fn perm_group(n: usize, gens: &str) -> PyResult<PermutationGroup> {
    PermutationGroup::parse(n, gens).map_err(err)
}

/// Parity condition check. Returns `(holds, witness_generators)`.
#[pyfunction]
fn check_pc(n: usize, gens: &str) -> PyResult<(bool, Option<Vec<String>>)> {
    let v = is_pc(&perm_group(n, gens)?).map_err(err)?;
    Ok((v.holds, v.witness))
}

#[pyfunction]
#[pyo3(signature = (poly, gens=None, max_group_order=None, max_subgroups=None))]
fn verify_abelian(poly: &PyPolynomial, gens: Option<&str>, max_group_order: Option<usize>, max_subgroups: Option<usize>) -> PyResult<String> {
    let g = FinAbGroup::symmetry_group(&poly.inner);
    let c = caps(max_group_order, max_subgroups);
    match gens {
        None => report_json(theorems::verify_abelian_theorem_all(&g, c)),
        Some(_) => report_json(theorems::verify_abelian_theorem(&g, &subgroup(&g, gens)?, c)),
    }
}

#[pyfunction]
#[pyo3(signature = (poly, s, g=None, t=None, max_group_order=None, max_subgroups=None))]
fn verify_main(
    poly: &PyPolynomial,
    s: &str,
    g: Option<&str>,
    t: Option<&str>,
    max_group_order: Option<usize>,
    max_subgroups: Option<usize>,
) -> PyResult<String> {
    let f = &poly.inner;
    let s = perm_group(f.n(), s)?;
    let c = caps(max_group_order, max_subgroups);
    if g.is_none() && t.is_none() {
        return report_json(theorems::verify_main_theorem_all(f, &s, c));
    }
    let big = FinAbGroup::symmetry_group(f);
    let g = subgroup(&big, g)?;
    let t = match t {
        Some(t) => perm_group(f.n(), t)?,
        None => s.clone(),
    };
    report_json(theorems::verify_main_theorem(f, &s, &g, &t, c))
}

#[pyfunction]
#[pyo3(signature = (p, k, max_group_order=None, max_subgroups=None))]
fn verify_loop(p: Vec<u32>, k: usize, max_group_order: Option<usize>, max_subgroups: Option<usize>) -> PyResult<String> {
    report_json(theorems::verify_loop_theorem(&p, k, caps(max_group_order, max_subgroups)))
}

#[pyfunction]
#[pyo3(signature = (p, k, flip_sign=false, max_group_order=None, max_subgroups=None))]
fn verify_saito_loop(p: Vec<u32>, k: usize, flip_sign: bool, max_group_order: Option<usize>, max_subgroups: Option<usize>) -> PyResult<String> {
    report_json(theorems::verify_saito_duality_loop(&p, k, flip_sign, caps(max_group_order, max_subgroups)))
}

#[pyfunction]
#[pyo3(signature = (poly, s, max_group_order=None, max_subgroups=None))]
fn explore_conjecture(poly: &PyPolynomial, s: &str, max_group_order: Option<usize>, max_subgroups: Option<usize>) -> PyResult<String> {
    let s = perm_group(poly.inner.n(), s)?;
    report_json(theorems::explore_reduction_conjecture_all(&poly.inner, &s, caps(max_group_order, max_subgroups)))
}

/// Runs the command-line interface in-process. Returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut errs) = (Vec::new(), Vec::new());
    let argv = std::iter::once("bhht".to_string()).chain(args);
    let code = bhht::cli::run(argv, &mut out, &mut errs);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errs).into_owned())
}

#[pymodule]
fn bhht_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(check_pc, m)?)?;
    m.add_function(wrap_pyfunction!(verify_abelian, m)?)?;
    m.add_function(wrap_pyfunction!(verify_main, m)?)?;
    m.add_function(wrap_pyfunction!(verify_loop, m)?)?;
    m.add_function(wrap_pyfunction!(verify_saito_loop, m)?)?;
    m.add_function(wrap_pyfunction!(explore_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}

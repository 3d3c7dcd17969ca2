//! Python bindings for `lpdeform`.
//!
//! Posets are built from DSL or JSON text; polynomials cross the boundary
//! as their canonical strings.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use lpdeform::cotangent::t1_generators;
use lpdeform::deformation::DeformationContext;
use lpdeform::grading::default_order;
use lpdeform::letterplace::{codimension, letterplace_generators, u_variables, x_variables};
use lpdeform::poly::{render_monomial, render_polynomial, render_variable, GroebnerBudget, Monomial, MonomialOrder, Polynomial};
use lpdeform::verifier::{Suite, Verifier};
use lpdeform::Error;

create_exception!(lpdeform, LpError, PyException, "Invalid input or unsupported operation.");
create_exception!(lpdeform, ResourceLimitError, LpError, "A Groebner basis computation exceeded its budget.");

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit(_) | Error::SizeLimit { .. } => ResourceLimitError::new_err(e.to_string()),
        _ => LpError::new_err(e.to_string()),
    }
}

/// A finite poset.
#[pyclass(module = "lpdeform", name = "Poset", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPoset {
    inner: lpdeform::Poset,
}

#[pymethods]
impl PyPoset {
    /// Parses `a < b` lines (with `elem x` for isolated elements) or the
    /// JSON export.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        lpdeform::Poset::parse_any(text).map(|inner| PyPoset { inner }).map_err(py_err)
    }

    #[staticmethod]
    fn chain(names: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        lpdeform::Poset::chain(&refs).map(|inner| PyPoset { inner }).map_err(py_err)
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset({:?})", self.inner.to_dsl())
    }

    fn leq(&self, p: &str, q: &str) -> PyResult<bool> {
        Ok(self.inner.leq(self.inner.id(p).map_err(py_err)?, self.inner.id(q).map_err(py_err)?))
    }

    fn to_dsl(&self) -> String {
        self.inner.to_dsl()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("poset JSON serializes")
    }

    fn is_tree(&self) -> bool {
        self.inner.as_rooted_tree().is_ok()
    }

    fn as_tree(&self) -> PyResult<PyRootedTree> {
        self.inner.as_rooted_tree().map(|inner| PyRootedTree { inner }).map_err(py_err)
    }

    fn codimension(&self) -> usize {
        codimension(&self.inner)
    }

    /// Number of order ideals, the multiplicity of `S/L(2,P)`.
    fn multiplicity(&self) -> PyResult<u64> {
        self.inner.count_order_ideals().map_err(py_err)
    }

    fn letterplace_generators(&self) -> Vec<String> {
        let order = MonomialOrder::grevlex(x_variables(&self.inner));
        letterplace_generators(&self.inner).iter().map(|g| render_polynomial(&g.polynomial(), &self.inner, Some(&order))).collect()
    }

    /// First-order deformation maps as `(source, image)` monomial strings.
    fn t1_generators(&self) -> Vec<(String, String)> {
        let order = MonomialOrder::grevlex(x_variables(&self.inner));
        let r = |m: &Monomial| render_monomial(m, &self.inner, Some(&order));
        t1_generators(&self.inner).iter().map(|g| (r(&g.source_monomial()), r(&g.image))).collect()
    }
}

/// A poset whose Hasse diagram is a rooted tree.
#[pyclass(module = "lpdeform", name = "RootedTree", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRootedTree {
    inner: lpdeform::RootedTree,
}

impl PyRootedTree {
    fn elem(&self, name: &str) -> PyResult<lpdeform::ElemId> {
        self.inner.id(name).map_err(py_err)
    }

    fn render(&self, f: &Polynomial) -> String {
        render_polynomial(f, &self.inner, Some(&default_order(&self.inner)))
    }

    fn verifier(&self, max_spairs: Option<usize>) -> Verifier {
        let budget = GroebnerBudget { max_spairs: max_spairs.unwrap_or(GroebnerBudget::default().max_spairs), ..GroebnerBudget::default() };
        Verifier::new(self.inner.clone()).with_budget(budget)
    }
}

#[pymethods]
impl PyRootedTree {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        PyPoset::new(text)?.as_tree()
    }

    #[getter]
    fn root(&self) -> String {
        self.inner.name(self.inner.root()).to_string()
    }

    #[getter]
    fn poset(&self) -> PyPoset {
        PyPoset { inner: self.inner.poset().clone() }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("RootedTree({:?})", self.inner.poset().to_dsl())
    }

    fn parent(&self, name: &str) -> PyResult<Option<String>> {
        Ok(self.inner.parent(self.elem(name)?).map(|p| self.inner.name(p).to_string()))
    }

    fn children(&self, name: &str) -> PyResult<Vec<String>> {
        Ok(self.inner.children(self.elem(name)?).iter().map(|&c| self.inner.name(c).to_string()).collect())
    }

    fn u_variables(&self) -> Vec<String> {
        u_variables(&self.inner).into_iter().map(|u| render_variable(u, &self.inner)).collect()
    }

    /// Generators of the deformed ideal, one per comparable pair `p <= q`.
    fn j_generators(&self) -> Vec<String> {
        DeformationContext::new(self.inner.clone()).j_ideal_generators().iter().map(|g| self.render(&g.polynomial)).collect()
    }

    /// `T(b)`.
    fn t_form(&self, b: &str) -> PyResult<String> {
        let ctx = DeformationContext::new(self.inner.clone());
        Ok(self.render(&ctx.t_full(self.elem(b)?)))
    }

    /// The signed maximal minor `D(a)^x`.
    fn minor(&self, a: &str, x: &str) -> PyResult<String> {
        let ctx = DeformationContext::new(self.inner.clone());
        ctx.minor_d(self.elem(a)?, self.elem(x)?).map(|f| self.render(&f)).map_err(py_err)
    }

    /// Runs a verification suite; returns one dict per check.
    #[pyo3(signature = (suite = "basic", max_degree = 4, max_spairs = None))]
    fn check(&self, py: Python<'_>, suite: &str, max_degree: u64, max_spairs: Option<usize>) -> PyResult<Vec<Py<PyAny>>> {
        let suite = match suite {
            "basic" => Suite::Basic,
            "full" => Suite::Full,
            other => return Err(LpError::new_err(format!("unknown suite `{other}`"))),
        };
        let v = self.verifier(max_spairs);
        let reports = py.detach(|| v.run_suite(suite, max_degree)).map_err(py_err)?;
        reports
            .iter()
            .map(|r| {
                let d = pyo3::types::PyDict::new(py);
                d.set_item("name", &r.name)?;
                d.set_item("params", &r.params)?;
                d.set_item("verdict", r.verdict.as_str())?;
                d.set_item("witness", r.witness.as_ref().map(|w| self.render(w)))?;
                d.set_item("detail", &r.detail)?;
                Ok(d.into_any().unbind())
            })
            .collect()
    }

    /// Truncated Hilbert functions `(L, J)` up to `max_degree`.
    #[pyo3(signature = (max_degree, max_spairs = None))]
    fn hilbert(&self, py: Python<'_>, max_degree: u64, max_spairs: Option<usize>) -> PyResult<(Vec<u64>, Vec<u64>)> {
        let v = self.verifier(max_spairs);
        py.detach(|| v.hilbert_vectors(max_degree)).map_err(py_err)
    }
}

/// All rooted trees with `n` nodes up to isomorphism.
#[pyfunction]
fn rooted_trees(n: usize) -> Vec<PyRootedTree> {
    lpdeform::rooted_trees(n).into_iter().map(|inner| PyRootedTree { inner }).collect()
}

#[pymodule]
#[pyo3(name = "lpdeform")]
fn lpdeform_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyRootedTree>()?;
    m.add_function(wrap_pyfunction!(rooted_trees, m)?)?;
    m.add("LpError", m.py().get_type::<LpError>())?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    Ok(())
}

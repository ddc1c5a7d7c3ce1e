use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use monoext::centre::{class_data, quotient_report, CentreError, QuotientOptions};
use monoext::hochschild::{build_chi, verify_cocycle, CochainChi, HochschildError};
use monoext::report::{centre_report, cocycle_report, rn_report};
use monoext::{AlgebraFile, Limits, MonomialAlgebra, ResolutionBasis};

create_exception!(pymonoext, NotStabilizedError, PyRuntimeError);
create_exception!(pymonoext, ResourceLimitError, PyRuntimeError);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn centre_error(e: CentreError) -> PyErr {
    match e {
        CentreError::Ext(_) | CentreError::Walk(_) => ResourceLimitError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn hochschild_error(e: HochschildError) -> PyErr {
    match e {
        HochschildError::NotStabilized(..) => NotStabilizedError::new_err(e.to_string()),
        HochschildError::Ext(_) => ResourceLimitError::new_err(e.to_string()),
        _ => value_error(e),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable report")
}

/// A finite dimensional monomial path algebra.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    inner: MonomialAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// Parses the line-oriented algebra format; `characteristic` must agree with a `char` line.
    #[new]
    #[pyo3(signature = (text, characteristic = None))]
    fn new(text: &str, characteristic: Option<u64>) -> PyResult<Self> {
        let mut file = AlgebraFile::parse(text).map_err(value_error)?;
        if let Some(c) = characteristic {
            match file.characteristic() {
                Some(f) if f != c => return Err(value_error(format!("characteristic {c} conflicts with `char {f}`"))),
                _ => file.set_characteristic(c),
            }
        }
        Ok(PyAlgebra { inner: file.to_algebra().map_err(value_error)? })
    }

    #[staticmethod]
    #[pyo3(signature = (path, characteristic = None))]
    fn from_file(path: &str, characteristic: Option<u64>) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(value_error)?;
        Self::new(&text, characteristic)
    }

    #[getter]
    fn radical_length(&self) -> usize {
        self.inner.radical_length()
    }

    #[getter]
    fn dimension(&self) -> u128 {
        self.inner.dimension()
    }

    #[getter]
    fn characteristic(&self) -> u64 {
        self.inner.characteristic()
    }

    #[getter]
    fn relations(&self) -> Vec<String> {
        self.inner.relations().iter().map(|r| self.inner.render(r)).collect()
    }

    /// Members of R^n as space separated arrow names.
    fn rn(&self, n: usize) -> PyResult<Vec<String>> {
        let mut basis = ResolutionBasis::new(&self.inner, Limits::default());
        let members = basis.members(n).map_err(|e| ResourceLimitError::new_err(e.to_string()))?;
        Ok(members.iter().map(|p| self.inner.render(p)).collect())
    }

    /// Product of two members of the R^n bases, `None` when it vanishes.
    fn multiply(&self, p: &str, q: &str) -> PyResult<Option<String>> {
        let quiver = self.inner.quiver();
        let p = quiver.parse_path(p).map_err(value_error)?;
        let q = quiver.parse_path(q).map_err(value_error)?;
        Ok(self.inner.multiply_basis(&p, &q).map(|pq| self.inner.render(&pq)))
    }

    /// JSON report of R^0 .. R^max_degree.
    fn rn_report(&self, max_degree: usize) -> PyResult<String> {
        let r = rn_report(&self.inner, max_degree, &Limits::default())
            .map_err(|e| ResourceLimitError::new_err(e.to_string()))?;
        Ok(to_json(&r))
    }

    /// JSON centre report up to `max_degree`.
    #[pyo3(signature = (max_degree, brute = false, check_bound = None))]
    fn centre_report(&self, py: Python<'_>, max_degree: usize, brute: bool, check_bound: Option<usize>) -> PyResult<String> {
        let alg = &self.inner;
        py.detach(|| {
            let limits = Limits::default();
            let opts = QuotientOptions { degree_bound: max_degree, validation_bound: max_degree, check_bound };
            let q = quotient_report(alg, opts, &limits).map_err(centre_error)?;
            let r = centre_report(alg, &q, brute, &limits).map_err(centre_error)?;
            Ok(to_json(&r))
        })
    }

    /// Builds the cochain of class `class` in `degree` and returns the JSON cocycle report.
    fn build_chi(&self, class: usize, degree: usize) -> PyResult<String> {
        let limits = Limits::default();
        let classes = class_data(&self.inner, &limits).map_err(centre_error)?;
        let c = classes.get(class).ok_or_else(|| value_error(format!("class {class} out of range")))?;
        let chi = build_chi(&self.inner, c, degree, &limits).map_err(hochschild_error)?;
        let r = cocycle_report(&self.inner, class, &chi, "built", &limits).map_err(hochschild_error)?;
        Ok(to_json(&r))
    }

    /// Checks a JSON cochain; returns `None` for a cocycle, else `(generator, value)`.
    fn verify_cochain(&self, cochain: &str) -> PyResult<Option<(String, String)>> {
        let chi = CochainChi::from_json(&self.inner, cochain).map_err(hochschild_error)?;
        let w = verify_cocycle(&self.inner, &chi, &Limits::default()).map_err(hochschild_error)?;
        Ok(w.map(|w| (w.generator, w.value)))
    }

    fn __repr__(&self) -> String {
        let q = self.inner.quiver();
        format!(
            "Algebra({} vertices, {} arrows, {} relations, char {})",
            q.num_vertices(),
            q.num_arrows(),
            self.inner.relations().len(),
            self.inner.characteristic()
        )
    }
}

#[pymodule]
fn pymonoext(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add("NotStabilizedError", m.py().get_type::<NotStabilizedError>())?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    Ok(())
}

//! Python bindings: families, solvers, extraction procedures, bounds and rendering.
//!
//! Structured results cross the boundary as JSON and arrive as plain dicts.

use num_bigint::BigUint;
use outerstring::bounds;
use outerstring::extract::{
    attempt_bracket_system, attempt_clique_system, bfs_supported, find_skeleton_supported, mcguinness, BoundParams,
    ExtractError, ExtractionReport, HypothesisMode, Outcome, StepFailure,
};
use outerstring::gen::{generate as gen_family, GenKind, GenSpec};
use outerstring::geom::io::{family_to_json, parse_curves};
use outerstring::geom::{validate_family, CurveFamily};
use outerstring::graph::{chromatic_number, clique_number, intersection_graph};
use outerstring::render::{render_svg, RenderOptions};
use outerstring::structures::BracketJson;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn big(py: Python<'_>, v: &BigUint) -> PyResult<Py<PyAny>> {
    Ok(py.import("builtins")?.getattr("int")?.call1((v.to_string(),))?.unbind())
}

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated grounded family, ordered by basepoint.
#[pyclass(name = "Family", frozen)]
struct PyFamily {
    inner: CurveFamily,
}

#[pymethods]
impl PyFamily {
    /// Parses and validates a family document; raises `ValueError` listing every violation.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let curves = parse_curves(text).map_err(value_error)?;
        let inner = validate_family(curves).map_err(|vs| {
            let lines: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            PyValueError::new_err(format!("invalid family: {}", lines.join("; ")))
        })?;
        Ok(PyFamily { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| value_error(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    /// Seeded random family; `kind` is `"segments"` or `"polylines"`.
    #[staticmethod]
    #[pyo3(signature = (n, seed, kind = "segments", bends = 3, grid = 100))]
    fn generate(n: usize, seed: u64, kind: &str, bends: usize, grid: i64) -> PyResult<Self> {
        let kind = match kind {
            "segments" => GenKind::Segments,
            "polylines" => GenKind::Polylines,
            other => return Err(value_error(format!("unknown kind {other:?}"))),
        };
        let mut spec = GenSpec::segments(n, seed);
        spec.kind = kind;
        spec.bends = if kind == GenKind::Segments { 2 } else { bends };
        spec.grid = grid;
        let inner = gen_family(&spec).map_err(value_error)?;
        Ok(PyFamily { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Family({} curves)", self.inner.len())
    }

    fn ids(&self) -> Vec<String> {
        self.inner.ids()
    }

    fn to_json(&self) -> String {
        family_to_json(&self.inner)
    }

    /// Pairs of intersecting curve ids, each pair in basepoint order.
    fn edges(&self) -> Vec<(String, String)> {
        let g = intersection_graph(&self.inner);
        let n = self.inner.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| g.adjacent(a, b))
            .map(|(a, b)| (g.id(a).to_string(), g.id(b).to_string()))
            .collect()
    }

    /// `{n, omega, chi, clique, coloring}` with a witness clique and optimal coloring.
    fn stats(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let g = intersection_graph(&self.inner);
        let (omega, clique) = clique_number(&g);
        let (chi, coloring) = chromatic_number(&g);
        let classes: Vec<Vec<String>> = coloring
            .classes()
            .into_iter()
            .map(|c| c.into_iter().map(|v| g.id(v).to_string()).collect())
            .collect();
        to_py(
            py,
            &json!({ "n": self.inner.len(), "omega": omega, "chi": chi, "clique": clique, "coloring": classes }),
        )
    }

    /// SVG text; `brackets` is a list of `{"P": [...], "S": [...]}` dicts.
    #[pyo3(signature = (highlight = Vec::new(), brackets = Vec::new()))]
    fn render(&self, py: Python<'_>, highlight: Vec<String>, brackets: Vec<Py<PyAny>>) -> PyResult<String> {
        let dumps = py.import("json")?.getattr("dumps")?;
        let brackets = brackets
            .iter()
            .map(|b| {
                let text: String = dumps.call1((b,))?.extract()?;
                serde_json::from_str::<BracketJson>(&text).map_err(value_error)
            })
            .collect::<PyResult<Vec<_>>>()?;
        let opts = RenderOptions { highlight, skeleton: None, brackets };
        Ok(render_svg(&self.inner, &opts))
    }
}

fn precondition_report(e: ExtractError) -> ExtractionReport {
    let (threshold, measured) = match e {
        ExtractError::PreconditionFailure { reason, measured } => (reason, measured),
        other => (other.to_string(), 0),
    };
    ExtractionReport {
        outcome: Outcome::StepFailure,
        steps: Vec::new(),
        failure: Some(StepFailure { step: "precondition".into(), threshold, measured }),
        structure: None,
    }
}

fn report(py: Python<'_>, r: &ExtractionReport) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::from_str(&r.to_json()).map_err(value_error)?)
}

/// Runs one extraction procedure and returns its report as a dict.
///
/// `procedure` is one of `mcguinness`, `bfs`, `bracket-system`, `clique-system`.
#[pyfunction]
#[pyo3(signature = (
    family, procedure, *, alpha = 0, beta = 0, k = 2, xi = 1, t = 2, n = 0,
    gamma = None, betas = None, skeleton_chain = None, gap = None, hypothesis = "search"
))]
#[allow(clippy::too_many_arguments)]
fn extract(
    py: Python<'_>,
    family: &PyFamily,
    procedure: &str,
    alpha: u64,
    beta: u64,
    k: u64,
    xi: u64,
    t: u64,
    n: u64,
    gamma: Option<u64>,
    betas: Option<Vec<u64>>,
    skeleton_chain: Option<Vec<u64>>,
    gap: Option<u64>,
    hypothesis: &str,
) -> PyResult<Py<PyAny>> {
    let hypothesis = match hypothesis {
        "search" => HypothesisMode::Search,
        "proof" => HypothesisMode::Proof,
        other => return Err(value_error(format!("unknown hypothesis mode {other:?}"))),
    };
    let params = BoundParams { k, xi, alpha, beta, n, t, gamma, betas, skeleton_chain, gap, hypothesis };
    params.validate().map_err(value_error)?;
    let f = &family.inner;
    let r = py.detach(|| match procedure {
        "mcguinness" => Ok(mcguinness(f, alpha, beta).map(|(_, r)| r).unwrap_or_else(precondition_report)),
        "bfs" => Ok(bfs_supported(f).map(|r| r.report).unwrap_or_else(precondition_report)),
        "bracket-system" => Ok(attempt_bracket_system(f, &params)),
        "clique-system" => Ok(attempt_clique_system(f, t, n, &params)),
        other => Err(format!("unknown procedure {other:?}")),
    });
    report(py, &r.map_err(value_error)?)
}

/// Skeleton-supported subfamily at threshold `alpha`, or `None`.
#[pyfunction]
fn skeleton(py: Python<'_>, family: &PyFamily, alpha: u64) -> PyResult<Option<Py<PyAny>>> {
    match find_skeleton_supported(&family.inner, alpha) {
        Some((sk, p)) => Ok(Some(to_py(
            py,
            &json!({ "u": sk.u, "v": sk.v, "supports": sk.supports, "P": p }),
        )?)),
        None => Ok(None),
    }
}

/// Growth function `f(α; k, ξ)` as an exact int.
#[pyfunction]
#[pyo3(signature = (alpha, k, xi = 1))]
fn f_bound(py: Python<'_>, alpha: u64, k: u64, xi: u64) -> PyResult<Py<PyAny>> {
    big(py, &bounds::f_bound(&BigUint::from(alpha), k, &BigUint::from(xi)))
}

/// Explicit chromatic bound for clique number at most `k`, as an exact int.
#[pyfunction]
fn chi_bound(py: Python<'_>, k: u64) -> PyResult<Py<PyAny>> {
    if k == 0 {
        return Err(value_error("k must be at least 1"));
    }
    big(py, &bounds::explicit_chi_bound(k))
}

#[pymodule(name = "outerstring")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFamily>()?;
    m.add_function(wrap_pyfunction!(extract, m)?)?;
    m.add_function(wrap_pyfunction!(skeleton, m)?)?;
    m.add_function(wrap_pyfunction!(f_bound, m)?)?;
    m.add_function(wrap_pyfunction!(chi_bound, m)?)?;
    Ok(())
}

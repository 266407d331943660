//! Python bindings for the restricted Stirling/Lah toolkit.
//!
//! Exposes restriction sets, exact power series, number triangles and their
//! inverses, decorated-forest counting, the involution, and Whitney numbers.
//! Big values cross the boundary as Python ints (parsed from exact decimal
//! strings); rationals as "p/q" strings.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use stirlah::forest::{self, ClassFilter, EnumCaps, OrderingKind};
use stirlah::involution;
use stirlah::numbers;
use stirlah::poset;
use stirlah::series::{self, SequenceKind};
use stirlah::verify;
use stirlah::{PowerSeries, RestrictedNumberSpec, RestrictionSet as CoreSet};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(kind: &str) -> PyResult<SequenceKind> {
    match kind {
        "set" => Ok(SequenceKind::Set),
        "cycle" => Ok(SequenceKind::Cycle),
        "list" => Ok(SequenceKind::List),
        _ => Err(PyValueError::new_err(
            "kind must be one of: set, cycle, list",
        )),
    }
}

fn parse_order(order: &str) -> PyResult<OrderingKind> {
    match order {
        "increasing" => Ok(OrderingKind::Increasing),
        "minfirst" => Ok(OrderingKind::MinFirst),
        "linear" => Ok(OrderingKind::Linear),
        _ => Err(PyValueError::new_err(
            "order must be one of: increasing, minfirst, linear",
        )),
    }
}

fn parse_filter(filter: &str) -> PyResult<ClassFilter> {
    match filter {
        "even" => Ok(ClassFilter::Even),
        "odd" => Ok(ClassFilter::Odd),
        "good" => Ok(ClassFilter::Good),
        "all" => Ok(ClassFilter::All),
        _ => Err(PyValueError::new_err(
            "filter must be one of: even, odd, good, all",
        )),
    }
}

/// A subset of the positive integers stored as maximal intervals.
#[pyclass(name = "RestrictionSet", skip_from_py_object)]
#[derive(Clone)]
struct PyRestrictionSet {
    inner: CoreSet,
}

#[pymethods]
impl PyRestrictionSet {
    /// Parse from the text grammar, e.g. "1,2,4-6" or "1-".
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyRestrictionSet {
            inner: text.parse().map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("RestrictionSet(\"{}\")", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn contains(&self, n: u64) -> bool {
        self.inner.contains(n)
    }

    fn has_no_exposed_odds(&self) -> bool {
        self.inner.has_no_exposed_odds()
    }

    /// The endpoint sets (a(R), b(R)) as two sorted lists.
    fn endpoints(&self) -> (Vec<u64>, Vec<u64>) {
        let e = self.inner.endpoints();
        (
            e.a_set.into_iter().collect(),
            e.b_set.into_iter().collect(),
        )
    }

    /// Membership in the stretched set R(d).
    fn stretched_contains(&self, d: u64, m: u64) -> bool {
        self.inner.stretch(d).contains(m)
    }

    /// The n with s_d(n) = m and n ∈ R, if any.
    fn stretched_preimage(&self, d: u64, m: u64) -> Option<u64> {
        self.inner.stretch(d).preimage_in_set(m)
    }

    fn members_up_to(&self, limit: u64) -> Vec<u64> {
        self.inner.members_up_to(limit)
    }
}

/// A truncated power series with exact rational coefficients (strings).
#[pyclass(name = "Series", skip_from_py_object)]
#[derive(Clone)]
struct PySeries {
    inner: PowerSeries,
}

#[pymethods]
impl PySeries {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// The coefficient of x^n as a "p/q" string.
    fn coeff(&self, n: usize) -> String {
        self.inner.coeff(n).to_string()
    }

    /// The EGF coefficient n!·c_n as a "p/q" string.
    fn egf_coeff(&self, n: usize) -> String {
        self.inner.egf_coeff(n).to_string()
    }

    fn coeffs(&self) -> Vec<String> {
        (0..=self.inner.order()).map(|n| self.coeff(n)).collect()
    }

    fn revert(&self) -> PyResult<PySeries> {
        Ok(PySeries {
            inner: self.inner.revert().map_err(err)?,
        })
    }

    fn multiply(&self, other: &PySeries) -> PyResult<PySeries> {
        Ok(PySeries {
            inner: self.inner.multiply(&other.inner).map_err(err)?,
        })
    }

    fn compose(&self, other: &PySeries) -> PyResult<PySeries> {
        Ok(PySeries {
            inner: self.inner.compose(&other.inner).map_err(err)?,
        })
    }

    fn x_over_f(&self) -> PyResult<PySeries> {
        Ok(PySeries {
            inner: self.inner.x_over_f().map_err(err)?,
        })
    }

    fn is_alternating(&self, d: u64) -> PyResult<bool> {
        self.inner.is_alternating(d).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Series(order={})", self.inner.order())
    }
}

/// The generating function attached to a restriction set.
#[pyfunction]
fn series_from_restriction(
    set: &PyRestrictionSet,
    kind: &str,
    d: u64,
    order: usize,
) -> PyResult<PySeries> {
    Ok(PySeries {
        inner: series::series_from_restriction(&set.inner, parse_kind(kind)?, d, order)
            .map_err(err)?,
    })
}

/// H_{d,1}(x) truncated at the given order.
#[pyfunction]
fn hyperbolic_first_kind(d: u64, order: usize) -> PySeries {
    PySeries {
        inner: series::hyperbolic_first_kind(d, order),
    }
}

/// The triangle of restricted numbers as a list of rows of Python ints.
#[pyfunction]
fn triangle(set: &PyRestrictionSet, kind: &str, d: u64, size: u64) -> PyResult<Vec<Vec<BigInt>>> {
    let spec = RestrictedNumberSpec::new(set.inner.clone(), parse_kind(kind)?, d);
    let m = numbers::build_matrix(&spec, size).map_err(err)?;
    Ok(m.rows().to_vec())
}

/// The inverse triangle (both computation routes, cross-checked).
#[pyfunction]
fn inverse_triangle(
    set: &PyRestrictionSet,
    kind: &str,
    d: u64,
    size: u64,
) -> PyResult<Vec<Vec<BigInt>>> {
    let spec = RestrictedNumberSpec::new(set.inner.clone(), parse_kind(kind)?, d);
    let direct = numbers::invert_triangular(&numbers::build_matrix(&spec, size).map_err(err)?)
        .map_err(err)?;
    let via_series = numbers::inverse_matrix_via_series(&spec, size).map_err(err)?;
    if direct != via_series {
        return Err(PyValueError::new_err("inverse routes disagree"));
    }
    Ok(direct.rows().to_vec())
}

/// One restricted number by the brute-force partition oracle.
#[pyfunction]
fn oracle(n: u64, k: u64, set: &PyRestrictionSet, kind: &str, d: u64) -> PyResult<BigInt> {
    let spec = RestrictedNumberSpec::new(set.inner.clone(), parse_kind(kind)?, d);
    numbers::restricted_number_oracle(n, k, &spec).map_err(err)
}

/// Cardinality of a decorated forest class (filter: even/odd/good/all).
#[pyfunction]
#[pyo3(signature = (n, k, order, set, d, filter, cap=None))]
fn count_forests(
    n: u64,
    k: u64,
    order: &str,
    set: &PyRestrictionSet,
    d: u64,
    filter: &str,
    cap: Option<u64>,
) -> PyResult<BigInt> {
    let caps = cap.map_or_else(EnumCaps::default, EnumCaps::uniform);
    forest::count_class(
        n,
        k,
        parse_order(order)?,
        &set.inner,
        d,
        parse_filter(filter)?,
        caps,
    )
    .map_err(err)
}

/// Exhaustively verify the involution on a decorated class; returns a dict.
#[pyfunction]
#[pyo3(signature = (n, set, d, order, cap=None))]
fn verify_involution<'py>(
    py: Python<'py>,
    n: u64,
    set: &PyRestrictionSet,
    d: u64,
    order: &str,
    cap: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let caps = cap.map_or_else(EnumCaps::default, EnumCaps::uniform);
    let report =
        involution::verify_lemma4(n, &set.inner, d, parse_order(order)?, caps).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("trees_checked", report.trees_checked)?;
    dict.set_item("fixed_points", report.fixed_points)?;
    dict.set_item("violations", report.violations.to_vec())?;
    dict.set_item("all_hold", report.all_hold())?;
    Ok(dict)
}

/// Whitney numbers (second kind, first kind) of the partition poset.
#[pyfunction]
fn whitney_numbers(n: u64, d: u64) -> PyResult<Vec<(BigInt, BigInt)>> {
    let p = poset::build_poset(n, d).map_err(err)?;
    Ok((0..=p.max_rank())
        .map(|k| (p.whitney_second(k), p.whitney_first(k)))
        .collect())
}

/// Run the full verification suite; returns (all_passed, [lines]).
#[pyfunction]
#[pyo3(signature = (seed=None, scan_order=None))]
fn verify_all(seed: Option<u64>, scan_order: Option<usize>) -> (bool, Vec<String>) {
    let mut opts = verify::VerifyOptions::default();
    if let Some(seed) = seed {
        opts.seed = seed;
    }
    if let Some(order) = scan_order {
        opts.scan_order = order;
    }
    let reports = verify::run_all(&opts);
    let all = reports.iter().all(|r| r.passed);
    (all, reports.iter().map(|r| r.line()).collect())
}

#[pymodule]
fn stirlah_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRestrictionSet>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(series_from_restriction, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_first_kind, m)?)?;
    m.add_function(wrap_pyfunction!(triangle, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(count_forests, m)?)?;
    m.add_function(wrap_pyfunction!(verify_involution, m)?)?;
    m.add_function(wrap_pyfunction!(whitney_numbers, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}

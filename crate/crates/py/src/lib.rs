//! Python bindings: `Seq` and `CentralCertificate` classes plus the main
//! operations. Rationals cross the boundary as `fractions.Fraction`; words
//! are bit strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sturmlex::lexmap::F;
use sturmlex::oracle::{brute_F, brute_phi, SweepConfig};
use sturmlex::{BinaryWord, DyadicMode, Error, EventuallyPeriodicSeq, PhiResult, PrefixDecision, Rational};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) | Error::SearchExhausted(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn word(text: &str) -> PyResult<BinaryWord> {
    text.parse().map_err(to_py)
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((x.to_string(),))
}

/// Accepts a `Fraction`, an `int`, or a string such as "2/5".
fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    sturmlex::parse_rational(&x.str()?.to_string()).map_err(to_py)
}

/// Accepts a `Seq` or its text form "pre(per)".
fn sequence(obj: &Bound<'_, PyAny>) -> PyResult<EventuallyPeriodicSeq> {
    if let Ok(s) = obj.cast::<Seq>() {
        return Ok(s.get().0.clone());
    }
    obj.extract::<String>()?.parse().map_err(to_py)
}

/// An eventually periodic binary sequence pre·(per)^∞ in canonical form.
#[pyclass(name = "Seq", module = "pysturmlex", frozen, eq, hash, ord, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Seq(EventuallyPeriodicSeq);

#[pymethods]
impl Seq {
    #[new]
    #[pyo3(signature = (text, period = None))]
    fn new(text: &str, period: Option<&str>) -> PyResult<Self> {
        match period {
            None => text.parse().map(Seq).map_err(to_py),
            Some(per) => EventuallyPeriodicSeq::new(word(text)?, word(per)?)
                .map(Seq)
                .map_err(to_py),
        }
    }

    /// Binary expansion of x in [0, 1]; `mode` is "lesser" or "greater".
    #[staticmethod]
    #[pyo3(signature = (x, mode = "lesser"))]
    fn expansion(x: &Bound<'_, PyAny>, mode: &str) -> PyResult<Self> {
        let mode = match mode {
            "lesser" => DyadicMode::Lesser,
            "greater" => DyadicMode::Greater,
            other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
        };
        sturmlex::expansion(&rational(x)?, mode).map(Seq).map_err(to_py)
    }

    #[getter]
    fn preperiod(&self) -> String {
        self.0.preperiod().to_string()
    }

    #[getter]
    fn period(&self) -> String {
        self.0.period().to_string()
    }

    fn digit(&self, n: usize) -> u8 {
        self.0.digit(n)
    }

    fn prefix(&self, n: usize) -> String {
        self.0.prefix(n).to_string()
    }

    fn shift(&self, k: usize) -> Self {
        Seq(self.0.shift(k))
    }

    fn value<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.value())
    }

    fn distinct_shifts(&self) -> Vec<Self> {
        sturmlex::distinct_shifts(&self.0).into_iter().map(Seq).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Seq('{}')", self.0)
    }
}

/// Certificate that a word is central: slope p/q, coprime periods,
/// standard factorization and directive word.
#[pyclass(name = "CentralCertificate", module = "pysturmlex", frozen)]
struct CentralCertificate(sturmlex::CentralCertificate);

#[pymethods]
impl CentralCertificate {
    #[getter]
    fn word(&self) -> String {
        self.0.word().to_string()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.0.q()
    }

    #[getter]
    fn periods(&self) -> (usize, usize) {
        self.0.periods()
    }

    #[getter]
    fn factorization(&self) -> Option<(String, String)> {
        self.0.factorization().map(|(a, b)| (a.to_string(), b.to_string()))
    }

    #[getter]
    fn directive(&self) -> String {
        self.0.directive().to_string()
    }

    fn slope<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.slope())
    }

    fn __repr__(&self) -> String {
        format!(
            "CentralCertificate(word='{}', p={}, q={})",
            self.0.word(),
            self.0.p(),
            self.0.q()
        )
    }
}

fn phi_dict<'py>(py: Python<'py>, res: PhiResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("phi", Seq(res.phi))?;
    d.set_item("case", res.case.label())?;
    d.set_item("central", res.central.map(CentralCertificate))?;
    d.set_item(
        "longest_central_prefix",
        res.longest_central_prefix.map(|v| v.to_string()),
    )?;
    let trace: Vec<(&str, String)> = res.trace.into_iter().map(|t| (t.rule, t.detail)).collect();
    d.set_item("trace", trace)?;
    Ok(d)
}

#[pyfunction]
fn pal(v: &str) -> PyResult<String> {
    Ok(sturmlex::pal(&word(v)?).to_string())
}

#[pyfunction]
fn palindromic_closure(v: &str) -> PyResult<String> {
    Ok(sturmlex::palindromic_closure(&word(v)?).to_string())
}

#[pyfunction]
fn is_balanced(v: &str) -> PyResult<bool> {
    Ok(sturmlex::is_balanced(&word(v)?))
}

#[pyfunction]
fn is_central(v: &str) -> PyResult<Option<CentralCertificate>> {
    Ok(sturmlex::is_central(&word(v)?).map(CentralCertificate))
}

#[pyfunction]
fn central_from_slope(p: u64, q: u64) -> PyResult<CentralCertificate> {
    sturmlex::central_from_slope(p, q)
        .map(CentralCertificate)
        .map_err(to_py)
}

#[pyfunction]
fn characteristic_pair(p: u64, q: u64) -> PyResult<(Seq, Seq)> {
    let (a, b) = sturmlex::characteristic_pair(p, q).map_err(to_py)?;
    Ok((Seq(a), Seq(b)))
}

#[pyfunction]
#[pyo3(signature = (p, q, rho, upper = false))]
fn mech_periodic(p: u64, q: u64, rho: &Bound<'_, PyAny>, upper: bool) -> PyResult<Seq> {
    sturmlex::mech_periodic(p, q, &rational(rho)?, upper)
        .map(Seq)
        .map_err(to_py)
}

#[pyfunction]
fn characteristic_sturmian_prefix(directive: &Bound<'_, PyAny>, n: usize) -> PyResult<String> {
    let delta = sturmlex::DirectiveSpec::new(sequence(directive)?).map_err(to_py)?;
    Ok(sturmlex::characteristic_sturmian_prefix(&delta, n)
        .map_err(to_py)?
        .to_string())
}

#[pyfunction]
fn classify(u: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(sturmlex::classify(&sequence(u)?).label().to_string())
}

/// φ(0u).
#[pyfunction]
fn phi_zero_u<'py>(py: Python<'py>, u: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    phi_dict(py, sturmlex::phi_zero_u(&sequence(u)?).map_err(to_py)?)
}

/// φ(a) for any eventually periodic a.
#[pyfunction]
fn phi<'py>(py: Python<'py>, a: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    phi_dict(py, sturmlex::phi(&sequence(a)?).map_err(to_py)?)
}

/// φ(0u) for every u beginning with `prefix`, or `None` when the prefix
/// does not decide it.
#[pyfunction]
fn phi_prefix<'py>(py: Python<'py>, prefix: &str) -> PyResult<Option<Bound<'py, PyDict>>> {
    match sturmlex::phi_prefix(&word(prefix)?).map_err(to_py)? {
        PrefixDecision::Decided(res) => phi_dict(py, res).map(Some),
        PrefixDecision::Insufficient(_) => Ok(None),
    }
}

#[pyfunction]
#[pyo3(name = "F")]
fn minimal_right_endpoint<'py>(py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let res = F(&rational(x)?).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("x", fraction(py, &res.x)?)?;
    d.set_item("F", fraction(py, &res.f)?)?;
    d.set_item("expansion", Seq(res.phi_expansion))?;
    d.set_item("case", res.case.label())?;
    d.set_item("central", res.central.map(CentralCertificate))?;
    d.set_item("verified", res.verified)?;
    Ok(d)
}

#[pyfunction]
fn verify_phi<'py>(py: Python<'py>, u: &Bound<'py, PyAny>, b: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let report = sturmlex::verify_phi(&sequence(u)?, &sequence(b)?);
    let d = PyDict::new(py);
    d.set_item("passed", report.passed)?;
    d.set_item("comparisons", report.comparisons)?;
    d.set_item(
        "violation",
        report.violation.map(|v| (v.kind.label(), v.shift, Seq(v.shifted))),
    )?;
    Ok(d)
}

#[pyfunction]
#[pyo3(name = "brute_phi", signature = (u, max_period = 8))]
fn oracle_phi(u: &Bound<'_, PyAny>, max_period: usize) -> PyResult<Seq> {
    brute_phi(&sequence(u)?, &SweepConfig::with_max_period(max_period))
        .map(Seq)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(name = "brute_F", signature = (x, max_period = 8))]
fn oracle_f<'py>(py: Python<'py>, x: &Bound<'py, PyAny>, max_period: usize) -> PyResult<Bound<'py, PyAny>> {
    let f = brute_F(&rational(x)?, &SweepConfig::with_max_period(max_period)).map_err(to_py)?;
    fraction(py, &f)
}

#[pymodule]
fn pysturmlex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Seq>()?;
    m.add_class::<CentralCertificate>()?;
    m.add_function(wrap_pyfunction!(pal, m)?)?;
    m.add_function(wrap_pyfunction!(palindromic_closure, m)?)?;
    m.add_function(wrap_pyfunction!(is_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(is_central, m)?)?;
    m.add_function(wrap_pyfunction!(central_from_slope, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic_pair, m)?)?;
    m.add_function(wrap_pyfunction!(mech_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic_sturmian_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(phi_zero_u, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(phi_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_right_endpoint, m)?)?;
    m.add_function(wrap_pyfunction!(verify_phi, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_phi, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_f, m)?)?;
    Ok(())
}

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use finsix::group::FiniteGroup;
use finsix::hecke::{hecke_algebra, hecke_table as table, involution_report, Subgroup};
use finsix::simplicial::pyramid_sections;
use finsix::suite::{emit_report, Format, SuiteConfig, ALL_SUITES};
use finsix::Field;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(name: &str) -> PyResult<Field> {
    name.parse().map_err(err)
}

/// Names of the check suites.
#[pyfunction]
fn suites() -> Vec<&'static str> {
    ALL_SUITES.to_vec()
}

/// Runs suites and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (suites=None, field="q", seed=0, truncate=5, probes=100))]
fn run_suite(
    py: Python<'_>,
    suites: Option<Vec<String>>,
    field: &str,
    seed: u64,
    truncate: usize,
    probes: usize,
) -> PyResult<String> {
    let cfg = SuiteConfig {
        suites: suites.unwrap_or_else(|| ALL_SUITES.iter().map(|s| s.to_string()).collect()),
        field: self::field(field)?,
        seed,
        truncate,
        probes,
        format: Format::Json,
        ..SuiteConfig::default()
    };
    let r = py.allow_threads(|| finsix::suite::run_suite(&cfg)).map_err(err)?;
    Ok(emit_report(&r, Format::Json))
}

/// `H\G/K` for subgroups given by generators: `(representative, size, |H ∩ gKg⁻¹|)`.
#[pyfunction]
fn double_cosets(group: &str, h: Vec<String>, k: Vec<String>) -> PyResult<Vec<(String, usize, usize)>> {
    let g = FiniteGroup::preset(group).map_err(err)?;
    let sub = |gens: &[String]| -> PyResult<Vec<usize>> {
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        Ok(Subgroup::generated_by(&g, &refs).map_err(err)?.elems)
    };
    let dc = finsix::hecke::double_cosets(&g, &sub(&h)?, &sub(&k)?).map_err(err)?;
    Ok(dc.cosets.iter().map(|c| (g.name(c.rep).to_string(), c.size, c.stabilizer)).collect())
}

/// Structure constants and involution of `H(G, K, 1)` as JSON.
#[pyfunction]
#[pyo3(signature = (group, subgroup, field="q"))]
fn hecke_table(group: &str, subgroup: Vec<String>, field: &str) -> PyResult<String> {
    let g = FiniteGroup::preset(group).map_err(err)?;
    let refs: Vec<&str> = subgroup.iter().map(String::as_str).collect();
    let k = Subgroup::generated_by(&g, &refs).map_err(err)?;
    let alg = hecke_algebra(&k, &k.unit_weight(self::field(field)?)).map_err(err)?;
    let t = table(&alg).map_err(err)?;
    let inv = involution_report(&alg).map_err(err)?;
    let v = serde_json::json!({ "table": t, "certificate": alg.certificate, "involution": inv });
    Ok(v.to_string())
}

/// Whether the pyramid sections at level `n` are symmetric, functorial and natural.
#[pyfunction]
fn pyramid(n: usize) -> (bool, bool, bool) {
    let p = pyramid_sections(n);
    (p.symmetric(), p.functorial(), p.comparison_natural())
}

#[pymodule]
fn finsix_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(double_cosets, m)?)?;
    m.add_function(wrap_pyfunction!(hecke_table, m)?)?;
    m.add_function(wrap_pyfunction!(pyramid, m)?)?;
    Ok(())
}

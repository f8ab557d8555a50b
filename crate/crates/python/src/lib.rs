//! Python module `prefalloc`. Instances, allocations and sources cross the
//! boundary as JSON or DIMACS text; results come back as dicts.
//!
//! Errors map onto exceptions: malformed or invalid input raises
//! `ValueError`, a solver outside its class raises `UnsupportedError`, and
//! a refused exhaustive search raises `TooLargeError`.

use prefalloc::classify::{classes_of, dispatch_with, junctions, Limits, Objective, SolverChoice};
use prefalloc::gen::{seeded_instance, RandomClass};
use prefalloc::model::io::profile_json;
use prefalloc::reductions::{generate as reduce, Cnf3Formula, Reduction, Source, X3CInstance};
use prefalloc::solve::{decide_threshold, solve as run_solver};
use prefalloc::{parse_allocation, parse_instance, serialize_instance, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Map, Value};

create_exception!(prefalloc, UnsupportedError, PyRuntimeError);
create_exception!(prefalloc, TooLargeError, PyRuntimeError);

fn to_py(err: Error) -> PyErr {
    let message = err.to_string();
    match err {
        Error::Precondition { .. } => UnsupportedError::new_err(message),
        Error::OracleTooLarge { .. } | Error::GammaTooLarge { .. } => TooLargeError::new_err(message),
        _ => PyValueError::new_err(message),
    }
}

fn to_dict<'py>(py: Python<'py>, doc: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (doc.to_string(),))
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

/// JSON documents behind the Python functions, kept free of PyO3 types.
pub mod docs {
    use super::*;

    pub fn solve(
        instance: &str,
        objective: &str,
        algorithm: &str,
        threshold: Option<usize>,
    ) -> Result<Value, Error> {
        let inst = parse_instance(instance.as_bytes())?;
        let objective: Objective = objective.parse().map_err(Error::Domain)?;
        let algorithm = match algorithm {
            "auto" => None,
            name => Some(name.parse::<SolverChoice>().map_err(Error::Domain)?),
        };
        let limits = Limits::from_env();
        let (mut doc, witness) = match threshold {
            Some(bound) => {
                let report = decide_threshold(&inst, objective, algorithm, bound, &limits)?;
                let doc = json!({
                    "objective": objective,
                    "algorithm": report.algorithm,
                    "threshold": bound,
                    "answer": if report.answer { "yes" } else { "no" },
                });
                (doc, report.witness)
            }
            None => {
                let report = run_solver(&inst, objective, algorithm, &limits)?;
                let doc = json!({
                    "objective": objective,
                    "algorithm": report.algorithm,
                    "value": report.value,
                });
                (doc, Some((report.profile, report.allocation)))
            }
        };
        if let Some((profile, alloc)) = witness {
            merge(&mut doc, profile_json(&profile));
            doc["allocation"] = json!(alloc);
        }
        Ok(doc)
    }

    pub fn evaluate(instance: &str, allocation: &str) -> Result<Value, Error> {
        let inst = parse_instance(instance.as_bytes())?;
        let alloc = parse_allocation(allocation.as_bytes())?;
        let violations = inst.validate(&alloc);
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        Ok(profile_json(&inst.profile(&alloc)?))
    }

    pub fn classify(instance: &str) -> Result<Value, Error> {
        let inst = parse_instance(instance.as_bytes())?;
        let limits = Limits::from_env();
        let classes: Map<String, Value> = inst
            .agents()
            .iter()
            .map(|a| (a.id().to_string(), json!(classes_of(a.graph()))))
            .collect();
        let summary = junctions(&inst);
        Ok(json!({
            "gamma": summary.gamma,
            "classes": classes,
            "junctions": summary.per_agent,
            "recommended": {
                "sum": dispatch_with(&inst, Objective::Sum, &limits),
                "max": dispatch_with(&inst, Objective::Max, &limits),
            },
        }))
    }

    pub fn random_instance(class: &str, items: usize, agents: usize, seed: u64) -> Result<String, Error> {
        let class: RandomClass = class.parse()?;
        Ok(serialize_instance(&seeded_instance(class, items, agents, seed)?))
    }

    /// Instance JSON and the thresholds it is built around.
    pub fn reduction(name: &str, source: &str) -> Result<(String, Value), Error> {
        let reduction: Reduction = name.parse()?;
        let source = if reduction.from_sat() {
            Source::Cnf(Cnf3Formula::from_dimacs(source)?)
        } else {
            Source::X3c(X3CInstance::from_json(source.as_bytes())?)
        };
        let reduced = reduce(reduction, &source)?;
        let thresholds: Vec<Value> = reduced
            .thresholds
            .iter()
            .map(|t| json!({ "objective": t.objective, "bound": t.bound }))
            .collect();
        Ok((serialize_instance(&reduced.instance), Value::Array(thresholds)))
    }
}

/// Optimise `objective` ("sum" or "max"), or decide whether it can be at
/// most `threshold`.
#[pyfunction]
#[pyo3(signature = (instance, objective = "sum", algorithm = "auto", threshold = None))]
fn solve<'py>(
    py: Python<'py>,
    instance: &str,
    objective: &str,
    algorithm: &str,
    threshold: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let doc = docs::solve(instance, objective, algorithm, threshold).map_err(to_py)?;
    to_dict(py, &doc)
}

/// Per-agent dissatisfaction, sum and max of an allocation.
#[pyfunction]
fn evaluate<'py>(py: Python<'py>, instance: &str, allocation: &str) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &docs::evaluate(instance, allocation).map_err(to_py)?)
}

/// Graph classes per agent, junction counts and the dispatched solvers.
#[pyfunction]
fn classify<'py>(py: Python<'py>, instance: &str) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &docs::classify(instance).map_err(to_py)?)
}

/// Seeded random instance of a graph class, as JSON.
#[pyfunction]
#[pyo3(signature = (class_name, items, agents, seed = 0))]
fn random_instance(class_name: &str, items: usize, agents: usize, seed: u64) -> PyResult<String> {
    docs::random_instance(class_name, items, agents, seed).map_err(to_py)
}

/// Hardness construction applied to exact-cover JSON or DIMACS text.
/// Returns the instance JSON and a list of thresholds.
#[pyfunction]
fn reduction<'py>(py: Python<'py>, name: &str, source: &str) -> PyResult<(String, Bound<'py, PyAny>)> {
    let (instance, thresholds) = docs::reduction(name, source).map_err(to_py)?;
    Ok((instance, to_dict(py, &thresholds)?))
}

#[pymodule]
#[pyo3(name = "prefalloc")]
fn prefalloc_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(random_instance, m)?)?;
    m.add_function(wrap_pyfunction!(reduction, m)?)?;
    m.add("UnsupportedError", m.py().get_type::<UnsupportedError>())?;
    m.add("TooLargeError", m.py().get_type::<TooLargeError>())?;
    Ok(())
}

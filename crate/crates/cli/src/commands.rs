use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use prefalloc::classify::{classes_of, dispatch_with, junctions, Limits, Objective, SolverChoice};
use prefalloc::gen::{seeded_instance, RandomClass};
use prefalloc::model::io::profile_json;
use prefalloc::reductions::{generate as reduce, Cnf3Formula, Reduction, Source, X3CInstance};
use prefalloc::solve::{decide_threshold, solve as run_solver, DecisionReport, RunReport};
use prefalloc::{parse_allocation, parse_instance, serialize_instance, Allocation, DissatisfactionProfile, Error, Instance};
use serde_json::{json, Value};

use crate::{GenerateArgs, SolveArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Core(err) => match err {
                Error::Precondition { .. } => 3,
                Error::OracleTooLarge { .. } | Error::GammaTooLarge { .. } => 4,
                _ => 2,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path) -> Result<Vec<u8>> {
    let io = |source| CliError::Io {
        path: path.to_owned(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(io)?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(io)
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    Ok(parse_instance(&read_input(path)?)?)
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON value serializes"));
}

fn profile_fields(profile: &DissatisfactionProfile, alloc: &Allocation) -> Value {
    let mut doc = profile_json(profile);
    doc["allocation"] = json!(alloc);
    doc
}

fn report_json(report: &RunReport) -> Value {
    let mut doc = json!({
        "objective": report.objective,
        "algorithm": report.algorithm,
        "value": report.value,
    });
    merge(&mut doc, profile_fields(&report.profile, &report.allocation));
    doc
}

fn decision_json(report: &DecisionReport) -> Value {
    let mut doc = json!({
        "objective": report.objective,
        "algorithm": report.algorithm,
        "threshold": report.bound,
        "answer": if report.answer { "yes" } else { "no" },
    });
    if let Some((profile, alloc)) = &report.witness {
        merge(&mut doc, profile_fields(profile, alloc));
    }
    doc
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn table(header: &[(&str, String)], profile: &DissatisfactionProfile, alloc: &Allocation) -> String {
    let mut out = String::new();
    for (key, value) in header {
        let _ = writeln!(out, "{key:<10} {value}");
    }
    let width = profile.iter().map(|(a, _)| a.as_str().len()).max().unwrap_or(0).max(5);
    let _ = writeln!(out, "\n{:<width$}  {:>15}  items", "agent", "dissatisfaction");
    for (agent, value) in profile.iter() {
        let items: Vec<&str> = alloc
            .items_of(agent.as_str())
            .map(|s| s.iter().map(|v| v.as_str()).collect())
            .unwrap_or_default();
        let _ = writeln!(out, "{:<width$}  {value:>15}  {}", agent.as_str(), items.join(" "));
    }
    out
}

pub fn solve(args: &SolveArgs) -> Result<u8> {
    let inst = load_instance(&args.instance)?;
    let objective: Objective = args.objective.into();
    let algorithm = match args.algorithm.as_str() {
        "auto" => None,
        name => Some(name.parse::<SolverChoice>().map_err(Error::Domain)?),
    };
    let limits = Limits::from_env();
    let started = Instant::now();
    let (mut doc, header, shown, code) = match args.threshold {
        Some(bound) => {
            let report = decide_threshold(&inst, objective, algorithm, bound, &limits)?;
            let header = vec![
                ("objective", objective.to_string()),
                ("algorithm", report.algorithm.to_string()),
                ("threshold", bound.to_string()),
                ("answer", if report.answer { "yes" } else { "no" }.to_owned()),
            ];
            (decision_json(&report), header, report.witness, u8::from(!report.answer))
        }
        None => {
            let report = run_solver(&inst, objective, algorithm, &limits)?;
            let header = vec![
                ("objective", objective.to_string()),
                ("algorithm", report.algorithm.to_string()),
                ("value", report.value.to_string()),
            ];
            let doc = report_json(&report);
            (doc, header, Some((report.profile, report.allocation)), 0)
        }
    };
    let elapsed = started.elapsed();
    if args.table {
        let mut header = header;
        if args.timing {
            header.push(("time", format!("{:.6}s", elapsed.as_secs_f64())));
        }
        match &shown {
            Some((profile, alloc)) => print!("{}", table(&header, profile, alloc)),
            None => {
                for (key, value) in &header {
                    println!("{key:<10} {value}");
                }
            }
        }
    } else {
        if args.timing {
            doc["wall_time_seconds"] = json!(elapsed.as_secs_f64());
        }
        emit(&doc);
    }
    Ok(code)
}

pub fn eval(instance: &Path, allocation: &Path) -> Result<u8> {
    let inst = load_instance(instance)?;
    let alloc = parse_allocation(&read_input(allocation)?)?;
    let violations = inst.validate(&alloc);
    if !violations.is_empty() {
        return Err(Error::Validation(violations).into());
    }
    emit(&profile_json(&inst.profile(&alloc)?));
    Ok(0)
}

pub fn classify(instance: &Path) -> Result<u8> {
    let inst = load_instance(instance)?;
    let limits = Limits::from_env();
    let classes: serde_json::Map<String, Value> = inst
        .agents()
        .iter()
        .map(|a| (a.id().to_string(), json!(classes_of(a.graph()))))
        .collect();
    let summary = junctions(&inst);
    emit(&json!({
        "gamma": summary.gamma,
        "classes": classes,
        "junctions": summary.per_agent,
        "recommended": {
            "sum": dispatch_with(&inst, Objective::Sum, &limits),
            "max": dispatch_with(&inst, Objective::Max, &limits),
        },
    }));
    Ok(0)
}

pub fn generate(args: &GenerateArgs) -> Result<u8> {
    let (inst, meta) = match (&args.reduction, &args.random) {
        (Some(name), _) => {
            let reduction: Reduction = name.parse()?;
            let path = args.source.as_deref().expect("clap requires --source");
            let text = read_input(path)?;
            let source = if reduction.from_sat() {
                let text = std::str::from_utf8(&text).map_err(|e| Error::Parse {
                    position: format!("byte {}", e.valid_up_to()),
                    message: "source is not UTF-8".to_owned(),
                })?;
                Source::Cnf(Cnf3Formula::from_dimacs(text)?)
            } else {
                Source::X3c(X3CInstance::from_json(&text)?)
            };
            let reduced = reduce(reduction, &source)?;
            let thresholds: Vec<Value> = reduced
                .thresholds
                .iter()
                .map(|t| json!({ "objective": t.objective, "bound": t.bound }))
                .collect();
            let meta = json!({ "reduction": reduction.name(), "thresholds": thresholds });
            (reduced.instance, meta)
        }
        (None, Some(class)) => {
            let class: RandomClass = class.parse()?;
            let items = args.items.expect("clap requires --items");
            let agents = args.agents.expect("clap requires --agents");
            let inst = seeded_instance(class, items, agents, args.seed)?;
            let meta = json!({ "random": class.name(), "items": items, "agents": agents, "seed": args.seed });
            (inst, meta)
        }
        (None, None) => unreachable!("clap requires a generation mode"),
    };
    eprintln!("{meta}");
    println!("{}", serialize_instance(&inst));
    Ok(0)
}

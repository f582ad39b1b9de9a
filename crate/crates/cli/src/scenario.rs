use std::collections::BTreeSet;
use std::fmt;

use qintegral::wire::{dtm_from_json, interval_set_from_json, pwl_from_json, space_from_json};
use qintegral::{Error, Pwl, QDtm, QIntervalSet, QSpace};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Integrate,
    Distributions,
    Measures,
    Reconstruct,
    Classify,
    Check,
}

impl Task {
    fn parse(name: &str) -> Option<Task> {
        Some(match name {
            "integrate" => Task::Integrate,
            "distributions" => Task::Distributions,
            "measures" => Task::Measures,
            "reconstruct" => Task::Reconstruct,
            "classify" => Task::Classify,
            "check" => Task::Check,
            _ => return None,
        })
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Task::Integrate => "integrate",
            Task::Distributions => "distributions",
            Task::Measures => "measures",
            Task::Reconstruct => "reconstruct",
            Task::Classify => "classify",
            Task::Check => "check",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub space: QSpace,
    pub measure: QDtm,
    pub function: Pwl,
    pub tasks: BTreeSet<Task>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    /// Sets to reconstruct; sampled from the measure's landmarks when absent.
    pub sets: Option<Vec<QIntervalSet>>,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| parse_error(format!("missing field {key:?}")))
}

fn optional_u64(v: &Value, key: &str) -> Result<Option<u64>, Error> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x.as_u64().map(Some).ok_or_else(|| parse_error(format!("{key:?} must be a nonnegative integer"))),
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
        let space = space_from_json(get(&v, "space")?)?;
        let measure = dtm_from_json(get(&v, "measure")?, &space)?;
        let function = pwl_from_json(get(&v, "function")?, &space)?;
        if function.space() != &space {
            return Err(Error::SpaceMismatch);
        }
        let raw_tasks = get(&v, "tasks")?.as_array().ok_or_else(|| parse_error("\"tasks\" must be a list"))?;
        let tasks = raw_tasks
            .iter()
            .map(|t| t.as_str().and_then(Task::parse).ok_or_else(|| parse_error(format!("unknown task {t}"))))
            .collect::<Result<BTreeSet<_>, _>>()?;
        if tasks.is_empty() {
            return Err(parse_error("\"tasks\" must not be empty"));
        }
        let sets = match v.get("sets") {
            None | Some(Value::Null) => None,
            Some(raw) => {
                let raw = raw.as_array().ok_or_else(|| parse_error("\"sets\" must be a list"))?;
                Some(raw.iter().map(interval_set_from_json).collect::<Result<Vec<_>, _>>()?)
            }
        };
        let budget = optional_u64(&v, "budget")?.map(|b| b as usize);
        Ok(Scenario { space, measure, function, tasks, seed: optional_u64(&v, "seed")?, budget, sets })
    }
}

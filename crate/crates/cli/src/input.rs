//! Where the state comes from: a named family or a JSON file.

use std::fmt;
use std::path::Path;

use gsd_core::json::{DecompositionJson, StateJson};
use gsd_core::{GhzExtParams, State, W3Params, WnParams};
use serde::Serialize;
use serde_json::Value;

use crate::report::DIGITS;

/// Inputs further than this from unit norm are normalized with a warning.
const NORM_WARNING: f64 = 1e-6;

/// Malformed command-line or file input.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn bad(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

#[derive(Clone, Copy, Debug)]
pub enum Family {
    W3(W3Params<f64>),
    Wn(WnParams<f64>),
    GhzExt(GhzExtParams<f64>),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::W3(_) => "w3",
            Family::Wn(_) => "wn",
            Family::GhzExt(_) => "ghz-ext",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match self {
            Family::W3(p) => p.to_array().to_vec(),
            Family::Wn(p) => vec![p.n as f64, p.a, p.b],
            Family::GhzExt(p) => p.to_array().to_vec(),
        }
    }

    pub fn state(&self) -> State {
        match self {
            Family::W3(p) => p.state(),
            Family::Wn(p) => p.state(),
            Family::GhzExt(p) => p.state(),
        }
    }
}

/// What the report echoes back about the input.
#[derive(Clone, Debug, Serialize)]
pub struct Echo {
    /// Family name, or the path of the state file.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
    /// Norm of the input before normalization.
    pub input_norm: f64,
    pub state: StateJson,
}

pub struct Source {
    pub state: State,
    pub family: Option<Family>,
    pub echo: Echo,
}

fn warn_norm(norm: f64) {
    if (norm - 1.0).abs() > NORM_WARNING {
        eprintln!("warning: input norm is {norm}; amplitudes were normalized");
    }
}

fn numbers(args: &[String]) -> anyhow::Result<Vec<f64>> {
    args.iter()
        .map(|a| a.parse::<f64>().map_err(|_| bad(format!("not a number: {a:?}"))))
        .collect()
}

fn four(name: &str, v: &[f64]) -> anyhow::Result<[f64; 4]> {
    <[f64; 4]>::try_from(v).map_err(|_| bad(format!("{name} takes 4 parameters a b c d, got {}", v.len())))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl Source {
    pub fn new(state: State, family: Option<Family>, source: String, input_norm: f64) -> Self {
        let echo = Echo {
            source,
            params: family.as_ref().map(Family::params),
            input_norm,
            state: StateJson::from_state(&state, DIGITS),
        };
        Self { state, family, echo }
    }

    pub fn from_family(args: &[String]) -> anyhow::Result<Self> {
        let (name, rest) = args.split_first().ok_or_else(|| bad("missing family name"))?;
        let (family, input_norm) = parse_family(name, rest)?;
        warn_norm(input_norm);
        Ok(Self::new(family.state(), Some(family), family.name().to_string(), input_norm))
    }

    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("reading {}: {e}", path.display())))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| bad(format!("{}: malformed JSON: {e}", path.display())))?;
        let (state, input_norm) = state_from_value(value).map_err(|e| bad(format!("{}: {e:#}", path.display())))?;
        warn_norm(input_norm);
        Ok(Self::new(state, None, path.display().to_string(), input_norm))
    }
}

/// Accepts a state, a decomposition block, or a whole report.
fn state_from_value(value: Value) -> anyhow::Result<(State, f64)> {
    let schema = |e: serde_json::Error| bad(format!("does not match the schema: {e}"));
    if value.get("amps").is_some() {
        let js: StateJson = serde_json::from_value(value).map_err(schema)?;
        return Ok(js.to_state()?);
    }
    let block = match value.get("decomposition") {
        Some(d) => d.clone(),
        None if value.get("coefficients").is_some() => value,
        None => return Err(bad("expected `amps`, `coefficients` or `decomposition`")),
    };
    let js: DecompositionJson = serde_json::from_value(block).map_err(schema)?;
    let s = js.reconstruct()?;
    let norm = s.input_norm();
    Ok((s, norm))
}

/// The family with normalized parameters, and the norm the parameters had.
pub fn parse_family(name: &str, rest: &[String]) -> anyhow::Result<(Family, f64)> {
    let v = numbers(rest)?;
    let parsed = match name {
        "w3" => {
            let [a, b, c, d] = four(name, &v)?;
            (Family::W3(W3Params::normalized(a, b, c, d)?), norm(&v))
        }
        "ghz-ext" => {
            let [a, b, c, d] = four(name, &v)?;
            (Family::GhzExt(GhzExtParams::normalized(a, b, c, d)?), norm(&v))
        }
        "wn" => {
            let n = match v.first() {
                Some(&n) if n.fract() == 0.0 && n >= 0.0 => n as usize,
                _ => return Err(bad("wn takes n a [b] with an integer n")),
            };
            match v[1..] {
                [a] => (Family::Wn(WnParams::from_a(n, a)?), 1.0),
                [a, b] => {
                    let norm = (((n.max(1) - 1) as f64) * a * a + b * b).sqrt();
                    (Family::Wn(WnParams::normalized(n, a, b)?), norm)
                }
                _ => return Err(bad("wn takes n a [b]")),
            }
        }
        other => return Err(bad(format!("unknown family {other:?}; expected w3, wn or ghz-ext"))),
    };
    Ok(parsed)
}

//! Analysis reports and their text and JSON renderings.

use std::fmt::Write as _;

use gsd_core::families::w3::W3SolutionKind;
use gsd_core::json::{round_sig, DecompositionJson, Pair};
use gsd_core::{
    bloch_vector, brute_force_g, build_gsd, enumerate_stationary, ghz_gsd, is_qubit_separable, is_reduction_mixed,
    w3_classify, w3_gsd, w3_stationary_solutions, wn_gsd, Decomposition, Eigenpair, Qubit, Tol,
};
use serde::Serialize;

use crate::input::{Echo, Family, Source};
use crate::{Method, Settings};

/// Significant digits of every number in the output.
pub const DIGITS: usize = 12;

/// `g` this close to one means the input is a product state.
const PRODUCT_GAP: f64 = 1e-9;

/// Oracle values may exceed the solver's `g` by this much before a warning.
const ORACLE_SLACK: f64 = 1e-6;

pub fn num(x: f64) -> f64 {
    let r = round_sig(x, DIGITS);
    // no "-0" in the output
    if r == 0.0 { 0.0 } else { r }
}

/// Plain decimal for ordinary magnitudes, scientific otherwise.
pub fn show(x: f64) -> String {
    let r = num(x);
    if r != 0.0 && !(1e-4..1e12).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

fn pair(re: f64, im: f64) -> Pair {
    [num(re), num(im)]
}

fn spinor(q: &Qubit) -> [Pair; 2] {
    [pair(q.c0().re, q.c0().im), pair(q.c1().re, q.c1().im)]
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// `Product`, `HighlyEntangled`, `SlightlyEntangled`, `Boundary`, `Biseparable`,
    /// `PartiallySeparable` or `Entangled`.
    pub class: String,
    /// W3 region label, for the W3 family only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    /// `(r_a, r_b, r_c, r_d, r1 r2 r3)` for the W3 family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_distances: Option<[f64; 5]>,
    pub h: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QubitPredicates {
    /// 1-based.
    pub qubit: usize,
    pub separable: bool,
    pub reduction_mixed: bool,
    pub bloch_norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverMeta {
    /// `closed-form` or `numeric`.
    pub method: &'static str,
    pub restarts: usize,
    pub seed: u64,
    pub residual_tol: f64,
    pub residual: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: Echo,
    pub decomposition: DecompositionJson,
    pub classification: Classification,
    pub predicates: Vec<QubitPredicates>,
    /// Some qubit has a completely mixed reduction.
    pub teleportation_applicable: bool,
    /// 1-based qubit the receiver should hold; the first of `receiver_qubits`.
    pub receiver_qubit: Option<usize>,
    pub receiver_qubits: Vec<usize>,
    pub oracle_g: Option<f64>,
    pub solver: SolverMeta,
}

fn decompose(src: &Source, settings: &Settings) -> anyhow::Result<(Decomposition, &'static str)> {
    let tol = &settings.tol;
    let d = match (settings.method, src.family) {
        (Method::Auto, Some(Family::W3(p))) => w3_gsd(&p, tol)?,
        (Method::Auto, Some(Family::Wn(p))) => wn_gsd(&p, tol)?,
        (Method::Auto, Some(Family::GhzExt(p))) => ghz_gsd(&p, tol)?,
        _ => return Ok((build_gsd(&src.state, &settings.solver, tol)?, "numeric")),
    };
    Ok((d, "closed-form"))
}

fn classify(src: &Source, d: &Decomposition, predicates: &[QubitPredicates], tol: &Tol) -> Classification {
    let n = d.n();
    let any_separable = predicates.iter().any(|p| p.separable);
    let generic = if d.g >= 1.0 - PRODUCT_GAP {
        "Product"
    } else if n == 3 && d.h > tol.h_zero {
        "HighlyEntangled"
    } else if n == 3 && any_separable {
        "Biseparable"
    } else if n == 3 {
        "SlightlyEntangled"
    } else if any_separable {
        "PartiallySeparable"
    } else {
        "Entangled"
    };
    let mut out = Classification { class: generic.into(), region: None, boundary_distances: None, h: num(d.h) };
    if let Some(Family::W3(p)) = src.family {
        let region = w3_classify(&p, tol);
        out.region = Some(region.label.to_string());
        out.boundary_distances = Some(region.boundary_distances.map(num));
        if generic != "Product" {
            out.class = if region.is_highly_entangled() {
                "HighlyEntangled"
            } else if region.label.is_slight() {
                "SlightlyEntangled"
            } else {
                "Boundary"
            }
            .into();
        }
    }
    out
}

pub fn analyze(src: &Source, settings: &Settings, verify_oracle: bool) -> anyhow::Result<AnalysisReport> {
    let tol = &settings.tol;
    let (d, method) = decompose(src, settings)?;
    let n = d.n();
    let mut predicates = Vec::with_capacity(n);
    for k in 0..n {
        let bloch = bloch_vector(&src.state, k)?.norm;
        // the coefficient form of the predicate exists for three qubits; elsewhere use the reduction directly
        let mixed = if n == 3 { is_reduction_mixed(&d, k, tol)? } else { bloch <= tol.mixed };
        predicates.push(QubitPredicates {
            qubit: k + 1,
            separable: is_qubit_separable(&d, k, tol)?,
            reduction_mixed: mixed,
            bloch_norm: num(bloch),
        });
    }
    let classification = classify(src, &d, &predicates, tol);
    let receiver_qubits: Vec<usize> = predicates.iter().filter(|p| p.reduction_mixed).map(|p| p.qubit).collect();

    let oracle_g = if !verify_oracle {
        None
    } else if n > gsd_core::oracle::ORACLE_MAX_QUBITS {
        eprintln!("warning: oracle skipped, it handles at most {} qubits", gsd_core::oracle::ORACLE_MAX_QUBITS);
        None
    } else {
        let g = brute_force_g(&src.state, &settings.oracle)?;
        if g > d.g + ORACLE_SLACK {
            eprintln!("warning: oracle value {g} exceeds g = {}; the solver missed the maximum", d.g);
        }
        Some(num(g))
    };

    let pair = d.eigenpair.as_ref();
    Ok(AnalysisReport {
        input: src.echo.clone(),
        decomposition: DecompositionJson::from_decomposition(&d, DIGITS),
        classification,
        teleportation_applicable: !receiver_qubits.is_empty(),
        receiver_qubit: receiver_qubits.first().copied(),
        receiver_qubits,
        predicates,
        oracle_g,
        solver: SolverMeta {
            method,
            restarts: settings.solver.restarts,
            seed: settings.solver.rng_seed,
            residual_tol: settings.solver.residual_tol,
            residual: pair.map(|p| num(p.residual)),
            iterations: pair.map(|p| p.iterations),
            converged: pair.map(|p| p.converged),
        },
    })
}

fn yes(b: bool) -> &'static str {
    if b { "yes" } else { "no" }
}

fn list(v: &[f64]) -> String {
    v.iter().map(|&x| show(x)).collect::<Vec<_>>().join(" ")
}

impl AnalysisReport {
    pub fn render(&self) -> String {
        let d = &self.decomposition;
        let mut s = String::new();
        let params = self.input.params.as_deref().map(|p| format!(" {}", list(p))).unwrap_or_default();
        let _ = writeln!(s, "input      {}{} (n = {})", self.input.source, params, d.n);
        let _ = writeln!(s, "g          {}", show(d.g));
        let _ = writeln!(s, "t          {}", list(&d.t));
        let _ = writeln!(s, "h          {}", show(d.h));
        let _ = writeln!(s, "phi        {}", show(d.phi));
        s.push_str(&self.render_classification(false));
        let _ = writeln!(s, "qubit  separable  reduction_mixed  bloch_norm");
        for p in &self.predicates {
            let _ = writeln!(s, "{:<6} {:<10} {:<16} {}", p.qubit, yes(p.separable), yes(p.reduction_mixed), show(p.bloch_norm));
        }
        match self.receiver_qubit {
            Some(k) => {
                let _ = writeln!(s, "teleportation applicable, receiver qubit {k} (any of {:?})", self.receiver_qubits);
            }
            None => {
                let _ = writeln!(s, "teleportation not applicable");
            }
        }
        if let Some(g) = self.oracle_g {
            let _ = writeln!(s, "oracle g   {} (difference {})", show(g), show(d.g - g));
        }
        let m = &self.solver;
        let _ = write!(s, "solver     {}", m.method);
        if let Some(r) = m.residual {
            let _ = write!(s, ", residual {}", show(r));
        }
        if m.method == "numeric" {
            let _ = write!(s, ", {} restarts, seed {}", m.restarts, m.seed);
        }
        s.push('\n');
        let _ = writeln!(s, "coefficients (global phase {})", show(d.global_phase));
        for (key, c) in &d.coefficients {
            if c[0] != 0.0 || c[1] != 0.0 {
                let _ = writeln!(s, "  {key}  {} {}", show(c[0]), show(c[1]));
            }
        }
        s
    }

    pub fn render_classification(&self, with_h: bool) -> String {
        let c = &self.classification;
        let mut s = format!("class      {}\n", c.class);
        if let Some(region) = &c.region {
            let _ = writeln!(s, "region     {region}");
        }
        if let Some(b) = &c.boundary_distances {
            let _ = writeln!(s, "r_a r_b r_c r_d r1r2r3  {}", list(b));
        }
        if with_h {
            let _ = writeln!(s, "h          {}", show(c.h));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StationaryPoint {
    /// Analytic solution label, for the W3 closed forms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub g: f64,
    pub residual: f64,
    pub dominant: bool,
    /// `|q_k>` as `[c0, c1]`, qubit 1 first.
    pub factors: Vec<[Pair; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub method: &'static str,
    pub points: Vec<StationaryPoint>,
    /// Analytic solutions that do not exist at this point, with the reason.
    pub omitted: Vec<(String, String)>,
}

fn point(kind: Option<W3SolutionKind>, p: &Eigenpair, dominant: bool) -> StationaryPoint {
    StationaryPoint {
        kind: kind.map(|k| format!("{k:?}")),
        g: num(p.g),
        residual: num(p.residual),
        dominant,
        factors: p.product.factors().iter().map(spinor).collect(),
    }
}

pub fn enumerate(src: &Source, settings: &Settings) -> anyhow::Result<Enumeration> {
    if let (Method::Auto, Some(Family::W3(p))) = (settings.method, src.family) {
        let sols = w3_stationary_solutions(&p, &settings.tol)?;
        let top = sols.dominant().kind;
        return Ok(Enumeration {
            method: "closed-form",
            points: sols.solutions.iter().map(|s| point(Some(s.kind), &s.eigenpair, s.kind == top)).collect(),
            omitted: sols.omitted.iter().map(|(k, r)| (format!("{k:?}"), format!("{r:?}"))).collect(),
        });
    }
    let pairs = enumerate_stationary(&src.state, &settings.solver)?;
    Ok(Enumeration {
        method: "numeric",
        points: pairs.iter().enumerate().map(|(i, p)| point(None, p, i == 0)).collect(),
        omitted: Vec::new(),
    })
}

pub fn render_enumeration(e: &Enumeration) -> String {
    let mut s = format!("{} stationary points ({})\n", e.points.len(), e.method);
    for (i, p) in e.points.iter().enumerate() {
        let kind = p.kind.as_deref().map(|k| format!(" {k}")).unwrap_or_default();
        let mark = if p.dominant { " dominant" } else { "" };
        let _ = writeln!(s, "#{}{kind}{mark}: g {} residual {}", i + 1, show(p.g), show(p.residual));
        for (k, f) in p.factors.iter().enumerate() {
            let _ = writeln!(s, "  q{} = ({} {}, {} {})", k + 1, show(f[0][0]), show(f[0][1]), show(f[1][0]), show(f[1][1]));
        }
    }
    for (kind, reason) in &e.omitted {
        let _ = writeln!(s, "{kind} absent: {reason}");
    }
    s
}

pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

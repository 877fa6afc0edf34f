//! Deterministic CSV sweeps over four-parameter families.
//!
//! Grid points are `(a, b, c, d) = sqrt((i, j, k, l)/N)` for all non-negative
//! integers with `i + j + k + l = N`, i.e. a uniform grid on the simplex of
//! squared parameters, in lexicographic order of `(i, j, k, l)`.

use std::fmt::Write as _;

use gsd_core::{build_gsd, ghz_gsd, w3_classify, w3_gsd, Decomposition, GhzExtParams, W3Params};
use rayon::prelude::*;

use crate::input::InputError;
use crate::report::num;
use crate::{Method, Settings};

/// Bumped whenever the columns or their meaning change.
const FORMAT_VERSION: u32 = 1;

const COLUMNS: &str = "a,b,c,d,g,t1,t2,t3,h,phi,region";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    W3,
    GhzExt,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self, InputError> {
        match name {
            "w3" => Ok(Self::W3),
            "ghz-ext" => Ok(Self::GhzExt),
            other => Err(InputError(format!("cannot sweep {other:?}; expected w3 or ghz-ext"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Self::W3 => "w3",
            Self::GhzExt => "ghz-ext",
        }
    }
}

fn simplex(n: usize) -> Vec<[f64; 4]> {
    let scale = n as f64;
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n - i {
            for k in 0..=n - i - j {
                let l = n - i - j - k;
                out.push([i, j, k, l].map(|x| (x as f64 / scale).sqrt()));
            }
        }
    }
    out
}

fn row(family: Family, v: [f64; 4], settings: &Settings) -> anyhow::Result<String> {
    let tol = &settings.tol;
    let numeric = settings.method == Method::Numeric;
    let (d, region): (Decomposition, String) = match family {
        Family::W3 => {
            let p = W3Params::new(v[0], v[1], v[2], v[3])?;
            let d = if numeric { build_gsd(&p.state(), &settings.solver, tol)? } else { w3_gsd(&p, tol)? };
            (d, w3_classify(&p, tol).label.to_string())
        }
        Family::GhzExt => {
            let p = GhzExtParams::new(v[0], v[1], v[2], v[3])?;
            let d = if numeric { build_gsd(&p.state(), &settings.solver, tol)? } else { ghz_gsd(&p, tol)? };
            let label = if d.g >= 1.0 - 1e-9 {
                "Product"
            } else if d.h > tol.h_zero {
                "HighlyEntangled"
            } else {
                "Biseparable"
            };
            (d, label.to_string())
        }
    };
    let mut line = String::new();
    for x in v.iter().chain([d.g].iter()).chain(d.t.iter()).chain([d.h, d.phi].iter()) {
        let _ = write!(line, "{},", num(*x));
    }
    line.push_str(&region);
    Ok(line)
}

pub fn run(family: Family, grid: usize, settings: &Settings) -> anyhow::Result<String> {
    if grid == 0 {
        return Err(InputError("--grid must be at least 1".into()).into());
    }
    let points = simplex(grid);
    // rows are computed in parallel and assembled in grid order
    let rows: Vec<String> = points.par_iter().map(|&v| row(family, v, settings)).collect::<anyhow::Result<_>>()?;
    let method = match settings.method {
        Method::Auto => "closed-form".to_string(),
        Method::Numeric => format!("numeric restarts={} seed={}", settings.solver.restarts, settings.solver.rng_seed),
    };
    let mut out = format!(
        "# gsd sweep v{FORMAT_VERSION} family={} grid={grid} points={} method={method}\n{COLUMNS}\n",
        family.name(),
        points.len()
    );
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_points_are_unit_and_distinct() {
        let pts = simplex(4);
        assert_eq!(pts.len(), 35);
        for p in &pts {
            assert!((p.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-15);
        }
        assert_eq!(pts[0], [0.0, 0.0, 0.0, 1.0]);
    }
}

//! Three-qubit W-type states `a|100> + b|010> + c|001> + d|111>`.
//!
//! The analysis is governed by
//!
//! ```text
//! r_a = a(b^2 + c^2 + d^2 - a^2) + 2bcd      (and cyclically r_b, r_c, r_d)
//! L   = sqrt((ab + cd)(ac + bd)(ad + bc))
//! S   = sqrt((s - a)(s - b)(s - c)(s - d)),  s = (a + b + c + d)/2
//! ```
//!
//! `S` is the area of the cyclic quadrilateral with sides `a, b, c, d` and
//! `L/(4S)` its circumradius. When every `r` is non-negative the dominant
//! product state is the nontrivial fifth stationary point with `g = L/(2S)`;
//! otherwise the one negative `r_x` marks the largest coefficient `x` as `g`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{closed_form, Formula, ANALYTIC_RESIDUAL};
use crate::error::{GsdError, Result};
use crate::gsd::GsdDecomposition;
use crate::scalar::Real;
use crate::solver::{analytic_eigenpair, SeqEigenpair};
use crate::state::{ProductState, QubitState, Qubit1};
use crate::tolerance::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct W3Params<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

fn check_nonnegative<T: Real>(v: &[T; 4]) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(GsdError::NonFinite);
    }
    if v.iter().any(|&x| x < T::zero()) {
        return Err(GsdError::InvalidParams("W-type parameters must be non-negative".into()));
    }
    Ok(())
}

impl<T: Real> W3Params<T> {
    /// Requires non-negative parameters with unit norm within `1e-12` (scaled for `f32`).
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let v = [a, b, c, d];
        check_nonnegative(&v)?;
        let norm2 = v.iter().fold(T::zero(), |acc, &x| acc + x * x);
        if (norm2 - T::one()).abs() > Tolerances::<T>::default().norm {
            return Err(GsdError::InvalidParams(format!("a^2+b^2+c^2+d^2 = {norm2}, expected 1")));
        }
        Ok(Self { a, b, c, d })
    }

    /// Scales non-negative parameters to unit norm.
    pub fn normalized(a: T, b: T, c: T, d: T) -> Result<Self> {
        let v = [a, b, c, d];
        check_nonnegative(&v)?;
        let norm = v.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
        if norm <= T::zero() {
            return Err(GsdError::ZeroNorm);
        }
        Ok(Self { a: a / norm, b: b / norm, c: c / norm, d: d / norm })
    }

    pub fn from_array(v: [T; 4]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Parameters reordered so that entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        let v = self.to_array();
        Self { a: v[perm[0]], b: v[perm[1]], c: v[perm[2]], d: v[perm[3]] }
    }

    pub fn state(&self) -> QubitState<T> {
        let terms = [(4, self.a), (2, self.b), (1, self.c), (7, self.d)]
            .map(|(i, x)| (i, Complex::new(x, T::zero())));
        QubitState::from_terms(3, &terms).expect("normalized parameters")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct W3Invariants<T> {
    pub r_a: T,
    pub r_b: T,
    pub r_c: T,
    pub r_d: T,
    pub l: T,
    /// Heron area `S`; zero when the sides do not close into a quadrilateral.
    pub area: T,
    pub semiperimeter: T,
    /// Bloch vector lengths of the three qubits.
    pub r1: T,
    pub r2: T,
    pub r3: T,
    /// `S^2 <= 0`: the fifth stationary point does not exist.
    pub degenerate: bool,
}

impl<T: Real> W3Invariants<T> {
    pub fn rs(&self) -> [T; 4] {
        [self.r_a, self.r_b, self.r_c, self.r_d]
    }

    pub fn min_r(&self) -> T {
        self.rs().into_iter().fold(T::infinity(), T::min)
    }

    pub fn circumradius(&self) -> Option<T> {
        (!self.degenerate).then(|| self.l / (T::of(4.0) * self.area))
    }

    /// `L/(2S)`, the value of `g` at the fifth stationary point.
    pub fn fifth_g(&self) -> Option<T> {
        (!self.degenerate).then(|| self.l / (T::of(2.0) * self.area))
    }
}

fn r_values<T: Real>(a: T, b: T, c: T, d: T) -> [T; 4] {
    let two = T::of(2.0);
    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    [
        a * (b2 + c2 + d2 - a2) + two * b * c * d,
        b * (a2 + c2 + d2 - b2) + two * a * c * d,
        c * (a2 + b2 + d2 - c2) + two * a * b * d,
        d * (a2 + b2 + c2 - d2) + two * a * b * c,
    ]
}

fn heron_squared<T: Real>(a: T, b: T, c: T, d: T) -> T {
    let s = (a + b + c + d) * T::of(0.5);
    (s - a) * (s - b) * (s - c) * (s - d)
}

pub fn w3_invariants<T: Real>(p: &W3Params<T>) -> W3Invariants<T> {
    let W3Params { a, b, c, d } = *p;
    let [r_a, r_b, r_c, r_d] = r_values(a, b, c, d);
    let l = ((a * b + c * d) * (a * c + b * d) * (a * d + b * c)).sqrt();
    let s2 = heron_squared(a, b, c, d);
    let degenerate = s2 <= T::epsilon() * T::epsilon();
    let (a2, b2, c2, d2) = (a * a, b * b, c * c, d * d);
    W3Invariants {
        r_a,
        r_b,
        r_c,
        r_d,
        l,
        area: s2.max(T::zero()).sqrt(),
        semiperimeter: (a + b + c + d) * T::of(0.5),
        r1: (b2 + c2 - a2 - d2).abs(),
        r2: (a2 + c2 - b2 - d2).abs(),
        r3: (a2 + b2 - c2 - d2).abs(),
        degenerate,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum W3RegionLabel {
    HighlyEntangled,
    SlightA,
    SlightB,
    SlightC,
    SlightD,
    /// A one-qubit reduction is completely mixed (`r1 r2 r3 = 0`).
    SharedType1,
    /// On the surface `min r = 0` separating the highly and slightly entangled regions.
    SharedType2,
}

impl W3RegionLabel {
    pub const SLIGHT: [Self; 4] = [Self::SlightA, Self::SlightB, Self::SlightC, Self::SlightD];

    pub fn is_slight(self) -> bool {
        Self::SLIGHT.contains(&self)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::HighlyEntangled => "HighlyEntangled",
            Self::SlightA => "SlightA",
            Self::SlightB => "SlightB",
            Self::SlightC => "SlightC",
            Self::SlightD => "SlightD",
            Self::SharedType1 => "SharedType1",
            Self::SharedType2 => "SharedType2",
        }
    }
}

impl std::fmt::Display for W3RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct W3Region<T> {
    pub label: W3RegionLabel,
    /// `(r_a, r_b, r_c, r_d, r1 r2 r3)`.
    pub boundary_distances: [T; 5],
}

impl<T> W3Region<T> {
    /// Inside the highly entangled region, including its first-type shared states.
    pub fn is_highly_entangled(&self) -> bool {
        matches!(self.label, W3RegionLabel::HighlyEntangled | W3RegionLabel::SharedType1)
    }
}

/// Classification with a band of `tol.boundary` around each separating surface.
///
/// A negative `r_x` below the band gives the slight region of `x`; a minimum
/// inside the band gives `SharedType2`; otherwise `r1 r2 r3` inside the band
/// gives `SharedType1`.
pub fn w3_classify<T: Real>(p: &W3Params<T>, tol: &Tolerances<T>) -> W3Region<T> {
    let inv = w3_invariants(p);
    let rs = inv.rs();
    let prod = inv.r1 * inv.r2 * inv.r3;
    let (imin, rmin) = rs
        .iter()
        .copied()
        .enumerate()
        .fold((0, T::infinity()), |best, (i, r)| if r < best.1 { (i, r) } else { best });
    let label = if rmin < -tol.boundary {
        W3RegionLabel::SLIGHT[imin]
    } else if rmin <= tol.boundary {
        W3RegionLabel::SharedType2
    } else if prod <= tol.boundary {
        W3RegionLabel::SharedType1
    } else {
        W3RegionLabel::HighlyEntangled
    };
    W3Region { label, boundary_distances: [rs[0], rs[1], rs[2], rs[3], prod] }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum W3SolutionKind {
    /// `|100>`, `g = a`.
    TrivialA,
    /// `|010>`, `g = b`.
    TrivialB,
    /// `|001>`, `g = c`.
    TrivialC,
    /// `|111>`, `g = d`.
    TrivialD,
    /// The nontrivial solution with `g = L/(2S)`.
    Fifth,
    /// Its dual under `d -> -d`.
    Sixth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmitReason {
    NegativeRadicand,
    /// `S = 0` (or its dual), so the eigenvalue formula is undefined.
    DegenerateArea,
    /// Every amplitude of some factor vanishes.
    VanishingFactor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct W3Solution<T> {
    pub kind: W3SolutionKind,
    pub eigenpair: SeqEigenpair<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct W3Solutions<T> {
    pub solutions: Vec<W3Solution<T>>,
    pub omitted: Vec<(W3SolutionKind, OmitReason)>,
}

impl<T: Real> W3Solutions<T> {
    pub fn get(&self, kind: W3SolutionKind) -> Option<&SeqEigenpair<T>> {
        self.solutions.iter().find(|s| s.kind == kind).map(|s| &s.eigenpair)
    }

    /// Solution with the largest `g`; ties resolve to the earlier kind.
    pub fn dominant(&self) -> &W3Solution<T> {
        self.solutions
            .iter()
            .fold(None::<&W3Solution<T>>, |best, s| match best {
                Some(b) if b.eigenpair.g >= s.eigenpair.g => Some(b),
                _ => Some(s),
            })
            .expect("trivial solutions always present")
    }
}

fn factor<T: Real>(c0: Complex<T>, c1: Complex<T>) -> Option<Qubit1<T>> {
    Qubit1::new(c0, c1).ok()
}

/// Fifth-solution factors; `r` is clamped at zero inside the boundary band.
fn fifth_factors<T: Real>(rs: [T; 4]) -> Option<Vec<Qubit1<T>>> {
    let [ra, rb, rc, rd] = rs.map(|r| r.max(T::zero()));
    let re = |x: T| Complex::new(x.sqrt(), T::zero());
    Some(vec![
        factor(re(ra * rd), re(rb * rc))?,
        factor(re(rb * rd), re(ra * rc))?,
        factor(re(rc * rd), re(ra * rb))?,
    ])
}

/// Sixth-solution factors `(sqrt|A_k|, i sign(r'_k) sqrt|B_k|)` built from `r' = r(a, b, c, -d)`.
fn sixth_factors<T: Real>(rp: [T; 4]) -> Option<Vec<Qubit1<T>>> {
    let [ra, rb, rc, rd] = rp;
    let pairs = [(ra * rd, rb * rc, ra), (rb * rd, ra * rc, rb), (rc * rd, ra * rb, rc)];
    pairs
        .into_iter()
        .map(|(x, y, sign)| {
            let s = if sign >= T::zero() { T::one() } else { -T::one() };
            factor(Complex::new(x.abs().sqrt(), T::zero()), Complex::new(T::zero(), s * y.abs().sqrt()))
        })
        .collect()
}

fn trivial_product<T: Real>(kind: W3SolutionKind) -> Vec<Qubit1<T>> {
    let bits = match kind {
        W3SolutionKind::TrivialA => [true, false, false],
        W3SolutionKind::TrivialB => [false, true, false],
        W3SolutionKind::TrivialC => [false, false, true],
        _ => [true, true, true],
    };
    bits.map(Qubit1::basis).to_vec()
}

/// All analytic stationary points. Trivial solutions are always present; the
/// fifth and sixth are included only where their radicands and areas allow,
/// with the reason recorded otherwise.
pub fn w3_stationary_solutions<T: Real>(p: &W3Params<T>, tol: &Tolerances<T>) -> Result<W3Solutions<T>> {
    let s = p.state();
    let inv = w3_invariants(p);
    let residual_tol = T::of(ANALYTIC_RESIDUAL);
    let mut solutions = Vec::with_capacity(6);
    let mut omitted = Vec::new();

    let trivial = [
        (W3SolutionKind::TrivialA, p.a),
        (W3SolutionKind::TrivialB, p.b),
        (W3SolutionKind::TrivialC, p.c),
        (W3SolutionKind::TrivialD, p.d),
    ];
    for (kind, g) in trivial {
        let product = ProductState::new(trivial_product(kind))?;
        solutions.push(W3Solution { kind, eigenpair: analytic_eigenpair(&s, product, g, residual_tol)? });
    }

    if inv.min_r() < -tol.boundary {
        omitted.push((W3SolutionKind::Fifth, OmitReason::NegativeRadicand));
    } else if inv.degenerate {
        omitted.push((W3SolutionKind::Fifth, OmitReason::DegenerateArea));
    } else {
        match fifth_factors(inv.rs()) {
            Some(q) => {
                let g = inv.fifth_g().expect("area nonzero");
                let eigenpair = analytic_eigenpair(&s, ProductState::new(q)?, g, residual_tol)?;
                solutions.push(W3Solution { kind: W3SolutionKind::Fifth, eigenpair });
            }
            None => omitted.push((W3SolutionKind::Fifth, OmitReason::VanishingFactor)),
        }
    }

    let rp = r_values(p.a, p.b, p.c, -p.d);
    let dual_area2 = heron_squared(p.a, p.b, p.c, -p.d);
    let dual_l2 = (p.a * p.b - p.c * p.d) * (p.a * p.c - p.b * p.d) * (p.b * p.c - p.a * p.d);
    if rp.iter().fold(T::one(), |acc, &r| acc * r) < T::zero() {
        omitted.push((W3SolutionKind::Sixth, OmitReason::NegativeRadicand));
    } else if dual_area2.abs() <= T::epsilon() * T::epsilon() {
        omitted.push((W3SolutionKind::Sixth, OmitReason::DegenerateArea));
    } else {
        match sixth_factors(rp) {
            Some(q) => {
                let g = (dual_l2 / dual_area2).abs().sqrt() * T::of(0.5);
                let eigenpair = analytic_eigenpair(&s, ProductState::new(q)?, g, residual_tol)?;
                solutions.push(W3Solution { kind: W3SolutionKind::Sixth, eigenpair });
            }
            None => omitted.push((W3SolutionKind::Sixth, OmitReason::VanishingFactor)),
        }
    }
    Ok(W3Solutions { solutions, omitted })
}

/// Coefficients in the fifth-solution basis: `g = L/(2S)`,
/// `t_k = L r_k / (4S m_k)` with `m = (ad + bc, bd + ac, cd + ab)`,
/// `h = sqrt(r_a r_b r_c r_d)/(4LS)` and `phi = pi/2`.
pub fn w3_gsd_highly_entangled<T: Real>(p: &W3Params<T>, tol: &Tolerances<T>) -> Result<GsdDecomposition<T>> {
    let inv = w3_invariants(p);
    if inv.min_r() < -tol.boundary {
        return Err(GsdError::NotApplicable("highly entangled branch requires every r >= 0"));
    }
    if inv.degenerate {
        return Err(GsdError::NotApplicable("highly entangled branch requires a nondegenerate quadrilateral"));
    }
    let q = fifth_factors(inv.rs()).ok_or(GsdError::NotApplicable("fifth solution has a vanishing factor"))?;
    let W3Params { a, b, c, d } = *p;
    let (l, s) = (inv.l, inv.area);
    let four = T::of(4.0);
    let t = vec![
        l * inv.r1 / (four * s * (a * d + b * c)),
        l * inv.r2 / (four * s * (b * d + a * c)),
        l * inv.r3 / (four * s * (c * d + a * b)),
    ];
    let rprod = inv.rs().into_iter().fold(T::one(), |acc, r| acc * r.max(T::zero()));
    let h = if l > T::zero() { rprod.sqrt() / (four * l * s) } else { T::zero() };
    let f = Formula { g: l / (T::of(2.0) * s), t, h, phi: T::FRAC_PI_2() };
    closed_form(&p.state(), q, f, tol)
}

/// Coefficients in the basis of the trivial solution for `which` (0 = a, .., 3 = d):
/// `g` is that parameter, `h = 0`, and the `t_k` are the other three in the
/// order fixed by relabelling the flipped qubits.
pub fn w3_gsd_slight<T: Real>(p: &W3Params<T>, which: usize, tol: &Tolerances<T>) -> Result<GsdDecomposition<T>> {
    let W3Params { a, b, c, d } = *p;
    let (kind, g, t) = match which {
        0 => (W3SolutionKind::TrivialA, a, [d, c, b]),
        1 => (W3SolutionKind::TrivialB, b, [c, d, a]),
        2 => (W3SolutionKind::TrivialC, c, [b, a, d]),
        3 => (W3SolutionKind::TrivialD, d, [a, b, c]),
        _ => return Err(GsdError::Index { index: which, n: 4 }),
    };
    let f = Formula { g, t: t.to_vec(), h: T::zero(), phi: T::zero() };
    closed_form(&p.state(), trivial_product(kind), f, tol)
}

/// Closed-form decomposition in the region the parameters fall in.
///
/// Shared states of the second type take the highly entangled branch; the two
/// branches agree there. Where the fifth solution does not exist the largest
/// parameter's trivial branch is used.
pub fn w3_gsd<T: Real>(p: &W3Params<T>, tol: &Tolerances<T>) -> Result<GsdDecomposition<T>> {
    let region = w3_classify(p, tol);
    if let Some(i) = W3RegionLabel::SLIGHT.iter().position(|&l| l == region.label) {
        return w3_gsd_slight(p, i, tol);
    }
    match w3_gsd_highly_entangled(p, tol) {
        Err(GsdError::NotApplicable(_)) => {
            let v = p.to_array();
            let imax = (0..4).fold(0, |best, i| if v[i] > v[best] { i } else { best });
            w3_gsd_slight(p, imax, tol)
        }
        other => other,
    }
}

/// Point on the separating surface `r_which = 0`.
///
/// The other three parameters keep the ratios in `others` (in a, b, c, d order
/// with `which` skipped); `r_which` is decreasing in the free parameter, so
/// bisection finds the unique root.
pub fn w3_boundary_point<T: Real>(others: [T; 3], which: usize) -> Result<W3Params<T>> {
    if which > 3 {
        return Err(GsdError::Index { index: which, n: 4 });
    }
    if others.iter().any(|&x| !(x >= T::zero()) || !x.is_finite()) {
        return Err(GsdError::InvalidParams("boundary ratios must be finite and non-negative".into()));
    }
    let [x, y, z] = others;
    let m = x * x + y * y + z * z;
    if m <= T::zero() {
        return Err(GsdError::ZeroNorm);
    }
    let two = T::of(2.0);
    let r = |v: T| v * (m - v * v) + two * x * y * z;
    // r(0) >= 0 and r(v) < 0 once v^2 > m + 2xyz/v, so sqrt(m) + 1 brackets the root after scaling.
    let (mut lo, mut hi) = (T::zero(), m.sqrt() + (two * x * y * z).cbrt() + T::one());
    for _ in 0..200 {
        let mid = (lo + hi) * T::of(0.5);
        if r(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::epsilon() * hi {
            break;
        }
    }
    let root = (lo + hi) * T::of(0.5);
    let mut rest = others.into_iter();
    let full: [T; 4] = std::array::from_fn(|i| if i == which { root } else { rest.next().expect("three ratios") });
    W3Params::normalized(full[0], full[1], full[2], full[3])
}

/// `steps^4 - 1` points: each parameter on `k/(steps-1)`, the all-zero corner skipped, then normalized.
pub fn w3_box_grid<T: Real>(steps: usize) -> Vec<W3Params<T>> {
    let denom = T::of((steps.max(2) - 1) as f64);
    let mut out = Vec::new();
    for i in 0..steps {
        for j in 0..steps {
            for k in 0..steps {
                for l in 0..steps {
                    let v = [i, j, k, l].map(|x| T::of(x as f64) / denom);
                    if let Ok(p) = W3Params::normalized(v[0], v[1], v[2], v[3]) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// `steps^3` points on the positive orthant of the unit 3-sphere via hyperspherical angles in `[0, pi/2]`.
pub fn w3_angle_grid<T: Real>(steps: usize) -> Vec<W3Params<T>> {
    let h = T::FRAC_PI_2() / T::of((steps.max(2) - 1) as f64);
    let mut out = Vec::with_capacity(steps * steps * steps);
    for i in 0..steps {
        for j in 0..steps {
            for k in 0..steps {
                let (t1, t2, t3) = (h * T::of(i as f64), h * T::of(j as f64), h * T::of(k as f64));
                let a = t1.cos();
                let b = t1.sin() * t2.cos();
                let c = t1.sin() * t2.sin() * t3.cos();
                let d = t1.sin() * t2.sin() * t3.sin();
                let p = W3Params::normalized(a.max(T::zero()), b.max(T::zero()), c.max(T::zero()), d.max(T::zero()))
                    .expect("unit vector");
                out.push(p);
            }
        }
    }
    out
}

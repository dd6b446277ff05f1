//! Closed-form dynamics of the PT-symmetric qubit `H = σx + i r σz`.
//!
//! Everything is expressed through the continued kernel `(c, s)`:
//! `c = cos(ht)`, `s = sin(ht)/h` with `h = √(1 - r²)`. For `r > 1` these turn
//! into `cosh(κt)` and `sinh(κt)/κ` with `κ = √(r² - 1)`, and in a narrow
//! window around the exceptional point `r = 1` both are evaluated as power
//! series in `h²`, so nothing divides by `h`.

use std::f64::consts::PI;

use crate::qutrit::Mat2;
use crate::{Error, Result, C64};

/// Half-width of the window around `r = 1` where the series kernel is used.
pub const EXCEPTIONAL_WINDOW: f64 = 1e-8;

/// Slack allowed when checking `λ ≥ σ₊`.
pub const LAMBDA_SLACK: f64 = 1e-12;

/// A physical point: gain/loss strength `r` and evolution time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PTParams {
    r: f64,
    t: f64,
}

impl PTParams {
    pub fn new(r: f64, t: f64) -> Result<Self> {
        if !(r.is_finite() && t.is_finite()) || r < 0.0 || t < 0.0 {
            return Err(Error::InvalidParams(format!(
                "need finite r >= 0 and t >= 0, got r = {r}, t = {t}"
            )));
        }
        Ok(PTParams { r, t })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Continued trigonometric kernel of `V(t) = c - i s H`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kernel {
    pub h_sq: f64,
    pub c: f64,
    pub s: f64,
    /// `√|1 - r² cos²(ht)| / |h|`, equal to `√(c² + s²)`.
    pub a: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingularPair {
    pub sigma_plus: f64,
    pub sigma_minus: f64,
    /// `σ₋ / σ₊`.
    pub ratio: f64,
}

/// Rotation angles of the three-gate qutrit circuit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angles {
    pub phi: f64,
    pub theta: f64,
}

impl Angles {
    /// Angles of the first- and last-applied `Rx01` gates.
    ///
    /// For `φ ≥ 0` both equal `φ`. For `φ < 0` (that is `sin(ht) < 0`) the
    /// larger singular value sits in the lower diagonal entry of `Σ`, and the
    /// symmetric circuit would reproduce `-V/σ₊` on the qubit block; shifting
    /// the outer gates to `φ - π` and `φ + π` conjugates `Σ` by `σx` and
    /// restores the sign.
    pub fn outer(&self) -> (f64, f64) {
        if self.phi < 0.0 {
            (self.phi - PI, self.phi + PI)
        } else {
            (self.phi, self.phi)
        }
    }
}

/// Which ground-state population a heatmap shows.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Observable {
    /// `|⟨0|U(t)|0⟩|²`.
    #[default]
    ReturnProbability,
    /// Ground-state population conditioned on landing in `{|0⟩, |1⟩}`.
    Postselected,
}

impl Observable {
    pub fn evaluate(&self, p: &PTParams) -> f64 {
        match self {
            Observable::ReturnProbability => return_probability(p),
            Observable::Postselected => postselected_population(p),
        }
    }
}

pub fn hamiltonian(r: f64) -> Mat2 {
    Mat2::new(
        C64::new(0.0, r),
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(0.0, -r),
    )
}

/// `σx · m* · σx == m` within `tol` (parity `σx`, time reversal = conjugation).
pub fn pt_symmetry_check(m: &Mat2, tol: f64) -> bool {
    let sx = Mat2::sigma_x();
    (sx * m.conj() * sx).max_abs_diff(m) <= tol
}

/// `(+h, -h)` with `h = √(1 - r²)`, purely imaginary above the exceptional
/// point.
pub fn eigenvalues(r: f64) -> (C64, C64) {
    let h_sq = 1.0 - r * r;
    let h = if h_sq >= 0.0 {
        C64::new(h_sq.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-h_sq).sqrt())
    };
    (h, -h)
}

pub fn kernel(p: &PTParams) -> Kernel {
    let (r, t) = (p.r, p.t);
    let h_sq = (1.0 - r) * (1.0 + r);
    let (c, s) = if (1.0 - r).abs() <= EXCEPTIONAL_WINDOW {
        series_kernel(h_sq, t)
    } else if r < 1.0 {
        let h = h_sq.sqrt();
        let (sin, cos) = (h * t).sin_cos();
        (cos, sin / h)
    } else {
        let kappa = (-h_sq).sqrt();
        ((kappa * t).cosh(), (kappa * t).sinh() / kappa)
    };
    Kernel { h_sq, c, s, a: c.hypot(s) }
}

/// `cos(ht)` and `sin(ht)/h` as power series in `x = h²` through `x⁴`.
fn series_kernel(x: f64, t: f64) -> (f64, f64) {
    let t2 = t * t;
    let mut c = 0.0;
    let mut s = 0.0;
    // term_c = (-x)^k t^{2k} / (2k)!, term_s = (-x)^k t^{2k+1} / (2k+1)!
    let mut term_c = 1.0;
    let mut term_s = t;
    for k in 0..=4u32 {
        c += term_c;
        s += term_s;
        let k = f64::from(k);
        term_c *= -x * t2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        term_s *= -x * t2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    (c, s)
}

/// `V(t) = e^{-iHt} = c·1 - i s H`.
pub fn evolution(p: &PTParams) -> Mat2 {
    let Kernel { c, s, .. } = kernel(p);
    let rs = p.r * s;
    Mat2::new(
        C64::new(c + rs, 0.0),
        C64::new(0.0, -s),
        C64::new(0.0, -s),
        C64::new(c - rs, 0.0),
    )
}

/// Singular values of `V(t)`: `σ₊ = a + |r s|` and, since `det V = 1`,
/// `σ₋ = 1/σ₊` (algebraically `a - |r s|`, without the cancellation).
pub fn singular_values(p: &PTParams) -> SingularPair {
    let k = kernel(p);
    let sigma_plus = k.a + (p.r * k.s).abs();
    let sigma_minus = 1.0 / sigma_plus;
    SingularPair { sigma_plus, sigma_minus, ratio: sigma_minus / sigma_plus }
}

/// `φ = atan2(s, c)` and `θ = -2 arccos(σ₋/σ₊)`.
///
/// The arccos is evaluated as `atan2(√(1 - ρ²), ρ)` with `1 - ρ = 2|rs|/σ₊`,
/// which is exact near `ρ = 1` where `acos` loses half the digits.
pub fn angles(p: &PTParams) -> Angles {
    let k = kernel(p);
    let sv = singular_values(p);
    let rho = sv.ratio.clamp(0.0, 1.0);
    let one_minus_rho = (2.0 * (p.r * k.s).abs() / sv.sigma_plus).clamp(0.0, 1.0);
    let half_theta = (one_minus_rho * (1.0 + rho)).sqrt().atan2(rho);
    Angles { phi: k.s.atan2(k.c), theta: -2.0 * half_theta }
}

/// `|⟨0|U(t)|0⟩|² = |V₀₀|² / σ₊²`.
pub fn return_probability(p: &PTParams) -> f64 {
    let k = kernel(p);
    let v00 = k.c + p.r * k.s;
    let sp = singular_values(p).sigma_plus;
    (v00 / sp).powi(2)
}

/// `|V₀₀|² / (|V₀₀|² + |V₁₀|²)`, independent of any rescaling of `V`.
pub fn postselected_population(p: &PTParams) -> f64 {
    postselected_from(&evolution(p))
}

/// Post-selected ground-state population for `|0⟩` evolved by any (possibly
/// rescaled) qubit operator.
pub fn postselected_from(v: &Mat2) -> f64 {
    let p0 = v.get(0, 0).norm_sqr();
    let p1 = v.get(1, 0).norm_sqr();
    p0 / (p0 + p1)
}

/// `⟨ψ|V†V|ψ⟩ / σ₊²`.
pub fn success_probability(p: &PTParams, psi: [C64; 2]) -> Result<f64> {
    let norm_sq = psi[0].norm_sqr() + psi[1].norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let out = evolution(p).apply(&psi);
    let sp = singular_values(p).sigma_plus;
    Ok((out[0].norm_sqr() + out[1].norm_sqr()) / (sp * sp))
}

/// `V(t)/λ`, refusing any `λ` that would leave an operator norm above one.
pub fn rescaled_evolution(p: &PTParams, lambda: f64) -> Result<Mat2> {
    let sigma_max = singular_values(p).sigma_plus;
    if !lambda.is_finite() || lambda < sigma_max - LAMBDA_SLACK {
        return Err(Error::LambdaTooSmall { lambda, sigma_max });
    }
    Ok(evolution(p).scale_re(1.0 / lambda))
}

//! The m = infinity crystal: limit-ratio eps/phi on window truncations of
//! infinite whirl products, the asymptotic operator e_k^c, and the phi/eps
//! update rules under one-sided Chevalley multiplication.
//!
//! This is the only module that works in floating point; the limit ratios
//! are genuine analytic limits, not rational functions.

use crate::error::{Error, Result};
use crate::poly::canon_color;
use serde::Serialize;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Finite window onto an n-periodic unipotent matrix: entries at offsets
/// 0..=width, unit main diagonal, f64 entries.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowMatrix {
    n: usize,
    diagonals: Vec<Vec<f64>>,
}

impl WindowMatrix {
    pub fn identity(n: usize, width: usize) -> Self {
        let mut diagonals = vec![vec![0.0; n]; width + 1];
        diagonals[0] = vec![1.0; n];
        WindowMatrix { n, diagonals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.diagonals.len() - 1
    }

    /// Entry (i, j) by residue reduction; zero outside the retained window.
    pub fn entry(&self, i: i64, j: i64) -> f64 {
        let d = j - i;
        if d < 0 || d as usize > self.width() {
            return 0.0;
        }
        self.diagonals[d as usize][canon_color(i, self.n) - 1]
    }

    /// Right-multiplies by the whirl M(x) in place, exact within the window.
    fn mul_whirl(&mut self, coords: &[f64]) {
        let n = self.n;
        for d in (1..=self.width()).rev() {
            for i in 1..=n as i64 {
                let sup = coords[canon_color(i + d as i64 - 1, n) - 1];
                self.diagonals[d][i as usize - 1] += self.diagonals[d - 1][i as usize - 1] * sup;
            }
        }
    }

    /// Left-multiplies by the Chevalley generator u_k(a).
    pub fn mul_chevalley_left(&mut self, k: i64, a: f64) {
        let n = self.n;
        let row = canon_color(k, n) - 1;
        let next = canon_color(k + 1, n) - 1;
        for d in 1..=self.width() {
            self.diagonals[d][row] += a * self.diagonals[d - 1][next];
        }
    }

    /// Right-multiplies by the Chevalley generator u_k(a).
    pub fn mul_chevalley_right(&mut self, k: i64, a: f64) {
        let n = self.n;
        for d in (1..=self.width()).rev() {
            for i in 1..=n as i64 {
                // column j = i + d picks up Y_{i,j-1} * a when j-1 = k mod n
                if canon_color(i + d as i64 - 1, n) == canon_color(k, n) {
                    self.diagonals[d][i as usize - 1] += a * self.diagonals[d - 1][i as usize - 1];
                }
            }
        }
    }

    fn check_finite(&self, context: &str) -> Result<()> {
        if self.diagonals.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Overflow(context.to_string()));
        }
        Ok(())
    }
}

/// An infinite sequence of whirl parameters with geometric decay:
/// x_i^{(s)} = a^{(s)} q^{i-1}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhirlStream {
    pub n: usize,
    pub amplitudes: Vec<f64>,
    pub decay: f64,
}

impl WhirlStream {
    pub fn new(amplitudes: Vec<f64>, decay: f64) -> Result<Self> {
        let n = amplitudes.len();
        if n < 2 {
            return Err(Error::InvalidInput("need n > 1 amplitudes".into()));
        }
        if amplitudes.iter().any(|&a| a <= 0.0) {
            return Err(Error::InvalidInput("amplitudes must be positive".into()));
        }
        if !(0.0..1.0).contains(&decay) {
            return Err(Error::InvalidInput("decay must satisfy 0 <= q < 1".into()));
        }
        Ok(WhirlStream { n, amplitudes, decay })
    }

    /// Coordinates of the i-th factor (1-based).
    pub fn factor(&self, i: usize) -> Vec<f64> {
        let scale = self.decay.powi(i as i32 - 1);
        self.amplitudes.iter().map(|a| a * scale).collect()
    }
}

/// Window of the product of the first N whirls of the stream.
pub fn truncated_product(stream: &WhirlStream, factors: usize, width: usize) -> Result<WindowMatrix> {
    if factors < width {
        return Err(Error::InvalidInput(format!(
            "need N >= W, got N = {factors}, W = {width}"
        )));
    }
    let mut y = WindowMatrix::identity(stream.n, width);
    for i in 1..=factors {
        y.mul_whirl(&stream.factor(i));
        y.check_finite("truncated whirl product")?;
    }
    Ok(y)
}

/// Window of the infinite-band unipotent element with geometric tail
/// ("curl"): y_{i,i+d} = z^{(i)} z^{(i+1)} ... z^{(i+d-1)}.
pub fn curl_window(tail: &[f64], width: usize) -> Result<WindowMatrix> {
    let n = tail.len();
    if n < 2 {
        return Err(Error::InvalidInput("need n > 1 tail parameters".into()));
    }
    if tail.iter().any(|&z| z <= 0.0) {
        return Err(Error::InvalidInput("tail parameters must be positive".into()));
    }
    let mut diagonals = vec![vec![0.0; n]; width + 1];
    for i in 0..n {
        diagonals[0][i] = 1.0;
        let mut prod = 1.0;
        for d in 1..=width {
            prod *= tail[(i + d - 1) % n];
            diagonals[d][i] = prod;
        }
    }
    Ok(WindowMatrix { n, diagonals })
}

/// Window of curl(z) * M(x_1) * ... * M(x_N) for a decaying whirl stream.
///
/// A finite whirl product alone has entries ~ q^{d(d-1)/2} at offset d, so
/// every adjacent-offset ratio decays geometrically to 0 and the limit
/// ratios degenerate. The geometric tail makes the ratio sequences converge
/// (super-geometrically) to positive limits, the regime where the limit
/// ratios are genuinely defined.
pub fn curl_whirl_window(
    tail: &[f64],
    stream: &WhirlStream,
    factors: usize,
    width: usize,
) -> Result<WindowMatrix> {
    if tail.len() != stream.n {
        return Err(Error::DimensionMismatch(format!(
            "tail has {} parameters, stream has n = {}",
            tail.len(),
            stream.n
        )));
    }
    let mut y = curl_window(tail, width)?;
    for i in 1..=factors {
        y.mul_whirl(&stream.factor(i));
    }
    y.check_finite("curl-whirl window")?;
    Ok(y)
}

/// A limit-ratio estimate with its convergence flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitRatios {
    pub eps: f64,
    pub phi: f64,
    pub converged: bool,
}

fn estimate(seq: &[f64], tol: f64) -> (f64, bool) {
    let value = *seq.last().unwrap();
    // three successive agreements guard against accidental coincidence
    let converged = seq.len() >= 4
        && seq.windows(2).rev().take(3).all(|w| {
            let scale = w[1].abs().max(w[0].abs());
            scale > 0.0 && (w[1] - w[0]).abs() / scale < tol
        });
    (value, converged)
}

/// Estimates the limit ratios eps_k and phi_k from a window, reading ratio
/// sequences out to the window width. phi uses the row pair (k, k+1) along
/// growing column offsets; eps reads the column pair (k, k+1) up the window,
/// which by periodicity equals the row-based limit.
pub fn limit_ratios(y: &WindowMatrix, k: i64, tol: f64) -> Result<LimitRatios> {
    let w = y.width();
    if w < 8 {
        return Err(Error::InvalidInput(format!("window width {w} < 8")));
    }
    let mut phi_seq = Vec::with_capacity(w);
    for d in 1..=w as i64 {
        let den = y.entry(k + 1, k + d);
        if den == 0.0 {
            return Err(Error::DivisionByZero(format!(
                "window entry ({}, {})",
                k + 1,
                k + d
            )));
        }
        phi_seq.push(y.entry(k, k + d) / den);
    }
    let mut eps_seq = Vec::with_capacity(w - 1);
    for d in 1..w as i64 {
        let den = y.entry(k - d, k);
        if den == 0.0 {
            return Err(Error::DivisionByZero(format!(
                "window entry ({}, {})",
                k - d,
                k
            )));
        }
        eps_seq.push(y.entry(k - d, k + 1) / den);
    }
    let (phi, phi_ok) = estimate(&phi_seq, tol);
    let (eps, eps_ok) = estimate(&eps_seq, tol);
    Ok(LimitRatios {
        eps,
        phi,
        converged: phi_ok && eps_ok,
    })
}

/// The asymptotic crystal operator e_k^c:
/// Y -> u_k((c-1) phi_k) Y u_k((c^{-1}-1) eps_k). Requires converged ratios.
pub fn asym_e(y: &WindowMatrix, k: i64, c: f64, tol: f64) -> Result<WindowMatrix> {
    if c == 0.0 {
        return Err(Error::InvalidInput("c must be nonzero".into()));
    }
    let ratios = limit_ratios(y, k, tol)?;
    if !ratios.converged {
        return Err(Error::NotConverged(format!("limit ratios at k = {k}")));
    }
    let mut out = y.clone();
    out.mul_chevalley_left(k, (c - 1.0) * ratios.phi);
    out.mul_chevalley_right(k, (1.0 / c - 1.0) * ratios.eps);
    out.check_finite("asymptotic crystal operator")?;
    Ok(out)
}

/// The phi family update under left multiplication by u_k(a):
/// phi_k += a, phi_{k-1} /= 1 + a/phi_k, others unchanged.
pub fn update_phi(phi: &[f64], k: i64, a: f64) -> Result<Vec<f64>> {
    let n = phi.len();
    let at_k = canon_color(k, n) - 1;
    let at_prev = canon_color(k - 1, n) - 1;
    if phi[at_k] == 0.0 {
        return Err(Error::DivisionByZero(format!("phi_{k}")));
    }
    let mut out = phi.to_vec();
    out[at_prev] = phi[at_prev] / (1.0 + a / phi[at_k]);
    out[at_k] = phi[at_k] + a;
    Ok(out)
}

/// The eps family update under right multiplication by u_k(a):
/// eps_k += a, eps_{k+1} /= 1 + a/eps_k, others unchanged.
pub fn update_eps(eps: &[f64], k: i64, a: f64) -> Result<Vec<f64>> {
    let n = eps.len();
    let at_k = canon_color(k, n) - 1;
    let at_next = canon_color(k + 1, n) - 1;
    if eps[at_k] == 0.0 {
        return Err(Error::DivisionByZero(format!("eps_{k}")));
    }
    let mut out = eps.to_vec();
    out[at_next] = eps[at_next] / (1.0 + a / eps[at_k]);
    out[at_k] = eps[at_k] + a;
    Ok(out)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    scale == 0.0 || (a - b).abs() / scale <= tol
}

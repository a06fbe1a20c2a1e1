//! Loop elementary symmetric functions, skew shapes, loop Schur functions
//! (tableaux sum and Jacobi-Trudi determinant), the energy function, corner
//! sets, and the crystal action on loop Schur values.

use crate::crystal::{product_stats, ProductPoint};
use crate::error::{Error, Result};
use crate::poly::{canon_color, LoopVarPoly, Monomial, VarId};
use crate::rational::Rat;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// The loop elementary symmetric function e_r^{(s)} in m variable groups:
/// the sum over 1 <= i_1 < ... < i_r <= m of x_{i_1}^{(s)} x_{i_2}^{(s+1)}
/// ... x_{i_r}^{(s+r-1)}. Returns 1 for r = 0 and 0 for r < 0 or r > m.
pub fn loop_e(r: i64, s: i64, n: usize, m: usize) -> LoopVarPoly {
    if r < 0 || r as usize > m {
        return LoopVarPoly::zero();
    }
    if r == 0 {
        return LoopVarPoly::one();
    }
    let r = r as usize;
    let mut out = LoopVarPoly::zero();
    for combo in (1..=m).combinations(r) {
        let mut mono = Monomial::one();
        for (t, &i) in combo.iter().enumerate() {
            mono = mono.mul(&Monomial::var(VarId::new(i, s + t as i64, n)));
        }
        out.add_term(mono, Rat::one());
    }
    out
}

/// A cell of a Young diagram, 1-based row and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    /// Content i - j (the negative of the usual convention).
    pub fn content(&self) -> i64 {
        self.row as i64 - self.col as i64
    }

    /// Color of the cell at superscript r: (i - j + r) mod n, canonical 1..=n.
    pub fn color(&self, r: i64, n: usize) -> usize {
        canon_color(self.content() + r, n)
    }
}

/// A skew shape lambda/mu, mu padded with zeros to the length of lambda.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewShape {
    lambda: Vec<usize>,
    mu: Vec<usize>,
}

impl SkewShape {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>) -> Result<Self> {
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("lambda not weakly decreasing".into()));
        }
        if lambda.iter().any(|&p| p == 0) {
            return Err(Error::InvalidInput("lambda parts must be positive".into()));
        }
        let mut mu = mu;
        if mu.len() > lambda.len() && mu[lambda.len()..].iter().any(|&p| p != 0) {
            return Err(Error::InvalidInput("mu longer than lambda".into()));
        }
        mu.resize(lambda.len(), 0);
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("mu not weakly decreasing".into()));
        }
        if lambda.iter().zip(&mu).any(|(l, m)| m > l) {
            return Err(Error::InvalidInput("mu not contained in lambda".into()));
        }
        Ok(SkewShape { lambda, mu })
    }

    pub fn straight(lambda: Vec<usize>) -> Result<Self> {
        SkewShape::new(lambda, vec![])
    }

    pub fn empty() -> Self {
        SkewShape { lambda: vec![], mu: vec![] }
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn rows(&self) -> usize {
        self.lambda.len()
    }

    pub fn size(&self) -> usize {
        self.lambda.iter().zip(&self.mu).map(|(l, m)| l - m).sum()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.lambda.len() && j > self.mu[i - 1] && j <= self.lambda[i - 1]
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for i in 1..=self.lambda.len() {
            for j in self.mu[i - 1] + 1..=self.lambda[i - 1] {
                out.push(Cell { row: i, col: j });
            }
        }
        out
    }

    /// Conjugate partition of lambda, padded to `len` entries.
    pub fn conjugate(parts: &[usize], len: usize) -> Vec<usize> {
        (1..=len)
            .map(|j| parts.iter().filter(|&&p| p >= j).count())
            .collect()
    }

    /// NW corners: cells whose north and west neighbors are outside the shape.
    pub fn nw_corners(&self) -> Vec<Cell> {
        self.cells()
            .into_iter()
            .filter(|c| {
                !(c.row > 1 && self.contains(c.row - 1, c.col))
                    && !(c.col > 1 && self.contains(c.row, c.col - 1))
            })
            .collect()
    }

    /// SE corners: cells whose south and east neighbors are outside the shape.
    pub fn se_corners(&self) -> Vec<Cell> {
        self.cells()
            .into_iter()
            .filter(|c| !self.contains(c.row + 1, c.col) && !self.contains(c.row, c.col + 1))
            .collect()
    }

    /// Removes NW corners (growing mu) and SE corners (shrinking lambda).
    /// The sets must be disjoint sets of actual corners.
    pub fn remove_corners(&self, nw: &[Cell], se: &[Cell]) -> Result<SkewShape> {
        let nw_all = self.nw_corners();
        let se_all = self.se_corners();
        if nw.iter().any(|c| !nw_all.contains(c)) {
            return Err(Error::InvalidInput("not an NW corner".into()));
        }
        if se.iter().any(|c| !se_all.contains(c)) {
            return Err(Error::InvalidInput("not an SE corner".into()));
        }
        if nw.iter().any(|c| se.contains(c)) {
            return Err(Error::InvalidInput("overlapping corner sets".into()));
        }
        let mut lambda = self.lambda.clone();
        let mut mu = self.mu.clone();
        for c in nw {
            mu[c.row - 1] += 1;
        }
        for c in se {
            lambda[c.row - 1] -= 1;
        }
        // drop trailing rows emptied down to lambda_i = 0
        while let Some(&last) = lambda.last() {
            if last == 0 {
                lambda.pop();
                mu.pop();
            } else {
                break;
            }
        }
        SkewShape::new(lambda, mu)
    }
}

/// The loop Schur function s^{(r)}_{lambda/mu} as a sum over semistandard
/// fillings with entries in 1..=m; the empty shape gives 1.
pub fn tableaux_schur(shape: &SkewShape, r: i64, n: usize, m: usize) -> LoopVarPoly {
    let cells = shape.cells();
    if cells.is_empty() {
        return LoopVarPoly::one();
    }
    let mut out = LoopVarPoly::zero();
    let mut filling: Vec<usize> = Vec::with_capacity(cells.len());
    fill(shape, &cells, &mut filling, r, n, m, &mut out);
    out
}

fn fill(
    shape: &SkewShape,
    cells: &[Cell],
    filling: &mut Vec<usize>,
    r: i64,
    n: usize,
    m: usize,
    out: &mut LoopVarPoly,
) {
    if filling.len() == cells.len() {
        let mut mono = Monomial::one();
        for (cell, &v) in cells.iter().zip(filling.iter()) {
            mono = mono.mul(&Monomial::var(VarId {
                factor: v,
                color: cell.color(r, n),
            }));
        }
        out.add_term(mono, Rat::one());
        return;
    }
    let cell = cells[filling.len()];
    let value_at = |i: usize, j: usize, filling: &[usize]| -> Option<usize> {
        let idx = cells
            .iter()
            .position(|c| c.row == i && c.col == j)
            .filter(|&idx| idx < filling.len())?;
        Some(filling[idx])
    };
    let mut lo = 1;
    if cell.col > 1 && shape.contains(cell.row, cell.col - 1) {
        if let Some(w) = value_at(cell.row, cell.col - 1, filling) {
            lo = lo.max(w); // rows weakly increase
        }
    }
    if cell.row > 1 && shape.contains(cell.row - 1, cell.col) {
        if let Some(nv) = value_at(cell.row - 1, cell.col, filling) {
            lo = lo.max(nv + 1); // columns strictly increase
        }
    }
    for v in lo..=m {
        filling.push(v);
        fill(shape, cells, filling, r, n, m, out);
        filling.pop();
    }
}

/// Exact determinant of a square matrix of polynomials: cofactor expansion
/// for order <= 5, fraction-free (Bareiss) elimination above.
pub fn poly_det(matrix: &[Vec<LoopVarPoly>]) -> LoopVarPoly {
    let size = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == size));
    if size == 0 {
        return LoopVarPoly::one();
    }
    if size <= 5 {
        cofactor_det(matrix)
    } else {
        bareiss_det(matrix.to_vec())
    }
}

fn cofactor_det(matrix: &[Vec<LoopVarPoly>]) -> LoopVarPoly {
    let size = matrix.len();
    if size == 1 {
        return matrix[0][0].clone();
    }
    let mut det = LoopVarPoly::zero();
    for col in 0..size {
        if matrix[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LoopVarPoly>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &matrix[0][col] * &cofactor_det(&minor);
        det = if col % 2 == 0 { det + term } else { det - term };
    }
    det
}

fn bareiss_det(mut a: Vec<Vec<LoopVarPoly>>) -> LoopVarPoly {
    let size = a.len();
    let mut sign = false;
    let mut prev = LoopVarPoly::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return LoopVarPoly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev).expect("Bareiss divisibility");
            }
            a[i][k] = LoopVarPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// The loop Schur function via the Jacobi-Trudi determinant
/// det(e_{lambda'_i - mu'_j - i + j}^{(r - j + 1 + mu'_j)}).
pub fn jacobi_trudi_schur(shape: &SkewShape, r: i64, n: usize, m: usize) -> LoopVarPoly {
    let order = shape.lambda().first().copied().unwrap_or(0);
    if order == 0 {
        return LoopVarPoly::one();
    }
    let lam_c = SkewShape::conjugate(shape.lambda(), order);
    let mu_c = SkewShape::conjugate(shape.mu(), order);
    let matrix: Vec<Vec<LoopVarPoly>> = (1..=order)
        .map(|i| {
            (1..=order)
                .map(|j| {
                    let deg = lam_c[i - 1] as i64 - mu_c[j - 1] as i64 - i as i64 + j as i64;
                    let color = r - j as i64 + 1 + mu_c[j - 1] as i64;
                    loop_e(deg, color, n, m)
                })
                .collect()
        })
        .collect();
    poly_det(&matrix)
}

/// Dilated staircase shape (n-1) * delta_{m-1}; empty for m = 1.
pub fn energy_shape(n: usize, m: usize) -> SkewShape {
    if m <= 1 {
        return SkewShape::empty();
    }
    let lambda = (1..m).rev().map(|p| p * (n - 1)).collect();
    SkewShape::straight(lambda).expect("staircase is a partition")
}

/// The birational energy function: s^{(0)} of the dilated staircase.
pub fn energy(n: usize, m: usize) -> LoopVarPoly {
    tableaux_schur(&energy_shape(n, m), 0, n, m)
}

/// NW corners of color k and SE corners of color kb (at superscript r, mod n).
pub fn corner_sets(
    shape: &SkewShape,
    r: i64,
    n: usize,
    k: i64,
    kb: i64,
) -> (Vec<Cell>, Vec<Cell>) {
    let k = canon_color(k, n);
    let kb = canon_color(kb, n);
    let a = shape
        .nw_corners()
        .into_iter()
        .filter(|c| c.color(r, n) == k)
        .collect();
    let b = shape
        .se_corners()
        .into_iter()
        .filter(|c| c.color(r, n) == kb)
        .collect();
    (a, b)
}

/// The value of (e_k^c)* s^{(r)}_{lambda/mu} at x, by the corner-removal sum:
/// sum over disjoint NW subsets A (color k) and SE subsets B (color k+m) of
/// ((c^{-1}-1) eps_k)^{|B|} ((c-1) phi_k)^{|A|} s^{(r)}_{lambda/mu - A - B}.
pub fn schur_pushforward(
    shape: &SkewShape,
    r: i64,
    k: i64,
    c: &Rat,
    x: &ProductPoint,
) -> Result<Rat> {
    let n = x.n();
    let m = x.m();
    let stats = product_stats(x, k)?;
    let (a_set, b_set) = corner_sets(shape, r, n, k, k + m as i64);
    let phi_scale = &(c - &Rat::one()) * &stats.phi;
    let eps_scale = &(&c.recip() - &Rat::one()) * &stats.eps;
    let assignment = x.assignment();
    let mut total = Rat::zero();
    for a_mask in 0..(1u32 << a_set.len()) {
        let a: Vec<Cell> = a_set
            .iter()
            .enumerate()
            .filter(|(i, _)| a_mask >> i & 1 == 1)
            .map(|(_, c)| *c)
            .collect();
        for b_mask in 0..(1u32 << b_set.len()) {
            let b: Vec<Cell> = b_set
                .iter()
                .enumerate()
                .filter(|(i, _)| b_mask >> i & 1 == 1)
                .map(|(_, c)| *c)
                .collect();
            if a.iter().any(|c| b.contains(c)) {
                continue;
            }
            let reduced = shape.remove_corners(&a, &b)?;
            let value = tableaux_schur(&reduced, r, n, m).eval(&assignment)?;
            total += eps_scale.pow(b.len() as u32) * phi_scale.pow(a.len() as u32) * value;
        }
    }
    Ok(total)
}

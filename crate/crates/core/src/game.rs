//! Zero-sum matrix games: exact values by linear programming and
//! multiplicative-weights updates for the row player.
//!
//! Matrices are indexed `loss[row][col]`; the column player (the minimizer)
//! pays `loss[row][col]` to the row player.

use crate::error::{Error, Result};

const EPS: f64 = 1e-12;

/// Maximizes `c.z` subject to `a z <= b`, `z >= 0`, for `b >= 0`, using a
/// dense tableau and Bland's rule. Returns the optimal `z`.
pub fn simplex_max(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<Vec<f64>> {
    let rows = a.len();
    let cols = c.len();
    if b.len() != rows || a.iter().any(|r| r.len() != cols) {
        return Err(Error::Precondition("inconsistent linear program dimensions".into()));
    }
    if b.iter().any(|&x| x < 0.0) {
        return Err(Error::Precondition("right-hand side must be non-negative".into()));
    }
    let width = cols + rows + 1;
    let mut t: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = vec![0.0; width];
            row[..cols].copy_from_slice(r);
            row[cols + i] = 1.0;
            row[width - 1] = b[i];
            row
        })
        .collect();
    let mut obj = vec![0.0; width];
    for (j, &cj) in c.iter().enumerate() {
        obj[j] = -cj;
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    loop {
        let Some(enter) = (0..width - 1).find(|&j| obj[j] < -EPS) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..rows {
            if t[i][enter] > EPS {
                let ratio = t[i][width - 1] / t[i][enter];
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let best = t[l][width - 1] / t[l][enter];
                        ratio < best - EPS || (ratio <= best + EPS && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            return Err(Error::Precondition("linear program is unbounded".into()));
        };
        let pivot = t[l][enter];
        t[l].iter_mut().for_each(|v| *v /= pivot);
        let pivot_row = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && row[enter].abs() > EPS {
                let f = row[enter];
                row.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
            }
        }
        let f = obj[enter];
        obj.iter_mut().zip(&pivot_row).for_each(|(v, p)| *v -= f * p);
        basis[l] = enter;
    }
    let mut z = vec![0.0; cols];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < cols {
            z[bv] = t[i][width - 1];
        }
    }
    Ok(z)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedStrategy {
    /// Probability of each column.
    pub mixture: Vec<f64>,
    /// Largest expected loss over rows under `mixture`.
    pub value: f64,
}

/// Worst-row expected loss of a column mixture.
pub fn max_row_loss(loss: &[Vec<f64>], mixture: &[f64]) -> f64 {
    loss.iter()
        .map(|row| row.iter().zip(mixture).map(|(l, p)| l * p).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Optimal minimizing mixture for a matrix with entries in `[0, 1]`.
pub fn solve_lp(loss: &[Vec<f64>]) -> Result<MixedStrategy> {
    let cols = loss.first().map_or(0, Vec::len);
    if loss.is_empty() || cols == 0 {
        return Err(Error::Precondition("game needs at least one row and one column".into()));
    }
    // shift to strictly positive payoffs; then max 1.z s.t. (L + 1) z <= 1
    let shifted: Vec<Vec<f64>> = loss.iter().map(|r| r.iter().map(|v| v + 1.0).collect()).collect();
    let z = simplex_max(&shifted, &vec![1.0; loss.len()], &vec![1.0; cols])?;
    let total: f64 = z.iter().sum();
    if total <= EPS {
        return Err(Error::Verification("degenerate linear program solution".into()));
    }
    let mixture: Vec<f64> = z.iter().map(|v| v / total).collect();
    let value = max_row_loss(loss, &mixture);
    Ok(MixedStrategy { mixture, value })
}

/// Multiplicative weights over rows. Each round the column player best
/// responds; the average of the responses approaches the game value.
#[derive(Clone, Debug)]
pub struct Mwu {
    weights: Vec<f64>,
    eta: f64,
}

impl Mwu {
    pub fn new(rows: usize, eta: f64) -> Self {
        Mwu { weights: vec![1.0; rows], eta }
    }

    /// Step size tuned for `rounds` rounds on `rows` rows.
    pub fn tuned(rows: usize, rounds: usize) -> Self {
        let eta = (8.0 * (rows.max(2) as f64).ln() / rounds.max(1) as f64).sqrt();
        Mwu::new(rows, eta)
    }

    pub fn distribution(&self) -> Vec<f64> {
        let total: f64 = self.weights.iter().sum();
        self.weights.iter().map(|w| w / total).collect()
    }

    /// Rows the column player failed on gain weight.
    pub fn update(&mut self, losses: &[f64]) {
        for (w, l) in self.weights.iter_mut().zip(losses) {
            *w *= (self.eta * l).exp();
        }
        let max = self.weights.iter().cloned().fold(0.0, f64::max);
        self.weights.iter_mut().for_each(|w| *w /= max);
    }
}

/// MWU on an explicit matrix: returns the averaged best responses.
pub fn solve_mwu(loss: &[Vec<f64>], rounds: usize) -> Result<MixedStrategy> {
    let cols = loss.first().map_or(0, Vec::len);
    if loss.is_empty() || cols == 0 {
        return Err(Error::Precondition("game needs at least one row and one column".into()));
    }
    let mut mwu = Mwu::tuned(loss.len(), rounds);
    let mut counts = vec![0usize; cols];
    for _ in 0..rounds.max(1) {
        let q = mwu.distribution();
        let weighted = |j: usize| loss.iter().zip(&q).map(|(r, qi)| r[j] * qi).sum::<f64>();
        let best = (0..cols).min_by(|&a, &b| weighted(a).total_cmp(&weighted(b))).unwrap();
        counts[best] += 1;
        let column: Vec<f64> = loss.iter().map(|r| r[best]).collect();
        mwu.update(&column);
    }
    let total = counts.iter().sum::<usize>() as f64;
    let mixture: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    let value = max_row_loss(loss, &mixture);
    Ok(MixedStrategy { mixture, value })
}

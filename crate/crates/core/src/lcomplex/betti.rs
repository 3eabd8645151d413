use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::lmodule::l_module;
use super::series::{Series, SeriesPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pair::KoszulPair;

/// `β_{n,n+a}(𝔪^a) = Σ_{i=1}^a (-1)^{i+1} dim A^!_{n+i} · dim A_{a-i}`.
pub fn betti_formula<F: Field>(pair: &KoszulPair<F>, n: usize, a: usize) -> Result<usize> {
    pair.require(n + a)?;
    let dual = |k: usize| pair.dual().dim(k) as i64;
    let alg = |k: usize| pair.algebra().dim(k) as i64;
    let sum: i64 = (1..=a)
        .map(|i| {
            let s = if i % 2 == 1 { 1 } else { -1 };
            s * dual(n + i) * alg(a - i)
        })
        .sum();
    usize::try_from(sum)
        .map_err(|_| Error::InvariantViolation(format!("negative Betti number {sum} at n={n}, a={a}")))
}

/// `β_{n,n+a}(𝔪^a)` as the rank of `L_{n,a}`.
pub fn betti_oracle<F: Field>(pair: &KoszulPair<F>, n: usize, a: usize) -> Result<usize> {
    Ok(l_module(pair, n, a)?.rank())
}

/// `β_{n,n+a-1}(A/𝔪^a)`; `β_{0,0} = 1`.
pub fn betti_quotient<F: Field>(pair: &KoszulPair<F>, n: usize, a: usize) -> Result<usize> {
    if n == 0 {
        return Ok(1);
    }
    betti_formula(pair, n - 1, a)
}

/// `−(−z)^{−a} H_{A^!}(yz) H_{A/𝔪^a}(−yz)`, exact for `y`-degree `<= n_max + a`.
///
/// The coefficient of `z^n y^{n+a}` is `β_{n,n+a}(𝔪^a)`; the expansion also
/// carries the polar term `−(−1)^a z^{−a}` coming from the constant term.
pub fn poincare_coeffs<F: Field>(pair: &KoszulPair<F>, a: usize, n_max: usize) -> Result<SeriesPoly> {
    let order = n_max + a + 1;
    pair.require(order - 1)?;
    let dual = Series::new((0..order).map(|k| pair.dual().dim(k) as i64).collect());
    let quot = Series::polynomial((0..a).map(|k| pair.algebra().dim(k) as i64).collect(), order);
    let prod = dual.mul(&quot.negate_variable());
    let sign = if a % 2 == 0 { -1 } else { 1 };
    Ok(SeriesPoly::from_diagonal(&prod, sign, -(a as i64)))
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Compares the two expressions for `β_{n,n+a}(𝔪^a)` over `k[x_1..x_d]/(x_i^2)`:
/// the general formula with `dim A^!_m = C(m+d-1, d-1)`, `dim A_j = C(d, j)`,
/// and `Σ_{i=a-d}^{0} (-1)^i C(n+i+d-1, d-1) C(d, a-i)`.
pub fn squarefree_identity_check(d: usize, a: usize, n: usize) -> bool {
    if a == 0 || a > d {
        return false;
    }
    let (d, a, n) = (d as i64, a as i64, n as i64);
    let sign = |i: i64| if i.rem_euclid(2) == 0 { 1 } else { -1 };
    let general: i64 = (1..=a).map(|i| -sign(i) * binom(n + i + d - 1, d - 1) * binom(d, a - i)).sum();
    let compact: i64 = (a - d..=0).map(|i| sign(i) * binom(n + i + d - 1, d - 1) * binom(d, a - i)).sum();
    general == compact
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BettiEntry {
    pub n: usize,
    pub j: usize,
    pub beta: usize,
}

/// Graded Betti numbers `β_{n,j}` of `𝔪^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub power: usize,
    pub entries: Vec<BettiEntry>,
    pub linear: bool,
}

impl BettiTable {
    pub fn new(power: usize, mut entries: Vec<BettiEntry>) -> Self {
        entries.sort();
        let linear = entries.iter().all(|e| e.beta == 0 || e.j == e.n + power);
        BettiTable { power, entries, linear }
    }

    /// The `a`-linear table with `β_{n,n+a} = betas[n]`.
    pub fn linear(power: usize, betas: &[usize]) -> Self {
        Self::new(
            power,
            betas.iter().enumerate().map(|(n, &beta)| BettiEntry { n, j: n + power, beta }).collect(),
        )
    }

    pub fn get(&self, n: usize, j: usize) -> usize {
        self.entries.iter().find(|e| e.n == n && e.j == j).map_or(0, |e| e.beta)
    }

    /// `β_{n,n+a}` for each stored `n`.
    pub fn diagonal(&self) -> Vec<usize> {
        let max_n = self.entries.iter().map(|e| e.n).max();
        max_n.map_or_else(Vec::new, |m| (0..=m).map(|n| self.get(n, n + self.power)).collect())
    }
}

impl fmt::Display for BettiTable {
    /// Rows are `j - n`, columns are `n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_n = self.entries.iter().map(|e| e.n).max().unwrap_or(0);
        let rows: BTreeSet<usize> = self.entries.iter().map(|e| e.j - e.n).collect();
        let cell = |s: String, w: usize| format!("{s:>w$}");
        let total: Vec<usize> = (0..=max_n)
            .map(|n| self.entries.iter().filter(|e| e.n == n).map(|e| e.beta).sum())
            .collect();
        let width = total.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(max_n.to_string().len());
        let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(1).max(6);
        write!(f, "{}", cell(String::new(), label))?;
        for n in 0..=max_n {
            write!(f, " {}", cell(n.to_string(), width))?;
        }
        writeln!(f)?;
        write!(f, "{}", cell("total:".into(), label))?;
        for t in &total {
            write!(f, " {}", cell(t.to_string(), width))?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{}", cell(format!("{r}:"), label))?;
            for n in 0..=max_n {
                let b = self.get(n, n + r);
                let s = if b == 0 { ".".to_string() } else { b.to_string() };
                write!(f, " {}", cell(s, width))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

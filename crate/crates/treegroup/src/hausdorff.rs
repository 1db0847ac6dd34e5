//! Log-orders of level quotients, the series of obstructions and
//! Hausdorff-dimension estimates relative to the group of σ-power portraits.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, Result};
use crate::groups::{exact_log, GroupSpec, LevelQuotient, QuotientOptions};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn pow(m: usize, k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(m).pow(k as u32))
}

/// log_m |G/St(n)| for n = 0..=N and the obstructions o(0..N−1), with
/// o(0) = −1 and o(n) = m·L(n−1) − L(n) where L(n) = log(n+1) − log(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionSeries {
    pub m: usize,
    pub log_orders: Vec<BigRational>,
    pub o: Vec<BigRational>,
}

impl ObstructionSeries {
    pub fn from_log_orders(m: usize, log_orders: Vec<BigRational>) -> Result<ObstructionSeries> {
        if log_orders.first().is_none_or(|x| !x.is_zero()) {
            return input("log-orders must start with log |G/St(0)| = 0");
        }
        let steps: Vec<BigRational> = log_orders.windows(2).map(|w| &w[1] - &w[0]).collect();
        let mut o = Vec::with_capacity(steps.len());
        if !steps.is_empty() {
            o.push(int(-1));
        }
        for n in 1..steps.len() {
            o.push(int(m as i64) * &steps[n - 1] - &steps[n]);
        }
        Ok(ObstructionSeries { m, log_orders, o })
    }

    /// Largest N for which the partial estimate is available.
    pub fn max_estimate_level(&self) -> Option<usize> {
        self.o.len().checked_sub(1).filter(|&n| n >= 1)
    }

    pub fn is_integral(&self) -> bool {
        self.log_orders.iter().chain(&self.o).all(|x| x.is_integer())
    }

    /// The log-orders rebuilt from o and the first step log |G/St(1)|.
    pub fn reconstruct(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero()];
        if self.log_orders.len() < 2 {
            return out;
        }
        let mut step = &self.log_orders[1] - &self.log_orders[0];
        out.push(step.clone());
        for n in 1..self.o.len() {
            step = int(self.m as i64) * &step - &self.o[n];
            let next = out.last().unwrap() + &step;
            out.push(next);
        }
        out
    }

    /// (n, order, log, o(n), estimate(n)) rows.
    pub fn report(&self) -> Vec<ReportRow> {
        (0..self.log_orders.len())
            .map(|n| {
                let log = &self.log_orders[n];
                let order = if log.is_integer() && !log.is_negative() {
                    BigUint::from(self.m).pow(log.to_integer().to_u32().unwrap_or(u32::MAX)).to_string()
                } else {
                    format!("{}^({log})", self.m)
                };
                let estimate = (n >= 1 && n < self.o.len()).then(|| dimension_estimate(self, n).expect("in range"));
                ReportRow {
                    n,
                    order,
                    log_order: log.to_string(),
                    obstruction: self.o.get(n).map(ToString::to_string),
                    estimate_f64: estimate.as_ref().and_then(ToPrimitive::to_f64),
                    estimate: estimate.map(|e| e.to_string()),
                }
            })
            .collect()
    }
}

/// One line of a Hausdorff report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub order: String,
    pub log_order: String,
    pub obstruction: Option<String>,
    pub estimate: Option<String>,
    pub estimate_f64: Option<f64>,
}

/// Whether every label of every generator is a power of σ.
pub fn has_cyclic_labels(g: &GroupSpec) -> bool {
    g.generators().all(|h| h.states().iter().all(|st| st.perm.shift_exponent().is_some()))
}

/// Exact log-orders of G/St(n) for n = 0..=levels.
pub fn log_orders(g: &GroupSpec, levels: usize, opts: QuotientOptions) -> Result<Vec<BigRational>> {
    if !has_cyclic_labels(g) {
        return input("some label is not a power of σ; dimensions relative to other ambient groups are not supported");
    }
    let gens: Vec<_> = g.generators().cloned().collect();
    let q = LevelQuotient::generated(g.m(), levels, &gens, opts)?;
    q.orders_by_level(&gens, opts)?
        .iter()
        .map(|x| match exact_log(x, g.m()) {
            Some(k) => Ok(BigRational::from_integer(BigInt::from(k))),
            None => input(format!("order {x} is not a power of {}", g.m())),
        })
        .collect()
}

/// The obstruction series from quotients up to level `levels`.
pub fn obstruction_series(g: &GroupSpec, levels: usize, opts: QuotientOptions) -> Result<ObstructionSeries> {
    ObstructionSeries::from_log_orders(g.m(), log_orders(g, levels, opts)?)
}

/// 1 − Σ_{i=1}^{N} (m^{−i} − m^{−(N+1)}) o(i).
pub fn dimension_estimate(series: &ObstructionSeries, n: usize) -> Result<BigRational> {
    if n == 0 || n >= series.o.len() {
        return input(format!("estimate at {n} needs obstructions o(1..={n})"));
    }
    let tail = pow(series.m, n + 1).recip();
    let mut acc = BigRational::one();
    for i in 1..=n {
        acc -= (pow(series.m, i).recip() - &tail) * &series.o[i];
    }
    Ok(acc)
}

/// (m−1)·log_m|G/St(n)| / m^n.
pub fn level_ratio(series: &ObstructionSeries, n: usize) -> Result<BigRational> {
    match series.log_orders.get(n) {
        Some(l) => Ok(int(series.m as i64 - 1) * l / pow(series.m, n)),
        None => input(format!("no log-order at level {n}")),
    }
}

/// o_B(n) for B = bp_s(G), n = 0..=n_max: o_G(n/s) when s divides n,
/// otherwise 0.
pub fn predicted_bp_obstructions(o_g: &[BigRational], s: usize, n_max: usize) -> Result<Vec<BigRational>> {
    if s == 0 {
        return input("s must be at least 1");
    }
    if o_g.is_empty() || n_max / s >= o_g.len() {
        return input(format!("predicting up to {n_max} needs o_G up to {}", n_max / s));
    }
    Ok((0..=n_max)
        .map(|n| if n == 0 { int(-1) } else if n % s == 0 { o_g[n / s].clone() } else { BigRational::zero() })
        .collect())
}

/// m(m^{s−1} − 1)/(m^s − 1), the dimension of bp_s(O_m^d).
pub fn closed_form_generalised(m: usize, s: usize) -> BigRational {
    let m_r = int(m as i64);
    let num = &m_r * (pow(m, s.saturating_sub(1)) - BigRational::one());
    num / (pow(m, s) - BigRational::one())
}

/// Rank over F_p of the p×p circulant matrix of (0, e_1, …, e_{p−1}).
pub fn circulant_rank(p: usize, e: &[usize]) -> Result<usize> {
    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
        return input(format!("{p} is not prime"));
    }
    if e.len() != p - 1 {
        return input(format!("vector has {} entries, expected {}", e.len(), p - 1));
    }
    let first: Vec<usize> = std::iter::once(0).chain(e.iter().map(|x| x % p)).collect();
    let mut rows: Vec<Vec<usize>> = (0..p).map(|k| (0..p).map(|c| first[(c + p - k) % p]).collect()).collect();
    Ok(rank_mod_p(&mut rows, p))
}

fn inverse_mod(x: usize, p: usize) -> usize {
    (1..p).find(|y| x * y % p == 1).expect("nonzero residue modulo a prime")
}

fn rank_mod_p(rows: &mut [Vec<usize>], p: usize) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inverse_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// t(p−1)/p².
pub fn ggs_dimension(p: usize, t: usize) -> BigRational {
    int((t * (p - 1)) as i64) / pow(p, 2)
}

/// (p^{s−1} − 1)/p^{s−1} + t(p^s − 1)/p^{2s}.
pub fn ggs_bp_dimension(p: usize, t: usize, s: usize) -> BigRational {
    let a = (pow(p, s - 1) - BigRational::one()) / pow(p, s - 1);
    let b = int(t as i64) * (pow(p, s) - BigRational::one()) / pow(p, 2 * s);
    a + b
}

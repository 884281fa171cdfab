//! Wall-crossing transforms of stability parameters and dimension vectors,
//! and mutation of configuration states.
//!
//! A state carries two unimodular integer matrices. `chart` sends a
//! stability vector in the state's own coordinates to original coordinates,
//! so the state's `C_+` pulls back to the cone spanned by the columns of
//! `chart`. `inverse` is its inverse; its rows are the inequalities cutting
//! that cone out: `{θ : inverse · θ > 0}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knitting::{knit, Configuration, ExchangeData};
use crate::linalg::IntMatrix;

/// Stability parameter `(ϑ_1, ..., ϑ_r)`; `ϑ_0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StabilityVector(#[serde(with = "crate::rational::vec")] pub Vec<BigRational>);

impl StabilityVector {
    pub fn from_integers(v: &[i64]) -> Self {
        StabilityVector(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Dimension vector `(β_0; β_1, ..., β_r)` including the vertex-0 entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(pub Vec<i64>);

impl DimensionVector {
    /// The rank vector: 1 at vertex 0 and δ of each slot's vertex.
    pub fn rk(config: &Configuration) -> Self {
        let mut v = vec![1i64];
        v.extend(config.slot_deltas().into_iter().map(i64::from));
        DimensionVector(v)
    }
}

fn check_exchange(config: &Configuration, b: &ExchangeData) -> Result<()> {
    if b.pivot_slot >= config.len() || config.vertex(b.pivot_slot) != b.pivot_vertex {
        return Err(Error::Argument(format!(
            "exchange data for slot {} does not belong to {config:?}",
            b.pivot_slot + 1
        )));
    }
    Ok(())
}

/// `(νϑ)_t = ϑ_t + b_t ϑ_i` for `t ≠ i`, `(νϑ)_i = -ϑ_i`.
pub fn nu_theta(config: &Configuration, b: &ExchangeData, theta: &StabilityVector) -> Result<StabilityVector> {
    check_exchange(config, b)?;
    if theta.len() != config.len() {
        return Err(Error::Argument(format!(
            "stability vector has {} entries, configuration has {} slots",
            theta.len(),
            config.len()
        )));
    }
    let i = b.pivot_slot;
    let coeffs = b.slot_coefficients(config);
    let pivot = theta.0[i].clone();
    let out = theta
        .0
        .iter()
        .enumerate()
        .map(|(t, x)| {
            if t == i {
                -x.clone()
            } else {
                x + BigRational::from_integer(BigInt::from(coeffs[t])) * &pivot
            }
        })
        .collect();
    Ok(StabilityVector(out))
}

/// `(νβ)_i = Σ_{j≠i} b_j β_j - β_i` (the sum includes `b_0 β_0`); other
/// entries are unchanged.
pub fn nu_beta(config: &Configuration, b: &ExchangeData, beta: &DimensionVector) -> Result<DimensionVector> {
    check_exchange(config, b)?;
    if beta.0.len() != config.len() + 1 {
        return Err(Error::Argument(format!(
            "dimension vector has {} entries, expected {}",
            beta.0.len(),
            config.len() + 1
        )));
    }
    let i = b.pivot_slot;
    let coeffs = b.slot_coefficients(config);
    let mut sum = b.coefficient(0) as i64 * beta.0[0];
    for (t, &c) in coeffs.iter().enumerate() {
        if t != i {
            sum += c as i64 * beta.0[t + 1];
        }
    }
    let value = sum - beta.0[i + 1];
    if value < 0 {
        return Err(Error::Domain { slot: i + 1, value });
    }
    let mut out = beta.0.clone();
    out[i + 1] = value;
    Ok(DimensionVector(out))
}

/// `Σ_{t≥0} ϑ_t β_t` with `ϑ_0 = -Σ δ_k ϑ_k` reconstructed from `config`.
pub fn pairing(config: &Configuration, theta: &StabilityVector, beta: &DimensionVector) -> Result<BigRational> {
    if theta.len() != config.len() || beta.0.len() != config.len() + 1 {
        return Err(Error::Argument("pairing length mismatch".into()));
    }
    let big = |x: i64| BigRational::from_integer(BigInt::from(x));
    let deltas = config.slot_deltas();
    let theta0: BigRational = -theta
        .0
        .iter()
        .zip(&deltas)
        .map(|(t, &d)| t * big(d as i64))
        .sum::<BigRational>();
    let mut total = theta0 * big(beta.0[0]);
    for (t, x) in theta.0.iter().enumerate() {
        total += x * big(beta.0[t + 1]);
    }
    Ok(total)
}

/// Matrix of `nu_theta`: identity except column `i`, which holds `b_t`
/// off the diagonal and `-1` on it.
pub fn exchange_matrix(config: &Configuration, b: &ExchangeData) -> IntMatrix {
    let r = config.len();
    let i = b.pivot_slot;
    let coeffs = b.slot_coefficients(config);
    let mut rows = IntMatrix::identity(r).rows().to_vec();
    for (t, row) in rows.iter_mut().enumerate() {
        row[i] = if t == i { -1 } else { coeffs[t] as i64 };
    }
    IntMatrix::from_rows(rows).expect("square by construction")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MutationState {
    pub config: Configuration,
    pub chart: IntMatrix,
    pub inverse: IntMatrix,
    pub word: Vec<usize>,
}

impl MutationState {
    pub fn initial(config: Configuration) -> Self {
        let r = config.len();
        Self {
            config,
            chart: IntMatrix::identity(r),
            inverse: IntMatrix::identity(r),
            word: Vec::new(),
        }
    }

    /// Whether `theta` (original coordinates) lies in this state's pulled-back `C_+`.
    pub fn contains(&self, theta: &[BigRational]) -> bool {
        self.inverse.rows().iter().all(|row| {
            let v: BigRational = row
                .iter()
                .zip(theta)
                .map(|(&c, x)| BigRational::from_integer(BigInt::from(c)) * x)
                .sum();
            v > BigRational::zero()
        })
    }
}

pub fn mutate(state: &MutationState, slot: usize) -> Result<MutationState> {
    mutate_with_exchange(state, slot).map(|(s, _)| s)
}

pub fn mutate_with_exchange(state: &MutationState, slot: usize) -> Result<(MutationState, ExchangeData)> {
    let exchange = knit(&state.config, slot)?;
    let step = exchange_matrix(&state.config, &exchange);
    let config = state.config.with_vertex(slot, exchange.new_vertex)?;
    let mut word = state.word.clone();
    word.push(slot);
    let next = MutationState {
        config,
        chart: state.chart.mul(&step),
        inverse: step.mul(&state.inverse),
        word,
    };
    Ok((next, exchange))
}

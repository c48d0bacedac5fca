use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::Rational;
use crate::arith::divisor_profiles;
use crate::error::Result;

/// Number of cyclic codes of length `n` whose hull has each 2-dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimCountTable {
    pub n: u64,
    /// Nonzero counts only, keyed by 2-dimension. Serialized as decimal
    /// strings since they outgrow every fixed-width integer.
    #[serde(serialize_with = "counts_as_strings")]
    pub counts: BTreeMap<u64, BigUint>,
}

fn counts_as_strings<S: Serializer>(
    counts: &BTreeMap<u64, BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(counts.iter().map(|(l, c)| (l, c.to_string())))
}

impl DimCountTable {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.keys().copied()
    }

    pub fn get(&self, dim2: u64) -> BigUint {
        self.counts.get(&dim2).cloned().unwrap_or_default()
    }

    /// Count-weighted mean 2-dimension.
    pub fn mean(&self) -> Rational {
        let weighted: BigUint = self.counts.iter().map(|(&l, c)| c * BigUint::from(l)).sum();
        Rational::from_biguints(weighted, self.total())
    }
}

/// Multiply `acc` by `sum_k weights[k] x^(k step)`, truncating at `acc.len()`.
fn mul_sparse(acc: &[BigUint], weights: &[u32], step: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); acc.len()];
    for (i, c) in acc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (k, &w) in weights.iter().enumerate() {
            let idx = i + k * step;
            if idx < out.len() {
                out[idx] += c * w;
            }
        }
    }
    out
}

/// Histogram of hull 2-dimensions over all `3^(s + 2t)` codes.
///
/// Each self-reciprocal factor of degree `d` contributes `2 + x^d`; each
/// member of a reciprocal pair of degree `d` contributes `2 + 4x^d + 3x^2d`.
pub fn count_by_dim2(n: u64) -> Result<DimCountTable> {
    let profiles = divisor_profiles(n)?;
    let mut acc = vec![BigUint::zero(); 2 * n as usize + 1];
    acc[0] = BigUint::one();
    for p in &profiles.profiles {
        let d = p.ord2 as usize;
        for _ in 0..p.gamma {
            acc = mul_sparse(&acc, &[2, 1], d);
        }
        for _ in 0..p.beta {
            acc = mul_sparse(&acc, &[2, 4, 3], d);
        }
    }
    let counts = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l as u64, c))
        .collect();
    Ok(DimCountTable { n, counts })
}

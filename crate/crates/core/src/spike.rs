//! Tipless spikes as rank oracles.
//!
//! A rank-n spike has legs {a_i, b_i}: every union of j < n full legs has
//! rank j + 1, every pair of legs is a 4-element circuit, and the only other
//! non-spanning circuits are designated transversals of the legs. A spike is
//! determined by its family of dependent transversals, any family in which
//! no two members differ in exactly one leg.
//!
//! Transversals are encoded as n-bit masks (bit i set means leg i+1
//! contributes b_{i+1}), so the one-leg-difference condition is a Hamming
//! distance check.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldElement, FieldMatrix, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpikeError {
    #[error("a spike needs at least 3 legs, got {0}")]
    TooFewLegs(usize),
    #[error("spikes beyond {max} legs are unsupported, got {n}")]
    TooManyLegs { n: usize, max: usize },
    #[error("transversals {0:#b} and {1:#b} differ in exactly one leg")]
    DistanceOne(u32, u32),
    #[error("transversal {0:#b} is not dependent")]
    NotDependent(u32),
    #[error("tightening {t:#b} would sit at distance ≤ 1 from {conflict:#b}")]
    WouldViolateTriv1 { t: u32, conflict: u32 },
    #[error("multiplier at leg {0} is zero")]
    InvalidAlpha(usize),
    #[error("bad transversal string {0:?}")]
    BadTransversal(String),
}

/// Cap on the number of legs; keeps transversal masks in u32 and the census
/// space enumerable.
pub const MAX_LEGS: usize = 20;

/// A tipless spike given by its dependent-transversal family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpikeDesc {
    n: usize,
    dependent: BTreeSet<u32>,
}

impl SpikeDesc {
    pub fn new(n: usize, dependent: impl IntoIterator<Item = u32>) -> Result<Self, SpikeError> {
        if n < 3 {
            return Err(SpikeError::TooFewLegs(n));
        }
        if n > MAX_LEGS {
            return Err(SpikeError::TooManyLegs { n, max: MAX_LEGS });
        }
        let mask = (1u32 << n) - 1;
        let dependent: BTreeSet<u32> = dependent.into_iter().map(|t| t & mask).collect();
        let family: Vec<u32> = dependent.iter().copied().collect();
        for (i, &t1) in family.iter().enumerate() {
            for &t2 in &family[i + 1..] {
                if (t1 ^ t2).count_ones() == 1 {
                    return Err(SpikeError::DistanceOne(t1, t2));
                }
            }
        }
        Ok(SpikeDesc { n, dependent })
    }

    /// The free spike: no dependent transversals.
    pub fn free(n: usize) -> Result<Self, SpikeError> {
        SpikeDesc::new(n, [])
    }

    pub fn legs(&self) -> usize {
        self.n
    }

    pub fn dependent_transversals(&self) -> &BTreeSet<u32> {
        &self.dependent
    }

    /// Ground-set labels: a1..an then b1..bn.
    pub fn labels(&self) -> Vec<String> {
        (1..=self.n)
            .map(|i| format!("a{i}"))
            .chain((1..=self.n).map(|i| format!("b{i}")))
            .collect()
    }

    /// Transversal masks as bit strings, character j for leg j+1, '1' = b.
    pub fn transversal_strings(&self) -> Vec<String> {
        self.dependent.iter().map(|&t| mask_to_string(t, self.n)).collect()
    }

    pub fn from_transversal_strings(n: usize, strings: &[String]) -> Result<Self, SpikeError> {
        let masks = strings
            .iter()
            .map(|s| string_to_mask(s, n))
            .collect::<Result<Vec<_>, _>>()?;
        SpikeDesc::new(n, masks)
    }

    /// Rank of a subset mask over the ground order a1..an, b1..bn.
    ///
    /// With F legs fully inside X and P legs met in exactly one element:
    /// rank is min(n, F + P + 1) when F ≥ 1; otherwise X is a partial
    /// transversal of size P, which is dependent only when it is a full
    /// transversal in the designated family.
    pub fn rank_mask(&self, mask: u64) -> u32 {
        let n = self.n;
        let a = (mask & ((1 << n) - 1)) as u32;
        let b = ((mask >> n) & ((1 << n) - 1)) as u32;
        let full = a & b;
        let met = a | b;
        let f = full.count_ones();
        if f >= 1 {
            let p = met.count_ones() - f;
            (f + p + 1).min(n as u32)
        } else {
            let size = met.count_ones();
            if size == n as u32 && self.dependent.contains(&b) {
                size - 1
            } else {
                size
            }
        }
    }

    /// Remove a dependent transversal, turning it into a basis.
    pub fn relax(&self, t: u32) -> Result<SpikeDesc, SpikeError> {
        if !self.dependent.contains(&t) {
            return Err(SpikeError::NotDependent(t));
        }
        let mut dependent = self.dependent.clone();
        dependent.remove(&t);
        Ok(SpikeDesc { n: self.n, dependent })
    }

    /// Add a transversal to the dependent family. Requires distance > 1 from
    /// every current member.
    pub fn tighten(&self, t: u32) -> Result<SpikeDesc, SpikeError> {
        let t = t & ((1u32 << self.n) - 1);
        if let Some(&conflict) =
            self.dependent.iter().find(|&&d| (d ^ t).count_ones() <= 1)
        {
            return Err(SpikeError::WouldViolateTriv1 { t, conflict });
        }
        let mut dependent = self.dependent.clone();
        dependent.insert(t);
        Ok(SpikeDesc { n: self.n, dependent })
    }

    /// Count the dependent transversals and the transversals at Hamming
    /// distance > 1 from all of them, and check the covering bound
    /// (|T| + |T'|)(n+1) ≥ 2^n.
    pub fn lower_bound_census(&self) -> Census {
        let n = self.n;
        let total = 1u64 << n;
        let far = (0..1u32 << n)
            .filter(|&t| self.dependent.iter().all(|&d| (d ^ t).count_ones() > 1))
            .count() as u64;
        let dependent = self.dependent.len() as u64;
        let distinguishers = dependent + far;
        Census {
            legs: n,
            dependent,
            far,
            bound_ok: distinguishers * (n as u64 + 1) >= total,
            meets_half_power: distinguishers * distinguishers >= total,
        }
    }
}

/// Census of the transversals whose rank distinguishes a spike from its
/// one-set relaxations and tightenings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub legs: usize,
    /// |T(M)|, the dependent transversals.
    pub dependent: u64,
    /// |T'|, transversals at distance > 1 from every dependent one.
    pub far: u64,
    /// (|T| + |T'|)(n+1) ≥ 2^n.
    pub bound_ok: bool,
    /// |T| + |T'| ≥ 2^{n/2}.
    pub meets_half_power: bool,
}

fn mask_to_string(t: u32, n: usize) -> String {
    (0..n).map(|i| if t >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn string_to_mask(s: &str, n: usize) -> Result<u32, SpikeError> {
    if s.len() != n {
        return Err(SpikeError::BadTransversal(s.to_string()));
    }
    let mut mask = 0u32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '1' => mask |= 1 << i,
            '0' => {}
            _ => return Err(SpikeError::BadTransversal(s.to_string())),
        }
    }
    Ok(mask)
}

/// Parameters of a representable spike over GF(p): one nonzero multiplier
/// per leg.
#[derive(Debug, Clone)]
pub struct RepresentableSpikeParams {
    pub field: PrimeField,
    pub alphas: Vec<FieldElement>,
}

impl RepresentableSpikeParams {
    pub fn unit(field: PrimeField, n: usize) -> Self {
        RepresentableSpikeParams { field, alphas: vec![field.one(); n] }
    }
}

/// Build the standard representation of a spike over GF(p): identity on the
/// a-columns; b-columns all ones with 1 + alpha_i^{-1} on the diagonal. The
/// returned spike has T_S dependent exactly when the alphas indexed by S sum
/// to -1, and its rank oracle agrees with the column matroid of the matrix.
pub fn representable_spike(
    params: &RepresentableSpikeParams,
) -> Result<(SpikeDesc, FieldMatrix), SpikeError> {
    let n = params.alphas.len();
    if n < 3 {
        return Err(SpikeError::TooFewLegs(n));
    }
    if n > MAX_LEGS {
        return Err(SpikeError::TooManyLegs { n, max: MAX_LEGS });
    }
    let field = params.field;
    for (i, &a) in params.alphas.iter().enumerate() {
        if a.is_zero() {
            return Err(SpikeError::InvalidAlpha(i + 1));
        }
        assert_eq!(a.modulus(), field.modulus(), "alpha modulus mismatch");
    }

    let mut matrix = FieldMatrix::zero(field, n, 2 * n);
    for i in 0..n {
        matrix.set(i, i, field.one());
        for j in 0..n {
            let v = if i == j {
                field.one() + params.alphas[j].inv().expect("nonzero alpha")
            } else {
                field.one()
            };
            matrix.set(i, n + j, v);
        }
    }

    let minus_one = -field.one();
    let dependent = (0..1u32 << n).filter(|&s| {
        let mut sum = field.zero();
        for i in 0..n {
            if s >> i & 1 == 1 {
                sum = sum + params.alphas[i];
            }
        }
        sum == minus_one
    });
    let spike = SpikeDesc::new(n, dependent)?;
    Ok((spike, matrix))
}

//! Rank oracles and matroid constructions.
//!
//! A [`Matroid`] bundles a [`GroundSet`] with a description that can be
//! evaluated to a rank function: a linear matroid over GF(p), a uniform
//! matroid, a spike, an explicit rank table (validated against the rank
//! axioms on construction), or a minor or dual of another description.
//! Subsets are passed around as bitmasks over the ground-set indices.
//!
//! [`CountedOracle`] wraps a matroid and counts every rank query; it is the
//! cost model for certificate verification. Derived operations (closure,
//! connectivity, circuits, cyclic flats, axiom checking, equality) are
//! generic over [`RankOracle`] so they can run either against a free
//! in-memory matroid or against a counted oracle.

mod json;
mod ops;
mod oracle;

pub use json::{matroid_from_json_str, matroid_from_json_value, matroid_to_json_value};
pub use ops::{
    axiom_check, circuits, closure, coclosure, cyclic_flats, flats, is_three_connected, lambda,
    matroid_equal, validate_rank_table,
};
pub(crate) use ops::{closure_from_table, full_table};
pub use oracle::{minor_rank, CountedOracle, DualView, MinorView};

use crate::gf::{FieldMatrix, GfError};
use crate::spike::SpikeDesc;
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("ground sets differ")]
    GroundSetMismatch,
    #[error("ground set of size {size} exceeds the exhaustive bound {bound}")]
    ExhaustiveBoundExceeded { size: usize, bound: usize },
    #[error("query touches contracted or deleted elements")]
    InvalidMinorQuery,
    #[error("rank axiom violated: {0}")]
    AxiomViolation(String),
    #[error("invalid matroid description: {0}")]
    InvalidDescription(String),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Default cap on ground-set sizes for exhaustive routines, overridable via
/// the `MATROID_MAX_E` environment variable.
pub fn exhaustive_bound() -> usize {
    static BOUND: OnceLock<usize> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("MATROID_MAX_E").ok().and_then(|v| v.parse().ok()).unwrap_or(16)
    })
}

pub(crate) fn check_bound(size: usize) -> Result<(), MatroidError> {
    let bound = exhaustive_bound();
    if size > bound {
        return Err(MatroidError::ExhaustiveBoundExceeded { size, bound });
    }
    Ok(())
}

/// An ordered list of distinct element labels. The order fixes the bit
/// positions used by subset masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self, MatroidError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn full_mask(&self) -> u64 {
        mask_of_size(self.size())
    }

    /// Bitmask of a label set.
    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64, MatroidError> {
        let mut mask = 0u64;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| MatroidError::UnknownElement(l.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Labels of a bitmask, in ground-set order.
    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }
}

pub(crate) fn mask_of_size(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bit positions of a mask, ascending.
pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// The supported matroid descriptions.
#[derive(Debug, Clone)]
pub enum MatroidDesc {
    /// Column matroid of a matrix over GF(p).
    Linear { matrix: FieldMatrix },
    /// Uniform matroid of the stated rank.
    Uniform { rank: u32 },
    /// Tipless spike given by its dependent transversals.
    Spike(SpikeDesc),
    /// Explicit rank table indexed by subset mask.
    RankTable { ranks: Vec<u8> },
    /// base \ delete / contract, with masks relative to the base ground set.
    Minor { base: Box<Matroid>, contract: u64, delete: u64 },
    /// Dual of the base.
    Dual { base: Box<Matroid> },
}

/// A matroid: a ground set plus a rank-function description.
#[derive(Debug, Clone)]
pub struct Matroid {
    ground: GroundSet,
    desc: MatroidDesc,
}

/// Anything that can answer rank queries over a labeled ground set.
pub trait RankOracle {
    fn ground(&self) -> &GroundSet;

    /// Rank of the subset given as a bitmask over ground-set indices.
    fn rank_mask(&self, mask: u64) -> u32;

    /// Rank of a subset given by labels.
    fn rank<S: AsRef<str>>(&self, labels: &[S]) -> Result<u32, MatroidError>
    where
        Self: Sized,
    {
        Ok(self.rank_mask(self.ground().mask_of(labels)?))
    }

    fn full_rank(&self) -> u32 {
        self.rank_mask(self.ground().full_mask())
    }
}

impl RankOracle for Matroid {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn rank_mask(&self, mask: u64) -> u32 {
        debug_assert_eq!(mask & !self.ground.full_mask(), 0, "mask out of range");
        self.desc.rank_mask(mask)
    }
}

impl MatroidDesc {
    fn rank_mask(&self, mask: u64) -> u32 {
        match self {
            MatroidDesc::Linear { matrix } => {
                let cols: Vec<usize> = bits(mask).collect();
                matrix.rank_of_columns(&cols) as u32
            }
            MatroidDesc::Uniform { rank } => (mask.count_ones()).min(*rank),
            MatroidDesc::Spike(spike) => spike.rank_mask(mask),
            MatroidDesc::RankTable { ranks } => ranks[mask as usize] as u32,
            MatroidDesc::Minor { base, contract, delete } => {
                let keep = base.ground().full_mask() & !(contract | delete);
                let lifted = lift_mask(mask, keep);
                base.rank_mask(lifted | contract) - base.rank_mask(*contract)
            }
            MatroidDesc::Dual { base } => {
                let full = base.ground().full_mask();
                mask.count_ones() + base.rank_mask(full & !mask) - base.rank_mask(full)
            }
        }
    }
}

/// Spread a mask over the positions selected by `keep` (ascending).
pub(crate) fn lift_mask(mask: u64, keep: u64) -> u64 {
    let mut out = 0u64;
    for (view_i, base_i) in bits(keep).enumerate() {
        if mask >> view_i & 1 == 1 {
            out |= 1 << base_i;
        }
    }
    out
}

impl Matroid {
    /// Column matroid of `matrix` with the given column labels.
    pub fn linear(matrix: FieldMatrix, labels: Vec<String>) -> Result<Self, MatroidError> {
        if labels.len() != matrix.cols() {
            return Err(MatroidError::InvalidDescription(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.cols()
            )));
        }
        Ok(Matroid { ground: GroundSet::new(labels)?, desc: MatroidDesc::Linear { matrix } })
    }

    /// U_{r,n} with default labels e1..en.
    pub fn uniform(rank: u32, n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Self::uniform_labeled(rank, labels).unwrap()
    }

    pub fn uniform_labeled(rank: u32, labels: Vec<String>) -> Result<Self, MatroidError> {
        let ground = GroundSet::new(labels)?;
        if rank as usize > ground.size() {
            return Err(MatroidError::InvalidDescription(format!(
                "uniform rank {rank} exceeds ground size {}",
                ground.size()
            )));
        }
        Ok(Matroid { ground, desc: MatroidDesc::Uniform { rank } })
    }

    pub fn spike(desc: SpikeDesc) -> Self {
        let ground = GroundSet::new(desc.labels()).unwrap();
        Matroid { ground, desc: MatroidDesc::Spike(desc) }
    }

    /// Explicit rank table. The table is validated against the rank axioms;
    /// invalid tables are rejected.
    pub fn from_rank_table(labels: Vec<String>, ranks: Vec<u8>) -> Result<Self, MatroidError> {
        let ground = GroundSet::new(labels)?;
        check_bound(ground.size())?;
        if ranks.len() != 1 << ground.size() {
            return Err(MatroidError::InvalidDescription(format!(
                "rank table has {} entries for {} elements",
                ranks.len(),
                ground.size()
            )));
        }
        validate_rank_table(&ranks, ground.size())?;
        Ok(Matroid { ground, desc: MatroidDesc::RankTable { ranks } })
    }

    /// Rank table that is already known to satisfy the axioms (tables read
    /// back from our own oracles).
    pub(crate) fn from_rank_table_trusted(ground: GroundSet, ranks: Vec<u8>) -> Self {
        debug_assert_eq!(ranks.len(), 1 << ground.size());
        Matroid { ground, desc: MatroidDesc::RankTable { ranks } }
    }

    /// The minor self \ delete / contract.
    pub fn minor<S: AsRef<str>>(
        &self,
        contract: &[S],
        delete: &[S],
    ) -> Result<Matroid, MatroidError> {
        let c = self.ground.mask_of(contract)?;
        let d = self.ground.mask_of(delete)?;
        self.minor_masks(c, d)
    }

    pub fn minor_masks(&self, contract: u64, delete: u64) -> Result<Matroid, MatroidError> {
        if contract & delete != 0 {
            return Err(MatroidError::InvalidDescription(
                "contract and delete sets overlap".into(),
            ));
        }
        let keep = self.ground.full_mask() & !(contract | delete);
        let labels = self.ground.labels_of(keep);
        Ok(Matroid {
            ground: GroundSet::new(labels)?,
            desc: MatroidDesc::Minor { base: Box::new(self.clone()), contract, delete },
        })
    }

    pub fn dual(&self) -> Matroid {
        Matroid {
            ground: self.ground.clone(),
            desc: MatroidDesc::Dual { base: Box::new(self.clone()) },
        }
    }

    pub fn desc(&self) -> &MatroidDesc {
        &self.desc
    }

    /// Full rank table, one entry per subset mask. Exhaustive.
    pub fn rank_table(&self) -> Result<Vec<u8>, MatroidError> {
        check_bound(self.ground.size())?;
        if let MatroidDesc::RankTable { ranks } = &self.desc {
            return Ok(ranks.clone());
        }
        Ok((0..1u64 << self.ground.size()).map(|m| self.rank_mask(m) as u8).collect())
    }

    /// Materialize any oracle into an explicit rank-table matroid.
    pub fn from_oracle<O: RankOracle>(o: &O) -> Result<Matroid, MatroidError> {
        check_bound(o.ground().size())?;
        let ranks =
            (0..1u64 << o.ground().size()).map(|m| o.rank_mask(m) as u8).collect();
        Ok(Matroid::from_rank_table_trusted(o.ground().clone(), ranks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn uniform_ranks() {
        let u24 = Matroid::uniform(2, 4);
        assert_eq!(u24.rank::<&str>(&[]).unwrap(), 0);
        assert_eq!(u24.rank(&["e1", "e2", "e3"]).unwrap(), 2);
        assert_eq!(u24.full_rank(), 2);
        assert!(matches!(
            u24.rank(&["nope"]),
            Err(MatroidError::UnknownElement(_))
        ));
    }

    #[test]
    fn linear_spike_four_circuit() {
        // Rank-3 representable spike over GF(5), unit multipliers: a pair of
        // legs is a 4-element circuit, so it has rank 3.
        let m = FieldMatrix::from_rows(
            f(5),
            &[vec![1, 0, 0, 2, 1, 1], vec![0, 1, 0, 1, 2, 1], vec![0, 0, 1, 1, 1, 2]],
        )
        .unwrap();
        let labels = ["a1", "a2", "a3", "b1", "b2", "b3"].map(String::from).to_vec();
        let spike = Matroid::linear(m, labels).unwrap();
        assert_eq!(spike.rank(&["a1", "b1", "a2", "b2"]).unwrap(), 3);
        assert_eq!(spike.rank(&["a1", "b1"]).unwrap(), 2);
        assert_eq!(spike.full_rank(), 3);
    }

    #[test]
    fn minor_and_dual_ranks() {
        let u24 = Matroid::uniform(2, 4);
        // U_{2,4}/e1: remaining elements have rank r({e1,x}) - r({e1}) = 1.
        let contracted = u24.minor(&["e1"], &[]).unwrap();
        assert_eq!(contracted.rank(&["e2"]).unwrap(), 1);
        assert_eq!(contracted.full_rank(), 1);

        // U_{2,4}* = U_{2,4}.
        let dual = u24.dual();
        assert_eq!(dual.rank(&["e1", "e2", "e3"]).unwrap(), 2);
        assert_eq!(dual.rank::<&str>(&[]).unwrap(), 0);

        // A coloop becomes a loop in the dual.
        let u11 = Matroid::uniform(1, 1);
        assert_eq!(u11.dual().rank(&["e1"]).unwrap(), 0);
    }

    #[test]
    fn ground_set_rejects_duplicates() {
        assert!(matches!(
            GroundSet::new(vec!["a".into(), "a".into()]),
            Err(MatroidError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn rank_table_rejects_garbage() {
        // r(E) > |E| is impossible.
        let bad = Matroid::from_rank_table(vec!["a".into()], vec![0, 2]);
        assert!(matches!(bad, Err(MatroidError::AxiomViolation(_))));
    }
}

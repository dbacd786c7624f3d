use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use super::{bits, GroundSet, Matroid, MatroidError, RankOracle};

/// A rank oracle with a monotone call counter. Every rank query costs
/// exactly one increment, however deeply nested the underlying description
/// is. The counter is atomic so oracles can be shared across threads; an
/// optional log records each (subset, rank) pair.
pub struct CountedOracle {
    matroid: Matroid,
    calls: AtomicU64,
    log: Option<Mutex<Vec<(u64, u32)>>>,
}

impl CountedOracle {
    pub fn new(matroid: Matroid) -> Self {
        CountedOracle { matroid, calls: AtomicU64::new(0), log: None }
    }

    pub fn with_log(matroid: Matroid) -> Self {
        CountedOracle { matroid, calls: AtomicU64::new(0), log: Some(Mutex::new(Vec::new())) }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::SeqCst)
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Snapshot of the query log, when logging is enabled.
    pub fn log(&self) -> Option<Vec<(u64, u32)>> {
        self.log.as_ref().map(|l| l.lock().unwrap().clone())
    }
}

impl RankOracle for CountedOracle {
    fn ground(&self) -> &GroundSet {
        self.matroid.ground()
    }

    fn rank_mask(&self, mask: u64) -> u32 {
        self.calls.fetch_add(1, Ordering::SeqCst);
        let r = self.matroid.rank_mask(mask);
        if let Some(log) = &self.log {
            log.lock().unwrap().push((mask, r));
        }
        r
    }
}

/// One-shot minor rank: r_{M\D/C}(X) = r_M(X ∪ C) − r_M(C), two base calls.
/// For repeated queries against the same minor use [`MinorView`], which
/// memoizes r(C).
pub fn minor_rank<O: RankOracle, S: AsRef<str>>(
    base: &O,
    contract: &[S],
    delete: &[S],
    x: &[S],
) -> Result<u32, MatroidError> {
    let c = base.ground().mask_of(contract)?;
    let d = base.ground().mask_of(delete)?;
    let xm = base.ground().mask_of(x)?;
    if xm & (c | d) != 0 {
        return Err(MatroidError::InvalidMinorQuery);
    }
    Ok(base.rank_mask(xm | c) - base.rank_mask(c))
}

/// A live view of base \ delete / contract over a borrowed oracle. The rank
/// of the contract set is computed on first use and memoized, so each
/// subsequent minor query costs one base call.
pub struct MinorView<'a, O: RankOracle> {
    base: &'a O,
    contract: u64,
    ground: GroundSet,
    /// keep[i] = base index of view element i.
    keep: Vec<usize>,
    r_contract: OnceLock<u32>,
}

impl<'a, O: RankOracle> MinorView<'a, O> {
    pub fn new(base: &'a O, contract: u64, delete: u64) -> Result<Self, MatroidError> {
        if contract & delete != 0 {
            return Err(MatroidError::InvalidDescription(
                "contract and delete sets overlap".into(),
            ));
        }
        let keep_mask = base.ground().full_mask() & !(contract | delete);
        let keep: Vec<usize> = bits(keep_mask).collect();
        let ground = GroundSet::new(base.ground().labels_of(keep_mask))?;
        Ok(MinorView { base, contract, ground, keep, r_contract: OnceLock::new() })
    }

    fn lift(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        for (view_i, &base_i) in self.keep.iter().enumerate() {
            if mask >> view_i & 1 == 1 {
                out |= 1 << base_i;
            }
        }
        out
    }
}

impl<O: RankOracle> RankOracle for MinorView<'_, O> {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn rank_mask(&self, mask: u64) -> u32 {
        let rc = *self.r_contract.get_or_init(|| self.base.rank_mask(self.contract));
        self.base.rank_mask(self.lift(mask) | self.contract) - rc
    }
}

/// Dual-rank view: r*(X) = |X| + r(E − X) − r(E), with r(E) memoized.
pub struct DualView<'a, O: RankOracle> {
    base: &'a O,
    r_total: OnceLock<u32>,
}

impl<'a, O: RankOracle> DualView<'a, O> {
    pub fn new(base: &'a O) -> Self {
        DualView { base, r_total: OnceLock::new() }
    }
}

impl<O: RankOracle> RankOracle for DualView<'_, O> {
    fn ground(&self) -> &GroundSet {
        self.base.ground()
    }

    fn rank_mask(&self, mask: u64) -> u32 {
        let full = self.base.ground().full_mask();
        let rt = *self.r_total.get_or_init(|| self.base.rank_mask(full));
        mask.count_ones() + self.base.rank_mask(full & !mask) - rt
    }
}

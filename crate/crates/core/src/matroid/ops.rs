//! Derived matroid operations, generic over any rank oracle. Exhaustive
//! routines check the configured ground-set bound and fail loudly beyond it.

use super::{bits, check_bound, mask_of_size, MatroidError, RankOracle};

/// cl(X) = X ∪ {e : r(X ∪ e) = r(X)}. Uses |E − X| + 1 oracle calls.
pub fn closure<O: RankOracle>(o: &O, mask: u64) -> u64 {
    let rx = o.rank_mask(mask);
    let mut cl = mask;
    for e in bits(o.ground().full_mask() & !mask) {
        if o.rank_mask(mask | 1 << e) == rx {
            cl |= 1 << e;
        }
    }
    cl
}

/// Coclosure: the closure operator of the dual. Uses |E − X| + 1 calls.
pub fn coclosure<O: RankOracle>(o: &O, mask: u64) -> u64 {
    let full = o.ground().full_mask();
    let complement = full & !mask;
    let rc = o.rank_mask(complement);
    let mut cl = mask;
    for e in bits(complement) {
        // e joins cl*(X) iff removing it from the complement drops the rank.
        if o.rank_mask(complement & !(1 << e)) == rc - 1 {
            cl |= 1 << e;
        }
    }
    cl
}

/// Connectivity function λ(X) = r(X) + r(E − X) − r(E). A partition
/// (X, E − X) is a k-separation when λ(X) < k.
pub fn lambda<O: RankOracle>(o: &O, mask: u64) -> u32 {
    let full = o.ground().full_mask();
    o.rank_mask(mask) + o.rank_mask(full & !mask) - o.rank_mask(full)
}

/// All circuits (minimal dependent sets), as masks in ascending order.
pub fn circuits<O: RankOracle>(o: &O) -> Result<Vec<u64>, MatroidError> {
    let n = o.ground().size();
    check_bound(n)?;
    let table = full_table(o);
    let mut out = Vec::new();
    for mask in 1..1u64 << n {
        let size = mask.count_ones();
        if table[mask as usize] as u32 >= size {
            continue;
        }
        // Minimal dependence: every one-element-smaller subset independent.
        let minimal = bits(mask)
            .all(|e| table[(mask & !(1 << e)) as usize] as u32 == size - 1);
        if minimal {
            out.push(mask);
        }
    }
    Ok(out)
}

/// All flats (closed sets), as masks in ascending order.
pub fn flats<O: RankOracle>(o: &O) -> Result<Vec<u64>, MatroidError> {
    let n = o.ground().size();
    check_bound(n)?;
    let table = full_table(o);
    Ok((0..1u64 << n).filter(|&m| closure_from_table(&table, n, m) == m).collect())
}

/// Cyclic flats: flats in which no element is a coloop of the restriction
/// (equivalently, unions of circuits). The empty set counts when the matroid
/// is loopless.
pub fn cyclic_flats<O: RankOracle>(o: &O) -> Result<Vec<u64>, MatroidError> {
    let n = o.ground().size();
    check_bound(n)?;
    let table = full_table(o);
    Ok((0..1u64 << n)
        .filter(|&m| {
            closure_from_table(&table, n, m) == m
                && bits(m).all(|e| table[(m & !(1 << e)) as usize] == table[m as usize])
        })
        .collect())
}

pub(crate) fn closure_from_table(table: &[u8], n: usize, mask: u64) -> u64 {
    let r = table[mask as usize];
    let mut cl = mask;
    for e in 0..n {
        if mask >> e & 1 == 0 && table[(mask | 1 << e) as usize] == r {
            cl |= 1 << e;
        }
    }
    cl
}

pub(crate) fn full_table<O: RankOracle>(o: &O) -> Vec<u8> {
    let n = o.ground().size();
    (0..1u64 << n).map(|m| o.rank_mask(m) as u8).collect()
}

/// Check the rank axioms exhaustively: normalization, unit increase with
/// monotonicity, and submodularity. The submodular check runs over all
/// subset pairs up to 12 elements and falls back to the equivalent local
/// criterion beyond that.
pub fn axiom_check<O: RankOracle>(o: &O) -> Result<(), MatroidError> {
    let n = o.ground().size();
    check_bound(n)?;
    let table = full_table(o);
    validate_rank_table(&table, n)
}

/// Axiom validation on a raw rank table.
pub fn validate_rank_table(table: &[u8], n: usize) -> Result<(), MatroidError> {
    let size = 1usize << n;
    if table.len() != size {
        return Err(MatroidError::InvalidDescription(format!(
            "table has {} entries for {n} elements",
            table.len()
        )));
    }
    if table[0] != 0 {
        return Err(MatroidError::AxiomViolation(format!("r(∅) = {} ≠ 0", table[0])));
    }
    for mask in 0..size as u64 {
        let r = table[mask as usize];
        for e in 0..n {
            if mask >> e & 1 == 0 {
                let re = table[(mask | 1 << e) as usize];
                if re < r || re > r + 1 {
                    return Err(MatroidError::AxiomViolation(format!(
                        "r({mask:#b}) = {r} but r with element {e} added = {re}"
                    )));
                }
            }
        }
    }
    if n <= 12 {
        for x in 0..size as u64 {
            for y in 0..size as u64 {
                let lhs = table[(x | y) as usize] as u32 + table[(x & y) as usize] as u32;
                let rhs = table[x as usize] as u32 + table[y as usize] as u32;
                if lhs > rhs {
                    return Err(MatroidError::AxiomViolation(format!(
                        "submodularity fails on the pair X = {x:#b}, Y = {y:#b}"
                    )));
                }
            }
        }
    } else {
        // Local criterion: r(X∪e) + r(X∪f) ≥ r(X∪e∪f) + r(X).
        for mask in 0..size as u64 {
            for e in 0..n {
                if mask >> e & 1 == 1 {
                    continue;
                }
                for f in e + 1..n {
                    if mask >> f & 1 == 1 {
                        continue;
                    }
                    let xe = table[(mask | 1 << e) as usize] as u32;
                    let xf = table[(mask | 1 << f) as usize] as u32;
                    let xef = table[(mask | 1 << e | 1 << f) as usize] as u32;
                    let x = table[mask as usize] as u32;
                    if xe + xf < xef + x {
                        return Err(MatroidError::AxiomViolation(format!(
                            "submodularity fails on X = {mask:#b} with elements {e}, {f}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// True iff the two oracles have identical labeled ground sets and agree on
/// the rank of every subset. Returns the first disagreeing subset otherwise.
pub fn matroid_equal<A: RankOracle, B: RankOracle>(
    a: &A,
    b: &B,
) -> Result<Result<(), u64>, MatroidError> {
    if a.ground().labels() != b.ground().labels() {
        return Err(MatroidError::GroundSetMismatch);
    }
    let n = a.ground().size();
    check_bound(n)?;
    for mask in 0..1u64 << n {
        if a.rank_mask(mask) != b.rank_mask(mask) {
            return Ok(Err(mask));
        }
    }
    Ok(Ok(()))
}

/// Tutte 3-connectivity: connected, and no partition (A, E−A) with
/// min(|A|, |E−A|) ≥ 2 and λ(A) ≤ 1.
pub fn is_three_connected<O: RankOracle>(o: &O) -> Result<bool, MatroidError> {
    let n = o.ground().size();
    check_bound(n)?;
    let table = full_table(o);
    let full = mask_of_size(n);
    let r = table[full as usize] as u32;
    for a in 1..full {
        let lam = table[a as usize] as u32 + table[(full & !a) as usize] as u32 - r;
        let small = a.count_ones().min((n as u32) - a.count_ones());
        // j-separation with j = λ+1 ≤ min side size breaks (j+1)-connectivity.
        if lam < 2.min(small) {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Freedom, clones, and fixed elements.
//!
//! An element e is freer than f when every cyclic flat containing e also
//! contains f; clones are mutually freer pairs. The freedom of e is the
//! largest size of an independent set of pairwise clones containing e,
//! taken over all extensions; it is found here by iterated single-element
//! extension search, where each round enumerates the modular cuts of the
//! current matroid. An element is fixed when its freedom is 0 or 1, and
//! cofixed when it is fixed in the dual.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{
    bits, closure_from_table, cyclic_flats, GroundSet, Matroid, MatroidError, RankOracle,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreedomError {
    #[error("extension search bound exceeded: {size} elements > {bound}")]
    ExtensionBoundExceeded { size: usize, bound: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Hard cap on the ground size for extension enumeration; the modular-cut
/// space grows too fast beyond this.
pub const EXTENSION_BOUND: usize = 9;

/// The freer-than preorder of a matroid: freer[e][f] is true when every
/// cyclic flat containing e also contains f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreerRelation {
    labels: Vec<String>,
    freer: Vec<Vec<bool>>,
}

impl FreerRelation {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_freer(&self, e: usize, f: usize) -> bool {
        self.freer[e][f]
    }

    pub fn are_clones(&self, e: usize, f: usize) -> bool {
        self.freer[e][f] && self.freer[f][e]
    }

    /// Partition into clonal classes, each sorted, ordered by least member.
    pub fn clonal_classes(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for e in 0..n {
            if seen[e] {
                continue;
            }
            let class: Vec<usize> = (e..n).filter(|&f| self.are_clones(e, f)).collect();
            for &f in &class {
                seen[f] = true;
            }
            classes.push(class);
        }
        classes
    }
}

pub fn freer_relation<O: RankOracle>(o: &O) -> Result<FreerRelation, FreedomError> {
    let n = o.ground().size();
    let cyclic = cyclic_flats(o)?;
    let mut freer = vec![vec![true; n]; n];
    for &flat in &cyclic {
        for e in bits(flat) {
            for f in 0..n {
                if flat >> f & 1 == 0 {
                    freer[e][f] = false;
                }
            }
        }
    }
    Ok(FreerRelation { labels: o.ground().labels().to_vec(), freer })
}

/// Clonal classes as label lists.
pub fn clonal_classes<O: RankOracle>(o: &O) -> Result<Vec<Vec<String>>, FreedomError> {
    let rel = freer_relation(o)?;
    Ok(rel
        .clonal_classes()
        .into_iter()
        .map(|class| class.into_iter().map(|i| rel.labels[i].clone()).collect())
        .collect())
}

/// A modular cut: a set of flats closed upward and under intersections of
/// modular pairs. Modular cuts are in bijection with the single-element
/// extensions of the matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularCut {
    flats: BTreeSet<u64>,
}

impl ModularCut {
    pub fn flats(&self) -> &BTreeSet<u64> {
        &self.flats
    }

    pub fn contains(&self, flat: u64) -> bool {
        self.flats.contains(&flat)
    }
}

/// Enumerate every modular cut by a propagation-pruned search over the flat
/// lattice.
pub fn modular_cuts(m: &Matroid) -> Result<Vec<ModularCut>, FreedomError> {
    let n = m.ground().size();
    if n > EXTENSION_BOUND {
        return Err(FreedomError::ExtensionBoundExceeded { size: n, bound: EXTENSION_BOUND });
    }
    let table = m.rank_table()?;
    let flats: Vec<u64> = crate::matroid::flats(m)?;
    let index: HashMap<u64, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let k = flats.len();

    let mut supersets: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut subsets: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut modular_meet: Vec<Vec<Option<usize>>> = vec![vec![None; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && flats[i] & flats[j] == flats[i] {
                supersets[i].push(j);
                subsets[j].push(i);
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let (fi, fj) = (flats[i], flats[j]);
            let union_rank = table[(fi | fj) as usize] as u32;
            let meet = fi & fj;
            let meet_rank = table[meet as usize] as u32;
            if table[fi as usize] as u32 + table[fj as usize] as u32 == union_rank + meet_rank {
                let meet_idx = index[&meet];
                modular_meet[i][j] = Some(meet_idx);
                modular_meet[j][i] = Some(meet_idx);
            }
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Unknown,
        In,
        Out,
    }

    fn propagate(
        state: &mut [State],
        queue: &mut Vec<(usize, bool)>,
        supersets: &[Vec<usize>],
        subsets: &[Vec<usize>],
        modular_meet: &[Vec<Option<usize>>],
    ) -> bool {
        while let Some((f, include)) = queue.pop() {
            match (state[f], include) {
                (State::In, true) | (State::Out, false) => continue,
                (State::In, false) | (State::Out, true) => return false,
                (State::Unknown, _) => {}
            }
            state[f] = if include { State::In } else { State::Out };
            if include {
                for &g in &supersets[f] {
                    queue.push((g, true));
                }
                for g in 0..state.len() {
                    if state[g] == State::In {
                        if let Some(meet) = modular_meet[f][g] {
                            queue.push((meet, true));
                        }
                    }
                }
            } else {
                for &g in &subsets[f] {
                    queue.push((g, false));
                }
            }
        }
        true
    }

    // DFS with propagation, branching on flats by descending rank so the
    // upward closure settles early.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| std::cmp::Reverse((table[flats[i] as usize], flats[i])));

    let mut cuts = Vec::new();
    let mut stack: Vec<Vec<State>> = vec![vec![State::Unknown; k]];
    while let Some(state) = stack.pop() {
        match order.iter().find(|&&i| state[i] == State::Unknown) {
            None => {
                let members: BTreeSet<u64> =
                    (0..k).filter(|&i| state[i] == State::In).map(|i| flats[i]).collect();
                cuts.push(ModularCut { flats: members });
            }
            Some(&next) => {
                for include in [false, true] {
                    let mut branch = state.clone();
                    let mut queue = vec![(next, include)];
                    if propagate(&mut branch, &mut queue, &supersets, &subsets, &modular_meet) {
                        stack.push(branch);
                    }
                }
            }
        }
    }
    cuts.sort_by(|a, b| a.flats.cmp(&b.flats));
    Ok(cuts)
}

/// Extend the matroid by one element governed by the modular cut: the new
/// element lands in the closure of exactly the flats of the cut.
pub fn extend_by_cut(
    m: &Matroid,
    cut: &ModularCut,
    new_label: &str,
) -> Result<Matroid, FreedomError> {
    let n = m.ground().size();
    let table = m.rank_table()?;
    let mut labels = m.ground().labels().to_vec();
    labels.push(new_label.to_string());
    let mut ext = vec![0u8; 1 << (n + 1)];
    for mask in 0..1u64 << n {
        let r = table[mask as usize];
        ext[mask as usize] = r;
        let cl = closure_from_table(&table, n, mask);
        let with_z = mask | 1 << n;
        ext[with_z as usize] = if cut.contains(cl) { r } else { r + 1 };
    }
    let ground = GroundSet::new(labels)?;
    Ok(Matroid::from_rank_table_trusted(ground, ext))
}

/// All single-element extensions, one per modular cut. Includes the coloop
/// extension (empty cut) and the loop extension (every flat).
pub fn single_element_extensions(m: &Matroid) -> Result<Vec<Matroid>, FreedomError> {
    let label = fresh_label(m.ground());
    modular_cuts(m)?.iter().map(|cut| extend_by_cut(m, cut, &label)).collect()
}

fn fresh_label(ground: &GroundSet) -> String {
    (1..).map(|k| format!("z{k}")).find(|l| ground.index_of(l).is_none()).unwrap()
}

/// Freedom of an element, capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FreedomValue {
    Finite(u32),
    /// The search exceeded the cap: freedom is larger than the cap.
    Overflow(u32),
    /// Coloops extend freely forever.
    Infinite,
}

/// Freedom of `e`: the maximum size of an independent set of pairwise
/// clones containing e, grown by iterated single-element extensions.
pub fn freedom<O: RankOracle>(o: &O, e: &str, cap: u32) -> Result<FreedomValue, FreedomError> {
    assert!(cap >= 1, "cap must be at least 1");
    let m = materialize(o)?;
    let idx = m
        .ground()
        .index_of(e)
        .ok_or_else(|| MatroidError::UnknownElement(e.to_string()))?;
    let full = m.ground().full_mask();
    if m.rank_mask(1 << idx) == 0 {
        return Ok(FreedomValue::Finite(0));
    }
    if m.rank_mask(full & !(1 << idx)) < m.rank_mask(full) {
        return Ok(FreedomValue::Infinite);
    }

    // Frontier states: extensions in which e plus the added elements (at the
    // tail positions) form an independent set of pairwise clones.
    let mut frontier = vec![m];
    let mut size = 1u32;
    loop {
        let mut next = Vec::new();
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        for state in &frontier {
            if state.ground().size() >= EXTENSION_BOUND {
                continue;
            }
            let clone_set: Vec<usize> = std::iter::once(idx)
                .chain(state.ground().size() - (size as usize - 1)..state.ground().size())
                .collect();
            for ext in single_element_extensions(state)? {
                let z = ext.ground().size() - 1;
                let grown: Vec<usize> = clone_set.iter().copied().chain([z]).collect();
                if !clones_and_independent(&ext, &grown)? {
                    continue;
                }
                let key = ext.rank_table()?;
                if seen.insert(key) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            return Ok(FreedomValue::Finite(size));
        }
        size += 1;
        if size > cap {
            return Ok(FreedomValue::Overflow(cap));
        }
        frontier = next;
    }
}

/// Cofreedom: freedom in the dual.
pub fn cofreedom<O: RankOracle>(o: &O, e: &str, cap: u32) -> Result<FreedomValue, FreedomError> {
    let m = materialize(o)?;
    freedom(&m.dual(), e, cap)
}

fn clones_and_independent(m: &Matroid, set: &[usize]) -> Result<bool, FreedomError> {
    let mask: u64 = set.iter().map(|&i| 1u64 << i).sum();
    if m.rank_mask(mask) < set.len() as u32 {
        return Ok(false);
    }
    let cyclic = cyclic_flats(m)?;
    for &flat in &cyclic {
        let hits = set.iter().filter(|&&i| flat >> i & 1 == 1).count();
        if hits != 0 && hits != set.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixed: no single-element extension adds an independent clone of `e`.
pub fn is_fixed<O: RankOracle>(o: &O, e: &str) -> Result<bool, FreedomError> {
    let m = materialize(o)?;
    let idx = m
        .ground()
        .index_of(e)
        .ok_or_else(|| MatroidError::UnknownElement(e.to_string()))?;
    if m.rank_mask(1 << idx) == 0 {
        return Ok(true);
    }
    let full = m.ground().full_mask();
    if m.rank_mask(full & !(1 << idx)) < m.rank_mask(full) {
        // Coloops have infinite freedom.
        return Ok(false);
    }
    for ext in single_element_extensions(&m)? {
        let z = ext.ground().size() - 1;
        if clones_and_independent(&ext, &[idx, z])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cofixed: fixed in the dual.
pub fn is_cofixed<O: RankOracle>(o: &O, e: &str) -> Result<bool, FreedomError> {
    let m = materialize(o)?;
    is_fixed(&m.dual(), e)
}

/// True iff some (t+1)-separation (A, B) places e in the closure of both
/// sides minus e; then e has freedom at most t.
pub fn freedom_upper_from_separation<O: RankOracle>(
    o: &O,
    e: &str,
    t: u32,
) -> Result<bool, FreedomError> {
    separation_bound(o, e, t, false)
}

/// Dual variant via coclosure: bounds cofreedom.
pub fn cofreedom_upper_from_separation<O: RankOracle>(
    o: &O,
    e: &str,
    t: u32,
) -> Result<bool, FreedomError> {
    separation_bound(o, e, t, true)
}

fn separation_bound<O: RankOracle>(
    o: &O,
    e: &str,
    t: u32,
    dual: bool,
) -> Result<bool, FreedomError> {
    let m0 = Matroid::from_oracle(o)?;
    let m = if dual { m0.dual() } else { m0 };
    let idx = m
        .ground()
        .index_of(e)
        .ok_or_else(|| MatroidError::UnknownElement(e.to_string()))?;
    let n = m.ground().size();
    let table = m.rank_table()?;
    let full = m.ground().full_mask();
    let r = table[full as usize] as u32;
    let em = 1u64 << idx;
    for a in 0..=full {
        let b = full & !a;
        let lam = table[a as usize] as u32 + table[b as usize] as u32 - r;
        if lam > t {
            continue;
        }
        let cl_a = closure_from_table(&table, n, a & !em);
        let cl_b = closure_from_table(&table, n, b & !em);
        if cl_a & em != 0 && cl_b & em != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("element is a loop or coloop")]
    NotApplicable,
    #[error(transparent)]
    Freedom(#[from] FreedomError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// The uniform minor reached by repeatedly removing non-clones of `e`:
/// delete when e is freer than or incomparable to the chosen element,
/// contract when the chosen element is strictly freer than e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformMinorWitness {
    pub deleted: Vec<String>,
    pub contracted: Vec<String>,
    /// Rank of the uniform minor.
    pub gamma: u32,
    /// Corank of the uniform minor.
    pub delta: u32,
}

pub fn uniform_minor_witness<O: RankOracle>(
    o: &O,
    e: &str,
) -> Result<UniformMinorWitness, WitnessError> {
    let mut m = Matroid::from_oracle(o)?;
    let idx = m
        .ground()
        .index_of(e)
        .ok_or_else(|| MatroidError::UnknownElement(e.to_string()))?;
    let full = m.ground().full_mask();
    if m.rank_mask(1 << idx) == 0 || m.rank_mask(full & !(1 << idx)) < m.rank_mask(full) {
        return Err(WitnessError::NotApplicable);
    }
    let mut deleted = Vec::new();
    let mut contracted = Vec::new();
    loop {
        let rel = freer_relation(&m).map_err(WitnessError::Freedom)?;
        let e_idx = m.ground().index_of(e).expect("e survives the procedure");
        let non_clone = (0..m.ground().size()).find(|&b| !rel.are_clones(e_idx, b));
        let Some(b) = non_clone else {
            // Single clonal class: the minor is uniform.
            let gamma = m.full_rank();
            let delta = m.ground().size() as u32 - gamma;
            return Ok(UniformMinorWitness { deleted, contracted, gamma, delta });
        };
        let b_label = m.ground().label(b).to_string();
        if rel.is_freer(b, e_idx) {
            contracted.push(b_label.clone());
            m = Matroid::from_oracle(&m.minor(&[b_label.as_str()], &[])?)?;
        } else {
            deleted.push(b_label.clone());
            m = Matroid::from_oracle(&m.minor(&[], &[b_label.as_str()])?)?;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCorReport {
    pub pass: bool,
    /// Elements where an unfixed element exceeds cofreedom p or an
    /// uncofixed element exceeds freedom p.
    pub failures: Vec<String>,
}

/// For matroids that are GF(p)-representable or excluded minors for GF(p)
/// (the caller asserts this): every element that is not fixed has cofreedom
/// at most p, and every element that is not cofixed has freedom at most p.
/// Freedom values are computed with cap p + 1.
pub fn bound_cor_check<O: RankOracle>(o: &O, p: u32) -> Result<BoundCorReport, FreedomError> {
    let m = materialize(o)?;
    let mut failures = Vec::new();
    for e in m.ground().labels().to_vec() {
        if !is_fixed(&m, &e)? {
            match cofreedom(&m, &e, p + 1)? {
                FreedomValue::Finite(v) if v <= p => {}
                FreedomValue::Infinite => {}
                _ => failures.push(format!("{e}: cofreedom exceeds {p}")),
            }
        }
        if !is_cofixed(&m, &e)? {
            match freedom(&m, &e, p + 1)? {
                FreedomValue::Finite(v) if v <= p => {}
                FreedomValue::Infinite => {}
                _ => failures.push(format!("{e}: freedom exceeds {p}")),
            }
        }
    }
    Ok(BoundCorReport { pass: failures.is_empty(), failures })
}

fn materialize<O: RankOracle>(o: &O) -> Result<Matroid, FreedomError> {
    if o.ground().size() > EXTENSION_BOUND {
        return Err(FreedomError::ExtensionBoundExceeded {
            size: o.ground().size(),
            bound: EXTENSION_BOUND,
        });
    }
    Ok(Matroid::from_oracle(o)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::axiom_check;

    fn fano() -> Matroid {
        let rows: Vec<Vec<i64>> = vec![
            vec![1, 0, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 1, 1, 0, 1],
        ];
        let m =
            crate::gf::FieldMatrix::from_rows(crate::gf::PrimeField::new(2).unwrap(), &rows)
                .unwrap();
        Matroid::linear(m, (1..=7).map(|i| format!("e{i}")).collect()).unwrap()
    }

    #[test]
    fn uniform_is_one_clonal_class() {
        let rel = freer_relation(&Matroid::uniform(2, 4)).unwrap();
        for e in 0..4 {
            for f in 0..4 {
                assert!(rel.is_freer(e, f));
            }
        }
        assert_eq!(clonal_classes(&Matroid::uniform(2, 4)).unwrap().len(), 1);
    }

    #[test]
    fn loops_are_less_free() {
        // Ground {l, e, f}: l a loop, e and f parallel.
        let m = Matroid::from_rank_table(
            vec!["l".into(), "e".into(), "f".into()],
            vec![0, 0, 1, 1, 1, 1, 1, 1],
        )
        .unwrap();
        let rel = freer_relation(&m).unwrap();
        // Every cyclic flat containing e contains l (closures swallow loops).
        assert!(rel.is_freer(1, 0));
        assert!(!rel.is_freer(0, 1));
    }

    #[test]
    fn fano_has_singleton_classes() {
        let classes = clonal_classes(&fano()).unwrap();
        assert_eq!(classes.len(), 7);
        let rel = freer_relation(&fano()).unwrap();
        for e in 0..7 {
            for f in 0..7 {
                assert_eq!(rel.is_freer(e, f), e == f, "freer({e},{f})");
            }
        }
    }

    #[test]
    fn spike_legs_are_clones() {
        let spike = Matroid::spike(crate::spike::SpikeDesc::free(4).unwrap());
        let rel = freer_relation(&spike).unwrap();
        for i in 0..4 {
            assert!(rel.are_clones(i, i + 4), "a{} ~ b{}", i + 1, i + 1);
        }
    }

    #[test]
    fn extensions_of_u11() {
        // Loop added, parallel element, coloop added.
        let exts = single_element_extensions(&Matroid::uniform(1, 1)).unwrap();
        assert_eq!(exts.len(), 3);
        for ext in &exts {
            assert!(axiom_check(ext).is_ok());
        }
    }

    #[test]
    fn extensions_of_u23() {
        let exts = single_element_extensions(&Matroid::uniform(2, 3)).unwrap();
        // Loop, coloop, free point on the line, three parallel points.
        assert_eq!(exts.len(), 6);
        for ext in &exts {
            assert!(axiom_check(ext).is_ok());
            assert_eq!(ext.ground().size(), 4);
        }
    }

    #[test]
    fn fixed_examples() {
        // Elements of U_{2,4} already have independent clones.
        assert!(!is_fixed(&Matroid::uniform(2, 4), "e1").unwrap());
        // A loop is fixed.
        let with_loop =
            Matroid::from_rank_table(vec!["l".into(), "x".into()], vec![0, 0, 1, 1]).unwrap();
        assert!(is_fixed(&with_loop, "l").unwrap());
        // Every element of the Fano plane is fixed.
        assert!(is_fixed(&fano(), "e1").unwrap());
    }

    #[test]
    fn freedom_examples() {
        for (r, n) in [(1u32, 3usize), (2, 4), (2, 5), (3, 4)] {
            let m = Matroid::uniform(r, n);
            assert_eq!(
                freedom(&m, "e1", 5).unwrap(),
                FreedomValue::Finite(r),
                "U_{{{r},{n}}}"
            );
        }
        let with_loop =
            Matroid::from_rank_table(vec!["l".into(), "x".into()], vec![0, 0, 1, 1]).unwrap();
        assert_eq!(freedom(&with_loop, "l", 3).unwrap(), FreedomValue::Finite(0));
        // Fixed non-loop elements have freedom 1.
        assert_eq!(freedom(&fano(), "e1", 3).unwrap(), FreedomValue::Finite(1));
        // Coloops report infinite freedom.
        assert_eq!(
            freedom(&Matroid::uniform(1, 1), "e1", 3).unwrap(),
            FreedomValue::Infinite
        );
    }

    #[test]
    fn separation_bounds() {
        // A parallel pair whose complement spans traps its members at
        // freedom ≤ 1: columns e = f = (1,0), g = (0,1), h = (1,1).
        let rows: Vec<Vec<i64>> = vec![vec![1, 1, 0, 1], vec![0, 0, 1, 1]];
        let mat =
            crate::gf::FieldMatrix::from_rows(crate::gf::PrimeField::new(3).unwrap(), &rows)
                .unwrap();
        let labels = ["e", "f", "g", "h"].map(String::from).to_vec();
        let m = Matroid::linear(mat, labels).unwrap();
        assert!(freedom_upper_from_separation(&m, "e", 1).unwrap());

        // No 2-separation traps a free-spike element.
        let spike = Matroid::spike(crate::spike::SpikeDesc::free(4).unwrap());
        assert!(!freedom_upper_from_separation(&spike, "a1", 1).unwrap());
    }

    #[test]
    fn guts_element_of_two_planes() {
        // Rank-4 matroid over GF(3): e spans the intersection of the plane
        // of the a/c points and the line of the b points, giving a
        // 3-separation with e in both closures, so e has freedom at most 2.
        let rows: Vec<Vec<i64>> = vec![
            // e   a1 a2 a3  c1 c2  b1 b2 b3
            vec![1, 0, 0, 1, 0, 1, 0, 1, 1],
            vec![0, 1, 0, 1, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 1, 1, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 1, 1, 2],
        ];
        let m =
            crate::gf::FieldMatrix::from_rows(crate::gf::PrimeField::new(3).unwrap(), &rows)
                .unwrap();
        let labels = ["e", "a1", "a2", "a3", "c1", "c2", "b1", "b2", "b3"]
            .map(String::from)
            .to_vec();
        let m = Matroid::linear(m, labels).unwrap();
        assert!(freedom_upper_from_separation(&m, "e", 2).unwrap());
    }

    #[test]
    fn uniform_minor_witness_examples() {
        let w = uniform_minor_witness(&Matroid::uniform(2, 4), "e1").unwrap();
        assert_eq!((w.gamma, w.delta), (2, 2));
        assert!(w.deleted.is_empty() && w.contracted.is_empty());

        // U_{2,4} plus an element parallel to e2: removing the non-clone
        // recovers a uniform matroid.
        let u24 = Matroid::uniform(2, 4);
        let base = u24.rank_table().unwrap();
        let mut table = Vec::new();
        for mask in 0..1u64 << 5 {
            let body = mask & 0b1111;
            let r = if mask >> 4 & 1 == 1 {
                base[(body | 0b0010) as usize]
            } else {
                base[body as usize]
            };
            table.push(r);
        }
        let labels = ["e1", "e2", "e3", "e4", "p"].map(String::from).to_vec();
        let m = Matroid::from_rank_table(labels, table).unwrap();
        let w = uniform_minor_witness(&m, "e1").unwrap();
        assert_eq!((w.gamma, w.delta), (2, 2));
        assert_eq!(w.deleted.len() + w.contracted.len(), 1);

        // Fano fixture: the procedure deletes e2, e3, e4 and lands on
        // U_{3,4}; gamma and delta bound the freedom and cofreedom of e1
        // (both 1, e1 being fixed and cofixed) from above.
        let w = uniform_minor_witness(&fano(), "e1").unwrap();
        assert_eq!((w.gamma, w.delta), (3, 1));
        assert_eq!(w.deleted, vec!["e2", "e3", "e4"]);
        assert!(w.contracted.is_empty());
        assert_eq!(freedom(&fano(), "e1", 4).unwrap(), FreedomValue::Finite(1));
        assert_eq!(cofreedom(&fano(), "e1", 4).unwrap(), FreedomValue::Finite(1));

        let err = uniform_minor_witness(&Matroid::uniform(1, 1), "e1");
        assert_eq!(err, Err(WitnessError::NotApplicable));
    }

    #[test]
    fn bound_cor_on_small_binary_matroids() {
        for m in [Matroid::uniform(2, 3), Matroid::uniform(1, 3), fano()] {
            let report = bound_cor_check(&m, 2).unwrap();
            assert!(report.pass, "{:?}", report.failures);
        }
    }

    #[test]
    fn fixed_iff_freedom_at_most_one() {
        let candidates = vec![
            Matroid::uniform(2, 4),
            Matroid::uniform(1, 2),
            Matroid::uniform(3, 4),
            Matroid::from_oracle(&fano().minor(&["e1"], &[]).unwrap()).unwrap(),
        ];
        for m in candidates {
            for e in m.ground().labels().to_vec() {
                let fixed = is_fixed(&m, &e).unwrap();
                match freedom(&m, &e, 4).unwrap() {
                    FreedomValue::Finite(v) => assert_eq!(fixed, v <= 1, "{e}: freedom {v}"),
                    FreedomValue::Infinite => assert!(!fixed),
                    FreedomValue::Overflow(_) => {}
                }
            }
        }
    }

    #[test]
    fn duality_identities() {
        for m in [Matroid::uniform(2, 4), Matroid::uniform(1, 3)] {
            let dual = m.dual();
            for e in m.ground().labels().to_vec() {
                assert_eq!(is_cofixed(&m, &e).unwrap(), is_fixed(&dual, &e).unwrap());
                assert_eq!(cofreedom(&m, &e, 4).unwrap(), freedom(&dual, &e, 4).unwrap());
            }
        }
    }
}

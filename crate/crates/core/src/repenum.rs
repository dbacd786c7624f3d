//! Enumeration of GF(p)-representations up to equivalence.
//!
//! Two representations are equivalent when one arises from the other by
//! elementary row operations and column scaling. Each class has a unique
//! canonical member: row-reduce so that the lexicographically least basis
//! carries an identity block, then scale rows and columns so that a
//! deterministic spanning forest of the nonzero support carries entries 1.
//! Equivalence testing is then entrywise comparison, and enumeration only
//! has to range over the remaining free support cells.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldMatrix, Flat, GfError, PrimeField};
use crate::matroid::{GroundSet, Matroid, MatroidError, RankOracle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("column labels do not match")]
    LabelMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("representation does not extend: {0}")]
    InvalidExtension(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Enumeration limits: ground size, rank, and field size.
pub const MAX_ELEMENTS: usize = 12;
pub const MAX_RANK: usize = 6;
pub const MAX_FIELD: u32 = 7;

/// A representation in canonical form: the lexicographically least basis of
/// the column matroid carries an identity block, and a deterministic
/// spanning forest of the nonzero support carries entries equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Representation {
    matrix: FieldMatrix,
    labels: Vec<String>,
    basis: Vec<usize>,
}

impl Representation {
    /// Canonicalize an arbitrary matrix with column labels.
    pub fn new(matrix: FieldMatrix, labels: Vec<String>) -> Result<Self, RepError> {
        if labels.len() != matrix.cols() {
            return Err(RepError::ShapeMismatch(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.cols()
            )));
        }
        GroundSet::new(labels.clone())?;
        // Row reduction puts the identity exactly on the lexicographically
        // least basis (the pivot columns) and drops redundant rows.
        let rref = matrix.rref();
        let reduced = rref.matrix.without_zero_rows();
        let basis = rref.pivots;
        let canonical = forest_normalize(&reduced, &basis);
        Ok(Representation { matrix: canonical, labels, basis })
    }

    pub(crate) fn from_canonical_parts(
        matrix: FieldMatrix,
        labels: Vec<String>,
        basis: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(
            Representation::new(matrix.clone(), labels.clone()).unwrap().matrix,
            matrix,
            "matrix was not in canonical form"
        );
        Representation { matrix, labels, basis }
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Column indices of the normalized basis; basis[i] is the column
    /// holding the i-th identity vector.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// The column matroid of the representation.
    pub fn matroid(&self) -> Matroid {
        Matroid::linear(self.matrix.clone(), self.labels.clone()).expect("labels match columns")
    }

    /// The standard dual representation: with the primal in the form
    /// [I | A] (identity on the basis), the dual puts an identity on the
    /// cobasis and -A^T on the basis columns. Represents the dual matroid.
    pub fn dual(&self) -> Representation {
        let n = self.matrix.cols();
        let r = self.matrix.rows();
        let cobasis: Vec<usize> = (0..n).filter(|c| !self.basis.contains(c)).collect();
        let field = self.field();
        let mut d = FieldMatrix::zero(field, n - r, n);
        for (j, &c) in cobasis.iter().enumerate() {
            d.set(j, c, field.one());
            for (i, &b) in self.basis.iter().enumerate() {
                d.set(j, b, -self.matrix.get(i, c));
            }
        }
        Representation::new(d, self.labels.clone()).expect("dual construction is well formed")
    }
}

/// True iff the representations are related by row operations and column
/// scaling. Inputs are canonical, so this is entrywise comparison after a
/// shape check.
pub fn are_equivalent(r1: &Representation, r2: &Representation) -> Result<bool, RepError> {
    if r1.labels != r2.labels {
        return Err(RepError::LabelMismatch);
    }
    if r1.field() != r2.field() {
        return Err(RepError::ShapeMismatch("different fields".into()));
    }
    Ok(r1.matrix == r2.matrix)
}

/// A complete set of pairwise inequivalent representations, canonically
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepClassSet {
    reps: Vec<Representation>,
}

impl RepClassSet {
    pub(crate) fn from_reps(mut reps: Vec<Representation>) -> Self {
        reps.sort();
        reps.dedup();
        RepClassSet { reps }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Representation] {
        &self.reps
    }

    pub fn iter(&self) -> impl Iterator<Item = &Representation> {
        self.reps.iter()
    }

    /// Index of the class equal to the canonical form of `rep`, if any.
    pub fn index_of(&self, rep: &Representation) -> Option<usize> {
        self.reps.iter().position(|r| r == rep)
    }
}

/// Enumerate all GF(p)-representations of the matroid up to equivalence.
///
/// The basis block is fixed to the identity; the zero/nonzero support of
/// every other column is forced by its fundamental circuit; a spanning
/// forest of the support graph is pinned to 1; the remaining support cells
/// range over the nonzero field elements, pruned column by column against
/// the target rank function.
pub fn enumerate_reps(m: &Matroid, field: PrimeField) -> Result<RepClassSet, RepError> {
    let n = m.ground().size();
    if n > MAX_ELEMENTS {
        return Err(RepError::BoundExceeded(format!("{n} elements > {MAX_ELEMENTS}")));
    }
    if field.modulus() > MAX_FIELD {
        return Err(RepError::BoundExceeded(format!(
            "field GF({}) > GF({MAX_FIELD})",
            field.modulus()
        )));
    }
    let table = m.rank_table()?;
    let full = m.ground().full_mask();
    let r = table[full as usize] as usize;
    if r > MAX_RANK {
        return Err(RepError::BoundExceeded(format!("rank {r} > {MAX_RANK}")));
    }
    let labels = m.ground().labels().to_vec();

    if r == 0 {
        // All loops: the zero matrix is the unique representation.
        let rep = Representation::from_canonical_parts(
            FieldMatrix::zero(field, 0, n),
            labels,
            Vec::new(),
        );
        return Ok(RepClassSet::from_reps(vec![rep]));
    }

    // Lexicographically least basis: greedy scan.
    let mut basis: Vec<usize> = Vec::with_capacity(r);
    let mut bmask = 0u64;
    for c in 0..n {
        if table[(bmask | 1 << c) as usize] > table[bmask as usize] {
            basis.push(c);
            bmask |= 1 << c;
        }
    }
    debug_assert_eq!(basis.len(), r);

    // Support of each non-basis column: the fundamental-circuit rows.
    let nonbasis: Vec<usize> = (0..n).filter(|c| !basis.contains(c)).collect();
    let mut support: Vec<Vec<usize>> = Vec::with_capacity(nonbasis.len());
    for &c in &nonbasis {
        let rows: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|&(_, &b)| {
                let without = (bmask & !(1 << b)) | 1 << c;
                table[without as usize] as usize == r
            })
            .map(|(i, _)| i)
            .collect();
        support.push(rows);
    }

    // Deterministic spanning forest over the support bipartite graph.
    let forest = support_forest(r, nonbasis.len(), &support);

    // DFS over non-basis columns in label order.
    let mut matrix = FieldMatrix::zero(field, r, n);
    for (i, &b) in basis.iter().enumerate() {
        matrix.set(i, b, field.one());
    }
    let mut found: Vec<Representation> = Vec::new();
    let nonzero: Vec<u32> = (1..field.modulus()).collect();
    dfs_columns(
        &mut matrix,
        0,
        &nonbasis,
        &support,
        &forest,
        &nonzero,
        bmask,
        &table,
        &mut |mat| {
            found.push(Representation::from_canonical_parts(
                mat.clone(),
                labels.clone(),
                basis.clone(),
            ));
        },
    );
    Ok(RepClassSet::from_reps(found))
}

/// Forest edges as forest[j][i] flags over column position j and row i,
/// chosen by scanning columns then rows in ascending order.
fn support_forest(rows: usize, cols: usize, support: &[Vec<usize>]) -> Vec<Vec<bool>> {
    debug_assert_eq!(support.len(), cols);
    let mut parent: Vec<usize> = (0..rows + cols).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut forest = vec![vec![false; rows]; cols];
    for (j, rows_of_col) in support.iter().enumerate() {
        for &i in rows_of_col {
            let a = find(&mut parent, i);
            let b = find(&mut parent, rows + j);
            if a != b {
                parent[a] = b;
                forest[j][i] = true;
            }
        }
    }
    forest
}

#[allow(clippy::too_many_arguments)]
fn dfs_columns(
    matrix: &mut FieldMatrix,
    col_idx: usize,
    nonbasis: &[usize],
    support: &[Vec<usize>],
    forest: &[Vec<bool>],
    nonzero: &[u32],
    placed_mask: u64,
    table: &[u8],
    emit: &mut impl FnMut(&FieldMatrix),
) {
    if col_idx == nonbasis.len() {
        emit(matrix);
        return;
    }
    let c = nonbasis[col_idx];
    let field = matrix.field();
    let free_rows: Vec<usize> =
        support[col_idx].iter().copied().filter(|&i| !forest[col_idx][i]).collect();
    for &i in &support[col_idx] {
        if forest[col_idx][i] {
            matrix.set(i, c, field.one());
        }
    }
    let mut assignment = vec![0usize; free_rows.len()];
    loop {
        for (k, &i) in free_rows.iter().enumerate() {
            matrix.set(i, c, field.elem(nonzero[assignment[k]] as i64));
        }
        if column_consistent(matrix, c, placed_mask, table) {
            dfs_columns(
                matrix,
                col_idx + 1,
                nonbasis,
                support,
                forest,
                nonzero,
                placed_mask | 1 << c,
                table,
                emit,
            );
        }
        // Advance the assignment in mixed radix; done when it wraps.
        let mut k = 0;
        loop {
            if k == free_rows.len() {
                for &i in &support[col_idx] {
                    matrix.set(i, c, field.zero());
                }
                return;
            }
            assignment[k] += 1;
            if assignment[k] < nonzero.len() {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
    }
}

/// Check every subset of placed columns that includes the new column `c`
/// against the target rank table.
fn column_consistent(matrix: &FieldMatrix, c: usize, placed_mask: u64, table: &[u8]) -> bool {
    let mut sub = placed_mask;
    loop {
        let mask = sub | 1 << c;
        let cols: Vec<usize> = crate::matroid::bits(mask).collect();
        if matrix.rank_of_columns(&cols) != table[mask as usize] as usize {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & placed_mask;
    }
}

/// All projective points x such that appending column x at `e`'s position
/// makes the representation of M\e into a representation of M. When e is a
/// coloop of M the representation is first padded with a zero coordinate.
pub fn extension_candidates(
    rep: &Representation,
    m: &Matroid,
    e: &str,
) -> Result<Vec<Vec<u32>>, RepError> {
    let pos = m
        .ground()
        .index_of(e)
        .ok_or_else(|| RepError::Matroid(MatroidError::UnknownElement(e.to_string())))?;
    let mut expected: Vec<&str> = m.ground().labels().iter().map(|s| s.as_str()).collect();
    expected.remove(pos);
    if rep.labels().iter().map(|s| s.as_str()).collect::<Vec<_>>() != expected {
        return Err(RepError::LabelMismatch);
    }
    let table = m.rank_table()?;
    let r_m = table[m.ground().full_mask() as usize] as usize;
    let padded = pad_to_rank(rep, r_m)?;
    let field = rep.field();
    let mut out = Vec::new();
    for point in Flat::full(field, r_m).projective_points() {
        let candidate = padded.insert_column(pos, &point)?;
        if represents(&candidate, &table) {
            out.push(point);
        }
    }
    Ok(out)
}

pub(crate) fn pad_to_rank(rep: &Representation, target: usize) -> Result<FieldMatrix, RepError> {
    let r = rep.matrix().rows();
    if target == r {
        Ok(rep.matrix().clone())
    } else if target == r + 1 {
        let zero_row = FieldMatrix::zero(rep.field(), 1, rep.matrix().cols());
        Ok(rep.matrix().vstack(&zero_row)?)
    } else {
        Err(RepError::InvalidExtension(format!(
            "rank {r} representation cannot reach ambient rank {target}"
        )))
    }
}

/// Full rank-function comparison of a candidate matrix against a table.
pub(crate) fn represents(candidate: &FieldMatrix, table: &[u8]) -> bool {
    let n = candidate.cols();
    debug_assert_eq!(table.len(), 1 << n);
    for mask in 1..1u64 << n {
        let cols: Vec<usize> = crate::matroid::bits(mask).collect();
        if candidate.rank_of_columns(&cols) != table[mask as usize] as usize {
            return false;
        }
    }
    true
}

/// Scale rows and columns so the spanning-forest support cells equal 1.
/// Basis columns stay an identity block; their implicit scalings absorb the
/// row factors.
fn forest_normalize(matrix: &FieldMatrix, basis: &[usize]) -> FieldMatrix {
    let r = matrix.rows();
    let n = matrix.cols();
    let field = matrix.field();
    let nonbasis: Vec<usize> = (0..n).filter(|c| !basis.contains(c)).collect();
    let support: Vec<Vec<usize>> = nonbasis
        .iter()
        .map(|&c| (0..r).filter(|&i| !matrix.get(i, c).is_zero()).collect())
        .collect();
    let forest = support_forest(r, nonbasis.len(), &support);

    // Solve for scalings along the forest, seeding each component at its
    // first-reached node with factor 1.
    let one = field.one();
    let mut row_scale = vec![None; r];
    let mut col_scale: Vec<Option<crate::gf::FieldElement>> = vec![None; nonbasis.len()];
    loop {
        match (
            row_scale.iter().position(|s| s.is_none()),
            col_scale.iter().position(|s| s.is_none()),
        ) {
            (Some(i), _) => row_scale[i] = Some(one),
            (None, Some(j)) => col_scale[j] = Some(one),
            (None, None) => break,
        }
        let mut changed = true;
        while changed {
            changed = false;
            for (j, rows_of_col) in support.iter().enumerate() {
                for &i in rows_of_col {
                    if !forest[j][i] {
                        continue;
                    }
                    let a = matrix.get(i, nonbasis[j]);
                    match (row_scale[i], col_scale[j]) {
                        (Some(l), None) => {
                            col_scale[j] = Some((l * a).inv().expect("support cell nonzero"));
                            changed = true;
                        }
                        (None, Some(mu)) => {
                            row_scale[i] = Some((mu * a).inv().expect("support cell nonzero"));
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    let mut out = matrix.clone();
    for (j, &c) in nonbasis.iter().enumerate() {
        let mu = col_scale[j].unwrap_or(one);
        for i in 0..r {
            let l = row_scale[i].unwrap_or(one);
            out.set(i, c, l * matrix.get(i, c) * mu);
        }
    }
    out
}

/// Versioned JSON report for a class set.
pub fn class_set_to_json(set: &RepClassSet) -> serde_json::Value {
    serde_json::json!({
        "v": 1,
        "count": set.len(),
        "representatives": set.reps(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::matroid_equal;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn fano() -> Matroid {
        // All nonzero GF(2) vectors of length 3 as columns.
        let rows: Vec<Vec<i64>> = vec![
            vec![1, 0, 0, 0, 1, 1, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 1, 1, 0, 1],
        ];
        let m = FieldMatrix::from_rows(f(2), &rows).unwrap();
        let labels = (1..=7).map(|i| format!("e{i}")).collect();
        Matroid::linear(m, labels).unwrap()
    }

    #[test]
    fn u24_has_no_binary_representation() {
        let set = enumerate_reps(&Matroid::uniform(2, 4), f(2)).unwrap();
        assert!(set.is_empty());
    }

    #[test]
    fn binary_and_ternary_uniqueness() {
        let set = enumerate_reps(&fano(), f(2)).unwrap();
        assert_eq!(set.len(), 1);
        let set = enumerate_reps(&Matroid::uniform(2, 4), f(3)).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn u24_over_gf5_has_three_classes() {
        let set = enumerate_reps(&Matroid::uniform(2, 4), f(5)).unwrap();
        assert_eq!(set.len(), 3);
        for rep in set.iter() {
            assert_eq!(
                matroid_equal(&rep.matroid(), &Matroid::uniform(2, 4)).unwrap(),
                Ok(())
            );
        }
    }

    #[test]
    fn loops_and_empty_matroid() {
        let set = enumerate_reps(&Matroid::uniform(0, 2), f(3)).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.reps()[0].matrix().rows(), 0);

        let empty = Matroid::uniform(0, 0);
        let set = enumerate_reps(&empty, f(2)).unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn equivalence_under_scalings() {
        let labels: Vec<String> = (1..=4).map(|i| format!("e{i}")).collect();
        let base = FieldMatrix::from_rows(f(5), &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let r1 = Representation::new(base, labels.clone()).unwrap();

        // Double a row.
        let doubled =
            FieldMatrix::from_rows(f(5), &[vec![2, 0, 2, 2], vec![0, 1, 1, 2]]).unwrap();
        let r2 = Representation::new(doubled, labels.clone()).unwrap();
        assert!(are_equivalent(&r1, &r2).unwrap());

        // Scale a column by 3.
        let scaled =
            FieldMatrix::from_rows(f(5), &[vec![1, 0, 3, 1], vec![0, 1, 3, 2]]).unwrap();
        let r3 = Representation::new(scaled, labels.clone()).unwrap();
        assert!(are_equivalent(&r1, &r3).unwrap());

        // A genuinely different representation of U_{2,4}.
        let other =
            FieldMatrix::from_rows(f(5), &[vec![1, 0, 1, 1], vec![0, 1, 1, 3]]).unwrap();
        let r4 = Representation::new(other, labels).unwrap();
        assert!(!are_equivalent(&r1, &r4).unwrap());
    }

    fn relabel(rep: &Representation, labels: &[&str]) -> Representation {
        Representation::new(
            rep.matrix().clone(),
            labels.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn extension_candidate_examples() {
        // U_{1,2} -> U_{1,3} over GF(3): the only candidate is the shared
        // rank-1 point.
        let u13 = Matroid::uniform(1, 3);
        let u12_reps = enumerate_reps(&Matroid::uniform(1, 2), f(3)).unwrap();
        let rep = relabel(&u12_reps.reps()[0], &["e1", "e2"]);
        let points = extension_candidates(&rep, &u13, "e3").unwrap();
        assert_eq!(points, vec![vec![1]]);

        // U_{2,3} -> U_{2,4} over GF(2): no candidate.
        let u24 = Matroid::uniform(2, 4);
        let u23_reps = enumerate_reps(&Matroid::uniform(2, 3), f(2)).unwrap();
        let rep = relabel(&u23_reps.reps()[0], &["e1", "e2", "e3"]);
        assert!(extension_candidates(&rep, &u24, "e4").unwrap().is_empty());

        // Over GF(5): the projective line has 6 points, 3 are taken.
        let u23_reps = enumerate_reps(&Matroid::uniform(2, 3), f(5)).unwrap();
        let rep = relabel(&u23_reps.reps()[0], &["e1", "e2", "e3"]);
        assert_eq!(extension_candidates(&rep, &u24, "e4").unwrap().len(), 3);
    }

    #[test]
    fn extension_pads_for_coloops() {
        // U_{2,2} -> U_{3,3}: the new element is a coloop.
        let u33 = Matroid::uniform(3, 3);
        let u22_reps = enumerate_reps(&Matroid::uniform(2, 2), f(3)).unwrap();
        let rep = relabel(&u22_reps.reps()[0], &["e1", "e2"]);
        let points = extension_candidates(&rep, &u33, "e3").unwrap();
        // Exactly the points with a nonzero new coordinate: 13 - 4 = 9.
        assert_eq!(points.len(), 9);
        assert!(points.iter().all(|pt| pt[2] != 0));
    }

    #[test]
    fn dual_representation_examples() {
        // U_{2,4} is self-dual.
        let set = enumerate_reps(&Matroid::uniform(2, 4), f(5)).unwrap();
        for rep in set.iter() {
            let dual = rep.dual();
            assert_eq!(
                matroid_equal(&dual.matroid(), &Matroid::uniform(2, 4).dual()).unwrap(),
                Ok(())
            );
            // Double dual lands back in the same class.
            assert!(are_equivalent(&dual.dual(), rep).unwrap());
        }

        // The free matroid's dual is all loops, represented by a 0-row matrix.
        let free = enumerate_reps(&Matroid::uniform(3, 3), f(2)).unwrap();
        let dual = free.reps()[0].dual();
        assert_eq!(dual.matrix().rows(), 0);
        assert_eq!(dual.matroid().full_rank(), 0);
    }

    #[test]
    fn fano_rep_is_the_fano_matroid() {
        let set = enumerate_reps(&fano(), f(2)).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(matroid_equal(&set.reps()[0].matroid(), &fano()).unwrap(), Ok(()));
        // The Fano plane needs characteristic 2.
        assert!(enumerate_reps(&fano(), f(3)).unwrap().is_empty());
        assert!(enumerate_reps(&fano(), f(5)).unwrap().is_empty());
    }
}

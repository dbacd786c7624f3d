use serde::{Deserialize, Serialize};

use super::{FieldElement, GfError, PrimeField};

/// A dense matrix over GF(p), stored row-major with entries reduced mod p.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

/// Result of reduced row-echelon elimination.
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Build from integer rows, reducing each entry mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GfError::ShapeMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.elem(v).value()))
            .collect();
        Ok(FieldMatrix { field, rows: rows.len(), cols, entries })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.elem(self.entries[r * self.cols + c] as i64)
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.modulus(), self.modulus(), "mixed field moduli");
        self.entries[r * self.cols + c] = v.value();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.entries[r * self.cols + c]).collect()
    }

    /// New matrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zero(self.field, self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            assert!(c < self.cols, "column {c} out of bounds");
            for r in 0..self.rows {
                m.entries[r * cols.len() + j] = self.entries[r * self.cols + c];
            }
        }
        m
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        m
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix, GfError> {
        if self.cols != other.cols || self.field != other.field {
            return Err(GfError::ShapeMismatch("vstack: column counts or moduli differ".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FieldMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Append one column on the right.
    pub fn with_column(&self, col: &[u32]) -> Result<FieldMatrix, GfError> {
        if col.len() != self.rows {
            return Err(GfError::ShapeMismatch("column length != row count".into()));
        }
        let mut m = FieldMatrix::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            m.entries[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(r));
            m.entries[r * (self.cols + 1) + self.cols] = col[r] % self.modulus();
        }
        Ok(m)
    }

    /// Insert a column at position `at`, shifting later columns right.
    pub fn insert_column(&self, at: usize, col: &[u32]) -> Result<FieldMatrix, GfError> {
        if col.len() != self.rows || at > self.cols {
            return Err(GfError::ShapeMismatch("insert_column: bad shape".into()));
        }
        let mut m = FieldMatrix::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            let src = self.row(r);
            let dst = &mut m.entries[r * (self.cols + 1)..(r + 1) * (self.cols + 1)];
            dst[..at].copy_from_slice(&src[..at]);
            dst[at] = col[r] % self.field.modulus();
            dst[at + 1..].copy_from_slice(&src[at..]);
        }
        Ok(m)
    }

    /// Reduced row-echelon form: unique per row space, with rank and pivot
    /// columns.
    pub fn rref(&self) -> Rref {
        let p = self.modulus() as u64;
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..cols {
            if lead >= rows {
                break;
            }
            let Some(pr) = (lead..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                m.swap(lead * cols + c, pr * cols + c);
            }
            let inv = self.field.elem(m[lead * cols + col] as i64).inv().unwrap().value() as u64;
            for c in 0..cols {
                m[lead * cols + c] = ((m[lead * cols + c] as u64 * inv) % p) as u32;
            }
            for r in 0..rows {
                if r != lead && m[r * cols + col] != 0 {
                    let factor = m[r * cols + col] as u64;
                    for c in 0..cols {
                        let sub = (factor * m[lead * cols + c] as u64) % p;
                        m[r * cols + c] = ((m[r * cols + c] as u64 + p - sub) % p) as u32;
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        let rank = pivots.len();
        Rref { matrix: FieldMatrix { field: self.field, rows, cols, entries: m }, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rank of the submatrix formed by the given columns.
    pub fn rank_of_columns(&self, cols: &[usize]) -> usize {
        self.select_columns(cols).rank()
    }

    /// Multiply a coefficient row vector by this matrix: `coeffs * self`.
    pub fn row_combination(&self, coeffs: &[u32]) -> Vec<u32> {
        assert_eq!(coeffs.len(), self.rows);
        let p = self.modulus() as u64;
        (0..self.cols)
            .map(|c| {
                let mut acc = 0u64;
                for r in 0..self.rows {
                    acc = (acc + coeffs[r] as u64 * self.entries[r * self.cols + c] as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|&v| v == 0)
    }

    /// Drop all-zero rows (used to canonicalize echelon bases).
    pub fn without_zero_rows(&self) -> FieldMatrix {
        let kept: Vec<usize> = (0..self.rows).filter(|&r| !self.is_zero_row(r)).collect();
        let mut entries = Vec::with_capacity(kept.len() * self.cols);
        for r in kept.iter() {
            entries.extend_from_slice(self.row(*r));
        }
        FieldMatrix { field: self.field, rows: kept.len(), cols: self.cols, entries }
    }
}

impl std::fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FieldMatrix {}x{} mod {} [", self.rows, self.cols, self.modulus())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i64>>,
}

impl TryFrom<MatrixJson> for FieldMatrix {
    type Error = GfError;
    fn try_from(j: MatrixJson) -> Result<Self, GfError> {
        let field = PrimeField::new(j.p)?;
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(GfError::ShapeMismatch("matrix entries do not match rows x cols".into()));
        }
        FieldMatrix::from_rows(field, &j.entries)
    }
}

impl From<FieldMatrix> for MatrixJson {
    fn from(m: FieldMatrix) -> MatrixJson {
        MatrixJson {
            p: m.modulus(),
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows).map(|r| m.row(r).iter().map(|&v| v as i64).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FieldMatrix::identity(f(2), 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = FieldMatrix::zero(f(3), 2, 4);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rref_spike_b_block_gf5() {
        // b-columns of the rank-3 representable spike matrix with unit
        // multipliers: diagonal 1 + 1^{-1} = 2, off-diagonal 1.
        let m = FieldMatrix::from_rows(f(5), &[vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]])
            .unwrap();
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn json_round_trip_reduces_entries() {
        let m: FieldMatrix =
            serde_json::from_str(r#"{"p":5,"rows":1,"cols":3,"entries":[[7,-1,2]]}"#).unwrap();
        assert_eq!(m.row(0), &[2, 4, 2]);
        let s = serde_json::to_string(&m).unwrap();
        let m2: FieldMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn json_rejects_composite_modulus() {
        let r: Result<FieldMatrix, _> =
            serde_json::from_str(r#"{"p":6,"rows":1,"cols":1,"entries":[[1]]}"#);
        assert!(r.is_err());
    }

    fn random_matrix(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = FieldMatrix> {
        prop::collection::vec(0i64..p as i64, rows * cols).prop_map(move |v| {
            let rows_v: Vec<Vec<i64>> = v.chunks(cols).map(|c| c.to_vec()).collect();
            FieldMatrix::from_rows(f(p), &rows_v).unwrap()
        })
    }

    proptest! {
        // rref is idempotent, rank-preserving, and canonical under row
        // operations.
        #[test]
        fn rref_canonical(m in random_matrix(5, 3, 4), scale in 1i64..5, from in 0usize..3, to in 0usize..3) {
            let r = m.rref();
            let again = r.matrix.rref();
            prop_assert_eq!(&again.matrix, &r.matrix);
            prop_assert_eq!(again.rank, r.rank);

            // Apply a random elementary row operation; rref must not change.
            let mut m2 = m.clone();
            if from != to {
                for c in 0..m.cols() {
                    let v = m2.get(to, c) + f(5).elem(scale) * m2.get(from, c);
                    m2.set(to, c, v);
                }
            } else {
                for c in 0..m.cols() {
                    let v = f(5).elem(scale) * m2.get(to, c);
                    m2.set(to, c, v);
                }
            }
            prop_assert_eq!(m2.rref().matrix, r.matrix);
        }
    }
}

use serde::{Deserialize, Serialize};

use super::{FieldMatrix, GfError, PrimeField};

/// A subspace of the projective geometry PG(r-1, q), stored as the reduced
/// row-echelon basis of the corresponding linear subspace of GF(q)^r. The
/// canonical basis makes flat equality plain matrix equality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Flat {
    ambient: usize,
    basis: FieldMatrix,
}

impl Flat {
    /// The whole space GF(q)^ambient.
    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Flat { ambient, basis: FieldMatrix::identity(field, ambient) }
    }

    /// The rank-0 flat.
    pub fn empty(field: PrimeField, ambient: usize) -> Self {
        Flat { ambient, basis: FieldMatrix::zero(field, 0, ambient) }
    }

    /// Flat spanned by the rows of `m`.
    pub fn from_row_span(m: &FieldMatrix) -> Self {
        let r = m.rref();
        Flat { ambient: m.cols(), basis: r.matrix.without_zero_rows() }
    }

    /// Flat spanned by a set of columns of `m` (the repo-wide convention for
    /// turning column spans into flats).
    pub fn from_column_span(m: &FieldMatrix, cols: &[usize]) -> Self {
        Flat::from_row_span(&m.select_columns(cols).transpose())
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    /// Subspace intersection via the Zassenhaus block construction.
    pub fn intersect(&self, other: &Flat) -> Result<Flat, GfError> {
        if self.ambient != other.ambient || self.field() != other.field() {
            return Err(GfError::AmbientMismatch(format!(
                "flat in GF({})^{} vs GF({})^{}",
                self.field().modulus(),
                self.ambient,
                other.field().modulus(),
                other.ambient
            )));
        }
        let n = self.ambient;
        let field = self.field();
        // Block matrix [U U; V 0]; after elimination, rows whose left half is
        // zero carry an intersection basis in the right half.
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for r in 0..self.basis.rows() {
            let mut row: Vec<i64> = self.basis.row(r).iter().map(|&v| v as i64).collect();
            row.extend(self.basis.row(r).iter().map(|&v| v as i64));
            rows.push(row);
        }
        for r in 0..other.basis.rows() {
            let mut row: Vec<i64> = other.basis.row(r).iter().map(|&v| v as i64).collect();
            row.extend(std::iter::repeat(0).take(n));
            rows.push(row);
        }
        let block = FieldMatrix::from_rows(field, &rows)?;
        let reduced = block.rref().matrix;
        let mut inter_rows: Vec<Vec<i64>> = Vec::new();
        for r in 0..reduced.rows() {
            let row = reduced.row(r);
            if row[..n].iter().all(|&v| v == 0) && row[n..].iter().any(|&v| v != 0) {
                inter_rows.push(row[n..].iter().map(|&v| v as i64).collect());
            }
        }
        let raw = FieldMatrix::from_rows(field, &inter_rows)?;
        let mut flat = Flat::from_row_span(&raw);
        flat.ambient = n;
        Ok(flat)
    }

    /// Does this flat contain `other` as a subspace?
    pub fn contains(&self, other: &Flat) -> bool {
        if self.ambient != other.ambient || self.field() != other.field() {
            return false;
        }
        if other.rank() == 0 {
            return true;
        }
        let stacked = self.basis.vstack(&other.basis).unwrap();
        stacked.rank() == self.rank()
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let row = FieldMatrix::from_rows(self.field(), &[v.iter().map(|&x| x as i64).collect()])
            .unwrap();
        let stacked = self.basis.vstack(&row).unwrap();
        stacked.rank() == self.rank()
    }

    /// All points of the flat as projective representatives, scaled so the
    /// first nonzero coordinate is 1, sorted. A rank-d flat over GF(q) has
    /// exactly (q^d - 1)/(q - 1) points.
    pub fn projective_points(&self) -> Vec<Vec<u32>> {
        let q = self.field().modulus() as u64;
        let d = self.rank();
        let mut points = std::collections::BTreeSet::new();
        let mut coeffs = vec![0u32; d];
        let total = (q as u128).pow(d as u32);
        for idx in 1..total {
            let mut x = idx;
            for c in coeffs.iter_mut() {
                *c = (x % q as u128) as u32;
                x /= q as u128;
            }
            let v = self.basis.row_combination(&coeffs);
            points.insert(normalize_point(self.field(), v));
        }
        points.into_iter().collect()
    }

    /// Number of projective points, (q^d - 1)/(q - 1), without enumeration.
    pub fn point_count(&self) -> u128 {
        let q = self.field().modulus() as u128;
        (q.pow(self.rank() as u32) - 1) / (q - 1)
    }
}

/// Scale a nonzero vector so its first nonzero coordinate is 1.
pub(crate) fn normalize_point(field: PrimeField, v: Vec<u32>) -> Vec<u32> {
    let Some(first) = v.iter().position(|&x| x % field.modulus() != 0) else {
        return v;
    };
    let inv = field.elem(v[first] as i64).inv().unwrap();
    v.into_iter().map(|x| (field.elem(x as i64) * inv).value()).collect()
}

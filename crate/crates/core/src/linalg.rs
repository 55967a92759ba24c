//! Small dense linear algebra over F_p.
//!
//! Components handled by the engine are tiny (a handful of coordinates for
//! thin algebras, at most a few hundred for free algebras in low degree), so
//! everything here is plain row-major `Vec<Vec<u32>>`.

use crate::fp::PrimeField;

/// A matrix in reduced row echelon form. Pivots are the leftmost nonzero
/// entry of each row and are normalized to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub ncols: usize,
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> Self {
        let mut rows = rows;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, found);
            let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
            field.scale(&mut rows[rank], inv);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = field.neg(row[col]);
                    field.axpy(row, c, &pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Echelon {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.binary_search(&col).is_ok()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Reduces `v` modulo the row space; the result vanishes on every pivot column.
    pub fn reduce(&self, field: PrimeField, v: &[u32]) -> Vec<u32> {
        let mut out = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if out[col] != 0 {
                let c = field.neg(out[col]);
                field.axpy(&mut out, c, row);
            }
        }
        out
    }

    pub fn contains(&self, field: PrimeField, v: &[u32]) -> bool {
        self.reduce(field, v).iter().all(|&a| a == 0)
    }

    /// Basis of the solution space of `M z = 0`, one vector per free column.
    pub fn kernel(&self, field: PrimeField) -> Vec<Vec<u32>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut z = vec![0; self.ncols];
                z[f] = 1;
                for (row, &col) in self.rows.iter().zip(&self.pivots) {
                    z[col] = field.neg(row[f]);
                }
                z
            })
            .collect()
    }
}

pub fn rank(field: PrimeField, vectors: &[Vec<u32>], ncols: usize) -> usize {
    Echelon::new(field, vectors.to_vec(), ncols).rank()
}

/// Basis of `{ z : sum_i z_i * images[i] = 0 }` where every image has length `target_dim`.
pub fn relations_among(field: PrimeField, images: &[Vec<u32>], target_dim: usize) -> Vec<Vec<u32>> {
    // rows are coordinates of the target, columns are the images
    let rows: Vec<Vec<u32>> = (0..target_dim)
        .map(|t| images.iter().map(|v| v[t]).collect())
        .collect();
    Echelon::new(field, rows, images.len()).kernel(field)
}

/// Writes `v` as a combination of `basis` (assumed linearly independent),
/// returning the coefficients, or `None` when `v` is outside the span.
pub fn express(field: PrimeField, v: &[u32], basis: &[Vec<u32>]) -> Option<Vec<u32>> {
    let n = basis.len();
    let dim = v.len();
    // augmented system: columns are basis vectors, last column is v
    let rows: Vec<Vec<u32>> = (0..dim)
        .map(|t| {
            let mut r: Vec<u32> = basis.iter().map(|b| b[t]).collect();
            r.push(v[t]);
            r
        })
        .collect();
    let ech = Echelon::new(field, rows, n + 1);
    if ech.pivots.contains(&n) {
        return None;
    }
    let mut coeffs = vec![0; n];
    for (row, &col) in ech.rows.iter().zip(&ech.pivots) {
        coeffs[col] = row[n];
    }
    Some(coeffs)
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&a| a == 0)
}

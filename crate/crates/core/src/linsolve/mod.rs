//! Exact linear algebra over ℚ: sparse Gaussian elimination with
//! first-nonzero pivoting.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactnum::Rational;

/// A sparse row: `(column, entry)` pairs, sorted by column, no zero entries.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
pub enum SolveError {
    #[error("inconsistent system: row {row} reduces to 0 = nonzero")]
    Inconsistent { row: usize },
    #[error("underdetermined system: nullity {nullity}, free unknowns {free:?}")]
    Underdetermined { nullity: usize, free: Vec<usize> },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// A matrix of exact rationals stored as sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

fn normalize_row(mut r: SparseRow) -> SparseRow {
    r.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(r.len());
    for (c, v) in r {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RatMatrix { cols, rows: vec![Vec::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = RatMatrix::new(0, cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            m.push_row(r.iter().cloned().enumerate().collect());
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::new(0, n);
        for i in 0..n {
            m.push_row(vec![(i, Rational::one())]);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn push_row(&mut self, row: SparseRow) {
        let row = normalize_row(row);
        assert!(row.iter().all(|(c, _)| *c < self.cols), "column out of range");
        self.rows.push(row);
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.rows[i][k].1.clone())
            .unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(j < self.cols, "column out of range");
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|r| r.iter().fold(Rational::zero(), |acc, (c, v)| &acc + &(v * &x[*c])))
            .collect()
    }

    /// Returns the rows in the order given by `perm`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        RatMatrix { cols: self.cols, rows: perm.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}

/// Incremental row-echelon form. Rows may be streamed in; dependent rows
/// are checked for consistency and dropped.
#[derive(Debug, Clone)]
pub struct Eliminator {
    cols: usize,
    pivots: BTreeMap<usize, (SparseRow, Rational)>,
    seen: usize,
}

fn axpy(row: &SparseRow, f: &Rational, piv: &SparseRow) -> SparseRow {
    // row - f * piv
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = piv.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -&(f * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(f * &piv[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Eliminator {
    pub fn new(cols: usize) -> Self {
        Eliminator { cols, pivots: BTreeMap::new(), seen: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows_seen(&self) -> usize {
        self.seen
    }

    pub fn is_full_rank(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Adds the equation `row · x = rhs`.
    pub fn push(&mut self, row: SparseRow, rhs: Rational) -> Result<(), SolveError> {
        let index = self.seen;
        self.seen += 1;
        let mut row = normalize_row(row);
        if let Some((c, _)) = row.last() {
            if *c >= self.cols {
                return Err(SolveError::Dimension(format!("column {c} out of range")));
            }
        }
        let mut rhs = rhs;
        while let Some((lead, lv)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some((piv, prhs)) => {
                    rhs = &rhs - &(&lv * prhs);
                    row = axpy(&row, &lv, piv);
                }
                None => {
                    let inv = lv.recip().expect("nonzero leading entry");
                    let row: SparseRow = row.iter().map(|(c, v)| (*c, v * &inv)).collect();
                    self.pivots.insert(lead, (row, &rhs * &inv));
                    return Ok(());
                }
            }
        }
        if rhs.is_zero() {
            Ok(())
        } else {
            Err(SolveError::Inconsistent { row: index })
        }
    }

    /// Unknowns with no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Back-substitution; requires full column rank.
    pub fn solve(&self) -> Result<Vec<Rational>, SolveError> {
        let free = self.free_columns();
        if !free.is_empty() {
            return Err(SolveError::Underdetermined { nullity: free.len(), free });
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (&lead, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (c, a) in row.iter().skip(1) {
                v = &v - &(a * &x[*c]);
            }
            x[lead] = v;
        }
        Ok(x)
    }
}

/// Solves `A·x = b`, requiring a consistent system with a unique solution.
pub fn solve_unique(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>, SolveError> {
    if a.rows() != b.len() {
        return Err(SolveError::Dimension(format!("{} rows but {} right-hand sides", a.rows(), b.len())));
    }
    let mut e = Eliminator::new(a.cols());
    for (row, rhs) in a.rows.iter().zip(b) {
        e.push(row.clone(), rhs.clone())?;
    }
    e.solve()
}

#[cfg(test)]
mod tests;

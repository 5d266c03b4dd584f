//! Exact linear algebra: polynomial determinants and sparse row echelon
//! forms over the scalar field.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Rectangular matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged polynomial matrix".into()));
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Polynomial>]) -> Result<Self> {
        let nrows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::Dimension("ragged polynomial matrix".into()));
        }
        let rows = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    fn square_size(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    fn nvars(&self) -> usize {
        self.entries.first().map_or(0, Polynomial::nvars)
    }

    /// Exact determinant: cofactor expansion up to size 4, fraction-free
    /// elimination above.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.square_size()? > 4 {
            self.determinant_bareiss()
        } else {
            self.determinant_cofactor()
        }
    }

    pub fn determinant_cofactor(&self) -> Result<Polynomial> {
        let n = self.square_size()?;
        let cols: Vec<usize> = (0..n).collect();
        Ok(self.cofactor_rec(0, &cols))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::one(self.nvars());
        }
        let mut acc = Polynomial::zero(self.nvars());
        for (k, &c) in cols.iter().enumerate() {
            let e = self.get(row, c);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &self.cofactor_rec(row + 1, &rest);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Bareiss fraction-free elimination; every intermediate division is exact.
    pub fn determinant_bareiss(&self) -> Result<Polynomial> {
        let n = self.square_size()?;
        let nv = self.nvars();
        if n == 0 {
            return Ok(Polynomial::one(nv));
        }
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = Polynomial::one(nv);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Ok(Polynomial::zero(nv));
                };
                m.swap(k, swap);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign { -det } else { det })
    }

    /// Adjugate matrix (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        let n = self.square_size()?;
        let mut out = vec![vec![Polynomial::zero(self.nvars()); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<Polynomial>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| self.get(r, c).clone()).collect())
                    .collect();
                let d = if n == 1 {
                    Polynomial::one(self.nvars())
                } else {
                    PolyMatrix::from_rows(minor)?.determinant()?
                };
                out[j][i] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        PolyMatrix::from_rows(out)
    }
}

/// Determinant of a dense scalar matrix by Gaussian elimination.
pub fn scalar_determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut det = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Scalar::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let piv = a[k][k].clone();
        det = &det * &piv;
        let inv = piv.inv().unwrap();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= &t;
            }
        }
    }
    det
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b)
                        .fold(Scalar::zero(), |acc, (x, row)| &acc + &(x * &row[j]))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn identity(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

/// Inverse of a square scalar matrix, if invertible.
pub fn scalar_inverse(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let id = identity(n);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let rhs: Vec<Scalar> = id.iter().map(|r| r[j].clone()).collect();
        let sol = solve_linear(m, &rhs).ok()?;
        if !sol.kernel.is_empty() {
            return None;
        }
        cols.push(sol.particular);
    }
    Some(transpose(&cols))
}

pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incrementally built row echelon form with pivot rows normalized to a
/// leading one. Rows are reduced in column order, so results do not depend
/// on anything but insertion order and the column numbering.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
    reduced: bool,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            reduced: true,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminate every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = hit else {
                return row;
            };
            for (c, v) in &self.pivots[&col] {
                let t = &factor * v;
                let e = row.entry(*c).or_default();
                *e -= &t;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            cursor = col + 1;
        }
    }

    /// Add a row; returns true if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some((&lead, lc)) = row.iter().next() else {
            return false;
        };
        let inv = lc.inv().unwrap();
        let normalized: SparseRow = row.iter().map(|(c, v)| (*c, v * &inv)).collect();
        self.pivots.insert(lead, normalized);
        self.reduced = false;
        true
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        self.insert(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        )
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back-substitute to reduced row echelon form.
    fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for col in cols {
            let pivot_row = self.pivots[&col].clone();
            for (_, row) in self.pivots.range_mut(..col) {
                let Some(factor) = row.get(&col).cloned() else {
                    continue;
                };
                for (c, v) in &pivot_row {
                    let t = &factor * v;
                    let e = row.entry(*c).or_default();
                    *e -= &t;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        self.reduced = true;
    }

    /// Basis of the null space restricted to the first `ncols` columns, one
    /// vector per free column in increasing order.
    pub fn kernel(&mut self) -> Vec<Vec<Scalar>> {
        self.kernel_of_first(self.ncols)
    }

    fn kernel_of_first(&mut self, n: usize) -> Vec<Vec<Scalar>> {
        self.make_reduced();
        let mut out = Vec::new();
        for free in (0..n).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (&p, row) in self.pivots.range(..n) {
                if let Some(x) = row.get(&free) {
                    v[p] = -x;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Solution set of `A·x = b`: one particular solution plus a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

pub fn solve_linear(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<SolutionSet> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "{} rows but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    let n = a.first().map_or(0, Vec::len);
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("ragged coefficient matrix".into()));
    }
    let mut ech = Echelon::new(n + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut sparse: SparseRow = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        if !rhs.is_zero() {
            sparse.insert(n, rhs.clone());
        }
        ech.insert(sparse);
    }
    solve_echelon(&mut ech)
}

/// Read off the solution of an augmented system whose last column is the
/// right-hand side.
pub fn solve_echelon(ech: &mut Echelon) -> Result<SolutionSet> {
    let n = ech.ncols - 1;
    if ech.pivots.contains_key(&n) {
        return Err(Error::NoSolution);
    }
    let kernel = ech.kernel_of_first(n);
    let mut particular = vec![Scalar::zero(); n];
    for (&p, row) in &ech.pivots {
        if let Some(v) = row.get(&n) {
            particular[p] = v.clone();
        }
    }
    Ok(SolutionSet { particular, kernel })
}

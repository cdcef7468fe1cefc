//! Fraction-free exact linear algebra over the coefficient ring.
//!
//! Elimination runs over the fraction field of the parameter ring without
//! ever forming fractions: rows are kept in Bareiss-style Gauss-Jordan form,
//! where every pivot equals a common value `d` and every row entry is a minor
//! of the inserted rows (divided by a unit). Whenever `d` becomes a unit the
//! rows are rescaled so that `d = 1`, which reduces to ordinary Gauss-Jordan
//! over the rationals.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse vector keyed by an ordered coordinate type.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

pub(crate) fn sparse_add<K: Ord + Clone>(acc: &mut SparseVec<K>, key: &K, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(key) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(key);
            }
        }
        None => {
            acc.insert(key.clone(), c.clone());
        }
    }
}

pub(crate) fn sparse_axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Scalar, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        sparse_add(acc, k, &(c * x));
    }
}

fn sparse_scale<K: Ord + Clone>(v: &SparseVec<K>, c: &Scalar) -> SparseVec<K> {
    if c.is_one() {
        return v.clone();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

fn sparse_div_exact<K: Ord + Clone>(v: &SparseVec<K>, d: &Scalar) -> Result<SparseVec<K>> {
    if d.is_one() {
        return Ok(v.clone());
    }
    v.iter().map(|(k, x)| Ok((k.clone(), x.div_exact(d)?))).collect()
}

#[derive(Clone, Debug)]
struct Row<K> {
    pivot: K,
    entries: SparseVec<K>,
}

/// Incrementally built row space in fraction-free reduced echelon form.
///
/// The pivot of a row is its smallest key, and every row is zero in all
/// other rows' pivot columns and in every column left of its own pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    d: Scalar,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), d: Scalar::one() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The common pivot value.
    pub fn pivot_value(&self) -> &Scalar {
        &self.d
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    /// Rows as `(pivot, entries)`, in insertion order.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K>)> {
        self.rows.iter().map(|r| (&r.pivot, &r.entries))
    }

    /// `d*v` minus its projection on the current rows; zero iff `v` lies in
    /// the row space.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let hits: Vec<(usize, Scalar)> =
            v.iter().filter_map(|(k, x)| self.pivots.get(k).map(|&r| (r, x.clone()))).collect();
        let mut w = sparse_scale(v, &self.d);
        for (r, x) in hits {
            sparse_axpy(&mut w, &-&x, &self.rows[r].entries);
        }
        w
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns the new pivot key when the rank
    /// grows.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Result<Option<K>> {
        let w = self.reduce(v);
        let Some((c, p)) = w.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return Ok(None);
        };
        for row in &mut self.rows {
            let rc = row.entries.get(&c).cloned();
            let mut updated = sparse_scale(&row.entries, &p);
            if let Some(rc) = rc {
                sparse_axpy(&mut updated, &-&rc, &w);
            }
            row.entries = sparse_div_exact(&updated, &self.d)?;
        }
        self.pivots.insert(c.clone(), self.rows.len());
        self.rows.push(Row { pivot: c.clone(), entries: w });
        self.d = p;
        if self.d.is_unit() && !self.d.is_one() {
            let inv = self.d.inv()?;
            for row in &mut self.rows {
                row.entries = sparse_scale(&row.entries, &inv);
            }
            self.d = Scalar::one();
        }
        Ok(Some(c))
    }
}

/// Dense matrix with exact entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {}x{} matrix", entries.len(), rows, cols)));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer matrix convenience constructor.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A vector over the fraction field with a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracVec {
    pub num: Vec<Scalar>,
    pub den: Scalar,
}

impl FracVec {
    /// Cross-multiplied equality against another fraction vector.
    pub fn same_as(&self, other: &FracVec) -> bool {
        self.num.len() == other.num.len()
            && self.num.iter().zip(&other.num).all(|(a, b)| a * &other.den == b * &self.den)
    }
}

#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub rank: usize,
    /// Basis of `{x : M x = 0}`, entries in the parameter ring.
    pub nullspace: Vec<Vec<Scalar>>,
    /// One particular solution per right-hand-side column, `None` when that
    /// column is inconsistent.
    pub particular: Vec<Option<FracVec>>,
}

fn matrix_rows(m: &Matrix, extra: Option<Vec<Scalar>>) -> Vec<SparseVec<usize>> {
    (0..m.rows)
        .map(|i| {
            let mut row: SparseVec<usize> =
                m.row(i).iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect();
            if let Some(b) = &extra {
                if !b[i].is_zero() {
                    row.insert(m.cols, b[i].clone());
                }
            }
            row
        })
        .collect()
}

/// Exact rank, nullspace and particular solutions of `m x = rhs`.
pub fn solve_linear(m: &Matrix, rhs: &Matrix) -> Result<LinearSolution> {
    if rhs.rows != m.rows && rhs.cols > 0 {
        return Err(Error::Dimension(format!("rhs has {} rows, matrix has {}", rhs.rows, m.rows)));
    }
    let mut ech = Echelon::new();
    for row in matrix_rows(m, None) {
        ech.insert(&row)?;
    }
    let d = ech.pivot_value().clone();
    let pivot_of: BTreeMap<usize, &SparseVec<usize>> = ech.rows().map(|(k, r)| (*k, r)).collect();
    let mut nullspace = Vec::new();
    for f in (0..m.cols).filter(|j| !pivot_of.contains_key(j)) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[f] = d.clone();
        for (&c, row) in &pivot_of {
            if let Some(x) = row.get(&f) {
                v[c] = -x;
            }
        }
        nullspace.push(v);
    }

    let mut particular = Vec::with_capacity(rhs.cols);
    for k in 0..rhs.cols {
        let mut aug = Echelon::new();
        for row in matrix_rows(m, Some(rhs.column(k))) {
            aug.insert(&row)?;
        }
        if aug.pivot_keys().any(|&c| c == m.cols) {
            particular.push(None);
            continue;
        }
        let mut num = vec![Scalar::zero(); m.cols];
        for (&c, row) in aug.rows() {
            if let Some(b) = row.get(&m.cols) {
                num[c] = b.clone();
            }
        }
        particular.push(Some(FracVec { num, den: aug.pivot_value().clone() }));
    }
    Ok(LinearSolution { rank: ech.rank(), nullspace, particular })
}

//! Matrices over `F_q`, canonical subspaces and the subspace metric.
//!
//! Matrix text format: one row per line, each row a contiguous string of
//! base-field element indices (`100000`). For fields with more than ten
//! elements, entries are separated by whitespace instead. A set of matrices
//! is written as blocks separated by one blank line.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gfq::{FieldElement, FieldSpec, MAX_FIELD_SIZE};
use crate::polyring::{self, Poly};

/// A dense row-major matrix over one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    /// Builds a matrix from packed element indices in row-major order.
    pub fn from_indices(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {}x{}",
                rows, cols
            )));
        }
        Mat::with_shape(field, rows, cols, data)
    }

    // Like `from_indices` but allows zero rows (the basis of the zero subspace).
    fn with_shape(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad as u64,
                size: field.size() as u64,
            });
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::from_indices(field, rows.len(), cols, rows.concat())
    }

    pub fn from_elements(rows: &[Vec<FieldElement>]) -> Result<Self> {
        let field = rows
            .first()
            .and_then(|r| r.first())
            .map(|e| e.field().clone())
            .ok_or_else(|| Error::DimensionMismatch("empty matrix".into()))?;
        if rows.iter().flatten().any(|e| e.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        let idx: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|e| e.index()).collect())
            .collect();
        Mat::from_rows(&field, &idx)
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Packed index of entry `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field
            .element(self.entry(i, j) as u64)
            .expect("entries are valid")
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
            for (l, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(l)) {
                    if b != 0 {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: other.cols,
            data: out,
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse.
    pub fn inv(&self) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let (r, _) = rref(&aug);
        for i in 0..n {
            for j in 0..n {
                if r.entry(i, j) != u32::from(i == j) {
                    return Err(Error::Singular);
                }
            }
        }
        let data = (0..n).flat_map(|i| r.row(i)[n..].to_vec()).collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: n,
            cols: n,
            data,
        })
    }

    /// `self^e` for a square matrix.
    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        self.require_square()?;
        let mut acc = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::AmbientMismatch(self.cols, other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Parses one matrix block in the text format.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Mat> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| parse_row(field, l))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        Mat::from_rows(field, &rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_row(field: &FieldSpec, line: &str) -> Result<Vec<u32>> {
    let q = field.size();
    let entries: Vec<u32> = if q > 10 || line.contains(char::is_whitespace) {
        line.split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad matrix entry {:?}", t)))
            })
            .collect::<Result<_>>()?
    } else {
        line.chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad matrix entry {:?}", c)))
            })
            .collect::<Result<_>>()?
    };
    if let Some(bad) = entries.iter().find(|&&e| e >= q) {
        return Err(Error::Parse(format!(
            "entry {} out of range for a field of size {}",
            bad, q
        )));
    }
    Ok(entries)
}

/// Writes rows in the text format, without a trailing newline.
fn write_rows(f: &mut fmt::Formatter<'_>, m: &Mat) -> fmt::Result {
    let wide = m.field.size() > 10;
    for i in 0..m.rows {
        if i > 0 {
            writeln!(f)?;
        }
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        write!(f, "{}", row.join(if wide { " " } else { "" }))?;
    }
    Ok(())
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        write_rows(f, self)
    }
}

/// Parses blank-line-separated matrix blocks.
pub fn parse_blocks(field: &FieldSpec, text: &str) -> Result<Vec<Mat>> {
    let mut blocks = Vec::new();
    let mut current = String::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                blocks.push(Mat::parse(field, &current)?);
                current.clear();
            }
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    if !current.is_empty() {
        blocks.push(Mat::parse(field, &current)?);
    }
    Ok(blocks)
}

/// Renders matrices as blank-line-separated blocks, newline-terminated.
pub fn format_blocks(mats: &[Mat]) -> String {
    mats.iter()
        .map(|m| format!("{}\n", m))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Reduced row echelon form and rank. Nonzero rows come first, pivots are 1
/// and every pivot column is zero outside its pivot.
pub fn rref(m: &Mat) -> (Mat, usize) {
    let f = &m.field;
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(a[rank * cols + col]).expect("pivot is nonzero");
        if inv != 1 {
            for j in col..cols {
                a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
            }
        }
        for r in 0..rows {
            let factor = a[r * cols + col];
            if r == rank || factor == 0 {
                continue;
            }
            for j in col..cols {
                let sub = f.mul(factor, a[rank * cols + j]);
                a[r * cols + j] = f.sub(a[r * cols + j], sub);
            }
        }
        rank += 1;
    }
    (
        Mat {
            field: f.clone(),
            rows,
            cols,
            data: a,
        },
        rank,
    )
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    a.mul(b)
}

pub fn mat_inv(a: &Mat) -> Result<Mat> {
    a.inv()
}

/// A subspace of `F_q^n`, held as its unique RREF basis.
#[derive(Clone)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// The row space of `rows`.
    pub fn from_rows(rows: &Mat) -> Subspace {
        let (r, rank) = rref(rows);
        let data = r.data[..rank * r.cols].to_vec();
        Subspace {
            basis: Mat {
                field: r.field,
                rows: rank,
                cols: r.cols,
                data,
            },
        }
    }

    /// Parses a basis in the matrix text format (any spanning set).
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Subspace> {
        Ok(Subspace::from_rows(&Mat::parse(field, text)?))
    }

    /// Whole space `F_q^n`.
    pub fn full(field: &FieldSpec, n: usize) -> Subspace {
        Subspace {
            basis: Mat::identity(field, n),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    /// Canonical `k x n` RREF basis (zero rows for the zero subspace).
    pub fn matrix(&self) -> &Mat {
        &self.basis
    }

    /// All `q^k` vectors: vector `i` is `Σ c_j · row_j` where `c_0 + c_1·q + ...` = `i`.
    pub fn vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let f = self.field();
        let q = f.size() as u64;
        let count = q.pow(self.dim() as u32);
        let n = self.ambient_dim();
        (0..count).map(move |mut i| {
            let mut v = vec![0u32; n];
            for r in 0..self.dim() {
                let c = (i % q) as u32;
                i /= q;
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(self.basis.row(r)) {
                        *x = f.add(*x, f.mul(c, b));
                    }
                }
            }
            v
        })
    }

    /// The `q^k - 1` nonzero vectors.
    pub fn nonzero_vectors(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.vectors().skip(1)
    }

    pub(crate) fn apply_unchecked(&self, a: &Mat) -> Subspace {
        Subspace::from_rows(&self.basis.mul_unchecked(a))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.rows.hash(state);
        self.basis.cols.hash(state);
        self.basis.data.hash(state);
    }
}

impl Ord for Subspace {
    /// Ambient dimension, then dimension, then canonical entries row-major.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.basis.cols, self.basis.rows, &self.basis.data).cmp(&(
            other.basis.cols,
            other.basis.rows,
            &other.basis.data,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.basis)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rs[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.basis.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(""))?;
        }
        write!(f, "]")
    }
}

pub fn subspace_from_rows(rows: &Mat) -> Subspace {
    Subspace::from_rows(rows)
}

fn stacked_rank(u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.ambient_dim() != v.ambient_dim() {
        return Err(Error::AmbientMismatch(u.ambient_dim(), v.ambient_dim()));
    }
    Ok(u.basis.stack(&v.basis)?.rank())
}

/// `dim u + dim v - 2 dim(u ∩ v)`; for equal dimensions `k` this is
/// `2·rank[u; v] - 2k`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let r = stacked_rank(u, v)?;
    Ok(2 * r - u.dim() - v.dim())
}

pub fn intersection_dim(u: &Subspace, v: &Subspace) -> Result<usize> {
    let r = stacked_rank(u, v)?;
    Ok(u.dim() + v.dim() - r)
}

/// Canonical `rs(U·A)` for an invertible `n x n` matrix `A`.
pub fn subspace_apply(u: &Subspace, a: &Mat) -> Result<Subspace> {
    if u.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    a.require_square()?;
    if a.rows != u.ambient_dim() {
        return Err(Error::AmbientMismatch(u.ambient_dim(), a.rows));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(u.apply_unchecked(a))
}

/// Least `m ≥ 1` with `g^m = I`, by repeated multiplication.
pub fn matrix_order(g: &Mat) -> Result<u64> {
    g.require_square()?;
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    let id = Mat::identity(&g.field, g.rows);
    let mut power = g.clone();
    let mut m = 1u64;
    while power != id {
        if m >= MAX_FIELD_SIZE {
            return Err(Error::CapExceeded {
                size: m as u128,
                cap: MAX_FIELD_SIZE as u128,
            });
        }
        power = power.mul_unchecked(g);
        m += 1;
    }
    Ok(m)
}

/// Characteristic polynomial `det(xI - g)` by Berkowitz's division-free
/// algorithm.
pub fn char_poly(g: &Mat) -> Result<Poly> {
    g.require_square()?;
    let f = &g.field;
    let n = g.rows;
    // Coefficients of the leading r x r block's char poly, highest degree first.
    let mut vect = vec![1u32, f.neg(g.entry(0, 0))];
    for r in 1..n {
        let row: Vec<u32> = (0..r).map(|j| g.entry(r, j)).collect();
        let mut col: Vec<u32> = (0..r).map(|i| g.entry(i, r)).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(1);
        toeplitz.push(f.neg(g.entry(r, r)));
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&col)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            toeplitz.push(f.neg(dot));
            col = (0..r)
                .map(|i| (0..r).fold(0, |acc, j| f.add(acc, f.mul(g.entry(i, j), col[j]))))
                .collect();
        }
        vect = (0..r + 2)
            .map(|i| (0..=i.min(r)).fold(0, |acc, j| f.add(acc, f.mul(toeplitz[i - j], vect[j]))))
            .collect();
    }
    vect.reverse();
    Poly::from_indices(f, vect)
}

/// Irreducible iff the characteristic polynomial is irreducible.
pub fn is_irreducible_matrix(g: &Mat) -> Result<bool> {
    g.require_square()?;
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    polyring::is_irreducible(&char_poly(g)?)
}

/// Vector with packed index `i` in `F_q^n`: entry `j` is digit `j` of `i` in base `q`.
pub fn vector_from_index(field: &FieldSpec, n: usize, mut i: u64) -> Vec<u32> {
    let q = field.size() as u64;
    (0..n)
        .map(|_| {
            let d = (i % q) as u32;
            i /= q;
            d
        })
        .collect()
}

/// `S` with rows `v, vG, ..., vG^{n-1}` for the first nonzero `v` (in
/// vector index order) whose iterates are independent. Then `S·g·S⁻¹` is
/// the companion matrix of `char_poly(g)`.
pub fn to_companion_similarity(g: &Mat) -> Result<Mat> {
    if !is_irreducible_matrix(g)? {
        return Err(Error::ReducibleMatrix);
    }
    let n = g.rows;
    let total = (g.field.size() as u64).pow(n as u32);
    for i in 1..total {
        let v = vector_from_index(&g.field, n, i);
        let mut rows = vec![v];
        for _ in 1..n {
            let last = Mat::from_rows(&g.field, &rows[rows.len() - 1..])?;
            rows.push(last.mul_unchecked(g).data);
        }
        let s = Mat::from_rows(&g.field, &rows)?;
        if s.is_invertible() {
            return Ok(s);
        }
    }
    unreachable!("an irreducible matrix has a cyclic vector")
}

/// Whether the cyclic groups generated by the companion matrices of `f1` and
/// `f2` are conjugate in `GL_n`, i.e. whether the orders agree.
pub fn groups_conjugate(f1: &Poly, f2: &Poly) -> Result<bool> {
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch);
    }
    let (d1, d2) = (f1.degree().unwrap_or(0), f2.degree().unwrap_or(0));
    if d1 != d2 {
        return Err(Error::DegreeMismatch(d1, d2));
    }
    Ok(polyring::order_of_polynomial(f1)? == polyring::order_of_polynomial(f2)?)
}

/// Number of `k`-dimensional subspaces of `F_q^n` (Gaussian binomial).
pub fn grassmannian_size(q: u64, k: usize, n: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Largest Grassmannian [`grassmannian`] will enumerate.
pub const MAX_GRASSMANNIAN: u128 = 1 << 20;

/// Every `k`-dimensional subspace of `F_q^n`, sorted by canonical matrix.
pub fn grassmannian(field: &FieldSpec, k: usize, n: usize) -> Result<Vec<Subspace>> {
    if n == 0 || k > n {
        return Err(Error::DimensionMismatch(format!("G({}, {})", k, n)));
    }
    let size = grassmannian_size(field.size() as u64, k, n);
    if size > MAX_GRASSMANNIAN {
        return Err(Error::CapExceeded {
            size,
            cap: MAX_GRASSMANNIAN,
        });
    }
    let q = field.size() as u64;
    let mut out = Vec::with_capacity(size as usize);
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: right of the row's pivot, outside pivot columns.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let piv = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for fill in 0..q.pow(free.len() as u32) {
            let mut data = vec![0u32; k * n];
            for (r, &p) in pivots.iter().enumerate() {
                data[r * n + p] = 1;
            }
            let mut x = fill;
            for &(r, c) in &free {
                data[r * n + c] = (x % q) as u32;
                x /= q;
            }
            out.push(Subspace {
                basis: Mat {
                    field: field.clone(),
                    rows: k,
                    cols: n,
                    data,
                },
            });
        }
        // Next k-combination of 0..n in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < n - k + i) else {
            break;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
    }
    out.sort();
    Ok(out)
}

//! Dense exact linear algebra over a prime field `F_p`.
//!
//! Every ideal, cycle space and boundary space in the engine is a [`Subspace`]
//! of some coordinate space `k^N`, stored as a reduced row-echelon basis. The
//! echelon form is canonical, so two subspaces are equal iff their bases are.

use std::fmt;

use thiserror::Error;

/// A residue in `[0, p)`. The modulus lives in the surrounding [`PrimeField`].
pub type FieldElement = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus must be prime, got {0}")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
}

/// The prime field `F_p`. Cheap to copy; carried by every matrix and subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest supported modulus; products of two residues must fit in a `u64`.
    pub const MAX_MODULUS: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p > Self::MAX_MODULUS || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: u64) -> FieldElement {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn reduce_signed(self, v: i64) -> FieldElement {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(self, a: FieldElement) -> FieldElement {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(self, mut base: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `y += c * x`, elementwise.
    #[inline]
    pub fn axpy(self, y: &mut [FieldElement], c: FieldElement, x: &[FieldElement]) {
        if c == 0 {
            return;
        }
        let p = self.p as u64;
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = ((*yi as u64 + c as u64 * xi as u64) % p) as u32;
            }
        }
    }

    pub fn scale(self, x: &mut [FieldElement], c: FieldElement) {
        for xi in x.iter_mut() {
            *xi = self.mul(*xi, c);
        }
    }

    pub fn dot(self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        let p = self.p as u64;
        a.iter()
            .zip(b)
            .fold(0u64, |acc, (&x, &y)| (acc + x as u64 * y as u64) % p) as u32
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1 % field.modulus());
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.reduce_signed(v));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                f.axpy(dst, self.get(r, k), other.row(k));
            }
        }
        Ok(out)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: FieldElement, other: &FieldMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

/// Result of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub echelon: FieldMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form, choosing the leftmost available pivot column.
pub fn rref(m: &FieldMatrix) -> Rref {
    let f = m.field;
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        f.scale(&mut a.data[r * cols..(r + 1) * cols], inv);
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i != r {
                let factor = a.get(i, c);
                if factor != 0 {
                    f.axpy(&mut a.data[i * cols..(i + 1) * cols], f.neg(factor), &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        echelon: a,
        rank: pivots.len(),
        pivots,
    }
}

/// `{v : m v = 0}`.
pub fn kernel_basis(m: &FieldMatrix) -> Subspace {
    let f = m.field;
    let Rref { echelon, pivots, .. } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(echelon.get(r, free));
        }
        vectors.push(v);
    }
    Subspace::from_vectors(f, m.cols, vectors)
}

/// Column span of `m`.
pub fn image_basis(m: &FieldMatrix) -> Subspace {
    let mut s = Subspace::zero(m.field, m.rows);
    for c in 0..m.cols {
        s.insert(m.column(c));
    }
    s
}

pub fn subspace_sum(u: &Subspace, w: &Subspace) -> Result<Subspace, LinalgError> {
    u.check_compatible(w)?;
    let mut s = u.clone();
    for r in &w.rows {
        s.insert(r.clone());
    }
    Ok(s)
}

/// Intersection through the kernel of the stacked system `[U^T | -W^T]`.
pub fn subspace_intersect(u: &Subspace, w: &Subspace) -> Result<Subspace, LinalgError> {
    u.check_compatible(w)?;
    let f = u.field;
    let n = u.ambient_dim;
    let mut cols: Vec<Vec<FieldElement>> = u.rows.clone();
    for r in &w.rows {
        cols.push(r.iter().map(|&x| f.neg(x)).collect());
    }
    let stacked = FieldMatrix::from_columns(f, n, &cols);
    let ker = kernel_basis(&stacked);
    let mut out = Subspace::zero(f, n);
    for coeffs in &ker.rows {
        let mut v = vec![0; n];
        for (c, row) in coeffs.iter().zip(&u.rows) {
            f.axpy(&mut v, *c, row);
        }
        out.insert(v);
    }
    Ok(out)
}

pub fn contains(u: &Subspace, v: &[FieldElement]) -> Result<bool, LinalgError> {
    if v.len() != u.ambient_dim {
        return Err(LinalgError::DimensionMismatch {
            expected: u.ambient_dim,
            found: v.len(),
        });
    }
    Ok(u.contains(v))
}

/// A subspace of `k^ambient_dim` held in reduced row-echelon form.
///
/// Rows are sorted by pivot column; each pivot entry is 1 and every other row
/// is zero in that column.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("field", &self.field.modulus())
            .field("ambient_dim", &self.ambient_dim)
            .field("basis", &self.rows)
            .finish()
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                v
            })
            .collect();
        Self {
            field,
            ambient_dim,
            rows,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors<I>(field: PrimeField, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<FieldElement>>,
    {
        let mut s = Self::zero(field, ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    #[inline]
    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }
    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.rows.len(), self.ambient_dim);
        for (i, r) in self.rows.iter().enumerate() {
            m.data[i * self.ambient_dim..(i + 1) * self.ambient_dim].copy_from_slice(r);
        }
        m
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Reduces `v` in place against the basis; afterwards `v` is zero on every
    /// pivot column.
    pub fn reduce(&self, v: &mut [FieldElement]) {
        debug_assert_eq!(v.len(), self.ambient_dim);
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span. Returns the normalized new basis row when `v` was
    /// independent of the current basis.
    pub fn insert(&mut self, mut v: Vec<FieldElement>) -> Option<&[FieldElement]> {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong ambient dimension");
        self.reduce(&mut v);
        let lead = v.iter().position(|&x| x != 0)?;
        let f = self.field;
        let inv = f.inv(v[lead]);
        f.scale(&mut v, inv);
        for row in &mut self.rows {
            let c = row[lead];
            if c != 0 {
                f.axpy(row, f.neg(c), &v);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        Some(&self.rows[pos])
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.rows.iter().all(|r| other.contains(r))
    }

    /// `dim(self / sub)`; `sub` must lie inside `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        self.check_compatible(sub)?;
        debug_assert!(sub.is_subspace_of(self));
        Ok(self.dim() - sub.dim())
    }

    /// Coordinates outside the pivot set, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Smallest subspace containing `seeds` and closed under each operator.
    ///
    /// `apply(k, v)` evaluates operator `k` on `v`. Only newly independent
    /// directions are pushed through the operators, so the cost is linear in
    /// the final dimension times `op_count`.
    pub fn closure<I, F>(
        field: PrimeField,
        ambient_dim: usize,
        seeds: I,
        op_count: usize,
        mut apply: F,
    ) -> Self
    where
        I: IntoIterator<Item = Vec<FieldElement>>,
        F: FnMut(usize, &[FieldElement]) -> Vec<FieldElement>,
    {
        let mut s = Self::zero(field, ambient_dim);
        let mut queue: Vec<Vec<FieldElement>> = seeds.into_iter().collect();
        while let Some(v) = queue.pop() {
            if let Some(new_row) = s.insert(v) {
                let new_row = new_row.to_vec();
                for k in 0..op_count {
                    queue.push(apply(k, &new_row));
                }
            }
        }
        s
    }
}

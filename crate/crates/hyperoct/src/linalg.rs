//! Sparse exact linear algebra: vectors and matrices over a [`ScalarRing`],
//! reduced row echelon spans, rank / kernel / image, Smith normal form over
//! the integers and cokernel presentations.
//!
//! Storage is sparse triplet style with canonically ordered maps, so two
//! values compare equal exactly when they are equal entrywise.

use crate::scalar::{Scalar, ScalarRing};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A vector in a free module k^dimension. Absent entries are zero; explicit
/// zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeModuleVector {
    dimension: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl FreeModuleVector {
    pub fn zero(dimension: usize) -> Self {
        FreeModuleVector { dimension, entries: BTreeMap::new() }
    }

    pub fn basis(dimension: usize, index: usize, ring: &ScalarRing) -> Self {
        let mut v = Self::zero(dimension);
        v.set(index, ring.one(), ring);
        v
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn set(&mut self, i: usize, value: Scalar, ring: &ScalarRing) {
        assert!(i < self.dimension, "index {i} out of range {}", self.dimension);
        if ring.is_zero(&value) {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Index of the first nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn add_scaled(&self, other: &Self, coeff: &Scalar, ring: &ScalarRing) -> Self {
        assert_eq!(self.dimension, other.dimension, "dimension mismatch");
        let mut out = self.clone();
        for (i, v) in other.iter() {
            let add = ring.mul(coeff, v);
            let cur = out.entries.get(&i).cloned().unwrap_or_else(|| ring.zero());
            out.set(i, ring.add(&cur, &add), ring);
        }
        out
    }

    pub fn add(&self, other: &Self, ring: &ScalarRing) -> Self {
        self.add_scaled(other, &ring.one(), ring)
    }

    pub fn sub(&self, other: &Self, ring: &ScalarRing) -> Self {
        self.add_scaled(other, &ring.neg(&ring.one()), ring)
    }

    pub fn scale(&self, coeff: &Scalar, ring: &ScalarRing) -> Self {
        let mut out = Self::zero(self.dimension);
        for (i, v) in self.iter() {
            out.set(i, ring.mul(coeff, v), ring);
        }
        out
    }

    pub fn map_into_ring(&self, from: &ScalarRing, to_fraction_field: bool) -> Self {
        if !to_fraction_field {
            return self.clone();
        }
        let mut out = Self::zero(self.dimension);
        for (i, v) in self.iter() {
            out.entries.insert(i, from.to_fraction_field(v));
        }
        out
    }
}

impl fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.iter().map(|(i, v)| format!("{v}*e{i}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A sparse rows x cols matrix. Entries are stored row-major in a canonical
/// ordered map with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize, ring: &ScalarRing) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, ring.one(), ring);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar, ring: &ScalarRing) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if ring.is_zero(&value) {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), value);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &Scalar, ring: &ScalarRing) {
        let cur = self.entries.get(&(r, c)).cloned().unwrap_or_else(|| ring.zero());
        self.set(r, c, ring.add(&cur, value), ring);
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.entries.get(&(r, c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            out.entries.insert((c, r), v.clone());
        }
        out
    }

    pub fn column(&self, c: usize) -> FreeModuleVector {
        let mut v = FreeModuleVector::zero(self.rows);
        for ((r, cc), val) in &self.entries {
            if *cc == c {
                v.entries.insert(*r, val.clone());
            }
        }
        v
    }

    /// All columns, extracted in one pass over the entries.
    pub fn columns(&self) -> Vec<FreeModuleVector> {
        let mut out = vec![FreeModuleVector::zero(self.rows); self.cols];
        for ((r, c), val) in &self.entries {
            out[*c].entries.insert(*r, val.clone());
        }
        out
    }

    pub fn row(&self, r: usize) -> FreeModuleVector {
        let mut v = FreeModuleVector::zero(self.cols);
        for ((_, c), val) in self.entries.range((r, 0)..(r + 1, 0)) {
            v.entries.insert(*c, val.clone());
        }
        v
    }

    pub fn from_columns(rows: usize, columns: &[FreeModuleVector]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.dimension(), rows);
            for (r, v) in col.iter() {
                m.entries.insert((r, c), v.clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &SparseMatrix, ring: &ScalarRing) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        // group rhs entries by row once
        let mut rhs_rows: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (r, c, v) in other.iter() {
            rhs_rows.entry(r).or_default().push((c, v));
        }
        for (r, k, a) in self.iter() {
            if let Some(row) = rhs_rows.get(&k) {
                for (c, b) in row {
                    out.add_to(r, *c, &ring.mul(a, b), ring);
                }
            }
        }
        out
    }

    pub fn mul_vector(&self, v: &FreeModuleVector, ring: &ScalarRing) -> FreeModuleVector {
        assert_eq!(self.cols, v.dimension(), "matrix-vector shape mismatch");
        let mut out = FreeModuleVector::zero(self.rows);
        for (r, c, a) in self.iter() {
            if let Some(x) = v.get(c) {
                let cur = out.entries.get(&r).cloned().unwrap_or_else(|| ring.zero());
                out.set(r, ring.add(&cur, &ring.mul(a, x)), ring);
            }
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix, ring: &ScalarRing) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (r, c, v) in other.iter() {
            out.add_to(r, c, &ring.neg(v), ring);
        }
        out
    }

    pub fn map_into_fraction_field(&self, from: &ScalarRing) -> SparseMatrix {
        let mut out = Self::zero(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            out.entries.insert((r, c), from.to_fraction_field(v));
        }
        out
    }
}

/// A growing subspace of k^dim kept in reduced row echelon form over a
/// field. Supports membership tests and canonical reduction mod the span.
#[derive(Debug, Clone)]
pub struct Subspace {
    ring: ScalarRing,
    dim: usize,
    // pivot index -> vector with leading 1 at pivot, zeros at other pivots
    rows: BTreeMap<usize, FreeModuleVector>,
}

impl Subspace {
    pub fn new(ring: ScalarRing, dim: usize) -> Self {
        assert!(ring.is_field(), "echelon spans require a field");
        Subspace { ring, dim, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn basis(&self) -> Vec<&FreeModuleVector> {
        self.rows.values().collect()
    }

    /// Canonical representative of v modulo the span.
    pub fn reduce(&self, v: &FreeModuleVector) -> FreeModuleVector {
        let ring = &self.ring;
        let mut cur = v.clone();
        loop {
            let Some(lead) = cur.leading() else { return cur };
            // reduce every pivot position present in cur, starting from lead
            let mut changed = false;
            let positions: Vec<usize> = cur
                .iter()
                .map(|(i, _)| i)
                .filter(|i| *i >= lead && self.rows.contains_key(i))
                .collect();
            for p in positions {
                if let Some(c) = cur.get(p).cloned() {
                    let row = &self.rows[&p];
                    cur = cur.add_scaled(row, &ring.neg(&c), ring);
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    pub fn contains(&self, v: &FreeModuleVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns true if the span grew.
    pub fn insert(&mut self, v: &FreeModuleVector) -> bool {
        assert_eq!(v.dimension(), self.dim, "dimension mismatch");
        let ring = self.ring;
        let red = self.reduce(v);
        let Some(pivot) = red.leading() else { return false };
        let lead = red.get(pivot).cloned().unwrap();
        let normalized = red.scale(&ring.inv(&lead).expect("field inverse"), &ring);
        // keep full RREF: clear the new pivot column from existing rows
        let affected: Vec<usize> = self
            .rows
            .iter()
            .filter(|(_, row)| row.get(pivot).is_some())
            .map(|(p, _)| *p)
            .collect();
        for p in affected {
            let coeff = self.rows[&p].get(pivot).cloned().unwrap();
            let updated = self.rows[&p].add_scaled(&normalized, &ring.neg(&coeff), &ring);
            self.rows.insert(p, updated);
        }
        self.rows.insert(pivot, normalized);
        true
    }
}

/// Rank of a matrix as a linear map. Over Z the rank is taken over Q.
pub fn rank(m: &SparseMatrix, ring: &ScalarRing) -> usize {
    let field = ring.fraction_field();
    let lift = *ring == ScalarRing::Integers;
    let mut span = Subspace::new(field, m.cols());
    for r in 0..m.rows() {
        let row = m.row(r).map_into_ring(ring, lift);
        span.insert(&row);
        if span.rank() == m.cols().min(m.rows()) {
            break;
        }
    }
    span.rank()
}

/// Rank of the column span, inserting columns one at a time. `stop_at`
/// allows early exit once a known upper bound has been reached.
pub fn column_rank_with_cap(m: &SparseMatrix, ring: &ScalarRing, stop_at: Option<usize>) -> usize {
    let field = ring.fraction_field();
    let lift = *ring == ScalarRing::Integers;
    let mut span = Subspace::new(field, m.rows());
    for col in m.columns() {
        span.insert(&col.map_into_ring(ring, lift));
        if let Some(bound) = stop_at {
            if span.rank() >= bound {
                break;
            }
        }
    }
    span.rank()
}

/// A basis of the null space of m (viewed as a map k^cols -> k^rows).
pub fn kernel_basis(m: &SparseMatrix, ring: &ScalarRing) -> Vec<FreeModuleVector> {
    let field = ring.fraction_field();
    let lift = *ring == ScalarRing::Integers;
    let mut span = Subspace::new(field, m.cols());
    for r in 0..m.rows() {
        span.insert(&m.row(r).map_into_ring(ring, lift));
    }
    let pivots = span.pivots();
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = FreeModuleVector::zero(m.cols());
        v.set(free, field.one(), &field);
        for p in &pivots {
            if let Some(coeff) = span.rows[p].get(free) {
                v.set(*p, field.neg(coeff), &field);
            }
        }
        basis.push(v);
    }
    basis
}

/// A reduced basis of the column space.
pub fn image_basis(m: &SparseMatrix, ring: &ScalarRing) -> Vec<FreeModuleVector> {
    let field = ring.fraction_field();
    let lift = *ring == ScalarRing::Integers;
    let mut span = Subspace::new(field, m.rows());
    for col in m.columns() {
        span.insert(&col.map_into_ring(ring, lift));
    }
    span.basis().into_iter().cloned().collect()
}

/// Smith normal form of an integer matrix: invariant factors d_1 | d_2 | ...
/// together with unimodular transforms, U * M * V = diag(d_i).
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub factors: Vec<BigInt>,
    pub left: SparseMatrix,
    pub right: SparseMatrix,
}

struct DenseInt {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl DenseInt {
    fn from_sparse(m: &SparseMatrix) -> Self {
        let mut data = vec![BigInt::zero(); m.rows() * m.cols()];
        for (r, c, v) in m.iter() {
            data[r * m.cols() + c] = v.as_int().clone();
        }
        DenseInt { rows: m.rows(), cols: m.cols(), data }
    }

    fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        DenseInt { rows: n, cols: n, data }
    }

    fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for c in 0..self.cols {
            let add = self.at(b, c) * q;
            let v = self.at(a, c) + add;
            self.set(a, c, v);
        }
    }

    /// col[a] += q * col[b]
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for r in 0..self.rows {
            let add = self.at(r, b) * q;
            let v = self.at(r, a) + add;
            self.set(r, a, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c);
            self.set(r, c, v);
        }
    }

    fn to_sparse(&self, ring: &ScalarRing) -> SparseMatrix {
        let mut m = SparseMatrix::zero(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.at(r, c);
                if !v.is_zero() {
                    m.set(r, c, Scalar::Int(v.clone()), ring);
                }
            }
        }
        m
    }
}

fn snf_engine(m: &SparseMatrix, with_transforms: bool) -> (Vec<BigInt>, Option<(DenseInt, DenseInt)>) {
    let mut a = DenseInt::from_sparse(m);
    let mut transforms = if with_transforms {
        Some((DenseInt::identity(m.rows()), DenseInt::identity(m.cols())))
    } else {
        None
    };
    let n = m.rows().min(m.cols());
    let mut k = 0;
    while k < n {
        // pick the entry of minimal absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for r in k..a.rows {
            for c in k..a.cols {
                if !a.at(r, c).is_zero() {
                    match &pivot {
                        None => pivot = Some((r, c)),
                        Some((pr, pc)) => {
                            if a.at(r, c).abs() < a.at(*pr, *pc).abs() {
                                pivot = Some((r, c));
                            }
                        }
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap_rows(k, pr);
        a.swap_cols(k, pc);
        if let Some((u, v)) = transforms.as_mut() {
            u.swap_rows(k, pr);
            v.swap_cols(k, pc);
        }

        let mut dirty = false;
        for r in (k + 1)..a.rows {
            if !a.at(r, k).is_zero() {
                let q = -(a.at(r, k) / a.at(k, k));
                a.add_row(r, k, &q);
                if let Some((u, _)) = transforms.as_mut() {
                    u.add_row(r, k, &q);
                }
                if !a.at(r, k).is_zero() {
                    dirty = true;
                }
            }
        }
        for c in (k + 1)..a.cols {
            if !a.at(k, c).is_zero() {
                let q = -(a.at(k, c) / a.at(k, k));
                a.add_col(c, k, &q);
                if let Some((_, v)) = transforms.as_mut() {
                    v.add_col(c, k, &q);
                }
                if !a.at(k, c).is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // smaller remainders exist; re-pick the pivot
        }
        // enforce divisibility of later entries by the pivot
        let mut fixed = true;
        'scan: for r in (k + 1)..a.rows {
            for c in (k + 1)..a.cols {
                if !(a.at(r, c) % a.at(k, k)).is_zero() {
                    let one = BigInt::one();
                    a.add_row(k, r, &one);
                    if let Some((u, _)) = transforms.as_mut() {
                        u.add_row(k, r, &one);
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if a.at(k, k).is_negative() {
            a.negate_row(k);
            if let Some((u, _)) = transforms.as_mut() {
                u.negate_row(k);
            }
        }
        k += 1;
    }
    let mut factors = Vec::new();
    for i in 0..n {
        let d = a.at(i, i);
        if d.is_zero() {
            break;
        }
        factors.push(d.clone());
    }
    (factors, transforms)
}

/// Smith normal form with unimodular transforms. Entries must be integers.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithNormalForm {
    let (factors, transforms) = snf_engine(m, true);
    let (u, v) = transforms.unwrap();
    let ring = ScalarRing::Integers;
    SmithNormalForm { factors, left: u.to_sparse(&ring), right: v.to_sparse(&ring) }
}

/// Invariant factors only; avoids building the transform matrices.
pub fn smith_invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    snf_engine(m, false).0
}

/// Exact determinant over the fraction field (product of elimination pivots).
pub fn determinant(m: &SparseMatrix, ring: &ScalarRing) -> Scalar {
    assert_eq!(m.rows(), m.cols(), "determinant needs a square matrix");
    let field = ring.fraction_field();
    let lift = *ring == ScalarRing::Integers;
    let n = m.rows();
    let mut rows: Vec<FreeModuleVector> =
        (0..n).map(|r| m.row(r).map_into_ring(ring, lift)).collect();
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|r| rows[*r].get(col).is_some()) else {
            return ring.zero();
        };
        if p != col {
            rows.swap(p, col);
            det = field.neg(&det);
        }
        let pivot = rows[col].get(col).cloned().unwrap();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).expect("nonzero pivot");
        for r in (col + 1)..n {
            if let Some(c) = rows[r].get(col).cloned() {
                let factor = field.neg(&field.mul(&c, &inv));
                rows[r] = rows[r].add_scaled(&rows[col], &factor, &field);
            }
        }
    }
    if lift {
        // unimodular checks want the integer value back
        if let Scalar::Rat(x) = &det {
            assert!(x.is_integer());
            return Scalar::Int(x.to_integer());
        }
    }
    det
}

/// Presentation of the cokernel k^ambient / im(relations).
#[derive(Debug, Clone)]
pub struct CokernelPresentation {
    pub ambient_dimension: usize,
    pub relations: SparseMatrix,
    pub data: CokernelData,
}

#[derive(Debug, Clone)]
pub enum CokernelData {
    /// Over a field: quotient dimension, the projection matrix
    /// (quotient_dimension x ambient) and the ambient basis indices whose
    /// classes form the canonical quotient basis.
    Field {
        quotient_dimension: usize,
        projection: SparseMatrix,
        class_representatives: Vec<usize>,
    },
    /// Over Z: the free rank and all invariant factors of the relation
    /// matrix (torsion corresponds to the factors > 1).
    Integers { free_rank: usize, invariant_factors: Vec<BigInt> },
}

impl CokernelPresentation {
    pub fn quotient_dimension(&self) -> Option<usize> {
        match &self.data {
            CokernelData::Field { quotient_dimension, .. } => Some(*quotient_dimension),
            CokernelData::Integers { .. } => None,
        }
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        match &self.data {
            CokernelData::Integers { invariant_factors, .. } => invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .cloned()
                .collect(),
            CokernelData::Field { .. } => Vec::new(),
        }
    }
}

/// Cokernel of a matrix acting into k^rows. Over a field this produces an
/// explicit projection onto canonical quotient coordinates; over Z it
/// reports free rank and invariant factors via Smith normal form.
pub fn cokernel(m: &SparseMatrix, ring: &ScalarRing) -> CokernelPresentation {
    match ring {
        ScalarRing::Integers => {
            let factors = smith_invariant_factors(m);
            CokernelPresentation {
                ambient_dimension: m.rows(),
                relations: m.clone(),
                data: CokernelData::Integers {
                    free_rank: m.rows() - factors.len(),
                    invariant_factors: factors,
                },
            }
        }
        field => {
            let mut span = Subspace::new(*field, m.rows());
            for col in m.columns() {
                span.insert(&col);
            }
            let pivots = span.pivots();
            let free: Vec<usize> = (0..m.rows()).filter(|r| !pivots.contains(r)).collect();
            let mut projection = SparseMatrix::zero(free.len(), m.rows());
            for (q, fr) in free.iter().enumerate() {
                projection.set(q, *fr, field.one(), field);
            }
            // reducing e_p for a pivot row p yields minus the free-part of
            // the echelon row with that pivot
            for p in &pivots {
                let row = &span.rows[p];
                for (i, v) in row.iter() {
                    if i == *p {
                        continue;
                    }
                    let q = free.iter().position(|f| *f == i).expect("non-pivot entry");
                    projection.set(q, *p, field.neg(v), field);
                }
            }
            CokernelPresentation {
                ambient_dimension: m.rows(),
                relations: m.clone(),
                data: CokernelData::Field {
                    quotient_dimension: free.len(),
                    projection,
                    class_representatives: free,
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> ScalarRing {
        ScalarRing::Rationals
    }

    fn mat(rows: usize, cols: usize, data: &[(usize, usize, i64)], ring: &ScalarRing) -> SparseMatrix {
        let mut m = SparseMatrix::zero(rows, cols);
        for (r, c, v) in data {
            m.set(*r, *c, ring.from_i64(*v), ring);
        }
        m
    }

    #[test]
    fn rank_identity_f2() {
        let f2 = ScalarRing::prime_field(2).unwrap();
        let m = SparseMatrix::identity(3, &f2);
        assert_eq!(rank(&m, &f2), 3);
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(rank(&SparseMatrix::zero(2, 5), &q()), 0);
    }

    #[test]
    fn rank_dependent_rows() {
        // [[2,4],[1,2]] has rank 1 by hand row reduction
        let m = mat(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 1), (1, 1, 2)], &q());
        assert_eq!(rank(&m, &q()), 1);
        assert_eq!(kernel_basis(&m, &q()).len(), 1);
    }

    #[test]
    fn snf_identity() {
        let z = ScalarRing::Integers;
        let m = SparseMatrix::identity(2, &z);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn snf_diag_2_3() {
        let z = ScalarRing::Integers;
        let m = mat(2, 2, &[(0, 0, 2), (1, 1, 3)], &z);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, vec![BigInt::from(1), BigInt::from(6)]);
        // U*M*V equals the diagonal of the factors
        let umv = snf.left.mul(&m, &z).mul(&snf.right, &z);
        let mut expect = SparseMatrix::zero(2, 2);
        expect.set(0, 0, Scalar::Int(BigInt::from(1)), &z);
        expect.set(1, 1, Scalar::Int(BigInt::from(6)), &z);
        assert_eq!(umv, expect);
        assert_eq!(determinant(&snf.left, &z).abs_int(), BigInt::one());
        assert_eq!(determinant(&snf.right, &z).abs_int(), BigInt::one());
    }

    #[test]
    fn snf_zero_matrix() {
        let m = SparseMatrix::zero(3, 2);
        assert!(smith_normal_form(&m).factors.is_empty());
    }

    #[test]
    fn cokernel_of_zero_map() {
        let pres = cokernel(&SparseMatrix::zero(2, 3), &q());
        assert_eq!(pres.quotient_dimension(), Some(2));
    }

    #[test]
    fn cokernel_of_identity_f3() {
        let f3 = ScalarRing::prime_field(3).unwrap();
        let pres = cokernel(&SparseMatrix::identity(4, &f3), &f3);
        assert_eq!(pres.quotient_dimension(), Some(0));
    }

    #[test]
    fn cokernel_times_two_over_z() {
        let z = ScalarRing::Integers;
        let m = mat(1, 1, &[(0, 0, 2)], &z);
        let pres = cokernel(&m, &z);
        match &pres.data {
            CokernelData::Integers { free_rank, .. } => assert_eq!(*free_rank, 0),
            _ => panic!("expected integer data"),
        }
        assert_eq!(pres.torsion(), vec![BigInt::from(2)]);
    }

    #[test]
    fn projection_kills_relations() {
        let f5 = ScalarRing::prime_field(5).unwrap();
        let m = mat(3, 2, &[(0, 0, 1), (1, 0, 2), (1, 1, 1), (2, 1, 4)], &f5);
        let pres = cokernel(&m, &f5);
        let CokernelData::Field { projection, quotient_dimension, .. } = &pres.data else {
            panic!("expected field data");
        };
        assert_eq!(*quotient_dimension, 1);
        let product = projection.mul(&m, &f5);
        assert!(product.is_zero());
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(entries in proptest::collection::vec((0usize..5, 0usize..6, -4i64..5), 0..18)) {
            let ring = q();
            let mut m = SparseMatrix::zero(5, 6);
            for (r, c, v) in entries {
                m.add_to(r, c, &ring.from_i64(v), &ring);
            }
            let r = rank(&m, &ring);
            let k = kernel_basis(&m, &ring).len();
            prop_assert_eq!(r + k, 6);
            // every kernel vector really is annihilated
            for v in kernel_basis(&m, &ring) {
                prop_assert!(m.mul_vector(&v, &ring).is_zero());
            }
        }

        #[test]
        fn snf_transforms_are_unimodular(entries in proptest::collection::vec((0usize..4, 0usize..4, -6i64..7), 0..12)) {
            let z = ScalarRing::Integers;
            let mut m = SparseMatrix::zero(4, 4);
            for (r, c, v) in entries {
                m.add_to(r, c, &z.from_i64(v), &z);
            }
            let snf = smith_normal_form(&m);
            prop_assert_eq!(determinant(&snf.left, &z).abs_int(), BigInt::one());
            prop_assert_eq!(determinant(&snf.right, &z).abs_int(), BigInt::one());
            let umv = snf.left.mul(&m, &z).mul(&snf.right, &z);
            let mut expect = SparseMatrix::zero(4, 4);
            for (i, d) in snf.factors.iter().enumerate() {
                expect.set(i, i, Scalar::Int(d.clone()), &z);
            }
            prop_assert_eq!(umv, expect);
            // divisibility chain
            for w in snf.factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}

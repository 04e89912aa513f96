//! Word-packed linear algebra over GF(2).
//!
//! Vectors are column vectors; a [`BitMatrix`] with `r` rows and `c` columns
//! acts on vectors of dimension `c`. Rows are packed little-endian into `u64`
//! words: coordinate `i` lives in word `i / 64` at bit `i % 64`. Padding bits
//! past the logical length are always zero.
//!
//! Elimination always pivots on the lowest available column and processes
//! rows top-down, so reduced row-echelon forms (and therefore [`Subspace`]
//! values) are reproducible bit-for-bit.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted from textual input.
pub const MAX_DIM: usize = 1024;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

#[inline]
fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

// ---------------------------------------------------------------------------
// BitVector
// ---------------------------------------------------------------------------

/// An element of (Z/2)^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    dim: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(dim: usize) -> Self {
        BitVector {
            dim,
            words: vec![0; words_for(dim)],
        }
    }

    /// The `i`-th reference basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let mut words: Vec<u64> = (0..words_for(dim)).map(|_| rng.gen()).collect();
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(dim);
        }
        BitVector { dim, words }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "index {i} out of range for dimension {}", self.dim);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Standard dot product Σ xᵢyᵢ.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.dim, other.dim, "dot product of mismatched dimensions");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn add_assign(&mut self, other: &BitVector) {
        assert_eq!(self.dim, other.dim, "sum of mismatched dimensions");
        xor_into(&mut self.words, &other.words);
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD_BITS + t)
                }
            })
        })
    }

    /// Places coordinate `i` of `self` at `positions[i]` in a vector of
    /// dimension `target_dim`.
    pub fn embed(&self, positions: &[usize], target_dim: usize) -> BitVector {
        assert_eq!(positions.len(), self.dim);
        let mut out = BitVector::zeros(target_dim);
        for i in self.ones() {
            out.set(positions[i], true);
        }
        out
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.dim + other.dim);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.dim + i, true);
        }
        out
    }

    /// Coordinates `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        BitVector::from_bits((start..end).map(|i| self.get(i)))
    }
}

impl std::ops::Add for &BitVector {
    type Output = BitVector;

    fn add(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_DIM {
            return Err(Error::Parse(format!(
                "vector of length {} exceeds the maximum dimension {MAX_DIM}",
                s.len()
            )));
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitVector::from_bits(bits))
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// BitMatrix
// ---------------------------------------------------------------------------

/// A dense `rows x cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors, all of dimension `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            check_dim(cols, r.dim())?;
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors, all of dimension `rows`.
    pub fn from_columns(rows: usize, cols: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            check_dim(rows, c.dim())?;
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Parses a list of equal-length row strings. An empty list is the 0x0 matrix.
    pub fn from_row_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let vecs = rows
            .iter()
            .map(|s| s.as_ref().parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = vecs.first().map_or(0, BitVector::dim);
        Self::from_rows(cols, &vecs)
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows).map(|i| self.row(i).to_string()).collect()
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            let v = BitVector::random(cols, rng);
            m.row_words_mut(i).copy_from_slice(v.words());
        }
        m
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

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            dim: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    pub fn row_vectors(&self) -> Vec<BitVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> BitVector {
        BitVector::from_bits((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn column_vectors(&self) -> Vec<BitVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let idx = i * self.stride + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Adds row `src` into row `dst`, touching only words from `from_word` on.
    #[inline]
    fn add_row(&mut self, src: usize, dst: usize, from_word: usize) {
        let s = self.stride;
        let (lo, hi) = if src < dst { (src, dst) } else { (dst, src) };
        let (head, tail) = self.data.split_at_mut(hi * s);
        let lo_row = &mut head[lo * s..(lo + 1) * s];
        let hi_row = &mut tail[..s];
        if src < dst {
            xor_into(&mut hi_row[from_word..], &lo_row[from_word..]);
        } else {
            xor_into(&mut lo_row[from_word..], &hi_row[from_word..]);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_dim(self.rows, other.rows)?;
        check_dim(self.cols, other.cols)?;
        let mut out = self.clone();
        xor_into(&mut out.data, &other.data);
        Ok(out)
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
            for k in row.ones() {
                xor_into(dst, other.row_words(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_dim(self.cols, v.dim())?;
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and rank. Zero rows are kept at the bottom so
    /// the shape is unchanged.
    pub fn rref(&self) -> (BitMatrix, usize) {
        let mut m = self.clone();
        let rank = m.eliminate(None, true);
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(None, false)
    }

    /// Gauss(-Jordan) elimination in place, replaying each row operation on
    /// `companion` when given. Returns the rank.
    fn eliminate(&mut self, mut companion: Option<&mut BitMatrix>, reduce_above: bool) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let w = col / WORD_BITS;
            let bit = 1u64 << (col % WORD_BITS);
            let found = (pivot_row..self.rows).find(|&r| self.data[r * self.stride + w] & bit != 0);
            let Some(r) = found else { continue };
            self.swap_rows(r, pivot_row);
            if let Some(c) = companion.as_deref_mut() {
                c.swap_rows(r, pivot_row);
            }
            let start = if reduce_above { 0 } else { pivot_row + 1 };
            for other in start..self.rows {
                if other != pivot_row && self.data[other * self.stride + w] & bit != 0 {
                    self.add_row(pivot_row, other, w);
                    if let Some(c) = companion.as_deref_mut() {
                        c.add_row(pivot_row, other, 0);
                    }
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut work = self.clone();
        let mut inv = BitMatrix::identity(self.rows);
        let rank = work.eliminate(Some(&mut inv), true);
        if rank < self.rows {
            return Err(Error::SingularMatrix);
        }
        Ok(inv)
    }

    /// The null space {v : M·v = 0}.
    pub fn kernel(&self) -> Subspace {
        let (r, rank) = self.rref();
        let pivots: Vec<usize> = (0..rank)
            .map(|i| r.row(i).first_one().expect("nonzero pivot row"))
            .collect();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let generators: Vec<BitVector> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if r.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.cols, &generators).expect("kernel generators have matching dimension")
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.to_row_strings().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(r)?;
        }
        f.write_str("]")
    }
}

impl Serialize for BitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_row_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<String>::deserialize(deserializer)?;
        BitMatrix::from_row_strings(&rows).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

/// A linear subspace of (Z/2)^d, stored by its reduced row-echelon basis.
///
/// The representation is canonical, so structural equality is set equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: BitMatrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_matrix(&BitMatrix::identity(ambient_dim))
    }

    /// The span of the rows of `m`.
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let (r, rank) = m.rref();
        let mut basis = BitMatrix::zeros(rank, m.cols());
        for i in 0..rank {
            basis.row_words_mut(i).copy_from_slice(r.row_words(i));
        }
        let pivots = (0..rank)
            .map(|i| basis.row(i).first_one().expect("nonzero pivot row"))
            .collect();
        Subspace { basis, pivots }
    }

    /// The span of an arbitrary (possibly dependent) list of vectors.
    pub fn span(ambient_dim: usize, vectors: &[BitVector]) -> Result<Self> {
        Ok(Self::from_matrix(&BitMatrix::from_rows(ambient_dim, vectors)?))
    }

    pub fn from_strings<S: AsRef<str>>(ambient_dim: usize, rows: &[S]) -> Result<Self> {
        let vecs = rows
            .iter()
            .map(|s| s.as_ref().parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        Self::span(ambient_dim, &vecs)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.basis.to_row_strings()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical (RREF) basis, one vector per row.
    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<BitVector> {
        self.basis.row_vectors()
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r.get(p) {
                xor_into(&mut r.words, self.basis.row_words(i));
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        check_dim(self.ambient_dim(), v.dim())?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        check_dim(self.ambient_dim(), other.ambient_dim())?;
        Ok((0..other.dim()).all(|i| self.reduce(&other.basis.row(i)).is_zero()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_dim(self.ambient_dim(), other.ambient_dim())?;
        let mut vecs = self.basis_vectors();
        vecs.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim(), &vecs)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        let d = self.ambient_dim();
        check_dim(d, other.ambient_dim())?;
        let zero = BitVector::zeros(d);
        let mut rows: Vec<BitVector> = self.basis_vectors().iter().map(|u| u.concat(u)).collect();
        rows.extend(other.basis_vectors().iter().map(|w| w.concat(&zero)));
        let (r, rank) = BitMatrix::from_rows(2 * d, &rows)?.rref();
        let generators: Vec<BitVector> = (0..rank)
            .map(|i| r.row(i))
            .filter(|row| row.slice(0, d).is_zero())
            .map(|row| row.slice(d, 2 * d))
            .collect();
        Subspace::span(d, &generators)
    }

    /// True iff `self ⊕ other` is the whole ambient space.
    pub fn is_complement(&self, other: &Subspace) -> Result<bool> {
        check_dim(self.ambient_dim(), other.ambient_dim())?;
        Ok(self.dim() + other.dim() == self.ambient_dim()
            && self.sum(other)?.dim() == self.ambient_dim())
    }

    /// Vectors orthogonal to the subspace under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    /// The image m·U.
    pub fn image(&self, m: &BitMatrix) -> Result<Subspace> {
        check_dim(m.cols(), self.ambient_dim())?;
        let vecs = self
            .basis_vectors()
            .iter()
            .map(|u| m.mul_vec(u))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(m.rows(), &vecs)
    }

    /// The preimage {v : m·v ∈ U}.
    pub fn preimage(&self, m: &BitMatrix) -> Result<Subspace> {
        check_dim(m.rows(), self.ambient_dim())?;
        let equations = self.annihilator();
        Ok(equations.basis.mul(m)?.kernel())
    }

    /// The vector with the given coordinates relative to the canonical basis.
    pub fn combination(&self, coeffs: &BitVector) -> BitVector {
        assert_eq!(coeffs.dim(), self.dim());
        let mut v = BitVector::zeros(self.ambient_dim());
        for i in coeffs.ones() {
            xor_into(&mut v.words, self.basis.row_words(i));
        }
        v
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> BitVector {
        self.combination(&BitVector::random(self.dim(), rng))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient_dim(), self.to_strings())
    }
}

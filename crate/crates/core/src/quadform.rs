//! Non-degenerate quadratic forms over Z/2 and their orthogonal maps.
//!
//! A form is stored against one fixed reference basis e₁..e_d: `gram` holds
//! the polar bilinear form B(eᵢ, eⱼ) and `diag` the values g(eᵢ). For
//! v = Σ cᵢeᵢ the quadratic expansion gives
//!
//! g(v) = Σ cᵢ·g(eᵢ) + Σ_{i<j} cᵢcⱼ·B(eᵢ, eⱼ).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "FormDescriptor", into = "FormDescriptor")]
pub struct QuadraticForm {
    gram: BitMatrix,
    diag: BitVector,
    /// Strict upper triangle of `gram`, cached for evaluation.
    upper: BitMatrix,
}

/// JSON shape of a quadratic form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormDescriptor {
    pub dim: usize,
    pub gram: Vec<String>,
    pub diag: String,
}

impl TryFrom<FormDescriptor> for QuadraticForm {
    type Error = Error;

    fn try_from(d: FormDescriptor) -> Result<Self> {
        let gram = if d.gram.is_empty() {
            BitMatrix::zeros(0, 0)
        } else {
            BitMatrix::from_row_strings(&d.gram)?
        };
        if gram.rows() != d.dim {
            return Err(Error::DimensionMismatch {
                expected: d.dim,
                found: gram.rows(),
            });
        }
        QuadraticForm::new(gram, d.diag.parse()?)
    }
}

impl From<QuadraticForm> for FormDescriptor {
    fn from(f: QuadraticForm) -> Self {
        FormDescriptor {
            dim: f.dim(),
            gram: f.gram.to_row_strings(),
            diag: f.diag.to_string(),
        }
    }
}

impl QuadraticForm {
    /// Validates and builds a form from its polar matrix and basis values.
    pub fn new(gram: BitMatrix, diag: BitVector) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let d = gram.rows();
        if diag.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: diag.dim(),
            });
        }
        if !gram.is_symmetric() || (0..d).any(|i| gram.get(i, i)) {
            return Err(Error::NotAlternating);
        }
        if gram.rank() < d {
            return Err(Error::DegenerateForm);
        }
        let mut upper = gram.clone();
        for i in 0..d {
            for j in 0..=i {
                upper.set(i, j, false);
            }
        }
        Ok(QuadraticForm { gram, diag, upper })
    }

    /// The form Σ xᵢyᵢ on coordinates (x₁..x_n, y₁..y_n), i.e. the basis
    /// a₁..a_n, b₁..b_n with B(aᵢ, bⱼ) = δᵢⱼ and g zero on every basis vector.
    pub fn standard(genus: usize) -> Self {
        let d = 2 * genus;
        let mut gram = BitMatrix::zeros(d, d);
        for i in 0..genus {
            gram.set(i, genus + i, true);
            gram.set(genus + i, i, true);
        }
        Self::new(gram, BitVector::zeros(d)).expect("standard form is valid")
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &BitMatrix {
        &self.gram
    }

    pub fn diag(&self) -> &BitVector {
        &self.diag
    }

    fn check(&self, v: &BitVector) -> Result<()> {
        if v.dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.dim(),
            })
        }
    }

    pub fn evaluate(&self, v: &BitVector) -> Result<bool> {
        self.check(v)?;
        let cross = self.upper.mul_vec(v)?.dot(v);
        Ok(v.dot(&self.diag) ^ cross)
    }

    /// The polar form xᵀ·gram·y.
    pub fn bilinear(&self, x: &BitVector, y: &BitVector) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(x.dot(&self.gram.mul_vec(y)?))
    }

    /// True iff g vanishes on all of `u`. Checking g on a basis and B on all
    /// basis pairs suffices by the quadratic expansion.
    pub fn is_totally_singular(&self, u: &Subspace) -> Result<bool> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        for b in u.basis_vectors() {
            if self.evaluate(&b)? {
                return Ok(false);
            }
        }
        Ok(self.is_isotropic(u.basis())?)
    }

    /// True iff B vanishes on every pair of rows of `rows`.
    pub(crate) fn is_isotropic(&self, rows: &BitMatrix) -> Result<bool> {
        let pairing = rows.mul(&self.gram)?.mul(&rows.transpose())?;
        Ok(pairing == BitMatrix::zeros(rows.rows(), rows.rows()))
    }

    /// True iff `m` is invertible, preserves B on all basis pairs and g on
    /// every basis vector; together these give g(m·x) = g(x) for all x.
    pub fn is_orthogonal(&self, m: &BitMatrix) -> Result<bool> {
        let d = self.dim();
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if m.rows() != d { m.rows() } else { m.cols() },
            });
        }
        if m.rank() < d {
            return Ok(false);
        }
        if m.transpose().mul(&self.gram)?.mul(m)? != self.gram {
            return Ok(false);
        }
        for (i, col) in m.column_vectors().iter().enumerate() {
            if self.evaluate(col)? != self.diag.get(i) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The form obtained by changing basis: g'(x) = g(m·x).
    pub fn pullback(&self, m: &BitMatrix) -> Result<QuadraticForm> {
        let gram = m.transpose().mul(&self.gram)?.mul(m)?;
        let diag = m
            .column_vectors()
            .iter()
            .map(|c| self.evaluate(c))
            .collect::<Result<Vec<bool>>>()?;
        QuadraticForm::new(gram, BitVector::from_bits(diag))
    }

    /// Orthogonal direct sum, with coordinates laid out by [`block_positions`].
    pub fn direct_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let (n0, n1) = (self.dim() / 2, other.dim() / 2);
        let (p0, p1) = block_positions(n0, n1);
        let d = self.dim() + other.dim();
        let mut gram = BitMatrix::zeros(d, d);
        let mut diag = BitVector::zeros(d);
        for (f, pos) in [(self, &p0), (other, &p1)] {
            for i in 0..f.dim() {
                diag.set(pos[i], f.diag.get(i));
                for j in f.gram.row(i).ones() {
                    gram.set(pos[i], pos[j], true);
                }
            }
        }
        QuadraticForm::new(gram, diag).expect("direct sum of non-degenerate forms")
    }
}

/// Coordinate placement for a direct sum of a genus-`n0` block and a
/// genus-`n1` block into genus `n0 + n1`, keeping the a₁..a_n, b₁..b_n layout:
/// the first block's a/b coordinates come first within each half.
pub fn block_positions(n0: usize, n1: usize) -> (Vec<usize>, Vec<usize>) {
    let n = n0 + n1;
    let first = (0..n0).chain(n..n + n0).collect();
    let second = (n0..n).chain(n + n0..2 * n).collect();
    (first, second)
}

/// An element of O(V, g), validated on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrthogonalMap {
    form: QuadraticForm,
    matrix: BitMatrix,
}

impl OrthogonalMap {
    pub fn new(form: QuadraticForm, matrix: BitMatrix) -> Result<Self> {
        if !form.is_orthogonal(&matrix)? {
            return Err(Error::NotOrthogonal);
        }
        Ok(OrthogonalMap { form, matrix })
    }

    pub fn identity(form: QuadraticForm) -> Self {
        let matrix = BitMatrix::identity(form.dim());
        OrthogonalMap { form, matrix }
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn compose(&self, other: &OrthogonalMap) -> Result<OrthogonalMap> {
        if self.form != other.form {
            return Err(Error::FormMismatch);
        }
        Ok(OrthogonalMap {
            form: self.form.clone(),
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn inverse(&self) -> OrthogonalMap {
        OrthogonalMap {
            form: self.form.clone(),
            matrix: self.matrix.inverse().expect("orthogonal maps are invertible"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_row_strings(rows).unwrap()
    }

    #[test]
    fn standard_form_shapes() {
        assert_eq!(QuadraticForm::standard(0).dim(), 0);
        let f1 = QuadraticForm::standard(1);
        assert_eq!(*f1.gram(), m(&["01", "10"]));
        assert!(f1.diag().is_zero());
        let f2 = QuadraticForm::standard(2);
        assert_eq!(*f2.gram(), m(&["0010", "0001", "1000", "0100"]));
    }

    #[test]
    fn evaluate_on_genus_one() {
        let f = QuadraticForm::standard(1);
        assert!(!f.evaluate(&v("10")).unwrap());
        assert!(!f.evaluate(&v("01")).unwrap());
        assert!(f.evaluate(&v("11")).unwrap());
        assert!(!f.evaluate(&v("00")).unwrap());
        assert!(f.evaluate(&v("110")).is_err());
    }

    #[test]
    fn bilinear_examples() {
        let f = QuadraticForm::standard(2);
        // a₁+b₂ against b₁
        assert!(f.bilinear(&v("1001"), &v("0010")).unwrap());
        // a₁ against b₂
        assert!(!f.bilinear(&v("1000"), &v("0001")).unwrap());
    }

    #[test]
    fn totally_singular_examples() {
        let f2 = QuadraticForm::standard(2);
        let a = Subspace::span(4, &[v("1000"), v("0100")]).unwrap();
        assert!(f2.is_totally_singular(&a).unwrap());
        let f1 = QuadraticForm::standard(1);
        assert!(!f1.is_totally_singular(&Subspace::span(2, &[v("11")]).unwrap()).unwrap());
        let twisted = Subspace::span(4, &[v("1001"), v("0110")]).unwrap();
        assert!(f2.is_totally_singular(&twisted).unwrap());
    }

    #[test]
    fn orthogonal_examples() {
        let f1 = QuadraticForm::standard(1);
        assert!(f1.is_orthogonal(&BitMatrix::identity(2)).unwrap());
        assert!(f1.is_orthogonal(&m(&["01", "10"])).unwrap());
        // a₁ ↦ a₁+b₁, b₁ ↦ b₁
        assert!(!f1.is_orthogonal(&m(&["10", "11"])).unwrap());
        assert!(f1.is_orthogonal(&BitMatrix::identity(3)).is_err());
        assert!(!f1.is_orthogonal(&m(&["11", "11"])).unwrap());
    }

    #[test]
    fn construction_rejects_bad_polar_forms() {
        assert_eq!(
            QuadraticForm::new(m(&["11", "10"]), v("00")),
            Err(Error::NotAlternating)
        );
        assert_eq!(
            QuadraticForm::new(m(&["01", "00"]), v("00")),
            Err(Error::NotAlternating)
        );
        assert_eq!(
            QuadraticForm::new(m(&["000", "000", "000"]), v("000")),
            Err(Error::DegenerateForm)
        );
        // odd dimension can never be non-degenerate
        assert_eq!(
            QuadraticForm::new(m(&["011", "101", "110"]), v("000")),
            Err(Error::DegenerateForm)
        );
    }

    #[test]
    fn arf_obstructed_form_is_constructible() {
        let f = QuadraticForm::new(m(&["01", "10"]), v("11")).unwrap();
        for s in ["10", "01", "11"] {
            assert!(f.evaluate(&v(s)).unwrap());
        }
    }

    #[test]
    fn direct_sum_of_standards_is_standard() {
        let s1 = QuadraticForm::standard(1);
        assert_eq!(s1.direct_sum(&s1), QuadraticForm::standard(2));
        let s0 = QuadraticForm::standard(0);
        assert_eq!(s0.direct_sum(&QuadraticForm::standard(3)), QuadraticForm::standard(3));
    }

    #[test]
    fn descriptor_round_trip() {
        let f = QuadraticForm::standard(1);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"dim":2,"gram":["01","10"],"diag":"00"}"#);
        assert_eq!(serde_json::from_str::<QuadraticForm>(&json).unwrap(), f);
        let empty: QuadraticForm = serde_json::from_str(r#"{"dim":0,"gram":[],"diag":""}"#).unwrap();
        assert_eq!(empty, QuadraticForm::standard(0));
        assert!(serde_json::from_str::<QuadraticForm>(r#"{"dim":4,"gram":["01","10"],"diag":"00"}"#).is_err());
    }
}

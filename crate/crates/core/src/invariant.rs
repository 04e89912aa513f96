//! Homological data of surface embeddings and the quadruple point invariant.
//!
//! An embedding of a closed orientable genus-n surface F is represented by
//! its two kernel subspaces of H₁(F; Z/2) = (Z/2)^{2n}, one into the compact
//! complementary region (`a0`) and one into the non-compact region (`a1`),
//! plus the orientation it induces on F. Coordinates are relative to a fixed
//! symplectic reference basis a₁..a_n, b₁..b_n of H₁, so the intersection
//! form is the polar form of [`QuadraticForm::standard`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};
use crate::quadform::{block_positions, QuadraticForm};
use crate::tsd::{psi, psi_hat, Tsd};

/// Orientation of the surface relative to its fixed reference orientation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-", alias = "−")]
    Negative,
}

impl Orientation {
    /// 0 for the reference orientation, 1 for the opposite one.
    pub fn bit(self) -> bool {
        self == Orientation::Negative
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Orientation::Negative
        } else {
            Orientation::Positive
        }
    }

    pub fn flipped(self) -> Self {
        Self::from_bit(!self.bit())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "+",
            Orientation::Negative => "-",
        })
    }
}

/// The homological fingerprint (A⁰, A¹, o) of an embedding.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "EmbeddingDescriptor", into = "EmbeddingDescriptor")]
pub struct EmbeddingData {
    genus: usize,
    a0: Subspace,
    a1: Subspace,
    orientation: Orientation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingDescriptor {
    pub genus: usize,
    #[serde(rename = "A0")]
    pub a0: Vec<String>,
    #[serde(rename = "A1")]
    pub a1: Vec<String>,
    pub orientation: Orientation,
}

impl TryFrom<EmbeddingDescriptor> for EmbeddingData {
    type Error = Error;

    fn try_from(d: EmbeddingDescriptor) -> Result<Self> {
        let dim = 2 * d.genus;
        let a0 = Subspace::from_strings(dim, &d.a0)?;
        let a1 = Subspace::from_strings(dim, &d.a1)?;
        EmbeddingData::new(d.genus, a0, a1, d.orientation)
    }
}

impl From<EmbeddingData> for EmbeddingDescriptor {
    fn from(e: EmbeddingData) -> Self {
        EmbeddingDescriptor {
            genus: e.genus,
            a0: e.a0.to_strings(),
            a1: e.a1.to_strings(),
            orientation: e.orientation,
        }
    }
}

impl EmbeddingData {
    /// Validates that `a0 ⊕ a1` is the whole of H₁ and that both kernels are
    /// Lagrangian for the intersection form.
    pub fn new(genus: usize, a0: Subspace, a1: Subspace, orientation: Orientation) -> Result<Self> {
        let d = 2 * genus;
        let intersection = QuadraticForm::standard(genus);
        for (name, s) in [("A0", &a0), ("A1", &a1)] {
            if s.ambient_dim() != d {
                return Err(Error::InvalidEmbeddingData(format!(
                    "{name} lives in dimension {}, expected {d}",
                    s.ambient_dim()
                )));
            }
            if s.dim() != genus {
                return Err(Error::InvalidEmbeddingData(format!(
                    "{name} has dimension {}, expected {genus}",
                    s.dim()
                )));
            }
            if !intersection.is_isotropic(s.basis())? {
                return Err(Error::InvalidEmbeddingData(format!(
                    "{name} is not isotropic for the intersection form"
                )));
            }
        }
        if !a0.is_complement(&a1)? {
            return Err(Error::InvalidEmbeddingData(
                "A0 and A1 do not span H1 as a direct sum".into(),
            ));
        }
        Ok(EmbeddingData {
            genus,
            a0,
            a1,
            orientation,
        })
    }

    /// Handles bound discs inside, their duals bound discs outside:
    /// A⁰ = span{a₁..a_n}, A¹ = span{b₁..b_n}, reference orientation.
    pub fn standard(genus: usize) -> Self {
        let t = Tsd::standard(genus);
        EmbeddingData {
            genus,
            a0: t.a().clone(),
            a1: t.b().clone(),
            orientation: Orientation::Positive,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn a0(&self) -> &Subspace {
        &self.a0
    }

    pub fn a1(&self) -> &Subspace {
        &self.a1
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn with_orientation(&self, orientation: Orientation) -> Self {
        EmbeddingData {
            orientation,
            ..self.clone()
        }
    }

    /// The induced quadratic form g^e: the unique form with the
    /// intersection pairing as polar form that vanishes on A⁰ and A¹.
    /// Writing v = v₀ + v₁ along A⁰ ⊕ A¹ gives g(v) = B(v₀, v₁).
    pub fn form(&self) -> QuadraticForm {
        let n = self.genus;
        let d = 2 * n;
        let intersection = QuadraticForm::standard(n);
        let mut cols = self.a0.basis_vectors();
        cols.extend(self.a1.basis_vectors());
        let coords = BitMatrix::from_columns(d, &cols)
            .and_then(|p| p.inverse())
            .expect("validated kernels form a basis");
        let diag = BitVector::from_bits((0..d).map(|i| {
            let c = coords.column(i);
            let v0 = self.a0.combination(&c.slice(0, n));
            let v1 = self.a1.combination(&c.slice(n, d));
            intersection.bilinear(&v0, &v1).expect("matching dimensions")
        }));
        QuadraticForm::new(intersection.gram().clone(), diag).expect("intersection form is non-degenerate")
    }

    /// (A⁰, A¹) as a TSD of its own induced form.
    pub fn tsd(&self) -> Tsd {
        Tsd::new(self.form(), self.a0.clone(), self.a1.clone())
            .expect("kernels of an embedding form a TSD of the induced form")
    }
}

pub fn form_of(e: &EmbeddingData) -> QuadraticForm {
    e.form()
}

/// Regular homotopy class is determined by the induced quadratic form.
pub fn regularly_homotopic(e: &EmbeddingData, f: &EmbeddingData) -> bool {
    e.genus == f.genus && e.form() == f.form()
}

/// 1 iff the two embeddings induce different orientations.
pub fn epsilon_hat(e: &EmbeddingData, f: &EmbeddingData) -> bool {
    e.orientation.bit() ^ f.orientation.bit()
}

/// Q(e, e′) = ψ̂(A⁰(e), A¹(e); A⁰(e′), A¹(e′)) + (n + 1)·ε̂(e, e′).
pub fn quadruple_invariant(e: &EmbeddingData, f: &EmbeddingData) -> Result<bool> {
    if e.genus != f.genus {
        return Err(Error::NotRegularlyHomotopic);
    }
    let form = e.form();
    if form != f.form() {
        return Err(Error::NotRegularlyHomotopic);
    }
    let t0 = Tsd::new(form.clone(), e.a0.clone(), e.a1.clone())?;
    let t1 = Tsd::new(form, f.a0.clone(), f.a1.clone())?;
    let odd_genus_term = e.genus % 2 == 0 && epsilon_hat(e, f);
    Ok(psi_hat(&t0, &t1)? ^ odd_genus_term)
}

/// A diffeomorphism h of F, seen through h_* on H₁(F; Z/2) and whether it
/// reverses orientation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "DiffeoDescriptor", into = "DiffeoDescriptor")]
pub struct DiffeoData {
    genus: usize,
    h_star: BitMatrix,
    eps_h: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiffeoDescriptor {
    pub genus: usize,
    pub h_star: Vec<String>,
    pub eps_h: u8,
}

impl TryFrom<DiffeoDescriptor> for DiffeoData {
    type Error = Error;

    fn try_from(d: DiffeoDescriptor) -> Result<Self> {
        let h_star = if d.h_star.is_empty() {
            BitMatrix::zeros(0, 0)
        } else {
            BitMatrix::from_row_strings(&d.h_star)?
        };
        let eps_h = match d.eps_h {
            0 => false,
            1 => true,
            other => return Err(Error::Parse(format!("eps_h must be 0 or 1, got {other}"))),
        };
        DiffeoData::new(d.genus, h_star, eps_h)
    }
}

impl From<DiffeoData> for DiffeoDescriptor {
    fn from(h: DiffeoData) -> Self {
        DiffeoDescriptor {
            genus: h.genus,
            h_star: h.h_star.to_row_strings(),
            eps_h: u8::from(h.eps_h),
        }
    }
}

impl DiffeoData {
    /// `h_star` must be invertible and preserve the intersection form, as
    /// every map induced by a diffeomorphism does.
    pub fn new(genus: usize, h_star: BitMatrix, eps_h: bool) -> Result<Self> {
        let d = 2 * genus;
        if h_star.rows() != d || h_star.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if h_star.rows() != d { h_star.rows() } else { h_star.cols() },
            });
        }
        if h_star.rank() < d {
            return Err(Error::SingularMatrix);
        }
        let gram = QuadraticForm::standard(genus).gram().clone();
        if h_star.transpose().mul(&gram)?.mul(&h_star)? != gram {
            return Err(Error::NotSymplectic);
        }
        Ok(DiffeoData { genus, h_star, eps_h })
    }

    pub fn identity(genus: usize) -> Self {
        DiffeoData {
            genus,
            h_star: BitMatrix::identity(2 * genus),
            eps_h: false,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn h_star(&self) -> &BitMatrix {
        &self.h_star
    }

    pub fn eps_h(&self) -> bool {
        self.eps_h
    }
}

/// The data of e∘h: A^k(e∘h) = h_*⁻¹(A^k(e)), orientation flipped when h
/// reverses it.
pub fn pullback_by_diffeo(e: &EmbeddingData, h: &DiffeoData) -> Result<EmbeddingData> {
    if e.genus != h.genus {
        return Err(Error::GenusMismatch {
            left: e.genus,
            right: h.genus,
        });
    }
    let a0 = e.a0.preimage(&h.h_star)?;
    let a1 = e.a1.preimage(&h.h_star)?;
    let orientation = Orientation::from_bit(e.orientation.bit() ^ h.eps_h);
    EmbeddingData::new(e.genus, a0, a1, orientation)
}

/// Q(i, i∘h) = ψ(h_*) + (n + 1)·ε(h).
pub fn q_diffeo(h: &DiffeoData, i: &EmbeddingData) -> Result<bool> {
    if h.genus != i.genus {
        return Err(Error::GenusMismatch {
            left: i.genus,
            right: h.genus,
        });
    }
    let value = psi(&i.form(), &h.h_star)?;
    Ok(value ^ (i.genus % 2 == 0 && h.eps_h))
}

/// Reassembles an embedding from its two halves on either side of a
/// splitting plane: A^k = A^k(e₀) + A^k(e₁) in block coordinates.
pub fn compose_split(e0: &EmbeddingData, e1: &EmbeddingData) -> Result<EmbeddingData> {
    if e0.orientation != e1.orientation {
        return Err(Error::OrientationMismatch);
    }
    let genus = e0.genus + e1.genus;
    let d = 2 * genus;
    let (p0, p1) = block_positions(e0.genus, e1.genus);
    let glue = |s0: &Subspace, s1: &Subspace| -> Result<Subspace> {
        let mut vecs: Vec<BitVector> = s0.basis_vectors().iter().map(|v| v.embed(&p0, d)).collect();
        vecs.extend(s1.basis_vectors().iter().map(|v| v.embed(&p1, d)));
        Subspace::span(d, &vecs)
    };
    EmbeddingData::new(
        genus,
        glue(&e0.a0, &e1.a0)?,
        glue(&e0.a1, &e1.a1)?,
        e0.orientation,
    )
}

/// An embedding of a finite disjoint union of closed orientable surfaces,
/// one entry per component.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SystemEmbeddingData {
    pub components: Vec<EmbeddingData>,
}

/// Q for systems: the sum of the componentwise invariants, components
/// matched by position.
pub fn q_system(s: &SystemEmbeddingData, t: &SystemEmbeddingData) -> Result<bool> {
    if s.components.len() != t.components.len() {
        return Err(Error::ComponentCountMismatch {
            left: s.components.len(),
            right: t.components.len(),
        });
    }
    let mut total = false;
    for (index, (e, f)) in s.components.iter().zip(&t.components).enumerate() {
        total ^= quadruple_invariant(e, f).map_err(|err| match err {
            Error::NotRegularlyHomotopic => Error::ComponentNotRegularlyHomotopic { index },
            other => other,
        })?;
    }
    Ok(total)
}

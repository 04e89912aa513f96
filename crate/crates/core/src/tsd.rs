//! Totally singular decompositions, good bases, and the ψ / ψ̂ invariants.
//!
//! A TSD of (V, g) is a splitting V = A ⊕ B into two totally singular
//! halves. For an orthogonal map T, ψ(T) = rank(T − I) mod 2, and
//! ψ̂(A,B; A′,B′) is ψ of any orthogonal map carrying the first TSD onto the
//! second. Any two good bases yield such a map, so ψ̂ is computed by
//! transporting one good basis onto the other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};
use crate::quadform::{block_positions, OrthogonalMap, QuadraticForm};

/// A validated totally singular decomposition `(A, B)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "TsdDescriptor", into = "TsdDescriptor")]
pub struct Tsd {
    form: QuadraticForm,
    a: Subspace,
    b: Subspace,
}

/// JSON shape of a TSD; the spanning sets need not be reduced or independent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TsdDescriptor {
    pub form: QuadraticForm,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

impl TryFrom<TsdDescriptor> for Tsd {
    type Error = Error;

    fn try_from(d: TsdDescriptor) -> Result<Self> {
        let dim = d.form.dim();
        let a = Subspace::from_strings(dim, &d.a)?;
        let b = Subspace::from_strings(dim, &d.b)?;
        Tsd::new(d.form, a, b)
    }
}

impl From<Tsd> for TsdDescriptor {
    fn from(t: Tsd) -> Self {
        TsdDescriptor {
            a: t.a.to_strings(),
            b: t.b.to_strings(),
            form: t.form,
        }
    }
}

impl Tsd {
    pub fn new(form: QuadraticForm, a: Subspace, b: Subspace) -> Result<Self> {
        let d = form.dim();
        for s in [&a, &b] {
            if s.ambient_dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: s.ambient_dim(),
                });
            }
            if s.dim() != d / 2 {
                return Err(Error::WrongDimension {
                    expected: d / 2,
                    found: s.dim(),
                });
            }
            if !form.is_totally_singular(s)? {
                return Err(Error::NotTotallySingular);
            }
        }
        if !a.is_complement(&b)? {
            return Err(Error::NotComplementary);
        }
        Ok(Tsd { form, a, b })
    }

    /// (span{a₁..a_n}, span{b₁..b_n}) under the standard form.
    pub fn standard(genus: usize) -> Self {
        let d = 2 * genus;
        let a: Vec<_> = (0..genus).map(|i| BitVector::unit(d, i)).collect();
        let b: Vec<_> = (genus..d).map(|i| BitVector::unit(d, i)).collect();
        Tsd {
            form: QuadraticForm::standard(genus),
            a: Subspace::span(d, &a).expect("unit vectors"),
            b: Subspace::span(d, &b).expect("unit vectors"),
        }
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn b(&self) -> &Subspace {
        &self.b
    }

    pub fn genus(&self) -> usize {
        self.form.dim() / 2
    }

    /// The same decomposition with the roles of A and B exchanged.
    pub fn swapped(&self) -> Tsd {
        Tsd {
            form: self.form.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// Completes a totally singular half-dimensional subspace `a` to a TSD by
/// building hyperbolic pairs (aᵢ, bᵢ) one at a time.
pub fn complete_to_tsd(form: &QuadraticForm, a: &Subspace) -> Result<Tsd> {
    let d = form.dim();
    let n = d / 2;
    if a.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: a.ambient_dim(),
        });
    }
    if !form.is_totally_singular(a)? {
        return Err(Error::NotTotallySingular);
    }
    if a.dim() != n {
        return Err(Error::WrongDimension {
            expected: n,
            found: a.dim(),
        });
    }

    let mut pairs: Vec<(BitVector, BitVector)> = Vec::with_capacity(n);
    for generator in a.basis_vectors() {
        // Clear pairings with earlier b's; stays inside A since A ⊥ A.
        let mut ak = generator;
        for (ai, bi) in &pairs {
            if form.bilinear(&ak, bi)? {
                ak.add_assign(ai);
            }
        }
        // Any y with B(ak, y) = 1, then project off the earlier hyperbolic planes.
        let dual = form.gram().mul_vec(&ak)?;
        let j = dual.first_one().ok_or(Error::DegenerateForm)?;
        let mut y = BitVector::unit(d, j);
        let mut correction = BitVector::zeros(d);
        for (ai, bi) in &pairs {
            if form.bilinear(&y, bi)? {
                correction.add_assign(ai);
            }
            if form.bilinear(&y, ai)? {
                correction.add_assign(bi);
            }
        }
        y.add_assign(&correction);
        if form.evaluate(&y)? {
            y.add_assign(&ak);
        }
        pairs.push((ak, y));
    }
    let b_vecs: Vec<BitVector> = pairs.into_iter().map(|(_, b)| b).collect();
    let b = Subspace::span(d, &b_vecs)?;
    Tsd::new(form.clone(), a.clone(), b)
}

/// A basis a₁..a_n of A and b₁..b_n of B with B(aᵢ, bⱼ) = δᵢⱼ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GoodBasis {
    tsd: Tsd,
    a_vecs: Vec<BitVector>,
    b_vecs: Vec<BitVector>,
}

impl GoodBasis {
    pub fn tsd(&self) -> &Tsd {
        &self.tsd
    }

    pub fn a_vecs(&self) -> &[BitVector] {
        &self.a_vecs
    }

    pub fn b_vecs(&self) -> &[BitVector] {
        &self.b_vecs
    }

    /// The change-of-basis matrix with columns a₁..a_n, b₁..b_n.
    pub fn matrix(&self) -> BitMatrix {
        let cols: Vec<BitVector> = self.a_vecs.iter().chain(&self.b_vecs).cloned().collect();
        BitMatrix::from_columns(self.tsd.form.dim(), &cols).expect("basis vectors match the form")
    }
}

/// Builds the good basis dual to `a_basis` (default: the reduced basis of A).
pub fn good_basis(t: &Tsd, a_basis: Option<&[BitVector]>) -> Result<GoodBasis> {
    let n = t.genus();
    let d = t.form.dim();
    let a_vecs = match a_basis {
        None => t.a.basis_vectors(),
        Some(vs) => {
            if vs.len() != n || vs.iter().any(|v| v.dim() != d) {
                return Err(Error::NotABasis);
            }
            for v in vs {
                if !t.a.contains(v)? {
                    return Err(Error::NotABasis);
                }
            }
            if Subspace::span(d, vs)?.dim() != n {
                return Err(Error::NotABasis);
            }
            vs.to_vec()
        }
    };
    let c = t.b.basis_vectors();
    let a_rows = BitMatrix::from_rows(d, &a_vecs)?;
    let pairing = a_rows.mul(t.form.gram())?.mul(&t.b.basis().transpose())?;
    let inv = pairing.inverse()?;
    let b_vecs: Vec<BitVector> = (0..n)
        .map(|j| {
            let mut bj = BitVector::zeros(d);
            for (k, ck) in c.iter().enumerate() {
                if inv.get(k, j) {
                    bj.add_assign(ck);
                }
            }
            bj
        })
        .collect();
    Ok(GoodBasis {
        tsd: t.clone(),
        a_vecs,
        b_vecs,
    })
}

/// rank(T − I) mod 2 for an orthogonal `t`.
pub fn psi(form: &QuadraticForm, t: &BitMatrix) -> Result<bool> {
    if !form.is_orthogonal(t)? {
        return Err(Error::NotOrthogonal);
    }
    Ok(psi_of_matrix(t))
}

fn psi_of_matrix(t: &BitMatrix) -> bool {
    let shifted = t
        .add(&BitMatrix::identity(t.rows()))
        .expect("square matrix");
    shifted.rank() % 2 == 1
}

impl OrthogonalMap {
    pub fn psi(&self) -> bool {
        psi_of_matrix(self.matrix())
    }
}

/// The linear map sending `g1`'s basis to `g2`'s basis, aᵢ ↦ a′ᵢ, bᵢ ↦ b′ᵢ.
pub fn transport(g1: &GoodBasis, g2: &GoodBasis) -> Result<OrthogonalMap> {
    if g1.tsd.form != g2.tsd.form {
        return Err(Error::FormMismatch);
    }
    let t = g2.matrix().mul(&g1.matrix().inverse()?)?;
    OrthogonalMap::new(g1.tsd.form.clone(), t)
}

pub fn psi_hat(t1: &Tsd, t2: &Tsd) -> Result<bool> {
    if t1.form != t2.form {
        return Err(Error::FormMismatch);
    }
    let map = transport(&good_basis(t1, None)?, &good_basis(t2, None)?)?;
    Ok(map.psi())
}

/// ψ̂ by the direct recipe: the parity of dim span{a′ᵢ − aᵢ, b′ᵢ − bᵢ}.
pub fn psi_hat_recipe(t1: &Tsd, t2: &Tsd) -> Result<bool> {
    if t1.form != t2.form {
        return Err(Error::FormMismatch);
    }
    psi_hat_recipe_with(&good_basis(t1, None)?, &good_basis(t2, None)?)
}

/// The recipe for explicitly chosen good bases.
pub fn psi_hat_recipe_with(g1: &GoodBasis, g2: &GoodBasis) -> Result<bool> {
    if g1.tsd.form != g2.tsd.form {
        return Err(Error::FormMismatch);
    }
    let diffs: Vec<BitVector> = g1
        .a_vecs
        .iter()
        .zip(&g2.a_vecs)
        .chain(g1.b_vecs.iter().zip(&g2.b_vecs))
        .map(|(x, y)| x + y)
        .collect();
    Ok(Subspace::span(g1.tsd.form.dim(), &diffs)?.dim() % 2 == 1)
}

pub fn equivalent(t1: &Tsd, t2: &Tsd) -> Result<bool> {
    Ok(!psi_hat(t1, t2)?)
}

/// (A₀ + A₁, B₀ + B₁) on the orthogonal direct sum of the two forms.
pub fn direct_sum(t0: &Tsd, t1: &Tsd) -> Tsd {
    let (p0, p1) = block_positions(t0.genus(), t1.genus());
    let form = t0.form.direct_sum(&t1.form);
    let d = form.dim();
    let place = |s: &Subspace, pos: &[usize]| -> Vec<BitVector> {
        s.basis_vectors().iter().map(|v| v.embed(pos, d)).collect()
    };
    let mut a = place(&t0.a, &p0);
    a.extend(place(&t1.a, &p1));
    let mut b = place(&t0.b, &p0);
    b.extend(place(&t1.b, &p1));
    Tsd {
        a: Subspace::span(d, &a).expect("embedded vectors"),
        b: Subspace::span(d, &b).expect("embedded vectors"),
        form,
    }
}

//! Random generation of decompositions, orthogonal maps and embeddings.
//!
//! Orthogonal maps are produced as products of transports between random
//! TSDs, which reaches both ψ-classes.

use rand::Rng;

use crate::gf2::{BitMatrix, BitVector, Subspace};
use crate::invariant::{EmbeddingData, Orientation};
use crate::quadform::{OrthogonalMap, QuadraticForm};
use crate::tsd::{complete_to_tsd, good_basis, transport, GoodBasis, Tsd};

const MAX_ATTEMPTS: usize = 10_000;

/// A uniformly random invertible `n x n` matrix.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitMatrix {
    loop {
        let m = BitMatrix::random(n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// A random totally singular subspace of half dimension, grown one singular
/// vector at a time inside the current orthogonal complement. `None` when the
/// form admits no such subspace.
pub fn random_lagrangian<R: Rng + ?Sized>(form: &QuadraticForm, rng: &mut R) -> Option<Subspace> {
    let d = form.dim();
    let mut current = Subspace::zero(d);
    while current.dim() < d / 2 {
        let perp = current.basis().mul(form.gram()).ok()?.kernel();
        let mut found = None;
        for _ in 0..MAX_ATTEMPTS {
            let v = perp.random_element(rng);
            if !form.evaluate(&v).ok()? && !current.contains(&v).ok()? {
                found = Some(v);
                break;
            }
        }
        let mut gens = current.basis_vectors();
        gens.push(found?);
        current = Subspace::span(d, &gens).ok()?;
    }
    Some(current)
}

/// A random TSD: random Lagrangian A, then a random singular complement
/// b′ⱼ = bⱼ + Σᵢ Sᵢⱼ aᵢ with S symmetric and zero on the diagonal.
pub fn random_tsd<R: Rng + ?Sized>(form: &QuadraticForm, rng: &mut R) -> Option<Tsd> {
    let a = random_lagrangian(form, rng)?;
    let base = complete_to_tsd(form, &a).ok()?;
    let g = good_basis(&base, None).ok()?;
    let n = base.genus();
    let d = form.dim();
    let mut s = BitMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let bit = rng.gen::<bool>();
            s.set(i, j, bit);
            s.set(j, i, bit);
        }
    }
    let b: Vec<BitVector> = (0..n)
        .map(|j| {
            let mut bj = g.b_vecs()[j].clone();
            for i in 0..n {
                if s.get(i, j) {
                    bj.add_assign(&g.a_vecs()[i]);
                }
            }
            bj
        })
        .collect();
    Tsd::new(form.clone(), a, Subspace::span(d, &b).ok()?).ok()
}

/// A good basis of `t` dual to a random basis of A.
pub fn random_good_basis<R: Rng + ?Sized>(t: &Tsd, rng: &mut R) -> GoodBasis {
    let n = t.genus();
    let change = random_invertible(n, rng);
    let a: Vec<BitVector> = (0..n).map(|i| t.a().combination(&change.row(i))).collect();
    good_basis(t, Some(&a)).expect("invertible change of basis")
}

/// A product of 1 to 4 transports between random TSDs of `form`.
pub fn random_orthogonal<R: Rng + ?Sized>(form: &QuadraticForm, rng: &mut R) -> Option<OrthogonalMap> {
    let factors = rng.gen_range(1..=4);
    let mut acc = OrthogonalMap::identity(form.clone());
    for _ in 0..factors {
        let g1 = random_good_basis(&random_tsd(form, rng)?, rng);
        let g2 = random_good_basis(&random_tsd(form, rng)?, rng);
        acc = acc.compose(&transport(&g1, &g2).ok()?).ok()?;
    }
    Some(acc)
}

/// A random map preserving the intersection form, built from symplectic
/// transvections x ↦ x + B(x, v)·v.
pub fn random_symplectic<R: Rng + ?Sized>(genus: usize, rng: &mut R) -> BitMatrix {
    let d = 2 * genus;
    let gram = QuadraticForm::standard(genus).gram().clone();
    let mut acc = BitMatrix::identity(d);
    for _ in 0..(4 * genus + 4) {
        let v = BitVector::random(d, rng);
        let gv = gram.mul_vec(&v).expect("matching dimension");
        let cols: Vec<BitVector> = (0..d)
            .map(|j| {
                let mut c = BitVector::unit(d, j);
                if gv.get(j) {
                    c.add_assign(&v);
                }
                c
            })
            .collect();
        let t = BitMatrix::from_columns(d, &cols).expect("matching dimension");
        acc = t.mul(&acc).expect("square");
    }
    acc
}

/// Embedding data in a random regular homotopy class.
pub fn random_embedding<R: Rng + ?Sized>(genus: usize, rng: &mut R) -> EmbeddingData {
    let s = random_symplectic(genus, rng);
    let t = Tsd::standard(genus);
    EmbeddingData::new(
        genus,
        t.a().image(&s).expect("square"),
        t.b().image(&s).expect("square"),
        Orientation::from_bit(rng.gen()),
    )
    .expect("symplectic images of the standard kernels")
}

/// Random embedding data regularly homotopic to `e`.
pub fn random_homotopic<R: Rng + ?Sized>(e: &EmbeddingData, rng: &mut R) -> EmbeddingData {
    let t = random_tsd(&e.form(), rng).expect("embedding forms admit TSDs");
    EmbeddingData::new(
        e.genus(),
        t.a().clone(),
        t.b().clone(),
        Orientation::from_bit(rng.gen()),
    )
    .expect("TSDs of the induced form are valid kernels")
}

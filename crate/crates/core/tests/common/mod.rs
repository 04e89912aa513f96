#![allow(dead_code)]

use quadpoint::oracle::enumerate_tsds;
use quadpoint::{BitMatrix, BitVector, EmbeddingData, Orientation, QuadraticForm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every quadratic form whose polar form is the genus-n intersection form.
pub fn intersection_forms(genus: usize) -> Vec<QuadraticForm> {
    let d = 2 * genus;
    let gram = QuadraticForm::standard(genus).gram().clone();
    (0..1u32 << d)
        .map(|mask| {
            let diag = BitVector::from_bits((0..d).map(|i| mask >> i & 1 == 1));
            QuadraticForm::new(gram.clone(), diag).unwrap()
        })
        .collect()
}

/// Every embedding datum of genus ≤ 2, found by enumerating the TSDs of
/// every form sharing the intersection pairing.
pub fn all_embeddings(genus: usize) -> Vec<EmbeddingData> {
    let mut out = Vec::new();
    for form in intersection_forms(genus) {
        for t in enumerate_tsds(&form).unwrap() {
            for o in [Orientation::Positive, Orientation::Negative] {
                out.push(EmbeddingData::new(genus, t.a().clone(), t.b().clone(), o).unwrap());
            }
        }
    }
    out
}

pub fn matrix(rows: &[&str]) -> BitMatrix {
    BitMatrix::from_row_strings(rows).unwrap()
}

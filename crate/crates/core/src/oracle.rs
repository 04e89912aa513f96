//! Brute-force referee for the small-dimensional theory.
//!
//! Nothing here reuses the packed elimination in [`crate::gf2`]: ranks are
//! computed on unpacked byte rows, and for enumeration vectors of (Z/2)^d
//! (d ≤ 4) are plain `u32` masks, matrices are lists of column masks, and
//! subspaces are sets of elements encoded as a membership mask over all
//! 2^d vectors. The library's answers are then checked against the
//! exhaustive ones.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, Subspace};
use crate::quadform::QuadraticForm;
use crate::tsd::{psi_hat, psi_hat_recipe, Tsd};

/// Enumeration is limited to (Z/2)^4, i.e. a full scan of all 2^16 matrices.
pub const MAX_ENUMERATION_DIM: usize = 4;

/// Textbook row reduction over unpacked 0/1 bytes.
pub fn naive_rank(m: &BitMatrix) -> usize {
    let mut rows: Vec<Vec<u8>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| u8::from(m.get(i, j))).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            if rows[r][col] == 1 {
                for c in col..m.cols() {
                    rows[r][c] ^= rows[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A named counterexample found by [`verify_exhaustive`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub lemma: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub dim: usize,
    /// Number of invertible matrices met during the scan, |GL(d, 2)|.
    pub gl_order: usize,
    pub group_order: usize,
    pub tsd_count: usize,
    pub class_count: usize,
    /// Index of ker ψ in O(V, g); 2 when ψ is surjective.
    pub psi_kernel_index: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

// --- small mask representation ---------------------------------------------

struct Referee {
    dim: usize,
    gram: Vec<u32>,
    diag: u32,
}

type SmallMatrix = Vec<u32>;

impl Referee {
    fn new(form: &QuadraticForm) -> Result<Self> {
        let dim = form.dim();
        if dim > MAX_ENUMERATION_DIM {
            return Err(Error::DimensionTooLarge {
                dim,
                max: MAX_ENUMERATION_DIM,
            });
        }
        let gram = (0..dim)
            .map(|i| (0..dim).filter(|&j| form.gram().get(i, j)).fold(0, |acc, j| acc | 1 << j))
            .collect();
        let diag = (0..dim).filter(|&i| form.diag().get(i)).fold(0, |acc, i| acc | 1 << i);
        Ok(Referee { dim, gram, diag })
    }

    fn vectors(&self) -> u32 {
        1 << self.dim
    }

    /// g(x) straight from the quadratic expansion.
    fn g(&self, x: u32) -> bool {
        let mut value = (x & self.diag).count_ones() % 2 == 1;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if x >> i & 1 == 1 && x >> j & 1 == 1 && self.gram[i] >> j & 1 == 1 {
                    value = !value;
                }
            }
        }
        value
    }

    fn matrix_at(&self, index: u64) -> SmallMatrix {
        let mask = (1u64 << self.dim) - 1;
        (0..self.dim)
            .map(|j| ((index >> (j * self.dim)) & mask) as u32)
            .collect()
    }

    fn to_bit_matrix(&self, t: &[u32]) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.dim, self.dim);
        for (j, &c) in t.iter().enumerate() {
            for i in 0..self.dim {
                if c >> i & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    fn to_bit_vector(&self, x: u32) -> BitVector {
        BitVector::from_bits((0..self.dim).map(|i| x >> i & 1 == 1))
    }

    fn to_subspace(&self, set: u32) -> Subspace {
        let elems: Vec<BitVector> = (0..self.vectors())
            .filter(|&x| set >> x & 1 == 1)
            .map(|x| self.to_bit_vector(x))
            .collect();
        Subspace::span(self.dim, &elems).expect("matching dimension")
    }
}

fn apply(t: &[u32], x: u32) -> u32 {
    t.iter()
        .enumerate()
        .filter(|(j, _)| x >> j & 1 == 1)
        .fold(0, |acc, (_, &c)| acc ^ c)
}

fn compose(s: &[u32], t: &[u32]) -> SmallMatrix {
    t.iter().map(|&c| apply(s, c)).collect()
}

fn image(t: &[u32], set: u32, vectors: u32) -> u32 {
    (0..vectors)
        .filter(|&x| set >> x & 1 == 1)
        .fold(0, |acc, x| acc | 1 << apply(t, x))
}

fn is_invertible(t: &[u32], vectors: u32) -> bool {
    (1..vectors).all(|x| apply(t, x) != 0)
}

fn small_psi(referee: &Referee, t: &[u32]) -> bool {
    let shifted: SmallMatrix = t.iter().enumerate().map(|(j, &c)| c ^ (1 << j)).collect();
    naive_rank(&referee.to_bit_matrix(&shifted)) % 2 == 1
}

fn span_set(generators: &[u32]) -> u32 {
    let mut elems = vec![0u32];
    for &g in generators {
        if !elems.contains(&g) {
            let shifted: Vec<u32> = elems.iter().map(|&e| e ^ g).collect();
            elems.extend(shifted);
        }
    }
    elems.iter().fold(0, |acc, &e| acc | 1 << e)
}

struct Enumeration {
    gl_order: usize,
    group: Vec<SmallMatrix>,
    lagrangians: Vec<u32>,
    tsds: Vec<(u32, u32)>,
}

fn enumerate(referee: &Referee) -> Enumeration {
    let vectors = referee.vectors();
    let mut gl_order = 0;
    let mut group = Vec::new();
    for index in 0..1u64 << (referee.dim * referee.dim) {
        let t = referee.matrix_at(index);
        if !is_invertible(&t, vectors) {
            continue;
        }
        gl_order += 1;
        if (0..vectors).all(|x| referee.g(apply(&t, x)) == referee.g(x)) {
            group.push(t);
        }
    }

    // All half-dimensional subspaces on which g vanishes.
    let n = referee.dim / 2;
    let mut found = BTreeSet::new();
    let mut tuple = vec![0u32; n];
    loop {
        let set = span_set(&tuple);
        if set.count_ones() == 1 << n && (0..vectors).all(|x| set >> x & 1 == 0 || !referee.g(x)) {
            found.insert(set);
        }
        // odometer over n-tuples of vectors
        let mut k = 0;
        while k < n {
            tuple[k] += 1;
            if tuple[k] < vectors {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    let lagrangians: Vec<u32> = found.into_iter().collect();
    let mut tsds = Vec::new();
    for &a in &lagrangians {
        for &b in &lagrangians {
            if a & b == 1 {
                tsds.push((a, b));
            }
        }
    }
    Enumeration {
        gl_order,
        group,
        lagrangians,
        tsds,
    }
}

/// Every orthogonal matrix of `form`, found by scanning all d x d matrices.
pub fn enumerate_orthogonal_group(form: &QuadraticForm) -> Result<Vec<BitMatrix>> {
    let referee = Referee::new(form)?;
    Ok(enumerate(&referee)
        .group
        .iter()
        .map(|t| referee.to_bit_matrix(t))
        .collect())
}

/// Every ordered TSD of `form`; empty when none exist.
pub fn enumerate_tsds(form: &QuadraticForm) -> Result<Vec<Tsd>> {
    let referee = Referee::new(form)?;
    enumerate(&referee)
        .tsds
        .iter()
        .map(|&(a, b)| Tsd::new(form.clone(), referee.to_subspace(a), referee.to_subspace(b)))
        .collect()
}

/// Runs every small-dimensional check over the full enumeration.
pub fn verify_exhaustive(form: &QuadraticForm) -> Result<EnumerationReport> {
    let referee = Referee::new(form)?;
    let vectors = referee.vectors();
    let en = enumerate(&referee);
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    let mut flag = |lemma: &str, witness: String| {
        violations.push(Violation {
            lemma: lemma.to_string(),
            witness,
        })
    };

    let psis: Vec<bool> = en.group.iter().map(|t| small_psi(&referee, t)).collect();
    let index_of: HashMap<&SmallMatrix, usize> =
        en.group.iter().enumerate().map(|(i, t)| (t, i)).collect();

    // The library's orthogonality test against the full-space scan.
    let members: HashSet<&SmallMatrix> = en.group.iter().collect();
    for index in 0..1u64 << (referee.dim * referee.dim) {
        let t = referee.matrix_at(index);
        let lib = form.is_orthogonal(&referee.to_bit_matrix(&t))?;
        if lib != members.contains(&t) {
            flag("orthogonality-test", format!("{t:?}"));
        }
    }

    // Group axioms and the homomorphism property.
    let identity: SmallMatrix = (0..referee.dim).map(|j| 1 << j).collect();
    if !members.contains(&identity) {
        flag("group-identity", String::new());
    }
    for (i, s) in en.group.iter().enumerate() {
        let has_inverse = en.group.iter().any(|t| compose(s, t) == identity);
        if !has_inverse {
            flag("group-inverse", format!("{s:?}"));
        }
        for (j, t) in en.group.iter().enumerate() {
            let st = compose(s, t);
            match index_of.get(&st) {
                None => flag("group-closure", format!("{s:?} * {t:?}")),
                Some(&k) => {
                    if psis[k] != (psis[i] ^ psis[j]) {
                        flag("psi-homomorphism", format!("{s:?} * {t:?}"));
                    }
                }
            }
        }
    }
    let kernel_size = psis.iter().filter(|&&p| !p).count();
    let psi_kernel_index = if kernel_size == 0 { 0 } else { en.group.len() / kernel_size };
    if referee.dim > 0 && psi_kernel_index != 2 {
        flag("psi-nontrivial", format!("kernel index {psi_kernel_index}"));
    }

    // T(A) = A and T(B) = B forces ψ(T) = 0.
    for &(a, b) in &en.tsds {
        for (t, &p) in en.group.iter().zip(&psis) {
            if p && image(t, a, vectors) == a && image(t, b, vectors) == b {
                flag("stabilizer", format!("T={t:?} A={a:#x} B={b:#x}"));
            }
        }
    }
    // T fixing a totally singular half pointwise forces ψ(T) = 0.
    for &a in &en.lagrangians {
        for (t, &p) in en.group.iter().zip(&psis) {
            let fixes = (0..vectors).all(|x| a >> x & 1 == 0 || apply(t, x) == x);
            if p && fixes {
                flag("pointwise-fixer", format!("T={t:?} A={a:#x}"));
            }
        }
    }

    // ψ̂ from the enumeration: constant over all carrying maps.
    let k = en.tsds.len();
    let mut hat = vec![vec![false; k]; k];
    for (i, &(a, b)) in en.tsds.iter().enumerate() {
        for (j, &(a2, b2)) in en.tsds.iter().enumerate() {
            let values: BTreeSet<bool> = en
                .group
                .iter()
                .zip(&psis)
                .filter(|(t, _)| image(t, a, vectors) == a2 && image(t, b, vectors) == b2)
                .map(|(_, &p)| p)
                .collect();
            match values.len() {
                0 => flag("tsd-transitivity", format!("no map carries #{i} to #{j}")),
                1 => hat[i][j] = *values.first().expect("one value"),
                _ => flag("psi-hat-well-defined", format!("TSD #{i} -> #{j}")),
            }
            if (a == a2 || b == b2) && hat[i][j] {
                flag("equal-half-equivalence", format!("TSD #{i} ~ #{j}"));
            }
        }
    }

    // The library's ψ̂ and recipe against the enumerated values.
    let lib_tsds: Vec<Tsd> = en
        .tsds
        .iter()
        .map(|&(a, b)| Tsd::new(form.clone(), referee.to_subspace(a), referee.to_subspace(b)))
        .collect::<Result<_>>()?;
    for i in 0..k {
        for j in 0..k {
            if psi_hat(&lib_tsds[i], &lib_tsds[j])? != hat[i][j] {
                flag("psi-hat-library", format!("TSD #{i} -> #{j}"));
            }
            if psi_hat_recipe(&lib_tsds[i], &lib_tsds[j])? != hat[i][j] {
                flag("psi-hat-recipe", format!("TSD #{i} -> #{j}"));
            }
        }
    }

    // ∼ is an equivalence relation; count its classes.
    for i in 0..k {
        if hat[i][i] {
            flag("equivalence-reflexive", format!("#{i}"));
        }
        for j in 0..k {
            if hat[i][j] != hat[j][i] {
                flag("equivalence-symmetric", format!("#{i}, #{j}"));
            }
            for l in 0..k {
                if !hat[i][j] && !hat[j][l] && hat[i][l] {
                    flag("equivalence-transitive", format!("#{i}, #{j}, #{l}"));
                }
            }
        }
    }
    let mut representatives: Vec<usize> = Vec::new();
    for i in 0..k {
        if !representatives.iter().any(|&r| !hat[r][i]) {
            representatives.push(i);
        }
    }
    if k == 0 {
        notes.push("no TSDs".to_string());
    }

    Ok(EnumerationReport {
        dim: referee.dim,
        gl_order: en.gl_order,
        group_order: en.group.len(),
        tsd_count: k,
        class_count: representatives.len(),
        psi_kernel_index,
        violations,
        notes,
    })
}

//! Rank weight over F_q, subspaces of F_{q^m}, and exhaustive enumeration of
//! codewords and subspaces.

use rand::Rng;
use thiserror::Error;

use crate::field::{Elem, Field};
use crate::matrix::{self, FqMatrix, Matrix};

/// Default cap on the number of codewords visited by exhaustive enumeration.
pub const DEFAULT_CODEWORD_CAP: u128 = 1 << 24;

/// Default cap on the number of subspaces visited by subspace enumeration.
pub const DEFAULT_SUBSPACE_CAP: u128 = 1 << 24;

/// A vector in F_{q^m}^n.
pub type CodeVector = Vec<Elem>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RankError {
    #[error("elements are linearly dependent over F_q")]
    Dependent,
    #[error("subspace dimension {k} out of range for an ambient space of dimension {n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("enumeration of {count} items exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
}

/// The m×n matrix over F_q whose column i holds the coordinates of v_i.
pub fn expand(field: &Field, v: &[Elem]) -> FqMatrix {
    let m = field.m() as usize;
    let mut out = Matrix::zeros(m, v.len());
    for (i, &vi) in v.iter().enumerate() {
        for (r, c) in field.coords(vi).into_iter().enumerate() {
            out.set(r, i, c);
        }
    }
    FqMatrix::new(field, out).expect("coordinates lie in F_q")
}

/// Inverse of [`expand`].
pub fn contract(field: &Field, m: &FqMatrix) -> CodeVector {
    let t = m.matrix().transpose();
    (0..t.rows()).map(|i| field.from_coords(t.row(i))).collect()
}

/// dim_{F_q} ⟨v_1, ..., v_n⟩.
pub fn rank_weight(field: &Field, v: &[Elem]) -> usize {
    if field.p() == 2 && field.a() == 1 {
        return xor_rank(v.iter().map(|e| e.value()));
    }
    matrix::fq_rank(field, &expand(field, v))
}

/// Rank of a set of vectors over F_2 packed as bit masks.
fn xor_rank(values: impl Iterator<Item = u32>) -> usize {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for mut x in values {
        while x != 0 {
            let top = 31 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}

/// An F_q-linearly independent list of elements of F_{q^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    elems: Vec<Elem>,
    canonical: bool,
}

impl SubspaceBasis {
    pub fn new(field: &Field, elems: Vec<Elem>) -> Result<Self, RankError> {
        if rank_weight(field, &elems) != elems.len() {
            return Err(RankError::Dependent);
        }
        Ok(SubspaceBasis {
            elems,
            canonical: false,
        })
    }

    pub(crate) fn from_independent(elems: Vec<Elem>) -> Self {
        SubspaceBasis {
            elems,
            canonical: false,
        }
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Replaces the basis by the rows of the reduced row echelon form of its
    /// coordinate matrix over the power basis. Two bases span the same space
    /// iff their canonical forms are equal.
    pub fn canonicalize(&self, field: &Field) -> SubspaceBasis {
        let rows: Vec<Vec<Elem>> = self.elems.iter().map(|&e| field.coords(e)).collect();
        if rows.is_empty() {
            return SubspaceBasis {
                elems: Vec::new(),
                canonical: true,
            };
        }
        let mut m = Matrix::from_rows(rows);
        let r = matrix::rref(field, &mut m).len();
        SubspaceBasis {
            elems: (0..r).map(|i| field.from_coords(m.row(i))).collect(),
            canonical: true,
        }
    }

    pub fn contains(&self, field: &Field, x: Elem) -> bool {
        let mut v = self.elems.clone();
        v.push(x);
        rank_weight(field, &v) == self.elems.len()
    }

    pub fn contains_all(&self, field: &Field, xs: &[Elem]) -> bool {
        let mut v = self.elems.clone();
        v.extend_from_slice(xs);
        rank_weight(field, &v) == self.elems.len()
    }
}

/// n random F_q-independent elements of F_{q^m}; n ≤ m.
pub fn random_independent<R: Rng + ?Sized>(field: &Field, rng: &mut R, n: usize) -> Vec<Elem> {
    assert!(n <= field.m() as usize);
    let mut out: Vec<Elem> = Vec::with_capacity(n);
    while out.len() < n {
        let x = field.random(rng);
        out.push(x);
        if rank_weight(field, &out) < out.len() {
            out.pop();
        }
    }
    out
}

/// The Gaussian binomial [n choose k]_q, or `None` on overflow.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow((n - i) as u32)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Enumerates every k-dimensional F_q-subspace of ⟨ambient⟩ exactly once.
///
/// Subspaces are produced as reduced row echelon k×n matrices over F_q,
/// ordered by pivot columns (lexicographically) and then by the free entries
/// (last free entry varying fastest), and re-expressed in the ambient basis.
pub fn enumerate_subspaces(
    field: &Field,
    ambient: &[Elem],
    k: usize,
    cap: u128,
) -> Result<SubspaceIter, RankError> {
    let n = ambient.len();
    if k > n {
        return Err(RankError::DimensionOutOfRange { k, n });
    }
    let count = gaussian_binomial(n, k, field.q()).unwrap_or(u128::MAX);
    if count > cap {
        return Err(RankError::CapExceeded { count, cap });
    }
    let mut it = SubspaceIter {
        field: field.clone(),
        ambient: ambient.to_vec(),
        k,
        pivots: (0..k).collect(),
        free: Vec::new(),
        counter: Vec::new(),
        done: false,
    };
    it.reset_free();
    Ok(it)
}

pub struct SubspaceIter {
    field: Field,
    ambient: Vec<Elem>,
    k: usize,
    pivots: Vec<usize>,
    /// (row, column) of each free entry
    free: Vec<(usize, usize)>,
    /// index into the F_q element list for each free entry
    counter: Vec<usize>,
    done: bool,
}

impl SubspaceIter {
    fn reset_free(&mut self) {
        let n = self.ambient.len();
        self.free.clear();
        for (r, &pc) in self.pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let n = self.ambient.len();
        let k = self.k;
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }

    fn current(&self) -> SubspaceBasis {
        let f = &self.field;
        let base = f.base_elements();
        let mut rows: Vec<Vec<Elem>> = vec![vec![Elem::ZERO; self.ambient.len()]; self.k];
        for (r, &pc) in self.pivots.iter().enumerate() {
            rows[r][pc] = Elem::ONE;
        }
        for (&(r, c), &idx) in self.free.iter().zip(&self.counter) {
            rows[r][c] = base[idx];
        }
        let elems = rows
            .iter()
            .map(|row| matrix::dot(f, row, &self.ambient))
            .collect();
        SubspaceBasis::from_independent(elems)
    }
}

impl Iterator for SubspaceIter {
    type Item = SubspaceBasis;

    fn next(&mut self) -> Option<SubspaceBasis> {
        if self.done {
            return None;
        }
        let out = self.current();
        let q = self.field.base_elements().len();
        // advance the free-entry counter, then the pivot pattern
        let mut carried = true;
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < q {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            if self.next_pivots() {
                self.reset_free();
            } else {
                self.done = true;
            }
        }
        Some(out)
    }
}

/// Calls `visit` on every nonzero codeword of the row span of `gen`.
///
/// The code is enumerated as the F_p-span of z^r·g_j using a p-ary Gray code,
/// so each step adds a single spanning vector.
pub fn for_each_codeword(
    field: &Field,
    gen: &Matrix,
    cap: u128,
    mut visit: impl FnMut(&[Elem]),
) -> Result<(), RankError> {
    let p = field.p() as u128;
    let d = (field.a() * field.m()) as usize;
    let digits = d * gen.rows();
    let count = p.checked_pow(digits as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(RankError::CapExceeded { count, cap });
    }
    let spanning: Vec<Vec<Elem>> = (0..gen.rows())
        .flat_map(|j| {
            (0..d).map(move |r| {
                let zr = field.power_basis(r as u32);
                gen.row(j).iter().map(|&g| field.mul(zr, g)).collect()
            })
        })
        .collect();
    let mut word = vec![Elem::ZERO; gen.cols()];
    for s in 1..count {
        let t = if p == 2 {
            s.trailing_zeros() as usize
        } else {
            let (mut s, mut t) = (s, 0);
            while s % p == 0 {
                s /= p;
                t += 1;
            }
            t
        };
        for (w, &v) in word.iter_mut().zip(&spanning[t]) {
            *w = field.add(*w, v);
        }
        visit(&word);
    }
    Ok(())
}

/// Exact minimum rank distance of a code together with one codeword
/// attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub distance: usize,
    pub witness: CodeVector,
}

/// Minimum rank weight over all nonzero codewords of the row span of `gen`.
/// Returns `None` for the zero code.
pub fn min_rank_distance_bruteforce(
    field: &Field,
    gen: &Matrix,
    cap: u128,
) -> Result<Option<DistanceReport>, RankError> {
    let mut best: Option<DistanceReport> = None;
    for_each_codeword(field, gen, cap, |w| {
        let r = rank_weight(field, w);
        if r > 0 && best.as_ref().is_none_or(|b| r < b.distance) {
            best = Some(DistanceReport {
                distance: r,
                witness: w.to_vec(),
            });
        }
    })?;
    Ok(best)
}

/// Number of codewords of each rank weight, indexed by weight (index 0 counts
/// the zero word).
pub fn rank_distribution(field: &Field, gen: &Matrix, cap: u128) -> Result<Vec<u64>, RankError> {
    let mut hist = vec![0u64; gen.cols() + 1];
    hist[0] = 1;
    for_each_codeword(field, gen, cap, |w| hist[rank_weight(field, w)] += 1)?;
    Ok(hist)
}

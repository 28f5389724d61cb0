//! Semilinear equivalence of rank-metric codes.
//!
//! Two codes C, C' ⊆ F_{q^m}^n are equivalent if C' = σ'(λC)·A for a nonzero
//! scalar λ, an invertible F_q-matrix A and a field automorphism σ'. The
//! search here is exhaustive and only meant for tiny parameters.

use std::collections::HashMap;

use thiserror::Error;

use crate::code::{self, CodeError, RankCode, TwistMode, TwistSpec};
use crate::field::{Elem, Field};
use crate::matrix::{self, Matrix};
use crate::skew::SkewPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("matrix must be an invertible n x n matrix over F_q")]
    BadMatrix,
    #[error("galois exponent {j} must be below m = {m}")]
    GaloisRange { j: u32, m: u32 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("search needs {needed} steps, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("eta must be nonzero; use the Gabidulin constructor instead")]
    ZeroEta,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// The map v ↦ σ'(λv)·A with σ' = (·)^{q^galois_exp}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearTransform {
    lambda: Elem,
    matrix: Matrix,
    galois_exp: u32,
}

impl SemilinearTransform {
    pub fn new(
        field: &Field,
        lambda: Elem,
        matrix: Matrix,
        galois_exp: u32,
    ) -> Result<Self, EquivError> {
        if lambda.is_zero() {
            return Err(EquivError::ZeroLambda);
        }
        if galois_exp >= field.m() {
            return Err(EquivError::GaloisRange {
                j: galois_exp,
                m: field.m(),
            });
        }
        let square = matrix.rows() == matrix.cols();
        let over_base = matrix.entries().iter().all(|&e| field.is_in_base(e));
        if !square || !over_base || matrix::rank(field, &matrix) != matrix.rows() {
            return Err(EquivError::BadMatrix);
        }
        Ok(SemilinearTransform {
            lambda,
            matrix,
            galois_exp,
        })
    }

    pub fn identity(n: usize) -> Self {
        SemilinearTransform {
            lambda: Elem::ONE,
            matrix: Matrix::identity(n),
            galois_exp: 0,
        }
    }

    pub fn lambda(&self) -> Elem {
        self.lambda
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn galois_exp(&self) -> u32 {
        self.galois_exp
    }

    pub fn apply_vector(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        let twisted: Vec<Elem> = v
            .iter()
            .map(|&x| field.frob_q(field.mul(self.lambda, x), self.galois_exp as u64))
            .collect();
        self.matrix.vec_mul(field, &twisted)
    }
}

/// Applies `t` to every row of `gen`.
pub fn apply_transform(
    field: &Field,
    gen: &Matrix,
    t: &SemilinearTransform,
) -> Result<Matrix, EquivError> {
    if gen.cols() != t.matrix.rows() {
        return Err(EquivError::Shape(format!(
            "generator has {} columns, transform acts on {}",
            gen.cols(),
            t.matrix.rows()
        )));
    }
    Ok(Matrix::from_rows(
        (0..gen.rows())
            .map(|r| t.apply_vector(field, gen.row(r)))
            .collect(),
    ))
}

/// Row space over F_{q^m} held in reduced echelon form for fast membership.
#[derive(Clone, Debug)]
struct RowSpace {
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    fn new(field: &Field, gen: &Matrix) -> Self {
        let mut m = gen.clone();
        let pivots = matrix::rref(field, &mut m);
        let rows = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        RowSpace { rows, pivots }
    }

    fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in w.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        w.iter().all(|e| e.is_zero())
    }
}

/// True iff the two generator matrices span the same F_{q^m}-subspace.
pub fn codes_equal(field: &Field, g1: &Matrix, g2: &Matrix) -> Result<bool, EquivError> {
    if g1.cols() != g2.cols() {
        return Err(EquivError::Shape(format!(
            "lengths {} and {} differ",
            g1.cols(),
            g2.cols()
        )));
    }
    let (mut a, mut b) = (g1.clone(), g2.clone());
    let pa = matrix::rref(field, &mut a);
    let pb = matrix::rref(field, &mut b);
    Ok(pa == pb && (0..pa.len()).all(|r| a.row(r) == b.row(r)))
}

/// |GL_n(q)| = Π_{i<n} (q^n - q^i).
pub fn gl_order(n: usize, q: u64) -> Option<u128> {
    let qn = (q as u128).checked_pow(n as u32)?;
    (0..n as u32).try_fold(1u128, |acc, i| acc.checked_mul(qn - (q as u128).pow(i)))
}

/// Invertible n×n matrices over F_q in a fixed order: rows are chosen one at
/// a time, each ranging over F_q^n in canonical order and skipping vectors in
/// the span of the rows above. The identity comes first.
fn for_each_invertible(field: &Field, n: usize, visit: &mut dyn FnMut(&Matrix) -> bool) {
    let base = field.base_elements();
    let q = base.len();
    let total = q.pow(n as u32);
    let digit_of: HashMap<Elem, usize> = base.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let vectors: Vec<Vec<Elem>> = (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    base[d]
                })
                .collect()
        })
        .collect();
    let index_of =
        |v: &[Elem]| -> usize { v.iter().rev().fold(0usize, |acc, e| acc * q + digit_of[e]) };

    struct State<'a> {
        field: &'a Field,
        n: usize,
        vectors: &'a [Vec<Elem>],
        chosen: Vec<usize>,
        spans: Vec<Vec<bool>>,
    }

    fn rec(
        st: &mut State<'_>,
        index_of: &dyn Fn(&[Elem]) -> usize,
        visit: &mut dyn FnMut(&Matrix) -> bool,
    ) -> bool {
        let level = st.chosen.len();
        if level == st.n {
            let m = Matrix::from_rows(st.chosen.iter().map(|&i| st.vectors[i].clone()).collect());
            return visit(&m);
        }
        for cand in 1..st.vectors.len() {
            if st.spans[level][cand] {
                continue;
            }
            let mut next = st.spans[level].clone();
            let base = st.field.base_elements();
            for (s, &inside) in st.spans[level].iter().enumerate() {
                if !inside {
                    continue;
                }
                for &c in &base[1..] {
                    let v: Vec<Elem> = st.vectors[s]
                        .iter()
                        .zip(&st.vectors[cand])
                        .map(|(&x, &y)| st.field.add(x, st.field.mul(c, y)))
                        .collect();
                    next[index_of(&v)] = true;
                }
            }
            st.spans.push(next);
            st.chosen.push(cand);
            let stop = rec(st, index_of, visit);
            st.chosen.pop();
            st.spans.pop();
            if stop {
                return true;
            }
        }
        false
    }

    let mut zero_span = vec![false; total];
    zero_span[0] = true;
    let mut st = State {
        field,
        n,
        vectors: &vectors,
        chosen: Vec::new(),
        spans: vec![zero_span],
    };
    rec(&mut st, &index_of, visit);
}

/// Searches for a transform T with apply(g1, T) spanning the same code as
/// `g2`. λ is fixed to 1, which loses nothing for F_{q^m}-linear codes; the
/// cost is |GL_n(q)|·m candidate checks and must fit in `budget`. Returns
/// the first transform found, with A in enumeration order as the outer loop
/// and the Galois exponent as the inner loop.
pub fn brute_force_equivalent(
    field: &Field,
    g1: &Matrix,
    g2: &Matrix,
    budget: u128,
) -> Result<Option<SemilinearTransform>, EquivError> {
    let n = g1.cols();
    if g2.cols() != n {
        return Err(EquivError::Shape(format!(
            "lengths {} and {} differ",
            n,
            g2.cols()
        )));
    }
    let needed = gl_order(n, field.q())
        .and_then(|g| g.checked_mul(field.m() as u128))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(EquivError::Budget { needed, budget });
    }
    let src = RowSpace::new(field, g1);
    let target = RowSpace::new(field, g2);
    if src.dim() != target.dim() {
        return Ok(None);
    }
    let twisted: Vec<Vec<Vec<Elem>>> = (0..field.m())
        .map(|j| {
            src.rows
                .iter()
                .map(|r| r.iter().map(|&x| field.frob_q(x, j as u64)).collect())
                .collect()
        })
        .collect();
    let mut found = None;
    for_each_invertible(field, n, &mut |a| {
        for (j, rows) in twisted.iter().enumerate() {
            if rows
                .iter()
                .all(|r| target.contains(field, &a.vec_mul(field, r)))
            {
                found = Some(SemilinearTransform {
                    lambda: Elem::ONE,
                    matrix: a.clone(),
                    galois_exp: j as u32,
                });
                return true;
            }
        }
        false
    });
    Ok(found)
}

/// The code with basis {1 + η x^{k-1+t}, x, ..., x^{k-1}}, i.e. a single
/// twist with λ = (1, 0, ..., 0).
pub fn single_twist_code(
    field: &Field,
    alpha: Vec<Elem>,
    k: usize,
    t: usize,
    eta: Elem,
) -> Result<RankCode, EquivError> {
    if eta.is_zero() {
        return Err(EquivError::ZeroEta);
    }
    Ok(RankCode::new(
        field,
        alpha,
        k,
        TwistSpec::single(k, t, eta),
        TwistMode::Strict,
    )?)
}

/// True iff every generator row lies in the Gabidulin code of dimension
/// k + t_ℓ on the same evaluation points.
pub fn gabidulin_supercode_check(code: &RankCode) -> bool {
    let field = code.field();
    let dim = code.k() + code.twist().last_hook();
    let rows: Vec<Vec<Elem>> = (0..dim)
        .map(|i| SkewPoly::monomial(field, Elem::ONE, i).eval_many(code.alpha()))
        .collect();
    let sup = Matrix::from_rows(rows);
    let gen = code.generator_matrix();
    (0..gen.rows()).all(|r| code::in_row_span(field, &sup, gen.row(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::rank;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f16() -> Field {
        Field::new(FieldSpec::new(2, 1, 4)).unwrap()
    }

    fn random_transform(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> SemilinearTransform {
        let base = field.base_elements().to_vec();
        loop {
            let a = Matrix::from_rows(
                (0..n)
                    .map(|_| (0..n).map(|_| base[rng.gen_range(0..base.len())]).collect())
                    .collect(),
            );
            let j = rng.gen_range(0..field.m());
            if let Ok(t) = SemilinearTransform::new(field, field.random_nonzero(rng), a, j) {
                return t;
            }
        }
    }

    fn power_basis(field: &Field) -> Vec<Elem> {
        (0..field.m()).map(|i| field.power_basis(i)).collect()
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(1, 2), Some(1));
        assert_eq!(gl_order(2, 2), Some(6));
        assert_eq!(gl_order(4, 2), Some(20160));
        assert_eq!(gl_order(2, 3), Some(48));
        for (n, q) in [(2usize, 2u64), (3, 2), (2, 3)] {
            let f = Field::new(FieldSpec::new(q as u32, 1, 2)).unwrap();
            let mut count = 0u128;
            let mut first = None;
            for_each_invertible(&f, n, &mut |m| {
                first.get_or_insert_with(|| m.clone());
                count += 1;
                false
            });
            assert_eq!(Some(count), gl_order(n, q));
            assert_eq!(first.unwrap(), Matrix::identity(n));
        }
    }

    #[test]
    fn transform_validation() {
        let f = f16();
        let id = Matrix::identity(2);
        assert_eq!(
            SemilinearTransform::new(&f, Elem::ZERO, id.clone(), 0),
            Err(EquivError::ZeroLambda)
        );
        assert!(matches!(
            SemilinearTransform::new(&f, Elem::ONE, id.clone(), 4),
            Err(EquivError::GaloisRange { .. })
        ));
        let singular = Matrix::from_rows(vec![vec![Elem::ONE; 2]; 2]);
        assert_eq!(
            SemilinearTransform::new(&f, Elem::ONE, singular, 0),
            Err(EquivError::BadMatrix)
        );
        let not_base = Matrix::from_rows(vec![
            vec![f.power_basis(1), Elem::ZERO],
            vec![Elem::ZERO, Elem::ONE],
        ]);
        assert_eq!(
            SemilinearTransform::new(&f, Elem::ONE, not_base, 0),
            Err(EquivError::BadMatrix)
        );
    }

    #[test]
    fn simple_transforms() {
        let f = f16();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = Matrix::from_rows(
            (0..2)
                .map(|_| (0..4).map(|_| f.random(&mut rng)).collect())
                .collect(),
        );
        let id = SemilinearTransform::identity(4);
        assert_eq!(apply_transform(&f, &g, &id).unwrap(), g);
        let scaled =
            SemilinearTransform::new(&f, f.power_basis(3), Matrix::identity(4), 0).unwrap();
        assert!(codes_equal(&f, &apply_transform(&f, &g, &scaled).unwrap(), &g).unwrap());
        let mut perm = Matrix::zeros(4, 4);
        for (i, j) in [(0, 2), (1, 0), (2, 3), (3, 1)] {
            perm.set(i, j, Elem::ONE);
        }
        let pt = SemilinearTransform::new(&f, Elem::ONE, perm, 0).unwrap();
        let h = apply_transform(&f, &g, &pt).unwrap();
        for r in 0..2 {
            for (i, j) in [(0, 2), (1, 0), (2, 3), (3, 1)] {
                assert_eq!(h.get(r, j), g.get(r, i));
            }
        }
        assert!(apply_transform(&f, &Matrix::zeros(1, 3), &id).is_err());
    }

    #[test]
    fn code_equality() {
        let f = f16();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let g = Matrix::from_rows(
                (0..2)
                    .map(|_| (0..4).map(|_| f.random(&mut rng)).collect())
                    .collect(),
            );
            let mut shuffled = g.clone();
            shuffled.swap_rows(0, 1);
            let c = f.random_nonzero(&mut rng);
            for x in shuffled.row_mut(0) {
                *x = f.mul(c, *x);
            }
            assert!(codes_equal(&f, &g, &shuffled).unwrap());
            let other = Matrix::from_rows(
                (0..2)
                    .map(|_| (0..4).map(|_| f.random(&mut rng)).collect())
                    .collect(),
            );
            let member = (0..2).all(|r| code::in_row_span(&f, &g, other.row(r)))
                && (0..2).all(|r| code::in_row_span(&f, &other, g.row(r)));
            assert_eq!(codes_equal(&f, &g, &other).unwrap(), member);
        }
        assert!(codes_equal(&f, &Matrix::zeros(1, 3), &Matrix::zeros(1, 4)).is_err());
    }

    #[test]
    fn lambda_is_absorbed_by_linearity() {
        let f = f16();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = Matrix::from_rows(
                (0..2)
                    .map(|_| (0..4).map(|_| f.random(&mut rng)).collect())
                    .collect(),
            );
            let t = random_transform(&f, 4, &mut rng);
            let unit =
                SemilinearTransform::new(&f, Elem::ONE, t.matrix.clone(), t.galois_exp).unwrap();
            assert!(codes_equal(
                &f,
                &apply_transform(&f, &g, &t).unwrap(),
                &apply_transform(&f, &g, &unit).unwrap()
            )
            .unwrap());
        }
    }

    #[test]
    fn reflexive_finds_identity() {
        let f = f16();
        let code = RankCode::gabidulin(&f, power_basis(&f), 2).unwrap();
        let g = code.generator_matrix();
        let t = brute_force_equivalent(&f, g, g, u128::MAX)
            .unwrap()
            .unwrap();
        assert_eq!(t, SemilinearTransform::identity(4));
    }

    #[test]
    fn budget_is_enforced() {
        let f = f16();
        let g = Matrix::from_rows(vec![power_basis(&f)]);
        assert_eq!(
            brute_force_equivalent(&f, &g, &g, 1000),
            Err(EquivError::Budget {
                needed: 20160 * 4,
                budget: 1000
            })
        );
    }

    #[test]
    fn planted_pairs_recover_and_preserve_weights() {
        let f = f16();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..8 {
            let n = rng.gen_range(2..=3);
            let k = rng.gen_range(1..n);
            let alpha = rank::random_independent(&f, &mut rng, n);
            let code = RankCode::new(
                &f,
                alpha,
                k,
                TwistSpec::single(k, 1, f.random_nonzero(&mut rng)),
                TwistMode::Relaxed,
            )
            .unwrap();
            let g1 = code.generator_matrix().clone();
            let t = random_transform(&f, n, &mut rng);
            let g2 = apply_transform(&f, &g1, &t).unwrap();
            assert_eq!(
                rank::rank_distribution(&f, &g1, 1 << 20).unwrap(),
                rank::rank_distribution(&f, &g2, 1 << 20).unwrap()
            );
            let fwd = brute_force_equivalent(&f, &g1, &g2, u128::MAX)
                .unwrap()
                .unwrap();
            assert!(codes_equal(&f, &apply_transform(&f, &g1, &fwd).unwrap(), &g2).unwrap());
            let back = brute_force_equivalent(&f, &g2, &g1, u128::MAX)
                .unwrap()
                .unwrap();
            assert!(codes_equal(&f, &apply_transform(&f, &g2, &back).unwrap(), &g1).unwrap());
        }
    }

    #[test]
    fn distinct_distributions_are_inequivalent() {
        let f = f16();
        let alpha = power_basis(&f);
        let gab = RankCode::gabidulin(&f, alpha.clone(), 1).unwrap();
        let tw = single_twist_code(&f, alpha, 1, 1, Elem::ONE).unwrap();
        let d1 = rank::rank_distribution(&f, gab.generator_matrix(), 1 << 20).unwrap();
        let d2 = rank::rank_distribution(&f, tw.generator_matrix(), 1 << 20).unwrap();
        assert_ne!(d1, d2);
        assert_eq!(
            brute_force_equivalent(&f, gab.generator_matrix(), tw.generator_matrix(), u128::MAX)
                .unwrap(),
            None
        );
    }

    #[test]
    fn single_twist_constructor() {
        let f = f16();
        let alpha = power_basis(&f);
        assert_eq!(
            single_twist_code(&f, alpha.clone(), 1, 2, Elem::ZERO).unwrap_err(),
            EquivError::ZeroEta
        );
        let eta = f.power_basis(2);
        let c = single_twist_code(&f, alpha.clone(), 2, 1, eta).unwrap();
        let d = RankCode::new(
            &f,
            alpha.clone(),
            2,
            TwistSpec::single(2, 1, eta),
            TwistMode::Strict,
        )
        .unwrap();
        assert_eq!(c.generator_matrix(), d.generator_matrix());
        let c = single_twist_code(&f, alpha.clone(), 1, 2, eta).unwrap();
        let expected: Vec<Elem> = alpha
            .iter()
            .map(|&a| f.add(a, f.mul(eta, f.frobenius(a, 2))))
            .collect();
        assert_eq!(c.generator_matrix().row(0), &expected[..]);
    }

    #[test]
    fn supercode_check() {
        let f = Field::new(FieldSpec::new(2, 1, 6)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let alpha = rank::random_independent(&f, &mut rng, 6);
        let gab = RankCode::gabidulin(&f, alpha.clone(), 3).unwrap();
        assert!(gabidulin_supercode_check(&gab));
        let t1 = single_twist_code(&f, alpha.clone(), 3, 1, f.power_basis(5)).unwrap();
        assert!(gabidulin_supercode_check(&t1));
        let t2 = RankCode::new(
            &f,
            alpha,
            2,
            TwistSpec::new(vec![
                crate::code::Twist {
                    t: 1,
                    eta: f.power_basis(1),
                    lambda: vec![Elem::ONE, f.power_basis(2)],
                },
                crate::code::Twist {
                    t: 3,
                    eta: f.power_basis(3),
                    lambda: vec![f.power_basis(4), Elem::ZERO],
                },
            ]),
            TwistMode::Strict,
        )
        .unwrap();
        assert!(gabidulin_supercode_check(&t2));
    }

    /// 1 + ηx² vanishes on a nonzero point of F_16 iff η^{-1} is a cube, so
    /// for the ten non-cube η the single codeword has full rank and the code
    /// is equivalent to the one-dimensional Gabidulin code.
    #[test]
    fn k1_t2_classification_depends_on_eta() {
        let f = f16();
        let alpha = power_basis(&f);
        let gab = RankCode::gabidulin(&f, alpha.clone(), 1).unwrap();
        let mut cubes = 0;
        for v in 1..16 {
            let eta = f.elem(v).unwrap();
            let c = single_twist_code(&f, alpha.clone(), 1, 2, eta).unwrap();
            let w = rank::rank_weight(&f, c.generator_matrix().row(0));
            let cube = f.pow(f.inv(eta).unwrap(), 5) == Elem::ONE;
            if cube {
                cubes += 1;
                assert_eq!(w, 2);
            } else {
                assert_eq!(w, 4);
                let t = brute_force_equivalent(
                    &f,
                    c.generator_matrix(),
                    gab.generator_matrix(),
                    u128::MAX,
                )
                .unwrap();
                assert!(t.is_some());
            }
        }
        assert_eq!(cubes, 5);
    }
}

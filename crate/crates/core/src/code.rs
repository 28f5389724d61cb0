//! Gabidulin and ℓ-twisted Gabidulin codes.
//!
//! A code is the image under α-evaluation of the space V of skew polynomials
//!
//! ```text
//! f = Σ_{j<k} f_j x^j + Σ_i η_i (Σ_j λ_{i,j} f_j) x^{k-1+t_i}
//! ```
//!
//! With no twists this is the Gabidulin code ⟨1, x, ..., x^{k-1}⟩.

use std::fmt;

use thiserror::Error;

use crate::field::{Elem, Field};
use crate::matrix::{self, Matrix};
use crate::rank;
use crate::skew::SkewPoly;

/// Upper bound on the last twist hook.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TwistMode {
    /// t_ℓ < n - k
    #[default]
    Strict,
    /// t_ℓ ≤ n - k
    Relaxed,
}

/// One twist: the coefficient of x^{k-1+t} is η·Σ_j λ_j f_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub t: usize,
    pub eta: Elem,
    /// Coefficients λ_0, ..., λ_{k-1} of the linear map.
    pub lambda: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwistSpec {
    pub twists: Vec<Twist>,
}

impl TwistSpec {
    pub fn none() -> Self {
        TwistSpec::default()
    }

    pub fn new(twists: Vec<Twist>) -> Self {
        TwistSpec { twists }
    }

    /// A single twist with λ = (1, 0, ..., 0).
    pub fn single(k: usize, t: usize, eta: Elem) -> Self {
        let mut lambda = vec![Elem::ZERO; k];
        if k > 0 {
            lambda[0] = Elem::ONE;
        }
        TwistSpec::new(vec![Twist { t, eta, lambda }])
    }

    pub fn ell(&self) -> usize {
        self.twists.len()
    }

    /// t_ℓ, or 0 without twists.
    pub fn last_hook(&self) -> usize {
        self.twists.last().map_or(0, |tw| tw.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionZero,
    DimensionNotBelowLength {
        k: usize,
        n: usize,
    },
    LengthAboveExtension {
        n: usize,
        m: usize,
    },
    AlphaCount {
        got: usize,
        n: usize,
    },
    TooManyTwists {
        ell: usize,
        n_minus_k: usize,
    },
    HookNotPositive {
        index: usize,
    },
    HooksNotIncreasing {
        index: usize,
    },
    HookTooLarge {
        t: usize,
        n_minus_k: usize,
        mode: TwistMode,
    },
    EtaZero {
        index: usize,
    },
    LambdaLength {
        index: usize,
        got: usize,
        k: usize,
    },
    LambdaZero {
        index: usize,
    },
    ElementOutOfRange {
        value: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DimensionZero => write!(f, "k >= 1"),
            DimensionNotBelowLength { k, n } => write!(f, "k < n (k={k}, n={n})"),
            LengthAboveExtension { n, m } => write!(f, "n <= m (n={n}, m={m})"),
            AlphaCount { got, n } => write!(f, "expected {n} evaluation points, got {got}"),
            TooManyTwists { ell, n_minus_k } => {
                write!(f, "ell <= n-k (ell={ell}, n-k={n_minus_k})")
            }
            HookNotPositive { index } => write!(f, "t_{} > 0", index + 1),
            HooksNotIncreasing { index } => {
                write!(
                    f,
                    "t_{} < t_{} (hooks strictly increasing)",
                    index,
                    index + 1
                )
            }
            HookTooLarge { t, n_minus_k, mode } => match mode {
                TwistMode::Strict => write!(f, "t_ell < n-k (t_ell={t}, n-k={n_minus_k})"),
                TwistMode::Relaxed => write!(f, "t_ell <= n-k (t_ell={t}, n-k={n_minus_k})"),
            },
            EtaZero { index } => write!(f, "eta_{} != 0", index + 1),
            LambdaLength { index, got, k } => {
                write!(
                    f,
                    "lambda_{} has {got} coefficients, expected k={k}",
                    index + 1
                )
            }
            LambdaZero { index } => write!(f, "lambda_{} is not the zero map", index + 1),
            ElementOutOfRange { value } => write!(f, "{value} is not a field element"),
        }
    }
}

/// Lists every violated parameter constraint. Independence of the
/// evaluation points is checked separately by [`RankCode::new`].
pub fn validate_params(
    field: &Field,
    n: usize,
    k: usize,
    twist: &TwistSpec,
    mode: TwistMode,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let m = field.m() as usize;
    if k == 0 {
        out.push(Violation::DimensionZero);
    }
    if k >= n {
        out.push(Violation::DimensionNotBelowLength { k, n });
    }
    if n > m {
        out.push(Violation::LengthAboveExtension { n, m });
    }
    let n_minus_k = n.saturating_sub(k);
    let ell = twist.ell();
    if ell > n_minus_k {
        out.push(Violation::TooManyTwists { ell, n_minus_k });
    }
    for (i, tw) in twist.twists.iter().enumerate() {
        if tw.t == 0 {
            out.push(Violation::HookNotPositive { index: i });
        }
        if i > 0 && tw.t <= twist.twists[i - 1].t {
            out.push(Violation::HooksNotIncreasing { index: i });
        }
        for &e in std::iter::once(&tw.eta).chain(&tw.lambda) {
            if e.value() as u64 >= field.order() {
                out.push(Violation::ElementOutOfRange { value: e.value() });
            }
        }
        if tw.eta.is_zero() {
            out.push(Violation::EtaZero { index: i });
        }
        if tw.lambda.len() != k {
            out.push(Violation::LambdaLength {
                index: i,
                got: tw.lambda.len(),
                k,
            });
        }
        if tw.lambda.iter().all(|e| e.is_zero()) {
            out.push(Violation::LambdaZero { index: i });
        }
    }
    if let Some(last) = twist.twists.last() {
        let too_large = match mode {
            TwistMode::Strict => last.t >= n_minus_k,
            TwistMode::Relaxed => last.t > n_minus_k,
        };
        if too_large {
            out.push(Violation::HookTooLarge {
                t: last.t,
                n_minus_k,
                mode,
            });
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("invalid code parameters: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("evaluation points are linearly dependent over F_q")]
    DependentAlpha,
    #[error("message has length {got}, expected {k}")]
    MessageLength { got: usize, k: usize },
    #[error("vector has length {got}, expected {n}")]
    VectorLength { got: usize, n: usize },
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A k-dimensional F_{q^m}-linear code of length n given by evaluation
/// points and twist parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCode {
    field: Field,
    k: usize,
    alpha: Vec<Elem>,
    twist: TwistSpec,
    mode: TwistMode,
    basis: Vec<SkewPoly>,
    generator: Matrix,
}

impl RankCode {
    pub fn new(
        field: &Field,
        alpha: Vec<Elem>,
        k: usize,
        twist: TwistSpec,
        mode: TwistMode,
    ) -> Result<RankCode, CodeError> {
        let n = alpha.len();
        let mut violations = validate_params(field, n, k, &twist, mode);
        if let Some(bad) = alpha.iter().find(|e| e.value() as u64 >= field.order()) {
            violations.push(Violation::ElementOutOfRange { value: bad.value() });
        }
        if !violations.is_empty() {
            return Err(CodeError::Invalid(violations));
        }
        if rank::rank_weight(field, &alpha) != n {
            return Err(CodeError::DependentAlpha);
        }
        let basis = basis_polynomials(field, k, &twist);
        let generator = Matrix::from_rows(basis.iter().map(|g| g.eval_many(&alpha)).collect());
        Ok(RankCode {
            field: field.clone(),
            k,
            alpha,
            twist,
            mode,
            basis,
            generator,
        })
    }

    pub fn gabidulin(field: &Field, alpha: Vec<Elem>, k: usize) -> Result<RankCode, CodeError> {
        Self::new(field, alpha, k, TwistSpec::none(), TwistMode::Strict)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn twist(&self) -> &TwistSpec {
        &self.twist
    }

    pub fn mode(&self) -> TwistMode {
        self.mode
    }

    pub fn ell(&self) -> usize {
        self.twist.ell()
    }

    pub fn is_gabidulin(&self) -> bool {
        self.twist.twists.is_empty()
    }

    /// g_j = x^j + Σ_i η_i λ_{i,j} x^{k-1+t_i}, a basis of V.
    pub fn basis_polynomials(&self) -> &[SkewPoly] {
        &self.basis
    }

    /// Row j is the evaluation of g_j at α.
    pub fn generator_matrix(&self) -> &Matrix {
        &self.generator
    }

    /// The element of V whose low coefficients are `msg`.
    pub fn message_polynomial(&self, msg: &[Elem]) -> Result<SkewPoly, CodeError> {
        if msg.len() != self.k {
            return Err(CodeError::MessageLength {
                got: msg.len(),
                k: self.k,
            });
        }
        let f = &self.field;
        let mut acc = SkewPoly::zero(f);
        for (g, &c) in self.basis.iter().zip(msg) {
            acc = acc.add(&g.scale(c)).expect("same field");
        }
        Ok(acc)
    }

    /// msg · G
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>, CodeError> {
        if msg.len() != self.k {
            return Err(CodeError::MessageLength {
                got: msg.len(),
                k: self.k,
            });
        }
        Ok(self.generator.vec_mul(&self.field, msg))
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool, CodeError> {
        if v.len() != self.n() {
            return Err(CodeError::VectorLength {
                got: v.len(),
                n: self.n(),
            });
        }
        Ok(in_row_span(&self.field, &self.generator, v))
    }

    /// Whether `f` lies in the polynomial space V of this code.
    pub fn polynomial_in_space(&self, f: &SkewPoly) -> bool {
        let k = self.k;
        let top = k - 1 + self.twist.last_hook();
        if f.degree().is_some_and(|d| d > top) {
            return false;
        }
        let fld = &self.field;
        let low: Vec<Elem> = (0..k).map(|j| f.coeff(j)).collect();
        (k..=top).all(|i| {
            let expected = self
                .twist
                .twists
                .iter()
                .find(|tw| k - 1 + tw.t == i)
                .map_or(Elem::ZERO, |tw| {
                    fld.mul(tw.eta, matrix::dot(fld, &tw.lambda, &low))
                });
            f.coeff(i) == expected
        })
    }
}

fn basis_polynomials(field: &Field, k: usize, twist: &TwistSpec) -> Vec<SkewPoly> {
    let top = k - 1 + twist.last_hook();
    (0..k)
        .map(|j| {
            let mut c = vec![Elem::ZERO; top + 1];
            c[j] = Elem::ONE;
            for tw in &twist.twists {
                let idx = k - 1 + tw.t;
                c[idx] = field.add(c[idx], field.mul(tw.eta, tw.lambda[j]));
            }
            SkewPoly::new(field, c)
        })
        .collect()
}

/// Whether `v` is an F_{q^m}-combination of the rows of `gen`.
pub fn in_row_span(field: &Field, gen: &Matrix, v: &[Elem]) -> bool {
    let r = matrix::rank(field, gen);
    let stacked = gen.stack(&Matrix::from_rows(vec![v.to_vec()]));
    matrix::rank(field, &stacked) == r
}

//! The skew polynomial ring F_{q^m}[x; σ], where x·c = σ(c)·x.

use std::fmt;

use thiserror::Error;

use crate::field::{Elem, Field};
use crate::matrix::{self, Matrix};
use crate::rank::SubspaceBasis;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("polynomials are defined over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcrd(0, 0) is undefined")]
    ZeroGcrd,
    #[error("kernel of the zero polynomial is the whole field")]
    ZeroPolynomial,
    #[error("subspace basis is linearly dependent over F_q")]
    DependentBasis,
}

/// A skew polynomial Σ c_i x^i. Trailing zero coefficients are never stored,
/// so the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly{:?}", self.coeffs)
    }
}

impl SkewPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// c·x^d
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; d + 1];
        coeffs[d] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for deg 0 = -∞.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    fn check(&self, other: &SkewPoly) -> Result<(), SkewError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(SkewError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(SkewPoly::new(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(SkewPoly::new(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        ))
    }

    /// c·self (scalar on the left).
    pub fn scale(&self, c: Elem) -> SkewPoly {
        let f = &self.field;
        SkewPoly::new(f, self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// self·other under c_i = Σ_{j≤i} a_j σ^j(b_{i-j}).
    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (j, &aj) in self.coeffs.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for (i, &bi) in other.coeffs.iter().enumerate() {
                let t = f.mul(aj, f.frobenius(bi, j as i64));
                out[i + j] = f.add(out[i + j], t);
            }
        }
        Ok(SkewPoly::new(f, out))
    }

    /// Operator evaluation α ↦ Σ a_i σ^i(α).
    pub fn eval(&self, alpha: Elem) -> Elem {
        let f = &self.field;
        let mut s = alpha;
        let mut acc = Elem::ZERO;
        for &c in &self.coeffs {
            acc = f.add(acc, f.mul(c, s));
            s = f.sigma(s);
        }
        acc
    }

    pub fn eval_many(&self, points: &[Elem]) -> Vec<Elem> {
        points.iter().map(|&a| self.eval(a)).collect()
    }

    /// Right division: returns (quot, rem) with self = quot·divisor + rem and
    /// deg rem < deg divisor.
    pub fn right_divmod(&self, divisor: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewError> {
        self.check(divisor)?;
        let db = divisor.degree().ok_or(SkewError::DivisionByZero)?;
        let f = &self.field;
        let lb = divisor.coeffs[db];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; rem.len().saturating_sub(db)];
        while rem.len() > db {
            let top = rem.len() - 1;
            let lead = rem[top];
            if !lead.is_zero() {
                let d = top - db;
                let c = f
                    .div(lead, f.frobenius(lb, d as i64))
                    .expect("leading coefficient is nonzero");
                quot[d] = c;
                for (i, &bi) in divisor.coeffs.iter().enumerate() {
                    rem[d + i] = f.sub(rem[d + i], f.mul(c, f.frobenius(bi, d as i64)));
                }
            }
            rem.pop();
        }
        Ok((SkewPoly::new(f, quot), SkewPoly::new(f, rem)))
    }

    pub fn mod_r(&self, divisor: &SkewPoly) -> Result<SkewPoly, SkewError> {
        Ok(self.right_divmod(divisor)?.1)
    }

    /// Scales so the leading coefficient is 1; the zero polynomial stays zero.
    pub fn monic(&self) -> SkewPoly {
        match self.leading() {
            Some(l) => self.scale(self.field.inv(l).expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common right divisor.
    pub fn gcrd(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(SkewError::ZeroGcrd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.mod_r(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// The monic annihilator polynomial of the F_q-span of `basis`, built as
    /// the product of factors (x - σ(e)/e) where e is the current value at
    /// the next basis vector.
    pub fn annihilator(field: &Field, basis: &[Elem]) -> Result<SkewPoly, SkewError> {
        let mut acc = SkewPoly::one(field);
        for &v in basis {
            let e = acc.eval(v);
            if e.is_zero() {
                return Err(SkewError::DependentBasis);
            }
            let c = field.div(field.sigma(e), e).expect("e is nonzero");
            // (x - c)·A = x·A - c·A, and x·A shifts σ(A_i) up one degree.
            let mut next = vec![Elem::ZERO; acc.coeffs.len() + 1];
            for (i, &ai) in acc.coeffs.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], field.sigma(ai));
                next[i] = field.sub(next[i], field.mul(c, ai));
            }
            acc = SkewPoly::new(field, next);
        }
        Ok(acc)
    }

    /// F_q-basis of the root space, from the m×m matrix of the evaluation map
    /// on the power basis.
    pub fn kernel_basis(&self) -> Result<SubspaceBasis, SkewError> {
        if self.is_zero() {
            return Err(SkewError::ZeroPolynomial);
        }
        let f = &self.field;
        let m = f.m() as usize;
        let mut map = Matrix::zeros(m, m);
        for i in 0..m {
            let img = self.eval(f.power_basis(i as u32));
            for (r, c) in f.coords(img).into_iter().enumerate() {
                map.set(r, i, c);
            }
        }
        let elems = matrix::right_kernel(f, &map)
            .iter()
            .map(|v| f.from_coords(v))
            .collect();
        Ok(SubspaceBasis::from_independent(elems))
    }
}

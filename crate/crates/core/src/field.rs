//! Arithmetic in the extension field F_{q^m}, q = p^a.
//!
//! The field is represented as the single extension F_p[z]/(modulus) of
//! degree a·m. An element is identified with its canonical integer
//! Σ c_i p^i, where c_i are the coefficients with respect to the power basis
//! 1, z, z², ... of the modulus root. The subfield F_q is recovered as the
//! fixed field of (·)^q, and F_q-coordinates use the basis 1, z, ..., z^{m-1}
//! (the minimal polynomial of z over F_q has degree m).
//!
//! Fields up to [`DEFAULT_TABLE_LIMIT`] elements use log/antilog tables;
//! larger ones fall back to polynomial arithmetic.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use thiserror::Error;

use crate::matrix::{self, Matrix};

/// Largest field order accepted for arithmetic.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 32;

/// Fields up to this order get multiplication tables. Also the cap for
/// operations that enumerate the whole field.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 20;

/// An element of F_{q^m} in canonical integer encoding.
///
/// The encoding is only meaningful together with the [`Field`] that produced
/// it; all arithmetic goes through the field.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[cfg(test)]
    pub(crate) fn from_raw(v: u32) -> Elem {
        Elem(v)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("degrees must be positive (a={a}, m={m})")]
    ZeroDegree { a: u32, m: u32 },
    #[error("field of order {p}^{degree} exceeds the limit of {limit} elements")]
    TooLarge { p: u32, degree: u32, limit: u64 },
    #[error("modulus must be a monic polynomial of degree {degree} with coefficients below {p}")]
    BadModulus { degree: u32, p: u32 },
    #[error("modulus is reducible over F_{0}")]
    Reducible(u32),
    #[error("sigma exponent {sigma} must satisfy 1 <= sigma < m and gcd(sigma, m) = 1 (m = {m})")]
    BadSigma { sigma: u32, m: u32 },
    #[error("{s} does not divide m = {m}")]
    NotDivisor { s: u32, m: u32 },
    #[error("{value} is not an element of a field with {order} elements")]
    OutOfRange { value: u64, order: u64 },
    #[error("field has {order} elements, above the enumeration limit {limit}")]
    EnumerationLimit { order: u64, limit: u64 },
}

/// Parameters for [`Field::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub a: u32,
    pub m: u32,
    /// Ascending coefficients, monic of degree a·m. `None` selects the
    /// irreducible polynomial with the smallest canonical integer.
    pub modulus: Option<Vec<u32>>,
    pub sigma_exp: u32,
}

impl FieldSpec {
    pub fn new(p: u32, a: u32, m: u32) -> Self {
        FieldSpec {
            p,
            a,
            m,
            modulus: None,
            sigma_exp: 1,
        }
    }

    pub fn modulus(mut self, modulus: Vec<u32>) -> Self {
        self.modulus = Some(modulus);
        self
    }

    pub fn sigma(mut self, sigma_exp: u32) -> Self {
        self.sigma_exp = sigma_exp;
        self
    }
}

struct Tables {
    /// exp[i] = g^i for i in 0..2(N-1)
    exp: Vec<u32>,
    /// log[x] for x != 0
    log: Vec<u32>,
}

struct SubfieldData {
    /// F_p-basis of F_q inside F_{q^m}.
    fp_basis: Vec<Elem>,
    /// Maps power-basis digits to coefficients w.r.t. {b_r z^i}; `None` when a = 1.
    to_coords: Option<Matrix>,
    /// All q elements of F_q, sorted.
    elements: Vec<Elem>,
}

struct Inner {
    p: u32,
    a: u32,
    m: u32,
    degree: u32,
    order: u64,
    q: u64,
    modulus: Vec<u32>,
    sigma_exp: u32,
    tables: Option<Tables>,
    /// q^r mod (order - 1), r in 0..m
    frob_exp: Vec<u64>,
    subfield: OnceLock<SubfieldData>,
}

/// A finite field F_{q^m} together with its distinguished automorphism
/// σ = (·)^{q^sigma_exp}. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.a == other.0.a
                && self.0.m == other.0.m
                && self.0.modulus == other.0.modulus
                && self.0.sigma_exp == other.0.sigma_exp)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field, FieldError> {
        Self::with_limits(spec, DEFAULT_MAX_ORDER, DEFAULT_TABLE_LIMIT)
    }

    pub fn with_limits(
        spec: FieldSpec,
        max_order: u64,
        table_limit: u64,
    ) -> Result<Field, FieldError> {
        let FieldSpec {
            p,
            a,
            m,
            modulus,
            sigma_exp,
        } = spec;
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        if a == 0 || m == 0 {
            return Err(FieldError::ZeroDegree { a, m });
        }
        let degree = a * m;
        let order = checked_pow(p as u64, degree)
            .filter(|&o| o <= max_order)
            .ok_or(FieldError::TooLarge {
                p,
                degree,
                limit: max_order,
            })?;
        let sigma_ok = if m == 1 {
            sigma_exp <= 1
        } else {
            sigma_exp >= 1 && sigma_exp < m && gcd(sigma_exp as u64, m as u64) == 1
        };
        if !sigma_ok {
            return Err(FieldError::BadSigma {
                sigma: sigma_exp,
                m,
            });
        }
        let modulus = match modulus {
            Some(md) => {
                if md.len() != degree as usize + 1
                    || md[degree as usize] != 1
                    || md.iter().any(|&c| c >= p)
                {
                    return Err(FieldError::BadModulus { degree, p });
                }
                if !fp_poly::is_irreducible(&md, p) {
                    return Err(FieldError::Reducible(p));
                }
                md
            }
            None => default_modulus(p, degree),
        };
        let q = (p as u64).pow(a);
        let mut inner = Inner {
            p,
            a,
            m,
            degree,
            order,
            q,
            modulus,
            sigma_exp,
            tables: None,
            frob_exp: Vec::new(),
            subfield: OnceLock::new(),
        };
        let mut e = 1u64 % (order - 1).max(1);
        for _ in 0..m {
            inner.frob_exp.push(e);
            e = mulmod_u64(e, q, (order - 1).max(1));
        }
        if order <= table_limit {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn a(&self) -> u32 {
        self.0.a
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Size q of the base field F_q.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Number of elements q^m.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn sigma_exp(&self) -> u32 {
        self.0.sigma_exp
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The one-line text descriptor of the field.
    pub fn descriptor(&self) -> String {
        let md: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!(
            "field p={} a={} m={} modulus={} sigma={}",
            self.0.p,
            self.0.a,
            self.0.m,
            md.join(","),
            self.0.sigma_exp
        )
    }

    pub fn elem(&self, value: u64) -> Result<Elem, FieldError> {
        if value >= self.0.order {
            return Err(FieldError::OutOfRange {
                value,
                order: self.0.order,
            });
        }
        Ok(Elem(value as u32))
    }

    /// The element z^i of the power basis, i < a·m.
    pub fn power_basis(&self, i: u32) -> Elem {
        debug_assert!(i < self.0.degree);
        Elem((self.0.p as u64).pow(i) as u32)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..self.0.order) as u32)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(1..self.0.order) as u32)
    }

    /// Iterator over all field elements in canonical order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Elem>, FieldError> {
        if self.0.order > DEFAULT_TABLE_LIMIT {
            return Err(FieldError::EnumerationLimit {
                order: self.0.order,
                limit: DEFAULT_TABLE_LIMIT,
            });
        }
        Ok((0..self.0.order).map(|v| Elem(v as u32)))
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.0.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        self.digitwise(x, y, |a, b, p| (a + b) % p)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        if self.0.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        self.digitwise(x, y, |a, b, p| (a + p - b) % p)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.sub(Elem::ZERO, x)
    }

    fn digitwise(&self, x: Elem, y: Elem, op: impl Fn(u64, u64, u64) -> u64) -> Elem {
        let p = self.0.p as u64;
        let (mut x, mut y) = (x.0 as u64, y.0 as u64);
        let (mut out, mut pw) = (0u64, 1u64);
        while x > 0 || y > 0 {
            out += op(x % p, y % p, p) * pw;
            x /= p;
            y /= p;
            pw *= p;
        }
        Elem(out as u32)
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.tables {
            Some(t) => Elem(t.exp[t.log[x.0 as usize] as usize + t.log[y.0 as usize] as usize]),
            None => Elem(slow_mul(&self.0, x.0, y.0)),
        }
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let n1 = self.0.order - 1;
        match &self.0.tables {
            Some(t) => {
                let l = mulmod_u64(t.log[x.0 as usize] as u64, e % n1, n1);
                Elem(t.exp[l as usize])
            }
            None => Elem(slow_pow(
                &self.0,
                x.0,
                e % n1 + if e.is_multiple_of(n1) { n1 } else { 0 },
            )),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: Elem) -> Option<Elem> {
        if x.0 == 0 {
            return None;
        }
        let n1 = self.0.order - 1;
        Some(match &self.0.tables {
            Some(t) => {
                let l = t.log[x.0 as usize] as u64;
                Elem(t.exp[((n1 - l) % n1) as usize])
            }
            None => self.pow(x, n1 - 1),
        })
    }

    pub fn div(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.inv(y).map(|yi| self.mul(x, yi))
    }

    /// x^{q^r}, an element of Gal(F_{q^m}/F_q) applied to x.
    pub fn frob_q(&self, x: Elem, r: u64) -> Elem {
        let r = (r % self.0.m as u64) as usize;
        if r == 0 || x.0 == 0 {
            return x;
        }
        let e = self.0.frob_exp[r];
        let n1 = self.0.order - 1;
        match &self.0.tables {
            Some(t) => Elem(t.exp[mulmod_u64(t.log[x.0 as usize] as u64, e, n1) as usize]),
            None => self.pow(x, e),
        }
    }

    /// σ^j(x) with σ the field's distinguished generator; j may be negative.
    pub fn frobenius(&self, x: Elem, j: i64) -> Elem {
        let m = self.0.m as i64;
        let r = (self.0.sigma_exp as i64 * j).rem_euclid(m);
        self.frob_q(x, r as u64)
    }

    pub fn sigma(&self, x: Elem) -> Elem {
        self.frobenius(x, 1)
    }

    /// Whether x lies in the subfield F_{q^s}; s must divide m.
    pub fn in_subfield(&self, x: Elem, s: u32) -> Result<bool, FieldError> {
        if s == 0 || !self.0.m.is_multiple_of(s) {
            return Err(FieldError::NotDivisor { s, m: self.0.m });
        }
        Ok(self.frob_q(x, s as u64) == x)
    }

    pub fn is_in_base(&self, x: Elem) -> bool {
        self.frob_q(x, 1) == x
    }

    fn subfield_data(&self) -> &SubfieldData {
        self.0.subfield.get_or_init(|| compute_subfield(self))
    }

    /// All q elements of F_q in canonical order.
    pub fn base_elements(&self) -> &[Elem] {
        &self.subfield_data().elements
    }

    /// Coordinates of x over F_q with respect to 1, z, ..., z^{m-1}.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        let m = self.0.m as usize;
        let digits = self.digits(x);
        let sd = self.subfield_data();
        match &sd.to_coords {
            None => digits.into_iter().map(Elem).collect(),
            Some(t) => {
                let digit_elems: Vec<Elem> = digits.into_iter().map(Elem).collect();
                let x = t.mul_vec(self, &digit_elems);
                let mut out = vec![Elem::ZERO; m];
                for (r, b) in sd.fp_basis.iter().enumerate() {
                    for (i, o) in out.iter_mut().enumerate() {
                        let c = x[r * m + i];
                        if !c.is_zero() {
                            *o = self.add(*o, self.mul(c, *b));
                        }
                    }
                }
                out
            }
        }
    }

    /// Inverse of [`Field::coords`].
    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        c.iter().enumerate().fold(Elem::ZERO, |acc, (i, &ci)| {
            self.add(acc, self.mul(ci, self.power_basis(i as u32)))
        })
    }

    /// Power-basis coefficients over F_p, low degree first.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let p = self.0.p as u64;
        let mut v = x.0 as u64;
        (0..self.0.degree)
            .map(|_| {
                let d = v % p;
                v /= p;
                d as u32
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        let p = self.0.p as u64;
        Elem(digits.iter().rev().fold(0u64, |acc, &d| acc * p + d as u64) as u32)
    }

    /// An F_q-basis of the subfield F_{q^s}, derived from the reduced row
    /// echelon form of the kernel of x ↦ x^{q^s} - x.
    pub fn subfield_basis(&self, s: u32) -> Result<Vec<Elem>, FieldError> {
        if s == 0 || !self.0.m.is_multiple_of(s) {
            return Err(FieldError::NotDivisor { s, m: self.0.m });
        }
        let m = self.0.m as usize;
        let mut map = Matrix::zeros(m, m);
        for i in 0..m {
            let zi = self.power_basis(i as u32);
            let img = self.sub(self.frob_q(zi, s as u64), zi);
            for (r, c) in self.coords(img).into_iter().enumerate() {
                map.set(r, i, c);
            }
        }
        let kernel = matrix::right_kernel(self, &map);
        let mut km = Matrix::from_rows(kernel);
        matrix::rref(self, &mut km);
        Ok((0..km.rows())
            .map(|r| self.from_coords(km.row(r)))
            .collect())
    }
}

fn compute_subfield(field: &Field) -> SubfieldData {
    let inner = &field.0;
    let (p, a, m, d) = (
        inner.p,
        inner.a as usize,
        inner.m as usize,
        inner.degree as usize,
    );
    if a == 1 {
        return SubfieldData {
            fp_basis: vec![Elem::ONE],
            to_coords: None,
            elements: (0..p).map(Elem).collect(),
        };
    }
    // F_q is the kernel of x -> x^q - x, an F_p-linear map on digit vectors.
    let mut map = Matrix::zeros(d, d);
    for i in 0..d {
        let zi = field.power_basis(i as u32);
        let img = field.sub(field.frob_q(zi, 1), zi);
        for (r, c) in field.digits(img).into_iter().enumerate() {
            map.set(r, i, Elem(c));
        }
    }
    let kernel = matrix::right_kernel(field, &map);
    let fp_basis: Vec<Elem> = kernel
        .iter()
        .map(|v| field.from_digits(&v.iter().map(|e| e.0).collect::<Vec<_>>()))
        .collect();
    debug_assert_eq!(fp_basis.len(), a);

    // Columns: digits of b_r z^i, index r*m + i.
    let mut basis = Matrix::zeros(d, d);
    for (r, b) in fp_basis.iter().enumerate() {
        for i in 0..m {
            let v = field.mul(*b, field.power_basis(i as u32));
            for (row, c) in field.digits(v).into_iter().enumerate() {
                basis.set(row, r * m + i, Elem(c));
            }
        }
    }
    let to_coords = matrix::inverse(field, &basis).expect("b_r z^i is an F_p-basis");

    let mut elements = vec![Elem::ZERO];
    for b in &fp_basis {
        let prev = elements.clone();
        for c in 1..p {
            let cb = field.mul(Elem(c), *b);
            elements.extend(prev.iter().map(|&e| field.add(e, cb)));
        }
    }
    elements.sort();
    SubfieldData {
        fp_basis,
        to_coords: Some(to_coords),
        elements,
    }
}

fn build_tables(inner: &Inner) -> Tables {
    let n = inner.order as usize;
    let n1 = n - 1;
    let g = find_generator(inner);
    let mut exp = vec![0u32; 2 * n1.max(1)];
    let mut log = vec![0u32; n];
    let mut x = 1u32;
    for (i, e) in exp[..n1].iter_mut().enumerate() {
        *e = x;
        log[x as usize] = i as u32;
        x = slow_mul(inner, x, g);
    }
    exp.copy_within(..n1, n1);
    Tables { exp, log }
}

fn find_generator(inner: &Inner) -> u32 {
    let n1 = inner.order - 1;
    if n1 == 1 {
        return 1;
    }
    let factors = prime_factors(n1);
    (2..inner.order as u32)
        .find(|&g| factors.iter().all(|&r| slow_pow(inner, g, n1 / r) != 1))
        .expect("multiplicative group is cyclic")
}

fn slow_mul(inner: &Inner, x: u32, y: u32) -> u32 {
    let d = inner.degree as usize;
    if inner.p == 2 {
        let mut prod: u64 = 0;
        let (xx, mut yy) = (x as u64, y as u64);
        let mut i = 0;
        while yy != 0 {
            if yy & 1 == 1 {
                prod ^= xx << i;
            }
            yy >>= 1;
            i += 1;
        }
        let md: u64 = inner
            .modulus
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &c)| acc | ((c as u64) << i));
        for bit in (d..2 * d).rev() {
            if prod >> bit & 1 == 1 {
                prod ^= md << (bit - d);
            }
        }
        return prod as u32;
    }
    let p = inner.p as u64;
    let to_digits = |mut v: u64| -> Vec<u64> {
        (0..d)
            .map(|_| {
                let r = v % p;
                v /= p;
                r
            })
            .collect()
    };
    let (a, b) = (to_digits(x as u64), to_digits(y as u64));
    let mut prod = vec![0u64; 2 * d];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for top in (d..2 * d).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (k, &mk) in inner.modulus.iter().enumerate() {
            let idx = top - d + k;
            prod[idx] = (prod[idx] + (p - c) * mk as u64) % p;
        }
    }
    prod[..d].iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

fn slow_pow(inner: &Inner, x: u32, mut e: u64) -> u32 {
    let mut base = x;
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        e >>= 1;
    }
    acc
}

/// Smallest canonical integer Σ c_i p^i among monic irreducibles of the
/// given degree.
fn default_modulus(p: u32, degree: u32) -> Vec<u32> {
    let count = (p as u64).pow(degree);
    (0..count)
        .map(|r| {
            let mut v = r;
            let mut coeffs: Vec<u32> = (0..degree)
                .map(|_| {
                    let c = (v % p as u64) as u32;
                    v /= p as u64;
                    c
                })
                .collect();
            coeffs.push(1);
            coeffs
        })
        .find(|c| fp_poly::is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power q into (p, a); `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let (mut r, mut a) = (q, 0);
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    (r == 1).then_some((p as u32, a))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Dense polynomials over F_p, used for modulus selection and checks.
pub(crate) mod fp_poly {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = top - df;
            for (k, &fk) in f.iter().enumerate() {
                let sub = (c as u64 * fk as u64 % p as u64) as u32;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        rem(&prod, f, p)
    }

    fn powmod(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1];
        let mut base = rem(a, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = x as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Ben-Or irreducibility test for a monic polynomial over F_p.
    pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let z = vec![0, 1];
        let mut h = z.clone();
        for _ in 0..d / 2 {
            h = powmod(&h, p as u64, f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32, a: u32, m: u32) -> Field {
        Field::new(FieldSpec::new(p, a, m)).unwrap()
    }

    /// Trial division by every monic polynomial of degree 1..=d/2.
    fn irreducible_by_trial_division(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        for dd in 1..=d / 2 {
            for r in 0..(p as u64).pow(dd as u32) {
                let mut g: Vec<u32> = (0..dd)
                    .map(|i| ((r / (p as u64).pow(i as u32)) % p as u64) as u32)
                    .collect();
                g.push(1);
                let mut rem = f.to_vec();
                for top in (dd..=d).rev() {
                    let c = rem[top];
                    if c != 0 {
                        for (k, &gk) in g.iter().enumerate() {
                            let idx = top - dd + k;
                            rem[idx] = (rem[idx] + (p - c) * gk) % p;
                        }
                    }
                }
                if rem[..dd].iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn default_modulus_degree_four_over_f2() {
        // scan all 16 monic quartics in canonical-integer order
        let first = (0u32..16)
            .map(|r| {
                let mut c: Vec<u32> = (0..4).map(|i| (r >> i) & 1).collect();
                c.push(1);
                c
            })
            .find(|c| irreducible_by_trial_division(c, 2))
            .unwrap();
        assert_eq!(first, vec![1, 1, 0, 0, 1]);
        assert_eq!(gf(2, 1, 4).modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for (p, d) in [(2u32, 5u32), (3, 3), (2, 6), (5, 2)] {
            for r in 0..(p as u64).pow(d) {
                let mut c: Vec<u32> = (0..d)
                    .map(|i| ((r / (p as u64).pow(i)) % p as u64) as u32)
                    .collect();
                c.push(1);
                assert_eq!(
                    fp_poly::is_irreducible(&c, p),
                    irreducible_by_trial_division(&c, p),
                    "{c:?} over F_{p}"
                );
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Field::new(FieldSpec::new(4, 1, 2)).unwrap_err(),
            FieldError::NotPrime(4)
        );
        assert_eq!(
            Field::new(FieldSpec::new(2, 1, 2).modulus(vec![1, 0, 1])).unwrap_err(),
            FieldError::Reducible(2)
        );
        assert!(matches!(
            Field::new(FieldSpec::new(2, 1, 4).sigma(2)),
            Err(FieldError::BadSigma { .. })
        ));
        assert!(matches!(
            Field::new(FieldSpec::new(2, 1, 4).sigma(0)),
            Err(FieldError::BadSigma { .. })
        ));
        assert!(matches!(
            Field::new(FieldSpec::new(2, 1, 3).modulus(vec![1, 1, 0, 0, 1])),
            Err(FieldError::BadModulus { .. })
        ));
        assert!(matches!(
            Field::new(FieldSpec::new(2, 1, 40)),
            Err(FieldError::TooLarge { .. })
        ));
    }

    #[test]
    fn prime_field_and_f4() {
        let f2 = Field::new(FieldSpec::new(2, 1, 1).sigma(0)).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.mul(Elem::ONE, Elem::ONE), Elem::ONE);
        assert_eq!(f2.add(Elem::ONE, Elem::ONE), Elem::ZERO);

        let f4 = Field::new(FieldSpec::new(2, 1, 2).modulus(vec![1, 1, 1])).unwrap();
        let w = Elem(2);
        // ω² = ω + 1
        assert_eq!(f4.frobenius(w, 1), Elem(3));
        assert_eq!(f4.mul(w, w), Elem(3));
    }

    #[test]
    fn frobenius_identities() {
        let f = gf(2, 1, 4);
        for x in f.elements().unwrap() {
            assert_eq!(f.frobenius(x, 0), x);
            assert_eq!(f.frobenius(x, 4), x);
            assert_eq!(f.frobenius(f.frobenius(x, 1), -1), x);
        }
        for &c in f.base_elements() {
            for j in 0..5 {
                assert_eq!(f.frobenius(c, j), c);
            }
        }
    }

    #[test]
    fn subfield_membership_in_f16() {
        let f = gf(2, 1, 4);
        assert!(f.in_subfield(Elem::ONE, 1).unwrap());
        // ω: an element of multiplicative order 3, i.e. a copy of F_4
        let g = (2..16u32)
            .map(Elem)
            .find(|&e| (1..15).all(|k| f.pow(e, k) != Elem::ONE))
            .unwrap();
        let w = f.pow(g, 5);
        assert!(f.in_subfield(w, 2).unwrap());
        assert!(!f.in_subfield(w, 1).unwrap());
        assert!(!f.in_subfield(g, 2).unwrap());
        assert_eq!(
            f.in_subfield(w, 3).unwrap_err(),
            FieldError::NotDivisor { s: 3, m: 4 }
        );
    }

    #[test]
    fn subfield_sizes() {
        for (p, a, m) in [(2, 1, 12), (3, 1, 4), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let f = gf(p, a, m);
            let q = f.q();
            for s in (1..=m).filter(|s| m % s == 0) {
                let count = f
                    .elements()
                    .unwrap()
                    .filter(|&e| f.in_subfield(e, s).unwrap())
                    .count() as u64;
                assert_eq!(count, q.pow(s), "p={p} a={a} m={m} s={s}");
                assert_eq!(f.subfield_basis(s).unwrap().len(), s as usize);
            }
        }
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, a, m) in [(2, 1, 8), (3, 1, 3), (2, 2, 3), (5, 1, 2), (2, 1, 21)] {
            let f = gf(p, a, m);
            for _ in 0..1000 {
                let (x, y, z) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                assert_eq!(f.sub(f.add(x, y), y), x);
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
                }
                assert_eq!(f.sigma(f.add(x, y)), f.add(f.sigma(x), f.sigma(y)));
                assert_eq!(f.sigma(f.mul(x, y)), f.mul(f.sigma(x), f.sigma(y)));
                assert_eq!(f.frobenius(x, m as i64), x);
            }
        }
    }

    #[test]
    fn table_and_polynomial_arithmetic_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, a, m) in [(2, 1, 10), (3, 1, 5), (2, 2, 4)] {
            let fast = gf(p, a, m);
            let slow = Field::with_limits(FieldSpec::new(p, a, m), DEFAULT_MAX_ORDER, 1).unwrap();
            for _ in 0..500 {
                let (x, y) = (fast.random(&mut rng), fast.random(&mut rng));
                assert_eq!(fast.mul(x, y), slow.mul(x, y));
                assert_eq!(fast.inv(x), slow.inv(x));
                assert_eq!(fast.frob_q(x, 1), slow.frob_q(x, 1));
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, a, m) in [(2, 1, 6), (2, 2, 3), (3, 2, 2), (2, 3, 2)] {
            let f = gf(p, a, m);
            for _ in 0..200 {
                let x = f.random(&mut rng);
                let c = f.coords(x);
                assert_eq!(c.len(), m as usize);
                assert!(c.iter().all(|&ci| f.is_in_base(ci)));
                assert_eq!(f.from_coords(&c), x);
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}

//! Line-oriented text formats. Elements are written as canonical integers;
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::code::{CodeError, RankCode, Twist, TwistMode, TwistSpec};
use crate::equivalence::SemilinearTransform;
use crate::field::{Elem, Field, FieldError, FieldSpec};
use crate::matrix::Matrix;
use crate::mrd::MrdVerdict;
use crate::skew::SkewPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, TextError> {
    Err(TextError::Syntax {
        line,
        msg: msg.into(),
    })
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Splits `key=value` tokens after a leading keyword.
fn keyed<'a>(
    line: usize,
    text: &'a str,
    keyword: &str,
) -> Result<Vec<(&'a str, &'a str)>, TextError> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some(keyword) {
        return syntax(line, format!("expected `{keyword}` line"));
    }
    toks.map(|t| match t.split_once('=') {
        Some(kv) => Ok(kv),
        None => syntax(line, format!("expected key=value, got `{t}`")),
    })
    .collect()
}

fn take<'a>(line: usize, pairs: &[(&str, &'a str)], key: &str) -> Result<&'a str, TextError> {
    match pairs.iter().filter(|(k, _)| *k == key).collect::<Vec<_>>()[..] {
        [(_, v)] => Ok(v),
        [] => syntax(line, format!("missing `{key}=`")),
        _ => syntax(line, format!("duplicate `{key}=`")),
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, TextError> {
    s.parse()
        .or_else(|_| syntax(line, format!("bad integer `{s}`")))
}

fn elem(field: &Field, line: usize, s: &str) -> Result<Elem, TextError> {
    let v: u64 = num(line, s)?;
    field.elem(v).or_else(|e| syntax(line, e.to_string()))
}

fn elems(field: &Field, line: usize, toks: &[&str]) -> Result<Vec<Elem>, TextError> {
    toks.iter().map(|t| elem(field, line, t)).collect()
}

fn join(v: &[Elem], sep: &str) -> String {
    v.iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn format_field(field: &Field) -> String {
    field.descriptor()
}

fn parse_field_line(line: usize, text: &str) -> Result<Field, TextError> {
    let pairs = keyed(line, text, "field")?;
    for (k, _) in &pairs {
        if !["p", "a", "m", "modulus", "sigma"].contains(k) {
            return syntax(line, format!("unknown key `{k}`"));
        }
    }
    let p = num(line, take(line, &pairs, "p")?)?;
    let a = num(line, take(line, &pairs, "a")?)?;
    let m = num(line, take(line, &pairs, "m")?)?;
    let modulus = take(line, &pairs, "modulus")?
        .split(',')
        .map(|c| num(line, c))
        .collect::<Result<Vec<u32>, _>>()?;
    let sigma = num(line, take(line, &pairs, "sigma")?)?;
    Ok(Field::new(
        FieldSpec::new(p, a, m).modulus(modulus).sigma(sigma),
    )?)
}

/// Parses a single field descriptor line.
pub fn parse_field(text: &str) -> Result<Field, TextError> {
    let (line, l) = content_lines(text)
        .next()
        .ok_or(TextError::Eof("field line"))?;
    parse_field_line(line, l)
}

pub fn format_poly(f: &SkewPoly) -> String {
    if f.is_zero() {
        "poly 0".to_string()
    } else {
        format!("poly {}", join(f.coeffs(), " "))
    }
}

pub fn parse_poly(field: &Field, text: &str) -> Result<SkewPoly, TextError> {
    let (line, l) = content_lines(text)
        .next()
        .ok_or(TextError::Eof("poly line"))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.first() != Some(&"poly") || toks.len() < 2 {
        return syntax(line, "expected `poly <c0> ... <cd>`");
    }
    Ok(SkewPoly::new(field, elems(field, line, &toks[1..])?))
}

/// The code parameter file: field line, `code n= k=`, `alpha ...`, then one
/// `twist t= eta= lambda=...` line per twist.
pub fn format_code(code: &RankCode) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", format_field(code.field()));
    let _ = writeln!(s, "code n={} k={}", code.n(), code.k());
    let _ = writeln!(s, "alpha {}", join(code.alpha(), " "));
    for tw in &code.twist().twists {
        let _ = writeln!(
            s,
            "twist t={} eta={} lambda={}",
            tw.t,
            tw.eta,
            join(&tw.lambda, ",")
        );
    }
    s
}

/// Either a full code description or a bare generator matrix, both preceded
/// by a field line.
#[derive(Clone, Debug)]
pub enum CodeInput {
    Code(RankCode),
    Generator(Field, Matrix),
}

impl CodeInput {
    pub fn field(&self) -> &Field {
        match self {
            CodeInput::Code(c) => c.field(),
            CodeInput::Generator(f, _) => f,
        }
    }

    pub fn generator(&self) -> &Matrix {
        match self {
            CodeInput::Code(c) => c.generator_matrix(),
            CodeInput::Generator(_, g) => g,
        }
    }
}

pub fn parse_code(text: &str, mode: TwistMode) -> Result<RankCode, TextError> {
    match parse_code_or_matrix(text, mode)? {
        CodeInput::Code(c) => Ok(c),
        CodeInput::Generator(..) => Err(TextError::Eof("code line")),
    }
}

pub fn parse_code_or_matrix(text: &str, mode: TwistMode) -> Result<CodeInput, TextError> {
    let mut lines = content_lines(text);
    let (l0, first) = lines.next().ok_or(TextError::Eof("field line"))?;
    let field = parse_field_line(l0, first)?;
    let rest: Vec<(usize, &str)> = lines.collect();
    match rest.first() {
        Some((_, l)) if l.starts_with("code") => {
            parse_code_body(&field, &rest, mode).map(CodeInput::Code)
        }
        _ => Ok(CodeInput::Generator(
            field.clone(),
            parse_rows(&field, &rest)?,
        )),
    }
}

fn parse_code_body(
    field: &Field,
    lines: &[(usize, &str)],
    mode: TwistMode,
) -> Result<RankCode, TextError> {
    let (l1, code_line) = lines[0];
    let pairs = keyed(l1, code_line, "code")?;
    let n: usize = num(l1, take(l1, &pairs, "n")?)?;
    let k: usize = num(l1, take(l1, &pairs, "k")?)?;
    let (l2, alpha_line) = *lines.get(1).ok_or(TextError::Eof("alpha line"))?;
    let toks: Vec<&str> = alpha_line.split_whitespace().collect();
    if toks.first() != Some(&"alpha") {
        return syntax(l2, "expected `alpha` line");
    }
    let alpha = elems(field, l2, &toks[1..])?;
    if alpha.len() != n {
        return syntax(
            l2,
            format!("expected {n} evaluation points, got {}", alpha.len()),
        );
    }
    let mut twists = Vec::new();
    for &(li, l) in &lines[2..] {
        let pairs = keyed(li, l, "twist")?;
        let t = num(li, take(li, &pairs, "t")?)?;
        let eta = elem(field, li, take(li, &pairs, "eta")?)?;
        let lambda_toks: Vec<&str> = take(li, &pairs, "lambda")?.split(',').collect();
        let lambda = elems(field, li, &lambda_toks)?;
        twists.push(Twist { t, eta, lambda });
    }
    Ok(RankCode::new(
        field,
        alpha,
        k,
        TwistSpec::new(twists),
        mode,
    )?)
}

fn parse_rows(field: &Field, lines: &[(usize, &str)]) -> Result<Matrix, TextError> {
    if lines.is_empty() {
        return Err(TextError::Eof("matrix rows"));
    }
    let rows = lines
        .iter()
        .map(|&(li, l)| elems(field, li, &l.split_whitespace().collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?;
    let n = rows[0].len();
    if let Some(&(li, _)) = lines
        .iter()
        .zip(&rows)
        .find(|(_, r)| r.len() != n)
        .map(|(l, _)| l)
    {
        return syntax(li, format!("expected {n} entries"));
    }
    Ok(Matrix::from_rows(rows))
}

/// k lines of n canonical integers.
pub fn format_matrix(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| format!("{}\n", join(m.row(r), " ")))
        .collect()
}

/// A field line followed by the matrix rows.
pub fn format_matrix_file(field: &Field, m: &Matrix) -> String {
    format!("{}\n{}", format_field(field), format_matrix(m))
}

pub fn format_verdict(v: &MrdVerdict) -> String {
    match &v.witness {
        None => "MRD\n".to_string(),
        Some(w) => {
            let mut s = String::from("NOT-MRD\n");
            let _ = writeln!(s, "subspace {}", join(w.subspace.elems(), " "));
            let _ = writeln!(s, "g {}", join(&w.g, " "));
            let _ = writeln!(s, "f {}", join(w.f.coeffs(), " "));
            let _ = writeln!(s, "codeword {}", join(&w.codeword, " "));
            let _ = writeln!(s, "rank {}", w.rank);
            s
        }
    }
}

pub fn format_transform(t: &SemilinearTransform) -> String {
    format!(
        "lambda={} galois={}\n{}",
        t.lambda(),
        t.galois_exp(),
        format_matrix(t.matrix())
    )
}

/// Parses a transform report back, validating it against `field`.
pub fn parse_transform(field: &Field, text: &str) -> Result<SemilinearTransform, TextError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let (l0, head) = *lines.first().ok_or(TextError::Eof("transform header"))?;
    let pairs: Vec<(&str, &str)> = head
        .split_whitespace()
        .map(|t| t.split_once('=').ok_or(()))
        .collect::<Result<_, _>>()
        .or_else(|_| syntax(l0, "expected `lambda=<e> galois=<j>`"))?;
    let lambda = elem(field, l0, take(l0, &pairs, "lambda")?)?;
    let galois = num(l0, take(l0, &pairs, "galois")?)?;
    let a = parse_rows(field, &lines[1..])?;
    SemilinearTransform::new(field, lambda, a, galois).or_else(|e| syntax(l0, e.to_string()))
}

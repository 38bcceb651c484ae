//! Polynomials over Q: univariate helpers, bivariate polynomials in `x, y`,
//! a small expression parser and a bivariate gcd.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::Rational;

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("total degree {degree} exceeds the cap {cap}")]
    DegreeTooLarge { degree: u64, cap: u32 },
}

/// Dense univariate polynomial, `coeffs[k]` is the coefficient of `t^k`.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "UPoly{:?}",
            self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        )
    }
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `t - c`
    pub fn linear_root(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, a| acc * t + a)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; panics when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's algorithm: returns `(a_1, a_2, ...)` with `self = c * prod a_i^i`,
    /// each `a_i` monic squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<UPoly> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a);
        let mut c = df.exact_div(&a).sub(&b.derivative());
        while !b.is_constant() {
            let d = b.gcd(&c);
            out.push(d.clone());
            b = b.exact_div(&d);
            c = c.exact_div(&d).sub(&b.derivative());
        }
        while out.last().is_some_and(UPoly::is_constant) {
            out.pop();
        }
        out
    }

    /// Integer polynomial with the same roots: denominators cleared and the
    /// content removed.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Distinct rational roots with multiplicities, in increasing order.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        let mut rest = self.clone();
        let zero = Rational::zero();
        let mut m = 0;
        while rest.coeff(0).is_zero() && !rest.is_zero() {
            rest = rest.exact_div(&UPoly::linear_root(&zero));
            m += 1;
        }
        if m > 0 {
            roots.push((zero, m));
        }
        if rest.is_constant() {
            return roots;
        }
        // Candidates p/q from the squarefree part keep the divisor lists short.
        let radical = self
            .squarefree_decomposition()
            .into_iter()
            .fold(UPoly::one(), |acc, p| acc.mul(&p));
        let radical = {
            let mut r = radical;
            while r.coeff(0).is_zero() && !r.is_constant() {
                r = r.exact_div(&UPoly::linear_root(&Rational::zero()));
            }
            r
        };
        let ints = radical.primitive_integer_coeffs();
        let a0 = ints.first().cloned().unwrap_or_default().abs();
        let an = ints.last().cloned().unwrap_or_default().abs();
        let ps = divisors(&a0);
        let qs = divisors(&an);
        let mut candidates = Vec::new();
        for p in &ps {
            for q in &qs {
                if p.gcd(q).is_one() {
                    let r = Rational::new(p.clone(), q.clone());
                    candidates.push(r.clone());
                    candidates.push(-r);
                }
            }
        }
        candidates.sort();
        for c in candidates {
            if !radical.eval(&c).is_zero() {
                continue;
            }
            let lin = UPoly::linear_root(&c);
            let mut k = 0;
            loop {
                let (q, r) = rest.div_rem(&lin);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                k += 1;
            }
            roots.push((c, k));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        roots
    }
}

/// Positive divisors of `n > 0` by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Bivariate polynomial over Q with terms keyed by `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// Builds from `(coefficient, deg_x, deg_y)` triples with integer coefficients.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Self::zero();
        for &(c, i, j) in terms {
            p.add_term(i, j, Rational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Lowest total degree of a monomial (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0, 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(Rational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn partial_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * Rational::from_integer(i.into()));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * Rational::from_integer(j.into()));
            }
        }
        out
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x -> a x + b y`, `y -> c x + d y`.
    pub fn linear_substitution(&self, m: [[Rational; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        let xs = Self::monomial(a, 1, 0).add(&Self::monomial(b, 0, 1));
        let ys = Self::monomial(c, 1, 0).add(&Self::monomial(d, 0, 1));
        let mut out = Self::zero();
        for (&(i, j), coef) in &self.terms {
            out = out.add(&xs.pow(i).mul(&ys.pow(j)).scale(coef));
        }
        out
    }

    /// Substitutes `y -> y + c`.
    pub fn shift_y(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let lin = Self::y().add(&Self::constant(c.clone()));
        let mut out = Self::zero();
        for (&(i, j), coef) in &self.terms {
            out = out.add(&lin.pow(j).mul(&Self::monomial(coef.clone(), i, 0)));
        }
        out
    }

    /// Applies `(i, j) -> f(i, j)` to every exponent pair.
    pub fn map_exponents(&self, f: impl Fn(u32, u32) -> (u32, u32)) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let (a, b) = f(i, j);
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Coefficients of `y^j` as polynomials in `x`.
    fn to_y_coeffs(&self) -> Vec<UPoly> {
        let dy = match self.degree_in_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, Rational::zero());
            }
            col[i as usize] = c.clone();
        }
        cols.into_iter().map(UPoly::new).collect()
    }

    fn from_y_coeffs(coeffs: &[UPoly]) -> Self {
        let mut out = Self::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    /// Greatest common divisor in `Q[x, y]`, normalized so that the leading
    /// coefficient (in `y`, then in `x`) is 1. Zero iff both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return normalize_bivariate(other);
        }
        if other.is_zero() {
            return normalize_bivariate(self);
        }
        let (ca, pa) = content_and_primitive(&self.to_y_coeffs());
        let (cb, pb) = content_and_primitive(&other.to_y_coeffs());
        let content = ca.gcd(&cb);
        let (mut a, mut b) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        while !b.is_empty() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = if r.is_empty() {
                Vec::new()
            } else {
                content_and_primitive(&r).1
            };
        }
        let g = Self::from_y_coeffs(&a).mul(&Self::from_y_coeffs(&[content]));
        normalize_bivariate(&g)
    }

    /// Squarefree in `Q[x, y]`: no irreducible factor appears twice, checked as
    /// `gcd(f, f_x, f_y)` being a constant.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let g = self.gcd(&self.partial_x()).gcd(&self.partial_y());
        g.total_degree().unwrap_or(0) == 0
    }
}

fn normalize_bivariate(p: &Poly2) -> Poly2 {
    // Leading term in lexicographic (y, x) order.
    let lead = p
        .terms
        .iter()
        .max_by_key(|((i, j), _)| (*j, *i))
        .map(|(_, c)| c.clone());
    match lead {
        Some(c) => p.scale(&(Rational::one() / c)),
        None => Poly2::zero(),
    }
}

fn trim_y(mut v: Vec<UPoly>) -> Vec<UPoly> {
    while v.last().is_some_and(UPoly::is_zero) {
        v.pop();
    }
    v
}

fn content_and_primitive(coeffs: &[UPoly]) -> (UPoly, Vec<UPoly>) {
    let content = coeffs.iter().fold(UPoly::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return (UPoly::zero(), Vec::new());
    }
    let prim = coeffs.iter().map(|c| c.exact_div(&content)).collect();
    (content, trim_y(prim))
}

/// Pseudo-remainder of `a` by `b` in `Q[x][y]`.
fn pseudo_remainder(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let mut r = trim_y(a.to_vec());
    let b = trim_y(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<UPoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lr));
        }
        next.truncate(dr);
        r = trim_y(next);
    }
    r
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Higher total degree first, then by x-degree.
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(i, j)];
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                factors.push(abs.to_string());
            }
            match i {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".into()),
                _ => factors.push(format!("y^{j}")),
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Parses an expression in `x`, `y`, rational literals and `+ - * ^ ( )`.
pub fn parse_poly(input: &str) -> Result<Poly2, PolyError> {
    parse_poly_with_cap(input, DEFAULT_DEGREE_CAP)
}

pub fn parse_poly_with_cap(input: &str, cap: u32) -> Result<Poly2, PolyError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        cap,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    cap: u32,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn check_degree(&self, p: &Poly2) -> Result<(), PolyError> {
        let d = p.total_degree().unwrap_or(0);
        if d > self.cap {
            return Err(PolyError::DegreeTooLarge {
                degree: d.into(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Poly2, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2, PolyError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.unary()?;
            let d = acc.total_degree().unwrap_or(0) as u64 + rhs.total_degree().unwrap_or(0) as u64;
            if d > self.cap as u64 {
                return Err(PolyError::DegreeTooLarge {
                    degree: d,
                    cap: self.cap,
                });
            }
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly2, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly2, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected a non-negative integer exponent"));
        }
        let e: u64 = digits.parse().map_err(|_| PolyError::Parse {
            position: start,
            message: "exponent too large".into(),
        })?;
        let d = base.total_degree().unwrap_or(0) as u64;
        if d.saturating_mul(e) > self.cap as u64 {
            return Err(PolyError::DegreeTooLarge {
                degree: d.saturating_mul(e),
                cap: self.cap,
            });
        }
        if d == 0 && e > self.cap as u64 * 64 {
            return Err(self.error("exponent too large"));
        }
        Ok(base.pow(e as u32))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly2, PolyError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly2::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Poly2::y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                self.check_degree(&inner)?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer: BigInt = self.digits().parse().expect("digits");
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a denominator"));
                    }
                    let denom: BigInt = d.parse().expect("digits");
                    if denom.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(Poly2::constant(Rational::new(numer, denom)));
                }
                Ok(Poly2::constant(Rational::from_integer(numer)))
            }
            Some(c) => Err(self.error(&format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Rounds `q` toward zero to an `i64` when it fits; used only for diagnostics.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

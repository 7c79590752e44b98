//! Univariate polynomials over a [`FieldSpec`]: ring arithmetic,
//! irreducibility, order, primitivity and companion matrices.
//!
//! Text syntax: `+`-separated terms in any order, each `x^k`, `x`, `c*x^k`,
//! `c*x` or a constant `c`. Over a prime field `c` is a decimal residue; over
//! an extension field it is a packed element index written `[i]` (bare
//! decimals are accepted too). Example: `x^6+x+1`, `[2]*x+[1]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gfq::{FieldElement, FieldSpec, MAX_FIELD_SIZE};
use crate::matspace::Mat;

/// Largest `q^n` accepted by [`order_of_polynomial`] (trial-division factoring).
pub const MAX_ORDER_GROUP: u128 = 1 << 40;

/// A polynomial with coefficients in one field, lowest degree first, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::constant(field, 1)
    }

    /// The indeterminate `x`.
    pub fn x(field: &FieldSpec) -> Self {
        Poly::monomial(field, 1, 1)
    }

    pub fn constant(field: &FieldSpec, c: u32) -> Self {
        Poly::monomial(field, c, 0)
    }

    /// `c·x^k`.
    pub fn monomial(field: &FieldSpec, c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::normalized(field.clone(), coeffs)
    }

    /// From packed coefficient indices, lowest degree first.
    pub fn from_indices(field: &FieldSpec, coeffs: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.size()) {
            return Err(Error::IndexOutOfRange {
                index: bad as u64,
                size: field.size() as u64,
            });
        }
        Ok(Poly::normalized(field.clone(), coeffs))
    }

    pub fn from_elements(field: &FieldSpec, coeffs: &[FieldElement]) -> Result<Self> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::normalized(
            field.clone(),
            coeffs.iter().map(|c| c.index()).collect(),
        ))
    }

    fn normalized(field: FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn coeff_indices(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs
            .iter()
            .map(|&c| self.field.element(c as u64).expect("valid index"))
            .collect()
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::normalized(f.clone(), coeffs))
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::normalized(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::normalized(f.clone(), out))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::normalized(self.field.clone(), coeffs)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn make_monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self
            .field
            .inv(self.leading())
            .expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    /// Quotient and remainder.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[i - dd] = t;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = f.sub(rem[i - dd + j], f.mul(t, d));
            }
        }
        rem.truncate(dd);
        Ok((
            Poly::normalized(f.clone(), quot),
            Poly::normalized(f.clone(), rem),
        ))
    }

    pub fn rem(&self, modulus: &Poly) -> Result<Poly> {
        Ok(self.divrem(modulus)?.1)
    }

    /// Evaluates at a packed field element index (Horner).
    pub fn eval(&self, a: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, a), c))
    }

    pub fn parse(field: &FieldSpec, text: &str) -> Result<Poly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<u32> = Vec::new();
        for term in compact.split('+') {
            let (c, k) = parse_term(field, term)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] = field.add(coeffs[k], c);
        }
        Ok(Poly::normalized(field.clone(), coeffs))
    }
}

fn parse_coefficient(field: &FieldSpec, text: &str) -> Result<u32> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .unwrap_or(text);
    let value: u64 = inner
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient {:?}", text)))?;
    if value >= field.size() as u64 {
        return Err(Error::Parse(format!(
            "coefficient {} out of range for a field of size {}",
            value,
            field.size()
        )));
    }
    Ok(value as u32)
}

fn parse_term(field: &FieldSpec, term: &str) -> Result<(u32, usize)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    match term.find('x') {
        None => Ok((parse_coefficient(field, term)?, 0)),
        Some(pos) => {
            let (head, tail) = (&term[..pos], &term[pos + 1..]);
            let c = match head {
                "" => 1,
                h => parse_coefficient(field, h.strip_suffix('*').unwrap_or(h))?,
            };
            let k = match tail {
                "" => 1,
                t => t
                    .strip_prefix('^')
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad exponent in {:?}", term)))?,
            };
            Ok((c, k))
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let coef = |c: u32| {
            if self.field.is_prime_field() {
                c.to_string()
            } else {
                format!("[{}]", c)
            }
        };
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", k),
            };
            terms.push(match (k, c) {
                (0, _) => coef(c),
                (_, 1) => mono,
                _ => format!("{}*{}", coef(c), mono),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.add(b)
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.mul(b)
}

pub fn poly_mod(a: &Poly, m: &Poly) -> Result<Poly> {
    a.rem(m)
}

/// Monic greatest common divisor (zero when both inputs are zero).
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.check_same(b)?;
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.make_monic())
}

/// `base^e mod m` by square-and-multiply.
pub fn poly_powmod(base: &Poly, mut e: u64, m: &Poly) -> Result<Poly> {
    base.check_same(m)?;
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = Poly::one(m.field()).rem(m)?;
    let mut b = base.rem(m)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b)?.rem(m)?;
        }
        b = b.mul(&b)?.rem(m)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

/// Rabin's test: `f | x^{q^n} - x` and `gcd(f, x^{q^{n/t}} - x) = 1` for
/// every prime `t | n`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let f = f.make_monic();
    let q = f.field().size() as u64;
    let x = Poly::x(f.field());
    // frob[i] = x^{q^i} mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.rem(&f)?);
    for i in 1..=n {
        let next = poly_powmod(&frob[i - 1], q, &f)?;
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return Ok(false);
    }
    for t in prime_factors(n as u64) {
        let h = frob[n / t as usize].sub(&x)?;
        let g = poly_gcd(&f, &h)?;
        if g.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn group_order(f: &Poly, n: usize) -> Result<u64> {
    let size = (f.field().size() as u128).pow(n as u32);
    if size > MAX_ORDER_GROUP {
        return Err(Error::CapExceeded {
            size,
            cap: MAX_ORDER_GROUP,
        });
    }
    Ok(size as u64 - 1)
}

/// Least `e ≥ 1` with `f | x^e - 1`, i.e. the multiplicative order of a
/// root. Starts from `q^n - 1` and strips prime factors.
pub fn order_of_polynomial(f: &Poly) -> Result<u64> {
    if !is_irreducible(f)? {
        return Err(Error::Reducible(f.to_string()));
    }
    if f.coeff(0) == 0 {
        return Err(Error::ZeroConstantTerm(f.to_string()));
    }
    let f = f.make_monic();
    let n = f.degree().expect("non-constant");
    let group = group_order(&f, n)?;
    let x = Poly::x(f.field());
    let one = Poly::one(f.field()).rem(&f)?;
    let mut e = group;
    for t in prime_factors(group) {
        while e % t == 0 && poly_powmod(&x, e / t, &f)? == one {
            e /= t;
        }
    }
    Ok(e)
}

pub fn is_primitive(f: &Poly) -> Result<bool> {
    let e = order_of_polynomial(f)?;
    let n = f.degree().expect("non-constant");
    Ok(e == group_order(f, n)?)
}

/// Companion matrix with ones on the superdiagonal and `(-c_0, ..., -c_{n-1})`
/// in the last row, acting on row vectors.
pub fn companion_matrix(f: &Poly) -> Result<Mat> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::ConstantPolynomial),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let field = f.field();
    let mut data = vec![0u32; n * n];
    for i in 0..n - 1 {
        data[i * n + i + 1] = 1;
    }
    for j in 0..n {
        data[(n - 1) * n + j] = field.neg(f.coeff(j));
    }
    Mat::from_indices(field, n, n, data)
}

/// All monic irreducible polynomials of degree `n`, ordered by the packed
/// index of their lower coefficients `c_0 + c_1·q + ...`.
pub fn list_irreducibles(field: &FieldSpec, n: usize) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let q = field.size() as u128;
    let count = q.pow(n as u32);
    if count > MAX_FIELD_SIZE as u128 {
        return Err(Error::CapExceeded {
            size: count,
            cap: MAX_FIELD_SIZE as u128,
        });
    }
    let mut out = Vec::new();
    for i in 0..count as u64 {
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut r = i;
        for _ in 0..n {
            coeffs.push((r % q as u64) as u32);
            r /= q as u64;
        }
        coeffs.push(1);
        let f = Poly::normalized(field.clone(), coeffs);
        if is_irreducible(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

//! Exact arithmetic in a finite-field tower `Z_p ⊂ F_q ⊂ F_{q^n}`.
//!
//! Every field in the tower is a [`FieldSpec`]. A prime field is built with
//! [`FieldSpec::prime`]; each extension is the quotient ring of the level
//! below by a monic irreducible modulus ([`FieldSpec::extend`]). At most two
//! extension levels sit above the prime field.
//!
//! Elements are stored as a packed index: the coefficient sequence
//! `(c_0, c_1, ..., c_{d-1})` over the level below (lowest degree first) is
//! read as the mixed-radix number `c_0 + c_1·s + ... + c_{d-1}·s^{d-1}`,
//! where `s` is the size of the level below and each `c_i` is itself an index
//! at that level. Index 0 is zero, index 1 is one, and the enumeration order
//! of [`FieldSpec::elements`] is ascending index.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{self, Poly};

/// Largest supported field cardinality (dense log tables must stay small).
pub const MAX_FIELD_SIZE: u64 = 1 << 24;

/// Maximum number of extension levels above the prime field.
pub const MAX_TOWER_DEPTH: usize = 2;

/// A field in the tower. Cheap to clone; all clones share one description.
#[derive(Clone)]
pub struct FieldSpec(Arc<Level>);

struct Level {
    p: u32,
    below: Option<FieldSpec>,
    // Monic, `degree + 1` coefficients over `below`; empty for a prime field.
    modulus: Vec<u32>,
    degree: usize,
    size: u32,
    depth: usize,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds the tower `Z_p`, optionally `F_q = Z_p[x]/(base)` and optionally
/// `F_q[x]/(top)`. `base` must be a polynomial over `Z_p`; `top` must be a
/// polynomial over the field produced by the first two arguments.
pub fn field_make(p: u64, base: Option<&Poly>, top: Option<&Poly>) -> Result<FieldSpec> {
    let mut field = FieldSpec::prime(p)?;
    if let Some(m) = base {
        field = field.extend(m)?;
    }
    if let Some(m) = top {
        field = field.extend(m)?;
    }
    Ok(field)
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_FIELD_SIZE {
            return Err(Error::CapExceeded {
                size: p as u128,
                cap: MAX_FIELD_SIZE as u128,
            });
        }
        Ok(FieldSpec(Arc::new(Level {
            p: p as u32,
            below: None,
            modulus: Vec::new(),
            degree: 1,
            size: p as u32,
            depth: 0,
        })))
    }

    /// Extends this field by a monic irreducible `modulus` over it.
    pub fn extend(&self, modulus: &Poly) -> Result<Self> {
        if modulus.field() != self {
            return Err(Error::FieldMismatch);
        }
        if self.depth() >= MAX_TOWER_DEPTH {
            return Err(Error::TowerTooDeep);
        }
        let degree = modulus.degree().ok_or(Error::ConstantPolynomial)?;
        if degree == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !modulus.is_monic() {
            return Err(Error::NonMonicModulus(modulus.to_string()));
        }
        let size = (self.size() as u128).pow(degree as u32);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(Error::CapExceeded {
                size,
                cap: MAX_FIELD_SIZE as u128,
            });
        }
        if !polyring::is_irreducible(modulus)? {
            return Err(Error::ReducibleModulus(modulus.to_string()));
        }
        Ok(FieldSpec(Arc::new(Level {
            p: self.0.p,
            below: Some(self.clone()),
            modulus: modulus.coeff_indices().to_vec(),
            degree,
            size: size as u32,
            depth: self.depth() + 1,
        })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Degree of this level over the level below (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of extension levels above `Z_p`.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.below.is_none()
    }

    /// The level below, `None` for a prime field.
    pub fn below(&self) -> Option<&FieldSpec> {
        self.0.below.as_ref()
    }

    pub fn prime_field(&self) -> FieldSpec {
        match self.below() {
            Some(b) => b.prime_field(),
            None => self.clone(),
        }
    }

    /// Defining modulus over the level below.
    pub fn modulus(&self) -> Option<Poly> {
        self.below().map(|b| {
            Poly::from_indices(b, self.0.modulus.clone()).expect("stored modulus is valid")
        })
    }

    /// Cardinalities from `Z_p` up to this level.
    pub fn level_sizes(&self) -> Vec<u32> {
        let mut sizes = match self.below() {
            Some(b) => b.level_sizes(),
            None => Vec::new(),
        };
        sizes.push(self.size());
        sizes
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            index: 1,
        }
    }

    /// The element with packed index `i`.
    pub fn element(&self, i: u64) -> Result<FieldElement> {
        if i >= self.size() as u64 {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: self.size() as u64,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            index: i as u32,
        })
    }

    /// All elements in ascending index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |index| FieldElement {
            field: self.clone(),
            index,
        })
    }

    /// Splits a packed index into its coefficients over the level below.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        match self.below() {
            None => vec![a],
            Some(b) => {
                let s = b.size();
                let mut a = a;
                (0..self.degree())
                    .map(|_| {
                        let d = a % s;
                        a /= s;
                        d
                    })
                    .collect()
            }
        }
    }

    /// Packs coefficients over the level below; missing high coefficients are zero.
    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        match self.below() {
            None => digits.first().copied().unwrap_or(0),
            Some(b) => digits
                .iter()
                .take(self.degree())
                .rev()
                .fold(0u32, |acc, &d| acc * b.size() + d),
        }
    }

    /// Packs an arbitrary-length coefficient sequence, reducing it by the modulus.
    pub fn reduce_digits(&self, digits: &[u32]) -> u32 {
        match self.below() {
            None => digits.first().copied().unwrap_or(0) % self.0.p,
            Some(b) => {
                let mut v = digits.to_vec();
                self.reduce_in_place(b, &mut v);
                self.from_digits(&v)
            }
        }
    }

    fn reduce_in_place(&self, b: &FieldSpec, v: &mut Vec<u32>) {
        let d = self.degree();
        let m = &self.0.modulus;
        for i in (d..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for j in 0..d {
                    v[i - d + j] = b.sub(v[i - d + j], b.mul(c, m[j]));
                }
                v[i] = 0;
            }
        }
        v.truncate(d);
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self.below() {
            None => {
                if self.0.p == 2 {
                    a ^ b
                } else {
                    ((a as u64 + b as u64) % self.0.p as u64) as u32
                }
            }
            Some(lo) => {
                let s = lo.size();
                let (mut a, mut b) = (a, b);
                let mut out = 0u32;
                let mut place = 1u32;
                for i in 0..self.degree() {
                    let d = lo.add(a % s, b % s);
                    out += d * place;
                    a /= s;
                    b /= s;
                    if i + 1 < self.degree() {
                        place *= s;
                    }
                }
                out
            }
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self.below() {
            None => {
                if a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            Some(lo) => {
                let d: Vec<u32> = self.digits(a).into_iter().map(|c| lo.neg(c)).collect();
                self.from_digits(&d)
            }
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match self.below() {
            None => {
                if self.0.p == 2 {
                    a & b
                } else {
                    ((a as u64 * b as u64) % self.0.p as u64) as u32
                }
            }
            Some(lo) => {
                let x = self.digits(a);
                let y = self.digits(b);
                let mut prod = vec![0u32; x.len() + y.len() - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        if yj != 0 {
                            prod[i + j] = lo.add(prod[i + j], lo.mul(xi, yj));
                        }
                    }
                }
                self.reduce_in_place(lo, &mut prod);
                self.from_digits(&prod)
            }
        }
    }

    /// `a^e` for a non-negative exponent.
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, self.size() as u64 - 2))
    }

    /// Multiplicative order of a nonzero element, by brute force.
    pub fn multiplicative_order(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        let mut x = a;
        let mut k = 1u64;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.modulus == other.0.modulus
                && self.0.below == other.0.below)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            None => write!(f, "GF({})", self.0.p),
            Some(m) => write!(
                f,
                "GF({}) = {:?}[x]/({})",
                self.size(),
                self.below().unwrap(),
                m
            ),
        }
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    index: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Packed mixed-radix index; see the module docs.
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// Coefficients over the level below, lowest degree first. A prime-field
    /// element is its own single coefficient.
    pub fn coefficients(&self) -> Vec<FieldElement> {
        match self.field.below() {
            None => vec![self.clone()],
            Some(b) => self
                .field
                .digits(self.index)
                .into_iter()
                .map(|index| FieldElement {
                    field: b.clone(),
                    index,
                })
                .collect(),
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, index: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            index,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.index, other.index)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.index, other.index)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.index, other.index)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.index)?))
    }

    /// `self^e`; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.with(self.field.pow(self.index, e as u64)))
        } else {
            let i = self.field.inv(self.index)?;
            Ok(self.with(self.field.pow(i, e.unsigned_abs())))
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.index))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.below() {
            None => write!(f, "{}", self.index),
            Some(below) => {
                let digits = self.field.digits(self.index);
                let mut terms = Vec::new();
                for (i, &c) in digits.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let c_text = if below.is_prime_field() {
                        c.to_string()
                    } else {
                        format!("[{}]", c)
                    };
                    let coef = if c == 1 && i > 0 {
                        String::new()
                    } else if i > 0 {
                        format!("{}*", c_text)
                    } else {
                        c_text
                    };
                    let mono = match i {
                        0 => String::new(),
                        1 => "a".to_string(),
                        _ => format!("a^{}", i),
                    };
                    terms.push(format!("{}{}", coef, mono));
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}

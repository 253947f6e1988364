//! Exact scalars over the rationals, prime fields GF(p) and extensions GF(p^k).
//!
//! A [`FieldSpec`] is a validated, cheaply clonable field descriptor. Raw field
//! elements are [`Elem`] values; every arithmetic routine on `Elem` goes through
//! the `FieldSpec` that owns it. Matrices and subspaces store one `FieldSpec`
//! and many `Elem`s. [`Scalar`] pairs the two for callers that want checked,
//! self-describing values.

pub(crate) mod poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Primes are restricted to p < 2^31 so residue products fit in 64 bits.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Rational,
    Prime { p: u64 },
    // modulus is monic, ascending, length degree + 1
    Extension { p: u64, modulus: Arc<[u64]> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Prime,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: Kind,
}

/// A field element in canonical form, interpreted relative to a [`FieldSpec`].
///
/// Rationals are reduced with positive denominator, residues lie in `[0, p)`,
/// extension elements are coefficient vectors of length exactly `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rational(BigRational),
    Residue(u64),
    Poly(Vec<u64>),
}

#[cold]
#[inline(never)]
fn foreign(field: &FieldSpec) -> ! {
    panic!("element does not belong to {field}")
}

/// Built-in Conway polynomials for small extension fields.
fn default_modulus(p: u64, degree: usize) -> Option<&'static [u64]> {
    match (p, degree) {
        (2, 1) => Some(&[1, 1]),
        (2, 2) => Some(&[1, 1, 1]),
        (2, 3) => Some(&[1, 1, 0, 1]),
        (3, 1) => Some(&[1, 1]),
        (3, 2) => Some(&[2, 2, 1]),
        (3, 3) => Some(&[1, 2, 0, 1]),
        (5, 1) => Some(&[3, 1]),
        (5, 2) => Some(&[2, 4, 1]),
        (5, 3) => Some(&[3, 3, 0, 1]),
        _ => None,
    }
}

pub fn is_prime(p: u64) -> bool {
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

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec { kind: Kind::Rational }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::OutOfRange(format!("prime {p} must be below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec {
            kind: Kind::Prime { p },
        })
    }

    /// GF(p)[x]/(modulus). The modulus is given ascending and must be monic
    /// and irreducible; failure of either check is an error.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        FieldSpec::prime(p)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
        }
        let modulus = poly::trim(modulus);
        let degree = match poly::degree(&modulus) {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidModulus("modulus must have degree at least 1".into())),
        };
        if modulus[degree] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over GF({p})",
                format_poly(&modulus)
            )));
        }
        Ok(FieldSpec {
            kind: Kind::Extension {
                p,
                modulus: modulus.into(),
            },
        })
    }

    /// Extension with the built-in modulus (p in {2, 3, 5}, degree <= 3).
    pub fn extension_default(p: u64, degree: usize) -> Result<Self> {
        let modulus = default_modulus(p, degree).ok_or_else(|| {
            Error::InvalidModulus(format!(
                "no built-in modulus for GF({p}^{degree}); supply one explicitly"
            ))
        })?;
        FieldSpec::extension(p, modulus.to_vec())
    }

    pub fn kind(&self) -> FieldKind {
        match self.kind {
            Kind::Rational => FieldKind::Rational,
            Kind::Prime { .. } => FieldKind::Prime,
            Kind::Extension { .. } => FieldKind::Extension,
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            Kind::Rational => 0,
            Kind::Prime { p } | Kind::Extension { p, .. } => p,
        }
    }

    /// Degree over the prime field (1 for the rationals and GF(p)).
    pub fn degree(&self) -> usize {
        match &self.kind {
            Kind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match &self.kind {
            Kind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, Kind::Rational)
    }

    /// Number of elements, `None` for the rationals (or on overflow).
    pub fn order(&self) -> Option<u128> {
        match &self.kind {
            Kind::Rational => None,
            Kind::Prime { p } => Some(*p as u128),
            Kind::Extension { p, modulus } => (*p as u128).checked_pow((modulus.len() - 1) as u32),
        }
    }

    /// Short form accepted on the command line: `q`, `gf5`, `gf2^2`.
    pub fn short_name(&self) -> String {
        match &self.kind {
            Kind::Rational => "q".into(),
            Kind::Prime { p } => format!("gf{p}"),
            Kind::Extension { p, modulus } => format!("gf{p}^{}", modulus.len() - 1),
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.kind {
            Kind::Rational => Elem::Rational(BigRational::zero()),
            Kind::Prime { .. } => Elem::Residue(0),
            Kind::Extension { modulus, .. } => Elem::Poly(vec![0; modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &self.kind {
            Kind::Rational => Elem::Rational(BigRational::from_integer(BigInt::from(v))),
            Kind::Prime { p } => Elem::Residue(reduce_i128(v as i128, *p)),
            Kind::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = reduce_i128(v as i128, *p);
                Elem::Poly(c)
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rational(r) => r.is_zero(),
            Elem::Residue(x) => *x == 0,
            Elem::Poly(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// True iff `a` is a canonical element of this field.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.kind, a) {
            (Kind::Rational, Elem::Rational(r)) => r.denom().is_positive() && r.numer().gcd(r.denom()).is_one(),
            (Kind::Prime { p }, Elem::Residue(x)) => x < p,
            (Kind::Extension { p, modulus }, Elem::Poly(c)) => c.len() == modulus.len() - 1 && c.iter().all(|x| x < p),
            _ => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => Elem::Residue((x + y) % p),
            (Kind::Rational, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x + y),
            (Kind::Extension { p, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            _ => foreign(self),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => Elem::Residue((x + p - y) % p),
            (Kind::Rational, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x - y),
            (Kind::Extension { p, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(x.iter().zip(y).map(|(u, v)| (u + p - v) % p).collect())
            }
            _ => foreign(self),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.kind, a) {
            (Kind::Prime { p }, Elem::Residue(x)) => Elem::Residue((p - x) % p),
            (Kind::Rational, Elem::Rational(x)) => Elem::Rational(-x),
            (Kind::Extension { p, .. }, Elem::Poly(x)) => Elem::Poly(x.iter().map(|u| (p - u) % p).collect()),
            _ => foreign(self),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.kind, a, b) {
            (Kind::Prime { p }, Elem::Residue(x), Elem::Residue(y)) => Elem::Residue(poly::mul_mod(*x, *y, *p)),
            (Kind::Rational, Elem::Rational(x), Elem::Rational(y)) => Elem::Rational(x * y),
            (Kind::Extension { p, modulus }, Elem::Poly(x), Elem::Poly(y)) => {
                let prod = poly::mulmod_poly(&poly::trim(x.clone()), &poly::trim(y.clone()), modulus, *p);
                Elem::Poly(pad(prod, modulus.len() - 1))
            }
            _ => foreign(self),
        }
    }

    /// `a * b + c`, the inner step of every elimination loop.
    pub fn mul_add(&self, a: &Elem, b: &Elem, c: &Elem) -> Elem {
        match (&self.kind, a, b, c) {
            (Kind::Prime { p }, Elem::Residue(x), Elem::Residue(y), Elem::Residue(z)) => {
                Elem::Residue(((*x as u128 * *y as u128 + *z as u128) % *p as u128) as u64)
            }
            _ => self.add(&self.mul(a, b), c),
        }
    }

    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (&self.kind, a) {
            (Kind::Prime { p }, Elem::Residue(x)) => poly::inv_mod(*x, *p).map(Elem::Residue),
            (Kind::Rational, Elem::Rational(x)) => Some(Elem::Rational(x.recip())),
            (Kind::Extension { p, modulus }, Elem::Poly(x)) => {
                poly::inv_mod_poly(&poly::trim(x.clone()), modulus, *p).map(|c| Elem::Poly(pad(c, modulus.len() - 1)))
            }
            _ => foreign(self),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// The unique `x` with `x^(p^w) = a` in a finite field. Frobenius is an
    /// automorphism of order `degree`, so its `w`-th inverse is a forward
    /// power.
    pub fn frobenius_root(&self, a: &Elem, w: u32) -> Elem {
        let (p, d) = match &self.kind {
            Kind::Rational => panic!("frobenius_root requires a finite field"),
            Kind::Prime { p } => (*p, 1usize),
            Kind::Extension { p, modulus } => (*p, modulus.len() - 1),
        };
        let steps = (d - (w as usize % d)) % d;
        let mut x = a.clone();
        for _ in 0..steps {
            x = self.pow(&x, p);
        }
        x
    }

    /// Element number `index` of a finite field, reading `index` in base p as
    /// the coefficient vector. Indices cover `0..order()`.
    pub fn element(&self, index: u128) -> Elem {
        match &self.kind {
            Kind::Rational => panic!("the rationals cannot be enumerated"),
            Kind::Prime { p } => Elem::Residue((index % *p as u128) as u64),
            Kind::Extension { p, modulus } => {
                let p = *p as u128;
                let mut t = index;
                let c = (0..modulus.len() - 1)
                    .map(|_| {
                        let digit = (t % p) as u64;
                        t /= p;
                        digit
                    })
                    .collect();
                Elem::Poly(c)
            }
        }
    }

    /// A random element; over the rationals a small fraction with numerator in
    /// [-4, 4] and denominator in [1, 3].
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.kind {
            Kind::Rational => {
                let num: i64 = rng.gen_range(-4..=4);
                let den: i64 = rng.gen_range(1..=3);
                Elem::Rational(BigRational::new(num.into(), den.into()))
            }
            Kind::Prime { p } => Elem::Residue(rng.gen_range(0..*p)),
            Kind::Extension { p, modulus } => {
                Elem::Poly((0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect())
            }
        }
    }

    /// Image of `a` (an element of `self`) in `target`. Defined for the
    /// prime-field inclusion GF(p) -> GF(p^k) and for identical fields.
    pub fn embed(&self, a: &Elem, target: &FieldSpec) -> Result<Elem> {
        if self == target {
            return Ok(a.clone());
        }
        match (&self.kind, &target.kind, a) {
            (Kind::Prime { p }, Kind::Extension { p: q, modulus }, Elem::Residue(x)) if p == q => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = *x;
                Ok(Elem::Poly(c))
            }
            _ => Err(Error::CharacteristicMismatch {
                from: self.to_string(),
                to: target.to_string(),
            }),
        }
    }

    /// Parse the text form: `a/b` or `a` over Q, a decimal integer over GF(p)
    /// (reduced mod p), `[c0,c1,...]` or a decimal integer over GF(p^k).
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let s = text.trim();
        match &self.kind {
            Kind::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid rational '{text}'")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid rational '{text}'")))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in '{text}'")));
                }
                Ok(Elem::Rational(BigRational::new(num, den)))
            }
            Kind::Prime { p } => parse_residue(s, *p).map(Elem::Residue),
            Kind::Extension { p, modulus } => {
                let d = modulus.len() - 1;
                if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    let parts: Vec<&str> = if inner.trim().is_empty() {
                        Vec::new()
                    } else {
                        inner.split(',').collect()
                    };
                    if parts.len() > d {
                        return Err(Error::Parse(format!(
                            "'{text}' has {} coefficients, field degree is {d}",
                            parts.len()
                        )));
                    }
                    let mut c = vec![0; d];
                    for (slot, part) in c.iter_mut().zip(parts) {
                        *slot = parse_residue(part.trim(), *p)?;
                    }
                    Ok(Elem::Poly(c))
                } else {
                    let mut c = vec![0; d];
                    c[0] = parse_residue(s, *p)?;
                    Ok(Elem::Poly(c))
                }
            }
        }
    }

    pub fn format_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Residue(x) => x.to_string(),
            Elem::Poly(c) => {
                let body: Vec<String> = c.iter().map(u64::to_string).collect();
                format!("[{}]", body.join(","))
            }
        }
    }
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn parse_residue(s: &str, p: u64) -> Result<u64> {
    let v: BigInt = s.parse().map_err(|_| Error::Parse(format!("invalid residue '{s}'")))?;
    let r = v.mod_floor(&BigInt::from(p));
    Ok(r.to_u64().expect("residue below p"))
}

fn pad(mut c: Vec<u64>, len: usize) -> Vec<u64> {
    c.resize(len, 0);
    c
}

fn format_poly(c: &[u64]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| match (i, x) {
            (0, _) => x.to_string(),
            (1, 1) => "x".into(),
            (1, _) => format!("{x}x"),
            (_, 1) => format!("x^{i}"),
            _ => format!("{x}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Rational => write!(f, "Q"),
            Kind::Prime { p } => write!(f, "GF({p})"),
            Kind::Extension { p, modulus } => {
                write!(f, "GF({p}^{}) mod {}", modulus.len() - 1, format_poly(modulus))
            }
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// `q`, `gfP` or `gfP^K` (built-in modulus), case-insensitive.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if lower == "q" || lower == "rational" {
            return Ok(FieldSpec::rational());
        }
        let rest = lower
            .strip_prefix("gf")
            .ok_or_else(|| Error::Parse(format!("unknown field '{s}' (expected q, gfP or gfP^K)")))?;
        let bad = || Error::Parse(format!("malformed field '{s}'"));
        match rest.split_once('^') {
            None => FieldSpec::prime(rest.parse().map_err(|_| bad())?),
            Some((p, k)) => {
                let p: u64 = p.parse().map_err(|_| bad())?;
                let k: usize = k.parse().map_err(|_| bad())?;
                if k == 1 {
                    FieldSpec::prime(p)
                } else {
                    FieldSpec::extension_default(p, k)
                }
            }
        }
    }
}

/// A field element bundled with its field; arithmetic is checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl Scalar {
    pub fn new(field: &FieldSpec, value: Elem) -> Result<Self> {
        if !field.contains(&value) {
            return Err(Error::Parse(format!("{value:?} is not a canonical element of {field}")));
        }
        Ok(Scalar {
            field: field.clone(),
            value,
        })
    }

    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        Ok(Scalar {
            field: field.clone(),
            value: field.parse_elem(text)?,
        })
    }

    pub fn from_i64(field: &FieldSpec, v: i64) -> Self {
        Scalar {
            field: field.clone(),
            value: field.from_i64(v),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    /// Applies `op`; unary operations ignore `rhs` apart from the field check.
    pub fn apply(&self, rhs: &Scalar, op: ArithOp) -> Result<Scalar> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: rhs.field.to_string(),
            });
        }
        let f = &self.field;
        let (a, b) = (&self.value, &rhs.value);
        let value = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b).ok_or(Error::DivisionByZero)?,
            ArithOp::Neg => f.neg(a),
            ArithOp::Inv => f.inv(a).ok_or(Error::DivisionByZero)?,
        };
        Ok(Scalar {
            field: f.clone(),
            value,
        })
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.apply(rhs, ArithOp::Add)
    }

    pub fn sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.apply(rhs, ArithOp::Sub)
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.apply(rhs, ArithOp::Mul)
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.apply(rhs, ArithOp::Div)
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            value: self.field.neg(&self.value),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        self.apply(self, ArithOp::Inv)
    }
}

pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    a.apply(b, op)
}

/// Constant-polynomial image of a GF(p) scalar in an extension of GF(p).
pub fn embed_scalar(a: &Scalar, target: &FieldSpec) -> Result<Scalar> {
    Ok(Scalar {
        field: target.clone(),
        value: a.field.embed(&a.value, target)?,
    })
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn prime_field_addition() {
        let f = gf(5);
        let s = Scalar::parse(&f, "3").unwrap().add(&Scalar::parse(&f, "4").unwrap());
        assert_eq!(s.unwrap().to_string(), "2");
    }

    #[test]
    fn rational_addition() {
        let q = FieldSpec::rational();
        let a = Scalar::parse(&q, "1/2").unwrap();
        let b = Scalar::parse(&q, "1/3").unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "5/6");
        assert_eq!(Scalar::parse(&q, "4/-6").unwrap().to_string(), "-2/3");
    }

    #[test]
    fn gf4_x_squared() {
        let f = FieldSpec::extension(2, vec![1, 1, 1]).unwrap();
        let x = Scalar::parse(&f, "[0,1]").unwrap();
        assert_eq!(x.mul(&x).unwrap().to_string(), "[1,1]");
    }

    #[test]
    fn errors_are_explicit() {
        let f = gf(7);
        let zero = Scalar::from_i64(&f, 0);
        let one = Scalar::from_i64(&f, 1);
        assert_eq!(one.div(&zero), Err(Error::DivisionByZero));
        assert_eq!(zero.inv(), Err(Error::DivisionByZero));
        let g = gf(5);
        assert!(matches!(
            one.add(&Scalar::from_i64(&g, 1)),
            Err(Error::FieldMismatch { .. })
        ));
        assert!(Scalar::parse(&FieldSpec::rational(), "1/0").is_err());
    }

    #[test]
    fn construction_rejects_bad_fields() {
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert!(FieldSpec::prime(1).is_err());
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(
            FieldSpec::extension(2, vec![1, 0, 1]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            FieldSpec::extension(3, vec![1, 0, 2]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(FieldSpec::extension(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for p in [2, 3, 5] {
            for d in 1..=3 {
                let f = FieldSpec::extension_default(p, d).unwrap();
                assert_eq!(f.degree(), d);
                assert_eq!(f.order(), Some((p as u128).pow(d as u32)));
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let gf4 = FieldSpec::extension_default(2, 2).unwrap();
        let gf9 = FieldSpec::extension_default(3, 2).unwrap();
        let one = Scalar::from_i64(&gf(2), 1);
        assert_eq!(embed_scalar(&one, &gf4).unwrap().value(), &Elem::Poly(vec![1, 0]));
        assert!(embed_scalar(&Scalar::from_i64(&gf(2), 0), &gf4).unwrap().is_zero());
        assert_eq!(
            embed_scalar(&Scalar::from_i64(&gf(3), 2), &gf9).unwrap().to_string(),
            "[2,0]"
        );
        assert!(matches!(
            embed_scalar(&one, &gf9),
            Err(Error::CharacteristicMismatch { .. })
        ));
    }

    #[test]
    fn embedding_is_a_homomorphism_exhaustively() {
        for (p, d) in [(2u64, 2usize), (2, 3), (3, 2), (5, 2), (5, 3)] {
            let base = gf(p);
            let ext = FieldSpec::extension_default(p, d).unwrap();
            for x in 0..p {
                for y in 0..p {
                    let a = Elem::Residue(x);
                    let b = Elem::Residue(y);
                    let ea = base.embed(&a, &ext).unwrap();
                    let eb = base.embed(&b, &ext).unwrap();
                    assert_eq!(base.embed(&base.add(&a, &b), &ext).unwrap(), ext.add(&ea, &eb));
                    assert_eq!(base.embed(&base.mul(&a, &b), &ext).unwrap(), ext.mul(&ea, &eb));
                }
            }
        }
        // p = 7 through a user-supplied modulus: x^2 + 1 is irreducible since -1 is a non-residue.
        let ext = FieldSpec::extension(7, vec![1, 0, 1]).unwrap();
        let base = gf(7);
        for x in 0..7 {
            for y in 0..7 {
                let (a, b) = (Elem::Residue(x), Elem::Residue(y));
                let (ea, eb) = (base.embed(&a, &ext).unwrap(), base.embed(&b, &ext).unwrap());
                assert_eq!(base.embed(&base.mul(&a, &b), &ext).unwrap(), ext.mul(&ea, &eb));
                assert_eq!(base.embed(&base.add(&a, &b), &ext).unwrap(), ext.add(&ea, &eb));
            }
        }
    }

    #[test]
    fn every_nonzero_finite_element_is_invertible() {
        for f in [
            gf(2),
            gf(7),
            FieldSpec::extension_default(2, 3).unwrap(),
            FieldSpec::extension_default(3, 2).unwrap(),
            FieldSpec::extension_default(5, 2).unwrap(),
        ] {
            let order = f.order().unwrap();
            for i in 1..order {
                let a = f.element(i);
                let inv = f.inv(&a).unwrap();
                assert!(f.is_one(&f.mul(&a, &inv)));
                assert_eq!(f.inv(&inv).unwrap(), a);
            }
        }
    }

    #[test]
    fn frobenius_root_inverts_frobenius() {
        for f in [
            gf(5),
            FieldSpec::extension_default(2, 3).unwrap(),
            FieldSpec::extension_default(3, 2).unwrap(),
        ] {
            let p = f.characteristic();
            for i in 0..f.order().unwrap() {
                let a = f.element(i);
                for w in 0..4u32 {
                    let root = f.frobenius_root(&a, w);
                    assert_eq!(f.pow(&root, p.pow(w)), a);
                }
            }
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::rational());
        assert_eq!("GF5".parse::<FieldSpec>().unwrap(), gf(5));
        assert_eq!("gf2^2".parse::<FieldSpec>().unwrap().degree(), 2);
        assert!("gf4".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        let gf4 = FieldSpec::extension_default(2, 2).unwrap();
        assert_eq!(gf4.format_elem(&gf4.parse_elem("[1]").unwrap()), "[1,0]");
        assert_eq!(gf4.format_elem(&gf4.parse_elem("1").unwrap()), "[1,0]");
        assert!(gf4.parse_elem("[1,0,1]").is_err());
        assert_eq!(gf(5).format_elem(&gf(5).parse_elem("-1").unwrap()), "4");
    }

    #[test]
    fn random_elements_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [
            FieldSpec::rational(),
            gf(3),
            FieldSpec::extension_default(5, 3).unwrap(),
        ] {
            for _ in 0..50 {
                assert!(f.contains(&f.random_elem(&mut rng)));
            }
        }
    }
}

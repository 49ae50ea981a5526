//! Exact coefficient rings.
//!
//! Four carrier families are supported:
//!
//! * `Z/n`
//! * `F_p[t]`
//! * `Q[t]`
//! * `F_p[t]/(g)` for a monic modulus `g`, with `F_p[t]/(t^k)` as the usual case
//!
//! Elements are stored in canonical form (reduced residues, trimmed ascending
//! coefficient vectors), so two elements are equal exactly when their
//! representations are identical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::{self, CoeffField, PrimeField, Rationals};
use crate::error::{Error, Result};

/// Finite carriers above this size are never enumerated.
pub const ENUMERATION_CAP: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    /// Residue class in `Z/n`, in `0..n`.
    Residue(u64),
    /// Polynomial over `F_p`, ascending, trailing zeros stripped.
    Fp(Vec<u64>),
    /// Polynomial over `Q`, ascending, trailing zeros stripped.
    Rat(Vec<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Carrier {
    Zmod { n: u64 },
    FpPoly { p: u64, var: String },
    QPoly { var: String },
    FpQuotient { p: u64, var: String, modulus: Vec<u64> },
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_var(var: &str) -> Result<()> {
    let mut chars = var.chars();
    let ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidCarrier(format!("`{var}` is not a valid variable name")))
    }
}

impl Carrier {
    pub fn zmod(n: u64) -> Result<Self> {
        if !(2..=u32::MAX as u64).contains(&n) {
            return Err(Error::InvalidCarrier(format!("modulus {n} out of range")));
        }
        Ok(Carrier::Zmod { n })
    }

    pub fn fp_poly(p: u64, var: &str) -> Result<Self> {
        check_prime(p)?;
        check_var(var)?;
        Ok(Carrier::FpPoly { p, var: var.into() })
    }

    pub fn q_poly(var: &str) -> Result<Self> {
        check_var(var)?;
        Ok(Carrier::QPoly { var: var.into() })
    }

    /// `F_p[var]/(var^k)`.
    pub fn truncated(p: u64, var: &str, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidCarrier("truncation order must be positive".into()));
        }
        let mut modulus = vec![0; k + 1];
        modulus[k] = 1;
        Self::fp_quotient(p, var, modulus)
    }

    /// `F_p[var]/(g)` for a monic `g` of positive degree.
    pub fn fp_quotient(p: u64, var: &str, modulus: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        check_var(var)?;
        let modulus = poly::trim(&PrimeField(p), modulus.into_iter().map(|c| c % p).collect());
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::InvalidCarrier(
                "quotient modulus must be monic of positive degree".into(),
            ));
        }
        Ok(Carrier::FpQuotient { p, var: var.into(), modulus })
    }

    pub fn var(&self) -> Option<&str> {
        match self {
            Carrier::Zmod { .. } => None,
            Carrier::FpPoly { var, .. } | Carrier::QPoly { var } | Carrier::FpQuotient { var, .. } => {
                Some(var)
            }
        }
    }

    /// The characteristic; `0` for `Q[t]`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Carrier::Zmod { n } => *n,
            Carrier::FpPoly { p, .. } | Carrier::FpQuotient { p, .. } => *p,
            Carrier::QPoly { .. } => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Carrier::Zmod { .. } | Carrier::FpQuotient { .. })
    }

    /// Number of elements, when finite and representable.
    pub fn size(&self) -> Option<u64> {
        match self {
            Carrier::Zmod { n } => Some(*n),
            Carrier::FpQuotient { p, modulus, .. } => p.checked_pow(modulus.len() as u32 - 1),
            _ => None,
        }
    }

    /// Dimension of the carrier as a module over its prime ring, when finite.
    pub fn basis_len(&self) -> Option<usize> {
        match self {
            Carrier::Zmod { .. } => Some(1),
            Carrier::FpQuotient { modulus, .. } => Some(modulus.len() - 1),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Carrier::Zmod { n } => format!("Z/{n}"),
            Carrier::FpPoly { p, var } => format!("F_{p}[{var}]"),
            Carrier::QPoly { var } => format!("Q[{var}]"),
            Carrier::FpQuotient { p, var, modulus } => {
                let g = poly::format_poly(modulus, var, |c| *c == 0, |c| (false, c.to_string()));
                format!("F_{p}[{var}]/({g})")
            }
        }
    }

    pub fn contains(&self, r: &RingElement) -> bool {
        match (self, r) {
            (Carrier::Zmod { n }, RingElement::Residue(v)) => v < n,
            (Carrier::FpPoly { p, .. }, RingElement::Fp(c)) => {
                c.last() != Some(&0) && c.iter().all(|x| x < p)
            }
            (Carrier::FpQuotient { p, modulus, .. }, RingElement::Fp(c)) => {
                c.len() < modulus.len() && c.last() != Some(&0) && c.iter().all(|x| x < p)
            }
            (Carrier::QPoly { .. }, RingElement::Rat(c)) => c.last().is_none_or(|x| !x.is_zero()),
            _ => false,
        }
    }

    pub fn check(&self, r: &RingElement) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch { carrier: self.describe(), element: format!("{r:?}") })
        }
    }

    pub fn zero(&self) -> RingElement {
        match self {
            Carrier::Zmod { .. } => RingElement::Residue(0),
            Carrier::FpPoly { .. } | Carrier::FpQuotient { .. } => RingElement::Fp(Vec::new()),
            Carrier::QPoly { .. } => RingElement::Rat(Vec::new()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn is_zero(&self, r: &RingElement) -> bool {
        match r {
            RingElement::Residue(v) => *v == 0,
            RingElement::Fp(c) => c.is_empty(),
            RingElement::Rat(c) => c.is_empty(),
        }
    }

    /// The polynomial variable, if the carrier has one.
    pub fn generator(&self) -> Option<RingElement> {
        match self {
            Carrier::Zmod { .. } => None,
            Carrier::FpPoly { .. } => Some(RingElement::Fp(vec![0, 1])),
            Carrier::FpQuotient { modulus, .. } => {
                let g = RingElement::Fp(vec![0, 1]);
                Some(if modulus.len() == 2 { self.reduce_fp(vec![0, 1]) } else { g })
            }
            Carrier::QPoly { .. } => Some(RingElement::Rat(vec![BigRational::zero(), BigRational::one()])),
        }
    }

    pub fn from_int(&self, v: i64) -> RingElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> RingElement {
        match self {
            Carrier::Zmod { n } => RingElement::Residue(residue(v, *n)),
            Carrier::FpPoly { p, .. } | Carrier::FpQuotient { p, .. } => {
                self.reduce_fp(vec![residue(v, *p)])
            }
            Carrier::QPoly { .. } => {
                RingElement::Rat(poly::trim(&Rationals, vec![BigRational::from_integer(v.clone())]))
            }
        }
    }

    /// The scalar `num / den`, if `den` is invertible in the carrier.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<RingElement> {
        let bad = || Error::InvalidParameter(format!("{num}/{den} is not a scalar of {}", self.describe()));
        match self {
            Carrier::QPoly { .. } => {
                let q = poly::rational_from_ints(num, den).ok_or_else(bad)?;
                Ok(RingElement::Rat(poly::trim(&Rationals, vec![q])))
            }
            _ => {
                let d = self.from_bigint(den);
                let inv = self.invert(&d).ok_or_else(bad)?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    /// Multiplicative inverse, when it exists and can be found.
    ///
    /// Units of `Z/n`, nonzero constants of the polynomial carriers, and every
    /// unit of a quotient carrier (via the extended Euclidean algorithm) are
    /// handled.
    pub fn invert(&self, r: &RingElement) -> Option<RingElement> {
        match (self, r) {
            (Carrier::Zmod { n }, RingElement::Residue(v)) => {
                poly::mod_inverse(*v, *n).map(RingElement::Residue)
            }
            (Carrier::FpPoly { p, .. }, RingElement::Fp(c)) if c.len() == 1 => {
                poly::mod_inverse(c[0], *p).map(|v| RingElement::Fp(vec![v]))
            }
            (Carrier::QPoly { .. }, RingElement::Rat(c)) if c.len() == 1 => {
                Some(RingElement::Rat(vec![c[0].recip()]))
            }
            (Carrier::FpQuotient { p, modulus, .. }, RingElement::Fp(c)) => {
                fp_quotient_inverse(*p, modulus, c).map(RingElement::Fp)
            }
            _ => None,
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self, a, b) {
            (Carrier::Zmod { n }, RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue((x + y) % n)
            }
            (Carrier::FpPoly { p, .. } | Carrier::FpQuotient { p, .. }, RingElement::Fp(x), RingElement::Fp(y)) => {
                RingElement::Fp(poly::add(&PrimeField(*p), x, y))
            }
            (Carrier::QPoly { .. }, RingElement::Rat(x), RingElement::Rat(y)) => {
                RingElement::Rat(poly::add(&Rationals, x, y))
            }
            _ => panic!("carrier/element mismatch in add: {a:?}, {b:?} in {}", self.describe()),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (self, a) {
            (Carrier::Zmod { n }, RingElement::Residue(x)) => RingElement::Residue((n - x) % n),
            (Carrier::FpPoly { p, .. } | Carrier::FpQuotient { p, .. }, RingElement::Fp(x)) => {
                RingElement::Fp(poly::neg(&PrimeField(*p), x))
            }
            (Carrier::QPoly { .. }, RingElement::Rat(x)) => RingElement::Rat(poly::neg(&Rationals, x)),
            _ => panic!("carrier/element mismatch in neg: {a:?} in {}", self.describe()),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self, a, b) {
            (Carrier::Zmod { n }, RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (Carrier::FpPoly { p, .. }, RingElement::Fp(x), RingElement::Fp(y)) => {
                RingElement::Fp(poly::mul(&PrimeField(*p), x, y))
            }
            (Carrier::FpQuotient { p, .. }, RingElement::Fp(x), RingElement::Fp(y)) => {
                self.reduce_fp(poly::mul(&PrimeField(*p), x, y))
            }
            (Carrier::QPoly { .. }, RingElement::Rat(x), RingElement::Rat(y)) => {
                RingElement::Rat(poly::mul_rational(x, y))
            }
            _ => panic!("carrier/element mismatch in mul: {a:?}, {b:?} in {}", self.describe()),
        }
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Integer multiple `k * a`.
    pub fn scale_int(&self, k: i64, a: &RingElement) -> RingElement {
        self.mul(&self.from_int(k), a)
    }

    /// Reduce an arbitrary `F_p` coefficient vector into canonical form.
    pub(crate) fn reduce_fp(&self, c: Vec<u64>) -> RingElement {
        match self {
            Carrier::FpPoly { p, .. } => {
                RingElement::Fp(poly::trim(&PrimeField(*p), c.into_iter().map(|x| x % p).collect()))
            }
            Carrier::FpQuotient { p, modulus, .. } => {
                let f = PrimeField(*p);
                let c = poly::trim(&f, c.into_iter().map(|x| x % p).collect());
                RingElement::Fp(poly::rem(&f, &c, modulus))
            }
            _ => panic!("reduce_fp on {}", self.describe()),
        }
    }

    /// Evaluate the polynomial `a` at `image`, i.e. the ring endomorphism that
    /// fixes scalars and sends the variable to `image`. On `Z/n` this is the
    /// identity.
    pub fn compose(&self, a: &RingElement, image: &RingElement) -> RingElement {
        match (self, a, image) {
            (Carrier::Zmod { .. }, _, _) => a.clone(),
            (Carrier::FpPoly { p, .. }, RingElement::Fp(x), RingElement::Fp(y)) => {
                RingElement::Fp(poly::compose(&PrimeField(*p), x, y, &|v| v))
            }
            (Carrier::FpQuotient { p, modulus, .. }, RingElement::Fp(x), RingElement::Fp(y)) => {
                let f = PrimeField(*p);
                RingElement::Fp(poly::compose(&f, x, y, &|v| poly::rem(&f, &v, modulus)))
            }
            (Carrier::QPoly { .. }, RingElement::Rat(x), RingElement::Rat(y)) => {
                RingElement::Rat(poly::compose(&Rationals, x, y, &|v| v))
            }
            _ => panic!("carrier/element mismatch in compose"),
        }
    }

    /// Expansion `a = sum c_d * t^d` over the prime ring, as `(d, c_d)` pairs
    /// with `c_d` a nonzero constant element. On `Z/n` the single basis
    /// element is `1`.
    pub fn basis_expansion(&self, a: &RingElement) -> Vec<(usize, RingElement)> {
        match a {
            RingElement::Residue(v) => {
                if *v == 0 {
                    Vec::new()
                } else {
                    vec![(0, a.clone())]
                }
            }
            RingElement::Fp(c) => c
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(d, x)| (d, RingElement::Fp(vec![*x])))
                .collect(),
            RingElement::Rat(c) => c
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(d, x)| (d, RingElement::Rat(vec![x.clone()])))
                .collect(),
        }
    }

    /// `t^d`, reduced.
    pub fn monomial(&self, d: usize) -> RingElement {
        match self.generator() {
            None => self.one(),
            Some(t) => self.pow(&t, d as u64),
        }
    }

    /// Degree in the variable; constants (and `Z/n`) have degree 0, zero has
    /// no degree.
    pub fn degree(&self, a: &RingElement) -> Option<usize> {
        match a {
            RingElement::Residue(v) => (*v != 0).then_some(0),
            RingElement::Fp(c) => c.len().checked_sub(1),
            RingElement::Rat(c) => c.len().checked_sub(1),
        }
    }

    /// Position of `a` in the canonical enumeration of a finite carrier:
    /// residues in order, quotient elements by base-`p` digits of the
    /// ascending coefficient vector.
    pub fn index_of(&self, a: &RingElement) -> Option<usize> {
        match (self, a) {
            (Carrier::Zmod { n }, RingElement::Residue(v)) if v < n => Some(*v as usize),
            (Carrier::FpQuotient { p, modulus, .. }, RingElement::Fp(c)) if c.len() < modulus.len() => {
                let mut idx: u64 = 0;
                for x in c.iter().rev() {
                    idx = idx * p + x;
                }
                Some(idx as usize)
            }
            _ => None,
        }
    }

    pub fn element_at(&self, idx: usize) -> Option<RingElement> {
        let size = self.size()?;
        if idx as u64 >= size {
            return None;
        }
        match self {
            Carrier::Zmod { .. } => Some(RingElement::Residue(idx as u64)),
            Carrier::FpQuotient { p, modulus, .. } => {
                let mut digits = Vec::with_capacity(modulus.len() - 1);
                let mut rest = idx as u64;
                for _ in 0..modulus.len() - 1 {
                    digits.push(rest % p);
                    rest /= p;
                }
                Some(RingElement::Fp(poly::trim(&PrimeField(*p), digits)))
            }
            _ => None,
        }
    }

    /// All elements of a finite carrier in canonical order.
    pub fn elements(&self) -> Result<Vec<RingElement>> {
        let size = self.size().filter(|s| *s <= ENUMERATION_CAP).ok_or_else(|| {
            Error::CapExceeded(format!("{} cannot be enumerated", self.describe()))
        })?;
        Ok((0..size as usize).filter_map(|i| self.element_at(i)).collect())
    }

    /// A random element: uniform on finite carriers; on polynomial carriers a
    /// polynomial of degree at most `max_degree` with small coefficients.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, max_degree: usize) -> RingElement {
        match self {
            Carrier::Zmod { n } => RingElement::Residue(rng.gen_range(0..*n)),
            Carrier::FpQuotient { .. } => {
                let size = self.size().unwrap_or(u64::MAX);
                match self.element_at(rng.gen_range(0..size.min(ENUMERATION_CAP)) as usize) {
                    Some(e) => e,
                    None => self.zero(),
                }
            }
            Carrier::FpPoly { p, .. } => {
                let deg = rng.gen_range(0..=max_degree);
                let c = (0..=deg).map(|_| rng.gen_range(0..*p)).collect();
                self.reduce_fp(c)
            }
            Carrier::QPoly { .. } => {
                let deg = rng.gen_range(0..=max_degree);
                let c = (0..=deg)
                    .map(|_| {
                        let num: i64 = rng.gen_range(-4..=4);
                        let den: i64 = rng.gen_range(1..=3);
                        BigRational::new(num.into(), den.into())
                    })
                    .collect();
                RingElement::Rat(poly::trim(&Rationals, c))
            }
        }
    }

    /// Human readable, and parseable by the expression parser.
    pub fn format(&self, a: &RingElement) -> String {
        match a {
            RingElement::Residue(v) => v.to_string(),
            RingElement::Fp(c) => {
                poly::format_poly(c, self.var().unwrap_or("t"), |x| *x == 0, |x| (false, x.to_string()))
            }
            RingElement::Rat(c) => poly::format_poly(
                c,
                self.var().unwrap_or("t"),
                |x| x.is_zero(),
                poly::rational_sign_magnitude,
            ),
        }
    }

    /// True when `a` prints as a single term without a sign, so it needs no
    /// parentheses when used as a factor.
    pub fn is_simple_term(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Residue(_) => true,
            RingElement::Fp(c) => c.iter().filter(|x| **x != 0).count() <= 1,
            RingElement::Rat(c) => {
                let nz: Vec<_> = c.iter().filter(|x| !x.is_zero()).collect();
                nz.len() <= 1 && nz.iter().all(|x| x.is_positive())
            }
        }
    }

    /// Generator of the right ideal generated by `gens`, normalized so that
    /// reduction modulo it is canonical: a divisor of `n` on `Z/n`, a monic
    /// polynomial (or zero) on the polynomial carriers, and a monic divisor
    /// of the modulus on quotient carriers.
    pub(crate) fn ideal_generator(&self, gens: &[RingElement]) -> RingElement {
        match self {
            Carrier::Zmod { n } => {
                let g = gens.iter().fold(*n, |acc, r| match r {
                    RingElement::Residue(v) => acc.gcd(v),
                    _ => acc,
                });
                RingElement::Residue(g % n)
            }
            Carrier::FpPoly { p, .. } => {
                let f = PrimeField(*p);
                RingElement::Fp(gens.iter().fold(Vec::new(), |acc, r| match r {
                    RingElement::Fp(c) => poly::gcd(&f, &acc, c),
                    _ => acc,
                }))
            }
            Carrier::FpQuotient { p, modulus, .. } => {
                let f = PrimeField(*p);
                RingElement::Fp(gens.iter().fold(modulus.clone(), |acc, r| match r {
                    RingElement::Fp(c) => poly::gcd(&f, &acc, c),
                    _ => acc,
                }))
            }
            Carrier::QPoly { .. } => RingElement::Rat(gens.iter().fold(Vec::new(), |acc, r| match r {
                RingElement::Rat(c) => poly::gcd(&Rationals, &acc, c),
                _ => acc,
            })),
        }
    }

    /// Canonical representative of `a` modulo the ideal generated by `g`
    /// (as returned by [`Carrier::ideal_generator`]).
    pub(crate) fn reduce_mod(&self, a: &RingElement, g: &RingElement) -> RingElement {
        match (self, a, g) {
            (Carrier::Zmod { n }, RingElement::Residue(x), RingElement::Residue(d)) => {
                let d = if *d == 0 { *n } else { *d };
                RingElement::Residue(x % d)
            }
            (Carrier::FpPoly { p, .. } | Carrier::FpQuotient { p, .. }, RingElement::Fp(x), RingElement::Fp(m)) => {
                if m.is_empty() {
                    a.clone()
                } else {
                    RingElement::Fp(poly::rem(&PrimeField(*p), x, m))
                }
            }
            (Carrier::QPoly { .. }, RingElement::Rat(x), RingElement::Rat(m)) => {
                if m.is_empty() {
                    a.clone()
                } else {
                    RingElement::Rat(poly::rem(&Rationals, x, m))
                }
            }
            _ => panic!("carrier/element mismatch in reduce_mod"),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(Error::InvalidCarrier(format!("{p} is not a supported prime")));
    }
    Ok(())
}

fn residue(v: &BigInt, n: u64) -> u64 {
    v.mod_floor(&BigInt::from(n)).to_u64().unwrap_or(0)
}

fn fp_quotient_inverse(p: u64, modulus: &[u64], a: &[u64]) -> Option<Vec<u64>> {
    // Extended Euclid on (a, modulus), tracking the coefficient of a.
    let f = PrimeField(p);
    let (mut r0, mut r1) = (a.to_vec(), modulus.to_vec());
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![1], Vec::new());
    while !r1.is_empty() {
        let (q, r) = poly::div_rem(&f, &r0, &r1)?;
        let s = poly::sub(&f, &s0, &poly::mul(&f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(&r0[0])?;
    Some(poly::rem(&f, &poly::scale(&f, &c, &s0), modulus))
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constructors_validate() {
        assert!(Carrier::zmod(1).is_err());
        assert!(Carrier::fp_poly(4, "y").is_err());
        assert!(Carrier::q_poly("2x").is_err());
        assert!(Carrier::truncated(5, "y", 0).is_err());
        assert!(Carrier::fp_quotient(5, "t", vec![0, 1, 2]).is_err());
        assert!(Carrier::fp_quotient(5, "t", vec![3]).is_err());
    }

    #[test]
    fn truncated_arithmetic_wraps() {
        let c = Carrier::truncated(5, "y", 3).unwrap();
        let y = c.generator().unwrap();
        assert!(c.is_zero(&c.pow(&y, 3)));
        assert_eq!(c.format(&c.pow(&y, 2)), "y^2");
        assert_eq!(c.size(), Some(125));
    }

    #[test]
    fn enumeration_matches_index() {
        let c = Carrier::truncated(3, "t", 2).unwrap();
        let all = c.elements().unwrap();
        assert_eq!(all.len(), 9);
        for (i, e) in all.iter().enumerate() {
            assert!(c.contains(e));
            assert_eq!(c.index_of(e), Some(i));
        }
    }

    #[test]
    fn scalars_and_inverses() {
        let q = Carrier::q_poly("x").unwrap();
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(q.format(&half), "1/2");
        assert_eq!(q.mul(&half, &q.from_int(2)), q.one());

        let z = Carrier::zmod(4).unwrap();
        assert!(z.from_ratio(&1.into(), &2.into()).is_err());
        assert_eq!(z.from_int(-1), RingElement::Residue(3));

        let r = Carrier::truncated(5, "y", 3).unwrap();
        let u = r.add(&r.one(), &r.generator().unwrap());
        let inv = r.invert(&u).unwrap();
        assert_eq!(r.mul(&u, &inv), r.one());
        assert!(r.invert(&r.generator().unwrap()).is_none());
    }

    #[test]
    fn ideal_generators() {
        let z = Carrier::zmod(12).unwrap();
        let g = z.ideal_generator(&[RingElement::Residue(8), RingElement::Residue(6)]);
        assert_eq!(g, RingElement::Residue(2));
        assert_eq!(z.reduce_mod(&RingElement::Residue(7), &g), RingElement::Residue(1));
        let t = Carrier::truncated(2, "t", 3).unwrap();
        let g = t.ideal_generator(&[RingElement::Fp(vec![0, 1, 1])]);
        assert_eq!(g, RingElement::Fp(vec![0, 1]));
    }

    #[test]
    fn random_elements_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in [
            Carrier::zmod(6).unwrap(),
            Carrier::fp_poly(5, "y").unwrap(),
            Carrier::q_poly("x").unwrap(),
            Carrier::truncated(3, "t", 3).unwrap(),
        ] {
            for _ in 0..50 {
                let r = c.random(&mut rng, 4);
                assert!(c.contains(&r), "{r:?} not canonical in {c}");
            }
        }
    }
}

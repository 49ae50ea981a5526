//! Dense univariate polynomial arithmetic over the two coefficient fields the
//! carriers use: prime fields `F_p` and the rationals.
//!
//! Polynomials are ascending coefficient vectors with trailing zeros stripped,
//! so the zero polynomial is the empty vector and structural equality is
//! equality of polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) trait CoeffField {
    type E: Clone + PartialEq;

    fn zero(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeField(pub u64);

impl CoeffField for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        mod_inverse(*a, self.0)
    }
    fn is_zero(&self, a: &u64) -> bool {
        u64::is_multiple_of(*a, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Rationals;

impl CoeffField for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Inverse of `a` modulo `n` when `gcd(a, n) = 1`.
pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

pub(crate) fn trim<F: CoeffField>(f: &F, mut a: Vec<F::E>) -> Vec<F::E> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub(crate) fn add<F: CoeffField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub(crate) fn neg<F: CoeffField>(f: &F, a: &[F::E]) -> Vec<F::E> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub(crate) fn sub<F: CoeffField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale<F: CoeffField>(f: &F, c: &F::E, a: &[F::E]) -> Vec<F::E> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trim(f, a.iter().map(|x| f.mul(c, x)).collect())
}

pub(crate) fn mul<F: CoeffField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    trim(f, out)
}

/// Product over the rationals, computed on integer numerators after clearing
/// denominators so only the output coefficients need reducing.
pub(crate) fn mul_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 || b.len() == 1 {
        return mul(&Rationals, a, b);
    }
    let clear = |p: &[BigRational]| -> (Vec<BigInt>, BigInt) {
        let den = p.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let nums = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (nums, den)
    };
    let (an, ad) = clear(a);
    let (bn, bd) = clear(b);
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in an.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bn.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    let den = ad * bd;
    trim(&Rationals, out.into_iter().map(|n| BigRational::new(n, den.clone())).collect())
}

type QuoRem<E> = (Vec<E>, Vec<E>);

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn div_rem<F: CoeffField>(f: &F, a: &[F::E], b: &[F::E]) -> Option<QuoRem<F::E>> {
    let lead_inv = f.inv(b.last()?)?;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return Some((Vec::new(), rem));
    }
    let mut quot = vec![f.zero(); rem.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = f.mul(&rem[shift + b.len() - 1], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(&c, y);
            rem[shift + j] = f.sub(&rem[shift + j], &t);
        }
        quot[shift] = c;
    }
    rem.truncate(b.len() - 1);
    Some((trim(f, quot), trim(f, rem)))
}

pub(crate) fn rem<F: CoeffField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    div_rem(f, a, b).map(|(_, r)| r).unwrap_or_else(|| a.to_vec())
}

pub(crate) fn monic<F: CoeffField>(f: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last().and_then(|c| f.inv(c)) {
        Some(inv) => scale(f, &inv, a),
        None => a.to_vec(),
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub(crate) fn gcd<F: CoeffField>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let (mut x, mut y) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// `a(image)` by Horner's rule, reducing every intermediate through `reduce`.
pub(crate) fn compose<F: CoeffField>(
    f: &F,
    a: &[F::E],
    image: &[F::E],
    reduce: &dyn Fn(Vec<F::E>) -> Vec<F::E>,
) -> Vec<F::E> {
    let mut acc: Vec<F::E> = Vec::new();
    for c in a.iter().rev() {
        acc = mul(f, &acc, image);
        acc = add(f, &acc, std::slice::from_ref(c));
        acc = reduce(acc);
    }
    acc
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn rational_from_ints(num: &BigInt, den: &BigInt) -> Option<BigRational> {
    if den.is_zero() {
        None
    } else {
        Some(BigRational::new(num.clone(), den.clone()))
    }
}

/// Render an ascending coefficient list in `var`, highest degree first.
/// `coeff` renders a coefficient magnitude and reports whether it was negative.
pub(crate) fn format_poly<C>(
    coeffs: &[C],
    var: &str,
    is_zero: impl Fn(&C) -> bool,
    coeff: impl Fn(&C) -> (bool, String),
) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if is_zero(c) {
            continue;
        }
        let (negative, mag) = coeff(c);
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            d => format!("{var}^{d}"),
        };
        let body = match (mag.as_str(), mono.is_empty()) {
            (_, true) => mag,
            ("1", false) => mono,
            (_, false) => format!("{mag}*{mono}"),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn rational_sign_magnitude(c: &BigRational) -> (bool, String) {
    (c.is_negative(), format_rational(&c.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_prime() {
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(0, 7), None);
    }

    #[test]
    fn division_round_trips() {
        let f = PrimeField(5);
        let a = vec![1, 2, 3, 4];
        let b = vec![2, 0, 1];
        let (q, r) = div_rem(&f, &a, &b).unwrap();
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), trim(&f, a));
        assert!(r.len() < b.len());
    }

    #[test]
    fn rational_product_matches_schoolbook() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = vec![q(1, 2), q(-2, 3), q(0, 1), q(5, 4)];
        let b = vec![q(3, 1), q(1, 6), q(-7, 10)];
        assert_eq!(mul_rational(&a, &b), mul(&Rationals, &a, &b));
        let c = vec![q(1, 2), q(1, 1)];
        let d = vec![q(-1, 2), q(1, 1)];
        assert_eq!(mul_rational(&c, &d), vec![q(-1, 4), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn gcd_is_monic() {
        let f = PrimeField(3);
        // (t + 1)(t + 2) and (t + 1)
        let a = mul(&f, &[1, 1], &[2, 1]);
        assert_eq!(gcd(&f, &a, &[2, 2]), vec![1, 1]);
        assert_eq!(gcd(&f, &[], &[]), Vec::<u64>::new());
    }

    #[test]
    fn formatting() {
        let f = PrimeField(5);
        let s = format_poly(&[4, 0, 3], "y", |c| f.is_zero(c), |c| (false, c.to_string()));
        assert_eq!(s, "3*y^2 + 4");
        let q: Vec<BigRational> = vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::from_integer(1.into()),
        ];
        let s = format_poly(&q, "x", |c| c.is_zero(), rational_sign_magnitude);
        assert_eq!(s, "x - 1/2");
    }
}

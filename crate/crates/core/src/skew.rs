//! Skew Ore polynomial rings `A = R(x; sigma, delta)`.
//!
//! Elements are kept in left normal form `r_0 + r_1 x + ... + r_k x^k`.
//! Products are normalized with the commutation rule
//!
//! ```text
//! x r = sigma(r) x + sigma(delta(r)) x^2 + ... + sigma(delta^{n-1}(r)) x^n
//! ```
//!
//! where `n` is the nilpotency index of `r`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;

use crate::error::{Error, Result};
use crate::inverse::FMemo;
use crate::ring::{Carrier, RingElement, TwistedRing};

/// Entries kept in the commutation memo before it is flushed.
const PUSH_MEMO_LIMIT: usize = 1 << 16;

/// Degree of a skew polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree of a product of polynomials of these degrees, when no
    /// cancellation happens.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

pub struct OreAlgebra {
    twist: TwistedRing,
    var: String,
    /// `r -> [sigma(r), sigma(delta(r)), ...]`, the coefficients of `x r`.
    push_memo: Mutex<HashMap<RingElement, Arc<[RingElement]>>>,
    basis_memo: Mutex<HashMap<usize, Arc<[RingElement]>>>,
    f_memo: FMemo,
}

impl fmt::Debug for OreAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OreAlgebra").field("twist", &self.twist).field("var", &self.var).finish()
    }
}

impl OreAlgebra {
    pub fn new(twist: TwistedRing, var: &str) -> Result<Arc<Self>> {
        let ok = var.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidParameter(format!("`{var}` is not a valid variable name")));
        }
        if twist.carrier().var() == Some(var) {
            return Err(Error::InvalidParameter(format!(
                "Ore variable `{var}` clashes with the carrier variable"
            )));
        }
        Ok(Arc::new(OreAlgebra { twist, var: var.into(), push_memo: Mutex::new(HashMap::new()), basis_memo: Mutex::new(HashMap::new()), f_memo: FMemo::default() }))
    }

    pub(crate) fn f_memo(&self) -> &FMemo {
        &self.f_memo
    }

    pub fn twist(&self) -> &TwistedRing {
        &self.twist
    }

    pub fn carrier(&self) -> &Carrier {
        self.twist.carrier()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn describe(&self) -> String {
        format!("{}({}; {})", self.carrier(), self.var, self.twist_summary())
    }

    fn twist_summary(&self) -> String {
        let full = self.twist.to_string();
        let carrier = self.carrier().to_string();
        full.strip_prefix(&carrier).unwrap_or(&full).trim_start_matches(", ").to_string()
    }

    /// Coefficients of `x r`: entry `i` is the coefficient of `x^{i+1}`.
    pub fn push_coefficients(&self, r: &RingElement) -> Result<Arc<[RingElement]>> {
        if let Some(hit) = self.push_memo.lock().expect("memo poisoned").get(r) {
            return Ok(hit.clone());
        }
        let coeffs = match self.push_by_basis(r) {
            Ok(coeffs) => coeffs,
            Err(_) => self.push_direct(r)?,
        };
        let mut memo = self.push_memo.lock().expect("memo poisoned");
        if memo.len() >= PUSH_MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(r.clone(), coeffs.clone());
        Ok(coeffs)
    }

    fn push_direct(&self, r: &RingElement) -> Result<Arc<[RingElement]>> {
        let orbit = self.twist.delta_orbit(r)?;
        Ok(orbit.iter().map(|d| self.twist.apply_sigma(d)).collect())
    }

    /// `x r` is additive in `r` and fixes prime-ring scalars, so it is
    /// assembled from the memoized pushes of `t^d`.
    fn push_by_basis(&self, r: &RingElement) -> Result<Arc<[RingElement]>> {
        let c = self.carrier();
        let mut acc: Vec<RingElement> = Vec::new();
        for (d, k) in c.basis_expansion(r) {
            let hit = self.basis_memo.lock().expect("memo poisoned").get(&d).cloned();
            let basis = match hit {
                Some(b) => b,
                None => {
                    let b = self.push_direct(&c.monomial(d))?;
                    self.basis_memo.lock().expect("memo poisoned").insert(d, b.clone());
                    b
                }
            };
            if acc.len() < basis.len() {
                acc.resize(basis.len(), c.zero());
            }
            for (slot, v) in acc.iter_mut().zip(basis.iter()) {
                *slot = c.add(slot, &c.mul(&k, v));
            }
        }
        while acc.last().is_some_and(|v| c.is_zero(v)) {
            acc.pop();
        }
        Ok(acc.into())
    }

    /// Normal form of `x r`.
    pub fn push_x_through(self: &Arc<Self>, r: &RingElement) -> Result<SkewPoly> {
        self.twist.check_element(r)?;
        let coeffs = self.push_coefficients(r)?;
        let c = self.carrier();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| !c.is_zero(v))
            .map(|(i, v)| (i + 1, v.clone()))
            .collect();
        Ok(SkewPoly { alg: self.clone(), terms })
    }

    pub fn zero(self: &Arc<Self>) -> SkewPoly {
        SkewPoly { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(self: &Arc<Self>) -> SkewPoly {
        self.constant(self.carrier().one())
    }

    pub fn x(self: &Arc<Self>) -> SkewPoly {
        self.monomial(self.carrier().one(), 1)
    }

    pub fn constant(self: &Arc<Self>, r: RingElement) -> SkewPoly {
        self.monomial(r, 0)
    }

    /// `r x^k`.
    pub fn monomial(self: &Arc<Self>, r: RingElement, k: usize) -> SkewPoly {
        let mut terms = BTreeMap::new();
        if !self.carrier().is_zero(&r) {
            terms.insert(k, r);
        }
        SkewPoly { alg: self.clone(), terms }
    }

    /// `sum coeffs[i] x^i`.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<RingElement>) -> Result<SkewPoly> {
        let c = self.carrier();
        let mut terms = BTreeMap::new();
        for (i, r) in coeffs.into_iter().enumerate() {
            c.check(&r)?;
            if !c.is_zero(&r) {
                terms.insert(i, r);
            }
        }
        Ok(SkewPoly { alg: self.clone(), terms })
    }

    /// Random element with x-degree at most `x_degree` and coefficients of
    /// carrier degree at most `coeff_degree`.
    pub fn random<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R, coeff_degree: usize, x_degree: usize) -> SkewPoly {
        let c = self.carrier();
        let top = rng.gen_range(0..=x_degree);
        let coeffs = (0..=top).map(|_| c.random(rng, coeff_degree)).collect();
        self.from_coeffs(coeffs).expect("random coefficients are canonical")
    }

    pub fn same_algebra(self: &Arc<Self>, other: &Arc<OreAlgebra>) -> bool {
        Arc::ptr_eq(self, other) || (self.twist == other.twist && self.var == other.var)
    }
}

/// An element of `R(x; sigma, delta)` in left normal form.
#[derive(Clone)]
pub struct SkewPoly {
    alg: Arc<OreAlgebra>,
    terms: BTreeMap<usize, RingElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.alg.same_algebra(&other.alg)
    }
}

impl Eq for SkewPoly {}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

impl SkewPoly {
    pub fn algebra(&self) -> &Arc<OreAlgebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::NegInfinity,
            Some(d) => Degree::Finite(*d),
        }
    }

    pub fn leading_coeff(&self) -> Result<RingElement> {
        self.terms.values().next_back().cloned().ok_or(Error::ZeroPolynomial)
    }

    /// Coefficient of `x^i` (zero when absent).
    pub fn coeff(&self, i: usize) -> RingElement {
        self.terms.get(&i).cloned().unwrap_or_else(|| self.alg.carrier().zero())
    }

    /// Nonzero terms `(degree, coefficient)` in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &RingElement)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Dense coefficient list `r_0, ..., r_deg`.
    pub fn to_coeffs(&self) -> Vec<RingElement> {
        match self.degree() {
            Degree::NegInfinity => Vec::new(),
            Degree::Finite(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    fn same(&self, other: &SkewPoly) -> Result<()> {
        if self.alg.same_algebra(&other.alg) {
            Ok(())
        } else {
            Err(Error::TwistMismatch)
        }
    }

    fn with_terms(&self, terms: BTreeMap<usize, RingElement>) -> SkewPoly {
        SkewPoly { alg: self.alg.clone(), terms }
    }

    fn add_term(c: &Carrier, terms: &mut BTreeMap<usize, RingElement>, k: usize, r: &RingElement) {
        if c.is_zero(r) {
            return;
        }
        match terms.get_mut(&k) {
            None => {
                terms.insert(k, r.clone());
            }
            Some(v) => {
                let sum = c.add(v, r);
                if c.is_zero(&sum) {
                    terms.remove(&k);
                } else {
                    *v = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same(other)?;
        let c = self.alg.carrier();
        let mut terms = self.terms.clone();
        for (k, r) in &other.terms {
            Self::add_term(c, &mut terms, *k, r);
        }
        Ok(self.with_terms(terms))
    }

    pub fn neg(&self) -> SkewPoly {
        let c = self.alg.carrier();
        self.with_terms(self.terms.iter().map(|(k, r)| (*k, c.neg(r))).collect())
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(&other.neg())
    }

    /// `r * self`, i.e. left multiplication by a constant.
    pub fn scale_left(&self, r: &RingElement) -> SkewPoly {
        let c = self.alg.carrier();
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            Self::add_term(c, &mut terms, *k, &c.mul(r, v));
        }
        self.with_terms(terms)
    }

    /// `x * self`.
    pub fn mul_x_left(&self) -> Result<SkewPoly> {
        let c = self.alg.carrier();
        let mut terms = BTreeMap::new();
        for (j, r) in &self.terms {
            let pushed = self.alg.push_coefficients(r)?;
            for (i, v) in pushed.iter().enumerate() {
                Self::add_term(c, &mut terms, i + 1 + j, v);
            }
        }
        Ok(self.with_terms(terms))
    }

    /// `self * x^k`.
    pub fn shift(&self, k: usize) -> SkewPoly {
        self.with_terms(self.terms.iter().map(|(d, r)| (d + k, r.clone())).collect())
    }

    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same(other)?;
        let c = self.alg.carrier();
        let mut terms = BTreeMap::new();
        let Degree::Finite(top) = self.degree() else {
            return Ok(self.with_terms(terms));
        };
        // x^i * other, built up one power at a time
        let mut power = other.clone();
        for i in 0..=top {
            if i > 0 {
                power = power.mul_x_left()?;
            }
            if let Some(f) = self.terms.get(&i) {
                for (k, v) in &power.terms {
                    Self::add_term(c, &mut terms, *k, &c.mul(f, v));
                }
            }
        }
        Ok(self.with_terms(terms))
    }

    pub fn pow(&self, e: u64) -> Result<SkewPoly> {
        let mut acc = self.alg.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The element `a_p` with `x^p a = a_p x^p`.
    ///
    /// One step sends `a` to `a'` with `x a = a' x`; since every term of `x a`
    /// carries at least one factor `x` on the right, `a'` is `x a` with all
    /// degrees lowered by one. The identity is checked by multiplication
    /// before returning.
    pub fn ore_swap(&self, p: usize) -> Result<SkewPoly> {
        let mut a = self.clone();
        for _ in 0..p {
            let xa = a.mul_x_left()?;
            if xa.terms.contains_key(&0) {
                return Err(Error::Postcondition("x*a has a constant term".into()));
            }
            a = a.with_terms(xa.terms.into_iter().map(|(k, r)| (k - 1, r)).collect());
        }
        let xp = self.alg.x().pow(p as u64)?;
        let lhs = xp.mul(self)?;
        let rhs = a.mul(&xp)?;
        if lhs != rhs {
            return Err(Error::Postcondition(format!(
                "x^{p} * ({self}) = {lhs} but a_p * x^{p} = {rhs}"
            )));
        }
        Ok(a)
    }
}

/// Render `coeff * mono` for a term of an expression in `mono`, reporting
/// whether a leading minus sign was pulled out.
pub(crate) fn format_term(c: &Carrier, r: &RingElement, mono: &str) -> (bool, String) {
    let (negative, mag) = if c.is_simple_term(r) {
        (false, c.format(r))
    } else {
        let n = c.neg(r);
        if c.is_simple_term(&n) {
            (true, c.format(&n))
        } else if mono.is_empty() {
            (false, c.format(r))
        } else {
            (false, format!("({})", c.format(r)))
        }
    };
    let body = match (mono.is_empty(), mag.as_str()) {
        (true, _) => mag,
        (false, "1") => mono.to_string(),
        (false, _) => format!("{mag}*{mono}"),
    };
    (negative, body)
}

pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (negative, body) in terms {
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

pub(crate) fn power_name(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.alg.carrier();
        let var = self.alg.var();
        let terms = self.terms.iter().map(|(k, r)| format_term(c, r, &power_name(var, *k)));
        f.write_str(&join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DeltaSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quantum() -> Arc<OreAlgebra> {
        let c = Carrier::fp_poly(5, "y").unwrap();
        let t = TwistedRing::new(c, Some(RingElement::Fp(vec![0, 2])), None, DeltaSpec::Zero).unwrap();
        OreAlgebra::new(t, "x").unwrap()
    }

    fn jordan() -> Arc<OreAlgebra> {
        let c = Carrier::q_poly("x").unwrap();
        let one = c.one();
        let t = TwistedRing::new(c, None, None, DeltaSpec::Derivation(one)).unwrap();
        OreAlgebra::new(t, "y").unwrap()
    }

    fn gen(a: &Arc<OreAlgebra>) -> SkewPoly {
        a.constant(a.carrier().generator().unwrap())
    }

    #[test]
    fn quantum_plane_commutation() {
        let a = quantum();
        let y = gen(&a);
        assert_eq!(a.push_x_through(&a.carrier().generator().unwrap()).unwrap().to_string(), "2*y*x");
        let y2 = y.mul(&y).unwrap();
        assert_eq!(a.x().mul(&y2).unwrap().to_string(), "4*y^2*x");
        assert_eq!(y.ore_swap(1).unwrap().to_string(), "2*y");
    }

    #[test]
    fn jordan_plane_commutation() {
        let a = jordan();
        let x = gen(&a);
        let y = a.x();
        assert_eq!(y.mul(&x).unwrap().to_string(), "x*y + y^2");
        let x2 = x.mul(&x).unwrap();
        // (xy + y^2)x = x(xy + y^2) + y(xy + y^2) = x^2y + xy^2 + (xy + y^2)y + y^3
        assert_eq!(y.mul(&x2).unwrap().to_string(), "x^2*y + 2*x*y^2 + 2*y^3");
    }

    #[test]
    fn zero_and_degree() {
        let a = jordan();
        let y = a.x();
        let z = y.add(&y.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert_eq!(z.leading_coeff(), Err(Error::ZeroPolynomial));
        assert_eq!(z.to_string(), "0");
        assert_eq!(y.mul(&a.one()).unwrap(), y);
        let f = a.from_coeffs(vec![a.carrier().one(), a.carrier().zero(), a.carrier().from_int(3)]).unwrap();
        assert_eq!(f.degree(), Degree::Finite(2));
        assert_eq!(f.neg().neg(), f);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = jordan();
        let b = quantum();
        assert_eq!(a.x().mul(&b.x()), Err(Error::TwistMismatch));
    }

    #[test]
    fn ore_swap_postcondition_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for a in [quantum(), jordan()] {
            for _ in 0..10 {
                let f = a.random(&mut rng, 3, 3);
                for p in 0..4 {
                    let fp = f.ore_swap(p).unwrap();
                    let xp = a.x().pow(p as u64).unwrap();
                    assert_eq!(xp.mul(&f).unwrap(), fp.mul(&xp).unwrap());
                }
            }
        }
    }

    #[test]
    fn printing_negative_and_compound_coefficients() {
        let a = jordan();
        let c = a.carrier();
        let x = c.generator().unwrap();
        let f = a
            .from_coeffs(vec![c.sub(&x, &c.one()), c.neg(&x), c.add(&x, &c.one())])
            .unwrap();
        assert_eq!(f.to_string(), "x - 1 - x*y + (x + 1)*y^2");
    }
}

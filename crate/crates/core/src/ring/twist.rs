//! Twist data `(sigma, delta)` over a carrier.
//!
//! `sigma` is a unital endomorphism determined by the image of the carrier
//! variable and must come with an inverse. `delta` is usually a
//! `sigma`-derivation determined by `delta(t)` and extended by additivity and
//! `delta(rs) = sigma(r) delta(s) + delta(r) s`. A plain additive map given on
//! a basis is also accepted so that law violations can be exhibited.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::carrier::{Carrier, RingElement};
use crate::error::{Error, Result};

pub const DEFAULT_NILPOTENCY_CAP: usize = 64;

/// Finite carriers up to this size are validated on all pairs.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

/// Number of random pairs used on carriers that are not checked exhaustively.
pub const SAMPLE_COUNT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeltaSpec {
    Zero,
    /// A `sigma`-derivation with the given value on the carrier variable.
    Derivation(RingElement),
    /// An additive map given by its values on the basis `1, t, t^2, ...` of a
    /// finite carrier. On `Z/n` the basis is `{1}`.
    Additive(Vec<RingElement>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedRing {
    carrier: Carrier,
    sigma: Option<RingElement>,
    sigma_inv: Option<RingElement>,
    delta: DeltaSpec,
    nilpotency_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub exhaustive: bool,
    /// Number of elements (exhaustive) or sampled pairs (randomized).
    pub checked: usize,
    pub laws: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.laws.iter().filter(|l| !l.passed)
    }
}

impl TwistedRing {
    /// `sigma = id`, `delta = 0`.
    pub fn untwisted(carrier: Carrier) -> Self {
        TwistedRing {
            carrier,
            sigma: None,
            sigma_inv: None,
            delta: DeltaSpec::Zero,
            nilpotency_cap: DEFAULT_NILPOTENCY_CAP,
        }
    }

    /// Build and check a twist.
    ///
    /// `sigma` is the image of the carrier variable (`None` for the identity).
    /// `sigma_inv` is the image of the variable under the inverse; when omitted
    /// it is derived for affine images `a*t + b` with `a` a unit, or found by
    /// search on finite carriers.
    pub fn new(
        carrier: Carrier,
        sigma: Option<RingElement>,
        sigma_inv: Option<RingElement>,
        delta: DeltaSpec,
    ) -> Result<Self> {
        let mut t = TwistedRing::untwisted(carrier);
        t.set_sigma(sigma, sigma_inv)?;
        t.set_delta(delta)?;
        Ok(t)
    }

    pub fn with_nilpotency_cap(mut self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidParameter("nilpotency cap must be positive".into()));
        }
        self.nilpotency_cap = cap;
        Ok(self)
    }

    fn set_sigma(&mut self, sigma: Option<RingElement>, sigma_inv: Option<RingElement>) -> Result<()> {
        let c = &self.carrier;
        let Some(gen) = c.generator() else {
            if sigma.is_some() || sigma_inv.is_some() {
                return Err(Error::IllDefinedTwist(format!(
                    "{c} has no variable; its only automorphism is the identity"
                )));
            }
            return Ok(());
        };
        let Some(image) = sigma else {
            if let Some(inv) = &sigma_inv {
                c.check(inv)?;
                if *inv != gen {
                    return Err(Error::NotInvertible("identity sigma with a non-identity inverse".into()));
                }
            }
            return Ok(());
        };
        c.check(&image)?;
        self.check_descends("sigma", &image)?;
        let inv = match sigma_inv {
            Some(inv) => {
                c.check(&inv)?;
                inv
            }
            None => self.find_inverse(&image)?,
        };
        if c.compose(&inv, &image) != gen || c.compose(&image, &inv) != gen {
            return Err(Error::NotInvertible(format!(
                "sigma({v}) = {} and sigma'({v}) = {} are not mutually inverse",
                c.format(&image),
                c.format(&inv),
                v = c.var().unwrap_or("t"),
            )));
        }
        if image == gen {
            self.sigma = None;
            self.sigma_inv = None;
        } else {
            self.sigma = Some(image);
            self.sigma_inv = Some(inv);
        }
        Ok(())
    }

    fn find_inverse(&self, image: &RingElement) -> Result<RingElement> {
        let c = &self.carrier;
        let gen = c.generator().expect("carrier has a variable");
        let expansion = c.basis_expansion(image);
        let linear = expansion.iter().all(|(d, _)| *d <= 1);
        if linear {
            let a = expansion.iter().find(|(d, _)| *d == 1).map(|(_, a)| a.clone());
            let b = expansion.iter().find(|(d, _)| *d == 0).map(|(_, b)| b.clone()).unwrap_or(c.zero());
            if let Some(a_inv) = a.as_ref().and_then(|a| c.invert(a)) {
                return Ok(c.mul(&a_inv, &c.sub(&gen, &b)));
            }
        }
        if c.is_finite() {
            if let Ok(all) = c.elements() {
                if let Some(s) = all.into_iter().find(|s| c.compose(s, image) == gen) {
                    return Ok(s);
                }
            }
        }
        Err(Error::NotInvertible(format!(
            "no inverse found for sigma({}) = {}",
            c.var().unwrap_or("t"),
            c.format(image)
        )))
    }

    fn set_delta(&mut self, delta: DeltaSpec) -> Result<()> {
        let c = self.carrier.clone();
        match &delta {
            DeltaSpec::Zero => {}
            DeltaSpec::Derivation(d) => {
                c.check(d)?;
                if c.generator().is_none() && !c.is_zero(d) {
                    return Err(Error::IllDefinedTwist(format!(
                        "{c} has no variable; a sigma-derivation on it is zero"
                    )));
                }
            }
            DeltaSpec::Additive(images) => {
                let n = c.basis_len().ok_or_else(|| {
                    Error::IllDefinedTwist("basis-defined delta needs a finite carrier".into())
                })?;
                if images.len() != n {
                    return Err(Error::IllDefinedTwist(format!(
                        "basis-defined delta needs {n} images, got {}",
                        images.len()
                    )));
                }
                for r in images {
                    c.check(r)?;
                }
            }
        }
        self.delta = delta;
        if let DeltaSpec::Derivation(d) = &self.delta {
            if c.is_zero(d) {
                self.delta = DeltaSpec::Zero;
            } else {
                let d = d.clone();
                self.check_descends("delta", &d)?;
            }
        }
        Ok(())
    }

    /// On a quotient carrier `F_p[t]/(g)` a map defined on the variable only
    /// descends when it sends `g` into `(g)`. The value of the map at `g` is
    /// computed by Horner's rule inside the quotient, which is exactly the
    /// reduction of the value on `F_p[t]`.
    fn check_descends(&self, name: &str, image: &RingElement) -> Result<()> {
        let c = &self.carrier;
        let Carrier::FpQuotient { modulus, .. } = c else {
            return Ok(());
        };
        let t = c.generator().expect("quotient has a variable");
        let value = match name {
            "sigma" => {
                let mut acc = c.zero();
                for coeff in modulus.iter().rev() {
                    acc = c.add(&c.mul(&acc, image), &c.from_int(*coeff as i64));
                }
                acc
            }
            _ => {
                let sigma_t = self.apply_sigma(&t);
                let mut g = c.zero();
                let mut dg = c.zero();
                for coeff in modulus.iter().rev() {
                    dg = c.add(&c.mul(&sigma_t, &dg), &c.mul(image, &g));
                    g = c.add(&c.mul(&t, &g), &c.from_int(*coeff as i64));
                }
                dg
            }
        };
        if c.is_zero(&value) {
            Ok(())
        } else {
            Err(Error::IllDefinedTwist(format!(
                "{name} does not preserve the ideal of {c}: {name}(modulus) = {}",
                c.format(&value)
            )))
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn nilpotency_cap(&self) -> usize {
        self.nilpotency_cap
    }

    pub fn delta_spec(&self) -> &DeltaSpec {
        &self.delta
    }

    /// Image of the variable under `sigma`; `None` when `sigma = id`.
    pub fn sigma_image(&self) -> Option<&RingElement> {
        self.sigma.as_ref()
    }

    pub fn sigma_inv_image(&self) -> Option<&RingElement> {
        self.sigma_inv.as_ref()
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma.is_none()
    }

    pub fn delta_is_zero(&self) -> bool {
        matches!(self.delta, DeltaSpec::Zero)
    }

    pub fn apply_sigma(&self, r: &RingElement) -> RingElement {
        match &self.sigma {
            None => r.clone(),
            Some(img) => self.carrier.compose(r, img),
        }
    }

    pub fn apply_sigma_prime(&self, r: &RingElement) -> RingElement {
        match &self.sigma_inv {
            None => r.clone(),
            Some(img) => self.carrier.compose(r, img),
        }
    }

    pub fn apply_sigma_pow(&self, r: &RingElement, n: usize) -> RingElement {
        (0..n).fold(r.clone(), |acc, _| self.apply_sigma(&acc))
    }

    pub fn apply_delta(&self, r: &RingElement) -> RingElement {
        let c = &self.carrier;
        match &self.delta {
            DeltaSpec::Zero => c.zero(),
            DeltaSpec::Derivation(d) => {
                // r = c0 + t*(c1 + t*(c2 + ...)); delta(t*g) = sigma(t) delta(g) + delta(t) g
                let Some(t) = c.generator() else {
                    return c.zero();
                };
                let sigma_t = self.apply_sigma(&t);
                let terms = c.basis_expansion(r);
                let Some(top) = terms.last().map(|(deg, _)| *deg) else {
                    return c.zero();
                };
                let mut coeffs = vec![c.zero(); top + 1];
                for (deg, k) in terms {
                    coeffs[deg] = k;
                }
                let mut g = c.zero();
                let mut dg = c.zero();
                for k in coeffs.iter().rev() {
                    dg = c.add(&c.mul(&sigma_t, &dg), &c.mul(d, &g));
                    g = c.add(&c.mul(&t, &g), k);
                }
                dg
            }
            DeltaSpec::Additive(images) => c
                .basis_expansion(r)
                .into_iter()
                .fold(c.zero(), |acc, (deg, k)| c.add(&acc, &c.mul(&k, &images[deg]))),
        }
    }

    pub fn apply_delta_pow(&self, r: &RingElement, n: usize) -> RingElement {
        (0..n).fold(r.clone(), |acc, _| self.apply_delta(&acc))
    }

    /// `delta'(r) = -delta(sigma'(r))`.
    pub fn apply_delta_prime(&self, r: &RingElement) -> RingElement {
        if self.delta_is_zero() {
            return self.carrier.zero();
        }
        self.carrier.neg(&self.apply_delta(&self.apply_sigma_prime(r)))
    }

    pub fn check_element(&self, r: &RingElement) -> Result<()> {
        self.carrier.check(r)
    }

    /// Smallest `n >= 1` with `delta^n(r) = 0`.
    pub fn nilpotency_index(&self, r: &RingElement) -> Result<usize> {
        self.carrier.check(r)?;
        let mut cur = r.clone();
        for n in 1..=self.nilpotency_cap {
            cur = self.apply_delta(&cur);
            if self.carrier.is_zero(&cur) {
                return Ok(n);
            }
        }
        Err(Error::NotLocallyNilpotent { element: self.carrier.format(r), cap: self.nilpotency_cap })
    }

    /// The sequence `r, delta(r), delta^2(r), ...` up to (excluding) the first zero.
    pub fn delta_orbit(&self, r: &RingElement) -> Result<Vec<RingElement>> {
        let n = self.nilpotency_index(r)?;
        let mut out = Vec::with_capacity(n);
        let mut cur = r.clone();
        for _ in 0..n {
            let next = self.apply_delta(&cur);
            out.push(cur);
            cur = next;
        }
        Ok(out)
    }

    /// Check every twist law with the default seed.
    pub fn validate_twist(&self) -> ValidationReport {
        self.validate_twist_seeded(0)
    }

    /// Check every twist law. Finite carriers with at most
    /// [`EXHAUSTIVE_LIMIT`] elements are checked on all elements and pairs;
    /// otherwise [`SAMPLE_COUNT`] seeded random pairs are used.
    pub fn validate_twist_seeded(&self, seed: u64) -> ValidationReport {
        let c = &self.carrier;
        let exhaustive = c.size().is_some_and(|s| s <= EXHAUSTIVE_LIMIT);
        let (elements, pairs): (Vec<RingElement>, Option<Vec<(RingElement, RingElement)>>) = if exhaustive {
            (c.elements().unwrap_or_default(), None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<_> = (0..SAMPLE_COUNT)
                .map(|_| (c.random(&mut rng, 4), c.random(&mut rng, 4)))
                .collect();
            let elements = pairs.iter().map(|(r, _)| r.clone()).collect();
            (elements, Some(pairs))
        };

        let fmt = |r: &RingElement| c.format(r);
        let mut laws = Vec::new();
        let one = c.one();
        let unital = self.apply_sigma(&one) == one;
        laws.push(LawCheck {
            name: "sigma_unital",
            passed: unital,
            witness: (!unital).then(|| format!("sigma(1) = {}", fmt(&self.apply_sigma(&one)))),
        });

        let sig: Vec<RingElement> = elements.par_iter().map(|r| self.apply_sigma(r)).collect();
        let del: Vec<RingElement> = elements.par_iter().map(|r| self.apply_delta(r)).collect();

        let inverse = elements.iter().zip(&sig).find(|(r, s)| {
            self.apply_sigma_prime(s) != **r || self.apply_sigma(&self.apply_sigma_prime(r)) != **r
        });
        laws.push(LawCheck {
            name: "sigma_inverse",
            passed: inverse.is_none(),
            witness: inverse.map(|(r, _)| format!("r = {}", fmt(r))),
        });

        // Pair laws: (name, failing pair).
        // On enumerated carriers sigma and delta are read off the tables.
        let sigma_of = |x: &RingElement| match c.index_of(x).filter(|_| exhaustive) {
            Some(i) => sig[i].clone(),
            None => self.apply_sigma(x),
        };
        let delta_of = |x: &RingElement| match c.index_of(x).filter(|_| exhaustive) {
            Some(i) => del[i].clone(),
            None => self.apply_delta(x),
        };
        let pair_check = |r: &RingElement, s: &RingElement, sr: &RingElement, ss: &RingElement, dr: &RingElement, ds: &RingElement| {
            let sum = c.add(r, s);
            let prod = c.mul(r, s);
            let sig_add = sigma_of(&sum) == c.add(sr, ss);
            let sig_mul = sigma_of(&prod) == c.mul(sr, ss);
            let del_add = delta_of(&sum) == c.add(dr, ds);
            let del_mul = delta_of(&prod) == c.add(&c.mul(sr, ds), &c.mul(dr, s));
            [sig_add, sig_mul, del_add, del_mul]
        };
        const PAIR_LAWS: [&str; 4] =
            ["sigma_additive", "sigma_multiplicative", "delta_additive", "delta_product_rule"];

        let failures: Vec<Option<(usize, usize)>> = match &pairs {
            None => {
                let n = elements.len();
                let per_row: Vec<[Option<usize>; 4]> = (0..n)
                    .into_par_iter()
                    .map(|i| {
                        let mut first = [None; 4];
                        for j in 0..n {
                            let ok = pair_check(&elements[i], &elements[j], &sig[i], &sig[j], &del[i], &del[j]);
                            for (law, passed) in ok.iter().enumerate() {
                                if !passed && first[law].is_none() {
                                    first[law] = Some(j);
                                }
                            }
                        }
                        first
                    })
                    .collect();
                (0..4)
                    .map(|law| per_row.iter().enumerate().find_map(|(i, row)| row[law].map(|j| (i, j))))
                    .collect()
            }
            Some(pairs) => {
                let mut first = [None; 4];
                for (idx, (r, s)) in pairs.iter().enumerate() {
                    let (sr, ss) = (self.apply_sigma(r), self.apply_sigma(s));
                    let (dr, ds) = (self.apply_delta(r), self.apply_delta(s));
                    let ok = pair_check(r, s, &sr, &ss, &dr, &ds);
                    for (law, passed) in ok.iter().enumerate() {
                        if !passed && first[law].is_none() {
                            first[law] = Some((idx, idx));
                        }
                    }
                }
                first.to_vec()
            }
        };
        for (law, fail) in PAIR_LAWS.iter().zip(failures) {
            let witness = fail.map(|(i, j)| {
                let (r, s) = match &pairs {
                    None => (&elements[i], &elements[j]),
                    Some(p) => (&p[i].0, &p[i].1),
                };
                format!("r = {}, s = {}", fmt(r), fmt(s))
            });
            laws.push(LawCheck { name: law, passed: witness.is_none(), witness });
        }

        let stuck = elements.iter().find(|r| self.nilpotency_index(r).is_err());
        laws.push(LawCheck {
            name: "delta_locally_nilpotent",
            passed: stuck.is_none(),
            witness: stuck.map(|r| format!("r = {}, cap = {}", fmt(r), self.nilpotency_cap)),
        });

        ValidationReport {
            exhaustive,
            checked: pairs.as_ref().map_or(elements.len(), Vec::len),
            laws,
        }
    }
}

impl fmt::Display for TwistedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.carrier;
        let v = c.var().unwrap_or("t");
        write!(f, "{c}")?;
        match &self.sigma {
            None => write!(f, ", sigma = id")?,
            Some(img) => write!(f, ", sigma({v}) = {}", c.format(img))?,
        }
        match &self.delta {
            DeltaSpec::Zero => write!(f, ", delta = 0"),
            DeltaSpec::Derivation(d) => write!(f, ", delta({v}) = {}", c.format(d)),
            DeltaSpec::Additive(images) => {
                let list: Vec<_> = images.iter().map(|r| c.format(r)).collect();
                write!(f, ", delta on basis = [{}]", list.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(c: &[u64]) -> RingElement {
        RingElement::Fp(c.to_vec())
    }

    fn q(c: &[i64]) -> RingElement {
        let carrier = Carrier::q_poly("x").unwrap();
        let mut acc = carrier.zero();
        for (d, v) in c.iter().enumerate() {
            acc = carrier.add(&acc, &carrier.mul(&carrier.from_int(*v), &carrier.monomial(d)));
        }
        acc
    }

    fn quantum() -> TwistedRing {
        TwistedRing::new(Carrier::fp_poly(5, "y").unwrap(), Some(fp(&[0, 2])), None, DeltaSpec::Zero).unwrap()
    }

    fn jordan() -> TwistedRing {
        TwistedRing::new(Carrier::q_poly("x").unwrap(), None, None, DeltaSpec::Derivation(q(&[1]))).unwrap()
    }

    #[test]
    fn sigma_on_quantum_plane() {
        let t = quantum();
        assert_eq!(t.apply_sigma(&fp(&[0, 0, 1])), fp(&[0, 0, 4]));
        assert_eq!(t.apply_sigma_prime(&fp(&[0, 1])), fp(&[0, 3]));
        assert!(t.apply_delta_prime(&fp(&[0, 1])).is_empty_fp());
    }

    trait EmptyFp {
        fn is_empty_fp(&self) -> bool;
    }
    impl EmptyFp for RingElement {
        fn is_empty_fp(&self) -> bool {
            matches!(self, RingElement::Fp(c) if c.is_empty())
        }
    }

    #[test]
    fn delta_on_jordan_carrier() {
        let t = jordan();
        assert_eq!(t.apply_delta(&q(&[0, 0, 1])), q(&[0, 2]));
        assert_eq!(t.apply_delta(&q(&[1])), q(&[]));
        assert_eq!(t.apply_delta_prime(&q(&[0, 1])), q(&[-1]));
        assert_eq!(t.nilpotency_index(&q(&[0, 1])).unwrap(), 2);
        assert_eq!(t.nilpotency_index(&q(&[0, 0, 0, 1])).unwrap(), 4);
        assert_eq!(t.nilpotency_index(&q(&[])).unwrap(), 1);
    }

    #[test]
    fn nilpotency_cap_is_enforced() {
        let t = jordan().with_nilpotency_cap(3).unwrap();
        assert!(matches!(
            t.nilpotency_index(&q(&[0, 0, 0, 1])),
            Err(Error::NotLocallyNilpotent { cap: 3, .. })
        ));
        // the additive map 1 -> 1 on Z/4 is never nilpotent
        let z = Carrier::zmod(4).unwrap();
        let t = TwistedRing::new(z, None, None, DeltaSpec::Additive(vec![RingElement::Residue(1)])).unwrap();
        assert!(t.nilpotency_index(&RingElement::Residue(1)).is_err());
    }

    #[test]
    fn validation_passes_on_good_twists() {
        assert!(quantum().validate_twist().all_passed());
        assert!(jordan().validate_twist().all_passed());
        let z4 = TwistedRing::untwisted(Carrier::zmod(4).unwrap());
        let report = z4.validate_twist();
        assert!(report.exhaustive && report.all_passed());
        let trunc = Carrier::truncated(3, "x", 3).unwrap();
        let t = TwistedRing::new(trunc, None, None, DeltaSpec::Derivation(fp(&[1]))).unwrap();
        let report = t.validate_twist();
        assert!(report.exhaustive && report.all_passed(), "{report:?}");
    }

    #[test]
    fn validation_reports_product_rule_witness() {
        let z = Carrier::zmod(4).unwrap();
        let t = TwistedRing::new(z, None, None, DeltaSpec::Additive(vec![RingElement::Residue(1)])).unwrap();
        let report = t.validate_twist();
        let failed: Vec<_> = report.failures().map(|l| l.name).collect();
        assert!(failed.contains(&"delta_product_rule"));
        assert!(failed.contains(&"delta_locally_nilpotent"));
        let w = report.laws.iter().find(|l| l.name == "delta_product_rule").unwrap();
        assert!(w.witness.as_deref().unwrap().starts_with("r = "));
    }

    #[test]
    fn quotient_twists_must_descend() {
        // delta(x) = 1 on F_5[x]/(x^3): delta(x^3) = 3x^2 is not in (x^3)
        let c = Carrier::truncated(5, "x", 3).unwrap();
        assert!(matches!(
            TwistedRing::new(c.clone(), None, None, DeltaSpec::Derivation(fp(&[1]))),
            Err(Error::IllDefinedTwist(_))
        ));
        // sigma(x) = x + 1 does not preserve (x^3)
        assert!(matches!(
            TwistedRing::new(c, Some(fp(&[1, 1])), None, DeltaSpec::Zero),
            Err(Error::IllDefinedTwist(_))
        ));
        // but swaps the two points of F_2[t]/(t^2 + t)
        let c = Carrier::fp_quotient(2, "t", vec![0, 1, 1]).unwrap();
        let t = TwistedRing::new(c, Some(fp(&[1, 1])), None, DeltaSpec::Zero).unwrap();
        assert_eq!(t.sigma_inv_image(), Some(&fp(&[1, 1])));
        assert!(t.validate_twist().all_passed());
    }

    #[test]
    fn sigma_requires_inverse() {
        let c = Carrier::fp_poly(5, "y").unwrap();
        assert!(TwistedRing::new(c.clone(), Some(fp(&[0, 0, 1])), None, DeltaSpec::Zero).is_err());
        assert!(TwistedRing::new(c.clone(), Some(fp(&[0, 2])), Some(fp(&[0, 2])), DeltaSpec::Zero).is_err());
        assert!(TwistedRing::new(c, Some(fp(&[0])), None, DeltaSpec::Zero).is_err());
        let z = Carrier::zmod(4).unwrap();
        assert!(TwistedRing::new(z, None, None, DeltaSpec::Derivation(RingElement::Residue(1))).is_err());
    }
}

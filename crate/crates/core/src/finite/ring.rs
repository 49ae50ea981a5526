use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::{Carrier, RingElement, TwistedRing};

/// Largest finite carrier that is enumerated.
pub const RING_CAP: usize = 4096;

/// A finite twisted ring with every element enumerated and the twist maps
/// tabulated by index.
pub struct FiniteRing {
    twist: TwistedRing,
    elements: Vec<RingElement>,
    /// Prime ring characteristic used for scalar digits (`n` on `Z/n`).
    radix: u64,
    basis_len: usize,
    sigma: Vec<u32>,
    sigma_inv: Vec<u32>,
    delta: Vec<u32>,
    delta_prime: Vec<u32>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.twist)
    }
}

impl FiniteRing {
    pub fn new(twist: TwistedRing) -> Result<Self> {
        let c = twist.carrier().clone();
        let size = c
            .size()
            .ok_or_else(|| Error::InvalidCarrier(format!("{c} is not finite")))?;
        if size > RING_CAP as u64 {
            return Err(Error::CapExceeded(format!("{c} has {size} elements, cap is {RING_CAP}")));
        }
        let elements = c.elements()?;
        let idx = |r: &RingElement| c.index_of(r).expect("twist maps stay in the carrier") as u32;
        let sigma = elements.iter().map(|r| idx(&twist.apply_sigma(r))).collect();
        let sigma_inv = elements.iter().map(|r| idx(&twist.apply_sigma_prime(r))).collect();
        let delta = elements.iter().map(|r| idx(&twist.apply_delta(r))).collect();
        let delta_prime = elements.iter().map(|r| idx(&twist.apply_delta_prime(r))).collect();
        let radix = c.characteristic();
        let basis_len = c.basis_len().unwrap_or(1);
        Ok(FiniteRing { twist, elements, radix, basis_len, sigma, sigma_inv, delta, delta_prime })
    }

    pub fn twist(&self) -> &TwistedRing {
        &self.twist
    }

    pub fn carrier(&self) -> &Carrier {
        self.twist.carrier()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &RingElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn index(&self, r: &RingElement) -> Result<usize> {
        self.carrier().check(r)?;
        Ok(self.carrier().index_of(r).expect("checked element"))
    }

    pub fn format(&self, i: usize) -> String {
        self.carrier().format(&self.elements[i])
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.index(&self.carrier().one()).expect("one is canonical")
    }

    /// Scalar digits of element `i`: its coefficients on `1, t, t^2, ...`
    /// (a single residue on `Z/n`).
    pub fn digits(&self, i: usize) -> impl Iterator<Item = u64> + '_ {
        let mut rest = i as u64;
        (0..self.basis_len).map(move |_| {
            let d = rest % self.radix;
            rest /= self.radix;
            d
        })
    }

    pub fn basis_len(&self) -> usize {
        self.basis_len
    }

    pub fn radix(&self) -> u64 {
        self.radix
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let c = self.carrier();
        c.index_of(&c.add(&self.elements[a], &self.elements[b])).expect("closed")
    }

    pub fn neg(&self, a: usize) -> usize {
        let c = self.carrier();
        c.index_of(&c.neg(&self.elements[a])).expect("closed")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.carrier();
        c.index_of(&c.mul(&self.elements[a], &self.elements[b])).expect("closed")
    }

    pub fn sigma(&self, a: usize) -> usize {
        self.sigma[a] as usize
    }

    pub fn sigma_inv(&self, a: usize) -> usize {
        self.sigma_inv[a] as usize
    }

    pub fn delta(&self, a: usize) -> usize {
        self.delta[a] as usize
    }

    pub fn delta_prime(&self, a: usize) -> usize {
        self.delta_prime[a] as usize
    }

    /// Set of all ring elements, used for ideals.
    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size());
        s.insert_range(..);
        s
    }

    /// Elements of an ideal, rendered in canonical order.
    pub fn format_set(&self, set: &FixedBitSet) -> String {
        let parts: Vec<String> = set.ones().map(|i| self.format(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// A short description of an ideal: its generator when it is principal
    /// with a canonical generator, otherwise its element list.
    pub fn describe_ideal(&self, set: &FixedBitSet) -> String {
        let members: Vec<RingElement> = set.ones().map(|i| self.elements[i].clone()).collect();
        let g = self.carrier().ideal_generator(&members);
        let principal = self.principal_ideal(&g);
        if principal == *set {
            format!("({})", self.carrier().format(&g))
        } else {
            self.format_set(set)
        }
    }

    /// `gR` as an element set.
    pub fn principal_ideal(&self, g: &RingElement) -> FixedBitSet {
        let c = self.carrier();
        let mut s = FixedBitSet::with_capacity(self.size());
        for r in &self.elements {
            s.insert(c.index_of(&c.mul(g, r)).expect("closed"));
        }
        s
    }

    /// Check that `set` is a right ideal.
    pub fn is_right_ideal(&self, set: &FixedBitSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| set.contains(self.add(a, b)))
                && (0..self.size()).all(|r| set.contains(self.mul(a, r)))
        })
    }

    /// `aRb` contained in `P` forces `a` or `b` into `P`.
    ///
    /// Returns a witness pair `(a, b)` when `P` is not prime, including the
    /// case `P = R`.
    pub fn prime_witness(&self, set: &FixedBitSet) -> Option<(usize, usize)> {
        if set.count_ones(..) == self.size() {
            return Some((self.one(), self.one()));
        }
        let outside: Vec<usize> = (0..self.size()).filter(|i| !set.contains(*i)).collect();
        for &a in &outside {
            let ar: Vec<usize> = (0..self.size()).map(|r| self.mul(a, r)).collect();
            for &b in &outside {
                if ar.iter().all(|&x| set.contains(self.mul(x, b))) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_prime_ideal(&self, set: &FixedBitSet) -> bool {
        self.prime_witness(set).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DeltaSpec;

    #[test]
    fn tables_agree_with_twist() {
        let c = Carrier::truncated(3, "t", 2).unwrap();
        let t = TwistedRing::new(c, Some(RingElement::Fp(vec![0, 2])), None, DeltaSpec::Zero).unwrap();
        let r = FiniteRing::new(t).unwrap();
        assert_eq!(r.size(), 9);
        for i in 0..9 {
            assert_eq!(r.sigma_inv(r.sigma(i)), i);
            let digits: Vec<u64> = r.digits(i).collect();
            assert_eq!(r.carrier().element_at(i).unwrap(), RingElement::Fp(
                digits.iter().rev().skip_while(|d| **d == 0).collect::<Vec<_>>().into_iter().rev().copied().collect()
            ));
        }
    }

    #[test]
    fn primes_of_z4() {
        let r = FiniteRing::new(TwistedRing::untwisted(Carrier::zmod(4).unwrap())).unwrap();
        let two = r.principal_ideal(&RingElement::Residue(2));
        assert_eq!(two.ones().collect::<Vec<_>>(), vec![0, 2]);
        assert!(r.is_right_ideal(&two));
        assert!(r.is_prime_ideal(&two));
        let zero = r.principal_ideal(&RingElement::Residue(0));
        assert_eq!(r.prime_witness(&zero), Some((2, 2)));
        assert_eq!(r.describe_ideal(&two), "(2)");
        assert!(!r.is_prime_ideal(&r.full_set()));
    }
}

#![allow(dead_code)]

//! Fixtures and brute-force oracles shared by the integration tests.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewore::catalog::{default_preset, finite_preset, PRESETS};
use skewore::config::parse_fixture;
use skewore::{Carrier, FiniteModule, FiniteRing, OreAlgebra, RingElement, TwistedRing};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every preset with default parameters and over its finite carrier.
pub fn catalog_algebras() -> Vec<(String, Arc<OreAlgebra>)> {
    let mut out = Vec::new();
    for (name, _) in PRESETS {
        out.push((name.to_string(), default_preset(name).unwrap().algebra().unwrap()));
        out.push((format!("{name} (finite)"), finite_preset(name).unwrap().algebra().unwrap()));
    }
    out
}

pub fn twist_from(text: &str) -> TwistedRing {
    parse_fixture(text).unwrap().algebra.unwrap().twist
}

/// Finite twisted rings used for module fixtures.
pub fn finite_rings() -> Vec<(String, TwistedRing)> {
    let mut out: Vec<(String, TwistedRing)> = [4u64, 6, 8, 9]
        .iter()
        .map(|n| (format!("Z/{n}"), TwistedRing::untwisted(Carrier::zmod(*n).unwrap())))
        .collect();
    for name in ["jordan_plane", "q_zero_bc", "trimmed_double_extension"] {
        out.push((format!("{name} (finite)"), finite_preset(name).unwrap().twist));
    }
    let fixtures = [
        ("F_2[t]/(t^2 + t), sigma(t) = t + 1", "[ring]\ncarrier = quotient\np = 2\nmodulus = t^2 + t\n[twist]\nsigma = t + 1\n"),
        ("F_2[t]/(t^2), delta(t) = 1", "[ring]\ncarrier = truncated\np = 2\nk = 2\n[twist]\ndelta = 1\n"),
        ("F_3[t]/(t^2), sigma(t) = 2t", "[ring]\ncarrier = truncated\np = 3\nk = 2\n[twist]\nsigma = 2*t\n"),
        ("F_4 with Frobenius", "[ring]\ncarrier = quotient\np = 2\nmodulus = t^2 + t + 1\n[twist]\nsigma = t + 1\n"),
        ("F_2[t]/(t^3), sigma(t) = t + t^2", "[ring]\ncarrier = truncated\np = 2\nk = 3\n[twist]\nsigma = t + t^2\n"),
    ];
    for (name, text) in fixtures {
        out.push((name.to_string(), twist_from(text)));
    }
    out
}

/// Modules of size at most `cap` over the fixture rings: every cyclic
/// quotient and the direct sums of two of them.
pub fn module_fixtures(cap: usize) -> Vec<(String, FiniteModule)> {
    let mut out = Vec::new();
    for (name, twist) in finite_rings() {
        let ring = Arc::new(FiniteRing::new(twist).unwrap());
        let mut cyclic: Vec<(String, FiniteModule)> = Vec::new();
        let mut seen = BTreeSet::new();
        for g in ring.elements() {
            let m = FiniteModule::cyclic_quotient(ring.clone(), std::slice::from_ref(g)).unwrap();
            if m.size() <= 1 || !seen.insert(Table::from_module(&m).act) {
                continue;
            }
            cyclic.push((format!("{name}: R/({})", ring.carrier().format(g)), m));
        }
        for i in 0..cyclic.len() {
            for j in i..cyclic.len() {
                if cyclic[i].1.size() * cyclic[j].1.size() <= cap {
                    let sum = FiniteModule::direct_sum(&cyclic[i].1, &cyclic[j].1).unwrap();
                    let label = format!("{} + {}", cyclic[i].0, cyclic[j].0.split(": ").nth(1).unwrap());
                    out.push((label, sum));
                }
            }
        }
        out.extend(cyclic.into_iter().filter(|(_, m)| m.size() <= cap));
    }
    out
}

/// A finite right module by its addition and action tables, with `0` the
/// zero element.
#[derive(Debug, Clone)]
pub struct Table {
    pub n: usize,
    pub ring_size: usize,
    pub add: Vec<usize>,
    pub act: Vec<usize>,
}

pub type Sub = BTreeSet<usize>;

impl Table {
    pub fn from_module(m: &FiniteModule) -> Self {
        let n = m.size();
        let rs = m.ring().size();
        let add = (0..n * n).map(|i| m.add(i / n, i % n)).collect();
        let act = (0..n * rs).map(|i| m.act(i / rs, i % rs)).collect();
        Table { n, ring_size: rs, add, act }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn act(&self, m: usize, r: usize) -> usize {
        self.act[m * self.ring_size + r]
    }

    /// Smallest submodule containing `gens`, by saturation.
    pub fn closure(&self, gens: &[usize]) -> Sub {
        let mut set: Sub = gens.iter().copied().collect();
        set.insert(0);
        loop {
            let mut next = set.clone();
            for &a in &set {
                for &b in &set {
                    next.insert(self.add(a, b));
                }
                for r in 0..self.ring_size {
                    next.insert(self.act(a, r));
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    /// All submodules, as sums of cyclic submodules.
    pub fn lattice(&self) -> BTreeSet<Sub> {
        let cyclic: BTreeSet<Sub> = (0..self.n).map(|m| self.closure(&[m])).collect();
        let mut all: BTreeSet<Sub> = BTreeSet::new();
        let mut queue = vec![self.closure(&[])];
        while let Some(s) = queue.pop() {
            if !all.insert(s.clone()) {
                continue;
            }
            for c in &cyclic {
                let sum: Sub = s.iter().flat_map(|&a| c.iter().map(move |&b| (a, b))).map(|(a, b)| self.add(a, b)).collect();
                if !all.contains(&sum) {
                    queue.push(sum);
                }
            }
        }
        all
    }

    /// `M/N` with each coset represented by its least element.
    pub fn quotient(&self, n: &Sub) -> Table {
        let rep = |a: usize| n.iter().map(|&s| self.add(a, s)).min().unwrap();
        let reps: Vec<usize> = (0..self.n).filter(|&a| rep(a) == a).collect();
        let index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let k = reps.len();
        let add = (0..k * k).map(|i| index[&rep(self.add(reps[i / k], reps[i % k]))]).collect();
        let act = (0..k * self.ring_size)
            .map(|i| index[&rep(self.act(reps[i / self.ring_size], i % self.ring_size))])
            .collect();
        Table { n: k, ring_size: self.ring_size, add, act }
    }

    /// Whether `M/N` satisfies the two compatibility laws for the maps
    /// given as tables on ring indices: `(sigma ok, delta ok)`.
    pub fn quotient_compatible(&self, n: &Sub, sigma: &[usize], delta: &[usize]) -> (bool, bool) {
        let mut ok = (true, true);
        for m in 0..self.n {
            for r in 0..self.ring_size {
                let kills = |s: usize| n.contains(&self.act(m, s));
                if kills(r) != kills(sigma[r]) {
                    ok.0 = false;
                }
                if kills(r) && !kills(delta[r]) {
                    ok.1 = false;
                }
            }
        }
        ok
    }

    pub fn completely_compatible(&self, sigma: &[usize], delta: &[usize]) -> bool {
        self.lattice().iter().all(|n| self.quotient_compatible(n, sigma, delta) == (true, true))
    }
}

pub struct Maps {
    pub sigma: Vec<usize>,
    pub delta: Vec<usize>,
    pub sigma_prime: Vec<usize>,
    pub delta_prime: Vec<usize>,
}

/// The twist maps on ring indices, computed from the carrier operations.
pub fn maps(ring: &FiniteRing) -> Maps {
    let t = ring.twist();
    let idx = |r: RingElement| ring.index(&r).unwrap();
    let all = ring.elements();
    Maps {
        sigma: all.iter().map(|r| idx(t.apply_sigma(r))).collect(),
        delta: all.iter().map(|r| idx(t.apply_delta(r))).collect(),
        sigma_prime: all.iter().map(|r| idx(t.apply_sigma_prime(r))).collect(),
        delta_prime: all.iter().map(|r| idx(t.apply_delta_prime(r))).collect(),
    }
}

/// Plain skew polynomials `R[x; sigma]` as coefficient vectors, for `delta = 0`.
pub struct PlainSkew {
    pub twist: TwistedRing,
}

impl PlainSkew {
    fn c(&self) -> &Carrier {
        self.twist.carrier()
    }

    pub fn mul(&self, a: &[RingElement], b: &[RingElement]) -> Vec<RingElement> {
        let c = self.c();
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![c.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                let term = c.mul(ai, &self.twist.apply_sigma_pow(bj, i));
                out[i + j] = c.add(&out[i + j], &term);
            }
        }
        self.trim(out)
    }

    pub fn trim(&self, mut v: Vec<RingElement>) -> Vec<RingElement> {
        while v.last().is_some_and(|r| self.c().is_zero(r)) {
            v.pop();
        }
        v
    }

    /// `m x^-k . r x^j = m sigma'^k(r) x^-(k - j)` for `j <= k`, zero otherwise.
    pub fn act(&self, m: &BTreeMap<usize, RingElement>, f: &[RingElement]) -> BTreeMap<usize, RingElement> {
        let c = self.c();
        let mut out: BTreeMap<usize, RingElement> = BTreeMap::new();
        for (&k, mk) in m {
            for (j, rj) in f.iter().enumerate() {
                if j > k {
                    break;
                }
                let mut r = rj.clone();
                for _ in 0..k {
                    r = self.twist.apply_sigma_prime(&r);
                }
                let e = out.entry(k - j).or_insert_with(|| c.zero());
                *e = c.add(e, &c.mul(mk, &r));
            }
        }
        out.retain(|_, v| !c.is_zero(v));
        out
    }
}

pub fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

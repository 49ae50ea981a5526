use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::module::{FiniteModule, Lattice, Scope, Submodule};
use crate::error::{Error, Result};

/// Pairs `(m, r)` are checked exhaustively up to this many.
pub const EXHAUSTIVE_BUDGET: usize = 1 << 20;

/// Number of seeded samples beyond the budget.
pub const SAMPLE_COUNT: usize = 1 << 16;

/// Which twist the checks use: `(sigma, delta)` or `(sigma', delta')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Law {
    Sigma,
    Delta,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::Sigma => "sigma",
            Law::Delta => "delta",
        })
    }
}

/// A failing pair `(m, r)` in the quotient `M/N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub quotient_by: Submodule,
    pub m: usize,
    pub r: usize,
}

impl Violation {
    pub fn describe(&self, module: &FiniteModule) -> String {
        let ring = module.ring();
        let over = if self.quotient_by.is_zero() {
            String::new()
        } else {
            format!(" in M/N, N = {}", self.quotient_by.describe(module))
        };
        format!(
            "{} fails at m = {}, r = {}{over}",
            self.law,
            module.format(self.m),
            ring.format(self.r)
        )
    }
}

#[derive(Debug, Clone)]
pub struct CompatReport {
    pub direction: Direction,
    pub exhaustive: bool,
    pub quotients_checked: usize,
    pub sigma: Option<Violation>,
    pub delta: Option<Violation>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.sigma.is_none() && self.delta.is_none()
    }

    pub fn sigma_passed(&self) -> bool {
        self.sigma.is_none()
    }

    pub fn delta_passed(&self) -> bool {
        self.delta.is_none()
    }

    pub fn witness(&self) -> Option<&Violation> {
        self.sigma.as_ref().or(self.delta.as_ref())
    }
}

fn twist_maps(module: &FiniteModule, dir: Direction) -> (impl Fn(usize) -> usize + Sync + '_, impl Fn(usize) -> usize + Sync + '_) {
    let ring = module.ring();
    let sigma = move |r: usize| match dir {
        Direction::Forward => ring.sigma(r),
        Direction::Inverse => ring.sigma_inv(r),
    };
    let delta = move |r: usize| match dir {
        Direction::Forward => ring.delta(r),
        Direction::Inverse => ring.delta_prime(r),
    };
    (sigma, delta)
}

/// The pairs `(m, r)` to check, with a flag telling whether they are all of them.
fn pairs(module: &FiniteModule, seed: u64) -> (Vec<(usize, usize)>, bool) {
    let (n, size) = (module.ring().size(), module.size());
    if n * size <= EXHAUSTIVE_BUDGET {
        ((0..size).flat_map(|m| (0..n).map(move |r| (m, r))).collect(), true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ((0..SAMPLE_COUNT).map(|_| (rng.gen_range(0..size), rng.gen_range(0..n))).collect(), false)
    }
}

/// Check that `M/N` is `sigma`- and `delta`-compatible.
///
/// `mr = 0` in `M/N` means `mr` lies in `N`. Witnesses are the smallest
/// failing pairs in `(m, r)` order.
pub fn check_quotient(module: &FiniteModule, n: &Submodule, dir: Direction, seed: u64) -> CompatReport {
    let (sigma, delta) = twist_maps(module, dir);
    let (pairs, exhaustive) = pairs(module, seed);
    let kills = |m: usize, r: usize| n.contains(module.act(m, r));
    let sigma_bad = pairs
        .par_iter()
        .find_first(|&&(m, r)| kills(m, r) != kills(m, sigma(r)))
        .map(|&(m, r)| Violation { law: Law::Sigma, quotient_by: n.clone(), m, r });
    let delta_bad = pairs
        .par_iter()
        .find_first(|&&(m, r)| kills(m, r) && !kills(m, delta(r)))
        .map(|&(m, r)| Violation { law: Law::Delta, quotient_by: n.clone(), m, r });
    CompatReport { direction: dir, exhaustive, quotients_checked: 1, sigma: sigma_bad, delta: delta_bad }
}

pub fn is_sigma_compatible(module: &FiniteModule) -> CompatReport {
    let mut report = is_compatible(module);
    report.delta = None;
    report
}

pub fn is_delta_compatible(module: &FiniteModule) -> CompatReport {
    let mut report = is_compatible(module);
    report.sigma = None;
    report
}

pub fn is_compatible(module: &FiniteModule) -> CompatReport {
    check_quotient(module, &module.zero_submodule(), Direction::Forward, 0)
}

/// Compatibility of `M/N` for every `R`-submodule `N`, both laws at every
/// quotient. The first violation of each law in lattice order is reported.
pub fn check_completely(module: &FiniteModule, lattice: &Lattice, dir: Direction) -> CompatReport {
    debug_assert_eq!(lattice.scope, Scope::Ring);
    let reports: Vec<CompatReport> = lattice
        .members
        .par_iter()
        .map(|n| check_quotient(module, n, dir, 0))
        .collect();
    CompatReport {
        direction: dir,
        exhaustive: reports.iter().all(|r| r.exhaustive),
        quotients_checked: reports.len(),
        sigma: reports.iter().find_map(|r| r.sigma.clone()),
        delta: reports.iter().find_map(|r| r.delta.clone()),
    }
}

pub fn is_completely_compatible(module: &FiniteModule) -> Result<CompatReport> {
    let lattice = module.all_submodules(Scope::Ring)?;
    Ok(check_completely(module, &lattice, Direction::Forward))
}

/// `ann(M/N) = {r : M r in N}` as a set of ring indices.
pub fn annihilator_of_quotient(module: &FiniteModule, n: &Submodule) -> FixedBitSet {
    let ring = module.ring();
    let mut set = FixedBitSet::with_capacity(ring.size());
    let kills: Vec<usize> = (0..ring.size())
        .into_par_iter()
        .filter(|&r| (0..module.size()).all(|m| n.contains(module.act(m, r))))
        .collect();
    for r in kills {
        set.insert(r);
    }
    set
}

/// `ann(N) = {r : N r = 0}`.
pub fn annihilator_of_submodule(module: &FiniteModule, n: &Submodule) -> FixedBitSet {
    let ring = module.ring();
    let members: Vec<usize> = n.elements().collect();
    let mut set = FixedBitSet::with_capacity(ring.size());
    for r in 0..ring.size() {
        if members.iter().all(|&m| module.act(m, r) == 0) {
            set.insert(r);
        }
    }
    set
}

pub fn annihilator(module: &FiniteModule) -> FixedBitSet {
    annihilator_of_quotient(module, &module.zero_submodule())
}

/// A nonzero submodule `N' <= N` with `ann(N') != ann(N)`, if any.
pub fn prime_witness<'a>(module: &FiniteModule, lattice: &'a Lattice, n: &Submodule) -> Option<&'a Submodule> {
    let ann = annihilator_of_submodule(module, n);
    lattice
        .iter()
        .filter(|s| s.is_subset(n))
        .filter(|s| !s.is_zero())
        .find(|s| annihilator_of_submodule(module, s) != ann)
}

/// A proper submodule `Q >= N` with `ann(M/Q) != ann(M/N)`, if any.
pub fn coprime_witness<'a>(module: &FiniteModule, lattice: &'a Lattice, n: &Submodule) -> Option<&'a Submodule> {
    let ann = annihilator_of_quotient(module, n);
    lattice
        .iter()
        .filter(|q| n.is_subset(q))
        .filter(|q| !q.is_full(module))
        .find(|q| annihilator_of_quotient(module, q) != ann)
}

#[derive(Debug, Clone)]
pub struct ModuleProperty {
    pub holds: bool,
    pub witness: Option<Submodule>,
}

pub fn is_prime_module(module: &FiniteModule, lattice: &Lattice) -> Result<ModuleProperty> {
    if module.size() == 1 {
        return Err(Error::ZeroModule);
    }
    let w = prime_witness(module, lattice, &module.full_submodule()).cloned();
    Ok(ModuleProperty { holds: w.is_none(), witness: w })
}

pub fn is_coprime_module(module: &FiniteModule, lattice: &Lattice) -> Result<ModuleProperty> {
    if module.size() == 1 {
        return Err(Error::ZeroModule);
    }
    let w = coprime_witness(module, lattice, &module.zero_submodule()).cloned();
    Ok(ModuleProperty { holds: w.is_none(), witness: w })
}

/// A maximal submodule containing the proper submodule `n`.
///
/// The largest proper member above `n` is maximal, since anything strictly
/// between it and `M` would be larger.
pub fn maximal_over<'a>(module: &FiniteModule, lattice: &'a Lattice, n: &Submodule) -> Option<&'a Submodule> {
    if n.is_full(module) {
        return None;
    }
    lattice.iter().filter(|s| n.is_subset(s) && !s.is_full(module)).max()
}

/// Every proper submodule sits inside a maximal one.
pub fn is_bass(module: &FiniteModule, lattice: &Lattice) -> bool {
    let maximal = lattice.maximal(module);
    lattice
        .iter()
        .filter(|n| !n.is_full(module))
        .all(|n| maximal_over(module, lattice, n).is_some_and(|m| maximal.contains(&m)))
}

/// Outcome of the derived closure checks on `M/N`.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub exhaustive: bool,
    pub tuples_checked: usize,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tuples `(m, a, b)` are checked exhaustively up to this many.
pub const CLOSURE_BUDGET: usize = 1 << 22;

/// Check the closure properties that complete compatibility implies for a
/// submodule `N`:
///
/// 1. `ma in N` implies `m sigma^i(a), m delta^j(a) in N`;
/// 2. `mab in N` implies `m sigma(delta^j(a)) delta(b)`,
///    `m sigma^i(delta(a)) delta^j(b)`, `m a delta^j(b)` and
///    `m delta^j(a) b` lie in `N`;
/// 3. `mab in N` or `m sigma(a) b in N` implies `m delta(a) b in N`.
///
/// Powers run over a full period of `sigma` and up to the nilpotency of
/// `delta`. Fails with a precondition error unless `M` is completely
/// compatible.
pub fn check_derived_closure(module: &FiniteModule, n: &Submodule, seed: u64) -> Result<ClosureReport> {
    let lattice = module.all_submodules(Scope::Ring)?;
    let cc = check_completely(module, &lattice, Direction::Forward);
    if let Some(v) = cc.witness() {
        return Err(Error::Precondition(format!("module is not completely compatible: {}", v.describe(module))));
    }
    if !lattice.contains(n) {
        return Err(Error::Precondition("N is not a submodule".into()));
    }
    let ring = module.ring();
    let size = ring.size();
    let in_n = |m: usize, r: usize| n.contains(module.act(m, r));

    // sigma^i and delta^j of every element, i over one period, j until zero
    let sigma_pows: Vec<Vec<usize>> = (0..size)
        .map(|a| {
            let mut out = vec![a];
            let mut cur = ring.sigma(a);
            while cur != a && out.len() < size {
                out.push(cur);
                cur = ring.sigma(cur);
            }
            out
        })
        .collect();
    let delta_pows: Vec<Vec<usize>> = (0..size)
        .map(|a| {
            let mut out = vec![a];
            let mut cur = a;
            while cur != 0 && out.len() <= ring.twist().nilpotency_cap() {
                cur = ring.delta(cur);
                out.push(cur);
            }
            out
        })
        .collect();

    let triples = module.size() * size * size;
    let exhaustive = triples <= CLOSURE_BUDGET;
    let tuples: Vec<(usize, usize, usize)> = if exhaustive {
        (0..module.size())
            .flat_map(|m| (0..size).flat_map(move |a| (0..size).map(move |b| (m, a, b))))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLE_COUNT)
            .map(|_| (rng.gen_range(0..module.size()), rng.gen_range(0..size), rng.gen_range(0..size)))
            .collect()
    };

    let fmt = |m: usize, a: usize, b: usize| {
        format!("m = {}, a = {}, b = {}", module.format(m), ring.format(a), ring.format(b))
    };
    let failures: Vec<String> = tuples
        .par_iter()
        .filter_map(|&(m, a, b)| {
            let ma = in_n(m, a);
            if b == 0 && ma {
                // item (1) depends only on (m, a)
                for &s in &sigma_pows[a] {
                    if !in_n(m, s) {
                        return Some(format!("(1) m sigma^i(a) not in N at {}", fmt(m, a, b)));
                    }
                }
                for &d in &delta_pows[a] {
                    if !in_n(m, d) {
                        return Some(format!("(1) m delta^j(a) not in N at {}", fmt(m, a, b)));
                    }
                }
            }
            let mab = in_n(m, ring.mul(a, b));
            if mab {
                let db = ring.delta(b);
                let da = ring.delta(a);
                for &daj in &delta_pows[a] {
                    if !in_n(m, ring.mul(ring.sigma(daj), db)) {
                        return Some(format!("(2) m sigma(delta^j(a)) delta(b) not in N at {}", fmt(m, a, b)));
                    }
                    if !in_n(m, ring.mul(daj, b)) {
                        return Some(format!("(2) m delta^j(a) b not in N at {}", fmt(m, a, b)));
                    }
                }
                for &si in &sigma_pows[da] {
                    for &dbj in &delta_pows[b] {
                        if !in_n(m, ring.mul(si, dbj)) {
                            return Some(format!("(2) m sigma^i(delta(a)) delta^j(b) not in N at {}", fmt(m, a, b)));
                        }
                    }
                }
                for &dbj in &delta_pows[b] {
                    if !in_n(m, ring.mul(a, dbj)) {
                        return Some(format!("(2) m a delta^j(b) not in N at {}", fmt(m, a, b)));
                    }
                }
            }
            if (mab || in_n(m, ring.mul(ring.sigma(a), b))) && !in_n(m, ring.mul(ring.delta(a), b)) {
                return Some(format!("(3) m delta(a) b not in N at {}", fmt(m, a, b)));
            }
            None
        })
        .collect();
    Ok(ClosureReport { exhaustive, tuples_checked: tuples.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteRing;
    use crate::ring::{Carrier, DeltaSpec, RingElement, TwistedRing};
    use std::sync::Arc;

    fn z4() -> Arc<FiniteRing> {
        Arc::new(FiniteRing::new(TwistedRing::untwisted(Carrier::zmod(4).unwrap())).unwrap())
    }

    #[test]
    fn residue_field_of_z4() {
        let r = z4();
        let m = FiniteModule::cyclic_quotient(r.clone(), &[RingElement::Residue(2)]).unwrap();
        assert!(is_compatible(&m).passed());
        assert!(is_completely_compatible(&m).unwrap().passed());
        let ann = annihilator(&m);
        assert_eq!(ann.ones().collect::<Vec<_>>(), vec![0, 2]);
        let report = check_derived_closure(&m, &m.zero_submodule(), 0).unwrap();
        assert!(report.exhaustive && report.passed());
    }

    #[test]
    fn z4_is_neither_prime_nor_coprime() {
        let m = FiniteModule::regular(z4()).unwrap();
        let l = m.all_submodules(Scope::Ring).unwrap();
        assert_eq!(annihilator(&m).ones().collect::<Vec<_>>(), vec![0]);
        let p = is_prime_module(&m, &l).unwrap();
        assert!(!p.holds);
        assert_eq!(p.witness.unwrap().elements().collect::<Vec<_>>(), vec![0, 2]);
        let c = is_coprime_module(&m, &l).unwrap();
        assert!(!c.holds);
        assert!(is_bass(&m, &l));
        let max = maximal_over(&m, &l, &m.zero_submodule()).unwrap();
        assert_eq!(max.elements().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn sigma_swapping_idempotents() {
        // F_2[t]/(t^2 + t) with sigma(t) = t + 1 swaps the two points
        let c = Carrier::fp_quotient(2, "t", vec![0, 1, 1]).unwrap();
        let tw = TwistedRing::new(c.clone(), Some(RingElement::Fp(vec![1, 1])), None, DeltaSpec::Zero).unwrap();
        let r = Arc::new(FiniteRing::new(tw).unwrap());
        let m = FiniteModule::cyclic_quotient(r.clone(), &[c.generator().unwrap()]).unwrap();
        let report = is_compatible(&m);
        let v = report.sigma.expect("sigma witness");
        assert_eq!(m.format(v.m), "1");
        assert!(report.delta.is_none());
    }

    #[test]
    fn jordan_truncation_fails_delta() {
        let c = Carrier::truncated(3, "t", 3).unwrap();
        let tw = TwistedRing::new(c.clone(), None, None, DeltaSpec::Derivation(c.one())).unwrap();
        let r = Arc::new(FiniteRing::new(tw).unwrap());
        let m = FiniteModule::regular(r).unwrap();
        let report = is_completely_compatible(&m).unwrap();
        assert!(report.sigma.is_none());
        assert!(report.delta.is_some());
        assert!(check_derived_closure(&m, &m.zero_submodule(), 0).is_err());
    }
}

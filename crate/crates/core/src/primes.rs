//! Associated and attached primes of finite modules, the extension `P -> PA`,
//! and bounded verification of the attached-prime results on the finite
//! truncations `T_k` of `M[x^-1]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::compat::{
    annihilator_of_quotient, annihilator_of_submodule, check_completely, coprime_witness, prime_witness, Direction,
};
use crate::finite::{FiniteModule, FiniteRing, Lattice, Scope, Submodule};
use crate::skew::{OreAlgebra, SkewPoly};

/// Polynomials of bounded degree are enumerated up to this many.
pub const POLY_BUDGET: usize = 1 << 16;

/// Sample size for polynomial sweeps beyond the budget.
pub const POLY_SAMPLES: usize = 4096;

pub const BASS_NOTE: &str =
    "the Bass hypothesis concerns all of M[x^-1]; finite truncations satisfy it automatically, so its full strength is not exercised";

pub const PA_NOTE: &str =
    "PA as the right ideal generated by P equals the coefficientwise extension P[x], since p(r x^j) = (pr) x^j with pr in P";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    Associated,
    Attached,
}

#[derive(Debug, Clone)]
pub struct PrimeEntry {
    pub ideal: FixedBitSet,
    pub label: String,
    /// The prime submodule, or the submodule `N` of the coprime quotient `M/N`.
    pub witness: Submodule,
    pub is_prime_ideal: bool,
}

#[derive(Debug, Clone)]
pub struct PrimeSet {
    pub kind: PrimeKind,
    pub entries: Vec<PrimeEntry>,
}

impl PrimeSet {
    pub fn labels(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    fn insert(&mut self, ring: &FiniteRing, ideal: FixedBitSet, witness: &Submodule) {
        if self.entries.iter().any(|e| e.ideal == ideal) {
            return;
        }
        self.entries.push(PrimeEntry {
            label: ring.describe_ideal(&ideal),
            is_prime_ideal: ring.is_prime_ideal(&ideal),
            ideal,
            witness: witness.clone(),
        });
    }

    fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            a.ideal.count_ones(..).cmp(&b.ideal.count_ones(..)).then_with(|| a.ideal.ones().cmp(b.ideal.ones()))
        });
    }
}

/// `{ann(N) : N a prime submodule of M}`.
pub fn ass_primes(module: &FiniteModule, lattice: &Lattice) -> PrimeSet {
    let mut out = PrimeSet { kind: PrimeKind::Associated, entries: Vec::new() };
    for n in lattice.iter().filter(|n| !n.is_zero()) {
        if prime_witness(module, lattice, n).is_none() {
            out.insert(module.ring(), annihilator_of_submodule(module, n), n);
        }
    }
    out.sort();
    out
}

/// `{ann(M/N) : M/N a coprime quotient}`.
pub fn att_primes(module: &FiniteModule, lattice: &Lattice) -> PrimeSet {
    let mut out = PrimeSet { kind: PrimeKind::Attached, entries: Vec::new() };
    for n in lattice.iter().filter(|n| !n.is_full(module)) {
        if coprime_witness(module, lattice, n).is_none() {
            out.insert(module.ring(), annihilator_of_quotient(module, n), n);
        }
    }
    out.sort();
    out
}

/// The extension `PA` of a right ideal `P`: skew polynomials whose
/// coefficients all lie in `P`.
///
/// Since `p (r x^j) = (pr) x^j`, this is also the right ideal of `A`
/// generated by `P`.
#[derive(Debug, Clone)]
pub struct ExtendedIdeal {
    alg: Arc<OreAlgebra>,
    ring: Arc<FiniteRing>,
    base: FixedBitSet,
}

impl ExtendedIdeal {
    pub fn algebra(&self) -> &Arc<OreAlgebra> {
        &self.alg
    }

    pub fn base(&self) -> &FixedBitSet {
        &self.base
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ring.describe_ideal(&self.base), "A")
    }

    pub fn contains(&self, f: &SkewPoly) -> bool {
        f.terms().all(|(_, r)| self.ring.index(r).map(|i| self.base.contains(i)).unwrap_or(false))
    }

    pub fn contains_coeffs(&self, coeffs: &[usize]) -> bool {
        coeffs.iter().all(|c| self.base.contains(*c))
    }
}

/// Build `PA`, checking that `P` is a right ideal stable under `sigma` and
/// `delta` and that membership is preserved by `x` on both sides for
/// `samples` seeded elements.
pub fn extend_to_a(alg: &Arc<OreAlgebra>, ring: &Arc<FiniteRing>, p: &FixedBitSet, samples: usize, seed: u64) -> Result<ExtendedIdeal> {
    if alg.twist() != ring.twist() {
        return Err(Error::TwistMismatch);
    }
    if !ring.is_right_ideal(p) {
        return Err(Error::Precondition(format!("{} is not a right ideal", ring.format_set(p))));
    }
    let label = ring.describe_ideal(p);
    for a in p.ones() {
        for (name, image) in [("sigma", ring.sigma(a)), ("delta", ring.delta(a))] {
            if !p.contains(image) {
                return Err(Error::NotStableUnderTwist {
                    ideal: label,
                    witness: format!("{name}({}) = {}", ring.format(a), ring.format(image)),
                });
            }
        }
    }
    let ext = ExtendedIdeal { alg: alg.clone(), ring: ring.clone(), base: p.clone() };
    let members: Vec<usize> = p.ones().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = alg.x();
    for _ in 0..samples {
        let deg = rng.gen_range(0..=4);
        let coeffs = (0..=deg).map(|_| ring.element(members[rng.gen_range(0..members.len())]).clone()).collect();
        let f = alg.from_coeffs(coeffs)?;
        for g in [x.mul(&f)?, f.mul(&x)?] {
            if !ext.contains(&g) {
                return Err(Error::NotStableUnderTwist { ideal: label, witness: format!("x-multiple of {f} is {g}") });
            }
        }
    }
    Ok(ext)
}

/// The finite `A`-module `T_k` of inverse polynomials of depth at most `k`.
///
/// Element `(m_0, ..., m_k)` has index `sum m_i |M|^i`.
#[derive(Debug, Clone)]
pub struct TruncatedInvModule {
    base: FiniteModule,
    bound: usize,
    module: FiniteModule,
}

impl TruncatedInvModule {
    pub fn new(alg: &Arc<OreAlgebra>, base: &FiniteModule, bound: usize) -> Result<Self> {
        let module = base.inverse_truncation(alg, bound)?;
        let t = TruncatedInvModule { base: base.clone(), bound, module };
        t.check_closed()?;
        Ok(t)
    }

    fn check_closed(&self) -> Result<()> {
        let expected = (self.base.size() as u64).pow(self.bound as u32 + 1);
        if self.module.size() as u64 != expected {
            return Err(Error::Postcondition(format!("|T_k| = {} but |M|^(k+1) = {expected}", self.module.size())));
        }
        Ok(())
    }

    pub fn base(&self) -> &FiniteModule {
        &self.base
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn coeff(&self, t: usize, i: usize) -> usize {
        (t / self.base.size().pow(i as u32)) % self.base.size()
    }

    /// `m x^-i`.
    pub fn embed(&self, m: usize, i: usize) -> usize {
        m * self.base.size().pow(i as u32)
    }

    /// `N[x^-1]` cut down to `T_k`.
    pub fn lift(&self, n: &Submodule) -> Submodule {
        let mut set = FixedBitSet::with_capacity(self.module.size());
        for t in 0..self.module.size() {
            if (0..=self.bound).all(|i| n.contains(self.coeff(t, i))) {
                set.insert(t);
            }
        }
        Submodule::from_set(set)
    }

    /// `t . f` for `f` given by ring indices of its coefficients.
    pub fn act_poly(&self, t: usize, coeffs: &[usize]) -> usize {
        let m = &self.module;
        let mut acc = 0;
        for c in coeffs.iter().rev() {
            acc = m.add(m.x_act(acc), m.act(t, *c));
        }
        acc
    }

    /// `P_j = {m : m x^-j in P}` and the submodule it generates.
    pub fn projection(&self, p: &Submodule, j: usize) -> Submodule {
        let gens: Vec<usize> = (0..self.base.size()).filter(|m| p.contains(self.embed(*m, j))).collect();
        self.base.submodule_closure(&gens, Scope::Ring)
    }
}

/// All coefficient vectors of degree at most `k`, or a seeded sample of them.
pub fn poly_space(ring: &FiniteRing, k: usize, seed: u64) -> (Vec<Vec<usize>>, bool) {
    let n = ring.size();
    let total = (n as u128).pow(k as u32 + 1);
    if total <= POLY_BUDGET as u128 {
        let polys = (0..total as usize)
            .map(|mut idx| {
                (0..=k)
                    .map(|_| {
                        let c = idx % n;
                        idx /= n;
                        c
                    })
                    .collect()
            })
            .collect();
        (polys, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        ((0..POLY_SAMPLES).map(|_| (0..=k).map(|_| rng.gen_range(0..n)).collect()).collect(), false)
    }
}

fn poly_of(alg: &Arc<OreAlgebra>, ring: &FiniteRing, coeffs: &[usize]) -> Result<SkewPoly> {
    alg.from_coeffs(coeffs.iter().map(|c| ring.element(*c).clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, witness: Option<String>) -> Self {
        Check { name: name.into(), status: if passed { Status::Pass } else { Status::Fail }, witness }
    }

    pub fn skip(name: impl Into<String>, why: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skip, witness: Some(why.into()) }
    }
}

/// Result of a prime computation or a bounded verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttReport {
    pub instance: String,
    pub bound: usize,
    pub exhaustive: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub att: Vec<String>,
    pub notes: Vec<String>,
}

impl AttReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "fail" };
        format!("{verdict}, bound {}", self.bound)
    }
}

fn require_complete_compatibility(module: &FiniteModule, lattice: &Lattice) -> Result<()> {
    let report = check_completely(module, lattice, Direction::Forward);
    match report.witness() {
        Some(v) => Err(Error::Precondition(format!("module is not completely compatible: {}", v.describe(module)))),
        None => Ok(()),
    }
}

fn instance_name(alg: &OreAlgebra, module: &FiniteModule) -> String {
    format!("{} acting on M with |M| = {}", alg.describe(), module.size())
}

/// Classification of one polynomial by the annihilator lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaVerdict {
    pub in_pa: bool,
    /// An element `m(x)` of `T_k` with `m(x) f` outside `N[x^-1]`.
    pub witness: Option<usize>,
}

impl LemmaVerdict {
    pub fn annihilates(&self) -> bool {
        self.witness.is_none()
    }

    pub fn consistent(&self) -> bool {
        self.in_pa == self.annihilates()
    }
}

/// Data for checking `PA = ann_A(M[x^-1]/N[x^-1])` on `T_k`.
pub struct LemmaContext {
    pub alg: Arc<OreAlgebra>,
    pub truncation: TruncatedInvModule,
    pub n: Submodule,
    pub n_part: Submodule,
    pub p: ExtendedIdeal,
}

impl LemmaContext {
    /// Checks the hypotheses: complete compatibility of `M` and primality of
    /// `P = ann(M/N)`.
    pub fn new(alg: &Arc<OreAlgebra>, module: &FiniteModule, n: &Submodule, bound: usize) -> Result<Self> {
        let lattice = module.all_submodules(Scope::Ring)?;
        require_complete_compatibility(module, &lattice)?;
        if !lattice.contains(n) {
            return Err(Error::Precondition("N is not a submodule of M".into()));
        }
        let ring = module.ring();
        let p = annihilator_of_quotient(module, n);
        if let Some((a, b)) = ring.prime_witness(&p) {
            return Err(Error::Precondition(format!(
                "ann(M/N) = {} is not prime: a = {}, b = {}",
                ring.describe_ideal(&p),
                ring.format(a),
                ring.format(b)
            )));
        }
        let p = extend_to_a(alg, ring, &p, 64, 0)?;
        let truncation = TruncatedInvModule::new(alg, module, bound)?;
        let n_part = truncation.lift(n);
        Ok(LemmaContext { alg: alg.clone(), truncation, n: n.clone(), n_part, p })
    }

    pub fn classify(&self, coeffs: &[usize]) -> LemmaVerdict {
        let t = &self.truncation;
        let witness = (0..t.module().size()).find(|&m| !self.n_part.contains(t.act_poly(m, coeffs)));
        LemmaVerdict { in_pa: self.p.contains_coeffs(coeffs), witness }
    }

    pub fn classify_poly(&self, f: &SkewPoly) -> Result<LemmaVerdict> {
        let ring = self.truncation.base().ring();
        let coeffs = f.to_coeffs().iter().map(|c| ring.index(c)).collect::<Result<Vec<_>>>()?;
        Ok(self.classify(&coeffs))
    }
}

/// `PA = ann_A(M[x^-1]/N[x^-1])`, checked on `T_k` against every
/// polynomial of x-degree at most `k` (or a seeded sample).
pub fn verify_annihilator_lemma(alg: &Arc<OreAlgebra>, module: &FiniteModule, n: &Submodule, bound: usize, seed: u64) -> Result<AttReport> {
    let ctx = LemmaContext::new(alg, module, n, bound)?;
    let ring = module.ring();
    let (polys, exhaustive) = poly_space(ring, bound, seed);
    let verdicts: Vec<LemmaVerdict> = polys.par_iter().map(|c| ctx.classify(c)).collect();
    let t = ctx.truncation.module();
    let first = |pred: &dyn Fn(&LemmaVerdict) -> bool| -> Result<Option<String>> {
        match polys.iter().zip(&verdicts).find(|(_, v)| pred(v)) {
            None => Ok(None),
            Some((c, v)) => {
                let f = poly_of(alg, ring, c)?;
                Ok(Some(match v.witness {
                    Some(m) => format!("f = {f}, m(x) = {}", t.format(m)),
                    None => format!("f = {f}"),
                }))
            }
        }
    };
    let sub_fail = first(&|v| v.in_pa && !v.annihilates())?;
    let sup_fail = first(&|v| !v.in_pa && v.annihilates())?;
    let in_pa = verdicts.iter().filter(|v| v.in_pa).count();
    let mut checks = vec![
        Check::new("PA contained in ann_A(M[x^-1]/N[x^-1])", sub_fail.is_none(), sub_fail),
        Check::new("ann_A(M[x^-1]/N[x^-1]) contained in PA", sup_fail.is_none(), sup_fail),
    ];
    if let Some(ex) = first(&|v| !v.in_pa && !v.annihilates())? {
        checks.push(Check::new("sample non-annihilating witness", true, Some(ex)));
    }
    Ok(AttReport {
        instance: instance_name(alg, module),
        bound,
        exhaustive,
        checks,
        att: Vec::new(),
        notes: vec![
            format!("P = {}", ctx.p.label()),
            format!("{} polynomials classified, {in_pa} in PA", polys.len()),
            format!("verified at bound {bound}"),
            PA_NOTE.to_string(),
        ],
    })
}

/// A submodule of `M[x^-1]` of the form `Q + N[x^-1]` with `Q` inside `T_k`
/// and `N` a submodule of `M`.
#[derive(Debug, Clone, Copy)]
struct Bounded<'a> {
    q: &'a Submodule,
    tail: &'a Submodule,
}

/// Annihilators over `A`, as sets of polynomial indices into the space of
/// polynomials of x-degree at most `k`.
///
/// `ann(M[x^-1]/Q)` is tested on the inverse polynomials of depth at most
/// `2k + 1`, on which the action is exact; the finite module `T_k` on its own
/// would make `x^k` look like an annihilator of its top layer.
struct AnnihilatorTable {
    ambient: TruncatedInvModule,
    low_size: usize,
    base_size: usize,
    polys: Vec<Vec<usize>>,
    /// `t . f` for every `t` and polynomial `f`, row-major in `t`.
    images: Vec<u32>,
}

impl AnnihilatorTable {
    fn new(alg: &Arc<OreAlgebra>, base: &FiniteModule, bound: usize, depth: usize) -> Result<Self> {
        let ring = base.ring();
        let (polys, exhaustive) = poly_space(ring, bound, 0);
        if !exhaustive {
            return Err(Error::CapExceeded(format!(
                "{}^{} polynomials exceed the enumeration budget {POLY_BUDGET}",
                ring.size(),
                bound + 1
            )));
        }
        let ambient = TruncatedInvModule::new(alg, base, depth)?;
        let size = ambient.module().size();
        if size.saturating_mul(polys.len()) > 1 << 24 {
            return Err(Error::CapExceeded(format!("action table of {size} x {} entries", polys.len())));
        }
        let images = (0..size)
            .into_par_iter()
            .flat_map_iter(|t| polys.iter().map(|c| ambient.act_poly(t, c) as u32).collect::<Vec<_>>())
            .collect();
        Ok(AnnihilatorTable {
            low_size: base.size().pow(bound.min(depth) as u32 + 1),
            base_size: base.size(),
            ambient,
            polys,
            images,
        })
    }

    fn contains(&self, b: Bounded<'_>, t: usize) -> bool {
        if !b.q.contains(t % self.low_size) {
            return false;
        }
        let mut high = t / self.low_size;
        while high > 0 {
            if !b.tail.contains(high % self.base_size) {
                return false;
            }
            high /= self.base_size;
        }
        true
    }

    fn ann(&self, b: Bounded<'_>) -> FixedBitSet {
        let size = self.ambient.module().size();
        let np = self.polys.len();
        let mut set = FixedBitSet::with_capacity(np);
        for f in 0..np {
            if (0..size).all(|t| self.contains(b, self.images[t * np + f] as usize)) {
                set.insert(f);
            }
        }
        set
    }

    fn pa(&self, ext: &ExtendedIdeal) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.polys.len());
        for (i, c) in self.polys.iter().enumerate() {
            if ext.contains_coeffs(c) {
                set.insert(i);
            }
        }
        set
    }

    fn poly_index(&self, coeffs: &[usize], n: usize) -> usize {
        coeffs.iter().rev().fold(0usize, |acc, d| acc * n + d)
    }
}

fn ambient_depth(bound: usize) -> usize {
    2 * bound + 1
}

/// `Att(M[x^-1]_A)` contains `{PA : P in Att(M_R)}`, checked at bound `k`:
/// for each attached `P = ann(M/N)`, `ann_A(M[x^-1]/N[x^-1])` is compared
/// with `PA` and with `ann_A(M[x^-1]/(Q + N[x^-1]))` for every proper
/// `A`-submodule `Q` of `T_k` above the part of `N[x^-1]` in `T_k`.
pub fn verify_att_inclusion(alg: &Arc<OreAlgebra>, module: &FiniteModule, bound: usize) -> Result<AttReport> {
    let mut notes = vec![
        format!("verified at bound {bound}"),
        format!("annihilators tested on inverse polynomials of depth <= {}", ambient_depth(bound)),
        BASS_NOTE.to_string(),
        PA_NOTE.to_string(),
    ];
    let instance = instance_name(alg, module);
    if module.size() == 1 {
        notes.push("M = 0: both sides are empty".into());
        return Ok(AttReport { instance, bound, exhaustive: true, checks: Vec::new(), att: Vec::new(), notes });
    }
    let lattice = module.all_submodules(Scope::Ring)?;
    require_complete_compatibility(module, &lattice)?;
    let truncation = TruncatedInvModule::new(alg, module, bound)?;
    let t = truncation.module();
    let a_lattice = t.all_submodules(Scope::Ore)?;
    let table = AnnihilatorTable::new(alg, module, bound, ambient_depth(bound))?;
    let att = att_primes(module, &lattice);
    let mut checks = Vec::new();
    let mut labels = Vec::new();
    for entry in &att.entries {
        let ext = extend_to_a(alg, module.ring(), &entry.ideal, 64, 0)?;
        let label = ext.label();
        labels.push(label.clone());
        let n = &entry.witness;
        let n_part = truncation.lift(n);
        checks.push(Check::new(format!("N[x^-1] is an A-submodule for {label}"), a_lattice.contains(&n_part), None));
        let ann = table.ann(Bounded { q: &n_part, tail: n });
        checks.push(Check::new(format!("ann_A(M[x^-1]/N[x^-1]) = {label}"), ann == table.pa(&ext), None));
        let w = a_lattice
            .iter()
            .filter(|q| n_part.is_subset(q) && **q != n_part)
            .find(|q| table.ann(Bounded { q, tail: n }) != ann);
        checks.push(Check::new(
            format!("M[x^-1]/N[x^-1] is coprime over A for {label}"),
            w.is_none(),
            w.map(|q| format!("Q = {}", q.describe(t))),
        ));
    }
    Ok(AttReport { instance, bound, exhaustive: true, checks, att: labels, notes })
}

/// Recover the coefficients of an annihilating polynomial one degree at a
/// time: each `r_i` must lie in `I & R` and the tail `r_{i+1} x^{i+1} + ...`
/// must stay in `I`. Returns the first degree where this breaks.
pub fn peel_coefficients(coeffs: &[usize], in_ideal: impl Fn(&[usize]) -> bool, in_base: impl Fn(usize) -> bool) -> Option<usize> {
    let mut tail = coeffs.to_vec();
    for i in 0..coeffs.len() {
        if !in_base(tail[i]) {
            return Some(i);
        }
        tail[i] = 0;
        if !in_ideal(&tail) {
            return Some(i);
        }
    }
    None
}

/// `Att(M[x^-1]_A) = {PA : P in Att(M_R)}`, checked at bound `k`.
///
/// The left side ranges over the submodules `Q + N[x^-1]` of `M[x^-1]`,
/// with `N` a proper submodule of `M` such that `N[x^-1]` is an
/// `A`-submodule and `Q` an `A`-submodule of `T_k` above the part of
/// `N[x^-1]` in `T_k`. Coprimality is decided within this family. The
/// finite `A`-modules `T_k/Q` are also used to check coprime descent.
pub fn verify_att_equality(alg: &Arc<OreAlgebra>, module: &FiniteModule, bound: usize) -> Result<AttReport> {
    let mut notes = vec![
        format!("verified at bound {bound}"),
        format!("annihilators tested on inverse polynomials of depth <= {}", ambient_depth(bound)),
        BASS_NOTE.to_string(),
        PA_NOTE.to_string(),
    ];
    let instance = instance_name(alg, module);
    if module.size() == 1 {
        notes.push("M = 0: both sides are empty".into());
        return Ok(AttReport { instance, bound, exhaustive: true, checks: Vec::new(), att: Vec::new(), notes });
    }
    let ring = module.ring();
    let lattice = module.all_submodules(Scope::Ring)?;
    require_complete_compatibility(module, &lattice)?;
    let truncation = TruncatedInvModule::new(alg, module, bound)?;
    let t = truncation.module();
    let a_lattice = t.all_submodules(Scope::Ore)?;
    let table = AnnihilatorTable::new(alg, module, bound, ambient_depth(bound))?;
    let mut checks = Vec::new();

    // left side
    let mut family: Vec<Bounded<'_>> = Vec::new();
    for n in lattice.iter().filter(|n| !n.is_full(module)) {
        let n_part = truncation.lift(n);
        if !a_lattice.contains(&n_part) {
            continue;
        }
        for q in a_lattice.iter().filter(|q| n_part.is_subset(q)) {
            family.push(Bounded { q, tail: n });
        }
    }
    let anns: Vec<FixedBitSet> = family.par_iter().map(|b| table.ann(*b)).collect();
    let includes = |a: &Bounded<'_>, b: &Bounded<'_>| a.q.is_subset(b.q) && a.tail.is_subset(b.tail);
    let coprime: Vec<bool> = (0..family.len())
        .into_par_iter()
        .map(|i| {
            (0..family.len()).all(|j| {
                j == i || !includes(&family[i], &family[j]) || (family[i].q == family[j].q && family[i].tail == family[j].tail) || anns[j] == anns[i]
            })
        })
        .collect();
    let mut lhs: BTreeMap<Vec<usize>, (FixedBitSet, Bounded<'_>)> = BTreeMap::new();
    for ((b, ann), ok) in family.iter().zip(&anns).zip(&coprime) {
        if *ok {
            lhs.entry(ann.ones().collect()).or_insert((ann.clone(), *b));
        }
    }
    notes.push(format!("{} submodules Q + N[x^-1] examined, {} coprime", family.len(), coprime.iter().filter(|c| **c).count()));

    // right side
    let att = att_primes(module, &lattice);
    let mut rhs: BTreeMap<Vec<usize>, String> = BTreeMap::new();
    for entry in &att.entries {
        let ext = extend_to_a(alg, ring, &entry.ideal, 64, 0)?;
        rhs.insert(table.pa(&ext).ones().collect(), ext.label());
    }

    for (key, (ann, b)) in &lhs {
        // constants sit at indices below |R|
        let mut base = FixedBitSet::with_capacity(ring.size());
        for r in (0..ring.size()).filter(|r| ann.contains(*r)) {
            base.insert(r);
        }
        let label = format!("{}A", ring.describe_ideal(&base));
        let in_ideal = |c: &[usize]| ann.contains(table.poly_index(c, ring.size()));
        let peel_fail = key
            .iter()
            .find_map(|f| peel_coefficients(&table.polys[*f], in_ideal, |r| base.contains(r)).map(|i| (*f, i)));
        checks.push(Check::new(
            format!("coefficient peeling for {label}"),
            peel_fail.is_none(),
            match peel_fail {
                Some((f, i)) => Some(format!("degree {i} of {}", poly_of(alg, ring, &table.polys[f])?)),
                None => None,
            },
        ));
        checks.push(Check::new(
            format!("attached prime {label} has the form PA with P in Att(M_R)"),
            rhs.contains_key(key),
            (!rhs.contains_key(key)).then(|| format!("Q = {}, N = {}", b.q.describe(t), b.tail.describe(module))),
        ));
        checks.push(Check::new(format!("{} is prime", ring.describe_ideal(&base)), ring.is_prime_ideal(&base), None));
    }
    for (key, label) in &rhs {
        checks.push(Check::new(format!("{label} is attached to M[x^-1]"), lhs.contains_key(key), None));
    }

    // coprime descent on the finite A-modules T_k/Q
    let r_lattice = t.all_submodules(Scope::Ring)?;
    let local = AnnihilatorTable::new(alg, module, bound, bound)?;
    let full_tail = module.full_submodule();
    let proper: Vec<&Submodule> = a_lattice.iter().filter(|q| !q.is_full(t)).collect();
    let mut descent_checked = 0;
    for q in &proper {
        let ann = local.ann(Bounded { q, tail: &full_tail });
        let a_coprime = proper
            .iter()
            .filter(|s| q.is_subset(s) && s != &q)
            .all(|s| local.ann(Bounded { q: s, tail: &full_tail }) == ann);
        if !a_coprime {
            continue;
        }
        let compatible = r_lattice
            .iter()
            .filter(|s| q.is_subset(s))
            .all(|n| crate::finite::check_quotient(t, n, Direction::Forward, 0).passed());
        if !compatible {
            continue;
        }
        descent_checked += 1;
        let w = coprime_witness(t, &r_lattice, q);
        checks.push(Check::new(
            format!("coprime descent for T_k/Q, Q = {}", q.describe(t)),
            w.is_none(),
            w.map(|s| format!("Q' = {}", s.describe(t))),
        ));
    }
    notes.push(format!("coprime descent checked on {descent_checked} quotients of T_k"));
    let labels: Vec<String> = lhs.keys().map(|k| rhs.get(k).cloned().unwrap_or_else(|| "?".into())).collect();
    Ok(AttReport { instance, bound, exhaustive: true, checks, att: labels, notes })
}

/// Outcome of projecting a maximal `R`-submodule of `T_k` to `M`.
#[derive(Debug, Clone)]
pub struct Projection {
    pub j: usize,
    pub submodule: Submodule,
    pub is_full: bool,
    pub is_maximal: bool,
}

/// `<P_j>` for each `j <= k`, checking the dichotomy (`<P_j> = M` or
/// maximal) and that some `j` gives a maximal submodule.
pub fn projection_submodules(truncation: &TruncatedInvModule, p: &Submodule) -> Result<Vec<Projection>> {
    let t = truncation.module();
    if p.is_full(t) {
        return Err(Error::Precondition("P is all of T_k".into()));
    }
    let r_lattice = t.all_submodules(Scope::Ring)?;
    if !r_lattice.contains(p) {
        return Err(Error::Precondition("P is not an R-submodule of T_k".into()));
    }
    if r_lattice.iter().any(|s| !s.is_full(t) && p.is_subset(s) && s != p) {
        return Err(Error::Precondition("P is not maximal in T_k".into()));
    }
    let base = truncation.base();
    let m_lattice = base.all_submodules(Scope::Ring)?;
    let maximal = m_lattice.maximal(base);
    let out: Vec<Projection> = (0..=truncation.bound())
        .map(|j| {
            let s = truncation.projection(p, j);
            Projection { j, is_full: s.is_full(base), is_maximal: maximal.contains(&&s), submodule: s }
        })
        .collect();
    if let Some(bad) = out.iter().find(|pr| !pr.is_full && !pr.is_maximal) {
        return Err(Error::Postcondition(format!(
            "<P_{}> = {} is neither M nor maximal",
            bad.j,
            bad.submodule.describe(base)
        )));
    }
    if !out.iter().any(|pr| pr.is_maximal) {
        return Err(Error::Postcondition("no j gives a maximal <P_j>".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Carrier, RingElement, TwistedRing};

    fn z4_instance() -> (Arc<OreAlgebra>, FiniteModule) {
        let tw = TwistedRing::untwisted(Carrier::zmod(4).unwrap());
        let ring = Arc::new(FiniteRing::new(tw.clone()).unwrap());
        let alg = OreAlgebra::new(tw, "x").unwrap();
        let m = FiniteModule::cyclic_quotient(ring, &[RingElement::Residue(2)]).unwrap();
        (alg, m)
    }

    #[test]
    fn primes_of_residue_field() {
        let (_, m) = z4_instance();
        let l = m.all_submodules(Scope::Ring).unwrap();
        assert_eq!(ass_primes(&m, &l).labels(), vec!["(2)"]);
        assert_eq!(att_primes(&m, &l).labels(), vec!["(2)"]);
    }

    #[test]
    fn lemma_on_residue_field() {
        let (alg, m) = z4_instance();
        let ctx = LemmaContext::new(&alg, &m, &m.zero_submodule(), 2).unwrap();
        let two = alg.from_coeffs(vec![RingElement::Residue(2), RingElement::Residue(2)]).unwrap();
        let v = ctx.classify_poly(&two).unwrap();
        assert!(v.in_pa && v.annihilates());
        let v = ctx.classify_poly(&alg.one()).unwrap();
        assert!(!v.in_pa);
        assert_eq!(ctx.truncation.module().format(v.witness.unwrap()), "1");
        let report = verify_annihilator_lemma(&alg, &m, &m.zero_submodule(), 3, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn theorems_on_residue_field() {
        let (alg, m) = z4_instance();
        let inc = verify_att_inclusion(&alg, &m, 2).unwrap();
        assert!(inc.passed(), "{inc:?}");
        let eq = verify_att_equality(&alg, &m, 2).unwrap();
        assert!(eq.passed(), "{eq:?}");
        assert_eq!(eq.att, vec!["(2)A"]);
    }

    #[test]
    fn extension_rejects_unstable_ideal() {
        let c = Carrier::truncated(3, "t", 3).unwrap();
        let tw = TwistedRing::new(c.clone(), None, None, crate::ring::DeltaSpec::Derivation(c.one())).unwrap();
        let ring = Arc::new(FiniteRing::new(tw.clone()).unwrap());
        let alg = OreAlgebra::new(tw, "x").unwrap();
        let p = ring.principal_ideal(&c.generator().unwrap());
        assert!(matches!(extend_to_a(&alg, &ring, &p, 8, 0), Err(Error::NotStableUnderTwist { .. })));
        let zero = ring.principal_ideal(&c.zero());
        let ext = extend_to_a(&alg, &ring, &zero, 8, 0).unwrap();
        assert!(ext.contains(&alg.zero()));
        assert!(!ext.contains(&alg.one()));
    }

    #[test]
    fn projection_dichotomy() {
        let (alg, m) = z4_instance();
        let tr = TruncatedInvModule::new(&alg, &m, 2).unwrap();
        let t = tr.module();
        let l = t.all_submodules(Scope::Ring).unwrap();
        for p in l.maximal(t) {
            let proj = projection_submodules(&tr, p).unwrap();
            assert!(proj.iter().any(|pr| pr.is_maximal));
        }
        assert!(projection_submodules(&tr, &t.full_submodule()).is_err());
    }
}

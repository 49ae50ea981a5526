use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::ring::FiniteRing;
use crate::error::{Error, Result};
use crate::inverse::{InvModule, RightModule};
use crate::ring::{Carrier, RingElement};
use crate::skew::OreAlgebra;

/// Default cap on the number of module elements.
pub const MODULE_CAP: usize = 4096;

/// Cap on the number of submodules enumerated.
pub const LATTICE_CAP: usize = 1 << 16;

/// Full action tables are built when `|M| * |R|` is at most this.
const ACTION_CACHE_LIMIT: usize = 1 << 20;

/// Which operators a submodule must be stable under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Right `R`-submodules.
    Ring,
    /// Right `A`-submodules: stable under `R` and under `x`.
    Ore,
}

/// A finite right module.
///
/// The additive group is `Z/d_1 x ... x Z/d_r`; element `i` is the
/// mixed-radix number whose digits are its coordinates. The carrier variable
/// acts through a tabulated additive map `T`, and an optional map `X` gives
/// the action of the Ore variable for modules over `A`.
#[derive(Clone)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    radix: Vec<u64>,
    size: usize,
    t_table: Option<Vec<u32>>,
    x_table: Option<Vec<u32>>,
    labels: Option<Arc<Vec<String>>>,
    act_cache: Option<Arc<Vec<u32>>>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule(|M| = {}, radix {:?}, over {})", self.size, self.radix, self.ring.carrier())
    }
}

impl FiniteModule {
    /// Build from the group orders and the images of the unit vectors under
    /// `T` (and `X`), given as element indices.
    pub fn from_parts(
        ring: Arc<FiniteRing>,
        radix: Vec<u64>,
        t_images: Option<Vec<usize>>,
        x_images: Option<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let bad = |msg: String| Error::InvalidModule(msg);
        let mut size: u64 = 1;
        for d in &radix {
            if *d < 2 {
                return Err(bad(format!("cyclic factor of order {d}")));
            }
            size = size.saturating_mul(*d);
            if size > MODULE_CAP as u64 {
                return Err(Error::ModuleTooLarge { size, cap: MODULE_CAP });
            }
        }
        let size = size as usize;
        let chr = ring.carrier().characteristic();
        if let Some(d) = radix.iter().find(|d| !chr.is_multiple_of(**d)) {
            return Err(bad(format!("factor Z/{d} is not killed by the characteristic {chr}")));
        }
        let has_var = ring.carrier().var().is_some();
        if has_var != t_images.is_some() {
            return Err(bad(if has_var {
                "the carrier variable needs an action".into()
            } else {
                "Z/n carriers have no variable to act".into()
            }));
        }
        if let Some(l) = &labels {
            if l.len() != size {
                return Err(bad(format!("{} labels for {size} elements", l.len())));
            }
        }
        let mut m = FiniteModule {
            ring,
            radix,
            size,
            t_table: None,
            x_table: None,
            labels: labels.map(Arc::new),
            act_cache: None,
        };
        if let Some(imgs) = t_images {
            m.t_table = Some(m.extend_additive("T", &imgs)?);
        }
        if let Some(imgs) = x_images {
            m.x_table = Some(m.extend_additive("X", &imgs)?);
        }
        m.check_modulus()?;
        if m.size * m.ring.size() <= ACTION_CACHE_LIMIT {
            let n = m.ring.size();
            let cache: Vec<u32> = (0..m.size * n)
                .into_par_iter()
                .map(|idx| m.act_uncached(idx / n, idx % n) as u32)
                .collect();
            m.act_cache = Some(Arc::new(cache));
        }
        m.check_axioms()?;
        if m.x_table.is_some() {
            m.check_ore_relation()?;
        }
        Ok(m)
    }

    /// `R` as a right module over itself.
    pub fn regular(ring: Arc<FiniteRing>) -> Result<Self> {
        Self::cyclic_quotient(ring, &[])
    }

    /// `R/I` for the right ideal generated by `gens`.
    pub fn cyclic_quotient(ring: Arc<FiniteRing>, gens: &[RingElement]) -> Result<Self> {
        let c = ring.carrier().clone();
        for g in gens {
            c.check(g)?;
        }
        let g = c.ideal_generator(gens);
        match (&c, &g) {
            (Carrier::Zmod { n }, RingElement::Residue(d)) => {
                let d = if *d == 0 { *n } else { *d };
                if d == 1 {
                    return Ok(Self::zero_module(ring));
                }
                let labels = (0..d).map(|i| i.to_string()).collect();
                Self::from_parts(ring, vec![d], None, None, Some(labels))
            }
            (Carrier::FpQuotient { p, .. }, RingElement::Fp(gc)) => {
                let dim = gc.len() - 1;
                if dim == 0 {
                    return Ok(Self::zero_module(ring));
                }
                let radix = vec![*p; dim];
                let unit = |k: usize| (*p as usize).pow(k as u32);
                // t * t^k reduced modulo g, as coordinates on 1, t, ..., t^{dim-1}
                let mut t_images = Vec::with_capacity(dim);
                for k in 0..dim {
                    if k + 1 < dim {
                        t_images.push(unit(k + 1));
                    } else {
                        // t^dim = -(g_0 + g_1 t + ... + g_{dim-1} t^{dim-1})
                        let mut idx = 0;
                        for (j, coeff) in gc[..dim].iter().enumerate() {
                            idx += ((p - coeff) % p) as usize * unit(j);
                        }
                        t_images.push(idx);
                    }
                }
                let labels = (0..radix.iter().product::<u64>() as usize)
                    .map(|i| {
                        let mut rest = i as u64;
                        let digits: Vec<u64> = (0..dim)
                            .map(|_| {
                                let d = rest % p;
                                rest /= p;
                                d
                            })
                            .collect();
                        c.format(&c.reduce_fp(digits))
                    })
                    .collect();
                Self::from_parts(ring, radix, Some(t_images), None, Some(labels))
            }
            _ => Err(Error::InvalidModule(format!("cannot form a quotient of {c}"))),
        }
    }

    /// The zero module.
    pub fn zero_module(ring: Arc<FiniteRing>) -> Self {
        let t_table = ring.carrier().var().map(|_| vec![0]);
        FiniteModule {
            ring,
            radix: Vec::new(),
            size: 1,
            t_table,
            x_table: None,
            labels: None,
            act_cache: None,
        }
    }

    /// A module given by cyclic orders and the `T` (and `X`) images of the
    /// unit vectors in coordinates.
    pub fn from_group_action(
        ring: Arc<FiniteRing>,
        orders: Vec<u64>,
        t_rows: Option<Vec<Vec<u64>>>,
        x_rows: Option<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        let encode = |rows: Vec<Vec<u64>>| -> Result<Vec<usize>> {
            if rows.len() != orders.len() {
                return Err(Error::InvalidModule(format!(
                    "{} action rows for {} generators",
                    rows.len(),
                    orders.len()
                )));
            }
            rows.into_iter()
                .map(|row| {
                    if row.len() != orders.len() {
                        return Err(Error::InvalidModule("action row has the wrong length".into()));
                    }
                    Ok(Self::encode_with(&orders, &row))
                })
                .collect()
        };
        let t = t_rows.map(encode).transpose()?;
        let x = x_rows.map(encode).transpose()?;
        Self::from_parts(ring, orders, t, x, None)
    }

    /// `M_1 + M_2`.
    pub fn direct_sum(a: &FiniteModule, b: &FiniteModule) -> Result<Self> {
        if !Arc::ptr_eq(&a.ring, &b.ring) && a.ring.twist() != b.ring.twist() {
            return Err(Error::TwistMismatch);
        }
        if a.x_table.is_some() != b.x_table.is_some() {
            return Err(Error::InvalidModule("cannot add an A-module to an R-module".into()));
        }
        let radix: Vec<u64> = a.radix.iter().chain(&b.radix).copied().collect();
        let shift = a.size;
        let images = |ta: &Option<Vec<u32>>, tb: &Option<Vec<u32>>| -> Option<Vec<usize>> {
            let (ta, tb) = (ta.as_ref()?, tb.as_ref()?);
            let mut out: Vec<usize> = a.units().map(|u| ta[u] as usize).collect();
            out.extend(b.units().map(|u| tb[u] as usize * shift));
            Some(out)
        };
        let t = images(&a.t_table, &b.t_table);
        let x = images(&a.x_table, &b.x_table);
        let labels = (0..a.size * b.size)
            .map(|i| format!("({}, {})", a.format(i % shift), b.format(i / shift)))
            .collect();
        Self::from_parts(a.ring.clone(), radix, t, x, Some(labels))
    }

    /// The truncation `T_k` of `M[x^-1]`: inverse polynomials of depth at most
    /// `k`, with the action of `A` restricted to it. Element
    /// `(m_0, ..., m_k)` has index `sum m_i |M|^i`.
    pub fn inverse_truncation(&self, alg: &Arc<OreAlgebra>, k: usize) -> Result<Self> {
        if alg.twist() != self.ring.twist() {
            return Err(Error::TwistMismatch);
        }
        let slots = k + 1;
        let size = (self.size as u64).checked_pow(slots as u32).unwrap_or(u64::MAX);
        if size > MODULE_CAP as u64 {
            return Err(Error::ModuleTooLarge { size, cap: MODULE_CAP });
        }
        let inv = InvModule::new(alg.clone(), self.clone())?;
        let encode = |p: &crate::inverse::InvPoly<usize>| -> usize {
            p.terms().map(|(i, m)| m * self.size.pow(i as u32)).sum()
        };
        let units: Vec<(usize, usize)> = (0..slots).flat_map(|i| self.units().map(move |u| (i, u))).collect();
        let t_images = match self.ring.carrier().generator() {
            None => None,
            Some(t) => Some(
                units
                    .iter()
                    .map(|(i, u)| Ok(encode(&inv.act_ring(&inv.monomial(*u, *i), &t)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let x = alg.x();
        let x_images = units
            .iter()
            .map(|(i, u)| Ok(encode(&inv.act(&inv.monomial(*u, *i), &x)?)))
            .collect::<Result<Vec<_>>>()?;
        let radix = (0..slots).flat_map(|_| self.radix.iter().copied()).collect();
        let var = alg.var();
        let labels = (0..size as usize)
            .map(|idx| {
                let mut rest = idx;
                let mut parts = Vec::new();
                for i in 0..slots {
                    let m = rest % self.size;
                    rest /= self.size;
                    if m != 0 {
                        let body = self.format(m);
                        let body = if body.contains([' ', '-', ',']) && i > 0 { format!("({body})") } else { body };
                        parts.push(match i {
                            0 => body,
                            _ if body == "1" => format!("{var}^-{i}"),
                            _ => format!("{body}*{var}^-{i}"),
                        });
                    }
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            })
            .collect();
        Self::from_parts(self.ring.clone(), radix, t_images, Some(x_images), Some(labels))
    }

    fn encode_with(radix: &[u64], digits: &[u64]) -> usize {
        let mut idx = 0usize;
        let mut unit = 1usize;
        for (d, v) in radix.iter().zip(digits) {
            idx += (v % d) as usize * unit;
            unit *= *d as usize;
        }
        idx
    }

    /// Indices of the unit vectors.
    fn units(&self) -> impl Iterator<Item = usize> + '_ {
        self.radix.iter().scan(1usize, |unit, d| {
            let u = *unit;
            *unit *= *d as usize;
            Some(u)
        })
    }

    fn extend_additive(&self, name: &str, images: &[usize]) -> Result<Vec<u32>> {
        if images.len() != self.radix.len() {
            return Err(Error::InvalidModule(format!("{name} needs {} images", self.radix.len())));
        }
        for (c, (img, d)) in images.iter().zip(&self.radix).enumerate() {
            if *img >= self.size {
                return Err(Error::InvalidModule(format!("{name} image {img} out of range")));
            }
            if self.scalar(*img, *d) != 0 {
                return Err(Error::InvalidModule(format!(
                    "{name} is not additive: generator {c} has order {d} but its image does not"
                )));
            }
        }
        Ok((0..self.size)
            .map(|m| {
                self.digits(m)
                    .zip(images)
                    .fold(0, |acc, (k, img)| self.add(acc, self.scalar(*img, k))) as u32
            })
            .collect())
    }

    /// `m * g(T) = 0` for the modulus `g` of a quotient carrier.
    fn check_modulus(&self) -> Result<()> {
        let Carrier::FpQuotient { modulus, .. } = self.ring.carrier() else {
            return Ok(());
        };
        let t = self.t_table.as_ref().expect("quotient carriers have a variable");
        for m in 0..self.size {
            let mut acc = 0;
            for coeff in modulus.iter().rev() {
                acc = self.add(t[acc] as usize, self.scalar(m, *coeff));
            }
            if acc != 0 {
                return Err(Error::InvalidModule(format!(
                    "element {} is not killed by the modulus of {}",
                    self.format(m),
                    self.ring.carrier()
                )));
            }
        }
        Ok(())
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.ring.size();
        if self.size * n * n > 1 << 24 {
            // T additive and killed by the modulus already imply the axioms.
            return Ok(());
        }
        let one = self.ring.one();
        let bad = (0..self.size).into_par_iter().find_map_any(|m| {
            if self.act(m, one) != m {
                return Some(format!("m*1 != m for m = {}", self.format(m)));
            }
            for r in 0..n {
                let mr = self.act(m, r);
                for s in 0..n {
                    if self.act(m, self.ring.mul(r, s)) != self.act(mr, s) {
                        return Some(format!(
                            "m(rs) != (mr)s for m = {}, r = {}, s = {}",
                            self.format(m),
                            self.ring.format(r),
                            self.ring.format(s)
                        ));
                    }
                    if self.act(m, self.ring.add(r, s)) != self.add(mr, self.act(m, s)) {
                        return Some(format!("m(r+s) != mr+ms for m = {}", self.format(m)));
                    }
                }
            }
            None
        });
        match bad {
            Some(msg) => Err(Error::InvalidModule(msg)),
            None => Ok(()),
        }
    }

    /// `(m x) r = sum_i (m sigma(delta^{i-1}(r))) x^i` for every `m` and `r`.
    fn check_ore_relation(&self) -> Result<()> {
        let twist = self.ring.twist();
        let bad = (0..self.ring.size()).into_par_iter().find_map_any(|r| {
            let orbit = twist.delta_orbit(self.ring.element(r)).ok()?;
            let coeffs: Vec<usize> = orbit
                .iter()
                .map(|d| self.ring.index(&twist.apply_sigma(d)).expect("closed"))
                .collect();
            (0..self.size).find_map(|m| {
                let lhs = self.act(self.x_act(m), r);
                let mut rhs = 0;
                for (i, c) in coeffs.iter().enumerate() {
                    let mut v = self.act(m, *c);
                    for _ in 0..=i {
                        v = self.x_act(v);
                    }
                    rhs = self.add(rhs, v);
                }
                (lhs != rhs).then(|| format!("(m x) r != m (x r) for m = {}, r = {}", self.format(m), self.ring.format(r)))
            })
        });
        match bad {
            Some(msg) => Err(Error::InvalidModule(msg)),
            None => Ok(()),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn radix(&self) -> &[u64] {
        &self.radix
    }

    pub fn is_ore_module(&self) -> bool {
        self.x_table.is_some()
    }

    fn digits(&self, m: usize) -> impl Iterator<Item = u64> + '_ {
        let mut rest = m as u64;
        self.radix.iter().map(move |d| {
            let v = rest % d;
            rest /= d;
            v
        })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut unit = 1u64;
        for d in &self.radix {
            out += ((a % d + b % d) % d) * unit;
            unit *= d;
            a /= d;
            b /= d;
        }
        out as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut a = a as u64;
        let mut out = 0u64;
        let mut unit = 1u64;
        for d in &self.radix {
            out += ((d - a % d) % d) * unit;
            unit *= d;
            a /= d;
        }
        out as usize
    }

    /// Integer multiple `k m`.
    pub fn scalar(&self, m: usize, k: u64) -> usize {
        let mut m = m as u64;
        let mut out = 0u64;
        let mut unit = 1u64;
        for d in &self.radix {
            out += ((m % d) * (k % d) % d) * unit;
            unit *= d;
            m /= d;
        }
        out as usize
    }

    /// `m T`, the action of the carrier variable.
    pub fn t_act(&self, m: usize) -> usize {
        self.t_table.as_ref().map_or(m, |t| t[m] as usize)
    }

    /// `m x`; identity-free modules without an `X` table return `m`.
    pub fn x_act(&self, m: usize) -> usize {
        self.x_table.as_ref().map_or(m, |x| x[m] as usize)
    }

    fn act_uncached(&self, m: usize, r: usize) -> usize {
        let digits: Vec<u64> = self.ring.digits(r).collect();
        let mut acc = 0;
        for k in digits.iter().rev() {
            acc = self.add(self.t_act(acc), self.scalar(m, *k));
        }
        acc
    }

    /// `m r` for a ring element index `r`.
    pub fn act(&self, m: usize, r: usize) -> usize {
        match &self.act_cache {
            Some(cache) => cache[m * self.ring.size() + r] as usize,
            None => self.act_uncached(m, r),
        }
    }

    pub fn format(&self, m: usize) -> String {
        if let Some(l) = &self.labels {
            return l[m].clone();
        }
        let digits: Vec<String> = self.digits(m).map(|d| d.to_string()).collect();
        match digits.len() {
            0 => "0".into(),
            1 => digits[0].clone(),
            _ => format!("({})", digits.join(", ")),
        }
    }

    pub fn zero_submodule(&self) -> Submodule {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert(0);
        Submodule { set, size: 1 }
    }

    pub fn full_submodule(&self) -> Submodule {
        let mut set = FixedBitSet::with_capacity(self.size);
        set.insert_range(..);
        Submodule { set, size: self.size }
    }

    /// The smallest submodule containing `base` and `gens`.
    pub fn closure_from(&self, base: &Submodule, gens: &[usize], scope: Scope) -> Submodule {
        let mut set = base.set.clone();
        let mut members: Vec<usize> = set.ones().collect();
        let mut queue: Vec<usize> = gens.to_vec();
        while let Some(g) = queue.pop() {
            if set.contains(g) {
                continue;
            }
            // S + <g> is the union of the cosets S + k g
            let old = members.clone();
            let mut kg = g;
            while !set.contains(kg) {
                for s in &old {
                    let e = self.add(*s, kg);
                    set.insert(e);
                    members.push(e);
                }
                kg = self.add(kg, g);
            }
            if self.t_table.is_some() {
                queue.push(self.t_act(g));
            }
            if scope == Scope::Ore && self.x_table.is_some() {
                queue.push(self.x_act(g));
            }
        }
        Submodule { size: members.len(), set }
    }

    pub fn submodule_closure(&self, gens: &[usize], scope: Scope) -> Submodule {
        self.closure_from(&self.zero_submodule(), gens, scope)
    }

    /// Check that a set of elements is a submodule.
    pub fn is_submodule(&self, set: &FixedBitSet, scope: Scope) -> bool {
        if !set.contains(0) {
            return false;
        }
        let members: Vec<usize> = set.ones().collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| set.contains(self.add(a, b)))
                && (0..self.ring.size()).all(|r| set.contains(self.act(a, r)))
                && (scope == Scope::Ring || set.contains(self.x_act(a)))
        })
    }

    /// Every submodule, in canonical order (by size, then by elements).
    pub fn all_submodules(&self, scope: Scope) -> Result<Lattice> {
        let zero = self.zero_submodule();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        seen.insert(zero.set.clone());
        let mut cyclic: Vec<(usize, Submodule)> = Vec::new();
        let candidates: Vec<(usize, Submodule)> = (1..self.size)
            .into_par_iter()
            .map(|m| (m, self.submodule_closure(&[m], scope)))
            .collect();
        for (m, c) in candidates {
            if seen.insert(c.set.clone()) {
                cyclic.push((m, c));
            }
        }
        let mut members: Vec<Submodule> = vec![zero];
        members.extend(cyclic.iter().map(|(_, c)| c.clone()));
        let mut frontier: Vec<Submodule> = members[1..].to_vec();
        while !frontier.is_empty() {
            if members.len() > LATTICE_CAP {
                return Err(Error::LatticeTooLarge { cap: LATTICE_CAP });
            }
            let mut joins: Vec<Submodule> = frontier
                .par_iter()
                .flat_map_iter(|x| {
                    cyclic
                        .iter()
                        .filter(|(_, c)| !c.set.is_subset(&x.set))
                        .map(|(m, _)| self.closure_from(x, &[*m], scope))
                        .collect::<Vec<_>>()
                })
                .collect();
            joins.sort();
            frontier = Vec::new();
            for j in joins {
                if seen.insert(j.set.clone()) {
                    members.push(j.clone());
                    frontier.push(j);
                }
            }
        }
        if members.len() > LATTICE_CAP {
            return Err(Error::LatticeTooLarge { cap: LATTICE_CAP });
        }
        members.sort();
        Ok(Lattice { scope, members })
    }
}

impl RightModule for FiniteModule {
    type Elem = usize;

    fn carrier(&self) -> &Carrier {
        self.ring.carrier()
    }

    fn contains(&self, m: &usize) -> bool {
        *m < self.size
    }

    fn zero(&self) -> usize {
        0
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        FiniteModule::add(self, *a, *b)
    }

    fn neg(&self, a: &usize) -> usize {
        FiniteModule::neg(self, *a)
    }

    fn act(&self, m: &usize, r: &RingElement) -> usize {
        let r = self.ring.index(r).expect("ring element of the module's carrier");
        FiniteModule::act(self, *m, r)
    }

    fn format(&self, m: &usize) -> String {
        FiniteModule::format(self, *m)
    }
}

/// A submodule, stored as the set of its element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Submodule {
    set: FixedBitSet,
    size: usize,
}

impl Submodule {
    pub fn from_set(set: FixedBitSet) -> Self {
        let size = set.count_ones(..);
        Submodule { set, size }
    }

    pub fn contains(&self, m: usize) -> bool {
        self.set.contains(m)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.size == 1
    }

    /// Always false: a submodule contains zero.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_full(&self, module: &FiniteModule) -> bool {
        self.size == module.size()
    }

    pub fn set(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.ones()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        let mut set = self.set.clone();
        set.intersect_with(&other.set);
        Submodule::from_set(set)
    }

    pub fn describe(&self, module: &FiniteModule) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if self.is_full(module) {
            return "M".into();
        }
        let parts: Vec<String> = self.set.ones().map(|m| module.format(m)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| self.set.ones().cmp(other.set.ones()))
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The complete submodule lattice of a finite module.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub scope: Scope,
    pub members: Vec<Submodule>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Submodule> {
        self.members.iter()
    }

    /// Members containing `n`.
    pub fn above<'a>(&'a self, n: &'a Submodule) -> impl Iterator<Item = &'a Submodule> {
        self.members.iter().filter(move |s| n.is_subset(s))
    }

    /// Members contained in `n`.
    pub fn below<'a>(&'a self, n: &'a Submodule) -> impl Iterator<Item = &'a Submodule> {
        self.members.iter().filter(move |s| s.is_subset(n))
    }

    pub fn contains(&self, s: &Submodule) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Proper members not strictly contained in another proper member.
    pub fn maximal(&self, module: &FiniteModule) -> Vec<&Submodule> {
        let proper: Vec<&Submodule> = self.members.iter().filter(|s| !s.is_full(module)).collect();
        proper
            .iter()
            .filter(|s| !proper.iter().any(|t| t.size > s.size && s.is_subset(t)))
            .copied()
            .collect()
    }
}

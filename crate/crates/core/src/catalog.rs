//! Preset algebras with their defining relations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{parse_poly, parse_ring};
use crate::ring::{Carrier, DeltaSpec, RingElement, TwistedRing};
use crate::skew::OreAlgebra;

/// Preset names with a one-line description.
pub const PRESETS: [(&str, &str); 6] = [
    ("quantum_plane", "F[y](x; sigma), sigma(y) = q*y: xy = qyx"),
    ("jordan_plane", "F[x](y; delta), delta(x) = 1: yx = xy + y^2"),
    ("q_meromorphic_weyl", "F[y](x; sigma, delta), sigma(y) = y/q, delta(y) = -1/q: yx = qxy + x^2"),
    ("q_zero_bc", "F[x](y; sigma, delta), sigma(x) = b*x, delta(x) = c: yx = bxy + cy^2"),
    ("trimmed_double_extension", "F[y2](y1; sigma, delta): y2y1 = p12 y1y2 + p11 y1^2"),
    ("skew_poly_ring", "R[x; sigma] with delta = 0, over Z/n or F[t]"),
];

/// Parameters of the finite variant of each preset.
pub fn finite_params(name: &str) -> Result<BTreeMap<String, String>> {
    let pairs: &[(&str, &str)] = match canonical_name(name)? {
        "quantum_plane" => &[("p", "5"), ("q", "2"), ("k", "3")],
        "jordan_plane" => &[("p", "3"), ("k", "3")],
        "q_meromorphic_weyl" => &[("p", "5"), ("q", "2"), ("k", "4")],
        "q_zero_bc" => &[("p", "3"), ("b", "2"), ("c", "1"), ("k", "2")],
        "trimmed_double_extension" => &[("p", "3"), ("p12", "2"), ("p11", "1"), ("k", "2")],
        _ => &[("n", "4")],
    };
    Ok(pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
}

fn canonical_name(name: &str) -> Result<&'static str> {
    Ok(match name {
        "quantum_plane" | "quantum" => "quantum_plane",
        "jordan_plane" | "jordan" => "jordan_plane",
        "q_meromorphic_weyl" | "q_mero" => "q_meromorphic_weyl",
        "q_zero_bc" => "q_zero_bc",
        "trimmed_double_extension" | "trimmed" => "trimmed_double_extension",
        "skew_poly_ring" | "skew" => "skew_poly_ring",
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

/// A defining relation, written as two expressions that must normalize to
/// the same element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

/// A named algebra: twist data, Ore variable and defining relations.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub twist: TwistedRing,
    pub ore_var: String,
    pub relations: Vec<Relation>,
}

impl AlgebraSpec {
    pub fn algebra(&self) -> Result<Arc<OreAlgebra>> {
        OreAlgebra::new(self.twist.clone(), &self.ore_var)
    }

    /// Normalize both sides of every relation.
    pub fn check_relations(&self) -> Result<Vec<RelationCheck>> {
        let alg = self.algebra()?;
        self.relations
            .iter()
            .map(|rel| {
                let lhs = parse_poly(&alg, &rel.lhs)?;
                let rhs = parse_poly(&alg, &rel.rhs)?;
                Ok(RelationCheck {
                    name: rel.name.clone(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                    passed: lhs == rhs,
                })
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if params.is_empty() {
            self.name.clone()
        } else {
            format!("{}({})", self.name, params.join(", "))
        }
    }
}

struct Params<'a> {
    given: &'a BTreeMap<String, String>,
    used: BTreeMap<String, String>,
}

impl Params<'_> {
    fn raw(&mut self, key: &str, default: &str) -> String {
        let v = self.given.get(key).cloned().unwrap_or_else(|| default.to_string());
        self.used.insert(key.to_string(), v.clone());
        v
    }

    fn int(&mut self, key: &str, default: u64) -> Result<u64> {
        let v = self.raw(key, &default.to_string());
        v.trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{key} = {v} is not a nonnegative integer")))
    }

    fn scalar(&mut self, c: &Carrier, key: &str, default: &str) -> Result<RingElement> {
        let v = self.raw(key, default);
        let s = parse_ring(c, &v).map_err(|e| Error::InvalidParameter(format!("{key} = {v}: {e}")))?;
        if c.degree(&s).unwrap_or(0) > 0 {
            return Err(Error::InvalidParameter(format!("{key} = {v} is not a scalar")));
        }
        Ok(s)
    }

    fn finish(self) -> Result<BTreeMap<String, String>> {
        if let Some(k) = self.given.keys().find(|k| !self.used.contains_key(*k)) {
            return Err(Error::InvalidParameter(format!("unknown parameter `{k}`")));
        }
        Ok(self.used)
    }
}

/// The polynomial carrier in `var`: `F_p[var]`, `Q[var]` when `p = 0`, or
/// `F_p[var]/(var^k)` when `k > 0`.
fn poly_carrier(params: &mut Params<'_>, var: &str, p_default: u64) -> Result<Carrier> {
    let p = params.int("p", p_default)?;
    let k = if params.given.contains_key("k") { params.int("k", 0)? } else { 0 };
    match (p, k) {
        (0, 0) => Carrier::q_poly(var),
        (0, _) => Err(Error::InvalidParameter("truncation needs a prime p".into())),
        (p, 0) => Carrier::fp_poly(p, var),
        (p, k) => Carrier::truncated(p, var, k as usize),
    }
}

fn invert(c: &Carrier, key: &str, s: &RingElement) -> Result<RingElement> {
    c.invert(s)
        .ok_or_else(|| Error::InvalidParameter(format!("{key} = {} is not invertible", c.format(s))))
}

fn lit(c: &Carrier, s: &RingElement) -> String {
    format!("({})", c.format(s))
}

fn rel(name: &str, lhs: String, rhs: String) -> Relation {
    Relation { name: name.into(), lhs, rhs }
}

/// Build a preset; its relations are checked before it is returned.
pub fn preset(name: &str, given: &BTreeMap<String, String>) -> Result<AlgebraSpec> {
    let name = canonical_name(name)?;
    let mut params = Params { given, used: BTreeMap::new() };
    let (twist, ore_var, relations) = match name {
        "quantum_plane" => {
            let c = poly_carrier(&mut params, "y", 5)?;
            let q = params.scalar(&c, "q", "2")?;
            invert(&c, "q", &q)?;
            let y = c.generator().expect("polynomial carrier");
            let t = TwistedRing::new(c.clone(), Some(c.mul(&q, &y)), None, DeltaSpec::Zero)?;
            (t, "x", vec![rel("xy = qyx", "x*y".into(), format!("{}*y*x", lit(&c, &q)))])
        }
        "jordan_plane" => {
            let c = poly_carrier(&mut params, "x", 0)?;
            let t = TwistedRing::new(c.clone(), None, None, DeltaSpec::Derivation(c.one()))?;
            (t, "y", vec![rel("yx = xy + y^2", "y*x".into(), "x*y + y^2".into())])
        }
        "q_meromorphic_weyl" => {
            let c = poly_carrier(&mut params, "y", 0)?;
            let q = params.scalar(&c, "q", "2")?;
            let qi = invert(&c, "q", &q)?;
            let shift = invert(&c, "q - 1", &c.sub(&q, &c.one()))?;
            let y = c.generator().expect("polynomial carrier");
            let t = TwistedRing::new(c.clone(), Some(c.mul(&qi, &y)), None, DeltaSpec::Derivation(c.neg(&qi)))?;
            let (q, shift) = (lit(&c, &q), lit(&c, &shift));
            let big_y = format!("(y + {shift}*x)");
            (
                t,
                "x",
                vec![
                    rel("yx = qxy + x^2", "y*x".into(), format!("{q}*x*y + x^2")),
                    rel("Yx = qxY for Y = y + (q-1)^-1 x", format!("{big_y}*x"), format!("{q}*x*{big_y}")),
                ],
            )
        }
        "q_zero_bc" => {
            let c = poly_carrier(&mut params, "x", 0)?;
            let b = params.scalar(&c, "b", "2")?;
            let cc = params.scalar(&c, "c", "1")?;
            invert(&c, "b", &b)?;
            let x = c.generator().expect("polynomial carrier");
            let t = TwistedRing::new(c.clone(), Some(c.mul(&b, &x)), None, DeltaSpec::Derivation(cc.clone()))?;
            (t, "y", vec![rel("yx = bxy + cy^2", "y*x".into(), format!("{}*x*y + {}*y^2", lit(&c, &b), lit(&c, &cc)))])
        }
        "trimmed_double_extension" => {
            let c = poly_carrier(&mut params, "y2", 0)?;
            let p12 = params.scalar(&c, "p12", "2")?;
            let p11 = params.scalar(&c, "p11", "1")?;
            let inv = invert(&c, "p12", &p12)?;
            let y2 = c.generator().expect("polynomial carrier");
            let delta = c.neg(&c.mul(&inv, &p11));
            let t = TwistedRing::new(c.clone(), Some(c.mul(&inv, &y2)), None, DeltaSpec::Derivation(delta))?;
            (
                t,
                "y1",
                vec![rel(
                    "y2y1 = p12 y1y2 + p11 y1^2",
                    "y2*y1".into(),
                    format!("{}*y1*y2 + {}*y1^2", lit(&c, &p12), lit(&c, &p11)),
                )],
            )
        }
        _ => {
            if params.given.contains_key("p") {
                let c = poly_carrier(&mut params, "t", 0)?;
                let s = params.scalar(&c, "s", "1")?;
                invert(&c, "s", &s)?;
                let t_gen = c.generator().expect("polynomial carrier");
                let t = TwistedRing::new(c.clone(), Some(c.mul(&s, &t_gen)), None, DeltaSpec::Zero)?;
                (t, "x", vec![rel("xt = stx", "x*t".into(), format!("{}*t*x", lit(&c, &s)))])
            } else {
                let n = params.int("n", 4)?;
                let c = Carrier::zmod(n)?;
                (TwistedRing::untwisted(c), "x", vec![rel("x3 = 3x", "x*3".into(), "3*x".into())])
            }
        }
    };
    let twist = match params.given.get("cap") {
        Some(_) => {
            let cap = params.int("cap", 64)?;
            twist.with_nilpotency_cap(cap as usize)?
        }
        None => twist,
    };
    let spec = AlgebraSpec {
        name: name.to_string(),
        params: params.finish()?,
        twist,
        ore_var: ore_var.to_string(),
        relations,
    };
    if let Some(bad) = spec.check_relations()?.into_iter().find(|r| !r.passed) {
        return Err(Error::RelationFailed {
            relation: bad.name,
            detail: format!("{} != {}", bad.lhs, bad.rhs),
        });
    }
    Ok(spec)
}

/// The preset with its default parameters.
pub fn default_preset(name: &str) -> Result<AlgebraSpec> {
    preset(name, &BTreeMap::new())
}

/// The preset over a finite carrier.
pub fn finite_preset(name: &str) -> Result<AlgebraSpec> {
    preset(name, &finite_params(name)?)
}

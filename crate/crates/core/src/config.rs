//! Algebra and module fixtures in a sectioned `key = value` format.
//!
//! Lines starting with `;` or `#` are comments. Recognized keys:
//!
//! ```text
//! [ring]
//! carrier = zmod | fp | q | truncated | quotient
//! n = 4               (zmod: Z/n)
//! p = 3               (fp, truncated, quotient)
//! var = t             (default t)
//! k = 3               (truncated: F_p[t]/(t^k))
//! modulus = t^2 + t   (quotient: F_p[t]/(modulus))
//! ore_var = x         (default x)
//! name = label
//!
//! [twist]
//! sigma = t + 1       (image of the variable; identity when absent)
//! sigma_inv = t + 1   (optional)
//! delta = 1           (a sigma-derivation by its value on the variable)
//! delta_basis = 0, 1  (or an additive map by its values on 1, t, t^2, ...)
//! nilpotency_cap = 64
//!
//! [module]
//! quotient = t        (R/I for the right ideal generated by the list)
//! orders = 2, 2       (or the group Z/2 + Z/2 with action rows:)
//! t = 0 1 | 1 0       (images of the unit vectors under t)
//! x = 0 0 | 1 0       (and, optionally, under the Ore variable)
//! ```
//!
//! Instead of the carrier keys, `[ring]` may name a catalog preset with
//! `preset = NAME`; the remaining keys are then preset parameters.
//! Values in `[twist]` and `quotient` are expressions in the carrier variable.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use ini::{Ini, ParseOption, Properties};

use crate::catalog::{preset, AlgebraSpec};
use crate::error::{Error, Result};
use crate::expr::parse_ring;
use crate::finite::{FiniteModule, FiniteRing};
use crate::ring::{Carrier, DeltaSpec, RingElement, TwistedRing};

const RING_KEYS: [&str; 8] = ["carrier", "p", "var", "k", "modulus", "n", "ore_var", "name"];
const TWIST_KEYS: [&str; 5] = ["sigma", "sigma_inv", "delta", "delta_basis", "nilpotency_cap"];
const MODULE_KEYS: [&str; 4] = ["quotient", "orders", "t", "x"];

/// A finite module fixture, resolved against a ring at build time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Quotient(Vec<String>),
    Action {
        orders: Vec<u64>,
        t: Option<Vec<Vec<u64>>>,
        x: Option<Vec<Vec<u64>>>,
    },
}

impl ModuleSpec {
    pub fn build(&self, ring: Arc<FiniteRing>) -> Result<FiniteModule> {
        match self {
            ModuleSpec::Quotient(gens) => {
                let gens = gens
                    .iter()
                    .map(|g| parse_ring(ring.carrier(), g))
                    .collect::<Result<Vec<_>>>()?;
                FiniteModule::cyclic_quotient(ring, &gens)
            }
            ModuleSpec::Action { orders, t, x } => {
                FiniteModule::from_group_action(ring, orders.clone(), t.clone(), x.clone())
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ModuleSpec::Quotient(gens) => format!("R/({})", gens.join(", ")),
            ModuleSpec::Action { orders, .. } => {
                let parts: Vec<String> = orders.iter().map(|d| format!("Z/{d}")).collect();
                parts.join(" + ")
            }
        }
    }
}

/// The contents of a fixture file.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub algebra: Option<AlgebraSpec>,
    pub module: Option<ModuleSpec>,
}

fn parse_ini(text: &str) -> Result<Ini> {
    let opt = ParseOption { enabled_escape: false, ..ParseOption::default() };
    Ini::load_from_str_opt(text, opt).map_err(|e| Error::Config(e.to_string()))
}

fn check_keys(section: &str, props: &Properties, allowed: &[&str]) -> Result<()> {
    match props.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(Error::Config(format!("unknown key `{k}` in [{section}]"))),
        None => Ok(()),
    }
}

fn int<T: std::str::FromStr>(props: &Properties, key: &str) -> Result<Option<T>> {
    props
        .get(key)
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Config(format!("`{key} = {v}` is not a nonnegative integer")))
        })
        .transpose()
}

fn required<T: std::str::FromStr>(props: &Properties, key: &str) -> Result<T> {
    int(props, key)?.ok_or_else(|| Error::Config(format!("[ring] needs `{key}`")))
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn carrier(props: &Properties) -> Result<Carrier> {
    let var = props.get("var").unwrap_or("t").trim();
    let kind = props.get("carrier").ok_or_else(|| Error::Config("[ring] needs `carrier`".into()))?;
    match kind.trim() {
        "zmod" => Carrier::zmod(required(props, "n")?),
        "fp" => Carrier::fp_poly(required(props, "p")?, var),
        "q" => Carrier::q_poly(var),
        "truncated" => Carrier::truncated(required(props, "p")?, var, required(props, "k")?),
        "quotient" => {
            let p: u64 = required(props, "p")?;
            let text = props.get("modulus").ok_or_else(|| Error::Config("[ring] needs `modulus`".into()))?;
            let modulus = match parse_ring(&Carrier::fp_poly(p, var)?, text)? {
                RingElement::Fp(c) => c,
                _ => unreachable!("F_p[t] elements are Fp"),
            };
            Carrier::fp_quotient(p, var, modulus)
        }
        other => Err(Error::Config(format!("unknown carrier `{other}`"))),
    }
}

fn twist(c: Carrier, props: Option<&Properties>) -> Result<TwistedRing> {
    let Some(props) = props else {
        return Ok(TwistedRing::untwisted(c));
    };
    check_keys("twist", props, &TWIST_KEYS)?;
    let elem = |key: &str| props.get(key).map(|v| parse_ring(&c, v)).transpose();
    let sigma = elem("sigma")?;
    let sigma_inv = elem("sigma_inv")?;
    let delta = match (props.get("delta"), props.get("delta_basis")) {
        (Some(_), Some(_)) => return Err(Error::Config("give either `delta` or `delta_basis`".into())),
        (Some(v), None) => DeltaSpec::Derivation(parse_ring(&c, v)?),
        (None, Some(v)) => {
            DeltaSpec::Additive(list(v).iter().map(|e| parse_ring(&c, e)).collect::<Result<_>>()?)
        }
        (None, None) => DeltaSpec::Zero,
    };
    let t = TwistedRing::new(c, sigma, sigma_inv, delta)?;
    match int(props, "nilpotency_cap")? {
        Some(cap) => t.with_nilpotency_cap(cap),
        None => Ok(t),
    }
}

fn algebra(ini: &Ini) -> Result<Option<AlgebraSpec>> {
    let Some(ring) = ini.section(Some("ring")) else {
        if ini.section(Some("twist")).is_some() {
            return Err(Error::Config("[twist] without [ring]".into()));
        }
        return Ok(None);
    };
    if let Some(name) = ring.get("preset") {
        if ini.section(Some("twist")).is_some() {
            return Err(Error::Config("a preset cannot be combined with [twist]".into()));
        }
        let params: BTreeMap<String, String> = ring
            .iter()
            .filter(|(k, _)| *k != "preset")
            .map(|(k, v)| (k.to_string(), v.trim().to_string()))
            .collect();
        return preset(name.trim(), &params).map(Some);
    }
    check_keys("ring", ring, &RING_KEYS)?;
    let c = carrier(ring)?;
    let twist = twist(c, ini.section(Some("twist")))?;
    let params = ring
        .iter()
        .filter(|(k, _)| *k != "name")
        .map(|(k, v)| (k.to_string(), v.trim().to_string()))
        .collect();
    Ok(Some(AlgebraSpec {
        name: ring.get("name").unwrap_or("config").trim().to_string(),
        params,
        twist,
        ore_var: ring.get("ore_var").unwrap_or("x").trim().to_string(),
        relations: Vec::new(),
    }))
}

fn rows(v: &str, width: usize) -> Result<Vec<Vec<u64>>> {
    if v.split('|').count() != width {
        return Err(Error::Config(format!("`{v}` should have {width} rows")));
    }
    v.split('|')
        .map(|row| {
            let row: Vec<u64> = row
                .split_whitespace()
                .map(|d| d.parse().map_err(|_| Error::Config(format!("`{d}` is not an integer"))))
                .collect::<Result<_>>()?;
            if row.len() != width {
                return Err(Error::Config(format!("action row `{row:?}` should have {width} entries")));
            }
            Ok(row)
        })
        .collect()
}

fn module(ini: &Ini) -> Result<Option<ModuleSpec>> {
    let Some(props) = ini.section(Some("module")) else {
        return Ok(None);
    };
    check_keys("module", props, &MODULE_KEYS)?;
    match (props.get("quotient"), props.get("orders")) {
        (Some(q), None) => Ok(Some(ModuleSpec::Quotient(list(q)))),
        (None, Some(o)) => {
            let orders: Vec<u64> = list(o)
                .iter()
                .map(|d| d.parse().map_err(|_| Error::Config(format!("`{d}` is not an order"))))
                .collect::<Result<_>>()?;
            let t = props.get("t").map(|v| rows(v, orders.len())).transpose()?;
            let x = props.get("x").map(|v| rows(v, orders.len())).transpose()?;
            Ok(Some(ModuleSpec::Action { orders, t, x }))
        }
        _ => Err(Error::Config("[module] needs exactly one of `quotient` and `orders`".into())),
    }
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let ini = parse_ini(text)?;
    for section in ini.sections().flatten() {
        if !["ring", "twist", "module"].contains(&section) {
            return Err(Error::Config(format!("unknown section [{section}]")));
        }
    }
    Ok(Fixture { algebra: algebra(&ini)?, module: module(&ini)? })
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_fixture(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_field_fixture() {
        let fx = parse_fixture("[ring]\ncarrier = zmod\nn = 4\n\n[module]\nquotient = 2\n").unwrap();
        let alg = fx.algebra.unwrap();
        let ring = Arc::new(FiniteRing::new(alg.twist).unwrap());
        let m = fx.module.unwrap().build(ring).unwrap();
        assert_eq!(m.size(), 2);
    }

    #[test]
    fn twisted_quotient_fixture() {
        let text = "\
; F_2[t]/(t^2 + t) with the idempotents swapped
[ring]
carrier = quotient
p = 2
modulus = t^2 + t
[twist]
sigma = t + 1
[module]
orders = 2
t = 0
";
        let fx = parse_fixture(text).unwrap();
        let alg = fx.algebra.unwrap();
        assert!(!alg.twist.sigma_is_identity());
        let ring = Arc::new(FiniteRing::new(alg.twist).unwrap());
        let m = fx.module.unwrap().build(ring).unwrap();
        assert_eq!(m.size(), 2);
    }

    #[test]
    fn preset_reference() {
        let fx = parse_fixture("[ring]\npreset = jordan_plane\np = 3\nk = 3\n").unwrap();
        assert_eq!(fx.algebra.unwrap().name, "jordan_plane");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_fixture("[ring]\ncarrier = zmod\n"), Err(Error::Config(_))));
        assert!(matches!(parse_fixture("[ring]\ncarrier = zmod\nn = 4\nbogus = 1\n"), Err(Error::Config(_))));
        assert!(matches!(parse_fixture("[other]\n"), Err(Error::Config(_))));
        assert!(matches!(parse_fixture("[module]\norders = 2, 2\nt = 1 0\n"), Err(Error::Config(_))));
        assert!(parse_fixture("[ring]\ncarrier = fp\np = 3\n[twist]\nsigma = t^2\n").is_err());
    }
}

mod common;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use common::*;
use proptest::prelude::*;
use rand::Rng;
use skewore::catalog::preset;
use skewore::expr::{eval_inv, parse};
use skewore::finite::compat::{annihilator, annihilator_of_quotient};
use skewore::finite::is_completely_compatible;
use skewore::{
    parse_poly, parse_ring, Check, Degree, FiniteModule, InvModule, OreAlgebra, ReportEnvelope, RingQuotient, Scope,
};

fn algebras() -> &'static [(String, Arc<OreAlgebra>)] {
    static CELL: OnceLock<Vec<(String, Arc<OreAlgebra>)>> = OnceLock::new();
    CELL.get_or_init(catalog_algebras)
}

fn modules() -> &'static [(String, FiniteModule)] {
    static CELL: OnceLock<Vec<(String, FiniteModule)>> = OnceLock::new();
    CELL.get_or_init(|| module_fixtures(32))
}

fn pick(idx: prop::sample::Index) -> &'static (String, Arc<OreAlgebra>) {
    let all = algebras();
    &all[idx.index(all.len())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_distributive(idx: prop::sample::Index, seed: u64) {
        let (name, alg) = pick(idx);
        let mut rng = rng(seed);
        let a = alg.random(&mut rng, 2, 3);
        let b = alg.random(&mut rng, 2, 3);
        let c = alg.random(&mut rng, 2, 3);
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc, "{}", name);
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right, "{}", name);
        prop_assert_eq!(a.mul(&alg.one()).unwrap(), a.clone());
        prop_assert_eq!(alg.one().mul(&a).unwrap(), a);
    }

    #[test]
    fn degree_of_products_without_derivation(idx: prop::sample::Index, seed: u64) {
        let plain: Vec<_> = algebras().iter().filter(|(_, a)| a.twist().delta_is_zero()).collect();
        let (name, alg) = plain[idx.index(plain.len())];
        let c = alg.carrier();
        let mut rng = rng(seed);
        let f = alg.random(&mut rng, 2, 3);
        let g = alg.random(&mut rng, 2, 3);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (n, m) = (f.degree().finite().unwrap(), g.degree().finite().unwrap());
        let top = c.mul(&f.leading_coeff().unwrap(), &alg.twist().apply_sigma_pow(&g.leading_coeff().unwrap(), n));
        let product = f.mul(&g).unwrap();
        let expected = if c.is_zero(&top) { product.degree() < Degree::Finite(n + m) } else { product.degree() == Degree::Finite(n + m) };
        prop_assert!(expected, "{}: deg({}) with f = {}, g = {}", name, product, f, g);
    }

    #[test]
    fn action_never_deepens(idx: prop::sample::Index, seed: u64) {
        let (name, alg) = pick(idx);
        let c = alg.carrier().clone();
        let inv = InvModule::new(alg.clone(), RingQuotient::regular(c.clone())).unwrap();
        let mut rng = rng(seed);
        let m = inv.from_coeffs((0..4).map(|_| c.random(&mut rng, 2)).collect()).unwrap();
        prop_assume!(!m.is_zero());
        let acted = inv.act(&m, &alg.random(&mut rng, 2, 3)).unwrap();
        if let Some(d) = acted.degree() {
            prop_assert!(d >= m.degree().unwrap(), "{}", name);
        }
    }

    #[test]
    fn action_is_a_right_module(idx: prop::sample::Index, seed: u64) {
        let (name, alg) = pick(idx);
        let c = alg.carrier().clone();
        let inv = InvModule::new(alg.clone(), RingQuotient::regular(c.clone())).unwrap();
        let mut rng = rng(seed);
        let depth = rng.gen_range(0..=3);
        let m = inv.from_coeffs((0..=depth).map(|_| c.random(&mut rng, 2)).collect()).unwrap();
        let n = inv.from_coeffs((0..=depth).map(|_| c.random(&mut rng, 2)).collect()).unwrap();
        let f = alg.random(&mut rng, 2, 2);
        let g = alg.random(&mut rng, 2, 2);
        let lhs = inv.act(&inv.act(&m, &f).unwrap(), &g).unwrap();
        prop_assert_eq!(lhs, inv.act(&m, &f.mul(&g).unwrap()).unwrap(), "{}", name);
        let sum = inv.act(&m, &f.add(&g).unwrap()).unwrap();
        prop_assert_eq!(sum, inv.add(&inv.act(&m, &f).unwrap(), &inv.act(&m, &g).unwrap()));
        let sum = inv.act(&inv.add(&m, &n), &f).unwrap();
        prop_assert_eq!(sum, inv.add(&inv.act(&m, &f).unwrap(), &inv.act(&n, &f).unwrap()));
        prop_assert!(inv.act(&m, &alg.zero()).unwrap().is_zero());
    }

    #[test]
    fn f_operator_matches_word_oracle(idx: prop::sample::Index, seed: u64, (j, i) in (0usize..=5).prop_flat_map(|j| (Just(j), 0..=j))) {
        let (name, alg) = pick(idx);
        let r = alg.carrier().random(&mut rng(seed), 3);
        prop_assert_eq!(alg.f_op(j, i, &r).unwrap(), alg.f_op_word_oracle(j, i, &r).unwrap(), "{}", name);
    }

    #[test]
    fn inverse_printing_round_trips(idx: prop::sample::Index, seed: u64) {
        let (name, alg) = pick(idx);
        let c = alg.carrier().clone();
        let inv = InvModule::new(alg.clone(), RingQuotient::regular(c.clone())).unwrap();
        let mut rng = rng(seed);
        let m = inv.from_coeffs((0..4).map(|_| c.random(&mut rng, 2)).collect()).unwrap();
        let text = inv.format(&m);
        let back = eval_inv(&inv, &parse(&text).unwrap(), &|r| inv.module().class_of(&r)).unwrap();
        prop_assert_eq!(back, m, "{}: {}", name, text);
    }

    #[test]
    fn lattice_is_closed_under_meet_and_join(idx: prop::sample::Index) {
        let (name, module) = &modules()[idx.index(modules().len())];
        let lattice = module.all_submodules(Scope::Ring).unwrap();
        for a in lattice.iter() {
            for b in lattice.iter() {
                prop_assert!(lattice.contains(&a.intersection(b)), "{}", name);
                let gens: Vec<usize> = b.elements().collect();
                prop_assert!(lattice.contains(&module.closure_from(a, &gens, Scope::Ring)), "{}", name);
            }
        }
    }

    #[test]
    fn quotient_annihilator_contains_annihilator(idx: prop::sample::Index) {
        let (name, module) = &modules()[idx.index(modules().len())];
        let ann = annihilator(module);
        for n in module.all_submodules(Scope::Ring).unwrap().iter() {
            prop_assert!(annihilator_of_quotient(module, n).is_superset(&ann), "{}", name);
        }
    }

    #[test]
    fn complete_compatibility_passes_to_quotients(idx: prop::sample::Index) {
        let (name, module) = &modules()[idx.index(modules().len())];
        let complete = is_completely_compatible(module).unwrap().passed();
        let maps = maps(module.ring());
        let table = Table::from_module(module);
        prop_assert_eq!(complete, table.completely_compatible(&maps.sigma, &maps.delta), "{}", name);
        if complete {
            let zero = table.closure(&[]);
            prop_assert_eq!(table.quotient_compatible(&zero, &maps.sigma, &maps.delta), (true, true));
            prop_assert!(table.completely_compatible(&maps.sigma_prime, &maps.delta_prime), "{}", name);
            for n in table.lattice() {
                prop_assert!(table.quotient(&n).completely_compatible(&maps.sigma, &maps.delta), "{}", name);
            }
        }
    }

    #[test]
    fn preset_twists_are_valid(q in 1u64..5, b in 1u64..5, c in 0u64..5, p11 in 0u64..5) {
        let param = |pairs: &[(&str, u64)]| -> BTreeMap<String, String> {
            pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
        };
        let specs = [
            preset("quantum_plane", &param(&[("p", 5), ("q", q), ("k", 3)])),
            preset("q_zero_bc", &param(&[("p", 5), ("b", b), ("c", c), ("k", 2)])),
            preset("trimmed_double_extension", &param(&[("p", 5), ("p12", b), ("p11", p11), ("k", 2)])),
        ];
        for spec in specs {
            let spec = match spec {
                Ok(spec) => spec,
                Err(e) => {
                    prop_assert!(matches!(e, skewore::Error::IllDefinedTwist(_)), "{}", e);
                    continue;
                }
            };
            let report = spec.twist.validate_twist();
            prop_assert!(report.all_passed() && report.exhaustive, "{}", spec.describe());
        }
    }

    #[test]
    fn report_envelope_round_trips(
        command in "[a-z-]{1,12}",
        seed: u64,
        bound in proptest::option::of(0usize..10),
        checks in proptest::collection::vec(("[a-z ]{1,10}", any::<bool>(), proptest::option::of("[ -~]{0,12}")), 0..4),
    ) {
        let mut r = ReportEnvelope::new(&command, "jordan_plane(p=0)", seed);
        r.bound = bound;
        r.checks = checks.into_iter().map(|(n, ok, w)| Check::new(n, ok, w)).collect();
        r.result = serde_json::json!({ "value": seed.to_string() });
        let back = ReportEnvelope::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), r.to_json());
        prop_assert_eq!(back.passed(), r.passed());
    }
}

#[test]
fn normal_forms_round_trip_through_the_parser() {
    for (name, alg) in algebras() {
        let mut rng = rng(21);
        for _ in 0..1000 {
            let f = alg.random(&mut rng, 3, 3);
            let text = f.to_string();
            assert_eq!(parse_poly(alg, &text).unwrap(), f, "{name}: {text}");
        }
    }
}

#[test]
fn ring_elements_round_trip_through_the_parser() {
    for (name, alg) in algebras() {
        let c = alg.carrier();
        let mut rng = rng(22);
        for _ in 0..200 {
            let r = c.random(&mut rng, 4);
            assert_eq!(parse_ring(c, &c.format(&r)).unwrap(), r, "{name}");
        }
    }
}

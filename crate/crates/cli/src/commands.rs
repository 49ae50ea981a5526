use serde_json::{json, Value};
use skewore::catalog::{default_preset, PRESETS};
use skewore::expr::{eval_inv, parse};
use skewore::finite::{check_completely, is_bass, is_coprime_module, is_prime_module, Direction};
use skewore::primes::{
    ass_primes, att_primes, verify_annihilator_lemma, verify_att_equality, verify_att_inclusion, AttReport,
};
use skewore::{
    check_product_relation, parse_poly, parse_ring, Check, Error, FiniteModule, InvModule, ModuleSpec,
    ReportEnvelope, RingQuotient, Scope, Status,
};

use crate::{Command, Context};

type Result<T> = std::result::Result<T, Error>;

pub(crate) fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Normalize { .. } => "normalize",
        Command::Mul { .. } => "mul",
        Command::OreSwap { .. } => "ore-swap",
        Command::Finv { .. } => "finv",
        Command::Act { .. } => "act",
        Command::CompatCheck => "compat-check",
        Command::Att => "att",
        Command::Ass => "ass",
        Command::VerifyLemma { .. } => "verify-lemma",
        Command::VerifyTheorem => "verify-theorem",
        Command::ProductProbe { .. } => "product-probe",
        Command::Catalog => "catalog",
    }
}

fn envelope(ctx: &Context) -> ReportEnvelope {
    let algebra = ctx.spec.as_ref().map(|s| s.describe()).unwrap_or_default();
    ReportEnvelope::new(name(&ctx.cli.command), &algebra, ctx.cli.seed)
}

fn module_envelope(ctx: &Context) -> ReportEnvelope {
    let mut r = envelope(ctx);
    r.module = ctx.module_label();
    r
}

pub(crate) fn dispatch(ctx: &Context) -> Result<ReportEnvelope> {
    match &ctx.cli.command {
        Command::Normalize { expr } => {
            let alg = ctx.spec()?.algebra()?;
            let mut r = envelope(ctx);
            r.result = json!(parse_poly(&alg, expr)?.to_string());
            Ok(r)
        }
        Command::Mul { lhs, rhs } => {
            let alg = ctx.spec()?.algebra()?;
            let product = parse_poly(&alg, lhs)?.mul(&parse_poly(&alg, rhs)?)?;
            let mut r = envelope(ctx);
            r.result = json!(product.to_string());
            Ok(r)
        }
        Command::OreSwap { expr, p } => {
            let alg = ctx.spec()?.algebra()?;
            let a = parse_poly(&alg, expr)?;
            let ap = a.ore_swap(*p)?;
            let xp = alg.x().pow(*p as u64)?;
            let lhs = xp.mul(&a)?;
            let rhs = ap.mul(&xp)?;
            let mut r = envelope(ctx);
            r.checks.push(Check::new(
                "x^p a = a_p x^p",
                lhs == rhs,
                (lhs != rhs).then(|| format!("{lhs} != {rhs}")),
            ));
            r.result = json!({ "a_p": ap.to_string(), "p": p });
            Ok(r)
        }
        Command::Finv { j, i, elem } => {
            let alg = ctx.spec()?.algebra()?;
            let c = alg.carrier();
            let x = parse_ring(c, elem)?;
            let f = alg.f_op(*j, *i, &x)?;
            let oracle = alg.f_op_word_oracle(*j, *i, &x)?;
            let mut r = envelope(ctx);
            r.checks.push(Check::new(
                "word oracle",
                f == oracle,
                (f != oracle).then(|| format!("oracle gives {}", c.format(&oracle))),
            ));
            r.result = json!({
                "f": c.format(&f),
                "oracle": c.format(&oracle),
                "oracle_match": f == oracle,
            });
            Ok(r)
        }
        Command::Act { invpoly, expr } => {
            let spec = ctx.spec()?;
            let alg = spec.algebra()?;
            let c = spec.twist.carrier().clone();
            let quotient = match &ctx.module {
                None => RingQuotient::regular(c),
                Some(ModuleSpec::Quotient(gens)) => {
                    let gens = gens.iter().map(|g| parse_ring(&c, g)).collect::<Result<Vec<_>>>()?;
                    RingQuotient::new(c, &gens)?
                }
                Some(other) => {
                    return Err(Error::InvalidParameter(format!(
                        "act needs a cyclic module R/I, got {}",
                        other.describe()
                    )))
                }
            };
            let inv = InvModule::new(alg.clone(), quotient)?;
            let m = eval_inv(&inv, &parse(invpoly)?, &|r| inv.module().class_of(&r))?;
            let f = parse_poly(&alg, expr)?;
            let mut r = module_envelope(ctx);
            r.result = json!(inv.format(&inv.act(&m, &f)?));
            Ok(r)
        }
        Command::CompatCheck => compat_check(ctx),
        Command::Att | Command::Ass => primes(ctx),
        Command::VerifyLemma { sub } => verify_lemma(ctx, sub),
        Command::VerifyTheorem => verify_theorem(ctx),
        Command::ProductProbe { r, s, k, k_prime } => {
            let spec = match &ctx.spec {
                Some(s) => s.clone(),
                None => default_preset("jordan_plane")?,
            };
            let alg = spec.algebra()?;
            let c = alg.carrier();
            let report = check_product_relation(&alg, &parse_ring(c, r)?, &parse_ring(c, s)?, *k, *k_prime)?;
            let mut env = ReportEnvelope::new("product-probe", &spec.describe(), ctx.cli.seed);
            let mut result = serde_json::to_value(&report).expect("report is plain data");
            result["verdict"] = json!(report.verdict());
            env.result = result;
            Ok(env)
        }
        Command::Catalog => catalog(ctx),
    }
}

fn compat_check(ctx: &Context) -> Result<ReportEnvelope> {
    let module = ctx.finite_module()?;
    let lattice = module.all_submodules(Scope::Ring)?;
    let mut r = module_envelope(ctx);
    let quotient = |n: &skewore::Submodule| n.describe(&module);
    let forward = check_completely(&module, &lattice, Direction::Forward);
    let zero_quotient = forward.clone();
    let plain = skewore::finite::is_compatible(&module);
    r.checks.push(Check::new(
        "sigma-compatible",
        plain.sigma_passed(),
        plain.sigma.as_ref().map(|v| v.describe(&module)),
    ));
    r.checks.push(Check::new(
        "delta-compatible",
        plain.delta_passed(),
        plain.delta.as_ref().map(|v| v.describe(&module)),
    ));
    r.checks.push(Check::new(
        "completely compatible",
        zero_quotient.passed(),
        zero_quotient.witness().map(|v| format!("{} (in M/{})", v.describe(&module), quotient(&v.quotient_by))),
    ));
    let inverse = check_completely(&module, &lattice, Direction::Inverse);
    r.checks.push(Check::new(
        "completely compatible for (sigma', delta')",
        inverse.passed(),
        inverse.witness().map(|v| format!("{} (in M/{})", v.describe(&module), quotient(&v.quotient_by))),
    ));
    let property = |p: Result<skewore::finite::ModuleProperty>| -> Value {
        match p {
            Ok(p) => json!(p.holds),
            Err(_) => Value::Null,
        }
    };
    r.result = json!({
        "size": module.size(),
        "submodules": lattice.len(),
        "exhaustive": forward.exhaustive && inverse.exhaustive,
        "prime": property(is_prime_module(&module, &lattice)),
        "coprime": property(is_coprime_module(&module, &lattice)),
        "bass": is_bass(&module, &lattice),
    });
    Ok(r)
}

fn primes(ctx: &Context) -> Result<ReportEnvelope> {
    let module = ctx.finite_module()?;
    let lattice = module.all_submodules(Scope::Ring)?;
    let set = match ctx.cli.command {
        Command::Att => att_primes(&module, &lattice),
        _ => ass_primes(&module, &lattice),
    };
    let mut r = module_envelope(ctx);
    let entries: Vec<Value> = set
        .entries
        .iter()
        .map(|e| {
            json!({
                "ideal": e.label,
                "witness": e.witness.describe(&module),
                "prime_ideal": e.is_prime_ideal,
            })
        })
        .collect();
    r.result = json!({ "primes": set.labels(), "entries": entries });
    Ok(r)
}

fn submodule_from_labels(module: &FiniteModule, labels: &[String]) -> Result<skewore::Submodule> {
    let gens = labels
        .iter()
        .map(|l| {
            (0..module.size())
                .find(|&i| module.format(i) == l.trim())
                .ok_or_else(|| Error::InvalidParameter(format!("`{l}` is not an element of the module")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(module.submodule_closure(&gens, Scope::Ring))
}

fn attach(env: &mut ReportEnvelope, report: &AttReport, prefix: &str) {
    for c in &report.checks {
        env.checks.push(Check { name: format!("{prefix}{}", c.name), ..c.clone() });
    }
}

fn verify_lemma(ctx: &Context, sub: &[String]) -> Result<ReportEnvelope> {
    let alg = ctx.spec()?.algebra()?;
    let module = ctx.finite_module()?;
    let n = submodule_from_labels(&module, sub)?;
    let bound = ctx.cli.bound.unwrap_or(5);
    let report = verify_annihilator_lemma(&alg, &module, &n, bound, ctx.cli.seed)?;
    let mut r = module_envelope(ctx);
    r.bound = Some(bound);
    attach(&mut r, &report, "");
    r.result = json!({
        "summary": report.summary(),
        "submodule": n.describe(&module),
        "exhaustive": report.exhaustive,
        "notes": report.notes,
    });
    Ok(r)
}

fn verify_theorem(ctx: &Context) -> Result<ReportEnvelope> {
    let alg = ctx.spec()?.algebra()?;
    let module = ctx.finite_module()?;
    let bound = ctx.cli.bound.unwrap_or(3);
    let inclusion = verify_att_inclusion(&alg, &module, bound)?;
    let equality = verify_att_equality(&alg, &module, bound)?;
    let mut r = module_envelope(ctx);
    r.bound = Some(bound);
    attach(&mut r, &inclusion, "inclusion: ");
    attach(&mut r, &equality, "equality: ");
    let passed = r.passed();
    let mut notes = equality.notes.clone();
    for n in inclusion.notes {
        if !notes.contains(&n) {
            notes.push(n);
        }
    }
    r.result = json!({
        "summary": format!("{}, bound {bound}", if passed { "pass" } else { "fail" }),
        "att": equality.att,
        "exhaustive": inclusion.exhaustive && equality.exhaustive,
        "notes": notes,
    });
    Ok(r)
}

fn catalog(ctx: &Context) -> Result<ReportEnvelope> {
    let specs = match &ctx.spec {
        Some(s) => vec![s.clone()],
        None => PRESETS.iter().map(|(n, _)| default_preset(n)).collect::<Result<Vec<_>>>()?,
    };
    let mut r = envelope(ctx);
    let mut listing = Vec::new();
    for spec in &specs {
        let description = PRESETS
            .iter()
            .find(|(n, _)| *n == spec.name)
            .map(|(_, d)| *d)
            .unwrap_or("fixture");
        let relations = spec.check_relations()?;
        for rel in &relations {
            r.checks.push(Check {
                name: format!("{}: {}", spec.name, rel.name),
                status: if rel.passed { Status::Pass } else { Status::Fail },
                witness: (!rel.passed).then(|| format!("{} != {}", rel.lhs, rel.rhs)),
            });
        }
        listing.push(json!({
            "name": spec.name,
            "algebra": spec.describe(),
            "description": description,
            "carrier": spec.twist.carrier().to_string(),
        }));
    }
    r.result = json!(listing);
    Ok(r)
}

use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use num_rational::BigRational;
use qheis_core::expr::Context;
use qheis_core::hopf::{oq_hopf, uq_hopf, Pairing, TensorElement};
use qheis_core::ideals::{
    containment_probe, j_generators, monomial_avoidance_probe, phi1, phi2, Membership, Side, SpecCatalog,
    TruncatedIdeal,
};
use qheis_core::morphisms::{self, Morphism};
use qheis_core::presets::{make_dq, make_oq, make_s, make_s_quotient_torus, make_uq};
use qheis_core::random;
use qheis_core::report::Report;
use qheis_core::smodules::{growth_exponent, Family, ModuleVector, QuotientModule, WeightKind, WeightModule};
use qheis_core::verify::{confluence_report, corrupted_fixture, run_suites, SuiteConfig};
use qheis_core::{AlgebraParams, Element, Monomial, Presentation, QScalar, SOrder};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::out::Out;
use crate::{AlgebraName, AutCommand, Cli, Command, IdealArgs, IdealCommand, ModuleArgs, ModuleCommand, SpecCommand, Weight};

struct Env<'a> {
    g: &'a crate::Global,
    params: AlgebraParams,
    q0: Option<BigRational>,
}

impl Env<'_> {
    fn coeff(&self, c: &QScalar) -> Result<String> {
        Ok(match &self.q0 {
            Some(q) => c.eval(q)?.to_string(),
            None => c.to_string(),
        })
    }

    fn special(&self, x: &Element) -> Result<Element> {
        Ok(match &self.q0 {
            Some(q) => x.map_coefficients(|c| c.eval(q).map(QScalar::from_rational))?,
            None => x.clone(),
        })
    }

    fn element(&self, p: &Presentation, x: &Element) -> Result<(Value, String)> {
        let y = self.special(x)?;
        Ok((p.element_json(&y), p.render(&y)))
    }

    fn tensor(&self, p: &Presentation, t: &TensorElement) -> Result<(Value, String)> {
        let mut spec = TensorElement::zero();
        for (legs, c) in t.iter() {
            let c = match &self.q0 {
                Some(q) => QScalar::from_rational(c.eval(q)?),
                None => c.clone(),
            };
            spec.add_term(*legs, c);
        }
        let terms = spec
            .iter()
            .map(|(legs, c)| json!({ "coeff": c.to_string(), "legs": legs.iter().map(|m| mono_json(p, m)).collect::<Vec<_>>() }))
            .collect();
        Ok((Value::Array(terms), spec.render(p)))
    }

    fn algebra(&self, default: AlgebraName) -> Result<Presentation> {
        let p = self.params;
        Ok(match self.g.algebra.unwrap_or(default) {
            AlgebraName::Oq => make_oq(p)?,
            AlgebraName::Uq => make_uq(p)?,
            AlgebraName::Dq => make_dq(p)?,
            AlgebraName::S => make_s(p, self.order()?)?,
            AlgebraName::Torus => make_s_quotient_torus(p)?,
        })
    }

    fn order(&self) -> Result<SOrder> {
        Ok(SOrder::from_str(&self.g.order)?)
    }

    fn parse(&self, p: &Presentation, text: &str) -> Result<Element> {
        Ok(Context::new(p).with_standard_macros(self.params)?.parse_element(text)?)
    }

    /// A scalar expression in q.
    fn scalar(&self, text: &str) -> Result<QScalar> {
        let t = make_s_quotient_torus(self.params)?;
        self.parse(&t, text)?
            .as_scalar()
            .ok_or_else(|| anyhow!("`{text}` is not a scalar"))
    }

    fn header(&self, command: &str, p: &Presentation) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), command.into());
        m.insert("algebra".into(), p.name().into());
        m.insert("params".into(), self.params.to_string().into());
        m
    }
}

fn mono_json(p: &Presentation, m: &Monomial) -> Value {
    let mut out = Map::new();
    for l in m.letters() {
        out.insert(p.gen_name(l.gen).to_string(), l.exp.into());
    }
    Value::Object(out)
}

fn object(mut base: Map<String, Value>, extra: Value) -> Value {
    if let Value::Object(e) = extra {
        base.extend(e);
    }
    Value::Object(base)
}

fn parse_q(text: &str) -> Result<BigRational> {
    let q = BigRational::from_str(text.trim()).map_err(|_| anyhow!("--q expects a rational p/r, got `{text}`"))?;
    let one = BigRational::from_integer(1.into());
    if q == BigRational::from_integer(0.into()) || q == one || q == -one {
        bail!("--q must avoid 0, 1 and -1");
    }
    Ok(q)
}

pub fn run(cli: &Cli) -> Result<Out> {
    let g = &cli.global;
    let params = AlgebraParams::new(g.m, g.n)?;
    let q0 = g.q.as_deref().map(parse_q).transpose()?;
    let env = Env { g, params, q0 };
    let mut out = Out::default();
    match &cli.command {
        Command::Nf { expr } => {
            let p = env.algebra(AlgebraName::Dq)?;
            let x = env.parse(&p, expr)?;
            let (terms, text) = env.element(&p, &x)?;
            out.push(object(env.header("nf", &p), json!({ "input": expr, "terms": terms, "text": text })), text);
        }
        Command::Comm { x, y } => {
            let p = env.algebra(AlgebraName::Dq)?;
            let c = p.commutator(&env.parse(&p, x)?, &env.parse(&p, y)?);
            let (terms, text) = env.element(&p, &c)?;
            out.push(object(env.header("comm", &p), json!({ "x": x, "y": y, "terms": terms, "text": text })), text);
        }
        Command::Delta { expr } | Command::Counit { expr } | Command::Antipode { expr } => {
            let h = match g.algebra.unwrap_or(AlgebraName::Oq) {
                AlgebraName::Oq => oq_hopf(params)?,
                AlgebraName::Uq => uq_hopf(params)?,
                other => bail!("no Hopf structure on {other:?}; use Oq or Uq"),
            };
            let p = h.base().clone();
            let x = env.parse(&p, expr)?;
            let (name, value, text) = match &cli.command {
                Command::Delta { .. } => {
                    let (v, t) = env.tensor(&p, &h.coproduct(&x)?)?;
                    ("delta", v, t)
                }
                Command::Counit { .. } => {
                    let c = env.coeff(&h.counit(&x)?)?;
                    ("counit", Value::String(c.clone()), c)
                }
                _ => {
                    let (v, t) = env.element(&p, &h.antipode(&x)?)?;
                    ("antipode", v, t)
                }
            };
            out.push(object(env.header(name, &p), json!({ "input": expr, "value": value, "text": text })), text);
        }
        Command::Pair { u, x } => {
            let pr = Pairing::new(params)?;
            let uu = env.parse(pr.uq().base(), u)?;
            let xx = env.parse(pr.oq().base(), x)?;
            let v = env.coeff(&pr.pair(&uu, &xx)?)?;
            out.push(json!({ "command": "pair", "params": params.to_string(), "u": u, "x": x, "value": v }), v);
        }
        Command::Act { u, x } => {
            let pr = Pairing::new(params)?;
            let oq = pr.oq().base().clone();
            let uu = env.parse(pr.uq().base(), u)?;
            let xx = env.parse(&oq, x)?;
            let (terms, text) = env.element(&oq, &pr.act(&uu, &xx)?)?;
            out.push(object(env.header("act", &oq), json!({ "u": u, "x": x, "terms": terms, "text": text })), text);
        }
        Command::Smash => {
            let pr = Pairing::new(params)?;
            let r = pr.check_smash(&make_dq(params)?)?;
            push_report(&mut out, "smash", &r);
        }
        Command::Ideal(cmd) => ideal(&env, cmd, &mut out)?,
        Command::Spec(cmd) => spec(&env, cmd, &mut out)?,
        Command::Module(cmd) => module(&env, cmd, &mut out)?,
        Command::Aut(AutCommand::Check { family, matrix, scalars, i }) => {
            aut(&env, family, matrix.as_deref(), scalars.as_deref(), *i, &mut out)?
        }
        Command::Verify { suite, corrupted } => verify(&env, suite, *corrupted, &mut out)?,
    }
    Ok(out)
}

fn push_report(out: &mut Out, suite: &str, r: &Report) {
    let failed = r.failures.len();
    let json = json!({
        "suite": suite,
        "check": r.check,
        "checked": r.checked,
        "failed": failed,
        "passed": failed == 0,
        "failures": r.failures,
    });
    let mut text = format!("{} {suite}: {} ({} checked)", if failed == 0 { "PASS" } else { "FAIL" }, r.check, r.checked);
    for f in &r.failures {
        text.push_str(&format!("\n    {}: {}", f.case, f.detail));
    }
    out.push_check(json, text, failed);
}

fn verify(env: &Env, suites: &[String], corrupted: bool, out: &mut Out) -> Result<()> {
    let mut cfg = SuiteConfig::new(env.params, env.g.seed);
    if let Some(w) = env.g.window {
        cfg.window = w;
    }
    let results = if corrupted {
        let fixture = corrupted_fixture(env.params)?;
        vec![("confluence".to_string(), vec![confluence_report(&fixture.check_confluence())])]
    } else {
        run_suites(suites, &cfg)?
    };
    let mut total_failed = 0;
    for (name, reports) in &results {
        for r in reports {
            push_report(out, name, r);
        }
        let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
        let checked: usize = reports.iter().map(|r| r.checked).sum();
        let passed_checks = reports.iter().filter(|r| r.passed()).count();
        total_failed += failed;
        out.push(
            json!({ "suite": name, "summary": true, "checks": reports.len(), "checks_passed": passed_checks, "checked": checked, "failed": failed }),
            format!("== {name}: {passed_checks}/{} checks passed, {checked} instances, {failed} failures", reports.len()),
        );
    }
    out.push(
        json!({
            "command": "verify",
            "params": env.params.to_string(),
            "seed": env.g.seed,
            "suites": results.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
            "failed": total_failed,
            "passed": total_failed == 0,
        }),
        format!("verify ({}) seed {}: {}", env.params, env.g.seed, if total_failed == 0 { "all passed" } else { "FAILED" }),
    );
    Ok(())
}

fn build_ideal(env: &Env, s: &Arc<Presentation>, args: &IdealArgs, name: &str, z: &str) -> Result<TruncatedIdeal> {
    let bound = env.g.deg.unwrap_or(8);
    let gens = match name {
        "0" | "zero" => vec![],
        "I1" => vec![phi1(s)?],
        "I2" => vec![phi2(s)?],
        "I3" => vec![phi1(s)?, phi2(s)?],
        "J1" | "J2" => {
            let (j1, j2) = j_generators(s, env.params, &env.scalar(z)?)?;
            if name == "J1" {
                j1
            } else {
                j2
            }
        }
        "custom" => args.gens.iter().map(|t| env.parse(s, t)).collect::<Result<Vec<_>>>()?,
        other => bail!("unknown ideal `{other}` (0, I1, I2, I3, J1, J2, custom)"),
    };
    if name == "custom" && gens.is_empty() {
        bail!("a custom ideal needs at least one --gen");
    }
    let label = if name.starts_with('J') { format!("{name}({})", env.scalar(z)?) } else { name.to_string() };
    let side = if args.left { Side::Left } else { Side::TwoSided };
    Ok(TruncatedIdeal::span(label, s.clone(), gens, side, bound)?)
}

fn word_text(s: &Presentation, w: &[usize]) -> String {
    w.iter().map(|g| s.gen_name(*g)).collect::<Vec<_>>().join("*")
}

fn ideal(env: &Env, cmd: &IdealCommand, out: &mut Out) -> Result<()> {
    let s = Arc::new(make_s(env.params, env.order()?)?);
    match cmd {
        IdealCommand::Span { ideal } => {
            let i = build_ideal(env, &s, ideal, &ideal.name, &ideal.z)?;
            let gens: Vec<String> = i.generators().iter().map(|x| s.render(x)).collect();
            let text = format!("{}: dimension {} at degree <= {}", i.name(), i.dimension(), i.bound());
            out.push(
                object(
                    env.header("ideal span", &s),
                    json!({ "ideal": i.name(), "side": i.side(), "bound": i.bound(), "generators": gens, "dimension": i.dimension() }),
                ),
                text,
            );
        }
        IdealCommand::Member { ideal, expr } => {
            let i = build_ideal(env, &s, ideal, &ideal.name, &ideal.z)?;
            let x = env.parse(&s, expr)?;
            let m = i.member(&x)?;
            let mut failed = 0;
            let mut cert = Vec::new();
            if let Membership::Verified(c) = &m {
                if i.replay(c) != x {
                    failed = 1;
                }
                for (coeff, prod) in c {
                    cert.push(json!({
                        "coeff": env.coeff(coeff)?,
                        "left": word_text(&s, &prod.left),
                        "generator": s.render(&i.generators()[prod.gen]),
                        "right": word_text(&s, &prod.right),
                    }));
                }
            }
            let text = format!("{} in {}: {} ({} certificate terms)", s.render(&x), i.name(), m.label(), cert.len());
            out.push_check(
                object(
                    env.header("ideal member", &s),
                    json!({ "ideal": i.name(), "bound": i.bound(), "element": s.render(&x), "membership": m.label(), "replayed": failed == 0, "certificate": cert }),
                ),
                text,
                failed,
            );
        }
        IdealCommand::Contain { ideal, target, target_z } => {
            let a = build_ideal(env, &s, ideal, &ideal.name, &ideal.z)?;
            let b = build_ideal(env, &s, ideal, target, target_z)?;
            let r = containment_probe(&a, &b)?;
            let text = format!("{} in {}: {:?} ({} basis vectors checked)", r.from, r.to, r.status, r.checked);
            out.push(object(env.header("ideal contain", &s), json!({ "bound": a.bound(), "report": r })), text);
        }
    }
    Ok(())
}

fn spec(env: &Env, cmd: &SpecCommand, out: &mut Out) -> Result<()> {
    let (SpecCommand::Catalog { z } | SpecCommand::Diagram { z }) = cmd;
    let zs = z.iter().map(|t| env.scalar(t)).collect::<Result<Vec<_>>>()?;
    let bound = env.g.deg.unwrap_or(6);
    let cat = SpecCatalog::new(env.params, bound, zs)?;
    let s = cat.algebra().clone();
    match cmd {
        SpecCommand::Catalog { .. } => {
            for i in cat.ideals() {
                let av = monomial_avoidance_probe(i)?;
                let gens: Vec<String> = i.generators().iter().map(|x| s.render(x)).collect();
                let text = format!(
                    "{}: dimension {}, pure b'^i c'^j monomials {}",
                    i.name(),
                    i.dimension(),
                    if av.clean() { "avoided".to_string() } else { format!("found {:?}", av.detected) }
                );
                out.push(
                    object(
                        env.header("spec catalog", &s),
                        json!({ "ideal": i.name(), "bound": bound, "generators": gens, "dimension": i.dimension(), "avoidance_clean": av.clean(), "detected": av.detected }),
                    ),
                    text,
                );
            }
        }
        SpecCommand::Diagram { .. } => {
            for e in cat.diagram()? {
                let text = format!("{} -> {}: {:?}{}", e.from, e.to, e.status, if e.drawn { "" } else { " (not drawn)" });
                out.push(json!({ "from": e.from, "to": e.to, "status": e.status, "drawn": e.drawn, "bound": bound }), text);
            }
        }
    }
    Ok(())
}

fn quotient_module(env: &Env, args: &ModuleArgs) -> Result<QuotientModule> {
    let family = Family::from_str(&args.family)?;
    Ok(QuotientModule::new(env.params, family, env.scalar(&args.sigma)?, env.scalar(&args.tau)?)?)
}

fn vector_json(env: &Env, md: &QuotientModule, v: &ModuleVector) -> Result<(Value, String)> {
    let names = md.family().order().names();
    let mut spec = ModuleVector::new();
    for (k, c) in v {
        let c = match &env.q0 {
            Some(q) => QScalar::from_rational(c.eval(q)?),
            None => c.clone(),
        };
        spec.insert(*k, c);
    }
    let terms = spec
        .iter()
        .rev()
        .map(|((i, j), c)| json!({ "coeff": c.to_string(), "mono": { names[0]: i, names[1]: j } }))
        .collect();
    Ok((Value::Array(terms), md.render(&spec)))
}

fn module_header(env: &Env, command: &str, md: &QuotientModule) -> Map<String, Value> {
    let mut m = env.header(command, md.algebra());
    m.insert("family".into(), md.family().to_string().into());
    m.insert("sigma".into(), md.sigma().to_string().into());
    m.insert("tau".into(), md.tau().to_string().into());
    m
}

fn module(env: &Env, cmd: &ModuleCommand, out: &mut Out) -> Result<()> {
    match cmd {
        ModuleCommand::Act { module, s, w } => {
            let md = quotient_module(env, module)?;
            let alg = md.algebra().clone();
            let v = md.act(&env.parse(&alg, w)?, &QuotientModule::cyclic_vector());
            let r = md.act(&env.parse(&alg, s)?, &v);
            let (terms, text) = vector_json(env, &md, &r)?;
            out.push(object(module_header(env, "module act", &md), json!({ "s": s, "w": w, "terms": terms, "text": text })), text);
        }
        ModuleCommand::Probe { module, w } => {
            let md = quotient_module(env, module)?;
            let v = md.act(&env.parse(md.algebra(), w)?, &QuotientModule::cyclic_vector());
            let deg = env.g.deg.unwrap_or(6);
            let r = md.cyclicity_probe(&v, deg)?;
            let text = format!("{}: {:?} (span dimension {}, {} products)", md.render(&v), r.verdict, r.span_dimension, r.vectors);
            out.push(
                object(
                    module_header(env, "module probe", &md),
                    json!({ "w": md.render(&v), "mult_degree": deg, "verdict": format!("{:?}", r.verdict), "span_dimension": r.span_dimension, "vectors": r.vectors }),
                ),
                text,
            );
        }
        ModuleCommand::Growth { module, weight } => {
            let md = quotient_module(env, module)?;
            let d_max = env.g.deg.unwrap_or(24);
            let dims = match weight {
                None => md.filtration_dims(d_max),
                Some(w) => {
                    let window = env.g.window.unwrap_or(3);
                    WeightModule::new(weight_kind(*w), QScalar::one(), md.clone(), window)?.filtration_dims(d_max)
                }
            };
            let exponent = growth_exponent(&dims);
            let text = format!("growth exponent {exponent:.4} over d <= {d_max}");
            out.push(
                object(
                    module_header(env, "module growth", &md),
                    json!({ "weight": weight.map(|w| format!("{w:?}")), "d_max": d_max, "dims": dims, "exponent": exponent }),
                ),
                text,
            );
        }
        ModuleCommand::Support { module, kind, lambda } => {
            let md = quotient_module(env, module)?;
            let window = env.g.window.unwrap_or(3);
            let wm = WeightModule::new(weight_kind(*kind), env.scalar(lambda)?, md.clone(), window)?;
            let support = wm.support_list().iter().map(|c| env.coeff(c)).collect::<Result<Vec<_>>>()?;
            let text = format!("support: {}", support.join(", "));
            out.push(
                object(
                    module_header(env, "module support", &md),
                    json!({ "kind": format!("{kind:?}"), "lambda": lambda, "window": window, "support": support }),
                ),
                text,
            );
        }
    }
    Ok(())
}

fn weight_kind(w: Weight) -> WeightKind {
    match w {
        Weight::K => WeightKind::K,
        Weight::A => WeightKind::A,
    }
}

fn aut(env: &Env, family: &str, matrix: Option<&[i64]>, scalars: Option<&[String]>, i: Option<i64>, out: &mut Out) -> Result<()> {
    let p = env.params;
    let mut rng = ChaCha8Rng::seed_from_u64(env.g.seed);
    let zs: Vec<QScalar> = match scalars {
        Some(list) => list.iter().map(|t| env.scalar(t)).collect::<Result<_>>()?,
        None => (0..3).map(|_| random::scalar(&mut rng)).collect(),
    };
    let z = |k: usize| zs.get(k).cloned().ok_or_else(|| anyhow!("family {family} needs at least {} scalars", k + 1));
    let mat = match matrix {
        None => [[2, 1], [1, 1]],
        Some([a, b, c, d]) => [[*a, *b], [*c, *d]],
        Some(_) => bail!("--matrix expects four entries a,b,c,d"),
    };
    let mut extra: Vec<Report> = Vec::new();
    let f: Morphism = match family {
        "tau" => morphisms::tau(p)?,
        "swap-bc" => morphisms::swap_bc(p, false)?,
        "xi" => morphisms::xi(p, i.unwrap_or(1))?,
        "zeta" => morphisms::zeta_oq(p, &z(0)?, &z(1)?, &z(2)?)?,
        "zeta-dq" => morphisms::zeta_dq(p, &z(0)?, &z(1)?)?,
        "rho" => morphisms::rho(p, &mat)?,
        "xi-primed" => morphisms::xi_primed(p, &z(0)?, &z(1)?)?,
        "xi-primed-literal" => morphisms::xi_primed_literal(p, &z(0)?, &z(1)?)?,
        "iso" => {
            let f = morphisms::iso_uq_to_oq(p)?;
            extra.push(morphisms::check_inverse(&f, &morphisms::iso_oq_to_uq(p)?)?);
            f
        }
        "embedding" => {
            extra.push(morphisms::check_embedding_coproduct(p)?);
            morphisms::hopf_embedding(p)?
        }
        other => bail!(
            "unknown family `{other}` (tau, swap-bc, xi, zeta, zeta-dq, rho, xi-primed, xi-primed-literal, iso, embedding)"
        ),
    };
    let mut r = f.check();
    for e in extra {
        r.merge(e);
    }
    let images: Vec<Value> = f
        .render()
        .into_iter()
        .map(|(g, img)| json!({ "generator": g, "image": img }))
        .collect();
    let failed = r.failures.len();
    let mut text = format!(
        "{} {}: {} relations checked, {} failures",
        if failed == 0 { "PASS" } else { "FAIL" },
        f.name(),
        r.checked,
        failed
    );
    for fl in &r.failures {
        text.push_str(&format!("\n    {}: {}", fl.case, fl.detail));
    }
    out.push_check(
        json!({
            "command": "aut check",
            "family": f.name(),
            "params": p.to_string(),
            "seed": env.g.seed,
            "images": images,
            "relations_checked": r.checked,
            "failures": r.failures,
        }),
        text,
        failed,
    );
    Ok(())
}

//! Named verification suites, each a list of [`Report`]s.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hopf::{oq_hopf, uq_hopf, Pairing};
use crate::ideals::{
    check_phi_identities, check_phi_identities_in, containment_probe, default_z_samples, monomial_avoidance_probe,
    phi1, phi2, torus_quotient_map, ContainmentStatus, SpecCatalog,
};
use crate::morphisms::{
    check_embedding_coproduct, check_families, check_inverse, check_rho_law, iso_oq_to_uq, iso_uq_to_oq, tau, xi,
    zeta_oq, IntMatrix,
};
use crate::presets::{
    make_dq, make_oq, make_phi_torus, make_s, make_s_quotient_torus, make_uq, primed_in_d, AlgebraParams, Factorizer,
    SOrder,
};
use crate::qfield::{qpow, QScalar};
use crate::random;
use crate::report::Report;
use crate::rewrite::{ConfluenceReport, Element, Presentation};
use crate::smodules::{growth_exponent, Family, QuotientModule, WeightKind, WeightModule};

pub const SUITES: [&str; 12] = [
    "confluence",
    "hopf",
    "pairing-action",
    "smash",
    "primed",
    "phi",
    "modules",
    "weights",
    "growth",
    "ideals",
    "torusmap",
    "aut",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub params: AlgebraParams,
    pub seed: u64,
    /// Samples for the randomized Hopf and module-algebra checks.
    pub samples: usize,
    pub ideal_bound: u32,
    pub mult_degree: u32,
    pub window: i64,
    pub growth_d_max: u32,
}

impl SuiteConfig {
    pub fn new(params: AlgebraParams, seed: u64) -> Self {
        SuiteConfig { params, seed, samples: 100, ideal_bound: 8, mult_degree: 6, window: 3, growth_d_max: 24 }
    }
}

pub fn confluence_report(r: &ConfluenceReport) -> Report {
    let mut out = Report::new(format!("confluence {}", r.algebra));
    out.checked = r.triples_checked + r.inverse_overlaps_checked;
    if let Some(d) = &r.divergence {
        out.checked -= 1;
        out.record(false, d.rendered.clone(), || format!("paths differ on {}", d.rendered));
    }
    out
}

/// D_q with the swap scalar of `K c` multiplied by q, which breaks confluence.
pub fn corrupted_fixture(params: AlgebraParams) -> Result<Presentation> {
    let dq = make_dq(params)?;
    let (k, c) = (dq.gen_index("K")?, dq.gen_index("c")?);
    let swap = &dq.rule(k, c).swap * qpow(1);
    dq.with_swap_override("K", "c", swap)
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    match name {
        "confluence" => confluence(cfg),
        "hopf" => hopf(cfg),
        "pairing-action" => pairing_action(cfg),
        "smash" => smash(cfg),
        "primed" => primed(cfg),
        "phi" => phi(cfg),
        "modules" => modules(cfg),
        "weights" => weights(cfg),
        "growth" => growth(cfg),
        "ideals" => ideals(cfg),
        "torusmap" => torusmap(cfg),
        "aut" => aut(cfg),
        other => Err(Error::InvalidParameter(format!("unknown suite {other}"))),
    }
}

fn confluence(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let mut algebras = vec![make_oq(p)?, make_uq(p)?, make_dq(p)?];
    for o in SOrder::ALL {
        algebras.push(make_s(p, o)?);
    }
    algebras.push(make_s_quotient_torus(p)?);
    algebras.push(make_phi_torus(p)?);
    Ok(algebras.iter().map(|a| confluence_report(&a.check_confluence())).collect())
}

fn hopf(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for h in [oq_hopf(cfg.params)?, uq_hopf(cfg.params)?] {
        out.push(h.check_axioms(3, cfg.samples, cfg.seed));
        out.push(h.check_relations());
    }
    Ok(out)
}

fn pairing_action(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let pr = Pairing::new(cfg.params)?;
    Ok(vec![
        pr.pairing_table(),
        pr.action_table(),
        pr.check_module_algebra(2, cfg.samples, cfg.seed),
        pr.check_peeling(2, cfg.samples / 2, cfg.seed),
    ])
}

fn smash(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let pr = Pairing::new(cfg.params)?;
    Ok(vec![pr.check_smash(&make_dq(cfg.params)?)?])
}

/// The fourteen commutation rules of the primed generators, as residuals in `p`.
pub fn check_primed_relations(p: &Presentation, params: AlgebraParams, torus: Option<(&Element, &Element)>, gens: &[Element; 4]) -> Report {
    let (m, n) = (params.m, params.n);
    let [e, f, b, c] = gens;
    let one = Element::one();
    let zero = Element::zero();
    let mut report = Report::new(format!("primed relations in {}", p.name()));
    let mut check = |case: &str, x: &Element, y: &Element, s: QScalar, tail: &Element| {
        let residual = &(&p.multiply(x, y) - &p.multiply(y, x).scale(&s)) - tail;
        report.record(residual.is_zero(), case, || p.render(&residual));
    };
    if let Some((k, a)) = torus {
        for (t, tn) in [(k, "K"), (a, "a")] {
            for (x, xn) in [(b, "b'"), (c, "c'"), (e, "E'"), (f, "F'")] {
                check(&format!("{tn}{xn}"), t, x, QScalar::one(), &zero);
            }
        }
    }
    check("b'c'", b, c, qpow(2 * m * n), &zero);
    check("E'b'", e, b, qpow(2 * m * n), &zero);
    check("F'b'", f, b, qpow(-2 * n * n), &one);
    check("E'c'", e, c, qpow(2 * m * m), &one);
    check("F'c'", f, c, qpow(-2 * m * n), &zero);
    check("E'F'", e, f, qpow(-2 * m * n), &zero);
    report
}

fn primed(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let dq = make_dq(p)?;
    let ps = primed_in_d(p, &dq)?;
    let gens = [ps.e_p.clone(), ps.f_p.clone(), ps.b_p.clone(), ps.c_p.clone()];
    let (k, a) = (dq.gen("K")?, dq.gen("a")?);
    let mut out = vec![check_primed_relations(&dq, p, Some((&k, &a)), &gens)];
    for o in SOrder::ALL {
        let s = make_s(p, o)?;
        let gens = [s.gen("Ep")?, s.gen("Fp")?, s.gen("bp")?, s.gen("cp")?];
        out.push(check_primed_relations(&s, p, None, &gens));
    }
    let s = make_s(p, SOrder::EFbc)?;
    let fz = Factorizer::new(p, &dq, &s)?;
    let mut rt = Report::new("factorize round trip");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples: Vec<Element> = (0..dq.ngens()).map(|g| dq.gen_pow(g, 1)).collect::<Result<_>>()?;
    samples.extend((0..40).map(|_| random::element(&dq, &mut rng, 6, 3)));
    for x in samples {
        let back = fz.reassemble(&fz.factorize(&x)?)?;
        rt.record(back == x, dq.render(&x), || dq.render(&back));
    }
    out.push(rt);
    Ok(out)
}

fn phi(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let dq = make_dq(p)?;
    let ps = primed_in_d(p, &dq)?;
    let gens = [ps.e_p.clone(), ps.f_p.clone(), ps.b_p.clone(), ps.c_p.clone()];
    let mut out = vec![check_phi_identities_in(&dq, &gens, p)];
    for o in SOrder::ALL {
        out.push(check_phi_identities(&make_s(p, o)?, p)?);
    }
    Ok(out)
}

const SIGMA_TAU: [(i64, i64); 3] = [(0, 0), (0, 1), (1, 0)];

fn modules(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for fam in Family::ALL {
        let mods = SIGMA_TAU
            .iter()
            .map(|(s, t)| QuotientModule::new(p, fam, QScalar::from_int(*s), QScalar::from_int(*t)))
            .collect::<Result<Vec<_>>>()?;
        let mut assoc = Report::new(format!("module associativity {fam}"));
        for i in 0..2 * cfg.samples {
            let md = &mods[i % mods.len()];
            let s = md.algebra();
            let x = random::element(s, &mut rng, 2, 2);
            let y = random::element(s, &mut rng, 2, 2);
            let v = md.random_vector(&mut rng, 3);
            let lhs = md.act(&s.multiply(&x, &y), &v);
            let rhs = md.act(&x, &md.act(&y, &v));
            assoc.record(lhs == rhs, format!("({})({}) on {}", s.render(&x), s.render(&y), md.render(&v)), || {
                format!("{} vs {}", md.render(&lhs), md.render(&rhs))
            });
        }
        out.push(assoc);
        let mut ann = Report::new(format!("annihilators {fam}"));
        let mut cyc = Report::new(format!("cyclicity {fam}"));
        for md in &mods {
            let s = md.algebra();
            let (gs, gt) = fam.scalar_generators();
            let v = QuotientModule::cyclic_vector();
            for (g, value) in [(gs, md.sigma()), (gt, md.tau())] {
                let x = &s.gen(g)? - &Element::scalar(value.clone());
                let r = md.act(&x, &v);
                ann.record(r.is_empty(), format!("({g} - {value}) v, sigma={} tau={}", md.sigma(), md.tau()), || {
                    md.render(&r)
                });
            }
            for _ in 0..cfg.samples / 5 {
                let w = md.random_vector(&mut rng, 3);
                let probe = md.cyclicity_probe(&w, cfg.mult_degree)?;
                cyc.record(
                    probe.verdict == crate::smodules::Verdict::Cyclic,
                    format!("{} sigma={} tau={}", md.render(&w), md.sigma(), md.tau()),
                    || format!("undetermined, span dimension {}", probe.span_dimension),
                );
            }
        }
        out.push(ann);
        out.push(cyc);
    }
    Ok(out)
}

fn weights(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let mut out = Vec::new();
    for fam in Family::ALL {
        for kind in [WeightKind::K, WeightKind::A] {
            let base = QuotientModule::new(p, fam, QScalar::zero(), QScalar::one())?;
            let lambda = qpow(2).scale_rational(&num_rational::BigRational::from_integer(3.into()));
            let wm = WeightModule::new(kind, lambda, base.clone(), cfg.window)?;
            let dq = wm.algebra().clone();
            let (k, a) = (dq.gen("K")?, dq.gen("a")?);
            let diag = if kind == WeightKind::K { &k } else { &a };
            let mut report = Report::new(format!("weights {fam} {kind:?}"));
            let mut observed = Vec::new();
            for t in -cfg.window..=cfg.window {
                for key in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)] {
                    let w = WeightModule::layer_vector(t, &QuotientModule::basis_vector(key));
                    let kw = wm.act(diag, &w)?;
                    let ok = kw == crate::linalg::SparseVec::from_iter(w.iter().map(|(k, c)| (*k, c * &wm.eigenvalue(t))));
                    report.record(ok, format!("eigenvector t={t} {key:?}"), || wm.render(&kw));
                    if t < cfg.window {
                        let lhs = wm.act(&k, &wm.act(&a, &w)?)?;
                        let rhs = wm.act(&a, &wm.act(&k, &w)?)?;
                        let rhs: crate::smodules::WeightVector = rhs.into_iter().map(|(k, c)| (k, c * qpow(-1))).collect();
                        report.record(lhs == rhs, format!("K(a.w)=q^-1 a(K.w) t={t} {key:?}"), || {
                            format!("{} vs {}", wm.render(&lhs), wm.render(&rhs))
                        });
                    }
                }
                observed.push(wm.eigenvalue(t));
            }
            report.record(observed == wm.support_list(), "support", || format!("{observed:?}"));
            let primed = primed_in_d(p, &dq)?;
            let imgs = primed.images_for(base.algebra());
            let profile = base.filtration_dims_by_span(2)?;
            for t in [-1, 0, 1] {
                for (d, dim) in &profile {
                    let got = wm.layer_dimension(t, *d, &imgs)?;
                    report.record(got == *dim, format!("layer {t} degree {d}"), || format!("{got} vs {dim}"));
                }
            }
            out.push(report);
        }
    }
    Ok(out)
}

fn growth(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let mut report = Report::new(format!("growth dMax={}", cfg.growth_d_max));
    for fam in Family::ALL {
        let base = QuotientModule::new(p, fam, QScalar::zero(), QScalar::zero())?;
        let dims = base.filtration_dims(cfg.growth_d_max);
        let by_span = base.filtration_dims_by_span(4)?;
        report.record(dims[..4] == by_span[..], format!("{fam} counts"), || format!("{by_span:?}"));
        let g = growth_exponent(&dims);
        report.record((1.7..=2.3).contains(&g), format!("{fam} exponent {g:.3}"), || format!("{g}"));
        let wm = WeightModule::new(WeightKind::K, QScalar::one(), base, cfg.window)?;
        let g = growth_exponent(&wm.filtration_dims(cfg.growth_d_max));
        report.record((2.7..=3.3).contains(&g), format!("{fam} weight exponent {g:.3}"), || format!("{g}"));
    }
    Ok(vec![report])
}

/// Catalog at `bound`, raised to the degree of the J generators when those do not fit.
fn catalog_at_least(p: AlgebraParams, bound: u32) -> Result<SpecCatalog> {
    match SpecCatalog::new(p, bound, default_z_samples()) {
        Err(Error::DegreeTooSmall { required, .. }) => SpecCatalog::new(p, required, default_z_samples()),
        other => other,
    }
}

fn ideals(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let cat = catalog_at_least(p, cfg.ideal_bound)?;
    let s = cat.algebra().clone();
    let mut report = Report::new(format!("ideals D={}", cat.i1.bound()));
    let ce = s.multiply(&s.gen("cp")?, &s.gen("Ep")?);
    let x = &ce.scale(&(QScalar::one() - qpow(2 * p.m * p.m))) - &Element::one();
    match cat.i1.member(&x)? {
        crate::ideals::Membership::Verified(cert) => {
            let back = cat.i1.replay(&cert);
            report.record(back == x, "-phi1 in I1", || s.render(&back));
        }
        crate::ideals::Membership::NotDetected => report.record(false, "-phi1 in I1", || "not detected".into()),
    }
    report.record(cat.i3.member(&phi2(&s)?)?.is_verified(), "phi2 in I3", String::new);
    report.record(!cat.i3.member(&Element::one())?.is_verified(), "1 not detected in I3", || "1 in span".into());
    let mut pairs = vec![(&cat.i1, &cat.i3), (&cat.i2, &cat.i3)];
    pairs.extend(cat.j1.iter().map(|j| (&cat.i2, j)));
    pairs.extend(cat.j2.iter().map(|j| (&cat.i1, j)));
    for (a, b) in pairs {
        let r = containment_probe(a, b)?;
        report.record(r.status == ContainmentStatus::Contained, format!("{} in {}", a.name(), b.name()), || {
            format!("witness {:?}", r.witness)
        });
    }
    let small = catalog_at_least(p, cfg.ideal_bound.min(6))?;
    for ideal in small.ideals() {
        let r = monomial_avoidance_probe(ideal)?;
        report.record(r.clean(), format!("avoidance {}", ideal.name()), || format!("{:?}", r.detected));
    }
    // informational: counted but never a failure
    let mut info = Report::new("I1 vs J1 (recorded)");
    for j in &cat.j1 {
        let r = containment_probe(&cat.i1, j)?;
        info.record(true, format!("I1 vs {}: {:?}", j.name(), r.status), String::new);
    }
    Ok(vec![report, info])
}

fn torusmap(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let f = torus_quotient_map(cfg.params)?;
    let mut r = f.check();
    let s = f.source().clone();
    for (name, x) in [("phi1", phi1(&s)?), ("phi2", phi2(&s)?)] {
        let img = f.apply(&x)?;
        r.record(img.is_zero(), format!("{name} maps to 0"), || f.target().render(&img));
    }
    Ok(vec![r])
}

/// Uniform SL_2(Z) matrix with entries in `[-5, 5]` by rejection.
pub fn random_sl2<R: Rng>(rng: &mut R) -> IntMatrix {
    loop {
        let a: IntMatrix = [[rng.gen_range(-5..=5), rng.gen_range(-5..=5)], [rng.gen_range(-5..=5), rng.gen_range(-5..=5)]];
        if crate::morphisms::det(&a) == 1 {
            return a;
        }
    }
}

fn aut(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let p = cfg.params;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    let mut fams = Report::new("family draws");
    for _ in 0..20 {
        let z = [random::scalar(&mut rng), random::scalar(&mut rng), random::scalar(&mut rng)];
        fams.merge(check_families(p, &z)?);
    }
    out.push(fams);
    let mut law = Report::new("rho_A rho_B = rho_AB zeta");
    for _ in 0..20 {
        let (a, b) = (random_sl2(&mut rng), random_sl2(&mut rng));
        law.merge(check_rho_law(p, &a, &b)?);
    }
    out.push(law);
    let mut groups = Report::new("group laws");
    if p.m.abs() == p.n.abs() {
        let t = tau(p)?;
        groups.record(t.compose(&t)?.is_identity(), "tau^2 = id", String::new);
    }
    for (i, j) in [(1, 2), (-3, 1), (2, -2)] {
        let ok = xi(p, i)?.compose(&xi(p, j)?)?.same_map(&xi(p, i + j)?);
        groups.record(ok, format!("xi_{i} xi_{j} = xi_{}", i + j), String::new);
    }
    let (z, z1, z2) = (qpow(1), QScalar::from_int(-2), qpow(-2).scale_rational(&num_rational::BigRational::from_integer(3.into())));
    let zeta = zeta_oq(p, &z, &z1, &z2)?;
    let zeta_inv = zeta_oq(p, &z.inv()?, &z1.inv()?, &z2.inv()?)?;
    groups.merge(check_inverse(&zeta, &zeta_inv)?);
    let prod = zeta.compose(&zeta)?;
    groups.record(prod.same_map(&zeta_oq(p, &(&z * &z), &(&z1 * &z1), &(&z2 * &z2))?), "zeta squared", String::new);
    out.push(groups);
    out.push(check_inverse(&iso_uq_to_oq(p)?, &iso_oq_to_uq(p)?)?);
    out.push(check_embedding_coproduct(p)?);
    Ok(out)
}

/// Runs the named suites in order; `"all"` expands to every suite.
pub fn run_suites(names: &[String], cfg: &SuiteConfig) -> Result<Vec<(String, Vec<Report>)>> {
    let expanded: Vec<String> = if names.iter().any(|n| n == "all") {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let handles: Vec<_> = expanded
        .iter()
        .map(|name| {
            let (name, cfg) = (name.clone(), cfg.clone());
            std::thread::spawn(move || (name.clone(), run_suite(&name, &cfg)))
        })
        .collect();
    handles
        .into_iter()
        .map(|h| {
            let (name, res) = h.join().expect("suite thread");
            res.map(|r| (name, r))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_fixture_diverges_once() {
        let p = AlgebraParams::new(1, 1).unwrap();
        let r = confluence_report(&corrupted_fixture(p).unwrap().check_confluence());
        assert_eq!(r.failures.len(), 1);
    }

    #[test]
    fn small_suites_pass() {
        let mut cfg = SuiteConfig::new(AlgebraParams::new(1, 2).unwrap(), 3);
        cfg.samples = 10;
        for s in ["confluence", "primed", "phi", "torusmap", "smash"] {
            for r in run_suite(s, &cfg).unwrap() {
                assert!(r.passed(), "{s}: {r:?}");
            }
        }
        let phi = run_suite("phi", &cfg).unwrap();
        assert!(phi.iter().all(|r| r.checked == 9));
        assert_eq!(run_suite("primed", &cfg).unwrap()[0].checked, 14);
    }
}

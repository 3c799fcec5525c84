use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qheis_bench::{dq, elements, params, words};
use qheis_core::expr::Context;
use qheis_core::hopf::Pairing;
use qheis_core::ideals::SpecCatalog;
use qheis_core::smodules::{Family, QuotientModule};
use qheis_core::{QScalar, Strategy};

fn rewriting(c: &mut Criterion) {
    let p = dq(2, 3);
    let ws = words(&p, 50, 8);
    c.bench_function("normal form D_q(2,3), 50 words", |b| {
        b.iter(|| {
            for w in &ws {
                black_box(p.normal_form_words(vec![(QScalar::one(), w.clone())], Strategy::Leftmost).unwrap());
            }
        })
    });
    let xs = elements(&p, 20, 3);
    c.bench_function("multiply D_q(2,3), 19 products", |b| {
        b.iter(|| xs.windows(2).for_each(|w| drop(black_box(p.multiply(&w[0], &w[1])))))
    });
    c.bench_function("confluence D_q(6,4)", |b| {
        let big = dq(6, 4);
        b.iter(|| black_box(big.check_confluence()))
    });
}

fn pairing(c: &mut Criterion) {
    let pr = Pairing::new(params(2, -3)).unwrap();
    let (u, o) = (Context::new(pr.uq().base()), Context::new(pr.oq().base()));
    let x = u.parse_element("E*F*K^2").unwrap();
    let y = o.parse_element("a^-2*c*b*a").unwrap();
    c.bench_function("pairing <EFK^2, a^-2cba>", |b| b.iter(|| black_box(pr.pair(&x, &y).unwrap())));
    c.bench_function("action E.(a^-2cba)", |b| {
        let e = u.parse_element("E").unwrap();
        b.iter(|| black_box(pr.act(&e, &y).unwrap()))
    });
}

fn ideals_and_modules(c: &mut Criterion) {
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("spec catalog (1,1) D=6", |b| {
        b.iter(|| black_box(SpecCatalog::new(params(1, 1), 6, vec![QScalar::one()]).unwrap()))
    });
    let md = QuotientModule::new(params(2, 3), Family::J1, QScalar::zero(), QScalar::one()).unwrap();
    let w = md.act(&md.algebra().gen("Ep").unwrap(), &QuotientModule::cyclic_vector());
    g.bench_function("cyclicity probe J1(2,3) deg 6", |b| b.iter(|| black_box(md.cyclicity_probe(&w, 6).unwrap())));
    g.finish();
}

criterion_group!(benches, rewriting, pairing, ideals_and_modules);
criterion_main!(benches);

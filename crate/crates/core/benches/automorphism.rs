use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use omsr_core::autgroup::{automorphism_group, brute_force_automorphisms};
use omsr_core::mcayley::MCayleyDigraph;
use omsr_core::suite::{cyclic_grid, two_generated_grid, z2_grid};

fn engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphism_group");
    let picks = z2_grid()
        .into_iter()
        .filter(|i| [5, 10, 40].contains(&i.m))
        .chain(cyclic_grid().into_iter().filter(|i| i.m == 6).take(2))
        .chain(two_generated_grid().into_iter().filter(|i| i.m == 4));
    for inst in picks {
        let t = inst.family.emit(&inst.group, &inst.spec, inst.m).unwrap();
        let d = MCayleyDigraph::build(&inst.group, &t).unwrap();
        let id = format!("{}-{}-m{}", inst.label, inst.family, inst.m);
        group.bench_with_input(BenchmarkId::from_parameter(id), d.graph(), |b, g| {
            b.iter(|| automorphism_group(g, None).unwrap().order())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let inst = z2_grid().into_iter().find(|i| i.m == 5).unwrap();
    let t = inst.family.emit(&inst.group, &inst.spec, inst.m).unwrap();
    let d = MCayleyDigraph::build(&inst.group, &t).unwrap();
    let mut group = c.benchmark_group("engine_vs_brute_force_nv10");
    group.sample_size(10);
    group.bench_function("engine", |b| {
        b.iter(|| automorphism_group(d.graph(), None).unwrap().order())
    });
    group.bench_function("brute_force", |b| {
        b.iter(|| brute_force_automorphisms(d.graph()).unwrap().order())
    });
    group.finish();
}

criterion_group!(benches, engine, oracle);
criterion_main!(benches);

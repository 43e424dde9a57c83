//! Element scans and searches, sequential against the worker pool.

use criterion::{criterion_group, criterion_main, Criterion};
use designforge_core::constructors::{difference_set_design, psl2, z2_4_from_bits};
use designforge_core::designs::symmetric::symmetric_checks;
use designforge_core::designs::{design_automorphisms, flag_action};
use designforge_core::par;
use designforge_core::permgrp::regular_subgroups;

fn biplane() -> designforge_core::IncidenceStructure {
    let set = z2_4_from_bits(&["0000", "0001", "0010", "0100", "1000", "1111"]);
    difference_set_design(2, 4, &set).unwrap()
}

fn fixed_point_balance(c: &mut Criterion) {
    let d = biplane();
    let aut = design_automorphisms(&d).unwrap();
    let mut group = c.benchmark_group("fixed-point-balance/biplane16");
    for jobs in [1, 0] {
        let label = if jobs == 1 { "sequential" } else { "parallel" };
        group.bench_function(label, |b| {
            b.iter(|| par::with_jobs(jobs, || symmetric_checks(&d, &aut).unwrap()))
        });
    }
    group.finish();
}

fn automorphisms(c: &mut Criterion) {
    let d = biplane();
    c.bench_function("automorphisms/biplane16", |b| b.iter(|| design_automorphisms(&d).unwrap()));
}

fn regular(c: &mut Criterion) {
    let d = biplane();
    let aut = design_automorphisms(&d).unwrap();
    let (on_flags, _) = flag_action(&aut, &d).unwrap();
    let mut group = c.benchmark_group("regular-subgroups/biplane16-flags");
    group.sample_size(10);
    for jobs in [1, 0] {
        let label = if jobs == 1 { "sequential" } else { "parallel" };
        group.bench_function(label, |b| b.iter(|| par::with_jobs(jobs, || regular_subgroups(&on_flags).unwrap())));
    }
    group.finish();
}

fn elements(c: &mut Criterion) {
    let g = psl2(13).unwrap().group;
    c.bench_function("elements/PSL2(13)", |b| b.iter(|| g.elements().unwrap()));
}

criterion_group!(benches, fixed_point_balance, automorphisms, regular, elements);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use owb_core::corpus::all_lattices_up_to;
use owb_core::lattice::minimal_base;
use owb_core::overlap::find_all_overlaps;
use owb_core::topology::{build_frame, diagonal_open, presentations};
use owb_core::{Budget, constructions};

fn overlap_search(c: &mut Criterion) {
    let budget = Budget::default();
    let lattices = all_lattices_up_to(5);
    c.bench_function("overlap-search/lattices-le-5", |b| {
        b.iter(|| {
            for l in &lattices {
                let base = minimal_base(l);
                std::hint::black_box(find_all_overlaps(l, &base, &budget).unwrap());
            }
        })
    });
}

fn frame_build(c: &mut Criterion) {
    let budget = Budget::default();
    let d3 = presentations::discrete(3);
    c.bench_function("frame/discrete-3", |b| {
        b.iter(|| std::hint::black_box(build_frame(&d3, &budget).unwrap()))
    });
    let s = presentations::sierpinski();
    let s2 = s.clone().product(&s);
    c.bench_function("frame/diagonal-open-sierpinski-2x2", |b| {
        b.iter_batched(
            || s2.clone(),
            |p| std::hint::black_box(diagonal_open(&p, &budget).unwrap()),
            BatchSize::SmallInput,
        )
    });
}

fn dm_completion(c: &mut Criterion) {
    // the 6-element "crown-capped" poset: two antichains of three
    let n = 6usize;
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for low in 0..3 {
        for high in 3..6 {
            if low != high - 3 {
                leq[low][high] = true;
            }
        }
    }
    c.bench_function("dm-completion/crown-6", |b| {
        b.iter(|| std::hint::black_box(constructions::dm_completion(&leq).unwrap()))
    });
}

criterion_group!(benches, overlap_search, frame_build, dm_completion);
criterion_main!(benches);

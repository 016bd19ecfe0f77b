use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use magform::formation::{sample_conjugators, Formation, FormationSpec};
use magform::magnus::{magnus_expand, verify_lcs_power_containment, LcsPowerCase, DEFAULT_ORDER_BOUND};
use magform::ncpoly::infiltration;
use magform::ring::Integers;
use magform::words::{words_up_to, Alphabet, Word};
use magform::Exec;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn fundamental_matrix(c: &mut Criterion) {
    let spec = FormationSpec::lower_p_central(Alphabet::standard(3).unwrap(), 5, 4, None).unwrap();
    let mut group = c.benchmark_group("fundamental_matrix_k3_p5_n4");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let f = Formation::new(spec.clone(), exec).unwrap();
                black_box(f.fundamental_matrix(exec).unwrap())
            })
        });
    }
    group.finish();
}

fn cfl_sample(c: &mut Criterion) {
    let groups = sample_conjugators(2, 200, 8, 1);
    let pairs: Vec<(Word, Word)> = words_up_to(2, 3)
        .filter(|u| !u.is_empty())
        .flat_map(|u| {
            words_up_to(2, 5 - u.len())
                .filter(|v| !v.is_empty())
                .map(move |v| (u.clone(), v))
                .collect::<Vec<_>>()
        })
        .collect();
    let products: Vec<_> = pairs.iter().map(|(u, v)| infiltration(&Integers, u, v)).collect();
    let mut group = c.benchmark_group("cfl_200_words_deg5");
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let ok = exec.map(&groups, |g| {
                    let s = magnus_expand(g, 2, 5, &Integers).unwrap();
                    pairs.iter().zip(&products).all(|((u, v), f)| {
                        s.coeff(u).unwrap() * s.coeff(v).unwrap() == s.scalar_product(f).unwrap()
                    })
                });
                black_box(ok)
            })
        });
    }
    group.finish();
}

fn lcs_power(c: &mut Criterion) {
    let case = LcsPowerCase { i: 3, i_prime: 1, p: 2, j: 1, j_prime: 3 };
    let mut group = c.benchmark_group("lcs_power_i3_p2_j1_full_scan");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(verify_lcs_power_containment(case, DEFAULT_ORDER_BOUND, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, fundamental_matrix, cfl_sample, lcs_power);
criterion_main!(benches);

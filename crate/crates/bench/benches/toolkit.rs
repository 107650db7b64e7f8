use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lowdisc::algebra::Poly;
use lowdisc::diophantine::zaremba_search;
use lowdisc::factorizer::factor;
use lowdisc::pointsets::{digital_net, lattice_points, niederreiter_matrices};
use lowdisc::quality::{minimal_t_dual, minimal_t_geometric, p_alpha, star_discrepancy};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("niederreiter");
    for m in [6usize, 10, 14] {
        group.bench_with_input(BenchmarkId::new("b2_s3", m), &m, |bch, &m| {
            bch.iter(|| {
                let g = niederreiter_matrices(2, 3, m, m).unwrap();
                digital_net(black_box(&g)).unwrap()
            })
        });
    }
    group.finish();
}

fn t_value(c: &mut Criterion) {
    let mut group = c.benchmark_group("t_value");
    for m in [4usize, 6, 8] {
        let g = niederreiter_matrices(2, 3, m, m).unwrap();
        let net = digital_net(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("geometric", m), &net, |bch, net| {
            bch.iter(|| minimal_t_geometric(black_box(net), 2, m).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dual", m), &g, |bch, g| {
            bch.iter(|| minimal_t_dual(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn factoring(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor");
    // x^12 + x^7 + x^3 + 1 over F_2 and x^12 + 2x^5 + x + 2 over F_3
    let f2 = Poly::parse_coeffs(2, "1,0,0,1,0,0,0,1,0,0,0,0,1").unwrap();
    let f3 = Poly::parse_coeffs(3, "2,1,0,0,0,2,0,0,0,0,0,0,1").unwrap();
    group.bench_function("deg12_p2", |bch| bch.iter(|| factor(black_box(&f2)).unwrap()));
    group.bench_function("deg12_p3", |bch| bch.iter(|| factor(black_box(&f3)).unwrap()));
    group.finish();
}

fn discrepancy(c: &mut Criterion) {
    let mut group = c.benchmark_group("star_discrepancy");
    group.sample_size(10);
    for m in [6u32, 8, 10] {
        let n = 1u64 << m;
        let a = zaremba_search(n, 3).unwrap() as i64;
        let p = lattice_points(&[1, a], n);
        group.bench_with_input(BenchmarkId::new("lattice_2d", n), &p, |bch, p| {
            bch.iter(|| star_discrepancy(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn worst_case_error(c: &mut Criterion) {
    c.bench_function("p2_fibonacci_987", |bch| bch.iter(|| p_alpha(black_box(&[1, 610]), 987, 2).unwrap()));
}

criterion_group!(benches, construction, t_value, factoring, discrepancy, worst_case_error);
criterion_main!(benches);

//! Parallel-versus-sequential comparison of the batch entry points: the
//! randomized spectrum sweep behind the real-spectrum property check and a
//! dense eigenfunction grid tabulation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use darboux::darboux::{classify_finite_series, eigenfunction, spectrum, LameProblem, Rational};
use darboux::exec::{map_items, ExecMode};
use darboux::specfun::Modulus;

fn sweep_problems() -> Vec<LameProblem> {
    let mut out = Vec::new();
    for num_l in -9..=9i64 {
        for num_m in -9..=9i64 {
            for &k2 in &[0.3, 0.6] {
                out.push(LameProblem::new(
                    Rational::half(num_l),
                    Rational::half(num_m),
                    Modulus::new(k2).unwrap(),
                ));
            }
        }
    }
    out
}

fn spectrum_sweep(mode: ExecMode, problems: Vec<LameProblem>) -> usize {
    map_items(mode, problems, |p| {
        let Ok(specs) = classify_finite_series(&p) else { return 0usize };
        specs
            .iter()
            .filter(|s| s.truncation.is_some_and(|n| n <= 8))
            .map(|s| spectrum(&p, s).map(|r| r.eigenvalues.len()).unwrap_or(0))
            .sum()
    })
    .into_iter()
    .sum()
}

fn eigenfunction_grid(mode: ExecMode, points: usize) -> f64 {
    let p = LameProblem::new(Rational::half(1), Rational::half(7), Modulus::new(0.5).unwrap());
    let specs = classify_finite_series(&p).unwrap();
    let spec = specs.iter().find(|s| s.family.name() == "Psi_tilde_5").unwrap();
    let e = spectrum(&p, spec).unwrap().eigenvalues[0];
    let f = eigenfunction(&p, spec, e).unwrap();
    let kq = p.quarter_period();
    let us: Vec<f64> = (0..points).map(|i| 2.0 * kq * i as f64 / points as f64).collect();
    map_items(mode, us, |u| f.eval(u).unwrap())
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max)
}

fn bench_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum_sweep");
    group.sample_size(10);
    for mode in [ExecMode::Sequential, ExecMode::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &m| {
            b.iter(|| spectrum_sweep(m, sweep_problems()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("eigenfunction_grid");
    group.sample_size(10);
    for mode in [ExecMode::Sequential, ExecMode::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &m| {
            b.iter(|| eigenfunction_grid(m, 2000))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_modes);
criterion_main!(benches);

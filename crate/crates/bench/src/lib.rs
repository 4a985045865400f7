//! Benchmarks for the core algorithms, run with `cargo bench -p syzygy-bench`.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use syzygy_core::algebra::{quotient_from_polynomials, Algebra};
use syzygy_core::decomp::{decompose, is_isomorphic, Budget, ClassRegistry};
use syzygy_core::jmod::{j_class, torsion_test};
use syzygy_core::linalg::Matrix;
use syzygy_core::moduletheory::sample::{random_conjugate, random_module};
use syzygy_core::moduletheory::{cosyzygy, Module};
use syzygy_core::resolution::{detect_periodicity, minimal_resolution};

fn algebra(p: u32, vars: &[&str], gens: &[&str]) -> Arc<Algebra> {
    Arc::new(quotient_from_polynomials(p, vars, gens).unwrap())
}

fn random_matrix(p: u32, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let cols: Vec<Vec<u32>> = (0..n).map(|_| (0..n).map(|_| rng.random_range(0..p)).collect()).collect();
    Matrix::from_columns(p, n, &cols)
}

pub fn linalg(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for n in [16usize, 64, 128] {
        let m = random_matrix(7, n, &mut rng);
        c.bench_function(&format!("row_reduce/{n}"), |b| b.iter(|| black_box(&m).row_reduce()));
        c.bench_function(&format!("kernel/{n}"), |b| b.iter(|| black_box(&m).kernel_basis()));
    }
}

pub fn algebras(c: &mut Criterion) {
    c.bench_function("quotient/ci_x3_y3", |b| {
        b.iter(|| quotient_from_polynomials(3, &["x", "y"], black_box(&["x^3", "y^3"])).unwrap())
    });
    c.bench_function("quotient/x_y_z_squares", |b| {
        b.iter(|| quotient_from_polynomials(2, &["x", "y", "z"], black_box(&["x^2", "y^2", "z^2"])).unwrap())
    });
}

pub fn resolutions(c: &mut Criterion) {
    let ci = algebra(3, &["x", "y"], &["x^2", "y^2"]);
    let sq = algebra(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let k_ci = Module::residue_field(&ci);
    let k_sq = Module::residue_field(&sq);
    c.bench_function("resolution/ci_k_8", |b| b.iter(|| minimal_resolution(black_box(&k_ci), 8)));
    c.bench_function("resolution/square_zero_k_5", |b| b.iter(|| minimal_resolution(black_box(&k_sq), 5)));
    c.bench_function("cosyzygy/ci_k_3", |b| b.iter(|| cosyzygy(black_box(&k_ci), 3)));
    let h = algebra(5, &["x"], &["x^4"]);
    let m = Module::cyclic(&h, &[h.parse_element("x").unwrap()]).unwrap();
    c.bench_function("periodicity/hypersurface", |b| {
        b.iter_batched(
            || ChaCha8Rng::seed_from_u64(1),
            |mut rng| detect_periodicity(&m, 6, &Budget::default(), &mut rng).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

pub fn decomposition(c: &mut Criterion) {
    let ci = algebra(3, &["x", "y"], &["x^2", "y^2"]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let m = random_module(&ci, 3, 2, &mut rng).direct_sum(&Module::free(&ci, 1)).unwrap();
    let n = random_conjugate(&m, &mut rng);
    c.bench_function("decompose/ci_rank4", |b| {
        b.iter_batched(
            || ChaCha8Rng::seed_from_u64(3),
            |mut rng| decompose(&m, &Budget::default(), &mut rng).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("iso/ci_conjugate", |b| {
        b.iter_batched(
            || ChaCha8Rng::seed_from_u64(4),
            |mut rng| is_isomorphic(&m, &n, &Budget::default(), &mut rng).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

pub fn jmodule(c: &mut Criterion) {
    let sq = algebra(2, &["x", "y"], &["x^2", "x*y", "y^2"]);
    let h = algebra(5, &["x"], &["x^4"]);
    let m = Module::cyclic(&h, &[h.parse_element("x").unwrap()]).unwrap();
    c.bench_function("torsion/square_zero_k", |b| {
        b.iter(|| {
            let mut reg = ClassRegistry::new(&sq, Budget::default(), 0);
            let x = j_class(&Module::residue_field(&sq), &mut reg).unwrap();
            torsion_test(&x, 6, &mut reg).unwrap()
        })
    });
    c.bench_function("torsion/hypersurface_orbit", |b| {
        b.iter(|| {
            let mut reg = ClassRegistry::new(&h, Budget::default(), 0);
            let x = j_class(&m, &mut reg).unwrap();
            torsion_test(&x, 6, &mut reg).unwrap()
        })
    });
}

pub fn benchmarks(c: &mut Criterion) {
    linalg(c);
    algebras(c);
    resolutions(c);
    decomposition(c);
    jmodule(c);
}

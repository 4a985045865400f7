//! Naive reference computations, written independently of the library's
//! linear algebra.
#![allow(dead_code, clippy::needless_range_loop)]

use std::sync::Arc;

use syzygy_core::algebra::{quotient_from_polynomials, Algebra};
use syzygy_core::linalg::Matrix;
use syzygy_core::moduletheory::Module;

pub fn algebra(p: u32, vars: &[&str], gens: &[&str]) -> Arc<Algebra> {
    Arc::new(quotient_from_polynomials(p, vars, gens).unwrap())
}

pub fn hypersurface() -> Arc<Algebra> {
    algebra(5, &["x"], &["x^4"])
}

pub fn dual_numbers() -> Arc<Algebra> {
    algebra(2, &["x"], &["x^2"])
}

pub fn complete_intersection() -> Arc<Algebra> {
    algebra(3, &["x", "y"], &["x^2", "y^2"])
}

pub fn square_zero() -> Arc<Algebra> {
    algebra(2, &["x", "y"], &["x^2", "x*y", "y^2"])
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv(a: i64, p: i64) -> i64 {
    pow_mod(a, p - 2, p)
}

pub fn to_i64(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c) as i64).collect()).collect()
}

/// Row echelon form by plain elimination; returns (rank, pivot columns, reduced rows).
pub fn echelon(rows: &[Vec<i64>], p: u32) -> (usize, Vec<usize>, Vec<Vec<i64>>) {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..a.len()).find(|&k| a[k][c] != 0) else { continue };
        a.swap(r, k);
        let iv = inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * iv % p;
        }
        for k in 0..a.len() {
            if k != r && a[k][c] != 0 {
                let f = a[k][c];
                for j in 0..ncols {
                    a[k][j] = (a[k][j] - f * a[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots, a)
}

pub fn rank(rows: &[Vec<i64>], p: u32) -> usize {
    echelon(rows, p).0
}

/// Basis of `{v : A v = 0}` as vectors.
pub fn nullspace(rows: &[Vec<i64>], ncols: usize, p: u32) -> Vec<Vec<i64>> {
    let (rk, pivots, red) = echelon(rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rk) {
                v[pc] = (-red[i][f]).rem_euclid(p as i64);
            }
            v
        })
        .collect()
}

fn mat_vec(a: &[Vec<i64>], v: &[i64], p: u32) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum::<i64>().rem_euclid(p as i64)).collect()
}

fn transpose(vs: &[Vec<i64>], len: usize) -> Vec<Vec<i64>> {
    (0..len).map(|i| vs.iter().map(|v| v[i]).collect()).collect()
}

/// Action matrices of a module as integer rows.
pub struct RawModule {
    pub p: u32,
    pub dim: usize,
    pub actions: Vec<Vec<Vec<i64>>>,
}

impl RawModule {
    pub fn of(m: &Module) -> RawModule {
        RawModule { p: m.p(), dim: m.dim(), actions: m.actions().iter().map(to_i64).collect() }
    }
}

/// Coordinates of the regular action of each basis element, `L_b[i][j]`.
fn regular(alg: &Algebra) -> Vec<Vec<Vec<i64>>> {
    let n = alg.dim();
    (0..n)
        .map(|b| {
            let mut l = vec![vec![0i64; n]; n];
            for j in 0..n {
                let prod = alg.structure_constants(b, j);
                for i in 0..n {
                    l[i][j] = prod[i] as i64;
                }
            }
            l
        })
        .collect()
}

/// Basis vectors of `m` for the algebra: the elements with nilpotent action.
fn radical_basis(alg: &Algebra) -> Vec<Vec<i64>> {
    let n = alg.dim();
    let p = alg.p();
    let reg = regular(alg);
    // e_b - c_b 1 spans m, with c_b the only eigenvalue of L_b
    let unit: Vec<i64> = alg.unit().iter().map(|&x| x as i64).collect();
    let mut out = Vec::new();
    for (b, l) in reg.iter().enumerate() {
        // residue of e_b = the unique eigenvalue of L_b
        let c = (0..p as i64)
            .find(|&c| {
                let mut shifted = l.clone();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = (row[i] - c).rem_euclid(p as i64);
                }
                rank(&shifted, p) < n
            })
            .unwrap();
        let mut v = vec![0i64; n];
        v[b] = 1;
        for i in 0..n {
            v[i] = (v[i] - c * unit[i]).rem_euclid(p as i64);
        }
        out.push(v);
    }
    let (rk, _, red) = echelon(&out, p);
    red.into_iter().take(rk).collect()
}

fn action_of(m: &RawModule, r: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; m.dim]; m.dim];
    for (b, a) in m.actions.iter().enumerate() {
        for i in 0..m.dim {
            for j in 0..m.dim {
                out[i][j] = (out[i][j] + r[b] * a[i][j]).rem_euclid(m.p as i64);
            }
        }
    }
    out
}

/// Spanning vectors of `mM`.
fn radical_span(alg: &Algebra, m: &RawModule) -> Vec<Vec<i64>> {
    let mut span = Vec::new();
    for r in radical_basis(alg) {
        let a = action_of(m, &r);
        for j in 0..m.dim {
            span.push((0..m.dim).map(|i| a[i][j]).collect());
        }
    }
    span
}

/// `dim M / mM`.
pub fn min_generators(alg: &Algebra, m: &RawModule) -> usize {
    m.dim - rank(&radical_span(alg, m), m.p)
}

/// `Ω M` computed from scratch: choose generators outside `mM`, map
/// `R^ν -> M`, and restrict the free action to the kernel.
pub fn syzygy(alg: &Algebra, m: &RawModule) -> RawModule {
    let p = m.p;
    let n = alg.dim();
    let mut span = radical_span(alg, m);
    let mut gens = Vec::new();
    for j in 0..m.dim {
        let mut e = vec![0i64; m.dim];
        e[j] = 1;
        let before = rank(&span, p);
        span.push(e.clone());
        if rank(&span, p) > before {
            gens.push(e);
        } else {
            span.pop();
        }
    }
    let nu = gens.len();
    // cover[:, (g, b)] = A_b g
    let mut cols = Vec::new();
    for g in &gens {
        for a in &m.actions {
            cols.push(mat_vec(a, g, p));
        }
    }
    let cover = transpose(&cols, m.dim);
    let kernel = nullspace(&cover, nu * n, p);
    let kdim = kernel.len();
    let reg = regular(alg);
    let actions = reg
        .iter()
        .map(|l| {
            // free action on R^ν is block diagonal L_b; express images in the kernel basis
            let images: Vec<Vec<i64>> = kernel
                .iter()
                .map(|v| {
                    let mut w = vec![0i64; nu * n];
                    for blk in 0..nu {
                        let part = mat_vec(l, &v[blk * n..(blk + 1) * n], p);
                        w[blk * n..(blk + 1) * n].copy_from_slice(&part);
                    }
                    w
                })
                .collect();
            let coords = solve_in_basis(&kernel, &images, nu * n, p);
            transpose(&coords, kdim)
        })
        .collect();
    RawModule { p, dim: kdim, actions }
}

/// Coordinates of each target vector in the given basis.
fn solve_in_basis(basis: &[Vec<i64>], targets: &[Vec<i64>], len: usize, p: u32) -> Vec<Vec<i64>> {
    let k = basis.len();
    targets
        .iter()
        .map(|t| {
            // augmented system [basis | t]
            let rows: Vec<Vec<i64>> =
                (0..len).map(|i| basis.iter().map(|b| b[i]).chain(std::iter::once(t[i])).collect()).collect();
            let (rk, pivots, red) = echelon(&rows, p);
            assert!(!pivots.contains(&k), "target outside the span");
            let mut x = vec![0i64; k];
            for (i, &pc) in pivots.iter().enumerate().take(rk) {
                x[pc] = red[i][k];
            }
            x
        })
        .collect()
}

/// Betti numbers by repeated naive syzygies.
pub fn betti(alg: &Algebra, m: &Module, steps: usize) -> Vec<usize> {
    let mut cur = RawModule::of(m);
    let mut out = Vec::new();
    for i in 0..=steps {
        out.push(min_generators(alg, &cur));
        if i < steps {
            cur = syzygy(alg, &cur);
        }
    }
    out
}

/// `dim Hom_R(M, N)` as the solution space of `B_b X = X A_b`.
pub fn hom_dim(m: &Module, n: &Module) -> usize {
    let (a, b) = (RawModule::of(m), RawModule::of(n));
    let (dm, dn) = (a.dim, b.dim);
    let unknowns = dn * dm;
    let mut rows = Vec::new();
    for (ab, bb) in a.actions.iter().zip(&b.actions) {
        for i in 0..dn {
            for j in 0..dm {
                // (B X)_{ij} - (X A)_{ij}
                let mut row = vec![0i64; unknowns];
                for k in 0..dn {
                    row[k * dm + j] += bb[i][k];
                }
                for k in 0..dm {
                    row[i * dm + k] -= ab[k][j];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    unknowns - rank(&rows, m.p())
}

/// Jordan type of a nilpotent matrix: block sizes, largest first.
pub fn jordan_type(x: &Matrix) -> Vec<usize> {
    let p = x.modulus();
    let n = x.rows();
    let a = to_i64(x);
    let mut ranks = vec![n];
    let mut power = a.clone();
    loop {
        let r = rank(&power, p);
        ranks.push(r);
        if r == 0 {
            break;
        }
        power = power
            .iter()
            .map(|row| (0..n).map(|j| (0..n).map(|k| row[k] * a[k][j]).sum::<i64>().rem_euclid(p as i64)).collect())
            .collect();
    }
    // blocks of size >= s: ranks[s-1] - ranks[s]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for s in (1..=at_least.len()).rev() {
        let exactly = at_least[s - 1] - at_least.get(s).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(s, exactly));
    }
    sizes
}

/// `k[x]/(x^i)` as a module over `k[x]/(x^n)` with basis `1, x, ..., x^(i-1)`,
/// built directly from shift matrices.
pub fn truncated(alg: &Arc<Algebra>, i: usize) -> Module {
    let p = alg.p();
    let x = alg.parse_element("x").unwrap();
    let n = alg.dim();
    // basis element b of the algebra acts as the polynomial it represents
    let shift = |e: usize| {
        let mut m = Matrix::zeros(p, i, i);
        for c in 0..i {
            if c + e < i {
                m.set(c + e, c, 1);
            }
        }
        m
    };
    let mut powers = vec![alg.unit().to_vec()];
    for _ in 1..n {
        powers.push(alg.mul(powers.last().unwrap(), &x));
    }
    // express each basis vector of the algebra in the powers of x
    let cols: Vec<Vec<u32>> = powers.clone();
    let change = Matrix::from_columns(p, n, &cols).inverse().unwrap().unwrap();
    let actions = (0..n)
        .map(|b| {
            let mut acc = Matrix::zeros(p, i, i);
            for e in 0..n {
                let c = change.get(e, b);
                if c != 0 {
                    acc.add_scaled(&shift(e), c);
                }
            }
            acc
        })
        .collect();
    Module::from_actions(alg, actions).unwrap()
}

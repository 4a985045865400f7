use std::cmp::Reverse;
use std::collections::BTreeMap;

use super::expr::{self, ExprRing};
use super::{Algebra, AlgebraError};
use crate::linalg::Matrix;

/// Ambient algebra `F_p[x_1..x_n] / (x_1^D, ..., x_n^D)` used to close an
/// ideal under multiplication.
struct Truncated<'a> {
    p: u32,
    bound: u32,
    variables: &'a [&'a str],
}

type Poly = BTreeMap<Vec<u32>, u32>;

impl ExprRing for Truncated<'_> {
    type Elem = Poly;

    fn constant(&self, c: i64) -> Poly {
        let mut out = Poly::new();
        let c = c.rem_euclid(self.p as i64) as u32;
        if c != 0 {
            out.insert(vec![0; self.variables.len()], c);
        }
        out
    }

    fn variable(&self, name: &str) -> Option<Poly> {
        let i = self.variables.iter().position(|v| *v == name)?;
        let mut e = vec![0; self.variables.len()];
        e[i] = 1;
        let mut out = Poly::new();
        if self.bound > 1 {
            out.insert(e, 1);
        }
        Some(out)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        for (m, &c) in b {
            let slot = out.entry(m.clone()).or_insert(0);
            *slot = (*slot + c) % self.p;
            if *slot == 0 {
                out.remove(m);
            }
        }
        out
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, &ca) in a {
            for (mb, &cb) in b {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if m.iter().any(|&e| e >= self.bound) {
                    continue;
                }
                let slot = out.entry(m.clone()).or_insert(0);
                *slot = ((*slot as u64 + ca as u64 * cb as u64) % self.p as u64) as u32;
                if *slot == 0 {
                    out.remove(&m);
                }
            }
        }
        out
    }

    fn neg(&self, a: &Poly) -> Poly {
        a.iter().map(|(m, &c)| (m.clone(), (self.p - c) % self.p)).collect()
    }
}

const AMBIENT_LIMIT: usize = 2048;

/// Monomials of the truncated ambient, ordered largest first: by total degree
/// descending, then by exponent vector ascending. Eliminating in this column
/// order pivots on large monomials, so the non-pivot columns are standard
/// monomials.
fn ambient_monomials(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut all = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for m in &all {
            for e in 0..bound {
                let mut m2: Vec<u32> = m.clone();
                m2.push(e);
                next.push(m2);
            }
        }
        all = next;
    }
    all.sort_by_key(|m| (Reverse(m.iter().sum::<u32>()), m.clone()));
    all
}

fn monomial_name(vars: &[&str], m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Reduce `v` modulo the row space of an RREF matrix with the given pivots.
fn reduce_against(rref: &Matrix, pivots: &[usize], v: &mut [u32], p: u32) {
    for (r, &c) in pivots.iter().enumerate() {
        let f = v[c];
        if f == 0 {
            continue;
        }
        let row = rref.row(r);
        for (x, &y) in v.iter_mut().zip(row) {
            *x = ((*x as u64 + (p - f) as u64 * y as u64) % p as u64) as u32;
        }
    }
}

/// The quotient `F_p[variables] / (generators)`, computed by closing the
/// generators under multiplication by the variables inside a truncated
/// polynomial ring and taking the standard monomials as basis.
///
/// Every variable must have a power in the closed ideal; otherwise the
/// quotient is rejected as not finite-dimensional. The result is the
/// quotient localized at the origin, which is the whole quotient whenever
/// the ideal is primary to `(x_1, ..., x_n)`.
pub fn quotient_from_polynomials(
    p: u32,
    variables: &[&str],
    generators: &[&str],
) -> Result<Algebra, AlgebraError> {
    if !crate::linalg::is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let exprs = generators.iter().map(|g| expr::parse(g)).collect::<Result<Vec<_>, _>>()?;
    let nvars = variables.len();
    let max_degree = generators
        .iter()
        .zip(&exprs)
        .map(|(g, e)| {
            // degree bound from a generous truncation
            let ring = Truncated { p, bound: 64, variables };
            e.eval(&ring)
                .map(|poly| poly.keys().map(|m| m.iter().sum::<u32>()).max().unwrap_or(0))
                .map_err(|message| AlgebraError::Eval { input: g.to_string(), message })
        })
        .collect::<Result<Vec<u32>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);

    let mut bound = (max_degree + 1).max(2);
    loop {
        let ambient = ambient_monomials(nvars, bound);
        match try_bound(p, variables, &exprs, generators, bound, &ambient)? {
            Ok(alg) => return Ok(alg),
            Err(variable) => {
                let next = (bound as usize * 2).checked_pow(nvars as u32);
                if next.is_none_or(|size| size > AMBIENT_LIMIT) {
                    return Err(AlgebraError::NotFiniteDimensional { variable });
                }
                bound *= 2;
            }
        }
    }
}

fn try_bound(
    p: u32,
    variables: &[&str],
    exprs: &[expr::Expr],
    sources: &[&str],
    bound: u32,
    ambient: &[Vec<u32>],
) -> Result<Result<Algebra, String>, AlgebraError> {
    let nvars = variables.len();
    let n = ambient.len();
    let index: BTreeMap<&[u32], usize> = ambient.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let ring = Truncated { p, bound, variables };
    let to_vec = |poly: &Poly| {
        let mut v = vec![0u32; n];
        for (m, &c) in poly {
            v[index[m.as_slice()]] = c;
        }
        v
    };

    let mut gens = Vec::new();
    for (e, src) in exprs.iter().zip(sources) {
        let poly = e
            .eval(&ring)
            .map_err(|message| AlgebraError::Eval { input: src.to_string(), message })?;
        gens.push(to_vec(&poly));
    }

    // multiplication by each variable, as a map on ambient indices
    let shifts: Vec<Vec<Option<usize>>> = (0..nvars)
        .map(|v| {
            ambient
                .iter()
                .map(|mono| {
                    let mut t = mono.clone();
                    t[v] += 1;
                    (t[v] < bound).then(|| index[t.as_slice()])
                })
                .collect()
        })
        .collect();
    let shift_rows = |m: &Matrix, s: &[Option<usize>]| {
        let mut out = Matrix::zeros(p, m.rows(), n);
        for r in 0..m.rows() {
            for (c, &x) in m.row(r).iter().enumerate() {
                if let (true, Some(t)) = (x != 0, s[c]) {
                    out.set(r, t, x);
                }
            }
        }
        out
    };

    let mut span = Matrix::from_columns(p, n, &gens).transpose();
    let mut rank = usize::MAX;
    loop {
        let red = span.row_reduce();
        let basis = red.rref.select_rows(&(0..red.rank).collect::<Vec<_>>());
        if red.rank == rank {
            span = basis;
            break;
        }
        rank = red.rank;
        let mut next = basis.clone();
        for s in &shifts {
            next = next.vstack(&shift_rows(&basis, s));
        }
        span = next;
    }
    let red = span.row_reduce();
    let (rref, pivots) = (red.rref, red.pivot_columns);

    let reduce = |mono: &[u32]| -> Vec<u32> {
        let mut v = vec![0u32; n];
        if mono.iter().all(|&e| e < bound) {
            v[index[mono]] = 1;
        }
        reduce_against(&rref, &pivots, &mut v, p);
        v
    };

    // every variable needs a power below the truncation bound in the ideal
    for (vi, name) in variables.iter().enumerate() {
        let found = (1..bound).any(|d| {
            let mut m = vec![0; nvars];
            m[vi] = d;
            reduce(&m).iter().all(|&x| x == 0)
        });
        if !found {
            return Ok(Err(name.to_string()));
        }
    }

    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut standard: Vec<&Vec<u32>> = (0..n).filter(|&i| !is_pivot[i]).map(|i| &ambient[i]).collect();
    if standard.is_empty() {
        return Err(AlgebraError::NotLocal { codimension: 0 });
    }
    standard.sort_by_key(|m| (m.iter().sum::<u32>(), Reverse((*m).clone())));
    let dim = standard.len();
    let coords = |v: &[u32]| -> Vec<i64> {
        standard.iter().map(|m| v[index[m.as_slice()]] as i64).collect()
    };

    let mut constants = vec![vec![vec![0i64; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod: Vec<u32> = standard[i].iter().zip(standard[j]).map(|(a, b)| a + b).collect();
            constants[i][j] = coords(&reduce(&prod));
        }
    }
    let unit = coords(&reduce(&vec![0; nvars]));
    let names: Vec<String> = standard.iter().map(|m| monomial_name(variables, m)).collect();
    let var_elems: Vec<(String, Vec<u32>)> = (0..nvars)
        .map(|vi| {
            let mut m = vec![0; nvars];
            m[vi] = 1;
            let c = coords(&reduce(&m)).into_iter().map(|x| x as u32).collect();
            (variables[vi].to_string(), c)
        })
        .collect();
    Algebra::new(p, names, constants, unit, var_elems).map(Ok)
}

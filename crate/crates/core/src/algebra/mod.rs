//! Finite-dimensional commutative local algebras over F_p.
//!
//! An [`Algebra`] is given by structure constants on a basis
//! `e_0, ..., e_{n-1}`: `e_i * e_j = sum_k c[i][j][k] e_k`. Construction
//! validates commutativity, associativity, the unit, and locality with
//! residue field F_p, then caches the [`LocalProfile`].

pub mod expr;
mod quotient;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{is_prime, Matrix};

pub use quotient::quotient_from_polynomials;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("structure constants are not commutative: e_{i} e_{j} != e_{j} e_{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("structure constants are not associative at (e_{i} e_{j}) e_{k}")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("the given unit does not act as the identity")]
    BadUnit,
    #[error("algebra is not local with residue field F_p (nilradical has codimension {codimension})")]
    NotLocal { codimension: usize },
    #[error("no power of `{variable}` lies in the ideal; the quotient is not finite-dimensional")]
    NotFiniteDimensional { variable: String },
    #[error(transparent)]
    Parse(#[from] expr::ParseError),
    #[error("cannot evaluate `{input}`: {message}")]
    Eval { input: String, message: String },
}

/// Invariants of the maximal ideal `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalProfile {
    /// Basis of `m`, one vector per column.
    #[serde(skip)]
    pub radical_basis: Matrix,
    /// Basis of the socle `ann(m)`, one vector per column.
    #[serde(skip)]
    pub socle_basis: Matrix,
    pub dim: usize,
    pub radical_dim: usize,
    pub embedding_dim: usize,
    pub socle_dim: usize,
    pub loewy_length: usize,
    /// `dim_k m^i` for `i = 0, 1, ..., loewy_length`.
    pub radical_power_dims: Vec<usize>,
    pub is_field: bool,
    pub is_gorenstein: bool,
    pub is_hypersurface: bool,
}

#[derive(Clone)]
pub struct Algebra {
    p: u32,
    basis_names: Vec<String>,
    // products[i][j] = coordinates of e_i e_j
    products: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
    variables: Vec<(String, Vec<u32>)>,
    regular: Vec<Matrix>,
    profile: LocalProfile,
    radical_generators: Vec<Vec<u32>>,
    residue_functional: Vec<u32>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.products == other.products && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("p", &self.p)
            .field("basis", &self.basis_names)
            .finish()
    }
}

/// Build and validate an algebra from structure constants.
///
/// `structure_constants[i][j][k]` is the coefficient of `e_k` in `e_i e_j`.
pub fn build_algebra(
    p: u32,
    basis_names: Vec<String>,
    structure_constants: Vec<Vec<Vec<i64>>>,
    unit: Vec<i64>,
) -> Result<Algebra, AlgebraError> {
    let variables = basis_names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let mut v = vec![0u32; basis_names.len()];
            v[i] = 1;
            (name.clone(), v)
        })
        .collect();
    Algebra::new(p, basis_names, structure_constants, unit, variables)
}

impl Algebra {
    pub(crate) fn new(
        p: u32,
        basis_names: Vec<String>,
        structure_constants: Vec<Vec<Vec<i64>>>,
        unit: Vec<i64>,
        variables: Vec<(String, Vec<u32>)>,
    ) -> Result<Algebra, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let n = basis_names.len();
        if n == 0 {
            return Err(AlgebraError::NotLocal { codimension: 0 });
        }
        if unit.len() != n {
            return Err(AlgebraError::Malformed(format!("unit has {} coordinates, expected {n}", unit.len())));
        }
        if structure_constants.len() != n
            || structure_constants.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(AlgebraError::Malformed(format!("structure constants must have shape {n}x{n}x{n}")));
        }
        let red = |x: i64| x.rem_euclid(p as i64) as u32;
        let products: Vec<Vec<Vec<u32>>> = structure_constants
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|&x| red(x)).collect()).collect())
            .collect();
        let unit: Vec<u32> = unit.into_iter().map(red).collect();

        for (i, row) in products.iter().enumerate() {
            for j in i + 1..n {
                if row[j] != products[j][i] {
                    return Err(AlgebraError::NotCommutative { i, j });
                }
            }
        }

        // regular representation: column i of L_b is e_b e_i
        let regular: Vec<Matrix> = (0..n)
            .map(|b| Matrix::from_columns(p, n, &products[b].clone()))
            .collect();

        let mut unit_action = Matrix::zeros(p, n, n);
        for (b, &u) in unit.iter().enumerate() {
            unit_action.add_scaled(&regular[b], u);
        }
        if unit_action != Matrix::identity(p, n) {
            return Err(AlgebraError::BadUnit);
        }

        // associativity: L_{e_i e_j} = L_i L_j
        for i in 0..n {
            for j in i..n {
                let mut lhs = Matrix::zeros(p, n, n);
                for (k, &c) in products[i][j].iter().enumerate() {
                    lhs.add_scaled(&regular[k], c);
                }
                let rhs = &regular[i] * &regular[j];
                if lhs != rhs {
                    let k = (0..n).find(|&k| lhs.column(k) != rhs.column(k)).unwrap_or(0);
                    return Err(AlgebraError::NotAssociative { i, j, k });
                }
            }
        }

        let mut alg = Algebra {
            p,
            basis_names,
            products,
            unit,
            variables,
            regular,
            profile: LocalProfile {
                radical_basis: Matrix::zeros(p, n, 0),
                socle_basis: Matrix::zeros(p, n, 0),
                dim: n,
                radical_dim: 0,
                embedding_dim: 0,
                socle_dim: 0,
                loewy_length: 0,
                radical_power_dims: vec![],
                is_field: false,
                is_gorenstein: false,
                is_hypersurface: false,
            },
            radical_generators: vec![],
            residue_functional: vec![],
        };
        alg.profile = alg.compute_profile()?;
        alg.radical_generators = alg.compute_radical_generators();
        alg.residue_functional = alg.compute_residue_functional();
        Ok(alg)
    }

    fn compute_profile(&self) -> Result<LocalProfile, AlgebraError> {
        let n = self.dim();
        let p = self.p;
        // x -> x^p is F_p-linear on a commutative algebra of characteristic p,
        // and x is nilpotent iff x^(p^j) = 0 once p^j >= n.
        let mut exponent: u64 = 1;
        while exponent < n as u64 {
            exponent *= p as u64;
        }
        let columns: Vec<Vec<u32>> = (0..n).map(|i| self.pow(&self.basis_vector(i), exponent)).collect();
        let frobenius = Matrix::from_columns(p, n, &columns);
        let radical_basis = frobenius.kernel_basis();
        let codimension = n - radical_basis.cols();
        if codimension != 1 {
            return Err(AlgebraError::NotLocal { codimension });
        }

        let mut powers = vec![Matrix::identity(p, n), radical_basis.clone()];
        while powers.last().unwrap().cols() > 0 {
            let prev = powers.last().unwrap();
            let mut cols = Vec::new();
            for b in radical_basis.columns() {
                let lb = self.element_action(&b);
                cols.extend((&lb * prev).columns());
            }
            let next = Matrix::from_columns(p, n, &cols).column_space();
            powers.push(next);
        }
        let radical_power_dims: Vec<usize> = powers.iter().map(Matrix::cols).collect();
        let loewy_length = radical_power_dims.len() - 1;
        let m2 = radical_power_dims.get(2).copied().unwrap_or(0);
        let radical_dim = radical_basis.cols();
        let embedding_dim = radical_dim - m2;

        let mut stacked = Matrix::zeros(p, 0, n);
        for b in radical_basis.columns() {
            stacked = stacked.vstack(&self.element_action(&b));
        }
        let socle_basis = stacked.kernel_basis();
        let socle_dim = socle_basis.cols();

        Ok(LocalProfile {
            radical_basis,
            socle_basis,
            dim: n,
            radical_dim,
            embedding_dim,
            socle_dim,
            loewy_length,
            radical_power_dims,
            is_field: radical_dim == 0,
            is_gorenstein: socle_dim == 1,
            is_hypersurface: embedding_dim <= 1,
        })
    }

    fn compute_radical_generators(&self) -> Vec<Vec<u32>> {
        let m = &self.profile.radical_basis;
        let mut cols = Vec::new();
        for a in m.columns() {
            let la = self.element_action(&a);
            cols.extend((&la * m).columns());
        }
        let m2 = Matrix::from_columns(self.p, self.dim(), &cols);
        Matrix::extending_columns(&m2, m)
            .into_iter()
            .map(|j| m.column(j))
            .collect()
    }

    fn compute_residue_functional(&self) -> Vec<u32> {
        let frame = Matrix::column_vector(self.p, &self.unit).hstack(&self.profile.radical_basis);
        let inv = frame.inverse().unwrap().expect("unit and radical span the algebra");
        inv.row(0).to_vec()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn profile(&self) -> &LocalProfile {
        &self.profile
    }

    pub fn is_gorenstein(&self) -> bool {
        self.profile.is_gorenstein
    }

    pub fn is_field(&self) -> bool {
        self.profile.is_field
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    /// Coordinates of the product `e_i e_j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[u32] {
        &self.products[i][j]
    }

    /// Named elements usable in expressions (variables of a polynomial
    /// quotient, or the basis names of a structure-constant algebra).
    pub fn variables(&self) -> &[(String, Vec<u32>)] {
        &self.variables
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Multiplication by the basis element `e_b` on the regular module.
    pub fn regular_action(&self, b: usize) -> &Matrix {
        &self.regular[b]
    }

    /// Multiplication by an arbitrary element.
    pub fn element_action(&self, r: &[u32]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.p, n, n);
        for (b, &c) in r.iter().enumerate() {
            out.add_scaled(&self.regular[b], c);
        }
        out
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.element_action(a).mul_vec(b)
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| ((x as u64 * c as u64) % self.p as u64) as u32).collect()
    }

    pub fn pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut result = self.unit.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Image of `r` in the residue field `R/m = F_p`.
    pub fn residue(&self, r: &[u32]) -> u32 {
        let p = self.p as u64;
        (self.residue_functional.iter().zip(r).map(|(&a, &b)| a as u64 * b as u64 % p).sum::<u64>() % p) as u32
    }

    /// Row vector of the projection `R -> R/m = F_p`.
    pub fn residue_functional(&self) -> &[u32] {
        &self.residue_functional
    }

    pub fn is_unit(&self, r: &[u32]) -> bool {
        self.residue(r) != 0
    }

    pub fn inverse(&self, r: &[u32]) -> Option<Vec<u32>> {
        if !self.is_unit(r) {
            return None;
        }
        self.element_action(r).solve(&self.unit).ok().flatten()
    }

    /// Lifts of a basis of `m/m^2`; they generate `m` as an ideal.
    pub fn radical_generators(&self) -> &[Vec<u32>] {
        &self.radical_generators
    }

    /// Evaluate a polynomial expression over the algebra's named variables.
    pub fn parse_element(&self, input: &str) -> Result<Vec<u32>, AlgebraError> {
        let e = expr::parse(input)?;
        e.eval(self).map_err(|message| AlgebraError::Eval { input: input.to_string(), message })
    }

    /// Render an element using basis names, e.g. `x + 2*x*y`.
    pub fn format_element(&self, r: &[u32]) -> String {
        let terms: Vec<String> = r
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let name = &self.basis_names[i];
                match (c, name.as_str()) {
                    (c, "1") => c.to_string(),
                    (1, _) => name.clone(),
                    (c, _) => format!("{c}*{name}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl expr::ExprRing for Algebra {
    type Elem = Vec<u32>;

    fn constant(&self, c: i64) -> Vec<u32> {
        self.scale(c.rem_euclid(self.p as i64) as u32, &self.unit)
    }

    fn variable(&self, name: &str) -> Option<Vec<u32>> {
        self.variables.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone())
    }

    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        Algebra::add(self, a, b)
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        Algebra::mul(self, a, b)
    }

    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        self.scale(self.p - 1, a)
    }
}

/// Local invariants of an algebra.
pub fn analyze_local(a: &Algebra) -> LocalProfile {
    a.profile.clone()
}

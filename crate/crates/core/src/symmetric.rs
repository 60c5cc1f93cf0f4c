//! Named families of symmetric polynomials in the main variables.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{determinant, PolyMatrix};
use crate::poly::{Monomial, Polynomial, Scalar, VariableSet};
use num_traits::One;

/// Complete homogeneous symmetric polynomial `h_j` in `x_1, ..., x_i`.
pub fn complete_homogeneous(vars: &Arc<VariableSet>, i: usize, j: u32) -> Result<Polynomial> {
    if i == 0 || i > vars.n_main() {
        return Err(Error::OutOfRange(format!("complete homogeneous in {i} variables with n = {}", vars.n_main())));
    }
    let idx: Vec<usize> = (0..i).collect();
    Ok(complete_homogeneous_in(vars, &idx, j))
}

/// Sum of all monomials of total degree `j` in the listed variables.
pub fn complete_homogeneous_in(vars: &Arc<VariableSet>, var_indices: &[usize], j: u32) -> Polynomial {
    let mut out = Polynomial::zero(vars);
    let mut exps = vec![0u32; vars.len()];
    fill_compositions(var_indices, j, &mut exps, &mut |e| {
        out.add_term(Monomial::from_exponents(e.to_vec()), Scalar::one());
    });
    out
}

fn fill_compositions(idx: &[usize], left: u32, exps: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    match idx {
        [] => {
            if left == 0 {
                emit(exps);
            }
        }
        [last] => {
            exps[*last] = left;
            emit(exps);
            exps[*last] = 0;
        }
        [first, rest @ ..] => {
            for e in 0..=left {
                exps[*first] = e;
                fill_compositions(rest, left - e, exps, emit);
            }
            exps[*first] = 0;
        }
    }
}

/// Elementary symmetric polynomial `s_k` of arbitrary (possibly symbolic) values.
pub fn elementary_symmetric(vars: &Arc<VariableSet>, k: usize, values: &[Polynomial]) -> Result<Polynomial> {
    if k > values.len() {
        return Err(Error::OutOfRange(format!("s_{k} of {} values", values.len())));
    }
    Ok(elementary_all(vars, values).swap_remove(k))
}

/// `[s_0, s_1, ..., s_m]` of `m` values.
pub(crate) fn elementary_all(vars: &Arc<VariableSet>, values: &[Polynomial]) -> Vec<Polynomial> {
    let mut e = vec![Polynomial::zero(vars); values.len() + 1];
    e[0] = Polynomial::one(vars);
    for (seen, v) in values.iter().enumerate() {
        for k in (1..=seen + 1).rev() {
            e[k] = &e[k] + &(&e[k - 1] * v);
        }
    }
    e
}

/// `prod_{i<j} (values[j] - values[i])`.
pub fn vandermonde_of(vars: &Arc<VariableSet>, values: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::one(vars);
    for j in 0..values.len() {
        for i in 0..j {
            acc = &acc * &(&values[j] - &values[i]);
        }
    }
    acc
}

/// Vandermonde polynomial `v_n = prod_{i<j} (x_j - x_i)` of the main variables.
pub fn vandermonde_poly(vars: &Arc<VariableSet>) -> Polynomial {
    let xs: Vec<Polynomial> = (0..vars.n_main()).map(|k| Polynomial::var(vars, k)).collect();
    vandermonde_of(vars, &xs)
}

/// Strictly increasing row indices `0 <= i_1 < ... < i_n < d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchurIndex(Vec<u32>);

impl SchurIndex {
    pub fn new(columns: Vec<u32>, d: u32) -> Result<Self> {
        if columns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("Schur index {columns:?} is not strictly increasing")));
        }
        if columns.last().is_some_and(|&c| c >= d) {
            return Err(Error::OutOfRange(format!("Schur index {columns:?} with d = {d}")));
        }
        Ok(SchurIndex(columns))
    }

    pub fn columns(&self) -> &[u32] {
        &self.0
    }
}

/// Bialternant `det(x_k^{i_l}) / v_n`.
pub fn schur_polynomial(idx: &SchurIndex, vars: &Arc<VariableSet>) -> Result<Polynomial> {
    let n = vars.n_main();
    if idx.0.len() != n {
        return Err(Error::Dimension(format!("Schur index of length {} with n = {n}", idx.0.len())));
    }
    let alt = PolyMatrix::from_fn(vars, n, n, |l, k| Polynomial::var(vars, k).pow(idx.0[l]));
    determinant(&alt)?
        .exact_div(&vandermonde_poly(vars))
        .map_err(|_| Error::Internal("alternant not divisible by the Vandermonde polynomial".into()))
}

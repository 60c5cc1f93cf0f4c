//! Confluent Vandermonde matrices.
//!
//! A node `a` of multiplicity `d_i` contributes the `d x d_i` block whose
//! column `c` is the `c`-th scaled derivative of `(1, a, a^2, ..., a^{d-1})^T`,
//! i.e. entry `(r, c) = C(r, c) a^{r-c}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::nodes::{ColumnSubset, NodeMultiset};
use crate::poly::{binomial, Polynomial, Scalar, VariableSet};

pub fn vdm_block(value: &Polynomial, d: usize, width: usize) -> Result<PolyMatrix> {
    if width == 0 || width > d {
        return Err(Error::OutOfRange(format!("block width {width} with d = {d}")));
    }
    let vars = value.vars();
    let powers: Vec<Polynomial> = (0..d).map(|e| value.pow(e as u32)).collect();
    Ok(PolyMatrix::from_fn(vars, d, width, |r, c| {
        if r < c {
            Polynomial::zero(vars)
        } else {
            powers[r - c].scale(&Scalar::from_integer(binomial(r as u32, c as u32)))
        }
    }))
}

/// `V_d(A)`: the blocks of all nodes side by side, in node order.
pub fn assemble_vdm(nodes: &NodeMultiset, vars: &Arc<VariableSet>) -> Result<PolyMatrix> {
    let d = nodes.d();
    let mut acc = PolyMatrix::new(vars, d, 0, Vec::new())?;
    for (i, b) in nodes.blocks().iter().enumerate() {
        let block = vdm_block(&nodes.value_poly(i, vars)?, d, b.multiplicity)?;
        acc = acc.hconcat(&block)?;
    }
    Ok(acc)
}

/// Removes the columns picked by `subset`, keeping the order of the rest.
pub fn delete_columns(m: &PolyMatrix, subset: &ColumnSubset) -> Result<PolyMatrix> {
    if let Some(&bad) = subset.picks().iter().find(|&&c| c >= m.cols()) {
        return Err(Error::OutOfRange(format!("column {bad} of a {}-column matrix", m.cols())));
    }
    let keep: Vec<usize> = (0..m.cols()).filter(|&c| !subset.contains(c)).collect();
    m.select_columns(&keep)
}

/// Prepends the power columns `(1, x_k, ..., x_k^{d-1})^T` of the main variables.
pub fn attach_variable_columns(m: &PolyMatrix, vars: &Arc<VariableSet>) -> Result<PolyMatrix> {
    let n = vars.n_main();
    let d = m.rows();
    if m.cols() + n != d {
        return Err(Error::Dimension(format!("attaching {n} variable columns to a {d}x{} matrix", m.cols())));
    }
    let left = PolyMatrix::from_fn(vars, d, n, |r, k| Polynomial::var(vars, k).pow(r as u32));
    left.hconcat(m)
}

/// Closed form `prod_{i<j} (a_j - a_i)^{d_i d_j}` of `det V_d(A)`.
pub fn vdm_det_formula(nodes: &NodeMultiset, vars: &Arc<VariableSet>) -> Result<Polynomial> {
    let blocks = nodes.blocks();
    let mut acc = Polynomial::one(vars);
    for j in 0..blocks.len() {
        for i in 0..j {
            let diff = nodes.value_poly(j, vars)? - nodes.value_poly(i, vars)?;
            acc = acc * diff.pow((blocks[i].multiplicity * blocks[j].multiplicity) as u32);
        }
    }
    Ok(acc)
}

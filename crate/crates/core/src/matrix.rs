//! Dense matrices with polynomial entries and their exact determinants.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{same_vars, Polynomial, VariableSet};

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    vars: Arc<VariableSet>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// Row-major construction.
    pub fn new(vars: &Arc<VariableSet>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| !same_vars(e.vars(), vars)) {
            return Err(Error::VariableSetMismatch);
        }
        Ok(PolyMatrix { vars: vars.clone(), rows, cols, entries })
    }

    pub fn from_fn(
        vars: &Arc<VariableSet>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        PolyMatrix { vars: vars.clone(), rows, cols, entries }
    }

    pub fn identity(vars: &Arc<VariableSet>, n: usize) -> Self {
        Self::from_fn(vars, n, n, |r, c| if r == c { Polynomial::one(vars) } else { Polynomial::zero(vars) })
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// New matrix made of the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::OutOfRange(format!("column {bad} of a {}-column matrix", self.cols)));
        }
        Ok(Self::from_fn(&self.vars, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone()))
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("{} rows vs {} rows", self.rows, other.rows)));
        }
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VariableSetMismatch);
        }
        Ok(Self::from_fn(&self.vars, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).clone()).collect()).collect()
    }

    fn check_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(())
    }
}

/// Exact determinant: cofactor expansion up to dimension 4, fraction-free
/// elimination above that.
pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    m.check_square()?;
    if m.rows <= 4 {
        laplace_determinant(m)
    } else {
        bareiss_determinant(m)
    }
}

pub fn laplace_determinant(m: &PolyMatrix) -> Result<Polynomial> {
    m.check_square()?;
    let rows = m.to_rows();
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(laplace(&m.vars, &rows, 0, &cols))
}

fn laplace(vars: &Arc<VariableSet>, rows: &[Vec<Polynomial>], r: usize, cols: &[usize]) -> Polynomial {
    if cols.is_empty() {
        return Polynomial::one(vars);
    }
    let mut acc = Polynomial::zero(vars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(vars, rows, r + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Bareiss elimination over the polynomial ring; every division is exact.
pub fn bareiss_determinant(m: &PolyMatrix) -> Result<Polynomial> {
    m.check_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(Polynomial::one(&m.vars));
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = Polynomial::one(&m.vars);
    for k in 0..n - 1 {
        // full pivoting: columns free of main variables go first, so the
        // variable columns are only touched in the last steps
        let has_main: Vec<bool> = (0..n).map(|j| j >= k && (k..n).any(|i| !a[i][j].is_free_of_main())).collect();
        let pivot = (k..n)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| (has_main[j], a[i][j].num_terms(), a[i][j].max_main_degree()));
        let Some((p, q)) = pivot else {
            return Ok(Polynomial::zero(&m.vars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        if q != k {
            for row in a.iter_mut() {
                row.swap(q, k);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.exact_div(&prev).map_err(|_| Error::Internal("inexact Bareiss division".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Arc<VariableSet> {
        VariableSet::new(["x", "y"], ["a", "b"]).unwrap()
    }

    fn mat(v: &Arc<VariableSet>, n: usize, cells: &[&str]) -> PolyMatrix {
        let e = cells.iter().map(|s| Polynomial::parse(s, v).unwrap()).collect();
        PolyMatrix::new(v, n, cells.len() / n, e).unwrap()
    }

    #[test]
    fn identity_and_small() {
        let v = vars();
        for n in 0..7 {
            assert_eq!(determinant(&PolyMatrix::identity(&v, n)).unwrap(), Polynomial::one(&v));
        }
        let m = mat(&v, 2, &["a", "b", "x", "y"]);
        assert_eq!(determinant(&m).unwrap(), Polynomial::parse("a*y - b*x", &v).unwrap());
    }

    #[test]
    fn repeated_columns_vanish() {
        let v = vars();
        let m = mat(&v, 3, &["1", "1", "x", "a", "a", "y", "a^2", "a^2", "x*y"]);
        assert!(determinant(&m).unwrap().is_zero());
        let big = PolyMatrix::from_fn(&v, 5, 5, |r, c| Polynomial::var(&v, 2).pow(r as u32 * (c.min(3) as u32 + 1)));
        assert!(bareiss_determinant(&big).unwrap().is_zero());
    }

    #[test]
    fn bareiss_matches_laplace() {
        let v = vars();
        for n in 1..=5usize {
            let m = PolyMatrix::from_fn(&v, n, n, |r, c| {
                let s = format!("{}*x^{} + a*y - {} + b^{}", r + 2 * c + 1, (r * c) % 3, c, r % 2);
                Polynomial::parse(&s, &v).unwrap()
            });
            assert_eq!(bareiss_determinant(&m).unwrap(), laplace_determinant(&m).unwrap(), "n={n}");
        }
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let v = vars();
        let m = mat(&v, 3, &["0", "1", "0", "1", "0", "0", "0", "0", "a"]);
        assert_eq!(bareiss_determinant(&m).unwrap(), Polynomial::parse("-a", &v).unwrap());
    }

    #[test]
    fn non_square_is_an_error() {
        let v = vars();
        let m = mat(&v, 2, &["1", "2", "3", "4", "5", "6"]);
        assert!(matches!(determinant(&m), Err(Error::Dimension(_))));
        assert!(matches!(PolyMatrix::new(&v, 2, 2, vec![Polynomial::zero(&v)]), Err(Error::Dimension(_))));
    }
}

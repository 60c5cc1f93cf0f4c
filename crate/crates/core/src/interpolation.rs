//! Closed-form routes to the symmetric Hermite interpolant and the
//! determinantal Hermite basis.
//!
//! For a multiset `A` of size `d` and `n` main variables, each column subset
//! `A'` gives a basis element `omega_{A'} = det V(X u (A \ A')) / v_n` of the
//! space of symmetric polynomials with degree `<= d - n` in each variable.
//! The coordinate of the interpolant of `h` on `omega_{A'}` is
//! `eps_{A'} * D^{A'}(v_n h)(A') / v_d(A)`, where `D^{A'}` applies to `x_k` the
//! scaled derivative whose order is read off the `k`-th picked column label.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::determinant;
use crate::nodes::{combinations, enumerate_subsets, ColumnSubset, NodeMultiset, NodeValue};
use crate::normal_form::{f_normal_form, hermite_normal_form};
use crate::poly::{Polynomial, Scalar, VariableSet};
use crate::symmetric::{schur_polynomial, vandermonde_poly, SchurIndex};
use crate::vandermonde::{assemble_vdm, attach_variable_columns, delete_columns, vdm_det_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, p: &Polynomial) -> Polynomial {
        match self {
            Sign::Plus => p.clone(),
            Sign::Minus => -p,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisElement {
    pub subset: ColumnSubset,
    /// `det_form / v_n`.
    pub omega: Polynomial,
    /// `det V(X u (A \ A'))`.
    pub det_form: Polynomial,
}

/// Applies `D^{A'}` and evaluates `x_k` at the node of the `k`-th picked column.
pub fn derivative_evaluate(g: &Polynomial, nodes: &NodeMultiset, subset: &ColumnSubset) -> Result<Polynomial> {
    let vars = g.vars();
    let n = vars.n_main();
    if subset.len() != n {
        return Err(Error::Dimension(format!("subset of size {} with n = {n}", subset.len())));
    }
    let labels = nodes.labels();
    let mut cur = g.clone();
    let mut bindings = Vec::with_capacity(n);
    for (k, &col) in subset.picks().iter().enumerate() {
        let label =
            labels.get(col).ok_or_else(|| Error::OutOfRange(format!("column {col} with d = {}", labels.len())))?;
        cur = cur.scaled_partial(k, label.order as u32);
        bindings.push((k, nodes.value_poly(label.block, vars)?));
    }
    cur.substitute_indices(&bindings)
}

fn det_form(vdm: &crate::matrix::PolyMatrix, subset: &ColumnSubset, vars: &Arc<VariableSet>) -> Result<Polynomial> {
    determinant(&attach_variable_columns(&delete_columns(vdm, subset)?, vars)?)
}

fn make_element(det_form: Polynomial, subset: ColumnSubset, vn: &Polynomial) -> Result<BasisElement> {
    let omega =
        det_form.exact_div(vn).map_err(|_| Error::Internal(format!("det form of {subset} is not divisible by v_n")))?;
    Ok(BasisElement { subset, omega, det_form })
}

fn sign_of(det_form: &Polynomial, nodes: &NodeMultiset, subset: &ColumnSubset, vd: &Polynomial) -> Result<Sign> {
    let value = derivative_evaluate(det_form, nodes, subset)?;
    if &value == vd {
        Ok(Sign::Plus)
    } else if value == -vd {
        Ok(Sign::Minus)
    } else {
        Err(Error::Internal(format!("D^A'(det form)(A') for {subset} is {value}, not +-({vd})")))
    }
}

pub fn basis_element(nodes: &NodeMultiset, subset: &ColumnSubset, vars: &Arc<VariableSet>) -> Result<BasisElement> {
    let n = vars.n_main();
    if n > nodes.d() {
        return Err(Error::TooFewNodes { d: nodes.d(), n });
    }
    let vdm = assemble_vdm(nodes, vars)?;
    make_element(det_form(&vdm, subset, vars)?, subset.clone(), &vandermonde_poly(vars))
}

/// The sign `eps_{A'}` with `D^{A'}(det form)(A') = eps_{A'} v_d(A)`.
pub fn epsilon_sign(nodes: &NodeMultiset, subset: &ColumnSubset, vars: &Arc<VariableSet>) -> Result<Sign> {
    let el = basis_element(nodes, subset, vars)?;
    sign_of(&el.det_form, nodes, subset, &vdm_det_formula(nodes, vars)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coordinate {
    pub subset: ColumnSubset,
    pub sign: Sign,
    /// `eps * D^{A'}(v_n h)(A')`; the coordinate is this over the shared denominator.
    pub numerator: Polynomial,
}

/// Coordinates on the Hermite basis, all sharing the denominator `v_d(A)`.
///
/// With symbolic nodes the individual coordinates are in general rational
/// functions of the parameters, so they are kept as numerators.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateVector {
    pub denominator: Polynomial,
    pub entries: Vec<Coordinate>,
}

impl CoordinateVector {
    pub fn get(&self, subset: &ColumnSubset) -> Option<&Coordinate> {
        self.entries.iter().find(|c| &c.subset == subset)
    }

    /// The coordinate as a polynomial, when the denominator divides it.
    pub fn value(&self, subset: &ColumnSubset) -> Result<Polynomial> {
        let c = self.get(subset).ok_or_else(|| Error::OutOfRange(format!("no coordinate for {subset}")))?;
        c.numerator.exact_div(&self.denominator)
    }

    /// `sum c_{A'} omega_{A'}`.
    pub fn reconstruct(&self, basis: &[BasisElement]) -> Result<Polynomial> {
        let vars = self.denominator.vars();
        let mut acc = Polynomial::zero(vars);
        for c in &self.entries {
            let el = basis
                .iter()
                .find(|b| b.subset == c.subset)
                .ok_or_else(|| Error::OutOfRange(format!("no basis element for {}", c.subset)))?;
            acc = acc + &c.numerator * &el.omega;
        }
        acc.exact_div(&self.denominator)
    }
}

/// The full Hermite basis of a multiset together with its signs.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    nodes: NodeMultiset,
    vars: Arc<VariableSet>,
    vn: Polynomial,
    vd: Polynomial,
    elements: Vec<BasisElement>,
    signs: Vec<Sign>,
}

impl HermiteBasis {
    pub fn new(nodes: &NodeMultiset, vars: &Arc<VariableSet>) -> Result<Self> {
        let subsets = enumerate_subsets(nodes, vars.n_main())?;
        let vdm = assemble_vdm(nodes, vars)?;
        let vn = vandermonde_poly(vars);
        let vd = vdm_det_formula(nodes, vars)?;
        if vd.is_zero() {
            return Err(Error::InvalidNodes("confluent Vandermonde determinant vanishes".into()));
        }
        let mut elements = Vec::with_capacity(subsets.len());
        let mut signs = Vec::with_capacity(subsets.len());
        for subset in subsets {
            let df = det_form(&vdm, &subset, vars)?;
            signs.push(sign_of(&df, nodes, &subset, &vd)?);
            elements.push(make_element(df, subset, &vn)?);
        }
        Ok(HermiteBasis { nodes: nodes.clone(), vars: vars.clone(), vn, vd, elements, signs })
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `v_d(A)`.
    pub fn vdm_det(&self) -> &Polynomial {
        &self.vd
    }

    pub fn nodes(&self) -> &NodeMultiset {
        &self.nodes
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    /// Coordinates of the interpolant of a symmetric `h` of any degree.
    pub fn coordinates(&self, h: &Polynomial) -> Result<CoordinateVector> {
        if !crate::poly::same_vars(h.vars(), &self.vars) {
            return Err(Error::VariableSetMismatch);
        }
        if !h.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let g = &self.vn * h;
        let entries = self
            .elements
            .iter()
            .zip(&self.signs)
            .map(|(el, &sign)| {
                Ok(Coordinate {
                    subset: el.subset.clone(),
                    sign,
                    numerator: sign.apply(&derivative_evaluate(&g, &self.nodes, &el.subset)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoordinateVector { denominator: self.vd.clone(), entries })
    }

    pub fn interpolate(&self, h: &Polynomial) -> Result<Polynomial> {
        self.coordinates(h)?
            .reconstruct(&self.elements)
            .map_err(|_| Error::Internal("basis expansion is not divisible by v_d(A)".into()))
    }
}

pub fn coordinates(h: &Polynomial, nodes: &NodeMultiset) -> Result<CoordinateVector> {
    HermiteBasis::new(nodes, h.vars())?.coordinates(h)
}

/// Closed-form symmetric Lagrange sum over distinct nodes.
///
/// Symbolic distinct nodes are handled by the normal form, whose result is
/// already a polynomial in the nodes.
pub fn lagrange_interpolant(h: &Polynomial, nodes: &NodeMultiset) -> Result<Polynomial> {
    if !nodes.is_simple() {
        return Err(Error::RepeatedNodes);
    }
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let vars = h.vars();
    let n = vars.n_main();
    let d = nodes.d();
    if n > d {
        return Err(Error::TooFewNodes { d, n });
    }
    if !nodes.is_numeric() {
        return hermite_normal_form(h, nodes);
    }
    let values: Vec<Scalar> = nodes
        .blocks()
        .iter()
        .map(|b| match &b.value {
            NodeValue::Value(c) => c.clone(),
            NodeValue::Symbol(_) => unreachable!("numeric nodes"),
        })
        .collect();
    let mut acc = Polynomial::zero(vars);
    for picks in combinations(d, n) {
        let rest: Vec<&Scalar> = (0..d).filter(|i| !picks.contains(i)).map(|i| &values[i]).collect();
        let bindings: Vec<_> =
            picks.iter().enumerate().map(|(k, &i)| (k, Polynomial::constant(vars, values[i].clone()))).collect();
        let h_at = h.substitute_indices(&bindings)?;
        let mut numer = Polynomial::one(vars);
        let mut denom = Scalar::from_integer(1.into());
        for k in 0..n {
            for &r in &rest {
                numer = numer * (Polynomial::var(vars, k) - Polynomial::constant(vars, r.clone()));
            }
        }
        for &i in &picks {
            for &r in &rest {
                denom *= &values[i] - r;
            }
        }
        acc = acc + (h_at * numer).scale(&denom.recip());
    }
    Ok(acc)
}

/// Interpolant at the all-zero multiset of size `d`, expanded on Schur polynomials.
pub fn taylor_interpolant(h: &Polynomial, d: usize) -> Result<Polynomial> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let vars = h.vars();
    let n = vars.n_main();
    let nodes = NodeMultiset::repeated(Scalar::from_integer(0.into()), d)?;
    let g = vandermonde_poly(vars) * h;
    let mut acc = Polynomial::zero(vars);
    for subset in enumerate_subsets(&nodes, n)? {
        let coeff = derivative_evaluate(&g, &nodes, &subset)?;
        if coeff.is_zero() {
            continue;
        }
        let idx = SchurIndex::new(subset.picks().iter().map(|&c| c as u32).collect(), d as u32)?;
        acc = acc + coeff * schur_polynomial(&idx, vars)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    NormalForm,
    Basis,
    Lagrange,
    Taylor,
    Bridge,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::NormalForm, Method::Basis, Method::Lagrange, Method::Taylor, Method::Bridge];

    pub fn name(self) -> &'static str {
        match self {
            Method::NormalForm => "normal_form",
            Method::Basis => "basis",
            Method::Lagrange => "lagrange",
            Method::Taylor => "taylor",
            Method::Bridge => "bridge",
        }
    }

    /// Whether the method's preconditions on the nodes hold.
    pub fn applies_to(self, nodes: &NodeMultiset) -> bool {
        match self {
            Method::Lagrange => nodes.is_simple(),
            Method::Taylor => nodes.blocks().len() == 1,
            _ => true,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown method `{s}`")))
    }
}

/// `r_F(v_n h) / v_n`.
pub fn bridge_interpolant(h: &Polynomial, nodes: &NodeMultiset) -> Result<Polynomial> {
    let vn = vandermonde_poly(h.vars());
    f_normal_form(&(&vn * h), nodes)?
        .exact_div(&vn)
        .map_err(|_| Error::Internal("r_F(v_n h) is not divisible by v_n".into()))
}

fn shifted_taylor(h: &Polynomial, nodes: &NodeMultiset) -> Result<Polynomial> {
    if nodes.blocks().len() != 1 {
        return Err(Error::Precondition("taylor method requires a single node block".into()));
    }
    let vars = h.vars();
    let n = vars.n_main();
    let a = nodes.value_poly(0, vars)?;
    if a.is_zero() {
        return taylor_interpolant(h, nodes.d());
    }
    let shift = |sign: bool| -> Vec<(usize, Polynomial)> {
        (0..n)
            .map(|k| {
                let x = Polynomial::var(vars, k);
                (k, if sign { &x + &a } else { &x - &a })
            })
            .collect()
    };
    let at_zero = taylor_interpolant(&h.substitute_indices(&shift(true))?, nodes.d())?;
    at_zero.substitute_indices(&shift(false))
}

/// The symmetric Hermite interpolant `r_A(h)` by the chosen route.
pub fn hermite_interpolant(h: &Polynomial, nodes: &NodeMultiset, method: Method) -> Result<Polynomial> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = h.vars().n_main();
    if n > nodes.d() {
        return Err(Error::TooFewNodes { d: nodes.d(), n });
    }
    match method {
        Method::NormalForm => hermite_normal_form(h, nodes),
        Method::Basis => HermiteBasis::new(nodes, h.vars())?.interpolate(h),
        Method::Lagrange => lagrange_interpolant(h, nodes),
        Method::Taylor => shifted_taylor(h, nodes),
        Method::Bridge => bridge_interpolant(h, nodes),
    }
}

//! Node multisets and the polynomial systems they determine.
//!
//! A multiset `A = {a_1^(d_1), ..., a_m^(d_m)}` of total size `d` is stored as
//! ordered blocks. Its flat column labels `a_{i,j}` (block `i`, order
//! `0 <= j < d_i`) index the columns of the confluent Vandermonde matrix.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Scalar, VariableSet};
use crate::symmetric::{complete_homogeneous, elementary_all};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeValue {
    Value(Scalar),
    /// A symbolic node, realised as a parameter variable of the same name.
    Symbol(String),
}

impl NodeValue {
    pub fn as_poly(&self, vars: &Arc<VariableSet>) -> Result<Polynomial> {
        match self {
            NodeValue::Value(c) => Ok(Polynomial::constant(vars, c.clone())),
            NodeValue::Symbol(s) => {
                vars.param_index(s).map(|i| Polynomial::var(vars, i)).ok_or_else(|| Error::UnknownVariable(s.clone()))
            }
        }
    }
}

impl fmt::Display for NodeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeValue::Value(c) => write!(f, "{c}"),
            NodeValue::Symbol(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeBlock {
    pub value: NodeValue,
    pub multiplicity: usize,
}

/// Column label `a_{block, order}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnLabel {
    pub block: usize,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMultiset {
    blocks: Vec<NodeBlock>,
    merged: bool,
}

impl NodeMultiset {
    /// Equal values are merged into the first block carrying them, and
    /// [`merged`](Self::merged) reports that this happened.
    pub fn new(blocks: Vec<(NodeValue, usize)>) -> Result<Self> {
        let mut out: Vec<NodeBlock> = Vec::new();
        let mut merged = false;
        for (value, multiplicity) in blocks {
            if multiplicity == 0 {
                return Err(Error::InvalidNodes(format!("node {value} has multiplicity 0")));
            }
            if let Some(b) = out.iter_mut().find(|b| b.value == value) {
                b.multiplicity += multiplicity;
                merged = true;
            } else {
                out.push(NodeBlock { value, multiplicity });
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidNodes("empty node multiset".into()));
        }
        Ok(NodeMultiset { blocks: out, merged })
    }

    pub fn from_scalars(blocks: &[(Scalar, usize)]) -> Result<Self> {
        Self::new(blocks.iter().map(|(v, m)| (NodeValue::Value(v.clone()), *m)).collect())
    }

    /// Single node `value` repeated `d` times.
    pub fn repeated(value: Scalar, d: usize) -> Result<Self> {
        Self::from_scalars(&[(value, d)])
    }

    /// Parses `value^multiplicity` items separated by commas, e.g. `a^3, b^2`
    /// or `1/2^3, 4^2`. Values are rationals or single-letter symbols; `^1`
    /// may be omitted.
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for item in text.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(Error::InvalidNodes(format!("empty item in `{text}`")));
            }
            let (value, mult) = match item.split_once('^') {
                Some((v, m)) => {
                    let m = m.trim();
                    let mult = m
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidNodes(format!("bad multiplicity `{m}` in `{item}`")))?;
                    (v.trim(), mult)
                }
                None => (item, 1),
            };
            blocks.push((parse_node_value(value)?, mult));
        }
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[NodeBlock] {
        &self.blocks
    }

    pub fn merged(&self) -> bool {
        self.merged
    }

    /// Total size `d`.
    pub fn d(&self) -> usize {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }

    pub fn labels(&self) -> Vec<ColumnLabel> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(block, b)| (0..b.multiplicity).map(move |order| ColumnLabel { block, order }))
            .collect()
    }

    pub fn label_name(&self, col: usize) -> String {
        let l = self.labels()[col];
        format!("{}_{}", self.blocks[l.block].value, l.order)
    }

    /// All multiplicities equal to one.
    pub fn is_simple(&self) -> bool {
        self.blocks.iter().all(|b| b.multiplicity == 1)
    }

    pub fn is_numeric(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b.value, NodeValue::Value(_)))
    }

    pub fn symbols(&self) -> Vec<String> {
        self.blocks
            .iter()
            .filter_map(|b| match &b.value {
                NodeValue::Symbol(s) => Some(s.clone()),
                NodeValue::Value(_) => None,
            })
            .collect()
    }

    pub fn value_poly(&self, block: usize, vars: &Arc<VariableSet>) -> Result<Polynomial> {
        self.blocks[block].value.as_poly(vars)
    }

    /// Node values repeated by multiplicity, in label order.
    pub fn values_with_multiplicity(&self, vars: &Arc<VariableSet>) -> Result<Vec<Polynomial>> {
        let mut out = Vec::with_capacity(self.d());
        for b in &self.blocks {
            let v = b.value.as_poly(vars)?;
            out.extend(std::iter::repeat(v).take(b.multiplicity));
        }
        Ok(out)
    }
}

impl fmt::Display for NodeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}^{}", b.value, b.multiplicity)?;
        }
        Ok(())
    }
}

fn parse_node_value(s: &str) -> Result<NodeValue> {
    let bad = || Error::InvalidNodes(format!("bad node value `{s}`"));
    let mut chars = s.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if c.is_ascii_alphabetic() {
            return Ok(NodeValue::Symbol(c.to_string()));
        }
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(NodeValue::Value(Scalar::new(num, den)))
}

/// An `n`-element choice of columns, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnSubset(Vec<usize>);

impl ColumnSubset {
    pub fn new(picks: Vec<usize>, d: usize) -> Result<Self> {
        if picks.is_empty() {
            return Err(Error::Precondition("empty column subset".into()));
        }
        if picks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!("column subset {picks:?} is not strictly increasing")));
        }
        if picks.last().is_some_and(|&c| c >= d) {
            return Err(Error::OutOfRange(format!("column subset {picks:?} with d = {d}")));
        }
        Ok(ColumnSubset(picks))
    }

    pub fn picks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, col: usize) -> bool {
        self.0.binary_search(&col).is_ok()
    }

    /// Column labels of the picks, e.g. `(a_0; b_1)`.
    pub fn describe(&self, nodes: &NodeMultiset) -> String {
        let names: Vec<String> = self.0.iter().map(|&c| nodes.label_name(c)).collect();
        format!("({})", names.join(", "))
    }
}

/// 1-based column numbers.
impl fmt::Display for ColumnSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.0.iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "({})", cols.join(","))
    }
}

/// All `n`-subsets of `0..d`, lexicographically.
pub fn combinations(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n).rev().find(|&i| cur[i] < d - n + i) else {
            return out;
        };
        cur[i] += 1;
        for k in i + 1..n {
            cur[k] = cur[k - 1] + 1;
        }
    }
}

fn check_n(nodes: &NodeMultiset, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > nodes.d() {
        return Err(Error::TooFewNodes { d: nodes.d(), n });
    }
    Ok(())
}

pub fn enumerate_subsets(nodes: &NodeMultiset, n: usize) -> Result<Vec<ColumnSubset>> {
    check_n(nodes, n)?;
    Ok(combinations(nodes.d(), n).into_iter().map(ColumnSubset).collect())
}

/// The monic univariate `f = prod (x - a_i)^{d_i}`, kept as its coefficient
/// list `f_0, ..., f_{d-1}, 1`; coefficients live in the parameter ring.
#[derive(Debug, Clone, PartialEq)]
pub struct NodePolynomial {
    coeffs: Vec<Polynomial>,
}

impl NodePolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `f_k` of `x^k`.
    pub fn coefficient(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// `f(t)` by Horner's rule.
    pub fn eval(&self, t: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(t.vars());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// `f(x_k)` for the main variable with index `k`.
    pub fn in_main(&self, vars: &Arc<VariableSet>, k: usize) -> Polynomial {
        self.eval(&Polynomial::var(vars, k))
    }
}

/// `f_{d-k} = (-1)^k s_k(A)`.
pub fn build_f(nodes: &NodeMultiset, vars: &Arc<VariableSet>) -> Result<NodePolynomial> {
    let values = nodes.values_with_multiplicity(vars)?;
    let d = values.len();
    let e = elementary_all(vars, &values);
    let coeffs = (0..=d)
        .map(|i| {
            let k = d - i;
            if k % 2 == 0 {
                e[k].clone()
            } else {
                -&e[k]
            }
        })
        .collect();
    Ok(NodePolynomial { coeffs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// The triangular Gröbner basis `g_1, ..., g_n`.
    G,
    /// `f(x_1), ..., f(x_n)`.
    F,
}

/// Triangular family: member `i` lies in `K[params][x_1..x_i]` and is monic in
/// `x_i` with leading power `x_i^{lead_degree(i)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealFamily {
    kind: FamilyKind,
    members: Vec<Polynomial>,
    lead_degrees: Vec<u32>,
}

impl IdealFamily {
    pub fn new(kind: FamilyKind, members: Vec<Polynomial>) -> Result<Self> {
        let mut lead_degrees = Vec::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            let vars = m.vars();
            if i >= vars.n_main() {
                return Err(Error::Dimension(format!("{} members for n = {}", members.len(), vars.n_main())));
            }
            if (i + 1..vars.n_main()).any(|j| m.degree_in(j) > 0) {
                return Err(Error::Internal(format!("member {} involves later variables", i + 1)));
            }
            let e = m.degree_in(i);
            let mut leading = m.terms().filter(|(mono, _)| mono.degree(i) == e);
            let monic = match (leading.next(), leading.next()) {
                (Some((mono, c)), None) => c == &Scalar::from_integer(1.into()) && mono.total_degree() == e && e > 0,
                _ => false,
            };
            if !monic {
                return Err(Error::Internal(format!("member {} is not monic in x_{}", i + 1, i + 1)));
            }
            lead_degrees.push(e);
        }
        Ok(IdealFamily { kind, members, lead_degrees })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn members(&self) -> &[Polynomial] {
        &self.members
    }

    pub fn lead_degree(&self, i: usize) -> u32 {
        self.lead_degrees[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `g_i = h_{d-i+1}^{(i)} + f_{d-1} h_{d-i}^{(i)} + ... + f_{i-1}`.
pub fn build_g(nodes: &NodeMultiset, vars: &Arc<VariableSet>) -> Result<IdealFamily> {
    let n = vars.n_main();
    check_n(nodes, n)?;
    let f = build_f(nodes, vars)?;
    let d = f.degree();
    let mut members = Vec::with_capacity(n);
    for i in 1..=n {
        let top = (d - i + 1) as u32;
        let mut g = Polynomial::zero(vars);
        for k in 0..=top {
            let coeff = f.coefficient(d - k as usize);
            if coeff.is_zero() {
                continue;
            }
            g = g + coeff * &complete_homogeneous(vars, i, top - k)?;
        }
        members.push(g);
    }
    IdealFamily::new(FamilyKind::G, members)
}

pub fn build_f_family(nodes: &NodeMultiset, vars: &Arc<VariableSet>) -> Result<IdealFamily> {
    let n = vars.n_main();
    check_n(nodes, n)?;
    let f = build_f(nodes, vars)?;
    IdealFamily::new(FamilyKind::F, (0..n).map(|k| f.in_main(vars, k)).collect())
}

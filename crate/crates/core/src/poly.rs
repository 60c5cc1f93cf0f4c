//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables are split into *main* variables `x_1, ..., x_n` (the ones that
//! are interpolated, permuted and reduced) and *parameter* variables that
//! play the role of symbolic coefficients, e.g. symbolic interpolation nodes.
//! Every polynomial carries a shared reference to its [`VariableSet`];
//! binary operations require both operands to use the same set.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Ordered variable names: main variables first, then parameters.
///
/// The lex order used by reductions is `x_1 < x_2 < ... < x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    main: Vec<String>,
    params: Vec<String>,
    aliases: Vec<(String, usize)>,
}

impl VariableSet {
    pub fn new<I, J, S, T>(main: I, params: J) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let set = VariableSet {
            main: main.into_iter().map(Into::into).collect(),
            params: params.into_iter().map(Into::into).collect(),
            aliases: Vec::new(),
        };
        let mut seen = std::collections::HashSet::new();
        for name in set.main.iter().chain(set.params.iter()) {
            if !is_identifier(name) {
                return Err(Error::Precondition(format!("`{name}` is not a valid variable name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Arc::new(set))
    }

    /// Main variables `x1, ..., xn` followed by `params`. For `n <= 3` the
    /// single-letter aliases `x`, `y`, `z` are accepted by the parser as well,
    /// unless a parameter already uses that letter.
    pub fn standard<S: AsRef<str>>(n: usize, params: &[S]) -> Result<Arc<Self>> {
        let main: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
        let params: Vec<String> = params.iter().map(|p| p.as_ref().to_string()).collect();
        let mut set = Arc::try_unwrap(Self::new(main, params.clone())?).expect("fresh Arc");
        if n <= 3 {
            for (k, alias) in ["x", "y", "z"].iter().take(n).enumerate() {
                if !params.iter().any(|p| p == alias) {
                    set.aliases.push((alias.to_string(), k));
                }
            }
        }
        Ok(Arc::new(set))
    }

    pub fn n_main(&self) -> usize {
        self.main.len()
    }

    pub fn n_params(&self) -> usize {
        self.params.len()
    }

    pub fn len(&self) -> usize {
        self.main.len() + self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn main_names(&self) -> &[String] {
        &self.main
    }

    pub fn param_names(&self) -> &[String] {
        &self.params
    }

    pub fn name(&self, idx: usize) -> &str {
        if idx < self.main.len() {
            &self.main[idx]
        } else {
            &self.params[idx - self.main.len()]
        }
    }

    pub fn is_main(&self, idx: usize) -> bool {
        idx < self.main.len()
    }

    /// Resolves a variable name or alias to its index.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.main
            .iter()
            .chain(self.params.iter())
            .position(|v| v == name)
            .or_else(|| self.aliases.iter().find(|(a, _)| a == name).map(|(_, i)| *i))
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|v| v == name).map(|j| self.main.len() + j)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_vars(a: &Arc<VariableSet>, b: &Arc<VariableSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, one entry per variable of the owning [`VariableSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }

    pub(crate) fn with_degree(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[var] = e;
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone)]
pub struct Polynomial {
    vars: Arc<VariableSet>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", crate::parse::render(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render(self))
    }
}

impl Polynomial {
    pub fn zero(vars: &Arc<VariableSet>) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<VariableSet>) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn constant(vars: &Arc<VariableSet>, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn from_int(vars: &Arc<VariableSet>, c: i64) -> Self {
        Self::constant(vars, scalar(c))
    }

    /// The variable with index `idx`. Panics if `idx` is out of range.
    pub fn var(vars: &Arc<VariableSet>, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index {idx} out of range");
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial(exps), Scalar::one());
        p
    }

    pub fn var_named(vars: &Arc<VariableSet>, name: &str) -> Result<Self> {
        vars.index_of(name).map(|i| Self::var(vars, i)).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(vars: &Arc<VariableSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    pub fn monomial(vars: &Arc<VariableSet>, mono: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(mono, c);
        p
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The value of a constant polynomial, `None` otherwise.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Degree in one variable; the zero polynomial has degree 0.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.degree(var)).max().unwrap_or(0)
    }

    /// Largest degree in any single main variable.
    pub fn max_main_degree(&self) -> u32 {
        (0..self.vars.n_main()).map(|k| self.degree_in(k)).max().unwrap_or(0)
    }

    /// True if no main variable occurs.
    pub fn is_free_of_main(&self) -> bool {
        (0..self.vars.n_main()).all(|k| self.degree_in(k) == 0)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += coef * shift * other`, in place.
    pub(crate) fn add_scaled_shifted(&mut self, coef: &Scalar, shift: &Monomial, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.mul(shift), c * coef);
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VariableSetMismatch)
        }
    }

    pub fn poly_arith(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        self.check_vars(other)?;
        Ok(match op {
            ArithOp::Add => {
                let mut out = self.clone();
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), c.clone());
                }
                out
            }
            ArithOp::Sub => {
                let mut out = self.clone();
                for (m, c) in &other.terms {
                    out.add_term(m.clone(), -c);
                }
                out
            }
            ArithOp::Mul => {
                let mut out = Polynomial::zero(&self.vars);
                for (m, c) in &self.terms {
                    out.add_scaled_shifted(c, m, other);
                }
                out
            }
        })
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.poly_arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.poly_arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.poly_arith(other, ArithOp::Mul)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `(1/j!) d^j/dv^j` of `self`, computed term by term as `C(e, j) v^(e-j)`.
    pub fn scaled_partial(&self, var: usize, order: u32) -> Polynomial {
        assert!(var < self.vars.len(), "variable index {var} out of range");
        if order == 0 {
            return self.clone();
        }
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.degree(var);
            if e >= order {
                let factor = Scalar::from_integer(binomial(e, order));
                out.add_term(m.with_degree(var, e - order), c * factor);
            }
        }
        out
    }

    pub fn scaled_partial_by_name(&self, name: &str, order: u32) -> Result<Polynomial> {
        let var = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.scaled_partial(var, order))
    }

    /// Simultaneous substitution `var -> value` for every binding; other
    /// variables are left symbolic.
    pub fn substitute_indices(&self, bindings: &[(usize, Polynomial)]) -> Result<Polynomial> {
        for (idx, value) in bindings {
            if *idx >= self.vars.len() {
                return Err(Error::OutOfRange(format!("variable index {idx}")));
            }
            self.check_vars(value)?;
        }
        // power tables per binding, filled on demand
        let mut powers: Vec<Vec<Polynomial>> =
            bindings.iter().map(|(_, v)| vec![Polynomial::one(&self.vars), v.clone()]).collect();
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut factor = Polynomial::constant(&self.vars, c.clone());
            for (b, (idx, value)) in bindings.iter().enumerate() {
                let e = m.degree(*idx) as usize;
                if e == 0 {
                    continue;
                }
                rest = rest.with_degree(*idx, 0);
                if let Some(cv) = value.as_constant() {
                    factor = factor.scale(&num_traits::pow(cv, e));
                    continue;
                }
                while powers[b].len() <= e {
                    let next = &powers[b][powers[b].len() - 1] * value;
                    powers[b].push(next);
                }
                factor = &factor * &powers[b][e];
            }
            out.add_scaled_shifted(&Scalar::one(), &rest, &factor);
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &[(&str, Polynomial)]) -> Result<Polynomial> {
        let resolved = bindings
            .iter()
            .map(|(name, v)| {
                self.vars.index_of(name).map(|i| (i, v.clone())).ok_or_else(|| Error::UnknownVariable(name.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute_indices(&resolved)
    }

    /// Exchanges two variables.
    pub fn swap_variables(&self, i: usize, j: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.swap(i, j);
            out.terms.insert(Monomial(exps), c.clone());
        }
        out
    }

    /// Invariance under every adjacent transposition of main variables.
    /// Parameters are never permuted.
    pub fn is_symmetric(&self) -> bool {
        (1..self.vars.n_main()).all(|k| self.swap_variables(k - 1, k) == *self)
    }

    /// Exact quotient `self / divisor`; fails with [`Error::InexactDivision`]
    /// when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InexactDivision);
        }
        if let Some(c) = divisor.as_constant() {
            return Ok(self.scale(&c.recip()));
        }
        let (lead_m, lead_c) = divisor.terms.iter().next_back().unwrap();
        let lead_inv = lead_c.recip();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.vars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let shift = m.checked_div(lead_m).ok_or(Error::InexactDivision)?;
            let q = c * &lead_inv;
            rem.add_scaled_shifted(&-q.clone(), &shift, divisor);
            quot.add_term(shift, q);
        }
        Ok(quot)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.poly_arith(rhs, $op).expect("variable-set mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, ArithOp::Add);
impl_binop!(Sub, sub, ArithOp::Sub);
impl_binop!(Mul, mul, ArithOp::Mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn xy_ab() -> Arc<VariableSet> {
        VariableSet::new(["x", "y"], ["a", "b"]).unwrap()
    }

    fn p(vars: &Arc<VariableSet>, s: &str) -> Polynomial {
        Polynomial::parse(s, vars).unwrap()
    }

    #[test]
    fn cancellation_and_square() {
        let v = xy_ab();
        assert_eq!(p(&v, "x+1") + p(&v, "x-1"), p(&v, "2*x"));
        assert_eq!(p(&v, "x-a") * p(&v, "x-a"), p(&v, "x^2 - 2*a*x + a^2"));
        assert!((p(&v, "x^3*y - a") * Polynomial::zero(&v)).is_zero());
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let v = xy_ab();
        let w = VariableSet::new(["x", "y"], ["a"]).unwrap();
        let err = Polynomial::var(&v, 0).checked_add(&Polynomial::var(&w, 0)).unwrap_err();
        assert_eq!(err, Error::VariableSetMismatch);
        assert_eq!(err.to_string(), "variable-set mismatch");
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(matches!(VariableSet::new(["x", "a"], ["a"]), Err(Error::DuplicateVariable(_))));
    }

    #[test]
    fn substitution_examples() {
        let v = xy_ab();
        let one = Polynomial::from_int(&v, 1);
        let two = Polynomial::from_int(&v, 2);
        let q = p(&v, "x^2+x*y+y^2").substitute(&[("x", one), ("y", two)]).unwrap();
        assert_eq!(q.as_constant(), Some(scalar(7)));

        let omega = p(&v, "(x-b)^2*(y-b)^2");
        let at = omega.substitute(&[("x", Polynomial::var(&v, 2)), ("y", Polynomial::var(&v, 3))]).unwrap();
        assert!(at.is_zero());

        let h = p(&v, "x^3 + a*y^2 + 7");
        let zero = Polynomial::zero(&v);
        let g = p(&v, "y-x") * h;
        assert!(g.substitute(&[("x", zero.clone()), ("y", zero)]).unwrap().is_zero());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let v = xy_ab();
        let q = p(&v, "x - 2*y").substitute(&[("x", Polynomial::var(&v, 1)), ("y", Polynomial::var(&v, 0))]).unwrap();
        assert_eq!(q, p(&v, "y - 2*x"));
    }

    #[test]
    fn substitute_unknown_variable() {
        let v = xy_ab();
        let err = p(&v, "x").substitute(&[("w", Polynomial::zero(&v))]).unwrap_err();
        assert_eq!(err, Error::UnknownVariable("w".into()));
    }

    #[test]
    fn scaled_partial_examples() {
        let v = xy_ab();
        assert_eq!(p(&v, "x^4").scaled_partial(0, 2), p(&v, "6*x^2"));
        for d in 1..8u32 {
            for j in 0..d {
                let lhs = Polynomial::var(&v, 0).pow(d - 1).scaled_partial(0, j);
                let rhs = Polynomial::var(&v, 0).pow(d - 1 - j).scale(&Scalar::from_integer(binomial(d - 1, j)));
                assert_eq!(lhs, rhs);
            }
        }
        let q = p(&v, "x^3*y + a*x - 5");
        assert!(q.scaled_partial(0, q.degree_in(0) + 1).is_zero());
        assert_eq!(q.scaled_partial(0, 0), q);
        assert!(q.scaled_partial_by_name("t", 1).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let v = xy_ab();
        assert!(p(&v, "x+y").is_symmetric());
        assert!(!p(&v, "x-y").is_symmetric());
        assert!(p(&v, "-2+3*(x+y)-x*y").is_symmetric());
        // parameters are never permuted
        assert!(!p(&v, "a*x + b*y").is_symmetric());
        assert!(p(&v, "a*x + a*y + b").is_symmetric());
    }

    #[test]
    fn symmetry_by_substitution_oracle() {
        let v = xy_ab();
        let q = p(&v, "-2+3*(x+y)-x*y");
        let swapped = q.substitute(&[("x", Polynomial::var(&v, 1)), ("y", Polynomial::var(&v, 0))]).unwrap();
        assert_eq!(swapped, q);
    }

    #[test]
    fn exact_division() {
        let v = xy_ab();
        let num = p(&v, "(y-x)*(x^2+a*y)");
        assert_eq!(num.exact_div(&p(&v, "y-x")).unwrap(), p(&v, "x^2+a*y"));
        assert_eq!(p(&v, "x^2+1").exact_div(&p(&v, "x+1")), Err(Error::InexactDivision));
        assert_eq!(p(&v, "3*x").exact_div(&p(&v, "3/2")).unwrap(), p(&v, "2*x"));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}

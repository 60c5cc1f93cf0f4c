//! Normal forms modulo the triangular families `G` and `F`.
//!
//! Reduction divides by the last member in its variable first, then moves
//! down: member `i` only involves `x_1..x_i`, so dividing by it never raises
//! the degree in any later variable.

use crate::error::{Error, Result};
use crate::nodes::{build_f_family, build_g, IdealFamily, NodeMultiset};
use crate::poly::{same_vars, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub remainder: Polynomial,
    /// Quotient against member `i`.
    pub quotients: Vec<Polynomial>,
}

impl ReductionResult {
    /// `sum q_i * member_i + remainder`.
    pub fn reconstruct(&self, fam: &IdealFamily) -> Polynomial {
        self.quotients.iter().zip(fam.members()).fold(self.remainder.clone(), |acc, (q, m)| acc + q * m)
    }
}

pub fn reduce(h: &Polynomial, fam: &IdealFamily) -> Result<ReductionResult> {
    let vars = h.vars();
    if fam.members().iter().any(|m| !same_vars(m.vars(), vars)) {
        return Err(Error::VariableSetMismatch);
    }
    let mut rem = h.clone();
    let mut quotients = vec![Polynomial::zero(vars); fam.len()];
    for i in (0..fam.len()).rev() {
        let member = &fam.members()[i];
        let e = fam.lead_degree(i);
        let mut top = rem.degree_in(i);
        while top >= e && !rem.is_zero() {
            let block: Vec<_> = rem
                .terms()
                .filter(|(m, _)| m.degree(i) == top)
                .map(|(m, c)| (m.with_degree(i, top - e), c.clone()))
                .collect();
            for (shift, c) in block {
                rem.add_scaled_shifted(&-c.clone(), &shift, member);
                quotients[i].add_term(shift, c);
            }
            let next = rem.degree_in(i);
            debug_assert!(next < top || rem.is_zero(), "reduction step did not decrease x_{} degree", i + 1);
            top = next;
        }
    }
    Ok(ReductionResult { remainder: rem, quotients })
}

/// The symmetric Hermite interpolant `r_G(h)`: the normal form of a symmetric
/// `h` modulo the family `G` of `nodes`.
pub fn hermite_normal_form(h: &Polynomial, nodes: &NodeMultiset) -> Result<Polynomial> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let fam = build_g(nodes, h.vars())?;
    Ok(reduce(h, &fam)?.remainder)
}

/// Normal form `r_F(h)` modulo `f(x_1), ..., f(x_n)`; any `h` is accepted.
pub fn f_normal_form(h: &Polynomial, nodes: &NodeMultiset) -> Result<Polynomial> {
    let fam = build_f_family(nodes, h.vars())?;
    Ok(reduce(h, &fam)?.remainder)
}

/// Classical univariate remainder of `h` by a monic `divisor` in main variable 0.
pub fn univariate_remainder(h: &Polynomial, divisor: &Polynomial) -> Result<Polynomial> {
    let fam = IdealFamily::new(crate::nodes::FamilyKind::F, vec![divisor.clone()])?;
    Ok(reduce(h, &fam)?.remainder)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VariableSet;
    use std::sync::Arc;

    fn vars(n: usize) -> Arc<VariableSet> {
        VariableSet::standard(n, &["a", "b"]).unwrap()
    }

    fn p(v: &Arc<VariableSet>, s: &str) -> Polynomial {
        Polynomial::parse(s, v).unwrap()
    }

    #[test]
    fn univariate_division() {
        let v = vars(1);
        let nodes = NodeMultiset::parse("1,-1").unwrap();
        let fam = build_g(&nodes, &v).unwrap();
        let r = reduce(&p(&v, "x^3"), &fam).unwrap();
        assert_eq!(r.remainder, p(&v, "x"));
        assert_eq!(r.quotients, vec![p(&v, "x")]);
    }

    #[test]
    fn two_variable_example() {
        // r(0,1)=1, r(0,2)=4, r(1,2)=5 solved by hand for r = c0 + c1 (x+y) + c2 xy
        let v = vars(2);
        let nodes = NodeMultiset::parse("0,1,2").unwrap();
        let h = p(&v, "x1^2 + x2^2");
        let expected = p(&v, "-2 + 3*(x1+x2) - x1*x2");
        let fam = build_g(&nodes, &v).unwrap();
        let r = reduce(&h, &fam).unwrap();
        assert_eq!(r.remainder, expected);
        assert_eq!(r.reconstruct(&fam), h);
        assert_eq!(hermite_normal_form(&h, &nodes).unwrap(), expected);
        for (s, t) in [(0, 1), (0, 2), (1, 2)] {
            let at = |q: &Polynomial| {
                q.substitute(&[("x1", Polynomial::from_int(&v, s)), ("x2", Polynomial::from_int(&v, t))]).unwrap()
            };
            assert_eq!(at(&expected), at(&h));
        }
    }

    #[test]
    fn reduced_input_is_fixed() {
        let v = vars(2);
        let nodes = NodeMultiset::parse("a^2, 1, b").unwrap();
        let h = p(&v, "a*x1^2*x2^2 + x1 + x2 - 7");
        let fam = build_g(&nodes, &v).unwrap();
        let r = reduce(&h, &fam).unwrap();
        assert_eq!(r.remainder, h);
        assert!(r.quotients.iter().all(Polynomial::is_zero));
        assert_eq!(hermite_normal_form(&h, &nodes).unwrap(), h);
    }

    #[test]
    fn non_symmetric_rejected() {
        let v = vars(2);
        let nodes = NodeMultiset::parse("0,1,2").unwrap();
        assert_eq!(hermite_normal_form(&p(&v, "x1"), &nodes), Err(Error::NotSymmetric));
        // reduce itself accepts anything
        let fam = build_g(&nodes, &v).unwrap();
        let r = reduce(&p(&v, "x2^5"), &fam).unwrap();
        assert_eq!(r.reconstruct(&fam), p(&v, "x2^5"));
    }

    #[test]
    fn univariate_hermite_case() {
        let v = vars(1);
        let nodes = NodeMultiset::parse("a^2, b").unwrap();
        let h = p(&v, "x^6 + a*x");
        let f = crate::nodes::build_f(&nodes, &v).unwrap().in_main(&v, 0);
        assert_eq!(hermite_normal_form(&h, &nodes).unwrap(), univariate_remainder(&h, &f).unwrap());
        assert!(hermite_normal_form(&h, &nodes).unwrap().degree_in(0) < 3);
    }

    #[test]
    fn f_normal_form_examples() {
        let v = vars(2);
        let nodes = NodeMultiset::parse("0^4").unwrap();
        assert!(f_normal_form(&p(&v, "x1^4"), &nodes).unwrap().is_zero());
        let nodes = NodeMultiset::parse("1,2,3").unwrap();
        let f1 = p(&v, "(x1-1)*(x1-2)*(x1-3)*x2");
        assert!(f_normal_form(&f1, &nodes).unwrap().is_zero());
        let vr = p(&v, "(x2-x1)*(x1*x2 + 1)");
        assert_eq!(f_normal_form(&vr, &nodes).unwrap(), vr);
    }

    #[test]
    fn mismatched_family() {
        let v = vars(2);
        let w = VariableSet::standard(2, &["c"]).unwrap();
        let fam = build_g(&NodeMultiset::parse("0,1,2").unwrap(), &w).unwrap();
        assert_eq!(reduce(&p(&v, "x1"), &fam), Err(Error::VariableSetMismatch));
    }
}

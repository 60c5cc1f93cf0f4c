//! Seeded random inputs for cross-checks: symmetric polynomials built as
//! sums of monomial orbits, and rational node multisets.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::nodes::{NodeMultiset, NodeValue};
use crate::poly::{ratio, Polynomial, Scalar, VariableSet};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sum of all distinct permutations of `exps` over the main variables
/// (the monomial symmetric polynomial of that exponent pattern).
pub fn orbit_sum(vars: &Arc<VariableSet>, exps: &[u32]) -> Polynomial {
    assert_eq!(exps.len(), vars.n_main());
    let mut seen = BTreeSet::new();
    let mut cur = exps.to_vec();
    cur.sort_unstable();
    loop {
        seen.insert(cur.clone());
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Polynomial::from_terms(
        vars,
        seen.into_iter().map(|mut e| {
            e.resize(vars.len(), 0);
            (e, Scalar::from_integer(1.into()))
        }),
    )
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A symmetric polynomial: a few orbit sums with small rational coefficients,
/// every exponent at most `max_degree`.
pub fn random_symmetric(rng: &mut impl Rng, vars: &Arc<VariableSet>, max_degree: u32) -> Polynomial {
    let n = vars.n_main();
    let orbits = rng.gen_range(1..=4);
    let mut acc = Polynomial::zero(vars);
    for _ in 0..orbits {
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_degree)).collect();
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-6..=6);
        }
        let den = rng.gen_range(1..=3);
        acc = acc + orbit_sum(vars, &exps).scale(&ratio(c, den));
    }
    acc
}

/// A random node multiset of total size `d` with rational values.
/// When `distinct` is set every multiplicity is one.
pub fn random_nodes(rng: &mut impl Rng, d: usize, distinct: bool) -> NodeMultiset {
    let blocks = if distinct { d } else { rng.gen_range(1..=d) };
    // split d into `blocks` positive parts
    let mut cuts: Vec<usize> = (1..d).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
    cuts.sort_unstable();
    let mut mults = Vec::with_capacity(blocks);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(d)) {
        mults.push(c - prev);
        prev = c;
    }
    let mut values: Vec<Scalar> = Vec::new();
    while values.len() < blocks {
        let v = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if !values.contains(&v) {
            values.push(v);
        }
    }
    NodeMultiset::new(values.into_iter().map(NodeValue::Value).zip(mults).collect()).expect("valid random multiset")
}

/// Monomial basis of symmetric polynomials with every exponent `<= bound`:
/// orbit sums of non-increasing exponent vectors.
pub fn symmetric_monomial_basis(vars: &Arc<VariableSet>, bound: u32) -> Vec<Polynomial> {
    let n = vars.n_main();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    partitions(n, bound, 0, &mut cur, &mut |e| out.push(orbit_sum(vars, e)));
    out
}

fn partitions(n: usize, bound: u32, at: usize, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if at == n {
        emit(cur);
        return;
    }
    let top = if at == 0 { bound } else { cur[at - 1] };
    for e in (0..=top).rev() {
        cur[at] = e;
        partitions(n, bound, at + 1, cur, emit);
    }
}

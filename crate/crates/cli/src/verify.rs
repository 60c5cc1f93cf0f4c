//! The `verify` subcommand: exact identity suites over fixtures or a seeded
//! random corpus, with greedy shrinking of failing inputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use clap::ValueEnum;
use rand::Rng;
use serde::Serialize;

use symherm::corpus::{random_nodes, random_symmetric, rng, CorpusRng};
use symherm::{
    assemble_vdm, build_f, build_g, determinant, f_normal_form, hermite_interpolant, hermite_normal_form, render,
    vandermonde_poly, vdm_det_formula, Error, HermiteBasis, Method, NodeMultiset, Polynomial, Scalar, VariableSet,
};

use crate::{emit_json, variables, Failure, OutputFormat, SessionArgs, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Bi,
    Fg,
    Bridge,
    Methods,
    Vdm,
    Basis,
}

impl Suite {
    const ALL: [Suite; 6] = [Suite::Bi, Suite::Fg, Suite::Bridge, Suite::Methods, Suite::Vdm, Suite::Basis];

    fn name(self) -> &'static str {
        match self {
            Suite::Bi => "bi",
            Suite::Fg => "fg",
            Suite::Bridge => "bridge",
            Suite::Methods => "methods",
            Suite::Vdm => "vdm",
            Suite::Basis => "basis",
        }
    }
}

const SYMBOLIC_FIXTURES: [&str; 4] = ["a^2, b^2", "a^3, b^2", "a, b, c", "a^2, b, c^2"];
const CORPUS_SIZE: usize = 24;

#[derive(Debug, Clone, Serialize)]
struct Counterexample {
    nodes: String,
    n: usize,
    h: Option<String>,
    detail: String,
}

#[derive(Debug, Clone, Serialize)]
struct SuiteReport {
    suite: Suite,
    passed: bool,
    checks: usize,
    notes: Vec<String>,
    counterexample: Option<Counterexample>,
}

struct Case {
    nodes: NodeMultiset,
    n: usize,
    vars: Arc<VariableSet>,
    hs: Vec<Polynomial>,
}

enum Inputs<'a> {
    Given(&'a str),
    Random { count: usize, max_degree: u32 },
}

fn make_case(r: &mut CorpusRng, nodes: NodeMultiset, n: usize, inputs: Inputs) -> Result<Case, Failure> {
    let vars = variables(&nodes, n)?;
    let hs = match inputs {
        Inputs::Given(text) => vec![Polynomial::parse(text, &vars)?],
        Inputs::Random { count, max_degree } => (0..count).map(|_| random_symmetric(r, &vars, max_degree)).collect(),
    };
    Ok(Case { nodes, n, vars, hs })
}

fn fixture_cases(args: &SessionArgs) -> Result<Vec<Case>, Failure> {
    let mut r = rng(args.seed);
    let mut out = Vec::new();
    match &args.nodes {
        Some(text) => {
            let nodes = NodeMultiset::parse(text)?;
            let ns: Vec<usize> = match args.n {
                Some(n) => vec![n],
                None => (1..=nodes.d().min(3)).collect(),
            };
            for n in ns {
                let inputs = match args.h.as_deref() {
                    Some(text) => Inputs::Given(text),
                    None => Inputs::Random { count: 3, max_degree: (nodes.d() + 2) as u32 },
                };
                out.push(make_case(&mut r, nodes.clone(), n, inputs)?);
            }
        }
        None => {
            for k in 0..CORPUS_SIZE {
                let n = 1 + k % 3;
                let d = r.gen_range(n..=5);
                let nodes = if k % 6 == 5 {
                    let v = Scalar::new(r.gen_range(-3..=3).into(), r.gen_range(1..=2).into());
                    NodeMultiset::repeated(v, d)?
                } else {
                    random_nodes(&mut r, d, k % 2 == 0)
                };
                let inputs = Inputs::Random { count: 3, max_degree: (d + 2) as u32 };
                out.push(make_case(&mut r, nodes, n, inputs)?);
            }
            // symbolic nodes are expensive; one low-degree input each
            for text in SYMBOLIC_FIXTURES {
                let nodes = NodeMultiset::parse(text)?;
                for n in 1..=nodes.d().min(3) {
                    let inputs = Inputs::Random { count: 1, max_degree: nodes.d() as u32 };
                    out.push(make_case(&mut r, nodes.clone(), n, inputs)?);
                }
            }
        }
    }
    Ok(out)
}

/// Greedily drops whole monomial orbits from `h` while `fails` keeps holding.
pub fn minimize_orbits(h: &Polynomial, fails: impl Fn(&Polynomial) -> bool) -> Polynomial {
    let n = h.vars().n_main();
    let mut cur = h.clone();
    loop {
        let mut groups: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in cur.terms() {
            let e = m.exponents();
            let mut key = e[..n].to_vec();
            key.sort_unstable();
            key.extend_from_slice(&e[n..]);
            let term = Polynomial::monomial(h.vars(), m.clone(), c.clone());
            let slot = groups.entry(key).or_insert_with(|| Polynomial::zero(h.vars()));
            *slot = &*slot + &term;
        }
        if groups.len() <= 1 {
            return cur;
        }
        let smaller = groups.values().map(|g| &cur - g).find(|cand| fails(cand));
        match smaller {
            Some(s) => cur = s,
            None => return cur,
        }
    }
}

type Check = std::result::Result<(), String>;

fn err_text(e: Error) -> String {
    e.to_string()
}

fn check_bi(case: &Case) -> Check {
    let v = &case.vars;
    let g = build_g(&case.nodes, v).map_err(err_text)?;
    let g = g.members();
    for i in 2..=case.n {
        let shift: Vec<(usize, Polynomial)> = (0..i - 1).map(|k| (k, Polynomial::var(v, k + 1))).collect();
        let moved = g[i - 2].substitute_indices(&shift).map_err(err_text)?;
        let lhs = &g[i - 1] * &(Polynomial::var(v, 0) - Polynomial::var(v, i - 1));
        if lhs != &g[i - 2] - &moved {
            return Err(format!("recurrence fails for g_{i}"));
        }
    }
    Ok(())
}

fn check_fg(case: &Case) -> Check {
    let v = &case.vars;
    let g = build_g(&case.nodes, v).map_err(err_text)?;
    let f = build_f(&case.nodes, v).map_err(err_text)?;
    for k in 0..case.n {
        let xk = Polynomial::var(v, k);
        let mut sum = Polynomial::zero(v);
        let mut prod = Polynomial::one(v);
        for j in 0..=k {
            sum = sum + &prod * &g.members()[j];
            prod = prod * (&xk - &Polynomial::var(v, j));
        }
        if sum != f.in_main(v, k) {
            return Err(format!("telescoping fails for f(x{})", k + 1));
        }
    }
    Ok(())
}

fn check_vdm(case: &Case) -> std::result::Result<Polynomial, String> {
    let det = determinant(&assemble_vdm(&case.nodes, &case.vars).map_err(err_text)?).map_err(err_text)?;
    let formula = vdm_det_formula(&case.nodes, &case.vars).map_err(err_text)?;
    if det != formula {
        return Err(format!("det V(A) = {} but the product formula gives {}", render(&det), render(&formula)));
    }
    Ok(det)
}

/// `prod (a_j - a_i)^{d_i d_j}` written out unexpanded.
fn factored_det(nodes: &NodeMultiset) -> String {
    let blocks = nodes.blocks();
    let mut parts = Vec::new();
    for j in 0..blocks.len() {
        for i in 0..j {
            let e = blocks[i].multiplicity * blocks[j].multiplicity;
            let base = format!("({} - {})", blocks[j].value, blocks[i].value);
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn check_bridge(case: &Case, h: &Polynomial) -> Check {
    let vn = vandermonde_poly(&case.vars);
    let rg = hermite_normal_form(h, &case.nodes).map_err(err_text)?;
    let rf = f_normal_form(&(&vn * h), &case.nodes).map_err(err_text)?;
    if &vn * &rg != rf {
        return Err("v_n r_G(h) != r_F(v_n h)".into());
    }
    Ok(())
}

fn check_methods(case: &Case, h: &Polynomial, only: Option<Method>) -> Check {
    let reference = hermite_interpolant(h, &case.nodes, Method::NormalForm).map_err(err_text)?;
    let n = case.n;
    let d = case.nodes.d();
    if !reference.is_symmetric() || reference.max_main_degree() as usize > d - n {
        return Err("normal form violates the symmetry/degree contract".into());
    }
    let methods: Vec<Method> = match only {
        Some(m) => vec![m],
        None => Method::ALL.to_vec(),
    };
    for m in methods {
        if m == Method::NormalForm || !m.applies_to(&case.nodes) {
            continue;
        }
        let got = hermite_interpolant(h, &case.nodes, m).map_err(err_text)?;
        if got != reference {
            return Err(format!("{m} disagrees with normal_form"));
        }
    }
    Ok(())
}

fn check_basis(case: &Case, basis: &HermiteBasis, h: &Polynomial) -> Check {
    let vn = vandermonde_poly(&case.vars);
    for el in basis.elements() {
        if &el.omega * &vn != el.det_form {
            return Err(format!("omega * v_n != det form for {}", el.subset));
        }
    }
    let r = hermite_normal_form(h, &case.nodes).map_err(err_text)?;
    let via_h = basis.interpolate(h).map_err(err_text)?;
    if via_h != r {
        return Err("coordinates of h do not reproduce the interpolant".into());
    }
    let via_r = basis.coordinates(&r).and_then(|c| c.reconstruct(basis.elements())).map_err(err_text)?;
    if via_r != r {
        return Err("basis reconstruction of the interpolant fails".into());
    }
    Ok(())
}

fn run_suite(suite: Suite, cases: &[Case], only: Option<Method>, explicit_nodes: bool) -> SuiteReport {
    let mut report = SuiteReport { suite, passed: true, checks: 0, notes: Vec::new(), counterexample: None };
    let fail = |report: &mut SuiteReport, case: &Case, h: Option<&Polynomial>, detail: String| {
        report.passed = false;
        report.counterexample =
            Some(Counterexample { nodes: case.nodes.to_string(), n: case.n, h: h.map(render), detail });
    };
    let mut seen_vdm = Vec::new();
    for case in cases {
        let outcome = match suite {
            Suite::Bi => check_bi(case),
            Suite::Fg => check_fg(case),
            Suite::Vdm => {
                let key = case.nodes.to_string();
                if seen_vdm.contains(&key) {
                    continue;
                }
                seen_vdm.push(key);
                check_vdm(case).map(|det| {
                    if explicit_nodes {
                        report.notes.push(format!(
                            "det V_{}({}) = {} = {}",
                            case.nodes.d(),
                            case.nodes,
                            factored_det(&case.nodes),
                            render(&det)
                        ));
                    }
                })
            }
            Suite::Bridge | Suite::Methods | Suite::Basis => {
                let basis = match suite {
                    Suite::Basis => match HermiteBasis::new(&case.nodes, &case.vars) {
                        Ok(b) => Some(b),
                        Err(e) => {
                            fail(&mut report, case, None, e.to_string());
                            return report;
                        }
                    },
                    _ => None,
                };
                let check = |h: &Polynomial| match suite {
                    Suite::Bridge => check_bridge(case, h),
                    Suite::Methods => check_methods(case, h, only),
                    _ => check_basis(case, basis.as_ref().unwrap(), h),
                };
                let mut result = Ok(());
                for h in &case.hs {
                    report.checks += 1;
                    if let Err(detail) = check(h) {
                        let small = minimize_orbits(h, |cand| check(cand).is_err());
                        let detail = check(&small).err().unwrap_or(detail);
                        fail(&mut report, case, Some(&small), detail);
                        result = Err(String::new());
                        break;
                    }
                }
                if result.is_err() {
                    return report;
                }
                continue;
            }
        };
        report.checks += 1;
        if let Err(detail) = outcome {
            fail(&mut report, case, None, detail);
            return report;
        }
    }
    report
}

pub(crate) fn cmd_verify(args: &SessionArgs, out: &mut String) -> Result<i32, Failure> {
    let cases = fixture_cases(args)?;
    if let (Some(m), true) = (args.method, args.nodes.is_some()) {
        for case in &cases {
            if !m.applies_to(&case.nodes) {
                return Err(match m {
                    Method::Lagrange => Error::RepeatedNodes,
                    _ => Error::Precondition(format!("method {m} does not apply to A = {}", case.nodes)),
                }
                .into());
            }
            if case.n > case.nodes.d() {
                return Err(Error::TooFewNodes { d: case.nodes.d(), n: case.n }.into());
            }
        }
    }
    if let Some(case) = cases.iter().find(|c| c.n > c.nodes.d()) {
        return Err(Error::TooFewNodes { d: case.nodes.d(), n: case.n }.into());
    }
    if cases.iter().flat_map(|c| &c.hs).any(|h| !h.is_symmetric()) {
        return Err(Error::NotSymmetric.into());
    }
    let suites: Vec<Suite> = match args.suite {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let reports: Vec<SuiteReport> =
        suites.iter().map(|&s| run_suite(s, &cases, args.method, args.nodes.is_some())).collect();
    let all = reports.iter().all(|r| r.passed);
    match args.output {
        OutputFormat::Text => {
            writeln!(out, "# seed {}, {} case(s)", args.seed, cases.len()).unwrap();
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{:<8} {status}  {} check(s)", r.suite.name(), r.checks).unwrap();
                for note in &r.notes {
                    writeln!(out, "  {note}").unwrap();
                }
                if let Some(c) = &r.counterexample {
                    writeln!(out, "  counterexample: A = {}, n = {}", c.nodes, c.n).unwrap();
                    if let Some(h) = &c.h {
                        writeln!(out, "  h = {h}").unwrap();
                    }
                    writeln!(out, "  {}", c.detail).unwrap();
                }
            }
            writeln!(out, "{}", if all { "all suites passed" } else { "verification FAILED" }).unwrap();
        }
        OutputFormat::Json => emit_json(
            out,
            &serde_json::json!({ "seed": args.seed, "cases": cases.len(), "passed": all, "suites": reports }),
        ),
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY })
}

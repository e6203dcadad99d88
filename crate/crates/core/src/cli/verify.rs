//! Verification suites over one group.

use crate::arith::{rat, Rational, Ring};
use crate::error::{Error, Result};
use crate::form::closed::closed_form_check;
use crate::form::{check_n_c, discriminant, form_is_invariant, gram_matrix, row_sums_equal};
use crate::groups::{CoxeterType, ReflectionGroupData};
use crate::krammer::{build_krammer, check_braid_relations, cubic_specialization_check, generators_invertible};
use crate::rep::models::{bn_model_check, dihedral_m0_check};
use crate::rep::spectral::spectrum_check;
use crate::rep::tensor::{ds_table_check, psu_membership_check, tensor_square_check, TENSOR_CLASS_LIMIT};
use crate::rep::{build_rep, build_rep_at, check_integrability, CheckOutcome, RepBundle, EXHAUSTIVE_LIMIT};
use crate::spec::GroupSpec;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Core,
    Spectral,
    Tensor,
    Parabolic,
    Dihedral,
    Krammer,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub group: GroupSpec,
    pub checks: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    /// Timing is left out so the output is reproducible.
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status, "detail": c.detail }))
            .collect();
        json!({ "group": self.group.to_string(), "passed": self.passed(), "checks": checks })
    }
}

/// Largest class on which `verify` tests irreducibility of `V_c`.
pub const BURNSIDE_LIMIT: usize = 30;

/// Largest class on which `verify` grows the tensor-square algebras by default.
pub const SAMPLED_TENSOR_LIMIT: usize = 7;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub suite: Suite,
    /// Sample value of `m` for the numeric checks.
    pub m: Rational,
    /// Run tensor checks on classes above the size limits.
    pub force: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suite: Suite::All,
            m: rat(7),
            force: false,
        }
    }
}

struct Recorder {
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(Status, String)>) {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(r) => r,
            Err(e @ Error::ExcludedParameter { .. }) | Err(e @ Error::ImproperSeed(_)) => {
                (Status::Skipped, e.to_string())
            }
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.checks.push(CheckRecord {
            name: name.into(),
            status,
            detail,
            elapsed: start.elapsed(),
        });
    }

    fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.checks.push(CheckRecord {
            name: name.into(),
            status: Status::Skipped,
            detail: why.into(),
            elapsed: Duration::ZERO,
        });
    }
}

fn outcome(o: CheckOutcome) -> (Status, String) {
    if o.ok {
        (Status::Pass, o.detail.unwrap_or_default())
    } else {
        (Status::Fail, o.detail.unwrap_or_default())
    }
}

fn flag(ok: bool, detail: impl Into<String>) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail.into())
}

fn rep_checks<T: Ring>(rec: &mut Recorder, rep: &RepBundle<'_, T>, label: &str) {
    rec.run(format!("structure{}", label), || Ok(outcome(rep.structure_check())));
    rec.run(format!("integrability{}", label), || Ok(outcome(check_integrability(rep))));
    rec.run(format!("equivariance{}", label), || Ok(outcome(rep.check_equivariance())));
    for c in 0..rep.group.classes.len() {
        rec.run(format!("t-scalar[{}]{}", c, label), || Ok(outcome(rep.check_t_scalar(c)?)));
    }
}

fn parabolic_seeds(g: &ReflectionGroupData) -> Vec<Vec<usize>> {
    let mut seeds = Vec::new();
    for class in &g.classes {
        let s = class[0];
        seeds.push(vec![s]);
        if let Some(u) = (0..g.len()).find(|&u| u != s && !g.commute(s, u)) {
            seeds.push(vec![s, u]);
        }
    }
    seeds
}

fn dihedral_order(spec: &GroupSpec) -> Option<u32> {
    match *spec {
        GroupSpec::Coxeter(CoxeterType::I2(e)) => Some(e),
        GroupSpec::Series { m, p, r: 2 } if m == p => Some(m),
        _ => None,
    }
}

fn type_b_rank(spec: &GroupSpec) -> Option<usize> {
    match *spec {
        GroupSpec::Coxeter(CoxeterType::B(n)) if n >= 2 => Some(n as usize),
        GroupSpec::Series { m: 2, p: 1, r } if r >= 2 => Some(r as usize),
        _ => None,
    }
}

fn strands(spec: &GroupSpec) -> Option<usize> {
    match *spec {
        GroupSpec::Coxeter(CoxeterType::A(n)) => Some(n as usize + 1),
        GroupSpec::Series { m: 1, p: 1, r } if r >= 2 => Some(r as usize),
        _ => None,
    }
}

pub fn run_suite(spec: &GroupSpec, g: &ReflectionGroupData, opts: &VerifyOptions) -> VerifyReport {
    let mut rec = Recorder { checks: Vec::new() };
    let n = g.len();
    let symbolic_ok = n <= EXHAUSTIVE_LIMIT;
    let symbolic = build_rep(g);
    let sampled = build_rep_at(g, &opts.m);
    let at = format!("@m={}", opts.m);

    if opts.suite.includes(Suite::Core) {
        if symbolic_ok {
            rep_checks(&mut rec, &symbolic, "");
        } else {
            rep_checks(&mut rec, &sampled, &at);
        }
        for c in 0..g.classes.len() {
            rec.run(format!("discriminant[{}]", c), || {
                let d = discriminant(g, c)?;
                let size = g.classes[c].len();
                let expected_sign = if size.is_multiple_of(2) { 1 } else { -1 };
                Ok(flag(d.degree() == size && d.sign == expected_sign, d.to_string()))
            });
            rec.run(format!("n_c[{}]", c), || {
                let r = check_n_c(g, c)?;
                Ok(flag(r.ok, r.detail))
            });
            rec.run(format!("form[{}]", c), || {
                let form = gram_matrix(g, c)?;
                let (nc, _) = g.class_stats(c)?;
                Ok(flag(
                    form_is_invariant(g, &form) && row_sums_equal(&form, nc),
                    format!("invariant, row sums N(c) = {}", nc),
                ))
            });
        }
        if let Some(t) = spec.coxeter_type() {
            rec.run("closed-form", || match closed_form_check(t, g) {
                Ok(r) => Ok(flag(r.all_match(), format!("{} classes", r.cases.len()))),
                Err(Error::NotCovered(why)) => Ok((Status::Skipped, why)),
                Err(e) => Err(e),
            });
        }
    }

    if opts.suite.includes(Suite::Spectral) {
        for (c, class) in g.classes.iter().enumerate() {
            let s = class[0];
            rec.run(format!("spectrum[{}]{}", c, at), || {
                let r = spectrum_check(&sampled, s)?;
                Ok(flag(
                    r.ok,
                    format!("dims {:?} expected {:?} block {:?}", r.dims, r.expected, r.block_dims),
                ))
            });
        }
        for (c, class) in g.classes.iter().enumerate() {
            if class.len() > BURNSIDE_LIMIT {
                rec.skip(format!("burnside[{}]", c), format!("class size {} exceeds {}", class.len(), BURNSIDE_LIMIT));
                continue;
            }
            rec.run(format!("burnside[{}]", c), || {
                let (nc, _) = g.class_stats(c)?;
                let m0 = rat(nc as i64 + 2);
                let dim = build_rep_at(g, &m0).class_algebra_dimension(c)?;
                let full = class.len() * class.len();
                Ok(flag(dim == full, format!("algebra {}/{} at m = {}", dim, full, m0)))
            });
        }
        rec.run(format!("dual{}", at), || Ok(outcome(sampled.dual_check())));
        rec.run(format!("self-adjoint{}", at), || Ok(outcome(sampled.self_adjoint_check())));
        rec.run(format!("s-from-t{}", at), || Ok(outcome(sampled.s_from_t_check())));
    }

    if opts.suite.includes(Suite::Tensor) {
        for (c, class) in g.classes.iter().enumerate() {
            if class.len() > TENSOR_CLASS_LIMIT && !opts.force {
                let why = format!("class size {} exceeds {}; pass --force", class.len(), TENSOR_CLASS_LIMIT);
                rec.skip(format!("ds-table[{}]", c), why.clone());
                rec.skip(format!("tensor-square[{}]", c), why.clone());
                rec.skip(format!("psu[{}]", c), why);
                continue;
            }
            let s = class[0];
            rec.run(format!("ds-table[{}]", c), || {
                let ids = ds_table_check(&symbolic, s, c)?;
                let bad: Vec<&str> = ids.iter().filter(|i| !i.holds).map(|i| i.name.as_str()).collect();
                Ok(flag(bad.is_empty(), format!("{} identities, failing {:?}", ids.len(), bad)))
            });
            if class.len() > SAMPLED_TENSOR_LIMIT && !opts.force {
                let why = format!(
                    "class size {} exceeds {} for the algebra closure; pass --force",
                    class.len(),
                    SAMPLED_TENSOR_LIMIT
                );
                rec.skip(format!("tensor-square[{}]", c), why.clone());
                rec.skip(format!("psu[{}]", c), why);
                continue;
            }
            rec.run(format!("tensor-square[{}]{}", c, at), || {
                let r = tensor_square_check(&sampled, c)?;
                Ok(flag(
                    r.irreducible(),
                    format!(
                        "L2 {}/{} S2 {}/{}",
                        r.lambda_algebra,
                        r.lambda_dim * r.lambda_dim,
                        r.sym_algebra,
                        r.sym_dim * r.sym_dim
                    ),
                ))
            });
            match class.iter().copied().find(|&u| u != s) {
                Some(u) => rec.run(format!("psu[{}]{}", c, at), || {
                    let ok = psu_membership_check(&sampled, c, s, u)?;
                    Ok(flag(ok, format!("pair ({}, {})", s, u)))
                }),
                None => rec.skip(format!("psu[{}]", c), "class has one reflection"),
            }
        }
    }

    if opts.suite.includes(Suite::Parabolic) {
        for seed in parabolic_seeds(g) {
            let name = format!("parabolic{:?}", seed);
            if symbolic_ok {
                rec.run(name, || Ok(outcome(symbolic.parabolic_restriction_check(&seed)?)));
            } else {
                rec.run(format!("{}{}", name, at), || Ok(outcome(sampled.parabolic_restriction_check(&seed)?)));
            }
        }
    }

    if opts.suite.includes(Suite::Dihedral) {
        match dihedral_order(spec) {
            Some(e) if e % 2 == 1 => rec.run("dihedral-m0", || {
                let r = dihedral_m0_check(e)?;
                Ok(flag(
                    r.ok(),
                    format!(
                        "chi_U = {:?}; chi_k vanishes on reflections: {}",
                        r.chi_u_values, r.chi_k_vanishes_on_reflections
                    ),
                ))
            }),
            Some(e) => rec.skip("dihedral-m0", format!("e = {} is even", e)),
            None => rec.skip("dihedral-m0", "not a dihedral group"),
        }
        match type_b_rank(spec) {
            Some(r) => rec.run("bn-model", || {
                let rep = bn_model_check(r)?;
                Ok(flag(
                    rep.small_class_matches && rep.large_class_matches,
                    format!("small {} large {}", rep.small_class_matches, rep.large_class_matches),
                ))
            }),
            None => rec.skip("bn-model", "not of type B"),
        }
    }

    if opts.suite.includes(Suite::Krammer) {
        match strands(spec) {
            Some(k) => {
                let model = build_krammer(k);
                rec.run(format!("braid-relations[n={}]", k), || Ok(flag(check_braid_relations(&model.clone()?), "")));
                if k * (k - 1) / 2 <= 20 {
                    rec.run(format!("unit-determinants[n={}]", k), || {
                        Ok(flag(generators_invertible(&model.clone()?), ""))
                    });
                } else {
                    rec.skip(format!("unit-determinants[n={}]", k), "dimension above 20");
                }
                if k >= 3 {
                    rec.run(format!("cubic[n={}]", k), || Ok(flag(cubic_specialization_check(&model.clone()?), "")));
                }
            }
            None => rec.skip("krammer", "not of type A"),
        }
    }

    VerifyReport {
        group: *spec,
        checks: rec.checks,
    }
}

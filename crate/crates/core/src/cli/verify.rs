//! Invariant suite run on one `(N ⋊ H, GF(q))` instance: reciprocity and
//! double-coset identities on sampled subgroups and modules, the
//! irreducibility and isomorphism criteria for induced modules, and the
//! classification checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fields::FieldSpec;
use crate::groups::{Group, SemidirectGroup, Subgroup};
use crate::littlegroups::{
    classify, completeness_check, field_compat, match_irreducible, rotated_representatives_agree, ClassificationEntry,
    MatchResult,
};
use crate::mackey::{
    double_coset_intertwining, induced_isomorphism_test, intertwining_on_conjugates, intertwining_preserved_by_induction,
    mackey_sufficient, mackey_terms, monomial_criterion, normal_terms,
};
use crate::repr::{
    endomorphism_field_check, exhaustive_spin_oracle, induce, intertwining_number, irreducibles_of_group_with,
    is_irreducible_with, restrict, Config, Representation,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

/// Irreducibility decided without the MeatAxe: exhaustive spinning when the
/// projective space is small enough, otherwise the endomorphism-field
/// certificate. Returns the verdict and the method used.
pub fn independent_irreducibility(m: &Representation, cfg: &Config) -> Result<(bool, &'static str)> {
    match exhaustive_spin_oracle(m) {
        Some(w) => Ok((w.is_none(), "exhaustive_spin")),
        None => Ok((endomorphism_field_check(m, cfg)?.irreducible, "endomorphism_field")),
    }
}

struct Outcome {
    cases: usize,
    failures: Vec<String>,
    note: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { cases: 0, failures: Vec::new(), note: String::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn run_check(name: &str, f: impl FnOnce() -> Result<Outcome>) -> Check {
    match f() {
        Ok(o) => {
            let passed = o.failures.is_empty();
            let detail = if passed {
                o.note
            } else {
                let shown: Vec<&str> = o.failures.iter().take(3).map(String::as_str).collect();
                format!("{} failure(s): {}", o.failures.len(), shown.join("; "))
            };
            Check { name: name.into(), passed, cases: o.cases, detail }
        }
        Err(e) => Check { name: name.into(), passed: false, cases: 0, detail: format!("error: {e}") },
    }
}

fn random_subgroup(g: &Group, rng: &mut ChaCha8Rng) -> Result<Subgroup> {
    let k = rng.gen_range(1..=2);
    let elems: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
    Subgroup::generated(g, &elems)
}

fn random_irreducible(s: &Subgroup, field: &FieldSpec, cfg: &Config, rng: &mut ChaCha8Rng) -> Result<Representation> {
    let irr = irreducibles_of_group_with(s.group(), field, cfg)?;
    Ok(irr[rng.gen_range(0..irr.len())].clone())
}

fn pick<'a, T>(items: &'a [T], rng: &mut ChaCha8Rng) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

/// Runs every check; `samples` controls how many random subgroups and
/// modules the sampled identities visit.
pub fn verify_instance(sd: &SemidirectGroup, field: &FieldSpec, cfg: &Config, samples: usize) -> Vec<Check> {
    let g = sd.group();
    let mut checks = Vec::new();
    let irr_g = match irreducibles_of_group_with(g, field, cfg) {
        Ok(v) => v,
        Err(e) => {
            checks.push(Check { name: "irreducibles_of_group".into(), passed: false, cases: 0, detail: e.to_string() });
            return checks;
        }
    };
    checks.push(Check {
        name: "irreducibles_of_group".into(),
        passed: true,
        cases: irr_g.len(),
        detail: format!("{} irreducibles, dims {:?}", irr_g.len(), irr_g.iter().map(Representation::dim).collect::<Vec<_>>()),
    });

    checks.push(run_check("frobenius_reciprocity", || {
        let mut o = Outcome::new();
        let mut rng = cfg.rng(101);
        for _ in 0..samples {
            let h = random_subgroup(g, &mut rng)?;
            let w = random_irreducible(&h, field, cfg, &mut rng)?;
            let v = pick(&irr_g, &mut rng).direct_sum(pick(&irr_g, &mut rng))?;
            let lhs = intertwining_number(&induce(&w, &h)?, &v)?;
            let rhs = intertwining_number(&w, &restrict(&v, &h)?)?;
            o.expect(lhs == rhs, || format!("|H| = {}: {lhs} != {rhs}", h.order()));
        }
        Ok(o)
    }));

    checks.push(run_check("double_coset_sum", || {
        let mut o = Outcome::new();
        let mut rng = cfg.rng(102);
        for _ in 0..samples {
            let (h1, h2) = (random_subgroup(g, &mut rng)?, random_subgroup(g, &mut rng)?);
            let l1 = random_irreducible(&h1, field, cfg, &mut rng)?;
            let l2 = random_irreducible(&h2, field, cfg, &mut rng)?;
            let terms = mackey_terms(&l1, &h1, &l2, &h2)?;
            let sum: usize = terms.iter().map(|t| t.i_value).sum();
            let direct = intertwining_number(&induce(&l1, &h1)?, &induce(&l2, &h2)?)?;
            o.expect(sum == direct, || format!("sum {sum} != direct {direct}"));
        }
        Ok(o)
    }));

    checks.push(run_check("coset_representative_independence", || {
        let mut o = Outcome::new();
        let mut rng = cfg.rng(103);
        for _ in 0..samples {
            let (h1, h2) = (random_subgroup(g, &mut rng)?, random_subgroup(g, &mut rng)?);
            let l1 = random_irreducible(&h1, field, cfg, &mut rng)?;
            let l2 = random_irreducible(&h2, field, cfg, &mut rng)?;
            for t in mackey_terms(&l1, &h1, &l2, &h2)? {
                let a = *pick(h2.elements(), &mut rng);
                let b = *pick(h1.elements(), &mut rng);
                let other = g.mul(g.mul(a, t.representative), b);
                let v = double_coset_intertwining(&l1, &h1, &l2, &h2, other)?;
                o.expect(v == t.i_value, || format!("x = {}: {} vs {v}", t.rep_word, t.i_value));
                let y = rng.gen_range(0..g.order());
                let v2 = intertwining_on_conjugates(&l1, &h1, g.mul(y, t.representative), &l2, &h2, y)?;
                o.expect(v2 == t.i_value, || format!("x = {}, y = {}: {} vs {v2}", t.rep_word, g.word_string(y), t.i_value));
            }
        }
        Ok(o)
    }));

    checks.push(run_check("disjointness_criterion", || {
        let mut o = Outcome::new();
        let mut rng = cfg.rng(104);
        let (mut holds, mut oracle_exhaustive, mut normal_cases) = (0, 0, 0);
        for _ in 0..samples {
            let h = random_subgroup(g, &mut rng)?;
            let l = random_irreducible(&h, field, cfg, &mut rng)?;
            let report = mackey_sufficient(&l, &h, cfg)?;
            let preserved = intertwining_preserved_by_induction(&l, &h, cfg)?;
            o.expect(report.condition_holds == preserved, || {
                format!("condition {} but i(L^G,L^G) = {}, i(L,L) = {}", report.condition_holds, report.direct_total, report.i_ll)
            });
            if report.condition_holds {
                holds += 1;
                let (irr, method) = independent_irreducibility(&induce(&l, &h)?, cfg)?;
                oracle_exhaustive += usize::from(method == "exhaustive_spin");
                o.expect(irr, || format!("condition holds for |H| = {} but L^G is reducible", h.order()));
            }
            if h.is_normal() {
                normal_cases += 1;
                let xs: Vec<usize> = report.double_cosets.iter().map(|t| t.representative).collect();
                o.expect(normal_terms(&l, &h, &xs)? == report.double_cosets, || "normal-subgroup path disagrees".into());
            }
        }
        o.note = format!("condition held in {holds} samples ({oracle_exhaustive} by exhaustive spin); {normal_cases} normal");
        Ok(o)
    }));

    checks.push(run_check("monomial_criterion", || {
        let mut o = Outcome::new();
        let mut rng = cfg.rng(105);
        let mut positive = 0;
        for _ in 0..samples {
            let h = random_subgroup(g, &mut rng)?;
            let irr = irreducibles_of_group_with(h.group(), field, cfg)?;
            let linear: Vec<&Representation> = irr.iter().filter(|r| r.dim() == 1).collect();
            let rho = *pick(&linear, &mut rng);
            if monomial_criterion(rho, &h)? {
                positive += 1;
                let (irr, _) = independent_irreducibility(&induce(rho, &h)?, cfg)?;
                o.expect(irr, || format!("criterion holds for |H| = {} but rho^G is reducible", h.order()));
            } else {
                o.cases += 1;
            }
        }
        o.note = format!("criterion held in {positive} samples");
        Ok(o)
    }));

    let entries = classify(sd, field, cfg);
    checks.push(run_check("induced_isomorphism_test", || {
        let mut o = Outcome::new();
        let entries = entries.clone()?;
        let mut rng = cfg.rng(106);
        let mut non_iso = 0;
        let pairs = samples.max(1) * 2;
        for _ in 0..pairs {
            let a = pick(&entries, &mut rng);
            let b = pick(&entries, &mut rng);
            let rep = induced_isomorphism_test(&a.inducing, &a.stabilizer, &b.inducing, &b.stabilizer, cfg)?;
            let direct = intertwining_number(&a.theta, &b.theta)?;
            non_iso += usize::from(rep.non_isomorphic);
            o.expect(rep.non_isomorphic == (direct == 0), || "verdict disagrees with i(L1^G, L2^G)".into());
        }
        o.note = format!("{non_iso} of {pairs} pairs non-isomorphic");
        Ok(o)
    }));

    checks.extend(classification_checks(sd, field, cfg, entries, &irr_g));
    checks
}

fn classification_checks(
    sd: &SemidirectGroup,
    field: &FieldSpec,
    cfg: &Config,
    entries: Result<Vec<ClassificationEntry>>,
    irr_g: &[Representation],
) -> Vec<Check> {
    let mut out = Vec::new();
    let compat = field_compat(sd.n_spec(), field);
    out.push(run_check("classification_irreducible", || {
        let mut o = Outcome::new();
        let mut exhaustive = 0;
        for e in entries.as_ref().map_err(Clone::clone)? {
            let (irr, method) = independent_irreducibility(&e.theta, cfg)?;
            exhaustive += usize::from(method == "exhaustive_spin");
            o.expect(irr && e.certified_irreducible, || format!("entry ({}, {}) reducible", e.orbit_index, e.rho_index));
            o.expect(e.dim_theta == e.orbit_size * e.rho.dim(), || "dimension is not index times degree".into());
        }
        o.note = format!("{exhaustive} entries by exhaustive spin");
        Ok(o)
    }));
    out.push(run_check("classification_pairwise_disjoint", || {
        let mut o = Outcome::new();
        let entries = entries.as_ref().map_err(Clone::clone)?;
        for (a, ea) in entries.iter().enumerate() {
            for (b, eb) in entries.iter().enumerate() {
                let i = intertwining_number(&ea.theta, &eb.theta)?;
                let want = if a == b { ea.endo_dim } else { 0 };
                o.expect(i == want, || format!("i(theta_{a}, theta_{b}) = {i}"));
            }
        }
        Ok(o)
    }));
    out.push(run_check("classification_completeness", || {
        let mut o = Outcome::new();
        let entries = entries.as_ref().map_err(Clone::clone)?;
        let (sum, complete) = completeness_check(entries, sd.order());
        if compat {
            o.expect(complete, || format!("sum {sum} != |G| = {}", sd.order()));
        } else {
            o.cases += 1;
        }
        o.note = format!("sum {sum}, |G| = {}, field_compat {compat}, complete {complete}", sd.order());
        Ok(o)
    }));
    out.push(run_check("irreducible_matching", || {
        let mut o = Outcome::new();
        let entries = entries.as_ref().map_err(Clone::clone)?;
        let mut hits = vec![0usize; entries.len()];
        let mut unmatched = 0;
        let mut unmatched_count = 0;
        for v in irr_g {
            match match_irreducible(sd, v, entries, cfg)? {
                MatchResult::Entry(i) => hits[i] += 1,
                MatchResult::NoLinearConstituent => {
                    unmatched += 1;
                    let e = intertwining_number(v, v)?;
                    unmatched_count += v.dim() * v.dim() / e;
                }
            }
            o.cases += 1;
        }
        o.expect(hits.iter().all(|&h| h == 1), || format!("entry hit counts {hits:?}"));
        if compat {
            o.expect(unmatched == 0, || format!("{unmatched} irreducibles without a linear N-constituent"));
        }
        let (sum, _) = completeness_check(entries, sd.order());
        o.expect(sum + unmatched_count == sd.order(), || format!("{sum} + {unmatched_count} != |G|"));
        o.note = format!("{unmatched} irreducibles without a linear N-constituent");
        Ok(o)
    }));
    out.push(run_check("rotated_representatives", || {
        let mut o = Outcome::new();
        let entries = entries.as_ref().map_err(Clone::clone)?;
        o.expect(rotated_representatives_agree(sd, field, entries, cfg)?, || "listings differ".into());
        Ok(o)
    }));
    out.push(run_check("generic_irreducibility_agrees", || {
        let mut o = Outcome::new();
        for v in irr_g {
            let (ind, _) = independent_irreducibility(v, cfg)?;
            o.expect(ind && is_irreducible_with(v, cfg)?.irreducible, || format!("irreducible of dim {} rejected", v.dim()));
        }
        Ok(o)
    }));
    out
}

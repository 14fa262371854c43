//! Named law suites.

use std::collections::BTreeMap;

use crate::baselogic::{def_ext_comorphism, renaming_equivalence};
use crate::comorphism::{identity_comorphism, Comorphism};
use crate::error::{Error, Result};
use crate::institution::{mod_reduct, satisfies, sen_translate, term_translate};
use crate::lifting::{check_conservativity, check_equivalence, check_functor_laws, check_lifted_satisfaction};
use crate::model::Model;
use crate::par::Execution;
use crate::prob::interp_term;
use crate::signature::Signature;
use crate::stack::{LayerKind, LogicStack};
use crate::transform::{check_naturality, check_x_fragment, until_diagnostic};

use super::config::{sample_rng, sample_seed, GenConfig};
use super::gen::{
    gen_bijection, gen_model, gen_morphism, gen_sentence, gen_signature, gen_term, prop_pool, INNER_DEPTH,
};
use super::report::{CheckReport, Counterexample, LawReport, UntilDiagnostic};
use super::{ensure, run_check};

pub const SUITES: [&str; 7] = [
    "institution",
    "comorphism",
    "functor-laws",
    "conservativity",
    "equivalence",
    "tau",
    "all",
];

/// Stacks covered by the institution suite.
pub const INSTITUTION_STACKS: [&str; 5] = ["PL", "L(PL)", "P(PL)", "H(PL)", "H(L(PL))"];

pub const LAYERS: [LayerKind; 3] = [LayerKind::Temporal, LayerKind::Prob, LayerKind::Hybrid];

/// Fresh symbol of the definitional extension used by the suites.
pub const FRESH: &str = "f1";

pub fn run_suite(name: &str, cfg: &GenConfig) -> Result<LawReport> {
    run_suite_with(name, cfg, Execution::default())
}

pub fn run_suite_with(name: &str, cfg: &GenConfig, exec: Execution) -> Result<LawReport> {
    cfg.validate()?;
    let mut checks = Vec::new();
    let mut until = None;
    match name {
        "institution" => checks = institution(cfg, exec),
        "comorphism" => checks = comorphism(cfg, exec)?,
        "functor-laws" => checks = functor_laws(cfg, exec)?,
        "conservativity" => checks = conservativity(cfg, exec)?,
        "equivalence" => checks = equivalence(cfg, exec)?,
        "tau" => (checks, until) = tau(cfg, exec)?,
        "all" => {
            checks.extend(institution(cfg, exec));
            checks.extend(comorphism(cfg, exec)?);
            checks.extend(functor_laws(cfg, exec)?);
            checks.extend(conservativity(cfg, exec)?);
            checks.extend(equivalence(cfg, exec)?);
            let (tau_checks, diag) = tau(cfg, exec)?;
            checks.extend(tau_checks);
            until = diag;
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(LawReport::new(name, cfg.seed, checks, until))
}

/// `def_ext(f1)`, defined on every signature over the proposition pool.
pub fn suite_def_ext(cfg: &GenConfig) -> Result<Comorphism> {
    def_ext_comorphism(&Signature::propositional(prop_pool(cfg)), FRESH)
}

/// A renaming of the whole proposition pool, drawn from the suite seed.
pub fn suite_renaming(cfg: &GenConfig) -> Result<Comorphism> {
    let pool = Signature::propositional(prop_pool(cfg));
    let bij: BTreeMap<_, _> = gen_bijection(pool.props(), cfg, &mut sample_rng(sample_seed(cfg.seed, "renaming", 0)));
    renaming_equivalence(&pool, &bij)
}

fn stack(s: &str) -> LogicStack {
    s.parse().expect("built-in stack")
}

fn institution(cfg: &GenConfig, exec: Execution) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for s in INSTITUTION_STACKS {
        let st = stack(s);
        out.push(run_check(
            &format!("institution/satisfaction/{s}"),
            cfg.seed,
            cfg.samples,
            exec,
            |rng| {
                let sig = gen_signature(&st, cfg, rng);
                let phi = gen_morphism(&sig, cfg, rng);
                let rho = gen_sentence(&sig, cfg, rng);
                let m = gen_model(phi.target(), cfg, rng);
                let translated = sen_translate(&phi, &rho)?;
                let left = satisfies(&sig, &mod_reduct(&phi, &m)?, &rho)?;
                let right = satisfies(phi.target(), &m, &translated)?;
                ensure(left == right, || {
                    Counterexample::new(format!("M↾φ ⊨ ρ is {left} but M ⊨ φ(ρ) is {right}"))
                        .signature(phi.target())
                        .formula(&translated)
                        .model(&m)
                })
            },
        ));
        out.push(run_check(
            &format!("institution/functoriality/{s}"),
            cfg.seed,
            cfg.samples,
            exec,
            |rng| {
                let sig = gen_signature(&st, cfg, rng);
                let f = gen_morphism(&sig, cfg, rng);
                let g = gen_morphism(f.target(), cfg, rng);
                let fg = f.then(&g)?;
                let rho = gen_sentence(&sig, cfg, rng);
                ensure(
                    sen_translate(&fg, &rho)? == sen_translate(&g, &sen_translate(&f, &rho)?)?,
                    || {
                        Counterexample::new("Sen(g·f) differs from Sen(g)·Sen(f)")
                            .signature(&sig)
                            .formula(&rho)
                    },
                )?;
                let m = gen_model(g.target(), cfg, rng);
                ensure(mod_reduct(&fg, &m)? == mod_reduct(&f, &mod_reduct(&g, &m)?)?, || {
                    Counterexample::new("Mod(g·f) differs from Mod(f)·Mod(g)")
                        .signature(g.target())
                        .model(&m)
                })?;
                let id = crate::signature::SignatureMorphism::identity(&sig);
                let n = gen_model(&sig, cfg, rng);
                ensure(sen_translate(&id, &rho)? == rho && mod_reduct(&id, &n)? == n, || {
                    Counterexample::new("identity morphism acts non-trivially")
                        .signature(&sig)
                        .formula(&rho)
                        .model(&n)
                })
            },
        ));
    }
    let st = stack("P(PL)");
    out.push(run_check(
        "institution/terms/P(PL)",
        cfg.seed,
        cfg.samples,
        exec,
        |rng| {
            let sig = gen_signature(&st, cfg, rng);
            let phi = gen_morphism(&sig, cfg, rng);
            let t = gen_term(&sig.inner(), INNER_DEPTH + 1, rng);
            let m = gen_model(phi.target(), cfg, rng);
            let (Model::Space(space), Model::Space(reduced)) = (&m, &mod_reduct(&phi, &m)?) else {
                return Err(Counterexample::new("reduct of a space is not a space"));
            };
            let (left, right) = (
                interp_term(reduced, &t)?,
                interp_term(space, &term_translate(&phi, &t)?)?,
            );
            ensure(left == right, || {
                Counterexample::new(format!("(M↾φ)_t = {left} but M_T(φ)(t) = {right}"))
                    .signature(phi.target())
                    .model(&m)
            })
        },
    ));
    out
}

fn comorphism(cfg: &GenConfig, exec: Execution) -> Result<Vec<CheckReport>> {
    let cs = [suite_def_ext(cfg)?, suite_renaming(cfg)?];
    Ok(LAYERS
        .iter()
        .flat_map(|layer| {
            cs.iter()
                .flat_map(move |c| check_lifted_satisfaction(*layer, c, cfg, exec))
        })
        .collect())
}

fn functor_laws(cfg: &GenConfig, exec: Execution) -> Result<Vec<CheckReport>> {
    let (c1, c2) = (suite_def_ext(cfg)?, suite_renaming(cfg)?);
    let mut out = Vec::new();
    for layer in LAYERS {
        out.extend(check_functor_laws(layer, &c1, &c2, cfg, exec)?);
    }
    Ok(out)
}

fn conservativity(cfg: &GenConfig, exec: Execution) -> Result<Vec<CheckReport>> {
    let c = suite_def_ext(cfg)?;
    LAYERS
        .iter()
        .map(|layer| check_conservativity(*layer, &c, cfg, exec))
        .collect()
}

fn equivalence(cfg: &GenConfig, exec: Execution) -> Result<Vec<CheckReport>> {
    let c = suite_renaming(cfg)?;
    let mut out = Vec::new();
    for layer in LAYERS {
        out.extend(check_equivalence(layer, &c, cfg, exec)?);
    }
    Ok(out)
}

fn tau(cfg: &GenConfig, exec: Execution) -> Result<(Vec<CheckReport>, Option<UntilDiagnostic>)> {
    let mut out = Vec::new();
    for c in [
        identity_comorphism(LogicStack::base()),
        suite_renaming(cfg)?,
        suite_def_ext(cfg)?,
    ] {
        out.extend(check_naturality(&c, cfg, exec)?);
    }
    out.push(check_x_fragment(cfg, exec));
    Ok((out, Some(until_diagnostic(cfg, exec))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        let err = run_suite("nope", &GenConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn invalid_config_is_a_usage_error() {
        let cfg = GenConfig {
            max_carrier: 0,
            ..GenConfig::default()
        };
        assert!(matches!(run_suite("institution", &cfg), Err(Error::Usage(_))));
    }

    #[test]
    fn smoke_all_is_deterministic() {
        let cfg = GenConfig::default().with_samples(1);
        let a = run_suite_with("all", &cfg, Execution::Sequential).unwrap();
        let b = run_suite_with("all", &cfg, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.until.is_some());
    }
}

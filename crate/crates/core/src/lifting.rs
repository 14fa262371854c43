//! Lifting a comorphism through one combinator layer.
//!
//! For a comorphism `c = (Φ, α, β)` between base stacks and a layer `C`, the
//! lifted comorphism keeps the layer structure and changes only what sits
//! below it:
//!
//! * `CΦ(Σ) = Φ(Σ_inner)` under the same layer signature;
//! * `Cα(ρ)` replaces every base sentence `ψ` of `ρ` by `α(ψ)`;
//! * `Cβ(M)` replaces every inner model `m` of `M` by `β(m)`.
//!
//! Witnesses lift the same way. Lifting twice gives the comorphism for a
//! two-layer stack.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::comorphism::{compose_comorphisms, identity_comorphism, Comorphism, ModMap, MorMap, SenMap, SigMap};
use crate::error::{contract, Result};
use crate::institution::{check_model, holds, satisfies};
use crate::model::Model;
use crate::par::Execution;
use crate::prob::interp_term;
use crate::props::gen::{gen_model, gen_morphism, gen_sentence, gen_signature, gen_term, INNER_DEPTH};
use crate::props::{ensure, run_check, CheckReport, Counterexample, GenConfig};
use crate::sentence::Sentence;
use crate::signature::{LayerSig, Signature};
use crate::stack::{LayerKind, LogicStack};

/// A comorphism obtained by lifting `base` through `layer`.
#[derive(Debug, Clone)]
pub struct LiftedComorphism {
    layer: LayerKind,
    base: Comorphism,
    lifted: Comorphism,
}

impl LiftedComorphism {
    pub fn layer(&self) -> LayerKind {
        self.layer
    }

    pub fn base(&self) -> &Comorphism {
        &self.base
    }

    pub fn comorphism(&self) -> &Comorphism {
        &self.lifted
    }

    pub fn into_comorphism(self) -> Comorphism {
        self.lifted
    }
}

fn outer_layer(stack: &LogicStack, layer: LayerKind, sig: &Signature) -> Result<(LayerSig, Signature)> {
    match sig.split() {
        Some((outer, inner)) if outer.kind() == layer && inner.stack() == *stack => Ok((outer.clone(), inner)),
        _ => Err(contract(format!(
            "signature for {} given to a comorphism lifted to {}",
            sig.stack(),
            stack.wrap(layer)
        ))),
    }
}

fn check_kind(layer: LayerKind, kind: Option<LayerKind>, what: &str) -> Result<()> {
    if kind != Some(layer) {
        return Err(contract(format!("{what} is not of the {} layer", layer.letter())));
    }
    Ok(())
}

fn lift_sen(layer: LayerKind, stack: LogicStack, f: SenMap) -> SenMap {
    Arc::new(move |sig, rho| {
        let (_, inner) = outer_layer(&stack, layer, sig)?;
        check_kind(layer, rho.kind(), "sentence")?;
        rho.map_base(&mut |psi| f(&inner, psi))
    })
}

fn lift_mod(layer: LayerKind, stack: LogicStack, f: ModMap) -> ModMap {
    Arc::new(move |sig, m| {
        let (_, inner) = outer_layer(&stack, layer, sig)?;
        check_kind(layer, m.kind(), "model")?;
        m.map_inner(&mut |x| f(&inner, x))
    })
}

/// `C(c)`: keeps the top-level structure and translates the bottom level.
pub fn lift_comorphism(layer: LayerKind, c: &Comorphism) -> LiftedComorphism {
    let (phi_sig, phi_mor, alpha, beta) = c.parts();
    let src = c.source().clone();

    let sig_map: SigMap = {
        let (phi_sig, src) = (phi_sig.clone(), src.clone());
        Arc::new(move |sig| {
            let (outer, inner) = outer_layer(&src, layer, sig)?;
            Ok(phi_sig(&inner)?.wrap(outer))
        })
    };
    let mor_map: MorMap = {
        let (phi_mor, src) = (phi_mor.clone(), src.clone());
        Arc::new(move |phi| {
            let (source_layer, _) = outer_layer(&src, layer, phi.source())?;
            let (target_layer, _) = outer_layer(&src, layer, phi.target())?;
            let (map, inner) = phi.split().expect("layered source");
            phi_mor(&inner)?.wrap(source_layer, target_layer, map.clone())
        })
    };
    let mut lifted = Comorphism::from_parts(
        format!("{}({})", layer.letter(), c.name()),
        c.source().wrap(layer),
        c.target().wrap(layer),
        sig_map,
        mor_map,
        lift_sen(layer, src.clone(), alpha.clone()),
        lift_mod(layer, src.clone(), beta.clone()),
    );
    let (preimage, alpha_inv, beta_inv) = c.witnesses();
    lifted.set_witnesses(
        preimage.map(|f| lift_mod(layer, src.clone(), f.clone())),
        alpha_inv.map(|f| lift_sen(layer, src.clone(), f.clone())),
        beta_inv.map(|f| lift_mod(layer, src.clone(), f.clone())),
    );
    LiftedComorphism {
        layer,
        base: c.clone(),
        lifted,
    }
}

/// Lifts `c` through `layers`, innermost first: `[L, H]` gives `H(L(c))`.
pub fn lift_through(layers: &[LayerKind], c: &Comorphism) -> Comorphism {
    layers
        .iter()
        .fold(c.clone(), |acc, layer| lift_comorphism(*layer, &acc).into_comorphism())
}

/// The lifting operation used by the functor-law checks; replaceable so that
/// tests can inject a faulty one.
pub type LiftFn = dyn Fn(LayerKind, &Comorphism) -> Comorphism + Sync + Send;

fn default_lift(layer: LayerKind, c: &Comorphism) -> Comorphism {
    lift_comorphism(layer, c).into_comorphism()
}

fn check_name(suite: &str, layer: LayerKind, what: &str) -> String {
    format!("{suite}/{}/{what}", layer.letter())
}

/// Samples `(Σ, φ, ρ, M′)` and compares two comorphisms component-wise.
fn compare_extensionally(
    a: &Comorphism,
    b: &Comorphism,
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(), Counterexample> {
    let sig = gen_signature(a.source(), cfg, rng);
    let (sa, sb) = (a.phi_sig(&sig)?, b.phi_sig(&sig)?);
    ensure(sa == sb, || {
        Counterexample::new(format!("{} and {} disagree on a signature", a.name(), b.name())).signature(&sig)
    })?;
    let phi = gen_morphism(&sig, cfg, rng);
    ensure(a.phi_mor(&phi)? == b.phi_mor(&phi)?, || {
        Counterexample::new(format!(
            "{} and {} disagree on a signature morphism",
            a.name(),
            b.name()
        ))
        .signature(&sig)
    })?;
    let rho = gen_sentence(&sig, cfg, rng);
    ensure(a.alpha(&sig, &rho)? == b.alpha(&sig, &rho)?, || {
        Counterexample::new(format!("{} and {} disagree on a sentence", a.name(), b.name()))
            .signature(&sig)
            .formula(&rho)
    })?;
    let m = gen_model(&sa, cfg, rng);
    ensure(a.beta(&sig, &m)? == b.beta(&sig, &m)?, || {
        Counterexample::new(format!("{} and {} disagree on a model", a.name(), b.name()))
            .signature(&sa)
            .model(&m)
    })
}

/// Lifting preserves identities and composition: `C(id) ≡ id` and
/// `C(c2 · c1) ≡ C(c2) · C(c1)`, compared on sampled inputs.
pub fn check_functor_laws(
    layer: LayerKind,
    c1: &Comorphism,
    c2: &Comorphism,
    cfg: &GenConfig,
    exec: Execution,
) -> Result<Vec<CheckReport>> {
    check_functor_laws_using(layer, c1, c2, &default_lift, cfg, exec)
}

pub fn check_functor_laws_using(
    layer: LayerKind,
    c1: &Comorphism,
    c2: &Comorphism,
    lift: &LiftFn,
    cfg: &GenConfig,
    exec: Execution,
) -> Result<Vec<CheckReport>> {
    let stack = c1.source().clone();
    let lifted_id = lift(layer, &identity_comorphism(stack.clone()));
    let id = identity_comorphism(stack.wrap(layer));
    let whole = lift(layer, &compose_comorphisms(c2, c1)?);
    let parts = compose_comorphisms(&lift(layer, c2), &lift(layer, c1))?;

    let identity = run_check(
        &check_name("functor-laws", layer, "identity"),
        cfg.seed,
        cfg.samples,
        exec,
        |rng| compare_extensionally(&lifted_id, &id, cfg, rng),
    );
    let composition = run_check(
        &check_name("functor-laws", layer, &format!("composition/{}", whole.name())),
        cfg.seed,
        cfg.samples,
        exec,
        |rng| compare_extensionally(&whole, &parts, cfg, rng),
    );
    Ok(vec![identity, composition])
}

/// The satisfaction condition of the lifted comorphism,
/// `Cβ(M′) ⊨ ρ ⇔ M′ ⊨ Cα(ρ)`; for the probabilistic layer also
/// `(Cβ(M′))_t = M′_{Cα(t)}` on sampled terms.
pub fn check_lifted_satisfaction(
    layer: LayerKind,
    c: &Comorphism,
    cfg: &GenConfig,
    exec: Execution,
) -> Vec<CheckReport> {
    let lifted = lift_comorphism(layer, c).into_comorphism();
    let name = check_name("comorphism", layer, lifted.name());
    let mut reports = vec![run_check(&name, cfg.seed, cfg.samples, exec, |rng| {
        let sig = gen_signature(lifted.source(), cfg, rng);
        let rho = gen_sentence(&sig, cfg, rng);
        let target = lifted.phi_sig(&sig)?;
        let m = gen_model(&target, cfg, rng);
        let reduced = lifted.beta(&sig, &m)?;
        let translated = lifted.alpha(&sig, &rho)?;
        let left = satisfies(&sig, &reduced, &rho)?;
        let right = satisfies(&target, &m, &translated)?;
        ensure(left == right, || {
            Counterexample::new(format!("β(M) ⊨ ρ is {left} but M ⊨ α(ρ) is {right}"))
                .signature(&sig)
                .formula(&rho)
                .model(&m)
        })
    })];
    if layer == LayerKind::Prob {
        let name = check_name("comorphism", layer, &format!("{}/terms", lifted.name()));
        reports.push(run_check(&name, cfg.seed, cfg.samples, exec, |rng| {
            let sig = gen_signature(lifted.source(), cfg, rng);
            let inner = sig.inner();
            let t = gen_term(&inner, INNER_DEPTH + 1, rng);
            let target = lifted.phi_sig(&sig)?;
            let m = gen_model(&target, cfg, rng);
            let (Model::Space(space), Model::Space(reduced)) = (&m, &lifted.beta(&sig, &m)?) else {
                return Err(Counterexample::new("lifted β did not return a probability space"));
            };
            let translated = t.map_base(&mut |psi| c.alpha(&inner, psi))?;
            let (left, right) = (interp_term(reduced, &t)?, interp_term(space, &translated)?);
            ensure(left == right, || {
                Counterexample::new(format!("term values differ: {left} vs {right}"))
                    .signature(&sig)
                    .model(&m)
            })
        }));
    }
    reports
}

/// The lifted section of β is a section: `Cβ(pre(M)) = M` for sampled `M`.
pub fn check_conservativity(layer: LayerKind, c: &Comorphism, cfg: &GenConfig, exec: Execution) -> Result<CheckReport> {
    if !c.has_preimage() {
        return Err(contract(format!("{} has no section of β to lift", c.name())));
    }
    let lifted = lift_comorphism(layer, c).into_comorphism();
    let name = check_name("conservativity", layer, lifted.name());
    Ok(run_check(&name, cfg.seed, cfg.samples, exec, |rng| {
        let sig = gen_signature(lifted.source(), cfg, rng);
        let m = gen_model(&sig, cfg, rng);
        let pre = lifted.beta_preimage(&sig, &m).expect("lifted witness")?;
        check_model(&lifted.phi_sig(&sig)?, &pre)?;
        let back = lifted.beta(&sig, &pre)?;
        ensure(back == m, || {
            Counterexample::new("β(preimage(M)) differs from M")
                .signature(&sig)
                .model(&m)
        })
    }))
}

/// Lifted inverses: `Cα⁻¹(Cα(ρ))` is equivalent to `ρ` on a sampled model,
/// and `Cβ⁻¹ ∘ Cβ`, `Cβ ∘ Cβ⁻¹` are identities on sampled models.
pub fn check_equivalence(
    layer: LayerKind,
    c: &Comorphism,
    cfg: &GenConfig,
    exec: Execution,
) -> Result<Vec<CheckReport>> {
    if !c.has_inverses() {
        return Err(contract(format!("{} has no inverse witnesses to lift", c.name())));
    }
    let lifted = lift_comorphism(layer, c).into_comorphism();
    let sentences = run_check(
        &check_name("equivalence", layer, &format!("{}/sentences", lifted.name())),
        cfg.seed,
        cfg.samples,
        exec,
        |rng| {
            let sig = gen_signature(lifted.source(), cfg, rng);
            let rho = gen_sentence(&sig, cfg, rng);
            let m = gen_model(&sig, cfg, rng);
            let back: Sentence = lifted
                .alpha_inv(&sig, &lifted.alpha(&sig, &rho)?)
                .expect("lifted witness")?;
            let (left, right) = (satisfies(&sig, &m, &rho)?, holds(&m, &back)?);
            ensure(left == right, || {
                Counterexample::new(format!("ρ is {left} but α⁻¹(α(ρ)) is {right}"))
                    .signature(&sig)
                    .formula(&rho)
                    .model(&m)
            })
        },
    );
    let models = run_check(
        &check_name("equivalence", layer, &format!("{}/models", lifted.name())),
        cfg.seed,
        cfg.samples,
        exec,
        |rng| {
            let sig = gen_signature(lifted.source(), cfg, rng);
            let target = lifted.phi_sig(&sig)?;
            let m = gen_model(&target, cfg, rng);
            let round = lifted
                .beta_inv(&sig, &lifted.beta(&sig, &m)?)
                .expect("lifted witness")?;
            ensure(round == m, || {
                Counterexample::new("β⁻¹(β(M′)) differs from M′")
                    .signature(&target)
                    .model(&m)
            })?;
            let n = gen_model(&sig, cfg, rng);
            let round = lifted.beta(&sig, &lifted.beta_inv(&sig, &n).expect("lifted witness")?)?;
            ensure(round == n, || {
                Counterexample::new("β(β⁻¹(M)) differs from M")
                    .signature(&sig)
                    .model(&n)
            })
        },
    );
    Ok(vec![sentences, models])
}

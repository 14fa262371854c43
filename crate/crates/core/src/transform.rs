//! The translation τ from temporal to hybrid logic.
//!
//! Temporal signatures go to the fixed hybrid layer `N` with nominal `Init`
//! and modalities `Next`, `After` (strict) and `AfterStar` (reflexive), and
//! sentences to `@ Init σ(ρ)`:
//!
//! ```text
//! σ(ψ)     = ψ
//! σ(X a)   = [Next] σ(a)
//! σ(a U b) = E x . <AfterStar> (nom x & σ(b)) & [AfterStar] (<After> nom x -> σ(a))
//! ```
//!
//! Hybrid models for `N` live over ℕ. They are approximated by a finite
//! prefix `0..H` of the unfolded lasso, with `H` growing with the temporal
//! depth of the formula. `[Next]` holds vacuously at the last world, so
//! results are exact for bounded lookahead and measured for `U`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::comorphism::Comorphism;
use crate::error::{contract, malformed, Error, Result};
use crate::hybrid::{hy_eval_at, HybridSentence, KripkeModel};
use crate::institution::satisfies;
use crate::lifting::lift_comorphism;
use crate::model::Model;
use crate::par::{run_indexed, Execution};
use crate::props::gen::{gen_lasso, gen_prop_signature, gen_signature, gen_temporal};
use crate::props::{ensure, run_check, CheckReport, Counterexample, GenConfig, UntilDiagnostic, KEPT_FAILURES};
use crate::props::{sample_rng, sample_seed};
use crate::sentence::{Connectives, Sentence};
use crate::signature::{HybridMap, HybridSig, LayerMap, LayerSig, Signature, SignatureMorphism, Symbol};
use crate::stack::{LayerKind, LogicStack};
use crate::temporal::{ltl_satisfies, Lasso, TemporalSentence};

pub const INIT: &str = "Init";
pub const NEXT: &str = "Next";
pub const AFTER: &str = "After";
pub const AFTER_STAR: &str = "AfterStar";

/// The hybrid layer signature `N`, with quantification for the `U` case.
pub fn n_hybrid_sig() -> HybridSig {
    HybridSig::new([INIT], [AFTER, AFTER_STAR, NEXT]).with_quantifiers()
}

fn temporal_inner(sig: &Signature) -> Result<Signature> {
    match sig.split() {
        Some((LayerSig::Temporal, inner)) => Ok(inner),
        _ => Err(malformed(format!("{} is not a temporal signature", sig.stack()))),
    }
}

/// `τΦ(Σ)`: the inner signature under the `N` layer.
pub fn n_signature(sig: &Signature) -> Result<Signature> {
    Ok(temporal_inner(sig)?.wrap(LayerSig::Hybrid(n_hybrid_sig())))
}

/// `τΦ(φ)`: identity on `N`, the inner morphism below it.
pub fn tau_phi(phi: &SignatureMorphism) -> Result<SignatureMorphism> {
    temporal_inner(phi.source())?;
    let n = n_hybrid_sig();
    let (map, inner) = phi.split().expect("temporal signatures have a layer");
    if *map != LayerMap::Unit {
        return Err(malformed("temporal morphism with a non-trivial layer map"));
    }
    inner.wrap(
        LayerSig::Hybrid(n.clone()),
        LayerSig::Hybrid(n.clone()),
        LayerMap::Hybrid(HybridMap::identity(&n)),
    )
}

/// `σ(ρ)`. Each `U` binds a fresh `x1, x2, …`, numbered in preorder.
pub fn sigma(rho: &TemporalSentence) -> HybridSentence {
    let mut counter = 0;
    sigma_with(rho, &mut counter)
}

fn sigma_with(rho: &TemporalSentence, counter: &mut usize) -> HybridSentence {
    match rho {
        TemporalSentence::Base(psi) => HybridSentence::Base(psi.clone()),
        TemporalSentence::Not(a) => HybridSentence::not(sigma_with(a, counter)),
        TemporalSentence::And(a, b) => {
            let a = sigma_with(a, counter);
            HybridSentence::and(a, sigma_with(b, counter))
        }
        TemporalSentence::Next(a) => HybridSentence::boxed(NEXT, sigma_with(a, counter)),
        TemporalSentence::Until(a, b) => {
            *counter += 1;
            let x = format!("x{counter}");
            let sa = sigma_with(a, counter);
            let sb = sigma_with(b, counter);
            let witness = HybridSentence::diamond(AFTER_STAR, HybridSentence::and(HybridSentence::nominal(&x), sb));
            let guard = HybridSentence::boxed(
                AFTER_STAR,
                HybridSentence::implies(HybridSentence::diamond(AFTER, HybridSentence::nominal(&x)), sa),
            );
            HybridSentence::exists(x, HybridSentence::and(witness, guard))
        }
    }
}

/// `τα(ρ) = @ Init σ(ρ)`.
pub fn tau_alpha(rho: &TemporalSentence) -> HybridSentence {
    HybridSentence::at(INIT, sigma(rho))
}

/// `τα` on layered sentences.
pub fn tau_alpha_sentence(rho: &Sentence) -> Result<Sentence> {
    match rho {
        Sentence::Temporal(t) => Ok(Sentence::Hybrid(tau_alpha(t))),
        _ => Err(malformed("τ translates temporal sentences only")),
    }
}

/// `H = n + (n − k)(d + 2)` for a lasso of length `n` looping at `k` and a
/// formula of temporal depth `d`.
pub fn horizon(lasso: &Lasso, rho: &TemporalSentence) -> usize {
    horizon_for_depth(lasso, rho.temporal_depth())
}

pub fn horizon_for_depth(lasso: &Lasso, depth: usize) -> usize {
    lasso.len() + lasso.period() * (depth + 2)
}

/// A finite `N`-model, optionally remembering the lasso it unfolds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSurrogate {
    kripke: KripkeModel,
    provenance: Option<(usize, usize)>,
}

impl NSurrogate {
    /// A Kripke model without provenance; [`tau_beta`] rejects it.
    pub fn from_kripke(kripke: KripkeModel) -> Self {
        Self {
            kripke,
            provenance: None,
        }
    }

    /// Records that the first `len` worlds are the states of a lasso looping
    /// at `loop_index`.
    pub fn with_provenance(kripke: KripkeModel, len: usize, loop_index: usize) -> Result<Self> {
        if len == 0 || loop_index >= len || len > kripke.world_count() {
            return Err(contract(format!(
                "provenance ({len}, {loop_index}) does not fit a model with {} worlds",
                kripke.world_count()
            )));
        }
        Ok(Self {
            kripke,
            provenance: Some((len, loop_index)),
        })
    }

    pub fn kripke(&self) -> &KripkeModel {
        &self.kripke
    }

    pub fn provenance(&self) -> Option<(usize, usize)> {
        self.provenance
    }

    pub fn horizon(&self) -> usize {
        self.kripke.world_count()
    }
}

/// The surrogate with the horizon for `rho`.
pub fn lasso_to_nsurrogate(lasso: &Lasso, rho: &TemporalSentence) -> NSurrogate {
    lasso_to_nsurrogate_with_horizon(lasso, horizon(lasso, rho)).expect("the horizon covers the lasso")
}

/// Worlds `w0 … w(H−1)`, `Init` at 0, `Next` the successor, `After` the
/// strict order, `AfterStar` its reflexive closure.
pub fn lasso_to_nsurrogate_with_horizon(lasso: &Lasso, h: usize) -> Result<NSurrogate> {
    if h < lasso.len() {
        return Err(contract(format!(
            "horizon {h} is shorter than the lasso ({})",
            lasso.len()
        )));
    }
    let models = (0..h).map(|j| lasso.unfolded(j).clone()).collect();
    let nominals = BTreeMap::from([(INIT.to_string(), 0)]);
    let relations = BTreeMap::from([
        (NEXT.to_string(), (1..h).map(|b| (b - 1, b)).collect()),
        (
            AFTER.to_string(),
            (0..h).flat_map(|a| (a + 1..h).map(move |b| (a, b))).collect(),
        ),
        (
            AFTER_STAR.to_string(),
            (0..h).flat_map(|a| (a..h).map(move |b| (a, b))).collect(),
        ),
    ]);
    let kripke = KripkeModel::indexed(models, nominals, relations)?;
    NSurrogate::with_provenance(kripke, lasso.len(), lasso.loop_index())
}

/// `τβ`: the lasso a surrogate was unfolded from.
pub fn tau_beta(m: &NSurrogate) -> Result<Lasso> {
    let (n, k) = m
        .provenance
        .ok_or_else(|| Error::Unsupported("τβ needs a surrogate that remembers its lasso".into()))?;
    Lasso::new(m.kripke.models()[..n].to_vec(), k)
}

/// Both sides of the τ equivalence for one lasso and formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equivalence {
    pub ltl: bool,
    /// Hybrid value at world 0 of the surrogate with horizon `H`.
    pub hybrid: bool,
    /// Hybrid value at horizon `H + (n − k)`; computed only for formulas with `U`.
    pub hybrid_extended: Option<bool>,
}

impl Equivalence {
    pub fn stable(&self) -> bool {
        self.hybrid_extended.is_none_or(|h| h == self.hybrid)
    }

    pub fn agrees(&self) -> bool {
        self.ltl == self.hybrid
    }
}

fn hybrid_value(lasso: &Lasso, h: usize, translated: &HybridSentence) -> Result<bool> {
    let surrogate = lasso_to_nsurrogate_with_horizon(lasso, h)?;
    hy_eval_at(&surrogate.kripke, 0, translated, &BTreeMap::new())
}

/// Evaluates `ρ` on `lasso` and `τα(ρ)` on its surrogate at world 0.
pub fn check_equivalence(lasso: &Lasso, rho: &TemporalSentence) -> Result<Equivalence> {
    let translated = tau_alpha(rho);
    let h = horizon(lasso, rho);
    let hybrid_extended = if rho.contains_until() {
        Some(hybrid_value(lasso, h + lasso.period(), &translated)?)
    } else {
        None
    };
    Ok(Equivalence {
        ltl: ltl_satisfies(lasso, rho)?,
        hybrid: hybrid_value(lasso, h, &translated)?,
        hybrid_extended,
    })
}

/// The naturality square of τ for a base comorphism `c`:
/// `τα(L(c)α(ρ)) = H(c)α(τα(ρ))` on sentences and
/// `L(c)β(τβ(M′)) = τβ(H(c)β(M′))` on surrogates `M′`.
pub fn check_naturality(c: &Comorphism, cfg: &GenConfig, exec: Execution) -> Result<Vec<CheckReport>> {
    if c.source() != &LogicStack::base() || c.target() != &LogicStack::base() {
        return Err(contract(format!(
            "{} is not a comorphism between base logics",
            c.name()
        )));
    }
    let lc = lift_comorphism(LayerKind::Temporal, c).into_comorphism();
    let hc = lift_comorphism(LayerKind::Hybrid, c).into_comorphism();
    let stack = LogicStack::base().wrap(LayerKind::Temporal);

    let sentences = run_check(
        &format!("tau/naturality/{}/sentences", c.name()),
        cfg.seed,
        cfg.samples,
        exec,
        |rng| {
            let sig = gen_signature(&stack, cfg, rng);
            let rho = gen_temporal(&sig.inner(), cfg.max_formula_depth, true, rng);
            let sentence = Sentence::Temporal(rho.clone());
            let via_l = tau_alpha_sentence(&lc.alpha(&sig, &sentence)?)?;
            let via_h = hc.alpha(&n_signature(&sig)?, &Sentence::Hybrid(tau_alpha(&rho)))?;
            ensure(via_l == via_h, || {
                Counterexample::new(format!("τα·L(c)α gives {via_l} but H(c)α·τα gives {via_h}"))
                    .signature(&sig)
                    .formula(&sentence)
            })
        },
    );
    let models = run_check(
        &format!("tau/naturality/{}/models", c.name()),
        cfg.seed,
        cfg.samples,
        exec,
        |rng| {
            let sig = gen_signature(&stack, cfg, rng);
            let target = lc.phi_sig(&sig)?;
            let lasso = gen_lasso(&target.inner(), cfg, rng);
            let h = lasso.len() + lasso.period() * rng.gen_range(0..4);
            let surrogate = lasso_to_nsurrogate_with_horizon(&lasso, h)?;
            let via_l = lc.beta(&sig, &Model::Lasso(tau_beta(&surrogate)?))?;
            let reduced = match hc.beta(&n_signature(&sig)?, &Model::Kripke(surrogate.kripke.clone()))? {
                Model::Kripke(k) => k,
                _ => return Err(Counterexample::new("H(c)β did not return a Kripke model")),
            };
            let (n, k) = surrogate.provenance.expect("built from a lasso");
            let via_h = Model::Lasso(tau_beta(&NSurrogate::with_provenance(reduced, n, k)?)?);
            ensure(via_l == via_h, || {
                Counterexample::new("L(c)β·τβ and τβ·H(c)β disagree")
                    .signature(&target)
                    .model(&Model::Lasso(lasso.clone()))
            })
        },
    );
    Ok(vec![sentences, models])
}

fn equivalence_counterexample(lasso: &Lasso, rho: &TemporalSentence, eq: &Equivalence) -> Counterexample {
    let props: BTreeSet<Symbol> = lasso
        .states()
        .iter()
        .filter_map(|m| match m {
            Model::Valuation(v) => Some(v.true_atoms().iter().cloned()),
            _ => None,
        })
        .flatten()
        .collect();
    let mut ce = Counterexample::new(format!(
        "ltl {} / hybrid at H {} / hybrid at H+(n-k) {}",
        eq.ltl,
        eq.hybrid,
        eq.hybrid_extended.map_or("-".to_string(), |b| b.to_string())
    ))
    .formula(&Sentence::Temporal(rho.clone()))
    .model(&Model::Lasso(lasso.clone()));
    if lasso.states().iter().all(|m| matches!(m, Model::Valuation(_))) {
        ce = ce.signature(&Signature::propositional(props).wrap(LayerSig::Temporal));
    }
    ce
}

/// Sampled X-fragment agreement over lassos of generated signatures.
pub fn check_x_fragment(cfg: &GenConfig, exec: Execution) -> CheckReport {
    run_check("tau/x-fragment", cfg.seed, cfg.samples, exec, |rng| {
        let inner = gen_prop_signature(cfg, rng);
        let lasso = gen_lasso(&inner, cfg, rng);
        let rho = gen_temporal(&inner, cfg.max_formula_depth, false, rng);
        let eq = check_equivalence(&lasso, &rho)?;
        ensure(eq.agrees(), || equivalence_counterexample(&lasso, &rho, &eq))
    })
}

/// All lassos of length `1..=max_len` over valuations of `props`, with every
/// loop index.
pub fn all_lassos(props: &[Symbol], max_len: usize) -> Vec<Lasso> {
    let valuations: Vec<Model> = (0..1usize << props.len())
        .map(|bits| {
            Model::Valuation(crate::baselogic::Valuation::new(
                props
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, p)| p.clone()),
            ))
        })
        .collect();
    let mut out = Vec::new();
    let mut words: Vec<Vec<Model>> = vec![Vec::new()];
    for _ in 0..max_len {
        words = words
            .iter()
            .flat_map(|w| {
                valuations.iter().map(move |v| {
                    let mut w = w.clone();
                    w.push(v.clone());
                    w
                })
            })
            .collect();
        for w in &words {
            out.extend((0..w.len()).map(|k| Lasso::new(w.clone(), k).expect("k < n")));
        }
    }
    out
}

/// All formulas built from `{p}` atoms with `~`, `&` and `X`, of nesting
/// depth at most `depth`.
pub fn all_x_formulas(props: &[Symbol], depth: usize) -> Vec<TemporalSentence> {
    let atoms: Vec<TemporalSentence> = props
        .iter()
        .map(|p| TemporalSentence::base(crate::baselogic::Prop::atom(p.as_str())))
        .collect();
    let mut level = atoms.clone();
    for _ in 0..depth {
        let mut next = atoms.clone();
        next.extend(level.iter().map(|a| TemporalSentence::not(a.clone())));
        next.extend(level.iter().map(|a| TemporalSentence::next(a.clone())));
        for a in &level {
            next.extend(level.iter().map(|b| TemporalSentence::and(a.clone(), b.clone())));
        }
        level = next;
    }
    level
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustiveReport {
    pub lassos: usize,
    pub formulas: usize,
    pub checked: usize,
    pub disagreements: usize,
    pub errors: usize,
    pub examples: Vec<Counterexample>,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0 && self.errors == 0
    }
}

/// Every lasso of length `≤ max_len` over `props` against every X-fragment
/// formula of depth `≤ depth`.
pub fn exhaustive_x_fragment(props: &[Symbol], max_len: usize, depth: usize, exec: Execution) -> ExhaustiveReport {
    let lassos = all_lassos(props, max_len);
    let formulas: Vec<(TemporalSentence, HybridSentence, usize)> = all_x_formulas(props, depth)
        .into_iter()
        .map(|rho| {
            let translated = tau_alpha(&rho);
            let d = rho.temporal_depth();
            (rho, translated, d)
        })
        .collect();
    let empty = BTreeMap::new();
    let per_lasso = run_indexed(lassos.len(), exec, |i| {
        let lasso = &lassos[i];
        let surrogates: Vec<NSurrogate> = (0..=depth)
            .map(|d| lasso_to_nsurrogate_with_horizon(lasso, horizon_for_depth(lasso, d)).expect("valid horizon"))
            .collect();
        let (mut bad, mut errors, mut examples) = (0, 0, Vec::new());
        for (rho, translated, d) in &formulas {
            let ltl = ltl_satisfies(lasso, rho);
            let hybrid = hy_eval_at(&surrogates[*d].kripke, 0, translated, &empty);
            match (ltl, hybrid) {
                (Ok(ltl), Ok(hybrid)) if ltl == hybrid => {}
                (Ok(ltl), Ok(hybrid)) => {
                    bad += 1;
                    if examples.len() < KEPT_FAILURES {
                        let eq = Equivalence {
                            ltl,
                            hybrid,
                            hybrid_extended: None,
                        };
                        examples.push(equivalence_counterexample(lasso, rho, &eq));
                    }
                }
                _ => errors += 1,
            }
        }
        (bad, errors, examples)
    });
    let mut report = ExhaustiveReport {
        lassos: lassos.len(),
        formulas: formulas.len(),
        checked: lassos.len() * formulas.len(),
        disagreements: 0,
        errors: 0,
        examples: Vec::new(),
    };
    for (bad, errors, examples) in per_lasso {
        report.disagreements += bad;
        report.errors += errors;
        let room = KEPT_FAILURES - report.examples.len();
        report.examples.extend(examples.into_iter().take(room));
    }
    report
}

/// Draws a formula of depth `≤ depth` that contains `U`.
pub fn gen_until_formula(inner: &Signature, depth: usize, rng: &mut ChaCha8Rng) -> TemporalSentence {
    loop {
        let rho = gen_temporal(inner, depth.max(1), true, rng);
        if rho.contains_until() {
            return rho;
        }
    }
}

/// Horizon stability and LTL agreement on sampled formulas with `U`.
/// Reported, not asserted.
pub fn until_diagnostic(cfg: &GenConfig, exec: Execution) -> UntilDiagnostic {
    let outcomes = run_indexed(cfg.samples, exec, |i| {
        let mut rng = sample_rng(sample_seed(cfg.seed, "tau/until", i));
        let inner = gen_prop_signature(cfg, &mut rng);
        let lasso = gen_lasso(&inner, cfg, &mut rng);
        let rho = gen_until_formula(&inner, cfg.max_formula_depth, &mut rng);
        (check_equivalence(&lasso, &rho), lasso, rho)
    });
    let mut diag = UntilDiagnostic {
        samples: cfg.samples,
        ..UntilDiagnostic::default()
    };
    for (eq, lasso, rho) in outcomes {
        match eq {
            Ok(eq) => {
                if eq.stable() {
                    diag.stable += 1;
                    if eq.agrees() {
                        diag.agree_when_stable += 1;
                    }
                }
                if (!eq.stable() || !eq.agrees()) && diag.examples.len() < KEPT_FAILURES {
                    let mut ce = equivalence_counterexample(&lasso, &rho, &eq);
                    ce.detail = format!(
                        "{}: {} on {}",
                        ce.detail,
                        Sentence::Temporal(rho.clone()),
                        lasso_text(&lasso)
                    );
                    diag.examples.push(ce);
                }
            }
            Err(_) => diag.errors += 1,
        }
    }
    diag
}

fn lasso_text(lasso: &Lasso) -> String {
    let states: Vec<String> = lasso
        .states()
        .iter()
        .map(|m| match m {
            Model::Valuation(v) => format!("{{{}}}", v.true_atoms().iter().cloned().collect::<Vec<_>>().join(",")),
            _ => "…".to_string(),
        })
        .collect();
    format!("[{}] loop {}", states.join(" "), lasso.loop_index())
}

/// Satisfaction of `τα(ρ)` in a surrogate, checked against `N`.
pub fn surrogate_satisfies(sig: &Signature, m: &NSurrogate, rho: &TemporalSentence) -> Result<bool> {
    satisfies(
        &n_signature(sig)?,
        &Model::Kripke(m.kripke.clone()),
        &Sentence::Hybrid(tau_alpha(rho)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselogic::Valuation;
    use crate::syntax::{parse_sentence, print_sentence};

    fn t(text: &str) -> TemporalSentence {
        let stack: LogicStack = "L(PL)".parse().unwrap();
        match parse_sentence(&stack, text).unwrap() {
            Sentence::Temporal(t) => t,
            _ => unreachable!(),
        }
    }

    fn lasso(states: &[&[&str]], k: usize) -> Lasso {
        Lasso::new(
            states
                .iter()
                .map(|s| Valuation::new(s.iter().copied()).into())
                .collect(),
            k,
        )
        .unwrap()
    }

    fn printed(rho: &str) -> String {
        print_sentence(&Sentence::Hybrid(tau_alpha(&t(rho))))
    }

    #[test]
    fn translation_table() {
        assert_eq!(printed("X {p}"), "@ Init [Next] {p}");
        assert_eq!(printed("{p}"), "@ Init {p}");
        assert_eq!(
            printed("{p} U {q}"),
            "@ Init E x1 . <AfterStar> (nom x1 & {q}) & [AfterStar] (<After> nom x1 -> {p})"
        );
    }

    #[test]
    fn fresh_variables_in_preorder() {
        let s = printed("({a} U {b}) U ({c} U {d})");
        let (x1, x2, x3) = (
            s.find("E x1").unwrap(),
            s.find("E x2").unwrap(),
            s.find("E x3").unwrap(),
        );
        // x1 is the outer U; its right argument is printed before its left.
        assert!(x1 < x3 && x3 < x2, "{s}");
    }

    #[test]
    fn horizons() {
        assert_eq!(horizon(&lasso(&[&[]], 0), &t("{p}")), 3);
        let l = lasso(&[&["p"], &[]], 0);
        let s = lasso_to_nsurrogate(&l, &t("X {p}"));
        assert_eq!(s.horizon(), 8);
        let pattern: Vec<bool> = s.kripke().models().iter().map(|m| *m == l.states()[0]).collect();
        assert_eq!(pattern, [true, false, true, false, true, false, true, false]);
        assert_eq!(s.kripke().nominal(INIT), Some(0));
    }

    #[test]
    fn relations_are_strict_orders() {
        let s = lasso_to_nsurrogate_with_horizon(&lasso(&[&[]], 0), 3).unwrap();
        let k = s.kripke();
        assert_eq!(k.pairs(NEXT).unwrap(), [(0, 1), (1, 2)]);
        assert_eq!(k.pairs(AFTER).unwrap(), [(0, 1), (0, 2), (1, 2)]);
        assert_eq!(k.pairs(AFTER_STAR).unwrap().len(), 6);
        assert!(lasso_to_nsurrogate_with_horizon(&lasso(&[&[], &[]], 0), 1).is_err());
    }

    #[test]
    fn tau_beta_round_trip_and_provenance() {
        let l = lasso(&[&["p"], &["p"], &["q"]], 2);
        let s = lasso_to_nsurrogate(&l, &t("{p} U {q}"));
        assert_eq!(tau_beta(&s).unwrap(), l);
        let single = lasso(&[&[]], 0);
        assert_eq!(tau_beta(&lasso_to_nsurrogate(&single, &t("{p}"))).unwrap(), single);
        let bare = NSurrogate::from_kripke(s.kripke().clone());
        assert!(matches!(tau_beta(&bare), Err(Error::Unsupported(_))));
    }

    #[test]
    fn equivalence_examples() {
        let eq = check_equivalence(&lasso(&[&["p"], &[]], 1), &t("X {p}")).unwrap();
        assert_eq!((eq.ltl, eq.hybrid), (false, false));
        let eq = check_equivalence(&lasso(&[&["p"], &["p"], &["q"]], 2), &t("{p} U {q}")).unwrap();
        assert_eq!((eq.ltl, eq.hybrid, eq.hybrid_extended), (true, true, Some(true)));
        let eq = check_equivalence(&lasso(&[&["p"]], 0), &t("{p}")).unwrap();
        assert!(eq.ltl && eq.hybrid && eq.hybrid_extended.is_none());
    }

    #[test]
    fn last_world_boundary() {
        // [Next] is vacuous at the last surrogate world, and both horizons
        // end in the same phase of the loop.
        let eq = check_equivalence(&lasso(&[&[]], 0), &t("(~{p}) U (X {p})")).unwrap();
        assert!(!eq.ltl);
        assert!(eq.hybrid);
        assert!(eq.stable());
    }

    #[test]
    fn enumeration_sizes() {
        let props = vec!["p".to_string(), "q".to_string()];
        assert_eq!(all_lassos(&props, 4).len(), 4 + 2 * 16 + 3 * 64 + 4 * 256);
        assert_eq!(all_x_formulas(&props, 1).len(), 10);
        assert_eq!(all_x_formulas(&props, 2).len(), 122);
    }

    #[test]
    fn small_exhaustive_run() {
        let props = vec!["p".to_string(), "q".to_string()];
        let r = exhaustive_x_fragment(&props, 2, 2, Execution::Sequential);
        assert!(r.passed(), "{:?}", r.examples);
        assert_eq!(r.checked, (4 + 2 * 16) * 122);
    }

    #[test]
    fn naturality_for_a_renaming() {
        let sig = Signature::propositional(["p", "q"]);
        let bij = [("p", "q"), ("q", "p")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let c = crate::baselogic::renaming_equivalence(&sig, &bij).unwrap();
        let lc = lift_comorphism(LayerKind::Temporal, &c).into_comorphism();
        let tsig = sig.wrap(LayerSig::Temporal);
        let rho = Sentence::Temporal(t("X {p}"));
        let out = tau_alpha_sentence(&lc.alpha(&tsig, &rho).unwrap()).unwrap();
        assert_eq!(print_sentence(&out), "@ Init [Next] {q}");
        let cfg = GenConfig::default().with_samples(50);
        for r in check_naturality(&c, &cfg, Execution::Sequential).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(
            tau_phi(&SignatureMorphism::identity(&tsig)).unwrap().source(),
            &n_signature(&tsig).unwrap()
        );
    }

    #[test]
    fn surrogate_satisfaction_is_world_independent() {
        let tsig = Signature::propositional(["p"]).wrap(LayerSig::Temporal);
        let l = lasso(&[&[], &["p"]], 1);
        let rho = t("X {p}");
        assert!(surrogate_satisfies(&tsig, &lasso_to_nsurrogate(&l, &rho), &rho).unwrap());
    }
}

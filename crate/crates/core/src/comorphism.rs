//! Executable comorphisms `(Φ, α, β)` between logic stacks.
//!
//! Components are stored as shared closures so that comorphisms can be
//! composed and lifted without knowing how they were built. Optional
//! witnesses record conservativity (a section of β) and equivalence
//! (inverses of α and β); composition and lifting carry them along.
//!
//! Conventions, for a signature `Σ` of the source stack:
//! * `alpha(Σ, ρ)` maps `ρ ∈ Sen(Σ)` to `Sen'(Φ(Σ))`;
//! * `beta(Σ, M')` maps `M' ∈ Mod'(Φ(Σ))` back to `Mod(Σ)`;
//! * `beta_preimage(Σ, M)` picks `M'` with `beta(Σ, M') = M`;
//! * `alpha_inv(Σ, ρ')` maps `Sen'(Φ(Σ))` back to `Sen(Σ)`;
//! * `beta_inv(Σ, M)` maps `Mod(Σ)` to `Mod'(Φ(Σ))`.

use std::fmt;
use std::sync::Arc;

use crate::error::{contract, Result};
use crate::model::Model;
use crate::sentence::Sentence;
use crate::signature::{Signature, SignatureMorphism};
use crate::stack::LogicStack;

pub type SigMap = Arc<dyn Fn(&Signature) -> Result<Signature> + Send + Sync>;
pub type MorMap = Arc<dyn Fn(&SignatureMorphism) -> Result<SignatureMorphism> + Send + Sync>;
pub type SenMap = Arc<dyn Fn(&Signature, &Sentence) -> Result<Sentence> + Send + Sync>;
pub type ModMap = Arc<dyn Fn(&Signature, &Model) -> Result<Model> + Send + Sync>;

#[derive(Clone)]
pub struct Comorphism {
    name: String,
    source: LogicStack,
    target: LogicStack,
    phi_sig: SigMap,
    phi_mor: MorMap,
    alpha: SenMap,
    beta: ModMap,
    beta_preimage: Option<ModMap>,
    alpha_inv: Option<SenMap>,
    beta_inv: Option<ModMap>,
}

impl fmt::Debug for Comorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Comorphism")
            .field("name", &self.name)
            .field("source", &self.source.to_string())
            .field("target", &self.target.to_string())
            .field("beta_preimage", &self.beta_preimage.is_some())
            .field("inverses", &self.has_inverses())
            .finish()
    }
}

impl Comorphism {
    pub fn new(
        name: impl Into<String>,
        source: LogicStack,
        target: LogicStack,
        phi_sig: impl Fn(&Signature) -> Result<Signature> + Send + Sync + 'static,
        phi_mor: impl Fn(&SignatureMorphism) -> Result<SignatureMorphism> + Send + Sync + 'static,
        alpha: impl Fn(&Signature, &Sentence) -> Result<Sentence> + Send + Sync + 'static,
        beta: impl Fn(&Signature, &Model) -> Result<Model> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            source,
            target,
            phi_sig: Arc::new(phi_sig),
            phi_mor: Arc::new(phi_mor),
            alpha: Arc::new(alpha),
            beta: Arc::new(beta),
            beta_preimage: None,
            alpha_inv: None,
            beta_inv: None,
        }
    }

    pub fn with_beta_preimage(
        mut self,
        f: impl Fn(&Signature, &Model) -> Result<Model> + Send + Sync + 'static,
    ) -> Self {
        self.beta_preimage = Some(Arc::new(f));
        self
    }

    pub fn with_inverses(
        mut self,
        alpha_inv: impl Fn(&Signature, &Sentence) -> Result<Sentence> + Send + Sync + 'static,
        beta_inv: impl Fn(&Signature, &Model) -> Result<Model> + Send + Sync + 'static,
    ) -> Self {
        self.alpha_inv = Some(Arc::new(alpha_inv));
        self.beta_inv = Some(Arc::new(beta_inv));
        self
    }

    /// Replaces the model translation. Used to inject faults in law checks.
    pub fn with_beta(mut self, f: impl Fn(&Signature, &Model) -> Result<Model> + Send + Sync + 'static) -> Self {
        self.beta = Arc::new(f);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn from_parts(
        name: String,
        source: LogicStack,
        target: LogicStack,
        phi_sig: SigMap,
        phi_mor: MorMap,
        alpha: SenMap,
        beta: ModMap,
    ) -> Self {
        Self {
            name,
            source,
            target,
            phi_sig,
            phi_mor,
            alpha,
            beta,
            beta_preimage: None,
            alpha_inv: None,
            beta_inv: None,
        }
    }

    pub(crate) fn set_witnesses(
        &mut self,
        beta_preimage: Option<ModMap>,
        alpha_inv: Option<SenMap>,
        beta_inv: Option<ModMap>,
    ) {
        self.beta_preimage = beta_preimage;
        self.alpha_inv = alpha_inv;
        self.beta_inv = beta_inv;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &LogicStack {
        &self.source
    }

    pub fn target(&self) -> &LogicStack {
        &self.target
    }

    pub fn phi_sig(&self, sig: &Signature) -> Result<Signature> {
        (self.phi_sig)(sig)
    }

    pub fn phi_mor(&self, phi: &SignatureMorphism) -> Result<SignatureMorphism> {
        (self.phi_mor)(phi)
    }

    pub fn alpha(&self, sig: &Signature, rho: &Sentence) -> Result<Sentence> {
        (self.alpha)(sig, rho)
    }

    pub fn beta(&self, sig: &Signature, model: &Model) -> Result<Model> {
        (self.beta)(sig, model)
    }

    pub fn has_preimage(&self) -> bool {
        self.beta_preimage.is_some()
    }

    pub fn has_inverses(&self) -> bool {
        self.alpha_inv.is_some() && self.beta_inv.is_some()
    }

    pub fn beta_preimage(&self, sig: &Signature, model: &Model) -> Option<Result<Model>> {
        self.beta_preimage.as_ref().map(|f| f(sig, model))
    }

    pub fn alpha_inv(&self, sig: &Signature, rho: &Sentence) -> Option<Result<Sentence>> {
        self.alpha_inv.as_ref().map(|f| f(sig, rho))
    }

    pub fn beta_inv(&self, sig: &Signature, model: &Model) -> Option<Result<Model>> {
        self.beta_inv.as_ref().map(|f| f(sig, model))
    }

    pub(crate) fn parts(&self) -> (&SigMap, &MorMap, &SenMap, &ModMap) {
        (&self.phi_sig, &self.phi_mor, &self.alpha, &self.beta)
    }

    pub(crate) fn witnesses(&self) -> (Option<&ModMap>, Option<&SenMap>, Option<&ModMap>) {
        (
            self.beta_preimage.as_ref(),
            self.alpha_inv.as_ref(),
            self.beta_inv.as_ref(),
        )
    }
}

/// The identity comorphism on `stack`; every witness is an identity too.
pub fn identity_comorphism(stack: LogicStack) -> Comorphism {
    Comorphism::new(
        "identity",
        stack.clone(),
        stack,
        |sig| Ok(sig.clone()),
        |phi| Ok(phi.clone()),
        |_, rho| Ok(rho.clone()),
        |_, m| Ok(m.clone()),
    )
    .with_beta_preimage(|_, m| Ok(m.clone()))
    .with_inverses(|_, rho| Ok(rho.clone()), |_, m| Ok(m.clone()))
}

/// Composition `c2 · c1`: first `c1`, then `c2`.
///
/// Φ = Φ2·Φ1, α(Σ, ρ) = α2(Φ1(Σ), α1(Σ, ρ)), β(Σ, M) = β1(Σ, β2(Φ1(Σ), M)).
/// Witnesses are composed when both sides carry them.
pub fn compose_comorphisms(c2: &Comorphism, c1: &Comorphism) -> Result<Comorphism> {
    if c1.target != c2.source {
        return Err(contract(format!(
            "cannot compose {} after {}: {} is not {}",
            c2.name, c1.name, c1.target, c2.source
        )));
    }
    let (s1, m1, a1, b1) = c1.parts();
    let (s2, m2, a2, b2) = c2.parts();
    let phi_sig: SigMap = {
        let (s1, s2) = (s1.clone(), s2.clone());
        Arc::new(move |sig| s2(&s1(sig)?))
    };
    let phi_mor: MorMap = {
        let (m1, m2) = (m1.clone(), m2.clone());
        Arc::new(move |phi| m2(&m1(phi)?))
    };
    let alpha: SenMap = {
        let (s1, a1, a2) = (s1.clone(), a1.clone(), a2.clone());
        Arc::new(move |sig, rho| {
            let mid = s1(sig)?;
            a2(&mid, &a1(sig, rho)?)
        })
    };
    let beta: ModMap = {
        let (s1, b1, b2) = (s1.clone(), b1.clone(), b2.clone());
        Arc::new(move |sig, m| {
            let mid = s1(sig)?;
            b1(sig, &b2(&mid, m)?)
        })
    };
    let mut composed = Comorphism::from_parts(
        format!("{};{}", c1.name, c2.name),
        c1.source.clone(),
        c2.target.clone(),
        phi_sig,
        phi_mor,
        alpha,
        beta,
    );

    let (p1, ai1, bi1) = c1.witnesses();
    let (p2, ai2, bi2) = c2.witnesses();
    let preimage: Option<ModMap> = match (p1, p2) {
        (Some(p1), Some(p2)) => {
            let (s1, p1, p2) = (s1.clone(), p1.clone(), p2.clone());
            Some(Arc::new(move |sig, m| {
                let mid = s1(sig)?;
                p2(&mid, &p1(sig, m)?)
            }))
        }
        _ => None,
    };
    let alpha_inv: Option<SenMap> = match (ai1, ai2) {
        (Some(ai1), Some(ai2)) => {
            let (s1, ai1, ai2) = (s1.clone(), ai1.clone(), ai2.clone());
            Some(Arc::new(move |sig, rho| {
                let mid = s1(sig)?;
                ai1(sig, &ai2(&mid, rho)?)
            }))
        }
        _ => None,
    };
    let beta_inv: Option<ModMap> = match (bi1, bi2) {
        (Some(bi1), Some(bi2)) => {
            let (s1, bi1, bi2) = (s1.clone(), bi1.clone(), bi2.clone());
            Some(Arc::new(move |sig, m| {
                let mid = s1(sig)?;
                bi2(&mid, &bi1(sig, m)?)
            }))
        }
        _ => None,
    };
    composed.set_witnesses(preimage, alpha_inv, beta_inv);
    Ok(composed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselogic::{def_ext_comorphism, Prop, Valuation};

    fn sig() -> Signature {
        Signature::propositional(["p"])
    }

    #[test]
    fn identity_is_identity() {
        let id = identity_comorphism(LogicStack::base());
        let rho = Sentence::Prop(Prop::and(Prop::atom("p"), Prop::not(Prop::atom("p"))));
        let m = Model::Valuation(Valuation::new(["p"]));
        assert_eq!(id.phi_sig(&sig()).unwrap(), sig());
        assert_eq!(id.alpha(&sig(), &rho).unwrap(), rho);
        assert_eq!(id.beta(&sig(), &m).unwrap(), m);
        assert_eq!(id.beta_inv(&sig(), &m).unwrap().unwrap(), m);
    }

    #[test]
    fn double_definitional_extension() {
        let x = def_ext_comorphism(&sig(), "x").unwrap();
        let y = def_ext_comorphism(&sig(), "y").unwrap();
        let both = compose_comorphisms(&y, &x).unwrap();
        assert_eq!(both.name(), "def_ext(x);def_ext(y)");
        assert_eq!(both.phi_sig(&sig()).unwrap(), Signature::propositional(["p", "x", "y"]));
        let rho = Sentence::Prop(Prop::atom("p"));
        assert_eq!(both.alpha(&sig(), &rho).unwrap(), rho);
        let big = Model::Valuation(Valuation::new(["p", "x", "y"]));
        assert_eq!(
            both.beta(&sig(), &big).unwrap(),
            Model::Valuation(Valuation::new(["p"]))
        );
        let pre = both
            .beta_preimage(&sig(), &Model::Valuation(Valuation::new(["p"])))
            .unwrap()
            .unwrap();
        assert_eq!(pre, Model::Valuation(Valuation::new(["p"])));
    }

    #[test]
    fn stack_mismatch_is_rejected() {
        let base = identity_comorphism(LogicStack::base());
        let temporal = identity_comorphism(LogicStack::base().wrap(crate::LayerKind::Temporal));
        assert!(compose_comorphisms(&temporal, &base).is_err());
    }
}

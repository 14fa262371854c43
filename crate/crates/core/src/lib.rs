//! Stackable logic combinators.
//!
//! A propositional base logic can be wrapped any number of times by three
//! combinators: temporalisation (`L`), probabilisation (`P`) and
//! hybridisation (`H`). Every combination is again an institution, and
//! comorphisms between base logics lift through each combinator. This crate
//! makes those constructions executable:
//!
//! * [`institution`] holds the layered kernel: signatures, morphisms,
//!   sentences, models, sentence translation, reducts and satisfaction.
//! * [`temporal`], [`prob`] and [`hybrid`] implement the three combinators.
//! * [`comorphism`], [`baselogic`] and [`lifting`] provide the comorphism
//!   algebra, the witness comorphisms and the lifting construction.
//! * [`transform`] implements the translation from temporal to hybrid logic.
//! * [`props`] turns the laws into sampled, deterministic checks.
//! * [`syntax`] and [`modelfile`] are the concrete text and JSON formats.

#![allow(clippy::result_large_err)]

pub mod baselogic;
pub mod comorphism;
pub mod error;
pub mod hybrid;
pub mod institution;
pub mod lifting;
pub mod model;
pub mod modelfile;
pub mod par;
pub mod prob;
pub mod props;
pub mod sentence;
pub mod signature;
pub mod stack;
pub mod syntax;
pub mod temporal;
pub mod transform;

pub use comorphism::Comorphism;
pub use error::{Error, Result};
pub use model::Model;
pub use sentence::Sentence;
pub use signature::{HybridSig, LayerMap, LayerSig, Signature, SignatureMorphism, Symbol};
pub use stack::{LayerKind, LogicStack};

//! Finite, executable models of gs-monoidal and oplax cartesian categories,
//! with generic checkers that verify the defining laws instance by instance
//! and report counterexample witnesses.
//!
//! The crate provides:
//!
//! - a [`category::GsCategory`] interface and table-backed presentations
//!   loadable from JSON fixtures,
//! - concrete models: relations ([`finrel`]), preorders ([`preord`]), Kleisli
//!   categories of built-in commutative monads ([`monad`], [`kleisli`]), spans
//!   up to isomorphism ([`span`]), exact-rational stochastic matrices
//!   ([`stoch`]) and term graphs ([`termgraph`]),
//! - law checkers ([`checks`]) and functor checkers ([`functor`]),
//! - the completeness machinery into preorders and relations ([`preord`]),
//! - a deterministic suite runner ([`suite`]) used by the CLI.

pub mod category;
pub mod checks;
pub mod error;
pub mod finrel;
pub mod functor;
pub mod kleisli;
pub mod monad;
pub mod preord;
pub mod report;
pub mod span;
pub mod stoch;
pub mod suite;
pub mod table;
pub mod termgraph;

pub use category::GsCategory;
pub use error::{Error, Result};
pub use report::{CheckConfig, LawReport, Verdict, Witness};

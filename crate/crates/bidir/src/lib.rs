//! Bidirectional programs as monadic profunctors.
//!
//! A bidirectional transformation pairs a forward interpretation (parse,
//! get, generate) with a backward one (print, put, check) over a shared
//! structure. This crate builds such pairs compositionally: a bidirectional
//! program is a two-parameter type `P<U, V>` that is a monad in the value
//! type `V` and contravariant in the pre-view type `U` via [`partial`]
//! functions. Writing a program once in that vocabulary yields both
//! directions, and round-tripping properties of the whole follow from
//! properties of the parts.
//!
//! Three instantiations ship here:
//!
//! * [`biparser`] — parser/printer pairs over text,
//! * [`lens`] — get/put lenses with conflict-reporting predicates,
//! * [`bigen`] — random generator/checker pairs,
//!
//! together with the shared interface and executable law harness in
//! [`profmonad`] and the registered property suites in [`suites`].

// Effectful results like `Option<((V, S), SourcePredicate<S>)>` are the
// domain vocabulary here; aliasing them away would obscure the structure.
#![allow(clippy::type_complexity)]

pub mod bigen;
pub mod biparser;
pub mod lens;
pub mod partial;
pub mod profmonad;
pub mod suites;
pub mod tree;

pub use partial::PartialFn;
pub use profmonad::{ExtensionalEq, FailureLift, Profmonad, Purify};
pub use suites::{run_all, SuiteResult};
pub use tree::Tree;

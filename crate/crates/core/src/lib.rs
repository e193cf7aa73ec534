//! Higher extensions, n-cubes and truncated simplicial resolutions over
//! finite sets and finite algebras.

pub mod audit;
pub mod caps;
pub mod catalog;
pub mod cube;
pub mod e5plus;
pub mod error;
pub mod extension;
pub mod format;
pub mod generate;
pub mod limit;
pub mod morphism;
pub mod object;
pub mod simplicial;
pub mod subgroup;
pub mod theorems;

pub use caps::Caps;
pub use error::{Error, Result};
pub use limit::{compute_kernel, compute_kernel_pair, compute_limit, compute_pullback, Cone, FinDiagram};
pub use morphism::{compose, enumerate_morphisms, FinMorphism};
pub use object::{FinObject, Obj, OpSpec, Signature};
pub use audit::{audit_axioms, AuditReport, Axiom, AxiomStatus};
pub use extension::{is_double_extension, lift_class, Base, ClassedCategory, ExtensionClass, Lifted, Square, SquareArrow};
pub use cube::{is_extension_inductive, is_extension_limitwise, sublimit_comparison, ArrowView, Cube};
pub use simplicial::{Flavor, TruncatedSimplicial};
pub use theorems::{verify, TheoremReport, Verdict, THEOREM_IDS};

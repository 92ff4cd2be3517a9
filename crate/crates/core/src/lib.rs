//! Maximal isotropic subgroups of finite symplectic modules `K(d1,...,dg)`:
//! exact enumeration, closed-form counts, and the curve counts on polarized
//! abelian varieties derived from them.

pub mod arith;
pub mod closed_forms;
pub mod count;
pub mod curves;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod module;
pub mod ptype;
pub mod quotient;
pub mod subgroup;
pub mod types;

pub use count::{nu, CountMethod, CountValue, CountWarning, Strategy};
pub use curves::{CurveClassProblem, CurveClassReport, Interpretation, Rational};
pub use enumeration::{EnumerationBudget, EnumerationStats, TypeCensus};
pub use error::{Error, Result};
pub use module::{ModuleVector, PairingValue, PrimaryComponent, SymplecticModule};
pub use ptype::PolarizationType;
pub use quotient::SymplecticQuotient;
pub use subgroup::Subgroup;
pub use types::{TypeKind, TypeLabel};

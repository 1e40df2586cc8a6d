//! Declarative catalog of congruence subgroups, dimension formulas, named
//! forms, identities and graded-ring presentations.
//!
//! The built-in data lives in `data/catalog.toml`; [`Catalog::load`] reads an
//! alternative file with the same schema. Forms are written as prefix
//! expressions ([`expr`]), relations as infix polynomials in generator names
//! ([`infix`], [`poly`]).

mod catalog;
pub mod dimformula;
mod error;
pub mod eval;
pub mod expr;
pub mod group;
pub mod infix;
pub mod poly;

pub use catalog::{
    Catalog, Check, Claim, Decomposition, DimRow, Domain, FormDef, HalfRule, Identity, Presentation, Relation,
};
pub use error::{CatalogError, Result};
pub use eval::Evaluator;
pub use group::GroupSpec;
pub use poly::GenPoly;

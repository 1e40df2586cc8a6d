//! Exact arithmetic layer for graded rings of modular forms.
//!
//! Everything here is exact: rationals are `BigRational`, algebraic constants
//! live in a cyclotomic field `Q(zeta_L)` represented in its power basis, and
//! q-expansions are dense truncated series over such a field.
//!
//! - [`arith`]: rationals, cyclotomic field contexts and elements
//! - [`qseries`]: truncated q-expansions and the `V_h` / lowered operators
//! - [`characters`]: unit groups, Dirichlet characters, twisted divisor sums
//! - [`constructors`]: Bernoulli numbers, Eisenstein and theta series
//! - [`hilbert`]: Hilbert series of weighted graded polynomial rings
//! - [`linalg`]: exact echelon forms, ranks and nullspaces over `Q(zeta_L)`

pub mod arith;
pub mod characters;
pub mod constructors;
mod error;
pub mod hilbert;
pub mod linalg;
pub mod qseries;

pub use arith::{CycloNum, FieldCtx, Rational, RootOfUnity};
pub use characters::{DirichletCharacter, UnitGroup};
pub use error::{Error, Result};
pub use hilbert::HilbertSeries;
pub use qseries::{HalfWeight, QSeries, VanishingOrder};

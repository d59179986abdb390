//! Exact arithmetic on short Weierstrass curves `y^2 = x^3 + a x + b` over
//! the rationals and prime fields, with closed-form coordinates for sums of
//! three and more points.
//!
//! * [`field`]: `Q` and `F_p` values behind one runtime descriptor
//! * [`curve`]: points and the chord-tangent addition law
//! * [`sum3`]: the symmetric three-point sum and its slope identity
//! * [`multisum`]: the `n`-point determinant and its cofactor formulas
//! * [`identity`]: symbolic identity checking with a randomized fallback
//! * [`suites`]: seeded randomized property runs
//! * [`cli`]: the `ecsum` command line

pub mod cli;
pub mod curve;
pub mod det;
pub mod error;
pub mod field;
pub mod identity;
pub mod multisum;
pub mod suites;
pub mod sum3;
pub mod wire;

pub use curve::{AddCase, Curve, Point};
pub use error::{Error, Hypothesis, Result};
pub use field::{FieldDescriptor, FieldValue, PrimeModulus};
pub use multisum::{iterated_sum, multisum};
pub use sum3::sum3_symmetric;

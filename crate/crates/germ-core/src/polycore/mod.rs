//! Exact polynomial substrate: rationals, simple algebraic extensions,
//! sparse multivariate polynomials, univariate machinery (resultants,
//! factorization) and truncated series.

pub mod mpoly;
pub mod numfield;
pub mod ring;
pub mod series;
pub mod upoly;
pub mod zfactor;

pub use mpoly::{cmp_expo, gcd_mv, parse_poly, resultant_mv, varset, Expo, MPoly, MPolyRing, MonomialOrder};
pub use numfield::{adjoin_root, factor_over, roots_in_field, FieldEmbedding, NfElem, NumberField};
pub use ring::{fmt_rat, rat, rat_frac, Field, Int, Rat, Rationals, Ring};
pub use series::{substitute_series, substitute_series_at, Prec, TruncSeries};
pub use upoly::{resultant, UPoly, UPolyRing};

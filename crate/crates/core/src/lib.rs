//! Exact combinatorics on binary words for the lexicographic world: mechanical
//! and characteristic sequences, central words and iterated palindromic
//! closure, the map φ, and the minimal right endpoint F(x) of intervals
//! holding every fractional part {ξ2ⁿ}.
//!
//! Every quantity is exact: sequences are eventually periodic words and
//! numbers are arbitrary-precision rationals. Brute-force oracles in
//! [`oracle`] recompute the main answers by enumeration.

pub mod central;
pub mod error;
pub mod lexmap;
pub mod mechanical;
pub mod oracle;
pub mod seq;
pub mod word;

pub use num_rational::BigRational as Rational;

pub use central::{
    central_from_slope, directive_of_central, extremal_rotations, is_balanced, is_central, pal, pal_extension,
    palindromic_closure, standard_factorization, CentralCertificate, PalBuilder,
};
pub use error::{Error, Result};
pub use lexmap::{
    classify, minimal_right_endpoint, phi, phi_prefix, phi_sturmian, phi_zero_u, sigma_member, verify_phi,
    Classification, FCase, FResult, PhiCase, PhiResult, PrefixDecision, SturmianPhi, VerifyReport,
};
pub use mechanical::{
    cf_of_rational, characteristic_pair, characteristic_periodic_via_pal, characteristic_sturmian_prefix,
    directive_from_cf, mech_lower, mech_periodic, mech_upper, CharVariant, ContinuedFraction, DirectiveSpec,
};
pub use seq::{
    canonicalize, distinct_shifts, expansion, lex_compare, parse_rational, shift, value, DyadicMode,
    EventuallyPeriodicSeq,
};
pub use word::{minimal_period, BinaryWord, Bit};

//! Alpha invariant and Â-genus of smooth complex projective complete
//! intersections, computed exactly by several independent formulas, together
//! with their characteristic-class data and an exhaustive scanner checking
//! that alpha is determined by dimension, total degree and Pontryagin classes.

pub mod ahat;
pub mod alpha;
pub mod cli;
pub mod gf2;
pub mod numtheory;
pub mod series;
pub mod sullivan;
pub mod topology;

pub use ahat::{ahat, ahat_hilbert, ahat_sign_sum, AhatError, AhatValue};
pub use alpha::{
    alpha, alpha_abstract, alpha_abstract_checked, alpha_fr, alpha_hilbert, alpha_n1_closed, alpha_partition_sum,
    alpha_sign_sum, fr_polynomial, AlphaError, AlphaReport, AlphaValue, Backend, FrPolynomial,
};
pub use numtheory::{binomial, binomial_mod2, nu2_factorial, nu_p, Valuation, Z2};
pub use series::{hilbert_series, TruncatedIntSeries};
pub use sullivan::{
    divisibility_guarantee, predicted_alpha_difference, scan, ScanConfig, ScanError, ScanReport, SullivanError,
};
pub use topology::{CompleteIntersection, InvariantProfile, SpinStatus};

//! Musielak–Orlicz coefficient norms for almost-periodic trigonometric
//! polynomials, generalized moduli of smoothness, and numerical checks of
//! direct (Jackson-type) and inverse approximation estimates.
//!
//! ```
//! use apjackson::{orlicz_norm, ApPolynomial, OrliczFamily, Spectrum};
//! use num_complex::Complex64;
//!
//! let f = ApPolynomial::from_pairs(Spectrum::integers(2), [(1, Complex64::new(3.0, 0.0)), (-2, Complex64::new(0.0, 4.0))]).unwrap();
//! let l2 = orlicz_norm(&f, &OrliczFamily::stepanets(2.0).unwrap()).unwrap();
//! assert!((l2 - 5.0).abs() < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approximation;
pub mod error;
pub mod inverse;
pub mod jackson;
pub mod optimize;
pub mod orlicz;
pub mod quadrature;
pub mod report;
pub mod signal;
pub mod simplex;
pub mod smoothness;

pub use approximation::{best_approximation, best_approximations, extremal_function, partial_sum, planted_decay, sharpness_probe, BestApproxProfile};
pub use error::{Error, Result};
pub use inverse::{
    bari_condition_check, class_membership_report, inverse_bound_alpha, inverse_bound_corollary, inverse_bound_general,
    sharpness_ratio_scan, verify_inverse, InverseCertificate, InverseForm, Majorant,
};
pub use jackson::{
    jackson_integral, km_constant, sharp_constant_lp, verify_corollary2, verify_corollary3, verify_corollary45, verify_theorem1,
    JacksonCertificate, WeightFunction,
};
pub use orlicz::{dual_sup_oracle, orlicz_norm, sequence_norm, OrliczFamily, OrliczFunction};
pub use report::{run_suite, RunConfig, VerificationReport};
pub use signal::{parse_signal, ApPolynomial, Spectrum, ThetaCollection};
pub use smoothness::{modulus, ModulusEstimate, ModulusRequest, PhiFunction};

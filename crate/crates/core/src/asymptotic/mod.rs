//! Asymptotic expansions: large z with p, q bounded, and large r = p + q
//! through the saddle point of the contour integral, with or without the
//! error-function term that absorbs the pole.

pub mod coeffs;
pub mod expansions;
pub mod frame;
pub mod zeta;

pub use coeffs::{closed_form_f, closed_form_t, expansion_coefficients, f_coeffs, g_coeffs, invert_phi_series, ExpansionCoefficients, DEFAULT_TAU};
pub use expansions::{eval_erfc_uniform, eval_large_z, eval_saddle, LargeZResult, MAX_K_TERMS, SADDLE_DELTA};
pub use frame::{build_frame, SaddleFrame};
pub use zeta::{x_of_zeta, x_zeta_coeffs, y_of_zeta, y_zeta_coeffs, ZetaSeriesValue, MAX_ZETA_ORDER};

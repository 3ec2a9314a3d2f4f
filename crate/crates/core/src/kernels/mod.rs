//! Scalar special functions the distribution evaluators are built on.

mod erf;
mod gamma;
mod incbeta;
mod kummer;

pub use erf::{erf, erfc, erfc_parts, erfcx, inv_erfc, ln_erfc};
pub use gamma::{log_beta, log_gamma};
pub use incbeta::{central_beta, central_beta_cdf, ln_central_beta, CentralBetaArgs};
pub use kummer::{kummer_m, kummer_ratio_shift11, ln_kummer_m, KummerArgs};

pub(crate) use gamma::{lgamma, stirling_correction};
pub(crate) use incbeta::{ln_beta_prefix, rlog1};
pub(crate) use kummer::{ln_m_positive, m_signed_series};

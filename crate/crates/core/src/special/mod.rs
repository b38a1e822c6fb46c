//! Special functions: entire series, Bessel-type kernels, branch-cut
//! logarithms and powers, gamma and digamma.

pub mod asymptotic;
pub mod branch;
pub mod dd;
pub mod elementary;
pub mod gamma;
pub mod hankel;
pub mod series;

pub use branch::{cut_log, cut_power, BranchCut};
pub use elementary::{sinc, sinc_c, sinhc, sinhc_c, tanhc_c};
pub use gamma::{digamma, gamma_fn, gamma_real, EULER_GAMMA};
pub use hankel::{bessel_jy, bessel_k, hankel1, hankel1_with_derivative, BesselJy, ValueDeriv};
pub use series::{
    chi, chi_dkappa, chi_pair, log_kernel, script_y, LogKernel, SeriesConfig, SeriesPair, KAPPA_BLEND,
};

//! Dirichlet characters, L-functions, their zeros, and the arithmetic sums
//! that feed the inequality checks.

pub mod cache;
pub mod character;
pub mod lfunc;
pub mod special;
pub mod sums;
pub mod zeros;

pub use cache::{CacheStatus, ZeroBank, ZeroCache, CACHE_ENV};
pub use character::{
    enumerate_characters, primitive_characters, DirichletCharacter, Parity, UnitGroup,
};
pub use lfunc::{
    completed_l, completed_l_direct, gamma_factor, gauss_sum, l_eval, l_eval_via_primitive,
    root_number, trivial_zeros, CompletedL,
};
pub use special::{
    digamma, digamma_real_part, hurwitz_zeta, hurwitz_zeta_bounded, ln_gamma, EULER_GAMMA,
};
pub use sums::{
    log_deriv_analytic, log_deriv_series, smoothed_harmonic_sum, trivial_zero_inverse_square_sum,
    trivial_zero_power_sum, von_mangoldt_sum, SeriesValue,
};
pub use zeros::{
    count_zeros_circle, count_zeros_rectangle, count_zeros_rectangle_detailed, scan_primitive,
    scan_zeros, RectangleCount, ZeroRecord, ZeroSet,
};

//! Coefficients of the asymptotic expansions of the Barnes G-function.
//!
//! The crate is organised bottom-up:
//!
//! * [`bigmath`] is the exact kernel: Bernoulli numbers, Stirling numbers of
//!   both kinds, factorials and the even zeta values `ζ(2k) = q·π^{2k}`.
//! * [`series`] is dense truncated power-series algebra over the rationals,
//!   together with the partition enumerator used by the partition-sum
//!   coefficient formulas.
//! * [`coeffs`] computes every coefficient family exactly: `c_n`, `b_n(r)`,
//!   `b_n(ℓ,r)`, `a_n(ℓ,r)`, `b_n(θ,κ,r)` and the Stirling coefficients `γ_n`.
//! * [`asym`] holds the approximations of the higher-order `b_n(r)`: the
//!   truncated Bernoulli tail, the full asymptotic series with `I_{k,n}(r)`
//!   and the leading-order predictor, plus relative-error reports.
//! * [`barnes`] evaluates `log Γ`, `log G(z+1)`, Euler's constant and the
//!   Glaisher–Kinkelin constant, and provides two independent oracles.
//! * [`decimal`] renders exact and multiprecision values as scientific
//!   decimal strings with round-half-even.
//!
//! All exact values are [`rug::Rational`] / [`rug::Integer`]; all approximate
//! values are [`rug::Float`] carrying an explicit precision in bits.

pub mod asym;
pub mod barnes;
pub mod bigmath;
pub mod coeffs;
pub mod decimal;
mod error;
pub mod series;

pub use error::{Error, Result};

pub use rug::{Float, Integer, Rational};

/// Default working precision in bits (about 115 decimal digits).
pub const DEFAULT_PRECISION: u32 = 384;

// The guide under `book/` is compiled as doc-tests so its snippets cannot
// drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-kernel.md")]
    mod exact_kernel {}
    #[doc = include_str!("../../../book/src/power-series.md")]
    mod power_series {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    mod coefficients {}
    #[doc = include_str!("../../../book/src/approximations.md")]
    mod approximations {}
    #[doc = include_str!("../../../book/src/barnes-g.md")]
    mod barnes_g {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}

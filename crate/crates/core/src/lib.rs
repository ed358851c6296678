//! Clenshaw-Curtis and Gauss-Legendre quadrature on `[-1, 1]` together with
//! the Chebyshev machinery used to study their convergence rates for
//! functions of limited regularity.
//!
//! Modules:
//! * [`chebyshev`]: `T_m`, exact integrals, DCT-based Chebyshev coefficients, decay fits.
//! * [`quadrature`]: rule construction (CC weights, Newton-polished Legendre zeros).
//! * [`aliasing`]: closed-form and model errors of both rules on `T_m`.
//! * [`testfns`]: the `|x - xi|^s` family, coefficient asymptotics and explicit bounds.
//! * [`rates`]: error sweeps, envelope rate fits and the Gauss/CC ratio report.
//! * [`bestapprox`]: minimax approximation by multi-point Remez exchange.
//! * [`cli`]: the experiment drivers behind the `quadrate` binary.

pub mod aliasing;
pub mod bestapprox;
pub mod chebyshev;
pub mod cli;
pub mod csv;
pub mod dct;
pub mod error;
pub mod fit;
pub mod quadrature;
pub mod rates;
pub mod testfns;
pub mod tolerances;

pub use chebyshev::ChebSeries;
pub use error::{Error, Result};
pub use quadrature::{Family, QuadratureRule};
pub use testfns::TestFunction;

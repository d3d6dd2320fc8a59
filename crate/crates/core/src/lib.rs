//! Exact expectations of iterated Stratonovich integrals driven by time and
//! independent Wiener processes.
//!
//! A multi-index ([`Word`]) selects the driver used at each nesting level of
//! the iterated integral; letter `0` is time (`dW⁰ = dt`). The crate offers
//! three independent routes to `E J_α(t)`:
//!
//! * [`expect::expect_strat`], a closed form computed by a single
//!   right-to-left scan of the word;
//! * [`convert::strat_to_ito`] followed by [`convert::expect_combination`],
//!   which expands `J_α` into Itô iterated integrals and takes expectations
//!   term by term;
//! * [`montecarlo::estimate_expectation`], a Monte Carlo estimate along
//!   simulated Wiener paths.
//!
//! ```
//! use strato::{expect::expect_strat, Word};
//!
//! let w: Word = "0,1,1,0,0".parse().unwrap();
//! assert_eq!(expect_strat(&w).monomial.to_string(), "1/48 * t^4");
//! ```

pub mod convert;
pub mod error;
pub mod exact;
pub mod expect;
pub mod montecarlo;
pub mod words;

pub use convert::ItoCombination;
pub use error::{Error, Result};
pub use exact::{Monomial, Rational};
pub use expect::ExpectResult;
pub use montecarlo::{SimConfig, SimResult};
pub use words::Word;

/// Resource caps shared by the bounded operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest word produced by enumeration.
    pub max_enum_len: usize,
    /// Largest number of words an enumeration may return.
    pub max_enum_words: u64,
    /// Longest word accepted by the Itô decomposition.
    pub max_decompose_len: usize,
    /// Largest number of terms in any intermediate Itô combination.
    pub max_terms: usize,
    /// Upper bound on `paths * steps * max(|word|, 1)` for one simulation.
    pub sim_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum_len: 20,
            max_enum_words: 1 << 22,
            max_decompose_len: 16,
            max_terms: 1 << 20,
            sim_budget: 1 << 34,
        }
    }
}

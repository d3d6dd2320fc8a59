//! Closed-form `E J_α(t)` for time and independent Wiener drivers.
//!
//! `E J_α(t) = 2^{-k} t^q / q!` when `α` is a concatenation of `0` blocks and
//! `m m` pair blocks, where `k` is the number of pairs and `q = k + #zeros`;
//! otherwise the expectation vanishes.

use crate::error::{Error, Result};
use crate::exact::{Monomial, Rational};
use crate::words::{enumerate_nonzero_words_with, Word};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectResult {
    /// `p_α t^{q_α} / q_α!` with everything folded into the coefficient.
    pub monomial: Monomial,
    /// Number of pair blocks; `p_α = 2^{-halvings}`.
    pub halvings: usize,
    /// Power of `t`.
    pub q: usize,
    pub nonzero: bool,
}

impl ExpectResult {
    fn zero() -> Self {
        ExpectResult {
            monomial: Monomial::zero(),
            halvings: 0,
            q: 0,
            nonzero: false,
        }
    }

    /// `p_α`, or zero when the expectation vanishes.
    pub fn p(&self) -> Rational {
        if self.nonzero {
            Rational::half_pow(self.halvings)
        } else {
            Rational::zero()
        }
    }
}

struct Scan {
    result: ExpectResult,
    #[cfg_attr(not(test), allow(dead_code))]
    consumed: usize,
}

// One pass from the right: a 0 is one block, an equal adjacent Wiener pair
// is another; anything else makes the expectation vanish.
fn scan(alpha: &Word) -> Scan {
    let a = alpha.letters();
    let mut i = a.len();
    let (mut halvings, mut q, mut consumed) = (0usize, 0usize, 0usize);
    while i > 0 {
        consumed += 1;
        if a[i - 1] == 0 {
            q += 1;
            i -= 1;
        } else if i > 1 && a[i - 1] == a[i - 2] {
            halvings += 1;
            q += 1;
            i -= 2;
        } else {
            return Scan {
                result: ExpectResult::zero(),
                consumed,
            };
        }
    }
    let monomial = Monomial::time_power(q).scale(&Rational::half_pow(halvings));
    Scan {
        result: ExpectResult {
            monomial,
            halvings,
            q,
            nonzero: true,
        },
        consumed,
    }
}

/// `E J_α(t)` as an exact monomial in `t`, in at most `|α|` steps.
pub fn expect_strat(alpha: &Word) -> ExpectResult {
    scan(alpha).result
}

/// `E J_α(t)` at a fixed `t >= 0`.
pub fn expect_strat_at(alpha: &Word, t: &Rational) -> Result<Rational> {
    if t.is_negative() {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    Ok(expect_strat(alpha).monomial.eval(t))
}

/// Every word with nonzero expectation up to `max_len`, paired with it.
pub fn expectation_table(max_len: usize, num_wiener: u64) -> Result<Vec<(Word, ExpectResult)>> {
    expectation_table_with(max_len, num_wiener, &Limits::default())
}

pub fn expectation_table_with(
    max_len: usize,
    num_wiener: u64,
    limits: &Limits,
) -> Result<Vec<(Word, ExpectResult)>> {
    Ok(enumerate_nonzero_words_with(max_len, num_wiener, limits)?
        .into_iter()
        .map(|w| {
            let e = expect_strat(&w);
            (w, e)
        })
        .collect())
}

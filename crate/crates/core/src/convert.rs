//! Expansion of Stratonovich iterated integrals in the Itô basis.
//!
//! Uses the relation
//!
//! ```text
//! J_α = ∫ J_{α−} dW^{α_ℓ} + ½ χ(α_{ℓ−1} = α_ℓ ≠ 0) ∫ J_{α−−} ds
//! ```
//!
//! Integrating an Itô combination against `dW^m` appends `m` to every word,
//! so each prefix of `α` is expanded once, from the shortest up.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Monomial, Rational};
use crate::words::{Driver, Word};
use crate::Limits;

/// A finite linear combination `Σ c_β I_β` of Itô iterated integrals.
///
/// Zero coefficients are never stored. Iteration order is by word length,
/// then lexicographic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ItoCombination {
    terms: BTreeMap<Word, Rational>,
}

impl ItoCombination {
    pub fn new() -> Self {
        Self::default()
    }

    /// `1 · I_∅`, i.e. the constant 1.
    pub fn unit() -> Self {
        let mut c = Self::new();
        c.add_term(Word::empty(), Rational::one());
        c
    }

    /// Builds a combination from raw terms, merging duplicates and dropping
    /// zeros. No structural check is made.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut c = Self::new();
        for (w, q) in terms {
            c.add_term(w, q);
        }
        c
    }

    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&word) {
            Some(prev) => prev + coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(word, sum);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Option<&Rational> {
        self.terms.get(word)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    /// `∫ (Σ c_β I_β) dW^m = Σ c_β I_{β m}`, scaled by `factor`.
    fn integrate_into(&self, letter: Driver, factor: &Rational, out: &mut ItoCombination) {
        for (w, c) in &self.terms {
            out.add_term(w.with_letter(letter), c * factor);
        }
    }

    /// Terms whose word is all time letters.
    pub fn all_zero_terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter().filter(|(w, _)| w.is_all_zero())
    }

    /// Checks that at most one key consists solely of time letters.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.all_zero_terms().count();
        if n > 1 {
            return Err(Error::Invariant(format!(
                "{n} all-zero words in one Ito decomposition"
            )));
        }
        Ok(())
    }
}

/// `I[1,1] + 1/2 I[0]`: longest words first, unit coefficients omitted.
impl fmt::Display for ItoCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.letters().cmp(b.letters()))
        });
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let magnitude = if c.is_negative() {
                -(*c).clone()
            } else {
                (*c).clone()
            };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if magnitude != Rational::one() {
                write!(f, "{magnitude} ")?;
            }
            write!(f, "I[{w}]")?;
        }
        Ok(())
    }
}

/// Expands `J_α` in the Itô basis with the default caps.
pub fn strat_to_ito(alpha: &Word) -> Result<ItoCombination> {
    strat_to_ito_with(alpha, &Limits::default())
}

pub fn strat_to_ito_with(alpha: &Word, limits: &Limits) -> Result<ItoCombination> {
    if alpha.len() > limits.max_decompose_len {
        return Err(Error::DecompositionCap(format!(
            "word length {} exceeds cap {}",
            alpha.len(),
            limits.max_decompose_len
        )));
    }
    let letters = alpha.letters();
    let one = Rational::one();
    let half = Rational::half_pow(1);

    // Expansions of the prefixes of length k−2 and k−1.
    let mut before_prev = ItoCombination::new();
    let mut prev = ItoCombination::unit();
    for k in 0..letters.len() {
        let m = letters[k];
        let mut next = ItoCombination::new();
        prev.integrate_into(m, &one, &mut next);
        if m != 0 && k >= 1 && letters[k - 1] == m {
            before_prev.integrate_into(0, &half, &mut next);
        }
        if next.len() > limits.max_terms {
            return Err(Error::DecompositionCap(format!(
                "{} terms exceed cap {}",
                next.len(),
                limits.max_terms
            )));
        }
        before_prev = std::mem::replace(&mut prev, next);
    }
    prev.check_structure()?;
    Ok(prev)
}

/// The coefficient `p` and length `q` of the unique all-zero term, if any.
pub fn combination_p_q(c: &ItoCombination) -> Result<Option<(Rational, usize)>> {
    c.check_structure()?;
    Ok(c.all_zero_terms().next().map(|(w, p)| (p.clone(), w.len())))
}

/// `E I_β(t)`: `t^ℓ/ℓ!` when `β` is all time letters, otherwise 0.
pub fn expect_ito(beta: &Word) -> Monomial {
    if beta.is_all_zero() {
        Monomial::time_power(beta.len())
    } else {
        Monomial::zero()
    }
}

/// Term-by-term expectation `Σ c_β E I_β`.
///
/// Fails if more than one term survives with different powers of `t`,
/// which cannot happen for the output of [`strat_to_ito`].
pub fn expect_combination(c: &ItoCombination) -> Result<Monomial> {
    c.iter().try_fold(Monomial::zero(), |acc, (w, coeff)| {
        acc.checked_add(&expect_ito(w).scale(coeff)).ok_or_else(|| {
            Error::Invariant("expectation of combination is not a single monomial".into())
        })
    })
}

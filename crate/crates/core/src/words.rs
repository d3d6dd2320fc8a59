//! Multi-indices over drivers and their combinatorics.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::Limits;

/// Index of an integration driver. `0` is time, `m >= 1` is the m-th Wiener
/// process.
pub type Driver = u64;

/// A multi-index `α = (α₁, …, α_ℓ)`.
///
/// Ordered by length first, then lexicographically, which is the canonical
/// order used for enumerations and rendered combinations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Driver>);

impl Word {
    pub fn new(letters: Vec<Driver>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The word `0ⁿ`.
    pub fn zeros(n: usize) -> Self {
        Word(vec![0; n])
    }

    pub fn letters(&self) -> &[Driver] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Driver> {
        self.0.last().copied()
    }

    /// `α−`: the word without its last letter. The empty word maps to itself.
    pub fn without_last(&self) -> Word {
        let end = self.0.len().saturating_sub(1);
        Word(self.0[..end].to_vec())
    }

    /// `α−−`: the word without its last two letters.
    pub fn without_last_two(&self) -> Word {
        let end = self.0.len().saturating_sub(2);
        Word(self.0[..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn with_letter(&self, letter: Driver) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.extend_from_slice(&self.0);
        letters.push(letter);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of time letters, `#{αᵢ = 0}`.
    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&a| a == 0).count()
    }

    /// Number of Wiener letters, `#{αᵢ ≠ 0}`.
    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&a| a != 0).count()
    }

    /// True when every letter is the time driver (including the empty word).
    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// True iff the word splits into blocks that are each a single `0` or a
    /// pair `m m` of equal Wiener letters.
    ///
    /// Scans from the right: a Wiener letter can only ever be consumed
    /// together with its left neighbour, so the greedy scan is exact.
    pub fn is_zero_pair_word(&self) -> bool {
        let a = &self.0;
        let mut i = a.len();
        while i > 0 {
            if a[i - 1] == 0 {
                i -= 1;
            } else if i > 1 && a[i - 2] == a[i - 1] {
                i -= 2;
            } else {
                return false;
            }
        }
        true
    }

    /// Distinct Wiener letters in ascending order.
    pub fn wiener_drivers(&self) -> Vec<Driver> {
        let mut d: Vec<Driver> = self.0.iter().copied().filter(|&a| a != 0).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl From<Vec<Driver>> for Word {
    fn from(letters: Vec<Driver>) -> Self {
        Word(letters)
    }
}

impl<const N: usize> From<[Driver; N]> for Word {
    fn from(letters: [Driver; N]) -> Self {
        Word(letters.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated letters, e.g. `0,1,1`. The empty word renders as `""`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses a comma-separated list of nonnegative integers. Whitespace around
/// tokens is ignored; an empty (or blank) string is the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    if text.trim().is_empty() {
        return Ok(Word::empty());
    }
    text.split(',')
        .map(|raw| {
            let token = raw.trim();
            let err = |reason| Error::Parse {
                token: token.to_string(),
                reason,
            };
            if token.is_empty() {
                return Err(err("empty letter"));
            }
            if token.starts_with('-') {
                return Err(err("driver index must be nonnegative"));
            }
            if !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("driver index must be a decimal integer"));
            }
            token
                .parse::<Driver>()
                .map_err(|_| err("driver index out of range"))
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

/// Number of zero/pair words of each length `0..=max_len` over
/// `num_wiener` Wiener drivers, saturating at `u64::MAX`.
///
/// `a(ℓ) = a(ℓ−1) + num_wiener · a(ℓ−2)`, `a(0) = a(1) = 1`.
pub fn nonzero_word_counts(max_len: usize, num_wiener: u64) -> Vec<u64> {
    let mut counts: Vec<u64> = Vec::with_capacity(max_len + 1);
    for len in 0..=max_len {
        let c = match len {
            0 | 1 => 1,
            _ => counts[len - 1].saturating_add(num_wiener.saturating_mul(counts[len - 2])),
        };
        counts.push(c);
    }
    counts
}

/// All zero/pair words of length `<= max_len` over drivers
/// `{0, 1, …, num_wiener}`, in length-then-lexicographic order.
pub fn enumerate_nonzero_words(max_len: usize, num_wiener: u64) -> Result<Vec<Word>> {
    enumerate_nonzero_words_with(max_len, num_wiener, &Limits::default())
}

pub fn enumerate_nonzero_words_with(
    max_len: usize,
    num_wiener: u64,
    limits: &Limits,
) -> Result<Vec<Word>> {
    if num_wiener == 0 {
        return Err(Error::InvalidArgument(
            "at least one Wiener driver is required".into(),
        ));
    }
    if max_len > limits.max_enum_len {
        return Err(Error::EnumerationCap(format!(
            "max length {max_len} exceeds cap {}",
            limits.max_enum_len
        )));
    }
    let total = nonzero_word_counts(max_len, num_wiener)
        .into_iter()
        .fold(0u64, u64::saturating_add);
    if total > limits.max_enum_words {
        return Err(Error::EnumerationCap(format!(
            "{total} words requested, cap is {}",
            limits.max_enum_words
        )));
    }

    let mut out = Vec::with_capacity(total as usize);
    let mut buf = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        fill_blocks(len, num_wiener, &mut buf, &mut out);
    }
    Ok(out)
}

// Blocks are chosen left to right in the order 0, 11, 22, …; since blocks
// differ in their first letter this yields lexicographic order.
fn fill_blocks(remaining: usize, num_wiener: u64, buf: &mut Vec<Driver>, out: &mut Vec<Word>) {
    if remaining == 0 {
        out.push(Word(buf.clone()));
        return;
    }
    buf.push(0);
    fill_blocks(remaining - 1, num_wiener, buf, out);
    buf.pop();
    if remaining >= 2 {
        for m in 1..=num_wiener {
            buf.extend([m, m]);
            fill_blocks(remaining - 2, num_wiener, buf, out);
            buf.truncate(buf.len() - 2);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use proptest::prelude::*;

    fn w<const N: usize>(a: [Driver; N]) -> Word {
        Word::from(a)
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_word("0,1,1,0,0").unwrap(), w([0, 1, 1, 0, 0]));
        assert_eq!(parse_word("").unwrap(), Word::empty());
        assert_eq!(
            parse_word("2,2,0,1,1,3,3,0,0,0").unwrap(),
            w([2, 2, 0, 1, 1, 3, 3, 0, 0, 0])
        );
        assert_eq!(parse_word(" 1 , 2 ").unwrap(), w([1, 2]));
    }

    #[test]
    fn parse_errors_name_the_token() {
        for (text, bad) in [
            ("1,-2", "-2"),
            ("0,1.5", "1.5"),
            ("x", "x"),
            ("1,", ""),
            ("1,,2", ""),
        ] {
            match parse_word(text) {
                Err(Error::Parse { token, .. }) => assert_eq!(token, bad, "input {text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(parse_word("99999999999999999999999").is_err());
    }

    #[test]
    fn letter_counts() {
        assert_eq!(w([0, 1, 1, 0, 0]).zero_count(), 3);
        assert_eq!(Word::empty().zero_count(), 0);
        assert_eq!(w([2, 2, 1, 1, 3, 3]).zero_count(), 0);
        assert_eq!(w([2, 2, 1, 1, 3, 3]).nonzero_count(), 6);
        assert_eq!(Word::empty().nonzero_count(), 0);
        assert_eq!(w([0, 1, 1, 0, 0]).nonzero_count(), 2);
    }

    #[test]
    fn zero_pair_examples() {
        assert!(w([0, 1, 1, 0, 0]).is_zero_pair_word());
        assert!(!w([0, 1, 1, 0, 0, 1]).is_zero_pair_word());
        assert!(!w([1, 2, 2, 1]).is_zero_pair_word());
        assert!(!segments_into_blocks(&[1, 2, 2, 1]));
        assert!(Word::empty().is_zero_pair_word());
        // odd run of equal letters cannot be paired up
        assert!(!w([1, 1, 1]).is_zero_pair_word());
        assert!(w([1, 1, 1, 1]).is_zero_pair_word());
    }

    #[test]
    fn scan_matches_segmentation_oracle_exhaustively() {
        for len in 0..=8 {
            for word in all_words(len, 3) {
                assert_eq!(
                    word.is_zero_pair_word(),
                    segments_into_blocks(word.letters()),
                    "{word}"
                );
            }
        }
    }

    #[test]
    fn derived_accessors() {
        let a = w([2, 2, 0]);
        assert_eq!(a.without_last(), w([2, 2]));
        assert_eq!(a.without_last_two(), w([2]));
        assert_eq!(Word::empty().without_last(), Word::empty());
        assert_eq!(w([5]).without_last_two(), Word::empty());
        assert_eq!(w([3, 1, 3, 0]).wiener_drivers(), vec![1, 3]);
    }

    #[test]
    fn ordering_is_length_then_lex() {
        let mut v = vec![w([1]), w([0, 1]), Word::empty(), w([0, 0]), w([0])];
        v.sort();
        assert_eq!(v, vec![Word::empty(), w([0]), w([1]), w([0, 0]), w([0, 1])]);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_nonzero_words(2, 1).unwrap(),
            vec![Word::empty(), w([0]), w([0, 0]), w([1, 1])]
        );
        assert_eq!(enumerate_nonzero_words(0, 1).unwrap(), vec![Word::empty()]);

        let words = enumerate_nonzero_words(4, 1).unwrap();
        let per_len: Vec<usize> = (0..=4)
            .map(|l| words.iter().filter(|x| x.len() == l).count())
            .collect();
        assert_eq!(per_len, vec![1, 1, 2, 3, 5]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for k in 1..=3u64 {
            let fast = enumerate_nonzero_words(8, k).unwrap();
            let brute: Vec<Word> = (0..=8)
                .flat_map(|l| all_words(l, k))
                .filter(|x| segments_into_blocks(x.letters()))
                .collect();
            assert_eq!(fast, brute, "num_wiener = {k}");
            let counts = nonzero_word_counts(8, k);
            assert_eq!(counts.iter().sum::<u64>() as usize, fast.len());
        }
    }

    #[test]
    fn enumeration_caps() {
        assert!(matches!(
            enumerate_nonzero_words(21, 1),
            Err(Error::EnumerationCap(_))
        ));
        assert!(matches!(
            enumerate_nonzero_words(20, 1000),
            Err(Error::EnumerationCap(_))
        ));
        assert!(matches!(
            enumerate_nonzero_words(3, 0),
            Err(Error::InvalidArgument(_))
        ));
        let tight = Limits {
            max_enum_len: 3,
            ..Limits::default()
        };
        assert!(enumerate_nonzero_words_with(3, 1, &tight).is_ok());
        assert!(enumerate_nonzero_words_with(4, 1, &tight).is_err());
    }

    fn small_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u64..4, 0..12).prop_map(Word::new)
    }

    // Biased toward zero/pair structure to exercise the `true` branch.
    fn block_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u64..4, 0..8).prop_map(|blocks| {
            let mut letters = Vec::new();
            for b in blocks {
                if b == 0 {
                    letters.push(0);
                } else {
                    letters.extend([b, b]);
                }
            }
            Word::new(letters)
        })
    }

    proptest! {
        #[test]
        fn counts_partition_length(word in small_word()) {
            prop_assert_eq!(word.zero_count() + word.nonzero_count(), word.len());
        }

        #[test]
        fn zero_pair_is_reversal_symmetric(word in prop_oneof![small_word(), block_word()]) {
            prop_assert_eq!(word.is_zero_pair_word(), word.reversed().is_zero_pair_word());
        }

        #[test]
        fn zero_pair_words_have_even_wiener_count(word in block_word()) {
            prop_assert!(word.is_zero_pair_word());
            prop_assert_eq!(word.nonzero_count() % 2, 0);
        }

        #[test]
        fn render_parse_round_trip(letters in prop::collection::vec(any::<u64>(), 0..10)) {
            let word = Word::new(letters);
            prop_assert_eq!(parse_word(&word.to_string()).unwrap(), word);
        }
    }
}

//! Exact rational arithmetic and expectation monomials `c · tᵖ`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `1 / 2ᵏ`.
    pub fn half_pow(k: usize) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    /// The exact value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Rational)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn pow(&self, exp: usize) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics, as with the primitive numeric types.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// `num/den`, with the denominator omitted when it is 1.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts `n`, `n/d` and finite decimals such as `-0.125`, all exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let err = |reason| Error::Parse {
            token: text.to_string(),
            reason,
        };
        let int = |part: &str| -> Result<BigInt> {
            let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("not a rational number"));
            }
            part.parse::<BigInt>()
                .map_err(|_| err("not a rational number"))
        };
        if let Some((n, d)) = text.split_once('/') {
            let d = int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Rational(BigRational::new(int(n)?, d)));
        }
        if let Some((whole, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("not a rational number"));
            }
            let negative = whole.starts_with('-');
            let whole = match whole.strip_prefix(['-', '+']).unwrap_or(whole) {
                "" => BigInt::zero(),
                w if w.bytes().all(|b| b.is_ascii_digit()) => int(w)?,
                _ => return Err(err("not a rational number")),
            };
            let scale = num_traits::pow(BigInt::from(10u8), frac.len());
            let mut numer = whole * &scale
                + frac
                    .parse::<BigInt>()
                    .map_err(|_| err("not a rational number"))?;
            if negative {
                numer = -numer;
            }
            return Ok(Rational(BigRational::new(numer, scale)));
        }
        int(text).map(Rational::from_integer)
    }
}

/// `n!`.
pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// The function `t ↦ coeff · t^power`.
///
/// The zero monomial is canonically `0 · t⁰`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    coeff: Rational,
    power: usize,
}

impl Monomial {
    pub fn new(coeff: Rational, power: usize) -> Self {
        let power = if coeff.is_zero() { 0 } else { power };
        Monomial { coeff, power }
    }

    pub fn zero() -> Self {
        Monomial::new(Rational::zero(), 0)
    }

    pub fn one() -> Self {
        Monomial::new(Rational::one(), 0)
    }

    /// `tⁿ / n!`.
    pub fn time_power(n: usize) -> Self {
        let denom = BigInt::from(factorial(n));
        Monomial::new(Rational(BigRational::new(BigInt::one(), denom)), n)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn power(&self) -> usize {
        self.power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, factor: &Rational) -> Monomial {
        Monomial::new(&self.coeff * factor, self.power)
    }

    /// Sum of two monomials, if it is again a monomial.
    pub fn checked_add(&self, other: &Monomial) -> Option<Monomial> {
        if self.is_zero() {
            Some(other.clone())
        } else if other.is_zero() {
            Some(self.clone())
        } else if self.power == other.power {
            Some(Monomial::new(&self.coeff + &other.coeff, self.power))
        } else {
            None
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.coeff * &t.pow(self.power)
    }
}

/// `<coeff> * t^<power>`; `0` for zero and the bare coefficient for `t^0`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() || self.power == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} * t^{}", self.coeff, self.power)
        }
    }
}

/// Evaluates `m` at `t` exactly.
pub fn monomial_eval(m: &Monomial, t: &Rational) -> Rational {
    m.eval(t)
}

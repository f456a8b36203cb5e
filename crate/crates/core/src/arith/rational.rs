use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ArithError;

/// Exact rational number. Always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"`, surrounding whitespace allowed.
pub fn parse_rational(text: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::BadRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Fractional part in [0, 1).
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

/// A rational taken modulo 1, stored in [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational);

impl Phase {
    pub fn new(value: Rational) -> Self {
        Phase(frac(&value))
    }

    pub fn zero() -> Self {
        Phase(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn neg(&self) -> Phase {
        Phase::new(-&self.0)
    }

    pub fn add(&self, other: &Phase) -> Phase {
        Phase::new(&self.0 + &other.0)
    }

    pub fn times(&self, k: &BigInt) -> Phase {
        Phase::new(&self.0 * Rational::from_integer(k.clone()))
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// An element of (Q/Z)^n; the diagonal matrix with entries exp(2πi θ_j).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseVector(Vec<Phase>);

impl PhaseVector {
    pub fn new(phases: Vec<Phase>) -> Self {
        PhaseVector(phases)
    }

    pub fn from_rationals<I: IntoIterator<Item = Rational>>(values: I) -> Self {
        PhaseVector(values.into_iter().map(Phase::new).collect())
    }

    /// Convenience for tests and literals: `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::from_rationals(pairs.iter().map(|&(p, q)| rat(p, q)))
    }

    /// Parses `"1/3, 2/3"`, optionally wrapped in parentheses.
    pub fn parse(text: &str) -> Result<Self, ArithError> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(PhaseVector(Vec::new()));
        }
        t.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_rationals)
    }

    pub fn identity(n: usize) -> Self {
        PhaseVector(vec![Phase::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn phases(&self) -> &[Phase] {
        &self.0
    }

    pub fn get(&self, j: usize) -> &Rational {
        self.0[j].value()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Phase::is_zero)
    }

    pub fn add(&self, other: &PhaseVector) -> PhaseVector {
        debug_assert_eq!(self.dim(), other.dim());
        PhaseVector(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn inverse(&self) -> PhaseVector {
        PhaseVector(self.0.iter().map(Phase::neg).collect())
    }

    pub fn times(&self, k: &BigInt) -> PhaseVector {
        PhaseVector(self.0.iter().map(|p| p.times(k)).collect())
    }

    pub fn concat(&self, other: &PhaseVector) -> PhaseVector {
        PhaseVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Least r > 0 with r·θ ≡ 0, the lcm of the denominators.
    pub fn order(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()))
    }

    /// Σ_j c_j θ_j as an exact rational (not reduced mod 1).
    pub fn pair(&self, exponents: &[BigInt]) -> Rational {
        debug_assert_eq!(self.dim(), exponents.len());
        self.0
            .iter()
            .zip(exponents)
            .map(|(p, c)| p.value() * Rational::from_integer(c.clone()))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Exact lexicographic order on the phase values.
    pub fn lex_cmp(&self, other: &PhaseVector) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|p| format_rational(p.value())).collect()
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// Least r > 0 with r·θ ≡ 0 mod Z^n.
pub fn element_order(theta: &PhaseVector) -> BigInt {
    theta.order()
}

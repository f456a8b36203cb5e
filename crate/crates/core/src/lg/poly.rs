use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, Rational};

use super::LgError;

/// A Laurent monomial `x_1^{c_1} ⋯ x_n^{c_n}`, stored by its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentMonomial {
    pub exponents: Vec<BigInt>,
}

impl LaurentMonomial {
    pub fn new(exponents: Vec<BigInt>) -> Self {
        LaurentMonomial { exponents }
    }

    pub fn from_i64(exponents: &[i64]) -> Self {
        LaurentMonomial::new(exponents.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn mul(&self, other: &LaurentMonomial) -> LaurentMonomial {
        LaurentMonomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                if c.is_one() {
                    format!("x{}", j + 1)
                } else {
                    format!("x{}^{}", j + 1, c)
                }
            })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub exponents: Vec<u32>,
}

/// A polynomial with rational coefficients in `n` variables, kept with
/// merged like terms, no zero coefficients, and terms sorted by descending
/// lexicographic exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiHomogPoly {
    n: usize,
    terms: Vec<Term>,
}

impl QuasiHomogPoly {
    /// Canonicalises the given terms; fails on an empty result.
    pub fn new(n: usize, terms: Vec<Term>) -> Result<Self, LgError> {
        let mut merged: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for t in terms {
            if t.exponents.len() != n {
                return Err(LgError::DimensionMismatch {
                    expected: n,
                    found: t.exponents.len(),
                });
            }
            *merged.entry(t.exponents).or_insert_with(Rational::zero) += t.coeff;
        }
        let terms: Vec<Term> = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponents, coeff)| Term { coeff, exponents })
            .collect();
        if terms.is_empty() {
            return Err(LgError::ZeroPolynomial);
        }
        Ok(QuasiHomogPoly { n, terms })
    }

    /// The zero polynomial in no variables, the potential of the empty space.
    pub fn empty() -> Self {
        QuasiHomogPoly {
            n: 0,
            terms: Vec::new(),
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<Self, LgError> {
        parse_polynomial(text, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn exponent_rows(&self) -> Vec<Vec<BigInt>> {
        self.terms
            .iter()
            .map(|t| t.exponents.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    /// First variable (0-based) that occurs in no term.
    pub fn unused_variable(&self) -> Option<usize> {
        (0..self.n).find(|&j| self.terms.iter().all(|t| t.exponents[j] == 0))
    }

    /// Terms of the form `x_i x_j` with `i ≠ j`.
    pub fn cross_terms(&self) -> Vec<&Term> {
        self.terms
            .iter()
            .filter(|t| t.exponents.iter().sum::<u32>() == 2 && t.exponents.iter().all(|&e| e <= 1))
            .collect()
    }

    /// `self(x_1..x_n) + other(x_{n+1}..x_{n+m})`.
    pub fn disjoint_sum(&self, other: &QuasiHomogPoly) -> QuasiHomogPoly {
        let n = self.n + other.n;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        for t in &self.terms {
            let mut e = t.exponents.clone();
            e.resize(n, 0);
            terms.push(Term {
                coeff: t.coeff.clone(),
                exponents: e,
            });
        }
        for t in &other.terms {
            let mut e = vec![0; self.n];
            e.extend(&t.exponents);
            terms.push(Term {
                coeff: t.coeff.clone(),
                exponents: e,
            });
        }
        QuasiHomogPoly::new(n, terms).unwrap_or_else(|_| QuasiHomogPoly::empty())
    }

    /// Partial derivative with respect to variable `j` (0-based).
    pub fn derivative(&self, j: usize) -> Vec<Term> {
        self.terms
            .iter()
            .filter(|t| t.exponents[j] > 0)
            .map(|t| {
                let mut e = t.exponents.clone();
                let k = e[j];
                e[j] -= 1;
                Term {
                    coeff: &t.coeff * Rational::from_integer(BigInt::from(k)),
                    exponents: e,
                }
            })
            .collect()
    }
}

impl fmt::Display for QuasiHomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = LaurentMonomial::new(t.exponents.iter().map(|&e| BigInt::from(e)).collect());
            let is_const = t.exponents.iter().all(|&e| e == 0);
            if is_const {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// Parses `terms joined by + / -`, each an optional rational coefficient
/// followed by `*`-separated factors `xK` or `xK^E`, `1 ≤ K ≤ n`.
/// Whitespace is ignored.
pub fn parse_polynomial(text: &str, n: usize) -> Result<QuasiHomogPoly, LgError> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser {
        chars: &chars,
        pos: 0,
        end: text.len(),
        n,
    };
    let mut terms = Vec::new();
    let mut first = true;
    while p.pos < chars.len() || first {
        let sign = match p.peek() {
            Some('+') => {
                p.pos += 1;
                1
            }
            Some('-') => {
                p.pos += 1;
                -1
            }
            _ if first => 1,
            Some(c) => return Err(p.error(format!("expected '+' or '-', found '{c}'"))),
            None => unreachable!(),
        };
        first = false;
        let mut term = p.term()?;
        if sign < 0 {
            term.coeff = -term.coeff;
        }
        terms.push(term);
    }
    QuasiHomogPoly::new(n, terms)
}

struct Parser<'a> {
    chars: &'a [(usize, char)],
    pos: usize,
    end: usize,
    n: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, message: String) -> LgError {
        LgError::Syntax {
            position: self.offset(),
            message,
        }
    }

    fn number(&mut self) -> Result<BigInt, LgError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number".into()));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn term(&mut self) -> Result<Term, LgError> {
        let mut coeff = Rational::one();
        let mut exponents = vec![0u32; self.n];
        let mut have_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.number()?;
            let den = if self.peek() == Some('/') {
                self.pos += 1;
                let d = self.number()?;
                if d.is_zero() {
                    return Err(self.error("zero denominator".into()));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Rational::new(num, den);
            have_coeff = true;
            match self.peek() {
                Some('*') => self.pos += 1,
                Some('x') => {}
                _ => return Ok(Term { coeff, exponents }),
            }
        }
        loop {
            if self.peek() != Some('x') {
                let what = if have_coeff { "a factor after '*'" } else { "a term" };
                return Err(self.error(format!("expected {what}")));
            }
            self.pos += 1;
            let var_pos = self.offset();
            let k = self.number()?;
            let k: usize = match usize::try_from(&k) {
                Ok(k) if (1..=self.n).contains(&k) => k,
                _ => {
                    return Err(LgError::Syntax {
                        position: var_pos,
                        message: format!("variable index {k} out of range 1..={}", self.n),
                    })
                }
            };
            let e = if self.peek() == Some('^') {
                self.pos += 1;
                let e = self.number()?;
                match u32::try_from(&e) {
                    Ok(e) if e >= 1 => e,
                    _ => return Err(self.error(format!("bad exponent {e}"))),
                }
            } else {
                1
            };
            exponents[k - 1] += e;
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(Term { coeff, exponents });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn single_power() {
        let w = parse_polynomial("x1^3", 1).unwrap();
        assert_eq!(w.terms().len(), 1);
        assert_eq!(w.terms()[0].coeff, int(1));
        assert_eq!(w.terms()[0].exponents, vec![3]);
    }

    #[test]
    fn like_terms_merge() {
        let w = parse_polynomial("x1^3 + x1^3", 1).unwrap();
        assert_eq!(w.terms().len(), 1);
        assert_eq!(w.terms()[0].coeff, int(2));
        assert!(matches!(
            parse_polynomial("x1^3 - x1^3", 1),
            Err(LgError::ZeroPolynomial)
        ));
    }

    #[test]
    fn loop_potential() {
        let w = parse_polynomial("x1^2*x2 + x2^2*x1", 2).unwrap();
        assert_eq!(w.terms().len(), 2);
        assert_eq!(w.to_string(), "x1^2*x2 + x1*x2^2");
    }

    #[test]
    fn coefficients_and_signs() {
        let w = parse_polynomial(" -1/2 x1^2 + 3*x2 * x2 - x1*x1", 2).unwrap();
        assert_eq!(w.terms()[0].coeff, rat(-3, 2));
        assert_eq!(w.terms()[0].exponents, vec![2, 0]);
        assert_eq!(w.terms()[1].coeff, int(3));
        assert_eq!(w.to_string(), "-3/2*x1^2 + 3*x2^2");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_polynomial("x1^3 + x3", 2) {
            Err(LgError::Syntax { position, .. }) => assert_eq!(position, 8),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x1^3 +", 1), Err(LgError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x1^0", 1), Err(LgError::Syntax { .. })));
        assert!(matches!(parse_polynomial("y1", 1), Err(LgError::Syntax { .. })));
        assert!(matches!(parse_polynomial("", 1), Err(LgError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x1 x1", 1), Err(LgError::Syntax { .. })));
    }

    #[test]
    fn cross_terms_detected() {
        let w = parse_polynomial("x1*x2 + x1^3", 2).unwrap();
        assert_eq!(w.cross_terms().len(), 1);
        let w = parse_polynomial("x1^2 + x2^2", 2).unwrap();
        assert!(w.cross_terms().is_empty());
    }
}

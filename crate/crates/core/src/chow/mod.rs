//! Truncated graded rings generated by formal Chern classes, and power
//! series in an auxiliary variable `t` with coefficients in such a ring.

mod free;

pub use free::{
    check_concavity, check_index_zero, free_case_class, free_case_series, unit_weight_class, weighted_segre_series,
    BundleMode, ConcavityReport, FreeCaseInput, IndexZeroReport, RingClass, SegreSeries,
};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("cannot rescale the series argument by zero")]
    ZeroScale,
    #[error("constant term is not a nonzero scalar; the series is not invertible")]
    NonUnitConstantTerm,
    #[error("ε_{variable} = δ_{variable} − d vanishes")]
    EpsilonZero { variable: usize },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("total rank {r} differs from total corank {s}")]
    IndexNotZero { r: u32, s: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bundle {
    pub name: String,
    pub rank: u32,
}

impl Bundle {
    pub fn new(name: impl Into<String>, rank: u32) -> Self {
        Bundle {
            name: name.into(),
            rank,
        }
    }
}

/// Exponent vector over the ring's generators.
pub type Monomial = Vec<u32>;

/// A polynomial in the Chern classes of the ring. Only meaningful together
/// with the ring that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChowClass {
    terms: BTreeMap<Monomial, Rational>,
}

impl ChowClass {
    pub fn zero() -> Self {
        ChowClass::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> ChowClass {
        if q.is_zero() {
            return ChowClass::zero();
        }
        ChowClass {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&-Rational::one())
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// The rational value when the class is a multiple of the unit.
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.terms.keys().all(|m| m.iter().all(|&e| e == 0)) {
            Some(self.constant_term())
        } else {
            None
        }
    }
}

/// `(bundle index, Chern index, power)`.
pub type Factor = (usize, u32, u32);

/// One serialized term: coefficient `"p/q"` and `(bundle, chern index, power)`
/// factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerializedTerm {
    pub coefficient: String,
    pub monomial: Vec<(String, u32, u32)>,
}

/// Graded ring generated by `c_i(B)` for each bundle `B` and `1 ≤ i ≤ rank B`,
/// with `deg c_i = i` and every class of degree above `max_degree` set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowRing {
    bundles: Vec<Bundle>,
    /// `(bundle, chern index)` for each generator.
    generators: Vec<(usize, u32)>,
    offsets: Vec<usize>,
    max_degree: u32,
}

impl ChowRing {
    pub fn new(bundles: Vec<Bundle>, max_degree: u32) -> Self {
        let mut generators = Vec::new();
        let mut offsets = Vec::with_capacity(bundles.len());
        for (k, b) in bundles.iter().enumerate() {
            offsets.push(generators.len());
            generators.extend((1..=b.rank).map(|i| (k, i)));
        }
        ChowRing {
            bundles,
            generators,
            offsets,
            max_degree,
        }
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn bundle_index(&self, name: &str) -> Option<usize> {
        self.bundles.iter().position(|b| b.name == name)
    }

    pub fn degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.generators).map(|(&e, &(_, i))| e * i).sum()
    }

    fn unit_monomial(&self) -> Monomial {
        vec![0; self.generators.len()]
    }

    pub fn scalar(&self, q: Rational) -> ChowClass {
        let mut out = ChowClass::zero();
        out.insert(self.unit_monomial(), q);
        out
    }

    pub fn one(&self) -> ChowClass {
        self.scalar(Rational::one())
    }

    /// `c_i(B_k)`: the unit for `i = 0`, zero above the rank or the
    /// truncation degree.
    pub fn chern(&self, k: usize, i: u32) -> ChowClass {
        if i == 0 {
            return self.one();
        }
        if i > self.bundles[k].rank || i > self.max_degree {
            return ChowClass::zero();
        }
        let mut m = self.unit_monomial();
        m[self.offsets[k] + i as usize - 1] = 1;
        let mut out = ChowClass::zero();
        out.insert(m, Rational::one());
        out
    }

    /// Product with every term of degree above the truncation dropped.
    pub fn mul(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        let mut out = ChowClass::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if self.degree(&m) <= self.max_degree {
                    out.insert(m, ca * cb);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &ChowClass, k: u32) -> ChowClass {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Total Chern polynomial `1 + c_1 t + … + c_ρ t^ρ`, kept through `t^T`.
    pub fn chern_series(&self, k: usize, truncation: usize) -> GradedSeries {
        GradedSeries {
            coeffs: (0..=truncation).map(|i| self.chern(k, i as u32)).collect(),
        }
    }

    /// `S(t/e)`: the coefficient of `t^i` is multiplied by `e^{-i}`.
    pub fn scale_argument(&self, s: &GradedSeries, e: &Rational) -> Result<GradedSeries, ChowError> {
        if e.is_zero() {
            return Err(ChowError::ZeroScale);
        }
        let inv = e.recip();
        let mut factor = Rational::one();
        let mut coeffs = Vec::with_capacity(s.coeffs.len());
        for c in &s.coeffs {
            coeffs.push(c.scale(&factor));
            factor *= &inv;
        }
        Ok(GradedSeries { coeffs })
    }

    /// Product truncated at the smaller of the two `t`-truncations.
    pub fn series_mul(&self, a: &GradedSeries, b: &GradedSeries) -> GradedSeries {
        let t = a.truncation().min(b.truncation());
        let coeffs = (0..=t)
            .map(|k| {
                (0..=k).fold(ChowClass::zero(), |acc, i| {
                    acc.add(&self.mul(&a.coeffs[i], &b.coeffs[k - i]))
                })
            })
            .collect();
        GradedSeries { coeffs }
    }

    /// Multiplicative inverse through the series' own truncation. The
    /// constant coefficient must be a nonzero scalar.
    pub fn invert(&self, s: &GradedSeries) -> Result<GradedSeries, ChowError> {
        let a0 = s.coeffs[0]
            .as_scalar()
            .filter(|q| !q.is_zero())
            .ok_or(ChowError::NonUnitConstantTerm)?;
        let inv0 = a0.recip();
        let mut out: Vec<ChowClass> = vec![self.scalar(inv0.clone())];
        for k in 1..s.coeffs.len() {
            let acc = (1..=k).fold(ChowClass::zero(), |acc, i| {
                acc.add(&self.mul(&s.coeffs[i], &out[k - i]))
            });
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(GradedSeries { coeffs: out })
    }

    /// Terms ordered by degree, then lexicographically by monomial.
    pub fn serialize(&self, class: &ChowClass) -> Vec<SerializedTerm> {
        let mut terms: Vec<(u32, Vec<Factor>, &Rational)> = class
            .terms
            .iter()
            .map(|(m, c)| {
                let factors = m
                    .iter()
                    .zip(&self.generators)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, &(k, i))| (k, i, e))
                    .collect();
                (self.degree(m), factors, c)
            })
            .collect();
        terms.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        terms
            .into_iter()
            .map(|(_, factors, c)| SerializedTerm {
                coefficient: format_rational(c),
                monomial: factors
                    .into_iter()
                    .map(|(k, i, e)| (self.bundles[k].name.clone(), i, e))
                    .collect(),
            })
            .collect()
    }

    /// Human-readable form, e.g. `c1(G1) - 2*c1(F1)^2`.
    pub fn display(&self, class: &ChowClass) -> String {
        let terms = self.serialize(class);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, t) in terms.iter().enumerate() {
            let mono: Vec<String> = t
                .monomial
                .iter()
                .map(|(b, i, e)| {
                    if *e == 1 {
                        format!("c{i}({b})")
                    } else {
                        format!("c{i}({b})^{e}")
                    }
                })
                .collect();
            let (negative, magnitude) = match t.coefficient.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t.coefficient.as_str()),
            };
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            match (mono.is_empty(), magnitude) {
                (true, m) => out.push_str(m),
                (false, "1") => out.push_str(&mono.join("*")),
                (false, m) => {
                    out.push_str(m);
                    out.push('*');
                    out.push_str(&mono.join("*"));
                }
            }
        }
        out
    }

    /// Builds a class from `(coefficient, [(bundle, chern index, power)])`.
    pub fn from_terms(&self, terms: &[(Rational, Vec<Factor>)]) -> ChowClass {
        terms.iter().fold(ChowClass::zero(), |acc, (c, factors)| {
            let term = factors.iter().fold(self.scalar(c.clone()), |t, &(k, i, e)| {
                self.mul(&t, &self.pow(&self.chern(k, i), e))
            });
            acc.add(&term)
        })
    }
}

/// `Σ_{i ≤ T} a_i t^i` with coefficients in a [`ChowRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    coeffs: Vec<ChowClass>,
}

impl GradedSeries {
    pub fn new(coeffs: Vec<ChowClass>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the t^0 coefficient");
        GradedSeries { coeffs }
    }

    /// Largest power of `t` kept.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^i`; zero beyond the truncation.
    pub fn coeff(&self, i: usize) -> ChowClass {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[ChowClass] {
        &self.coeffs
    }

    pub fn scale(&self, q: &Rational) -> GradedSeries {
        GradedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the same truncation.
    pub fn shift(&self, k: usize) -> GradedSeries {
        let t = self.truncation();
        GradedSeries {
            coeffs: (0..=t)
                .map(|i| {
                    if i < k {
                        ChowClass::zero()
                    } else {
                        self.coeffs[i - k].clone()
                    }
                })
                .collect(),
        }
    }

    /// Truncates or pads with zeros.
    pub fn with_truncation(&self, t: usize) -> GradedSeries {
        GradedSeries {
            coeffs: (0..=t).map(|i| self.coeff(i)).collect(),
        }
    }
}

pub(crate) fn rational_pow(q: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * q)
}

pub(crate) fn int_rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn ring(ranks: &[u32], d: u32) -> ChowRing {
        ChowRing::new(
            ranks
                .iter()
                .enumerate()
                .map(|(k, &r)| Bundle::new(format!("F{}", k + 1), r))
                .collect(),
            d,
        )
    }

    #[test]
    fn chern_series_shapes() {
        let r = ring(&[0, 1, 2], 4);
        let s0 = r.chern_series(0, 3);
        assert_eq!(s0.coeff(0), r.one());
        assert!(s0.coeffs()[1..].iter().all(ChowClass::is_zero));
        let s1 = r.chern_series(1, 3);
        assert_eq!(r.display(&s1.coeff(1)), "c1(F2)");
        assert!(s1.coeff(2).is_zero());
        let s2 = r.chern_series(2, 3);
        assert_eq!(r.display(&s2.coeff(2)), "c2(F3)");
    }

    #[test]
    fn scaling() {
        let r = ring(&[1], 2);
        let s = r.chern_series(0, 2);
        assert_eq!(r.scale_argument(&s, &int(1)).unwrap(), s);
        let half = r.scale_argument(&s, &int(2)).unwrap();
        assert_eq!(half.coeff(1), r.chern(0, 1).scale(&rat(1, 2)));
        let back = r.scale_argument(&half, &rat(1, 2)).unwrap();
        assert_eq!(back, s);
        assert_eq!(r.scale_argument(&s, &int(0)), Err(ChowError::ZeroScale));
    }

    #[test]
    fn inversion() {
        let r = ring(&[1], 4);
        let one = GradedSeries::new(vec![r.one(), ChowClass::zero()]);
        assert_eq!(r.invert(&one).unwrap(), one);
        let s = r.chern_series(0, 4);
        let inv = r.invert(&s).unwrap();
        let c = r.chern(0, 1);
        for k in 0..=4u32 {
            let expected = r.pow(&c, k).scale(&int(if k % 2 == 0 { 1 } else { -1 }));
            assert_eq!(inv.coeff(k as usize), expected);
        }
        let two = GradedSeries::new(vec![r.scalar(int(2))]);
        assert_eq!(r.invert(&two).unwrap().coeff(0), r.scalar(rat(1, 2)));
        let bad = GradedSeries::new(vec![r.chern(0, 1)]);
        assert_eq!(r.invert(&bad), Err(ChowError::NonUnitConstantTerm));
        assert_eq!(
            r.invert(&GradedSeries::new(vec![ChowClass::zero()])),
            Err(ChowError::NonUnitConstantTerm)
        );
    }

    #[test]
    fn truncation_kills_high_degree() {
        let r = ring(&[2], 2);
        let c1 = r.chern(0, 1);
        let c2 = r.chern(0, 2);
        assert!(r.mul(&c1, &c2).is_zero());
        assert!(!r.mul(&c1, &c1).is_zero());
    }

    #[test]
    fn serialization_order() {
        let r = ChowRing::new(vec![Bundle::new("F1", 1), Bundle::new("G1", 2)], 3);
        let class = r.from_terms(&[
            (int(-2), vec![(0, 1, 2)]),
            (rat(1, 2), vec![]),
            (int(1), vec![(1, 1, 1)]),
            (int(3), vec![(1, 2, 1)]),
        ]);
        let ser = r.serialize(&class);
        assert_eq!(ser[0].coefficient, "1/2");
        assert_eq!(ser[1].monomial, vec![("G1".to_string(), 1, 1)]);
        assert_eq!(r.display(&class), "1/2 + c1(G1) - 2*c1(F1)^2 + 3*c2(G1)");
        assert_eq!(r.display(&ChowClass::zero()), "0");
    }

    #[test]
    fn series_product_with_inverse() {
        let r = ring(&[2, 1], 5);
        let s = r.series_mul(
            &r.scale_argument(&r.chern_series(0, 5), &int(3)).unwrap(),
            &r.chern_series(1, 5).scale(&int(-2)),
        );
        let p = r.series_mul(&s, &r.invert(&s).unwrap());
        assert_eq!(p.coeff(0), r.one());
        for k in 1..=5 {
            assert!(p.coeff(k).is_zero(), "t^{k}");
        }
        let q = r.series_mul(&r.invert(&s).unwrap(), &s);
        assert_eq!(p, q);
    }
}

//! Witten's class when `R⁰π_*L_j` and `R¹π_*L_j` are vector bundles.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;

use super::{int_rational, rational_pow, Bundle, ChowClass, ChowError, ChowRing, GradedSeries, SerializedTerm};

/// Formal bundles carry symbolic Chern classes; numeric ones sit over a
/// point, so only their rank survives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BundleMode {
    #[default]
    Formal,
    Numeric,
}

/// Ranks `r_j` of `F_j = R⁰π_*L_j` and `s_j` of `G_j = R¹π_*L_j`, with the
/// weight `(d_j, δ_j)` of each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCaseInput {
    pub weights: Vec<(u64, u64)>,
    pub ranks: Vec<u32>,
    pub coranks: Vec<u32>,
    pub max_degree: u32,
    pub modes: Vec<BundleMode>,
}

impl FreeCaseInput {
    pub fn new(weights: Vec<(u64, u64)>, ranks: Vec<u32>, coranks: Vec<u32>, max_degree: u32) -> Self {
        let modes = vec![BundleMode::Formal; weights.len()];
        FreeCaseInput {
            weights,
            ranks,
            coranks,
            max_degree,
            modes,
        }
    }

    /// Every bundle over a point.
    pub fn numeric(weights: Vec<(u64, u64)>, ranks: Vec<u32>, coranks: Vec<u32>) -> Self {
        let modes = vec![BundleMode::Numeric; weights.len()];
        FreeCaseInput {
            weights,
            ranks,
            coranks,
            max_degree: 0,
            modes,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn total_rank(&self) -> u32 {
        self.ranks.iter().sum()
    }

    pub fn total_corank(&self) -> u32 {
        self.coranks.iter().sum()
    }

    fn check(&self) -> Result<Vec<Rational>, ChowError> {
        let n = self.n();
        for len in [self.ranks.len(), self.coranks.len(), self.modes.len()] {
            if len != n {
                return Err(ChowError::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        self.weights
            .iter()
            .enumerate()
            .map(|(j, &(d, delta))| {
                let eps = int_rational(delta as i64 - d as i64);
                if eps.is_zero() {
                    Err(ChowError::EpsilonZero { variable: j + 1 })
                } else {
                    Ok(eps)
                }
            })
            .collect()
    }

    /// Bundles `F_1..F_n` followed by `G_1..G_n`.
    pub fn ring(&self) -> ChowRing {
        let rank = |j: usize, r: u32| if self.modes[j] == BundleMode::Formal { r } else { 0 };
        let f = (0..self.n()).map(|j| Bundle::new(format!("F{}", j + 1), rank(j, self.ranks[j])));
        let g = (0..self.n()).map(|j| Bundle::new(format!("G{}", j + 1), rank(j, self.coranks[j])));
        ChowRing::new(f.chain(g).collect(), self.max_degree)
    }
}

/// A class together with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingClass {
    pub ring: ChowRing,
    pub class: ChowClass,
}

impl RingClass {
    pub fn display(&self) -> String {
        self.ring.display(&self.class)
    }

    pub fn serialize(&self) -> Vec<SerializedTerm> {
        self.ring.serialize(&self.class)
    }

    pub fn as_scalar(&self) -> Option<Rational> {
        self.class.as_scalar()
    }
}

/// `Π_j e_j^{ρ_j} c(B_j)(t/e_j)` over the listed bundles.
fn scaled_chern_product(
    ring: &ChowRing,
    bundles: &[(usize, Rational, u32)],
    truncation: usize,
) -> Result<GradedSeries, ChowError> {
    let mut acc = GradedSeries::new(vec![ring.one()]).with_truncation(truncation);
    for (k, e, rank) in bundles {
        let factor = ring
            .scale_argument(&ring.chern_series(*k, truncation), e)?
            .scale(&rational_pow(e, *rank));
        acc = ring.series_mul(&acc, &factor);
    }
    Ok(acc)
}

/// The full ratio `Π ε_j^{s_j} c(G_j)(t/ε_j) / Π δ_j^{r_j} c(F_j)(t/δ_j)`
/// through `t^T`.
pub fn free_case_series(input: &FreeCaseInput, truncation: usize) -> Result<(ChowRing, GradedSeries), ChowError> {
    let eps = input.check()?;
    let n = input.n();
    let ring = input.ring();
    let numerator: Vec<(usize, Rational, u32)> = (0..n).map(|j| (n + j, eps[j].clone(), input.coranks[j])).collect();
    let denominator: Vec<(usize, Rational, u32)> = (0..n)
        .map(|j| (j, int_rational(input.weights[j].1 as i64), input.ranks[j]))
        .collect();
    let top = scaled_chern_product(&ring, &numerator, truncation)?;
    let bottom = scaled_chern_product(&ring, &denominator, truncation)?;
    let ratio = ring.series_mul(&top, &ring.invert(&bottom)?);
    Ok((ring, ratio))
}

/// `Coeff_{t^{s−r}}` of the free-case ratio; zero when `s < r`.
pub fn free_case_class(input: &FreeCaseInput) -> Result<RingClass, ChowError> {
    input.check()?;
    let (r, s) = (input.total_rank(), input.total_corank());
    if s < r {
        return Ok(RingClass {
            ring: input.ring(),
            class: ChowClass::zero(),
        });
    }
    let k = (s - r) as usize;
    let (ring, series) = free_case_series(input, k)?;
    Ok(RingClass {
        class: series.coeff(k),
        ring,
    })
}

/// One variable with `δ = 1`, so `ε = 1 − d`.
pub fn unit_weight_class(r: u32, s: u32, d: u64, max_degree: u32) -> Result<RingClass, ChowError> {
    free_case_class(&FreeCaseInput::new(vec![(d, 1)], vec![r], vec![s], max_degree))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreSeries {
    pub ring: ChowRing,
    pub series: GradedSeries,
    /// Whether the weights are relatively prime. Recorded only.
    pub coprime: bool,
}

/// `t^r · (Π_j e_j^{r_j} c(F_j)(t/e_j))^{-1}` through `t^T`, for bundles
/// `F_1..F_n` of ranks `r_j`.
pub fn weighted_segre_series(
    ranks: &[u32],
    weights: &[u64],
    truncation: usize,
    max_degree: u32,
) -> Result<SegreSeries, ChowError> {
    if ranks.len() != weights.len() {
        return Err(ChowError::DimensionMismatch {
            expected: ranks.len(),
            found: weights.len(),
        });
    }
    let ring = ChowRing::new(
        ranks
            .iter()
            .enumerate()
            .map(|(j, &r)| Bundle::new(format!("F{}", j + 1), r))
            .collect(),
        max_degree,
    );
    let factors: Vec<(usize, Rational, u32)> = weights
        .iter()
        .zip(ranks)
        .enumerate()
        .map(|(j, (&e, &r))| (j, int_rational(e as i64), r))
        .collect();
    let product = scaled_chern_product(&ring, &factors, truncation)?;
    let r: u32 = ranks.iter().sum();
    let series = ring.invert(&product)?.shift(r as usize);
    Ok(SegreSeries {
        ring,
        series,
        coprime: weights.iter().fold(0u64, |g, &e| g.gcd(&e)) == 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcavityReport {
    pub ring: ChowRing,
    pub computed: ChowClass,
    /// `Π_j c_{s_j}(G_j)`.
    pub expected: ChowClass,
    pub equal: bool,
}

/// Compares the free-case class at `r = 0` with `c_top(G)`.
pub fn check_concavity(coranks: &[u32], weights: &[(u64, u64)], max_degree: u32) -> Result<ConcavityReport, ChowError> {
    let input = FreeCaseInput::new(weights.to_vec(), vec![0; coranks.len()], coranks.to_vec(), max_degree);
    let computed = free_case_class(&input)?;
    let ring = computed.ring;
    let n = coranks.len();
    let expected = coranks
        .iter()
        .enumerate()
        .fold(ring.one(), |acc, (j, &s)| ring.mul(&acc, &ring.chern(n + j, s)));
    Ok(ConcavityReport {
        equal: computed.class == expected,
        computed: computed.class,
        expected,
        ring,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexZeroReport {
    /// Free-case class over a point.
    pub computed: Rational,
    /// `Π ε_j^{s_j} / Π δ_j^{r_j}`.
    pub ratio: Rational,
    /// `Π s_j / Π r_j`; absent when some `r_j = 0`.
    pub printed_factor: Option<Rational>,
    /// `ratio · printed_factor`.
    pub printed_value: Option<Rational>,
    /// The extra factor is missing or differs from one.
    pub flagged: bool,
}

/// Degree of the Witten map when `Σ r_j = Σ s_j`.
pub fn check_index_zero(ranks: &[u32], coranks: &[u32], weights: &[(u64, u64)]) -> Result<IndexZeroReport, ChowError> {
    let input = FreeCaseInput::numeric(weights.to_vec(), ranks.to_vec(), coranks.to_vec());
    let eps = input.check()?;
    let (r, s) = (input.total_rank(), input.total_corank());
    if r != s {
        return Err(ChowError::IndexNotZero { r, s });
    }
    let computed = free_case_class(&input)?
        .as_scalar()
        .expect("classes over a point are scalars");
    let mut ratio = Rational::one();
    for j in 0..input.n() {
        ratio *= rational_pow(&eps[j], coranks[j]);
        ratio /= rational_pow(&int_rational(weights[j].1 as i64), ranks[j]);
    }
    let prod = |v: &[u32]| v.iter().map(|&x| int_rational(i64::from(x))).product::<Rational>();
    let denominator = prod(ranks);
    let printed_factor = (!denominator.is_zero()).then(|| prod(coranks) / denominator);
    let printed_value = printed_factor.as_ref().map(|f| &ratio * f);
    Ok(IndexZeroReport {
        flagged: printed_factor.as_ref().is_none_or(|f| !f.is_one()),
        computed,
        ratio,
        printed_factor,
        printed_value,
    })
}

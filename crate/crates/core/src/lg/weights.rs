use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{smith_normal_form, IntMatrix, PhaseVector, Rational};

use super::poly::QuasiHomogPoly;
use super::LgError;

/// Weight `(d, δ)`: `W(λ^{δ_1} x_1, …, λ^{δ_n} x_n) = λ^d W(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    pub d: u64,
    pub delta: Vec<u64>,
}

impl WeightSystem {
    /// Checks positivity and primitivity of `δ`.
    pub fn new(d: u64, delta: Vec<u64>) -> Result<Self, LgError> {
        if d == 0 || delta.contains(&0) {
            return Err(LgError::InvalidWeights("weights must be positive".into()));
        }
        let g = delta.iter().fold(0u64, |a, &b| a.gcd(&b));
        if !delta.is_empty() && g != 1 {
            return Err(LgError::InvalidWeights(format!(
                "delta {delta:?} is not primitive (gcd {g})"
            )));
        }
        Ok(WeightSystem { d, delta })
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    /// `δ_j / d`.
    pub fn charges(&self) -> Vec<Rational> {
        self.delta
            .iter()
            .map(|&dj| Rational::new(BigInt::from(dj), BigInt::from(self.d)))
            .collect()
    }

    /// The grading element `(δ_1/d, …, δ_n/d) mod 1`.
    pub fn j_element(&self) -> PhaseVector {
        PhaseVector::from_rationals(self.charges())
    }
}

/// Weight data of a (possibly product) space: one weight system per factor,
/// variables numbered consecutively across factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BlockWeights {
    blocks: Vec<WeightSystem>,
}

impl BlockWeights {
    pub fn single(w: WeightSystem) -> Self {
        BlockWeights { blocks: vec![w] }
    }

    pub fn blocks(&self) -> &[WeightSystem] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(WeightSystem::n).sum()
    }

    pub fn concat(&self, other: &BlockWeights) -> BlockWeights {
        BlockWeights {
            blocks: self.blocks.iter().chain(&other.blocks).cloned().collect(),
        }
    }

    /// `(d, δ_j)` for every variable, in order.
    pub fn per_variable(&self) -> Vec<(u64, u64)> {
        self.blocks
            .iter()
            .flat_map(|b| b.delta.iter().map(move |&dj| (b.d, dj)))
            .collect()
    }

    /// Charges `q_j = δ_j / d` for every variable.
    pub fn charges(&self) -> Vec<Rational> {
        self.blocks.iter().flat_map(WeightSystem::charges).collect()
    }

    pub fn j_element(&self) -> PhaseVector {
        PhaseVector::from_rationals(self.charges())
    }

    /// The single weight system, when there is exactly one block.
    pub fn as_single(&self) -> Option<&WeightSystem> {
        match self.blocks.as_slice() {
            [w] => Some(w),
            _ => None,
        }
    }

    /// Every term must have weighted degree one: `Σ_j m_j q_j = 1`.
    pub fn check_polynomial(&self, w: &QuasiHomogPoly) -> Result<(), LgError> {
        if self.n() != w.n() {
            return Err(LgError::DimensionMismatch {
                expected: w.n(),
                found: self.n(),
            });
        }
        let q = self.charges();
        for (a, t) in w.terms().iter().enumerate() {
            let deg: Rational = t
                .exponents
                .iter()
                .zip(&q)
                .map(|(&m, qj)| qj * Rational::from_integer(BigInt::from(m)))
                .sum();
            if deg != Rational::from_integer(BigInt::from(1)) {
                return Err(LgError::WeightMismatch { term: a });
            }
        }
        Ok(())
    }
}

/// Solves `Σ_j m_{aj} δ_j = d` for all terms and returns the unique primitive
/// positive solution.
pub fn infer_weights(w: &QuasiHomogPoly) -> Result<WeightSystem, LgError> {
    let n = w.n();
    if let Some(j) = w.unused_variable() {
        return Err(LgError::UnusedVariable(j + 1));
    }
    let rows: Vec<Vec<BigInt>> = w
        .exponent_rows()
        .into_iter()
        .map(|mut r| {
            r.push(BigInt::from(-1));
            r
        })
        .collect();
    let system = IntMatrix::from_rows(n + 1, rows);
    let snf = smith_normal_form(&system);
    let kernel: Vec<Vec<BigInt>> = (snf.rank..n + 1).map(|c| snf.v.column(c)).collect();
    match kernel.len() {
        0 => Err(LgError::NotQuasiHomogeneous),
        1 => {
            let mut v = kernel.into_iter().next().expect("one vector");
            if v[n].is_negative() {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            if v[n].is_zero() || v[..n].iter().any(|x| !x.is_positive()) {
                return Err(LgError::NoPositiveSolution);
            }
            let g = v.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
            let to_u64 = |x: &BigInt| {
                (x / &g)
                    .to_u64()
                    .ok_or_else(|| LgError::InvalidWeights("weights overflow u64".into()))
            };
            let d = to_u64(&v[n])?;
            let delta = v[..n].iter().map(to_u64).collect::<Result<Vec<_>, _>>()?;
            WeightSystem::new(d, delta)
        }
        _ => Err(LgError::AmbiguousWeights {
            first: kernel[0].clone(),
            second: kernel[1].clone(),
        }),
    }
}

/// `(δ_1/d, …, δ_n/d) mod 1`.
pub fn j_element(weights: &WeightSystem) -> PhaseVector {
    weights.j_element()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lg::poly::parse_polynomial;

    fn weights_of(text: &str, n: usize) -> Result<WeightSystem, LgError> {
        infer_weights(&parse_polynomial(text, n).unwrap())
    }

    #[test]
    fn fermat_cubic() {
        assert_eq!(weights_of("x1^3", 1).unwrap(), WeightSystem { d: 3, delta: vec![1] });
    }

    #[test]
    fn chain_type() {
        // 3δ1 = d, δ1 + 3δ2 = d  ⇒  δ = (3, 2), d = 9
        let w = weights_of("x1^3 + x1*x2^3", 2).unwrap();
        assert_eq!(
            w,
            WeightSystem {
                d: 9,
                delta: vec![3, 2]
            }
        );
        assert_eq!(3 * w.delta[0], w.d);
        assert_eq!(w.delta[0] + 3 * w.delta[1], w.d);
    }

    #[test]
    fn loop_type() {
        assert_eq!(
            weights_of("x1^2*x2 + x2^2*x1", 2).unwrap(),
            WeightSystem {
                d: 3,
                delta: vec![1, 1]
            }
        );
    }

    #[test]
    fn failures() {
        assert!(matches!(
            weights_of("x1^3 + x1^2", 1),
            Err(LgError::NotQuasiHomogeneous)
        ));
        assert!(matches!(
            weights_of("x1^2*x2^2", 2),
            Err(LgError::AmbiguousWeights { .. })
        ));
        assert!(matches!(weights_of("x1^3", 2), Err(LgError::UnusedVariable(2))));
        // 2δ1 = d and 3δ1 + δ2 = d force δ2 = -δ1
        assert!(matches!(
            weights_of("x1^2 + x1^3*x2", 2),
            Err(LgError::NoPositiveSolution)
        ));
    }

    #[test]
    fn j_elements() {
        assert_eq!(
            j_element(&WeightSystem { d: 3, delta: vec![1] }),
            PhaseVector::from_pairs(&[(1, 3)])
        );
        assert_eq!(
            j_element(&WeightSystem {
                d: 9,
                delta: vec![3, 2]
            }),
            PhaseVector::from_pairs(&[(1, 3), (2, 9)])
        );
        let j = j_element(&WeightSystem {
            d: 3,
            delta: vec![1, 1],
        });
        assert_eq!(j.get(0), &rat(1, 3));
        assert_eq!(j.get(1), &rat(1, 3));
    }

    #[test]
    fn non_primitive_rejected() {
        assert!(WeightSystem::new(6, vec![2, 4]).is_err());
        assert!(WeightSystem::new(6, vec![2, 3]).is_ok());
    }
}

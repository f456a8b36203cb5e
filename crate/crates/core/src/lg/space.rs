use num_traits::ToPrimitive;

use crate::arith::{phase_kernel, ArithError, DiagonalGroup, IntMatrix, PhaseVector, Rational};

use super::groebner::{groebner_basis, is_zero_dimensional, GPoly, GroebnerBudget};
use super::poly::{LaurentMonomial, QuasiHomogPoly};
use super::weights::{infer_weights, BlockWeights, WeightSystem};
use super::LgError;

/// Outcome of the Jacobian zero-dimensionality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isolation {
    Isolated,
    NotIsolated,
    /// Gröbner budget exhausted.
    Indeterminate,
    /// Not attempted because a cross term already makes `W` degenerate.
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub no_cross_terms: bool,
    pub isolated_origin: Isolation,
}

impl NondegeneracyReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.no_cross_terms && self.isolated_origin == Isolation::Isolated
    }
}

/// Cross-term rule first; then zero-dimensionality of the Jacobian ideal.
pub fn check_nondegenerate(w: &QuasiHomogPoly, budget: GroebnerBudget) -> NondegeneracyReport {
    let no_cross_terms = w.cross_terms().is_empty();
    if !no_cross_terms {
        return NondegeneracyReport {
            no_cross_terms,
            isolated_origin: Isolation::Skipped,
        };
    }
    let partials: Vec<GPoly> = (0..w.n()).map(|j| GPoly::from_terms(&w.derivative(j))).collect();
    let isolated_origin = match groebner_basis(partials, budget) {
        Ok(basis) if is_zero_dimensional(&basis, w.n()) => Isolation::Isolated,
        Ok(_) => Isolation::NotIsolated,
        Err(_) => Isolation::Indeterminate,
    };
    NondegeneracyReport {
        no_cross_terms,
        isolated_origin,
    }
}

/// `Aut(W)`: diagonal symmetries fixing every monomial of `W`.
pub fn aut_group(w: &QuasiHomogPoly) -> Result<DiagonalGroup, LgError> {
    let m = IntMatrix::from_rows(w.n(), w.exponent_rows());
    phase_kernel(&m).map_err(|e| match e {
        ArithError::InfiniteKernel { witness } => LgError::InfiniteAut { witness },
        other => LgError::Arith(other),
    })
}

/// How the symmetry group of a space is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// The full group `Aut(W)`.
    Aut,
    /// The cyclic group generated by the grading element.
    Minimal,
    /// The group generated by the listed elements.
    Generators(Vec<PhaseVector>),
}

/// A Landau–Ginzburg space `([C^n/G], W)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LgSpace {
    poly: QuasiHomogPoly,
    weights: BlockWeights,
    group: DiagonalGroup,
    lambda_basis: Vec<LaurentMonomial>,
    lambda_weights: Vec<i64>,
}

impl LgSpace {
    /// Infers the weights of `w` and builds the space.
    pub fn build(w: QuasiHomogPoly, spec: &GroupSpec) -> Result<Self, LgError> {
        let weights = infer_weights(&w)?;
        Self::build_with_weights(w, weights, spec)
    }

    pub fn build_with_weights(w: QuasiHomogPoly, weights: WeightSystem, spec: &GroupSpec) -> Result<Self, LgError> {
        let weights = BlockWeights::single(weights);
        weights.check_polynomial(&w)?;
        let aut = aut_group(&w)?;
        let j = weights.j_element();
        let group = match spec {
            GroupSpec::Aut => aut.clone(),
            GroupSpec::Minimal => DiagonalGroup::from_generators(w.n(), std::slice::from_ref(&j))?,
            GroupSpec::Generators(gens) => DiagonalGroup::from_generators(w.n(), gens)?,
        };
        if !group.contains(&j) {
            return Err(LgError::JNotContained { j });
        }
        if let Some(bad) = group.generators().iter().find(|g| !aut.contains(g)) {
            return Err(LgError::NotSubgroupOfAut { witness: bad.clone() });
        }
        Self::assemble(w, weights, group)
    }

    /// The space with no variables; the unit for `product`.
    pub fn empty() -> Self {
        Self::assemble(
            QuasiHomogPoly::empty(),
            BlockWeights::default(),
            DiagonalGroup::trivial(0),
        )
        .expect("empty space is valid")
    }

    fn assemble(poly: QuasiHomogPoly, weights: BlockWeights, group: DiagonalGroup) -> Result<Self, LgError> {
        let charges = weights.charges();
        let lambda_basis: Vec<LaurentMonomial> = group.dual_lattice().into_iter().map(LaurentMonomial::new).collect();
        let lambda_weights = lambda_basis
            .iter()
            .map(|m| weight_of(m, &charges))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LgSpace {
            poly,
            weights,
            group,
            lambda_basis,
            lambda_weights,
        })
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn poly(&self) -> &QuasiHomogPoly {
        &self.poly
    }

    pub fn weights(&self) -> &BlockWeights {
        &self.weights
    }

    pub fn group(&self) -> &DiagonalGroup {
        &self.group
    }

    /// Basis `m_1, …, m_n` of the lattice of `G`-invariant Laurent monomials.
    pub fn lambda_basis(&self) -> &[LaurentMonomial] {
        &self.lambda_basis
    }

    /// `w(m_k)` for the basis monomials.
    pub fn lambda_weights(&self) -> &[i64] {
        &self.lambda_weights
    }

    pub fn charges(&self) -> Vec<Rational> {
        self.weights.charges()
    }

    pub fn j_element(&self) -> PhaseVector {
        self.weights.j_element()
    }

    /// `w(m) = d^{-1} deg m(t^{δ_1}, …, t^{δ_n})` for a `G`-invariant monomial.
    pub fn monomial_weight(&self, m: &LaurentMonomial) -> Result<i64, LgError> {
        if m.dim() != self.n() {
            return Err(LgError::DimensionMismatch {
                expected: self.n(),
                found: m.dim(),
            });
        }
        if !self
            .group
            .generators()
            .iter()
            .all(|g| g.pair(&m.exponents).is_integer())
        {
            return Err(LgError::NotInvariant(m.clone()));
        }
        weight_of(m, &self.charges())
    }

    /// `([C^n/G_A] × [C^m/G_B], W_A + W_B)` with weights kept per factor.
    pub fn product(&self, other: &LgSpace) -> LgSpace {
        let poly = self.poly.disjoint_sum(&other.poly);
        let weights = self.weights.concat(&other.weights);
        let group = self.group.product(&other.group);
        Self::assemble(poly, weights, group).expect("product of valid spaces is valid")
    }
}

/// Free function form of [`LgSpace::product`].
pub fn product_space(a: &LgSpace, b: &LgSpace) -> LgSpace {
    a.product(b)
}

fn weight_of(m: &LaurentMonomial, charges: &[Rational]) -> Result<i64, LgError> {
    let w: Rational = m
        .exponents
        .iter()
        .zip(charges)
        .map(|(c, q)| q * Rational::from_integer(c.clone()))
        .sum();
    if !w.is_integer() {
        return Err(LgError::NonIntegralWeight(m.clone()));
    }
    w.to_integer()
        .to_i64()
        .ok_or_else(|| LgError::NonIntegralWeight(m.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, DEFAULT_ELEMENT_CAP};
    use crate::lg::poly::parse_polynomial;
    use num_bigint::BigInt;

    fn space(text: &str, n: usize, spec: GroupSpec) -> Result<LgSpace, LgError> {
        LgSpace::build(parse_polynomial(text, n).unwrap(), &spec)
    }

    fn brute_force_aut(w: &QuasiHomogPoly, denom: i64) -> usize {
        let n = w.n();
        let rows = w.exponent_rows();
        let total = (denom as usize).pow(n as u32);
        (0..total)
            .filter(|&idx| {
                let mut k = idx;
                let v = PhaseVector::from_rationals((0..n).map(|_| {
                    let q = rat((k % denom as usize) as i64, denom);
                    k /= denom as usize;
                    q
                }));
                rows.iter().all(|r| v.pair(r).is_integer())
            })
            .count()
    }

    #[test]
    fn nondegeneracy_verdicts() {
        let b = GroebnerBudget::default();
        let r = check_nondegenerate(&parse_polynomial("x1^3", 1).unwrap(), b);
        assert_eq!(
            r,
            NondegeneracyReport {
                no_cross_terms: true,
                isolated_origin: Isolation::Isolated
            }
        );
        let r = check_nondegenerate(&parse_polynomial("x1*x2", 2).unwrap(), b);
        assert!(!r.no_cross_terms);
        assert!(!r.is_nondegenerate());
        let r = check_nondegenerate(&parse_polynomial("x1^2*x2", 2).unwrap(), b);
        assert_eq!(
            r,
            NondegeneracyReport {
                no_cross_terms: true,
                isolated_origin: Isolation::NotIsolated
            }
        );
        let r = check_nondegenerate(&parse_polynomial("x1^2*x2 + x2^2*x1", 2).unwrap(), b);
        assert!(r.is_nondegenerate());
        let r = check_nondegenerate(&parse_polynomial("x1^3 + x1*x2^3", 2).unwrap(), b);
        assert!(r.is_nondegenerate());
        let r = check_nondegenerate(&parse_polynomial("x1^3*x2 + x2^3*x3 + x3^3*x1", 3).unwrap(), b);
        assert!(r.is_nondegenerate());
    }

    #[test]
    fn aut_groups_match_brute_force() {
        for (text, n, order) in [("x1^3", 1, 3usize), ("x1^3 + x2^3", 2, 9), ("x1^2*x2 + x2^2*x1", 2, 3)] {
            let w = parse_polynomial(text, n).unwrap();
            let g = aut_group(&w).unwrap();
            assert_eq!(g.order(), &BigInt::from(order));
            let exp = g.exponent().to_i64().unwrap();
            assert_eq!(brute_force_aut(&w, exp), order);
        }
        let g = aut_group(&parse_polynomial("x1^3 + x2^3", 2).unwrap()).unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(3), BigInt::from(3)]);
        let g = aut_group(&parse_polynomial("x1^2*x2 + x2^2*x1", 2).unwrap()).unwrap();
        assert_eq!(g.generators(), &[PhaseVector::from_pairs(&[(1, 3), (1, 3)])]);
        assert!(matches!(
            aut_group(&parse_polynomial("x1^2*x2^2", 2).unwrap()),
            Err(LgError::InfiniteAut { .. })
        ));
    }

    #[test]
    fn fermat_cubic_space() {
        let s = space("x1^3", 1, GroupSpec::Aut).unwrap();
        assert_eq!(s.group().order(), &BigInt::from(3));
        assert_eq!(s.lambda_basis(), &[LaurentMonomial::from_i64(&[3])]);
        assert_eq!(s.lambda_weights(), &[1]);
    }

    #[test]
    fn minimal_group_of_two_cubics() {
        let s = space("x1^3 + x2^3", 2, GroupSpec::Minimal).unwrap();
        assert_eq!(s.group().order(), &BigInt::from(3));
        let lattice = IntMatrix::from_rows(2, s.group().dual_lattice());
        assert_eq!(lattice.determinant().magnitude().to_u64(), Some(3));
        for (m, w) in s.lambda_basis().iter().zip(s.lambda_weights()) {
            assert_eq!(s.monomial_weight(m).unwrap(), *w);
        }
    }

    #[test]
    fn group_must_contain_grading_element() {
        let r = space(
            "x1^3 + x2^3",
            2,
            GroupSpec::Generators(vec![PhaseVector::from_pairs(&[(1, 3), (0, 1)])]),
        );
        assert!(matches!(r, Err(LgError::JNotContained { .. })));
    }

    #[test]
    fn group_must_fix_potential() {
        let r = space(
            "x1^3",
            1,
            GroupSpec::Generators(vec![PhaseVector::from_pairs(&[(1, 6)])]),
        );
        assert!(matches!(r, Err(LgError::NotSubgroupOfAut { .. })));
    }

    #[test]
    fn monomial_weights() {
        let s = space("x1^3", 1, GroupSpec::Aut).unwrap();
        assert_eq!(s.monomial_weight(&LaurentMonomial::from_i64(&[3])).unwrap(), 1);
        assert!(matches!(
            s.monomial_weight(&LaurentMonomial::from_i64(&[1])),
            Err(LgError::NotInvariant(_))
        ));
        let s = space("x1^3 + x2^3", 2, GroupSpec::Minimal).unwrap();
        assert_eq!(s.monomial_weight(&LaurentMonomial::from_i64(&[1, -1])).unwrap(), 0);
        // every monomial of W has weight one
        let s = space("x1^3 + x1*x2^3", 2, GroupSpec::Aut).unwrap();
        for row in s.poly().exponent_rows() {
            assert_eq!(s.monomial_weight(&LaurentMonomial::new(row)).unwrap(), 1);
        }
    }

    #[test]
    fn products() {
        let a = space("x1^3", 1, GroupSpec::Aut).unwrap();
        let p = a.product(&a);
        assert_eq!(p.n(), 2);
        assert_eq!(p.group().order(), &BigInt::from(9));
        let aut = aut_group(p.poly()).unwrap();
        assert!(p.group().generators().iter().all(|g| aut.contains(g)));
        assert_eq!(p.weights().blocks().len(), 2);
        assert_eq!(a.product(&LgSpace::empty()), a);
        assert_eq!(LgSpace::empty().product(&a), a);
        assert_eq!(p.group().elements(DEFAULT_ELEMENT_CAP).unwrap().len(), 9);
    }
}

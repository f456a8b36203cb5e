//! Sectors: monodromy data at marked points, and the selection rules they obey.
//!
//! A faithful cyclic representation `μ_r → G` of an abelian group is the same
//! thing as the image of the generator, so a sector is stored as a group
//! element together with its order `r`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive};
use thiserror::Error;

use crate::arith::{PhaseVector, Rational};
use crate::lg::LgSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectorError {
    #[error("{0} is not an element of the group")]
    NotInGroup(PhaseVector),
    #[error("enumeration needs {size} candidate tuples, above cap {cap}")]
    CapExceeded { size: BigInt, cap: u64 },
    #[error("quantity for variable x{variable} is {value}, not an integer; the tuple is not admissible")]
    NonIntegral { variable: usize, value: Rational },
    #[error("sector {index} is broad; class computations require narrow sectors")]
    BroadSector { index: usize },
    #[error("genus {genus} data with χ = {chi:?} is not concave")]
    NotConcave { genus: u32, chi: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    element: PhaseVector,
    r: BigInt,
}

impl Sector {
    pub fn element(&self) -> &PhaseVector {
        &self.element
    }

    /// Order of the stabiliser `μ_r`.
    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// `Θ_j ∈ [0, 1)`.
    pub fn theta(&self, j: usize) -> &Rational {
        self.element.get(j)
    }

    /// Every coordinate of the monodromy is nontrivial.
    pub fn is_narrow(&self) -> bool {
        self.element.phases().iter().all(|p| !p.is_zero())
    }
}

/// The sector whose generator acts by `theta`.
pub fn sector_of(space: &LgSpace, theta: &PhaseVector) -> Result<Sector, SectorError> {
    if !space.group().contains(theta) {
        return Err(SectorError::NotInGroup(theta.clone()));
    }
    Ok(Sector {
        element: theta.clone(),
        r: theta.order(),
    })
}

pub fn is_narrow(s: &Sector) -> bool {
    s.is_narrow()
}

/// Sectors at the `ℓ` markings of a genus-`g` curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SectorTuple {
    pub genus: u32,
    pub sectors: Vec<Sector>,
}

impl SectorTuple {
    pub fn new(genus: u32, sectors: Vec<Sector>) -> Self {
        SectorTuple { genus, sectors }
    }

    /// Builds and checks membership for every element.
    pub fn from_elements(space: &LgSpace, genus: u32, elements: &[PhaseVector]) -> Result<Self, SectorError> {
        let sectors = elements
            .iter()
            .map(|t| sector_of(space, t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SectorTuple { genus, sectors })
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn is_narrow(&self) -> bool {
        self.sectors.iter().all(Sector::is_narrow)
    }

    /// `Σ_i Θ^i_j`.
    fn theta_sum(&self, j: usize) -> Rational {
        self.sectors.iter().map(|s| s.theta(j).clone()).sum()
    }
}

fn euler_twist(genus: u32, marks: usize) -> Rational {
    Rational::from_integer(BigInt::from(2 * i64::from(genus) - 2 + marks as i64))
}

/// `deg L_j = δ_j (2g − 2 + ℓ) / d`, as orbifold degrees.
pub fn line_bundle_degrees(space: &LgSpace, genus: u32, marks: usize) -> Vec<Rational> {
    let twist = euler_twist(genus, marks);
    space.charges().into_iter().map(|q| q * &twist).collect()
}

/// The selection rule: `δ_j(2g − 2 + ℓ)/d − Σ_i Θ^i_j ∈ Z` for every `j`.
pub fn is_admissible(space: &LgSpace, tuple: &SectorTuple) -> bool {
    line_bundle_degrees(space, tuple.genus, tuple.len())
        .iter()
        .enumerate()
        .all(|(j, deg)| (deg - tuple.theta_sum(j)).is_integer())
}

/// The selection rule for bare phase vectors, e.g. the half-edges and tails
/// meeting one vertex of a dual graph.
pub fn selection_rule_holds(space: &LgSpace, genus: u32, elements: &[PhaseVector]) -> bool {
    let target = PhaseVector::from_rationals(line_bundle_degrees(space, genus, elements.len()));
    let total = elements
        .iter()
        .fold(PhaseVector::identity(space.n()), |acc, e| acc.add(e));
    total == target
}

/// All ordered `ℓ`-tuples of group elements passing the selection rule, in
/// lexicographic order of invariant-factor coordinates.
pub fn enumerate_admissible(
    space: &LgSpace,
    genus: u32,
    marks: usize,
    narrow_only: bool,
    cap: u64,
) -> Result<Vec<SectorTuple>, SectorError> {
    let group = space.group();
    let size: BigInt = Pow::pow(group.order(), marks);
    if size > BigInt::from(cap) {
        return Err(SectorError::CapExceeded { size, cap });
    }
    let candidates: Vec<Sector> = group
        .iter()
        .map(|t| Sector {
            r: t.order(),
            element: t,
        })
        .filter(|s| !narrow_only || s.is_narrow())
        .collect();

    let target = PhaseVector::from_rationals(line_bundle_degrees(space, genus, marks));
    if marks == 0 {
        let empty = SectorTuple::new(genus, Vec::new());
        return Ok(if target.is_identity() { vec![empty] } else { Vec::new() });
    }
    let lookup: HashMap<&PhaseVector, usize> = candidates.iter().enumerate().map(|(k, s)| (&s.element, k)).collect();

    // Walk the first ℓ−1 slots; the last is forced by the selection rule.
    let mut out = Vec::new();
    let mut idx = vec![0usize; marks - 1];
    if candidates.is_empty() {
        return Ok(out);
    }
    loop {
        let partial = idx.iter().fold(PhaseVector::identity(space.n()), |acc, &k| {
            acc.add(&candidates[k].element)
        });
        let need = target.add(&partial.inverse());
        if let Some(&last) = lookup.get(&need) {
            let sectors = idx
                .iter()
                .chain(std::iter::once(&last))
                .map(|&k| candidates[k].clone())
                .collect();
            out.push(SectorTuple::new(genus, sectors));
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `χ_j = (1 − g) + deg L_j − Σ_i Θ^i_j`.
pub fn euler_characteristics(space: &LgSpace, tuple: &SectorTuple) -> Result<Vec<i64>, SectorError> {
    let degrees = line_bundle_degrees(space, tuple.genus, tuple.len());
    let base = Rational::one() - Rational::from_integer(BigInt::from(tuple.genus));
    degrees
        .iter()
        .enumerate()
        .map(|(j, deg)| {
            let chi = &base + deg - tuple.theta_sum(j);
            integral(j, chi)
        })
        .collect()
}

/// `(n − 3)(1 − g) + ℓ + Σ_j deg L_j − Σ_{i,j} Θ^i_j`.
pub fn virtual_dimension(space: &LgSpace, tuple: &SectorTuple) -> Result<i64, SectorError> {
    let n = space.n() as i64;
    let g = i64::from(tuple.genus);
    let mut total = Rational::from_integer(BigInt::from((n - 3) * (1 - g) + tuple.len() as i64));
    for (j, deg) in line_bundle_degrees(space, tuple.genus, tuple.len()).iter().enumerate() {
        total += deg - tuple.theta_sum(j);
    }
    integral(0, total)
}

fn integral(j: usize, q: Rational) -> Result<i64, SectorError> {
    if !q.is_integer() {
        return Err(SectorError::NonIntegral {
            variable: j + 1,
            value: q,
        });
    }
    q.to_integer().to_i64().ok_or(SectorError::NonIntegral {
        variable: j + 1,
        value: q,
    })
}

/// Ranks `(r_j, s_j)` of `R^0π_*L_j` and `R^1π_*L_j` when they are forced:
/// genus zero, narrow, every `χ_j ≤ 0`, so `H^0` vanishes and `s_j = −χ_j`.
pub fn concave_ranks(space: &LgSpace, tuple: &SectorTuple) -> Result<(Vec<u32>, Vec<u32>), SectorError> {
    if let Some(index) = tuple.sectors.iter().position(|s| !s.is_narrow()) {
        return Err(SectorError::BroadSector { index });
    }
    let chi = euler_characteristics(space, tuple)?;
    if tuple.genus != 0 || chi.iter().any(|&c| c > 0) {
        return Err(SectorError::NotConcave {
            genus: tuple.genus,
            chi,
        });
    }
    let coranks = chi.iter().map(|&c| (-c) as u32).collect();
    Ok((vec![0; chi.len()], coranks))
}

impl Sector {
    /// Identity sector in dimension `n`; narrow only when `n = 0`.
    pub fn identity(n: usize) -> Sector {
        Sector {
            element: PhaseVector::identity(n),
            r: BigInt::one(),
        }
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::rational::{PhaseVector, Rational};
use super::snf::smith_normal_form;
use super::ArithError;

/// Largest number of elements `elements` will materialise unless told otherwise.
pub const DEFAULT_ELEMENT_CAP: u64 = 1_000_000;

/// Generator rescaling is only attempted for cyclic factors up to this order.
const NORMALIZE_LIMIT: u64 = 10_000;

/// A finite subgroup of the diagonal torus, i.e. of (Q/Z)^n.
///
/// The group is stored through its annihilator lattice (the invariant
/// exponent vectors) in Hermite normal form, which makes the representation
/// canonical: two equal groups compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalGroup {
    ambient_dim: usize,
    relations: IntMatrix,
    generators: Vec<PhaseVector>,
    invariant_factors: Vec<BigInt>,
    order: BigInt,
    coordinate_rows: Vec<Vec<BigInt>>,
}

impl DiagonalGroup {
    pub fn trivial(n: usize) -> Self {
        phase_kernel(&IntMatrix::identity(n)).expect("identity has full rank")
    }

    /// The subgroup generated by the given phase vectors.
    pub fn from_generators(n: usize, gens: &[PhaseVector]) -> Result<Self, ArithError> {
        if let Some(g) = gens.iter().find(|g| g.dim() != n) {
            return Err(ArithError::DimensionMismatch {
                expected: n,
                found: g.dim(),
            });
        }
        if gens.is_empty() || n == 0 {
            return Ok(Self::trivial(n));
        }
        let k = gens.len();
        let modulus = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.order()));
        // Integer kernel of [A | -N·I] where A c ≡ 0 mod N encodes c·g ∈ Z.
        let mut rows = Vec::with_capacity(k);
        for (a, g) in gens.iter().enumerate() {
            let mut row: Vec<BigInt> = g
                .phases()
                .iter()
                .map(|p| (p.value() * Rational::from_integer(modulus.clone())).to_integer())
                .collect();
            row.extend((0..k).map(|b| if a == b { -modulus.clone() } else { BigInt::zero() }));
            rows.push(row);
        }
        let system = IntMatrix::from_rows(n + k, rows);
        let snf = smith_normal_form(&system);
        let lattice: Vec<Vec<BigInt>> = (snf.rank..n + k).map(|c| snf.v.column(c)[..n].to_vec()).collect();
        phase_kernel(&IntMatrix::from_rows(n, lattice))
    }

    /// Direct product, phase vectors concatenated.
    pub fn product(&self, other: &DiagonalGroup) -> DiagonalGroup {
        let n = self.ambient_dim + other.ambient_dim;
        let mut rows = Vec::with_capacity(n);
        for r in self.relations.row_vecs() {
            let mut row = r;
            row.extend(std::iter::repeat_n(BigInt::zero(), other.ambient_dim));
            rows.push(row);
        }
        for r in other.relations.row_vecs() {
            let mut row = vec![BigInt::zero(); self.ambient_dim];
            row.extend(r);
            rows.push(row);
        }
        phase_kernel(&IntMatrix::from_rows(n, rows)).expect("block-diagonal of full-rank blocks")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[PhaseVector] {
        &self.generators
    }

    /// Invariant factors greater than one, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Hermite basis of the annihilator lattice.
    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn contains(&self, theta: &PhaseVector) -> bool {
        theta.dim() == self.ambient_dim
            && (0..self.relations.rows()).all(|i| theta.pair(self.relations.row(i)).is_integer())
    }

    pub fn contains_group(&self, other: &DiagonalGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Coordinates of θ with respect to the invariant-factor generators,
    /// each in `[0, d_i)`.
    pub fn coordinates(&self, theta: &PhaseVector) -> Option<Vec<BigInt>> {
        if !self.contains(theta) {
            return None;
        }
        Some(
            self.coordinate_rows
                .iter()
                .zip(&self.invariant_factors)
                .map(|(row, d)| theta.pair(row).to_integer().mod_floor(d))
                .collect(),
        )
    }

    pub fn element(&self, coords: &[BigInt]) -> PhaseVector {
        assert_eq!(coords.len(), self.generators.len());
        self.generators
            .iter()
            .zip(coords)
            .fold(PhaseVector::identity(self.ambient_dim), |acc, (g, a)| {
                acc.add(&g.times(a))
            })
    }

    /// Lazily walks the group in lexicographic order of coordinates.
    pub fn iter(&self) -> ElementIter<'_> {
        ElementIter {
            group: self,
            next: Some(vec![BigInt::zero(); self.generators.len()]),
        }
    }

    /// All elements, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<PhaseVector>, ArithError> {
        if self.order > BigInt::from(cap) {
            return Err(ArithError::CapExceeded {
                size: self.order.clone(),
                cap,
            });
        }
        Ok(self.iter().collect())
    }

    /// Annihilator lattice basis: the exponent vectors `c` with `c·θ ∈ Z`
    /// for every θ in the group.
    pub fn dual_lattice(&self) -> Vec<Vec<BigInt>> {
        self.relations.row_vecs()
    }
}

pub struct ElementIter<'a> {
    group: &'a DiagonalGroup,
    next: Option<Vec<BigInt>>,
}

impl Iterator for ElementIter<'_> {
    type Item = PhaseVector;

    fn next(&mut self) -> Option<PhaseVector> {
        let current = self.next.take()?;
        let out = self.group.element(&current);
        let mut succ = current;
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.group.invariant_factors[pos] {
                self.next = Some(succ);
                break;
            }
            succ[pos] = BigInt::zero();
        }
        Some(out)
    }
}

/// `{θ ∈ (Q/Z)^n : M θ ≡ 0 mod Z^m}` for an `m × n` integer matrix `M`.
pub fn phase_kernel(m: &IntMatrix) -> Result<DiagonalGroup, ArithError> {
    let n = m.cols();
    let snf = smith_normal_form(m);
    if snf.rank < n {
        let witness = snf.v.column(snf.rank).into_iter().map(Rational::from_integer).collect();
        return Err(ArithError::InfiniteKernel { witness });
    }
    let relations = m.hermite_rows();
    debug_assert_eq!(relations.rows(), n);

    // U R V = D, so V^{-1} = D^{-1} U R and the rows of U R read off
    // coordinates; columns of V scaled by 1/d_i are the generators.
    let s = smith_normal_form(&relations);
    let ur = s.u.mul(&relations);
    let mut generators = Vec::new();
    let mut invariant_factors = Vec::new();
    let mut coordinate_rows = Vec::new();
    for i in 0..n {
        let d = s.d[(i, i)].clone();
        if d.is_one() {
            continue;
        }
        let gen = PhaseVector::from_rationals(s.v.column(i).into_iter().map(|c| Rational::new(c, d.clone())));
        let row = ur.row(i).to_vec();
        let (gen, row) = normalize_generator(gen, row, &d);
        generators.push(gen);
        coordinate_rows.push(row);
        invariant_factors.push(d);
    }
    let order = invariant_factors.iter().fold(BigInt::one(), |a, d| a * d);
    Ok(DiagonalGroup {
        ambient_dim: n,
        relations,
        generators,
        invariant_factors,
        order,
        coordinate_rows,
    })
}

/// Replaces `g` by the lexicographically smallest `u·g` with `u` a unit mod `d`,
/// adjusting the coordinate functional by `u^{-1}`.
fn normalize_generator(gen: PhaseVector, row: Vec<BigInt>, d: &BigInt) -> (PhaseVector, Vec<BigInt>) {
    let Some(dd) = d.to_u64().filter(|&v| v <= NORMALIZE_LIMIT) else {
        return (gen, row);
    };
    let mut best_u = 1u64;
    let mut best = gen.clone();
    for u in 2..dd {
        if u.gcd(&dd) != 1 {
            continue;
        }
        let cand = gen.times(&BigInt::from(u));
        if cand.lex_cmp(&best).is_lt() {
            best = cand;
            best_u = u;
        }
    }
    if best_u == 1 {
        return (gen, row);
    }
    let inv = BigInt::from(mod_inverse(best_u, dd));
    let row = row.into_iter().map(|c| c * &inv).collect();
    (best, row)
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

/// Annihilator lattice basis of `G` (Hermite normal form rows).
pub fn dual_lattice(group: &DiagonalGroup) -> Vec<Vec<BigInt>> {
    group.dual_lattice()
}

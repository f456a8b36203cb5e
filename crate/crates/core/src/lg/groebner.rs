//! Buchberger's algorithm over Q in degree-reverse-lexicographic order,
//! sized for the Jacobian ideals of small potentials.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::arith::Rational;

use super::poly::Term;

pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget {
    /// Maximum number of S-polynomials reduced.
    pub max_reductions: usize,
    /// Maximum total degree of any polynomial produced.
    pub max_degree: u32,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_reductions: 10_000,
            max_degree: 40,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded;

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Degree-reverse-lexicographic comparison.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    match degree(a).cmp(&degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Polynomial with terms sorted by descending degrevlex, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl GPoly {
    pub fn from_terms(terms: &[Term]) -> Self {
        let mut t: Vec<(Monomial, Rational)> = terms
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| (t.exponents.clone(), t.coeff.clone()))
            .collect();
        t.sort_by(|a, b| degrevlex(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        GPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    fn leading_coeff(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let lc = self.leading_coeff().clone();
        if lc.is_one() {
            return;
        }
        for (_, c) in &mut self.terms {
            *c /= &lc;
        }
    }

    /// `self - c · x^shift · other`
    fn sub_scaled(&self, c: &Rational, shift: &[u32], other: &GPoly) -> GPoly {
        let shifted = other.terms.iter().map(|(m, k)| {
            let mm: Monomial = m.iter().zip(shift).map(|(a, b)| a + b).collect();
            (mm, c * k)
        });
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut left = self.terms.iter().cloned().peekable();
        let mut right = shifted.peekable();
        loop {
            match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(left.next().unwrap()),
                (None, Some(_)) => {
                    let (m, k) = right.next().unwrap();
                    out.push((m, -k));
                }
                (Some((lm, _)), Some((rm, _))) => match degrevlex(lm, rm) {
                    Ordering::Greater => out.push(left.next().unwrap()),
                    Ordering::Less => {
                        let (m, k) = right.next().unwrap();
                        out.push((m, -k));
                    }
                    Ordering::Equal => {
                        let (m, a) = left.next().unwrap();
                        let (_, b) = right.next().unwrap();
                        let s = a - b;
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        GPoly { terms: out }
    }

    /// Full reduction modulo `basis`.
    pub fn normal_form(&self, basis: &[GPoly]) -> GPoly {
        let mut rest = self.clone();
        let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = rest.terms.first().cloned() {
            let divisor = basis
                .iter()
                .find(|g| g.leading_monomial().is_some_and(|gm| divides(gm, &lm)));
            match divisor {
                Some(g) => {
                    let shift = quotient(&lm, g.leading_monomial().unwrap());
                    let c = &lc / g.leading_coeff();
                    rest = rest.sub_scaled(&c, &shift, g);
                }
                None => {
                    remainder.push((lm, lc));
                    rest.terms.remove(0);
                }
            }
        }
        GPoly { terms: remainder }
    }

    fn s_polynomial(&self, other: &GPoly) -> GPoly {
        let a = self.leading_monomial().unwrap();
        let b = other.leading_monomial().unwrap();
        let l = lcm(a, b);
        let left =
            GPoly { terms: Vec::new() }.sub_scaled(&(-Rational::one() / self.leading_coeff()), &quotient(&l, a), self);
        left.sub_scaled(&(Rational::one() / other.leading_coeff()), &quotient(&l, b), other)
    }
}

/// A Gröbner basis of the ideal generated by `gens`, or `BudgetExceeded`.
pub fn groebner_basis(gens: Vec<GPoly>, budget: GroebnerBudget) -> Result<Vec<GPoly>, BudgetExceeded> {
    let mut basis: Vec<GPoly> = Vec::new();
    for mut g in gens.into_iter().filter(|g| !g.is_zero()) {
        g.make_monic();
        if g.total_degree() > budget.max_degree {
            return Err(BudgetExceeded);
        }
        basis.push(g);
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    let mut reductions = 0usize;
    while let Some(&(i, j)) = pending.iter().min_by(|p, q| pair_cmp(&basis, **p, **q)) {
        pending.remove(&(i, j));
        let lm_i = basis[i].leading_monomial().unwrap().clone();
        let lm_j = basis[j].leading_monomial().unwrap().clone();
        if coprime(&lm_i, &lm_j) {
            continue;
        }
        let l = lcm(&lm_i, &lm_j);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading_monomial().unwrap(), &l)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > budget.max_reductions {
            return Err(BudgetExceeded);
        }
        let mut h = basis[i].s_polynomial(&basis[j]).normal_form(&basis);
        if h.is_zero() {
            continue;
        }
        if h.total_degree() > budget.max_degree {
            return Err(BudgetExceeded);
        }
        h.make_monic();
        let k = basis.len();
        basis.push(h);
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    Ok(basis)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_cmp(basis: &[GPoly], p: (usize, usize), q: (usize, usize)) -> Ordering {
    let lp = lcm(
        basis[p.0].leading_monomial().unwrap(),
        basis[p.1].leading_monomial().unwrap(),
    );
    let lq = lcm(
        basis[q.0].leading_monomial().unwrap(),
        basis[q.1].leading_monomial().unwrap(),
    );
    degrevlex(&lp, &lq).then(p.cmp(&q))
}

/// The ideal is zero-dimensional iff every variable has a pure power among
/// the leading monomials of a Gröbner basis.
pub fn is_zero_dimensional(basis: &[GPoly], n: usize) -> bool {
    if basis
        .iter()
        .any(|g| g.leading_monomial().is_some_and(|m| degree(m) == 0))
    {
        return true;
    }
    (0..n).all(|j| {
        basis.iter().any(|g| {
            g.leading_monomial()
                .is_some_and(|m| m[j] > 0 && m.iter().enumerate().all(|(k, &e)| k == j || e == 0))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn poly(terms: &[(i64, &[u32])]) -> GPoly {
        GPoly::from_terms(
            &terms
                .iter()
                .map(|&(c, e)| Term {
                    coeff: int(c),
                    exponents: e.to_vec(),
                })
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn degrevlex_order() {
        assert_eq!(degrevlex(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(degrevlex(&[1, 1, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(degrevlex(&[0, 0, 3], &[1, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn cyclic_example_reduces_to_zero() {
        // Every S-polynomial of a Gröbner basis reduces to zero.
        let gens = vec![
            poly(&[(1, &[3, 0]), (-2, &[1, 1])]),
            poly(&[(1, &[2, 1]), (-2, &[0, 2]), (1, &[1, 0])]),
        ];
        let g = groebner_basis(gens, GroebnerBudget::default()).unwrap();
        for a in 0..g.len() {
            for b in a + 1..g.len() {
                assert!(g[a].s_polynomial(&g[b]).normal_form(&g).is_zero());
            }
        }
        assert!(is_zero_dimensional(&g, 2));
    }

    #[test]
    fn axis_of_critical_points() {
        // partials of x1^2 x2
        let gens = vec![poly(&[(2, &[1, 1])]), poly(&[(1, &[2, 0])])];
        let g = groebner_basis(gens, GroebnerBudget::default()).unwrap();
        assert!(!is_zero_dimensional(&g, 2));
    }

    #[test]
    fn budget_trips() {
        let gens = vec![poly(&[(1, &[50])])];
        assert_eq!(groebner_basis(gens, GroebnerBudget::default()), Err(BudgetExceeded));
    }
}

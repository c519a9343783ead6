//! Sparse polynomials with exact coefficients over an arbitrary field.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::Field;
use super::monomial::{compare, Monomial};
use super::{VarSet, VariableOrder};

/// Terms keyed by monomial; zero coefficients are never stored, the empty map
/// is the zero polynomial. The `BTreeMap` keeps iteration deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn term(monomial: Monomial, coeff: F) -> Self {
        Self::from_terms([(monomial, coeff)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn num_vars(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.num_vars())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Adds one term, dropping the entry if the coefficient cancels to zero.
    pub fn add_term(&mut self, monomial: Monomial, coeff: F) {
        if coeff.is_zero() {
            return;
        }
        if let Some(first) = self.terms.keys().next() {
            assert_eq!(first.num_vars(), monomial.num_vars(), "ring mismatch");
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn negated(&self) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiply by a single term `coeff * monomial`.
    pub fn mul_term(&self, monomial: &Monomial, coeff: &F) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(monomial), c.clone() * coeff.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, coeff: &F) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * coeff.clone()))
                .collect(),
        }
    }

    /// The maximal term under the given order; `None` on the zero polynomial.
    pub fn leading_term(&self, order: &VariableOrder) -> Option<(&Monomial, &F)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| compare(order, a, b))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, order: &VariableOrder) -> Self {
        match self.leading_term(order) {
            None => Self::zero(),
            Some((_, c)) => self.scaled(&c.inv()),
        }
    }

    /// Terms sorted descending under the order, for display and reports.
    pub fn terms_descending(&self, order: &VariableOrder) -> Vec<(&Monomial, &F)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| compare(order, b, a));
        ts
    }

    pub fn render(&self, vars: &VarSet, order: &VariableOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms_descending(order).into_iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if c.is_one() && !m.is_one() {
                out.push_str(&m.render(vars));
            } else if m.is_one() {
                out.push_str(&format!("{c}"));
            } else {
                out.push_str(&format!("{c}*{}", m.render(vars)));
            }
        }
        out
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        Polynomial::add(self, rhs)
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        Polynomial::sub(self, rhs)
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        Polynomial::mul(self, rhs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(k: i64) -> Q {
        Q::from_int(k, &())
    }

    fn mono(exps: &[u16]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn add_cancels_terms() {
        let f = Polynomial::from_terms([(mono(&[1, 0]), q(2)), (mono(&[0, 1]), q(-1))]);
        let g = Polynomial::from_terms([(mono(&[0, 1]), q(1))]);
        let sum = &f + &g;
        assert_eq!(sum.term_count(), 1);
        assert_eq!(sum.coefficient(&mono(&[1, 0])), Some(&q(2)));
        let zero = &f - &f;
        assert!(zero.is_zero());
    }

    #[test]
    fn mul_distributes() {
        let f = Polynomial::from_terms([(mono(&[1, 0]), q(1)), (mono(&[0, 1]), q(1))]);
        let g = Polynomial::from_terms([(mono(&[1, 0]), q(1)), (mono(&[0, 1]), q(-1))]);
        let prod = &f * &g;
        // (x + y)(x - y) = x^2 - y^2
        assert_eq!(prod.term_count(), 2);
        assert_eq!(prod.coefficient(&mono(&[2, 0])), Some(&q(1)));
        assert_eq!(prod.coefficient(&mono(&[0, 2])), Some(&q(-1)));
    }

    #[test]
    fn leading_term_and_monic() {
        let ord = VariableOrder::identity(2);
        let f = Polynomial::from_terms([(mono(&[2, 0]), q(3)), (mono(&[1, 1]), q(5))]);
        // x0^2 < x0*x1 under degrevlex.
        let (m, c) = f.leading_term(&ord).unwrap();
        assert_eq!(m, &mono(&[1, 1]));
        assert_eq!(c, &q(5));
        let monic = f.monic(&ord);
        assert_eq!(monic.coefficient(&mono(&[1, 1])), Some(&q(1)));
        assert!(Polynomial::<Q>::zero().leading_term(&ord).is_none());
    }
}

//! Monomials as dense exponent vectors, plus the term-order comparisons.

use std::cmp::Ordering;

use super::{VarSet, VariableOrder};

/// Monomial of one ring, stored as a dense exponent vector.
///
/// The derived `Ord` (total degree, then the exponent vector) is only a
/// canonical tie-break used for deterministic storage; the term order lives in
/// [`compare`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; num_vars],
        }
    }

    pub fn var(num_vars: usize, var: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        Monomial { degree: 1, exps }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { degree, exps }
    }

    /// Squarefree monomial with the given support.
    pub fn from_support(num_vars: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; num_vars];
        for v in support {
            assert_eq!(exps[v], 0, "repeated variable in support");
            exps[v] = 1;
        }
        Monomial::from_exps(exps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, _)| v)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), rhs.exps.len(), "ring mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            degree: self.degree + rhs.degree,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        assert_eq!(self.exps.len(), other.exps.len(), "ring mismatch");
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / rhs`, requiring divisibility.
    pub fn div_exact(&self, rhs: &Monomial) -> Monomial {
        assert!(rhs.divides(self), "inexact monomial division");
        let exps = self
            .exps
            .iter()
            .zip(&rhs.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            degree: self.degree - rhs.degree,
            exps,
        }
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), rhs.exps.len(), "ring mismatch");
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, rhs: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&rhs.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Render as `x[..]*x[..]^k`, factors in ascending variable index.
    pub fn render(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (v, &e) in self.exps.iter().enumerate() {
            if e == 1 {
                parts.push(vars.label(v).to_string());
            } else if e > 1 {
                parts.push(format!("{}^{}", vars.label(v), e));
            }
        }
        parts.join("*")
    }
}

/// Degree-reverse-lexicographic comparison under the given variable order.
///
/// `Less` means the first argument is the smaller monomial: either its total
/// degree is lower, or the degrees tie and it has the strictly larger exponent
/// at the smallest-ranked variable where the two differ.
pub fn compare(order: &VariableOrder, a: &Monomial, b: &Monomial) -> Ordering {
    assert_eq!(a.num_vars(), order.len(), "ring mismatch");
    assert_eq!(b.num_vars(), order.len(), "ring mismatch");
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {
            for rank in 0..order.len() {
                let v = order.var_at_rank(rank);
                let (ea, eb) = (a.exps[v], b.exps[v]);
                if ea != eb {
                    return if ea > eb {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        }
        other => other,
    }
}

/// The same order expressed the other way: compare by total degree, then
/// lexicographically on the variable sequences written in ascending order.
/// Kept as a cross-check oracle for [`compare`].
pub fn compare_by_sorted_vars(order: &VariableOrder, a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {
            let seq = |m: &Monomial| -> Vec<u32> {
                let mut s = Vec::with_capacity(m.degree as usize);
                for (v, &e) in m.exps.iter().enumerate() {
                    for _ in 0..e {
                        s.push(order.rank_of(v));
                    }
                }
                s.sort_unstable();
                s
            };
            seq(a).cmp(&seq(b))
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Label;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn divisibility_and_quotients() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 0, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.div_exact(&b), m(&[1, 1, 0]));
        assert_eq!(a.lcm(&m(&[0, 2, 1])), m(&[2, 2, 1]));
        assert!(m(&[1, 0, 0]).is_coprime_with(&m(&[0, 1, 1])));
    }

    #[test]
    fn degrevlex_prefers_high_degree() {
        let ord = VariableOrder::identity(2);
        assert_eq!(compare(&ord, &m(&[1, 0]), &m(&[1, 1])), Ordering::Less);
        assert_eq!(compare(&ord, &m(&[0, 0]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn degrevlex_tie_break() {
        // Equal degree: the larger exponent at the smallest differing
        // variable makes a monomial smaller, so the ascending chain on
        // quadratics is x0^2, x0*x1, x0*x2, x1^2, x1*x2, x2^2.
        let ord = VariableOrder::identity(3);
        let chain = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[1, 0, 1]),
            m(&[0, 2, 0]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in chain.windows(2) {
            assert_eq!(compare(&ord, &w[0], &w[1]), Ordering::Less);
        }
        assert_eq!(
            compare(&ord, &m(&[1, 0, 1]), &m(&[1, 0, 1])),
            Ordering::Equal
        );
    }

    #[test]
    fn sorted_sequence_route_agrees_on_small_cases() {
        let ord = VariableOrder::from_ascending(vec![1, 2, 0]);
        let monos = [
            m(&[0, 0, 0]),
            m(&[1, 0, 0]),
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 1, 2]),
            m(&[1, 1, 1]),
            m(&[3, 0, 1]),
        ];
        for a in &monos {
            for b in &monos {
                assert_eq!(
                    compare(&ord, a, b),
                    compare_by_sorted_vars(&ord, a, b),
                    "{a:?} vs {b:?}"
                );
            }
        }
    }

    #[test]
    fn render_format() {
        let vars = VarSet::new(vec![Label::Pair(1, 2), Label::Pair(1, 3)]);
        assert_eq!(m(&[1, 2]).render(&vars), "x[1,2]*x[1,3]^2");
        assert_eq!(m(&[0, 0]).render(&vars), "1");
    }
}

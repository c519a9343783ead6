//! Monomial-ideal calculus: minimal generating sets, squarefreeness,
//! polarization, and the Krull dimension / multiplicity / h-polynomial of the
//! quotient ring, computed through the Stanley-Reisner complex.

use std::collections::HashMap;

use thiserror::Error;

use crate::algebra::{Label, Monomial, VarSet};
use crate::complexes::{f_h_from_counts, SimplicialComplex, DEFAULT_ENUM_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonIdealError {
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("containment failure: a generator of the smaller ideal is not in the larger one")]
    Containment,
}

/// A monomial ideal in canonical form: the generators are an antichain under
/// divisibility, sorted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    vars: VarSet,
    gens: Vec<Monomial>,
}

/// Divisibility antichain generating the same ideal.
pub fn minimalize(gens: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut gens: Vec<Monomial> = gens.into_iter().collect();
    gens.sort_unstable();
    gens.dedup();
    let minimal: Vec<Monomial> = gens
        .iter()
        .filter(|a| !gens.iter().any(|b| b != *a && b.divides(a)))
        .cloned()
        .collect();
    minimal
}

impl MonomialIdeal {
    pub fn new(vars: VarSet, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let gens = minimalize(gens);
        for g in &gens {
            assert_eq!(g.num_vars(), vars.len(), "ring mismatch");
        }
        MonomialIdeal { vars, gens }
    }

    pub fn zero(vars: VarSet) -> Self {
        MonomialIdeal {
            vars,
            gens: Vec::new(),
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Does this ideal contain every generator of `other`?
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains_monomial(g))
    }

    /// The squarefree ideal obtained by replacing `x^k` with a product of k
    /// copies of the variable, together with the copy map. Squarefree ideals
    /// come back unchanged.
    pub fn polarize(&self) -> Polarization {
        let n = self.vars.len();
        let mut max_exp = vec![0u16; n];
        for g in &self.gens {
            for v in 0..n {
                max_exp[v] = max_exp[v].max(g.exp(v));
            }
        }
        let mut labels = Vec::new();
        let mut copies: Vec<Vec<usize>> = Vec::with_capacity(n);
        for v in 0..n {
            let k = max_exp[v].max(1);
            let mut ids = Vec::with_capacity(k as usize);
            if k == 1 {
                ids.push(labels.len());
                labels.push(self.vars.label(v));
            } else {
                for layer in 0..k {
                    ids.push(labels.len());
                    labels.push(Label::Split {
                        base: v as u32,
                        layer,
                    });
                }
            }
            copies.push(ids);
        }
        let new_vars = VarSet::new(labels);
        let new_len = new_vars.len();
        let gens = self.gens.iter().map(|g| {
            let mut exps = vec![0u16; new_len];
            for v in 0..n {
                for layer in 0..g.exp(v) {
                    exps[copies[v][layer as usize]] = 1;
                }
            }
            Monomial::from_exps(exps)
        });
        Polarization {
            ideal: MonomialIdeal::new(new_vars, gens),
            copies,
        }
    }

    /// The simplicial complex whose minimal nonfaces are the supports of the
    /// generators; requires a squarefree ideal.
    pub fn complex_of(&self) -> Result<SimplicialComplex, MonIdealError> {
        if !self.is_squarefree() {
            return Err(MonIdealError::NotSquarefree);
        }
        assert!(!self.is_unit(), "the unit ideal is not a face ideal");
        let nonfaces = self
            .gens
            .iter()
            .map(|g| g.support().fold(0u64, |acc, v| acc | (1 << v)))
            .collect();
        Ok(SimplicialComplex::new(
            self.vars.labels().to_vec(),
            nonfaces,
        ))
    }

    /// Krull dimension, multiplicity, h-polynomial and a-invariant of the
    /// quotient by this ideal, through polarization and face enumeration.
    pub fn quotient_stats(&self) -> QuotientStats {
        let ell = self.vars.len();
        let pol = self.polarize();
        let ell_pol = pol.ideal.vars.len();
        let complex = pol.ideal.complex_of().expect("polarization is squarefree");
        let (support, free) = complex.split_free_vertices();
        let counts = support
            .face_counts(DEFAULT_ENUM_BUDGET)
            .expect("face enumeration budget exhausted");
        let fh = f_h_from_counts(&counts);
        let multiplicity = *counts.last().unwrap();
        let h = fh.h_polynomial();
        let dim_polarized = (counts.len() as i64 - 2) + free as i64;
        let krull_dim = dim_polarized + 1 - (ell_pol as i64 - ell as i64);
        let h_at_one: i64 = h.iter().sum();
        assert_eq!(
            h_at_one, multiplicity as i64,
            "h(1) must equal the multiplicity"
        );
        QuotientStats {
            krull_dim,
            multiplicity,
            a_invariant: h.len() as i64 - 1 - krull_dim,
            h,
        }
    }

    /// Numerator of the Hilbert series over `(1-t)^ell`, by the standard
    /// variable-splitting recursion. Independent of the face-enumeration path.
    pub fn hilbert_numerator(&self) -> Vec<i128> {
        let mut memo: HashMap<Vec<Monomial>, Vec<i128>> = HashMap::new();
        hilbert_rec(self.gens.clone(), &mut memo)
    }

    /// The h-polynomial (trailing zeros dropped) and the Krull dimension of
    /// the quotient, from the Hilbert numerator.
    pub fn hilbert_h_and_dim(&self) -> (Vec<i64>, i64) {
        let mut num = self.hilbert_numerator();
        let ell = self.vars.len() as i64;
        let mut shed = 0i64;
        while num.len() > 1 && num.iter().sum::<i128>() == 0 {
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut carry: i128 = 0;
            for &c in &num[..num.len() - 1] {
                carry += c;
                q.push(carry);
            }
            num = q;
            shed += 1;
        }
        while num.len() > 1 && *num.last().unwrap() == 0 {
            num.pop();
        }
        let h = num
            .into_iter()
            .map(|c| i64::try_from(c).expect("h coefficient overflows i64"))
            .collect();
        (h, ell - shed)
    }
}

/// Result of polarization: the squarefree ideal in the expanded ring and, for
/// each original variable, the indices of its copies.
#[derive(Clone, Debug)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    pub copies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStats {
    pub krull_dim: i64,
    pub multiplicity: u64,
    pub h: Vec<i64>,
    pub a_invariant: i64,
}

/// The squarefree ideal generated by the minimal nonfaces of a complex.
pub fn stanley_reisner_ideal(complex: &SimplicialComplex) -> MonomialIdeal {
    let vars = VarSet::new(complex.ground().to_vec());
    let n = vars.len();
    let gens = complex
        .min_nonfaces()
        .iter()
        .map(|&nf| Monomial::from_support(n, (0..n).filter(|v| nf & (1 << v) != 0)));
    MonomialIdeal::new(vars, gens)
}

/// Checks the hypotheses under which an inclusion of monomial ideals forces
/// equality: equal Krull dimensions, equal multiplicities, and the smaller
/// ideal squarefree with a pure complex. Errors if `inner` is not contained
/// in `outer`.
pub fn inclusion_equality_criterion(
    inner: &MonomialIdeal,
    outer: &MonomialIdeal,
) -> Result<bool, MonIdealError> {
    if !outer.contains_ideal(inner) {
        return Err(MonIdealError::Containment);
    }
    if !inner.is_squarefree() {
        return Ok(false);
    }
    let complex = inner.complex_of()?;
    let facets = complex
        .facets(DEFAULT_ENUM_BUDGET)
        .expect("face enumeration budget exhausted");
    let top = facets.iter().map(|f| f.count_ones()).max().unwrap_or(0);
    let pure = facets.iter().all(|f| f.count_ones() == top);
    let si = inner.quotient_stats();
    let so = outer.quotient_stats();
    Ok(pure && si.krull_dim == so.krull_dim && si.multiplicity == so.multiplicity)
}

fn hilbert_rec(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<i128>>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    if let Some(v) = memo.get(&gens) {
        return v.clone();
    }

    let result = (|| {
        // Variable-disjoint parts multiply.
        let parts = split_components(&gens);
        if parts.len() > 1 {
            let mut acc = vec![1i128];
            for part in parts {
                acc = poly_mul(&acc, &hilbert_rec(part, memo));
            }
            return acc;
        }

        // A power of a single variable contributes 1 - t^deg; a product of
        // pairwise-disjoint pure powers is handled by the component split.
        if gens.len() == 1 && gens[0].support().count() == 1 {
            let d = gens[0].degree() as usize;
            let mut p = vec![0i128; d + 1];
            p[0] = 1;
            p[d] = -1;
            return p;
        }

        // Split on the variable occurring in the most generators:
        // H(I) = H(I + (v)) + t * H(I : v).
        let n = gens[0].num_vars();
        let mut occurrence = vec![0usize; n];
        for g in &gens {
            for v in g.support() {
                occurrence[v] += 1;
            }
        }
        let pivot = (0..n).max_by_key(|&v| occurrence[v]).unwrap();

        let sum_gens = minimalize(
            gens.iter()
                .filter(|g| g.exp(pivot) == 0)
                .cloned()
                .chain([Monomial::var(n, pivot)]),
        );
        let colon_gens = minimalize(gens.iter().map(|g| {
            if g.exp(pivot) > 0 {
                g.div_exact(&Monomial::var(n, pivot))
            } else {
                g.clone()
            }
        }));
        let mut acc = hilbert_rec(sum_gens, memo);
        let shifted = poly_shift(&hilbert_rec(colon_gens, memo));
        poly_add_into(&mut acc, &shifted);
        acc
    })();

    memo.insert(gens, result.clone());
    result
}

fn split_components(gens: &[Monomial]) -> Vec<Vec<Monomial>> {
    let mut root: Vec<usize> = (0..gens.len()).collect();
    fn find(root: &mut Vec<usize>, i: usize) -> usize {
        if root[i] != i {
            let r = find(root, root[i]);
            root[i] = r;
        }
        root[i]
    }
    let n = gens[0].num_vars();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (gi, g) in gens.iter().enumerate() {
        for v in g.support() {
            match owner[v] {
                None => owner[v] = Some(gi),
                Some(prev) => {
                    let (a, b) = (find(&mut root, prev), find(&mut root, gi));
                    root[a] = b;
                }
            }
        }
    }
    let mut parts: HashMap<usize, Vec<Monomial>> = HashMap::new();
    for (gi, g) in gens.iter().enumerate() {
        parts
            .entry(find(&mut root, gi))
            .or_default()
            .push(g.clone());
    }
    let mut out: Vec<Vec<Monomial>> = parts.into_values().collect();
    for part in &mut out {
        part.sort_unstable();
    }
    out.sort_unstable();
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_shift(a: &[i128]) -> Vec<i128> {
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(0);
    out.extend_from_slice(a);
    out
}

fn poly_add_into(a: &mut Vec<i128>, b: &[i128]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i] += y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{delta_complex, sigma_complex};

    fn mono(n: usize, exps: &[(usize, u16)]) -> Monomial {
        let mut e = vec![0u16; n];
        for &(v, k) in exps {
            e[v] = k;
        }
        Monomial::from_exps(e)
    }

    #[test]
    fn minimalize_drops_multiples() {
        let got = minimalize([
            mono(2, &[(0, 1)]),
            mono(2, &[(0, 2)]),
            mono(2, &[(0, 1), (1, 1)]),
        ]);
        assert_eq!(got, vec![mono(2, &[(0, 1)])]);

        let already = vec![mono(2, &[(0, 1)]), mono(2, &[(1, 2)])];
        assert_eq!(minimalize(already.clone()), already);
    }

    #[test]
    fn squarefree_detection() {
        let vars = VarSet::anonymous(2);
        assert!(MonomialIdeal::new(vars.clone(), [mono(2, &[(0, 1), (1, 1)])]).is_squarefree());
        assert!(!MonomialIdeal::new(vars, [mono(2, &[(0, 2)])]).is_squarefree());
    }

    #[test]
    fn polarize_squarefree_is_identity() {
        let vars = VarSet::anonymous(3);
        let ideal = MonomialIdeal::new(vars, [mono(3, &[(0, 1), (2, 1)])]);
        let pol = ideal.polarize();
        assert_eq!(pol.ideal, ideal);
        assert_eq!(pol.copies, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn polarize_pure_square() {
        let vars = VarSet::anonymous(1);
        let ideal = MonomialIdeal::new(vars, [mono(1, &[(0, 2)])]);
        let pol = ideal.polarize();
        assert_eq!(pol.ideal.vars().len(), 2);
        assert_eq!(pol.ideal.gens(), &[mono(2, &[(0, 1), (1, 1)])]);
    }

    #[test]
    fn polarize_two_generators() {
        // x^2 y and y^3 expand into five variables.
        let vars = VarSet::anonymous(2);
        let ideal = MonomialIdeal::new(vars, [mono(2, &[(0, 2), (1, 1)]), mono(2, &[(1, 3)])]);
        let pol = ideal.polarize();
        assert_eq!(pol.ideal.vars().len(), 5);
        assert!(pol.ideal.is_squarefree());

        let stats = ideal.quotient_stats();
        assert_eq!(stats.krull_dim, 1);
        assert_eq!(stats.multiplicity, 1);
        assert_eq!(stats.h, vec![1, 1, 1, -1, -1]);
        assert_eq!(stats.a_invariant, 3);

        let (h, d) = ideal.hilbert_h_and_dim();
        assert_eq!((h, d), (stats.h.clone(), stats.krull_dim));
    }

    #[test]
    fn complex_of_edge_cases() {
        let vars = VarSet::anonymous(3);
        let zero = MonomialIdeal::zero(vars.clone());
        let full = zero.complex_of().unwrap();
        assert!(full.min_nonfaces().is_empty());

        let all_vars = MonomialIdeal::new(vars.clone(), (0..3).map(|v| mono(3, &[(v, 1)])));
        let point_free = all_vars.complex_of().unwrap();
        assert_eq!(point_free.facets(1 << 20).unwrap(), vec![0]);

        let sq = MonomialIdeal::new(vars, [mono(3, &[(0, 2)])]);
        assert_eq!(sq.complex_of(), Err(MonIdealError::NotSquarefree));
    }

    #[test]
    fn quotient_stats_edge_cases() {
        let zero = MonomialIdeal::zero(VarSet::anonymous(4));
        let stats = zero.quotient_stats();
        assert_eq!(stats.krull_dim, 4);
        assert_eq!(stats.multiplicity, 1);
        assert_eq!(stats.h, vec![1]);
        assert_eq!(stats.a_invariant, -4);

        let sq = MonomialIdeal::new(VarSet::anonymous(1), [mono(1, &[(0, 2)])]);
        let stats = sq.quotient_stats();
        assert_eq!(stats.krull_dim, 0);
        assert_eq!(stats.multiplicity, 2);
        assert_eq!(stats.h, vec![1, 1]);
        assert_eq!(stats.a_invariant, 1);
    }

    #[test]
    fn hilbert_route_agrees_with_census_route_on_crossing_complexes() {
        for (n, r) in [(4u32, 1u32), (5, 1), (6, 1), (6, 2), (7, 2)] {
            let complex = delta_complex(n, r);
            let ideal = stanley_reisner_ideal(&complex);
            let stats = ideal.quotient_stats();
            let (h, d) = ideal.hilbert_h_and_dim();
            assert_eq!(d, stats.krull_dim, "dim for ({n},{r})");
            assert_eq!(h, stats.h, "h for ({n},{r})");
        }
    }

    #[test]
    fn hilbert_route_agrees_with_census_route_on_nesting_complexes() {
        for (n, r) in [(4u32, 1u32), (5, 1), (5, 2), (6, 2)] {
            let complex = sigma_complex(n, r);
            let ideal = stanley_reisner_ideal(&complex);
            let stats = ideal.quotient_stats();
            let (h, d) = ideal.hilbert_h_and_dim();
            assert_eq!(d, stats.krull_dim, "dim for ({n},{r})");
            assert_eq!(h, stats.h, "h for ({n},{r})");
        }
    }

    #[test]
    fn hilbert_route_agrees_with_polarization_route_on_random_ideals() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..60 {
            let nv = rng.gen_range(2..=5usize);
            let gens: Vec<Monomial> = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let mut exps = vec![0u16; nv];
                    for _ in 0..rng.gen_range(1..=3) {
                        exps[rng.gen_range(0..nv)] += rng.gen_range(0..=2);
                    }
                    if exps.iter().all(|&e| e == 0) {
                        exps[0] = 1;
                    }
                    Monomial::from_exps(exps)
                })
                .collect();
            let ideal = MonomialIdeal::new(VarSet::anonymous(nv), gens);
            let stats = ideal.quotient_stats();
            let (h, d) = ideal.hilbert_h_and_dim();
            assert_eq!(d, stats.krull_dim, "ideal {:?}", ideal.gens());
            assert_eq!(h, stats.h, "ideal {:?}", ideal.gens());
        }
    }

    #[test]
    fn equality_criterion_on_equal_ideals() {
        let ideal = stanley_reisner_ideal(&delta_complex(5, 1));
        assert_eq!(inclusion_equality_criterion(&ideal, &ideal), Ok(true));
    }

    #[test]
    fn equality_criterion_rejects_different_multiplicities() {
        // (xy) inside (xy, xz): dimensions agree but multiplicities differ.
        let vars = VarSet::anonymous(3);
        let inner = MonomialIdeal::new(vars.clone(), [mono(3, &[(0, 1), (1, 1)])]);
        let outer = MonomialIdeal::new(
            vars,
            [mono(3, &[(0, 1), (1, 1)]), mono(3, &[(0, 1), (2, 1)])],
        );
        assert!(outer.contains_ideal(&inner));
        let si = inner.quotient_stats();
        let so = outer.quotient_stats();
        assert_eq!(si.krull_dim, so.krull_dim);
        assert_ne!(si.multiplicity, so.multiplicity);
        assert_eq!(inclusion_equality_criterion(&inner, &outer), Ok(false));
    }

    #[test]
    fn equality_criterion_requires_containment() {
        let vars = VarSet::anonymous(2);
        let a = MonomialIdeal::new(vars.clone(), [mono(2, &[(0, 1)])]);
        let b = MonomialIdeal::new(vars, [mono(2, &[(1, 1)])]);
        assert_eq!(
            inclusion_equality_criterion(&a, &b),
            Err(MonIdealError::Containment)
        );
    }
}

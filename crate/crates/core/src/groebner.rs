//! Polynomial reduction, S-polynomials, Buchberger's algorithm with the
//! coprime and chain criteria, and extraction of the initial ideal.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use thiserror::Error;

use crate::algebra::{Field, Monomial, Polynomial, VarSet, VariableOrder};
use crate::monideal::MonomialIdeal;

/// An ideal presented by generators, together with the ring data and the term
/// order the computation runs under.
#[derive(Clone, Debug)]
pub struct GeneratorSet<F: Field> {
    pub vars: VarSet,
    pub order: VariableOrder,
    pub cfg: F::Config,
    pub gens: Vec<Polynomial<F>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("S-pair budget exceeded ({budget} reductions)")]
    BudgetExceeded { budget: usize },
}

#[derive(Clone, Debug)]
pub struct BuchbergerOptions {
    pub spair_budget: usize,
    pub coprime_criterion: bool,
    pub chain_criterion: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions {
            spair_budget: 200_000,
            coprime_criterion: true,
            chain_criterion: true,
        }
    }
}

/// Outcome of a Buchberger run. `is_basis` records whether the input
/// generators were already a Groebner basis, i.e. no S-polynomial survived
/// reduction.
#[derive(Clone, Debug)]
pub struct GroebnerReport<F: Field> {
    pub is_basis: bool,
    pub spairs_considered: usize,
    pub spairs_reduced_to_zero: usize,
    pub basis: GeneratorSet<F>,
    pub initial_ideal: MonomialIdeal,
}

/// Full normal form of `f` against `basis`: no term of the result is
/// divisible by any leading monomial of the basis. The reducer for each step
/// is the first match in a fixed order (ascending leading monomial, then
/// index), so the result is deterministic.
pub fn normal_form<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    order: &VariableOrder,
) -> Polynomial<F> {
    let leads: Vec<(Monomial, F)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("zero polynomial in basis");
            (m.clone(), c.clone())
        })
        .collect();
    let mut reducer_order: Vec<usize> = (0..basis.len()).collect();
    reducer_order.sort_by(|&a, &b| {
        crate::algebra::monomial::compare(order, &leads[a].0, &leads[b].0).then(a.cmp(&b))
    });

    let mut remainder = Polynomial::zero();
    let mut work = f.clone();
    'outer: while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        for &gi in &reducer_order {
            if leads[gi].0.divides(&lm) {
                let shift = lm.div_exact(&leads[gi].0);
                let q = lc.div(&leads[gi].1);
                work = work.sub(&basis[gi].mul_term(&shift, &q));
                continue 'outer;
            }
        }
        remainder.add_term(lm.clone(), lc.clone());
        work.add_term(lm, -lc);
    }
    remainder
}

/// The S-polynomial: both inputs are scaled so their leading terms meet at
/// the lcm of the leading monomials and cancel.
pub fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    order: &VariableOrder,
) -> Polynomial<F> {
    let (fm, fc) = f.leading_term(order).expect("S-polynomial of zero");
    let (gm, gc) = g.leading_term(order).expect("S-polynomial of zero");
    let lcm = fm.lcm(gm);
    let left = f.mul_term(&lcm.div_exact(fm), &fc.inv());
    let right = g.mul_term(&lcm.div_exact(gm), &gc.inv());
    left.sub(&right)
}

/// The monomial ideal spanned by the leading monomials of the generators.
/// This is the initial ideal of the generated ideal exactly when the
/// generators form a Groebner basis.
pub fn leading_ideal<F: Field>(gens: &GeneratorSet<F>) -> MonomialIdeal {
    MonomialIdeal::new(
        gens.vars.clone(),
        gens.gens.iter().map(|g| {
            g.leading_term(&gens.order)
                .expect("zero generator")
                .0
                .clone()
        }),
    )
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// degree first) and optional coprime/chain criteria. New basis elements are
/// fully tail-reduced and made monic, so reports are canonical.
pub fn buchberger<F: Field>(
    input: &GeneratorSet<F>,
    opts: &BuchbergerOptions,
) -> Result<GroebnerReport<F>, GroebnerError> {
    assert!(!input.gens.is_empty(), "empty generator set");
    assert!(
        input.gens.iter().all(|g| !g.is_zero()),
        "zero generator in input"
    );
    let order = &input.order;
    let mut basis = input.gens.clone();
    let mut leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_term(order).unwrap().0.clone())
        .collect();

    type PairKey = Reverse<(u32, Vec<u16>, usize, usize)>;
    let mut queue: BinaryHeap<PairKey> = BinaryHeap::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pair = |queue: &mut BinaryHeap<PairKey>,
                     pending: &mut BTreeSet<(usize, usize)>,
                     leads: &[Monomial],
                     i: usize,
                     j: usize| {
        let lcm = leads[i].lcm(&leads[j]);
        queue.push(Reverse((lcm.degree(), lcm.exps().to_vec(), i, j)));
        pending.insert((i, j));
    };
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&mut queue, &mut pending, &leads, i, j);
        }
    }

    let mut spairs_considered = 0usize;
    let mut spairs_reduced_to_zero = 0usize;

    while let Some(Reverse((_, _, i, j))) = queue.pop() {
        pending.remove(&(i, j));
        let lcm = leads[i].lcm(&leads[j]);

        if opts.coprime_criterion && leads[i].is_coprime_with(&leads[j]) {
            continue;
        }
        if opts.chain_criterion {
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && leads[k].divides(&lcm)
                    && !pending.contains(&(i.min(k), i.max(k)))
                    && !pending.contains(&(j.min(k), j.max(k)))
            });
            if chained {
                continue;
            }
        }

        if spairs_considered >= opts.spair_budget {
            return Err(GroebnerError::BudgetExceeded {
                budget: opts.spair_budget,
            });
        }
        spairs_considered += 1;

        let s = s_polynomial(&basis[i], &basis[j], order);
        let nf = normal_form(&s, &basis, order);
        if nf.is_zero() {
            spairs_reduced_to_zero += 1;
        } else {
            let nf = nf.monic(order);
            let new_index = basis.len();
            leads.push(nf.leading_term(order).unwrap().0.clone());
            basis.push(nf);
            for k in 0..new_index {
                push_pair(&mut queue, &mut pending, &leads, k, new_index);
            }
        }
    }

    let is_basis = basis.len() == input.gens.len();
    let basis = GeneratorSet {
        vars: input.vars.clone(),
        order: input.order.clone(),
        cfg: input.cfg.clone(),
        gens: basis,
    };
    let initial_ideal = leading_ideal(&basis);
    Ok(GroebnerReport {
        is_basis,
        spairs_considered,
        spairs_reduced_to_zero,
        basis,
        initial_ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfaffian::{self, PfaffianInstance, TieBreak};
    use num_rational::BigRational;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    type Q = BigRational;

    fn q(k: i64) -> Q {
        Q::from_int(k, &())
    }

    fn p52() -> GeneratorSet<Q> {
        pfaffian::ideal_generators(PfaffianInstance::new(5, 2), TieBreak::default(), ())
    }

    #[test]
    fn reduce_generator_to_zero() {
        let gs = p52();
        for g in &gs.gens {
            assert!(normal_form(g, &gs.gens, &gs.order).is_zero());
        }
    }

    #[test]
    fn reduce_unit_is_identity_without_constant_leads() {
        let gs = p52();
        let one = Polynomial::term(Monomial::one(10), q(1));
        assert_eq!(normal_form(&one, &gs.gens, &gs.order), one);
    }

    #[test]
    fn reduction_postconditions() {
        let gs = p52();
        let m = expected_monomial(&[(1, 3), (2, 4)]);
        let f = Polynomial::term(m.clone(), q(1));
        let nf = normal_form(&f, &gs.gens, &gs.order);
        assert!(!nf.is_zero());
        let leads: Vec<Monomial> = gs
            .gens
            .iter()
            .map(|g| g.leading_term(&gs.order).unwrap().0.clone())
            .collect();
        for (mono, _) in nf.terms() {
            assert!(leads.iter().all(|l| !l.divides(mono)));
        }
        // The normal form sits strictly below the input.
        let (lm, _) = nf.leading_term(&gs.order).unwrap();
        assert_eq!(
            crate::algebra::monomial::compare(&gs.order, lm, &m),
            std::cmp::Ordering::Less
        );
        // Full reduction is idempotent.
        assert_eq!(normal_form(&nf, &gs.gens, &gs.order), nf);
    }

    fn expected_monomial(pairs: &[(u16, u16)]) -> Monomial {
        let mut exps = vec![0u16; 10];
        for &(i, j) in pairs {
            exps[pfaffian::var_index(5, i, j)] = 1;
        }
        Monomial::from_exps(exps)
    }

    #[test]
    fn s_polynomial_of_self_vanishes() {
        let gs = p52();
        let s = s_polynomial(&gs.gens[0], &gs.gens[0], &gs.order);
        assert!(s.is_zero());
    }

    #[test]
    fn coprime_leads_reduce_to_zero() {
        // lm(f) and lm(g) share no variable, so the S-polynomial reduces to
        // zero against the pair itself.
        let f = Polynomial::from_terms([
            (Monomial::from_exps(vec![2, 0, 0, 0]), q(1)),
            (Monomial::from_exps(vec![0, 1, 0, 0]), q(1)),
        ]);
        let g = Polynomial::from_terms([
            (Monomial::from_exps(vec![0, 0, 2, 0]), q(1)),
            (Monomial::from_exps(vec![0, 0, 0, 1]), q(-1)),
        ]);
        let order = VariableOrder::identity(4);
        let s = s_polynomial(&f, &g, &order);
        assert!(normal_form(&s, &[f, g], &order).is_zero());
    }

    #[test]
    fn pentagon_pfaffians_are_a_basis() {
        let gs = p52();
        let report = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        assert!(report.is_basis);
        assert_eq!(report.spairs_reduced_to_zero, report.spairs_considered);
        let expected = pfaffian::expected_initial_generators(PfaffianInstance::new(5, 2));
        assert_eq!(report.initial_ideal.gens(), expected.as_slice());

        // Every S-pair of generators reduces to zero against the full set.
        for i in 0..gs.gens.len() {
            for j in (i + 1)..gs.gens.len() {
                let s = s_polynomial(&gs.gens[i], &gs.gens[j], &gs.order);
                assert!(normal_form(&s, &gs.gens, &gs.order).is_zero());
            }
        }
    }

    #[test]
    fn hexagon_pfaffians_are_a_basis() {
        let gs =
            pfaffian::ideal_generators::<Q>(PfaffianInstance::new(6, 2), TieBreak::default(), ());
        let report = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        assert!(report.is_basis);
        let expected = pfaffian::expected_initial_generators(PfaffianInstance::new(6, 2));
        assert_eq!(report.initial_ideal.gens(), expected.as_slice());
        assert_eq!(report.initial_ideal.gens().len(), 15);
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        // A single 2x2 determinant.
        let det = Polynomial::from_terms([
            (Monomial::from_exps(vec![1, 0, 0, 1]), q(1)),
            (Monomial::from_exps(vec![0, 1, 1, 0]), q(-1)),
        ]);
        let gs = GeneratorSet {
            vars: VarSet::anonymous(4),
            order: VariableOrder::identity(4),
            cfg: (),
            gens: vec![det],
        };
        let report = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        assert!(report.is_basis);
        assert_eq!(report.spairs_considered, 0);
        assert_eq!(report.initial_ideal.gens().len(), 1);
    }

    #[test]
    fn criteria_do_not_change_the_initial_ideal() {
        let gs = p52();
        let with = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        let without = buchberger(
            &gs,
            &BuchbergerOptions {
                coprime_criterion: false,
                chain_criterion: false,
                ..BuchbergerOptions::default()
            },
        )
        .unwrap();
        assert_eq!(with.initial_ideal, without.initial_ideal);
        assert_eq!(with.is_basis, without.is_basis);
        assert!(without.spairs_considered >= with.spairs_considered);
    }

    #[test]
    fn initial_ideal_ignores_generator_order() {
        let gs = p52();
        let report = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        let mut permuted = gs.clone();
        permuted.gens.reverse();
        permuted.gens.swap(0, 2);
        let report2 = buchberger(&permuted, &BuchbergerOptions::default()).unwrap();
        assert_eq!(report.initial_ideal, report2.initial_ideal);
    }

    #[test]
    fn random_ideal_members_reduce_to_zero() {
        let gs = p52();
        let report = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..25 {
            let mut h = Polynomial::zero();
            for g in &gs.gens {
                let c = q(rng.gen_range(-4i64..=4));
                let exps: Vec<u16> = (0..10).map(|_| rng.gen_range(0u16..2)).collect();
                h = h.add(&g.mul_term(&Monomial::from_exps(exps), &c));
            }
            assert!(normal_form(&h, &report.basis.gens, &gs.order).is_zero());
        }
    }

    #[test]
    fn basis_growth_on_a_non_basis_input() {
        // Two cubics in k[x,y] with x > y whose basis completion adds three
        // elements; the initial ideal becomes the full square of the maximal
        // ideal in degree two.
        let x = 0usize;
        let y = 1usize;
        let mono = |pairs: &[(usize, u16)]| {
            let mut exps = vec![0u16; 2];
            for &(v, e) in pairs {
                exps[v] = e;
            }
            Monomial::from_exps(exps)
        };
        let f1 =
            Polynomial::from_terms([(mono(&[(x, 3)]), q(1)), (mono(&[(x, 1), (y, 1)]), q(-2))]);
        let f2 = Polynomial::from_terms([
            (mono(&[(x, 2), (y, 1)]), q(1)),
            (mono(&[(y, 2)]), q(-2)),
            (mono(&[(x, 1)]), q(1)),
        ]);
        let gs = GeneratorSet {
            vars: VarSet::anonymous(2),
            order: VariableOrder::from_ascending(vec![1, 0]),
            cfg: (),
            gens: vec![f1.clone(), f2.clone()],
        };
        let report = buchberger(&gs, &BuchbergerOptions::default()).unwrap();
        assert!(!report.is_basis);
        assert!(report.spairs_reduced_to_zero < report.spairs_considered);
        assert!(report.basis.gens.len() > 2);
        assert_eq!(
            report.initial_ideal.gens(),
            &[mono(&[(y, 2)]), mono(&[(x, 1), (y, 1)]), mono(&[(x, 2)])]
        );

        // The completed basis certifies: every S-pair reduces to zero.
        let basis = &report.basis.gens;
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j], &gs.order);
                assert!(normal_form(&s, basis, &gs.order).is_zero());
            }
        }
        // Ideal membership through the completed basis.
        let member = f1.mul(&f2).add(&f2.mul_term(&mono(&[(y, 3)]), &q(5)));
        assert!(normal_form(&member, basis, &gs.order).is_zero());

        // Criteria stay transparent while the basis grows.
        let bare = buchberger(
            &gs,
            &BuchbergerOptions {
                coprime_criterion: false,
                chain_criterion: false,
                ..BuchbergerOptions::default()
            },
        )
        .unwrap();
        assert_eq!(bare.initial_ideal, report.initial_ideal);
        assert!(!bare.is_basis);
    }

    #[test]
    fn budget_exhaustion_is_a_hard_error() {
        let gs = p52();
        let got = buchberger(
            &gs,
            &BuchbergerOptions {
                spair_budget: 1,
                coprime_criterion: false,
                chain_criterion: false,
            },
        );
        assert_eq!(
            got.unwrap_err(),
            GroebnerError::BudgetExceeded { budget: 1 }
        );
    }
}

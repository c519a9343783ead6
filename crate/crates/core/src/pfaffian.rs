//! The generic skew-symmetric ring: polygon diagonals as variables, the
//! distance-based variable order, Pfaffians via the signed perfect-matching
//! expansion, and the sub-Pfaffian generator sets.

use itertools::Itertools;

use crate::algebra::{Field, Label, Monomial, Polynomial, VarSet, VariableOrder};
use crate::groebner::GeneratorSet;

/// Ideal parameters: `n` is the matrix size, `r` the Pfaffian size, so the
/// generators are the Pfaffians of the `2r x 2r` principal submatrices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PfaffianInstance {
    pub n: u32,
    pub r: u32,
}

impl PfaffianInstance {
    pub fn new(n: u32, r: u32) -> Self {
        assert!(r >= 1 && 2 * r <= n, "need 1 <= 2r <= n, got n={n}, r={r}");
        PfaffianInstance { n, r }
    }
}

/// A diagonal (or edge) of the convex n-gon, `1 <= i < j <= n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Diagonal {
    pub i: u16,
    pub j: u16,
    pub distance: u32,
}

impl Diagonal {
    pub fn new(n: u32, i: u16, j: u16) -> Self {
        Diagonal {
            i,
            j,
            distance: distance(n, i, j),
        }
    }
}

/// Cyclic distance between two polygon vertices: `min(j-i, n+i-j)`.
pub fn distance(n: u32, i: u16, j: u16) -> u32 {
    assert!(
        i >= 1 && i < j && (j as u32) <= n,
        "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
    );
    ((j - i) as u32).min(n + i as u32 - j as u32)
}

/// How equal-distance variables are ordered. `SpanThenLex` is the canonical
/// choice; the alternative exists so the harness can probe how sensitive the
/// results are to the tie-break.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    #[default]
    SpanThenLex,
    Lex,
}

/// Variables of the skew-symmetric ring, one per diagonal, in lexicographic
/// `(i, j)` order.
pub fn skew_ring(n: u32) -> VarSet {
    let mut labels = Vec::new();
    for i in 1..=n as u16 {
        for j in (i + 1)..=n as u16 {
            labels.push(Label::Pair(i, j));
        }
    }
    VarSet::new(labels)
}

/// Index of `x[i,j]` in [`skew_ring`], without building the set.
pub fn var_index(n: u32, i: u16, j: u16) -> usize {
    debug_assert!(i >= 1 && i < j && (j as u32) <= n);
    let i = i as usize;
    let j = j as usize;
    let n = n as usize;
    (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
}

/// Ascending variable order: by distance, then by the requested tie-break.
pub fn variable_order(n: u32, tie: TieBreak) -> VariableOrder {
    let mut keyed: Vec<(u32, u16, u16, u16, u32)> = Vec::new();
    for i in 1..=n as u16 {
        for j in (i + 1)..=n as u16 {
            let d = distance(n, i, j);
            let span = match tie {
                TieBreak::SpanThenLex => j - i,
                TieBreak::Lex => 0,
            };
            keyed.push((d, span, i, j, var_index(n, i, j) as u32));
        }
    }
    keyed.sort_unstable();
    VariableOrder::from_ascending(keyed.into_iter().map(|(_, _, _, _, v)| v).collect())
}

/// The diagonal sets at play: all of them, those at distance `> r`, and the
/// complementary short ones.
#[derive(Clone, Debug)]
pub struct GroundSets {
    pub omega: Vec<Diagonal>,
    pub omega_r: Vec<Diagonal>,
    pub theta: Vec<Diagonal>,
}

pub fn ground_sets(n: u32, r: u32) -> GroundSets {
    let mut omega = Vec::new();
    for i in 1..=n as u16 {
        for j in (i + 1)..=n as u16 {
            omega.push(Diagonal::new(n, i, j));
        }
    }
    let omega_r = omega.iter().copied().filter(|d| d.distance > r).collect();
    let theta = omega.iter().copied().filter(|d| d.distance <= r).collect();
    GroundSets {
        omega,
        omega_r,
        theta,
    }
}

/// All perfect matchings of `0..count` together with the sign of the
/// permutation `(a1 b1 a2 b2 ...)`, pairs listed with ascending left ends.
fn signed_matchings(count: usize) -> Vec<(Vec<(usize, usize)>, i64)> {
    assert!(count.is_multiple_of(2));
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    let mut used = vec![false; count];
    fn rec(
        used: &mut [bool],
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<(Vec<(usize, usize)>, i64)>,
    ) {
        let a = match used.iter().position(|&u| !u) {
            None => {
                let mut seq = Vec::with_capacity(pairs.len() * 2);
                for &(x, y) in pairs.iter() {
                    seq.push(x);
                    seq.push(y);
                }
                let mut inversions = 0u32;
                for p in 0..seq.len() {
                    for q in (p + 1)..seq.len() {
                        if seq[p] > seq[q] {
                            inversions += 1;
                        }
                    }
                }
                let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
                out.push((pairs.clone(), sign));
                return;
            }
            Some(a) => a,
        };
        used[a] = true;
        for b in (a + 1)..used.len() {
            if !used[b] {
                used[b] = true;
                pairs.push((a, b));
                rec(used, pairs, out);
                pairs.pop();
                used[b] = false;
            }
        }
        used[a] = false;
    }
    rec(&mut used, &mut pairs, &mut out);
    out
}

/// The Pfaffian of the principal submatrix on the given sorted row/column
/// indices, as a polynomial in the full ring: the signed sum over perfect
/// matchings, `(2r-1)!!` terms with coefficients plus or minus one.
pub fn pfaffian<F: Field>(n: u32, indices: &[u32], cfg: &F::Config) -> Polynomial<F> {
    assert!(
        indices.len().is_multiple_of(2),
        "need an even number of indices"
    );
    assert!(
        indices.windows(2).all(|w| w[0] < w[1]),
        "indices must be strictly increasing"
    );
    assert!(
        indices.first().is_none_or(|&a| a >= 1) && indices.last().is_none_or(|&b| b <= n),
        "indices out of range 1..=n"
    );
    let num_vars = (n * (n - 1) / 2) as usize;
    let mut poly = Polynomial::zero();
    for (pairs, sign) in signed_matchings(indices.len()) {
        let mut exps = vec![0u16; num_vars];
        for (a, b) in pairs {
            let (i, j) = (indices[a] as u16, indices[b] as u16);
            exps[var_index(n, i, j)] += 1;
        }
        poly.add_term(Monomial::from_exps(exps), F::from_int(sign, cfg));
    }
    poly
}

/// One generator per `2r`-subset of `1..=n`: the Pfaffian ideal generators
/// paired with the distance-based variable order.
pub fn ideal_generators<F: Field>(
    inst: PfaffianInstance,
    tie: TieBreak,
    cfg: F::Config,
) -> GeneratorSet<F> {
    let gens = (1..=inst.n)
        .combinations(2 * inst.r as usize)
        .map(|subset| pfaffian(inst.n, &subset, &cfg))
        .collect();
    GeneratorSet {
        vars: skew_ring(inst.n),
        order: variable_order(inst.n, tie),
        cfg,
        gens,
    }
}

/// The squarefree monomials `x[j_1, j_{r+1}] ... x[j_r, j_{2r}]` over the
/// sorted `2r`-subsets whose r diagonals all have distance at least `r`.
/// These are exactly the minimal nonfaces of the matching crossing complex.
pub fn expected_initial_generators(inst: PfaffianInstance) -> Vec<Monomial> {
    let num_vars = (inst.n * (inst.n - 1) / 2) as usize;
    let r = inst.r as usize;
    let mut out = Vec::new();
    for subset in (1..=inst.n).combinations(2 * r) {
        let diagonals: Vec<(u16, u16)> = (0..r)
            .map(|k| (subset[k] as u16, subset[k + r] as u16))
            .collect();
        if diagonals
            .iter()
            .all(|&(i, j)| distance(inst.n, i, j) >= inst.r)
        {
            let mut exps = vec![0u16; num_vars];
            for (i, j) in diagonals {
                exps[var_index(inst.n, i, j)] = 1;
            }
            out.push(Monomial::from_exps(exps));
        }
    }
    out.sort_unstable();
    out
}

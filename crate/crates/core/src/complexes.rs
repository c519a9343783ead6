//! Simplicial complexes presented by minimal nonfaces: the crossing and
//! nesting complexes on polygon diagonals, face enumeration, f/h-vectors,
//! joins with simplices, and finite sphere certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::Label;
use crate::pfaffian::Diagonal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("enumeration budget exceeded ({budget} nodes)")]
pub struct BudgetExceeded {
    pub budget: u64,
}

/// Default node budget for face enumeration; generous for desk-scale ground
/// sets (every enumerated face costs one node).
pub const DEFAULT_ENUM_BUDGET: u64 = 50_000_000;

/// A simplicial complex on at most 64 vertices, presented by its minimal
/// nonfaces. Faces are exactly the vertex subsets containing no minimal
/// nonface; the nonface list is kept as an antichain under inclusion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    ground: Vec<Label>,
    min_nonfaces: Vec<u64>,
}

impl SimplicialComplex {
    pub fn new(ground: Vec<Label>, nonfaces: Vec<u64>) -> Self {
        assert!(ground.len() <= 64, "ground set too large for bitmask faces");
        let mut nf = nonfaces;
        nf.sort_unstable();
        nf.dedup();
        // Keep only inclusion-minimal nonfaces.
        let minimal: Vec<u64> = nf
            .iter()
            .filter(|&&a| !nf.iter().any(|&b| b != a && b & a == b))
            .copied()
            .collect();
        SimplicialComplex {
            ground,
            min_nonfaces: minimal,
        }
    }

    pub fn full_simplex(ground: Vec<Label>) -> Self {
        Self::new(ground, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }

    pub fn min_nonfaces(&self) -> &[u64] {
        &self.min_nonfaces
    }

    pub fn is_face(&self, subset: u64) -> bool {
        self.min_nonfaces.iter().all(|&nf| nf & !subset != 0)
    }

    /// Ground set extended by the vertices of a full simplex; the minimal
    /// nonfaces are unchanged.
    pub fn join_with_simplex(&self, extra: &[Label]) -> SimplicialComplex {
        for l in extra {
            assert!(
                !self.ground.contains(l),
                "join requires disjoint ground sets ({l} repeats)"
            );
        }
        let mut ground = self.ground.clone();
        ground.extend_from_slice(extra);
        assert!(ground.len() <= 64, "ground set too large for bitmask faces");
        SimplicialComplex {
            ground,
            min_nonfaces: self.min_nonfaces.clone(),
        }
    }

    /// Splits off the vertices that appear in no minimal nonface. Returns the
    /// induced complex on the remaining (support) vertices and the number of
    /// free vertices; the original complex is the join of the two.
    pub fn split_free_vertices(&self) -> (SimplicialComplex, usize) {
        let support_mask = self.min_nonfaces.iter().fold(0u64, |acc, nf| acc | nf);
        let mut new_index = vec![usize::MAX; self.ground.len()];
        let mut ground = Vec::new();
        for v in 0..self.ground.len() {
            if support_mask & (1 << v) != 0 {
                new_index[v] = ground.len();
                ground.push(self.ground[v]);
            }
        }
        let free = self.ground.len() - ground.len();
        let nonfaces = self
            .min_nonfaces
            .iter()
            .map(|&nf| {
                let mut out = 0u64;
                for v in 0..self.ground.len() {
                    if nf & (1 << v) != 0 {
                        out |= 1 << new_index[v];
                    }
                }
                out
            })
            .collect();
        (
            SimplicialComplex {
                ground,
                min_nonfaces: nonfaces,
            },
            free,
        )
    }

    fn nonfaces_by_vertex(&self) -> Vec<Vec<u64>> {
        let mut by_v = vec![Vec::new(); self.ground.len()];
        for &nf in &self.min_nonfaces {
            for v in 0..self.ground.len() {
                if nf & (1 << v) != 0 {
                    by_v[v].push(nf & !(1 << v));
                }
            }
        }
        by_v
    }

    /// Number of faces of each cardinality, `counts[k]` = faces with k
    /// vertices (so `counts[0] == 1` for the empty face). Visits every face.
    pub fn face_counts(&self, budget: u64) -> Result<Vec<u64>, BudgetExceeded> {
        let mut walker = FaceWalker::new(self, budget);
        let mut counts = vec![0u64; self.ground.len() + 1];
        walker.census(0, 0, 0, &mut counts)?;
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        Ok(counts)
    }

    /// All inclusion-maximal faces, as sorted bitmasks over the ground set.
    pub fn facets(&self, budget: u64) -> Result<Vec<u64>, BudgetExceeded> {
        let mut walker = FaceWalker::new(self, budget);
        let mut out = Vec::new();
        walker.facets(0, 0, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    /// Certificate data for "this complex looks like a sphere": purity,
    /// dimension, reduced Euler characteristic, the pseudomanifold condition,
    /// and connectivity of the top-facet graph. These are necessary
    /// conditions, not a sphere recognition.
    pub fn sphere_certificate(&self, budget: u64) -> Result<SphereCertificate, BudgetExceeded> {
        let facets = self.facets(budget)?;
        let counts = self.face_counts(budget)?;
        let dimension = counts.len() as i64 - 2;
        let pure = facets
            .iter()
            .all(|f| f.count_ones() as i64 == dimension + 1);

        let mut euler: i64 = -1;
        for (k, &c) in counts.iter().enumerate().skip(1) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            euler += sign * c as i64;
        }
        let expected = if dimension.rem_euclid(2) == 0 { 1 } else { -1 };
        let euler_ok = euler == expected;

        let top: Vec<u64> = facets
            .iter()
            .copied()
            .filter(|f| f.count_ones() as i64 == dimension + 1)
            .collect();
        let pseudomanifold_ok = if dimension < 0 {
            true
        } else {
            let mut ridge_counts = std::collections::BTreeMap::new();
            for &f in &top {
                for v in 0..self.ground.len() {
                    if f & (1 << v) != 0 {
                        *ridge_counts.entry(f & !(1 << v)).or_insert(0u32) += 1;
                    }
                }
            }
            if dimension == 0 {
                top.len() == 2
            } else {
                !top.is_empty() && ridge_counts.values().all(|&c| c == 2)
            }
        };

        // For dimension <= 0 a sphere is two points or the empty complex,
        // so the adjacency condition is vacuous.
        let connected_ok = if dimension <= 0 {
            true
        } else {
            let mut seen = vec![false; top.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..top.len() {
                    if !seen[j] && (top[i] & top[j]).count_ones() as i64 == dimension {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };

        Ok(SphereCertificate {
            pure,
            dimension,
            euler,
            euler_ok,
            pseudomanifold_ok,
            connected_ok,
        })
    }
}

/// Shared state for the backtracking face enumerators. A vertex can extend a
/// face when no minimal nonface becomes fully contained; each visited face
/// costs one budget node.
struct FaceWalker {
    vertex_count: usize,
    nonfaces_by_vertex: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl FaceWalker {
    fn new(complex: &SimplicialComplex, budget: u64) -> Self {
        FaceWalker {
            vertex_count: complex.ground.len(),
            nonfaces_by_vertex: complex.nonfaces_by_vertex(),
            nodes: 0,
            budget,
        }
    }

    fn charge(&mut self) -> Result<(), BudgetExceeded> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn can_add(&self, face: u64, v: usize) -> bool {
        self.nonfaces_by_vertex[v]
            .iter()
            .all(|&rest| rest & !face != 0)
    }

    fn census(
        &mut self,
        face: u64,
        size: usize,
        next: usize,
        counts: &mut [u64],
    ) -> Result<(), BudgetExceeded> {
        self.charge()?;
        counts[size] += 1;
        for v in next..self.vertex_count {
            if self.can_add(face, v) {
                self.census(face | (1 << v), size + 1, v + 1, counts)?;
            }
        }
        Ok(())
    }

    fn facets(&mut self, face: u64, next: usize, out: &mut Vec<u64>) -> Result<(), BudgetExceeded> {
        self.charge()?;
        let mut extendable = false;
        for v in 0..self.vertex_count {
            if face & (1 << v) != 0 {
                continue;
            }
            if self.can_add(face, v) {
                extendable = true;
                if v >= next {
                    self.facets(face | (1 << v), v + 1, out)?;
                }
            }
        }
        if !extendable {
            out.push(face);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereCertificate {
    pub pure: bool,
    pub dimension: i64,
    pub euler: i64,
    pub euler_ok: bool,
    pub pseudomanifold_ok: bool,
    pub connected_ok: bool,
}

impl SphereCertificate {
    pub fn all_ok(&self) -> bool {
        self.pure && self.euler_ok && self.pseudomanifold_ok && self.connected_ok
    }
}

/// The f-vector `(f_{-1}=1, f_0, ..., f_dim)` and the h-vector
/// `(h_0, ..., h_d)` with `d = dim + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FHVectors {
    pub f: Vec<i64>,
    pub h: Vec<i64>,
}

impl FHVectors {
    /// h with trailing zero coefficients dropped: the honest h-polynomial.
    pub fn h_polynomial(&self) -> Vec<i64> {
        let mut h = self.h.clone();
        while h.len() > 1 && *h.last().unwrap() == 0 {
            h.pop();
        }
        h
    }
}

pub fn binomial_i128(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// f-vector and h-vector from the face counts returned by
/// [`SimplicialComplex::face_counts`].
pub fn f_h_from_counts(counts: &[u64]) -> FHVectors {
    let d = counts.len() as i64 - 1;
    let f: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
    let mut h = Vec::with_capacity(counts.len());
    for j in 0..=d {
        let mut hj: i128 = 0;
        for i in 0..=j {
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            hj += sign * binomial_i128(d - i, j - i) * f[i as usize] as i128;
        }
        h.push(i64::try_from(hj).expect("h-vector entry overflows i64"));
    }
    FHVectors { f, h }
}

/// Inverse transform: the f-vector determined by an h-vector padded to
/// length `d + 1`.
pub fn f_from_h(h: &[i64], d: usize) -> Vec<i64> {
    let mut f = Vec::with_capacity(d + 1);
    for j in 0..=d as i64 {
        let mut fj: i128 = 0;
        for (i, &hi) in h.iter().enumerate().take(j as usize + 1) {
            fj += binomial_i128(d as i64 - i as i64, j - i as i64) * hi as i128;
        }
        f.push(i64::try_from(fj).expect("f-vector entry overflows i64"));
    }
    f
}

/// Transversal intersection in the interior of the polygon: the endpoints
/// interleave strictly.
pub fn crossing(d1: Diagonal, d2: Diagonal) -> bool {
    let (a, b) = (d1.i, d1.j);
    let (c, d) = (d2.i, d2.j);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Strict nesting: one diagonal lies strictly inside the other.
pub fn nested(d1: Diagonal, d2: Diagonal) -> bool {
    let (a, b) = (d1.i, d1.j);
    let (c, d) = (d2.i, d2.j);
    (a < c && d < b) || (c < a && b < d)
}

fn all_diagonals(n: u32) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for i in 1..=n as u16 {
        for j in (i + 1)..=n as u16 {
            out.push(Diagonal::new(n, i, j));
        }
    }
    out
}

/// All `size`-subsets of vertices that are pairwise adjacent.
fn cliques(adjacency: &[u64], size: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if size == 0 {
        return out;
    }
    fn rec(adj: &[u64], clique: u64, cand_from: usize, left: usize, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(clique);
            return;
        }
        for v in cand_from..adj.len() {
            if clique & !adj[v] == 0 {
                rec(adj, clique | (1 << v), v + 1, left - 1, out);
            }
        }
    }
    rec(adjacency, 0, 0, size, &mut out);
    out
}

fn complex_from_predicate(
    diagonals: Vec<Diagonal>,
    nonface_size: usize,
    pred: impl Fn(Diagonal, Diagonal) -> bool,
) -> SimplicialComplex {
    let k = diagonals.len();
    assert!(k <= 64, "ground set too large");
    let mut adj = vec![0u64; k];
    for a in 0..k {
        for b in 0..k {
            if a != b && pred(diagonals[a], diagonals[b]) {
                adj[a] |= 1 << b;
            }
        }
    }
    let nonfaces = cliques(&adj, nonface_size);
    let ground = diagonals
        .into_iter()
        .map(|d| Label::Pair(d.i, d.j))
        .collect();
    SimplicialComplex::new(ground, nonfaces)
}

/// The crossing complex: ground set is the diagonals at distance `> r`, and
/// the minimal nonfaces are the `(r+1)`-subsets of pairwise-crossing
/// diagonals.
pub fn delta_complex(n: u32, r: u32) -> SimplicialComplex {
    assert!(
        n >= 1 && 2 * r <= n.saturating_sub(1),
        "need 0 <= 2r <= n-1"
    );
    let diagonals = all_diagonals(n)
        .into_iter()
        .filter(|d| d.distance > r)
        .collect();
    complex_from_predicate(diagonals, r as usize + 1, crossing)
}

/// The nesting complex: ground set is every diagonal, and the minimal
/// nonfaces are the `(r+1)`-subsets of pairwise-nested diagonals.
pub fn sigma_complex(n: u32, r: u32) -> SimplicialComplex {
    complex_from_predicate(all_diagonals(n), r as usize + 1, nested)
}

fn integral_product(terms: impl Iterator<Item = (i64, i64)>) -> u64 {
    let mut acc = BigRational::one();
    for (num, den) in terms {
        acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    assert!(
        acc.is_integer() && !acc.is_negative(),
        "product expected to be a nonnegative integer, got {acc}"
    );
    u64::try_from(acc.to_integer()).expect("product overflows u64")
}

/// Exact product for the number of top-dimensional faces of the crossing
/// complex with parameters `(n, r)`.
pub fn facet_count_formula(n: u32, r: u32) -> u64 {
    assert!(2 * r <= n.saturating_sub(1), "need 0 <= 2r <= n-1");
    let m = (n - 2 * r - 1) as i64;
    let r = r as i64;
    integral_product((1..=m).flat_map(move |i| (i..=m).map(move |j| (2 * r + i + j, i + j))))
}

/// Exact product for the multiplicity of the Pfaffian quotient ring with
/// ideal parameter `r`.
pub fn multiplicity_formula(n: u32, r: u32) -> u64 {
    assert!(r >= 1 && 2 * r <= n, "need 1 <= 2r <= n");
    let m = (n - 2 * r + 1) as i64;
    let r = r as i64;
    integral_product((1..=m).flat_map(move |i| (i..=m).map(move |j| (2 * (r - 1) + i + j, i + j))))
}

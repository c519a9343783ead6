//! Stack polyominoes: validation, content, the row-major variable order,
//! determinantal generator sets from r x r minors, r-diagonal enumeration,
//! and the associated nonface complexes.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::algebra::{Field, Label, Monomial, Polynomial, VarSet, VariableOrder};
use crate::complexes::SimplicialComplex;
use crate::groebner::GeneratorSet;

/// A cell `(row, column)`, 1-based, with row 1 at the top of the matrix.
pub type Cell = (u16, u16);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StackError {
    #[error("empty cell set")]
    Empty,
    #[error("column gap: cell ({0},{1}) missing")]
    ColumnGap(u16, u16),
    #[error("row gap: cell ({0},{1}) missing")]
    RowGap(u16, u16),
}

/// A stack polyomino: columns are filled from row 1 downwards and every row
/// is an interval of columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StackPolyomino {
    cells: BTreeSet<Cell>,
    columns: Vec<(u16, u16)>, // (column index, height), ascending by column
}

/// Checks the two stack conditions and names the first violated cell.
pub fn validate_stack(cells: impl IntoIterator<Item = Cell>) -> Result<StackPolyomino, StackError> {
    let cells: BTreeSet<Cell> = cells.into_iter().collect();
    if cells.is_empty() {
        return Err(StackError::Empty);
    }
    let mut columns: Vec<(u16, u16)> = Vec::new();
    for &(a, b) in &cells {
        assert!(a >= 1 && b >= 1, "cells are 1-based");
        match columns.iter_mut().find(|(col, _)| *col == b) {
            Some((_, h)) => *h = (*h).max(a),
            None => columns.push((b, a)),
        }
    }
    columns.sort_unstable();
    // Columns must be filled from row 1 down to their height.
    for &(b, h) in &columns {
        for a in 1..=h {
            if !cells.contains(&(a, b)) {
                return Err(StackError::ColumnGap(a, b));
            }
        }
    }
    // Each row must be an interval of columns.
    let max_height = columns.iter().map(|&(_, h)| h).max().unwrap();
    for a in 1..=max_height {
        let occupied: Vec<u16> = columns
            .iter()
            .filter(|&&(_, h)| h >= a)
            .map(|&(b, _)| b)
            .collect();
        for d in occupied[0]..=*occupied.last().unwrap() {
            if !occupied.contains(&d) {
                return Err(StackError::RowGap(a, d));
            }
        }
    }
    Ok(StackPolyomino { cells, columns })
}

/// Column heights arranged in decreasing order; the height profile of the
/// content of any stack with these heights.
pub fn sorted_heights(heights: &[u16]) -> Vec<u16> {
    let mut hs = heights.to_vec();
    hs.sort_unstable_by(|a, b| b.cmp(a));
    hs
}

impl StackPolyomino {
    /// Builds the stack with the given column heights in columns `1..=m`.
    pub fn from_heights(heights: &[u16]) -> Result<Self, StackError> {
        assert!(
            heights.iter().all(|&h| h >= 1),
            "column heights must be positive"
        );
        let mut cells = Vec::new();
        for (k, &h) in heights.iter().enumerate() {
            for a in 1..=h {
                cells.push((a, k as u16 + 1));
            }
        }
        validate_stack(cells)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    /// `(column, height)` pairs, ascending by column index.
    pub fn columns(&self) -> &[(u16, u16)] {
        &self.columns
    }

    pub fn heights(&self) -> Vec<u16> {
        self.columns.iter().map(|&(_, h)| h).collect()
    }

    /// The Ferrers diagram with the same column heights sorted decreasingly,
    /// renumbered into columns `1..=m`.
    pub fn content(&self) -> StackPolyomino {
        StackPolyomino::from_heights(&sorted_heights(&self.heights()))
            .expect("decreasing heights always form a stack")
    }

    pub fn is_ferrers(&self) -> bool {
        let contiguous = self
            .columns
            .iter()
            .enumerate()
            .all(|(k, &(b, _))| b == k as u16 + 1);
        let heights = self.heights();
        contiguous && heights.windows(2).all(|w| w[0] >= w[1])
    }

    /// One ring variable per cell, in row-major `(row, column)` order.
    pub fn var_set(&self) -> VarSet {
        VarSet::new(self.cells.iter().map(|&(a, b)| Label::Pair(a, b)).collect())
    }

    /// Ascending variable order: deeper rows first, then left to right.
    pub fn variable_order(&self) -> VariableOrder {
        let vars = self.var_set();
        let mut keyed: Vec<(i32, u16, u32)> = self
            .cells
            .iter()
            .map(|&(a, b)| {
                (
                    -(a as i32),
                    b,
                    vars.index_of(Label::Pair(a, b)).unwrap() as u32,
                )
            })
            .collect();
        keyed.sort_unstable();
        VariableOrder::from_ascending(keyed.into_iter().map(|(_, _, v)| v).collect())
    }

    /// All r-diagonals: cells strictly increasing in rows and columns whose
    /// full r x r grid lies inside the polyomino.
    pub fn r_diagonals(&self, r: usize) -> Vec<Vec<Cell>> {
        assert!(r >= 1);
        let rows: Vec<u16> = self
            .cells
            .iter()
            .map(|&(a, _)| a)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cols: Vec<u16> = self.columns.iter().map(|&(b, _)| b).collect();
        let mut out = Vec::new();
        for alpha in rows.iter().copied().combinations(r) {
            for beta in cols.iter().copied().combinations(r) {
                let full_grid = alpha
                    .iter()
                    .all(|&a| beta.iter().all(|&b| self.cells.contains(&(a, b))));
                if full_grid {
                    out.push(alpha.iter().copied().zip(beta.iter().copied()).collect());
                }
            }
        }
        out
    }

    /// The nonzero r x r minors of the generic matrix supported on the cells,
    /// paired with the row-major variable order.
    pub fn determinantal_generators<F: Field>(&self, r: usize, cfg: F::Config) -> GeneratorSet<F> {
        assert!(r >= 1);
        let vars = self.var_set();
        let order = self.variable_order();
        let rows: Vec<u16> = self
            .cells
            .iter()
            .map(|&(a, _)| a)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let cols: Vec<u16> = self.columns.iter().map(|&(b, _)| b).collect();
        let mut gens = Vec::new();
        for alpha in rows.iter().copied().combinations(r) {
            for beta in cols.iter().copied().combinations(r) {
                let full_grid = alpha
                    .iter()
                    .all(|&a| beta.iter().all(|&b| self.cells.contains(&(a, b))));
                if !full_grid {
                    continue;
                }
                gens.push(self.minor::<F>(&vars, &alpha, &beta, &cfg));
            }
        }
        GeneratorSet {
            vars,
            order,
            cfg,
            gens,
        }
    }

    /// Signed permutation expansion of one minor: r! terms, coefficients
    /// plus or minus one.
    fn minor<F: Field>(
        &self,
        vars: &VarSet,
        alpha: &[u16],
        beta: &[u16],
        cfg: &F::Config,
    ) -> Polynomial<F> {
        let r = alpha.len();
        let mut det = Polynomial::zero();
        for perm in (0..r).permutations(r) {
            let mut inversions = 0u32;
            for p in 0..r {
                for s in (p + 1)..r {
                    if perm[p] > perm[s] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            let support = (0..r).map(|i| {
                vars.index_of(Label::Pair(alpha[i], beta[perm[i]]))
                    .expect("grid cell missing from ring")
            });
            det.add_term(
                Monomial::from_support(vars.len(), support),
                F::from_int(sign, cfg),
            );
        }
        det
    }

    /// Ground set is the cell set; the minimal nonfaces are the r-diagonals.
    pub fn complex(&self, r: usize) -> SimplicialComplex {
        let vars = self.var_set();
        let nonfaces = self
            .r_diagonals(r)
            .into_iter()
            .map(|diag| {
                diag.into_iter().fold(0u64, |acc, (a, b)| {
                    acc | (1 << vars.index_of(Label::Pair(a, b)).unwrap())
                })
            })
            .collect();
        SimplicialComplex::new(vars.labels().to_vec(), nonfaces)
    }

    /// The main-diagonal monomials of the admissible grids: the expected
    /// minimal generators of the initial ideal of the minors.
    pub fn expected_initial_generators(&self, r: usize) -> Vec<Monomial> {
        let vars = self.var_set();
        let mut out: Vec<Monomial> = self
            .r_diagonals(r)
            .into_iter()
            .map(|diag| {
                Monomial::from_support(
                    vars.len(),
                    diag.into_iter()
                        .map(|(a, b)| vars.index_of(Label::Pair(a, b)).unwrap()),
                )
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{f_h_from_counts, DEFAULT_ENUM_BUDGET};
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn validation_examples() {
        let bump = StackPolyomino::from_heights(&[2, 3, 2]).unwrap();
        assert!(!bump.is_ferrers());
        assert_eq!(bump.cell_count(), 7);

        let ferrers = StackPolyomino::from_heights(&[3, 2, 2]).unwrap();
        assert!(ferrers.is_ferrers());

        assert_eq!(
            validate_stack([(1, 1), (3, 1)]),
            Err(StackError::ColumnGap(2, 1))
        );
        // Heights (3,1,3) leave a hole in row 2.
        let cells = [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (3, 3)];
        assert_eq!(validate_stack(cells), Err(StackError::RowGap(2, 2)));
    }

    #[test]
    fn content_sorts_heights() {
        let bump = StackPolyomino::from_heights(&[2, 3, 2]).unwrap();
        assert_eq!(bump.content().heights(), vec![3, 2, 2]);
        let ferrers = StackPolyomino::from_heights(&[4, 2, 1]).unwrap();
        assert_eq!(ferrers.content(), ferrers);
        assert_eq!(sorted_heights(&[1, 4, 2, 4]), vec![4, 4, 2, 1]);
    }

    #[test]
    fn row_major_variable_order() {
        let grid = StackPolyomino::from_heights(&[2, 2]).unwrap();
        let vars = grid.var_set();
        let order = grid.variable_order();
        let got: Vec<Label> = (0..4).map(|k| vars.label(order.var_at_rank(k))).collect();
        let want: Vec<Label> = [(2, 1), (2, 2), (1, 1), (1, 2)]
            .iter()
            .map(|&(a, b)| Label::Pair(a, b))
            .collect();
        assert_eq!(got, want);

        let row = StackPolyomino::from_heights(&[1, 1, 1]).unwrap();
        let ro = row.variable_order();
        let rv = row.var_set();
        let got: Vec<Label> = (0..3).map(|k| rv.label(ro.var_at_rank(k))).collect();
        assert_eq!(
            got,
            vec![Label::Pair(1, 1), Label::Pair(1, 2), Label::Pair(1, 3)]
        );

        let column = validate_stack([(1, 1), (2, 1), (3, 1)]).unwrap();
        let co = column.variable_order();
        let cv = column.var_set();
        let got: Vec<Label> = (0..3).map(|k| cv.label(co.var_at_rank(k))).collect();
        assert_eq!(
            got,
            vec![Label::Pair(3, 1), Label::Pair(2, 1), Label::Pair(1, 1)]
        );
    }

    #[test]
    fn single_minor_for_the_square_grid() {
        let grid = StackPolyomino::from_heights(&[2, 2]).unwrap();
        let gs = grid.determinantal_generators::<Q>(2, ());
        assert_eq!(gs.gens.len(), 1);
        let det = &gs.gens[0];
        assert_eq!(det.term_count(), 2);
        let vars = grid.var_set();
        let main = Monomial::from_support(
            4,
            [
                vars.index_of(Label::Pair(1, 1)).unwrap(),
                vars.index_of(Label::Pair(2, 2)).unwrap(),
            ],
        );
        assert_eq!(det.coefficient(&main), Some(&Q::from_int(1, &())));
        let (lm, _) = det.leading_term(&gs.order).unwrap();
        assert_eq!(lm, &main);
    }

    #[test]
    fn no_minor_without_a_full_grid() {
        let bump = StackPolyomino::from_heights(&[2, 3, 2]).unwrap();
        let gs = bump.determinantal_generators::<Q>(3, ());
        assert!(gs.gens.is_empty());
        assert!(bump.r_diagonals(3).is_empty());
    }

    #[test]
    fn size_one_minors_are_the_variables() {
        let bump = StackPolyomino::from_heights(&[2, 3, 2]).unwrap();
        let gs = bump.determinantal_generators::<Q>(1, ());
        assert_eq!(gs.gens.len(), bump.cell_count());
        assert!(gs.gens.iter().all(|g| g.term_count() == 1));
    }

    #[test]
    fn minor_counts_for_grids() {
        let grid = StackPolyomino::from_heights(&[3, 3, 3]).unwrap();
        assert_eq!(grid.determinantal_generators::<Q>(2, ()).gens.len(), 9);
        assert_eq!(grid.determinantal_generators::<Q>(3, ()).gens.len(), 1);
        let bump = StackPolyomino::from_heights(&[2, 3, 2]).unwrap();
        assert_eq!(bump.determinantal_generators::<Q>(2, ()).gens.len(), 3);
    }

    #[test]
    fn square_grid_complex() {
        let grid = StackPolyomino::from_heights(&[2, 2]).unwrap();
        let complex = grid.complex(2);
        assert_eq!(complex.min_nonfaces().len(), 1);
        let facets = complex.facets(DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(facets.len(), 2);
        assert!(facets.iter().all(|f| f.count_ones() == 3));
        let fh = f_h_from_counts(&complex.face_counts(DEFAULT_ENUM_BUDGET).unwrap());
        assert_eq!(fh.f, vec![1, 4, 5, 2]);
    }

    #[test]
    fn oversized_diagonals_leave_a_full_simplex() {
        let grid = StackPolyomino::from_heights(&[2, 2]).unwrap();
        let complex = grid.complex(5);
        assert!(complex.min_nonfaces().is_empty());
    }

    #[test]
    fn expected_generators_for_the_two_by_three_grid() {
        let grid = StackPolyomino::from_heights(&[2, 2, 2]).unwrap();
        let vars = grid.var_set();
        let got = grid.expected_initial_generators(2);
        let want: Vec<Monomial> = [[(1, 1), (2, 2)], [(1, 1), (2, 3)], [(1, 2), (2, 3)]]
            .iter()
            .map(|pairs| {
                Monomial::from_support(
                    vars.len(),
                    pairs
                        .iter()
                        .map(|&(a, b)| vars.index_of(Label::Pair(a, b)).unwrap()),
                )
            })
            .collect();
        assert_eq!(got.len(), 3);
        for m in want {
            assert!(got.contains(&m));
        }
    }

    #[test]
    fn leading_terms_are_the_main_diagonals() {
        // Minors and r-diagonals are produced in the same (rows, columns)
        // combination order, so they align index by index.
        let stacks: [&[u16]; 6] = [
            &[2, 2],
            &[2, 2, 2],
            &[3, 3, 3],
            &[2, 3, 2],
            &[1, 3, 2],
            &[2, 2, 3],
        ];
        for heights in stacks {
            let stack = StackPolyomino::from_heights(heights).unwrap();
            let vars = stack.var_set();
            let order = stack.variable_order();
            for r in 1..=3usize {
                let gens = stack.determinantal_generators::<Q>(r, ());
                let diagonals = stack.r_diagonals(r);
                assert_eq!(gens.gens.len(), diagonals.len());
                for (minor, diagonal) in gens.gens.iter().zip(&diagonals) {
                    let want = Monomial::from_support(
                        vars.len(),
                        diagonal
                            .iter()
                            .map(|&(a, b)| vars.index_of(Label::Pair(a, b)).unwrap()),
                    );
                    let (lm, _) = minor.leading_term(&order).unwrap();
                    assert_eq!(lm, &want, "heights {heights:?}, r = {r}");
                }
            }
        }
    }

    #[test]
    fn minor_expansions_match_the_cofactor_oracle() {
        use crate::verify::cofactor_determinant;
        use itertools::Itertools;

        let grid = StackPolyomino::from_heights(&[3, 3, 3]).unwrap();
        let vars = grid.var_set();
        let one = Polynomial::term(Monomial::one(9), Q::from_int(1, &()));
        let entry = |a: u16, b: u16| {
            Polynomial::term(
                Monomial::var(9, vars.index_of(Label::Pair(a, b)).unwrap()),
                Q::from_int(1, &()),
            )
        };

        for r in [2usize, 3] {
            let gens = grid.determinantal_generators::<Q>(r, ());
            let mut oracle = Vec::new();
            for alpha in (1..=3u16).combinations(r) {
                for beta in (1..=3u16).combinations(r) {
                    let matrix: Vec<Vec<Polynomial<Q>>> = alpha
                        .iter()
                        .map(|&a| beta.iter().map(|&b| entry(a, b)).collect())
                        .collect();
                    oracle.push(cofactor_determinant(&matrix, one.clone()));
                }
            }
            assert_eq!(gens.gens, oracle, "r = {r}");
            for g in &gens.gens {
                assert_eq!(g.term_count(), (1..=r).product::<usize>());
                for (_, c) in g.terms() {
                    assert!(*c == Q::from_int(1, &()) || *c == Q::from_int(-1, &()));
                }
            }
        }
    }

    #[test]
    fn same_content_stacks_have_equal_f_vectors() {
        let a = StackPolyomino::from_heights(&[2, 3, 2]).unwrap();
        let b = a.content();
        let fa = f_h_from_counts(&a.complex(2).face_counts(DEFAULT_ENUM_BUDGET).unwrap());
        let fb = f_h_from_counts(&b.complex(2).face_counts(DEFAULT_ENUM_BUDGET).unwrap());
        assert_eq!(fa.f, fb.f);
    }
}

//! Exact multivariate polynomial arithmetic over an indexed variable set,
//! with a pluggable total variable order extended degree-reverse-lexicographically.

pub mod coeff;
pub mod monomial;
pub mod polynomial;

pub use coeff::{is_prime_u64, Field, Gf};
pub use monomial::Monomial;
pub use polynomial::Polynomial;

use std::collections::BTreeMap;
use std::fmt;

/// What a ring variable stands for: a bare index, a pair such as a polygon
/// diagonal `(i,j)` or a matrix cell `(a,b)`, or a polarization copy of
/// another variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Label {
    Var(u32),
    Pair(u16, u16),
    Split { base: u32, layer: u16 },
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Var(i) => write!(f, "x[{i}]"),
            Label::Pair(a, b) => write!(f, "x[{a},{b}]"),
            Label::Split { base, layer } => write!(f, "x[v{base}.{layer}]"),
        }
    }
}

/// The variable set of one polynomial ring. Indices are contiguous from 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSet {
    labels: Vec<Label>,
    index: BTreeMap<Label, usize>,
}

impl VarSet {
    pub fn new(labels: Vec<Label>) -> Self {
        let mut index = BTreeMap::new();
        for (i, &l) in labels.iter().enumerate() {
            let previous = index.insert(l, i);
            assert!(previous.is_none(), "duplicate variable label {l}");
        }
        VarSet { labels, index }
    }

    pub fn anonymous(n: usize) -> Self {
        Self::new((0..n as u32).map(Label::Var).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, var: usize) -> Label {
        self.labels[var]
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.index.get(&label).copied()
    }
}

/// Total order on the variables of one ring; rank 0 is the smallest variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VariableOrder {
    rank: Vec<u32>,
    by_rank: Vec<u32>,
}

impl VariableOrder {
    /// Builds the order from the list of variables in ascending order.
    pub fn from_ascending(by_rank: Vec<u32>) -> Self {
        let n = by_rank.len();
        let mut rank = vec![u32::MAX; n];
        for (pos, &v) in by_rank.iter().enumerate() {
            assert!((v as usize) < n, "variable index out of range");
            assert_eq!(rank[v as usize], u32::MAX, "variable listed twice");
            rank[v as usize] = pos as u32;
        }
        VariableOrder { rank, by_rank }
    }

    /// Variable indices in their natural 0..n order.
    pub fn identity(n: usize) -> Self {
        Self::from_ascending((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }

    pub fn rank_of(&self, var: usize) -> u32 {
        self.rank[var]
    }

    pub fn var_at_rank(&self, rank: usize) -> usize {
        self.by_rank[rank] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_a_bijection() {
        let ord = VariableOrder::from_ascending(vec![2, 0, 1]);
        assert_eq!(ord.rank_of(2), 0);
        assert_eq!(ord.rank_of(0), 1);
        assert_eq!(ord.var_at_rank(2), 1);
    }

    #[test]
    #[should_panic(expected = "variable listed twice")]
    fn variable_order_rejects_repeats() {
        VariableOrder::from_ascending(vec![0, 0, 1]);
    }

    #[test]
    fn varset_lookup() {
        let vs = VarSet::new(vec![Label::Pair(1, 2), Label::Pair(1, 3)]);
        assert_eq!(vs.index_of(Label::Pair(1, 3)), Some(1));
        assert_eq!(vs.index_of(Label::Pair(2, 3)), None);
        assert_eq!(vs.label(0).to_string(), "x[1,2]");
    }
}

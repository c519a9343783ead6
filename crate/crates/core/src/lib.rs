//! Exact computational commutative algebra for ideal families whose initial
//! ideals are squarefree: sub-Pfaffian ideals of a generic skew-symmetric
//! matrix and minor ideals of stack polyominoes, together with the
//! combinatorics (crossing and nesting complexes, Hilbert data) needed to
//! certify what their Groebner bases and initial ideals look like.
//!
//! The polynomial core is generic over the coefficient [`Field`]; the two
//! concrete scalars are exact rationals and a prime field with a runtime
//! modulus.

pub mod algebra;
pub mod complexes;
pub mod groebner;
pub mod monideal;
pub mod pfaffian;
pub mod polyomino;
pub mod verify;

pub use algebra::{Field, Gf, Label, Monomial, Polynomial, VarSet, VariableOrder};

/// Exact rational coefficients, the default scalar type.
pub type Rational = num_rational::BigRational;

/// Polynomials over the rationals.
pub type QPolynomial = Polynomial<Rational>;
/// Polynomials over a prime field with runtime modulus.
pub type GfPolynomial = Polynomial<Gf>;
/// Generator sets over the rationals.
pub type QGeneratorSet = groebner::GeneratorSet<Rational>;
/// Generator sets over a prime field.
pub type GfGeneratorSet = groebner::GeneratorSet<Gf>;

/// Default prime-field modulus.
pub const DEFAULT_PRIME: u64 = 32003;

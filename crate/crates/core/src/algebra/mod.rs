//! Exact scalars, polynomials and linear algebra.

pub mod linear;
pub mod poly;
pub mod rational;
pub mod ring;

pub use linear::{solve_linear, LinearSolution};
pub use poly::{Monomial, Poly, Var, VarTable, MAX_VARS};
pub use rational::{binomial, Rational};
pub use ring::{determinant, pfaffian, q_straighten, PolyRing, RingOps};

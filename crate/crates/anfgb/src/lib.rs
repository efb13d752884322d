//! Exact computation of reduced Gröbner bases for polynomial ideals over an
//! algebraic number field K = Q(α), where α is a root of a monic irreducible
//! polynomial f over Q.
//!
//! The main entry point is [`frontend::nfmodstd`], which replaces α by a tag
//! variable t, computes the reduced Gröbner basis of the tagged ideal
//! ⟨H̃, f(t)⟩ under a block order by a two-level modular scheme, and maps the
//! result back to K:
//!
//! * level one reduces the problem modulo machine-word primes p for which
//!   f stays squarefree and splits (type-A primes),
//! * level two factors f mod p and computes one Gröbner basis per factor —
//!   these run over small quotient rings and are the cheap core of the method,
//! * per-prime results are recombined by Chinese remaindering of polynomials,
//!   per-monomial integer CRT across primes, and Farey lifting back to Q,
//! * the candidate is screened at a fresh prime and then verified exactly.
//!
//! An independent check is available in [`oracle`]: Buchberger's algorithm run
//! directly over K with every intermediate basis element normalized to be
//! monic. It shares the generic Gröbner engine but none of the modular
//! machinery, so the two routes agree only if both are right.

pub mod arith;
pub mod error;
pub mod field;
pub mod frontend;
pub mod groebner;
pub mod modular;
pub mod mpoly;
pub mod oracle;
pub mod sigbuch;
pub mod upoly;

pub use error::Error;

//! Sparse multivariate polynomials and monomial orders.
//!
//! A [`Monomial`] is an exponent vector; by convention the tag variable t
//! (the stand-in for the field generator α) always occupies the **last**
//! slot. Three global orders are supported: lex, degrevlex, and the block
//! order used by the modular engine — an elimination product order that
//! compares the X-block first under a base order and the t exponent only on
//! ties, so X^a exceeds every power of t whenever a ≠ 0.
//!
//! A [`MultiPoly`] stores its terms strictly decreasing under the ambient
//! order, which every operation takes explicitly as a parameter.

use crate::arith::Fp;
use crate::error::Error;
use crate::field::CoeffField;
use num::{BigInt, BigRational, Zero};
use std::cmp::Ordering;

/// An exponent vector. Slot `i` is the exponent of the `i`-th variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity(), rhs.arity(), "monomial arity mismatch");
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise quotient, if `rhs` divides `self`.
    pub fn try_div(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.arity(), rhs.arity(), "monomial arity mismatch");
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }

    pub fn divides(&self, rhs: &Self) -> bool {
        assert_eq!(self.arity(), rhs.arity(), "monomial arity mismatch");
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        assert_eq!(self.arity(), rhs.arity(), "monomial arity mismatch");
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True if the two monomials share no variable.
    pub fn coprime_with(&self, rhs: &Self) -> bool {
        assert_eq!(self.arity(), rhs.arity(), "monomial arity mismatch");
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent of the tag variable (the last slot).
    pub fn t_exp(&self) -> u32 {
        *self.0.last().expect("empty monomial")
    }

    /// Copy with the tag exponent replaced.
    pub fn with_t_exp(&self, e: u32) -> Self {
        let mut v = self.0.clone();
        *v.last_mut().expect("empty monomial") = e;
        Monomial(v)
    }
}

/// Base orders for a single block of variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BaseOrder {
    Lex,
    DegRevLex,
}

impl BaseOrder {
    fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            BaseOrder::Lex => {
                for (x, y) in a.iter().zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            BaseOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // Ties: smaller exponent in the last differing variable wins.
                for (x, y) in a.iter().zip(b).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A global monomial order.
///
/// `Product(base)` is the block order: the leading block (all slots but the
/// last) is compared under `base`, and the trailing t slot decides ties by
/// degree. It is an elimination order for the X-block.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Product(BaseOrder),
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.arity(), b.arity(), "monomial arity mismatch");
        match self {
            MonomialOrder::Lex => BaseOrder::Lex.compare(&a.0, &b.0),
            MonomialOrder::DegRevLex => BaseOrder::DegRevLex.compare(&a.0, &b.0),
            MonomialOrder::Product(base) => {
                let k = a.arity() - 1;
                base.compare(&a.0[..k], &b.0[..k])
                    .then_with(|| a.0[k].cmp(&b.0[k]))
            }
        }
    }
}

/// A sparse polynomial: terms strictly decreasing under the ambient order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<F> {
    terms: Vec<(Monomial, F)>,
}

impl<F: CoeffField> MultiPoly<F> {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, F)>, order: MonomialOrder) -> Self {
        terms.sort_by(|(m1, _), (m2, _)| order.compare(m2, m1));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.plus(&c),
                _ => {
                    // Drop a completed zero before starting the next monomial.
                    if out.last().is_some_and(|(_, c)| c.is_zero()) {
                        out.pop();
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
        MultiPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn arity(&self) -> Option<usize> {
        self.terms.first().map(|(m, _)| m.arity())
    }

    /// Leading term; panics on zero.
    pub fn leading(&self) -> (&Monomial, &F) {
        let (m, c) = self.terms.first().expect("leading term of zero");
        (m, c)
    }

    pub fn lm(&self) -> &Monomial {
        self.leading().0
    }

    pub fn lc(&self) -> &F {
        self.leading().1
    }

    /// True if the polynomial is a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Largest total degree over all terms; zero for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// The constant polynomial 1 matching an ambient arity.
    pub fn one(unit: &F, arity: usize) -> Self {
        MultiPoly {
            terms: vec![(Monomial::one(arity), unit.one_like())],
        }
    }

    /// Merges two term lists (both sorted under `order`).
    pub fn add(&self, rhs: &Self, order: MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.plus(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(rhs.terms[j..].iter().cloned());
        MultiPoly { terms: out }
    }

    pub fn sub(&self, rhs: &Self, order: MonomialOrder) -> Self {
        self.add(&rhs.neg(), order)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.negated()))
                .collect(),
        }
    }

    /// Multiplies by a single term. Order is preserved because global orders
    /// are compatible with multiplication.
    pub fn term_mul(&self, mono: &Monomial, coeff: &F) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.times(coeff)))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, coeff: &F) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.times(coeff)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self, order: MonomialOrder) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &rhs.terms {
            acc = acc.add(&self.term_mul(m, c), order);
        }
        acc
    }

    /// Scales so the leading coefficient is one; panics on zero.
    pub fn monic(&self) -> Self {
        let inv = self.lc().inverted();
        self.mul_scalar(&inv)
    }

    /// Rescales by [`CoeffField::primitive_unit`]: monic over a finite
    /// field, primitive integral coefficients over Q and Q(α). Panics on
    /// zero. The result generates the same ideal; the Gröbner engine keeps
    /// its working elements in this form so reductions stay division-free.
    pub fn primitive(&self) -> Self {
        assert!(!self.is_zero(), "primitive form of zero");
        let unit = F::primitive_unit(self.terms.iter().map(|(_, c)| c));
        self.mul_scalar(&unit)
    }

    /// The polynomial without its leading term.
    pub fn tail(&self) -> Self {
        MultiPoly {
            terms: self.terms[1..].to_vec(),
        }
    }

    /// Checks the strictly-decreasing term invariant under `order`.
    pub fn is_canonical(&self, order: MonomialOrder) -> bool {
        self.terms
            .windows(2)
            .all(|w| order.compare(&w[0].0, &w[1].0) == Ordering::Greater)
            && self.terms.iter().all(|(_, c)| !c.is_zero())
    }
}

/// Reduces a rational polynomial modulo p; [`Error::BadPrime`] if p divides
/// any denominator. Term order is untouched (orders ignore coefficients);
/// terms whose numerator vanishes mod p are dropped.
pub fn map_mod_p(g: &MultiPoly<BigRational>, p: u64) -> Result<MultiPoly<Fp>, Error> {
    let pb = BigInt::from(p);
    let mut terms = Vec::with_capacity(g.terms().len());
    for (m, c) in g.terms() {
        if (c.denom() % &pb).is_zero() {
            return Err(Error::BadPrime(p));
        }
        let num = Fp::from_bigint(c.numer(), p);
        if num.is_zero() {
            continue;
        }
        let den = Fp::from_bigint(c.denom(), p);
        let inv = crate::arith::mod_inverse(den).map_err(|_| Error::BadPrime(p))?;
        terms.push((m.clone(), num.times(&inv)));
    }
    Ok(MultiPoly { terms })
}

// ---------------------------------------------------------------------------
// Canonical text form.
// ---------------------------------------------------------------------------

fn push_monomial(s: &mut String, m: &Monomial, names: &[&str], lead_star: bool) {
    let mut first = !lead_star;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            s.push('*');
        }
        first = false;
        s.push_str(names[i]);
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
}

/// Canonical text form over Q: terms in decreasing order, explicit `*` and
/// `^`, coefficients `p/q`, e.g. `x^2*y+3*x*t-1/2`.
pub fn poly_to_string_q(g: &MultiPoly<BigRational>, names: &[&str]) -> String {
    use num::Signed;
    if g.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (m, c) in g.terms() {
        let neg = c.is_negative();
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        let abs = c.abs();
        if m.is_one() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            push_monomial(&mut s, m, names, false);
        } else {
            s.push_str(&abs.to_string());
            push_monomial(&mut s, m, names, true);
        }
    }
    s
}

/// Canonical text form over F_p with coefficients in `[0, p)`.
pub fn poly_to_string_fp(g: &MultiPoly<Fp>, names: &[&str]) -> String {
    if g.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (m, c) in g.terms() {
        if !s.is_empty() {
            s.push('+');
        }
        if m.is_one() {
            s.push_str(&c.val.to_string());
        } else if c.is_one() {
            push_monomial(&mut s, m, names, false);
        } else {
            s.push_str(&c.val.to_string());
            push_monomial(&mut s, m, names, true);
        }
    }
    s
}

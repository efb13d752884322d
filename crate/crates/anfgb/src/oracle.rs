//! Direct Gröbner basis computation over the number field itself.
//!
//! This is the independent reference route: coefficients are residue classes
//! in Q[t]/⟨f⟩ and Buchberger's algorithm runs on them directly — no primes,
//! no factorizations, no lifting, so agreement with the modular route is a
//! genuine two-sided check. Two things make the direct route feasible at
//! all: every basis element is kept monic (repeated inversion in Q(α)
//! instead of cross-multiplication, which would entangle powers of α into
//! every coefficient), and pair scheduling uses signatures so that
//! reductions destined to end in zero are skipped before their coefficient
//! swell is paid for. The residue coefficients themselves are backed by a
//! bignum implementation with subquadratic gcd, since re-canonicalizing
//! fractions after each ring operation is where the time goes once
//! numerators reach thousands of digits.

use crate::error::Error;
use crate::field::CoeffField;
use crate::groebner::GroebnerBasis;
use crate::mpoly::{Monomial, MonomialOrder, MultiPoly};
use crate::sigbuch::sig_buchberger;
use crate::upoly::UniPoly;
use malachite::num::arithmetic::traits::{Gcd, Lcm, Reciprocal, Sign};
use malachite::num::basic::traits::{One as _, Zero as _};
use malachite::{Natural, Rational};
use num::bigint::Sign as BigSign;
use num::{BigInt, BigRational, BigUint, One};
use std::cmp::Ordering;
use std::sync::Arc;

fn natural_from_biguint(u: &BigUint) -> Natural {
    Natural::from_limbs_asc(&u.to_u64_digits())
}

fn biguint_from_natural(n: &Natural) -> BigUint {
    let mut digits: Vec<u32> = Vec::new();
    for limb in n.to_limbs_asc() {
        digits.push(limb as u32);
        digits.push((limb >> 32) as u32);
    }
    BigUint::new(digits)
}

/// A rational number as used inside number-field residues.
///
/// Semantically this is exactly a `BigRational`; it exists because the
/// direct route routinely carries fractions whose numerators run to tens of
/// thousands of digits, and every addition or multiplication reduces the
/// result to lowest terms with a gcd. A classical remainder gcd is quadratic
/// in the operand size, which turns each late reduction step into seconds;
/// the backing implementation here uses a half-gcd, keeping those
/// canonicalizations near-linear. Values convert to and from `BigRational`
/// only at the module boundary (building inputs, printing results).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NfRational(Rational);

impl NfRational {
    fn zero() -> Self {
        NfRational(Rational::ZERO)
    }

    fn one() -> Self {
        NfRational(Rational::ONE)
    }

    fn from_big(q: &BigRational) -> Self {
        let (sign, digits) = q.numer().to_u64_digits();
        let numer = Natural::from_limbs_asc(&digits);
        let denom = natural_from_biguint(q.denom().magnitude());
        NfRational(Rational::from_sign_and_naturals(
            sign != BigSign::Minus,
            numer,
            denom,
        ))
    }

    fn to_big(&self) -> BigRational {
        let sign = if self.0.sign() == Ordering::Less {
            BigSign::Minus
        } else {
            BigSign::Plus
        };
        let numer = BigInt::from_biguint(sign, biguint_from_natural(self.0.numerator_ref()));
        let denom = BigInt::from_biguint(
            BigSign::Plus,
            biguint_from_natural(self.0.denominator_ref()),
        );
        BigRational::new(numer, denom)
    }
}

impl CoeffField for NfRational {
    fn zero_like(&self) -> Self {
        NfRational::zero()
    }

    fn one_like(&self) -> Self {
        NfRational::one()
    }

    fn from_u64_like(&self, n: u64) -> Self {
        NfRational(Rational::from(n))
    }

    fn is_zero(&self) -> bool {
        self.0 == Rational::ZERO
    }

    fn is_one(&self) -> bool {
        self.0 == Rational::ONE
    }

    fn plus(&self, rhs: &Self) -> Self {
        NfRational(&self.0 + &rhs.0)
    }

    fn minus(&self, rhs: &Self) -> Self {
        NfRational(&self.0 - &rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        NfRational(&self.0 * &rhs.0)
    }

    fn negated(&self) -> Self {
        NfRational(-&self.0)
    }

    fn inverted(&self) -> Self {
        assert!(self.0 != Rational::ZERO, "inversion of zero");
        NfRational((&self.0).reciprocal())
    }

    fn primitive_unit<'a, I>(coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        let nonzero: Vec<&Rational> = coeffs
            .map(|c| &c.0)
            .filter(|c| **c != Rational::ZERO)
            .collect();
        assert!(!nonzero.is_empty(), "content of a zero sequence");
        let lead_negative = nonzero[0].sign() == Ordering::Less;

        let mut den_lcm = Natural::ONE;
        for c in &nonzero {
            if *c.denominator_ref() != Natural::ONE {
                den_lcm = (&den_lcm).lcm(c.denominator_ref());
            }
        }
        let mut num_gcd = Natural::ZERO;
        for c in &nonzero {
            if num_gcd == Natural::ONE {
                break;
            }
            num_gcd = (&num_gcd).gcd(c.numerator_ref());
        }
        NfRational(Rational::from_sign_and_naturals(
            !lead_negative,
            den_lcm,
            num_gcd,
        ))
    }
}

/// The shared context of a number field: a monic irreducible minimal
/// polynomial over Q.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumberField {
    minpoly: UniPoly<BigRational>,
    /// The same polynomial in the coefficient representation residues are
    /// stored in, so reductions and Bézout runs stay in one arithmetic
    /// domain.
    minpoly_res: UniPoly<NfRational>,
}

impl NumberField {
    /// Wraps a monic minimal polynomial of degree >= 1. Irreducibility is the
    /// caller's contract; it is what makes the quotient a field.
    pub fn new(minpoly: UniPoly<BigRational>) -> Arc<Self> {
        assert!(
            minpoly.degree().map_or(false, |d| d >= 1) && CoeffField::is_one(minpoly.lc()),
            "minimal polynomial must be monic of degree >= 1"
        );
        let minpoly_res =
            UniPoly::from_coeffs(minpoly.coeffs().iter().map(NfRational::from_big).collect());
        Arc::new(NumberField {
            minpoly,
            minpoly_res,
        })
    }

    pub fn minpoly(&self) -> &UniPoly<BigRational> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    /// The residue class of the field generator α.
    pub fn generator(self: &Arc<Self>) -> NumberFieldElement {
        let one = BigRational::one();
        let residue = UniPoly::from_coeffs(vec![one.clone().zero_like(), one]);
        NumberFieldElement::new(residue, self.clone())
    }

    /// Embeds a rational number.
    pub fn embed(self: &Arc<Self>, q: BigRational) -> NumberFieldElement {
        NumberFieldElement::new(UniPoly::constant(q), self.clone())
    }
}

/// An element of Q(α), stored as its unique residue of degree < deg f.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    residue: UniPoly<NfRational>,
    field: Arc<NumberField>,
}

impl NumberFieldElement {
    /// Builds an element, reducing the representative modulo the minimal
    /// polynomial if needed.
    pub fn new(residue: UniPoly<BigRational>, field: Arc<NumberField>) -> Self {
        let converted =
            UniPoly::from_coeffs(residue.coeffs().iter().map(NfRational::from_big).collect());
        NumberFieldElement::from_residue(converted, field)
    }

    fn from_residue(residue: UniPoly<NfRational>, field: Arc<NumberField>) -> Self {
        let residue = if residue.degree().map_or(false, |d| d >= field.degree()) {
            residue.rem(&field.minpoly_res).expect("nonzero minpoly")
        } else {
            residue
        };
        NumberFieldElement { residue, field }
    }

    /// The residue representative, as a plain rational polynomial in α.
    pub fn residue(&self) -> UniPoly<BigRational> {
        UniPoly::from_coeffs(self.residue.coeffs().iter().map(NfRational::to_big).collect())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(
            Arc::ptr_eq(&self.field, &other.field)
                || self.field.minpoly == other.field.minpoly,
            "mixed number fields"
        );
        self.residue == other.residue
    }
}

impl Eq for NumberFieldElement {}

/// Inverse of a nonzero element of Q(α).
///
/// With f irreducible and a ≠ 0 of degree < deg f, `gcd(a, f) = 1`, so the
/// Bézout coefficient of a in `s·a + t·f = 1` is the inverse.
pub fn nf_invert(a: &NumberFieldElement) -> Result<NumberFieldElement, Error> {
    if a.residue.is_zero() {
        return Err(Error::ZeroInversion);
    }
    let (g, s, _) = a.residue.ext_gcd(&a.field.minpoly_res)?;
    debug_assert!(g.is_one(), "minimal polynomial must be irreducible");
    let inv = s.rem(&a.field.minpoly_res)?;
    Ok(NumberFieldElement {
        residue: inv,
        field: a.field.clone(),
    })
}

impl CoeffField for NumberFieldElement {
    fn zero_like(&self) -> Self {
        NumberFieldElement {
            residue: UniPoly::zero(),
            field: self.field.clone(),
        }
    }

    fn one_like(&self) -> Self {
        NumberFieldElement {
            residue: UniPoly::constant(NfRational::one()),
            field: self.field.clone(),
        }
    }

    fn from_u64_like(&self, n: u64) -> Self {
        NumberFieldElement {
            residue: UniPoly::constant(NfRational::zero().from_u64_like(n)),
            field: self.field.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    fn plus(&self, rhs: &Self) -> Self {
        NumberFieldElement {
            residue: self.residue.add(&rhs.residue),
            field: self.field.clone(),
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        NumberFieldElement {
            residue: self.residue.sub(&rhs.residue),
            field: self.field.clone(),
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        let prod = self.residue.mul(&rhs.residue);
        NumberFieldElement::new(prod, self.field.clone())
    }

    fn negated(&self) -> Self {
        NumberFieldElement {
            residue: self.residue.neg(),
            field: self.field.clone(),
        }
    }

    fn inverted(&self) -> Self {
        nf_invert(self).expect("inversion of zero in Q(alpha)")
    }

    fn primitive_unit<'a, I>(mut coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        if std::env::var_os("ANFGB_MONICK").is_some() {
            return coeffs
                .next()
                .expect("content of an empty sequence")
                .inverted();
        }
        // A *rational* scalar clearing every denominator and stripping the
        // integer content across all residues. Staying inside Q — rather
        // than dividing by the full algebraic leading coefficient — is what
        // keeps α-entanglement out of the rescaled coefficients.
        let mut field = None;
        let rationals: Vec<&BigRational> = coeffs
            .flat_map(|c| {
                field.get_or_insert_with(|| c.field.clone());
                c.residue.coeffs().iter().rev()
            })
            .collect();
        let unit = rational_content_unit(rationals.into_iter());
        NumberFieldElement {
            residue: UniPoly::constant(unit),
            field: field.expect("content of an empty sequence"),
        }
    }
}

/// Reduced Gröbner basis over Q(α) by Buchberger's algorithm run directly on
/// number-field coefficients.
///
/// `gens` are polynomials in the X variables only (arity excludes the tag).
/// Every generated element is normalized to be monic — over Q(α) that is
/// exactly the repeated use of [`nf_invert`] — and pair scheduling uses
/// signature pruning so that reductions destined to end in zero are mostly
/// skipped; without that, coefficient growth inside dead-end reductions
/// makes the larger bundled problems unreachable. The output is the unique
/// reduced basis, so it coincides with what the plain engine would produce.
pub fn buchberger_direct(
    gens: &[MultiPoly<NumberFieldElement>],
    order: MonomialOrder,
) -> GroebnerBasis<NumberFieldElement> {
    sig_buchberger(gens, order)
}

/// Converts a tagged rational polynomial (tag variable in the last slot)
/// into a polynomial over Q(α) in the X variables only.
pub fn tagged_to_k(
    g: &MultiPoly<BigRational>,
    field: &Arc<NumberField>,
    order: MonomialOrder,
) -> MultiPoly<NumberFieldElement> {
    let mut terms: Vec<(Monomial, NumberFieldElement)> = Vec::new();
    for (m, c) in g.terms() {
        let k = m.arity() - 1;
        let x_part = Monomial(m.0[..k].to_vec());
        let alpha_pow = m.0[k] as usize;
        let mut coeffs = vec![BigRational::one().zero_like(); alpha_pow + 1];
        coeffs[alpha_pow] = c.clone();
        let elem = NumberFieldElement::new(UniPoly::from_coeffs(coeffs), field.clone());
        terms.push((x_part, elem));
    }
    MultiPoly::from_terms(terms, order)
}

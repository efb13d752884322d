//! Coefficient-field abstraction shared by the polynomial layers.
//!
//! The univariate and multivariate polynomial types, and the Gröbner engine
//! on top of them, are generic over the coefficient field. Three fields are
//! used: the rationals (exact lifting and final verification), prime fields
//! F_p (the modular layers), and the number field Q(α) (the direct oracle).
//!
//! Elements carry whatever context their field needs (the prime p, the
//! minimal polynomial), so fresh zeros and ones are derived from an existing
//! element via [`CoeffField::zero_like`] / [`CoeffField::one_like`]. The
//! method names avoid colliding with the `std::ops` traits on purpose.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::fmt::Debug;

/// A field of coefficients: exact arithmetic, equality, and canonical 0/1.
pub trait CoeffField: Clone + PartialEq + Debug + Send + Sync {
    /// The zero of the same field as `self`.
    fn zero_like(&self) -> Self;
    /// The one of the same field as `self`.
    fn one_like(&self) -> Self;
    /// Embeds a small nonnegative integer into the field of `self`.
    fn from_u64_like(&self, n: u64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// The multiplicative inverse. Panics on zero; fallible callers check
    /// [`CoeffField::is_zero`] first or use the field-specific entry points.
    fn inverted(&self) -> Self;

    /// `self / rhs`; panics if `rhs` is zero.
    fn divided_by(&self, rhs: &Self) -> Self {
        self.times(&rhs.inverted())
    }

    /// A scalar that rescales the given nonzero coefficient sequence
    /// (leading coefficient first) into its cheapest canonical form.
    ///
    /// Over a finite field every element is equally cheap, so this is the
    /// leading coefficient's inverse and rescaling means making the
    /// polynomial monic. Over the rationals — and over a number field, whose
    /// elements are residue polynomials with rational coefficients — it
    /// clears all denominators and divides out the integer content, giving
    /// primitive integral coefficients with a positive lead. Keeping basis
    /// elements in this form instead of monic form is what makes
    /// fraction-free reduction possible: no division ever happens during a
    /// reduction, so denominators cannot compound.
    fn primitive_unit<'a, I>(coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
        Self: 'a;
}

/// Content data of a rational sequence: the factor lcm(denominators) /
/// gcd(numerators), signed so the reference (first nonzero) coefficient
/// comes out positive.
///
/// The numerator gcd is accumulated smallest-first, big operands are reduced
/// modulo the accumulator before the gcd, and the loop stops once the
/// accumulator hits one — the bignum gcd is quadratic, so feeding it two
/// full-size operands more than once per call would dominate the whole
/// Gröbner run.
pub(crate) fn rational_content_unit<'a, I>(coeffs: I) -> BigRational
where
    I: Iterator<Item = &'a BigRational>,
{
    let nonzero: Vec<&BigRational> = coeffs.filter(|c| !Zero::is_zero(*c)).collect();
    assert!(!nonzero.is_empty(), "content of a zero sequence");
    let lead_negative = nonzero[0].numer().is_negative();

    let mut den_lcm = BigInt::one();
    for c in &nonzero {
        if !c.denom().is_one() {
            den_lcm = den_lcm.lcm(c.denom());
        }
    }

    let mut by_size: Vec<&BigInt> = nonzero.iter().map(|c| c.numer()).collect();
    by_size.sort_by_key(|n| n.bits());
    let mut num_gcd = BigInt::zero();
    for n in by_size {
        if num_gcd.is_one() {
            break;
        }
        if num_gcd.is_zero() {
            num_gcd = n.abs();
        } else if n.bits() > 2 * num_gcd.bits() {
            let r = n % &num_gcd;
            if !r.is_zero() {
                num_gcd = num_gcd.gcd(&r);
            }
        } else {
            num_gcd = num_gcd.gcd(n);
        }
    }
    if lead_negative {
        num_gcd = -num_gcd;
    }
    BigRational::new(den_lcm, num_gcd)
}

impl CoeffField for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn from_u64_like(&self, n: u64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn inverted(&self) -> Self {
        assert!(!Zero::is_zero(self), "inversion of zero rational");
        self.recip()
    }

    fn primitive_unit<'a, I>(coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        rational_content_unit(coeffs)
    }
}

//! Univariate polynomials over a coefficient field.
//!
//! Coefficients are stored by ascending degree with no trailing zeros; the
//! empty vector is the zero polynomial. Generic routines (division, extended
//! Euclid, Chinese remaindering) work over any [`CoeffField`]; factorization
//! is specific to prime fields and follows the classical chain squarefree
//! decomposition → distinct-degree splitting → randomized equal-degree
//! splitting (Cantor–Zassenhaus), deterministic for a fixed seed.

use crate::arith::Fp;
use crate::error::Error;
use crate::field::CoeffField;
use num::{BigInt, BigRational, BigUint, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A univariate polynomial; `coeffs[i]` is the coefficient of degree `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: CoeffField> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial, trimming leading zeros into canonical form.
    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &F {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn mul_scalar(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.times(s)).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: out }
    }

    /// Scales so the leading coefficient is one; panics on zero.
    pub fn monic(&self) -> Self {
        let inv = self.lc().inverted();
        self.mul_scalar(&inv)
    }

    /// Euclidean division: returns `(q, r)` with `self = q·d + r` and
    /// `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = d.lc().inverted();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.coeffs[0].zero_like(); self.coeffs.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].times(&lc_inv);
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] = rem[k - dd + i].minus(&q.times(dc));
            }
            quot[k - dd] = q;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Remainder of division by `d`.
    pub fn rem(&self, d: &Self) -> Result<Self, Error> {
        Ok(self.divrem(d)?.1)
    }

    /// True if `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &Self) -> bool {
        matches!(self.rem(d), Ok(r) if r.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·rhs = g` and `g`
    /// monic. For `(a, 0)` this is `(monic(a), 1/lc(a), 0)`.
    pub fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self), Error> {
        if self.is_zero() && rhs.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let one = if self.is_zero() {
            rhs.coeffs[0].one_like()
        } else {
            self.coeffs[0].one_like()
        };
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = Self::constant(one.clone());
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::constant(one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = r0.lc().inverted();
        Ok((
            r0.mul_scalar(&lc_inv),
            s0.mul_scalar(&lc_inv),
            t0.mul_scalar(&lc_inv),
        ))
    }
}

/// Chinese remaindering of univariate polynomials over a field.
///
/// Given residues `q_i` and pairwise coprime moduli `m_i`, returns the unique
/// `g` with `g ≡ q_i (mod m_i)` and `deg g < Σ deg m_i`. Works over any
/// coefficient field. For each i it forms `h_i = (∏ m_j) / m_i`, solves
/// `s_i·h_i + t_i·m_i = 1` by the extended Euclidean algorithm, reduces
/// `c_i = q_i·s_i mod m_i`, and accumulates `g += c_i·h_i`.
pub fn cra_poly<F: CoeffField>(
    residues: &[UniPoly<F>],
    moduli: &[UniPoly<F>],
) -> Result<UniPoly<F>, Error> {
    if residues.len() != moduli.len() || residues.is_empty() {
        return Err(Error::LengthMismatch);
    }
    let product = moduli
        .iter()
        .fold(None::<UniPoly<F>>, |acc, m| {
            Some(match acc {
                None => m.clone(),
                Some(a) => a.mul(m),
            })
        })
        .unwrap();
    let mut g = UniPoly::zero();
    for (q, m) in residues.iter().zip(moduli) {
        let (h, _) = product.divrem(m)?;
        let (unit, s, _) = h.ext_gcd(m)?;
        if !unit.is_one() {
            return Err(Error::NonCoprimeModuli);
        }
        let c = q.mul(&s).rem(m)?;
        g = g.add(&c.mul(&h));
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Prime-field specifics: derivatives, Frobenius powers, factorization.
// ---------------------------------------------------------------------------

/// One irreducible factor with its multiplicity.
pub type Factor = (UniPoly<Fp>, u32);

/// Monic irreducible factors of a polynomial over F_p, pairwise distinct,
/// sorted by ascending degree and then by coefficient sequence; the product
/// of `factor^multiplicity` equals the monic part of the input.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorList {
    pub factors: Vec<Factor>,
}

impl FactorList {
    /// Number of distinct irreducible factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of `factor^multiplicity`.
    pub fn product(&self) -> UniPoly<Fp> {
        let mut acc: Option<UniPoly<Fp>> = None;
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = Some(match acc {
                    None => f.clone(),
                    Some(a) => a.mul(f),
                });
            }
        }
        acc.expect("empty factor list has no product")
    }
}

impl UniPoly<Fp> {
    /// The prime of the coefficient field; panics on the zero polynomial.
    pub fn prime(&self) -> u64 {
        self.coeffs.first().expect("zero polynomial has no field").p
    }

    /// Convenience constructor from signed integer coefficients mod p.
    pub fn from_int_coeffs(ints: &[i64], p: u64) -> Self {
        Self::from_coeffs(ints.iter().map(|&v| Fp::new(v, p)).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let p = self.prime();
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&Fp::new(i as i64, p)))
            .collect();
        Self::from_coeffs(out)
    }

    /// True if the nonzero polynomial has no repeated root in the algebraic
    /// closure, i.e. `gcd(a, a′)` is constant.
    pub fn is_squarefree(&self) -> Result<bool, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(g.is_constant())
    }

    /// `self^e mod m` with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let p = m.prime();
        let mut acc = Self::from_int_coeffs(&[1], p);
        let mut base = self.rem(m).expect("nonzero modulus");
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m).unwrap();
            }
            base = base.mul(&base).rem(m).unwrap();
        }
        acc
    }

    /// p-th root of a polynomial of the form `b(x^p)` over F_p (Frobenius is
    /// the identity on F_p, so this just picks every p-th coefficient).
    fn pth_root(&self) -> Self {
        let p = self.prime() as usize;
        let out = self.coeffs.iter().step_by(p).cloned().collect();
        Self::from_coeffs(out)
    }

    /// Squarefree decomposition of a monic polynomial in characteristic p:
    /// returns pairwise coprime squarefree monic parts with multiplicities.
    fn squarefree_decomposition(&self) -> Vec<Factor> {
        debug_assert!(self.lc().is_one());
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let deriv = self.derivative();
        if deriv.is_zero() {
            // self = b(x^p): recurse on the p-th root with multiplicities × p.
            let root = self.pth_root();
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * self.prime() as u32));
            }
            return out;
        }
        let mut c = self.gcd(&deriv);
        let mut w = self.divrem(&c).unwrap().0;
        let mut i = 1u32;
        while !w.is_constant() {
            let y = w.gcd(&c);
            let z = w.divrem(&y).unwrap().0;
            if !z.is_constant() {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).unwrap().0;
        }
        if !c.is_constant() {
            for (g, m) in c.pth_root().squarefree_decomposition() {
                out.push((g, m * self.prime() as u32));
            }
        }
        out
    }

    /// Distinct-degree splitting of a monic squarefree polynomial: returns
    /// `(product of all irreducible factors of degree d, d)` pairs. Fully
    /// deterministic.
    pub fn distinct_degree_split(&self) -> Vec<(UniPoly<Fp>, usize)> {
        let p = self.prime();
        let mut g = self.clone();
        let x = Self::from_int_coeffs(&[0, 1], p);
        let mut h = x.rem(&g).unwrap();
        let mut out = Vec::new();
        let mut d = 0usize;
        while g.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&BigUint::from(p), &g);
            let gd = g.gcd(&h.sub(&x));
            if !gd.is_constant() {
                out.push((gd.clone(), d));
                g = g.divrem(&gd).unwrap().0;
                h = h.rem(&g).unwrap();
            }
        }
        if !g.is_constant() {
            let deg = g.degree().unwrap();
            out.push((g, deg));
        }
        out
    }

    /// Number of irreducible factors of a monic squarefree polynomial,
    /// counted without computing the factors themselves.
    pub fn irreducible_factor_count(&self) -> usize {
        self.distinct_degree_split()
            .iter()
            .map(|(g, d)| g.degree().unwrap() / d)
            .sum()
    }

    /// Equal-degree splitting: `self` is monic squarefree with all
    /// irreducible factors of degree `d`. Randomized (Cantor–Zassenhaus),
    /// deterministic for a fixed RNG state.
    fn equal_degree_split(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<UniPoly<Fp>> {
        let n = self.degree().unwrap();
        if n == d {
            return vec![self.clone()];
        }
        let p = self.prime();
        let split = loop {
            let coeffs: Vec<Fp> = (0..n)
                .map(|_| Fp {
                    val: rng.gen_range(0..p),
                    p,
                })
                .collect();
            let r = Self::from_coeffs(coeffs);
            if r.is_constant() {
                continue;
            }
            let w = if p == 2 {
                // Trace map over F_2: Σ r^(2^i), i < d.
                let mut acc = Self::zero();
                let mut cur = r.rem(self).unwrap();
                for _ in 0..d {
                    acc = acc.add(&cur);
                    cur = cur.mul(&cur).rem(self).unwrap();
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
                let one = Self::from_int_coeffs(&[1], p);
                r.pow_mod(&e, self).sub(&one)
            };
            let g = self.gcd(&w);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                break g;
            }
        };
        let rest = self.divrem(&split).unwrap().0.monic();
        let mut out = split.equal_degree_split(d, rng);
        out.extend(rest.equal_degree_split(d, rng));
        out
    }

    /// Full factorization over F_p into monic irreducible factors with
    /// multiplicities, in canonical order (ascending degree, then ascending
    /// coefficient sequence). Deterministic for a fixed seed.
    pub fn factor(&self, seed: u64) -> Result<FactorList, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors: Vec<Factor> = Vec::new();
        for (part, mult) in self.monic().squarefree_decomposition() {
            for (block, d) in part.distinct_degree_split() {
                for irr in block.equal_degree_split(d, &mut rng) {
                    factors.push((irr, mult));
                }
            }
        }
        factors.sort_by(|(a, _), (b, _)| {
            a.coeffs
                .len()
                .cmp(&b.coeffs.len())
                .then_with(|| a.coeffs.iter().map(|c| c.val).cmp(b.coeffs.iter().map(|c| c.val)))
        });
        Ok(FactorList { factors })
    }
}

/// Reduces a rational univariate polynomial modulo p.
///
/// Fails with [`Error::BadPrime`] if p divides a denominator.
pub fn unipoly_mod_p(f: &UniPoly<BigRational>, p: u64) -> Result<UniPoly<Fp>, Error> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        if (c.denom() % &pb).is_zero() {
            return Err(Error::BadPrime(p));
        }
        let num = Fp::from_bigint(c.numer(), p);
        let den = Fp::from_bigint(c.denom(), p);
        out.push(num.times(&mod_inverse_checked(den)?));
    }
    Ok(UniPoly::from_coeffs(out))
}

fn mod_inverse_checked(a: Fp) -> Result<Fp, Error> {
    crate::arith::mod_inverse(a).map_err(|_| Error::BadPrime(a.p))
}

/// Renders a univariate polynomial over F_p like `t^2+3*t+1` (used in
/// diagnostics and tests).
pub fn unipoly_to_string(f: &UniPoly<Fp>, var: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        let show_coeff = c.val != 1 || i == 0;
        if show_coeff {
            s.push_str(&c.val.to_string());
        }
        if i > 0 {
            if show_coeff {
                s.push('*');
            }
            s.push_str(var);
            if i > 1 {
                s.push_str(&format!("^{i}"));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn fp_poly(ints: &[i64], p: u64) -> UniPoly<Fp> {
        UniPoly::from_int_coeffs(ints, p)
    }

    #[test]
    fn divrem_examples() {
        // (t^2 + 1) / (t - 2) over F_5 = (t + 2, 0)
        let a = fp_poly(&[1, 0, 1], 5);
        let d = fp_poly(&[-2, 1], 5);
        let (q, r) = a.divrem(&d).unwrap();
        assert_eq!(q, fp_poly(&[2, 1], 5));
        assert!(r.is_zero());
        assert_eq!(
            a.divrem(&UniPoly::zero()),
            Err(Error::DivisionByZeroPoly)
        );
    }

    #[test]
    fn divrem_round_trip_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let p = [5u64, 13, 101, 65521][rng.gen_range(0..4)];
            let a = random_poly(&mut rng, p, 8);
            let mut d = random_poly(&mut rng, p, 4);
            while d.is_zero() {
                d = random_poly(&mut rng, p, 4);
            }
            let (q, r) = a.divrem(&d).unwrap();
            assert_eq!(q.mul(&d).add(&r), a);
            assert!(r.degree().map_or(true, |dr| dr < d.degree().unwrap()));
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng, p: u64, max_deg: usize) -> UniPoly<Fp> {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<Fp> = (0..=deg).map(|_| Fp { val: rng.gen_range(0..p), p }).collect();
        UniPoly::from_coeffs(coeffs)
    }

    #[test]
    fn ext_gcd_bezout_and_edge() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let p = [5u64, 13, 101][rng.gen_range(0..3)];
            let a = random_poly(&mut rng, p, 6);
            let b = random_poly(&mut rng, p, 6);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let (g, s, t) = a.ext_gcd(&b).unwrap();
            assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
            assert!(g.lc().is_one());
        }
        let a = fp_poly(&[3, 0, 3], 5); // 3t^2 + 3
        let (g, s, t) = a.ext_gcd(&UniPoly::zero()).unwrap();
        assert_eq!(g, fp_poly(&[1, 0, 1], 5));
        assert_eq!(s, fp_poly(&[2], 5)); // 1 / 3 = 2 mod 5
        assert!(t.is_zero());
    }

    #[test]
    fn squarefree_examples() {
        let f2 = fp_poly(&[1, 0, 1], 2); // (t+1)^2 over F_2
        assert!(!f2.is_squarefree().unwrap());
        let f5 = fp_poly(&[1, 0, 1], 5);
        assert!(f5.is_squarefree().unwrap());
        assert_eq!(
            UniPoly::<Fp>::zero().is_squarefree(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn factor_examples() {
        // t^2 + 1 over F_5 = (t+2)(t+3)
        let f = fp_poly(&[1, 0, 1], 5).factor(1).unwrap();
        assert_eq!(
            f.factors,
            vec![(fp_poly(&[2, 1], 5), 1), (fp_poly(&[3, 1], 5), 1)]
        );
        // t^2 + 1 over F_13 = (t-5)(t+5)
        let f = fp_poly(&[1, 0, 1], 13).factor(1).unwrap();
        assert_eq!(
            f.factors,
            vec![(fp_poly(&[5, 1], 13), 1), (fp_poly(&[8, 1], 13), 1)]
        );
        // t^3 + t + 1 over F_3 = (t-1)(t^2+t-1)
        let f = fp_poly(&[1, 1, 0, 1], 3).factor(1).unwrap();
        assert_eq!(
            f.factors,
            vec![(fp_poly(&[2, 1], 3), 1), (fp_poly(&[2, 1, 1], 3), 1)]
        );
    }

    #[test]
    fn factor_is_seed_independent_in_result() {
        let f = fp_poly(&[2, 0, 3, 1, 0, 0, 1], 101);
        let a = f.factor(1).unwrap();
        let b = f.factor(999).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn factor_certificates_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let primes = [2u64, 3, 5, 13, 101, 257, 4099, 65521];
        for _ in 0..500 {
            let p = primes[rng.gen_range(0..primes.len())];
            let mut f = random_poly(&mut rng, p, 8);
            while f.is_constant() {
                f = random_poly(&mut rng, p, 8);
            }
            let list = f.factor(rng.gen()).unwrap();
            // Product reproduces the monic input.
            assert_eq!(list.product(), f.monic());
            for (g, _) in &list.factors {
                assert!(g.lc().is_one());
                let d = g.degree().unwrap() as u32;
                // Irreducibility certificate: x^(p^d) ≡ x mod g ...
                let x = fp_poly(&[0, 1], p);
                let e = BigUint::from(p).pow(d);
                assert_eq!(x.pow_mod(&e, g), x.rem(g).unwrap());
                // ... and no root in F_p when deg >= 2 (full certificate for
                // the degrees exercised here is the DDF invariant below).
                if d >= 2 {
                    let e1 = BigUint::from(p);
                    let frob = x.pow_mod(&e1, g);
                    assert!(g.gcd(&frob.sub(&x)).is_constant());
                }
            }
            // Pairwise coprime.
            for i in 0..list.factors.len() {
                for j in i + 1..list.factors.len() {
                    assert!(list.factors[i].0.gcd(&list.factors[j].0).is_one());
                }
            }
        }
    }

    #[test]
    fn cra_poly_example() {
        // residues (2, 3) mod (t-2, t+2) over F_5 → t
        let m1 = fp_poly(&[-2, 1], 5);
        let m2 = fp_poly(&[2, 1], 5);
        let g = cra_poly(&[fp_poly(&[2], 5), fp_poly(&[3], 5)], &[m1, m2]).unwrap();
        assert_eq!(g, fp_poly(&[0, 1], 5));
        // Single modulus degenerates to remainder.
        let g = cra_poly(&[fp_poly(&[1, 2, 3], 5)], &[fp_poly(&[1, 0, 1], 5)]).unwrap();
        assert_eq!(g, fp_poly(&[1, 2, 3], 5).rem(&fp_poly(&[1, 0, 1], 5)).unwrap());
    }

    #[test]
    fn cra_poly_errors() {
        let m = fp_poly(&[1, 1], 5);
        assert_eq!(
            cra_poly::<Fp>(&[], &[]),
            Err(Error::LengthMismatch)
        );
        assert_eq!(
            cra_poly(&[fp_poly(&[1], 5)], &[m.clone(), m.clone()]),
            Err(Error::LengthMismatch)
        );
        assert_eq!(
            cra_poly(
                &[fp_poly(&[1], 5), fp_poly(&[2], 5)],
                &[m.clone(), m.clone()]
            ),
            Err(Error::NonCoprimeModuli)
        );
    }

    #[test]
    fn cra_poly_congruences_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..500 {
            let p = [5u64, 13, 101, 65521][rng.gen_range(0..4)];
            // Build pairwise coprime moduli from distinct irreducibles.
            let count = rng.gen_range(1..=4);
            let mut moduli: Vec<UniPoly<Fp>> = Vec::new();
            while moduli.len() < count {
                let mut m = random_poly(&mut rng, p, 3);
                while m.is_constant() {
                    m = random_poly(&mut rng, p, 3);
                }
                let m = m.monic();
                if moduli.iter().all(|o| o.gcd(&m).is_one()) {
                    moduli.push(m);
                }
            }
            let residues: Vec<UniPoly<Fp>> = moduli
                .iter()
                .map(|m| {
                    random_poly(&mut rng, p, m.degree().unwrap().saturating_sub(1))
                })
                .collect();
            let g = cra_poly(&residues, &moduli).unwrap();
            let total: usize = moduli.iter().map(|m| m.degree().unwrap()).sum();
            assert!(g.degree().map_or(true, |d| d < total));
            for (q, m) in residues.iter().zip(&moduli) {
                assert_eq!(g.rem(m).unwrap(), q.rem(m).unwrap());
            }
        }
    }

    #[test]
    fn unipoly_mod_p_handles_rationals() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let f = UniPoly::from_coeffs(vec![half.clone(), BigRational::from_i64(3).unwrap()]);
        let fp = unipoly_mod_p(&f, 5).unwrap();
        assert_eq!(fp, fp_poly(&[3, 3], 5)); // 1/2 = 3 mod 5
        assert_eq!(unipoly_mod_p(&f, 2), Err(Error::BadPrime(2)));
    }
}

//! Integer and prime-field arithmetic: the scalar kernel under everything.
//!
//! Arbitrary-precision integers and rationals are `num::BigInt` and
//! `num::BigRational` (canonical: reduced, denominator positive). Prime
//! fields use machine words; all primes are below 2^31 so a product of two
//! canonical residues fits in a u64 without overflow.
//!
//! Besides the field type this module provides the number-theoretic
//! primitives of the lifting stage — integer Chinese remaindering, Farey
//! (rational) reconstruction — and the generator of random admissible primes
//! that feeds the modular engine.

use crate::error::Error;
use crate::field::CoeffField;
use crate::mpoly::MultiPoly;
use crate::upoly::UniPoly;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exclusive lower bound of the admissible-prime window.
pub const PRIME_WINDOW_LO: u64 = 1 << 30;
/// Exclusive upper bound of the admissible-prime window.
pub const PRIME_WINDOW_HI: u64 = 1 << 31;
/// Default cap on candidates examined when drawing admissible primes.
pub const DEFAULT_CANDIDATE_CAP: usize = 10_000;

/// An element of F_p in canonical form: `0 <= val < p`, with `p < 2^31` prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub val: u64,
    pub p: u64,
}

impl std::fmt::Debug for Fp {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{}₍{}₎", self.val, self.p)
    }
}

impl std::fmt::Display for Fp {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(fm, "{}", self.val)
    }
}

impl Fp {
    /// Builds the canonical residue of a (possibly negative) integer mod p.
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!(p < (1 << 31), "prime field modulus must stay below 2^31");
        Fp {
            val: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    /// Canonical residue of a big integer mod p.
    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        let m = BigInt::from(p);
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        Fp {
            val: r.to_u64_digits().1.first().copied().unwrap_or(0),
            p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Fp { val: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Fp { val: 1 % p, p }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

impl CoeffField for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.p)
    }

    fn one_like(&self) -> Self {
        Fp::one(self.p)
    }

    fn from_u64_like(&self, n: u64) -> Self {
        Fp {
            val: n % self.p,
            p: self.p,
        }
    }

    fn is_zero(&self) -> bool {
        self.val == 0
    }

    fn is_one(&self) -> bool {
        self.val == 1 % self.p
    }

    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "mixed prime fields");
        let mut v = self.val + rhs.val;
        if v >= self.p {
            v -= self.p;
        }
        Fp { val: v, p: self.p }
    }

    fn minus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "mixed prime fields");
        let v = if self.val >= rhs.val {
            self.val - rhs.val
        } else {
            self.val + self.p - rhs.val
        };
        Fp { val: v, p: self.p }
    }

    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p, "mixed prime fields");
        // val < p < 2^31, so the product fits a u64.
        Fp {
            val: (self.val * rhs.val) % self.p,
            p: self.p,
        }
    }

    fn negated(&self) -> Self {
        Fp {
            val: if self.val == 0 { 0 } else { self.p - self.val },
            p: self.p,
        }
    }

    fn inverted(&self) -> Self {
        mod_inverse(*self).expect("inversion of zero in F_p")
    }

    fn primitive_unit<'a, I>(mut coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        // Every nonzero element of F_p is a unit: monic is the cheap form.
        coeffs
            .next()
            .expect("content of a zero sequence")
            .inverted()
    }
}

/// Multiplicative inverse in F_p by the extended Euclidean algorithm.
pub fn mod_inverse(a: Fp) -> Result<Fp, Error> {
    if a.val == 0 {
        return Err(Error::ZeroInversion);
    }
    let (mut r0, mut r1) = (a.p as i64, a.val as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    Ok(Fp::new(t0, a.p))
}

/// Deterministic Miller-Rabin for 64-bit integers.
///
/// The fixed base set is a proven witness set for every n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sp {
            return true;
        }
        if n % sp == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Combines residues under pairwise coprime moduli into the unique residue
/// modulo their product, canonical in `[0, ∏ m)`.
pub fn crt_integers(residues: &[BigInt], moduli: &[BigInt]) -> Result<BigInt, Error> {
    if residues.len() != moduli.len() || residues.is_empty() {
        return Err(Error::LengthMismatch);
    }
    let mut x = residues[0].mod_floor(&moduli[0]);
    let mut modulus = moduli[0].clone();
    for (r, m) in residues.iter().zip(moduli).skip(1) {
        let gcd = modulus.gcd(m);
        if !gcd.is_one() {
            return Err(Error::NonCoprimeModuli);
        }
        // x + modulus * k ≡ r (mod m)  ⇒  k ≡ (r − x) / modulus (mod m)
        let inv = bigint_mod_inverse(&modulus, m).ok_or(Error::NonCoprimeModuli)?;
        let k = ((r - &x) * inv).mod_floor(m);
        x += &modulus * k;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Ok(x)
}

/// Inverse of `a` modulo `m` for big integers, if it exists.
fn bigint_mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_one() {
        Some(t0.mod_floor(m))
    } else {
        None
    }
}

/// Rational (Farey) reconstruction of `c` modulo `n`.
///
/// Finds the unique a/b with `a ≡ b·c (mod n)`, `gcd(a, b) = 1`,
/// `gcd(b, n) = 1`, `|a| <= B` and `1 <= b <= B` where `B = ⌊√(n/2)⌋`, if it
/// exists; otherwise reports [`Error::NoReconstruction`]. Requires
/// `0 <= c < n`.
pub fn farey(c: &BigInt, n: &BigInt) -> Result<BigRational, Error> {
    assert!(!c.is_negative() && c < n, "farey expects 0 <= c < n");
    let bound = (n >> 1u32).sqrt();
    let (mut r0, mut r1) = (n.clone(), c.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    let (mut a, mut b) = (r1, t1);
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    if b.is_zero() || b > bound || a.magnitude() > bound.magnitude() {
        return Err(Error::NoReconstruction);
    }
    if !a.gcd(&b).is_one() || !b.gcd(n).is_one() {
        return Err(Error::NoReconstruction);
    }
    Ok(BigRational::new(a, b))
}

/// A deterministic stream of distinct random primes in `(2^30, 2^31)`.
pub struct PrimeStream {
    rng: ChaCha8Rng,
    seen: std::collections::HashSet<u64>,
}

impl PrimeStream {
    pub fn new(seed: u64) -> Self {
        PrimeStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seen: std::collections::HashSet::new(),
        }
    }

    /// Draws the next fresh prime from the window, counting every examined
    /// candidate against `budget`.
    pub fn next_prime(&mut self, budget: &mut usize) -> Result<u64, Error> {
        loop {
            if *budget == 0 {
                return Err(Error::ExhaustedCandidates);
            }
            *budget -= 1;
            let c = self.rng.gen_range(PRIME_WINDOW_LO + 1..PRIME_WINDOW_HI) | 1;
            if c > PRIME_WINDOW_LO && c < PRIME_WINDOW_HI && is_prime_u64(c) && self.seen.insert(c)
            {
                return Ok(c);
            }
        }
    }

    /// Marks a prime as consumed so it is never drawn again.
    pub fn exclude(&mut self, p: u64) {
        self.seen.insert(p);
    }
}

/// True if p divides the numerator or denominator of any coefficient of `f`
/// or of any polynomial in `gens`.
pub fn prime_touches_coefficients(
    f: &UniPoly<BigRational>,
    gens: &[MultiPoly<BigRational>],
    p: u64,
) -> bool {
    let pb = BigInt::from(p);
    // Zero coefficients (dense univariate storage) have nothing to divide.
    let hits = |q: &BigRational| -> bool {
        !Zero::is_zero(q) && ((q.numer() % &pb).is_zero() || (q.denom() % &pb).is_zero())
    };
    f.coeffs().iter().any(hits)
        || gens
            .iter()
            .any(|g| g.terms().iter().any(|(_, c)| hits(c)))
}

/// Draws `count` distinct random primes from `(2^30, 2^31)` that are
/// admissible of type A for `f` and divide no numerator or denominator of a
/// coefficient of `f` or of the generators `gens`.
///
/// Deterministic for a fixed seed. Gives up with
/// [`Error::ExhaustedCandidates`] after examining
/// [`DEFAULT_CANDIDATE_CAP`] candidates — for an irreducible `f` of degree
/// at least two, admissible primes have positive density, so exhaustion
/// signals a pathological input.
pub fn generate_admissible_primes(
    f: &UniPoly<BigRational>,
    gens: &[MultiPoly<BigRational>],
    count: usize,
    seed: u64,
) -> Result<Vec<u64>, Error> {
    if count == 0 {
        return Err(Error::LengthMismatch);
    }
    let mut stream = PrimeStream::new(seed);
    let mut budget = DEFAULT_CANDIDATE_CAP;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = stream.next_prime(&mut budget)?;
        if !prime_touches_coefficients(f, gens, p)
            && crate::modular::is_admissible_type_a(f, p)
        {
            out.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn mod_inverse_small_cases() {
        assert_eq!(mod_inverse(Fp::new(4, 5)).unwrap(), Fp::new(4, 5));
        assert_eq!(mod_inverse(Fp::new(2, 13)).unwrap(), Fp::new(7, 13));
        assert_eq!(mod_inverse(Fp::new(0, 7)), Err(Error::ZeroInversion));
    }

    #[test]
    fn mod_inverse_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
            73, 79, 83, 89, 97]
        {
            for a in 1..p {
                let inv = mod_inverse(Fp { val: a, p }).unwrap();
                assert_eq!((a * inv.val) % p, 1, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn crt_small_cases() {
        let x = crt_integers(&[bi(3), bi(7)], &[bi(5), bi(13)]).unwrap();
        assert_eq!(x, bi(33));
        assert_eq!(
            crt_integers(&[bi(1)], &[bi(5), bi(7)]),
            Err(Error::LengthMismatch)
        );
        assert_eq!(
            crt_integers(&[bi(1), bi(2)], &[bi(6), bi(4)]),
            Err(Error::NonCoprimeModuli)
        );
    }

    #[test]
    fn crt_randomized_agrees_with_all_moduli() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let small_primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 1009, 65537];
        for _ in 0..1000 {
            let k = rng.gen_range(1..=8);
            let mut moduli: Vec<u64> = Vec::new();
            let mut pool = small_primes.to_vec();
            for _ in 0..k {
                let i = rng.gen_range(0..pool.len());
                moduli.push(pool.swap_remove(i));
            }
            let residues: Vec<BigInt> = moduli
                .iter()
                .map(|&m| bi(rng.gen_range(0..m) as i64))
                .collect();
            let moduli_big: Vec<BigInt> = moduli.iter().map(|&m| bi(m as i64)).collect();
            let x = crt_integers(&residues, &moduli_big).unwrap();
            let product: BigInt = moduli_big.iter().product();
            assert!(x >= BigInt::zero() && x < product);
            for (r, m) in residues.iter().zip(&moduli_big) {
                assert_eq!(x.mod_floor(m), r.mod_floor(m));
            }
        }
    }

    #[test]
    fn farey_small_cases() {
        let n = bi(65);
        assert_eq!(
            farey(&bi(33), &n).unwrap(),
            BigRational::new(bi(1), bi(2))
        );
        assert_eq!(farey(&bi(2), &n).unwrap(), BigRational::from_i64(2).unwrap());
        assert_eq!(farey(&bi(8), &n), Err(Error::NoReconstruction));
        assert_eq!(farey(&bi(0), &n).unwrap(), BigRational::zero());
    }

    #[test]
    fn farey_round_trip_randomized() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // Large prime product so the Farey window is roomy.
        let primes = [1073741827u64, 1073741831, 1073741833, 1073741839];
        let n: BigInt = primes.iter().map(|&p| bi(p as i64)).product();
        let bound = (&n >> 1u32).sqrt();
        for _ in 0..1000 {
            let a = bi(rng.gen_range(-1_000_000..=1_000_000i64));
            let mut b = bi(rng.gen_range(1..=1_000_000i64));
            while !a.gcd(&b).is_one() || !b.gcd(&n).is_one() {
                b += 1;
            }
            assert!(a.magnitude() <= bound.magnitude() && b <= bound);
            // c = a * b^{-1} mod n
            let inv = bigint_mod_inverse(&b, &n).unwrap();
            let c = (&a * inv).mod_floor(&n);
            let rec = farey(&c, &n).unwrap();
            assert_eq!(rec, BigRational::new(a, b));
        }
    }

    #[test]
    fn prime_stream_is_deterministic_and_in_window() {
        let mut budget_a = DEFAULT_CANDIDATE_CAP;
        let mut budget_b = DEFAULT_CANDIDATE_CAP;
        let mut sa = PrimeStream::new(42);
        let mut sb = PrimeStream::new(42);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..50 {
            let p = sa.next_prime(&mut budget_a).unwrap();
            assert_eq!(p, sb.next_prime(&mut budget_b).unwrap());
            assert!(p > PRIME_WINDOW_LO && p < PRIME_WINDOW_HI);
            assert!(is_prime_u64(p));
            assert!(seen.insert(p), "stream repeated {p}");
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2) && is_prime_u64(3) && is_prime_u64(1073741827));
        assert!(!is_prime_u64(1) && !is_prime_u64(1073741825));
        // Strong pseudoprime to base 2 alone.
        assert!(!is_prime_u64(2047));
    }
}

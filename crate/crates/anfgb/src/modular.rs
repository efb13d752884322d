//! The two-level modular engine.
//!
//! For a tagged ideal Ĩ = ⟨H̃, f(t)⟩ ⊂ Q[X, t] the engine repeats rounds of:
//!
//! 1. draw random admissible primes p (type A: p keeps f squarefree and
//!    reducible mod p and divides no coefficient numerator/denominator),
//! 2. per prime, factor f mod p and compute one reduced Gröbner basis per
//!    irreducible factor f_i — each over the tiny ring F_p[X,t]/⟨f_i⟩,
//! 3. recombine the per-factor bases by Chinese remaindering of the t-poly
//!    coefficients (valid exactly when the prime is admissible of type B:
//!    equal basis sizes and equal leading-monomial sets across factors),
//! 4. majority-vote the per-prime results by leading-monomial set to drop
//!    unlucky primes, lift the survivors to Q by integer CRT plus Farey
//!    reconstruction, screen the candidate at one fresh prime, and finally
//!    verify it exactly over Q.
//!
//! Rounds enlarge the prime set (doubling the cumulative count) until the
//! verification succeeds or the round budget is exhausted. For a fixed seed
//! the prime sequence, and hence the entire run, is deterministic and
//! independent of the worker count: per-prime results are joined in draw
//! order.

use crate::arith::{self, Fp, PrimeStream, DEFAULT_CANDIDATE_CAP};
use crate::error::Error;
use crate::field::CoeffField;
use crate::frontend::TaggedIdeal;
use crate::groebner::{buchberger, is_reduced_gb, normal_form, GroebnerBasis};
use crate::mpoly::{map_mod_p, Monomial, MonomialOrder, MultiPoly};
use crate::upoly::{cra_poly, unipoly_mod_p, FactorList, UniPoly};
use num::{BigInt, BigRational};
use std::collections::{BTreeMap, HashSet};

/// Splitmix64-style mixing for deriving per-prime seeds from the run seed.
fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Embeds a univariate polynomial in the tag variable into the tagged ring.
pub fn embed_tag_poly<F: CoeffField>(
    f: &UniPoly<F>,
    arity: usize,
    order: MonomialOrder,
) -> MultiPoly<F> {
    let terms = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (Monomial::one(arity).with_t_exp(i as u32), c.clone()))
        .collect();
    MultiPoly::from_terms(terms, order)
}

/// Type-A admissibility: p divides no numerator or denominator of a
/// coefficient of f, and f mod p is squarefree and splits into at least two
/// irreducible factors.
pub fn is_admissible_type_a(f: &UniPoly<BigRational>, p: u64) -> bool {
    type_a_check(f, p, false)
}

fn type_a_check(f: &UniPoly<BigRational>, p: u64, allow_irreducible: bool) -> bool {
    if arith::prime_touches_coefficients(f, &[], p) {
        return false;
    }
    let f_p = match unipoly_mod_p(f, p) {
        Ok(f_p) => f_p,
        Err(_) => return false,
    };
    if f_p.is_constant() || !f_p.is_squarefree().unwrap_or(false) {
        return false;
    }
    allow_irreducible || f_p.irreducible_factor_count() >= 2
}

/// The coefficients in Q[t] of a tagged polynomial that actually involve t:
/// the set S_g, deduplicated and canonically ordered.
pub fn t_dependent_coefficients(g: &MultiPoly<BigRational>) -> Vec<UniPoly<BigRational>> {
    let mut per_x: BTreeMap<Vec<u32>, Vec<(u32, BigRational)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let k = m.arity() - 1;
        per_x
            .entry(m.0[..k].to_vec())
            .or_default()
            .push((m.t_exp(), c.clone()));
    }
    let mut out: Vec<UniPoly<BigRational>> = Vec::new();
    for (_, pairs) in per_x {
        let deg = pairs.iter().map(|(e, _)| *e).max().unwrap() as usize;
        if deg == 0 {
            continue;
        }
        let mut coeffs = vec![BigRational::new(BigInt::from(0), BigInt::from(1)); deg + 1];
        for (e, c) in pairs {
            coeffs[e as usize] = c;
        }
        let poly = UniPoly::from_coeffs(coeffs);
        if !out.contains(&poly) {
            out.push(poly);
        }
    }
    out.sort_by(|a, b| {
        a.coeffs()
            .len()
            .cmp(&b.coeffs().len())
            .then_with(|| a.coeffs().iter().cmp(b.coeffs().iter()))
    });
    out
}

/// Weak type-B admissibility: a cheap pre-filter run before any level-two
/// Gröbner computation. True iff p divides no numerator or denominator of
/// the generators' coefficients and no element of any S_g is divisible by an
/// irreducible factor of f mod p.
pub fn is_admissible_type_b_weak(
    f: &UniPoly<BigRational>,
    gens: &[MultiPoly<BigRational>],
    p: u64,
) -> bool {
    debug_assert!(is_admissible_type_a(f, p), "weak test expects a type-A prime");
    if arith::prime_touches_coefficients(&UniPoly::zero(), gens, p) {
        return false;
    }
    let f_p = unipoly_mod_p(f, p).expect("type-A prime");
    let factors = f_p.factor(mix_seed(0xB, p)).expect("nonzero minpoly");
    for g in gens {
        for s in t_dependent_coefficients(g) {
            let s_p = unipoly_mod_p(&s, p).expect("denominators checked");
            if factors.factors.iter().any(|(fi, _)| s_p.divisible_by(fi)) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the per-prime combination step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SnapshotVerdict {
    Ok,
    TypeBFailed,
}

/// Everything computed for one prime: the factorization of f mod p, the
/// per-factor reduced bases, and (for type-B primes) their Chinese-remainder
/// combination G̃_p.
#[derive(Clone, Debug)]
pub struct PrimeSnapshot {
    pub p: u64,
    pub factors: FactorList,
    pub per_factor_bases: Vec<GroebnerBasis<Fp>>,
    pub combined: Option<GroebnerBasis<Fp>>,
    pub verdict: SnapshotVerdict,
}

/// Strong type-B admissibility on computed level-two bases: all bases have
/// the same number of elements, and after removing the factor itself from
/// each basis the leading-monomial sets coincide.
pub fn check_type_b_strong(
    factors: &FactorList,
    per_factor_bases: &[GroebnerBasis<Fp>],
    order: MonomialOrder,
    arity: usize,
) -> bool {
    debug_assert_eq!(factors.len(), per_factor_bases.len());
    let size = per_factor_bases[0].len();
    if per_factor_bases.iter().any(|b| b.len() != size) {
        return false;
    }
    let mut reference: Option<Vec<Monomial>> = None;
    for ((fi, _), basis) in factors.factors.iter().zip(per_factor_bases) {
        let fi_emb = embed_tag_poly(fi, arity, order);
        let lms: Vec<Monomial> = basis
            .elements
            .iter()
            .filter(|g| **g != fi_emb)
            .map(|g| g.lm().clone())
            .collect();
        match &reference {
            None => reference = Some(lms),
            Some(r) => {
                if *r != lms {
                    return false;
                }
            }
        }
    }
    true
}

/// Splits a tagged polynomial into (X-monomial, coefficient in F_p[t]) pairs.
fn t_coefficient_map(g: &MultiPoly<Fp>) -> BTreeMap<Vec<u32>, UniPoly<Fp>> {
    let mut per_x: BTreeMap<Vec<u32>, Vec<(u32, Fp)>> = BTreeMap::new();
    for (m, c) in g.terms() {
        let k = m.arity() - 1;
        per_x.entry(m.0[..k].to_vec()).or_default().push((m.t_exp(), *c));
    }
    per_x
        .into_iter()
        .map(|(x, pairs)| {
            let deg = pairs.iter().map(|(e, _)| *e).max().unwrap() as usize;
            let p = pairs[0].1.p;
            let mut coeffs = vec![Fp::zero(p); deg + 1];
            for (e, c) in pairs {
                coeffs[e as usize] = c;
            }
            (x, UniPoly::from_coeffs(coeffs))
        })
        .collect()
}

/// Level-two computation for a single admissible prime: factor f mod p,
/// compute the reduced basis of ⟨H̃_p, f_i⟩ for every irreducible factor
/// f_i, check strong type-B admissibility, and — if it holds — combine the
/// per-factor bases into G̃_p by coefficient-wise Chinese remaindering over
/// F_p[t], matching elements across factors by leading monomial and treating
/// absent coefficients as zero. The combined set is recorded as computed;
/// nothing is interreduced after combination.
pub fn snapshot_for_prime(
    gens: &[MultiPoly<BigRational>],
    f: &UniPoly<BigRational>,
    order: MonomialOrder,
    arity: usize,
    p: u64,
    seed: u64,
) -> Result<PrimeSnapshot, Error> {
    let f_p = unipoly_mod_p(f, p)?;
    let gens_p = gens
        .iter()
        .map(|g| map_mod_p(g, p))
        .collect::<Result<Vec<_>, _>>()?;
    let factors = f_p.factor(mix_seed(seed, p))?;

    let mut per_factor_bases = Vec::with_capacity(factors.len());
    for (fi, _) in &factors.factors {
        let mut level2_gens = gens_p.clone();
        level2_gens.push(embed_tag_poly(fi, arity, order));
        per_factor_bases.push(buchberger(&level2_gens, order));
    }

    if !check_type_b_strong(&factors, &per_factor_bases, order, arity) {
        return Ok(PrimeSnapshot {
            p,
            factors,
            per_factor_bases,
            combined: None,
            verdict: SnapshotVerdict::TypeBFailed,
        });
    }

    // Degenerate unit ideal: every per-factor basis is {1}, so Ĩ_p = ⟨1⟩ and
    // its reduced basis is {1} itself.
    if per_factor_bases.iter().all(|b| b.is_unit()) {
        let one = MultiPoly::one(&Fp::one(p), arity);
        return Ok(PrimeSnapshot {
            p,
            factors,
            per_factor_bases,
            combined: Some(GroebnerBasis::new(vec![one], order)),
            verdict: SnapshotVerdict::Ok,
        });
    }

    // Match elements across factors by leading monomial. Bases are sorted by
    // increasing leading monomial and the strong check guarantees equal
    // leading-monomial sequences once each factor is removed.
    let moduli: Vec<UniPoly<Fp>> = factors.factors.iter().map(|(fi, _)| fi.clone()).collect();
    let reduced: Vec<Vec<&MultiPoly<Fp>>> = factors
        .factors
        .iter()
        .zip(&per_factor_bases)
        .map(|((fi, _), basis)| {
            let fi_emb = embed_tag_poly(fi, arity, order);
            basis.elements.iter().filter(|g| **g != fi_emb).collect()
        })
        .collect();
    let element_count = reduced[0].len();
    let mut combined: Vec<MultiPoly<Fp>> = Vec::with_capacity(element_count + 1);
    for e in 0..element_count {
        // Union of X-monomial supports, zero-filled per factor.
        let mut support: BTreeMap<Vec<u32>, Vec<UniPoly<Fp>>> = BTreeMap::new();
        for (i, elems) in reduced.iter().enumerate() {
            for (x, coeff) in t_coefficient_map(elems[e]) {
                support
                    .entry(x)
                    .or_insert_with(|| vec![UniPoly::zero(); factors.len()])[i] = coeff;
            }
        }
        let mut terms: Vec<(Monomial, Fp)> = Vec::new();
        for (x, residues) in support {
            let lifted = cra_poly(&residues, &moduli)?;
            for (i, c) in lifted.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let mut mono = x.clone();
                    mono.push(i as u32);
                    terms.push((Monomial(mono), *c));
                }
            }
        }
        combined.push(MultiPoly::from_terms(terms, order));
    }
    combined.push(embed_tag_poly(&f_p, arity, order));

    Ok(PrimeSnapshot {
        p,
        factors,
        per_factor_bases,
        combined: Some(GroebnerBasis::new(combined, order)),
        verdict: SnapshotVerdict::Ok,
    })
}

/// Per-prime results grouped by leading-monomial set; the vote weight of a
/// class is the number of primes accumulated in it across all rounds.
#[derive(Clone, Debug, Default)]
pub struct ResultPool {
    pub classes: Vec<PoolClass>,
}

#[derive(Clone, Debug)]
pub struct PoolClass {
    pub lms: Vec<Monomial>,
    pub members: Vec<(u64, GroebnerBasis<Fp>)>,
}

impl ResultPool {
    pub fn new() -> Self {
        ResultPool::default()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Files a combined per-prime basis under its leading-monomial set.
    pub fn insert(&mut self, p: u64, basis: GroebnerBasis<Fp>) {
        let lms = basis.leading_monomials();
        match self.classes.iter_mut().find(|c| c.lms == lms) {
            Some(class) => class.members.push((p, basis)),
            None => self.classes.push(PoolClass {
                lms,
                members: vec![(p, basis)],
            }),
        }
    }

    /// One-line description of the class structure, used in diagnostics.
    pub fn summary(&self) -> String {
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{} primes / {} elements", c.members.len(), c.lms.len()))
            .collect();
        format!("[{}]", classes.join(", "))
    }
}

/// Keeps only the majority leading-monomial class (weight = accumulated
/// prime count); ties go to the class containing the smallest prime.
pub fn delete_unlucky(pool: ResultPool) -> Result<ResultPool, Error> {
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    let best = pool
        .classes
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| {
            a.members.len().cmp(&b.members.len()).then_with(|| {
                let min_a = a.members.iter().map(|(p, _)| *p).min().unwrap();
                let min_b = b.members.iter().map(|(p, _)| *p).min().unwrap();
                min_b.cmp(&min_a)
            })
        })
        .map(|(i, _)| i)
        .unwrap();
    let class = pool.classes.into_iter().nth(best).unwrap();
    Ok(ResultPool {
        classes: vec![class],
    })
}

/// Lifts a pool of structurally identical per-prime bases to Q: integer CRT
/// per monomial across all primes, then Farey reconstruction modulo the
/// prime product. Monomials absent for a prime contribute residue zero.
pub fn lift_to_rationals(pool: &ResultPool) -> Result<GroebnerBasis<BigRational>, Error> {
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    debug_assert_eq!(pool.classes.len(), 1, "lift expects a voted pool");
    let class = &pool.classes[0];
    let members = &class.members;
    let element_count = class.lms.len();
    debug_assert!(members
        .iter()
        .all(|(_, b)| b.leading_monomials() == class.lms));
    let moduli: Vec<BigInt> = members.iter().map(|(p, _)| BigInt::from(*p)).collect();
    let n: BigInt = moduli.iter().product();
    let order = members[0].1.order;

    let mut elements = Vec::with_capacity(element_count);
    for e in 0..element_count {
        let mut support: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
        for (i, (_, basis)) in members.iter().enumerate() {
            for (m, c) in basis.elements[e].terms() {
                support
                    .entry(m.0.clone())
                    .or_insert_with(|| vec![BigInt::from(0); members.len()])[i] =
                    BigInt::from(c.val);
            }
        }
        let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
        for (exps, residues) in support {
            let c = if members.len() == 1 {
                residues.into_iter().next().unwrap()
            } else {
                arith::crt_integers(&residues, &moduli)?
            };
            let q = arith::farey(&c, &n)?;
            if !CoeffField::is_zero(&q) {
                terms.push((Monomial(exps), q));
            }
        }
        elements.push(MultiPoly::from_terms(terms, order));
    }
    Ok(GroebnerBasis::new(elements, order))
}

/// Configuration of the modular engine.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Primes in the first round; `None` picks 10, or 25 with >= 32 workers.
    pub initial_primes: Option<usize>,
    /// Round budget before giving up.
    pub max_rounds: usize,
    /// Seed for all random choices (primes, factorization splits).
    pub seed: u64,
    /// Worker threads for per-prime computations; 0 = all available cores.
    pub workers: usize,
    /// Accept primes that keep f irreducible (degenerates to a single-factor
    /// scheme for those primes; useful when splitting primes are scarce).
    pub allow_irreducible: bool,
    /// Run the weak type-B pre-filter before level-two computations.
    pub weak_prefilter: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            initial_primes: None,
            max_rounds: 12,
            seed: 0,
            workers: 0,
            allow_irreducible: false,
            weak_prefilter: true,
        }
    }
}

impl EngineConfig {
    fn effective_workers(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        }
    }

    fn first_batch(&self) -> usize {
        self.initial_primes
            .unwrap_or(if self.effective_workers() >= 32 { 25 } else { 10 })
    }
}

/// Draws the next prime that is type-A admissible (relaxed if
/// `allow_irreducible`) and divides no coefficient of f or the generators.
fn next_usable_prime(
    stream: &mut PrimeStream,
    budget: &mut usize,
    ideal: &TaggedIdeal,
    allow_irreducible: bool,
) -> Result<u64, Error> {
    loop {
        let p = stream.next_prime(budget)?;
        if !arith::prime_touches_coefficients(&ideal.minpoly, &ideal.generators, p)
            && type_a_check(&ideal.minpoly, p, allow_irreducible)
        {
            return Ok(p);
        }
    }
}

/// Screens a lifted candidate basis at one fresh admissible prime: the
/// generators of Ĩ_p must reduce to zero modulo the candidate, and the
/// candidate modulo p must reduce to zero against a freshly computed G̃_p.
/// Primes whose snapshot fails type B (or that hit a candidate denominator)
/// are redrawn, a bounded number of times.
pub fn p_test(
    ideal: &TaggedIdeal,
    candidate: &GroebnerBasis<BigRational>,
    used_primes: &HashSet<u64>,
    seed: u64,
) -> Result<bool, Error> {
    let mut used = used_primes.clone();
    p_test_impl(ideal, candidate, &mut used, seed)
}

const P_TEST_RETRIES: usize = 32;

fn p_test_impl(
    ideal: &TaggedIdeal,
    candidate: &GroebnerBasis<BigRational>,
    used_primes: &mut HashSet<u64>,
    seed: u64,
) -> Result<bool, Error> {
    let mut stream = PrimeStream::new(mix_seed(seed, 0x7E57));
    for &p in used_primes.iter() {
        stream.exclude(p);
    }
    let mut budget = DEFAULT_CANDIDATE_CAP;
    for _ in 0..P_TEST_RETRIES {
        let p = next_usable_prime(&mut stream, &mut budget, ideal, false)?;
        used_primes.insert(p);
        let snapshot = snapshot_for_prime(
            &ideal.generators,
            &ideal.minpoly,
            ideal.order,
            ideal.arity,
            p,
            seed,
        )?;
        if snapshot.verdict != SnapshotVerdict::Ok {
            continue;
        }
        let candidate_p: Vec<MultiPoly<Fp>> =
            match candidate.elements.iter().map(|g| map_mod_p(g, p)).collect() {
                Ok(v) => v,
                Err(Error::BadPrime(_)) => continue,
                Err(e) => return Err(e),
            };
        let f_p = unipoly_mod_p(&ideal.minpoly, p)?;
        let mut ideal_gens_p: Vec<MultiPoly<Fp>> = ideal
            .generators
            .iter()
            .map(|g| map_mod_p(g, p))
            .collect::<Result<_, _>>()?;
        ideal_gens_p.push(embed_tag_poly(&f_p, ideal.arity, ideal.order));

        let gens_vanish = ideal_gens_p
            .iter()
            .all(|g| normal_form(g, &candidate_p, ideal.order).is_zero());
        let snapshot_basis = snapshot.combined.as_ref().unwrap();
        let candidate_vanishes = candidate_p
            .iter()
            .all(|g| normal_form(g, &snapshot_basis.elements, ideal.order).is_zero());
        return Ok(gens_vanish && candidate_vanishes);
    }
    Err(Error::ExhaustedCandidates)
}

/// Computes the reduced Gröbner basis of the tagged ideal Ĩ = ⟨H̃, f⟩ over Q
/// by the two-level modular scheme. Deterministic for a fixed seed,
/// independent of `workers`.
pub fn modular_groebner(
    ideal: &TaggedIdeal,
    config: &EngineConfig,
) -> Result<GroebnerBasis<BigRational>, Error> {
    let workers = config.effective_workers();
    let thread_pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction");

    let mut stream = PrimeStream::new(config.seed);
    let mut budget = DEFAULT_CANDIDATE_CAP;
    let mut used: HashSet<u64> = HashSet::new();
    let mut pool = ResultPool::new();
    let mut batch_size = config.first_batch();
    let mut cumulative = 0usize;

    for round in 1..=config.max_rounds {
        let mut batch = Vec::with_capacity(batch_size);
        while batch.len() < batch_size {
            let p = next_usable_prime(&mut stream, &mut budget, ideal, config.allow_irreducible)?;
            used.insert(p);
            if config.weak_prefilter
                && !is_admissible_type_b_weak(&ideal.minpoly, &ideal.generators, p)
            {
                continue;
            }
            batch.push(p);
        }
        cumulative += batch_size;

        let snapshots: Vec<Result<PrimeSnapshot, Error>> = thread_pool.install(|| {
            use rayon::prelude::*;
            batch
                .par_iter()
                .map(|&p| {
                    snapshot_for_prime(
                        &ideal.generators,
                        &ideal.minpoly,
                        ideal.order,
                        ideal.arity,
                        p,
                        config.seed,
                    )
                })
                .collect()
        });
        for snapshot in snapshots {
            let snapshot = snapshot?;
            if snapshot.verdict == SnapshotVerdict::Ok {
                pool.insert(snapshot.p, snapshot.combined.clone().unwrap());
            }
        }

        if !pool.is_empty() {
            pool = delete_unlucky(pool)?;
            match lift_to_rationals(&pool) {
                Err(Error::NoReconstruction) => {}
                Err(e) => return Err(e),
                Ok(candidate) => {
                    if p_test_impl(ideal, &candidate, &mut used, mix_seed(config.seed, round as u64))?
                        && final_verification(ideal, &candidate)
                    {
                        return Ok(candidate);
                    }
                }
            }
        }

        batch_size = cumulative;
    }

    Err(Error::RoundLimitExceeded {
        rounds: config.max_rounds,
        pool: pool.summary(),
    })
}

/// The exact final check over Q: the input generators (and f) reduce to zero
/// modulo the candidate, and the candidate is a reduced Gröbner basis of the
/// ideal it generates.
fn final_verification(ideal: &TaggedIdeal, candidate: &GroebnerBasis<BigRational>) -> bool {
    let f_emb = embed_tag_poly(&ideal.minpoly, ideal.arity, ideal.order);
    let all_reduce = ideal
        .generators
        .iter()
        .chain(std::iter::once(&f_emb))
        .all(|g| normal_form(g, &candidate.elements, ideal.order).is_zero());
    all_reduce && is_reduced_gb(&candidate.elements, ideal.order)
}

/// Structural shape of a reduced basis of ⟨H̃, f⟩: unless the basis is {1},
/// it contains the embedded f and every other element is monic viewed in
/// (R[t])[X] — a single leading term with tag exponent zero and unit
/// coefficient per leading X-part.
pub fn minpoly_structure_holds<F: CoeffField>(
    basis: &GroebnerBasis<F>,
    f_embedded: &MultiPoly<F>,
) -> bool {
    if basis.is_unit() {
        return true;
    }
    let mut seen_f = false;
    for g in &basis.elements {
        if g == f_embedded {
            seen_f = true;
            continue;
        }
        let lm = g.lm();
        if lm.t_exp() != 0 || !g.lc().is_one() {
            return false;
        }
        let x_part = lm.with_t_exp(0);
        let same_x = g
            .terms()
            .iter()
            .filter(|(m, _)| m.with_t_exp(0) == x_part)
            .count();
        if same_x != 1 {
            return false;
        }
    }
    seen_f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::BaseOrder;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn qpoly(ints: &[i64]) -> UniPoly<BigRational> {
        UniPoly::from_coeffs(ints.iter().map(|&n| q(n)).collect())
    }

    const ORDER: MonomialOrder = MonomialOrder::Product(BaseOrder::DegRevLex);

    /// x^2 + t*y and t*x*y − x + t in Q[x, y, t].
    fn demo_gens() -> Vec<MultiPoly<BigRational>> {
        vec![
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![2, 0, 0]), q(1)),
                    (Monomial(vec![0, 1, 1]), q(1)),
                ],
                ORDER,
            ),
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![1, 1, 1]), q(1)),
                    (Monomial(vec![1, 0, 0]), q(-1)),
                    (Monomial(vec![0, 0, 1]), q(1)),
                ],
                ORDER,
            ),
        ]
    }

    fn demo_ideal() -> TaggedIdeal {
        TaggedIdeal {
            generators: demo_gens(),
            minpoly: qpoly(&[1, 0, 1]),
            order: ORDER,
            arity: 3,
        }
    }

    #[test]
    fn type_a_examples() {
        let f = qpoly(&[1, 0, 1]); // t^2 + 1
        assert!(is_admissible_type_a(&f, 5));
        assert!(!is_admissible_type_a(&f, 2)); // not squarefree mod 2
        assert!(!is_admissible_type_a(&f, 3)); // irreducible mod 3
        assert!(is_admissible_type_a(&f, 13));
    }

    #[test]
    fn small_candidate_pool_filters_to_splitting_primes() {
        let f = qpoly(&[1, 0, 1]);
        let gens = demo_gens();
        let admitted: Vec<u64> = [2u64, 3, 5, 13]
            .into_iter()
            .filter(|&p| {
                !arith::prime_touches_coefficients(&f, &gens, p) && is_admissible_type_a(&f, p)
            })
            .collect();
        assert_eq!(admitted, vec![5, 13]);
    }

    #[test]
    fn t_dependent_coefficient_examples() {
        // g = t^2·x + y → S_g = {t^2}
        let g = MultiPoly::from_terms(
            vec![
                (Monomial(vec![1, 0, 2]), q(1)),
                (Monomial(vec![0, 1, 0]), q(1)),
            ],
            ORDER,
        );
        assert_eq!(t_dependent_coefficients(&g), vec![qpoly(&[0, 0, 1])]);
        // g = x + y + t − 1 → S_g = {t − 1}
        let g = MultiPoly::from_terms(
            vec![
                (Monomial(vec![1, 0, 0]), q(1)),
                (Monomial(vec![0, 1, 0]), q(1)),
                (Monomial(vec![0, 0, 1]), q(1)),
                (Monomial(vec![0, 0, 0]), q(-1)),
            ],
            ORDER,
        );
        assert_eq!(t_dependent_coefficients(&g), vec![qpoly(&[-1, 1])]);
    }

    fn counterexample_f() -> UniPoly<BigRational> {
        qpoly(&[1, 1, 0, 1]) // t^3 + t + 1
    }

    fn cx_gen(terms: &[(i64, [u32; 3])]) -> MultiPoly<BigRational> {
        MultiPoly::from_terms(
            terms
                .iter()
                .map(|&(c, e)| (Monomial(e.to_vec()), q(c)))
                .collect(),
            ORDER,
        )
    }

    #[test]
    fn weak_type_b_examples() {
        let f = counterexample_f();
        // {x^2 + x·y + t, x + y + t − 1}: the constant coefficient t − 1 of
        // the second generator is divisible by the factor t − 1 mod 3.
        let rejected = vec![
            cx_gen(&[(1, [2, 0, 0]), (1, [1, 1, 0]), (1, [0, 0, 1])]),
            cx_gen(&[(1, [1, 0, 0]), (1, [0, 1, 0]), (1, [0, 0, 1]), (-1, [0, 0, 0])]),
        ];
        assert!(!is_admissible_type_b_weak(&f, &rejected, 3));
        // {x^2 + x·y + t, t^2·x + y}: S-coefficients t and t^2 are divisible
        // by neither factor of f mod 3.
        let accepted = vec![
            cx_gen(&[(1, [2, 0, 0]), (1, [1, 1, 0]), (1, [0, 0, 1])]),
            cx_gen(&[(1, [1, 0, 2]), (1, [0, 1, 0])]),
        ];
        assert!(is_admissible_type_b_weak(&f, &accepted, 3));
    }

    /// Per-factor bases for ⟨gens, f⟩ at p, keyed by the factor.
    fn bases_at_3(gens: &[MultiPoly<BigRational>]) -> PrimeSnapshot {
        snapshot_for_prime(gens, &counterexample_f(), ORDER, 3, 3, 1).unwrap()
    }

    fn fp_terms(terms: &[(i64, [u32; 3])], p: u64) -> MultiPoly<Fp> {
        MultiPoly::from_terms(
            terms
                .iter()
                .map(|&(c, e)| (Monomial(e.to_vec()), Fp::new(c, p)))
                .collect(),
            ORDER,
        )
    }

    #[test]
    fn strong_type_b_counterexamples() {
        // J = ⟨x^2+xy+t, x+y+t−1⟩: sizes 1 vs 3 → rejected.
        let j = bases_at_3(&[
            cx_gen(&[(1, [2, 0, 0]), (1, [1, 1, 0]), (1, [0, 0, 1])]),
            cx_gen(&[(1, [1, 0, 0]), (1, [0, 1, 0]), (1, [0, 0, 1]), (-1, [0, 0, 0])]),
        ]);
        assert_eq!(j.verdict, SnapshotVerdict::TypeBFailed);
        assert!(j.combined.is_none());
        assert_eq!(j.per_factor_bases[0].len(), 1);
        assert!(j.per_factor_bases[0].is_unit());
        assert_eq!(j.per_factor_bases[1].len(), 3);
        // The second factor's basis is {t^2+t−1, y+1, x+t+1}.
        assert_eq!(
            j.per_factor_bases[1].elements,
            vec![
                fp_terms(&[(1, [0, 0, 2]), (1, [0, 0, 1]), (-1, [0, 0, 0])], 3),
                fp_terms(&[(1, [0, 1, 0]), (1, [0, 0, 0])], 3),
                fp_terms(&[(1, [1, 0, 0]), (1, [0, 0, 1]), (1, [0, 0, 0])], 3),
            ]
        );

        // J′ = ⟨x^2+xy+t, t^2·x+y⟩: sizes 1 vs 3 → rejected.
        let j1 = bases_at_3(&[
            cx_gen(&[(1, [2, 0, 0]), (1, [1, 1, 0]), (1, [0, 0, 1])]),
            cx_gen(&[(1, [1, 0, 2]), (1, [0, 1, 0])]),
        ]);
        assert_eq!(j1.verdict, SnapshotVerdict::TypeBFailed);
        assert_eq!(j1.per_factor_bases[0].len(), 1);
        assert_eq!(
            j1.per_factor_bases[1].elements,
            vec![
                fp_terms(&[(1, [0, 0, 2]), (1, [0, 0, 1]), (-1, [0, 0, 0])], 3),
                fp_terms(&[(1, [1, 0, 0]), (1, [0, 1, 1]), (-1, [0, 1, 0])], 3),
                fp_terms(&[(1, [0, 2, 0]), (-1, [0, 0, 0])], 3),
            ]
        );

        // J″ = ⟨x^2+xy+t, t·x+y+t⟩: sizes match (3 = 3) but the
        // leading-monomial sets {x, y} vs {x, y^2} differ → rejected.
        let j2 = bases_at_3(&[
            cx_gen(&[(1, [2, 0, 0]), (1, [1, 1, 0]), (1, [0, 0, 1])]),
            cx_gen(&[(1, [1, 0, 1]), (1, [0, 1, 0]), (1, [0, 0, 1])]),
        ]);
        assert_eq!(j2.verdict, SnapshotVerdict::TypeBFailed);
        assert_eq!(
            j2.per_factor_bases[0].elements,
            vec![
                fp_terms(&[(1, [0, 0, 1]), (-1, [0, 0, 0])], 3),
                fp_terms(&[(1, [0, 1, 0]), (-1, [0, 0, 0])], 3),
                fp_terms(&[(1, [1, 0, 0]), (-1, [0, 0, 0])], 3),
            ]
        );
        assert_eq!(
            j2.per_factor_bases[1].elements,
            vec![
                fp_terms(&[(1, [0, 0, 2]), (1, [0, 0, 1]), (-1, [0, 0, 0])], 3),
                fp_terms(&[(1, [1, 0, 0]), (1, [0, 1, 1]), (1, [0, 1, 0]), (1, [0, 0, 0])], 3),
                fp_terms(&[(1, [0, 2, 0]), (-1, [0, 1, 1]), (1, [0, 1, 0]), (1, [0, 0, 1]), (1, [0, 0, 0])], 3),
            ]
        );
    }

    #[test]
    fn snapshot_for_demo_prime_5() {
        let snapshot =
            snapshot_for_prime(&demo_gens(), &qpoly(&[1, 0, 1]), ORDER, 3, 5, 1).unwrap();
        assert_eq!(snapshot.verdict, SnapshotVerdict::Ok);
        // Factors in canonical order: t+2 (= t−3) and t+3 (= t−2).
        assert_eq!(
            snapshot.factors.factors,
            vec![
                (UniPoly::from_int_coeffs(&[2, 1], 5), 1),
                (UniPoly::from_int_coeffs(&[3, 1], 5), 1),
            ]
        );
        // Basis for t − 2 (second factor): {t−2, y^2+2x+2y, xy+2x+1, x^2+2y}.
        assert_eq!(
            snapshot.per_factor_bases[1].elements,
            vec![
                fp_terms(&[(1, [0, 0, 1]), (-2, [0, 0, 0])], 5),
                fp_terms(&[(1, [0, 2, 0]), (2, [1, 0, 0]), (2, [0, 1, 0])], 5),
                fp_terms(&[(1, [1, 1, 0]), (2, [1, 0, 0]), (1, [0, 0, 0])], 5),
                fp_terms(&[(1, [2, 0, 0]), (2, [0, 1, 0])], 5),
            ]
        );
        // Basis for t + 2: same shape with signs flipped.
        assert_eq!(
            snapshot.per_factor_bases[0].elements,
            vec![
                fp_terms(&[(1, [0, 0, 1]), (2, [0, 0, 0])], 5),
                fp_terms(&[(1, [0, 2, 0]), (-2, [1, 0, 0]), (-2, [0, 1, 0])], 5),
                fp_terms(&[(1, [1, 1, 0]), (-2, [1, 0, 0]), (1, [0, 0, 0])], 5),
                fp_terms(&[(1, [2, 0, 0]), (-2, [0, 1, 0])], 5),
            ]
        );
        // Combination: {t^2+1, y^2+xt+yt, xy+xt+1, x^2+yt}.
        let combined = snapshot.combined.unwrap();
        assert_eq!(
            combined.elements,
            vec![
                fp_terms(&[(1, [0, 0, 2]), (1, [0, 0, 0])], 5),
                fp_terms(&[(1, [0, 2, 0]), (1, [1, 0, 1]), (1, [0, 1, 1])], 5),
                fp_terms(&[(1, [1, 1, 0]), (1, [1, 0, 1]), (1, [0, 0, 0])], 5),
                fp_terms(&[(1, [2, 0, 0]), (1, [0, 1, 1])], 5),
            ]
        );
        // The combination agrees with the basis computed directly from
        // ⟨H̃_p, f_p⟩ without the factor split.
        let mut direct_gens: Vec<MultiPoly<Fp>> = demo_gens()
            .iter()
            .map(|g| map_mod_p(g, 5).unwrap())
            .collect();
        direct_gens.push(embed_tag_poly(
            &unipoly_mod_p(&qpoly(&[1, 0, 1]), 5).unwrap(),
            3,
            ORDER,
        ));
        assert_eq!(buchberger(&direct_gens, ORDER), combined);
        // Congruence: combined ≡ per-factor basis modulo each factor. The
        // embedded f_p sorts first (its leading monomial is a pure tag
        // power), so the matched elements are the remaining three.
        for ((fi, _), basis) in snapshot.factors.factors.iter().zip(&snapshot.per_factor_bases) {
            let fi_emb = embed_tag_poly(fi, 3, ORDER);
            let residual: Vec<&MultiPoly<Fp>> =
                basis.elements.iter().filter(|g| **g != fi_emb).collect();
            for (g, expected) in combined.elements[1..].iter().zip(residual) {
                let diff = g.sub(expected, ORDER);
                for (_, coeff) in t_coefficient_map(&diff) {
                    assert!(coeff.divisible_by(fi));
                }
            }
        }
    }

    #[test]
    fn lift_demo_pool_to_rationals() {
        let f = qpoly(&[1, 0, 1]);
        let mut pool = ResultPool::new();
        for p in [5u64, 13] {
            let s = snapshot_for_prime(&demo_gens(), &f, ORDER, 3, p, 1).unwrap();
            assert_eq!(s.verdict, SnapshotVerdict::Ok);
            pool.insert(p, s.combined.unwrap());
        }
        assert_eq!(pool.classes.len(), 1, "both primes vote for the same class");
        let pool = delete_unlucky(pool).unwrap();
        let lifted = lift_to_rationals(&pool).unwrap();
        let expected = vec![
            cx_gen(&[(1, [0, 0, 2]), (1, [0, 0, 0])]),
            cx_gen(&[(1, [0, 2, 0]), (1, [1, 0, 1]), (1, [0, 1, 1])]),
            cx_gen(&[(1, [1, 1, 0]), (1, [1, 0, 1]), (1, [0, 0, 0])]),
            cx_gen(&[(1, [2, 0, 0]), (1, [0, 1, 1])]),
        ];
        assert_eq!(lifted.elements, expected);
        let f_emb = embed_tag_poly(&f, 3, ORDER);
        assert!(minpoly_structure_holds(&lifted, &f_emb));
    }

    #[test]
    fn delete_unlucky_votes_and_breaks_ties() {
        let real = snapshot_for_prime(&demo_gens(), &qpoly(&[1, 0, 1]), ORDER, 3, 5, 1)
            .unwrap()
            .combined
            .unwrap();
        let fake = GroebnerBasis::new(vec![fp_terms(&[(1, [1, 0, 0])], 13)], ORDER);
        let mut pool = ResultPool::new();
        pool.insert(5, real.clone());
        pool.insert(13, fake.clone());
        pool.insert(17, real.clone());
        let voted = delete_unlucky(pool).unwrap();
        assert_eq!(voted.classes[0].members.len(), 2);
        assert_eq!(voted.classes[0].members[0].0, 5);
        // Tie: the class containing the smallest prime wins.
        let mut pool = ResultPool::new();
        pool.insert(13, fake);
        pool.insert(5, real);
        let voted = delete_unlucky(pool).unwrap();
        assert_eq!(voted.classes[0].members[0].0, 5);
        assert!(matches!(
            delete_unlucky(ResultPool::new()),
            Err(Error::EmptyPool)
        ));
    }

    #[test]
    fn p_test_accepts_true_basis_and_rejects_corrupted() {
        let ideal = demo_ideal();
        let f = qpoly(&[1, 0, 1]);
        let mut pool = ResultPool::new();
        for p in [5u64, 13] {
            let s = snapshot_for_prime(&demo_gens(), &f, ORDER, 3, p, 1).unwrap();
            pool.insert(p, s.combined.unwrap());
        }
        let lifted = lift_to_rationals(&delete_unlucky(pool).unwrap()).unwrap();
        let used: HashSet<u64> = [5u64, 13].into_iter().collect();
        assert!(p_test(&ideal, &lifted, &used, 99).unwrap());
        // Corrupt one coefficient: x^2 + y·t → x^2 + 2·y·t.
        let mut corrupted = lifted.clone();
        let last = corrupted.elements.len() - 1;
        corrupted.elements[last] =
            cx_gen(&[(1, [2, 0, 0]), (2, [0, 1, 1])]);
        assert!(!p_test(&ideal, &corrupted, &used, 99).unwrap());
    }

    #[test]
    fn modular_engine_demo_end_to_end() {
        let ideal = demo_ideal();
        let config = EngineConfig {
            seed: 42,
            workers: 1,
            ..EngineConfig::default()
        };
        let basis = modular_groebner(&ideal, &config).unwrap();
        let expected = vec![
            cx_gen(&[(1, [0, 0, 2]), (1, [0, 0, 0])]),
            cx_gen(&[(1, [0, 2, 0]), (1, [1, 0, 1]), (1, [0, 1, 1])]),
            cx_gen(&[(1, [1, 1, 0]), (1, [1, 0, 1]), (1, [0, 0, 0])]),
            cx_gen(&[(1, [2, 0, 0]), (1, [0, 1, 1])]),
        ];
        assert_eq!(basis.elements, expected);
    }

    #[test]
    fn modular_engine_unit_ideal_short_circuits() {
        let ideal = TaggedIdeal {
            generators: vec![
                cx_gen(&[(1, [0, 0, 0])]),
            ],
            minpoly: qpoly(&[1, 0, 1]),
            order: ORDER,
            arity: 3,
        };
        let config = EngineConfig {
            seed: 7,
            workers: 1,
            ..EngineConfig::default()
        };
        let basis = modular_groebner(&ideal, &config).unwrap();
        assert!(basis.is_unit());
    }

    #[test]
    fn modular_engine_bare_minpoly_ideal() {
        let ideal = TaggedIdeal {
            generators: vec![],
            minpoly: qpoly(&[1, 0, 1]),
            order: ORDER,
            arity: 3,
        };
        let config = EngineConfig {
            seed: 7,
            workers: 1,
            ..EngineConfig::default()
        };
        let basis = modular_groebner(&ideal, &config).unwrap();
        assert_eq!(
            basis.elements,
            vec![cx_gen(&[(1, [0, 0, 2]), (1, [0, 0, 0])])]
        );
    }
}

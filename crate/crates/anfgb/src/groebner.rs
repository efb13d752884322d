//! Buchberger's algorithm over an arbitrary coefficient field.
//!
//! The engine is deliberately classical: S-pairs are selected by the sugar
//! strategy (smallest phantom-homogenization degree first, then smallest
//! lcm), pairs are discarded by the product criterion (coprime leading
//! monomials) and the chain criterion, S-polynomials are head-reduced
//! against the shortest available reducer (tails are left alone during the
//! loop — full tail reduction there only smears coefficient growth through
//! every term), and the final basis is interreduced and sorted, so the
//! output is *the* reduced Gröbner basis of the input ideal — unique, hence
//! independent of generator order and of the selection heuristics.
//!
//! Working elements are kept in primitive form ([`MultiPoly::primitive`]:
//! monic over a finite field, integral and content-free over Q and Q(α))
//! and every reduction is fraction-free, canceling heads by
//! cross-multiplication. Exact division of coefficients therefore never
//! happens during the computation; only the final interreduction rescales
//! the basis monic.

use crate::field::CoeffField;
use crate::mpoly::{BaseOrder, Monomial, MonomialOrder, MultiPoly};
use std::collections::BTreeSet;

/// A basis of an ideal: monic elements sorted by increasing leading
/// monomial. Construction does not by itself certify the Gröbner property;
/// [`buchberger`] output does, and [`is_reduced_gb`] checks it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis<F> {
    pub elements: Vec<MultiPoly<F>>,
    pub order: MonomialOrder,
}

impl<F: CoeffField> GroebnerBasis<F> {
    /// Wraps a set of elements, sorting by increasing leading monomial.
    pub fn new(mut elements: Vec<MultiPoly<F>>, order: MonomialOrder) -> Self {
        elements.sort_by(|a, b| order.compare(a.lm(), b.lm()));
        GroebnerBasis { elements, order }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The set of leading monomials, sorted increasing.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| g.lm().clone()).collect()
    }

    /// True if the basis is exactly `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }
}

/// Picks a reducer for `lm` among `basis`: of the elements whose leading
/// monomial divides `lm`, the one with the fewest terms (ties to the earliest
/// index, so the choice is deterministic). Short reducers keep coefficient
/// growth down. Returns the index and the cofactor `lm / lm(basis[k])`.
fn select_reducer<F: CoeffField>(
    basis: &[MultiPoly<F>],
    lm: &Monomial,
) -> Option<(usize, Monomial)> {
    let mut best: Option<(usize, Monomial)> = None;
    let mut best_len = usize::MAX;
    for (k, h) in basis.iter().enumerate() {
        if h.is_zero() || h.terms().len() >= best_len {
            continue;
        }
        if let Some(ratio) = lm.try_div(h.lm()) {
            best_len = h.terms().len();
            best = Some((k, ratio));
        }
    }
    best
}

/// A normal form of `g` with respect to `basis`: no term of the result is
/// divisible by any leading monomial of `basis`, and `u·g − result` lies in
/// the ideal generated by `basis` for some nonzero scalar `u` (reduction is
/// fraction-free, so the result may be a scalar multiple of the fully
/// monic-reduced normal form). In particular the result is zero exactly when
/// the normal form is zero, and callers that need the canonical value
/// rescale the output. Zero elements of `basis` are ignored.
pub fn normal_form<F: CoeffField>(
    g: &MultiPoly<F>,
    basis: &[MultiPoly<F>],
    order: MonomialOrder,
) -> MultiPoly<F> {
    reduce_tracking_sugar(g, 0, basis, None, order, true).0
}

/// Reduction core shared by [`normal_form`] and the Buchberger loop.
///
/// Reduction steps are fraction-free: to cancel the head against a reducer
/// `h` the whole remainder is cross-multiplied by `lc(h)` instead of
/// dividing by it, so no coefficient inversion ever happens and — with basis
/// elements kept primitive — denominators cannot compound. The accumulated
/// scalar is periodically stripped again via the primitive rescale.
///
/// When `sugars` is given, the phantom-homogenization degree of the result
/// is tracked: every reduction step by `m·basis[k]` raises it to at least
/// `deg m + sugars[k]`. With `full_tails` false the reduction stops at the
/// first irreducible leading monomial and returns the whole remainder (a
/// weak normal form); the Buchberger loop runs in this mode because
/// tail-reducing intermediate elements smears coefficient growth through
/// every term, while head reduction is all the correctness argument needs.
fn reduce_tracking_sugar<F: CoeffField>(
    g: &MultiPoly<F>,
    start_sugar: u32,
    basis: &[MultiPoly<F>],
    sugars: Option<&[u32]>,
    order: MonomialOrder,
    full_tails: bool,
) -> (MultiPoly<F>, u32) {
    let mut work = g.clone();
    let mut sugar = start_sugar;
    let mut done: Vec<(Monomial, F)> = Vec::new();
    let mut scaling_steps = 0u32;
    let trace = std::env::var_os("ANFGB_TRACE").is_some();
    let t_start = std::time::Instant::now();
    let mut steps = 0u64;
    let mut t_mul = 0.0f64;
    let mut t_strip = 0.0f64;
    let mut t_termmul = 0.0f64;
    let mut t_scal = 0.0f64;
    let mut peak_terms = 0usize;
    while !work.is_zero() {
        steps += 1;
        peak_terms = peak_terms.max(work.terms().len());
        let (lm, lc) = work.leading();
        if let Some((k, ratio)) = select_reducer(basis, lm) {
            if let Some(sugars) = sugars {
                sugar = sugar.max(sugars[k] + ratio.total_degree());
            }
            let h = &basis[k];
            let t0 = std::time::Instant::now();
            let scaled = h.term_mul(&ratio, lc);
            t_termmul += t0.elapsed().as_secs_f64();
            if CoeffField::is_one(h.lc()) {
                work = work.sub(&scaled, order);
            } else {
                // Cross-multiply: lc(h)·work − lc(work)·(lcm/lm(h))·h. The
                // banked terms must pick up the same factor to stay one
                // consistent scalar multiple.
                let factor = h.lc().clone();
                for (_, c) in &mut done {
                    *c = c.times(&factor);
                }
                let t0 = std::time::Instant::now();
                let scaled_work = work.mul_scalar(&factor);
                t_scal += t0.elapsed().as_secs_f64();
                let t0 = std::time::Instant::now();
                work = scaled_work.sub(&scaled, order);
                t_mul += t0.elapsed().as_secs_f64();
                scaling_steps += 1;
                if scaling_steps % 16 == 0 && done.is_empty() && !work.is_zero() {
                    let t0 = std::time::Instant::now();
                    work = work.primitive();
                    t_strip += t0.elapsed().as_secs_f64();
                }
            }
        } else if full_tails {
            // Irreducible leading term: bank it and reduce the tail.
            let (lm, lc) = (lm.clone(), lc.clone());
            work = work.tail();
            done.push((lm, lc));
        } else {
            // Irreducible leading term: keep the rest of the remainder as-is.
            done.extend(work.terms().iter().cloned());
            break;
        }
    }
    // `done` was produced in strictly decreasing order.
    let total = t_start.elapsed().as_secs_f64();
    if trace && total > 0.5 {
        eprintln!(
            "[red] {:6.1}s steps={} scalings={} peak_terms={} termmul={:.1}s scal={:.1}s sub={:.1}s strip={:.1}s",
            total, steps, scaling_steps, peak_terms, t_termmul, t_scal, t_mul, t_strip,
        );
    }
    (MultiPoly::from_terms(done, order), sugar)
}

/// The S-polynomial of `a` and `b` up to a nonzero scalar: the heads at
/// `lcm(lm a, lm b)` are cancelled by cross-multiplication
/// (`lc(b)·(lcm/lm(a))·a − lc(a)·(lcm/lm(b))·b`) rather than by division, so
/// building it never inverts a coefficient.
pub fn spoly<F: CoeffField>(
    a: &MultiPoly<F>,
    b: &MultiPoly<F>,
    order: MonomialOrder,
) -> MultiPoly<F> {
    let gamma = a.lm().lcm(b.lm());
    let ma = gamma.try_div(a.lm()).expect("lcm divisible by lm(a)");
    let mb = gamma.try_div(b.lm()).expect("lcm divisible by lm(b)");
    a.term_mul(&ma, b.lc())
        .sub(&b.term_mul(&mb, a.lc()), order)
}

/// Pending S-pair, keyed for smallest-sugar-first selection (then smallest
/// lcm under the ambient monomial order, then a deterministic tie-break).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    key: Vec<u32>,
    lcm: Vec<u32>,
    i: usize,
    j: usize,
}

/// Encodes a monomial so that lexicographic `Vec<u32>` comparison of keys
/// agrees with the ambient order: the queue's `BTreeSet` can then pop the
/// smallest lcm without carrying the order around.
fn order_key(m: &Monomial, order: MonomialOrder) -> Vec<u32> {
    fn revlex_block(exps: &[u32], key: &mut Vec<u32>) {
        key.push(exps.iter().sum());
        key.extend(exps.iter().rev().map(|e| u32::MAX - e));
    }
    let mut key = Vec::with_capacity(m.0.len() + 1);
    match order {
        MonomialOrder::Lex => key.extend_from_slice(&m.0),
        MonomialOrder::DegRevLex => revlex_block(&m.0, &mut key),
        MonomialOrder::Product(base) => {
            let k = m.0.len() - 1;
            match base {
                BaseOrder::Lex => key.extend_from_slice(&m.0[..k]),
                BaseOrder::DegRevLex => revlex_block(&m.0[..k], &mut key),
            }
            key.push(m.0[k]);
        }
    }
    key
}

fn make_pair<F: CoeffField>(
    basis: &[MultiPoly<F>],
    sugars: &[u32],
    i: usize,
    j: usize,
    order: MonomialOrder,
) -> Pair {
    let lcm = basis[i].lm().lcm(basis[j].lm());
    let degree = lcm.total_degree();
    let sugar = if std::env::var_os("ANFGB_NOSUGAR").is_some() {
        0
    } else {
        (sugars[i] + degree - basis[i].lm().total_degree())
            .max(sugars[j] + degree - basis[j].lm().total_degree())
    };
    Pair {
        sugar,
        key: order_key(&lcm, order),
        lcm: lcm.0.clone(),
        i,
        j,
    }
}

/// Installs element `t` (already pushed onto `basis`) into the pair queue,
/// pruning with the classical update criteria:
///
/// * old pairs (i, j) are dropped when lm(t) divides lcm(i, j) strictly
///   inside both chain pairs (their S-polynomials then reduce through t);
/// * among the new pairs (k, t), any whose lcm strictly contains another's
///   is dropped, and of every group sharing one lcm a single representative
///   survives — none at all if some member has coprime leading monomials;
/// * older elements whose leading monomial lm(t) divides stop forming pairs
///   from now on (they stay available as reducers).
fn update_pairs<F: CoeffField>(
    pending: &mut BTreeSet<Pair>,
    basis: &[MultiPoly<F>],
    sugars: &[u32],
    retired: &mut [bool],
    t: usize,
    order: MonomialOrder,
) {
    let tau = basis[t].lm().clone();

    pending.retain(|pair| {
        let lcm_ij = Monomial(pair.lcm.clone());
        if !tau.divides(&lcm_ij) {
            return true;
        }
        let with_i = basis[pair.i].lm().lcm(&tau);
        let with_j = basis[pair.j].lm().lcm(&tau);
        with_i.0 == pair.lcm || with_j.0 == pair.lcm
    });

    let cands: Vec<Pair> = (0..t)
        .filter(|&k| !retired[k])
        .map(|k| make_pair(basis, sugars, k, t, order))
        .collect();
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a != b
                && cands[b].lcm != cands[a].lcm
                && Monomial(cands[b].lcm.clone()).divides(&Monomial(cands[a].lcm.clone()))
            {
                keep[a] = false;
                break;
            }
        }
    }
    let mut seen_lcms: Vec<Vec<u32>> = Vec::new();
    for a in 0..cands.len() {
        if !keep[a] {
            continue;
        }
        let class_has_coprime = cands.iter().enumerate().any(|(b, c)| {
            keep[b] && c.lcm == cands[a].lcm && basis[c.i].lm().coprime_with(&tau)
        });
        if class_has_coprime || seen_lcms.contains(&cands[a].lcm) {
            continue;
        }
        seen_lcms.push(cands[a].lcm.clone());
        pending.insert(cands[a].clone());
    }

    for (k, flag) in retired.iter_mut().enumerate().take(t) {
        if !*flag && tau.divides(basis[k].lm()) {
            *flag = true;
        }
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Zero generators are dropped and duplicates merged; an empty ideal gives
/// the empty basis and the unit ideal gives `{1}`. Every element of the
/// result is monic, and the element sequence is sorted by increasing
/// leading monomial.
pub fn buchberger<F: CoeffField>(
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
) -> GroebnerBasis<F> {
    let mut basis: Vec<MultiPoly<F>> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = g.primitive();
        if !basis.contains(&g) {
            basis.push(g);
        }
    }
    if basis.iter().any(|g| g.is_constant()) {
        let one = basis[0].lc().one_like();
        let arity = basis[0].lm().arity();
        return GroebnerBasis::new(vec![MultiPoly::one(&one, arity)], order);
    }
    if basis.is_empty() {
        return GroebnerBasis::new(Vec::new(), order);
    }

    // Sugar of generator g is its total degree; new elements inherit the
    // tracked sugar of the reduction that produced them.
    let gens = basis;
    let mut basis: Vec<MultiPoly<F>> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut retired: Vec<bool> = Vec::new();
    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    for g in gens {
        let sugar = g.total_degree();
        basis.push(g);
        sugars.push(sugar);
        retired.push(false);
        update_pairs(&mut pending, &basis, &sugars, &mut retired, basis.len() - 1, order);
    }

    let trace = std::env::var_os("ANFGB_TRACE").is_some();
    let started = std::time::Instant::now();
    let mut popped = 0u64;

    while let Some(pair) = pending.pop_first() {
        popped += 1;
        if trace {
            let terms: usize = basis.iter().map(|g| g.terms().len()).sum();
            let newest = basis.last().map_or(0, |g| format!("{:?}", g).len());
            eprintln!(
                "[trace] {:6.1}s popped={} sugar={} deg={} basis={} pending={} terms={} newest_dbg={}",
                started.elapsed().as_secs_f64(),
                popped,
                pair.sugar,
                Monomial(pair.lcm.clone()).total_degree(),
                basis.len(),
                pending.len(),
                terms,
                newest,
            );
        }
        let (i, j) = (pair.i, pair.j);
        let s = spoly(&basis[i], &basis[j], order);
        let autored = std::env::var_os("ANFGB_AUTORED").is_some();
        let full_tails = autored || std::env::var_os("ANFGB_FULLTAILS").is_some();
        let (nf, nf_sugar) =
            reduce_tracking_sugar(&s, pair.sugar, &basis, Some(&sugars), order, full_tails);
        if nf.is_zero() {
            continue;
        }
        if nf.is_constant() {
            let one = nf.lc().one_like();
            let arity = nf.lm().arity();
            return GroebnerBasis::new(vec![MultiPoly::one(&one, arity)], order);
        }
        let nf = nf.primitive();
        basis.push(nf);
        sugars.push(nf_sugar);
        retired.push(false);
        update_pairs(&mut pending, &basis, &sugars, &mut retired, basis.len() - 1, order);
        if autored {
            let t = basis.len() - 1;
            let new_lm = basis[t].lm().clone();
            for k in 0..t {
                if retired[k] {
                    continue;
                }
                if !basis[k]
                    .terms()
                    .iter()
                    .skip(1)
                    .any(|(m, _)| new_lm.divides(m))
                {
                    continue;
                }
                let others: Vec<MultiPoly<F>> = basis
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| *idx != k)
                    .map(|(_, h)| h.clone())
                    .collect();
                let red = reduce_tracking_sugar(&basis[k], sugars[k], &others, None, order, true).0;
                if !red.is_zero() {
                    basis[k] = red.primitive();
                }
            }
        }
    }

    GroebnerBasis::new(interreduce(basis, order), order)
}

/// Interreduces a Gröbner basis into the unique reduced one: drops elements
/// whose leading monomial is divisible by another's, then tail-reduces each
/// survivor against the others. All elements come out monic.
pub(crate) fn interreduce<F: CoeffField>(
    basis: Vec<MultiPoly<F>>,
    order: MonomialOrder,
) -> Vec<MultiPoly<F>> {
    let mut minimal: Vec<MultiPoly<F>> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    for g in sorted {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly<F>> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        minimal[i] = normal_form(&minimal[i], &others, order).monic();
    }
    minimal
}

/// Checks that `basis` is the reduced Gröbner basis of the ideal it
/// generates: all elements monic, no term of any element divisible by
/// another's leading monomial, and every S-polynomial reducing to zero.
pub fn is_reduced_gb<F: CoeffField>(basis: &[MultiPoly<F>], order: MonomialOrder) -> bool {
    for g in basis {
        if g.is_zero() || !g.lc().is_one() {
            return false;
        }
    }
    for (i, g) in basis.iter().enumerate() {
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            if g.terms().iter().any(|(m, _)| h.lm().divides(m)) {
                return false;
            }
        }
    }
    for i in 0..basis.len() {
        for j in 0..i {
            let s = spoly(&basis[i], &basis[j], order);
            if !normal_form(&s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

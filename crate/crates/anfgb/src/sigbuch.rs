//! Signature-guided Buchberger variant (the F5B scheme of Sun and Wang).
//!
//! Plain Buchberger spends most of its time reducing S-polynomials all the
//! way to zero; over Q(α) those dead-end reductions are where coefficient
//! swell becomes catastrophic. This module tracks, for every basis element,
//! a *signature* — the leading module monomial of one representation of the
//! element in terms of the input generators — and discards critical pairs
//! whose signature is provably redundant (the rewritability / comparability
//! criteria) before any polynomial arithmetic happens. Most reductions to
//! zero are never started at all.
//!
//! The arithmetic stays exact and direct: monic normalization after every
//! insertion and a final interreduction, so the result is the reduced
//! Gröbner basis — identical to what [`crate::groebner::buchberger`]
//! produces, reachable on inputs where the plain loop drowns in
//! intermediate coefficient growth.

use std::cmp::Ordering;

use crate::field::CoeffField;
use crate::groebner::{interreduce, normal_form, GroebnerBasis};
use crate::mpoly::{Monomial, MonomialOrder, MultiPoly};

/// Module monomial `mono·e_index`: the leading term, under the extension of
/// the ambient order to the free module (position first, then monomial), of
/// some representation Σ hᵢ·gᵢ of a basis element.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Sig {
    mono: Monomial,
    index: usize,
}

/// `u < v` iff `u.index > v.index`, or the indices agree and `u.mono`
/// precedes `v.mono` in the ambient order.
fn sig_cmp(u: &Sig, v: &Sig, order: MonomialOrder) -> Ordering {
    v.index
        .cmp(&u.index)
        .then_with(|| order.compare(&u.mono, &v.mono))
}

/// Basis element together with its signature and creation stamp.
struct Labeled<F> {
    sig: Sig,
    poly: MultiPoly<F>,
    num: usize,
}

/// `f < g` iff `sig(f) < sig(g)`, or the signatures agree and `f` is newer.
fn label_cmp(
    a: &Sig,
    a_num: usize,
    b: &Sig,
    b_num: usize,
    order: MonomialOrder,
) -> Ordering {
    sig_cmp(a, b, order).then_with(|| b_num.cmp(&a_num))
}

/// Critical pair: `um·arena[f] − vm·arena[g]` is the S-polynomial, with the
/// signature-larger component stored first. The multiplied signatures are
/// precomputed; the polynomials are looked up in the arena by stamp.
struct CritPair {
    sig_f: Sig,
    um: Monomial,
    f: usize,
    sig_g: Sig,
    vm: Monomial,
    g: usize,
}

fn critical_pair<F: CoeffField>(
    a: &Labeled<F>,
    b: &Labeled<F>,
    order: MonomialOrder,
) -> CritPair {
    let lcm = a.poly.lm().lcm(b.poly.lm());
    let um = lcm.try_div(a.poly.lm()).expect("lcm divisible by lm");
    let vm = lcm.try_div(b.poly.lm()).expect("lcm divisible by lm");
    let sig_a = Sig {
        mono: a.sig.mono.mul(&um),
        index: a.sig.index,
    };
    let sig_b = Sig {
        mono: b.sig.mono.mul(&vm),
        index: b.sig.index,
    };
    if label_cmp(&sig_a, a.num, &sig_b, b.num, order) == Ordering::Less {
        CritPair {
            sig_f: sig_b,
            um: vm,
            f: b.num,
            sig_g: sig_a,
            vm: um,
            g: a.num,
        }
    } else {
        CritPair {
            sig_f: sig_a,
            um,
            f: a.num,
            sig_g: sig_b,
            vm,
            g: b.num,
        }
    }
}

fn cp_cmp(c: &CritPair, d: &CritPair, order: MonomialOrder) -> Ordering {
    label_cmp(&c.sig_f, c.f, &d.sig_f, d.f, order)
        .then_with(|| label_cmp(&c.sig_g, c.g, &d.sig_g, d.g, order))
}

/// The two signature criteria. `(sign, num)` is *comparable* when some
/// basis element of higher index has leading monomial dividing `sign.mono`
/// (the would-be element is then congruent, in signature, to something a
/// later-indexed syzygy already explains); it is *rewritable* when a newer
/// element of the same index has signature dividing `sign.mono` (the same
/// S-polynomial will be — or was — handled starting from that element).
/// Either way the pair can be dropped without reducing anything.
fn is_rewritable_or_comparable<F: CoeffField>(
    sign: &Sig,
    num: usize,
    members: &[usize],
    arena: &[Labeled<F>],
) -> bool {
    for &k in members {
        let h = &arena[k - 1];
        if sign.index < h.sig.index && h.poly.lm().divides(&sign.mono) {
            return true;
        }
        if sign.index == h.sig.index && num < h.num && h.sig.mono.divides(&sign.mono) {
            return true;
        }
    }
    false
}

/// Head-reduces `poly` by basis elements whose use would keep the signature
/// below `sign`: `h` may rewrite the head only when `sig(t·h) < sign`
/// strictly, so the label of the result is still `sign`. Stops at the first
/// head that no admissible element divides.
fn sig_reduce<F: CoeffField>(
    mut poly: MultiPoly<F>,
    sign: &Sig,
    members: &[usize],
    arena: &[Labeled<F>],
    order: MonomialOrder,
) -> MultiPoly<F> {
    'outer: while !poly.is_zero() {
        for &k in members {
            let h = &arena[k - 1];
            if let Some(t) = poly.lm().try_div(h.poly.lm()) {
                let shifted = Sig {
                    mono: h.sig.mono.mul(&t),
                    index: h.sig.index,
                };
                if sig_cmp(&shifted, sign, order) == Ordering::Less {
                    // h is monic: subtracting lc(poly)·t·h cancels the head.
                    let hp = h.poly.term_mul(&t, poly.lc());
                    poly = poly.sub(&hp, order);
                    continue 'outer;
                }
            }
        }
        break;
    }
    poly
}

/// Mutual full reduction of the generators until a fixpoint: each one is
/// replaced by its monic normal form against its predecessors, zeros are
/// dropped. Cheap, and it shrinks both the pair count and the signatures.
fn prereduce<F: CoeffField>(gens: &[MultiPoly<F>], order: MonomialOrder) -> Vec<MultiPoly<F>> {
    let mut current: Vec<MultiPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    loop {
        let previous = current;
        current = Vec::new();
        for i in 0..previous.len() {
            let r = normal_form(&previous[i], &previous[..i], order);
            if !r.is_zero() {
                current.push(r.monic());
            }
        }
        if previous == current {
            return current;
        }
    }
}

/// Computes the reduced Gröbner basis of `gens` with signature-based pair
/// pruning. Same contract and same output as
/// [`crate::groebner::buchberger`]; the selection here is by increasing
/// signature, which is what makes the pruning criteria sound.
pub fn sig_buchberger<F: CoeffField>(
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
) -> GroebnerBasis<F> {
    let reduced = prereduce(gens, order);
    if reduced.is_empty() {
        return GroebnerBasis::new(Vec::new(), order);
    }
    let arity = reduced[0].lm().arity();
    if reduced.iter().any(|g| g.is_constant()) {
        let one = reduced[0].lc().one_like();
        return GroebnerBasis::new(vec![MultiPoly::one(&one, arity)], order);
    }

    // Arena of every element ever created, indexed by stamp − 1; `members`
    // holds the live basis in decreasing leading-monomial order.
    let mut arena: Vec<Labeled<F>> = reduced
        .into_iter()
        .enumerate()
        .map(|(i, poly)| Labeled {
            sig: Sig {
                mono: Monomial(vec![0; arity]),
                index: i + 1,
            },
            poly,
            num: i + 1,
        })
        .collect();
    let mut members: Vec<usize> = (1..=arena.len()).collect();
    members.sort_by(|&a, &b| {
        order
            .compare(arena[b - 1].poly.lm(), arena[a - 1].poly.lm())
            .then(a.cmp(&b))
    });

    let mut pairs: Vec<CritPair> = Vec::new();
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            pairs.push(critical_pair(
                &arena[members[i] - 1],
                &arena[members[j] - 1],
                order,
            ));
        }
    }
    // Kept sorted descending so the smallest pair pops off the back.
    pairs.sort_by(|c, d| cp_cmp(d, c, order));

    let trace = std::env::var_os("ANFGB_TRACE").is_some();
    let started = std::time::Instant::now();
    let (mut popped, mut skipped, mut zeros) = (0u64, 0u64, 0u64);

    while let Some(cp) = pairs.pop() {
        popped += 1;
        if trace && popped % 10 == 0 {
            let terms: usize = members.iter().map(|&k| arena[k - 1].poly.terms().len()).sum();
            let newest = arena.last().map_or(0, |l| format!("{:?}", l.poly).len());
            eprintln!(
                "[sig] {:6.1}s popped={} skipped={} zeros={} basis={} pending={} terms={} newest_dbg={}",
                started.elapsed().as_secs_f64(),
                popped,
                skipped,
                zeros,
                members.len(),
                pairs.len(),
                terms,
                newest,
            );
        }
        if is_rewritable_or_comparable(&cp.sig_f, cp.f, &members, &arena)
            || is_rewritable_or_comparable(&cp.sig_g, cp.g, &members, &arena)
        {
            skipped += 1;
            continue;
        }

        let one = arena[cp.f - 1].poly.lc().one_like();
        let s = arena[cp.f - 1]
            .poly
            .term_mul(&cp.um, &one)
            .sub(&arena[cp.g - 1].poly.term_mul(&cp.vm, &one), order);
        let p = sig_reduce(s, &cp.sig_f, &members, &arena, order);
        if p.is_zero() {
            zeros += 1;
            continue;
        }

        let stamp = arena.len() + 1;
        let labeled = Labeled {
            sig: cp.sig_f.clone(),
            poly: p.monic(),
            num: stamp,
        };

        let single = [stamp];
        arena.push(labeled);
        pairs.retain(|old| {
            !is_rewritable_or_comparable(&old.sig_f, old.f, &single, &arena)
                && !is_rewritable_or_comparable(&old.sig_g, old.g, &single, &arena)
        });
        for &k in &members {
            let cp_new = critical_pair(&arena[stamp - 1], &arena[k - 1], order);
            if is_rewritable_or_comparable(&cp_new.sig_f, cp_new.f, &single, &arena)
                || is_rewritable_or_comparable(&cp_new.sig_g, cp_new.g, &single, &arena)
            {
                continue;
            }
            pairs.push(cp_new);
        }
        pairs.sort_by(|c, d| cp_cmp(d, c, order));

        let m = arena[stamp - 1].poly.lm().clone();
        let at_end = members
            .last()
            .is_none_or(|&q| order.compare(&m, arena[q - 1].poly.lm()) != Ordering::Greater);
        if at_end {
            members.push(stamp);
        } else {
            let pos = members
                .iter()
                .position(|&q| order.compare(&m, arena[q - 1].poly.lm()) == Ordering::Greater)
                .expect("insertion point exists when not appended");
            members.insert(pos, stamp);
        }
    }

    let basis: Vec<MultiPoly<F>> = members
        .into_iter()
        .map(|k| arena[k - 1].poly.clone())
        .collect();
    GroebnerBasis::new(interreduce(basis, order), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;
    use crate::groebner::buchberger;
    use num::{BigRational, FromPrimitive};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial(exps.to_vec())
    }

    fn poly_fp(terms: &[(&[u32], i64)], p: u64, order: MonomialOrder) -> MultiPoly<Fp> {
        MultiPoly::from_terms(
            terms
                .iter()
                .map(|(e, c)| (mono(e), Fp::new(*c, p)))
                .collect(),
            order,
        )
    }

    #[test]
    fn matches_plain_buchberger_on_fixed_system() {
        let p: u64 = 32003;
        let order = MonomialOrder::DegRevLex;
        // Katsura-like: x + 2y + 2z − 1, x² + 2y² + 2z² − x, 2xy + 2yz − y.
        let gens = vec![
            poly_fp(
                &[(&[1, 0, 0], 1), (&[0, 1, 0], 2), (&[0, 0, 1], 2), (&[0, 0, 0], p as i64 - 1)],
                p,
                order,
            ),
            poly_fp(
                &[
                    (&[2, 0, 0], 1),
                    (&[0, 2, 0], 2),
                    (&[0, 0, 2], 2),
                    (&[1, 0, 0], p as i64 - 1),
                ],
                p,
                order,
            ),
            poly_fp(
                &[(&[1, 1, 0], 2), (&[0, 1, 1], 2), (&[0, 1, 0], p as i64 - 1)],
                p,
                order,
            ),
        ];
        let plain = buchberger(&gens, order);
        let signed = sig_buchberger(&gens, order);
        assert_eq!(plain.elements, signed.elements);
    }

    #[test]
    fn matches_plain_buchberger_on_random_systems() {
        let p: u64 = 101;
        let order = MonomialOrder::DegRevLex;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5167_b0c8);
        for _ in 0..120 {
            let n_gens = rng.gen_range(2..=4);
            let gens: Vec<MultiPoly<Fp>> = (0..n_gens)
                .map(|_| {
                    let n_terms = rng.gen_range(1..=4);
                    let terms: Vec<(Monomial, Fp)> = (0..n_terms)
                        .map(|_| {
                            let e = [
                                rng.gen_range(0..3u32),
                                rng.gen_range(0..3u32),
                                rng.gen_range(0..2u32),
                            ];
                            (mono(&e), Fp::new(rng.gen_range(1..p as i64), p))
                        })
                        .collect();
                    MultiPoly::from_terms(terms, order)
                })
                .collect();
            let plain = buchberger(&gens, order);
            let signed = sig_buchberger(&gens, order);
            assert_eq!(plain.elements, signed.elements);
        }
    }

    #[test]
    fn rational_circle_and_line() {
        let order = MonomialOrder::DegRevLex;
        let q = |n: i64| BigRational::from_i64(n).unwrap();
        // x² + y² − 1 and x − y: reduced basis {x − y, y² − 1/2}.
        let gens = vec![
            MultiPoly::from_terms(
                vec![
                    (mono(&[2, 0]), q(1)),
                    (mono(&[0, 2]), q(1)),
                    (mono(&[0, 0]), q(-1)),
                ],
                order,
            ),
            MultiPoly::from_terms(vec![(mono(&[1, 0]), q(1)), (mono(&[0, 1]), q(-1))], order),
        ];
        let signed = sig_buchberger(&gens, order);
        let plain = buchberger(&gens, order);
        assert_eq!(plain.elements, signed.elements);
        assert_eq!(signed.len(), 2);
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let order = MonomialOrder::DegRevLex;
        let p = 13;
        let gens = vec![
            poly_fp(&[(&[1, 0], 1), (&[0, 0], 5)], p, order),
            poly_fp(&[(&[0, 0], 3)], p, order),
        ];
        let gb = sig_buchberger(&gens, order);
        assert_eq!(gb.len(), 1);
        assert!(gb.elements[0].is_constant());
    }

    #[test]
    fn empty_and_zero_generators() {
        let order = MonomialOrder::DegRevLex;
        let gens: Vec<MultiPoly<Fp>> = vec![MultiPoly::zero()];
        assert_eq!(sig_buchberger(&gens, order).len(), 0);
        let none: Vec<MultiPoly<Fp>> = Vec::new();
        assert_eq!(sig_buchberger(&none, order).len(), 0);
    }
}

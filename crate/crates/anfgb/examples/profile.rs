//! Scratch timing harness: compare the direct number-field route with a
//! plain rational Buchberger run on the tagged form of the same ideal.

use anfgb::frontend::parse::parse_problem;
use anfgb::frontend::direct_groebner;
use anfgb::groebner::buchberger;
use anfgb::modular::embed_tag_poly;
use std::time::Instant;

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().expect("usage: profile <file.anf> <k|q>");
    let mode = args.next().unwrap_or_else(|| "k".into());
    let src = std::fs::read_to_string(&path).expect("read input");
    let problem = parse_problem(&src).expect("parse input");
    let tagged = problem.to_tagged();

    if mode == "bench2" {
        use num::bigint::BigInt;
        use num::BigRational;
        for bits in [1_000usize, 10_000, 40_000] {
            let a: BigInt = (BigInt::from(3) << bits) + 1;
            let b: BigInt = (BigInt::from(5) << (bits - 7)) + 9;
            let ra = BigRational::from_integer(a.clone());
            let rb = BigRational::from_integer(b.clone());
            let t = Instant::now();
            let mut sink = 0u64;
            for _ in 0..100 {
                sink += (&ra * &rb).numer().bits();
            }
            let rmul = t.elapsed().as_secs_f64() / 100.0;
            let t = Instant::now();
            for _ in 0..100 {
                sink += (&ra + &rb).numer().bits();
            }
            let radd = t.elapsed().as_secs_f64() / 100.0;
            let t = Instant::now();
            for _ in 0..100 {
                sink += (&a * &b).bits();
            }
            let imul = t.elapsed().as_secs_f64() / 100.0;
            println!(
                "bits={bits}: rational mul={:.6}s add={:.6}s | integer mul={:.6}s (sink {sink})",
                rmul, radd, imul
            );
        }
        return;
    }

    if mode == "bench" {
        use num::bigint::BigInt;
        use num::Integer;
        for bits in [1_000usize, 10_000, 40_000, 100_000] {
            let a: BigInt = (BigInt::from(3) << bits) + 1; // crude size-controlled operands
            let b: BigInt = (BigInt::from(5) << (bits - 7)) + 9;
            let t = Instant::now();
            let mut acc = BigInt::from(0);
            for _ in 0..100 {
                acc += &a * &b;
            }
            let mul = t.elapsed().as_secs_f64() / 100.0;
            let t = Instant::now();
            for _ in 0..10 {
                acc += a.gcd(&b);
            }
            let gcd = t.elapsed().as_secs_f64() / 10.0;
            println!("bits={bits}: mul={:.6}s gcd={:.6}s (sink {})", mul, gcd, acc.bits());
        }
        return;
    }

    let t0 = Instant::now();
    match mode.as_str() {
        "p" => {
            let p = 2_147_481_563; // any large admissible prime works here
            let mut gens = tagged.generators.clone();
            gens.push(embed_tag_poly(&tagged.minpoly, tagged.arity, tagged.order));
            let gens_p: Vec<_> = gens
                .iter()
                .map(|g| anfgb::mpoly::map_mod_p(g, p).expect("prime divides a coefficient"))
                .collect();
            let gb = buchberger(&gens_p, tagged.order);
            println!("p route: {} elements in {:.2}s", gb.len(), t0.elapsed().as_secs_f64());
        }
        "sp" => {
            let p = 2_147_481_563;
            let mut gens = tagged.generators.clone();
            gens.push(embed_tag_poly(&tagged.minpoly, tagged.arity, tagged.order));
            let gens_p: Vec<_> = gens
                .iter()
                .map(|g| anfgb::mpoly::map_mod_p(g, p).expect("prime divides a coefficient"))
                .collect();
            let gb = anfgb::sigbuch::sig_buchberger(&gens_p, tagged.order);
            println!("sp route: {} elements in {:.2}s", gb.len(), t0.elapsed().as_secs_f64());
        }
        "sq" => {
            let mut gens = tagged.generators.clone();
            gens.push(embed_tag_poly(&tagged.minpoly, tagged.arity, tagged.order));
            let gb = anfgb::sigbuch::sig_buchberger(&gens, tagged.order);
            println!("sq route: {} elements in {:.2}s", gb.len(), t0.elapsed().as_secs_f64());
        }
        "kh" => {
            use anfgb::mpoly::{Monomial, MonomialOrder, MultiPoly};
            use anfgb::oracle::tagged_to_k;
            let field = problem.field();
            let base = problem.base_order();
            let gens_k: Vec<_> = tagged
                .generators
                .iter()
                .map(|g| tagged_to_k(g, &field, base))
                .collect();
            let hom: Vec<_> = gens_k
                .iter()
                .map(|g| {
                    let top = g.total_degree();
                    let terms: Vec<_> = g
                        .terms()
                        .iter()
                        .map(|(m, c)| {
                            let mut e = m.0.clone();
                            e.push(top - m.total_degree());
                            (Monomial(e), c.clone())
                        })
                        .collect();
                    MultiPoly::from_terms(terms, MonomialOrder::DegRevLex)
                })
                .collect();
            let gb = buchberger(&hom, MonomialOrder::DegRevLex);
            println!("kh route: {} elements in {:.2}s", gb.len(), t0.elapsed().as_secs_f64());
        }
        "q" => {
            let mut gens = tagged.generators.clone();
            gens.push(embed_tag_poly(&tagged.minpoly, tagged.arity, tagged.order));
            let gb = buchberger(&gens, tagged.order);
            println!("q route: {} elements in {:.2}s", gb.len(), t0.elapsed().as_secs_f64());
        }
        _ => {
            let gb = direct_groebner(&problem);
            println!("k route: {} elements in {:.2}s", gb.len(), t0.elapsed().as_secs_f64());
        }
    }
}

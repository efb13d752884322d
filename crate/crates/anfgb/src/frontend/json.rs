//! JSON rendering of a computed basis.
//!
//! The layout keeps every number as a decimal string so arbitrarily large
//! coefficients survive serialization:
//!
//! ```json
//! {
//!   "vars": ["x", "y"],
//!   "alpha": "a",
//!   "minpoly": "a^2+1",
//!   "order": "degrevlex",
//!   "basis": [
//!     [
//!       {
//!         "exponents": [0, 2],
//!         "coeff_num": ["1", "0"],
//!         "coeff_den": ["1", "1"],
//!         "alpha_poly": "1"
//!       }
//!     ]
//!   ]
//! }
//! ```
//!
//! Each basis element is an array of terms in decreasing monomial order;
//! `exponents` lists the powers of the declared variables, and the
//! coefficient in Q(α) appears both as parallel numerator/denominator digit
//! strings indexed by the power of α and as canonical text.

use super::Problem;
use crate::groebner::GroebnerBasis;
use crate::mpoly::{poly_to_string_q, BaseOrder, Monomial, MonomialOrder, MultiPoly};
use crate::oracle::NumberFieldElement;
use crate::upoly::UniPoly;
use num::BigRational;
use serde_json::{json, Value};

/// Canonical text of a rational polynomial in the field generator.
fn alpha_poly_text(f: &UniPoly<BigRational>, alpha: &str) -> String {
    let terms = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num::Zero::is_zero(*c))
        .map(|(i, c)| (Monomial(vec![i as u32]), c.clone()))
        .collect();
    poly_to_string_q(&MultiPoly::from_terms(terms, MonomialOrder::Lex), &[alpha])
}

pub fn basis_to_json(problem: &Problem, basis: &GroebnerBasis<NumberFieldElement>) -> Value {
    let degree = problem.minpoly.degree().expect("monic minpoly");
    let order = match problem.order {
        MonomialOrder::Product(BaseOrder::Lex) | MonomialOrder::Lex => "lex",
        _ => "degrevlex",
    };
    let elements: Vec<Value> = basis
        .elements
        .iter()
        .map(|g| {
            let terms: Vec<Value> = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut nums = vec!["0".to_string(); degree];
                    let mut dens = vec!["1".to_string(); degree];
                    for (i, q) in c.residue().coeffs().iter().enumerate() {
                        nums[i] = q.numer().to_string();
                        dens[i] = q.denom().to_string();
                    }
                    json!({
                        "exponents": &m.0,
                        "coeff_num": nums,
                        "coeff_den": dens,
                        "alpha_poly": alpha_poly_text(c.residue(), &problem.alpha_name),
                    })
                })
                .collect();
            Value::Array(terms)
        })
        .collect();
    json!({
        "vars": problem.var_names,
        "alpha": problem.alpha_name,
        "minpoly": alpha_poly_text(&problem.minpoly, &problem.alpha_name),
        "order": order,
        "basis": elements,
    })
}

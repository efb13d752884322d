//! Problem intake and the top-level pipeline over K = Q(α).
//!
//! A parsed [`Problem`] describes an ideal I ⊆ K[X] by generators written in
//! the power basis of α. The pipeline rewrites it as the tagged ideal
//! Ĩ = ⟨H̃, f(t)⟩ ⊆ Q[X, t] (α replaced by the tag variable t, the minimal
//! polynomial f adjoined), runs the modular engine over Q, and maps the
//! resulting reduced basis back to K[X] by substituting t ↦ α — dropping the
//! copy of f, which contributes nothing over K.

pub mod json;
pub mod parse;

pub use parse::{parse_problem, Problem};

use crate::error::Error;
use crate::field::CoeffField;
use crate::groebner::GroebnerBasis;
use crate::modular::{embed_tag_poly, modular_groebner, EngineConfig};
use crate::mpoly::{Monomial, MonomialOrder, MultiPoly};
use crate::oracle::{buchberger_direct, tagged_to_k, NumberField, NumberFieldElement};
use crate::upoly::UniPoly;
use num::BigRational;
use std::collections::BTreeMap;
use std::sync::Arc;

/// The ideal Ĩ = ⟨generators, f(t)⟩ ⊆ Q[X, t] handed to the modular engine.
/// Monomials carry `arity` exponent slots, the last one for the tag t.
#[derive(Clone, Debug)]
pub struct TaggedIdeal {
    pub generators: Vec<MultiPoly<BigRational>>,
    pub minpoly: UniPoly<BigRational>,
    pub order: MonomialOrder,
    pub arity: usize,
}

impl Problem {
    pub fn to_tagged(&self) -> TaggedIdeal {
        TaggedIdeal {
            generators: self.generators.clone(),
            minpoly: self.minpoly.clone(),
            order: self.order,
            arity: self.arity(),
        }
    }

    pub fn field(&self) -> Arc<NumberField> {
        NumberField::new(self.minpoly.clone())
    }
}

/// Maps a reduced basis of Ĩ over Q back to K[X]: the embedded minimal
/// polynomial is dropped and every other element has its tag powers folded
/// into number-field coefficients. Elements come out monic and sorted under
/// the base order.
pub fn lift_to_field(
    basis: &GroebnerBasis<BigRational>,
    field: &Arc<NumberField>,
    arity: usize,
) -> GroebnerBasis<NumberFieldElement> {
    let base = match basis.order {
        MonomialOrder::Product(b) => match b {
            crate::mpoly::BaseOrder::Lex => MonomialOrder::Lex,
            crate::mpoly::BaseOrder::DegRevLex => MonomialOrder::DegRevLex,
        },
        other => other,
    };
    let f_emb = embed_tag_poly(field.minpoly(), arity, basis.order);
    let degree = field.degree();
    let mut elements = Vec::new();
    for g in &basis.elements {
        if *g == f_emb {
            continue;
        }
        let mut per_x: BTreeMap<Vec<u32>, Vec<BigRational>> = BTreeMap::new();
        for (m, c) in g.terms() {
            let t = m.t_exp() as usize;
            assert!(t < degree, "tag degree exceeds the field degree");
            let k = m.arity() - 1;
            per_x
                .entry(m.0[..k].to_vec())
                .or_insert_with(|| vec![c.zero_like(); degree])[t] = c.clone();
        }
        let terms: Vec<(Monomial, NumberFieldElement)> = per_x
            .into_iter()
            .map(|(x, coeffs)| {
                (
                    Monomial(x),
                    NumberFieldElement::new(UniPoly::from_coeffs(coeffs), field.clone()),
                )
            })
            .collect();
        elements.push(MultiPoly::from_terms(terms, base));
    }
    GroebnerBasis::new(elements, base)
}

/// Re-expands a polynomial over K into tagged form (each power of α becomes
/// a tag exponent), the shape used by the canonical printer.
pub fn expand_to_tagged(
    g: &MultiPoly<NumberFieldElement>,
    product_order: MonomialOrder,
) -> MultiPoly<BigRational> {
    let mut terms: Vec<(Monomial, BigRational)> = Vec::new();
    for (m, c) in g.terms() {
        for (i, q) in c.residue().coeffs().iter().enumerate() {
            if !q.is_zero() {
                let mut exps = m.0.clone();
                exps.push(i as u32);
                terms.push((Monomial(exps), q.clone()));
            }
        }
    }
    MultiPoly::from_terms(terms, product_order)
}

/// A computed reduced Gröbner basis, in both coordinate systems.
#[derive(Clone, Debug)]
pub struct NfResult {
    /// Reduced basis of Ĩ over Q[X, t]; contains the embedded f unless the
    /// ideal is the whole ring.
    pub tagged: GroebnerBasis<BigRational>,
    /// Reduced basis of I over K[X].
    pub over_k: GroebnerBasis<NumberFieldElement>,
    pub field: Arc<NumberField>,
}

/// The full pipeline: tag, run the modular engine, lift back to K.
pub fn nfmodstd(problem: &Problem, config: &EngineConfig) -> Result<NfResult, Error> {
    let ideal = problem.to_tagged();
    let tagged = modular_groebner(&ideal, config)?;
    let field = problem.field();
    let over_k = lift_to_field(&tagged, &field, problem.arity());
    Ok(NfResult {
        tagged,
        over_k,
        field,
    })
}

/// Engine outcome as seen by the command-line driver: a basis over K, or a
/// process exit code (3 = round budget exceeded, 4 = admissible primes
/// exhausted, 1 = anything else) with a printable message.
pub enum EngineOutcome {
    Basis(GroebnerBasis<NumberFieldElement>),
    Failed(u8, String),
}

pub fn basis_or_exit(problem: &Problem, config: &EngineConfig) -> EngineOutcome {
    match nfmodstd(problem, config) {
        Ok(result) => EngineOutcome::Basis(result.over_k),
        Err(e) => {
            let code = match &e {
                Error::RoundLimitExceeded { .. } => 3,
                Error::ExhaustedCandidates => 4,
                _ => 1,
            };
            EngineOutcome::Failed(code, e.to_string())
        }
    }
}

/// Reference route: Buchberger directly over K(α) with exact arithmetic.
/// Independent of the modular engine end to end; used for cross-checking.
pub fn direct_groebner(problem: &Problem) -> GroebnerBasis<NumberFieldElement> {
    let field = problem.field();
    let base = problem.base_order();
    let gens: Vec<MultiPoly<NumberFieldElement>> = problem
        .generators
        .iter()
        .map(|g| tagged_to_k(g, &field, base))
        .collect();
    buchberger_direct(&gens, base)
}

/// Renders a basis over K as canonical text: one polynomial per line in
/// increasing leading-monomial order, each fully expanded in the variables
/// and the field generator.
pub fn render_basis_text(
    basis: &GroebnerBasis<NumberFieldElement>,
    var_names: &[String],
    alpha_name: &str,
    product_order: MonomialOrder,
) -> String {
    let names: Vec<&str> = var_names
        .iter()
        .map(|s| s.as_str())
        .chain(std::iter::once(alpha_name))
        .collect();
    let mut out = String::new();
    for g in &basis.elements {
        let tagged = expand_to_tagged(g, product_order);
        out.push_str(&crate::mpoly::poly_to_string_q(&tagged, &names));
        out.push('\n');
    }
    out
}

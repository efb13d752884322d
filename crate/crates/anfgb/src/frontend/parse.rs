//! Parser for the plain-text problem format.
//!
//! A problem file looks like
//!
//! ```text
//! # Gaussian coefficients
//! vars x y
//! minvar a
//! minpoly a^2+1
//! order degrevlex
//! gen x^2+a*y
//! gen a*x*y-x+a
//! ```
//!
//! The four header lines must appear in this order; any number of `gen`
//! lines (possibly none) follow. Blank lines and `#` comments are allowed
//! anywhere. Expressions are built from unsigned integer literals, declared
//! names, `+ - * / ^` and parentheses, with `*` required between factors;
//! `/` only divides by a nonzero rational constant and `^` only takes an
//! unsigned integer literal. The extension generator may appear in
//! generators only with exponents below the degree of its minimal
//! polynomial, and the minimal polynomial is normalized to be monic.

use crate::error::{ParseError, ParseErrorKind};
use crate::field::CoeffField;
use crate::mpoly::{BaseOrder, Monomial, MonomialOrder, MultiPoly};
use crate::upoly::UniPoly;
use num::{BigInt, BigRational, One};
use std::collections::HashMap;

/// A fully validated problem: the field Q(α), a polynomial ring over it,
/// a monomial order, and the ideal generators in tagged form (the last
/// exponent slot holds the power of α, always below `minpoly.degree()`).
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub var_names: Vec<String>,
    pub alpha_name: String,
    /// Monic minimal polynomial of α over Q.
    pub minpoly: UniPoly<BigRational>,
    /// Product order: X-block under the declared base order, tag last.
    pub order: MonomialOrder,
    pub generators: Vec<MultiPoly<BigRational>>,
}

impl Problem {
    /// Number of exponent slots in tagged monomials (variables plus tag).
    pub fn arity(&self) -> usize {
        self.var_names.len() + 1
    }

    /// The declared order on the X-block alone.
    pub fn base_order(&self) -> MonomialOrder {
        match self.order {
            MonomialOrder::Product(BaseOrder::Lex) => MonomialOrder::Lex,
            MonomialOrder::Product(BaseOrder::DegRevLex) => MonomialOrder::DegRevLex,
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push(Token { tok, col });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(digits.parse().expect("digit run")),
                    col,
                });
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    col,
                });
            }
            _ => return Err(syntax(line, col, format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// Recursive-descent evaluator producing tagged polynomials directly.
struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    line_len: usize,
    slots: &'a HashMap<String, usize>,
    arity: usize,
    order: MonomialOrder,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.line_len + 1, |t| t.col)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn constant(&self, q: BigRational) -> MultiPoly<BigRational> {
        MultiPoly::from_terms(vec![(Monomial::one(self.arity), q)], self.order)
    }

    fn parse_expr(&mut self) -> Result<MultiPoly<BigRational>, ParseError> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = acc.add(&rhs, self.order);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    acc = acc.sub(&rhs, self.order);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<MultiPoly<BigRational>, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.parse_factor()?;
                    acc = acc.mul(&rhs, self.order);
                }
                Some(Tok::Slash) => {
                    let at = self.col();
                    self.bump();
                    let rhs = self.parse_factor()?;
                    if !rhs.is_constant() {
                        return Err(syntax(
                            self.line,
                            at,
                            "division is only allowed by a rational constant",
                        ));
                    }
                    if rhs.is_zero() {
                        return Err(syntax(self.line, at, "division by zero"));
                    }
                    let inv = rhs.lc().inverted();
                    acc = acc.mul_scalar(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<MultiPoly<BigRational>, ParseError> {
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
                self.parse_factor()
            }
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.parse_factor()?.neg())
            }
            _ => self.parse_power(),
        }
    }

    fn parse_power(&mut self) -> Result<MultiPoly<BigRational>, ParseError> {
        let base = self.parse_atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.col();
        self.bump();
        let line = self.line;
        let exp = match self.bump().cloned() {
            Some(Token {
                tok: Tok::Int(n),
                col,
            }) => u32::try_from(&n).map_err(|_| syntax(line, col, "exponent too large"))?,
            _ => {
                return Err(syntax(
                    line,
                    at,
                    "'^' must be followed by an unsigned integer",
                ))
            }
        };
        // Square-and-multiply on the polynomial itself.
        let mut result = self.constant(BigRational::one());
        let mut square = base;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&square, self.order);
            }
            e >>= 1;
            if e > 0 {
                square = square.mul(&square, self.order);
            }
        }
        Ok(result)
    }

    fn parse_atom(&mut self) -> Result<MultiPoly<BigRational>, ParseError> {
        let at = self.col();
        match self.bump().cloned() {
            Some(Token {
                tok: Tok::Int(n), ..
            }) => Ok(self.constant(BigRational::from_integer(n))),
            Some(Token {
                tok: Tok::Ident(name),
                col,
            }) => match self.slots.get(&name) {
                Some(&slot) => {
                    let mut exps = vec![0u32; self.arity];
                    exps[slot] = 1;
                    Ok(MultiPoly::from_terms(
                        vec![(Monomial(exps), BigRational::one())],
                        self.order,
                    ))
                }
                None => Err(ParseError {
                    line: self.line,
                    col,
                    kind: ParseErrorKind::UndeclaredVariable(name),
                }),
            },
            Some(Token {
                tok: Tok::LParen, ..
            }) => {
                let inner = self.parse_expr()?;
                let close = self.col();
                match self.bump().cloned() {
                    Some(Token {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    _ => Err(syntax(self.line, close, "expected ')'")),
                }
            }
            _ => Err(syntax(self.line, at, "expected a value")),
        }
    }
}

fn parse_expression(
    tokens: &[Token],
    line: usize,
    line_len: usize,
    slots: &HashMap<String, usize>,
    arity: usize,
    order: MonomialOrder,
) -> Result<MultiPoly<BigRational>, ParseError> {
    if tokens.is_empty() {
        return Err(syntax(line, line_len + 1, "expected an expression"));
    }
    let mut parser = ExprParser {
        tokens,
        pos: 0,
        line,
        line_len,
        slots,
        arity,
        order,
    };
    let poly = parser.parse_expr()?;
    if parser.pos != tokens.len() {
        return Err(syntax(line, parser.col(), "unexpected trailing input"));
    }
    Ok(poly)
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Stage {
    Vars,
    Minvar,
    Minpoly,
    Order,
    Gens,
}

impl Stage {
    fn expected(self) -> &'static str {
        match self {
            Stage::Vars => "'vars'",
            Stage::Minvar => "'minvar'",
            Stage::Minpoly => "'minpoly'",
            Stage::Order => "'order'",
            Stage::Gens => "'gen'",
        }
    }
}

/// Parses and validates a whole problem file.
pub fn parse_problem(src: &str) -> Result<Problem, ParseError> {
    let mut stage = Stage::Vars;
    let mut var_names: Vec<String> = Vec::new();
    let mut alpha_name = String::new();
    let mut minpoly = UniPoly::zero();
    let mut order = MonomialOrder::Product(BaseOrder::DegRevLex);
    let mut generators: Vec<MultiPoly<BigRational>> = Vec::new();
    let mut slots: HashMap<String, usize> = HashMap::new();
    let mut line_count = 0;

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        line_count = line;
        let text = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        };
        if text.trim().is_empty() {
            continue;
        }
        let tokens = tokenize(text, line)?;
        let keyword = match &tokens[0].tok {
            Tok::Ident(w) => w.clone(),
            _ => return Err(syntax(line, tokens[0].col, "expected a keyword")),
        };
        let rest = &tokens[1..];
        let line_len = text.len();

        match (stage, keyword.as_str()) {
            (Stage::Vars, "vars") => {
                if rest.is_empty() {
                    return Err(syntax(line, line_len + 1, "expected variable names"));
                }
                for t in rest {
                    match &t.tok {
                        Tok::Ident(name) => {
                            if slots.contains_key(name) {
                                return Err(ParseError {
                                    line,
                                    col: t.col,
                                    kind: ParseErrorKind::DuplicateVariable(name.clone()),
                                });
                            }
                            slots.insert(name.clone(), var_names.len());
                            var_names.push(name.clone());
                        }
                        _ => return Err(syntax(line, t.col, "expected a variable name")),
                    }
                }
                stage = Stage::Minvar;
            }
            (Stage::Minvar, "minvar") => {
                match rest {
                    [t] => match &t.tok {
                        Tok::Ident(name) => {
                            if slots.contains_key(name) {
                                return Err(ParseError {
                                    line,
                                    col: t.col,
                                    kind: ParseErrorKind::DuplicateVariable(name.clone()),
                                });
                            }
                            alpha_name = name.clone();
                        }
                        _ => return Err(syntax(line, t.col, "expected a name")),
                    },
                    _ => return Err(syntax(line, line_len + 1, "expected exactly one name")),
                }
                stage = Stage::Minpoly;
            }
            (Stage::Minpoly, "minpoly") => {
                let mut alpha_slot = HashMap::new();
                alpha_slot.insert(alpha_name.clone(), 0usize);
                let poly = parse_expression(
                    rest,
                    line,
                    line_len,
                    &alpha_slot,
                    1,
                    MonomialOrder::Lex,
                )?;
                let mut coeffs =
                    vec![
                        BigRational::from_integer(BigInt::from(0));
                        poly.terms().iter().map(|(m, _)| m.0[0] as usize).max().map_or(0, |d| d + 1)
                    ];
                for (m, c) in poly.terms() {
                    coeffs[m.0[0] as usize] = c.clone();
                }
                let f = UniPoly::from_coeffs(coeffs);
                if f.degree().unwrap_or(0) < 1 {
                    return Err(ParseError {
                        line,
                        col: rest.first().map_or(line_len + 1, |t| t.col),
                        kind: ParseErrorKind::NonMonicMinpoly,
                    });
                }
                minpoly = f.monic();
                stage = Stage::Order;
            }
            (Stage::Order, "order") => {
                let base = match rest {
                    [t] => match &t.tok {
                        Tok::Ident(w) if w == "lex" => BaseOrder::Lex,
                        Tok::Ident(w) if w == "degrevlex" => BaseOrder::DegRevLex,
                        _ => {
                            return Err(syntax(
                                line,
                                t.col,
                                "expected 'lex' or 'degrevlex'",
                            ))
                        }
                    },
                    _ => {
                        return Err(syntax(line, line_len + 1, "expected an order name"))
                    }
                };
                order = MonomialOrder::Product(base);
                slots.insert(alpha_name.clone(), var_names.len());
                stage = Stage::Gens;
            }
            (Stage::Gens, "gen") => {
                let arity = var_names.len() + 1;
                let poly = parse_expression(rest, line, line_len, &slots, arity, order)?;
                let alpha_bound = minpoly.degree().unwrap() as u32;
                if poly.terms().iter().any(|(m, _)| m.t_exp() >= alpha_bound) {
                    return Err(ParseError {
                        line,
                        col: rest.first().map_or(line_len + 1, |t| t.col),
                        kind: ParseErrorKind::AlphaDegreeTooHigh,
                    });
                }
                generators.push(poly);
            }
            _ => {
                return Err(syntax(
                    line,
                    tokens[0].col,
                    format!("expected a {} line, found '{}'", stage.expected(), keyword),
                ))
            }
        }
    }

    if stage != Stage::Gens {
        return Err(syntax(
            line_count + 1,
            1,
            format!("unexpected end of input: missing {} line", stage.expected()),
        ));
    }

    Ok(Problem {
        var_names,
        alpha_name,
        minpoly,
        order,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    const DEMO: &str = "\
# two variables over the Gaussian rationals
vars x y
minvar a
minpoly a^2+1
order degrevlex
gen x^2+a*y
gen a*x*y-x+a
";

    #[test]
    fn demo_problem_parses() {
        let p = parse_problem(DEMO).unwrap();
        assert_eq!(p.var_names, vec!["x", "y"]);
        assert_eq!(p.alpha_name, "a");
        assert_eq!(
            p.minpoly,
            UniPoly::from_coeffs(vec![q(1), q(0), q(1)])
        );
        assert_eq!(p.order, MonomialOrder::Product(BaseOrder::DegRevLex));
        assert_eq!(p.generators.len(), 2);
        assert_eq!(
            p.generators[0],
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![2, 0, 0]), q(1)),
                    (Monomial(vec![0, 1, 1]), q(1)),
                ],
                p.order,
            )
        );
        assert_eq!(
            p.generators[1],
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![1, 1, 1]), q(1)),
                    (Monomial(vec![1, 0, 0]), q(-1)),
                    (Monomial(vec![0, 0, 1]), q(1)),
                ],
                p.order,
            )
        );
    }

    #[test]
    fn expressions_with_parens_signs_and_division() {
        let src = "\
vars x y
minvar a
minpoly a^2+1
order lex
gen (a+8)*x^2*y^2+5*x*y^3/10
gen -x^2--y
gen (x+y)^3-x*(1/2)
";
        let p = parse_problem(src).unwrap();
        assert_eq!(
            p.generators[0],
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![2, 2, 1]), q(1)),
                    (Monomial(vec![2, 2, 0]), q(8)),
                    (
                        Monomial(vec![1, 3, 0]),
                        BigRational::new(BigInt::from(1), BigInt::from(2))
                    ),
                ],
                p.order,
            )
        );
        assert_eq!(
            p.generators[1],
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![2, 0, 0]), q(-1)),
                    (Monomial(vec![0, 1, 0]), q(1)),
                ],
                p.order,
            )
        );
        assert_eq!(
            p.generators[2],
            MultiPoly::from_terms(
                vec![
                    (Monomial(vec![3, 0, 0]), q(1)),
                    (Monomial(vec![2, 1, 0]), q(3)),
                    (Monomial(vec![1, 2, 0]), q(3)),
                    (Monomial(vec![0, 3, 0]), q(1)),
                    (
                        Monomial(vec![1, 0, 0]),
                        BigRational::new(BigInt::from(-1), BigInt::from(2))
                    ),
                ],
                p.order,
            )
        );
    }

    #[test]
    fn non_monic_minpoly_is_normalized() {
        let src = "\
vars x
minvar a
minpoly 2*a^2+2
order lex
gen x-a
";
        let p = parse_problem(src).unwrap();
        assert_eq!(p.minpoly, UniPoly::from_coeffs(vec![q(1), q(0), q(1)]));
    }

    fn kind_of(src: &str) -> ParseErrorKind {
        parse_problem(src).unwrap_err().kind
    }

    #[test]
    fn error_positions_and_kinds() {
        // Undeclared variable.
        let err = parse_problem(
            "vars x\nminvar a\nminpoly a^2+1\norder lex\ngen x+z\n",
        )
        .unwrap_err();
        assert_eq!(err.line, 5);
        assert_eq!(err.col, 7);
        assert_eq!(
            err.kind,
            ParseErrorKind::UndeclaredVariable("z".to_string())
        );

        // Duplicate variable, both within vars and against minvar.
        assert_eq!(
            kind_of("vars x x\nminvar a\nminpoly a^2+1\norder lex\n"),
            ParseErrorKind::DuplicateVariable("x".to_string())
        );
        assert_eq!(
            kind_of("vars x\nminvar x\nminpoly x^2+1\norder lex\n"),
            ParseErrorKind::DuplicateVariable("x".to_string())
        );

        // Constant minimal polynomial cannot be normalized.
        assert_eq!(
            kind_of("vars x\nminvar a\nminpoly 5\norder lex\ngen x\n"),
            ParseErrorKind::NonMonicMinpoly
        );

        // Tag exponent at or above the extension degree.
        assert_eq!(
            kind_of("vars x\nminvar a\nminpoly a^2+1\norder lex\ngen a^2*x\n"),
            ParseErrorKind::AlphaDegreeTooHigh
        );
        assert_eq!(
            kind_of("vars x\nminvar a\nminpoly a^2+1\norder lex\ngen a*a*x\n"),
            ParseErrorKind::AlphaDegreeTooHigh
        );

        // Syntax errors carry positions.
        let err = parse_problem("vars x\nminvar a\nminpoly a^2+1\norder lex\ngen x+\n")
            .unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(err.line, 5);

        // Division restrictions.
        assert!(matches!(
            kind_of("vars x\nminvar a\nminpoly a^2+1\norder lex\ngen x/x\n"),
            ParseErrorKind::Syntax(_)
        ));
        assert!(matches!(
            kind_of("vars x\nminvar a\nminpoly a^2+1\norder lex\ngen x/0\n"),
            ParseErrorKind::Syntax(_)
        ));

        // Header order is strict.
        assert!(matches!(
            kind_of("minvar a\nvars x\nminpoly a^2+1\norder lex\n"),
            ParseErrorKind::Syntax(_)
        ));
        // Truncated input.
        let err = parse_problem("vars x\nminvar a\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(err.line, 3);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let src = "\n# heading\nvars x # trailing\n\nminvar a\nminpoly a^2+1 # unit\norder degrevlex\n\ngen x-a # generator\n";
        let p = parse_problem(src).unwrap();
        assert_eq!(p.var_names, vec!["x"]);
        assert_eq!(p.generators.len(), 1);
    }

    #[test]
    fn empty_generator_list_is_allowed() {
        let p = parse_problem("vars x\nminvar a\nminpoly a^2+1\norder lex\n").unwrap();
        assert!(p.generators.is_empty());
    }
}

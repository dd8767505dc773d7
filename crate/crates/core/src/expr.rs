//! Surface syntax for elements of the free Nijenhuis algebra.
//!
//! ```text
//! sum     := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := INT ['/' INT]            rational literal
//!          | IDENT                    generator
//!          | '[' sum ']' | 'P(' sum ')'   operator application
//!          | OP '(' sum ',' sum ')'   OP in prec, succ, bullet, star
//!          | '(' sum ')'
//!          | '-' factor
//! ```
//!
//! Adjacent brackets such as `[x]*[y]` are fine here; evaluation expands
//! them through the algebra product.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{derived_op, operator_n, product, OpSymbol};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::word::{is_identifier, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("bad JSON term: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Generator(String),
    Bracket(Box<Expr>),
    /// Two or more factors.
    Product(Vec<Expr>),
    /// Coefficient-weighted terms; empty means zero.
    Sum(Vec<(Rational, Expr)>),
    DerivedOp(OpSymbol, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Self {
        Expr::Sum(Vec::new())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Generator(name) => f.write_str(name),
            Expr::Bracket(e) => write!(f, "[{e}]"),
            Expr::Product(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    match e {
                        Expr::Sum(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::Sum(terms) if terms.is_empty() => f.write_str("0"),
            Expr::Sum(terms) => {
                for (i, (c, e)) in terms.iter().enumerate() {
                    match (i, c.is_negative()) {
                        (0, false) => {}
                        (0, true) => f.write_str("-")?,
                        (_, false) => f.write_str(" + ")?,
                        (_, true) => f.write_str(" - ")?,
                    }
                    if !c.abs().is_one() {
                        write!(f, "{}*", c.abs())?;
                    }
                    match e {
                        Expr::Sum(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            Expr::DerivedOp(op, a, b) => write!(f, "{op}({a}, {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(text[start..i].to_string())));
        } else if "+-*/[](),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let (c, e) = self.term()?;
            if let Some(e) = e {
                terms.push((&sign * &c, e));
            }
            if self.eat('+') {
                sign = Rational::one();
            } else if self.eat('-') {
                sign = Rational::from(-1);
            } else {
                break;
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        if terms.len() == 1 && terms[0].0.is_one() {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    /// A product term split into its scalar coefficient and its algebra part;
    /// `None` for a zero scalar.
    fn term(&mut self) -> Result<(Rational, Option<Expr>), ExprError> {
        let start = self.pos();
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        loop {
            let (c, e) = self.factor()?;
            coeff *= &c;
            factors.extend(e);
            if !self.eat('*') {
                break;
            }
        }
        if factors.is_empty() {
            if coeff.is_zero() {
                return Ok((coeff, None));
            }
            return Err(ExprError::Syntax {
                pos: start,
                msg: "a nonzero scalar needs a word to multiply".into(),
            });
        }
        let e = if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        };
        Ok((coeff, Some(e)))
    }

    fn factor(&mut self) -> Result<(Rational, Option<Expr>), ExprError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.idx += 1;
        match tok {
            Tok::Sym('-') => {
                let (c, e) = self.factor()?;
                Ok((-c, e))
            }
            Tok::Int(n) => {
                let start = self.toks[self.idx - 1].0;
                let mut text = n;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.idx += 1;
                            text = format!("{text}/{d}");
                        }
                        _ => return self.err("expected a denominator"),
                    }
                }
                match text.parse::<Rational>() {
                    Ok(q) => Ok((q, None)),
                    Err(_) => Err(ExprError::Syntax {
                        pos: start,
                        msg: "zero denominator".into(),
                    }),
                }
            }
            Tok::Sym('[') => {
                let inner = self.sum()?;
                self.expect(']')?;
                Ok((Rational::one(), Some(Expr::Bracket(Box::new(inner)))))
            }
            Tok::Sym('(') => {
                let inner = self.sum()?;
                self.expect(')')?;
                Ok((Rational::one(), Some(inner)))
            }
            Tok::Ident(name) => {
                if self.peek() != Some(&Tok::Sym('(')) {
                    return Ok((Rational::one(), Some(Expr::Generator(name))));
                }
                self.idx += 1;
                let e = if name == "P" {
                    let inner = self.sum()?;
                    Expr::Bracket(Box::new(inner))
                } else {
                    let Ok(op) = name.parse::<OpSymbol>() else {
                        self.idx -= 2;
                        return self.err(format!("`{name}` is not an operation"));
                    };
                    let a = self.sum()?;
                    self.expect(',')?;
                    let b = self.sum()?;
                    Expr::DerivedOp(op, Box::new(a), Box::new(b))
                };
                self.expect(')')?;
                Ok((Rational::one(), Some(e)))
            }
            Tok::Sym(c) => {
                self.idx -= 1;
                self.err(format!("unexpected `{c}`"))
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
    };
    let e = p.sum()?;
    if p.idx != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluates `e` where only the `declared` generators may appear.
pub fn eval_expr(e: &Expr, declared: &HashSet<Symbol>) -> Result<LinComb, ExprError> {
    Ok(match e {
        Expr::Generator(name) => {
            let sym = Symbol::new(name).map_err(|_| ExprError::UnknownIdentifier(name.clone()))?;
            if !declared.contains(&sym) {
                return Err(ExprError::UnknownIdentifier(name.clone()));
            }
            LinComb::from_word(Word::letter(sym))
        }
        Expr::Bracket(inner) => operator_n(&eval_expr(inner, declared)?),
        Expr::Product(es) => {
            let mut it = es.iter();
            let first = it
                .next()
                .map_or(Ok(LinComb::zero()), |e| eval_expr(e, declared))?;
            it.try_fold(first, |acc, e| Ok(product(&acc, &eval_expr(e, declared)?)))?
        }
        Expr::Sum(terms) => {
            let mut out = LinComb::zero();
            for (c, e) in terms {
                out.add_scaled(c, &eval_expr(e, declared)?);
            }
            out
        }
        Expr::DerivedOp(op, a, b) => {
            derived_op(*op, &eval_expr(a, declared)?, &eval_expr(b, declared)?)
        }
    })
}

/// Parses and evaluates in one go.
pub fn eval_str(text: &str, declared: &HashSet<Symbol>) -> Result<LinComb, ExprError> {
    eval_expr(&parse_expr(text)?, declared)
}

/// Canonical text form of a combination (see the `Display` impl of
/// [`LinComb`]).
pub fn print_canonical(a: &LinComb) -> String {
    a.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: Rational,
    pub word: String,
}

/// `{"terms": [{"coeff": "p/q", "word": "..."}, ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLinComb {
    pub terms: Vec<JsonTerm>,
}

impl From<&LinComb> for JsonLinComb {
    fn from(a: &LinComb) -> Self {
        JsonLinComb {
            terms: a
                .iter()
                .map(|(w, c)| JsonTerm {
                    coeff: c.clone(),
                    word: w.canonical().to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&JsonLinComb> for LinComb {
    type Error = ExprError;
    fn try_from(j: &JsonLinComb) -> Result<Self, Self::Error> {
        j.terms
            .iter()
            .map(|t| {
                t.word
                    .parse::<Word>()
                    .map(|w| (w, t.coeff.clone()))
                    .map_err(|e| ExprError::Json(e.to_string()))
            })
            .collect()
    }
}

/// Parses a comma-separated generator list such as `x,y,z`.
pub fn parse_generator_list(text: &str) -> Result<Vec<Symbol>, ExprError> {
    text.split(',')
        .map(str::trim)
        .map(|s| {
            if is_identifier(s) {
                Ok(Symbol::new(s).expect("checked"))
            } else {
                Err(ExprError::UnknownIdentifier(s.to_string()))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(names: &str) -> HashSet<Symbol> {
        parse_generator_list(names).unwrap().into_iter().collect()
    }

    fn g(s: &str) -> Expr {
        Expr::Generator(s.into())
    }

    fn lc(terms: &[(i64, &str)]) -> LinComb {
        terms
            .iter()
            .map(|&(c, s)| (s.parse::<Word>().unwrap(), Rational::from(c)))
            .collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_expr("x*[y]").unwrap(),
            Expr::Product(vec![g("x"), Expr::Bracket(Box::new(g("y")))])
        );
        assert_eq!(
            parse_expr("[x]*[y]").unwrap(),
            Expr::Product(vec![
                Expr::Bracket(Box::new(g("x"))),
                Expr::Bracket(Box::new(g("y")))
            ])
        );
        assert_eq!(
            parse_expr("2/3*x - [x*y]").unwrap(),
            Expr::Sum(vec![
                (Rational::new(2, 3), g("x")),
                (
                    Rational::from(-1),
                    Expr::Bracket(Box::new(Expr::Product(vec![g("x"), g("y")])))
                )
            ])
        );
        assert_eq!(parse_expr("P(x)").unwrap(), parse_expr("[x]").unwrap());
        assert_eq!(parse_expr("0").unwrap(), Expr::zero());
        assert_eq!(
            parse_expr("prec(x, y)").unwrap(),
            Expr::DerivedOp(OpSymbol::Prec, Box::new(g("x")), Box::new(g("y")))
        );
    }

    #[test]
    fn syntax_errors_have_positions() {
        let cases = [
            ("x +", 3),
            ("[x", 2),
            ("x ) ", 2),
            ("foo(x)", 0),
            ("prec(x y)", 7),
            ("x $ y", 2),
            ("2", 0),
            ("1/0*x", 0),
        ];
        for (text, pos) in cases {
            match parse_expr(text) {
                Err(ExprError::Syntax { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn eval_examples() {
        let d = gens("x,y,z");
        assert_eq!(eval_str("prec(x,y)", &d).unwrap(), lc(&[(1, "x*[y]")]));
        assert_eq!(
            eval_str("[x]*[y]", &d).unwrap(),
            lc(&[(1, "[[x]*y]"), (1, "[x*[y]]"), (-1, "[[x*y]]")])
        );
        assert!(eval_str("x - x", &d).unwrap().is_zero());
        assert_eq!(
            eval_str("a", &d),
            Err(ExprError::UnknownIdentifier("a".into()))
        );
        assert_eq!(
            eval_str("-(x + y)*2*z", &d).unwrap(),
            lc(&[(-2, "x*z"), (-2, "y*z")])
        );
        assert_eq!(
            eval_str("star(x,y) - succ(x,y)", &d).unwrap(),
            lc(&[(1, "x*[y]"), (-1, "[x*y]")])
        );
    }

    #[test]
    fn printing_round_trips() {
        let d = gens("x,y,z");
        for text in ["0", "x*[y]", "-2*[z] + [x*[y]]", "1/2*x - 3/4*[[y]*z]"] {
            let a = eval_str(text, &d).unwrap();
            assert_eq!(print_canonical(&a), text);
            assert_eq!(eval_str(&print_canonical(&a), &d).unwrap(), a);
        }
    }

    #[test]
    fn expr_display_reparses() {
        let d = gens("x,y");
        for text in [
            "2*(x + y)*[x]",
            "prec(x, -y) - 1/3*P(x*y)",
            "(x - y)*(x + y)",
        ] {
            let e = parse_expr(text).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert_eq!(eval_expr(&e, &d).unwrap(), eval_expr(&again, &d).unwrap());
        }
    }

    #[test]
    fn json_form() {
        let a = lc(&[(1, "[[x]*y]"), (-2, "x")]);
        let j = JsonLinComb::from(&a);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"terms":[{"coeff":"-2","word":"x"},{"coeff":"1","word":"[[x]*y]"}]}"#
        );
        assert_eq!(LinComb::try_from(&j).unwrap(), a);
    }
}

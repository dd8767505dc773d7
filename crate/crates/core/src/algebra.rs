//! The free Nijenhuis algebra on a generator set.
//!
//! Basis words multiply by concatenation, except at a junction where both
//! sides are brackets. There the Nijenhuis identity is used as a rewriting
//! rule:
//!
//! ```text
//! [a] * [b] = [[a] * b] + [a * [b]] - [[a * b]]
//! ```
//!
//! The three products on the right have a smaller total depth, so the
//! recursion terminates. Factors away from the junction are carried along by
//! concatenation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::word::{Factor, Word};

/// Product of two basis words.
pub fn product_words(u: &Word, v: &Word) -> LinComb {
    let uf = u.factors();
    let vf = v.factors();
    match (&uf[uf.len() - 1], &vf[0]) {
        (Factor::Bracket(a), Factor::Bracket(b)) => {
            let core = bracket_product(a, b);
            let prefix = &uf[..uf.len() - 1];
            let suffix = &vf[1..];
            if prefix.is_empty() && suffix.is_empty() {
                return core;
            }
            core.map_words(|w| Word::splice(prefix, w, suffix))
        }
        _ => LinComb::from_word(u.concat(v).expect("junction is not bracket-bracket")),
    }
}

/// `[a] * [b]`, expanded by the Nijenhuis rule.
fn bracket_product(a: &Word, b: &Word) -> LinComb {
    let ba = Word::bracket(a.clone());
    let bb = Word::bracket(b.clone());
    let mut out = operator_n(&product_words(&ba, b));
    out.add_scaled(&Rational::one(), &operator_n(&product_words(a, &bb)));
    out.add_scaled(
        &Rational::from(-1),
        &operator_n(&operator_n(&product_words(a, b))),
    );
    out
}

/// Bilinear extension of [`product_words`].
pub fn product(a: &LinComb, b: &LinComb) -> LinComb {
    let mut out = LinComb::zero();
    for (u, cu) in a {
        for (v, cv) in b {
            out.add_scaled(&(cu * cv), &product_words(u, v));
        }
    }
    out
}

/// The bracketing operator `w -> [w]`, extended linearly.
pub fn operator_n(a: &LinComb) -> LinComb {
    a.map_words(|w| Word::bracket(w.clone()))
}

/// The operations induced by a Nijenhuis operator, plus their sum `star`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpSymbol {
    Prec,
    Succ,
    Bullet,
    Star,
}

impl OpSymbol {
    /// The three basic operations in coordinate order.
    pub const BASIC: [OpSymbol; 3] = [OpSymbol::Prec, OpSymbol::Succ, OpSymbol::Bullet];

    pub fn name(self) -> &'static str {
        match self {
            OpSymbol::Prec => "prec",
            OpSymbol::Succ => "succ",
            OpSymbol::Bullet => "bullet",
            OpSymbol::Star => "star",
        }
    }
}

impl fmt::Display for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpSymbol {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prec" => Ok(OpSymbol::Prec),
            "succ" => Ok(OpSymbol::Succ),
            "bullet" => Ok(OpSymbol::Bullet),
            "star" => Ok(OpSymbol::Star),
            _ => Err(format!("unknown operation `{s}`")),
        }
    }
}

/// `prec(a,b) = a N(b)`, `succ(a,b) = N(a) b`, `bullet(a,b) = -N(ab)`,
/// `star` = the sum of the three.
pub fn derived_op(op: OpSymbol, a: &LinComb, b: &LinComb) -> LinComb {
    match op {
        OpSymbol::Prec => product(a, &operator_n(b)),
        OpSymbol::Succ => product(&operator_n(a), b),
        OpSymbol::Bullet => -operator_n(&product(a, b)),
        OpSymbol::Star => OpSymbol::BASIC
            .iter()
            .map(|&op| derived_op(op, a, b))
            .fold(LinComb::zero(), |acc, t| acc + t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn lc(terms: &[(i64, &str)]) -> LinComb {
        terms
            .iter()
            .map(|&(c, s)| (w(s), Rational::from(c)))
            .collect()
    }

    #[test]
    fn word_products() {
        assert_eq!(product_words(&w("x"), &w("y")), lc(&[(1, "x*y")]));
        assert_eq!(
            product_words(&w("[x]"), &w("[y]")),
            lc(&[(1, "[[x]*y]"), (1, "[x*[y]]"), (-1, "[[x*y]]")])
        );
        assert_eq!(product_words(&w("x*[y]"), &w("z")), lc(&[(1, "x*[y]*z")]));
    }

    #[test]
    fn nested_cancellation() {
        // [[x]]*[y]: the +[[[x]*y]] from [[x]*[y]] cancels against -[[[x]*y]]
        assert_eq!(
            product_words(&w("[[x]]"), &w("[y]")),
            lc(&[(1, "[[[x]]*y]"), (1, "[[x*[y]]]"), (-1, "[[[x*y]]]")])
        );
    }

    #[test]
    fn outer_factors_carry_over() {
        assert_eq!(
            product_words(&w("x*[y]"), &w("[z]*x")),
            lc(&[(1, "x*[[y]*z]*x"), (1, "x*[y*[z]]*x"), (-1, "x*[[y*z]]*x")])
        );
    }

    #[test]
    fn bilinear_products() {
        let a = lc(&[(1, "x")]);
        assert!(product(&LinComb::zero(), &a).is_zero());
        assert_eq!(
            product(&lc(&[(1, "x"), (1, "y")]), &lc(&[(1, "z")])),
            lc(&[(1, "x*z"), (1, "y*z")])
        );
        assert_eq!(
            product(&lc(&[(2, "[x]")]), &lc(&[(3, "[y]")])),
            lc(&[(6, "[[x]*y]"), (6, "[x*[y]]"), (-6, "[[x*y]]")])
        );
    }

    #[test]
    fn operator_examples() {
        assert_eq!(operator_n(&lc(&[(1, "x")])), lc(&[(1, "[x]")]));
        assert!(operator_n(&LinComb::zero()).is_zero());
        assert_eq!(
            operator_n(&lc(&[(1, "x*[y]"), (-2, "z")])),
            lc(&[(1, "[x*[y]]"), (-2, "[z]")])
        );
    }

    #[test]
    fn derived_examples() {
        let x = lc(&[(1, "x")]);
        let y = lc(&[(1, "y")]);
        assert_eq!(derived_op(OpSymbol::Prec, &x, &y), lc(&[(1, "x*[y]")]));
        assert_eq!(derived_op(OpSymbol::Succ, &x, &y), lc(&[(1, "[x]*y")]));
        assert_eq!(derived_op(OpSymbol::Bullet, &x, &y), lc(&[(-1, "[x*y]")]));
        assert_eq!(
            derived_op(OpSymbol::Star, &x, &y),
            lc(&[(1, "x*[y]"), (1, "[x]*y"), (-1, "[x*y]")])
        );
    }
}

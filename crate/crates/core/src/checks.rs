//! Exhaustive identity sweeps over enumerated basis words.
//!
//! Each sweep walks tuples of words in canonical order and stops at the first
//! failure. Work is split across threads by the first word of the tuple; the
//! reported failure is always the first one in canonical order.

use std::fmt;
use std::thread;

use crate::algebra::{derived_op, operator_n, product, product_words, OpSymbol};
use crate::lincomb::LinComb;
use crate::word::{enumerate_words, EndKind, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub name: &'static str,
    /// Number of tuples examined.
    pub checked: usize,
    /// First failing tuple, printed as canonical words.
    pub failure: Option<Vec<String>>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "{}: pass ({} cases)", self.name, self.checked),
            Some(t) => write!(f, "{}: FAIL at ({})", self.name, t.join(", ")),
        }
    }
}

fn workers() -> usize {
    thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(16)
}

/// Runs `check(first, &words)` for every first word, in parallel chunks.
/// `check` returns the number of cases examined and the first failure.
fn sweep<F>(name: &'static str, words: &[Word], check: F) -> SweepReport
where
    F: Fn(&Word) -> (usize, Option<Vec<String>>) + Sync,
{
    let chunk = words.len().div_ceil(workers()).max(1);
    let results: Vec<(usize, Option<Vec<String>>)> = thread::scope(|s| {
        let handles: Vec<_> = words
            .chunks(chunk)
            .map(|part| {
                let check = &check;
                s.spawn(move || {
                    let mut checked = 0;
                    for u in part {
                        let (n, fail) = check(u);
                        checked += n;
                        if fail.is_some() {
                            return (checked, fail);
                        }
                    }
                    (checked, None)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    let mut checked = 0;
    for (n, fail) in results {
        checked += n;
        if fail.is_some() {
            return SweepReport {
                name,
                checked,
                failure: fail,
            };
        }
    }
    SweepReport {
        name,
        checked,
        failure: None,
    }
}

fn names(ws: &[&Word]) -> Vec<String> {
    ws.iter().map(|w| w.canonical().to_string()).collect()
}

/// `(uv)w = u(vw)` for all triples with every word of size at most `max_size`.
pub fn associativity_sweep(alphabet: &[Symbol], max_size: usize) -> SweepReport {
    let words = enumerate_words(alphabet, max_size);
    sweep("associativity", &words, |u| {
        let mut n = 0;
        for v in &words {
            let uv = product_words(u, v);
            for w in &words {
                n += 1;
                let left = product(&uv, &LinComb::from_word(w.clone()));
                let right = product(&LinComb::from_word(u.clone()), &product_words(v, w));
                if left != right {
                    return (n, Some(names(&[u, v, w])));
                }
            }
        }
        (n, None)
    })
}

/// `N(u)N(v) = N(N(u)v) + N(uN(v)) - N(N(uv))` on all pairs.
pub fn nijenhuis_sweep(alphabet: &[Symbol], max_size: usize) -> SweepReport {
    let words = enumerate_words(alphabet, max_size);
    sweep("nijenhuis identity", &words, |u| {
        let mut n = 0;
        let lu = LinComb::from_word(u.clone());
        let nu = operator_n(&lu);
        for v in &words {
            n += 1;
            if !nijenhuis_holds(&nu, &lu, &LinComb::from_word(v.clone())) {
                return (n, Some(names(&[u, v])));
            }
        }
        (n, None)
    })
}

fn nijenhuis_holds(nu: &LinComb, u: &LinComb, v: &LinComb) -> bool {
    let nv = operator_n(v);
    let lhs = product(nu, &nv);
    let rhs = operator_n(&product(nu, v)) + operator_n(&product(u, &nv))
        - operator_n(&operator_n(&product(u, v)));
    lhs == rhs
}

/// Head and tail of every term of `uv` agree with `head(u)` and `tail(v)`;
/// unless both junction factors are brackets, `uv` is the single
/// concatenated word with coefficient 1.
pub fn matching_sweep(alphabet: &[Symbol], max_size: usize) -> SweepReport {
    let words = enumerate_words(alphabet, max_size);
    sweep("head/tail matching", &words, |u| {
        let mut n = 0;
        for v in &words {
            n += 1;
            let p = product_words(u, v);
            let ends_ok = p
                .words()
                .all(|w| w.head() == u.head() && w.tail() == v.tail());
            let single_ok = match (u.tail(), v.head()) {
                (EndKind::Bracket, EndKind::Bracket) => true,
                _ => p == LinComb::from_word(u.concat(v).expect("not bracket-bracket")),
            };
            if !(ends_ok && single_ok) {
                return (n, Some(names(&[u, v])));
            }
        }
        (n, None)
    })
}

/// `star` is associative on all triples.
pub fn star_associativity_sweep(alphabet: &[Symbol], max_size: usize) -> SweepReport {
    let words = enumerate_words(alphabet, max_size);
    let star = |a: &LinComb, b: &LinComb| derived_op(OpSymbol::Star, a, b);
    sweep("star associativity", &words, |u| {
        let mut n = 0;
        let lu = LinComb::from_word(u.clone());
        for v in &words {
            let lv = LinComb::from_word(v.clone());
            let uv = star(&lu, &lv);
            for w in &words {
                n += 1;
                let lw = LinComb::from_word(w.clone());
                if star(&uv, &lw) != star(&lu, &star(&lv, &lw)) {
                    return (n, Some(names(&[u, v, w])));
                }
            }
        }
        (n, None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> Vec<Symbol> {
        s.split(',').map(|n| Symbol::new(n).unwrap()).collect()
    }

    #[test]
    fn small_sweeps_pass() {
        let a = alpha("x,y");
        let r = associativity_sweep(&a, 2);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 8 * 8 * 8);
        assert!(nijenhuis_sweep(&a, 3).passed());
        assert!(matching_sweep(&a, 3).passed());
        let s = star_associativity_sweep(&alpha("x"), 2);
        assert!(s.passed());
        assert_eq!(s.checked, 27);
    }

    #[test]
    fn report_display() {
        let r = SweepReport {
            name: "demo",
            checked: 3,
            failure: Some(vec!["x".into(), "[y]".into()]),
        };
        assert_eq!(r.to_string(), "demo: FAIL at (x, [y])");
    }
}

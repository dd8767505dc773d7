//! Bracketed words: the basis of the free Nijenhuis algebra on a generator set.
//!
//! A word is an alternating sequence of factors. A factor is either a nonempty
//! run of generator letters (a basis word of the tensor algebra) or a bracket
//! `[w]` around another word. Two letter runs are never adjacent (they would
//! merge into one run) and two brackets are never adjacent (their product is
//! not a basis word).
//!
//! The canonical text form writes letters as identifiers joined by `*`, a
//! bracket as `[...]`, and joins factors with `*`, e.g. `x*[y*[z]]*w`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("a bracketed word needs at least one factor")]
    EmptyInput,
    #[error("a letter run must be nonempty")]
    EmptyRun,
    #[error("factor {0} has the same kind as its successor")]
    AlternationViolation(usize),
    #[error("cannot concatenate: both junction factors are brackets")]
    BracketAdjacency,
    #[error("invalid generator name `{0}`")]
    InvalidSymbol(String),
    #[error("malformed word `{text}` at byte {pos}")]
    Syntax { text: String, pos: usize },
}

/// A generator name: `[A-Za-z][A-Za-z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, WordError> {
        if is_identifier(name) {
            Ok(Symbol(Arc::from(name)))
        } else {
            Err(WordError::InvalidSymbol(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Symbol {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::new(s)
    }
}

/// Whether the first (head) or last (tail) factor of a word is a letter run
/// or a bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndKind {
    Generator = 0,
    Bracket = 1,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    Letters(Vec<Symbol>),
    Bracket(Word),
}

impl Factor {
    pub fn kind(&self) -> EndKind {
        match self {
            Factor::Letters(_) => EndKind::Generator,
            Factor::Bracket(_) => EndKind::Bracket,
        }
    }

    fn letter_count(&self) -> usize {
        match self {
            Factor::Letters(run) => run.len(),
            Factor::Bracket(w) => w.letter_count(),
        }
    }

    fn bracket_count(&self) -> usize {
        match self {
            Factor::Letters(_) => 0,
            Factor::Bracket(w) => w.bracket_count() + 1,
        }
    }

    fn depth(&self) -> usize {
        match self {
            Factor::Letters(_) => 0,
            Factor::Bracket(w) => w.depth() + 1,
        }
    }

    fn write_canonical(&self, out: &mut String) {
        match self {
            Factor::Letters(run) => {
                for (i, s) in run.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    out.push_str(s.as_str());
                }
            }
            Factor::Bracket(w) => {
                out.push('[');
                out.push_str(w.canonical());
                out.push(']');
            }
        }
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_canonical(&mut s);
        f.write_str(&s)
    }
}

struct WordData {
    factors: Vec<Factor>,
    letters: usize,
    brackets: usize,
    depth: usize,
    text: String,
}

/// A validated bracketed word. Cloning is cheap; equality is structural.
#[derive(Clone)]
pub struct Word(Arc<WordData>);

impl Word {
    /// Validates the alternation invariant and builds the word.
    pub fn new(factors: Vec<Factor>) -> Result<Self, WordError> {
        if factors.is_empty() {
            return Err(WordError::EmptyInput);
        }
        for (i, f) in factors.iter().enumerate() {
            if let Factor::Letters(run) = f {
                if run.is_empty() {
                    return Err(WordError::EmptyRun);
                }
            }
            if i > 0 && factors[i - 1].kind() == f.kind() {
                return Err(WordError::AlternationViolation(i - 1));
            }
        }
        Ok(Self::from_valid(factors))
    }

    fn from_valid(factors: Vec<Factor>) -> Self {
        let letters = factors.iter().map(Factor::letter_count).sum();
        let brackets = factors.iter().map(Factor::bracket_count).sum();
        let depth = factors.iter().map(Factor::depth).max().unwrap_or(0);
        let mut text = String::new();
        for (i, f) in factors.iter().enumerate() {
            if i > 0 {
                text.push('*');
            }
            f.write_canonical(&mut text);
        }
        Word(Arc::new(WordData {
            factors,
            letters,
            brackets,
            depth,
            text,
        }))
    }

    pub fn letter(s: Symbol) -> Self {
        Self::from_valid(vec![Factor::Letters(vec![s])])
    }

    /// A single letter-run word. Panics on an empty run.
    pub fn run(letters: Vec<Symbol>) -> Self {
        assert!(!letters.is_empty(), "empty letter run");
        Self::from_valid(vec![Factor::Letters(letters)])
    }

    /// The one-factor word `[inner]`.
    pub fn bracket(inner: Word) -> Self {
        Self::from_valid(vec![Factor::Bracket(inner)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0.factors
    }

    /// Standard decomposition: the alternating factor sequence.
    pub fn standard_decomposition(&self) -> Vec<Factor> {
        self.0.factors.clone()
    }

    /// Number of factors in the standard decomposition.
    pub fn breadth(&self) -> usize {
        self.0.factors.len()
    }

    /// Maximal bracket nesting.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn letter_count(&self) -> usize {
        self.0.letters
    }

    pub fn bracket_count(&self) -> usize {
        self.0.brackets
    }

    /// Letters plus bracket pairs.
    pub fn size(&self) -> usize {
        self.0.letters + self.0.brackets
    }

    pub fn head(&self) -> EndKind {
        self.0.factors[0].kind()
    }

    pub fn tail(&self) -> EndKind {
        self.0.factors[self.0.factors.len() - 1].kind()
    }

    pub fn head_tail(&self) -> (EndKind, EndKind) {
        (self.head(), self.tail())
    }

    /// Canonical text form.
    pub fn canonical(&self) -> &str {
        &self.0.text
    }

    /// If this word is a single bracket `[w]`, returns `w`.
    pub fn as_bracket(&self) -> Option<&Word> {
        match self.factors() {
            [Factor::Bracket(inner)] => Some(inner),
            _ => None,
        }
    }

    /// Concatenation. Adjacent letter runs merge; adjacent brackets are refused.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        let mut factors = Vec::with_capacity(self.breadth() + other.breadth());
        factors.extend(self.factors().iter().cloned());
        let mut rest = other.factors().iter();
        match (factors.last_mut(), other.factors().first()) {
            (Some(Factor::Letters(left)), Some(Factor::Letters(right))) => {
                left.extend(right.iter().cloned());
                rest.next();
            }
            (Some(Factor::Bracket(_)), Some(Factor::Bracket(_))) => {
                return Err(WordError::BracketAdjacency)
            }
            _ => {}
        }
        factors.extend(rest.cloned());
        Ok(Self::from_valid(factors))
    }

    /// Concatenates `prefix ++ self ++ suffix`, where the prefix/suffix are
    /// factor slices taken from other words.
    pub(crate) fn splice(prefix: &[Factor], middle: &Word, suffix: &[Factor]) -> Word {
        let mut factors: Vec<Factor> =
            Vec::with_capacity(prefix.len() + middle.breadth() + suffix.len());
        factors.extend(prefix.iter().cloned());
        for f in middle.factors().iter().chain(suffix) {
            match (factors.last_mut(), f) {
                (Some(Factor::Letters(left)), Factor::Letters(right)) => {
                    left.extend(right.iter().cloned())
                }
                _ => {
                    debug_assert!(
                        !matches!(
                            (factors.last(), f),
                            (Some(Factor::Bracket(_)), Factor::Bracket(_))
                        ),
                        "bracket adjacency in splice"
                    );
                    factors.push(f.clone())
                }
            }
        }
        Self::from_valid(factors)
    }

    /// Every generator letter occurring in the word, left to right.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<Symbol>) {
        for f in self.factors() {
            match f {
                Factor::Letters(run) => out.extend(run.iter().cloned()),
                Factor::Bracket(w) => w.collect_symbols(out),
            }
        }
    }
}

/// The factor list built from parts, validated.
pub fn make_word(factors: Vec<Factor>) -> Result<Word, WordError> {
    Word::new(factors)
}

/// Total order: letter count, then depth, then canonical text.
pub fn canonical_compare(u: &Word, v: &Word) -> Ordering {
    u.letter_count()
        .cmp(&v.letter_count())
        .then(u.depth().cmp(&v.depth()))
        .then_with(|| u.canonical().cmp(v.canonical()))
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.text == other.0.text
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.text.hash(state)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_compare(self, other)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.canonical())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses the canonical text form. Whitespace is not allowed.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = WordParser { text: s, pos: 0 };
        let w = p.word()?;
        if p.pos != s.len() {
            return Err(p.error());
        }
        Ok(w)
    }
}

struct WordParser<'a> {
    text: &'a str,
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self) -> WordError {
        WordError::Syntax {
            text: self.text.to_string(),
            pos: self.pos,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut factors: Vec<Factor> = Vec::new();
        loop {
            match self.peek() {
                Some(b'[') => {
                    self.pos += 1;
                    let inner = self.word()?;
                    if self.peek() != Some(b']') {
                        return Err(self.error());
                    }
                    self.pos += 1;
                    factors.push(Factor::Bracket(inner));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                        self.pos += 1;
                    }
                    let sym = Symbol::new(&self.text[start..self.pos])?;
                    match factors.last_mut() {
                        Some(Factor::Letters(run)) => run.push(sym),
                        _ => factors.push(Factor::Letters(vec![sym])),
                    }
                }
                _ => return Err(self.error()),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Word::new(factors).map_err(|e| match e {
            WordError::AlternationViolation(_) => e,
            _ => self.error(),
        })
    }
}

/// All words of size exactly `size` over `alphabet`.
fn words_by_size(alphabet: &[Symbol], max_size: usize) -> Vec<Vec<Word>> {
    // by_size[s] = words of size s; ending[kind][s] = factor lists of size s ending in kind
    let mut by_size: Vec<Vec<Word>> = vec![Vec::new(); max_size + 1];
    let mut end_letters: Vec<Vec<Vec<Factor>>> = vec![Vec::new(); max_size + 1];
    let mut end_bracket: Vec<Vec<Vec<Factor>>> = vec![Vec::new(); max_size + 1];
    let mut runs: Vec<Vec<Vec<Symbol>>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        runs[1] = alphabet.iter().map(|s| vec![s.clone()]).collect();
    }
    for k in 2..=max_size {
        let mut next = Vec::new();
        for r in &runs[k - 1] {
            for s in alphabet {
                let mut r = r.clone();
                r.push(s.clone());
                next.push(r);
            }
        }
        runs[k] = next;
    }
    for s in 1..=max_size {
        let brackets_of = |k: usize, by_size: &Vec<Vec<Word>>| -> Vec<Factor> {
            if k >= 2 {
                by_size[k - 1]
                    .iter()
                    .map(|w| Factor::Bracket(w.clone()))
                    .collect()
            } else {
                Vec::new()
            }
        };
        let mut el = Vec::new();
        let mut eb = Vec::new();
        for k in 1..=s {
            let rest = s - k;
            for run in &runs[k] {
                if rest == 0 {
                    el.push(vec![Factor::Letters(run.clone())]);
                } else {
                    for seq in &end_bracket[rest] {
                        let mut seq = seq.clone();
                        seq.push(Factor::Letters(run.clone()));
                        el.push(seq);
                    }
                }
            }
            for br in brackets_of(k, &by_size) {
                if rest == 0 {
                    eb.push(vec![br.clone()]);
                } else {
                    for seq in &end_letters[rest] {
                        let mut seq = seq.clone();
                        seq.push(br.clone());
                        eb.push(seq);
                    }
                }
            }
        }
        let mut words: Vec<Word> = el
            .iter()
            .chain(eb.iter())
            .map(|f| Word::from_valid(f.clone()))
            .collect();
        words.sort();
        by_size[s] = words;
        end_letters[s] = el;
        end_bracket[s] = eb;
    }
    by_size
}

/// Every basis word over `alphabet` with `1 <= size <= max_size`, in
/// canonical order.
pub fn enumerate_words(alphabet: &[Symbol], max_size: usize) -> Vec<Word> {
    let mut all: Vec<Word> = words_by_size(alphabet, max_size)
        .into_iter()
        .flatten()
        .collect();
    all.sort();
    all
}

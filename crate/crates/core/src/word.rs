//! Free-group words over an abstract generator alphabet.
//!
//! Every [`Word`] is kept freely reduced. The text syntax is `a1*u2^-1*b1`:
//! generators are a family letter followed by an index, inverses carry the
//! suffix `^-1`, and letters are joined with `*`. Whitespace is ignored and
//! the identity prints as `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A named element such as `y2`, `Delta4`, `r5`, `c` or `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub index: Option<u16>,
}

impl Symbol {
    pub fn new(name: &str, index: Option<u16>) -> Self {
        Symbol {
            name: name.to_string(),
            index,
        }
    }
}

/// Generator identifier.
///
/// The derived ordering is the canonical printing order:
/// `a_1 < … < a_{g-1} < u_1 < … < b_0 < b_1 < … < x_i < named`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenId {
    /// Dehn twist `a_i` about `γ_{i,i+1}`.
    A(u16),
    /// Crosscap transposition `u_i`.
    U(u16),
    /// Dehn twist `b_j` about `γ_{1..2j+2}`; `b_0 = a_1`, `b_1 = b`.
    B(u16),
    /// Free generator `x_i` of the surface group.
    X(u16),
    Named(Symbol),
}

impl GenId {
    pub fn named(name: &str, index: Option<u16>) -> Self {
        GenId::Named(Symbol::new(name, index))
    }

    pub fn index(&self) -> Option<u16> {
        match self {
            GenId::A(i) | GenId::U(i) | GenId::B(i) | GenId::X(i) => Some(*i),
            GenId::Named(s) => s.index,
        }
    }

    /// Checks the index range of the family against a genus.
    pub fn fits_genus(&self, g: usize) -> bool {
        let g = g as i64;
        match *self {
            GenId::A(i) | GenId::U(i) => i >= 1 && (i as i64) < g,
            GenId::B(j) => 2 * (j as i64) <= g - 2,
            GenId::X(i) => i >= 1 && (i as i64) <= g,
            GenId::Named(_) => true,
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenId::A(i) => write!(f, "a{i}"),
            GenId::U(i) => write!(f, "u{i}"),
            GenId::B(i) => write!(f, "b{i}"),
            GenId::X(i) => write!(f, "x{i}"),
            GenId::Named(s) => match s.index {
                Some(i) => write!(f, "{}{}", s.name, i),
                None => write!(f, "{}", s.name),
            },
        }
    }
}

impl FromStr for GenId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            what: "generator",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, digits) = s.split_at(split);
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(err("expected a name followed by an optional index"));
        }
        let index = if digits.is_empty() {
            None
        } else {
            Some(digits.parse::<u16>().map_err(|_| err("bad index"))?)
        };
        Ok(match (name, index) {
            ("a", Some(i)) => GenId::A(i),
            ("u", Some(i)) => GenId::U(i),
            ("b", Some(i)) => GenId::B(i),
            ("b", None) => GenId::B(1),
            ("x", Some(i)) => GenId::X(i),
            ("a" | "u" | "x", None) => return Err(err("family letter needs an index")),
            (n, i) => GenId::named(n, i),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: GenId, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(&self) -> Letter {
        Letter {
            gen: self.gen.clone(),
            inverse: !self.inverse,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: GenId) -> Self {
        Word {
            letters: vec![Letter::new(gen, false)],
        }
    }

    pub fn gen_inv(gen: GenId) -> Self {
        Word {
            letters: vec![Letter::new(gen, true)],
        }
    }

    /// Builds a word from arbitrary letters, freely reducing them.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(last) if last.cancels(&l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    /// Product of generators given with integer exponents, e.g. `[(A(1), 2), (U(1), -1)]`.
    pub fn from_powers<I: IntoIterator<Item = (GenId, i64)>>(powers: I) -> Self {
        Word::from_letters(powers.into_iter().flat_map(|(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        let mut rest = other.letters.iter().peekable();
        while let (Some(last), Some(next)) = (letters.last(), rest.peek()) {
            if last.cancels(next) {
                letters.pop();
                rest.next();
            } else {
                break;
            }
        }
        letters.extend(rest.cloned());
        Word { letters }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Word {
        Word::from_letters(words.into_iter().flat_map(|w| w.letters.iter().cloned()))
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inv).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Word) -> Word {
        Word::product([self, other, &self.invert()])
    }

    /// Homomorphic image under a generator map.
    pub fn substitute<F>(&self, mut map: F) -> Result<Word>
    where
        F: FnMut(&GenId) -> Option<Word>,
    {
        let mut out = Word::identity();
        for l in &self.letters {
            let img = map(&l.gen).ok_or_else(|| Error::UnknownGenerator(l.gen.to_string()))?;
            let img = if l.inverse { img.invert() } else { img };
            out = out.concat(&img);
        }
        Ok(out)
    }

    pub fn substitute_map(&self, map: &BTreeMap<GenId, Word>) -> Result<Word> {
        self.substitute(|g| map.get(g).cloned())
    }

    /// Replaces only the generators present in `map`, keeping the others.
    pub fn replace(&self, map: &BTreeMap<GenId, Word>) -> Word {
        self.substitute(|g| Some(map.get(g).cloned().unwrap_or_else(|| Word::gen(g.clone()))))
            .expect("total map")
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k].cancels(&l[l.len() - 1 - k]) {
            k += 1;
        }
        (
            Word {
                letters: l[k..l.len() - k].to_vec(),
            },
            Word {
                letters: l[..k].to_vec(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) if self.letters.len() > 1 => !f.cancels(l),
            _ => true,
        }
    }

    /// Cyclic rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::from_letters(letters)
    }

    pub fn subword(&self, start: usize, len: usize) -> Option<Word> {
        self.letters.get(start..start + len).map(|s| Word {
            letters: s.to_vec(),
        })
    }

    /// Raw splice: replaces `len` letters at `start` by `with`, then reduces.
    pub fn splice(&self, start: usize, len: usize, with: &Word) -> Word {
        let mut letters = self.letters[..start].to_vec();
        letters.extend(with.letters.iter().cloned());
        letters.extend_from_slice(&self.letters[start + len..]);
        Word::from_letters(letters)
    }

    pub fn exponent_sum(&self, gen: &GenId) -> i64 {
        self.letters
            .iter()
            .filter(|l| &l.gen == gen)
            .map(Letter::sign)
            .sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = &GenId> {
        self.letters.iter().map(|l| &l.gen)
    }

    pub fn contains_gen(&self, gen: &GenId) -> bool {
        self.letters.iter().any(|l| &l.gen == gen)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for tok in compact.split('*') {
            let err = |reason: &str| Error::Parse {
                what: "word",
                input: s.to_string(),
                reason: format!("{reason} in `{tok}`"),
            };
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            if body.contains('^') {
                return Err(err("only the exponent -1 is allowed"));
            }
            if body.is_empty() {
                return Err(err("empty letter"));
            }
            let gen: GenId = body.parse().map_err(|_| err("bad generator"))?;
            letters.push(Letter::new(gen, inverse));
        }
        Ok(Word::from_letters(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the crate and its tests; panics on bad syntax.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

//! Alphabets, words and word sets.
//!
//! Letters are dense indices into an [`Alphabet`]'s symbol table, so word
//! equality and ordering are index-wise. Words do not carry a pointer to
//! their alphabet; operations that need one take it explicitly and check
//! that every letter is in range.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{invalid, Result};

/// Index of a symbol in an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Letter {
    fn from(i: usize) -> Self {
        Letter(u16::try_from(i).expect("letter index exceeds u16"))
    }
}

/// A finite sequence of letters. The empty word is representable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Word(indices.into_iter().map(Letter::from).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// `true` iff `self` occurs contiguously in `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        contains_factor(&other.0, &self.0)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }

    pub fn position(&self, letter: Letter) -> Option<usize> {
        self.0.iter().position(|&l| l == letter)
    }

    /// Replaces the letter at `pos` with `with`.
    pub fn splice(&self, pos: usize, with: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + with.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&with.0);
        v.extend_from_slice(&self.0[pos + 1..]);
        Word(v)
    }

    /// All distinct factors of the given length.
    pub fn factors(&self, len: usize) -> impl Iterator<Item = Word> + '_ {
        let count = if len == 0 || len > self.len() {
            0
        } else {
            self.len() - len + 1
        };
        (0..count).map(move |i| Word(self.0[i..i + len].to_vec()))
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub(crate) fn contains_factor(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

/// A finite ordered set of symbol names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(symbols: I) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return invalid("alphabet must contain at least one symbol");
        }
        if symbols.len() > u16::MAX as usize {
            return invalid("alphabet too large");
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return invalid("empty symbol name");
            }
            if index.insert(s.clone(), Letter::from(i)).is_some() {
                return invalid(format!("duplicate symbol {s:?}"));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Alphabet::new(chars.chars().map(String::from))
    }

    /// Symbols `"0"`, `"1"`, ... `"n-1"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Alphabet::new((0..n).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.size()).map(Letter::from)
    }

    /// `true` when every symbol is a single character.
    pub fn is_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|l| l.index() < self.size())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if self.contains_word(w) {
            Ok(())
        } else {
            invalid(format!(
                "word has a letter outside the alphabet of size {}",
                self.size()
            ))
        }
    }

    /// Parses a word. Single-character alphabets read one symbol per
    /// character; otherwise symbols are comma separated.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let lookup = |name: &str| {
            self.letter(name)
                .ok_or_else(|| crate::Error::Invalid(format!("unknown symbol {name:?} in {s:?}")))
        };
        if self.is_single_char() && !s.contains(',') {
            let mut buf = [0u8; 4];
            s.chars().map(|c| lookup(c.encode_utf8(&mut buf))).collect()
        } else {
            s.split(',').map(|p| lookup(p.trim())).collect()
        }
    }

    pub fn render(&self, w: &Word) -> String {
        let names = w.letters().iter().map(|&l| self.symbol(l));
        if self.is_single_char() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(",")
        }
    }

    /// Checked subword test: both words must be over this alphabet.
    pub fn is_subword(&self, v: &Word, u: &Word) -> Result<bool> {
        self.check_word(v)?;
        self.check_word(u)?;
        Ok(is_subword(v, u))
    }
}

/// `true` iff `v` occurs contiguously in `u`. The empty word is a subword of
/// every word.
pub fn is_subword(v: &Word, u: &Word) -> bool {
    v.is_factor_of(u)
}

/// All rotations of a nonempty word.
pub fn cyclic_conjugates(u: &Word) -> Result<WordSet> {
    if u.is_empty() {
        return invalid("cyclic conjugates of the empty word");
    }
    let n = u.len();
    Ok((0..n)
        .map(|r| {
            u.letters()[r..]
                .iter()
                .chain(&u.letters()[..r])
                .copied()
                .collect::<Word>()
        })
        .collect())
}

/// A deduplicated, canonically ordered set of words.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WordSet(BTreeSet<Word>);

impl WordSet {
    pub fn new() -> Self {
        WordSet(BTreeSet::new())
    }

    pub fn insert(&mut self, w: Word) -> bool {
        self.0.insert(w)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.0.iter()
    }

    pub fn extend<I: IntoIterator<Item = Word>>(&mut self, iter: I) {
        self.0.extend(iter)
    }

    pub fn max_len(&self) -> usize {
        self.0.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.0.iter().map(Word::len).min().unwrap_or(0)
    }

    pub fn render(&self, alphabet: &Alphabet) -> Vec<String> {
        self.0.iter().map(|w| alphabet.render(w)).collect()
    }

    /// Words of `self` that are not in `other`, in canonical order.
    pub fn difference<'a>(&'a self, other: &'a WordSet) -> impl Iterator<Item = &'a Word> {
        self.0.difference(&other.0)
    }
}

impl FromIterator<Word> for WordSet {
    fn from_iter<T: IntoIterator<Item = Word>>(iter: T) -> Self {
        WordSet(iter.into_iter().collect())
    }
}

impl IntoIterator for WordSet {
    type Item = Word;
    type IntoIter = std::collections::btree_set::IntoIter<Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a WordSet {
    type Item = &'a Word;
    type IntoIter = std::collections::btree_set::Iter<'a, Word>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Renders a word with its alphabet.
pub struct Display<'a>(pub &'a Alphabet, pub &'a Word);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.render(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    #[test]
    fn subword_examples() {
        let a = ab();
        let w = |s| a.parse_word(s).unwrap();
        assert!(a.is_subword(&w("aaa"), &w("baaab")).unwrap());
        assert!(a.is_subword(&w(""), &w("ab")).unwrap());
        assert!(!a.is_subword(&w("aba"), &w("aabb")).unwrap());
        assert!(!a.is_subword(&w("abab"), &w("aba")).unwrap());
    }

    #[test]
    fn subword_rejects_foreign_letters() {
        let a = ab();
        let foreign = Word::from_indices([0, 5]);
        assert!(a.is_subword(&foreign, &Word::from_indices([0])).is_err());
    }

    #[test]
    fn conjugates() {
        let a = ab();
        let w = |s| a.parse_word(s).unwrap();
        let c = cyclic_conjugates(&w("ab")).unwrap();
        assert_eq!(c, [w("ab"), w("ba")].into_iter().collect());
        assert_eq!(cyclic_conjugates(&w("aa")).unwrap().len(), 1);
        let digits = Alphabet::numbered(4).unwrap();
        let u = digits.parse_word("21312001").unwrap();
        assert_eq!(cyclic_conjugates(&u).unwrap().len(), 8);
        assert!(cyclic_conjugates(&Word::empty()).is_err());
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a", ""]).is_err());
    }

    #[test]
    fn render_single_and_multi_char() {
        let a = ab();
        assert_eq!(a.render(&a.parse_word("abba").unwrap()), "abba");
        let m = Alphabet::new(["x1", "y"]).unwrap();
        let w = m.parse_word("x1,y,y").unwrap();
        assert_eq!(w, Word::from_indices([0, 1, 1]));
        assert_eq!(m.render(&w), "x1,y,y");
        assert!(a.parse_word("abc").is_err());
    }

    #[test]
    fn splice_replaces_one_letter() {
        let a = ab();
        let w = a.parse_word("aba").unwrap();
        let r = w.splice(1, &a.parse_word("bab").unwrap());
        assert_eq!(a.render(&r), "ababa");
    }
}

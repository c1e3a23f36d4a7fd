//! Shifts of finite type: construction from matrices and forbidden words,
//! exact finite-window languages and counts, periodic words and gap shifts.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::matrix::{BoolMatrix, ZeroOneMatrix};
use crate::words::{contains_factor, Alphabet, Letter, Word, WordSet};

/// How an [`Sft`]'s alphabet relates to the alphabet the caller started
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    DirectMatrix,
    /// Letter `i` of the SFT stands for `blocks[i]`, a word of length
    /// `block_len` over `base`.
    Recoded {
        base: Alphabet,
        blocks: Vec<Word>,
        block_len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    alphabet: Alphabet,
    transition: ZeroOneMatrix,
    provenance: Provenance,
}

/// Exact legal-word counts `p(1), ..., p(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    counts: Vec<BigUint>,
}

impl ComplexityProfile {
    pub fn new(counts: Vec<BigUint>) -> Self {
        ComplexityProfile { counts }
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        ComplexityProfile {
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `p(n)`, 1-based.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.counts.get(i))
    }

    pub fn horizon(&self) -> usize {
        self.counts.len()
    }

    /// First `(m, n)` violating `p(m+n) <= p(m) p(n)`, if any.
    pub fn submultiplicativity_violation(&self) -> Option<(usize, usize)> {
        let n = self.horizon();
        for a in 1..=n {
            for b in 1..=n - a {
                if self.get(a + b)? > &(self.get(a)? * self.get(b)?) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn to_u64_lossy(&self) -> Vec<Option<u64>> {
        self.counts.iter().map(|c| c.to_u64()).collect()
    }
}

impl Sft {
    /// The SFT `X_A`: sequences whose consecutive letters are 1-entries.
    pub fn from_matrix(a: ZeroOneMatrix, alphabet: Alphabet) -> Result<Self> {
        if a.order() != alphabet.size() {
            return invalid(format!(
                "alphabet has {} symbols but the matrix has order {}",
                alphabet.size(),
                a.order()
            ));
        }
        Ok(Sft {
            alphabet,
            transition: a,
            provenance: Provenance::DirectMatrix,
        })
    }

    /// SFT avoiding `forbidden`, recoded onto legal `(L-1)`-blocks where `L`
    /// is the longest forbidden word.
    ///
    /// Single-letter forbidden words delete that letter from the alphabet.
    /// Blocks that cannot occur in a bi-infinite sequence are pruned so the
    /// transition matrix is essential.
    pub fn from_forbidden(alphabet: &Alphabet, forbidden: &WordSet) -> Result<Self> {
        if forbidden.is_empty() {
            return invalid("forbidden word set is empty");
        }
        for w in forbidden {
            alphabet.check_word(w)?;
            if w.is_empty() {
                return invalid("the empty word cannot be forbidden");
            }
        }
        let kept: Vec<Letter> = alphabet
            .letters()
            .filter(|&l| !forbidden.contains(&Word::single(l)))
            .collect();
        if kept.is_empty() {
            return invalid("every letter is forbidden; the shift is empty");
        }
        let rules: Vec<&Word> = forbidden
            .iter()
            .filter(|w| w.len() >= 2 && w.letters().iter().all(|l| kept.contains(l)))
            .collect();
        let max_len = rules.iter().map(|w| w.len()).max().unwrap_or(2);
        let block_len = max_len - 1;
        let avoids = |w: &[Letter]| rules.iter().all(|f| !contains_factor(w, f.letters()));

        // legal blocks, canonical (lexicographic) order
        let mut blocks: Vec<Vec<Letter>> = vec![Vec::new()];
        for _ in 0..block_len {
            blocks = blocks
                .into_iter()
                .flat_map(|b| {
                    kept.iter().map(move |&l| {
                        let mut nb = b.clone();
                        nb.push(l);
                        nb
                    })
                })
                .filter(|b| avoids(b))
                .collect();
        }
        let linked = |x: &[Letter], y: &[Letter]| {
            if x[1..] != y[..block_len - 1] {
                return false;
            }
            let mut joined = x.to_vec();
            joined.push(y[block_len - 1]);
            avoids(&joined)
        };

        let mut alive = vec![true; blocks.len()];
        loop {
            let mut changed = false;
            for i in 0..blocks.len() {
                if !alive[i] {
                    continue;
                }
                let has_out = (0..blocks.len()).any(|j| alive[j] && linked(&blocks[i], &blocks[j]));
                let has_in = (0..blocks.len()).any(|j| alive[j] && linked(&blocks[j], &blocks[i]));
                if !has_out || !has_in {
                    alive[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let blocks: Vec<Word> = blocks
            .into_iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(b, _)| Word::new(b))
            .collect();
        if blocks.is_empty() {
            return invalid("no bi-infinite sequence avoids the forbidden words");
        }
        let k = blocks.len();
        let mut m = BoolMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, linked(blocks[i].letters(), blocks[j].letters()));
            }
        }
        // block names must not contain the word separator
        let names: Vec<String> = blocks
            .iter()
            .map(|b| {
                let parts: Vec<&str> = b.letters().iter().map(|&l| alphabet.symbol(l)).collect();
                parts.join(if alphabet.is_single_char() { "" } else { "|" })
            })
            .collect();
        Ok(Sft {
            alphabet: Alphabet::new(names)?,
            transition: ZeroOneMatrix::new(m)?,
            provenance: Provenance::Recoded {
                base: alphabet.clone(),
                blocks,
                block_len,
            },
        })
    }

    /// Shift over `{0,1}` whose gaps between consecutive 1s lie in
    /// `[min_gap, max_gap]`, given by forbidding `1 0^j 1` for
    /// `j <= min_gap - 2` and `0^max_gap`.
    pub fn gap_shift(min_gap: usize, max_gap: usize) -> Result<Self> {
        if min_gap < 2 || max_gap < min_gap {
            return invalid("gap shift needs 2 <= min gap <= max gap");
        }
        let base = Alphabet::from_chars("01")?;
        let (zero, one) = (Letter(0), Letter(1));
        let mut forbidden = WordSet::new();
        for j in 0..=min_gap - 2 {
            let mut w = vec![one];
            w.extend(std::iter::repeat(zero).take(j));
            w.push(one);
            forbidden.insert(Word::new(w));
        }
        forbidden.insert(Word::new(vec![zero; max_gap]));
        Sft::from_forbidden(&base, &forbidden)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn transition(&self) -> &ZeroOneMatrix {
        &self.transition
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Alphabet of words returned by [`Self::original_language`].
    pub fn base_alphabet(&self) -> &Alphabet {
        match &self.provenance {
            Provenance::DirectMatrix => &self.alphabet,
            Provenance::Recoded { base, .. } => base,
        }
    }

    fn allowed(&self, a: Letter, b: Letter) -> bool {
        self.transition.get(a.index(), b.index())
    }

    /// Legal words of length `n` (over the SFT alphabet), by path extension.
    pub fn language(&self, n: usize) -> WordSet {
        if n == 0 {
            return WordSet::new();
        }
        let mut level: Vec<Vec<Letter>> = self.alphabet.letters().map(|l| vec![l]).collect();
        for _ in 1..n {
            level = level
                .into_iter()
                .flat_map(|w| {
                    let last = *w.last().expect("nonempty");
                    self.alphabet
                        .letters()
                        .filter(move |&b| self.allowed(last, b))
                        .map(move |b| {
                            let mut nw = w.clone();
                            nw.push(b);
                            nw
                        })
                })
                .collect();
        }
        level.into_iter().map(Word::new).collect()
    }

    /// `|language(n)|` as the entry sum of `A^(n-1)`.
    pub fn count_words(&self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::zero();
        }
        self.transition.power_entry_sum(n - 1)
    }

    pub fn complexity(&self, max_len: usize) -> ComplexityProfile {
        ComplexityProfile::new((1..=max_len).map(|n| self.count_words(n)).collect())
    }

    /// Words `u` of length `period` such that `u^infinity` is legal.
    pub fn periodic_words(&self, period: usize) -> WordSet {
        self.language(period)
            .into_iter()
            .filter(|w| {
                self.allowed(w.last().expect("nonempty"), w.first().expect("nonempty"))
            })
            .collect()
    }

    /// Decodes a block word back to the base alphabet.
    pub fn decode(&self, w: &Word) -> Word {
        match &self.provenance {
            Provenance::DirectMatrix => w.clone(),
            Provenance::Recoded { blocks, .. } => {
                let mut out: Vec<Letter> = Vec::new();
                for (i, l) in w.letters().iter().enumerate() {
                    let b = blocks[l.index()].letters();
                    if i == 0 {
                        out.extend_from_slice(b);
                    } else {
                        out.push(*b.last().expect("nonempty block"));
                    }
                }
                Word::new(out)
            }
        }
    }

    /// Legal words of length `n` over the base alphabet.
    pub fn original_language(&self, n: usize) -> WordSet {
        match &self.provenance {
            Provenance::DirectMatrix => self.language(n),
            Provenance::Recoded {
                blocks, block_len, ..
            } => {
                if n == 0 {
                    WordSet::new()
                } else if n >= *block_len {
                    self.language(n + 1 - block_len)
                        .iter()
                        .map(|w| self.decode(w))
                        .collect()
                } else {
                    blocks.iter().map(|b| b.slice(0, n)).collect()
                }
            }
        }
    }

    /// Complexity profile over the base alphabet.
    pub fn original_complexity(&self, max_len: usize) -> ComplexityProfile {
        let counts = (1..=max_len)
            .map(|n| match &self.provenance {
                Provenance::Recoded { block_len, .. } if n >= *block_len => {
                    self.count_words(n + 1 - block_len)
                }
                Provenance::Recoded { .. } => BigUint::from(self.original_language(n).len()),
                Provenance::DirectMatrix => self.count_words(n),
            })
            .collect();
        ComplexityProfile::new(counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn golden() -> Sft {
        Sft::from_matrix(
            ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap(),
            Alphabet::from_chars("01").unwrap(),
        )
        .unwrap()
    }

    fn strs(a: &Alphabet, ws: &WordSet) -> Vec<String> {
        ws.render(a)
    }

    #[test]
    fn matrix_sft_examples() {
        let m = fixtures::mickey_sft();
        assert_eq!(m.language(2).len(), 7);
        let bad = Sft::from_matrix(
            ZeroOneMatrix::from_rows(&[[1u8]]).unwrap(),
            Alphabet::from_chars("ab").unwrap(),
        );
        assert!(bad.is_err());
        let full = Sft::from_matrix(
            ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap(),
            Alphabet::from_chars("ab").unwrap(),
        )
        .unwrap();
        assert_eq!(full.language(5).len(), 32);
    }

    #[test]
    fn golden_language_and_counts() {
        let g = golden();
        assert_eq!(
            strs(g.alphabet(), &g.language(3)),
            vec!["000", "001", "010", "100", "101"]
        );
        assert_eq!(g.count_words(3), BigUint::from(5u32));
        assert_eq!(g.count_words(1), BigUint::from(2u32));
        assert_eq!(g.count_words(0), BigUint::zero());
        let full = Sft::from_matrix(
            ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap(),
            Alphabet::from_chars("ab").unwrap(),
        )
        .unwrap();
        assert_eq!(full.count_words(10), BigUint::from(1024u32));
    }

    #[test]
    fn periodic_words_examples() {
        let m = fixtures::mickey_sft();
        let p8 = m.periodic_words(8);
        assert!(p8.contains(&m.alphabet().parse_word("21312001").unwrap()));
        let g = golden();
        assert_eq!(strs(g.alphabet(), &g.periodic_words(1)), vec!["0"]);
        let full = Sft::from_matrix(
            ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap(),
            Alphabet::from_chars("ab").unwrap(),
        )
        .unwrap();
        assert_eq!(full.periodic_words(1).len(), 2);
    }

    #[test]
    fn recode_length_two_is_passthrough() {
        let a = Alphabet::from_chars("01").unwrap();
        let f: WordSet = [a.parse_word("11").unwrap()].into_iter().collect();
        let x = Sft::from_forbidden(&a, &f).unwrap();
        assert_eq!(x.transition().rows(), vec![vec![1, 1], vec![1, 0]]);

        let ab = Alphabet::from_chars("ab").unwrap();
        let f: WordSet = [ab.parse_word("ab").unwrap()].into_iter().collect();
        let x = Sft::from_forbidden(&ab, &f).unwrap();
        assert_eq!(x.transition().rows(), vec![vec![1, 0], vec![1, 1]]);
        assert!(matches!(x.provenance(), Provenance::Recoded { block_len: 1, .. }));
    }

    #[test]
    fn recode_three_blocks() {
        let a = Alphabet::from_chars("01").unwrap();
        let f: WordSet = ["11", "000"].iter().map(|s| a.parse_word(s).unwrap()).collect();
        let x = Sft::from_forbidden(&a, &f).unwrap();
        assert_eq!(x.alphabet().symbols(), &["00", "01", "10"]);
        // 00 -> 01 only; 01 -> 10; 10 -> 00, 01
        assert_eq!(
            x.transition().rows(),
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(
            strs(&a, &x.original_language(3)),
            vec!["001", "010", "100", "101"]
        );
        assert_eq!(strs(&a, &x.original_language(1)), vec!["0", "1"]);
    }

    #[test]
    fn recode_single_letter_forbidden_shrinks_alphabet() {
        let a = Alphabet::from_chars("abc").unwrap();
        let f: WordSet = ["c", "aa"].iter().map(|s| a.parse_word(s).unwrap()).collect();
        let x = Sft::from_forbidden(&a, &f).unwrap();
        assert_eq!(x.alphabet().symbols(), &["a", "b"]);
        let all: WordSet = ["a", "b", "c"].iter().map(|s| a.parse_word(s).unwrap()).collect();
        assert!(Sft::from_forbidden(&a, &all).is_err());
        assert!(Sft::from_forbidden(&a, &WordSet::new()).is_err());
    }

    #[test]
    fn recode_prunes_dead_ends() {
        // forbidding ab and bb: b can never be followed
        let a = Alphabet::from_chars("ab").unwrap();
        let f: WordSet = ["ab", "bb"].iter().map(|s| a.parse_word(s).unwrap()).collect();
        let x = Sft::from_forbidden(&a, &f).unwrap();
        assert_eq!(x.alphabet().symbols(), &["a"]);
    }

    #[test]
    fn gap_shift_examples() {
        let x = Sft::gap_shift(2, 3).unwrap();
        let b = x.base_alphabet().clone();
        assert_eq!(
            strs(&b, &x.original_language(3)),
            vec!["001", "010", "100", "101"]
        );
        assert_eq!(x.original_complexity(3).get(3), Some(&BigUint::from(4u32)));
        let p = Sft::gap_shift(2, 2).unwrap();
        assert_eq!(p.original_complexity(4).get(4), Some(&BigUint::from(2u32)));
        let x = Sft::gap_shift(4, 6).unwrap();
        let lang = x.original_language(5);
        assert!(lang.contains(&b.parse_word("10001").unwrap()));
        assert!(!lang.contains(&b.parse_word("1001").unwrap()));
        assert!(Sft::gap_shift(1, 3).is_err());
        assert!(Sft::gap_shift(3, 2).is_err());
    }

    #[test]
    fn profile_submultiplicative() {
        let p = golden().complexity(12);
        assert_eq!(p.submultiplicativity_violation(), None);
        let bad = ComplexityProfile::from_u64(&[2, 5]);
        assert_eq!(bad.submultiplicativity_violation(), Some((1, 1)));
    }
}

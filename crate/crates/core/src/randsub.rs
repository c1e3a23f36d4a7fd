//! Random substitutions: realizations, primitivity and exact finite-window
//! languages.
//!
//! # Language computation
//!
//! For a letter `a` let `W_k(a)` be the set of words of length `<= N`
//! occurring in realizations of `theta^k(a)`. A window of length `<= N` in a
//! realization of `theta(u)` lies inside the image of a factor of `u` of
//! length at most `V = min(N, ceil((N-1)/l_min) + 1)`, where `l_min` is the
//! shortest image word, so `W_{k+1}(a)` is a function of `W_k(a)` alone.
//! The family `(W_k(a))_a` therefore lives in a finite space and is
//! eventually periodic. [`RandomSubstitution::language_upto`] iterates
//! until the first repeated family and returns the union of everything
//! seen, which is the union over all `k`.
//!
//! Each `W_k(a)` is stored by its maximal elements (words that are not a
//! proper factor of another member); this determines the factor-closed set
//! uniquely, so comparing maximal sets compares the families.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{invalid, precondition, Error, Result};
use crate::matrix::BoolMatrix;
use crate::sft::ComplexityProfile;
use crate::words::{contains_factor, Alphabet, Letter, Word, WordSet};

/// Size caps that turn combinatorial explosion into an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest word set any single step may build.
    pub max_set_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_set_size: 1 << 24,
        }
    }
}

impl Limits {
    pub fn new(max_set_size: usize) -> Self {
        Limits { max_set_size }
    }

    fn check(&self, size: usize, what: &str) -> Result<()> {
        if size > self.max_set_size {
            Err(Error::ResourceCap {
                what: what.to_string(),
                limit: self.max_set_size,
            })
        } else {
            Ok(())
        }
    }
}

/// A map from letters to finite nonempty sets of nonempty words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSubstitution {
    alphabet: Alphabet,
    images: Vec<WordSet>,
}

/// A substitution with exactly one image per letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicSubstitution {
    alphabet: Alphabet,
    images: Vec<Word>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Least `k` such that every letter occurs in some realization of
    /// `theta^k` of every letter.
    pub witness_k: Option<usize>,
}

/// Detected shape of the window-set iteration: family `k = preperiod +
/// period` equals family `k = preperiod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationCertificate {
    pub preperiod: usize,
    pub period: usize,
}

/// Exact legal words of every length up to `max_length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageTable {
    max_length: usize,
    levels: Vec<WordSet>,
    certificate: SaturationCertificate,
}

impl LanguageTable {
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Legal words of length `n` (`1 <= n <= max_length`).
    pub fn level(&self, n: usize) -> &WordSet {
        &self.levels[n - 1]
    }

    pub fn levels(&self) -> &[WordSet] {
        &self.levels
    }

    pub fn certificate(&self) -> SaturationCertificate {
        self.certificate
    }

    pub fn contains(&self, w: &Word) -> bool {
        !w.is_empty() && w.len() <= self.max_length && self.level(w.len()).contains(w)
    }

    pub fn complexity(&self) -> ComplexityProfile {
        ComplexityProfile::new(self.levels.iter().map(|l| l.len().into()).collect())
    }

    /// First member with a factor missing from the table, if any.
    pub fn factorial_violation(&self) -> Option<Word> {
        for level in &self.levels {
            for w in level {
                for len in 1..w.len() {
                    if w.factors(len).any(|f| !self.level(len).contains(&f)) {
                        return Some(w.clone());
                    }
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Legality {
    pub legal: bool,
    /// Some `(a, k)` with the word occurring in a realization of
    /// `theta^k(a)`, when one was found by bounded expansion.
    pub witness: Option<(Letter, usize)>,
}

const WITNESS_MAX_DEPTH: usize = 16;
const WITNESS_SET_CAP: usize = 1 << 16;

impl RandomSubstitution {
    pub fn new(alphabet: Alphabet, images: Vec<WordSet>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return invalid(format!(
                "{} image sets for an alphabet of {} letters",
                images.len(),
                alphabet.size()
            ));
        }
        for (i, set) in images.iter().enumerate() {
            let name = &alphabet.symbols()[i];
            if set.is_empty() {
                return invalid(format!("image set of {name:?} is empty"));
            }
            for w in set {
                if w.is_empty() {
                    return invalid(format!("image set of {name:?} contains the empty word"));
                }
                alphabet.check_word(w)?;
            }
        }
        Ok(RandomSubstitution { alphabet, images })
    }

    /// Builds from rendered image words, one list per letter in alphabet
    /// order.
    pub fn parse<S: AsRef<str>>(alphabet: Alphabet, images: &[&[S]]) -> Result<Self> {
        let sets = images
            .iter()
            .map(|list| {
                list.iter()
                    .map(|s| alphabet.parse_word(s.as_ref()))
                    .collect::<Result<WordSet>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, sets)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn images(&self, a: Letter) -> &WordSet {
        &self.images[a.index()]
    }

    pub fn image_sets(&self) -> &[WordSet] {
        &self.images
    }

    pub fn is_deterministic(&self) -> bool {
        self.images.iter().all(|s| s.len() == 1)
    }

    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(WordSet::min_len).min().unwrap_or(1)
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(WordSet::max_len).max().unwrap_or(1)
    }

    /// All realizations of `theta(u)`: one image word per letter,
    /// concatenated.
    pub fn apply_random(&self, u: &Word, limits: &Limits) -> Result<WordSet> {
        if u.is_empty() {
            return invalid("cannot substitute the empty word");
        }
        self.alphabet.check_word(u)?;
        let mut acc: HashSet<Vec<Letter>> = HashSet::from([Vec::new()]);
        for &l in u.letters() {
            let imgs = &self.images[l.index()];
            limits.check(acc.len().saturating_mul(imgs.len()), "realizations of theta(u)")?;
            let mut next = HashSet::with_capacity(acc.len() * imgs.len());
            for prefix in &acc {
                for img in imgs {
                    let mut w = prefix.clone();
                    w.extend_from_slice(img.letters());
                    next.insert(w);
                }
            }
            acc = next;
        }
        Ok(acc.into_iter().map(Word::new).collect())
    }

    /// All realizations of `theta^k(a)`; `k = 0` gives `{a}`.
    pub fn realizations_power(&self, a: Letter, k: usize, limits: &Limits) -> Result<WordSet> {
        if a.index() >= self.alphabet.size() {
            return invalid("letter out of range");
        }
        let mut current: WordSet = [Word::single(a)].into_iter().collect();
        for _ in 0..k {
            let mut next = WordSet::new();
            for w in &current {
                next.extend(self.apply_random(w, limits)?);
                limits.check(next.len(), "realizations of theta^k(a)")?;
            }
            current = next;
        }
        Ok(current)
    }

    /// `B[i][j] = 1` iff letter `i` occurs in some realization of
    /// `theta(j)`.
    pub fn letter_incidence_matrix(&self) -> BoolMatrix {
        let n = self.alphabet.size();
        let mut m = BoolMatrix::zeros(n);
        for (j, set) in self.images.iter().enumerate() {
            for w in set {
                for l in w.letters() {
                    m.set(l.index(), j, true);
                }
            }
        }
        m
    }

    pub fn is_primitive(&self) -> Primitivity {
        let c = self.letter_incidence_matrix().classify();
        Primitivity {
            primitive: c.primitive,
            witness_k: c.witness_power,
        }
    }

    /// For primitive substitutions, the subshift is empty iff every image
    /// word has length 1.
    pub fn is_empty_subshift(&self) -> Result<bool> {
        if !self.is_primitive().primitive {
            return precondition("the emptiness criterion only applies to primitive substitutions");
        }
        Ok(self.images.iter().all(|s| s.iter().all(|w| w.len() == 1)))
    }

    /// `true` iff every realization of `theta^m(a)` has length at least 2,
    /// `m` the alphabet size. A length-1 realization of `theta^m(a)` is a
    /// chain `a = b_0, ..., b_m` with `b_{j+1}` a one-letter image of `b_j`.
    pub fn is_min_exponential_growth(&self) -> bool {
        let n = self.alphabet.size();
        let mut alive: Vec<bool> = vec![true; n];
        for _ in 0..n {
            let mut next = vec![false; n];
            for (b, set) in self.images.iter().enumerate() {
                if !alive[b] {
                    continue;
                }
                for w in set.iter().filter(|w| w.len() == 1) {
                    next[w.letters()[0].index()] = true;
                }
            }
            alive = next;
        }
        !alive.into_iter().any(|x| x)
    }

    /// Whether `w` is a realization of `theta^k(a)`, by dynamic
    /// programming over splittings of `w`.
    pub fn is_realization(&self, a: Letter, k: usize, w: &Word) -> bool {
        let mut memo = HashMap::new();
        self.realizes(a, k, w.letters(), 0, w.len(), &mut memo)
    }

    fn realizes(
        &self,
        a: Letter,
        k: usize,
        w: &[Letter],
        i: usize,
        j: usize,
        memo: &mut HashMap<(Letter, usize, usize, usize), bool>,
    ) -> bool {
        if k == 0 {
            return j == i + 1 && w[i] == a;
        }
        if let Some(&r) = memo.get(&(a, k, i, j)) {
            return r;
        }
        let mut result = false;
        'images: for img in &self.images[a.index()] {
            let parts = img.letters();
            if parts.len() > j - i {
                continue;
            }
            // reachable[p]: w[i..i+p] splits over the first m image letters
            let mut reachable: BTreeSet<usize> = BTreeSet::from([i]);
            for (m, &b) in parts.iter().enumerate() {
                let remaining = parts.len() - m - 1;
                let mut next = BTreeSet::new();
                for &s in &reachable {
                    for e in s + 1..=j - remaining {
                        if self.realizes(b, k - 1, w, s, e, memo) {
                            next.insert(e);
                        }
                    }
                }
                if next.is_empty() {
                    continue 'images;
                }
                reachable = next;
            }
            if reachable.contains(&j) {
                result = true;
                break;
            }
        }
        memo.insert((a, k, i, j), result);
        result
    }

    /// The deterministic substitution choosing `selector[a]` as the
    /// realization of `theta^k(a)`, and whether it is primitive.
    pub fn deterministic_realization(
        &self,
        k: usize,
        selector: &[Word],
    ) -> Result<(DeterministicSubstitution, bool)> {
        if selector.len() != self.alphabet.size() {
            return invalid("selector must choose one word per letter");
        }
        for (a, w) in self.alphabet.letters().zip(selector) {
            if !self.is_realization(a, k, w) {
                return invalid(format!(
                    "{} is not a realization of theta^{k}({})",
                    self.alphabet.render(w),
                    self.alphabet.symbol(a)
                ));
            }
        }
        let phi = DeterministicSubstitution::new(self.alphabet.clone(), selector.to_vec())?;
        let primitive = phi.is_primitive();
        Ok((phi, primitive))
    }

    /// Exact legal language up to length `max_len`.
    pub fn language_upto(&self, max_len: usize, limits: &Limits) -> Result<LanguageTable> {
        if max_len == 0 {
            return invalid("language horizon must be at least 1");
        }
        let mut engine = WindowEngine::new(self, max_len);
        let mut family: Vec<BTreeSet<Word>> = self
            .alphabet
            .letters()
            .map(|a| BTreeSet::from([Word::single(a)]))
            .collect();
        let mut seen: HashMap<Vec<BTreeSet<Word>>, usize> = HashMap::new();
        let mut union: HashSet<Word> = HashSet::new();
        let mut k = 0usize;
        let certificate = loop {
            if let Some(&first) = seen.get(&family) {
                break SaturationCertificate {
                    preperiod: first,
                    period: k - first,
                };
            }
            for set in &family {
                union.extend(set.iter().cloned());
            }
            limits.check(union.len(), "language window union")?;
            let mut next = Vec::with_capacity(family.len());
            for set in &family {
                next.push(engine.step(set, limits)?);
            }
            seen.insert(std::mem::replace(&mut family, next), k);
            k += 1;
        };
        Ok(LanguageTable {
            max_length: max_len,
            levels: factor_levels(union, max_len),
            certificate,
        })
    }

    /// Legal-word complexity `p(1..=max_len)`.
    pub fn complexity(&self, max_len: usize, limits: &Limits) -> Result<ComplexityProfile> {
        Ok(self.language_upto(max_len, limits)?.complexity())
    }

    /// Legality of `u`, with a witness `(a, k)` when bounded expansion finds
    /// one.
    pub fn is_legal(&self, u: &Word, limits: &Limits) -> Result<Legality> {
        if u.is_empty() {
            return invalid("legality of the empty word");
        }
        self.alphabet.check_word(u)?;
        let legal = self.language_upto(u.len(), limits)?.contains(u);
        let witness = if legal { self.find_witness(u) } else { None };
        Ok(Legality { legal, witness })
    }

    fn find_witness(&self, u: &Word) -> Option<(Letter, usize)> {
        let cap = Limits::new(WITNESS_SET_CAP);
        let mut powers: Vec<Option<WordSet>> = self
            .alphabet
            .letters()
            .map(|a| Some([Word::single(a)].into_iter().collect()))
            .collect();
        for k in 0..=WITNESS_MAX_DEPTH {
            for (a, slot) in self.alphabet.letters().zip(powers.iter_mut()) {
                let Some(set) = slot else { continue };
                if set.iter().any(|w| contains_factor(w.letters(), u.letters())) {
                    return Some((a, k));
                }
                let mut next = WordSet::new();
                let mut ok = true;
                for w in set.iter() {
                    match self.apply_random(w, &cap) {
                        Ok(r) => next.extend(r),
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                    if next.len() > WITNESS_SET_CAP {
                        ok = false;
                        break;
                    }
                }
                *slot = ok.then_some(next);
            }
            if powers.iter().all(Option::is_none) {
                break;
            }
        }
        None
    }
}

/// Lengths 1..=n from a set of words, closing under factors.
fn factor_levels(words: HashSet<Word>, n: usize) -> Vec<WordSet> {
    let mut by_len: Vec<HashSet<Vec<Letter>>> = vec![HashSet::new(); n + 1];
    for w in words {
        let l = w.len();
        if l >= 1 && l <= n {
            by_len[l].insert(w.into_letters());
        }
    }
    for l in (2..=n).rev() {
        let shorter: Vec<Vec<Letter>> = by_len[l]
            .iter()
            .flat_map(|w| [w[..l - 1].to_vec(), w[1..].to_vec()])
            .collect();
        by_len[l - 1].extend(shorter);
    }
    by_len
        .into_iter()
        .skip(1)
        .map(|s| s.into_iter().map(Word::new).collect())
        .collect()
}

/// One step of the window-set iteration.
///
/// A sweep over a preimage `v` tracks states `(last <= N-1 letters, whole)`
/// where `whole` says the realization so far is shorter than `N`. The
/// successor states of a state under a letter, and the length-`N` windows
/// that step produces, depend only on the pair, so transitions are interned
/// once and shared by every sweep, letter and iteration. Sources are swept
/// in sorted order so common prefixes reuse their state sets.
struct WindowEngine<'a> {
    sub: &'a RandomSubstitution,
    max_len: usize,
    /// Preimage length that covers every window.
    span: usize,
    /// Smallest letter with the same image set.
    class: Vec<Letter>,
    states: Vec<(Vec<Letter>, bool)>,
    state_ids: HashMap<(Vec<Letter>, bool), u32>,
    windows: Vec<Vec<Letter>>,
    window_ids: HashMap<Vec<Letter>, u32>,
    transitions: HashMap<(u32, Letter), Transition>,
}

struct Transition {
    next: Vec<u32>,
    windows: Vec<u32>,
}

fn intern<K: std::hash::Hash + Eq + Clone>(table: &mut Vec<K>, ids: &mut HashMap<K, u32>, key: K) -> u32 {
    if let Some(&id) = ids.get(&key) {
        return id;
    }
    let id = table.len() as u32;
    table.push(key.clone());
    ids.insert(key, id);
    id
}

impl<'a> WindowEngine<'a> {
    fn new(sub: &'a RandomSubstitution, max_len: usize) -> Self {
        let lmin = sub.min_image_len().max(1);
        let span = ((max_len - 1).div_ceil(lmin) + 1).min(max_len);
        let class = sub
            .alphabet
            .letters()
            .map(|a| {
                sub.alphabet
                    .letters()
                    .find(|&b| sub.images[b.index()] == sub.images[a.index()])
                    .expect("a itself matches")
            })
            .collect();
        let mut engine = WindowEngine {
            sub,
            max_len,
            span,
            class,
            states: Vec::new(),
            state_ids: HashMap::new(),
            windows: Vec::new(),
            window_ids: HashMap::new(),
            transitions: HashMap::new(),
        };
        intern(&mut engine.states, &mut engine.state_ids, (Vec::new(), true));
        engine
    }

    fn transition(&mut self, state: u32, x: Letter) -> &Transition {
        if !self.transitions.contains_key(&(state, x)) {
            let n = self.max_len;
            let keep = n - 1;
            let (suffix, whole) = self.states[state as usize].clone();
            let mut next = Vec::new();
            let mut windows = Vec::new();
            for img in &self.sub.images[x.index()] {
                let mut t = suffix.clone();
                t.extend_from_slice(img.letters());
                if t.len() >= n {
                    for win in t.windows(n) {
                        windows.push(intern(&mut self.windows, &mut self.window_ids, win.to_vec()));
                    }
                }
                let still_whole = whole && t.len() <= keep;
                let cut = t.len().saturating_sub(keep);
                next.push(intern(&mut self.states, &mut self.state_ids, (t[cut..].to_vec(), still_whole)));
            }
            next.sort_unstable();
            next.dedup();
            windows.sort_unstable();
            windows.dedup();
            self.transitions.insert((state, x), Transition { next, windows });
        }
        &self.transitions[&(state, x)]
    }

    fn step(&mut self, maximal: &BTreeSet<Word>, limits: &Limits) -> Result<BTreeSet<Word>> {
        let mut sources: BTreeSet<Vec<Letter>> = BTreeSet::new();
        for w in maximal {
            let l = w.letters();
            let canon = |s: &[Letter]| s.iter().map(|x| self.class[x.index()]).collect::<Vec<_>>();
            if l.len() <= self.span {
                sources.insert(canon(l));
            } else {
                for win in l.windows(self.span) {
                    sources.insert(canon(win));
                }
            }
        }
        let mut emitted: HashSet<u32> = HashSet::new();
        let mut whole_states: HashSet<u32> = HashSet::new();
        let mut done: HashSet<(u32, Letter)> = HashSet::new();
        let mut stack: Vec<Vec<u32>> = vec![vec![0]];
        let mut prev: &[Letter] = &[];
        for v in &sources {
            let common = prev.iter().zip(v).take_while(|(p, q)| p == q).count();
            stack.truncate(common + 1);
            for &x in &v[common..] {
                let mut next = Vec::new();
                for s in stack.last().expect("root state").clone() {
                    let fresh = done.insert((s, x));
                    let t = self.transition(s, x);
                    next.extend_from_slice(&t.next);
                    if fresh {
                        emitted.extend(&t.windows);
                    }
                }
                next.sort_unstable();
                next.dedup();
                limits.check(next.len(), "window sweep states")?;
                stack.push(next);
            }
            whole_states.extend(stack.last().expect("nonempty").iter().copied().filter(|&s| {
                let (suffix, whole) = &self.states[s as usize];
                *whole && !suffix.is_empty()
            }));
            limits.check(emitted.len(), "window set")?;
            limits.check(self.states.len(), "interned sweep states")?;
            prev = v;
        }
        let words: HashSet<Vec<Letter>> = emitted
            .into_iter()
            .map(|id| self.windows[id as usize].clone())
            .chain(whole_states.into_iter().map(|id| self.states[id as usize].0.clone()))
            .collect();
        Ok(maximal_elements(words))
    }
}

fn maximal_elements(words: HashSet<Vec<Letter>>) -> BTreeSet<Word> {
    let max_len = words.iter().map(Vec::len).max().unwrap_or(0);
    let short_lengths: BTreeSet<usize> = words
        .iter()
        .map(Vec::len)
        .filter(|&l| l < max_len)
        .collect();
    let mut covered: HashSet<&[Letter]> = HashSet::new();
    for &l in &short_lengths {
        for w in words.iter().filter(|w| w.len() > l) {
            covered.extend(w.windows(l));
        }
    }
    words
        .iter()
        .filter(|w| w.len() == max_len || !covered.contains(w.as_slice()))
        .map(|w| Word::new(w.clone()))
        .collect()
}

impl DeterministicSubstitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.size() {
            return invalid("one image per letter required");
        }
        for w in &images {
            if w.is_empty() {
                return invalid("deterministic images must be nonempty");
            }
            alphabet.check_word(w)?;
        }
        Ok(DeterministicSubstitution { alphabet, images })
    }

    pub fn parse<S: AsRef<str>>(alphabet: Alphabet, images: &[S]) -> Result<Self> {
        let words = images
            .iter()
            .map(|s| alphabet.parse_word(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a.index()]
    }

    pub fn apply(&self, u: &Word) -> Word {
        u.letters()
            .iter()
            .flat_map(|l| self.images[l.index()].letters().iter().copied())
            .collect()
    }

    pub fn to_random(&self) -> RandomSubstitution {
        RandomSubstitution {
            alphabet: self.alphabet.clone(),
            images: self
                .images
                .iter()
                .map(|w| [w.clone()].into_iter().collect())
                .collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.to_random().is_primitive().primitive
    }
}

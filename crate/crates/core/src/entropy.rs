//! Finite-horizon entropy estimates and substitution constructions that
//! shift entropy by controlled amounts.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, precondition, Result};
use crate::randsub::{DeterministicSubstitution, Limits, RandomSubstitution};
use crate::sft::{ComplexityProfile, Sft};
use crate::words::{Alphabet, Letter, Word, WordSet};

/// `log p(n) / n` for `n = 1..=N`. Every entry bounds the entropy from
/// above when the language is factorial.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub horizon: usize,
    pub sequence: Vec<f64>,
    pub upper: f64,
}

/// Natural logarithm of an arbitrarily large integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("below f64 range").ln();
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().expect("64 bits").ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn entropy_estimate(p: &ComplexityProfile) -> Result<EntropyEstimate> {
    if p.horizon() == 0 {
        return invalid("empty complexity profile");
    }
    let mut sequence = Vec::with_capacity(p.horizon());
    for (i, c) in p.counts().iter().enumerate() {
        if c.is_zero() {
            return invalid(format!("complexity vanishes at length {}", i + 1));
        }
        sequence.push(ln_biguint(c) / (i + 1) as f64);
    }
    Ok(EntropyEstimate {
        horizon: p.horizon(),
        upper: *sequence.last().expect("nonempty"),
        sequence,
    })
}

/// Estimate from the exact language of `s` up to length `n`.
pub fn substitution_entropy(s: &RandomSubstitution, n: usize, limits: &Limits) -> Result<EntropyEstimate> {
    entropy_estimate(&s.complexity(n, limits)?)
}

/// Estimate from an SFT's counts over its base alphabet.
pub fn sft_entropy(x: &Sft, n: usize) -> Result<EntropyEstimate> {
    entropy_estimate(&x.original_complexity(n))
}

/// Letter-to-letter projection from an extended alphabet onto a base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneBlockCode {
    domain: Alphabet,
    codomain: Alphabet,
    letter_map: Vec<Letter>,
}

impl OneBlockCode {
    pub fn new(domain: Alphabet, codomain: Alphabet, letter_map: Vec<Letter>) -> Result<Self> {
        if letter_map.len() != domain.size() {
            return invalid("one-block code needs one image per letter");
        }
        let mut hit = vec![false; codomain.size()];
        for l in &letter_map {
            match hit.get_mut(l.index()) {
                Some(h) => *h = true,
                None => return invalid("one-block code maps outside its codomain"),
            }
        }
        if hit.contains(&false) {
            return invalid("one-block code is not surjective");
        }
        Ok(OneBlockCode {
            domain,
            codomain,
            letter_map,
        })
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn map_letter(&self, l: Letter) -> Letter {
        self.letter_map[l.index()]
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.letters().iter().map(|&l| self.map_letter(l)).collect()
    }

    /// All words mapping onto `w`.
    pub fn preimages(&self, w: &Word) -> WordSet {
        let mut acc: Vec<Vec<Letter>> = vec![Vec::new()];
        for &target in w.letters() {
            let choices: Vec<Letter> = self
                .domain
                .letters()
                .filter(|&l| self.map_letter(l) == target)
                .collect();
            acc = acc
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        acc.into_iter().map(Word::new).collect()
    }
}

/// `A × {1..m}` with letters ordered `(a,1), ..., (a,m), (b,1), ...` and
/// named by appending the index.
fn indexed_alphabet(base: &Alphabet, indices: impl Iterator<Item = usize> + Clone) -> Result<(Alphabet, Vec<Letter>)> {
    let mut names = Vec::new();
    let mut proj = Vec::new();
    for a in base.letters() {
        for i in indices.clone() {
            names.push(format!("{}{}", base.symbol(a), i));
            proj.push(a);
        }
    }
    Ok((Alphabet::new(names)?, proj))
}

/// `(a, i) -> f^{-1}(theta(a))` on `A × {1..m}`, with `f` forgetting the
/// index. Its complexity is exactly `m^n` times that of `s`.
pub fn product_extension(s: &RandomSubstitution, m: usize) -> Result<(RandomSubstitution, OneBlockCode)> {
    if m < 2 {
        return invalid("product extension needs m >= 2");
    }
    if !s.is_primitive().primitive {
        return precondition("product extension needs a primitive substitution");
    }
    let (ext, proj) = indexed_alphabet(s.alphabet(), 1..=m)?;
    let code = OneBlockCode::new(ext.clone(), s.alphabet().clone(), proj.clone())?;
    let images = proj
        .iter()
        .map(|&a| {
            let mut set = WordSet::new();
            for w in s.images(a) {
                set.extend(code.preimages(w));
            }
            set
        })
        .collect();
    Ok((RandomSubstitution::new(ext, images)?, code))
}

/// `a, ā -> {b^k}`, `b -> {b^{k-1} a, b^{k-1} ā}` over letters `a, ā, b`.
/// Its entropy lies in `(0, log(2)/k]`.
pub fn small_entropy_substitution(k: usize) -> Result<RandomSubstitution> {
    if k < 2 {
        return invalid("small-entropy substitution needs k >= 2");
    }
    let alpha = Alphabet::from_chars("aāb")?;
    let (a, abar, b) = (Letter(0), Letter(1), Letter(2));
    let bk = Word::new(vec![b; k]);
    let tail = |x| Word::new(vec![b; k - 1]).concat(&Word::single(x));
    let images = vec![
        [bk.clone()].into_iter().collect(),
        [bk].into_iter().collect(),
        [tail(a), tail(abar)].into_iter().collect(),
    ];
    RandomSubstitution::new(alpha, images)
}

/// The deterministic factor `A -> B^k`, `B -> B^{k-1} A` of
/// [`small_entropy_substitution`], and the code `a, ā -> A`, `b -> B`.
pub fn small_entropy_factor(k: usize) -> Result<(DeterministicSubstitution, OneBlockCode)> {
    if k < 2 {
        return invalid("small-entropy substitution needs k >= 2");
    }
    let base = Alphabet::from_chars("AB")?;
    let (a, b) = (Letter(0), Letter(1));
    let phi = DeterministicSubstitution::new(
        base.clone(),
        vec![
            Word::new(vec![b; k]),
            Word::new(vec![b; k - 1]).concat(&Word::single(a)),
        ],
    )?;
    let code = OneBlockCode::new(Alphabet::from_chars("aāb")?, base, vec![a, a, b])?;
    Ok((phi, code))
}

/// Constant-length-`k` substitution on `{a,b} × {1..m}` with entropy
/// `(l/k) log m`, together with the deterministic `psi` it factors onto.
///
/// The underlying length-`l` substitution is the swap `a -> b, b -> a` for
/// `l = 1` and `a -> a b^{l-1}`, `b -> b a^{l-1}` otherwise. Each image is
/// a lift of `phi(x)` followed by `(a,1)^{k-l}`, and
/// `psi(x) = phi(x) a^{k-l}`.
pub fn fractional_entropy_substitution(
    l: usize,
    k: usize,
    m: usize,
) -> Result<(RandomSubstitution, DeterministicSubstitution)> {
    if l < 1 || l > k || m < 2 {
        return invalid("fractional construction needs 1 <= l <= k and m >= 2");
    }
    if l == 1 && k == 1 {
        return precondition("l = k = 1 gives a non-primitive substitution (parity)");
    }
    let base = Alphabet::from_chars("ab")?;
    let (a, b) = (Letter(0), Letter(1));
    let phi: [Word; 2] = if l == 1 {
        [Word::single(b), Word::single(a)]
    } else {
        [
            Word::single(a).concat(&Word::new(vec![b; l - 1])),
            Word::single(b).concat(&Word::new(vec![a; l - 1])),
        ]
    };
    let pad_base = Word::new(vec![a; k - l]);
    let psi = DeterministicSubstitution::new(
        base.clone(),
        phi.iter().map(|w| w.concat(&pad_base)).collect(),
    )?;
    let (ext, proj) = indexed_alphabet(&base, 1..=m)?;
    let code = OneBlockCode::new(ext.clone(), base, proj.clone())?;
    // (a,1) is the first extended letter
    let pad = Word::new(vec![Letter(0); k - l]);
    let images = proj
        .iter()
        .map(|&x| {
            code.preimages(&phi[x.index()])
                .into_iter()
                .map(|u| u.concat(&pad))
                .collect()
        })
        .collect();
    let theta = RandomSubstitution::new(ext, images)?;
    if !theta.is_primitive().primitive {
        return precondition("fractional construction is not primitive for these parameters");
    }
    Ok((theta, psi))
}

/// Comparison of `p_theta(N)` with `m^{nl} p_psi(N)` at `N = n k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockIdentity {
    pub length: usize,
    pub p_theta: BigUint,
    pub p_psi: BigUint,
    pub predicted: BigUint,
    pub holds: bool,
}

/// Checks the block-count identity of the fractional construction at
/// `N = n k` for each `n` in `blocks`.
pub fn fractional_block_identity(
    l: usize,
    k: usize,
    m: usize,
    blocks: &[usize],
    limits: &Limits,
) -> Result<Vec<BlockIdentity>> {
    let (theta, psi) = fractional_entropy_substitution(l, k, m)?;
    let horizon = blocks.iter().max().copied().unwrap_or(0) * k;
    if horizon == 0 {
        return invalid("block identity needs at least one positive block count");
    }
    let pt = theta.complexity(horizon, limits)?;
    let pp = psi.to_random().complexity(horizon, limits)?;
    Ok(blocks
        .iter()
        .map(|&n| {
            let len = n * k;
            let p_theta = pt.get(len).cloned().unwrap_or_default();
            let p_psi = pp.get(len).cloned().unwrap_or_default();
            let predicted = BigUint::from(m).pow((n * l) as u32) * &p_psi;
            BlockIdentity {
                length: len,
                holds: p_theta == predicted,
                p_theta,
                p_psi,
                predicted,
            }
        })
        .collect())
}

/// `(1/k) log(K^2 (K - k + 1))`, an upper bound for the entropy of the
/// shift whose gaps between 1s lie in `[k, K]`.
pub fn gap_shift_entropy_bound(k: usize, big_k: usize) -> Result<f64> {
    if k < 2 || big_k < k {
        return invalid("gap bound needs 2 <= k <= K");
    }
    let kk = big_k as f64;
    Ok((kk * kk * (big_k - k + 1) as f64).ln() / k as f64)
}

/// Data of the two-copy extension of `theta^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonExtension {
    pub substitution: RandomSubstitution,
    pub code: OneBlockCode,
    pub power: usize,
    /// Per letter: the distinguished realization and its marked position.
    pub marked: Vec<(Word, usize)>,
    /// Shortest and longest realization length of `theta^n`.
    pub min_len: usize,
    pub max_len: usize,
}

/// Two-copy extension `a_0, a_1 -> lift_0(theta^n(a)) ∪ lift_1(theta^n(a))`
/// on `A × {0,1}`.
///
/// `lift_0` attaches index 0 everywhere. `lift_1` attaches index 1 at one
/// position: at `q_a` in the distinguished realization of letter `a`, at
/// position 0 in every other realization. The distinguished realization of
/// `a` is the least realization of `theta^n(a)` containing every letter and
/// different from those chosen for earlier letters; `q_a` is the first
/// occurrence of `a` in it.
pub fn epsilon_extension(s: &RandomSubstitution, n: usize, limits: &Limits) -> Result<EpsilonExtension> {
    if !s.is_primitive().primitive {
        return precondition("epsilon extension needs a primitive substitution");
    }
    if s.is_deterministic() {
        return precondition("epsilon extension needs a non-deterministic substitution");
    }
    if !s.is_min_exponential_growth() {
        return precondition("epsilon extension needs minimum exponential growth");
    }
    if n == 0 {
        return invalid("epsilon extension needs n >= 1");
    }
    let alpha = s.alphabet();
    let powers = alpha
        .letters()
        .map(|a| s.realizations_power(a, n, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut marked: Vec<(Word, usize)> = Vec::new();
    for a in alpha.letters() {
        let chosen = powers[a.index()].iter().find(|w| {
            alpha.letters().all(|x| w.contains(x)) && marked.iter().all(|(m, _)| m != *w)
        });
        let Some(w) = chosen else {
            return precondition(format!(
                "no distinguished realization of theta^{n}({}) at this power; raise n",
                alpha.symbol(a)
            ));
        };
        marked.push((w.clone(), w.position(a).expect("contains every letter")));
    }
    let (ext, proj) = indexed_alphabet(alpha, 0..=1)?;
    let code = OneBlockCode::new(ext.clone(), alpha.clone(), proj.clone())?;
    let lift = |w: &Word, one_at: Option<usize>| -> Word {
        w.letters()
            .iter()
            .enumerate()
            .map(|(k, l)| Letter::from(2 * l.index() + usize::from(Some(k) == one_at)))
            .collect()
    };
    let images_of = |a: Letter| -> WordSet {
        let mut set = WordSet::new();
        for w in &powers[a.index()] {
            set.insert(lift(w, None));
            let q = marked.iter().find(|(m, _)| m == w).map_or(0, |(_, q)| *q);
            set.insert(lift(w, Some(q)));
        }
        set
    };
    let images: Vec<WordSet> = proj.iter().map(|&a| images_of(a)).collect();
    let substitution = RandomSubstitution::new(ext, images)?;
    if !substitution.is_primitive().primitive {
        return precondition("extension is not primitive at this power; raise n");
    }
    let lens = powers.iter().flat_map(|p| p.iter().map(Word::len));
    let (min_len, max_len) = lens.fold((usize::MAX, 0), |(lo, hi), l| (lo.min(l), hi.max(l)));
    Ok(EpsilonExtension {
        substitution,
        code,
        power: n,
        marked,
        min_len,
        max_len,
    })
}

/// Smallest `n` in `1..=max_n` accepted by [`epsilon_extension`].
pub fn smallest_epsilon_extension(
    s: &RandomSubstitution,
    max_n: usize,
    limits: &Limits,
) -> Result<EpsilonExtension> {
    let mut last = None;
    for n in 1..=max_n {
        match epsilon_extension(s, n, limits) {
            Ok(e) => return Ok(e),
            Err(crate::Error::Precondition(msg)) if msg.contains("raise n") => last = Some(msg),
            Err(e) => return Err(e),
        }
    }
    precondition(last.unwrap_or_else(|| "no power tried".into()))
}

/// `sum_{i=2}^{terms} log(i) / tau^(i+2)` with `tau` the golden ratio.
pub fn random_fibonacci_entropy_series(terms: usize) -> Result<f64> {
    if terms < 2 {
        return invalid("series needs at least two terms");
    }
    let tau = (1.0 + 5f64.sqrt()) / 2.0;
    Ok((2..=terms).map(|i| (i as f64).ln() / tau.powi(i as i32 + 2)).sum())
}

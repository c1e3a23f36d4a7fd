//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subshift::{Alphabet, Digraph, Letter, Limits, RandomSubstitution, Word, WordSet};

/// Seeded strongly connected vertex-shift graph on `n` vertices.
pub fn random_graph(seed: u64, n: usize) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if rng.gen_bool(0.4) {
                    edges.push((i, j));
                }
            }
        }
        if let Ok(g) = Digraph::vertex_shift(Alphabet::numbered(n).unwrap(), &edges) {
            if g.is_strongly_connected() {
                return g;
            }
        }
    }
}

/// Seeded random substitution: 1 to 2 images of length 1 to `max_len`
/// per letter, at least one image of length 2 overall.
pub fn random_substitution(seed: u64, size: usize, max_len: usize) -> RandomSubstitution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap();
    loop {
        let images: Vec<WordSet> = (0..size)
            .map(|_| {
                let count = rng.gen_range(1..=2);
                (0..count)
                    .map(|_| {
                        let len = rng.gen_range(1..=max_len);
                        Word::from_indices((0..len).map(|_| rng.gen_range(0..size)))
                    })
                    .collect()
            })
            .collect();
        if images.iter().any(|s| s.max_len() >= 2) {
            return RandomSubstitution::new(alpha.clone(), images).unwrap();
        }
    }
}

/// Factors of length `1..=n` of all realizations of `theta^k(a)`,
/// `k <= k_max`, by plain expansion. `complete` is false when some power
/// exceeded `cap` words and was skipped.
pub fn brute_language(s: &RandomSubstitution, n: usize, k_max: usize, cap: usize) -> (Vec<WordSet>, bool) {
    let mut levels: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); n];
    let mut complete = true;
    let lim = Limits::new(cap);
    for a in s.alphabet().letters() {
        for k in 0..=k_max {
            match s.realizations_power(a, k, &lim) {
                Ok(real) => {
                    for w in &real {
                        for len in 1..=n.min(w.len()) {
                            levels[len - 1].extend(w.factors(len));
                        }
                    }
                }
                Err(_) => {
                    complete = false;
                    break;
                }
            }
        }
    }
    (levels.into_iter().map(|l| l.into_iter().collect()).collect(), complete)
}

/// Least `k <= k_max` with every letter occurring in some realization of
/// `theta^k(b)` for every `b`, by expansion. `Err(())` when a set got too
/// large to decide.
pub fn definitional_primitivity(s: &RandomSubstitution, k_max: usize, cap: usize) -> Result<Option<usize>, ()> {
    let lim = Limits::new(cap);
    let size = s.alphabet().size();
    for k in 1..=k_max {
        let mut all = true;
        for b in s.alphabet().letters() {
            let real = s.realizations_power(b, k, &lim).map_err(|_| ())?;
            let seen: HashSet<Letter> = real.iter().flat_map(|w| w.letters().to_vec()).collect();
            if seen.len() < size {
                all = false;
            }
        }
        if all {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Every word of length `n` over an alphabet of `size` letters.
pub fn all_words(size: usize, n: usize) -> Vec<Word> {
    let total = size.pow(n as u32);
    (0..total)
        .map(|mut x| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = x % size;
                x /= size;
            }
            Word::from_indices(v)
        })
        .collect()
}

/// Membership in the gap shift: gaps between consecutive 1s in
/// `[k, big_k]`, outer zero runs shorter than `big_k`.
pub fn gap_scan(w: &[u8], k: usize, big_k: usize) -> bool {
    let ones: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 1).collect();
    if ones.is_empty() {
        return w.len() < big_k;
    }
    let gaps_ok = ones.windows(2).all(|p| (k..=big_k).contains(&(p[1] - p[0])));
    gaps_ok && ones[0] < big_k && w.len() - 1 - ones[ones.len() - 1] < big_k
}

/// Words of length `n` avoiding `forbidden` that extend by `pad` letters
/// on both sides while still avoiding it.
pub fn brute_forbidden_language(size: usize, forbidden: &[Word], n: usize, pad: usize) -> BTreeSet<Word> {
    let ok = |w: &Word| forbidden.iter().all(|f| !f.is_factor_of(w));
    let mut out = BTreeSet::new();
    // grow legal words letter by letter
    let mut level: Vec<Word> = vec![Word::empty()];
    for _ in 0..n + 2 * pad {
        level = level
            .into_iter()
            .flat_map(|w| (0..size).map(move |x| w.concat(&Word::from_indices([x]))))
            .filter(|w| ok(w))
            .collect();
    }
    for w in level {
        out.insert(w.slice(pad, pad + n));
    }
    out
}

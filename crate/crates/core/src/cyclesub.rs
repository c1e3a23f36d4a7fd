//! Cycle-substitutions of graphs, derivation witnesses for cycle words and
//! finite-window language comparison.

use std::collections::HashSet;

use crate::digraph::{Digraph, Mode};
use crate::error::{invalid, precondition, Error, Result};
use crate::randsub::{Limits, RandomSubstitution};
use crate::sft::Sft;
use crate::words::{Alphabet, Letter, Word, WordSet};

/// `a -> {a} ∪ {word reads of simple cycles rooted at a}` for a strongly
/// connected vertex-shift graph.
pub fn vertex_cycle_substitution(g: &Digraph) -> Result<RandomSubstitution> {
    if g.mode() != Mode::Vertex {
        return invalid("vertex cycle-substitution needs a vertex-shift graph");
    }
    cycle_substitution(g)
}

/// Edge-wise version: per edge label `a`, the word reads of edge-simple
/// cycles whose first edge is `a`.
pub fn edge_cycle_substitution(g: &Digraph) -> Result<RandomSubstitution> {
    if g.mode() != Mode::Edge {
        return invalid("edge cycle-substitution needs an edge-shift graph");
    }
    cycle_substitution(g)
}

/// Dispatches on the graph mode.
pub fn cycle_substitution(g: &Digraph) -> Result<RandomSubstitution> {
    if !g.is_strongly_connected() {
        return precondition("graph is not strongly connected");
    }
    let mut images = Vec::with_capacity(g.alphabet().size());
    for a in g.alphabet().letters() {
        let mut set: WordSet = [Word::single(a)].into_iter().collect();
        set.extend(g.simple_cycles_rooted(a)?.iter().map(|c| g.word_read(c)));
        images.push(set);
    }
    RandomSubstitution::new(g.alphabet().clone(), images)
}

/// One insertion: the letter at `position` is replaced by `inserted`, an
/// image word that begins and ends with that letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessStep {
    pub position: usize,
    pub inserted: Word,
}

/// Certificate that `target` occurs in a realization of `theta^depth(root)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationWitness {
    pub root: Letter,
    pub depth: usize,
    pub steps: Vec<WitnessStep>,
    pub target: Word,
}

/// Witness for a cycle word read `u`, from the canonical cycle
/// decomposition: the residual simple cycle expands the root, then the
/// removed subcycles are inserted back, last removed first.
pub fn derivation_witness(g: &Digraph, u: &Word) -> Result<DerivationWitness> {
    let cycle = g.cycle_from_word(u)?;
    let dec = g.cycle_decomposition(&cycle);
    let mut steps = vec![WitnessStep {
        position: 0,
        inserted: g.word_read(&dec.residual),
    }];
    for (sub, start) in dec.removed.iter().rev() {
        steps.push(WitnessStep {
            position: *start,
            inserted: g.word_read(sub),
        });
    }
    Ok(DerivationWitness {
        root: u.first().expect("cycle words are nonempty"),
        depth: steps.len(),
        steps,
        target: u.clone(),
    })
}

/// Words produced by the witness: the root, then the word after each step.
///
/// Each word is a realization of `theta` applied to its predecessor (every
/// untouched letter maps to itself), so the last one certifies the target.
pub fn replay_chain(s: &RandomSubstitution, w: &DerivationWitness) -> Result<Vec<Word>> {
    if w.root.index() >= s.alphabet().size() {
        return invalid("witness root is not a letter of the substitution");
    }
    let mut current = Word::single(w.root);
    let mut chain = vec![current.clone()];
    for (i, step) in w.steps.iter().enumerate() {
        let fail = |reason: String| Error::WitnessStep {
            step: i + 1,
            reason,
        };
        let Some(&letter) = current.letters().get(step.position) else {
            return Err(fail(format!(
                "position {} outside a word of length {}",
                step.position,
                current.len()
            )));
        };
        if step.inserted.first() != Some(letter) || step.inserted.last() != Some(letter) {
            return Err(fail(format!(
                "inserted word does not begin and end with {}",
                s.alphabet().symbol(letter)
            )));
        }
        if !s.images(letter).contains(&step.inserted) {
            return Err(fail(format!(
                "{} is not an image of {}",
                s.alphabet().render(&step.inserted),
                s.alphabet().symbol(letter)
            )));
        }
        current = current.splice(step.position, &step.inserted);
        chain.push(current.clone());
    }
    Ok(chain)
}

/// Performs the insertions and checks the result is the witness target.
pub fn replay_witness(s: &RandomSubstitution, w: &DerivationWitness) -> Result<Word> {
    let out = replay_chain(s, w)?.pop().expect("chain starts with the root");
    if out != w.target {
        return Err(Error::WitnessStep {
            step: w.steps.len(),
            reason: format!(
                "replay gives {} instead of {}",
                s.alphabet().render(&out),
                s.alphabet().render(&w.target)
            ),
        });
    }
    Ok(out)
}

/// Which language a divergent word belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Only in the shift the substitution is meant to reproduce.
    Shift,
    /// Only in the substitution's language.
    Substitution,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Shift => "shift",
            Side::Substitution => "substitution",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub length: usize,
    pub word: Word,
    pub side: Side,
}

/// Result of comparing two languages length by length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageComparison {
    pub equal: bool,
    /// Shortest divergence, least word first.
    pub first_divergence: Option<Divergence>,
    /// Every divergence, ordered by length then word.
    pub divergences: Vec<Divergence>,
    pub max_length: usize,
}

impl LanguageComparison {
    /// Divergences of one length.
    pub fn at_length(&self, n: usize) -> impl Iterator<Item = &Divergence> {
        self.divergences.iter().filter(move |d| d.length == n)
    }

    /// The recorded divergence for `w`, if `w` is one.
    pub fn divergence_of(&self, w: &Word) -> Option<&Divergence> {
        self.divergences.iter().find(|d| &d.word == w)
    }
}

/// Compares `shift[n-1]` with `substitution[n-1]` for every length.
pub fn compare_languages(shift: &[WordSet], substitution: &[WordSet]) -> LanguageComparison {
    let max_length = shift.len().min(substitution.len());
    let mut divergences = Vec::new();
    for n in 1..=max_length {
        let (l, r) = (&shift[n - 1], &substitution[n - 1]);
        let mut level: Vec<Divergence> = l
            .difference(r)
            .map(|w| (w, Side::Shift))
            .chain(r.difference(l).map(|w| (w, Side::Substitution)))
            .map(|(w, side)| Divergence {
                length: n,
                word: w.clone(),
                side,
            })
            .collect();
        level.sort_by(|a, b| a.word.cmp(&b.word));
        divergences.extend(level);
    }
    LanguageComparison {
        equal: divergences.is_empty(),
        first_divergence: divergences.first().cloned(),
        divergences,
        max_length,
    }
}

/// Compares the graph's SFT with its cycle-substitution up to length `n`.
pub fn verify_language_equality(
    g: &Digraph,
    n: usize,
    limits: &Limits,
) -> Result<LanguageComparison> {
    let theta = cycle_substitution(g)?;
    let sft = Sft::from_matrix(g.transition_matrix(), g.alphabet().clone())?;
    let shift: Vec<WordSet> = (1..=n).map(|k| sft.language(k)).collect();
    let table = theta.language_upto(n, limits)?;
    Ok(compare_languages(&shift, table.levels()))
}

/// Label words of length `1..=n` read along paths of a labelled graph in
/// which every vertex has incoming and outgoing edges. Labels may repeat.
pub fn labelled_graph_language(
    labels: &Alphabet,
    vertex_count: usize,
    edges: &[(usize, usize, Letter)],
    n: usize,
) -> Result<Vec<WordSet>> {
    for &(s, t, l) in edges {
        if s >= vertex_count || t >= vertex_count || l.index() >= labels.size() {
            return invalid("labelled edge out of range");
        }
    }
    for v in 0..vertex_count {
        if !edges.iter().any(|e| e.0 == v) || !edges.iter().any(|e| e.1 == v) {
            return invalid(format!("vertex {v} is a source or a sink"));
        }
    }
    let mut states: HashSet<(Vec<Letter>, usize)> = edges.iter().map(|&(_, t, l)| (vec![l], t)).collect();
    let mut levels = Vec::with_capacity(n);
    for len in 1..=n {
        levels.push(states.iter().map(|(w, _)| Word::new(w.clone())).collect());
        if len == n {
            break;
        }
        states = states
            .iter()
            .flat_map(|(w, v)| {
                edges.iter().filter(move |e| e.0 == *v).map(move |&(_, t, l)| {
                    let mut nw = w.clone();
                    nw.push(l);
                    (nw, t)
                })
            })
            .collect();
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn image_strings(s: &RandomSubstitution) -> Vec<Vec<String>> {
        s.image_sets().iter().map(|set| set.render(s.alphabet())).collect()
    }

    fn sorted(v: &[&str]) -> Vec<String> {
        let a = Alphabet::numbered(10).unwrap();
        let mut ws: Vec<Word> = v.iter().map(|s| a.parse_word(s).unwrap()).collect();
        ws.sort();
        ws.iter().map(|w| a.render(w)).collect()
    }

    #[test]
    fn vertex_images() {
        let s = vertex_cycle_substitution(&fixtures::mickey()).unwrap();
        assert_eq!(
            image_strings(&s),
            vec![
                sorted(&["0", "00", "0120"]),
                sorted(&["1", "1201", "121", "131"]),
                sorted(&["2", "212", "2012"]),
                sorted(&["3", "313"]),
            ]
        );
    }

    #[test]
    fn small_graphs() {
        let one = Digraph::vertex_shift(Alphabet::numbered(1).unwrap(), &[(0, 0)]).unwrap();
        assert_eq!(image_strings(&vertex_cycle_substitution(&one).unwrap()), vec![vec!["0", "00"]]);
        let two = Digraph::vertex_shift(Alphabet::numbered(2).unwrap(), &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            image_strings(&vertex_cycle_substitution(&two).unwrap()),
            vec![vec!["0", "010"], vec!["1", "101"]]
        );
        let loop_edge =
            Digraph::edge_shift(Alphabet::numbered(1).unwrap(), &[(0, 0, "l")]).unwrap();
        assert_eq!(
            image_strings(&edge_cycle_substitution(&loop_edge).unwrap()),
            vec![vec!["l", "ll"]]
        );
    }

    #[test]
    fn rejects_wrong_mode_and_disconnected() {
        assert!(vertex_cycle_substitution(&fixtures::mickey_edge()).is_err());
        assert!(edge_cycle_substitution(&fixtures::mickey()).is_err());
        let split =
            Digraph::vertex_shift(Alphabet::numbered(2).unwrap(), &[(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            vertex_cycle_substitution(&split),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn edge_images() {
        let s = edge_cycle_substitution(&fixtures::mickey_edge()).unwrap();
        assert_eq!(
            image_strings(&s),
            vec![
                sorted(&["0", "0230", "02530"]),
                sorted(&["1", "1231", "12531"]),
                sorted(&["2", "2302", "2312", "25302", "25312"]),
                sorted(&["3", "3023", "30253", "3123", "31253", "343", "3453"]),
                sorted(&["4", "434", "4534"]),
                sorted(&["5", "55", "53025", "53125", "5345"]),
            ]
        );
    }

    #[test]
    fn vertex_witness_chain() {
        let g = fixtures::mickey();
        let s = vertex_cycle_substitution(&g).unwrap();
        let u = g.alphabet().parse_word("213120012").unwrap();
        let w = derivation_witness(&g, &u).unwrap();
        assert_eq!(w.root, Letter(2));
        assert_eq!(w.depth, 4);
        let ins: Vec<(usize, String)> = w
            .steps
            .iter()
            .map(|st| (st.position, g.alphabet().render(&st.inserted)))
            .collect();
        assert_eq!(
            ins,
            vec![
                (0, "2012".into()),
                (1, "00".into()),
                (0, "212".into()),
                (1, "131".into())
            ]
        );
        let chain: Vec<String> = replay_chain(&s, &w)
            .unwrap()
            .iter()
            .map(|x| g.alphabet().render(x))
            .collect();
        assert_eq!(chain, vec!["2", "2012", "20012", "2120012", "213120012"]);
        assert_eq!(replay_witness(&s, &w).unwrap(), u);
    }

    #[test]
    fn edge_witness_replays() {
        let g = fixtures::mickey_edge();
        let s = edge_cycle_substitution(&g).unwrap();
        let u = g.alphabet().parse_word("02312534530").unwrap();
        let w = derivation_witness(&g, &u).unwrap();
        assert_eq!(w.root, Letter(0));
        assert_eq!(w.depth, 3);
        assert_eq!(replay_witness(&s, &w).unwrap(), u);
    }

    #[test]
    fn simple_cycle_witness_has_depth_one() {
        let g = fixtures::mickey();
        let s = vertex_cycle_substitution(&g).unwrap();
        let u = g.alphabet().parse_word("1201").unwrap();
        let w = derivation_witness(&g, &u).unwrap();
        assert_eq!(w.depth, 1);
        assert_eq!(replay_witness(&s, &w).unwrap(), u);
    }

    #[test]
    fn tampered_witness_fails_at_step() {
        let g = fixtures::mickey();
        let s = vertex_cycle_substitution(&g).unwrap();
        let u = g.alphabet().parse_word("213120012").unwrap();
        let mut w = derivation_witness(&g, &u).unwrap();
        w.steps.swap(2, 3);
        assert!(matches!(
            replay_witness(&s, &w),
            Err(Error::WitnessStep { step: 3, .. })
        ));
        let mut bad = derivation_witness(&g, &u).unwrap();
        bad.steps[1].inserted = g.alphabet().parse_word("000").unwrap();
        assert!(matches!(
            replay_witness(&s, &bad),
            Err(Error::WitnessStep { step: 2, .. })
        ));
    }

    #[test]
    fn non_cycle_words_rejected() {
        let g = fixtures::mickey();
        for bad in ["2131", "21", "2", "033"] {
            let u = g.alphabet().parse_word(bad).unwrap();
            assert!(derivation_witness(&g, &u).is_err(), "{bad}");
        }
    }

    #[test]
    fn equality_small_graphs() {
        let lim = Limits::default();
        assert!(verify_language_equality(&fixtures::mickey(), 6, &lim).unwrap().equal);
        assert!(verify_language_equality(&fixtures::golden(), 8, &lim).unwrap().equal);
        assert!(verify_language_equality(&fixtures::mickey_edge(), 5, &lim).unwrap().equal);
    }

    #[test]
    fn sofic_naive_substitution_diverges() {
        let (labels, n, edges) = fixtures::sofic_graph();
        let shift = labelled_graph_language(&labels, n, &edges, 6).unwrap();
        let sub = fixtures::naive_sofic_substitution()
            .language_upto(6, &Limits::default())
            .unwrap();
        let cmp = compare_languages(&shift, sub.levels());
        assert!(!cmp.equal);
        let w = labels.parse_word("302103").unwrap();
        assert_eq!(
            cmp.divergence_of(&w).map(|d| (d.length, d.side)),
            Some((6, Side::Substitution))
        );
    }
}

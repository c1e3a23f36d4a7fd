//! Small named graphs and substitutions used throughout the examples and
//! tests.

use crate::digraph::Digraph;
use crate::matrix::ZeroOneMatrix;
use crate::randsub::RandomSubstitution;
use crate::sft::Sft;
use crate::words::{Alphabet, Letter};

/// Edges of the four-vertex graph with adjacency matrix
/// `[[1,1,0,0],[0,0,1,1],[1,1,0,0],[0,1,0,0]]`.
pub const MICKEY_EDGES: [(usize, usize); 7] =
    [(0, 0), (0, 1), (1, 2), (1, 3), (2, 0), (2, 1), (3, 1)];

/// Three vertices `A, B, C` and six uniquely labelled edges `0..5`.
pub const MICKEY_EDGE_EDGES: [(usize, usize, &str); 6] = [
    (0, 1, "0"),
    (0, 1, "1"),
    (1, 2, "2"),
    (2, 0, "3"),
    (0, 2, "4"),
    (2, 2, "5"),
];

pub fn mickey() -> Digraph {
    Digraph::vertex_shift(Alphabet::numbered(4).expect("static"), &MICKEY_EDGES)
        .expect("static graph")
}

pub fn mickey_sft() -> Sft {
    let g = mickey();
    Sft::from_matrix(g.transition_matrix(), g.alphabet().clone()).expect("static graph")
}

pub fn mickey_edge() -> Digraph {
    Digraph::edge_shift(Alphabet::from_chars("ABC").expect("static"), &MICKEY_EDGE_EDGES)
        .expect("static graph")
}

/// `0 -> 0, 0 -> 1, 1 -> 0`: the vertex shift avoiding `11`.
pub fn golden() -> Digraph {
    Digraph::vertex_shift(Alphabet::numbered(2).expect("static"), &[(0, 0), (0, 1), (1, 0)])
        .expect("static graph")
}

pub fn golden_matrix() -> ZeroOneMatrix {
    ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 0]]).expect("static matrix")
}

/// `a -> {ab, ba}, b -> {a}`.
pub fn random_fibonacci() -> RandomSubstitution {
    let ab = Alphabet::from_chars("ab").expect("static");
    RandomSubstitution::parse(ab, &[&["ab", "ba"], &["a"]]).expect("static substitution")
}

/// `a, b -> {aa, ab, ba, bb}`, whose subshift is the full 2-shift.
pub fn full_shift_substitution() -> RandomSubstitution {
    let ab = Alphabet::from_chars("ab").expect("static");
    let all: &[&str] = &["aa", "ab", "ba", "bb"];
    RandomSubstitution::parse(ab, &[all, all]).expect("static substitution")
}

/// Labelled graph on vertices `P, Q, R` whose edge labels repeat: two
/// edges carry label `0` (`P -> Q` and the loop at `R`). Returned as the
/// label alphabet, the vertex count and `(source, target, label)` triples.
pub fn sofic_graph() -> (Alphabet, usize, Vec<(usize, usize, Letter)>) {
    let labels = Alphabet::from_chars("0123").expect("static");
    let edges = vec![
        (0, 1, Letter(0)),
        (1, 2, Letter(1)),
        (2, 1, Letter(2)),
        (1, 0, Letter(3)),
        (2, 2, Letter(0)),
    ];
    (labels, 3, edges)
}

/// The label-level substitution one would naively read off
/// [`sofic_graph`]: `0 -> {0, 0210}`, `1 -> {1}`, `2 -> {2}`,
/// `3 -> {3, 303}`.
pub fn naive_sofic_substitution() -> RandomSubstitution {
    let labels = Alphabet::from_chars("0123").expect("static");
    RandomSubstitution::parse(labels, &[&["0", "0210"], &["1"], &["2"], &["3", "303"]])
        .expect("static substitution")
}

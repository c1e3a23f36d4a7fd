//! Finite essential digraphs, simple cycles and canonical cycle
//! decomposition.
//!
//! A graph is read either as a vertex shift (letters are vertices, no
//! parallel edges) or as an edge shift (letters are uniquely labelled
//! edges). Cycles are always stored as edge index sequences.

use std::collections::VecDeque;

use crate::error::{invalid, precondition, Result};
use crate::matrix::{BoolMatrix, ZeroOneMatrix};
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Vertex,
    Edge,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Vertex => "vertex",
            Mode::Edge => "edge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: Alphabet,
    edges: Vec<Edge>,
    mode: Mode,
    /// Shift alphabet: vertices in vertex mode, edge labels in edge mode.
    letters: Alphabet,
    out: Vec<Vec<usize>>,
}

/// A closed walk, as indices into [`Digraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Nested-insertion form of a cycle: `removed[i] = (subcycle, start)` was
/// cut out at edge position `start` of the cycle left by the previous
/// removals, and `residual` is what remains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub removed: Vec<(Cycle, usize)>,
    pub residual: Cycle,
}

impl Decomposition {
    /// Re-inserts the removed subcycles in reverse order.
    pub fn reassemble(&self) -> Cycle {
        let mut edges = self.residual.0.clone();
        for (sub, start) in self.removed.iter().rev() {
            edges.splice(*start..*start, sub.0.iter().copied());
        }
        Cycle(edges)
    }
}

impl Digraph {
    /// Vertex-shift graph. Edges are `(source, target)` vertex indices.
    pub fn vertex_shift(vertices: Alphabet, edges: &[(usize, usize)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|&(source, target)| Edge {
                source,
                target,
                label: None,
            })
            .collect();
        Self::build(vertices, edges, Mode::Vertex)
    }

    /// Edge-shift graph with mandatory, pairwise distinct labels.
    pub fn edge_shift<S: AsRef<str>>(
        vertices: Alphabet,
        edges: &[(usize, usize, S)],
    ) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|(source, target, label)| Edge {
                source: *source,
                target: *target,
                label: Some(label.as_ref().to_string()),
            })
            .collect();
        Self::build(vertices, edges, Mode::Edge)
    }

    /// The graph `G_A` whose adjacency matrix is `a`, as a vertex shift.
    pub fn from_matrix(alphabet: Alphabet, a: &ZeroOneMatrix) -> Result<Self> {
        if alphabet.size() != a.order() {
            return invalid("alphabet size differs from matrix order");
        }
        let n = a.order();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| a.get(i, j))
            .collect();
        Self::vertex_shift(alphabet, &edges)
    }

    fn build(vertices: Alphabet, edges: Vec<Edge>, mode: Mode) -> Result<Self> {
        let n = vertices.size();
        let mut out = vec![Vec::new(); n];
        let mut has_in = vec![false; n];
        for (i, e) in edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return invalid(format!("edge {i} references a vertex out of range"));
            }
            out[e.source].push(i);
            has_in[e.target] = true;
        }
        for v in 0..n {
            if out[v].is_empty() || !has_in[v] {
                return invalid(format!(
                    "vertex {:?} lacks an incoming or outgoing edge (graph not essential)",
                    vertices.symbols()[v]
                ));
            }
        }
        let letters = match mode {
            Mode::Vertex => {
                for (i, e) in edges.iter().enumerate() {
                    if e.label.is_some() {
                        return invalid("vertex-shift edges carry no labels");
                    }
                    if edges[..i]
                        .iter()
                        .any(|f| f.source == e.source && f.target == e.target)
                    {
                        return invalid(format!(
                            "duplicate edge {} -> {}",
                            vertices.symbols()[e.source],
                            vertices.symbols()[e.target]
                        ));
                    }
                }
                vertices.clone()
            }
            Mode::Edge => {
                let labels: Option<Vec<String>> = edges.iter().map(|e| e.label.clone()).collect();
                let labels = labels.ok_or_else(|| {
                    crate::Error::Invalid("edge-shift edges need labels".into())
                })?;
                Alphabet::new(labels)
                    .map_err(|e| crate::Error::Invalid(format!("edge labels: {e}")))?
            }
        };
        Ok(Digraph {
            vertices,
            edges,
            mode,
            letters,
            out,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.size()
    }

    pub fn vertices(&self) -> &Alphabet {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Alphabet of the shift presented by this graph.
    pub fn alphabet(&self) -> &Alphabet {
        &self.letters
    }

    /// Transition matrix of the presented shift over [`Self::alphabet`].
    pub fn transition_matrix(&self) -> ZeroOneMatrix {
        let m = match self.mode {
            Mode::Vertex => {
                let mut m = BoolMatrix::zeros(self.vertex_count());
                for e in &self.edges {
                    m.set(e.source, e.target, true);
                }
                m
            }
            Mode::Edge => {
                let k = self.edges.len();
                let mut m = BoolMatrix::zeros(k);
                for (i, e) in self.edges.iter().enumerate() {
                    for &j in &self.out[e.target] {
                        m.set(i, j, true);
                    }
                }
                m
            }
        };
        ZeroOneMatrix::new(m).expect("essential graph yields essential matrix")
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        let reach = |from: usize, forward: bool| {
            let mut seen = vec![false; n];
            seen[from] = true;
            let mut stack = vec![from];
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    let (a, b) = if forward {
                        (e.source, e.target)
                    } else {
                        (e.target, e.source)
                    };
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(0, true) && reach(0, false)
    }

    /// BFS tree from `from`; `parent[v]` is the discovering edge.
    fn bfs(&self, from: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let t = self.edges[e].target;
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some(e);
                    queue.push_back(t);
                }
            }
        }
        parent
    }

    fn path_from_tree(&self, parent: &[Option<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
        let mut path = Vec::new();
        let mut v = to;
        while v != from {
            let e = parent[v]?;
            path.push(e);
            v = self.edges[e].source;
        }
        path.reverse();
        Some(path)
    }

    /// A cycle rooted at `v` that passes through `w`: shortest path `v -> w`
    /// followed by shortest path `w -> v` (BFS, lower edge index first).
    /// For `v == w` this is a shortest cycle through `v`.
    pub fn connecting_cycle(&self, v: usize, w: usize) -> Result<Cycle> {
        let n = self.vertex_count();
        if v >= n || w >= n {
            return invalid("vertex out of range");
        }
        if v == w {
            let tree = self.bfs(v);
            let depth = |u: usize| -> Option<usize> {
                self.path_from_tree(&tree, v, u).map(|p| p.len())
            };
            let closing = self
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.target == v)
                .filter_map(|(i, e)| depth(e.source).map(|d| (d, i)))
                .min();
            let (_, e) = closing.ok_or_else(|| crate::Error::Precondition(
                "no cycle through vertex".into(),
            ))?;
            let mut path = self
                .path_from_tree(&tree, v, self.edges[e].source)
                .expect("reached");
            path.push(e);
            return Ok(Cycle(path));
        }
        let there = self.path_from_tree(&self.bfs(v), v, w);
        let back = self.path_from_tree(&self.bfs(w), w, v);
        match (there, back) {
            (Some(mut p), Some(q)) => {
                p.extend(q);
                Ok(Cycle(p))
            }
            _ => precondition("graph is not strongly connected"),
        }
    }

    /// Validates an edge sequence as a cycle.
    pub fn cycle(&self, edges: Vec<usize>) -> Result<Cycle> {
        if edges.is_empty() {
            return invalid("a cycle needs at least one edge");
        }
        if edges.iter().any(|&e| e >= self.edges.len()) {
            return invalid("edge index out of range");
        }
        let k = edges.len();
        for i in 0..k {
            let a = &self.edges[edges[i]];
            let b = &self.edges[edges[(i + 1) % k]];
            if a.target != b.source {
                return invalid(format!("edges at positions {i} and {} do not chain", (i + 1) % k));
            }
        }
        Ok(Cycle(edges))
    }

    /// The cycle whose word read is `u`.
    pub fn cycle_from_word(&self, u: &Word) -> Result<Cycle> {
        self.letters.check_word(u)?;
        if u.len() < 2 || u.first() != u.last() {
            return invalid("a cycle word read has length >= 2 and equal end letters");
        }
        let l = u.letters();
        let edges = match self.mode {
            Mode::Vertex => l
                .windows(2)
                .map(|p| {
                    self.out[p[0].index()]
                        .iter()
                        .copied()
                        .find(|&e| self.edges[e].target == p[1].index())
                        .ok_or_else(|| {
                            crate::Error::Invalid(format!(
                                "no edge {} -> {}",
                                self.letters.symbol(p[0]),
                                self.letters.symbol(p[1])
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?,
            Mode::Edge => l[..l.len() - 1].iter().map(|x| x.index()).collect(),
        };
        self.cycle(edges)
    }

    /// Vertices visited by `c`, root first, root not repeated.
    pub fn vertex_sequence(&self, c: &Cycle) -> Vec<usize> {
        c.0.iter().map(|&e| self.edges[e].source).collect()
    }

    /// Word read: traversed vertices (vertex mode) or edges (edge mode),
    /// with the first letter repeated at the end.
    pub fn word_read(&self, c: &Cycle) -> Word {
        let letters: Vec<usize> = match self.mode {
            Mode::Vertex => self.vertex_sequence(c),
            Mode::Edge => c.0.clone(),
        };
        Word::from_indices(letters.iter().copied().chain(letters.first().copied()))
    }

    /// Vertex mode: no vertex visited twice. Edge mode: no edge traversed
    /// twice.
    pub fn is_simple(&self, c: &Cycle) -> bool {
        let letters: Vec<usize> = match self.mode {
            Mode::Vertex => self.vertex_sequence(c),
            Mode::Edge => c.0.clone(),
        };
        let mut seen = vec![false; self.letters.size()];
        letters.into_iter().all(|x| !std::mem::replace(&mut seen[x], true))
    }

    /// Simple cycles rooted at vertex `root` (vertex mode) or beginning with
    /// edge `root` (edge mode), in lexicographic order of edge indices.
    pub fn simple_cycles_rooted(&self, root: Letter) -> Result<Vec<Cycle>> {
        let r = root.index();
        let mut found = Vec::new();
        match self.mode {
            Mode::Vertex => {
                if r >= self.vertex_count() {
                    return invalid("unknown root vertex");
                }
                let mut visited = vec![false; self.vertex_count()];
                visited[r] = true;
                let mut path = Vec::new();
                self.dfs_vertex(r, r, &mut visited, &mut path, &mut found);
            }
            Mode::Edge => {
                if r >= self.edges.len() {
                    return invalid("unknown root edge");
                }
                let mut used = vec![false; self.edges.len()];
                used[r] = true;
                let mut path = vec![r];
                self.dfs_edge(self.edges[r].source, &mut used, &mut path, &mut found);
            }
        }
        Ok(found)
    }

    fn dfs_vertex(
        &self,
        root: usize,
        at: usize,
        visited: &mut [bool],
        path: &mut Vec<usize>,
        found: &mut Vec<Cycle>,
    ) {
        for &e in &self.out[at] {
            let t = self.edges[e].target;
            path.push(e);
            if t == root {
                found.push(Cycle(path.clone()));
            } else if !visited[t] {
                visited[t] = true;
                self.dfs_vertex(root, t, visited, path, found);
                visited[t] = false;
            }
            path.pop();
        }
    }

    fn dfs_edge(&self, home: usize, used: &mut [bool], path: &mut Vec<usize>, found: &mut Vec<Cycle>) {
        let at = self.edges[*path.last().expect("nonempty")].target;
        if at == home {
            found.push(Cycle(path.clone()));
        }
        for &e in &self.out[at] {
            if !used[e] {
                used[e] = true;
                path.push(e);
                self.dfs_edge(home, used, path, found);
                path.pop();
                used[e] = false;
            }
        }
    }

    /// Canonical decomposition into nested simple cycles.
    ///
    /// Each round scans the word read left to right and stops at the first
    /// letter already seen; the edges between the two occurrences form the
    /// removed subcycle. Its word read starts and ends with the letter that
    /// stays behind at the removal position, so the letter can be
    /// re-expanded by one substitution step. The full-cycle repeat (first
    /// against last letter) means the residual is simple.
    pub fn cycle_decomposition(&self, c: &Cycle) -> Decomposition {
        let mut current = c.0.clone();
        let mut removed = Vec::new();
        while let Some((p, q)) = self.first_repeat(&current) {
            let sub: Vec<usize> = current.drain(p..q).collect();
            removed.push((Cycle(sub), p));
        }
        Decomposition {
            removed,
            residual: Cycle(current),
        }
    }

    fn first_repeat(&self, edges: &[usize]) -> Option<(usize, usize)> {
        let read = self.word_read(&Cycle(edges.to_vec()));
        let mut last_seen = vec![usize::MAX; self.letters.size()];
        for (q, l) in read.letters().iter().enumerate() {
            let p = last_seen[l.index()];
            if p != usize::MAX {
                return (q < edges.len()).then_some((p, q));
            }
            last_seen[l.index()] = q;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn reads(g: &Digraph, cs: &[Cycle]) -> Vec<String> {
        cs.iter().map(|c| g.alphabet().render(&g.word_read(c))).collect()
    }

    #[test]
    fn construction_errors() {
        let v = Alphabet::numbered(2).unwrap();
        assert!(Digraph::vertex_shift(v.clone(), &[(0, 1)]).is_err());
        assert!(Digraph::vertex_shift(v.clone(), &[(0, 1), (1, 0), (0, 1)]).is_err());
        assert!(Digraph::vertex_shift(v.clone(), &[(0, 2), (1, 0)]).is_err());
        assert!(Digraph::edge_shift(v.clone(), &[(0, 1, "x"), (1, 0, "x")]).is_err());
        assert!(Digraph::edge_shift(v, &[(0, 1, "x"), (1, 0, "y"), (0, 1, "z")]).is_ok());
    }

    #[test]
    fn strong_connectivity() {
        assert!(fixtures::mickey().is_strongly_connected());
        let one = Digraph::vertex_shift(Alphabet::numbered(1).unwrap(), &[(0, 0)]).unwrap();
        assert!(one.is_strongly_connected());
        let split =
            Digraph::vertex_shift(Alphabet::numbered(2).unwrap(), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(!split.is_strongly_connected());
    }

    #[test]
    fn connecting_cycle_examples() {
        let g = fixtures::mickey();
        let c = g.connecting_cycle(0, 3).unwrap();
        assert_eq!(g.alphabet().render(&g.word_read(&c)), "013120");
        let loop0 = g.connecting_cycle(0, 0).unwrap();
        assert_eq!(g.alphabet().render(&g.word_read(&loop0)), "00");
        let c33 = g.connecting_cycle(3, 3).unwrap();
        assert_eq!(g.alphabet().render(&g.word_read(&c33)), "313");

        let two = Digraph::vertex_shift(Alphabet::numbered(2).unwrap(), &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(two.connecting_cycle(0, 1).unwrap().edges(), &[0, 1]);
        assert!(g.connecting_cycle(0, 9).is_err());

        let split =
            Digraph::vertex_shift(Alphabet::numbered(2).unwrap(), &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(split.connecting_cycle(1, 0).is_err());
    }

    #[test]
    fn simple_cycles_vertex_example() {
        let g = fixtures::mickey();
        let c1 = g.simple_cycles_rooted(Letter(1)).unwrap();
        let mut r = reads(&g, &c1);
        r.sort();
        assert_eq!(r, vec!["1201", "121", "131"]);
        assert!(g.simple_cycles_rooted(Letter(7)).is_err());
    }

    #[test]
    fn simple_cycles_edge_example() {
        let g = fixtures::mickey_edge();
        let c0 = g.simple_cycles_rooted(Letter(0)).unwrap();
        let as_edges: Vec<Vec<usize>> = c0.iter().map(|c| c.edges().to_vec()).collect();
        assert_eq!(as_edges, vec![vec![0, 2, 3], vec![0, 2, 5, 3]]);
        assert_eq!(reads(&g, &c0), vec!["0230", "02530"]);
    }

    #[test]
    fn self_loop_cycles() {
        let g = Digraph::vertex_shift(Alphabet::numbered(1).unwrap(), &[(0, 0)]).unwrap();
        let c = g.simple_cycles_rooted(Letter(0)).unwrap();
        assert_eq!(c, vec![Cycle(vec![0])]);
        assert_eq!(g.alphabet().render(&g.word_read(&c[0])), "00");
    }

    #[test]
    fn vertex_decomposition_example() {
        let g = fixtures::mickey();
        let u = g.alphabet().parse_word("213120012").unwrap();
        let c = g.cycle_from_word(&u).unwrap();
        let d = g.cycle_decomposition(&c);
        let got: Vec<(String, usize)> = d
            .removed
            .iter()
            .map(|(s, p)| (g.alphabet().render(&g.word_read(s)), *p))
            .collect();
        assert_eq!(
            got,
            vec![("131".to_string(), 1), ("212".to_string(), 0), ("00".to_string(), 1)]
        );
        assert_eq!(g.alphabet().render(&g.word_read(&d.residual)), "2012");
        assert_eq!(d.reassemble(), c);
    }

    #[test]
    fn simple_cycle_decomposes_to_itself() {
        let g = fixtures::mickey();
        let c = g.cycle(vec![1, 2, 4]).unwrap();
        let d = g.cycle_decomposition(&c);
        assert!(d.removed.is_empty());
        assert_eq!(d.residual, c);
    }

    #[test]
    fn edge_decomposition_example() {
        // Nearest-repeat rule: (2,3,1) then (5,3,4); first edge survives.
        let g = fixtures::mickey_edge();
        let c = g.cycle(vec![0, 2, 3, 1, 2, 5, 3, 4, 5, 3]).unwrap();
        let d = g.cycle_decomposition(&c);
        let got: Vec<(Vec<usize>, usize)> =
            d.removed.iter().map(|(s, p)| (s.edges().to_vec(), *p)).collect();
        assert_eq!(got, vec![(vec![2, 3, 1], 1), (vec![5, 3, 4], 2)]);
        assert_eq!(d.residual.edges(), &[0, 2, 5, 3]);
        assert_eq!(d.reassemble(), c);
        assert!(d.removed.iter().all(|(s, _)| g.is_simple(s)));
    }

    #[test]
    fn edge_decomposition_keeps_first_edge_when_prefix_repeats() {
        // 0,2,3 traversed twice: only a prefix/suffix repeat exists.
        let g = fixtures::mickey_edge();
        let c = g.cycle(vec![0, 2, 3, 0, 2, 3]).unwrap();
        let d = g.cycle_decomposition(&c);
        assert_eq!(d.residual.edges()[0], 0);
        assert!(g.is_simple(&d.residual));
        assert_eq!(d.reassemble(), c);
    }

    #[test]
    fn word_read_examples() {
        let g = fixtures::mickey();
        let c = g.cycle(vec![1, 2, 4]).unwrap();
        assert_eq!(g.alphabet().render(&g.word_read(&c)), "0120");
        let e = fixtures::mickey_edge();
        let c = e.cycle(vec![0, 2, 3]).unwrap();
        assert_eq!(e.alphabet().render(&e.word_read(&c)), "0230");
    }

    #[test]
    fn cycle_validation() {
        let g = fixtures::mickey();
        assert!(g.cycle(vec![]).is_err());
        assert!(g.cycle(vec![1, 4]).is_err());
        assert!(g.cycle_from_word(&g.alphabet().parse_word("0130").unwrap()).is_err());
        assert!(g.cycle_from_word(&g.alphabet().parse_word("0").unwrap()).is_err());
    }

    #[test]
    fn edge_transition_matrix() {
        let g = fixtures::mickey_edge();
        let m = g.transition_matrix();
        assert_eq!(m.order(), 6);
        // edge 3 (C->A) is followed by edges 0, 1, 4 leaving A
        assert_eq!(m.rows()[3], vec![1, 1, 0, 0, 1, 0]);
    }
}

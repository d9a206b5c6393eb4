//! Simple graphs on `[n]`, their minors, tube predicates and the graph
//! families used by the Hopf structures.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vset::{VertexSet, MAX_VERTICES};

/// A simple graph on `[n]`. `adj[v-1]` is the neighborhood of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidVertex(n));
        }
        let mut g = Graph::edgeless(n);
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::InvalidVertex(v));
                }
            }
            if i == j {
                return Err(Error::Parse(format!("loop at vertex {i}")));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { n, adj: vec![VertexSet::EMPTY; n] }
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i - 1].insert(j);
        self.adj[j - 1].insert(i);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i >= 1 && i <= self.n && self.adj[i - 1].contains(j)
    }

    /// Edges `(i, j)` with `i < j`, ascending lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in self.adj[i - 1].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Every edge of `self` is an edge of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset(*b))
    }

    fn check_set(&self, set: VertexSet) -> Result<()> {
        match set.max() {
            Some(m) if m > self.n => Err(Error::InvalidVertex(m)),
            _ => Ok(()),
        }
    }

    /// The component of `G|_within` containing `v`.
    pub fn component_of(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(v);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.adj[u - 1]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components of `G|_within`, ordered by their minimum vertex.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.component_of(v, within);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_connected_set(&self, set: VertexSet) -> bool {
        match set.min() {
            None => false,
            Some(v) => self.component_of(v, set) == set,
        }
    }

    pub fn is_tube(&self, set: VertexSet) -> Result<bool> {
        self.check_set(set)?;
        Ok(self.is_connected_set(set))
    }

    /// All tubes in canonical order, grown from seeds by neighbor expansion.
    pub fn tubes(&self) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        let mut queue: VecDeque<VertexSet> = VecDeque::new();
        for v in 1..=self.n {
            let s = VertexSet::singleton(v);
            seen.insert(s);
            queue.push_back(s);
        }
        while let Some(t) = queue.pop_front() {
            let mut boundary = VertexSet::EMPTY;
            for u in t {
                boundary = boundary.union(self.adj[u - 1]);
            }
            for u in boundary.difference(t) {
                let bigger = t.with(u);
                if seen.insert(bigger) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort();
        out
    }

    pub fn induced_subgraph(&self, set: VertexSet) -> Result<LabeledGraph> {
        self.check_set(set)?;
        let adj = (1..=set.max().unwrap_or(0))
            .map(|v| if set.contains(v) { self.adj[v - 1].intersection(set) } else { VertexSet::EMPTY })
            .collect();
        Ok(LabeledGraph { vertices: set, adj })
    }

    /// `G \ I`, the subgraph induced on the complement of `set`.
    pub fn delete(&self, set: VertexSet) -> Result<LabeledGraph> {
        self.check_set(set)?;
        self.induced_subgraph(self.vertices().difference(set))
    }

    /// `G / I`, the reconnected complement: `{i, j}` is an edge when it is an
    /// edge of `G` or both endpoints have a neighbor in a common component of `G|_I`.
    pub fn contract(&self, set: VertexSet) -> Result<LabeledGraph> {
        self.check_set(set)?;
        let rest = self.vertices().difference(set);
        let mut h = self.induced_subgraph(rest)?;
        for c in self.components(set) {
            let mut touching = VertexSet::EMPTY;
            for u in c {
                touching = touching.union(self.adj[u - 1]);
            }
            let touching = touching.intersection(rest);
            for v in touching {
                h.adj[v - 1] = h.adj[v - 1].union(touching.without(v));
            }
        }
        Ok(h)
    }

    pub fn std_induced(&self, set: VertexSet) -> Result<Graph> {
        Ok(self.induced_subgraph(set)?.standardize().0)
    }

    pub fn std_contract(&self, set: VertexSet) -> Result<Graph> {
        Ok(self.contract(set)?.standardize().0)
    }

    pub fn filled_status(&self) -> FilledStatus {
        FilledStatus {
            right_filled: self.right_filled_violation().is_none(),
            left_filled: self.left_filled_violation().is_none(),
            filled: self.filled_violation().is_none(),
        }
    }

    /// First edge `{i,k}` and chord `{j,k}` (i<j<k) missing from the graph.
    pub fn right_filled_violation(&self) -> Option<FillViolation> {
        self.fill_violation(false, true)
    }

    /// First edge `{i,k}` and chord `{i,j}` (i<j<k) missing from the graph.
    pub fn left_filled_violation(&self) -> Option<FillViolation> {
        self.fill_violation(true, false)
    }

    pub fn filled_violation(&self) -> Option<FillViolation> {
        self.fill_violation(true, true)
    }

    fn fill_violation(&self, left: bool, right: bool) -> Option<FillViolation> {
        for (i, k) in self.edges() {
            for j in i + 1..k {
                if left && !self.has_edge(i, j) {
                    return Some(FillViolation { edge: (i, k), missing: (i, j) });
                }
                if right && !self.has_edge(j, k) {
                    return Some(FillViolation { edge: (i, k), missing: (j, k) });
                }
            }
        }
        None
    }

    pub fn is_filled(&self) -> bool {
        self.filled_violation().is_none()
    }

    pub fn is_right_filled(&self) -> bool {
        self.right_filled_violation().is_none()
    }

    pub fn is_left_filled(&self) -> bool {
        self.left_filled_violation().is_none()
    }

    /// Non-edges `x < y` with every `x < z < y` adjacent to both ends.
    pub fn minimal_non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 1..=self.n {
            for y in x + 1..=self.n {
                if !self.has_edge(x, y)
                    && (x + 1..y).all(|z| self.has_edge(x, z) && self.has_edge(z, y))
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// The graph with `i` relabeled `n + 1 - i`.
    pub fn dual(&self) -> Graph {
        let n = self.n;
        let mut g = Graph::edgeless(n);
        for (i, j) in self.edges() {
            g.add_edge(n + 1 - i, n + 1 - j);
        }
        g
    }

    /// All standardized graphs reachable by single-vertex deletions and
    /// contractions, including `G` itself, in canonical order.
    pub fn minors(&self) -> Vec<Graph> {
        let mut seen: HashSet<Graph> = HashSet::new();
        let mut stack = vec![self.clone()];
        seen.insert(self.clone());
        while let Some(g) = stack.pop() {
            for v in 1..=g.n {
                let s = VertexSet::singleton(v);
                for h in [g.std_induced(g.vertices().without(v)), g.std_contract(s)] {
                    let h = h.expect("vertex in range");
                    if seen.insert(h.clone()) {
                        stack.push(h);
                    }
                }
            }
        }
        let mut out: Vec<Graph> = seen.into_iter().collect();
        out.sort_by(|a, b| b.n.cmp(&a.n).then_with(|| a.edges().cmp(&b.edges())));
        out
    }

    /// Every graph on `[n]`, indexed by a bitmask over the pairs in lexicographic order.
    pub fn all_graphs(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e);
                Graph::new(n, edges).expect("valid pairs")
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_set(self.vertices())
    }

    pub fn path(n: usize) -> Graph {
        Self::from_distances(n, &DistanceSet::finite([1]))
    }

    pub fn complete(n: usize) -> Graph {
        Self::from_distances(n, &DistanceSet::All)
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(1, n);
        }
        g
    }

    pub fn odd_bipartite(n: usize) -> Graph {
        Self::from_distances(n, &DistanceSet::Odd)
    }

    /// `H_{k,n}`: edges between vertices at distance at most `k`.
    pub fn h_graph(k: usize, n: usize) -> Graph {
        Self::from_distances(n, &DistanceSet::finite(1..=k))
    }

    /// `{i, j}` is an edge iff `|j - i|` lies in `a`.
    pub fn from_distances(n: usize, a: &DistanceSet) -> Graph {
        let mut g = Graph::edgeless(n);
        for i in 1..=n {
            for j in i + 1..=n {
                if a.contains(j - i) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Parse a descriptor such as `path:5`, `h:2:6` or `A:{1,3}:5`.
    pub fn from_descriptor(desc: &str) -> Result<Graph> {
        let (fam, n) = desc
            .rsplit_once(':')
            .ok_or_else(|| Error::Parse(format!("graph descriptor `{desc}` lacks `:n`")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count in `{desc}`")))?;
        if n > MAX_VERTICES {
            return Err(Error::InvalidVertex(n));
        }
        Ok(GraphFamily::from_descriptor(fam)?.graph(n))
    }

    /// Text format: `n` on the first line, then `i j` per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |l: &str| Error::Parse(format!("bad graph line `{l}`"));
        let first = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n: usize = first.parse().map_err(|_| bad(first))?;
        let mut edges = Vec::new();
        for l in lines {
            let mut it = l.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => edges.push((i, j)),
                _ => return Err(bad(l)),
            }
        }
        Graph::new(n, edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson { n: self.n, edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect() })
            .expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Graph> {
        let g: GraphJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::new(g.n, g.edges.into_iter().map(|[i, j]| (i, j)))
    }

    /// Accepts either the JSON or the text format.
    pub fn parse_file_contents(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            let v: serde_json::Value =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            Graph::from_json(&v)
        } else {
            Graph::from_text(text)
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.n)?;
        for (i, j) in self.edges() {
            write!(f, " {i}-{j}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FilledStatus {
    pub filled: bool,
    pub right_filled: bool,
    pub left_filled: bool,
}

/// An edge and the chord it forces that is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FillViolation {
    pub edge: (usize, usize),
    pub missing: (usize, usize),
}

/// A graph whose vertices are an arbitrary subset of `{1, ..., 32}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: VertexSet,
    adj: Vec<VertexSet>,
}

impl LabeledGraph {
    pub fn new(vertices: VertexSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let top = vertices.max().unwrap_or(0);
        let mut adj = vec![VertexSet::EMPTY; top];
        for (i, j) in edges {
            for v in [i, j] {
                if !vertices.contains(v) {
                    return Err(Error::InvalidVertex(v));
                }
            }
            adj[i - 1].insert(j);
            adj[j - 1].insert(i);
        }
        Ok(LabeledGraph { vertices, adj })
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.vertices.contains(i) && self.adj[i - 1].contains(j)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.vertices {
            for j in self.adj[i - 1].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Order-preserving relabeling onto `[m]`. `labels[k]` is the original
    /// label of standardized vertex `k + 1`.
    pub fn standardize(&self) -> (Graph, Vec<usize>) {
        let labels = self.vertices.to_vec();
        let mut pos = vec![0usize; self.adj.len() + 1];
        for (k, &v) in labels.iter().enumerate() {
            pos[v] = k + 1;
        }
        let mut g = Graph::edgeless(labels.len());
        for (i, j) in self.edges() {
            g.add_edge(pos[i], pos[j]);
        }
        (g, labels)
    }
}

/// Map a set of original labels onto standardized vertices.
pub fn standardize_set(set: VertexSet, labels: &[usize]) -> VertexSet {
    labels.iter().enumerate().filter(|(_, &v)| set.contains(v)).map(|(k, _)| k + 1).collect()
}

/// A set of positive distances, as used by `G(A)` families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DistanceSet {
    Finite(BTreeSet<usize>),
    All,
    Odd,
}

impl DistanceSet {
    pub fn finite(items: impl IntoIterator<Item = usize>) -> Self {
        DistanceSet::Finite(items.into_iter().collect())
    }

    pub fn contains(&self, d: usize) -> bool {
        match self {
            DistanceSet::Finite(s) => s.contains(&d),
            DistanceSet::All => d >= 1,
            DistanceSet::Odd => d % 2 == 1,
        }
    }

    /// `A ⊆ B`, decided exactly.
    pub fn is_subset(&self, other: &DistanceSet) -> bool {
        match (self, other) {
            (_, DistanceSet::All) => true,
            (DistanceSet::Finite(a), b) => a.iter().all(|&d| b.contains(d)),
            (DistanceSet::Odd, DistanceSet::Odd) => true,
            _ => false,
        }
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceSet::All => write!(f, "all"),
            DistanceSet::Odd => write!(f, "odd"),
            DistanceSet::Finite(s) => {
                let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

type Rule = Arc<dyn Fn(usize) -> Graph + Send + Sync>;

/// A one-parameter family: one graph on `[n]` for each degree `n`.
#[derive(Clone)]
pub enum GraphFamily {
    FromA(DistanceSet),
    Path,
    Complete,
    EdgeFree,
    Cycle,
    OddBipartite,
    H(usize),
    Custom { name: String, rule: Rule },
}

impl GraphFamily {
    pub fn custom(name: &str, rule: impl Fn(usize) -> Graph + Send + Sync + 'static) -> Self {
        GraphFamily::Custom { name: name.to_string(), rule: Arc::new(rule) }
    }

    pub fn graph(&self, n: usize) -> Graph {
        match self {
            GraphFamily::Cycle => Graph::cycle(n),
            GraphFamily::Custom { rule, .. } => {
                let g = rule(n);
                assert_eq!(g.n(), n, "family rule returned a graph of the wrong size");
                g
            }
            other => Graph::from_distances(n, &other.distance_set().expect("distance family")),
        }
    }

    /// The distance set `A` when the family is `G(A)` by construction.
    pub fn distance_set(&self) -> Option<DistanceSet> {
        match self {
            GraphFamily::FromA(a) => Some(a.clone()),
            GraphFamily::Path => Some(DistanceSet::finite([1])),
            GraphFamily::Complete => Some(DistanceSet::All),
            GraphFamily::EdgeFree => Some(DistanceSet::finite([])),
            GraphFamily::OddBipartite => Some(DistanceSet::Odd),
            GraphFamily::H(k) => Some(DistanceSet::finite(1..=*k)),
            GraphFamily::Cycle | GraphFamily::Custom { .. } => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GraphFamily::FromA(a) => format!("A:{a}"),
            GraphFamily::Path => "path".into(),
            GraphFamily::Complete => "complete".into(),
            GraphFamily::EdgeFree => "empty".into(),
            GraphFamily::Cycle => "cycle".into(),
            GraphFamily::OddBipartite => "oddbip".into(),
            GraphFamily::H(k) => format!("h:{k}"),
            GraphFamily::Custom { name, .. } => name.clone(),
        }
    }

    /// Parse `path`, `complete`, `empty`, `cycle`, `oddbip`, `h:<k>`,
    /// `A:{a1,a2,...}` or `A:all`.
    pub fn from_descriptor(desc: &str) -> Result<GraphFamily> {
        let bad = || Error::Parse(format!("unknown family `{desc}`"));
        let desc = desc.trim();
        Ok(match desc {
            "path" => GraphFamily::Path,
            "complete" => GraphFamily::Complete,
            "empty" => GraphFamily::EdgeFree,
            "cycle" => GraphFamily::Cycle,
            "oddbip" => GraphFamily::OddBipartite,
            "A:all" => GraphFamily::FromA(DistanceSet::All),
            _ => {
                if let Some(k) = desc.strip_prefix("h:") {
                    GraphFamily::H(k.parse().map_err(|_| bad())?)
                } else if let Some(body) = desc.strip_prefix("A:{").and_then(|s| s.strip_suffix('}')) {
                    let mut set = BTreeSet::new();
                    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let d: usize = item.parse().map_err(|_| bad())?;
                        if d == 0 {
                            return Err(bad());
                        }
                        set.insert(d);
                    }
                    GraphFamily::FromA(DistanceSet::Finite(set))
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl fmt::Debug for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphFamily({})", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn lg(vs: &[usize], edges: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(set(vs), edges.iter().copied()).unwrap()
    }

    // Brute-force contraction straight from the definition: quantify over
    // every connected subset J of I.
    fn contract_oracle(gr: &Graph, i_set: VertexSet) -> LabeledGraph {
        let rest = gr.vertices().difference(i_set);
        let sub_tubes: Vec<VertexSet> = (1u32..1 << gr.n())
            .map(VertexSet::from_bits)
            .filter(|j| j.is_subset(i_set) && gr.is_connected_set(*j))
            .collect();
        let mut edges = Vec::new();
        for a in rest {
            for b in rest.iter().filter(|&b| b > a) {
                let via = sub_tubes.iter().any(|j| {
                    j.iter().any(|x| gr.has_edge(a, x)) && j.iter().any(|x| gr.has_edge(b, x))
                });
                if gr.has_edge(a, b) || via {
                    edges.push((a, b));
                }
            }
        }
        LabeledGraph::new(rest, edges).unwrap()
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.induced_subgraph(set(&[1, 3])).unwrap(), lg(&[1, 3], &[(1, 3)]));
        let p3 = Graph::path(3);
        assert_eq!(p3.induced_subgraph(set(&[1, 3])).unwrap(), lg(&[1, 3], &[]));
        let c4 = Graph::cycle(4);
        assert_eq!(c4.induced_subgraph(set(&[1, 2, 4])).unwrap(), lg(&[1, 2, 4], &[(1, 2), (1, 4)]));
        assert_eq!(p3.induced_subgraph(set(&[4])), Err(Error::InvalidVertex(4)));
    }

    #[test]
    fn standardize_examples() {
        let (k2, labels) = lg(&[2, 5], &[(2, 5)]).standardize();
        assert_eq!(k2, Graph::complete(2));
        assert_eq!(labels, vec![2, 5]);
        assert_eq!(lg(&[1, 3, 4], &[(1, 3), (3, 4)]).standardize().0, Graph::path(3));
        assert_eq!(lg(&[7], &[]).standardize().0, Graph::edgeless(1));
    }

    #[test]
    fn delete_examples() {
        assert_eq!(Graph::complete(3).delete(set(&[2])).unwrap(), lg(&[1, 3], &[(1, 3)]));
        assert_eq!(Graph::path(3).delete(set(&[2])).unwrap(), lg(&[1, 3], &[]));
        assert_eq!(Graph::cycle(4).delete(set(&[1])).unwrap(), lg(&[2, 3, 4], &[(2, 3), (3, 4)]));
    }

    #[test]
    fn contract_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.contract(set(&[2])).unwrap(), lg(&[1, 3, 4], &[(1, 3), (1, 4), (3, 4)]));
        assert_eq!(c4.contract(VertexSet::EMPTY).unwrap().standardize().0, c4);
        assert_eq!(Graph::path(3).contract(set(&[1, 3])).unwrap(), lg(&[2], &[]));
    }

    #[test]
    fn contract_matches_definition_and_contains_deletion() {
        for n in 0..=5 {
            for gr in Graph::all_graphs(n) {
                for bits in 0u32..1 << n {
                    let s = VertexSet::from_bits(bits);
                    let c = gr.contract(s).unwrap();
                    assert_eq!(c, contract_oracle(&gr, s), "{gr:?} / {s}");
                    let d = gr.delete(s).unwrap();
                    assert!(d.edges().iter().all(|&(i, j)| c.has_edge(i, j)));
                }
            }
        }
    }

    #[test]
    fn tube_examples() {
        let p3 = Graph::path(3);
        assert!(!p3.is_tube(set(&[1, 3])).unwrap());
        assert!(p3.is_tube(set(&[1, 2])).unwrap());
        assert!(!p3.is_tube(VertexSet::EMPTY).unwrap());
        assert_eq!(Graph::complete(3).tubes().len(), 7);
        assert_eq!(Graph::edgeless(3).tubes(), vec![set(&[1]), set(&[2]), set(&[3])]);
        let expected: Vec<VertexSet> =
            [&[1][..], &[2], &[3], &[1, 2], &[2, 3], &[1, 2, 3]].iter().map(|v| set(v)).collect();
        assert_eq!(p3.tubes(), expected);
    }

    #[test]
    fn tubes_match_subset_filter() {
        for n in 0..=5 {
            for gr in Graph::all_graphs(n) {
                let mut oracle: Vec<VertexSet> = (1u32..1 << n)
                    .map(VertexSet::from_bits)
                    .filter(|s| {
                        // connectivity by repeated edge relaxation, independent of component_of
                        let vs = s.to_vec();
                        let mut reach = vec![vs[0]];
                        let mut changed = true;
                        while changed {
                            changed = false;
                            for &v in &vs {
                                if !reach.contains(&v) && reach.iter().any(|&r| gr.has_edge(r, v)) {
                                    reach.push(v);
                                    changed = true;
                                }
                            }
                        }
                        reach.len() == vs.len()
                    })
                    .collect();
                oracle.sort();
                assert_eq!(gr.tubes(), oracle);
            }
        }
    }

    #[test]
    fn filled_examples() {
        for k in 0..5 {
            for n in 0..7 {
                assert!(Graph::h_graph(k, n).is_filled());
            }
        }
        let c4 = Graph::cycle(4);
        assert_eq!(c4.filled_violation(), Some(FillViolation { edge: (1, 4), missing: (2, 4) }));
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        let st = star.filled_status();
        assert!(st.left_filled && !st.right_filled && !st.filled);
    }

    #[test]
    fn filled_is_left_and_right() {
        for n in 0..=5 {
            for gr in Graph::all_graphs(n) {
                let st = gr.filled_status();
                assert_eq!(st.filled, st.left_filled && st.right_filled);
            }
        }
    }

    #[test]
    fn minimal_non_edge_examples() {
        for k in 0..4 {
            let h = Graph::h_graph(k, 7);
            let expected: Vec<(usize, usize)> = (1..=7).filter(|i| i + k < 7).map(|i| (i, i + k + 1)).collect();
            assert_eq!(h.minimal_non_edges(), expected);
        }
        assert!(Graph::complete(5).minimal_non_edges().is_empty());
        assert_eq!(Graph::path(3).minimal_non_edges(), vec![(1, 3)]);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(Graph::path(3).dual(), Graph::path(3));
        assert_eq!(g(3, &[(1, 3), (2, 3)]).dual(), g(3, &[(1, 2), (1, 3)]));
        for n in 0..=5 {
            for gr in Graph::all_graphs(n) {
                assert_eq!(gr.dual().dual(), gr);
                assert_eq!(gr.is_right_filled(), gr.dual().is_left_filled());
            }
        }
    }

    #[test]
    fn minor_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(k2.minors(), vec![k2.clone(), Graph::edgeless(1), Graph::edgeless(0)]);
        let m = Graph::path(3).minors();
        assert!(m.contains(&Graph::complete(2)));
        assert!(m.contains(&Graph::edgeless(2)));
        assert!(m.contains(&Graph::path(3)));
    }

    #[test]
    fn families_and_descriptors() {
        assert_eq!(Graph::cycle(2), Graph::complete(2));
        assert_eq!(Graph::cycle(4).edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert_eq!(Graph::odd_bipartite(4).edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert_eq!(Graph::from_descriptor("h:2:4").unwrap(), Graph::h_graph(2, 4));
        assert_eq!(Graph::from_descriptor("A:{1,3}:5").unwrap(), Graph::from_distances(5, &DistanceSet::finite([1, 3])));
        assert_eq!(Graph::from_descriptor("A:all:4").unwrap(), Graph::complete(4));
        assert_eq!(Graph::from_descriptor("empty:3").unwrap(), Graph::edgeless(3));
        assert!(Graph::from_descriptor("path").is_err());
        assert!(Graph::from_descriptor("bogus:3").is_err());
        // admissibility of G(A): restrictions to prefixes and shifted suffixes
        for a in [DistanceSet::finite([1, 3]), DistanceSet::Odd, DistanceSet::All] {
            let big = Graph::from_distances(7, &a);
            for n in 0..=7 {
                let m = 7 - n;
                assert_eq!(big.std_induced(VertexSet::full(n)).unwrap(), Graph::from_distances(n, &a));
                assert_eq!(
                    big.std_induced(VertexSet::full(m).shift(n)).unwrap(),
                    Graph::from_distances(m, &a)
                );
            }
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.to_text(), "4\n1 2\n1 4\n2 3\n3 4\n");
        assert_eq!(Graph::from_text(&c4.to_text()).unwrap(), c4);
        assert_eq!(Graph::from_json(&c4.to_json()).unwrap(), c4);
        assert_eq!(serde_json::to_string(&c4.to_json()).unwrap(), r#"{"n":4,"edges":[[1,2],[1,4],[2,3],[3,4]]}"#);
        assert!(Graph::from_text("3\n1 1\n").is_err());
        assert!(Graph::from_text("2\n1 3\n").is_err());
    }
}

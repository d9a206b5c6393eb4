//! Tubes, maximal tubings and their G-forests.

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{standardize_set, Graph, LabeledGraph};
use crate::par;
use crate::perm::Permutation;
use crate::vset::VertexSet;

/// Above this size `enumerate_maximal_tubings` stops sweeping `S_n`.
pub const SWEEP_LIMIT: usize = 8;

/// `I` and `J` are nested, or their union is not a tube.
pub fn compatible(g: &Graph, i: VertexSet, j: VertexSet) -> Result<bool> {
    for t in [i, j] {
        if !g.is_tube(t)? {
            return Err(Error::NotATube(t.to_string()));
        }
    }
    Ok(compatible_tubes(g, i, j))
}

pub(crate) fn compatible_tubes(g: &Graph, i: VertexSet, j: VertexSet) -> bool {
    i.is_subset(j) || j.is_subset(i) || !g.is_connected_set(i.union(j))
}

/// A set of pairwise compatible tubes of a graph on `[n]`, stored in
/// canonical order (size, then lexicographic).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tubing {
    n: usize,
    tubes: Vec<VertexSet>,
}

impl Tubing {
    pub fn new(g: &Graph, tubes: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let t = Tubing::from_raw(g.n(), tubes.into_iter().collect());
        for (a, &i) in t.tubes.iter().enumerate() {
            if !g.is_tube(i)? {
                return Err(Error::NotATube(i.to_string()));
            }
            if let Some(&j) = t.tubes[..a].iter().find(|&&j| !compatible_tubes(g, i, j)) {
                return Err(Error::InvalidTubing(format!("{i} and {j} are not compatible")));
            }
        }
        Ok(t)
    }

    /// Canonicalize without validation.
    pub(crate) fn from_raw(n: usize, mut tubes: Vec<VertexSet>) -> Self {
        tubes.sort();
        tubes.dedup();
        Tubing { n, tubes }
    }

    /// The unique maximal tubing of the empty graph.
    pub fn empty(n: usize) -> Self {
        Tubing { n, tubes: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tubes(&self) -> &[VertexSet] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tubes.is_empty()
    }

    pub fn contains(&self, tube: VertexSet) -> bool {
        self.tubes.binary_search(&tube).is_ok()
    }

    pub fn is_subset(&self, other: &Tubing) -> bool {
        self.tubes.iter().all(|&t| other.contains(t))
    }

    /// A tubing of `g` is maximal iff it has `n` tubes.
    pub fn is_maximal(&self) -> bool {
        self.tubes.len() == self.n
    }

    /// Add the vertex sets of all components of `g`.
    pub fn with_components(&self, g: &Graph) -> Tubing {
        let mut tubes = self.tubes.clone();
        tubes.extend(g.components(g.vertices()));
        Tubing::from_raw(self.n, tubes)
    }

    /// Parse `{1}{1,2}{3}`; separators between groups are ignored.
    pub fn parse(g: &Graph, s: &str) -> Result<Tubing> {
        let mut tubes = Vec::new();
        let mut rest = s.trim();
        while let Some(open) = rest.find('{') {
            let close = rest[open..]
                .find('}')
                .ok_or_else(|| Error::Parse(format!("unbalanced braces in `{s}`")))?;
            let body = &rest[open + 1..open + close];
            let mut t = VertexSet::EMPTY;
            for item in body.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let v: usize = item.parse().map_err(|_| Error::Parse(format!("bad vertex `{item}`")))?;
                if v == 0 || v > g.n() {
                    return Err(Error::InvalidVertex(v));
                }
                t.insert(v);
            }
            tubes.push(t);
            rest = &rest[open + close + 1..];
        }
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Tubing::new(g, tubes)
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({
            "graph": g.to_json(),
            "tubes": self.tubes.iter().map(|t| t.to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<(Graph, Tubing)> {
        #[derive(Deserialize)]
        struct Raw {
            graph: serde_json::Value,
            tubes: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let g = Graph::from_json(&raw.graph)?;
        let mut tubes = Vec::new();
        for t in raw.tubes {
            if let Some(&v) = t.iter().find(|&&v| v == 0 || v > g.n()) {
                return Err(Error::InvalidVertex(v));
            }
            tubes.push(t.into_iter().collect());
        }
        let x = Tubing::new(&g, tubes)?;
        Ok((g, x))
    }
}

impl fmt::Display for Tubing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tubes.is_empty() {
            return write!(f, "{{}}");
        }
        for t in &self.tubes {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tubing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ψ_G(w): `X_j` is the component of `G|_{w_1..w_j}` containing `w_j`.
pub fn psi(g: &Graph, w: &Permutation) -> Result<Tubing> {
    if w.len() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), found: w.len() });
    }
    Ok(psi_unchecked(g, w))
}

pub(crate) fn psi_unchecked(g: &Graph, w: &Permutation) -> Tubing {
    let mut prefix = VertexSet::EMPTY;
    let mut tubes = Vec::with_capacity(w.len());
    for &v in w.word() {
        prefix.insert(v);
        tubes.push(g.component_of(v, prefix));
    }
    Tubing::from_raw(g.n(), tubes)
}

/// Every maximal tubing of `g`, in canonical order.
///
/// Up to [`SWEEP_LIMIT`] vertices this takes the image of Ψ_G over `S_n`;
/// larger graphs use [`enumerate_by_decomposition`].
pub fn enumerate_maximal_tubings(g: &Graph) -> Vec<Tubing> {
    if g.n() <= SWEEP_LIMIT {
        enumerate_by_sweep(g)
    } else {
        enumerate_by_decomposition(g)
    }
}

pub fn enumerate_by_sweep(g: &Graph) -> Vec<Tubing> {
    let perms = Permutation::all(g.n());
    let mut out = par::map(&perms, |w| psi_unchecked(g, w));
    out.sort_unstable();
    out.dedup();
    out
}

/// Recursive enumeration: a connected vertex set `S` contributes `S` plus a
/// maximal tubing of `S - r` for each choice of root `r`; components multiply.
pub fn enumerate_by_decomposition(g: &Graph) -> Vec<Tubing> {
    let mut memo = HashMap::new();
    let all = g.vertices();
    let roots: Vec<usize> = if g.is_connected() { all.to_vec() } else { Vec::new() };
    let mut out: Vec<Tubing> = if roots.is_empty() {
        decompose(g, all, &mut memo)
            .into_iter()
            .map(|t| Tubing::from_raw(g.n(), t))
            .collect()
    } else {
        // top-level root choices are independent
        par::flat_map_range(roots.len(), |k| {
            let mut memo = HashMap::new();
            decompose(g, all.without(roots[k]), &mut memo)
                .into_iter()
                .map(|mut t| {
                    t.push(all);
                    Tubing::from_raw(g.n(), t)
                })
                .collect()
        })
    };
    out.sort_unstable();
    out
}

fn decompose(
    g: &Graph,
    s: VertexSet,
    memo: &mut HashMap<VertexSet, Vec<Vec<VertexSet>>>,
) -> Vec<Vec<VertexSet>> {
    if s.is_empty() {
        return vec![Vec::new()];
    }
    if let Some(hit) = memo.get(&s) {
        return hit.clone();
    }
    let comps = g.components(s);
    let result = if comps.len() > 1 {
        let mut acc: Vec<Vec<VertexSet>> = vec![Vec::new()];
        for c in comps {
            let part = decompose(g, c, memo);
            acc = acc
                .iter()
                .flat_map(|a| part.iter().map(move |b| a.iter().chain(b).copied().collect()))
                .collect();
        }
        acc
    } else {
        let mut acc = Vec::new();
        for r in s {
            for mut t in decompose(g, s.without(r), memo) {
                t.push(s);
                acc.push(t);
            }
        }
        acc
    };
    memo.insert(s, result.clone());
    result
}

/// Every tubing of `g`, including the empty one, in canonical order.
pub fn all_tubings(g: &Graph) -> Vec<Tubing> {
    let tubes = g.tubes();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_tubings(g, &tubes, 0, &mut chosen, &mut out);
    out.sort();
    out
}

fn extend_tubings(g: &Graph, tubes: &[VertexSet], from: usize, chosen: &mut Vec<VertexSet>, out: &mut Vec<Tubing>) {
    out.push(Tubing::from_raw(g.n(), chosen.clone()));
    for k in from..tubes.len() {
        let t = tubes[k];
        if chosen.iter().all(|&c| compatible_tubes(g, c, t)) {
            chosen.push(t);
            extend_tubings(g, tubes, k + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// The unique vertex of `tube` lying in no smaller tube of `x` inside it.
pub fn top(x: &Tubing, tube: VertexSet) -> Result<usize> {
    if !x.contains(tube) {
        return Err(Error::TubeNotInTubing(tube.to_string()));
    }
    let covered = x
        .tubes
        .iter()
        .filter(|&&j| j != tube && j.is_subset(tube))
        .fold(VertexSet::EMPTY, |acc, &j| acc.union(j));
    let rest = tube.difference(covered);
    if rest.len() != 1 {
        return Err(Error::InvalidTubing(format!("{tube} has no unique top in {x}")));
    }
    Ok(rest.min().unwrap())
}

/// A forest poset on `[n]` given by parent pointers (`0` marks a root).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GForest {
    parent: Vec<usize>,
}

impl GForest {
    /// Validate the G-forest conditions: principal ideals are tubes and
    /// incomparable ideals have non-tube unions.
    pub fn new(g: &Graph, parent: Vec<usize>) -> Result<Self> {
        let n = g.n();
        if parent.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: parent.len() });
        }
        if let Some(&p) = parent.iter().find(|&&p| p > n) {
            return Err(Error::InvalidVertex(p));
        }
        for v in 1..=n {
            let mut cur = v;
            for _ in 0..=n {
                cur = parent[cur - 1];
                if cur == 0 {
                    break;
                }
            }
            if cur != 0 {
                return Err(Error::InvalidForest(format!("parent map has a cycle through {v}")));
            }
        }
        let f = GForest { parent };
        let down = f.down_sets();
        for i in 1..=n {
            if !g.is_connected_set(down[i]) {
                return Err(Error::InvalidForest(format!("{} is not a tube", down[i])));
            }
            for k in i + 1..=n {
                let comparable = down[i].contains(k) || down[k].contains(i);
                if !comparable && g.is_connected_set(down[i].union(down[k])) {
                    return Err(Error::InvalidForest(format!(
                        "{i} and {k} are incomparable but {} is a tube",
                        down[i].union(down[k])
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Parent pointers, `0` for roots.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v - 1]
    }

    pub fn children(&self, v: usize) -> VertexSet {
        (1..=self.n()).filter(|&c| self.parent[c - 1] == v).collect()
    }

    pub fn roots(&self) -> VertexSet {
        self.children(0)
    }

    /// `down[i]` is the principal ideal `i_↓` (index 0 unused).
    pub fn down_sets(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut down: Vec<VertexSet> = (0..=n).map(|v| if v == 0 { VertexSet::EMPTY } else { VertexSet::singleton(v) }).collect();
        // push each vertex into all of its ancestors
        for v in 1..=n {
            let mut cur = self.parent[v - 1];
            while cur != 0 {
                down[cur].insert(v);
                cur = self.parent[cur - 1];
            }
        }
        down
    }

    /// `i <=_T k`.
    pub fn le(&self, i: usize, k: usize) -> bool {
        let mut cur = i;
        while cur != 0 {
            if cur == k {
                return true;
            }
            cur = self.parent[cur - 1];
        }
        false
    }

    /// All `w` in which every element precedes its ancestors, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Permutation> {
        let n = self.n();
        let pending: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { self.children(v).len() }).collect();
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(n);
        self.extend_linear(&mut pending.clone(), &mut word, &mut out);
        out
    }

    fn extend_linear(&self, pending: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let n = self.n();
        if word.len() == n {
            out.push(Permutation::from_vec_unchecked(word.clone()));
            return;
        }
        for v in 1..=n {
            if pending[v] == 0 && !word.contains(&v) {
                let p = self.parent[v - 1];
                if p != 0 {
                    pending[p] -= 1;
                }
                word.push(v);
                self.extend_linear(pending, word, out);
                word.pop();
                if p != 0 {
                    pending[p] += 1;
                }
            }
        }
    }

    fn greedy_extension(&self, largest: bool) -> Permutation {
        let n = self.n();
        let mut pending: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { self.children(v).len() }).collect();
        let mut placed = VertexSet::EMPTY;
        let mut word = Vec::with_capacity(n);
        for _ in 0..n {
            let ready = (1..=n).filter(|&v| pending[v] == 0 && !placed.contains(v));
            let v = if largest { ready.max() } else { ready.min() }.expect("forest has a minimal element");
            placed.insert(v);
            let p = self.parent[v - 1];
            if p != 0 {
                pending[p] -= 1;
            }
            word.push(v);
        }
        Permutation::from_vec_unchecked(word)
    }

    /// σ(T), the lexicographically smallest linear extension.
    pub fn sigma_min(&self) -> Permutation {
        self.greedy_extension(false)
    }

    /// σ*(T), the lexicographically largest linear extension.
    pub fn sigma_max(&self) -> Permutation {
        self.greedy_extension(true)
    }

    /// σ by concatenation: trees in increasing order of their least element,
    /// each tree read recursively with its root last.
    pub fn sigma_recursive(&self) -> Permutation {
        let mut word = Vec::with_capacity(self.n());
        self.concat(0, false, &mut word);
        Permutation::from_vec_unchecked(word)
    }

    /// σ* by concatenation with the trees taken in reverse order.
    pub fn sigma_star_recursive(&self) -> Permutation {
        let mut word = Vec::with_capacity(self.n());
        self.concat(0, true, &mut word);
        Permutation::from_vec_unchecked(word)
    }

    fn concat(&self, v: usize, reversed: bool, word: &mut Vec<usize>) {
        let down = self.down_sets();
        let mut kids: Vec<usize> = self.children(v).to_vec();
        kids.sort_by_key(|&c| down[c].min());
        if reversed {
            kids.reverse();
        }
        for c in kids {
            self.concat(c, reversed, word);
        }
        if v != 0 {
            word.push(v);
        }
    }

    /// Pairs `(i, j)` with `i < j` and `j <_T i`.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let down = self.down_sets();
        let mut out = Vec::new();
        for i in 1..=self.n() {
            for j in down[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Pairs `(i, k)` with `k` a child of `i` and `i < k`.
    pub fn descents(&self) -> Vec<(usize, usize)> {
        self.child_pairs(|i, k| i < k)
    }

    /// Pairs `(i, k)` with `k` a child of `i` and `i > k`.
    pub fn ascents(&self) -> Vec<(usize, usize)> {
        self.child_pairs(|i, k| i > k)
    }

    fn child_pairs(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (1..=self.n())
            .filter_map(|k| {
                let i = self.parent[k - 1];
                (i != 0 && keep(i, k)).then_some((i, k))
            })
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        serde_json::json!({ "graph": g.to_json(), "parent": self.parent })
    }
}

impl fmt::Debug for GForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GForest{:?}", self.parent)
    }
}

/// τ(X): the parent of `top(I)` is the top of the smallest tube strictly containing `I`.
pub fn tau(x: &Tubing) -> Result<GForest> {
    if !x.is_maximal() {
        return Err(Error::InvalidTubing(format!("{x} is not maximal")));
    }
    let tops = tops(x)?;
    let mut parent = vec![0; x.n];
    let mut seen = VertexSet::EMPTY;
    for (a, &i) in x.tubes.iter().enumerate() {
        let t = tops[a];
        if seen.contains(t) {
            return Err(Error::InvalidTubing(format!("top {t} repeats in {x}")));
        }
        seen.insert(t);
        // tubes are sorted by size, so the first strict superset is the smallest
        if let Some(b) = (a + 1..x.tubes.len()).find(|&b| i.is_subset(x.tubes[b]) && i != x.tubes[b]) {
            parent[t - 1] = tops[b];
        }
    }
    Ok(GForest { parent })
}

/// Tops of all tubes, aligned with `x.tubes()`.
pub fn tops(x: &Tubing) -> Result<Vec<usize>> {
    x.tubes.iter().map(|&t| top(x, t)).collect()
}

/// χ(T) = {i_↓}.
pub fn chi(t: &GForest) -> Tubing {
    let down = t.down_sets();
    Tubing::from_raw(t.n(), down[1..].to_vec())
}

/// A tubing of a graph with arbitrary vertex labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTubing {
    pub graph: LabeledGraph,
    pub tubes: Vec<VertexSet>,
}

impl LabeledTubing {
    pub fn standardize(&self) -> (Graph, Tubing) {
        let (g, labels) = self.graph.standardize();
        let tubes = self.tubes.iter().map(|&t| standardize_set(t, &labels)).collect();
        let n = g.n();
        (g, Tubing::from_raw(n, tubes))
    }
}

/// X|_I = the components of `I ∩ J` over all `J` in `x`.
pub fn restrict_tubing(g: &Graph, x: &Tubing, set: VertexSet) -> Result<LabeledTubing> {
    let graph = g.induced_subgraph(set)?;
    let mut tubes: Vec<VertexSet> = x
        .tubes
        .iter()
        .flat_map(|&j| g.components(j.intersection(set)))
        .collect();
    tubes.sort();
    tubes.dedup();
    Ok(LabeledTubing { graph, tubes })
}

/// An ideal: every component of `G|_I` is a tube of `x`.
pub fn is_ideal(g: &Graph, x: &Tubing, set: VertexSet) -> bool {
    set.is_subset(g.vertices()) && g.components(set).into_iter().all(|c| x.contains(c))
}

/// X/I = {J \ I : J ∈ X, J ⊄ I} as a tubing of G/I.
pub fn quotient_tubing(g: &Graph, x: &Tubing, set: VertexSet) -> Result<LabeledTubing> {
    let graph = g.contract(set)?;
    if !is_ideal(g, x, set) {
        return Err(Error::NotAnIdeal(set.to_string()));
    }
    let mut tubes: Vec<VertexSet> = x
        .tubes
        .iter()
        .filter(|j| !j.is_subset(set))
        .map(|j| j.difference(set))
        .collect();
    tubes.sort();
    tubes.dedup();
    Ok(LabeledTubing { graph, tubes })
}

/// Order ideals of τ(X), in canonical order.
pub fn ideals(x: &Tubing) -> Result<Vec<VertexSet>> {
    let t = tau(x)?;
    let down = t.down_sets();
    let mut out = forest_ideals(&t, &down, 0);
    out.sort();
    Ok(out)
}

fn forest_ideals(t: &GForest, down: &[VertexSet], v: usize) -> Vec<VertexSet> {
    // downsets strictly below v: one choice per child subtree
    let mut acc = vec![VertexSet::EMPTY];
    for c in t.children(v) {
        let mut options = forest_ideals(t, down, c);
        options.push(down[c]);
        acc = acc.iter().flat_map(|a| options.iter().map(move |b| a.union(*b))).collect();
    }
    acc
}

/// Replace the non-maximal tube `tube` of `x` by the unique other tube `J`
/// completing `x \ {tube}`. Returns the new tubing and `J`.
pub fn flip(g: &Graph, x: &Tubing, tube: VertexSet) -> Result<(Tubing, VertexSet)> {
    if !x.contains(tube) {
        return Err(Error::TubeNotInTubing(tube.to_string()));
    }
    if g.components(g.vertices()).contains(&tube) {
        return Err(Error::MaximalTubeNotFlippable(tube.to_string()));
    }
    let t = tau(x)?;
    let down = t.down_sets();
    let c = top(x, tube)?;
    let p = t.parent(c);
    let mut removed = VertexSet::singleton(c);
    for y in t.children(c) {
        let sub = down[y];
        if !sub.iter().any(|v| g.has_edge(v, p)) {
            removed = removed.union(sub);
        }
    }
    let j = down[p].difference(removed);
    let mut tubes: Vec<VertexSet> = x.tubes.iter().copied().filter(|&i| i != tube).collect();
    tubes.push(j);
    Ok((Tubing::from_raw(x.n, tubes), j))
}

/// The flip of `tube` goes up in L_G exactly when its top is below its
/// parent's label in τ(X).
pub fn flip_is_upward(x: &Tubing, tube: VertexSet) -> Result<bool> {
    let t = tau(x)?;
    let c = top(x, tube)?;
    Ok(c < t.parent(c))
}

/// `v_i` = number of tubes `I` of `G` with `i ∈ I ⊆ i_↓`.
pub fn vertex_coordinates(g: &Graph, x: &Tubing) -> Result<Vec<u64>> {
    vertex_coordinates_with(&g.tubes(), x)
}

pub fn vertex_coordinates_with(all_tubes: &[VertexSet], x: &Tubing) -> Result<Vec<u64>> {
    let down = tau(x)?.down_sets();
    Ok((1..=x.n)
        .map(|i| all_tubes.iter().filter(|t| t.contains(i) && t.is_subset(down[i])).count() as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn tubing(g: &Graph, sets: &[&[usize]]) -> Tubing {
        Tubing::new(g, sets.iter().map(|s| set(s))).unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compatibility_examples() {
        let p3 = Graph::path(3);
        assert!(compatible(&p3, set(&[1]), set(&[3])).unwrap());
        assert!(!compatible(&p3, set(&[1]), set(&[2])).unwrap());
        assert!(compatible(&p3, set(&[1]), set(&[1, 2])).unwrap());
        assert!(matches!(compatible(&p3, set(&[1, 3]), set(&[1])), Err(Error::NotATube(_))));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_maximal_tubings(&Graph::complete(3)).len(), 6);
        assert_eq!(enumerate_maximal_tubings(&Graph::path(3)).len(), 5);
        for n in 0..6 {
            let e = enumerate_maximal_tubings(&Graph::edgeless(n));
            assert_eq!(e.len(), 1);
            assert_eq!(e[0].tubes(), (1..=n).map(VertexSet::singleton).collect::<Vec<_>>().as_slice());
        }
    }

    #[test]
    fn sweep_and_decomposition_agree() {
        for n in 0..=5 {
            for g in Graph::all_graphs(n) {
                assert_eq!(enumerate_by_sweep(&g), enumerate_by_decomposition(&g), "{g:?}");
            }
        }
        for g in [Graph::cycle(7), Graph::h_graph(2, 7), Graph::complete(6)] {
            assert_eq!(enumerate_by_sweep(&g), enumerate_by_decomposition(&g));
        }
    }

    #[test]
    fn enumerated_tubings_are_valid_maximal_tubings() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                let comps = g.components(g.vertices());
                for x in enumerate_maximal_tubings(&g) {
                    assert_eq!(Tubing::new(&g, x.tubes().iter().copied()).unwrap(), x);
                    assert!(x.is_maximal());
                    assert!(comps.iter().all(|&c| x.contains(c)));
                    let mut tops = tops(&x).unwrap();
                    tops.sort();
                    assert_eq!(tops, (1..=n).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn chi_tau_examples() {
        let e2 = Graph::edgeless(2);
        let f = GForest::new(&e2, vec![0, 0]).unwrap();
        assert_eq!(chi(&f), tubing(&e2, &[&[1], &[2]]));
        let k2 = Graph::complete(2);
        let chain = GForest::new(&k2, vec![2, 0]).unwrap();
        let x = tubing(&k2, &[&[1], &[1, 2]]);
        assert_eq!(chi(&chain), x);
        assert_eq!(tau(&x).unwrap(), chain);
        assert!(GForest::new(&e2, vec![2, 0]).is_err());
        assert!(GForest::new(&k2, vec![0, 0]).is_err());
        assert!(GForest::new(&k2, vec![2, 1]).is_err());
    }

    // All parent maps that pass validation, as an independent count.
    fn brute_forests(g: &Graph) -> Vec<GForest> {
        let n = g.n();
        let total = (n + 1).pow(n as u32);
        (0..total)
            .filter_map(|mut code| {
                let parent: Vec<usize> = (0..n)
                    .map(|_| {
                        let d = code % (n + 1);
                        code /= n + 1;
                        d
                    })
                    .collect();
                if parent.iter().enumerate().any(|(k, &p)| p == k + 1) {
                    return None;
                }
                GForest::new(g, parent).ok()
            })
            .collect()
    }

    #[test]
    fn chi_tau_are_inverse_bijections() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                let mtub = enumerate_maximal_tubings(&g);
                let forests = brute_forests(&g);
                assert_eq!(forests.len(), mtub.len(), "{g:?}");
                for f in &forests {
                    assert_eq!(&tau(&chi(f)).unwrap(), f);
                }
                for x in &mtub {
                    let t = tau(x).unwrap();
                    assert_eq!(&chi(&t), x);
                    // top(I) < top(J) in T iff I ⊂ J
                    let tp = tops(x).unwrap();
                    for (a, &i) in x.tubes().iter().enumerate() {
                        for (b, &j) in x.tubes().iter().enumerate() {
                            assert_eq!(t.le(tp[a], tp[b]), i.is_subset(j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn top_examples() {
        let k2 = Graph::complete(2);
        let x = tubing(&k2, &[&[1], &[1, 2]]);
        assert_eq!(top(&x, set(&[1, 2])).unwrap(), 2);
        assert_eq!(top(&x, set(&[1])).unwrap(), 1);
        assert!(matches!(top(&x, set(&[2])), Err(Error::TubeNotInTubing(_))));
    }

    #[test]
    fn restrict_examples() {
        let k3 = Graph::complete(3);
        for x in enumerate_maximal_tubings(&k3) {
            let r = restrict_tubing(&k3, &x, k3.vertices()).unwrap();
            assert_eq!(r.standardize(), (k3.clone(), x));
        }
        let p3 = Graph::path(3);
        let x = tubing(&p3, &[&[1], &[1, 2], &[1, 2, 3]]);
        assert_eq!(restrict_tubing(&p3, &x, set(&[1, 3])).unwrap().tubes, vec![set(&[1]), set(&[3])]);
        assert!(restrict_tubing(&p3, &x, VertexSet::EMPTY).unwrap().tubes.is_empty());
    }

    #[test]
    fn quotient_examples() {
        let k2 = Graph::complete(2);
        let x = tubing(&k2, &[&[1], &[1, 2]]);
        assert_eq!(quotient_tubing(&k2, &x, VertexSet::EMPTY).unwrap().standardize(), (k2.clone(), x.clone()));
        let q = quotient_tubing(&k2, &x, set(&[1])).unwrap();
        assert_eq!(q.tubes, vec![set(&[2])]);
        assert_eq!(q.standardize(), (Graph::edgeless(1), tubing(&Graph::edgeless(1), &[&[1]])));
        assert!(matches!(quotient_tubing(&k2, &x, set(&[2])), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn restriction_and_quotient_preserve_maximality() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                for x in enumerate_maximal_tubings(&g) {
                    for bits in 0u32..1 << n {
                        let s = VertexSet::from_bits(bits);
                        let (rg, rx) = restrict_tubing(&g, &x, s).unwrap().standardize();
                        assert_eq!(Tubing::new(&rg, rx.tubes().iter().copied()).unwrap(), rx);
                        assert!(rx.is_maximal());
                    }
                    for i in ideals(&x).unwrap() {
                        let (qg, qx) = quotient_tubing(&g, &x, i).unwrap().standardize();
                        assert_eq!(Tubing::new(&qg, qx.tubes().iter().copied()).unwrap(), qx);
                        assert!(qx.is_maximal());
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_examples() {
        let e2 = Graph::edgeless(2);
        let x = tubing(&e2, &[&[1], &[2]]);
        assert_eq!(ideals(&x).unwrap(), vec![VertexSet::EMPTY, set(&[1]), set(&[2]), set(&[1, 2])]);
        let k2 = Graph::complete(2);
        let x = tubing(&k2, &[&[1], &[1, 2]]);
        assert_eq!(ideals(&x).unwrap(), vec![VertexSet::EMPTY, set(&[1]), set(&[1, 2])]);
    }

    #[test]
    fn ideals_are_unions_of_disjoint_tubes() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                for x in enumerate_maximal_tubings(&g) {
                    let ts = x.tubes();
                    let mut unions: Vec<VertexSet> = (0u32..1 << ts.len())
                        .filter_map(|m| {
                            let chosen: Vec<VertexSet> = (0..ts.len()).filter(|b| m >> b & 1 == 1).map(|b| ts[b]).collect();
                            let disjoint = chosen.iter().enumerate().all(|(a, s)| chosen[..a].iter().all(|t| s.is_disjoint(*t)));
                            disjoint.then(|| chosen.iter().fold(VertexSet::EMPTY, |acc, s| acc.union(*s)))
                        })
                        .collect();
                    unions.sort();
                    unions.dedup();
                    assert_eq!(ideals(&x).unwrap(), unions);
                    assert!(unions.iter().all(|&i| is_ideal(&g, &x, i)));
                }
            }
        }
    }

    #[test]
    fn linear_extension_examples() {
        let p3 = Graph::path(3);
        let chain = GForest::new(&Graph::complete(3), vec![2, 3, 0]).unwrap();
        assert_eq!(chain.linear_extensions(), vec![p("123")]);
        let two = GForest::new(&Graph::edgeless(2), vec![0, 0]).unwrap();
        assert_eq!(two.linear_extensions(), vec![p("12"), p("21")]);
        let sizes: usize = enumerate_maximal_tubings(&Graph::complete(3))
            .iter()
            .map(|x| tau(x).unwrap().linear_extensions().len())
            .sum();
        assert_eq!(sizes, 6);
        let _ = p3;
    }

    #[test]
    fn sigma_examples() {
        let t = GForest::new(&Graph::complete(3), vec![3, 1, 0]).unwrap();
        assert_eq!(t.sigma_min(), p("213"));
        assert_eq!(t.sigma_recursive(), p("213"));
        let e3 = GForest::new(&Graph::edgeless(3), vec![0, 0, 0]).unwrap();
        assert_eq!(e3.sigma_min(), p("123"));
        assert_eq!(e3.sigma_max(), p("321"));
        assert_eq!(e3.sigma_recursive(), p("123"));
        assert_eq!(e3.sigma_star_recursive(), p("321"));
    }

    #[test]
    fn sigma_is_extreme_linear_extension() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                let rf = g.is_right_filled();
                let lf = g.is_left_filled();
                for x in enumerate_maximal_tubings(&g) {
                    let t = tau(&x).unwrap();
                    let ext = t.linear_extensions();
                    assert_eq!(ext.first(), Some(&t.sigma_min()));
                    assert_eq!(ext.last(), Some(&t.sigma_max()));
                    if rf || lf {
                        assert_eq!(t.sigma_recursive(), t.sigma_min(), "{g:?} {x}");
                        assert_eq!(t.sigma_star_recursive(), t.sigma_max(), "{g:?} {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn inversion_examples() {
        let k3 = Graph::complete(3);
        let up = GForest::new(&k3, vec![2, 3, 0]).unwrap();
        assert!(up.inversions().is_empty());
        let down = GForest::new(&k3, vec![0, 1, 2]).unwrap();
        assert_eq!(down.inversions(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(down.descents(), vec![(1, 2), (2, 3)]);
        assert!(down.ascents().is_empty());
        assert_eq!(up.ascents(), vec![(2, 1), (3, 2)]);
    }

    #[test]
    fn psi_examples() {
        let p3 = Graph::path(3);
        let x = psi(&p3, &p("213")).unwrap();
        assert_eq!(x, tubing(&p3, &[&[2], &[1, 2], &[1, 2, 3]]));
        assert_eq!(tau(&x).unwrap(), GForest::new(&p3, vec![3, 1, 0]).unwrap());
        let k4 = Graph::complete(4);
        for w in Permutation::all(4) {
            let t = tau(&psi(&k4, &w).unwrap()).unwrap();
            for s in 1..4 {
                assert_eq!(t.parent(w.at(s)), w.at(s + 1));
            }
            let e = psi(&Graph::edgeless(4), &w).unwrap();
            assert_eq!(e.len(), 4);
        }
        assert_eq!(psi(&p3, &p("12")), Err(Error::SizeMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn flip_examples() {
        let k2 = Graph::complete(2);
        let x = tubing(&k2, &[&[1], &[1, 2]]);
        let (y, j) = flip(&k2, &x, set(&[1])).unwrap();
        assert_eq!(y, tubing(&k2, &[&[2], &[1, 2]]));
        assert_eq!(j, set(&[2]));
        assert!(flip_is_upward(&x, set(&[1])).unwrap());
        assert!(matches!(flip(&k2, &x, set(&[1, 2])), Err(Error::MaximalTubeNotFlippable(_))));
        assert!(matches!(flip(&k2, &x, set(&[2])), Err(Error::TubeNotInTubing(_))));
    }

    #[test]
    fn flip_matches_unique_completion() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                let tubes = g.tubes();
                let comps = g.components(g.vertices());
                for x in enumerate_maximal_tubings(&g) {
                    for &i in x.tubes().iter().filter(|i| !comps.contains(i)) {
                        let rest: Vec<VertexSet> = x.tubes().iter().copied().filter(|&t| t != i).collect();
                        let completions: Vec<VertexSet> = tubes
                            .iter()
                            .copied()
                            .filter(|&j| j != i && !rest.contains(&j) && rest.iter().all(|&r| compatible_tubes(&g, r, j)))
                            .collect();
                        assert_eq!(completions.len(), 1, "{g:?} {x} {i}");
                        let (y, j) = flip(&g, &x, i).unwrap();
                        assert_eq!(j, completions[0]);
                        // involution and orientation through tops
                        let (back, i2) = flip(&g, &y, j).unwrap();
                        assert_eq!((back, i2), (x.clone(), i));
                        let up = top(&x, i).unwrap() < top(&y, j).unwrap();
                        assert_eq!(flip_is_upward(&x, i).unwrap(), up);
                    }
                }
            }
        }
    }

    #[test]
    fn coordinate_examples() {
        let e3 = Graph::edgeless(3);
        let x = &enumerate_maximal_tubings(&e3)[0];
        assert_eq!(vertex_coordinates(&e3, x).unwrap(), vec![1, 1, 1]);
        let k2 = Graph::complete(2);
        let x = tubing(&k2, &[&[1], &[1, 2]]);
        assert_eq!(vertex_coordinates(&k2, &x).unwrap(), vec![1, 2]);
    }

    #[test]
    fn coordinates_separate_vertices_and_orient_flips() {
        for n in 0..=5 {
            for g in Graph::all_graphs(n) {
                let tubes = g.tubes();
                let comps = g.components(g.vertices());
                let mtub = enumerate_maximal_tubings(&g);
                let coords: Vec<Vec<u64>> = mtub.iter().map(|x| vertex_coordinates_with(&tubes, x).unwrap()).collect();
                if n <= 4 {
                    let mut sorted = coords.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), mtub.len());
                }
                let lambda = |v: &[u64]| -> i64 { v.iter().enumerate().map(|(k, &c)| (n - k) as i64 * c as i64).sum() };
                for (a, x) in mtub.iter().enumerate() {
                    for &i in x.tubes().iter().filter(|i| !comps.contains(i)) {
                        let (y, j) = flip(&g, x, i).unwrap();
                        let vy = vertex_coordinates_with(&tubes, &y).unwrap();
                        let diff: Vec<i64> = vy.iter().zip(&coords[a]).map(|(&b, &c)| b as i64 - c as i64).collect();
                        // a multiple of e_s - e_t, positive on s < t exactly for upward flips
                        let nz: Vec<usize> = (0..n).filter(|&k| diff[k] != 0).collect();
                        assert_eq!(nz.len(), 2);
                        assert_eq!(diff[nz[0]], -diff[nz[1]]);
                        let up = top(x, i).unwrap() < top(&y, j).unwrap();
                        assert_eq!(diff[nz[0]] > 0, up);
                        let d = lambda(&vy) - lambda(&coords[a]);
                        assert_eq!(d > 0, up, "{g:?} {x} {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn tubing_parse_and_json() {
        let p3 = Graph::path(3);
        let x = Tubing::parse(&p3, "{2}{1,2}{1,2,3}").unwrap();
        assert_eq!(x.to_string(), "{2}{1,2}{1,2,3}");
        assert_eq!(Tubing::parse(&p3, " {1,2,3} , {1,2} {2} ").unwrap(), x);
        assert!(Tubing::parse(&p3, "{1}{2}").is_err());
        assert!(Tubing::parse(&p3, "{1,3}").is_err());
        assert_eq!(Tubing::from_json(&x.to_json(&p3)).unwrap(), (p3.clone(), x.clone()));
        assert_eq!(
            serde_json::to_string(&x.to_json(&p3)).unwrap(),
            r#"{"graph":{"n":3,"edges":[[1,2],[2,3]]},"tubes":[[2],[1,2],[1,2,3]]}"#
        );
        let t = tau(&x).unwrap();
        assert_eq!(serde_json::to_string(&t.to_json(&p3)).unwrap(), r#"{"graph":{"n":3,"edges":[[1,2],[2,3]]},"parent":[3,1,0]}"#);
    }

    #[test]
    fn all_tubings_contain_empty_and_maximal() {
        let p3 = Graph::path(3);
        let all = all_tubings(&p3);
        assert!(all.contains(&Tubing::empty(3)));
        let maximal: Vec<Tubing> = all.iter().filter(|t| t.is_maximal()).cloned().collect();
        assert_eq!(maximal, enumerate_maximal_tubings(&p3));
    }
}

//! Finite posets with bitset reachability, and the flip poset `L_G`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;
use crate::tubing::{self, Tubing};

#[derive(Clone, Debug)]
pub struct Poset<K> {
    elements: Vec<K>,
    index: HashMap<K, usize>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    topo: Vec<usize>,
    meets: OnceLock<Vec<Option<u32>>>,
    joins: OnceLock<Vec<Option<u32>>>,
}

/// Which operation is missing for a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bound {
    Meet,
    Join,
}

/// A pair without a meet or join, with its maximal lower / minimal upper bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeFailure {
    pub x: usize,
    pub y: usize,
    pub missing: Bound,
    pub bounds: Vec<usize>,
}

/// A triple violating SD∧ or SD∨.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub law: Bound,
}

impl<K: Clone + Eq + Hash + Send + Sync> Poset<K> {
    /// The order generated by `relations` (pairs `a < b`, by index).
    pub fn from_relations(elements: Vec<K>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::ElementNotFound);
            }
            if a == b {
                return Err(Error::Cyclic);
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        while let Some(v) = ready.pop() {
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::Cyclic);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(v);
            for &w in &succ[v] {
                row.union_with(&up[w]);
            }
            up[v] = row;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in up.iter().enumerate() {
            for w in row.ones() {
                down[w].insert(v);
            }
        }
        let upper: Vec<Vec<usize>> = par::map_range(n, |v| {
            up[v].ones()
                .filter(|&w| w != v && down[w].intersection(&up[v]).count() == 2)
                .collect()
        });
        let mut lower = vec![Vec::new(); n];
        let mut covers = Vec::new();
        for (v, ws) in upper.iter().enumerate() {
            for &w in ws {
                lower[w].push(v);
                covers.push((v, w));
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(k, e)| (e, k)).collect();
        Ok(Poset {
            elements,
            index,
            covers,
            upper,
            lower,
            up,
            down,
            topo,
            meets: OnceLock::new(),
            joins: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[K] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &K {
        &self.elements[i]
    }

    pub fn index_of(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn require(&self, key: &K) -> Result<usize> {
        self.index_of(key).ok_or(Error::ElementNotFound)
    }

    /// Cover pairs `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.le(x, y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// A linear extension of the order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements()[..] {
            [b] => Some(b),
            _ => None,
        }
    }

    pub fn top(&self) -> Option<usize> {
        match self.maximal_elements()[..] {
            [t] => Some(t),
            _ => None,
        }
    }

    fn greatest_in(rows: &[FixedBitSet], set: &FixedBitSet) -> Option<usize> {
        // the element whose principal ideal (filter) is the whole set
        let size = set.count_ones(..);
        set.ones().find(|&m| rows[m].count_ones(..) == size)
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut lower = self.down[x].clone();
        lower.intersect_with(&self.down[y]);
        Self::greatest_in(&self.down, &lower)
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let mut upper = self.up[x].clone();
        upper.intersect_with(&self.up[y]);
        Self::greatest_in(&self.up, &upper)
    }

    pub fn meet_of(&self, x: &K, y: &K) -> Result<Option<&K>> {
        let (a, b) = (self.require(x)?, self.require(y)?);
        Ok(self.meet(a, b).map(|m| &self.elements[m]))
    }

    pub fn join_of(&self, x: &K, y: &K) -> Result<Option<&K>> {
        let (a, b) = (self.require(x)?, self.require(y)?);
        Ok(self.join(a, b).map(|m| &self.elements[m]))
    }

    /// Row-major table of meets, cached.
    pub fn meet_table(&self) -> &[Option<u32>] {
        self.meets.get_or_init(|| {
            let n = self.len();
            par::flat_map_range(n, |x| (0..n).map(|y| self.meet(x, y).map(|m| m as u32)).collect())
        })
    }

    pub fn join_table(&self) -> &[Option<u32>] {
        self.joins.get_or_init(|| {
            let n = self.len();
            par::flat_map_range(n, |x| (0..n).map(|y| self.join(x, y).map(|m| m as u32)).collect())
        })
    }

    fn bound_failure(&self, table: &[Option<u32>], kind: Bound) -> Option<LatticeFailure> {
        let n = self.len();
        par::find_map_first(n * n, |k| {
            let (x, y) = (k / n, k % n);
            if x >= y || table[k].is_some() {
                return None;
            }
            let (rows, other) = match kind {
                Bound::Meet => (&self.down, &self.up),
                Bound::Join => (&self.up, &self.down),
            };
            let common: Vec<usize> = rows[x].intersection(&rows[y]).collect();
            // extreme common bounds: those with nothing else of the set beyond them
            let bounds = common
                .iter()
                .copied()
                .filter(|&b| common.iter().all(|&c| c == b || !other[b].contains(c)))
                .collect();
            Some(LatticeFailure { x, y, missing: kind, bounds })
        })
    }

    pub fn meet_failure(&self) -> Option<LatticeFailure> {
        self.bound_failure(self.meet_table(), Bound::Meet)
    }

    pub fn join_failure(&self) -> Option<LatticeFailure> {
        self.bound_failure(self.join_table(), Bound::Join)
    }

    /// First pair missing a meet or a join.
    pub fn lattice_failure(&self) -> Option<LatticeFailure> {
        self.meet_failure().or_else(|| self.join_failure())
    }

    pub fn is_meet_semilattice(&self) -> bool {
        self.meet_failure().is_none()
    }

    pub fn is_join_semilattice(&self) -> bool {
        self.join_failure().is_none()
    }

    /// Every pair has both a meet and a join (the empty poset counts).
    pub fn is_lattice(&self) -> bool {
        self.lattice_failure().is_none()
    }

    /// `None` when SD∧ and SD∨ both hold, else the first violating triple.
    pub fn semidistributive_failure(&self) -> Result<Option<SdWitness>> {
        if !self.is_lattice() {
            return Err(Error::NotALattice);
        }
        let n = self.len();
        let m: Vec<u32> = self.meet_table().iter().map(|v| v.unwrap()).collect();
        let j: Vec<u32> = self.join_table().iter().map(|v| v.unwrap()).collect();
        let at = |t: &[u32], a: u32, b: u32| t[a as usize * n + b as usize];
        Ok(par::find_map_first(n, |x| {
            let x = x as u32;
            for y in 0..n as u32 {
                for z in 0..n as u32 {
                    let xz = at(&m, x, z);
                    if xz == at(&m, y, z) && at(&m, at(&j, x, y), z) != xz {
                        return Some(SdWitness { x: x as usize, y: y as usize, z: z as usize, law: Bound::Meet });
                    }
                    let xz = at(&j, x, z);
                    if xz == at(&j, y, z) && at(&j, at(&m, x, y), z) != xz {
                        return Some(SdWitness { x: x as usize, y: y as usize, z: z as usize, law: Bound::Join });
                    }
                }
            }
            None
        }))
    }

    pub fn is_semidistributive(&self) -> Result<bool> {
        Ok(self.semidistributive_failure()?.is_none())
    }

    /// μ(x, y) for all `y`, zero off the principal filter of `x`.
    pub fn mobius_row(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        for &y in &self.topo {
            if !self.le(x, y) {
                continue;
            }
            mu[y] = if y == x {
                1
            } else {
                -self.down[y].ones().filter(|&z| z != y && self.le(x, z)).map(|z| mu[z]).sum::<i64>()
            };
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if x >= self.len() || y >= self.len() {
            return Err(Error::ElementNotFound);
        }
        if !self.le(x, y) {
            return Err(Error::NotComparable);
        }
        Ok(self.mobius_row(x)[y])
    }

    /// Elements of `[x, y]`, increasing by index.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        self.up[x].intersection(&self.down[y]).collect()
    }

    /// First `(a, b, c)` with `a < b < c`, `a, c` in the set and `b` outside.
    pub fn convexity_violation(&self, members: &[usize]) -> Option<(usize, usize, usize)> {
        let mut inside = FixedBitSet::with_capacity(self.len());
        for &m in members {
            inside.insert(m);
        }
        for &a in members {
            for &c in members {
                if a != c && self.le(a, c) {
                    for b in self.interval(a, c) {
                        if !inside.contains(b) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        }
        None
    }

    /// Induced order on a subset of elements (given by index).
    pub fn subposet(&self, members: &[usize]) -> Poset<K> {
        let elements: Vec<K> = members.iter().map(|&m| self.elements[m].clone()).collect();
        let mut rel = Vec::new();
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate() {
                if x != y && self.le(x, y) {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relations(elements, &rel).expect("induced order is acyclic")
    }

    pub fn dual(&self) -> Poset<K> {
        let rel: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Poset::from_relations(self.elements.clone(), &rel).expect("dual of an order is an order")
    }

    /// Componentwise order on pairs, elements in row-major order.
    pub fn product<L: Clone + Eq + Hash + Send + Sync>(&self, other: &Poset<L>) -> Poset<(K, L)> {
        let m = other.len();
        let mut elements = Vec::with_capacity(self.len() * m);
        for a in &self.elements {
            for b in &other.elements {
                elements.push((a.clone(), b.clone()));
            }
        }
        let mut rel = Vec::new();
        for &(a, b) in &self.covers {
            for y in 0..m {
                rel.push((a * m + y, b * m + y));
            }
        }
        for x in 0..self.len() {
            for &(a, b) in &other.covers {
                rel.push((x * m + a, x * m + b));
            }
        }
        Poset::from_relations(elements, &rel).expect("product of orders is an order")
    }

    fn signatures(&self) -> Vec<(usize, usize, usize, usize)> {
        (0..self.len())
            .map(|x| (self.lower[x].len(), self.upper[x].len(), self.down[x].count_ones(..), self.up[x].count_ones(..)))
            .collect()
    }

    /// An order isomorphism `self → other` (as an index map), if any.
    pub fn isomorphism<L: Clone + Eq + Hash + Send + Sync>(&self, other: &Poset<L>) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let (sa, sb) = (self.signatures(), other.signatures());
        let mut ma = sa.clone();
        let mut mb = sb.clone();
        ma.sort();
        mb.sort();
        if ma != mb {
            return None;
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        let order = self.topo.clone();
        if self.extend_iso(other, &sa, &sb, &order, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_iso<L: Clone + Eq + Hash + Send + Sync>(
        &self,
        other: &Poset<L>,
        sa: &[(usize, usize, usize, usize)],
        sb: &[(usize, usize, usize, usize)],
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for cand in 0..other.len() {
            if used[cand] || sb[cand] != sa[x] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&a| {
                let fa = map[a];
                self.le(a, x) == other.le(fa, cand) && self.le(x, a) == other.le(cand, fa)
            });
            if consistent {
                map[x] = cand;
                used[cand] = true;
                if self.extend_iso(other, sa, sb, order, depth + 1, map, used) {
                    return true;
                }
                used[cand] = false;
                map[x] = usize::MAX;
            }
        }
        false
    }

    pub fn are_isomorphic<L: Clone + Eq + Hash + Send + Sync>(&self, other: &Poset<L>) -> bool {
        self.isomorphism(other).is_some()
    }

    /// `x ↦ f(x)` is an order isomorphism onto `other`.
    pub fn is_isomorphism_via<L: Clone + Eq + Hash + Send + Sync>(&self, other: &Poset<L>, f: impl Fn(&K) -> L) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let image: Option<Vec<usize>> = self.elements.iter().map(|k| other.index_of(&f(k))).collect();
        let Some(image) = image else { return false };
        let mut seen = vec![false; other.len()];
        for &i in &image {
            if std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.le(x, y) == other.le(image[x], image[y])))
    }

    pub fn to_json(&self, label: impl Fn(&K) -> serde_json::Value) -> serde_json::Value {
        serde_json::json!({
            "elements": self.elements.iter().map(label).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }

    /// Hasse diagram in DOT, covers drawn upward. Highlighted nodes are
    /// drawn in red and `note` becomes a graph comment.
    pub fn to_dot(&self, label: impl Fn(&K) -> String, highlight: &[usize], note: Option<&str>) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        if let Some(note) = note {
            for line in note.lines() {
                let _ = writeln!(s, "  // {line}");
            }
        }
        for (k, e) in self.elements.iter().enumerate() {
            let text = label(e).replace('\\', "\\\\").replace('"', "\\\"");
            if highlight.contains(&k) {
                let _ = writeln!(s, "  n{k} [label=\"{text}\", color=red, penwidth=2];");
            } else {
                let _ = writeln!(s, "  n{k} [label=\"{text}\"];");
            }
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// `L_G`: maximal tubings ordered by the transitive closure of upward flips.
pub fn build_lg(g: &Graph) -> Result<Poset<Tubing>> {
    let elements = tubing::enumerate_maximal_tubings(g);
    let index: HashMap<&Tubing, usize> = elements.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let comps = g.components(g.vertices());
    let rel: Vec<Vec<(usize, usize)>> = par::map_range(elements.len(), |a| {
        let x = &elements[a];
        let mut out = Vec::new();
        for &i in x.tubes().iter().filter(|i| !comps.contains(i)) {
            let (y, j) = tubing::flip(g, x, i).expect("non-component tube flips");
            let up = tubing::top(x, i).expect("tube of x") < tubing::top(&y, j).expect("tube of y");
            if up {
                out.push((a, index[&y]));
            }
        }
        out
    });
    let rel: Vec<(usize, usize)> = rel.into_iter().flatten().collect();
    Poset::from_relations(elements, &rel)
}

/// Upward flips of `L_G`, as index pairs.
pub fn upward_flips(g: &Graph, lg: &Poset<Tubing>) -> Vec<(usize, usize)> {
    let comps = g.components(g.vertices());
    let mut out = Vec::new();
    for (a, x) in lg.elements().iter().enumerate() {
        for &i in x.tubes().iter().filter(|i| !comps.contains(i)) {
            let (y, j) = tubing::flip(g, x, i).expect("non-component tube flips");
            if tubing::top(x, i).unwrap() < tubing::top(&y, j).unwrap() {
                out.push((a, lg.index_of(&y).expect("flip stays in MTub")));
            }
        }
    }
    out.sort();
    out
}

/// Result of locating the maximal tubings containing a tubing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FaceInterval {
    Interval { bottom: usize, top: usize, size: usize },
    MultipleMinima(Vec<usize>),
    MultipleMaxima(Vec<usize>),
    NotConvex { below: usize, outside: usize, above: usize },
}

pub fn tubing_face_interval(g: &Graph, y: &Tubing) -> Result<FaceInterval> {
    let lg = build_lg(g)?;
    Ok(face_interval_in(&lg, y))
}

/// Locate `{X : Y ⊆ X}` inside an already built `L_G`.
pub fn face_interval_in(lg: &Poset<Tubing>, y: &Tubing) -> FaceInterval {
    let members: Vec<usize> = (0..lg.len()).filter(|&k| y.is_subset(lg.element(k))).collect();
    let minima: Vec<usize> =
        members.iter().copied().filter(|&m| members.iter().all(|&o| o == m || !lg.le(o, m))).collect();
    let maxima: Vec<usize> =
        members.iter().copied().filter(|&m| members.iter().all(|&o| o == m || !lg.le(m, o))).collect();
    if minima.len() != 1 {
        return FaceInterval::MultipleMinima(minima);
    }
    if maxima.len() != 1 {
        return FaceInterval::MultipleMaxima(maxima);
    }
    if let Some((below, outside, above)) = lg.convexity_violation(&members) {
        return FaceInterval::NotConvex { below, outside, above };
    }
    let (bottom, top) = (minima[0], maxima[0]);
    debug_assert_eq!(lg.interval(bottom, top), members);
    FaceInterval::Interval { bottom, top, size: members.len() }
}

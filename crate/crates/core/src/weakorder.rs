//! The weak order on `S_n`, arcs, arc-generated congruences, and the
//! surjection Ψ_G viewed as a map of lattices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::check::FamilyCheck;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphFamily};
use crate::par;
use crate::perm::Permutation;
use crate::poset::{self, Poset};
use crate::tubing::{self, Tubing};

pub use crate::tubing::psi;

/// Largest `n` for which the weak order is materialized as a [`Poset`].
pub const MATERIALIZE_LIMIT: usize = 6;

/// Pairs `(i, j)` with `i < j` and `j` before `i` in `w`.
pub fn inversions(w: &Permutation) -> Vec<(usize, usize)> {
    let pos = w.positions();
    let n = w.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if pos[j] < pos[i] {
                out.push((i, j));
            }
        }
    }
    out
}

/// inv(u) ⊆ inv(w).
pub fn weak_le(u: &Permutation, w: &Permutation) -> bool {
    if u.len() != w.len() {
        return false;
    }
    let (pu, pw) = (u.positions(), w.positions());
    let n = u.len();
    (1..=n).all(|i| (i + 1..=n).all(|j| pu[j] > pu[i] || pw[j] < pw[i]))
}

/// Lower covers, obtained by swapping adjacent descents.
pub fn weak_covers(w: &Permutation) -> Vec<Permutation> {
    w.descent_positions().into_iter().map(|s| w.swap_positions(s)).collect()
}

/// Upper covers, obtained by swapping adjacent ascents.
pub fn weak_upper_covers(w: &Permutation) -> Vec<Permutation> {
    (1..w.len()).filter(|&s| w.at(s) < w.at(s + 1)).map(|s| w.swap_positions(s)).collect()
}

/// The weak order on `S_n` as a poset, elements in lexicographic order
/// (so an element's index is its [`Permutation::rank`]).
pub fn weak_order_poset(n: usize) -> Result<&'static Poset<Permutation>> {
    static CACHE: [OnceLock<Poset<Permutation>>; MATERIALIZE_LIMIT + 1] = [const { OnceLock::new() }; MATERIALIZE_LIMIT + 1];
    if n > MATERIALIZE_LIMIT {
        return Err(Error::SizeMismatch { expected: MATERIALIZE_LIMIT, found: n });
    }
    Ok(CACHE[n].get_or_init(|| {
        let perms = Permutation::all(n);
        let mut rel = Vec::new();
        for (a, w) in perms.iter().enumerate() {
            for v in weak_upper_covers(w) {
                rel.push((a, v.rank()));
            }
        }
        Poset::from_relations(perms, &rel).expect("weak order is acyclic")
    }))
}

/// Join by transitive closure of the union of inversion sets.
pub fn join_by_closure(u: &Permutation, w: &Permutation) -> Permutation {
    let n = u.len();
    // before[a][b]: a precedes b, recorded only for a > b
    let mut before = vec![vec![false; n + 1]; n + 1];
    for x in [u, w] {
        for (i, j) in inversions(x) {
            before[j][i] = true;
        }
    }
    for m in 1..=n {
        for a in m + 1..=n {
            if before[a][m] {
                for b in 1..m {
                    if before[m][b] {
                        before[a][b] = true;
                    }
                }
            }
        }
    }
    let mut word = vec![0; n];
    for v in 1..=n {
        let ahead = (v + 1..=n).filter(|&a| before[a][v]).count() + (1..v).filter(|&a| !before[v][a]).count();
        word[ahead] = v;
    }
    Permutation::from_vec_unchecked(word)
}

pub fn meet_by_closure(u: &Permutation, w: &Permutation) -> Permutation {
    join_by_closure(&u.reverse(), &w.reverse()).reverse()
}

fn same_size(u: &Permutation, w: &Permutation) -> Result<()> {
    if u.len() == w.len() {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected: u.len(), found: w.len() })
    }
}

pub fn weak_meet(u: &Permutation, w: &Permutation) -> Result<Permutation> {
    same_size(u, w)?;
    if u.len() <= MATERIALIZE_LIMIT {
        let p = weak_order_poset(u.len())?;
        let m = p.meet(u.rank(), w.rank()).expect("weak order is a lattice");
        Ok(p.element(m).clone())
    } else {
        Ok(meet_by_closure(u, w))
    }
}

pub fn weak_join(u: &Permutation, w: &Permutation) -> Result<Permutation> {
    same_size(u, w)?;
    if u.len() <= MATERIALIZE_LIMIT {
        let p = weak_order_poset(u.len())?;
        let j = p.join(u.rank(), w.rank()).expect("weak order is a lattice");
        Ok(p.element(j).clone())
    } else {
        Ok(join_by_closure(u, w))
    }
}

/// Each `w_i` lies in the component of `G|_{w_1..w_i}` holding the prefix maximum.
pub fn is_g_permutation(g: &Graph, w: &Permutation) -> bool {
    let mut prefix = crate::vset::VertexSet::EMPTY;
    let mut max = 0;
    for &v in w.word() {
        prefix.insert(v);
        max = max.max(v);
        if !g.component_of(v, prefix).contains(max) {
            return false;
        }
    }
    true
}

/// π↓(w) = σ(Ψ_G(w)), the least element of the fiber of `w`.
pub fn pi_down(g: &Graph, w: &Permutation) -> Result<Permutation> {
    if !g.is_right_filled() {
        return Err(Error::NotRightFilled);
    }
    Ok(tubing::tau(&psi(g, w)?)?.sigma_min())
}

/// The fibers of Ψ_G, each sorted, ordered by least element.
pub fn psi_fibers(g: &Graph) -> Vec<Vec<Permutation>> {
    let perms = Permutation::all(g.n());
    let images = par::map(&perms, |w| tubing::psi_unchecked(g, w));
    let mut groups: HashMap<Tubing, Vec<Permutation>> = HashMap::new();
    for (w, x) in perms.into_iter().zip(images) {
        groups.entry(x).or_default().push(w);
    }
    let mut out: Vec<Vec<Permutation>> = groups.into_values().collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An arc `(i, k, ε)` on `[n]`: `ε_j` records whether `i + j` lies right (+)
/// or left (−) of the arc.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    n: usize,
    i: usize,
    k: usize,
    signs: Vec<Sign>,
}

impl Arc {
    pub fn new(n: usize, i: usize, k: usize, signs: Vec<Sign>) -> Result<Self> {
        if !(1 <= i && i < k && k <= n) || signs.len() != k - i - 1 {
            return Err(Error::InvalidArc(format!("({i},{k}) with {} signs on [{n}]", signs.len())));
        }
        Ok(Arc { n, i, k, signs })
    }

    /// `(i, k, +...+)`.
    pub fn positive(n: usize, i: usize, k: usize) -> Result<Self> {
        Arc::new(n, i, k, vec![Sign::Plus; k.saturating_sub(i + 1)])
    }

    /// Parse `i-k:signs`, e.g. `2-5:-+` or `1-2:`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = || Error::InvalidArc(format!("cannot parse `{s}`"));
        let (ends, signs) = s.trim().split_once(':').ok_or_else(bad)?;
        let (i, k) = ends.split_once('-').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let signs: Vec<Sign> = signs
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(bad()),
            })
            .collect::<Result<_>>()?;
        Arc::new(n, i, k, signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn left(&self) -> usize {
        self.i
    }

    pub fn right(&self) -> usize {
        self.k
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `ε_j` for `1 <= j < k - i`.
    pub fn sign(&self, j: usize) -> Sign {
        self.signs[j - 1]
    }

    pub fn plus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Plus).count()
    }

    /// All arcs on `[n]`.
    pub fn all(n: usize) -> Vec<Arc> {
        let mut out = Vec::new();
        for i in 1..=n {
            for k in i + 1..=n {
                let len = k - i - 1;
                for bits in 0u32..1 << len {
                    let signs = (0..len).map(|b| if bits >> b & 1 == 1 { Sign::Plus } else { Sign::Minus }).collect();
                    out.push(Arc { n, i, k, signs });
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}:", self.i, self.k)?;
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.n)
    }
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// α(u, w) for a cover `u ⋖ w` swapping values `i < k`.
pub fn arc_of_cover(u: &Permutation, w: &Permutation) -> Result<Arc> {
    let not_cover = || Error::NotACover(w.to_string(), u.to_string());
    if u.len() != w.len() {
        return Err(not_cover());
    }
    let n = u.len();
    let s = (1..n)
        .find(|&s| u.at(s) < u.at(s + 1) && u.swap_positions(s) == *w)
        .ok_or_else(not_cover)?;
    let (i, k) = (u.at(s), u.at(s + 1));
    let pos = u.positions();
    let signs = (i + 1..k).map(|j| if pos[j] > s + 1 { Sign::Plus } else { Sign::Minus }).collect();
    Ok(Arc { n, i, k, signs })
}

/// The join-irreducible `j_α = 1..(i-1) l k i r (k+1)..n`.
pub fn perm_of_arc(alpha: &Arc) -> Permutation {
    let (i, k) = (alpha.i, alpha.k);
    let mut word: Vec<usize> = (1..i).collect();
    word.extend((i + 1..k).filter(|&j| alpha.sign(j - i) == Sign::Minus));
    word.push(k);
    word.push(i);
    word.extend((i + 1..k).filter(|&j| alpha.sign(j - i) == Sign::Plus));
    word.extend(k + 1..=alpha.n);
    Permutation::from_vec_unchecked(word)
}

/// The unique lower cover of `j_α`.
pub fn perm_of_arc_lower(alpha: &Arc) -> Permutation {
    let j = perm_of_arc(alpha);
    let s = j.descent_positions()[0];
    j.swap_positions(s)
}

/// `α` is a subarc of `β`: its endpoints lie within β's and the signs agree on the overlap.
pub fn is_subarc(alpha: &Arc, beta: &Arc) -> bool {
    beta.i <= alpha.i
        && alpha.k <= beta.k
        && (1..alpha.k - alpha.i).all(|j| alpha.sign(j) == beta.sign(j + alpha.i - beta.i))
}

/// α∖v on `[n-1]`. Deleting an endpoint drops the adjacent sign; an arc
/// of length one cannot lose an endpoint.
pub fn arc_delete(alpha: &Arc, v: usize) -> Result<Arc> {
    let Arc { n, i, k, ref signs } = *alpha;
    if v == 0 || v > n {
        return Err(Error::InvalidVertex(v));
    }
    let mut signs = signs.clone();
    let (ni, nk) = if v < i {
        (i - 1, k - 1)
    } else if v > k {
        (i, k)
    } else if v > i && v < k {
        signs.remove(v - i - 1);
        (i, k - 1)
    } else if k == i + 1 {
        return Err(Error::InvalidArc(format!("deleting endpoint {v} collapses {alpha}")));
    } else if v == i {
        signs.remove(0);
        (i, k - 1)
    } else {
        signs.pop();
        (i, k - 1)
    };
    Arc::new(n - 1, ni, nk, signs)
}

/// Every arc on `[n+1]` that has `v` as a non-endpoint and deletes to `α`.
pub fn arc_insertions(alpha: &Arc, v: usize) -> Result<Vec<Arc>> {
    let Arc { n, i, k, ref signs } = *alpha;
    if v == 0 || v > n + 1 {
        return Err(Error::InvalidVertex(v));
    }
    Ok(if v <= i {
        vec![Arc { n: n + 1, i: i + 1, k: k + 1, signs: signs.clone() }]
    } else if v > k {
        vec![Arc { n: n + 1, i, k, signs: signs.clone() }]
    } else {
        [Sign::Minus, Sign::Plus]
            .into_iter()
            .map(|s| {
                let mut e = signs.clone();
                e.insert(v - i - 1, s);
                Arc { n: n + 1, i, k: k + 1, signs: e }
            })
            .collect()
    })
}

/// A lattice congruence of the weak order given by contracted arcs.
#[derive(Clone, Debug)]
pub struct Congruence {
    n: usize,
    generators: Vec<Arc>,
    contracted: BTreeSet<Arc>,
}

impl Congruence {
    /// The congruence generated by `arcs`: everything having one of them as a subarc.
    pub fn from_generators(n: usize, arcs: &[Arc]) -> Result<Self> {
        if let Some(a) = arcs.iter().find(|a| a.n != n) {
            return Err(Error::InvalidArc(format!("{a} lives on [{}], not [{n}]", a.n)));
        }
        let mut generators: Vec<Arc> = arcs
            .iter()
            .filter(|a| !arcs.iter().any(|b| b != *a && is_subarc(b, a)))
            .cloned()
            .collect();
        generators.sort();
        generators.dedup();
        let contracted = Arc::all(n)
            .into_iter()
            .filter(|b| generators.iter().any(|g| is_subarc(g, b)))
            .collect();
        Ok(Congruence { n, generators, contracted })
    }

    /// ≡^k: contracts every arc with at least `k` plus signs.
    pub fn metasylvester(n: usize, k: usize) -> Self {
        let gens: Vec<Arc> = Arc::all(n).into_iter().filter(|a| a.plus_count() >= k).collect();
        Congruence::from_generators(n, &gens).expect("arcs on [n]")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal generators under the subarc order.
    pub fn generators(&self) -> &[Arc] {
        &self.generators
    }

    pub fn contracted(&self) -> &BTreeSet<Arc> {
        &self.contracted
    }

    pub fn contracts(&self, alpha: &Arc) -> bool {
        self.contracted.contains(alpha)
    }

    /// Class index of every permutation (by rank) and the number of classes.
    pub fn class_map(&self) -> (Vec<usize>, usize) {
        let perms = Permutation::all(self.n);
        let mut uf = UnionFind::<usize>::new(perms.len());
        for (a, u) in perms.iter().enumerate() {
            for w in weak_upper_covers(u) {
                if self.contracts(&arc_of_cover(u, &w).expect("upper cover")) {
                    uf.union(a, w.rank());
                }
            }
        }
        let mut label = HashMap::new();
        let map: Vec<usize> = (0..perms.len())
            .map(|a| {
                let next = label.len();
                *label.entry(uf.find(a)).or_insert(next)
            })
            .collect();
        (map, label.len())
    }

    /// Classes of `S_n`, each sorted, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<Permutation>> {
        let perms = Permutation::all(self.n);
        let (map, count) = self.class_map();
        let mut out = vec![Vec::new(); count];
        for (w, c) in perms.into_iter().zip(map) {
            out[c].push(w);
        }
        out.sort();
        out
    }

    /// The quotient order, each class named by its least element.
    pub fn quotient_poset(&self) -> Poset<Permutation> {
        let perms = Permutation::all(self.n);
        let (map, count) = self.class_map();
        let mut names: Vec<Option<Permutation>> = vec![None; count];
        for (w, &c) in perms.iter().zip(&map) {
            names[c].get_or_insert_with(|| w.clone());
        }
        let mut rel = Vec::new();
        for (a, u) in perms.iter().enumerate() {
            for w in weak_upper_covers(u) {
                let (cu, cw) = (map[a], map[w.rank()]);
                if cu != cw {
                    rel.push((cu, cw));
                }
            }
        }
        rel.sort();
        rel.dedup();
        let names: Vec<Permutation> = names.into_iter().map(|n| n.expect("nonempty class")).collect();
        Poset::from_relations(names, &rel).expect("quotient of a lattice congruence is acyclic")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "generators": self.generators.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Positive arcs over the minimal non-edges of a filled graph.
pub fn generators_of_theta_g(g: &Graph) -> Result<Vec<Arc>> {
    if !g.is_filled() {
        return Err(Error::NotFilled(g.n()));
    }
    g.minimal_non_edges().into_iter().map(|(x, y)| Arc::positive(g.n(), x, y)).collect()
}

pub fn theta_g(g: &Graph) -> Result<Congruence> {
    Congruence::from_generators(g.n(), &generators_of_theta_g(g)?)
}

/// Arcs α with Ψ_G(j_α) = Ψ_G(j_α*), for a filled graph.
pub fn contracted_arcs(g: &Graph) -> Result<BTreeSet<Arc>> {
    if !g.is_filled() {
        return Err(Error::NotFilled(g.n()));
    }
    Ok(Arc::all(g.n())
        .into_iter()
        .filter(|a| tubing::psi_unchecked(g, &perm_of_arc(a)) == tubing::psi_unchecked(g, &perm_of_arc_lower(a)))
        .collect())
}

/// A pair of permutations whose meet or join Ψ_G fails to preserve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub u: String,
    pub w: String,
    /// Ψ_G of the weak-order meet/join.
    pub image: String,
    /// The meet/join in `L_G` of the two images, if it exists.
    pub expected: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeMapReport {
    pub meet_failure: Option<MapWitness>,
    pub join_failure: Option<MapWitness>,
}

impl LatticeMapReport {
    pub fn holds(&self) -> bool {
        self.meet_failure.is_none() && self.join_failure.is_none()
    }
}

/// Ψ_G together with the data needed to test it pair by pair.
struct PsiTables<'a> {
    perms: Vec<Permutation>,
    image: Vec<usize>,
    lg: &'a Poset<Tubing>,
}

impl<'a> PsiTables<'a> {
    fn new(g: &Graph, lg: &'a Poset<Tubing>) -> Self {
        let perms = Permutation::all(g.n());
        let image = par::map(&perms, |w| lg.index_of(&tubing::psi_unchecked(g, w)).expect("Ψ lands in MTub"));
        PsiTables { perms, image, lg }
    }

    fn failure(&self, join: bool) -> Option<MapWitness> {
        let n = self.perms.len();
        let small = self.perms.first().map_or(0, |p| p.len()) <= MATERIALIZE_LIMIT;
        let weak = small.then(|| weak_order_poset(self.perms[0].len()).unwrap());
        let weak_table = weak.map(|p| if join { p.join_table() } else { p.meet_table() });
        let lg_table = if join { self.lg.join_table() } else { self.lg.meet_table() };
        let m = self.lg.len();
        par::find_map_first(n * n, |k| {
            let (a, b) = (k / n, k % n);
            if a >= b {
                return None;
            }
            let c = match weak_table {
                Some(t) => t[k].unwrap() as usize,
                None => {
                    let (u, w) = (&self.perms[a], &self.perms[b]);
                    if join { join_by_closure(u, w) } else { meet_by_closure(u, w) }.rank()
                }
            };
            let expected = lg_table[self.image[a] * m + self.image[b]].map(|e| e as usize);
            (expected != Some(self.image[c])).then(|| MapWitness {
                u: self.perms[a].to_string(),
                w: self.perms[b].to_string(),
                image: self.lg.element(self.image[c]).to_string(),
                expected: expected.map(|e| self.lg.element(e).to_string()),
            })
        })
    }
}

/// Check Ψ_G(u ∧ w) = Ψ_G(u) ∧ Ψ_G(w) and the join analogue over all pairs.
pub fn is_lattice_quotient_map(g: &Graph) -> Result<LatticeMapReport> {
    let lg = poset::build_lg(g)?;
    Ok(lattice_map_report(g, &lg))
}

pub fn lattice_map_report(g: &Graph, lg: &Poset<Tubing>) -> LatticeMapReport {
    let t = PsiTables::new(g, lg);
    LatticeMapReport { meet_failure: t.failure(false), join_failure: t.failure(true) }
}

pub fn psi_meet_failure(g: &Graph, lg: &Poset<Tubing>) -> Option<MapWitness> {
    PsiTables::new(g, lg).failure(false)
}

pub fn psi_join_failure(g: &Graph, lg: &Poset<Tubing>) -> Option<MapWitness> {
    PsiTables::new(g, lg).failure(true)
}

/// Ψ_G(u ∨ w) = Ψ_G(u) ∨ Ψ_G(w) for one pair.
pub fn preserves_join_at(g: &Graph, lg: &Poset<Tubing>, u: &Permutation, w: &Permutation) -> Result<bool> {
    let j = weak_join(u, w)?;
    let (a, b) = (lg.require(&psi(g, u)?)?, lg.require(&psi(g, w)?)?);
    let image = lg.require(&psi(g, &j)?)?;
    Ok(lg.join(a, b) == Some(image))
}

/// Whether a partition of `S_n` (class label per rank) is a lattice
/// congruence of the weak order.
pub fn is_lattice_congruence(n: usize, class_of: &[usize]) -> Result<bool> {
    let p = weak_order_poset(n)?;
    let (mt, jt) = (p.meet_table(), p.join_table());
    let size = p.len();
    let mut rep = HashMap::new();
    for (x, &c) in class_of.iter().enumerate() {
        rep.entry(c).or_insert(x);
    }
    Ok(par::find_map_first(size, |x| {
        let r = rep[&class_of[x]];
        (0..size)
            .any(|z| {
                let (a, b) = (x * size + z, r * size + z);
                class_of[mt[a].unwrap() as usize] != class_of[mt[b].unwrap() as usize]
                    || class_of[jt[a].unwrap() as usize] != class_of[jt[b].unwrap() as usize]
            })
            .then_some(())
    })
    .is_none())
}

/// Contracted arcs of Θ_{G_n} for every `n <= n_max`.
pub fn family_contracted_arcs(family: &GraphFamily, n_max: usize) -> Result<Vec<BTreeSet<Arc>>> {
    (0..=n_max).map(|n| contracted_arcs(&family.graph(n))).collect()
}

/// Contracted arcs are closed under translation within degrees `<= N`.
pub fn is_translational(family: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    Ok(translational_by(&family_contracted_arcs(family, n_max)?))
}

/// Contracted arcs are closed under insertion within degrees `<= N`.
pub fn is_insertional(family: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    Ok(insertional_by(&family_contracted_arcs(family, n_max)?))
}

/// `contracted[n]` holds the arcs contracted on `[n]`.
pub fn translational_by(contracted: &[BTreeSet<Arc>]) -> FamilyCheck {
    let top = contracted.len().saturating_sub(1);
    for set in contracted {
        for a in set {
            let len = a.k - a.i;
            for (m, target) in contracted.iter().enumerate().filter(|(m, _)| *m > len) {
                for start in 1..=m - len {
                    let b = Arc { n: m, i: start, k: start + len, signs: a.signs.clone() };
                    if !target.contains(&b) {
                        return FamilyCheck::failed(
                            top,
                            format!("{a} contracted on [{}] but its translate {b} on [{m}] is not", a.n),
                        );
                    }
                }
            }
        }
    }
    FamilyCheck::verified(top)
}

pub fn insertional_by(contracted: &[BTreeSet<Arc>]) -> FamilyCheck {
    let top = contracted.len().saturating_sub(1);
    for n in 0..top {
        for a in &contracted[n] {
            for v in 1..=n + 1 {
                for b in arc_insertions(a, v).expect("v in range") {
                    if !contracted[n + 1].contains(&b) {
                        return FamilyCheck::failed(
                            top,
                            format!("{a} contracted on [{n}] but inserting {v} gives {b}, not contracted on [{}]", n + 1),
                        );
                    }
                }
            }
        }
    }
    FamilyCheck::verified(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn arc(s: &str, n: usize) -> Arc {
        Arc::parse(s, n).unwrap()
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(inversions(&p("321")), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(weak_le(&p("213"), &p("231")));
        assert!(!weak_le(&p("231"), &p("213")));
        let mut covers = weak_covers(&p("321"));
        covers.sort();
        assert_eq!(covers, vec![p("231"), p("312")]);
    }

    #[test]
    fn weak_poset_matches_inversion_containment() {
        for n in 0..=4 {
            let wp = weak_order_poset(n).unwrap();
            for (a, u) in wp.elements().iter().enumerate() {
                assert_eq!(u.rank(), a);
                for (b, w) in wp.elements().iter().enumerate() {
                    assert_eq!(wp.le(a, b), weak_le(u, w));
                }
            }
        }
    }

    #[test]
    fn meet_join_examples() {
        assert_eq!(weak_join(&p("213"), &p("132")).unwrap(), p("321"));
        let id = Permutation::identity(4);
        for u in Permutation::all(4) {
            assert_eq!(weak_meet(&u, &id).unwrap(), id);
            assert_eq!(weak_join(&u, &u).unwrap(), u);
        }
        assert!(weak_meet(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn closure_agrees_with_materialized_lattice() {
        for n in 0..=5 {
            let wp = weak_order_poset(n).unwrap();
            for (a, u) in wp.elements().iter().enumerate() {
                for (b, w) in wp.elements().iter().enumerate() {
                    assert_eq!(join_by_closure(u, w).rank(), wp.join(a, b).unwrap(), "{u} v {w}");
                    assert_eq!(meet_by_closure(u, w).rank(), wp.meet(a, b).unwrap(), "{u} ^ {w}");
                }
            }
        }
    }

    #[test]
    fn g_permutation_examples() {
        let g = Graph::new(3, [(1, 3), (2, 3)]).unwrap();
        assert!(!is_g_permutation(&g, &p("213")));
        for n in 0..=4 {
            for g in Graph::all_graphs(n) {
                assert!(is_g_permutation(&g, &Permutation::identity(n)));
                for w in Permutation::all(n) {
                    let sigma = tubing::tau(&psi(&g, &w).unwrap()).unwrap().sigma_min();
                    assert_eq!(is_g_permutation(&g, &w), sigma == w, "{g:?} {w}");
                    if g == Graph::complete(n) {
                        assert!(is_g_permutation(&g, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn pi_down_examples() {
        for w in Permutation::all(4) {
            assert_eq!(pi_down(&Graph::complete(4), &w).unwrap(), w);
            let p3 = Graph::path(4);
            let d = pi_down(&p3, &w).unwrap();
            assert!(is_g_permutation(&p3, &d));
            assert_eq!(pi_down(&p3, &d).unwrap(), d);
        }
        assert_eq!(pi_down(&Graph::cycle(4), &p("1234")), Err(Error::NotRightFilled));
    }

    #[test]
    fn arc_examples() {
        assert_eq!(arc_of_cover(&p("32514"), &p("35214")).unwrap(), arc("2-5:-+", 5));
        assert_eq!(arc_of_cover(&p("1324"), &p("1342")).unwrap(), arc("2-4:-", 4));
        assert_eq!(arc_of_cover(&p("1234"), &p("1324")).unwrap(), arc("2-3:", 4));
        assert!(matches!(arc_of_cover(&p("35214"), &p("32514")), Err(Error::NotACover(..))));
        assert_eq!(perm_of_arc(&arc("2-4:+", 4)), p("1423"));
        assert_eq!(perm_of_arc(&arc("1-2:", 3)), p("213"));
        assert_eq!(arc("2-5:-+", 5).to_string(), "2-5:-+");
        assert!(Arc::parse("3-2:", 4).is_err());
        assert!(Arc::parse("1-4:+", 4).is_err());
        assert!(Arc::parse("1-3:x", 4).is_err());
    }

    #[test]
    fn arcs_and_join_irreducibles_round_trip() {
        for n in 0..=5 {
            for a in Arc::all(n) {
                let j = perm_of_arc(&a);
                assert_eq!(j.descent_positions().len(), 1);
                assert_eq!(arc_of_cover(&perm_of_arc_lower(&a), &j).unwrap(), a);
            }
        }
    }

    #[test]
    fn subarc_examples() {
        let a = arc("2-4:+", 4);
        assert!(is_subarc(&a, &arc("1-4:++", 4)));
        assert!(is_subarc(&a, &arc("1-4:-+", 4)));
        assert!(!is_subarc(&a, &arc("1-4:--", 4)));
        for b in Arc::all(4) {
            assert!(is_subarc(&b, &b));
        }
    }

    #[test]
    fn delete_insert_examples() {
        assert_eq!(arc_delete(&arc("2-5:-+", 5), 3).unwrap(), arc("2-4:+", 4));
        assert_eq!(arc_delete(&arc("2-4:+", 4), 1).unwrap(), arc("1-3:+", 3));
        assert!(arc_delete(&arc("1-2:", 3), 1).is_err());
        let mut ins = arc_insertions(&arc("1-2:", 2), 2).unwrap();
        ins.sort();
        assert_eq!(ins, vec![arc("1-3:-", 3), arc("1-3:+", 3)]);
    }

    #[test]
    fn delete_and_insert_are_inverse() {
        for n in 1..=5 {
            for a in Arc::all(n - 1) {
                for v in 1..=n {
                    for b in arc_insertions(&a, v).unwrap() {
                        assert_eq!(arc_delete(&b, v).unwrap(), a);
                    }
                }
            }
            for b in Arc::all(n) {
                for v in (1..=n).filter(|&v| v != b.left() && v != b.right()) {
                    let a = arc_delete(&b, v).unwrap();
                    assert!(arc_insertions(&a, v).unwrap().contains(&b));
                }
            }
        }
    }

    #[test]
    fn congruence_example_from_one_arc() {
        let c = Congruence::from_generators(4, &[arc("2-4:+", 4)]).unwrap();
        let got: Vec<Arc> = c.contracted().iter().cloned().collect();
        let mut want = vec![arc("2-4:+", 4), arc("1-4:++", 4), arc("1-4:-+", 4)];
        want.sort();
        assert_eq!(got, want);
        // each contracted cover merges one pair: 24 - (number of contracted covers) classes
        let classes = c.classes();
        let merged: usize = classes.iter().map(|k| k.len() - 1).sum();
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 24);
        assert!(merged > 0);
        let disc = Congruence::from_generators(4, &[]).unwrap();
        assert_eq!(disc.classes().len(), 24);
        assert!(disc.quotient_poset().is_isomorphism_via(weak_order_poset(4).unwrap(), |w| w.clone()));
    }

    #[test]
    fn congruence_classes_are_intervals() {
        for n in 0..=4 {
            let arcs = Arc::all(n);
            // every single-generator congruence plus a few pairs
            let mut gens: Vec<Vec<Arc>> = arcs.iter().map(|a| vec![a.clone()]).collect();
            for w in arcs.windows(2) {
                gens.push(w.to_vec());
            }
            for g in gens {
                let c = Congruence::from_generators(n, &g).unwrap();
                for class in c.classes() {
                    let lo = class.iter().find(|x| class.iter().all(|y| weak_le(x, y))).expect("class min");
                    let hi = class.iter().find(|x| class.iter().all(|y| weak_le(y, x))).expect("class max");
                    let interval = Permutation::all(n).into_iter().filter(|w| weak_le(lo, w) && weak_le(w, hi)).count();
                    assert_eq!(interval, class.len());
                }
                let (map, _) = c.class_map();
                assert!(is_lattice_congruence(n, &map).unwrap());
            }
        }
    }

    #[test]
    fn metasylvester_is_translational_and_insertional() {
        for k in 0..=3 {
            let sets: Vec<BTreeSet<Arc>> = (0..=6).map(|n| Congruence::metasylvester(n, k).contracted().clone()).collect();
            for (n, s) in sets.iter().enumerate() {
                let direct: BTreeSet<Arc> = Arc::all(n).into_iter().filter(|a| a.plus_count() >= k).collect();
                assert_eq!(s, &direct);
            }
            assert!(translational_by(&sets).holds);
            assert!(insertional_by(&sets).holds);
        }
    }

    #[test]
    fn theta_examples() {
        assert!(generators_of_theta_g(&Graph::complete(5)).unwrap().is_empty());
        let path = generators_of_theta_g(&Graph::path(5)).unwrap();
        assert_eq!(path, (1..=3).map(|i| Arc::positive(5, i, i + 2).unwrap()).collect::<Vec<_>>());
        let h = generators_of_theta_g(&Graph::h_graph(2, 6)).unwrap();
        assert_eq!(h, (1..=3).map(|i| Arc::positive(6, i, i + 3).unwrap()).collect::<Vec<_>>());
        assert_eq!(theta_g(&Graph::cycle(4)).unwrap_err(), Error::NotFilled(4));
    }

    #[test]
    fn theta_matches_fibers_small() {
        for n in 0..=4 {
            for g in Graph::all_graphs(n).into_iter().filter(Graph::is_filled) {
                let c = theta_g(&g).unwrap();
                assert_eq!(c.classes(), psi_fibers(&g), "{g:?}");
                assert_eq!(c.contracted(), &contracted_arcs(&g).unwrap());
            }
        }
    }

    #[test]
    fn lattice_map_examples() {
        let g = Graph::new(3, [(1, 3), (2, 3)]).unwrap();
        let lg = poset::build_lg(&g).unwrap();
        assert!(!preserves_join_at(&g, &lg, &p("213"), &p("132")).unwrap());
        let report = lattice_map_report(&g, &lg);
        assert!(report.join_failure.is_some());
        assert!(!report.holds());
        assert!(is_lattice_quotient_map(&Graph::path(4)).unwrap().holds());
    }

    #[test]
    fn family_check_examples() {
        for k in 0..=3 {
            assert!(is_translational(&GraphFamily::H(k), 6).unwrap().holds);
        }
        assert!(is_insertional(&GraphFamily::Path, 6).unwrap().holds);
        assert_eq!(
            is_translational(&GraphFamily::FromA(crate::graph::DistanceSet::finite([2])), 4).unwrap_err(),
            Error::NotFilled(3)
        );
    }
}

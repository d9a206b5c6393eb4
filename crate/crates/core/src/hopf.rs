//! Formal sums over permutations and maximal tubings, the
//! Malvenuto–Reutenauer (co)product, and the tubing (co)product of a
//! one-parameter graph family.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::check::FamilyCheck;
use crate::error::{Error, Result};
use crate::graph::{DistanceSet, Graph, GraphFamily};
use crate::par;
use crate::perm::Permutation;
use crate::tubing::{self, Tubing};
use crate::vset::VertexSet;

/// A graded basis element.
pub trait BasisKey: Clone + Ord + Send + Sync {
    /// `"F"` for permutations, `"P"` for tubings.
    const BASIS: &'static str;
    fn degree(&self) -> usize;
    fn key_json(&self) -> Value;
    fn label(&self) -> String;
}

impl BasisKey for Permutation {
    const BASIS: &'static str = "F";

    fn degree(&self) -> usize {
        self.len()
    }

    fn key_json(&self) -> Value {
        json!(self.to_string())
    }

    fn label(&self) -> String {
        if self.is_empty() { "ι".into() } else { format!("F_{self}") }
    }
}

impl BasisKey for Tubing {
    const BASIS: &'static str = "P";

    fn degree(&self) -> usize {
        self.n()
    }

    fn key_json(&self) -> Value {
        json!(self.tubes().iter().map(|t| t.to_vec()).collect::<Vec<_>>())
    }

    fn label(&self) -> String {
        if self.n() == 0 { "ι".into() } else { format!("P_{self}") }
    }
}

impl<A: BasisKey, B: BasisKey> BasisKey for (A, B) {
    const BASIS: &'static str = A::BASIS;

    fn degree(&self) -> usize {
        self.0.degree() + self.1.degree()
    }

    fn key_json(&self) -> Value {
        json!([self.0.key_json(), self.1.key_json()])
    }

    fn label(&self) -> String {
        format!("{}⊗{}", self.0.label(), self.1.label())
    }
}

/// An integer combination of basis elements; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: BasisKey> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K) -> Self {
        let mut s = Self::zero();
        s.add_term(key, BigInt::one());
        s
    }

    pub fn add_term(&mut self, key: K, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &FormalSum<K>, scale: &BigInt) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn add(&mut self, other: &FormalSum<K>) {
        self.add_scaled(other, &BigInt::one());
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Whether every coefficient is 1.
    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.values().all(One::is_one)
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<L: BasisKey>(&self, f: impl Fn(&K) -> FormalSum<L> + Sync) -> FormalSum<L> {
        let entries: Vec<(&K, &BigInt)> = self.terms.iter().collect();
        let images = par::map(&entries, |(k, _)| f(k));
        let mut out = FormalSum::zero();
        for ((_, c), img) in entries.into_iter().zip(images) {
            out.add_scaled(&img, c);
        }
        out
    }

    pub fn try_map_linear<L: BasisKey>(&self, f: impl Fn(&K) -> Result<FormalSum<L>> + Sync) -> Result<FormalSum<L>> {
        let entries: Vec<(&K, &BigInt)> = self.terms.iter().collect();
        let images = par::map(&entries, |(k, _)| f(k));
        let mut out = FormalSum::zero();
        for ((_, c), img) in entries.into_iter().zip(images) {
            out.add_scaled(&img?, c);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": K::BASIS,
            "terms": self.terms.iter().map(|(k, c)| json!({
                "degree": k.degree(),
                "key": k.key_json(),
                "coeff": c.to_string().parse::<Value>().unwrap_or_else(|_| json!(c.to_string())),
            })).collect::<Vec<_>>(),
        })
    }
}

impl<K: BasisKey> FromIterator<K> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = K>>(iter: I) -> Self {
        let mut s = FormalSum::zero();
        for k in iter {
            s.add_term(k, 1);
        }
        s
    }
}

impl<K: BasisKey> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            write!(f, "{}", k.label())?;
        }
        Ok(())
    }
}

/// `a ⊗ b` of two sums, by bilinearity.
pub fn tensor<A: BasisKey, B: BasisKey>(a: &FormalSum<A>, b: &FormalSum<B>) -> FormalSum<(A, B)> {
    let mut out = FormalSum::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_term((x.clone(), y.clone()), cx * cy);
        }
    }
    out
}

/// All words obtained by interleaving `a` and `b`.
fn shuffles(a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a.len() + b.len());
    fn go(a: &[usize], b: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if a.is_empty() && b.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            cur.push(x);
            go(rest, b, cur, out);
            cur.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            cur.push(y);
            go(a, rest, cur, out);
            cur.pop();
        }
    }
    go(a, b, &mut cur, &mut out);
    out
}

/// F_u · F_w: shuffles of `u` with `w` shifted by `|u|`.
pub fn mr_product(u: &Permutation, w: &Permutation) -> FormalSum<Permutation> {
    let shifted: Vec<usize> = w.word().iter().map(|&x| x + u.len()).collect();
    shuffles(u.word(), &shifted).into_iter().map(Permutation::from_vec_unchecked).collect()
}

pub fn mr_product_sums(a: &FormalSum<Permutation>, b: &FormalSum<Permutation>) -> FormalSum<Permutation> {
    let mut out = FormalSum::zero();
    for (u, cu) in a.iter() {
        for (w, cw) in b.iter() {
            out.add_scaled(&mr_product(u, w), &(cu * cw));
        }
    }
    out
}

/// Δ(F_u) = Σ F_std(prefix) ⊗ F_std(suffix).
pub fn mr_coproduct(u: &Permutation) -> FormalSum<(Permutation, Permutation)> {
    let w = u.word();
    (0..=w.len())
        .map(|i| (Permutation::standardize(&w[..i]), Permutation::standardize(&w[i..])))
        .collect()
}

/// `(Δ⊗id)Δ(F_u) = (id⊗Δ)Δ(F_u)`.
pub fn mr_coassociative_at(u: &Permutation) -> bool {
    let first = mr_coproduct(u);
    let mut left: BTreeMap<(Permutation, Permutation, Permutation), BigInt> = BTreeMap::new();
    let mut right = left.clone();
    for ((a, b), c) in first.iter() {
        for ((x, y), d) in mr_coproduct(a).iter() {
            *left.entry((x.clone(), y.clone(), b.clone())).or_default() += c * d;
        }
        for ((x, y), d) in mr_coproduct(b).iter() {
            *right.entry((a.clone(), x.clone(), y.clone())).or_default() += c * d;
        }
    }
    left == right
}

/// The `K_n` dictionary: a maximal tubing of `K_n` is a chain, read bottom to top.
pub fn complete_tubing_to_perm(x: &Tubing) -> Result<Permutation> {
    Ok(tubing::tau(x)?.sigma_min())
}

pub fn perm_to_complete_tubing(w: &Permutation) -> Tubing {
    tubing::psi_unchecked(&Graph::complete(w.len()), w)
}

/// c(P_X) = Σ F_w over linear extensions of τ(X).
pub fn embed_c(x: &Tubing) -> Result<FormalSum<Permutation>> {
    Ok(tubing::tau(x)?.linear_extensions().into_iter().collect())
}

fn require_subgraph(h: &Graph, g: &Graph) -> Result<()> {
    if h.n() == g.n() && h.is_subgraph_of(g) { Ok(()) } else { Err(Error::NotASubgraph) }
}

/// Ψ_H^G(W) = Ψ_H(u) for any linear extension `u` of τ(W).
pub fn coarsen(h: &Graph, g: &Graph, w: &Tubing) -> Result<Tubing> {
    require_subgraph(h, g)?;
    let t = tubing::tau(w)?;
    let x = tubing::psi_unchecked(h, &t.sigma_min());
    debug_assert_eq!(x, tubing::psi_unchecked(h, &t.sigma_max()));
    Ok(x)
}

/// The fiber of `x` under Ψ_H^G, namely Ψ_G applied to the linear extensions of τ_H(x).
pub fn coarsening_fiber(h: &Graph, g: &Graph, x: &Tubing) -> Result<Vec<Tubing>> {
    require_subgraph(h, g)?;
    let mut out: Vec<Tubing> =
        tubing::tau(x)?.linear_extensions().iter().map(|u| tubing::psi_unchecked(g, u)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// c_H^G(P_X) = Σ P_W over the fiber of `x`.
pub fn fiber_sum(h: &Graph, g: &Graph, x: &Tubing) -> Result<FormalSum<Tubing>> {
    Ok(coarsening_fiber(h, g, x)?.into_iter().collect())
}

/// A graph family with memoized bases `MTub(G_n)`.
pub struct TubingAlgebra {
    family: GraphFamily,
    bases: Mutex<HashMap<usize, Arc<Vec<Tubing>>>>,
}

impl TubingAlgebra {
    pub fn new(family: GraphFamily) -> Self {
        TubingAlgebra { family, bases: Mutex::new(HashMap::new()) }
    }

    pub fn family(&self) -> &GraphFamily {
        &self.family
    }

    pub fn graph(&self, n: usize) -> Graph {
        self.family.graph(n)
    }

    /// `MTub(G_n)`, sorted.
    pub fn basis(&self, n: usize) -> Arc<Vec<Tubing>> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return b.clone();
        }
        let mut b = tubing::enumerate_maximal_tubings(&self.graph(n));
        b.sort();
        let b = Arc::new(b);
        self.bases.lock().unwrap().entry(n).or_insert(b).clone()
    }

    fn require_basis(&self, x: &Tubing) -> Result<()> {
        if self.basis(x.n()).binary_search(x).is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidTubing(format!("{x} is not a maximal tubing of {}_{}", self.family.name(), x.n())))
        }
    }

    /// `G_{n+m}|_{[n]} = G_n` and `std(G_{n+m}|_{[m]+n}) = G_m`.
    pub fn admissible_at(&self, n: usize, m: usize) -> Result<()> {
        let big = self.graph(n + m);
        let fail = |detail: String| Error::NotAdmissibleAtDegree { n, m, detail };
        let left = big.std_induced(VertexSet::interval(1, n))?;
        if left != self.graph(n) {
            return Err(fail(format!("restriction of G_{} to [1,{n}] has edges {:?}, G_{n} has {:?}", n + m, left.edges(), self.graph(n).edges())));
        }
        let right = big.std_induced(VertexSet::interval(n + 1, n + m))?;
        if right != self.graph(m) {
            return Err(fail(format!("restriction of G_{} to [{},{}] standardizes to edges {:?}, G_{m} has {:?}", n + m, n + 1, n + m, right.edges(), self.graph(m).edges())));
        }
        Ok(())
    }

    /// P_X · P_Y: every Z in MTub(G_{n+m}) restricting to X on `[n]` and to Y on `[m]+n`.
    pub fn product(&self, x: &Tubing, y: &Tubing) -> Result<FormalSum<Tubing>> {
        let (n, m) = (x.n(), y.n());
        self.admissible_at(n, m)?;
        self.require_basis(x)?;
        self.require_basis(y)?;
        let g = self.graph(n + m);
        let (lo, hi) = (VertexSet::interval(1, n), VertexSet::interval(n + 1, n + m));
        let basis = self.basis(n + m);
        let keep = par::map(&basis, |z| {
            tubing::restrict_tubing(&g, z, lo).map(|t| t.standardize().1 == *x).unwrap_or(false)
                && tubing::restrict_tubing(&g, z, hi).map(|t| t.standardize().1 == *y).unwrap_or(false)
        });
        Ok(basis.iter().zip(keep).filter(|(_, k)| *k).map(|(z, _)| z.clone()).collect())
    }

    pub fn product_sums(&self, a: &FormalSum<Tubing>, b: &FormalSum<Tubing>) -> Result<FormalSum<Tubing>> {
        let mut out = FormalSum::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_scaled(&self.product(x, y)?, &(cx * cy));
            }
        }
        Ok(out)
    }

    /// Δ(P_X) summed over ideals of X, each side pushed into the family by c.
    pub fn coproduct(&self, x: &Tubing) -> Result<FormalSum<(Tubing, Tubing)>> {
        self.require_basis(x)?;
        let n = x.n();
        let g = self.graph(n);
        let mut out = FormalSum::zero();
        for ideal in tubing::ideals(x)? {
            let k = ideal.len();
            let (h_left, x_left) = tubing::restrict_tubing(&g, x, ideal)?.standardize();
            let (h_right, x_right) = tubing::quotient_tubing(&g, x, ideal)?.standardize();
            let (g_left, g_right) = (self.graph(k), self.graph(n - k));
            if !h_left.is_subgraph_of(&g_left) {
                return Err(Error::NotRestrictionCompatible(format!("std(G_{n}|{ideal}) ⊄ G_{k}")));
            }
            if !h_right.is_subgraph_of(&g_right) {
                return Err(Error::NotRestrictionCompatible(format!("std(G_{n}/{ideal}) ⊄ G_{}", n - k)));
            }
            let left = fiber_sum(&h_left, &g_left, &x_left)?;
            let right = fiber_sum(&h_right, &g_right, &x_right)?;
            out.add(&tensor(&left, &right));
        }
        Ok(out)
    }
}

pub fn tubing_product(family: &GraphFamily, x: &Tubing, y: &Tubing) -> Result<FormalSum<Tubing>> {
    TubingAlgebra::new(family.clone()).product(x, y)
}

pub fn tubing_coproduct(family: &GraphFamily, x: &Tubing) -> Result<FormalSum<(Tubing, Tubing)>> {
    TubingAlgebra::new(family.clone()).coproduct(x)
}

/// Degree pairs `(n, m)` with `n, m >= 1` and `n + m <= n_max`.
fn degree_pairs(n_max: usize) -> Vec<(usize, usize)> {
    (1..n_max).flat_map(|n| (1..=n_max - n).map(move |m| (n, m))).collect()
}

/// Restrictions of `G_{n+m}` match `G_n` and shifted `G_m` for `n + m <= N`.
pub fn is_admissible(family: &GraphFamily, n_max: usize) -> FamilyCheck {
    let alg = TubingAlgebra::new(family.clone());
    for (n, m) in degree_pairs(n_max) {
        if let Err(e) = alg.admissible_at(n, m) {
            return FamilyCheck::failed(n_max, e.to_string());
        }
    }
    FamilyCheck::verified(n_max)
}

fn require_admissible(alg: &TubingAlgebra, n_max: usize) -> Result<()> {
    degree_pairs(n_max).into_iter().try_for_each(|(n, m)| alg.admissible_at(n, m))
}

/// `A ∩ [N-1]` read from the edges `{1, k+1}` of `G_{k+1}`; reported as
/// `all` when every distance below `N` occurs.
pub fn recover_a(family: &GraphFamily, n_max: usize) -> DistanceSet {
    let set: Vec<usize> = (1..n_max).filter(|&k| family.graph(k + 1).has_edge(1, k + 1)).collect();
    if n_max > 1 && set.len() == n_max - 1 { DistanceSet::All } else { DistanceSet::finite(set) }
}

/// (P_X P_Y) P_Z = P_X (P_Y P_Z) for all degree triples summing to at most `N`.
pub fn check_associativity(family: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    let alg = TubingAlgebra::new(family.clone());
    require_admissible(&alg, n_max)?;
    let mut cases = Vec::new();
    for a in 1..=n_max {
        for b in 1..=n_max.saturating_sub(a) {
            for c in 1..=n_max.saturating_sub(a + b) {
                for x in alg.basis(a).iter() {
                    for y in alg.basis(b).iter() {
                        for z in alg.basis(c).iter() {
                            cases.push((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
    }
    let failure = par::find_map_first(cases.len(), |i| {
        let (x, y, z) = &cases[i];
        let run = || -> Result<bool> {
            let left = alg.product_sums(&alg.product(x, y)?, &FormalSum::single(z.clone()))?;
            let right = alg.product_sums(&FormalSum::single(x.clone()), &alg.product(y, z)?)?;
            Ok(left == right)
        };
        match run() {
            Ok(true) => None,
            Ok(false) => Some(Ok(format!("(P_{x} P_{y}) P_{z} differs from P_{x} (P_{y} P_{z})"))),
            Err(e) => Some(Err(e)),
        }
    });
    match failure {
        None => Ok(FamilyCheck::verified(n_max)),
        Some(Ok(w)) => Ok(FamilyCheck::failed(n_max, w)),
        Some(Err(e)) => Err(e),
    }
}

/// `std(G_n|_I) ⊆ G_{|I|}` and `std(G_n/I) ⊆ G_{n-|I|}` for every `I ⊆ [n]`, `n <= N`.
pub fn is_restriction_compatible(family: &GraphFamily, n_max: usize) -> FamilyCheck {
    let graphs: Vec<Graph> = (0..=n_max).map(|n| family.graph(n)).collect();
    for n in 1..=n_max {
        let g = &graphs[n];
        let witness = par::find_map_first(1 << n, |bits| {
            let set = VertexSet::from_bits(bits as u32);
            let k = set.len();
            let sub = g.std_induced(set).expect("subset of [n]");
            if !sub.is_subgraph_of(&graphs[k]) {
                return Some(format!("std(G_{n}|{set}) has edges {:?}, not within G_{k}", sub.edges()));
            }
            let quo = g.std_contract(set).expect("subset of [n]");
            (!quo.is_subgraph_of(&graphs[n - k]))
                .then(|| format!("std(G_{n}/{set}) has edges {:?}, not within G_{}", quo.edges(), n - k))
        });
        if let Some(w) = witness {
            return FamilyCheck::failed(n_max, w);
        }
    }
    FamilyCheck::verified(n_max)
}

fn fail_or_verified(n_max: usize, witness: Option<Result<String>>) -> Result<FamilyCheck> {
    match witness {
        None => Ok(FamilyCheck::verified(n_max)),
        Some(Ok(w)) => Ok(FamilyCheck::failed(n_max, w)),
        Some(Err(e)) => Err(e),
    }
}

fn require_nested(small: &TubingAlgebra, big: &TubingAlgebra, n_max: usize) -> Result<()> {
    (0..=n_max).try_for_each(|n| require_subgraph(&small.graph(n), &big.graph(n)))
}

/// c(P_X · P_Y) = c(P_X) · c(P_Y) for `c: K[small] → K[big]`, degrees summing to at most `N`.
pub fn check_c_algebra_map(small: &GraphFamily, big: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    let (s, b) = (TubingAlgebra::new(small.clone()), TubingAlgebra::new(big.clone()));
    require_nested(&s, &b, n_max)?;
    require_admissible(&s, n_max)?;
    require_admissible(&b, n_max)?;
    let c = |x: &Tubing| fiber_sum(&s.graph(x.n()), &b.graph(x.n()), x);
    let cases: Vec<(Tubing, Tubing)> = degree_pairs(n_max)
        .into_iter()
        .flat_map(|(n, m)| {
            let (bn, bm) = (s.basis(n), s.basis(m));
            bn.iter().flat_map(|x| bm.iter().map(move |y| (x.clone(), y.clone()))).collect::<Vec<_>>()
        })
        .collect();
    let witness = par::find_map_first(cases.len(), |i| {
        let (x, y) = &cases[i];
        let run = || -> Result<bool> {
            let lhs = s.product(x, y)?.try_map_linear(c)?;
            let rhs = b.product_sums(&c(x)?, &c(y)?)?;
            Ok(lhs == rhs)
        };
        match run() {
            Ok(true) => None,
            Ok(false) => Some(Ok(format!("c(P_{x} P_{y}) ≠ c(P_{x}) c(P_{y})"))),
            Err(e) => Some(Err(e)),
        }
    });
    fail_or_verified(n_max, witness)
}

/// c(P_X · P_Y) = c(P_X) · c(P_Y) with c landing in the permutation basis.
pub fn check_embedding_into_mr(family: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    let alg = TubingAlgebra::new(family.clone());
    require_admissible(&alg, n_max)?;
    let cases: Vec<(Tubing, Tubing)> = degree_pairs(n_max)
        .into_iter()
        .flat_map(|(n, m)| {
            let (bn, bm) = (alg.basis(n), alg.basis(m));
            bn.iter().flat_map(|x| bm.iter().map(move |y| (x.clone(), y.clone()))).collect::<Vec<_>>()
        })
        .collect();
    let witness = par::find_map_first(cases.len(), |i| {
        let (x, y) = &cases[i];
        let run = || -> Result<bool> {
            let lhs = alg.product(x, y)?.try_map_linear(embed_c)?;
            Ok(lhs == mr_product_sums(&embed_c(x)?, &embed_c(y)?))
        };
        match run() {
            Ok(true) => None,
            Ok(false) => Some(Ok(format!("c(P_{x} P_{y}) ≠ c(P_{x}) c(P_{y}) in the permutation basis"))),
            Err(e) => Some(Err(e)),
        }
    });
    fail_or_verified(n_max, witness)
}

/// Ψ^B(W)|_{[n]} = Ψ^B(W|_{[n]}) and likewise on `[m]+n`, for `W` in `MTub(G^B_{n+m})`.
pub fn check_coarsening_restriction(small: &GraphFamily, big: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    let (s, b) = (TubingAlgebra::new(small.clone()), TubingAlgebra::new(big.clone()));
    require_nested(&s, &b, n_max)?;
    require_admissible(&s, n_max)?;
    require_admissible(&b, n_max)?;
    for (n, m) in degree_pairs(n_max) {
        let (gs, gb) = (s.graph(n + m), b.graph(n + m));
        let basis = b.basis(n + m);
        let witness = par::find_map_first(basis.len(), |i| {
            let w = &basis[i];
            let run = || -> Result<bool> {
                let cw = coarsen(&gs, &gb, w)?;
                for part in [VertexSet::interval(1, n), VertexSet::interval(n + 1, n + m)] {
                    let k = part.len();
                    let restricted_then = tubing::restrict_tubing(&gs, &cw, part)?.standardize().1;
                    let coarsen_after = coarsen(&s.graph(k), &b.graph(k), &tubing::restrict_tubing(&gb, w, part)?.standardize().1)?;
                    if restricted_then != coarsen_after {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(Ok(format!("coarsening of {w} does not commute with restriction at ({n},{m})"))),
                Err(e) => Some(Err(e)),
            }
        });
        if witness.is_some() {
            return fail_or_verified(n_max, witness);
        }
    }
    Ok(FamilyCheck::verified(n_max))
}

/// Δ(c(P_X)) = (c⊗c)(Δ(P_X)) for all X of degree at most `N`.
pub fn check_c_commutes_with_delta(family: &GraphFamily, n_max: usize) -> Result<FamilyCheck> {
    let rc = is_restriction_compatible(family, n_max);
    if !rc.holds {
        return Err(Error::NotRestrictionCompatible(rc.witness.unwrap_or_default()));
    }
    let alg = TubingAlgebra::new(family.clone());
    for n in 0..=n_max {
        let basis = alg.basis(n);
        let witness = par::find_map_first(basis.len(), |i| {
            let x = &basis[i];
            let run = || -> Result<bool> {
                let lhs = embed_c(x)?.map_linear(mr_coproduct);
                let rhs = alg.coproduct(x)?.try_map_linear(|(a, b)| Ok(tensor(&embed_c(a)?, &embed_c(b)?)))?;
                Ok(lhs == rhs)
            };
            match run() {
                Ok(true) => None,
                Ok(false) => Some(Ok(format!("Δ(c(P_{x})) ≠ (c⊗c)(Δ(P_{x}))"))),
                Err(e) => Some(Err(e)),
            }
        });
        if witness.is_some() {
            return fail_or_verified(n_max, witness);
        }
    }
    Ok(FamilyCheck::verified(n_max))
}

//! Concrete finite groups, finite G-sets, Burnside-ring elements and the
//! orbifold Euler characteristic of finite sets.
//!
//! A [`FiniteGroup`] is a full multiplication table. Subgroups are sorted
//! element lists; a Burnside element lives over a subgroup (`over`) of the
//! ambient table and is keyed by conjugacy-class representatives, the
//! representative being the lexicographically smallest conjugate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::abgrp::{AbHom, AbSubgroup, FinAbGroup};
use crate::error::{Error, Result};
use crate::pc::PermutationGroup;
use crate::perm::Permutation;

/// Default cap on the order of a tabulated group.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 2_000;

const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 128;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    abelian: bool,
}

/// A subgroup as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgp(Vec<u32>);

impl Subgp {
    pub(crate) fn from_sorted(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgp(elements)
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgp) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table with identity `0`.
    pub fn from_table(order: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        if order == 0 || table.len() != order * order || labels.len() != order {
            return Err(Error::InvalidParameters("malformed multiplication table".into()));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::InvalidParameters("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let mut seen = vec![false; order];
            for &x in row {
                if x as usize >= order || seen[x as usize] {
                    return Err(Error::InvalidParameters("table row is not a permutation".into()));
                }
                seen[x as usize] = true;
            }
            inverse[a] = row.iter().position(|&x| x == 0).expect("row is a permutation") as u32;
        }
        let mut group = FiniteGroup { order, table, inverse, labels, abelian: false };
        group.check_associativity()?;
        group.abelian = (0..order as u32).all(|a| (0..a).all(|b| group.commute(a, b)));
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            Box::new((0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))))
        } else {
            // deterministic stride sample
            Box::new((0..200_000usize).map(move |i| {
                let a = i.wrapping_mul(2_654_435_761) % n;
                let b = i.wrapping_mul(40_503) % n;
                let c = (i / n + i) % n;
                (a, b, c)
            }))
        };
        for (a, b, c) in triples {
            let (a, b, c) = (a as u32, b as u32, c as u32);
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InvalidParameters(format!("table is not associative at ({a},{b},{c})")));
            }
        }
        Ok(())
    }

    /// The abelian group with the same element indexing.
    pub fn from_abelian(g: &FinAbGroup, cap: usize) -> Result<Self> {
        let n = g.order();
        if n > cap {
            return Err(Error::CapExceeded { what: "group order", size: n, cap });
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.add(a, b) as u32);
            }
        }
        let labels = g.elements().map(|x| g.format_element(x)).collect();
        Self::from_table(n, table, labels)
    }

    /// The permutation group with the indexing of `s.elements()`.
    pub fn from_permutations(s: &PermutationGroup) -> Result<Self> {
        let elems = s.elements();
        let index: HashMap<&Permutation, u32> = elems.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                table.push(index[&a.compose(b)]);
            }
        }
        Self::from_table(n, table, elems.iter().map(Permutation::to_string).collect())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn whole(&self) -> Subgp {
        Subgp((0..self.order as u32).collect())
    }

    pub fn trivial(&self) -> Subgp {
        Subgp(vec![0])
    }

    pub fn subgroup_generated(&self, gens: &[u32]) -> Subgp {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut elems = vec![0u32];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgp(elems)
    }

    /// Validates a subset as a subgroup.
    pub fn subgroup(&self, elements: Vec<u32>) -> Result<Subgp> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        let s = Subgp(elements);
        if !s.contains(0) || s.0.iter().any(|&a| a as usize >= self.order) {
            return Err(Error::NotSubgroup("must contain the identity".into()));
        }
        for &a in &s.0 {
            for &b in &s.0 {
                if !s.contains(self.mul(a, self.inv(b))) {
                    return Err(Error::NotSubgroup(format!("{} elements not closed", s.0.len())));
                }
            }
        }
        Ok(s)
    }

    pub fn conjugate(&self, k: &Subgp, x: u32) -> Subgp {
        let xi = self.inv(x);
        let mut out: Vec<u32> = k.0.iter().map(|&a| self.mul(self.mul(x, a), xi)).collect();
        out.sort_unstable();
        Subgp(out)
    }

    /// The lexicographically smallest conjugate `x·K·x⁻¹` with `x ∈ within`,
    /// together with the first such `x`.
    pub fn conjugacy_rep(&self, k: &Subgp, within: &Subgp) -> (Subgp, u32) {
        if self.abelian {
            return (k.clone(), 0);
        }
        let mut best = (k.clone(), 0u32);
        for &x in &within.0 {
            let c = self.conjugate(k, x);
            if c < best.0 {
                best = (c, x);
            }
        }
        best
    }

    pub fn are_conjugate(&self, a: &Subgp, b: &Subgp, within: &Subgp) -> Option<u32> {
        if a.order() != b.order() {
            return None;
        }
        within.0.iter().copied().find(|&x| self.conjugate(a, x) == *b)
    }

    /// Number of conjugacy classes of elements of `h`.
    pub fn conj_class_count(&self, h: &Subgp) -> usize {
        if self.abelian {
            return h.order();
        }
        let mut seen = vec![false; self.order];
        let mut classes = 0;
        for &a in &h.0 {
            if seen[a as usize] {
                continue;
            }
            classes += 1;
            for &x in &h.0 {
                let c = self.mul(self.mul(x, a), self.inv(x));
                seen[c as usize] = true;
            }
        }
        classes
    }

    /// All subgroups of `within`, as joins of cyclic subgroups, sorted.
    pub fn subgroups(&self, within: &Subgp, cap: usize) -> Result<Vec<Subgp>> {
        let mut cyclic: Vec<Subgp> = within.0.iter().map(|&g| self.subgroup_generated(&[g])).collect();
        cyclic.sort();
        cyclic.dedup();
        let mut all: std::collections::BTreeSet<Subgp> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Subgp> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.is_subset_of(h) {
                        continue;
                    }
                    let mut gens = h.0.clone();
                    gens.push(c.0[c.0.len() - 1]);
                    gens.extend_from_slice(&c.0);
                    let j = self.subgroup_generated(&gens);
                    if all.insert(j.clone()) {
                        if all.len() > cap {
                            return Err(Error::CapExceeded { what: "subgroup count", size: all.len(), cap });
                        }
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Ok(all.into_iter().collect())
    }

    pub fn to_json(&self, with_table: bool) -> Value {
        let mut v = json!({ "order": self.order, "elements": self.labels });
        if with_table {
            let rows: Vec<Vec<u32>> = self.table.chunks(self.order).map(<[u32]>::to_vec).collect();
            v["table"] = json!(rows);
        }
        v
    }
}

/// A finite set with an action of a subgroup `actor` of the ambient table.
#[derive(Clone, Debug)]
pub struct GSet {
    actor: Subgp,
    npoints: usize,
    // action[i][x] = actor.elements()[i] · x
    action: Vec<Vec<u32>>,
}

impl GSet {
    pub fn from_fn(actor: &Subgp, npoints: usize, act: impl Fn(u32, u32) -> u32) -> Self {
        let action = actor
            .0
            .iter()
            .map(|&g| (0..npoints as u32).map(|x| act(g, x)).collect())
            .collect();
        GSet { actor: actor.clone(), npoints, action }
    }

    /// The one-point set.
    pub fn point(actor: &Subgp) -> Self {
        Self::from_fn(actor, 1, |_, _| 0)
    }

    /// Left cosets `x·K` for `x ∈ container`, translated by `actor`.
    pub fn cosets(group: &FiniteGroup, container: &Subgp, k: &Subgp, actor: &Subgp) -> Result<Self> {
        if !k.is_subset_of(container) || !actor.is_subset_of(container) {
            return Err(Error::NotSubgroup("coset space needs K, actor ≤ container".into()));
        }
        let mut coset_of = vec![u32::MAX; group.order()];
        let mut reps = Vec::new();
        for &x in &container.0 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &a in &k.0 {
                coset_of[group.mul(x, a) as usize] = id;
            }
        }
        Ok(Self::from_fn(actor, reps.len(), |g, c| coset_of[group.mul(g, reps[c as usize]) as usize]))
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<Self> {
        if self.actor != other.actor {
            return Err(Error::InvalidParameters("disjoint union needs a common actor".into()));
        }
        let offset = self.npoints as u32;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&x| x + offset)).collect())
            .collect();
        Ok(GSet { actor: self.actor.clone(), npoints: self.npoints + other.npoints, action })
    }

    pub fn actor(&self) -> &Subgp {
        &self.actor
    }

    pub fn len(&self) -> usize {
        self.npoints
    }

    pub fn is_empty(&self) -> bool {
        self.npoints == 0
    }

    pub fn act(&self, actor_pos: usize, x: u32) -> u32 {
        self.action[actor_pos][x as usize]
    }

    /// Identity acts trivially and `g·(h·x) = (gh)·x`.
    pub fn check_axioms(&self, group: &FiniteGroup) -> bool {
        let pos: HashMap<u32, usize> = self.actor.0.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        if self.action[pos[&0]].iter().enumerate().any(|(x, &y)| x as u32 != y) {
            return false;
        }
        for (i, &g) in self.actor.0.iter().enumerate() {
            for (j, &h) in self.actor.0.iter().enumerate() {
                let gh = pos[&group.mul(g, h)];
                for x in 0..self.npoints {
                    if self.action[i][self.action[j][x] as usize] != self.action[gh][x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn stabilizer(&self, x: u32) -> Subgp {
        Subgp(
            self.actor
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| self.action[*i][x as usize] == x)
                .map(|(_, &g)| g)
                .collect(),
        )
    }

    /// Orbit representatives (smallest point of each orbit), ascending.
    pub fn orbit_representatives(&self) -> Vec<u32> {
        let mut seen = vec![false; self.npoints];
        let mut reps = Vec::new();
        for x in 0..self.npoints {
            if seen[x] {
                continue;
            }
            reps.push(x as u32);
            for row in &self.action {
                seen[row[x] as usize] = true;
            }
        }
        reps
    }

    fn fixed_bitsets(&self) -> Vec<Vec<u64>> {
        let words = self.npoints.div_ceil(64);
        self.action
            .iter()
            .map(|row| {
                let mut bits = vec![0u64; words];
                for (x, &y) in row.iter().enumerate() {
                    if x as u32 == y {
                        bits[x / 64] |= 1 << (x % 64);
                    }
                }
                bits
            })
            .collect()
    }
}

/// Orbifold Euler characteristic of a finite set, from the definition:
/// `(1/|H|) Σ_{gh = hg} |X^⟨g,h⟩|`.
pub fn chi_orb_set(group: &FiniteGroup, x: &GSet) -> Result<i64> {
    let fixed = x.fixed_bitsets();
    let actors = &x.actor.0;
    let mut sum: i64 = 0;
    for (i, &g) in actors.iter().enumerate() {
        for (j, &h) in actors.iter().enumerate() {
            if group.commute(g, h) {
                sum += fixed[i].iter().zip(&fixed[j]).map(|(a, b)| (a & b).count_ones() as i64).sum::<i64>();
            }
        }
    }
    let order = actors.len() as i64;
    if sum % order != 0 {
        return Err(Error::NonIntegral { sum, order: actors.len() });
    }
    Ok(sum / order)
}

/// An integer combination of classes `[over/K]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    over: Subgp,
    terms: BTreeMap<Subgp, i64>,
}

impl BurnsideElement {
    pub fn zero(over: &Subgp) -> Self {
        BurnsideElement { over: over.clone(), terms: BTreeMap::new() }
    }

    /// `coeff·[over/K]`, with `K` replaced by its class representative.
    pub fn generator(group: &FiniteGroup, over: &Subgp, k: &Subgp, coeff: i64) -> Result<Self> {
        if !k.is_subset_of(over) {
            return Err(Error::NotSubgroup("K is not contained in the acting group".into()));
        }
        let mut b = Self::zero(over);
        b.add_term(group.conjugacy_rep(k, over).0, coeff);
        Ok(b)
    }

    fn add_term(&mut self, k: Subgp, coeff: i64) {
        let entry = self.terms.entry(k).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn over(&self) -> &Subgp {
        &self.over
    }

    pub fn terms(&self) -> &BTreeMap<Subgp, i64> {
        &self.terms
    }

    pub fn coefficient(&self, rep: &Subgp) -> i64 {
        self.terms.get(rep).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BurnsideElement) -> BurnsideElement {
        assert_eq!(self.over, other.over, "Burnside elements over different groups");
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: i64) -> BurnsideElement {
        let mut out = Self::zero(&self.over);
        if s != 0 {
            out.terms = self.terms.iter().map(|(k, &c)| (k.clone(), c * s)).collect();
        }
        out
    }

    pub fn sub(&self, other: &BurnsideElement) -> BurnsideElement {
        self.add(&other.scale(-1))
    }

    /// Cardinality of the represented set: `Σ c_K·[over : K]`.
    pub fn cardinality(&self) -> i64 {
        self.terms.iter().map(|(k, &c)| c * (self.over.order() / k.order()) as i64).sum()
    }

    pub fn to_json(&self, group: &FiniteGroup) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, &c)| {
                    json!({
                        "subgroup": k.0.iter().map(|&x| group.label(x)).collect::<Vec<_>>(),
                        "coeff": c,
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c}·[H/K|{}|]", k.order())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One isotropy stratum seen by [`equivariant_chi_with_witnesses`]:
/// `witness · stabilizer · witness⁻¹ = representative`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub point: u32,
    pub stabilizer: Subgp,
    pub representative: Subgp,
    pub witness: u32,
}

/// `χ^H(X) = Σ_[K] #(orbits with isotropy in [K]) · [H/K]`.
pub fn equivariant_chi(group: &FiniteGroup, x: &GSet) -> BurnsideElement {
    equivariant_chi_with_witnesses(group, x).0
}

pub fn equivariant_chi_with_witnesses(group: &FiniteGroup, x: &GSet) -> (BurnsideElement, Vec<Stratum>) {
    let mut b = BurnsideElement::zero(&x.actor);
    let mut strata = Vec::new();
    let mut reps_cache: HashMap<Subgp, (Subgp, u32)> = HashMap::new();
    for p in x.orbit_representatives() {
        let stab = x.stabilizer(p);
        let (rep, witness) = reps_cache
            .entry(stab.clone())
            .or_insert_with(|| group.conjugacy_rep(&stab, &x.actor))
            .clone();
        b.add_term(rep.clone(), 1);
        strata.push(Stratum { point: p, stabilizer: stab, representative: rep, witness });
    }
    (b, strata)
}

/// `χ^orb` of a Burnside element seen by `actor ≤ b.over()`: every term is
/// realized as a coset space, reduced to `actor` and counted by definition.
pub fn chi_orb_burnside(group: &FiniteGroup, b: &BurnsideElement, actor: &Subgp) -> Result<i64> {
    let mut total = 0;
    for (k, &c) in &b.terms {
        let x = GSet::cosets(group, &b.over, k, actor)?;
        total += c * chi_orb_set(group, &x)?;
    }
    Ok(total)
}

/// `Red^{over}_H`.
pub fn reduce(group: &FiniteGroup, b: &BurnsideElement, h: &Subgp) -> Result<BurnsideElement> {
    if !h.is_subset_of(&b.over) {
        return Err(Error::NotSubgroup("reduction target is not a subgroup".into()));
    }
    let mut out = BurnsideElement::zero(h);
    for (k, &c) in &b.terms {
        let x = GSet::cosets(group, &b.over, k, h)?;
        out = out.add(&equivariant_chi(group, &x).scale(c));
    }
    Ok(out)
}

/// `Ind^{G}_{over}`: `[over/K] ↦ [G/K]`.
pub fn induce(group: &FiniteGroup, b: &BurnsideElement, g: &Subgp) -> Result<BurnsideElement> {
    if !b.over.is_subset_of(g) {
        return Err(Error::NotSubgroup("induction source is not a subgroup of the target".into()));
    }
    let mut out = BurnsideElement::zero(g);
    for (k, &c) in &b.terms {
        out.add_term(group.conjugacy_rep(k, g).0, c);
    }
    Ok(out)
}

/// `G ⋊ S` for an abelian `G` and a permutation group `S` acting through
/// `actions[s]`. Element `(g, s)` has id `g·|S| + s`; multiplication is
/// `(g,σ)(g',σ') = (g + σ(g'), σσ')`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    group: FiniteGroup,
    abelian: Arc<FinAbGroup>,
    perms: PermutationGroup,
    actions: Vec<AbHom>,
}

impl SemidirectProduct {
    pub fn new(abelian: &Arc<FinAbGroup>, perms: &PermutationGroup, actions: Vec<AbHom>, cap: usize) -> Result<Self> {
        let (na, ns) = (abelian.order(), perms.order());
        let n = na * ns;
        if n > cap {
            return Err(Error::CapExceeded { what: "semidirect product order", size: n, cap });
        }
        let s_index: HashMap<&Permutation, usize> = perms.elements().iter().enumerate().map(|(i, p)| (p, i)).collect();
        let s_mul: Vec<Vec<usize>> = perms
            .elements()
            .iter()
            .map(|a| perms.elements().iter().map(|b| s_index[&a.compose(b)]).collect())
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for g in 0..na {
            for s in 0..ns {
                for g2 in 0..na {
                    for s2 in 0..ns {
                        let h = abelian.add(g, actions[s].apply(g2));
                        table.push((h * ns + s_mul[s][s2]) as u32);
                    }
                }
            }
        }
        let labels = (0..na)
            .flat_map(|g| {
                perms
                    .elements()
                    .iter()
                    .map(move |p| format!("({}; {})", abelian.format_element(g), p))
            })
            .collect();
        let group = FiniteGroup::from_table(n, table, labels)?;
        Ok(SemidirectProduct { group, abelian: Arc::clone(abelian), perms: perms.clone(), actions })
    }

    /// `G ⋊ S` with the natural action on rational coordinates.
    pub fn natural(abelian: &Arc<FinAbGroup>, perms: &PermutationGroup, cap: usize) -> Result<Self> {
        let actions = perms.elements().iter().map(|p| abelian.perm_action(p)).collect::<Result<_>>()?;
        Self::new(abelian, perms, actions, cap)
    }

    /// `G* ⋊ S` with the contragredient action `φ*` on the dual group.
    pub fn contragredient(dual: &Arc<FinAbGroup>, perms: &PermutationGroup, cap: usize) -> Result<Self> {
        let actions = perms
            .elements()
            .iter()
            .map(|p| dual.contragredient_perm_action(p))
            .collect::<Result<_>>()?;
        Self::new(dual, perms, actions, cap)
    }

    /// `G* ⋊ S` with `φ*(σ)` the adjoint of `φ(σ⁻¹)`; applied twice it
    /// returns the original product under `G** = G`.
    pub fn dual(&self, cap: usize) -> Result<Self> {
        let dual = self.abelian.dual();
        let actions = self
            .perms
            .elements()
            .iter()
            .map(|p| {
                let inv = self.perms.index_of(&p.inverse()).expect("groups are closed under inverses");
                self.actions[inv].dual()
            })
            .collect();
        Self::new(&dual, &self.perms, actions, cap)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn abelian(&self) -> &Arc<FinAbGroup> {
        &self.abelian
    }

    pub fn perms(&self) -> &PermutationGroup {
        &self.perms
    }

    pub fn action(&self, s: usize) -> &AbHom {
        &self.actions[s]
    }

    pub fn element(&self, g: usize, s: usize) -> u32 {
        (g * self.perms.order() + s) as u32
    }

    pub fn split(&self, x: u32) -> (usize, usize) {
        let ns = self.perms.order();
        (x as usize / ns, x as usize % ns)
    }

    /// `H ⋊ T` for `H ≤ G` and `T` given by indices into `perms().elements()`.
    pub fn subgroup(&self, h: &AbSubgroup, t: &[usize]) -> Result<Subgp> {
        for &s in t {
            if !h.is_invariant_under(&self.actions[s]) {
                return Err(Error::NotInvariant(self.perms.elements()[s].to_string()));
            }
        }
        let mut elems: Vec<u32> = h.members().iter().flat_map(|&g| t.iter().map(move |&s| (g, s))).map(|(g, s)| self.element(g, s)).collect();
        elems.sort_unstable();
        elems.dedup();
        self.group.subgroup(elems)
    }

    /// Decomposes a subgroup of the form `H ⋊ T`; `None` otherwise.
    pub fn semidirect_parts(&self, k: &Subgp) -> Option<(AbSubgroup, Vec<usize>)> {
        let mut h = Vec::new();
        let mut t = Vec::new();
        for &x in k.elements() {
            let (g, s) = self.split(x);
            if s == 0 {
                h.push(g);
            }
            t.push(s);
        }
        t.sort_unstable();
        t.dedup();
        if h.len() * t.len() != k.order() {
            return None;
        }
        let hs = self.abelian.subgroup_from_members(&h).ok()?;
        for &g in hs.members() {
            for &s in &t {
                if !k.contains(self.element(g, s)) {
                    return None;
                }
            }
        }
        Some((hs, t))
    }

    /// Index of the identity permutation.
    pub fn identity_perm(&self) -> usize {
        0
    }

    /// All indices of `perms()`.
    pub fn all_perms(&self) -> Vec<usize> {
        (0..self.perms.order()).collect()
    }
}

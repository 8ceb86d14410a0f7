//! Equivariant Saito duality: `D_H[H/K] = [H*/K̃]` for abelian `H`, and
//! `D^⋊[G⋊S / H⋊T] = [G*⋊S / H̃⋊T]` on the subgroup of the Burnside group
//! spanned by semidirect-shaped classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::abgrp::{AbSubgroup, FinAbGroup};
use crate::burnside::{BurnsideElement, FiniteGroup, SemidirectProduct, Subgp};
use crate::error::{Error, Result};

/// An abelian group with its multiplication table, sharing element indices.
#[derive(Clone, Debug)]
pub struct AbelianTable {
    group: Arc<FinAbGroup>,
    table: FiniteGroup,
}

impl AbelianTable {
    pub fn new(group: &Arc<FinAbGroup>, cap: usize) -> Result<Self> {
        Ok(AbelianTable { group: Arc::clone(group), table: FiniteGroup::from_abelian(group, cap)? })
    }

    pub fn group(&self) -> &Arc<FinAbGroup> {
        &self.group
    }

    pub fn table(&self) -> &FiniteGroup {
        &self.table
    }

    pub fn whole(&self) -> Subgp {
        self.table.whole()
    }

    pub fn subgp(&self, h: &AbSubgroup) -> Subgp {
        Subgp::from_sorted(h.members().iter().map(|&x| x as u32).collect())
    }

    pub fn ab_subgroup(&self, k: &Subgp) -> AbSubgroup {
        let members: Vec<usize> = k.elements().iter().map(|&x| x as usize).collect();
        self.group.subgroup_from_members(&members).expect("Subgp of an abelian table is a subgroup")
    }

    /// `coeff·[G/K]` over the whole group.
    pub fn generator(&self, k: &AbSubgroup, coeff: i64) -> BurnsideElement {
        BurnsideElement::generator(&self.table, &self.whole(), &self.subgp(k), coeff).expect("K ≤ G")
    }
}

/// `D_H` on an element over the whole of `src`; `dst` must be the dual group.
pub fn saito_dual_abelian(src: &AbelianTable, dst: &AbelianTable, b: &BurnsideElement) -> Result<BurnsideElement> {
    if *dst.group != *src.group.dual() {
        return Err(Error::InvalidParameters("target is not the dual group".into()));
    }
    if *b.over() != src.whole() {
        return Err(Error::NotSubgroup("abelian duality acts on elements over the whole group".into()));
    }
    let mut out = BurnsideElement::zero(&dst.whole());
    for (k, &c) in b.terms() {
        out = out.add(&dst.generator(&src.ab_subgroup(k).dual(), c));
    }
    Ok(out)
}

/// The smallest conjugate of `k` under `over` that has the form `H⋊T`,
/// with a conjugating element.
pub fn semidirect_class_rep(sd: &SemidirectProduct, k: &Subgp, over: &Subgp) -> Result<(Subgp, u32)> {
    let g = sd.group();
    let mut best: Option<(Subgp, u32)> = None;
    for &x in over.elements() {
        let c = g.conjugate(k, x);
        if best.as_ref().is_some_and(|(b, _)| c >= *b) {
            continue;
        }
        if sd.semidirect_parts(&c).is_some() {
            best = Some((c, x));
        }
    }
    best.ok_or(Error::NotSemidirect)
}

/// All `H⋊T` with `T ≤ S` (as index lists) and `H ≤ G` invariant under `T`.
pub fn semidirect_subgroups(sd: &SemidirectProduct, cap: usize) -> Result<Vec<(AbSubgroup, Vec<usize>)>> {
    let subs = sd.abelian().enumerate_subgroups(cap)?;
    let mut out = Vec::new();
    for t in sd.perms().subgroups()? {
        let idx = perm_indices(sd, &t);
        for h in &subs {
            if idx.iter().all(|&s| h.is_invariant_under(sd.action(s))) {
                out.push((h.clone(), idx.clone()));
            }
        }
    }
    Ok(out)
}

/// Indices into `sd.perms().elements()` of a subgroup `T ≤ S`.
pub fn perm_indices(sd: &SemidirectProduct, t: &crate::pc::PermutationGroup) -> Vec<usize> {
    let mut idx: Vec<usize> = t
        .elements()
        .iter()
        .map(|p| sd.perms().index_of(p).expect("T ≤ S"))
        .collect();
    idx.sort_unstable();
    idx
}

/// An integer combination of classes `[G⋊S′ / H⋊T]`, keyed by the smallest
/// semidirect-shaped conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectBurnside {
    s_sub: Vec<usize>,
    over: Subgp,
    terms: BTreeMap<Subgp, i64>,
}

impl SemidirectBurnside {
    /// The zero element over `G ⋊ S′`, `S′` given by permutation indices.
    pub fn zero(sd: &SemidirectProduct, s_sub: &[usize]) -> Result<Self> {
        let mut s_sub = s_sub.to_vec();
        s_sub.sort_unstable();
        s_sub.dedup();
        let over = sd.subgroup(&sd.abelian().full_subgroup(), &s_sub)?;
        Ok(SemidirectBurnside { s_sub, over, terms: BTreeMap::new() })
    }

    pub fn generator(sd: &SemidirectProduct, s_sub: &[usize], h: &AbSubgroup, t: &[usize], coeff: i64) -> Result<Self> {
        let mut b = Self::zero(sd, s_sub)?;
        if !t.iter().all(|s| b.s_sub.contains(s)) {
            return Err(Error::NotSubgroup("T is not contained in S′".into()));
        }
        let k = sd.subgroup(h, t)?;
        b.add_class(sd, &k, coeff)?;
        Ok(b)
    }

    fn add_class(&mut self, sd: &SemidirectProduct, k: &Subgp, coeff: i64) -> Result<()> {
        let (rep, _) = semidirect_class_rep(sd, k, &self.over)?;
        let entry = self.terms.entry(rep).or_insert(0);
        *entry += coeff;
        self.terms.retain(|_, c| *c != 0);
        Ok(())
    }

    /// Re-expresses a general element; fails if a class has no `H⋊T` member.
    pub fn from_burnside(sd: &SemidirectProduct, s_sub: &[usize], b: &BurnsideElement) -> Result<Self> {
        let mut out = Self::zero(sd, s_sub)?;
        if *b.over() != out.over {
            return Err(Error::NotSubgroup("element is not over G⋊S′".into()));
        }
        for (k, &c) in b.terms() {
            out.add_class(sd, k, c)?;
        }
        Ok(out)
    }

    pub fn to_burnside(&self, sd: &SemidirectProduct) -> BurnsideElement {
        let mut out = BurnsideElement::zero(&self.over);
        for (k, &c) in &self.terms {
            out = out.add(&BurnsideElement::generator(sd.group(), &self.over, k, c).expect("term below over"));
        }
        out
    }

    pub fn s_sub(&self) -> &[usize] {
        &self.s_sub
    }

    pub fn over(&self) -> &Subgp {
        &self.over
    }

    pub fn terms(&self) -> &BTreeMap<Subgp, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parts(&self, sd: &SemidirectProduct) -> Vec<(AbSubgroup, Vec<usize>, i64)> {
        self.terms
            .iter()
            .map(|(k, &c)| {
                let (h, t) = sd.semidirect_parts(k).expect("terms are semidirect");
                (h, t, c)
            })
            .collect()
    }

    pub fn add(&self, other: &SemidirectBurnside) -> SemidirectBurnside {
        assert_eq!(self.over, other.over, "elements over different groups");
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            *out.terms.entry(k.clone()).or_insert(0) += c;
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn scale(&self, s: i64) -> SemidirectBurnside {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c *= s);
        out.terms.retain(|_, c| *c != 0);
        out
    }

    pub fn to_json(&self, sd: &SemidirectProduct) -> Value {
        Value::Array(
            self.parts(sd)
                .into_iter()
                .map(|(h, t, c)| {
                    json!({
                        "subgroup": h.generators_display(),
                        "T": t.iter().map(|&s| sd.perms().elements()[s].to_string()).collect::<Vec<_>>(),
                        "coeff": c,
                    })
                })
                .collect(),
        )
    }
}

fn check_dual_pair(sd: &SemidirectProduct, sd_dual: &SemidirectProduct) -> Result<()> {
    if **sd_dual.abelian() != *sd.abelian().dual() || sd_dual.perms() != sd.perms() {
        return Err(Error::InvalidParameters("second product is not the dual of the first".into()));
    }
    Ok(())
}

/// `D^⋊`: `[G⋊S′ / H⋊T] ↦ [G*⋊S′ / H̃⋊T]`.
pub fn saito_dual_nonabelian(sd: &SemidirectProduct, sd_dual: &SemidirectProduct, b: &SemidirectBurnside) -> Result<SemidirectBurnside> {
    check_dual_pair(sd, sd_dual)?;
    let mut out = SemidirectBurnside::zero(sd_dual, &b.s_sub)?;
    for (h, t, c) in b.parts(sd) {
        let k = sd_dual.subgroup(&h.dual(), &t)?;
        out.add_class(sd_dual, &k, c)?;
    }
    Ok(out)
}

/// `[G⋊S′ / H⋊T] ↦ [G⋊S″ / H⋊T]` for `S′ ≤ S″`.
pub fn induce_semidirect(sd: &SemidirectProduct, b: &SemidirectBurnside, s_target: &[usize]) -> Result<SemidirectBurnside> {
    let mut out = SemidirectBurnside::zero(sd, s_target)?;
    if !b.s_sub.iter().all(|s| out.s_sub.contains(s)) {
        return Err(Error::NotSubgroup("induction source is not below the target".into()));
    }
    for (k, &c) in &b.terms {
        out.add_class(sd, k, c)?;
    }
    Ok(out)
}

/// Whether `H1⋊T1, H2⋊T2` are conjugate in `G⋊S`, and whether their duals
/// are conjugate in `G*⋊S`.
pub fn check_conjugacy_duality(
    sd: &SemidirectProduct,
    sd_dual: &SemidirectProduct,
    first: (&AbSubgroup, &[usize]),
    second: (&AbSubgroup, &[usize]),
) -> Result<(bool, bool)> {
    check_dual_pair(sd, sd_dual)?;
    let k1 = sd.subgroup(first.0, first.1)?;
    let k2 = sd.subgroup(second.0, second.1)?;
    let d1 = sd_dual.subgroup(&first.0.dual(), first.1)?;
    let d2 = sd_dual.subgroup(&second.0.dual(), second.1)?;
    let here = sd.group().are_conjugate(&k1, &k2, &sd.group().whole()).is_some();
    let there = sd_dual.group().are_conjugate(&d1, &d2, &sd_dual.group().whole()).is_some();
    Ok((here, there))
}

/// `Ind ∘ D^⋊ = D^⋊ ∘ Ind` on `b`, inducing to `s_target`.
pub fn check_induction_diagram(
    sd: &SemidirectProduct,
    sd_dual: &SemidirectProduct,
    b: &SemidirectBurnside,
    s_target: &[usize],
) -> Result<bool> {
    let up_then_dual = saito_dual_nonabelian(sd, sd_dual, &induce_semidirect(sd, b, s_target)?)?;
    let dual_then_up = induce_semidirect(sd_dual, &saito_dual_nonabelian(sd, sd_dual, b)?, s_target)?;
    Ok(up_then_dual == dual_then_up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::DEFAULT_MAX_GROUP_ORDER;
    use crate::pc::PermutationGroup;
    use crate::perm::Permutation;
    use crate::poly::periodic_loop;

    fn loop_pair() -> (SemidirectProduct, SemidirectProduct) {
        let f = periodic_loop(&[2], 3).unwrap();
        let g = FinAbGroup::symmetry_group(&f);
        let s = PermutationGroup::generated(3, &[Permutation::shift(3, 1)]).unwrap();
        let sd = SemidirectProduct::natural(&g, &s, DEFAULT_MAX_GROUP_ORDER).unwrap();
        let dual = sd.dual(DEFAULT_MAX_GROUP_ORDER).unwrap();
        (sd, dual)
    }

    #[test]
    fn abelian_duality_examples() {
        let g = FinAbGroup::cyclic_product(&[2, 6]).unwrap();
        let src = AbelianTable::new(&g, 100).unwrap();
        let dst = AbelianTable::new(&g.dual(), 100).unwrap();
        let full = src.generator(&g.full_subgroup(), 1);
        assert_eq!(saito_dual_abelian(&src, &dst, &full).unwrap(), dst.generator(&dst.group().trivial_subgroup(), 1));
        let free = src.generator(&g.trivial_subgroup(), 1);
        assert_eq!(saito_dual_abelian(&src, &dst, &free).unwrap(), dst.generator(&dst.group().full_subgroup(), 1));
        assert!(saito_dual_abelian(&src, &src, &free).is_err() || g.dual() == g);
    }

    #[test]
    fn abelian_duality_is_an_involution() {
        for inv in [vec![12], vec![2, 4], vec![2, 2, 2], vec![3, 9], vec![4, 4], vec![2, 2, 4]] {
            let g = FinAbGroup::cyclic_product(&inv).unwrap();
            let src = AbelianTable::new(&g, 100).unwrap();
            let dst = AbelianTable::new(&g.dual(), 100).unwrap();
            let back = AbelianTable::new(&dst.group().dual(), 100).unwrap();
            for k in g.enumerate_subgroups(1000).unwrap() {
                let b = src.generator(&k, 3);
                let d = saito_dual_abelian(&src, &dst, &b).unwrap();
                assert_eq!(d.cardinality() * b.cardinality(), 9 * g.order() as i64);
                assert_eq!(saito_dual_abelian(&dst, &back, &d).unwrap(), b);
            }
        }
    }

    #[test]
    fn nonabelian_duality_examples() {
        let (sd, dual) = loop_pair();
        let all = sd.all_perms();
        let a = sd.abelian();
        let e_s = SemidirectBurnside::generator(&sd, &all, &a.trivial_subgroup(), &all, 1).unwrap();
        let d = saito_dual_nonabelian(&sd, &dual, &e_s).unwrap();
        let expect = SemidirectBurnside::generator(&dual, &all, &dual.abelian().full_subgroup(), &all, 1).unwrap();
        assert_eq!(d, expect);
        let g_s = SemidirectBurnside::generator(&sd, &all, &a.full_subgroup(), &all, 1).unwrap();
        let d = saito_dual_nonabelian(&sd, &dual, &g_s).unwrap();
        let expect = SemidirectBurnside::generator(&dual, &all, &dual.abelian().trivial_subgroup(), &all, 1).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn nonabelian_duality_is_an_involution() {
        let (sd, dual) = loop_pair();
        let back = dual.dual(DEFAULT_MAX_GROUP_ORDER).unwrap();
        assert_eq!(back.abelian(), sd.abelian());
        let all = sd.all_perms();
        for (h, t) in semidirect_subgroups(&sd, 1000).unwrap() {
            let b = SemidirectBurnside::generator(&sd, &all, &h, &t, 2).unwrap();
            let d = saito_dual_nonabelian(&sd, &dual, &b).unwrap();
            let dd = saito_dual_nonabelian(&dual, &back, &d).unwrap();
            assert_eq!(dd.terms(), b.terms());
        }
    }

    #[test]
    fn conjugacy_duality_agrees_on_all_pairs() {
        let (sd, dual) = loop_pair();
        let subs = semidirect_subgroups(&sd, 1000).unwrap();
        assert_eq!(subs.len(), 3 + 3);
        let mut conjugate_pairs = 0;
        for (h1, t1) in &subs {
            for (h2, t2) in &subs {
                let (a, b) = check_conjugacy_duality(&sd, &dual, (h1, t1), (h2, t2)).unwrap();
                assert_eq!(a, b);
                conjugate_pairs += a as usize;
            }
        }
        assert!(conjugate_pairs >= subs.len());
    }

    #[test]
    fn induction_commutes_with_duality() {
        let (sd, dual) = loop_pair();
        let all = sd.all_perms();
        let e = [sd.identity_perm()];
        for h in sd.abelian().enumerate_subgroups(100).unwrap() {
            let b = SemidirectBurnside::generator(&sd, &e, &h, &e, 1).unwrap();
            assert!(check_induction_diagram(&sd, &dual, &b, &all).unwrap());
            assert!(check_induction_diagram(&sd, &dual, &b, &e).unwrap());
        }
    }

    #[test]
    fn general_elements_must_be_semidirect() {
        let (sd, _) = loop_pair();
        let g = sd.group();
        let all = sd.all_perms();
        let ok = BurnsideElement::generator(g, &g.whole(), &g.trivial(), 1).unwrap();
        assert!(SemidirectBurnside::from_burnside(&sd, &all, &ok).is_ok());
        // ⟨(g, σ)⟩ with g ∉ image of A_σ is not conjugate to any H⋊T
        let a = sd.abelian();
        let delta = a.a_delta(&sd.perms().elements()[1]).unwrap();
        let outside = a.elements().find(|&x| !delta.image(&a.full_subgroup()).contains(x)).unwrap();
        let k = g.subgroup_generated(&[sd.element(outside, 1)]);
        let bad = BurnsideElement::generator(g, &g.whole(), &k, 1).unwrap();
        assert!(matches!(SemidirectBurnside::from_burnside(&sd, &all, &bad), Err(Error::NotSemidirect)));
    }
}

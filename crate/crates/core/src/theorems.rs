//! Executable checks of the duality identities. Every quantity is computed
//! by a definition-level count and by an independent closed formula; a
//! disagreement between the two is a [`Error::RouteMismatch`], while a
//! failure of an identity is reported as a counterexample.

use std::sync::Arc;
use std::time::Instant;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::abgrp::{AbHom, AbSubgroup, FinAbGroup};
use crate::burnside::{chi_orb_burnside, chi_orb_set, reduce, BurnsideElement, GSet, SemidirectProduct, Subgp};
use crate::duality::{perm_indices, saito_dual_abelian, AbelianTable, SemidirectBurnside};
use crate::error::{Error, Result};
use crate::pc::{is_pc, loop_shift_group, PermutationGroup};
use crate::poly::{periodic_loop, InvertiblePolynomial};

/// Caps applied to group tables and subgroup enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_group_order: usize,
    pub max_subgroups: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_group_order: crate::burnside::DEFAULT_MAX_GROUP_ORDER,
            max_subgroups: crate::abgrp::DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub params: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub instance: String,
    pub cases: Vec<Case>,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

impl VerificationReport {
    fn new(instance: String) -> Self {
        VerificationReport {
            instance,
            cases: Vec::new(),
            verdict: Verdict::Verified,
            witnesses: Vec::new(),
            notes: Vec::new(),
            ms: None,
        }
    }

    fn push(&mut self, params: Value, lhs: Value, rhs: Value, equal: bool) {
        if !equal {
            self.witnesses.push(params.clone());
        }
        self.cases.push(Case { params, lhs, rhs, equal });
    }

    /// Sets the verdict from the cases unless `exploratory`.
    fn finish(mut self, start: Instant, exploratory: bool) -> Self {
        self.verdict = if exploratory {
            Verdict::Inconclusive
        } else if self.cases.iter().all(|c| c.equal) {
            Verdict::Verified
        } else {
            Verdict::Counterexample
        };
        self.ms = Some(start.elapsed().as_millis() as u64);
        self
    }

    pub fn all_equal(&self) -> bool {
        self.cases.iter().all(|c| c.equal)
    }

    /// Concatenates reports of one family.
    pub fn merge(instance: String, reports: Vec<VerificationReport>) -> Self {
        let mut out = VerificationReport::new(instance);
        let mut ms = 0;
        let mut exploratory = false;
        for r in reports {
            exploratory |= r.verdict == Verdict::Inconclusive;
            ms += r.ms.unwrap_or(0);
            out.cases.extend(r.cases);
            out.witnesses.extend(r.witnesses);
            for n in r.notes {
                if !out.notes.contains(&n) {
                    out.notes.push(n);
                }
            }
        }
        out.verdict = if exploratory {
            Verdict::Inconclusive
        } else if out.all_equal() {
            Verdict::Verified
        } else {
            Verdict::Counterexample
        };
        out.ms = Some(ms);
        out
    }
}

fn mismatch(what: &str, a: impl std::fmt::Display, b: impl std::fmt::Display) -> Error {
    Error::RouteMismatch(format!("{what}: {a} vs {b}"))
}

fn group_label(g: &FinAbGroup) -> String {
    if g.invariants().is_empty() {
        return "trivial group".into();
    }
    g.invariants().iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
}

/// Tables, subgroups and dual terms shared by all `G ≤ 𝒢`.
struct AbelianContext {
    big: Arc<FinAbGroup>,
    src: AbelianTable,
    dst: AbelianTable,
    terms: Vec<(AbSubgroup, BurnsideElement, BurnsideElement, Value)>,
}

impl AbelianContext {
    fn new(big: &Arc<FinAbGroup>, caps: Caps) -> Result<Self> {
        let src = AbelianTable::new(big, caps.max_group_order)?;
        let dst = AbelianTable::new(&big.dual(), caps.max_group_order)?;
        let terms = big
            .enumerate_subgroups(caps.max_subgroups)?
            .into_iter()
            .map(|k| {
                let b = src.generator(&k, 1);
                let d = saito_dual_abelian(&src, &dst, &b)?;
                let label = json!(k.generators_display());
                Ok((k, b, d, label))
            })
            .collect::<Result<_>>()?;
        Ok(AbelianContext { big: Arc::clone(big), src, dst, terms })
    }

    fn verify(&self, g: &AbSubgroup) -> Result<VerificationReport> {
        let start = Instant::now();
        let big = &self.big;
        let gt = g.dual();
        let (g_sub, gt_sub) = (self.src.subgp(g), self.dst.subgp(&gt));
        let mut report = VerificationReport::new(format!("abelian reduction on {}, G = {}", group_label(big), g));
        let g_label = json!(g.generators_display());
        for (k, b, d, k_label) in &self.terms {
            let common = k.members().iter().filter(|&&x| g.contains(x)).count();
            let closed = (big.order() / sum_order(big, k, g) * common) as i64;
            let lhs = abelian_side(&self.src, b, &g_sub)?;
            let rhs = abelian_side(&self.dst, d, &gt_sub)?;
            if lhs != closed {
                return Err(mismatch("left side vs closed form", lhs, closed));
            }
            if rhs != closed {
                return Err(mismatch("right side vs closed form", rhs, closed));
            }
            report.push(
                json!({ "G": g_label, "K": k_label, "closed_form": closed }),
                json!(lhs),
                json!(rhs),
                lhs == rhs,
            );
        }
        Ok(report.finish(start, false))
    }
}

fn sum_order(big: &FinAbGroup, k: &AbSubgroup, g: &AbSubgroup) -> usize {
    let mut seen = vec![false; big.order()];
    for &a in k.members() {
        for &b in g.members() {
            seen[big.add(a, b)] = true;
        }
    }
    seen.into_iter().filter(|&x| x).count()
}

/// `χ^orb(Red_G [𝒢/K]) = χ^orb(Red_{G̃} D[𝒢/K])` for every `K ≤ 𝒢`, both
/// sides also compared with `|𝒢|/|K+G|·|K∩G|`.
pub fn verify_abelian_theorem(big: &Arc<FinAbGroup>, g: &AbSubgroup, caps: Caps) -> Result<VerificationReport> {
    AbelianContext::new(big, caps)?.verify(g)
}

/// `χ^orb(Red_G b)` by the Burnside route, cross-checked by direct counting.
fn abelian_side(table: &AbelianTable, b: &BurnsideElement, actor: &Subgp) -> Result<i64> {
    let group = table.table();
    let via_burnside = chi_orb_burnside(group, &reduce(group, b, actor)?, actor)?;
    let mut direct = 0;
    for (k, &c) in b.terms() {
        direct += c * chi_orb_set(group, &GSet::cosets(group, b.over(), k, actor)?)?;
    }
    if via_burnside != direct {
        return Err(mismatch("Burnside route vs direct count", via_burnside, direct));
    }
    Ok(direct)
}

/// [`verify_abelian_theorem`] for every `G ≤ 𝒢`.
pub fn verify_abelian_theorem_all(big: &Arc<FinAbGroup>, caps: Caps) -> Result<VerificationReport> {
    let ctx = AbelianContext::new(big, caps)?;
    let reports = ctx.terms.iter().map(|(g, ..)| ctx.verify(g)).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::merge(format!("abelian reduction on {}, all G", group_label(big)), reports))
}

/// `A⁻¹(G)~ = A*(G̃)` for an endomorphism `A`.
pub fn check_dual_endomorphism_lemma(a: &AbHom, g: &AbSubgroup) -> bool {
    a.preimage(g).dual() == a.dual().image(&g.dual())
}

/// The dual pair of semidirect products for `f` and `S`, after checking
/// invariance of `f`.
pub fn semidirect_pair(f: &InvertiblePolynomial, s: &PermutationGroup, caps: Caps) -> Result<(SemidirectProduct, SemidirectProduct)> {
    if s.n() != f.n() {
        return Err(Error::Arity { expected: f.n(), got: s.n() });
    }
    for sigma in s.generators() {
        if !f.is_invariant_under(sigma)? {
            return Err(Error::NotInvariant(format!("{sigma} (polynomial)")));
        }
    }
    let gf = FinAbGroup::symmetry_group(f);
    let sd = SemidirectProduct::natural(&gf, s, caps.max_group_order)?;
    let dual = sd.dual(caps.max_group_order)?;
    Ok((sd, dual))
}

fn perms_label(s: &PermutationGroup) -> String {
    s.to_string()
}

/// `#{ρ ∈ S : ρ⁻¹σρ, ρ⁻¹σ′ρ ∈ T} / |T|`.
fn coset_count(s: &PermutationGroup, t: &PermutationGroup, i: usize, j: usize) -> i64 {
    let (a, b) = (&s.elements()[i], &s.elements()[j]);
    let hits = s
        .elements()
        .iter()
        .filter(|rho| {
            let ri = rho.inverse();
            t.contains(&ri.compose(a).compose(rho)) && t.contains(&ri.compose(b).compose(rho))
        })
        .count();
    (hits / t.order()) as i64
}

/// The main theorem on extremal orbit spaces:
/// `χ^orb(Ĝ/{e}⋊T, G⋊S) = χ^orb(Ĝ*/G*⋊T, G̃⋊S)`.
pub fn verify_main_theorem(
    f: &InvertiblePolynomial,
    s: &PermutationGroup,
    g: &AbSubgroup,
    t: &PermutationGroup,
    caps: Caps,
) -> Result<VerificationReport> {
    let (sd, dual) = semidirect_pair(f, s, caps)?;
    main_theorem_case(&sd, &dual, g, t)
}

fn main_theorem_case(sd: &SemidirectProduct, dual: &SemidirectProduct, g: &AbSubgroup, t: &PermutationGroup) -> Result<VerificationReport> {
    let start = Instant::now();
    let s = sd.perms();
    let gf = sd.abelian();
    if **g.parent() != **gf {
        return Err(Error::NotSubgroup("G is not a subgroup of G_f".into()));
    }
    if !t.is_subgroup_of(s) {
        return Err(Error::NotSubgroup(format!("T = {t} is not contained in S = {s}")));
    }
    let all = sd.all_perms();
    let t_idx = perm_indices(sd, t);
    let gt = g.dual();
    let mut report = VerificationReport::new(format!("extremal orbit spaces, S = {}, G = {}, T = {}", perms_label(s), g, t));

    // brute force
    let actor = sd.subgroup(g, &all)?;
    let k_left = sd.subgroup(&gf.trivial_subgroup(), &t_idx)?;
    let lhs = chi_orb_set(sd.group(), &GSet::cosets(sd.group(), &sd.group().whole(), &k_left, &actor)?)?;
    let actor_dual = dual.subgroup(&gt, &all)?;
    let k_right = dual.subgroup(&dual.abelian().full_subgroup(), &t_idx)?;
    let rhs = chi_orb_set(dual.group(), &GSet::cosets(dual.group(), &dual.group().whole(), &k_right, &actor_dual)?)?;

    // factor formulas
    let a: Vec<AbHom> = s.elements().iter().map(|p| gf.a_delta(p)).collect::<Result<_>>()?;
    let a_star: Vec<AbHom> = a.iter().map(AbHom::dual).collect();
    let pre: Vec<AbSubgroup> = a.iter().map(|h| h.preimage(g)).collect();
    let img: Vec<AbSubgroup> = a_star.iter().map(|h| h.image(&gt)).collect();
    let ker: Vec<usize> = a_star.iter().map(|h| h.kernel().intersection(&gt).order()).collect();
    for (i, p) in s.elements().iter().enumerate() {
        if pre[i].dual() != img[i] {
            return Err(mismatch("dual of A⁻¹(G) vs A*(G̃)", &pre[i], &img[i]));
        }
        let inv = s.index_of(&p.inverse()).expect("closed");
        let a_dual_product = AbHom::identity(dual.abelian()).sub(dual.action(inv));
        if a_dual_product != a_star[i] {
            return Err(mismatch("adjoint of A_σ vs I − φ*(σ⁻¹)", p, "dual product"));
        }
    }
    let mut left = Ratio::from_integer(0i64);
    let mut right = Ratio::from_integer(0i64);
    for i in 0..s.order() {
        for j in 0..s.order() {
            let (si, sj) = (&s.elements()[i], &s.elements()[j]);
            if si.compose(sj) != sj.compose(si) {
                continue;
            }
            if a[i].compose(&a[j]) != a[j].compose(&a[i]) {
                return Err(mismatch("A_σ A_σ′ vs A_σ′ A_σ", si, sj));
            }
            let nt = coset_count(s, t, i, j);
            if nt == 0 {
                continue;
            }
            let l = pre[i].intersection(&pre[j]).order() as i64;
            left += Ratio::new(l * nt, g.order() as i64);
            let r = (img[i].intersection(&img[j]).order() * ker[i] * ker[j]) as i64;
            right += Ratio::new(r * nt, gt.order() as i64);
        }
    }
    left /= s.order() as i64;
    right /= s.order() as i64;
    if left != Ratio::from_integer(lhs) {
        return Err(mismatch("left side: brute force vs factor formula", lhs, left));
    }
    if right != Ratio::from_integer(rhs) {
        return Err(mismatch("right side: brute force vs factor formula", rhs, right));
    }
    check_commuting_criterion(sd)?;
    report.push(
        json!({ "G": g.generators_display(), "T": t.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "G_order": g.order(), "T_order": t.order() }),
        json!(lhs),
        json!(rhs),
        lhs == rhs,
    );
    Ok(report.finish(start, false))
}

/// `(g,σ)` and `(g′,σ′)` commute iff `σσ′ = σ′σ` and `A_σ′(g) = A_σ(g′)`.
fn check_commuting_criterion(sd: &SemidirectProduct) -> Result<()> {
    let grp = sd.group();
    let gf = sd.abelian();
    let s = sd.perms();
    let a: Vec<AbHom> = s.elements().iter().map(|p| gf.a_delta(p)).collect::<Result<_>>()?;
    for x in 0..grp.order() as u32 {
        let (g1, s1) = sd.split(x);
        for y in 0..grp.order() as u32 {
            let (g2, s2) = sd.split(y);
            let (p1, p2) = (&s.elements()[s1], &s.elements()[s2]);
            let criterion = p1.compose(p2) == p2.compose(p1) && a[s2].apply(g1) == a[s1].apply(g2);
            if criterion != grp.commute(x, y) {
                return Err(mismatch("commuting-pair criterion vs table", grp.label(x), grp.label(y)));
            }
        }
    }
    Ok(())
}

/// [`verify_main_theorem`] for all `S`-invariant `G` and all `T ≤ S`.
pub fn verify_main_theorem_all(f: &InvertiblePolynomial, s: &PermutationGroup, caps: Caps) -> Result<VerificationReport> {
    let (sd, dual) = semidirect_pair(f, s, caps)?;
    let mut reports = Vec::new();
    let subs = invariant_subgroups(&sd, caps)?;
    for t in s.subgroups()? {
        for g in &subs {
            reports.push(main_theorem_case(&sd, &dual, g, &t)?);
        }
    }
    Ok(VerificationReport::merge(format!("extremal orbit spaces for {f}, S = {s}, all G and T"), reports))
}

pub fn invariant_subgroups(sd: &SemidirectProduct, caps: Caps) -> Result<Vec<AbSubgroup>> {
    let actions: Vec<AbHom> = (0..sd.perms().order()).map(|i| sd.action(i).clone()).collect();
    sd.abelian().enumerate_invariant_subgroups(caps.max_subgroups, &actions)
}

/// A periodic loop with its shift group and the dual pair of products.
pub struct LoopInstance {
    pub f: InvertiblePolynomial,
    pub s: PermutationGroup,
    pub sd: SemidirectProduct,
    pub dual: SemidirectProduct,
    pub pc: bool,
}

impl LoopInstance {
    pub fn new(p: &[u32], k: usize, caps: Caps) -> Result<Self> {
        let f = periodic_loop(p, k)?;
        let s = loop_shift_group(p.len(), k)?;
        let (sd, dual) = semidirect_pair(&f, &s, caps)?;
        // the transposed loop is again a periodic loop whose natural action
        // is the contragredient one
        let ft = f.transpose();
        let natural_dual = SemidirectProduct::natural(&FinAbGroup::symmetry_group(&ft), &s, caps.max_group_order)?;
        for i in 0..s.order() {
            if natural_dual.action(i) != dual.action(i) {
                return Err(mismatch("natural action on G_f̃ vs contragredient action", &s.elements()[i], &ft));
            }
        }
        let pc = is_pc(&s)?.holds;
        Ok(LoopInstance { f, s, sd, dual, pc })
    }

    pub fn kl(&self) -> usize {
        self.f.n()
    }
}

/// `χ̄^{G_f⋊S}(V_f) = (−1)^{kℓ−1}[Ĝ/{e}⋊S] − [Ĝ/Ĝ]`, over `sd` (either side
/// of a loop instance).
pub fn loop_equivariant_chi(sd: &SemidirectProduct) -> Result<SemidirectBurnside> {
    let n = sd.perms().n();
    let all = sd.all_perms();
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let a = sd.abelian();
    let free = SemidirectBurnside::generator(sd, &all, &a.trivial_subgroup(), &all, sign)?;
    let top = SemidirectBurnside::generator(sd, &all, &a.full_subgroup(), &all, -1)?;
    Ok(free.add(&top))
}

/// `χ̄^orb(V_f, G⋊S) = (−1)^{kℓ}·χ̄^orb(V_f̃, G̃⋊S)` for every `S`-invariant
/// `G`; exploratory when `S` fails the parity condition.
pub fn verify_loop_theorem(p: &[u32], k: usize, caps: Caps) -> Result<VerificationReport> {
    let start = Instant::now();
    let inst = LoopInstance::new(p, k, caps)?;
    let kl = inst.kl();
    let sign: i64 = if kl % 2 == 0 { 1 } else { -1 };
    let chi = loop_equivariant_chi(&inst.sd)?;
    let chi_dual = loop_equivariant_chi(&inst.dual)?;
    let all = inst.sd.all_perms();
    let mut report = VerificationReport::new(format!("periodic loop {}, p = {:?}, k = {k}", inst.f, p));
    if inst.pc {
        report.notes.push(format!("shift group satisfies the parity condition; sign (-1)^{kl} = {sign}"));
    } else {
        report.notes.push("exploratory: the shift group violates the parity condition".into());
    }
    let chi_b = chi.to_burnside(&inst.sd);
    let chi_dual_b = chi_dual.to_burnside(&inst.dual);
    for g in invariant_subgroups(&inst.sd, caps)? {
        let gt = g.dual();
        let actor = inst.sd.subgroup(&g, &all)?;
        let actor_dual = inst.dual.subgroup(&gt, &all)?;
        let lhs = chi_orb_burnside(inst.sd.group(), &chi_b, &actor)?;
        let rhs = chi_orb_burnside(inst.dual.group(), &chi_dual_b, &actor_dual)?;
        let point = |grp: &crate::burnside::FiniteGroup, act: &Subgp| -> Result<i64> {
            let top = BurnsideElement::generator(grp, &grp.whole(), &grp.whole(), 1)?;
            let via = chi_orb_burnside(grp, &top, act)?;
            let direct = grp.conj_class_count(act) as i64;
            if via != direct {
                return Err(mismatch("orbifold χ of a point vs class count", via, direct));
            }
            Ok(direct)
        };
        point(inst.sd.group(), &actor)?;
        point(inst.dual.group(), &actor_dual)?;
        report.push(
            json!({ "G": g.generators_display(), "G_order": g.order(), "sign": sign, "pc": inst.pc }),
            json!(lhs),
            json!(sign * rhs),
            lhs == sign * rhs,
        );
    }
    Ok(report.finish(start, !inst.pc))
}

/// `χ̄^{G_f}(V_f) = (−1)^n·D(χ̄^{G_f̃}(V_f̃))` in the Burnside ring of `G_f`,
/// for the loop with exponents `p` repeated `k` times and trivial `S`.
/// `flip_sign` uses `(−1)^{n+1}` instead, as a negative control.
pub fn verify_saito_duality_loop(p: &[u32], k: usize, flip_sign: bool, caps: Caps) -> Result<VerificationReport> {
    let start = Instant::now();
    let f = periodic_loop(p, k)?;
    let n = f.n();
    let gf = FinAbGroup::symmetry_group(&f);
    let gft = FinAbGroup::symmetry_group(&f.transpose());
    if *gft != *gf.dual() {
        return Err(mismatch("G_f̃ vs dual of G_f", group_label(&gft), group_label(&gf.dual())));
    }
    let here = AbelianTable::new(&gf, caps.max_group_order)?;
    let there = AbelianTable::new(&gft, caps.max_group_order)?;
    let reduced = |t: &AbelianTable| {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        t.generator(&t.group().trivial_subgroup(), sign).add(&t.generator(&t.group().full_subgroup(), -1))
    };
    let lhs = reduced(&here);
    let mut sign: i64 = if n % 2 == 0 { 1 } else { -1 };
    if flip_sign {
        sign = -sign;
    }
    let back = AbelianTable::new(&gft.dual(), caps.max_group_order)?;
    let rhs = saito_dual_abelian(&there, &back, &reduced(&there))?.scale(sign);
    let mut report = VerificationReport::new(format!("Saito duality for the loop {f}"));
    if flip_sign {
        report.notes.push("negative control: sign deliberately flipped".into());
    }
    report.push(
        json!({ "n": n, "sign": sign, "flipped": flip_sign }),
        lhs.to_json(here.table()),
        rhs.to_json(back.table()),
        lhs == rhs,
    );
    Ok(report.finish(start, false))
}

/// `χ^orb(Ĝ/H⋊T, G⋊S)` against `χ^orb(Ĝ*/H̃⋊T, G̃⋊S)`; never asserts.
pub fn explore_reduction_conjecture(
    f: &InvertiblePolynomial,
    s: &PermutationGroup,
    g: &AbSubgroup,
    h: &AbSubgroup,
    t: &PermutationGroup,
    caps: Caps,
) -> Result<VerificationReport> {
    let (sd, dual) = semidirect_pair(f, s, caps)?;
    explore_case(&sd, &dual, g, h, t)
}

fn explore_case(sd: &SemidirectProduct, dual: &SemidirectProduct, g: &AbSubgroup, h: &AbSubgroup, t: &PermutationGroup) -> Result<VerificationReport> {
    let start = Instant::now();
    if !t.is_subgroup_of(sd.perms()) {
        return Err(Error::NotSubgroup(format!("T = {t} is not contained in S")));
    }
    let all = sd.all_perms();
    let t_idx = perm_indices(sd, t);
    let actor = sd.subgroup(g, &all)?;
    let k = sd.subgroup(h, &t_idx)?;
    let lhs = chi_orb_set(sd.group(), &GSet::cosets(sd.group(), &sd.group().whole(), &k, &actor)?)?;
    let actor_dual = dual.subgroup(&g.dual(), &all)?;
    let k_dual = dual.subgroup(&h.dual(), &t_idx)?;
    let rhs = chi_orb_set(dual.group(), &GSet::cosets(dual.group(), &dual.group().whole(), &k_dual, &actor_dual)?)?;
    let mut report = VerificationReport::new(format!(
        "reduction conjecture, S = {}, G = {g}, H = {h}, T = {t}",
        sd.perms()
    ));
    let pc = is_pc(sd.perms())?.holds;
    report.notes.push(format!("hypothesis flag: parity condition on S = {pc}"));
    report.push(
        json!({ "G": g.generators_display(), "H": h.generators_display(), "T": t.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(), "pc": pc }),
        json!(lhs),
        json!(rhs),
        lhs == rhs,
    );
    Ok(report.finish(start, true))
}

/// The explorer over all `S`-invariant `G`, all `T ≤ S` and all
/// `T`-invariant `H`.
pub fn explore_reduction_conjecture_all(f: &InvertiblePolynomial, s: &PermutationGroup, caps: Caps) -> Result<VerificationReport> {
    let (sd, dual) = semidirect_pair(f, s, caps)?;
    let subs = sd.abelian().enumerate_subgroups(caps.max_subgroups)?;
    let invariant = invariant_subgroups(&sd, caps)?;
    let mut reports = Vec::new();
    for t in s.subgroups()? {
        let t_idx = perm_indices(&sd, &t);
        for g in &invariant {
            for h in subs.iter().filter(|h| t_idx.iter().all(|&i| h.is_invariant_under(sd.action(i)))) {
                reports.push(explore_case(&sd, &dual, g, h, &t)?);
            }
        }
    }
    Ok(VerificationReport::merge(format!("reduction conjecture for {f}, S = {s}"), reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn abelian_examples() {
        let z2 = FinAbGroup::cyclic_product(&[2]).unwrap();
        let r = verify_abelian_theorem(&z2, &z2.full_subgroup(), caps()).unwrap();
        let free = r.cases.iter().find(|c| c.params["K"] == json!(Vec::<String>::new())).unwrap();
        assert_eq!(free.lhs, json!(1));
        assert_eq!(free.rhs, json!(1));
        assert_eq!(r.verdict, Verdict::Verified);

        let z4 = FinAbGroup::cyclic_product(&[4]).unwrap();
        let half = z4.subgroup_generated(&[z4.parse_element("1/2").unwrap()]);
        let r = verify_abelian_theorem(&z4, &half, caps()).unwrap();
        let c = r.cases.iter().find(|c| c.params["K"] == json!(["1/2"])).unwrap();
        assert_eq!(c.lhs, json!(4));
        assert_eq!(c.rhs, json!(4));
        let top = r.cases.iter().find(|c| c.params["K"] == json!(["1/4"])).unwrap();
        assert_eq!(top.lhs, json!(half.order()));
    }

    #[test]
    fn abelian_all_subgroups() {
        for inv in [vec![6], vec![2, 2], vec![2, 4], vec![3, 3]] {
            let g = FinAbGroup::cyclic_product(&inv).unwrap();
            assert_eq!(verify_abelian_theorem_all(&g, caps()).unwrap().verdict, Verdict::Verified);
        }
    }

    #[test]
    fn lemma_on_loop_endomorphisms() {
        let g = FinAbGroup::symmetry_group(&periodic_loop(&[2], 3).unwrap());
        for p in ["()", "(1 2 3)", "(1 3 2)"] {
            let a = g.a_delta(&Permutation::parse_cycles(p, 3).unwrap()).unwrap();
            for h in g.enumerate_subgroups(100).unwrap() {
                assert!(check_dual_endomorphism_lemma(&a, &h));
            }
        }
    }

    #[test]
    fn main_theorem_examples() {
        let f = periodic_loop(&[2], 3).unwrap();
        let s = loop_shift_group(1, 3).unwrap();
        let gf = FinAbGroup::symmetry_group(&f);
        let r = verify_main_theorem(&f, &s, &gf.trivial_subgroup(), &s, caps()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        let r = verify_main_theorem(&f, &s, &gf.full_subgroup(), &s, caps()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        let r = verify_main_theorem_all(&f, &s, caps()).unwrap();
        assert_eq!(r.cases.len(), 3 * 2);
        assert_eq!(r.verdict, Verdict::Verified);
    }

    #[test]
    fn main_theorem_rejects_bad_input() {
        let f = periodic_loop(&[2], 3).unwrap();
        let s = loop_shift_group(1, 3).unwrap();
        let bad = PermutationGroup::parse(3, "(1 2)").unwrap();
        let gf = FinAbGroup::symmetry_group(&f);
        assert!(matches!(
            verify_main_theorem(&f, &bad, &gf.trivial_subgroup(), &bad, caps()),
            Err(Error::NotInvariant(_))
        ));
        assert!(verify_main_theorem(&f, &PermutationGroup::trivial(3), &gf.trivial_subgroup(), &s, caps()).is_err());
    }

    #[test]
    fn loop_equivariant_chi_shapes() {
        let inst = LoopInstance::new(&[2], 3, caps()).unwrap();
        let b = loop_equivariant_chi(&inst.sd).unwrap();
        let coeffs: Vec<i64> = b.parts(&inst.sd).iter().map(|(h, _, c)| if h.order() == 1 { *c } else { 10 * c }).collect();
        assert_eq!(coeffs.iter().filter(|&&c| c == 1).count(), 1);
        assert_eq!(coeffs.iter().filter(|&&c| c == -10).count(), 1);
        let inst = LoopInstance::new(&[2, 2], 2, caps()).unwrap();
        let b = loop_equivariant_chi(&inst.sd).unwrap();
        assert!(b.parts(&inst.sd).iter().all(|(_, _, c)| *c == -1));
        assert_eq!(loop_equivariant_chi(&inst.dual).unwrap().terms().len(), 2);
    }

    #[test]
    fn loop_theorem_examples() {
        let r = verify_loop_theorem(&[2], 3, caps()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert_eq!(r.cases.len(), 3);
        assert!(r.cases.iter().all(|c| c.params["sign"] == json!(-1)));
        let r = verify_loop_theorem(&[2, 2], 2, caps()).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(r.cases.iter().all(|c| c.params["sign"] == json!(1)));
        let r = verify_loop_theorem(&[2], 2, caps()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.notes.iter().any(|n| n.starts_with("exploratory")));
    }

    #[test]
    fn saito_duality_loop_and_negative_control() {
        for (p, k) in [(vec![2u32], 2usize), (vec![2], 3), (vec![3, 2], 1)] {
            assert_eq!(verify_saito_duality_loop(&p, k, false, caps()).unwrap().verdict, Verdict::Verified);
            assert_eq!(verify_saito_duality_loop(&p, k, true, caps()).unwrap().verdict, Verdict::Counterexample);
        }
    }

    #[test]
    fn explorer_matches_main_theorem_extremes() {
        let f = periodic_loop(&[2], 3).unwrap();
        let s = loop_shift_group(1, 3).unwrap();
        let gf = FinAbGroup::symmetry_group(&f);
        for g in [gf.trivial_subgroup(), gf.full_subgroup()] {
            for t in s.subgroups().unwrap() {
                let main = verify_main_theorem(&f, &s, &g, &t, caps()).unwrap();
                let low = explore_reduction_conjecture(&f, &s, &g, &gf.trivial_subgroup(), &t, caps()).unwrap();
                assert_eq!(low.cases[0].lhs, main.cases[0].lhs);
                assert_eq!(low.cases[0].rhs, main.cases[0].rhs);
                assert_eq!(low.verdict, Verdict::Inconclusive);
            }
        }
        let mid = gf.enumerate_subgroups(100).unwrap().into_iter().find(|h| h.order() == 3).unwrap();
        let r = explore_reduction_conjecture(&f, &s, &gf.trivial_subgroup(), &mid, &s, caps()).unwrap();
        assert_eq!(r.cases.len(), 1);
    }

    #[test]
    fn reports_round_trip_through_json() {
        let r = verify_loop_theorem(&[2], 3, caps()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}

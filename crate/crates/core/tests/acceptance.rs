//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact integer or exact set equality; runtimes are checked against the
//! stated budgets.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bhht::abgrp::{AbHom, AbSubgroup, FinAbGroup};
use bhht::burnside::{chi_orb_burnside, chi_orb_set, equivariant_chi, FiniteGroup, GSet, SemidirectProduct, Subgp};
use bhht::duality::{
    check_conjugacy_duality, check_induction_diagram, saito_dual_abelian, saito_dual_nonabelian, semidirect_subgroups,
    AbelianTable, SemidirectBurnside,
};
use bhht::lattice::{mat_mul, IntMatrix};
use bhht::pc::{is_pc, loop_shift_group, PermutationGroup};
use bhht::perm::Permutation;
use bhht::poly::{periodic_loop, InvertiblePolynomial};
use bhht::theorems::{
    check_dual_endomorphism_lemma, verify_abelian_theorem_all, verify_loop_theorem,
    verify_main_theorem_all, verify_saito_duality_loop, Caps, Verdict,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn caps() -> Caps {
    Caps::default()
}

/// Invariant-factor lists `d_1 | d_2 | …` with `d_1 ≥ 2` and product ≤ `max`.
fn abelian_types(max: i64) -> Vec<Vec<i64>> {
    fn extend(prefix: &mut Vec<i64>, product: i64, max: i64, out: &mut Vec<Vec<i64>>) {
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if last == 1 { 2 } else { last };
        while product * d <= max {
            if d % last == 0 {
                prefix.push(d);
                out.push(prefix.clone());
                extend(prefix, product * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out
}

/// `G_f` with the given invariant factors: Fermat atoms for prime factors and
/// two-variable chains `x^a·y + y^b` for composite ones.
fn realize_as_symmetry_group(invariants: &[i64]) -> InvertiblePolynomial {
    let mut blocks: Vec<IntMatrix> = Vec::new();
    for &d in invariants {
        let a = (2..=d).find(|p| d % p == 0).unwrap();
        if a == d {
            blocks.push(vec![vec![d]]);
        } else {
            blocks.push(vec![vec![a, 1], vec![0, d / a]]);
        }
    }
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    InvertiblePolynomial::from_matrix(m).unwrap()
}

fn criterion_1() -> Outcome {
    let types = abelian_types(36);
    let mut cases = 0;
    let mut groups = 0;
    for inv in &types {
        let f = realize_as_symmetry_group(inv);
        let gf = FinAbGroup::symmetry_group(&f);
        if gf.invariants() != inv.as_slice() {
            return outcome(false, format!("G_f of {f} has invariants {:?}, expected {inv:?}", gf.invariants()));
        }
        for big in [FinAbGroup::cyclic_product(inv).unwrap(), gf] {
            match verify_abelian_theorem_all(&big, caps()) {
                Ok(r) if r.verdict == Verdict::Verified => cases += r.cases.len(),
                Ok(r) => return outcome(false, format!("counterexample on {inv:?}: {:?}", r.witnesses)),
                Err(e) => return outcome(false, format!("{inv:?}: {e}")),
            }
            groups += 1;
        }
    }
    // the trivial group
    let trivial = FinAbGroup::cyclic_product(&[1]).unwrap();
    match verify_abelian_theorem_all(&trivial, caps()) {
        Ok(r) if r.verdict == Verdict::Verified => cases += r.cases.len(),
        _ => return outcome(false, "trivial group"),
    }
    outcome(
        true,
        format!("{} isomorphism types, {groups} realizations, {cases} (G, K) pairs, both sides = closed form", types.len() + 1),
    )
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u: IntMatrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..2 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2..=2);
        let mut e: IntMatrix = (0..n).map(|a| (0..n).map(|b| i64::from(a == b)).collect()).collect();
        e[i][j] = c;
        u = mat_mul(&e, &u);
    }
    u
}

fn random_group(rng: &mut ChaCha8Rng, max_order: i64) -> Arc<FinAbGroup> {
    let types: Vec<Vec<i64>> = abelian_types(max_order);
    let inv = types.choose(rng).unwrap().clone();
    let n = inv.len() + rng.gen_range(0..=1);
    let mut diag: IntMatrix = vec![vec![0; n]; n];
    for i in 0..n {
        diag[i][i] = if i < inv.len() { inv[i] } else { 1 };
    }
    let l = mat_mul(&mat_mul(&random_unimodular(rng, n), &diag), &random_unimodular(rng, n));
    FinAbGroup::new(l).unwrap()
}

fn random_endomorphism(rng: &mut ChaCha8Rng, g: &Arc<FinAbGroup>) -> AbHom {
    let d = g.invariants();
    let k = d.len();
    let m: IntMatrix = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let step = d[i] / num_integer::gcd(d[i], d[j]);
                    step * rng.gen_range(0..d[i].max(1))
                })
                .collect()
        })
        .collect();
    AbHom::from_smith_matrix(g, &m).unwrap()
}

fn random_subgroup(rng: &mut ChaCha8Rng, g: &Arc<FinAbGroup>) -> AbSubgroup {
    let gens: Vec<usize> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(0..g.order())).collect();
    g.subgroup_generated(&gens)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut nontrivial = 0;
    for i in 0..1000 {
        let g = random_group(&mut rng, 200);
        let a = random_endomorphism(&mut rng, &g);
        let h = random_subgroup(&mut rng, &g);
        if !check_dual_endomorphism_lemma(&a, &h) {
            return outcome(false, format!("instance {i}: lattice route fails on {:?}", g.lattice()));
        }
        // brute-force annihilator on both sides
        let lhs = a.preimage(&h).annihilator();
        let rhs = a.dual().image(&h.annihilator());
        if lhs != rhs {
            return outcome(false, format!("instance {i}: annihilator route fails on {:?}", g.lattice()));
        }
        nontrivial += usize::from(lhs.order() > 1 && lhs.order() < lhs.parent().order());
    }
    outcome(true, format!("1000 instances, {nontrivial} with a proper nontrivial dual subgroup"))
}

fn main_family(p: &[u32], k: usize) -> std::result::Result<(usize, Duration), String> {
    let start = Instant::now();
    let f = periodic_loop(p, k).map_err(|e| e.to_string())?;
    let s = loop_shift_group(p.len(), k).map_err(|e| e.to_string())?;
    let r = verify_main_theorem_all(&f, &s, caps()).map_err(|e| e.to_string())?;
    if r.verdict != Verdict::Verified {
        return Err(format!("counterexample for {f}: {:?}", r.witnesses));
    }
    Ok((r.cases.len(), start.elapsed()))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for (p, k) in [(vec![2u32], 3usize), (vec![2, 2], 2)] {
        match main_family(&p, k) {
            Ok((n, t)) if t < Duration::from_secs(60) => parts.push(format!("p={p:?} k={k}: {n} (G,T) cases, 4 routes agree")),
            Ok((_, t)) => return outcome(false, format!("p={p:?} k={k} took {t:?}")),
            Err(e) => return outcome(false, e),
        }
    }
    outcome(true, parts.join("; "))
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for (p, k) in [(vec![2u32], 3usize), (vec![2, 2], 2)] {
        match verify_loop_theorem(&p, k, caps()) {
            Ok(r) if r.verdict == Verdict::Verified => {
                parts.push(format!("p={p:?} k={k}: {} invariant G, sign {}", r.cases.len(), r.cases[0].params["sign"]))
            }
            Ok(r) => return outcome(false, format!("p={p:?} k={k}: verdict {:?}", r.verdict)),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(true, parts.join("; "))
}

fn perm_table(n: usize, gens: &str) -> FiniteGroup {
    FiniteGroup::from_permutations(&PermutationGroup::parse(n, gens).unwrap()).unwrap()
}

fn test_groups() -> Vec<(String, FiniteGroup)> {
    let mut out = vec![
        ("S3".to_string(), perm_table(3, "(1 2 3);(1 2)")),
        ("D4".to_string(), perm_table(4, "(1 2 3 4);(1 3)")),
        ("Q8".to_string(), perm_table(8, "(1 2 3 4)(5 6 7 8);(1 5 3 7)(2 8 4 6)")),
        ("D5".to_string(), perm_table(5, "(1 2 3 4 5);(2 5)(3 4)")),
        ("A4".to_string(), perm_table(4, "(1 2 3);(1 2)(3 4)")),
        ("S4".to_string(), perm_table(4, "(1 2 3 4);(1 2)")),
        ("A5".to_string(), perm_table(5, "(1 2 3 4 5);(1 2)(3 4)")),
        ("D6".to_string(), perm_table(6, "(1 2 3 4 5 6);(2 6)(3 5)")),
        ("Z2xZ6".to_string(), FiniteGroup::from_abelian(&FinAbGroup::cyclic_product(&[2, 6]).unwrap(), 100).unwrap()),
    ];
    for (p, k) in [(vec![2u32], 3usize), (vec![2, 2], 2)] {
        let f = periodic_loop(&p, k).unwrap();
        let s = loop_shift_group(p.len(), k).unwrap();
        let sd = SemidirectProduct::natural(&FinAbGroup::symmetry_group(&f), &s, 2000).unwrap();
        out.push((format!("G_f x| S for {f}"), sd.group().clone()));
    }
    out
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let groups: Vec<(String, FiniteGroup, Vec<Subgp>)> = test_groups()
        .into_iter()
        .map(|(name, g)| {
            let subs = g.subgroups(&g.whole(), 10_000).unwrap();
            (name, g, subs)
        })
        .collect();
    if let Some((name, g, _)) = groups.iter().find(|(_, g, _)| g.order() > 60) {
        return outcome(false, format!("{name} has order {} > 60", g.order()));
    }
    let mut total_points = 0;
    for i in 0..500 {
        let (name, g, subs) = groups.choose(&mut rng).unwrap();
        let whole = g.whole();
        let actor_candidates: Vec<&Subgp> = subs.iter().collect();
        let actor = if rng.gen_bool(0.5) { whole.clone() } else { (*actor_candidates.choose(&mut rng).unwrap()).clone() };
        let pieces = rng.gen_range(1..=4);
        let mut x: Option<GSet> = None;
        for _ in 0..pieces {
            let k = subs.choose(&mut rng).unwrap();
            let piece = GSet::cosets(g, &whole, k, &actor).unwrap();
            x = Some(match x {
                None => piece,
                Some(prev) => prev.disjoint_union(&piece).unwrap(),
            });
        }
        let x = x.unwrap();
        total_points += x.len();
        let direct = match chi_orb_set(g, &x) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("instance {i} ({name}): {e}")),
        };
        let b = equivariant_chi(g, &x);
        if b.cardinality() != x.len() as i64 {
            return outcome(false, format!("instance {i} ({name}): cardinality mismatch"));
        }
        let via = match chi_orb_burnside(g, &b, &actor) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("instance {i} ({name}): {e}")),
        };
        if via != direct {
            return outcome(false, format!("instance {i} ({name}): {direct} vs {via}"));
        }
    }
    outcome(true, format!("500 G-sets over {} groups of order <= 60, {total_points} points in total", groups.len()))
}

fn criterion_6() -> Outcome {
    let checks = [
        (5, "(1 2 3 4 5);(1 4)(2 3)", true),
        (5, "(1 2 3 4 5);(1 2)(3 4)", false),
        (4, "(1 2)(3 4);(1 3)(2 4)", false),
    ];
    for (n, gens, expected) in checks {
        let s = PermutationGroup::parse(n, gens).unwrap();
        let v = is_pc(&s).unwrap();
        if v.holds != expected {
            return outcome(false, format!("<{gens}>: PC {} expected {expected}", v.holds));
        }
        if v.holds && !s.is_in_alternating_group() {
            return outcome(false, format!("<{gens}> satisfies PC but is not inside A_n"));
        }
    }
    if PermutationGroup::parse(5, "(1 2 3 4 5);(1 2)(3 4)").unwrap().order() != 60 {
        return outcome(false, "<(12345),(12)(34)> is not A5");
    }
    let mut cyclic = 0;
    for n in 1..=7 {
        let mut gens = vec![Permutation::shift(n, 1)];
        if n > 1 {
            gens.push(Permutation::parse_cycles("(1 2)", n).unwrap());
        }
        let sym = PermutationGroup::generated_with_cap(n, &gens, 5040).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for p in sym.elements() {
            let c = PermutationGroup::generated(n, std::slice::from_ref(p)).unwrap();
            if !seen.insert(c.elements().to_vec()) {
                continue;
            }
            cyclic += 1;
            if is_pc(&c).unwrap().holds != c.is_in_alternating_group() {
                return outcome(false, format!("cyclic <{p}> in S_{n}"));
            }
        }
    }
    outcome(true, format!("3 named examples; {cyclic} cyclic subgroups of S_n, n <= 7: PC iff inside A_n"))
}

fn criterion_7() -> Outcome {
    // abelian D on every generator, for a range of groups
    let mut abelian_gens = 0;
    for inv in abelian_types(36) {
        let g = FinAbGroup::cyclic_product(&inv).unwrap();
        let f = realize_as_symmetry_group(&inv);
        for big in [g, FinAbGroup::symmetry_group(&f)] {
            let src = AbelianTable::new(&big, 2000).unwrap();
            let dst = AbelianTable::new(&big.dual(), 2000).unwrap();
            let back = AbelianTable::new(&dst.group().dual(), 2000).unwrap();
            for k in big.enumerate_subgroups(10_000).unwrap() {
                let b = src.generator(&k, 1);
                let d = saito_dual_abelian(&src, &dst, &b).unwrap();
                if saito_dual_abelian(&dst, &back, &d).unwrap() != b {
                    return outcome(false, format!("abelian D not involutive on {inv:?}, K = {k}"));
                }
                abelian_gens += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut semidirect_gens = 0;
    let mut pairs = 0;
    let mut diagrams = 0;
    for (p, k) in [(vec![2u32], 3usize), (vec![2, 2], 2)] {
        let f = periodic_loop(&p, k).unwrap();
        let s = loop_shift_group(p.len(), k).unwrap();
        let sd = SemidirectProduct::natural(&FinAbGroup::symmetry_group(&f), &s, 2000).unwrap();
        let dual = sd.dual(2000).unwrap();
        let back = dual.dual(2000).unwrap();
        let all = sd.all_perms();
        let subs = semidirect_subgroups(&sd, 10_000).unwrap();
        for (h, t) in &subs {
            let b = SemidirectBurnside::generator(&sd, &all, h, t, 1).unwrap();
            let d = saito_dual_nonabelian(&sd, &dual, &b).unwrap();
            let dd = saito_dual_nonabelian(&dual, &back, &d).unwrap();
            if dd.terms() != b.terms() {
                return outcome(false, format!("D^x| not involutive on {f}, H = {h}"));
            }
            semidirect_gens += 1;
        }
        if sd.group().order() == 27 {
            for (h1, t1) in &subs {
                for (h2, t2) in &subs {
                    let (a, b) = check_conjugacy_duality(&sd, &dual, (h1, t1), (h2, t2)).unwrap();
                    if a != b {
                        return outcome(false, format!("conjugacy booleans differ for {h1}, {h2}"));
                    }
                    pairs += 1;
                }
            }
        }
        // random elements over G x| {e}, induced to G x| S
        let e = [sd.identity_perm()];
        let abelian_subs = sd.abelian().enumerate_subgroups(10_000).unwrap();
        for _ in 0..20 {
            let mut b = SemidirectBurnside::zero(&sd, &e).unwrap();
            for _ in 0..rng.gen_range(1..=4) {
                let h = abelian_subs.choose(&mut rng).unwrap();
                let c = rng.gen_range(-3..=3);
                b = b.add(&SemidirectBurnside::generator(&sd, &e, h, &e, c).unwrap());
            }
            if !check_induction_diagram(&sd, &dual, &b, &all).unwrap() {
                return outcome(false, format!("induction diagram fails on {f}"));
            }
            diagrams += 1;
        }
    }
    outcome(
        true,
        format!("{abelian_gens} abelian and {semidirect_gens} semidirect generators involutive; {pairs} conjugacy pairs agree; {diagrams} induction diagrams commute"),
    )
}

fn criterion_8() -> Outcome {
    for (p, k) in [(vec![2u32, 2], 1usize), (vec![2], 3), (vec![3, 2, 2], 1)] {
        let honest = verify_saito_duality_loop(&p, k, false, caps()).unwrap();
        let flipped = verify_saito_duality_loop(&p, k, true, caps()).unwrap();
        if honest.verdict != Verdict::Verified {
            return outcome(false, format!("p={p:?}: correct sign not verified"));
        }
        if flipped.verdict != Verdict::Counterexample {
            return outcome(false, format!("p={p:?}: flipped sign was not detected"));
        }
    }
    outcome(true, "flipped sign reported as counterexample on 3 loops; correct sign verified")
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, u64, fn() -> Outcome); 8] = [
        ("abelian reduction identity, all types of order <= 36", "exact integers", 60, criterion_1),
        ("dual-endomorphism lemma, 1000 random instances, |G| <= 200", "exact subgroup equality", 30, criterion_2),
        ("extremal orbit spaces, two loop families", "exact, 4 routes", 60, criterion_3),
        ("periodic-loop identity", "exact integers", 60, criterion_4),
        ("orbifold chi oracle equivalence, 500 random G-sets", "exact integers", 60, criterion_5),
        ("parity condition examples", "exact booleans", 30, criterion_6),
        ("duality structure", "exact", 30, criterion_7),
        ("negative control with flipped sign", "must fail", 30, criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, tolerance, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| outcome(false, "panicked"));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*budget);
        let pass = result.pass && within;
        failed += usize::from(!pass);
        println!(
            "criterion {}: {} | {name} | tolerance: {tolerance} | {:.2}s of {budget}s | {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            result.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

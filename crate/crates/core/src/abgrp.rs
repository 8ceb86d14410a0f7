//! Finite abelian groups presented as `Z^n / L·Z^n`.
//!
//! An element is a class `v + L·Z^n` of integer vectors. Its rational
//! coordinates `a = L⁻¹·v (mod 1)` are the exponents of the diagonal
//! symmetry `λ_j = exp(2πi·a_j)` when `L = E` is an exponent matrix.
//! Elements are indexed by their Smith-normal-form coordinates in
//! `⊕ Z/d_i`, in lexicographic order; index 0 is the identity.
//!
//! The dual group of `Z^n/L` is `Z^n/Lᵀ` with the pairing
//! `⟨v, w⟩ = vᵀ·L⁻ᵀ·w (mod 1)`. For `L = E` this is `(E·a)ᵀ·b` on rational
//! coordinates, and the dual group is literally the symmetry group of the
//! transposed polynomial. Taking the dual twice gives back the same lattice,
//! so `G** = G` holds on the nose.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::perm::Permutation;
use crate::poly::InvertiblePolynomial;

/// Default cap on the order of a group whose subgroups are enumerated.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug)]
pub struct FinAbGroup {
    n: usize,
    lattice: IntMatrix,
    adj: IntMatrix,
    det: i64,
    hnf: IntMatrix,
    invariants: Vec<i64>,
    proj: IntMatrix,
    lift: Vec<Vec<i64>>,
    order: usize,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice
    }
}

impl Eq for FinAbGroup {}

impl FinAbGroup {
    /// The group `Z^n / L·Z^n`, where the columns of `lattice` span `L`.
    pub fn new(lattice: IntMatrix) -> Result<Arc<Self>> {
        let n = lattice.len();
        if lattice.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("lattice basis must be square".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameters("empty lattice".into()));
        }
        let det = lattice::det(&lattice);
        if det == 0 {
            return Err(Error::Singular);
        }
        let order = usize::try_from(det.unsigned_abs()).expect("group order fits in usize");
        let (adj, det) = lattice::adjugate(&lattice);
        let hnf = lattice::hnf_rows(&lattice::transpose(&lattice), n);
        let snf = lattice::smith(&lattice);
        let u_inv = lattice::unimodular_inverse(&snf.u);
        let mut invariants = Vec::new();
        let mut proj = Vec::new();
        let mut lift = Vec::new();
        for (i, &d) in snf.diag.iter().enumerate() {
            if d > 1 {
                invariants.push(d);
                proj.push(snf.u[i].clone());
                lift.push(u_inv.iter().map(|row| row[i]).collect());
            }
        }
        Ok(Arc::new(FinAbGroup { n, lattice, adj, det, hnf, invariants, proj, lift, order }))
    }

    /// `Z/d_1 ⊕ … ⊕ Z/d_k` as the quotient by a diagonal lattice.
    pub fn cyclic_product(factors: &[i64]) -> Result<Arc<Self>> {
        if factors.is_empty() || factors.iter().any(|&d| d < 1) {
            return Err(Error::InvalidParameters(format!("bad cyclic factors {factors:?}")));
        }
        let n = factors.len();
        Self::new((0..n).map(|i| (0..n).map(|j| if i == j { factors[i] } else { 0 }).collect()).collect())
    }

    /// The diagonal symmetry group `G_f = Z^n / E·Z^n`.
    pub fn symmetry_group(f: &InvertiblePolynomial) -> Arc<Self> {
        Self::new(f.matrix().clone()).expect("validated polynomials are nonsingular")
    }

    /// The character group `Z^n / Lᵀ·Z^n`.
    pub fn dual(&self) -> Arc<Self> {
        Self::new(lattice::transpose(&self.lattice)).expect("transpose of a nonsingular lattice")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    /// Nontrivial invariant factors `d_1 | d_2 | …`.
    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariants.len() <= 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let mut c = vec![0; self.invariants.len()];
        for i in (0..c.len()).rev() {
            let d = self.invariants[i] as usize;
            c[i] = (idx % d) as i64;
            idx /= d;
        }
        c
    }

    pub fn index_of_coords(&self, c: &[i64]) -> usize {
        c.iter()
            .zip(&self.invariants)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x.rem_euclid(d) as usize)
    }

    pub fn index_of_vector(&self, v: &[i64]) -> usize {
        let c: Vec<i64> = self
            .proj
            .iter()
            .zip(&self.invariants)
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect();
        self.index_of_coords(&c)
    }

    /// Canonical integer representative, reduced against the HNF of `L`.
    pub fn rep(&self, idx: usize) -> Vec<i64> {
        let c = self.coords(idx);
        let mut v = vec![0i64; self.n];
        for (ci, col) in c.iter().zip(&self.lift) {
            for (x, &l) in v.iter_mut().zip(col) {
                *x += ci * l;
            }
        }
        lattice::reduce_mod_hnf(&v, &self.hnf)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.coords(a), self.coords(b));
        let c: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.index_of_coords(&c)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<i64> = self.coords(a).iter().map(|x| -x).collect();
        self.index_of_coords(&c)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, k: i64, a: usize) -> usize {
        let c: Vec<i64> = self.coords(a).iter().map(|x| x * k).collect();
        self.index_of_coords(&c)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.coords(a)
            .iter()
            .zip(&self.invariants)
            .fold(1i64, |acc, (&x, &d)| acc.lcm(&(d / x.gcd(&d))))
            as usize
    }

    /// Rational coordinates `L⁻¹·v` reduced into `[0, 1)`.
    pub fn rational(&self, idx: usize) -> Vec<Rational64> {
        let v = self.rep(idx);
        let d = self.det;
        lattice::mat_vec(&self.adj, &v)
            .into_iter()
            .map(|num| Rational64::new(num, d).reduced_mod_one())
            .collect()
    }

    /// The element with rational coordinates `a`, if `L·a` is integral.
    pub fn element_from_rational(&self, a: &[Rational64]) -> Result<usize> {
        if a.len() != self.n {
            return Err(Error::Arity { expected: self.n, got: a.len() });
        }
        let mut v = Vec::with_capacity(self.n);
        for row in &self.lattice {
            let s = row
                .iter()
                .zip(a)
                .fold(Rational64::zero(), |acc, (&l, x)| acc + x * l);
            if !s.is_integer() {
                return Err(Error::NotAnElement(format_rationals(a)));
            }
            v.push(s.to_integer());
        }
        Ok(self.index_of_vector(&v))
    }

    /// Parses `"1/3,1/3"` into an element.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let a = text
            .split(',')
            .map(|t| parse_rational(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.element_from_rational(&a)
    }

    pub fn format_element(&self, idx: usize) -> String {
        format_rationals(&self.rational(idx))
    }

    /// `⟨a, w⟩` for `a` in this group and `w` in [`Self::dual`], as a
    /// rational in `[0, 1)`.
    pub fn pairing(&self, a: usize, w: usize, dual: &FinAbGroup) -> Rational64 {
        debug_assert_eq!(dual.lattice, lattice::transpose(&self.lattice));
        let av = lattice::mat_vec(&self.adj, &self.rep(a));
        let wv = dual.rep(w);
        let num: i128 = av.iter().zip(&wv).map(|(&x, &y)| x as i128 * y as i128).sum();
        let d = self.det.abs() as i128;
        let num = (num * self.det.signum() as i128).rem_euclid(d);
        Rational64::new(num as i64, d as i64)
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> AbSubgroup {
        self.subgroup_generated(&[])
    }

    pub fn full_subgroup(self: &Arc<Self>) -> AbSubgroup {
        let gens: Vec<usize> = (0..self.invariants.len())
            .map(|i| {
                let mut c = vec![0; self.invariants.len()];
                c[i] = 1;
                self.index_of_coords(&c)
            })
            .collect();
        self.subgroup_generated(&gens)
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup_generated(self: &Arc<Self>, gens: &[usize]) -> AbSubgroup {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut used = Vec::new();
        for &g in gens {
            if inside[g] {
                continue;
            }
            used.push(g);
            let base = members.clone();
            let mut shift = g;
            while !inside[shift] {
                for &h in &base {
                    let x = self.add(h, shift);
                    inside[x] = true;
                    members.push(x);
                }
                shift = self.add(shift, g);
            }
        }
        members.sort_unstable();
        let mut rows = self.hnf.clone();
        rows.extend(used.iter().map(|&g| self.rep(g)));
        let basis = lattice::hnf_rows(&rows, self.n);
        AbSubgroup { parent: Arc::clone(self), members, basis }
    }

    /// The subgroup with exactly these members; fails if they are not closed.
    pub fn subgroup_from_members(self: &Arc<Self>, members: &[usize]) -> Result<AbSubgroup> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &m in members {
            if !current.contains(m) {
                gens.push(m);
                current = self.subgroup_generated(&gens);
            }
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if current.members != sorted {
            return Err(Error::NotSubgroup(format!("{} elements are not closed under addition", sorted.len())));
        }
        Ok(current)
    }

    /// The subgroup `M/L` for a lattice `M ⊇ L` given by spanning vectors.
    pub fn subgroup_from_lattice(self: &Arc<Self>, spanning: &[Vec<i64>]) -> Result<AbSubgroup> {
        let basis = lattice::hnf_rows(spanning, self.n);
        if basis.len() != self.n || self.hnf.iter().any(|r| !lattice::hnf_contains(&basis, r)) {
            return Err(Error::NotSubgroup("lattice does not contain L".into()));
        }
        let gens: Vec<usize> = spanning.iter().map(|v| self.index_of_vector(v)).collect();
        Ok(self.subgroup_generated(&gens))
    }

    /// All subgroups, sorted by member list. The search runs over row-HNF
    /// bases `M` with `diag(d) ⊆ M ⊆ Z^k` in Smith coordinates, building rows
    /// bottom-up so that each row is pruned by the divisibility constraint on
    /// the rows below it.
    pub fn enumerate_subgroups(self: &Arc<Self>, cap: usize) -> Result<Vec<AbSubgroup>> {
        if self.order > cap {
            return Err(Error::CapExceeded { what: "group order", size: self.order, cap });
        }
        let k = self.invariants.len();
        let mut out = Vec::new();
        let mut rows: Vec<Vec<i64>> = vec![vec![0; k]; k];
        self.hnf_search(k, &mut rows, &mut out);
        out.sort_by(|a, b| a.members.cmp(&b.members));
        Ok(out)
    }

    fn hnf_search(self: &Arc<Self>, row: usize, rows: &mut Vec<Vec<i64>>, out: &mut Vec<AbSubgroup>) {
        let k = self.invariants.len();
        if row == 0 {
            let gens: Vec<usize> = rows.iter().map(|r| self.index_of_coords(r)).collect();
            out.push(self.subgroup_generated(&gens));
            return;
        }
        let i = row - 1;
        let d = self.invariants[i];
        for h in (1..=d).filter(|h| d % h == 0) {
            let ranges: Vec<i64> = (i + 1..k).map(|j| rows[j][j]).collect();
            let total: i64 = ranges.iter().product();
            for code in 0..total {
                let mut c = code;
                let mut r = vec![0i64; k];
                r[i] = h;
                for (off, &m) in ranges.iter().enumerate() {
                    r[i + 1 + off] = c % m;
                    c /= m;
                }
                rows[i] = r;
                if self.divisibility_holds(i, rows) {
                    self.hnf_search(i, rows, out);
                }
            }
        }
        rows[i] = vec![0; k];
    }

    // d_i·e_i must lie in the span of rows i..k
    fn divisibility_holds(&self, i: usize, rows: &[Vec<i64>]) -> bool {
        let k = self.invariants.len();
        let mut v = vec![0i64; k];
        v[i] = self.invariants[i];
        for j in i..k {
            if v[j] % rows[j][j] != 0 {
                return false;
            }
            let q = v[j] / rows[j][j];
            for t in j..k {
                v[t] -= q * rows[j][t];
            }
        }
        true
    }

    /// Subgroups preserved by every given automorphism.
    pub fn enumerate_invariant_subgroups(self: &Arc<Self>, cap: usize, actions: &[AbHom]) -> Result<Vec<AbSubgroup>> {
        Ok(self
            .enumerate_subgroups(cap)?
            .into_iter()
            .filter(|s| actions.iter().all(|a| s.is_invariant_under(a)))
            .collect())
    }

    /// Natural action of `σ` on rational coordinates, `(σa)_i = a_{σ⁻¹(i)}`.
    /// On integer representatives this is the matrix `L·P·L⁻¹`.
    pub fn perm_action(self: &Arc<Self>, sigma: &Permutation) -> Result<AbHom> {
        let p = self.perm_matrix(sigma)?;
        let lp = lattice::mat_mul(&self.lattice, &p);
        let m = lattice::mat_mul(&lp, &self.adj);
        let matrix = m
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| if x % self.det == 0 { Ok(x / self.det) } else { Err(Error::NotInvariant(sigma.to_string())) })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<IntMatrix>>()?;
        AbHom::from_matrix(self, self, matrix).map_err(|_| Error::NotInvariant(sigma.to_string()))
    }

    /// The action `w ↦ P·w` on integer representatives. On a dual group this
    /// is the contragredient `φ*(σ)` of the natural action on the original
    /// group: `⟨σ·a, φ*(σ)·w⟩ = ⟨a, w⟩`.
    pub fn contragredient_perm_action(self: &Arc<Self>, sigma: &Permutation) -> Result<AbHom> {
        let p = self.perm_matrix(sigma)?;
        AbHom::from_matrix(self, self, p).map_err(|_| Error::NotInvariant(sigma.to_string()))
    }

    fn perm_matrix(&self, sigma: &Permutation) -> Result<IntMatrix> {
        if sigma.degree() != self.n {
            return Err(Error::Arity { expected: self.n, got: sigma.degree() });
        }
        let mut p = vec![vec![0i64; self.n]; self.n];
        for j in 0..self.n {
            p[sigma.apply(j)][j] = 1;
        }
        Ok(p)
    }

    /// `A_δ(κ) = κ − δ(κ)` for the natural action.
    pub fn a_delta(self: &Arc<Self>, delta: &Permutation) -> Result<AbHom> {
        let act = self.perm_action(delta)?;
        Ok(AbHom::identity(self).sub(&act))
    }
}

fn parse_rational(t: &str) -> Result<Rational64> {
    let bad = || Error::Syntax { pos: 0, msg: format!("bad rational '{t}'") };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?),
        None => (t.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(num, den))
}

fn format_rationals(a: &[Rational64]) -> String {
    a.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

trait ModOne {
    fn reduced_mod_one(self) -> Self;
}

impl ModOne for Rational64 {
    fn reduced_mod_one(self) -> Self {
        self - self.floor()
    }
}

/// A subgroup `M/L`, stored by its sorted member indices and the row-HNF
/// basis of `M`.
#[derive(Clone, Debug)]
pub struct AbSubgroup {
    parent: Arc<FinAbGroup>,
    members: Vec<usize>,
    basis: IntMatrix,
}

impl PartialEq for AbSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.parent == other.parent
    }
}

impl Eq for AbSubgroup {}

impl Hash for AbSubgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for AbSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbSubgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

impl AbSubgroup {
    pub fn parent(&self) -> &Arc<FinAbGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Row-HNF basis of the lattice `M` with `L ⊆ M ⊆ Z^n`.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &AbSubgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    fn basis_generators(&self) -> Vec<usize> {
        self.basis.iter().map(|r| self.parent.index_of_vector(r)).collect()
    }

    pub fn sum(&self, other: &AbSubgroup) -> AbSubgroup {
        let mut gens = self.basis_generators();
        gens.extend(other.basis_generators());
        self.parent.subgroup_generated(&gens)
    }

    pub fn intersection(&self, other: &AbSubgroup) -> AbSubgroup {
        let common: Vec<usize> = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        self.parent.subgroup_from_members(&common).expect("intersection of subgroups is a subgroup")
    }

    /// The annihilator `K̃ ⊂ G*` computed from lattices: with `L = M·C`,
    /// the dual lattice is spanned by the columns of `Cᵀ`.
    pub fn dual(&self) -> AbSubgroup {
        let m_cols = lattice::transpose(&self.basis);
        let c = lattice::left_divide(&m_cols, &self.parent.lattice).expect("L ⊆ M");
        let dual_group = self.parent.dual();
        dual_group.subgroup_from_lattice(&c).expect("dual lattice contains Lᵀ")
    }

    /// The annihilator by direct evaluation of the pairing on generators.
    pub fn annihilator(&self) -> AbSubgroup {
        let dual_group = self.parent.dual();
        let gens = self.basis_generators();
        let members: Vec<usize> = dual_group
            .elements()
            .filter(|&w| gens.iter().all(|&g| self.parent.pairing(g, w, &dual_group).is_zero()))
            .collect();
        dual_group.subgroup_from_members(&members).expect("annihilators are subgroups")
    }

    pub fn is_invariant_under(&self, action: &AbHom) -> bool {
        self.members.iter().all(|&m| self.contains(action.apply(m)))
    }

    pub fn generators_display(&self) -> Vec<String> {
        let mut gens = Vec::new();
        let mut current = self.parent.trivial_subgroup();
        for &m in &self.members {
            if !current.contains(m) {
                gens.push(m);
                current = self.parent.subgroup_generated(&gens);
            }
        }
        gens.iter().map(|&g| self.parent.format_element(g)).collect()
    }
}

impl fmt::Display for AbSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.generators_display();
        if gens.is_empty() {
            write!(f, "<0>")
        } else {
            write!(f, "<{}>", gens.join("; "))
        }
    }
}

/// A homomorphism given by an integer matrix on representatives, with
/// `A·L_dom ⊆ L_cod`.
#[derive(Clone, Debug)]
pub struct AbHom {
    domain: Arc<FinAbGroup>,
    codomain: Arc<FinAbGroup>,
    matrix: IntMatrix,
    table: Vec<usize>,
}

impl PartialEq for AbHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.table == other.table
    }
}

impl AbHom {
    pub fn from_matrix(domain: &Arc<FinAbGroup>, codomain: &Arc<FinAbGroup>, matrix: IntMatrix) -> Result<Self> {
        let image = lattice::mat_mul(&matrix, &domain.lattice);
        for col in lattice::transpose(&image) {
            if !lattice::hnf_contains(&codomain.hnf, &col) {
                return Err(Error::InvalidParameters("matrix does not map L_dom into L_cod".into()));
            }
        }
        let table = domain
            .elements()
            .map(|i| codomain.index_of_vector(&lattice::mat_vec(&matrix, &domain.rep(i))))
            .collect();
        Ok(AbHom { domain: Arc::clone(domain), codomain: Arc::clone(codomain), matrix, table })
    }

    pub fn identity(g: &Arc<FinAbGroup>) -> Self {
        Self::from_matrix(g, g, lattice::identity(g.n)).expect("identity is well defined")
    }

    pub fn zero(domain: &Arc<FinAbGroup>, codomain: &Arc<FinAbGroup>) -> Self {
        Self::from_matrix(domain, codomain, vec![vec![0; domain.n]; codomain.n]).expect("zero is well defined")
    }

    /// An endomorphism given by its matrix on Smith coordinates. Entry
    /// `(i, j)` must be a multiple of `d_i / gcd(d_i, d_j)`.
    pub fn from_smith_matrix(g: &Arc<FinAbGroup>, m: &IntMatrix) -> Result<Self> {
        let k = g.invariants.len();
        for i in 0..k {
            for j in 0..k {
                let (di, dj) = (g.invariants[i], g.invariants[j]);
                if (m[i][j] * dj) % di != 0 {
                    return Err(Error::InvalidParameters(format!("entry ({i},{j}) is not well defined")));
                }
            }
        }
        let lift_cols = lattice::transpose(&g.lift);
        let matrix = if k == 0 {
            vec![vec![0; g.n]; g.n]
        } else {
            lattice::mat_mul(&lattice::mat_mul(&lift_cols, m), &g.proj)
        };
        Self::from_matrix(g, g, matrix)
    }

    pub fn domain(&self) -> &Arc<FinAbGroup> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinAbGroup> {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbHom) -> AbHom {
        assert!(other.codomain == self.domain);
        AbHom::from_matrix(&other.domain, &self.codomain, lattice::mat_mul(&self.matrix, &other.matrix))
            .expect("composition of homomorphisms")
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        let m = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        AbHom::from_matrix(&self.domain, &self.codomain, m).expect("difference of homomorphisms")
    }

    /// The adjoint `A*: G_cod* → G_dom*` with `⟨g, A*α⟩ = ⟨A·g, α⟩`.
    /// With `A·L_dom = L_cod·C` it is the matrix `Cᵀ`.
    pub fn dual(&self) -> AbHom {
        let al = lattice::mat_mul(&self.matrix, &self.domain.lattice);
        let c = lattice::left_divide(&self.codomain.lattice, &al).expect("A·L_dom ⊆ L_cod");
        AbHom::from_matrix(&self.codomain.dual(), &self.domain.dual(), lattice::transpose(&c))
            .expect("adjoint is well defined")
    }

    pub fn image(&self, h: &AbSubgroup) -> AbSubgroup {
        let gens: Vec<usize> = h.members.iter().map(|&x| self.table[x]).collect::<HashSet<_>>().into_iter().collect();
        let mut gens = gens;
        gens.sort_unstable();
        self.codomain.subgroup_generated(&gens)
    }

    pub fn preimage(&self, h: &AbSubgroup) -> AbSubgroup {
        let members: Vec<usize> = self.domain.elements().filter(|&x| h.contains(self.table[x])).collect();
        self.domain.subgroup_from_members(&members).expect("preimages are subgroups")
    }

    pub fn kernel(&self) -> AbSubgroup {
        self.preimage(&self.codomain.trivial_subgroup())
    }
}

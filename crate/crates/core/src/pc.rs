//! Permutation groups on `{1..n}` and the parity condition: every subgroup
//! `T ≤ S` has `dim (Cⁿ)^T ≡ n (mod 2)`, the dimension being the number of
//! `T`-orbits on the symbols.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::burnside::FiniteGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on `|S|`.
pub const DEFAULT_MAX_PERM_GROUP_ORDER: usize = 120;

/// A subgroup of `S_n`; `elements` is sorted, so the identity comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    pub fn generated(n: usize, generators: &[Permutation]) -> Result<Self> {
        Self::generated_with_cap(n, generators, DEFAULT_MAX_PERM_GROUP_ORDER)
    }

    pub fn generated_with_cap(n: usize, generators: &[Permutation], cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != n) {
            return Err(Error::Arity { expected: n, got: g.degree() });
        }
        let id = Permutation::identity(n);
        let mut seen: BTreeSet<Permutation> = BTreeSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "permutation group order", size: seen.len(), cap });
                    }
                    queue.push(y);
                }
            }
        }
        let generators = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        Ok(PermutationGroup { n, generators, elements: seen.into_iter().collect() })
    }

    pub fn trivial(n: usize) -> Self {
        PermutationGroup { n, generators: Vec::new(), elements: vec![Permutation::identity(n)] }
    }

    /// Parses `"(1 2 3);(1 2)"` on `n` symbols.
    pub fn parse(n: usize, gens: &str) -> Result<Self> {
        Self::generated(n, &crate::perm::parse_generator_list(gens, n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.n == other.n && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_in_alternating_group(&self) -> bool {
        self.elements.iter().all(Permutation::is_even)
    }

    /// The subgroup formed by the given element indices (assumed closed).
    pub fn sub_by_indices(&self, indices: &[usize]) -> PermutationGroup {
        let elements: Vec<Permutation> = indices.iter().map(|&i| self.elements[i].clone()).collect();
        let mut elements = elements;
        elements.sort();
        PermutationGroup { n: self.n, generators: minimal_generators(&elements), elements }
    }

    /// All subgroups, ordered by size and then by element list.
    pub fn subgroups(&self) -> Result<Vec<PermutationGroup>> {
        let table = FiniteGroup::from_permutations(self)?;
        let subs = table.subgroups(&table.whole(), usize::MAX)?;
        let mut out: Vec<PermutationGroup> = subs
            .iter()
            .map(|s| self.sub_by_indices(&s.elements().iter().map(|&x| x as usize).collect::<Vec<_>>()))
            .collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        Ok(out)
    }
}

fn minimal_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let n = elements.first().map_or(0, Permutation::degree);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span: BTreeSet<Permutation> = BTreeSet::from([Permutation::identity(n)]);
    for p in elements {
        if span.contains(p) {
            continue;
        }
        gens.push(p.clone());
        span = PermutationGroup::generated_with_cap(n, &gens, usize::MAX)
            .expect("subgroup of a capped group")
            .elements
            .into_iter()
            .collect();
    }
    gens
}

impl fmt::Display for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(Permutation::to_string).collect();
        if gens.is_empty() {
            write!(f, "<()>")
        } else {
            write!(f, "<{}>", gens.join(", "))
        }
    }
}

/// Number of orbits of `T` on `{1..n}`.
pub fn fixed_dim(t: &PermutationGroup) -> usize {
    let mut parent: Vec<usize> = (0..t.n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in &t.generators {
        for i in 0..t.n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..t.n).filter(|&i| find(&mut parent, i) == i).count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcVerdict {
    pub holds: bool,
    /// Generators of a subgroup violating the condition.
    pub witness: Option<Vec<String>>,
    pub witness_fixed_dim: Option<usize>,
}

pub fn is_pc(s: &PermutationGroup) -> Result<PcVerdict> {
    for t in s.subgroups()? {
        let d = fixed_dim(&t);
        if d % 2 != s.n % 2 {
            return Ok(PcVerdict {
                holds: false,
                witness: Some(t.generators.iter().map(Permutation::to_string).collect()),
                witness_fixed_dim: Some(d),
            });
        }
    }
    Ok(PcVerdict { holds: true, witness: None, witness_fixed_dim: None })
}

/// The shift `x_i ↦ x_{i+ℓ}` on `kℓ` symbols, a cyclic group of order `k`.
pub fn loop_shift_group(l: usize, k: usize) -> Result<PermutationGroup> {
    if l == 0 || k == 0 || k * l < 2 {
        return Err(Error::InvalidParameters(format!("shift group needs kℓ ≥ 2 (ℓ={l}, k={k})")));
    }
    PermutationGroup::generated_with_cap(k * l, &[Permutation::shift(k * l, l)], k.max(DEFAULT_MAX_PERM_GROUP_ORDER))
}

/// Closed-form parity status of the shift group: it fails exactly when `k`
/// is even and `ℓ` is odd.
pub fn loop_shift_pc_formula(l: usize, k: usize) -> bool {
    !(k % 2 == 0 && l % 2 == 1)
}

//! Permutations of `{1..n}`, stored 0-based, printed in 1-based cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation as its image list: `self.0[i]` is the image of `i`.
///
/// Composition follows function composition: `(a * b)(i) = a(b(i))`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidParameters(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Cyclic shift `i ↦ i + step (mod n)`.
    pub fn shift(n: usize, step: usize) -> Self {
        Permutation((0..n).map(|i| (i + step) % n).collect())
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"` on `n` symbols.
    /// Commas are accepted as separators inside a cycle; `"()"` and `""` are
    /// the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = text.trim();
        let mut offset = text.len() - text.trim_start().len();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Syntax { pos: offset, msg: "expected '('".into() });
            }
            let close = rest.find(')').ok_or(Error::Syntax { pos: offset, msg: "unclosed cycle".into() })?;
            let body = &rest[1..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let k: usize = tok.parse().map_err(|_| Error::Syntax {
                    pos: offset,
                    msg: format!("bad point '{tok}'"),
                })?;
                if k == 0 || k > n {
                    return Err(Error::Arity { expected: n, got: k });
                }
                if used[k - 1] {
                    return Err(Error::Syntax { pos: offset, msg: format!("point {k} repeated") });
                }
                used[k - 1] = true;
                cycle.push(k - 1);
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
            let consumed = close + 1;
            let next = rest[consumed..].trim_start();
            offset += rest.len() - next.len();
            rest = next;
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.0[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    /// `true` for even permutations.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a `;`-separated list of permutations in cycle notation.
pub fn parse_generator_list(text: &str, n: usize) -> Result<Vec<Permutation>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(s, n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert!(Permutation::parse_cycles("(1 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("1 2", 3).is_err());
    }

    #[test]
    fn composition_is_function_composition() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(1), a.apply(b.apply(1)));
        assert_eq!(ab.compose(&ab.inverse()), Permutation::identity(3));
        assert!(!a.is_even());
        assert!(ab.is_even());
    }
}

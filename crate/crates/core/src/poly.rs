//! Invertible polynomials: the text DSL, the chain/loop normal form, the
//! Berglund–Hübsch transpose, quasihomogeneous weights and the periodic loops.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := var ('^' posint)?
//! var    := 'x' posint
//! ```
//!
//! All coefficients are 1. Row `i` of the exponent matrix holds the exponents
//! of the `i`-th monomial in source order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, e) })
            .collect();
        write!(f, "{}", factors.join("*"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    Chain,
    Loop,
}

/// One Sebastiani–Thom summand. `variables[i]` carries exponent
/// `exponents[i]` and multiplies into `variables[i + 1]` (cyclically for a loop).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub variables: Vec<usize>,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDecomposition {
    pub atoms: Vec<Atom>,
}

impl fmt::Display for AtomDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| {
                let kind = match a.kind {
                    AtomKind::Chain => "chain",
                    AtomKind::Loop => "loop",
                };
                let vars: Vec<String> = a.variables.iter().map(|v| format!("x{}", v + 1)).collect();
                let ps: Vec<String> = a.exponents.iter().map(u32::to_string).collect();
                format!("{kind}[{}] p=({})", vars.join(","), ps.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// A polynomial that passed the normal-form gate. Immutable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvertiblePolynomial {
    matrix: IntMatrix,
}

impl InvertiblePolynomial {
    /// Validates an exponent matrix (rows = monomials).
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.first().map_or(0, Vec::len);
        if matrix.len() != n || n == 0 {
            return Err(Error::MonomialCount { monomials: matrix.len(), variables: n });
        }
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("ragged exponent matrix".into()));
        }
        if matrix.iter().flatten().any(|&e| e < 0) {
            return Err(Error::InvalidParameters("negative exponent".into()));
        }
        if lattice::det(&matrix) == 0 {
            return Err(Error::Singular);
        }
        let poly = InvertiblePolynomial { matrix };
        poly.classify_atoms()?;
        Ok(poly)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let terms = Parser::new(text).parse()?;
        let n = terms.iter().flat_map(|t| t.iter().map(|&(v, _)| v)).max().unwrap_or(0);
        let mut seen = vec![false; n];
        for t in &terms {
            for &(v, _) in t {
                seen[v - 1] = true;
            }
        }
        if let Some(gap) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidParameters(format!("variable x{} does not occur", gap + 1)));
        }
        if terms.len() != n {
            return Err(Error::MonomialCount { monomials: terms.len(), variables: n });
        }
        let matrix = terms
            .iter()
            .map(|t| {
                let mut row = vec![0i64; n];
                for &(v, e) in t {
                    row[v - 1] += e as i64;
                }
                row
            })
            .collect();
        Self::from_matrix(matrix)
    }

    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn det(&self) -> i64 {
        lattice::det(&self.matrix)
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.matrix
            .iter()
            .map(|r| Monomial { exponents: r.iter().map(|&e| e as u32).collect() })
            .collect()
    }

    /// Berglund–Hübsch transpose: the exponent matrix of the result is `Eᵀ`.
    pub fn transpose(&self) -> InvertiblePolynomial {
        // a chain/loop sum stays a chain/loop sum under transposition
        InvertiblePolynomial { matrix: lattice::transpose(&self.matrix) }
    }

    /// Weights `q` with `E·q = (1,…,1)ᵀ`.
    pub fn weights(&self) -> Vec<BigRational> {
        let ones = vec![1i64; self.n()];
        lattice::solve_rational(&self.matrix, &ones).expect("validated polynomials are nonsingular")
    }

    pub fn classify_atoms(&self) -> Result<AtomDecomposition> {
        let n = self.n();
        // head[row] = variable carrying the exponent ≥ 2, tail[row] = the linear variable
        let mut head_of_var = vec![None; n];
        let mut tail_of_var: Vec<Option<usize>> = vec![None; n];
        let mut exponent_of_var = vec![0u32; n];
        let mut tail_in_degree = vec![0usize; n];
        for (i, row) in self.matrix.iter().enumerate() {
            let heads: Vec<usize> = (0..n).filter(|&j| row[j] >= 2).collect();
            let tails: Vec<usize> = (0..n).filter(|&j| row[j] == 1).collect();
            let monomial = Monomial { exponents: row.iter().map(|&e| e as u32).collect() };
            if heads.len() != 1 || tails.len() > 1 {
                return Err(Error::NotNormalForm(format!(
                    "monomial {} is not of the form x^p or x^p*y with p ≥ 2",
                    monomial
                )));
            }
            let h = heads[0];
            if head_of_var[h].is_some() {
                return Err(Error::NotNormalForm(format!("x{} heads two monomials", h + 1)));
            }
            head_of_var[h] = Some(i);
            exponent_of_var[h] = row[h] as u32;
            if let Some(&t) = tails.first() {
                tail_of_var[h] = Some(t);
                tail_in_degree[t] += 1;
                if tail_in_degree[t] > 1 {
                    return Err(Error::NotNormalForm(format!("x{} is the linear factor of two monomials", t + 1)));
                }
            }
        }
        let mut visited = vec![false; n];
        let mut atoms = Vec::new();
        // chains start at variables that are nobody's tail
        for start in 0..n {
            if tail_in_degree[start] != 0 {
                continue;
            }
            let mut vars = Vec::new();
            let mut v = Some(start);
            while let Some(x) = v {
                visited[x] = true;
                vars.push(x);
                v = tail_of_var[x];
            }
            let exponents = vars.iter().map(|&x| exponent_of_var[x]).collect();
            atoms.push(Atom { kind: AtomKind::Chain, variables: vars, exponents });
        }
        // what remains consists of cycles
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut vars = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                vars.push(x);
                x = tail_of_var[x].expect("variables off chains lie on cycles");
            }
            let exponents = vars.iter().map(|&x| exponent_of_var[x]).collect();
            atoms.push(Atom { kind: AtomKind::Loop, variables: vars, exponents });
        }
        atoms.sort_by_key(|a| a.variables.iter().copied().min());
        Ok(AtomDecomposition { atoms })
    }

    /// Rebuilds a polynomial from atoms; monomial `i` is headed by `x_{i+1}`.
    pub fn from_atoms(n: usize, atoms: &AtomDecomposition) -> Result<Self> {
        let mut matrix = vec![vec![0i64; n]; n];
        for atom in &atoms.atoms {
            let m = atom.variables.len();
            for (i, (&v, &p)) in atom.variables.iter().zip(&atom.exponents).enumerate() {
                if v >= n {
                    return Err(Error::Arity { expected: n, got: v + 1 });
                }
                matrix[v][v] = p as i64;
                let next = match atom.kind {
                    AtomKind::Chain if i + 1 == m => None,
                    _ => Some(atom.variables[(i + 1) % m]),
                };
                if let Some(t) = next {
                    matrix[v][t] = 1;
                }
            }
        }
        Self::from_matrix(matrix)
    }

    /// Whether substituting `x_j → x_{σ(j)}` maps the monomial set onto itself.
    pub fn is_invariant_under(&self, sigma: &Permutation) -> Result<bool> {
        let n = self.n();
        if sigma.degree() != n {
            return Err(Error::Arity { expected: n, got: sigma.degree() });
        }
        let mut original = self.matrix.clone();
        let mut permuted: IntMatrix = self
            .matrix
            .iter()
            .map(|row| {
                let mut out = vec![0; n];
                for (j, &e) in row.iter().enumerate() {
                    out[sigma.apply(j)] = e;
                }
                out
            })
            .collect();
        original.sort();
        permuted.sort();
        Ok(original == permuted)
    }
}

impl FromStr for InvertiblePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.monomials().iter().map(Monomial::to_string).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The loop `x_1^{p_1}x_2 + … + x_{kℓ}^{p_ℓ}x_1` with `p_{i+ℓ} = p_i`.
pub fn periodic_loop(period: &[u32], k: usize) -> Result<InvertiblePolynomial> {
    let l = period.len();
    if l == 0 || k == 0 {
        return Err(Error::InvalidParameters("period and repetition count must be nonempty".into()));
    }
    let n = k * l;
    if n < 2 {
        return Err(Error::InvalidParameters("a loop needs at least two variables".into()));
    }
    if let Some(p) = period.iter().find(|&&p| p < 2) {
        return Err(Error::InvalidParameters(format!("exponent {p} < 2")));
    }
    let matrix = (0..n)
        .map(|i| {
            let mut row = vec![0i64; n];
            row[i] = period[i % l] as i64;
            row[(i + 1) % n] = 1;
            row
        })
        .collect();
    InvertiblePolynomial::from_matrix(matrix)
}

/// Checks `E·q = 1` by re-multiplication.
pub fn weights_satisfy_system(f: &InvertiblePolynomial, q: &[BigRational]) -> bool {
    f.matrix().iter().all(|row| {
        row.iter()
            .zip(q)
            .fold(BigRational::zero(), |acc, (&e, w)| acc + w * BigInt::from(e))
            .is_one()
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn posint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u64>() {
            Ok(0) => {
                self.pos = start;
                self.err("expected a positive integer, found 0")
            }
            Ok(v) if v <= u32::MAX as u64 => Ok(v),
            _ => {
                self.pos = start;
                self.err("integer too large")
            }
        }
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        match self.peek() {
            Some(b'x') => self.pos += 1,
            Some(c) if c.is_ascii_digit() => return self.err("explicit coefficients are not supported"),
            Some(c) => return self.err(format!("expected a variable, found '{}'", c as char)),
            None => return self.err("expected a variable, found end of input"),
        }
        // the index must follow 'x' directly
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return self.err("expected a variable index after 'x'");
        }
        let var = self.posint()? as usize;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.posint()? as u32
        } else {
            1
        };
        Ok((var, exp))
    }

    fn term(&mut self) -> Result<Vec<(usize, u32)>> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn parse(mut self) -> Result<Vec<Vec<(usize, u32)>>> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                None => return Ok(terms),
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            }
        }
    }
}

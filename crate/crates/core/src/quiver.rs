//! Exchange matrices, the mutation rule, and canonical forms.
//!
//! Vertex indices in the public API are 1-based, matching the usual way
//! quivers are drawn (`1..=n`).

use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A skew-symmetric integral `n × n` matrix.
///
/// This is the single source of truth for a quiver: `b_ij > 0` means
/// `b_ij` arrows `i → j`. Skew-symmetry excludes loops and 2-cycles, so
/// every value of this type is a valid quiver.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    n: usize,
    #[serde(with = "crate::decimal::vec")]
    entries: Vec<BigInt>,
}

impl TryFrom<MatrixRepr> for ExchangeMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        ExchangeMatrix::new(repr.n, repr.entries)
    }
}

impl From<ExchangeMatrix> for MatrixRepr {
    fn from(m: ExchangeMatrix) -> Self {
        MatrixRepr {
            n: m.n,
            entries: m.entries,
        }
    }
}

impl ExchangeMatrix {
    /// Builds a matrix from row-major entries, validating skew-symmetry.
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            if !entries[i * n + i].is_zero() {
                return Err(Error::Loop(i + 1));
            }
            for j in (i + 1)..n {
                if entries[i * n + j] != -&entries[j * n + i] {
                    return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    pub fn zero(n: usize) -> Result<Self> {
        ExchangeMatrix::new(n, vec![BigInt::zero(); n * n])
    }

    pub fn from_i64_rows<const N: usize>(rows: [[i64; N]; N]) -> Result<Self> {
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        ExchangeMatrix::new(N, entries)
    }

    /// Builds the matrix of a quiver given as `(tail, head, multiplicity)`
    /// arrow bundles. Repeated bundles in the same direction accumulate.
    pub fn from_arrows<I, M>(n: usize, arrows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, M)>,
        M: Into<BigInt>,
    {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for (tail, head, mult) in arrows {
            let mult: BigInt = mult.into();
            for v in [tail, head] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { k: v, n });
                }
            }
            if mult.is_negative() {
                return Err(Error::NegativeMultiplicity(mult));
            }
            if mult.is_zero() {
                continue;
            }
            if tail == head {
                return Err(Error::Loop(tail));
            }
            let (i, j) = (tail - 1, head - 1);
            if entries[i * n + j].is_negative() {
                return Err(Error::TwoCycle { i: tail, j: head });
            }
            entries[i * n + j] += &mult;
            entries[j * n + i] -= &mult;
        }
        ExchangeMatrix::new(n, entries)
    }

    /// The quiver `2 -a-> 1 -b-> 3 -c-> 2` with the multiplicities in the
    /// given order. Requires `a, b, c ≥ 0`.
    pub fn from_cycle_parameters(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        for x in [&a, &b, &c] {
            if x.is_negative() {
                return Err(Error::NegativeMultiplicity(x.clone()));
            }
        }
        Ok(ExchangeMatrix::cycle(&a, &b, &c))
    }

    fn cycle(a: &BigInt, b: &BigInt, c: &BigInt) -> Self {
        let z = BigInt::zero;
        let entries = vec![z(), -a, b.clone(), a.clone(), z(), -c, -b, c.clone(), z()];
        ExchangeMatrix { n: 3, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `b_ij` with 1-based indices.
    ///
    /// Panics if `i` or `j` is outside `1..=n`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// Strictly upper-triangular entries `b_ij`, `i < j`, in row-major order.
    pub fn upper(&self) -> Vec<BigInt> {
        (0..self.n)
            .tuple_combinations()
            .map(|(i, j)| self.at(i, j).clone())
            .collect()
    }

    pub fn transpose(&self) -> ExchangeMatrix {
        let n = self.n;
        let entries = (0..n * n).map(|idx| self.at(idx % n, idx / n).clone()).collect();
        ExchangeMatrix { n, entries }
    }

    /// Simultaneous row/column permutation: the result has entry
    /// `b[perm[i]][perm[j]]` at `(i, j)` (0-based `perm`).
    pub fn permute(&self, perm: &[usize]) -> Result<ExchangeMatrix> {
        let n = self.n;
        if perm.len() != n || !perm.iter().copied().sorted().eq(0..n) {
            return Err(Error::InvalidArgument(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        Ok(self.permuted_unchecked(perm, false))
    }

    fn permuted_unchecked(&self, perm: &[usize], transposed: bool) -> ExchangeMatrix {
        let n = self.n;
        let entries = (0..n)
            .cartesian_product(0..n)
            .map(|(i, j)| {
                let (r, c) = if transposed { (perm[j], perm[i]) } else { (perm[i], perm[j]) };
                self.at(r, c).clone()
            })
            .collect();
        ExchangeMatrix { n, entries }
    }

    /// Matrix mutation at vertex `k` (1-based).
    ///
    /// `b'_ij = -b_ij` if `k ∈ {i, j}`, otherwise
    /// `b'_ij = b_ij + sgn(b_ik) · max(b_ik · b_kj, 0)`. On the quiver this
    /// reverses the arrows at `k`, adds one arrow `i → j` per path
    /// `i → k → j`, and cancels the resulting 2-cycles.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        let n = self.n;
        if k == 0 || k > n {
            return Err(Error::VertexOutOfRange { k, n });
        }
        let k = k - 1;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let b = self.at(i, j);
                if i == k || j == k {
                    entries.push(-b);
                    continue;
                }
                let (bik, bkj) = (self.at(i, k), self.at(k, j));
                let prod = bik * bkj;
                entries.push(if prod.is_positive() {
                    if bik.is_positive() {
                        b + prod
                    } else {
                        b - prod
                    }
                } else {
                    b.clone()
                });
            }
        }
        Ok(ExchangeMatrix { n, entries })
    }

    /// Total number of arrows, `Σ_{i<j} |b_ij|`.
    pub fn arrow_count(&self) -> BigInt {
        (0..self.n)
            .tuple_combinations()
            .map(|(i, j)| self.at(i, j).abs())
            .sum()
    }

    /// Largest arrow multiplicity between any two vertices.
    pub fn max_multiplicity(&self) -> BigInt {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_default()
    }

    /// True iff the quiver contains an oriented cycle.
    #[allow(clippy::needless_range_loop)]
    pub fn is_cyclic(&self) -> bool {
        if self.n == 3 {
            let sides = [self.at(0, 1), self.at(1, 2), self.at(2, 0)];
            return sides.iter().all(|x| x.is_positive()) || sides.iter().all(|x| x.is_negative());
        }
        // Kahn's algorithm: a cycle exists iff some vertex is never freed.
        let n = self.n;
        let mut indegree: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.at(i, j).is_positive()).count())
            .collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut freed = 0;
        while let Some(v) = ready.pop() {
            freed += 1;
            for w in 0..n {
                if self.at(v, w).is_positive() {
                    indegree[w] -= 1;
                    if indegree[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        freed < n
    }

    /// True iff the underlying undirected graph is connected.
    #[allow(clippy::needless_range_loop)]
    pub fn is_connected(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && !self.at(v, w).is_zero() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The lexicographically smallest row-major matrix over all
    /// simultaneous permutations of this matrix and of its transpose.
    pub fn canonical_form(&self) -> ExchangeMatrix {
        let n = self.n;
        let mut best: Option<ExchangeMatrix> = None;
        for perm in (0..n).permutations(n) {
            for transposed in [false, true] {
                let candidate = self.permuted_unchecked(&perm, transposed);
                let better = match &best {
                    None => true,
                    Some(b) => candidate.entries.cmp(&b.entries) == Ordering::Less,
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
        best.expect("at least one permutation")
    }

    /// Key identifying the quiver up to isomorphism and change of orientation.
    pub fn canonical_key(&self) -> CanonicalKey {
        let form = self.canonical_form();
        CanonicalKey {
            n: form.n,
            entries: form.entries,
        }
    }

    fn require_three(&self) -> Result<()> {
        if self.n != 3 {
            return Err(Error::NotThreeVertices(self.n));
        }
        Ok(())
    }

    /// Multiplicity of the side opposite vertex `k`, i.e. `|b_ij|` for the
    /// two vertices `i, j ≠ k`.
    pub fn side_opposite(&self, k: usize) -> Result<BigInt> {
        self.require_three()?;
        let (i, j) = match k {
            1 => (1, 2),
            2 => (0, 2),
            3 => (0, 1),
            _ => return Err(Error::VertexOutOfRange { k, n: 3 }),
        };
        Ok(self.at(i, j).abs())
    }

    /// Vertex opposite the side of largest multiplicity; ties go to the
    /// smallest vertex index.
    pub fn vertex_opposite_max(&self) -> Result<usize> {
        self.require_three()?;
        let sides = [self.side_opposite(1)?, self.side_opposite(2)?, self.side_opposite(3)?];
        let max = sides.iter().max().expect("three sides");
        Ok(sides.iter().position(|s| s == max).expect("max present") + 1)
    }

    /// Sorted parameters `(a, b, c)` of a cyclic 3-vertex quiver.
    pub fn cyclic_parameters(&self) -> Result<SortedTriple> {
        self.require_three()?;
        if !self.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        SortedTriple::sorted(self.at(0, 1).abs(), self.at(1, 2).abs(), self.at(2, 0).abs())
    }

    /// Graphviz rendering with one labelled edge per arrow bundle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for i in 0..self.n {
            for j in 0..self.n {
                let b = self.at(i, j);
                if b.is_positive() {
                    let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", i + 1, j + 1, b);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", row.iter().join(" "))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExchangeMatrix{self}")
    }
}

/// Sorted parameters `a ≤ b ≤ c` of a cyclic 3-vertex quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct SortedTriple {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    #[serde(with = "crate::decimal")]
    a: BigInt,
    #[serde(with = "crate::decimal")]
    b: BigInt,
    #[serde(with = "crate::decimal")]
    c: BigInt,
}

impl TryFrom<TripleRepr> for SortedTriple {
    type Error = Error;

    fn try_from(r: TripleRepr) -> Result<Self> {
        SortedTriple::new(r.a, r.b, r.c)
    }
}

impl From<SortedTriple> for TripleRepr {
    fn from(t: SortedTriple) -> Self {
        TripleRepr {
            a: t.a,
            b: t.b,
            c: t.c,
        }
    }
}

impl SortedTriple {
    /// Requires `0 ≤ a ≤ b ≤ c`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        for x in [&a, &b, &c] {
            if x.is_negative() {
                return Err(Error::NegativeMultiplicity(x.clone()));
            }
        }
        if a > b || b > c {
            return Err(Error::Unsorted { a, b, c });
        }
        Ok(SortedTriple { a, b, c })
    }

    /// Sorts three nonnegative multiplicities.
    pub fn sorted(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let mut v = [x, y, z];
        v.sort();
        let [a, b, c] = v;
        SortedTriple::new(a, b, c)
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self> {
        SortedTriple::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn sum(&self) -> BigInt {
        &self.a + &self.b + &self.c
    }

    /// The standard cyclic representative: `a` arrows `2 → 1`, `b` arrows
    /// `1 → 3`, `c` arrows `3 → 2`. Vertex 1 is opposite `c`, vertex 2
    /// opposite `b`, vertex 3 opposite `a`.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        ExchangeMatrix::cycle(&self.a, &self.b, &self.c)
    }
}

impl fmt::Display for SortedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.b, self.c)
    }
}

/// Totally ordered encoding of a quiver up to isomorphism and opposite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    entries: Vec<BigInt>,
}

impl CanonicalKey {
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// The canonical representative this key encodes.
    pub fn to_matrix(&self) -> ExchangeMatrix {
        ExchangeMatrix {
            n: self.n,
            entries: self.entries.clone(),
        }
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

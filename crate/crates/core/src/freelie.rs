//! Hall bases of free Lie algebras and free nilpotent Lie algebras.
//!
//! Basic commutators are built length by length. Generators `x_0 < x_1 <
//! ...` come first; a bracket `[u, v]` of total length `n` is basic when
//! `u > v` and, if `u = [s, t]`, also `v >= t`. Inside a stratum the
//! words are ordered by `(index(u), index(v))`, and every word of a
//! shorter length precedes every longer one. Words are displayed
//! left-normed: `[a, b, c] = [[a, b], c]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{Rational, Subspace, Terms};
use crate::fdlie::LieAlgebra;
use crate::structure::StructureConstants;

/// Largest free nilpotent algebra built unless the caller raises the cap.
pub const DEFAULT_DIM_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeLieError {
    #[error("rank and class must both be at least 1 (got rank {rank}, class {class})")]
    InvalidParameters { rank: usize, class: usize },
    #[error("free nilpotent algebra of rank {rank} and class {class} has dimension {dim}, above the cap {cap}")]
    CapExceeded {
        rank: usize,
        class: usize,
        dim: u128,
        cap: usize,
    },
    #[error("word {0} is not a basis element of this algebra")]
    NotInBasis(String),
}

/// A basic commutator as a binary tree over generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HallWord {
    Generator(usize),
    Bracket(Box<HallWord>, Box<HallWord>),
}

impl HallWord {
    pub fn bracket(left: HallWord, right: HallWord) -> HallWord {
        HallWord::Bracket(Box::new(left), Box::new(right))
    }

    pub fn length(&self) -> usize {
        match self {
            HallWord::Generator(_) => 1,
            HallWord::Bracket(l, r) => l.length() + r.length(),
        }
    }

    /// Left-normed rendering using `names` for the generators.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            HallWord::Generator(g) => names[*g].clone(),
            HallWord::Bracket(..) => {
                let mut items = Vec::new();
                self.collect_left_normed(names, &mut items);
                format!("[{}]", items.join(","))
            }
        }
    }

    fn collect_left_normed(&self, names: &[String], items: &mut Vec<String>) {
        match self {
            HallWord::Generator(g) => items.push(names[*g].clone()),
            HallWord::Bracket(l, r) => {
                l.collect_left_normed(names, items);
                items.push(r.render(names));
            }
        }
    }
}

/// Default generator names: `x, y, z` for up to three generators,
/// otherwise `x1, x2, ...`.
pub fn generator_names(rank: usize) -> Vec<String> {
    if rank <= 3 {
        ["x", "y", "z"][..rank]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

fn mobius(mut n: u64) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of basic commutators of length `n` on `d` generators,
/// `(1/n) Σ_{m | n} μ(m) d^{n/m}`; `None` on overflow.
pub fn checked_witt(d: usize, n: usize) -> Option<u128> {
    if d == 0 || n == 0 {
        return Some(0);
    }
    let mut total: i128 = 0;
    for m in 1..=n {
        if !n.is_multiple_of(m) {
            continue;
        }
        let mu = mobius(m as u64);
        if mu == 0 {
            continue;
        }
        let power = (d as i128).checked_pow((n / m) as u32)?;
        total = total.checked_add(mu * power)?;
    }
    Some((total / n as i128) as u128)
}

/// Panicking form of [`checked_witt`].
pub fn witt(d: usize, n: usize) -> u128 {
    checked_witt(d, n).expect("witt count overflows u128")
}

/// Dimension of the free nilpotent Lie algebra of rank `d` and class `c`.
pub fn free_nilpotent_dim(d: usize, c: usize) -> Option<u128> {
    (1..=c).try_fold(0u128, |acc, n| acc.checked_add(checked_witt(d, n)?))
}

/// Ordered Hall basis of the free Lie algebra, truncated at a class.
#[derive(Clone, Debug)]
pub struct HallBasis {
    rank: usize,
    class: usize,
    words: Vec<HallWord>,
    factors: Vec<Option<(usize, usize)>>,
    lengths: Vec<usize>,
    offsets: Vec<usize>,
    index: HashMap<HallWord, usize>,
    pair_index: HashMap<(usize, usize), usize>,
    names: Vec<String>,
}

impl HallBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &HallWord {
        &self.words[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// `(left, right)` basis indices of a composite word.
    pub fn factors(&self, i: usize) -> Option<(usize, usize)> {
        self.factors[i]
    }

    pub fn index_of(&self, w: &HallWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Start index of each length stratum; `offsets()[n - 1]` is where
    /// length `n` begins and the last entry equals the basis size.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Index range of the words of length `n`.
    pub fn stratum(&self, n: usize) -> Range<usize> {
        if n == 0 || n > self.class {
            return self.words.len()..self.words.len();
        }
        self.offsets[n - 1]..self.offsets[n]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn render(&self, i: usize) -> String {
        self.words[i].render(&self.names)
    }
}

/// All basic commutators of length at most `c` on `d` generators.
pub fn hall_basis(d: usize, c: usize) -> HallBasis {
    let mut words = Vec::new();
    let mut factors = Vec::new();
    let mut lengths = Vec::new();
    let mut offsets = vec![0];
    let mut pair_index = HashMap::new();
    if c >= 1 {
        for g in 0..d {
            words.push(HallWord::Generator(g));
            factors.push(None);
            lengths.push(1);
        }
        offsets.push(words.len());
    }
    for n in 2..=c {
        let shorter = words.len();
        for i in 0..shorter {
            for j in 0..i {
                if lengths[i] + lengths[j] != n {
                    continue;
                }
                if let Some((_, t)) = factors[i] {
                    if j < t {
                        continue;
                    }
                }
                pair_index.insert((i, j), words.len());
                words.push(HallWord::bracket(words[i].clone(), words[j].clone()));
                factors.push(Some((i, j)));
                lengths.push(n);
            }
        }
        offsets.push(words.len());
    }
    let index = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    HallBasis {
        rank: d,
        class: c,
        words,
        factors,
        lengths,
        offsets,
        index,
        pair_index,
        names: generator_names(d),
    }
}

/// The free nilpotent Lie algebra `F / γ_{c+1}(F)` in its Hall basis.
#[derive(Clone, Debug)]
pub struct FreeNilpotentAlgebra {
    basis: HallBasis,
    table: Vec<Terms>,
}

impl FreeNilpotentAlgebra {
    pub fn rank(&self) -> usize {
        self.basis.rank
    }

    pub fn class(&self) -> usize {
        self.basis.class
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn weight_offsets(&self) -> &[usize] {
        self.basis.offsets()
    }

    /// `γ_k` as the coordinate span of words of length at least `k`.
    pub fn gamma(&self, k: usize) -> Subspace {
        let n = self.basis.len();
        let start = if k <= 1 {
            0
        } else if k > self.class() {
            n
        } else {
            self.basis.offsets[k - 1]
        };
        Subspace::coordinate(n, start..n)
    }

    /// Unit vectors of the generators.
    pub fn generator_vectors(&self) -> Vec<Vec<Rational>> {
        let n = self.basis.len();
        (0..self.rank())
            .map(|g| crate::exactlin::unit_vec(n, g))
            .collect()
    }

    /// `[u, v]` for basis words, expressed in the Hall basis.
    pub fn reduce_bracket(&self, u: &HallWord, v: &HallWord) -> Result<Terms, FreeLieError> {
        let lookup = |w: &HallWord| {
            self.basis
                .index_of(w)
                .ok_or_else(|| FreeLieError::NotInBasis(w.render(&self.basis.names)))
        };
        let (i, j) = (lookup(u)?, lookup(v)?);
        Ok(self.bracket_terms(i, j).to_vec())
    }

    /// The same table as a [`LieAlgebra`] with Hall words as labels.
    pub fn to_lie_algebra(&self) -> LieAlgebra {
        let labels = (0..self.basis.len())
            .map(|i| self.basis.render(i))
            .collect();
        LieAlgebra::from_trusted_table(
            format!("F({},{})", self.rank(), self.class()),
            labels,
            self.table.clone(),
        )
    }
}

impl StructureConstants for FreeNilpotentAlgebra {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.basis.len() + j]
    }
}

fn scaled(terms: &[(usize, Rational)], s: &Rational) -> Terms {
    terms.iter().map(|(i, a)| (*i, a * s)).collect()
}

/// Memoized Hall collection of brackets of basis words.
struct Collector<'a> {
    basis: &'a HallBasis,
    memo: Vec<Option<Terms>>,
}

impl Collector<'_> {
    fn bracket(&mut self, i: usize, j: usize) -> Terms {
        let b = self.basis;
        if i == j || b.lengths[i] + b.lengths[j] > b.class {
            return Vec::new();
        }
        if i < j {
            return scaled(&self.bracket(j, i), &-Rational::one());
        }
        let key = i * b.len() + j;
        if let Some(t) = &self.memo[key] {
            return t.clone();
        }
        let result = match b.factors[i] {
            Some((s, t)) if j < t => {
                // [[s,t],j] = [[s,j],t] + [s,[t,j]]
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in self.bracket(s, j) {
                    for (l, c) in self.bracket(k, t) {
                        *acc.entry(l).or_insert_with(Rational::zero) += &a * c;
                    }
                }
                for (k, a) in self.bracket(t, j) {
                    for (l, c) in self.bracket(s, k) {
                        *acc.entry(l).or_insert_with(Rational::zero) += &a * c;
                    }
                }
                acc.into_iter().filter(|(_, a)| !a.is_zero()).collect()
            }
            _ => {
                let w = b.pair_index[&(i, j)];
                vec![(w, Rational::one())]
            }
        };
        self.memo[key] = Some(result.clone());
        result
    }
}

/// Free nilpotent Lie algebra of rank `d` and class `c`, capped at
/// [`DEFAULT_DIM_CAP`] dimensions.
pub fn free_nilpotent(d: usize, c: usize) -> Result<FreeNilpotentAlgebra, FreeLieError> {
    free_nilpotent_with_cap(d, c, DEFAULT_DIM_CAP)
}

pub fn free_nilpotent_with_cap(
    d: usize,
    c: usize,
    cap: usize,
) -> Result<FreeNilpotentAlgebra, FreeLieError> {
    if d == 0 || c == 0 {
        return Err(FreeLieError::InvalidParameters { rank: d, class: c });
    }
    let dim = free_nilpotent_dim(d, c).unwrap_or(u128::MAX);
    if dim > cap as u128 {
        return Err(FreeLieError::CapExceeded {
            rank: d,
            class: c,
            dim,
            cap,
        });
    }
    let basis = hall_basis(d, c);
    let n = basis.len();
    let mut collector = Collector {
        basis: &basis,
        memo: vec![None; n * n],
    };
    let mut table = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..i {
            if basis.lengths[i] + basis.lengths[j] > c {
                continue;
            }
            let t = collector.bracket(i, j);
            table[j * n + i] = scaled(&t, &-Rational::one());
            table[i * n + j] = t;
        }
    }
    drop(collector);
    Ok(FreeNilpotentAlgebra { basis, table })
}

/// A Hall-basis listing entry for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallListing {
    pub index: usize,
    pub length: usize,
    pub word: String,
}

pub fn hall_listing(basis: &HallBasis) -> Vec<HallListing> {
    (0..basis.len())
        .map(|i| HallListing {
            index: i,
            length: basis.length(i),
            word: basis.render(i),
        })
        .collect()
}

impl fmt::Display for FreeNilpotentAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "free nilpotent Lie algebra of rank {} and class {} (dim {})",
            self.rank(),
            self.class(),
            self.basis.len()
        )
    }
}

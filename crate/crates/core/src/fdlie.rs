//! Finite-dimensional Lie algebras given by rational structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{
    int, rank, unit_vec, EchelonBuilder, LinAlgError, Matrix, Rational, Subspace, Terms,
};
use crate::par;
use crate::structure::{centralizer_preimage, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("antisymmetry fails at (e{}, e{})", .i + 1, .j + 1)]
    Antisymmetry { i: usize, j: usize },
    #[error("Jacobi identity fails on (e{}, e{}, e{})", .i + 1, .j + 1, .k + 1)]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("table shape: {0}")]
    Shape(String),
    #[error("subspace is not an ideal: [v{}, e{}] leaves it", .row + 1, .basis + 1)]
    NotAnIdeal { row: usize, basis: usize },
    #[error("expected dim L^2 = 1, found {0}")]
    DerivedDimension(usize),
    #[error("algebra is not nilpotent; lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },
    #[error("malformed algebra file: {0}")]
    Format(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A Lie algebra with a named basis and sparse structure constants.
/// Construction through [`LieAlgebra::validate`] checks antisymmetry and
/// the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    table: Vec<Terms>,
}

impl StructureConstants for LieAlgebra {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.basis.len() + j]
    }
}

fn normalize(terms: &[(usize, Rational)]) -> Terms {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, a) in terms {
        *acc.entry(*k).or_insert_with(Rational::zero) += a;
    }
    acc.into_iter().filter(|(_, a)| !a.is_zero()).collect()
}

impl LieAlgebra {
    /// Checks a full `n × n` table (row-major, `table[i*n + j] = [e_i, e_j]`).
    pub fn validate(
        name: impl Into<String>,
        basis: Vec<String>,
        table: Vec<Terms>,
    ) -> Result<Self, LieError> {
        let n = basis.len();
        if table.len() != n * n {
            return Err(LieError::Shape(format!(
                "expected {} entries for dimension {n}, got {}",
                n * n,
                table.len()
            )));
        }
        for (pos, t) in table.iter().enumerate() {
            if let Some((k, _)) = t.iter().find(|(k, _)| *k >= n) {
                return Err(LieError::Shape(format!(
                    "[e{}, e{}] refers to basis index {k} outside dimension {n}",
                    pos / n + 1,
                    pos % n + 1
                )));
            }
        }
        let table: Vec<Terms> = table.iter().map(|t| normalize(t)).collect();
        for i in 0..n {
            for j in i..n {
                let ij = &table[i * n + j];
                let ji = &table[j * n + i];
                let ok = ij.len() == ji.len()
                    && ij
                        .iter()
                        .zip(ji)
                        .all(|((a, x), (b, y))| a == b && (x + y).is_zero());
                if !ok {
                    return Err(LieError::Antisymmetry { i, j });
                }
            }
        }
        let alg = LieAlgebra {
            name: name.into(),
            basis,
            table,
        };
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(LieError::Jacobi { i, j, k });
        }
        Ok(alg)
    }

    /// Skips validation; used for tables that are correct by construction.
    pub(crate) fn from_trusted_table(name: String, basis: Vec<String>, table: Vec<Terms>) -> Self {
        LieAlgebra { name, basis, table }
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let triples: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let bad = par::map_slice(&triples, |&(i, j)| {
            let eij = crate::exactlin::from_terms(self.bracket_terms(i, j), n);
            (j + 1..n)
                .find(|&k| {
                    let mut sum = self.bracket_with_basis(&eij, k);
                    let ejk = crate::exactlin::from_terms(self.bracket_terms(j, k), n);
                    let eki = crate::exactlin::from_terms(self.bracket_terms(k, i), n);
                    for (s, t) in sum.iter_mut().zip(self.bracket_with_basis(&ejk, i)) {
                        *s += t;
                    }
                    for (s, t) in sum.iter_mut().zip(self.bracket_with_basis(&eki, j)) {
                        *s += t;
                    }
                    !crate::exactlin::is_zero_vec(&sum)
                })
                .map(|k| (i, j, k))
        });
        bad.into_iter().flatten().next()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Applies an invertible change of basis. Row `r` of `change` holds the
    /// old coordinates of the new basis vector `f_r`.
    pub fn change_basis(&self, change: &Matrix) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n || rank(change) != n {
            return Err(LieError::Shape(
                "change of basis must be an invertible n × n matrix".into(),
            ));
        }
        // old coordinates -> new coordinates: solve x = y * change
        let inverse_t = invert(&change.transpose());
        let table = (0..n * n)
            .map(|pos| {
                let (a, b) = (pos / n, pos % n);
                let old = self.bracket(change.row(a), change.row(b));
                crate::exactlin::to_terms(&inverse_t.mul_vec(&old))
            })
            .collect();
        let labels = (1..=n).map(|i| format!("f{i}")).collect();
        Ok(LieAlgebra::from_trusted_table(
            self.name.clone(),
            labels,
            table,
        ))
    }

    /// `L^2 = [L, L]`
    pub fn derived(&self) -> Subspace {
        let n = self.dim();
        let vectors = self
            .table
            .iter()
            .filter(|t| !t.is_empty())
            .map(|t| crate::exactlin::from_terms(t, n))
            .collect();
        Subspace::span(n, vectors)
    }

    /// Unit vectors at the non-pivot coordinates of `L^2`. They span a
    /// complement of `L^2` and generate `L` whenever `L` is nilpotent.
    pub fn generator_lift(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        self.derived()
            .non_pivots()
            .into_iter()
            .map(|j| unit_vec(n, j))
            .collect()
    }

    /// Whether `I` is an ideal; on failure reports a basis row of `I` and a
    /// basis vector of `L` whose bracket leaves `I`.
    pub fn check_ideal(&self, ideal: &Subspace) -> Result<(), LieError> {
        if ideal.ambient_dim() != self.dim() {
            return Err(LinAlgError::AmbientMismatch {
                left: self.dim(),
                right: ideal.ambient_dim(),
            }
            .into());
        }
        for (row, v) in ideal.basis_rows().enumerate() {
            for basis in 0..self.dim() {
                if !ideal.contains(&self.bracket_with_basis(v, basis)) {
                    return Err(LieError::NotAnIdeal { row, basis });
                }
            }
        }
        Ok(())
    }

    /// `[[I, L], L]` for a subspace `I`.
    pub fn double_bracket(&self, ideal: &Subspace) -> Subspace {
        let once = self.bracket_with_all(ideal);
        self.bracket_with_all(&once)
    }

    /// `[S, L]` as the span of `[s, e_j]`.
    pub fn bracket_with_all(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let jobs: Vec<(usize, usize)> = (0..s.dim())
            .flat_map(|r| (0..n).map(move |j| (r, j)))
            .collect();
        let rows = s.basis();
        let products = par::map_slice(&jobs, |&(r, j)| self.bracket_with_basis(rows.row(r), j));
        let mut builder = EchelonBuilder::new(n);
        for p in products {
            builder.insert(p);
        }
        builder.finish()
    }
}

fn invert(m: &Matrix) -> Matrix {
    let n = m.rows();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.extend(unit_vec(n, r));
            row
        })
        .collect();
    let (reduced, _) = crate::exactlin::rref_rows(rows, 2 * n);
    Matrix::from_rows(n, reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Abelian algebra `A(n)` with basis `e1..en`.
pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::from_trusted_table(
        format!("A({n})"),
        (1..=n).map(|i| format!("e{i}")).collect(),
        vec![Vec::new(); n * n],
    )
}

/// Heisenberg algebra `H(m)` with basis `x1, y1, ..., xm, ym, z` and
/// `[x_i, y_i] = z`.
pub fn heisenberg(m: usize) -> LieAlgebra {
    let n = 2 * m + 1;
    let mut basis = Vec::with_capacity(n);
    for i in 1..=m {
        basis.push(format!("x{i}"));
        basis.push(format!("y{i}"));
    }
    basis.push("z".to_string());
    let mut table = vec![Vec::new(); n * n];
    for i in 0..m {
        let (x, y) = (2 * i, 2 * i + 1);
        table[x * n + y] = vec![(n - 1, int(1))];
        table[y * n + x] = vec![(n - 1, int(-1))];
    }
    LieAlgebra::from_trusted_table(format!("H({m})"), basis, table)
}

/// Block direct sum with zero cross brackets. Clashing labels from `b`
/// get primes appended.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let mut basis = a.basis.clone();
    for label in &b.basis {
        let mut l = label.clone();
        while basis.contains(&l) {
            l.push('\'');
        }
        basis.push(l);
    }
    let mut table = vec![Vec::new(); n * n];
    for i in 0..na {
        for j in 0..na {
            table[i * n + j] = a.bracket_terms(i, j).to_vec();
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            table[(na + i) * n + na + j] = b
                .bracket_terms(i, j)
                .iter()
                .map(|(k, c)| (k + na, c.clone()))
                .collect();
        }
    }
    LieAlgebra::from_trusted_table(format!("{}+{}", a.name, b.name), basis, table)
}

/// Parses `A(n)`, `H(m)` and `F(d,c)` terms joined by `+`, e.g.
/// `"H(1)+A(1)"`.
pub fn named(expr: &str) -> Result<LieAlgebra, LieError> {
    let bad = |why: &str| LieError::Format(format!("algebra expression {expr:?}: {why}"));
    let mut acc: Option<LieAlgebra> = None;
    for term in expr.split('+') {
        let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, rest) = term.split_at(term.find('(').ok_or_else(|| bad("expected '('"))?);
        let args = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("unbalanced parentheses"))?;
        let args: Vec<usize> = args
            .split(',')
            .map(|a| a.parse().map_err(|_| bad(&format!("bad argument {a:?}"))))
            .collect::<Result<_, _>>()?;
        let part = match (head, args.as_slice()) {
            ("A", [n]) => abelian(*n),
            ("H", [m]) if *m >= 1 => heisenberg(*m),
            ("F", [d, c]) => crate::freelie::free_nilpotent(*d, *c)
                .map_err(|e| bad(&e.to_string()))?
                .to_lie_algebra(),
            _ => return Err(bad(&format!("unknown term {term:?}"))),
        };
        acc = Some(match acc {
            None => part,
            Some(a) => direct_sum(&a, &part),
        });
    }
    acc.ok_or_else(|| bad("empty"))
}

/// Lower and upper central series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    /// `γ_1 = L ⊋ γ_2 ⊋ ...`, ending at 0 or at the stable term.
    pub lower_central: Vec<Subspace>,
    /// `0 ⊊ Z_1 ⊊ Z_2 ⊊ ...` starting with `Z_0 = 0`, ending at `L` or at
    /// the stable term.
    pub upper_central: Vec<Subspace>,
    /// `Some(k)` when `γ_{k+1} = 0 ≠ γ_k`; `None` if not nilpotent.
    pub nilpotency_class: Option<usize>,
}

impl SeriesReport {
    /// `γ_k`, with `γ_k = 0` past the end of a nilpotent series.
    pub fn gamma(&self, k: usize) -> Subspace {
        let k = k.max(1);
        match self.lower_central.get(k - 1) {
            Some(s) => s.clone(),
            None => {
                let last = self.lower_central.last().expect("series is never empty");
                if self.nilpotency_class.is_some() {
                    Subspace::zero(last.ambient_dim())
                } else {
                    last.clone()
                }
            }
        }
    }

    /// `Z_k`, with `Z_k = L` past the end of a nilpotent series.
    pub fn center_k(&self, k: usize) -> Subspace {
        match self.upper_central.get(k) {
            Some(s) => s.clone(),
            None => self
                .upper_central
                .last()
                .expect("series is never empty")
                .clone(),
        }
    }
}

pub fn series(l: &LieAlgebra) -> SeriesReport {
    let n = l.dim();
    let mut lower = vec![Subspace::full(n)];
    loop {
        let current = lower.last().expect("nonempty");
        if current.is_zero() {
            break;
        }
        let next = l.bracket_with_all(current);
        if next == *current {
            break;
        }
        lower.push(next);
    }
    let last = lower.last().expect("nonempty");
    let nilpotency_class = if last.is_zero() {
        Some(lower.len() - 1)
    } else {
        None
    };
    if nilpotency_class.is_some() && lower.len() > 1 {
        lower.pop();
    }
    let gens = if nilpotency_class.is_some() {
        l.generator_lift()
    } else {
        (0..n).map(|j| unit_vec(n, j)).collect()
    };
    let mut upper = vec![Subspace::zero(n)];
    loop {
        let current = upper.last().expect("nonempty");
        if current.is_full() {
            break;
        }
        let next = centralizer_preimage(l, &gens, current);
        if next == *current {
            break;
        }
        upper.push(next);
    }
    SeriesReport {
        lower_central: lower,
        upper_central: upper,
        nilpotency_class,
    }
}

/// Nilpotency class, or the stable lower-central term as evidence.
pub fn require_nilpotent(l: &LieAlgebra) -> Result<(usize, SeriesReport), LieError> {
    let s = series(l);
    match s.nilpotency_class {
        Some(k) => Ok((k, s)),
        None => Err(LieError::NotNilpotent {
            stable_dim: s.lower_central.last().map_or(0, Subspace::dim),
        }),
    }
}

/// `L / I`, using the non-pivot coordinates of `I` as the new basis.
pub fn quotient(l: &LieAlgebra, ideal: &Subspace) -> Result<LieAlgebra, LieError> {
    l.check_ideal(ideal)?;
    let n = l.dim();
    let keep = ideal.non_pivots();
    let m = keep.len();
    let mut position = vec![usize::MAX; n];
    for (new, &old) in keep.iter().enumerate() {
        position[old] = new;
    }
    let table = par::map_range(m * m, |pos| {
        let (a, b) = (keep[pos / m], keep[pos % m]);
        let mut v = crate::exactlin::from_terms(l.bracket_terms(a, b), n);
        ideal.reduce(&mut v);
        keep.iter()
            .filter(|&&old| !v[old].is_zero())
            .map(|&old| (position[old], v[old].clone()))
            .collect::<Terms>()
    });
    let basis = keep.iter().map(|&j| l.basis[j].clone()).collect();
    let name = if ideal.is_zero() {
        l.name.clone()
    } else {
        format!("{}/I", l.name)
    };
    Ok(LieAlgebra::from_trusted_table(name, basis, table))
}

/// For nilpotent `L` with `dim L^2 = 1`, returns `(m, r)` such that
/// `L ≅ H(m) ⊕ A(r)`: `2m` is the rank of the alternating form
/// `(x, y) ↦ coefficient of [x, y]` on the spanning vector of `L^2`.
pub fn recognize_derived_dim_one(l: &LieAlgebra) -> Result<(usize, usize), LieError> {
    let n = l.dim();
    let d = l.derived();
    if d.dim() != 1 {
        return Err(LieError::DerivedDimension(d.dim()));
    }
    if !l.bracket_with_all(&d).is_zero() {
        return Err(require_nilpotent(l).expect_err("L^2 is not central"));
    }
    let p = d.pivots()[0];
    let mut form = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if let Some((_, c)) = l.bracket_terms(i, j).iter().find(|(k, _)| *k == p) {
                form.set(i, j, c.clone());
            }
        }
    }
    let m = rank(&form) / 2;
    Ok((m, n - 2 * m - 1))
}

/// JSON algebra file: only pairs `i < j` with nonzero brackets are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<(usize, String)>,
}

fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl From<&LieAlgebra> for AlgebraFile {
    fn from(l: &LieAlgebra) -> Self {
        let n = l.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let t = l.bracket_terms(i, j);
                if !t.is_empty() {
                    brackets.push(BracketEntry {
                        i,
                        j,
                        value: t.iter().map(|(k, c)| (*k, format_rational(c))).collect(),
                    });
                }
            }
        }
        AlgebraFile {
            name: l.name.clone(),
            dim: n,
            basis: l.basis.clone(),
            brackets,
        }
    }
}

impl TryFrom<AlgebraFile> for LieAlgebra {
    type Error = LieError;

    fn try_from(file: AlgebraFile) -> Result<Self, LieError> {
        let n = file.dim;
        if file.basis.len() != n {
            return Err(LieError::Format(format!(
                "basis: {} labels for dim {n}",
                file.basis.len()
            )));
        }
        let mut table: Vec<Terms> = vec![Vec::new(); n * n];
        let mut seen = vec![false; n * n];
        for (e, entry) in file.brackets.iter().enumerate() {
            let field = format!("brackets[{e}]");
            if entry.i >= n || entry.j >= n {
                return Err(LieError::Format(format!(
                    "{field}: index ({}, {}) out of range for dim {n}",
                    entry.i, entry.j
                )));
            }
            if entry.i >= entry.j {
                return Err(LieError::Format(format!(
                    "{field}: requires i < j, got ({}, {})",
                    entry.i, entry.j
                )));
            }
            let pos = entry.i * n + entry.j;
            if seen[pos] {
                return Err(LieError::Format(format!(
                    "{field}: duplicate pair ({}, {})",
                    entry.i, entry.j
                )));
            }
            seen[pos] = true;
            let mut terms: Terms = Vec::new();
            for (t, (k, text)) in entry.value.iter().enumerate() {
                if *k >= n {
                    return Err(LieError::Format(format!(
                        "{field}.value[{t}]: basis index {k} out of range for dim {n}"
                    )));
                }
                if terms.iter().any(|(seen_k, _)| seen_k == k) {
                    return Err(LieError::Format(format!(
                        "{field}.value[{t}]: repeated basis index {k}"
                    )));
                }
                let c: Rational = text.trim().parse().map_err(|_| {
                    LieError::Format(format!("{field}.value[{t}]: invalid rational {text:?}"))
                })?;
                terms.push((*k, c));
            }
            let terms = normalize(&terms);
            table[entry.j * n + entry.i] = terms.iter().map(|(k, c)| (*k, -c)).collect();
            table[pos] = terms;
        }
        LieAlgebra::validate(file.name, file.basis, table)
    }
}

impl LieAlgebra {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraFile::from(self)).expect("algebra file serializes")
    }

    pub fn from_json(text: &str) -> Result<LieAlgebra, LieError> {
        let file: AlgebraFile =
            serde_json::from_str(text).map_err(|e| LieError::Format(e.to_string()))?;
        LieAlgebra::try_from(file)
    }
}

/// Whether `v` is central.
pub fn is_central(l: &LieAlgebra, v: &[Rational]) -> bool {
    (0..l.dim()).all(|j| crate::exactlin::is_zero_vec(&l.bracket_with_basis(v, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::free_nilpotent;

    fn entry(n: usize, i: usize, j: usize, k: usize, c: i64) -> (usize, Terms) {
        (i * n + j, vec![(k, int(c))])
    }

    fn table_from(n: usize, entries: &[(usize, Terms)]) -> Vec<Terms> {
        let mut t = vec![Vec::new(); n * n];
        for (pos, terms) in entries {
            t[*pos] = terms.clone();
        }
        t
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn validate_accepts_abelian() {
        assert!(LieAlgebra::validate("A", labels(3), vec![Vec::new(); 9]).is_ok());
    }

    #[test]
    fn validate_reports_antisymmetry() {
        let t = table_from(3, &[entry(3, 0, 1, 2, 1), entry(3, 1, 0, 2, 1)]);
        assert_eq!(
            LieAlgebra::validate("bad", labels(3), t),
            Err(LieError::Antisymmetry { i: 0, j: 1 })
        );
        let t = table_from(2, &[entry(2, 0, 0, 1, 1)]);
        assert_eq!(
            LieAlgebra::validate("bad", labels(2), t),
            Err(LieError::Antisymmetry { i: 0, j: 0 })
        );
    }

    #[test]
    fn validate_reports_jacobi() {
        // [e1,e2]=e2, [e1,e3]=e3, [e2,e3]=e1 breaks Jacobi
        let t = table_from(
            3,
            &[
                entry(3, 0, 1, 1, 1),
                entry(3, 1, 0, 1, -1),
                entry(3, 0, 2, 2, 1),
                entry(3, 2, 0, 2, -1),
                entry(3, 1, 2, 0, 1),
                entry(3, 2, 1, 0, -1),
            ],
        );
        assert!(matches!(
            LieAlgebra::validate("bad", labels(3), t),
            Err(LieError::Jacobi { .. })
        ));
    }

    #[test]
    fn heisenberg_two_is_valid() {
        let h = heisenberg(2);
        let again = LieAlgebra::validate("H(2)", h.basis_labels().to_vec(), h.table.clone());
        assert_eq!(again.unwrap().dim(), 5);
    }

    #[test]
    fn heisenberg_derived_equals_center() {
        for m in 1..=4 {
            let h = heisenberg(m);
            let s = series(&h);
            assert_eq!(s.nilpotency_class, Some(2));
            assert_eq!(s.gamma(2).dim(), 1);
            assert_eq!(s.gamma(2), s.center_k(1));
            assert!(s.gamma(3).is_zero());
        }
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&abelian(2), &abelian(3));
        assert_eq!(s.dim(), 5);
        assert!(s.is_abelian());
        let t = direct_sum(&heisenberg(1), &abelian(1));
        assert_eq!(t.dim(), 4);
        assert_eq!(t.derived().dim(), 1);
        let hh = direct_sum(&heisenberg(1), &heisenberg(1));
        assert_eq!(hh.basis_labels()[3], "x1'");
        assert_eq!(hh.derived().dim(), 2);
    }

    #[test]
    fn named_expressions() {
        assert_eq!(named("A(3)").unwrap(), abelian(3));
        assert_eq!(
            named("H(1) + A(1)").unwrap(),
            direct_sum(&heisenberg(1), &abelian(1))
        );
        assert_eq!(named("F(2,3)").unwrap().dim(), 5);
        assert_eq!(named("H(1)+A(1)").unwrap().name(), "H(1)+A(1)");
        for bad in ["", "B(2)", "H(0)", "A(x)", "A(1", "F(2)", "A(1)+"] {
            assert!(matches!(named(bad), Err(LieError::Format(_))), "{bad}");
        }
    }

    #[test]
    fn abelian_series() {
        let s = series(&abelian(4));
        assert_eq!(s.nilpotency_class, Some(1));
        assert!(s.center_k(1).is_full());
        assert_eq!(s.lower_central.len(), 1);
    }

    #[test]
    fn free_nilpotent_series() {
        let f = free_nilpotent(2, 4).unwrap().to_lie_algebra();
        let s = series(&f);
        assert_eq!(s.nilpotency_class, Some(4));
        assert_eq!(s.gamma(3).dim(), 5);
        assert_eq!(s.center_k(1).dim(), 3);
    }

    #[test]
    fn non_nilpotent_series() {
        // [e1, e2] = e2
        let t = table_from(2, &[entry(2, 0, 1, 1, 1), entry(2, 1, 0, 1, -1)]);
        let l = LieAlgebra::validate("aff", labels(2), t).unwrap();
        let s = series(&l);
        assert_eq!(s.nilpotency_class, None);
        assert_eq!(s.gamma(5).dim(), 1);
        assert!(s.center_k(1).is_zero());
        assert!(matches!(
            require_nilpotent(&l),
            Err(LieError::NotNilpotent { stable_dim: 1 })
        ));
        assert!(matches!(
            recognize_derived_dim_one(&l),
            Err(LieError::NotNilpotent { .. })
        ));
    }

    #[test]
    fn quotients() {
        let h = heisenberg(1);
        let q = quotient(&h, &h.derived()).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_abelian());

        let same = quotient(&h, &Subspace::zero(3)).unwrap();
        assert_eq!(same, h);

        let f = free_nilpotent(2, 4).unwrap();
        let q = quotient(&f.to_lie_algebra(), &f.gamma(3)).unwrap();
        assert_eq!(recognize_derived_dim_one(&q).unwrap(), (1, 0));

        let not_ideal = Subspace::coordinate(3, [0]);
        assert_eq!(
            quotient(&h, &not_ideal),
            Err(LieError::NotAnIdeal { row: 0, basis: 1 })
        );
    }

    #[test]
    fn recognition() {
        assert_eq!(recognize_derived_dim_one(&heisenberg(2)).unwrap(), (2, 0));
        let l = direct_sum(&heisenberg(1), &abelian(3));
        assert_eq!(recognize_derived_dim_one(&l).unwrap(), (1, 3));
        // [e1,e2] = [e3,e4] = e5, listed in a scrambled basis order
        // (e5, e3, e1, e4, e2)
        let n = 5;
        let t = table_from(
            n,
            &[
                entry(n, 2, 4, 0, 1),
                entry(n, 4, 2, 0, -1),
                entry(n, 1, 3, 0, 1),
                entry(n, 3, 1, 0, -1),
            ],
        );
        let l = LieAlgebra::validate("scrambled", labels(n), t).unwrap();
        assert_eq!(recognize_derived_dim_one(&l).unwrap(), (2, 0));
        assert_eq!(
            recognize_derived_dim_one(&abelian(3)),
            Err(LieError::DerivedDimension(0))
        );
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let l = direct_sum(&heisenberg(2), &abelian(1));
        let back = LieAlgebra::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);

        let bad_order = r#"{"name":"x","dim":3,"basis":["a","b","c"],"brackets":[{"i":1,"j":0,"value":[[2,"1/1"]]}]}"#;
        let err = LieAlgebra::from_json(bad_order).unwrap_err().to_string();
        assert!(err.contains("brackets[0]"), "{err}");

        let out_of_range = r#"{"name":"x","dim":3,"basis":["a","b","c"],"brackets":[{"i":0,"j":1,"value":[[3,"1/1"]]}]}"#;
        let err = LieAlgebra::from_json(out_of_range).unwrap_err().to_string();
        assert!(err.contains("brackets[0].value[0]"), "{err}");

        let bad_rational = r#"{"name":"x","dim":3,"basis":["a","b","c"],"brackets":[{"i":0,"j":1,"value":[[2,"1/0"]]}]}"#;
        assert!(LieAlgebra::from_json(bad_rational).is_err());

        let fraction = r#"{"name":"x","dim":3,"basis":["a","b","c"],"brackets":[{"i":0,"j":1,"value":[[2,"-3/6"]]}]}"#;
        let l = LieAlgebra::from_json(fraction).unwrap();
        assert_eq!(l.bracket_terms(0, 1), &[(2, crate::exactlin::frac(-1, 2))]);
        assert!(l.to_json().contains("\"-1/2\""));
    }

    #[test]
    fn change_of_basis_keeps_invariants() {
        let h = heisenberg(1);
        let change = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 2], &[0, 0, 3]]);
        let g = h.change_basis(&change).unwrap();
        assert_eq!(recognize_derived_dim_one(&g).unwrap(), (1, 0));
        let checked = LieAlgebra::validate("g", g.basis_labels().to_vec(), g.table.clone());
        assert!(checked.is_ok());
    }
}

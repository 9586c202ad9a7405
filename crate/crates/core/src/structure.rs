//! Operations shared by every algebra given by a structure-constant table.

use num_traits::Zero;

use crate::exactlin::{axpy_terms, kernel_of_rows, zero_vec, EchelonBuilder, Rational, Subspace};
use crate::par;

/// A finite-dimensional algebra with a fixed basis and a bilinear product
/// stored as sparse structure constants.
pub trait StructureConstants: Sync {
    fn dim(&self) -> usize;

    /// `[e_i, e_j]` as sparse terms.
    fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, Rational)];

    /// `[u, e_j]`
    fn bracket_with_basis(&self, u: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (i, a) in u.iter().enumerate() {
            if !a.is_zero() {
                axpy_terms(&mut out, a, self.bracket_terms(i, j));
            }
        }
        out
    }

    /// `[u, v]`
    fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        let vs: Vec<usize> = (0..n).filter(|&j| !v[j].is_zero()).collect();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &j in &vs {
                let t = self.bracket_terms(i, j);
                if !t.is_empty() {
                    axpy_terms(&mut out, &(a * &v[j]), t);
                }
            }
        }
        out
    }
}

/// Smallest subspace containing `[s, g]` for every `s` in `seed` and every
/// `g` in `gens`, and closed under `ad g`. When `gens` generates the
/// algebra this is the span `[S, L]`.
pub fn bracket_closure<A: StructureConstants + ?Sized>(
    alg: &A,
    seed: &Subspace,
    gens: &[Vec<Rational>],
) -> Subspace {
    let n = alg.dim();
    let mut builder = EchelonBuilder::new(n);
    let mut frontier: Vec<Vec<Rational>> = seed.basis().to_rows();
    while !frontier.is_empty() {
        let jobs: Vec<(usize, usize)> = (0..frontier.len())
            .flat_map(|f| (0..gens.len()).map(move |g| (f, g)))
            .collect();
        let products = par::map_slice(&jobs, |&(f, g)| alg.bracket(&frontier[f], &gens[g]));
        frontier = products
            .into_iter()
            .filter_map(|p| builder.insert(p))
            .collect();
    }
    builder.finish()
}

/// `{x : [x, g] ∈ target for every g in gens}`. With `target` an ideal
/// and `gens` a generating set, this is the preimage of the center of
/// `L / target`.
pub fn centralizer_preimage<A: StructureConstants + ?Sized>(
    alg: &A,
    gens: &[Vec<Rational>],
    target: &Subspace,
) -> Subspace {
    let n = alg.dim();
    let free = target.non_pivots();
    // columns[a] = stacked coordinates of [e_a, g] mod target, for all g
    let columns: Vec<Vec<Rational>> = par::map_range(n, |a| {
        let mut col = Vec::with_capacity(gens.len() * free.len());
        for g in gens {
            let mut e = zero_vec(n);
            e[a] = Rational::from_integer(1.into());
            let mut w = alg.bracket(&e, g);
            target.reduce(&mut w);
            col.extend(free.iter().map(|&k| w[k].clone()));
        }
        col
    });
    let height = gens.len() * free.len();
    let rows: Vec<Vec<Rational>> = (0..height)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .filter(|row: &Vec<Rational>| row.iter().any(|x| !x.is_zero()))
        .collect();
    kernel_of_rows(rows, n)
}

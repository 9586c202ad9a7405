//! c-nilpotent multipliers, epicenters and capability of nilpotent Lie
//! algebras, computed from a truncated free presentation.
//!
//! For `L` of class `k` presented as `F/R`, everything happens inside the
//! free nilpotent algebra `F̄ = F/γ_{k+c+1}(F)`. Since `γ_{k+1}(F) ⊆ R`,
//! the ideal `γ_{k+c+1}(F)` lies in `[R,F]^{c+1}`, so neither
//! `M^(c)(L) = (R ∩ γ_{c+1}F) / [R,F]^{c+1}` nor `F/[R,F]^{c+1}` changes
//! under the truncation.

use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{kernel_of_rows, zero_vec, LinAlgError, Matrix, Rational, Subspace};
use crate::fdlie::{require_nilpotent, LieAlgebra, LieError};
use crate::freelie::{
    free_nilpotent_with_cap, FreeLieError, FreeNilpotentAlgebra, HallWord, DEFAULT_DIM_CAP,
};
use crate::par;
use crate::structure::{bracket_closure, centralizer_preimage, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplierError {
    #[error("multiplier weight must be at least 1")]
    ZeroWeight,
    #[error("weight c = {0} needs the explicit opt-in for c >= 3")]
    HigherWeightNotEnabled(usize),
    #[error("the zero algebra has no free presentation with generators")]
    NoGenerators,
    #[error("generator lift rejected: {0}")]
    BadLift(String),
    #[error("invalid formula parameters: {0}")]
    InvalidFormula(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    FreeLie(#[from] FreeLieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplierOptions {
    /// Accept weights `c >= 3`.
    pub allow_higher_weight: bool,
    /// Largest ambient free nilpotent algebra to build.
    pub dim_cap: usize,
}

impl Default for MultiplierOptions {
    fn default() -> Self {
        MultiplierOptions {
            allow_higher_weight: false,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }
}

fn check_weight(c: usize, opts: &MultiplierOptions) -> Result<(), MultiplierError> {
    match c {
        0 => Err(MultiplierError::ZeroWeight),
        1 | 2 => Ok(()),
        _ if opts.allow_higher_weight => Ok(()),
        _ => Err(MultiplierError::HigherWeightNotEnabled(c)),
    }
}

/// A free presentation `F̄ → L` truncated at class `k + c`.
#[derive(Clone, Debug)]
pub struct Presentation {
    ambient: FreeNilpotentAlgebra,
    onto_map: Matrix,
    relations: Subspace,
    low_relations: Subspace,
    weight: usize,
    algebra_class: usize,
}

impl Presentation {
    pub fn ambient(&self) -> &FreeNilpotentAlgebra {
        &self.ambient
    }

    /// `dim L × dim F̄`; column `w` is the image of Hall word `w`.
    pub fn onto_map(&self) -> &Matrix {
        &self.onto_map
    }

    /// `R̄`, the kernel of the onto map.
    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// `R̄` restricted to words of length at most `k`. Together with
    /// `γ_{k+1}(F̄)` it spans `R̄`.
    pub fn low_relations(&self) -> &Subspace {
        &self.low_relations
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Nilpotency class `k` of the presented algebra.
    pub fn algebra_class(&self) -> usize {
        self.algebra_class
    }

    /// `R̄ ∩ γ_j(F̄)`, read off as the kernel of the onto map on the
    /// coordinate subspace of words of length at least `j`.
    pub fn relations_in_gamma(&self, j: usize) -> Subspace {
        let n = self.ambient.dim();
        let start = if j <= 1 {
            0
        } else {
            self.ambient.weight_offsets()[(j - 1).min(self.ambient.class())]
        };
        kernel_on_columns(&self.onto_map, start, n)
    }

    /// `[R̄, F̄]^{depth+1}`, the `depth`-fold bracket of `R̄` with `F̄`.
    pub fn relation_brackets(&self, depth: usize) -> Subspace {
        if depth == 0 {
            return self.relations.clone();
        }
        // [R̄,F̄,..,F̄] = [R̄_low,F̄,..,F̄] + γ_{k+1+depth}(F̄), and the last
        // term vanishes once depth reaches the truncation weight.
        let seed = subideal_bracket(&self.low_relations, &self.ambient, depth);
        let tail = self.ambient.gamma(self.algebra_class + 1 + depth);
        if tail.is_zero() {
            seed
        } else {
            seed.sum(&tail).expect("same ambient")
        }
    }

    /// Images of arbitrary ambient vectors in `L`.
    pub fn push_forward(&self, s: &Subspace) -> Subspace {
        s.image_under(&self.onto_map)
            .expect("onto map matches the ambient")
    }
}

/// Kernel of `m` restricted to the columns `start..end`, embedded back.
fn kernel_on_columns(m: &Matrix, start: usize, end: usize) -> Subspace {
    let width = end - start;
    let rows: Vec<Vec<Rational>> = m.row_iter().map(|r| r[start..end].to_vec()).collect();
    let k = kernel_of_rows(rows, width);
    let total = m.cols();
    let embedded = k
        .basis_rows()
        .map(|r| {
            let mut v = zero_vec(total);
            v[start..end].clone_from_slice(r);
            v
        })
        .collect();
    Subspace::span(total, embedded)
}

/// Presentation using the default generator lift.
pub fn present(l: &LieAlgebra, c: usize) -> Result<Presentation, MultiplierError> {
    present_with_options(l, c, &MultiplierOptions::default())
}

pub fn present_with_options(
    l: &LieAlgebra,
    c: usize,
    opts: &MultiplierOptions,
) -> Result<Presentation, MultiplierError> {
    present_with_lift(l, c, &l.generator_lift(), opts)
}

/// Presentation sending generator `i` of the free algebra to `lift[i]`.
/// The lift must project onto a basis of `L/L^2`.
pub fn present_with_lift(
    l: &LieAlgebra,
    c: usize,
    lift: &[Vec<Rational>],
    opts: &MultiplierOptions,
) -> Result<Presentation, MultiplierError> {
    check_weight(c, opts)?;
    let (k, _) = require_nilpotent(l)?;
    let n = l.dim();
    if n == 0 {
        return Err(MultiplierError::NoGenerators);
    }
    let derived = l.derived();
    let d = n - derived.dim();
    if lift.len() != d || lift.iter().any(|g| g.len() != n) {
        return Err(MultiplierError::BadLift(format!(
            "expected {d} vectors of length {n}"
        )));
    }
    let reduced: Vec<Vec<Rational>> = lift
        .iter()
        .map(|g| {
            let mut v = g.clone();
            derived.reduce(&mut v);
            v
        })
        .collect();
    if Subspace::span(n, reduced).dim() != d {
        return Err(MultiplierError::BadLift(
            "vectors are dependent modulo L^2".into(),
        ));
    }
    let ambient = free_nilpotent_with_cap(d, k + c, opts.dim_cap)?;
    let basis = ambient.basis();
    let total = basis.len();
    let mut images: Vec<Vec<Rational>> = Vec::with_capacity(total);
    for (w, word) in basis.words().iter().enumerate() {
        let image = match (word, basis.factors(w)) {
            (HallWord::Generator(g), _) => lift[*g].clone(),
            (_, Some((a, b))) => l.bracket(&images[a], &images[b]),
            (_, None) => unreachable!("brackets have factors"),
        };
        images.push(image);
    }
    let rows = (0..n)
        .map(|r| images.iter().map(|img| img[r].clone()).collect())
        .collect();
    let onto_map = Matrix::from_rows(total, rows);
    let relations = kernel_on_columns(&onto_map, 0, total);
    if total - relations.dim() != n {
        return Err(MultiplierError::BadLift(
            "onto map is not surjective".into(),
        ));
    }
    let low_end = ambient.weight_offsets()[k.min(ambient.class())];
    let low = kernel_on_columns(&onto_map, 0, low_end);
    Ok(Presentation {
        ambient,
        onto_map,
        relations,
        low_relations: low,
        weight: c,
        algebra_class: k,
    })
}

/// `[S, F, ..., F]` with `depth` bracketings against the whole ambient,
/// each taken as a span closure. Depth 0 returns `S`.
pub fn subideal_bracket(s: &Subspace, ambient: &FreeNilpotentAlgebra, depth: usize) -> Subspace {
    let gens = ambient.generator_vectors();
    let mut current = s.clone();
    for _ in 0..depth {
        if current.is_zero() {
            break;
        }
        current = bracket_closure(ambient, &current, &gens);
    }
    current
}

/// `M^(c)(L)` with a canonical basis of Hall-word representatives.
#[derive(Clone, Debug)]
pub struct MultiplierReport {
    pub weight: usize,
    pub dimension: usize,
    /// Ambient indices of the representatives.
    pub basis_indices: Vec<usize>,
    pub basis_words: Vec<String>,
    pub presentation: Presentation,
}

pub fn nilpotent_multiplier(l: &LieAlgebra, c: usize) -> Result<MultiplierReport, MultiplierError> {
    nilpotent_multiplier_with_options(l, c, &MultiplierOptions::default())
}

pub fn nilpotent_multiplier_with_options(
    l: &LieAlgebra,
    c: usize,
    opts: &MultiplierOptions,
) -> Result<MultiplierReport, MultiplierError> {
    let p = present_with_options(l, c, opts)?;
    multiplier_of_presentation(p)
}

/// Computes `M^(c)` from an already built presentation.
pub fn multiplier_of_presentation(p: Presentation) -> Result<MultiplierReport, MultiplierError> {
    let c = p.weight;
    let top = p.relations_in_gamma(c + 1);
    let brackets = p.relation_brackets(c);
    let dimension = top.quotient_dim(&brackets)?;
    let n = p.ambient.dim();
    let reduced = par::map_range(top.dim(), |r| {
        let mut v = top.basis().row(r).to_vec();
        brackets.reduce(&mut v);
        v
    });
    let complement = Subspace::span(n, reduced);
    debug_assert_eq!(complement.dim(), dimension);
    let basis_indices = complement.pivots().to_vec();
    let basis_words = basis_indices
        .iter()
        .map(|&i| p.ambient.basis().render(i))
        .collect();
    Ok(MultiplierReport {
        weight: c,
        dimension,
        basis_indices,
        basis_words,
        presentation: p,
    })
}

/// `Z*_c(L) = π(Z_c(F/[R,F]^{c+1}))` as a subspace of `L`.
pub fn z_star(l: &LieAlgebra, c: usize) -> Result<Subspace, MultiplierError> {
    let p = present(l, c)?;
    Ok(z_star_of_presentation(&p))
}

pub fn z_star_of_presentation(p: &Presentation) -> Subspace {
    let gens = p.ambient.generator_vectors();
    let mut level = p.relation_brackets(p.weight);
    for _ in 0..p.weight {
        level = centralizer_preimage(&p.ambient, &gens, &level);
    }
    p.push_forward(&level)
}

pub fn is_capable(l: &LieAlgebra) -> Result<bool, MultiplierError> {
    Ok(z_star(l, 1)?.is_zero())
}

pub fn is_two_capable(l: &LieAlgebra) -> Result<bool, MultiplierError> {
    Ok(z_star(l, 2)?.is_zero())
}

/// Closed-form dimensions of multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Formula {
    /// `dim M^(2)(A(n)) = n(n-1)(n+1)/3`
    AbelianM2 { n: u64 },
    /// `dim M^(2)(H(m))`: 5 for `m = 1`, otherwise `(8m^3 - 2m)/3`
    HeisenbergM2 { m: u64 },
    /// `dim M(H(m))`: 2 for `m = 1`, otherwise `2m^2 - m - 1`
    SchurHeisenberg { m: u64 },
    /// `dim M^(2)(H(m) ⊕ A(n-2m-1)) = n(n-1)(n-2)/3`, plus 3 when `m = 1`
    DerivedDimOneM2 { n: u64, m: u64 },
    /// `dim M^(2)(A ⊕ B) = M_A + M_B + a^2 b + b^2 a` with `a = dim A/A^2`,
    /// `b = dim B/B^2`
    DirectSumM2 {
        m2_a: u64,
        m2_b: u64,
        a: u64,
        b: u64,
    },
}

impl Formula {
    pub fn evaluate(&self) -> Result<u64, MultiplierError> {
        let bad = |msg: &str| Err(MultiplierError::InvalidFormula(format!("{self:?}: {msg}")));
        Ok(match *self {
            Formula::AbelianM2 { n } => n * n.saturating_sub(1) * (n + 1) / 3,
            Formula::HeisenbergM2 { m } => match m {
                0 => return bad("m must be at least 1"),
                1 => 5,
                _ => (8 * m * m * m - 2 * m) / 3,
            },
            Formula::SchurHeisenberg { m } => match m {
                0 => return bad("m must be at least 1"),
                1 => 2,
                _ => 2 * m * m - m - 1,
            },
            Formula::DerivedDimOneM2 { n, m } => {
                if m == 0 || n < 2 * m + 1 {
                    return bad("needs m >= 1 and n >= 2m + 1");
                }
                let base = n * (n - 1) * (n - 2) / 3;
                if m == 1 {
                    base + 3
                } else {
                    base
                }
            }
            Formula::DirectSumM2 { m2_a, m2_b, a, b } => m2_a + m2_b + a * a * b + b * b * a,
        })
    }
}

/// `n(n-1)(n+1)/3`, the general upper bound for `dim M^(2)(L) + dim L^3`.
pub fn general_bound(n: u64) -> u64 {
    n * n.saturating_sub(1) * (n + 1) / 3
}

/// `(n-m)((n+2m-2)(n-m-1) + 3(m-1))/3 + 3` for `m = dim L^2 >= 1`.
pub fn refined_bound(n: u64, m: u64) -> Option<u64> {
    if m == 0 || m >= n {
        return None;
    }
    let (n, m) = (n as i128, m as i128);
    let value = (n - m) * ((n + 2 * m - 2) * (n - m - 1) + 3 * (m - 1)) / 3 + 3;
    u64::try_from(value).ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub derived_dim: u64,
    pub m2: u64,
    pub l3: u64,
    /// `dim M^(2)(L) + dim L^3`
    pub value: u64,
    pub general_bound: u64,
    pub general_slack: i64,
    /// Only defined for non-abelian `L`.
    pub refined_bound: Option<u64>,
    pub refined_slack: Option<i64>,
    pub abelian: bool,
    /// `value` meets the general bound.
    pub saturated: bool,
}

impl BoundReport {
    /// Saturation of the general bound happens exactly for abelian `L`.
    pub fn saturation_matches_abelian(&self) -> bool {
        self.saturated == self.abelian
    }
}

pub fn bound_report(l: &LieAlgebra) -> Result<BoundReport, MultiplierError> {
    let m2 = nilpotent_multiplier(l, 2)?.dimension as u64;
    bound_report_with(l, m2)
}

/// Bound report given an already computed `dim M^(2)(L)`.
pub fn bound_report_with(l: &LieAlgebra, m2: u64) -> Result<BoundReport, MultiplierError> {
    let (_, s) = require_nilpotent(l)?;
    let n = l.dim() as u64;
    let derived_dim = s.gamma(2).dim() as u64;
    let l3 = s.gamma(3).dim() as u64;
    let value = m2 + l3;
    let general = general_bound(n);
    let refined = refined_bound(n, derived_dim);
    Ok(BoundReport {
        n,
        derived_dim,
        m2,
        l3,
        value,
        general_bound: general,
        general_slack: general as i64 - value as i64,
        refined_bound: refined,
        refined_slack: refined.map(|r| r as i64 - m2 as i64),
        abelian: derived_dim == 0,
        saturated: value == general,
    })
}

/// Machine-readable summary of one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub algebra: String,
    pub c: usize,
    pub dim_multiplier: usize,
    pub basis_words: Vec<String>,
    pub bounds: ReportBounds,
    pub capable: bool,
    pub two_capable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportBounds {
    pub eq1: u64,
    /// Falls back to the general bound for abelian algebras.
    pub refined: u64,
    pub value: u64,
}

pub fn algebra_report(
    l: &LieAlgebra,
    c: usize,
    opts: &MultiplierOptions,
) -> Result<AlgebraReport, MultiplierError> {
    let m = nilpotent_multiplier_with_options(l, c, opts)?;
    let m2 = if c == 2 {
        m.dimension
    } else {
        nilpotent_multiplier(l, 2)?.dimension
    };
    let b = bound_report_with(l, m2 as u64)?;
    Ok(AlgebraReport {
        algebra: l.name().to_string(),
        c,
        dim_multiplier: m.dimension,
        basis_words: m.basis_words,
        bounds: ReportBounds {
            eq1: b.general_bound,
            refined: b.refined_bound.unwrap_or(b.general_bound),
            value: b.value,
        },
        capable: is_capable(l)?,
        two_capable: is_two_capable(l)?,
    })
}

/// `dim (I ∩ L^3) / [[I, L], L]` for an ideal `I`.
pub fn ideal_correction_dim(l: &LieAlgebra, ideal: &Subspace) -> Result<usize, MultiplierError> {
    let (_, s) = require_nilpotent(l)?;
    let meet = ideal.intersect(&s.gamma(3))?;
    let inner = l.double_bracket(ideal);
    Ok(meet.quotient_dim(&inner)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdlie::{abelian, direct_sum, heisenberg};
    use crate::freelie::{free_nilpotent, witt};

    #[test]
    fn presentation_sizes() {
        let p = present(&heisenberg(1), 2).unwrap();
        assert_eq!(p.ambient().dim(), 8);
        assert_eq!(p.relations().dim(), 5);
        assert_eq!(*p.relations(), p.ambient().gamma(3));

        let p = present(&abelian(1), 1).unwrap();
        assert_eq!(p.ambient().dim(), 1);
        assert!(p.relations().is_zero());

        let p = present(&abelian(2), 2).unwrap();
        assert_eq!(p.ambient().dim(), 5);
        assert_eq!(p.relations().dim() as u128, witt(2, 2) + witt(2, 3));
    }

    #[test]
    fn subideal_bracket_examples() {
        let f = free_nilpotent(2, 4).unwrap();
        assert!(subideal_bracket(&f.gamma(3), &f, 2).is_zero());
        assert!(subideal_bracket(&Subspace::zero(8), &f, 3).is_zero());
        let g = free_nilpotent(2, 2).unwrap();
        assert_eq!(subideal_bracket(&Subspace::full(3), &g, 1), g.gamma(2));
        assert_eq!(subideal_bracket(&f.gamma(2), &f, 0), f.gamma(2));
    }

    #[test]
    fn low_relations_give_the_same_brackets() {
        for l in [
            heisenberg(2),
            direct_sum(&heisenberg(1), &abelian(1)),
            abelian(3),
        ] {
            for c in 1..=2 {
                let p = present(&l, c).unwrap();
                let full = subideal_bracket(p.relations(), p.ambient(), c);
                assert_eq!(p.relation_brackets(c), full, "{} c={c}", l.name());
            }
        }
    }

    #[test]
    fn relations_in_gamma_is_an_intersection() {
        let l = direct_sum(&heisenberg(1), &abelian(1));
        let p = present(&l, 2).unwrap();
        for j in 1..=5 {
            let direct = p.relations().intersect(&p.ambient().gamma(j)).unwrap();
            assert_eq!(p.relations_in_gamma(j), direct);
        }
    }

    #[test]
    fn small_multipliers() {
        let h1 = nilpotent_multiplier(&heisenberg(1), 2).unwrap();
        assert_eq!(h1.dimension, 5);
        assert_eq!(
            h1.basis_words,
            ["[y,x,x]", "[y,x,y]", "[y,x,x,x]", "[y,x,x,y]", "[y,x,y,y]"]
        );
        assert_eq!(nilpotent_multiplier(&abelian(2), 2).unwrap().dimension, 2);
        assert_eq!(
            nilpotent_multiplier(&heisenberg(1), 1).unwrap().dimension,
            2
        );
        assert_eq!(
            nilpotent_multiplier(&heisenberg(2), 1).unwrap().dimension,
            5
        );
        assert_eq!(nilpotent_multiplier(&abelian(1), 1).unwrap().dimension, 0);
    }

    #[test]
    fn weight_gating() {
        assert_eq!(
            nilpotent_multiplier(&abelian(2), 0).unwrap_err(),
            MultiplierError::ZeroWeight
        );
        assert_eq!(
            nilpotent_multiplier(&abelian(2), 3).unwrap_err(),
            MultiplierError::HigherWeightNotEnabled(3)
        );
        let opts = MultiplierOptions {
            allow_higher_weight: true,
            ..Default::default()
        };
        // M^(3)(A(n)) = γ_4/γ_5 of the free algebra
        let m3 = nilpotent_multiplier_with_options(&abelian(2), 3, &opts).unwrap();
        assert_eq!(m3.dimension as u128, witt(2, 4));
    }

    #[test]
    fn zero_algebra_is_rejected() {
        assert_eq!(
            nilpotent_multiplier(&abelian(0), 1).unwrap_err(),
            MultiplierError::NoGenerators
        );
    }

    #[test]
    fn bad_lifts() {
        let h = heisenberg(1);
        let z = crate::exactlin::unit_vec(3, 2);
        let x = crate::exactlin::unit_vec(3, 0);
        let opts = MultiplierOptions::default();
        assert!(matches!(
            present_with_lift(&h, 1, &[x.clone(), z], &opts),
            Err(MultiplierError::BadLift(_))
        ));
        assert!(matches!(
            present_with_lift(&h, 1, &[x], &opts),
            Err(MultiplierError::BadLift(_))
        ));
    }

    #[test]
    fn epicenters() {
        let h2 = heisenberg(2);
        assert_eq!(z_star(&h2, 1).unwrap(), h2.derived());
        assert!(z_star(&heisenberg(1), 1).unwrap().is_zero());
        assert!(z_star(&abelian(1), 1).unwrap().is_full());
        assert!(z_star(&heisenberg(1), 2).unwrap().is_zero());
        assert!(is_capable(&heisenberg(1)).unwrap());
        assert!(is_two_capable(&heisenberg(1)).unwrap());
        assert!(!is_capable(&abelian(1)).unwrap());
        assert!(is_capable(&abelian(2)).unwrap());
    }

    #[test]
    fn formulas() {
        assert_eq!(Formula::AbelianM2 { n: 3 }.evaluate().unwrap(), 8);
        assert_eq!(Formula::AbelianM2 { n: 0 }.evaluate().unwrap(), 0);
        assert_eq!(Formula::HeisenbergM2 { m: 3 }.evaluate().unwrap(), 70);
        assert_eq!(Formula::HeisenbergM2 { m: 1 }.evaluate().unwrap(), 5);
        assert_eq!(Formula::SchurHeisenberg { m: 2 }.evaluate().unwrap(), 5);
        assert_eq!(
            Formula::DirectSumM2 {
                m2_a: 5,
                m2_b: 0,
                a: 2,
                b: 1
            }
            .evaluate()
            .unwrap(),
            11
        );
        assert_eq!(
            Formula::DerivedDimOneM2 { n: 4, m: 1 }.evaluate().unwrap(),
            11
        );
        assert!(Formula::HeisenbergM2 { m: 0 }.evaluate().is_err());
        assert!(Formula::DerivedDimOneM2 { n: 4, m: 2 }.evaluate().is_err());
    }

    #[test]
    fn bounds() {
        let b = bound_report(&abelian(4)).unwrap();
        assert_eq!((b.value, b.general_slack, b.refined_bound), (20, 0, None));
        assert!(b.saturation_matches_abelian());

        let b = bound_report(&heisenberg(1)).unwrap();
        assert_eq!((b.m2, b.l3, b.general_bound), (5, 0, 8));
        assert_eq!((b.refined_bound, b.refined_slack), (Some(5), Some(0)));

        let b = bound_report(&heisenberg(2)).unwrap();
        assert_eq!((b.value, b.general_bound), (20, 40));
        assert!(b.saturation_matches_abelian());
    }

    #[test]
    fn refined_bound_is_integral() {
        for n in 2..40u64 {
            for m in 1..n {
                let (ni, mi) = (n as i128, m as i128);
                let num = (ni - mi) * ((ni + 2 * mi - 2) * (ni - mi - 1) + 3 * (mi - 1));
                assert_eq!(num % 3, 0, "n={n} m={m}");
                assert!(refined_bound(n, m).is_some());
            }
        }
    }
}

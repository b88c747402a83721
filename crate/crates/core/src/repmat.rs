//! Explicit unitary irreducible matrices and intertwiners.
//!
//! This is the only floating-point layer in the crate. Matrices are built
//! by projecting the regular representation with central idempotents and
//! splitting multiplicity space with a random self-adjoint commutant
//! element (seeded, reproducible); every result is cross-checked against
//! the exact character values.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

use crate::character::{character_table, Character, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{same_group, FiniteGroup, Subgroup};

/// Numerical tolerances for the matrix layer.
#[derive(Debug, Clone, Copy)]
pub struct ToleranceConfig {
    /// homomorphism / unitarity / trace residual bound
    pub matrix_tol: f64,
    /// maximal distance allowed when snapping scalars to roots of unity
    pub snap_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            matrix_tol: 1e-8,
            snap_tol: 1e-6,
        }
    }
}

impl ToleranceConfig {
    /// The snap tolerance must stay below half the gap between adjacent
    /// roots of unity of order `modulus`.
    pub fn check_snap_gap(&self, modulus: usize) -> Result<()> {
        let gap = 2.0 * (std::f64::consts::PI / modulus as f64).sin();
        if self.snap_tol >= gap / 2.0 {
            return Err(Error::Invalid(format!(
                "snap tolerance {} too coarse for roots of order {modulus}",
                self.snap_tol
            )));
        }
        Ok(())
    }
}

/// A unitary representation given by one complex matrix per group element,
/// cross-linked with its exact character.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: Arc<FiniteGroup>,
    dimension: usize,
    matrices: Vec<DMatrix<Complex64>>,
    character: Character,
}

impl UnitaryRep {
    pub(crate) fn from_parts(
        group: Arc<FiniteGroup>,
        dimension: usize,
        matrices: Vec<DMatrix<Complex64>>,
        character: Character,
    ) -> Self {
        UnitaryRep {
            group,
            dimension,
            matrices,
            character,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn matrix(&self, g: usize) -> &DMatrix<Complex64> {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[DMatrix<Complex64>] {
        &self.matrices
    }

    pub fn character(&self) -> &Character {
        &self.character
    }

    /// Largest homomorphism, unitarity and trace-vs-character residual.
    pub fn residual(&self) -> f64 {
        let g = &self.group;
        let mut worst: f64 = 0.0;
        for a in g.elements() {
            let ua = &self.matrices[a];
            let unitary =
                (ua * ua.adjoint() - DMatrix::identity(self.dimension, self.dimension)).norm();
            worst = worst.max(unitary);
            let trace: Complex64 = ua.trace();
            let exact = self.character.value_on(a).to_complex();
            worst = worst.max((trace - exact).norm());
            for b in g.elements() {
                let prod = ua * &self.matrices[b];
                worst = worst.max((&prod - &self.matrices[g.mul(a, b)]).norm());
            }
        }
        worst
    }
}

fn random_complex_matrix(n: usize, m: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, m, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn hermitian_sqrt_pair(s: &DMatrix<Complex64>) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(s.clone());
    let d = eig
        .eigenvalues
        .map(|x| Complex64::new(x.max(0.0).sqrt(), 0.0));
    let d_inv = eig
        .eigenvalues
        .map(|x| Complex64::new(1.0 / x.max(1e-300).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    let sqrt = v * DMatrix::from_diagonal(&d) * v.adjoint();
    let inv_sqrt = v * DMatrix::from_diagonal(&d_inv) * v.adjoint();
    (sqrt, inv_sqrt)
}

/// Orthonormal basis of the column span of `m` with known rank.
fn column_span_basis(m: &DMatrix<Complex64>, rank: usize) -> DMatrix<Complex64> {
    let mut cols: Vec<nalgebra::DVector<Complex64>> =
        (0..m.ncols()).map(|j| m.column(j).into_owned()).collect();
    let mut basis: Vec<nalgebra::DVector<Complex64>> = Vec::with_capacity(rank);
    while basis.len() < rank {
        let (best, norm) = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("projector has too small a rank");
        assert!(norm > 1e-9, "projector rank deficient");
        let mut v = cols.swap_remove(best);
        v /= Complex64::new(v.norm(), 0.0);
        for c in cols.iter_mut() {
            let overlap = v.dotc(c);
            *c -= &v * overlap;
        }
        basis.push(v);
    }
    DMatrix::from_columns(&basis)
}

/// One explicit unitary representation per irreducible character of `g`,
/// in table order, reproducible from the seed.
pub fn irreducible_reps(
    g: &Arc<FiniteGroup>,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Vec<UnitaryRep>> {
    let table = character_table(g);
    irreducible_reps_for_table(&table, seed, tol)
}

pub fn irreducible_reps_for_table(
    table: &CharacterTable,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Vec<UnitaryRep>> {
    let g = table.group().clone();
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // regular representation by left translation
    let regular: Vec<DMatrix<Complex64>> = g
        .elements()
        .map(|a| {
            DMatrix::from_fn(n, n, |r, c| {
                if g.mul(a, c) == r {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        })
        .collect();

    let mut out = Vec::with_capacity(table.len());
    for chi in table.irreducibles() {
        let d = chi.degree_int() as usize;
        if d == 1 {
            let matrices: Vec<DMatrix<Complex64>> = g
                .elements()
                .map(|a| DMatrix::from_element(1, 1, chi.value_on(a).to_complex()))
                .collect();
            out.push(UnitaryRep {
                group: g.clone(),
                dimension: 1,
                matrices,
                character: chi.clone(),
            });
            continue;
        }
        // central idempotent e_χ = (d/|G|) Σ_g conj(χ(g)) R(g)
        let mut proj = DMatrix::zeros(n, n);
        for a in g.elements() {
            let coeff = chi.value_on(a).to_complex().conj() * (d as f64 / n as f64);
            proj += &regular[a] * coeff;
        }
        let iso_dim = d * d;
        let basis = column_span_basis(&proj, iso_dim);
        let restricted: Vec<DMatrix<Complex64>> = regular
            .iter()
            .map(|r| basis.adjoint() * r * &basis)
            .collect();

        // split one irreducible copy out of the multiplicity space
        let mut copy = None;
        for _attempt in 0..8 {
            let x = random_complex_matrix(iso_dim, iso_dim, &mut rng);
            let herm = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
            let mut avg = DMatrix::zeros(iso_dim, iso_dim);
            for r in &restricted {
                avg += r * &herm * r.adjoint();
            }
            avg /= Complex64::new(n as f64, 0.0);
            let avg = (&avg + avg.adjoint()) * Complex64::new(0.5, 0.0);
            let eig = SymmetricEigen::new(avg);
            let mut order: Vec<usize> = (0..iso_dim).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
            // look for a cluster of exactly d eigenvalues
            let scale = eig.eigenvalues.amax().max(1.0);
            let mut i = 0;
            while i < iso_dim {
                let mut j = i + 1;
                while j < iso_dim
                    && (eig.eigenvalues[order[j]] - eig.eigenvalues[order[j - 1]]).abs()
                        < 1e-7 * scale
                {
                    j += 1;
                }
                if j - i == d {
                    let cols: Vec<_> = (i..j)
                        .map(|t| eig.eigenvectors.column(order[t]).into_owned())
                        .collect();
                    copy = Some(DMatrix::from_columns(&cols));
                    break;
                }
                i = j;
            }
            if copy.is_some() {
                break;
            }
        }
        let copy = copy.ok_or(Error::SplittingFailure)?;

        let mut matrices: Vec<DMatrix<Complex64>> = restricted
            .iter()
            .map(|r| copy.adjoint() * r * &copy)
            .collect();

        // polish: average the inner product over the group and re-unitarize
        let mut s = DMatrix::zeros(d, d);
        for m in &matrices {
            s += m.adjoint() * m;
        }
        s /= Complex64::new(n as f64, 0.0);
        let (sqrt, inv_sqrt) = hermitian_sqrt_pair(&s);
        for m in matrices.iter_mut() {
            *m = &sqrt * &*m * &inv_sqrt;
        }

        let rep = UnitaryRep {
            group: g.clone(),
            dimension: d,
            matrices,
            character: chi.clone(),
        };
        let res = rep.residual();
        if res > tol.matrix_tol {
            return Err(Error::Inconsistency(format!(
                "representation residual {res:.3e} exceeds tolerance"
            )));
        }
        out.push(rep);
    }
    Ok(out)
}

/// The conjugate representation `a ↦ ρ(x⁻¹ a x)` of a representation of the
/// subgroup `sub`, for `x` in the parent group normalizing `sub`.
pub fn conjugate_rep(rep: &UnitaryRep, sub: &Subgroup, x: usize) -> Result<UnitaryRep> {
    if !same_group(rep.group(), sub.as_group()) {
        return Err(Error::GroupMismatch);
    }
    let parent = sub.parent();
    let map: Vec<usize> = sub
        .elements()
        .iter()
        .map(|&a| {
            let conj = parent.mul(parent.mul(parent.inv(x), a), x);
            sub.position_of(conj)
                .ok_or_else(|| Error::Invalid(format!("{x} does not normalize the subgroup")))
        })
        .collect::<Result<_>>()?;
    let matrices: Vec<DMatrix<Complex64>> = map.iter().map(|&a| rep.matrices[a].clone()).collect();
    let classes = rep.character.classes().clone();
    let values = classes
        .reps
        .iter()
        .map(|&r| rep.character.value_on(map[r]).clone())
        .collect();
    let character = Character::new(rep.group.clone(), classes, values);
    Ok(UnitaryRep {
        group: rep.group.clone(),
        dimension: rep.dimension,
        matrices,
        character,
    })
}

/// A unitary intertwiner `τ(g) U = U σ(g)`, with the phase fixed by making
/// the largest-modulus entry positive real.
#[derive(Debug, Clone)]
pub struct Intertwiner {
    pub matrix: DMatrix<Complex64>,
}

/// Computes a unitary intertwiner from `sigma` to `tau`, or `None` when the
/// representations are inequivalent (decided exactly on characters).
pub fn intertwiner(
    sigma: &UnitaryRep,
    tau: &UnitaryRep,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<Option<Intertwiner>> {
    if !same_group(sigma.group(), tau.group()) {
        return Err(Error::GroupMismatch);
    }
    if sigma.character() != tau.character() {
        return Ok(None);
    }
    let g = sigma.group().clone();
    let d = sigma.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..8 {
        let x = random_complex_matrix(d, d, &mut rng);
        let mut u = DMatrix::zeros(d, d);
        for a in g.elements() {
            u += tau.matrix(a) * &x * sigma.matrix(a).adjoint();
        }
        u /= Complex64::new(g.order() as f64, 0.0);
        // Schur: u^H u = c·I for equivalent irreducibles
        let gram = u.adjoint() * &u;
        let c = gram.trace().re / d as f64;
        if c < 1e-10 {
            continue; // degenerate random pick
        }
        let u = u / Complex64::new(c.sqrt(), 0.0);
        let u = fix_phase(u);
        let mut worst: f64 = (u.adjoint() * &u - DMatrix::identity(d, d)).norm();
        for a in g.elements() {
            worst = worst.max((tau.matrix(a) * &u - &u * sigma.matrix(a)).norm());
        }
        if worst > tol.matrix_tol {
            return Err(Error::Inconsistency(format!(
                "intertwiner residual {worst:.3e} exceeds tolerance; raise precision"
            )));
        }
        return Ok(Some(Intertwiner { matrix: u }));
    }
    Err(Error::SplittingFailure)
}

/// Multiplies by a unit scalar so the largest-modulus entry is positive
/// real. Part of the public contract: cocycle values depend on it, their
/// cohomology class does not.
fn fix_phase(mut u: DMatrix<Complex64>) -> DMatrix<Complex64> {
    let mut best = Complex64::new(0.0, 0.0);
    for r in 0..u.nrows() {
        for c in 0..u.ncols() {
            if u[(r, c)].norm() > best.norm() + 1e-12 {
                best = u[(r, c)];
            }
        }
    }
    let phase = best / Complex64::new(best.norm(), 0.0);
    u /= phase;
    u
}

/// Orthonormal basis of `Hom_A(ρ, π|_A)`: maps `f : V_ρ → V_π` with
/// `f ∘ ρ(a) = π(a) ∘ f` for all `a` in the subgroup.
pub fn hom_space_a(
    rho: &UnitaryRep,
    pi: &UnitaryRep,
    sub: &Subgroup,
) -> Result<Vec<DMatrix<Complex64>>> {
    if !same_group(rho.group(), sub.as_group()) || !same_group(pi.group(), sub.parent()) {
        return Err(Error::GroupMismatch);
    }
    let dr = rho.dimension();
    let dp = pi.dimension();
    let order = sub.order() as f64;
    let mut basis: Vec<DMatrix<Complex64>> = Vec::new();
    for i in 0..dp {
        for j in 0..dr {
            let mut f = DMatrix::zeros(dp, dr);
            f[(i, j)] = Complex64::new(1.0, 0.0);
            let mut avg = DMatrix::zeros(dp, dr);
            for (pos, &a) in sub.elements().iter().enumerate() {
                avg += pi.matrix(a).adjoint() * &f * rho.matrix(pos);
            }
            avg /= Complex64::new(order, 0.0);
            // Gram-Schmidt against what we have (Frobenius inner product)
            for b in &basis {
                let overlap = b.dotc(&avg);
                avg -= b * overlap;
            }
            if avg.norm() > 1e-7 {
                let n = avg.norm();
                basis.push(avg / Complex64::new(n, 0.0));
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::character::{inner_product, restrict};
    use crate::cyclotomic::Rational;
    use crate::group::center;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn trivial_group_rep() {
        let g = catalog::trivial();
        let reps = irreducible_reps(&g, 0, &tol()).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].dimension(), 1);
        assert!((reps[0].matrix(0)[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn d8_reps_residuals_and_commutant() {
        let g = catalog::dihedral(8);
        let reps = irreducible_reps(&g, 0, &tol()).unwrap();
        let dims: Vec<usize> = reps.iter().map(|r| r.dimension()).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        for r in &reps {
            assert!(r.residual() < 1e-8);
        }
        // Schur check: the commutant of the 2-dim rep is one-dimensional.
        let two = &reps[4];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = Vec::new();
        for _ in 0..4 {
            let x = random_complex_matrix(2, 2, &mut rng);
            let mut avg = DMatrix::zeros(2, 2);
            for a in g.elements() {
                avg += two.matrix(a) * &x * two.matrix(a).adjoint();
            }
            avg /= Complex64::new(8.0, 0.0);
            let lead = avg[(0, 0)];
            assert!((avg - DMatrix::identity(2, 2) * lead).norm() < 1e-8);
            found.push(lead);
        }
        assert!(found.iter().any(|c| c.norm() > 1e-6));
    }

    #[test]
    fn q8_two_dim_sends_minus_one_to_minus_identity() {
        let g = catalog::quaternion8();
        let reps = irreducible_reps(&g, 0, &tol()).unwrap();
        let two = &reps[4];
        assert_eq!(two.dimension(), 2);
        let m = two.matrix(1); // -1
        assert!((m + DMatrix::identity(2, 2)).norm() < 1e-8);
    }

    #[test]
    fn conjugation_by_subgroup_element_is_inner() {
        let d8 = catalog::dihedral(8);
        let z4 = catalog::rotation_subgroup(&d8).unwrap();
        let reps = irreducible_reps(z4.as_group(), 0, &tol()).unwrap();
        for rep in &reps {
            // x inside A: conjugate rep is the rep itself (A abelian)
            let c = conjugate_rep(rep, &z4, 2).unwrap();
            assert_eq!(c.character(), rep.character());
        }
        // x = a reflection maps the faithful character rho to rho^3
        let faithful = reps
            .iter()
            .find(|r| {
                let gen = (0..4)
                    .find(|&x| z4.as_group().element_order(x) == 4)
                    .unwrap();
                *r.character().value_on(gen) == crate::cyclotomic::Cyclotomic::root_of_unity(4, 1)
            })
            .unwrap();
        let conj = conjugate_rep(faithful, &z4, 1).unwrap();
        assert_ne!(conj.character(), faithful.character());
        let gen = (0..4)
            .find(|&x| z4.as_group().element_order(x) == 4)
            .unwrap();
        assert_eq!(
            *conj.character().value_on(gen),
            crate::cyclotomic::Cyclotomic::root_of_unity(4, 3)
        );
    }

    #[test]
    fn intertwiner_of_identical_rep_is_identity() {
        let g = catalog::quaternion8();
        let reps = irreducible_reps(&g, 0, &tol()).unwrap();
        let two = &reps[4];
        let u = intertwiner(two, two, 1, &tol()).unwrap().unwrap();
        assert!((u.matrix.clone() - DMatrix::identity(2, 2)).norm() < 1e-7);
    }

    #[test]
    fn inequivalent_characters_have_no_intertwiner() {
        let z4 = catalog::cyclic(4);
        let reps = irreducible_reps(&z4, 0, &tol()).unwrap();
        assert!(intertwiner(&reps[0], &reps[1], 0, &tol())
            .unwrap()
            .is_none());
    }

    #[test]
    fn every_q8_element_stabilizes_the_two_dim_rep() {
        // G_[ρ] = Q8 for the 2-dim rep viewed over the whole group
        let q8 = catalog::quaternion8();
        let whole = Subgroup::full(q8.clone());
        let reps = irreducible_reps(whole.as_group(), 0, &tol()).unwrap();
        let two = &reps[4];
        for x in q8.elements() {
            let conj = conjugate_rep(two, &whole, x).unwrap();
            let u = intertwiner(&conj, two, 3, &tol()).unwrap();
            assert!(u.is_some());
        }
    }

    #[test]
    fn hom_space_dimensions_match_exact_inner_products() {
        let q8 = catalog::quaternion8();
        let z = center(&q8);
        let reps_a = irreducible_reps(z.as_group(), 0, &tol()).unwrap();
        let reps_g = irreducible_reps(&q8, 0, &tol()).unwrap();
        let sign = reps_a
            .iter()
            .find(|r| {
                let pos = z.position_of(1).unwrap();
                *r.character().value_on(pos) == crate::cyclotomic::Cyclotomic::from_integer(1, -1)
            })
            .unwrap();
        let two = &reps_g[4];
        let basis = hom_space_a(sign, two, &z).unwrap();
        assert_eq!(basis.len(), 2);
        let exact =
            inner_product(&restrict(two.character(), &z).unwrap(), sign.character()).unwrap();
        assert_eq!(exact, Rational::from_integer(2));

        // trivial ⊗ trivial over the trivial subgroup of the trivial group
        let t = catalog::trivial();
        let triv = Subgroup::full(t.clone());
        let r = irreducible_reps(triv.as_group(), 0, &tol()).unwrap();
        let rg = irreducible_reps(&t, 0, &tol()).unwrap();
        assert_eq!(hom_space_a(&r[0], &rg[0], &triv).unwrap().len(), 1);

        // zero multiplicity gives an empty basis
        let one = reps_a
            .iter()
            .find(|r| {
                let pos = z.position_of(1).unwrap();
                *r.character().value_on(pos) == crate::cyclotomic::Cyclotomic::one(1)
            })
            .unwrap();
        assert!(hom_space_a(one, two, &z).unwrap().is_empty());
    }

    #[test]
    fn hom_space_dims_agree_with_characters_across_catalog() {
        let d8 = catalog::dihedral(8);
        let z4 = catalog::rotation_subgroup(&d8).unwrap();
        let reps_a = irreducible_reps(z4.as_group(), 0, &tol()).unwrap();
        let reps_g = irreducible_reps(&d8, 0, &tol()).unwrap();
        for rho in &reps_a {
            for pi in &reps_g {
                let basis = hom_space_a(rho, pi, &z4).unwrap();
                let exact = inner_product(&restrict(pi.character(), &z4).unwrap(), rho.character())
                    .unwrap();
                assert_eq!(Rational::from_integer(basis.len() as i64), exact);
            }
        }
    }
}

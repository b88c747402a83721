//! The Mackey machine: G-action on Irr(A), stabilizers, obstruction
//! cocycles, twisted ranks and the decomposition of R(G) over orbits.
//!
//! The obstruction is certified two independent ways and the module
//! requires them to agree: a snapped intertwiner cocycle counted through
//! α-regular classes, and exact Clifford counting through character
//! tables.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::character::{character_table, inner_product, restrict, Character, CharacterTable};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{
    left_transversal, quotient_group, same_group, FiniteGroup, GroupHom, Subgroup, Transversal,
};
use crate::repmat::{intertwiner, irreducible_reps_for_table, ToleranceConfig, UnitaryRep};

/// One orbit of the G-action on Irr(A).
#[derive(Debug)]
pub struct IrrOrbit {
    /// index of the representative character in the table of A (the first
    /// orbit member in table order)
    pub rep_index: usize,
    /// all member indices, ascending
    pub members: Vec<usize>,
    /// G_\[ρ\] as a subgroup of G
    pub stabilizer: Subgroup,
    /// A embedded inside the abstract stabilizer group
    pub a_in_stabilizer: Subgroup,
    /// Q_\[ρ\] = G_\[ρ\]/A with projection from the abstract stabilizer
    pub quotient: Arc<FiniteGroup>,
    pub projection: GroupHom,
}

/// The G-action on Irr(A) for a normal subgroup A.
#[derive(Debug)]
pub struct IrrAction {
    group: Arc<FiniteGroup>,
    a: Subgroup,
    table_a: CharacterTable,
    /// action[g][i] = index of g·χ_i in the table of A
    action: Vec<Vec<usize>>,
    orbits: Vec<IrrOrbit>,
}

impl IrrAction {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn a(&self) -> &Subgroup {
        &self.a
    }

    pub fn table_a(&self) -> &CharacterTable {
        &self.table_a
    }

    pub fn orbits(&self) -> &[IrrOrbit] {
        &self.orbits
    }

    pub fn act(&self, g: usize, chi_index: usize) -> usize {
        self.action[g][chi_index]
    }

    /// Orbit containing the given character index.
    pub fn orbit_of(&self, chi_index: usize) -> usize {
        self.orbits
            .iter()
            .position(|o| o.members.contains(&chi_index))
            .expect("orbits partition Irr(A)")
    }
}

/// Computes orbits, stabilizers and quotients of the conjugation action of
/// `g` on the irreducible characters of the normal subgroup `a`.
pub fn irr_action(g: &Arc<FiniteGroup>, a: &Subgroup) -> Result<IrrAction> {
    if !same_group(g, a.parent()) {
        return Err(Error::GroupMismatch);
    }
    if !a.is_normal() {
        return Err(Error::NotNormal);
    }
    let table_a = character_table(a.as_group());
    let k = table_a.len();

    // permuted character: (x·χ)(r) = χ(x⁻¹ r x)
    let permuted_index = |x: usize, chi: &Character| -> usize {
        let values: Vec<Cyclotomic> = table_a
            .classes()
            .reps
            .iter()
            .map(|&r| {
                let elt = a.elements()[r];
                let conj = g.mul(g.mul(g.inv(x), elt), x);
                let pos = a.position_of(conj).expect("A is normal");
                chi.value_on(pos).clone()
            })
            .collect();
        table_a
            .irreducibles()
            .iter()
            .position(|c| c.values() == values)
            .expect("conjugate of an irreducible is irreducible")
    };
    let action: Vec<Vec<usize>> = g
        .elements()
        .map(|x| {
            (0..k)
                .map(|i| permuted_index(x, &table_a.irreducibles()[i]))
                .collect()
        })
        .collect();

    let mut assigned = vec![false; k];
    let mut orbits = Vec::new();
    for i in 0..k {
        if assigned[i] {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|x| action[x][i]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assigned[m] = true;
        }
        let stab_elements: Vec<usize> = g.elements().filter(|&x| action[x][i] == i).collect();
        let stabilizer = Subgroup::new(g.clone(), stab_elements)?;
        if a.elements().iter().any(|&x| !stabilizer.contains(x)) {
            return Err(Error::Inconsistency("A escapes a stabilizer".into()));
        }
        if members.len() * stabilizer.order() != g.order() {
            return Err(Error::Inconsistency(
                "orbit-stabilizer identity failed".into(),
            ));
        }
        let positions: Vec<usize> = a
            .elements()
            .iter()
            .map(|&x| stabilizer.position_of(x).expect("A inside stabilizer"))
            .collect();
        let a_in_stabilizer = Subgroup::new(stabilizer.as_group().clone(), positions)?;
        let (quotient, projection) = quotient_group(stabilizer.as_group(), &a_in_stabilizer)?;
        orbits.push(IrrOrbit {
            rep_index: i,
            members,
            stabilizer,
            a_in_stabilizer,
            quotient,
            projection,
        });
    }
    Ok(IrrAction {
        group: g.clone(),
        a: a.clone(),
        table_a,
        action,
        orbits,
    })
}

/// True iff some irreducible character of the stabilizer restricts to `rho`
/// on A exactly.
pub fn extends_test(action: &IrrAction, orbit: &IrrOrbit) -> bool {
    let rho = &action.table_a.irreducibles()[orbit.rep_index];
    let stab_table = character_table(orbit.stabilizer.as_group());
    stab_table.irreducibles().iter().any(|chi| {
        let res = restrict(chi, &orbit.a_in_stabilizer).expect("restriction to A");
        res.values() == rho.values()
    })
}

/// The obstruction 2-cocycle on Q_\[ρ\], values stored as exponents of
/// ζ_{2|G|} and normalized so ω(e,·) = ω(·,e) = 1.
#[derive(Debug, Clone)]
pub struct ObstructionCocycle {
    quotient: Arc<FiniteGroup>,
    modulus: usize,
    exponents: Vec<usize>,
    max_snap_residual: f64,
}

impl ObstructionCocycle {
    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// ω(q1, q2) as an exponent k of ζ_modulus^k.
    pub fn exponent(&self, q1: usize, q2: usize) -> usize {
        self.exponents[q1 * self.quotient.order() + q2]
    }

    pub fn value(&self, q1: usize, q2: usize) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.modulus, self.exponent(q1, q2))
    }

    pub fn max_snap_residual(&self) -> f64 {
        self.max_snap_residual
    }

    pub fn is_identically_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }

    fn verify(&self) -> Result<()> {
        let q = &self.quotient;
        let n = q.order();
        let e = q.identity();
        for x in 0..n {
            if self.exponent(e, x) != 0 || self.exponent(x, e) != 0 {
                return Err(Error::Inconsistency("cocycle not normalized".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = (self.exponent(a, b) + self.exponent(q.mul(a, b), c)) % self.modulus;
                    let rhs = (self.exponent(a, q.mul(b, c)) + self.exponent(b, c)) % self.modulus;
                    if lhs != rhs {
                        return Err(Error::Inconsistency(format!(
                            "cocycle identity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Computes the obstruction cocycle of the orbit representative `ρ`.
///
/// For one-dimensional `ρ` the cocycle is exact: ω(q1,q2) = ρ(a(q1,q2))⁻¹
/// with `a` the factor set of the fixed transversal. In higher dimension
/// the intertwiners U_{s(q)} are computed numerically, the scalar with
/// U_{s(q1)}U_{s(q2)} = λ · U_{s(q1q2)} ρ(a) is snapped to the nearest root
/// of unity of order dividing 2|G|, and the cocycle identity is then
/// verified exactly on the snapped exponents.
pub fn obstruction_cocycle(
    action: &IrrAction,
    orbit: &IrrOrbit,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<ObstructionCocycle> {
    let modulus = 2 * action.group.order();
    tol.check_snap_gap(modulus)?;
    let stab = orbit.stabilizer.as_group().clone();
    let a_in = &orbit.a_in_stabilizer;
    let quotient = orbit.quotient.clone();
    let proj = &orbit.projection;
    let t: Transversal = left_transversal(a_in);
    let nq = quotient.order();
    // lift: quotient element -> transversal representative
    let mut lift = vec![usize::MAX; nq];
    for &r in t.reps() {
        lift[proj.apply(r)] = r;
    }
    assert!(lift.iter().all(|&r| r != usize::MAX));
    assert_eq!(lift[quotient.identity()], stab.identity());

    let rho = &action.table_a.irreducibles()[orbit.rep_index];
    let dim = rho.degree_int();
    let mut exponents = vec![0usize; nq * nq];
    let mut max_residual = 0.0f64;

    if dim == 1 {
        // exact path: scalars come straight out of the character
        for q1 in 0..nq {
            for q2 in 0..nq {
                let s1 = lift[q1];
                let s2 = lift[q2];
                let s12 = lift[quotient.mul(q1, q2)];
                let corr = stab.mul(stab.inv(s12), stab.mul(s1, s2));
                let pos = a_in
                    .position_of(corr)
                    .ok_or_else(|| Error::Inconsistency("factor set escapes A".into()))?;
                let value = rho.value_on(pos);
                let order = value.order();
                debug_assert!(modulus.is_multiple_of(order));
                let j = value.as_root_exponent().ok_or_else(|| {
                    Error::Inconsistency("character value is not a root of unity".into())
                })?;
                // ω = ρ(a)⁻¹, rebased to an exponent of ζ_{2|G|}
                let k = (modulus - j * (modulus / order) % modulus) % modulus;
                exponents[q1 * nq + q2] = k;
            }
        }
    } else {
        // numeric path through intertwiner matrices
        let reps_a = irreducible_reps_for_table(&action.table_a, seed, tol)?;
        let rho_rep = &reps_a[orbit.rep_index];
        // positions of A inside G for conjugation; conjugate within the
        // parent group through the stabilizer's elements
        let g = &action.group;
        let a_sub = &action.a;
        let mut u_of: Vec<nalgebra::DMatrix<num_complex::Complex64>> = Vec::new();
        for (qi, &s_abs) in lift.iter().enumerate() {
            let s_in_g = orbit.stabilizer.elements()[s_abs];
            if qi == quotient.identity() {
                u_of.push(nalgebra::DMatrix::identity(dim as usize, dim as usize));
                continue;
            }
            // (s·ρ)(x) = ρ(s⁻¹ x s) computed inside G
            let conj_map: Vec<usize> = a_sub
                .elements()
                .iter()
                .map(|&x| {
                    let y = g.mul(g.mul(g.inv(s_in_g), x), s_in_g);
                    a_sub.position_of(y).expect("A normal in G")
                })
                .collect();
            let conj = conjugate_rep_by_map(rho_rep, &conj_map);
            let u = intertwiner(&conj, rho_rep, seed.wrapping_add(qi as u64), tol)?.ok_or_else(
                || Error::Inconsistency("stabilizer element does not fix [ρ]".into()),
            )?;
            // Rescale to determinant 1 (canonical d-th root). The entry
            // phase of an intertwiner is arbitrary, so the raw scalars are
            // only cohomologous to roots of unity; with det U = 1 they
            // satisfy λ^d = det ρ(a)⁻¹ and land on the snapping grid.
            let det = u.matrix.determinant();
            let correction = num_complex::Complex64::from_polar(1.0, -det.arg() / dim as f64);
            u_of.push(u.matrix * correction);
        }
        for q1 in 0..nq {
            for q2 in 0..nq {
                let s1 = lift[q1];
                let s2 = lift[q2];
                let q12 = quotient.mul(q1, q2);
                let s12 = lift[q12];
                let corr = stab.mul(stab.inv(s12), stab.mul(s1, s2));
                let pos = a_in
                    .position_of(corr)
                    .ok_or_else(|| Error::Inconsistency("factor set escapes A".into()))?;
                let m = &u_of[q1] * &u_of[q2];
                let w = &u_of[q12] * rho_rep.matrix(pos);
                let lambda =
                    (w.adjoint() * &m).trace() / num_complex::Complex64::new(dim as f64, 0.0);
                let (k, residual) = snap_to_root(lambda, modulus);
                if residual > tol.snap_tol {
                    return Err(Error::SnapFailure {
                        re: lambda.re,
                        im: lambda.im,
                        modulus,
                        residual,
                    });
                }
                max_residual = max_residual.max(residual);
                exponents[q1 * nq + q2] = k;
            }
        }
    }

    let cocycle = ObstructionCocycle {
        quotient,
        modulus,
        exponents,
        max_snap_residual: max_residual,
    };
    cocycle.verify()?;
    Ok(cocycle)
}

fn conjugate_rep_by_map(rep: &UnitaryRep, map: &[usize]) -> UnitaryRep {
    // same data reshuffle as repmat::conjugate_rep, but with the permutation
    // supplied directly (conjugation happens in the ambient group here)
    let matrices: Vec<_> = map.iter().map(|&a| rep.matrix(a).clone()).collect();
    let classes = rep.character().classes().clone();
    let values = classes
        .reps
        .iter()
        .map(|&r| rep.character().value_on(map[r]).clone())
        .collect();
    let character = Character::new(rep.group().clone(), classes, values);
    UnitaryRep::from_parts(rep.group().clone(), rep.dimension(), matrices, character)
}

fn snap_to_root(lambda: num_complex::Complex64, modulus: usize) -> (usize, f64) {
    let mut best = (0usize, f64::INFINITY);
    for k in 0..modulus {
        let root = num_complex::Complex64::from_polar(
            1.0,
            std::f64::consts::TAU * k as f64 / modulus as f64,
        );
        let d = (lambda - root).norm();
        if d < best.1 {
            best = (k, d);
        }
    }
    best
}

/// Number of α-regular conjugacy classes of `q`: classes whose elements `x`
/// satisfy ω(x,h) = ω(h,x) for every `h` centralizing `x`. Regularity is
/// checked on every class member.
pub fn alpha_regular_count(q: &Arc<FiniteGroup>, omega: &ObstructionCocycle) -> usize {
    assert!(
        same_group(q, omega.quotient()),
        "cocycle lives on a different group"
    );
    let classes = q.conjugacy_classes();
    let mut count = 0;
    for class in &classes {
        let verdicts: Vec<bool> = class
            .iter()
            .map(|&x| {
                q.elements()
                    .filter(|&h| q.mul(x, h) == q.mul(h, x))
                    .all(|h| omega.exponent(x, h) == omega.exponent(h, x))
            })
            .collect();
        assert!(
            verdicts.windows(2).all(|w| w[0] == w[1]),
            "α-regularity must be constant on conjugacy classes"
        );
        if verdicts[0] {
            count += 1;
        }
    }
    count
}

/// An isotypic part together with its twist data: the multiplicity of ρ in
/// each base-orbit fiber, as a Q_\[ρ\]-object tagged with ω_\[ρ\].
#[derive(Debug)]
pub struct TaggedIsotypicPart {
    pub part: crate::bundle::IsotypicPart,
    pub extends: bool,
    pub cocycle: ObstructionCocycle,
}

/// The ρ-isotypic data of a bundle with the obstruction tag attached.
pub fn isotypic_part_tagged(
    e: &crate::bundle::EquivariantBundle,
    action: &IrrAction,
    orbit_index: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<TaggedIsotypicPart> {
    let part = crate::bundle::isotypic_part(e, action, orbit_index)?;
    let orbit = &action.orbits()[orbit_index];
    let extends = extends_test(action, orbit);
    let cocycle = obstruction_cocycle(action, orbit, seed, tol)?;
    Ok(TaggedIsotypicPart {
        part,
        extends,
        cocycle,
    })
}

/// Everything the decomposition theorem asserts for one orbit.
#[derive(Debug)]
pub struct OrbitReport {
    pub rep_index: usize,
    pub members: Vec<usize>,
    pub stabilizer_order: usize,
    pub orbit_size: usize,
    pub quotient_order: usize,
    pub extends: bool,
    pub twisted_rank: usize,
    /// irreducibles of G lying over the orbit: (index into Irr(G), m)
    pub irreducibles_over: Vec<(usize, i64)>,
    pub cocycle: ObstructionCocycle,
}

/// The full decomposition of R(G) along G\Irr(A).
#[derive(Debug)]
pub struct DecompositionReport {
    pub action: IrrAction,
    pub table_g: CharacterTable,
    pub orbits: Vec<OrbitReport>,
}

impl DecompositionReport {
    pub fn total_twisted_rank(&self) -> usize {
        self.orbits.iter().map(|o| o.twisted_rank).sum()
    }
}

/// Runs the Mackey decomposition for `(g, a)` and verifies every identity
/// the theorems assert; any failure is a hard error.
pub fn mackey_decompose(
    g: &Arc<FiniteGroup>,
    a: &Subgroup,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<DecompositionReport> {
    let action = irr_action(g, a)?;
    let table_g = character_table(g);
    let table_a = &action.table_a;

    // assign each irreducible of G to its unique orbit
    let mut over: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
    for (gi, chi) in table_g.irreducibles().iter().enumerate() {
        let res = restrict(chi, a)?;
        let mut hits: Vec<(usize, i64)> = Vec::new();
        for (ai, rho) in table_a.irreducibles().iter().enumerate() {
            let m = inner_product(&res, rho)?;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Inconsistency("restriction multiplicities".into()));
            }
            if !m.is_zero() {
                hits.push((ai, m.to_integer()));
            }
        }
        let orbit_ids: Vec<usize> = {
            let mut ids: Vec<usize> = hits.iter().map(|&(ai, _)| action.orbit_of(ai)).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        if orbit_ids.len() != 1 {
            return Err(Error::Inconsistency(format!(
                "χ_{gi} lies over {} orbits",
                orbit_ids.len()
            )));
        }
        let oid = orbit_ids[0];
        let orbit = &action.orbits()[oid];
        // Clifford: multiplicities agree across the orbit, and exactly the
        // orbit members appear
        let ms: Vec<i64> = hits.iter().map(|&(_, m)| m).collect();
        if !ms.windows(2).all(|w| w[0] == w[1]) {
            return Err(Error::Inconsistency("orbit multiplicities differ".into()));
        }
        let hit_indices: Vec<usize> = hits.iter().map(|&(ai, _)| ai).collect();
        if hit_indices != orbit.members {
            return Err(Error::Inconsistency(
                "restriction support is not a full orbit".into(),
            ));
        }
        let m = ms[0];
        // dimension identity χ(1) = [G:G_ρ] · ρ(1) · m
        let rho_deg = table_a.irreducibles()[orbit.rep_index].degree_int();
        let index = (g.order() / orbit.stabilizer.order()) as i64;
        if chi.degree_int() != index * rho_deg * m {
            return Err(Error::Inconsistency(format!(
                "dimension identity fails for χ_{gi}"
            )));
        }
        over.entry(oid).or_default().push((gi, m));
    }

    let mut orbit_reports = Vec::with_capacity(action.orbits().len());
    for (oid, orbit) in action.orbits().iter().enumerate() {
        let extends = extends_test(&action, orbit);
        let cocycle = obstruction_cocycle(&action, orbit, seed, tol)?;
        let twisted_rank = alpha_regular_count(&orbit.quotient, &cocycle);
        let irreducibles_over = over.remove(&oid).unwrap_or_default();
        // the two certification routes must agree
        if irreducibles_over.len() != twisted_rank {
            return Err(Error::Inconsistency(format!(
                "orbit {oid}: {} irreducibles over ρ but twisted rank {twisted_rank}",
                irreducibles_over.len()
            )));
        }
        // trivial-twist consistency
        if extends && twisted_rank != orbit.quotient.conjugacy_classes().len() {
            return Err(Error::Inconsistency(format!(
                "orbit {oid}: extension exists but twist looks nontrivial"
            )));
        }
        orbit_reports.push(OrbitReport {
            rep_index: orbit.rep_index,
            members: orbit.members.clone(),
            stabilizer_order: orbit.stabilizer.order(),
            orbit_size: orbit.members.len(),
            quotient_order: orbit.quotient.order(),
            extends,
            twisted_rank,
            irreducibles_over,
            cocycle,
        });
    }
    let total: usize = orbit_reports.iter().map(|o| o.twisted_rank).sum();
    if total != table_g.len() {
        return Err(Error::Inconsistency(format!(
            "twisted ranks sum to {total}, expected {}",
            table_g.len()
        )));
    }
    Ok(DecompositionReport {
        action,
        table_g,
        orbits: orbit_reports,
    })
}

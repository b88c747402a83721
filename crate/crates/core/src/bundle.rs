//! Equivariant vector bundles over finite G-sets.
//!
//! A G-vector bundle over a finite G-set is exactly one stabilizer
//! representation per orbit, so the whole layer works with exact
//! characters. Bundles carry an equivariance subgroup H of the ambient
//! group; induction produces the G-bundle ⊕ᵢ (rᵢ⁻¹)*E over the same base.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Signed;

use crate::character::{character_table, Character, ClassData};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{left_transversal, same_group, FiniteGroup, Subgroup, Transversal};
use crate::mackey::IrrAction;

/// A finite G-set with a dense action table.
#[derive(Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    /// action[g * size + x] = g · x
    action: Vec<usize>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, size: usize, action: Vec<usize>) -> Result<Arc<Self>> {
        if action.len() != group.order() * size {
            return Err(Error::Invalid("action table has wrong size".into()));
        }
        let set = GSet {
            group,
            size,
            action,
        };
        let g = &set.group;
        for x in 0..size {
            if set.apply(g.identity(), x) != x {
                return Err(Error::Invalid("identity must act trivially".into()));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for x in 0..size {
                    if set.apply(ab, x) != set.apply(a, set.apply(b, x)) {
                        return Err(Error::Invalid(format!(
                            "not a group action at ({a},{b},{x})"
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(set))
    }

    /// Single point with the trivial action.
    pub fn point(group: Arc<FiniteGroup>) -> Arc<Self> {
        let action = vec![0usize; group.order()];
        GSet::new(group, 1, action).expect("point is a G-set")
    }

    /// Disjoint union of coset spaces G/K, one per listed stabilizer.
    pub fn from_orbit_stabilizers(
        group: Arc<FiniteGroup>,
        stabilizers: &[Subgroup],
    ) -> Result<Arc<Self>> {
        for k in stabilizers {
            if !same_group(k.parent(), &group) {
                return Err(Error::GroupMismatch);
            }
        }
        let transversals: Vec<Transversal> = stabilizers.iter().map(left_transversal).collect();
        let mut offsets = Vec::with_capacity(transversals.len());
        let mut size = 0usize;
        for t in &transversals {
            offsets.push(size);
            size += t.len();
        }
        let mut action = vec![0usize; group.order() * size];
        for g in group.elements() {
            for (t, &off) in transversals.iter().zip(&offsets) {
                for (i, &r) in t.reps().iter().enumerate() {
                    action[g * size + off + i] = off + t.coset_of(group.mul(g, r));
                }
            }
        }
        GSet::new(group, size, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.action[g * self.size + x]
    }

    /// Orbits under a subgroup `h` of the ambient group. Basepoints are the
    /// minimal point of each orbit; `movers[p]` is an element of `h` with
    /// `mover · basepoint = p`.
    pub fn orbits_under(&self, h: &Subgroup) -> Vec<OrbitData> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for b in 0..self.size {
            if seen[b] {
                continue;
            }
            let mut points = Vec::new();
            let mut mover: HashMap<usize, usize> = HashMap::new();
            let mut queue = std::collections::VecDeque::from([b]);
            seen[b] = true;
            mover.insert(b, self.group.identity());
            while let Some(x) = queue.pop_front() {
                points.push(x);
                for &g in h.elements() {
                    let y = self.apply(g, x);
                    if !seen[y] {
                        seen[y] = true;
                        mover.insert(y, self.group.mul(g, mover[&x]));
                        queue.push_back(y);
                    }
                }
            }
            points.sort_unstable();
            let stab_elements: Vec<usize> = h
                .elements()
                .iter()
                .copied()
                .filter(|&g| self.apply(g, b) == b)
                .collect();
            let stabilizer = Subgroup::new(self.group.clone(), stab_elements)
                .expect("point stabilizer is a subgroup");
            out.push(OrbitData {
                basepoint: b,
                points,
                stabilizer,
                mover,
            });
        }
        out
    }
}

/// One orbit of a subgroup action on a G-set.
#[derive(Debug)]
pub struct OrbitData {
    pub basepoint: usize,
    pub points: Vec<usize>,
    /// stabilizer of the basepoint, as a subgroup of the ambient group
    pub stabilizer: Subgroup,
    /// for each point p, an element m of the acting subgroup with
    /// m · basepoint = p
    pub mover: HashMap<usize, usize>,
}

/// An H-equivariant vector bundle over a finite G-set, stored as one
/// stabilizer character per H-orbit.
#[derive(Debug)]
pub struct EquivariantBundle {
    base: Arc<GSet>,
    equivariance: Subgroup,
    orbits: Vec<OrbitData>,
    fibers: Vec<Character>,
}

impl EquivariantBundle {
    /// `fibers[i]` must be a character of `orbits_under(h)[i].stabilizer`.
    pub fn new(base: Arc<GSet>, equivariance: Subgroup, fibers: Vec<Character>) -> Result<Self> {
        if !same_group(equivariance.parent(), base.group()) {
            return Err(Error::GroupMismatch);
        }
        let orbits = base.orbits_under(&equivariance);
        if fibers.len() != orbits.len() {
            return Err(Error::Invalid(format!(
                "expected {} fiber characters, got {}",
                orbits.len(),
                fibers.len()
            )));
        }
        for (orbit, chi) in orbits.iter().zip(&fibers) {
            if !same_group(chi.group(), orbit.stabilizer.as_group()) {
                return Err(Error::Invalid(
                    "fiber character lives on the wrong stabilizer".into(),
                ));
            }
            let deg = chi.degree();
            if !deg.is_integer() || deg.is_negative() {
                return Err(Error::Invalid(
                    "fiber degree must be a nonnegative integer".into(),
                ));
            }
        }
        Ok(EquivariantBundle {
            base,
            equivariance,
            orbits,
            fibers,
        })
    }

    /// A G-bundle over a point: just a character of G.
    pub fn over_point(group: &Arc<FiniteGroup>, chi: Character) -> Result<Self> {
        let base = GSet::point(group.clone());
        let whole = Subgroup::full(group.clone());
        // rebase the character onto the abstract copy of the full subgroup
        let table_classes = ClassData::new(whole.as_group());
        let values = table_classes
            .reps
            .iter()
            .map(|&r| chi.value_on(r).clone())
            .collect();
        let rebased = Character::new(whole.as_group().clone(), table_classes, values);
        EquivariantBundle::new(base, whole, vec![rebased])
    }

    pub fn base(&self) -> &Arc<GSet> {
        &self.base
    }

    pub fn equivariance(&self) -> &Subgroup {
        &self.equivariance
    }

    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    pub fn fibers(&self) -> &[Character] {
        &self.fibers
    }

    /// Fiber character value at an arbitrary point `p` of the base, for an
    /// element `g` of the acting subgroup stabilizing `p` (given as an
    /// ambient-group index).
    pub fn fiber_value_at(&self, p: usize, g: usize) -> Result<Cyclotomic> {
        let (oi, orbit) = self
            .orbits
            .iter()
            .enumerate()
            .find(|(_, o)| o.points.contains(&p))
            .ok_or_else(|| Error::Invalid(format!("point {p} outside the base")))?;
        if self.base.apply(g, p) != p {
            return Err(Error::Invalid(format!(
                "element {g} does not stabilize {p}"
            )));
        }
        let m = orbit.mover[&p];
        let parent = self.base.group();
        let conj = parent.mul(parent.mul(parent.inv(m), g), m);
        let pos = orbit
            .stabilizer
            .position_of(conj)
            .ok_or_else(|| Error::Inconsistency("transport left the stabilizer".into()))?;
        Ok(self.fibers[oi].value_on(pos).clone())
    }

    /// Total degree over one orbit of the base (fiber degree times orbit
    /// length).
    pub fn orbit_total_degree(&self, i: usize) -> i64 {
        self.fibers[i].degree_int() * self.orbits[i].points.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.fibers.iter().all(|f| f.degree_int() == 0)
    }
}

/// The induced G-bundle ⊕ᵢ (rᵢ⁻¹)*E over the same base, for an H-bundle E
/// with H the equivariance subgroup and rᵢ the given transversal of H.
pub fn induce_bundle(
    e: &EquivariantBundle,
    transversal: &Transversal,
) -> Result<EquivariantBundle> {
    let g = e.base().group().clone();
    let h = e.equivariance();
    if transversal.subgroup().elements() != h.elements() {
        return Err(Error::Invalid(
            "transversal does not match the equivariance group".into(),
        ));
    }
    let whole = Subgroup::full(g.clone());
    let g_orbits = e.base().orbits_under(&whole);
    let mut fibers = Vec::with_capacity(g_orbits.len());
    for orbit in &g_orbits {
        let k = &orbit.stabilizer;
        let k_group = k.as_group().clone();
        let classes = ClassData::new(&k_group);
        let values: Vec<Cyclotomic> = classes
            .reps
            .iter()
            .map(|&kr| {
                let k_elt = k.elements()[kr];
                let mut sum = Cyclotomic::zero(1);
                for &r in transversal.reps() {
                    let conj = g.mul(g.mul(g.inv(r), k_elt), r);
                    if h.contains(conj) {
                        let y = e.base().apply(g.inv(r), orbit.basepoint);
                        sum = sum.add(&e.fiber_value_at(y, conj)?);
                    }
                }
                Ok(sum)
            })
            .collect::<Result<_>>()?;
        fibers.push(Character::new(k_group, classes, values));
    }
    EquivariantBundle::new(e.base().clone(), whole, fibers)
}

/// The ρ-isotypic multiplicity data of a G-bundle whose base is A-trivial:
/// per base orbit, dim Hom_A(ρ, fiber), as a Q_\[ρ\]-object tagged with the
/// orbit's obstruction cocycle at the Mackey level.
#[derive(Debug)]
pub struct IsotypicPart {
    /// index of \[ρ\]'s orbit in the ambient `IrrAction`
    pub orbit_index: usize,
    /// dim Hom_A(ρ, fiber) per base orbit
    pub multiplicities: Vec<i64>,
}

/// Checks that A acts trivially on the base (equivalently A sits inside
/// every stabilizer).
pub fn check_a_trivial(e: &EquivariantBundle, a: &Subgroup) -> Result<()> {
    for orbit in e.orbits() {
        for &x in a.elements() {
            if e.base().apply(x, orbit.basepoint) != orbit.basepoint {
                return Err(Error::Invalid(
                    "A does not act trivially on the base".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Multiplicity ⟨Res_A χ_orbit, ρ⟩ per base orbit, for ρ the orbit
/// representative indexed by `action`'s table of A.
pub fn isotypic_part(
    e: &EquivariantBundle,
    action: &IrrAction,
    orbit_index: usize,
) -> Result<IsotypicPart> {
    let a = action.a();
    check_a_trivial(e, a)?;
    if !same_group(e.base().group(), action.group()) {
        return Err(Error::GroupMismatch);
    }
    let rho = &action.table_a().irreducibles()[action.orbits()[orbit_index].rep_index];
    let mut multiplicities = Vec::with_capacity(e.orbits().len());
    for (oi, orbit) in e.orbits().iter().enumerate() {
        let mut sum = Cyclotomic::zero(1);
        for (pos_a, &x) in a.elements().iter().enumerate() {
            let kpos = orbit
                .stabilizer
                .position_of(x)
                .ok_or_else(|| Error::Invalid("A escapes a stabilizer".into()))?;
            sum = sum.add(
                &e.fibers()[oi]
                    .value_on(kpos)
                    .mul(&rho.value_on(pos_a).conj()),
            );
        }
        let m = sum
            .scale(Rational::new(1, a.order() as i64))
            .as_rational()
            .filter(|r| r.is_integer() && !r.is_negative())
            .ok_or_else(|| {
                Error::Inconsistency("multiplicity is not a nonnegative integer".into())
            })?;
        multiplicities.push(m.to_integer());
    }
    Ok(IsotypicPart {
        orbit_index,
        multiplicities,
    })
}

/// Per-orbit outcome of the decomposition check.
#[derive(Debug)]
pub struct VerificationReport {
    /// exact character equality per base orbit
    pub orbit_ok: Vec<bool>,
    /// total fiber degree per base orbit, for display
    pub orbit_degrees: Vec<i64>,
}

/// Verifies Σ_\[ρ\] Ind(ρ ⊗ Hom_A(ρ, E)) = E fiberwise, exactly, for a
/// G-bundle over an A-trivial base. A mismatch is a hard error.
pub fn verify_vector_decomposition(
    e: &EquivariantBundle,
    action: &IrrAction,
) -> Result<VerificationReport> {
    let a = action.a();
    check_a_trivial(e, a)?;
    if !same_group(e.base().group(), action.group()) {
        return Err(Error::GroupMismatch);
    }
    let g = action.group();
    let table_a = action.table_a();
    let mut orbit_ok = Vec::with_capacity(e.orbits().len());
    let mut orbit_degrees = Vec::with_capacity(e.orbits().len());

    for (oi, orbit) in e.orbits().iter().enumerate() {
        let k_sub = &orbit.stabilizer;
        let fiber = &e.fibers()[oi];
        orbit_degrees.push(e.orbit_total_degree(oi));
        let mut ok = true;
        for (kpos, &k_elt) in k_sub.elements().iter().enumerate() {
            // RHS(k) = Σ_[ρ] Σ_{i : rᵢ⁻¹ k rᵢ ∈ G_ρ} (ρ(1)/|A|)
            //          Σ_{a∈A} conj(χ_ρ(a)) χ_{x0}(k · rᵢ a rᵢ⁻¹)
            let mut rhs = Cyclotomic::zero(1);
            for irr_orbit in action.orbits() {
                let rho = &table_a.irreducibles()[irr_orbit.rep_index];
                let rho_deg = rho.degree_int();
                let reps = left_transversal(&irr_orbit.stabilizer);
                for &r in reps.reps() {
                    let h = g.mul(g.mul(g.inv(r), k_elt), r);
                    if !irr_orbit.stabilizer.contains(h) {
                        continue;
                    }
                    let mut inner = Cyclotomic::zero(1);
                    for (pos_a, &x) in a.elements().iter().enumerate() {
                        let moved = g.mul(k_elt, g.mul(g.mul(r, x), g.inv(r)));
                        let kpos_m = k_sub.position_of(moved).ok_or_else(|| {
                            Error::Inconsistency("conjugated A element escapes K".into())
                        })?;
                        inner = inner.add(&rho.value_on(pos_a).conj().mul(fiber.value_on(kpos_m)));
                    }
                    rhs = rhs.add(&inner.scale(Rational::new(rho_deg, a.order() as i64)));
                }
            }
            if rhs != *fiber.value_on(kpos) {
                ok = false;
                break;
            }
        }
        if !ok {
            return Err(Error::Inconsistency(format!(
                "decomposition mismatch on base orbit {oi}"
            )));
        }
        orbit_ok.push(ok);
    }
    Ok(VerificationReport {
        orbit_ok,
        orbit_degrees,
    })
}

/// Random genuine character of `k` with irreducible multiplicities in
/// `0..=max_mult`, for the randomized decomposition roundtrips.
pub fn random_character(
    k: &Arc<FiniteGroup>,
    max_mult: i64,
    rng: &mut impl rand::Rng,
) -> Character {
    let table = character_table(k);
    let mults: Vec<i64> = (0..table.len())
        .map(|_| rng.gen_range(0..=max_mult))
        .collect();
    table.combine(&mults)
}

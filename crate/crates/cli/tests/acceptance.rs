//! Acceptance suite: one test per criterion, exact tolerances pinned.
//!
//! Run with `cargo test -p twistk-cli --test acceptance`; cargo prints one
//! pass/fail line per criterion.

use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use twistk_core::bundle::{verify_vector_decomposition, EquivariantBundle, GSet};
use twistk_core::character::{character_table, induce, inner_product, restrict, CharacterTable};
use twistk_core::cyclotomic::{Cyclotomic, Rational};
use twistk_core::group::{all_subgroups, center, semidirect_product};
use twistk_core::mackey::{extends_test, irr_action, mackey_decompose};
use twistk_core::repmat::ToleranceConfig;
use twistk_core::{catalog, Subgroup};
use twistk_topology::abelian::{kunneth_ktheory, AbelianGroup, KTheory};
use twistk_topology::ahss::{ahss_integral, ahss_mod2};
use twistk_topology::extensions::{resolve_extensions, uct_mod2_check};
use twistk_topology::f2ring::F2Element;
use twistk_topology::spaces;
use twistk_topology::steenrod::sq;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Indices of the trivial, order-2 and faithful characters of Z4's table.
fn classify_z4_characters(table: &CharacterTable) -> (usize, usize, Vec<usize>) {
    let g = table.group();
    let gen = g.elements().find(|&x| g.element_order(x) == 4).unwrap();
    let mut trivial = None;
    let mut order_two = None;
    let mut faithful = Vec::new();
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let v = chi.value_on(gen);
        if *v == Cyclotomic::one(1) {
            trivial = Some(i);
        } else if *v == Cyclotomic::from_integer(1, -1) {
            order_two = Some(i);
        } else {
            faithful.push(i);
        }
    }
    (trivial.unwrap(), order_two.unwrap(), faithful)
}

#[test]
fn criterion_01_d8_z4_mackey_report() {
    let d8 = catalog::dihedral(8);
    let z4 = catalog::rotation_subgroup(&d8).unwrap();
    let report = mackey_decompose(&d8, &z4, 0, &tol()).unwrap();
    assert_eq!(report.orbits.len(), 3);

    let (triv, rho2, faithful) = classify_z4_characters(report.action.table_a());
    let orbit_of = |i: usize| {
        report
            .orbits
            .iter()
            .find(|o| o.members.contains(&i))
            .unwrap()
    };
    // orbits {1}, {ρ, ρ³}, {ρ²}
    assert_eq!(orbit_of(triv).members, vec![triv]);
    assert_eq!(orbit_of(rho2).members, vec![rho2]);
    let mut fs = faithful.clone();
    fs.sort_unstable();
    assert_eq!(orbit_of(faithful[0]).members, fs);
    // Q_[1] = Q_[ρ²] = Z2, Q_[ρ] = 1
    assert_eq!(orbit_of(triv).quotient_order, 2);
    assert_eq!(orbit_of(rho2).quotient_order, 2);
    assert_eq!(orbit_of(faithful[0]).quotient_order, 1);
    assert_eq!(orbit_of(faithful[0]).stabilizer_order, 4);
    // all extensions exist, twistings trivial
    for o in &report.orbits {
        assert!(o.extends);
        assert!(o.cocycle.is_identically_trivial());
    }
    // rank identity 2 + 1 + 2 = 5 = |Irr(D8)|
    assert_eq!(orbit_of(triv).twisted_rank, 2);
    assert_eq!(orbit_of(faithful[0]).twisted_rank, 1);
    assert_eq!(orbit_of(rho2).twisted_rank, 2);
    assert_eq!(report.table_g.len(), 5);
    assert_eq!(report.total_twisted_rank(), 5);
}

#[test]
fn criterion_02_central_sign_does_not_extend() {
    for g in [catalog::dihedral(8), catalog::quaternion8()] {
        let z = center(&g);
        assert_eq!(z.order(), 2);
        let report = mackey_decompose(&g, &z, 0, &tol()).unwrap();
        assert_eq!(report.orbits.len(), 2);
        let sign_orbit = report
            .orbits
            .iter()
            .find(|o| {
                *report.action.table_a().irreducibles()[o.rep_index].value_on(1)
                    == Cyclotomic::from_integer(1, -1)
            })
            .unwrap();
        let trivial_orbit = report
            .orbits
            .iter()
            .find(|o| o.rep_index != sign_orbit.rep_index)
            .unwrap();
        assert!(!sign_orbit.extends, "{}: sign must not extend", g.label());
        assert!(trivial_orbit.extends);
        assert_eq!(sign_orbit.twisted_rank, 1);
        assert_eq!(trivial_orbit.twisted_rank, 4);
        assert_eq!(report.table_g.len(), 5);
    }
}

#[test]
fn criterion_03_cocycle_count_matches_clifford_count_exactly() {
    for (g, a) in catalog::catalog_pairs() {
        let report = mackey_decompose(&g, &a, 0, &tol())
            .unwrap_or_else(|e| panic!("{} / |A| = {}: {e}", g.label(), a.order()));
        for o in &report.orbits {
            // α-regular count from the snapped matrix cocycle against the
            // exact character-theoretic count of irreducibles over ρ
            assert_eq!(
                o.twisted_rank,
                o.irreducibles_over.len(),
                "{} / |A| = {}",
                g.label(),
                a.order()
            );
            assert!(o.cocycle.max_snap_residual() < 1e-6);
        }
    }
}

#[test]
fn criterion_04_induction_and_frobenius_reciprocity() {
    // Ind_{Z4}^{D8}(ρ) is exactly the 2-dimensional irreducible
    let d8 = catalog::dihedral(8);
    let z4 = catalog::rotation_subgroup(&d8).unwrap();
    let tz4 = character_table(z4.as_group());
    let (_, _, faithful) = classify_z4_characters(&tz4);
    let td8 = character_table(&d8);
    let two_dim = td8
        .irreducibles()
        .iter()
        .find(|c| c.degree_int() == 2)
        .unwrap();
    for &f in &faithful {
        let ind = induce(&tz4.irreducibles()[f], &z4).unwrap();
        assert_eq!(ind.values(), two_dim.values());
    }
    // reciprocity over full subgroup lattices and the normal pairs
    let lattice_groups = [
        catalog::dihedral(8),
        catalog::quaternion8(),
        catalog::symmetric3(),
        catalog::alternating4(),
        catalog::cyclic(12),
        catalog::dihedral(12),
    ];
    let mut targets: Vec<(std::sync::Arc<twistk_core::FiniteGroup>, Subgroup)> = Vec::new();
    for g in &lattice_groups {
        for h in all_subgroups(g) {
            targets.push((g.clone(), h));
        }
    }
    targets.extend(catalog::catalog_pairs());
    for (g, h) in targets {
        let table_g = character_table(&g);
        let table_h = character_table(h.as_group());
        for chi in table_h.irreducibles() {
            let ind = induce(chi, &h).unwrap();
            for psi in table_g.irreducibles() {
                let lhs = inner_product(&ind, psi).unwrap();
                let rhs = inner_product(chi, &restrict(psi, &h).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "reciprocity in {}", g.label());
            }
        }
    }
}

#[test]
fn criterion_05_kunneth_for_rp2_times_rp2() {
    let r = kunneth_ktheory(&spaces::k_rp2(), &spaces::k_rp2());
    assert_eq!(r.result.even, AbelianGroup::from_orders(1, &[2, 2, 2]));
    assert_eq!(r.result.odd, AbelianGroup::cyclic(2));
}

#[test]
fn criterion_06_mod2_twisted_ahss() {
    let ring = spaces::rp2xrp2_f2_ring();
    let page = ahss_mod2(&ring, &spaces::rp2xrp2_twist_f2()).unwrap();
    // E∞ pattern Z2, (Z2)³, Z2 in degrees 1..3
    assert_eq!(page.e4_dims, vec![0, 1, 3, 1, 0]);
    assert_eq!(page.even, 3);
    assert_eq!(page.odd, 2);
}

#[test]
fn criterion_07_integral_resolution_is_unique() {
    let space = spaces::rp2xrp2_integral();
    let alpha = spaces::rp2xrp2_twist_integral(&space);
    let page = ahss_integral(&space, &alpha).unwrap();
    assert!(page.odd_quotients.iter().all(|g| g.is_zero()));
    let morava = ahss_mod2(&space.f2, &spaces::rp2xrp2_twist_f2()).unwrap();
    let survivors = resolve_extensions(&page.even_quotients, morava.even).unwrap();
    assert_eq!(survivors, vec![AbelianGroup::from_orders(1, &[2, 4])]);
    assert!(uct_mod2_check(
        &survivors[0],
        &AbelianGroup::zero(),
        (morava.even, morava.odd)
    ));
    // degree 1 is zero
    assert!(page.odd_quotients.iter().all(|g| g.is_zero()));
}

#[test]
fn criterion_08_q8_pipeline_final_groups() {
    // library-level chain
    let q8 = catalog::quaternion8();
    let z = center(&q8);
    let report = mackey_decompose(&q8, &z, 0, &tol()).unwrap();
    assert!(report.orbits.iter().any(|o| !o.extends));
    let untwisted = kunneth_ktheory(&spaces::k_rp2(), &spaces::k_rp2()).result;
    let space = spaces::rp2xrp2_integral();
    let page = ahss_integral(&space, &spaces::rp2xrp2_twist_integral(&space)).unwrap();
    let morava = ahss_mod2(&space.f2, &spaces::rp2xrp2_twist_f2()).unwrap();
    let survivors = resolve_extensions(&page.even_quotients, morava.even).unwrap();
    assert_eq!(survivors.len(), 1);
    let final_even = untwisted.even.direct_sum(&survivors[0]);
    let final_odd = untwisted.odd.direct_sum(&AbelianGroup::zero());
    assert_eq!(final_even, AbelianGroup::from_orders(2, &[2, 2, 2, 2, 4]));
    assert_eq!(final_odd, AbelianGroup::cyclic(2));

    // the binary agrees
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_twistk"))
        .arg("q8-pipeline")
        .output()
        .expect("pipeline run");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree 0: Z^2 + (Z/2)^4 + Z/4"));
    assert!(text.contains("degree 1: Z/2"));
}

#[test]
fn criterion_09_property_suites() {
    // character orthogonality and Σ deg² = |G| over the whole catalog
    for g in catalog::catalog_groups() {
        let t = character_table(&g);
        let sum_sq: i64 = t.irreducibles().iter().map(|c| c.degree_int().pow(2)).sum();
        assert_eq!(sum_sq, g.order() as i64, "degree squares in {}", g.label());
        for (i, a) in t.irreducibles().iter().enumerate() {
            for (j, b) in t.irreducibles().iter().enumerate() {
                let expected = if i == j {
                    Rational::from_integer(1)
                } else {
                    Rational::from_integer(0)
                };
                assert_eq!(inner_product(a, b).unwrap(), expected);
            }
        }
    }

    // semidirect products with abelian normal factor never twist
    for n in 3..=8usize {
        let zn = catalog::cyclic(n);
        let z2 = catalog::cyclic(2);
        let id: Vec<usize> = (0..n).collect();
        let inv: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
        for action in [vec![id.clone(), inv], vec![id.clone(), id.clone()]] {
            let sd = semidirect_product(&zn, &z2, &action, format!("z{n}sd")).unwrap();
            let act = irr_action(&sd.group, &sd.normal_factor).unwrap();
            for orbit in act.orbits() {
                assert!(extends_test(&act, orbit));
            }
        }
    }

    // bundle decomposition roundtrip: 100 randomized bundles per pair
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (g, a) in catalog::catalog_pairs() {
        let action = irr_action(&g, &a).unwrap();
        // stabilizer pool: subgroups containing A, tables precomputed
        let mut pool: Vec<(Subgroup, CharacterTable)> = Vec::new();
        let push = |sub: Subgroup, pool: &mut Vec<(Subgroup, CharacterTable)>| {
            if pool.iter().all(|(s, _)| s.elements() != sub.elements()) {
                let table = character_table(sub.as_group());
                pool.push((sub, table));
            }
        };
        push(Subgroup::full(g.clone()), &mut pool);
        push(a.clone(), &mut pool);
        for _ in 0..3 {
            let x = rng.gen_range(0..g.order());
            let mut gens = a.elements().to_vec();
            gens.push(x);
            push(Subgroup::generated(g.clone(), &gens).unwrap(), &mut pool);
        }
        for _ in 0..100 {
            let n_orbits = rng.gen_range(1..=2usize);
            let picks: Vec<usize> = (0..n_orbits)
                .map(|_| rng.gen_range(0..pool.len()))
                .collect();
            let stabs: Vec<Subgroup> = picks.iter().map(|&i| pool[i].0.clone()).collect();
            let base = GSet::from_orbit_stabilizers(g.clone(), &stabs).unwrap();
            let whole = Subgroup::full(g.clone());
            let fibers: Vec<_> = picks
                .iter()
                .map(|&i| {
                    let t = &pool[i].1;
                    let mults: Vec<i64> = (0..t.len()).map(|_| rng.gen_range(0..=2)).collect();
                    t.combine(&mults)
                })
                .collect();
            let bundle = EquivariantBundle::new(base, whole, fibers).unwrap();
            let verdict = verify_vector_decomposition(&bundle, &action)
                .unwrap_or_else(|e| panic!("{} / |A| = {}: {e}", g.label(), a.order()));
            assert!(verdict.orbit_ok.iter().all(|&b| b));
        }
    }

    // d3² = 0, Steenrod axiom suite, Euler conservation
    for ring in [
        spaces::rp2_f2_ring(),
        spaces::s2_f2_ring(),
        spaces::rp2xrp2_f2_ring(),
    ] {
        for id in 0..ring.monomial_count() {
            let u = F2Element::from_monomial_ids(&ring, [id]);
            let d = ring.monomial_degree(id);
            assert_eq!(sq(0, &u), u);
            assert_eq!(sq(d, &u), u.mul(&u));
            assert!(sq(d + 1, &u).is_zero());
            assert_eq!(sq(1, &sq(2, &u)), sq(3, &u));
            for jd in 0..ring.monomial_count() {
                let v = F2Element::from_monomial_ids(&ring, [jd]);
                for i in 0..=4usize {
                    let mut rhs = F2Element::zero(&ring);
                    for j in 0..=i {
                        rhs = rhs.add(&sq(j, &u).mul(&sq(i - j, &v)));
                    }
                    assert_eq!(sq(i, &u.mul(&v)), rhs);
                }
            }
        }
        let mut twists = vec![F2Element::zero(&ring)];
        let deg3 = ring.basis_in_degree(3);
        for &m in deg3 {
            twists.push(F2Element::from_monomial_ids(&ring, [m]));
        }
        for h in twists {
            // ahss_mod2 verifies d3∘d3 = 0 and Euler conservation inside
            ahss_mod2(&ring, &h).unwrap();
        }
    }
}

#[test]
fn criterion_10_one_isotropy_rank_bookkeeping() {
    // rank(R(Z_m)) · rank(K(S²)) = 2m for m = 2..6
    for m in 2..=6usize {
        let zm = catalog::cyclic(m);
        let table = character_table(&zm);
        assert_eq!(table.len(), m);
        let r_zm = KTheory::new(AbelianGroup::free(table.len()), AbelianGroup::zero());
        let product = kunneth_ktheory(&r_zm, &spaces::k_s2());
        assert_eq!(product.result.even, AbelianGroup::free(2 * m));
        assert_eq!(product.result.odd, AbelianGroup::zero());
        assert!(!product.extension_caveat);
        assert_eq!(product.result.total_rank(), 2 * m);
    }
}

//! Character tables with genuinely irrational cyclotomic values, and
//! seed stability of the floating-point layer.

use num_traits::{One, Zero};
use twistk_core::character::{character_table, inner_product};
use twistk_core::cyclotomic::Rational;
use twistk_core::group::{center, direct_product, semidirect_product};
use twistk_core::mackey::mackey_decompose;
use twistk_core::repmat::{irreducible_reps, ToleranceConfig};
use twistk_core::{catalog, Subgroup};

fn assert_orthonormal_table(g: &std::sync::Arc<twistk_core::FiniteGroup>) {
    let t = character_table(g);
    let sum_sq: i64 = t.irreducibles().iter().map(|c| c.degree_int().pow(2)).sum();
    assert_eq!(sum_sq, g.order() as i64);
    for (i, a) in t.irreducibles().iter().enumerate() {
        for (j, b) in t.irreducibles().iter().enumerate() {
            let ip = inner_product(a, b).unwrap();
            if i == j {
                assert!(ip.is_one());
            } else {
                assert!(ip.is_zero());
            }
        }
    }
}

#[test]
fn frobenius_group_of_order_twenty() {
    // Z5 ⋊ Z4 with the order-4 action x ↦ 2x: degrees 1,1,1,1,4
    let z5 = catalog::cyclic(5);
    let z4 = catalog::cyclic(4);
    let action: Vec<Vec<usize>> = (0..4)
        .map(|s| {
            let m = [1usize, 2, 4, 3][s]; // powers of 2 mod 5
            (0..5).map(|x| x * m % 5).collect()
        })
        .collect();
    let sd = semidirect_product(&z5, &z4, &action, "f20").unwrap();
    assert_eq!(sd.group.conjugacy_classes().len(), 5);
    let t = character_table(&sd.group);
    let mut degs: Vec<i64> = t.irreducibles().iter().map(|c| c.degree_int()).collect();
    degs.sort_unstable();
    assert_eq!(degs, vec![1, 1, 1, 1, 4]);
    assert_orthonormal_table(&sd.group);
}

#[test]
fn nonabelian_group_of_order_twenty_one() {
    // Z7 ⋊ Z3 via x ↦ 2x: the two 3-dimensional characters take the
    // irrational values (-1 ± √-7)/2 on the order-7 classes
    let z7 = catalog::cyclic(7);
    let z3 = catalog::cyclic(3);
    let action: Vec<Vec<usize>> = (0..3)
        .map(|s| {
            let m = [1usize, 2, 4][s];
            (0..7).map(|x| x * m % 7).collect()
        })
        .collect();
    let sd = semidirect_product(&z7, &z3, &action, "z7rz3").unwrap();
    assert_eq!(sd.group.conjugacy_classes().len(), 5);
    let t = character_table(&sd.group);
    let mut degs: Vec<i64> = t.irreducibles().iter().map(|c| c.degree_int()).collect();
    degs.sort_unstable();
    assert_eq!(degs, vec![1, 1, 1, 3, 3]);
    assert_orthonormal_table(&sd.group);
    // the three-dimensional characters are complex-conjugate, not real
    let three_dims: Vec<_> = t
        .irreducibles()
        .iter()
        .filter(|c| c.degree_int() == 3)
        .collect();
    let order7 = sd
        .group
        .elements()
        .find(|&x| sd.group.element_order(x) == 7)
        .unwrap();
    let v0 = three_dims[0].value_on(order7);
    let v1 = three_dims[1].value_on(order7);
    assert_ne!(v0, v1);
    assert_eq!(v0.conj(), *v1);
    assert!(!v0.is_rational());
    // χ(g) + conj χ(g) = -1 for the order-7 classes
    assert_eq!(v0.add(v1).as_rational(), Some(Rational::from_integer(-1)));
}

#[test]
fn dicyclic_style_order_twelve() {
    // Z3 ⋊ Z4 with Z4 acting through inversion
    let z3 = catalog::cyclic(3);
    let z4 = catalog::cyclic(4);
    let id = vec![0usize, 1, 2];
    let inv = vec![0usize, 2, 1];
    let sd = semidirect_product(&z3, &z4, &[id.clone(), inv.clone(), id, inv], "z3rz4").unwrap();
    assert_orthonormal_table(&sd.group);
    let t = character_table(&sd.group);
    let mut degs: Vec<i64> = t.irreducibles().iter().map(|c| c.degree_int()).collect();
    degs.sort_unstable();
    assert_eq!(degs, vec![1, 1, 1, 1, 2, 2]);
}

#[test]
fn representation_matrices_are_seed_stable() {
    let tol = ToleranceConfig::default();
    for g in [
        catalog::symmetric3(),
        catalog::alternating4(), // three-dimensional irreducible
        catalog::quaternion8(),
        catalog::dihedral(12),
    ] {
        for seed in 0..4u64 {
            let reps = irreducible_reps(&g, seed, &tol)
                .unwrap_or_else(|e| panic!("{} seed {seed}: {e}", g.label()));
            for r in &reps {
                assert!(r.residual() < 1e-8, "{} seed {seed}", g.label());
            }
        }
    }
}

#[test]
fn matrix_cocycle_path_is_seed_stable() {
    let tol = ToleranceConfig::default();
    let d16 = catalog::dihedral(16);
    let d8_in: Vec<usize> = d16.elements().filter(|&x| (x / 2) % 2 == 0).collect();
    let a = Subgroup::new(d16.clone(), d8_in).unwrap();
    let q8z2 = direct_product(&catalog::quaternion8(), &catalog::cyclic(2));
    let targets = [
        (d16.clone(), a),
        (q8z2.group.clone(), q8z2.normal_factor.clone()),
        (q8z2.group.clone(), center(&q8z2.group)),
    ];
    for seed in 0..4u64 {
        for (g, sub) in &targets {
            let report = mackey_decompose(g, sub, seed, &tol)
                .unwrap_or_else(|e| panic!("{} seed {seed}: {e}", g.label()));
            for o in &report.orbits {
                assert!(o.cocycle.max_snap_residual() < 1e-6);
            }
        }
    }
}

#[test]
fn product_of_symmetric_groups_order_thirty_six() {
    let s3 = catalog::symmetric3();
    let p = direct_product(&s3, &s3);
    assert_eq!(p.group.order(), 36);
    let t = character_table(&p.group);
    let mut degs: Vec<i64> = t.irreducibles().iter().map(|c| c.degree_int()).collect();
    degs.sort_unstable();
    assert_eq!(degs, vec![1, 1, 1, 1, 2, 2, 2, 2, 4]);
    assert_orthonormal_table(&p.group);
}

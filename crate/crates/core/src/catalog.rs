//! Built-in groups and named subgroups used by the CLI and the test
//! catalog.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{self, center, direct_product, semidirect_product, FiniteGroup, Subgroup};

/// Cyclic group of order `n`, elements `0..n` under addition.
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteGroup::from_cayley(format!("z{n}"), table).expect("cyclic group")
}

pub fn trivial() -> Arc<FiniteGroup> {
    FiniteGroup::from_cayley("trivial", vec![vec![0]]).expect("trivial group")
}

/// Dihedral group of order `2n`, built as `Z_n ⋊ Z_2` with the inversion
/// action. Element `2x` is the rotation `a^x`, element `2x+1` is `a^x b`.
pub fn dihedral(order: usize) -> Arc<FiniteGroup> {
    assert!(
        order >= 2 && order.is_multiple_of(2),
        "dihedral order must be even"
    );
    let n = order / 2;
    let zn = cyclic(n);
    let z2 = cyclic(2);
    let identity_map: Vec<usize> = (0..n).collect();
    let inversion: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    let sd = semidirect_product(&zn, &z2, &[identity_map, inversion], format!("d{order}"))
        .expect("dihedral semidirect product");
    sd.group
}

/// The rotation subgroup `Z_n` of a dihedral group built by [`dihedral`].
pub fn rotation_subgroup(d: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let elts: Vec<usize> = (0..d.order()).step_by(2).collect();
    Subgroup::new(d.clone(), elts)
}

/// Quaternion group `{±1, ±i, ±j, ±k}` with elements ordered
/// `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Arc<FiniteGroup> {
    // (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    let enc = |sign: i32, axis: usize| -> usize { 2 * axis + if sign > 0 { 0 } else { 1 } };
    let dec = |x: usize| -> (i32, usize) { (if x.is_multiple_of(2) { 1 } else { -1 }, x / 2) };
    // unit quaternion multiplication: axis table and sign table
    let axis_mul = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    let sign_mul = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (sx, ax) = dec(x);
                    let (sy, ay) = dec(y);
                    enc(sx * sy * sign_mul[ax][ay], axis_mul[ax][ay])
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley("q8", table).expect("quaternion group")
}

/// Symmetric group on three letters, from permutation generators.
pub fn symmetric3() -> Arc<FiniteGroup> {
    group::from_permutation_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], "s3")
        .expect("symmetric group S3")
}

/// Alternating group on four letters, from permutation generators.
pub fn alternating4() -> Arc<FiniteGroup> {
    group::from_permutation_generators(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], "a4")
        .expect("alternating group A4")
}

/// `Z_3 ⋊ Z_2` with the inversion action (isomorphic to S3, built through
/// the semidirect constructor).
pub fn z3_rtimes_z2() -> Arc<FiniteGroup> {
    let z3 = cyclic(3);
    let z2 = cyclic(2);
    let sd = semidirect_product(&z3, &z2, &[vec![0, 1, 2], vec![0, 2, 1]], "z3rz2")
        .expect("Z3 semidirect Z2");
    sd.group
}

/// Klein four group.
pub fn klein4() -> Arc<FiniteGroup> {
    let p = direct_product(&cyclic(2), &cyclic(2));
    p.group
}

/// The regular permutation action of a group on itself (left translation),
/// one permutation per element.
pub fn regular_permutations(g: &Arc<FiniteGroup>) -> Vec<Vec<usize>> {
    g.elements()
        .map(|a| g.elements().map(|x| g.mul(a, x)).collect())
        .collect()
}

/// Looks up a built-in group by catalog name. Direct products are spelled
/// with `x`, e.g. `q8xz2`.
pub fn by_name(name: &str) -> Result<Arc<FiniteGroup>> {
    if let Some((left, right)) = split_product(name) {
        let a = by_name(left)?;
        let b = by_name(right)?;
        return Ok(direct_product(&a, &b).group);
    }
    if name == "trivial" || name == "z1" {
        return Ok(trivial());
    }
    if let Some(n) = name.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
        if (1..=crate::group::DEFAULT_ORDER_CAP).contains(&n) {
            return Ok(cyclic(n));
        }
    }
    if let Some(n) = name.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 4 && n % 2 == 0 && n <= crate::group::DEFAULT_ORDER_CAP {
            return Ok(dihedral(n));
        }
    }
    match name {
        "q8" => Ok(quaternion8()),
        "s3" => Ok(symmetric3()),
        "a4" => Ok(alternating4()),
        "z3rz2" => Ok(z3_rtimes_z2()),
        "v4" => Ok(klein4()),
        _ => Err(Error::Parse(format!("unknown catalog group `{name}`"))),
    }
}

fn split_product(name: &str) -> Option<(&str, &str)> {
    // split at the first `x` that leaves a valid-looking token on the left
    for (i, c) in name.char_indices() {
        if c == 'x' && i > 0 && i + 1 < name.len() {
            let left = &name[..i];
            if left
                .chars()
                .next()
                .map(|f| f.is_ascii_alphabetic())
                .unwrap_or(false)
                && left.chars().skip(1).all(|c| c.is_ascii_alphanumeric())
                && by_name_shallow_ok(left)
            {
                return Some((left, &name[i + 1..]));
            }
        }
    }
    None
}

fn by_name_shallow_ok(name: &str) -> bool {
    matches!(name, "trivial" | "q8" | "s3" | "a4" | "z3rz2" | "v4")
        || name
            .strip_prefix('z')
            .and_then(|s| s.parse::<usize>().ok())
            .is_some()
        || name
            .strip_prefix('d')
            .and_then(|s| s.parse::<usize>().ok())
            .map(|n| n >= 4 && n % 2 == 0)
            .unwrap_or(false)
}

/// Resolves a named subgroup of `g`:
/// `trivial`, `full`, `center`, `z<k>` (the unique normal cyclic subgroup of
/// order `k`, when unique), `gen:<i,j,...>` (generated subgroup) or
/// `elements:<i,j,...>`.
pub fn subgroup_by_name(g: &Arc<FiniteGroup>, spec: &str) -> Result<Subgroup> {
    match spec {
        "trivial" => return Ok(Subgroup::trivial(g.clone())),
        "full" => return Ok(Subgroup::full(g.clone())),
        "center" => return Ok(center(g)),
        _ => {}
    }
    if let Some(list) = spec.strip_prefix("gen:") {
        let gens = parse_indices(list)?;
        return Subgroup::generated(g.clone(), &gens);
    }
    if let Some(list) = spec.strip_prefix("elements:") {
        let elts = parse_indices(list)?;
        return Subgroup::new(g.clone(), elts);
    }
    if let Some(k) = spec.strip_prefix('z').and_then(|s| s.parse::<usize>().ok()) {
        let mut found: Vec<Subgroup> = Vec::new();
        for x in g.elements() {
            if g.element_order(x) == k {
                let s = Subgroup::generated(g.clone(), &[x])?;
                if found.iter().all(|t| t.elements() != s.elements()) {
                    found.push(s);
                }
            }
        }
        return match found.len() {
            0 => Err(Error::Parse(format!("no cyclic subgroup of order {k}"))),
            1 => Ok(found.remove(0)),
            m => Err(Error::Parse(format!(
                "cyclic subgroup of order {k} is ambiguous ({m} candidates); use gen:<i>"
            ))),
        };
    }
    Err(Error::Parse(format!("unknown subgroup spec `{spec}`")))
}

fn parse_indices(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad element index `{t}`")))
        })
        .collect()
}

/// The group catalog used by the property suites.
pub fn catalog_groups() -> Vec<Arc<FiniteGroup>> {
    let mut gs: Vec<Arc<FiniteGroup>> = Vec::new();
    for n in 1..=16 {
        gs.push(cyclic(n));
    }
    for n in (4..=32).step_by(2) {
        gs.push(dihedral(n));
    }
    gs.push(quaternion8());
    gs.push(symmetric3());
    gs.push(alternating4());
    gs.push(z3_rtimes_z2());
    gs.push(direct_product(&cyclic(2), &cyclic(2)).group);
    gs.push(direct_product(&cyclic(4), &cyclic(2)).group);
    gs.push(direct_product(&cyclic(3), &cyclic(3)).group);
    gs.push(direct_product(&quaternion8(), &cyclic(2)).group);
    gs.push(direct_product(&dihedral(8), &cyclic(2)).group);
    gs
}

/// `(G, A)` pairs with `A` normal, used by the Mackey property suites.
pub fn catalog_pairs() -> Vec<(Arc<FiniteGroup>, Subgroup)> {
    let mut pairs = Vec::new();
    let mut add = |g: Arc<FiniteGroup>, s: Subgroup| {
        debug_assert!(s.is_normal());
        pairs.push((g, s));
    };

    let d8 = dihedral(8);
    add(d8.clone(), rotation_subgroup(&d8).unwrap());
    add(d8.clone(), center(&d8));
    add(d8.clone(), Subgroup::trivial(d8.clone()));
    add(d8.clone(), Subgroup::full(d8.clone()));

    let q8 = quaternion8();
    add(q8.clone(), center(&q8));
    // the three cyclic subgroups of order 4 are all normal
    for gen in [2usize, 4, 6] {
        add(q8.clone(), Subgroup::generated(q8.clone(), &[gen]).unwrap());
    }

    let s3 = symmetric3();
    let a3: Vec<usize> = s3
        .elements()
        .filter(|&x| s3.element_order(x) != 2)
        .collect();
    add(s3.clone(), Subgroup::new(s3.clone(), a3).unwrap());

    let srd = z3_rtimes_z2();
    let z3: Vec<usize> = srd
        .elements()
        .filter(|&x| srd.element_order(x) != 2)
        .collect();
    add(srd.clone(), Subgroup::new(srd.clone(), z3).unwrap());

    let a4 = alternating4();
    let v4: Vec<usize> = a4
        .elements()
        .filter(|&x| a4.element_order(x) <= 2)
        .collect();
    add(a4.clone(), Subgroup::new(a4.clone(), v4).unwrap());

    for n in [6usize, 12, 16, 20, 32] {
        let d = dihedral(n);
        add(d.clone(), rotation_subgroup(&d).unwrap());
    }
    let d16 = dihedral(16);
    // the dihedral subgroup of order 8 inside d16 (index 2, hence normal):
    // rotations a^2k plus reflections a^2k b
    let d8_in_d16: Vec<usize> = d16.elements().filter(|&x| (x / 2) % 2 == 0).collect();
    add(d16.clone(), Subgroup::new(d16.clone(), d8_in_d16).unwrap());

    for n in [4usize, 6, 8, 12] {
        let z = cyclic(n);
        for d in 1..=n {
            if n % d == 0 {
                let gen = n / d; // element of order d
                add(
                    z.clone(),
                    Subgroup::generated(z.clone(), &[gen % n]).unwrap(),
                );
            }
        }
    }

    let q8z2 = direct_product(&quaternion8(), &cyclic(2)).group;
    let q8_part: Vec<usize> = (0..8).map(|x| x * 2).collect();
    add(q8z2.clone(), Subgroup::new(q8z2.clone(), q8_part).unwrap());
    add(q8z2.clone(), center(&q8z2));

    let d8z2 = direct_product(&dihedral(8), &cyclic(2)).group;
    let d8_part: Vec<usize> = (0..8).map(|x| x * 2).collect();
    add(d8z2.clone(), Subgroup::new(d8z2.clone(), d8_part).unwrap());

    let v4g = klein4();
    add(v4g.clone(), Subgroup::generated(v4g.clone(), &[1]).unwrap());

    pairs
}

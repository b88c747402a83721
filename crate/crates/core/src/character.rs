//! Exact character tables over cyclotomic integers.
//!
//! Tables are computed with Dixon's method: the class-algebra structure
//! constants are simultaneously diagonalized over a prime field F_p with
//! p ≡ 1 (mod e) and p > 2√|G| (e the group exponent), degrees and values
//! are recovered mod p, and eigenvalue multiplicities are lifted to exact
//! sums of roots of unity by discrete Fourier inversion over F_p. No
//! floating point enters this layer.

use std::sync::Arc;

use num_traits::Signed;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{same_group, FiniteGroup, Subgroup};

/// Conjugacy class bookkeeping shared by all characters of one group.
#[derive(Debug)]
pub struct ClassData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub inverse_class: Vec<usize>,
}

impl ClassData {
    pub fn new(g: &Arc<FiniteGroup>) -> Arc<Self> {
        let (classes, class_of) = g.class_index();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let inverse_class: Vec<usize> = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
        Arc::new(ClassData {
            classes,
            class_of,
            reps,
            inverse_class,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// An exact class function. Genuine characters have nonnegative-integer
/// inner products with the irreducibles; the type also carries virtual
/// characters produced by arithmetic.
#[derive(Debug, Clone)]
pub struct Character {
    group: Arc<FiniteGroup>,
    classes: Arc<ClassData>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}
impl Eq for Character {}

impl Character {
    pub fn new(group: Arc<FiniteGroup>, classes: Arc<ClassData>, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), classes.len());
        Character {
            group,
            classes,
            values,
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        let classes = ClassData::new(group);
        let values = vec![Cyclotomic::one(1); classes.len()];
        Character::new(group.clone(), classes, values)
    }

    /// The regular character: |G| at the identity, 0 elsewhere.
    pub fn regular(group: &Arc<FiniteGroup>) -> Self {
        let classes = ClassData::new(group);
        let mut values = vec![Cyclotomic::zero(1); classes.len()];
        values[0] = Cyclotomic::from_integer(1, group.order() as i64);
        Character::new(group.clone(), classes, values)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    /// Values per conjugacy class, identity class first.
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_on(&self, element: usize) -> &Cyclotomic {
        &self.values[self.classes.class_of[element]]
    }

    pub fn degree(&self) -> Rational {
        self.values[0]
            .as_rational()
            .expect("degree of a class function is rational")
    }

    pub fn degree_int(&self) -> i64 {
        let d = self.degree();
        assert!(d.is_integer(), "degree is not an integer");
        d.to_integer()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Character::new(
            self.group.clone(),
            self.classes.clone(),
            values,
        ))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| v.scale(Rational::from_integer(n)))
            .collect();
        Character::new(self.group.clone(), self.classes.clone(), values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }
}

/// ⟨χ, ψ⟩ = |G|⁻¹ Σ_g χ(g) conj(ψ(g)), exact.
pub fn inner_product(chi: &Character, psi: &Character) -> Result<Rational> {
    if !same_group(chi.group(), psi.group()) {
        return Err(Error::GroupMismatch);
    }
    let n = chi.group().order() as i64;
    let mut sum = Cyclotomic::zero(1);
    for (i, class) in chi.classes.classes.iter().enumerate() {
        let term = chi.values[i].mul(&psi.values[i].conj());
        sum = sum.add(&term.scale(Rational::from_integer(class.len() as i64)));
    }
    let sum = sum.scale(Rational::new(1, n));
    sum.as_rational()
        .ok_or_else(|| Error::Inconsistency("inner product is not rational".into()))
}

/// Restriction of a character of `sub.parent()` to the subgroup, as a
/// character of the abstract copy `sub.as_group()`.
pub fn restrict(chi: &Character, sub: &Subgroup) -> Result<Character> {
    if !same_group(chi.group(), sub.parent()) {
        return Err(Error::GroupMismatch);
    }
    let h = sub.as_group().clone();
    let classes = ClassData::new(&h);
    let values = classes
        .reps
        .iter()
        .map(|&r| chi.value_on(sub.elements()[r]).clone())
        .collect();
    Ok(Character::new(h, classes, values))
}

/// Frobenius induction of a character of `sub.as_group()` up to the parent.
pub fn induce(chi: &Character, sub: &Subgroup) -> Result<Character> {
    if !same_group(chi.group(), sub.as_group()) {
        return Err(Error::GroupMismatch);
    }
    let g = sub.parent().clone();
    let classes = ClassData::new(&g);
    let h_order = sub.order() as i64;
    let values = classes
        .reps
        .iter()
        .map(|&t| {
            let mut sum = Cyclotomic::zero(1);
            for x in g.elements() {
                let y = g.mul(g.mul(g.inv(x), t), x);
                if let Some(pos) = sub.position_of(y) {
                    sum = sum.add(chi.value_on(pos));
                }
            }
            sum.scale(Rational::new(1, h_order))
        })
        .collect();
    Ok(Character::new(g, classes, values))
}

/// The complete list of irreducible characters of a finite group, in a
/// deterministic order (by degree, then lexicographically on values).
#[derive(Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Arc<ClassData>,
    irreducibles: Vec<Character>,
    exponent: usize,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Index of an irreducible equal to `chi`, if any.
    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.irreducibles
            .iter()
            .position(|c| c.values() == chi.values())
    }

    /// Character with the given multiplicity of each irreducible.
    pub fn combine(&self, multiplicities: &[i64]) -> Character {
        assert_eq!(multiplicities.len(), self.len());
        let mut values = vec![Cyclotomic::zero(1); self.classes.len()];
        for (m, chi) in multiplicities.iter().zip(&self.irreducibles) {
            if *m != 0 {
                for (v, w) in values.iter_mut().zip(chi.values()) {
                    *v = v.add(&w.scale(Rational::from_integer(*m)));
                }
            }
        }
        Character::new(self.group.clone(), self.classes.clone(), values)
    }

    /// Decomposes a class function into irreducible multiplicities; errors
    /// if any multiplicity fails to be a nonnegative integer (i.e. the
    /// input is not a genuine character).
    pub fn multiplicities(&self, chi: &Character) -> Result<Vec<i64>> {
        let mut out = Vec::with_capacity(self.len());
        for irr in &self.irreducibles {
            let m = inner_product(chi, irr)?;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Invalid(format!(
                    "class function is not a character (multiplicity {m})"
                )));
            }
            out.push(m.to_integer());
        }
        Ok(out)
    }
}

/// Computes the character table of `g` by Dixon's method.
pub fn character_table(g: &Arc<FiniteGroup>) -> CharacterTable {
    let classes = ClassData::new(g);
    let k = classes.len();
    if g.order() == 1 {
        return CharacterTable {
            group: g.clone(),
            classes: classes.clone(),
            irreducibles: vec![Character::new(g.clone(), classes, vec![Cyclotomic::one(1)])],
            exponent: 1,
        };
    }
    let e = g.exponent();
    let n = g.order();
    let p = dixon_prime(e, n);

    // Structure-constant matrices M_i[l][j] = a_{ijl}, computed on demand.
    let class_matrix = |i: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; k]; k];
        for (l, &z) in classes.reps.iter().enumerate() {
            for &x in &classes.classes[i] {
                let y = g.mul(g.inv(x), z);
                m[l][classes.class_of[y]] += 1;
            }
        }
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v %= p;
            }
        }
        m
    };

    // Refine the full space into common eigenvectors of all class matrices.
    let mut spaces: Vec<Echelon> = vec![Echelon::full(k)];
    for i in 1..k {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let m = class_matrix(i);
        let mut next: Vec<Echelon> = Vec::with_capacity(spaces.len());
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
                continue;
            }
            let a = s.restricted_matrix(&m, p);
            let mut eigenvalues: Vec<u64> = Vec::new();
            for t in 0..s.dim() {
                let mut w = vec![0u64; s.dim()];
                w[t] = 1;
                for lam in poly_roots(&vector_min_poly(&a, &w, p), p) {
                    if !eigenvalues.contains(&lam) {
                        eigenvalues.push(lam);
                    }
                }
            }
            eigenvalues.sort_unstable();
            let mut split_dim = 0;
            for lam in eigenvalues {
                let mut shifted = a.clone();
                for (t, row) in shifted.iter_mut().enumerate() {
                    row[t] = sub_mod(row[t], lam, p);
                }
                let ker = kernel(&shifted, p);
                if ker.is_empty() {
                    continue;
                }
                let mut piece = Echelon::new(k);
                for w in &ker {
                    piece.insert(s.lift(w, p), p);
                }
                split_dim += piece.dim();
                next.push(piece);
            }
            assert_eq!(split_dim, s.dim(), "class algebra failed to diagonalize");
        }
        spaces = next;
    }
    assert!(
        spaces.iter().all(|s| s.dim() == 1),
        "common eigenspaces are not one-dimensional"
    );

    // Central character values ω_t(i) per eigenvector.
    let matrices: Vec<Vec<Vec<u64>>> = (0..k).map(class_matrix).collect();
    let omegas: Vec<Vec<u64>> = spaces
        .iter()
        .map(|s| {
            let v = &s.basis[0];
            let j = v.iter().position(|&c| c != 0).expect("nonzero eigenvector");
            let inv_vj = inv_mod(v[j], p);
            (0..k)
                .map(|i| {
                    let mv = mat_vec(&matrices[i], v, p);
                    mul_mod(mv[j], inv_vj, p)
                })
                .collect()
        })
        .collect();

    // Degrees: d² = |G| / Σ_i ω(i) ω(i*) / |C_i| mod p, with 0 < d ≤ √|G|.
    let sqrt_n = (1..=n).take_while(|d| d * d <= n).last().unwrap_or(1);
    let mut chars_mod_p: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for omega in &omegas {
        let mut s = 0u64;
        for i in 0..k {
            let term = mul_mod(
                mul_mod(omega[i], omega[classes.inverse_class[i]], p),
                inv_mod(classes.classes[i].len() as u64 % p, p),
                p,
            );
            s = add_mod(s, term, p);
        }
        let d_sq = mul_mod(n as u64 % p, inv_mod(s, p), p);
        let d = (1..=sqrt_n as u64)
            .find(|d| mul_mod(*d, *d, p) == d_sq)
            .expect("degree not recovered mod p");
        let values: Vec<u64> = (0..k)
            .map(|i| {
                mul_mod(
                    mul_mod(d, omega[i], p),
                    inv_mod(classes.classes[i].len() as u64 % p, p),
                    p,
                )
            })
            .collect();
        chars_mod_p.push((d, values));
    }

    // Lift values mod p to exact cyclotomics by Fourier inversion over the
    // cyclic group generated by each class representative.
    let z = primitive_root_of_unity(p, e as u64);
    let power_class: Vec<Vec<usize>> = classes
        .reps
        .iter()
        .map(|&r| {
            let m = g.element_order(r);
            (0..m)
                .map(|v| classes.class_of[g.pow(r, v as i64)])
                .collect()
        })
        .collect();
    let mut irreducibles: Vec<Character> = chars_mod_p
        .iter()
        .map(|(d, vals)| {
            let values: Vec<Cyclotomic> = (0..k)
                .map(|i| {
                    let m = power_class[i].len();
                    let zm = pow_mod(z, (e / m) as u64, p);
                    let zm_inv = inv_mod(zm, p);
                    let m_inv = inv_mod(m as u64 % p, p);
                    let mut value = Cyclotomic::zero(e);
                    let mut total = 0u64;
                    for j in 0..m {
                        let mut s = 0u64;
                        for (v, &pc) in power_class[i].iter().enumerate() {
                            let tw = pow_mod(zm_inv, (j * v) as u64 % (p - 1), p);
                            s = add_mod(s, mul_mod(vals[pc], tw, p), p);
                        }
                        let nj = mul_mod(s, m_inv, p);
                        assert!(nj <= *d, "eigenvalue multiplicity exceeds degree");
                        total += nj;
                        if nj != 0 {
                            value = value.add(
                                &Cyclotomic::root_of_unity(e, j * (e / m))
                                    .scale(Rational::from_integer(nj as i64)),
                            );
                        }
                    }
                    assert_eq!(total, *d, "multiplicities do not sum to the degree");
                    value
                })
                .collect();
            Character::new(g.clone(), classes.clone(), values)
        })
        .collect();

    irreducibles.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            for (x, y) in a.values().iter().zip(b.values()) {
                let ord = x.cmp_canonical(y);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let sum_sq: i64 = irreducibles.iter().map(|c| c.degree_int().pow(2)).sum();
    assert_eq!(sum_sq, n as i64, "degree squares do not sum to |G|");

    CharacterTable {
        group: g.clone(),
        classes,
        irreducibles,
        exponent: e,
    }
}

// ---------------------------------------------------------------------
// arithmetic mod p
// ---------------------------------------------------------------------

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "division by zero mod p");
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime p ≡ 1 (mod e) with p > 2√n.
fn dixon_prime(e: usize, n: usize) -> u64 {
    let bound = 2.0 * (n as f64).sqrt();
    let e = e as u64;
    let mut p = e + 1;
    loop {
        if p as f64 > bound && is_prime(p) {
            return p;
        }
        p += e;
    }
}

/// Deterministic primitive e-th root of unity in F_p (requires e | p-1).
fn primitive_root_of_unity(p: u64, e: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let generator = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("F_p has a generator");
    pow_mod(generator, (p - 1) / e, p)
}

fn mat_vec(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p))
        })
        .collect()
}

/// Reduced echelon basis of a subspace of F_p^k.
#[derive(Debug, Clone)]
struct Echelon {
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(ambient: usize) -> Self {
        Echelon {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn full(ambient: usize) -> Self {
        let mut s = Echelon::new(ambient);
        for t in 0..ambient {
            let mut v = vec![0u64; ambient];
            v[t] = 1;
            s.basis.push(v);
            s.pivots.push(t);
        }
        s
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &mut [u64], p: u64) {
        for (b, &piv) in self.basis.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = sub_mod(*x, mul_mod(c, *y, p), p);
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<u64>, p: u64) -> bool {
        self.reduce(&mut v, p);
        if let Some(piv) = v.iter().position(|&c| c != 0) {
            let inv = inv_mod(v[piv], p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            // clear the new pivot column in the existing basis
            for b in self.basis.iter_mut() {
                let c = b[piv];
                if c != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = sub_mod(*x, mul_mod(c, *y, p), p);
                    }
                }
            }
            self.basis.push(v);
            self.pivots.push(piv);
            true
        } else {
            false
        }
    }

    /// Coordinates of `v` in the basis; panics if `v` is outside the span.
    fn coords(&self, v: &[u64], p: u64) -> Vec<u64> {
        let mut w = v.to_vec();
        let coords: Vec<u64> = self.pivots.iter().map(|&piv| v[piv]).collect();
        self.reduce(&mut w, p);
        assert!(w.iter().all(|&c| c == 0), "vector escapes the subspace");
        coords
    }

    /// Matrix of `m` restricted to this invariant subspace.
    fn restricted_matrix(&self, m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        let d = self.dim();
        let cols: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|b| self.coords(&mat_vec(m, b, p), p))
            .collect();
        (0..d)
            .map(|r| (0..d).map(|c| cols[c][r]).collect())
            .collect()
    }

    /// Ambient vector with the given coordinates.
    fn lift(&self, coords: &[u64], p: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = add_mod(*x, mul_mod(*c, *y, p), p);
                }
            }
        }
        v
    }
}

/// Null space basis of a square matrix over F_p.
fn kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if let Some(rr) = (r..rows).find(|&rr| a[rr][c] != 0) {
            a.swap(r, rr);
            let inv = inv_mod(a[r][c], p);
            for x in a[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            let pivot_row = a[r].clone();
            for (rr, row) in a.iter_mut().enumerate() {
                if rr != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                        *x = sub_mod(*x, mul_mod(f, pv, p), p);
                    }
                }
            }
            pivot_col_of_row.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let mut out = Vec::new();
    for c in 0..cols {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[c] = 1;
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = sub_mod(0, a[row][c], p);
        }
        out.push(v);
    }
    out
}

/// Monic minimal polynomial of `w` under the matrix `a` (coefficients low
/// to high), via Krylov iteration with augmented bookkeeping.
fn vector_min_poly(a: &[Vec<u64>], w: &[u64], p: u64) -> Vec<u64> {
    let d = a.len();
    // rows: (reduced krylov vector, pivot, combination coefficients)
    let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
    let mut v = w.to_vec();
    for step in 0..=d {
        let mut combo = vec![0u64; d + 2];
        combo[step] = 1;
        let mut cur = v.clone();
        for (rv, piv, rc) in &rows {
            let c = cur[*piv];
            if c != 0 {
                for (x, y) in cur.iter_mut().zip(rv) {
                    *x = sub_mod(*x, mul_mod(c, *y, p), p);
                }
                for (x, y) in combo.iter_mut().zip(rc) {
                    *x = sub_mod(*x, mul_mod(c, *y, p), p);
                }
            }
        }
        if let Some(piv) = cur.iter().position(|&c| c != 0) {
            let inv = inv_mod(cur[piv], p);
            for x in cur.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for x in combo.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            rows.push((cur, piv, combo));
            v = mat_vec(a, &v, p);
        } else {
            let mut poly = combo[..=step].to_vec();
            debug_assert_eq!(*poly.last().unwrap(), 1);
            while poly.len() > 1 && *poly.last().unwrap() == 0 {
                poly.pop();
            }
            return poly;
        }
    }
    unreachable!("minimal polynomial has degree at most the dimension")
}

fn poly_roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| {
            let mut acc = 0u64;
            for &c in poly.iter().rev() {
                acc = add_mod(mul_mod(acc, x, p), c, p);
            }
            acc == 0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use num_traits::{One, Zero};

    #[test]
    fn z4_table_is_the_fourth_roots() {
        let z4 = catalog::cyclic(4);
        let t = character_table(&z4);
        assert_eq!(t.len(), 4);
        for chi in t.irreducibles() {
            assert_eq!(chi.degree_int(), 1);
            for v in chi.values() {
                assert!(v.as_root_exponent().is_some() || v.lift(4).as_root_exponent().is_some());
            }
        }
        // the two faithful characters take value ±i on the generator
        let i = Cyclotomic::root_of_unity(4, 1);
        let minus_i = Cyclotomic::root_of_unity(4, 3);
        let faithful = t
            .irreducibles()
            .iter()
            .filter(|c| *c.value_on(1) == i || *c.value_on(1) == minus_i)
            .count();
        assert_eq!(faithful, 2);
    }

    #[test]
    fn d8_degrees() {
        let t = character_table(&catalog::dihedral(8));
        let degs: Vec<i64> = t.irreducibles().iter().map(|c| c.degree_int()).collect();
        assert_eq!(degs, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn q8_degrees() {
        let t = character_table(&catalog::quaternion8());
        let degs: Vec<i64> = t.irreducibles().iter().map(|c| c.degree_int()).collect();
        assert_eq!(degs, vec![1, 1, 1, 1, 2]);
        // the 2-dimensional character takes value -2 at -1
        let two_dim = &t.irreducibles()[4];
        assert_eq!(*two_dim.value_on(1), Cyclotomic::from_integer(1, -2));
    }

    #[test]
    fn orthogonality_on_small_catalog() {
        for g in [
            catalog::cyclic(6),
            catalog::dihedral(12),
            catalog::quaternion8(),
            catalog::symmetric3(),
            catalog::alternating4(),
        ] {
            let t = character_table(&g);
            for (i, a) in t.irreducibles().iter().enumerate() {
                for (j, b) in t.irreducibles().iter().enumerate() {
                    let ip = inner_product(a, b).unwrap();
                    let expected = if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(ip, expected, "⟨χ_{i}, χ_{j}⟩ in {}", g.label());
                }
            }
        }
    }

    #[test]
    fn regular_character_decomposition() {
        let g = catalog::symmetric3();
        let t = character_table(&g);
        let reg = Character::regular(&g);
        for chi in t.irreducibles() {
            assert_eq!(
                inner_product(&reg, chi).unwrap(),
                Rational::from_integer(chi.degree_int())
            );
        }
    }

    #[test]
    fn restriction_of_d8_two_dim_to_rotations() {
        let d8 = catalog::dihedral(8);
        let z4 = catalog::rotation_subgroup(&d8).unwrap();
        let t = character_table(&d8);
        let two_dim = &t.irreducibles()[4];
        let res = restrict(two_dim, &z4).unwrap();
        // Res χ = ρ + ρ³ where ρ is a faithful character of Z4
        let tz4 = character_table(z4.as_group());
        let mults = tz4.multiplicities(&res).unwrap();
        let mut nonzero: Vec<(usize, i64)> = mults
            .iter()
            .cloned()
            .enumerate()
            .filter(|(_, m)| *m != 0)
            .collect();
        nonzero.sort();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.iter().all(|(_, m)| *m == 1));
        for (idx, _) in nonzero {
            let chi = &tz4.irreducibles()[idx];
            // faithful: value on a generator is a primitive fourth root
            let gen_pos = z4
                .as_group()
                .elements()
                .find(|&x| z4.as_group().element_order(x) == 4)
                .unwrap();
            let v = chi.value_on(gen_pos);
            assert!(*v == Cyclotomic::root_of_unity(4, 1) || *v == Cyclotomic::root_of_unity(4, 3));
        }
    }

    #[test]
    fn restriction_of_q8_two_dim_to_center_is_twice_sign() {
        let q8 = catalog::quaternion8();
        let z = crate::group::center(&q8);
        let t = character_table(&q8);
        let two_dim = &t.irreducibles()[4];
        let res = restrict(two_dim, &z).unwrap();
        assert_eq!(res.degree_int(), 2);
        // value at the nontrivial central element is -2, i.e. 2 · sign
        let pos = z.position_of(1).unwrap();
        assert_eq!(*res.value_on(pos), Cyclotomic::from_integer(1, -2));
    }

    #[test]
    fn induction_from_rotations_gives_two_dim() {
        let d8 = catalog::dihedral(8);
        let z4 = catalog::rotation_subgroup(&d8).unwrap();
        let tz4 = character_table(z4.as_group());
        let rho = tz4
            .irreducibles()
            .iter()
            .find(|c| {
                let gen = z4
                    .as_group()
                    .elements()
                    .find(|&x| z4.as_group().element_order(x) == 4)
                    .unwrap();
                *c.value_on(gen) == Cyclotomic::root_of_unity(4, 1)
            })
            .unwrap();
        let ind = induce(rho, &z4).unwrap();
        assert_eq!(ind.degree_int(), 2);
        let td8 = character_table(&d8);
        assert_eq!(ind.values(), td8.irreducibles()[4].values());
        // ⟨Ind ρ, two-dim⟩ = 1
        assert_eq!(
            inner_product(&ind, &td8.irreducibles()[4]).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn induction_from_whole_group_is_identity() {
        let g = catalog::dihedral(8);
        let whole = Subgroup::full(g.clone());
        let t = character_table(&g);
        for chi in t.irreducibles() {
            let chi_abs = restrict(chi, &whole).unwrap();
            let back = induce(&chi_abs, &whole).unwrap();
            assert_eq!(back.values(), chi.values());
        }
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = catalog::quaternion8();
        let triv = Subgroup::trivial(g.clone());
        let one = Character::trivial(triv.as_group());
        let ind = induce(&one, &triv).unwrap();
        assert_eq!(ind, Character::regular(&g));
    }

    #[test]
    fn degree_identity_for_induction() {
        let d12 = catalog::dihedral(12);
        let rot = catalog::rotation_subgroup(&d12).unwrap();
        let t = character_table(rot.as_group());
        for chi in t.irreducibles() {
            let ind = induce(chi, &rot).unwrap();
            assert_eq!(
                ind.degree_int(),
                chi.degree_int() * rot.index_in_parent() as i64
            );
        }
    }

    #[test]
    fn inner_product_rejects_mismatched_groups() {
        let a = Character::trivial(&catalog::cyclic(3));
        let b = Character::trivial(&catalog::cyclic(4));
        assert!(matches!(inner_product(&a, &b), Err(Error::GroupMismatch)));
    }
}

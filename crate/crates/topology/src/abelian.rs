//! Finitely generated abelian groups in canonical form, with the tensor
//! and Tor rules used by the Künneth machinery.
//!
//! Canonical form: free rank plus a sorted multiset of prime-power cyclic
//! orders, so `Z6` and `Z2 ⊕ Z3` compare equal.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(0, &[order])
    }

    /// Builds the canonical form from arbitrary cyclic orders (0 meaning a
    /// free factor; 1s are dropped).
    pub fn from_orders(extra_free: usize, orders: &[u64]) -> Self {
        let mut free_rank = extra_free;
        let mut torsion = Vec::new();
        for &n in orders {
            if n == 0 {
                free_rank += 1;
                continue;
            }
            let mut m = n;
            let mut p = 2u64;
            while p * p <= m {
                if m % p == 0 {
                    let mut q = 1u64;
                    while m % p == 0 {
                        q *= p;
                        m /= p;
                    }
                    torsion.push(q);
                }
                p += 1;
            }
            if m > 1 {
                torsion.push(m);
            }
        }
        torsion.sort_unstable();
        AbelianGroup { free_rank, torsion }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        torsion.sort_unstable();
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    pub fn direct_sum_all<'a>(groups: impl IntoIterator<Item = &'a Self>) -> Self {
        groups
            .into_iter()
            .fold(Self::zero(), |acc, g| acc.direct_sum(g))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Prime-power torsion coefficients, ascending.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&t| t as u128).product()
    }

    /// dim_F2 (G ⊗ F2) = free rank + number of even torsion coefficients.
    pub fn dim_tensor_f2(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|&&t| t % 2 == 0).count()
    }

    /// dim_F2 Tor(G, F2) = number of even torsion coefficients.
    pub fn dim_tor_f2(&self) -> usize {
        self.torsion.iter().filter(|&&t| t % 2 == 0).count()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let mut count = 1;
            while i + count < self.torsion.len() && self.torsion[i + count] == t {
                count += 1;
            }
            if count == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{count}"));
            }
            i += count;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Z ⊗ Z = Z, Z ⊗ Z_n = Z_n, Z_m ⊗ Z_n = Z_gcd(m,n), additive over sums.
pub fn tensor_ab(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut out = AbelianGroup::free(a.free_rank * b.free_rank);
    for &t in &b.torsion {
        for _ in 0..a.free_rank {
            out = out.direct_sum(&AbelianGroup::cyclic(t));
        }
    }
    for &t in &a.torsion {
        for _ in 0..b.free_rank {
            out = out.direct_sum(&AbelianGroup::cyclic(t));
        }
    }
    for &s in &a.torsion {
        for &t in &b.torsion {
            let g = gcd(s, t);
            if g > 1 {
                out = out.direct_sum(&AbelianGroup::cyclic(g));
            }
        }
    }
    out
}

/// Tor(Z, ·) = 0, Tor(Z_m, Z_n) = Z_gcd(m,n), additive over sums.
pub fn tor_ab(a: &AbelianGroup, b: &AbelianGroup) -> AbelianGroup {
    let mut out = AbelianGroup::zero();
    for &s in &a.torsion {
        for &t in &b.torsion {
            let g = gcd(s, t);
            if g > 1 {
                out = out.direct_sum(&AbelianGroup::cyclic(g));
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// A Z/2-graded finitely generated abelian group (K-theory of a space).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTheory {
    pub even: AbelianGroup,
    pub odd: AbelianGroup,
}

impl KTheory {
    pub fn new(even: AbelianGroup, odd: AbelianGroup) -> Self {
        KTheory { even, odd }
    }

    pub fn zero() -> Self {
        KTheory {
            even: AbelianGroup::zero(),
            odd: AbelianGroup::zero(),
        }
    }

    pub fn total_rank(&self) -> usize {
        self.even.free_rank() + self.odd.free_rank()
    }
}

impl fmt::Display for KTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree 0: {}   degree 1: {}", self.even, self.odd)
    }
}

/// Künneth middle term, reported additively (tensor part ⊕ Tor part).
#[derive(Debug, Clone)]
pub struct KunnethResult {
    pub result: KTheory,
    pub tensor_part: KTheory,
    pub tor_part: KTheory,
    /// true when a nonzero Tor term appears, i.e. the additive report rests
    /// on the split being unresolved by this computation
    pub extension_caveat: bool,
}

/// The K-theory Künneth sequence
/// 0 → ⊕_{i+j=n} K^i ⊗ K^j → K^n(X×Y) → ⊕_{i+j=n+1} Tor(K^i, K^j) → 0,
/// assembled additively.
pub fn kunneth_ktheory(kx: &KTheory, ky: &KTheory) -> KunnethResult {
    let tensor_even = tensor_ab(&kx.even, &ky.even).direct_sum(&tensor_ab(&kx.odd, &ky.odd));
    let tensor_odd = tensor_ab(&kx.even, &ky.odd).direct_sum(&tensor_ab(&kx.odd, &ky.even));
    let tor_even = tor_ab(&kx.even, &ky.odd).direct_sum(&tor_ab(&kx.odd, &ky.even));
    let tor_odd = tor_ab(&kx.even, &ky.even).direct_sum(&tor_ab(&kx.odd, &ky.odd));
    let tensor_part = KTheory::new(tensor_even, tensor_odd);
    let tor_part = KTheory::new(tor_even, tor_odd);
    let result = KTheory::new(
        tensor_part.even.direct_sum(&tor_part.even),
        tensor_part.odd.direct_sum(&tor_part.odd),
    );
    let extension_caveat = !tor_part.even.is_zero() || !tor_part.odd.is_zero();
    KunnethResult {
        result,
        tensor_part,
        tor_part,
        extension_caveat,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z_plus_z2() -> AbelianGroup {
        AbelianGroup::from_orders(1, &[2])
    }

    #[test]
    fn canonical_form_merges_coprime_cyclics() {
        assert_eq!(
            AbelianGroup::cyclic(6),
            AbelianGroup::from_orders(0, &[2, 3])
        );
        assert_eq!(AbelianGroup::cyclic(12).torsion(), &[3, 4]);
        assert_eq!(AbelianGroup::from_orders(0, &[1]), AbelianGroup::zero());
    }

    #[test]
    fn tensor_of_rp2_factors() {
        // (Z ⊕ Z2) ⊗ (Z ⊕ Z2) = Z ⊕ (Z2)³
        let t = tensor_ab(&z_plus_z2(), &z_plus_z2());
        assert_eq!(t, AbelianGroup::from_orders(1, &[2, 2, 2]));
    }

    #[test]
    fn tensor_with_zero() {
        let a = AbelianGroup::from_orders(2, &[4, 3]);
        assert_eq!(tensor_ab(&a, &AbelianGroup::zero()), AbelianGroup::zero());
    }

    #[test]
    fn tensor_gcd_rule() {
        assert_eq!(
            tensor_ab(&AbelianGroup::cyclic(4), &AbelianGroup::cyclic(2)),
            AbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn tor_of_rp2_factors() {
        assert_eq!(tor_ab(&z_plus_z2(), &z_plus_z2()), AbelianGroup::cyclic(2));
        assert_eq!(
            tor_ab(&AbelianGroup::free(5), &AbelianGroup::cyclic(8)),
            AbelianGroup::zero()
        );
        assert_eq!(
            tor_ab(&AbelianGroup::cyclic(4), &AbelianGroup::cyclic(6)),
            AbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn kunneth_rp2_times_rp2() {
        let k_rp2 = KTheory::new(z_plus_z2(), AbelianGroup::zero());
        let r = kunneth_ktheory(&k_rp2, &k_rp2);
        assert_eq!(r.result.even, AbelianGroup::from_orders(1, &[2, 2, 2]));
        assert_eq!(r.result.odd, AbelianGroup::cyclic(2));
        assert!(r.extension_caveat);
    }

    #[test]
    fn kunneth_with_point_is_identity() {
        let k_pt = KTheory::new(AbelianGroup::free(1), AbelianGroup::zero());
        let k = KTheory::new(
            AbelianGroup::from_orders(2, &[2, 9]),
            AbelianGroup::cyclic(3),
        );
        let r = kunneth_ktheory(&k_pt, &k);
        assert_eq!(r.result, k);
        assert!(!r.extension_caveat);
    }

    #[test]
    fn kunneth_spheres() {
        let k_s2 = KTheory::new(AbelianGroup::free(2), AbelianGroup::zero());
        let r = kunneth_ktheory(&k_s2, &k_s2);
        assert_eq!(r.result.even, AbelianGroup::free(4));
        assert_eq!(r.result.odd, AbelianGroup::zero());
        assert!(!r.extension_caveat);
    }

    #[test]
    fn mod2_dimensions() {
        let g = AbelianGroup::from_orders(1, &[4, 2]);
        assert_eq!(g.dim_tensor_f2(), 3);
        assert_eq!(g.dim_tor_f2(), 2);
        assert_eq!(AbelianGroup::cyclic(3).dim_tensor_f2(), 0);
    }

    proptest! {
        #[test]
        fn tensor_and_tor_are_commutative(
            fa in 0usize..3, fb in 0usize..3,
            ta in prop::collection::vec(2u64..13, 0..4),
            tb in prop::collection::vec(2u64..13, 0..4),
        ) {
            let a = AbelianGroup::from_orders(fa, &ta);
            let b = AbelianGroup::from_orders(fb, &tb);
            prop_assert_eq!(tensor_ab(&a, &b), tensor_ab(&b, &a));
            prop_assert_eq!(tor_ab(&a, &b), tor_ab(&b, &a));
        }

        #[test]
        fn kunneth_total_rank_is_tensor_plus_tor(
            ta in prop::collection::vec(2u64..9, 0..3),
            tb in prop::collection::vec(2u64..9, 0..3),
            fa in 0usize..3, fb in 0usize..3,
        ) {
            let kx = KTheory::new(AbelianGroup::from_orders(fa, &ta), AbelianGroup::from_orders(0, &tb));
            let ky = KTheory::new(AbelianGroup::from_orders(fb, &tb), AbelianGroup::from_orders(0, &ta));
            let r = kunneth_ktheory(&kx, &ky);
            let count = |k: &KTheory| {
                k.even.free_rank() + k.even.torsion().len() + k.odd.free_rank() + k.odd.torsion().len()
            };
            prop_assert_eq!(count(&r.result), count(&r.tensor_part) + count(&r.tor_part));
        }
    }
}

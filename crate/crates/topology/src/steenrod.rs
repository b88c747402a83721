//! Steenrod squares on truncated polynomial rings via the Cartan formula.
//!
//! The total square of a generator g is g + g², i.e. Sq⁰g = g,
//! Sq^{|g|}g = g² and the intermediate squares vanish; this matches all
//! the catalog spaces (products of real projective planes and spheres).
//! Monomials expand by Sq(gᵃ) = (g + g²)ᵃ with binomial coefficients
//! mod 2, products by the Cartan formula.

use crate::f2ring::F2Element;

/// C(n, k) mod 2 by Lucas: odd iff k is a submask of n.
fn binom_mod2(n: u32, k: u32) -> bool {
    (n.wrapping_sub(k)) & k == 0 && k <= n
}

/// The full total square Sq(x) = Σ_i Sq^i(x).
pub fn total_square(x: &F2Element) -> F2Element {
    let ring = x.ring().clone();
    let mut out = F2Element::zero(&ring);
    for mono in x.monomial_ids() {
        let exps = ring.monomial_exponents(mono).to_vec();
        // expand Π_j (g_j + g_j²)^{e_j}, dropping truncated terms
        let mut terms: Vec<Vec<u32>> = vec![vec![]];
        for (j, &e) in exps.iter().enumerate() {
            let mut next = Vec::new();
            for t in &terms {
                for extra in 0..=e {
                    if binom_mod2(e, extra) {
                        let mut t2 = t.clone();
                        t2.push(e + extra);
                        next.push(t2);
                    }
                }
            }
            terms = next;
            let _ = j;
        }
        let mut part = F2Element::zero(&ring);
        for t in &terms {
            if let Some(id) = ring.monomial_id(t) {
                part = part.add(&F2Element::from_monomial_ids(&ring, [id]));
            }
        }
        out = out.add(&part);
    }
    out
}

/// Sq^i applied monomial-wise (each monomial contributes its total-square
/// part in degree |monomial| + i).
pub fn sq(i: usize, x: &F2Element) -> F2Element {
    let ring = x.ring().clone();
    let mut out = F2Element::zero(&ring);
    for mono in x.monomial_ids() {
        let d = ring.monomial_degree(mono);
        let single = F2Element::from_monomial_ids(&ring, [mono]);
        out = out.add(&total_square(&single).homogeneous_part(d + i));
    }
    out
}

/// Milnor primitive Q₁ = Sq²Sq¹ + Sq³.
pub fn milnor_q1(x: &F2Element) -> F2Element {
    sq(2, &sq(1, x)).add(&sq(3, x))
}

//! Twisted Atiyah-Hirzebruch differentials and E∞ pages.
//!
//! The fiber direction is 2-periodic from the start (Bott periodicity is
//! an input assumption), so a page is indexed by the base degree alone and
//! K-groups are read off by total parity. d3 is the only differential
//! computed; the engine asserts collapse at E4 only when every higher
//! differential has zero source or zero target, and errors otherwise.

use std::sync::Arc;

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::f2ring::{F2Element, F2Ring};
use crate::snf::{self, homology_at, Matrix};
use crate::steenrod::{milnor_q1, sq};

/// d₃(x) = Q₁(x) + x ∪ h for the mod-2 (Morava K(1)) spectral sequence.
pub fn twisted_d3_mod2(x: &F2Element, h: &F2Element) -> Result<F2Element> {
    if !h.is_zero() && h.degree() != Some(3) {
        return Err(Error::DegreeMismatch(
            "twist class must be homogeneous of degree 3".into(),
        ));
    }
    Ok(milnor_q1(x).add(&x.mul(h)))
}

/// The mod-2 twisted AHSS page data.
#[derive(Debug)]
pub struct MoravaPage {
    /// dim E3 per base degree
    pub e3_dims: Vec<usize>,
    /// dim E4 = E∞ per base degree
    pub e4_dims: Vec<usize>,
    /// total dimension in even total degree: K(1)⁰
    pub even: usize,
    /// total dimension in odd total degree: K(1)¹
    pub odd: usize,
}

/// Runs the mod-2 twisted AHSS on a finite-dimensional F2 ring with twist
/// `h`, verifying d3² = 0 and the collapse condition.
pub fn ahss_mod2(ring: &Arc<F2Ring>, h: &F2Element) -> Result<MoravaPage> {
    let top = ring.top_degree();
    // d3 on every basis monomial, verified square-zero
    let d3_of: Vec<F2Element> = (0..ring.monomial_count())
        .map(|id| twisted_d3_mod2(&F2Element::from_monomial_ids(ring, [id]), h))
        .collect::<Result<_>>()?;
    for (id, image) in d3_of.iter().enumerate() {
        let mut dd = F2Element::zero(ring);
        for m in image.monomial_ids() {
            dd = dd.add(&d3_of[m]);
        }
        if !dd.is_zero() {
            return Err(Error::D3NotSquareZero(ring.monomial_degree(id)));
        }
    }
    // rank of d3 per source degree
    let rank_from: Vec<usize> = (0..=top)
        .map(|d| {
            let src = ring.basis_in_degree(d);
            let dst = ring.basis_in_degree(d + 3);
            if src.is_empty() || dst.is_empty() {
                return 0;
            }
            let cols: Vec<Vec<bool>> = src
                .iter()
                .map(|&id| {
                    dst.iter()
                        .map(|&t| d3_of[id].monomial_ids().any(|m| m == t))
                        .collect()
                })
                .collect();
            f2_rank(cols)
        })
        .collect();
    let e3_dims: Vec<usize> = (0..=top).map(|d| ring.basis_in_degree(d).len()).collect();
    let e4_dims: Vec<usize> = (0..=top)
        .map(|d| {
            let dim = e3_dims[d];
            let out = rank_from[d];
            let inc = if d >= 3 { rank_from[d - 3] } else { 0 };
            dim - out - inc
        })
        .collect();
    // Euler characteristic is preserved by taking homology
    let euler = |dims: &[usize]| -> i64 {
        dims.iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    };
    if euler(&e3_dims) != euler(&e4_dims) {
        return Err(Error::Invalid("Euler characteristic changed".into()));
    }
    assert_collapse(&e4_dims.iter().map(|&n| n > 0).collect::<Vec<_>>())?;
    let even = e4_dims.iter().step_by(2).sum();
    let odd = e4_dims.iter().skip(1).step_by(2).sum();
    Ok(MoravaPage {
        e3_dims,
        e4_dims,
        even,
        odd,
    })
}

fn f2_rank(mut cols: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    let rows = cols.first().map(|c| c.len()).unwrap_or(0);
    let mut used = vec![false; cols.len()];
    for r in 0..rows {
        if let Some(p) = (0..cols.len()).find(|&c| !used[c] && cols[c][r]) {
            used[p] = true;
            rank += 1;
            let pivot = cols[p].clone();
            for (c, col) in cols.iter_mut().enumerate() {
                if c != p && !used[c] && col[r] {
                    for (x, y) in col.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
        }
    }
    rank
}

/// After E4, the remaining differentials jump by an odd step r ≥ 5; the
/// page collapses when each such differential has zero source or target.
fn assert_collapse(nonzero: &[bool]) -> Result<()> {
    let top = nonzero.len();
    let mut r = 5;
    while r < top {
        for d in 0..top {
            if d + r < top && nonzero[d] && nonzero[d + r] {
                return Err(Error::CollapseNotForced { r });
            }
        }
        r += 2;
    }
    Ok(())
}

/// A named integral generator of one cohomology degree; order 0 means a
/// free generator.
#[derive(Debug, Clone)]
pub struct IntegralGenerator {
    pub name: String,
    pub degree: usize,
    pub order: i128,
}

/// Integral cohomology presented by generators, with the mod-2 reduction
/// map into an F2 ring and an optional explicit Bockstein table.
/// The twisted integral d3 = β ∘ Sq² ∘ r + (· ∪ α) is evaluated through
/// these tables.
#[derive(Debug)]
pub struct IntegralSpaceData {
    pub name: String,
    pub f2: Arc<F2Ring>,
    pub generators: Vec<IntegralGenerator>,
    /// r(generator) in the F2 ring, degree-preserving
    pub reduction: Vec<F2Element>,
    /// explicit Bockstein entries (class, integral coefficient vector);
    /// when empty the Bockstein is derived from r and Sq¹
    pub bockstein: Vec<(F2Element, Vec<i128>)>,
}

impl IntegralSpaceData {
    pub fn validate(&self) -> Result<()> {
        if self.reduction.len() != self.generators.len() {
            return Err(Error::InconsistentTables(
                "one reduction entry per generator required".into(),
            ));
        }
        for (g, r) in self.generators.iter().zip(&self.reduction) {
            if !r.is_zero() && r.degree() != Some(g.degree) {
                return Err(Error::InconsistentTables(format!(
                    "reduction of {} does not preserve degree",
                    g.name
                )));
            }
        }
        for (class, combo) in &self.bockstein {
            if combo.len() != self.generators.len() {
                return Err(Error::InconsistentTables("Bockstein combo length".into()));
            }
            let Some(d) = class.degree() else {
                return Err(Error::InconsistentTables(
                    "Bockstein entries must be homogeneous".into(),
                ));
            };
            let mut reduced = F2Element::zero(&self.f2);
            for (c, (g, r)) in combo
                .iter()
                .zip(self.generators.iter().zip(&self.reduction))
            {
                if g.degree != d + 1 && *c != 0 {
                    return Err(Error::InconsistentTables(
                        "Bockstein must raise degree by one".into(),
                    ));
                }
                if c % 2 != 0 {
                    reduced = reduced.add(r);
                }
            }
            if reduced != sq(1, class) {
                return Err(Error::InconsistentTables(format!(
                    "Bockstein entry for {class} does not reduce to Sq¹"
                )));
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> usize {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn generators_in_degree(&self, d: usize) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| self.generators[i].degree == d)
            .collect()
    }

    /// Finds the unique 2-torsion integral class of the given degree whose
    /// reduction equals `m` (coefficients over order-2 generators).
    fn lift_torsion(&self, m: &F2Element, degree: usize) -> Result<Vec<i128>> {
        let mut coeffs = vec![0i128; self.generators.len()];
        if m.is_zero() {
            return Ok(coeffs);
        }
        let indices: Vec<usize> = self
            .generators_in_degree(degree)
            .into_iter()
            .filter(|&i| self.generators[i].order == 2)
            .collect();
        // solve Σ c_i r(gen_i) = m over F2 by Gaussian elimination
        let monos: Vec<usize> = self.f2.basis_in_degree(degree).to_vec();
        let mut rows: Vec<Vec<bool>> = monos
            .iter()
            .map(|&mm| {
                indices
                    .iter()
                    .map(|&i| self.reduction[i].monomial_ids().any(|id| id == mm))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<bool> = monos
            .iter()
            .map(|&mm| m.monomial_ids().any(|id| id == mm))
            .collect();
        let ncols = indices.len();
        let mut pivot_of_col = vec![usize::MAX; ncols];
        let mut r = 0;
        for c in 0..ncols {
            if let Some(pr) = (r..rows.len()).find(|&pr| rows[pr][c]) {
                rows.swap(r, pr);
                rhs.swap(r, pr);
                for i in 0..rows.len() {
                    if i != r && rows[i][c] {
                        let (head, tail) = if i < r {
                            let (a, b) = rows.split_at_mut(r);
                            (&mut a[i], &mut b[0])
                        } else {
                            let (a, b) = rows.split_at_mut(i);
                            (&mut b[0], &mut a[r])
                        };
                        for (x, y) in head.iter_mut().zip(tail.iter()) {
                            *x ^= y;
                        }
                        let v = rhs[r];
                        rhs[i] ^= v;
                    }
                }
                pivot_of_col[c] = r;
                r += 1;
            }
        }
        // consistency: remaining rhs rows must be zero
        if rhs[r..].iter().any(|&leftover| leftover) {
            return Err(Error::InconsistentTables(format!(
                "no 2-torsion lift of {m} in degree {degree}"
            )));
        }
        for (c, &pr) in pivot_of_col.iter().enumerate() {
            if pr != usize::MAX && rhs[pr] {
                coeffs[indices[c]] = 1;
            }
        }
        Ok(coeffs)
    }

    /// β(m): explicit table entry when available, otherwise the lift of
    /// Sq¹(m) through r.
    fn beta(&self, m: &F2Element, degree: usize) -> Result<Vec<i128>> {
        if m.is_zero() {
            return Ok(vec![0; self.generators.len()]);
        }
        for (class, combo) in &self.bockstein {
            if class == m {
                return Ok(combo.clone());
            }
        }
        self.lift_torsion(&sq(1, m), degree + 1)
    }

    /// d3 matrix from degree-d generators to degree-(d+3) generators,
    /// with α given as integral coefficients over degree-3 generators.
    fn d3_matrix(&self, d: usize, alpha: &[i128]) -> Result<Matrix> {
        let src = self.generators_in_degree(d);
        let dst = self.generators_in_degree(d + 3);
        let mut m = snf::zeros(dst.len(), src.len());
        // r(α)
        let mut r_alpha = F2Element::zero(&self.f2);
        for (i, &c) in alpha.iter().enumerate() {
            if c % 2 != 0 {
                r_alpha = r_alpha.add(&self.reduction[i]);
            }
        }
        for (col, &gi) in src.iter().enumerate() {
            let rx = &self.reduction[gi];
            // torsion part: β(Sq² r(x)) + lift of r(x)·r(α)
            let part1 = self.beta(&sq(2, rx), d + 2)?;
            let cup = rx.mul(&r_alpha);
            let part2 = self.lift_torsion(&cup, d + 3)?;
            for (row, &di) in dst.iter().enumerate() {
                m[row][col] = (part1[di] + part2[di]).rem_euclid(2);
            }
        }
        Ok(m)
    }
}

/// The integral twisted AHSS page: E3, E4 = E∞ per degree, and filtration
/// quotients per parity listed deepest (highest degree) first.
#[derive(Debug)]
pub struct IntegralPage {
    pub e3: Vec<AbelianGroup>,
    pub e4: Vec<AbelianGroup>,
    /// E∞ in even degrees, deepest first
    pub even_quotients: Vec<AbelianGroup>,
    /// E∞ in odd degrees, deepest first
    pub odd_quotients: Vec<AbelianGroup>,
}

/// Runs the integral twisted AHSS with twist class `alpha` (integral
/// coefficients over the degree-3 generators).
pub fn ahss_integral(space: &IntegralSpaceData, alpha: &[i128]) -> Result<IntegralPage> {
    space.validate()?;
    if alpha.len() != space.generators.len() {
        return Err(Error::Invalid(
            "twist class must be given as coefficients over all generators".into(),
        ));
    }
    for (i, &c) in alpha.iter().enumerate() {
        if c != 0 && space.generators[i].degree != 3 {
            return Err(Error::DegreeMismatch(
                "twist class must be concentrated in degree 3".into(),
            ));
        }
    }
    let top = space.top_degree();
    let orders_in = |d: usize| -> Vec<i128> {
        space
            .generators_in_degree(d)
            .iter()
            .map(|&i| space.generators[i].order)
            .collect()
    };
    let d3: Vec<Matrix> = (0..=top)
        .map(|d| space.d3_matrix(d, alpha))
        .collect::<Result<_>>()?;
    // d3 ∘ d3 = 0 modulo the target orders
    for d in 0..=top {
        if d + 6 > top {
            continue;
        }
        let comp = snf::mat_mul(&d3[d + 3], &d3[d]);
        let orders = orders_in(d + 6);
        for (row, &o) in orders.iter().enumerate() {
            for v in &comp[row] {
                let bad = if o == 0 { *v != 0 } else { v % o != 0 };
                if bad {
                    return Err(Error::D3NotSquareZero(d));
                }
            }
        }
    }
    let e3: Vec<AbelianGroup> = (0..=top)
        .map(|d| {
            AbelianGroup::from_orders(
                0,
                &orders_in(d).iter().map(|&o| o as u64).collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut e4 = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let left = if d >= 3 { orders_in(d - 3) } else { Vec::new() };
        let g = if d >= 3 {
            d3[d - 3].clone()
        } else {
            snf::zeros(orders_in(d).len(), 0)
        };
        let right = if d + 3 <= top {
            orders_in(d + 3)
        } else {
            Vec::new()
        };
        let f = if d + 3 <= top {
            d3[d].clone()
        } else {
            snf::zeros(0, orders_in(d).len())
        };
        e4.push(homology_at(&left, &g, &orders_in(d), &f, &right)?);
    }
    assert_collapse(&e4.iter().map(|g| !g.is_zero()).collect::<Vec<_>>())?;
    let mut even_quotients = Vec::new();
    let mut odd_quotients = Vec::new();
    for d in (0..=top).rev() {
        if d % 2 == 0 {
            even_quotients.push(e4[d].clone());
        } else {
            odd_quotients.push(e4[d].clone());
        }
    }
    Ok(IntegralPage {
        e3,
        e4,
        even_quotients,
        odd_quotients,
    })
}

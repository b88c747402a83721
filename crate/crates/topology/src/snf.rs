//! Integer matrix utilities: Smith normal form with transforms, kernels,
//! exact solving, and homology of maps between presented abelian groups.

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i128>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            let av = a[i][k];
            if av == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += av * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Matrix, v: &[i128]) -> Vec<i128> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(&x, &y)| x * y).sum())
        .collect()
}

/// Smith normal form `d = s · m · t` with unimodular transforms; `s_inv`
/// satisfies `s_inv · s = 1`.
pub struct Smith {
    pub d: Matrix,
    pub s: Matrix,
    pub s_inv: Matrix,
    pub t: Matrix,
    pub rank: usize,
}

pub fn smith_normal_form(m: &Matrix) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d = m.clone();
    let mut s = identity(rows);
    let mut s_inv = identity(rows);
    let mut t = identity(cols);

    let swap_rows = |d: &mut Matrix, s: &mut Matrix, si: &mut Matrix, a: usize, b: usize| {
        d.swap(a, b);
        s.swap(a, b);
        for row in si.iter_mut() {
            row.swap(a, b);
        }
    };
    let swap_cols = |d: &mut Matrix, t: &mut Matrix, a: usize, b: usize| {
        for row in d.iter_mut() {
            row.swap(a, b);
        }
        for row in t.iter_mut() {
            row.swap(a, b);
        }
    };
    // row_a -= q * row_b  (and the inverse bookkeeping on s_inv columns)
    let add_row = |d: &mut Matrix, s: &mut Matrix, si: &mut Matrix, a: usize, b: usize, q: i128| {
        for j in 0..d[0].len() {
            d[a][j] -= q * d[b][j];
        }
        for j in 0..s[0].len() {
            s[a][j] -= q * s[b][j];
        }
        for row in si.iter_mut() {
            row[b] += q * row[a];
        }
    };
    let add_col = |d: &mut Matrix, t: &mut Matrix, a: usize, b: usize, q: i128| {
        for row in d.iter_mut() {
            row[a] -= q * row[b];
        }
        for row in t.iter_mut() {
            row[a] -= q * row[b];
        }
    };
    let negate_row = |d: &mut Matrix, s: &mut Matrix, si: &mut Matrix, a: usize| {
        for v in d[a].iter_mut() {
            *v = -*v;
        }
        for v in s[a].iter_mut() {
            *v = -*v;
        }
        for row in si.iter_mut() {
            row[a] = -row[a];
        }
    };

    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        // find the minimal nonzero entry in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if d[i][j] != 0
                    && pivot
                        .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            swap_rows(&mut d, &mut s, &mut s_inv, k, pi);
        }
        if pj != k {
            swap_cols(&mut d, &mut t, k, pj);
        }
        if d[k][k] < 0 {
            negate_row(&mut d, &mut s, &mut s_inv, k);
        }
        let mut dirty = false;
        for i in k + 1..rows {
            if d[i][k] != 0 {
                let q = d[i][k].div_euclid(d[k][k]);
                add_row(&mut d, &mut s, &mut s_inv, i, k, q);
                if d[i][k] != 0 {
                    dirty = true;
                }
            }
        }
        for j in k + 1..cols {
            if d[k][j] != 0 {
                let q = d[k][j].div_euclid(d[k][k]);
                add_col(&mut d, &mut t, j, k, q);
                if d[k][j] != 0 {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // remainder left behind, re-pivot this block
        }
        // divisibility condition on the trailing block
        let mut fixed = true;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if d[i][j] % d[k][k] != 0 {
                    // fold row i into row k and retry
                    add_row(&mut d, &mut s, &mut s_inv, k, i, -1);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    let rank = (0..n).take_while(|&i| d[i][i] != 0).count();
    Smith {
        d,
        s,
        s_inv,
        t,
        rank,
    }
}

/// Basis of the integer kernel of `m` (columns x with m·x = 0).
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<i128>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    if cols == 0 {
        return Vec::new();
    }
    if m.is_empty() {
        // zero map from Z^cols
        return (0..cols)
            .map(|j| {
                let mut v = vec![0; cols];
                v[j] = 1;
                v
            })
            .collect();
    }
    let snf = smith_normal_form(m);
    (snf.rank..cols)
        .map(|j| snf.t.iter().map(|row| row[j]).collect())
        .collect()
}

/// Solves m·x = b over the integers.
pub fn solve(m: &Matrix, b: &[i128]) -> Option<Vec<i128>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let snf = smith_normal_form(m);
    let sb = mat_vec(&snf.s, b);
    let mut y = vec![0i128; cols];
    for i in 0..rows {
        let dii = if i < cols { snf.d[i][i] } else { 0 };
        if dii != 0 {
            if sb[i] % dii != 0 {
                return None;
            }
            y[i] = sb[i] / dii;
        } else if sb[i] != 0 {
            return None;
        }
    }
    Some(mat_vec(&snf.t, &y))
}

/// A finitely presented abelian group `⊕ Z/orders[i]` (order 0 = Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presented {
    pub orders: Vec<i128>,
}

impl Presented {
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn to_abelian(&self) -> AbelianGroup {
        let orders: Vec<u64> = self.orders.iter().map(|&o| o as u64).collect();
        AbelianGroup::from_orders(0, &orders)
    }
}

/// Checks that the coordinate matrix `f` defines a homomorphism
/// `⊕Z/src[i] → ⊕Z/dst[j]` (each column killed by the source order).
pub fn check_well_defined(f: &Matrix, src: &[i128], dst: &[i128]) -> Result<()> {
    let rows = dst.len();
    let cols = src.len();
    if f.len() != rows || (rows > 0 && f.iter().any(|r| r.len() != cols)) {
        return Err(Error::Invalid("map matrix has wrong shape".into()));
    }
    for (i, &o) in src.iter().enumerate() {
        if o == 0 {
            continue;
        }
        for (j, &d) in dst.iter().enumerate() {
            let v = o * f[j][i];
            if d == 0 {
                if v != 0 {
                    return Err(Error::Invalid(format!(
                        "map not well defined at generator {i}"
                    )));
                }
            } else if v % d != 0 {
                return Err(Error::Invalid(format!(
                    "map not well defined at generator {i}"
                )));
            }
        }
    }
    Ok(())
}

/// Homology ker(f)/im(g) of  left --g--> mid --f--> right, all presented
/// groups, matrices in generator coordinates.
pub fn homology_at(
    left: &[i128],
    g: &Matrix,
    mid: &[i128],
    f: &Matrix,
    right: &[i128],
) -> Result<AbelianGroup> {
    let n = mid.len();
    if n == 0 {
        return Ok(AbelianGroup::zero());
    }
    check_well_defined(g, left, mid)?;
    check_well_defined(f, mid, right)?;

    // lattice L = { x in Z^n : f(x) = 0 in the presented target }
    // solved as ker [ f | diag(right) ] projected to the x block
    let m_right = right.len();
    let mut ext = zeros(m_right, n + m_right);
    for i in 0..m_right {
        for j in 0..n {
            ext[i][j] = f[i][j];
        }
        ext[i][n + i] = right[i];
    }
    let mut gens: Vec<Vec<i128>> = if m_right == 0 {
        (0..n)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                v
            })
            .collect()
    } else {
        kernel_basis(&ext)
            .into_iter()
            .map(|v| v[..n].to_vec())
            .collect()
    };
    // the source relations always lie in L
    for (j, &o) in mid.iter().enumerate() {
        if o != 0 {
            let mut v = vec![0; n];
            v[j] = o;
            gens.push(v);
        }
    }
    // lattice basis for L via SNF: im(W) = s_inv · im(d)
    let w: Matrix = (0..n)
        .map(|i| gens.iter().map(|v| v[i]).collect())
        .collect();
    let snf_w = smith_normal_form(&w);
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for j in 0..snf_w.rank {
        let djj = snf_w.d[j][j];
        basis.push((0..n).map(|i| snf_w.s_inv[i][j] * djj).collect());
    }
    if basis.is_empty() {
        return Ok(AbelianGroup::zero());
    }
    let u: Matrix = (0..n)
        .map(|i| basis.iter().map(|b| b[i]).collect())
        .collect();

    // relations: images of g and the source orders, expressed in the basis
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for (j, &o) in left.iter().enumerate() {
        let _ = o;
        let col: Vec<i128> = (0..n).map(|i| g[i][j]).collect();
        let c = solve(&u, &col)
            .ok_or_else(|| Error::Invalid("image of g escapes ker(f); not a complex".into()))?;
        relations.push(c);
    }
    for (j, &o) in mid.iter().enumerate() {
        if o != 0 {
            let mut col = vec![0; n];
            col[j] = o;
            let c = solve(&u, &col).ok_or_else(|| {
                Error::Invalid("order relation escapes the kernel lattice".into())
            })?;
            relations.push(c);
        }
    }
    let r = basis.len();
    let rel: Matrix = if relations.is_empty() {
        zeros(r, 0)
    } else {
        (0..r)
            .map(|i| relations.iter().map(|c| c[i]).collect())
            .collect()
    };
    let snf_rel = smith_normal_form(&rel);
    let mut orders = Vec::with_capacity(r);
    for i in 0..r {
        let d = if i < snf_rel.rank { snf_rel.d[i][i] } else { 0 };
        orders.push(d.unsigned_abs() as u64);
    }
    Ok(AbelianGroup::from_orders(0, &orders))
}

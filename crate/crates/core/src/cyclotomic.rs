//! Exact arithmetic in cyclotomic fields Q(ζ_e).
//!
//! Values are stored as rational coefficient vectors over the power basis
//! `ζ_e^0 .. ζ_e^{e-1}` and kept reduced modulo the e-th cyclotomic
//! polynomial, so the first φ(e) coordinates carry the canonical form and
//! the rest are zero. Equality across different orders lifts both sides to
//! the lcm order first.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i64>;

/// Coefficients of the e-th cyclotomic polynomial (monic, degree φ(e)),
/// cached globally.
fn cyclotomic_polynomial(e: usize) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&e) {
        return p.clone();
    }
    // (x^e - 1) divided by Φ_d for every proper divisor d of e
    let mut poly = vec![0i64; e + 1];
    poly[0] = -1;
    poly[e] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            poly = divide_exact(&poly, &phi_d);
        }
    }
    let arc = Arc::new(poly);
    cache.lock().unwrap().insert(e, arc.clone());
    arc
}

/// Exact division of integer polynomials, `q` monic.
fn divide_exact(p: &[i64], q: &[i64]) -> Vec<i64> {
    let dq = q.len() - 1;
    let mut rem = p.to_vec();
    let dp = rem.len() - 1;
    let mut quot = vec![0i64; dp - dq + 1];
    for k in (dq..=dp).rev() {
        let c = rem[k];
        if c != 0 {
            quot[k - dq] = c;
            for j in 0..=dq {
                rem[k - dq + j] -= c * q[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "non-exact polynomial division");
    quot
}

/// An element of Z\[ζ_e\] ⊗ Q in canonical reduced form.
#[derive(Clone)]
pub struct Cyclotomic {
    order: usize,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: usize, r: Rational) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = r;
        c
    }

    pub fn from_integer(order: usize, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(n))
    }

    /// `ζ_order^k`.
    pub fn root_of_unity(order: usize, k: usize) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[k % order] = Rational::one();
        c.reduce();
        c
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let e = self.order;
        let phi = cyclotomic_polynomial(e);
        let d = phi.len() - 1;
        for k in (d..e).rev() {
            let c = self.coeffs[k];
            if !c.is_zero() {
                self.coeffs[k] = Rational::zero();
                for j in 0..d {
                    self.coeffs[k - d + j] -= c * Rational::from_integer(phi[j]);
                }
            }
        }
    }

    /// Rewrites the value in Q(ζ_to), `order | to`.
    pub fn lift(&self, to: usize) -> Self {
        assert!(
            to.is_multiple_of(self.order),
            "target order must be a multiple"
        );
        if to == self.order {
            return self.clone();
        }
        let f = to / self.order;
        let mut out = Self::zero(to);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[k * f] = *c;
            }
        }
        out.reduce();
        out
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = num_integer::lcm(self.order, other.order);
        (self.lift(l), other.lift(l))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -*x;
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let e = a.order;
        let mut prod = vec![Rational::zero(); e];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[(i + j) % e] += x * y;
                }
            }
        }
        let mut out = Cyclotomic {
            order: e,
            coeffs: prod,
        };
        out.reduce();
        out
    }

    pub fn scale(&self, r: Rational) -> Self {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x *= r;
        }
        a
    }

    /// Galois action ζ ↦ ζ^t, `gcd(t, order) = 1`.
    pub fn galois(&self, t: usize) -> Self {
        let e = self.order;
        assert_eq!(num_integer::gcd(t, e), 1, "galois exponent must be coprime");
        let mut out = Self::zero(e);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[(k * t) % e] += c;
            }
        }
        out.reduce();
        out
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            self.clone()
        } else {
            self.galois(self.order - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True if the value lies in Q (canonical form has only the constant
    /// coordinate).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// If the value is exactly `ζ_order^k` for some k, returns k.
    pub fn as_root_exponent(&self) -> Option<usize> {
        (0..self.order).find(|&k| *self == Self::root_of_unity(self.order, k))
    }

    pub fn to_complex(&self) -> Complex64 {
        let e = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let r = *c.numer() as f64 / *c.denom() as f64;
                Complex64::from_polar(1.0, TAU * k as f64 / e) * r
            })
            .sum()
    }

    /// Deterministic total order at a common cyclotomic order; used only to
    /// stabilize character orderings.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let (a, b) = self.common(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}
impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z{}^{k}", self.order)?;
            } else {
                write!(f, "{mag}*z{}^{k}", self.order)?;
            }
        }
        Ok(())
    }
}

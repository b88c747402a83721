//! Truncated polynomial rings over F2 and their elements.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: usize,
    /// truncation exponent t: g^t = 0
    pub truncation: u32,
}

/// `F2[g_1, …, g_k] / (g_i^{t_i})`, with a fixed monomial basis enumerated
/// by degree.
#[derive(Debug)]
pub struct F2Ring {
    generators: Vec<GeneratorSpec>,
    monomials: Vec<Vec<u32>>,
    by_degree: Vec<Vec<usize>>,
}

impl PartialEq for F2Ring {
    fn eq(&self, other: &Self) -> bool {
        self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a.degree == b.degree && a.truncation == b.truncation)
    }
}
impl Eq for F2Ring {}

impl F2Ring {
    pub fn new(generators: Vec<GeneratorSpec>) -> Result<Arc<Self>> {
        for g in &generators {
            if g.truncation < 2 {
                return Err(Error::Invalid(format!(
                    "generator {} needs truncation ≥ 2",
                    g.name
                )));
            }
            if g.degree == 0 {
                return Err(Error::Invalid(
                    "generators must have positive degree".into(),
                ));
            }
        }
        // enumerate all monomials below truncation
        let mut monomials = vec![Vec::new()];
        for (i, g) in generators.iter().enumerate() {
            let mut next = Vec::new();
            for m in &monomials {
                for e in 0..g.truncation {
                    let mut m2 = m.clone();
                    m2.push(e);
                    next.push(m2);
                }
            }
            monomials = next;
            let _ = i;
        }
        let deg = |m: &[u32]| -> usize {
            m.iter()
                .zip(&generators)
                .map(|(&e, g)| e as usize * g.degree)
                .sum()
        };
        monomials.sort_by(|a, b| deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)));
        let top = monomials.last().map(|m| deg(m)).unwrap_or(0);
        let mut by_degree = vec![Vec::new(); top + 1];
        for (i, m) in monomials.iter().enumerate() {
            by_degree[deg(m)].push(i);
        }
        Ok(Arc::new(F2Ring {
            generators,
            monomials,
            by_degree,
        }))
    }

    /// `F2[x]/(x^t)` with `|x| = degree`.
    pub fn truncated_single(name: &str, degree: usize, truncation: u32) -> Arc<Self> {
        F2Ring::new(vec![GeneratorSpec {
            name: name.into(),
            degree,
            truncation,
        }])
        .expect("valid single-generator ring")
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn monomial_exponents(&self, id: usize) -> &[u32] {
        &self.monomials[id]
    }

    pub fn monomial_degree(&self, id: usize) -> usize {
        self.monomials[id]
            .iter()
            .zip(&self.generators)
            .map(|(&e, g)| e as usize * g.degree)
            .sum()
    }

    /// Basis monomial ids in one degree.
    pub fn basis_in_degree(&self, degree: usize) -> &[usize] {
        self.by_degree
            .get(degree)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn monomial_id(&self, exponents: &[u32]) -> Option<usize> {
        if exponents.len() != self.generators.len() {
            return None;
        }
        if exponents
            .iter()
            .zip(&self.generators)
            .any(|(&e, g)| e >= g.truncation)
        {
            return None;
        }
        self.monomials.iter().position(|m| m == exponents)
    }

    pub fn monomial_name(&self, id: usize) -> String {
        let m = &self.monomials[id];
        if m.iter().all(|&e| e == 0) {
            return "1".into();
        }
        m.iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A sum of basis monomials (coefficients in F2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F2Element {
    ring: Arc<F2Ring>,
    monomials: BTreeSet<usize>,
}

impl F2Element {
    pub fn zero(ring: &Arc<F2Ring>) -> Self {
        F2Element {
            ring: ring.clone(),
            monomials: BTreeSet::new(),
        }
    }

    pub fn one(ring: &Arc<F2Ring>) -> Self {
        Self::from_exponents(ring, &vec![0; ring.generators.len()]).expect("unit monomial")
    }

    pub fn generator(ring: &Arc<F2Ring>, index: usize) -> Self {
        let mut exps = vec![0u32; ring.generators.len()];
        exps[index] = 1;
        Self::from_exponents(ring, &exps).expect("generator monomial")
    }

    pub fn generator_by_name(ring: &Arc<F2Ring>, name: &str) -> Result<Self> {
        let idx = ring
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
        Ok(Self::generator(ring, idx))
    }

    pub fn from_exponents(ring: &Arc<F2Ring>, exponents: &[u32]) -> Result<Self> {
        let id = ring
            .monomial_id(exponents)
            .ok_or_else(|| Error::Invalid(format!("monomial {exponents:?} outside the ring")))?;
        Ok(F2Element {
            ring: ring.clone(),
            monomials: BTreeSet::from([id]),
        })
    }

    pub fn from_monomial_ids(ring: &Arc<F2Ring>, ids: impl IntoIterator<Item = usize>) -> Self {
        F2Element {
            ring: ring.clone(),
            monomials: ids.into_iter().collect(),
        }
    }

    pub fn ring(&self) -> &Arc<F2Ring> {
        &self.ring
    }

    pub fn monomial_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.monomials.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "elements of different rings");
        let monomials = self
            .monomials
            .symmetric_difference(&other.monomials)
            .copied()
            .collect();
        F2Element {
            ring: self.ring.clone(),
            monomials,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.ring == other.ring, "elements of different rings");
        let ring = &self.ring;
        let mut acc: BTreeSet<usize> = BTreeSet::new();
        for &a in &self.monomials {
            for &b in &other.monomials {
                let ea = ring.monomial_exponents(a);
                let eb = ring.monomial_exponents(b);
                let sum: Vec<u32> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                if let Some(id) = ring.monomial_id(&sum) {
                    if !acc.remove(&id) {
                        acc.insert(id);
                    }
                }
            }
        }
        F2Element {
            ring: self.ring.clone(),
            monomials: acc,
        }
    }

    /// Degree when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.monomials.iter().map(|&m| self.ring.monomial_degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// The part of the element in one degree.
    pub fn homogeneous_part(&self, degree: usize) -> Self {
        let monomials = self
            .monomials
            .iter()
            .copied()
            .filter(|&m| self.ring.monomial_degree(m) == degree)
            .collect();
        F2Element {
            ring: self.ring.clone(),
            monomials,
        }
    }
}

impl fmt::Display for F2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = self
            .monomials
            .iter()
            .map(|&m| self.ring.monomial_name(m))
            .collect();
        write!(f, "{}", names.join(" + "))
    }
}

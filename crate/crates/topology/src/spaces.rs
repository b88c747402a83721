//! Built-in space data and the JSON space-file format.

use std::sync::Arc;

use serde::Deserialize;

use crate::abelian::{AbelianGroup, KTheory};
use crate::ahss::{IntegralGenerator, IntegralSpaceData};
use crate::error::{Error, Result};
use crate::f2ring::{F2Element, F2Ring, GeneratorSpec};

/// H*(RP² × RP²; F2) = `F2[x,y]/(x³,y³)`.
pub fn rp2xrp2_f2_ring() -> Arc<F2Ring> {
    F2Ring::new(vec![
        GeneratorSpec {
            name: "x".into(),
            degree: 1,
            truncation: 3,
        },
        GeneratorSpec {
            name: "y".into(),
            degree: 1,
            truncation: 3,
        },
    ])
    .expect("projective plane product ring")
}

/// The mod-2 reduction x²y + xy² of the nontrivial twist.
pub fn rp2xrp2_twist_f2() -> F2Element {
    let ring = rp2xrp2_f2_ring();
    let x = F2Element::generator(&ring, 0);
    let y = F2Element::generator(&ring, 1);
    x.mul(&x).mul(&y).add(&x.mul(&y).mul(&y))
}

/// H*(RP²; F2) = `F2[x]/(x³)`.
pub fn rp2_f2_ring() -> Arc<F2Ring> {
    F2Ring::truncated_single("x", 1, 3)
}

/// H*(S²; F2) = `F2[s]/(s²)`, |s| = 2.
pub fn s2_f2_ring() -> Arc<F2Ring> {
    F2Ring::truncated_single("s", 2, 2)
}

/// Integral cohomology of RP² × RP² with its mod-2 reduction table:
/// Z in degree 0; (Z2)² in degree 2 reducing to x², y²; Z2 in degree 3
/// reducing to x²y + xy²; Z2 in degree 4 reducing to x²y².
pub fn rp2xrp2_integral() -> IntegralSpaceData {
    let f2 = rp2xrp2_f2_ring();
    let el = |exps: &[u32]| F2Element::from_exponents(&f2, exps).expect("catalog monomial");
    let generators = vec![
        IntegralGenerator {
            name: "u".into(),
            degree: 0,
            order: 0,
        },
        IntegralGenerator {
            name: "x2".into(),
            degree: 2,
            order: 2,
        },
        IntegralGenerator {
            name: "y2".into(),
            degree: 2,
            order: 2,
        },
        IntegralGenerator {
            name: "z3".into(),
            degree: 3,
            order: 2,
        },
        IntegralGenerator {
            name: "w4".into(),
            degree: 4,
            order: 2,
        },
    ];
    let reduction = vec![
        F2Element::one(&f2),
        el(&[2, 0]),
        el(&[0, 2]),
        el(&[2, 1]).add(&el(&[1, 2])),
        el(&[2, 2]),
    ];
    IntegralSpaceData {
        name: "rp2xrp2".into(),
        f2,
        generators,
        reduction,
        bockstein: Vec::new(),
    }
}

/// The nontrivial twist α = z3 as integral coefficients.
pub fn rp2xrp2_twist_integral(space: &IntegralSpaceData) -> Vec<i128> {
    space
        .generators
        .iter()
        .map(|g| if g.name == "z3" { 1 } else { 0 })
        .collect()
}

/// Integral cohomology of RP²: Z in degree 0, Z2 in degree 2.
pub fn rp2_integral() -> IntegralSpaceData {
    let f2 = rp2_f2_ring();
    let generators = vec![
        IntegralGenerator {
            name: "u".into(),
            degree: 0,
            order: 0,
        },
        IntegralGenerator {
            name: "t2".into(),
            degree: 2,
            order: 2,
        },
    ];
    let reduction = vec![
        F2Element::one(&f2),
        F2Element::from_exponents(&f2, &[2]).expect("x^2"),
    ];
    IntegralSpaceData {
        name: "rp2".into(),
        f2,
        generators,
        reduction,
        bockstein: Vec::new(),
    }
}

/// Integral cohomology of S²: Z in degrees 0 and 2.
pub fn s2_integral() -> IntegralSpaceData {
    let f2 = s2_f2_ring();
    let generators = vec![
        IntegralGenerator {
            name: "u".into(),
            degree: 0,
            order: 0,
        },
        IntegralGenerator {
            name: "h2".into(),
            degree: 2,
            order: 0,
        },
    ];
    let reduction = vec![
        F2Element::one(&f2),
        F2Element::from_exponents(&f2, &[1]).expect("s"),
    ];
    IntegralSpaceData {
        name: "s2".into(),
        f2,
        generators,
        reduction,
        bockstein: Vec::new(),
    }
}

/// K*(RP²) = (Z ⊕ Z2, 0).
pub fn k_rp2() -> KTheory {
    KTheory::new(AbelianGroup::from_orders(1, &[2]), AbelianGroup::zero())
}

/// K*(S²) = (Z², 0).
pub fn k_s2() -> KTheory {
    KTheory::new(AbelianGroup::free(2), AbelianGroup::zero())
}

/// K*(point) = (Z, 0).
pub fn k_point() -> KTheory {
    KTheory::new(AbelianGroup::free(1), AbelianGroup::zero())
}

/// K-theory catalog lookup for the Künneth command.
pub fn k_theory_by_name(name: &str) -> Result<KTheory> {
    match name {
        "rp2" => Ok(k_rp2()),
        "s2" => Ok(k_s2()),
        "point" | "pt" => Ok(k_point()),
        _ => Err(Error::Parse(format!(
            "unknown K-theory catalog entry `{name}`"
        ))),
    }
}

/// F2 cohomology ring catalog lookup.
pub fn f2_ring_by_name(name: &str) -> Result<Arc<F2Ring>> {
    match name {
        "rp2xrp2" => Ok(rp2xrp2_f2_ring()),
        "rp2" => Ok(rp2_f2_ring()),
        "s2" => Ok(s2_f2_ring()),
        _ => Err(Error::Parse(format!("unknown F2 ring `{name}`"))),
    }
}

/// Integral space catalog lookup.
pub fn integral_space_by_name(name: &str) -> Result<IntegralSpaceData> {
    match name {
        "rp2xrp2" => Ok(rp2xrp2_integral()),
        "rp2" => Ok(rp2_integral()),
        "s2" => Ok(s2_integral()),
        _ => Err(Error::Parse(format!("unknown integral space `{name}`"))),
    }
}

/// Parses an F2 class expression such as `x^2*y + x*y^2`, `1`, or `0`.
pub fn parse_f2_element(ring: &Arc<F2Ring>, expr: &str) -> Result<F2Element> {
    let expr = expr.trim();
    if expr == "0" {
        return Ok(F2Element::zero(ring));
    }
    let mut acc = F2Element::zero(ring);
    for term in expr.split('+') {
        let term = term.trim();
        if term == "1" {
            acc = acc.add(&F2Element::one(ring));
            continue;
        }
        let mut exps = vec![0u32; ring.generators().len()];
        for factor in term.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let idx = ring
                .generators()
                .iter()
                .position(|g| g.name == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            exps[idx] += power;
        }
        acc = acc.add(&F2Element::from_exponents(ring, &exps)?);
    }
    Ok(acc)
}

/// Parses an integral class expression: `0` or a `+`-separated list of
/// generator names with optional integer coefficients (`z3`, `2*z3`).
pub fn parse_integral_class(space: &IntegralSpaceData, expr: &str) -> Result<Vec<i128>> {
    let mut coeffs = vec![0i128; space.generators.len()];
    let expr = expr.trim();
    if expr == "0" {
        return Ok(coeffs);
    }
    for term in expr.split('+') {
        let term = term.trim();
        let (coeff, name) = match term.split_once('*') {
            Some((c, n)) => (
                c.trim()
                    .parse::<i128>()
                    .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?,
                n.trim(),
            ),
            None => (1, term),
        };
        let idx = space
            .generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Parse(format!("unknown integral generator `{name}`")))?;
        coeffs[idx] += coeff;
    }
    Ok(coeffs)
}

// ----------------------------------------------------------------------
// JSON space files
// ----------------------------------------------------------------------

#[derive(Debug, Deserialize)]
struct SpaceFile {
    name: String,
    f2_ring: F2RingFile,
    #[serde(default)]
    integral: Option<IntegralFile>,
}

#[derive(Debug, Deserialize)]
struct F2RingFile {
    generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Deserialize)]
struct IntegralFile {
    generators: Vec<IntegralGeneratorFile>,
    /// generator name -> list of monomial exponent vectors (mod-2 sum)
    reduction: std::collections::BTreeMap<String, Vec<Vec<u32>>>,
    #[serde(default)]
    bockstein: Vec<BocksteinEntry>,
}

#[derive(Debug, Deserialize)]
struct IntegralGeneratorFile {
    name: String,
    degree: usize,
    order: i128,
}

#[derive(Debug, Deserialize)]
struct BocksteinEntry {
    class: Vec<Vec<u32>>,
    image: std::collections::BTreeMap<String, i128>,
}

/// A space loaded from JSON: the F2 ring plus optional integral data.
pub struct LoadedSpace {
    pub name: String,
    pub f2: Arc<F2Ring>,
    pub integral: Option<IntegralSpaceData>,
}

pub fn parse_space_json(text: &str) -> Result<LoadedSpace> {
    let file: SpaceFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("space file: {e}")))?;
    let f2 = F2Ring::new(file.f2_ring.generators)?;
    let integral = match file.integral {
        None => None,
        Some(data) => {
            let generators: Vec<IntegralGenerator> = data
                .generators
                .iter()
                .map(|g| IntegralGenerator {
                    name: g.name.clone(),
                    degree: g.degree,
                    order: g.order,
                })
                .collect();
            let mut reduction = Vec::with_capacity(generators.len());
            for g in &generators {
                let monos = data.reduction.get(&g.name).ok_or_else(|| {
                    Error::Parse(format!("missing reduction entry for `{}`", g.name))
                })?;
                let mut el = F2Element::zero(&f2);
                for exps in monos {
                    el = el.add(&F2Element::from_exponents(&f2, exps)?);
                }
                reduction.push(el);
            }
            let mut bockstein = Vec::new();
            for entry in &data.bockstein {
                let mut class = F2Element::zero(&f2);
                for exps in &entry.class {
                    class = class.add(&F2Element::from_exponents(&f2, exps)?);
                }
                let mut combo = vec![0i128; generators.len()];
                for (name, coeff) in &entry.image {
                    let idx = generators
                        .iter()
                        .position(|g| &g.name == name)
                        .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
                    combo[idx] = *coeff;
                }
                bockstein.push((class, combo));
            }
            let space = IntegralSpaceData {
                name: file.name.clone(),
                f2: f2.clone(),
                generators,
                reduction,
                bockstein,
            };
            space.validate()?;
            Some(space)
        }
    };
    Ok(LoadedSpace {
        name: file.name,
        f2,
        integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_integral_data_validates() {
        let space = rp2xrp2_integral();
        space.validate().unwrap();
        assert_eq!(space.top_degree(), 4);
    }

    #[test]
    fn expression_parsing() {
        let ring = rp2xrp2_f2_ring();
        let h = parse_f2_element(&ring, "x^2*y + x*y^2").unwrap();
        assert_eq!(h, rp2xrp2_twist_f2());
        assert!(parse_f2_element(&ring, "q").is_err());
        let space = rp2xrp2_integral();
        let alpha = parse_integral_class(&space, "z3").unwrap();
        assert_eq!(alpha, rp2xrp2_twist_integral(&space));
        assert_eq!(parse_integral_class(&space, "0").unwrap(), vec![0; 5]);
    }

    #[test]
    fn space_file_roundtrip() {
        let json = r#"{
            "name": "rp2xrp2",
            "f2_ring": {"generators": [
                {"name": "x", "degree": 1, "truncation": 3},
                {"name": "y", "degree": 1, "truncation": 3}
            ]},
            "integral": {
                "generators": [
                    {"name": "u", "degree": 0, "order": 0},
                    {"name": "x2", "degree": 2, "order": 2},
                    {"name": "y2", "degree": 2, "order": 2},
                    {"name": "z3", "degree": 3, "order": 2},
                    {"name": "w4", "degree": 4, "order": 2}
                ],
                "reduction": {
                    "u": [[0,0]],
                    "x2": [[2,0]],
                    "y2": [[0,2]],
                    "z3": [[2,1],[1,2]],
                    "w4": [[2,2]]
                },
                "bockstein": [
                    {"class": [[1,1]], "image": {"z3": 1}}
                ]
            }
        }"#;
        let loaded = parse_space_json(json).unwrap();
        assert_eq!(loaded.name, "rp2xrp2");
        let integral = loaded.integral.unwrap();
        assert_eq!(integral.generators.len(), 5);
        // the explicit Bockstein entry β(xy) = z3 is consistent:
        // Sq¹(xy) = x²y + xy² = r(z3)
        integral.validate().unwrap();
    }
}

//! JSON input formats: group files and bundle files.
//!
//! A group file is `{"name": str, "kind": "permutation" | "cayley" |
//! "semidirect" | "catalog", ...}` with one-line image notation (1-based)
//! for permutations, a full table for `cayley`, nested group objects plus
//! explicit automorphism element maps for `semidirect`, and a `catalog`
//! field naming a built-in. Bundle files list orbits as stabilizer
//! generator sets with fiber characters given either as irreducible
//! multiplicities or as raw cyclotomic class values.

use std::sync::Arc;

use num_rational::Ratio;
use serde::Deserialize;
use serde_json::Value;

use crate::bundle::{EquivariantBundle, GSet};
use crate::catalog;
use crate::character::{character_table, Character};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, Subgroup};

#[derive(Debug, Deserialize)]
struct GroupFile {
    name: String,
    kind: String,
    #[serde(default)]
    degree: Option<usize>,
    #[serde(default)]
    generators: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    table: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    a: Option<Box<GroupFile>>,
    #[serde(default)]
    q: Option<Box<GroupFile>>,
    #[serde(default)]
    action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    catalog: Option<String>,
}

fn build_group(file: &GroupFile) -> Result<Arc<FiniteGroup>> {
    match file.kind.as_str() {
        "permutation" => {
            let degree = file
                .degree
                .ok_or_else(|| Error::Parse("permutation group needs `degree`".into()))?;
            let gens = file
                .generators
                .as_ref()
                .ok_or_else(|| Error::Parse("permutation group needs `generators`".into()))?;
            let zero_based: Vec<Vec<usize>> = gens
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&v| {
                            if v == 0 || v > degree {
                                Err(Error::Parse(format!(
                                    "image {v} outside 1..={degree} (one-line notation is 1-based)"
                                )))
                            } else {
                                Ok(v - 1)
                            }
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            group::from_permutation_generators(degree, &zero_based, file.name.clone())
        }
        "cayley" => {
            let table = file
                .table
                .as_ref()
                .ok_or_else(|| Error::Parse("cayley group needs `table`".into()))?;
            FiniteGroup::from_cayley(file.name.clone(), table.clone())
        }
        "semidirect" => {
            let a = build_group(
                file.a
                    .as_deref()
                    .ok_or_else(|| Error::Parse("semidirect group needs `a`".into()))?,
            )?;
            let q = build_group(
                file.q
                    .as_deref()
                    .ok_or_else(|| Error::Parse("semidirect group needs `q`".into()))?,
            )?;
            let action = file
                .action
                .as_ref()
                .ok_or_else(|| Error::Parse("semidirect group needs `action`".into()))?;
            Ok(group::semidirect_product(&a, &q, action, file.name.clone())?.group)
        }
        "catalog" => {
            let name = file
                .catalog
                .as_ref()
                .ok_or_else(|| Error::Parse("catalog group needs `catalog`".into()))?;
            catalog::by_name(name)
        }
        other => Err(Error::Parse(format!("unknown group kind `{other}`"))),
    }
}

/// Parses a group file from JSON text.
pub fn parse_group_json(text: &str) -> Result<Arc<FiniteGroup>> {
    let file: GroupFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group file: {e}")))?;
    build_group(&file)
}

#[derive(Debug, Deserialize)]
struct BundleFile {
    orbits: Vec<BundleOrbitFile>,
}

#[derive(Debug, Deserialize)]
struct BundleOrbitFile {
    stabilizer: StabilizerSpec,
    fiber: Value,
}

#[derive(Debug, Deserialize)]
struct StabilizerSpec {
    #[serde(default)]
    gens: Option<Vec<usize>>,
    #[serde(default)]
    elements: Option<Vec<usize>>,
}

fn parse_fiber(group: &Arc<FiniteGroup>, fiber: &Value) -> Result<Character> {
    let table = character_table(group);
    if let Some(mults) = fiber.get("irreps") {
        let mults: Vec<i64> = serde_json::from_value(mults.clone())
            .map_err(|e| Error::Parse(format!("fiber multiplicities: {e}")))?;
        if mults.len() != table.len() {
            return Err(Error::Parse(format!(
                "expected {} multiplicities, got {}",
                table.len(),
                mults.len()
            )));
        }
        if mults.iter().any(|&m| m < 0) {
            return Err(Error::Parse(
                "fiber multiplicities must be nonnegative".into(),
            ));
        }
        return Ok(table.combine(&mults));
    }
    if let Some(values) = fiber.get("values") {
        #[derive(Deserialize)]
        struct CycloValue {
            order: usize,
            coeffs: Vec<[i64; 2]>,
        }
        let raw: Vec<CycloValue> = serde_json::from_value(values.clone())
            .map_err(|e| Error::Parse(format!("fiber values: {e}")))?;
        let classes = table.classes().clone();
        if raw.len() != classes.len() {
            return Err(Error::Parse(format!(
                "expected {} class values, got {}",
                classes.len(),
                raw.len()
            )));
        }
        let values: Vec<Cyclotomic> = raw
            .iter()
            .map(|v| {
                if v.order == 0 || v.coeffs.len() != v.order {
                    return Err(Error::Parse(
                        "cyclotomic value needs `order` coefficients".into(),
                    ));
                }
                let mut c = Cyclotomic::zero(v.order);
                let mut acc = Cyclotomic::zero(v.order);
                for (k, [num, den]) in v.coeffs.iter().enumerate() {
                    if *den == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    acc = acc
                        .add(&Cyclotomic::root_of_unity(v.order, k).scale(Ratio::new(*num, *den)));
                }
                c = c.add(&acc);
                Ok(c)
            })
            .collect::<Result<_>>()?;
        let chi = Character::new(group.clone(), classes, values);
        // a fiber must be a genuine character
        table.multiplicities(&chi)?;
        return Ok(chi);
    }
    Err(Error::Parse("fiber needs `irreps` or `values`".into()))
}

/// Parses a bundle file against a fixed ambient group: builds the base
/// G-set from the stabilizers and attaches the fiber characters.
pub fn parse_bundle_json(group: &Arc<FiniteGroup>, text: &str) -> Result<EquivariantBundle> {
    let file: BundleFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle file: {e}")))?;
    if file.orbits.is_empty() {
        return Err(Error::Parse("bundle needs at least one orbit".into()));
    }
    let mut stabs = Vec::with_capacity(file.orbits.len());
    for o in &file.orbits {
        let sub = match (&o.stabilizer.gens, &o.stabilizer.elements) {
            (Some(gens), None) => Subgroup::generated(group.clone(), gens)?,
            (None, Some(elts)) => Subgroup::new(group.clone(), elts.clone())?,
            _ => {
                return Err(Error::Parse(
                    "stabilizer needs exactly one of `gens` or `elements`".into(),
                ))
            }
        };
        stabs.push(sub);
    }
    let base = GSet::from_orbit_stabilizers(group.clone(), &stabs)?;
    let whole = Subgroup::full(group.clone());
    let orbits = base.orbits_under(&whole);
    // base orbits appear in the order the stabilizers were listed
    let mut fibers = Vec::with_capacity(orbits.len());
    for (orbit, ofile) in orbits.iter().zip(&file.orbits) {
        fibers.push(parse_fiber(orbit.stabilizer.as_group(), &ofile.fiber)?);
    }
    EquivariantBundle::new(base, whole, fibers)
}

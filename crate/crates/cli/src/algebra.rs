//! chartable, mackey, induce and bundle-verify subcommands.

use std::path::Path;

use serde_json::{json, Value};
use twistk_core::bundle::verify_vector_decomposition;
use twistk_core::character::{character_table, induce, inner_product};
use twistk_core::repmat::irreducible_reps_for_table;
use twistk_core::{catalog, io as core_io, mackey};

use crate::load::{load_group, read_file};
use crate::manifest::RunManifest;
use crate::render::{character_json, character_row, table_text};
use crate::{Failure, GlobalOpts};

pub fn cmd_chartable(
    group_ref: &str,
    dump_reps: Option<&Path>,
    opts: &GlobalOpts,
) -> Result<(), Failure> {
    let mut manifest = RunManifest::new(opts.seed, opts.tol.matrix_tol, opts.tol.snap_tol);
    let g = load_group(group_ref, &mut manifest)?;
    let table = character_table(&g);

    if let Some(path) = dump_reps {
        let reps = irreducible_reps_for_table(&table, opts.seed, &opts.tol)?;
        let payload: Vec<Value> = reps
            .iter()
            .map(|rep| {
                let mats: Vec<Value> = rep
                    .matrices()
                    .iter()
                    .map(|m| {
                        let rows: Vec<Value> = (0..m.nrows())
                            .map(|r| {
                                let row: Vec<Value> = (0..m.ncols())
                                    .map(|c| json!([m[(r, c)].re, m[(r, c)].im]))
                                    .collect();
                                Value::Array(row)
                            })
                            .collect();
                        Value::Array(rows)
                    })
                    .collect();
                json!({"dimension": rep.dimension(), "matrices": mats})
            })
            .collect();
        let text = serde_json::to_string_pretty(&json!({
            "group": g.label(),
            "seed": opts.seed,
            "representations": payload,
        }))
        .expect("serializable");
        std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write `{}`: {e}", path.display())))?;
    }

    if opts.json {
        let classes = table.classes();
        let out = json!({
            "manifest": manifest,
            "group": {"label": g.label(), "order": g.order(), "exponent": table.exponent()},
            "classes": classes.classes.iter().zip(&classes.reps)
                .map(|(c, r)| json!({"rep": r, "size": c.len()}))
                .collect::<Vec<_>>(),
            "irreducibles": table.irreducibles().iter().map(character_json).collect::<Vec<_>>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        print!("{}", manifest.render_text());
        print!("{}", table_text(&table));
    }
    Ok(())
}

pub fn cmd_mackey(
    group_ref: &str,
    normal_spec: &str,
    bundle_path: Option<&Path>,
    opts: &GlobalOpts,
) -> Result<(), Failure> {
    let mut manifest = RunManifest::new(opts.seed, opts.tol.matrix_tol, opts.tol.snap_tol);
    let g = load_group(group_ref, &mut manifest)?;
    let a = catalog::subgroup_by_name(&g, normal_spec)?;
    if !a.is_normal() {
        return Err(Failure::input(format!(
            "subgroup `{normal_spec}` is not normal in {}",
            g.label()
        )));
    }
    let report = mackey::mackey_decompose(&g, &a, opts.seed, &opts.tol)?;

    let bundle_verdict = match bundle_path {
        None => None,
        Some(path) => {
            let text = read_file(path, &mut manifest)?;
            let bundle = core_io::parse_bundle_json(&g, &text)?;
            let v = verify_vector_decomposition(&bundle, &report.action)?;
            Some(v)
        }
    };

    if opts.json {
        let orbits: Vec<Value> = report
            .orbits
            .iter()
            .map(|o| {
                json!({
                    "representative": o.rep_index,
                    "members": o.members,
                    "orbit_size": o.orbit_size,
                    "stabilizer_order": o.stabilizer_order,
                    "quotient_order": o.quotient_order,
                    "extends": o.extends,
                    "twisted_rank": o.twisted_rank,
                    "cocycle": {
                        "modulus": o.cocycle.modulus(),
                        "trivial": o.cocycle.is_identically_trivial(),
                        "max_snap_residual": o.cocycle.max_snap_residual(),
                        "exponents": (0..o.quotient_order).map(|q1| {
                            (0..o.quotient_order).map(|q2| o.cocycle.exponent(q1, q2)).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                    },
                    "irreducibles_over": o.irreducibles_over.iter()
                        .map(|(gi, m)| json!({"index": gi, "multiplicity": m}))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let out = json!({
            "manifest": manifest,
            "group": {"label": g.label(), "order": g.order()},
            "normal": {"spec": normal_spec, "order": a.order()},
            "irr_g_count": report.table_g.len(),
            "total_twisted_rank": report.total_twisted_rank(),
            "orbits": orbits,
            "bundle_verified": bundle_verdict.as_ref().map(|v| v.orbit_ok.clone()),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        print!("{}", manifest.render_text());
        println!(
            "decomposition of R({}) along orbits of Irr(A), |A| = {}",
            g.label(),
            a.order()
        );
        let ranks: Vec<String> = report
            .orbits
            .iter()
            .map(|o| o.twisted_rank.to_string())
            .collect();
        println!(
            "|Irr(G)| = {} = {}",
            report.table_g.len(),
            ranks.join(" + ")
        );
        for (i, o) in report.orbits.iter().enumerate() {
            println!(
                "orbit {i}: rep rho_{}, members {:?}, |G_rho| {}, |Q_rho| {}, extends {}, twist {}, twisted rank {}",
                o.rep_index,
                o.members,
                o.stabilizer_order,
                o.quotient_order,
                o.extends,
                if o.cocycle.is_identically_trivial() { "trivial" } else { "nontrivial" },
                o.twisted_rank,
            );
            let over: Vec<String> = o
                .irreducibles_over
                .iter()
                .map(|(gi, m)| format!("chi_{gi} (m={m})"))
                .collect();
            println!("  irreducibles over rho: {}", over.join(", "));
            if o.cocycle.max_snap_residual() > 0.0 {
                println!("  max snap residual: {:.3e}", o.cocycle.max_snap_residual());
            }
        }
        if let Some(v) = bundle_verdict {
            println!(
                "bundle decomposition verified on {} base orbit(s): {:?}, degrees {:?}",
                v.orbit_ok.len(),
                v.orbit_ok,
                v.orbit_degrees
            );
        }
    }
    Ok(())
}

pub fn cmd_induce(
    group_ref: &str,
    subgroup_spec: &str,
    char_index: usize,
    opts: &GlobalOpts,
) -> Result<(), Failure> {
    let mut manifest = RunManifest::new(opts.seed, opts.tol.matrix_tol, opts.tol.snap_tol);
    let g = load_group(group_ref, &mut manifest)?;
    let h = catalog::subgroup_by_name(&g, subgroup_spec)?;
    let table_h = character_table(h.as_group());
    if char_index >= table_h.len() {
        return Err(Failure::input(format!(
            "subgroup has {} irreducibles, index {char_index} out of range",
            table_h.len()
        )));
    }
    let chi = &table_h.irreducibles()[char_index];
    let ind = induce(chi, &h)?;
    let table_g = character_table(&g);
    let mults: Vec<i64> = table_g
        .irreducibles()
        .iter()
        .map(|psi| {
            let m = inner_product(&ind, psi)?;
            Ok(m.to_integer())
        })
        .collect::<Result<_, twistk_core::Error>>()?;

    if opts.json {
        let out = json!({
            "manifest": manifest,
            "group": {"label": g.label(), "order": g.order()},
            "subgroup": {"spec": subgroup_spec, "order": h.order(), "index": h.index_in_parent()},
            "character_index": char_index,
            "induced": character_json(&ind),
            "multiplicities": mults,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        print!("{}", manifest.render_text());
        println!(
            "Ind_H^G chi_{char_index}  (H order {}, index {})",
            h.order(),
            h.index_in_parent()
        );
        println!(
            "degree {}  values: {}",
            ind.degree_int(),
            character_row(&ind)
        );
        let parts: Vec<String> = mults
            .iter()
            .enumerate()
            .filter(|(_, m)| **m != 0)
            .map(|(i, m)| {
                if *m == 1 {
                    format!("chi_{i}")
                } else {
                    format!("{m}*chi_{i}")
                }
            })
            .collect();
        println!("decomposition: {}", parts.join(" + "));
    }
    Ok(())
}

pub fn cmd_bundle_verify(
    group_ref: &str,
    normal_spec: &str,
    bundle_path: &Path,
    opts: &GlobalOpts,
) -> Result<(), Failure> {
    let mut manifest = RunManifest::new(opts.seed, opts.tol.matrix_tol, opts.tol.snap_tol);
    let g = load_group(group_ref, &mut manifest)?;
    let a = catalog::subgroup_by_name(&g, normal_spec)?;
    if !a.is_normal() {
        return Err(Failure::input(format!(
            "subgroup `{normal_spec}` is not normal in {}",
            g.label()
        )));
    }
    let action = mackey::irr_action(&g, &a)?;
    let text = read_file(bundle_path, &mut manifest)?;
    let bundle = core_io::parse_bundle_json(&g, &text)?;
    let verdict = verify_vector_decomposition(&bundle, &action)?;
    if opts.json {
        let out = json!({
            "manifest": manifest,
            "orbit_ok": verdict.orbit_ok,
            "orbit_degrees": verdict.orbit_degrees,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        print!("{}", manifest.render_text());
        println!(
            "decomposition holds on all {} base orbit(s); total degrees {:?}",
            verdict.orbit_ok.len(),
            verdict.orbit_degrees
        );
    }
    Ok(())
}

//! Shared rendering helpers: cyclotomic values and characters as text and
//! JSON.

use serde_json::{json, Value};
use twistk_core::character::CharacterTable;
use twistk_core::{Character, Cyclotomic};

pub fn cyclotomic_json(v: &Cyclotomic) -> Value {
    let coeffs: Vec<Value> = v
        .coeffs()
        .iter()
        .map(|r| json!([*r.numer(), *r.denom()]))
        .collect();
    json!({"order": v.order(), "coeffs": coeffs})
}

pub fn character_json(chi: &Character) -> Value {
    json!({
        "degree": chi.degree_int(),
        "values": chi.values().iter().map(cyclotomic_json).collect::<Vec<_>>(),
    })
}

pub fn character_row(chi: &Character) -> String {
    let values: Vec<String> = chi.values().iter().map(|v| v.to_string()).collect();
    values.join("  ")
}

pub fn table_text(table: &CharacterTable) -> String {
    let g = table.group();
    let classes = table.classes();
    let mut out = String::new();
    out.push_str(&format!(
        "group {}  order {}  exponent {}  classes {}\n",
        g.label(),
        g.order(),
        table.exponent(),
        classes.len()
    ));
    let sizes: Vec<String> = classes
        .classes
        .iter()
        .map(|c| c.len().to_string())
        .collect();
    let reps: Vec<String> = classes.reps.iter().map(|r| r.to_string()).collect();
    out.push_str(&format!(
        "class sizes: {}   class reps: {}\n",
        sizes.join(" "),
        reps.join(" ")
    ));
    for (i, chi) in table.irreducibles().iter().enumerate() {
        out.push_str(&format!(
            "chi_{i}  deg {}  |  {}\n",
            chi.degree_int(),
            character_row(chi)
        ));
    }
    out
}

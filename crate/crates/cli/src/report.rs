//! The report every command produces, its JSON form and its text rendering.
//!
//! All top-level keys are always present in JSON; sections a command does
//! not compute are `null`. The text form is rendered from the same value, so
//! parsing the JSON and re-rendering reproduces the text output exactly.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::input::JsonInt;

pub type Matrix = Vec<Vec<JsonInt>>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrices {
    #[serde(rename = "A")]
    pub a: Option<Matrix>,
    #[serde(rename = "BF")]
    pub bf: Option<Matrix>,
    #[serde(rename = "BG")]
    pub bg: Option<Matrix>,
    #[serde(rename = "E")]
    pub e: Option<Matrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideals {
    #[serde(rename = "I")]
    pub i: Option<Vec<String>>,
    #[serde(rename = "IF")]
    pub i_f: Option<Vec<String>>,
    #[serde(rename = "IG")]
    pub i_g: Option<Vec<String>>,
    #[serde(rename = "I0")]
    pub i0: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub gb_equal: Option<bool>,
    pub kernels_equal: Option<bool>,
    #[serde(rename = "E_verified")]
    pub e_verified: Option<bool>,
    pub semistable: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub valid_partition: bool,
    /// Why the partition is invalid, when it is.
    pub partition_error: Option<String>,
    pub smooth_polytope: bool,
    pub smooth_pieces: Vec<bool>,
    pub semistable: bool,
    pub violation: Option<String>,
    pub cut: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub piece: usize,
    pub points: Vec<usize>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lifts {
    #[serde(rename = "F")]
    pub f: Vec<JsonInt>,
    #[serde(rename = "G")]
    pub g: Vec<JsonInt>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub order: String,
    pub points: Option<Vec<Vec<JsonInt>>>,
    pub cut: Option<String>,
    pub lifts: Option<Lifts>,
    pub matrices: Matrices,
    pub ideals: Ideals,
    pub certificates: Certificates,
    pub check: Option<Check>,
    pub components: Option<Vec<Component>>,
}

fn int(v: &JsonInt) -> String {
    match v {
        JsonInt::Small(x) => x.to_string(),
        JsonInt::Big(s) => s.clone(),
    }
}

fn tuple(p: &[JsonInt]) -> String {
    format!("({})", p.iter().map(int).collect::<Vec<_>>().join(","))
}

fn matrix(out: &mut String, name: &str, m: &Matrix) {
    let cells: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(int).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = writeln!(out, "{name} =");
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "  [{}]", padded.join(" "));
    }
}

fn generators(out: &mut String, title: &str, gens: &[String]) {
    let _ = writeln!(out, "{title} ({} generators):", gens.len());
    if gens.is_empty() {
        let _ = writeln!(out, "  0");
    }
    for g in gens {
        let _ = writeln!(out, "  {g}");
    }
}

fn flag(out: &mut String, name: &str, v: Option<bool>) {
    if let Some(v) = v {
        let _ = writeln!(out, "  {name}: {v}");
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    if let Some(points) = &r.points {
        let _ = writeln!(out, "points ({}):", points.len());
        for (j, p) in points.iter().enumerate() {
            let _ = writeln!(out, "  m{j} = {}", tuple(p));
        }
    }
    if let Some(c) = &r.check {
        let _ = writeln!(out, "valid_partition: {}", c.valid_partition);
        if let Some(e) = &c.partition_error {
            let _ = writeln!(out, "  reason: {e}");
        }
        let _ = writeln!(out, "smooth_polytope: {}", c.smooth_polytope);
        let pieces: Vec<String> = c.smooth_pieces.iter().map(bool::to_string).collect();
        let _ = writeln!(out, "smooth_pieces: [{}]", pieces.join(", "));
        let _ = writeln!(out, "semistable: {}", c.semistable);
        if let Some(v) = &c.violation {
            let _ = writeln!(out, "  violation: {v}");
        }
        if let Some(cut) = &c.cut {
            let _ = writeln!(out, "cut: {cut}");
        }
    } else if let Some(cut) = &r.cut {
        let _ = writeln!(out, "cut: {cut}");
    }
    if let Some(l) = &r.lifts {
        let _ = writeln!(out, "F = {}", tuple(&l.f));
        let _ = writeln!(out, "G = {}", tuple(&l.g));
    }
    for (name, m) in [("A", &r.matrices.a), ("B_F", &r.matrices.bf), ("B_G", &r.matrices.bg), ("E", &r.matrices.e)] {
        if let Some(m) = m {
            matrix(&mut out, name, m);
        }
    }
    if let Some(i) = &r.ideals.i {
        generators(&mut out, &format!("I ({})", r.order), i);
    }
    match (&r.ideals.i_f, &r.ideals.i_g) {
        (Some(f), Some(g)) if f == g => generators(&mut out, &format!("I_F = I_G ({})", r.order), f),
        (f, g) => {
            if let Some(f) = f {
                generators(&mut out, &format!("I_F ({})", r.order), f);
            }
            if let Some(g) = g {
                generators(&mut out, &format!("I_G ({})", r.order), g);
            }
        }
    }
    if let Some(i0) = &r.ideals.i0 {
        generators(&mut out, &format!("I_0 ({})", r.order), i0);
    }
    if let Some(cs) = &r.components {
        let _ = writeln!(out, "components:");
        for c in cs {
            let idx: Vec<String> = c.points.iter().map(|j| format!("m{j}")).collect();
            let verdict = if c.vanishes { "ok" } else { "FAILS" };
            let _ = writeln!(out, "  piece {} [{}]: {verdict}", c.piece, idx.join(" "));
        }
    }
    let c = &r.certificates;
    if c.gb_equal.is_some() || c.kernels_equal.is_some() || c.e_verified.is_some() || c.semistable.is_some() {
        let _ = writeln!(out, "certificates:");
        flag(&mut out, "gb_equal", c.gb_equal);
        flag(&mut out, "kernels_equal", c.kernels_equal);
        flag(&mut out, "E_verified", c.e_verified);
        flag(&mut out, "semistable", c.semistable);
    }
    out
}

pub fn render_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

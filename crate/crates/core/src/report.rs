//! Deterministic JSON reports.
//!
//! Reports must be byte-for-byte reproducible across runs, so this module
//! keeps object keys in insertion order and prints every float in a fixed
//! scientific format with 17 significant digits (enough to round-trip an
//! f64). Parsing stays with serde; this is only the emitting side.

use crate::angles::{
    cusp_equations, solve_angles, symmetry_equalities, AngleSolution, AngleStatus, LinearSystem,
};
use crate::graph::RotationGraph;
use crate::hyperbolic::{
    assemble_polygon, cusp_sizes, large_cusps, parabolicity_residuals, TickShifts,
};
use crate::symmetry::{corner_orbits, symmetry_group};
use crate::{Error, Result};

/// A JSON value with ordered object keys.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn obj<K: Into<String>>(fields: impl IntoIterator<Item = (K, Json)>) -> Json {
        Json::Obj(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn arr(items: impl IntoIterator<Item = Json>) -> Json {
        Json::Arr(items.into_iter().collect())
    }

    pub fn floats(items: impl IntoIterator<Item = f64>) -> Json {
        Json::Arr(items.into_iter().map(Json::Float).collect())
    }

    pub fn ints(items: impl IntoIterator<Item = usize>) -> Json {
        Json::Arr(items.into_iter().map(|v| Json::Int(v as i64)).collect())
    }

    /// Render with two-space indentation and a trailing newline.
    pub fn to_pretty(&self) -> Result<String> {
        let mut out = String::new();
        self.write(&mut out, 0)?;
        out.push('\n');
        Ok(out)
    }

    fn write(&self, out: &mut String, indent: usize) -> Result<()> {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Float(x) => {
                if !x.is_finite() {
                    return Err(Error::Numeric(format!(
                        "nonfinite value {x} cannot be reported as JSON"
                    )));
                }
                out.push_str(&format!("{x:.16e}"));
            }
            Json::Str(s) => write_escaped(out, s),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return Ok(());
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    item.write(out, indent + 1)?;
                }
                out.push('\n');
                push_indent(out, indent);
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return Ok(());
                }
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    write_escaped(out, k);
                    out.push_str(": ");
                    v.write(out, indent + 1)?;
                }
                out.push('\n');
                push_indent(out, indent);
                out.push('}');
            }
        }
        Ok(())
    }
}

impl From<&str> for Json {
    fn from(s: &str) -> Json {
        Json::Str(s.to_owned())
    }
}

impl From<bool> for Json {
    fn from(b: bool) -> Json {
        Json::Bool(b)
    }
}

impl From<f64> for Json {
    fn from(x: f64) -> Json {
        Json::Float(x)
    }
}

impl From<usize> for Json {
    fn from(n: usize) -> Json {
        Json::Int(n as i64)
    }
}

fn angle_section(sol: &AngleSolution) -> Json {
    let status = match sol.status {
        AngleStatus::Unique => "unique",
        AngleStatus::Underdetermined { .. } => "underdetermined",
        AngleStatus::Inconsistent => "inconsistent",
    };
    let mut fields = vec![("status", Json::from(status))];
    if let AngleStatus::Underdetermined { nullity } = sol.status {
        fields.push(("nullity", Json::Int(nullity as i64)));
    }
    fields.push((
        "values_pi",
        Json::arr(sol.values_pi.iter().map(|v| Json::Str(v.to_string()))),
    ));
    fields.push(("values_radians", Json::floats(sol.values_radians())));
    fields.push(("in_range", Json::Bool(sol.in_range)));
    Json::obj(fields)
}

/// The full analysis pipeline as one report: topology, symmetry, the exact
/// angle solution of the merged cusp and symmetry system, cusp sizes,
/// zero-shift parabolicity residuals, and the side pairings of the
/// fundamental polygon (row-major matrices, keyed by dart).
pub fn analysis(g: &RotationGraph) -> Result<Json> {
    let genus = g.genus();
    let grp = symmetry_group(g)?;
    let orbits = corner_orbits(g, &grp);
    let sys = LinearSystem::merged(&[
        &cusp_equations(g),
        &symmetry_equalities(g.dart_count(), &orbits),
    ])?;
    // Genus one makes the triangles Euclidean, which adds one equation per
    // vertex; other genera solve the cusp and symmetry equations alone.
    let flat = genus == 1;
    let sol = solve_angles(g, &sys, flat)?;

    let poly = assemble_polygon(g, &TickShifts::zero(g))?;
    let residuals = parabolicity_residuals(g, &poly);
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);

    let pairings = Json::arr(poly.side_pairings.iter().map(|(&d, m)| {
        let [a, b, c, dd] = m.row_major();
        Json::obj([
            ("dart", Json::Int(d as i64)),
            ("matrix", Json::floats([a, b, c, dd])),
        ])
    }));

    Ok(Json::obj([
        ("vertices", Json::Int(g.vertex_count() as i64)),
        ("edges", Json::Int(g.edge_count() as i64)),
        ("euler_characteristic", Json::Int(g.euler_characteristic())),
        ("genus", Json::Int(genus)),
        (
            "cusps",
            Json::obj([
                ("count", Json::Int(g.lht_paths().len() as i64)),
                ("lengths", Json::ints(g.path_lengths())),
                ("sizes", Json::floats(cusp_sizes(g))),
                (
                    "all_larger_than_two_pi",
                    Json::Bool(large_cusps(g, 2.0 * std::f64::consts::PI)),
                ),
            ]),
        ),
        (
            "symmetry",
            Json::obj([
                ("order", Json::Int(grp.order() as i64)),
                ("preserving_order", Json::Int(grp.preserving_order() as i64)),
                (
                    "reversing_order",
                    Json::Int((grp.order() - grp.preserving_order()) as i64),
                ),
                ("corner_orbits", Json::Int(orbits.len() as i64)),
                ("orbit_sizes", Json::ints(orbits.iter().map(|o| o.len()))),
            ]),
        ),
        (
            "angles",
            Json::obj([
                ("flat_equations", Json::Bool(flat)),
                ("solution", angle_section(&sol)),
            ]),
        ),
        (
            "parabolicity",
            Json::obj([
                ("max_residual", Json::Float(max_residual)),
                ("residuals", Json::floats(residuals)),
            ]),
        ),
        ("side_pairings", pairings),
    ]))
}

fn push_indent(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

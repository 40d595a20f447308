//! Built-in example polytopes.
//!
//! Irrational data lives in two fields: ℚ(√2) for the quasisphere and the
//! irrational right triangle (with `s = 1`, `t = θ = √2`), and ℚ(cos π/10) for
//! the regular pentagon, where with `θ = cos(π/10)`:
//!
//! ```text
//! a = cos(2π/5) = 2θ² − 3/2      b = sin(2π/5) = θ
//! c = cos(4π/5) = 1 − 2θ²        d = sin(4π/5) = 4θ³ − 3θ
//! ```

use crate::polytope::{Document, FacetSpec, FieldSpec, PolytopeDocument, PolytopeError};

pub const PENTAGON_A: &str = "2*θ^2 - 3/2";
pub const PENTAGON_B: &str = "θ";
pub const PENTAGON_C: &str = "1 - 2*θ^2";
pub const PENTAGON_D: &str = "4*θ^3 - 3*θ";

/// Every builtin name, in listing order.
pub const NAMES: &[&str] = &[
    "sphere",
    "teardrop-2",
    "teardrop-3",
    "teardrop-5",
    "rugby-2",
    "rugby-3",
    "rugby-5",
    "interval-sqrt2",
    "cp2",
    "triangle-sqrt2",
    "square",
    "cube",
    "octahedron",
    "pentagon",
];

fn sqrt2_field() -> FieldSpec {
    FieldSpec {
        minpoly: vec!["-2".into(), "0".into(), "1".into()],
        root_interval: ["1".into(), "2".into()],
    }
}

fn cos_pi_10_field() -> FieldSpec {
    FieldSpec {
        minpoly: vec![
            "5/16".into(),
            "0".into(),
            "-5/4".into(),
            "0".into(),
            "1".into(),
        ],
        root_interval: ["9/10".into(), "1".into()],
    }
}

fn facet(normal: &[&str], offset: &str) -> FacetSpec {
    FacetSpec {
        normal: normal.iter().map(|s| (*s).to_string()).collect(),
        offset: offset.to_string(),
    }
}

fn document(
    name: &str,
    description: &str,
    field: Option<FieldSpec>,
    dimension: usize,
    facets: Vec<FacetSpec>,
    extra: Vec<Vec<String>>,
) -> PolytopeDocument {
    PolytopeDocument {
        name: Some(name.to_string()),
        description: Some(description.to_string()),
        field,
        dimension,
        facets,
        quasilattice_extra_generators: extra,
    }
}

/// The unit interval `[0, 1]` with `X₁ = s`, `X₂ = −t`.
fn interval(
    name: &str,
    description: &str,
    field: Option<FieldSpec>,
    s: &str,
    t: &str,
    extra: Vec<Vec<String>>,
) -> PolytopeDocument {
    let neg_t = format!("-{t}");
    document(
        name,
        description,
        field,
        1,
        vec![facet(&[s], "0"), facet(&[&neg_t], &neg_t)],
        extra,
    )
}

/// The raw document for a builtin name.
pub fn builtin_document(name: &str) -> Option<PolytopeDocument> {
    if let Some(k) = name.strip_prefix("teardrop-") {
        if !["2", "3", "5"].contains(&k) {
            return None;
        }
        return Some(interval(
            name,
            &format!("unit interval with X1 = 1, X2 = -{k}, Q = Z: teardrop with one Z/{k} point"),
            None,
            "1",
            k,
            vec![],
        ));
    }
    if let Some(k) = name.strip_prefix("rugby-") {
        if !["2", "3", "5"].contains(&k) {
            return None;
        }
        return Some(interval(
            name,
            &format!(
                "unit interval with X1 = {k}, X2 = -{k}, Q = Z: rugby ball with two Z/{k} points"
            ),
            None,
            k,
            k,
            vec![vec!["1".into()]],
        ));
    }
    let doc = match name {
        "sphere" => interval(
            name,
            "unit interval with X1 = 1, X2 = -1: the round sphere",
            None,
            "1",
            "1",
            vec![],
        ),
        "interval-sqrt2" => interval(
            name,
            "unit interval with X1 = s = 1, X2 = -t = -sqrt(2): the quasisphere",
            Some(sqrt2_field()),
            "1",
            "θ",
            vec![],
        ),
        "cp2" => document(
            name,
            "standard simplex: the complex projective plane",
            None,
            2,
            vec![
                facet(&["1", "0"], "0"),
                facet(&["0", "1"], "0"),
                facet(&["-1", "-1"], "-1"),
            ],
            vec![],
        ),
        "triangle-sqrt2" => document(
            name,
            "right triangle with vertices (0,0), (s,0), (0,t), s = 1, t = sqrt(2)",
            Some(sqrt2_field()),
            2,
            vec![
                facet(&["1", "0"], "0"),
                facet(&["0", "1"], "0"),
                facet(&["-θ", "-1"], "-θ"),
            ],
            vec![],
        ),
        "square" => document(
            name,
            "unit square",
            None,
            2,
            vec![
                facet(&["1", "0"], "0"),
                facet(&["0", "1"], "0"),
                facet(&["-1", "0"], "-1"),
                facet(&["0", "-1"], "-1"),
            ],
            vec![],
        ),
        "cube" => document(
            name,
            "unit cube",
            None,
            3,
            vec![
                facet(&["1", "0", "0"], "0"),
                facet(&["0", "1", "0"], "0"),
                facet(&["0", "0", "1"], "0"),
                facet(&["-1", "0", "0"], "-1"),
                facet(&["0", "-1", "0"], "-1"),
                facet(&["0", "0", "-1"], "-1"),
            ],
            vec![],
        ),
        "octahedron" => {
            let mut facets = Vec::new();
            for x in ["1", "-1"] {
                for y in ["1", "-1"] {
                    for z in ["1", "-1"] {
                        facets.push(facet(&[x, y, z], "-1"));
                    }
                }
            }
            document(
                name,
                "regular octahedron |x| + |y| + |z| <= 1 (not simple)",
                None,
                3,
                facets,
                vec![],
            )
        }
        "pentagon" => {
            let neg_d = format!("-({PENTAGON_D})");
            let neg_b = format!("-({PENTAGON_B})");
            document(
                name,
                "regular pentagon with unit normals X1 = (1,0), X2 = (a,b), X3 = (c,d), X4 = (c,-d), X5 = (a,-b), all offsets c",
                Some(cos_pi_10_field()),
                2,
                vec![
                    facet(&["1", "0"], PENTAGON_C),
                    facet(&[PENTAGON_A, PENTAGON_B], PENTAGON_C),
                    facet(&[PENTAGON_C, PENTAGON_D], PENTAGON_C),
                    facet(&[PENTAGON_C, &neg_d], PENTAGON_C),
                    facet(&[PENTAGON_A, &neg_b], PENTAGON_C),
                ],
                vec![],
            )
        }
        _ => return None,
    };
    Some(doc)
}

/// Parses and validates a builtin example.
pub fn builtin(name: &str) -> Option<Result<Document, PolytopeError>> {
    builtin_document(name).map(PolytopeDocument::into_document)
}

/// Builtin names whose polytope is simple, i.e. every entry the construction accepts.
pub fn simple_names() -> impl Iterator<Item = &'static str> {
    NAMES.iter().copied().filter(|n| *n != "octahedron")
}

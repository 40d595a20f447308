//! Serializable reports. Every exact quantity is emitted both as an
//! expression string and as a float.

use crate::construction::{
    classify, vertex_charts, Classification, ConstructionError, DelzantData,
};
use crate::field::{Field, Scalar};
use crate::polytope::{
    check_delzant, check_rational, check_simple, DelzantReport, HPolytope, LatticeCertificate,
    Vertex,
};
use num_bigint::BigInt;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Value {
    pub exact: String,
    pub float: f64,
}

impl Value {
    pub fn new(s: &Scalar, precision: f64) -> Self {
        Value {
            exact: s.to_string(),
            float: s.eval(precision).mid(),
        }
    }
}

fn values(v: &[Scalar], precision: f64) -> Vec<Value> {
    v.iter().map(|s| Value::new(s, precision)).collect()
}

fn matrix(rows: &[Vec<Scalar>], precision: f64) -> Vec<Vec<Value>> {
    rows.iter().map(|r| values(r, precision)).collect()
}

fn integers(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldReport {
    pub minpoly: Vec<String>,
    pub root_interval: [String; 2],
    pub generator: f64,
}

impl FieldReport {
    pub fn new(field: &Field, precision: f64) -> Self {
        let (lo, hi) = field.root_interval();
        FieldReport {
            minpoly: field.minpoly().iter().map(ToString::to_string).collect(),
            root_interval: [lo.to_string(), hi.to_string()],
            generator: field.generator().eval(precision).mid(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexReport {
    pub point: Vec<Value>,
    pub active: Vec<usize>,
}

impl VertexReport {
    pub fn new(v: &Vertex, precision: f64) -> Self {
        VertexReport {
            point: values(&v.point, precision),
            active: v.active.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateReport {
    Rational {
        basis: Vec<Vec<Value>>,
        coordinates: Vec<Vec<String>>,
    },
    NotRational {
        rational_rank: usize,
        independent: Vec<usize>,
    },
}

impl CertificateReport {
    pub fn new(cert: &LatticeCertificate, precision: f64) -> Self {
        match cert {
            LatticeCertificate::Rational { basis, coordinates } => CertificateReport::Rational {
                basis: matrix(basis, precision),
                coordinates: coordinates.iter().map(|c| integers(c)).collect(),
            },
            LatticeCertificate::NotRational {
                rational_rank,
                independent,
            } => CertificateReport::NotRational {
                rational_rank: *rational_rank,
                independent: independent.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DelzantSummary {
    pub delzant: bool,
    pub primitive_failures: Vec<usize>,
    pub inactive_facets: Vec<usize>,
    pub nonunimodular_vertices: Vec<usize>,
    pub vertex_determinants: Vec<Option<String>>,
}

impl DelzantSummary {
    pub fn new(r: &DelzantReport) -> Self {
        DelzantSummary {
            delzant: r.integral,
            primitive_failures: r.primitive_failures.clone(),
            inactive_facets: r.inactive_facets.clone(),
            nonunimodular_vertices: r.nonunimodular_vertices.clone(),
            vertex_determinants: r
                .vertex_determinants
                .iter()
                .map(|d| d.as_ref().map(BigInt::to_string))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub name: Option<String>,
    pub dimension: usize,
    pub facet_count: usize,
    pub field: FieldReport,
    pub simple: bool,
    pub simple_witness: Option<VertexReport>,
    pub rational: bool,
    pub certificate: CertificateReport,
    /// Present when the normals generate a lattice.
    pub delzant: Option<DelzantSummary>,
    pub vertices: Vec<VertexReport>,
}

pub fn analyze(p: &HPolytope, name: Option<&str>, precision: f64) -> AnalysisReport {
    let simple = check_simple(p);
    let cert = check_rational(p);
    let delzant = check_delzant(p, &cert)
        .ok()
        .map(|r| DelzantSummary::new(&r));
    AnalysisReport {
        name: name.map(str::to_string),
        dimension: p.dim(),
        facet_count: p.facet_count(),
        field: FieldReport::new(p.field(), precision),
        simple: simple.simple,
        simple_witness: simple
            .witness
            .as_ref()
            .map(|v| VertexReport::new(v, precision)),
        rational: cert.is_rational(),
        certificate: CertificateReport::new(&cert, precision),
        delzant,
        vertices: p
            .vertices()
            .iter()
            .map(|v| VertexReport::new(v, precision))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupReport {
    pub generators: Vec<Vec<Value>>,
    pub reduced: Vec<Vec<Value>>,
    pub finite: bool,
    pub order: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartReport {
    pub vertex_index: usize,
    pub vertex: VertexReport,
    /// `|z_j|²` at the fixed point.
    pub squared_moduli: Vec<Value>,
    pub group: GroupReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceReport {
    pub certificate: CertificateReport,
    pub delzant: Option<DelzantSummary>,
    pub vertex_orders: Vec<Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub name: Option<String>,
    pub dimension: usize,
    pub facet_count: usize,
    pub kernel_dimension: usize,
    pub manifold_dimension: usize,
    pub field: FieldReport,
    /// Column j is `X_j`.
    pub pi: Vec<Vec<Value>>,
    pub lambda: Vec<Value>,
    pub kernel_basis: Vec<Vec<Value>>,
    pub quasilattice_generators: Vec<Vec<Value>>,
    pub n_rational_dim: usize,
    pub n_compact: bool,
    pub classification: Classification,
    pub evidence: EvidenceReport,
    pub vertex_charts: Vec<ChartReport>,
}

pub fn construction_report(
    dd: &DelzantData,
    name: Option<&str>,
) -> Result<ConstructionReport, ConstructionError> {
    let eps = dd.precision();
    let evidence = classify(dd)?;
    let charts = vertex_charts(dd)?;
    let pi = dd.pi();
    Ok(ConstructionReport {
        name: name.map(str::to_string),
        dimension: dd.dim(),
        facet_count: dd.facet_count(),
        kernel_dimension: dd.kernel_basis().len(),
        manifold_dimension: dd.manifold_dimension(),
        field: FieldReport::new(dd.field(), eps),
        pi: (0..pi.rows()).map(|i| values(&pi.row(i), eps)).collect(),
        lambda: values(dd.lambda(), eps),
        kernel_basis: matrix(dd.kernel_basis(), eps),
        quasilattice_generators: matrix(dd.quasilattice().generators(), eps),
        n_rational_dim: dd.n_rational_dim(),
        n_compact: dd.n_compact(),
        classification: evidence.classification,
        evidence: EvidenceReport {
            certificate: CertificateReport::new(&evidence.certificate, eps),
            delzant: evidence.delzant.as_ref().map(DelzantSummary::new),
            vertex_orders: evidence
                .vertex_orders
                .iter()
                .map(|o| o.as_ref().map(BigInt::to_string))
                .collect(),
        },
        vertex_charts: charts
            .iter()
            .map(|c| ChartReport {
                vertex_index: c.fixed_point.vertex_index,
                vertex: VertexReport::new(&c.fixed_point.vertex, eps),
                squared_moduli: values(&c.fixed_point.squared_moduli, eps),
                group: GroupReport {
                    generators: matrix(&c.group.generators, eps),
                    reduced: matrix(&c.group.reduced, eps),
                    finite: c.group.finite,
                    order: c.group.order.as_ref().map(BigInt::to_string),
                },
            })
            .collect(),
    })
}

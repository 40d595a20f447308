//! Simple convex polytopes in H-representation.
//!
//! A polytope is `Δ = ∩ { μ : ⟨μ, X_j⟩ ≥ λ_j }` with exact normals `X_j` and
//! offsets `λ_j` in a common number field. Construction validates that Δ is a
//! bounded, full-dimensional polytope; vertices are enumerated exactly by
//! solving every n-subset of facet equations.

use crate::field::{parse_rational, Field, FieldError, Matrix, Scalar};
use crate::lattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolytopeError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("facet {0} has a zero normal")]
    ZeroNormal(usize),
    #[error("the polyhedron is unbounded")]
    UnboundedPolytope,
    #[error("the polyhedron is empty or has dimension less than {0}")]
    LowerDimensional(usize),
    #[error("facet normals span a subspace of dimension {rank} < {dim}")]
    NormalsDontSpan { rank: usize, dim: usize },
    #[error("a rational lattice certificate is required")]
    NotRationalInput,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

/// A vertex `μ_v` and the facets `F(v)` through it, in increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub point: Vec<Scalar>,
    pub active: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
    field: Field,
    vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub minpoly: Vec<String>,
    pub root_interval: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FacetSpec {
    pub normal: Vec<String>,
    pub offset: String,
}

/// On-disk polytope description. All numbers are exact expression strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Defaults to ℚ when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub dimension: usize,
    pub facets: Vec<FacetSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quasilattice_extra_generators: Vec<Vec<String>>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Document {
    pub name: Option<String>,
    pub polytope: HPolytope,
    pub extra_generators: Vec<Vec<Scalar>>,
}

impl PolytopeDocument {
    pub fn from_json(text: &str) -> Result<Self, PolytopeError> {
        serde_json::from_str(text).map_err(|e| PolytopeError::Schema(e.to_string()))
    }

    pub fn build_field(&self) -> Result<Field, PolytopeError> {
        let Some(spec) = &self.field else {
            return Ok(Field::rationals());
        };
        let minpoly = spec
            .minpoly
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        let lo = parse_rational(&spec.root_interval[0])?;
        let hi = parse_rational(&spec.root_interval[1])?;
        Ok(Field::new(minpoly, (lo, hi))?)
    }

    pub fn into_document(self) -> Result<Document, PolytopeError> {
        let field = self.build_field()?;
        let parse_vec = |v: &[String]| -> Result<Vec<Scalar>, PolytopeError> {
            v.iter().map(|e| Ok(field.parse(e)?)).collect()
        };
        let mut facets = Vec::with_capacity(self.facets.len());
        for spec in &self.facets {
            facets.push(Facet {
                normal: parse_vec(&spec.normal)?,
                offset: field.parse(&spec.offset)?,
            });
        }
        let mut extra_generators = Vec::new();
        for (k, g) in self.quasilattice_extra_generators.iter().enumerate() {
            if g.len() != self.dimension {
                return Err(PolytopeError::Schema(format!(
                    "extra generator {k} has length {}, expected {}",
                    g.len(),
                    self.dimension
                )));
            }
            extra_generators.push(parse_vec(g)?);
        }
        let polytope = HPolytope::new(&field, self.dimension, facets)?;
        Ok(Document {
            name: self.name,
            polytope,
            extra_generators,
        })
    }
}

pub fn parse_document(text: &str) -> Result<Document, PolytopeError> {
    PolytopeDocument::from_json(text)?.into_document()
}

pub fn parse_polytope(text: &str) -> Result<HPolytope, PolytopeError> {
    Ok(parse_document(text)?.polytope)
}

impl HPolytope {
    /// Validates `Δ = ∩ { ⟨μ, X_j⟩ ≥ λ_j }` as a bounded polytope of dimension `dim`.
    pub fn new(field: &Field, dim: usize, facets: Vec<Facet>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::Schema("dimension must be at least 1".into()));
        }
        for (j, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(PolytopeError::Schema(format!(
                    "facet {j} has a normal of length {}, expected {dim}",
                    f.normal.len()
                )));
            }
            if f.normal
                .iter()
                .chain([&f.offset])
                .any(|s| !s.field().same(field))
            {
                return Err(FieldError::FieldMismatch.into());
            }
            if f.normal.iter().all(Scalar::is_zero) {
                return Err(PolytopeError::ZeroNormal(j));
            }
        }
        let normals = normal_matrix(field, dim, &facets);
        let rank = normals.rank();
        if rank < dim {
            if forced_hyperplane(&facets) {
                return Err(PolytopeError::LowerDimensional(dim));
            }
            return Err(PolytopeError::NormalsDontSpan { rank, dim });
        }
        let vertices = basic_feasible_points(field, dim, &facets);
        if vertices.is_empty() {
            return Err(PolytopeError::LowerDimensional(dim));
        }
        if has_recession_ray(field, dim, &facets) {
            return Err(PolytopeError::UnboundedPolytope);
        }
        let base = &vertices[0].point;
        let differences: Vec<Vec<Scalar>> = vertices[1..]
            .iter()
            .map(|v| v.point.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let hull_dim = if differences.is_empty() {
            0
        } else {
            Matrix::from_rows(field, &differences)?.rank()
        };
        if hull_dim < dim {
            return Err(PolytopeError::LowerDimensional(dim));
        }
        Ok(HPolytope {
            dim,
            facets,
            field: field.clone(),
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of facets d.
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn normals(&self) -> Vec<Vec<Scalar>> {
        self.facets.iter().map(|f| f.normal.clone()).collect()
    }

    pub fn offsets(&self) -> Vec<Scalar> {
        self.facets.iter().map(|f| f.offset.clone()).collect()
    }

    /// Vertices in discovery order (lexicographic order of the first facet
    /// subset that produces each).
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `⟨μ, X_j⟩ − λ_j`.
    pub fn slack(&self, point: &[Scalar], facet: usize) -> Scalar {
        let f = &self.facets[facet];
        &crate::field::dot_product(point, &f.normal) - &f.offset
    }

    pub fn vertex_index(&self, point: &[Scalar]) -> Option<usize> {
        self.vertices.iter().position(|v| v.point == point)
    }
}

fn normal_matrix(field: &Field, dim: usize, facets: &[Facet]) -> Matrix {
    let rows: Vec<Vec<Scalar>> = facets.iter().map(|f| f.normal.clone()).collect();
    if rows.is_empty() {
        return Matrix::zeros(field, 0, dim);
    }
    Matrix::from_rows(field, &rows).expect("normals validated")
}

/// Detects a pair `X_i = −κ X_j`, `κ > 0`, whose slab has no interior.
fn forced_hyperplane(facets: &[Facet]) -> bool {
    for (i, a) in facets.iter().enumerate() {
        for b in &facets[i + 1..] {
            let Some(k) = a.normal.iter().position(|s| !s.is_zero()) else {
                continue;
            };
            if b.normal[k].is_zero() {
                continue;
            }
            let Ok(ratio) = (-&a.normal[k]).checked_div(&b.normal[k]) else {
                continue;
            };
            if ratio.signum() != Ordering::Greater {
                continue;
            }
            if a.normal
                .iter()
                .zip(&b.normal)
                .any(|(x, y)| *x != -&(&ratio * y))
            {
                continue;
            }
            // ⟨μ, X_b⟩ ≥ λ_b and ⟨μ, X_b⟩ ≤ −λ_a / κ
            let width = &(-&a.offset).checked_div(&ratio).expect("κ > 0") - &b.offset;
            if width.signum() != Ordering::Greater {
                return true;
            }
        }
    }
    false
}

fn basic_feasible_points(field: &Field, dim: usize, facets: &[Facet]) -> Vec<Vertex> {
    let mut vertices: Vec<Vertex> = Vec::new();
    for subset in Combinations::new(facets.len(), dim) {
        let rows: Vec<Vec<Scalar>> = subset.iter().map(|&j| facets[j].normal.clone()).collect();
        let rhs: Vec<Scalar> = subset.iter().map(|&j| facets[j].offset.clone()).collect();
        let a = Matrix::from_rows(field, &rows).expect("square system");
        let Some(point) = a.solve_unique(&rhs) else {
            continue;
        };
        if vertices.iter().any(|v| v.point == point) {
            continue;
        }
        let mut active = Vec::new();
        let mut feasible = true;
        for (j, f) in facets.iter().enumerate() {
            let slack = &crate::field::dot_product(&point, &f.normal) - &f.offset;
            match slack.signum() {
                Ordering::Less => {
                    feasible = false;
                    break;
                }
                Ordering::Equal => active.push(j),
                Ordering::Greater => {}
            }
        }
        if feasible {
            vertices.push(Vertex { point, active });
        }
    }
    vertices
}

/// Whether the recession cone `{v : ⟨v, X_j⟩ ≥ 0 ∀j}` contains a nonzero
/// vector. With spanning normals the cone is pointed, so it is nontrivial iff
/// it has an extreme ray cut out by n−1 independent constraints.
fn has_recession_ray(field: &Field, dim: usize, facets: &[Facet]) -> bool {
    for subset in Combinations::new(facets.len(), dim - 1) {
        let rows: Vec<Vec<Scalar>> = subset.iter().map(|&j| facets[j].normal.clone()).collect();
        let a = if rows.is_empty() {
            Matrix::zeros(field, 0, dim)
        } else {
            Matrix::from_rows(field, &rows).expect("rows validated")
        };
        let kernel = a.kernel();
        if kernel.len() != 1 {
            continue;
        }
        let ray = &kernel[0];
        for sign in [Ordering::Greater, Ordering::Less] {
            let ok = facets.iter().all(|f| {
                let s = crate::field::dot_product(ray, &f.normal).signum();
                s == Ordering::Equal || s == sign
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Recomputes the vertex list of a validated polytope.
pub fn enumerate_vertices(p: &HPolytope) -> Vec<Vertex> {
    basic_feasible_points(&p.field, p.dim, &p.facets)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleReport {
    pub simple: bool,
    pub witness: Option<Vertex>,
}

/// Simple iff exactly n facets meet at every vertex.
pub fn check_simple(p: &HPolytope) -> SimpleReport {
    let witness = p.vertices.iter().find(|v| v.active.len() != p.dim).cloned();
    SimpleReport {
        simple: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LatticeCertificate {
    /// The vectors lie in the lattice with the given basis; `coordinates[j]`
    /// expresses vector j as an integer combination of the basis.
    Rational {
        basis: Vec<Vec<Scalar>>,
        coordinates: Vec<Vec<BigInt>>,
    },
    /// The ℚ-span of the vectors has dimension `rational_rank` > n; the listed
    /// vectors are ℚ-linearly independent.
    NotRational {
        rational_rank: usize,
        independent: Vec<usize>,
    },
}

impl LatticeCertificate {
    pub fn is_rational(&self) -> bool {
        matches!(self, LatticeCertificate::Rational { .. })
    }
}

fn flatten(v: &[Scalar]) -> Vec<BigRational> {
    v.iter().flat_map(|s| s.coeffs().iter().cloned()).collect()
}

fn unflatten(field: &Field, flat: &[BigRational]) -> Vec<Scalar> {
    flat.chunks(field.degree())
        .map(|c| Scalar::from_coeffs(field, c.to_vec()))
        .collect()
}

/// Decides whether `vectors` (which must ℝ-span ℝⁿ) generate a lattice, by
/// computing the rank over ℚ of their coordinates in the power basis. In the
/// lattice case the basis is the Hermite normal form of the cleared integer
/// coefficient matrix.
pub fn lattice_certificate(
    field: &Field,
    dim: usize,
    vectors: &[Vec<Scalar>],
) -> LatticeCertificate {
    let flat: Vec<Vec<BigRational>> = vectors.iter().map(|v| flatten(v)).collect();
    let (rank, independent) = lattice::rational_rank(&flat);
    if rank != dim {
        return LatticeCertificate::NotRational {
            rational_rank: rank,
            independent,
        };
    }
    let denom = lattice::common_denominator(flat.iter().flatten());
    let scale = BigRational::from_integer(denom.clone());
    let ints: Vec<Vec<BigInt>> = flat
        .iter()
        .map(|row| row.iter().map(|q| (q * &scale).to_integer()).collect())
        .collect();
    let hermite = lattice::hermite_basis(&ints);
    debug_assert_eq!(hermite.len(), dim);
    let coordinates = ints
        .iter()
        .map(|row| lattice::hermite_coordinates(&hermite, row).expect("row lies in its own span"))
        .collect();
    let basis = hermite
        .iter()
        .map(|row| {
            let flat: Vec<BigRational> = row
                .iter()
                .map(|x| BigRational::new(x.clone(), denom.clone()))
                .collect();
            unflatten(field, &flat)
        })
        .collect();
    LatticeCertificate::Rational { basis, coordinates }
}

pub fn check_rational(p: &HPolytope) -> LatticeCertificate {
    lattice_certificate(&p.field, p.dim, &p.normals())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelzantReport {
    pub integral: bool,
    /// Facets whose normal is not primitive in the lattice.
    pub primitive_failures: Vec<usize>,
    /// Inequalities active at no vertex; they do not enter `integral`.
    pub inactive_facets: Vec<usize>,
    /// Indices of vertices whose active normals do not form a lattice basis.
    pub nonunimodular_vertices: Vec<usize>,
    /// Determinant of the active normal coordinates at each vertex
    /// (`None` at a vertex that is not simple).
    pub vertex_determinants: Vec<Option<BigInt>>,
}

/// Delzant's integrality condition in the lattice of `cert`: every normal that
/// meets a vertex is primitive and every vertex's active normals have
/// determinant ±1. The first
/// `d` rows of the certificate's coordinates must be the facet normals.
pub fn check_delzant(
    p: &HPolytope,
    cert: &LatticeCertificate,
) -> Result<DelzantReport, PolytopeError> {
    let LatticeCertificate::Rational { coordinates, .. } = cert else {
        return Err(PolytopeError::NotRationalInput);
    };
    if coordinates.len() < p.facet_count() {
        return Err(PolytopeError::Schema(
            "certificate does not cover every facet".into(),
        ));
    }
    let primitive_failures: Vec<usize> = (0..p.facet_count())
        .filter(|&j| !lattice::gcd_all(&coordinates[j]).is_one())
        .collect();
    let mut nonunimodular_vertices = Vec::new();
    let mut vertex_determinants = Vec::new();
    for (index, v) in p.vertices.iter().enumerate() {
        if v.active.len() != p.dim {
            nonunimodular_vertices.push(index);
            vertex_determinants.push(None);
            continue;
        }
        let m: Vec<Vec<BigInt>> = v.active.iter().map(|&j| coordinates[j].clone()).collect();
        let det = lattice::determinant(&m);
        if !det.abs().is_one() {
            nonunimodular_vertices.push(index);
        }
        vertex_determinants.push(Some(det));
    }
    let inactive_facets: Vec<usize> = (0..p.facet_count())
        .filter(|j| !p.vertices.iter().any(|v| v.active.contains(j)))
        .collect();
    let integral = nonunimodular_vertices.is_empty()
        && primitive_failures
            .iter()
            .all(|j| inactive_facets.contains(j));
    Ok(DelzantReport {
        integral,
        primitive_failures,
        inactive_facets,
        nonunimodular_vertices,
        vertex_determinants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(dim: usize, facets: &[(&[&str], &str)]) -> String {
        let facets: Vec<FacetSpec> = facets
            .iter()
            .map(|(n, o)| FacetSpec {
                normal: n.iter().map(|s| s.to_string()).collect(),
                offset: o.to_string(),
            })
            .collect();
        serde_json::to_string(&PolytopeDocument {
            name: None,
            description: None,
            field: None,
            dimension: dim,
            facets,
            quasilattice_extra_generators: vec![],
        })
        .unwrap()
    }

    fn square() -> HPolytope {
        parse_polytope(&doc(
            2,
            &[
                (&["1", "0"], "0"),
                (&["0", "1"], "0"),
                (&["-1", "0"], "-1"),
                (&["0", "-1"], "-1"),
            ],
        ))
        .unwrap()
    }

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter()
            .map(|s| {
                let q = s.as_rational().unwrap();
                i64::try_from(q.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn square_vertices() {
        let p = square();
        assert_eq!((p.dim(), p.facet_count()), (2, 4));
        let pts: Vec<Vec<i64>> = p.vertices().iter().map(|v| ints(&v.point)).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(check_simple(&p).simple);
    }

    #[test]
    fn degenerate_strip_is_lower_dimensional() {
        let e = parse_polytope(&doc(2, &[(&["1", "0"], "0"), (&["-1", "0"], "0")]));
        assert_eq!(e.unwrap_err(), PolytopeError::LowerDimensional(2));
    }

    #[test]
    fn open_strip_does_not_span() {
        let e = parse_polytope(&doc(2, &[(&["1", "0"], "0"), (&["-1", "0"], "-1")]));
        assert_eq!(
            e.unwrap_err(),
            PolytopeError::NormalsDontSpan { rank: 1, dim: 2 }
        );
    }

    #[test]
    fn quadrant_is_unbounded() {
        let e = parse_polytope(&doc(2, &[(&["1", "0"], "0"), (&["0", "1"], "0")]));
        assert_eq!(e.unwrap_err(), PolytopeError::UnboundedPolytope);
        let e = parse_polytope(&doc(1, &[(&["1"], "0"), (&["2"], "1")]));
        assert_eq!(e.unwrap_err(), PolytopeError::UnboundedPolytope);
    }

    #[test]
    fn empty_and_flat_are_rejected() {
        let e = parse_polytope(&doc(1, &[(&["1"], "1"), (&["-1"], "0")]));
        assert_eq!(e.unwrap_err(), PolytopeError::LowerDimensional(1));
        // triangle squashed onto a segment
        let e = parse_polytope(&doc(
            2,
            &[
                (&["0", "1"], "0"),
                (&["0", "-1"], "0"),
                (&["1", "0"], "0"),
                (&["-1", "0"], "-1"),
            ],
        ));
        assert_eq!(e.unwrap_err(), PolytopeError::LowerDimensional(2));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse_polytope("{"), Err(PolytopeError::Schema(_))));
        assert!(matches!(
            parse_polytope(&doc(2, &[(&["1"], "0")])),
            Err(PolytopeError::Schema(_))
        ));
        assert!(matches!(
            parse_polytope(r#"{"dimension": 1, "facets": [], "bogus": 1}"#),
            Err(PolytopeError::Schema(_))
        ));
        assert_eq!(
            parse_polytope(&doc(1, &[(&["0"], "0"), (&["1"], "0")])).unwrap_err(),
            PolytopeError::ZeroNormal(0)
        );
        assert!(matches!(
            parse_polytope(&doc(1, &[(&["1 +"], "0"), (&["-1"], "-1")])),
            Err(PolytopeError::Field(FieldError::Syntax { .. }))
        ));
    }

    #[test]
    fn interval_is_simple() {
        let p = parse_polytope(&doc(1, &[(&["1"], "0"), (&["-1"], "-1")])).unwrap();
        assert!(check_simple(&p).simple);
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn square_is_rational_and_delzant() {
        let p = square();
        let cert = check_rational(&p);
        let LatticeCertificate::Rational { basis, coordinates } = &cert else {
            panic!("square is rational");
        };
        let f = p.field();
        assert_eq!(
            basis,
            &vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]]
        );
        let expected: Vec<Vec<BigInt>> = [[1, 0], [0, 1], [-1, 0], [0, -1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(coordinates, &expected);
        assert!(check_delzant(&p, &cert).unwrap().integral);
    }

    #[test]
    fn interval_with_long_normal_is_not_delzant() {
        for k in 2..=5 {
            let p = parse_polytope(&doc(
                1,
                &[(&["1"], "0"), (&[&format!("-{k}")], &format!("-{k}"))],
            ))
            .unwrap();
            let cert = check_rational(&p);
            let report = check_delzant(&p, &cert).unwrap();
            assert!(!report.integral);
            assert_eq!(report.primitive_failures, vec![1]);
            // vertex 1 sits on the X₂ facet
            assert_eq!(report.nonunimodular_vertices, vec![1]);
            assert_eq!(report.vertex_determinants[1], Some(BigInt::from(-k)));
        }
    }

    #[test]
    fn irrational_interval_is_not_rational() {
        let text = r#"{"field": {"minpoly": ["-2", "0", "1"], "root_interval": ["1", "2"]},
            "dimension": 1, "facets": [{"normal": ["1"], "offset": "0"}, {"normal": ["-θ"], "offset": "-θ"}]}"#;
        let p = parse_polytope(text).unwrap();
        assert_eq!(
            check_rational(&p),
            LatticeCertificate::NotRational {
                rational_rank: 2,
                independent: vec![0, 1]
            }
        );
        assert_eq!(
            check_delzant(&p, &check_rational(&p)).unwrap_err(),
            PolytopeError::NotRationalInput
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}

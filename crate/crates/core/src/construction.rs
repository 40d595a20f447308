//! The generalized Delzant construction.
//!
//! From a simple polytope `Δ = ∩ {⟨μ, X_j⟩ ≥ λ_j}` in ℝⁿ and a quasilattice
//! `Q ⊇ ℤ-span{X_j}`, the map `π: ℝᵈ → ℝⁿ, e_j ↦ X_j` induces an epimorphism
//! of quasitori `Tᵈ → ℝⁿ/Q` with kernel `N`, `Lie(N) = ker π`. The reduced
//! space is `M = Ψ⁻¹(0)/N` where `Ψ = B·J`, `J(z) = (|z_j|² + λ_j)_j` and the
//! rows of `B` span `ker π`. The residual action of `ℝⁿ/Q` on `M` has moment
//! map `Φ` with `π*Φ = J`, whose image is Δ.

use crate::field::{Field, FieldError, Matrix, Scalar};
use crate::lattice;
use crate::polytope::{
    check_delzant, check_simple, lattice_certificate, DelzantReport, HPolytope, LatticeCertificate,
    Vertex,
};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Default width of certified exact→float conversions.
pub const DEFAULT_PRECISION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("polytope is not simple: vertex {vertex} lies on {facets} facets")]
    NotSimple { vertex: usize, facets: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("extra quasilattice generator {index} has length {len}, expected {dim}")]
    GeneratorDimension {
        index: usize,
        len: usize,
        dim: usize,
    },
    #[error("point is not a vertex of the polytope")]
    NotAVertex,
    #[error("point is off the level set: |Ψ(z)| = {residual:e} > {tol:e}")]
    OffLevelSet { residual: f64, tol: f64 },
    #[error("facet normal matrix is numerically rank deficient")]
    IllConditioned,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Manifold,
    Orbifold,
    Quasifold,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Manifold => "Manifold",
            Classification::Orbifold => "Orbifold",
            Classification::Quasifold => "Quasifold",
        })
    }
}

/// The ℤ-span `Q` of finitely many vectors spanning ℝⁿ, i.e. the data of the
/// quasitorus `D = ℝⁿ/Q`.
#[derive(Debug, Clone)]
pub struct Quasilattice {
    generators: Vec<Vec<Scalar>>,
    certificate: LatticeCertificate,
}

impl Quasilattice {
    /// `Q = ℤX₁ + … + ℤX_d + ℤg₁ + … + ℤg_m`.
    pub fn new(p: &HPolytope, extra: &[Vec<Scalar>]) -> Result<Self, ConstructionError> {
        let mut generators = p.normals();
        for (index, g) in extra.iter().enumerate() {
            if g.len() != p.dim() {
                return Err(ConstructionError::GeneratorDimension {
                    index,
                    len: g.len(),
                    dim: p.dim(),
                });
            }
            if g.iter().any(|s| !s.field().same(p.field())) {
                return Err(FieldError::FieldMismatch.into());
            }
            generators.push(g.clone());
        }
        let certificate = lattice_certificate(p.field(), p.dim(), &generators);
        Ok(Quasilattice {
            generators,
            certificate,
        })
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn certificate(&self) -> &LatticeCertificate {
        &self.certificate
    }

    pub fn is_lattice(&self) -> bool {
        self.certificate.is_rational()
    }
}

/// Float copies of the exact data used by the moment maps.
#[derive(Debug, Clone)]
struct Numeric {
    precision: f64,
    /// d×n, row j is X_j.
    normals: DMatrix<f64>,
    lambda: DVector<f64>,
    /// (d−n)×d, rows span ker π.
    kernel: DMatrix<f64>,
    /// n×d Moore–Penrose pseudoinverse of `normals`.
    normals_pinv: DMatrix<f64>,
    kernel_sigma_min: f64,
}

#[derive(Debug, Clone)]
pub struct DelzantData {
    polytope: HPolytope,
    pi: Matrix,
    quasilattice: Quasilattice,
    lambda: Vec<Scalar>,
    kernel_basis: Vec<Vec<Scalar>>,
    n_rational_dim: usize,
    classification: Classification,
    delzant: Option<DelzantReport>,
    numeric: Numeric,
}

/// Runs the construction with the default float precision.
pub fn build_construction(
    p: &HPolytope,
    extra_generators: &[Vec<Scalar>],
) -> Result<DelzantData, ConstructionError> {
    build_construction_with_precision(p, extra_generators, DEFAULT_PRECISION)
}

pub fn build_construction_with_precision(
    p: &HPolytope,
    extra_generators: &[Vec<Scalar>],
    precision: f64,
) -> Result<DelzantData, ConstructionError> {
    let simple = check_simple(p);
    if let Some(w) = simple.witness {
        let vertex = p.vertex_index(&w.point).expect("witness is a vertex");
        return Err(ConstructionError::NotSimple {
            vertex,
            facets: w.active.len(),
        });
    }
    let field = p.field();
    let (n, d) = (p.dim(), p.facet_count());
    let pi = Matrix::from_columns(field, &p.normals())?;
    let quasilattice = Quasilattice::new(p, extra_generators)?;
    let lambda = p.offsets();
    let kernel_basis = pi.kernel();
    if kernel_basis.len() != d - n {
        return Err(ConstructionError::InternalInconsistency(format!(
            "kernel of π has dimension {} but d − n = {}",
            kernel_basis.len(),
            d - n
        )));
    }
    let n_rational_dim = d - rational_rank_of_rows(field, &pi);
    let delzant = match quasilattice.certificate() {
        LatticeCertificate::Rational { .. } => Some(
            check_delzant(p, quasilattice.certificate())
                .expect("certificate is rational and covers the normals"),
        ),
        LatticeCertificate::NotRational { .. } => None,
    };
    let classification = match &delzant {
        Some(r) if r.integral => Classification::Manifold,
        Some(_) => Classification::Orbifold,
        None => Classification::Quasifold,
    };
    let numeric = Numeric::new(p, &kernel_basis, precision)?;
    let dd = DelzantData {
        polytope: p.clone(),
        pi,
        quasilattice,
        lambda,
        kernel_basis,
        n_rational_dim,
        classification,
        delzant,
        numeric,
    };
    if dd.manifold_dimension() != 2 * n {
        return Err(ConstructionError::InternalInconsistency(
            "dim M = 2d − 2 dim N does not equal 2n".into(),
        ));
    }
    Ok(dd)
}

/// Rank over ℚ of the rows of `m` after expanding every entry in the power basis.
fn rational_rank_of_rows(field: &Field, m: &Matrix) -> usize {
    let g = field.degree();
    let mut rows = Vec::with_capacity(m.rows() * g);
    for i in 0..m.rows() {
        for k in 0..g {
            rows.push(
                (0..m.cols())
                    .map(|j| m.get(i, j).coeffs()[k].clone())
                    .collect::<Vec<BigRational>>(),
            );
        }
    }
    lattice::rational_rank(&rows).0
}

impl Numeric {
    fn new(
        p: &HPolytope,
        kernel: &[Vec<Scalar>],
        precision: f64,
    ) -> Result<Self, ConstructionError> {
        let (n, d) = (p.dim(), p.facet_count());
        let eval = |s: &Scalar| s.eval(precision).mid();
        let normals = DMatrix::from_fn(d, n, |j, i| eval(&p.facets()[j].normal[i]));
        let lambda = DVector::from_fn(d, |j, _| eval(&p.facets()[j].offset));
        let kernel = DMatrix::from_fn(kernel.len(), d, |k, j| eval(&kernel[k][j]));
        let svd = normals.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin <= 1e-12 * smax {
            return Err(ConstructionError::IllConditioned);
        }
        let normals_pinv = svd
            .pseudo_inverse(1e-12 * smax)
            .map_err(|_| ConstructionError::IllConditioned)?;
        let kernel_sigma_min = if kernel.nrows() == 0 {
            1.0
        } else {
            kernel.clone().svd(false, false).singular_values.min()
        };
        Ok(Numeric {
            precision,
            normals,
            lambda,
            kernel,
            normals_pinv,
            kernel_sigma_min,
        })
    }
}

/// Result of [`moment_phi`].
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSolution {
    pub mu: Vec<f64>,
    /// `max_j |⟨μ, X_j⟩ − J_j(z)|`.
    pub residual: f64,
    /// Bound `‖Ψ(z)‖ / σ_min(B)` on the Euclidean residual.
    pub residual_bound: f64,
}

impl DelzantData {
    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn field(&self) -> &Field {
        self.polytope.field()
    }

    /// `π` as an n×d matrix with columns `X_j`.
    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    pub fn quasilattice(&self) -> &Quasilattice {
        &self.quasilattice
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    /// Basis of `Lie(N) = ker π`; these are the rows of `B`.
    pub fn kernel_basis(&self) -> &[Vec<Scalar>] {
        &self.kernel_basis
    }

    /// Dimension of `ker π ∩ ℚᵈ`.
    pub fn n_rational_dim(&self) -> usize {
        self.n_rational_dim
    }

    /// `N` is compact iff `ker π` is spanned by rational vectors.
    pub fn n_compact(&self) -> bool {
        self.n_rational_dim == self.kernel_basis.len()
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn delzant_report(&self) -> Option<&DelzantReport> {
        self.delzant.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn facet_count(&self) -> usize {
        self.polytope.facet_count()
    }

    /// `dim M = 2d − 2 dim N`.
    pub fn manifold_dimension(&self) -> usize {
        2 * self.facet_count() - 2 * self.kernel_basis.len()
    }

    pub fn precision(&self) -> f64 {
        self.numeric.precision
    }

    /// Facet normals as a d×n float matrix (row j is X_j).
    pub fn normals_f64(&self) -> &DMatrix<f64> {
        &self.numeric.normals
    }

    pub fn lambda_f64(&self) -> &DVector<f64> {
        &self.numeric.lambda
    }

    /// `B` as a (d−n)×d float matrix.
    pub fn kernel_f64(&self) -> &DMatrix<f64> {
        &self.numeric.kernel
    }

    /// Least-squares `μ` with `⟨μ, X_j⟩ ≈ values_j`, without any level-set check.
    pub fn solve_mu(&self, values: &DVector<f64>) -> DVector<f64> {
        &self.numeric.normals_pinv * values
    }

    /// Least-norm `X̂ ∈ ℝᵈ` with `π X̂ = x`.
    pub fn lift(&self, x: &DVector<f64>) -> DVector<f64> {
        self.numeric.normals_pinv.transpose() * x
    }

    /// `B · J(z)` as an affine map in the squared moduli: returns the
    /// (d−n)×(d+1) matrix `[B | Bλ]`.
    pub fn level_set_affine_map(&self) -> DMatrix<f64> {
        let b = &self.numeric.kernel;
        let c = b * &self.numeric.lambda;
        let mut out = DMatrix::zeros(b.nrows(), b.ncols() + 1);
        out.view_mut((0, 0), (b.nrows(), b.ncols())).copy_from(b);
        out.set_column(b.ncols(), &c);
        out
    }

    /// The exact constant term `B λ` of Ψ.
    pub fn psi_constant(&self) -> Vec<Scalar> {
        self.kernel_basis
            .iter()
            .map(|row| crate::field::dot_product(row, &self.lambda))
            .collect()
    }
}

fn check_len(got: usize, expected: usize) -> Result<(), ConstructionError> {
    if got == expected {
        Ok(())
    } else {
        Err(ConstructionError::DimensionMismatch { got, expected })
    }
}

/// `J(z) = (|z_j|² + λ_j)_j`, the moment map of the standard `Tᵈ`-action.
pub fn moment_j(z: &[Complex64], dd: &DelzantData) -> Result<Vec<f64>, ConstructionError> {
    check_len(z.len(), dd.facet_count())?;
    Ok(z.iter()
        .zip(dd.numeric.lambda.iter())
        .map(|(zj, l)| zj.norm_sqr() + l)
        .collect())
}

/// `Ψ(z) = B · J(z)`, the moment map of `N`.
pub fn moment_psi(z: &[Complex64], dd: &DelzantData) -> Result<Vec<f64>, ConstructionError> {
    let j = DVector::from_vec(moment_j(z, dd)?);
    Ok((&dd.numeric.kernel * j).iter().copied().collect())
}

/// `Φ(z)`: the `μ` solving `⟨μ, X_j⟩ = |z_j|² + λ_j` in the least-squares
/// sense, for `z` within `tol` of `Ψ⁻¹(0)` (max-norm).
pub fn moment_phi(
    z: &[Complex64],
    dd: &DelzantData,
    tol: f64,
) -> Result<PhiSolution, ConstructionError> {
    let psi = moment_psi(z, dd)?;
    let psi_max = psi.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if psi_max > tol {
        return Err(ConstructionError::OffLevelSet {
            residual: psi_max,
            tol,
        });
    }
    let j = DVector::from_vec(moment_j(z, dd)?);
    let mu = dd.solve_mu(&j);
    let r = &dd.numeric.normals * &mu - &j;
    let psi_norm = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok(PhiSolution {
        mu: mu.iter().copied().collect(),
        residual: r.amax(),
        residual_bound: psi_norm / dd.numeric.kernel_sigma_min,
    })
}

/// The point of `M` over a vertex: `|z_j|² = ⟨μ_v, X_j⟩ − λ_j`, zero exactly
/// on the active facets.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub vertex_index: usize,
    pub vertex: Vertex,
    pub squared_moduli: Vec<Scalar>,
}

impl FixedPoint {
    /// A representative `z ∈ Ψ⁻¹(0)` with the given phases (in turns).
    pub fn representative(&self, phases: &[f64], precision: f64) -> Vec<Complex64> {
        self.squared_moduli
            .iter()
            .zip(phases)
            .map(|(m, &phase)| {
                let r = m.eval(precision).mid().max(0.0).sqrt();
                Complex64::from_polar(r, std::f64::consts::TAU * phase)
            })
            .collect()
    }
}

pub fn fixed_points(dd: &DelzantData) -> Vec<FixedPoint> {
    let p = &dd.polytope;
    p.vertices()
        .iter()
        .enumerate()
        .map(|(vertex_index, v)| FixedPoint {
            vertex_index,
            vertex: v.clone(),
            squared_moduli: (0..p.facet_count()).map(|j| p.slack(&v.point, j)).collect(),
        })
        .collect()
}

/// The structure group `Γ_v = Q / ℤ-span{X_j : j ∈ F(v)}` at a vertex,
/// realized inside `ℝⁿ/ℤⁿ` through coordinates in the basis of active normals.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureGroup {
    /// `c_i = A_v⁻¹ g_i` for each quasilattice generator `g_i`, where `A_v`
    /// has the active normals as columns.
    pub generators: Vec<Vec<Scalar>>,
    /// The same generators reduced into `[0, 1)ⁿ`.
    pub reduced: Vec<Vec<Scalar>>,
    pub finite: bool,
    /// `[ℤⁿ + Σ ℤc_i : ℤⁿ]` when finite.
    pub order: Option<BigInt>,
}

impl StructureGroup {
    pub fn is_trivial(&self) -> bool {
        self.order.as_ref().is_some_and(One::is_one)
    }
}

pub fn vertex_structure_group(
    dd: &DelzantData,
    v: &Vertex,
) -> Result<StructureGroup, ConstructionError> {
    let p = &dd.polytope;
    let index = p
        .vertex_index(&v.point)
        .ok_or(ConstructionError::NotAVertex)?;
    let vertex = &p.vertices()[index];
    let columns: Vec<Vec<Scalar>> = vertex
        .active
        .iter()
        .map(|&j| p.facets()[j].normal.clone())
        .collect();
    let a = Matrix::from_columns(p.field(), &columns)?;
    let mut generators = Vec::with_capacity(dd.quasilattice.generators.len());
    for g in &dd.quasilattice.generators {
        let c = a.solve_unique(g).ok_or_else(|| {
            ConstructionError::InternalInconsistency(
                "active normal matrix is singular at a simple vertex".into(),
            )
        })?;
        generators.push(c);
    }
    let reduced = generators
        .iter()
        .map(|c| c.iter().map(Scalar::fract).collect())
        .collect();
    let finite = generators.iter().flatten().all(Scalar::is_rational);
    let order = finite.then(|| finite_group_order(p.dim(), &generators));
    Ok(StructureGroup {
        generators,
        reduced,
        finite,
        order,
    })
}

/// Order of `(ℤⁿ + Σ ℤc_i) / ℤⁿ` for rational `c_i`, via Smith normal form of
/// the cleared generator matrix.
fn finite_group_order(dim: usize, generators: &[Vec<Scalar>]) -> BigInt {
    let rationals: Vec<&BigRational> = generators
        .iter()
        .flatten()
        .map(|s| {
            s.as_rational()
                .expect("finite group has rational generators")
        })
        .collect();
    let denom = lattice::common_denominator(rationals.iter().copied());
    let scale = BigRational::from_integer(denom.clone());
    // columns: D·e_k, then D·c_i
    let mut rows: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|k| {
                    if i == k {
                        denom.clone()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in generators {
        for (i, s) in c.iter().enumerate() {
            let q = s.as_rational().expect("rational generator");
            rows[i].push((q * &scale).to_integer());
        }
    }
    let invariants = lattice::smith_invariants(&rows);
    let index: BigInt = invariants.iter().product();
    Pow::pow(&denom, dim) / index
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexChart {
    pub fixed_point: FixedPoint,
    pub group: StructureGroup,
}

pub fn vertex_charts(dd: &DelzantData) -> Result<Vec<VertexChart>, ConstructionError> {
    fixed_points(dd)
        .into_iter()
        .map(|fixed_point| {
            let group = vertex_structure_group(dd, &fixed_point.vertex)?;
            Ok(VertexChart { fixed_point, group })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ClassificationEvidence {
    pub classification: Classification,
    pub certificate: LatticeCertificate,
    pub delzant: Option<DelzantReport>,
    /// Structure group order at each vertex, `None` when infinite.
    pub vertex_orders: Vec<Option<BigInt>>,
}

/// Classifies `M` and cross-checks the global lattice/Delzant route against
/// the per-vertex structure groups.
pub fn classify(dd: &DelzantData) -> Result<ClassificationEvidence, ConstructionError> {
    let charts = vertex_charts(dd)?;
    let vertex_orders: Vec<Option<BigInt>> = charts.iter().map(|c| c.group.order.clone()).collect();
    let local = if vertex_orders
        .iter()
        .all(|o| o.as_ref().is_some_and(One::is_one))
    {
        Classification::Manifold
    } else if vertex_orders.iter().all(Option::is_some) {
        Classification::Orbifold
    } else {
        Classification::Quasifold
    };
    if local != dd.classification {
        return Err(ConstructionError::InternalInconsistency(format!(
            "lattice certificate gives {} but vertex structure groups give {local}",
            dd.classification
        )));
    }
    Ok(ClassificationEvidence {
        classification: dd.classification,
        certificate: dd.quasilattice.certificate().clone(),
        delzant: dd.delzant.clone(),
        vertex_orders,
    })
}

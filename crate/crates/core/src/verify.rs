//! Monte Carlo and finite-difference checks of the construction.
//!
//! Points of the level set `Ψ⁻¹(0)` are produced by drawing `μ ∈ Δ` and phases,
//! then setting `z_j = √(⟨μ, X_j⟩ − λ_j) · e^{2πi φ_j}`. Every check is pointwise
//! and runs in `f64`; the exact data enters only through its certified float
//! evaluation.

use crate::construction::{fixed_points, moment_j, moment_psi, DelzantData};
use crate::geometry;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("rejection sampling stalled: {accepted} of {draws} draws accepted")]
    RejectionStall { accepted: usize, draws: usize },
    #[error("finite-difference step {0:e} outside [1e-8, 1e-3]")]
    StepOutOfRange(f64),
    #[error("sample count must be at least 1")]
    EmptySample,
    #[error("direction has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

const MAX_STALL_DRAWS: usize = 1_000_000;
const MIN_ACCEPTANCE: f64 = 1e-4;

/// Random streams derived from one seed, so each check is reproducible on its own.
const STREAM_SAMPLES: u64 = 0;
const STREAM_FIBERS: u64 = 1;
const STREAM_TORUS: u64 = 2;
const STREAM_HAMILTONIAN: u64 = 3;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub mu: Vec<f64>,
    /// Phases in turns, each in `[0, 1)`.
    pub phases: Vec<f64>,
    pub z: Vec<Complex64>,
}

/// `⟨μ, X_j⟩ − λ_j` for every facet.
fn slacks(dd: &DelzantData, mu: &DVector<f64>) -> DVector<f64> {
    dd.normals_f64() * mu - dd.lambda_f64()
}

/// The level-set point over `mu` with the given phases.
pub fn lift_point(dd: &DelzantData, mu: &[f64], phases: &[f64]) -> Vec<Complex64> {
    let s = slacks(dd, &DVector::from_column_slice(mu));
    s.iter()
        .zip(phases)
        .map(|(&sj, &p)| Complex64::from_polar(sj.max(0.0).sqrt(), TAU * p))
        .collect()
}

/// Axis-aligned bounding box of the float vertices.
fn bounding_box(dd: &DelzantData) -> (Vec<f64>, Vec<f64>) {
    let n = dd.dim();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in dd.polytope().vertices() {
        for (i, s) in v.point.iter().enumerate() {
            let x = s.eval(dd.precision()).mid();
            lo[i] = lo[i].min(x);
            hi[i] = hi[i].max(x);
        }
    }
    (lo, hi)
}

/// Draws `count` level-set points with `μ` uniform on Δ (rejection from the
/// vertex bounding box) and uniform phases.
pub fn sample_level_set(
    dd: &DelzantData,
    count: usize,
    seed: u64,
) -> Result<Vec<Sample>, VerifyError> {
    if count == 0 {
        return Err(VerifyError::EmptySample);
    }
    let mut rng = rng(seed, STREAM_SAMPLES);
    let (lo, hi) = bounding_box(dd);
    let d = dd.facet_count();
    let mut samples = Vec::with_capacity(count);
    let mut draws = 0usize;
    while samples.len() < count {
        draws += 1;
        if draws >= MAX_STALL_DRAWS && (samples.len() as f64) < MIN_ACCEPTANCE * draws as f64 {
            return Err(VerifyError::RejectionStall {
                accepted: samples.len(),
                draws,
            });
        }
        let mu: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(&a, &b)| a + (b - a) * rng.gen::<f64>())
            .collect();
        let s = slacks(dd, &DVector::from_column_slice(&mu));
        if s.iter().any(|&x| x < 0.0) {
            continue;
        }
        let phases: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
        let z = lift_point(dd, &mu, &phases);
        samples.push(Sample { mu, phases, z });
    }
    Ok(samples)
}

fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `Φ` extended off the level set by least squares: `Φ(z) = π*⁺ J(z)`.
fn phi_extended(dd: &DelzantData, z: &[Complex64]) -> DVector<f64> {
    let j = DVector::from_vec(moment_j(z, dd).expect("z has length d"));
    dd.solve_mu(&j)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentImageReport {
    pub max_level_residual: f64,
    pub max_roundtrip_error: f64,
    /// Largest violation `max(0, λ_j − ⟨Φ(z), X_j⟩)` over samples and facets.
    pub max_containment_violation: f64,
    /// Per vertex, the largest `|Φ(z) − μ_v|` over points in the fiber over
    /// `μ_v` built from the exact fixed point.
    pub vertex_attainment_gaps: Vec<f64>,
    /// Hausdorff distance between Δ and the convex hull of the images (exact
    /// for n ≤ 2, an upper bound from nearest images for n ≥ 3).
    pub image_hausdorff: f64,
}

/// Number of random phase choices per vertex fiber.
const FIBER_POINTS: usize = 8;

pub fn verify_moment_image(dd: &DelzantData, samples: &[Sample], seed: u64) -> MomentImageReport {
    let mut max_level_residual: f64 = 0.0;
    let mut max_roundtrip_error: f64 = 0.0;
    let mut max_containment_violation: f64 = 0.0;
    let mut images = Vec::with_capacity(samples.len());
    for s in samples {
        let psi = moment_psi(&s.z, dd).expect("sample has length d");
        max_level_residual = max_level_residual.max(max_abs(psi));
        let phi = phi_extended(dd, &s.z);
        let err = phi
            .iter()
            .zip(&s.mu)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        max_roundtrip_error = max_roundtrip_error.max(err);
        let violation = slacks(dd, &phi).iter().fold(0.0_f64, |m, &x| m.max(-x));
        max_containment_violation = max_containment_violation.max(violation);
        images.push(phi.iter().copied().collect::<Vec<f64>>());
    }

    let mut rng = rng(seed, STREAM_FIBERS);
    let d = dd.facet_count();
    let mut vertex_attainment_gaps = Vec::new();
    let mut vertex_points = Vec::new();
    for fp in fixed_points(dd) {
        let mu_v: Vec<f64> = fp
            .vertex
            .point
            .iter()
            .map(|s| s.eval(dd.precision()).mid())
            .collect();
        let mut gap: f64 = 0.0;
        for _ in 0..FIBER_POINTS {
            let phases: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
            let z = fp.representative(&phases, dd.precision());
            let phi = phi_extended(dd, &z);
            let e = phi
                .iter()
                .zip(&mu_v)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            gap = gap.max(e);
        }
        vertex_attainment_gaps.push(gap);
        vertex_points.push(mu_v);
    }

    MomentImageReport {
        max_level_residual,
        max_roundtrip_error,
        max_containment_violation,
        vertex_attainment_gaps,
        image_hausdorff: hausdorff_to_polytope(&vertex_points, &images),
    }
}

/// Distance from the farthest vertex of Δ to the convex hull of `images`;
/// since the hull lies in Δ this is their Hausdorff distance.
fn hausdorff_to_polytope(vertices: &[Vec<f64>], images: &[Vec<f64>]) -> f64 {
    if images.is_empty() {
        return f64::INFINITY;
    }
    let n = vertices.first().map_or(0, Vec::len);
    match n {
        1 => {
            let lo = images.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = images
                .iter()
                .map(|p| p[0])
                .fold(f64::NEG_INFINITY, f64::max);
            vertices
                .iter()
                .map(|v| {
                    if v[0] < lo {
                        lo - v[0]
                    } else if v[0] > hi {
                        v[0] - hi
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max)
        }
        2 => {
            let pts: Vec<[f64; 2]> = images.iter().map(|p| [p[0], p[1]]).collect();
            let hull = geometry::convex_hull(&pts);
            vertices
                .iter()
                .map(|v| geometry::distance_to_convex_polygon([v[0], v[1]], &hull))
                .fold(0.0, f64::max)
        }
        _ => vertices
            .iter()
            .map(|v| {
                images
                    .iter()
                    .map(|p| {
                        p.iter()
                            .zip(v)
                            .map(|(a, b)| (a - b).powi(2))
                            .sum::<f64>()
                            .sqrt()
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max),
    }
}

/// The (d−n)×2d real Jacobian of Ψ at z, columns ordered `x₁, y₁, x₂, y₂, …`.
pub fn psi_jacobian(dd: &DelzantData, z: &[Complex64]) -> DMatrix<f64> {
    let b = dd.kernel_f64();
    DMatrix::from_fn(b.nrows(), 2 * b.ncols(), |k, c| {
        let zj = z[c / 2];
        let coord = if c % 2 == 0 { zj.re } else { zj.im };
        2.0 * b[(k, c / 2)] * coord
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    /// Smallest `σ_min / σ_max` of dΨ over the samples.
    pub min_relative_margin: f64,
    pub full_rank: bool,
}

pub fn check_regular_value(dd: &DelzantData, samples: &[Sample], tol_rank: f64) -> RankReport {
    let mut min_relative_margin = f64::INFINITY;
    for s in samples {
        let sv = psi_jacobian(dd, &s.z).svd(false, false).singular_values;
        let (smin, smax) = (sv.min(), sv.max());
        let margin = if smax > 0.0 { smin / smax } else { 0.0 };
        min_relative_margin = min_relative_margin.min(margin);
    }
    RankReport {
        min_relative_margin,
        full_rank: min_relative_margin > tol_rank,
    }
}

/// Max discrepancy between `ι(X_M)ω₀` and `d⟨Φ, X⟩` at `z`, both evaluated by
/// central differences with step `h`.
///
/// `X` is lifted to the least-norm `X̂` with `π X̂ = X`. The fundamental vector
/// field is the central difference of the flow `z_j ↦ e^{2πi t X̂_j} z_j` at
/// `t = 0`, contracted with `ω₀ = (1/2πi) Σ dz_j ∧ dz̄_j = −(1/π) Σ dx_j ∧ dy_j`.
/// `⟨Φ, X⟩` is differenced along the 2d real coordinate directions using the
/// least-squares extension `Φ = π*⁺ J`, which is affine in `J`, so each
/// difference is taken on `J` before applying `π*⁺`.
pub fn check_hamiltonian_identity(
    dd: &DelzantData,
    z: &[Complex64],
    x: &[f64],
    h: f64,
) -> Result<f64, VerifyError> {
    if !(1e-8..=1e-3).contains(&h) {
        return Err(VerifyError::StepOutOfRange(h));
    }
    if x.len() != dd.dim() {
        return Err(VerifyError::DimensionMismatch {
            got: x.len(),
            expected: dd.dim(),
        });
    }
    let xv = DVector::from_column_slice(x);
    let lifted = dd.lift(&xv);
    let d = dd.facet_count();
    let mut residual: f64 = 0.0;
    for (j, &zj) in z.iter().enumerate() {
        // (e^{iα} − e^{−iα}) z / 2h with α = 2πhX̂_j
        let field = Complex64::i() * zj * ((TAU * h * lifted[j]).sin() / h);
        let contraction = [field.im / PI, -field.re / PI];
        for (c, step) in [Complex64::new(h, 0.0), Complex64::new(0.0, h)]
            .into_iter()
            .enumerate()
        {
            let (plus, minus) = (zj + step, zj - step);
            let width = if c == 0 {
                plus.re - minus.re
            } else {
                plus.im - minus.im
            };
            let dj = (plus.re - minus.re) * (plus.re + minus.re)
                + (plus.im - minus.im) * (plus.im + minus.im);
            let mut delta = DVector::zeros(d);
            delta[j] = dj;
            let derivative = dd.solve_mu(&delta).dot(&xv) / width;
            residual = residual.max((contraction[c] - derivative).abs());
        }
    }
    Ok(residual)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    /// Max `|Ψ(θ·z) − Ψ(z)|` over random torus elements θ ∈ Tᵈ.
    pub max_torus_psi_residual: f64,
    /// Max `|Φ(θ·z) − Φ(z)|` over random elements θ of N.
    pub max_kernel_phi_residual: f64,
    /// Lowest sample index with every `z_j ≠ 0`, where the Tᵈ-action is free.
    pub effectiveness_witness: Option<usize>,
}

/// Applies `θ ∈ ℝᵈ/ℤᵈ` to z.
pub fn torus_act(theta: &[f64], z: &[Complex64]) -> Vec<Complex64> {
    z.iter()
        .zip(theta)
        .map(|(zj, &t)| Complex64::from_polar(1.0, TAU * t) * zj)
        .collect()
}

pub fn check_invariance(dd: &DelzantData, samples: &[Sample], seed: u64) -> InvarianceReport {
    let mut rng = rng(seed, STREAM_TORUS);
    let d = dd.facet_count();
    let b = dd.kernel_f64();
    let mut max_torus_psi_residual: f64 = 0.0;
    let mut max_kernel_phi_residual: f64 = 0.0;
    for s in samples {
        let psi = moment_psi(&s.z, dd).expect("sample has length d");
        let theta: Vec<f64> = (0..d).map(|_| rng.gen::<f64>()).collect();
        let moved = moment_psi(&torus_act(&theta, &s.z), dd).expect("length d");
        max_torus_psi_residual =
            max_torus_psi_residual.max(max_abs(psi.iter().zip(&moved).map(|(a, c)| a - c)));

        let sigma: f64 = rng.gen_range(-10.0..10.0);
        let coeffs = DVector::from_fn(b.nrows(), |_, _| rng.gen_range(-1.0..1.0));
        let direction = b.transpose() * coeffs;
        let theta_n: Vec<f64> = direction
            .iter()
            .map(|v| (sigma * v).rem_euclid(1.0))
            .collect();
        let phi = phi_extended(dd, &s.z);
        let phi_moved = phi_extended(dd, &torus_act(&theta_n, &s.z));
        max_kernel_phi_residual = max_kernel_phi_residual.max((phi - phi_moved).amax());
    }
    let effectiveness_witness = samples
        .iter()
        .position(|s| s.z.iter().all(|zj| zj.norm() > 0.0));
    InvarianceReport {
        max_torus_psi_residual,
        max_kernel_phi_residual,
        effectiveness_witness,
    }
}

/// Thresholds for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub level_set: f64,
    pub roundtrip: f64,
    pub containment: f64,
    pub rank: f64,
    pub hamiltonian: f64,
    pub hamiltonian_step: f64,
    /// Accepted range for the observed finite-difference order.
    pub hamiltonian_order: (f64, f64),
    pub torus_psi: f64,
    pub kernel_phi: f64,
    pub attainment: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            level_set: 1e-9,
            roundtrip: 1e-8,
            containment: 1e-8,
            rank: 1e-6,
            hamiltonian: 1e-6,
            hamiltonian_step: 1e-5,
            hamiltonian_order: (1.8, 2.2),
            torus_psi: 1e-9,
            kernel_phi: 1e-8,
            attainment: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianReport {
    pub pairs: usize,
    pub step: f64,
    pub max_residual: f64,
    /// `(h, max residual over the pairs)` for h = 1e-3, 1e-4, 1e-5.
    pub scaling: Vec<(f64, f64)>,
    /// Least-squares slope of log(residual) against log(h).
    pub observed_order: f64,
}

/// Runs the identity at `pairs` random (z, X) pairs drawn from `samples`.
pub fn hamiltonian_sweep(
    dd: &DelzantData,
    samples: &[Sample],
    pairs: usize,
    step: f64,
    seed: u64,
) -> Result<HamiltonianReport, VerifyError> {
    let mut rng = rng(seed, STREAM_HAMILTONIAN);
    let n = dd.dim();
    let chosen: Vec<(usize, Vec<f64>)> = (0..pairs.min(samples.len()).max(1).min(samples.len()))
        .map(|_| {
            let i = rng.gen_range(0..samples.len());
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            (i, x)
        })
        .collect();
    let mut max_residual: f64 = 0.0;
    for (i, x) in &chosen {
        max_residual = max_residual.max(check_hamiltonian_identity(dd, &samples[*i].z, x, step)?);
    }
    let mut scaling = Vec::new();
    for h in [1e-3, 1e-4, 1e-5] {
        let mut r: f64 = 0.0;
        for (i, x) in &chosen {
            r = r.max(check_hamiltonian_identity(dd, &samples[*i].z, x, h)?);
        }
        scaling.push((h, r));
    }
    Ok(HamiltonianReport {
        pairs: chosen.len(),
        step,
        max_residual,
        observed_order: loglog_slope(&scaling),
        scaling,
    })
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.log10()).collect();
    let ys: Vec<f64> = points
        .iter()
        .map(|p| p.1.max(f64::MIN_POSITIVE).log10())
        .collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub sample_count: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub moment_image: MomentImageReport,
    pub regular_value: RankReport,
    pub hamiltonian: HamiltonianReport,
    pub invariance: InvarianceReport,
    /// Names of the fields that missed their threshold.
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub hamiltonian_pairs: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 10_000,
            seed: 0,
            hamiltonian_pairs: 100,
            tolerances: Tolerances::default(),
        }
    }
}

/// Runs every check and returns the samples with the report.
pub fn run_verification(
    dd: &DelzantData,
    config: &VerifyConfig,
) -> Result<(Vec<Sample>, VerificationReport), VerifyError> {
    let tol = &config.tolerances;
    let samples = sample_level_set(dd, config.samples, config.seed)?;
    let moment_image = verify_moment_image(dd, &samples, config.seed);
    let regular_value = check_regular_value(dd, &samples, tol.rank);
    let hamiltonian = hamiltonian_sweep(
        dd,
        &samples,
        config.hamiltonian_pairs,
        tol.hamiltonian_step,
        config.seed,
    )?;
    let invariance = check_invariance(dd, &samples, config.seed);

    let mut failures = Vec::new();
    let mut require = |ok: bool, name: &str| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    require(
        moment_image.max_level_residual <= tol.level_set,
        "max_level_residual",
    );
    require(
        moment_image.max_roundtrip_error <= tol.roundtrip,
        "max_roundtrip_error",
    );
    require(
        moment_image.max_containment_violation <= tol.containment,
        "max_containment_violation",
    );
    require(
        moment_image
            .vertex_attainment_gaps
            .iter()
            .all(|&g| g <= tol.attainment),
        "vertex_attainment_gaps",
    );
    require(regular_value.full_rank, "min_dpsi_rank_margin");
    require(
        hamiltonian.max_residual <= tol.hamiltonian,
        "max_hamiltonian_residual",
    );
    let (lo, hi) = tol.hamiltonian_order;
    require(
        (lo..=hi).contains(&hamiltonian.observed_order),
        "hamiltonian_observed_order",
    );
    require(
        invariance.max_torus_psi_residual <= tol.torus_psi,
        "max_torus_psi_residual",
    );
    require(
        invariance.max_kernel_phi_residual <= tol.kernel_phi,
        "max_kernel_phi_residual",
    );
    require(
        invariance.effectiveness_witness.is_some(),
        "effectiveness_witness",
    );

    let report = VerificationReport {
        sample_count: samples.len(),
        seed: config.seed,
        tolerances: *tol,
        moment_image,
        regular_value,
        hamiltonian,
        invariance,
        failures,
    };
    Ok((samples, report))
}

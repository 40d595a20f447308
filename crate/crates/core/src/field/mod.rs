//! Exact arithmetic in a real algebraic number field ℚ(θ).
//!
//! A [`Field`] is fixed by a monic minimal polynomial together with a rational
//! interval isolating the intended real root θ. Elements are [`Scalar`]s, stored
//! as coefficient vectors in the power basis `1, θ, …, θ^{g-1}`. Real values are
//! obtained by certified interval evaluation, refining the isolating interval
//! by bisection until the requested width is reached.

mod matrix;
mod parse;
pub(crate) mod poly;
mod scalar;

pub use matrix::{dot as dot_product, Matrix, Solve};
pub use parse::parse_rational;
pub use scalar::{Interval, Scalar};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("minimal polynomial must have degree at least 1")]
    ZeroDegree,
    #[error("minimal polynomial is not monic")]
    NotMonic,
    #[error("root interval must satisfy lo < hi")]
    InvalidInterval,
    #[error("minimal polynomial does not change sign on the root interval")]
    NoSignChange,
    #[error("root interval isolates {0} real roots, expected exactly one")]
    MultipleRoots(usize),
    #[error("minimal polynomial is not squarefree")]
    NotSquareFree,
    #[error("minimal polynomial has the rational root {0}")]
    RationalRoot(BigRational),
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("division by zero")]
    DivisionByZeroScalar,
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Number of bisections applied to the root interval at construction.
const INITIAL_REFINEMENT: usize = 64;

struct FieldData {
    minpoly: Vec<BigRational>,
    interval: (BigRational, BigRational),
    sign_lo: Ordering,
    /// Narrowest isolating interval computed so far. Only ever shrinks.
    cache: RwLock<(BigRational, BigRational)>,
}

/// A real number field ℚ(θ) with a distinguished real embedding.
///
/// Cloning is cheap; all clones refer to the same field.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl Field {
    /// Creates ℚ(θ) from `minpoly` (low degree first) and an isolating interval.
    ///
    /// Irreducibility is only partially checked: the polynomial must be
    /// squarefree and, for degree ≥ 2, have no rational root. A reducible
    /// input that passes these checks yields a ring with zero divisors, in
    /// which division by a zero divisor fails with
    /// [`FieldError::DivisionByZeroScalar`].
    pub fn new(
        minpoly: Vec<BigRational>,
        root_interval: (BigRational, BigRational),
    ) -> Result<Self, FieldError> {
        let mut minpoly = minpoly;
        poly::trim(&mut minpoly);
        let degree = poly::degree(&minpoly).ok_or(FieldError::ZeroDegree)?;
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if !minpoly[degree].is_one() {
            return Err(FieldError::NotMonic);
        }
        let (lo, hi) = root_interval;
        if lo >= hi {
            return Err(FieldError::InvalidInterval);
        }
        let sign_lo = poly::sign_at(&minpoly, &lo);
        let sign_hi = poly::sign_at(&minpoly, &hi);
        if sign_lo == Ordering::Equal || sign_hi == Ordering::Equal || sign_lo == sign_hi {
            return Err(FieldError::NoSignChange);
        }
        if poly::degree(&poly::gcd(&minpoly, &poly::derivative(&minpoly))) != Some(0) {
            return Err(FieldError::NotSquareFree);
        }
        if degree >= 2 {
            if let Some(root) = poly::rational_root(&minpoly) {
                return Err(FieldError::RationalRoot(root));
            }
        }
        let roots = poly::count_roots(&minpoly, &lo, &hi);
        if roots != 1 {
            return Err(FieldError::MultipleRoots(roots));
        }
        let field = Field(Arc::new(FieldData {
            minpoly,
            interval: (lo.clone(), hi.clone()),
            sign_lo,
            cache: RwLock::new((lo, hi)),
        }));
        field.isolator(INITIAL_REFINEMENT);
        Ok(field)
    }

    /// The field ℚ itself, presented as ℚ(θ) with θ = 0.
    pub fn rationals() -> Self {
        let minpoly = vec![BigRational::zero(), BigRational::one()];
        let interval = (-BigRational::one(), BigRational::one());
        Field::new(minpoly, interval).expect("x has the isolated root 0")
    }

    /// Degree g = [ℚ(θ) : ℚ].
    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.0.minpoly
    }

    /// The root interval as given at construction.
    pub fn root_interval(&self) -> (&BigRational, &BigRational) {
        (&self.0.interval.0, &self.0.interval.1)
    }

    /// Two fields are the same if they share storage or were built from
    /// identical data.
    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.minpoly == other.0.minpoly && self.0.interval == other.0.interval)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_rational(self, BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_rational(self, BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar::from_rational(self, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> Scalar {
        Scalar::from_rational(self, q)
    }

    /// The generator θ.
    pub fn generator(&self) -> Scalar {
        let mut coeffs = vec![BigRational::zero(), BigRational::one()];
        self.reduce(&mut coeffs);
        Scalar::from_coeffs(self, coeffs)
    }

    /// Parses an expression in the scalar grammar.
    pub fn parse(&self, text: &str) -> Result<Scalar, FieldError> {
        parse::parse_scalar(text, self)
    }

    /// Reduces a polynomial in θ modulo the minimal polynomial, padding the
    /// result to exactly `g` coefficients.
    pub(crate) fn reduce(&self, coeffs: &mut Vec<BigRational>) {
        let m = &self.0.minpoly;
        let g = m.len() - 1;
        while coeffs.len() > g {
            let top = coeffs.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - g;
            for (k, c) in m.iter().enumerate().take(g) {
                coeffs[shift + k] -= &top * c;
            }
        }
        coeffs.resize(g, BigRational::zero());
    }

    /// An isolating interval refined by at least `steps` bisections beyond the
    /// original, reusing earlier work.
    pub(crate) fn isolator(&self, steps: usize) -> (BigRational, BigRational) {
        let original = &self.0.interval.1 - &self.0.interval.0;
        let target = original / BigRational::from_integer(BigInt::one() << steps);
        {
            let cache = self.0.cache.read().expect("isolator cache poisoned");
            if &cache.1 - &cache.0 <= target {
                return cache.clone();
            }
        }
        let (mut lo, mut hi) = self
            .0
            .cache
            .read()
            .expect("isolator cache poisoned")
            .clone();
        let two = BigRational::from_integer(BigInt::from(2));
        while &hi - &lo > target {
            let mid = (&lo + &hi) / &two;
            match poly::sign_at(&self.0.minpoly, &mid) {
                Ordering::Equal => {
                    lo = mid.clone();
                    hi = mid;
                }
                s if s == self.0.sign_lo => lo = mid,
                _ => hi = mid,
            }
        }
        let mut cache = self.0.cache.write().expect("isolator cache poisoned");
        if &hi - &lo < &cache.1 - &cache.0 {
            *cache = (lo.clone(), hi.clone());
        }
        (lo, hi)
    }

    /// Whether the monic polynomial `p` (a divisor of the minimal polynomial)
    /// vanishes at θ.
    pub(crate) fn divisor_vanishes_at_root(&self, p: &[BigRational]) -> bool {
        let (lo, hi) = &self.0.interval;
        let a = poly::sign_at(p, lo);
        let b = poly::sign_at(p, hi);
        a != b || a == Ordering::Equal
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.0.minpoly.iter().map(ToString::to_string).collect();
        f.debug_struct("Field")
            .field("minpoly", &coeffs)
            .field(
                "root_interval",
                &(self.0.interval.0.to_string(), self.0.interval.1.to_string()),
            )
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

use super::{poly, Field, FieldError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A closed float interval certified to contain a real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// An element `c₀ + c₁θ + … + c_{g-1}θ^{g-1}` of a number field.
#[derive(Clone)]
pub struct Scalar {
    coeffs: Vec<BigRational>,
    field: Field,
}

impl Scalar {
    pub(crate) fn from_coeffs(field: &Field, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree());
        Scalar {
            coeffs,
            field: field.clone(),
        }
    }

    pub(crate) fn from_rational(field: &Field, q: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree()];
        coeffs[0] = q;
        Scalar {
            coeffs,
            field: field.clone(),
        }
    }

    /// Coefficients in the power basis, exactly `g` of them.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the element lies in ℚ ⊂ ℚ(θ).
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    fn check_field(&self, other: &Scalar) {
        assert!(
            self.field.same(&other.field),
            "arithmetic between scalars of different fields"
        );
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if !self.field.same(&other.field) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if !self.field.same(&other.field) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self * other)
    }

    pub fn inverse(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZeroScalar);
        }
        if self.field.degree() == 1 {
            return Ok(Scalar::from_rational(&self.field, self.coeffs[0].recip()));
        }
        let (g, s) = poly::ext_gcd_mod(&self.coeffs, self.field.minpoly());
        if poly::degree(&g) != Some(0) {
            // zero divisor in a ring built from a reducible polynomial
            return Err(FieldError::DivisionByZeroScalar);
        }
        let mut coeffs = s;
        self.field.reduce(&mut coeffs);
        Ok(Scalar::from_coeffs(&self.field, coeffs))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if !self.field.same(&other.field) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self * &other.inverse()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Scalar, FieldError> {
        let base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Exact rational enclosure of the value over the isolating interval `iso`.
    fn enclosure(&self, iso: &(BigRational, BigRational)) -> (BigRational, BigRational) {
        let (tlo, thi) = iso;
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let products = [&acc.0 * tlo, &acc.0 * thi, &acc.1 * tlo, &acc.1 * thi];
            let lo = products.iter().min().expect("four products").clone();
            let hi = products.iter().max().expect("four products").clone();
            acc = (lo + c, hi + c);
        }
        acc
    }

    /// Exact rational enclosure of width at most `width`.
    fn refined_enclosure(&self, width: &BigRational) -> (BigRational, BigRational) {
        if self.is_rational() {
            let q = self.coeffs[0].clone();
            return (q.clone(), q);
        }
        let mut steps = 64;
        loop {
            let iso = self.field.isolator(steps);
            let enc = self.enclosure(&iso);
            if &enc.1 - &enc.0 <= *width || iso.0 == iso.1 {
                return enc;
            }
            steps += 16;
        }
    }

    /// Certified float interval of width at most `precision` (plus outward
    /// rounding of the endpoints) containing the real value.
    pub fn eval(&self, precision: f64) -> Interval {
        assert!(precision > 0.0, "precision must be positive");
        let width = BigRational::from_f64(precision).expect("finite precision");
        let (lo, hi) = self.refined_enclosure(&width);
        Interval {
            lo: round_down(&lo),
            hi: round_up(&hi),
        }
    }

    /// Float approximation at precision 1e-15.
    pub fn to_f64(&self) -> f64 {
        self.eval(1e-15).mid()
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if self.is_rational() {
            return self.coeffs[0].cmp(&BigRational::zero());
        }
        let g = poly::gcd(&self.coeffs, self.field.minpoly());
        if poly::degree(&g).unwrap_or(0) > 0 && self.field.divisor_vanishes_at_root(&g) {
            return Ordering::Equal;
        }
        let mut steps = 64;
        loop {
            let iso = self.field.isolator(steps);
            let (lo, hi) = self.enclosure(&iso);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            steps += 16;
        }
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> BigInt {
        if let Some(q) = self.as_rational() {
            return q.floor().to_integer();
        }
        let mut width = BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
        loop {
            let (lo, hi) = self.refined_enclosure(&width);
            let (flo, fhi) = (lo.floor().to_integer(), hi.floor().to_integer());
            if flo == fhi {
                return flo;
            }
            // the enclosure straddles the integer fhi
            let k = Scalar::from_rational(&self.field, BigRational::from_integer(fhi.clone()));
            if (self - &k).signum() == Ordering::Equal {
                return fhi;
            }
            width /= BigRational::from_integer(BigInt::from(1u64 << 16));
        }
    }

    /// Representative of the value modulo ℤ in `[0, 1)`.
    pub fn fract(&self) -> Scalar {
        let k = Scalar::from_rational(&self.field, BigRational::from_integer(self.floor()));
        self - &k
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }
}

fn round_down(q: &BigRational) -> f64 {
    let f = q.to_f64().unwrap_or(f64::NEG_INFINITY);
    match BigRational::from_f64(f) {
        Some(exact) if exact > *q => f.next_down(),
        _ => f,
    }
}

fn round_up(q: &BigRational) -> f64 {
    let f = q.to_f64().unwrap_or(f64::INFINITY);
    match BigRational::from_f64(f) {
        Some(exact) if exact < *q => f.next_up(),
        _ => f,
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Scalar::from_coeffs(&self.field, coeffs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Scalar::from_coeffs(&self.field, coeffs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_field(rhs);
        if self.field.degree() == 1 {
            return Scalar::from_rational(&self.field, &self.coeffs[0] * &rhs.coeffs[0]);
        }
        let mut coeffs = poly::mul(&self.coeffs, &rhs.coeffs);
        self.field.reduce(&mut coeffs);
        Scalar::from_coeffs(&self.field, coeffs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar::from_coeffs(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

/// Renders the element in the scalar grammar, e.g. `2*θ^2 - 3/2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let monomial = match k {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{k}"),
            };
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&monomial)?;
            } else if magnitude.is_integer() {
                write!(f, "{magnitude}*{monomial}")?;
            } else {
                write!(f, "({magnitude})*{monomial}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

//! Dense univariate polynomials over ℚ, coefficients stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of a trimmed polynomial; `None` for the zero polynomial.
pub(crate) fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub(crate) fn sign_at(p: &[BigRational], x: &BigRational) -> Ordering {
    eval(p, x).cmp(&BigRational::zero())
}

pub(crate) fn derivative(p: &[BigRational]) -> Poly {
    let mut d: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect();
    trim(&mut d);
    d
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`. Panics if `b` is zero.
pub(crate) fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let coef = &rem[dr] / &lead;
        let shift = dr - db;
        for (k, c) in b.iter().enumerate().take(db + 1) {
            rem[shift + k] -= &coef * c;
        }
        quot[shift] = coef;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(x)
}

pub(crate) fn make_monic(mut p: Poly) -> Poly {
    if let Some(d) = degree(&p) {
        let lead = p[d].clone();
        for c in &mut p {
            *c = &*c / &lead;
        }
    }
    p
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)` monic.
pub(crate) fn ext_gcd_mod(a: &[BigRational], m: &[BigRational]) -> (Poly, Poly) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let d = degree(&r0).unwrap_or(0);
    let lead = r0.get(d).cloned().unwrap_or_else(BigRational::one);
    let g = r0.iter().map(|c| c / &lead).collect();
    let s = s0.iter().map(|c| c / &lead).collect();
    (g, s)
}

/// Sturm chain of a squarefree polynomial.
pub(crate) fn sturm_chain(p: &[BigRational]) -> Vec<Poly> {
    let mut chain = vec![p.to_vec(), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<Ordering> = chain
        .iter()
        .map(|p| sign_at(p, x))
        .filter(|s| *s != Ordering::Equal)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub(crate) fn count_roots(p: &[BigRational], lo: &BigRational, hi: &BigRational) -> usize {
    let chain = sturm_chain(p);
    sign_variations(&chain, lo).saturating_sub(sign_variations(&chain, hi))
}

/// Some rational root of `p`, if one exists (rational root theorem).
pub(crate) fn rational_root(p: &[BigRational]) -> Option<BigRational> {
    let d = degree(p)?;
    let denom_lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    if ints[0].is_zero() {
        return Some(BigRational::zero());
    }
    let num_divs = divisors(&ints[0].abs());
    let den_divs = divisors(&ints[d].abs());
    for q in &den_divs {
        for pp in &num_divs {
            for cand in [
                BigRational::new(pp.clone(), q.clone()),
                BigRational::new(-pp.clone(), q.clone()),
            ] {
                if eval(p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= *n {
        if (n % &k).is_zero() {
            small.push(k.clone());
            let other = n / &k;
            if other != k {
                large.push(other);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sturm_counts_roots_of_x2_minus_2() {
        let p = vec![q(-2), q(0), q(1)];
        assert_eq!(count_roots(&p, &q(-3), &q(3)), 2);
        assert_eq!(count_roots(&p, &q(1), &q(2)), 1);
        assert_eq!(count_roots(&p, &q(2), &q(3)), 0);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = vec![q(-2), q(0), q(1)];
        let b = vec![q(1), q(1)];
        assert_eq!(gcd(&a, &b), vec![q(1)]);
    }

    #[test]
    fn finds_rational_roots() {
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        let p = vec![q(1), q(-3), q(2)];
        let r = rational_root(&p).unwrap();
        assert!(eval(&p, &r).is_zero());
        assert_eq!(rational_root(&[q(-2), q(0), q(1)]), None);
    }

    #[test]
    fn inverse_modulo_minpoly() {
        let m = vec![q(-2), q(0), q(1)];
        let a = vec![q(1), q(1)]; // 1 + x
        let (g, s) = ext_gcd_mod(&a, &m);
        assert_eq!(g, vec![q(1)]);
        let (_, r) = div_rem(&mul(&a, &s), &m);
        assert_eq!(r, vec![q(1)]);
    }
}

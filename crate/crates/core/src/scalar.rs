//! Rational scalars, coordinate vectors and the integer normal forms used to
//! make geometric data canonical.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Coordinate vector over [`Scalar`].
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    Scalar::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn vector(coords: &[i64]) -> Vector {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn zeros(len: usize) -> Vector {
    (0..len).map(|_| Scalar::zero()).collect()
}

pub fn unit(len: usize, axis: usize) -> Vector {
    let mut v = zeros(len);
    v[axis] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Scalar], s: &Scalar) -> Vector {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Scalar], s: &Scalar, b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn sign(s: &Scalar) -> i8 {
    match s.cmp(&Scalar::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

pub fn to_f64_vec(v: &[Scalar]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Exact rational with the same value as a finite float.
pub fn from_f64(x: f64) -> Option<Scalar> {
    Scalar::from_float(x)
}

/// Scales `v` by a positive rational so that it becomes a coprime integer
/// vector. The zero vector maps to itself.
pub fn primitive_int(v: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive_of_ints(ints)
}

pub fn primitive_of_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

pub fn from_ints(v: &[BigInt]) -> Vector {
    v.iter().map(|x| Scalar::from_integer(x.clone())).collect()
}

/// Positive rescaling of `v` to a coprime integer vector, as rationals.
pub fn primitive(v: &[Scalar]) -> Vector {
    from_ints(&primitive_int(v))
}

/// Representative of the line through `v`: coprime integers with a positive
/// leading nonzero entry.
pub fn canonical_direction(v: &[Scalar]) -> Vector {
    let mut p = primitive(v);
    if p.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        p = neg(&p);
    }
    p
}

/// Counter-clockwise angular order on nonzero plane vectors, starting at the
/// positive first axis.
pub fn angle_cmp(a: &[Scalar], b: &[Scalar]) -> Ordering {
    let half = |v: &[Scalar]| {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        Scalar::zero().cmp(&cross)
    })
}

/// Lexicographic comparison of two rational vectors.
pub fn lex_cmp(a: &[Scalar], b: &[Scalar]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

pub fn sort_dedup(vs: &mut Vec<Vector>) {
    vs.sort_by(|a, b| lex_cmp(a, b));
    vs.dedup();
}

/// `(-1)^k` as a scalar.
pub fn parity_sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

//! Exact rational arithmetic and Lagrange four-square decompositions.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is value equality.
//! Integer decompositions use trial factorization and Euler's descent on each
//! prime factor, then multiply the per-prime quadruples together with Euler's
//! four-square identity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("expected a nonnegative value, got {0}")]
    Negative(String),
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Four rationals whose squares sum to the decomposed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourSquares {
    pub parts: [BigRat; 4],
}

impl FourSquares {
    pub fn zero() -> Self {
        FourSquares {
            parts: std::array::from_fn(|_| BigRat::zero()),
        }
    }

    /// `s1^2 + s2^2 + s3^2 + s4^2`.
    pub fn square_sum(&self) -> BigRat {
        self.parts
            .iter()
            .fold(BigRat::zero(), |acc, s| acc + s * s)
    }

    /// The parts that are not zero, in order.
    pub fn nonzero_parts(&self) -> impl Iterator<Item = &BigRat> {
        self.parts.iter().filter(|s| !s.is_zero())
    }
}

impl fmt::Display for FourSquares {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if s.is_integer() {
                write!(f, "{}^2", s)?;
            } else {
                write!(f, "({})^2", s)?;
            }
        }
        Ok(())
    }
}

/// Parses `a`, `-a` or `a/b` with decimal integers.
pub fn parse_rational(text: &str) -> Result<BigRat, ArithError> {
    let text = text.trim();
    let malformed = || ArithError::Malformed(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt, ArithError> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse::<BigInt>().map_err(|_| malformed())
    };
    match text.split_once('/') {
        None => Ok(BigRat::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ArithError::ZeroDenominator(text.to_string()));
            }
            Ok(BigRat::new(num, den))
        }
    }
}

/// Exact square root of a nonnegative rational, if it has one.
pub fn rational_sqrt(q: &BigRat) -> Option<BigRat> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(BigRat::new(n, d))
    } else {
        None
    }
}

/// Writes `n >= 0` as a sum of four integer squares.
///
/// Parts are returned as absolute values sorted in descending order, so the
/// result is a deterministic function of `n`.
pub fn four_squares_integer(n: &BigInt) -> Result<FourSquares, ArithError> {
    if n.is_negative() {
        return Err(ArithError::Negative(n.to_string()));
    }
    if n.is_zero() {
        return Ok(FourSquares::zero());
    }

    let mut scale = BigInt::one();
    let mut acc: [BigInt; 4] = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (p, e) in factorize(n) {
        for _ in 0..e / 2 {
            scale *= &p;
        }
        if e % 2 == 1 {
            let rep = prime_four_squares(&p);
            acc = euler_product(&acc, &rep);
        }
    }

    let mut parts: Vec<BigInt> = acc.iter().map(|x| x.abs() * &scale).collect();
    parts.sort_by(|a, b| b.cmp(a));
    Ok(FourSquares {
        parts: std::array::from_fn(|k| BigRat::from_integer(parts[k].clone())),
    })
}

/// Writes a nonnegative rational as a sum of four rational squares via
/// `a/b = ab/b^2`; every part has a denominator dividing `b`.
pub fn four_squares_rational(q: &BigRat) -> Result<FourSquares, ArithError> {
    if q.is_negative() {
        return Err(ArithError::Negative(q.to_string()));
    }
    let den = q.denom().clone();
    let ints = four_squares_integer(&(q.numer() * &den))?;
    Ok(FourSquares {
        parts: std::array::from_fn(|k| {
            BigRat::new(ints.parts[k].numer().clone(), den.clone())
        }),
    })
}

// Prime factorization by trial division, ascending primes.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut push = |p: &BigInt, m: &mut BigInt| {
        let mut e = 0;
        while (&*m % p).is_zero() {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
    };
    push(&BigInt::from(2), &mut m);
    let mut p = BigInt::from(3);
    while &p * &p <= m {
        push(&p, &mut m);
        p += 2;
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

fn euler_product(a: &[BigInt; 4], b: &[BigInt; 4]) -> [BigInt; 4] {
    [
        &a[0] * &b[0] - &a[1] * &b[1] - &a[2] * &b[2] - &a[3] * &b[3],
        &a[0] * &b[1] + &a[1] * &b[0] + &a[2] * &b[3] - &a[3] * &b[2],
        &a[0] * &b[2] - &a[1] * &b[3] + &a[2] * &b[0] + &a[3] * &b[1],
        &a[0] * &b[3] + &a[1] * &b[2] - &a[2] * &b[1] + &a[3] * &b[0],
    ]
}

// Four-square representation of a prime by Euler's descent.
fn prime_four_squares(p: &BigInt) -> [BigInt; 4] {
    let two = BigInt::from(2);
    if *p == two {
        return [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::zero()];
    }

    // a^2 + b^2 + 1 = m p with 0 < m < p
    let (a, b) = minus_one_as_two_squares(p);
    let mut x = [a, b, BigInt::one(), BigInt::zero()];
    let mut m: BigInt = x.iter().map(|v| v * v).sum::<BigInt>() / p;

    while !m.is_one() {
        if m.is_even() {
            // Pair entries of equal parity, then halve.
            x.sort_by_key(|v| v.is_odd());
            let (p0, p1) = (&x[0] + &x[1], &x[0] - &x[1]);
            let (p2, p3) = (&x[2] + &x[3], &x[2] - &x[3]);
            x = [p0 / &two, p1 / &two, p2 / &two, p3 / &two];
            m /= &two;
            continue;
        }
        let half = &m / &two;
        let y: [BigInt; 4] = std::array::from_fn(|k| {
            let r = x[k].mod_floor(&m);
            if r > half {
                r - &m
            } else {
                r
            }
        });
        let r: BigInt = y.iter().map(|v| v * v).sum::<BigInt>() / &m;
        let conj = [y[0].clone(), -&y[1], -&y[2], -&y[3]];
        let z = euler_product(&x, &conj);
        x = std::array::from_fn(|k| &z[k] / &m);
        m = r;
    }
    x
}

// Finds a, b in [0, p/2] with a^2 + b^2 + 1 = 0 mod p, scanning a upward.
fn minus_one_as_two_squares(p: &BigInt) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    loop {
        let r = (-(&a * &a) - 1i32).mod_floor(p);
        if let Some(b) = sqrt_mod_prime(&r, p) {
            let b = std::cmp::min(b.clone(), p - &b);
            return (a, b);
        }
        a += 1;
    }
}

// Tonelli-Shanks; None when r is a non-residue.
fn sqrt_mod_prime(r: &BigInt, p: &BigInt) -> Option<BigInt> {
    if r.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let pm1 = p - &one;
    if r.modpow(&(&pm1 >> 1), p) != one {
        return None;
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = r.modpow(&q, p);
    let mut root = r.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2 % p;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = &b * &b % p;
        }
        m = i;
        c = &b * &b % p;
        t = &t * &c % p;
        root = &root * &b % p;
    }
    Some(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(fs: &FourSquares) -> Vec<i64> {
        fs.parts
            .iter()
            .map(|s| s.to_integer().try_into().unwrap())
            .collect()
    }

    fn rat(a: i64, b: i64) -> BigRat {
        BigRat::new(a.into(), b.into())
    }

    #[test]
    fn small_integer_cases() {
        assert_eq!(ints(&four_squares_integer(&0.into()).unwrap()), [0, 0, 0, 0]);
        assert_eq!(ints(&four_squares_integer(&1.into()).unwrap()), [1, 0, 0, 0]);
        assert_eq!(ints(&four_squares_integer(&7.into()).unwrap()), [2, 1, 1, 1]);
        assert_eq!(ints(&four_squares_integer(&2.into()).unwrap()), [1, 1, 0, 0]);
    }

    // Brute force over all quadruples bounded by ceil(sqrt(7)) finds exactly
    // one multiset for 7, namely {2,1,1,1}.
    #[test]
    fn seven_matches_brute_force() {
        let mut found = std::collections::BTreeSet::new();
        for a in 0..=3i64 {
            for b in 0..=a {
                for c in 0..=b {
                    for d in 0..=c {
                        if a * a + b * b + c * c + d * d == 7 {
                            found.insert([a, b, c, d]);
                        }
                    }
                }
            }
        }
        assert_eq!(found.into_iter().collect::<Vec<_>>(), vec![[2, 1, 1, 1]]);
    }

    #[test]
    fn negative_is_rejected() {
        assert!(matches!(
            four_squares_integer(&(-3).into()),
            Err(ArithError::Negative(_))
        ));
        assert!(four_squares_rational(&rat(-1, 2)).is_err());
    }

    #[test]
    fn rational_three_quarters() {
        let fs = four_squares_rational(&rat(3, 4)).unwrap();
        assert_eq!(fs.square_sum(), rat(3, 4));
        for s in &fs.parts {
            assert!((BigInt::from(4) % s.denom()).is_zero());
        }
        let two = four_squares_rational(&rat(2, 1)).unwrap();
        assert_eq!(two.parts, [rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(four_squares_rational(&rat(0, 1)).unwrap(), FourSquares::zero());
    }

    #[test]
    fn large_prime_descent() {
        let p: BigInt = "1000000000039".parse().unwrap();
        let fs = four_squares_integer(&p).unwrap();
        assert_eq!(fs.square_sum(), BigRat::from_integer(p));
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 12 ").unwrap(), rat(12, 1));
        assert!(matches!(parse_rational("1/0"), Err(ArithError::ZeroDenominator(_))));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/").is_err());
    }

    #[test]
    fn display_form() {
        let fs = four_squares_integer(&7.into()).unwrap();
        assert_eq!(fs.to_string(), "2^2 + 1^2 + 1^2 + 1^2");
        let fs = four_squares_rational(&rat(1, 4)).unwrap();
        assert_eq!(fs.to_string(), "(1/2)^2 + 0^2 + 0^2 + 0^2");
    }

    #[test]
    fn perfect_square_detection() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }
}

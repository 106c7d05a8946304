//! Exact real quadratic numbers `(a + b*sqrt(d)) / c`.
//!
//! Every parameter of a two- or three-interval exchange handled by this crate
//! lives in a single real quadratic field, so one radicand per value suffices.
//! Mixing radicands is reported as [`Error::UnsupportedField`]. No floating
//! point is used anywhere except in [`QuadNumber::to_f64`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};

/// Canonical form: `c > 0`, `d` square-free and at least 2 whenever `b != 0`,
/// `d = 0` whenever `b = 0`, and `gcd(a, b, c) = 1` (zero is `0/1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: i64,
    b: i64,
    d: u64,
    c: i64,
}

fn gcd(mut x: i128, mut y: i128) -> i128 {
    x = x.abs();
    y = y.abs();
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    x
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

/// Splits `d = k^2 * r` with `r` square-free.
fn square_free_part(mut d: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut i = 2u64;
    while i.saturating_mul(i) <= d {
        while d.is_multiple_of(i * i) {
            d /= i * i;
            k *= i;
        }
        i += 1;
    }
    (k, d)
}

impl QuadNumber {
    pub const ZERO: QuadNumber = QuadNumber { a: 0, b: 0, d: 0, c: 1 };
    pub const ONE: QuadNumber = QuadNumber { a: 1, b: 0, d: 0, c: 1 };

    /// Builds `(a + b*sqrt(d)) / c`, normalizing to canonical form. A `d`
    /// carrying square factors is reduced (`sqrt(20)` becomes `2*sqrt(5)`).
    pub fn new(a: i64, b: i64, d: u64, c: i64) -> Result<Self> {
        Self::from_wide(a as i128, b as i128, d, c as i128)
    }

    fn from_wide(mut a: i128, mut b: i128, d: u64, mut c: i128) -> Result<Self> {
        if c == 0 {
            return Err(Error::DivisionByZero);
        }
        let (k, mut d) = square_free_part(d);
        b = b.checked_mul(k as i128).ok_or(Error::Overflow)?;
        if d <= 1 {
            if d == 1 {
                a = a.checked_add(b).ok_or(Error::Overflow)?;
            }
            b = 0;
        }
        if b == 0 {
            d = 0;
        }
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = gcd(gcd(a, b), c);
        if g > 1 {
            a /= g;
            b /= g;
            c /= g;
        }
        Ok(QuadNumber {
            a: narrow(a)?,
            b: narrow(b)?,
            d,
            c: narrow(c)?,
        })
    }

    pub fn integer(n: i64) -> Self {
        QuadNumber { a: n, b: 0, d: 0, c: 1 }
    }

    pub fn rational(p: i64, q: i64) -> Result<Self> {
        Self::new(p, 0, 0, q)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Radicand shared by `self` and `other`, 0 when both are rational.
    fn common_radicand(&self, other: &QuadNumber) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (d1, d2) if d1 == d2 => Ok(d1),
            (d1, d2) => Err(Error::UnsupportedField(d1, d2)),
        }
    }

    fn wide(&self) -> (i128, i128, i128) {
        (self.a as i128, self.b as i128, self.c as i128)
    }

    pub fn checked_add(&self, other: &QuadNumber) -> Result<QuadNumber> {
        let d = self.common_radicand(other)?;
        let (a1, b1, c1) = self.wide();
        let (a2, b2, c2) = other.wide();
        let a = a1 * c2 + a2 * c1;
        let b = b1 * c2 + b2 * c1;
        Self::from_wide(a, b, d, c1 * c2)
    }

    pub fn checked_sub(&self, other: &QuadNumber) -> Result<QuadNumber> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &QuadNumber) -> Result<QuadNumber> {
        let d = self.common_radicand(other)?;
        let (a1, b1, c1) = self.wide();
        let (a2, b2, c2) = other.wide();
        let a = (a1 * a2)
            .checked_add((b1 * b2).checked_mul(d as i128).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        let b = a1 * b2 + a2 * b1;
        Self::from_wide(a, b, d, c1 * c2)
    }

    pub fn checked_div(&self, other: &QuadNumber) -> Result<QuadNumber> {
        if other.signum() == Ordering::Equal {
            return Err(Error::DivisionByZero);
        }
        let d = self.common_radicand(other)?;
        // 1/((e + f*sqrt d)/g) = g (e - f*sqrt d) / (e^2 - f^2 d)
        let (e, f, g) = other.wide();
        let norm = (e * e)
            .checked_sub((f * f).checked_mul(d as i128).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        let (a1, b1, c1) = self.wide();
        // (a1 + b1 r)(e - f r) = a1 e - b1 f d + (b1 e - a1 f) r
        let a = (a1 * e)
            .checked_sub((b1 * f).checked_mul(d as i128).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?
            .checked_mul(g)
            .ok_or(Error::Overflow)?;
        let b = (b1 * e - a1 * f).checked_mul(g).ok_or(Error::Overflow)?;
        let c = c1.checked_mul(norm).ok_or(Error::Overflow)?;
        Self::from_wide(a, b, d, c)
    }

    pub fn neg(&self) -> QuadNumber {
        QuadNumber {
            a: -self.a,
            b: -self.b,
            ..*self
        }
    }

    /// Sign of the value, decided by integer arithmetic only.
    pub fn signum(&self) -> Ordering {
        let (a, b) = (self.a as i128, self.b as i128);
        if b == 0 {
            return a.cmp(&0);
        }
        match (a.signum(), b.signum()) {
            (0 | 1, 1) => Ordering::Greater,
            (0 | -1, -1) => Ordering::Less,
            _ => {
                // a and b of opposite signs: compare a^2 with b^2 d (never equal).
                let a2 = a * a;
                let b2d = (b * b) as u128 * self.d as u128;
                let rational_dominates = (a2 as u128).cmp(&b2d);
                if a > 0 {
                    rational_dominates
                } else {
                    rational_dominates.reverse()
                }
            }
        }
    }

    pub fn compare(&self, other: &QuadNumber) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// The unique integer `n` with `n <= x < n + 1`.
    pub fn floor(&self) -> Result<i64> {
        let (a, b, c) = self.wide();
        let numerator_floor = if b == 0 {
            a
        } else {
            // b^2 d is never a perfect square for square-free d >= 2.
            let root = ((b * b) as u128 * self.d as u128).isqrt() as i128;
            if b > 0 {
                a + root
            } else {
                a - root - 1
            }
        };
        // An integer multiple of c lies below the irrational numerator iff it
        // lies below its floor.
        narrow(numerator_floor.div_euclid(c))
    }

    /// `x - floor(x)`, always in `[0, 1)`.
    pub fn frac(&self) -> Result<QuadNumber> {
        self.checked_sub(&QuadNumber::integer(self.floor()?))
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    pub fn in_unit_interval(&self) -> bool {
        self.signum() != Ordering::Less && matches!(self.floor(), Ok(0))
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            if self.c == 1 {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else {
            let mut num = String::new();
            if self.a != 0 {
                num.push_str(&self.a.to_string());
                num.push(if self.b < 0 { '-' } else { '+' });
            } else if self.b < 0 {
                num.push('-');
            }
            if self.b.unsigned_abs() != 1 {
                num.push_str(&format!("{}*", self.b.unsigned_abs()));
            }
            num.push_str(&format!("sqrt({})", self.d));
            if self.c == 1 {
                f.write_str(&num)
            } else {
                write!(f, "({num})/{}", self.c)
            }
        }
    }
}

impl Serialize for QuadNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_int(token: &str) -> Result<i64> {
    token
        .parse::<i64>()
        .map_err(|_| parse_err(token, "expected an integer literal"))
}

/// Parses a sum of terms `n`, `k*sqrt(d)` or `sqrt(d)` into `(a, b, d)`.
fn parse_numerator(src: &str) -> Result<(i64, i64, u64)> {
    if src.is_empty() {
        return Err(parse_err(src, "empty numerator"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&src[start..i]);
            start = i;
        }
    }
    terms.push(&src[start..]);

    let (mut a, mut b, mut d) = (0i64, 0i64, 0u64);
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let sign = if negative { -1 } else { 1 };
        if let Some(pos) = body.find("sqrt(") {
            let inner = body[pos + 5..]
                .strip_suffix(')')
                .ok_or_else(|| parse_err(term, "unclosed sqrt("))?;
            let radicand: u64 = inner
                .parse()
                .map_err(|_| parse_err(inner, "expected a non-negative radicand"))?;
            let coeff = match &body[..pos] {
                "" => 1,
                prefix => parse_int(
                    prefix
                        .strip_suffix('*')
                        .ok_or_else(|| parse_err(prefix, "expected '*' before sqrt"))?,
                )?,
            };
            if b != 0 && d != radicand {
                return Err(Error::UnsupportedField(d, radicand));
            }
            d = radicand;
            b = b.checked_add(sign * coeff).ok_or(Error::Overflow)?;
        } else {
            a = a.checked_add(sign * parse_int(body)?).ok_or(Error::Overflow)?;
        }
    }
    Ok((a, b, d))
}

/// Accepts `(a+b*sqrt(d))/c`, `a+b*sqrt(d)`, `p/q` and `n`; whitespace is
/// ignored.
impl FromStr for QuadNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (numerator, denominator) = if let Some(rest) = compact.strip_prefix('(') {
            let close = rest
                .rfind(')')
                .ok_or_else(|| parse_err(s, "missing closing parenthesis"))?;
            let (inner, tail) = (&rest[..close], &rest[close + 1..]);
            let denominator = match tail {
                "" => 1,
                t => parse_int(
                    t.strip_prefix('/')
                        .ok_or_else(|| parse_err(t, "expected '/denominator'"))?,
                )?,
            };
            (inner.to_string(), denominator)
        } else if let Some((p, q)) = compact.split_once('/') {
            (p.to_string(), parse_int(q)?)
        } else {
            (compact.clone(), 1)
        };
        let (a, b, d) = parse_numerator(&numerator)?;
        if denominator == 0 {
            return Err(parse_err(s, "zero denominator"));
        }
        QuadNumber::new(a, b, d, denominator)
    }
}

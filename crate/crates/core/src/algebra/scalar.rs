use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::AlgebraError;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Parses `"7"`, `"-3/2"` or `" 4 / 6 "` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, AlgebraError> {
    let bad = |msg: &str| AlgebraError::Parse { pos: 0, msg: format!("{msg}: {text:?}") };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("bad rational numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad rational denominator"))?;
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Image of `q` in `F_p`. Fails when `p` divides the denominator.
pub fn rational_mod_p(q: &Rational, p: u64) -> Result<u64, AlgebraError> {
    let modulus = BigInt::from(p);
    let den = q.denom().mod_floor(&modulus).to_u64().unwrap_or(0);
    if den == 0 {
        return Err(AlgebraError::BadPrime {
            p,
            reason: format!("denominator of {} vanishes mod {p}", format_rational(q)),
        });
    }
    let num = q.numer().mod_floor(&modulus).to_u64().unwrap_or(0);
    Ok(mul_mod(num, pow_mod(den, p - 2, p), p))
}

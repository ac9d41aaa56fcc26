//! Rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is refused with a hint.
pub fn parse_rat(text: &str) -> Result<Rat, ArithError> {
    let s = text.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        let hint = decimal_hint(s).map(|r| format_rat(&r));
        return Err(ArithError::FloatForbidden {
            text: s.to_string(),
            hint,
        });
    }
    let bad = || ArithError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ArithError::DivisionByZero);
    }
    Ok(Rat::new(num, den))
}

fn decimal_hint(s: &str) -> Option<Rat> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, frac) = body.split_once('.')?;
    let digits = format!("{whole}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

/// Canonical `"p/q"` form; integers still carry `/1`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact form for human-readable output: `"3"` or `"3/4"`.
pub fn display_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rat(r)
    }
}

pub fn display_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(display_rat).collect();
    format!("({})", parts.join(", "))
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn denom_lcm<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Sup norm `max |v_i|` (zero for the empty vector).
pub fn sup_norm(v: &[Rat]) -> Rat {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
}

/// Scales a rational row by the lcm of its denominators, returning integers.
pub fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let l = denom_lcm(row);
    row.iter()
        .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), int(-4));
        assert_eq!(parse_rat(" 2 / -4 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_floats_with_hint() {
        match parse_rat("0.5") {
            Err(ArithError::FloatForbidden { hint, .. }) => assert_eq!(hint.as_deref(), Some("1/2")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_rat("1e3").is_err());
        assert!(matches!(parse_rat("1/0"), Err(ArithError::DivisionByZero)));
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn formats() {
        assert_eq!(format_rat(&int(2)), "2/1");
        assert_eq!(display_rat(&int(2)), "2");
        assert_eq!(display_rat(&rat(-3, 9)), "-1/3");
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
    }
}

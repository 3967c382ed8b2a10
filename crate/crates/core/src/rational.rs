//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every probability, density and bound.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

pub fn half() -> Q {
    q(1, 2)
}

/// `1 - x`.
pub fn complement(x: &Q) -> Q {
    Q::one() - x
}

/// Probability that two independent sides with `P(A)` equal to `x` and `y` coincide.
pub fn same_side(x: &Q, y: &Q) -> Q {
    x * y + complement(x) * complement(y)
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Renders `num/den` (always with an explicit denominator).
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `num/den`, a plain integer, or a finite decimal such as `0.3197`.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = |offset: usize, msg: &str| Error::parse(offset, format!("{msg} in rational {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad(0, "bad numerator"))?;
        let den: BigInt = d.trim().parse().map_err(|_| bad(n.len() + 1, "bad denominator"))?;
        if den.is_zero() {
            return Err(bad(n.len() + 1, "zero denominator"));
        }
        return Ok(Q::new(num, den));
    }
    if let Some((int_part, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(int_part.len() + 1, "bad fraction digits"));
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac);
        let mut num: BigInt = digits.parse().map_err(|_| bad(0, "bad decimal"))?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Q::new(num, den));
    }
    let num: BigInt = t.parse().map_err(|_| bad(0, "bad integer"))?;
    Ok(Q::from_integer(num))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents plus the final semiconvergent).
pub fn rationalize(x: f64, max_den: u64) -> Q {
    assert!(x.is_finite(), "cannot rationalize a non-finite value");
    assert!(max_den >= 1);
    let negative = x < 0.0;
    let mut rest = x.abs();
    let (mut p0, mut q0, mut p1, mut q1): (u128, u128, u128, u128) = (0, 1, 1, 0);
    let max_den = max_den as u128;
    loop {
        let a = rest.floor();
        if a > 1e30 {
            break;
        }
        let a = a as u128;
        let q2 = a * q1 + q0;
        if q2 > max_den {
            // semiconvergent with the largest admissible partial quotient
            let k = (max_den - q0) / q1.max(1);
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            if q1 > 0 {
                let conv = p1 as f64 / q1 as f64;
                let semi = ps as f64 / qs as f64;
                if (semi - x.abs()).abs() < (conv - x.abs()).abs() {
                    p1 = ps;
                    q1 = qs;
                }
            } else {
                p1 = ps;
                q1 = qs;
            }
            break;
        }
        let p2 = a * p1 + p0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = rest - a as f64;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    let value = Q::new(BigInt::from(p1), BigInt::from(q1.max(1)));
    if negative {
        -value
    } else {
        value
    }
}

/// Shortest exact decimal when the denominator has only factors 2 and 5,
/// otherwise the nearest `f64` printed with 17 significant digits.
pub fn decimal_string(x: &Q) -> String {
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{:.16e}", to_f64(x));
    }
    let places = twos.max(fives);
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = x.numer() * &scale / x.denom();
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    if places == 0 {
        return if negative { format!("-{digits}") } else { digits };
    }
    let padded = format!("{:0>width$}", digits, width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

/// Parses a value written by [`decimal_string`]. Exact decimals come back exactly;
/// scientific notation is read as the `f64` it denotes.
pub fn parse_decimal(text: &str) -> Result<Q> {
    if text.contains(['e', 'E']) {
        let v: f64 = text
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad float {text:?}")))?;
        return Q::from_float(v).ok_or_else(|| Error::parse(0, format!("non-finite {text:?}")));
    }
    parse_q(text)
}

/// Serde adapters writing rationals as `"num/den"` strings.
pub mod serde_q {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_q, parse_q, Q};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{format_q, parse_q, Q};

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(format_q))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_q(t).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod matrix {
        use serde::{Deserialize, Deserializer, Serializer};

        use super::super::{format_q, parse_q, Q};

        pub fn serialize<S: Serializer>(rows: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(rows.iter().map(|r| r.iter().map(format_q).collect::<Vec<_>>()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
            Vec::<Vec<String>>::deserialize(d)?
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|t| parse_q(t).map_err(serde::de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_q("-7").unwrap(), qi(-7));
        assert_eq!(parse_q("0.3197").unwrap(), q(3197, 10000));
        assert_eq!(format_q(&q(2, 4)), "1/2");
        assert_eq!(format_q(&qi(3)), "3/1");
        assert!(matches!(parse_q("1/0"), Err(Error::Parse { .. })));
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&q(1, 2)), "0.5");
        assert_eq!(decimal_string(&q(-3, 8)), "-0.375");
        assert_eq!(decimal_string(&qi(4)), "4");
        assert_eq!(decimal_string(&q(1, 40)), "0.025");
        let third = decimal_string(&q(1, 3));
        assert!(third.contains('e'));
        assert_eq!(to_f64(&parse_decimal(&third).unwrap()), 1.0 / 3.0);
        assert_eq!(parse_decimal("0.025").unwrap(), q(1, 40));
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.5, 1_000_000), q(1, 2));
        assert_eq!(rationalize(1.0 / 3.0, 1_000_000), q(1, 3));
        assert_eq!(rationalize(-0.2, 10), q(-1, 5));
        assert_eq!(rationalize(std::f64::consts::PI, 7), q(22, 7));
        let r = rationalize(std::f64::consts::PI, 1000);
        assert_eq!(r, q(355, 113));
        assert_eq!(rationalize(0.0, 5), qi(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}

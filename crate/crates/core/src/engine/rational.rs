//! Exact fractions for probabilities and averages.

use num_traits::{ToPrimitive, Zero};

pub type Rational = num_rational::Ratio<i64>;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// `"num/den"` in lowest terms, always with an explicit denominator.
pub fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_fraction(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<i64>().ok().map(Rational::from_integer),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Label form used in diagrams: the exact fraction when the denominator is
/// at most 99, otherwise three decimals. Integers print bare.
pub fn label(r: &Rational) -> String {
    if r.is_zero() {
        "0".to_string()
    } else if r.is_integer() {
        r.numer().to_string()
    } else if *r.denom() <= 99 {
        fraction_string(r)
    } else {
        format!("{:.3}", to_f64(r))
    }
}

/// Shortest decimal form with at most `places` digits, trailing zeros removed
/// (`3/2 -> "1.5"`, `7/6 -> "1.167"`).
pub fn decimal(r: &Rational, places: usize) -> String {
    let s = format!("{:.*}", places, to_f64(r));
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub(crate) mod serde_fraction {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fraction_string(r))
    }

    pub fn serialize_vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fraction_string(r))?;
        }
        seq.end()
    }
}

//! Text formats: rationals, points and generator files.
//!
//! A generator file has one algebra element per line, written as a rational
//! combination of `Yk1 Yk2 Yk3 Ya Yn1 Yn2 e1 e2 e3 e4`, for example
//! `Ya + 1/2*e1`. Everything after `#` is ignored.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{standard_generator, GeneratorLabel, IsoAlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{MinkVector, Scalar};

/// Parses `3`, `-2/5`, `0.125` or `1.5e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid number `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Scalar::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Scalar::from_integer(all);
    if shift >= 0 {
        value *= Scalar::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Scalar::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Parses four comma-separated rationals, optionally wrapped in parentheses.
pub fn parse_point(s: &str) -> Result<MinkVector> {
    let t = s.trim();
    let s = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected four coordinates, got `{s}`")));
    }
    let mut v = MinkVector::zero();
    for (slot, part) in v.0.iter_mut().zip(parts) {
        *slot = parse_rational(part)?;
    }
    Ok(v)
}

fn split_terms(line: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut sign = false;
    let mut current = String::new();
    let mut prev_was_e = false;
    for ch in line.chars() {
        let exponent_sign = prev_was_e && current.chars().all(|c| c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || c.is_whitespace());
        if (ch == '+' || ch == '-') && !exponent_sign {
            if !current.trim().is_empty() {
                terms.push((sign, current.trim().to_string()));
                current.clear();
                sign = ch == '-';
            } else {
                sign ^= ch == '-';
            }
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            prev_was_e = (ch == 'e' || ch == 'E') && current.len() > 1;
        }
    }
    if current.trim().is_empty() {
        return Err(Error::Parse(format!("dangling operator in `{line}`")));
    }
    terms.push((sign, current.trim().to_string()));
    Ok(terms)
}

/// Parses one element such as `Ya + 1/2*e1` or `-2*Yk1 + e3 - 3/4 e4`.
pub fn parse_element(line: &str) -> Result<IsoAlgebraElement> {
    let mut out = IsoAlgebraElement::zero();
    for (neg, term) in split_terms(line)? {
        let (coef, token) = match term.rsplit_once('*') {
            Some((c, t)) => (parse_rational(c)?, t.trim()),
            None => match term.split_once(char::is_whitespace) {
                Some((c, t)) => (parse_rational(c)?, t.trim()),
                None => (Scalar::one(), term.as_str()),
            },
        };
        let label: GeneratorLabel = token.parse()?;
        let coef = if neg { -coef } else { coef };
        out = out.add(&standard_generator(label).scale(&coef));
    }
    Ok(out)
}

/// Parses a generator file, skipping blank lines and `#` comments.
pub fn parse_generator_file(text: &str) -> Result<Vec<IsoAlgebraElement>> {
    text.lines()
        .enumerate()
        .filter_map(|(n, line)| {
            let body = line.split('#').next().unwrap_or("").trim();
            (!body.is_empty()).then(|| {
                parse_element(body).map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};
    use GeneratorLabel::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" -2/6 ").unwrap(), frac(-1, 3));
        assert_eq!(parse_rational("0.125").unwrap(), frac(1, 8));
        assert_eq!(parse_rational("-1.5e-1").unwrap(), frac(-3, 20));
        assert_eq!(parse_rational("2e3").unwrap(), int(2000));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1,0,1/2,-3").unwrap(), MinkVector([int(1), int(0), frac(1, 2), int(-3)]));
        assert!(parse_point("1,2,3").is_err());
    }

    #[test]
    fn elements() {
        let a = parse_element("Ya + 1/2*e1").unwrap();
        assert_eq!(a, standard_generator(Ya).add(&standard_generator(E1).scale(&frac(1, 2))));
        let b = parse_element("-2*Yk1 + e3 - 3/4 e4").unwrap();
        let expected = standard_generator(Yk1)
            .scale(&int(-2))
            .add(&standard_generator(E3))
            .sub(&standard_generator(E4).scale(&frac(3, 4)));
        assert_eq!(b, expected);
        assert_eq!(parse_element("1e-1*e2").unwrap(), standard_generator(E2).scale(&frac(1, 10)));
        assert!(parse_element("Ya +").is_err());
        assert!(parse_element("Yq").is_err());
    }

    #[test]
    fn files() {
        let text = "# SO(3) x R e4\nYk1\nYk2  # second\n\nYk3\ne4\n";
        let elems = parse_generator_file(text).unwrap();
        assert_eq!(elems.len(), 4);
        assert_eq!(elems[3], standard_generator(E4));
        let err = parse_generator_file("Yk1\nfoo\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}

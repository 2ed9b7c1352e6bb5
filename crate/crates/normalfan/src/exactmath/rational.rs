use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar. `BigRational` keeps the canonical form we need:
/// positive denominator and gcd(|num|, den) = 1 after every operation.
pub type Rat = BigRational;

/// `p/q` as a rational. Panics on `q = 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` with optional sign. Whitespace is trimmed.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| format!("bad rational numerator in {s:?}"))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| format!("bad rational denominator in {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

/// Wire form: `"p/q"`, or just `"p"` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

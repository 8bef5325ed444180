//! Exact rational scalars.
//!
//! `Rat` is `num::BigRational`: always in lowest terms with a positive
//! denominator, which is exactly the invariant the rest of the library
//! relies on. The helpers here add construction shortcuts, the "p/q"
//! string form used by the CLI, and exact n-th roots.

use crate::error::{CoreError, Result};
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

pub type Rat = BigRational;

/// Integer shortcut.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction shortcut; `d` must be nonzero.
pub fn ratq(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Render as "p/q", or "p" when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p", "p/q", or "-p/q" (arbitrary precision).
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num_s
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad integer {num_s:?}")))?;
    let d: BigInt = den_s
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad integer {den_s:?}")))?;
    if d.is_zero() {
        return Err(CoreError::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

/// Exact n-th root of a rational, n >= 1.
///
/// For even n the argument must be nonnegative and the nonnegative root is
/// returned; the branch adjustment for the (a^4)^{1/4} := a rule is the
/// caller's job (it knows the sign of a). Errors when the root is not
/// rational.
pub fn nth_root(r: &Rat, n: u32) -> Result<Rat> {
    if n == 1 {
        return Ok(r.clone());
    }
    let err = || CoreError::NonRationalRoot(rat_to_string(r), format!("1/{n}"));
    if r.is_negative() && n % 2 == 0 {
        return Err(err());
    }
    let root_part = |x: &BigInt| -> Result<BigInt> {
        let (sign, mag) = (x.sign(), x.abs());
        let root = mag.nth_root(n);
        if num::pow::pow(root.clone(), n as usize) != mag {
            return Err(err());
        }
        Ok(if sign == Sign::Minus { -root } else { root })
    };
    Ok(BigRational::new(root_part(r.numer())?, root_part(r.denom())?))
}

/// Exact rational power r^(p/q) under the positive branch, used where no
/// sign hint is available.
pub fn pow_rat(r: &Rat, alpha: &Rat) -> Result<Rat> {
    let p = alpha.numer();
    let q: u32 = alpha
        .denom()
        .try_into()
        .map_err(|_| CoreError::NonRationalRoot(rat_to_string(r), rat_to_string(alpha)))?;
    let root = nth_root(r, q)?;
    let p_abs: u32 = p
        .abs()
        .try_into()
        .map_err(|_| CoreError::NonRationalRoot(rat_to_string(r), rat_to_string(alpha)))?;
    let powed = num::pow::pow(root, p_abs as usize);
    if p.is_negative() {
        if powed.is_zero() {
            return Err(CoreError::NonRationalRoot(rat_to_string(r), rat_to_string(alpha)));
        }
        Ok(powed.recip())
    } else {
        Ok(powed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "5", "-3", "22/7", "-22/7"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        assert_eq!(rat_to_string(&rat_from_str("4/6").unwrap()), "2/3");
    }

    #[test]
    fn roots() {
        assert_eq!(nth_root(&rat(16), 4).unwrap(), rat(2));
        assert_eq!(nth_root(&ratq(-27, 8), 3).unwrap(), ratq(-3, 2));
        assert!(nth_root(&rat(2), 2).is_err());
        assert!(nth_root(&rat(-4), 2).is_err());
        assert_eq!(pow_rat(&rat(64), &ratq(-1, 6)).unwrap(), ratq(1, 2));
    }
}

//! Arbitrary-precision rational helpers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used everywhere in this crate.
pub type Rat = BigRational;

/// Shorthand constructor from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p/q" or "p" into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |why: &str| Error::ParseError { reason: format!("invalid rational `{s}`: {why}") };
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| bad("bad numerator"))?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| bad("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Canonical display form: reduced, "p/q" with the "/1" omitted.
pub fn rat_to_string(x: &Rat) -> String {
    x.to_string()
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out-of-range values only arise from pathological inputs; saturate.
        if x.is_negative() {
            f64::MIN
        } else {
            f64::MAX
        }
    })
}

/// If `x` is the square of a rational, returns that (nonnegative) square root.
pub fn rat_sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(Rat::zero());
    }
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Best rational approximation of `x` among all rationals with denominator
/// at most `max_den`, via continued-fraction convergents and the final
/// semiconvergent. Ties prefer the smaller denominator.
pub fn best_approx(x: &Rat, max_den: &BigInt) -> Rat {
    assert!(max_den.sign() == Sign::Plus, "denominator bound must be positive");
    if x.denom() <= max_den {
        return x.clone();
    }
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    // Convergents h/k; start with h_{-1}/k_{-1} = 1/0 and h_0/k_0 = a_0/1.
    let mut h_prev = BigInt::one();
    let mut k_prev = BigInt::zero();
    let (mut h, mut k);
    {
        let (a0, r) = p.div_mod_floor(&q);
        h = a0;
        k = BigInt::one();
        p = q;
        q = r;
    }
    loop {
        if q.is_zero() {
            // Exact expansion terminated within the bound (handled above),
            // so this is unreachable, but return the last convergent anyway.
            return Rat::new(h, k);
        }
        let (a, r) = p.div_mod_floor(&q);
        let k_next = &a * &k + &k_prev;
        if k_next > *max_den {
            // Largest admissible semiconvergent coefficient.
            let a_cut = (max_den - &k_prev).div_floor(&k);
            let conv = Rat::new(h.clone(), k.clone());
            if a_cut.is_zero() {
                return conv;
            }
            let semi = Rat::new(&a_cut * &h + &h_prev, &a_cut * &k + &k_prev);
            let d_semi = (x - &semi).abs();
            let d_conv = (x - &conv).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        let h_next = &a * &h + &h_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        p = std::mem::replace(&mut q, r);
    }
}

/// Exact rational value of an `f64` (every finite float is dyadic).
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float required")
}

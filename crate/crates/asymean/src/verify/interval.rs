//! Rational interval arithmetic with outward dyadic rounding.
//!
//! Endpoints are exact `BigRational`s; [`Interval::outward`] rounds them
//! to multiples of `2⁻ᵇ` (down for the lower end, up for the upper) so
//! long computations keep bounded denominators without ever shrinking
//! the enclosure. Elementary functions (`ln`, rational powers) return
//! enclosures with certified remainder bounds.

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

/// `2^e` as a rational, for integer `e` of either sign.
pub fn pow2(e: i64) -> BigRational {
    let unit = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        BigRational::from_integer(unit)
    } else {
        BigRational::new(BigInt::one(), unit)
    }
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Interval {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn zero() -> Interval {
        Interval::point(BigRational::zero())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Round endpoints outward to multiples of `2⁻ᵇ`.
    pub fn outward(&self, bits: u32) -> Interval {
        let scale = pow2(bits as i64);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &BigRational) -> Interval {
        if q.is_negative() {
            Interval {
                lo: &self.hi * q,
                hi: &self.lo * q,
            }
        } else {
            Interval {
                lo: &self.lo * q,
                hi: &self.hi * q,
            }
        }
    }

    pub fn shift(&self, q: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + q,
            hi: &self.hi + q,
        }
    }

    /// Division; the divisor must exclude zero.
    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if !other.is_positive() && !other.is_negative() {
            return Err(Error::Precision(
                "interval division by an enclosure of zero".into(),
            ));
        }
        let recip = Interval {
            lo: other.hi.recip(),
            hi: other.lo.recip(),
        };
        Ok(self.mul(&recip))
    }

    pub fn abs(&self) -> Interval {
        if self.is_positive() {
            self.clone()
        } else if self.is_negative() {
            self.neg()
        } else {
            Interval {
                lo: BigRational::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            }
        }
    }

    /// Symmetric widening by `r ≥ 0`.
    pub fn widen(&self, r: &BigRational) -> Interval {
        Interval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    /// `[lo, hi]` with both endpoints rendered to `digits` significant
    /// decimal digits, lower end rounded down, upper end rounded up.
    pub fn to_decimal(&self, digits: u32) -> String {
        format!(
            "[{}, {}]",
            decimal_directed(&self.lo, digits, false),
            decimal_directed(&self.hi, digits, true)
        )
    }
}

/// Scientific-notation rendering of `q` to `digits` significant digits,
/// rounded toward `+∞` (`up`) or `−∞`.
pub fn decimal_directed(q: &BigRational, digits: u32, up: bool) -> String {
    let digits = digits.max(1) as i64;
    if q.is_zero() {
        return "0".into();
    }
    let mag = q.abs();
    // decimal exponent e with 10^e <= |q| < 10^{e+1}
    let num_digits = mag.numer().to_string().len() as i64;
    let den_digits = mag.denom().to_string().len() as i64;
    let mut e = num_digits - den_digits;
    let pow10 = |k: i64| -> BigRational {
        let p = num::pow::pow(BigInt::from(10), k.unsigned_abs() as usize);
        if k >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        }
    };
    if mag < pow10(e) {
        e -= 1;
    } else if mag >= pow10(e + 1) {
        e += 1;
    }
    // mantissa scaled to `digits` integer digits, rounded as directed
    let scaled = q * pow10(digits - 1 - e);
    let mant = if up { scaled.ceil() } else { scaled.floor() };
    let mut m = mant.to_integer();
    // rounding may carry into an extra digit (e.g. 999 -> 1000)
    if m.magnitude().to_string().len() as i64 > digits {
        m /= BigInt::from(10);
        e += 1;
    }
    let sign = if m.is_negative() { "-" } else { "" };
    let ms = m.magnitude().to_string();
    let (head, tail) = ms.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

fn ln2_cache() -> &'static Mutex<HashMap<u32, Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pi_cache() -> &'static Mutex<HashMap<u32, Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

const GUARD: u32 = 32;

/// `⌊q · 2^w⌋` — entry point into fixed-point arithmetic.
pub(super) fn fix_floor(q: &BigRational, w: u32) -> BigInt {
    (q.numer().clone() << w as usize).div_floor(q.denom())
}

/// `⌈q · 2^w⌉`.
pub(super) fn fix_ceil(q: &BigRational, w: u32) -> BigInt {
    (q.numer().clone() << w as usize).div_ceil(q.denom())
}

/// Interval from fixed-point bounds at scale `2^w`.
pub(super) fn fixed_to_interval(lo: BigInt, hi: BigInt, w: u32) -> Interval {
    let den = BigInt::one() << w as usize;
    Interval::new(
        BigRational::new(lo, den.clone()),
        BigRational::new(hi, den),
    )
}

/// `atanh(z)` for rational `0 ≤ z ≤ 1/2`, via the odd series with the
/// geometric tail bound `z^{2J+1}/((2J+1)(1−z²))`.
///
/// The loop runs in fixed point — integers scaled by `2^work`, floor/ceil
/// division keeping the two bounds directed — because rational arithmetic
/// would gcd-reduce on every operation and dominate the runtime.
fn atanh_small(z: &BigRational, bits: u32) -> Interval {
    let work = bits + GUARD + 16;
    let one = BigInt::one() << work as usize;
    let target = BigInt::one() << (work - bits - 8) as usize;
    let z_lo = fix_floor(z, work);
    let z_hi = fix_ceil(z, work);
    let z2_lo = (&z_lo * &z_lo).div_floor(&one);
    let z2_hi = (&z_hi * &z_hi).div_ceil(&one);
    let mut p_lo = z_lo; // z^{2j+1}, rounded down
    let mut p_hi = z_hi; // z^{2j+1}, rounded up
    let mut s_lo = BigInt::zero();
    let mut s_hi = BigInt::zero();
    let mut j = 0u64;
    loop {
        let d = BigInt::from(2 * j + 1);
        s_lo += p_lo.div_floor(&d);
        s_hi += p_hi.div_ceil(&d);
        p_lo = (p_lo * &z2_lo).div_floor(&one);
        p_hi = (p_hi * &z2_hi).div_ceil(&one);
        j += 1;
        let denom = BigInt::from(2 * j + 1) * (&one - &z2_hi);
        let tail = (p_hi.clone() << work as usize).div_ceil(&denom);
        if tail < target {
            return fixed_to_interval(s_lo, s_hi + tail, work);
        }
    }
}

/// Enclosure of `ln 2`, cached per precision.
pub fn ln2(bits: u32) -> Interval {
    if let Some(v) = ln2_cache().lock().unwrap().get(&bits) {
        return v.clone();
    }
    // ln 2 = 2 atanh(1/3)
    let v = atanh_small(&BigRational::new(1.into(), 3.into()), bits + 4)
        .scale(&BigRational::from_integer(2.into()))
        .outward(bits + GUARD);
    ln2_cache().lock().unwrap().insert(bits, v.clone());
    v
}

/// Enclosure of `ln q` for rational `q > 0`.
pub fn ln_rational(q: &BigRational, bits: u32) -> Result<Interval> {
    if !q.is_positive() {
        return Err(Error::Validation(format!(
            "ln requires a positive argument, got {q}"
        )));
    }
    let work = bits + GUARD;
    // argument reduction: q = v · 2^k with 1 <= v < 2
    let mut v = q.clone();
    let mut k: i64 = 0;
    let two = BigRational::from_integer(2.into());
    while v >= two {
        v /= &two;
        k += 1;
    }
    while v < BigRational::one() {
        v *= &two;
        k -= 1;
    }
    // ln v = 2 atanh((v-1)/(v+1)); the kernel rounds both directions
    let z = (&v - BigRational::one()) / (&v + BigRational::one());
    let ln_v = atanh_small(&z, bits + 4).scale(&two);
    let result = ln_v.add(&ln2(bits).scale(&BigRational::from_integer(k.into())));
    Ok(result.outward(work))
}

/// Enclosure of `ln` over an interval (monotone).
pub fn ln_interval(x: &Interval, bits: u32) -> Result<Interval> {
    let lo = ln_rational(x.lo(), bits)?;
    let hi = ln_rational(x.hi(), bits)?;
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()))
}

/// `atan(z)` for rational `0 < z ≤ 1/5`, alternating series in the same
/// fixed-point style as [`atanh_small`]; the remainder is bounded by the
/// first omitted term.
fn atan_small(z: &BigRational, bits: u32) -> Interval {
    let work = bits + GUARD + 16;
    let one = BigInt::one() << work as usize;
    let target = BigInt::one() << (work - bits - 8) as usize;
    let z_lo = fix_floor(z, work);
    let z_hi = fix_ceil(z, work);
    let z2_lo = (&z_lo * &z_lo).div_floor(&one);
    let z2_hi = (&z_hi * &z_hi).div_ceil(&one);
    let mut p_lo = z_lo;
    let mut p_hi = z_hi;
    let mut s_lo = BigInt::zero();
    let mut s_hi = BigInt::zero();
    let mut j = 0u64;
    loop {
        let d = BigInt::from(2 * j + 1);
        if j % 2 == 0 {
            s_lo += p_lo.div_floor(&d);
            s_hi += p_hi.div_ceil(&d);
        } else {
            s_lo -= p_hi.div_ceil(&d);
            s_hi -= p_lo.div_floor(&d);
        }
        p_lo = (p_lo * &z2_lo).div_floor(&one);
        p_hi = (p_hi * &z2_hi).div_ceil(&one);
        j += 1;
        let tail = p_hi.div_ceil(&BigInt::from(2 * j + 1));
        if tail < target {
            return fixed_to_interval(s_lo - &tail, s_hi + &tail, work);
        }
    }
}

/// Enclosure of `π`, cached per precision (Machin's formula).
pub fn pi(bits: u32) -> Interval {
    if let Some(v) = pi_cache().lock().unwrap().get(&bits) {
        return v.clone();
    }
    let a = atan_small(&BigRational::new(1.into(), 5.into()), bits + 8);
    let b = atan_small(&BigRational::new(1.into(), 239.into()), bits + 8);
    let v = a
        .scale(&BigRational::from_integer(16.into()))
        .sub(&b.scale(&BigRational::from_integer(4.into())))
        .outward(bits + GUARD);
    pi_cache().lock().unwrap().insert(bits, v.clone());
    v
}

/// Directed `q`-th integer root: `⌊v^{1/q}⌋` and `⌈v^{1/q}⌉` bracketing.
fn nth_root_bracket(v: &BigInt, q: u32) -> (BigInt, BigInt) {
    let r = v.nth_root(q);
    let mut rq = BigInt::one();
    for _ in 0..q {
        rq *= &r;
    }
    if &rq == v {
        (r.clone(), r)
    } else {
        (r.clone(), r + BigInt::one())
    }
}

/// Enclosure of `base^(p/q)` for rational `base > 0` and exponent in
/// lowest terms with `q ≥ 1`.
pub fn pow_rational(base: &BigRational, expo: &BigRational, bits: u32) -> Result<Interval> {
    if !base.is_positive() {
        return Err(Error::Validation(format!(
            "rational power requires a positive base, got {base}"
        )));
    }
    let q: u32 = expo
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Precision("power denominator too large".into()))?;
    // integer power first (exact)
    let ip: i64 = expo
        .numer()
        .to_i64()
        .ok_or_else(|| Error::Precision("power numerator too large".into()))?;
    let mut v = BigRational::one();
    let abs_ip = ip.unsigned_abs();
    let mut acc = base.clone();
    let mut e = abs_ip;
    while e > 0 {
        if e & 1 == 1 {
            v *= &acc;
        }
        acc = &acc * &acc;
        e >>= 1;
    }
    if ip < 0 {
        v = v.recip();
    }
    if q == 1 {
        return Ok(Interval::point(v));
    }
    // q-th root of v via integer roots at scale 2^{q·B}
    let work = (bits + GUARD) as i64;
    let scale_q = BigInt::one() << (q as usize * work as usize);
    let lo_int = (v.numer() * &scale_q) / v.denom(); // floor
    let hi_int = (v.numer() * &scale_q + v.denom() - BigInt::one()) / v.denom(); // ceil
    let (rl, _) = nth_root_bracket(&lo_int, q);
    let (_, rh) = nth_root_bracket(&hi_int, q);
    let unit = pow2(-work);
    Ok(Interval::new(
        BigRational::from_integer(rl) * &unit,
        BigRational::from_integer(rh) * &unit,
    ))
}

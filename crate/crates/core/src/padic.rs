//! Truncated arithmetic in the p-adic numbers.
//!
//! A nonzero [`PAdic`] is stored in relative-precision form
//! `p^v · u + O(p^(v + r))` with `u` a unit modulo `p^r`. Every value
//! carries its own relative precision `r <= N`, so digits lost to
//! cancellation in a sum are never silently replaced by zeros.
//!
//! A value whose carried digits all vanish is *zero to precision*
//! (`O(p^a)`). Its valuation is unknown and asking for it is an error.
//! The exact zero (e.g. the literal `0` in an input matrix) is the same
//! state with an unbounded absolute precision.

use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Absolute precision of the exact zero.
const EXACT: i64 = i64::MAX;

/// The prime and working precision shared by all values of one computation.
#[derive(Debug)]
pub struct PadicContext {
    prime: u64,
    precision: u32,
    prime_big: BigUint,
    powers: Vec<BigUint>,
}

impl PadicContext {
    pub fn new(prime: u64, precision: u32) -> Result<Arc<Self>> {
        if !is_prime(prime) {
            return Err(Error::InvalidContext(format!("{prime} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidContext("precision must be at least 1".into()));
        }
        let prime_big = BigUint::from(prime);
        let mut powers = Vec::with_capacity(precision as usize + 1);
        let mut acc = BigUint::one();
        for _ in 0..=precision {
            powers.push(acc.clone());
            acc *= &prime_big;
        }
        Ok(Arc::new(PadicContext {
            prime,
            precision,
            prime_big,
            powers,
        }))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^k`, borrowed from the table when `k <= N`.
    pub fn pow(&self, k: u32) -> Cow<'_, BigUint> {
        match self.powers.get(k as usize) {
            Some(x) => Cow::Borrowed(x),
            None => Cow::Owned(self.prime_big.pow(k)),
        }
    }

    pub(crate) fn prime_big(&self) -> &BigUint {
        &self.prime_big
    }

    /// p-adic valuation of a nonzero natural number, together with its
    /// prime-to-p part.
    pub(crate) fn split_valuation(&self, x: &BigUint) -> (u32, BigUint) {
        debug_assert!(!x.is_zero());
        if self.prime == 2 {
            let k = x.trailing_zeros().unwrap_or(0);
            return (k as u32, x >> k);
        }
        let mut k = 0;
        let mut cur = x.clone();
        loop {
            let (q, r) = cur.div_rem(&self.prime_big);
            if !r.is_zero() {
                return (k, cur);
            }
            cur = q;
            k += 1;
        }
    }

    fn same(self: &Arc<Self>, other: &Arc<Self>) -> Result<()> {
        if Arc::ptr_eq(self, other)
            || (self.prime == other.prime && self.precision == other.precision)
        {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left_prime: self.prime,
                left_precision: self.precision,
                right_prime: other.prime,
                right_precision: other.precision,
            })
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero { abs: i64 },
    Unit { val: i64, rel: u32, unit: BigUint },
}

/// A truncated p-adic number.
#[derive(Clone)]
pub struct PAdic {
    ctx: Arc<PadicContext>,
    repr: Repr,
}

impl PAdic {
    /// The exact zero.
    pub fn zero(ctx: &Arc<PadicContext>) -> Self {
        PAdic {
            ctx: ctx.clone(),
            repr: Repr::Zero { abs: EXACT },
        }
    }

    /// `O(p^abs)`: a value known only to vanish modulo `p^abs`.
    pub fn zero_to_precision(ctx: &Arc<PadicContext>, abs: i64) -> Self {
        PAdic {
            ctx: ctx.clone(),
            repr: Repr::Zero { abs },
        }
    }

    pub fn one(ctx: &Arc<PadicContext>) -> Self {
        Self::prime_power(ctx, 0)
    }

    /// `p^k`, carried at full precision.
    pub fn prime_power(ctx: &Arc<PadicContext>, k: i64) -> Self {
        PAdic {
            ctx: ctx.clone(),
            repr: Repr::Unit {
                val: k,
                rel: ctx.precision,
                unit: BigUint::one(),
            },
        }
    }

    /// `p^val · unit`, where `unit` must be prime to p. The unit is reduced
    /// modulo `p^N`.
    pub fn from_unit(ctx: &Arc<PadicContext>, val: i64, unit: &BigUint) -> Result<Self> {
        let n = ctx.precision;
        let unit = unit % ctx.pow(n).as_ref();
        if (&unit % ctx.prime_big()).is_zero() {
            return Err(Error::Parse("unit part is divisible by p".into()));
        }
        Ok(PAdic {
            ctx: ctx.clone(),
            repr: Repr::Unit { val, rel: n, unit },
        })
    }

    pub fn from_i64(ctx: &Arc<PadicContext>, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    pub fn from_bigint(ctx: &Arc<PadicContext>, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero(ctx);
        }
        let (v, rest) = ctx.split_valuation(n.magnitude());
        let modulus = ctx.pow(ctx.precision);
        let mut unit = rest % modulus.as_ref();
        if n.sign() == Sign::Minus {
            unit = modulus.as_ref() - unit;
        }
        PAdic {
            ctx: ctx.clone(),
            repr: Repr::Unit {
                val: v as i64,
                rel: ctx.precision,
                unit,
            },
        }
    }

    pub fn from_rational(ctx: &Arc<PadicContext>, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_bigint(ctx, num).div(&Self::from_bigint(ctx, den))
    }

    /// Parses a decimal integer (`"-12"`) or a rational (`"3/25"`).
    pub fn parse(ctx: &Arc<PadicContext>, s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad number {t:?}: {e}")))
        };
        match s.split_once('/') {
            Some((a, b)) => Self::from_rational(ctx, &parse_int(a)?, &parse_int(b)?),
            None => Ok(Self::from_bigint(ctx, &parse_int(s)?)),
        }
    }

    pub fn context(&self) -> &Arc<PadicContext> {
        &self.ctx
    }

    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs: EXACT })
    }

    pub fn valuation(&self) -> Result<i64> {
        match self.repr {
            Repr::Unit { val, .. } => Ok(val),
            Repr::Zero { abs: EXACT } => Err(Error::precision("valuation of exact zero")),
            Repr::Zero { abs } => Err(Error::precision(format!(
                "valuation of a value that is O(p^{abs})"
            ))),
        }
    }

    /// The valuation if known, else the absolute precision of the zero
    /// (`i64::MAX` for the exact zero). Always a valid lower bound.
    pub fn valuation_bound(&self) -> i64 {
        match self.repr {
            Repr::Unit { val, .. } => val,
            Repr::Zero { abs } => abs,
        }
    }

    /// `None` for the exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Unit { val, rel, .. } => Some(val + rel as i64),
            Repr::Zero { abs: EXACT } => None,
            Repr::Zero { abs } => Some(abs),
        }
    }

    /// Number of significant digits carried; zero for zero-to-precision.
    pub fn relative_precision(&self) -> u32 {
        match self.repr {
            Repr::Unit { rel, .. } => rel,
            Repr::Zero { .. } => 0,
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            Repr::Zero { .. } => None,
        }
    }

    fn with(&self, repr: Repr) -> Self {
        PAdic {
            ctx: self.ctx.clone(),
            repr,
        }
    }

    /// `p^val · s + O(p^(val + len))` where `s` is an arbitrary residue
    /// modulo `p^len`.
    fn normalized(&self, val: i64, len: u32, s: BigUint) -> Self {
        if s.is_zero() {
            return self.with(Repr::Zero {
                abs: val + len as i64,
            });
        }
        let (k, unit) = self.ctx.split_valuation(&s);
        self.with(Repr::Unit {
            val: val + k as i64,
            rel: len - k,
            unit,
        })
    }

    pub fn add(&self, other: &PAdic) -> Result<PAdic> {
        self.ctx.same(&other.ctx)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Zero { abs: a }, Repr::Zero { abs: b }) => {
                self.with(Repr::Zero { abs: *a.min(b) })
            }
            (Repr::Zero { abs }, Repr::Unit { .. }) => other.cap_absolute(*abs),
            (Repr::Unit { .. }, Repr::Zero { abs }) => self.cap_absolute(*abs),
            (
                Repr::Unit {
                    val: v1,
                    rel: r1,
                    unit: u1,
                },
                Repr::Unit {
                    val: v2,
                    rel: r2,
                    unit: u2,
                },
            ) => {
                let ((v1, r1, u1), (v2, r2, u2)) = if v1 <= v2 {
                    ((*v1, *r1, u1), (*v2, *r2, u2))
                } else {
                    ((*v2, *r2, u2), (*v1, *r1, u1))
                };
                let abs = (v1 + r1 as i64).min(v2 + r2 as i64);
                let len = (abs - v1) as u32;
                let shift = (v2 - v1) as u64;
                let modulus = self.ctx.pow(len);
                let s = if shift < len as u64 {
                    (u1 + self.ctx.pow(shift as u32).as_ref() * u2) % modulus.as_ref()
                } else {
                    u1 % modulus.as_ref()
                };
                self.normalized(v1, len, s)
            }
        })
    }

    /// Adds `O(p^abs)`.
    fn cap_absolute(&self, abs: i64) -> PAdic {
        match &self.repr {
            Repr::Zero { abs: a } => self.with(Repr::Zero { abs: abs.min(*a) }),
            Repr::Unit { .. } if abs == EXACT => self.clone(),
            Repr::Unit { val, rel, unit } => {
                if abs <= *val {
                    self.with(Repr::Zero { abs })
                } else if abs - val >= *rel as i64 {
                    self.clone()
                } else {
                    let rel = (abs - val) as u32;
                    self.with(Repr::Unit {
                        val: *val,
                        rel,
                        unit: unit % self.ctx.pow(rel).as_ref(),
                    })
                }
            }
        }
    }

    pub fn neg(&self) -> PAdic {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, rel, unit } => self.with(Repr::Unit {
                val: *val,
                rel: *rel,
                unit: self.ctx.pow(*rel).as_ref() - unit,
            }),
        }
    }

    pub fn sub(&self, other: &PAdic) -> Result<PAdic> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdic) -> Result<PAdic> {
        self.ctx.same(&other.ctx)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Zero { abs: a }, Repr::Zero { abs: b }) => self.with(Repr::Zero {
                abs: if *a == EXACT || *b == EXACT {
                    EXACT
                } else {
                    a + b
                },
            }),
            (Repr::Zero { abs }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::Zero { abs }) => self.with(Repr::Zero {
                abs: if *abs == EXACT { EXACT } else { abs + val },
            }),
            (
                Repr::Unit {
                    val: v1,
                    rel: r1,
                    unit: u1,
                },
                Repr::Unit {
                    val: v2,
                    rel: r2,
                    unit: u2,
                },
            ) => {
                let rel = (*r1).min(*r2);
                self.with(Repr::Unit {
                    val: v1 + v2,
                    rel,
                    unit: (u1 * u2) % self.ctx.pow(rel).as_ref(),
                })
            }
        })
    }

    pub fn inv(&self) -> Result<PAdic> {
        match &self.repr {
            Repr::Zero { .. } => Err(Error::DivisionByZero),
            Repr::Unit { val, rel, unit } => {
                let modulus = self.ctx.pow(*rel);
                let inv = unit
                    .modinv(modulus.as_ref())
                    .expect("unit part is invertible modulo p^r");
                Ok(self.with(Repr::Unit {
                    val: -val,
                    rel: *rel,
                    unit: inv,
                }))
            }
        }
    }

    pub fn div(&self, other: &PAdic) -> Result<PAdic> {
        self.mul(&other.inv()?)
    }

    /// Drops significant digits beyond `rel`.
    pub fn truncate(&self, rel: u32) -> PAdic {
        match &self.repr {
            Repr::Unit { val, rel: r, unit } if rel < *r => {
                if rel == 0 {
                    return self.with(Repr::Zero { abs: *val });
                }
                self.with(Repr::Unit {
                    val: *val,
                    rel,
                    unit: unit % self.ctx.pow(rel).as_ref(),
                })
            }
            _ => self.clone(),
        }
    }

    /// True iff `self - other` is zero to precision. Mismatched contexts
    /// are never equal.
    pub fn eq_to_precision(&self, other: &PAdic) -> bool {
        self.sub(other)
            .map(|d| d.is_zero_to_precision())
            .unwrap_or(false)
    }

    /// Small rational `a/b` congruent to this value, if one exists with
    /// plenty of carried digits to spare. Used for display.
    pub fn to_rational(&self) -> Option<(BigInt, BigInt)> {
        let (val, rel, unit) = match &self.repr {
            Repr::Zero { abs: EXACT } => return Some((BigInt::zero(), BigInt::one())),
            Repr::Zero { .. } => return None,
            Repr::Unit { val, rel, unit } => (*val, *rel, unit),
        };
        let modulus = BigInt::from(self.ctx.pow(rel).into_owned());
        let (a, b) = rational_reconstruction(&BigInt::from(unit.clone()), &modulus)?;
        // Insist on |a|·|b| < p^(r/2) so a random unit is not mistaken for
        // a rational.
        let bound = BigInt::from(self.ctx.pow(rel / 2).into_owned());
        if a.abs() * b.abs() >= bound {
            return None;
        }
        let p = BigInt::from(self.ctx.prime);
        let (a, b) = if val >= 0 {
            (a * p.pow(val as u32), b)
        } else {
            (a, b * p.pow((-val) as u32))
        };
        let g = a.gcd(&b);
        Some((a / &g, b / &g))
    }

    /// `p^v * u + O(p^(v+r))` with `u` in decimal.
    pub fn to_padic_string(&self) -> String {
        let p = self.ctx.prime;
        match &self.repr {
            Repr::Zero { abs: EXACT } => "0".to_string(),
            Repr::Zero { abs } => format!("O({p}^{abs})"),
            Repr::Unit { val, rel, unit } => {
                format!("{p}^{val} * {unit} + O({p}^{})", val + *rel as i64)
            }
        }
    }
}

/// Finds `(a, b)` with `a ≡ b·x (mod m)`, `|a|, b <= sqrt(m/2)`, `gcd(a, b) = 1`.
fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound: BigInt = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some((a, b)) if b.is_one() => write!(f, "{a}"),
            Some((a, b)) => write!(f, "{a}/{b}"),
            None => f.write_str(&self.to_padic_string()),
        }
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_padic_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u64, n: u32) -> Arc<PadicContext> {
        PadicContext::new(p, n).unwrap()
    }

    /// Extended Euclid on machine integers: inverse of `a` modulo `m`.
    fn inverse_mod(a: i64, m: i64) -> i64 {
        let (mut r0, mut r1, mut s0, mut s1) = (m, a.rem_euclid(m), 0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1);
        s0.rem_euclid(m)
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(PadicContext::new(4, 10).is_err());
        assert!(PadicContext::new(1, 10).is_err());
        assert!(PadicContext::new(5, 0).is_err());
    }

    #[test]
    fn one_plus_four_is_p() {
        let c = ctx(5, 4);
        let s = PAdic::from_i64(&c, 1).add(&PAdic::from_i64(&c, 4)).unwrap();
        assert_eq!(s.valuation().unwrap(), 1);
        assert_eq!(s.unit().unwrap(), &BigUint::from(1u32));
    }

    #[test]
    fn cancellation_gives_zero_to_precision() {
        let c = ctx(5, 4);
        let x = PAdic::parse(&c, "17/3").unwrap();
        let z = x.add(&x.neg()).unwrap();
        assert!(z.is_zero_to_precision());
        assert!(!z.is_exact_zero());
        assert!(matches!(z.valuation(), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn add_mixed_valuations_matches_integer_arithmetic() {
        // 2 + 25 = 27, and 27 < 5^4 so no reduction happens.
        let c = ctx(5, 4);
        let a = PAdic::from_unit(&c, 0, &BigUint::from(2u32)).unwrap();
        let b = PAdic::from_unit(&c, 2, &BigUint::from(1u32)).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.valuation().unwrap(), 0);
        assert_eq!(s.unit().unwrap(), &BigUint::from(27u32));
    }

    #[test]
    fn mul_adds_valuations() {
        let c = ctx(5, 6);
        let a = PAdic::from_unit(&c, 2, &BigUint::from(3u32)).unwrap();
        let b = PAdic::from_unit(&c, -1, &BigUint::from(7u32)).unwrap();
        let m = a.mul(&b).unwrap();
        assert_eq!(m.valuation().unwrap(), 1);
        assert_eq!(m.unit().unwrap(), &BigUint::from(21u32));
    }

    #[test]
    fn inverse_of_p() {
        let c = ctx(7, 5);
        let i = PAdic::prime_power(&c, 1).inv().unwrap();
        assert_eq!(i.valuation().unwrap(), -1);
        assert_eq!(i.unit().unwrap(), &BigUint::one());
    }

    #[test]
    fn inverse_of_three_mod_343() {
        let c = ctx(7, 3);
        let expected = inverse_mod(3, 343);
        assert_eq!(expected, 229);
        let i = PAdic::from_i64(&c, 3).inv().unwrap();
        assert_eq!(i.valuation().unwrap(), 0);
        assert_eq!(i.unit().unwrap(), &BigUint::from(expected as u64));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let c = ctx(3, 5);
        assert!(matches!(PAdic::zero(&c).inv(), Err(Error::DivisionByZero)));
        assert!(matches!(
            PAdic::zero_to_precision(&c, 2).inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn equality_to_precision() {
        let c = ctx(5, 4);
        let one = PAdic::one(&c);
        let x = PAdic::parse(&c, "-3/10").unwrap();
        assert!(x.eq_to_precision(&x));
        assert!(one.eq_to_precision(&PAdic::from_i64(&c, 1 + 625)));
        assert!(!one.eq_to_precision(&PAdic::from_i64(&c, 1 + 5)));
    }

    #[test]
    fn context_mismatch() {
        let a = PAdic::one(&ctx(5, 4));
        let b = PAdic::one(&ctx(7, 4));
        assert!(matches!(a.add(&b), Err(Error::ContextMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::ContextMismatch { .. })));
        assert!(!a.eq_to_precision(&b));
    }

    #[test]
    fn exact_zero_is_neutral() {
        let c = ctx(3, 4);
        let x = PAdic::prime_power(&c, 9);
        let z = PAdic::zero(&c);
        let s = x.add(&z).unwrap();
        assert_eq!(s.relative_precision(), 4);
        assert!(z.mul(&x).unwrap().is_exact_zero());
    }

    #[test]
    fn approximate_zero_caps_precision() {
        let c = ctx(3, 10);
        let x = PAdic::from_i64(&c, 2);
        let s = x.add(&PAdic::zero_to_precision(&c, 3)).unwrap();
        assert_eq!(s.relative_precision(), 3);
        assert_eq!(s.absolute_precision(), Some(3));
    }

    #[test]
    fn parse_and_display_rationals() {
        let c = ctx(5, 40);
        for s in ["0", "1", "-7", "3/25", "-250/7", "125"] {
            let x = PAdic::parse(&c, s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(PAdic::parse(&c, "1/0").is_err());
        assert!(PAdic::parse(&c, "x").is_err());
    }

    #[test]
    fn random_unit_is_not_shown_as_a_rational() {
        let c = ctx(5, 60);
        let u = BigUint::parse_bytes(b"31415926535897932384626433832795028841971", 10).unwrap()
            % c.pow(60).as_ref();
        let u = if (&u % 5u32).is_zero() { u + 1u32 } else { u };
        let x = PAdic::from_unit(&c, 0, &u).unwrap();
        assert!(x.to_string().contains("O(5^60)"));
    }

    fn embed(c: &Arc<PadicContext>, n: i64) -> PAdic {
        PAdic::from_i64(c, n)
    }

    proptest! {
        #[test]
        fn ring_ops_agree_with_integers(a in -100_000i64..100_000, b in -100_000i64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let c = ctx(p, 12);
            let (x, y) = (embed(&c, a), embed(&c, b));
            prop_assert!(x.add(&y).unwrap().eq_to_precision(&embed(&c, a + b)));
            prop_assert!(x.sub(&y).unwrap().eq_to_precision(&embed(&c, a - b)));
            prop_assert!(x.mul(&y).unwrap().eq_to_precision(&embed(&c, a * b)));
        }

        #[test]
        fn valuation_is_additive(a in 1i64..1_000_000, b in 1i64..1_000_000, p in prop::sample::select(vec![2u64, 3, 5])) {
            let c = ctx(p, 20);
            let (x, y) = (embed(&c, a), embed(&c, -b));
            prop_assert_eq!(
                x.mul(&y).unwrap().valuation().unwrap(),
                x.valuation().unwrap() + y.valuation().unwrap()
            );
        }

        #[test]
        fn double_inverse(num in 1i64..100_000, den in 1i64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let c = ctx(p, 16);
            let x = PAdic::from_rational(&c, &BigInt::from(num), &BigInt::from(den)).unwrap();
            let back = x.inv().unwrap().inv().unwrap();
            prop_assert!(back.eq_to_precision(&x));
            prop_assert!(x.mul(&x.inv().unwrap()).unwrap().eq_to_precision(&PAdic::one(&c)));
        }
    }
}

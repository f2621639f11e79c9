//! Exact coefficient arithmetic over GF(2), GF(p) and the rationals.
//!
//! A [`Scalar`] does not know its field; every operation goes through a
//! [`Field`] value, which keeps scalars small and lets the linear algebra stay
//! field-agnostic at runtime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for `GF(p)`.
pub const MAX_MODULUS: u32 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FieldSpec", try_from = "FieldSpec")]
pub enum Field {
    Gf2,
    /// Prime field with odd modulus `3 <= p <= 2^31`.
    Gfp(u32),
    Rational,
}

/// Serialized form of a [`Field`]: `{"kind": "gf2" | "gfp" | "rational", "modulus": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default)]
    pub modulus: Option<u32>,
}

impl From<Field> for FieldSpec {
    fn from(f: Field) -> Self {
        let kind = match f {
            Field::Gf2 => "gf2",
            Field::Gfp(_) => "gfp",
            Field::Rational => "rational",
        };
        FieldSpec { kind: kind.into(), modulus: f.modulus() }
    }
}

impl TryFrom<FieldSpec> for Field {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Field> {
        match (spec.kind.as_str(), spec.modulus) {
            ("gf2", None | Some(2)) => Ok(Field::Gf2),
            ("gfp", Some(p)) => Field::prime(p),
            ("rational", None) => Ok(Field::Rational),
            (kind, modulus) => Err(Error::InvalidField(format!("kind {kind:?} with modulus {modulus:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Canonical residue in `[0, p)`.
    Residue(u32),
    /// Always in lowest terms with a positive denominator.
    Rational(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds the prime field of order `p`; `p = 2` gives [`Field::Gf2`].
    pub fn prime(p: u32) -> Result<Field> {
        if p == 2 {
            return Ok(Field::Gf2);
        }
        if !(3..=MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "modulus {p} must be a prime between 2 and 2^31"
            )));
        }
        Ok(Field::Gfp(p))
    }

    /// The characteristic, or `None` for the rationals.
    pub fn modulus(&self) -> Option<u32> {
        match *self {
            Field::Gf2 => Some(2),
            Field::Gfp(p) => Some(p),
            Field::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            _ => Scalar::Residue(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            _ => Scalar::Residue(1),
        }
    }

    /// `+1` or `-1` depending on the parity flag (`true` means negative).
    pub fn sign(&self, negative: bool) -> Scalar {
        if negative {
            self.from_i64(-1)
        } else {
            self.one()
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            _ => {
                let p = self.modulus().unwrap() as i64;
                Scalar::Residue(n.rem_euclid(p) as u32)
            }
        }
    }

    /// Membership check for the canonical representation.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rational, Scalar::Rational(q)) => q.denom().is_positive(),
            (Field::Rational, _) | (_, Scalar::Rational(_)) => false,
            (f, Scalar::Residue(r)) => *r < f.modulus().unwrap(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let p = self.modulus().expect("residue in rational field") as u64;
                Scalar::Residue(((*x as u64 + *y as u64) % p) as u32)
            }
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            _ => panic!("mixed scalar kinds in {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Residue(0) => Scalar::Residue(0),
            Scalar::Residue(x) => {
                let p = self.modulus().expect("residue in rational field");
                Scalar::Residue(p - x)
            }
            Scalar::Rational(x) => Scalar::Rational(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Residue(x), Scalar::Residue(y)) => {
                let p = self.modulus().expect("residue in rational field") as u64;
                Scalar::Residue(((*x as u64 * *y as u64) % p) as u32)
            }
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            _ => panic!("mixed scalar kinds in {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Scalar::Residue(x) => {
                let p = self.modulus().expect("residue in rational field") as u64;
                Scalar::Residue(pow_mod(*x as u64, p - 2, p) as u32)
            }
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
        })
    }

    /// Parses a decimal integer or `num/den` fraction into this field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match *self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            _ => {
                let p = BigInt::from(self.modulus().unwrap());
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &p) + &p) % &p;
                    u32::try_from(r).expect("residue below modulus")
                };
                let n = Scalar::Residue(reduce(&num));
                let d = Scalar::Residue(reduce(&den));
                Ok(self.mul(&n, &self.inv(&d)?))
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue(x) => *x == 0,
            Scalar::Rational(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Residue(x) => *x == 1,
            Scalar::Rational(x) => x.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue(x) => write!(f, "{x}"),
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Gf2 => write!(f, "GF(2)"),
            Field::Gfp(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_json() {
        for (f, json) in [
            (Field::Gf2, r#"{"kind":"gf2","modulus":2}"#),
            (Field::Gfp(7), r#"{"kind":"gfp","modulus":7}"#),
            (Field::Rational, r#"{"kind":"rational","modulus":null}"#),
        ] {
            assert_eq!(serde_json::to_string(&f).unwrap(), json);
            assert_eq!(serde_json::from_str::<Field>(json).unwrap(), f);
        }
        assert!(serde_json::from_str::<Field>(r#"{"kind":"gfp","modulus":9}"#).is_err());
        assert!(serde_json::from_str::<Field>(r#"{"kind":"gfp"}"#).is_err());
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn gf2_one_plus_one() {
        let f = Field::Gf2;
        assert!(f.add(&f.one(), &f.one()).is_zero());
    }

    #[test]
    fn rational_product() {
        let f = Field::Rational;
        assert_eq!(f.mul(&q(1, 2), &q(2, 3)), q(1, 3));
    }

    #[test]
    fn gf7_inverse_of_three() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.inv(&Scalar::Residue(3)).unwrap(), Scalar::Residue(5));
    }

    #[test]
    fn inverting_zero_fails() {
        for f in [Field::Gf2, Field::Gfp(5), Field::Rational] {
            assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(0).is_err());
        assert_eq!(Field::prime(2).unwrap(), Field::Gf2);
        assert_eq!(Field::prime(2_147_483_647).unwrap(), Field::Gfp(2_147_483_647));
    }

    #[test]
    fn display_and_parse() {
        let f = Field::Rational;
        assert_eq!(f.parse("-2/4").unwrap().to_string(), "-1/2");
        assert_eq!(f.parse("6/-3").unwrap().to_string(), "-2");
        assert_eq!(f.parse("3").unwrap().to_string(), "3");
        let g = Field::Gfp(7);
        assert_eq!(g.parse("-1").unwrap().to_string(), "6");
        assert_eq!(g.parse("1/3").unwrap(), Scalar::Residue(5));
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn large_modulus_does_not_overflow() {
        let f = Field::Gfp(2_147_483_647);
        let a = f.from_i64(-1);
        assert_eq!(f.mul(&a, &a), f.one());
        assert_eq!(f.add(&a, &a), f.from_i64(-2));
    }

    fn arb_scalar(field: Field) -> BoxedStrategy<Scalar> {
        match field {
            Field::Rational => (-50i64..50, 1i64..20)
                .prop_map(|(n, d)| Scalar::Rational(BigRational::new(n.into(), d.into())))
                .boxed(),
            f => (0..f.modulus().unwrap()).prop_map(Scalar::Residue).boxed(),
        }
    }

    fn fields() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::Gf2),
            Just(Field::Gfp(3)),
            Just(Field::Gfp(5)),
            Just(Field::Gfp(65_521)),
            Just(Field::Rational),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(
            (f, a, b, c) in fields().prop_flat_map(|f| {
                (Just(f), arb_scalar(f), arb_scalar(f), arb_scalar(f))
            })
        ) {
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(
                f.mul(&a, &f.add(&b, &c)),
                f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            );
            prop_assert!(f.add(&a, &f.neg(&a)).is_zero());
            prop_assert!(f.contains(&f.mul(&a, &b)));
            if !a.is_zero() {
                prop_assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
            }
            if let Scalar::Rational(r) = f.mul(&a, &f.add(&b, &c)) {
                prop_assert!(r.denom().is_positive());
                prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()).is_one());
            }
        }
    }
}

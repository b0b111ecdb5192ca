//! Integer power series truncated at a fixed degree.
//!
//! A [`TruncatedSeries`] with truncation `N` stores the coefficients of
//! `x^0 ..= x^N` exactly; everything above degree `N` is unknown. Binary
//! operations narrow to the smaller truncation of their operands, so a result
//! never claims more precision than its inputs carry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term {0} is not a unit (must be +1 or -1)")]
    NonUnitConstantTerm(BigInt),
}

/// Exact integer power series known through degree `trunc`.
///
/// Invariant: `coeffs.len() == trunc + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series from the given coefficients, padding with zeros or
    /// dropping terms so that exactly degrees `0..=trunc` are kept.
    pub fn new<I, T>(coeffs: I, trunc: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().take(trunc + 1).map(Into::into).collect();
        coeffs.resize(trunc + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    /// Shorthand for a series whose coefficient list is exactly `coeffs`.
    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least the constant term");
        let trunc = coeffs.len() - 1;
        Self::new(coeffs, trunc)
    }

    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); trunc + 1] }
    }

    /// The multiplicative identity `1 + 0x + ... + 0x^trunc`.
    pub fn one(trunc: usize) -> Self {
        Self::monomial(1, 0, trunc)
    }

    /// `c * x^degree`; zero if `degree > trunc`.
    pub fn monomial<T: Into<BigInt>>(c: T, degree: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if degree <= trunc {
            s.coeffs[degree] = c.into();
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, or `None` past the truncation.
    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    /// Keeps only degrees `0..=trunc`. Panics if that would extend the series.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(trunc <= self.trunc(), "cannot extend a series from {} to {}", self.trunc(), trunc);
        TruncatedSeries { coeffs: self.coeffs[..=trunc].to_vec() }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Lowest degree at which the two series differ, compared through the
    /// smaller truncation.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    /// Multiplicative inverse, defined when the constant term is `±1`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.abs() != BigInt::one() {
            return Err(SeriesError::NonUnitConstantTerm(a0.clone()));
        }
        // 1/a0 == a0 for a0 = ±1
        let unit = a0.clone();
        let n = self.trunc();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        out.push(unit.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-(&unit * acc));
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Substitutes `x -> x^m`. Terms pushed past the truncation are dropped.
    pub fn compose_power(&self, m: usize) -> Self {
        assert!(m >= 1, "compose_power needs m >= 1");
        let n = self.trunc();
        let mut out = Self::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(m) {
                Some(d) if d <= n => out.coeffs[d] = c.clone(),
                _ => break,
            }
        }
        out
    }

    pub fn pow(&self, m: usize) -> Self {
        let mut acc = Self::one(self.trunc());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients as decimal strings, the form used on the wire.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    /// Renders the known terms as a polynomial, e.g. `1 - 2x + 2x^2 + O(x^3)`.
    pub fn to_polynomial_string(&self) -> String {
        format!("{} + O(x^{})", polynomial_string(&self.coeffs), self.trunc() + 1)
    }
}

/// `1 - 2x + x^2` style rendering of a coefficient list; `0` when all vanish.
pub fn polynomial_string(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if i == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] (N={})", self.to_decimal_strings().join(", "), self.trunc())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_polynomial_string())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut out = TruncatedSeries::zero(n);
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    coeffs: Vec<String>,
    trunc: usize,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesWire { coeffs: self.to_decimal_strings(), trunc: self.trunc() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coeffs.len() != wire.trunc + 1 {
            return Err(D::Error::custom(format!(
                "series with trunc {} needs {} coefficients, got {}",
                wire.trunc,
                wire.trunc + 1,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(c.to_vec())
    }

    #[test]
    fn add_examples() {
        assert_eq!(&s(&[1, 1, 0]) + &s(&[1, -1, 0]), s(&[2, 0, 0]));
        let a = s(&[4, -1, 7, 2]);
        assert_eq!(&TruncatedSeries::zero(3) + &a, a);
        let wide = TruncatedSeries::new([0, 1, 1], 5);
        assert_eq!(&s(&[1, 2, 3]) + &wide, s(&[1, 3, 4]));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1, 1, 1]) * &s(&[1, -1, 0, 0]), s(&[1, 0, 0, 0]));
        assert_eq!(&s(&[1, 2, 4, 8]) * &s(&[1, -2, 0, 0]), s(&[1, 0, 0, 0]));
        let a = s(&[3, 0, -5, 1]);
        assert_eq!(&a * &TruncatedSeries::one(3), a);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(s(&[1, -1, 0, 0, 0]).invert().unwrap(), s(&[1, 1, 1, 1, 1]));
        assert_eq!(s(&[1, 0, 0]).invert().unwrap(), s(&[1, 0, 0]));
        assert_eq!(s(&[1, -3, 2, 0, 0]).invert().unwrap(), s(&[1, 3, 7, 15, 31]));
        assert_eq!(s(&[-1, 1, 0]).invert().unwrap(), s(&[-1, -1, -1]));
        assert_eq!(s(&[2, 1]).invert(), Err(SeriesError::NonUnitConstantTerm(BigInt::from(2))));
        assert!(s(&[0, 1]).invert().is_err());
    }

    #[test]
    fn compose_power_examples() {
        assert_eq!(s(&[1, 1, 1, 1, 1]).compose_power(2), s(&[1, 0, 1, 0, 1]));
        let a = s(&[1, 5, -2]);
        assert_eq!(a.compose_power(1), a);
        assert_eq!(s(&[1, -2, 0, 0, 0]).compose_power(2), s(&[1, 0, -2, 0, 0]));
        assert_eq!(s(&[1, 1, 1, 1, 1, 1, 1]).compose_power(3), s(&[1, 0, 0, 1, 0, 0, 1]));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(s(&[0, 2, 0, 0]).pow(2), s(&[0, 0, 4, 0]));
        assert_eq!(s(&[5, 1, 2]).pow(0), s(&[1, 0, 0]));
        // (x + x^2)^3 = x^3 + 3x^4 + 3x^5 + x^6
        assert_eq!(s(&[0, 1, 1, 0, 0]).pow(3), s(&[0, 0, 0, 1, 3]));
    }

    #[test]
    fn exact_beyond_128_bits() {
        // 1 / ((1-x)(1-2x)(1-4x)(1-8x)(1-16x)) through x^40
        let n = 40;
        let mut denom = TruncatedSeries::one(n);
        for i in 0..5u32 {
            denom = &denom * &TruncatedSeries::new([BigInt::one(), -BigInt::from(2u64.pow(i))], n);
        }
        let f = denom.invert().unwrap();
        let top = f.coeff(40).unwrap();
        assert!(top.bits() > 128, "coefficient has only {} bits", top.bits());
        let sq = &f * &f;
        assert!(sq.coeff(40).unwrap().bits() > 128);
        assert!((&f * &denom).is_one());
        assert!((&sq * &(&denom * &denom)).is_one());
    }

    #[test]
    fn polynomial_rendering() {
        assert_eq!(s(&[1, -2, 2, -2, 2]).to_polynomial_string(), "1 - 2x + 2x^2 - 2x^3 + 2x^4 + O(x^5)");
        assert_eq!(s(&[0, 0, -1]).to_polynomial_string(), "-x^2 + O(x^3)");
        assert_eq!(s(&[0]).to_polynomial_string(), "0 + O(x^1)");
    }

    #[test]
    fn json_uses_decimal_strings() {
        let big = BigInt::from(u128::MAX) * BigInt::from(7);
        let a = TruncatedSeries::new([BigInt::one(), big.clone()], 2);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, format!(r#"{{"coeffs":["1","{big}","0"],"trunc":2}}"#));
        let back: TruncatedSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<TruncatedSeries>(r#"{"coeffs":["1"],"trunc":2}"#).is_err());
        assert!(serde_json::from_str::<TruncatedSeries>(r#"{"coeffs":["x"],"trunc":0}"#).is_err());
    }

    fn series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-9i64..=9, n + 1).prop_map(TruncatedSeries::from_coeffs)
    }

    fn unit_series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        (prop::bool::ANY, prop::collection::vec(-9i64..=9, n)).prop_map(|(neg, rest)| {
            let mut c = vec![if neg { -1 } else { 1 }];
            c.extend(rest);
            TruncatedSeries::from_coeffs(c)
        })
    }

    fn triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
        (0usize..=16).prop_flat_map(|n| (series(n), series(n), series(n)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn inverse_is_two_sided(a in (0usize..=16).prop_flat_map(unit_series)) {
            let inv = a.invert().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert!((&inv * &a).is_one());
            prop_assert_eq!(inv.invert().unwrap(), a);
        }

        #[test]
        fn compose_power_is_multiplicative((a, b, _) in triple(), m in 1usize..=5) {
            prop_assert_eq!((&a * &b).compose_power(m), &a.compose_power(m) * &b.compose_power(m));
        }

        #[test]
        fn mixed_truncations_narrow(a in series(7), b in series(3)) {
            prop_assert_eq!((&a * &b).trunc(), 3);
            prop_assert_eq!((&a + &b).trunc(), 3);
            prop_assert_eq!(&a * &b, &a.truncate(3) * &b);
        }

        #[test]
        fn json_roundtrip(a in (0usize..=12).prop_flat_map(series)) {
            let back: TruncatedSeries = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

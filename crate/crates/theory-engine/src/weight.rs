use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A probability weight, exact where the model is combinatorial and floating
/// where linear algebra forces approximation. Arithmetic stays exact as long
/// as both operands are exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Exact(BigRational),
    Approx(f64),
}

impl Weight {
    pub fn zero() -> Weight {
        Weight::Exact(BigRational::zero())
    }

    pub fn one() -> Weight {
        Weight::Exact(BigRational::one())
    }

    pub fn ratio(num: i64, den: i64) -> Weight {
        Weight::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Weight::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Weight::Exact(_))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Weight::Exact(r) => r.is_negative(),
            Weight::Approx(x) => *x < 0.0,
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a + b),
            _ => Weight::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a * b),
            _ => Weight::Approx(self.to_f64() * other.to_f64()),
        }
    }

    /// Exactly one for exact weights; within `tol` for floats.
    pub fn is_one_within(&self, tol: f64) -> bool {
        match self {
            Weight::Exact(r) => r.is_one(),
            Weight::Approx(x) => (x - 1.0).abs() <= tol,
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Weight::Exact(r) => {
                if r.is_integer() {
                    serializer.serialize_str(&r.numer().to_string())
                } else {
                    serializer.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
                }
            }
            Weight::Approx(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Weight, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(f64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(x) => Ok(Weight::Approx(x)),
            Raw::Text(s) => parse_rational(&s)
                .map(Weight::Exact)
                .ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let third = Weight::ratio(1, 3);
        let sum = third.add(&third).add(&third);
        assert!(sum.is_exact());
        assert!(sum.is_one_within(0.0));
    }

    #[test]
    fn mixed_arithmetic_degrades_to_float() {
        let w = Weight::ratio(1, 2).mul(&Weight::Approx(0.5));
        assert!(!w.is_exact());
        assert!((w.to_f64() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn serde_round_trip() {
        let exact: Weight = serde_json::from_str("\"2/3\"").unwrap();
        assert_eq!(exact, Weight::ratio(2, 3));
        assert_eq!(serde_json::to_string(&exact).unwrap(), "\"2/3\"");
        let float: Weight = serde_json::from_str("0.25").unwrap();
        assert_eq!(float, Weight::Approx(0.25));
        let int: Weight = serde_json::from_str("\"1\"").unwrap();
        assert_eq!(serde_json::to_string(&int).unwrap(), "\"1\"");
    }
}

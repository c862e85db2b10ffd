//! Exact elements of `Q/Z`.

use crate::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// `p/q` with `0 <= p < q` and `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QZ {
    p: u64,
    q: u64,
}

impl Default for QZ {
    fn default() -> Self {
        QZ::ZERO
    }
}

impl QZ {
    pub const ZERO: QZ = QZ { p: 0, q: 1 };

    /// `num / den` reduced mod 1.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let d = den as i128;
        let p = num.rem_euclid(d);
        let g = p.gcd(&d);
        QZ {
            p: (p / g) as u64,
            q: (d / g) as u64,
        }
    }

    pub fn numer(self) -> u64 {
        self.p
    }

    pub fn denom(self) -> u64 {
        self.q
    }

    pub fn is_zero(self) -> bool {
        self.p == 0
    }

    /// Additive order.
    pub fn order(self) -> u64 {
        self.q
    }

    /// Component in `Z[1/p]/Z` of the primary decomposition.
    pub fn primary_part(self, prime: u64) -> QZ {
        let mut pk = 1u64;
        let mut rest = self.q;
        while rest % prime == 0 {
            rest /= prime;
            pk *= prime;
        }
        if pk == 1 {
            return QZ::ZERO;
        }
        // x = a/(pk*rest); the p-part is a * rest^{-1} mod pk over pk.
        let inv = mod_inverse(rest % pk, pk);
        QZ::new(self.p as i128 * inv as i128, pk)
    }
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, o: QZ) -> QZ {
        if self.q == o.q {
            return QZ::new(self.p as i128 + o.p as i128, self.q);
        }
        let l = self.q.lcm(&o.q);
        QZ::new(
            self.p as i128 * (l / self.q) as i128 + o.p as i128 * (l / o.q) as i128,
            l,
        )
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        if self.p == 0 {
            self
        } else {
            QZ {
                p: self.q - self.p,
                q: self.q,
            }
        }
    }
}

impl Sub for QZ {
    type Output = QZ;
    fn sub(self, o: QZ) -> QZ {
        self + (-o)
    }
}

impl AddAssign for QZ {
    fn add_assign(&mut self, o: QZ) {
        *self = *self + o;
    }
}

impl SubAssign for QZ {
    fn sub_assign(&mut self, o: QZ) {
        *self = *self - o;
    }
}

impl Mul<i64> for QZ {
    type Output = QZ;
    fn mul(self, k: i64) -> QZ {
        QZ::new(self.p as i128 * k as i128, self.q)
    }
}

impl Sum for QZ {
    fn sum<I: Iterator<Item = QZ>>(it: I) -> QZ {
        it.fold(QZ::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for QZ {
    type Err = Error;
    fn from_str(s: &str) -> Result<QZ> {
        let bad = || Error::invalid(format!("bad rational '{s}'"));
        let s = s.trim();
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: i128 = a.parse().map_err(|_| bad())?;
        let den: u64 = b.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(QZ::new(num, den))
    }
}

impl Serialize for QZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<QZ, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

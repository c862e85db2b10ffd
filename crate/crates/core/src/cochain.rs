//! Cochains `G^n × X^m -> Q/Z` and the differential.

use crate::group::{FiniteGroup, Subgroup};
use crate::gset::GSet;
use crate::qz::QZ;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// Dense values indexed by `(σ1, …, σn, x)`, last index fastest.
///
/// With `m = 0` the set slot is absent and `set_size` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cochain {
    group_order: usize,
    set_size: usize,
    n: usize,
    m: usize,
    values: Vec<QZ>,
}

impl Cochain {
    pub fn zero(group_order: usize, n: usize) -> Self {
        Cochain {
            group_order,
            set_size: 1,
            n,
            m: 0,
            values: vec![QZ::ZERO; group_order.pow(n as u32)],
        }
    }

    pub fn zero_on(group_order: usize, set_size: usize, n: usize) -> Self {
        Cochain {
            group_order,
            set_size,
            n,
            m: 1,
            values: vec![QZ::ZERO; group_order.pow(n as u32) * set_size],
        }
    }

    /// Build from a function of the group arguments (and set element when `m = 1`).
    pub fn from_fn(
        group_order: usize,
        set_size: Option<usize>,
        n: usize,
        mut f: impl FnMut(&[usize], usize) -> QZ,
    ) -> Self {
        let mut c = match set_size {
            None => Cochain::zero(group_order, n),
            Some(s) => Cochain::zero_on(group_order, s, n),
        };
        let mut args = vec![0; n];
        for i in 0..c.values.len() {
            let x = c.decode(i, &mut args);
            c.values[i] = f(&args, x);
        }
        c
    }

    pub fn from_values(
        group_order: usize,
        set_size: Option<usize>,
        n: usize,
        values: Vec<QZ>,
    ) -> Result<Self> {
        let mut c = match set_size {
            None => Cochain::zero(group_order, n),
            Some(s) => Cochain::zero_on(group_order, s, n),
        };
        if values.len() != c.values.len() {
            return Err(Error::invalid(format!(
                "expected {} values, got {}",
                c.values.len(),
                values.len()
            )));
        }
        c.values = values;
        Ok(c)
    }

    /// Random normalized cochain with denominators dividing `denom`.
    pub fn random<R: Rng>(
        rng: &mut R,
        group_order: usize,
        set_size: Option<usize>,
        n: usize,
        denom: u64,
    ) -> Self {
        Cochain::from_fn(group_order, set_size, n, |a, _| {
            if a.contains(&0) {
                QZ::ZERO
            } else {
                QZ::new(rng.gen_range(0..denom) as i128, denom)
            }
        })
    }

    fn decode(&self, mut i: usize, args: &mut [usize]) -> usize {
        let x = i % self.set_size;
        i /= self.set_size;
        for k in (0..self.n).rev() {
            args[k] = i % self.group_order;
            i /= self.group_order;
        }
        x
    }

    #[inline]
    pub fn index(&self, args: &[usize], x: usize) -> usize {
        debug_assert_eq!(args.len(), self.n);
        let mut i = 0;
        for &a in args {
            i = i * self.group_order + a;
        }
        i * self.set_size + x
    }

    /// Value at `(args; x)`; `x` is ignored when `m = 0`.
    #[inline]
    pub fn at(&self, args: &[usize], x: usize) -> QZ {
        let x = if self.m == 0 { 0 } else { x };
        self.values[self.index(args, x)]
    }

    pub fn set(&mut self, args: &[usize], x: usize, v: QZ) {
        let i = self.index(args, if self.m == 0 { 0 } else { x });
        self.values[i] = v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn values(&self) -> &[QZ] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Zero whenever some group argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let mut args = vec![0; self.n];
        (0..self.values.len()).all(|i| {
            self.decode(i, &mut args);
            !args.contains(&0) || self.values[i].is_zero()
        })
    }

    /// Least common multiple of all denominators.
    pub fn denominator(&self) -> u64 {
        self.values
            .iter()
            .fold(1, |acc, v| num_integer::lcm(acc, v.denom()))
    }

    pub fn scale(&self, k: i64) -> Cochain {
        self.map(|v| v * k)
    }

    pub fn primary_part(&self, p: u64) -> Cochain {
        self.map(|v| v.primary_part(p))
    }

    fn map(&self, f: impl Fn(QZ) -> QZ) -> Cochain {
        Cochain {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    fn same_shape(&self, o: &Cochain) -> bool {
        self.group_order == o.group_order
            && self.set_size == o.set_size
            && self.n == o.n
            && self.m == o.m
    }

    /// An `m = 0` cochain viewed as constant on a set of the given size.
    pub fn constant_on(&self, set_size: usize) -> Cochain {
        assert_eq!(self.m, 0);
        Cochain::from_fn(self.group_order, Some(set_size), self.n, |a, _| {
            self.at(a, 0)
        })
    }

    /// Fix the set slot at `x`.
    pub fn at_point(&self, x: usize) -> Cochain {
        Cochain::from_fn(self.group_order, None, self.n, |a, _| self.at(a, x))
    }

    /// Restriction to a subgroup, indexed by positions in `h.elements()`.
    pub fn restrict(&self, h: &Subgroup) -> Cochain {
        let e = h.elements();
        let set = (self.m == 1).then_some(self.set_size);
        let mut buf = vec![0; self.n];
        Cochain::from_fn(h.order(), set, self.n, |a, x| {
            for (b, &i) in buf.iter_mut().zip(a) {
                *b = e[i];
            }
            self.at(&buf, x)
        })
    }

    /// `(σ…; x) ↦ f(σ…; L x)` for a map `L` between sets.
    pub fn pull_set(&self, map: &[usize]) -> Cochain {
        assert_eq!(self.m, 1);
        Cochain::from_fn(self.group_order, Some(map.len()), self.n, |a, x| {
            self.at(a, map[x])
        })
    }

    /// `(σ1, …) ↦ f(φ σ1, …)` for a map `φ` from a group of order `dom`.
    pub fn pullback(&self, phi: &[usize]) -> Cochain {
        let set = (self.m == 1).then_some(self.set_size);
        let mut buf = vec![0; self.n];
        Cochain::from_fn(phi.len(), set, self.n, |a, x| {
            for (b, &i) in buf.iter_mut().zip(a) {
                *b = phi[i];
            }
            self.at(&buf, x)
        })
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, o: &Cochain) -> Cochain {
        assert!(self.same_shape(o), "cochain shapes differ");
        Cochain {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(&a, &b)| a + b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, o: &Cochain) -> Cochain {
        assert!(self.same_shape(o), "cochain shapes differ");
        Cochain {
            values: self
                .values
                .iter()
                .zip(&o.values)
                .map(|(&a, &b)| a - b)
                .collect(),
            ..self.clone()
        }
    }
}

impl Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.map(|v| -v)
    }
}

/// The differential
/// `δf(σ1..σn+1; x) = f(σ2..; x) + Σ (-1)^i f(..σiσi+1..; x) + (-1)^(n+1) f(σ1..σn; σn+1 x)`.
///
/// Output group arity up to 4 is accepted so that `δω` can be checked.
pub fn delta(g: &FiniteGroup, set: Option<&GSet>, f: &Cochain) -> Result<Cochain> {
    let n = f.n;
    if n >= 4 || f.m > 1 {
        return Err(Error::ArityUnsupported { n: n + 1, m: f.m });
    }
    if f.group_order != g.order() {
        return Err(Error::invalid("cochain and group orders differ"));
    }
    let set = if f.m == 1 {
        let s = set.ok_or_else(|| Error::invalid("set-valued cochain needs a G-set"))?;
        if s.size() != f.set_size || s.group_order() != g.order() {
            return Err(Error::invalid("G-set does not match the cochain"));
        }
        Some(s)
    } else {
        None
    };
    let mut buf = vec![0; n];
    let out = Cochain::from_fn(g.order(), set.map(|s| s.size()), n + 1, |a, x| {
        let mut v = f.at(&a[1..], x);
        for i in 0..n {
            for k in 0..n {
                buf[k] = if k < i {
                    a[k]
                } else if k == i {
                    g.mul(a[i], a[i + 1])
                } else {
                    a[k + 1]
                };
            }
            let t = f.at(&buf, x);
            if i % 2 == 0 {
                v -= t;
            } else {
                v += t;
            }
        }
        let y = set.map_or(0, |s| s.act(a[n], x));
        let t = f.at(&a[..n], y);
        if n % 2 == 0 {
            v -= t;
        } else {
            v += t;
        }
        v
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn z2_example() {
        let z2 = FiniteGroup::cyclic(2);
        let f = Cochain::from_fn(2, None, 1, |a, _| QZ::new(a[0] as i128, 2));
        let d = delta(&z2, None, &f).unwrap();
        assert_eq!(d.at(&[1, 1], 0), QZ::ZERO);
        assert!(delta(&z2, None, &Cochain::zero(2, 2)).unwrap().is_zero());
    }

    #[test]
    fn delta_squared_vanishes() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let x = GSet::cosets(&s3, &Subgroup::generated(&s3, &[1]));
        for n in 0..3 {
            for set in [None, Some(&x)] {
                let f = Cochain::random(&mut rng, 6, set.map(|s| s.size()), n, 12);
                let d2 = delta(&s3, set, &delta(&s3, set, &f).unwrap()).unwrap();
                assert!(d2.is_zero());
                assert!(d2.is_normalized());
            }
        }
    }

    #[test]
    fn arity_guard() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(
            delta(&z2, None, &Cochain::zero(2, 4)),
            Err(Error::ArityUnsupported { n: 5, m: 0 })
        );
    }
}

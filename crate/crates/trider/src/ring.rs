//! Finite chain rings: `Z/p^k`, `F_p[ε]/(ε²)` and `F_p`.
//!
//! All three have a uniformizer `π` (`p` or `ε`) with every element of the
//! form `u·π^v`, `u` a unit. Elements are plain `u64` codes; for the dual
//! numbers `a + bε` is stored as `a + b·p`.

use serde::{Deserialize, Serialize};

use crate::TriError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Cyclic,
    Dual,
    Field,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoeffRing {
    pub kind: RingKind,
    pub p: u64,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl CoeffRing {
    pub fn new(kind: RingKind, p: u64, k: u32) -> Result<Self, TriError> {
        let r = CoeffRing { kind, p, k };
        r.check()?;
        Ok(r)
    }

    /// `Z/p^k`; `k = 1` gives the prime field.
    pub fn cyclic(p: u64, k: u32) -> Self {
        let kind = if k == 1 { RingKind::Field } else { RingKind::Cyclic };
        CoeffRing { kind, p, k }
    }

    pub fn dual(p: u64) -> Self {
        CoeffRing { kind: RingKind::Dual, p, k: 2 }
    }

    pub fn field(p: u64) -> Self {
        CoeffRing { kind: RingKind::Field, p, k: 1 }
    }

    pub fn check(&self) -> Result<(), TriError> {
        if !is_prime(self.p) || self.p > 1 << 16 {
            return Err(TriError::Ring(format!("p = {} is not a small prime", self.p)));
        }
        let ok = match self.kind {
            RingKind::Cyclic => (1..=8).contains(&self.k),
            RingKind::Dual => self.k == 2,
            RingKind::Field => self.k == 1,
        };
        if !ok || self.p.checked_pow(self.k).is_none_or(|q| q > 1 << 24) {
            return Err(TriError::Ring(format!("bad length {} for {:?}", self.k, self.kind)));
        }
        Ok(())
    }

    /// Parse short names: `z4`, `z9`, `f2`, `f3e` (dual numbers).
    pub fn parse(s: &str) -> Result<Self, TriError> {
        let bad = || TriError::Ring(format!("unknown ring '{s}'"));
        let r = if let Some(rest) = s.strip_prefix('z') {
            let n: u64 = rest.parse().map_err(|_| bad())?;
            let p = (2..=n).find(|d| n.is_multiple_of(*d)).ok_or_else(bad)?;
            let mut k = 0;
            let mut m = n;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            if m != 1 {
                return Err(bad());
            }
            CoeffRing::cyclic(p, k)
        } else if let Some(rest) = s.strip_prefix('f') {
            match rest.strip_suffix('e') {
                Some(p) => CoeffRing::dual(p.parse().map_err(|_| bad())?),
                None => CoeffRing::field(rest.parse().map_err(|_| bad())?),
            }
        } else {
            return Err(bad());
        };
        r.check()?;
        Ok(r)
    }

    pub fn name(&self) -> String {
        match self.kind {
            RingKind::Cyclic => format!("z{}", self.order()),
            RingKind::Field => format!("f{}", self.p),
            RingKind::Dual => format!("f{}e", self.p),
        }
    }

    /// Length of the ring: `π^k = 0`, `π^(k-1) ≠ 0`.
    pub fn length(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.order()
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            RingKind::Dual => {
                let p = self.p;
                (a % p + b % p) % p + ((a / p + b / p) % p) * p
            }
            _ => (a + b) % self.order(),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match self.kind {
            RingKind::Dual => {
                let p = self.p;
                (p - a % p) % p + ((p - a / p) % p) * p
            }
            _ => (self.order() - a) % self.order(),
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match self.kind {
            RingKind::Dual => {
                let p = self.p;
                let (a0, a1, b0, b1) = (a % p, a / p, b % p, b / p);
                (a0 * b0) % p + ((a0 * b1 + a1 * b0) % p) * p
            }
            _ => (a * b) % self.order(),
        }
    }

    /// `a·b - c·d`, the shape of most elimination steps.
    pub fn mul_sub(&self, a: u64, b: u64, c: u64, d: u64) -> u64 {
        self.sub(self.mul(a, b), self.mul(c, d))
    }

    pub fn from_int(&self, n: i64) -> u64 {
        let q = self.p as i64;
        let m = match self.kind {
            RingKind::Dual => q,
            _ => self.order() as i64,
        };
        n.rem_euclid(m) as u64
    }

    /// `π^v` (zero once `v ≥ k`).
    pub fn pi_pow(&self, v: u32) -> u64 {
        if v >= self.k {
            return 0;
        }
        match self.kind {
            RingKind::Dual => [1, self.p][v as usize],
            _ => self.p.pow(v),
        }
    }

    /// Valuation; `k` for zero.
    pub fn val(&self, a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        match self.kind {
            RingKind::Dual => u32::from(a.is_multiple_of(self.p)),
            _ => {
                let mut v = 0;
                let mut a = a;
                while a.is_multiple_of(self.p) {
                    a /= self.p;
                    v += 1;
                }
                v
            }
        }
    }

    pub fn is_unit(&self, a: u64) -> bool {
        self.val(a) == 0
    }

    /// Some `c` with `c·π^v = a`; requires `val(a) ≥ v`.
    pub fn div_pi(&self, a: u64, v: u32) -> u64 {
        debug_assert!(self.val(a) >= v);
        if v == 0 {
            return a;
        }
        match self.kind {
            RingKind::Dual => a / self.p,
            _ => a / self.p.pow(v),
        }
    }

    pub fn unit_inv(&self, u: u64) -> u64 {
        debug_assert!(self.is_unit(u));
        match self.kind {
            RingKind::Dual => {
                let p = self.p as i64;
                let (a0, a1) = ((u % self.p) as i64, (u / self.p) as i64);
                let i0 = inv_mod(a0, p);
                let i1 = (-a1 * i0 % p * i0).rem_euclid(p);
                (i0 + i1 * p) as u64
            }
            _ => inv_mod(u as i64, self.order() as i64) as u64,
        }
    }

    /// Canonical representative modulo `π^e`.
    pub fn reduce(&self, a: u64, e: u32) -> u64 {
        if e >= self.k {
            return a;
        }
        match self.kind {
            RingKind::Dual => {
                if e == 0 {
                    0
                } else {
                    a % self.p
                }
            }
            _ => a % self.p.pow(e),
        }
    }

    /// Size of `R/π^e`.
    pub fn cyclic_order(&self, e: u32) -> u64 {
        self.p.pow(e.min(self.k))
    }
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let g = num_integer::Integer::extended_gcd(&a, &m);
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_a_ring() {
        for r in [CoeffRing::cyclic(2, 2), CoeffRing::cyclic(3, 2), CoeffRing::dual(2), CoeffRing::dual(3), CoeffRing::field(5)] {
            for a in r.elements() {
                assert_eq!(r.add(a, r.neg(a)), 0);
                if r.is_unit(a) {
                    assert_eq!(r.mul(a, r.unit_inv(a)), 1, "{r:?} {a}");
                }
                let v = r.val(a);
                if v < r.k {
                    let c = r.div_pi(a, v);
                    assert!(r.is_unit(c));
                    assert_eq!(r.mul(c, r.pi_pow(v)), a);
                }
                for b in r.elements() {
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for c in r.elements() {
                        assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(CoeffRing::parse("z4").unwrap(), CoeffRing::cyclic(2, 2));
        assert_eq!(CoeffRing::parse("z2").unwrap().kind, RingKind::Field);
        assert_eq!(CoeffRing::parse("f2e").unwrap(), CoeffRing::dual(2));
        assert!(CoeffRing::parse("z6").is_err());
        assert_eq!(CoeffRing::parse("f3e").unwrap().name(), "f3e");
    }
}

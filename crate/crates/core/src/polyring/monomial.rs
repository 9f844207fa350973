use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of ring variables.
pub const MAX_VARS: usize = 16;
/// Largest exponent a single variable may carry.
pub const MAX_EXP: u8 = 127;

const HIGH: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

/// Exponent vector packed one byte per variable, with its total degree cached.
///
/// Keeping every exponent at most 127 lets divisibility and multiplication run
/// as single 128-bit operations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    e: [u8; MAX_VARS],
    deg: u16,
}

impl Default for Monomial {
    fn default() -> Self {
        Monomial::one()
    }
}

impl Monomial {
    #[inline]
    pub const fn one() -> Self {
        Monomial {
            e: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        let mut e = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for (slot, &x) in e.iter_mut().zip(exps) {
            if x > MAX_EXP as u32 {
                return Err(Error::ExponentOverflow);
            }
            *slot = x as u8;
            deg += x as u16;
        }
        Ok(Monomial { e, deg })
    }

    /// The monomial `x_v`.
    pub fn var(v: usize) -> Self {
        assert!(v < MAX_VARS);
        let mut e = [0u8; MAX_VARS];
        e[v] = 1;
        Monomial { e, deg: 1 }
    }

    pub fn var_pow(v: usize, k: u32) -> Result<Self> {
        if k > MAX_EXP as u32 {
            return Err(Error::ExponentOverflow);
        }
        let mut e = [0u8; MAX_VARS];
        e[v] = k as u8;
        Ok(Monomial { e, deg: k as u16 })
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, v: usize) -> u32 {
        self.e[v] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }

    #[inline]
    pub fn raw(&self) -> &[u8; MAX_VARS] {
        &self.e
    }

    #[inline]
    fn bits(&self) -> u128 {
        u128::from_le_bytes(self.e)
    }

    #[inline]
    fn from_bits(b: u128, deg: u16) -> Self {
        Monomial {
            e: b.to_le_bytes(),
            deg,
        }
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && ((other.bits() | HIGH) - self.bits()) & HIGH == HIGH
    }

    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let s = self.bits() + other.bits();
        if s & HIGH != 0 {
            None
        } else {
            Some(Monomial::from_bits(s, self.deg + other.deg))
        }
    }

    /// Product; panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    /// `self / other`, assuming `other | self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial::from_bits(self.bits() - other.bits(), self.deg - other.deg)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(other.e[i]);
            deg += e[i] as u16;
        }
        Monomial { e, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].min(other.e[i]);
            deg += e[i] as u16;
        }
        Monomial { e, deg }
    }

    #[inline]
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.e
            .iter()
            .zip(other.e.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Monomial with the exponents of variables permuted: variable `v` moves to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        for (v, &w) in perm.iter().enumerate() {
            e[w] = self.e[v];
        }
        Monomial { e, deg: self.deg }
    }

    /// Drop the exponent of `v`, shifting the later variables down.
    pub fn remove_var(&self, v: usize) -> Monomial {
        let mut e = [0u8; MAX_VARS];
        let mut j = 0;
        for i in 0..MAX_VARS {
            if i != v {
                e[j] = self.e[i];
                j += 1;
            }
        }
        Monomial {
            e,
            deg: self.deg - self.e[v] as u16,
        }
    }

    /// Insert a zero exponent at position `v`.
    pub fn insert_var(&self, v: usize) -> Monomial {
        assert!(self.e[MAX_VARS - 1] == 0);
        let mut e = [0u8; MAX_VARS];
        let mut j = 0;
        for (i, slot) in e.iter_mut().enumerate() {
            if i == v {
                continue;
            }
            *slot = self.e[j];
            j += 1;
        }
        Monomial { e, deg: self.deg }
    }

    pub fn with_exp(&self, v: usize, k: u32) -> Result<Monomial> {
        if k > MAX_EXP as u32 {
            return Err(Error::ExponentOverflow);
        }
        let mut m = *self;
        m.deg = m.deg - m.e[v] as u16 + k as u16;
        m.e[v] = k as u8;
        Ok(m)
    }

    /// Index of the last variable with a nonzero exponent.
    pub fn last_var(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.e[i] != 0)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, x as u32))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.last_var().map_or(1, |v| v + 1);
        write!(f, "{:?}", &self.e[..n])
    }
}

/// Term order on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Graded reverse lexicographic order.
    DegRevLex,
    /// Product order: degrevlex on the first `front` variables, ties broken by
    /// degrevlex on the remaining ones.
    Block { front: usize },
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Block { front } => block(a, b, front),
        }
    }

    /// Inverse of [`TermOrder::name`].
    pub fn from_name(s: &str) -> Option<TermOrder> {
        if s == "degrevlex" {
            return Some(TermOrder::DegRevLex);
        }
        s.strip_prefix("block")
            .and_then(|k| k.parse().ok())
            .map(|front| TermOrder::Block { front })
    }

    pub fn name(&self) -> String {
        match *self {
            TermOrder::DegRevLex => "degrevlex".to_string(),
            TermOrder::Block { front } => format!("block{}", front),
        }
    }
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    if a.deg != b.deg {
        return a.deg.cmp(&b.deg);
    }
    let x = a.bits() ^ b.bits();
    if x == 0 {
        return Ordering::Equal;
    }
    let i = ((127 - x.leading_zeros()) / 8) as usize;
    b.e[i].cmp(&a.e[i])
}

#[inline]
fn mask_below(k: usize) -> u128 {
    if k >= 16 {
        u128::MAX
    } else {
        (1u128 << (8 * k)) - 1
    }
}

fn block(a: &Monomial, b: &Monomial, front: usize) -> Ordering {
    let fa: u16 = a.e[..front].iter().map(|&x| x as u16).sum();
    let fb: u16 = b.e[..front].iter().map(|&x| x as u16).sum();
    if fa != fb {
        return fa.cmp(&fb);
    }
    let x = a.bits() ^ b.bits();
    let m = mask_below(front);
    let xf = x & m;
    if xf != 0 {
        let i = ((127 - xf.leading_zeros()) / 8) as usize;
        return b.e[i].cmp(&a.e[i]);
    }
    if a.deg != b.deg {
        return a.deg.cmp(&b.deg);
    }
    let xb = x & !m;
    if xb == 0 {
        return Ordering::Equal;
    }
    let i = ((127 - xb.leading_zeros()) / 8) as usize;
    b.e[i].cmp(&a.e[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn degrevlex_examples() {
        let o = TermOrder::DegRevLex;
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 1, 0])), Ordering::Equal);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front() {
        let o = TermOrder::Block { front: 1 };
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_arithmetic() {
        let a = m(&[1, 2, 0, 3]);
        let b = m(&[2, 2, 1, 3]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), m(&[1, 0, 1, 0]));
        assert_eq!(a.mul(&b), m(&[3, 4, 1, 6]));
        assert_eq!(a.lcm(&m(&[0, 5])), m(&[1, 5, 0, 3]));
        assert_eq!(a.gcd(&m(&[0, 5])), m(&[0, 2]));
        assert!(m(&[127]).checked_mul(&m(&[1])).is_none());
        assert!(Monomial::from_exponents(&[128]).is_err());
        assert!(m(&[1, 0, 2]).coprime(&m(&[0, 3, 0])));
    }

    #[test]
    fn insert_remove_roundtrip() {
        let a = m(&[1, 2, 3]);
        assert_eq!(a.remove_var(1), m(&[1, 3]));
        assert_eq!(a.remove_var(1).insert_var(1), m(&[1, 0, 3]));
    }
}

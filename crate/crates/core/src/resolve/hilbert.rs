//! Hilbert series of monomial ideals by pivot recursion, and the numerical
//! invariants read off from them.

use serde::Serialize;

use crate::polyring::Monomial;

/// Polynomial in `t` with integer coefficients, lowest degree first.
pub type TPoly = Vec<i64>;

fn trim(mut p: TPoly) -> TPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn mul(a: &[i64], b: &[i64]) -> TPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn add_shifted(a: &mut TPoly, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of `H_{S/I}(t) = N(t) / (1-t)^n` for a monomial ideal.
pub fn numerator(gens: &[Monomial]) -> TPoly {
    rec(minimalize(gens.to_vec()))
}

fn rec(gens: Vec<Monomial>) -> TPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // pairwise coprime generators: product of (1 - t^d)
    let mut used = Monomial::one();
    let mut coprime = true;
    for g in &gens {
        if !used.coprime(g) {
            coprime = false;
            break;
        }
        used = used.mul(g);
    }
    if coprime {
        let mut p = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] = -1;
            p = mul(&p, &f);
        }
        return p;
    }
    // pivot: the variable in most non-linear generators, at its smallest positive exponent
    let mut count = [0usize; crate::polyring::MAX_VARS];
    for g in &gens {
        if g.degree() > 1 {
            for (v, _) in g.support() {
                count[v] += 1;
            }
        }
    }
    let v = (0..count.len())
        .max_by_key(|&v| (count[v], std::cmp::Reverse(v)))
        .unwrap();
    let e = gens
        .iter()
        .map(|g| g.exp(v))
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let p = Monomial::var_pow(v, e).unwrap();
    // H(S/I) = H(S/(I + p)) + t^deg(p) H(S/(I : p))
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !p.divides(g)).copied().collect();
    plus.push(p);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.div(&g.gcd(&p))).collect();
    let mut out = rec(minimalize(plus));
    let q = rec(minimalize(colon));
    add_shifted(&mut out, &q, e as usize);
    trim(out)
}

/// `C(a, k)` for any integer `a` and `k >= 0`.
pub fn gen_binomial(a: i64, k: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= a as i128 - i;
        den *= i + 1;
    }
    num / den
}

/// Hilbert data of `S/I` computed from the lead monomials of a Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// Numerator over `(1-t)^nvars`.
    pub numerator: TPoly,
    /// Numerator over `(1-t)^krull_dim`.
    pub reduced: TPoly,
    pub krull_dim: usize,
}

impl HilbertData {
    pub fn from_leads(nvars: usize, leads: &[Monomial]) -> Self {
        let numerator = numerator(leads);
        let mut reduced = numerator.clone();
        let mut d = nvars;
        while d > 0 && reduced.iter().sum::<i64>() == 0 && reduced.iter().any(|&c| c != 0) {
            // divide by (1 - t)
            let mut q = vec![0i64; reduced.len() - 1];
            let mut acc = 0i64;
            for (i, qi) in q.iter_mut().enumerate() {
                acc += reduced[i];
                *qi = acc;
            }
            reduced = trim(q);
            d -= 1;
        }
        HilbertData {
            nvars,
            numerator,
            reduced,
            krull_dim: d,
        }
    }

    pub fn is_zero_module(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    /// Projective dimension; `-1` for the empty set.
    pub fn dim(&self) -> i64 {
        if self.is_zero_module() {
            return -1;
        }
        self.krull_dim as i64 - 1
    }

    pub fn degree(&self) -> i64 {
        self.reduced.iter().sum()
    }

    pub fn codim(&self) -> usize {
        self.nvars - self.krull_dim
    }

    /// `dim_k (S/I)_d`.
    pub fn hilbert_function(&self, d: i64) -> i128 {
        if d < 0 {
            return 0;
        }
        let n = self.nvars as i64;
        let mut s = 0i128;
        for (k, &c) in self.numerator.iter().enumerate() {
            let m = d - k as i64;
            if m >= 0 && c != 0 {
                s += c as i128 * gen_binomial(m + n - 1, (n - 1).max(0) as u32);
            }
        }
        if n == 0 {
            return if d == 0 { self.numerator[0] as i128 } else { 0 };
        }
        s
    }

    /// Value of the Hilbert polynomial at any integer `n`.
    pub fn hilbert_polynomial(&self, n: i64) -> i128 {
        let d = self.krull_dim as i64;
        if d == 0 {
            return 0;
        }
        self.reduced
            .iter()
            .enumerate()
            .map(|(k, &h)| h as i128 * gen_binomial(n - k as i64 + d - 1, (d - 1) as u32))
            .sum()
    }

    /// Index from which the Hilbert function agrees with the Hilbert polynomial.
    pub fn regularity_index(&self) -> i64 {
        // H(t) - P(t) is a Laurent polynomial of degree deg(reduced) - krull_dim
        self.reduced.len() as i64 - 1 - self.krull_dim as i64 + 1
    }

    /// Coefficients `chi_i` with `P(n) = sum_i chi_i C(n + i - 1, i)`, `i = 0..=dim`.
    pub fn chi_coefficients(&self) -> Vec<i128> {
        let dim = self.dim();
        if dim < 0 {
            return vec![];
        }
        let d = dim as usize;
        // P(-m) = sum_i chi_i (-1)^i C(m, i): triangular in m = 0..=d
        let mut chi = vec![0i128; d + 1];
        for m in 0..=d {
            let mut v = self.hilbert_polynomial(-(m as i64));
            for (i, c) in chi.iter().enumerate().take(m) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                v -= sign * c * gen_binomial(m as i64, i as u32);
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            chi[m] = sign * v;
        }
        chi
    }
}

/// Number of monomials of degree `d` in `n` variables outside the monomial ideal.
pub fn standard_monomial_count(n: usize, leads: &[Monomial], d: u32) -> u64 {
    let h = HilbertData {
        nvars: n,
        numerator: numerator(leads),
        reduced: vec![],
        krull_dim: 0,
    };
    h.hilbert_function(d as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    fn brute(n: usize, leads: &[Monomial], d: u32) -> u64 {
        let ring = crate::polyring::Ring::standard(n, 7).unwrap();
        ring.monomials_of_degree(d)
            .iter()
            .filter(|x| !leads.iter().any(|l| l.divides(x)))
            .count() as u64
    }

    #[test]
    fn twisted_cubic() {
        let leads = [m(&[1, 0, 1, 0]), m(&[1, 0, 0, 1]), m(&[0, 1, 0, 1])];
        let h = HilbertData::from_leads(4, &leads);
        assert_eq!(h.dim(), 1);
        assert_eq!(h.degree(), 3);
        for d in 0..6 {
            assert_eq!(h.hilbert_function(d), 3 * d as i128 + 1);
            assert_eq!(h.hilbert_polynomial(d), 3 * d as i128 + 1);
        }
        assert_eq!(h.chi_coefficients(), vec![1, 3]);
    }

    #[test]
    fn empty_and_unit() {
        let h = HilbertData::from_leads(3, &[]);
        assert_eq!(h.dim(), 2);
        assert_eq!(h.degree(), 1);
        let u = HilbertData::from_leads(3, &[Monomial::one()]);
        assert_eq!(u.dim(), -1);
    }

    #[test]
    fn matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let n = rng.gen_range(1..5);
            let k = rng.gen_range(0..5);
            let leads: Vec<Monomial> = (0..k)
                .map(|_| {
                    let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                    m(&e)
                })
                .filter(|x| !x.is_one())
                .collect();
            for d in 0..7 {
                assert_eq!(standard_monomial_count(n, &leads, d), brute(n, &leads, d));
            }
        }
    }
}

//! Small finite fields GF(p^k) with full operation tables.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are polynomial
//! coefficients (digit `i` is the coefficient of `x^i`), reduced modulo the least
//! monic irreducible polynomial of degree `k` under that same encoding.

use crate::arith;
use crate::error::{Error, Result};

/// Largest field order supported (tables are `q * q`).
pub const MAX_FIELD_ORDER: u64 = 1024;

#[derive(Clone, Debug)]
pub struct FieldGF {
    p: u64,
    k: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    generator: usize,
}

fn digits(mut v: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two reduced polynomials modulo the monic `modulus` (length k+1).
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p - (c * m) % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn poly_rem_is_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    // den is monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    for deg in (dd..r.len()).rev() {
        let c = r[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in den.iter().enumerate() {
            let idx = deg - dd + i;
            r[idx] = (r[idx] + p - (c * m) % p) % p;
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

impl FieldGF {
    /// Builds GF(q) for a prime power `q <= MAX_FIELD_ORDER`.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = arith::prime_power(q).ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidParams(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
        }
        let ku = k as usize;
        let modulus = (0..p.pow(k))
            .map(|low| {
                let mut f = digits(low, p, ku);
                f.push(1);
                f
            })
            .find(|f| ku == 1 || is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree");
        let qs = q as usize;
        let elems: Vec<Vec<u64>> = (0..q).map(|v| digits(v, p, ku)).collect();
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u64> = elems[a].iter().zip(&elems[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&s, p) as u16;
                mul[a * qs + b] = undigits(&poly_mulmod(&elems[a], &elems[b], &modulus, p), p) as u16;
            }
        }
        let neg: Vec<u16> = (0..qs).map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u16).collect();
        let inv: Vec<u16> =
            (0..qs).map(|a| if a == 0 { 0 } else { (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u16 }).collect();
        let mut field = FieldGF { p, k, q: qs, modulus, add, mul, neg, inv, generator: 0 };
        field.generator =
            (1..qs).find(|&a| field.mult_order(a) == q - 1).expect("multiplicative group of a finite field is cyclic");
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Least element of multiplicative order `q - 1`.
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn mult_order(&self, a: usize) -> u64 {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Element `p^i`, i.e. the monomial `x^i`; these form an additive basis over GF(p).
    pub fn basis(&self) -> Vec<usize> {
        (0..self.k).map(|i| self.p.pow(i) as usize).collect()
    }

    /// An element of multiplicative order exactly `d`, which must divide `q - 1`.
    pub fn element_of_order(&self, d: u64) -> Result<usize> {
        let m = self.q as u64 - 1;
        if d == 0 || !m.is_multiple_of(d) {
            return Err(Error::InvalidParams(format!("{d} does not divide {m}")));
        }
        Ok(self.pow(self.generator, m / d))
    }
}

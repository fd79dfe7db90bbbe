//! GF(2^m) arithmetic and narrow-sense primitive BCH codes.
//!
//! Primitive polynomials (bit `i` is the coefficient of `x^i`):
//!
//! | m | polynomial | m | polynomial |
//! |---|------------|---|------------|
//! | 2 | x²+x+1 | 10 | x¹⁰+x³+1 |
//! | 3 | x³+x+1 | 11 | x¹¹+x²+1 |
//! | 4 | x⁴+x+1 | 12 | x¹²+x⁶+x⁴+x+1 |
//! | 5 | x⁵+x²+1 | 13 | x¹³+x⁴+x³+x+1 |
//! | 6 | x⁶+x+1 | 14 | x¹⁴+x¹⁰+x⁶+x+1 |
//! | 7 | x⁷+x³+1 | 15 | x¹⁵+x+1 |
//! | 8 | x⁸+x⁴+x³+x²+1 | 16 | x¹⁶+x¹²+x³+x+1 |
//! | 9 | x⁹+x⁴+1 | | |
//!
//! The BCH parity-check matrix is the `(n-k) x n` banded matrix whose row
//! `i` holds the reciprocal parity polynomial `x^k h(1/x)` shifted right by
//! `i`, where `h(x) = (x^n - 1) / g(x)`.

use super::code::LinearCode;
use super::matrix::BitMatrix;
use crate::error::{Error, Result};

const PRIMITIVE_POLYS: [u32; 15] = [
    0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003,
    0x1100B,
];

pub fn default_primitive_poly(m: u32) -> Option<u32> {
    (2..=16).contains(&m).then(|| PRIMITIVE_POLYS[(m - 2) as usize])
}

/// Element of GF(2^m) in polynomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement2m {
    pub value: u32,
}

/// GF(2^m) with log/antilog tables over a primitive element `alpha = x`.
#[derive(Clone, Debug)]
pub struct Gf2m {
    m: u32,
    poly: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf2m {
    pub fn new(m: u32) -> Result<Self> {
        let poly = default_primitive_poly(m)
            .ok_or_else(|| Error::InvalidParameters(format!("extension degree {m} outside 2..=16")))?;
        Self::with_poly(m, poly)
    }

    /// Builds the field for `poly`, which must be irreducible of degree `m`
    /// and have `x` as a primitive element.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) || poly >> m != 1 {
            return Err(Error::InvalidParameters(format!(
                "polynomial {poly:#x} does not have degree {m}"
            )));
        }
        if !is_irreducible(poly) {
            return Err(Error::InvalidParameters(format!("polynomial {poly:#x} is reducible")));
        }
        let order = (1u32 << m) - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; 1 << m];
        let mut v = 1u32;
        for i in 0..order {
            if i > 0 && v == 1 {
                return Err(Error::InvalidParameters(format!(
                    "x is not primitive modulo {poly:#x}"
                )));
            }
            exp[i as usize] = v;
            log[v as usize] = i;
            v <<= 1;
            if v >> m & 1 == 1 {
                v ^= poly;
            }
        }
        for i in order..2 * order {
            exp[i as usize] = exp[(i - order) as usize];
        }
        Ok(Gf2m { m, poly, exp, log })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn primitive_poly(&self) -> u32 {
        self.poly
    }

    /// Multiplicative order of the group, `2^m - 1`.
    pub fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    pub fn alpha_pow(&self, i: u64) -> FieldElement2m {
        FieldElement2m {
            value: self.exp[(i % self.order() as u64) as usize],
        }
    }

    pub fn add(&self, a: FieldElement2m, b: FieldElement2m) -> FieldElement2m {
        FieldElement2m { value: a.value ^ b.value }
    }

    pub fn mul(&self, a: FieldElement2m, b: FieldElement2m) -> FieldElement2m {
        if a.value == 0 || b.value == 0 {
            return FieldElement2m { value: 0 };
        }
        let s = self.log[a.value as usize] + self.log[b.value as usize];
        FieldElement2m { value: self.exp[s as usize] }
    }

    pub fn inv(&self, a: FieldElement2m) -> Option<FieldElement2m> {
        (a.value != 0).then(|| FieldElement2m {
            value: self.exp[((self.order() - self.log[a.value as usize]) % self.order()) as usize],
        })
    }

    /// Minimal polynomial of `alpha^i` over GF(2), low-order coefficient first.
    pub fn minimal_polynomial(&self, i: u32) -> Vec<u8> {
        let coset = cyclotomic_coset(i, self.order());
        // product of (x - alpha^j) over the coset, coefficients in GF(2^m)
        let mut poly = vec![FieldElement2m { value: 1 }];
        for &j in &coset {
            let root = self.alpha_pow(j as u64);
            let mut next = vec![FieldElement2m { value: 0 }; poly.len() + 1];
            for (d, &c) in poly.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.add(next[d], self.mul(c, root));
            }
            poly = next;
        }
        poly.iter()
            .map(|c| {
                assert!(c.value <= 1, "minimal polynomial must be binary");
                c.value as u8
            })
            .collect()
    }
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree up to half that of `poly`.
pub fn is_irreducible(poly: u32) -> bool {
    let p = poly as u64;
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    for divisor in 2u64..(1u64 << (d / 2 + 1)) {
        if poly_degree(divisor) >= 1 && poly_degree(divisor) <= d / 2 && poly_mod(p, divisor) == 0 {
            return false;
        }
    }
    true
}

/// `{i, 2i, 4i, ...} mod n`, in generation order.
pub fn cyclotomic_coset(i: u32, n: u32) -> Vec<u32> {
    let mut out = vec![i % n];
    let mut j = (2 * i) % n;
    while j != i % n {
        out.push(j);
        j = (2 * j) % n;
    }
    out
}

fn binary_poly_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 1 {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] ^= y;
            }
        }
    }
    out
}

/// Quotient of binary polynomials; panics when `b` does not divide `a`.
fn binary_poly_div_exact(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0u8; a.len() - db];
    for i in (db..a.len()).rev() {
        if rem[i] == 1 {
            q[i - db] = 1;
            for (j, &y) in b.iter().enumerate() {
                rem[i - db + j] ^= y;
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    q
}

/// Generator polynomial of the narrow-sense BCH code, low-order first.
pub fn bch_generator_polynomial(field: &Gf2m, design_distance: u32) -> Vec<u8> {
    let n = field.order();
    let mut covered = vec![false; n as usize];
    let mut g = vec![1u8];
    for i in 1..design_distance {
        let i = i % n;
        if covered[i as usize] {
            continue;
        }
        for j in cyclotomic_coset(i, n) {
            covered[j as usize] = true;
        }
        g = binary_poly_mul(&g, &field.minimal_polynomial(i));
    }
    g
}

/// Narrow-sense primitive BCH code of length `2^m - 1`.
pub fn bch_code(m: u32, design_distance: u32) -> Result<LinearCode> {
    if !(2..=8).contains(&m) {
        return Err(Error::InvalidParameters(format!("BCH degree {m} outside 2..=8")));
    }
    let field = Gf2m::new(m)?;
    let n = field.order() as usize;
    if design_distance < 3 || design_distance.is_multiple_of(2) || design_distance as usize > n {
        return Err(Error::InvalidParameters(format!(
            "design distance {design_distance} must be odd, >= 3 and <= {n}"
        )));
    }
    let g = bch_generator_polynomial(&field, design_distance);
    let k = n - (g.len() - 1);
    if k == 0 {
        return Err(Error::InvalidParameters("BCH code has dimension zero".into()));
    }
    let mut xn1 = vec![0u8; n + 1];
    xn1[0] = 1;
    xn1[n] = 1;
    let h = binary_poly_div_exact(&xn1, &g);
    debug_assert_eq!(h.len(), k + 1);
    let mut mat = BitMatrix::zeros(n - k, n);
    for row in 0..n - k {
        for t in 0..=k {
            if h[k - t] == 1 {
                mat.set(row, row + t, true);
            }
        }
    }
    Ok(LinearCode::new(format!("bch_{n}_{k}"), mat))
}

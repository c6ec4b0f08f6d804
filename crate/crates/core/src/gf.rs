//! Exact arithmetic in GF(p^m).
//!
//! Elements are stored as packed coefficient vectors: the element
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` has index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! Multiplication goes through discrete log tables built from the smallest
//! primitive element; the tables themselves are filled by schoolbook
//! polynomial multiplication modulo the field's modulus.

use std::fmt;

use thiserror::Error;

/// Largest field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the bound {bound}")]
    OrderTooLarge { p: u64, m: u32, bound: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{q} is not the order of a subfield of GF({p}^{m})")]
    NotASubfield { q: u64, p: u32, m: u32 },
    #[error("element index {index} does not belong to a field of order {order}")]
    ForeignElement { index: u64, order: u32 },
    #[error("coefficient vector {0:?} is not a valid element")]
    BadCoefficients(Vec<u32>),
}

pub type Result<T> = std::result::Result<T, GfError>;

/// An element of a finite field, as its packed coefficient index.
///
/// Elements carry no reference to their field; every operation goes through
/// the [`FieldCtx`] that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed coefficient index of this element.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Description of GF(p^m) together with its arithmetic tables.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    order: u32,
    /// Monic modulus, constant term first, length m + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: FieldElement,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// If `q` is a power of the prime `p`, returns the exponent.
pub fn prime_power_exponent(q: u64, p: u64) -> Option<u32> {
    if q < p || p < 2 {
        return None;
    }
    let mut e = 0;
    let mut acc = 1u64;
    while acc < q {
        acc = acc.checked_mul(p)?;
        e += 1;
    }
    (acc == q).then_some(e)
}

/// Remainder of `num` modulo `den` over GF(p); both constant term first,
/// `den` must have a nonzero leading coefficient.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    while r.len() > dd {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) works
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code`.
fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push((code % p as u64) as u32);
        code /= p as u64;
    }
    v.push(1);
    v
}

/// Irreducibility over GF(p) by trial division with every monic polynomial
/// of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for code in 0..count {
            let divisor = monic_from_code(code, d, p);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// GF(p^m) with the canonical modulus and the default size bound.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_bound(p, m, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(p: u64, m: u32, bound: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > bound as u128 || order > u32::MAX as u128 {
            return Err(GfError::OrderTooLarge { p, m, bound });
        }
        let p = p as u32;
        let order = order as u32;
        let modulus = canonical_modulus(p, m);
        let mut ctx = FieldCtx {
            p,
            m,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            primitive: FieldElement::ONE,
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let group = self.order - 1;
        if group == 1 {
            // GF(2)
            self.exp = vec![1];
            self.log = vec![0, 0];
            self.primitive = FieldElement::ONE;
            return;
        }
        let mut powers = Vec::with_capacity(group as usize);
        for candidate in 1..self.order {
            let g = FieldElement(candidate);
            powers.clear();
            let mut x = FieldElement::ONE;
            loop {
                powers.push(x.0);
                x = self.mul_schoolbook(x, g);
                if x == FieldElement::ONE {
                    break;
                }
            }
            if powers.len() as u32 == group {
                self.primitive = g;
                break;
            }
        }
        let mut log = vec![0u32; self.order as usize];
        for (i, &v) in powers.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        self.exp = powers;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest-index element generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(FieldElement)
    }

    /// Element with the given packed index, rejecting indices outside the field.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.order as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(GfError::ForeignElement {
                index,
                order: self.order,
            })
        }
    }

    /// Check that `x` can belong to this field.
    pub fn check(&self, x: FieldElement) -> Result<FieldElement> {
        self.element(x.0 as u64)
    }

    /// Image of an integer under the prime-field embedding.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.m as usize);
        let mut idx = x.0;
        for _ in 0..self.m {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::BadCoefficients(coeffs.to_vec()));
        }
        let idx = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c);
        Ok(FieldElement(idx))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x;
        }
        let mut a = x.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place = place.wrapping_mul(self.p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let group = self.order - 1;
        let e = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % group as u64;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        let group = self.order - 1;
        let l = self.log[x.0 as usize];
        Ok(FieldElement(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.is_zero() {
            return FieldElement::ZERO;
        }
        let group = (self.order - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        let r = ((l as u128 * e as u128) % group as u128) as usize;
        FieldElement(self.exp[r])
    }

    /// Product by polynomial multiplication and reduction modulo the modulus.
    pub fn mul_schoolbook(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let a = self.coeffs(x);
        let b = self.coeffs(y);
        let mut prod = vec![0u32; 2 * self.m as usize - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % self.p as u64) as u32;
            }
        }
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(self.m as usize, 0);
        self.from_coeffs(&rem).expect("reduced polynomial is canonical")
    }

    fn subfield_degree(&self, q: u64) -> Result<u32> {
        let err = GfError::NotASubfield {
            q,
            p: self.p,
            m: self.m,
        };
        let e = prime_power_exponent(q, self.p as u64).ok_or(err.clone())?;
        if e == 0 || !self.m.is_multiple_of(e) {
            return Err(err);
        }
        Ok(e)
    }

    /// Whether `x` lies in the subfield of order `q`, i.e. `x^q = x`.
    pub fn in_subfield(&self, x: FieldElement, q: u64) -> Result<bool> {
        self.subfield_degree(q)?;
        Ok(self.pow(x, q) == x)
    }

    /// Elements of the subfield of order `q`, in index order.
    pub fn subfield_elements(&self, q: u64) -> Result<Vec<FieldElement>> {
        self.subfield_degree(q)?;
        Ok(self.elements().filter(|&x| self.pow(x, q) == x).collect())
    }

    /// Power basis of this field over its subfield of order `q`.
    pub fn subfield_basis(&self, q: u64) -> Result<SubfieldBasis> {
        SubfieldBasis::new(self, q)
    }

    /// Human-readable polynomial in `x`, e.g. `x+1` or `2x^2+1`.
    pub fn format(&self, el: FieldElement) -> String {
        if el.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs(el).iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        terms.join("+")
    }
}

/// Lexicographically least monic irreducible of degree `m`, where the
/// lower coefficients are compared from the x^{m-1} term down to the constant.
fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|code| monic_from_code(code, m, p))
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// The fixed GF(q)-basis `{1, g, ..., g^(k-1)}` of GF(q^k), where `g` is the
/// smallest-index element of degree k over GF(q).
#[derive(Clone, Debug)]
pub struct SubfieldBasis {
    q: u64,
    k: usize,
    scalars: Vec<FieldElement>,
    generator: FieldElement,
    powers: Vec<FieldElement>,
    /// element index -> coordinate vector packed as base-q digits of scalar positions
    packed: Vec<u32>,
}

impl SubfieldBasis {
    fn new(ctx: &FieldCtx, q: u64) -> Result<Self> {
        let e = ctx.subfield_degree(q)?;
        let k = (ctx.m / e) as usize;
        let scalars = ctx.subfield_elements(q)?;
        let generator = ctx
            .elements()
            .find(|&g| {
                // degree of g over GF(q) is k iff g lies in no GF(q^j) with j | k, j < k
                (1..k)
                    .filter(|j| k.is_multiple_of(*j))
                    .all(|j| ctx.pow(g, q.pow(j as u32)) != g)
            })
            .expect("GF(q^k) has elements of degree k over GF(q)");
        let mut powers = Vec::with_capacity(k);
        let mut acc = FieldElement::ONE;
        for _ in 0..k {
            powers.push(acc);
            acc = ctx.mul(acc, generator);
        }
        let mut packed = vec![u32::MAX; ctx.order as usize];
        let q_us = q as usize;
        for code in 0..ctx.order as usize {
            let mut rest = code;
            let mut value = FieldElement::ZERO;
            for &b in &powers {
                let lambda = scalars[rest % q_us];
                value = ctx.add(value, ctx.mul(lambda, b));
                rest /= q_us;
            }
            debug_assert_eq!(packed[value.0 as usize], u32::MAX, "power basis is dependent");
            packed[value.0 as usize] = code as u32;
        }
        Ok(SubfieldBasis {
            q,
            k,
            scalars,
            generator,
            powers,
            packed,
        })
    }

    pub fn subfield_order(&self) -> u64 {
        self.q
    }

    /// Dimension k of the big field over the subfield.
    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Subfield elements in index order; coordinate digits index into this list.
    pub fn scalars(&self) -> &[FieldElement] {
        &self.scalars
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.powers
    }

    /// Coordinates of `x` packed as base-q digits (digit i is the position of
    /// the i-th coordinate in [`Self::scalars`]).
    pub fn packed_coords(&self, x: FieldElement) -> u32 {
        self.packed[x.0 as usize]
    }

    /// Coordinate vector B(x) over the subfield.
    pub fn coords(&self, x: FieldElement) -> Vec<FieldElement> {
        let mut rest = self.packed_coords(x) as usize;
        let q = self.q as usize;
        (0..self.k)
            .map(|_| {
                let s = self.scalars[rest % q];
                rest /= q;
                s
            })
            .collect()
    }

    /// Inverse of [`Self::coords`].
    pub fn from_coords(&self, ctx: &FieldCtx, coords: &[FieldElement]) -> FieldElement {
        coords
            .iter()
            .zip(&self.powers)
            .fold(FieldElement::ZERO, |acc, (&c, &b)| ctx.add(acc, ctx.mul(c, b)))
    }
}

/// Display adapter pairing an element with its field.
pub struct Display<'a>(pub &'a FieldCtx, pub FieldElement);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}
